use cjac_core::graphs::make_vine;
use cjac_core::obstruct::delta_profile;
use cjac_core::stability::{delta_g1, is_nondegenerate, stable_multidegrees, StabilityFamily};
use proptest::prelude::*;

/// Independent oracle: `φ_v = g₁(z + ε)/(g − 1)` with `0 < ε ≪ 1`, so the
/// smaller stable degree is the floor of `g₁z/(g − 1)`, with exact integers
/// staying put.
fn oracle_delta(g: u32, z: i64, g1: u32) -> i64 {
    (g1 as i64 * z).div_euclid(g as i64 - 1)
}

proptest! {
    #[test]
    fn delta_matches_floor_oracle(g in 2u32..30, z in -60i64..60) {
        let fam = StabilityFamily::phi(g, z);
        for g1 in 1..g {
            prop_assert_eq!(delta_g1(&fam, g1).unwrap(), oracle_delta(g, z, g1));
        }
        prop_assert!(is_nondegenerate(&fam));
    }

    #[test]
    fn two_edge_vines_have_two_consecutive_degrees(g in 2u32..16, z in -20i64..20) {
        let fam = StabilityFamily::phi(g, z);
        for g1 in 1..g {
            let graph = make_vine(g, g1, 2).unwrap();
            let degs: Vec<i64> = stable_multidegrees(&fam, &graph, 0).unwrap().iter().map(|d| d.at(0)).collect();
            let d = delta_g1(&fam, g1).unwrap();
            prop_assert_eq!(degs, vec![d, d + 1]);
        }
    }

    /// Shifting `z` by `g − 1` translates `δ_{g₁}` by `g₁`.
    #[test]
    fn translation_law(g in 2u32..20, z in -30i64..30) {
        let shifted = delta_profile(g, z + g as i64 - 1).unwrap();
        let base = delta_profile(g, z).unwrap();
        for (i, (x, y)) in shifted.iter().zip(&base).enumerate() {
            prop_assert_eq!(*x, *y + i as i64 + 1);
        }
    }

    /// `δ_{g₁}(−z) = −δ_{g₁}(z) − 1` off the walls, `−δ` on them.
    #[test]
    fn reflection(g in 3u32..20, z in -30i64..30) {
        let fam = StabilityFamily::phi(g, z);
        let neg = StabilityFamily::phi(g, -z);
        for g1 in 1..g {
            let on_wall = (g1 as i64 * z) % (g as i64 - 1) == 0;
            let expected = -delta_g1(&fam, g1).unwrap() - i64::from(!on_wall);
            prop_assert_eq!(delta_g1(&neg, g1).unwrap(), expected);
        }
    }
}

#[test]
fn profile_at_z_two() {
    assert_eq!(delta_profile(4, 2).unwrap(), vec![0, 1, 2]);
    assert_eq!(delta_profile(7, 2).unwrap(), vec![0, 0, 1, 1, 1, 2]);
    assert!(delta_profile(1, 0).is_err());
}
