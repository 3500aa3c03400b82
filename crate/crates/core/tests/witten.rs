use cjac_core::rational::{factorial, Q};
use cjac_core::wittencalc::{one_point_closed_form, pairing_matrix_rank, witten_correlator, Correlator};
use proptest::prelude::*;

fn corr(g: u32, e: &[u32]) -> Q {
    witten_correlator(&Correlator::new(g, e.to_vec())).unwrap()
}

/// Genus-0 closed form `⟨τ_{a₁}⋯τ_{aₙ}⟩₀ = (n−3)!/∏ aᵢ!`.
fn genus_zero_oracle(a: &[u32]) -> Q {
    let denom = a.iter().fold(Q::from_integer(1.into()), |acc, &x| acc * factorial(x as u64));
    factorial(a.len() as u64 - 3) / denom
}

fn compositions(n: usize, sum: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![sum]];
    }
    (0..=sum)
        .flat_map(|h| {
            compositions(n - 1, sum - h).into_iter().map(move |mut c| {
                c.push(h);
                c
            })
        })
        .collect()
}

#[test]
fn genus_zero_multinomial() {
    for n in 3..=8 {
        for a in compositions(n, n as u32 - 3) {
            assert_eq!(corr(0, &a), genus_zero_oracle(&a), "{a:?}");
        }
    }
}

#[test]
fn genus_one_known_values() {
    // ⟨τ₁ⁿ⟩₁ = (n−1)!/24.
    for n in 1..=7 {
        assert_eq!(corr(1, &vec![1; n]), factorial(n as u64 - 1) / Q::from_integer(24.into()));
    }
    for g in 1..=10 {
        assert_eq!(corr(g, &[3 * g - 2]), one_point_closed_form(g));
    }
}

#[test]
fn vine_pairing_is_nondegenerate() {
    for g in 2..=12 {
        assert_eq!(pairing_matrix_rank(g).unwrap(), g as usize - 1);
    }
}

proptest! {
    #[test]
    fn symmetric_in_insertions(g in 0u32..4, extra in 1usize..4, seed in any::<u64>()) {
        let n = extra + if g == 0 { 2 } else { 0 };
        let dim = 3 * g + n as u32 - 3;
        let mut a = vec![0u32; n];
        let mut s = seed;
        for _ in 0..dim {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            a[(s >> 33) as usize % n] += 1;
        }
        let mut rev = a.clone();
        rev.reverse();
        rev.rotate_left(1);
        prop_assert_eq!(corr(g, &a), corr(g, &rev));
    }
}
