use cjac_core::exec::Exec;
use cjac_core::obstruct::{
    build_system, check_witness, replay_certificate, solve_system, sweep, ConstraintSystem, SolveResult,
};
use cjac_core::rational::{q, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Independent oracle. Each equation gives `b = p_i(t)`; consistency means
/// every `p_i − p_1 = t(α_i + β_i t)` shares a nonzero root. Returns
/// `Some(t)` when satisfiable (`t = 1` if unconstrained) and `None` otherwise.
fn oracle(sys: &ConstraintSystem) -> Option<Q> {
    let p = |i: usize| {
        let e = &sys.equations[i];
        (-e.coeff_t() / e.coeff_b(), -e.coeff_t2() / e.coeff_b())
    };
    let (a1, b1) = p(0);
    let diffs: Vec<(Q, Q)> = (1..sys.equations.len())
        .map(|i| {
            let (a, b) = p(i);
            (a - &a1, b - &b1)
        })
        .collect();
    let candidate = match diffs.iter().find(|(_, b)| !b.is_zero()) {
        Some((a, b)) => -a / b,
        None => {
            return diffs.iter().all(|(a, _)| a.is_zero()).then(Q::one);
        }
    };
    let ok = !candidate.is_zero() && diffs.iter().all(|(a, b)| (a + b * &candidate).is_zero());
    ok.then_some(candidate)
}

fn assert_agrees(sys: &ConstraintSystem) {
    match (solve_system(sys), oracle(sys)) {
        (SolveResult::Sat { t, b }, Some(expected)) => {
            assert_eq!(t, expected);
            assert!(check_witness(sys, &t, &b));
        }
        (SolveResult::Unsat { certificate }, None) => {
            assert!(certificate.len() <= 3);
            replay_certificate(sys, &certificate).unwrap();
        }
        (got, want) => panic!("g={} z={} z'={}: solver {got:?}, oracle {want:?}", sys.g, sys.z, sys.z_prime),
    }
}

proptest! {
    #[test]
    fn solver_matches_oracle(g in 2u32..14, z in -15i64..15, zp in -15i64..15) {
        assert_agrees(&build_system(g, z, zp).unwrap());
    }

    /// Reordering the equations never changes satisfiability.
    #[test]
    fn permutation_invariance(g in 3u32..12, z in -8i64..8, zp in -8i64..8, seed in any::<u64>()) {
        let sys = build_system(g, z, zp).unwrap();
        let mut shuffled = sys.clone();
        let n = shuffled.equations.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.equations.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(solve_system(&sys).is_sat(), solve_system(&shuffled).is_sat());
        assert_agrees(&shuffled);
    }
}

#[test]
fn identity_and_translation_controls() {
    for g in 2..12 {
        for z in -5..5 {
            assert_eq!(solve_system(&build_system(g, z, z).unwrap()), SolveResult::Sat { t: Q::one(), b: Q::zero() });
        }
        if g >= 3 {
            let translated = solve_system(&build_system(g, 0, 2 * g as i64 - 2).unwrap());
            assert_eq!(translated, SolveResult::Sat { t: Q::one(), b: q(1, 4) });
        }
    }
}

#[test]
fn sweep_is_schedule_independent() {
    let grid: Vec<(u32, i64, i64)> = (4..10).flat_map(|g| (0..4).map(move |zp| (g, 0, zp))).collect();
    let seq: Vec<_> = sweep(&grid, Exec::Sequential).unwrap().iter().map(|r| r.to_json()).collect();
    let par: Vec<_> = sweep(&grid, Exec::Parallel).unwrap().iter().map(|r| r.to_json()).collect();
    assert_eq!(seq, par);
}
