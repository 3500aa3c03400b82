use cjac_core::exec::Exec;
use cjac_core::fourier::{
    graded_ring_transport, verify_identity, Alg, AxiomSet, Axioms, CorrExpr, Obj, Verdict, DEFAULT_DEPTH,
};

fn holds(lhs: &CorrExpr, rhs: &CorrExpr, ax: Axioms, g: u32) -> bool {
    matches!(verify_identity(lhs, rhs, AxiomSet::new(ax, g), DEFAULT_DEPTH).unwrap(), Verdict::Verified(_))
}

#[test]
fn upper_truncation_kills_lower_under_half() {
    for g in 1..=3 {
        let a = Alg::new(g);
        let top = 2 * g as i64;
        for lo in 0..=top {
            for hi in 0..lo {
                let e = a.q_ge(lo).compose(&a.p_le(hi)).unwrap();
                assert!(holds(&e, &CorrExpr::zero(), Axioms::Half, g), "g={g} q_ge({lo}) p_le({hi})");
            }
        }
    }
}

#[test]
fn pieces_resolve_identity_and_are_idempotent_under_full() {
    for g in 1..=3 {
        let a = Alg::new(g);
        assert!(holds(&a.resolution(Obj::M), &a.id(Obj::M), Axioms::Full, g));
        for i in 0..=2 * g {
            assert!(holds(&a.p(i).compose(&a.p(i)).unwrap(), &a.p(i), Axioms::Full, g));
        }
    }
}

#[test]
fn nothing_vanishes_without_axioms() {
    let a = Alg::new(2);
    assert!(!holds(&a.p(0).compose(&a.p(1)).unwrap(), &CorrExpr::zero(), Axioms::None, 2));
    assert!(holds(&a.p(0).compose(&a.p(1)).unwrap(), &CorrExpr::zero(), Axioms::Full, 2));
}

#[test]
fn words_carry_consistent_shifts() {
    for g in 1..=4 {
        let a = Alg::new(g);
        for i in 0..=2 * g {
            let sig = a.p(i).signature(g).unwrap().expect("homogeneous");
            assert_eq!(sig.shift, 0);
            let sig = a.f(i).signature(g).unwrap().expect("homogeneous");
            assert_eq!(sig.shift, 2 * i as i64 - 2 * g as i64);
        }
    }
}

#[test]
fn graded_transport_commutes() {
    for g in 1..=3 {
        let report = graded_ring_transport(g, Exec::Parallel).unwrap();
        assert!(report.all_commute);
        assert_eq!(report.to_json(), graded_ring_transport(g, Exec::Sequential).unwrap().to_json());
    }
}
