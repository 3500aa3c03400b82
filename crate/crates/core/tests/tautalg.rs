use cjac_core::rational::{factorial, q, qi, Q};
use cjac_core::stability::StabilityFamily;
use cjac_core::tautalg::{a_coeff, pushforward, BaseAtom, BaseExpr, Monomial, PushContext, TautExpr};
use num_traits::One;

fn push(g: u32, z: i64, e: &TautExpr) -> BaseExpr {
    pushforward(e, &PushContext::new(StabilityFamily::phi(g, z))).unwrap()
}

#[test]
fn top_theta_power_is_independent_of_stability() {
    for g in 2..=10 {
        for z in -4..=4 {
            let e = TautExpr::monomial(Q::one(), Monomial::theta_kappa(g, 0));
            assert_eq!(push(g, z, &e), BaseExpr::scalar(factorial(g as u64)));
        }
    }
}

#[test]
fn projection_formula() {
    for g in 2..=8 {
        let beta = BaseExpr::atom(qi(3), BaseAtom::Psi1);
        let e = TautExpr::monomial(Q::one(), Monomial::theta_kappa(g, 0));
        let lhs = push(g, 0, &e.times_base(&beta));
        assert_eq!(lhs, &push(g, 0, &e) * &beta);
    }
}

#[test]
fn pushforward_is_linear() {
    for g in 2..=8 {
        let x = TautExpr::monomial(qi(2), Monomial::theta_kappa(g, 0));
        let y = TautExpr::monomial(qi(-5), Monomial::theta_kappa(g - 1, 2));
        let sum = push(g, 1, &(&x + &y));
        assert_eq!(sum, &push(g, 1, &x) + &push(g, 1, &y));
    }
}

#[test]
fn a_coefficients_at_zero_are_positive_cubes() {
    // With δ = 0 every coefficient is g₁³/3.
    for g in 2..=9 {
        let fam = StabilityFamily::phi(g, 0);
        for g1 in 1..g {
            assert_eq!(a_coeff(g, g1, &fam).unwrap(), q((g1 * g1 * g1) as i64, 3));
        }
    }
}
