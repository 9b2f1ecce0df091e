//! The Erdélyi-type worked example: `G(s,t) = sum c_{m,n} s^m t^n` with
//! parameters `a, a'`, its lattice `B`, the matrix `A`, and derived data.

use num_traits::One;

use crate::exact::{rat, IntMatrix, Rat, RatVector};
use crate::series::{AffineForm, PuiseuxSeries, StepRatio};
use crate::weyl::WeylOperator;

pub fn matrix_b() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 0], &[-2, 1], &[1, -2], &[0, 1]])
}

pub fn matrix_a() -> IntMatrix {
    IntMatrix::from_i64(&[&[3, 2, 1, 0], &[0, 1, 2, 3]])
}

/// `beta = (2a' + a - 3, 2a + a' - 3)`.
pub fn beta(a: &Rat, a_prime: &Rat) -> RatVector {
    let three = rat(3, 1);
    let two = rat(2, 1);
    RatVector(vec![&two * a_prime + a - &three, &two * a + a_prime - &three])
}

/// `v' = (0, a' - 1, a - 1, 0)`, the prefactor exponent of `F`.
pub fn v_prime(a: &Rat, a_prime: &Rat) -> RatVector {
    RatVector(vec![rat(0, 1), a_prime - Rat::one(), a - Rat::one(), rat(0, 1)])
}

fn form(m: i64, n: i64, c: Rat) -> AffineForm {
    AffineForm::new(vec![rat(m, 1), rat(n, 1)], c)
}

/// Step ratios in `m` and `n`:
/// `c_{m+1,n}/c_{m,n} = (-2m+n+a'-1)(-2m+n+a'-2) / ((m+1)(m-2n+a))`,
/// `c_{m,n+1}/c_{m,n} = (m-2n+a-1)(m-2n+a-2) / ((n+1)(-2m+n+a'))`.
pub fn ratios(a: &Rat, a_prime: &Rat) -> Vec<StepRatio> {
    let one = Rat::one();
    let two = rat(2, 1);
    vec![
        StepRatio {
            numerator: vec![form(-2, 1, a_prime - &one), form(-2, 1, a_prime - &two)],
            denominator: vec![form(1, 0, one.clone()), form(1, -2, a.clone())],
        },
        StepRatio {
            numerator: vec![form(1, -2, a - &one), form(1, -2, a - &two)],
            denominator: vec![form(0, 1, one.clone()), form(-2, 1, a_prime.clone())],
        },
    ]
}

/// `x_1^{beta_1/3} x_4^{beta_2/3}`.
pub fn puiseux_monomial(a: &Rat, a_prime: &Rat) -> PuiseuxSeries {
    let b = beta(a, a_prime);
    let third = rat(1, 3);
    let w = RatVector(vec![&b.0[0] * &third, rat(0, 1), rat(0, 1), &b.0[1] * &third]);
    PuiseuxSeries::monomial(w, Rat::one())
}

/// `d_1 d_4 - d_2 d_3`, the toric generator missing from the lattice
/// basis ideal.
pub fn extra_operator() -> WeylOperator {
    let mut p = WeylOperator::d_monomial(vec![1, 0, 0, 1]);
    p.add_term(vec![0; 4], vec![0, 1, 1, 0], -Rat::one());
    p
}
