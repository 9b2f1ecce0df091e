//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use dhyper::exact::{is_nonresonant, IntMatrix, Rat, RatVector};
use dhyper::poly::Poly;
use dhyper::series::PuiseuxSeries;
use dhyper::weyl::WeylOperator;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `x^mu d^nu` acting on a polynomial in `x`, term by term.
pub fn act(op: &WeylOperator, g: &Poly) -> Poly {
    let mut out = Poly::zero(g.nvars());
    for ((mu, nu), c) in op.terms() {
        let dg = g.derivative(nu);
        out = out.add(&dg.mul(&Poly::monomial(mu.clone(), c.clone())));
    }
    out
}

pub fn random_operator(rng: &mut ChaCha8Rng, n: usize, terms: usize, max_exp: u32) -> WeylOperator {
    let mut op = WeylOperator::zero(n);
    for _ in 0..terms {
        let mu = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        let nu = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        op.add_term(mu, nu, r(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
    }
    op
}

pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, terms: usize, max_exp: u32) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..terms {
        let e = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        p.add_term(e, r(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
    }
    p
}

/// A random rational vector with small denominators that is nonresonant
/// for `a` and has no integer entry.
pub fn random_nonresonant_beta(rng: &mut ChaCha8Rng, a: &IntMatrix) -> RatVector {
    loop {
        let beta = RatVector(
            (0..a.rows())
                .map(|_| {
                    let q = [2, 3, 5, 7][rng.gen_range(0..4)];
                    r(rng.gen_range(-30..=30), q)
                })
                .collect(),
        );
        if beta.0.iter().any(|b| b.is_integer()) {
            continue;
        }
        if is_nonresonant(a, &beta).map(|res| res.is_nonresonant()).unwrap_or(false) {
            return beta;
        }
    }
}

/// `Gamma(v+1)/Gamma(v+u+1)` for integer `u`, a product of linear factors.
pub fn gamma_ratio(v: &Rat, u: &BigInt) -> Option<Rat> {
    let mut acc = Rat::one();
    let mut k = BigInt::zero();
    if u >= &BigInt::zero() {
        while &k < u {
            k += 1;
            let f = v + Rat::from_integer(k.clone());
            if f.is_zero() {
                return None;
            }
            acc /= f;
        }
    } else {
        while &k > u {
            acc *= v + Rat::from_integer(k.clone());
            k -= 1;
        }
    }
    Some(acc)
}

/// Closed form of the Gamma-series coefficient at lattice point `t`,
/// normalised by `c_0 = 1`.
pub fn gamma_closed_form(f: &PuiseuxSeries, t: &[BigInt]) -> Option<Rat> {
    let u = f.ambient(t);
    f.v().0.iter().zip(&u).try_fold(Rat::one(), |acc, (v, k)| gamma_ratio(v, k).map(|g| acc * g))
}
