//! Buchberger completion over exact rationals, shared by the commutative
//! ring `Q[d_1..d_n]` and the Weyl algebra.

mod comm;
mod engine;
mod weyl;

pub use comm::{groebner_comm, saturate, CommIdeal};
pub use engine::{BasisStatus, GPoly, Ring, Term};
pub use weyl::{groebner_weyl, MembershipCertificate, MembershipVerdict, WeylIdealBasis};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::Exponent;

/// Admissible monomial orders. Keys compare lexicographically; a larger key
/// is a larger monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Degree reverse lexicographic with `v_1 > v_2 > ... `.
    Degrevlex,
    Lex,
    /// Nonnegative weights, ties broken by degrevlex.
    Weighted(Vec<i64>),
    /// The first `k` variables are eliminated; degrevlex within blocks.
    Elimination(usize),
}

impl TermOrder {
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            TermOrder::Weighted(w) => {
                if w.len() != nvars {
                    return Err(Error::InadmissibleOrder(format!("{} weights for {nvars} variables", w.len())));
                }
                if w.iter().any(|&x| x < 0) {
                    return Err(Error::InadmissibleOrder("negative weight".into()));
                }
                Ok(())
            }
            TermOrder::Elimination(k) if *k > nvars => {
                Err(Error::InadmissibleOrder(format!("cannot eliminate {k} of {nvars} variables")))
            }
            _ => Ok(()),
        }
    }

    pub fn key(&self, e: &[u32]) -> Vec<i64> {
        let deg: i64 = e.iter().map(|&x| i64::from(x)).sum();
        let revlex = e.iter().rev().map(|&x| -i64::from(x));
        match self {
            TermOrder::Degrevlex => std::iter::once(deg).chain(revlex).collect(),
            TermOrder::Lex => e.iter().map(|&x| i64::from(x)).collect(),
            TermOrder::Weighted(w) => {
                let wd: i64 = e.iter().zip(w).map(|(&x, &y)| i64::from(x) * y).sum();
                [wd, deg].into_iter().chain(revlex).collect()
            }
            TermOrder::Elimination(k) => {
                let head = &e[..*k];
                let hd: i64 = head.iter().map(|&x| i64::from(x)).sum();
                let hrev = head.iter().rev().map(|&x| -i64::from(x));
                let tail = &e[*k..];
                let td: i64 = tail.iter().map(|&x| i64::from(x)).sum();
                let trev = tail.iter().rev().map(|&x| -i64::from(x));
                std::iter::once(hd).chain(hrev).chain(std::iter::once(td)).chain(trev).collect()
            }
        }
    }

    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Degrevlex => "degrevlex".into(),
            TermOrder::Lex => "lex".into(),
            TermOrder::Weighted(w) => {
                format!("weighted({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
            TermOrder::Elimination(k) => format!("elimination({k})"),
        }
    }
}
