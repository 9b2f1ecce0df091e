use num_traits::{One, Zero};

use super::engine::{Engine, GPoly, Ring, Term};
use super::TermOrder;
use crate::exact::Rat;
use crate::poly::{Exponent, Poly};

pub(crate) struct Commutative {
    pub nvars: usize,
}

impl Ring for Commutative {
    fn width(&self) -> usize {
        self.nvars
    }

    fn mul_term(&self, order: &TermOrder, exp: &Exponent, coeff: &Rat, p: &GPoly) -> GPoly {
        if coeff.is_zero() {
            return GPoly::default();
        }
        // Term orders are compatible with multiplication, so sortedness is kept.
        GPoly {
            terms: p
                .terms
                .iter()
                .map(|t| {
                    let e: Exponent = t.exp.iter().zip(exp).map(|(a, b)| a + b).collect();
                    Term { key: order.key(&e), exp: e, coeff: &t.coeff * coeff }
                })
                .collect(),
        }
    }

    fn product_criterion(&self) -> bool {
        true
    }
}

pub(crate) fn to_gpoly(order: &TermOrder, p: &Poly) -> GPoly {
    GPoly::from_terms(order, p.terms().map(|(e, c)| (e.clone(), c.clone())))
}

pub(crate) fn from_gpoly(nvars: usize, p: &GPoly) -> Poly {
    Poly::from_terms(nvars, p.terms.iter().map(|t| (t.exp.clone(), t.coeff.clone())))
}

/// An ideal of `Q[d_1..d_n]` with its reduced Gröbner basis once computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommIdeal {
    pub nvars: usize,
    pub generators: Vec<Poly>,
    pub order: TermOrder,
    /// Reduced, monic, sorted by increasing leading monomial.
    pub basis: Option<Vec<Poly>>,
}

impl CommIdeal {
    pub fn new(nvars: usize, generators: Vec<Poly>) -> Self {
        CommIdeal { nvars, generators, order: TermOrder::Degrevlex, basis: None }
    }

    fn engine(&self) -> Engine<Commutative> {
        let basis = self.basis.as_ref().expect("basis computed");
        let gens = basis.iter().map(|p| to_gpoly(&self.order, p)).collect();
        Engine::with_basis(Commutative { nvars: self.nvars }, self.order.clone(), gens)
    }

    /// Remainder modulo the reduced basis (computed on demand).
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let ideal = if self.basis.is_some() { self.clone() } else { groebner_comm(self, self.order.clone()) };
        let e = ideal.engine();
        let (r, _) = e.reduce_by(&to_gpoly(&ideal.order, p), e.basis_ids());
        from_gpoly(self.nvars, &r)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn basis(&self) -> &[Poly] {
        self.basis.as_deref().unwrap_or(&[])
    }

    /// Same ideal iff the reduced bases under the same order coincide.
    pub fn same_ideal(&self, other: &CommIdeal) -> bool {
        let a = groebner_comm(self, TermOrder::Degrevlex);
        let b = groebner_comm(other, TermOrder::Degrevlex);
        a.basis == b.basis
    }

    /// Checks that the cached basis is a Gröbner basis and reduces every
    /// generator to zero.
    pub fn verify(&self) -> bool {
        let Some(basis) = &self.basis else { return false };
        let gens = basis.iter().map(|p| to_gpoly(&self.order, p)).collect();
        let mut e = Engine::new(Commutative { nvars: self.nvars }, self.order.clone(), gens);
        e.complete(u32::MAX);
        let stable = e.basis_polys().iter().map(|g| from_gpoly(self.nvars, g)).collect::<Vec<_>>() == *basis;
        stable && e.verify_buchberger() && self.generators.iter().all(|g| self.contains(g))
    }
}

/// Reduced Gröbner basis by Buchberger's algorithm.
pub fn groebner_comm(ideal: &CommIdeal, order: TermOrder) -> CommIdeal {
    let gens: Vec<GPoly> = ideal.generators.iter().map(|p| to_gpoly(&order, p)).collect();
    let mut e = Engine::new(Commutative { nvars: ideal.nvars }, order.clone(), gens);
    e.complete(u32::MAX);
    let basis = e.basis_polys().iter().map(|g| from_gpoly(ideal.nvars, g)).collect();
    CommIdeal { nvars: ideal.nvars, generators: ideal.generators.clone(), order, basis: Some(basis) }
}

fn shift_in(p: &Poly) -> Poly {
    Poly::from_terms(
        p.nvars() + 1,
        p.terms().map(|(e, c)| {
            let mut x = vec![0];
            x.extend_from_slice(e);
            (x, c.clone())
        }),
    )
}

/// `(I : f^infinity)` by eliminating `t` from `I + <1 - t f>`.
pub fn saturate(ideal: &CommIdeal, f: &Poly) -> CommIdeal {
    let n = ideal.nvars;
    let mut gens: Vec<Poly> = ideal.generators.iter().map(shift_in).collect();
    let mut t = vec![0; n + 1];
    t[0] = 1;
    let tf = shift_in(f).mul(&Poly::monomial(t, Rat::one()));
    gens.push(Poly::one(n + 1).sub(&tf));
    let big = groebner_comm(&CommIdeal::new(n + 1, gens), TermOrder::Elimination(1));
    let kept: Vec<Poly> = big
        .basis()
        .iter()
        .filter(|p| p.terms().all(|(e, _)| e[0] == 0))
        .map(|p| Poly::from_terms(n, p.terms().map(|(e, c)| (e[1..].to_vec(), c.clone()))))
        .collect();
    groebner_comm(&CommIdeal::new(n, kept), ideal.order.clone())
}
