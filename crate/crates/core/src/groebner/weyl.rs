use super::engine::{BasisStatus, Engine, GPoly, Ring};
use super::TermOrder;
use crate::error::{Error, Result};
use crate::exact::{rat_from_int, Rat};
use crate::poly::Exponent;
use crate::weyl::{commute_monomials, normal_product, WeylOperator};

/// Exponents are `(mu, nu)` concatenated: `x^mu d^nu`.
pub(crate) struct Weyl {
    pub nvars: usize,
}

impl Ring for Weyl {
    fn width(&self) -> usize {
        2 * self.nvars
    }

    fn mul_term(&self, order: &TermOrder, exp: &Exponent, coeff: &Rat, p: &GPoly) -> GPoly {
        let n = self.nvars;
        let (mu, nu) = exp.split_at(n);
        let mut out = Vec::new();
        for t in &p.terms {
            let (alpha, beta) = t.exp.split_at(n);
            let c = coeff * &t.coeff;
            for (xs, ds, k) in commute_monomials(nu, alpha) {
                let mut e: Exponent = mu.iter().zip(&xs).map(|(a, b)| a + b).collect();
                e.extend(ds.iter().zip(beta).map(|(a, b)| a + b));
                out.push((e, &c * rat_from_int(&k)));
            }
        }
        GPoly::from_terms(order, out)
    }

    fn product_criterion(&self) -> bool {
        false
    }
}

fn to_gpoly(order: &TermOrder, p: &WeylOperator) -> GPoly {
    GPoly::from_terms(
        order,
        p.terms().map(|((mu, nu), c)| {
            let mut e = mu.clone();
            e.extend_from_slice(nu);
            (e, c.clone())
        }),
    )
}

fn from_gpoly(nvars: usize, p: &GPoly) -> WeylOperator {
    let mut op = WeylOperator::zero(nvars);
    for t in &p.terms {
        op.add_term(t.exp[..nvars].to_vec(), t.exp[nvars..].to_vec(), t.coeff.clone());
    }
    op
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member,
    NonMember,
    Inconclusive,
}

impl MembershipVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            MembershipVerdict::Member => "member",
            MembershipVerdict::NonMember => "nonmember",
            MembershipVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// `P = sum_i Q_i g_i + normal_form`, replayable against the generators.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub verdict: MembershipVerdict,
    pub cofactors: Vec<WeylOperator>,
    pub normal_form: WeylOperator,
    pub status: BasisStatus,
}

impl MembershipCertificate {
    /// Recomputes `P - sum Q_i g_i` with exact products and compares it with
    /// the recorded normal form.
    pub fn replay(&self, generators: &[WeylOperator], p: &WeylOperator) -> bool {
        if generators.len() != self.cofactors.len() {
            return false;
        }
        let mut acc = p.clone();
        for (q, g) in self.cofactors.iter().zip(generators) {
            if q.is_zero() {
                continue;
            }
            match normal_product(q, g) {
                Ok(prod) => acc = &acc - &prod,
                Err(_) => return false,
            }
        }
        acc == self.normal_form && (self.verdict != MembershipVerdict::Member || acc.is_zero())
    }
}

/// A left Gröbner basis in the Weyl algebra.
pub struct WeylIdealBasis {
    pub nvars: usize,
    pub generators: Vec<WeylOperator>,
    pub order: TermOrder,
    pub status: BasisStatus,
    pub basis: Vec<WeylOperator>,
    engine: Engine<Weyl>,
}

impl std::fmt::Debug for WeylIdealBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeylIdealBasis")
            .field("nvars", &self.nvars)
            .field("order", &self.order)
            .field("status", &self.status)
            .field("basis", &self.basis)
            .finish()
    }
}

/// Left Gröbner basis of `D * gens` under `order` on `(x, d)` jointly.
pub fn groebner_weyl(gens: &[WeylOperator], order: TermOrder, cap: u32) -> Result<WeylIdealBasis> {
    let nvars = gens.first().map_or(0, WeylOperator::nvars);
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::DimensionMismatch("generators live in different Weyl algebras".into()));
    }
    order.validate(2 * nvars)?;
    let polys = gens.iter().map(|g| to_gpoly(&order, g)).collect();
    let mut engine = Engine::new(Weyl { nvars }, order.clone(), polys);
    engine.complete(cap);
    let basis = engine.basis_polys().iter().map(|p| from_gpoly(nvars, p)).collect();
    Ok(WeylIdealBasis { nvars, generators: gens.to_vec(), order, status: engine.status(), basis, engine })
}

impl WeylIdealBasis {
    pub fn is_complete(&self) -> bool {
        self.status == BasisStatus::Complete
    }

    pub fn normal_form(&self, p: &WeylOperator) -> WeylOperator {
        let (r, _) = self.engine.reduce_by(&to_gpoly(&self.order, p), self.engine.basis_ids());
        from_gpoly(self.nvars, &r)
    }

    /// Membership with cofactors. A nonzero normal form only refutes
    /// membership when the basis is complete.
    pub fn membership(&self, p: &WeylOperator) -> Result<MembershipCertificate> {
        if p.nvars() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "operator in {} variables, ideal in {}",
                p.nvars(),
                self.nvars
            )));
        }
        let (r, quot) = self.engine.reduce_by(&to_gpoly(&self.order, p), self.engine.basis_ids());
        let cofactors = self.engine.cofactors(&quot).iter().map(|q| from_gpoly(self.nvars, q)).collect();
        let normal_form = from_gpoly(self.nvars, &r);
        let verdict = if r.is_zero() {
            MembershipVerdict::Member
        } else if self.is_complete() {
            MembershipVerdict::NonMember
        } else {
            MembershipVerdict::Inconclusive
        };
        Ok(MembershipCertificate { verdict, cofactors, normal_form, status: self.status })
    }

    /// Post hoc Buchberger criterion on the returned basis.
    pub fn verify_buchberger(&self) -> bool {
        self.engine.verify_buchberger()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn unit_ideal() {
        let mut t = WeylOperator::theta(1, 0);
        t = &t - &WeylOperator::constant(1, rat(5, 1));
        let gens = vec![WeylOperator::d(1, 0), t];
        let gb = groebner_weyl(&gens, TermOrder::Degrevlex, 10).unwrap();
        assert!(gb.is_complete());
        let one = WeylOperator::one(1);
        assert!(gb.normal_form(&one).is_zero());
        let cert = gb.membership(&one).unwrap();
        assert_eq!(cert.verdict, MembershipVerdict::Member);
        assert!(cert.replay(&gens, &one));
    }

    #[test]
    fn left_ideal_is_not_two_sided() {
        // D * d contains x d but not d x = x d + 1.
        let gens = vec![WeylOperator::d(1, 0)];
        let gb = groebner_weyl(&gens, TermOrder::Degrevlex, 10).unwrap();
        let xd = WeylOperator::theta(1, 0);
        assert!(gb.membership(&xd).unwrap().verdict == MembershipVerdict::Member);
        let dx = &WeylOperator::d(1, 0) * &WeylOperator::x(1, 0);
        let cert = gb.membership(&dx).unwrap();
        assert_eq!(cert.verdict, MembershipVerdict::NonMember);
        assert_eq!(cert.normal_form, WeylOperator::one(1));
        assert!(cert.replay(&gens, &dx));
    }

    #[test]
    fn negative_weights_rejected() {
        let gens = vec![WeylOperator::d(1, 0)];
        assert!(matches!(
            groebner_weyl(&gens, TermOrder::Weighted(vec![-1, 1]), 10),
            Err(Error::InadmissibleOrder(_))
        ));
    }
}
