//! Normal-ordered arithmetic in the Weyl algebra `D = Q<x_1..x_n, d_1..d_n>`.
//!
//! Every operator is stored as a finite sum of terms `c x^mu d^nu` with all
//! `x` factors to the left. Terms are keyed by `(mu, nu)` in lexicographic
//! order, so two operators are equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_from_int, rat_to_string, Int, IntMatrix, Rat, RatVector};
use crate::poly::{falling_factorial_vec, Exponent, Poly};
use crate::series::PuiseuxSeries;

pub type TermKey = (Exponent, Exponent);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylOperator {
    nvars: usize,
    terms: BTreeMap<TermKey, Rat>,
}

impl WeylOperator {
    pub fn zero(nvars: usize) -> Self {
        WeylOperator { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::term(vec![0; nvars], vec![0; nvars], c)
    }

    /// `c x^mu d^nu`.
    pub fn term(mu: Exponent, nu: Exponent, c: Rat) -> Self {
        assert_eq!(mu.len(), nu.len(), "exponent lengths");
        let mut op = WeylOperator::zero(mu.len());
        op.add_term(mu, nu, c);
        op
    }

    pub fn x(nvars: usize, i: usize) -> Self {
        let mut mu = vec![0; nvars];
        mu[i] = 1;
        Self::term(mu, vec![0; nvars], Rat::one())
    }

    pub fn d(nvars: usize, i: usize) -> Self {
        let mut nu = vec![0; nvars];
        nu[i] = 1;
        Self::term(vec![0; nvars], nu, Rat::one())
    }

    /// `theta_i = x_i d_i`.
    pub fn theta(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(e.clone(), e, Rat::one())
    }

    /// `d^nu`.
    pub fn d_monomial(nu: Exponent) -> Self {
        Self::term(vec![0; nu.len()], nu, Rat::one())
    }

    /// Embeds a commutative polynomial in `d_1..d_n`.
    pub fn from_d_poly(p: &Poly) -> Self {
        let n = p.nvars();
        let mut op = WeylOperator::zero(n);
        for (e, c) in p.terms() {
            op.add_term(vec![0; n], e.clone(), c.clone());
        }
        op
    }

    /// The commutative polynomial in `d` if the operator has no `x` factors.
    pub fn to_d_poly(&self) -> Option<Poly> {
        let mut p = Poly::zero(self.nvars);
        for ((mu, nu), c) in &self.terms {
            if mu.iter().any(|&k| k > 0) {
                return None;
            }
            p.add_term(nu.clone(), c.clone());
        }
        Some(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mu: &[u32], nu: &[u32]) -> Rat {
        self.terms.get(&(mu.to_vec(), nu.to_vec())).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, mu: Exponent, nu: Exponent, c: Rat) {
        assert!(mu.len() == self.nvars && nu.len() == self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        let key = (mu, nu);
        let remove = {
            let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        WeylOperator { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Total degree in `x` and `d` jointly.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(mu, nu)| mu.iter().sum::<u32>() + nu.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn fmt_with(&self, xs: &[String], ds: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, ((mu, nu), c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (names, e) in [(xs, mu), (ds, nu)] {
                for (j, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => factors.push(names[j].clone()),
                        _ => factors.push(format!("{}^{k}", names[j])),
                    }
                }
            }
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if factors.is_empty() {
                s.push_str(&rat_to_string(&mag));
            } else {
                if !mag.is_one() {
                    s.push_str(&rat_to_string(&mag));
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let ds: Vec<String> = (1..=self.nvars).map(|i| format!("d{i}")).collect();
        f.write_str(&self.fmt_with(&xs, &ds))
    }
}

impl Add for &WeylOperator {
    type Output = WeylOperator;
    fn add(self, rhs: &WeylOperator) -> WeylOperator {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = self.clone();
        for ((mu, nu), c) in &rhs.terms {
            out.add_term(mu.clone(), nu.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WeylOperator {
    type Output = WeylOperator;
    fn sub(self, rhs: &WeylOperator) -> WeylOperator {
        self + &(-rhs)
    }
}

impl Neg for &WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        self.scale(&-Rat::one())
    }
}

impl Mul for &WeylOperator {
    type Output = WeylOperator;
    fn mul(self, rhs: &WeylOperator) -> WeylOperator {
        normal_product(self, rhs).expect("nvars mismatch in operator product")
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `d^nu x^mu` rewritten as `sum_k coeff_k x^(mu-k) d^(nu-k)`, componentwise.
pub(crate) fn commute_monomials(nu: &[u32], mu: &[u32]) -> Vec<(Exponent, Exponent, BigInt)> {
    let mut acc: Vec<(Exponent, Exponent, BigInt)> = vec![(Vec::new(), Vec::new(), BigInt::one())];
    for (&a, &b) in nu.iter().zip(mu) {
        let kmax = a.min(b);
        let mut next = Vec::with_capacity(acc.len() * (kmax as usize + 1));
        for (xs, ds, c) in &acc {
            for k in 0..=kmax {
                let f = binomial(a, k) * binomial(b, k) * factorial(k);
                let mut xs = xs.clone();
                xs.push(b - k);
                let mut ds = ds.clone();
                ds.push(a - k);
                next.push((xs, ds, c * &f));
            }
        }
        acc = next;
    }
    acc
}

/// The product `P Q` in normal order, via
/// `d^nu x^mu = sum_k C(nu,k) C(mu,k) k! x^(mu-k) d^(nu-k)` per variable.
pub fn normal_product(p: &WeylOperator, q: &WeylOperator) -> Result<WeylOperator> {
    if p.nvars != q.nvars {
        return Err(Error::DimensionMismatch(format!("operators in {} and {} variables", p.nvars, q.nvars)));
    }
    let mut out = WeylOperator::zero(p.nvars);
    for ((mu1, nu1), c1) in &p.terms {
        for ((mu2, nu2), c2) in &q.terms {
            let c = c1 * c2;
            for (xs, ds, k) in commute_monomials(nu1, mu2) {
                let mu: Exponent = mu1.iter().zip(&xs).map(|(a, b)| a + b).collect();
                let nu: Exponent = ds.iter().zip(nu2).map(|(a, b)| a + b).collect();
                out.add_term(mu, nu, &c * rat_from_int(&k));
            }
        }
    }
    Ok(out)
}

/// Splits `P` into components homogeneous for `deg(x^mu d^nu) = A(nu - mu)`,
/// sorted by degree.
pub fn a_degree_components(a: &IntMatrix, p: &WeylOperator) -> Result<Vec<(Vec<Int>, WeylOperator)>> {
    if a.cols() != p.nvars {
        return Err(Error::DimensionMismatch(format!("A has {} columns, operator has {} variables", a.cols(), p.nvars)));
    }
    let mut parts: BTreeMap<Vec<Int>, WeylOperator> = BTreeMap::new();
    for ((mu, nu), c) in &p.terms {
        let diff: Vec<Int> = nu.iter().zip(mu).map(|(&n, &m)| Int::from(n) - Int::from(m)).collect();
        let deg = a.mul_vec(&diff);
        parts
            .entry(deg)
            .or_insert_with(|| WeylOperator::zero(p.nvars))
            .add_term(mu.clone(), nu.clone(), c.clone());
    }
    Ok(parts.into_iter().collect())
}

/// Polynomial in commuting symbols `theta_1..theta_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPoly(pub Poly);

impl ThetaPoly {
    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    /// `p(w)`: the eigenvalue of `p(theta)` on `x^w`.
    pub fn eval(&self, w: &[Rat]) -> Rat {
        self.0.eval(w)
    }

    /// Expands back to normal order by multiplying `theta_j = x_j d_j` in `D`.
    pub fn to_operator(&self) -> WeylOperator {
        let n = self.nvars();
        let mut out = WeylOperator::zero(n);
        for (e, c) in self.0.terms() {
            let mut m = WeylOperator::one(n);
            for (j, &k) in e.iter().enumerate() {
                let t = WeylOperator::theta(n, j);
                for _ in 0..k {
                    m = &m * &t;
                }
            }
            out = &out + &m.scale(c);
        }
        out
    }
}

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("t{i}")).collect();
        f.write_str(&self.0.fmt_with(&names))
    }
}

/// Rewrites an operator with `mu = nu` in every term as `p(theta)` using
/// `x^mu d^mu = prod_j prod_{k < mu_j} (theta_j - k)`.
pub fn theta_form(p: &WeylOperator) -> Result<ThetaPoly> {
    let n = p.nvars;
    let mut out = Poly::zero(n);
    for ((mu, nu), c) in &p.terms {
        if mu != nu {
            return Err(Error::NotThetaOperator { mu: mu.clone(), nu: nu.clone() });
        }
        let mut f = Poly::constant(n, c.clone());
        for (j, &k) in mu.iter().enumerate() {
            for i in 0..k {
                let factor = Poly::var(n, j).sub(&Poly::constant(n, Rat::from_integer(Int::from(i))));
                f = f.mul(&factor);
            }
        }
        out = out.add(&f);
    }
    Ok(ThetaPoly(out))
}

/// The operators `E_i - beta_i`, `E_i = sum_j a_ij theta_j`.
pub fn euler_generators(a: &IntMatrix, beta: &RatVector) -> Result<Vec<WeylOperator>> {
    if beta.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("beta has length {}, A has {} rows", beta.len(), a.rows())));
    }
    let n = a.cols();
    Ok((0..a.rows())
        .map(|i| {
            let mut op = WeylOperator::constant(n, -beta.0[i].clone());
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                op.add_term(e.clone(), e, rat_from_int(a.get(i, j)));
            }
            op
        })
        .collect())
}

/// Groups the terms of `P` by their exponent shift `mu - nu` modulo the
/// lattice spanned by the columns of `lattice`. Parts act on disjoint cosets.
pub fn split_by_shift_class(p: &WeylOperator, lattice: &IntMatrix) -> Vec<WeylOperator> {
    let mut classes: Vec<(Vec<Int>, WeylOperator)> = Vec::new();
    for ((mu, nu), c) in &p.terms {
        let s: Vec<Int> = mu.iter().zip(nu).map(|(&m, &n)| Int::from(m) - Int::from(n)).collect();
        let found = classes.iter_mut().find(|(rep, _)| {
            let diff: Vec<Int> = s.iter().zip(rep.iter()).map(|(a, b)| a - b).collect();
            diff.iter().all(Zero::is_zero) || crate::exact::lattice_coordinates(lattice, &diff).is_some()
        });
        match found {
            Some((_, op)) => op.add_term(mu.clone(), nu.clone(), c.clone()),
            None => classes.push((s, WeylOperator::term(mu.clone(), nu.clone(), c.clone()))),
        }
    }
    classes.into_iter().map(|(_, op)| op).collect()
}

/// `P f` on the reliable sub-window. `d_i` acts on `x^w` as `w_i x^(w - e_i)`.
///
/// All terms of `P` must shift exponents within one coset of the series
/// lattice; use [`split_by_shift_class`] for general operators. The output
/// window is the input reliable window shrunk by the largest lattice offset
/// between term shifts.
pub fn apply_to_series(p: &WeylOperator, f: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    if p.nvars != f.nvars() {
        return Err(Error::DimensionMismatch(format!("operator in {} variables, series in {}", p.nvars, f.nvars())));
    }
    let lattice = f.lattice();
    let mut it = p.terms.iter();
    let Some(((mu0, nu0), _)) = it.next() else {
        return Ok(PuiseuxSeries::zero_like(f));
    };
    let s0: Vec<Int> = mu0.iter().zip(nu0).map(|(&m, &n)| Int::from(m) - Int::from(n)).collect();
    // (offset in lattice coordinates, nu, coeff) per term
    let mut stencil: Vec<(Vec<Int>, &Exponent, &Rat)> = Vec::with_capacity(p.len());
    for ((mu, nu), c) in &p.terms {
        let diff: Vec<Int> = mu
            .iter()
            .zip(nu)
            .zip(&s0)
            .map(|((&m, &n), s)| Int::from(m) - Int::from(n) - s)
            .collect();
        let coords = if diff.iter().all(Zero::is_zero) {
            vec![Int::zero(); lattice.cols()]
        } else {
            crate::exact::lattice_coordinates(lattice, &diff).ok_or(Error::MixedShiftClasses)?
        };
        stencil.push((coords, nu, c));
    }
    let reach: i64 = stencil
        .iter()
        .flat_map(|(t, _, _)| t.iter())
        .map(|x| i64::try_from(x.magnitude().clone()).unwrap_or(i64::MAX))
        .max()
        .unwrap_or(0);
    let base: Vec<Rat> = f.v().0.iter().zip(&s0).map(|(v, s)| v + rat_from_int(s)).collect();
    let reliable = f.reliable().and_then(|r| {
        let r = i64::from(r) - reach;
        (r >= 0).then_some(r as u32)
    });
    let Some(out_r) = reliable else {
        return Ok(PuiseuxSeries::empty_window(f.nvars(), RatVector(base), lattice.clone()));
    };
    let mut terms = BTreeMap::new();
    for t in PuiseuxSeries::box_points(lattice.cols(), out_r) {
        let mut acc = Rat::zero();
        for (delta, nu, c) in &stencil {
            let src: Vec<Int> = t.iter().zip(delta).map(|(a, b)| a - b).collect();
            let coeff = f.coeff_at(&src).expect("source point lies in the reliable window");
            if coeff.is_zero() {
                continue;
            }
            let w = f.exponent_at(&src);
            acc += coeff * falling_factorial_vec(&w, nu) * *c;
        }
        if !acc.is_zero() {
            terms.insert(t, acc);
        }
    }
    PuiseuxSeries::new(RatVector(base), lattice.clone(), terms, out_r, Some(out_r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn erdelyi_a() -> IntMatrix {
        IntMatrix::from_i64(&[&[3, 2, 1, 0], &[0, 1, 2, 3]])
    }

    fn beta() -> RatVector {
        RatVector(vec![rat(-11, 6), rat(-5, 3)])
    }

    #[test]
    fn single_commutation() {
        let p = &WeylOperator::d(1, 0) * &WeylOperator::x(1, 0);
        let expected = &WeylOperator::theta(1, 0) + &WeylOperator::one(1);
        assert_eq!(p, expected);
    }

    #[test]
    fn second_order_commutation() {
        let d2 = WeylOperator::term(vec![0], vec![2], rat(1, 1));
        let x2 = WeylOperator::term(vec![2], vec![0], rat(1, 1));
        let mut expected = WeylOperator::term(vec![2], vec![2], rat(1, 1));
        expected.add_term(vec![1], vec![1], rat(4, 1));
        expected.add_term(vec![0], vec![0], rat(2, 1));
        assert_eq!(&d2 * &x2, expected);
    }

    #[test]
    fn euler_operators_commute() {
        let e = euler_generators(&erdelyi_a(), &beta()).unwrap();
        assert_eq!(&e[0] * &e[1], &e[1] * &e[0]);
    }

    #[test]
    fn euler_generators_for_erdelyi_parameters() {
        let e = euler_generators(&erdelyi_a(), &beta()).unwrap();
        assert_eq!(e[0].coeff(&[0; 4], &[0; 4]), rat(11, 6));
        assert_eq!(e[0].coeff(&[1, 0, 0, 0], &[1, 0, 0, 0]), rat(3, 1));
        assert_eq!(e[0].coeff(&[0, 0, 0, 1], &[0, 0, 0, 1]), rat(0, 1));
        assert_eq!(e[1].coeff(&[0; 4], &[0; 4]), rat(5, 3));
        assert_eq!(e[1].to_string(), "x2*d2 + 2*x3*d3 + 3*x4*d4 + 5/3");

        let id = euler_generators(&IntMatrix::identity(3), &RatVector::zeros(3)).unwrap();
        for (i, op) in id.iter().enumerate() {
            assert_eq!(*op, WeylOperator::theta(3, i));
        }
        let e = euler_generators(&IntMatrix::from_i64(&[&[1, 1]]), &RatVector(vec![rat(5, 1)])).unwrap();
        let expected = &(&WeylOperator::theta(2, 0) + &WeylOperator::theta(2, 1)) - &WeylOperator::constant(2, rat(5, 1));
        assert_eq!(e, vec![expected]);
        assert!(euler_generators(&erdelyi_a(), &RatVector::zeros(3)).is_err());
    }

    #[test]
    fn degree_components() {
        let a = erdelyi_a();
        let mut p = WeylOperator::d_monomial(vec![1, 0, 1, 0]);
        p.add_term(vec![0; 4], vec![0, 2, 0, 0], rat(-1, 1));
        let parts = a_degree_components(&a, &p).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, vec![int(4), int(2)]);

        let e = euler_generators(&a, &beta()).unwrap();
        let parts = a_degree_components(&a, &e[0]).unwrap();
        assert_eq!(parts, vec![(vec![int(0), int(0)], e[0].clone())]);

        let q = &WeylOperator::x(1, 0) + &WeylOperator::d(1, 0);
        let parts = a_degree_components(&IntMatrix::from_i64(&[&[1]]), &q).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, vec![int(-1)]);
        assert_eq!(parts[1].0, vec![int(1)]);
    }

    #[test]
    fn theta_forms() {
        let t = theta_form(&WeylOperator::theta(1, 0)).unwrap();
        assert_eq!(t.0, Poly::var(1, 0));

        let t = theta_form(&WeylOperator::term(vec![2], vec![2], rat(1, 1))).unwrap();
        let th = Poly::var(1, 0);
        assert_eq!(t.0, th.mul(&th.sub(&Poly::one(1))));

        let t = theta_form(&WeylOperator::term(vec![1, 1], vec![1, 1], rat(1, 1))).unwrap();
        assert_eq!(t.0, Poly::var(2, 0).mul(&Poly::var(2, 1)));

        let bad = WeylOperator::d(2, 0);
        assert!(matches!(theta_form(&bad), Err(Error::NotThetaOperator { .. })));
    }

    #[test]
    fn theta_poly_round_trip() {
        let mut p = WeylOperator::term(vec![3, 1], vec![3, 1], rat(2, 5));
        p.add_term(vec![0, 2], vec![0, 2], rat(-7, 1));
        p.add_term(vec![0, 0], vec![0, 0], rat(1, 3));
        let t = theta_form(&p).unwrap();
        assert_eq!(t.to_operator(), p);
    }

    #[test]
    fn product_dimension_mismatch() {
        assert!(normal_product(&WeylOperator::one(1), &WeylOperator::one(2)).is_err());
    }
}
