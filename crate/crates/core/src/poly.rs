//! Sparse commutative polynomials over Q.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{rat_from_int, rat_to_string, Int, Rat};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(exp: Exponent, c: Rat) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    /// `x^plus - x^minus`.
    pub fn binomial(plus: Exponent, minus: Exponent) -> Self {
        let mut p = Self::monomial(plus, Rat::one());
        p.add_term(minus, -Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
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

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rat) {
        assert_eq!(e.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "point length");
        self.terms.iter().fold(Rat::zero(), |acc, (e, c)| {
            let m = e.iter().zip(point).fold(Rat::one(), |m, (&k, x)| m * pow(x, k));
            acc + c * m
        })
    }

    /// Applies the constant-coefficient operator `d^alpha` to the polynomial.
    pub fn derivative(&self, alpha: &[u32]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(alpha).any(|(a, b)| a < b) {
                continue;
            }
            let mut f = Int::one();
            for (&a, &b) in e.iter().zip(alpha) {
                for k in 0..b {
                    f *= Int::from(a - k);
                }
            }
            let ne = e.iter().zip(alpha).map(|(a, b)| a - b).collect();
            out.add_term(ne, c * rat_from_int(&f));
        }
        out
    }

    /// Support exponents in ascending lexicographic order.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { names[j].clone() } else { format!("{}^{k}", names[j]) })
                .collect();
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&rat_to_string(&mag));
            } else {
                if !mag.is_one() {
                    s.push_str(&rat_to_string(&mag));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("y{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

pub fn pow(x: &Rat, k: u32) -> Rat {
    let mut r = Rat::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

/// `w (w-1) ... (w-k+1)`.
pub fn falling_factorial(w: &Rat, k: u32) -> Rat {
    let mut r = Rat::one();
    for i in 0..k {
        r *= w - Rat::from_integer(Int::from(i));
    }
    r
}

/// Componentwise falling factorial `prod_j [w_j]_{k_j}`.
pub fn falling_factorial_vec(w: &[Rat], k: &[u32]) -> Rat {
    w.iter().zip(k).fold(Rat::one(), |acc, (x, &n)| acc * falling_factorial(x, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arithmetic_and_eval() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, x.mul(&x).sub(&y.mul(&y)));
        assert_eq!(p.eval(&[rat(3, 1), rat(1, 2)]), rat(35, 4));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn derivative_of_monomial() {
        let p = Poly::monomial(vec![3, 1], rat(2, 1));
        assert_eq!(p.derivative(&[2, 0]), Poly::monomial(vec![1, 1], rat(12, 1)));
        assert!(p.derivative(&[0, 2]).is_zero());
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(&rat(5, 1), 3), rat(60, 1));
        assert_eq!(falling_factorial(&rat(2, 1), 3), rat(0, 1));
        assert_eq!(falling_factorial(&rat(1, 2), 2), rat(-1, 4));
        assert_eq!(falling_factorial(&rat(7, 3), 0), rat(1, 1));
    }

    #[test]
    fn display() {
        let p = Poly::binomial(vec![1, 0, 1], vec![0, 2, 0]);
        assert_eq!(p.to_string(), "y1*y3 - y2^2");
    }
}
