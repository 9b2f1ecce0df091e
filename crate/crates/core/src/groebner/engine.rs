use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::TermOrder;
use crate::exact::Rat;
use crate::poly::Exponent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub key: Vec<i64>,
    pub exp: Exponent,
    pub coeff: Rat,
}

/// Polynomial with terms sorted by decreasing order key. No zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GPoly {
    pub terms: Vec<Term>,
}

impl GPoly {
    pub fn from_terms(order: &TermOrder, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> GPoly {
        let mut map: BTreeMap<Vec<i64>, (Exponent, Rat)> = BTreeMap::new();
        for (e, c) in terms {
            let key = order.key(&e);
            let slot = map.entry(key).or_insert_with(|| (e, Rat::zero()));
            slot.1 += c;
        }
        GPoly::from_map(map)
    }

    fn from_map(map: BTreeMap<Vec<i64>, (Exponent, Rat)>) -> GPoly {
        GPoly {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, (_, c))| !c.is_zero())
                .map(|(key, (exp, coeff))| Term { key, exp, coeff })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn scale(&self, c: &Rat) -> GPoly {
        if c.is_zero() {
            return GPoly::default();
        }
        GPoly {
            terms: self.terms.iter().map(|t| Term { key: t.key.clone(), exp: t.exp.clone(), coeff: &t.coeff * c }).collect(),
        }
    }

    pub fn monic(&self) -> GPoly {
        match self.lead() {
            Some(t) => self.scale(&t.coeff.recip()),
            None => GPoly::default(),
        }
    }

    pub fn add(&self, other: &GPoly) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.key.cmp(&b.key) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.coeff + &b.coeff;
                    if !c.is_zero() {
                        out.push(Term { key: a.key.clone(), exp: a.exp.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        GPoly { terms: out }
    }

    pub fn sub(&self, other: &GPoly) -> GPoly {
        self.add(&other.scale(&-Rat::one()))
    }
}

/// The multiplication a Buchberger engine needs: left multiplication of a
/// polynomial by a term.
pub trait Ring {
    /// Exponent vector length.
    fn width(&self) -> usize;
    fn mul_term(&self, order: &TermOrder, exp: &Exponent, coeff: &Rat, p: &GPoly) -> GPoly;
    /// Whether coprime leading monomials let a pair be skipped.
    fn product_criterion(&self) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisStatus {
    Complete,
    Capped(u32),
}

impl BasisStatus {
    pub fn name(&self) -> &'static str {
        match self {
            BasisStatus::Complete => "complete",
            BasisStatus::Capped(_) => "capped",
        }
    }
}

/// `(coeff, monomial, arena id)`: one summand `coeff * x^mono * elem[id]`.
pub type TraceEntry = (Rat, Exponent, usize);

#[derive(Clone, Debug)]
struct Elem {
    poly: GPoly,
    trace: Vec<TraceEntry>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn minus(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Buchberger completion with a trace for every element, so that each
/// basis element and each reduction can be written in the generators.
pub struct Engine<R: Ring> {
    ring: R,
    order: TermOrder,
    ngens: usize,
    arena: Vec<Elem>,
    basis: Vec<usize>,
    status: BasisStatus,
}

impl<R: Ring> Engine<R> {
    pub fn new(ring: R, order: TermOrder, gens: Vec<GPoly>) -> Self {
        let ngens = gens.len();
        let arena = gens.into_iter().map(|poly| Elem { poly, trace: Vec::new() }).collect();
        Engine { ring, order, ngens, arena, basis: Vec::new(), status: BasisStatus::Complete }
    }

    /// Wraps polynomials already known to form a Gröbner basis.
    pub fn with_basis(ring: R, order: TermOrder, basis: Vec<GPoly>) -> Self {
        let mut e = Engine::new(ring, order, basis);
        e.basis = (0..e.ngens).filter(|&i| !e.arena[i].poly.is_zero()).collect();
        e
    }

    pub fn status(&self) -> BasisStatus {
        self.status
    }

    pub fn basis_polys(&self) -> Vec<GPoly> {
        self.basis.iter().map(|&i| self.arena[i].poly.clone()).collect()
    }

    fn push(&mut self, poly: GPoly, trace: Vec<TraceEntry>) -> usize {
        self.arena.push(Elem { poly, trace });
        self.arena.len() - 1
    }

    /// Full reduction of `p` by the elements `with`:
    /// `p = sum coeff * x^mono * elem[id] + remainder`.
    pub fn reduce_by(&self, p: &GPoly, with: &[usize]) -> (GPoly, Vec<TraceEntry>) {
        let mut work: BTreeMap<Vec<i64>, (Exponent, Rat)> =
            p.terms.iter().map(|t| (t.key.clone(), (t.exp.clone(), t.coeff.clone()))).collect();
        let mut rem: Vec<Term> = Vec::new();
        let mut quot: Vec<TraceEntry> = Vec::new();
        while let Some((key, (exp, coeff))) = work.pop_last() {
            let divisor = with.iter().copied().find(|&id| {
                let lead = self.arena[id].poly.lead().expect("nonzero basis element");
                divides(&lead.exp, &exp)
            });
            match divisor {
                None => rem.push(Term { key, exp, coeff }),
                Some(id) => {
                    let g = &self.arena[id].poly;
                    let lead = g.lead().expect("nonzero");
                    let mono = minus(&exp, &lead.exp);
                    let c = &coeff / &lead.coeff;
                    let prod = self.ring.mul_term(&self.order, &mono, &c, g);
                    for t in prod.terms.iter().skip(1) {
                        let slot = work.entry(t.key.clone()).or_insert_with(|| (t.exp.clone(), Rat::zero()));
                        slot.1 -= &t.coeff;
                        if slot.1.is_zero() {
                            work.remove(&t.key);
                        }
                    }
                    quot.push((c, mono, id));
                }
            }
        }
        (GPoly { terms: rem }, quot)
    }

    fn spoly(&self, i: usize, j: usize) -> (GPoly, Vec<TraceEntry>) {
        let (f, g) = (&self.arena[i].poly, &self.arena[j].poly);
        let (a, b) = (&f.lead().unwrap().exp, &g.lead().unwrap().exp);
        let l = lcm(a, b);
        let (ma, mb) = (minus(&l, a), minus(&l, b));
        let one = Rat::one();
        let s = self.ring.mul_term(&self.order, &ma, &one, f).sub(&self.ring.mul_term(&self.order, &mb, &one, g));
        (s, vec![(one.clone(), ma, i), (-one, mb, j)])
    }

    /// Adds the monic form of `r = sum(head) - sum(quot)` to the arena.
    fn record(&mut self, r: GPoly, head: Vec<TraceEntry>, quot: Vec<TraceEntry>) -> usize {
        let lc = r.lead().expect("nonzero").coeff.clone();
        let inv = lc.recip();
        let mut trace: Vec<TraceEntry> = head.into_iter().map(|(c, m, id)| (c * &inv, m, id)).collect();
        trace.extend(quot.into_iter().map(|(c, m, id)| (-c * &inv, m, id)));
        self.push(r.scale(&inv), trace)
    }

    /// Runs Buchberger's algorithm. Pairs whose lcm exceeds `cap` in total
    /// degree are postponed; if any of them has a nonzero remainder at the
    /// end the basis is reported as capped.
    pub fn complete(&mut self, cap: u32) {
        let mut pairs: BTreeSet<(Vec<i64>, usize, usize)> = BTreeSet::new();
        let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut deferred: Vec<(usize, usize)> = Vec::new();
        let one = Rat::one();

        for g in 0..self.ngens {
            if self.arena[g].poly.is_zero() {
                continue;
            }
            let (r, quot) = self.reduce_by(&self.arena[g].poly.clone(), &self.basis.clone());
            if r.is_zero() {
                continue;
            }
            let id = self.record(r, vec![(one.clone(), vec![0; self.ring.width()], g)], quot);
            self.add_to_basis(id, &mut pairs);
        }

        while let Some((key, i, j)) = pairs.pop_first() {
            let _ = key;
            if self.chain_skip(i, j, &pairs, &deferred) {
                done.insert((i, j));
                continue;
            }
            let l = lcm(&self.lead_exp(i), &self.lead_exp(j));
            if degree(&l) > cap {
                deferred.push((i, j));
                continue;
            }
            done.insert((i, j));
            let (s, head) = self.spoly(i, j);
            let (r, quot) = self.reduce_by(&s, &self.basis.clone());
            if !r.is_zero() {
                let id = self.record(r, head, quot);
                self.add_to_basis(id, &mut pairs);
            }
        }

        let mut capped = false;
        for (i, j) in deferred {
            let (s, _) = self.spoly(i, j);
            let (r, _) = self.reduce_by(&s, &self.basis.clone());
            if !r.is_zero() {
                capped = true;
                break;
            }
        }
        self.status = if capped { BasisStatus::Capped(cap) } else { BasisStatus::Complete };
        self.interreduce();
    }

    fn lead_exp(&self, i: usize) -> Exponent {
        self.arena[i].poly.lead().expect("nonzero").exp.clone()
    }

    fn add_to_basis(&mut self, id: usize, pairs: &mut BTreeSet<(Vec<i64>, usize, usize)>) {
        let e = self.lead_exp(id);
        for &b in &self.basis {
            let f = self.lead_exp(b);
            if self.ring.product_criterion() && e.iter().zip(&f).all(|(x, y)| *x == 0 || *y == 0) {
                continue;
            }
            let l = lcm(&e, &f);
            pairs.insert((self.order.key(&l), b, id));
        }
        self.basis.push(id);
    }

    /// Buchberger's chain criterion: some `k` has a leading monomial dividing
    /// `lcm(i, j)` and both pairs `(i,k)`, `(j,k)` are no longer pending.
    fn chain_skip(
        &self,
        i: usize,
        j: usize,
        pending: &BTreeSet<(Vec<i64>, usize, usize)>,
        deferred: &[(usize, usize)],
    ) -> bool {
        let l = lcm(&self.lead_exp(i), &self.lead_exp(j));
        let open = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            pending.iter().any(|(_, x, y)| *x == a && *y == b) || deferred.contains(&(a, b))
        };
        self.basis.iter().any(|&k| {
            k != i && k != j && divides(&self.lead_exp(k), &l) && !open(i, k) && !open(j, k)
        })
    }

    /// Replaces the basis by the reduced one, sorted by increasing leading
    /// monomial.
    fn interreduce(&mut self) {
        let mut keep: Vec<usize> = Vec::new();
        for &i in &self.basis {
            let e = self.lead_exp(i);
            let redundant = self.basis.iter().any(|&j| {
                let f = self.lead_exp(j);
                j != i && divides(&f, &e) && (f != e || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let one = Rat::one();
        let mut reduced = Vec::with_capacity(keep.len());
        for &i in &keep {
            let others: Vec<usize> = keep.iter().copied().filter(|&j| j != i).collect();
            let (r, quot) = self.reduce_by(&self.arena[i].poly.clone(), &others);
            let id = if quot.is_empty() {
                i
            } else {
                self.record(r, vec![(one.clone(), vec![0; self.ring.width()], i)], quot)
            };
            reduced.push(id);
        }
        reduced.sort_by_key(|&id| self.order.key(&self.lead_exp(id)));
        self.basis = reduced;
    }

    pub fn basis_ids(&self) -> &[usize] {
        &self.basis
    }

    /// Checks that every S-pair of the current basis reduces to zero.
    pub fn verify_buchberger(&self) -> bool {
        let b = self.basis.clone();
        for (x, &i) in b.iter().enumerate() {
            for &j in &b[x + 1..] {
                let (s, _) = self.spoly(i, j);
                let (r, _) = self.reduce_by(&s, &b);
                if !r.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Expresses a trace over arena elements as cofactors of the
    /// generators: `sum coeff * x^mono * elem[id] = sum_g Q_g * gen_g`.
    pub fn cofactors(&self, trace: &[TraceEntry]) -> Vec<GPoly> {
        let mut needed = BTreeSet::new();
        let mut stack: Vec<usize> = trace.iter().map(|t| t.2).collect();
        while let Some(id) = stack.pop() {
            if id < self.ngens || !needed.insert(id) {
                continue;
            }
            stack.extend(self.arena[id].trace.iter().map(|t| t.2));
        }
        let mut memo: BTreeMap<usize, Rc<Vec<GPoly>>> = BTreeMap::new();
        for id in needed {
            let cof = self.expand(&self.arena[id].trace, &memo);
            memo.insert(id, Rc::new(cof));
        }
        self.expand(trace, &memo)
    }

    fn expand(&self, trace: &[TraceEntry], memo: &BTreeMap<usize, Rc<Vec<GPoly>>>) -> Vec<GPoly> {
        let mut out = vec![GPoly::default(); self.ngens];
        for (c, mono, id) in trace {
            if *id < self.ngens {
                let t = GPoly::from_terms(&self.order, [(mono.clone(), c.clone())]);
                out[*id] = out[*id].add(&t);
            } else {
                for (g, q) in memo[id].iter().enumerate() {
                    if !q.is_zero() {
                        out[g] = out[g].add(&self.ring.mul_term(&self.order, mono, c, q));
                    }
                }
            }
        }
        out
    }
}
