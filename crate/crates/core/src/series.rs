//! Truncated formal Puiseux series `x^v sum_{t} c_t x^{L t}` on a lattice
//! translate, with coefficients known exactly on a sup-norm box of lattice
//! coordinates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{
    is_nonresonant, kernel_basis, lattice_coordinates, rat, rat_from_int, rat_to_string, saturation_index,
    solve_rational, Int, IntMatrix, Rat, RatVector,
};
use crate::mgraph::{bounded_representatives, lattice_polynomial_solutions, MGraphComponent};
use crate::poly::falling_factorial;
use crate::systems::{BlockDecomposition, ComponentClass};
use crate::weyl::{apply_to_series, split_by_shift_class, WeylOperator};

/// Retry budget for perturbing a default exponent.
pub const DEFAULT_RETRIES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    nvars: usize,
    v: RatVector,
    lattice: IntMatrix,
    terms: BTreeMap<Vec<Int>, Rat>,
    window: u32,
    reliable: Option<u32>,
}

impl PuiseuxSeries {
    /// Validates and builds a series. Keys are lattice coordinates; zero
    /// coefficients are dropped.
    pub fn new(
        v: RatVector,
        lattice: IntMatrix,
        terms: BTreeMap<Vec<Int>, Rat>,
        window: u32,
        reliable: Option<u32>,
    ) -> Result<Self> {
        let nvars = v.len();
        if lattice.rows() != nvars {
            return Err(Error::DimensionMismatch(format!(
                "lattice has {} rows, exponent has length {nvars}",
                lattice.rows()
            )));
        }
        if lattice.rank() != lattice.cols() {
            return Err(Error::LatticeCollision("lattice basis columns are dependent".into()));
        }
        let bound = Int::from(window);
        let mut kept = BTreeMap::new();
        for (t, c) in terms {
            if t.len() != lattice.cols() {
                return Err(Error::DimensionMismatch(format!(
                    "term has {} lattice coordinates, lattice rank is {}",
                    t.len(),
                    lattice.cols()
                )));
            }
            if t.iter().any(|x| x.abs() > bound) {
                return Err(Error::DimensionMismatch("term lies outside the window".into()));
            }
            if !c.is_zero() {
                kept.insert(t, c);
            }
        }
        let reliable = reliable.map(|r| r.min(window));
        Ok(PuiseuxSeries { nvars, v, lattice, terms: kept, window, reliable })
    }

    /// `c x^w` on the zero lattice.
    pub fn monomial(w: RatVector, c: Rat) -> Self {
        let n = w.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        PuiseuxSeries { nvars: n, v: w, lattice: IntMatrix::zeros(n, 0), terms, window: 0, reliable: Some(0) }
    }

    pub fn zero_like(f: &PuiseuxSeries) -> Self {
        PuiseuxSeries { terms: BTreeMap::new(), ..f.clone() }
    }

    /// A series whose reliable window is empty.
    pub fn empty_window(nvars: usize, v: RatVector, lattice: IntMatrix) -> Self {
        PuiseuxSeries { nvars, v, lattice, terms: BTreeMap::new(), window: 0, reliable: None }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn v(&self) -> &RatVector {
        &self.v
    }

    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.cols()
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    /// Radius of the box on which coefficients are trusted; `None` if empty.
    pub fn reliable(&self) -> Option<u32> {
        self.reliable
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Int>, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All points of `[-r, r]^k` in lexicographic order.
    pub fn box_points(k: usize, r: u32) -> Vec<Vec<Int>> {
        let r = i64::from(r);
        let mut out: Vec<Vec<Int>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * (2 * r as usize + 1));
            for p in &out {
                for x in -r..=r {
                    let mut q = p.clone();
                    q.push(Int::from(x));
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    /// Coefficient at lattice coordinates `t`, or `None` outside the
    /// reliable window.
    pub fn coeff_at(&self, t: &[Int]) -> Option<Rat> {
        let r = Int::from(self.reliable?);
        if t.iter().any(|x| x.abs() > r) {
            return None;
        }
        Some(self.terms.get(t).cloned().unwrap_or_else(Rat::zero))
    }

    /// `L t` in ambient coordinates.
    pub fn ambient(&self, t: &[Int]) -> Vec<Int> {
        self.lattice.mul_vec(t)
    }

    /// The exponent `v + L t`.
    pub fn exponent_at(&self, t: &[Int]) -> Vec<Rat> {
        self.v.0.iter().zip(self.ambient(t)).map(|(v, u)| v + rat_from_int(&u)).collect()
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.terms.is_empty()
    }

    /// Map from absolute exponent to coefficient over the reliable box,
    /// zeros included.
    pub fn exponent_table(&self) -> BTreeMap<Vec<Rat>, Rat> {
        let Some(r) = self.reliable else { return BTreeMap::new() };
        Self::box_points(self.rank(), r)
            .into_iter()
            .map(|t| {
                let c = self.terms.get(&t).cloned().unwrap_or_else(Rat::zero);
                (self.exponent_at(&t), c)
            })
            .collect()
    }

    /// True iff both series agree at every exponent both reliably know.
    /// Also returns the number of exponents compared.
    pub fn agrees_with(&self, other: &PuiseuxSeries) -> (bool, usize) {
        let mine = self.exponent_table();
        let theirs = other.exponent_table();
        let mut compared = 0;
        for (e, c) in &mine {
            if let Some(d) = theirs.get(e) {
                compared += 1;
                if c != d {
                    return (false, compared);
                }
            }
        }
        (true, compared)
    }

    /// `c_t` restricted to a smaller reliable box.
    pub fn restrict(&self, r: u32) -> PuiseuxSeries {
        let r = r.min(self.reliable.unwrap_or(0));
        let bound = Int::from(r);
        let terms = self.terms.iter().filter(|(t, _)| t.iter().all(|x| x.abs() <= bound)).map(|(t, c)| (t.clone(), c.clone())).collect();
        PuiseuxSeries { terms, window: r, reliable: self.reliable.map(|_| r), ..self.clone() }
    }
}

/// Fraction of reliable-window lattice points carrying nonzero
/// coefficients. A proxy for full support, not a density certificate.
pub fn density(f: &PuiseuxSeries) -> Rat {
    let Some(r) = f.reliable else { return Rat::zero() };
    let total = Int::from(2 * u64::from(r) + 1).pow(f.rank() as u32);
    Rat::new(Int::from(f.terms.len()), total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Derive,
    Antiderive,
}

/// `d^alpha f` termwise; base exponent moves to `v - alpha`.
pub fn derive(f: &PuiseuxSeries, alpha: &[u32]) -> Result<PuiseuxSeries> {
    check_len(f, alpha.len())?;
    let mut terms = BTreeMap::new();
    for (t, c) in &f.terms {
        let w = f.exponent_at(t);
        let k = ff_vec(&w, alpha);
        if !k.is_zero() {
            terms.insert(t.clone(), c * k);
        }
    }
    let v = f.v.0.iter().zip(alpha).map(|(x, &a)| x - rat_from_int(&Int::from(a))).collect();
    Ok(PuiseuxSeries { v: RatVector(v), terms, ..f.clone() })
}

/// The termwise preimage `g` with `d^alpha g = f`; base moves to `v + alpha`.
pub fn antiderive(f: &PuiseuxSeries, alpha: &[u32]) -> Result<PuiseuxSeries> {
    check_len(f, alpha.len())?;
    let v: Vec<Rat> = f.v.0.iter().zip(alpha).map(|(x, &a)| x + rat_from_int(&Int::from(a))).collect();
    let shifted = PuiseuxSeries { v: RatVector(v.clone()), terms: BTreeMap::new(), ..f.clone() };
    let mut terms = BTreeMap::new();
    for (t, c) in &f.terms {
        let w = shifted.exponent_at(t);
        let k = ff_vec(&w, alpha);
        if k.is_zero() {
            return Err(Error::ZeroFactorial(fmt_exponent(&w)));
        }
        terms.insert(t.clone(), c / k);
    }
    Ok(PuiseuxSeries { terms, ..shifted })
}

pub fn shift(f: &PuiseuxSeries, alpha: &[u32], direction: Direction) -> Result<PuiseuxSeries> {
    match direction {
        Direction::Derive => derive(f, alpha),
        Direction::Antiderive => antiderive(f, alpha),
    }
}

/// `d^{-gamma} f` for integer `gamma`: derive by the negative part, then
/// antiderive by the positive part.
pub fn shift_signed(f: &PuiseuxSeries, gamma: &[Int]) -> Result<PuiseuxSeries> {
    check_len(f, gamma.len())?;
    let pos: Vec<u32> = gamma.iter().map(|g| if g.is_positive() { to_u32(g) } else { 0 }).collect();
    let neg: Vec<u32> = gamma.iter().map(|g| if g.is_negative() { to_u32(&-g) } else { 0 }).collect();
    antiderive(&derive(f, &neg)?, &pos)
}

fn to_u32(x: &Int) -> u32 {
    u32::try_from(x).expect("shift fits in u32")
}

fn check_len(f: &PuiseuxSeries, n: usize) -> Result<()> {
    if n != f.nvars {
        return Err(Error::DimensionMismatch(format!("shift of length {n} on a series in {} variables", f.nvars)));
    }
    Ok(())
}

fn ff_vec(w: &[Rat], k: &[u32]) -> Rat {
    w.iter().zip(k).fold(Rat::one(), |acc, (x, &n)| acc * falling_factorial(x, n))
}

fn ff_int(w: &[Rat], k: &[Int]) -> Rat {
    w.iter().zip(k).fold(Rat::one(), |acc, (x, n)| acc * falling_factorial(x, to_u32(n)))
}

fn fmt_exponent(w: &[Rat]) -> String {
    format!("({})", w.iter().map(rat_to_string).collect::<Vec<_>>().join(","))
}

/// A Gamma-series together with how its exponent was chosen.
#[derive(Clone, Debug)]
pub struct GammaSeries {
    pub series: PuiseuxSeries,
    pub attempts: usize,
    pub warnings: Vec<String>,
}

/// The formal solution of `H_A(beta)` on `v + ker_Z(A)` with `c_0 = 1`,
/// truncated to lattice coordinates in `[-R, R]^k`.
///
/// When `v` is omitted it starts from [`solve_rational`] and is perturbed by
/// rational kernel combinations (seeded) until no recurrence factor vanishes
/// on the window.
pub fn gamma_series(a: &IntMatrix, beta: &RatVector, v: Option<&RatVector>, radius: u32) -> Result<GammaSeries> {
    gamma_series_seeded(a, beta, v, radius, 0)
}

pub fn gamma_series_seeded(
    a: &IntMatrix,
    beta: &RatVector,
    v: Option<&RatVector>,
    radius: u32,
    seed: u64,
) -> Result<GammaSeries> {
    let mut warnings = Vec::new();
    if let Ok(res) = is_nonresonant(a, beta) {
        if let Some(f) = res.violating_facet() {
            let sigma: Vec<String> = f.sigma.iter().map(|j| (j + 1).to_string()).collect();
            warnings.push(format!("beta is resonant at facet {{{}}}", sigma.join(",")));
        }
    }
    let l = kernel_basis(a)?;
    match v {
        Some(v) => {
            if v.len() != a.cols() || a.mul_rat_vec(&v.0) != beta.0 {
                return Err(Error::DimensionMismatch("supplied exponent does not satisfy A v = beta".into()));
            }
            let series = gamma_from_exponent(&l, v, radius)?;
            Ok(GammaSeries { series, attempts: 1, warnings })
        }
        None => {
            let v0 = solve_rational(a, beta)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut candidate = v0.clone();
            for attempt in 1..=DEFAULT_RETRIES {
                if factors_nonvanishing(&l, &candidate, radius) {
                    let series = gamma_from_exponent(&l, &candidate, radius)?;
                    return Ok(GammaSeries { series, attempts: attempt, warnings });
                }
                candidate = perturb(&v0, &l, &mut rng);
            }
            Err(Error::DenominatorVanished(format!(
                "no exponent with nonvanishing recurrence factors after {DEFAULT_RETRIES} attempts"
            )))
        }
    }
}

fn perturb(v0: &RatVector, l: &IntMatrix, rng: &mut ChaCha8Rng) -> RatVector {
    let mut v = v0.0.clone();
    for j in 0..l.cols() {
        let q: i64 = rng.gen_range(2..=12);
        let p: i64 = rng.gen_range(1..q);
        let r = rat(p, q);
        for (i, vi) in v.iter_mut().enumerate() {
            *vi += &r * rat_from_int(l.get(i, j));
        }
    }
    RatVector(v)
}

fn pos_neg(m: &[Int]) -> (Vec<Int>, Vec<Int>) {
    let pos = m.iter().map(|x| if x.is_positive() { x.clone() } else { Int::zero() }).collect();
    let neg = m.iter().map(|x| if x.is_negative() { -x } else { Int::zero() }).collect();
    (pos, neg)
}

fn within(t: &[Int], r: &Int) -> bool {
    t.iter().all(|x| x.abs() <= *r)
}

/// The two recurrence factors of the edge `t -> t + e_i`:
/// `c_{u+m} [v+u+m]_{m+} = c_u [v+u]_{m-}` with `m = L e_i`.
fn edge_factors(l: &IntMatrix, v: &RatVector, t: &[Int], i: usize) -> (Rat, Rat) {
    let m = l.column(i);
    let (mp, mn) = pos_neg(&m);
    let u = l.mul_vec(t);
    let w: Vec<Rat> = v.0.iter().zip(&u).map(|(a, b)| a + rat_from_int(b)).collect();
    let wm: Vec<Rat> = w.iter().zip(&m).map(|(a, b)| a + rat_from_int(b)).collect();
    (ff_int(&w, &mn), ff_int(&wm, &mp))
}

fn factors_nonvanishing(l: &IntMatrix, v: &RatVector, radius: u32) -> bool {
    let k = l.cols();
    let r = Int::from(radius);
    for t in PuiseuxSeries::box_points(k, radius) {
        for i in 0..k {
            let mut s = t.clone();
            s[i] += 1;
            if !within(&s, &r) {
                continue;
            }
            let (num, den) = edge_factors(l, v, &t, i);
            if num.is_zero() || den.is_zero() {
                return false;
            }
        }
    }
    true
}

fn gamma_from_exponent(l: &IntMatrix, v: &RatVector, radius: u32) -> Result<PuiseuxSeries> {
    let k = l.cols();
    if k == 0 {
        return Ok(PuiseuxSeries::monomial(v.clone(), Rat::one()));
    }
    let r = Int::from(radius);
    let origin = vec![Int::zero(); k];
    let mut coeffs: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
    coeffs.insert(origin.clone(), Rat::one());
    let mut queue = VecDeque::from([origin]);
    while let Some(t) = queue.pop_front() {
        let ct = coeffs[&t].clone();
        for i in 0..k {
            for step in [1i64, -1] {
                let mut s = t.clone();
                s[i] += step;
                if !within(&s, &r) || coeffs.contains_key(&s) {
                    continue;
                }
                // Orient the edge as lower -> upper along e_i.
                let (lower, upper_is_s) = if step == 1 { (&t, true) } else { (&s, false) };
                let (num, den) = edge_factors(l, v, lower, i);
                let value = if upper_is_s {
                    if den.is_zero() {
                        continue;
                    }
                    &ct * num / den
                } else {
                    if num.is_zero() {
                        continue;
                    }
                    &ct * den / num
                };
                coeffs.insert(s.clone(), value);
                queue.push_back(s);
            }
        }
    }
    let points = PuiseuxSeries::box_points(k, radius);
    if let Some(missing) = points.iter().find(|t| !coeffs.contains_key(*t)) {
        return Err(Error::DenominatorVanished(format!("lattice point {} unreachable", fmt_ints(missing))));
    }
    for t in &points {
        for i in 0..k {
            let mut s = t.clone();
            s[i] += 1;
            if !within(&s, &r) {
                continue;
            }
            let (num, den) = edge_factors(l, v, t, i);
            if &coeffs[&s] * den != &coeffs[t] * num {
                return Err(Error::CycleInconsistent(format!(
                    "edge {} -> {} fails the recurrence",
                    fmt_ints(t),
                    fmt_ints(&s)
                )));
            }
        }
    }
    PuiseuxSeries::new(v.clone(), l.clone(), coeffs, radius, Some(radius))
}

fn fmt_ints(t: &[Int]) -> String {
    format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// `sum_j coeffs_j k_j + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        AffineForm { coeffs, constant }
    }

    pub fn eval(&self, k: &[Int]) -> Rat {
        self.coeffs.iter().zip(k).fold(self.constant.clone(), |acc, (c, x)| acc + c * rat_from_int(x))
    }
}

/// `c_{k + e_i} / c_k = prod numerator(k) / prod denominator(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRatio {
    pub numerator: Vec<AffineForm>,
    pub denominator: Vec<AffineForm>,
}

impl StepRatio {
    fn parts(&self, k: &[Int]) -> (Rat, Rat) {
        let num = self.numerator.iter().fold(Rat::one(), |acc, f| acc * f.eval(k));
        let den = self.denominator.iter().fold(Rat::one(), |acc, f| acc * f.eval(k));
        (num, den)
    }
}

/// Power series `sum_{k in N^m} c_k s^k` with `c_0 = 1` from one step ratio
/// per variable. Every unit edge of `[0, R]^m` is verified, so the result is
/// independent of the filling path. Coefficients at negative coordinates are
/// zero and count as known.
pub fn recurrence_series(ratios: &[StepRatio], radius: u32) -> Result<PuiseuxSeries> {
    let m = ratios.len();
    for r in ratios {
        if r.numerator.iter().chain(&r.denominator).any(|f| f.coeffs.len() != m) {
            return Err(Error::DimensionMismatch("affine form length differs from variable count".into()));
        }
    }
    let rr = i64::from(radius);
    let mut points: Vec<Vec<Int>> = vec![Vec::new()];
    for _ in 0..m {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=rr).map(move |x| {
                    let mut q = p.clone();
                    q.push(Int::from(x));
                    q
                })
            })
            .collect();
    }
    let mut coeffs: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
    for k in &points {
        let Some(i) = k.iter().position(|x| !x.is_zero()) else {
            coeffs.insert(k.clone(), Rat::one());
            continue;
        };
        let mut prev = k.clone();
        prev[i] -= 1;
        let (num, den) = ratios[i].parts(&prev);
        if den.is_zero() {
            return Err(Error::DenominatorVanished(format!("step {} from {}", i + 1, fmt_ints(&prev))));
        }
        let value = &coeffs[&prev] * num / den;
        coeffs.insert(k.clone(), value);
    }
    let r = Int::from(radius);
    for k in &points {
        for (i, ratio) in ratios.iter().enumerate() {
            let mut s = k.clone();
            s[i] += 1;
            if s[i] > r {
                continue;
            }
            let (num, den) = ratio.parts(k);
            if &coeffs[&s] * den != &coeffs[k] * num {
                return Err(Error::IncompatibleRecurrences(format!(
                    "step {} from {} disagrees with the filled value",
                    i + 1,
                    fmt_ints(k)
                )));
            }
        }
    }
    PuiseuxSeries::new(RatVector::zeros(m), IntMatrix::identity(m), coeffs, radius, Some(radius))
}

/// `c s^w -> c x^{v' + B w}`: the base becomes `v' + B v_g` and the lattice
/// `B L_g`, keeping lattice coordinates.
pub fn monomial_substitution(g: &PuiseuxSeries, b: &IntMatrix, v_prime: &RatVector) -> Result<PuiseuxSeries> {
    if b.cols() != g.nvars || b.rows() != v_prime.len() {
        return Err(Error::DimensionMismatch(format!(
            "B is {}x{}, series has {} variables, v' has length {}",
            b.rows(),
            b.cols(),
            g.nvars,
            v_prime.len()
        )));
    }
    let lattice = b.mul(&g.lattice)?;
    if lattice.rank() != lattice.cols() {
        return Err(Error::LatticeCollision("B is not injective on the series lattice".into()));
    }
    let bv = b.mul_rat_vec(&g.v.0);
    let v = v_prime.0.iter().zip(bv).map(|(a, b)| a + b).collect();
    PuiseuxSeries::new(RatVector(v), lattice, g.terms.clone(), g.window, g.reliable)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowVerdict {
    ZeroOnWindow { reliable: u32 },
    Nonzero { exponent: Vec<Rat>, coeff: Rat },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Copy)]
pub enum Overall {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct AnnihilationReport {
    pub verdicts: Vec<WindowVerdict>,
}

impl AnnihilationReport {
    pub fn overall(&self) -> Overall {
        if self.verdicts.iter().any(|v| matches!(v, WindowVerdict::Nonzero { .. })) {
            Overall::Fail
        } else if self.verdicts.iter().any(|v| matches!(v, WindowVerdict::Inconclusive)) {
            Overall::Inconclusive
        } else {
            Overall::Pass
        }
    }

    pub fn all_zero(&self) -> bool {
        self.overall() == Overall::Pass
    }
}

/// Applies each generator (split by shift class) and reports the first
/// nonzero image coefficient, if any.
pub fn annihilation_check(gens: &[WeylOperator], f: &PuiseuxSeries) -> Result<AnnihilationReport> {
    let mut verdicts = Vec::with_capacity(gens.len());
    for p in gens {
        verdicts.push(check_one(p, f)?);
    }
    Ok(AnnihilationReport { verdicts })
}

fn check_one(p: &WeylOperator, f: &PuiseuxSeries) -> Result<WindowVerdict> {
    if f.reliable.is_none() {
        return Ok(WindowVerdict::Inconclusive);
    }
    let mut min_reliable: Option<u32> = None;
    for part in split_by_shift_class(p, &f.lattice) {
        let image = apply_to_series(&part, f)?;
        let Some(r) = image.reliable else { return Ok(WindowVerdict::Inconclusive) };
        if let Some((t, c)) = image.terms.iter().next() {
            return Ok(WindowVerdict::Nonzero { exponent: image.exponent_at(t), coeff: c.clone() });
        }
        min_reliable = Some(min_reliable.map_or(r, |m| m.min(r)));
    }
    Ok(WindowVerdict::ZeroOnWindow { reliable: min_reliable.unwrap_or_else(|| f.reliable.unwrap_or(0)) })
}

/// One basis element `F_{u,f}` of a toral component.
#[derive(Clone, Debug)]
pub struct ToralSolution {
    pub representative: Vec<i64>,
    pub series: PuiseuxSeries,
    pub warnings: Vec<String>,
}

/// The bounded-subgraph basis of the solutions of a toral component, one
/// element per bounded representative `u` found inside `cap`:
/// `x^u sum_w c_w x^{w-u} d_J^{-N v_w} f` with `f` the Gamma-series of
/// `A_J` at `beta - A_Jbar u`.
pub fn toral_solution_basis(
    a: &IntMatrix,
    b: &IntMatrix,
    dec: &BlockDecomposition,
    beta: &RatVector,
    radius: u32,
    cap: u32,
    seed: u64,
) -> Result<Vec<ToralSolution>> {
    if dec.class != ComponentClass::Toral {
        return Err(Error::NotToral);
    }
    let index = saturation_index(&dec.b_j);
    if !index.is_one() {
        return Err(Error::UnsupportedCharacter(index.to_string()));
    }
    if a.cols() != b.rows() || beta.len() != a.rows() {
        return Err(Error::DimensionMismatch("A, B and beta do not fit together".into()));
    }
    let n = b.rows();
    let a_j = a.select_columns(&dec.j);
    let a_jbar = a.select_columns(&dec.jbar);
    let reps = bounded_representatives(&dec.m, cap);
    let mut out = Vec::new();
    for comp in reps.components.iter().filter(|c| c.is_bounded()) {
        let u_int: Vec<Int> = comp.representative.iter().map(|&x| Int::from(x)).collect();
        let shift = a_jbar.mul_vec(&u_int);
        let beta_u = RatVector(beta.0.iter().zip(&shift).map(|(x, s)| x - rat_from_int(s)).collect());
        let gamma = gamma_series_seeded(&a_j, &beta_u, None, radius, seed)?;
        let f = gamma.series;
        let series = combine(n, dec, comp, &f, radius)?;
        out.push(ToralSolution { representative: comp.representative.clone(), series, warnings: gamma.warnings });
    }
    Ok(out)
}

fn combine(
    n: usize,
    dec: &BlockDecomposition,
    comp: &MGraphComponent,
    f: &PuiseuxSeries,
    radius: u32,
) -> Result<PuiseuxSeries> {
    let g_u = lattice_polynomial_solutions(&dec.m, comp)?;
    let p = dec.p_cols.len();
    let k = f.rank();
    // A rank-zero factor is an exact monomial.
    let radius = if k == 0 { radius } else { radius.min(f.reliable.unwrap_or(0)) };
    let bound = Int::from(radius);

    let mut base = vec![Rat::zero(); n];
    for (i, &row) in dec.jbar.iter().enumerate() {
        base[row] = rat_from_int(&Int::from(comp.representative[i]));
    }
    for (i, &row) in dec.j.iter().enumerate() {
        base[row] = f.v.0[i].clone();
    }
    let mut lattice = IntMatrix::zeros(n, p + k);
    for c in 0..p {
        for (i, &row) in dec.jbar.iter().enumerate() {
            lattice.set(row, c, dec.m.get(i, c).clone());
        }
        for (i, &row) in dec.j.iter().enumerate() {
            lattice.set(row, c, dec.n.get(i, c).clone());
        }
    }
    for c in 0..k {
        for (i, &row) in dec.j.iter().enumerate() {
            lattice.set(row, p + c, f.lattice.get(i, c).clone());
        }
    }
    if lattice.rank() != p + k {
        return Err(Error::LatticeCollision("subgraph moves and Gamma-series lattice overlap".into()));
    }

    let u = &comp.representative;
    let mut terms = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (w, c_w) in g_u.terms() {
        let diff: Vec<Int> = w.iter().zip(u).map(|(&a, &b)| Int::from(a) - Int::from(b)).collect();
        let v_w = if diff.iter().all(Zero::is_zero) {
            vec![Int::zero(); p]
        } else {
            lattice_coordinates(&dec.m, &diff)
                .ok_or_else(|| Error::Inconsistent("subgraph vertex off the move lattice".into()))?
        };
        if !within(&v_w, &bound) || !seen.insert(v_w.clone()) {
            continue;
        }
        let nv = dec.n.mul_vec(&v_w);
        let g_w = shift_signed(f, &nv)?;
        for (t, c) in g_w.terms() {
            let mut key = v_w.clone();
            key.extend(t.iter().cloned());
            terms.insert(key, c_w * c);
        }
    }
    PuiseuxSeries::new(RatVector(base), lattice, terms, radius, Some(radius))
}
