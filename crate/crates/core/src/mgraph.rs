//! Connected components of `N^q` under moves by `±` the columns of `M`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Int, IntMatrix, Rat};
use crate::poly::{falling_factorial, Poly};

pub type Point = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    /// `from` and `to` lie in the component with `to - from >= 0`, nonzero.
    UnboundedCertified { from: Point, to: Point },
    CapExceeded(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MGraphComponent {
    /// Lexicographically smallest vertex found.
    pub representative: Point,
    /// Vertices found inside the cap box, sorted. Exact when bounded.
    pub vertices: Vec<Point>,
    pub verdict: Verdict,
}

impl MGraphComponent {
    pub fn is_bounded(&self) -> bool {
        self.verdict == Verdict::Bounded
    }

    pub fn is_resolved(&self) -> bool {
        !matches!(self.verdict, Verdict::CapExceeded(_))
    }
}

fn moves(m: &IntMatrix) -> Vec<Point> {
    let mut out = Vec::new();
    for col in m.columns() {
        if col.iter().all(Zero::is_zero) {
            continue;
        }
        let c: Point = col.iter().map(|x| i64::try_from(x).expect("move fits in i64")).collect();
        out.push(c.iter().map(|x| -x).collect());
        out.push(c);
    }
    out
}

fn comparable_pair(vertices: &[Point]) -> Option<(Point, Point)> {
    for a in vertices {
        for b in vertices {
            if a != b && a.iter().zip(b).all(|(x, y)| x <= y) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// Breadth-first closure of `u` inside the box `[0, cap]^q`.
pub fn component(m: &IntMatrix, u: &[i64], cap: u32) -> MGraphComponent {
    let cap_i = i64::from(cap);
    let mv = moves(m);
    let mut seen: BTreeSet<Point> = BTreeSet::from([u.to_vec()]);
    let mut queue = VecDeque::from([u.to_vec()]);
    let mut escaped = false;
    while let Some(p) = queue.pop_front() {
        for d in &mv {
            let next: Point = p.iter().zip(d).map(|(a, b)| a + b).collect();
            if next.iter().any(|&x| x < 0) {
                continue;
            }
            if next.iter().any(|&x| x > cap_i) {
                escaped = true;
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let vertices: Vec<Point> = seen.into_iter().collect();
    let verdict = match comparable_pair(&vertices) {
        Some((from, to)) => Verdict::UnboundedCertified { from, to },
        None if escaped => Verdict::CapExceeded(cap),
        None => Verdict::Bounded,
    };
    MGraphComponent { representative: vertices[0].clone(), vertices, verdict }
}

#[derive(Clone, Debug)]
pub struct Representatives {
    /// Every component meeting the cap box, in order of representative.
    pub components: Vec<MGraphComponent>,
    /// True iff no component was left unresolved.
    pub complete: bool,
}

impl Representatives {
    pub fn bounded(&self) -> impl Iterator<Item = &MGraphComponent> {
        self.components.iter().filter(|c| c.is_bounded())
    }
}

/// All points of `[0, cap]^q` in lexicographic order.
pub fn box_points(q: usize, cap: u32) -> Vec<Point> {
    let mut out: Vec<Point> = vec![Vec::new()];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=i64::from(cap)).map(move |x| {
                    let mut r = p.clone();
                    r.push(x);
                    r
                })
            })
            .collect();
    }
    out
}

/// Components of every point in the cap box, each discovered once.
pub fn bounded_representatives(m: &IntMatrix, cap: u32) -> Representatives {
    let mut assigned: BTreeSet<Point> = BTreeSet::new();
    let mut components = Vec::new();
    for p in box_points(m.rows(), cap) {
        if assigned.contains(&p) {
            continue;
        }
        let c = component(m, &p, cap);
        assigned.extend(c.vertices.iter().cloned());
        components.push(c);
    }
    let complete = components.iter().all(MGraphComponent::is_resolved);
    Representatives { components, complete }
}

/// Minimal points of the box whose component is certified unbounded.
pub fn unbounded_monomials(m: &IntMatrix, cap: u32) -> Vec<Point> {
    let reps = bounded_representatives(m, cap);
    let mut pts: Vec<Point> = reps
        .components
        .iter()
        .filter(|c| matches!(c.verdict, Verdict::UnboundedCertified { .. }))
        .flat_map(|c| c.vertices.iter().cloned())
        .collect();
    pts.sort_by_key(|p| (p.iter().sum::<i64>(), p.clone()));
    let mut minimal: Vec<Point> = Vec::new();
    for p in pts {
        if !minimal.iter().any(|q| q.iter().zip(&p).all(|(a, b)| a <= b)) {
            minimal.push(p);
        }
    }
    minimal.sort();
    minimal
}

fn ff_point(w: &[i64], k: &[i64]) -> Rat {
    w.iter().zip(k).fold(Rat::from_integer(Int::from(1)), |acc, (&x, &n)| {
        acc * falling_factorial(&Rat::from_integer(Int::from(x)), n as u32)
    })
}

/// `G_u = sum_{w in Gamma(u)} c_w x^w` with `c_u = 1`, annihilated by
/// `d^{m+} - d^{m-}` for every column `m` of `M`.
///
/// Coefficients travel along a spanning tree via
/// `c_{y+m} [y+m]_{m+} = c_y [y]_{m-}`; every edge is then re-checked.
pub fn lattice_polynomial_solutions(m: &IntMatrix, comp: &MGraphComponent) -> Result<Poly> {
    if !comp.is_bounded() {
        return Err(Error::Unbounded);
    }
    let q = m.rows();
    let mv = moves(m);
    let members: BTreeSet<&Point> = comp.vertices.iter().collect();
    let split = |d: &Point| -> (Point, Point) {
        (d.iter().map(|&x| x.max(0)).collect(), d.iter().map(|&x| (-x).max(0)).collect())
    };
    let mut coeffs: BTreeMap<Point, Rat> = BTreeMap::new();
    coeffs.insert(comp.representative.clone(), Rat::from_integer(Int::from(1)));
    let mut queue = VecDeque::from([comp.representative.clone()]);
    while let Some(y) = queue.pop_front() {
        for d in &mv {
            let next: Point = y.iter().zip(d).map(|(a, b)| a + b).collect();
            if !members.contains(&next) || coeffs.contains_key(&next) {
                continue;
            }
            let (dp, dn) = split(d);
            let value = &coeffs[&y] * ff_point(&y, &dn) / ff_point(&next, &dp);
            coeffs.insert(next.clone(), value);
            queue.push_back(next);
        }
    }
    if coeffs.len() != comp.vertices.len() {
        return Err(Error::Inconsistent("component is not connected".into()));
    }
    for y in &comp.vertices {
        for d in &mv {
            let next: Point = y.iter().zip(d).map(|(a, b)| a + b).collect();
            if !members.contains(&next) {
                continue;
            }
            let (dp, dn) = split(d);
            if &coeffs[&next] * ff_point(&next, &dp) != &coeffs[y] * ff_point(y, &dn) {
                return Err(Error::Inconsistent(format!("edge {y:?} -> {next:?}")));
            }
        }
    }
    let mut g = Poly::zero(q);
    for (w, c) in coeffs {
        g.add_term(w.iter().map(|&x| x as u32).collect(), c);
    }
    Ok(g)
}

/// The binomials `d^{m+} - d^{m-}` of the columns of `M`.
pub fn lattice_ideal_generators(m: &IntMatrix) -> Vec<Poly> {
    m.columns()
        .iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .map(|c| {
            let plus = c.iter().map(|x| if x > &Int::zero() { u32::try_from(x).unwrap() } else { 0 }).collect();
            let minus = c.iter().map(|x| if x < &Int::zero() { u32::try_from(-x).unwrap() } else { 0 }).collect();
            Poly::binomial(plus, minus)
        })
        .collect()
}

/// Applies constant-coefficient operators to a polynomial and reports
/// whether every image vanishes.
pub fn annihilates(ops: &[Poly], g: &Poly) -> bool {
    ops.iter().all(|op| {
        let mut acc = Poly::zero(g.nvars());
        for (alpha, c) in op.terms() {
            acc = acc.add(&g.derivative(alpha).scale(c));
        }
        acc.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn swap() -> IntMatrix {
        IntMatrix::from_i64(&[&[1, -1], &[-1, 1]])
    }

    fn toral() -> IntMatrix {
        IntMatrix::from_i64(&[&[-2, 1], &[1, -2]])
    }

    #[test]
    fn swap_components() {
        let c = component(&swap(), &[0, 0], 10);
        assert_eq!(c.verdict, Verdict::Bounded);
        assert_eq!(c.vertices, vec![vec![0, 0]]);
        let c = component(&swap(), &[1, 0], 10);
        assert_eq!(c.vertices, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(c.representative, vec![0, 1]);
    }

    #[test]
    fn toral_origin_isolated() {
        let c = component(&toral(), &[0, 0], 12);
        assert_eq!(c.verdict, Verdict::Bounded);
        assert_eq!(c.vertices, vec![vec![0, 0]]);
    }

    #[test]
    fn toral_unit_vector_unbounded() {
        let c = component(&toral(), &[1, 0], 12);
        assert!(matches!(c.verdict, Verdict::UnboundedCertified { .. }));
    }

    #[test]
    fn swap_representatives_incomplete() {
        let reps = bounded_representatives(&swap(), 5);
        let bounded: Vec<Point> = reps.bounded().map(|c| c.representative.clone()).collect();
        assert_eq!(bounded, (0..=5).map(|s| vec![0, s]).collect::<Vec<_>>());
        assert!(!reps.complete);
    }

    #[test]
    fn empty_matrix_single_component() {
        let m = IntMatrix::zeros(0, 0);
        let reps = bounded_representatives(&m, 4);
        assert_eq!(reps.components.len(), 1);
        assert!(reps.components[0].is_bounded());
        let g = lattice_polynomial_solutions(&m, &reps.components[0]).unwrap();
        assert_eq!(g, Poly::one(0));
    }

    #[test]
    fn swap_polynomial() {
        let c = component(&swap(), &[1, 0], 6);
        let g = lattice_polynomial_solutions(&swap(), &c).unwrap();
        assert_eq!(g, Poly::var(2, 0).add(&Poly::var(2, 1)));
        assert!(annihilates(&lattice_ideal_generators(&swap()), &g));
    }

    #[test]
    fn factorial_coefficients() {
        let c = component(&swap(), &[3, 0], 6);
        let g = lattice_polynomial_solutions(&swap(), &c).unwrap();
        // c_w = u! / w!
        assert_eq!(g.coeff(&[3, 0]), rat(1, 1));
        assert_eq!(g.coeff(&[2, 1]), rat(3, 1));
        assert_eq!(g.coeff(&[1, 2]), rat(3, 1));
        assert_eq!(g.coeff(&[0, 3]), rat(1, 1));
    }

    #[test]
    fn unbounded_has_no_polynomial() {
        let c = component(&toral(), &[1, 0], 12);
        assert_eq!(lattice_polynomial_solutions(&toral(), &c), Err(Error::Unbounded));
    }

    #[test]
    fn toral_monomials() {
        assert_eq!(unbounded_monomials(&toral(), 10), vec![vec![0, 1], vec![1, 0]]);
    }
}
