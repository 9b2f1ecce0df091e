//! Builders for toric and lattice basis ideals, A-hypergeometric and Horn
//! systems, block decompositions of `B` and toral component ideals.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    complement_matrix, integer_kernel, saturation_index, span_mixedness, Int, IntMatrix, RatVector,
};
use crate::groebner::{groebner_comm, saturate, CommIdeal, TermOrder};
use crate::mgraph::unbounded_monomials;
use crate::poly::{Exponent, Poly};
use crate::weyl::{euler_generators, WeylOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    AHypergeometric,
    Horn,
    ToralComponent,
}

impl SystemKind {
    pub fn name(&self) -> &'static str {
        match self {
            SystemKind::AHypergeometric => "A_HYPERGEOMETRIC",
            SystemKind::Horn => "HORN",
            SystemKind::ToralComponent => "TORAL_COMPONENT",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SystemSpec {
    pub kind: SystemKind,
    pub a: IntMatrix,
    pub b: Option<IntMatrix>,
    pub beta: RatVector,
    pub binomials: Vec<WeylOperator>,
    pub monomials: Vec<WeylOperator>,
    pub euler: Vec<WeylOperator>,
    pub notes: Vec<String>,
}

impl SystemSpec {
    /// Binomials, then monomials, then Euler operators.
    pub fn generators(&self) -> Vec<WeylOperator> {
        self.binomials.iter().chain(&self.monomials).chain(&self.euler).cloned().collect()
    }
}

fn check_columns(m: &IntMatrix) -> Result<()> {
    match m.zero_column() {
        Some(j) => Err(Error::ZeroColumn(j + 1)),
        None => Ok(()),
    }
}

fn split_signs(col: &[Int]) -> (Exponent, Exponent) {
    let plus = col.iter().map(|x| if x.is_positive() { u32::try_from(x).expect("small exponent") } else { 0 }).collect();
    let minus = col.iter().map(|x| if x.is_negative() { u32::try_from(-x).expect("small exponent") } else { 0 }).collect();
    (plus, minus)
}

fn binomial_ideal(gens: &IntMatrix) -> CommIdeal {
    let polys = gens
        .columns()
        .iter()
        .map(|c| {
            let (p, m) = split_signs(c);
            Poly::binomial(p, m)
        })
        .collect();
    CommIdeal::new(gens.rows(), polys)
}

/// `I(B) = <d^{u+} - d^{u-} : u a column of B>`.
pub fn lattice_basis_ideal(b: &IntMatrix) -> Result<CommIdeal> {
    check_columns(b)?;
    Ok(binomial_ideal(b))
}

/// `I_A` as its reduced degrevlex Gröbner basis, obtained by saturating the
/// lattice basis ideal of `ker_Z(A)` one variable at a time.
pub fn toric_ideal(a: &IntMatrix) -> Result<CommIdeal> {
    check_columns(a)?;
    let n = a.cols();
    let l = integer_kernel(a);
    if l.cols() == 0 {
        return Ok(CommIdeal { nvars: n, generators: Vec::new(), order: TermOrder::Degrevlex, basis: Some(Vec::new()) });
    }
    let mut ideal = binomial_ideal(&l);
    for i in 0..n {
        ideal = saturate(&ideal, &Poly::var(n, i));
        ideal = CommIdeal::new(n, ideal.basis().to_vec());
    }
    let gb = groebner_comm(&ideal, TermOrder::Degrevlex);
    Ok(CommIdeal { generators: gb.basis().to_vec(), ..gb })
}

fn d_operators(ideal: &CommIdeal) -> Vec<WeylOperator> {
    let polys = if ideal.basis.is_some() { ideal.basis() } else { &ideal.generators[..] };
    polys.iter().map(WeylOperator::from_d_poly).collect()
}

/// `H_A(beta) = I_A + <E - beta>`.
pub fn hypergeometric_system(a: &IntMatrix, beta: &RatVector) -> Result<SystemSpec> {
    let euler = euler_generators(a, beta)?;
    let toric = toric_ideal(a)?;
    Ok(SystemSpec {
        kind: SystemKind::AHypergeometric,
        a: a.clone(),
        b: None,
        beta: beta.clone(),
        binomials: d_operators(&toric),
        monomials: Vec::new(),
        euler,
        notes: vec!["binomials: reduced degrevlex basis of the toric ideal".into()],
    })
}

/// `H(B, beta) = I(B) + <E - beta>`. Without `a`, the saturated complement
/// of `B` is used.
pub fn horn_system(b: &IntMatrix, beta: &RatVector, a: Option<&IntMatrix>) -> Result<SystemSpec> {
    if !span_mixedness(b).is_mixed() {
        return Err(Error::NotMixed);
    }
    let mut notes = Vec::new();
    let a = match a {
        Some(a) => {
            if a.cols() != b.rows() || !a.mul(b)?.is_zero() {
                return Err(Error::DimensionMismatch("supplied A does not annihilate B".into()));
            }
            a.clone()
        }
        None => {
            notes.push("A: saturated complement of B".into());
            complement_matrix(b)?
        }
    };
    let euler = euler_generators(&a, beta)?;
    let ib = lattice_basis_ideal(b)?;
    Ok(SystemSpec {
        kind: SystemKind::Horn,
        a,
        b: Some(b.clone()),
        beta: beta.clone(),
        binomials: d_operators(&ib),
        monomials: Vec::new(),
        euler,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentClass {
    Toral,
    Andean,
}

impl ComponentClass {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentClass::Toral => "TORAL",
            ComponentClass::Andean => "ANDEAN",
        }
    }
}

/// Rows `jbar` and columns `p_cols` of `B` carrying the mixed block `M`,
/// with `B[jbar, rest] = 0`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub jbar: Vec<usize>,
    pub j: Vec<usize>,
    pub p_cols: Vec<usize>,
    pub rest_cols: Vec<usize>,
    pub m: IntMatrix,
    pub n: IntMatrix,
    pub b_j: IntMatrix,
    pub class: ComponentClass,
    /// Irreducibility of `M` is never checked.
    pub irreducibility_verified: bool,
}

impl BlockDecomposition {
    /// Row order `J` then `Jbar`, column order `P` then the rest.
    pub fn permuted(&self, b: &IntMatrix) -> IntMatrix {
        let rows: Vec<usize> = self.j.iter().chain(&self.jbar).copied().collect();
        let cols: Vec<usize> = self.p_cols.iter().chain(&self.rest_cols).copied().collect();
        b.select_rows(&rows).select_columns(&cols)
    }

    pub fn q(&self) -> usize {
        self.jbar.len()
    }

    pub fn p(&self) -> usize {
        self.p_cols.len()
    }
}

fn is_mixed_column(c: &[Int]) -> bool {
    c.iter().any(Signed::is_positive) && c.iter().any(Signed::is_negative)
}

/// Every row subset `Jbar` whose nonzero columns form a `q x p` block `M`
/// with `q <= p` and every column of `M` mixed; sorted by `Jbar`.
pub fn block_decompositions(b: &IntMatrix) -> Vec<BlockDecomposition> {
    let (n, m) = (b.rows(), b.cols());
    let mut out = Vec::new();
    for q in 0..=n {
        if q == 1 {
            continue;
        }
        for jbar in (0..n).combinations(q) {
            let p_cols: Vec<usize> = (0..m).filter(|&c| jbar.iter().any(|&r| !b.get(r, c).is_zero())).collect();
            if p_cols.len() < q {
                continue;
            }
            let mblock = b.select_rows(&jbar).select_columns(&p_cols);
            if !mblock.columns().iter().all(|c| is_mixed_column(c)) {
                continue;
            }
            let j: Vec<usize> = (0..n).filter(|r| !jbar.contains(r)).collect();
            let rest_cols: Vec<usize> = (0..m).filter(|c| !p_cols.contains(c)).collect();
            let class = if q == p_cols.len() && mblock.det().map(|d| !d.is_zero()).unwrap_or(false) {
                ComponentClass::Toral
            } else {
                ComponentClass::Andean
            };
            out.push(BlockDecomposition {
                n: b.select_rows(&j).select_columns(&p_cols),
                b_j: b.select_rows(&j).select_columns(&rest_cols),
                m: mblock,
                jbar,
                j,
                p_cols,
                rest_cols,
                class,
                irreducibility_verified: false,
            });
        }
    }
    out.sort_by(|x, y| x.jbar.cmp(&y.jbar));
    out
}

fn embed(p: &Poly, idx: &[usize], n: usize) -> Poly {
    Poly::from_terms(
        n,
        p.terms().map(|(e, c)| {
            let mut full = vec![0; n];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = e[k];
            }
            (full, c.clone())
        }),
    )
}

/// `C = I(B) + I_{A_J}(d_J) + <d_Jbar^u : Gamma(u) certified unbounded,
/// u in [0, cap]^q> + <E - beta>` for the trivial character.
pub fn toral_component_ideal(
    a: &IntMatrix,
    b: &IntMatrix,
    dec: &BlockDecomposition,
    beta: &RatVector,
    monomial_cap: u32,
) -> Result<SystemSpec> {
    if dec.class != ComponentClass::Toral {
        return Err(Error::NotToral);
    }
    let index = saturation_index(&dec.b_j);
    if !index.is_one() {
        return Err(Error::UnsupportedCharacter(index.to_string()));
    }
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch("A and B do not fit together".into()));
    }
    let n = b.rows();
    let mut binomials = d_operators(&lattice_basis_ideal(b)?);
    let a_j = a.select_columns(&dec.j);
    for g in toric_ideal(&a_j)?.basis() {
        let op = WeylOperator::from_d_poly(&embed(g, &dec.j, n));
        if !binomials.contains(&op) {
            binomials.push(op);
        }
    }
    let mut notes = Vec::new();
    let mut monomials = Vec::new();
    if dec.q() > 0 {
        let pts = unbounded_monomials(&dec.m, monomial_cap);
        if pts.is_empty() {
            notes.push(format!("no unbounded subgraph certified up to cap {monomial_cap}"));
        }
        for u in pts {
            let mut nu = vec![0u32; n];
            for (k, &row) in dec.jbar.iter().enumerate() {
                nu[row] = u[k] as u32;
            }
            monomials.push(WeylOperator::d_monomial(nu));
        }
    }
    notes.push("irreducibility of M not verified".into());
    Ok(SystemSpec {
        kind: SystemKind::ToralComponent,
        a: a.clone(),
        b: Some(b.clone()),
        beta: beta.clone(),
        binomials,
        monomials,
        euler: euler_generators(a, beta)?,
        notes,
    })
}
