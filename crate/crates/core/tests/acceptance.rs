//! Acceptance suite. Prints one line per criterion and fails the run if any
//! criterion fails or exceeds its time limit.

mod common;

use std::time::{Duration, Instant};

use dhyper::exact::{IntMatrix, Rat, RatVector};
use dhyper::example;
use dhyper::groebner::{groebner_comm, groebner_weyl, BasisStatus, CommIdeal, MembershipVerdict, TermOrder};
use dhyper::mgraph::{annihilates, bounded_representatives, box_points, component, lattice_ideal_generators, lattice_polynomial_solutions, Verdict};
use dhyper::poly::Poly;
use dhyper::series::{
    annihilation_check, antiderive, density, derive, gamma_series_seeded, monomial_substitution, recurrence_series,
    toral_solution_basis, Overall, WindowVerdict,
};
use dhyper::systems::{block_decompositions, horn_system, hypergeometric_system, toral_component_ideal, toric_ideal, ComponentClass};
use dhyper::weyl::{theta_form, ThetaPoly, WeylOperator};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{act, gamma_closed_form, r, random_nonresonant_beta, random_operator, random_poly};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn erdelyi_beta() -> RatVector {
    example::beta(&r(1, 2), &r(1, 3))
}

fn c1_toric_regression() -> Outcome {
    let ideal = toric_ideal(&example::matrix_a()).map_err(|e| e.to_string())?;
    let expected = [
        Poly::binomial(vec![1, 0, 1, 0], vec![0, 2, 0, 0]),
        Poly::binomial(vec![0, 1, 0, 1], vec![0, 0, 2, 0]),
        Poly::binomial(vec![1, 0, 0, 1], vec![0, 1, 1, 0]),
    ];
    let basis = ideal.basis();
    ensure(basis.len() == 3, || format!("basis has {} elements", basis.len()))?;
    for e in &expected {
        let neg = e.scale(&-Rat::one());
        ensure(basis.iter().any(|g| g == e || g == &neg), || format!("missing {e}"))?;
    }
    Ok("3 binomials, exact".into())
}

fn c2_strict_containment() -> Outcome {
    let beta = erdelyi_beta();
    let (a, b) = (example::matrix_a(), example::matrix_b());
    let p = example::extra_operator();
    let ahyp = hypergeometric_system(&a, &beta).map_err(|e| e.to_string())?.generators();
    let horn = horn_system(&b, &beta, Some(&a)).map_err(|e| e.to_string())?.generators();
    let gb_a = groebner_weyl(&ahyp, TermOrder::Degrevlex, 10).map_err(|e| e.to_string())?;
    let cert_a = gb_a.membership(&p).map_err(|e| e.to_string())?;
    ensure(cert_a.verdict == MembershipVerdict::Member, || "not a member of H_A".into())?;
    ensure(cert_a.replay(&ahyp, &p), || "H_A cofactors do not replay".into())?;
    let gb_h = groebner_weyl(&horn, TermOrder::Degrevlex, 10).map_err(|e| e.to_string())?;
    ensure(gb_h.status == BasisStatus::Complete, || "Horn basis capped".into())?;
    ensure(gb_h.verify_buchberger(), || "Horn basis fails Buchberger".into())?;
    let cert_h = gb_h.membership(&p).map_err(|e| e.to_string())?;
    ensure(cert_h.verdict == MembershipVerdict::NonMember, || format!("Horn verdict {}", cert_h.verdict.name()))?;
    ensure(!cert_h.normal_form.is_zero(), || "zero normal form".into())?;
    ensure(cert_h.replay(&horn, &p), || "Horn certificate does not replay".into())?;
    Ok(format!("member of H_A; nonmember of Horn, complete basis of {}, normal form {}", gb_h.basis.len(), cert_h.normal_form))
}

fn c3_monomial_dichotomy() -> Outcome {
    let (a_par, a_prime) = (r(1, 2), r(1, 3));
    let mono = example::puiseux_monomial(&a_par, &a_prime);
    let w = mono.v().0.clone();
    ensure(w == vec![r(-11, 18), r(0, 1), r(0, 1), r(-5, 9)], || format!("monomial exponent {w:?}"))?;
    let horn = horn_system(&example::matrix_b(), &erdelyi_beta(), Some(&example::matrix_a())).map_err(|e| e.to_string())?;
    let gens = horn.generators();
    ensure(gens.len() == 4, || format!("{} Horn generators", gens.len()))?;
    let rep = annihilation_check(&gens, &mono).map_err(|e| e.to_string())?;
    ensure(rep.overall() == Overall::Pass, || "a Horn generator does not annihilate".into())?;
    let p = example::extra_operator();
    let rep = annihilation_check(std::slice::from_ref(&p), &mono).map_err(|e| e.to_string())?;
    // d1 d4 x^w = w1 w4 x^{w - e1 - e4}; d2 d3 x^w vanishes since w2 = w3 = 0.
    let oracle = &w[0] * &w[3];
    match &rep.verdicts[0] {
        WindowVerdict::Nonzero { coeff, .. } => {
            ensure(coeff == &oracle && oracle == r(55, 162), || format!("witness {coeff}, oracle {oracle}"))?;
            Ok(format!("annihilated by 4 Horn generators; witness {coeff}"))
        }
        other => Err(format!("extra operator verdict {other:?}")),
    }
}

fn c4_pipeline() -> Outcome {
    let (a_par, a_prime) = (r(1, 2), r(1, 3));
    let g = recurrence_series(&example::ratios(&a_par, &a_prime), 8).map_err(|e| e.to_string())?;
    let f = monomial_substitution(&g, &example::matrix_b(), &example::v_prime(&a_par, &a_prime)).map_err(|e| e.to_string())?;
    let gens = hypergeometric_system(&example::matrix_a(), &erdelyi_beta()).map_err(|e| e.to_string())?.generators();
    ensure(gens.len() == 5, || format!("{} generators", gens.len()))?;
    let rep = annihilation_check(&gens, &f).map_err(|e| e.to_string())?;
    let mut min_window = u32::MAX;
    for (p, v) in gens.iter().zip(&rep.verdicts) {
        match v {
            WindowVerdict::ZeroOnWindow { reliable } => min_window = min_window.min(*reliable),
            other => return Err(format!("{p}: {other:?}")),
        }
    }
    ensure(min_window >= 6, || format!("reliable window only {min_window}"))?;
    Ok(format!("{} terms; 5 images vanish on windows of radius >= {min_window}", f.len()))
}

fn c5_gamma_suite() -> Outcome {
    let a = example::matrix_a();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..10 {
        let beta = random_nonresonant_beta(&mut rng, &a);
        let g = gamma_series_seeded(&a, &beta, None, 6, i).map_err(|e| e.to_string())?;
        let f = &g.series;
        ensure(density(f).is_one(), || format!("beta {beta}: density {}", density(f)))?;
        for t in dhyper::series::PuiseuxSeries::box_points(f.rank(), 6) {
            let want = gamma_closed_form(f, &t).ok_or_else(|| format!("beta {beta}: pole at {t:?}"))?;
            ensure(f.coeff_at(&t) == Some(want), || format!("beta {beta}: coefficient mismatch at {t:?}"))?;
        }
        let gens = hypergeometric_system(&a, &beta).map_err(|e| e.to_string())?.generators();
        let rep = annihilation_check(&gens, f).map_err(|e| e.to_string())?;
        ensure(rep.overall() == Overall::Pass, || format!("beta {beta}: not annihilated"))?;
    }
    Ok("10 parameters: closed form on every cycle, density 1, annihilated".into())
}

fn c6_shift_suite() -> Outcome {
    let a = example::matrix_a();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..20 {
        let beta = random_nonresonant_beta(&mut rng, &a);
        let alpha: Vec<u32> = loop {
            let al: Vec<u32> = (0..4).map(|_| rng.gen_range(0..=3)).collect();
            if al.iter().sum::<u32>() <= 3 {
                break al;
            }
        };
        let shift = a.mul_vec(&alpha.iter().map(|&x| x.into()).collect::<Vec<_>>());
        let beta_up = RatVector(beta.0.iter().zip(&shift).map(|(b, s)| b + Rat::from_integer(s.clone())).collect());
        let up = gamma_series_seeded(&a, &beta_up, None, 5, i).map_err(|e| e.to_string())?.series;
        let gens_up = hypergeometric_system(&a, &beta_up).map_err(|e| e.to_string())?.generators();
        ensure(annihilation_check(&gens_up, &up).map_err(|e| e.to_string())?.overall() == Overall::Pass, || {
            format!("beta+A alpha = {beta_up}: source not a solution")
        })?;
        let down = derive(&up, &alpha).map_err(|e| e.to_string())?;
        let gens = hypergeometric_system(&a, &beta).map_err(|e| e.to_string())?.generators();
        ensure(annihilation_check(&gens, &down).map_err(|e| e.to_string())?.overall() == Overall::Pass, || {
            format!("alpha {alpha:?}: derivative is not a solution at {beta}")
        })?;
        let back = antiderive(&down, &alpha).map_err(|e| e.to_string())?;
        let (same, compared) = back.agrees_with(&up);
        ensure(same && compared > 0, || format!("alpha {alpha:?}: round trip differs"))?;
    }
    Ok("20 shifts: derivative solves H_A(beta), antiderive inverts it".into())
}

fn c7_mgraph_suite() -> Outcome {
    let mut summary = Vec::new();
    for rows in [[[-2i64, 1], [1, -2]], [[1, -1], [-1, 1]]] {
        let m = IntMatrix::from_i64(&[&rows[0], &rows[1]]);
        let ops = lattice_ideal_generators(&m);
        for cap in [12, 24] {
            let reps = bounded_representatives(&m, cap);
            let mut seen = std::collections::BTreeSet::new();
            for c in &reps.components {
                for p in &c.vertices {
                    ensure(seen.insert(p.clone()), || format!("cap {cap}: {p:?} in two components"))?;
                }
            }
            ensure(box_points(2, cap).iter().all(|p| seen.contains(p)), || format!("cap {cap}: box not covered"))?;
            for c in reps.bounded() {
                let g = lattice_polynomial_solutions(&m, c).map_err(|e| e.to_string())?;
                ensure(annihilates(&ops, &g), || format!("G_{:?} not annihilated", c.representative))?;
            }
            if cap == 12 {
                for c in reps.components.iter().filter(|c| c.is_resolved()) {
                    let big = component(&m, &c.representative, 24);
                    let agree = match (&c.verdict, &big.verdict) {
                        (Verdict::Bounded, Verdict::Bounded) => big.vertices == c.vertices,
                        (Verdict::UnboundedCertified { .. }, Verdict::UnboundedCertified { .. }) => true,
                        _ => false,
                    };
                    ensure(agree, || format!("{:?}: verdict changes between caps", c.representative))?;
                }
            }
            let bounded = reps.bounded().count();
            summary.push(format!("cap {cap}: {} components, {bounded} bounded", reps.components.len()));
        }
    }
    Ok(summary.join("; "))
}

fn c8_toral_suite() -> Outcome {
    let (a, b) = (example::matrix_a(), example::matrix_b());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut betas = vec![erdelyi_beta()];
    betas.push(random_nonresonant_beta(&mut rng, &a));
    let decs = block_decompositions(&b);
    let toral: Vec<_> = decs.iter().filter(|d| d.class == ComponentClass::Toral).collect();
    ensure(!toral.is_empty(), || "no toral decomposition".into())?;
    let mut solutions = 0;
    for beta in &betas {
        let horn = horn_system(&b, beta, Some(&a)).map_err(|e| e.to_string())?.generators();
        for dec in &toral {
            let comp = toral_component_ideal(&a, &b, dec, beta, 10).map_err(|e| e.to_string())?;
            let gens = comp.generators();
            let gb = groebner_weyl(&gens, TermOrder::Degrevlex, 10).map_err(|e| e.to_string())?;
            for g in &horn {
                let cert = gb.membership(g).map_err(|e| e.to_string())?;
                ensure(cert.verdict == MembershipVerdict::Member && cert.replay(&gens, g), || {
                    format!("Jbar {:?}: {g} does not reduce to 0", dec.jbar)
                })?;
            }
            let basis = toral_solution_basis(&a, &b, dec, beta, 4, 6, 0).map_err(|e| e.to_string())?;
            ensure(!basis.is_empty(), || format!("Jbar {:?}: empty solution basis", dec.jbar))?;
            for s in &basis {
                let rep = annihilation_check(&gens, &s.series).map_err(|e| e.to_string())?;
                ensure(rep.overall() == Overall::Pass, || {
                    format!("Jbar {:?}: F_{:?} not annihilated: {:?}", dec.jbar, s.representative, rep.verdicts)
                })?;
                ensure(!s.series.is_empty(), || "empty series".into())?;
            }
            solutions += basis.len();
        }
    }
    Ok(format!("{} toral components x {} parameters; {solutions} solutions annihilated", toral.len(), betas.len()))
}

fn c9_weyl_kernel() -> Outcome {
    for n in 1..=6 {
        for i in 0..n {
            for j in 0..n {
                let (d, x) = (WeylOperator::d(n, i), WeylOperator::x(n, j));
                let comm = &(&d * &x) - &(&x * &d);
                let want = if i == j { WeylOperator::one(n) } else { WeylOperator::zero(n) };
                ensure(comm == want, || format!("[d{i}, x{j}] = {comm}"))?;
                let (xi, dj) = (WeylOperator::x(n, i), WeylOperator::d(n, j));
                ensure((&xi * &x) == (&x * &xi) && (&dj * &d) == (&d * &dj), || "x or d do not commute".into())?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let (p, q, s) = (random_operator(&mut rng, n, 3, 2), random_operator(&mut rng, n, 3, 2), random_operator(&mut rng, n, 3, 2));
        let left = &(&p * &q) * &s;
        ensure(left == &p * &(&q * &s), || format!("associativity fails for {p}, {q}, {s}"))?;
        let g = random_poly(&mut rng, n, 4, 4);
        ensure(act(&left, &g) == act(&p, &act(&q, &act(&s, &g))), || "product disagrees with composition".into())?;
    }
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let t = ThetaPoly(random_poly(&mut rng, n, 3, 3));
        let op = t.to_operator();
        ensure(theta_form(&op).map_err(|e| e.to_string())? == t, || format!("theta round trip fails for {t}"))?;
    }
    for _ in 0..20 {
        let n = 3;
        let gens: Vec<Poly> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let e1 = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                let e2 = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                Poly::binomial(e1, e2)
            })
            .filter(|p| !p.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let comm = groebner_comm(&CommIdeal::new(n, gens.clone()), TermOrder::Degrevlex);
        let ops: Vec<WeylOperator> = gens.iter().map(WeylOperator::from_d_poly).collect();
        let weyl = groebner_weyl(&ops, TermOrder::Degrevlex, u32::MAX).map_err(|e| e.to_string())?;
        let mut lhs: Vec<String> = comm.basis().iter().map(|p| p.to_string()).collect();
        let mut rhs: Vec<String> =
            weyl.basis.iter().map(|o| o.to_d_poly().map(|p| p.to_string()).unwrap_or_else(|| o.to_string())).collect();
        lhs.sort();
        rhs.sort();
        ensure(lhs == rhs, || format!("engines disagree: {lhs:?} vs {rhs:?}"))?;
    }
    Ok("commutation n <= 6, 100 associative triples, 50 theta round trips, 20 engine agreements".into())
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "toric ideal regression", Some(Duration::from_secs(1)), c1_toric_regression),
        (2, "strict containment certificate", Some(Duration::from_secs(30)), c2_strict_containment),
        (3, "Puiseux monomial dichotomy", Some(Duration::from_secs(1)), c3_monomial_dichotomy),
        (4, "worked example pipeline", Some(Duration::from_secs(10)), c4_pipeline),
        (5, "Gamma-series suite", Some(Duration::from_secs(60)), c5_gamma_suite),
        (6, "shift isomorphism suite", None, c6_shift_suite),
        (7, "M-subgraph suite", Some(Duration::from_secs(5)), c7_mgraph_suite),
        (8, "toral component suite", Some(Duration::from_secs(60)), c8_toral_suite),
        (9, "Weyl-algebra kernel", Some(Duration::from_secs(10)), c9_weyl_kernel),
    ];
    let only: Option<u32> = std::env::args().nth(1).and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        if only.is_some_and(|k| k != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let limit_text = limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
        let (status, detail) = match outcome {
            Ok(d) if limit.is_none_or(|l| elapsed <= l) => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time limit; {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id} [{name}]: {status} in {:.3}s (limit {limit_text}): {detail}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
