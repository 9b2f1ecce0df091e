mod common;

use std::collections::BTreeSet;

use dhyper::exact::{facets, integer_kernel, solve_rational, IntMatrix, Rat, RatVector};
use dhyper::groebner::{groebner_comm, groebner_weyl, CommIdeal, MembershipVerdict, TermOrder};
use dhyper::json;
use dhyper::mgraph::{bounded_representatives, box_points, component, Verdict};
use dhyper::poly::Poly;
use dhyper::series::{antiderive, derive, gamma_series};
use dhyper::systems::block_decompositions;
use dhyper::weyl::{a_degree_components, apply_to_series, theta_form, ThetaPoly, WeylOperator};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use common::{act, r};

fn exponent(n: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, n)
}

fn coeff() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| r(p, q))
}

fn operator(n: usize, max: u32) -> impl Strategy<Value = WeylOperator> {
    prop::collection::vec((exponent(n, max), exponent(n, max), coeff()), 0..4).prop_map(move |ts| {
        let mut op = WeylOperator::zero(n);
        for (mu, nu, c) in ts {
            op.add_term(mu, nu, c);
        }
        op
    })
}

fn poly(n: usize, max: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((exponent(n, max), coeff()), 0..4).prop_map(move |ts| {
        let mut p = Poly::zero(n);
        for (e, c) in ts {
            p.add_term(e, c);
        }
        p
    })
}

/// Terms with `|nu| = |mu|`, a single shift class for the lattice of `[1, 1]`.
fn balanced_operator() -> impl Strategy<Value = WeylOperator> {
    prop::collection::vec((0u32..=2, 0u32..=2, 0u32..=2, coeff()), 1..4).prop_map(|ts| {
        let mut op = WeylOperator::zero(2);
        for (a, b, c, k) in ts {
            let total = a + b;
            op.add_term(vec![a, b], vec![c.min(total), total - c.min(total)], k);
        }
        op
    })
}

fn int_matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(lo..=hi, rows * cols).prop_map(move |v| {
        IntMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()).expect("sized entries")
    })
}

fn binomial_ideal(n: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec((exponent(n, 2), exponent(n, 2)), 1..4).prop_map(move |pairs| {
        pairs.into_iter().map(|(a, b)| Poly::binomial(a, b)).filter(|p| !p.is_zero()).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutation_relations(n in 1usize..=6, i in 0usize..6, j in 0usize..6) {
        let (i, j) = (i % n, j % n);
        let d = WeylOperator::d(n, i);
        let x = WeylOperator::x(n, j);
        let comm = &(&d * &x) - &(&x * &d);
        let want = if i == j { WeylOperator::one(n) } else { WeylOperator::zero(n) };
        prop_assert_eq!(comm, want);
    }

    #[test]
    fn product_is_associative_and_acts_by_composition(
        p in operator(2, 2), q in operator(2, 2), s in operator(2, 2), g in poly(2, 4)
    ) {
        let left = &(&p * &q) * &s;
        prop_assert_eq!(&left, &(&p * &(&q * &s)));
        prop_assert_eq!(act(&left, &g), act(&p, &act(&q, &act(&s, &g))));
    }

    #[test]
    fn theta_round_trip(t in poly(3, 3)) {
        let t = ThetaPoly(t);
        prop_assert_eq!(theta_form(&t.to_operator()).unwrap(), t);
    }

    #[test]
    fn a_degree_components_sum_to_operator(p in operator(3, 2), a in int_matrix(2, 3, -2, 3)) {
        let parts = a_degree_components(&a, &p).unwrap();
        let mut sum = WeylOperator::zero(3);
        let mut degrees = BTreeSet::new();
        for (deg, part) in &parts {
            prop_assert!(degrees.insert(deg.clone()));
            for ((mu, nu), _) in part.terms() {
                let diff: Vec<BigInt> = nu.iter().zip(mu).map(|(&x, &y)| BigInt::from(x) - BigInt::from(y)).collect();
                prop_assert_eq!(&a.mul_vec(&diff), deg);
            }
            sum = &sum + part;
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn application_respects_products(p in balanced_operator(), q in balanced_operator(), num in 1i64..12) {
        let a = IntMatrix::from_i64(&[&[1, 1]]);
        let f = gamma_series(&a, &RatVector(vec![r(num, 7)]), None, 6).unwrap().series;
        let pq = &p * &q;
        let lhs = apply_to_series(&pq, &f).unwrap();
        let rhs = apply_to_series(&p, &apply_to_series(&q, &f).unwrap()).unwrap();
        let (same, _) = lhs.agrees_with(&rhs);
        prop_assert!(same);
    }

    #[test]
    fn shift_round_trip(alpha in exponent(4, 2), num in 1i64..30, num2 in 1i64..30) {
        let a = IntMatrix::from_i64(&[&[3, 2, 1, 0], &[0, 1, 2, 3]]);
        let beta = RatVector(vec![r(num, 11), r(-num2, 13)]);
        let f = gamma_series(&a, &beta, None, 3).unwrap().series;
        let back = antiderive(&derive(&f, &alpha).unwrap(), &alpha).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn kernel_is_annihilated(a in int_matrix(2, 4, -3, 3)) {
        let k = integer_kernel(&a);
        prop_assert!(a.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.cols(), 4 - a.rank());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn rational_solution_solves(a in int_matrix(2, 4, -3, 3), b1 in coeff(), b2 in coeff()) {
        prop_assume!(a.rank() == 2);
        let beta = RatVector(vec![b1, b2]);
        let v = solve_rational(&a, &beta).unwrap();
        prop_assert_eq!(a.mul_rat_vec(&v.0), beta.0);
    }

    #[test]
    fn facets_support_the_cone(rest in int_matrix(1, 4, -3, 3), heights in prop::collection::vec(1i64..4, 4)) {
        let mut rows = vec![heights.clone()];
        rows.push((0..4).map(|j| rest.get(0, j).try_into().unwrap()).collect());
        let a = IntMatrix::from_i64(&[&rows[0], &rows[1]]);
        prop_assume!(a.rank() == 2);
        let fs = facets(&a).unwrap();
        prop_assert!(fs.len() >= 2);
        for f in &fs {
            let sub = a.select_columns(&f.sigma);
            prop_assert_eq!(sub.rank(), 1);
            for (j, col) in a.columns().iter().enumerate() {
                let v = f.eval_int(col);
                if f.sigma.contains(&j) {
                    prop_assert!(v.is_zero());
                } else {
                    prop_assert!(v > Rat::zero());
                }
            }
        }
    }

    #[test]
    fn mgraph_components_partition_and_grow(m in int_matrix(2, 2, -2, 2), cap in 2u32..6) {
        let small = bounded_representatives(&m, cap);
        let mut seen = BTreeSet::new();
        for c in &small.components {
            for p in &c.vertices {
                prop_assert!(seen.insert(p.clone()));
            }
        }
        prop_assert_eq!(seen.len(), box_points(2, cap).len());
        for c in small.components.iter().filter(|c| c.is_resolved()) {
            let big = component(&m, &c.representative, cap + 3);
            prop_assert_eq!(
                matches!(c.verdict, Verdict::Bounded),
                matches!(big.verdict, Verdict::Bounded)
            );
            for p in &c.vertices {
                prop_assert!(big.vertices.contains(p));
            }
        }
    }

    #[test]
    fn engines_agree_on_d_only_ideals(gens in binomial_ideal(3)) {
        prop_assume!(!gens.is_empty());
        let comm = groebner_comm(&CommIdeal::new(3, gens.clone()), TermOrder::Degrevlex);
        let ops: Vec<WeylOperator> = gens.iter().map(WeylOperator::from_d_poly).collect();
        let weyl = groebner_weyl(&ops, TermOrder::Degrevlex, u32::MAX).unwrap();
        let lhs: BTreeSet<String> = comm.basis().iter().map(|p| p.to_string()).collect();
        let rhs: BTreeSet<String> = weyl.basis.iter().map(|o| o.to_d_poly().unwrap().to_string()).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_basis_passes_buchberger_and_certificates_replay(gens in prop::collection::vec(operator(2, 1), 1..3), p in operator(2, 2)) {
        let gens: Vec<WeylOperator> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = groebner_weyl(&gens, TermOrder::Degrevlex, 6).unwrap();
        if gb.is_complete() {
            prop_assert!(gb.verify_buchberger());
            for g in &gens {
                prop_assert!(gb.normal_form(g).is_zero());
            }
        }
        let cert = gb.membership(&p).unwrap();
        prop_assert!(cert.replay(&gens, &p));
        if cert.verdict == MembershipVerdict::Member {
            prop_assert!(cert.normal_form.is_zero());
        }
    }

    #[test]
    fn decompositions_invariant_under_signed_column_permutations(
        b in int_matrix(4, 2, -2, 2), swap in any::<bool>(), signs in prop::collection::vec(any::<bool>(), 2)
    ) {
        let order: Vec<usize> = if swap { vec![1, 0] } else { vec![0, 1] };
        let mut c = b.select_columns(&order);
        for (j, &neg) in signs.iter().enumerate() {
            if neg {
                for i in 0..4 {
                    let v = -c.get(i, j).clone();
                    c.set(i, j, v);
                }
            }
        }
        let key = |m: &IntMatrix| -> Vec<(Vec<usize>, String)> {
            block_decompositions(m).iter().map(|d| (d.jbar.clone(), d.class.name().to_string())).collect()
        };
        prop_assert_eq!(key(&b), key(&c));
    }

    #[test]
    fn json_round_trips_are_byte_stable(p in operator(3, 2), m in int_matrix(2, 3, -9, 9)) {
        let text = json::to_text(&json::operator_json(&p));
        let back = json::operator_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(json::to_text(&json::operator_json(&back)), text);
        let mt = json::to_text(&json::matrix_json(&m));
        prop_assert_eq!(json::matrix_from_json(&serde_json::from_str(&mt).unwrap()).unwrap(), m);
    }
}
