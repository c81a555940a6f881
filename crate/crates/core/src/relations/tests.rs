use super::*;
use crate::linalg::dense;
use crate::poly::{monomials_of_degree, parse};
use proptest::prelude::*;

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(FieldSpec::Rational, vars).unwrap()
}

fn polys(r: &Arc<Ring>, texts: &[&str]) -> Vec<Polynomial> {
    texts.iter().map(|t| parse(t, r).unwrap()).collect()
}

#[test]
fn index_order_and_counts() {
    let idx = sym_indices(3, 2);
    let got: Vec<Vec<u16>> = idx.iter().map(|e| e.0.clone()).collect();
    assert_eq!(got, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]);
    assert_eq!(sym_indices(6, 10).len(), 3003);
    assert_eq!(sym_indices(6, 9).len(), 2002);
    assert_eq!(sym_count(6, 10), 3003);
    let r = ring(&["x", "y"]);
    let p = polys(&r, &["x + y"]);
    let prods = sym_products(&p, 3).unwrap();
    assert_eq!(prods.len(), 1);
    assert_eq!(prods[0].1, parse("(x + y)^3", &r).unwrap());
}

#[test]
fn mixed_degrees_are_rejected() {
    let r = ring(&["x", "y"]);
    let p = polys(&r, &["x^2", "y"]);
    assert!(matches!(sym_products(&p, 2), Err(RelationError::MixedDegrees(..))));
    let g = crate::verify::catalog::source_ring(FieldSpec::Rational);
    let p = polys(&g, &["x10*x20", "x10^2"]);
    assert!(matches!(sym_products(&p, 2), Err(RelationError::MixedDegrees(..))));
    assert!(matches!(relation_space(&p, 0, &["a", "b"], &RelationOptions::default()), Err(RelationError::ZeroDegree)));
}

/// All vectors with entries in {-1, 0, 1} whose combination of products
/// expands to zero.
fn brute_force_relations(products: &[Polynomial]) -> Vec<Vec<i64>> {
    let n = products.len();
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let mut sum = Polynomial::zero(products[0].ring());
        for (p, &x) in products.iter().zip(&v) {
            sum = &sum + &p.scale(&FieldElement::rational(x, 1));
        }
        if sum.is_zero() {
            out.push(v);
        }
    }
    out
}

#[test]
fn conic_relation_matches_brute_force() {
    let r = ring(&["x", "y"]);
    let p = polys(&r, &["x^2", "x*y", "y^2"]);
    let prods: Vec<Polynomial> = sym_products(&p, 2).unwrap().into_iter().map(|(_, q)| q).collect();
    let oracle = brute_force_relations(&prods);
    assert_eq!(oracle.len(), 2);
    let space = relation_space(&p, 2, &["v0", "v1", "v2"], &RelationOptions::default()).unwrap();
    assert_eq!(space.dimension(), 1);
    let expected = parse("v0*v2 - v1^2", &ring(&["v0", "v1", "v2"])).unwrap();
    assert_eq!(space.basis[0].to_text(), expected.to_text());
    let coeffs: Vec<i64> = sym_indices(3, 2)
        .iter()
        .map(|e| space.basis[0].coefficient(&e.monomial()).as_rational().unwrap().to_integer().try_into().unwrap())
        .collect();
    assert!(oracle.contains(&coeffs));
    assert_eq!(space.certification, Certification::Expansion);
    assert!(substitute_relation(&space.basis[0], &p).unwrap().is_zero());
}

#[test]
fn routes_agree_on_graded_input() {
    let g = crate::verify::catalog::source_ring(FieldSpec::Rational);
    let p = polys(&g, &["x10^2*x20", "x10*x11*x20", "x11^2*x20", "x10^2*x21 + x11^2*x20"]);
    let names = ["a", "b", "c", "d"];
    for n in 1..=3 {
        let coeff = relation_space(&p, n, &names, &RelationOptions { route: Some(Route::Coefficients), ..Default::default() })
            .unwrap();
        let eval =
            relation_space(&p, n, &names, &RelationOptions { route: Some(Route::Evaluation), ..Default::default() })
                .unwrap();
        assert_eq!(coeff.basis, eval.basis, "degree {n}");
        assert_eq!(coeff.rank, eval.rank);
        match (&eval.certification, eval.dimension()) {
            (Certification::FullRank { .. }, 0) => {}
            (Certification::Grid(cert), d) if d > 0 => {
                assert_eq!(cert.points, cert.sides.iter().product::<u32>() as usize);
                assert!(!cert.primes.is_empty());
            }
            other => panic!("unexpected certification {other:?}"),
        }
    }
}

#[test]
fn grid_rejects_a_false_relation() {
    let g = crate::verify::catalog::source_ring(FieldSpec::Rational);
    let p = polys(&g, &["x10^2", "x10*x11", "x11^2"]);
    let idx = sym_indices(3, 2);
    let table = ProductTable::new(3, &idx);
    let good: Vec<BigInt> = [0, 0, 1, -1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
    let bad: Vec<BigInt> = [0, 0, 1, -2, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
    assert!(grid::certify(&p, &table, &[good], 2, 1).is_some());
    assert!(grid::certify(&p, &table, &[bad], 2, 1).is_none());
}

#[test]
fn relations_are_closed_under_multiplication() {
    let r = ring(&["x", "y"]);
    let p = polys(&r, &["x^2", "x*y", "y^2"]);
    let names = ["v0", "v1", "v2"];
    let lower = relation_space(&p, 2, &names, &RelationOptions::default()).unwrap();
    let upper = relation_space(&p, 3, &names, &RelationOptions::default()).unwrap();
    assert_eq!(upper.dimension(), 3);
    let vr = upper.basis[0].ring().clone();
    let idx = sym_indices(3, 3);
    let row = |q: &Polynomial| idx.iter().map(|e| q.coefficient(&e.monomial())).collect::<Vec<_>>();
    let mut rows: Vec<Vec<FieldElement>> = upper.basis.iter().map(row).collect();
    for j in 0..3 {
        rows.push(row(&(&Polynomial::var(&vr, j) * &lower.basis[0].to_ring(&vr).unwrap())));
    }
    assert_eq!(dense::rank_bareiss(&rows, idx.len()).unwrap(), 3);
}

#[test]
fn membership_examples() {
    let r = ring(&["u0", "u1", "u2", "u3", "u4"]);
    let cfg = LinalgConfig::default();
    let v = |t: &str| parse(t, &r).unwrap();
    let cert = membership(&v("u0^2"), &[v("u0")], 2, &cfg).unwrap().unwrap();
    assert_eq!(cert.cofactors, vec![v("u0")]);
    assert!(cert.verify());
    assert!(membership(&v("u0"), &[v("u1"), v("u2")], 1, &cfg).unwrap().is_none());
    assert!(matches!(membership(&v("u0^3"), &[v("u0")], 2, &cfg), Err(RelationError::Bound { .. })));

    let (c, cert) = proportional_mod_ideal(&v("u0^2"), &v("u1^2"), &[v("u0 - u1")], 2, &cfg).unwrap().unwrap();
    assert!(c.is_one());
    assert!(cert.verify());
    let f = v("u0^3 - 2*u1*u2*u3 + u4^3");
    let (c, _) = proportional_mod_ideal(&f, &f, &[v("u2"), v("u3^2")], 3, &cfg).unwrap().unwrap();
    assert!(c.is_one());

    assert_eq!(ideal_slice(&[v("u0")], SliceDegree::Total(2), &cfg).unwrap().len(), 5);
    assert_eq!(ideal_slice(&[v("u0"), v("u1")], SliceDegree::Total(1), &cfg).unwrap().len(), 2);
    assert_eq!(ideal_slice(&[v("u0"), v("u1")], SliceDegree::Total(2), &cfg).unwrap().len(), 9);
}

#[test]
fn multigraded_slice() {
    let g = crate::verify::catalog::source_ring(FieldSpec::Rational);
    let p = polys(&g, &["x10", "x11"]);
    let md = MultiDegree([1, 1, 0, 0]);
    let slice = ideal_slice(&p, SliceDegree::Multi(md), &LinalgConfig::default()).unwrap();
    assert_eq!(slice.len(), 4);
}

fn small_form(nvars: usize, deg: u32, coeffs: &[i64], r: &Arc<Ring>) -> Polynomial {
    let ms = monomials_of_degree(deg, nvars);
    Polynomial::from_terms(r, ms.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, FieldElement::rational(c, 1))))
        .unwrap()
}

/// Membership decided by dense elimination over every monomial of the
/// target degree.
fn dense_oracle(f: &Polynomial, gens: &[Polynomial], nvars: usize) -> bool {
    let d = f.total_degree().unwrap();
    let rows = monomials_of_degree(d, nvars);
    let mut cols: Vec<Polynomial> = Vec::new();
    for g in gens {
        let gd = g.total_degree().unwrap();
        if gd <= d {
            cols.extend(monomials_of_degree(d - gd, nvars).iter().map(|m| g.shift(m)));
        }
    }
    let mut mat: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|m| {
            let mut row: Vec<FieldElement> = cols.iter().map(|c| c.coefficient(m)).collect();
            row.push(f.coefficient(m));
            row
        })
        .collect();
    let pivots = dense::rref(&mut mat, cols.len() + 1).unwrap();
    pivots.last() != Some(&cols.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_agrees_with_dense_oracle(
        nvars in 1usize..=3,
        gdegs in proptest::collection::vec(1u32..=2, 1..=2),
        coeffs in proptest::collection::vec(-2i64..=2, 12),
        mult in proptest::collection::vec(-2i64..=2, 12),
        fdeg in 2u32..=4,
        inside in any::<bool>(),
    ) {
        let names: Vec<String> = (0..nvars).map(|k| format!("z{k}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let r = ring(&refs);
        let gens: Vec<Polynomial> = gdegs
            .iter()
            .enumerate()
            .map(|(k, &d)| small_form(nvars, d, &coeffs[k..], &r))
            .filter(|g| !g.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let f = if inside {
            let mut acc = Polynomial::zero(&r);
            for (k, g) in gens.iter().enumerate() {
                let gd = g.total_degree().unwrap();
                if gd <= fdeg {
                    acc = &acc + &(g * &small_form(nvars, fdeg - gd, &mult[k..], &r));
                }
            }
            acc
        } else {
            small_form(nvars, fdeg, &mult, &r)
        };
        prop_assume!(!f.is_zero());
        let expected = dense_oracle(&f, &gens, nvars);
        for threshold in [0, 64] {
            let cfg = LinalgConfig { dense_threshold: threshold, ..Default::default() };
            let got = membership(&f, &gens, fdeg, &cfg).unwrap();
            prop_assert_eq!(got.is_some(), expected);
            if let Some(cert) = got {
                prop_assert!(cert.verify());
            }
        }
        if inside {
            prop_assert!(expected);
        }
    }

    #[test]
    fn redundant_input_adds_relations(
        coeffs in proptest::collection::vec(-3i64..=3, 9),
        n in 1u32..=3,
    ) {
        let r = ring(&["x", "y"]);
        let p: Vec<Polynomial> = (0..3).map(|k| small_form(2, 2, &coeffs[3 * k..3 * k + 3], &r)).collect();
        prop_assume!(p.iter().all(|q| !q.is_zero()));
        let mut q = p.clone();
        q.push(p[0].clone());
        let a = relation_space(&p, n, &["a", "b", "c"], &RelationOptions::default()).unwrap();
        let b = relation_space(&q, n, &["a", "b", "c", "d"], &RelationOptions::default()).unwrap();
        prop_assert!(b.dimension() > a.dimension());
        for rel in &b.basis {
            prop_assert!(substitute_relation(rel, &q).unwrap().is_zero());
        }
    }
}
