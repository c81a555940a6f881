use super::*;
use crate::verify::catalog::{self, SourceConstants, U5Variant};
use proptest::prelude::*;

fn qi() -> FieldSpec {
    FieldSpec::GaussianRational
}

fn one_each() -> MultiDegree {
    MultiDegree::uniform(1)
}

fn rho1(w: GroupElement) -> ActionSpec {
    ActionSpec::for_element(w, &ActionSpec::rho1_g(), &ActionSpec::rho1_h(), &ActionSpec::identity()).unwrap()
}

fn trace(m: &SparseMatrix) -> FieldElement {
    (0..m.nrows()).fold(m.field().zero(), |acc, k| acc + m.get(k, k))
}

#[test]
fn generator_orders() {
    assert_eq!(order_of(&ActionSpec::gstar(), 16).unwrap(), 4);
    assert_eq!(order_of(&ActionSpec::hstar(), 16).unwrap(), 4);
    assert_eq!(order_of(&ActionSpec::rho1_g(), 16).unwrap(), 4);
    assert_eq!(order_of(&ActionSpec::identity(), 16).unwrap(), 1);
    assert_eq!(order_of(&ActionSpec::sigma(), 16).unwrap(), 2);
    let huge = ActionSpec::identity().with_scalar(FieldElement::rational(2, 1));
    assert_eq!(order_of(&huge, 8), Err(SymmetryError::OrderBound(8)));
}

#[test]
fn naive_liftings_fail_by_a_sign() {
    let ring = catalog::source_ring(qi());
    let (g, h) = (ActionSpec::gstar(), ActionSpec::hstar());
    let lhs = action_matrix(&compose(&g, &h).unwrap(), &ring, one_each()).unwrap();
    let rhs_spec = compose(&h, &g.pow(3).unwrap()).unwrap().with_scalar(FieldElement::rational(-1, 1));
    let rhs = action_matrix(&rhs_spec, &ring, one_each()).unwrap();
    assert_eq!(lhs, rhs);
    let unsigned = action_matrix(&compose(&h, &g.pow(3).unwrap()).unwrap(), &ring, one_each()).unwrap();
    assert_ne!(lhs, unsigned);
}

#[test]
fn rho1_is_a_homomorphism_with_regular_character() {
    let ring = catalog::source_ring(qi());
    let elems = GroupElement::all();
    let mats: Vec<SparseMatrix> = elems.iter().map(|&w| action_matrix(&rho1(w), &ring, one_each()).unwrap()).collect();
    for (i, &v) in elems.iter().enumerate() {
        for (j, &w) in elems.iter().enumerate() {
            let k = elems.iter().position(|&x| x == v * w).unwrap();
            assert_eq!(mats[i].mul(&mats[j]).unwrap(), mats[k], "{v} * {w}");
        }
        let expected = if v == GroupElement::IDENTITY { 16 } else { 0 };
        assert_eq!(trace(&mats[i]), qi().from_i64(expected), "trace at {v}");
    }
    let (g, h) = (ActionSpec::rho1_g(), ActionSpec::rho1_h());
    let lhs = action_matrix(&compose(&g, &h).unwrap(), &ring, one_each()).unwrap();
    let rhs = action_matrix(&compose(&h, &g.pow(3).unwrap()).unwrap(), &ring, one_each()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn named_actions_on_constants() {
    let c = SourceConstants::new();
    assert_eq!(apply_action(&ActionSpec::rho1_g(), &c.f1).unwrap(), c.f1);
    assert_eq!(apply_action(&ActionSpec::rho1_h(), &c.f1).unwrap(), c.f1);
    let u0 = &c.u[0];
    assert_eq!(apply_action(&ActionSpec::rho2_g(), u0).unwrap(), -u0);
    assert_eq!(apply_action(&ActionSpec::rho2_h(), u0).unwrap(), *u0);
    for v in U5Variant::BOTH {
        for u in c.all_u(v) {
            assert_eq!(apply_action(&ActionSpec::sigma(), &u).unwrap(), u);
        }
    }
    // over Q the imaginary scalar has no image
    let cq = SourceConstants::over(FieldSpec::Rational).unwrap();
    assert!(apply_action(&ActionSpec::rho1_g(), &cq.u[0]).is_err());
}

#[test]
fn sigma_is_an_involution_on_matrices() {
    let ring = catalog::source_ring(qi());
    let s = action_matrix(&ActionSpec::sigma(), &ring, one_each()).unwrap();
    assert_eq!(s.mul(&s).unwrap(), SparseMatrix::identity(qi(), 16));
    let id = action_matrix(&ActionSpec::identity(), &ring, one_each()).unwrap();
    assert_eq!(id, SparseMatrix::identity(qi(), 16));
}

#[test]
fn isotypic_slices() {
    let c = SourceConstants::new();
    let ring = &c.ring;
    let one = qi().one();
    let inv = isotypic_slice(ring, &[(ActionSpec::rho1_g(), one.clone()), (ActionSpec::rho1_h(), one.clone())], one_each())
        .unwrap();
    assert_eq!(inv.len(), 1);
    assert!(inv[0].proportional(&c.f1).is_some());
    let minus = isotypic_slice(ring, &[(ActionSpec::rho1_g(), -one.clone()), (ActionSpec::rho1_h(), one.clone())], one_each())
        .unwrap();
    assert_eq!(minus.len(), 1);
    assert!(minus[0].proportional(&c.f2).is_some());
}

#[test]
fn linear_characters_cover_half_the_regular_representation() {
    // Simultaneous eigenspaces of the generators only see the 8 linear
    // characters; each occurs once in the regular representation.
    let ring = catalog::source_ring(qi());
    let i = qi().imaginary_unit().unwrap();
    let mut total = 0;
    for cg in [qi().one(), -qi().one()] {
        for k in 0..4 {
            let ch = i.pow(k);
            let slice =
                isotypic_slice(&ring, &[(ActionSpec::rho1_g(), cg.clone()), (ActionSpec::rho1_h(), ch)], one_each())
                    .unwrap();
            assert_eq!(slice.len(), 1);
            total += slice.len();
        }
    }
    assert_eq!(total, 8);
}

#[test]
fn fixed_point_sets() {
    let g2 = GroupElement::parse("g^2").unwrap();
    let h2 = GroupElement::parse("h^2").unwrap();
    let g2h2 = GroupElement::parse("g^2 h^2").unwrap();
    for (w, set) in [(g2, catalog::fix_g2()), (h2, catalog::fix_h2()), (g2h2, catalog::fix_g2h2())] {
        for p in &set {
            assert_eq!(points::act_on_point(w, p).unwrap(), *p, "{w} at {p}");
            assert_eq!(points::act_on_point(GroupElement::IDENTITY, p).unwrap(), *p);
        }
    }
    let sub = [GroupElement::IDENTITY, g2];
    let part = orbits(&catalog::fix_g2(), &sub).unwrap();
    assert_eq!(part.orbit_sizes(), vec![1; 16]);
}

#[test]
fn base_points_form_four_free_orbits() {
    let part = orbits(&catalog::base_points(), &GroupElement::all()).unwrap();
    assert_eq!(part.orbit_sizes(), vec![16; 4]);
    assert!(part.is_free());
}

#[test]
fn orbit_closure_is_checked() {
    let pts = catalog::base_points()[..3].to_vec();
    assert!(matches!(orbits(&pts, &GroupElement::all()), Err(ActionError::NotClosed { .. })));
}

#[test]
fn action_on_points_is_a_left_action() {
    let p = catalog::jacobian_point();
    let p = ProductPoint::new(p.coords().clone().map(|[a, b]| [qi().embed(&a).unwrap(), qi().embed(&b).unwrap()])).unwrap();
    for v in GroupElement::all_extended() {
        for w in GroupElement::all_extended() {
            let lhs = points::act_on_point(v * w, &p).unwrap();
            let rhs = points::act_on_point(v, &points::act_on_point(w, &p).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{v} {w}");
        }
    }
}

fn small_point() -> impl Strategy<Value = [[i64; 2]; 4]> {
    let pair = (-3i64..4, -3i64..4).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0).prop_map(|(a, b)| [a, b]);
    [pair.clone(), pair.clone(), pair.clone(), pair]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn evaluation_matches_point_transform(coords in small_point(), w in 0usize..32) {
        let c = SourceConstants::new();
        let w = GroupElement::all_extended()[w];
        let spec = ActionSpec::for_element(w, &ActionSpec::gstar(), &ActionSpec::hstar(), &ActionSpec::sigma()).unwrap();
        let pt = coords.map(|[a, b]| [qi().from_i64(a), qi().from_i64(b)]);
        for f in [&c.f1, &c.u[0], &c.u[3]] {
            let lhs = apply_action(&spec, f).unwrap().evaluate(&ProductPoint::new(pt.clone()).unwrap().assignment(&c.ring).unwrap());
            let moved = spec.transform_point(&ProductPoint::new(pt.clone()).unwrap().coords().clone()).unwrap();
            let raw: Vec<FieldElement> = {
                let mut v = vec![qi().zero(); 8];
                for (k, &(a, b)) in c.ring.grading().unwrap().iter().enumerate() {
                    v[a] = moved[k][0].clone();
                    v[b] = moved[k][1].clone();
                }
                v
            };
            prop_assert_eq!(lhs.unwrap(), f.evaluate(&raw).unwrap());
        }
    }

    #[test]
    fn action_matrix_is_multiplicative(a in 0usize..32, b in 0usize..32) {
        let ring = catalog::source_ring(qi());
        let all = GroupElement::all_extended();
        let spec = |w: GroupElement| ActionSpec::for_element(w, &ActionSpec::rho1_g(), &ActionSpec::rho1_h(), &ActionSpec::sigma()).unwrap();
        let (sa, sb) = (spec(all[a]), spec(all[b]));
        let lhs = action_matrix(&compose(&sa, &sb).unwrap(), &ring, one_each()).unwrap();
        let rhs = action_matrix(&sa, &ring, one_each()).unwrap().mul(&action_matrix(&sb, &ring, one_each()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn actions_preserve_multidegree(w in 0usize..32) {
        let c = SourceConstants::new();
        let w = GroupElement::all_extended()[w];
        let spec = ActionSpec::for_element(w, &ActionSpec::rho2_g(), &ActionSpec::rho2_h(), &ActionSpec::sigma()).unwrap();
        for u in c.all_u(U5Variant::Minus) {
            let image = apply_action(&spec, &u).unwrap();
            prop_assert_eq!(image.multidegree(), Some(MultiDegree::uniform(2)));
        }
    }

    #[test]
    fn compose_is_associative(a in 0usize..32, b in 0usize..32, k in 0usize..32) {
        let all = GroupElement::all_extended();
        let spec = |w: GroupElement| ActionSpec::for_element(w, &ActionSpec::rho1_g(), &ActionSpec::hstar(), &ActionSpec::sigma()).unwrap();
        let (x, y, z) = (spec(all[a]), spec(all[b]), spec(all[k]));
        let left = compose(&compose(&x, &y).unwrap(), &z).unwrap();
        let right = compose(&x, &compose(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let n = order_of(&x, 64).unwrap();
        let n2 = order_of(&compose(&x, &x).unwrap(), 64).unwrap();
        prop_assert_eq!(n % n2, 0);
    }
}
