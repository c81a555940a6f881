//! Checks on the source side: the group, its slices, the point sets, the
//! differential of the map and the components of `{U4 = Uj = 0}`.

use std::collections::HashMap;

use crate::field::{FieldElement, FieldSpec};
use crate::linalg::dense::rank_bareiss;
use crate::poly::{parse, parse_with, Monomial, MultiDegree, Polynomial};
use crate::relations::membership;
use crate::symmetry::points::act_on_point;
use crate::symmetry::{action_matrix, apply_action, compose, isotypic_slice, order_of, orbits, ActionSpec, GroupElement, ProductPoint};
use crate::verify::catalog::{self, Component, U5Variant};
use crate::verify::context::Context;

use super::{list, CheckResult, Rec};

fn rho1(w: GroupElement) -> Result<ActionSpec, crate::symmetry::SymmetryError> {
    ActionSpec::for_element(w, &ActionSpec::rho1_g(), &ActionSpec::rho1_h(), &ActionSpec::identity())
}

pub(super) fn group(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let (g, h) = (ActionSpec::gstar(), ActionSpec::hstar());
    rec.claim("order of g*", order_of(&g, 16)?, 4);
    rec.claim("order of h*", order_of(&h, 16)?, 4);

    let ring = &ctx.source.ring;
    let d = MultiDegree::uniform(1);
    let gh = action_matrix(&compose(&g, &h)?, ring, d)?;
    let hg3 = compose(&h, &g.pow(3)?)?;
    let signed = action_matrix(&hg3.with_scalar(FieldElement::rational(-1, 1)), ring, d)?;
    let unsigned = action_matrix(&hg3, ring, d)?;
    rec.claim("g*h* = -h*(g*)^3", gh == signed, true);
    rec.derived("g*h* = h*(g*)^3", gh == unsigned);
    let (a, b) = (GroupElement::G, GroupElement::H);
    rec.claim("gh = hg^3 in the abstract group", a * b == b * a.pow(3), true);

    let elems = GroupElement::all();
    let mats = crate::par::map(&elems, |&w| action_matrix(&rho1(w)?, ring, d));
    let mats = mats.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut good = 0;
    for (i, &v) in elems.iter().enumerate() {
        for (j, &w) in elems.iter().enumerate() {
            let k = elems.iter().position(|&x| x == v * w).expect("closed");
            if mats[i].mul(&mats[j])? == mats[k] {
                good += 1;
            } else {
                rec.note(format!("rho1({v}) rho1({w}) != rho1({})", v * w));
            }
        }
    }
    rec.claim("rho1 homomorphism on element pairs", format!("{good}/256"), "256/256");
    let traces: Vec<FieldElement> =
        mats.iter().map(|m| (0..m.nrows()).fold(m.field().zero(), |acc, k| acc + m.get(k, k))).collect();
    let expected: Vec<i64> = (0..16).map(|k| if k == 0 { 16 } else { 0 }).collect();
    rec.claim("character of rho1 on degree (1,1,1,1)", list(&traces), list(&expected));
    Ok(())
}

/// Rank of a family of polynomials as coefficient vectors.
fn span_rank(polys: &[Polynomial]) -> Result<usize, crate::field::FieldError> {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<FieldElement>> = polys.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    rank_bareiss(&rows, monos.len())
}

pub(super) fn isotypic(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let ring = &ctx.source.ring;
    let qi = FieldSpec::GaussianRational;
    let (one, minus) = (qi.one(), -qi.one());
    let c = &ctx.source;

    let inv = isotypic_slice(ring, &[(ActionSpec::rho1_g(), one.clone()), (ActionSpec::rho1_h(), one.clone())], MultiDegree::uniform(1))?;
    rec.claim("dim of invariants in degree (1,1,1,1)", inv.len(), 1);
    rec.claim("F1 spans the invariants", inv.len() == 1 && inv[0].proportional(&c.f1).is_some(), true);
    let neg = isotypic_slice(ring, &[(ActionSpec::rho1_g(), minus.clone()), (ActionSpec::rho1_h(), one.clone())], MultiDegree::uniform(1))?;
    rec.claim("dim of (-,+) slice in degree (1,1,1,1)", neg.len(), 1);
    rec.claim("F2 spans the (-,+) slice", neg.len() == 1 && neg[0].proportional(&c.f2).is_some(), true);

    let i = qi.imaginary_unit().expect("Q(i)");
    let mut linear_total = 0;
    for cg in [one.clone(), minus.clone()] {
        for k in 0..4 {
            let s = isotypic_slice(ring, &[(ActionSpec::rho1_g(), cg.clone()), (ActionSpec::rho1_h(), i.pow(k))], MultiDegree::uniform(1))?;
            linear_total += s.len();
        }
    }
    rec.derived("sum over linear characters in degree (1,1,1,1)", linear_total);

    // the degree-two action is rational, so this slice is computed over Q
    let qring = &ctx.source_q.ring;
    let (qone, qminus) = (FieldSpec::Rational.one(), -FieldSpec::Rational.one());
    let quad = isotypic_slice(qring, &[(ActionSpec::rho2_g(), qminus), (ActionSpec::rho2_h(), qone)], MultiDegree::uniform(2))?;
    rec.claim("dim of (-,+) slice in degree (2,2,2,2)", quad.len(), 6);
    let selected = ctx.variant();
    for v in U5Variant::BOTH {
        let us = ctx.quadrics(v);
        let mut inside = true;
        for u in &us {
            inside &= apply_action(&ActionSpec::rho2_g(), u)? == -u && apply_action(&ActionSpec::rho2_h(), u)? == *u;
        }
        let spans = inside && span_rank(&us)? == quad.len();
        let key = format!("U0..U5 span the slice ({})", v.name());
        if v == selected {
            rec.claim(key, spans, true);
        } else {
            rec.derived(key, spans);
        }
    }
    let sigma = ActionSpec::sigma();
    let mut fixed = true;
    for u in c.all_u(selected) {
        fixed &= apply_action(&sigma, &u)? == u;
    }
    rec.claim("sigma fixes U0..U5", fixed, true);
    let sf1 = apply_action(&sigma, &c.f1)?;
    match sf1.proportional(&c.f2) {
        Some(s) => rec.derived("sigma(F1) / F2", s),
        None => {
            rec.require(false, "sigma(F1) is not proportional to F2");
        }
    }
    Ok(())
}

pub(super) fn points(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let sets = [("g^2", catalog::fix_g2()), ("h^2", catalog::fix_h2()), ("g^2 h^2", catalog::fix_g2h2())];
    for (word, set) in sets {
        let w = GroupElement::parse(word)?;
        let mut fixed = 0;
        for p in &set {
            if act_on_point(w, p)? == *p {
                fixed += 1;
            }
        }
        rec.claim(format!("points of Fix({word}) fixed by {word}"), format!("{fixed}/{}", set.len()), "16/16");
    }

    let ring = &ctx.source.ring;
    let base = catalog::base_points();
    let assignments: Vec<Vec<FieldElement>> = base.iter().map(|p| p.assignment(ring)).collect::<Result<_, _>>()?;
    let selected = ctx.variant();
    for v in U5Variant::BOTH {
        let us = ctx.source.all_u(v);
        let mut count = 0;
        for a in &assignments {
            let mut all = true;
            for u in &us {
                all &= u.evaluate(a)?.is_zero();
            }
            count += all as usize;
        }
        let key = format!("base points annihilating U0..U5 ({})", v.name());
        if v == selected {
            rec.claim(key, count, 64);
        } else {
            rec.derived(key, count);
        }
    }

    let group = GroupElement::all();
    let part = orbits(&base, &group)?;
    rec.claim("orbit sizes of the base points", list(part.orbit_sizes()), list([16, 16, 16, 16]));
    rec.claim("action on the base points is free", part.is_free(), true);

    let mut on_f1 = Vec::new();
    for (p, a) in base.iter().zip(&assignments) {
        if ctx.source.f1.evaluate(a)?.is_zero() {
            on_f1.push(p.clone());
        }
    }
    rec.claim("base points on F1 = 0", on_f1.len(), 32);
    let sub = orbits(&on_f1, &group)?;
    rec.claim("orbits on F1 = 0", list(sub.orbit_sizes()), list([16, 16]));
    let reps = catalog::orbit_representatives();
    let orbit_of = |p: &ProductPoint| {
        on_f1.iter().position(|q| q == p).and_then(|k| sub.orbits.iter().position(|o| o.contains(&k)))
    };
    let found: Vec<Option<usize>> = reps.iter().map(orbit_of).collect();
    let distinct = matches!(found.as_slice(), [Some(a), Some(b)] if a != b);
    rec.claim("displayed representatives lie in distinct orbits on F1 = 0", distinct, true);

    // where the displayed representatives actually sit
    let mut on_f2 = true;
    for r in &reps {
        on_f2 &= ctx.source.f2.evaluate(&r.assignment(ring)?)?.is_zero();
    }
    rec.derived("displayed representatives lie on F2 = 0", on_f2);
    let whole = |p: &ProductPoint| base.iter().position(|q| q == p).and_then(|k| part.orbits.iter().position(|o| o.contains(&k)));
    let rep_orbits: Vec<Option<usize>> = reps.iter().map(whole).collect();
    rec.derived(
        "displayed representatives lie in distinct base-point orbits",
        matches!(rep_orbits.as_slice(), [Some(a), Some(b)] if a != b),
    );
    let images: Vec<ProductPoint> = reps.iter().map(|r| r.transform(&ActionSpec::sigma())).collect::<Result<_, _>>()?;
    let found: Vec<Option<usize>> = images.iter().map(orbit_of).collect();
    rec.derived(
        "sigma-images of the representatives lie in distinct orbits on F1 = 0",
        matches!(found.as_slice(), [Some(a), Some(b)] if a != b),
    );
    Ok(())
}

pub(super) fn jacobian(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let ring = &ctx.source_q.ring;
    let us = ctx.quadrics(ctx.variant());
    let pt = catalog::jacobian_point();
    let (affine, projective) = differential_ranks(&us, &pt.assignment(ring)?, ring)?;
    rec.claim(format!("rank of the affine chart Jacobian of U0..U5 at {pt}"), affine, 4);
    rec.derived(format!("rank of the differential into P^5 at {pt}"), projective);
    let generic = ProductPoint::from_ints(&FieldSpec::Rational, [[1, 2], [1, 3], [1, 5], [1, 7]])?;
    let (_, generic_rank) = differential_ranks(&us, &generic.assignment(ring)?, ring)?;
    rec.derived(format!("rank of the differential into P^5 at {generic}"), generic_rank);
    rec.require(generic_rank == 4, "the map is not generically finite");
    if projective < 4 {
        rec.note(format!(
            "at {pt} the vector (U0..U5) lies in the span of the chart derivatives, so the differential into P^5 drops to rank {projective}; \
             full rank holds at {generic}"
        ));
    }

    let base = &catalog::base_points()[0];
    let ba = base.assignment(&ctx.source.ring)?;
    let mut vanish = true;
    for u in ctx.source.all_u(ctx.variant()) {
        vanish &= u.evaluate(&ba)?.is_zero();
    }
    rec.derived(format!("all U vanish at base point {base}"), vanish);
    rec.note("the differential is not defined at base points; rank skipped there");
    Ok(())
}

/// Ranks of the 6 x 4 Jacobian in the chart `x_k0 = 1` and of the induced
/// differential into `P^5` (the Jacobian modulo the radial vector).
fn differential_ranks(
    us: &[Polynomial],
    a: &[FieldElement],
    ring: &std::sync::Arc<crate::poly::Ring>,
) -> Result<(usize, usize), Box<dyn std::error::Error + Send + Sync>> {
    let grading = *ring.grading().expect("graded");
    let mut rows = Vec::new();
    let mut with_radial = Vec::new();
    for u in us {
        let row: Vec<FieldElement> = grading.iter().map(|&(_, y)| u.partial(y).evaluate(a)).collect::<Result<_, _>>()?;
        let mut full = vec![u.evaluate(a)?];
        full.extend(row.iter().cloned());
        rows.push(row);
        with_radial.push(full);
    }
    let affine = rank_bareiss(&rows, 4)?;
    let projective = rank_bareiss(&with_radial, 5)?.saturating_sub(1);
    Ok((affine, projective))
}

/// Splits `m1^2 + m2^2` into `(m1 + i m2)(m1 - i m2)`.
fn gaussian_factors(q: &Polynomial) -> Option<[Polynomial; 2]> {
    let ring = q.ring();
    let i = ring.field().imaginary_unit()?;
    let terms: Vec<(&Monomial, &FieldElement)> = q.terms().iter().collect();
    let [(m1, c1), (m2, c2)] = terms.as_slice() else { return None };
    if !c1.is_one() || !c2.is_one() || m1.exponents().iter().chain(m2.exponents()).any(|e| e % 2 == 1) {
        return None;
    }
    let root = |m: &Monomial| {
        let half: Vec<u16> = m.exponents().iter().map(|e| e / 2).collect();
        Polynomial::from_terms(ring, [(Monomial::from_exponents(&half), ring.field().one())]).ok()
    };
    let (r1, r2) = (root(m1)?, root(m2)?);
    let plus = &r1 + &r2.scale(&i);
    let minus = &r1 - &r2.scale(&i);
    (&(&plus * &minus) == q).then_some([plus, minus])
}

fn restrict(p: &Polynomial, zeros: &[&str]) -> Result<Polynomial, crate::poly::PolyError> {
    let zero = Polynomial::zero(p.ring());
    zeros.iter().try_fold(p.clone(), |acc, v| acc.replace_var(v, &zero))
}

pub(super) fn components(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let c = &ctx.source;
    let ring = &c.ring;
    let empty = HashMap::new();
    let product = |texts: &[&str]| -> Result<Polynomial, crate::poly::PolyError> {
        texts.iter().try_fold(Polynomial::one(ring), |acc, t| Ok(&acc * &parse_with(t, ring, &empty)?))
    };
    rec.claim("U4 = 4 * prod x_k0 x_k1", c.u[4] == parse(catalog::U4_PRODUCT, ring)?, true);
    rec.claim("U2 factors as displayed", c.u[2] == product(&catalog::U2_FACTORS)?, true);
    rec.claim("U3 factors as displayed", c.u[3] == product(&catalog::U3_FACTORS)?, true);

    let cfg = &ctx.cfg.linalg;
    let lists: [(&str, &[Component; 12], &Polynomial); 2] =
        [("U2", &catalog::COMPONENTS_U2, &c.u[2]), ("U3", &catalog::COMPONENTS_U3, &c.u[3])];
    for (label, comps, uj) in lists {
        let mut on_locus = 0;
        let mut f1_nonzero = 0;
        for comp in comps.iter() {
            let f1 = restrict(&c.f1, comp.zeros)?;
            let u4 = restrict(&c.u[4], comp.zeros)?;
            let ujr = restrict(uj, comp.zeros)?;
            let name = format!("{{{}{}}}", comp.zeros.join(" = "), comp.quadric.map(|q| format!(" = {q}")).unwrap_or_default());
            match comp.quadric {
                None => {
                    on_locus += (u4.is_zero() && ujr.is_zero()) as usize;
                    if rec.require(!f1.is_zero(), format!("F1 vanishes on {name}")) {
                        f1_nonzero += 1;
                    }
                }
                Some(text) => {
                    let q = parse(text, ring)?;
                    let Some(factors) = gaussian_factors(&q) else {
                        rec.require(false, format!("{text} does not split over Q(i)"));
                        continue;
                    };
                    let deg = ujr.total_degree().unwrap_or(0);
                    let lies = u4.is_zero() && (ujr.is_zero() || membership(&ujr, std::slice::from_ref(&q), deg, cfg)?.is_some());
                    on_locus += lies as usize;
                    // each Q(i)-factor of the quadric cuts its own piece
                    let mut ok = !f1.is_zero();
                    for l in &factors {
                        ok &= membership(&f1, std::slice::from_ref(l), 4, cfg)?.is_none();
                    }
                    if rec.require(ok, format!("F1 vanishes on a piece of {name}")) {
                        f1_nonzero += 1;
                    }
                }
            }
        }
        rec.claim(format!("listed components inside {{U4 = {label} = 0}}"), format!("{on_locus}/12"), "12/12");
        rec.claim(format!("components of {{U4 = {label} = 0}} not in F1 = 0"), format!("{f1_nonzero}/12"), "12/12");
    }
    Ok(())
}
