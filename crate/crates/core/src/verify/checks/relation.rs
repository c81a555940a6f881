//! The relation sweep and the comparison of the decic with its displayed
//! expression.

use std::collections::HashMap;

use crate::poly::{parse_with, Polynomial};
use crate::relations::{height_bits, proportional_mod_ideal, relation_space, Certification, RelationSpace};
use crate::verify::catalog::{self, U5Variant, TARGET_VARS};
use crate::verify::context::{Context, RELATION_DEGREE};

use super::{fingerprint, list, CheckResult, Rec};

fn describe(space: &RelationSpace) -> String {
    let how = match &space.certification {
        Certification::Expansion => "expanded to zero".to_string(),
        Certification::Grid(g) => {
            format!("grid of {} points, {} primes, value bound {} bits", g.points, g.primes.len(), g.bound_bits)
        }
        Certification::FullRank { .. } => "full column rank".to_string(),
    };
    format!("{:?} route, {} x {}, rank {}, {how}", space.route, space.rows, space.columns, space.rank)
}

pub(super) fn relations(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let max = ctx.cfg.max_degree;
    if max == 0 {
        return Err("maximum degree must be at least 1".into());
    }
    let variant = ctx.variant();
    rec.derived("U5 variant", variant.name());
    let us = ctx.quadrics(variant);
    let opts = ctx.cfg.relation_options();
    let low: Vec<u32> = (1..=max.min(RELATION_DEGREE - 1)).collect();
    let spaces = crate::par::map(&low, |&n| relation_space(&us, n, &TARGET_VARS, &opts));
    let mut dims = Vec::new();
    for (n, s) in low.iter().zip(spaces) {
        let s = s?;
        rec.derived(format!("degree {n}"), describe(&s));
        dims.push(s.dimension());
    }
    if max >= RELATION_DEGREE {
        let r = ctx.relation(variant)?;
        dims.push(1);
        match &r.space {
            Some(s) => {
                *dims.last_mut().unwrap() = s.dimension();
                rec.derived(format!("degree {RELATION_DEGREE}"), describe(s));
                rec.derived(format!("degree {RELATION_DEGREE} primes"), list(&s.primes));
            }
            None => rec.note("degree-10 relation taken from the frozen file, not recomputed"),
        }
        let p = &r.poly;
        rec.derived("relation terms", p.len());
        rec.derived("relation height bits", height_bits(p));
        rec.derived("relation fingerprint", fingerprint(&p.to_text()));
        rec.require(crate::relations::is_primitive(p), "relation is not primitive");
        // independent of the route: substitute and expand
        let expanded = p.substitute_all(&us)?;
        rec.claim("relation expands to zero", expanded.is_zero(), true);
    }
    let expected: Vec<usize> = (1..=max.min(RELATION_DEGREE)).map(|n| (n == RELATION_DEGREE) as usize).collect();
    rec.claim(format!("dimensions for n = 1..{}", max.min(RELATION_DEGREE)), list(&dims), list(&expected));
    if max > RELATION_DEGREE {
        rec.note(format!("degrees above {RELATION_DEGREE} are not swept"));
    }
    Ok(())
}

/// Homogeneous degrees occurring in `p`.
fn degrees(p: &Polynomial) -> Vec<u32> {
    let mut d: Vec<u32> = p.terms().keys().map(|m| m.degree()).collect();
    d.sort_unstable();
    d.dedup();
    d
}

pub(super) fn f_consistency(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let ring = &ctx.ring5;
    let env: HashMap<String, Polynomial> = ctx.table.clone();
    let displayed = ctx.t("f");
    let blocks: Vec<Polynomial> =
        catalog::F_BLOCKS.iter().map(|(_, t)| parse_with(t, ring, &env)).collect::<Result<_, _>>()?;
    let sum = blocks.iter().fold(Polynomial::zero(ring), |acc, b| &acc + b);
    rec.require(sum == *displayed, "the three displayed blocks do not add up to the expression");
    rec.derived("degrees in the displayed expression", list(degrees(displayed)));
    for ((name, _), b) in catalog::F_BLOCKS.iter().zip(&blocks) {
        rec.derived(format!("degrees of the {name}"), list(degrees(b)));
    }
    rec.claim("G0 forms agree", ctx.t("G0") == ctx.t("G0alt"), true);

    let products = ctx.product_matches();
    let selected = ctx.variant();
    rec.claim(
        "variants with U5 ~ F1*F2",
        list(products.iter().map(|(v, _)| v.name())),
        list([U5Variant::Minus.name()]),
    );
    for (v, c) in &products {
        rec.derived(format!("U5 / (F1*F2) ({})", v.name()), c);
    }

    // The claim: exactly one variant has R(u0..u4, 0) proportional to the
    // displayed expression.
    let mut proportional = Vec::new();
    let gens = [ctx.t("Q1").pow(2), ctx.t("G1").pow(2)];
    let mut block_matches = Vec::new();
    for v in U5Variant::BOTH {
        let r = ctx.relation(v)?;
        let r0 = ctx.restrict_u5(&r.poly)?;
        rec.derived(format!("degrees of R at u5 = 0 ({})", v.name()), list(degrees(&r0)));
        if let Some(c) = r0.proportional(displayed) {
            rec.derived(format!("R at u5 = 0 / displayed ({})", v.name()), &c);
            proportional.push(v);
        }
        // R at u5 = 0 against the middle block, modulo the other two blocks'
        // leading factors
        match proportional_mod_ideal(&r0, &blocks[1], &gens, RELATION_DEGREE, &ctx.cfg.linalg)? {
            Some((c, _)) => {
                rec.derived(format!("R at u5 = 0 = c * (Q1*G1 block) mod (Q1^2, G1^2), c ({})", v.name()), &c);
                block_matches.push(v);
            }
            None => rec.derived(format!("R at u5 = 0 = c * (Q1*G1 block) mod (Q1^2, G1^2) ({})", v.name()), "none"),
        }
    }
    rec.derived("variants matching the Q1*G1 block", list(block_matches.iter().map(|v| v.name())));
    rec.require(block_matches == [selected], "the Q1*G1 block does not single out the variant with U5 ~ F1*F2");
    rec.claim(
        "variants with R at u5 = 0 proportional to the displayed expression",
        list(proportional.iter().map(|v| v.name())),
        list([selected.name()]),
    );
    if proportional.is_empty() && degrees(displayed).len() > 1 {
        rec.note(
            "the displayed expression is not homogeneous, so no multiple of it equals the homogeneous decic; \
             the decic R(u0..u4, 0) of the selected variant is used by all later checks",
        );
    }
    Ok(())
}
