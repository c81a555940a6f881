//! State shared by the checks: constants, the selected `U5` variant, and the
//! degree-10 relations, each computed at most once.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::field::FieldSpec;
use crate::linalg::LinalgConfig;
use crate::poly::{parse, Polynomial, Ring};
use crate::relations::{relation_space, RelationOptions, RelationSpace};

use super::catalog::{self, SourceConstants, U5Variant, TARGET_VARS};
use super::golden;

/// Degree at which the relation among `U0..U5` first appears.
pub const RELATION_DEGREE: u32 = 10;

/// Where the degree-10 relations come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationSource {
    Compute,
    /// The frozen relations shipped with the crate; for fast tests of the
    /// downstream checks.
    Golden,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub linalg: LinalgConfig,
    /// Largest degree swept by the relation check.
    pub max_degree: u32,
    pub relation_source: RelationSource,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { linalg: LinalgConfig::default(), max_degree: RELATION_DEGREE, relation_source: RelationSource::Compute }
    }
}

impl VerifyConfig {
    pub fn relation_options(&self) -> RelationOptions {
        RelationOptions { linalg: self.linalg.clone(), ..RelationOptions::default() }
    }
}

/// The degree-10 relation for one variant.
#[derive(Clone, Debug)]
pub struct Relation {
    /// Primitive form in `u0..u5`.
    pub poly: Polynomial,
    /// Present when computed in this run.
    pub space: Option<RelationSpace>,
    pub seconds: f64,
}

pub struct Context {
    pub cfg: VerifyConfig,
    pub source: SourceConstants,
    pub source_q: SourceConstants,
    pub ring5: Arc<Ring>,
    pub ring6: Arc<Ring>,
    pub table: HashMap<String, Polynomial>,
    relations: [OnceLock<Result<Relation, String>>; 2],
    f: OnceLock<Result<Polynomial, String>>,
}

fn slot(v: U5Variant) -> usize {
    match v {
        U5Variant::Minus => 0,
        U5Variant::Plus => 1,
    }
}

impl Context {
    pub fn new(cfg: VerifyConfig) -> Self {
        let ring5 = catalog::target_ring5();
        let table = catalog::table(&ring5).expect("table parses");
        Context {
            cfg,
            source: SourceConstants::new(),
            source_q: SourceConstants::over(FieldSpec::Rational).expect("catalog parses"),
            ring5,
            ring6: catalog::target_ring6(),
            table,
            relations: [OnceLock::new(), OnceLock::new()],
            f: OnceLock::new(),
        }
    }

    pub fn t(&self, name: &str) -> &Polynomial {
        &self.table[name]
    }

    /// Variants whose `U5` is proportional to `F1 * F2`.
    pub fn product_matches(&self) -> Vec<(U5Variant, crate::field::FieldElement)> {
        let prod = &self.source.f1 * &self.source.f2;
        U5Variant::BOTH
            .iter()
            .filter_map(|&v| self.source.u5(v).proportional(&prod).map(|c| (v, c)))
            .collect()
    }

    /// The variant used downstream: the unique one with `U5 ~ F1 * F2`,
    /// falling back to the displayed sign.
    pub fn variant(&self) -> U5Variant {
        match self.product_matches().as_slice() {
            [(v, _)] => *v,
            _ => U5Variant::Minus,
        }
    }

    /// `U0..U5` over `Q` for a variant.
    pub fn quadrics(&self, v: U5Variant) -> Vec<Polynomial> {
        self.source_q.all_u(v)
    }

    pub fn relation(&self, v: U5Variant) -> Result<&Relation, String> {
        self.relations[slot(v)].get_or_init(|| self.load_relation(v)).as_ref().map_err(|e| e.clone())
    }

    fn load_relation(&self, v: U5Variant) -> Result<Relation, String> {
        let start = std::time::Instant::now();
        match self.cfg.relation_source {
            RelationSource::Golden => {
                let text = match v {
                    U5Variant::Minus => golden::RELATION_MINUS,
                    U5Variant::Plus => golden::RELATION_PLUS,
                };
                let poly = parse(text.trim(), &self.ring6).map_err(|e| e.to_string())?;
                Ok(Relation { poly, space: None, seconds: start.elapsed().as_secs_f64() })
            }
            RelationSource::Compute => {
                let space = relation_space(&self.quadrics(v), RELATION_DEGREE, &TARGET_VARS, &self.cfg.relation_options())
                    .map_err(|e| e.to_string())?;
                match space.basis.as_slice() {
                    [r] => Ok(Relation { poly: r.clone(), space: Some(space.clone()), seconds: start.elapsed().as_secs_f64() }),
                    other => Err(format!("expected one relation in degree {RELATION_DEGREE}, found {}", other.len())),
                }
            }
        }
    }

    /// `R(u0, ..., u4, 0)` in `u0..u4`.
    pub fn restrict_u5(&self, r: &Polynomial) -> Result<Polynomial, String> {
        let mut images: Vec<Polynomial> = (0..5).map(|k| Polynomial::var(&self.ring5, k)).collect();
        images.push(Polynomial::zero(&self.ring5));
        r.substitute_all(&images).map_err(|e| e.to_string())
    }

    /// The decic `f`: the primitive form of the selected relation at
    /// `u5 = 0`.
    pub fn f(&self) -> Result<&Polynomial, String> {
        self.f
            .get_or_init(|| {
                let r = self.relation(self.variant())?;
                let r0 = self.restrict_u5(&r.poly)?;
                if r0.is_zero() {
                    return Err("relation vanishes at u5 = 0".into());
                }
                Ok(r0.primitive().ok_or("relation is not rational")?.0)
            })
            .as_ref()
            .map_err(|e| e.clone())
    }
}
