//! Points of `(P^1)^4`, the group action on them, orbits and stabilizers.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::par;
use crate::poly::{parse, PolyError, Ring};

use super::{ActionSpec, GroupElement, SymmetryError};

/// Four projective pairs, each scaled so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductPoint {
    coords: [[FieldElement; 2]; 4],
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ActionError {
    #[error("factor {0} of the point is (0:0)")]
    ZeroPair(usize),
    #[error("point set is not closed under the action: {point} maps outside under {element}")]
    NotClosed { point: String, element: String },
    #[error("cannot parse point `{0}`")]
    Parse(String),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl ProductPoint {
    pub fn new(coords: [[FieldElement; 2]; 4]) -> Result<Self, ActionError> {
        let mut out = coords;
        for (k, pair) in out.iter_mut().enumerate() {
            let lead = if !pair[0].is_zero() {
                pair[0].clone()
            } else if !pair[1].is_zero() {
                pair[1].clone()
            } else {
                return Err(ActionError::ZeroPair(k + 1));
            };
            let inv = lead.inv()?;
            for x in pair.iter_mut() {
                *x = x.checked_mul(&inv)?;
            }
        }
        Ok(ProductPoint { coords: out })
    }

    /// Point with integer coordinates over `field`.
    pub fn from_ints(field: &FieldSpec, pairs: [[i64; 2]; 4]) -> Result<Self, ActionError> {
        Self::new(pairs.map(|[a, b]| [field.from_i64(a), field.from_i64(b)]))
    }

    /// Parses `(a0:a1),(b0:b1),(c0:c1),(d0:d1)`; each coordinate is a constant
    /// expression over `field`.
    pub fn parse(text: &str, field: &FieldSpec) -> Result<Self, ActionError> {
        let err = || ActionError::Parse(text.to_string());
        let ring = Ring::new(field.clone(), &[]).map_err(|_| err())?;
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let pairs: Vec<&str> = cleaned
            .trim_matches(|c| c == '(' || c == ')')
            .split("),(")
            .collect();
        if pairs.len() != 4 {
            return Err(err());
        }
        let mut coords: Vec<[FieldElement; 2]> = Vec::new();
        for p in pairs {
            let parts: Vec<&str> = p.split(':').collect();
            if parts.len() != 2 {
                return Err(err());
            }
            let val = |s: &str| -> Result<FieldElement, PolyError> {
                let poly = parse(s, &ring)?;
                Ok(poly.coefficient(&crate::poly::Monomial::one(0)))
            };
            coords.push([val(parts[0]).map_err(|_| err())?, val(parts[1]).map_err(|_| err())?]);
        }
        Self::new(coords.try_into().map_err(|_| err())?)
    }

    pub fn coords(&self) -> &[[FieldElement; 2]; 4] {
        &self.coords
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0][0].field()
    }

    /// Values for the variables of a graded ring, in ring order.
    pub fn assignment(&self, ring: &Arc<Ring>) -> Result<Vec<FieldElement>, PolyError> {
        let grading = ring.grading().ok_or(PolyError::Ungraded)?;
        let mut out = vec![self.field().zero(); ring.nvars()];
        for (k, &(a, b)) in grading.iter().enumerate() {
            out[a] = self.coords[k][0].clone();
            out[b] = self.coords[k][1].clone();
        }
        Ok(out)
    }

    /// Image under the point map of `spec`, renormalized.
    pub fn transform(&self, spec: &ActionSpec) -> Result<Self, ActionError> {
        Self::new(spec.transform_point(&self.coords)?)
    }
}

impl fmt::Display for ProductPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|[a, b]| format!("({a}:{b})")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The natural substitution for `w`, ignoring scalars.
fn element_spec(w: GroupElement) -> Result<ActionSpec, SymmetryError> {
    ActionSpec::for_element(w, &ActionSpec::gstar(), &ActionSpec::hstar(), &ActionSpec::sigma())
}

/// Left action on points, compatible with substitution:
/// `eval(apply(spec(w), F), x)` is proportional to `F(act_on_point(w^-1, x))`.
pub fn act_on_point(w: GroupElement, pt: &ProductPoint) -> Result<ProductPoint, ActionError> {
    pt.transform(&element_spec(w.inv())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Orbits as sorted index lists, ordered by their smallest index.
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer of each input point.
    pub stabilizers: Vec<Vec<GroupElement>>,
}

impl OrbitPartition {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    pub fn is_free(&self) -> bool {
        self.stabilizers.iter().all(|s| s.len() == 1)
    }
}

/// Splits `points` into orbits of the subgroup listed in `group`; fails if
/// some image lies outside the set.
pub fn orbits(points: &[ProductPoint], group: &[GroupElement]) -> Result<OrbitPartition, ActionError> {
    let index: HashMap<&ProductPoint, usize> = points.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let specs: Vec<ActionSpec> =
        group.iter().map(|&w| element_spec(w.inv())).collect::<Result<_, _>>()?;
    let images: Vec<Result<Vec<usize>, ActionError>> = par::map(points, |p| {
        specs
            .iter()
            .zip(group)
            .map(|(spec, w)| {
                let img = p.transform(spec)?;
                index.get(&img).copied().ok_or_else(|| ActionError::NotClosed {
                    point: p.to_string(),
                    element: w.to_string(),
                })
            })
            .collect()
    });
    let images: Vec<Vec<usize>> = images.into_iter().collect::<Result<_, _>>()?;
    let mut seen = vec![false; points.len()];
    let mut orbits = Vec::new();
    for k in 0..points.len() {
        if seen[k] {
            continue;
        }
        let mut orbit: Vec<usize> = images[k].clone();
        orbit.push(k);
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            seen[j] = true;
        }
        orbits.push(orbit);
    }
    let stabilizers = images
        .iter()
        .enumerate()
        .map(|(k, imgs)| group.iter().zip(imgs).filter(|(_, &j)| j == k).map(|(&w, _)| w).collect())
        .collect();
    Ok(OrbitPartition { orbits, stabilizers })
}
