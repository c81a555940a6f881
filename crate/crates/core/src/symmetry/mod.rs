//! Actions on `(P^1)^4`: factor permutations with one 2x2 matrix per factor
//! and a global scalar, acting on polynomials of a graded ring by
//! substitution and on product points by the matching linear maps.

pub mod group;
pub mod points;

use std::fmt;
use std::sync::Arc;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::linalg::{self, LinalgConfig, LinalgError, SparseMatrix};
use crate::poly::{monomials_of, MultiDegree, PolyError, Polynomial, Ring};
pub use group::GroupElement;
pub use points::{orbits, ActionError, OrbitPartition, ProductPoint};

pub type Mat2 = [[FieldElement; 2]; 2];

/// Substitution `x_{k,a} -> sum_b matrices[k][a][b] * x_{perm[k],b}`
/// followed by multiplication with `scalar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub perm: [usize; 4],
    pub matrices: [Mat2; 4],
    pub scalar: FieldElement,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("order exceeds {0}")]
    OrderBound(u32),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
}

fn q(n: i64) -> FieldElement {
    FieldElement::rational(n, 1)
}

fn ident() -> Mat2 {
    [[q(1), q(0)], [q(0), q(1)]]
}

/// `(x0 : x1) -> (x0 : -x1)`
fn flip_sign() -> Mat2 {
    [[q(1), q(0)], [q(0), q(-1)]]
}

/// `(x0 : x1) -> (x1 : x0)`
fn swap() -> Mat2 {
    [[q(0), q(1)], [q(1), q(0)]]
}

/// Product of elements that may live in different fields, one of which
/// embeds into the other.
/// The result is kept in `Q` whenever it is rational.
fn mul_mixed(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    let out = match b.field().embed(a) {
        Ok(a2) => a2.checked_mul(b)?,
        Err(_) => a.checked_mul(&a.field().embed(b)?)?,
    };
    Ok(rational_if_possible(out))
}

fn add_mixed(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    let out = match b.field().embed(a) {
        Ok(a2) => a2.checked_add(b)?,
        Err(_) => a.checked_add(&a.field().embed(b)?)?,
    };
    Ok(rational_if_possible(out))
}

fn rational_if_possible(x: FieldElement) -> FieldElement {
    match (&x, x.as_rational()) {
        (FieldElement::Gaussian(..), Some(q)) => FieldElement::Rational(q),
        _ => x,
    }
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Result<Mat2, FieldError> {
    let e = |i: usize, j: usize| -> Result<FieldElement, FieldError> {
        add_mixed(&mul_mixed(&a[i][0], &b[0][j])?, &mul_mixed(&a[i][1], &b[1][j])?)
    };
    Ok([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]])
}

fn embed_mat(field: &FieldSpec, m: &Mat2) -> Result<Mat2, FieldError> {
    Ok([
        [field.embed(&m[0][0])?, field.embed(&m[0][1])?],
        [field.embed(&m[1][0])?, field.embed(&m[1][1])?],
    ])
}

pub const NAMED: [&str; 7] = ["gstar", "hstar", "rho1_g", "rho1_h", "rho2_g", "rho2_h", "sigma"];

impl ActionSpec {
    pub fn identity() -> Self {
        ActionSpec { perm: [0, 1, 2, 3], matrices: [ident(), ident(), ident(), ident()], scalar: q(1) }
    }

    /// Natural lifting of `g`: `x1a -> x2a, x2b -> (-1)^b x1b, x3c -> x4c,
    /// x4d -> (-1)^d x3d`.
    pub fn gstar() -> Self {
        ActionSpec { perm: [1, 0, 3, 2], matrices: [ident(), flip_sign(), ident(), flip_sign()], scalar: q(1) }
    }

    /// Natural lifting of `h`: `x1a -> x3a', x2b -> (-1)^b' x4b', x3c -> x1c,
    /// x4d -> (-1)^d x2d`.
    pub fn hstar() -> Self {
        let neg_swap = [[q(0), q(-1)], [q(1), q(0)]];
        ActionSpec { perm: [2, 3, 0, 1], matrices: [swap(), neg_swap, ident(), flip_sign()], scalar: q(1) }
    }

    pub fn rho1_g() -> Self {
        ActionSpec { scalar: FieldSpec::GaussianRational.imaginary_unit().unwrap(), ..Self::gstar() }
    }

    pub fn rho1_h() -> Self {
        ActionSpec { scalar: q(-1), ..Self::hstar() }
    }

    /// Degree-two action induced by `rho1`: the same substitution with the
    /// squared scalar.
    pub fn rho2_g() -> Self {
        ActionSpec { scalar: q(-1), ..Self::gstar() }
    }

    pub fn rho2_h() -> Self {
        ActionSpec { scalar: q(1), ..Self::hstar() }
    }

    /// Swap of the two coordinates on the third and fourth factors.
    pub fn sigma() -> Self {
        ActionSpec { perm: [0, 1, 2, 3], matrices: [ident(), ident(), swap(), swap()], scalar: q(1) }
    }

    pub fn named(name: &str) -> Result<Self, SymmetryError> {
        Ok(match name {
            "id" | "identity" => Self::identity(),
            "gstar" => Self::gstar(),
            "hstar" => Self::hstar(),
            "rho1_g" => Self::rho1_g(),
            "rho1_h" => Self::rho1_h(),
            "rho2_g" => Self::rho2_g(),
            "rho2_h" => Self::rho2_h(),
            "sigma" => Self::sigma(),
            _ => return Err(SymmetryError::UnknownAction(name.to_string())),
        })
    }

    pub fn with_scalar(&self, scalar: FieldElement) -> Self {
        ActionSpec { scalar, ..self.clone() }
    }

    /// `self^n` under [`compose`].
    pub fn pow(&self, n: u32) -> Result<Self, SymmetryError> {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = compose(&acc, self)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.perm == [0, 1, 2, 3]
            && self.scalar.is_one()
            && self.matrices.iter().all(|m| m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero() && m[1][0].is_zero())
    }

    /// `spec` for the group element `g^a h^b s^c` built from the given
    /// generator specs.
    pub fn for_element(w: GroupElement, g: &Self, h: &Self, s: &Self) -> Result<Self, SymmetryError> {
        let left = compose(&g.pow(w.a as u32)?, &h.pow(w.b as u32)?)?;
        compose(&left, &s.pow(w.c as u32)?)
    }

    /// The point map `T` with `eval(apply(spec, F), x) = scalar * F(T x)`:
    /// `(T x)_k = M_k x_{perm[k]}`.
    pub fn transform_point(&self, pt: &[[FieldElement; 2]; 4]) -> Result<[[FieldElement; 2]; 4], FieldError> {
        let field = pt[0][0].field();
        let mut out: [[FieldElement; 2]; 4] = std::array::from_fn(|_| [field.zero(), field.zero()]);
        for k in 0..4 {
            let m = embed_mat(&field, &self.matrices[k])?;
            let src = &pt[self.perm[k]];
            for a in 0..2 {
                out[k][a] = m[a][0].checked_mul(&src[0])?.checked_add(&m[a][1].checked_mul(&src[1])?)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm {:?}, scalar {}, matrices", self.perm.map(|k| k + 1), self.scalar)?;
        for m in &self.matrices {
            write!(f, " [[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])?;
        }
        Ok(())
    }
}

/// Substitutes every variable of `p` by its image linear form and scales by
/// the global scalar.
pub fn apply_action(spec: &ActionSpec, p: &Polynomial) -> Result<Polynomial, SymmetryError> {
    let ring = p.ring();
    let images = variable_images(spec, ring)?;
    let scalar = ring.field().embed(&spec.scalar)?;
    Ok(p.substitute_all(&images)?.scale(&scalar))
}

fn variable_images(spec: &ActionSpec, ring: &Arc<Ring>) -> Result<Vec<Polynomial>, SymmetryError> {
    let grading = *ring.grading().ok_or(PolyError::Ungraded)?;
    let field = ring.field();
    let mut images = vec![Polynomial::zero(ring); ring.nvars()];
    for k in 0..4 {
        let m = embed_mat(field, &spec.matrices[k])?;
        let (t0, t1) = grading[spec.perm[k]];
        let src = [grading[k].0, grading[k].1];
        for a in 0..2 {
            let lin = Polynomial::var(ring, t0).scale(&m[a][0]) + Polynomial::var(ring, t1).scale(&m[a][1]);
            images[src[a]] = lin;
        }
    }
    Ok(images)
}

/// `compose(a, b)` acts as `a` after `b`: `apply(compose(a, b), F) =
/// apply(a, apply(b, F))`.
pub fn compose(a: &ActionSpec, b: &ActionSpec) -> Result<ActionSpec, SymmetryError> {
    let mut perm = [0; 4];
    let mut matrices = ActionSpec::identity().matrices;
    for k in 0..4 {
        perm[k] = a.perm[b.perm[k]];
        matrices[k] = mat_mul(&b.matrices[k], &a.matrices[b.perm[k]])?;
    }
    Ok(ActionSpec { perm, matrices, scalar: mul_mixed(&a.scalar, &b.scalar)? })
}

/// Smallest `k >= 1` with `spec^k` the identity substitution with scalar 1.
pub fn order_of(spec: &ActionSpec, bound: u32) -> Result<u32, SymmetryError> {
    let mut acc = spec.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = compose(&acc, spec)?;
    }
    Err(SymmetryError::OrderBound(bound))
}

/// Matrix of the action on the span of `monomials_of(d)`: column `j` holds the
/// coefficients of the image of the `j`-th monomial.
pub fn action_matrix(spec: &ActionSpec, ring: &Arc<Ring>, d: MultiDegree) -> Result<SparseMatrix, SymmetryError> {
    let basis = monomials_of(d, ring)?;
    let index: std::collections::HashMap<_, _> = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    let images = variable_images(spec, ring)?;
    let scalar = ring.field().embed(&spec.scalar)?;
    let columns = crate::par::map(&basis, |m| {
        let mono = Polynomial::from_terms(ring, [(m.clone(), ring.field().one())])?;
        Ok::<_, SymmetryError>(mono.substitute_all(&images)?.scale(&scalar))
    });
    let mut out = SparseMatrix::new(ring.field().clone(), basis.len(), basis.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (m, c) in col?.terms() {
            out.set(index[m], j, c.clone())?;
        }
    }
    Ok(out)
}

/// Simultaneous eigenspace `{p in degree d : apply(spec_i, p) = c_i p}`.
pub fn isotypic_slice(
    ring: &Arc<Ring>,
    generators: &[(ActionSpec, FieldElement)],
    d: MultiDegree,
) -> Result<Vec<Polynomial>, SymmetryError> {
    let basis = monomials_of(d, ring)?;
    let n = basis.len();
    let field = ring.field().clone();
    let mut stacked = SparseMatrix::new(field.clone(), 0, n);
    for (spec, c) in generators {
        let m = action_matrix(spec, ring, d)?;
        let c = field.embed(c)?;
        let mut shifted = m.clone();
        for k in 0..n {
            shifted.set(k, k, m.get(k, k).checked_sub(&c)?)?;
        }
        stacked = stacked.vstack(&shifted)?;
    }
    let cert = linalg::kernel(&stacked, &LinalgConfig::default())?;
    cert.basis
        .iter()
        .map(|v| {
            let terms = basis.iter().cloned().zip(v.iter().cloned());
            Ok(Polynomial::from_terms(ring, terms)?)
        })
        .collect()
}

#[cfg(test)]
mod tests;
