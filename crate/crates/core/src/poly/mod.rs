//! Sparse multivariate polynomials over the exact fields of [`crate::field`],
//! with an optional grading by four variable pairs (the coordinates of the
//! four `P^1` factors).
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic in the ring's declared variable order. Printing,
//! matrix row indexing and normal forms all use this order.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

pub use parse::{parse, parse_with};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("substitution map has no image for `{0}`")]
    IncompleteSubstitution(String),
    #[error("ring is not graded")]
    Ungraded,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficient field, ordered variable names and optional pair grading.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: FieldSpec,
    vars: Vec<String>,
    grading: Option<[(usize, usize); 4]>,
}

impl Ring {
    pub fn new(field: FieldSpec, vars: &[&str]) -> Result<Arc<Ring>, PolyError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        for (k, v) in vars.iter().enumerate() {
            if vars[..k].contains(v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{v}`")));
            }
            if !is_identifier(v) {
                return Err(PolyError::InvalidRing(format!("`{v}` is not an identifier")));
            }
        }
        Ok(Arc::new(Ring { field, vars, grading: None }))
    }

    /// Ring graded by four disjoint variable pairs covering exactly 8 variables.
    pub fn graded(
        field: FieldSpec,
        vars: &[&str],
        pairs: [(&str, &str); 4],
    ) -> Result<Arc<Ring>, PolyError> {
        let base = Ring::new(field, vars)?;
        if base.vars.len() != 8 {
            return Err(PolyError::InvalidRing("a graded ring has exactly 8 variables".into()));
        }
        let mut grading = [(0, 0); 4];
        let mut used = [false; 8];
        for (k, (a, b)) in pairs.iter().enumerate() {
            let ia = base.var_index(a).ok_or_else(|| PolyError::UnknownVariable(a.to_string()))?;
            let ib = base.var_index(b).ok_or_else(|| PolyError::UnknownVariable(b.to_string()))?;
            for i in [ia, ib] {
                if used[i] {
                    return Err(PolyError::InvalidRing("grading pairs overlap".into()));
                }
                used[i] = true;
            }
            grading[k] = (ia, ib);
        }
        Ok(Arc::new(Ring { grading: Some(grading), ..(*base).clone() }))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn grading(&self) -> Option<&[(usize, usize); 4]> {
        self.grading.as_ref()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and grading over another field.
    pub fn with_field(&self, field: FieldSpec) -> Arc<Ring> {
        Arc::new(Ring { field, ..self.clone() })
    }

    pub fn multidegree(&self, m: &Monomial) -> Option<MultiDegree> {
        self.grading.map(|g| MultiDegree(g.map(|(a, b)| m.0[a] as u32 + m.0[b] as u32)))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, one entry per ring variable. Ordered graded
/// lexicographically: total degree first, then the first variable with a
/// different exponent decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[idx] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degrees in each of the four factor pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub [u32; 4]);

impl MultiDegree {
    pub fn uniform(d: u32) -> Self {
        MultiDegree([d; 4])
    }

    pub fn scaled(&self, n: u32) -> Self {
        MultiDegree(self.0.map(|d| d * n))
    }

    pub fn monomial_count(&self) -> usize {
        self.0.iter().map(|&d| d as usize + 1).product()
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, o: MultiDegree) -> MultiDegree {
        MultiDegree([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// All monomials of the given multidegree in ascending canonical order.
pub fn monomials_of(md: MultiDegree, ring: &Ring) -> Result<Vec<Monomial>, PolyError> {
    let grading = ring.grading().ok_or(PolyError::Ungraded)?;
    let mut out = Vec::with_capacity(md.monomial_count());
    let d = md.0;
    for a in 0..=d[0] {
        for b in 0..=d[1] {
            for c in 0..=d[2] {
                for e in 0..=d[3] {
                    let mut m = Monomial::one(ring.nvars());
                    for (k, first) in [a, b, c, e].into_iter().enumerate() {
                        let (x0, x1) = grading[k];
                        m.0[x0] = first as u16;
                        m.0[x1] = (d[k] - first) as u16;
                    }
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All monomials of total degree `d` in `nvars` variables, ascending.
pub fn monomials_of_degree(d: u32, nvars: usize) -> Vec<Monomial> {
    fn rec(d: u32, k: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if k + 1 == cur.len() {
            cur[k] = d as u16;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=d {
            cur[k] = e as u16;
            rec(d - e, k + 1, cur, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(d, 0, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

/// A normalized sparse polynomial: no zero coefficients, all coefficients
/// in the ring's field.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> Result<Self, PolyError> {
        Self::from_terms(ring, [(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one()).expect("one lies in the field")
    }

    pub fn var(ring: &Arc<Ring>, idx: usize) -> Self {
        Self::from_terms(ring, [(Monomial::var(ring.nvars(), idx), ring.field().one())])
            .expect("one lies in the field")
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self, PolyError> {
        let idx = ring.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        Ok(Self::var(ring, idx))
    }

    /// Builds a polynomial, merging repeated monomials and embedding the
    /// coefficients into the ring's field.
    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self, PolyError> {
        let mut out = Polynomial::zero(ring);
        for (m, c) in terms {
            if m.0.len() != ring.nvars() {
                return Err(PolyError::ArityMismatch { expected: ring.nvars(), got: m.0.len() });
            }
            let c = ring.field().embed(&c)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElement> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field().zero())
    }

    /// Largest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let c = self.ring.field().embed(c).unwrap_or_else(|e| panic!("{e}"));
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * &c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiply by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Common multidegree of all terms, when the ring is graded and the
    /// polynomial is multihomogeneous and nonzero.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|m| self.ring.multidegree(m));
        let first = it.next()??;
        it.all(|d| d == Some(first)).then_some(first)
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_some()
    }

    /// Exact value at a point whose coordinates lie in the ring's field or
    /// in a field the coefficients embed into.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::ArityMismatch { expected: self.ring.nvars(), got: point.len() });
        }
        let target = match point.first() {
            Some(x) => x.field(),
            None => self.ring.field().clone(),
        };
        for x in point {
            if x.field() != target {
                return Err(FieldError::MixedFields {
                    left: target.to_string(),
                    right: x.field().to_string(),
                }
                .into());
            }
        }
        let mut powers: Vec<Vec<FieldElement>> = point.iter().map(|x| vec![target.one(), x.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.embed(c)?;
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pk = &mut powers[k];
                while pk.len() <= e as usize {
                    let next = pk.last().unwrap() * &point[k];
                    pk.push(next);
                }
                term = &term * &pk[e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn partial(&self, var: usize) -> Self {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .filter_map(|(m, c)| {
                let e = m.0[var];
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                let c2 = c * &field.from_i64(e as i64);
                (!c2.is_zero()).then_some((m2, c2))
            })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn partial_named(&self, var: &str) -> Result<Self, PolyError> {
        let idx = self.ring.var_index(var).ok_or_else(|| PolyError::UnknownVariable(var.into()))?;
        Ok(self.partial(idx))
    }

    /// Composition with `images[k]` substituted for variable `k`. All images
    /// must share one target ring.
    pub fn substitute_all(&self, images: &[Polynomial]) -> Result<Self, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::ArityMismatch { expected: self.ring.nvars(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !(Arc::ptr_eq(&p.ring, &target) || *p.ring == *target)) {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, target.field().embed(c)?)?;
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pk = &mut powers[k];
                while pk.len() <= e as usize {
                    let next = pk.last().unwrap() * &images[k];
                    pk.push(next);
                }
                term = &term * &pk[e as usize];
            }
            for (m2, c2) in term.terms {
                acc.add_term(m2, c2);
            }
        }
        Ok(acc)
    }

    /// Composition with a named substitution map that must cover every
    /// variable of this polynomial's ring.
    pub fn substitute(&self, images: &BTreeMap<String, Polynomial>) -> Result<Self, PolyError> {
        let ordered = self
            .ring
            .vars()
            .iter()
            .map(|v| images.get(v).cloned().ok_or_else(|| PolyError::IncompleteSubstitution(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.substitute_all(&ordered)
    }

    /// Replaces one variable by `image` (same ring), leaving the others fixed.
    pub fn replace_var(&self, var: &str, image: &Polynomial) -> Result<Self, PolyError> {
        let idx = self.ring.var_index(var).ok_or_else(|| PolyError::UnknownVariable(var.into()))?;
        self.check_ring(image)?;
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|k| if k == idx { image.clone() } else { Polynomial::var(&self.ring, k) })
            .collect();
        self.substitute_all(&images)
    }

    /// Returns `c` with `self = c * other`, if such a scalar exists.
    /// Two zero polynomials are proportional with `c = 1`.
    pub fn proportional(&self, other: &Self) -> Option<FieldElement> {
        if !self.same_ring(other) {
            return None;
        }
        if self.is_zero() && other.is_zero() {
            return Some(self.ring.field().one());
        }
        if self.len() != other.len() || other.is_zero() {
            return None;
        }
        let (m, a) = self.leading_term()?;
        let b = other.terms.get(m)?;
        let c = a.checked_div(b).ok()?;
        for (m, a) in &self.terms {
            let b = other.terms.get(m)?;
            if &(&c * b) != a {
                return None;
            }
        }
        Some(c)
    }

    /// Same coefficients viewed in another ring with the same variables
    /// (typically a different field); fails if a coefficient has no image.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<Self, PolyError> {
        if ring.nvars() != self.ring.nvars() {
            return Err(PolyError::ArityMismatch { expected: ring.nvars(), got: self.ring.nvars() });
        }
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Rational coefficients, when all coefficients lie in `Q`.
    pub fn rational_coefficients(&self) -> Option<Vec<(Monomial, BigRational)>> {
        self.terms.iter().map(|(m, c)| c.as_rational().map(|q| (m.clone(), q))).collect()
    }

    /// Primitive form over `Q`: integer coefficients with content 1 and a
    /// positive leading coefficient. Returns `(primitive, c)` with
    /// `self = c * primitive`.
    pub fn primitive(&self) -> Option<(Polynomial, BigRational)> {
        let coeffs = self.rational_coefficients()?;
        if coeffs.is_empty() {
            return Some((self.clone(), BigRational::one()));
        }
        let den = crate::field::common_denominator(coeffs.iter().map(|(_, q)| q));
        let ints: Vec<BigInt> = coeffs.iter().map(|(_, q)| (q * &den).to_integer()).collect();
        let mut content = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let scalar = BigRational::new(content.clone(), den);
        let field = self.ring.field();
        let terms = coeffs
            .iter()
            .zip(&ints)
            .map(|((m, _), x)| {
                let v = BigRational::from_integer(x / &content);
                (m.clone(), field.from_rational(&v).expect("integers map"))
            })
            .collect();
        Some((Polynomial { ring: self.ring.clone(), terms }, scalar))
    }

    /// Canonical printed form (descending canonical order), parseable back
    /// with [`parse`].
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = self.format_monomial(m);
            if let Some(q) = c.as_rational().filter(|_| c.is_atomic()) {
                crate::field::fmt_rational_coeff(&mut out, &q, &mono);
                continue;
            }
            let (negative, body) = if c.is_atomic() && c.is_negative_atom() {
                (true, (-c).to_string())
            } else if c.is_atomic() {
                (false, c.to_string())
            } else {
                (false, format!("({c})"))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    self.ring.vars[k].clone()
                } else {
                    format!("{}^{}", self.ring.vars[k], e)
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn source_ring() -> Arc<Ring> {
        Ring::graded(
            FieldSpec::GaussianRational,
            &["x10", "x11", "x20", "x21", "x30", "x31", "x40", "x41"],
            [("x10", "x11"), ("x20", "x21"), ("x30", "x31"), ("x40", "x41")],
        )
        .unwrap()
    }

    fn target_ring() -> Arc<Ring> {
        Ring::new(FieldSpec::Rational, &["u0", "u1", "u2", "u3", "u4"]).unwrap()
    }

    #[test]
    fn parse_product_of_all_variables() {
        let r = source_ring();
        let u4 = parse("4*x10*x11*x20*x21*x30*x31*x40*x41", &r).unwrap();
        assert_eq!(u4.len(), 1);
        assert_eq!(u4.multidegree(), Some(MultiDegree::uniform(2)));
    }

    #[test]
    fn cancellation_and_square() {
        let r = source_ring();
        assert!(parse("x10 - x10", &r).unwrap().is_zero());
        let sq = parse("(x10+x11)^2", &r).unwrap();
        assert_eq!(sq, parse("x10^2 + 2*x10*x11 + x11^2", &r).unwrap());
    }

    #[test]
    fn multidegrees_add_under_product() {
        let r = source_ring();
        let a = parse("(x10^2*x20^2+x11^2*x21^2)*(x30^2*x40^2+x31^2*x41^2)", &r).unwrap();
        let b = parse("(x11^2*x20^2+x10^2*x21^2)*(x31^2*x40^2+x30^2*x41^2)", &r).unwrap();
        assert_eq!((&a * &b).multidegree(), Some(MultiDegree::uniform(4)));
        assert!((&a * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn evaluation_and_derivatives() {
        let r = Ring::new(FieldSpec::Rational, &["u0", "u1", "u2", "u3", "u4", "u5"]).unwrap();
        let u0 = Polynomial::var(&r, 0);
        let q = FieldSpec::Rational;
        let pt = [q.one(), q.zero(), q.zero(), q.zero(), q.zero(), q.zero()];
        assert_eq!(u0.evaluate(&pt).unwrap(), q.one());
        assert_eq!(u0.pow(2).partial(0), u0.scale(&q.from_i64(2)));
        assert!(Polynomial::one(&r).partial(0).is_zero());
        assert!(matches!(u0.evaluate(&pt[..3]), Err(PolyError::ArityMismatch { .. })));
        assert!(u0.partial_named("w").is_err());
    }

    #[test]
    fn substitution_examples() {
        let r = target_ring();
        let h2 = parse("u2 - u3", &r).unwrap();
        let swap: BTreeMap<String, Polynomial> = ["u0", "u1", "u3", "u2", "u4"]
            .iter()
            .zip(r.vars())
            .map(|(img, v)| (v.clone(), parse(img, &r).unwrap()))
            .collect();
        assert_eq!(h2.substitute(&swap).unwrap(), -&h2);
        let ident: BTreeMap<String, Polynomial> =
            r.vars().iter().map(|v| (v.clone(), parse(v, &r).unwrap())).collect();
        assert_eq!(h2.substitute(&ident).unwrap(), h2);
        let mut partial = ident.clone();
        partial.remove("u4");
        assert_eq!(h2.substitute(&partial), Err(PolyError::IncompleteSubstitution("u4".into())));
    }

    #[test]
    fn proportionality() {
        let r = target_ring();
        let u0 = parse("u0", &r).unwrap();
        assert_eq!(parse("2*u0", &r).unwrap().proportional(&u0), Some(FieldSpec::Rational.from_i64(2)));
        assert_eq!(u0.proportional(&parse("u1", &r).unwrap()), None);
        let z = Polynomial::zero(&r);
        assert_eq!(z.proportional(&z), Some(FieldSpec::Rational.one()));
    }

    #[test]
    fn monomial_counts() {
        let r = source_ring();
        assert_eq!(monomials_of(MultiDegree::uniform(1), &r).unwrap().len(), 16);
        assert_eq!(monomials_of(MultiDegree::uniform(2), &r).unwrap().len(), 81);
        assert_eq!(MultiDegree::uniform(20).monomial_count(), 194_481);
        assert_eq!(monomials_of(MultiDegree::uniform(1), &target_ring()), Err(PolyError::Ungraded));
        assert_eq!(monomials_of_degree(10, 5).len(), 1001);
        let ms = monomials_of(MultiDegree([1, 0, 2, 1]), &r).unwrap();
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn primitive_form() {
        let r = target_ring();
        let p = parse("-3/2*u0^2 + 3/4*u1", &r).unwrap();
        let (prim, c) = p.primitive().unwrap();
        assert_eq!(prim, parse("2*u0^2 - u1", &r).unwrap());
        assert_eq!(c, BigRational::new((-3).into(), 4.into()));
    }

    fn arb_poly(ring: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
        let n = ring.nvars();
        proptest::collection::vec(
            (proptest::collection::vec(0u16..4, n), -20i64..20, 1i64..6, -3i64..3),
            0..8,
        )
        .prop_map(move |terms| {
            let f = ring.field().clone();
            Polynomial::from_terms(
                &ring,
                terms.into_iter().map(|(e, a, b, im)| {
                    let re = BigRational::new(a.into(), b.into());
                    let c = match &f {
                        FieldSpec::GaussianRational => {
                            FieldElement::Gaussian(re, BigRational::from_integer(im.into()))
                        }
                        _ => FieldElement::Rational(re),
                    };
                    (Monomial::from_exponents(&e), c)
                }),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly(source_ring())) {
            let text = p.to_text();
            prop_assert_eq!(parse(&text, p.ring()).unwrap(), p);
        }

        #[test]
        fn print_parse_round_trip_rational(p in arb_poly(target_ring())) {
            prop_assert_eq!(parse(&p.to_text(), p.ring()).unwrap(), p);
        }

        #[test]
        fn evaluation_is_multiplicative(p in arb_poly(target_ring()), q in arb_poly(target_ring()),
                                        pt in proptest::collection::vec(-5i64..5, 5)) {
            let point: Vec<FieldElement> = pt.iter().map(|&v| FieldSpec::Rational.from_i64(v)).collect();
            let lhs = (&p * &q).evaluate(&point).unwrap();
            let rhs = &p.evaluate(&point).unwrap() * &q.evaluate(&point).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn proportional_recovers_scalar(p in arb_poly(source_ring()), a in 1i64..9, b in -4i64..4) {
            prop_assume!(!p.is_zero());
            let c = FieldElement::Gaussian(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
            prop_assert_eq!(p.scale(&c).proportional(&p), Some(c));
        }

        #[test]
        fn multihomogeneity_is_preserved(coeffs in proptest::collection::vec(-3i64..3, 12),
                                         other in proptest::collection::vec(-3i64..3, 12)) {
            let r = source_ring();
            let md = MultiDegree([1, 2, 0, 1]);
            let basis = monomials_of(md, &r).unwrap();
            let build = |cs: &[i64]| Polynomial::from_terms(
                &r, basis.iter().zip(cs).map(|(m, &c)| (m.clone(), r.field().from_i64(c)))).unwrap();
            let (p, q) = (build(&coeffs), build(&other));
            prop_assert!((&p + &q).is_multihomogeneous());
            let prod = &p * &q;
            prop_assert!(prod.is_zero() || prod.multidegree() == Some(md + md));
            let d = p.partial(0);
            prop_assert!(d.is_zero() || d.multidegree() == Some(MultiDegree([0, 2, 0, 1])));
        }
    }
}
