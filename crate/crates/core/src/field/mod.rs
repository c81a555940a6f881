//! Exact coefficient fields: `Q`, `Q(i)`, `F_p` and simple extensions
//! `Q[t]/(m(t))`.
//!
//! Elements carry their field kind; arithmetic between different kinds is
//! rejected by the `checked_*` methods and panics in the operator impls.

mod extension;
pub mod modular;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use extension::ExtensionModulus;
pub(crate) use extension::format_univariate;
pub use modular::{rational_reconstruct, ModPrime};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("mixed-field operands: {left} vs {right}")]
    MixedFields { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor modulo {modulus} (modulus is reducible)")]
    ZeroDivisor { modulus: String },
    #[error("denominator divisible by {p}")]
    DenominatorDivisible { p: u64 },
    #[error("{0} is not an admissible prime")]
    NotPrime(u64),
    #[error("modulus {0} listed twice")]
    DuplicateModulus(u64),
    #[error("no rational reconstruction within bounds using primes {primes:?}")]
    ReconstructionFailed { primes: Vec<u64> },
    #[error("invalid extension modulus: {0}")]
    InvalidModulus(String),
    #[error("cannot map {value} into {target}")]
    NoEmbedding { value: String, target: String },
}

/// Which field a value lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    GaussianRational,
    Prime(u64),
    Extension(Arc<ExtensionModulus>),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !(3..(1u64 << 32)).contains(&p) || !modular::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn extension(var: &str, coeffs: Vec<BigRational>) -> Result<Self, FieldError> {
        Ok(FieldSpec::Extension(Arc::new(ExtensionModulus::new(var, coeffs)?)))
    }

    /// `Q[t]/(m)` from integer coefficients, low degree first.
    pub fn extension_from_ints(var: &str, coeffs: &[i64]) -> Result<Self, FieldError> {
        Self::extension(var, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_rational(&BigRational::zero()).expect("zero maps everywhere")
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(&BigRational::one()).expect("one maps everywhere")
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_rational(&BigRational::from_integer(v.into())).expect("integers map everywhere")
    }

    /// Image of a rational number; fails only for `F_p` with `p | denominator`.
    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElement, FieldError> {
        Ok(match self {
            FieldSpec::Rational => FieldElement::Rational(v.clone()),
            FieldSpec::GaussianRational => FieldElement::Gaussian(v.clone(), BigRational::zero()),
            FieldSpec::Prime(p) => FieldElement::Prime {
                value: ModPrime::new(*p).from_rational(v)?,
                modulus: *p,
            },
            FieldSpec::Extension(m) => FieldElement::Extension {
                coeffs: extension::trim(vec![v.clone()]),
                modulus: m.clone(),
            },
        })
    }

    /// The imaginary unit of `Q(i)`.
    pub fn imaginary_unit(&self) -> Option<FieldElement> {
        match self {
            FieldSpec::GaussianRational => {
                Some(FieldElement::Gaussian(BigRational::zero(), BigRational::one()))
            }
            _ => None,
        }
    }

    /// The generator `t` of `Q[t]/(m)`.
    pub fn generator(&self) -> Option<FieldElement> {
        match self {
            FieldSpec::Extension(m) => Some(FieldElement::Extension {
                coeffs: m.reduce(vec![BigRational::zero(), BigRational::one()]),
                modulus: m.clone(),
            }),
            _ => None,
        }
    }

    /// Maps `x` into this field when there is a canonical embedding
    /// (identity, or `Q` into any field).
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if &x.field() == self {
            return Ok(x.clone());
        }
        match x {
            FieldElement::Rational(q) => self.from_rational(q),
            FieldElement::Gaussian(a, b) if b.is_zero() => self.from_rational(a),
            FieldElement::Extension { coeffs, .. } if coeffs.len() <= 1 => {
                self.from_rational(coeffs.first().unwrap_or(&BigRational::zero()))
            }
            _ => Err(FieldError::NoEmbedding { value: x.to_string(), target: self.to_string() }),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::GaussianRational => write!(f, "QQi"),
            FieldSpec::Prime(p) => write!(f, "GF {p}"),
            FieldSpec::Extension(m) => write!(f, "QQ[{}]/({})", m.var(), m),
        }
    }
}

/// A value in one of the supported exact fields, always in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    /// `re + im*i`
    Gaussian(BigRational, BigRational),
    Prime { value: u64, modulus: u64 },
    /// Polynomial in the generator of degree below that of the modulus.
    Extension { coeffs: Vec<BigRational>, modulus: Arc<ExtensionModulus> },
}

impl FieldElement {
    pub fn rational(n: i64, d: i64) -> Self {
        FieldElement::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        FieldElement::Gaussian(re, im)
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rational,
            FieldElement::Gaussian(..) => FieldSpec::GaussianRational,
            FieldElement::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
            FieldElement::Extension { modulus, .. } => FieldSpec::Extension(modulus.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Gaussian(a, b) => a.is_zero() && b.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
            FieldElement::Extension { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Gaussian(a, b) => a.is_one() && b.is_zero(),
            FieldElement::Prime { value, .. } => *value == 1,
            FieldElement::Extension { coeffs, .. } => coeffs.len() == 1 && coeffs[0].is_one(),
        }
    }

    /// The rational value, when the element lies in the prime subfield `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q.clone()),
            FieldElement::Gaussian(a, b) if b.is_zero() => Some(a.clone()),
            FieldElement::Extension { coeffs, .. } if coeffs.len() <= 1 => {
                Some(coeffs.first().cloned().unwrap_or_else(BigRational::zero))
            }
            _ => None,
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        let ok = match (self, other) {
            (FieldElement::Rational(_), FieldElement::Rational(_)) => true,
            (FieldElement::Gaussian(..), FieldElement::Gaussian(..)) => true,
            (FieldElement::Prime { modulus: p, .. }, FieldElement::Prime { modulus: q, .. }) => p == q,
            (FieldElement::Extension { modulus: a, .. }, FieldElement::Extension { modulus: b, .. }) => {
                Arc::ptr_eq(a, b) || a == b
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(FieldError::MixedFields {
                left: self.field().to_string(),
                right: other.field().to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Gaussian(a, b), FieldElement::Gaussian(c, d)) => {
                FieldElement::Gaussian(a + c, b + d)
            }
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime { value: (a + b) % modulus, modulus: *modulus }
            }
            (
                FieldElement::Extension { coeffs: a, modulus },
                FieldElement::Extension { coeffs: b, .. },
            ) => {
                let n = a.len().max(b.len());
                let zero = BigRational::zero();
                let sum = (0..n).map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero)).collect();
                FieldElement::Extension { coeffs: extension::trim(sum), modulus: modulus.clone() }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Gaussian(a, b), FieldElement::Gaussian(c, d)) => {
                FieldElement::Gaussian(a * c - b * d, a * d + b * c)
            }
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime { value: a * b % modulus, modulus: *modulus }
            }
            (
                FieldElement::Extension { coeffs: a, modulus },
                FieldElement::Extension { coeffs: b, .. },
            ) => FieldElement::Extension { coeffs: modulus.mul(a, b), modulus: modulus.clone() },
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Gaussian(a, b) => {
                let norm = a * a + b * b;
                FieldElement::Gaussian(a / &norm, -(b / &norm))
            }
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: ModPrime::new(*modulus).inv(*value).expect("nonzero residue"),
                modulus: *modulus,
            },
            FieldElement::Extension { coeffs, modulus } => {
                FieldElement::Extension { coeffs: modulus.inv(coeffs)?, modulus: modulus.clone() }
            }
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.field().one();
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

    fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Gaussian(a, b) => FieldElement::Gaussian(-a, -b),
            FieldElement::Prime { value, modulus } => {
                FieldElement::Prime { value: (modulus - value) % modulus, modulus: *modulus }
            }
            FieldElement::Extension { coeffs, modulus } => FieldElement::Extension {
                coeffs: coeffs.iter().map(|c| -c).collect(),
                modulus: modulus.clone(),
            },
        }
    }

    /// Complex conjugation on `Q(i)`; identity elsewhere.
    pub fn conj(&self) -> Self {
        match self {
            FieldElement::Gaussian(a, b) => FieldElement::Gaussian(a.clone(), -b),
            other => other.clone(),
        }
    }

    /// Image of a rational element in `F_p`.
    pub fn reduce_mod_prime(&self, p: u64) -> Result<Self, FieldError> {
        let q = match self {
            FieldElement::Rational(q) => q,
            other => {
                return Err(FieldError::NoEmbedding {
                    value: other.to_string(),
                    target: format!("GF {p}"),
                })
            }
        };
        FieldSpec::prime(p)?.from_rational(q)
    }

    /// For extension elements, the coefficient vector in the generator.
    pub fn extension_coeffs(&self) -> Option<&[BigRational]> {
        match self {
            FieldElement::Extension { coeffs, .. } => Some(coeffs),
            _ => None,
        }
    }

    /// Apply a `Q`-algebra map on an extension element given the image of
    /// the generator (e.g. `t -> -t` for a conjugate root).
    pub fn map_generator(&self, image: &FieldElement) -> Result<Self, FieldError> {
        match self {
            FieldElement::Extension { coeffs, .. } => {
                let target = image.field();
                let mut acc = target.zero();
                for c in coeffs.iter().rev() {
                    acc = acc.checked_mul(image)?.checked_add(&target.from_rational(c)?)?;
                }
                Ok(acc)
            }
            other => image.field().embed(other),
        }
    }

    /// True when printing needs no parentheses inside a product.
    pub(crate) fn is_atomic(&self) -> bool {
        match self {
            FieldElement::Rational(_) | FieldElement::Prime { .. } => true,
            FieldElement::Gaussian(a, b) => a.is_zero() || b.is_zero(),
            FieldElement::Extension { coeffs, .. } => {
                coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
            }
        }
    }

    /// True for an atomic element whose printed form starts with a minus sign.
    pub(crate) fn is_negative_atom(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Gaussian(a, b) if b.is_zero() => a.is_negative(),
            FieldElement::Gaussian(a, b) if a.is_zero() => b.is_negative(),
            FieldElement::Extension { coeffs, .. } if self.is_atomic() => {
                coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
            }
            _ => false,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Gaussian(a, b) => {
                write!(f, "{}", format_univariate(&extension::trim(vec![a.clone(), b.clone()]), "i"))
            }
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
            FieldElement::Extension { coeffs, modulus } => {
                write!(f, "{}", format_univariate(coeffs, modulus.var()))
            }
        }
    }
}

/// Appends `± c*mono` to `out` using the expression grammar.
pub(crate) fn fmt_rational_coeff(out: &mut String, c: &BigRational, mono: &str) {
    let negative = c.is_negative();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let abs = c.abs();
    if mono.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&format!("{abs}*{mono}"));
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Lowest common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_sum() {
        let s = FieldElement::rational(1, 2) + FieldElement::rational(1, 3);
        assert_eq!(s, FieldElement::rational(5, 6));
    }

    #[test]
    fn gaussian_norm_product() {
        let a = FieldElement::gaussian(q(1, 1), q(1, 1));
        assert_eq!(&a * &a.conj(), FieldSpec::GaussianRational.from_i64(2));
        let i = FieldSpec::GaussianRational.imaginary_unit().unwrap();
        assert_eq!(i.inv().unwrap(), -&i);
    }

    #[test]
    fn sqrt5_extension() {
        let k = FieldSpec::extension_from_ints("t", &[-5, 0, 1]).unwrap();
        let t = k.generator().unwrap();
        assert_eq!(&t * &t, k.from_i64(5));
        let t_inv = t.inv().unwrap();
        assert_eq!(t_inv, &t * &k.from_rational(&q(1, 5)).unwrap());
        assert_eq!(FieldElement::rational(2, 3).inv().unwrap(), FieldElement::rational(3, 2));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldElement::rational(1, 2);
        let b = FieldSpec::GaussianRational.one();
        assert!(matches!(a.checked_add(&b), Err(FieldError::MixedFields { .. })));
        let f7 = FieldSpec::prime(7).unwrap().one();
        let f11 = FieldSpec::prime(11).unwrap().one();
        assert!(f7.checked_mul(&f11).is_err());
    }

    #[test]
    fn zero_inverse_and_zero_divisor() {
        assert_eq!(FieldSpec::Rational.zero().inv(), Err(FieldError::DivisionByZero));
        // t^2 - 1 = (t - 1)(t + 1) is reducible; t - 1 has no inverse.
        let k = FieldSpec::extension_from_ints("t", &[-1, 0, 1]).unwrap();
        let t = k.generator().unwrap();
        let z = &t - &k.one();
        assert!(matches!(z.inv(), Err(FieldError::ZeroDivisor { .. })));
    }

    #[test]
    fn reduce_mod_prime_examples() {
        let r = FieldElement::rational(5, 6).reduce_mod_prime(7).unwrap();
        assert_eq!(r, FieldElement::Prime { value: 2, modulus: 7 });
        assert!(FieldElement::rational(1, 2).reduce_mod_prime(2).is_err());
        let r = FieldElement::rational(-1, 1).reduce_mod_prime(7).unwrap();
        assert_eq!(r, FieldElement::Prime { value: 6, modulus: 7 });
    }

    #[test]
    fn conjugate_root_map() {
        let k = FieldSpec::extension_from_ints("t", &[108, 0, -68, 0, 11]).unwrap();
        let t = k.generator().unwrap();
        let x = &(&t * &t) * &t + k.from_i64(2);
        let y = x.map_generator(&-&t).unwrap();
        assert_eq!(y, k.from_i64(2) - &(&t * &t) * &t);
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn arb_element(kind: usize) -> BoxedStrategy<FieldElement> {
        match kind {
            0 => arb_rational().prop_map(FieldElement::Rational).boxed(),
            1 => (arb_rational(), arb_rational()).prop_map(|(a, b)| FieldElement::Gaussian(a, b)).boxed(),
            2 => (0u64..10007).prop_map(|v| FieldElement::Prime { value: v, modulus: 10007 }).boxed(),
            _ => proptest::collection::vec(arb_rational(), 4)
                .prop_map(|c| {
                    let k = FieldSpec::extension_from_ints("t", &[108, 0, -68, 0, 11]).unwrap();
                    let t = k.generator().unwrap();
                    c.iter().rev().fold(k.zero(), |acc, ci| {
                        &(&acc * &t) + &k.from_rational(ci).unwrap()
                    })
                })
                .boxed(),
        }
    }

    proptest! {
        #[test]
        fn field_axioms(kind in 0usize..4, seed in any::<u64>()) {
            use proptest::strategy::ValueTree;
            use proptest::test_runner::{Config, TestRunner, RngAlgorithm, TestRng};
            let mut runner = TestRunner::new_with_rng(
                Config::default(),
                TestRng::from_seed(RngAlgorithm::ChaCha, &{
                    let mut s = [0u8; 32];
                    s[..8].copy_from_slice(&seed.to_le_bytes());
                    s
                }),
            );
            let strat = arb_element(kind);
            let a = strat.new_tree(&mut runner).unwrap().current();
            let b = strat.new_tree(&mut runner).unwrap().current();
            let c = strat.new_tree(&mut runner).unwrap().current();
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
