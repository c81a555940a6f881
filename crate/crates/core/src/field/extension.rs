//! Simple algebraic extensions `Q[t]/(m(t))`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{fmt_rational_coeff, FieldError};

/// Defining polynomial of a simple extension. Coefficients are stored
/// low degree first; `monic` is the normalised copy used for reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionModulus {
    var: String,
    declared: Vec<BigRational>,
    monic: Vec<BigRational>,
}

impl ExtensionModulus {
    pub fn new(var: impl Into<String>, coeffs: Vec<BigRational>) -> Result<Self, FieldError> {
        let declared = trim(coeffs);
        if declared.len() < 2 {
            return Err(FieldError::InvalidModulus("modulus must be non-constant".into()));
        }
        let lead = declared.last().unwrap().clone();
        let monic = declared.iter().map(|c| c / &lead).collect();
        Ok(Self { var: var.into(), declared, monic })
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn degree(&self) -> usize {
        self.monic.len() - 1
    }

    pub fn declared_coeffs(&self) -> &[BigRational] {
        &self.declared
    }

    /// Remainder of `a` modulo the monic modulus.
    pub(crate) fn reduce(&self, mut a: Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree();
        while a.len() > n {
            let top = a.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = a.len() - n;
            for (k, m) in self.monic[..n].iter().enumerate() {
                a[shift + k] -= &top * m;
            }
        }
        trim(a)
    }

    pub(crate) fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Inverse via the extended Euclidean algorithm in `Q[t]`.
    pub(crate) fn inv(&self, a: &[BigRational]) -> Result<Vec<BigRational>, FieldError> {
        if a.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.monic.clone(), a.to_vec());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return Err(FieldError::ZeroDivisor { modulus: self.to_string() });
        }
        let c = r1[0].clone();
        Ok(self.reduce(s1.into_iter().map(|x| x / &c).collect()))
    }
}

impl fmt::Display for ExtensionModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_univariate(&self.declared, &self.var))
    }
}

/// Renders a low-degree-first coefficient vector as a polynomial in `var`,
/// highest degree first, in the crate's expression grammar.
pub(crate) fn format_univariate(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            d => format!("{var}^{d}"),
        };
        fmt_rational_coeff(&mut out, c, &mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let c = &top / lead;
        let shift = r.len() - db;
        for (k, bk) in b[..db].iter().enumerate() {
            r[shift + k] -= &c * bk;
        }
        q[shift] = c;
    }
    (trim(q), trim(r))
}
