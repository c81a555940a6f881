//! Algebraic relations among polynomials and degree-bounded ideal membership,
//! both reduced to exact linear algebra.
//!
//! A relation of degree `n` among `p_0, ..., p_{m-1}` is a form `R` in fresh
//! variables with `R(p_0, ..., p_{m-1}) = 0`. Small cases expand every
//! product of `n` inputs and take the kernel of the coefficient matrix.
//! Large cases sample the products at random points modulo several primes
//! instead, then certify the lifted relation on an interpolation grid.

mod grid;
mod membership;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::modular::{random_prime, ModPrime};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{self, modp::Echelon, LinalgConfig, LinalgError, SparseMatrix};
use crate::par;
use crate::poly::{Monomial, MultiDegree, PolyError, Polynomial, Ring};

pub use grid::GridCertificate;
pub use membership::{ideal_slice, membership, proportional_mod_ideal, MembershipCertificate, SliceDegree};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelationError {
    #[error("no input polynomials")]
    Empty,
    #[error("relation degree must be at least 1")]
    ZeroDegree,
    #[error("inputs live in different rings")]
    RingMismatch,
    #[error("inputs have different degrees: {0} vs {1}")]
    MixedDegrees(String, String),
    #[error("input {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("expected {expected} names, got {got}")]
    Names { expected: usize, got: usize },
    #[error("the evaluation route needs rational coefficients")]
    NotRational,
    #[error("relation did not certify: {0}")]
    Uncertified(String),
    #[error("degree bound {bound} is below the target degree {degree}")]
    Bound { bound: u32, degree: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Exponent vector of a product of `n` inputs, one entry per input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymIndex(pub Vec<u16>);

impl SymIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_exponents(&self.0)
    }
}

impl fmt::Display for SymIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All exponent vectors of length `m` summing to `n`, in the order of the
/// recursive construction "first input times everything of degree `n-1`,
/// then the products avoiding the first input": lexicographic in the sorted
/// list of factors, i.e. decreasing lexicographic in the exponents.
pub fn sym_indices(m: usize, n: u32) -> Vec<SymIndex> {
    fn rec(m: usize, k: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<SymIndex>) {
        if k + 1 == m {
            cur[k] = left as u16;
            out.push(SymIndex(cur.clone()));
            cur[k] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e as u16;
            rec(m, k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(m, 0, n, &mut vec![0; m], &mut out);
    out
}

/// Number of exponent vectors: `C(m + n - 1, n)`.
pub fn sym_count(m: usize, n: u32) -> usize {
    let (top, k) = (m as u128 + n as u128 - 1, n as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc as usize
}

/// Shared degree of the inputs: a multidegree in a graded ring, otherwise
/// a total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum InputDegree {
    Multi(MultiDegree),
    Total(u32),
}

fn input_degree(polys: &[Polynomial]) -> Result<InputDegree, RelationError> {
    let first = polys.first().ok_or(RelationError::Empty)?;
    if polys.iter().any(|p| !p.same_ring(first)) {
        return Err(RelationError::RingMismatch);
    }
    if first.ring().grading().is_some() {
        let degs: Vec<Option<MultiDegree>> = polys.iter().map(|p| p.multidegree()).collect();
        if let Some(k) = degs.iter().position(|d| d.is_none()) {
            return Err(RelationError::Inhomogeneous(k));
        }
        let d0 = degs[0].unwrap();
        if let Some(d) = degs.iter().flatten().find(|&&d| d != d0) {
            return Err(RelationError::MixedDegrees(d0.to_string(), d.to_string()));
        }
        Ok(InputDegree::Multi(d0))
    } else {
        let mut out = None;
        for (k, p) in polys.iter().enumerate() {
            if !p.is_homogeneous() {
                return Err(RelationError::Inhomogeneous(k));
            }
            let d = p.total_degree().unwrap_or(0);
            match out {
                None => out = Some(d),
                Some(d0) if d0 != d => return Err(RelationError::MixedDegrees(d0.to_string(), d.to_string())),
                _ => {}
            }
        }
        Ok(InputDegree::Total(out.unwrap_or(0)))
    }
}

/// All products of `n` inputs, in [`sym_indices`] order.
pub fn sym_products(polys: &[Polynomial], n: u32) -> Result<Vec<(SymIndex, Polynomial)>, RelationError> {
    input_degree(polys)?;
    let idx = sym_indices(polys.len(), n);
    let powers: Vec<Vec<Polynomial>> = par::map(polys, |p| {
        let mut v = vec![Polynomial::one(p.ring()), p.clone()];
        for _ in 2..=n {
            let next = v.last().unwrap() * p;
            v.push(next);
        }
        v
    });
    let products = par::map(&idx, |e| {
        let mut acc = Polynomial::one(polys[0].ring());
        for (j, &k) in e.0.iter().enumerate() {
            if k > 0 {
                acc = &acc * &powers[j][k as usize];
            }
        }
        acc
    });
    Ok(idx.into_iter().zip(products).collect())
}

/// How the relation space was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// Kernel of the coefficient matrix of the expanded products.
    Coefficients,
    /// Kernel of products sampled at random points modulo primes.
    Evaluation,
}

/// Why the returned relations are exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// Each relation was substituted and expanded to the zero polynomial.
    Expansion,
    /// Each relation vanishes on an interpolation grid, checked modulo
    /// primes whose product exceeds a bound on the values.
    Grid(GridCertificate),
    /// Full column rank modulo a prime: no relation exists over `Q`.
    FullRank { prime: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationOptions {
    pub linalg: LinalgConfig,
    /// Forces a route; `None` picks by estimated matrix size.
    pub route: Option<Route>,
    /// Largest (columns x rows) size handled by the coefficient route.
    pub coefficient_limit: usize,
}

impl Default for RelationOptions {
    fn default() -> Self {
        Self { linalg: LinalgConfig::default(), route: None, coefficient_limit: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationSpace {
    pub degree: u32,
    pub names: Vec<String>,
    /// Basis of the relations, each a primitive integer form over `Q` (or
    /// a canonical echelon vector over other fields).
    pub basis: Vec<Polynomial>,
    pub columns: usize,
    /// Monomial rows (coefficient route) or sample points (evaluation route).
    pub rows: usize,
    pub rank: usize,
    pub route: Route,
    pub primes: Vec<u64>,
    pub certification: Certification,
}

impl RelationSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Estimated number of monomials of a product of `n` inputs.
fn row_bound(deg: InputDegree, n: u32, nvars: usize) -> usize {
    match deg {
        InputDegree::Multi(md) => md.scaled(n).monomial_count(),
        InputDegree::Total(d) => sym_count(nvars, d * n),
    }
}

/// Basis of all degree-`n` forms `R` in variables `names` with
/// `R(polys) = 0`, each certified exactly.
pub fn relation_space(
    polys: &[Polynomial],
    n: u32,
    names: &[&str],
    opts: &RelationOptions,
) -> Result<RelationSpace, RelationError> {
    if n == 0 {
        return Err(RelationError::ZeroDegree);
    }
    let deg = input_degree(polys)?;
    if names.len() != polys.len() {
        return Err(RelationError::Names { expected: polys.len(), got: names.len() });
    }
    let rational = polys.iter().all(|p| p.rational_coefficients().is_some());
    // rational inputs are moved to Q so that the multi-modular paths apply
    let owned: Vec<Polynomial>;
    let polys = if rational && *polys[0].ring().field() != FieldSpec::Rational {
        let q = polys[0].ring().with_field(FieldSpec::Rational);
        owned = polys.iter().map(|p| p.to_ring(&q)).collect::<Result<_, _>>()?;
        &owned[..]
    } else {
        polys
    };
    let target = Ring::new(polys[0].ring().field().clone(), names)?;
    let columns = sym_count(polys.len(), n);
    let route = opts.route.unwrap_or_else(|| {
        let size = columns.saturating_mul(row_bound(deg, n, polys[0].ring().nvars()));
        if size <= opts.coefficient_limit || !rational {
            Route::Coefficients
        } else {
            Route::Evaluation
        }
    });
    match route {
        Route::Coefficients => by_coefficients(polys, n, &target, &opts.linalg),
        Route::Evaluation if !rational => Err(RelationError::NotRational),
        Route::Evaluation => by_evaluation(polys, n, &target, opts),
    }
}

fn relation_poly(target: &Arc<Ring>, idx: &[SymIndex], coeffs: &[FieldElement]) -> Result<Polynomial, PolyError> {
    Polynomial::from_terms(target, idx.iter().zip(coeffs).map(|(e, c)| (e.monomial(), c.clone())))
}

fn by_coefficients(
    polys: &[Polynomial],
    n: u32,
    target: &Arc<Ring>,
    cfg: &LinalgConfig,
) -> Result<RelationSpace, RelationError> {
    let products = sym_products(polys, n)?;
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (_, p) in &products {
        for m in p.terms().keys() {
            row_of.entry(m.clone()).or_insert(0);
        }
    }
    for (k, v) in row_of.values_mut().enumerate() {
        *v = k;
    }
    let field = target.field().clone();
    let mut rows: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); row_of.len()];
    for (j, (_, p)) in products.iter().enumerate() {
        for (m, c) in p.terms() {
            rows[row_of[m]].push((j, c.clone()));
        }
    }
    let mut mat = SparseMatrix::new(field, 0, products.len());
    for r in rows {
        mat.push_row(r)?;
    }
    let cert = linalg::kernel(&mat, cfg)?;
    let idx: Vec<SymIndex> = products.iter().map(|(e, _)| e.clone()).collect();
    let mut basis = Vec::with_capacity(cert.basis.len());
    for v in &cert.basis {
        let mut sum = Polynomial::zero(polys[0].ring());
        for ((_, p), c) in products.iter().zip(v) {
            if !c.is_zero() {
                sum = &sum + &p.scale(c);
            }
        }
        if !sum.is_zero() {
            return Err(RelationError::Uncertified("substituted relation is nonzero".into()));
        }
        basis.push(relation_poly(target, &idx, v)?);
    }
    Ok(RelationSpace {
        degree: n,
        names: target.vars().to_vec(),
        columns: products.len(),
        rows: mat.nrows(),
        rank: cert.rank(),
        route: Route::Coefficients,
        primes: cert.primes.clone(),
        certification: Certification::Expansion,
        basis,
    })
}

/// Rational polynomial reduced modulo a prime, as `(exponents, residue)`.
pub(crate) type ModTerms = Vec<(Vec<u16>, u64)>;

pub(crate) fn terms_mod(p: &Polynomial, prime: &ModPrime) -> Option<ModTerms> {
    p.rational_coefficients()?
        .into_iter()
        .map(|(m, q)| prime.from_rational(&q).ok().map(|r| (m.exponents().to_vec(), r)))
        .filter(|t| t.as_ref().is_none_or(|(_, r)| *r != 0))
        .collect()
}

/// Value of a reduced polynomial given per-variable power tables.
pub(crate) fn eval_terms(terms: &ModTerms, powers: &[Vec<u64>], prime: &ModPrime) -> u64 {
    let mut acc = 0;
    for (e, c) in terms {
        let mut t = *c;
        for (k, &x) in e.iter().enumerate() {
            if x > 0 {
                t = prime.mul(t, powers[k][x as usize]);
            }
        }
        acc = prime.add(acc, t);
    }
    acc
}

pub(crate) fn power_table(x: &[u64], max: usize, prime: &ModPrime) -> Vec<Vec<u64>> {
    x.iter()
        .map(|&v| {
            let mut row = Vec::with_capacity(max + 1);
            row.push(1);
            for k in 1..=max {
                row.push(prime.mul(row[k - 1], v));
            }
            row
        })
        .collect()
}

/// Evaluates all products of `n` values at once: every monomial of degree
/// at most `n` is its parent times one value.
pub(crate) struct ProductTable {
    parents: Vec<(u32, u8)>,
    top: Vec<usize>,
}

impl ProductTable {
    pub(crate) fn new(m: usize, idx: &[SymIndex]) -> Self {
        let n = idx.first().map_or(0, |e| e.degree());
        let mut level: Vec<(Vec<u16>, usize)> = vec![(vec![0; m], 0)];
        let mut parents = vec![(0u32, 0u8)];
        let mut pos: std::collections::HashMap<Vec<u16>, usize> = std::collections::HashMap::new();
        for _ in 0..n {
            let mut next = Vec::new();
            for (e, at) in &level {
                let last = e.iter().rposition(|&x| x > 0).unwrap_or(0);
                for j in last..m {
                    let mut f = e.clone();
                    f[j] += 1;
                    parents.push((*at as u32, j as u8));
                    next.push((f, parents.len() - 1));
                }
            }
            level = next;
        }
        for (e, at) in level {
            pos.insert(e, at);
        }
        let top = idx.iter().map(|e| pos[&e.0]).collect();
        Self { parents, top }
    }

    /// Products in the order of the index list this table was built for.
    pub(crate) fn values(&self, v: &[u64], prime: &ModPrime, scratch: &mut Vec<u64>) -> Vec<u64> {
        self.fill(v, prime, scratch);
        self.top.iter().map(|&k| scratch[k]).collect()
    }

    pub(crate) fn fill(&self, v: &[u64], prime: &ModPrime, scratch: &mut Vec<u64>) {
        scratch.clear();
        scratch.push(1);
        for &(p, j) in &self.parents[1..] {
            let x = prime.mul(scratch[p as usize], v[j as usize]);
            scratch.push(x);
        }
    }

    /// `sum_k c[k] * product_k` without materializing the products.
    pub(crate) fn dot(&self, v: &[u64], c: &[u64], prime: &ModPrime, scratch: &mut Vec<u64>) -> u64 {
        self.fill(v, prime, scratch);
        let mut acc = 0;
        for (&k, &ck) in self.top.iter().zip(c) {
            if ck != 0 {
                acc = prime.add(acc, prime.mul(ck, scratch[k]));
            }
        }
        acc
    }
}

fn max_exponent(polys: &[Polynomial]) -> usize {
    polys
        .iter()
        .flat_map(|p| p.terms().keys().flat_map(|m| m.exponents().iter().copied()))
        .max()
        .unwrap_or(0) as usize
}

fn mix(a: u64, b: u64, c: u64) -> u64 {
    let mut x = a ^ b.rotate_left(21) ^ c.rotate_left(42);
    x = (x ^ (x >> 33)).wrapping_mul(0xff51afd7ed558ccd);
    x = (x ^ (x >> 33)).wrapping_mul(0xc4ceb9fe1a85ec53);
    x ^ (x >> 33)
}

/// Spare sample points beyond the number of unknowns.
const EXTRA_POINTS: usize = 8;

/// Values of `R(polys)` at a random point modulo a random prime; zero for a
/// true relation.
fn spot_check(polys: &[Polynomial], table: &ProductTable, coeffs: &[BigInt], seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prime = random_prime(&mut rng, &[]);
    let Some(mp): Option<Vec<ModTerms>> = polys.iter().map(|p| terms_mod(p, &prime)).collect() else {
        return true;
    };
    let x: Vec<u64> = (0..polys[0].ring().nvars()).map(|_| rng.gen_range(0..prime.modulus())).collect();
    let pw = power_table(&x, max_exponent(polys), &prime);
    let v: Vec<u64> = mp.iter().map(|t| eval_terms(t, &pw, &prime)).collect();
    let c: Vec<u64> = coeffs.iter().map(|x| prime.from_bigint(x)).collect();
    table.dot(&v, &c, &prime, &mut Vec::new()) == 0
}

fn by_evaluation(
    polys: &[Polynomial],
    n: u32,
    target: &Arc<Ring>,
    opts: &RelationOptions,
) -> Result<RelationSpace, RelationError> {
    let idx = sym_indices(polys.len(), n);
    let ncols = idx.len();
    let npoints = ncols + EXTRA_POINTS;
    let nvars = polys[0].ring().nvars();
    let maxe = max_exponent(polys);
    let table = ProductTable::new(polys.len(), &idx);
    let seed = opts.linalg.seed;

    let image = |prime: ModPrime| {
        let mp: Vec<ModTerms> = polys.iter().map(|p| terms_mod(p, &prime)).collect::<Option<_>>()?;
        let rows = par::map_range(npoints, |r| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, prime.modulus(), r as u64));
            let x: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..prime.modulus())).collect();
            let pw = power_table(&x, maxe, &prime);
            let v: Vec<u64> = mp.iter().map(|t| eval_terms(t, &pw, &prime)).collect();
            table.values(&v, &prime, &mut Vec::new())
        });
        let e = Echelon::dense(rows, ncols, prime);
        let values = e.kernel_pivot_entries().concat();
        Some((e.pivots, e.sources, values))
    };
    let accept = |values: &[BigRational], pivots: &[usize]| -> Option<(Vec<Vec<BigInt>>, Option<GridCertificate>)> {
        let vectors: Vec<Vec<BigInt>> = linalg::expand_kernel(values, pivots, ncols)
            .into_iter()
            .map(|v| {
                linalg::primitive(v)
                    .into_iter()
                    .map(|x| x.as_rational().expect("rational").to_integer())
                    .collect()
            })
            .collect();
        if vectors.is_empty() {
            return Some((vectors, None));
        }
        if !vectors.iter().enumerate().all(|(k, c)| spot_check(polys, &table, c, mix(seed, 0x5907, k as u64))) {
            return None;
        }
        if polys[0].ring().grading().is_some() {
            let cert = grid::certify(polys, &table, &vectors, n, seed)?;
            Some((vectors, Some(cert)))
        } else {
            expansion_check(polys, &idx, &vectors).then_some((vectors, None))
        }
    };
    let ((vectors, grid_cert), pivots, _, primes) = linalg::lift(&opts.linalg, image, accept)?;
    let certification = match grid_cert {
        Some(g) => Certification::Grid(g),
        None if vectors.is_empty() => Certification::FullRank { prime: primes[0] },
        None => Certification::Expansion,
    };
    let basis = vectors
        .iter()
        .map(|c| {
            let coeffs: Vec<FieldElement> = c.iter().map(|x| FieldElement::Rational(BigRational::from_integer(x.clone()))).collect();
            relation_poly(target, &idx, &coeffs)
        })
        .collect::<Result<_, _>>()?;
    Ok(RelationSpace {
        degree: n,
        names: target.vars().to_vec(),
        columns: ncols,
        rows: npoints,
        rank: pivots.len(),
        route: Route::Evaluation,
        primes,
        certification,
        basis,
    })
}

fn expansion_check(polys: &[Polynomial], idx: &[SymIndex], vectors: &[Vec<BigInt>]) -> bool {
    let Ok(products) = sym_products(polys, idx[0].degree()) else { return false };
    vectors.iter().all(|c| {
        let mut sum = Polynomial::zero(polys[0].ring());
        for ((_, p), x) in products.iter().zip(c) {
            if !x.is_zero() {
                sum = &sum + &p.scale(&FieldElement::Rational(BigRational::from_integer(x.clone())));
            }
        }
        sum.is_zero()
    })
}

/// Substitutes `polys` into a relation and expands; exact.
pub fn substitute_relation(relation: &Polynomial, polys: &[Polynomial]) -> Result<Polynomial, PolyError> {
    relation.substitute_all(polys)
}

/// Largest absolute coefficient, for reports.
pub fn height(p: &Polynomial) -> Option<BigInt> {
    let coeffs = p.rational_coefficients()?;
    coeffs
        .iter()
        .map(|(_, q)| q.numer().abs())
        .max()
        .or_else(|| Some(BigInt::zero()))
}

/// Number of bits of the largest coefficient.
pub fn height_bits(p: &Polynomial) -> u64 {
    height(p).map_or(0, |h| h.bits())
}

/// Integer coefficients with content 1.
pub fn is_primitive(p: &Polynomial) -> bool {
    let Some(coeffs) = p.rational_coefficients() else { return false };
    let mut g = BigInt::zero();
    for (_, q) in &coeffs {
        if !q.is_integer() {
            return false;
        }
        g = num_integer::Integer::gcd(&g, q.numer());
    }
    g.is_one() || coeffs.is_empty()
}

#[cfg(test)]
mod tests;
