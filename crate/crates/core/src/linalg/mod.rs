//! Exact linear algebra. Kernels and solves over `Q` go through several
//! word-sized primes, Chinese remaindering and rational reconstruction, and
//! every lifted answer is checked in exact arithmetic before it is returned.
//! Small matrices and non-rational fields use dense exact elimination.

pub mod dense;
pub mod modp;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::modular::{random_prime, reconstruct_rational, Crt, ModPrime};
use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::par;
use modp::Echelon;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("modular lifting did not certify after primes {primes:?}")]
    ReconstructionFailed { primes: Vec<u64> },
    #[error("modular path needs a rational or prime field, got {0}")]
    UnsupportedField(String),
}

/// Knobs for the multi-modular machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinalgConfig {
    /// Number of primes tried before giving up.
    pub max_primes: usize,
    /// Matrices with both dimensions at most this go through dense exact
    /// elimination.
    pub dense_threshold: usize,
    pub seed: u64,
}

impl Default for LinalgConfig {
    fn default() -> Self {
        Self { max_primes: 8, dense_threshold: 64, seed: 0x5eed }
    }
}

/// Sparse matrix with exact entries, stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, FieldElement>>,
}

impl SparseMatrix {
    pub fn new(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        Self { field, nrows, ncols, rows: vec![BTreeMap::new(); nrows] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::new(field.clone(), n, n);
        for k in 0..n {
            m.rows[k].insert(k, field.one());
        }
        m
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<FieldElement>]) -> Result<Self, LinalgError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::new(field, rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::Dimension("ragged rows".into()));
            }
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone())?;
            }
        }
        Ok(m)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<FieldElement>> =
            rows.iter().map(|r| r.iter().map(|&x| FieldElement::rational(x, 1)).collect()).collect();
        Self::from_dense(FieldSpec::Rational, &dense).expect("rectangular")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, FieldElement> {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.rows[r].get(&c).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Stores `v` (embedded into the matrix field); zeros are removed.
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) -> Result<(), LinalgError> {
        if r >= self.nrows || c >= self.ncols {
            return Err(LinalgError::Dimension(format!("({r},{c}) outside {}x{}", self.nrows, self.ncols)));
        }
        let v = self.field.embed(&v)?;
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
        Ok(())
    }

    /// Appends a row given as `(column, value)` pairs.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, FieldElement)>) -> Result<(), LinalgError> {
        self.rows.push(BTreeMap::new());
        self.nrows += 1;
        let r = self.nrows - 1;
        for (c, v) in entries {
            self.set(r, c, v)?;
        }
        Ok(())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> Result<Self, LinalgError> {
        if self.ncols != other.ncols || self.field != other.field {
            return Err(LinalgError::Dimension("vstack of incompatible matrices".into()));
        }
        let mut m = self.clone();
        m.rows.extend(other.rows.iter().cloned());
        m.nrows += other.nrows;
        Ok(m)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.field.clone(), self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                t.rows[c].insert(r, v.clone());
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![self.field.zero(); self.ncols];
                for (&c, v) in row {
                    d[c] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.ncols {
            return Err(LinalgError::Dimension("vector length".into()));
        }
        let rows: Vec<Result<FieldElement, FieldError>> = par::map(&self.rows, |row| {
            let mut acc = self.field.zero();
            for (&c, a) in row {
                if !v[c].is_zero() {
                    acc = acc.checked_add(&a.checked_mul(&v[c])?)?;
                }
            }
            Ok(acc)
        });
        Ok(rows.into_iter().collect::<Result<_, _>>()?)
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<Self, LinalgError> {
        if self.ncols != other.nrows || self.field != other.field {
            return Err(LinalgError::Dimension("matrix product".into()));
        }
        let mut out = Self::new(self.field.clone(), self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, FieldElement> = BTreeMap::new();
            for (&k, a) in row {
                for (&c, b) in &other.rows[k] {
                    let t = a.checked_mul(b)?;
                    let e = acc.entry(c).or_insert_with(|| self.field.zero());
                    *e = e.checked_add(&t)?;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[r] = acc;
        }
        Ok(out)
    }

    /// Images of the rows mod `p`; `None` when a denominator vanishes.
    fn rows_mod(&self, prime: &ModPrime) -> Option<Vec<Vec<(usize, u64)>>> {
        let mut out = Vec::with_capacity(self.nrows);
        for row in &self.rows {
            let mut r = Vec::with_capacity(row.len());
            for (&c, v) in row {
                let x = residue(v, prime)?;
                if x != 0 {
                    r.push((c, x));
                }
            }
            out.push(r);
        }
        Some(out)
    }

    fn is_small(&self, cfg: &LinalgConfig) -> bool {
        self.nrows <= cfg.dense_threshold && self.ncols <= cfg.dense_threshold
    }
}

fn residue(v: &FieldElement, prime: &ModPrime) -> Option<u64> {
    match v {
        FieldElement::Rational(q) => prime.from_rational(q).ok(),
        FieldElement::Prime { value, modulus } if *modulus == prime.modulus() => Some(*value),
        _ => None,
    }
}

/// Right kernel together with the evidence for it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub ncols: usize,
    /// Kernel basis. Over `Q` each vector is the reduced echelon basis
    /// vector scaled to a primitive integer vector.
    #[serde(skip)]
    pub basis: Vec<Vec<FieldElement>>,
    /// Rows and columns of a nonsingular minor of size `rank`.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    pub primes: Vec<u64>,
}

impl KernelCertificate {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn nullity(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as integers (rational kernels only).
    pub fn integer_basis(&self) -> Option<Vec<Vec<BigInt>>> {
        self.basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer()))
                    .collect()
            })
            .collect()
    }
}

/// A solution of `M x = b` with the kernel dimension of `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// The solution whose entries vanish at all non-pivot columns.
    pub particular: Vec<FieldElement>,
    pub rank: usize,
    pub nullity: usize,
    pub primes: Vec<u64>,
}

/// Exact rank. Small matrices and non-rational fields use Bareiss; larger
/// rational matrices take the certified kernel.
pub fn rank(m: &SparseMatrix, cfg: &LinalgConfig) -> Result<usize, LinalgError> {
    match m.field {
        FieldSpec::Rational | FieldSpec::Prime(_) if !m.is_small(cfg) => Ok(kernel(m, cfg)?.rank()),
        _ => Ok(dense::rank_bareiss(&m.to_dense(), m.ncols)?),
    }
}

/// Certified right kernel.
pub fn kernel(m: &SparseMatrix, cfg: &LinalgConfig) -> Result<KernelCertificate, LinalgError> {
    match &m.field {
        FieldSpec::Rational if !m.is_small(cfg) => kernel_multimodular(m, cfg),
        FieldSpec::Prime(p) if !m.is_small(cfg) => {
            let prime = ModPrime::new(*p);
            let rows = m.rows_mod(&prime).expect("entries lie in the field");
            let e = Echelon::sparse(&rows, m.ncols, prime);
            let basis = modp::kernel_vectors(&e)
                .into_iter()
                .map(|v| v.into_iter().map(|x| FieldElement::Prime { value: x, modulus: *p }).collect())
                .collect();
            Ok(KernelCertificate {
                ncols: m.ncols,
                basis,
                pivot_rows: e.sources.clone(),
                pivot_cols: e.pivots.clone(),
                primes: vec![*p],
            })
        }
        _ => kernel_dense(m),
    }
}

fn kernel_dense(m: &SparseMatrix) -> Result<KernelCertificate, LinalgError> {
    let dense_rows = m.to_dense();
    let (basis, pivot_cols) = dense::kernel(&m.field, &dense_rows, m.ncols)?;
    let basis = if m.field == FieldSpec::Rational { basis.into_iter().map(primitive).collect() } else { basis };
    let pivot_rows = independent_rows(&dense_rows, &pivot_cols)?;
    Ok(KernelCertificate { ncols: m.ncols, basis, pivot_rows, pivot_cols, primes: Vec::new() })
}

/// Greedy choice of rows whose restriction to `cols` is nonsingular.
fn independent_rows(rows: &[Vec<FieldElement>], cols: &[usize]) -> Result<Vec<usize>, FieldError> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<Vec<FieldElement>> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if chosen.len() == cols.len() {
            break;
        }
        let restricted: Vec<FieldElement> = cols.iter().map(|&c| row[c].clone()).collect();
        current.push(restricted);
        if dense::rank_bareiss(&current, cols.len())? == current.len() {
            chosen.push(r);
        } else {
            current.pop();
        }
    }
    Ok(chosen)
}

/// Scales a rational vector to a primitive integer vector with positive
/// entry at its first nonzero position.
pub(crate) fn primitive(v: Vec<FieldElement>) -> Vec<FieldElement> {
    let qs: Vec<BigRational> = v.iter().map(|x| x.as_rational().expect("rational")).collect();
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| FieldElement::Rational(BigRational::from_integer(x / &g))).collect()
}

/// Outcome of a single prime in a multi-modular run.
struct Image {
    prime: ModPrime,
    pivots: Vec<usize>,
    sources: Vec<usize>,
    values: Vec<u64>,
}

/// Orders images so that the better one (higher rank, then
/// lexicographically smaller pivot set) compares greater.
fn better(a: &Image, b: &Image) -> bool {
    a.pivots.len() > b.pivots.len() || (a.pivots.len() == b.pivots.len() && a.pivots < b.pivots)
}

/// Generic multi-modular loop. `image` computes residues for one prime (or
/// `None` for a bad prime); residues sharing the best pivot structure are
/// combined and reconstructed, and `accept` checks a candidate exactly.
/// Lifted value with its pivot rows, pivot columns and the primes used.
pub(crate) type Lifted<T> = (T, Vec<usize>, Vec<usize>, Vec<u64>);

pub(crate) fn lift<T>(
    cfg: &LinalgConfig,
    image: impl Fn(ModPrime) -> Option<(Vec<usize>, Vec<usize>, Vec<u64>)> + Sync + Send,
    accept: impl Fn(&[BigRational], &[usize]) -> Option<T>,
) -> Result<Lifted<T>, LinalgError> {
    const BATCH: usize = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tried: Vec<u64> = Vec::new();
    let mut best: Option<Image> = None;
    let mut crts: Vec<Crt> = Vec::new();
    let mut used: Vec<u64> = Vec::new();
    while tried.len() < cfg.max_primes.max(1) {
        let n = BATCH.min(cfg.max_primes.max(1) - tried.len());
        let primes: Vec<ModPrime> = (0..n)
            .map(|_| {
                let p = random_prime(&mut rng, &tried);
                tried.push(p.modulus());
                p
            })
            .collect();
        let images = par::map(&primes, |&p| {
            image(p).map(|(pivots, sources, values)| Image { prime: p, pivots, sources, values })
        });
        for img in images.into_iter().flatten() {
            match &best {
                Some(b) if better(b, &img) => continue,
                Some(b) if !better(&img, b) => {}
                _ => {
                    crts = vec![Crt::new(); img.values.len()];
                    used.clear();
                }
            }
            let p = img.prime.modulus();
            for (crt, &x) in crts.iter_mut().zip(&img.values) {
                crt.push(x, p);
            }
            used.push(p);
            best = Some(img);
        }
        let Some(b) = &best else { continue };
        let candidate: Vec<Option<BigRational>> =
            par::map(&crts, |crt| reconstruct_rational(crt.value(), crt.modulus()));
        if let Some(values) = candidate.into_iter().collect::<Option<Vec<_>>>() {
            if let Some(t) = accept(&values, &b.pivots) {
                return Ok((t, b.pivots.clone(), b.sources.clone(), used));
            }
        }
    }
    Err(LinalgError::ReconstructionFailed { primes: tried })
}

fn kernel_multimodular(m: &SparseMatrix, cfg: &LinalgConfig) -> Result<KernelCertificate, LinalgError> {
    let ncols = m.ncols;
    let image = |p: ModPrime| {
        let rows = m.rows_mod(&p)?;
        let e = Echelon::sparse(&rows, ncols, p);
        let values = e.kernel_pivot_entries().concat();
        Some((e.pivots.clone(), e.sources.clone(), values))
    };
    let accept = |values: &[BigRational], pivots: &[usize]| {
        let basis = expand_kernel(values, pivots, ncols);
        let ok = par::map(&basis, |v| m.mul_vec(v).map(|r| r.iter().all(|x| x.is_zero())).unwrap_or(false));
        ok.iter().all(|&b| b).then_some(basis)
    };
    let (basis, pivots, sources, primes) = lift(cfg, image, accept)?;
    let basis = par::map(&basis, |v| primitive(v.clone()));
    Ok(KernelCertificate { ncols, basis, pivot_rows: sources, pivot_cols: pivots, primes })
}

pub(crate) fn expand_kernel(values: &[BigRational], pivots: &[usize], ncols: usize) -> Vec<Vec<FieldElement>> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let r = pivots.len();
    free.iter()
        .enumerate()
        .map(|(j, &f)| {
            let mut v = vec![FieldElement::Rational(BigRational::zero()); ncols];
            v[f] = FieldElement::Rational(BigRational::one());
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = FieldElement::Rational(values[j * r + k].clone());
            }
            v
        })
        .collect()
}

/// Solves `M x = rhs`. `Ok(None)` means the system is inconsistent; over
/// `Q` this is certified by a vector `y` with `yᵀM = 0` and `yᵀrhs = 1`.
pub fn solve(m: &SparseMatrix, rhs: &[FieldElement], cfg: &LinalgConfig) -> Result<Option<Solution>, LinalgError> {
    if rhs.len() != m.nrows {
        return Err(LinalgError::Dimension("right-hand side length".into()));
    }
    let aug = augmented(m, rhs)?;
    match &m.field {
        FieldSpec::Rational if !aug.is_small(cfg) => solve_multimodular(m, &aug, rhs, cfg),
        _ => solve_dense(m, &aug),
    }
}

fn augmented(m: &SparseMatrix, rhs: &[FieldElement]) -> Result<SparseMatrix, LinalgError> {
    let mut aug = SparseMatrix::new(m.field.clone(), m.nrows, m.ncols + 1);
    for (r, row) in m.rows.iter().enumerate() {
        aug.rows[r] = row.clone();
        aug.set(r, m.ncols, rhs[r].clone())?;
    }
    Ok(aug)
}

fn solve_dense(m: &SparseMatrix, aug: &SparseMatrix) -> Result<Option<Solution>, LinalgError> {
    let mut rows = aug.to_dense();
    let pivots = dense::rref(&mut rows, aug.ncols)?;
    if pivots.last() == Some(&m.ncols) {
        return Ok(None);
    }
    let mut x = vec![m.field.zero(); m.ncols];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = rows[k][m.ncols].clone();
    }
    Ok(Some(Solution { particular: x, rank: pivots.len(), nullity: m.ncols - pivots.len(), primes: Vec::new() }))
}

fn solve_multimodular(
    m: &SparseMatrix,
    aug: &SparseMatrix,
    rhs: &[FieldElement],
    cfg: &LinalgConfig,
) -> Result<Option<Solution>, LinalgError> {
    let n = m.ncols;
    // Reduced echelon of the augmented matrix; the last column is a pivot
    // exactly when the image is inconsistent.
    let image = |p: ModPrime| {
        let rows = aug.rows_mod(&p)?;
        let e = Echelon::sparse(&rows, n + 1, p);
        let values = if e.pivots.last() == Some(&n) { Vec::new() } else { e.back_substitute(n) };
        Some((e.pivots.clone(), e.sources.clone(), values))
    };
    let accept = |values: &[BigRational], pivots: &[usize]| {
        if pivots.last() == Some(&n) {
            return Some(None);
        }
        let mut x = vec![FieldElement::Rational(BigRational::zero()); n];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = FieldElement::Rational(values[k].clone());
        }
        let mx = m.mul_vec(&x).ok()?;
        (mx == rhs).then_some(Some(x))
    };
    let (found, pivots, _, primes) = lift(cfg, image, accept)?;
    match found {
        Some(x) => Ok(Some(Solution { particular: x, rank: pivots.len(), nullity: n - pivots.len(), primes })),
        None => {
            // Certify inconsistency through the transposed system
            // [Mᵀ; rhsᵀ] y = (0, …, 0, 1).
            let mut t = m.transpose();
            t.push_row(rhs.iter().cloned().enumerate())?;
            let mut target = vec![FieldElement::Rational(BigRational::zero()); m.ncols];
            target.push(FieldElement::Rational(BigRational::one()));
            let t_aug = augmented(&t, &target)?;
            let dual = if t_aug.is_small(cfg) {
                solve_dense(&t, &t_aug)?
            } else {
                solve_multimodular_consistent(&t, &t_aug, &target, cfg)?
            };
            match dual {
                Some(_) => Ok(None),
                None => Err(LinalgError::ReconstructionFailed { primes }),
            }
        }
    }
}

/// Multi-modular solve that only accepts an exact solution.
fn solve_multimodular_consistent(
    m: &SparseMatrix,
    aug: &SparseMatrix,
    rhs: &[FieldElement],
    cfg: &LinalgConfig,
) -> Result<Option<Solution>, LinalgError> {
    let n = m.ncols;
    let image = |p: ModPrime| {
        let rows = aug.rows_mod(&p)?;
        let e = Echelon::sparse(&rows, n + 1, p);
        if e.pivots.last() == Some(&n) {
            return None;
        }
        let values = e.back_substitute(n);
        Some((e.pivots.clone(), e.sources.clone(), values))
    };
    let accept = |values: &[BigRational], pivots: &[usize]| {
        let mut x = vec![FieldElement::Rational(BigRational::zero()); n];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = FieldElement::Rational(values[k].clone());
        }
        (m.mul_vec(&x).ok()? == rhs).then_some(x)
    };
    match lift(cfg, image, accept) {
        Ok((x, pivots, _, primes)) => {
            Ok(Some(Solution { particular: x, rank: pivots.len(), nullity: n - pivots.len(), primes }))
        }
        Err(LinalgError::ReconstructionFailed { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[FieldElement]) -> Vec<i64> {
        v.iter().map(|x| x.as_rational().unwrap().to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn rank_one_kernel() {
        let m = SparseMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        let k = kernel(&m, &LinalgConfig::default()).unwrap();
        assert_eq!(k.nullity(), 1);
        assert_eq!(ints(&k.basis[0]), vec![1, -1]);
    }

    #[test]
    fn zero_by_one() {
        let m = SparseMatrix::from_ints(&[&[0]]);
        assert_eq!(kernel(&m, &LinalgConfig::default()).unwrap().nullity(), 1);
    }

    #[test]
    fn identity_solve_and_inconsistent() {
        let cfg = LinalgConfig::default();
        let id = SparseMatrix::identity(FieldSpec::Rational, 3);
        let b: Vec<FieldElement> = [4, -1, 7].iter().map(|&x| FieldElement::rational(x, 1)).collect();
        assert_eq!(solve(&id, &b, &cfg).unwrap().unwrap().particular, b);
        let m = SparseMatrix::from_ints(&[&[1], &[1]]);
        let b2 = vec![FieldElement::rational(0, 1), FieldElement::rational(1, 1)];
        assert_eq!(solve(&m, &b2, &cfg).unwrap(), None);
    }

    #[test]
    fn modular_path_matches_dense() {
        // forces the multi-modular route with a tiny threshold
        let cfg = LinalgConfig { dense_threshold: 0, ..Default::default() };
        let m = SparseMatrix::from_ints(&[&[2, 4, 6, 1], &[1, 2, 3, 0], &[3, 6, 9, 1], &[0, 0, 1, 5]]);
        let k = kernel(&m, &cfg).unwrap();
        assert_eq!(k.rank(), 3);
        assert_eq!(k.basis.len(), 1);
        assert_eq!(ints(&k.basis[0]), vec![2, -1, 0, 0]);
        let b: Vec<FieldElement> = [1, 0, 1, 5].iter().map(|&x| FieldElement::rational(x, 1)).collect();
        let s = solve(&m, &b, &cfg).unwrap().unwrap();
        assert_eq!(m.mul_vec(&s.particular).unwrap(), b);
        let bad: Vec<FieldElement> = [1, 1, 1, 1].iter().map(|&x| FieldElement::rational(x, 1)).collect();
        assert_eq!(solve(&m, &bad, &cfg).unwrap(), None);
    }

    #[test]
    fn rational_entries_lift() {
        let cfg = LinalgConfig { dense_threshold: 0, ..Default::default() };
        let h = |n, d| FieldElement::rational(n, d);
        let m = SparseMatrix::from_dense(
            FieldSpec::Rational,
            &[vec![h(1, 3), h(2, 7), h(-5, 11)], vec![h(1, 1), h(6, 7), h(-15, 11)]],
        )
        .unwrap();
        let k = kernel(&m, &cfg).unwrap();
        assert_eq!(k.nullity(), 2);
        for v in &k.basis {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rank_nullity_against_dense_oracle(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 1..8)
        ) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = SparseMatrix::from_ints(&refs);
            let modular = kernel(&m, &LinalgConfig { dense_threshold: 0, ..Default::default() }).unwrap();
            let exact = kernel(&m, &LinalgConfig::default()).unwrap();
            let r = dense::rank_bareiss(&m.to_dense(), 6).unwrap();
            prop_assert_eq!(modular.rank() + modular.nullity(), 6);
            prop_assert_eq!(modular.rank(), r);
            prop_assert_eq!(&modular.basis, &exact.basis);
            for v in &modular.basis {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn thread_count_does_not_change_kernel(
            rows in proptest::collection::vec(proptest::collection::vec(-2i64..3, 5), 2..6)
        ) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = SparseMatrix::from_ints(&refs);
            let cfg = LinalgConfig { dense_threshold: 0, ..Default::default() };
            let a = par::with_threads(1, || kernel(&m, &cfg).unwrap());
            let b = par::with_threads(4, || kernel(&m, &cfg).unwrap());
            prop_assert_eq!(a.basis, b.basis);
        }
    }
}
