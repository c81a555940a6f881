//! Exact certification of a relation among multihomogeneous polynomials by
//! evaluation on a grid.
//!
//! Setting the first coordinate of every factor to 1, `R(p_0, ..., p_{m-1})`
//! becomes a polynomial in four variables of degree at most `D_k` in the
//! `k`-th one. Such a polynomial is zero as soon as it vanishes on a product
//! grid with `D_k + 1` values per variable. After clearing denominators its
//! grid values are integers bounded by an explicit `B`; vanishing modulo
//! primes with product above `B` then forces every value to be zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::common_denominator;
use crate::field::modular::{random_prime, ModPrime};
use crate::par;
use crate::poly::Polynomial;

use super::{mix, power_table, ModTerms, ProductTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCertificate {
    /// Number of grid values per factor.
    pub sides: Vec<u32>,
    pub points: usize,
    pub primes: Vec<u64>,
    /// Bit length of the bound on any cleared grid value.
    pub bound_bits: u64,
}

/// Dehomogenized input: integer coefficients with exponents in the four
/// chart variables, and the cleared denominator.
struct Chart {
    terms: Vec<([u16; 4], BigInt)>,
    den: BigInt,
}

fn chart(p: &Polynomial) -> Option<Chart> {
    let grading = p.ring().grading()?;
    let coeffs = p.rational_coefficients()?;
    let den = common_denominator(coeffs.iter().map(|(_, q)| q));
    let terms = coeffs
        .iter()
        .map(|(m, q)| {
            let e = m.exponents();
            let ys = [0, 1, 2, 3].map(|k| e[grading[k].1]);
            (ys, (q * num_rational::BigRational::from_integer(den.clone())).to_integer())
        })
        .collect();
    Some(Chart { terms, den })
}

const CHUNK: usize = 2048;

pub(crate) fn certify(
    polys: &[Polynomial],
    table: &ProductTable,
    vectors: &[Vec<BigInt>],
    n: u32,
    seed: u64,
) -> Option<GridCertificate> {
    let md = polys[0].multidegree()?;
    let degs: [u32; 4] = md.scaled(n).0;
    let shift: [i64; 4] = degs.map(|d| (d / 2) as i64);
    let radius: [u64; 4] = degs.map(|d| d.div_ceil(2) as u64);
    let charts: Vec<Chart> = polys.iter().map(chart).collect::<Option<_>>()?;

    // |p_j * den_j| at any grid point
    let sizes: Vec<BigInt> = charts
        .iter()
        .map(|c| {
            c.terms.iter().fold(BigInt::zero(), |acc, (e, x)| {
                let mut t = x.abs();
                for k in 0..4 {
                    t *= BigInt::from(radius[k]).pow(e[k] as u32);
                }
                acc + t
            })
        })
        .collect();
    let pow_table = |b: &BigInt| -> Vec<BigInt> {
        let mut v = vec![BigInt::one()];
        for k in 1..=n as usize {
            let next = &v[k - 1] * b;
            v.push(next);
        }
        v
    };
    let size_pows: Vec<Vec<BigInt>> = sizes.iter().map(pow_table).collect();
    let den_pows: Vec<Vec<BigInt>> = charts.iter().map(|c| pow_table(&c.den)).collect();
    let idx = super::sym_indices(polys.len(), n);
    let mut bound = BigInt::zero();
    for c in vectors {
        let mut b = BigInt::zero();
        for (e, x) in idx.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            let mut t = x.abs();
            for (j, &ej) in e.0.iter().enumerate() {
                t *= &size_pows[j][ej as usize];
                t *= &den_pows[j][(n - ej as u32) as usize];
            }
            b += t;
        }
        bound = bound.max(b);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 0x6772_6964, n as u64));
    let mut primes: Vec<ModPrime> = Vec::new();
    let mut product = BigInt::one();
    while product <= bound {
        let p = random_prime(&mut rng, &primes.iter().map(|p| p.modulus()).collect::<Vec<_>>());
        if charts.iter().any(|c| p.from_bigint(&c.den) == 0) {
            continue;
        }
        product *= BigInt::from(p.modulus());
        primes.push(p);
    }

    let sides: [usize; 4] = degs.map(|d| d as usize + 1);
    let points: usize = sides.iter().product();
    let nchunks = points.div_ceil(CHUNK);
    let max_e = charts.iter().flat_map(|c| c.terms.iter().flat_map(|(e, _)| e.iter().copied())).max().unwrap_or(0) as usize;
    for prime in &primes {
        let mp: Vec<ModTerms> = charts
            .iter()
            .map(|c| {
                let inv = prime.inv(prime.from_bigint(&c.den)).expect("denominator is a unit");
                c.terms
                    .iter()
                    .map(|(e, x)| (e.to_vec(), prime.mul(prime.from_bigint(x), inv)))
                    .filter(|(_, r)| *r != 0)
                    .collect()
            })
            .collect();
        let cs: Vec<Vec<u64>> = vectors.iter().map(|c| c.iter().map(|x| prime.from_bigint(x)).collect()).collect();
        let ok = par::map_range(nchunks, |ch| {
            let mut scratch = Vec::new();
            for t in ch * CHUNK..((ch + 1) * CHUNK).min(points) {
                let mut rest = t;
                let mut y = [0u64; 4];
                for k in (0..4).rev() {
                    let digit = (rest % sides[k]) as i64;
                    rest /= sides[k];
                    y[k] = prime.from_i64(digit - shift[k]);
                }
                let pw = power_table(&y, max_e, prime);
                let v: Vec<u64> = mp.iter().map(|terms| super::eval_terms(terms, &pw, prime)).collect();
                if cs.iter().any(|c| table.dot(&v, c, prime, &mut scratch) != 0) {
                    return false;
                }
            }
            true
        });
        if !ok.into_iter().all(|b| b) {
            return None;
        }
    }
    Some(GridCertificate {
        sides: sides.iter().map(|&s| s as u32).collect(),
        points,
        primes: primes.iter().map(|p| p.modulus()).collect(),
        bound_bits: bound.bits(),
    })
}
