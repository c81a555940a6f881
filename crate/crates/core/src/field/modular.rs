//! Word-sized prime field arithmetic, prime selection, Chinese remaindering and
//! rational reconstruction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::FieldError;

/// A prime below 2^32 together with a precomputed Barrett constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModPrime {
    p: u64,
    barrett: u64,
}

impl ModPrime {
    /// Panics if `p` is not a prime in `[3, 2^32)`.
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1u64 << 32) && is_prime(p), "{p} is not an odd prime below 2^32");
        Self { p, barrett: u64::MAX / p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = self.reduce(a);
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, v: &BigRational) -> Result<u64, FieldError> {
        let den = self.from_bigint(v.denom());
        let inv = self.inv(den).ok_or(FieldError::DenominatorDivisible { p: self.p })?;
        Ok(self.mul(self.from_bigint(v.numer()), inv))
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniformly random 31-bit prime not contained in `avoid`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, avoid: &[u64]) -> ModPrime {
    loop {
        let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime(candidate) && !avoid.contains(&candidate) {
            return ModPrime::new(candidate);
        }
    }
}

/// Incremental Chinese remaindering of residues modulo distinct primes.
#[derive(Clone, Debug)]
pub struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Default for Crt {
    fn default() -> Self {
        Self::new()
    }
}

impl Crt {
    pub fn new() -> Self {
        Self { value: BigInt::zero(), modulus: BigInt::one() }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    /// Absorbs `residue mod p`; `p` must be coprime to the running modulus.
    pub fn push(&mut self, residue: u64, p: u64) {
        let prime = ModPrime::new(p);
        let current = prime.from_bigint(&self.value);
        let m_mod_p = prime.from_bigint(&self.modulus);
        let inv = prime.inv(m_mod_p).expect("moduli must be pairwise coprime");
        let k = prime.mul(prime.sub(prime.reduce(residue), current), inv);
        self.value += &self.modulus * BigInt::from(k);
        self.modulus *= BigInt::from(p);
    }
}

/// Recovers `a/b` with `|a|, b <= sqrt(M/2)` from `u mod M`, if it exists.
pub fn reconstruct_rational(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let u = u.mod_floor(m);
    if u.is_zero() {
        return Some(BigRational::zero());
    }
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(num, den))
}

/// Rational reconstruction from a list of `(residue, prime)` pairs.
pub fn rational_reconstruct(residues: &[(u64, u64)]) -> Result<BigRational, FieldError> {
    let mut crt = Crt::new();
    let mut seen: Vec<u64> = Vec::with_capacity(residues.len());
    for &(r, p) in residues {
        if !is_prime(p) || !(3..(1u64 << 32)).contains(&p) {
            return Err(FieldError::NotPrime(p));
        }
        if seen.contains(&p) {
            return Err(FieldError::DuplicateModulus(p));
        }
        seen.push(p);
        crt.push(r, p);
    }
    reconstruct_rational(crt.value(), crt.modulus()).ok_or(FieldError::ReconstructionFailed {
        primes: seen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reduce_examples() {
        let p7 = ModPrime::new(7);
        assert_eq!(p7.from_rational(&q(5, 6)).unwrap(), 2);
        assert_eq!(p7.from_rational(&q(-1, 1)).unwrap(), 6);
        let p3 = ModPrime::new(3);
        assert!(matches!(p3.from_rational(&q(1, 3)), Err(FieldError::DenominatorDivisible { p: 3 })));
    }

    #[test]
    fn reconstruct_round_trip_three_primes() {
        let target = q(5, 6);
        let residues: Vec<(u64, u64)> = [10007u64, 10009, 10037]
            .iter()
            .map(|&p| (ModPrime::new(p).from_rational(&target).unwrap(), p))
            .collect();
        assert_eq!(rational_reconstruct(&residues).unwrap(), target);
        assert_eq!(rational_reconstruct(&[(0, 10007)]).unwrap(), q(0, 1));
    }

    #[test]
    fn reconstruct_out_of_bounds() {
        // sqrt(5/2) < 2, so only 0 and +-1 are reachable mod 5.
        assert!(matches!(
            rational_reconstruct(&[(3, 5)]),
            Err(FieldError::ReconstructionFailed { .. })
        ));
        assert_eq!(rational_reconstruct(&[(4, 5)]).unwrap(), q(-1, 1));
    }

    #[test]
    fn primes_are_31_bit_and_distinct() {
        let mut rng = rand::thread_rng();
        let a = random_prime(&mut rng, &[]);
        let b = random_prime(&mut rng, &[a.modulus()]);
        assert_ne!(a, b);
        assert!(a.modulus() >= 1 << 30 && a.modulus() < 1 << 31);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    proptest! {
        #[test]
        fn barrett_matches_remainder(x in any::<u64>(), idx in 0usize..4) {
            let p = [3u64, 10007, 2_147_483_647, 4_294_967_291][idx];
            let m = ModPrime::new(p);
            prop_assert_eq!(m.reduce(x), x % p);
        }

        #[test]
        fn reduction_is_a_ring_homomorphism(a in -10_000i64..10_000, b in 1i64..10_000,
                                            c in -10_000i64..10_000, d in 1i64..10_000) {
            let m = ModPrime::new(2_147_483_647);
            let (x, y) = (q(a, b), q(c, d));
            let rx = m.from_rational(&x).unwrap();
            let ry = m.from_rational(&y).unwrap();
            prop_assert_eq!(m.from_rational(&(&x + &y)).unwrap(), m.add(rx, ry));
            prop_assert_eq!(m.from_rational(&(&x * &y)).unwrap(), m.mul(rx, ry));
        }

        #[test]
        fn reconstruction_inverts_reduction(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000) {
            let x = q(a, b);
            let residues: Vec<(u64, u64)> = [2_147_483_647u64, 2_147_483_629]
                .iter()
                .map(|&p| (ModPrime::new(p).from_rational(&x).unwrap(), p))
                .collect();
            prop_assert_eq!(rational_reconstruct(&residues).unwrap(), x);
        }
    }
}
