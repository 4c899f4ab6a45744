use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exact field scalar. Implementations must be exact: no rounding, ever.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero (callers pivot on nonzeros).
    fn inv(&self) -> Self;
    /// Image of an exact rational. `None` signals a bad-prime event (the
    /// denominator vanishes in the field).
    fn from_rat(r: &BigRational) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
}

/// Arbitrary-precision rational, the default ground field.
pub type Rat = BigRational;

impl Field for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rat(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Default fast-path prime: 2^61 − 1 (Mersenne).
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

/// Prime-field element. The modulus travels with the element; mixing moduli
/// is a programming error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    pub value: u64,
    pub prime: u64,
}

impl Fp {
    pub fn new(value: u64, prime: u64) -> Self {
        Fp { value: value % prime, prime }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for Fp {
    fn zero() -> Self {
        Fp { value: 0, prime: DEFAULT_PRIME }
    }
    fn one() -> Self {
        Fp { value: 1, prime: DEFAULT_PRIME }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        let p = self.merge_prime(other);
        let mut v = self.value + other.value;
        if v >= p {
            v -= p;
        }
        Fp { value: v, prime: p }
    }
    fn sub(&self, other: &Self) -> Self {
        let p = self.merge_prime(other);
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + p - other.value
        };
        Fp { value: v, prime: p }
    }
    fn mul(&self, other: &Self) -> Self {
        let p = self.merge_prime(other);
        Fp { value: mul_mod(self.value, other.value, p), prime: p }
    }
    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp { value: self.prime - self.value, prime: self.prime }
        }
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        Fp { value: pow_mod(self.value, self.prime - 2, self.prime), prime: self.prime }
    }
    fn from_rat(r: &BigRational) -> Option<Self> {
        // Default-prime image; use `fp_from_rat` for a configurable prime.
        fp_from_rat(r, DEFAULT_PRIME)
    }
    fn from_i64(v: i64) -> Self {
        let p = DEFAULT_PRIME;
        let m = (v.rem_euclid(p as i64)) as u64;
        Fp { value: m, prime: p }
    }
}

impl Fp {
    fn merge_prime(&self, other: &Self) -> u64 {
        // Zero/one constructed via Field::zero/one carry the default prime;
        // adopt the other operand's modulus in that case.
        if self.prime == other.prime {
            self.prime
        } else if self.value == 0 || self.value == 1 {
            other.prime
        } else if other.value == 0 || other.value == 1 {
            self.prime
        } else {
            panic!("mixed prime fields: {} vs {}", self.prime, other.prime)
        }
    }
}

/// Reduce a rational mod p; `None` when the denominator vanishes (bad prime).
pub fn fp_from_rat(r: &BigRational, prime: u64) -> Option<Fp> {
    let p = BigInt::from(prime);
    let num = r.numer().mod_floor_big(&p);
    let den = r.denom().mod_floor_big(&p);
    if den == 0 {
        return None;
    }
    let d = Fp { value: den, prime };
    let n = Fp { value: num, prime };
    Some(n.mul(&d.inv()))
}

trait ModFloorBig {
    fn mod_floor_big(&self, p: &BigInt) -> u64;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, p: &BigInt) -> u64 {
        use num::Integer;
        let m = self.mod_floor(p);
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue exceeds u64"),
        }
    }
}

/// Field selection as it appears in configs and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldMode {
    /// Exact rationals (the default).
    Q,
    /// Prime field fast path.
    Fp(u64),
}

impl FieldMode {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "q" || s == "Q" {
            return Ok(FieldMode::Q);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let prime: u64 = rest.parse().map_err(|_| Error::BadPrime {
                prime: 0,
                message: format!("cannot parse `{rest}` as a prime"),
            })?;
            if prime >= 1 << 62 {
                return Err(Error::BadPrime { prime, message: "prime must fit in 62 bits".into() });
            }
            if !is_prime_u64(prime) {
                return Err(Error::BadPrime { prime, message: "not prime".into() });
            }
            return Ok(FieldMode::Fp(prime));
        }
        Err(Error::ParseError { token: 0, message: format!("unknown field mode `{s}`") })
    }
}

impl std::fmt::Display for FieldMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldMode::Q => write!(f, "q"),
            FieldMode::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

/// Signed magnitude of a rational, used by pivot heuristics.
pub(crate) fn rat_complexity(r: &BigRational) -> usize {
    r.numer().abs().to_u64_digits().1.len() + r.denom().to_u64_digits().1.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let p = 1_000_000_007u64;
        let a = Fp::new(3, p);
        let b = Fp::new(p - 1, p);
        assert_eq!(a.add(&b).value, 2);
        assert_eq!(a.mul(&a.inv()).value, 1);
        assert_eq!(b.neg().value, 1);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1 << 61));
        assert!(!is_prime_u64(4_611_686_018_427_387_904));
    }

    #[test]
    fn rational_reduction_mod_p() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(2));
        let x = fp_from_rat(&r, 11).unwrap();
        assert_eq!(x.value, 6); // 2*6 = 12 ≡ 1
        let bad = BigRational::new(BigInt::from(1), BigInt::from(11));
        assert!(fp_from_rat(&bad, 11).is_none());
    }
}
