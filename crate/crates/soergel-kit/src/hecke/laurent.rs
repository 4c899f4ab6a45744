use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Laurent polynomial in v over ℚ, stored as (lowest exponent, coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { low: exp, coeffs: vec![coeff] }
        }
    }

    pub fn v(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    pub fn from_int(k: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn new(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exp(&self) -> i64 {
        self.low
    }

    pub fn high_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        if exp < self.low || exp > self.high_exp() {
            BigRational::zero()
        } else {
            self.coeffs[(exp - self.low) as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().max(other.high_exp());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - low) as usize] += c;
        }
        for (e, c) in other.terms() {
            coeffs[(e - low) as usize] += c;
        }
        Self::new(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let low = self.low + other.low;
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(low, coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { low: self.low + by, coeffs: self.coeffs.clone() }
        }
    }

    /// The bar involution v ↦ v⁻¹.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.high_exp(), coeffs)
    }

    /// Polynomial division for ordinary polynomials (low ≥ 0 assumed after
    /// shifting); returns (quotient, remainder) with deg r < deg divisor.
    fn divrem_poly(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = num.to_vec();
        let dn = den.len();
        if rem.len() < dn {
            return (vec![], rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dn + 1];
        let lead = den[dn - 1].clone();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                let t = &rem[k + i] - &(d * &c);
                rem[k + i] = t;
            }
        }
        while rem.last().map_or(false, Zero::is_zero) {
            rem.pop();
        }
        (quot, rem)
    }

    /// Monic gcd of the underlying polynomials (v-power factors dropped).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic_poly_part();
        }
        if other.is_zero() {
            return self.monic_poly_part();
        }
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            let (_, r) = Self::divrem_poly(&a, &b);
            a = b;
            b = r;
        }
        let lead = a.last().unwrap().clone();
        let monic: Vec<BigRational> = a.iter().map(|c| c / &lead).collect();
        LaurentPoly { low: 0, coeffs: monic }
    }

    fn monic_poly_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.coeffs.last().unwrap().clone();
        LaurentPoly { low: 0, coeffs: self.coeffs.iter().map(|c| c / &lead).collect() }
    }

    fn exact_div(&self, den: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (q, r) = Self::divrem_poly(&self.coeffs, &den.coeffs);
        assert!(r.is_empty(), "exact_div with nonzero remainder");
        Self::new(self.low - den.low, q)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest powers first.
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let unit_coeff = mag.is_one();
            match (e, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{mag}*v")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{mag}*v^{e}")?,
            }
        }
        Ok(())
    }
}

/// Exact rational function in v over ℚ in canonical reduced form: the
/// denominator is an honest polynomial with lowest exponent 0 and lowest
/// coefficient 1, and gcd(num, den) is a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentRat {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentRat {
    pub fn zero() -> Self {
        LaurentRat { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        LaurentRat { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        LaurentRat { num: p, den: LaurentPoly::one() }
    }

    pub fn v(exp: i64) -> Self {
        Self::from_poly(LaurentPoly::v(exp))
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(k))
    }

    /// q = v⁻².
    pub fn q() -> Self {
        Self::v(-2)
    }

    /// v⁻¹ − v, the quadratic-relation constant.
    pub fn delta() -> Self {
        Self::v(-1).sub(&Self::v(1))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = LaurentRat { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.coeffs.len() > 1 {
            self.num = self.num.exact_div(&g);
            self.den = self.den.exact_div(&g);
        }
        // Push the denominator's v-power and lowest coefficient into num.
        let shift = self.den.low;
        self.den = self.den.shift(-shift);
        self.num = self.num.shift(-shift);
        let lead = self.den.coeffs[0].clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut acc = Self::one();
        let base = if e < 0 { self.inv() } else { self.clone() };
        for _ in 0..e.abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul(&Self::from_int(k))
    }

    /// Bar involution v ↦ v⁻¹.
    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar())
    }

    /// Expand as an exact Laurent series in u = v⁻¹, keeping exponents ≤ `max_exp`.
    /// Only valid when the denominator's lowest coefficient in u is nonzero,
    /// which canonical form guarantees (expansion "at v = ∞").
    pub fn series_in_u(&self, max_exp: i64) -> BTreeMap<i64, BigRational> {
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return out;
        }
        // p(v) = Σ c_k v^k becomes Σ c_k u^{−k}.
        let to_u = |p: &LaurentPoly| p.bar();
        let num_u = to_u(&self.num);
        let den_u = to_u(&self.den);
        // den_u = u^e (d_0 + d_1 u + …) with d_0 ≠ 0.
        let e = den_u.low;
        let d: Vec<BigRational> = den_u.coeffs.clone();
        let base = num_u.low - e;
        let terms_needed = (max_exp - base + 1).max(0) as usize;
        let mut series = vec![BigRational::zero(); terms_needed];
        // Long division: (num_u coefficients) / (d_0 + d_1 u + …).
        let d0_inv = d[0].recip();
        for k in 0..terms_needed {
            let mut acc = if k < num_u.coeffs.len() {
                num_u.coeffs[k].clone()
            } else {
                BigRational::zero()
            };
            for j in 1..=k.min(d.len() - 1) {
                acc -= &d[j] * &series[k - j];
            }
            series[k] = acc * &d0_inv;
        }
        for (k, c) in series.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert(base + k as i64, c);
            }
        }
        out
    }
}

impl fmt::Display for LaurentRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_of_one_over_one_minus_q() {
        // 1/(1−q) = 1/(1−v⁻²) = −v²/(1−v²).
        let x = LaurentRat::one().div(&LaurentRat::one().sub(&LaurentRat::q()));
        assert_eq!(x.den().coeff(0), BigRational::one());
        assert_eq!(x.den().low_exp(), 0);
        let back = x.mul(&LaurentRat::one().sub(&LaurentRat::q()));
        assert!(back.is_one());
    }

    #[test]
    fn bar_is_involutive() {
        let x = LaurentRat::delta().add(&LaurentRat::q()).div(&LaurentRat::v(3).sub(&LaurentRat::from_int(7)));
        assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn delta_bar_is_minus_delta() {
        assert_eq!(LaurentRat::delta().bar(), LaurentRat::delta().neg());
    }

    #[test]
    fn series_of_geometric() {
        // 1/(1−q) = Σ_{m≥0} u^{2m} with u = v⁻¹.
        let x = LaurentRat::one().div(&LaurentRat::one().sub(&LaurentRat::q()));
        let s = x.series_in_u(6);
        for (e, c) in s {
            assert!(e % 2 == 0 && e >= 0);
            assert_eq!(c, BigRational::one());
        }
        let s2 = x.series_in_u(6);
        assert_eq!(s2.len(), 4); // u^0, u^2, u^4, u^6
    }

    #[test]
    fn series_of_laurent_polynomial_is_itself() {
        // v − v⁻³ ↦ u⁻¹·(−1)? In u: v = u⁻¹: v ↦ u⁻¹, v⁻³ ↦ u³.
        let x = LaurentRat::v(1).sub(&LaurentRat::v(-3));
        let s = x.series_in_u(10);
        assert_eq!(s.get(&-1), Some(&BigRational::one()));
        assert_eq!(s.get(&3), Some(&(-BigRational::one())));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn arithmetic_cancellation() {
        let a = LaurentRat::v(2).sub(&LaurentRat::from_int(1)); // v²−1
        let b = LaurentRat::v(1).add(&LaurentRat::from_int(1)); // v+1
        let q = a.div(&b); // v−1
        assert_eq!(q, LaurentRat::v(1).sub(&LaurentRat::from_int(1)));
    }
}
