use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Sparse polynomial in x_1..x_n over ℚ. Variables have internal degree 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyR {
    n: usize,
    terms: BTreeMap<Vec<u8>, BigRational>,
}

impl PolyR {
    pub fn zero(n: usize) -> Self {
        PolyR { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u8; n], c);
        }
        PolyR { n, terms }
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        Self::constant(n, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn monomial_from_parts(n: usize, exp: &[u8], coeff: BigRational) -> Self {
        assert_eq!(exp.len(), n);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp.to_vec(), coeff);
        }
        PolyR { n, terms }
    }

    /// x_j, 1-based.
    pub fn var(j: usize, n: usize) -> Self {
        assert!(j >= 1 && j <= n);
        let mut exp = vec![0u8; n];
        exp[j - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigRational::one());
        PolyR { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &BigRational)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&vec![0u8; self.n]).cloned().unwrap_or_else(BigRational::zero)
    }

    fn insert(&mut self, exp: Vec<u8>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PolyR { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(exp, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        PolyR { n: self.n, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul_var(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp[j - 1] += 1;
            out.insert(exp, c.clone());
        }
        out
    }

    /// Internal degree (2·total exponent) when homogeneous, else None.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for (e, _) in &self.terms {
            let d = 2 * e.iter().map(|&x| x as i64).sum::<i64>();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Is this a (possibly zero) constant?
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }
}

impl fmt::Debug for PolyR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{p}", i + 1) })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All exponent vectors of total degree `total` in `n` variables, lex-sorted.
pub fn monomials(n: usize, total: usize) -> &'static [Vec<u8>] {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), &'static [Vec<u8>]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(&v) = guard.get(&(n, total)) {
        return v;
    }
    let mut out = Vec::new();
    let mut current = vec![0u8; n];
    gen_monomials(n, total, 0, &mut current, &mut out);
    out.sort();
    let leaked: &'static [Vec<u8>] = Box::leak(out.into_boxed_slice());
    guard.insert((n, total), leaked);
    leaked
}

fn gen_monomials(n: usize, rest: usize, pos: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if pos == n - 1 {
        current[pos] = rest as u8;
        out.push(current.clone());
        current[pos] = 0;
        return;
    }
    for take in 0..=rest {
        current[pos] = take as u8;
        gen_monomials(n, rest - take, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// dim R_d for deg x_i = 2 (0 for odd or negative d).
pub fn dim_r(n: usize, d: i64) -> usize {
    if d < 0 || d % 2 != 0 {
        return 0;
    }
    monomials(n, (d / 2) as usize).len()
}
