use std::fmt;

use super::algebra::HeckeElt;
use super::perm::Perm;
use crate::{Error, Result};

/// Braid word on n strands: signed Artin generators σ_i^±, 1 ≤ i ≤ n−1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1);
        BraidWord { n, letters: vec![] }
    }

    pub fn new(n: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        for &(i, s) in &letters {
            if i < 1 || i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            assert!(s == 1 || s == -1, "sign must be ±1");
        }
        Ok(BraidWord { n, letters })
    }

    /// Parse whitespace-separated signed generator indices, e.g. "1 2 -1".
    pub fn parse(n: usize, input: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (pos, token) in input.split_whitespace().enumerate() {
            let v: i64 = token.parse().map_err(|_| Error::ParseError {
                token: pos + 1,
                message: format!("`{token}` is not a signed integer"),
            })?;
            if v == 0 {
                return Err(Error::ParseError {
                    token: pos + 1,
                    message: "generator index 0 is not allowed".into(),
                });
            }
            let i = v.unsigned_abs() as usize;
            if i >= n {
                return Err(Error::ParseError {
                    token: pos + 1,
                    message: format!("generator {i} out of range for {n} strands"),
                });
            }
            letters.push((i, if v > 0 { 1 } else { -1 }));
        }
        Ok(BraidWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Letterwise inverse: reverse order, flip signs.
    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect();
        BraidWord { n: self.n, letters }
    }

    /// Positive lift of a permutation along its lex-least reduced word.
    pub fn positive_lift(w: &Perm) -> Self {
        let letters = w.lex_least_reduced_word().into_iter().map(|i| (i, 1)).collect();
        BraidWord { n: w.n(), letters }
    }

    /// Underlying permutation (forgetting signs' effect only on the braid,
    /// not the permutation: σ_i^± both map to s_i).
    pub fn permutation(&self) -> Perm {
        let mut w = Perm::identity(self.n);
        for &(i, _) in &self.letters {
            w = w.compose(&Perm::simple(i, self.n));
        }
        w
    }

    pub fn to_hecke(&self) -> HeckeElt {
        let mut x = HeckeElt::one(self.n);
        for &(i, s) in &self.letters {
            x = if s > 0 {
                x.right_mul_gen(i).expect("validated index")
            } else {
                x.right_mul_gen_inv(i).expect("validated index")
            };
        }
        x
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, s)| if s > 0 { format!("{i}") } else { format!("-{i}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Jucys-Murphy braid: jm(1) = empty, jm(n) = σ_{n−1}·jm(n−1)·σ_{n−1}
/// (with jm(n−1) on strands 1..n−1), i.e. σ_{n−1}⋯σ_2σ_1²σ_2⋯σ_{n−1}.
pub fn jm(n: usize) -> BraidWord {
    assert!(n >= 1);
    let mut letters = Vec::new();
    for i in (1..n).rev() {
        letters.push((i, 1));
    }
    for i in 1..n {
        letters.push((i, 1));
    }
    BraidWord { n, letters }
}

/// Full twist: ft(n) = jm(2)·jm(3)⋯jm(n), of word length n(n−1).
pub fn ft(n: usize) -> BraidWord {
    assert!(n >= 1);
    let mut word = BraidWord::empty(n);
    for k in 2..=n {
        let mut j = jm(k);
        j.n = n; // embed on the first k strands
        word = word.concat(&j).expect("same strand count");
    }
    word
}

/// Half twist: positive lift of the longest element.
pub fn ht(n: usize) -> BraidWord {
    BraidWord::positive_lift(&Perm::longest_element(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::laurent::LaurentRat;

    #[test]
    fn parse_and_errors() {
        let b = BraidWord::parse(3, "1 2 -1").unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b.writhe(), 1);
        match BraidWord::parse(3, "1 x") {
            Err(Error::ParseError { token, .. }) => assert_eq!(token, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match BraidWord::parse(2, "1 2") {
            Err(Error::ParseError { token, .. }) => assert_eq!(token, 2),
            other => panic!("expected range error, got {other:?}"),
        }
    }

    #[test]
    fn empty_word_is_one() {
        assert_eq!(BraidWord::empty(2).to_hecke(), HeckeElt::one(2));
    }

    #[test]
    fn generator_times_inverse_is_one() {
        let b = BraidWord::parse(2, "1 -1").unwrap();
        assert_eq!(b.to_hecke(), HeckeElt::one(2));
        let c = BraidWord::parse(3, "2 1 -1 -2").unwrap();
        assert_eq!(c.to_hecke(), HeckeElt::one(3));
    }

    #[test]
    fn inverse_braid_gives_inverse_element() {
        let b = BraidWord::parse(3, "1 2 1").unwrap();
        let prod = b.to_hecke().mul(&b.inverse().to_hecke()).unwrap();
        assert_eq!(prod, HeckeElt::one(3));
    }

    #[test]
    fn cube_matches_repeated_multiplication() {
        // σ₁³ against the hecke_mul associativity oracle.
        let b = BraidWord::parse(2, "1 1 1").unwrap();
        let h = HeckeElt::generator(1, 2).unwrap();
        let expected = h.mul(&h).unwrap().mul(&h).unwrap();
        assert_eq!(b.to_hecke(), expected);
    }

    #[test]
    fn special_braid_shapes() {
        assert_eq!(jm(1).len(), 0);
        assert_eq!(jm(2).letters(), &[(1, 1), (1, 1)]);
        assert_eq!(jm(3).letters(), &[(2, 1), (1, 1), (1, 1), (2, 1)]);
        assert_eq!(ft(2).letters(), &[(1, 1), (1, 1)]);
        assert_eq!(ft(3).len(), 6);
        for n in 1..=4 {
            assert_eq!(ft(n).len(), n * (n - 1));
        }
        assert_eq!(ht(3).letters(), &[(1, 1), (2, 1), (1, 1)]);
    }

    #[test]
    fn full_twist_is_central_in_h3() {
        let z = ft(3).to_hecke();
        for i in 1..3 {
            let h = HeckeElt::generator(i, 3).unwrap();
            assert_eq!(z.mul(&h).unwrap(), h.mul(&z).unwrap());
        }
    }

    #[test]
    fn half_twist_pairing_with_inverse() {
        // ⟨HT, HT⁻¹⟩ = 1 at n = 2, 3.
        use crate::hecke::algebra::pairing;
        for n in 2..=3 {
            let htb = ht(n);
            let a = htb.to_hecke();
            let b = htb.inverse().to_hecke();
            assert_eq!(pairing(&a, &b).unwrap(), LaurentRat::one(), "n={n}");
        }
    }
}
