use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentRat;
use super::perm::Perm;
use crate::{Error, Result};

/// Element of the Hecke algebra H_n in the positive standard basis {H_w}:
/// sparse map w ↦ coefficient, no stored zeros. Generators satisfy
/// (H_i + v)(H_i − v⁻¹) = 0.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    n: usize,
    terms: BTreeMap<Perm, LaurentRat>,
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(w, c)| format!("({c})·H{:?}", w)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl HeckeElt {
    pub fn zero(n: usize) -> Self {
        HeckeElt { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(Perm::identity(n))
    }

    pub fn basis(w: Perm) -> Self {
        let n = w.n();
        let mut terms = BTreeMap::new();
        terms.insert(w, LaurentRat::one());
        HeckeElt { n, terms }
    }

    pub fn generator(i: usize, n: usize) -> Result<Self> {
        if i < 1 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok(Self::basis(Perm::simple(i, n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &LaurentRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Perm) -> LaurentRat {
        self.terms.get(w).cloned().unwrap_or_else(LaurentRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_term(&mut self, w: Perm, c: LaurentRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
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
        for (w, c) in &other.terms {
            out.insert_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentRat::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        HeckeElt {
            n: self.n,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect(),
        }
    }

    /// Right multiplication by the generator H_i:
    /// H_w·H_i = H_{ws_i} if ℓ(ws_i) > ℓ(w), else H_{ws_i} + (v⁻¹−v)H_w.
    pub fn right_mul_gen(&self, i: usize) -> Result<Self> {
        if i < 1 || i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let s = Perm::simple(i, self.n);
        let delta = LaurentRat::delta();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.compose(&s);
            if ws.length() > w.length() {
                out.insert_term(ws, c.clone());
            } else {
                out.insert_term(ws, c.clone());
                out.insert_term(w.clone(), c.mul(&delta));
            }
        }
        Ok(out)
    }

    /// Right multiplication by H_i⁻¹ = H_i − (v⁻¹−v).
    pub fn right_mul_gen_inv(&self, i: usize) -> Result<Self> {
        let delta = LaurentRat::delta();
        Ok(self.right_mul_gen(i)?.sub(&self.scale(&delta)))
    }

    pub fn right_mul_basis(&self, w: &Perm) -> Result<Self> {
        let mut acc = self.clone();
        for i in w.lex_least_reduced_word() {
            acc = acc.right_mul_gen(i)?;
        }
        Ok(acc)
    }

    /// Associative product in H_n.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (w, c) in &other.terms {
            let part = self.right_mul_basis(w)?.scale(c);
            out = out.add(&part);
        }
        Ok(out)
    }
}

/// For each w, the negative standard basis element H_{w⁻¹}⁻¹ expanded in the
/// positive basis. Unitriangular with respect to Bruhat order.
pub fn negative_basis_matrix(n: usize) -> BTreeMap<Perm, HeckeElt> {
    let mut out = BTreeMap::new();
    for w in Perm::all(n) {
        let mut acc = HeckeElt::one(n);
        for i in w.lex_least_reduced_word() {
            acc = acc.right_mul_gen_inv(i).expect("index in range");
        }
        out.insert(w, acc);
    }
    out
}

/// Coefficients ψ_w of x in the negative standard basis, by Bruhat-triangular
/// back-substitution: Σ ψ_w H_{w⁻¹}⁻¹ = x exactly.
pub fn to_negative_basis(x: &HeckeElt) -> BTreeMap<Perm, LaurentRat> {
    let neg = negative_basis_matrix(x.n());
    let mut rest = x.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let w = rest
            .terms()
            .max_by_key(|(w, _)| (w.length(), (*w).clone()))
            .map(|(w, _)| w.clone())
            .unwrap();
        let c = rest.coeff(&w);
        rest = rest.sub(&neg[&w].scale(&c));
        out.insert(w, c);
    }
    out
}

/// ε(x) = ψ_e, the coefficient of 1 in the negative standard basis.
pub fn epsilon(x: &HeckeElt) -> LaurentRat {
    // Only the identity coefficient is needed; full back-substitution keeps
    // the code shared with to_negative_basis.
    to_negative_basis(x)
        .remove(&Perm::identity(x.n()))
        .unwrap_or_else(LaurentRat::zero)
}

/// The ring anti-automorphism H_i ↦ H_i⁻¹, v ↦ v⁻¹. Involutive, and
/// (H_{w⁻¹}⁻¹)^∨ = H_{w⁻¹}.
pub fn dual_anti(x: &HeckeElt) -> HeckeElt {
    let n = x.n();
    let mut out = HeckeElt::zero(n);
    for (w, c) in x.terms() {
        // (H_w)^∨ = H_{i_k}⁻¹ ⋯ H_{i_1}⁻¹ = (H_w)⁻¹ for a reduced word
        // (i_1..i_k) of w.
        let mut acc = HeckeElt::one(n);
        let mut word = w.lex_least_reduced_word();
        word.reverse();
        for i in word {
            acc = acc.right_mul_gen_inv(i).expect("index in range");
        }
        out = out.add(&acc.scale(&c.bar()));
    }
    out
}

/// ⟨x,y⟩ := ε(y·x^∨).
pub fn pairing(x: &HeckeElt, y: &HeckeElt) -> Result<LaurentRat> {
    if x.n() != y.n() {
        return Err(Error::StrandMismatch(x.n(), y.n()));
    }
    Ok(epsilon(&y.mul(&dual_anti(x))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(i: usize, n: usize) -> HeckeElt {
        HeckeElt::generator(i, n).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let x = h(1, 2);
        assert_eq!(HeckeElt::one(2).mul(&x).unwrap(), x);
        assert_eq!(x.mul(&HeckeElt::one(2)).unwrap(), x);
    }

    #[test]
    fn quadratic_relation() {
        // H_s² = 1 + (v⁻¹−v)H_s.
        let x = h(1, 2);
        let sq = x.mul(&x).unwrap();
        let expected = HeckeElt::one(2).add(&x.scale(&LaurentRat::delta()));
        assert_eq!(sq, expected);
    }

    #[test]
    fn braid_relation() {
        let a = h(1, 3).mul(&h(2, 3)).unwrap().mul(&h(1, 3)).unwrap();
        let b = h(2, 3).mul(&h(1, 3)).unwrap().mul(&h(2, 3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn braid_relations_s4() {
        let n = 4;
        for i in 1..n - 1 {
            let a = h(i, n).mul(&h(i + 1, n)).unwrap().mul(&h(i, n)).unwrap();
            let b = h(i + 1, n).mul(&h(i, n)).unwrap().mul(&h(i + 1, n)).unwrap();
            assert_eq!(a, b);
        }
        // commuting generators
        let a = h(1, n).mul(&h(3, n)).unwrap();
        let b = h(3, n).mul(&h(1, n)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negative_basis_inverts() {
        // Each H_{w⁻¹}⁻¹ times H_{w⁻¹} equals 1 — the self-check oracle.
        for n in 2..=3 {
            for (w, elt) in negative_basis_matrix(n) {
                let lift = HeckeElt::basis(w.inverse());
                assert_eq!(elt.mul(&lift).unwrap(), HeckeElt::one(n), "n={n}");
            }
        }
    }

    #[test]
    fn negative_basis_generator() {
        // H_{s₁}⁻¹ = H_{s₁} − (v⁻¹−v)·1.
        let neg = negative_basis_matrix(2);
        let s = Perm::simple(1, 2);
        let expected = h(1, 2).sub(&HeckeElt::one(2).scale(&LaurentRat::delta()));
        assert_eq!(neg[&s], expected);
    }

    #[test]
    fn to_negative_basis_roundtrip() {
        let n = 3;
        let x = h(1, n)
            .mul(&h(2, n))
            .unwrap()
            .add(&h(1, n).scale(&LaurentRat::v(2)))
            .add(&HeckeElt::one(n).scale(&LaurentRat::delta()));
        let psi = to_negative_basis(&x);
        let neg = negative_basis_matrix(n);
        let mut rebuilt = HeckeElt::zero(n);
        for (w, c) in psi {
            rebuilt = rebuilt.add(&neg[&w].scale(&c));
        }
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn epsilon_values() {
        assert!(epsilon(&HeckeElt::one(2)).is_one());
        // ε(H_s) = v⁻¹ − v from H_s = H_s⁻¹ + (v⁻¹−v)·1.
        assert_eq!(epsilon(&h(1, 2)), LaurentRat::delta());
    }

    #[test]
    fn epsilon_is_symmetric() {
        // ε(xy) = ε(yx) on basis pairs in H_3.
        let n = 3;
        for u in Perm::all(n) {
            for w in Perm::all(n) {
                let xy = HeckeElt::basis(u.clone()).mul(&HeckeElt::basis(w.clone())).unwrap();
                let yx = HeckeElt::basis(w.clone()).mul(&HeckeElt::basis(u.clone())).unwrap();
                assert_eq!(epsilon(&xy), epsilon(&yx));
            }
        }
    }

    #[test]
    fn dual_anti_involutive_and_antimultiplicative() {
        let n = 3;
        let x = h(1, n).add(&HeckeElt::one(n).scale(&LaurentRat::v(1)));
        let y = h(2, n).mul(&h(1, n)).unwrap();
        assert_eq!(dual_anti(&dual_anti(&x)), x);
        let lhs = dual_anti(&x.mul(&y).unwrap());
        let rhs = dual_anti(&y).mul(&dual_anti(&x)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_of_negative_basis_element() {
        // (H_{w⁻¹}⁻¹)^∨ = H_{w⁻¹}.
        let n = 3;
        for (w, elt) in negative_basis_matrix(n) {
            assert_eq!(dual_anti(&elt), HeckeElt::basis(w.inverse()));
        }
    }

    #[test]
    fn pairing_orthogonality_s3() {
        // ⟨H_w, H_{v⁻¹}⁻¹⟩ = δ_{w,v}.
        let n = 3;
        let neg = negative_basis_matrix(n);
        for w in Perm::all(n) {
            for v in Perm::all(n) {
                let val = pairing(&HeckeElt::basis(w.clone()), &neg[&v]).unwrap();
                if w == v {
                    assert!(val.is_one(), "⟨H_w, H_w⁻¹⟩ ≠ 1 at {w:?}");
                } else {
                    assert!(val.is_zero(), "⟨H_w, H_v⁻¹⟩ ≠ 0 at {w:?}, {v:?}");
                }
            }
        }
    }

    #[test]
    fn pairing_adjunction() {
        // ⟨xz,y⟩ = ⟨x,yz^∨⟩ and ⟨zx,y⟩ = ⟨x,z^∨y⟩.
        let n = 3;
        let x = h(1, n).add(&HeckeElt::one(n));
        let y = h(2, n).scale(&LaurentRat::v(-1));
        let z = h(1, n).mul(&h(2, n)).unwrap();
        let zd = dual_anti(&z);
        let lhs = pairing(&x.mul(&z).unwrap(), &y).unwrap();
        let rhs = pairing(&x, &y.mul(&zd).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let lhs2 = pairing(&z.mul(&x).unwrap(), &y).unwrap();
        let rhs2 = pairing(&x, &zd.mul(&y).unwrap()).unwrap();
        assert_eq!(lhs2, rhs2);
    }
}
