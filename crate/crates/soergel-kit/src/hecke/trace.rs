use std::collections::BTreeMap;
use std::fmt;

use super::algebra::HeckeElt;
use super::braid::BraidWord;
use super::laurent::LaurentRat;
use super::perm::Perm;
use crate::{Error, Result};

/// Polynomial in a with LaurentRat coefficients (Laurent in a is allowed for
/// the normalized HOMFLY mode).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct APoly {
    terms: BTreeMap<i64, LaurentRat>,
}

impl APoly {
    pub fn zero() -> Self {
        APoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: LaurentRat) -> Self {
        let mut p = APoly::zero();
        p.insert(0, c);
        p
    }

    pub fn insert(&mut self, deg: i64, c: LaurentRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(deg) {
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

    pub fn coeff(&self, deg: i64) -> LaurentRat {
        self.terms.get(&deg).cloned().unwrap_or_else(LaurentRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &LaurentRat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.insert(*d, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = APoly::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.insert(d1 + d2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentRat) -> Self {
        let mut out = APoly::zero();
        for (d, x) in &self.terms {
            out.insert(*d, x.mul(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = APoly::constant(LaurentRat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| match d {
                0 => format!("{c}"),
                1 => format!("({c})*a"),
                _ => format!("({c})*a^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of H_n[a]: sparse map a-degree ↦ Hecke element.
#[derive(Clone, PartialEq, Debug)]
pub struct HeckeAElt {
    n: usize,
    terms: BTreeMap<i64, HeckeElt>,
}

impl HeckeAElt {
    pub fn from_elt(x: HeckeElt) -> Self {
        let n = x.n();
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert(0, x);
        }
        HeckeAElt { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &HeckeElt)> {
        self.terms.iter()
    }

    pub fn a_coeff(&self, deg: i64) -> HeckeElt {
        self.terms.get(&deg).cloned().unwrap_or_else(|| HeckeElt::zero(self.n))
    }

    fn insert(&mut self, deg: i64, x: HeckeElt) {
        if x.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(deg) {
            Entry::Occupied(mut e) => {
                let v = e.get().add(&x);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(x);
            }
        }
    }
}

/// The two projections π^± : H_n → H_{n−1} characterized by
/// π^±(x) = x/(1−q) for x ∈ H_{n−1} and π^±(x·H_{n−1}^± ·y) = 0,
/// computed through the coset normal form H_w = H_u·H_{n−1}·H_c.
/// Returns (π⁻(x), π⁺(x)).
pub fn pi_pm(x: &HeckeElt) -> Result<(HeckeElt, HeckeElt)> {
    let n = x.n();
    if n < 1 {
        return Err(Error::IndexOutOfRange { index: 0, n });
    }
    let m = n - 1;
    let inv_one_minus_q = LaurentRat::one().sub(&LaurentRat::q()).inv();
    let minus_v = LaurentRat::v(1).neg();
    let mut minus = HeckeElt::zero(m);
    let mut plus = HeckeElt::zero(m);
    for (w, coeff) in x.terms() {
        let (u, strand) = w.coset_factor_last();
        if strand == n {
            // w ∈ S_{n−1}: both projections scale by 1/(1−q).
            let r = u.restrict();
            let c = coeff.mul(&inv_one_minus_q);
            minus = minus.add(&HeckeElt::basis(r.clone()).scale(&c));
            plus = plus.add(&HeckeElt::basis(r).scale(&c));
        } else {
            // H_w = H_u·H_{n−1}·H_c with c = s_{n−2}⋯s_m ∈ S_{n−1}:
            // π⁺ kills it, π⁻ gives −v·H_u·H_c multiplied in H_{n−1}.
            let mut c_perm = Perm::identity(m);
            for i in (strand..n - 1).rev() {
                c_perm = c_perm.compose(&Perm::simple(i, m));
            }
            let prod = HeckeElt::basis(u.restrict())
                .right_mul_basis(&c_perm)?
                .scale(&coeff.mul(&minus_v));
            minus = minus.add(&prod);
        }
    }
    Ok((minus, plus))
}

/// One step of the a-graded partial trace π = π⁻ + a·π⁺ : H_n[a] → H_{n−1}[a].
pub fn partial_trace(x: &HeckeAElt) -> Result<HeckeAElt> {
    let n = x.n();
    if n < 1 {
        return Err(Error::IndexOutOfRange { index: 0, n });
    }
    let mut out = HeckeAElt { n: n - 1, terms: BTreeMap::new() };
    for (deg, elt) in x.terms() {
        let (minus, plus) = pi_pm(elt)?;
        out.insert(*deg, minus);
        out.insert(*deg + 1, plus);
    }
    Ok(out)
}

/// Jones-Ocneanu trace: π applied n times, landing in ℚ(v)[a].
pub fn jones_ocneanu_trace(x: &HeckeElt) -> APoly {
    let mut acc = HeckeAElt::from_elt(x.clone());
    while acc.n() > 0 {
        acc = partial_trace(&acc).expect("strand count positive");
    }
    let mut out = APoly::zero();
    let e = Perm::identity(0);
    for (deg, elt) in acc.terms() {
        out.insert(*deg, elt.coeff(&e));
    }
    out
}

/// Tr(1) = ((1+a)/(1−q))^n.
pub fn trace_of_one(n: usize) -> APoly {
    let inv = LaurentRat::one().sub(&LaurentRat::q()).inv();
    let mut unknot = APoly::zero();
    unknot.insert(0, inv.clone());
    unknot.insert(1, inv);
    unknot.pow(n as u32)
}

/// Unnormalized HOMFLY-PT: the Jones-Ocneanu trace of the braid's image.
pub fn homfly(b: &BraidWord) -> APoly {
    jones_ocneanu_trace(&b.to_hecke())
}

/// Normalized HOMFLY-PT: P(β) = (−v)^{−e₊}·(av)^{−e₋}·Tr(β)·(1−q)/(1+a),
/// which is 1 on every braid presentation of the unknot.
pub fn homfly_normalized(b: &BraidWord) -> APoly {
    let tr = homfly(b);
    let e_pos = b.letters().iter().filter(|&&(_, s)| s > 0).count() as i64;
    let e_neg = b.len() as i64 - e_pos;
    // (1−q)/(1+a) division: multiply by (1−q), divide by (1+a) as an exact
    // polynomial division in a (the trace of a link is divisible by 1+a
    // after the unknot normalization: perform long division and assert).
    let scaled = tr.scale(&LaurentRat::one().sub(&LaurentRat::q()));
    let quotient = divide_by_one_plus_a(&scaled);
    // (−v)^{−e₊}: coefficient (−1)^{e₊} v^{−e₊}; (av)^{−e₋}: a^{−e₋} v^{−e₋}.
    let sign = if e_pos % 2 == 0 { 1 } else { -1 };
    let coeff = LaurentRat::v(-(e_pos + e_neg)).scale_int(sign);
    let mut shift = APoly::zero();
    shift.insert(-e_neg, coeff);
    quotient.mul(&shift)
}

fn divide_by_one_plus_a(p: &APoly) -> APoly {
    // Long division by (1 + a) from the top degree down.
    let mut rem = p.clone();
    let mut quot = APoly::zero();
    while let Some((&deg, _)) = rem.terms.iter().next_back() {
        let c = rem.coeff(deg);
        if deg == i64::MIN {
            break;
        }
        // c·a^deg = c·a^{deg−1}·(1+a) − c·a^{deg−1}
        quot.insert(deg - 1, c.clone());
        rem.insert(deg, c.neg());
        rem.insert(deg - 1, c.neg());
        if rem.is_zero() {
            break;
        }
    }
    assert!(rem.is_zero(), "trace not divisible by 1+a");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::braid;

    fn one_minus_q_inv() -> LaurentRat {
        LaurentRat::one().sub(&LaurentRat::q()).inv()
    }

    #[test]
    fn pi_of_identity() {
        // π(1) = (1+a)/(1−q)·1 in H_{n−1}.
        let x = HeckeAElt::from_elt(HeckeElt::one(2));
        let y = partial_trace(&x).unwrap();
        let c = one_minus_q_inv();
        assert_eq!(y.a_coeff(0), HeckeElt::one(1).scale(&c));
        assert_eq!(y.a_coeff(1), HeckeElt::one(1).scale(&c));
    }

    #[test]
    fn pi_of_generator() {
        // π(H_{n−1}) = −v·1, concentrated in a-degree 0.
        let x = HeckeAElt::from_elt(HeckeElt::generator(1, 2).unwrap());
        let y = partial_trace(&x).unwrap();
        assert_eq!(y.a_coeff(0), HeckeElt::one(1).scale(&LaurentRat::v(1).neg()));
        assert!(y.a_coeff(1).is_zero());
    }

    #[test]
    fn pi_of_inverse_generator_constant_is_av() {
        // The two vanishing axioms plus the quadratic relation force
        // π(H_{n−1}⁻¹) = a·v·1 — derived, not hard-coded.
        let h_inv = HeckeElt::one(2).right_mul_gen_inv(1).unwrap();
        let y = partial_trace(&HeckeAElt::from_elt(h_inv)).unwrap();
        assert!(y.a_coeff(0).is_zero());
        assert_eq!(y.a_coeff(1), HeckeElt::one(1).scale(&LaurentRat::v(1)));
    }

    #[test]
    fn trace_of_one_closed_form() {
        for n in 1..=4 {
            let tr = jones_ocneanu_trace(&HeckeElt::one(n));
            assert_eq!(tr, trace_of_one(n), "n={n}");
            // Tr⁰(1) = Trⁿ(1) = (1−q)^{−n}.
            let c = one_minus_q_inv().pow(n as i64);
            assert_eq!(tr.coeff(0), c);
            assert_eq!(tr.coeff(n as i64), c);
        }
    }

    #[test]
    fn top_coefficient_vanishes_off_identity() {
        // Trⁿ(H_w) = 0 for w ≠ e in S_3; Trⁿ(x) = (1−q)^{−n}·φ_e.
        let n = 3;
        for w in Perm::all(n) {
            let tr = jones_ocneanu_trace(&HeckeElt::basis(w.clone()));
            let top = tr.coeff(n as i64);
            if w.is_identity() {
                assert_eq!(top, one_minus_q_inv().pow(3));
            } else {
                assert!(top.is_zero(), "Trⁿ(H_w) ≠ 0 at {w:?}");
            }
        }
    }

    #[test]
    fn trace_property_on_basis_pairs() {
        // Tr(xy) = Tr(yx) across S_3 basis pairs.
        let n = 3;
        let perms = Perm::all(n);
        for u in &perms {
            for w in &perms {
                let x = HeckeElt::basis(u.clone());
                let y = HeckeElt::basis(w.clone());
                let xy = jones_ocneanu_trace(&x.mul(&y).unwrap());
                let yx = jones_ocneanu_trace(&y.mul(&x).unwrap());
                assert_eq!(xy, yx);
            }
        }
    }

    #[test]
    fn markov_moves_decategorified() {
        // Tr_n(x·H_{n−1}) = −v·Tr_{n−1}(x) and Tr_n(x·H_{n−1}⁻¹) = a·v·Tr_{n−1}(x)
        // for x ∈ H_{n−1} embedded in H_n, with the engine's derived constants.
        let n = 3;
        let embed = |w: &Perm| {
            let mut images: Vec<usize> = (1..=n).collect();
            for i in 1..n {
                images[i - 1] = w.apply(i);
            }
            Perm::from_images_one_based(&images)
        };
        for w in Perm::all(n - 1) {
            let x_small = HeckeElt::basis(w.clone());
            let x_big = HeckeElt::basis(embed(&w));
            let tr_small = jones_ocneanu_trace(&x_small);
            let pos = jones_ocneanu_trace(&x_big.right_mul_gen(n - 1).unwrap());
            let neg = jones_ocneanu_trace(&x_big.right_mul_gen_inv(n - 1).unwrap());
            let mut minus_v = APoly::zero();
            minus_v.insert(0, LaurentRat::v(1).neg());
            let mut av = APoly::zero();
            av.insert(1, LaurentRat::v(1));
            assert_eq!(pos, tr_small.mul(&minus_v));
            assert_eq!(neg, tr_small.mul(&av));
        }
    }

    #[test]
    fn kalman_identity_on_basis() {
        // Trⁿ(H_w·FT) = Tr⁰(H_w) for all w ∈ S_3.
        let n = 3;
        let ft = braid::ft(n).to_hecke();
        for w in Perm::all(n) {
            let x = HeckeElt::basis(w.clone());
            let lhs = jones_ocneanu_trace(&x.mul(&ft).unwrap()).coeff(n as i64);
            let rhs = jones_ocneanu_trace(&x).coeff(0);
            assert_eq!(lhs, rhs, "Kálmán fails at {w:?}");
        }
    }

    #[test]
    fn unknot_homfly() {
        let tr = homfly(&BraidWord::empty(1));
        assert_eq!(tr, trace_of_one(1));
        let two_unlink = homfly(&BraidWord::empty(2));
        assert_eq!(two_unlink, trace_of_one(2));
    }

    #[test]
    fn normalized_unknot_is_one_under_stabilization() {
        for input in [(1usize, ""), (2usize, "1"), (2usize, "-1"), (3usize, "1 2")] {
            let b = BraidWord::parse(input.0, input.1).unwrap();
            let p = homfly_normalized(&b);
            assert_eq!(p, APoly::constant(LaurentRat::one()), "braid {:?}", input);
        }
    }

    #[test]
    fn trefoil_golden_value() {
        // Independent three-step skein oracle, frozen:
        // Tr(H³) = Tr(H)·(1+δ²) + δ·Tr(1) with δ = v⁻¹−v,
        // Tr(H) = −v·(1+a)/(1−q) (one Markov step from the unknot),
        // Tr(1) = ((1+a)/(1−q))².
        let delta = LaurentRat::delta();
        let tr1 = trace_of_one(2);
        let mut trh = APoly::zero();
        let unknot = one_minus_q_inv();
        trh.insert(0, unknot.mul(&LaurentRat::v(1).neg()));
        trh.insert(1, unknot.mul(&LaurentRat::v(1).neg()));
        let one_plus_delta_sq = LaurentRat::one().add(&delta.mul(&delta));
        let oracle = trh.scale(&one_plus_delta_sq).add(&tr1.scale(&delta));

        let engine = homfly(&BraidWord::parse(2, "1 1 1").unwrap());
        assert_eq!(engine, oracle);

        // Fully expanded golden coefficients:
        //   a⁰: −v(v⁴+1)/(v²−1), a¹: −v(v⁴+v²+1)/(v²−1), a²: −v³/(v²−1).
        let v = LaurentRat::v(1);
        let den = LaurentRat::v(2).sub(&LaurentRat::one());
        let a0 = v.mul(&LaurentRat::v(4).add(&LaurentRat::one())).div(&den).neg();
        let a1 = v
            .mul(&LaurentRat::v(4).add(&LaurentRat::v(2)).add(&LaurentRat::one()))
            .div(&den)
            .neg();
        let a2 = LaurentRat::v(3).div(&den).neg();
        assert_eq!(engine.coeff(0), a0);
        assert_eq!(engine.coeff(1), a1);
        assert_eq!(engine.coeff(2), a2);
        assert!(engine.coeff(3).is_zero());
    }
}
