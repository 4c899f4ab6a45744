use std::collections::BTreeMap;

use super::complex::{add_block, braid_to_complex, rouquier_generator, SBComplex};
use crate::bimod::{BSBimodule, BimMap, PolyMat, PolyR};
use crate::hecke::{jm, Perm};
use crate::{Error, Result};

/// Degree-(0,0) chain map between complexes: per homological degree a block
/// matrix of degree-0 bimodule maps commuting with the differentials.
#[derive(Clone)]
pub struct ChainMap {
    pub source: SBComplex,
    pub target: SBComplex,
    blocks: BTreeMap<i64, BTreeMap<(usize, usize), PolyMat>>,
}

impl std::fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainMap {:?} -> {:?}", self.source, self.target)
    }
}

impl ChainMap {
    pub fn new(
        source: SBComplex,
        target: SBComplex,
        blocks: BTreeMap<i64, BTreeMap<(usize, usize), PolyMat>>,
    ) -> Self {
        ChainMap { source, target, blocks }
    }

    pub fn identity(c: &SBComplex) -> Self {
        let mut blocks: BTreeMap<i64, BTreeMap<(usize, usize), PolyMat>> = BTreeMap::new();
        for t in c.degrees() {
            for (i, m) in c.summands_at(t).iter().enumerate() {
                add_block(&mut blocks, t, i, i, PolyMat::identity(m.rank(), c.n()));
            }
        }
        ChainMap { source: c.clone(), target: c.clone(), blocks }
    }

    pub fn block(&self, t: i64, tgt: usize, src: usize) -> Option<&PolyMat> {
        self.blocks.get(&t).and_then(|m| m.get(&(tgt, src)))
    }

    pub fn blocks_at(&self, t: i64) -> Option<&BTreeMap<(usize, usize), PolyMat>> {
        self.blocks.get(&t)
    }

    /// d_target ∘ f = f ∘ d_source in every degree.
    pub fn check_chain_condition(&self) -> Result<()> {
        for t in self.source.degrees().collect::<Vec<_>>() {
            let rows = self.target.summands_at(t + 1).len();
            let cols = self.source.summands_at(t).len();
            for r in 0..rows {
                for c in 0..cols {
                    let mut acc: Option<PolyMat> = None;
                    // d_tgt∘f_t
                    if let Some(fb) = self.blocks.get(&t) {
                        for (&(m, s), fm) in fb {
                            if s != c {
                                continue;
                            }
                            if let Some(d) = self.target.block(t, r, m) {
                                let p = d.mul(fm);
                                acc = Some(match acc {
                                    None => p,
                                    Some(x) => x.add(&p),
                                });
                            }
                        }
                    }
                    // −f_{t+1}∘d_src
                    if let Some(fb) = self.blocks.get(&(t + 1)) {
                        for (&(m, s), fm) in fb {
                            if m != r {
                                continue;
                            }
                            if let Some(d) = self.source.block(t, s, c) {
                                let p = fm.mul(d).neg();
                                acc = Some(match acc {
                                    None => p,
                                    Some(x) => x.add(&p),
                                });
                            }
                        }
                    }
                    if let Some(x) = acc {
                        if !x.is_zero() {
                            return Err(Error::ChainConditionViolated(t));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        // self ∘ other
        let mut blocks: BTreeMap<i64, BTreeMap<(usize, usize), PolyMat>> = BTreeMap::new();
        for (&t, inner) in &other.blocks {
            let Some(outer) = self.blocks.get(&t) else { continue };
            for (&(mid, src), g) in inner {
                for (&(tgt, mid2), f) in outer {
                    if mid2 == mid {
                        add_block(&mut blocks, t, tgt, src, f.mul(g));
                    }
                }
            }
        }
        Ok(ChainMap { source: other.source.clone(), target: self.target.clone(), blocks })
    }

    /// Tensor product of chain maps (both of homological degree 0, so the
    /// Koszul sign rule contributes nothing).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let source = self.source.tensor(&other.source)?;
        let target = self.target.tensor(&other.target)?;
        let src_index = tensor_index(&self.source, &other.source);
        let tgt_index = tensor_index(&self.target, &other.target);
        let mut blocks: BTreeMap<i64, BTreeMap<(usize, usize), PolyMat>> = BTreeMap::new();
        for (&ta, fa) in &self.blocks {
            for (&(ja, ia), fm) in fa {
                let f = BimMap::new(
                    self.source.summands_at(ta)[ia].clone(),
                    self.target.summands_at(ta)[ja].clone(),
                    0,
                    fm.clone(),
                );
                for (&tb, gb) in &other.blocks {
                    for (&(jb, ib), gm) in gb {
                        let g = BimMap::new(
                            other.source.summands_at(tb)[ib].clone(),
                            other.target.summands_at(tb)[jb].clone(),
                            0,
                            gm.clone(),
                        );
                        let big = f.tensor(&g)?;
                        let t = ta + tb;
                        let src = src_index[&(ta, ia, tb, ib)];
                        let tgt = tgt_index[&(ta, ja, tb, jb)];
                        add_block(&mut blocks, t, tgt, src, big.mat);
                    }
                }
            }
        }
        Ok(ChainMap { source, target, blocks })
    }
}

/// Summand position map of a tensor product, matching SBComplex::tensor.
fn tensor_index(a: &SBComplex, b: &SBComplex) -> BTreeMap<(i64, usize, i64, usize), usize> {
    let mut keys: Vec<(i64, usize, i64, usize)> = Vec::new();
    for ta in a.degrees() {
        for ia in 0..a.summands_at(ta).len() {
            for tb in b.degrees() {
                for ib in 0..b.summands_at(tb).len() {
                    keys.push((ta, ia, tb, ib));
                }
            }
        }
    }
    keys.sort();
    let mut counters: BTreeMap<i64, usize> = BTreeMap::new();
    let mut index = BTreeMap::new();
    for k in keys {
        let t = k.0 + k.2;
        let c = counters.entry(t).or_insert(0);
        index.insert(k, *c);
        *c += 1;
    }
    index
}

/// Cone(f)^t = target^t ⊕ source^{t+1}, d = [[d_target, f],[0, −d_source]].
pub fn cone(f: &ChainMap) -> SBComplex {
    let n = f.source.n();
    let mut summands: BTreeMap<i64, Vec<BSBimodule>> = BTreeMap::new();
    let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
    let degrees: std::collections::BTreeSet<i64> =
        f.target.degrees().chain(f.source.degrees().map(|t| t - 1)).collect();
    for &t in &degrees {
        let mut list = f.target.summands_at(t).to_vec();
        offsets.insert(t, list.len());
        list.extend(f.source.summands_at(t + 1).iter().cloned());
        summands.insert(t, list);
    }
    let mut diffs: BTreeMap<i64, BTreeMap<(usize, usize), PolyMat>> = BTreeMap::new();
    for &t in &degrees {
        let off_t = offsets[&t];
        let off_t1 = offsets.get(&(t + 1)).copied().unwrap_or(0);
        // d_target blocks
        if let Some(blocks) = f.target.blocks_at(t) {
            for (&(tgt, src), m) in blocks {
                add_block(&mut diffs, t, tgt, src, m.clone());
            }
        }
        // f blocks: source^{t+1} part of Cone^t → target^{t+1} part of Cone^{t+1}
        if let Some(blocks) = f.blocks_at(t + 1) {
            for (&(tgt, src), m) in blocks {
                add_block(&mut diffs, t, tgt, off_t + src, m.clone());
            }
        }
        // −d_source blocks: source^{t+1} → source^{t+2}
        if let Some(blocks) = f.source.blocks_at(t + 1) {
            for (&(tgt, src), m) in blocks {
                add_block(&mut diffs, t, off_t1 + tgt, off_t + src, m.neg());
            }
        }
    }
    SBComplex::from_parts(n, summands, diffs)
}

/// ψ_i : F_i → F_i⁻¹, the chain map whose only nonzero component is the
/// identity of B_i in homological degree 0.
pub fn psi_generator(i: usize, n: usize) -> Result<ChainMap> {
    let source = rouquier_generator(i, 1, n)?;
    let target = rouquier_generator(i, -1, n)?;
    let mut blocks = BTreeMap::new();
    add_block(&mut blocks, 0, 0, 0, PolyMat::identity(2, n));
    let f = ChainMap { source, target, blocks };
    f.check_chain_condition()?;
    Ok(f)
}

/// ψ_w : F_w → ⊗ F_{i_j}⁻¹ along the cached lex-least reduced word of w.
/// The target is homotopy equivalent to F_{w⁻¹}⁻¹.
pub fn psi_w(w: &Perm) -> Result<ChainMap> {
    let n = w.n();
    let mut acc = ChainMap::identity(&SBComplex::unit_complex(n));
    for i in w.lex_least_reduced_word() {
        acc = acc.tensor(&psi_generator(i, n)?)?;
    }
    Ok(acc)
}

/// The evaluation chain map F_i⁻¹ ⊗ F_i → [R]: the identity on the middle
/// R-summand and the Demazure projection on the (i,i) summand.
pub fn ev_complex(i: usize, n: usize) -> Result<ChainMap> {
    let f = rouquier_generator(i, 1, n)?;
    let finv = rouquier_generator(i, -1, n)?;
    let source = finv.tensor(&f)?;
    let target = SBComplex::unit_complex(n);
    // Degree-0 summands of F⁻¹⊗F in enumeration order (ta,ia,tb,ib):
    // (−1,0,1,0) = R(0) first, then (0,0,0,0) = B_i⊗B_i.
    debug_assert_eq!(source.summands_at(0).len(), 2);
    debug_assert_eq!(source.summands_at(0)[0].word(), &[] as &[usize]);
    let mut blocks = BTreeMap::new();
    // R-summand: +1.
    add_block(&mut blocks, 0, 0, 0, PolyMat::identity(1, n));
    // (i,i)-summand: [0, 0, −1, −x_{i+1}].
    let mut kappa = PolyMat::zero(1, 4, n);
    kappa.set(0, 2, PolyR::from_int(n, -1));
    kappa.set(0, 3, PolyR::var(i + 1, n).neg());
    add_block(&mut blocks, 0, 0, 1, kappa);
    let e = ChainMap { source, target, blocks };
    e.check_chain_condition()?;
    Ok(e)
}

/// The splitting map Ψ : L_n → [R] built inductively:
/// Ψ_1 = Id, Ψ_k = ev_{k−1} ∘ (ψ_{k−1} ⊗ Ψ_{k−1} ⊗ Id_{F_{k−1}}).
pub fn splitting_map(n: usize) -> Result<ChainMap> {
    fn rec(k: usize, n: usize) -> Result<ChainMap> {
        if k <= 1 {
            return Ok(ChainMap::identity(&SBComplex::unit_complex(n)));
        }
        let i = k - 1;
        let psi = psi_generator(i, n)?;
        let inner = rec(k - 1, n)?;
        let id_f = ChainMap::identity(&rouquier_generator(i, 1, n)?);
        let m1 = psi.tensor(&inner)?.tensor(&id_f)?;
        let ev = ev_complex(i, n)?;
        ev.compose(&m1)
    }
    let psi = rec(n, n)?;
    // Source must be the Rouquier complex of the Jucys-Murphy braid.
    debug_assert_eq!(
        psi.source.graded_summand_profile(),
        braid_to_complex(&jm(n))?.graded_summand_profile()
    );
    psi.check_chain_condition()?;
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rouquier::gaussian_eliminate;

    #[test]
    fn psi_is_a_chain_map() {
        for (i, n) in [(1usize, 2usize), (1, 3), (2, 3)] {
            psi_generator(i, n).unwrap();
        }
    }

    #[test]
    fn psi_w_base_cases() {
        let e = psi_w(&Perm::identity(3)).unwrap();
        assert_eq!(e.source.total_summands(), 1);
        e.check_chain_condition().unwrap();
        let s1 = psi_w(&Perm::simple(1, 3)).unwrap();
        s1.check_chain_condition().unwrap();
        assert_eq!(s1.source.total_summands(), 2);
        for w in Perm::all(3) {
            psi_w(&w).unwrap().check_chain_condition().unwrap();
        }
    }

    #[test]
    fn cone_of_psi_reduces_to_two_term_complex() {
        // Cone(ψ_i) ≃ [R(−1) → R(1)] with the map x_i − x_{i+1}.
        let n = 2;
        let psi = psi_generator(1, n).unwrap();
        let c = cone(&psi);
        c.check_valid().unwrap();
        let r = gaussian_eliminate(&c).unwrap();
        assert_eq!(r.total_summands(), 2);
        assert_eq!(r.summands_at(-1), &[BSBimodule::unit(n, -1)]);
        assert_eq!(r.summands_at(0), &[BSBimodule::unit(n, 1)]);
        let block = r.block(-1, 0, 0).unwrap();
        let expected = PolyR::var(1, n).sub(&PolyR::var(2, n));
        assert!(
            block.get(0, 0) == &expected || block.get(0, 0) == &expected.neg(),
            "cone map is ±(x1−x2), got {:?}",
            block.get(0, 0)
        );
    }

    #[test]
    fn ev_complex_is_chain_map() {
        for (i, n) in [(1usize, 2usize), (2, 3)] {
            ev_complex(i, n).unwrap();
        }
    }

    #[test]
    fn splitting_map_exists_for_small_n() {
        for n in 1..=3 {
            let psi = splitting_map(n).unwrap();
            psi.check_chain_condition().unwrap();
            assert_eq!(psi.target.total_summands(), 1);
        }
    }
}
