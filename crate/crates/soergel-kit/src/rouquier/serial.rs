use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num::rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::complex::{add_block, SBComplex};
use crate::bimod::{BSBimodule, PolyMat, PolyR};
use crate::{Error, Result};

pub const FORMAT_VERSION: &str = "soergel-kit/1";

#[derive(Serialize, Deserialize)]
struct ComplexPayload {
    n: usize,
    /// (degree, [(word, shift)])
    summands: Vec<(i64, Vec<(Vec<usize>, i64)>)>,
    /// (degree, target, source, rows, cols, entries); entry = (row, col, exponents, coefficient)
    blocks: Vec<(i64, usize, usize, usize, usize, Vec<(usize, usize, Vec<u8>, String)>)>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    format: String,
    kind: String,
    checksum: String,
    payload: ComplexPayload,
}

fn payload_of(c: &SBComplex) -> ComplexPayload {
    let summands = c
        .degrees()
        .map(|t| {
            (
                t,
                c.summands_at(t)
                    .iter()
                    .map(|m| (m.word().to_vec(), m.shift()))
                    .collect(),
            )
        })
        .collect();
    let mut blocks = Vec::new();
    for (&t, bs) in c.raw_diffs() {
        for (&(tgt, src), m) in bs {
            let mut entries = Vec::new();
            for r in 0..m.rows {
                for cc in 0..m.cols {
                    let p = m.get(r, cc);
                    for (exp, coeff) in p.terms() {
                        entries.push((r, cc, exp.clone(), coeff.to_string()));
                    }
                }
            }
            blocks.push((t, tgt, src, m.rows, m.cols, entries));
        }
    }
    ComplexPayload { n: c.n(), summands, blocks }
}

fn checksum_of(payload: &ComplexPayload) -> String {
    let bytes = serde_json::to_vec(payload).expect("payload serializes");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write a complex to disk in the versioned cache format.
pub fn save_complex(path: &Path, c: &SBComplex) -> Result<()> {
    let payload = payload_of(c);
    let file = ComplexFile {
        format: FORMAT_VERSION.to_string(),
        kind: "sbcomplex".to_string(),
        checksum: checksum_of(&payload),
        payload,
    };
    let json = serde_json::to_string(&file).expect("complex serializes");
    std::fs::write(path, json).map_err(|e| Error::ShapeMismatch(format!("cache write: {e}")))?;
    Ok(())
}

/// Load a complex, revalidating the checksum and d² = 0.
pub fn load_complex(path: &Path) -> Result<SBComplex> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| Error::ShapeMismatch(format!("cache read: {e}")))?;
    let file: ComplexFile = serde_json::from_str(&data)
        .map_err(|e| Error::ShapeMismatch(format!("cache parse: {e}")))?;
    if file.format != FORMAT_VERSION {
        return Err(Error::ShapeMismatch(format!(
            "cache format `{}` does not match `{FORMAT_VERSION}`",
            file.format
        )));
    }
    if checksum_of(&file.payload) != file.checksum {
        return Err(Error::ShapeMismatch("cache checksum mismatch".into()));
    }
    let p = file.payload;
    let n = p.n;
    let mut summands: BTreeMap<i64, Vec<BSBimodule>> = BTreeMap::new();
    for (t, list) in &p.summands {
        let v: Result<Vec<BSBimodule>> = list
            .iter()
            .map(|(word, shift)| BSBimodule::from_word(n, word, shift - word.len() as i64))
            .collect();
        summands.insert(*t, v?);
    }
    let mut diffs: BTreeMap<i64, BTreeMap<(usize, usize), PolyMat>> = BTreeMap::new();
    for (t, tgt, src, rows, cols, entries) in &p.blocks {
        let mut m = PolyMat::zero(*rows, *cols, n);
        for (r, c, exp, coeff) in entries {
            let rat = BigRational::from_str(coeff)
                .map_err(|e| Error::ShapeMismatch(format!("cache coefficient: {e}")))?;
            let mono = PolyR::monomial_from_parts(n, exp, rat);
            m.set(*r, *c, m.get(*r, *c).add(&mono));
        }
        add_block(&mut diffs, *t, *tgt, *src, m);
    }
    let c = SBComplex::from_parts(n, summands, diffs);
    c.check_d_squared()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::BraidWord;
    use crate::rouquier::braid_to_complex;

    #[test]
    fn roundtrip() {
        let c = braid_to_complex(&BraidWord::parse(2, "1 1").unwrap()).unwrap();
        let dir = std::env::temp_dir().join("soergel-kit-test-cache");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ft2.json");
        save_complex(&path, &c).unwrap();
        let back = load_complex(&path).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn corrupted_cache_rejected() {
        let c = braid_to_complex(&BraidWord::parse(2, "1").unwrap()).unwrap();
        let dir = std::env::temp_dir().join("soergel-kit-test-cache");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        save_complex(&path, &c).unwrap();
        let data = std::fs::read_to_string(&path).unwrap();
        let tampered = data.replacen("\"checksum\":\"", "\"checksum\":\"00", 1);
        std::fs::write(&path, tampered).unwrap();
        assert!(load_complex(&path).is_err());
    }
}
