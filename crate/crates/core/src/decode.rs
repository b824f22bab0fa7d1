//! Erasure decoding of up to `r` columns and single-column error correction.

use crate::code::{CodeArray, CodeSpec};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::system::{ElementSource, PreparedSystem};

/// Decoding prepared for one erasure pattern, reusable across stripes.
#[derive(Debug, Clone)]
pub struct ErasureDecoder {
    erased: Vec<usize>,
    systematic: Vec<usize>,
    system: PreparedSystem,
}

impl ErasureDecoder {
    /// Prepares decoding of `erased`, any columns over `[0, k + r)`.
    ///
    /// Erased systematic columns are solved from every available parity,
    /// one independent system per group of linked rows; erased parities
    /// are then re-encoded.
    pub fn new(spec: &CodeSpec, erased: &[usize]) -> Result<ErasureDecoder> {
        let mut erased = erased.to_vec();
        erased.sort_unstable();
        erased.dedup();
        if let Some(&bad) = erased.iter().find(|&&c| c >= spec.n()) {
            return Err(Error::InvalidParameter(format!("column {bad} is out of range")));
        }
        if erased.len() > spec.r() {
            return Err(Error::CapabilityExceeded { erased: erased.len(), r: spec.r() });
        }
        let systematic: Vec<usize> = erased.iter().copied().filter(|&c| c < spec.k()).collect();
        let equations: Vec<(usize, usize)> = (0..spec.r())
            .filter(|l| !erased.contains(&(spec.k() + l)))
            .flat_map(|l| (0..spec.p()).map(move |t| (l, t)))
            .collect();
        let system = PreparedSystem::new(spec, &systematic, &equations).map_err(|err| match err {
            Error::Singular { .. } => Error::Singular { columns: erased.clone() },
            other => other,
        })?;
        Ok(ErasureDecoder { erased, systematic, system })
    }

    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    /// Size of the largest independent system solved per stripe.
    pub fn largest_system(&self) -> usize {
        self.system.largest_component()
    }

    /// Recovers the erased systematic columns of one stripe, in ascending order.
    pub fn solve_systematic(&self, spec: &CodeSpec, src: &dyn ElementSource) -> Vec<Vec<Elem>> {
        self.system.solve(spec, src)
    }

    /// Returns the complete codeword.
    pub fn decode(&self, spec: &CodeSpec, array: &CodeArray) -> CodeArray {
        let mut out = array.clone();
        for (&c, col) in self.systematic.iter().zip(self.system.solve(spec, array)) {
            out.info[c] = col;
        }
        if self.erased.iter().any(|&c| c >= spec.k()) {
            let views: Vec<&[Elem]> = out.info.iter().map(Vec::as_slice).collect();
            let mut parity = vec![Vec::new(); spec.r()];
            spec.encode_into(&views, &mut parity);
            for &c in self.erased.iter().filter(|&&c| c >= spec.k()) {
                out.parity[c - spec.k()] = std::mem::take(&mut parity[c - spec.k()]);
            }
        }
        out.erased.clear();
        out
    }
}

/// Restores `erased` columns of `array`.
///
/// ```
/// use zigzag::code::CodeArray;
/// use zigzag::constructions::build_duplication;
/// use zigzag::decode::decode_erasures;
///
/// let code = build_duplication(2, 2, 3).unwrap();
/// let info: Vec<Vec<u16>> = (0..6).map(|j| (0..4).map(|x| ((x + 2 * j) % 3) as u16).collect()).collect();
/// let original = CodeArray::encode(&code, info).unwrap();
/// let mut damaged = original.clone();
/// damaged.erase(&[1, 4]); // both copies of the same vector
/// assert_eq!(decode_erasures(&code, &damaged, &[1, 4]).unwrap(), original);
/// ```
pub fn decode_erasures(spec: &CodeSpec, array: &CodeArray, erased: &[usize]) -> Result<CodeArray> {
    Ok(ErasureDecoder::new(spec, erased)?.decode(spec, array))
}

/// Per-parity syndromes, `parts[l][t] = Σ_j c·a − P_l[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome {
    pub parts: Vec<Vec<Elem>>,
}

impl Syndrome {
    pub fn s0(&self) -> &[Elem] {
        &self.parts[0]
    }

    pub fn s1(&self) -> &[Elem] {
        &self.parts[1]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().flatten().all(|&s| s == 0)
    }
}

pub fn compute_syndrome(spec: &CodeSpec, array: &CodeArray) -> Syndrome {
    let views: Vec<&[Elem]> = array.info.iter().map(Vec::as_slice).collect();
    let mut parts = vec![Vec::new(); spec.r()];
    spec.encode_into(&views, &mut parts);
    let f = spec.field();
    for (s, stored) in parts.iter_mut().zip(&array.parity) {
        for (a, &b) in s.iter_mut().zip(stored) {
            *a = f.sub(*a, b);
        }
    }
    Syndrome { parts }
}

/// What [`decode_error`] changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correction {
    None,
    /// Parity `l` was wrong and has been re-encoded.
    Parity(usize),
    /// Systematic column `j` was wrong and has been corrected.
    Column(usize),
}

/// Locates and corrects a single erroneous column of a two-parity code.
///
/// Fails with [`Error::MultipleErrors`] when no single column explains the
/// syndromes, and with [`Error::AmbiguousError`] when several do, which can
/// only happen between columns sharing a vector.
///
/// ```
/// use zigzag::code::CodeArray;
/// use zigzag::constructions::build_optimal_r2;
/// use zigzag::decode::{decode_error, Correction};
///
/// let code = build_optimal_r2(2).unwrap();
/// let original = CodeArray::encode(&code, vec![vec![1, 2, 0, 1]; 3]).unwrap();
/// let mut bad = original.clone();
/// bad.info[2][3] = 0;
/// let (fixed, what) = decode_error(&code, &bad).unwrap();
/// assert_eq!((fixed, what), (original, Correction::Column(2)));
/// ```
pub fn decode_error(spec: &CodeSpec, array: &CodeArray) -> Result<(CodeArray, Correction)> {
    if spec.r() != 2 {
        return Err(Error::Unsupported(format!("error location needs r = 2, the code has r = {}", spec.r())));
    }
    let syn = compute_syndrome(spec, array);
    let (s0, s1) = (syn.s0(), syn.s1());
    let z0 = s0.iter().all(|&s| s == 0);
    let z1 = s1.iter().all(|&s| s == 0);
    if z0 && z1 {
        return Ok((array.clone(), Correction::None));
    }
    let f = spec.field();
    if z0 || z1 {
        let l = if z0 { 1 } else { 0 };
        let mut out = array.clone();
        out.parity[l] = crate::code::encode(spec, &array.info)?.swap_remove(l);
        return Ok((out, Correction::Parity(l)));
    }
    let matches: Vec<usize> = (0..spec.k())
        .filter(|&j| {
            (0..spec.p()).all(|t| {
                let x = spec.source_row(1, j, t);
                f.mul(spec.coef(1, x, j), s0[x]) == s1[t]
            })
        })
        .collect();
    match matches.as_slice() {
        [] => Err(Error::MultipleErrors),
        [j] => {
            let mut out = array.clone();
            for (a, &s) in out.info[*j].iter_mut().zip(s0) {
                *a = f.sub(*a, s);
            }
            Ok((out, Correction::Column(*j)))
        }
        many => Err(Error::AmbiguousError { columns: many.to_vec() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::subsets;
    use crate::constructions::{build_duplication, build_optimal_general, build_optimal_r2, build_weight3};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_array(spec: &CodeSpec, rng: &mut ChaCha8Rng) -> CodeArray {
        let q = spec.field().q();
        let info = (0..spec.k()).map(|_| (0..spec.p()).map(|_| rng.random_range(0..q) as Elem).collect()).collect();
        CodeArray::encode(spec, info).unwrap()
    }

    fn random_error(spec: &CodeSpec, rng: &mut ChaCha8Rng) -> Vec<Elem> {
        let q = spec.field().q();
        loop {
            let e: Vec<Elem> = (0..spec.p()).map(|_| rng.random_range(0..q) as Elem).collect();
            if e.iter().any(|&x| x != 0) {
                return e;
            }
        }
    }

    #[test]
    fn every_erasure_pattern_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let specs = [
            build_optimal_r2(1).unwrap(),
            build_optimal_r2(3).unwrap(),
            build_duplication(2, 2, 3).unwrap(),
            build_duplication(2, 3, 5).unwrap(),
            build_optimal_general(2, 3, 7, Some(3)).unwrap(),
            build_weight3(3, 9).unwrap(),
        ];
        for spec in &specs {
            for e in 0..=spec.r() {
                for set in subsets(spec.n(), e) {
                    let original = random_array(spec, &mut rng);
                    let mut damaged = original.clone();
                    damaged.erase(&set);
                    assert_eq!(decode_erasures(spec, &damaged, &set).unwrap(), original, "{} {set:?}", spec.name());
                }
            }
        }
    }

    #[test]
    fn pairs_linked_in_twos() {
        // Two distinct vectors: rows pair up as (x, x + v_i + v_j), giving 4x4 systems.
        let spec = build_optimal_r2(2).unwrap();
        let dec = ErasureDecoder::new(&spec, &[1, 2]).unwrap();
        assert_eq!(dec.largest_system(), 4);
        // Equal vectors: one 2x2 system per row.
        let dup = build_duplication(2, 2, 3).unwrap();
        assert_eq!(ErasureDecoder::new(&dup, &[1, 4]).unwrap().largest_system(), 2);
    }

    #[test]
    fn too_many_erasures() {
        let spec = build_optimal_r2(2).unwrap();
        assert_eq!(ErasureDecoder::new(&spec, &[0, 1, 2]).unwrap_err(), Error::CapabilityExceeded { erased: 3, r: 2 });
    }

    #[test]
    fn all_ones_gf2_is_singular() {
        let spec = crate::constructions::build_from_vectors(
            (0..=2).map(|i| crate::linalg::RVector::unit(2, 2, i)).collect(),
            2,
            2,
        )
        .unwrap();
        assert!(matches!(ErasureDecoder::new(&spec, &[0, 1]), Err(Error::Singular { .. })));
    }

    #[test]
    fn syndrome_examples() {
        let spec = build_optimal_r2(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let clean = random_array(&spec, &mut rng);
        assert!(compute_syndrome(&spec, &clean).is_zero());

        let mut bad = clean.clone();
        bad.parity[0][2] = spec.field().add(bad.parity[0][2], 1);
        let syn = compute_syndrome(&spec, &bad);
        assert_eq!(syn.s0(), &[0, 0, 2, 0]);
        assert!(syn.s1().iter().all(|&s| s == 0));

        let mut bad = clean.clone();
        bad.info[0][0] = spec.field().add(bad.info[0][0], 1);
        let syn = compute_syndrome(&spec, &bad);
        assert_eq!(syn.s0(), &[1, 0, 0, 0]);
        let t = spec.zigzag_index(1, 0, 0);
        for (i, &s) in syn.s1().iter().enumerate() {
            assert_eq!(s != 0, i == t);
        }
    }

    #[test]
    fn syndrome_is_linear_in_the_error() {
        let spec = build_optimal_r2(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let clean = random_array(&spec, &mut rng);
        let mut err_only = CodeArray::zeros(&spec);
        for c in 0..spec.n() {
            for x in 0..spec.p() {
                if rng.random_bool(0.1) {
                    err_only.column_mut(c)[x] = rng.random_range(1..3);
                }
            }
        }
        let mut noisy = clean.clone();
        for c in 0..spec.n() {
            for x in 0..spec.p() {
                noisy.column_mut(c)[x] = spec.field().add(clean.column(c)[x], err_only.column(c)[x]);
            }
        }
        assert_eq!(compute_syndrome(&spec, &noisy), compute_syndrome(&spec, &err_only));
    }

    #[test]
    fn locates_single_column_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in 1..=3 {
            let spec = build_optimal_r2(m).unwrap();
            for j in 0..spec.n() {
                for _ in 0..50 {
                    let clean = random_array(&spec, &mut rng);
                    let e = random_error(&spec, &mut rng);
                    let mut bad = clean.clone();
                    for (a, d) in bad.column_mut(j).iter_mut().zip(&e) {
                        *a = spec.field().add(*a, *d);
                    }
                    let (fixed, what) = decode_error(&spec, &bad).unwrap();
                    assert_eq!(fixed, clean);
                    let expect = if j < spec.k() { Correction::Column(j) } else { Correction::Parity(j - spec.k()) };
                    assert_eq!(what, expect);
                }
            }
            let clean = random_array(&spec, &mut rng);
            assert_eq!(decode_error(&spec, &clean).unwrap(), (clean, Correction::None));
        }
    }

    #[test]
    fn two_column_errors_are_detected() {
        let spec = build_optimal_r2(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut detected = 0;
        for _ in 0..50 {
            let clean = random_array(&spec, &mut rng);
            let mut bad = clean.clone();
            for j in [0, 2] {
                let e = random_error(&spec, &mut rng);
                for (a, d) in bad.info[j].iter_mut().zip(&e) {
                    *a = spec.field().add(*a, *d);
                }
            }
            if decode_error(&spec, &bad) == Err(Error::MultipleErrors) {
                detected += 1;
            }
        }
        assert!(detected > 0);
    }

    #[test]
    fn error_location_is_two_parity_only() {
        let spec = build_optimal_general(2, 3, 7, Some(3)).unwrap();
        let a = CodeArray::zeros(&spec);
        assert!(matches!(decode_error(&spec, &a), Err(Error::Unsupported(_))));
    }
}
