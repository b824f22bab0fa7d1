use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::linalg::RVector;

type Q = Ratio<u64>;

/// Directed-edge density `E / |T|²` of binary vectors, with an edge
/// `w1 → w2` whenever `|w2 \ w1|` is odd.
///
/// ```
/// use num_rational::Ratio;
/// use zigzag::analysis::density;
/// use zigzag::linalg::RVector;
///
/// let basis: Vec<_> = (1..=4).map(|i| RVector::unit(2, 4, i)).collect();
/// assert_eq!(density(&basis).unwrap(), Ratio::new(3, 4));
/// ```
pub fn density(vectors: &[RVector]) -> Result<Q> {
    if vectors.is_empty() {
        return Err(Error::InvalidParameter("density of an empty set".into()));
    }
    let m = vectors[0].m();
    let mut seen = std::collections::BTreeSet::new();
    for v in vectors {
        if v.r() != 2 || v.m() != m {
            return Err(Error::DimensionMismatch("density needs binary vectors of one length".into()));
        }
        if v.is_zero() {
            return Err(Error::InvalidParameter("density is undefined for the zero vector".into()));
        }
        if !seen.insert(v.to_int()) {
            return Err(Error::DuplicateVector { vector: v.digits().to_vec() });
        }
    }
    let ints: Vec<usize> = vectors.iter().map(RVector::to_int).collect();
    let edges = ints
        .iter()
        .flat_map(|&a| ints.iter().map(move |&b| (b & !a).count_ones() % 2))
        .sum::<u32>() as u64;
    let n = ints.len() as u64;
    Ok(Q::new(edges, n * n))
}

/// `1 − d/2`, the limit of the duplication ratio as the copy count grows.
pub fn duplication_limit(d: Q) -> Q {
    Q::from_integer(1) - d / 2
}

/// Exact ratio of the `s`-duplication of the code built from a set of `k`
/// vectors of density `d`: `(1 − d/2)·sk/(sk+1)`.
///
/// ```
/// use num_rational::Ratio;
/// use zigzag::analysis::duplication_ratio_from_density;
///
/// assert_eq!(duplication_ratio_from_density(Ratio::new(1, 2), 2, 1), Ratio::new(1, 2));
/// ```
pub fn duplication_ratio_from_density(d: Q, k: usize, s: usize) -> Q {
    let sk = (s * k) as u64;
    duplication_limit(d) * Q::new(sk, sk + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_from_vectors, duplicate};
    use crate::rebuild::{measure_ratio, RatioMode};

    #[test]
    fn standard_basis_density() {
        for m in 1..=5 {
            let basis: Vec<_> = (1..=m).map(|i| RVector::unit(2, m, i)).collect();
            assert_eq!(density(&basis).unwrap(), Q::new(m as u64 - 1, m as u64));
        }
    }

    #[test]
    fn singleton_and_errors() {
        assert_eq!(density(&[RVector::from_int(2, 3, 5)]).unwrap(), Q::from_integer(0));
        assert!(density(&[RVector::zero(2, 2)]).is_err());
        assert!(density(&[RVector::unit(2, 2, 1), RVector::unit(2, 2, 1)]).is_err());
    }

    #[test]
    fn exact_form_matches_simulation() {
        let vectors = vec![RVector::unit(2, 2, 1), RVector::unit(2, 2, 2), RVector::from_int(2, 2, 3)];
        for take in 1..=3 {
            let t = &vectors[..take];
            let d = density(t).unwrap();
            let base = build_from_vectors(t.to_vec(), 2, 2).unwrap();
            for s in 1..=4 {
                let dup = duplicate(&base, s).unwrap();
                assert_eq!(measure_ratio(&dup, RatioMode::Single).unwrap(), duplication_ratio_from_density(d, take, s));
            }
        }
    }
}
