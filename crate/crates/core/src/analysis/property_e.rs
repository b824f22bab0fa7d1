use crate::analysis::subsets;
use crate::error::{Error, Result};
use crate::linalg::{RVector, Subspace};

fn shape(vectors: &[RVector]) -> Result<(u32, usize)> {
    let first = vectors.first().ok_or_else(|| Error::InvalidParameter("empty vector set".into()))?;
    for v in vectors {
        first.same_shape(v)?;
    }
    Ok((first.r(), first.m()))
}

/// Whether every `e`-subset `A` is optimally rebuildable in the sense that
/// `u − v ∉ span{w − v : w ∈ T \ A}` for all `u ∈ A` and `v ∉ A`.
///
/// ```
/// use zigzag::analysis::check_property_e;
/// use zigzag::linalg::RVector;
///
/// let t: Vec<_> = [0, 1, 3, 4].iter().map(|&x| RVector::from_int(3, 2, x)).collect();
/// assert!(!check_property_e(&t, 1).unwrap());
/// assert!(check_property_e(&t, 2).unwrap());
/// ```
pub fn check_property_e(vectors: &[RVector], e: usize) -> Result<bool> {
    let (r, m) = shape(vectors)?;
    let k = vectors.len();
    if e == 0 || e >= k {
        return Err(Error::InvalidParameter(format!("property {e} needs 1 ≤ e < {k}")));
    }
    for a in subsets(k, e) {
        let rest: Vec<usize> = (0..k).filter(|i| !a.contains(i)).collect();
        for &v in &rest {
            let base = &vectors[v];
            let diffs: Vec<RVector> = rest.iter().map(|&w| vectors[w].sub(base)).collect();
            let z = Subspace::span(r, m, &diffs)?;
            for &u in &a {
                if z.contains(&vectors[u].sub(base))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Smallest `e ≤ min(r, |T| − 1)` with property `e`, if any.
pub fn min_optimal_e(vectors: &[RVector]) -> Result<Option<usize>> {
    let (r, _) = shape(vectors)?;
    let top = (r as usize).min(vectors.len().saturating_sub(1));
    for e in 1..=top {
        if check_property_e(vectors, e)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// `|T| ≤ m + e`, which must hold whenever `T` has property `e`. Returns
/// the comparison; sets without the property pass vacuously.
pub fn column_bound_check(vectors: &[RVector], e: usize) -> Result<bool> {
    let (_, m) = shape(vectors)?;
    Ok(!check_property_e(vectors, e)? || vectors.len() <= m + e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(r: u32, m: usize, xs: &[usize]) -> Vec<RVector> {
        xs.iter().map(|&x| RVector::from_int(r, m, x)).collect()
    }

    #[test]
    fn square_over_gf3_needs_two() {
        let t = set(3, 2, &[0, 1, 3, 4]);
        assert_eq!(min_optimal_e(&t).unwrap(), Some(2));
        assert!(column_bound_check(&t, 2).unwrap());
    }

    #[test]
    fn standard_basis_with_zero_is_one() {
        for m in 1..=3 {
            let mut t = vec![RVector::zero(3, m)];
            t.extend((1..=m).map(|i| RVector::unit(3, m, i)));
            assert_eq!(min_optimal_e(&t).unwrap(), Some(1));
            assert!(column_bound_check(&t, 1).unwrap());
        }
    }

    #[test]
    fn rejects_bad_e() {
        let t = set(3, 2, &[0, 1]);
        assert!(check_property_e(&t, 2).is_err());
        assert!(check_property_e(&t, 0).is_err());
    }
}
