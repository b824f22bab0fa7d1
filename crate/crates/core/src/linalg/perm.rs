use crate::error::{Error, Result};
use crate::linalg::vector::{add_scaled_int, dot_int, RVector};

/// A bijection on `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::InvalidParameter("images do not form a bijection".into())),
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(p: usize) -> Permutation {
        Permutation { images: (0..p as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "domain mismatch");
        Permutation { images: other.images.iter().map(|&y| self.images[y as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Image of a row set, sorted ascending.
    pub fn image_of(&self, rows: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = rows.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }
}

/// The translation `x ↦ x + l·v` on `[0, r^m)`.
///
/// ```
/// use zigzag::linalg::{vec_perm, RVector};
///
/// let v = RVector::new(3, vec![0, 1]).unwrap();
/// assert_eq!(vec_perm(&v, 2).images(), &[2, 0, 1, 5, 3, 4, 8, 6, 7]);
/// ```
pub fn vec_perm(v: &RVector, l: u32) -> Permutation {
    let (r, m) = (v.r(), v.m());
    let p = (r as usize).pow(m as u32);
    let vi = v.to_int();
    Permutation { images: (0..p).map(|x| add_scaled_int(r, m, x, vi, l) as u32).collect() }
}

/// `{x : x·w ≡ c (mod r)}`, sorted ascending.
///
/// ```
/// use zigzag::linalg::{hyperplane_rows, RVector};
///
/// let w = RVector::new(2, vec![1, 1]).unwrap();
/// assert_eq!(hyperplane_rows(&w, 0).unwrap(), vec![0, 3]);
/// ```
pub fn hyperplane_rows(w: &RVector, c: u32) -> Result<Vec<usize>> {
    if w.is_zero() {
        return Err(Error::DegenerateHyperplane);
    }
    let (r, m) = (w.r(), w.m());
    let p = (r as usize).pow(m as u32);
    let wi = w.to_int();
    let c = c % r;
    Ok((0..p).filter(|&x| dot_int(r, m, x, wi) == c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_vectors(r: u32, m: usize) -> impl Iterator<Item = RVector> {
        (0..(r as usize).pow(m as u32)).map(move |x| RVector::from_int(r, m, x))
    }

    #[test]
    fn translation_examples() {
        let v = RVector::new(2, vec![1, 0]).unwrap();
        assert_eq!(vec_perm(&v, 1).apply(3), 1);
        let w = RVector::new(3, vec![0, 1]).unwrap();
        assert_eq!(vec_perm(&w, 2).apply(4), 3);
        assert!(vec_perm(&w, 0).is_identity());
    }

    #[test]
    fn translations_form_a_cyclic_group() {
        for r in [2u32, 3, 5] {
            for v in all_vectors(r, 2) {
                for l1 in 0..r {
                    for l2 in 0..r {
                        assert_eq!(vec_perm(&v, l1).compose(&vec_perm(&v, l2)), vec_perm(&v, (l1 + l2) % r));
                    }
                }
                let f = vec_perm(&v, 1);
                let mut g = Permutation::identity(f.len());
                for _ in 0..r {
                    g = f.compose(&g);
                }
                assert!(g.is_identity());
            }
        }
    }

    #[test]
    fn hyperplane_examples() {
        let e1 = RVector::new(2, vec![1, 0]).unwrap();
        assert_eq!(hyperplane_rows(&e1, 0).unwrap(), vec![0, 1]);
        let e2 = RVector::new(3, vec![0, 1]).unwrap();
        assert_eq!(hyperplane_rows(&e2, 0).unwrap(), vec![0, 3, 6]);
        assert_eq!(hyperplane_rows(&RVector::zero(3, 2), 0), Err(Error::DegenerateHyperplane));
    }

    #[test]
    fn hyperplane_sizes() {
        for r in [2u32, 3] {
            for m in 1..=3 {
                for w in all_vectors(r, m).filter(|w| w.content() == 1) {
                    for c in 0..r {
                        assert_eq!(hyperplane_rows(&w, c).unwrap().len(), (r as usize).pow(m as u32 - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
    }
}
