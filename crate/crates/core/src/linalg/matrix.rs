use crate::field::{Elem, Field};

/// Why a system has no unique solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unsolvable {
    /// The columns are dependent; `rank` is below the number of unknowns.
    RankDeficient { rank: usize },
    /// Full column rank, but `b` lies outside the column space.
    Inconsistent,
}

/// A left inverse `S` of a full-column-rank `rows × cols` matrix, so that
/// `x = S·b` solves `A·x = b` whenever the system is consistent.
#[derive(Debug, Clone)]
pub struct LeftInverse {
    rows: usize,
    cols: usize,
    s: Vec<Elem>,
}

impl LeftInverse {
    /// Gauss-Jordan elimination on `[A | I]`.
    pub fn new(field: &Field, a: &[Vec<Elem>], cols: usize) -> Result<LeftInverse, Unsolvable> {
        let rows = a.len();
        let width = cols + rows;
        let mut aug: Vec<Vec<Elem>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                assert_eq!(row.len(), cols, "ragged matrix");
                let mut out = Vec::with_capacity(width);
                out.extend_from_slice(row);
                out.extend((0..rows).map(|j| (i == j) as Elem));
                out
            })
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&i| aug[i][col] != 0) else {
                continue;
            };
            aug.swap(rank, piv);
            let inv = field.inv(aug[rank][col]).expect("pivot is nonzero");
            for x in aug[rank].iter_mut() {
                *x = field.mul(*x, inv);
            }
            let pivot_row = aug[rank].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                let c = row[col];
                if i != rank && c != 0 {
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = field.sub(*x, field.mul(c, p));
                    }
                }
            }
            rank += 1;
        }
        if rank < cols {
            return Err(Unsolvable::RankDeficient { rank });
        }
        let s = aug[..cols].iter().flat_map(|row| row[cols..].iter().copied()).collect();
        Ok(LeftInverse { rows, cols, s })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `S·b`.
    pub fn apply(&self, field: &Field, b: &[Elem]) -> Vec<Elem> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        (0..self.cols)
            .map(|i| {
                let row = &self.s[i * self.rows..(i + 1) * self.rows];
                row.iter().zip(b).fold(0, |acc, (&s, &y)| field.add(acc, field.mul(s, y)))
            })
            .collect()
    }
}

/// `A·x`.
pub fn mat_vec(field: &Field, a: &[Vec<Elem>], x: &[Elem]) -> Vec<Elem> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(0, |acc, (&c, &v)| field.add(acc, field.mul(c, v))))
        .collect()
}

/// Solves `A·x = b` for a square or consistent overdetermined system.
///
/// ```
/// use zigzag::field::Field;
/// use zigzag::linalg::{solve_linear, Unsolvable};
///
/// let gf3 = Field::new(3, 1, None).unwrap();
/// let a = vec![vec![1, 1], vec![1, 2]];
/// assert_eq!(solve_linear(&gf3, &a, &[0, 1]), Ok(vec![2, 1]));
/// let b = vec![vec![1, 1], vec![2, 2]];
/// assert_eq!(solve_linear(&gf3, &b, &[0, 0]), Err(Unsolvable::RankDeficient { rank: 1 }));
/// ```
pub fn solve_linear(field: &Field, a: &[Vec<Elem>], b: &[Elem]) -> Result<Vec<Elem>, Unsolvable> {
    assert_eq!(a.len(), b.len(), "right-hand side length");
    let cols = a.first().map_or(0, Vec::len);
    let inv = LeftInverse::new(field, a, cols)?;
    let x = inv.apply(field, b);
    if mat_vec(field, a, &x) != b {
        return Err(Unsolvable::Inconsistent);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let f = Field::new(7, 1, None).unwrap();
        let id: Vec<Vec<Elem>> = (0..4).map(|i| (0..4).map(|j| (i == j) as Elem).collect()).collect();
        assert_eq!(solve_linear(&f, &id, &[3, 1, 4, 1]), Ok(vec![3, 1, 4, 1]));
    }

    #[test]
    fn gf3_example_against_exhaustive_search() {
        let f = Field::new(3, 1, None).unwrap();
        let a = vec![vec![1, 1], vec![1, 2]];
        let b = [0, 1];
        let mut found = Vec::new();
        for x0 in 0..3 {
            for x1 in 0..3 {
                if mat_vec(&f, &a, &[x0, x1]) == b {
                    found.push(vec![x0, x1]);
                }
            }
        }
        assert_eq!(found, vec![vec![2, 1]]);
        assert_eq!(solve_linear(&f, &a, &b), Ok(vec![2, 1]));
    }

    #[test]
    fn overdetermined() {
        let f = Field::new(5, 1, None).unwrap();
        let a = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(solve_linear(&f, &a, &[2, 4, 1]), Ok(vec![2, 4]));
        assert_eq!(solve_linear(&f, &a, &[2, 4, 0]), Err(Unsolvable::Inconsistent));
    }

    #[test]
    fn extension_field_roundtrip() {
        let f = Field::new(2, 4, None).unwrap();
        let a: Vec<Vec<Elem>> = (0..5).map(|i| (0..5).map(|j| f.alpha_pow((i * j) as i64)).collect()).collect();
        let x: Vec<Elem> = vec![1, 7, 0, 13, 2];
        let b = mat_vec(&f, &a, &x);
        assert_eq!(solve_linear(&f, &a, &b), Ok(x));
    }
}
