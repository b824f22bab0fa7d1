use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::linalg::vector::{add_scaled_int, RVector};

/// A linear subspace of `F_r^m`, `r` prime, kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    r: u32,
    m: usize,
    basis: Vec<RVector>,
}

fn inv_mod(a: u32, r: u32) -> u32 {
    let (mut acc, mut base, mut e) = (1u64, a as u64 % r as u64, r as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % r as u64;
        }
        base = base * base % r as u64;
        e >>= 1;
    }
    acc as u32
}

fn rref(r: u32, m: usize, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut rows = rows;
    let mut rank = 0;
    for col in 0..m {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], r);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % r;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let c = rows[i][col];
                for j in 0..m {
                    rows[i][j] = (rows[i][j] + (r - c) * rows[rank][j]) % r;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

impl Subspace {
    /// The span of `vectors` in `F_r^m`.
    pub fn span(r: u32, m: usize, vectors: &[RVector]) -> Result<Subspace> {
        if !is_prime(r) {
            return Err(Error::CompositeModulus(r));
        }
        let probe = RVector::zero(r, m);
        for v in vectors {
            probe.same_shape(v)?;
        }
        let rows = vectors.iter().map(|v| v.digits().iter().map(|&d| d as u32).collect()).collect();
        let basis = rref(r, m, rows)
            .into_iter()
            .map(|row| RVector::new(r, row.into_iter().map(|d| d as u8).collect()).expect("digits reduced mod r"))
            .collect();
        Ok(Subspace { r, m, basis })
    }

    pub fn zero(r: u32, m: usize) -> Result<Subspace> {
        Self::span(r, m, &[])
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[RVector] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of vectors in the subspace, `r^dim`.
    pub fn size(&self) -> usize {
        (self.r as usize).pow(self.dimension() as u32)
    }

    pub fn contains(&self, v: &RVector) -> Result<bool> {
        RVector::zero(self.r, self.m).same_shape(v)?;
        let mut rows: Vec<RVector> = self.basis.clone();
        rows.push(v.clone());
        Ok(Subspace::span(self.r, self.m, &rows)?.dimension() == self.dimension())
    }

    /// `{x : x·s = 0 for every s in self}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        let r = self.r;
        let pivots: Vec<usize> = self.basis.iter().map(|b| b.leading().expect("basis rows are nonzero")).collect();
        let free = (0..self.m).filter(|c| !pivots.contains(c));
        let vectors: Vec<RVector> = free
            .map(|f| {
                let mut d = vec![0u8; self.m];
                d[f] = 1;
                for (row, &pc) in self.basis.iter().zip(&pivots) {
                    d[pc] = ((r - row.digits()[f] as u32) % r) as u8;
                }
                RVector::new(r, d).expect("digits reduced mod r")
            })
            .collect();
        Subspace::span(r, self.m, &vectors).expect("same shape and prime r")
    }

    /// Integer forms of all members, sorted ascending.
    pub fn elements(&self) -> Vec<usize> {
        let (r, m) = (self.r, self.m);
        let mut out = vec![0usize];
        for b in &self.basis {
            let bi = b.to_int();
            out = out.iter().flat_map(|&x| (0..r).map(move |c| add_scaled_int(r, m, x, bi, c))).collect();
        }
        out.sort_unstable();
        out
    }

    /// `{x + offset : x in self}`, sorted ascending.
    pub fn coset(&self, offset: &RVector) -> Result<Vec<usize>> {
        RVector::zero(self.r, self.m).same_shape(offset)?;
        let o = offset.to_int();
        let mut out: Vec<usize> =
            self.elements().into_iter().map(|x| add_scaled_int(self.r, self.m, x, o, 1)).collect();
        out.sort_unstable();
        Ok(out)
    }
}
