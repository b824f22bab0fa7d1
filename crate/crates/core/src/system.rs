//! Parity-equation systems shared by rebuilding and erasure decoding.
//!
//! Unknowns are the rows of erased systematic columns. Every equation is
//! one zigzag set `(l, t)`: it touches exactly one row of every column.
//! Unknowns linked by equations are grouped with a union-find and each
//! group is solved independently through a precomputed left inverse.

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::LeftInverse;

/// Element access for one stripe: `info(j, x)` and `parity(l, t)`.
pub trait ElementSource {
    fn info(&self, column: usize, row: usize) -> Elem;
    fn parity(&self, l: usize, t: usize) -> Elem;
}

impl ElementSource for crate::code::CodeArray {
    fn info(&self, column: usize, row: usize) -> Elem {
        self.info[column][row]
    }

    fn parity(&self, l: usize, t: usize) -> Elem {
        self.parity[l][t]
    }
}

#[derive(Debug, Clone)]
struct Component {
    /// `(erased position, row)` pairs.
    unknowns: Vec<(usize, usize)>,
    /// `(parity, zigzag index)` pairs.
    equations: Vec<(usize, usize)>,
    inverse: LeftInverse,
}

#[derive(Debug, Clone)]
pub(crate) struct PreparedSystem {
    erased: Vec<usize>,
    known: Vec<usize>,
    components: Vec<Component>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl PreparedSystem {
    /// Prepares solving for the systematic columns `erased` from the
    /// listed equations. Equations touching no unknown are dropped.
    pub(crate) fn new(spec: &CodeSpec, erased: &[usize], equations: &[(usize, usize)]) -> Result<PreparedSystem> {
        let p = spec.p();
        let e = erased.len();
        let singular = || Error::Singular { columns: erased.to_vec() };
        let mut parent: Vec<usize> = (0..e * p).collect();
        let mut covered = vec![false; e * p];
        let unknowns_of = |l: usize, t: usize| -> Vec<usize> {
            erased.iter().enumerate().map(|(ei, &j)| ei * p + spec.source_row(l, j, t)).collect()
        };
        for &(l, t) in equations {
            let us = unknowns_of(l, t);
            for &u in &us {
                covered[u] = true;
            }
            for w in us.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if e > 0 && covered.iter().any(|&c| !c) {
            return Err(singular());
        }
        let mut root_slot = vec![usize::MAX; e * p];
        let mut groups: Vec<(Vec<usize>, Vec<(usize, usize)>)> = Vec::new();
        for u in 0..e * p {
            let root = find(&mut parent, u);
            if root_slot[root] == usize::MAX {
                root_slot[root] = groups.len();
                groups.push((Vec::new(), Vec::new()));
            }
            groups[root_slot[root]].0.push(u);
        }
        for &(l, t) in equations {
            if e == 0 {
                break;
            }
            let u0 = unknowns_of(l, t)[0];
            let slot = root_slot[find(&mut parent, u0)];
            groups[slot].1.push((l, t));
        }
        let field = spec.field();
        let mut components = Vec::with_capacity(groups.len());
        for (unknowns, eqs) in groups {
            let local: std::collections::HashMap<usize, usize> =
                unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
            let matrix: Vec<Vec<Elem>> = eqs
                .iter()
                .map(|&(l, t)| {
                    let mut row = vec![0 as Elem; unknowns.len()];
                    for (ei, &j) in erased.iter().enumerate() {
                        let x = spec.source_row(l, j, t);
                        let idx = local[&(ei * p + x)];
                        row[idx] = field.add(row[idx], spec.coef(l, x, j));
                    }
                    row
                })
                .collect();
            let inverse = LeftInverse::new(field, &matrix, unknowns.len()).map_err(|_| singular())?;
            components.push(Component {
                unknowns: unknowns.iter().map(|&u| (u / p, u % p)).collect(),
                equations: eqs,
                inverse,
            });
        }
        let known = (0..spec.k()).filter(|j| !erased.contains(j)).collect();
        Ok(PreparedSystem { erased: erased.to_vec(), known, components })
    }

    /// Every `(column, row)` of a surviving systematic column that solving reads.
    pub(crate) fn known_reads(&self, spec: &CodeSpec) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in &self.components {
            for &(l, t) in &c.equations {
                for &j in &self.known {
                    out.push((j, spec.source_row(l, j, t)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn equations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.components.iter().flat_map(|c| c.equations.iter().copied())
    }

    /// Largest number of unknowns in one independent group.
    pub(crate) fn largest_component(&self) -> usize {
        self.components.iter().map(|c| c.unknowns.len()).max().unwrap_or(0)
    }

    /// Solves one stripe; returns the erased columns in `erased` order.
    pub(crate) fn solve(&self, spec: &CodeSpec, src: &dyn ElementSource) -> Vec<Vec<Elem>> {
        let f = spec.field();
        let mut out = vec![vec![0 as Elem; spec.p()]; self.erased.len()];
        let mut rhs = Vec::new();
        for c in &self.components {
            rhs.clear();
            for &(l, t) in &c.equations {
                let mut y = src.parity(l, t);
                for &j in &self.known {
                    let x = spec.source_row(l, j, t);
                    y = f.sub(y, f.mul(spec.coef(l, x, j), src.info(j, x)));
                }
                rhs.push(y);
            }
            for (&(ei, x), v) in c.unknowns.iter().zip(c.inverse.apply(f, &rhs)) {
                out[ei][x] = v;
            }
        }
        out
    }
}
