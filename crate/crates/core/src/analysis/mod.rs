//! MDS certification, orthogonality, ratio formulas, density and property e.

mod density;
mod mds;
mod orthogonal;
mod property_e;
mod ratio;

pub use density::{density, duplication_limit, duplication_ratio_from_density};
pub use mds::{verify_mds, verify_mds_pairwise, MdsVerdict};
pub use orthogonal::{check_orthogonal, family_of, max_orthogonal_family_r2, FamilyMember};
pub use property_e::{check_property_e, column_bound_check, min_optimal_e};
pub use ratio::{
    duplication_ratio, multi_erasure_ratio_bound, optimal_duplication_ratio, ratio_formula, ratio_from_intersections,
    weight3_ratio_asymptote,
};

/// All `size`-element subsets of `[0, n)` in lexicographic order.
///
/// ```
/// assert_eq!(zigzag::analysis::subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
/// ```
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}
