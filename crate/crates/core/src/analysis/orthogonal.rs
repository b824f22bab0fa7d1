use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::linalg::Permutation;

/// One member of a permutation family: `perms[l]` is `f^l` and `sets[l]` is
/// `X^l`, for `l` in `[0, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub perms: Vec<Permutation>,
    pub sets: Vec<Vec<usize>>,
}

/// The permutations and rebuild sets of every systematic column.
pub fn family_of(spec: &CodeSpec) -> Vec<FamilyMember> {
    (0..spec.k())
        .map(|j| FamilyMember {
            perms: (0..spec.r()).map(|l| spec.zigzag_of(l, j)).collect(),
            sets: spec.column(j).rebuild_sets.clone(),
        })
        .collect()
}

fn check_member(m: &FamilyMember, r: usize) -> Result<usize> {
    let p = m.perms.first().map_or(0, Permutation::len);
    if m.perms.len() != r || m.sets.len() != r || p == 0 || p % r != 0 {
        return Err(Error::InvalidParameter(format!("member needs {r} permutations and {r} sets")));
    }
    let mut seen = vec![false; p];
    for set in &m.sets {
        if set.len() != p / r {
            return Err(Error::InvalidParameter("sets are not equally sized".into()));
        }
        for &x in set {
            if x >= p || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameter("sets do not partition the rows".into()));
            }
        }
    }
    if m.perms.iter().any(|f| f.len() != p) {
        return Err(Error::InvalidParameter("permutations act on different domains".into()));
    }
    Ok(p)
}

/// Rows `t ∉ X_i^0` with `(f_j^l)^{-1} f_i^l (t) ∉ X_i^0`, where `t ∈ X_i^l`.
fn overlap(a: &FamilyMember, b: &FamilyMember, p: usize) -> usize {
    let mut in_x0 = vec![false; p];
    for &x in &a.sets[0] {
        in_x0[x] = true;
    }
    let mut count = 0;
    for l in 1..a.sets.len() {
        let back = b.perms[l].inverse();
        for &t in &a.sets[l] {
            if !in_x0[back.apply(a.perms[l].apply(t))] {
                count += 1;
            }
        }
    }
    count
}

/// Whether the family is orthogonal: for `i ≠ j` the elements accessed
/// from member `j` beyond the row parity all fall inside `X_i^0`.
///
/// ```
/// use zigzag::analysis::{check_orthogonal, family_of};
/// use zigzag::constructions::build_optimal_r2;
///
/// let code = build_optimal_r2(2).unwrap();
/// assert!(check_orthogonal(&family_of(&code), 2).unwrap());
/// ```
pub fn check_orthogonal(family: &[FamilyMember], r: usize) -> Result<bool> {
    let mut p = None;
    for m in family {
        let pm = check_member(m, r)?;
        if *p.get_or_insert(pm) != pm {
            return Err(Error::InvalidParameter("members act on different domains".into()));
        }
    }
    let Some(p) = p else { return Ok(true) };
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            if i != j && overlap(a, b, p) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn permutations(p: usize) -> Vec<Vec<u32>> {
    if p == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(p - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, (p - 1) as u32);
            out.push(v);
        }
    }
    out
}

/// Largest orthogonal family over `[0, 2^m)` with two parities, by
/// exhaustive clique search over every permutation and every half-size set.
/// Limited to `m ≤ 2`.
pub fn max_orthogonal_family_r2(m: usize) -> Result<usize> {
    if m == 0 || m > 2 {
        return Err(Error::Unsupported("exhaustive family search is limited to m = 1, 2".into()));
    }
    let p = 1usize << m;
    let halves: Vec<Vec<usize>> = crate::analysis::subsets(p, p / 2);
    let mut members = Vec::new();
    for images in permutations(p) {
        let f = Permutation::new(images).expect("generated permutation");
        for x in &halves {
            let rest: Vec<usize> = (0..p).filter(|r| !x.contains(r)).collect();
            members.push(FamilyMember { perms: vec![Permutation::identity(p), f.clone()], sets: vec![x.clone(), rest] });
        }
    }
    let n = members.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && overlap(&members[i], &members[j], p) == 0 && overlap(&members[j], &members[i], p) == 0)
                .collect()
        })
        .collect();
    fn grow(adj: &[Vec<bool>], clique: usize, cand: Vec<usize>, best: &mut usize) {
        *best = (*best).max(clique);
        for (idx, &v) in cand.iter().enumerate() {
            if clique + cand.len() - idx <= *best {
                return;
            }
            let next: Vec<usize> = cand[idx + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            grow(adj, clique + 1, next, best);
        }
    }
    let mut best = 0;
    grow(&adj, 0, (0..n).collect(), &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_duplication, build_optimal_general, build_optimal_r2};

    #[test]
    fn standard_basis_families_are_orthogonal() {
        for m in 1..=3 {
            let f2 = family_of(&build_optimal_r2(m).unwrap());
            assert_eq!(f2.len(), m + 1);
            assert!(check_orthogonal(&f2, 2).unwrap());
            let f3 = family_of(&build_optimal_general(m, 3, 2 * m as u32 + 3, None).unwrap());
            assert_eq!(f3.len(), m + 1);
            assert!(check_orthogonal(&f3, 3).unwrap());
        }
    }

    #[test]
    fn duplicated_permutation_breaks_orthogonality() {
        assert!(!check_orthogonal(&family_of(&build_duplication(2, 2, 3).unwrap()), 2).unwrap());
    }

    #[test]
    fn malformed_partition_rejected() {
        let mut fam = family_of(&build_optimal_r2(2).unwrap());
        fam[1].sets[0] = vec![0, 0];
        assert!(check_orthogonal(&fam, 2).is_err());
    }

    #[test]
    fn exhaustive_bound() {
        assert_eq!(max_orthogonal_family_r2(1).unwrap(), 2);
        assert_eq!(max_orthogonal_family_r2(2).unwrap(), 3);
    }
}
