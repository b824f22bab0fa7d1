use crate::analysis::subsets;
use crate::code::{CodeArray, CodeSpec};
use crate::decode::ErasureDecoder;
use crate::error::{Error, Result};
use crate::field::Elem;

/// Outcome of an MDS check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdsVerdict {
    Pass,
    /// An erasure set, over `[0, k + r)`, that cannot be decoded.
    Fail { witness: Vec<usize> },
}

impl MdsVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, MdsVerdict::Pass)
    }
}

/// Decodes every erasure set of size at most `r` on an impulse basis.
///
/// A set fails when its parity equations are singular or when any impulse
/// array is not restored exactly.
pub fn verify_mds(spec: &CodeSpec) -> MdsVerdict {
    let (k, p) = (spec.k(), spec.p());
    for size in 1..=spec.r().min(spec.n()) {
        for set in subsets(spec.n(), size) {
            if set.iter().all(|&c| c >= k) {
                continue;
            }
            let Ok(decoder) = ErasureDecoder::new(spec, &set) else {
                return MdsVerdict::Fail { witness: set };
            };
            for j in 0..k {
                for x in 0..p {
                    let mut info = vec![vec![0 as Elem; p]; k];
                    info[j][x] = 1;
                    let original = CodeArray::encode(spec, info).expect("shape matches spec");
                    let mut damaged = original.clone();
                    damaged.erase(&set);
                    if decoder.decode(spec, &damaged) != original {
                        return MdsVerdict::Fail { witness: set };
                    }
                }
            }
        }
    }
    MdsVerdict::Pass
}

/// The two-parity MDS test on coefficients alone.
///
/// For distinct vectors `v_i ≠ v_j` the pair is decodable iff
/// `β_{x,i}β_{x',i} ≠ β_{x,j}β_{x',j}` for every row `x` with
/// `x' = x + v_i + v_j`; equal vectors need `β_{x,i} ≠ β_{x,j}`.
pub fn verify_mds_pairwise(spec: &CodeSpec) -> Result<MdsVerdict> {
    if spec.r() != 2 {
        return Err(Error::Unsupported("the pairwise test needs r = 2".into()));
    }
    let (k, p, f) = (spec.k(), spec.p(), spec.field());
    let complete = (0..k).all(|j| (0..2).all(|l| (0..p).all(|x| spec.coef(l, x, j) != 0)));
    let ones = (0..k).all(|j| (0..p).all(|x| spec.coef(0, x, j) == 1));
    if !complete || !ones {
        return Err(Error::Unsupported("the pairwise test needs nonzero coefficients and a plain row sum".into()));
    }
    for i in 0..k {
        for j in i + 1..k {
            let vi = spec.vector(i).to_int();
            let vj = spec.vector(j).to_int();
            let ok = if vi == vj {
                (0..p).all(|x| spec.coef(1, x, i) != spec.coef(1, x, j))
            } else {
                let d = vi ^ vj;
                (0..p).all(|x| {
                    let y = x ^ d;
                    f.mul(spec.coef(1, x, i), spec.coef(1, y, i)) != f.mul(spec.coef(1, x, j), spec.coef(1, y, j))
                })
            };
            if !ok {
                return Ok(MdsVerdict::Fail { witness: vec![i, j] });
            }
        }
    }
    Ok(MdsVerdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        assign_coefficients_random, build_duplication, build_from_vectors, build_optimal_general, build_optimal_r2,
        build_weight3,
    };
    use crate::linalg::RVector;

    fn ones_skeleton() -> CodeSpec {
        build_from_vectors((0..=2).map(|i| RVector::unit(2, 2, i)).collect(), 2, 2).unwrap()
    }

    #[test]
    fn optimal_r2_is_mds() {
        for m in 1..=3 {
            assert_eq!(verify_mds(&build_optimal_r2(m).unwrap()), MdsVerdict::Pass);
        }
    }

    #[test]
    fn all_ones_over_gf2_fails() {
        let v = verify_mds(&ones_skeleton());
        let MdsVerdict::Fail { witness } = v else { panic!("expected failure") };
        assert_eq!(witness.len(), 2);
        assert!(witness.iter().all(|&c| c < 3));
        assert_eq!(verify_mds_pairwise(&ones_skeleton()).unwrap(), MdsVerdict::Fail { witness: vec![0, 1] });
    }

    #[test]
    fn general_r3_is_mds() {
        assert_eq!(verify_mds(&build_optimal_general(2, 3, 7, Some(3)).unwrap()), MdsVerdict::Pass);
    }

    #[test]
    fn pairwise_agrees_with_full() {
        let specs = [
            build_optimal_r2(2).unwrap(),
            build_optimal_r2(3).unwrap(),
            build_duplication(2, 2, 3).unwrap(),
            build_duplication(2, 3, 5).unwrap(),
            build_weight3(3, 9).unwrap(),
            ones_skeleton(),
            ones_skeleton().with_field(crate::field::Field::new(3, 1, None).unwrap()).unwrap(),
        ];
        for s in &specs {
            assert_eq!(verify_mds_pairwise(s).unwrap().passed(), verify_mds(s).passed(), "{}", s.name());
        }
        // Random assignments over GF(4) that may or may not be MDS.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let base = ones_skeleton().with_field(crate::field::Field::new(2, 2, None).unwrap()).unwrap();
        let (mut pass, mut fail) = (0, 0);
        for _ in 0..40 {
            let table = (0..3)
                .map(|_| vec![vec![1; 4], (0..4).map(|_| rng.random_range(1..4)).collect()])
                .collect();
            let candidate = base.with_coefficients(table).unwrap();
            let full = verify_mds(&candidate).passed();
            assert_eq!(verify_mds_pairwise(&candidate).unwrap().passed(), full);
            if full { pass += 1 } else { fail += 1 }
        }
        assert!(pass > 0 && fail > 0, "{pass} {fail}");
    }

    #[test]
    fn random_search_succeeds_over_gf13() {
        let spec = assign_coefficients_random(&ones_skeleton(), 13, 1, 50, false).unwrap();
        assert!(verify_mds(&spec).passed());
    }

    #[test]
    fn single_column_is_trivially_mds() {
        let sk = build_from_vectors(vec![RVector::unit(2, 2, 1)], 2, 2).unwrap();
        let one = assign_coefficients_random(&sk, 2, 0, 1, false).unwrap();
        assert!(verify_mds(&one).passed());
    }
}
