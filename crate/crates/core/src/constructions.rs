//! Factories for the standard families of zigzag codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{verify_mds, MdsVerdict};
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{dot_int, RVector};
use crate::rebuild::{plan_multi, RebuildExecutor};

fn standard_basis(r: u32, m: usize) -> Vec<RVector> {
    (0..=m).map(|i| RVector::unit(r, m, i)).collect()
}

/// Integer form of `u_j = e_0 + e_1 + … + e_j` over `F_2^m`: the top `j` digits set.
fn prefix_mask(m: usize, j: usize) -> usize {
    ((1usize << j) - 1) << (m - j)
}

/// The `(m+3, m+1)` code over GF(3) built from `0, e_1, …, e_m`.
///
/// Zigzag coefficients are `β_{i,j} = 2^{i·u_j}`, the exponent taken over `F_2`.
///
/// ```
/// use zigzag::constructions::build_optimal_r2;
///
/// let code = build_optimal_r2(2).unwrap();
/// assert_eq!((code.k(), code.p(), code.field().q()), (3, 4, 3));
/// assert_eq!(code.rebuild_rows(0, 0), &[0, 3]);
/// assert_eq!(code.rebuild_rows(1, 0), &[0, 1]);
/// assert_eq!(code.rebuild_rows(2, 0), &[0, 2]);
/// ```
pub fn build_optimal_r2(m: usize) -> Result<CodeSpec> {
    let mut code = build_duplication(m, 1, 3)?;
    code.set_name(format!("optimal-r2(m={m})"));
    Ok(code)
}

/// The `s`-fold duplication of the optimal two-parity code over GF(q).
///
/// Copy `t` of column `j` sits at index `t(m+1) + j`. Odd `q` allows
/// `s ≤ q − 1`, even `q` allows `s ≤ q − 2`.
pub fn build_duplication(m: usize, s: usize, q: u32) -> Result<CodeSpec> {
    if m == 0 || s == 0 {
        return Err(Error::InvalidParameter("duplication needs m >= 1 and s >= 1".into()));
    }
    let field = Field::of_order(q, None)?;
    let even = q % 2 == 0;
    if (even && s + 2 > q as usize) || (!even && s + 1 > q as usize) {
        return Err(Error::FieldBound { s, q });
    }
    let p = 1usize << m;
    let a = |e: i64| field.alpha_pow(e);
    let mut columns = Vec::with_capacity(s * (m + 1));
    for t in 0..s as i64 {
        for (j, v) in standard_basis(2, m).into_iter().enumerate() {
            let mask = prefix_mask(m, j);
            let zig: Vec<Elem> = (0..p)
                .map(|i| {
                    let hit = dot_int(2, m, i, mask) == 1;
                    match (even, hit) {
                        (false, true) => a(t + 1),
                        (false, false) => a(t),
                        (true, true) => a(-t - 1),
                        (true, false) => a(t + 1),
                    }
                })
                .collect();
            columns.push((v, t as usize, vec![vec![1; p], zig]));
        }
    }
    CodeSpec::new(format!("dup(m={m},s={s},q={q})"), field, 2, m, columns)
}

/// Vectors of weight three with one 1 in each third of the coordinates,
/// in lexicographic order of the three positions.
pub fn weight3_vectors(m: usize) -> Result<Vec<[usize; 3]>> {
    if m == 0 || m % 3 != 0 {
        return Err(Error::InvalidParameter(format!("m = {m} must be a positive multiple of 3")));
    }
    let t = m / 3;
    let mut out = Vec::with_capacity(t * t * t);
    for i1 in 1..=t {
        for i2 in t + 1..=2 * t {
            for i3 in 2 * t + 1..=m {
                out.push([i1, i2, i3]);
            }
        }
    }
    Ok(out)
}

/// `M_i`: ones from the start of `i`'s third up to `i`, as an integer form.
fn partial_sum_mask(m: usize, i: usize) -> usize {
    let t = m / 3;
    let start = (i - 1) / t * t + 1;
    (start..=i).map(|l| 1usize << (m - l)).sum()
}

/// The columns of `M_v` for `v = {i1, i2, i3}`, each as an integer form.
pub fn weight3_matrix(m: usize, v: [usize; 3]) -> [usize; 3] {
    v.map(|i| partial_sum_mask(m, i))
}

/// Zigzag exponent `t = x·M_v`, read as a 3-bit integer with the first
/// component most significant.
pub fn weight3_exponent(m: usize, v: [usize; 3], x: usize) -> u32 {
    weight3_matrix(m, v).iter().fold(0, |acc, &c| (acc << 1) | dot_int(2, m, x, c))
}

/// The two-parity code on the weight-3 vector set over GF(9) or GF(16).
pub fn build_weight3(m: usize, q: u32) -> Result<CodeSpec> {
    let vectors = weight3_vectors(m)?;
    if q != 9 && q != 16 {
        return Err(Error::InvalidParameter(format!("weight-3 codes use q = 9 or 16, got {q}")));
    }
    let field = Field::of_order(q, None)?;
    let p = 1usize << m;
    let columns = vectors
        .iter()
        .map(|&v| {
            let mut digits = vec![0u8; m];
            for i in v {
                digits[i - 1] = 1;
            }
            let zig = (0..p).map(|x| field.alpha_pow(weight3_exponent(m, v, x) as i64)).collect();
            (RVector::new(2, digits).expect("binary digits"), 0, vec![vec![1; p], zig])
        })
        .collect();
    CodeSpec::new(format!("weight3(m={m},q={q})"), field, 2, m, columns)
}

/// The `(m+1+r, m+1)` code built from `0, e_1, …, e_m` over `Z_r^m`.
///
/// `r = 2` gives the single-copy duplication formula over GF(q), identical
/// to [`build_optimal_r2`] when `q = 3`. `r = 3` needs `q ≥ 2(m+1)`. Larger
/// `r` has no closed-form coefficients; use [`assign_coefficients_random`].
pub fn build_optimal_general(m: usize, r: usize, q: u32, alpha_hint: Option<u32>) -> Result<CodeSpec> {
    match r {
        2 if alpha_hint.is_none() => {
            let mut code = build_duplication(m, 1, q)?;
            code.set_name(format!("optimal-general(m={m},r=2,q={q})"));
            Ok(code)
        }
        2 => Err(Error::Unsupported("r = 2 codes use the default primitive element".into())),
        3 => build_optimal_r3(m, q, alpha_hint),
        _ => Err(Error::Unsupported(format!(
            "no explicit coefficients for r = {r}; build the skeleton and use assign_coefficients_random"
        ))),
    }
}

fn build_optimal_r3(m: usize, q: u32, alpha_hint: Option<u32>) -> Result<CodeSpec> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if (q as usize) < 2 * (m + 1) {
        return Err(Error::InvalidParameter(format!("r = 3 needs q >= 2(m+1) = {}, got {q}", 2 * (m + 1))));
    }
    let field = Field::of_order(q, alpha_hint)?;
    let p = 3usize.pow(m as u32);
    let columns = standard_basis(3, m)
        .into_iter()
        .enumerate()
        .map(|(c, v)| {
            let table = (0..3)
                .map(|l| {
                    (0..p)
                        .map(|x| {
                            if c == 0 || l == 0 {
                                return 1;
                            }
                            // Digit c of x + s·e_c runs through digit_c(x) + s.
                            let digit = RVector::from_int(3, m, x).digits()[c - 1] as usize;
                            let n = (0..l).filter(|s| (digit + s) % 3 == 0).count();
                            field.alpha_pow((c * n) as i64)
                        })
                        .collect()
                })
                .collect();
            (v, 0, table)
        })
        .collect();
    CodeSpec::new(format!("optimal-general(m={m},r=3,q={q})"), field, 3, m, columns)
}

/// A code skeleton on distinct vectors with all coefficients 1 over GF(2).
///
/// ```
/// use zigzag::constructions::build_from_vectors;
/// use zigzag::linalg::RVector;
///
/// let t = vec![RVector::new(3, vec![0, 2]).unwrap()];
/// assert!(build_from_vectors(t, 3, 2).is_ok());
/// let t = vec![RVector::new(4, vec![0, 2]).unwrap()];
/// assert!(build_from_vectors(t, 4, 2).is_err());
/// ```
pub fn build_from_vectors(vectors: Vec<RVector>, r: usize, m: usize) -> Result<CodeSpec> {
    for (i, v) in vectors.iter().enumerate() {
        if vectors[..i].contains(v) {
            return Err(Error::DuplicateVector { vector: v.digits().to_vec() });
        }
    }
    let field = Field::new(2, 1, None)?;
    CodeSpec::skeleton("vectors", field, r, m, vectors.into_iter().map(|v| (v, 0)).collect())
}

/// `s` copies of every column of `base`, grouped by copy index.
///
/// Copies of one vector need distinct coefficients, so the result is a
/// placeholder skeleton over the base field.
pub fn duplicate(base: &CodeSpec, s: usize) -> Result<CodeSpec> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let vectors = (0..s).flat_map(|t| base.columns().iter().map(move |c| (c.vector.clone(), t))).collect();
    CodeSpec::skeleton(format!("{}x{s}", base.name()), base.field().clone(), base.r(), base.m(), vectors)
}

/// The field order above which random coefficients are guaranteed to
/// admit an MDS assignment, `p(k−1) + 2`.
pub fn recommended_random_order(spec: &CodeSpec) -> usize {
    spec.p() * spec.k().saturating_sub(1) + 2
}

/// Random nonzero coefficients over GF(q), retried until the code is MDS.
///
/// With `check_multi_erasure` every systematic erasure set of size below
/// `r` must also yield a solvable access-reduced rebuild. Deterministic for
/// a fixed `seed`.
pub fn assign_coefficients_random(
    spec: &CodeSpec,
    q: u32,
    seed: u64,
    max_tries: usize,
    check_multi_erasure: bool,
) -> Result<CodeSpec> {
    let field = Field::of_order(q, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = Vec::new();
    for _ in 0..max_tries {
        let table: Vec<Vec<Vec<Elem>>> = (0..spec.k())
            .map(|_| {
                (0..spec.r())
                    .map(|l| (0..spec.p()).map(|_| if l == 0 { 1 } else { rng.random_range(1..q) as Elem }).collect())
                    .collect()
            })
            .collect();
        let candidate = spec.with_field(field.clone())?.with_coefficients(table)?;
        if let MdsVerdict::Fail { witness: w } = verify_mds(&candidate) {
            witness = w;
            continue;
        }
        if check_multi_erasure {
            if let Some(w) = multi_erasure_failure(&candidate)? {
                witness = w;
                continue;
            }
        }
        let mut out = candidate;
        out.set_name(format!("{}+random(q={q},seed={seed})", spec.name()));
        return Ok(out);
    }
    Err(Error::SearchExhausted { tries: max_tries, witness })
}

fn multi_erasure_failure(spec: &CodeSpec) -> Result<Option<Vec<usize>>> {
    for e in 2..spec.r().min(spec.k() + 1) {
        for set in crate::analysis::subsets(spec.k(), e) {
            let plan = plan_multi(spec, &set)?;
            match RebuildExecutor::new(spec, &plan) {
                Ok(_) => {}
                Err(Error::Singular { .. }) => return Ok(Some(set)),
                Err(other) => return Err(other),
            }
        }
    }
    Ok(None)
}
