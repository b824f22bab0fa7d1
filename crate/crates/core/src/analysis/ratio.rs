use num_integer::gcd;
use num_rational::Ratio;

use crate::analysis::subsets;
use crate::code::{rebuild_direction, CodeSpec};
use crate::error::{Error, Result};
use crate::linalg::dot_int;
use crate::rebuild::{plan_multi, RatioMode};

type Q = Ratio<u64>;

/// Closed-form rebuilding ratio.
///
/// Single erasures: rebuilding `v` reads `p / gcd(r, c_{v,u})` rows of a
/// surviving column `u`, with `c_{v,u} = w_v·(v − u) − 1` and `w_v` the
/// rebuild direction of `v`, plus `p/r` from each parity. Erasure sets of
/// size `e` count, per set, how many residues `u·x` the shifted cosets of
/// the planner's choice of `u` reach in each column.
///
/// ```
/// use num_rational::Ratio;
/// use zigzag::analysis::ratio_formula;
/// use zigzag::constructions::build_optimal_general;
/// use zigzag::rebuild::RatioMode;
///
/// let code = build_optimal_general(2, 3, 7, Some(3)).unwrap();
/// assert_eq!(ratio_formula(&code, RatioMode::Single).unwrap(), Ratio::new(1, 3));
/// assert_eq!(ratio_formula(&code, RatioMode::Sets(2)).unwrap(), Ratio::new(2, 3));
/// ```
pub fn ratio_formula(spec: &CodeSpec, mode: RatioMode) -> Result<Q> {
    match mode {
        RatioMode::Single => Ok(single_formula(spec)),
        RatioMode::Sets(1) => Ok(single_formula(spec)),
        RatioMode::Sets(e) => sets_formula(spec, e),
    }
}

fn single_formula(spec: &CodeSpec) -> Q {
    let (r, m, k) = (spec.r() as u32, spec.m(), spec.k() as u64);
    let mut sum = Q::from_integer(0);
    for v in 0..spec.k() {
        let w = rebuild_direction(spec.vector(v)).to_int();
        for u in (0..spec.k()).filter(|&u| u != v) {
            let diff = spec.vector(v).sub(spec.vector(u)).to_int();
            let c = (dot_int(r, m, w, diff) + r - 1) % r;
            sum += Q::new(1, gcd(r, c) as u64);
        }
    }
    (sum + Q::from_integer(k)) / Q::from_integer(k * (k - 1 + r as u64))
}

fn sets_formula(spec: &CodeSpec, e: usize) -> Result<Q> {
    let (r, m, k) = (spec.r(), spec.m(), spec.k());
    if e == 0 || e > k {
        return Err(Error::InvalidParameter(format!("cannot erase {e} of {k} columns")));
    }
    if e >= r {
        return Ok(Q::from_integer(1));
    }
    let mut total = Q::from_integer(0);
    let sets = subsets(k, e);
    for set in &sets {
        let plan = plan_multi(spec, set)?;
        let Some(trace) = plan.trace else {
            total += Q::from_integer(1);
            continue;
        };
        let u = trace.u.to_int();
        let va = spec.vector(trace.anchor);
        // Residue classes of u·x hit by X + l·d over all l, for d = v_a − v_j.
        let mut classes = r * e;
        for j in (0..k).filter(|j| !set.contains(j)) {
            let d = dot_int(r as u32, m, u, va.sub(spec.vector(j)).to_int()) as usize;
            let mut hit = vec![false; r];
            for t in 0..e {
                for l in 0..r {
                    hit[(t + l * d) % r] = true;
                }
            }
            classes += hit.iter().filter(|&&h| h).count();
        }
        total += Q::new(classes as u64, (r * (k + r - e)) as u64);
    }
    Ok(total / Q::from_integer(sets.len() as u64))
}

/// Two-parity ratio from the intersections `|f_i(X_i) ∩ f_j(X_i)|`:
/// `1/2 + Σ_{i≠j} |f_i(X_i) ∩ f_j(X_i)| / (2^m k (k+1))`.
pub fn ratio_from_intersections(spec: &CodeSpec) -> Result<Q> {
    if spec.r() != 2 {
        return Err(Error::Unsupported("the intersection form needs r = 2".into()));
    }
    let (p, k) = (spec.p(), spec.k());
    let mut sum = 0u64;
    for i in 0..k {
        let xi = spec.rebuild_rows(i, 0);
        let mut mark = vec![false; p];
        for &x in xi {
            mark[spec.zigzag_index(1, i, x)] = true;
        }
        for j in (0..k).filter(|&j| j != i) {
            sum += xi.iter().filter(|&&x| mark[spec.zigzag_index(1, j, x)]).count() as u64;
        }
    }
    Ok(Q::new(1, 2) + Q::new(sum, (p * k * (k + 1)) as u64))
}

/// Ratio of an `s`-duplication of a code with ratio `base` and `k` columns:
/// `base·(1 + (s−1)/(sk+1))`.
pub fn duplication_ratio(base: Q, k: usize, s: usize) -> Q {
    let (k, s) = (k as u64, s as u64);
    base * (Q::from_integer(1) + Q::new(s - 1, s * k + 1))
}

/// `(1/2)(1 + (s−1)/(s(m+1)+1))`, the `s`-duplication of the optimal
/// two-parity code.
///
/// ```
/// let r = zigzag::analysis::optimal_duplication_ratio(10, 2);
/// assert_eq!(format!("{:.3}", *r.numer() as f64 / *r.denom() as f64), "0.522");
/// ```
pub fn optimal_duplication_ratio(m: usize, s: usize) -> Q {
    duplication_ratio(Q::new(1, 2), m + 1, s)
}

/// Upper bound on the ratio for `e` erasures when `|I|` surviving columns
/// join `Z`: `e/r + (r−e)(k−|I|−e)/(r(k+r−e))`.
pub fn multi_erasure_ratio_bound(k: usize, r: usize, e: usize, independent: usize) -> Q {
    let (k, r, e, i) = (k as u64, r as u64, e as u64, independent as u64);
    Q::new(e, r) + Q::new((r - e) * (k - i - e), r * (k + r - e))
}

/// `1/2 + 9/(2m)`, the large-`m` ratio of the weight-3 construction.
pub fn weight3_ratio_asymptote(m: usize) -> Q {
    Q::new(1, 2) + Q::new(9, 2 * m as u64)
}
