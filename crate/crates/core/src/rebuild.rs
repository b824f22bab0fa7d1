//! Access-reduced rebuilding of erased systematic columns.
//!
//! A plan lists exactly which zigzag sums and which surviving elements are
//! read. Accounting counts each element once however many equations use it.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::analysis::subsets;
use crate::code::{CodeArray, CodeSpec};
use crate::error::{Error, Result};
use crate::field::{is_prime, Elem};
use crate::linalg::{add_scaled_int, dot_int, RVector, Subspace};
use crate::system::{ElementSource, PreparedSystem};

/// How the erased elements are recovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanMode {
    /// Every read equation has exactly one erased element.
    Direct,
    /// The read equations are solved as a linear system.
    Solve,
}

/// The subspace choices behind a multi-erasure plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceTrace {
    /// Surviving column whose vector anchors the differences.
    pub anchor: usize,
    /// Surviving columns whose differences span `Z`.
    pub independent: Vec<usize>,
    pub z_basis: Vec<RVector>,
    pub u: RVector,
    pub x0_basis: Vec<RVector>,
    /// Coset direction, with `u·w = 1`.
    pub w: RVector,
    /// `t·w` for `t` in `[0, e)`.
    pub offsets: Vec<RVector>,
    /// The read row set `X`, union of the cosets.
    pub rows: Vec<usize>,
}

/// Which elements a rebuild reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebuildPlan {
    /// Erased systematic columns, ascending.
    pub erased: Vec<usize>,
    /// `parity_reads[l]`: zigzag indices read from parity `l`, ascending.
    pub parity_reads: Vec<Vec<usize>>,
    /// Rows read from each surviving systematic column, ascending.
    pub column_reads: Vec<(usize, Vec<usize>)>,
    pub trace: Option<SubspaceTrace>,
    pub mode: PlanMode,
    /// Set when the planner fell back to reading everything.
    pub diagnostic: Option<String>,
}

/// Element-access counts of a plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessReport {
    /// Accessed elements per surviving node, indexed over `[0, k + r)`.
    pub per_node: BTreeMap<usize, usize>,
    pub total_accessed: usize,
    /// `p·(k + r − e)`.
    pub surviving_total: usize,
    pub ratio: Ratio<u64>,
}

impl RebuildPlan {
    pub fn access_report(&self, spec: &CodeSpec) -> AccessReport {
        let mut per_node = BTreeMap::new();
        for (j, rows) in &self.column_reads {
            per_node.insert(*j, rows.len());
        }
        for (l, reads) in self.parity_reads.iter().enumerate() {
            per_node.insert(spec.k() + l, reads.len());
        }
        let total_accessed = per_node.values().sum();
        let surviving_total = spec.p() * (spec.n() - self.erased.len());
        AccessReport {
            per_node,
            total_accessed,
            surviving_total,
            ratio: Ratio::new(total_accessed as u64, surviving_total as u64),
        }
    }
}

fn check_systematic(spec: &CodeSpec, erased: &[usize]) -> Result<Vec<usize>> {
    let mut e = erased.to_vec();
    e.sort_unstable();
    e.dedup();
    if let Some(&bad) = e.iter().find(|&&j| j >= spec.k()) {
        return Err(Error::NotSystematic(bad));
    }
    if e.is_empty() {
        return Err(Error::InvalidParameter("no erased column".into()));
    }
    Ok(e)
}

fn union_rows(p: usize, sets: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut hit = vec![false; p];
    for x in sets {
        hit[x] = true;
    }
    (0..p).filter(|&x| hit[x]).collect()
}

/// Single-erasure plan: rows `X_j^l` come from parity `l`.
///
/// ```
/// use zigzag::constructions::build_optimal_r2;
/// use zigzag::rebuild::plan_single;
///
/// let code = build_optimal_r2(2).unwrap();
/// let plan = plan_single(&code, 1).unwrap();
/// assert_eq!(plan.parity_reads, vec![vec![0, 1], vec![0, 1]]);
/// assert_eq!(plan.column_reads, vec![(0, vec![0, 1]), (2, vec![0, 1])]);
/// ```
pub fn plan_single(spec: &CodeSpec, j: usize) -> Result<RebuildPlan> {
    let erased = check_systematic(spec, &[j])?;
    let p = spec.p();
    let parity_reads: Vec<Vec<usize>> = (0..spec.r())
        .map(|l| {
            let mut t: Vec<usize> = spec.rebuild_rows(j, l).iter().map(|&x| spec.zigzag_index(l, j, x)).collect();
            t.sort_unstable();
            t
        })
        .collect();
    let column_reads = (0..spec.k())
        .filter(|&u| u != j)
        .map(|u| {
            let rows = parity_reads
                .iter()
                .enumerate()
                .flat_map(|(l, ts)| ts.iter().map(move |&t| spec.source_row(l, u, t)));
            (u, union_rows(p, rows))
        })
        .collect();
    Ok(RebuildPlan { erased, parity_reads, column_reads, trace: None, mode: PlanMode::Direct, diagnostic: None })
}

fn full_plan(spec: &CodeSpec, erased: Vec<usize>, diagnostic: Option<String>) -> RebuildPlan {
    let all: Vec<usize> = (0..spec.p()).collect();
    RebuildPlan {
        parity_reads: vec![all.clone(); spec.r()],
        column_reads: (0..spec.k()).filter(|u| !erased.contains(u)).map(|u| (u, all.clone())).collect(),
        erased,
        trace: None,
        mode: PlanMode::Solve,
        diagnostic,
    }
}

/// Plan for `e ≤ r` erased systematic columns.
///
/// For `1 < e < r` the planner picks the lowest feasible surviving anchor
/// `v_a`, grows `Z` greedily from the differences `v_i − v_a`, takes the
/// first `u ⊥ Z` (integer order) with `u·(v_j − v_a) ≠ 0` for all erased `j`
/// and reads `X = {x : u·x ∈ [0, e)}` shifted per parity. An erasure of `r`
/// columns, or a pattern without a feasible anchor, reads everything.
pub fn plan_multi(spec: &CodeSpec, erased: &[usize]) -> Result<RebuildPlan> {
    let erased = check_systematic(spec, erased)?;
    let (e, r) = (erased.len(), spec.r());
    if e > r {
        return Err(Error::CapabilityExceeded { erased: e, r });
    }
    if e == 1 {
        return plan_single(spec, erased[0]);
    }
    if e == r {
        return Ok(full_plan(spec, erased, None));
    }
    if !is_prime(r as u32) {
        return Err(Error::CompositeModulus(r as u32));
    }
    let surviving: Vec<usize> = (0..spec.k()).filter(|j| !erased.contains(j)).collect();
    for &anchor in &surviving {
        if let Some(trace) = try_anchor(spec, &erased, &surviving, anchor)? {
            return plan_from_trace(spec, erased, trace);
        }
    }
    let msg = format!("no surviving anchor keeps every erased difference outside Z for {erased:?}; reading all");
    Ok(full_plan(spec, erased, Some(msg)))
}

fn try_anchor(spec: &CodeSpec, erased: &[usize], surviving: &[usize], anchor: usize) -> Result<Option<SubspaceTrace>> {
    let (r, m, p) = (spec.r() as u32, spec.m(), spec.p());
    let va = spec.vector(anchor);
    let diffs: Vec<RVector> = erased.iter().map(|&j| spec.vector(j).sub(va)).collect();
    if diffs.iter().any(RVector::is_zero) {
        return Ok(None);
    }
    let mut independent = Vec::new();
    let mut gens: Vec<RVector> = Vec::new();
    let mut z = Subspace::zero(r, m)?;
    for &i in surviving.iter().filter(|&&i| i != anchor) {
        let mut trial = gens.clone();
        trial.push(spec.vector(i).sub(va));
        let zt = Subspace::span(r, m, &trial)?;
        let mut ok = true;
        for d in &diffs {
            if zt.contains(d)? {
                ok = false;
                break;
            }
        }
        if ok {
            independent.push(i);
            gens = trial;
            z = zt;
        }
    }
    let diff_ints: Vec<usize> = diffs.iter().map(RVector::to_int).collect();
    let z_ints: Vec<usize> = z.basis().iter().map(RVector::to_int).collect();
    let u = (1..p).find(|&x| {
        z_ints.iter().all(|&b| dot_int(r, m, x, b) == 0) && diff_ints.iter().all(|&d| dot_int(r, m, x, d) != 0)
    });
    let Some(u) = u else {
        return Ok(None);
    };
    let uv = RVector::from_int(r, m, u);
    let c = uv.leading().expect("u is nonzero");
    let inv = (1..r).find(|&i| i * uv.digits()[c] as u32 % r == 1).expect("r is prime");
    let mut w = RVector::zero(r, m);
    w = w.add(&RVector::unit(r, m, c + 1).scale(inv));
    let x0 = Subspace::span(r, m, std::slice::from_ref(&uv))?.orthogonal_complement();
    let e = erased.len() as u32;
    let rows: Vec<usize> = (0..p).filter(|&x| dot_int(r, m, x, u) < e).collect();
    Ok(Some(SubspaceTrace {
        anchor,
        independent,
        z_basis: z.basis().to_vec(),
        u: uv,
        x0_basis: x0.basis().to_vec(),
        offsets: (0..e).map(|t| w.scale(t)).collect(),
        w,
        rows,
    }))
}

fn plan_from_trace(spec: &CodeSpec, erased: Vec<usize>, trace: SubspaceTrace) -> Result<RebuildPlan> {
    let (r, m, p) = (spec.r() as u32, spec.m(), spec.p());
    let va = spec.vector(trace.anchor).to_int();
    let shift = |rows: &[usize], by: usize, l: u32| -> Vec<usize> {
        rows.iter().map(|&x| add_scaled_int(r, m, x, by, l)).collect()
    };
    let parity_reads: Vec<Vec<usize>> = (0..r)
        .map(|l| {
            let mut t = shift(&trace.rows, va, l);
            t.sort_unstable();
            t
        })
        .collect();
    for &j in &erased {
        let d = spec.vector(j).sub(spec.vector(trace.anchor)).to_int();
        let covered = union_rows(p, (0..r).flat_map(|l| shift(&trace.rows, d, l)));
        if covered.len() != p {
            return Err(Error::Internal(format!("coset union misses rows of erased column {j}")));
        }
    }
    let column_reads = (0..spec.k())
        .filter(|u| !erased.contains(u))
        .map(|u| {
            let d = spec.vector(trace.anchor).sub(spec.vector(u)).to_int();
            (u, union_rows(p, (0..r).flat_map(|l| shift(&trace.rows, d, l))))
        })
        .collect();
    Ok(RebuildPlan { erased, parity_reads, column_reads, trace: Some(trace), mode: PlanMode::Solve, diagnostic: None })
}

/// A plan prepared for repeated execution, one stripe at a time.
#[derive(Debug, Clone)]
pub struct RebuildExecutor {
    plan: RebuildPlan,
    system: PreparedSystem,
}

impl RebuildExecutor {
    /// Builds and inverts the plan's equation system. Fails with
    /// [`Error::Singular`] when the coefficients cannot resolve the pattern.
    pub fn new(spec: &CodeSpec, plan: &RebuildPlan) -> Result<RebuildExecutor> {
        let equations: Vec<(usize, usize)> = plan
            .parity_reads
            .iter()
            .enumerate()
            .flat_map(|(l, ts)| ts.iter().map(move |&t| (l, t)))
            .collect();
        let system = PreparedSystem::new(spec, &plan.erased, &equations)?;
        let readable: std::collections::BTreeSet<(usize, usize)> =
            plan.column_reads.iter().flat_map(|(j, rows)| rows.iter().map(move |&x| (*j, x))).collect();
        if let Some(missing) = system.known_reads(spec).into_iter().find(|x| !readable.contains(x)) {
            return Err(Error::Internal(format!("plan omits element {missing:?} its equations need")));
        }
        if system.equations().count() != equations.len() {
            return Err(Error::Internal("plan reads a zigzag sum with no erased element".into()));
        }
        Ok(RebuildExecutor { plan: plan.clone(), system })
    }

    pub fn plan(&self) -> &RebuildPlan {
        &self.plan
    }

    /// Restores the erased columns of one stripe, in `plan.erased` order.
    /// Only planned elements are requested from `src`.
    pub fn execute(&self, spec: &CodeSpec, src: &dyn ElementSource) -> Vec<Vec<Elem>> {
        self.system.solve(spec, src)
    }
}

/// Rebuilds the erased columns of `array` along `plan`.
///
/// ```
/// use zigzag::code::CodeArray;
/// use zigzag::constructions::build_optimal_general;
/// use zigzag::rebuild::{execute_rebuild, plan_multi};
///
/// let code = build_optimal_general(2, 3, 7, Some(3)).unwrap();
/// let info: Vec<Vec<u16>> = (0..3).map(|j| (0..9).map(|x| ((x * 5 + j * 3) % 7) as u16).collect()).collect();
/// let original = CodeArray::encode(&code, info).unwrap();
/// let mut damaged = original.clone();
/// damaged.erase(&[0, 1]);
/// let plan = plan_multi(&code, &[0, 1]).unwrap();
/// let restored = execute_rebuild(&code, &plan, &damaged).unwrap();
/// assert_eq!(restored, vec![original.info[0].clone(), original.info[1].clone()]);
/// ```
pub fn execute_rebuild(spec: &CodeSpec, plan: &RebuildPlan, array: &CodeArray) -> Result<Vec<Vec<Elem>>> {
    let mut expected = plan.erased.clone();
    expected.sort_unstable();
    let systematic_erased: Vec<usize> = array.erased.iter().copied().filter(|&c| c < spec.k()).collect();
    if systematic_erased != expected || array.erased.iter().any(|&c| c >= spec.k()) {
        return Err(Error::InvalidParameter(format!(
            "plan covers {:?} but the array has {:?} erased",
            plan.erased, array.erased
        )));
    }
    Ok(RebuildExecutor::new(spec, plan)?.execute(spec, array))
}

/// Which erasure sets [`measure_ratio`] averages over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioMode {
    Single,
    /// All systematic erasure sets of the given size.
    Sets(usize),
}

/// Average rebuilding ratio over every erasure set of the mode, exactly.
///
/// ```
/// use num_rational::Ratio;
/// use zigzag::constructions::build_duplication;
/// use zigzag::rebuild::{measure_ratio, RatioMode};
///
/// let code = build_duplication(2, 2, 3).unwrap();
/// assert_eq!(measure_ratio(&code, RatioMode::Single).unwrap(), Ratio::new(4, 7));
/// ```
pub fn measure_ratio(spec: &CodeSpec, mode: RatioMode) -> Result<Ratio<u64>> {
    let e = match mode {
        RatioMode::Single => 1,
        RatioMode::Sets(e) => e,
    };
    if e == 0 || e > spec.k() {
        return Err(Error::InvalidParameter(format!("cannot erase {e} of {} columns", spec.k())));
    }
    let mut sum = Ratio::from_integer(0u64);
    let mut count = 0u64;
    for set in subsets(spec.k(), e) {
        sum += plan_multi(spec, &set)?.access_report(spec).ratio;
        count += 1;
    }
    Ok(sum / Ratio::from_integer(count))
}
