//! The code object and the encoder.
//!
//! A code with `r` parities over `p = r^m` rows assigns each systematic
//! column `j` a vector `v_j` in `Z_r^m`. Parity `l` places row `x` of
//! column `j` into zigzag set `x + l·v_j`, weighted by the coefficient
//! stored for `(l, x, j)`. Parity 0 is the plain row sum.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{add_scaled_int, hyperplane_rows, Permutation, RVector};

/// One systematic column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnDef {
    pub vector: RVector,
    /// Which duplication copy this column is; 0 for unduplicated codes.
    pub copy_index: usize,
    /// `rebuild_sets[l]` is the row set `X^l` rebuilt from parity `l`.
    pub rebuild_sets: Vec<Vec<usize>>,
    /// `coefficients[l][x]` multiplies row `x` of this column in parity `l`.
    pub coefficients: Vec<Vec<Elem>>,
}

/// The rebuild-set direction of a column: `v` itself, or `-(1, …, 1)` for
/// the zero vector.
pub fn rebuild_direction(v: &RVector) -> RVector {
    if v.is_zero() {
        RVector::new(v.r(), vec![1; v.m()]).expect("1 < r").neg()
    } else {
        v.clone()
    }
}

/// `X^l = {x : x·w ≡ -l (mod r)}` for every `l`, with `w` from
/// [`rebuild_direction`].
pub fn rebuild_sets_for(v: &RVector) -> Vec<Vec<usize>> {
    let w = rebuild_direction(v);
    let r = v.r();
    (0..r).map(|l| hyperplane_rows(&w, (r - l) % r).expect("direction is nonzero")).collect()
}

/// A fully described zigzag code.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    name: String,
    field: Field,
    r: usize,
    m: usize,
    p: usize,
    columns: Vec<ColumnDef>,
    placeholder: bool,
    /// `forward[j][l][x] = x + l·v_j`.
    forward: Vec<Vec<Vec<u32>>>,
    /// `backward[j][l][t] = t - l·v_j`.
    backward: Vec<Vec<Vec<u32>>>,
}

impl PartialEq for CodeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.field == other.field
            && self.r == other.r
            && self.m == other.m
            && self.columns == other.columns
    }
}

impl CodeSpec {
    /// Assembles a code from column vectors, copy indices and coefficient
    /// tables (`coefficients[j][l][x]`), installing the standard rebuild sets.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        r: usize,
        m: usize,
        columns: Vec<(RVector, usize, Vec<Vec<Elem>>)>,
    ) -> Result<CodeSpec> {
        if r < 2 || m == 0 {
            return Err(Error::InvalidParameter(format!("need r >= 2 and m >= 1, got r = {r}, m = {m}")));
        }
        let p = r.checked_pow(m as u32).filter(|&p| p <= 1 << 24).ok_or_else(|| {
            Error::InvalidParameter(format!("{r}^{m} rows is too many"))
        })?;
        let mut defs = Vec::with_capacity(columns.len());
        for (vector, copy_index, coefficients) in columns {
            if vector.r() as usize != r || vector.m() != m {
                return Err(Error::DimensionMismatch(format!("column vector {vector:?} is not in Z_{r}^{m}")));
            }
            if !vector.is_zero() && vector.content() != 1 {
                return Err(Error::GcdViolation { vector: vector.digits().to_vec(), r: r as u32 });
            }
            let rebuild_sets = rebuild_sets_for(&vector);
            defs.push(ColumnDef { vector, copy_index, rebuild_sets, coefficients });
        }
        let mut spec = CodeSpec {
            name: name.into(),
            field,
            r,
            m,
            p,
            columns: defs,
            placeholder: false,
            forward: Vec::new(),
            backward: Vec::new(),
        };
        spec.build_tables();
        spec.validate()?;
        Ok(spec)
    }

    /// A code whose coefficients are all 1, flagged as a placeholder.
    pub fn skeleton(name: impl Into<String>, field: Field, r: usize, m: usize, vectors: Vec<(RVector, usize)>) -> Result<CodeSpec> {
        let p = r.checked_pow(m as u32).unwrap_or(usize::MAX);
        let ones = || vec![vec![1 as Elem; p.min(1 << 24)]; r];
        let columns = vectors.into_iter().map(|(v, t)| (v, t, ones())).collect();
        let mut spec = CodeSpec::new(name, field, r, m, columns)?;
        spec.placeholder = true;
        Ok(spec)
    }

    fn build_tables(&mut self) {
        let (r, m, p) = (self.r as u32, self.m, self.p);
        self.forward = self
            .columns
            .iter()
            .map(|c| {
                let vi = c.vector.to_int();
                (0..r).map(|l| (0..p).map(|x| add_scaled_int(r, m, x, vi, l) as u32).collect()).collect()
            })
            .collect();
        self.backward = self
            .forward
            .iter()
            .map(|per_l| {
                per_l
                    .iter()
                    .map(|f| {
                        let mut inv = vec![0u32; p];
                        for (x, &t) in f.iter().enumerate() {
                            inv[t as usize] = x as u32;
                        }
                        inv
                    })
                    .collect()
            })
            .collect();
    }

    /// Checks table shapes, coefficient ranges and the rebuild-set partition.
    pub fn validate(&self) -> Result<()> {
        let q = self.field.q();
        for (j, c) in self.columns.iter().enumerate() {
            if c.coefficients.len() != self.r || c.coefficients.iter().any(|t| t.len() != self.p) {
                return Err(Error::DimensionMismatch(format!("coefficient table of column {j} is not {} x {}", self.r, self.p)));
            }
            for (l, table) in c.coefficients.iter().enumerate() {
                for (x, &a) in table.iter().enumerate() {
                    if a == 0 || a as u32 >= q {
                        return Err(Error::InvalidParameter(format!(
                            "coefficient ({l}, {x}, {j}) = {a} is not a nonzero element of GF({q})"
                        )));
                    }
                    if l == 0 && a != 1 {
                        return Err(Error::InvalidParameter(format!("row-parity coefficient ({x}, {j}) must be 1")));
                    }
                }
            }
            let mut seen = vec![false; self.p];
            for set in &c.rebuild_sets {
                if set.len() != self.p / self.r {
                    return Err(Error::Internal(format!("rebuild set of column {j} has {} rows", set.len())));
                }
                for &x in set {
                    if std::mem::replace(&mut seen[x], true) {
                        return Err(Error::Internal(format!("rebuild sets of column {j} overlap at row {x}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of parities.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of rows, `r^m`.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of systematic columns.
    pub fn k(&self) -> usize {
        self.columns.len()
    }

    /// Total number of columns, `k + r`.
    pub fn n(&self) -> usize {
        self.columns.len() + self.r
    }

    pub fn columns(&self) -> &[ColumnDef] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &ColumnDef {
        &self.columns[j]
    }

    pub fn vector(&self, j: usize) -> &RVector {
        &self.columns[j].vector
    }

    /// True while the coefficients are the all-ones placeholder of a skeleton.
    pub fn is_placeholder(&self) -> bool {
        self.placeholder
    }

    /// Coefficient of row `x` of column `j` in parity `l`.
    pub fn coef(&self, l: usize, x: usize, j: usize) -> Elem {
        self.columns[j].coefficients[l][x]
    }

    /// Zigzag index of row `x` of column `j` in parity `l`.
    pub fn zigzag_index(&self, l: usize, j: usize, x: usize) -> usize {
        self.forward[j][l][x] as usize
    }

    /// The row of column `j` that lands in zigzag set `t` of parity `l`.
    pub fn source_row(&self, l: usize, j: usize, t: usize) -> usize {
        self.backward[j][l][t] as usize
    }

    /// The permutation `f_j^l`.
    ///
    /// ```
    /// use zigzag::constructions::build_optimal_r2;
    ///
    /// let code = build_optimal_r2(2).unwrap();
    /// assert_eq!(code.zigzag_of(1, 1).images(), &[2, 3, 0, 1]);
    /// assert!(code.zigzag_of(0, 2).is_identity());
    /// ```
    pub fn zigzag_of(&self, l: usize, j: usize) -> Permutation {
        Permutation::new(self.forward[j][l].clone()).expect("translations are bijections")
    }

    /// `X_j^l`.
    pub fn rebuild_rows(&self, j: usize, l: usize) -> &[usize] {
        &self.columns[j].rebuild_sets[l]
    }

    /// Dense coefficient access in `(l, i, j)` order.
    pub fn coefficient_table(&self) -> Vec<Vec<Vec<Elem>>> {
        (0..self.r)
            .map(|l| (0..self.p).map(|i| (0..self.k()).map(|j| self.coef(l, i, j)).collect()).collect())
            .collect()
    }

    /// Replaces every coefficient; `table[j][l][x]`.
    pub fn with_coefficients(&self, table: Vec<Vec<Vec<Elem>>>) -> Result<CodeSpec> {
        if table.len() != self.k() {
            return Err(Error::DimensionMismatch(format!("{} coefficient columns for {} columns", table.len(), self.k())));
        }
        let mut out = self.clone();
        for (c, t) in out.columns.iter_mut().zip(table) {
            c.coefficients = t;
        }
        out.placeholder = false;
        out.validate()?;
        Ok(out)
    }

    /// A copy over another field, keeping every coefficient. Fails when a
    /// coefficient does not fit the new field.
    pub fn with_field(&self, field: Field) -> Result<CodeSpec> {
        let mut out = self.clone();
        out.field = field;
        out.validate()?;
        Ok(out)
    }

    /// Whether two columns share a vector, i.e. the same zigzag permutations.
    pub fn same_vector(&self, a: usize, b: usize) -> bool {
        self.columns[a].vector == self.columns[b].vector
    }

    /// Computes all `r` parity columns of one stripe into `parity`.
    pub fn encode_into(&self, info: &[&[Elem]], parity: &mut [Vec<Elem>]) {
        let f = &self.field;
        for (l, out) in parity.iter_mut().enumerate() {
            out.clear();
            out.resize(self.p, 0);
            for (j, col) in info.iter().enumerate() {
                let fwd = &self.forward[j][l];
                let coefs = &self.columns[j].coefficients[l];
                for x in 0..self.p {
                    let a = col[x];
                    if a != 0 {
                        let t = fwd[x] as usize;
                        out[t] = f.add(out[t], f.mul(coefs[x], a));
                    }
                }
            }
        }
    }
}

fn check_info(spec: &CodeSpec, info: &[Vec<Elem>]) -> Result<()> {
    if info.len() != spec.k() || info.iter().any(|c| c.len() != spec.p()) {
        return Err(Error::DimensionMismatch(format!(
            "information array must be {} columns of {} rows",
            spec.k(),
            spec.p()
        )));
    }
    let q = spec.field().q();
    if let Some(&bad) = info.iter().flatten().find(|&&a| a as u32 >= q) {
        return Err(Error::ElementOutOfRange { value: bad as u32, q });
    }
    Ok(())
}

/// Computes the parity columns, `parity[l][t]`, of a column-major
/// information array `info[j][x]`.
///
/// ```
/// use zigzag::code::encode;
/// use zigzag::constructions::build_optimal_r2;
///
/// let code = build_optimal_r2(2).unwrap();
/// let mut info = vec![vec![0; 4]; 3];
/// info[1][2] = 1;
/// let parity = encode(&code, &info).unwrap();
/// assert_eq!(parity[0], vec![0, 0, 1, 0]);
/// assert_eq!(parity[1], vec![2, 0, 0, 0]);
/// ```
pub fn encode(spec: &CodeSpec, info: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
    check_info(spec, info)?;
    let views: Vec<&[Elem]> = info.iter().map(Vec::as_slice).collect();
    let mut parity = vec![Vec::new(); spec.r()];
    spec.encode_into(&views, &mut parity);
    Ok(parity)
}

/// The permutation `f_j^l` taking rows of column `j` to zigzag indices of parity `l`.
pub fn zigzag_of(spec: &CodeSpec, l: usize, j: usize) -> Permutation {
    spec.zigzag_of(l, j)
}

/// An information array with its parities and the set of unavailable columns.
///
/// Columns are indexed over `[0, k + r)`: systematic first, then parities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeArray {
    /// `info[j][x]`, column-major.
    pub info: Vec<Vec<Elem>>,
    /// `parity[l][t]`.
    pub parity: Vec<Vec<Elem>>,
    pub erased: BTreeSet<usize>,
}

impl CodeArray {
    /// Encodes `info` into a complete codeword.
    pub fn encode(spec: &CodeSpec, info: Vec<Vec<Elem>>) -> Result<CodeArray> {
        let parity = encode(spec, &info)?;
        Ok(CodeArray { info, parity, erased: BTreeSet::new() })
    }

    pub fn zeros(spec: &CodeSpec) -> CodeArray {
        CodeArray {
            info: vec![vec![0; spec.p()]; spec.k()],
            parity: vec![vec![0; spec.p()]; spec.r()],
            erased: BTreeSet::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.info.len()
    }

    /// Column `c` over `[0, k + r)`.
    pub fn column(&self, c: usize) -> &[Elem] {
        if c < self.k() {
            &self.info[c]
        } else {
            &self.parity[c - self.k()]
        }
    }

    pub fn column_mut(&mut self, c: usize) -> &mut Vec<Elem> {
        let k = self.k();
        if c < k {
            &mut self.info[c]
        } else {
            &mut self.parity[c - k]
        }
    }

    /// Marks columns unavailable and scrubs their contents to zero.
    pub fn erase(&mut self, columns: &[usize]) {
        for &c in columns {
            self.column_mut(c).iter_mut().for_each(|a| *a = 0);
            self.erased.insert(c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot_int;

    fn small_code() -> CodeSpec {
        crate::constructions::build_optimal_r2(2).unwrap()
    }

    #[test]
    fn zigzag_zero_of_the_worked_example() {
        let code = small_code();
        // z_0 collects a_{0,0}, a_{2,1}, a_{1,2} with coefficients 1, 2, 2.
        let members: Vec<(usize, usize, Elem)> =
            (0..3).map(|j| (code.source_row(1, j, 0), j, code.coef(1, code.source_row(1, j, 0), j))).collect();
        assert_eq!(members, vec![(0, 0, 1), (2, 1, 2), (1, 2, 2)]);
    }

    #[test]
    fn row_parity_is_identity() {
        let code = small_code();
        for j in 0..code.k() {
            assert!(code.zigzag_of(0, j).is_identity());
        }
    }

    #[test]
    fn construction_one_permutations_are_involutions() {
        let code = crate::constructions::build_optimal_r2(3).unwrap();
        for j in 0..code.k() {
            let f = code.zigzag_of(1, j);
            assert!(f.compose(&f).is_identity());
        }
    }

    #[test]
    fn general_r_zigzag_is_translation() {
        let code = crate::constructions::build_optimal_general(2, 3, 7, Some(3)).unwrap();
        let f = code.zigzag_of(2, 2);
        for x in 0..9 {
            assert_eq!(f.apply(x), add_scaled_int(3, 2, x, RVector::unit(3, 2, 2).to_int(), 2));
        }
    }

    #[test]
    fn rebuild_sets_partition_rows() {
        let code = crate::constructions::build_optimal_general(2, 3, 7, Some(3)).unwrap();
        for c in code.columns() {
            let mut all: Vec<usize> = c.rebuild_sets.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..9).collect::<Vec<_>>());
        }
        // Zero column: x·(1, 1) = l.
        for l in 0..3 {
            let expect: Vec<usize> = (0..9).filter(|&x| dot_int(3, 2, x, 4) == l as u32).collect();
            assert_eq!(code.rebuild_rows(0, l), expect.as_slice());
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let code = small_code();
        assert!(matches!(encode(&code, &vec![vec![0; 4]; 2]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(encode(&code, &[vec![0; 3], vec![0; 4], vec![0; 4]]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(encode(&code, &[vec![3, 0, 0, 0], vec![0; 4], vec![0; 4]]), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn zero_info_gives_zero_parity() {
        let code = small_code();
        let parity = encode(&code, &vec![vec![0; 4]; 3]).unwrap();
        assert!(parity.iter().flatten().all(|&a| a == 0));
    }

    #[test]
    fn gcd_violation_names_vector() {
        let gf5 = Field::new(5, 1, None).unwrap();
        let bad = RVector::new(4, vec![0, 2]).unwrap();
        let err = CodeSpec::skeleton("x", gf5, 4, 2, vec![(bad, 0)]).unwrap_err();
        assert_eq!(err, Error::GcdViolation { vector: vec![0, 2], r: 4 });
    }
}
