//! Plain-text code descriptors, one `key = value` per line in a fixed order.
//!
//! ```text
//! format_version = 1
//! name = optimal-r2(m=1)
//! r = 2
//! m = 1
//! field.p = 3
//! field.d = 1
//! field.modulus = 0 1
//! field.alpha = 2
//! columns = 2
//! column.0 = vector 0 copy 0
//! column.1 = vector 1 copy 0
//! coef.0.0 = 1 1
//! coef.0.1 = 1 1
//! coef.1.0 = 1 1
//! coef.1.1 = 1 2
//! ```
//!
//! `coef.l.i` lists the coefficients of row `i` under parity `l`, one per
//! column. Modulus coefficients run from the constant term up to the
//! leading 1.

use std::fmt::Write;
use std::path::Path;

use zigzag::code::CodeSpec;
use zigzag::field::{Elem, Field};
use zigzag::linalg::RVector;

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Canonical text of `spec`.
pub fn save(spec: &CodeSpec) -> String {
    let f = spec.field();
    let mut out = String::new();
    let _ = writeln!(out, "format_version = {FORMAT_VERSION}");
    let _ = writeln!(out, "name = {}", spec.name());
    let _ = writeln!(out, "r = {}", spec.r());
    let _ = writeln!(out, "m = {}", spec.m());
    let _ = writeln!(out, "field.p = {}", f.p());
    let _ = writeln!(out, "field.d = {}", f.d());
    let _ = writeln!(out, "field.modulus = {}", join(f.modulus()));
    let _ = writeln!(out, "field.alpha = {}", f.alpha());
    let _ = writeln!(out, "columns = {}", spec.k());
    for (j, c) in spec.columns().iter().enumerate() {
        let _ = writeln!(out, "column.{j} = vector {} copy {}", join(c.vector.digits()), c.copy_index);
    }
    for (l, rows) in spec.coefficient_table().iter().enumerate() {
        for (i, row) in rows.iter().enumerate() {
            let _ = writeln!(out, "coef.{l}.{i} = {}", join(row));
        }
    }
    out
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self, key: &str) -> CliResult<&'a str> {
        let (n, line) = self.iter.next().ok_or_else(|| CliError::Format(format!("missing `{key}`")))?;
        let (k, v) = line
            .split_once(" = ")
            .ok_or_else(|| CliError::Format(format!("line {}: expected `key = value`", n + 1)))?;
        if k != key {
            return Err(CliError::Format(format!("line {}: expected `{key}`, found `{k}`", n + 1)));
        }
        Ok(v)
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> CliResult<T> {
        let v = self.next(key)?;
        v.parse().map_err(|_| CliError::Format(format!("`{key}`: `{v}` is not a number")))
    }
}

fn numbers<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<Vec<T>> {
    v.split(' ')
        .map(|x| x.parse().map_err(|_| CliError::Format(format!("`{key}`: `{x}` is not a number"))))
        .collect()
}

/// Parses canonical text back into a code. Any deviation from the layout
/// [`save`] produces is rejected.
pub fn load(text: &str) -> CliResult<CodeSpec> {
    let mut lines = Lines { iter: text.lines().enumerate() };
    let version: u32 = lines.number("format_version")?;
    if version != FORMAT_VERSION {
        return Err(CliError::Format(format!("unsupported format_version {version}")));
    }
    let name = lines.next("name")?.to_string();
    let r: usize = lines.number("r")?;
    let m: usize = lines.number("m")?;
    let p: u32 = lines.number("field.p")?;
    let d: u32 = lines.number("field.d")?;
    let modulus: Vec<u32> = numbers("field.modulus", lines.next("field.modulus")?)?;
    let alpha: u32 = lines.number("field.alpha")?;
    let field = Field::with_modulus(p, d, &modulus, Some(alpha))?;
    let k: usize = lines.number("columns")?;
    let rows = u32::try_from(r)
        .ok()
        .and_then(|r| (r as usize).checked_pow(m as u32))
        .filter(|&rows| rows <= 1 << 20)
        .ok_or_else(|| CliError::Format(format!("{r}^{m} rows is too many")))?;
    let mut vectors = Vec::with_capacity(k);
    for j in 0..k {
        let key = format!("column.{j}");
        let v = lines.next(&key)?;
        let bad = || CliError::Format(format!("`{key}`: expected `vector <digits> copy <t>`"));
        let rest = v.strip_prefix("vector ").ok_or_else(bad)?;
        let (digits, copy) = rest.rsplit_once(" copy ").ok_or_else(bad)?;
        let digits: Vec<u8> = numbers(&key, digits)?;
        let copy: usize = copy.parse().map_err(|_| bad())?;
        vectors.push((RVector::new(r as u32, digits)?, copy));
    }
    let mut table = vec![vec![vec![0 as Elem; rows]; r]; k];
    for l in 0..r {
        for i in 0..rows {
            let key = format!("coef.{l}.{i}");
            let row: Vec<Elem> = numbers(&key, lines.next(&key)?)?;
            if row.len() != k {
                return Err(CliError::Format(format!("`{key}` has {} entries, expected {k}", row.len())));
            }
            for (j, c) in row.into_iter().enumerate() {
                table[j][l][i] = c;
            }
        }
    }
    if let Some((n, _)) = lines.iter.next() {
        return Err(CliError::Format(format!("line {}: trailing content", n + 1)));
    }
    let columns = vectors.into_iter().zip(table).map(|((v, t), c)| (v, t, c)).collect();
    Ok(CodeSpec::new(name, field, r, m, columns)?)
}

pub fn read(path: &Path) -> CliResult<CodeSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    load(&text)
}

pub fn write(path: &Path, spec: &CodeSpec) -> CliResult<()> {
    std::fs::write(path, save(spec)).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zigzag::constructions::{build_optimal_general, build_optimal_r2};

    #[test]
    fn module_example_is_canonical() {
        let text = save(&build_optimal_r2(1).unwrap());
        let doc: String = include_str!("specfile.rs")
            .lines()
            .skip_while(|l| !l.starts_with("//! ```text"))
            .skip(1)
            .take_while(|l| !l.starts_with("//! ```"))
            .map(|l| format!("{}\n", &l[4..]))
            .collect();
        assert_eq!(text, doc);
    }

    #[test]
    fn roundtrip_is_byte_exact() {
        for spec in [build_optimal_r2(2).unwrap(), build_optimal_general(2, 3, 7, Some(3)).unwrap()] {
            let text = save(&spec);
            let back = load(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(save(&back), text);
        }
    }

    #[test]
    fn rejects_reordered_keys() {
        let text = save(&build_optimal_r2(1).unwrap()).replacen("r = 2\nm = 1", "m = 1\nr = 2", 1);
        assert!(matches!(load(&text), Err(CliError::Format(_))));
    }
}
