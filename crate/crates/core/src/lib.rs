//! Zigzag MDS array codes.
//!
//! A code stores `k` systematic columns of `p = r^m` elements each, plus `r`
//! parity columns. Parity `l` sums the zigzag line `{(f_j^l)^{-1}(t), j}` of
//! every column with a coefficient per element, where `f_v^l(x) = x + l·v`
//! over `Z_r^m`. Any `r` column erasures are recoverable, and a single
//! systematic erasure is rebuilt by reading only a `1/r` fraction of the
//! surviving data when the column vectors are chosen well.
//!
//! ```
//! use zigzag::code::CodeArray;
//! use zigzag::constructions::build_optimal_r2;
//! use zigzag::rebuild::{execute_rebuild, plan_single};
//!
//! let spec = build_optimal_r2(2).unwrap();
//! let info: Vec<Vec<u16>> = (0..3).map(|j| (0..4).map(|x| ((j + x) % 3) as u16).collect()).collect();
//! let array = CodeArray::encode(&spec, info).unwrap();
//!
//! let plan = plan_single(&spec, 1).unwrap();
//! let mut damaged = array.clone();
//! damaged.erase(&[1]);
//! let restored = execute_rebuild(&spec, &plan, &damaged).unwrap();
//! assert_eq!(restored, vec![array.info[1].clone()]);
//! assert_eq!(plan.access_report(&spec).ratio, num_rational::Ratio::new(1, 2));
//! ```

pub mod analysis;
pub mod code;
pub mod constructions;
pub mod decode;
mod error;
pub mod field;
pub mod linalg;
pub mod rebuild;
mod system;

pub use error::{Error, Result};
pub use system::ElementSource;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/rebuild.md")]
    mod rebuild {}
    #[doc = include_str!("../../../book/src/multi.md")]
    mod multi {}
    #[doc = include_str!("../../../book/src/duplication.md")]
    mod duplication {}
    #[doc = include_str!("../../../book/src/decoding.md")]
    mod decoding {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
}
