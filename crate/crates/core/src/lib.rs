//! Exact Jordan and rational Jordan normal forms over ℚ and prime fields,
//! computed from the comatrix polynomial `B(λ)` of `λI - A`.
//!
//! ```
//! use jnf_core::{split_jordan, Field, Matrix};
//!
//! let a = Matrix::from_i64_rows(Field::Rational, &[&[3, -1, 1], &[2, 0, 1], &[1, -1, 2]]);
//! let dec = split_jordan(&a).unwrap();
//! dec.verify(&a).unwrap();
//! assert_eq!(dec.j, Matrix::from_i64_rows(Field::Rational, &[&[1, 0, 0], &[0, 2, 0], &[0, 1, 2]]));
//! ```

pub mod batch;
pub mod charpoly;
pub mod decomposition;
pub mod error;
pub mod factor;
pub mod field;
pub mod jordan_linear;
pub mod jordan_rational;
pub mod matpoly;
pub mod matrix;
pub mod poly;
pub mod stack;

pub use batch::decompose_many;
pub use charpoly::{char_data, charpoly, faddeev, hessenberg_charpoly, CharData, CharMethod};
pub use decomposition::{
    companion, decompose, decompose_with, pseudo_rational_jordan, pseudo_to_rational, rational_jordan, split_jordan,
    BlockDescriptor, Execution, Form, JordanDecomposition, Orientation,
};
pub use error::{JnfError, Result};
pub use factor::{factor_charpoly, format_factor_hints, parse_factor_hints, Factor, FactoredCharPoly};
pub use field::{Field, FieldElement};
pub use matpoly::{MatPoly, OpCounter};
pub use matrix::{Matrix, Vector};
pub use poly::Poly;
