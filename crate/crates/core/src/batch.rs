//! Independent decompositions of many matrices.

use crate::decomposition::{decompose, Execution, Form, JordanDecomposition};
use crate::error::Result;
use crate::matrix::Matrix;

/// Decomposes every matrix with the built-in factorization. Results keep
/// the input order whatever the execution mode.
pub fn decompose_many(matrices: &[Matrix], form: Form, execution: Execution) -> Vec<Result<JordanDecomposition>> {
    let one = |a: &Matrix| decompose(a, form, None);
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            matrices.par_iter().map(one).collect()
        }
        _ => matrices.iter().map(one).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn modes_agree_and_keep_order() {
        let ms: Vec<Matrix> = (1..6)
            .map(|k| Matrix::from_i64_rows(Field::Rational, &[&[k, 1], &[0, k]]))
            .collect();
        let seq = decompose_many(&ms, Form::Split, Execution::Sequential);
        let par = decompose_many(&ms, Form::Split, Execution::Parallel);
        for ((s, p), m) in seq.iter().zip(&par).zip(&ms) {
            let (s, p) = (s.as_ref().unwrap(), p.as_ref().unwrap());
            assert_eq!(s, p);
            s.verify(m).unwrap();
        }
    }
}
