//! Polynomials with square-matrix coefficients, stored by increasing power.

use crate::error::{JnfError, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// `Σ coeffs[k] λ^k` with `n x n` coefficients. Trailing zero matrices are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPoly {
    field: Field,
    n: usize,
    coeffs: Vec<Matrix>,
}

/// Tally of scalar field operations (one per multiplication or addition).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub ops: u64,
}

impl MatPoly {
    pub fn new(field: Field, n: usize, coeffs: Vec<Matrix>) -> Result<MatPoly> {
        for c in &coeffs {
            if c.field() != field {
                return Err(JnfError::FieldMismatch("matrix polynomial coefficient".into()));
            }
            if c.rows() != n || c.cols() != n {
                return Err(JnfError::Dimension(format!(
                    "coefficient is {}x{}, expected {n}x{n}",
                    c.rows(),
                    c.cols()
                )));
            }
        }
        Ok(MatPoly::from_coeffs(field, n, coeffs))
    }

    pub(crate) fn from_coeffs(field: Field, n: usize, mut coeffs: Vec<Matrix>) -> MatPoly {
        while coeffs.last().is_some_and(Matrix::is_zero) {
            coeffs.pop();
        }
        MatPoly { field, n, coeffs }
    }

    pub fn zero(field: Field, n: usize) -> MatPoly {
        MatPoly { field, n, coeffs: Vec::new() }
    }

    /// `p(λ) · I_n`.
    pub fn from_scalar_poly(p: &Poly, n: usize) -> MatPoly {
        let coeffs = p.coeffs().iter().map(|c| Matrix::scalar(c, n)).collect();
        MatPoly::from_coeffs(p.field(), n, coeffs)
    }

    /// `λ I - A`.
    pub fn characteristic_matrix(a: &Matrix) -> MatPoly {
        let n = a.rows();
        let f = a.field();
        MatPoly::from_coeffs(f, n, vec![a.scale(&-f.one()), Matrix::identity(f, n)])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Size of the square coefficients.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Matrix {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.field, self.n, self.n))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &MatPoly) -> Result<MatPoly> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff(k).add(&other.coeff(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatPoly::from_coeffs(self.field, self.n, coeffs))
    }

    /// Product of matrix polynomials (coefficient matrices multiplied in
    /// order).
    pub fn mul(&self, other: &MatPoly) -> Result<MatPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(MatPoly::zero(self.field, self.n));
        }
        let mut out = vec![Matrix::zeros(self.field, self.n, self.n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(MatPoly::from_coeffs(self.field, self.n, out))
    }

    /// Multiplies every coefficient by a scalar polynomial.
    pub fn mul_scalar_poly(&self, p: &Poly) -> MatPoly {
        if self.is_zero() || p.is_zero() {
            return MatPoly::zero(self.field, self.n);
        }
        let mut out = vec![Matrix::zeros(self.field, self.n, self.n); self.coeffs.len() + p.coeffs().len() - 1];
        for (i, m) in self.coeffs.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&m.scale(c)).expect("same shape");
            }
        }
        MatPoly::from_coeffs(self.field, self.n, out)
    }

    /// Left-multiplies every coefficient by `m`.
    pub fn left_mul(&self, m: &Matrix) -> Result<MatPoly> {
        let coeffs = self.coeffs.iter().map(|c| m.mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(MatPoly::from_coeffs(self.field, self.n, coeffs))
    }

    /// Entrywise trace, a scalar polynomial.
    pub fn trace(&self) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(Matrix::trace).collect())
    }

    /// Horner evaluation at a scalar: one scaling and one addition per
    /// degree, no matrix products.
    pub fn horner_eval(&self, a: &FieldElement) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.n, self.n);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(a).add(c).expect("same shape");
        }
        acc
    }

    /// Synthetic division by `λ - a`: returns `(quotient, remainder)` with
    /// `self = (λ - a)·quotient + remainder`.
    pub fn horner_shift(&self, a: &FieldElement) -> (MatPoly, Matrix) {
        if self.coeffs.is_empty() {
            return (self.clone(), Matrix::zeros(self.field, self.n, self.n));
        }
        let m = self.coeffs.len();
        let mut quot = vec![Matrix::zeros(self.field, self.n, self.n); m - 1];
        let mut carry = self.coeffs[m - 1].clone();
        for k in (0..m - 1).rev() {
            quot[k] = carry.clone();
            carry = self.coeffs[k].add(&carry.scale(a)).expect("same shape");
        }
        (MatPoly::from_coeffs(self.field, self.n, quot), carry)
    }

    /// Euclidean division by a monic scalar polynomial, applied to every
    /// matrix entry: `self = quotient·q + remainder`, `deg remainder < deg q`.
    pub fn div_q(&self, q: &Poly) -> Result<(MatPoly, MatPoly)> {
        self.div_q_counted(q, &mut OpCounter::default())
    }

    /// As [`MatPoly::div_q`], tallying scalar operations into `counter`.
    pub fn div_q_counted(&self, q: &Poly, counter: &mut OpCounter) -> Result<(MatPoly, MatPoly)> {
        if q.field() != self.field {
            return Err(JnfError::FieldMismatch("divisor field".into()));
        }
        if !q.is_monic() {
            return Err(JnfError::NotMonic);
        }
        let d = q.degree().expect("monic is nonzero");
        if self.coeffs.len() <= d {
            return Ok((MatPoly::zero(self.field, self.n), self.clone()));
        }
        let entries = (self.n * self.n) as u64;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Matrix::zeros(self.field, self.n, self.n); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let lead = std::mem::replace(&mut rem[top], Matrix::zeros(self.field, self.n, self.n));
            for (i, qc) in q.coeffs()[..d].iter().enumerate() {
                // rem[top - d + i] -= q_i * lead, one mul and one sub per entry
                rem[top - d + i] = rem[top - d + i].sub(&lead.scale(qc))?;
                counter.ops += 2 * entries;
            }
            quot[top - d] = lead;
        }
        rem.truncate(d);
        Ok((
            MatPoly::from_coeffs(self.field, self.n, quot),
            MatPoly::from_coeffs(self.field, self.n, rem),
        ))
    }
}
