//! Characteristic polynomial `P(λ) = det(λI - A)` together with the
//! comatrix polynomial `B(λ)` satisfying `(λI - A)·B(λ) = P(λ)·I`.

use crate::error::{JnfError, Result};
use crate::field::Field;
use crate::matpoly::MatPoly;
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharMethod {
    Faddeev,
    HessenbergHorner,
}

/// `P` (monic, degree n) and `B` (degree n-1, leading coefficient I).
#[derive(Clone, Debug)]
pub struct CharData {
    pub p: Poly,
    pub b: MatPoly,
    pub method: CharMethod,
}

fn require_square(a: &Matrix) -> Result<usize> {
    if !a.is_square() || a.rows() == 0 {
        return Err(JnfError::Dimension(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    Ok(a.rows())
}

/// True when the trace recurrence may divide by 1..=n.
pub fn faddeev_applies(field: Field, n: usize) -> bool {
    let c = field.characteristic();
    c == 0 || c > n as u64
}

/// Faddeev–LeVerrier recurrence:
/// `A_1 = A, p_1 = -tr A_1, B_1 = A_1 + p_1 I`, then
/// `A_k = A·B_{k-1}, p_k = -tr(A_k)/k, B_k = A_k + p_k I`.
///
/// Performs exactly n-1 matrix products.
pub fn faddeev(a: &Matrix) -> Result<CharData> {
    let n = require_square(a)?;
    let field = a.field();
    if !faddeev_applies(field, n) {
        return Err(JnfError::UnsupportedMethod { characteristic: field.characteristic(), n });
    }
    // p_dec[k] is the coefficient of λ^(n-k); b_dec[k] is B_k (coefficient of λ^(n-1-k)).
    let mut p_dec = vec![field.one()];
    let mut b_dec = vec![Matrix::identity(field, n)];
    let mut ak = a.clone();
    for k in 1..=n {
        if k > 1 {
            ak = a.mul(&b_dec[k - 1])?;
        }
        let inv_k = field.from_u64(k as u64).inv().expect("k invertible");
        let pk = -(&ak.trace() * &inv_k);
        if k < n {
            b_dec.push(ak.add_scalar(&pk));
        } else if !ak.add_scalar(&pk).is_zero() {
            return Err(JnfError::Internal("Faddeev recurrence did not terminate in zero".into()));
        }
        p_dec.push(pk);
    }
    p_dec.reverse();
    b_dec.reverse();
    Ok(CharData {
        p: Poly::from_coeffs(field, p_dec),
        b: MatPoly::from_coeffs(field, n, b_dec),
        method: CharMethod::Faddeev,
    })
}

/// Characteristic polynomial through a similarity reduction to upper
/// Hessenberg form, valid over any field.
pub fn hessenberg_charpoly(a: &Matrix) -> Result<Poly> {
    let n = require_square(a)?;
    let field = a.field();
    let h = upper_hessenberg(a);
    // p[k] = charpoly of the leading k x k block
    let x = Poly::monomial(field, 1);
    let mut p: Vec<Poly> = vec![Poly::one(field)];
    for k in 0..n {
        let mut next = x.sub(&Poly::constant(h[(k, k)].clone())).mul(&p[k]);
        let mut prod = field.one();
        for i in (0..k).rev() {
            prod = &prod * &h[(i + 1, i)];
            if prod.is_zero() {
                break;
            }
            let c = &h[(i, k)] * &prod;
            next = next.sub(&p[i].scale(&c));
        }
        p.push(next);
    }
    Ok(p.pop().expect("n >= 1"))
}

/// Exact similarity reduction to upper Hessenberg form. A zero subdiagonal
/// pivot is replaced by swapping in a nonzero entry from below (rows and
/// columns both); a column with no such entry is already reduced.
pub fn upper_hessenberg(a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
            continue;
        };
        if piv != m {
            h.swap_rows(piv, m);
            for r in 0..n {
                let tmp = h[(r, piv)].clone();
                h[(r, piv)] = h[(r, m)].clone();
                h[(r, m)] = tmp;
            }
        }
        let inv = h[(m, m - 1)].inv().expect("pivot is nonzero");
        for i in m + 1..n {
            if h[(i, m - 1)].is_zero() {
                continue;
            }
            let t = &h[(i, m - 1)] * &inv;
            // row_i -= t * row_m, then col_m += t * col_i
            h.add_row_multiple(i, m, &-&t);
            for r in 0..n {
                let v = &h[(r, m)] + &(&t * &h[(r, i)]);
                h[(r, m)] = v;
            }
        }
    }
    h
}

/// Comatrix by matrix Horner division of `P(λ)` by `λI - A`:
/// `B_{n-1} = I`, `B_{k-1} = A·B_k + p_k I`, finishing with the check
/// `A·B_0 + p_0 I = 0`.
pub fn comatrix_from_charpoly(a: &Matrix, p: &Poly) -> Result<MatPoly> {
    let n = require_square(a)?;
    let field = a.field();
    if p.degree() != Some(n) || !p.is_monic() {
        return Err(JnfError::Internal(format!("{p} is not a monic polynomial of degree {n}")));
    }
    let mut coeffs = vec![Matrix::zeros(field, n, n); n];
    coeffs[n - 1] = Matrix::identity(field, n);
    for k in (1..n).rev() {
        coeffs[k - 1] = a.mul(&coeffs[k])?.add_scalar(&p.coeff(k));
    }
    if !a.mul(&coeffs[0])?.add_scalar(&p.coeff(0)).is_zero() {
        return Err(JnfError::Internal("P is not the characteristic polynomial of A".into()));
    }
    Ok(MatPoly::from_coeffs(field, n, coeffs))
}

/// Dispatches to Faddeev when the characteristic allows it, otherwise to
/// Hessenberg reduction followed by Horner division.
pub fn char_data(a: &Matrix) -> Result<CharData> {
    let n = require_square(a)?;
    if faddeev_applies(a.field(), n) {
        return faddeev(a);
    }
    let p = hessenberg_charpoly(a)?;
    let b = comatrix_from_charpoly(a, &p)?;
    Ok(CharData { p, b, method: CharMethod::HessenbergHorner })
}

/// Characteristic polynomial by whichever method applies.
pub fn charpoly(a: &Matrix) -> Result<Poly> {
    let n = require_square(a)?;
    if faddeev_applies(a.field(), n) {
        Ok(faddeev(a)?.p)
    } else {
        hessenberg_charpoly(a)
    }
}

/// Evaluates a scalar polynomial at a square matrix by Horner's rule.
pub fn poly_at_matrix(p: &Poly, a: &Matrix) -> Result<Matrix> {
    let n = require_square(a)?;
    let mut acc = Matrix::zeros(a.field(), n, n);
    for c in p.coeffs().iter().rev() {
        acc = a.mul(&acc)?.add_scalar(c);
    }
    Ok(acc)
}
