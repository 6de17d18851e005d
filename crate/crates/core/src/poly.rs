//! Dense univariate polynomials over a [`Field`], lowest degree first.

use std::fmt;

use crate::error::{JnfError, Result};
use crate::field::{Field, FieldElement};

/// Dense polynomial with coefficients stored by increasing power.
///
/// The zero polynomial has no coefficients; every other value has a
/// nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Builds a polynomial from increasing-power coefficients, trimming
    /// trailing zeros.
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Poly> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(JnfError::FieldMismatch(format!(
                "coefficient in {} for a polynomial over {field}",
                bad.field()
            )));
        }
        Ok(Poly::from_coeffs(field, coeffs))
    }

    pub(crate) fn from_coeffs(field: Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(c.field(), vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: &FieldElement) -> Poly {
        Poly::from_coeffs(root.field(), vec![-root, root.field().one()])
    }

    pub fn monomial(field: Field, degree: usize) -> Poly {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = field.one();
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Scales to leading coefficient one. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lead) if !lead.is_one() => {
                let inv = lead.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(JnfError::FieldMismatch(format!(
                "polynomials over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: usize) -> Poly {
        (0..exp).fold(Poly::one(self.field), |acc, _| acc.mul(self))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Formal derivative; in characteristic p the `x^p` terms vanish.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &self.field.from_u64(k as u64) * c)
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    /// Euclidean division by a monic divisor. No coefficient division is
    /// performed.
    pub fn euclid_div(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        if !divisor.is_monic() {
            return Err(JnfError::NotMonic);
        }
        Ok(self.div_rem_unchecked(divisor))
    }

    /// Division by any nonzero divisor (dividing by its leading coefficient).
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let lead = divisor
            .leading()
            .ok_or_else(|| JnfError::Internal("division by the zero polynomial".into()))?;
        if lead.is_one() {
            return Ok(self.div_rem_unchecked(divisor));
        }
        let inv = lead.inv().expect("nonzero leading coefficient");
        let (q, r) = self.div_rem_unchecked(&divisor.scale(&inv));
        Ok((q.scale(&inv), r))
    }

    fn div_rem_unchecked(&self, monic: &Poly) -> (Poly, Poly) {
        let d = monic.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (Poly::zero(self.field), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let lead = std::mem::replace(&mut rem[top], self.field.zero());
            if lead.is_zero() {
                continue;
            }
            for (i, qc) in monic.coeffs[..d].iter().enumerate() {
                rem[top - d + i] = &rem[top - d + i] - &(&lead * qc);
            }
            quot[top - d] = lead;
        }
        rem.truncate(d);
        (Poly::from_coeffs(self.field, quot), Poly::from_coeffs(self.field, rem))
    }

    /// Exact quotient, failing if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(JnfError::Internal(format!("({divisor}) does not divide ({self})")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}

/// Squarefree decomposition (Yun).
///
/// Returns the nonconstant parts `s_i` with multiplicity `i`, so that the
/// monic form of `p` equals the product of `s_i^i`. The parts are monic,
/// squarefree and pairwise coprime. Requires characteristic 0 or larger
/// than the degree.
pub fn squarefree_decomposition(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    let deg = p
        .degree()
        .ok_or_else(|| JnfError::Internal("squarefree decomposition of zero".into()))?;
    let char = p.field().characteristic();
    if char != 0 && char <= deg as u64 {
        return Err(JnfError::UnsupportedField(format!(
            "squarefree decomposition needs characteristic 0 or > {deg}, got {char}"
        )));
    }
    let f = p.monic();
    if deg == 0 {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = f.gcd(&df)?;
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = c.sub(&b.derivative());
    let mut parts = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d)?;
        let b_next = b.exact_div(&a)?;
        let c_next = d.exact_div(&a)?;
        d = c_next.sub(&b_next.derivative());
        if !a.is_constant() {
            parts.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    Ok(parts)
}

/// `C(l, m)` as a field element, built with Pascal's rule so that no
/// division happens (valid in any characteristic). Zero when `m > l`.
pub fn binomial(field: Field, l: usize, m: usize) -> FieldElement {
    if m > l {
        return field.zero();
    }
    let row = pascal_row(field, l);
    row[m].clone()
}

/// Row `l` of Pascal's triangle in the field.
pub fn pascal_row(field: Field, l: usize) -> Vec<FieldElement> {
    let mut row = vec![field.one()];
    for _ in 0..l {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(field.one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(field.one());
        row = next;
    }
    row
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Rational, c)
    }

    #[test]
    fn zero_is_canonical() {
        let z = Poly::from_i64s(Field::Rational, &[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z, Poly::zero(Field::Rational));
    }

    #[test]
    fn euclid_div_by_linear() {
        // x^2 - 2 = (x + 1)(x - 1) - 1
        let (quot, rem) = q(&[-2, 0, 1]).euclid_div(&q(&[-1, 1])).unwrap();
        assert_eq!(quot, q(&[1, 1]));
        assert_eq!(rem, q(&[-1]));
    }

    #[test]
    fn euclid_div_exact_on_charpoly() {
        let p = q(&[-2, 1]).pow(2).mul(&q(&[-2, 0, 1]).pow(2));
        let (_, rem) = p.euclid_div(&q(&[-2, 0, 1])).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn euclid_div_rejects_bad_divisors() {
        assert!(matches!(q(&[1, 2]).euclid_div(&q(&[1, 2])), Err(JnfError::NotMonic)));
        assert!(matches!(q(&[1, 2]).euclid_div(&Poly::zero(Field::Rational)), Err(JnfError::NotMonic)));
        let other = Poly::from_i64s(Field::Prime(5), &[1, 1]);
        assert!(matches!(q(&[1, 2]).euclid_div(&other), Err(JnfError::FieldMismatch(_))));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(q(&[0, 0, 0, 1]).derivative(), q(&[0, 0, 3]));
        assert!(q(&[5]).derivative().is_zero());
        let f3 = Poly::from_i64s(Field::Prime(3), &[0, 1, 0, 1]);
        assert_eq!(f3.derivative(), Poly::from_i64s(Field::Prime(3), &[1]));
    }

    #[test]
    fn squarefree_examples() {
        let p = q(&[-2, 1]).pow(2).mul(&q(&[-2, 0, 1]).pow(2));
        let parts = squarefree_decomposition(&p).unwrap();
        assert_eq!(parts, vec![(q(&[-2, 1]).mul(&q(&[-2, 0, 1])), 2)]);

        assert_eq!(squarefree_decomposition(&q(&[-2, 0, 1])).unwrap(), vec![(q(&[-2, 0, 1]), 1)]);
        assert_eq!(squarefree_decomposition(&q(&[-1, 1]).pow(3)).unwrap(), vec![(q(&[-1, 1]), 3)]);

        // (x-1)(x-2)^2(x-3)^3, scaled by 5
        let mixed = q(&[-1, 1]).mul(&q(&[-2, 1]).pow(2)).mul(&q(&[-3, 1]).pow(3)).scale(&Field::Rational.from_i64(5));
        let parts = squarefree_decomposition(&mixed).unwrap();
        assert_eq!(parts, vec![(q(&[-1, 1]), 1), (q(&[-2, 1]), 2), (q(&[-3, 1]), 3)]);
    }

    #[test]
    fn squarefree_small_characteristic_is_unsupported() {
        let p = Poly::from_i64s(Field::Prime(3), &[0, 0, 0, 1]);
        assert!(matches!(squarefree_decomposition(&p), Err(JnfError::UnsupportedField(_))));
    }

    #[test]
    fn binomials() {
        let f = Field::Rational;
        assert_eq!(binomial(f, 4, 2), f.from_i64(6));
        assert_eq!(binomial(f, 9, 0), f.one());
        assert_eq!(binomial(f, 2, 3), f.zero());
        let f2 = Field::Prime(2);
        assert!(binomial(f2, 2, 1).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(q(&[1, -3]).to_string(), "-3*x + 1");
        let half = Poly::new(Field::Rational, vec![Field::Rational.parse("1/2").unwrap(), Field::Rational.one()]).unwrap();
        assert_eq!(half.to_string(), "x + 1/2");
    }
}
