//! Exact scalars: arbitrary-precision rationals and prime-field residues.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{JnfError, Result};

/// The coefficient field shared by every value in a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. The modulus is checked for primality once, here.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 63 {
            return Err(JnfError::UnsupportedField(format!(
                "modulus {p} exceeds 2^63"
            )));
        }
        if !is_prime(p) {
            return Err(JnfError::UnsupportedField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals, p for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Prime { residue: 0, modulus: p },
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => FieldElement::Prime {
                residue: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_u64(self, v: u64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => FieldElement::Prime { residue: v % p, modulus: p },
        }
    }

    /// Maps an exact rational into this field. Fails in `F_p` when the
    /// denominator vanishes mod p.
    pub fn from_rational(self, r: &BigRational) -> Result<FieldElement> {
        match self {
            Field::Rational => Ok(FieldElement::Rational(r.clone())),
            Field::Prime(p) => {
                let num = reduce_bigint(r.numer(), p);
                let den = reduce_bigint(r.denom(), p);
                if den == 0 {
                    return Err(JnfError::Parse(format!(
                        "denominator of {r} vanishes modulo {p}"
                    )));
                }
                let num = FieldElement::Prime { residue: num, modulus: p };
                let den = FieldElement::Prime { residue: den, modulus: p };
                Ok(&num * &den.inv().expect("nonzero residue"))
            }
        }
    }

    /// Parses an integer or `a/b` literal into this field.
    pub fn parse(self, token: &str) -> Result<FieldElement> {
        let token = token.trim();
        let bad = || JnfError::Parse(format!("invalid number `{token}`"));
        let r = match token.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(JnfError::Parse(format!("zero denominator in `{token}`")));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(BigInt::from_str(token).map_err(|_| bad())?),
        };
        self.from_rational(&r)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = JnfError;

    /// Accepts `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| JnfError::UnsupportedField(format!("bad modulus `{p}`")))?;
                Field::prime(p)
            }
            None => Err(JnfError::UnsupportedField(format!("unknown field `{s}`"))),
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An element of ℚ (always reduced, denominator positive) or of `F_p`.
///
/// Arithmetic between elements of different fields panics: containers
/// (`Poly`, `Matrix`) check field agreement when they are built, so a
/// mismatch here is a bug, not an input error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime { residue, .. } => *residue == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Prime { residue, modulus } => FieldElement::Prime {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// The rational value, if this is an element of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Prime { .. } => None,
        }
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Prime { residue: a, modulus: p },
                FieldElement::Prime { residue: b, modulus: q },
            ) if p == q => FieldElement::Prime {
                residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (
                FieldElement::Prime { residue: a, modulus: p },
                FieldElement::Prime { residue: b, modulus: q },
            ) if p == q => FieldElement::Prime {
                residue: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                if a.is_zero() || b.is_zero() {
                    FieldElement::Rational(BigRational::zero())
                } else {
                    FieldElement::Rational(a * b)
                }
            }
            (
                FieldElement::Prime { residue: a, modulus: p },
                FieldElement::Prime { residue: b, modulus: q },
            ) if p == q => FieldElement::Prime { residue: mul_mod(*a, *b, *p), modulus: *p },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    /// Panics on division by zero.
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        let inv = rhs.inv().expect("division by zero field element");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { residue, modulus } => FieldElement::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        let b = q.parse("-1/-2").unwrap();
        assert_eq!(b.to_string(), "1/2");
        assert_eq!((&a + &b).to_string(), "2");
        assert!((&a - &a).is_zero());
        assert_eq!(q.parse("0/7").unwrap(), q.zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, f.from_i64(4));
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse("1/7").is_err());
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn primality_is_checked() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(1_000_003).is_ok());
        assert!(Field::prime(18446744073709551557).is_err());
        assert!(is_prime(4_294_967_311));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:13".parse::<Field>().unwrap(), Field::Prime(13));
        assert!("fp:15".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(5).one();
    }
}
