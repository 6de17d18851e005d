//! Factorization of the characteristic polynomial into monic irreducibles.
//!
//! The built-in path handles what can be decided cheaply over ℚ:
//! squarefree decomposition, rational roots, and quadratics. Anything else
//! comes from a hint list supplied by the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{JnfError, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{squarefree_decomposition, Poly};

/// One irreducible factor and its multiplicity in the characteristic
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub multiplicity: usize,
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// The root, when the factor is linear.
    pub fn root(&self) -> Option<FieldElement> {
        (self.degree() == 1).then(|| -&self.poly.coeff(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredCharPoly {
    factors: Vec<Factor>,
    field: Field,
    /// Set when the factors came from a hint; their irreducibility was
    /// taken on trust.
    asserted: bool,
}

impl FactoredCharPoly {
    /// Wraps a factor list after checking it multiplies back to `p`.
    pub fn from_factors(p: &Poly, factors: Vec<(Poly, usize)>, asserted: bool) -> Result<Self> {
        validate_factors(p, &factors)?;
        Ok(FactoredCharPoly {
            factors: factors
                .into_iter()
                .map(|(poly, multiplicity)| Factor { poly, multiplicity })
                .collect(),
            field: p.field(),
            asserted,
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn field_characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn irreducibility_asserted(&self) -> bool {
        self.asserted
    }

    /// Product of `factor^multiplicity`.
    pub fn product(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(self.field), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree() * f.multiplicity).sum()
    }

    /// True when every factor is linear.
    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|f| f.degree() == 1)
    }

    /// The factors as (polynomial, multiplicity) pairs.
    pub fn pairs(&self) -> Vec<(Poly, usize)> {
        self.factors.iter().map(|f| (f.poly.clone(), f.multiplicity)).collect()
    }
}

fn validate_factors(p: &Poly, factors: &[(Poly, usize)]) -> Result<()> {
    for (i, (f, m)) in factors.iter().enumerate() {
        if f.field() != p.field() {
            return Err(JnfError::InvalidHint(format!("factor {f} is over {}, expected {}", f.field(), p.field())));
        }
        if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
            return Err(JnfError::InvalidHint(format!("factor {f} must be monic of positive degree")));
        }
        if *m == 0 {
            return Err(JnfError::InvalidHint(format!("factor {f} has multiplicity 0")));
        }
        if factors[..i].iter().any(|(g, _)| g == f) {
            return Err(JnfError::InvalidHint(format!("factor {f} is listed twice")));
        }
        let (_, rem) = p.euclid_div(&f.pow(*m))?;
        if !rem.is_zero() {
            return Err(JnfError::InvalidHint(format!("({f})^{m} does not divide {p}")));
        }
    }
    let product = factors
        .iter()
        .fold(Poly::one(p.field()), |acc, (f, m)| acc.mul(&f.pow(*m)));
    if &product != p {
        return Err(JnfError::InvalidHint(format!("factors multiply to {product}, expected {p}")));
    }
    Ok(())
}

/// Factors a monic characteristic polynomial.
///
/// With `hint`, the listed factors are checked to be monic, distinct, and to
/// multiply back to `p`; their irreducibility is trusted. Without a hint
/// the built-in path is used, which stops with
/// [`JnfError::NeedsFactorization`] on anything it cannot split.
pub fn factor_charpoly(p: &Poly, hint: Option<&[(Poly, usize)]>) -> Result<FactoredCharPoly> {
    if !p.is_monic() || p.degree().unwrap_or(0) == 0 {
        return Err(JnfError::Internal(format!("characteristic polynomial {p} must be monic of degree >= 1")));
    }
    if let Some(hint) = hint {
        return FactoredCharPoly::from_factors(p, hint.to_vec(), true);
    }

    let mut factored = Vec::new();
    let mut stuck = Vec::new();
    for (part, mult) in squarefree_decomposition(p)? {
        match p.field() {
            Field::Rational => {
                let (linear, rest) = split_rational_roots(&part)?;
                factored.extend(linear.into_iter().map(|f| (f, mult)));
                match rest.degree() {
                    Some(0) | None => {}
                    Some(2) => {
                        let (a, b) = split_quadratic(&rest);
                        match b {
                            Some(b) => {
                                factored.push((a, mult));
                                factored.push((b, mult));
                            }
                            None => factored.push((a, mult)),
                        }
                    }
                    Some(_) => stuck.push((rest, mult)),
                }
            }
            Field::Prime(_) => {
                if part.degree() == Some(1) {
                    factored.push((part, mult));
                } else {
                    stuck.push((part, mult));
                }
            }
        }
    }
    if !stuck.is_empty() {
        return Err(JnfError::NeedsFactorization { factored, stuck });
    }
    FactoredCharPoly::from_factors(p, factored, false)
}

/// Splits off the rational roots of a monic squarefree polynomial over ℚ.
/// Returns the linear factors (roots ascending) and the cofactor.
pub fn split_rational_roots(s: &Poly) -> Result<(Vec<Poly>, Poly)> {
    let mut roots = rational_roots(s);
    roots.sort();
    let mut rest = s.clone();
    let mut linear = Vec::with_capacity(roots.len());
    for r in roots {
        let f = Poly::linear(&FieldElement::Rational(r));
        rest = rest.exact_div(&f)?;
        linear.push(f);
    }
    Ok((linear, rest))
}

/// Distinct rational roots by the rational root test on the primitive
/// integer form.
fn rational_roots(s: &Poly) -> Vec<BigRational> {
    let Some(mut ints) = integer_coefficients(s) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    // strip factors of x
    while ints.len() > 1 && ints[0].is_zero() {
        if !roots.contains(&BigRational::zero()) {
            roots.push(BigRational::zero());
        }
        ints.remove(0);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let nums = divisors(&constant);
    let dens = divisors(&lead);
    for den in &dens {
        for num in &nums {
            if !num.gcd(den).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = BigRational::new(num * BigInt::from(sign), den.clone());
                if !roots.contains(&cand) && eval_int_poly(&ints, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn integer_coefficients(s: &Poly) -> Option<Vec<BigInt>> {
    let rats: Vec<&BigRational> = s.coeffs().iter().map(|c| c.as_rational()).collect::<Option<_>>()?;
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    Some(rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect())
}

fn eval_int_poly(ints: &[BigInt], x: &BigRational) -> BigRational {
    ints.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Positive divisors of `n` (n > 0). Trial division up to 10^6; a larger
/// cofactor left over is treated as prime, which can only hide roots, never
/// invent them.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= 1_000_000 {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            primes.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for div in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(div * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Splits a monic quadratic over ℚ into two linear factors when its
/// discriminant is a rational square; otherwise returns it unchanged.
fn split_quadratic(f: &Poly) -> (Poly, Option<Poly>) {
    let (Some(b), Some(c)) = (f.coeff(1).as_rational().cloned(), f.coeff(0).as_rational().cloned()) else {
        return (f.clone(), None);
    };
    let disc = &b * &b - BigRational::from_integer(4.into()) * &c;
    match rational_sqrt(&disc) {
        Some(root) => {
            let two = BigRational::from_integer(2.into());
            let mut r1 = (-&b - &root) / &two;
            let mut r2 = (-&b + &root) / &two;
            if r1 > r2 {
                std::mem::swap(&mut r1, &mut r2);
            }
            (
                Poly::linear(&FieldElement::Rational(r1)),
                Some(Poly::linear(&FieldElement::Rational(r2))),
            )
        }
        None => (f.clone(), None),
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Parses a factor-hint file: one factor per line as
/// `multiplicity : c0 c1 ... cd` (lowest degree first). Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_factor_hints(field: Field, text: &str) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| JnfError::Parse(format!("factor file line {}: {msg}", lineno + 1));
        let (mult, coeffs) = line.split_once(':').ok_or_else(|| bad("expected `multiplicity : coefficients`"))?;
        let mult: usize = mult.trim().parse().map_err(|_| bad("bad multiplicity"))?;
        let coeffs = coeffs
            .split_whitespace()
            .map(|t| field.parse(t))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| bad(&e.to_string()))?;
        if coeffs.is_empty() {
            return Err(bad("no coefficients"));
        }
        out.push((Poly::new(field, coeffs)?, mult));
    }
    Ok(out)
}

/// Renders factors in hint-file syntax.
pub fn format_factor_hints(factors: &[(Poly, usize)]) -> String {
    factors
        .iter()
        .map(|(p, m)| {
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            format!("{m} : {}\n", coeffs.join(" "))
        })
        .collect()
}
