//! Assembly of `P` and `J` from per-factor cycles, and the end-to-end
//! drivers for the split, pseudo-rational and rational forms.

use std::fmt;
use std::str::FromStr;

use crate::charpoly::{char_data, CharData};
use crate::error::{JnfError, Result};
use crate::factor::{factor_charpoly, Factor, FactoredCharPoly};
use crate::field::Field;
use crate::jordan_linear::{eigen_structure, EigenStructure};
use crate::jordan_rational::{check_rational_levels, convert_cycle, factor_q_cycles, RationalCycle};
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Split,
    PseudoRational,
    Rational,
}

impl Form {
    /// Split forms put the 1s under the diagonal, the rational forms put
    /// the coupling blocks above it.
    pub fn default_orientation(self) -> Orientation {
        match self {
            Form::Split => Orientation::Lower,
            Form::PseudoRational | Form::Rational => Orientation::Upper,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Split => "split",
            Form::PseudoRational => "pseudo",
            Form::Rational => "rational",
        })
    }
}

impl FromStr for Form {
    type Err = JnfError;

    fn from_str(s: &str) -> Result<Form> {
        match s {
            "split" => Ok(Form::Split),
            "pseudo" | "pseudo_rational" => Ok(Form::PseudoRational),
            "rational" => Ok(Form::Rational),
            _ => Err(JnfError::Parse(format!("unknown form '{s}'"))),
        }
    }
}

/// Order of the levels of a cycle inside `P`.
///
/// `Upper` lists each cycle from its end vector up (`v_0, v_1, ...`), so
/// the coupling sits above the diagonal. `Lower` lists it from the top
/// (`v_{k-1}, ..., v_0`), putting the coupling below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Lower,
    Upper,
}

/// How independent factors are processed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Sequential,
    /// Factors on the rayon pool; identical output. Falls back to
    /// sequential without the `parallel` feature.
    Parallel,
}

/// One Jordan block: `cycle_length` levels of size `degree(factor)`,
/// starting at row/column `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDescriptor {
    pub factor: Poly,
    pub cycle_length: usize,
    pub offset: usize,
}

impl BlockDescriptor {
    pub fn size(&self) -> usize {
        self.cycle_length * self.factor.degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub p: Matrix,
    pub j: Matrix,
    pub form: Form,
    pub orientation: Orientation,
    pub blocks: Vec<BlockDescriptor>,
}

impl JordanDecomposition {
    pub fn field(&self) -> Field {
        self.j.field()
    }

    pub fn size(&self) -> usize {
        self.j.rows()
    }

    /// `(factor, cycle length)` pairs sorted for comparison.
    pub fn block_multiset(&self) -> Vec<(Vec<String>, usize)> {
        let mut out: Vec<(Vec<String>, usize)> = self
            .blocks
            .iter()
            .map(|b| (b.factor.coeffs().iter().map(ToString::to_string).collect(), b.cycle_length))
            .collect();
        out.sort();
        out
    }

    /// `A·P = P·J` and `P` nonsingular.
    pub fn verify(&self, a: &Matrix) -> Result<()> {
        if a.mul(&self.p)? != self.p.mul(&self.j)? {
            return Err(JnfError::Internal("A·P differs from P·J".into()));
        }
        if self.p.rank() != self.p.rows() {
            return Err(JnfError::Internal("transformation matrix is singular".into()));
        }
        Ok(())
    }

    /// `J = D + N` with `D` the block diagonal of companion matrices, one per
    /// level of every cycle.
    pub fn companion_split(&self) -> (Matrix, Matrix) {
        let field = self.field();
        let n = self.size();
        let mut d = Matrix::zeros(field, n, n);
        for b in &self.blocks {
            let deg = b.factor.degree().unwrap_or(0);
            let comp = companion(&b.factor);
            for level in 0..b.cycle_length {
                let base = b.offset + level * deg;
                for r in 0..deg {
                    for c in 0..deg {
                        d[(base + r, base + c)] = comp[(r, c)].clone();
                    }
                }
            }
        }
        let nil = self.j.sub(&d).expect("same shape");
        (d, nil)
    }

    /// Whether `D·N = N·D` for [`JordanDecomposition::companion_split`].
    pub fn parts_commute(&self) -> bool {
        let (d, nil) = self.companion_split();
        d.mul(&nil).expect("square") == nil.mul(&d).expect("square")
    }
}

/// Companion matrix of a monic `Q`: ones under the diagonal, last column
/// `-q_0, ..., -q_{d-1}`.
pub fn companion(q: &Poly) -> Matrix {
    let field = q.field();
    let d = q.degree().unwrap_or(0);
    let mut m = Matrix::zeros(field, d, d);
    for i in 1..d {
        m[(i, i - 1)] = field.one();
    }
    for l in 0..d {
        m[(l, d - 1)] = -&q.coeff(l);
    }
    m
}

/// One cycle ready for assembly: levels end first, `d` vectors each.
#[derive(Clone, Debug)]
pub(crate) struct CycleBasis {
    pub factor: Poly,
    pub levels: Vec<Vec<Vector>>,
}

fn level_slot(orientation: Orientation, k: usize, j: usize) -> usize {
    match orientation {
        Orientation::Upper => j,
        Orientation::Lower => k - 1 - j,
    }
}

/// The `k·d` square block of `J` for one cycle.
pub fn jordan_block(factor: &Poly, k: usize, form: Form, orientation: Orientation) -> Matrix {
    let field = factor.field();
    let d = factor.degree().unwrap_or(0);
    let comp = companion(factor);
    let mut upper = Matrix::zeros(field, k * d, k * d);
    for j in 0..k {
        for r in 0..d {
            for c in 0..d {
                upper[(j * d + r, j * d + c)] = comp[(r, c)].clone();
            }
        }
        if j == 0 {
            continue;
        }
        match form {
            Form::PseudoRational => upper[((j - 1) * d, j * d + d - 1)] = field.one(),
            Form::Split | Form::Rational => {
                for l in 0..d {
                    upper[((j - 1) * d + l, j * d + l)] = field.one();
                }
            }
        }
    }
    if orientation == Orientation::Upper {
        return upper;
    }
    let pos = |idx: usize| level_slot(orientation, k, idx / d) * d + idx % d;
    let mut out = Matrix::zeros(field, k * d, k * d);
    for r in 0..k * d {
        for c in 0..k * d {
            out[(pos(r), pos(c))] = upper[(r, c)].clone();
        }
    }
    out
}

pub(crate) fn assemble(a: &Matrix, form: Form, orientation: Orientation, cycles: Vec<CycleBasis>) -> Result<JordanDecomposition> {
    let field = a.field();
    let n = a.rows();
    let mut columns: Vec<Vector> = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(cycles.len());
    let mut j = Matrix::zeros(field, n, n);
    for cycle in cycles {
        let k = cycle.levels.len();
        let offset = columns.len();
        let block = jordan_block(&cycle.factor, k, form, orientation);
        if offset + block.rows() > n {
            return Err(JnfError::Internal("more cycle vectors than the dimension".into()));
        }
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                j[(offset + r, offset + c)] = block[(r, c)].clone();
            }
        }
        for slot in 0..k {
            let level = &cycle.levels[level_slot(orientation, k, slot)];
            columns.extend(level.iter().cloned());
        }
        blocks.push(BlockDescriptor { factor: cycle.factor, cycle_length: k, offset });
    }
    if columns.len() != n {
        return Err(JnfError::Internal(format!("{} cycle vectors for dimension {n}", columns.len())));
    }
    let p = Matrix::from_columns(field, n, &columns)?;
    let dec = JordanDecomposition { p, j, form, orientation, blocks };
    dec.verify(a)?;
    Ok(dec)
}

fn linear_basis(s: &EigenStructure) -> Vec<CycleBasis> {
    let factor = Poly::linear(&s.eigenvalue);
    s.cycles
        .iter()
        .map(|c| CycleBasis { factor: factor.clone(), levels: c.end_first().into_iter().map(|v| vec![v]).collect() })
        .collect()
}

fn pseudo_basis(c: &RationalCycle) -> CycleBasis {
    CycleBasis { factor: c.factor.clone(), levels: c.expanded.clone() }
}

/// Columns of `P` and `J` for split Jordan forms from per-eigenvalue cycles.
pub fn assemble_split_jordan(a: &Matrix, structures: &[EigenStructure], orientation: Orientation) -> Result<JordanDecomposition> {
    let cycles = structures.iter().flat_map(linear_basis).collect();
    assemble(a, Form::Split, orientation, cycles)
}

/// Pseudo-rational form from per-factor rational cycles (linear factors
/// included, as degree-one cycles).
pub fn assemble_pseudo_rational(a: &Matrix, cycles: &[Vec<RationalCycle>], orientation: Orientation) -> Result<JordanDecomposition> {
    let cycles = cycles.iter().flatten().map(pseudo_basis).collect();
    assemble(a, Form::PseudoRational, orientation, cycles)
}

/// Rebuilds the pseudo cycles of `dec` from its columns and converts each
/// one to the rational basis.
pub fn pseudo_to_rational(a: &Matrix, dec: &JordanDecomposition) -> Result<JordanDecomposition> {
    if dec.form != Form::PseudoRational {
        return Err(JnfError::Internal(format!("expected a pseudo-rational decomposition, got {}", dec.form)));
    }
    let mut cycles = Vec::with_capacity(dec.blocks.len());
    for b in &dec.blocks {
        let d = b.factor.degree().unwrap_or(0);
        let k = b.cycle_length;
        let w: Vec<Vector> = (0..k)
            .map(|j| dec.p.column(b.offset + level_slot(dec.orientation, k, j) * d))
            .collect();
        cycles.push(CycleBasis { factor: b.factor.clone(), levels: rational_levels(a, &b.factor, &w)? });
    }
    assemble(a, Form::Rational, dec.orientation, cycles)
}

fn rational_levels(a: &Matrix, factor: &Poly, w_end_first: &[Vector]) -> Result<Vec<Vec<Vector>>> {
    let levels = convert_cycle(a, factor, w_end_first)?;
    check_rational_levels(a, factor, &levels)?;
    Ok(levels)
}

fn sorted_by_length(mut cycles: Vec<CycleBasis>) -> Vec<CycleBasis> {
    cycles.sort_by(|x, y| y.levels.len().cmp(&x.levels.len()));
    cycles
}

fn factor_cycles(a: &Matrix, data: &CharData, factor: &Factor, form: Form) -> Result<Vec<CycleBasis>> {
    let cycles = if let Some(root) = factor.root() {
        linear_basis(&eigen_structure(a, &data.b, &root, factor.multiplicity)?)
    } else {
        let q_cycles = factor_q_cycles(a, &data.b, &factor.poly, factor.multiplicity)?;
        match form {
            Form::Rational => q_cycles
                .iter()
                .map(|c| {
                    Ok(CycleBasis { factor: c.factor.clone(), levels: rational_levels(a, &c.factor, &c.end_first())? })
                })
                .collect::<Result<Vec<_>>>()?,
            _ => q_cycles.iter().map(pseudo_basis).collect(),
        }
    };
    Ok(sorted_by_length(cycles))
}

fn map_factors<T, F>(factors: &[Factor], execution: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Factor) -> Result<T> + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            factors.par_iter().map(f).collect()
        }
        _ => factors.iter().map(f).collect(),
    }
}

/// Decomposes `a` given a factorization of its characteristic polynomial.
/// Blocks follow the factor order of `factorization`, then decreasing
/// cycle length, then discovery order.
pub fn decompose_with(
    a: &Matrix,
    form: Form,
    factorization: &FactoredCharPoly,
    orientation: Orientation,
    execution: Execution,
) -> Result<JordanDecomposition> {
    let data = char_data(a)?;
    if factorization.product() != data.p {
        return Err(JnfError::InvalidHint(format!(
            "factorization multiplies to {}, characteristic polynomial is {}",
            factorization.product(),
            data.p
        )));
    }
    if form == Form::Split && !factorization.is_split() {
        let (factored, stuck): (Vec<_>, Vec<_>) = factorization.pairs().into_iter().partition(|(f, _)| f.degree() == Some(1));
        return Err(JnfError::NeedsFactorization { factored, stuck });
    }
    let per_factor = map_factors(factorization.factors(), execution, |f| factor_cycles(a, &data, f, form))?;
    assemble(a, form, orientation, per_factor.into_iter().flatten().collect())
}

/// Factors the characteristic polynomial with the built-in routine (or the
/// hint) and decomposes with the form's default orientation.
pub fn decompose(a: &Matrix, form: Form, hint: Option<&[(Poly, usize)]>) -> Result<JordanDecomposition> {
    let p = char_data(a)?.p;
    let factorization = factor_charpoly(&p, hint)?;
    decompose_with(a, form, &factorization, form.default_orientation(), Execution::Sequential)
}

/// Jordan normal form over the base field.
pub fn split_jordan(a: &Matrix) -> Result<JordanDecomposition> {
    decompose(a, Form::Split, None)
}

/// Pseudo-rational form.
pub fn pseudo_rational_jordan(a: &Matrix, factorization: &FactoredCharPoly) -> Result<JordanDecomposition> {
    decompose_with(a, Form::PseudoRational, factorization, Orientation::Upper, Execution::Sequential)
}

/// Rational Jordan form.
pub fn rational_jordan(a: &Matrix, factorization: &FactoredCharPoly) -> Result<JordanDecomposition> {
    decompose_with(a, Form::Rational, factorization, Orientation::Upper, Execution::Sequential)
}
