//! Jordan cycles for a linear factor `(λ - λ_i)^{n_i}` from the Taylor
//! coefficients of `B(λ)` at `λ_i`.

use crate::error::{JnfError, Result};
use crate::field::FieldElement;
use crate::matpoly::MatPoly;
use crate::matrix::{rank_of_columns, Matrix, Vector};
use crate::stack::{check_chain, collect_cycles, CycleTarget, ReducedStack};

/// Vectors `v_{k-1}, ..., v_0` with `(A - λI)·v_t = v_{t-1}` and
/// `(A - λI)·v_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanCycle {
    pub eigenvalue: FieldElement,
    pub vectors: Vec<Vector>,
}

impl JordanCycle {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The eigenvector `v_0`.
    pub fn end(&self) -> &Vector {
        self.vectors.last().expect("cycles are nonempty")
    }

    /// `v_0, v_1, ..., v_{k-1}`.
    pub fn end_first(&self) -> Vec<Vector> {
        self.vectors.iter().rev().cloned().collect()
    }
}

#[derive(Clone, Debug)]
pub struct EigenStructure {
    pub eigenvalue: FieldElement,
    pub multiplicity: usize,
    pub cycles: Vec<JordanCycle>,
    pub taylor_blocks: Vec<Matrix>,
}

impl EigenStructure {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(JordanCycle::len).collect()
    }
}

/// `[B(λ_i), B^1(λ_i), ..., B^{count-1}(λ_i)]`, the Taylor coefficients of
/// `B` at `λ_i`, by repeated synthetic division by `λ - λ_i`.
pub fn taylor_blocks(b: &MatPoly, lambda: &FieldElement, count: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(count);
    let mut rest = b.clone();
    for _ in 0..count {
        let (quot, rem) = rest.horner_shift(lambda);
        out.push(rem);
        rest = quot;
    }
    out
}

/// `A - λI`.
pub fn shifted(a: &Matrix, lambda: &FieldElement) -> Matrix {
    a.add_scalar(&-lambda)
}

/// Runs the stacked reduction on the Taylor blocks and returns the cycles
/// of `λ_i`, longest first.
pub fn extract_cycles(a: &Matrix, lambda: &FieldElement, multiplicity: usize, blocks: Vec<Matrix>) -> Result<EigenStructure> {
    if blocks.len() != multiplicity || multiplicity == 0 {
        return Err(JnfError::Internal(format!(
            "{} Taylor blocks for multiplicity {multiplicity}",
            blocks.len()
        )));
    }
    let op = shifted(a, lambda);
    let stack = ReducedStack::from_blocks(&blocks)?;
    let target = CycleTarget { a, op: &op, degree: 1, multiplicity };
    let chains = collect_cycles(stack, &target)?;
    let cycles = chains
        .into_iter()
        .map(|mut chain| {
            chain.reverse();
            JordanCycle { eigenvalue: lambda.clone(), vectors: chain }
        })
        .collect();
    Ok(EigenStructure { eigenvalue: lambda.clone(), multiplicity, cycles, taylor_blocks: blocks })
}

/// Taylor blocks plus cycle extraction for one eigenvalue.
pub fn eigen_structure(a: &Matrix, b: &MatPoly, lambda: &FieldElement, multiplicity: usize) -> Result<EigenStructure> {
    let blocks = taylor_blocks(b, lambda, multiplicity);
    extract_cycles(a, lambda, multiplicity, blocks)
}

/// Rank data comparing the column space of `B^{n_i-1}(λ_i)` with
/// `ker (A - λ_i I)^{n_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharSpaceRanks {
    pub image: usize,
    pub kernel: usize,
    pub joint: usize,
}

impl CharSpaceRanks {
    /// Equal spaces: each contains the other.
    pub fn equal(&self) -> bool {
        self.image == self.kernel && self.joint == self.kernel
    }
}

pub fn characteristic_space_ranks(a: &Matrix, lambda: &FieldElement, multiplicity: usize, top: &Matrix) -> Result<CharSpaceRanks> {
    let power = shifted(a, lambda).pow(multiplicity)?;
    let kernel = power.kernel_basis();
    let image = top.columns();
    let mut joint = image.clone();
    joint.extend(kernel.iter().cloned());
    let n = a.rows();
    Ok(CharSpaceRanks {
        image: rank_of_columns(a.field(), n, &image),
        kernel: rank_of_columns(a.field(), n, &kernel),
        joint: rank_of_columns(a.field(), n, &joint),
    })
}

/// Re-checks the chain equations of every cycle.
pub fn check_cycles(a: &Matrix, s: &EigenStructure) -> Result<()> {
    let op = shifted(a, &s.eigenvalue);
    for c in &s.cycles {
        check_chain(&op, &c.end_first())?;
    }
    let total: usize = s.cycles.iter().map(JordanCycle::len).sum();
    if total != s.multiplicity {
        return Err(JnfError::Internal(format!("cycle lengths sum to {total}, expected {}", s.multiplicity)));
    }
    Ok(())
}
