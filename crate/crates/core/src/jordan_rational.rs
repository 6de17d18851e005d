//! Rational Jordan cycles for an irreducible factor `Q` of degree `d` and
//! multiplicity `q`, from the `Q`-adic expansion of `B(λ)`, and the
//! conversion from the pseudo-rational basis to the rational one.

use crate::charpoly::poly_at_matrix;
use crate::error::{JnfError, Result};
use crate::field::FieldElement;
use crate::matpoly::{MatPoly, OpCounter};
use crate::matrix::{rank_of_columns, vec_axpy, vec_is_zero, Matrix, Vector};
use crate::poly::{binomial, Poly};
use crate::stack::{check_chain, collect_cycles, expand_chain, CycleTarget, ReducedStack};

/// `B(λ) = Σ_{k<q} C_k(λ)·Q(λ)^k + tail(λ)·Q(λ)^q` with `deg C_k < d`.
#[derive(Clone, Debug)]
pub struct QAdicData {
    pub factor: Poly,
    pub multiplicity: usize,
    pub degree: usize,
    pub c_blocks: Vec<MatPoly>,
    pub tail: MatPoly,
    /// `Q(A)`.
    pub qa: Matrix,
    /// Scalar operations spent in the divisions.
    pub division_ops: u64,
}

impl QAdicData {
    /// Rebuilds `B(λ)` from the digits and the tail.
    pub fn reconstruct(&self) -> Result<MatPoly> {
        let mut acc = self.tail.clone();
        for c in self.c_blocks.iter().rev() {
            acc = acc.mul_scalar_poly(&self.factor).add(c)?;
        }
        Ok(acc)
    }

    /// Stack block `k`: `[C_{k,0} | C_{k,1} | ... | C_{k,d-1}]`.
    pub fn stack_block(&self, k: usize) -> Matrix {
        let c = &self.c_blocks[k];
        let n = c.size();
        let cols: Vec<Vector> = (0..self.degree).flat_map(|i| c.coeff(i).columns()).collect();
        Matrix::from_columns(c.field(), n, &cols).expect("columns of length n")
    }
}

/// A Jordan cycle `w_{k-1}, ..., w_0` of `Q(A)` and its expansion
/// `expanded[j][i] = A^i·w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCycle {
    pub factor: Poly,
    pub q_cycle: Vec<Vector>,
    pub expanded: Vec<Vec<Vector>>,
}

impl RationalCycle {
    pub fn len(&self) -> usize {
        self.q_cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q_cycle.is_empty()
    }

    /// `w_0, ..., w_{k-1}`.
    pub fn end_first(&self) -> Vec<Vector> {
        self.q_cycle.iter().rev().cloned().collect()
    }
}

fn factor_degree(q: &Poly) -> Result<usize> {
    match q.degree() {
        Some(d) if d >= 1 && q.is_monic() => Ok(d),
        _ => Err(JnfError::NotMonic),
    }
}

/// Divides `B` by `Q` `q` times and checks the chain
/// `Q(A)·C_0 = 0`, `C_k = Q(A)·C_{k+1}` on every coefficient.
pub fn q_adic_blocks(a: &Matrix, b: &MatPoly, factor: &Poly, multiplicity: usize) -> Result<QAdicData> {
    let degree = factor_degree(factor)?;
    let qa = poly_at_matrix(factor, a)?;
    let mut counter = OpCounter::default();
    let mut c_blocks = Vec::with_capacity(multiplicity);
    let mut rest = b.clone();
    for _ in 0..multiplicity {
        let (quot, rem) = rest.div_q_counted(factor, &mut counter)?;
        c_blocks.push(rem);
        rest = quot;
    }
    for (k, c) in c_blocks.iter().enumerate() {
        for i in 0..degree {
            let image = qa.mul(&c.coeff(i))?;
            let ok = if k == 0 { image.is_zero() } else { image == c_blocks[k - 1].coeff(i) };
            if !ok {
                return Err(JnfError::Internal(format!("Q-adic chain broken at C_{k}, power {i}")));
            }
        }
    }
    Ok(QAdicData {
        factor: factor.clone(),
        multiplicity,
        degree,
        c_blocks,
        tail: rest,
        qa,
        division_ops: counter.ops,
    })
}

/// `A^i·w_j` for every level, with the rank check that the `k·d` vectors
/// are independent.
pub fn expand_cycle(a: &Matrix, factor: &Poly, q_cycle: &[Vector]) -> Result<RationalCycle> {
    let d = factor_degree(factor)?;
    let end_first: Vec<Vector> = q_cycle.iter().rev().cloned().collect();
    let images = expand_chain(a, &end_first, d)?;
    let expanded: Vec<Vec<Vector>> = (0..end_first.len())
        .map(|j| images.iter().map(|img| img[j].clone()).collect())
        .collect();
    let all: Vec<Vector> = expanded.iter().flatten().cloned().collect();
    if rank_of_columns(a.field(), a.rows(), &all) != all.len() {
        return Err(JnfError::Internal("expanded cycle is rank deficient".into()));
    }
    Ok(RationalCycle { factor: factor.clone(), q_cycle: q_cycle.to_vec(), expanded })
}

/// Jordan cycles of `Q(A)` from the stacked `C_k` blocks, longest first.
pub fn extract_q_cycles(a: &Matrix, data: &QAdicData) -> Result<Vec<RationalCycle>> {
    let blocks: Vec<Matrix> = (0..data.multiplicity).map(|k| data.stack_block(k)).collect();
    let stack = ReducedStack::from_blocks(&blocks)?;
    let target = CycleTarget { a, op: &data.qa, degree: data.degree, multiplicity: data.multiplicity };
    let chains = collect_cycles(stack, &target)?;
    chains
        .into_iter()
        .map(|chain| {
            check_chain(&data.qa, &chain)?;
            let top_first: Vec<Vector> = chain.into_iter().rev().collect();
            expand_cycle(a, &data.factor, &top_first)
        })
        .collect()
}

/// Pseudo-rational cycles for one factor.
pub fn factor_q_cycles(a: &Matrix, b: &MatPoly, factor: &Poly, multiplicity: usize) -> Result<Vec<RationalCycle>> {
    let data = q_adic_blocks(a, b, factor, multiplicity)?;
    extract_q_cycles(a, &data)
}

/// Coordinates relative to the pseudo basis `e_{j,i} = A^i·w_j`, stored at
/// index `j·d + i`.
struct PseudoCoords<'a> {
    q: &'a [FieldElement],
    d: usize,
    k: usize,
}

impl PseudoCoords<'_> {
    fn zero(&self, like: &FieldElement) -> Vector {
        vec![like.field().zero(); self.k * self.d]
    }

    /// Multiplication by `A`: `e_{j,i} -> e_{j,i+1}` below the top power and
    /// `e_{j,d-1} -> e_{j-1,0} - Σ_l q_l e_{j,l}`.
    fn apply_a(&self, x: &[FieldElement]) -> Vector {
        let d = self.d;
        let mut out = self.zero(&x[0]);
        for j in 0..self.k {
            for i in 0..d {
                let c = &x[j * d + i];
                if c.is_zero() {
                    continue;
                }
                if i + 1 < d {
                    out[j * d + i + 1] = &out[j * d + i + 1] + c;
                } else {
                    if j > 0 {
                        out[(j - 1) * d] = &out[(j - 1) * d] + c;
                    }
                    for (l, ql) in self.q.iter().take(d).enumerate() {
                        out[j * d + l] = &out[j * d + l] - &(c * ql);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, like: &FieldElement, idx: usize) -> Vector {
        let mut v = self.zero(like);
        v[idx] = like.field().one();
        v
    }
}

/// Converts one pseudo-rational cycle `w_0, ..., w_{k-1}` (end first) into
/// rational levels `v_{j,0..d-1}` with `A·v_{j,l-1} = v_{j,l} + v_{j-1,l-1}`
/// and `A·v_{j,d-1} = -Σ q_l v_{j,l} + v_{j-1,d-1}`.
///
/// `v_{0,l} = A^l w_0`. For `j ≥ 1`, `Q(A)·v_{j,0}` must equal
/// `R = Σ_{l=1}^{d} q_l Σ_{m=1}^{min(l,j)} C(l,m)·v_{j-m,l-m}`; `v_{j,0}` is
/// read off `R` by moving every coordinate one level up, then
/// `v_{j,l} = A^l v_{j,0} - Σ_{m=1}^{min(l,j)} C(l,m)·v_{j-m,l-m}`.
pub fn convert_cycle(a: &Matrix, factor: &Poly, w_end_first: &[Vector]) -> Result<Vec<Vec<Vector>>> {
    let d = factor_degree(factor)?;
    let field = a.field();
    let k = w_end_first.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let coeffs = factor.coeffs();
    let coords = PseudoCoords { q: coeffs, d, k };
    let one = field.one();

    // v[j][l] in pseudo coordinates
    let mut v: Vec<Vec<Vector>> = Vec::with_capacity(k);
    v.push((0..d).map(|l| coords.unit(&one, l)).collect());
    for j in 1..k {
        let mut r = coords.zero(&one);
        for (l, ql) in coeffs.iter().enumerate().skip(1) {
            for m in 1..=l.min(j) {
                let c = ql * &binomial(field, l, m);
                vec_axpy(&mut r, &c, &v[j - m][l - m]);
            }
        }
        if !vec_is_zero(&r[(k - 1) * d..]) {
            return Err(JnfError::Internal(format!("right-hand side at level {j} is not in the image of Q(A)")));
        }
        let mut v0 = coords.zero(&one);
        v0[d..].clone_from_slice(&r[..(k - 1) * d]);
        let mut level = vec![v0];
        let mut power = level[0].clone();
        for l in 1..d {
            power = coords.apply_a(&power);
            let mut vl = power.clone();
            for m in 1..=l.min(j) {
                vec_axpy(&mut vl, &-binomial(field, l, m), &v[j - m][l - m]);
            }
            level.push(vl);
        }
        v.push(level);
    }

    // back to the ambient space through e_{j,i} = A^i w_j
    let basis: Vec<Vector> = w_end_first
        .iter()
        .flat_map(|w| {
            let mut out = vec![w.clone()];
            for _ in 1..d {
                out.push(a.mul_vec(out.last().expect("nonempty")));
            }
            out
        })
        .collect();
    let n = a.rows();
    let levels = v
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .map(|x| {
                    let mut out = vec![field.zero(); n];
                    for (c, e) in x.iter().zip(&basis) {
                        vec_axpy(&mut out, c, e);
                    }
                    out
                })
                .collect()
        })
        .collect();
    Ok(levels)
}

/// Checks the rational relations on converted levels.
pub fn check_rational_levels(a: &Matrix, factor: &Poly, levels: &[Vec<Vector>]) -> Result<()> {
    let d = factor_degree(factor)?;
    let q = factor.coeffs();
    for (j, level) in levels.iter().enumerate() {
        for l in 0..d {
            let image = a.mul_vec(&level[l]);
            let mut expected = if l + 1 < d {
                level[l + 1].clone()
            } else {
                let mut acc = vec![a.field().zero(); a.rows()];
                for (m, qm) in q.iter().take(d).enumerate() {
                    vec_axpy(&mut acc, &-qm, &level[m]);
                }
                acc
            };
            if j > 0 {
                vec_axpy(&mut expected, &a.field().one(), &levels[j - 1][l]);
            }
            if image != expected {
                return Err(JnfError::Internal(format!("rational relation fails at v_({j},{l})")));
            }
        }
    }
    Ok(())
}
