//! Test-side oracles and generators, written without the library's
//! decomposition code.

#![allow(dead_code)]

use jnf_core::{Field, FieldElement, Matrix, Poly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q() -> Field {
    Field::Rational
}

pub fn vecq(v: &[i64]) -> Vec<FieldElement> {
    v.iter().map(|&x| q().from_i64(x)).collect()
}

pub fn fixture_a() -> Matrix {
    Matrix::from_i64_rows(q(), &[&[3, -1, 1], &[2, 0, 1], &[1, -1, 2]])
}

pub fn fixture_b() -> Matrix {
    Matrix::from_i64_rows(q(), &[&[3, 2, -2], &[-1, 0, 1], &[1, 1, 0]])
}

pub fn fixture_six() -> Matrix {
    Matrix::from_str_rows(
        q(),
        &[
            &["1", "-2", "4", "-2", "5", "-4"],
            &["0", "1", "5/2", "-7/2", "2", "-5/2"],
            &["1", "-5/2", "2", "-1/2", "5/2", "-3"],
            &["0", "-1", "9/2", "-7/2", "3", "-7/2"],
            &["0", "0", "2", "-2", "3", "-1"],
            &["1", "-3/2", "-1/2", "1", "3/2", "1/2"],
        ],
    )
    .unwrap()
}

/// Reference transformation matrix for the 6×6 fixture.
pub fn fixture_six_p() -> Matrix {
    Matrix::from_str_rows(
        q(),
        &[
            &["1", "2", "0", "1", "0", "1"],
            &["0", "4", "0", "4", "1", "0"],
            &["0", "2", "0", "1", "-5/9", "-26/9"],
            &["-1", "4", "-1", "4", "-1/9", "-25/9"],
            &["-1", "0", "-1", "0", "4/9", "55/9"],
            &["-1", "-2", "-1", "-3", "-4/9", "53/9"],
        ],
    )
    .unwrap()
}

pub fn fixture_six_pseudo_j() -> Matrix {
    Matrix::from_i64_rows(
        q(),
        &[
            &[0, 2, 0, 1, 0, 0],
            &[1, 0, 0, 0, 0, 0],
            &[0, 0, 0, 2, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 2, 0],
            &[0, 0, 0, 0, 0, 2],
        ],
    )
}

pub fn x_minus(c: i64) -> Poly {
    Poly::from_i64s(q(), &[-c, 1])
}

pub fn x2_minus_2() -> Poly {
    Poly::from_i64s(q(), &[-2, 0, 1])
}

/// `det(λI - A)` by Laplace expansion along the first row, over polynomial
/// entries. Exponential; meant for n ≤ 6.
pub fn cofactor_charpoly(a: &Matrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-&a[(i, j)]);
                    if i == j {
                        c.add(&Poly::monomial(f, 1))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    laplace(f, &entries)
}

fn laplace(f: Field, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(f);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][c].mul(&laplace(f, &minor));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Determinant of a scalar matrix by Laplace expansion.
pub fn cofactor_det(a: &Matrix) -> FieldElement {
    let cp = cofactor_charpoly(a);
    let c0 = cp.coeff(0);
    if a.rows() % 2 == 0 {
        c0
    } else {
        -c0
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: Field, n: usize, range: i64) -> Matrix {
    let rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|_| (0..n).map(|_| field.from_i64(rng.gen_range(-range..=range))).collect())
        .collect();
    Matrix::from_rows(field, rows).unwrap()
}

/// `L·U` with unit triangular integer factors and its exact inverse, the
/// inverse obtained by triangular substitution.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let f = q();
    let mut l = Matrix::identity(f, n);
    let mut u = Matrix::identity(f, n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = f.from_i64(rng.gen_range(-2..=2));
            u[(j, i)] = f.from_i64(rng.gen_range(-2..=2));
        }
    }
    let li = unit_lower_inverse(&l);
    let ui = unit_lower_inverse(&u.transpose()).transpose();
    (l.mul(&u).unwrap(), ui.mul(&li).unwrap())
}

fn unit_lower_inverse(l: &Matrix) -> Matrix {
    let f = l.field();
    let n = l.rows();
    let mut inv = Matrix::identity(f, n);
    for col in 0..n {
        for i in col + 1..n {
            let mut s = f.zero();
            for k in col..i {
                s = &s + &(&l[(i, k)] * &inv[(k, col)]);
            }
            inv[(i, col)] = -s;
        }
    }
    inv
}

/// A block of the rational Jordan form: companion matrices of `factor` on
/// the diagonal and identity couplings above, `length` levels.
pub fn ground_truth_block(factor: &Poly, length: usize) -> Matrix {
    let f = factor.field();
    let d = factor.degree().unwrap();
    let size = d * length;
    let mut m = Matrix::zeros(f, size, size);
    for level in 0..length {
        let base = level * d;
        for i in 1..d {
            m[(base + i, base + i - 1)] = f.one();
        }
        for l in 0..d {
            m[(base + l, base + d - 1)] = -&factor.coeff(l);
        }
        if level > 0 {
            for l in 0..d {
                m[(base - d + l, base + l)] = f.one();
            }
        }
    }
    m
}

pub fn block_diagonal(f: Field, blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(Matrix::rows).sum();
    let mut m = Matrix::zeros(f, n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    m
}

/// Irreducible quadratics over ℚ (negative or non-square discriminants).
pub fn quadratics() -> Vec<Poly> {
    [[-2, 0, 1], [1, 0, 1], [1, 1, 1], [-3, 0, 1], [-1, -1, 1], [2, 2, 1]]
        .iter()
        .map(|c| Poly::from_i64s(q(), c))
        .collect()
}

/// A random normal-form layout of total size ≤ `max_n`: list of
/// `(factor, cycle length)`.
pub fn random_layout(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<(Poly, usize)> {
    let quads = quadratics();
    let target = rng.gen_range(1..=max_n);
    let mut layout = Vec::new();
    let mut size = 0;
    let mut roots: Vec<i64> = Vec::new();
    let mut chosen_quads: Vec<usize> = Vec::new();
    while size < target {
        let room = target - size;
        let quadratic = room >= 2 && rng.gen_bool(0.4);
        let factor = if quadratic {
            // reuse factors often so cycles share characteristic spaces
            let idx = if !chosen_quads.is_empty() && rng.gen_bool(0.6) {
                chosen_quads[rng.gen_range(0..chosen_quads.len())]
            } else {
                rng.gen_range(0..quads.len())
            };
            chosen_quads.push(idx);
            quads[idx].clone()
        } else {
            let r = if !roots.is_empty() && rng.gen_bool(0.6) {
                roots[rng.gen_range(0..roots.len())]
            } else {
                rng.gen_range(-3..=3)
            };
            roots.push(r);
            x_minus(r)
        };
        let d = factor.degree().unwrap();
        let max_len = room / d;
        let len = rng.gen_range(1..=max_len.min(3));
        size += len * d;
        layout.push((factor, len));
    }
    layout
}

/// `(factor, total multiplicity)` in first-appearance order.
pub fn layout_factorization(layout: &[(Poly, usize)]) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (f, len) in layout {
        match out.iter_mut().find(|(g, _)| g == f) {
            Some(entry) => entry.1 += len,
            None => out.push((f.clone(), *len)),
        }
    }
    out
}

pub fn layout_matrix(layout: &[(Poly, usize)]) -> Matrix {
    let blocks: Vec<Matrix> = layout.iter().map(|(f, len)| ground_truth_block(f, *len)).collect();
    block_diagonal(q(), &blocks)
}

pub fn layout_multiset(layout: &[(Poly, usize)]) -> Vec<(Vec<String>, usize)> {
    let mut out: Vec<(Vec<String>, usize)> = layout
        .iter()
        .map(|(f, len)| (f.coeffs().iter().map(ToString::to_string).collect(), *len))
        .collect();
    out.sort();
    out
}

/// Independent `D` for a decomposition: companion blocks per level built
/// from the descriptors.
pub fn companion_part(dec: &jnf_core::JordanDecomposition) -> Matrix {
    let f = dec.j.field();
    let n = dec.j.rows();
    let mut d = Matrix::zeros(f, n, n);
    for b in &dec.blocks {
        let deg = b.factor.degree().unwrap();
        let single = ground_truth_block(&b.factor, 1);
        for level in 0..b.cycle_length {
            let base = b.offset + level * deg;
            for i in 0..deg {
                for j in 0..deg {
                    d[(base + i, base + j)] = single[(i, j)].clone();
                }
            }
        }
    }
    d
}

pub fn commutes(x: &Matrix, y: &Matrix) -> bool {
    x.mul(y).unwrap() == y.mul(x).unwrap()
}

/// Roots in `F_p` with multiplicities, by exhaustive evaluation and
/// repeated division.
pub fn prime_field_roots(p: &Poly) -> Vec<(FieldElement, usize)> {
    let f = p.field();
    let modulus = f.characteristic();
    let mut out = Vec::new();
    for r in 0..modulus {
        let x = f.from_u64(r);
        let mut m = 0;
        let mut rest = p.clone();
        loop {
            let (quot, rem) = rest.euclid_div(&Poly::linear(&x)).unwrap();
            if !rem.is_zero() {
                break;
            }
            m += 1;
            rest = quot;
        }
        if m > 0 {
            out.push((x, m));
        }
    }
    out
}

/// Integer roots of a monic integer polynomial within `[-bound, bound]`,
/// with multiplicities.
pub fn integer_roots(p: &Poly, bound: i64) -> Vec<(FieldElement, usize)> {
    let f = p.field();
    let mut out = Vec::new();
    for r in -bound..=bound {
        let x = f.from_i64(r);
        let mut m = 0;
        let mut rest = p.clone();
        loop {
            let (quot, rem) = rest.euclid_div(&Poly::linear(&x)).unwrap();
            if !rem.is_zero() {
                break;
            }
            m += 1;
            rest = quot;
        }
        if m > 0 {
            out.push((x, m));
        }
    }
    out
}
