mod common;

use common::*;
use jnf_core::charpoly::faddeev;
use jnf_core::jordan_linear::{eigen_structure, shifted, taylor_blocks};
use jnf_core::jordan_rational::{expand_cycle, q_adic_blocks};
use jnf_core::matrix::rank_of_columns;
use jnf_core::stack::{stack_reduce, stack_shift_down, ReducedStack};
use jnf_core::{
    char_data, companion, decompose, decompose_with, factor_charpoly, Execution, FactoredCharPoly, FieldElement, Form,
    JnfError, Matrix, Orientation, Poly,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn is_zero_vec(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

#[test]
fn euclid_div_examples() {
    let (quot, rem) = Poly::from_i64s(q(), &[-2, 0, 1]).euclid_div(&x_minus(1)).unwrap();
    assert_eq!(quot, Poly::from_i64s(q(), &[1, 1]));
    assert_eq!(rem, Poly::constant(q().from_i64(-1)));
    let p = x_minus(2).pow(2).mul(&x2_minus_2().pow(2));
    assert!(p.euclid_div(&x2_minus_2()).unwrap().1.is_zero());
}

#[test]
fn factorization_examples() {
    let p = x_minus(2).pow(2).mul(&x2_minus_2().pow(2));
    let f = factor_charpoly(&p, None).unwrap();
    assert_eq!(f.pairs(), vec![(x_minus(2), 2), (x2_minus_2(), 2)]);
    let f = factor_charpoly(&jnf_core::charpoly(&fixture_a()).unwrap(), None).unwrap();
    assert_eq!(f.pairs(), vec![(x_minus(1), 1), (x_minus(2), 2)]);
    let cubic = Poly::from_i64s(q(), &[-2, 0, 0, 1]);
    assert!(matches!(factor_charpoly(&cubic, None), Err(JnfError::NeedsFactorization { .. })));
    let hinted = factor_charpoly(&cubic, Some(&[(cubic.clone(), 1)])).unwrap();
    assert!(hinted.irreducibility_asserted());
    let bad = factor_charpoly(&cubic, Some(&[(x_minus(1), 3)]));
    assert!(matches!(bad, Err(JnfError::InvalidHint(_))));
}

#[test]
fn matrix_examples() {
    let a = fixture_a();
    assert_eq!(Matrix::identity(q(), 3).mul(&a).unwrap(), a);
    let c = Matrix::from_i64_rows(q(), &[&[0, 2], &[1, 0]]);
    assert_eq!(c.mul(&c).unwrap(), Matrix::scalar(&q().from_i64(2), 2));
    let k = shifted(&a, &q().from_i64(2)).pow(2).unwrap().kernel_basis();
    assert_eq!(k.len(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (m, mi) = random_unimodular(&mut rng, 4);
    assert_eq!(m.inverse().unwrap(), mi);
    assert_eq!(m.mul(&mi).unwrap(), Matrix::identity(q(), 4));
}

#[test]
fn eigenvectors_from_b_at_a_root() {
    let a = fixture_a();
    let b = faddeev(&a).unwrap().b;
    let at_one = b.horner_eval(&q().one());
    assert!(!at_one.is_zero());
    assert!(shifted(&a, &q().one()).mul(&at_one).unwrap().is_zero());
    let one_by_one = faddeev(&Matrix::from_i64_rows(q(), &[&[4]])).unwrap().b;
    assert_eq!(one_by_one.horner_eval(&q().from_i64(9)), Matrix::identity(q(), 1));
}

#[test]
fn fixture_a_stack_reduction_keeps_chains() {
    let a = fixture_a();
    let b = faddeev(&a).unwrap().b;
    let two = q().from_i64(2);
    let op = shifted(&a, &two);
    let s = stack_reduce(ReducedStack::from_blocks(&taylor_blocks(&b, &two, 2)).unwrap());
    assert!(op.mul(&s.block(0)).unwrap().is_zero());
    assert_eq!(op.mul(&s.block(1)).unwrap(), s.block(0));
    let top = s.block(0).transpose();
    assert_eq!(top.rref(), top);
}

#[test]
fn nilpotent_reduced_top_columns_are_eigenvectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let truth = layout_matrix(&[(x_minus(0), 3), (x_minus(0), 1)]);
    let (m, mi) = random_unimodular(&mut rng, 4);
    let a = m.mul(&truth).unwrap().mul(&mi).unwrap();
    let b = faddeev(&a).unwrap().b;
    let s = stack_reduce(ReducedStack::from_blocks(&taylor_blocks(&b, &q().zero(), 4)).unwrap());
    for c in 0..s.chain_count() {
        assert!(is_zero_vec(&a.mul_vec(s.segment(c, 0))));
    }
}

#[test]
fn shift_keeps_relations() {
    let a = fixture_b();
    let b = faddeev(&a).unwrap().b;
    let one = q().one();
    let op = shifted(&a, &one);
    let mut s = stack_reduce(ReducedStack::from_blocks(&taylor_blocks(&b, &one, 3)).unwrap());
    for c in 0..s.chain_count() {
        s = stack_shift_down(s, c);
    }
    for c in 0..s.chain_count() {
        assert!(s.top_is_zero(c));
        assert!(is_zero_vec(&op.mul_vec(s.segment(c, 1))));
        assert_eq!(op.mul_vec(s.segment(c, 2)), s.segment(c, 1));
    }
}

#[test]
fn fixture_b_cycles() {
    let a = fixture_b();
    let b = faddeev(&a).unwrap().b;
    let s = eigen_structure(&a, &b, &q().one(), 3).unwrap();
    assert_eq!(s.cycle_lengths(), vec![2, 1]);
    for c in &s.cycles {
        let op = shifted(&a, &q().one());
        assert!(is_zero_vec(&op.mul_vec(c.end())));
    }
}

#[test]
fn scalar_matrix_is_diagonal() {
    let a = Matrix::scalar(&q().from_i64(3), 3);
    let dec = jnf_core::split_jordan(&a).unwrap();
    assert_eq!(dec.j, a);
    assert_eq!(dec.blocks.len(), 3);
}

#[test]
fn already_jordan_input() {
    let j = layout_matrix(&[(x_minus(4), 2), (x_minus(-1), 1)]).transpose();
    let dec = jnf_core::split_jordan(&j).unwrap();
    dec.verify(&j).unwrap();
    assert_eq!(dec.block_multiset(), layout_multiset(&[(x_minus(4), 2), (x_minus(-1), 1)]));
}

#[test]
fn conjugated_split_ground_truth() {
    let layout = [(x_minus(5), 3), (x_minus(5), 2), (x_minus(7), 1)];
    let truth = layout_matrix(&layout);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (m, mi) = random_unimodular(&mut rng, 6);
    let a = m.mul(&truth).unwrap().mul(&mi).unwrap();
    let dec = jnf_core::split_jordan(&a).unwrap();
    dec.verify(&a).unwrap();
    assert_eq!(dec.block_multiset(), layout_multiset(&layout));
    // squarefree parts come by multiplicity, then cycles by decreasing length
    let order: Vec<(String, usize)> = dec.blocks.iter().map(|b| (b.factor.to_string(), b.cycle_length)).collect();
    let expected = [("x - 7", 1), ("x - 5", 3), ("x - 5", 2)].map(|(f, l)| (f.to_string(), l));
    assert_eq!(order, expected);
}

#[test]
fn six_by_six_q_adic_chain() {
    let a = fixture_six();
    let b = faddeev(&a).unwrap().b;
    let data = q_adic_blocks(&a, &b, &x2_minus_2(), 2).unwrap();
    assert_eq!(data.c_blocks.len(), 2);
    for i in 0..2 {
        assert_eq!(data.qa.mul(&data.c_blocks[1].coeff(i)).unwrap(), data.c_blocks[0].coeff(i));
    }
    let rebuilt = data.c_blocks[1].mul_scalar_poly(&x2_minus_2()).add(&data.c_blocks[0]).unwrap();
    let tail = data.tail.mul_scalar_poly(&x2_minus_2().pow(2));
    assert_eq!(rebuilt.add(&tail).unwrap(), b);
}

#[test]
fn six_by_six_expansion_pairs() {
    let a = fixture_six();
    let c = expand_cycle(&a, &x2_minus_2(), &[vecq(&[0, 0, 0, -1, -1, -1]), vecq(&[1, 0, 0, -1, -1, -1])]).unwrap();
    assert_eq!(c.expanded[1], vec![vecq(&[0, 0, 0, -1, -1, -1]), vecq(&[1, 4, 1, 4, 0, -3])]);
    assert_eq!(c.expanded[0], vec![vecq(&[1, 0, 0, -1, -1, -1]), vecq(&[2, 4, 2, 4, 0, -2])]);
}

#[test]
fn six_by_six_eigenvectors_span_the_reference_ones() {
    let a = fixture_six();
    let dec = decompose(&a, Form::Rational, None).unwrap();
    let reference = fixture_six_p();
    let mut cols: Vec<Vec<FieldElement>> = dec.blocks.iter().filter(|b| b.factor == x_minus(2)).map(|b| dec.p.column(b.offset)).collect();
    assert_eq!(cols.len(), 2);
    cols.extend([reference.column(4), reference.column(5)]);
    assert_eq!(rank_of_columns(q(), 6, &cols), 2);
}

#[test]
fn six_by_six_rational_blocks() {
    let a = fixture_six();
    let dec = decompose(&a, Form::Rational, None).unwrap();
    dec.verify(&a).unwrap();
    assert_eq!(dec.block_multiset(), layout_multiset(&[(x_minus(2), 1), (x_minus(2), 1), (x2_minus_2(), 2)]));
    let expected = Matrix::from_i64_rows(
        q(),
        &[
            &[2, 0, 0, 0, 0, 0],
            &[0, 2, 0, 0, 0, 0],
            &[0, 0, 0, 2, 1, 0],
            &[0, 0, 1, 0, 0, 1],
            &[0, 0, 0, 0, 0, 2],
            &[0, 0, 0, 0, 1, 0],
        ],
    );
    assert_eq!(dec.j, expected);
    assert!(dec.parts_commute());
    let pseudo = decompose(&a, Form::PseudoRational, None).unwrap();
    assert!(!pseudo.parts_commute());
    assert_eq!(jnf_core::pseudo_to_rational(&a, &pseudo).unwrap().j, dec.j);
}

#[test]
fn rational_of_all_linear_matches_split() {
    let a = fixture_a();
    let p = jnf_core::charpoly(&a).unwrap();
    let f = factor_charpoly(&p, None).unwrap();
    let r = decompose(&a, Form::Rational, None).unwrap();
    let s = decompose_with(&a, Form::Split, &f, Orientation::Upper, Execution::Sequential).unwrap();
    assert_eq!(r.blocks, s.blocks);
    assert_eq!((r.p, r.j), (s.p, s.j));
}

#[test]
fn irreducible_cubic_companion() {
    let cubic = Poly::from_i64s(q(), &[-3, 1, 0, 1]);
    let a = companion(&cubic);
    let hint = [(cubic.clone(), 1)];
    let dec = decompose(&a, Form::Rational, Some(&hint)).unwrap();
    assert_eq!(dec.j, a);
    assert_eq!(dec.blocks.len(), 1);
    assert_eq!(dec.blocks[0].cycle_length, 1);
}

#[test]
fn conjugated_companion_recovers_structure() {
    let layout = [(x2_minus_2(), 2), (Poly::from_i64s(q(), &[1, 0, 1]), 1), (x_minus(1), 1)];
    let truth = layout_matrix(&layout);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (m, mi) = random_unimodular(&mut rng, 7);
    let a = m.mul(&truth).unwrap().mul(&mi).unwrap();
    let hint = layout_factorization(&layout);
    for form in [Form::PseudoRational, Form::Rational] {
        let dec = decompose(&a, form, Some(&hint)).unwrap();
        dec.verify(&a).unwrap();
        assert_eq!(dec.block_multiset(), layout_multiset(&layout));
    }
}

#[test]
fn orientation_is_a_permutation() {
    let a = fixture_six();
    let p = char_data(&a).unwrap().p;
    let f = FactoredCharPoly::from_factors(&p, vec![(x2_minus_2(), 2), (x_minus(2), 2)], true).unwrap();
    let up = decompose_with(&a, Form::Rational, &f, Orientation::Upper, Execution::Sequential).unwrap();
    let low = decompose_with(&a, Form::Rational, &f, Orientation::Lower, Execution::Sequential).unwrap();
    low.verify(&a).unwrap();
    assert_eq!(low.blocks, up.blocks);
    // levels reversed inside the 4x4 block
    assert_eq!(low.p.column(0), up.p.column(2));
    assert_eq!(low.p.column(3), up.p.column(1));
}

#[test]
fn parallel_execution_matches_sequential() {
    let a = fixture_six();
    let p = char_data(&a).unwrap().p;
    let f = factor_charpoly(&p, None).unwrap();
    for form in [Form::PseudoRational, Form::Rational] {
        let seq = decompose_with(&a, form, &f, Orientation::Upper, Execution::Sequential).unwrap();
        let par = decompose_with(&a, form, &f, Orientation::Upper, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
