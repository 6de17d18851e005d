//! Stacked column reduction: the engine that turns chains of matrices
//! `M_0 <- M_1 <- ... <- M_{k-1}` (each the image of the next under a fixed
//! operator) into Jordan cycles of that operator.
//!
//! Think of the blocks one under another with columns aligned. Column `c`
//! of the stack is a *chain* `(M_0[:,c], ..., M_{k-1}[:,c])`. Elementary
//! column operations are applied to whole chains, so the relations
//! `op·M_0 = 0`, `op·M_t = M_{t-1}` survive every step. Internally the
//! stack is stored transposed: one row per chain, which makes column
//! operations row operations.

use crate::error::{JnfError, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{rank_of_columns, vec_is_zero, Matrix, Vector};

#[derive(Clone, Debug)]
pub struct ReducedStack {
    field: Field,
    n: usize,
    depth: usize,
    /// `chains[c][t * n + i]` is row `i` of block `t` in column `c`.
    chains: Vec<Vector>,
    retired: Vec<bool>,
    pinned: Vec<bool>,
    pivots: Vec<(usize, usize)>,
}

impl ReducedStack {
    /// Stacks `blocks` (block 0 on top). All blocks must share one shape.
    pub fn from_blocks(blocks: &[Matrix]) -> Result<ReducedStack> {
        let first = blocks.first().ok_or_else(|| JnfError::Dimension("empty stack".into()))?;
        let (n, m, field) = (first.rows(), first.cols(), first.field());
        if blocks.iter().any(|b| b.rows() != n || b.cols() != m || b.field() != field) {
            return Err(JnfError::Dimension("stacked blocks differ in shape or field".into()));
        }
        let chains = (0..m)
            .map(|c| blocks.iter().flat_map(|b| b.column(c)).collect())
            .collect();
        Ok(ReducedStack {
            field,
            n,
            depth: blocks.len(),
            chains,
            retired: vec![false; m],
            pinned: vec![false; m],
            pivots: Vec::new(),
        })
    }

    /// Number of stacked blocks.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Rows per block.
    pub fn block_rows(&self) -> usize {
        self.n
    }

    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    /// Block `t` as an `n x chain_count` matrix (retired chains read as zero).
    pub fn block(&self, t: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.chains.len()).map(|c| self.segment(c, t).to_vec()).collect();
        Matrix::from_columns(self.field, self.n, &cols).expect("segments have block length")
    }

    pub fn segment(&self, c: usize, t: usize) -> &[FieldElement] {
        &self.chains[c][t * self.n..(t + 1) * self.n]
    }

    /// The chain in column `c`, block 0 first.
    pub fn chain(&self, c: usize) -> Vec<Vector> {
        (0..self.depth).map(|t| self.segment(c, t).to_vec()).collect()
    }

    pub fn top_is_zero(&self, c: usize) -> bool {
        vec_is_zero(self.segment(c, 0))
    }

    pub fn is_retired(&self, c: usize) -> bool {
        self.retired[c]
    }

    pub fn is_pinned(&self, c: usize) -> bool {
        self.pinned[c]
    }

    /// Pivots `(chain, row of the top block)` found by the last reduction.
    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    /// Marks a chain as already collected. Pinned chains take precedence as
    /// pivots and are never modified by the others during reduction.
    pub fn pin(&mut self, c: usize) {
        self.pinned[c] = true;
    }

    pub fn retire(&mut self, c: usize) {
        self.retired[c] = true;
        self.pinned[c] = false;
        self.chains[c].iter_mut().for_each(|e| *e = self.field.zero());
    }

    /// Appends a chain given block 0 first.
    pub fn push_chain(&mut self, segments: &[Vector], pinned: bool) -> Result<usize> {
        if segments.len() != self.depth || segments.iter().any(|s| s.len() != self.n) {
            return Err(JnfError::Dimension("pushed chain does not match the stack shape".into()));
        }
        self.chains.push(segments.iter().flatten().cloned().collect());
        self.retired.push(false);
        self.pinned.push(pinned);
        Ok(self.chains.len() - 1)
    }

    /// Column-reduces the top block, mirroring every operation on the whole
    /// chain. Pivots are chosen column by column (rows of the top block), the
    /// first pinned chain with a nonzero entry winning, then the first
    /// unpinned one; chains are never reordered. Pivots are normalized to
    /// one. With no pinned chains this is a full reduced echelon form.
    pub fn reduce(&mut self) -> &[(usize, usize)] {
        self.pivots.clear();
        let count = self.chains.len();
        let mut is_pivot = vec![false; count];
        for row in 0..self.n {
            let eligible = |c: &usize| !self.retired[*c] && !is_pivot[*c] && !self.chains[*c][row].is_zero();
            let pick = (0..count)
                .filter(|c| self.pinned[*c])
                .find(eligible)
                .or_else(|| (0..count).filter(|c| !self.pinned[*c]).find(eligible));
            let Some(p) = pick else {
                continue;
            };
            let inv = self.chains[p][row].inv().expect("pivot is nonzero");
            if !inv.is_one() {
                self.chains[p].iter_mut().for_each(|e| *e = &*e * &inv);
            }
            let pivot_chain = self.chains[p].clone();
            for c in 0..count {
                if c == p || self.retired[c] || self.chains[c][row].is_zero() {
                    continue;
                }
                if self.pinned[c] && !self.pinned[p] {
                    continue;
                }
                let f = -&self.chains[c][row];
                for (e, v) in self.chains[c].iter_mut().zip(&pivot_chain) {
                    if !v.is_zero() {
                        *e = &*e + &(&f * v);
                    }
                }
            }
            is_pivot[p] = true;
            self.pivots.push((p, row));
        }
        &self.pivots
    }

    /// Moves chain `c` one block down: block t takes the old block t-1 and
    /// block 0 becomes zero. The old bottom segment falls off; in a
    /// single-block stack the chain is retired.
    pub fn shift_down(&mut self, c: usize) {
        if self.depth == 1 {
            self.retire(c);
            return;
        }
        let n = self.n;
        let chain = &mut self.chains[c];
        chain.truncate((self.depth - 1) * n);
        let zeros = vec![self.field.zero(); n];
        chain.splice(0..0, zeros);
    }

    /// Removes block 0, which must be zero in every chain.
    pub fn drop_top(&mut self) -> Result<()> {
        if (0..self.chains.len()).any(|c| !self.top_is_zero(c)) {
            return Err(JnfError::Internal("dropping a nonzero top block".into()));
        }
        for chain in &mut self.chains {
            chain.drain(..self.n);
        }
        self.depth -= 1;
        for c in 0..self.chains.len() {
            if !self.retired[c] && vec_is_zero(&self.chains[c]) {
                self.retired[c] = true;
                self.pinned[c] = false;
            }
        }
        Ok(())
    }
}

/// Reduces a stack (see [`ReducedStack::reduce`]) and returns it.
pub fn stack_reduce(mut s: ReducedStack) -> ReducedStack {
    s.reduce();
    s
}

/// Shifts chain `col` one block down (see [`ReducedStack::shift_down`]).
pub fn stack_shift_down(mut s: ReducedStack, col: usize) -> ReducedStack {
    s.shift_down(col);
    s
}

/// What the cycle collector needs to know about the operator whose cycles
/// are sought.
pub(crate) struct CycleTarget<'a> {
    /// The matrix `A`.
    pub a: &'a Matrix,
    /// The nilpotent-on-the-space operator: `A - λI` or `Q(A)`.
    pub op: &'a Matrix,
    /// Degree of the factor; each cycle is expanded by `A^i`, `i < degree`.
    pub degree: usize,
    /// Sum of cycle lengths to reach.
    pub multiplicity: usize,
}

/// Reduce, collect, shift, repeat. Returns the cycles found, each as a
/// chain `[v_0, ..., v_{k-1}]` with `op·v_0 = 0` and `op·v_t = v_{t-1}`, in
/// discovery order (longest first).
///
/// A candidate is accepted only if its chain together with the `A^i`
/// images is independent of everything collected so far (rank test). Once
/// accepted, the chain and its images are pinned in the stack so the next
/// reductions strip them from every other candidate.
pub(crate) fn collect_cycles(mut stack: ReducedStack, target: &CycleTarget<'_>) -> Result<Vec<Vec<Vector>>> {
    let field = target.a.field();
    let n = target.a.rows();
    let mut cycles: Vec<Vec<Vector>> = Vec::new();
    let mut collected: Vec<Vector> = Vec::new();
    let mut found = 0;
    let initial_depth = stack.depth();

    while found < target.multiplicity {
        if stack.depth() == 0 {
            return Err(JnfError::Internal(format!(
                "stack exhausted after {found} of {} cycle steps",
                target.multiplicity
            )));
        }
        let length = stack.depth();
        let mut accepted_this_round = 0;
        loop {
            stack.reduce();
            let candidate = (0..stack.chain_count())
                .find(|&c| !stack.is_retired(c) && !stack.is_pinned(c) && !stack.top_is_zero(c));
            let Some(c) = candidate else {
                break;
            };
            let chain = stack.chain(c);
            check_chain(target.op, &chain)?;
            let images = expand_chain(target.a, &chain, target.degree)?;
            let new_vectors: Vec<Vector> = images.iter().flatten().cloned().collect();
            let mut all = collected.clone();
            all.extend(new_vectors.iter().cloned());
            if rank_of_columns(field, n, &all) != all.len() {
                stack.retire(c);
                continue;
            }
            collected = all;
            found += length;
            accepted_this_round += 1;
            stack.pin(c);
            for image in images.iter().skip(1) {
                stack.push_chain(image, true)?;
            }
            cycles.push(chain);
            if found >= target.multiplicity {
                break;
            }
        }
        if length == initial_depth && accepted_this_round > 1 {
            return Err(JnfError::Internal(format!(
                "{accepted_this_round} full-length cycles found at the first reduction"
            )));
        }
        if found >= target.multiplicity {
            break;
        }
        for c in 0..stack.chain_count() {
            if !stack.is_retired(c) && !stack.top_is_zero(c) {
                stack.shift_down(c);
            }
        }
        stack.drop_top()?;
    }
    if found != target.multiplicity {
        return Err(JnfError::Internal(format!(
            "collected cycle lengths sum to {found}, expected {}",
            target.multiplicity
        )));
    }
    Ok(cycles)
}

/// Checks `op·v_0 = 0`, `op·v_t = v_{t-1}` and `v_0 != 0`.
pub(crate) fn check_chain(op: &Matrix, chain: &[Vector]) -> Result<()> {
    if chain.first().is_none_or(|v| vec_is_zero(v)) {
        return Err(JnfError::Internal("cycle with a zero end vector".into()));
    }
    for (t, v) in chain.iter().enumerate() {
        let image = op.mul_vec(v);
        let ok = if t == 0 { vec_is_zero(&image) } else { image == chain[t - 1] };
        if !ok {
            return Err(JnfError::Internal(format!("chain relation broken at level {t}")));
        }
    }
    Ok(())
}

/// `[chain, A·chain, ..., A^{d-1}·chain]`, each applied segmentwise.
pub(crate) fn expand_chain(a: &Matrix, chain: &[Vector], degree: usize) -> Result<Vec<Vec<Vector>>> {
    let mut out = vec![chain.to_vec()];
    for _ in 1..degree {
        let prev = out.last().expect("nonempty");
        out.push(prev.iter().map(|v| a.mul_vec(v)).collect());
    }
    Ok(out)
}
