//! 2x2 determinantal minors of the mode unfoldings.
//!
//! For mode `j` the unfolding has rows indexed by subsystem `j` and columns
//! by the remaining subsystems in order. Its 2x2 minors are the quadrics
//! whose common zero set, over all modes, is the Segre variety of fully
//! separable states. Minors are enumerated in unordered canonical form
//! (`k < l`, `c < c'`), lexicographically by `(row_pair, col_pair)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{matricize, unfolding_index, Matricization, PureStateTensor, Shape};
use crate::C64;

/// Identifies one minor: mode, row pair and column pair, all 1-based.
/// Column indices linearize the complementary subsystems row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MinorId {
    pub mode: usize,
    pub row_pair: (usize, usize),
    pub col_pair: (usize, usize),
}

impl MinorId {
    /// Tensor multi-indices (1-based) of the minor's entries:
    /// `[[(k,c), (l,c')], [(k,c'), (l,c)]]`, so that the value is
    /// `a[p0]*a[p1] - a[n0]*a[n1]`.
    pub fn entries(&self, shape: &Shape) -> [[Vec<usize>; 2]; 2] {
        let rows = [self.mode];
        let cols: Vec<usize> = (1..=shape.arity()).filter(|&i| i != self.mode).collect();
        let at = |r: usize, c: usize| unfolding_index(shape, &rows, &cols, r - 1, c - 1);
        let (k, l) = self.row_pair;
        let (c, c2) = self.col_pair;
        [[at(k, c), at(l, c2)], [at(k, c2), at(l, c)]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinorValue {
    pub id: MinorId,
    pub value: C64,
}

fn check_mode(shape: &Shape, mode: usize) -> Result<()> {
    shape.check_subsystem(mode)?;
    let rest: usize = shape.total_dim() / shape.dim(mode);
    if shape.dim(mode) < 2 || rest < 2 {
        return Err(Error::DegenerateMode { mode });
    }
    Ok(())
}

/// Calls `f(k, l, c, c2, value)` (0-based) for every 2x2 minor of an
/// unfolding, in lexicographic `(k, l, c, c2)` order.
fn visit_unfolding(m: &Matricization, mut f: impl FnMut(usize, usize, usize, usize, C64)) {
    let (nr, nc) = (m.rows(), m.cols());
    for k in 0..nr {
        for l in (k + 1)..nr {
            for c in 0..nc {
                let (kc, lc) = (m.get(k, c), m.get(l, c));
                for c2 in (c + 1)..nc {
                    let value = kc * m.get(l, c2) - m.get(k, c2) * lc;
                    f(k, l, c, c2, value);
                }
            }
        }
    }
}

/// Streams the minors of mode `mode` without materializing them.
pub fn visit_mode_minors(state: &PureStateTensor, mode: usize, mut f: impl FnMut(MinorValue)) -> Result<()> {
    check_mode(state.shape(), mode)?;
    let m = matricize(state, &[mode])?;
    visit_unfolding(&m, |k, l, c, c2, value| {
        f(MinorValue {
            id: MinorId { mode, row_pair: (k + 1, l + 1), col_pair: (c + 1, c2 + 1) },
            value,
        })
    });
    Ok(())
}

/// All `C(N_j, 2) * C(prod_{i != j} N_i, 2)` minors of mode `mode`.
pub fn enumerate_minors(state: &PureStateTensor, mode: usize) -> Result<Vec<MinorValue>> {
    let mut out = Vec::with_capacity(mode_minor_count(state.shape(), mode).unwrap_or(0));
    visit_mode_minors(state, mode, |mv| out.push(mv))?;
    Ok(out)
}

/// Minors of every mode, concatenated in mode order. Minors shared by two
/// modes appear once per mode.
pub fn all_minors(state: &PureStateTensor) -> Result<Vec<MinorValue>> {
    let shape = state.shape();
    for j in 1..=shape.arity() {
        check_mode(shape, j)?;
    }
    let mut out = Vec::with_capacity(total_minor_count(shape).unwrap_or(0));
    for j in 1..=shape.arity() {
        visit_mode_minors(state, j, |mv| out.push(mv))?;
    }
    Ok(out)
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn mode_minor_count(shape: &Shape, mode: usize) -> Result<usize> {
    check_mode(shape, mode)?;
    let n = shape.dim(mode);
    Ok(choose2(n) * choose2(shape.total_dim() / n))
}

pub fn total_minor_count(shape: &Shape) -> Result<usize> {
    (1..=shape.arity()).map(|j| mode_minor_count(shape, j)).sum()
}

/// Outcome of the Segre-variety membership test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegreCheck {
    pub on_variety: bool,
    pub max_modulus: f64,
    /// First minor of maximal modulus, reported when the test fails.
    pub witness: Option<MinorValue>,
}

/// Whether every minor of every mode has modulus below `eps`.
pub fn on_segre_variety(state: &PureStateTensor, eps: f64) -> Result<SegreCheck> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let shape = state.shape();
    for j in 1..=shape.arity() {
        check_mode(shape, j)?;
    }
    let mut best: Option<MinorValue> = None;
    let mut max_modulus = 0.0f64;
    for j in 1..=shape.arity() {
        visit_mode_minors(state, j, |mv| {
            let a = mv.value.norm();
            if best.is_none() || a > max_modulus {
                max_modulus = a;
                best = Some(mv);
            }
        })?;
    }
    let on_variety = max_modulus < eps;
    Ok(SegreCheck { on_variety, max_modulus, witness: if on_variety { None } else { best } })
}

/// Largest 2x2 minor modulus of the unfolding with `rows` indexing rows.
pub fn max_block_minor(state: &PureStateTensor, rows: &[usize]) -> Result<f64> {
    let m = matricize(state, rows)?;
    let mut max = 0.0f64;
    visit_unfolding(&m, |_, _, _, _, v| max = max.max(v.norm()));
    Ok(max)
}
