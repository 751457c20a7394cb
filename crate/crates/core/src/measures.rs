//! Minor-based entanglement measures.
//!
//! Both measures are square roots of `N` times a sum of squared minor
//! moduli. Index sums in the defining formulas run over ordered pairs, and
//! every unordered minor shows up four times under `k <-> l` swaps with the
//! same modulus, so each unordered sum is multiplied by 4.
//!
//! * [`concurrence_bipartite`]: the generalized concurrence of a two-party
//!   state, `2|a11 a22 - a12 a21|` for two qubits at `N = 1`.
//! * [`measure_multipartite`]: the sum over every mode. For two parties it
//!   counts the one minor family twice and equals `sqrt(2)` times the
//!   concurrence.
//! * [`three_qubit_explicit`]: the twelve-term weighted expansion for three
//!   qubits, evaluated literally as an independent route to the same number.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::KahanSum;
use crate::minors::visit_mode_minors;
use crate::tensor::PureStateTensor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureConfig {
    pub norm_const: f64,
    /// Keep per-mode partial sums in the result.
    pub report_breakdown: bool,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        Self { norm_const: 1.0, report_breakdown: true }
    }
}

impl MeasureConfig {
    pub fn new(norm_const: f64) -> Result<Self> {
        let cfg = Self { norm_const, ..Self::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.norm_const > 0.0 && self.norm_const.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("normalization constant must be positive, got {}", self.norm_const)))
        }
    }
}

/// Which formula produced a [`MeasureResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Mode-1 minors only (two parties).
    Concurrence,
    /// Sum over every mode.
    AllModes,
    /// Literal twelve-term three-qubit expansion.
    ThreeQubitExplicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeContribution {
    pub mode: usize,
    /// `4 * sum |minor|^2` over the unordered minors of this mode.
    pub partial: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub convention: Convention,
    /// Empty unless `config.report_breakdown`.
    pub per_mode: Vec<ModeContribution>,
    pub config: MeasureConfig,
}

fn mode_partial(state: &PureStateTensor, mode: usize) -> Result<f64> {
    let mut acc = KahanSum::new();
    visit_mode_minors(state, mode, |mv| acc.add(mv.value.norm_sqr()))?;
    Ok(4.0 * acc.value())
}

fn finish(partials: Vec<ModeContribution>, total: f64, convention: Convention, cfg: &MeasureConfig) -> MeasureResult {
    MeasureResult {
        value: (cfg.norm_const * total).sqrt(),
        convention,
        per_mode: if cfg.report_breakdown { partials } else { Vec::new() },
        config: *cfg,
    }
}

/// Generalized concurrence of a bipartite pure state.
pub fn concurrence_bipartite(state: &PureStateTensor, cfg: &MeasureConfig) -> Result<MeasureResult> {
    cfg.validate()?;
    if state.arity() != 2 {
        return Err(Error::WrongArity { expected: 2, got: state.arity() });
    }
    let partial = mode_partial(state, 1)?;
    Ok(finish(vec![ModeContribution { mode: 1, partial }], partial, Convention::Concurrence, cfg))
}

/// Multipartite measure: minors of every mode, no deduplication across modes.
/// Zero exactly on fully separable states.
pub fn measure_multipartite(state: &PureStateTensor, cfg: &MeasureConfig) -> Result<MeasureResult> {
    cfg.validate()?;
    let m = state.arity();
    if m < 2 {
        return Err(Error::DegenerateMode { mode: 1 });
    }
    if let Some(j) = (1..=m).find(|&j| state.shape().dim(j) < 2) {
        return Err(Error::DegenerateMode { mode: j });
    }
    let partials = (1..=m)
        .map(|mode| mode_partial(state, mode).map(|partial| ModeContribution { mode, partial }))
        .collect::<Result<Vec<_>>>()?;
    let total: KahanSum = partials.iter().map(|p| p.partial).sum();
    Ok(finish(partials, total.value(), Convention::AllModes, cfg))
}

/// One term `weight * |a[p0] a[p1] - a[n0] a[n1]|^2` of the three-qubit
/// expansion, with the modes whose unfolding contains that minor.
struct Term {
    weight: f64,
    pos: [[usize; 3]; 2],
    neg: [[usize; 3]; 2],
    modes: &'static [usize],
}

const fn t(weight: f64, pos: [[usize; 3]; 2], neg: [[usize; 3]; 2], modes: &'static [usize]) -> Term {
    Term { weight, pos, neg, modes }
}

#[rustfmt::skip]
const THREE_QUBIT_TERMS: [Term; 12] = [
    t(2.0, [[1, 1, 1], [2, 2, 1]], [[1, 2, 1], [2, 1, 1]], &[1, 2]),
    t(2.0, [[1, 1, 2], [2, 2, 2]], [[1, 2, 2], [2, 1, 2]], &[1, 2]),
    t(2.0, [[1, 1, 1], [2, 1, 2]], [[1, 1, 2], [2, 1, 1]], &[1, 3]),
    t(2.0, [[1, 2, 1], [2, 2, 2]], [[1, 2, 2], [2, 2, 1]], &[1, 3]),
    t(2.0, [[1, 1, 1], [1, 2, 2]], [[1, 1, 2], [1, 2, 1]], &[2, 3]),
    t(2.0, [[2, 1, 1], [2, 2, 2]], [[2, 1, 2], [2, 2, 1]], &[2, 3]),
    t(1.0, [[1, 1, 1], [2, 2, 2]], [[1, 1, 2], [2, 2, 1]], &[3]),
    t(1.0, [[1, 1, 1], [2, 2, 2]], [[1, 2, 1], [2, 1, 2]], &[2]),
    t(1.0, [[1, 1, 1], [2, 2, 2]], [[1, 2, 2], [2, 1, 1]], &[1]),
    t(1.0, [[1, 1, 2], [2, 2, 1]], [[1, 2, 1], [2, 1, 2]], &[1]),
    t(1.0, [[1, 1, 2], [2, 2, 1]], [[1, 2, 2], [2, 1, 1]], &[2]),
    t(1.0, [[1, 2, 1], [2, 1, 2]], [[1, 2, 2], [2, 1, 1]], &[3]),
];

/// The three-qubit measure from its explicit weighted expansion.
pub fn three_qubit_explicit(state: &PureStateTensor, cfg: &MeasureConfig) -> Result<MeasureResult> {
    cfg.validate()?;
    if state.shape().dims() != [2, 2, 2] {
        return Err(Error::WrongShape { expected: vec![2, 2, 2], got: state.shape().dims().to_vec() });
    }
    let a = |i: &[usize; 3]| state.amp(i);
    let mut weighted = KahanSum::new();
    let mut per_mode = [KahanSum::new(); 3];
    for term in &THREE_QUBIT_TERMS {
        let sq = (a(&term.pos[0]) * a(&term.pos[1]) - a(&term.neg[0]) * a(&term.neg[1])).norm_sqr();
        weighted.add(term.weight * sq);
        for &j in term.modes {
            per_mode[j - 1].add(sq);
        }
    }
    let partials = per_mode
        .iter()
        .enumerate()
        .map(|(i, acc)| ModeContribution { mode: i + 1, partial: 4.0 * acc.value() })
        .collect();
    Ok(finish(partials, 4.0 * weighted.value(), Convention::ThreeQubitExplicit, cfg))
}
