//! Bipartite factorization checks and the full separability report.
//!
//! A pure state factors across a cut `S | S'` iff its unfolding with `S`
//! indexing rows has rank one, i.e. its second singular value vanishes. The
//! per-mode cuts `{j} | rest` are exactly the ones the multipartite measure
//! sees; cuts with two or more subsystems on each side are invisible to it
//! and only show up here.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::singular_values;
use crate::measures::{concurrence_bipartite, measure_multipartite, MeasureConfig, MeasureResult};
use crate::minors::{max_block_minor, on_segre_variety, visit_mode_minors};
use crate::tensor::{matricize, PureStateTensor};

/// Largest arity [`analyze`] accepts (1023 bipartitions).
pub const MAX_ANALYZE_ARITY: usize = 11;

/// A cut `S | S'` of the subsystems `1..=m`, stored as the side that
/// contains subsystem 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionSpec {
    block: Vec<usize>,
    arity: usize,
}

impl PartitionSpec {
    /// Either side of the cut may be given.
    pub fn new(side: &[usize], arity: usize) -> Result<Self> {
        let mut block = side.to_vec();
        block.sort_unstable();
        block.dedup();
        if block.len() != side.len() {
            return Err(Error::BadPartition("repeated subsystem".into()));
        }
        if let Some(&j) = block.iter().find(|&&j| j == 0 || j > arity) {
            return Err(Error::SubsystemOutOfRange { index: j, arity });
        }
        if block.is_empty() || block.len() == arity {
            return Err(Error::EmptyPartition);
        }
        if block[0] != 1 {
            block = (1..=arity).filter(|j| !block.contains(j)).collect();
        }
        Ok(Self { block, arity })
    }

    /// The cut `{j} | rest`.
    pub fn single(j: usize, arity: usize) -> Result<Self> {
        Self::new(&[j], arity)
    }

    /// Side containing subsystem 1.
    pub fn block(&self) -> &[usize] {
        &self.block
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.arity).filter(|j| !self.block.contains(j)).collect()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The lone subsystem if one side of the cut is a singleton.
    pub fn singleton(&self) -> Option<usize> {
        if self.block.len() == 1 {
            Some(self.block[0])
        } else {
            let rest = self.complement();
            (rest.len() == 1).then(|| rest[0])
        }
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}|{{{}}}", join(&self.block), join(&self.complement()))
    }
}

impl Serialize for PartitionSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every cut of `1..=m`, by block size then lexicographically.
pub fn all_bipartitions(arity: usize) -> Vec<PartitionSpec> {
    if arity < 2 {
        return Vec::new();
    }
    let others = arity - 1;
    let mut blocks: Vec<Vec<usize>> = (0u64..(1u64 << others) - 1)
        .map(|mask| {
            std::iter::once(1)
                .chain((0..others).filter(|b| mask >> b & 1 == 1).map(|b| b + 2))
                .collect()
        })
        .collect();
    blocks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    blocks.into_iter().map(|block| PartitionSpec { block, arity }).collect()
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")))
    }
}

fn check_partition(state: &PureStateTensor, part: &PartitionSpec) -> Result<()> {
    if part.arity() != state.arity() {
        return Err(Error::BadPartition(format!("partition of {} subsystems for a state of {}", part.arity(), state.arity())));
    }
    Ok(())
}

/// Rank-one test of the unfolding across `part`. Returns the verdict
/// `sigma_2 < eps` and `sigma_2` itself.
pub fn bipartition_factorable(state: &PureStateTensor, part: &PartitionSpec, eps: f64) -> Result<(bool, f64)> {
    check_eps(eps)?;
    check_partition(state, part)?;
    let m = matricize(state, part.block())?;
    let sv = singular_values(m.data(), m.rows(), m.cols());
    let sigma2 = sv.get(1).copied().unwrap_or(0.0);
    Ok((sigma2 < eps, sigma2))
}

/// Evaluates the ideal of the cut `{j} | rest` at the state: true iff every
/// mode-`j` minor has modulus below `eps`. Returns the largest modulus.
pub fn ideal_satisfied(state: &PureStateTensor, part: &PartitionSpec, eps: f64) -> Result<(bool, f64)> {
    check_eps(eps)?;
    check_partition(state, part)?;
    let j = part
        .singleton()
        .ok_or_else(|| Error::BadPartition(format!("{part} has no single-subsystem side")))?;
    let mut max = 0.0f64;
    visit_mode_minors(state, j, |mv| max = max.max(mv.value.norm()))?;
    Ok((max < eps, max))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutReport {
    pub partition: PartitionSpec,
    pub factorable: bool,
    pub second_singular_value: f64,
    pub max_minor_modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparabilityReport {
    pub dims: Vec<usize>,
    pub fully_separable: bool,
    pub tolerance: f64,
    /// Sum over all modes.
    pub measure_e: MeasureResult,
    /// Two-party concurrence; only for `m = 2`.
    pub concurrence: Option<MeasureResult>,
    /// Outcome of the all-minors test, which must agree with `fully_separable`.
    pub on_segre_variety: bool,
    pub max_minor_modulus: f64,
    pub per_bipartition: Vec<CutReport>,
    /// Set when the rank test and the minor test disagree.
    pub consistency_error: Option<String>,
}

impl SeparabilityReport {
    pub fn factorable_cuts(&self) -> impl Iterator<Item = &CutReport> {
        self.per_bipartition.iter().filter(|c| c.factorable)
    }
}

/// Full verdict table: every cut, the measure, and the cross-check between
/// the singular-value and minor tests.
pub fn analyze(state: &PureStateTensor, eps: f64, cfg: &MeasureConfig) -> Result<SeparabilityReport> {
    check_eps(eps)?;
    cfg.validate()?;
    let m = state.arity();
    if m > MAX_ANALYZE_ARITY {
        return Err(Error::TooManySubsystems(m));
    }
    let measure_e = measure_multipartite(state, cfg)?;
    let concurrence = if m == 2 { Some(concurrence_bipartite(state, cfg)?) } else { None };

    let per_bipartition = all_bipartitions(m)
        .into_iter()
        .map(|partition| {
            let (factorable, second_singular_value) = bipartition_factorable(state, &partition, eps)?;
            let max_minor_modulus = max_block_minor(state, partition.block())?;
            Ok(CutReport { partition, factorable, second_singular_value, max_minor_modulus })
        })
        .collect::<Result<Vec<_>>>()?;

    let fully_separable = per_bipartition
        .iter()
        .filter(|c| c.partition.singleton().is_some())
        .all(|c| c.factorable);
    let segre = on_segre_variety(state, eps)?;
    let consistency_error = (segre.on_variety != fully_separable).then(|| {
        format!(
            "rank test says fully_separable = {fully_separable} but largest minor modulus is {:e} (eps {eps:e})",
            segre.max_modulus
        )
    });

    Ok(SeparabilityReport {
        dims: state.shape().dims().to_vec(),
        fully_separable,
        tolerance: eps,
        measure_e,
        concurrence,
        on_segre_variety: segre.on_variety,
        max_minor_modulus: segre.max_modulus,
        per_bipartition,
        consistency_error,
    })
}
