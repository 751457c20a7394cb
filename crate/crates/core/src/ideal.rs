//! Symbolic generators of the separability ideals.
//!
//! Each generator is a binomial `a_u a_v - a_x a_y` in the amplitude
//! variables, named by 1-based multi-indices. The ideal of the cut
//! `{j} | rest` is generated by the 2x2 minors of the symbolic mode-`j`
//! unfolding; the Segre ideal is the union of those generator sets over all
//! modes.
//!
//! Canonical form: factors sorted within each term, the lexicographically
//! smaller term carries the plus sign, generators sorted. Two binomials that
//! differ only by overall sign share a canonical form.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::separability::PartitionSpec;
use crate::tensor::{symbolic_matricize, unfolding_index, PureStateTensor, Shape};
use crate::C64;

pub type MultiIndex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymbolicGenerator {
    pub pos: [MultiIndex; 2],
    pub neg: [MultiIndex; 2],
}

impl SymbolicGenerator {
    /// The binomial `a[p0] a[p1] - a[n0] a[n1]` in canonical form, or `None`
    /// if it is identically zero.
    pub fn new(p0: MultiIndex, p1: MultiIndex, n0: MultiIndex, n1: MultiIndex) -> Option<Self> {
        let sort2 = |a: MultiIndex, b: MultiIndex| if a <= b { [a, b] } else { [b, a] };
        let pos = sort2(p0, p1);
        let neg = sort2(n0, n1);
        match pos.cmp(&neg) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(Self { pos, neg }),
            std::cmp::Ordering::Greater => Some(Self { pos: neg, neg: pos }),
        }
    }

    /// Stable text key, e.g. `1,1,1*2,1,2-1,1,2*2,1,1`.
    pub fn canonical_key(&self) -> String {
        let v = |i: &MultiIndex| i.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        format!("{}*{}-{}*{}", v(&self.pos[0]), v(&self.pos[1]), v(&self.neg[0]), v(&self.neg[1]))
    }

    /// Value of the binomial at the state's amplitudes.
    pub fn evaluate(&self, state: &PureStateTensor) -> C64 {
        state.amp(&self.pos[0]) * state.amp(&self.pos[1]) - state.amp(&self.neg[0]) * state.amp(&self.neg[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealLabel {
    Mode(usize),
    Segre,
    Bipartition(PartitionSpec),
}

impl std::fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdealLabel::Mode(j) => write!(f, "mode {j}"),
            IdealLabel::Segre => f.write_str("segre"),
            IdealLabel::Bipartition(p) => write!(f, "bipartition {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGenerators {
    pub label: IdealLabel,
    pub shape: Shape,
    pub gens: Vec<SymbolicGenerator>,
}

/// Canonical generators of all 2x2 minors of the symbolic unfolding with
/// `rows` indexing rows, sorted. Minors of one unfolding are pairwise
/// distinct, so no deduplication is needed here.
fn unfolding_generators(shape: &Shape, rows: &[usize]) -> Result<Vec<SymbolicGenerator>> {
    let (r, c, nr, nc) = symbolic_matricize(shape, rows)?;
    let at = |i: usize, j: usize| unfolding_index(shape, &r, &c, i, j);
    let mut gens = Vec::with_capacity(nr * (nr - 1) / 2 * nc * (nc.saturating_sub(1)) / 2);
    for k in 0..nr {
        for l in (k + 1)..nr {
            for c1 in 0..nc {
                for c2 in (c1 + 1)..nc {
                    let g = SymbolicGenerator::new(at(k, c1), at(l, c2), at(k, c2), at(l, c1))
                        .expect("distinct rows and columns give a nonzero minor");
                    gens.push(g);
                }
            }
        }
    }
    gens.sort();
    Ok(gens)
}

fn check_mode(shape: &Shape, j: usize) -> Result<()> {
    shape.check_subsystem(j)?;
    if shape.dim(j) < 2 || shape.total_dim() / shape.dim(j) < 2 {
        return Err(Error::DegenerateMode { mode: j });
    }
    Ok(())
}

/// Generators of the ideal of the cut `{j} | rest`.
pub fn mode_ideal(shape: &Shape, j: usize) -> Result<IdealGenerators> {
    check_mode(shape, j)?;
    Ok(IdealGenerators { label: IdealLabel::Mode(j), shape: shape.clone(), gens: unfolding_generators(shape, &[j])? })
}

/// Union of every mode ideal, deduplicated.
pub fn segre_ideal(shape: &Shape) -> Result<IdealGenerators> {
    let mut all = BTreeSet::new();
    for j in 1..=shape.arity() {
        check_mode(shape, j)?;
        all.extend(unfolding_generators(shape, &[j])?);
    }
    Ok(IdealGenerators { label: IdealLabel::Segre, shape: shape.clone(), gens: all.into_iter().collect() })
}

/// Generators of the ideal of an arbitrary cut: the 2x2 minors of the
/// unfolding across it.
pub fn bipartition_ideal(shape: &Shape, part: &PartitionSpec) -> Result<IdealGenerators> {
    if part.arity() != shape.arity() {
        return Err(Error::BadPartition(format!("partition of {} subsystems for shape of {}", part.arity(), shape.arity())));
    }
    Ok(IdealGenerators {
        label: IdealLabel::Bipartition(part.clone()),
        shape: shape.clone(),
        gens: unfolding_generators(shape, part.block())?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    PlainText,
    LatexLike,
    MachineJson,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" | "text" => Ok(Self::PlainText),
            "latex" => Ok(Self::LatexLike),
            "json" => Ok(Self::MachineJson),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}` (plain, latex, json)"))),
        }
    }
}

#[derive(Serialize)]
struct JsonIdeal<'a> {
    label: String,
    dims: &'a [usize],
    count: usize,
    generators: &'a [SymbolicGenerator],
}

fn join(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Renders one generator per line (plain and LaTeX-like), or a JSON document.
pub fn render(ideal: &IdealGenerators, format: RenderFormat) -> String {
    let mut out = String::new();
    match format {
        RenderFormat::PlainText => {
            for g in &ideal.gens {
                let _ = writeln!(
                    out,
                    "a_{{{}}}*a_{{{}}} - a_{{{}}}*a_{{{}}}",
                    join(&g.pos[0]),
                    join(&g.pos[1]),
                    join(&g.neg[0]),
                    join(&g.neg[1])
                );
            }
        }
        RenderFormat::LatexLike => {
            for g in &ideal.gens {
                let _ = writeln!(
                    out,
                    "\\alpha_{{{}}}\\alpha_{{{}}} - \\alpha_{{{}}}\\alpha_{{{}}}",
                    join(&g.pos[0]),
                    join(&g.pos[1]),
                    join(&g.neg[0]),
                    join(&g.neg[1])
                );
            }
        }
        RenderFormat::MachineJson => {
            let doc = JsonIdeal {
                label: ideal.label.to_string(),
                dims: ideal.shape.dims(),
                count: ideal.gens.len(),
                generators: &ideal.gens,
            };
            out = serde_json::to_string_pretty(&doc).expect("ideal serializes");
            out.push('\n');
        }
    }
    out
}
