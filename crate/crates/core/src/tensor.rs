//! The pure-state coefficient tensor, its unfoldings and state constructors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

/// Largest supported number of amplitudes.
pub const MAX_TOTAL_DIM: usize = 1 << 24;

/// Tolerance on `| ||amps|| - 1 |` under [`NormPolicy::RequireNormalized`].
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Local dimensions `(N_1, ..., N_m)` of the subsystems.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Shape {
    dims: Vec<usize>,
}

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("no subsystems".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidShape(format!("subsystem {} has dimension 0", pos + 1)));
        }
        let total: u128 = dims.iter().map(|&d| d as u128).product();
        if total > MAX_TOTAL_DIM as u128 {
            return Err(Error::TooLarge(total));
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems `m`.
    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Dimension of 1-based subsystem `j`.
    pub fn dim(&self, j: usize) -> usize {
        self.dims[j - 1]
    }

    pub(crate) fn check_subsystem(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.arity() {
            Err(Error::SubsystemOutOfRange { index: j, arity: self.arity() })
        } else {
            Ok(())
        }
    }

    /// 0-based multi-index of a flat position.
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for (slot, &d) in idx.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        idx
    }

    /// Flat position of a 0-based multi-index.
    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum NormPolicy {
    #[default]
    RequireNormalized,
    AutoNormalize,
}

/// Complex amplitudes `alpha_{i_1,...,i_m}` of a pure state, row-major with
/// the last subsystem fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct PureStateTensor {
    shape: Shape,
    amps: Vec<C64>,
    policy: NormPolicy,
}

impl PureStateTensor {
    pub fn new(shape: Shape, amps: Vec<C64>, policy: NormPolicy) -> Result<Self> {
        make_state(shape, amps, policy)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn policy(&self) -> NormPolicy {
        self.policy
    }

    pub fn arity(&self) -> usize {
        self.shape.arity()
    }

    /// Amplitude at a 1-based multi-index.
    pub fn amp(&self, idx1: &[usize]) -> C64 {
        let zero_based: Vec<usize> = idx1.iter().map(|&i| i - 1).collect();
        self.amps[self.shape.ravel(&zero_based)]
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    /// Multiplies every amplitude by `lambda` without renormalizing.
    pub fn scaled(&self, lambda: C64) -> Self {
        Self {
            shape: self.shape.clone(),
            amps: self.amps.iter().map(|a| a * lambda).collect(),
            policy: self.policy,
        }
    }

    /// Reorders subsystems: subsystem `i` of the result is subsystem
    /// `perm[i - 1]` of `self` (1-based).
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<Self> {
        let m = self.arity();
        let mut seen = vec![false; m];
        if perm.len() != m {
            return Err(Error::BadPartition(format!("permutation of length {} for {m} subsystems", perm.len())));
        }
        for &p in perm {
            self.shape.check_subsystem(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::BadPartition(format!("subsystem {p} repeated in permutation")));
            }
        }
        let new_shape = Shape::new(perm.iter().map(|&p| self.shape.dim(p)).collect())?;
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        let mut old = vec![0; m];
        for (flat, slot) in amps.iter_mut().enumerate() {
            let new_idx = new_shape.unravel(flat);
            for (i, &p) in perm.iter().enumerate() {
                old[p - 1] = new_idx[i];
            }
            *slot = self.amps[self.shape.ravel(&old)];
        }
        Ok(Self { shape: new_shape, amps, policy: self.policy })
    }

    /// Applies the row-major `N_j x N_j` matrix `op` to subsystem `j`.
    pub fn apply_local(&self, j: usize, op: &[C64]) -> Result<Self> {
        self.shape.check_subsystem(j)?;
        let n = self.shape.dim(j);
        if op.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: op.len() });
        }
        let inner: usize = self.shape.dims()[j..].iter().product();
        let outer: usize = self.shape.dims()[..j - 1].iter().product();
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for o in 0..outer {
            for r in 0..n {
                for k in 0..n {
                    let u = op[r * n + k];
                    for i in 0..inner {
                        amps[(o * n + r) * inner + i] += u * self.amps[(o * n + k) * inner + i];
                    }
                }
            }
        }
        Ok(Self { shape: self.shape.clone(), amps, policy: self.policy })
    }
}

pub(crate) fn l2_norm(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Builds a state from raw amplitudes under the given normalization policy.
pub fn make_state(shape: Shape, amps: Vec<C64>, policy: NormPolicy) -> Result<PureStateTensor> {
    let expected = shape.total_dim();
    if amps.len() != expected {
        return Err(Error::LengthMismatch { expected, got: amps.len() });
    }
    if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::InvalidParameter("non-finite amplitude".into()));
    }
    let norm = l2_norm(&amps);
    if norm == 0.0 {
        return Err(Error::ZeroState);
    }
    let amps = match policy {
        NormPolicy::RequireNormalized => {
            if (norm - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::NotNormalized { norm });
            }
            amps
        }
        NormPolicy::AutoNormalize => amps.into_iter().map(|a| a / norm).collect(),
    };
    Ok(PureStateTensor { shape, amps, policy })
}

/// Fixture states.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedState {
    /// 1: Phi+, 2: Phi-, 3: Psi+, 4: Psi-.
    Bell(u8),
    Ghz(usize),
    W(usize),
    /// Outer product of per-subsystem unit vectors.
    Product(Vec<Vec<C64>>),
}

pub fn named_state(name: &NamedState) -> Result<PureStateTensor> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| C64::new(x, 0.0);
    match name {
        NamedState::Bell(k) => {
            let amps = match k {
                1 => [h, 0.0, 0.0, h],
                2 => [h, 0.0, 0.0, -h],
                3 => [0.0, h, h, 0.0],
                4 => [0.0, h, -h, 0.0],
                _ => return Err(Error::BadArity(format!("Bell index {k} not in 1..=4"))),
            };
            make_state(Shape::new(vec![2, 2])?, amps.map(re).to_vec(), NormPolicy::RequireNormalized)
        }
        NamedState::Ghz(m) => {
            if *m < 2 {
                return Err(Error::BadArity(format!("GHZ needs at least 2 subsystems, got {m}")));
            }
            let shape = Shape::new(vec![2; *m])?;
            let mut amps = vec![re(0.0); shape.total_dim()];
            amps[0] = re(h);
            *amps.last_mut().unwrap() = re(h);
            make_state(shape, amps, NormPolicy::RequireNormalized)
        }
        NamedState::W(m) => {
            if *m < 2 {
                return Err(Error::BadArity(format!("W needs at least 2 subsystems, got {m}")));
            }
            let shape = Shape::new(vec![2; *m])?;
            let mut amps = vec![re(0.0); shape.total_dim()];
            let w = 1.0 / (*m as f64).sqrt();
            for bit in 0..*m {
                amps[1 << bit] = re(w);
            }
            make_state(shape, amps, NormPolicy::RequireNormalized)
        }
        NamedState::Product(factors) => {
            if factors.is_empty() {
                return Err(Error::BadArity("product of zero factors".into()));
            }
            for (i, f) in factors.iter().enumerate() {
                let norm = l2_norm(f);
                if (norm - 1.0).abs() > NORM_TOLERANCE {
                    return Err(Error::UnnormalizedFactor { index: i + 1, norm });
                }
            }
            let shape = Shape::new(factors.iter().map(Vec::len).collect())?;
            let amps = outer_product(factors);
            make_state(shape, amps, NormPolicy::RequireNormalized)
        }
    }
}

fn outer_product(factors: &[Vec<C64>]) -> Vec<C64> {
    factors.iter().fold(vec![C64::new(1.0, 0.0)], |acc, f| {
        acc.iter().flat_map(|a| f.iter().map(move |b| a * b)).collect()
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RandomKind {
    Haar,
    /// Independent Haar states on each block of 1-based subsystems.
    ProductHaar(Vec<Vec<usize>>),
}

fn gaussian_unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = l2_norm(&v);
    v.into_iter().map(|a| a / norm).collect()
}

/// Samples a random state, deterministically from `seed`.
///
/// Blocks are sorted internally, so a single block covering every subsystem
/// reproduces [`RandomKind::Haar`] for the same seed.
pub fn random_state(shape: &Shape, kind: &RandomKind, seed: u64) -> Result<PureStateTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = match kind {
        RandomKind::Haar => gaussian_unit_vector(shape.total_dim(), &mut rng),
        RandomKind::ProductHaar(blocks) => {
            let blocks = validate_blocks(shape, blocks)?;
            let parts: Vec<(Shape, Vec<C64>)> = blocks
                .iter()
                .map(|b| {
                    let sub = Shape::new(b.iter().map(|&j| shape.dim(j)).collect())?;
                    let v = gaussian_unit_vector(sub.total_dim(), &mut rng);
                    Ok((sub, v))
                })
                .collect::<Result<_>>()?;
            let mut out = Vec::with_capacity(shape.total_dim());
            let mut local = Vec::new();
            for flat in 0..shape.total_dim() {
                let idx = shape.unravel(flat);
                let mut a = C64::new(1.0, 0.0);
                for (block, (sub, v)) in blocks.iter().zip(&parts) {
                    local.clear();
                    local.extend(block.iter().map(|&j| idx[j - 1]));
                    a *= v[sub.ravel(&local)];
                }
                out.push(a);
            }
            out
        }
    };
    make_state(shape.clone(), amps, NormPolicy::AutoNormalize)
}

fn validate_blocks(shape: &Shape, blocks: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let m = shape.arity();
    let mut seen = vec![false; m];
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.is_empty() {
            return Err(Error::BadPartition("empty block".into()));
        }
        let mut sorted = b.clone();
        sorted.sort_unstable();
        for &j in &sorted {
            if j == 0 || j > m {
                return Err(Error::BadPartition(format!("subsystem {j} out of range 1..={m}")));
            }
            if std::mem::replace(&mut seen[j - 1], true) {
                return Err(Error::BadPartition(format!("subsystem {j} appears twice")));
            }
        }
        out.push(sorted);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::BadPartition(format!("subsystem {} not covered", missing + 1)));
    }
    Ok(out)
}

/// The tensor reshaped into a matrix: row index over `row_subsystems`,
/// column index over the complementary subsystems, both row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matricization {
    shape: Shape,
    row_subsystems: Vec<usize>,
    col_subsystems: Vec<usize>,
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matricization {
    pub fn row_subsystems(&self) -> &[usize] {
        &self.row_subsystems
    }

    pub fn col_subsystems(&self) -> &[usize] {
        &self.col_subsystems
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Entry at 0-based `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn frobenius_norm(&self) -> f64 {
        l2_norm(&self.data)
    }

    /// Writes the entries back into tensor order.
    pub fn reassemble(&self) -> Vec<C64> {
        let mut amps = vec![C64::new(0.0, 0.0); self.data.len()];
        let mut idx = vec![0; self.shape.arity()];
        for r in 0..self.rows {
            scatter(&self.shape, &self.row_subsystems, r, &mut idx);
            for c in 0..self.cols {
                scatter(&self.shape, &self.col_subsystems, c, &mut idx);
                amps[self.shape.ravel(&idx)] = self.data[r * self.cols + c];
            }
        }
        amps
    }

    /// 1-based tensor multi-index of the entry at 0-based `(r, c)`.
    pub fn tensor_index(&self, r: usize, c: usize) -> Vec<usize> {
        let mut idx = vec![0; self.shape.arity()];
        scatter(&self.shape, &self.row_subsystems, r, &mut idx);
        scatter(&self.shape, &self.col_subsystems, c, &mut idx);
        idx.iter().map(|i| i + 1).collect()
    }
}

/// Writes the digits of `linear` over `subsystems` into `idx` (0-based).
fn scatter(shape: &Shape, subsystems: &[usize], mut linear: usize, idx: &mut [usize]) {
    for &j in subsystems.iter().rev() {
        let d = shape.dim(j);
        idx[j - 1] = linear % d;
        linear /= d;
    }
}

/// Sorts and validates a proper nonempty subset of `1..=m`, returning it with
/// its complement.
pub(crate) fn split_subsystems(shape: &Shape, rows: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let m = shape.arity();
    let mut r = rows.to_vec();
    r.sort_unstable();
    for w in r.windows(2) {
        if w[0] == w[1] {
            return Err(Error::BadPartition(format!("subsystem {} repeated", w[0])));
        }
    }
    for &j in &r {
        shape.check_subsystem(j)?;
    }
    if r.is_empty() || r.len() == m {
        return Err(Error::EmptyPartition);
    }
    let cols = (1..=m).filter(|j| !r.contains(j)).collect();
    Ok((r, cols))
}

/// Unfolds the tensor with the given (1-based) subsystems indexing rows.
pub fn matricize(state: &PureStateTensor, rows: &[usize]) -> Result<Matricization> {
    symbolic_matricize(state.shape(), rows).map(|(row_subsystems, col_subsystems, nr, nc)| {
        let shape = state.shape();
        let mut data = vec![C64::new(0.0, 0.0); shape.total_dim()];
        let row_dims: Vec<usize> = row_subsystems.iter().map(|&j| shape.dim(j)).collect();
        let col_dims: Vec<usize> = col_subsystems.iter().map(|&j| shape.dim(j)).collect();
        for (flat, &a) in state.amps().iter().enumerate() {
            let idx = shape.unravel(flat);
            let r = row_subsystems.iter().zip(&row_dims).fold(0, |acc, (&j, &d)| acc * d + idx[j - 1]);
            let c = col_subsystems.iter().zip(&col_dims).fold(0, |acc, (&j, &d)| acc * d + idx[j - 1]);
            data[r * nc + c] = a;
        }
        Matricization {
            shape: shape.clone(),
            row_subsystems,
            col_subsystems,
            rows: nr,
            cols: nc,
            data,
        }
    })
}

/// Row/column subsystem split and matrix size of an unfolding, without data.
pub(crate) fn symbolic_matricize(shape: &Shape, rows: &[usize]) -> Result<(Vec<usize>, Vec<usize>, usize, usize)> {
    let (r, c) = split_subsystems(shape, rows)?;
    let nr = r.iter().map(|&j| shape.dim(j)).product();
    let nc = c.iter().map(|&j| shape.dim(j)).product();
    Ok((r, c, nr, nc))
}

/// 1-based tensor multi-index for 0-based unfolding coordinates, shape only.
pub(crate) fn unfolding_index(shape: &Shape, rows: &[usize], cols: &[usize], r: usize, c: usize) -> Vec<usize> {
    let mut idx = vec![0; shape.arity()];
    scatter(shape, rows, r, &mut idx);
    scatter(shape, cols, c, &mut idx);
    idx.iter().map(|i| i + 1).collect()
}

/// Purity `Tr(rho_j^2)` of the reduced state on subsystem `j`, with
/// `rho_j = M M^dagger` for the mode-`j` unfolding `M`.
pub fn mode_purity(state: &PureStateTensor, j: usize) -> Result<f64> {
    let m = matricize(state, &[j])?;
    let (n, k) = (m.rows(), m.cols());
    let mut acc = 0.0;
    for a in 0..n {
        for b in 0..n {
            let rho_ab: C64 = (0..k).map(|c| m.get(a, c) * m.get(b, c).conj()).sum();
            acc += rho_ab.norm_sqr();
        }
    }
    Ok(acc)
}
