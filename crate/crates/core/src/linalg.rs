//! Small dense complex kernels: one-sided Jacobi singular values, compensated
//! summation and Haar-random unitaries.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::C64;

const JACOBI_MAX_SWEEPS: usize = 80;

/// Compensated (Kahan) accumulator for sums of nonnegative reals.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl std::iter::Sum<f64> for KahanSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        iter.for_each(|x| acc.add(x));
        acc
    }
}

fn inner(p: &[C64], q: &[C64]) -> C64 {
    p.iter().zip(q).map(|(a, b)| a.conj() * b).sum()
}

fn norm_sqr(p: &[C64]) -> f64 {
    p.iter().map(|a| a.norm_sqr()).sum()
}

/// Singular values of a dense row-major `rows x cols` complex matrix, in
/// descending order. There are `min(rows, cols)` of them.
///
/// One-sided (Hestenes) Jacobi: the vectors along the shorter side are
/// rotated pairwise until mutually orthogonal, and their norms are the
/// singular values. Small singular values come out with absolute error of a
/// few ulps of the largest one, which the rank tests rely on.
pub fn singular_values(data: &[C64], rows: usize, cols: usize) -> Vec<f64> {
    assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let mut vecs: Vec<Vec<C64>> = if rows <= cols {
        data.chunks(cols).map(<[C64]>::to_vec).collect()
    } else {
        (0..cols)
            .map(|c| (0..rows).map(|r| data[r * cols + c]).collect())
            .collect()
    };
    let n = vecs.len();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let a = norm_sqr(&vecs[p]);
                let b = norm_sqr(&vecs[q]);
                if a == 0.0 || b == 0.0 {
                    continue;
                }
                let g = inner(&vecs[p], &vecs[q]);
                let gabs = g.norm();
                if gabs <= f64::EPSILON * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) / (2.0 * gabs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // q~ = e^{-i arg g} q makes <p, q~> real and positive.
                let phase = (g / gabs).conj();
                let (head, tail) = vecs.split_at_mut(q);
                let vp = &mut head[p];
                let vq = &mut tail[0];
                for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
                    let yt = phase * *y;
                    let nx = *x * c - yt * s;
                    let ny = *x * s + yt * c;
                    *x = nx;
                    *y = ny;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = vecs.iter().map(|v| norm_sqr(v).sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Haar-distributed `n x n` unitary, row-major. Gram-Schmidt on complex
/// Gaussian columns (QR with positive diagonal R).
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for k in 0..n {
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for j in 0..k {
                let (done, rest) = cols.split_at_mut(k);
                let proj = inner(&done[j], &rest[0]);
                for (x, e) in rest[0].iter_mut().zip(&done[j]) {
                    *x -= proj * e;
                }
            }
        }
        let nrm = norm_sqr(&cols[k]).sqrt();
        cols[k].iter_mut().for_each(|x| *x /= nrm);
    }
    let mut u = vec![C64::new(0.0, 0.0); n * n];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            u[r * n + c] = *x;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn diagonal_matrix() {
        let m = vec![c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -4.0)];
        let sv = singular_values(&m, 2, 2);
        assert!((sv[0] - 4.0).abs() < 1e-14);
        assert!((sv[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_has_tiny_second_value() {
        let u = [c(0.6, 0.1), c(-0.3, 0.7)];
        let v = [c(0.2, -0.5), c(0.1, 0.1), c(0.9, 0.0), c(-0.4, 0.3)];
        let m: Vec<C64> = u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect();
        let sv = singular_values(&m, 2, 4);
        assert_eq!(sv.len(), 2);
        assert!(sv[1] < 1e-15, "sigma_2 = {}", sv[1]);
        // tall orientation takes the column path
        let mt: Vec<C64> = (0..8).map(|i| m[(i % 2) * 4 + i / 2]).collect();
        let svt = singular_values(&mt, 4, 2);
        assert!((svt[0] - sv[0]).abs() < 1e-14 && svt[1] < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let sv = singular_values(&[C64::new(0.0, 0.0); 6], 2, 3);
        assert_eq!(sv, vec![0.0, 0.0]);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..6 {
            let u = haar_unitary(n, &mut rng);
            for i in 0..n {
                for j in 0..n {
                    let d: C64 = (0..n).map(|k| u[k * n + i].conj() * u[k * n + j]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((d - want).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn kahan_matches_naive_on_benign_input() {
        let xs = [0.25, 0.5, 0.125, 1.0];
        let k: KahanSum = xs.iter().copied().sum();
        assert_eq!(k.value(), 1.875);
    }
}
