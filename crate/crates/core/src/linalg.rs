//! Dense complex Gaussian elimination with complete pivoting.
//!
//! The system is equilibrated symmetrically (`A' = SAS`, `S` diagonal with
//! `S_ii = 1/sqrt(max_j |A_ij|)`) before elimination, so the rank threshold
//! is applied to a matrix whose largest entries are of order one. Symmetric
//! scaling preserves rank, consistency and symmetry.

use crate::Complex;

/// A pivot is treated as zero when `|pivot| ≤ RANK_TOLERANCE · max |A'_ij|`.
pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Full,
    /// Consistent but rank deficient; the solution set is an affine space.
    Deficient(usize),
    /// No solution exists.
    Inconsistent(usize),
}

/// Result of reducing `[A | b]` to upper-triangular form.
#[derive(Debug, Clone)]
pub struct Elimination {
    n: usize,
    /// Reduced matrix, row-major, rows and columns permuted.
    upper: Vec<Complex>,
    rhs: Vec<Complex>,
    /// `col_perm[k]` is the original column at position `k`.
    col_perm: Vec<usize>,
    scale: Vec<f64>,
    rank: usize,
    consistent: bool,
    pivots: Vec<Complex>,
}

impl Elimination {
    /// Eliminates the `n × n` row-major system `a x = b`.
    pub fn new(n: usize, a: &[Complex], b: &[Complex]) -> Self {
        assert_eq!(a.len(), n * n, "matrix must be n × n");
        assert_eq!(b.len(), n, "rhs must have length n");

        let scale: Vec<f64> = (0..n)
            .map(|i| {
                let row_max = a[i * n..(i + 1) * n]
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                if row_max > 0.0 {
                    1.0 / row_max.sqrt()
                } else {
                    1.0
                }
            })
            .collect();
        let mut upper: Vec<Complex> = (0..n * n)
            .map(|k| a[k] * (scale[k / n] * scale[k % n]))
            .collect();
        let mut rhs: Vec<Complex> = b.iter().zip(&scale).map(|(&z, &s)| z * s).collect();

        let a_max = upper.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let b_max = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let threshold = RANK_TOLERANCE * a_max;
        let mut col_perm: Vec<usize> = (0..n).collect();
        let mut pivots = Vec::with_capacity(n);
        let mut rank = 0;

        for k in 0..n {
            let (mut p, mut q, mut best) = (k, k, -1.0);
            for i in k..n {
                for j in k..n {
                    let m = upper[i * n + j].norm();
                    if m > best {
                        best = m;
                        p = i;
                        q = j;
                    }
                }
            }
            if best <= threshold || best == 0.0 {
                break;
            }
            if p != k {
                for j in 0..n {
                    upper.swap(k * n + j, p * n + j);
                }
                rhs.swap(k, p);
            }
            if q != k {
                for i in 0..n {
                    upper.swap(i * n + k, i * n + q);
                }
                col_perm.swap(k, q);
            }
            let pivot = upper[k * n + k];
            pivots.push(pivot);
            for i in k + 1..n {
                let factor = upper[i * n + k] / pivot;
                if factor == Complex::new(0.0, 0.0) {
                    continue;
                }
                upper[i * n + k] = Complex::new(0.0, 0.0);
                for j in k + 1..n {
                    let t = upper[k * n + j];
                    upper[i * n + j] -= factor * t;
                }
                let t = rhs[k];
                rhs[i] -= factor * t;
            }
            rank = k + 1;
        }

        let rhs_threshold = RANK_TOLERANCE * b_max.max(1.0);
        let consistent = rhs[rank..].iter().all(|z| z.norm() <= rhs_threshold);

        Elimination {
            n,
            upper,
            rhs,
            col_perm,
            scale,
            rank,
            consistent,
            pivots,
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn classification(&self) -> Rank {
        if !self.consistent {
            Rank::Inconsistent(self.rank)
        } else if self.rank == self.n {
            Rank::Full
        } else {
            Rank::Deficient(self.rank)
        }
    }

    /// `log10 |det A|` of the unscaled matrix; `-∞` when rank deficient.
    pub fn log10_abs_det(&self) -> f64 {
        if self.rank < self.n {
            return f64::NEG_INFINITY;
        }
        let pivots: f64 = self.pivots.iter().map(|p| p.norm().log10()).sum();
        let scaling: f64 = self.scale.iter().map(|s| s.log10()).sum();
        pivots - 2.0 * scaling
    }

    /// Smallest over largest accepted pivot magnitude (1 for an empty system).
    pub fn pivot_ratio(&self) -> f64 {
        let mags = self.pivots.iter().map(|p| p.norm());
        let max = mags.clone().fold(0.0, f64::max);
        let min = mags.fold(f64::INFINITY, f64::min);
        if self.pivots.is_empty() {
            1.0
        } else {
            min / max
        }
    }

    /// A particular solution with every free unknown set to `free_value`,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, free_value: Complex) -> Option<Vec<Complex>> {
        if !self.consistent {
            return None;
        }
        let n = self.n;
        let mut y = vec![Complex::new(0.0, 0.0); n];
        for k in self.rank..n {
            y[k] = free_value / self.scale[self.col_perm[k]];
        }
        for k in (0..self.rank).rev() {
            let mut acc = self.rhs[k];
            for j in k + 1..n {
                acc -= self.upper[k * n + j] * y[j];
            }
            y[k] = acc / self.upper[k * n + k];
        }
        let mut x = vec![Complex::new(0.0, 0.0); n];
        for k in 0..n {
            let col = self.col_perm[k];
            x[col] = y[k] * self.scale[col];
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn real(v: &[f64]) -> Vec<Complex> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    fn residual(n: usize, a: &[Complex], x: &[Complex], b: &[Complex]) -> f64 {
        (0..n)
            .map(|i| {
                let ax: Complex = (0..n).map(|j| a[i * n + j] * x[j]).sum();
                (ax - b[i]).norm()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn solves_full_rank_system() {
        let a = real(&[3.0, -1.0, 0.0, -1.0, 3.0, 0.0, 0.0, 0.0, 2.0]);
        let b = real(&[1.0, 1.0, 1.0]);
        let e = Elimination::new(3, &a, &b);
        assert_eq!(e.classification(), Rank::Full);
        let x = e.solve(c(0.0, 0.0)).unwrap();
        for xi in x {
            assert!((xi - c(0.5, 0.0)).norm() < 1e-15);
        }
        assert!((e.log10_abs_det() - 16f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn detects_deficient_and_inconsistent() {
        let a = real(&[-1.0, -1.0, 0.0, -1.0, -1.0, 0.0, 0.0, 0.0, -2.0]);
        let e = Elimination::new(3, &a, &real(&[-1.0, -1.0, -1.0]));
        assert_eq!(e.classification(), Rank::Deficient(2));
        let x0 = e.solve(c(0.0, 0.0)).unwrap();
        let x1 = e.solve(c(1.0, 0.0)).unwrap();
        assert!(residual(3, &a, &x0, &real(&[-1.0, -1.0, -1.0])) < 1e-14);
        assert!(residual(3, &a, &x1, &real(&[-1.0, -1.0, -1.0])) < 1e-14);
        assert!((x0[0] - x1[0]).norm() > 0.5);
        assert_eq!(e.log10_abs_det(), f64::NEG_INFINITY);

        let e = Elimination::new(3, &a, &real(&[-1.0, 1.0, -1.0]));
        assert_eq!(e.classification(), Rank::Inconsistent(2));
        assert!(e.solve(c(0.0, 0.0)).is_none());
    }

    #[test]
    fn zero_row_with_nonzero_rhs_is_inconsistent() {
        let a = vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let b = vec![c(0.0, 1.0), c(0.0, -1.0), c(0.0, -1.0)];
        assert_eq!(Elimination::new(3, &a, &b).classification(), Rank::Inconsistent(1));
    }

    #[test]
    fn empty_system() {
        let e = Elimination::new(0, &[], &[]);
        assert_eq!(e.classification(), Rank::Full);
        assert_eq!(e.solve(c(0.0, 0.0)).unwrap(), Vec::<Complex>::new());
        assert_eq!(e.log10_abs_det(), 0.0);
    }

    #[test]
    fn equilibration_handles_wide_dynamic_range() {
        // Path of admittances 2^1..2^40: well-posed, but entries span 12 decades.
        let n = 39;
        let w: Vec<f64> = (1..=40).map(|k| 2f64.powi(k)).collect();
        let mut a = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            a[i * n + i] = c(w[i] + w[i + 1], 0.0);
            if i + 1 < n {
                a[i * n + i + 1] = c(-w[i + 1], 0.0);
                a[(i + 1) * n + i] = c(-w[i + 1], 0.0);
            }
        }
        let mut b = vec![c(0.0, 0.0); n];
        b[0] = c(w[0], 0.0);
        let e = Elimination::new(n, &a, &b);
        assert_eq!(e.classification(), Rank::Full);
        let x = e.solve(c(0.0, 0.0)).unwrap();
        let rel = residual(n, &a, &x, &b) / w[n];
        assert!(rel < 1e-13, "relative residual {rel}");
    }

    fn matrix(n: usize) -> impl Strategy<Value = Vec<Complex>> {
        proptest::collection::vec((-5.0..5.0f64, -5.0..5.0f64), n * n)
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn random_systems_have_small_residual((a, b) in (1usize..7).prop_flat_map(|n| {
            (matrix(n), proptest::collection::vec((-5.0..5.0f64, -5.0..5.0f64), n))
        })) {
            let n = b.len();
            let b: Vec<Complex> = b.into_iter().map(|(x, y)| c(x, y)).collect();
            let e = Elimination::new(n, &a, &b);
            if let Some(x) = e.solve(c(0.0, 0.0)) {
                let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max)
                    * x.iter().map(|z| z.norm()).fold(1.0, f64::max);
                prop_assert!(residual(n, &a, &x, &b) <= 1e-9 * scale);
            }
        }

        #[test]
        fn rank_one_products_are_deficient(u in proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 4),
                                          v in proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 4)) {
            let u: Vec<Complex> = u.into_iter().map(|(a, b)| c(a, b)).collect();
            let v: Vec<Complex> = v.into_iter().map(|(a, b)| c(a, b)).collect();
            prop_assume!(u.iter().all(|z| z.norm() > 0.1) && v.iter().all(|z| z.norm() > 0.1));
            let a: Vec<Complex> = (0..16).map(|k| u[k / 4] * v[k % 4]).collect();
            // b in the column space keeps the system consistent.
            let b: Vec<Complex> = u.iter().map(|&x| x * c(2.0, -1.0)).collect();
            let e = Elimination::new(4, &a, &b);
            prop_assert_eq!(e.classification(), Rank::Deficient(1));
            let x0 = e.solve(c(0.0, 0.0)).unwrap();
            let x1 = e.solve(c(1.0, 0.0)).unwrap();
            prop_assert!(residual(4, &a, &x0, &b) < 1e-10);
            prop_assert!(residual(4, &a, &x1, &b) < 1e-10);
        }
    }
}
