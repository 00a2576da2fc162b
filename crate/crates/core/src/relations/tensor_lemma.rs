//! `ker(f (x) f) = V (x) ker f + ker f (x) V` for surjective linear maps over
//! `F_p`, checked on explicit matrices.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::linalg::{dense_nullspace, dense_rank};
use crate::coeff::{add_mod, mul_mod};
use crate::error::{arg, Result};

/// Dimensions observed by [`kernel_tensor_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorKernelReport {
    pub dim_v: usize,
    pub dim_w: usize,
    pub dim_kernel: usize,
    /// `dim ker(f (x) f)`.
    pub dim_tensor_kernel: usize,
    /// `dim (V (x) K + K (x) V)`.
    pub dim_sum: usize,
    pub sum_in_kernel: bool,
    pub kernel_in_sum: bool,
}

impl TensorKernelReport {
    pub fn holds(&self) -> bool {
        self.dim_tensor_kernel == self.dim_sum && self.sum_in_kernel && self.kernel_in_sum
    }
}

fn kron(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ra in a {
        for rb in b {
            out.push(
                ra.iter()
                    .flat_map(|&x| rb.iter().map(move |&y| mul_mod(x, y, p)))
                    .collect(),
            );
        }
    }
    out
}

fn tensor_vec(x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
    x.iter()
        .flat_map(|&a| y.iter().map(move |&b| mul_mod(a, b, p)))
        .collect()
}

fn apply(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|r| r.iter().zip(v).fold(0, |s, (a, b)| add_mod(s, mul_mod(*a, *b, p), p)))
        .collect()
}

/// Check the identity for `f : F_p^n -> F_p^m` given by its `m x n` matrix.
pub fn kernel_tensor_check(f: &[Vec<u64>], p: u64) -> Result<TensorKernelReport> {
    let m = f.len();
    let n = f.first().map_or(0, Vec::len);
    if m == 0 || n == 0 || f.iter().any(|r| r.len() != n) {
        return arg("matrix must be nonempty and rectangular");
    }
    if dense_rank(f, p) != m {
        return arg("map is not surjective");
    }
    let k = dense_nullspace(f, n, p);
    let ff = kron(f, f, p);
    let tk = dense_nullspace(&ff, n * n, p);

    let basis: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut sum = Vec::new();
    for e in &basis {
        for kv in &k {
            sum.push(tensor_vec(e, kv, p));
            sum.push(tensor_vec(kv, e, p));
        }
    }
    let dim_sum = dense_rank(&sum, p);
    let sum_in_kernel = sum.iter().all(|v| apply(&ff, v, p).iter().all(|&x| x == 0));
    let mut both = sum.clone();
    both.extend(tk.iter().cloned());
    let kernel_in_sum = dense_rank(&both, p) == dim_sum;
    Ok(TensorKernelReport {
        dim_v: n,
        dim_w: m,
        dim_kernel: k.len(),
        dim_tensor_kernel: tk.len(),
        dim_sum,
        sum_in_kernel,
        kernel_in_sum,
    })
}

/// A random surjection `F_p^n -> F_p^m`, redrawn until it has full row rank.
pub fn random_surjection(m: usize, n: usize, p: u64, rng: &mut impl Rng) -> Vec<Vec<u64>> {
    assert!(1 <= m && m <= n, "need 1 <= m <= n");
    loop {
        let f: Vec<Vec<u64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if dense_rank(&f, p) == m {
            return f;
        }
    }
}

/// Run `trials` random instances with `dim V <= max_dim`; returns the reports
/// in order.
pub fn kernel_tensor_trials(trials: usize, max_dim: usize, p: u64, seed: u64) -> Result<Vec<TensorKernelReport>> {
    if max_dim == 0 {
        return arg("max_dim must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=max_dim);
            let m = rng.gen_range(1..=n);
            kernel_tensor_check(&random_surjection(m, n, p, &mut rng), p)
        })
        .collect()
}
