//! Reference implementations that share no code path with the library.

#![allow(dead_code)]

/// Box of `x` found by scanning every box `[s_i, s_{i+1})`, last box closed.
pub fn naive_box(m: usize, x: f64) -> Option<usize> {
    let s = |i: usize| -1.0 + 2.0 * i as f64 / m as f64;
    (0..m).find(|&i| if i == m - 1 { x >= s(i) && x <= 1.0 } else { x >= s(i) && x < s(i + 1) })
}

pub fn naive_counts_1d(m: usize, xs: &[f64]) -> Vec<u64> {
    let mut counts = vec![0; m];
    for &x in xs {
        counts[naive_box(m, x).expect("point outside [-1, 1]")] += 1;
    }
    counts
}

pub fn naive_counts_2d(m: usize, pts: &[(f64, f64)]) -> Vec<u64> {
    let mut counts = vec![0; m * m];
    for &(x, y) in pts {
        let i = naive_box(m, x).unwrap();
        let j = naive_box(m, y).unwrap();
        counts[i * m + j] += 1;
    }
    counts
}

pub fn naive_density(m: usize, counts: &[u64]) -> Vec<f64> {
    let n: u64 = counts.iter().sum();
    counts.iter().map(|&c| 0.5 * (m as f64 * c as f64 / n as f64)).collect()
}

pub fn naive_correlation(m: usize, counts: &[u64]) -> Vec<f64> {
    let n: u64 = counts.iter().sum();
    counts.iter().map(|&c| 0.25 * ((m * m) as f64 * c as f64 / n as f64)).collect()
}

/// `(1/K) Σ |scale·v − 1|` and `(1/K) Σ (scale·v − 1)²` over `K` values.
pub fn naive_norms(values: &[f64], scale: f64) -> (f64, f64) {
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    for &v in values {
        let d = scale * v - 1.0;
        l1 += d.abs();
        l2 += d * d;
    }
    (l1 / values.len() as f64, l2 / values.len() as f64)
}

/// Mean of `|c − λ|/λ` over Poisson-distributed box counts, the large-λ
/// limit being `sqrt(2/π) · sqrt(boxes / n)`.
pub fn poisson_l1(boxes: f64, n: f64) -> f64 {
    (2.0 / std::f64::consts::PI).sqrt() * (boxes / n).sqrt()
}

/// Plain scalar tent iteration `x ← 1 − 2|x|`.
pub fn scalar_tent_orbit(x0: f64, steps: usize) -> Vec<f64> {
    let mut x = x0;
    (0..steps)
        .map(|_| {
            x = 1.0 - 2.0 * x.abs();
            x
        })
        .collect()
}
