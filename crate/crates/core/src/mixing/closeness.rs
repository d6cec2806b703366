//! Two-sample l1 closeness testing.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

/// Multiplier on `max(n^{2/3} eps^{-4/3}, n^{1/2} eps^{-2})` giving the
/// expected number of samples per side in one base test.
pub const BUDGET_CONSTANT: f64 = 16.0;
/// A base test rejects when `Z > sqrt(THRESHOLD_CONSTANT * min(n, m))`.
pub const THRESHOLD_CONSTANT: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosenessVerdict {
    pub verdict: Verdict,
    /// Samples drawn from both distributions over all repeats.
    pub samples_used: u64,
    /// Expected sample count: `2 * repeats * per_side_budget`.
    pub sample_budget: u64,
    /// Median of the per-repeat statistics.
    pub statistic_value: f64,
    pub threshold: f64,
    pub repeats: usize,
    pub rejections: usize,
}

impl ClosenessVerdict {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }
}

/// Expected samples per side in one base test.
pub fn per_side_budget(n: usize, epsilon: f64) -> u64 {
    let nf = n as f64;
    let a = nf.powf(2.0 / 3.0) * epsilon.powf(-4.0 / 3.0);
    let b = nf.sqrt() * epsilon.powi(-2);
    (BUDGET_CONSTANT * a.max(b)).ceil() as u64
}

/// Odd number of base tests whose majority errs with probability at most
/// `delta`, assuming each errs with probability at most 1/3 (Hoeffding:
/// `exp(-k / 18) <= delta`).
pub fn repeats_for(delta: f64) -> usize {
    let k = (18.0 * (1.0 / delta).ln()).ceil().max(1.0) as usize;
    k | 1
}

/// Tests `p = q` against `||p - q||_1 >= epsilon` for distributions on
/// `0..n` given as samplers.
///
/// Each base test draws `Poisson(m)` samples from each side, forms the
/// counts `X_i`, `Y_i` and the statistic
/// `Z = sum_i ((X_i - Y_i)^2 - X_i - Y_i) / (X_i + Y_i)`, which has mean
/// zero when `p = q`. The verdict is the majority over [`repeats_for`]
/// base tests. For `epsilon > 2` the far case is empty and the test
/// accepts without sampling.
pub fn l1_closeness_test<R, P, Q>(
    mut sample_p: P,
    mut sample_q: Q,
    n: usize,
    epsilon: f64,
    delta: f64,
    rng: &mut R,
) -> ClosenessVerdict
where
    R: Rng + ?Sized,
    P: FnMut(&mut R) -> usize,
    Q: FnMut(&mut R) -> usize,
{
    assert!(epsilon > 0.0 && delta > 0.0 && delta < 1.0 && n > 0);
    let m = per_side_budget(n, epsilon);
    let threshold = (THRESHOLD_CONSTANT * n.min(m as usize) as f64).sqrt();
    if epsilon > 2.0 {
        return ClosenessVerdict {
            verdict: Verdict::Accept,
            samples_used: 0,
            sample_budget: 0,
            statistic_value: 0.0,
            threshold,
            repeats: 0,
            rejections: 0,
        };
    }
    let repeats = repeats_for(delta);
    let poisson = Poisson::new(m as f64).expect("positive mean");
    let mut stats = Vec::with_capacity(repeats);
    let mut samples_used = 0u64;
    let mut xs: Vec<u32> = Vec::new();
    let mut ys: Vec<u32> = Vec::new();
    for _ in 0..repeats {
        let mp = poisson.sample(rng) as u64;
        let mq = poisson.sample(rng) as u64;
        xs.clear();
        ys.clear();
        xs.extend((0..mp).map(|_| sample_p(rng) as u32));
        ys.extend((0..mq).map(|_| sample_q(rng) as u32));
        samples_used += mp + mq;
        stats.push(statistic(&mut xs, &mut ys));
    }
    let rejections = stats.iter().filter(|&&z| z > threshold).count();
    stats.sort_by(f64::total_cmp);
    ClosenessVerdict {
        verdict: if 2 * rejections > repeats { Verdict::Reject } else { Verdict::Accept },
        samples_used,
        sample_budget: 2 * repeats as u64 * m,
        statistic_value: stats[repeats / 2],
        threshold,
        repeats,
        rejections,
    }
}

/// The collision statistic from two unsorted sample lists.
fn statistic(xs: &mut [u32], ys: &mut [u32]) -> f64 {
    xs.sort_unstable();
    ys.sort_unstable();
    let (mut i, mut j) = (0, 0);
    let mut z = 0.0;
    while i < xs.len() || j < ys.len() {
        let key = match (xs.get(i), ys.get(j)) {
            (Some(&a), Some(&b)) => a.min(b),
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        let i0 = i;
        while i < xs.len() && xs[i] == key {
            i += 1;
        }
        let j0 = j;
        while j < ys.len() && ys[j] == key {
            j += 1;
        }
        let (x, y) = ((i - i0) as f64, (j - j0) as f64);
        z += ((x - y).powi(2) - x - y) / (x + y);
    }
    z
}
