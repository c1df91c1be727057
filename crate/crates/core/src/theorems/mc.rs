//! Monte-Carlo estimate of
//!
//! ```text
//! I_{k,ℓ} = 1/(k! ℓ!) ∫_{0<xᵢ<yᵢ<1} (Σ μᵢ ln((1−xᵢ)/(1−yᵢ)))^k (Σ ξᵢ ln(yᵢ/xᵢ))^ℓ Π dxᵢ dyᵢ / ((1−xᵢ) yᵢ)
//! ```
//!
//! Each pair is drawn as `y ~ U(0,1)` and then `x | y` with density
//! `1 / ((1−x)·(−ln(1−y)))` on `(0, y)`, by inverse transform
//! `x = 1 − (1−y)^u`. The `1/(1−x)` singularity cancels and the pair
//! contributes the factor `−ln(1−y)/y`, which is square integrable, so the
//! estimator has finite variance.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ParamVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * other.n as f64 / n as f64,
            m2: self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64,
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn run_worker(
    k: u32,
    l: u32,
    mu: &[f64],
    xi: &[f64],
    samples: u64,
    seed: u64,
    worker: usize,
) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    let norm = 1.0 / (factorial(k) * factorial(l));
    let mut acc = Moments {
        n: 0,
        mean: 0.0,
        m2: 0.0,
    };
    for _ in 0..samples {
        let mut weight = norm;
        let mut s_mu = 0.0;
        let mut s_xi = 0.0;
        for i in 0..mu.len() {
            let y: f64 = rng.sample(Open01);
            let u: f64 = rng.sample(Open01);
            let ln_1my = (-y).ln_1p();
            let x = -(u * ln_1my).exp_m1();
            weight *= -ln_1my / y;
            // ln((1−x)/(1−y)) = (u − 1)·ln(1−y)
            s_mu += mu[i] * (u - 1.0) * ln_1my;
            s_xi += xi[i] * (y.ln() - x.ln());
        }
        acc.push(weight * s_mu.powi(k as i32) * s_xi.powi(l as i32));
    }
    acc
}

/// Seeded estimate with its standard error. Worker `w` draws from stream
/// `w` of a ChaCha8 generator seeded with `seed`; the result depends on the
/// seed and the worker count only.
pub fn mc_integral(
    k: u32,
    l: u32,
    pairs: usize,
    params: &ParamVector,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if !(2..=3).contains(&pairs) {
        return Err(Error::OutOfRange(format!(
            "pairs must be 2 or 3, got {pairs}"
        )));
    }
    params.require_arity(pairs)?;
    if samples == 0 {
        return Err(Error::EmptyDomain("at least one sample is required".into()));
    }
    let workers = workers.max(1);
    let to_f64 = |v: &[num_rational::BigRational]| -> Vec<f64> {
        v.iter()
            .map(|r| num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN))
            .collect()
    };
    let mu = to_f64(params.mu());
    let xi = to_f64(params.xi());
    let base = samples / workers as u64;
    let extra = (samples % workers as u64) as usize;
    let parts: Vec<Moments> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let n = base + u64::from(w < extra);
                let (mu, xi) = (&mu, &xi);
                scope.spawn(move || run_worker(k, l, mu, xi, n, seed, w))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    });
    let total = parts
        .into_iter()
        .reduce(Moments::merge)
        .expect("at least one worker");
    let variance = if total.n > 1 {
        total.m2 / (total.n - 1) as f64
    } else {
        0.0
    };
    Ok(McEstimate {
        estimate: total.mean,
        stderr: (variance / total.n as f64).sqrt(),
        samples,
        seed,
        workers,
    })
}
