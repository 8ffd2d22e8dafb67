//! Seeded samplers used by the bootstrap and the self-consistency checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use super::Sample;
use crate::distributions::WeibullParams;

fn weibull_draw<R: Rng>(rng: &mut R, p: WeibullParams<f64>) -> f64 {
    let e: f64 = Exp1.sample(rng);
    p.scale * e.powf(1.0 / p.shape)
}

pub(crate) fn weibull_draws<R: Rng>(rng: &mut R, p: WeibullParams<f64>, n: usize) -> Vec<f64> {
    (0..n).map(|_| weibull_draw(rng, p).max(f64::MIN_POSITIVE)).collect()
}

pub fn simulate_weibull(p: WeibullParams<f64>, n: usize, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Sample::new(weibull_draws(&mut rng, p, n), "simulated weibull").expect("n > 0 positive draws")
}

/// Gamma(1/a², 1/a²) conditioned on `[1, ∞)`, by rejection.
fn truncated_gamma_draw<R: Rng>(rng: &mut R, g: &Gamma<f64>) -> f64 {
    loop {
        let v = g.sample(rng);
        if v >= 1.0 {
            return v;
        }
    }
}

fn mixing_law(a: f64) -> Gamma<f64> {
    let alpha = 1.0 / (a * a);
    Gamma::new(alpha, 1.0 / alpha).expect("positive gamma parameters")
}

/// Draws from the truncated-gamma frailty model: given Λ, `F̄(t)^Λ`.
pub fn simulate_frailty(p: WeibullParams<f64>, a: f64, n: usize, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = mixing_law(a);
    let xs = (0..n)
        .map(|_| {
            let lambda = truncated_gamma_draw(&mut rng, &g);
            let e: f64 = Exp1.sample(&mut rng);
            (p.scale * (e / lambda).powf(1.0 / p.shape)).max(f64::MIN_POSITIVE)
        })
        .collect();
    Sample::new(xs, "simulated frailty").expect("n > 0 positive draws")
}

/// Draws from the truncated-gamma resilience model: given Ω, `G(t)^Ω`.
pub fn simulate_resilience(p: WeibullParams<f64>, a: f64, n: usize, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = mixing_law(a);
    let xs = (0..n)
        .map(|_| {
            let omega = truncated_gamma_draw(&mut rng, &g);
            let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
            // G(t) = u^{1/Ω}, so F̄(t) = -expm1(ln u / Ω).
            let sf = -(u.ln() / omega).exp_m1();
            (p.scale * (-sf.ln()).powf(1.0 / p.shape)).max(f64::MIN_POSITIVE)
        })
        .collect();
    Sample::new(xs, "simulated resilience").expect("n > 0 positive draws")
}
