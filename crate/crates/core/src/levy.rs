//! Lévy-flight step sizes via Mantegna's algorithm.
//!
//! Each deviate is `scale * u / |v|^(1/λ)` with `u ~ N(0, σ_u²)` and
//! `v ~ N(0, 1)`, which produces a symmetric law whose magnitude tail decays
//! like `s^(-1-λ)`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyParams {
    /// Stability exponent in (1, 2].
    pub lambda: f64,
    /// Multiplier applied to the raw deviates.
    pub scale: f64,
}

impl Default for LevyParams {
    fn default() -> Self {
        Self {
            lambda: 1.5,
            scale: 0.01,
        }
    }
}

impl LevyParams {
    pub fn new(lambda: f64, scale: f64) -> Result<Self> {
        let p = Self { lambda, scale };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 1.0 && self.lambda <= 2.0) {
            return Err(Error::Config(format!(
                "levy lambda {} outside (1, 2]",
                self.lambda
            )));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::Config(format!(
                "levy scale {} must be positive",
                self.scale
            )));
        }
        Ok(())
    }

    /// Standard deviation of the numerator normal in Mantegna's method.
    pub fn sigma_u(&self) -> f64 {
        mantegna_sigma(self.lambda)
    }
}

pub fn mantegna_sigma(lambda: f64) -> f64 {
    let num = libm::tgamma(1.0 + lambda) * (PI * lambda / 2.0).sin();
    let den = libm::tgamma((1.0 + lambda) / 2.0) * lambda * 2f64.powf((lambda - 1.0) / 2.0);
    (num / den).powf(1.0 / lambda)
}

/// Precomputed sampler for repeated draws with fixed parameters.
#[derive(Debug, Clone, Copy)]
pub struct LevySampler {
    params: LevyParams,
    sigma_u: f64,
    inv_lambda: f64,
}

impl LevySampler {
    pub fn new(params: LevyParams) -> Self {
        Self {
            params,
            sigma_u: params.sigma_u(),
            inv_lambda: 1.0 / params.lambda,
        }
    }

    pub fn params(&self) -> LevyParams {
        self.params
    }

    /// One deviate. Consumes two standard normals from `rng`, `u` first.
    #[inline]
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample::<f64, _>(StandardNormal) * self.sigma_u;
        let v: f64 = rng.sample(StandardNormal);
        self.params.scale * u / v.abs().powf(self.inv_lambda)
    }

    pub fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        for x in out {
            *x = self.sample_one(rng);
        }
    }
}

/// `dims` i.i.d. Lévy deviates.
pub fn levy_sample<R: Rng + ?Sized>(params: &LevyParams, dims: usize, rng: &mut R) -> Vec<f64> {
    let sampler = LevySampler::new(*params);
    let mut out = vec![0.0; dims];
    sampler.fill(rng, &mut out);
    out
}
