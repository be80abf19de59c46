//! Monte Carlo check of the Cauchy integral formula on spheres in R⁸.
//!
//! For `f` left monogenic on a closed ball and `x` inside it,
//!
//! ```text
//! f(x) = 1/ω₈ ∫_{∂M} K(x, y) (ν(y) f(y)) dS(y),    K(x, y) = conj(x − y) / |x − y|⁸
//! ```
//!
//! with `ν` the inward unit normal `(center − y)/r`. With the outward normal
//! the same integral reproduces `−f(x)`; the constant fixture pins the sign.
//!
//! Sample `i` is drawn from its own stream `(seed, i)` and samples are
//! accumulated in fixed chunks merged in a fixed order, so an estimate does not
//! depend on the number of threads.

use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::algebra::Octonion;
use crate::field::OctonionField;
use crate::rng;
use crate::{Error, Result};

/// Kernel evaluations closer than this to the pole are rejected.
pub const KERNEL_SINGULAR_DISTANCE: f64 = 1e-12;

/// Required distance of the evaluation point from the sphere, as a fraction
/// of the radius.
pub const INTERIOR_MARGIN: f64 = 0.1;

const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereSpec {
    pub center: [f64; 8],
    pub radius: f64,
}

impl SphereSpec {
    pub fn new(center: [f64; 8], radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Domain(format!("sphere radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self { center: [0.0; 8], radius: 1.0 }
    }

    /// Surface measure `ω₈ r⁷`.
    pub fn area(&self) -> f64 {
        omega8() * self.radius.powi(7)
    }

    fn point(&self, direction: &Octonion) -> [f64; 8] {
        std::array::from_fn(|k| self.center[k] + self.radius * direction.c[k])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralEstimate {
    pub value: Octonion,
    /// Standard error of each component.
    pub stderr: [f64; 8],
    pub max_stderr: f64,
    /// Samples that entered the mean.
    pub samples: usize,
    /// Samples dropped at the kernel pole.
    pub skipped: usize,
    pub seed: u64,
}

/// `conj(x − y) / |x − y|⁸`.
pub fn cauchy_kernel(x: &Octonion, y: &Octonion) -> Result<Octonion> {
    let d = *x - *y;
    let n2 = d.norm_sqr();
    if n2.sqrt() < KERNEL_SINGULAR_DISTANCE {
        return Err(Error::Singular(format!("kernel evaluated at |x − y| = {:e}", n2.sqrt())));
    }
    Ok(d.conj() * (1.0 / (n2 * n2 * n2 * n2)))
}

/// Surface measure of the unit sphere S⁷, `2π⁴/Γ(4) = π⁴/3`.
pub fn omega8() -> f64 {
    2.0 * std::f64::consts::PI.powi(4) / gamma(4.0)
}

/// Hit-or-miss estimate of `ω₈` as `8·vol(B⁸)` from `n` points uniform in
/// `[−1, 1]⁸`; returns `(estimate, stderr)`.
pub fn omega8_monte_carlo(n: usize, seed: u64) -> (f64, f64) {
    use rand::Rng;
    let hits: usize = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut r = rng::indexed(seed, "omega8", chunk as u64);
            let len = CHUNK.min(n - chunk * CHUNK);
            (0..len).filter(|_| (0..8).map(|_| r.random_range(-1.0f64..1.0).powi(2)).sum::<f64>() <= 1.0).count()
        })
        .sum();
    let p = hits as f64 / n as f64;
    let scale = 8.0 * 256.0;
    (scale * p, scale * (p * (1.0 - p) / n as f64).sqrt())
}

/// The `i`-th of `n` uniform points on the sphere.
fn sample_point(spec: &SphereSpec, seed: u64, index: u64) -> [f64; 8] {
    let mut r = rng::indexed(seed, "sphere", index);
    spec.point(&rng::unit_octonion(&mut r))
}

/// `n` uniform points on the sphere; the stream depends only on `seed`.
pub fn sphere_sample(spec: &SphereSpec, n: usize, seed: u64) -> Vec<[f64; 8]> {
    (0..n as u64).into_par_iter().map(|i| sample_point(spec, seed, i)).collect()
}

/// Count, mean and sum of squared deviations of each component.
#[derive(Clone, Copy, Debug)]
struct Moments {
    n: f64,
    mean: [f64; 8],
    m2: [f64; 8],
}

impl Moments {
    const EMPTY: Self = Self { n: 0.0, mean: [0.0; 8], m2: [0.0; 8] };

    fn push(&mut self, v: &Octonion) {
        self.n += 1.0;
        for k in 0..8 {
            let delta = v.c[k] - self.mean[k];
            self.mean[k] += delta / self.n;
            self.m2[k] += delta * (v.c[k] - self.mean[k]);
        }
    }

    fn merge(a: Self, b: Self) -> Self {
        if a.n == 0.0 {
            return b;
        }
        if b.n == 0.0 {
            return a;
        }
        let n = a.n + b.n;
        let mut out = Self { n, ..Self::EMPTY };
        for k in 0..8 {
            let delta = b.mean[k] - a.mean[k];
            out.mean[k] = a.mean[k] + delta * b.n / n;
            out.m2[k] = a.m2[k] + b.m2[k] + delta * delta * a.n * b.n / n;
        }
        out
    }
}

/// Merge neighbours level by level, so the result depends only on the order
/// of `parts`.
fn merge_pairwise(mut parts: Vec<Moments>) -> Moments {
    if parts.is_empty() {
        return Moments::EMPTY;
    }
    while parts.len() > 1 {
        parts = parts.chunks(2).map(|p| if p.len() == 2 { Moments::merge(p[0], p[1]) } else { p[0] }).collect();
    }
    parts[0]
}

/// Monte Carlo estimate of the Cauchy integral of `f` at `x`.
///
/// `x` must keep a distance of at least `INTERIOR_MARGIN·radius` from the
/// sphere. `f` is assumed left monogenic on the closed ball; nothing checks it.
pub fn cauchy_integral(
    f: &OctonionField,
    spec: &SphereSpec,
    x: &Octonion,
    n: usize,
    seed: u64,
) -> Result<IntegralEstimate> {
    let mut out = cauchy_integral_at(f, spec, std::slice::from_ref(x), n, seed)?;
    Ok(out.remove(0))
}

/// [`cauchy_integral`] at several points from one sample stream; each
/// estimate equals the single-point estimate with the same seed.
pub fn cauchy_integral_at(
    f: &OctonionField,
    spec: &SphereSpec,
    points: &[Octonion],
    n: usize,
    seed: u64,
) -> Result<Vec<IntegralEstimate>> {
    let spec = SphereSpec::new(spec.center, spec.radius)?;
    if n == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    let center = Octonion::new(spec.center);
    for x in points {
        let offset = (*x - center).norm();
        if offset > spec.radius * (1.0 - INTERIOR_MARGIN) {
            return Err(Error::Precondition(format!(
                "evaluation point at distance {offset} from the center is within {} of the sphere of radius {}",
                INTERIOR_MARGIN * spec.radius,
                spec.radius
            )));
        }
    }

    let m = points.len();
    let chunks = n.div_ceil(CHUNK);
    let parts = (0..chunks)
        .into_par_iter()
        .map(|chunk| -> Result<Vec<(Moments, usize)>> {
            let mut acc = vec![(Moments::EMPTY, 0usize); m];
            let start = chunk * CHUNK;
            for i in start..(start + CHUNK).min(n) {
                let y = sample_point(&spec, seed, i as u64);
                let yo = Octonion::new(y);
                let nf = (center - yo) / spec.radius * f.eval(&y)?;
                for (x, (moments, skipped)) in points.iter().zip(acc.iter_mut()) {
                    match cauchy_kernel(x, &yo) {
                        Ok(k) => moments.push(&(k * nf)),
                        Err(e) => {
                            log::warn!("skipping sample {i}: {e}");
                            *skipped += 1;
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;

    // area/ω₈ = r⁷
    let scale = spec.radius.powi(7);
    (0..m)
        .map(|p| {
            let skipped = parts.iter().map(|c| c[p].1).sum();
            let moments = merge_pairwise(parts.iter().map(|c| c[p].0).collect());
            if moments.n == 0.0 {
                return Err(Error::Singular("every sample hit the kernel pole".into()));
            }
            let samples = moments.n as usize;
            let stderr: [f64; 8] = std::array::from_fn(|k| {
                let var = if samples > 1 { moments.m2[k] / (moments.n - 1.0) } else { 0.0 };
                scale * (var / moments.n).sqrt()
            });
            Ok(IntegralEstimate {
                value: Octonion::new(moments.mean) * scale,
                max_stderr: stderr.iter().copied().fold(0.0, f64::max),
                stderr,
                samples,
                skipped,
                seed,
            })
        })
        .collect()
}
