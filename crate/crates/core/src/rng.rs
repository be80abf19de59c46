//! Seeded, order-independent random streams.
//!
//! A single 64-bit seed is split into independent streams by label and index:
//! the label selects a ChaCha key, the index selects the ChaCha stream. A
//! check that draws from `indexed(seed, "moufang", i)` sees the same numbers
//! regardless of which other checks ran before it or on which thread.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Octonion, Quaternion};

pub type StreamRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mix a label into a seed (FNV-1a over the label bytes, then splitmix).
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(seed ^ splitmix64(h))
}

pub fn stream(seed: u64, label: &str) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, label))
}

/// The `index`-th stream under `label`.
pub fn indexed(seed: u64, label: &str, index: u64) -> StreamRng {
    let mut rng = stream(seed, label);
    rng.set_stream(index);
    rng
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian8<R: Rng + ?Sized>(rng: &mut R) -> [f64; 8] {
    std::array::from_fn(|_| gaussian(rng))
}

/// Uniform direction on S⁷.
pub fn unit_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    loop {
        let g = Octonion::new(gaussian8(rng));
        let n = g.norm();
        if n > 1e-8 {
            return g / n;
        }
    }
}

/// Random direction with norm uniform in `[0.5, 2]`, the regime the algebraic
/// identities are checked in.
pub fn octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    let r = rng.random_range(0.5..=2.0);
    unit_octonion(rng) * r
}

pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let g = Quaternion::new(std::array::from_fn(|_| gaussian(rng)));
        let n = g.norm();
        if n > 1e-8 {
            return g * (1.0 / n);
        }
    }
}

/// Random quaternion with norm uniform in `[0.5, 2]`.
pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let r = rng.random_range(0.5..=2.0);
    unit_quaternion(rng) * r
}

/// Uniform point in the closed ball of the given radius around the origin.
pub fn point_in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> [f64; 8] {
    let dir = unit_octonion(rng);
    let r = radius * rng.random::<f64>().powf(1.0 / 8.0);
    (dir * r).c
}
