//! The prior over the encoded angles.
//!
//! "Uniform prior" means the pushforward of independent uniform (Haar)
//! direction measures: every direction a scenario transmits is drawn
//! independently and uniformly on the sphere. Each pairwise cosine is then
//! uniform on [-1, 1] — the reading that reproduces the closed-form outcome
//! marginals — and for three *shared* directions the joint cosine density is
//!
//! ```text
//!   p(x, y, z) = 1 / (4π √det G)   on det G > 0, 0 elsewhere,
//! ```
//!
//! obtained by conditioning on the azimuth of the third direction. For
//! method B the three pair cosines are simply independent and uniform.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::UnitSphere;
use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::protocols::CosineTriple;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PriorKind {
    #[default]
    HaarProduct,
}

/// Prior model: the kind (only Haar-product ships) plus the base seed for
/// its deterministic samplers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriorModel {
    pub kind: PriorKind,
    pub seed: u64,
}

impl PriorModel {
    pub fn haar_product(seed: u64) -> Self {
        Self { kind: PriorKind::HaarProduct, seed }
    }

    /// A counter-derived random stream: identical (seed, stream) pairs give
    /// identical draws regardless of how work is scheduled.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// Closed-form joint density of the cosines of three shared directions.
    pub fn density(&self, c: &CosineTriple) -> f64 {
        let det = c.gram_det();
        if det > 0.0 {
            1.0 / (4.0 * std::f64::consts::PI * det.sqrt())
        } else {
            0.0
        }
    }
}

/// One uniformly distributed direction.
pub fn sample_direction(rng: &mut impl Rng) -> Direction {
    let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
    Direction::new(x, y, z).expect("unit-sphere sample")
}

/// Three independent uniform directions and their pairwise cosines in the
/// (m̂·n̂, m̂·r̂, n̂·r̂) assignment.
pub fn sample_prior(rng: &mut impl Rng) -> ([Direction; 3], CosineTriple) {
    let n = sample_direction(rng);
    let m = sample_direction(rng);
    let r = sample_direction(rng);
    let c = CosineTriple::new(m.dot(n), m.dot(r), n.dot(r)).expect("cosines of unit vectors");
    ([n, m, r], c)
}

/// The relative cosine of one independently drawn pair: uniform on [-1, 1].
pub fn sample_pair_cosine(rng: &mut impl Rng) -> f64 {
    rng.random_range(-1.0..=1.0)
}
