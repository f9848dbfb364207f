//! Seeded random streams.
//!
//! Every independent unit of work (a replicate, a cell of a construction, a
//! batch of Monte Carlo samples) gets its own stream whose seed is derived
//! from a parent seed and an index. Results therefore do not depend on the
//! order or the thread in which the work is executed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitCircle, UnitSphere};

use crate::geometry::Point;

pub type Stream = ChaCha8Rng;

/// SplitMix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of child `index` of a stream seeded with `parent`.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    mix(mix(parent ^ 0x9e37_79b9_7f4a_7c15).wrapping_add(index.wrapping_mul(0xd1b5_4a32_d192_ed03)))
}

pub fn stream(seed: u64) -> Stream {
    Stream::seed_from_u64(seed)
}

/// Uniform direction on the unit sphere of `R^dim` (`dim` is 2 or 3; the
/// planar case has a zero third coordinate).
pub fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Point {
    match dim {
        2 => {
            let [x, y]: [f64; 2] = UnitCircle.sample(rng);
            Point::new(x, y, 0.0)
        }
        3 => {
            let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
            Point::new(x, y, z)
        }
        _ => panic!("unit_vector: unsupported dimension {dim}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(7, 0);
        let b = derive_seed(7, 1);
        let c = derive_seed(8, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(7, 0));
    }

    #[test]
    fn unit_vectors_are_unit() {
        let mut rng = stream(1);
        for dim in [2, 3] {
            for _ in 0..100 {
                let u = unit_vector(dim, &mut rng);
                assert!((u.norm() - 1.0).abs() < 1e-12);
                if dim == 2 {
                    assert_eq!(u.z, 0.0);
                }
            }
        }
    }
}
