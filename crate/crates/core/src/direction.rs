//! Unit vectors on the sphere.

use crate::error::Error;

#[cfg(test)]
const UNIT_NORM_TOL: f64 = 1e-12;

/// A unit 3-vector. Construction normalizes (rejecting near-zero input), so
/// the Euclidean norm is 1 to within 1e-12 by invariant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    pub const Z: Direction = Direction { x: 0.0, y: 0.0, z: 1.0 };
    pub const MINUS_Z: Direction = Direction { x: 0.0, y: 0.0, z: -1.0 };
    pub const X: Direction = Direction { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Direction = Direction { x: 0.0, y: 1.0, z: 0.0 };

    /// Normalize an arbitrary 3-vector.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, Error> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm > 1e-14) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { x: x / norm, y: y / norm, z: z / norm })
    }

    /// From polar angle θ (from +z) and azimuth φ, both in radians.
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        Self {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    pub fn components(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: Direction) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// (θ, φ) with θ ∈ [0, π], φ ∈ (−π, π]. φ = 0 on the poles.
    pub fn polar_angles(self) -> (f64, f64) {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let phi = if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        };
        (theta, phi)
    }

    /// Rotate by `angle` around `axis` (Rodrigues formula).
    pub fn rotated(self, axis: Direction, angle: f64) -> Direction {
        let [kx, ky, kz] = axis.components();
        let [vx, vy, vz] = self.components();
        let (s, c) = angle.sin_cos();
        let kdotv = kx * vx + ky * vy + kz * vz;
        let cross = [ky * vz - kz * vy, kz * vx - kx * vz, kx * vy - ky * vx];
        Direction {
            x: vx * c + cross[0] * s + kx * kdotv * (1.0 - c),
            y: vy * c + cross[1] * s + ky * kdotv * (1.0 - c),
            z: vz * c + cross[2] * s + kz * kdotv * (1.0 - c),
        }
    }

    pub fn norm_error(self) -> f64 {
        ((self.x * self.x + self.y * self.y + self.z * self.z).sqrt() - 1.0).abs()
    }
}
