//! Points on the unit sphere with exact angle comparisons.
//!
//! Angles are always rational multiples of pi. On the circle an evenly
//! spaced grid is stored as fractions of a full turn, which makes every
//! angle an exact rational multiple of pi. In higher dimension points are
//! rational unit vectors (inverse stereographic images of rational points),
//! so inner products are exact and only `cos(r*pi)` needs an enclosure.

use std::cmp::Ordering;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Bounds, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpherePoint {
    /// Point on the circle at this fraction of a full turn, in `[0, 1)`.
    Turn(#[serde(with = "rational::serde_rational")] Rational),
    /// Exact rational unit vector.
    Vector(#[serde(with = "rational::serde_rational::vec")] Vec<Rational>),
}

/// `n` evenly spaced points on the circle.
pub fn grid(n: usize) -> Vec<SpherePoint> {
    (0..n)
        .map(|i| SpherePoint::Turn(rational::from_usize(i) / rational::from_usize(n)))
        .collect()
}

const STEREO_DENOMINATOR: i64 = 1 << 20;

/// Exact unit vector in dimension `t.len() + 1` whose stereographic
/// projection is `t`.
pub fn inverse_stereographic(t: &[Rational]) -> Vec<Rational> {
    let s: Rational = t.iter().map(|x| x * x).sum();
    let denom = &s + Rational::one();
    let mut v: Vec<Rational> = t.iter().map(|x| rational::int(2) * x / &denom).collect();
    v.push((s - Rational::one()) / denom);
    v
}

/// `count` points on `S^d` from a seeded ChaCha8 stream. Directions come
/// from rejection sampling in the cube `[-1,1]^(d+1)`; each direction is
/// snapped to a nearby exact rational unit vector through its
/// stereographic coordinates (denominator 2^20).
pub fn random_points(d: usize, count: usize, seed: u64) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let y: Vec<f64> = (0..=d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(0.25..=1.0).contains(&norm) {
            continue;
        }
        let last = y[d] / norm;
        if last > 0.999 {
            // too close to the projection pole for the fixed denominator
            continue;
        }
        let t: Vec<Rational> = y[..d]
            .iter()
            .map(|v| {
                let coord = v / norm / (1.0 - last);
                let num = (coord * STEREO_DENOMINATOR as f64).round() as i64;
                rational::rat(num, STEREO_DENOMINATOR)
            })
            .collect();
        out.push(SpherePoint::Vector(inverse_stereographic(&t)));
    }
    out
}

/// Compares angles between points against a fixed threshold `r * pi`.
#[derive(Debug, Clone)]
pub struct AngleTest {
    r: Rational,
    cos: Bounds,
}

impl AngleTest {
    /// Threshold `r * pi` with `0 <= r <= 1`.
    pub fn new(r: Rational) -> Result<Self> {
        if r < Rational::zero() || r > Rational::one() {
            return Err(Error::validation(format!(
                "angle {} pi is outside [0, pi]",
                rational::format_rational(&r)
            )));
        }
        let cos = rational::cos_pi_bounds(&r, 128);
        Ok(AngleTest { r, cos })
    }

    /// Ordering of `angle(a, b)` against the threshold.
    pub fn cmp(&self, a: &SpherePoint, b: &SpherePoint) -> Ordering {
        match (a, b) {
            (SpherePoint::Turn(x), SpherePoint::Turn(y)) => turn_angle(x, y).cmp(&self.r),
            (SpherePoint::Vector(x), SpherePoint::Vector(y)) => {
                let dot: Rational = x.iter().zip(y).map(|(p, q)| p * q).sum();
                // angle and cosine are in reverse order on [0, pi]
                let o = match self.cos.compare(&dot) {
                    Some(o) => o,
                    None => rational::cmp_cos_pi(&dot, &self.r),
                };
                o.reverse()
            }
            _ => panic!("mixed point representations"),
        }
    }

    pub fn at_least(&self, a: &SpherePoint, b: &SpherePoint) -> bool {
        self.cmp(a, b) != Ordering::Less
    }

    pub fn at_most(&self, a: &SpherePoint, b: &SpherePoint) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }
}

/// Angle between two circle points, in units of pi.
pub fn turn_angle(x: &Rational, y: &Rational) -> Rational {
    let diff = x - y;
    let f = &diff - diff.floor();
    let g = Rational::one() - &f;
    rational::int(2) * if f < g { f } else { g }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn grid_angles() {
        let pts = grid(12);
        let t = AngleTest::new(rat(4, 5)).unwrap();
        let far: Vec<usize> = (0..12).filter(|&j| t.at_least(&pts[0], &pts[j])).collect();
        assert_eq!(far, vec![5, 6, 7]);
        assert_eq!(turn_angle(&rat(1, 12), &rat(11, 12)), rat(1, 3));
    }

    #[test]
    fn stereographic_points_are_unit() {
        for p in random_points(2, 20, 7) {
            let SpherePoint::Vector(v) = p else { panic!() };
            assert_eq!(v.iter().map(|x| x * x).sum::<Rational>(), Rational::one());
        }
        assert_eq!(random_points(3, 5, 1), random_points(3, 5, 1));
    }

    #[test]
    fn vector_angles_match_circle_angles() {
        // (1,0) and (0,1) are a quarter turn apart
        let a = SpherePoint::Vector(vec![Rational::one(), Rational::zero()]);
        let b = SpherePoint::Vector(vec![Rational::zero(), Rational::one()]);
        assert_eq!(
            AngleTest::new(rat(1, 2)).unwrap().cmp(&a, &b),
            Ordering::Equal
        );
        assert_eq!(
            AngleTest::new(rat(2, 5)).unwrap().cmp(&a, &b),
            Ordering::Greater
        );
        assert_eq!(
            AngleTest::new(rat(3, 5)).unwrap().cmp(&a, &b),
            Ordering::Less
        );
    }
}
