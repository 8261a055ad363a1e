//! Numerical walls in the `(β, α)` half plane.
//!
//! A wall is stored as the coefficient triple of `x(α² + β²) + yβ + z = 0`.
//! Since `s = α²` enters linearly, all geometric questions reduce to linear
//! algebra in `(s + β², β)` plus one sign test, and no roots are taken.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chern::{ChernVector, TiltPoint};
use crate::error::Error;
use crate::rational::{int, sqrt_floor_approx, Rational, Surd};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WallLocus {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallShape {
    Semicircle { center: Rational, radius_sq: Rational },
    VerticalLine { beta: Rational },
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    Identical,
    Disjoint,
    Crossing,
}

impl WallLocus {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        WallLocus { x, y, z }
    }

    pub fn is_degenerate(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Left-hand side of the wall equation at `p`.
    pub fn eval(&self, p: &TiltPoint) -> Rational {
        &self.x * (&p.s + &p.beta * &p.beta) + &self.y * &p.beta + &self.z
    }

    pub fn contains(&self, p: &TiltPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Primitive integer triple with the first nonzero entry positive.
    /// Two nondegenerate loci coincide iff their canonical forms are equal.
    pub fn canonical(&self) -> WallLocus {
        if self.is_degenerate() {
            return self.clone();
        }
        let coeffs = [&self.x, &self.y, &self.z];
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (*c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
            g = -g;
        }
        let scaled = |n: &BigInt| Rational::from_integer(n / &g);
        WallLocus::new(scaled(&ints[0]), scaled(&ints[1]), scaled(&ints[2]))
    }

    pub fn same_locus(&self, other: &WallLocus) -> bool {
        !self.is_degenerate() && !other.is_degenerate() && self.canonical() == other.canonical()
    }

    pub fn shape(&self) -> WallShape {
        if !self.x.is_zero() {
            let center = -&self.y / (int(2) * &self.x);
            let radius_sq = (&self.y * &self.y - int(4) * &self.x * &self.z)
                / (int(4) * &self.x * &self.x);
            if radius_sq.is_positive() {
                WallShape::Semicircle { center, radius_sq }
            } else {
                WallShape::Empty
            }
        } else if !self.y.is_zero() {
            WallShape::VerticalLine {
                beta: -&self.z / &self.y,
            }
        } else {
            WallShape::Empty
        }
    }

    pub fn is_realizable(&self) -> bool {
        self.shape() != WallShape::Empty
    }

    /// `[c − r, c + r]` for a semicircle; the endpoints are generally irrational.
    pub fn beta_extent(&self) -> Option<(Surd, Surd)> {
        match self.shape() {
            WallShape::Semicircle { center, radius_sq } => Some((
                Surd::new(center.clone(), -Rational::one(), radius_sq.clone()),
                Surd::new(center, Rational::one(), radius_sq),
            )),
            _ => None,
        }
    }
}

/// Locus where `ν(v) = ν(w)`, from cross-multiplying the two tilt slopes.
/// `None` when `v` and `w` agree numerically up to scale in `e0..e2`.
pub fn wall_between(v: &ChernVector, w: &ChernVector) -> Option<WallLocus> {
    let wall = WallLocus::new(
        (&w.e0 * &v.e1 - &v.e0 * &w.e1) / int(2),
        &v.e0 * &w.e2 - &w.e0 * &v.e2,
        &w.e1 * &v.e2 - &v.e1 * &w.e2,
    );
    (!wall.is_degenerate()).then_some(wall)
}

/// The locus `Q_{α,β}(v) = 0` as a wall triple, unnormalized so that
/// `q_form(v, p) == q_wall(v).eval(p)` identically.
pub fn q_wall(v: &ChernVector) -> WallLocus {
    WallLocus::new(
        v.discriminant(),
        int(6) * &v.e0 * &v.e3 - int(2) * &v.e1 * &v.e2,
        int(4) * &v.e2 * &v.e2 - int(6) * &v.e1 * &v.e3,
    )
}

/// Intersection of two walls in the open half plane `s > 0`.
///
/// Writing `S = s + β²`, each wall is a line in the `(S, β)` plane. Distinct
/// walls meet in at most one such point, and it lies in the half plane iff
/// `S − β² > 0`.
pub fn walls_nested(a: &WallLocus, b: &WallLocus) -> Result<Nesting, Error> {
    if !a.is_realizable() || !b.is_realizable() {
        return Err(Error::UnrealizableWall);
    }
    if a.same_locus(b) {
        return Ok(Nesting::Identical);
    }
    let det = &a.x * &b.y - &b.x * &a.y;
    if det.is_zero() {
        return Ok(Nesting::Disjoint);
    }
    let big_s = (&b.z * &a.y - &a.z * &b.y) / &det;
    let beta = (&b.x * &a.z - &a.x * &b.z) / &det;
    let s = big_s - &beta * &beta;
    Ok(if s.is_positive() {
        Nesting::Crossing
    } else {
        Nesting::Disjoint
    })
}

/// `count` distinct points with `s > 0` lying exactly on the wall.
///
/// Semicircles are sampled at `β = c + ρ·tᵢ` with `0 < ρ ≤ r` rational and
/// `|tᵢ| < 1`; a single sample is the top of the arc. Vertical lines are
/// sampled at `s = 1, 2, …`.
pub fn point_on_wall(w: &WallLocus, count: usize) -> Result<Vec<TiltPoint>, Error> {
    match w.shape() {
        WallShape::Empty => Err(Error::UnrealizableWall),
        WallShape::VerticalLine { beta } => Ok((1..=count)
            .map(|i| TiltPoint {
                s: int(i as i64),
                beta: beta.clone(),
            })
            .collect()),
        WallShape::Semicircle { center, radius_sq } => {
            let mut bits = 8;
            let mut rho = sqrt_floor_approx(&radius_sq, bits);
            while !rho.is_positive() {
                bits *= 2;
                rho = sqrt_floor_approx(&radius_sq, bits);
            }
            let n = count as i64;
            Ok((0..n)
                .map(|i| {
                    let t = Rational::new((2 * i - (n - 1)).into(), (n + 1).into());
                    let offset = &rho * t;
                    TiltPoint {
                        s: &radius_sq - &offset * &offset,
                        beta: &center + offset,
                    }
                })
                .collect())
        }
    }
}
