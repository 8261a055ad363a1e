//! Numerical Chern data contracted against the polarization.
//!
//! A class is recorded by its four H-degrees
//! `(e0, e1, e2, e3) = (H³·ch₀, H²·ch₁, H·ch₂, ch₃)`. Tilt stability only ever
//! sees these four numbers, so everything downstream works on [`ChernVector`].

use core::cmp::Ordering;
use core::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernVector {
    pub e0: Rational,
    pub e1: Rational,
    pub e2: Rational,
    pub e3: Rational,
}

impl ChernVector {
    pub fn new(e0: Rational, e1: Rational, e2: Rational, e3: Rational) -> Self {
        ChernVector { e0, e1, e2, e3 }
    }

    pub fn zero() -> Self {
        ChernVector::new(int(0), int(0), int(0), int(0))
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.e0, &self.e1, &self.e2, &self.e3]
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ChernVector::new(&self.e0 * k, &self.e1 * k, &self.e2 * k, &self.e3 * k)
    }

    /// `ch^β = e^{-βH}·ch`, expanded degree by degree.
    pub fn twist(&self, beta: &Rational) -> Self {
        let b2 = beta * beta / int(2);
        let b3 = beta * beta * beta / int(6);
        ChernVector {
            e0: self.e0.clone(),
            e1: &self.e1 - beta * &self.e0,
            e2: &self.e2 - beta * &self.e1 + &b2 * &self.e0,
            e3: &self.e3 - beta * &self.e2 + &b2 * &self.e1 - &b3 * &self.e0,
        }
    }

    /// `Δ = e1² − 2·e0·e2`; unchanged by twisting.
    pub fn discriminant(&self) -> Rational {
        &self.e1 * &self.e1 - int(2) * &self.e0 * &self.e2
    }

    /// `Q_{α,β} = α²Δ + 4(e2^β)² − 6·e1^β·e3^β` at `p = (α², β)`.
    pub fn q_form(&self, p: &TiltPoint) -> Rational {
        let w = self.twist(&p.beta);
        &p.s * self.discriminant() + int(4) * &w.e2 * &w.e2 - int(6) * &w.e1 * &w.e3
    }

    pub fn tilt_slope(&self, p: &TiltPoint) -> Slope {
        let w = self.twist(&p.beta);
        Slope {
            num: w.e2 - &p.s / int(2) * &self.e0,
            den: w.e1,
        }
    }

    /// Classes spanning the same ray or its opposite, tested by 2×2 minors.
    pub fn is_proportional(&self, other: &ChernVector) -> bool {
        let a = self.components();
        let b = other.components();
        (0..4).all(|i| (i + 1..4).all(|j| a[i] * b[j] == a[j] * b[i]))
    }
}

impl Add for &ChernVector {
    type Output = ChernVector;

    fn add(self, rhs: &ChernVector) -> ChernVector {
        ChernVector::new(
            &self.e0 + &rhs.e0,
            &self.e1 + &rhs.e1,
            &self.e2 + &rhs.e2,
            &self.e3 + &rhs.e3,
        )
    }
}

impl Sub for &ChernVector {
    type Output = ChernVector;

    fn sub(self, rhs: &ChernVector) -> ChernVector {
        ChernVector::new(
            &self.e0 - &rhs.e0,
            &self.e1 - &rhs.e1,
            &self.e2 - &rhs.e2,
            &self.e3 - &rhs.e3,
        )
    }
}

impl Neg for &ChernVector {
    type Output = ChernVector;

    fn neg(self) -> ChernVector {
        ChernVector::new(-&self.e0, -&self.e1, -&self.e2, -&self.e3)
    }
}

/// A point of the upper half plane in coordinates `s = α²` and `β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TiltPoint {
    pub s: Rational,
    pub beta: Rational,
}

impl TiltPoint {
    /// `s = 0` is accepted for boundary analysis.
    pub fn new(s: Rational, beta: Rational) -> Result<Self, Error> {
        if s.is_negative() {
            return Err(Error::NegativeAlphaSquared(s));
        }
        Ok(TiltPoint { s, beta })
    }

    pub fn is_interior(&self) -> bool {
        self.s > Rational::zero()
    }
}

/// Tilt slope kept as an undivided pair; `den == 0` is slope +∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    pub num: Rational,
    pub den: Rational,
}

impl Slope {
    pub fn new(num: Rational, den: Rational) -> Self {
        Slope { num, den }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeOrdering {
    Less,
    Equal,
    Greater,
    /// One of the slopes has a negative denominator and is not in the heart.
    Incomparable,
}

impl From<Ordering> for SlopeOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => SlopeOrdering::Less,
            Ordering::Equal => SlopeOrdering::Equal,
            Ordering::Greater => SlopeOrdering::Greater,
        }
    }
}

pub fn slope_cmp(a: &Slope, b: &Slope) -> SlopeOrdering {
    if a.den.is_negative() || b.den.is_negative() {
        return SlopeOrdering::Incomparable;
    }
    match (a.is_infinite(), b.is_infinite()) {
        (true, true) => SlopeOrdering::Equal,
        (false, true) => SlopeOrdering::Less,
        (true, false) => SlopeOrdering::Greater,
        (false, false) => (&a.num * &b.den).cmp(&(&b.num * &a.den)).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn o_l() -> ChernVector {
        ChernVector::new(int(7), int(4), int(1), rat(1, 6))
    }

    fn pt(s: Rational, beta: Rational) -> TiltPoint {
        TiltPoint::new(s, beta).unwrap()
    }

    #[test]
    fn twist_at_half_has_e1_one_half() {
        assert_eq!(o_l().twist(&rat(1, 2)).e1, rat(1, 2));
    }

    #[test]
    fn twist_by_zero_is_identity() {
        assert_eq!(o_l().twist(&int(0)), o_l());
    }

    #[test]
    fn twist_composes() {
        let quarter = rat(1, 4);
        assert_eq!(o_l().twist(&quarter).twist(&quarter), o_l().twist(&rat(1, 2)));
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(o_l().discriminant(), int(2));
        assert_eq!(
            ChernVector::new(int(7), int(0), int(0), int(0)).discriminant(),
            int(0)
        );
    }

    #[test]
    fn q_form_at_disc_center_and_top() {
        assert_eq!(o_l().q_form(&pt(int(0), rat(1, 4))), rat(-1, 8));
        assert_eq!(o_l().q_form(&pt(rat(1, 16), rat(1, 4))), int(0));
    }

    #[test]
    fn q_form_vanishes_on_structure_sheaf() {
        let o = ChernVector::new(int(7), int(0), int(0), int(0));
        for (s, b) in [(1, 3), (5, -2), (1, 1)] {
            assert_eq!(o.q_form(&pt(int(s), rat(b, 7))), int(0));
        }
    }

    #[test]
    fn slope_infinite_at_classical_slope() {
        let slope = o_l().tilt_slope(&pt(int(3), rat(4, 7)));
        assert!(slope.is_infinite());
    }

    #[test]
    fn torsion_class_has_infinite_slope() {
        let c = ChernVector::new(int(0), int(0), int(1), int(0));
        for (s, b) in [(1, 0), (4, 3), (1, -5)] {
            assert_eq!(c.tilt_slope(&pt(int(s), int(b))), Slope::new(int(1), int(0)));
        }
    }

    #[test]
    fn slope_cmp_basic_cases() {
        let half = Slope::new(int(1), int(2));
        assert_eq!(slope_cmp(&half, &half), SlopeOrdering::Equal);
        assert_eq!(
            slope_cmp(&Slope::new(int(5), int(1)), &Slope::new(int(1), int(0))),
            SlopeOrdering::Less
        );
        assert_eq!(
            slope_cmp(&Slope::new(int(1), int(0)), &Slope::new(int(-3), int(0))),
            SlopeOrdering::Equal
        );
        assert_eq!(
            slope_cmp(&Slope::new(int(1), int(-1)), &half),
            SlopeOrdering::Incomparable
        );
    }

    #[test]
    fn negative_s_rejected() {
        assert!(TiltPoint::new(int(-1), int(0)).is_err());
        assert!(!TiltPoint::new(int(0), int(0)).unwrap().is_interior());
    }

    #[test]
    fn proportionality() {
        assert!(o_l().is_proportional(&o_l().scale(&int(-3))));
        assert!(!o_l().is_proportional(&o_l().twist(&int(1))));
    }
}
