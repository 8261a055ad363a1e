use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::rational::Rational;
use crate::variety::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NegativeAlphaSquared(Rational),
    /// Line bundles need integer coefficients.
    NonIntegralDivisor(Box<DivisorClass>),
    /// A nonzero coefficient on a generator the variety does not have.
    DivisorOutsideBasis,
    InvalidPreset(String),
    UnrealizableWall,
    EmptyInterval,
    /// Interval endpoints of different quadratic fields.
    IncompatibleEndpoints,
    /// The class has negative twisted `e1` somewhere it must lie in the heart.
    Inadmissible(String),
    InvalidRange,
    NegativeDiscriminant(Rational),
    InvalidMargin(Rational),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeAlphaSquared(s) => write!(f, "alpha^2 must be >= 0, got {s}"),
            Error::NonIntegralDivisor(d) => {
                write!(f, "divisor {}L + {}E does not have integer coefficients", d.l, d.e)
            }
            Error::DivisorOutsideBasis => {
                f.write_str("divisor uses a generator missing from the variety's basis")
            }
            Error::InvalidPreset(why) => write!(f, "invalid variety preset: {why}"),
            Error::UnrealizableWall => f.write_str("wall locus is empty in the upper half plane"),
            Error::EmptyInterval => f.write_str("empty beta interval"),
            Error::IncompatibleEndpoints => {
                f.write_str("interval endpoints involve different square roots")
            }
            Error::Inadmissible(at) => write!(f, "class is not in the heart at beta = {at}"),
            Error::InvalidRange => f.write_str("empty or inverted search range"),
            Error::NegativeDiscriminant(d) => write!(f, "discriminant {d} is negative"),
            Error::InvalidMargin(m) => write!(f, "region margin {m} must lie strictly in (0, 1)"),
        }
    }
}

impl core::error::Error for Error {}
