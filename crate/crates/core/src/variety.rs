//! Polarized threefolds of Picard rank at most two.
//!
//! The divisor basis is `{L, E}` (or just `{L}`). The intersection form is a
//! symmetric trilinear form, so it is fully determined by the four numbers
//! `L³, L²E, LE², E³`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::chern::ChernVector;
use crate::error::Error;
use crate::rational::{int, is_multiple_of, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub l: Rational,
    pub e: Rational,
}

impl DivisorClass {
    pub fn new(l: Rational, e: Rational) -> Self {
        DivisorClass { l, e }
    }

    pub fn from_ints(l: i64, e: i64) -> Self {
        DivisorClass::new(int(l), int(e))
    }

    pub fn zero() -> Self {
        DivisorClass::from_ints(0, 0)
    }

    pub fn is_integral(&self) -> bool {
        self.l.is_integer() && self.e.is_integer()
    }

    fn coeff(&self, index: usize) -> &Rational {
        if index == 0 {
            &self.l
        } else {
            &self.e
        }
    }
}

impl core::ops::Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(&self.l + &rhs.l, &self.e + &rhs.e)
    }
}

/// Symmetric trilinear form on `span{L, E}`, indexed by how many `E`s appear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleForm {
    by_e_count: [Rational; 4],
}

impl TripleForm {
    /// `[L³, L²·E, L·E², E³]`.
    pub fn new(by_e_count: [Rational; 4]) -> Self {
        TripleForm { by_e_count }
    }

    pub fn entry(&self, e_count: usize) -> &Rational {
        &self.by_e_count[e_count]
    }

    pub fn eval(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Rational {
        let mut total = Rational::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let coeff = a.coeff(i) * b.coeff(j) * c.coeff(k);
                    if !coeff.is_zero() {
                        total += coeff * &self.by_e_count[i + j + k];
                    }
                }
            }
        }
        total
    }
}

/// Moduli `(d0, d1, d2, d3)`: sheaf classes satisfy `eᵢ ∈ dᵢ·Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    moduli: [Rational; 4],
}

impl Lattice {
    pub fn new(moduli: [Rational; 4]) -> Result<Self, Error> {
        if moduli.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidPreset("lattice moduli must be positive".into()));
        }
        Ok(Lattice { moduli })
    }

    /// Integer steps in `e0` and `e1`, ignoring the variety. Only used to show
    /// what the search admits without the integrality constraints.
    pub fn unit() -> Self {
        Lattice {
            moduli: [int(1), int(1), int(1), int(1)],
        }
    }

    pub fn modulus(&self, degree: usize) -> &Rational {
        &self.moduli[degree]
    }

    pub fn moduli(&self) -> &[Rational; 4] {
        &self.moduli
    }

    pub fn contains(&self, v: &ChernVector) -> bool {
        v.components()
            .iter()
            .zip(&self.moduli)
            .all(|(x, d)| is_multiple_of(x, d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variety {
    name: String,
    basis: Vec<String>,
    triple: TripleForm,
    polarization: DivisorClass,
    lattice: Lattice,
    nef_cone: Vec<DivisorClass>,
}

impl Variety {
    /// Validates the data: one or two basis elements, the nef cone given by as
    /// many rays as the rank, and an ample polarization with `H³ > 0`.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        triple: TripleForm,
        polarization: DivisorClass,
        lattice: Lattice,
        nef_cone: Vec<DivisorClass>,
    ) -> Result<Self, Error> {
        let rank = basis.len();
        if !(1..=2).contains(&rank) {
            return Err(Error::InvalidPreset(
                "basis must have one or two generators".into(),
            ));
        }
        if rank == 1 {
            if (1..4).any(|k| !triple.entry(k).is_zero()) {
                return Err(Error::InvalidPreset(
                    "rank one basis cannot carry mixed intersection numbers".into(),
                ));
            }
            if !polarization.e.is_zero() || nef_cone.iter().any(|r| !r.e.is_zero()) {
                return Err(Error::DivisorOutsideBasis);
            }
        }
        if nef_cone.len() != rank {
            return Err(Error::InvalidPreset(
                "nef cone needs one ray per basis element".into(),
            ));
        }
        let variety = Variety {
            name: name.into(),
            basis,
            triple,
            polarization,
            lattice,
            nef_cone,
        };
        if !variety.h_cubed().is_positive() {
            return Err(Error::InvalidPreset("H^3 must be positive".into()));
        }
        if !variety.ample_check(&variety.polarization) {
            return Err(Error::InvalidPreset("polarization is not ample".into()));
        }
        Ok(variety)
    }

    /// Blow-up of P³ at a point, `H = 2L − E`.
    pub fn blowup_p3() -> Self {
        Variety::new(
            "blowup-p3",
            vec!["L".to_string(), "E".to_string()],
            TripleForm::new([int(1), int(0), int(0), int(1)]),
            DivisorClass::from_ints(2, -1),
            Lattice::new([int(7), int(1), rat(1, 2), rat(1, 6)]).expect("positive moduli"),
            vec![DivisorClass::from_ints(1, 0), DivisorClass::from_ints(1, -1)],
        )
        .expect("built-in preset is valid")
    }

    /// P³ with `H = L` the hyperplane class.
    pub fn p3() -> Self {
        Variety::new(
            "p3",
            vec!["L".to_string()],
            TripleForm::new([int(1), int(0), int(0), int(0)]),
            DivisorClass::from_ints(1, 0),
            Lattice::new([int(1), int(1), rat(1, 2), rat(1, 6)]).expect("positive moduli"),
            vec![DivisorClass::from_ints(1, 0)],
        )
        .expect("built-in preset is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn triple_form(&self) -> &TripleForm {
        &self.triple
    }

    pub fn polarization(&self) -> &DivisorClass {
        &self.polarization
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn nef_cone(&self) -> &[DivisorClass] {
        &self.nef_cone
    }

    pub fn triple(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Rational {
        self.triple.eval(a, b, c)
    }

    pub fn h_cubed(&self) -> Rational {
        let h = &self.polarization;
        self.triple(h, h, h)
    }

    /// `(H³, H²·D, H·D²/2, D³/6)`.
    pub fn chern_of_line_bundle(&self, d: &DivisorClass) -> Result<ChernVector, Error> {
        if !d.is_integral() {
            return Err(Error::NonIntegralDivisor(Box::new(d.clone())));
        }
        if self.rank() == 1 && !d.e.is_zero() {
            return Err(Error::DivisorOutsideBasis);
        }
        let h = &self.polarization;
        Ok(ChernVector::new(
            self.h_cubed(),
            self.triple(h, h, d),
            self.triple(h, d, d) / int(2),
            self.triple(d, d, d) / int(6),
        ))
    }

    pub fn lattice_check(&self, v: &ChernVector) -> bool {
        self.lattice.contains(v)
    }

    /// Interior of the nef cone.
    pub fn ample_check(&self, d: &DivisorClass) -> bool {
        match self.nef_cone.as_slice() {
            [ray] => {
                d.e.is_zero() && !ray.l.is_zero() && (&d.l / &ray.l).is_positive()
            }
            [r1, r2] => {
                let det = &r1.l * &r2.e - &r1.e * &r2.l;
                if det.is_zero() {
                    return false;
                }
                let a = (&d.l * &r2.e - &d.e * &r2.l) / &det;
                let b = (&r1.l * &d.e - &r1.e * &d.l) / &det;
                a.is_positive() && b.is_positive()
            }
            _ => false,
        }
    }
}
