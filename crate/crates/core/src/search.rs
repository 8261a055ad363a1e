//! Lattice search for destabilizing subobjects along a fixed wall.
//!
//! A subobject `F ↪ v` along a semicircular wall must stay in the heart over
//! the whole β-extent of the wall, i.e. `0 ≤ e1^β(F) ≤ e1^β(v)` there. Both
//! bounds are affine in β, so checking the two endpoints suffices, and that
//! pins `(e0, e1)` of `F` to a finite box. For each surviving pair the wall
//! equation is linear in `e2(F)` and is solved exactly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chern::{ChernVector, TiltPoint};
use crate::error::Error;
use crate::rational::{int, rat, rational_gcd, Rational, Surd};
use crate::variety::{DivisorClass, Lattice, Variety};
use crate::walls::{q_wall, wall_between, WallLocus, WallShape};

/// Closed β-range `[lo, hi]` over which a candidate must lie in the heart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeartInterval {
    lo: Surd,
    hi: Surd,
}

impl HeartInterval {
    pub fn new(lo: Surd, hi: Surd) -> Result<Self, Error> {
        let width = hi.checked_sub(&lo).ok_or(Error::IncompatibleEndpoints)?;
        if width.signum() == Ordering::Less {
            return Err(Error::EmptyInterval);
        }
        Ok(HeartInterval { lo, hi })
    }

    pub fn rational(lo: Rational, hi: Rational) -> Result<Self, Error> {
        HeartInterval::new(lo.into(), hi.into())
    }

    pub fn lo(&self) -> &Surd {
        &self.lo
    }

    pub fn hi(&self) -> &Surd {
        &self.hi
    }

    fn endpoints(&self) -> [&Surd; 2] {
        [&self.lo, &self.hi]
    }
}

/// `e1 − β·e0` at a possibly irrational β.
fn twisted_e1(e0: &Rational, e1: &Rational, beta: &Surd) -> Surd {
    beta.scale(&-e0).add_rational(e1)
}

fn check_admissible(v: &ChernVector, interval: &HeartInterval) -> Result<(), Error> {
    for beta in interval.endpoints() {
        if twisted_e1(&v.e0, &v.e1, beta).signum() == Ordering::Less {
            return Err(Error::Inadmissible(format!("{beta}")));
        }
    }
    Ok(())
}

fn multiples_in(lo: &Rational, hi: &Rational, step: &Rational) -> impl Iterator<Item = Rational> {
    let first = (lo / step).ceil().to_integer();
    let last = (hi / step).floor().to_integer();
    let step = step.clone();
    num_iter(first, last).map(move |k| Rational::from_integer(k) * &step)
}

fn num_iter(first: BigInt, last: BigInt) -> impl Iterator<Item = BigInt> {
    let mut next = first;
    core::iter::from_fn(move || {
        (next <= last).then(|| {
            let out = next.clone();
            next += 1;
            out
        })
    })
}

/// Lattice pairs `(e0, e1)` with `e0 ∈ [e0_min, e0_max]` satisfying
/// `0 ≤ e1 − β·e0 ≤ v.e1 − β·v.e0` for every β in the interval.
///
/// Output is sorted by `(e0, e1)`.
pub fn heart_bounds(
    v: &ChernVector,
    interval: &HeartInterval,
    e0_min: &Rational,
    e0_max: &Rational,
    lattice: &Lattice,
) -> Result<Vec<(Rational, Rational)>, Error> {
    if e0_min > e0_max {
        return Err(Error::InvalidRange);
    }
    check_admissible(v, interval)?;
    let d1 = lattice.modulus(1);
    let mut out = Vec::new();
    for e0 in multiples_in(e0_min, e0_max, lattice.modulus(0)) {
        // k·d1 ≥ β·e0 and k·d1 ≤ v.e1 + β·(e0 − v.e0) at both endpoints.
        let mut k_lo: Option<BigInt> = None;
        let mut k_hi: Option<BigInt> = None;
        for beta in interval.endpoints() {
            let lower = beta.scale(&(&e0 / d1)).ceil();
            let upper = beta
                .scale(&(&e0 - &v.e0))
                .add_rational(&v.e1)
                .scale(&d1.recip())
                .floor();
            k_lo = Some(k_lo.map_or(lower.clone(), |k| k.max(lower)));
            k_hi = Some(k_hi.map_or(upper.clone(), |k| k.min(upper)));
        }
        let (Some(k_lo), Some(k_hi)) = (k_lo, k_hi) else {
            continue;
        };
        out.extend(num_iter(k_lo, k_hi).map(|k| (e0.clone(), Rational::from_integer(k) * d1)));
    }
    Ok(out)
}

/// Values of `e2(F)` making the wall of `F = (e0, e1, e2, ·)` with `v` equal
/// to a given locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum E2Solutions {
    Finite(Vec<Rational>),
    /// Every `e2` works, except possibly the one making `F` proportional to
    /// `v` in `e0..e2` (which gives no wall at all).
    All,
}

impl E2Solutions {
    pub fn is_empty(&self) -> bool {
        matches!(self, E2Solutions::Finite(v) if v.is_empty())
    }
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Inverts the wall coefficient formulas in `e2`.
///
/// The wall triple of `(e0, e1, e2)` against `v` is `A + e2·B`. It defines the
/// target locus iff it is nonzero and its cross product with the target
/// vanishes, which is affine in `e2`.
pub fn solve_e2_for_wall(
    v: &ChernVector,
    e0: &Rational,
    e1: &Rational,
    target: &WallLocus,
) -> Result<E2Solutions, Error> {
    if !target.is_realizable() {
        return Err(Error::UnrealizableWall);
    }
    let t = [target.x.clone(), target.y.clone(), target.z.clone()];
    let a = [
        (e0 * &v.e1 - &v.e0 * e1) / int(2),
        -(e0 * &v.e2),
        e1 * &v.e2,
    ];
    let b = [Rational::zero(), v.e0.clone(), -&v.e1];
    let ca = cross(&a, &t);
    let cb = cross(&b, &t);
    let nonzero_at = |e2: &Rational| (0..3).any(|i| !(&a[i] + e2 * &b[i]).is_zero());

    let Some(pivot) = (0..3).find(|&i| !cb[i].is_zero()) else {
        return Ok(if ca.iter().all(Zero::is_zero) {
            E2Solutions::All
        } else {
            E2Solutions::Finite(Vec::new())
        });
    };
    let e2 = -&ca[pivot] / &cb[pivot];
    let consistent = (0..3).all(|i| (&ca[i] + &e2 * &cb[i]).is_zero());
    Ok(E2Solutions::Finite(if consistent && nonzero_at(&e2) {
        alloc::vec![e2]
    } else {
        Vec::new()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalRayResult {
    pub beta0: Rational,
    /// `e1^{β0}(v)`.
    pub twisted_e1: Rational,
    /// Generator of the group of attainable `e1^{β0}(F)` values.
    pub step: Rational,
    /// Attainable values in `[0, e1^{β0}(v)]`, truncated to
    /// [`VerticalRayResult::LISTED`] entries.
    pub admissible: Vec<Rational>,
    pub admissible_count: BigInt,
    pub stable: bool,
    /// `e1^{β0}(v) = 0`: `v` itself has infinite slope on the ray.
    pub degenerate: bool,
}

impl VerticalRayResult {
    pub const LISTED: usize = 64;
}

/// Decides whether any subobject could have finite slope strictly between
/// `0` and `v` along the ray `β = β0`.
///
/// `e1^{β0}(F) = e1 − β0·e0` ranges over the group generated by `d1` and
/// `β0·d0`. If only `0` and `e1^{β0}(v)` are attainable in the heart, then
/// either `F` or the quotient has infinite slope for every α, so no wall can
/// cross the ray.
pub fn vertical_ray_stable(
    v: &ChernVector,
    beta0: &Rational,
    lattice: &Lattice,
) -> Result<VerticalRayResult, Error> {
    let top = &v.e1 - beta0 * &v.e0;
    if top.is_negative() {
        return Err(Error::Inadmissible(format!("{beta0}")));
    }
    let step = rational_gcd(lattice.modulus(1), &(beta0 * lattice.modulus(0)));
    let count: BigInt = (&top / &step).floor().to_integer() + 1;
    let admissible: Vec<Rational> = num_iter(BigInt::zero(), count.clone() - 1)
        .take(VerticalRayResult::LISTED)
        .map(|k| Rational::from_integer(k) * &step)
        .collect();
    let degenerate = top.is_zero();
    let stable = admissible
        .iter()
        .all(|t| t.is_zero() || *t == top)
        && count <= BigInt::from(2);
    Ok(VerticalRayResult {
        beta0: beta0.clone(),
        twisted_e1: top,
        step,
        admissible,
        admissible_count: count,
        stable,
        degenerate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRecord {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl ConstraintRecord {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        ConstraintRecord {
            name,
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateReport {
    pub e0: Rational,
    pub e1: Rational,
    pub e2_solutions: E2Solutions,
    pub constraints_log: Vec<ConstraintRecord>,
    pub induced_wall: Option<WallLocus>,
    pub matches_target: bool,
}

impl CandidateReport {
    fn sort_key(&self) -> (&Rational, &Rational, Option<&Rational>) {
        let e2 = match &self.e2_solutions {
            E2Solutions::Finite(v) => v.first(),
            E2Solutions::All => None,
        };
        (&self.e0, &self.e1, e2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    CounterexampleConfirmed,
    WallCandidateFound,
    Inconclusive,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::CounterexampleConfirmed => "CounterexampleConfirmed",
            Conclusion::WallCandidateFound => "WallCandidateFound",
            Conclusion::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Apply the rank bound `e0(F) ≥ e0(v)` valid for line bundles.
    pub line_bundle: bool,
    /// Upper end of the `e0` box; defaults to `8·|e0(v)|`.
    pub e0_max: Option<Rational>,
    /// Witness depth inside the disc: `s = r²·(1 − margin)`, `0 < margin < 1`.
    pub region_margin: Rational,
    /// Require lattice membership of candidate classes. Turning this off
    /// searches the integer box instead and skips the `e2` lattice check.
    pub enforce_lattice: bool,
    /// Drop candidates whose sub or quotient class has `Δ < 0`.
    pub discriminant_filter: bool,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            line_bundle: true,
            e0_max: None,
            region_margin: rat(3, 4),
            enforce_lattice: true,
            discriminant_filter: false,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub class: ChernVector,
    pub q_wall: WallLocus,
    pub q_shape: WallShape,
    pub vertical_line_result: Option<VerticalRayResult>,
    pub heart_interval: Option<HeartInterval>,
    pub e0_range: Option<(Rational, Rational)>,
    pub enumeration_result: Vec<CandidateReport>,
    pub conclusion: Conclusion,
    pub witness_point: Option<TiltPoint>,
    pub witness_q: Option<Rational>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn matches(&self) -> impl Iterator<Item = &CandidateReport> {
        self.enumeration_result.iter().filter(|c| c.matches_target)
    }
}

struct SearchContext<'a> {
    v: &'a ChernVector,
    target: &'a WallLocus,
    interval: &'a HeartInterval,
    lattice: &'a Lattice,
    enforce_lattice: bool,
    discriminant_filter: bool,
}

fn evaluate_candidate(ctx: &SearchContext<'_>, e0: &Rational, e1: &Rational) -> CandidateReport {
    let v = ctx.v;
    let mut log = Vec::new();
    log.push(ConstraintRecord::new(
        "heart_bounds",
        true,
        format!("0 <= e1 - beta*e0 <= e1(v) - beta*e0(v) at beta = {} and {}", ctx.interval.lo, ctx.interval.hi),
    ));
    let on_lattice = ctx.lattice.modulus(0);
    log.push(ConstraintRecord::new(
        "lattice_e0",
        (e0 / on_lattice).is_integer(),
        format!("e0 = {e0} in {on_lattice}Z"),
    ));
    let quotient_ok = ctx.interval.endpoints().iter().all(|beta| {
        twisted_e1(&(&v.e0 - e0), &(&v.e1 - e1), beta).signum() != Ordering::Less
    });
    log.push(ConstraintRecord::new(
        "quotient_admissible",
        quotient_ok,
        String::from("e1^beta(v - F) >= 0 on the interval"),
    ));

    let solutions = solve_e2_for_wall(v, e0, e1, ctx.target)
        .expect("target wall was checked to be realizable");
    let representative = match &solutions {
        E2Solutions::Finite(list) => list.first().cloned(),
        // Any e2 other than the proportional one works; pick a lattice value.
        E2Solutions::All => Some(
            [Rational::zero(), Rational::one(), int(2)]
                .into_iter()
                .map(|k| k * ctx.lattice.modulus(2))
                .find(|e2| wall_between(v, &ChernVector::new(e0.clone(), e1.clone(), e2.clone(), int(0))).is_some())
                .expect("at most one e2 is proportional"),
        ),
    };
    log.push(ConstraintRecord::new(
        "e2_solution",
        representative.is_some(),
        match &solutions {
            E2Solutions::Finite(list) if list.is_empty() => {
                String::from("no e2 reproduces the target wall")
            }
            E2Solutions::Finite(list) => format!("e2 = {}", list[0]),
            E2Solutions::All => String::from("every e2 reproduces the target wall"),
        },
    ));

    let mut matches = false;
    let mut induced_wall = None;
    if let Some(e2) = representative {
        let f = ChernVector::new(e0.clone(), e1.clone(), e2.clone(), int(0));
        induced_wall = wall_between(v, &f);
        let e2_ok = !ctx.enforce_lattice || (&e2 / ctx.lattice.modulus(2)).is_integer();
        log.push(ConstraintRecord::new(
            "lattice_e2",
            e2_ok,
            if ctx.enforce_lattice {
                format!("e2 = {e2} in {}Z", ctx.lattice.modulus(2))
            } else {
                String::from("lattice check disabled")
            },
        ));
        let identical = induced_wall
            .as_ref()
            .is_some_and(|w| w.same_locus(ctx.target));
        log.push(ConstraintRecord::new(
            "wall_identical",
            identical,
            String::from("induced wall equals the target up to scale"),
        ));
        let mut delta_ok = true;
        if ctx.discriminant_filter {
            let g = v - &f;
            delta_ok = !f.discriminant().is_negative() && !g.discriminant().is_negative();
            log.push(ConstraintRecord::new(
                "discriminant",
                delta_ok,
                format!("Delta(F) = {}, Delta(G) = {}", f.discriminant(), g.discriminant()),
            ));
        }
        matches = e2_ok && identical && delta_ok;
    }

    CandidateReport {
        e0: e0.clone(),
        e1: e1.clone(),
        e2_solutions: solutions,
        constraints_log: log,
        induced_wall,
        matches_target: matches,
    }
}

fn evaluate_all(
    ctx: &SearchContext<'_>,
    pairs: &[(Rational, Rational)],
    workers: usize,
) -> Vec<CandidateReport> {
    let mut out = evaluate_pairs(ctx, pairs, workers);
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

#[cfg(feature = "std")]
fn evaluate_pairs(
    ctx: &SearchContext<'_>,
    pairs: &[(Rational, Rational)],
    workers: usize,
) -> Vec<CandidateReport> {
    if workers <= 1 || pairs.len() < 2 {
        return pairs.iter().map(|(a, b)| evaluate_candidate(ctx, a, b)).collect();
    }
    let chunk = pairs.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|(a, b)| evaluate_candidate(ctx, a, b))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("candidate worker panicked"))
            .collect()
    })
}

#[cfg(not(feature = "std"))]
fn evaluate_pairs(
    ctx: &SearchContext<'_>,
    pairs: &[(Rational, Rational)],
    _workers: usize,
) -> Vec<CandidateReport> {
    pairs.iter().map(|(a, b)| evaluate_candidate(ctx, a, b)).collect()
}

/// Runs the counterexample pipeline on the line bundle `O(D)`.
pub fn verify_counterexample(
    variety: &Variety,
    d: &DivisorClass,
    options: &VerifyOptions,
) -> Result<VerificationReport, Error> {
    let v = variety.chern_of_line_bundle(d)?;
    verify_class(variety, &v, options)
}

/// Runs the pipeline on an arbitrary class.
///
/// 1. `W = q_wall(v)`; anything but a semicircle is inconclusive.
/// 2. Lattice argument on the vertical ray through the right end of `W`.
/// 3. Enumerate `(e0, e1)` on the β-extent of `W` (clipped to where `v` is in
///    the heart) and solve for `e2` against `W`.
/// 4. With no match, report a witness strictly inside the disc with `Q < 0`.
///
/// A confirmed result means `W` itself is not a wall for `v`. Walls for `v`
/// are nested, and `v` is stable on the ray to the right of the disc, so
/// stable points with `Q < 0` exist just inside `W`. That existence is what is
/// claimed, not stability at the witness itself.
pub fn verify_class(
    variety: &Variety,
    v: &ChernVector,
    options: &VerifyOptions,
) -> Result<VerificationReport, Error> {
    let delta = v.discriminant();
    if delta.is_negative() {
        return Err(Error::NegativeDiscriminant(delta));
    }
    let margin = &options.region_margin;
    if !margin.is_positive() || *margin >= Rational::one() {
        return Err(Error::InvalidMargin(margin.clone()));
    }
    let lattice = if options.enforce_lattice {
        variety.lattice().clone()
    } else {
        Lattice::unit()
    };

    let target = q_wall(v);
    let shape = target.shape();
    let mut report = VerificationReport {
        class: v.clone(),
        q_wall: target.clone(),
        q_shape: shape.clone(),
        vertical_line_result: None,
        heart_interval: None,
        e0_range: None,
        enumeration_result: Vec::new(),
        conclusion: Conclusion::Inconclusive,
        witness_point: None,
        witness_q: None,
        notes: Vec::new(),
    };

    let (center, radius_sq) = match shape {
        WallShape::Semicircle { center, radius_sq } => (center, radius_sq),
        WallShape::VerticalLine { .. } => {
            report
                .notes
                .push("Q = 0 is a vertical line; there is no disc to search".into());
            return Ok(report);
        }
        WallShape::Empty => {
            report
                .notes
                .push("Q = 0 has no points in the upper half plane".into());
            return Ok(report);
        }
    };
    let (_, right) = target.beta_extent().expect("semicircle has an extent");

    // (2) the ray through the right end of the disc
    let mut ray_ok = false;
    match right.as_rational() {
        Some(beta0) => match vertical_ray_stable(v, beta0, &lattice) {
            Ok(result) => {
                ray_ok = result.stable;
                if !result.stable {
                    report.notes.push(format!(
                        "ray beta = {beta0} admits intermediate twisted e1 values; no conclusion there"
                    ));
                }
                report.vertical_line_result = Some(result);
            }
            Err(_) => report
                .notes
                .push(format!("class is not in the heart on the ray beta = {beta0}")),
        },
        None => report.notes.push(format!(
            "right end of the disc beta = {right} is irrational; ray argument skipped"
        )),
    }

    // (3) the heart interval: the wall's extent where e1^beta(v) >= 0
    let interval = match heart_interval_on_wall(v, &target) {
        Some(interval) => interval,
        None => {
            report
                .notes
                .push("class is nowhere in the heart along the Q-wall".into());
            return Ok(report);
        }
    };
    let e0_max = options
        .e0_max
        .clone()
        .unwrap_or_else(|| int(8) * v.e0.abs());
    let e0_min = if options.line_bundle {
        v.e0.clone()
    } else {
        -e0_max.clone()
    };
    if e0_min > e0_max {
        return Err(Error::InvalidRange);
    }
    let pairs = heart_bounds(v, &interval, &e0_min, &e0_max, &lattice)?;
    let ctx = SearchContext {
        v,
        target: &target,
        interval: &interval,
        lattice: &lattice,
        enforce_lattice: options.enforce_lattice,
        discriminant_filter: options.discriminant_filter,
    };
    report.enumeration_result = evaluate_all(&ctx, &pairs, options.workers);
    report.heart_interval = Some(interval);
    report.e0_range = Some((e0_min, e0_max));
    if !options.enforce_lattice {
        report
            .notes
            .push("lattice constraints disabled: searching the integer box".into());
    }

    // (4)
    if report.matches().next().is_some() {
        report.conclusion = Conclusion::WallCandidateFound;
        report
            .notes
            .push("some candidate subobject induces exactly the Q-wall".into());
        return Ok(report);
    }
    let witness = TiltPoint {
        s: &radius_sq * (Rational::one() - margin),
        beta: center,
    };
    let q = v.q_form(&witness);
    let confirmed = ray_ok && q.is_negative() && witness.is_interior();
    report.witness_point = Some(witness);
    report.witness_q = Some(q);
    if confirmed {
        report.conclusion = Conclusion::CounterexampleConfirmed;
        report.notes.push(
            "no lattice subobject induces the Q-wall, so it is not a wall for the class; \
             walls are nested and the class is stable along the ray at the right end of the disc, \
             hence it stays stable at points just inside the Q-wall where Q < 0. \
             This asserts existence of such points, not stability at the witness."
                .into(),
        );
    } else {
        report
            .notes
            .push("no candidate reproduces the Q-wall, but the ray argument did not close".into());
    }
    Ok(report)
}

/// β-extent of a semicircular wall intersected with `{β : e1^β(v) ≥ 0}`.
pub fn heart_interval_on_wall(v: &ChernVector, wall: &WallLocus) -> Option<HeartInterval> {
    let (mut lo, mut hi) = wall.beta_extent()?;
    match v.e0.cmp(&Rational::zero()) {
        // e1 − β·e0 ≥ 0 ⇔ β ≤ e1/e0
        Ordering::Greater => {
            let cut = &v.e1 / &v.e0;
            if hi.cmp_rational(&cut) == Ordering::Greater {
                hi = cut.into();
            }
        }
        Ordering::Less => {
            let cut = &v.e1 / &v.e0;
            if lo.cmp_rational(&cut) == Ordering::Less {
                lo = cut.into();
            }
        }
        Ordering::Equal => {
            if v.e1.is_negative() {
                return None;
            }
        }
    }
    HeartInterval::new(lo, hi).ok()
}
