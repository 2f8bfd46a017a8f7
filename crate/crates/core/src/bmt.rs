//! The generalized Bogomolov–Gieseker inequality, the divisor counterexample
//! criterion, and the two closed-form families of counterexamples.

use num::{Signed, Zero};

use crate::blowup::central_charge;
use crate::chern::{ch_structure_sheaf_divisor, twist, ChernCharacter};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::ring::{make_contraction_ring, make_weierstrass_ring, CurveClass, DivisorClass, IntersectionRing};
use crate::tilt::StabilityParams;

/// `ch₃^B − Γ·ch₁^B − α²/6·H²·ch₁^B`; positive exactly when the inequality fails.
pub fn bmt_defect(ring: &IntersectionRing, params: &StabilityParams, ch: &ChernCharacter) -> Result<Rational> {
    params.check_ring(ring)?;
    let tw = twist(ring, ch, &params.b())?;
    let h2 = ring.div_mul(&params.h, &params.h)?;
    Ok(&tw.ch3 - ring.pair(&tw.ch1, &params.gamma)? - &params.alpha_sq * rat(1, 6) * ring.pair(&tw.ch1, &h2)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub satisfied: bool,
    /// `D³ − (D·H²)³/(4(H³)²) − 3(D²·H)²/(4D·H²) − 6Γ·D`, which equals
    /// `D·H²·(alpha_sq_upper − alpha_sq_lower)`.
    pub margin: Rational,
    pub beta0: Rational,
    /// Above this, `𝒪_D` has no semicircular wall left (a sufficient bound only).
    pub alpha_sq_lower: Rational,
    /// Below this, the defect of `𝒪_D` at `β₀` is positive.
    pub alpha_sq_upper: Rational,
    pub witness_alpha_sq: Option<Rational>,
    /// `bmt_defect(𝒪_D)` at `(witness_alpha_sq, beta0)`.
    pub witness_defect: Option<Rational>,
}

/// Tests whether `𝒪_D` violates the inequality for some `(α, β₀)` with `B₀ = 0`.
pub fn check_divisor_counterexample(
    ring: &IntersectionRing,
    d: &DivisorClass,
    h: &DivisorClass,
    gamma: &CurveClass,
) -> Result<CounterexampleReport> {
    ring.check_divisor(d)?;
    ring.check_divisor(h)?;
    ring.check_curve(gamma)?;
    let h3 = ring.cube(h)?;
    let dh2 = ring.triple(d, h, h)?;
    let d2h = ring.triple(d, d, h)?;
    let d3 = ring.cube(d)?;
    let gamma_d = ring.pair(d, gamma)?;
    if !dh2.is_positive() {
        return Err(Error::Precondition(format!("D.H^2 must be positive, got {dh2}")));
    }
    if !h3.is_positive() {
        return Err(Error::Precondition(format!("H^3 must be positive, got {h3}")));
    }
    let beta0 = -&d2h / (int(2) * &dh2);
    let lower = &dh2 * &dh2 / (int(4) * &h3 * &h3);
    let upper = &d3 / &dh2 - int(3) * &d2h * &d2h / (int(4) * &dh2 * &dh2) - int(6) * &gamma_d / &dh2;
    let margin = &d3 - &dh2 * &dh2 * &dh2 / (int(4) * &h3 * &h3) - int(3) * &d2h * &d2h / (int(4) * &dh2)
        - int(6) * &gamma_d;
    let satisfied = lower < upper;
    let (witness_alpha_sq, witness_defect) = if satisfied {
        let w = (&lower + &upper) / int(2);
        let params = StabilityParams::new(h.clone(), ring.zero_divisor(), w.clone(), beta0.clone(), int(1), gamma.clone())?;
        let defect = bmt_defect(ring, &params, &ch_structure_sheaf_divisor(ring, d)?)?;
        (Some(w), Some(defect))
    } else {
        (None, None)
    };
    Ok(CounterexampleReport {
        satisfied,
        margin,
        beta0,
        alpha_sq_lower: lower,
        alpha_sq_upper: upper,
        witness_alpha_sq,
        witness_defect,
    })
}

/// A ring with a polarization `H` and a candidate divisor `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub ring: IntersectionRing,
    pub h: DivisorClass,
    pub d: DivisorClass,
}

/// Ring of a divisorial contraction to a point with `H = mL − D`.
pub fn contraction_scenario(l3: Rational, d3: Rational, m: u32) -> Result<Scenario> {
    let h3 = contraction_h3(&l3, &d3, m)?;
    if !h3.is_positive() {
        return Err(Error::Precondition(format!(
            "m^3*L^3 must exceed D^3, got m^3*L^3 - D^3 = {h3}"
        )));
    }
    let ring = make_contraction_ring(l3, d3)?;
    let l = ring.divisor("L")?;
    let d = ring.divisor("D")?;
    let h = &l.scale(&int(m as i64)) - &d;
    Ok(Scenario { ring, h, d })
}

/// Weierstraß ring with `H = tΘ − (1+t)F` and `D = Θ`.
pub fn weierstrass_scenario(ks2: Rational, t: Rational) -> Result<Scenario> {
    if !t.is_positive() {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    let ring = make_weierstrass_ring(ks2)?;
    let theta = ring.divisor("Theta")?;
    let f = ring.divisor("F")?;
    let h = &theta.scale(&t) - &f.scale(&(int(1) + &t));
    Ok(Scenario { ring, h, d: theta })
}

fn contraction_h3(l3: &Rational, d3: &Rational, m: u32) -> Result<Rational> {
    if !l3.is_positive() || !d3.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "L^3 and D^3 must be positive, got {l3} and {d3}"
        )));
    }
    let m = int(m as i64);
    Ok(&m * &m * &m * l3 - d3)
}

/// `D³/4 − (D³)³/(4(m³L³ − D³)²)`.
pub fn contraction_margin(l3: &Rational, d3: &Rational, m: u32) -> Result<Rational> {
    let h3 = contraction_h3(l3, d3, m)?;
    if !h3.is_positive() {
        return Err(Error::Precondition(format!(
            "m^3*L^3 must exceed D^3, got m^3*L^3 - D^3 = {h3}"
        )));
    }
    Ok(d3 / int(4) - d3 * d3 * d3 / (int(4) * &h3 * &h3))
}

/// Least `m` with `m³L³ > D³` and a positive margin, i.e. `m³L³ > 2D³`.
pub fn minimal_m(l3: &Rational, d3: &Rational) -> Result<u32> {
    contraction_h3(l3, d3, 1)?;
    let mut m = 1u32;
    loop {
        if contraction_h3(l3, d3, m)?.is_positive() && contraction_margin(l3, d3, m)?.is_positive() {
            return Ok(m);
        }
        m = m
            .checked_add(1)
            .ok_or_else(|| Error::Unbounded("no admissible m below u32::MAX".into()))?;
    }
}

/// `K_S²/4·(1 − 1/(t³ + 3t² + 3t)²)`.
pub fn weierstrass_margin(ks2: &Rational, t: &Rational) -> Result<Rational> {
    if !ks2.is_positive() || !t.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "K_S^2 and t must be positive, got {ks2} and {t}"
        )));
    }
    let p = t * t * t + int(3) * t * t + int(3) * t;
    Ok(ks2 / int(4) * (int(1) - int(1) / (&p * &p)))
}

/// `(1 + t)³ > 2`.
pub fn weierstrass_threshold_ok(t: &Rational) -> bool {
    let u = int(1) + t;
    &u * &u * &u > int(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    UpperHalfPlane,
    StrictlyNegativeReal,
    /// `Im Z = 0` and `Re Z >= 0`.
    Violation,
    /// `Im Z < 0`: the negative of the class is the candidate heart object.
    LowerHalfPlane,
    ZeroClass,
}

/// Classifies `Z^Γ_{α,β,s}(ch)`. Requires `s > 1/6`.
pub fn positivity_check(ring: &IntersectionRing, params: &StabilityParams, ch: &ChernCharacter) -> Result<Positivity> {
    params.require_charge_s()?;
    if ch.is_zero() {
        return Ok(Positivity::ZeroClass);
    }
    let z = central_charge(ring, params, ch)?;
    Ok(if z.im.is_positive() {
        Positivity::UpperHalfPlane
    } else if z.im.is_zero() && z.re.is_negative() {
        Positivity::StrictlyNegativeReal
    } else if z.im.is_zero() {
        Positivity::Violation
    } else {
        Positivity::LowerHalfPlane
    })
}
