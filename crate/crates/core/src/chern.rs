//! Chern characters as graded quadruples over an [`IntersectionRing`], the twist
//! `ch^B = e^{-B}·ch`, and the characters of the sheaves that appear in the
//! counterexample and blow-up computations.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::Zero;

use crate::blowup::transport_through_blowup;
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::ring::{BlowupRing, CurveClass, DivisorClass, IntersectionRing};

/// `(ch₀, ch₁, ch₂, ch₃)` with `ch₁` a divisor class and `ch₂` a curve class.
///
/// The same type doubles as a general element of the numerical Chow ring
/// (degrees 0 through 3), which is how `e^{D}` and Todd-type correction
/// factors are represented.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    pub ch0: Rational,
    pub ch1: DivisorClass,
    pub ch2: CurveClass,
    pub ch3: Rational,
}

impl ChernCharacter {
    pub fn new(ch0: Rational, ch1: DivisorClass, ch2: CurveClass, ch3: Rational) -> Self {
        ChernCharacter { ch0, ch1, ch2, ch3 }
    }

    pub fn zero(ring: &IntersectionRing) -> Self {
        ChernCharacter::new(
            Rational::zero(),
            ring.zero_divisor(),
            ring.zero_curve(),
            Rational::zero(),
        )
    }

    /// A class with only degree-0 and degree-3 parts.
    pub fn scalar(ring: &IntersectionRing, ch0: Rational, ch3: Rational) -> Self {
        ChernCharacter::new(ch0, ring.zero_divisor(), ring.zero_curve(), ch3)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ChernCharacter::new(&self.ch0 * k, self.ch1.scale(k), self.ch2.scale(k), &self.ch3 * k)
    }

    /// True when every coordinate vanishes.
    pub fn is_zero(&self) -> bool {
        self.ch0.is_zero() && self.ch1.is_zero() && self.ch2.is_zero() && self.ch3.is_zero()
    }

    pub fn check_ring(&self, ring: &IntersectionRing) -> Result<()> {
        ring.check_divisor(&self.ch1)?;
        ring.check_curve(&self.ch2)
    }

    /// Equality of all numerical invariants: ch₀, ch₃, and the pairings of ch₁
    /// and ch₂ against the respective bases.
    pub fn numerically_equal(&self, other: &Self, ring: &IntersectionRing) -> Result<bool> {
        self.check_ring(ring)?;
        other.check_ring(ring)?;
        if self.ch0 != other.ch0 || self.ch3 != other.ch3 {
            return Ok(false);
        }
        let d1 = &self.ch1 - &other.ch1;
        for k in 0..ring.curve_rank() {
            if !ring.pair(&d1, &CurveClass::basis(ring.curve_rank(), k))?.is_zero() {
                return Ok(false);
            }
        }
        ring.curves_numerically_equal(&self.ch2, &other.ch2)
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(
            &self.ch0 + &rhs.ch0,
            &self.ch1 + &rhs.ch1,
            &self.ch2 + &rhs.ch2,
            &self.ch3 + &rhs.ch3,
        )
    }
}

impl Add for ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: ChernCharacter) -> ChernCharacter {
        &self + &rhs
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: &ChernCharacter) -> ChernCharacter {
        self + &(-rhs)
    }
}

impl Sub for ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: ChernCharacter) -> ChernCharacter {
        &self - &rhs
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        self.scale(&int(-1))
    }
}

impl Neg for ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        -&self
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "({}; [{}]; [{}]; {})",
            self.ch0,
            join(self.ch1.coefficients()),
            join(self.ch2.coefficients()),
            self.ch3
        )
    }
}

/// Product in the numerical Chow ring, truncated above degree 3.
pub fn multiply(
    ring: &IntersectionRing,
    a: &ChernCharacter,
    b: &ChernCharacter,
) -> Result<ChernCharacter> {
    a.check_ring(ring)?;
    b.check_ring(ring)?;
    let ch0 = &a.ch0 * &b.ch0;
    let ch1 = &a.ch1.scale(&b.ch0) + &b.ch1.scale(&a.ch0);
    let ch2 = &(&a.ch2.scale(&b.ch0) + &b.ch2.scale(&a.ch0)) + &ring.div_mul(&a.ch1, &b.ch1)?;
    let ch3 = &a.ch0 * &b.ch3
        + &b.ch0 * &a.ch3
        + ring.pair(&a.ch1, &b.ch2)?
        + ring.pair(&b.ch1, &a.ch2)?;
    Ok(ChernCharacter::new(ch0, ch1, ch2, ch3))
}

/// `e^D = (1, D, D²/2, D³/6)`, the Chern character of the line bundle `𝒪(D)`.
pub fn exp_divisor(ring: &IntersectionRing, d: &DivisorClass) -> Result<ChernCharacter> {
    let d2 = ring.div_mul(d, d)?;
    let d3 = ring.pair(d, &d2)?;
    Ok(ChernCharacter::new(
        int(1),
        d.clone(),
        d2.scale(&rat(1, 2)),
        d3 * rat(1, 6),
    ))
}

/// The twisted character `ch^B = e^{-B}·ch`, expanded degree by degree.
pub fn twist(ring: &IntersectionRing, ch: &ChernCharacter, b: &DivisorClass) -> Result<ChernCharacter> {
    ch.check_ring(ring)?;
    ring.check_divisor(b)?;
    let half = rat(1, 2);
    let b2 = ring.div_mul(b, b)?;
    let b3 = ring.pair(b, &b2)?;
    let b_ch1 = ring.div_mul(b, &ch.ch1)?;

    let ch1 = &ch.ch1 - &b.scale(&ch.ch0);
    let ch2 = &(&ch.ch2 - &b_ch1) + &b2.scale(&(&half * &ch.ch0));
    let ch3 = &ch.ch3 - ring.pair(b, &ch.ch2)? + ring.pair(&ch.ch1, &b2)? * &half
        - b3 * &ch.ch0 * rat(1, 6);
    Ok(ChernCharacter::new(ch.ch0.clone(), ch1, ch2, ch3))
}

/// `ch(𝒪_X) = (1, 0, 0, 0)`.
pub fn ch_structure_sheaf(ring: &IntersectionRing) -> ChernCharacter {
    ChernCharacter::scalar(ring, int(1), int(0))
}

/// `ch(𝒪_D) = (0, D, -D²/2, D³/6)` for an effective divisor `D` (effectivity is not checked).
pub fn ch_structure_sheaf_divisor(ring: &IntersectionRing, d: &DivisorClass) -> Result<ChernCharacter> {
    let d2 = ring.div_mul(d, d)?;
    let d3 = ring.pair(d, &d2)?;
    Ok(ChernCharacter::new(
        int(0),
        d.clone(),
        d2.scale(&rat(-1, 2)),
        d3 * rat(1, 6),
    ))
}

/// `ch(ℂ(x)) = (0, 0, 0, 1)`.
pub fn ch_skyscraper(ring: &IntersectionRing) -> ChernCharacter {
    ChernCharacter::scalar(ring, int(0), int(1))
}

/// `ch(𝓘_P) = (1, 0, 0, -1)`.
pub fn ch_ideal_point(ring: &IntersectionRing) -> ChernCharacter {
    ChernCharacter::scalar(ring, int(1), int(-1))
}

/// `ch(i_*𝒪_E(kE)) = e^{kE}·(1 - e^{-E})` on a blow-up.
pub fn ch_exceptional_twist(blowup: &BlowupRing, k: i64) -> Result<ChernCharacter> {
    let ring = blowup.ring();
    let e = blowup.exceptional();
    let upper = exp_divisor(ring, &e.scale(&int(k)))?;
    let lower = exp_divisor(ring, &e.scale(&int(k - 1)))?;
    Ok(&upper - &lower)
}

/// Chern character of `f_*𝒪(-2E)` on the base, read off from the transport of
/// `𝒪_{X̃}`: `Φ(𝒪) = 𝒪 ⊕ f_*𝒪(-E) ⊕ f_*𝒪(-2E)` with `f_*𝒪(-E) = 𝓘_P`.
pub fn ch_pushforward_minus_two_exceptional(blowup: &BlowupRing) -> Result<ChernCharacter> {
    let base = blowup.base();
    let phi_o = transport_through_blowup(blowup, &ch_structure_sheaf(blowup.ring()))?;
    Ok(&(&phi_o - &ch_structure_sheaf(base)) - &ch_ideal_point(base))
}

/// Chern character of the algebra `𝓑 ≅ 𝓘_Z ⊕ 𝓘_P^{⊕2} ⊕ 𝒪_X^{⊕6}` on the base,
/// where `𝓘_Z = f_*𝒪(-2E)`.
pub fn ch_algebra_b(blowup: &BlowupRing) -> Result<ChernCharacter> {
    let base = blowup.base();
    let ideal_z = ch_pushforward_minus_two_exceptional(blowup)?;
    if ideal_z.ch0 != int(1) {
        return Err(Error::Precondition(format!(
            "f_*O(-2E) has unexpected rank {}",
            ideal_z.ch0
        )));
    }
    Ok(&(&ideal_z + &ch_ideal_point(base).scale(&int(2))) + &ch_structure_sheaf(base).scale(&int(6)))
}
