//! Central charges, and the comparison of charges on a point blow-up with
//! charges on the base through the exact transport of Chern characters.

use std::fmt;

use num::Signed;

use crate::chern::{exp_divisor, multiply, twist, ChernCharacter};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational, Slope};
use crate::ring::{blow_up_point, BlowupRing, CurveClass, DivisorClass, IntersectionRing};
use crate::tilt::StabilityParams;

/// A Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ComplexRational::new(&self.re * k, &self.im * k)
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

/// `Z = −ch₃^B + s·α²·H²·ch₁^B + Γ·ch₁^B + i·(H·ch₂^B − α²/2·H³·ch₀^B)` with `B = B₀ + βH`.
///
/// Requires `s > 1/6`.
pub fn central_charge(
    ring: &IntersectionRing,
    params: &StabilityParams,
    ch: &ChernCharacter,
) -> Result<ComplexRational> {
    params.check_ring(ring)?;
    params.require_charge_s()?;
    let tw = twist(ring, ch, &params.b())?;
    let h = &params.h;
    let h2 = ring.div_mul(h, h)?;
    let h3 = ring.pair(h, &h2)?;
    let a = &params.alpha_sq;
    let re = -&tw.ch3 + &params.s * a * ring.pair(&tw.ch1, &h2)? + ring.pair(&tw.ch1, &params.gamma)?;
    let im = ring.pair(h, &tw.ch2)? - a * rat(1, 2) * h3 * &tw.ch0;
    Ok(ComplexRational::new(re, im))
}

/// The Bridgeland slope `−Re Z / Im Z`, kept as a fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgelandSlope {
    pub numerator: Rational,
    pub denominator: Rational,
}

impl BridgelandSlope {
    pub fn value(&self) -> Slope {
        Slope::from_fraction(self.numerator.clone(), &self.denominator)
    }
}

pub fn bridgeland_slope(
    ring: &IntersectionRing,
    params: &StabilityParams,
    ch: &ChernCharacter,
) -> Result<BridgelandSlope> {
    if ch.is_zero() {
        return Err(Error::ZeroClass);
    }
    let z = central_charge(ring, params, ch)?;
    Ok(BridgelandSlope {
        numerator: -z.re,
        denominator: z.im,
    })
}

/// `3·f_*(e^{−2E}·ch·(1 + E²/6))`: the Chern character on the base of the
/// pushforward of an object on the blow-up, seen as a module over the
/// pushed-forward algebra.
pub fn transport_through_blowup(bl: &BlowupRing, ch: &ChernCharacter) -> Result<ChernCharacter> {
    let ring = bl.ring();
    ch.check_ring(ring)?;
    let e = bl.exceptional();
    let todd_like = ChernCharacter::new(
        int(1),
        ring.zero_divisor(),
        bl.exceptional_square().scale(&rat(1, 6)),
        int(0),
    );
    let shifted = multiply(ring, &exp_divisor(ring, &e.scale(&int(-2)))?, ch)?;
    let product = multiply(ring, &shifted, &todd_like)?;
    let push = bl.pushforward();
    let three = int(3);
    Ok(ChernCharacter::new(
        push.push_scalar(&product.ch0) * &three,
        push.push_divisor(&product.ch1)?.scale(&three),
        push.push_curve(&product.ch2)?.scale(&three),
        push.push_scalar(&product.ch3) * &three,
    ))
}

/// A polarized base together with its blow-up at a point and the lifted
/// classes `H̃ = f*H`, `B̃₀ = f*B₀ + 2E`, `Γ̃ = f*Γ − E²/6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupGeometry {
    pub blowup: BlowupRing,
    pub h: DivisorClass,
    pub b0: DivisorClass,
    pub gamma: CurveClass,
    pub h_tilde: DivisorClass,
    pub b0_tilde: DivisorClass,
    pub gamma_tilde: CurveClass,
}

pub fn make_blowup_geometry(
    base: &IntersectionRing,
    h: DivisorClass,
    b0: DivisorClass,
    gamma: CurveClass,
) -> Result<BlowupGeometry> {
    base.check_divisor(&h)?;
    base.check_divisor(&b0)?;
    base.check_curve(&gamma)?;
    let h3 = base.cube(&h)?;
    if !h3.is_positive() {
        return Err(Error::Precondition(format!("H^3 must be positive, got {h3}")));
    }
    let blowup = blow_up_point(base)?;
    let e = blowup.exceptional();
    let h_tilde = blowup.pull_divisor(&h)?;
    let b0_tilde = &blowup.pull_divisor(&b0)? + &e.scale(&int(2));
    let gamma_tilde = &blowup.pull_curve(&gamma)? - &blowup.exceptional_square().scale(&rat(1, 6));
    Ok(BlowupGeometry {
        blowup,
        h,
        b0,
        gamma,
        h_tilde,
        b0_tilde,
        gamma_tilde,
    })
}

impl BlowupGeometry {
    pub fn base(&self) -> &IntersectionRing {
        self.blowup.base()
    }

    pub fn ring(&self) -> &IntersectionRing {
        self.blowup.ring()
    }

    pub fn base_params(&self, alpha_sq: Rational, beta: Rational, s: Rational) -> Result<StabilityParams> {
        StabilityParams::new(self.h.clone(), self.b0.clone(), alpha_sq, beta, s, self.gamma.clone())
    }

    pub fn lifted_params(&self, alpha_sq: Rational, beta: Rational, s: Rational) -> Result<StabilityParams> {
        StabilityParams::new(
            self.h_tilde.clone(),
            self.b0_tilde.clone(),
            alpha_sq,
            beta,
            s,
            self.gamma_tilde.clone(),
        )
    }

    pub fn transport(&self, ch: &ChernCharacter) -> Result<ChernCharacter> {
        transport_through_blowup(&self.blowup, ch)
    }

    /// `Z̃_{α,β,s}` on the blow-up, built from the lifted classes.
    pub fn lifted_charge(
        &self,
        alpha_sq: &Rational,
        beta: &Rational,
        s: &Rational,
        ch: &ChernCharacter,
    ) -> Result<ComplexRational> {
        let params = self.lifted_params(alpha_sq.clone(), beta.clone(), s.clone())?;
        central_charge(self.ring(), &params, ch)
    }

    /// Compares `3·Z̃(ch)` with `Z(transport(ch))`.
    pub fn verify_factor_three(
        &self,
        alpha_sq: &Rational,
        beta: &Rational,
        s: &Rational,
        ch: &ChernCharacter,
    ) -> Result<FactorThree> {
        let lifted = self.lifted_charge(alpha_sq, beta, s, ch)?.scale(&int(3));
        let params = self.base_params(alpha_sq.clone(), beta.clone(), s.clone())?;
        let base = central_charge(self.base(), &params, &self.transport(ch)?)?;
        Ok(FactorThree {
            matches: lifted == base,
            lifted_times_three: lifted,
            base,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorThree {
    pub lifted_times_three: ComplexRational,
    pub base: ComplexRational,
    pub matches: bool,
}
