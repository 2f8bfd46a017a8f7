//! Slope functions, the tilt discriminant, Λ-coordinates and the numerical
//! wall-and-chamber structure in the `(β, α)` upper half-plane.
//!
//! `α` only ever enters through `α²`, so every quantity here is an exact rational.

use std::cmp::Ordering;

use num::{Signed, Zero};

use crate::chern::{twist, ChernCharacter};
use crate::error::{Error, Result};
use crate::rational::{cmp_with_sqrt, int, rat, Rational, Slope};
use crate::ring::{CurveClass, DivisorClass, IntersectionRing};

/// Polarization, twist and charge parameters `(H, B₀, α², β, s, Γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParams {
    pub h: DivisorClass,
    pub b0: DivisorClass,
    pub alpha_sq: Rational,
    pub beta: Rational,
    pub s: Rational,
    pub gamma: CurveClass,
}

impl StabilityParams {
    pub fn new(
        h: DivisorClass,
        b0: DivisorClass,
        alpha_sq: Rational,
        beta: Rational,
        s: Rational,
        gamma: CurveClass,
    ) -> Result<Self> {
        if !alpha_sq.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "alpha^2 must be positive, got {alpha_sq}"
            )));
        }
        if h.len() != b0.len() {
            return Err(Error::DimensionMismatch {
                what: "B0",
                expected: h.len(),
                found: b0.len(),
            });
        }
        Ok(StabilityParams {
            h,
            b0,
            alpha_sq,
            beta,
            s,
            gamma,
        })
    }

    /// Parameters with `B₀ = 0`, `Γ = 0` and `s = 1`.
    pub fn untwisted(ring: &IntersectionRing, h: DivisorClass, alpha_sq: Rational, beta: Rational) -> Result<Self> {
        Self::new(h, ring.zero_divisor(), alpha_sq, beta, int(1), ring.zero_curve())
    }

    /// The full twist `B = B₀ + βH`.
    pub fn b(&self) -> DivisorClass {
        &self.b0 + &self.h.scale(&self.beta)
    }

    pub fn check_ring(&self, ring: &IntersectionRing) -> Result<()> {
        ring.check_divisor(&self.h)?;
        ring.check_divisor(&self.b0)?;
        ring.check_curve(&self.gamma)
    }

    pub(crate) fn require_charge_s(&self) -> Result<()> {
        if self.s > rat(1, 6) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("s must exceed 1/6, got {}", self.s)))
        }
    }
}

/// Λ-coordinates `(H³·ch₀, H²·ch₁, H·ch₂)` of the `B₀`-twisted character, plus `ch₃` of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaVector {
    pub v0: Rational,
    pub v1: Rational,
    pub v2: Rational,
    pub v3: Rational,
}

impl LambdaVector {
    pub fn new(v0: Rational, v1: Rational, v2: Rational, v3: Rational) -> Self {
        LambdaVector { v0, v1, v2, v3 }
    }

    /// Lattice part only, `ch₃` set to zero.
    pub fn from_triple(v0: Rational, v1: Rational, v2: Rational) -> Self {
        LambdaVector::new(v0, v1, v2, Rational::zero())
    }

    pub fn is_lattice_zero(&self) -> bool {
        self.v0.is_zero() && self.v1.is_zero() && self.v2.is_zero()
    }

    /// `v₁² − 2v₀v₂`.
    pub fn discriminant(&self) -> Rational {
        &self.v1 * &self.v1 - int(2) * &self.v0 * &self.v2
    }

    /// Numerator and denominator of `ν_{α,β}`.
    pub fn nu_parts(&self, alpha_sq: &Rational, beta: &Rational) -> (Rational, Rational) {
        let numerator = &self.v2 - beta * &self.v1
            + (beta * beta - alpha_sq) * rat(1, 2) * &self.v0;
        let denominator = &self.v1 - beta * &self.v0;
        (numerator, denominator)
    }

    pub fn nu(&self, alpha_sq: &Rational, beta: &Rational) -> Result<Slope> {
        if self.is_lattice_zero() && self.v3.is_zero() {
            return Err(Error::ZeroClass);
        }
        let (n, d) = self.nu_parts(alpha_sq, beta);
        Ok(Slope::from_fraction(n, &d))
    }

    pub fn lattice(&self) -> [Rational; 3] {
        [self.v0.clone(), self.v1.clone(), self.v2.clone()]
    }
}

impl std::ops::Sub for &LambdaVector {
    type Output = LambdaVector;
    fn sub(self, rhs: &LambdaVector) -> LambdaVector {
        LambdaVector::new(
            &self.v0 - &rhs.v0,
            &self.v1 - &rhs.v1,
            &self.v2 - &rhs.v2,
            &self.v3 - &rhs.v3,
        )
    }
}

/// Classical slope `H²·ch₁ / (H³·ch₀)`, `+∞` for torsion classes.
pub fn slope_mu(ring: &IntersectionRing, h: &DivisorClass, ch: &ChernCharacter) -> Result<Slope> {
    ch.check_ring(ring)?;
    let h2 = ring.div_mul(h, h)?;
    let h3 = ring.pair(h, &h2)?;
    if !h3.is_positive() {
        return Err(Error::Precondition(format!("H^3 must be positive, got {h3}")));
    }
    if ch.is_zero() {
        return Err(Error::ZeroClass);
    }
    let num = ring.pair(&ch.ch1, &h2)?;
    Ok(Slope::from_fraction(num, &(h3 * &ch.ch0)))
}

/// Λ-coordinates of `ch` for the fixed `(H, B₀)`.
pub fn to_lambda(
    ring: &IntersectionRing,
    h: &DivisorClass,
    b0: &DivisorClass,
    ch: &ChernCharacter,
) -> Result<LambdaVector> {
    let tw = twist(ring, ch, b0)?;
    let h2 = ring.div_mul(h, h)?;
    let h3 = ring.pair(h, &h2)?;
    Ok(LambdaVector::new(
        h3 * &tw.ch0,
        ring.pair(&tw.ch1, &h2)?,
        ring.pair(h, &tw.ch2)?,
        tw.ch3,
    ))
}

/// Tilt slope `ν_{α,β} = (H·ch₂^B − α²/2·H³·ch₀^B) / (H²·ch₁^B)`, `+∞` on a zero denominator.
pub fn slope_nu(ring: &IntersectionRing, params: &StabilityParams, ch: &ChernCharacter) -> Result<Slope> {
    params.check_ring(ring)?;
    if ch.is_zero() {
        return Err(Error::ZeroClass);
    }
    let tw = twist(ring, ch, &params.b())?;
    let h = &params.h;
    let h2 = ring.div_mul(h, h)?;
    let h3 = ring.pair(h, &h2)?;
    let numerator = ring.pair(h, &tw.ch2)? - &params.alpha_sq * rat(1, 2) * h3 * &tw.ch0;
    let denominator = ring.pair(&tw.ch1, &h2)?;
    Ok(Slope::from_fraction(numerator, &denominator))
}

/// `Δ = (H²·ch₁^{B₀})² − 2(H³·ch₀^{B₀})(H·ch₂^{B₀})`.
pub fn discriminant(
    ring: &IntersectionRing,
    h: &DivisorClass,
    b0: &DivisorClass,
    ch: &ChernCharacter,
) -> Result<Rational> {
    Ok(to_lambda(ring, h, b0, ch)?.discriminant())
}

/// A numerical wall for a fixed class `v`, in the `(β, α)` half-plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Wall {
    /// `(β − center)² + α² = radius_sq`.
    Semicircle { center: Rational, radius_sq: Rational },
    Vertical { beta: Rational },
    /// `v` and `w` are proportional in Λ and share every slope.
    Everywhere,
    Empty,
}

impl Wall {
    /// Whether the point `(β, α²)` with `α² > 0` lies on the wall.
    pub fn contains(&self, alpha_sq: &Rational, beta: &Rational) -> bool {
        if !alpha_sq.is_positive() {
            return false;
        }
        match self {
            Wall::Semicircle { center, radius_sq } => {
                let d = beta - center;
                &d * &d + alpha_sq == *radius_sq
            }
            Wall::Vertical { beta: b } => b == beta,
            Wall::Everywhere => true,
            Wall::Empty => false,
        }
    }

    /// Whether two semicircles share a point with `α > 0`.
    pub fn semicircles_meet(&self, other: &Wall) -> Option<bool> {
        let (Wall::Semicircle { center: c1, radius_sq: r1 }, Wall::Semicircle { center: c2, radius_sq: r2 }) =
            (self, other)
        else {
            return None;
        };
        if c1 == c2 {
            return Some(r1 == r2);
        }
        let beta = (r1 - r2 + c2 * c2 - c1 * c1) / (int(2) * (c2 - c1));
        let d = &beta - c1;
        Some((r1 - &d * &d).is_positive())
    }
}

/// Coefficients of the wall equation `c₀₁(β² + α²)/2 − c₀₂β + c₁₂ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallEquation {
    pub c01: Rational,
    pub c02: Rational,
    pub c12: Rational,
}

impl WallEquation {
    pub fn new(v: &LambdaVector, w: &LambdaVector) -> Self {
        WallEquation {
            c01: &v.v0 * &w.v1 - &v.v1 * &w.v0,
            c02: &v.v0 * &w.v2 - &v.v2 * &w.v0,
            c12: &v.v1 * &w.v2 - &v.v2 * &w.v1,
        }
    }

    /// `c₀₂/c₀₁`, when the equation describes a circle.
    pub fn center(&self) -> Option<Rational> {
        (!self.c01.is_zero()).then(|| &self.c02 / &self.c01)
    }

    /// `center² − 2c₁₂/c₀₁`, when the equation describes a circle.
    pub fn radius_sq(&self) -> Option<Rational> {
        let c = self.center()?;
        Some(&c * &c - int(2) * &self.c12 / &self.c01)
    }

    /// Value of `ν(v)·D(w) − ν(w)·D(v)` cross-multiplied, up to sign; zero exactly on the wall.
    pub fn evaluate(&self, alpha_sq: &Rational, beta: &Rational) -> Rational {
        &self.c01 * (beta * beta + alpha_sq) * rat(1, 2) - &self.c02 * beta + &self.c12
    }

    pub fn classify(&self) -> Wall {
        if self.c01.is_zero() {
            if self.c02.is_zero() {
                if self.c12.is_zero() {
                    Wall::Everywhere
                } else {
                    Wall::Empty
                }
            } else {
                Wall::Vertical {
                    beta: &self.c12 / &self.c02,
                }
            }
        } else {
            let center = self.center().unwrap();
            let radius_sq = self.radius_sq().unwrap();
            if radius_sq.is_positive() {
                Wall::Semicircle { center, radius_sq }
            } else {
                Wall::Empty
            }
        }
    }
}

/// The numerical wall `ν_{α,β}(v) = ν_{α,β}(w)`.
pub fn wall(v: &LambdaVector, w: &LambdaVector) -> Result<Wall> {
    if v.is_lattice_zero() || w.is_lattice_zero() {
        return Err(Error::ZeroClass);
    }
    Ok(WallEquation::new(v, w).classify())
}

/// The unique numerical vertical wall `β = v₁/v₀`, if `v₀ ≠ 0`.
pub fn vertical_wall(v: &LambdaVector) -> Result<Option<Rational>> {
    if v.is_lattice_zero() {
        return Err(Error::ZeroClass);
    }
    Ok((!v.v0.is_zero()).then(|| &v.v1 / &v.v0))
}

/// Upper bound for `ρ²` of a semicircular wall destabilizing `v` by a subobject of
/// rank `subobject_rank`: `Δ(v) / (4·r_F·(r_F − v₀))` with `r_F = rank·H³`.
pub fn radius_bound_higher_rank(v: &LambdaVector, h3: &Rational, subobject_rank: u32) -> Result<Rational> {
    if v.is_lattice_zero() {
        return Err(Error::ZeroClass);
    }
    let rf = int(subobject_rank as i64) * h3;
    if v.v0.is_negative() || rf <= v.v0 {
        return Err(Error::Precondition(format!(
            "need rank*H^3 > v0 >= 0, got rank*H^3 = {rf}, v0 = {}",
            v.v0
        )));
    }
    Ok(v.discriminant() / (int(4) * &rf * (&rf - &v.v0)))
}

/// Solution set of `ν_{α,β}(v) = 0` on a vertical line `β = const`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NuZero {
    AlphaSq(Rational),
    /// `v₀ = 0` and the numerator vanishes independently of `α`.
    EveryAlpha,
    Never,
}

pub fn nu_zero_alpha_sq(v: &LambdaVector, beta: &Rational) -> Result<NuZero> {
    if v.is_lattice_zero() {
        return Err(Error::ZeroClass);
    }
    let denominator = &v.v1 - beta * &v.v0;
    if denominator.is_zero() {
        return Ok(NuZero::Never);
    }
    if v.v0.is_zero() {
        let numerator = &v.v2 - beta * &v.v1;
        return Ok(if numerator.is_zero() {
            NuZero::EveryAlpha
        } else {
            NuZero::Never
        });
    }
    let alpha_sq = beta * beta + int(2) * (&v.v2 - beta * &v.v1) / &v.v0;
    Ok(if alpha_sq.is_positive() {
        NuZero::AlphaSq(alpha_sq)
    } else {
        NuZero::Never
    })
}

/// Search window in the `(β, α²)` half-plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub beta_min: Rational,
    pub beta_max: Rational,
    pub alpha_sq_max: Rational,
}

/// Bounds on candidate destabilizers: rank in `0..=max_rank` (so `w₀ = rank·H³`)
/// and `|w₁| <= max_ch1`. `w₂` runs over `½ℤ` within the range forced by the
/// remaining constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_rank: u32,
    pub max_ch1: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateWall {
    pub w: [Rational; 3],
    pub center: Rational,
    pub radius_sq: Rational,
}

impl Region {
    fn validate(&self) -> Result<()> {
        if self.beta_min >= self.beta_max || !self.alpha_sq_max.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "empty region: beta in [{}, {}], alpha^2 <= {}",
                self.beta_min, self.beta_max, self.alpha_sq_max
            )));
        }
        Ok(())
    }

    /// Whether the semicircle has a point with `β ∈ [β_min, β_max]` and `0 < α² <= α²_max`.
    fn meets_semicircle(&self, center: &Rational, radius_sq: &Rational) -> bool {
        // (β_min - c) < R and (c - β_max) < R
        let lt_radius = |x: &Rational| cmp_with_sqrt(x, radius_sq) == Ordering::Less;
        let ge_radius = |x: &Rational| cmp_with_sqrt(x, radius_sq) != Ordering::Less;
        if !lt_radius(&(&self.beta_min - center)) || !lt_radius(&(center - &self.beta_max)) {
            return false;
        }
        // an open end of the arc inside the window reaches α² → 0
        if ge_radius(&(center - &self.beta_min)) || ge_radius(&(&self.beta_max - center)) {
            return true;
        }
        let dl = &self.beta_min - center;
        let dr = &self.beta_max - center;
        let far = std::cmp::max(&dl * &dl, &dr * &dr);
        radius_sq - far <= self.alpha_sq_max
    }
}

/// `a − βb >= 0` for every `β` in the arc `(c − R, c + R)`.
fn nonneg_on_arc(a: &Rational, b: &Rational, center: &Rational, radius_sq: &Rational) -> bool {
    let at_center = a - center * b;
    !at_center.is_negative() && &at_center * &at_center >= b * b * radius_sq
}

#[derive(Default)]
struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
}

impl Interval {
    fn at_least(&mut self, x: Rational) {
        if self.lo.as_ref().is_none_or(|lo| &x > lo) {
            self.lo = Some(x);
        }
    }

    fn at_most(&mut self, x: Rational) {
        if self.hi.as_ref().is_none_or(|hi| &x < hi) {
            self.hi = Some(x);
        }
    }

    /// Adds the constraint `slope·t + offset <= 0`.
    fn linear_nonpos(&mut self, slope: &Rational, offset: &Rational) {
        if slope.is_positive() {
            self.at_most(-offset / slope);
        } else if slope.is_negative() {
            self.at_least(-offset / slope);
        }
    }
}

/// Range of admissible `w₂` for fixed `(w₀, w₁)`, or `None` if the slice is
/// empty for reasons independent of `w₂`.
fn w2_range(v: &LambdaVector, w0: &Rational, w1: &Rational) -> Result<Option<(Rational, Rational)>> {
    let two = int(2);
    let c01 = &v.v0 * w1 - &v.v1 * w0;
    if c01.is_zero() {
        return Ok(None);
    }
    let d0 = &v.v0 - w0;
    let d1 = &v.v1 - w1;
    let mut t = Interval::default();

    // Δ(w) >= 0
    if w0.is_positive() {
        t.at_most(w1 * w1 / (&two * w0));
    }
    // Δ(v − w) >= 0
    if d0.is_positive() {
        t.at_least(&v.v2 - &d1 * &d1 / (&two * &d0));
    } else if d0.is_negative() {
        t.at_most(&v.v2 + &d1 * &d1 / (&two * -&d0));
    }

    // β-window where 0 <= H²ch₁^β(w) <= H²ch₁^β(v)
    let mut window = Interval::default();
    for (a, b) in [(w1, w0), (&d1, &d0)] {
        if b.is_zero() {
            if a.is_negative() {
                return Ok(None);
            }
        } else if b.is_positive() {
            window.at_most(a / b);
        } else {
            window.at_least(a / b);
        }
    }
    if let (Some(lo), Some(hi)) = (&window.lo, &window.hi) {
        if lo >= hi {
            return Ok(None);
        }
    }

    // center(t) = (v0·t − v2·w0)/c01
    let slope = &v.v0 / &c01;
    let offset = -(&v.v2 * w0) / &c01;
    if !v.v0.is_zero() {
        if let Some(hi) = &window.hi {
            t.linear_nonpos(&slope, &(&offset - hi));
        }
        if let Some(lo) = &window.lo {
            t.linear_nonpos(&-&slope, &(lo - &offset));
        }
    } else {
        // concentric walls: radius²(t) = c² − 2(v1·t − v2·w1)/c01 is affine in t
        let c = offset;
        let r_slope = -(&two * &v.v1) / &c01;
        let r_offset = &c * &c + &two * &v.v2 * w1 / &c01;
        // radius² > 0
        t.linear_nonpos(&-&r_slope, &-&r_offset);
        if let Some(hi) = &window.hi {
            let room = hi - &c;
            if room.is_negative() {
                return Ok(None);
            }
            t.linear_nonpos(&r_slope, &(&r_offset - &room * &room));
        }
        if let Some(lo) = &window.lo {
            let room = &c - lo;
            if room.is_negative() {
                return Ok(None);
            }
            t.linear_nonpos(&r_slope, &(&r_offset - &room * &room));
        }
    }

    match (t.lo, t.hi) {
        (Some(lo), Some(hi)) => Ok((lo <= hi).then_some((lo, hi))),
        _ => Err(Error::Unbounded(format!(
            "no finite range for w2 at w0 = {w0}, w1 = {w1}"
        ))),
    }
}

/// Enumerates numerical semicircular walls for `v` produced by candidate
/// destabilizers `w = (rank·H³, w₁, w₂)` with `w₁ ∈ ℤ`, `w₂ ∈ ½ℤ`.
///
/// A candidate is kept when `Δ(w) >= 0`, `Δ(v − w) >= 0`, the wall is a
/// semicircle meeting `region`, and `0 <= H²·ch₁^β(w) <= H²·ch₁^β(v)` along the
/// whole wall (so that `w` can be a subobject of `v` in the tilted heart).
/// Walls are deduplicated by `(center, radius²)` keeping the lexicographically
/// least `w`, and returned by descending radius. These are numerical walls only.
pub fn enumerate_candidate_walls(
    v: &LambdaVector,
    h3: &Rational,
    region: &Region,
    caps: &Caps,
) -> Result<Vec<CandidateWall>> {
    region.validate()?;
    if v.is_lattice_zero() {
        return Err(Error::ZeroClass);
    }
    if !h3.is_positive() {
        return Err(Error::Precondition(format!("H^3 must be positive, got {h3}")));
    }
    let half = rat(1, 2);
    let mut found: Vec<CandidateWall> = Vec::new();
    for rank in 0..=caps.max_rank {
        let w0 = int(rank as i64) * h3;
        for w1 in -caps.max_ch1..=caps.max_ch1 {
            let w1 = int(w1);
            let Some((lo, hi)) = w2_range(v, &w0, &w1)? else {
                continue;
            };
            let first = (&lo * int(2)).ceil().to_integer();
            let last = (&hi * int(2)).floor().to_integer();
            let mut k = first;
            while k <= last {
                let w2 = Rational::from_integer(k.clone()) * &half;
                k += 1;
                let w = LambdaVector::from_triple(w0.clone(), w1.clone(), w2);
                if w.discriminant().is_negative() || (v - &w).discriminant().is_negative() {
                    continue;
                }
                let Wall::Semicircle { center, radius_sq } = WallEquation::new(v, &w).classify() else {
                    continue;
                };
                if !region.meets_semicircle(&center, &radius_sq) {
                    continue;
                }
                let d = v - &w;
                if !nonneg_on_arc(&w.v1, &w.v0, &center, &radius_sq)
                    || !nonneg_on_arc(&d.v1, &d.v0, &center, &radius_sq)
                {
                    continue;
                }
                found.push(CandidateWall {
                    w: w.lattice(),
                    center,
                    radius_sq,
                });
            }
        }
    }
    found.sort_by(|a, b| {
        (&a.center, &a.radius_sq, &a.w).cmp(&(&b.center, &b.radius_sq, &b.w))
    });
    found.dedup_by(|later, earlier| later.center == earlier.center && later.radius_sq == earlier.radius_sq);
    found.sort_by(|a, b| {
        b.radius_sq
            .cmp(&a.radius_sq)
            .then_with(|| a.center.cmp(&b.center))
            .then_with(|| a.w.cmp(&b.w))
    });
    Ok(found)
}
