//! Numerical intersection rings of smooth projective threefolds.
//!
//! A ring is presented by a divisor basis of N¹, a curve basis of N₁, structure
//! constants expressing each product `Dᵢ·Dⱼ` as a curve-basis vector, and the
//! divisor–curve pairing matrix. Curve classes are coordinate vectors over the
//! declared curve basis; two curve classes are numerically equal when they pair
//! identically against every basis divisor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};

use crate::error::{check_len, Error, Result};
use crate::rational::{int, Rational};

macro_rules! coordinate_class {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(Vec<Rational>);

        impl $name {
            pub fn new(coefficients: Vec<Rational>) -> Self {
                $name(coefficients)
            }

            pub fn zero(len: usize) -> Self {
                $name(vec![Rational::zero(); len])
            }

            /// The `index`-th basis vector of a basis of size `len`.
            pub fn basis(len: usize, index: usize) -> Self {
                let mut v = vec![Rational::zero(); len];
                v[index] = int(1);
                $name(v)
            }

            pub fn coefficients(&self) -> &[Rational] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            pub fn scale(&self, k: &Rational) -> Self {
                $name(self.0.iter().map(|c| c * k).collect())
            }

            fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
                assert_eq!(
                    self.0.len(),
                    other.0.len(),
                    concat!(stringify!($name), " length mismatch")
                );
                $name(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                self.zip_with(rhs, |a, b| a + b)
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                self.zip_with(rhs, |a, b| a - b)
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|c| -c).collect())
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        impl Mul<&$name> for &Rational {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                rhs.scale(self)
            }
        }
    };
}

coordinate_class!(
    /// A divisor class as a rational vector over the ring's divisor basis.
    DivisorClass
);
coordinate_class!(
    /// A curve class as a rational vector over the ring's curve basis.
    CurveClass
);

/// Numerical Chow ring data of a threefold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRing {
    divisor_names: Vec<String>,
    curve_names: Vec<String>,
    /// `mult[i][j]` is `Dᵢ·Dⱼ` over the curve basis.
    mult: Vec<Vec<CurveClass>>,
    /// `pairing[i][k]` is `Dᵢ·Cₖ`.
    pairing: Vec<Vec<Rational>>,
}

/// A single well-formedness problem found by [`IntersectionRing::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    AsymmetricProduct { i: usize, j: usize },
    InconsistentTriple {
        indices: [usize; 3],
        values: Vec<Rational>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(msg) => write!(f, "shape: {msg}"),
            Violation::AsymmetricProduct { i, j } => {
                write!(f, "mult(D{i}, D{j}) != mult(D{j}, D{i})")
            }
            Violation::InconsistentTriple { indices, values } => {
                let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(
                    f,
                    "triple product of (D{}, D{}, D{}) depends on evaluation order: [{}]",
                    indices[0],
                    indices[1],
                    indices[2],
                    vals.join(", ")
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl IntersectionRing {
    /// Assembles a ring from raw tables. Only shapes are checked here; use
    /// [`validate`](Self::validate) for the symmetry conditions.
    pub fn new(
        divisor_names: Vec<String>,
        curve_names: Vec<String>,
        mult: Vec<Vec<CurveClass>>,
        pairing: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = divisor_names.len();
        let m = curve_names.len();
        check_len("mult rows", n, mult.len())?;
        for row in &mult {
            check_len("mult columns", n, row.len())?;
            for c in row {
                check_len("mult entry", m, c.len())?;
            }
        }
        check_len("pairing rows", n, pairing.len())?;
        for row in &pairing {
            check_len("pairing columns", m, row.len())?;
        }
        Ok(IntersectionRing {
            divisor_names,
            curve_names,
            mult,
            pairing,
        })
    }

    /// Builds the ring determined by a symmetric cubic form on the divisor basis.
    ///
    /// The curve basis is the set of products `Dᵢ·Dⱼ` with `i <= j`, named `"A^2"` or `"A*B"`.
    pub fn from_cubic_form<F>(names: &[&str], triple: F) -> Self
    where
        F: Fn(usize, usize, usize) -> Rational,
    {
        let n = names.len();
        let mut pairs = Vec::new();
        let mut curve_names = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
                curve_names.push(if i == j {
                    format!("{}^2", names[i])
                } else {
                    format!("{}*{}", names[i], names[j])
                });
            }
        }
        let m = pairs.len();
        let index = |i: usize, j: usize| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            pairs.iter().position(|&p| p == (a, b)).unwrap()
        };
        let mult = (0..n)
            .map(|i| (0..n).map(|j| CurveClass::basis(m, index(i, j))).collect())
            .collect();
        let pairing = (0..n)
            .map(|i| pairs.iter().map(|&(j, k)| triple(i, j, k)).collect())
            .collect();
        IntersectionRing {
            divisor_names: names.iter().map(|s| s.to_string()).collect(),
            curve_names,
            mult,
            pairing,
        }
    }

    /// Picard-rank-one ring generated by `H` with `H³ = h3`.
    pub fn polarized(h3: Rational) -> Result<Self> {
        if !h3.is_positive() {
            return Err(Error::Precondition(format!("H^3 must be positive, got {h3}")));
        }
        Ok(Self::from_cubic_form(&["H"], move |_, _, _| h3.clone()))
    }

    pub fn divisor_rank(&self) -> usize {
        self.divisor_names.len()
    }

    pub fn curve_rank(&self) -> usize {
        self.curve_names.len()
    }

    pub fn divisor_names(&self) -> &[String] {
        &self.divisor_names
    }

    pub fn curve_names(&self) -> &[String] {
        &self.curve_names
    }

    pub fn divisor_index(&self, name: &str) -> Result<usize> {
        self.divisor_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn curve_index(&self, name: &str) -> Result<usize> {
        self.curve_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn divisor(&self, name: &str) -> Result<DivisorClass> {
        Ok(DivisorClass::basis(self.divisor_rank(), self.divisor_index(name)?))
    }

    pub fn curve(&self, name: &str) -> Result<CurveClass> {
        Ok(CurveClass::basis(self.curve_rank(), self.curve_index(name)?))
    }

    pub fn zero_divisor(&self) -> DivisorClass {
        DivisorClass::zero(self.divisor_rank())
    }

    pub fn zero_curve(&self) -> CurveClass {
        CurveClass::zero(self.curve_rank())
    }

    pub fn mult_table(&self) -> &[Vec<CurveClass>] {
        &self.mult
    }

    pub fn pairing_table(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    pub(crate) fn check_divisor(&self, d: &DivisorClass) -> Result<()> {
        check_len("divisor class", self.divisor_rank(), d.len())
    }

    pub(crate) fn check_curve(&self, c: &CurveClass) -> Result<()> {
        check_len("curve class", self.curve_rank(), c.len())
    }

    /// Intersection product of two divisors as a curve class.
    pub fn div_mul(&self, a: &DivisorClass, b: &DivisorClass) -> Result<CurveClass> {
        self.check_divisor(a)?;
        self.check_divisor(b)?;
        let mut out = vec![Rational::zero(); self.curve_rank()];
        for (i, ai) in a.coefficients().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coefficients().iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = ai * bj;
                for (o, c) in out.iter_mut().zip(self.mult[i][j].coefficients()) {
                    *o += &w * c;
                }
            }
        }
        Ok(CurveClass::new(out))
    }

    /// Degree of the divisor–curve intersection `D·C`.
    pub fn pair(&self, d: &DivisorClass, c: &CurveClass) -> Result<Rational> {
        self.check_divisor(d)?;
        self.check_curve(c)?;
        let mut total = Rational::zero();
        for (i, di) in d.coefficients().iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            for (k, ck) in c.coefficients().iter().enumerate() {
                total += di * ck * &self.pairing[i][k];
            }
        }
        Ok(total)
    }

    /// The triple intersection `A·B·C`, defined as `pair(A, div_mul(B, C))`.
    pub fn triple(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Result<Rational> {
        self.pair(a, &self.div_mul(b, c)?)
    }

    /// `D³` shorthand.
    pub fn cube(&self, d: &DivisorClass) -> Result<Rational> {
        self.triple(d, d, d)
    }

    /// Pairings of `c` against every basis divisor.
    pub fn curve_degrees(&self, c: &CurveClass) -> Result<Vec<Rational>> {
        (0..self.divisor_rank())
            .map(|i| self.pair(&DivisorClass::basis(self.divisor_rank(), i), c))
            .collect()
    }

    pub fn curves_numerically_equal(&self, a: &CurveClass, b: &CurveClass) -> Result<bool> {
        self.curve_is_numerically_zero(&(a - b))
    }

    pub fn curve_is_numerically_zero(&self, c: &CurveClass) -> Result<bool> {
        Ok(self.curve_degrees(c)?.iter().all(Zero::is_zero))
    }

    /// Reports every violated shape, symmetry or consistency constraint.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.divisor_rank();
        let m = self.curve_rank();
        if self.mult.len() != n || self.mult.iter().any(|r| r.len() != n) {
            violations.push(Violation::Shape("mult is not an n x n table".into()));
        }
        if self.mult.iter().flatten().any(|c| c.len() != m) {
            violations.push(Violation::Shape("mult entry length differs from curve basis".into()));
        }
        if self.pairing.len() != n || self.pairing.iter().any(|r| r.len() != m) {
            violations.push(Violation::Shape("pairing is not an n x m matrix".into()));
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.mult[i][j] != self.mult[j][i] {
                    violations.push(Violation::AsymmetricProduct { i, j });
                }
            }
        }
        let dot = |i: usize, c: &CurveClass| -> Rational {
            c.coefficients()
                .iter()
                .zip(&self.pairing[i])
                .map(|(a, b)| a * b)
                .sum()
        };
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let values = [
                        dot(i, &self.mult[j][k]),
                        dot(i, &self.mult[k][j]),
                        dot(j, &self.mult[i][k]),
                        dot(j, &self.mult[k][i]),
                        dot(k, &self.mult[i][j]),
                        dot(k, &self.mult[j][i]),
                    ];
                    if values.iter().any(|v| v != &values[0]) {
                        violations.push(Violation::InconsistentTriple {
                            indices: [i, j, k],
                            values: values.to_vec(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

/// Ring of a threefold with a divisor `D` contracted to a point, in the basis
/// `{L, D}` where `L` is pulled back from the contraction and `L·D = 0`.
pub fn make_contraction_ring(l3: Rational, d3: Rational) -> Result<IntersectionRing> {
    if !l3.is_positive() {
        return Err(Error::Precondition(format!("L^3 must be positive, got {l3}")));
    }
    if d3.is_zero() {
        return Err(Error::Precondition("D^3 must be non-zero".into()));
    }
    Ok(IntersectionRing::from_cubic_form(&["L", "D"], move |i, j, k| {
        match (i, j, k) {
            (0, 0, 0) => l3.clone(),
            (1, 1, 1) => d3.clone(),
            _ => Rational::zero(),
        }
    }))
}

/// Ring of a Weierstraß elliptic threefold over a surface with `K_S² = ks2`, in
/// the basis `{Theta, F}` with `F = p*K_S`.
///
/// `Θ³ = Θ²F = ΘF² = K_S²` and `F³ = 0`. Degrees outside `1..=9` are accepted;
/// see [`is_del_pezzo_degree`].
pub fn make_weierstrass_ring(ks2: Rational) -> Result<IntersectionRing> {
    if !ks2.is_positive() {
        return Err(Error::Precondition(format!("K_S^2 must be positive, got {ks2}")));
    }
    Ok(IntersectionRing::from_cubic_form(&["Theta", "F"], move |i, j, k| {
        if i + j + k == 3 {
            Rational::zero()
        } else {
            ks2.clone()
        }
    }))
}

/// Whether `ks2` is the degree of a del Pezzo surface (an integer in `1..=9`).
pub fn is_del_pezzo_degree(ks2: &Rational) -> bool {
    ks2.is_integer() && *ks2 >= int(1) && *ks2 <= int(9)
}

/// A linear map of numerical classes induced by a morphism of threefolds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMorphism {
    /// Image of each source divisor basis vector.
    divisor_images: Vec<DivisorClass>,
    /// Image of each source curve basis vector.
    curve_images: Vec<CurveClass>,
    target_divisor_rank: usize,
    target_curve_rank: usize,
    /// Degree of the map on points (and on fundamental classes).
    degree: Rational,
}

impl RingMorphism {
    pub fn new(
        divisor_images: Vec<DivisorClass>,
        curve_images: Vec<CurveClass>,
        target_divisor_rank: usize,
        target_curve_rank: usize,
        degree: Rational,
    ) -> Result<Self> {
        for d in &divisor_images {
            check_len("divisor image", target_divisor_rank, d.len())?;
        }
        for c in &curve_images {
            check_len("curve image", target_curve_rank, c.len())?;
        }
        Ok(RingMorphism {
            divisor_images,
            curve_images,
            target_divisor_rank,
            target_curve_rank,
            degree,
        })
    }

    pub fn degree(&self) -> &Rational {
        &self.degree
    }

    pub fn push_divisor(&self, d: &DivisorClass) -> Result<DivisorClass> {
        check_len("divisor class", self.divisor_images.len(), d.len())?;
        let mut out = DivisorClass::zero(self.target_divisor_rank);
        for (c, img) in d.coefficients().iter().zip(&self.divisor_images) {
            out = out + img.scale(c);
        }
        Ok(out)
    }

    pub fn push_curve(&self, c: &CurveClass) -> Result<CurveClass> {
        check_len("curve class", self.curve_images.len(), c.len())?;
        let mut out = CurveClass::zero(self.target_curve_rank);
        for (k, img) in c.coefficients().iter().zip(&self.curve_images) {
            out = out + img.scale(k);
        }
        Ok(out)
    }

    pub fn push_scalar(&self, r: &Rational) -> Rational {
        r * &self.degree
    }
}

/// The blow-up `f: X̃ → X` of a threefold at a point, numerically.
///
/// The divisor basis is `{f*D₁, …, f*Dₙ, E}` and the curve basis is
/// `{f*C₁, …, f*Cₘ, E²}`, where `f*Cₖ` denotes the curve class pairing with
/// `f*Dᵢ` as `Cₖ` does with `Dᵢ` and trivially with `E`. All products of a
/// pulled-back divisor with `E` vanish and `E³ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRing {
    base: IntersectionRing,
    ring: IntersectionRing,
    pushforward: RingMorphism,
}

impl BlowupRing {
    pub fn base(&self) -> &IntersectionRing {
        &self.base
    }

    pub fn ring(&self) -> &IntersectionRing {
        &self.ring
    }

    pub fn pushforward(&self) -> &RingMorphism {
        &self.pushforward
    }

    /// Index of `E` in the blow-up divisor basis.
    pub fn exceptional_index(&self) -> usize {
        self.base.divisor_rank()
    }

    pub fn exceptional(&self) -> DivisorClass {
        DivisorClass::basis(self.ring.divisor_rank(), self.exceptional_index())
    }

    /// The curve class `E²`.
    pub fn exceptional_square(&self) -> CurveClass {
        CurveClass::basis(self.ring.curve_rank(), self.base.curve_rank())
    }

    pub fn pull_divisor(&self, d: &DivisorClass) -> Result<DivisorClass> {
        self.base.check_divisor(d)?;
        let mut v = d.coefficients().to_vec();
        v.push(Rational::zero());
        Ok(DivisorClass::new(v))
    }

    pub fn pull_curve(&self, c: &CurveClass) -> Result<CurveClass> {
        self.base.check_curve(c)?;
        let mut v = c.coefficients().to_vec();
        v.push(Rational::zero());
        Ok(CurveClass::new(v))
    }

    pub fn into_parts(self) -> (IntersectionRing, RingMorphism) {
        (self.ring, self.pushforward)
    }
}

/// Blows up `base` at a point.
pub fn blow_up_point(base: &IntersectionRing) -> Result<BlowupRing> {
    let report = base.validate();
    if !report.is_empty() {
        return Err(Error::Precondition(format!(
            "base ring is not well-formed: {}",
            report.violations[0]
        )));
    }
    let n = base.divisor_rank();
    let m = base.curve_rank();
    let e_sq = CurveClass::basis(m + 1, m);
    let pad = |c: &CurveClass| {
        let mut v = c.coefficients().to_vec();
        v.push(Rational::zero());
        CurveClass::new(v)
    };

    let mut mult = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            row.push(match (i == n, j == n) {
                (false, false) => pad(&base.mult[i][j]),
                (true, true) => e_sq.clone(),
                _ => CurveClass::zero(m + 1),
            });
        }
        mult.push(row);
    }
    let mut pairing = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = base.pairing[i].clone();
        row.push(Rational::zero());
        pairing.push(row);
    }
    let mut e_row = vec![Rational::zero(); m];
    e_row.push(int(1));
    pairing.push(e_row);

    let mut divisor_names: Vec<String> =
        base.divisor_names.iter().map(|s| format!("f*{s}")).collect();
    divisor_names.push("E".into());
    let mut curve_names: Vec<String> = base.curve_names.iter().map(|s| format!("f*{s}")).collect();
    curve_names.push("E^2".into());

    let ring = IntersectionRing::new(divisor_names, curve_names, mult, pairing)?;

    let mut divisor_images: Vec<DivisorClass> = (0..n).map(|i| DivisorClass::basis(n, i)).collect();
    divisor_images.push(DivisorClass::zero(n));
    let mut curve_images: Vec<CurveClass> = (0..m).map(|k| CurveClass::basis(m, k)).collect();
    curve_images.push(CurveClass::zero(m));
    let pushforward = RingMorphism::new(divisor_images, curve_images, n, m, int(1))?;

    Ok(BlowupRing {
        base: base.clone(),
        ring,
        pushforward,
    })
}

/// Blow-up of a Picard-rank-one threefold with `H³ = h3_base` at a point,
/// with divisor basis `{f*H, E}`.
pub fn make_blowup_ring(h3_base: Rational) -> Result<BlowupRing> {
    blow_up_point(&IntersectionRing::polarized(h3_base)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn d(ring: &IntersectionRing, coeffs: &[i64]) -> DivisorClass {
        assert_eq!(coeffs.len(), ring.divisor_rank());
        DivisorClass::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Brute-force symmetry check over all ordered basis triples.
    fn brute_force_symmetric(ring: &IntersectionRing) -> bool {
        let n = ring.divisor_rank();
        let b = |i| DivisorClass::basis(n, i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let base = ring.triple(&b(i), &b(j), &b(k)).unwrap();
                    let perms = [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)];
                    for (a, bb, c) in perms {
                        if ring.triple(&b(a), &b(bb), &b(c)).unwrap() != base {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn builder_rings_validate() {
        let rings = [
            make_contraction_ring(int(1), int(1)).unwrap(),
            make_contraction_ring(int(8), int(3)).unwrap(),
            make_weierstrass_ring(int(9)).unwrap(),
            make_weierstrass_ring(rat(5, 2)).unwrap(),
            make_blowup_ring(int(1)).unwrap().ring().clone(),
            IntersectionRing::polarized(int(2)).unwrap(),
        ];
        for ring in &rings {
            assert!(ring.validate().is_empty(), "{:?}", ring.validate());
            assert!(brute_force_symmetric(ring));
        }
    }

    #[test]
    fn broken_pairing_is_one_violation() {
        let ring = make_contraction_ring(int(1), int(1)).unwrap();
        let mut pairing = ring.pairing_table().to_vec();
        let ld = ring.curve_index("L*D").unwrap();
        pairing[0][ld] = int(5);
        let broken = IntersectionRing::new(
            ring.divisor_names().to_vec(),
            ring.curve_names().to_vec(),
            ring.mult_table().to_vec(),
            pairing,
        )
        .unwrap();
        let report = broken.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            Violation::InconsistentTriple { indices: [0, 0, 1], .. }
        ));
    }

    #[test]
    fn asymmetric_mult_is_reported() {
        let ring = make_contraction_ring(int(1), int(1)).unwrap();
        let mut mult = ring.mult_table().to_vec();
        mult[0][1] = ring.curve("L^2").unwrap();
        let broken = IntersectionRing::new(
            ring.divisor_names().to_vec(),
            ring.curve_names().to_vec(),
            mult,
            ring.pairing_table().to_vec(),
        )
        .unwrap();
        let report = broken.validate();
        assert!(report
            .violations
            .contains(&Violation::AsymmetricProduct { i: 0, j: 1 }));
    }

    #[test]
    fn shape_errors_at_construction() {
        let err = IntersectionRing::new(
            vec!["A".into()],
            vec!["A^2".into()],
            vec![vec![CurveClass::zero(2)]],
            vec![vec![int(1)]],
        );
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn contraction_products() {
        let ring = make_contraction_ring(int(1), int(1)).unwrap();
        let l = ring.divisor("L").unwrap();
        let dd = ring.divisor("D").unwrap();
        let ld = ring.div_mul(&l, &dd).unwrap();
        assert!(ring.curve_is_numerically_zero(&ld).unwrap());
        assert_eq!(ring.div_mul(&l, &ring.zero_divisor()).unwrap(), ring.zero_curve());
        let d2 = ring.div_mul(&dd, &dd).unwrap();
        assert_eq!(ring.pair(&dd, &d2).unwrap(), int(1));
        assert_eq!(ring.pair(&l, &d2).unwrap(), int(0));
        assert_eq!(ring.pair(&ring.zero_divisor(), &d2).unwrap(), int(0));

        // H = 2L - E on the blow-up of P^3: H^3 = 8 - 1
        let h = d(&ring, &[2, -1]);
        assert_eq!(ring.cube(&h).unwrap(), int(7));
        assert_eq!(ring.triple(&h, &h, &ring.zero_divisor()).unwrap(), int(0));

        let ring8 = make_contraction_ring(int(8), int(1)).unwrap();
        let h = d(&ring8, &[2, -1]);
        assert_eq!(ring8.cube(&h).unwrap(), int(63));
    }

    #[test]
    fn contraction_rejects_bad_input() {
        assert!(make_contraction_ring(int(0), int(1)).is_err());
        assert!(make_contraction_ring(int(-1), int(1)).is_err());
        assert!(make_contraction_ring(int(1), int(0)).is_err());
    }

    #[test]
    fn weierstrass_intersection_numbers() {
        let ring = make_weierstrass_ring(int(9)).unwrap();
        let theta = ring.divisor("Theta").unwrap();
        let f = ring.divisor("F").unwrap();
        assert_eq!(ring.cube(&theta).unwrap(), int(9));
        assert_eq!(ring.cube(&f).unwrap(), int(0));
        // Θ² = Θ·F numerically
        let tt = ring.div_mul(&theta, &theta).unwrap();
        let tf = ring.div_mul(&theta, &f).unwrap();
        assert!(ring.curves_numerically_equal(&tt, &tf).unwrap());
        assert_eq!(ring.pair(&theta, &tt).unwrap(), int(9));

        // H = tΘ - (1+t)F at t = 1: H³ = (1 + 3 + 3)·9
        let h = &theta - &f.scale(&int(2));
        assert_eq!(ring.cube(&h).unwrap(), int(63));
        assert!(make_weierstrass_ring(int(0)).is_err());
        assert!(is_del_pezzo_degree(&int(9)));
        assert!(!is_del_pezzo_degree(&int(10)));
        assert!(!is_del_pezzo_degree(&rat(1, 2)));
    }

    #[test]
    fn theta_minus_fiber_cubes_to_ks2() {
        for k in 1..=9 {
            let ring = make_weierstrass_ring(int(k)).unwrap();
            let x = &ring.divisor("Theta").unwrap() - &ring.divisor("F").unwrap();
            assert_eq!(ring.cube(&x).unwrap(), int(k));
        }
    }

    #[test]
    fn blowup_ring_structure() {
        let bl = make_blowup_ring(int(1)).unwrap();
        let ring = bl.ring();
        let fh = ring.divisor("f*H").unwrap();
        let e = bl.exceptional();
        assert_eq!(ring.cube(&e).unwrap(), int(1));
        assert_eq!(ring.cube(&fh).unwrap(), int(1));
        let e2 = ring.div_mul(&e, &e).unwrap();
        assert_eq!(e2, bl.exceptional_square());
        assert_eq!(ring.pair(&e, &e2).unwrap(), int(1));
        assert_eq!(ring.pair(&fh, &e2).unwrap(), int(0));
        assert_eq!(ring.triple(&fh, &fh, &e).unwrap(), int(0));

        let push = bl.pushforward();
        assert_eq!(push.push_divisor(&fh).unwrap(), DivisorClass::basis(1, 0));
        assert!(push.push_divisor(&e).unwrap().is_zero());
        assert!(push.push_curve(&e2).unwrap().is_zero());
        let fh_e = ring.div_mul(&fh, &e).unwrap();
        assert!(push.push_curve(&fh_e).unwrap().is_zero());
        let fh2 = ring.div_mul(&fh, &fh).unwrap();
        let base = bl.base();
        let h = base.divisor("H").unwrap();
        assert_eq!(push.push_curve(&fh2).unwrap(), base.div_mul(&h, &h).unwrap());
        assert_eq!(push.push_scalar(&rat(-5, 3)), rat(-5, 3));
    }

    #[test]
    fn blowup_of_general_base_keeps_projection_formula() {
        let base = make_contraction_ring(int(2), int(3)).unwrap();
        let bl = blow_up_point(&base).unwrap();
        assert!(bl.ring().validate().is_empty());
        let n = base.divisor_rank();
        for i in 0..n {
            for j in 0..n {
                let a = DivisorClass::basis(n, i);
                let b = DivisorClass::basis(n, j);
                let up = bl
                    .ring()
                    .div_mul(&bl.pull_divisor(&a).unwrap(), &bl.pull_divisor(&b).unwrap())
                    .unwrap();
                let down = bl.pushforward().push_curve(&up).unwrap();
                assert_eq!(down, base.div_mul(&a, &b).unwrap());
            }
        }
    }

    #[test]
    fn blowup_rejects_bad_input() {
        assert!(make_blowup_ring(int(0)).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let ring = make_contraction_ring(int(1), int(1)).unwrap();
        let bad = DivisorClass::zero(3);
        assert!(matches!(
            ring.div_mul(&bad, &ring.zero_divisor()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ring.pair(&ring.zero_divisor(), &CurveClass::zero(1)).is_err());
    }
}
