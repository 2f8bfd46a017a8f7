//! Geometry configuration: a built-in scenario or explicit intersection tables,
//! plus optional polarization `H`, twist `B0` and curve class `Gamma`.

use std::path::Path;

use indexmap::IndexMap;
use serde::Deserialize;
use tiltchow::{
    contraction_scenario, is_del_pezzo_degree, make_blowup_geometry, parse_rational, weierstrass_scenario,
    BlowupGeometry, CurveClass, DivisorClass, IntersectionRing, Rational,
};

use crate::error::{CliError, CliResult};
use crate::expr::parse_linear;

/// A rational given either as a bare JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Scalar {
    Integer(i64),
    Text(String),
}

impl Scalar {
    pub fn to_rational(&self) -> CliResult<Rational> {
        match self {
            Scalar::Integer(n) => Ok(Rational::from_integer((*n).into())),
            Scalar::Text(s) => parse_rational(s).map_err(|e| CliError::Input(e.to_string())),
        }
    }
}

/// A class written as an expression (`"2L - D"`) or as a map from basis names to coefficients.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ClassSpec {
    Expr(String),
    Coefficients(IndexMap<String, Scalar>),
}

impl ClassSpec {
    pub fn resolve(&self, names: &[String]) -> CliResult<Vec<Rational>> {
        match self {
            ClassSpec::Expr(e) => parse_linear(e, names),
            ClassSpec::Coefficients(map) => {
                let mut out = vec![Rational::from_integer(0.into()); names.len()];
                for (name, value) in map {
                    let i = names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| CliError::Input(format!("unknown basis element `{name}`")))?;
                    out[i] = value.to_rational()?;
                }
                Ok(out)
            }
        }
    }
}

/// A curve class inside the `mult` table: a coefficient vector or an expression.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CurveEntry {
    Vector(Vec<Scalar>),
    Expr(String),
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub builtin: Option<String>,
    pub divisor_basis: Option<Vec<String>>,
    pub curve_basis: Option<Vec<String>>,
    pub mult: Option<Vec<Vec<CurveEntry>>>,
    pub pairing: Option<Vec<Vec<Scalar>>>,
    /// Blow up the explicit ring at a point and work on the blow-up.
    #[serde(default)]
    pub blow_up: bool,
    #[serde(rename = "H")]
    pub h: Option<ClassSpec>,
    #[serde(rename = "B0")]
    pub b0: Option<ClassSpec>,
    #[serde(rename = "Gamma")]
    pub gamma: Option<ClassSpec>,
    /// Default divisor for `check` and for the `O_D` class form.
    pub divisor: Option<ClassSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    Contraction { l3: Rational, d3: Rational, m: u32 },
    Weierstrass { ks2: Rational, t: Rational },
    Blowup { h3: Rational },
}

fn parse_args(kind: &str, args: &str, expected: usize) -> CliResult<Vec<Rational>> {
    let parts: Vec<&str> = args.split(',').collect();
    if parts.len() != expected {
        return Err(CliError::Usage(format!(
            "builtin `{kind}` takes {expected} comma-separated values, got `{args}`"
        )));
    }
    parts
        .iter()
        .map(|p| parse_rational(p).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

impl std::str::FromStr for Builtin {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Builtin> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("builtin `{s}` must look like kind:values")))?;
        match kind.trim() {
            "contraction" => {
                let v = parse_args("contraction", args, 3)?;
                let m = v[2]
                    .is_integer()
                    .then(|| v[2].to_integer())
                    .and_then(|m| u32::try_from(m).ok())
                    .filter(|&m| m > 0)
                    .ok_or_else(|| CliError::Usage(format!("m must be a positive integer, got {}", v[2])))?;
                Ok(Builtin::Contraction {
                    l3: v[0].clone(),
                    d3: v[1].clone(),
                    m,
                })
            }
            "weierstrass" => {
                let v = parse_args("weierstrass", args, 2)?;
                Ok(Builtin::Weierstrass {
                    ks2: v[0].clone(),
                    t: v[1].clone(),
                })
            }
            "blowup" => {
                let v = parse_args("blowup", args, 1)?;
                Ok(Builtin::Blowup { h3: v[0].clone() })
            }
            other => Err(CliError::Usage(format!(
                "unknown builtin `{other}` (expected contraction, weierstrass or blowup)"
            ))),
        }
    }
}

/// A fully resolved geometry that commands run against.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub ring: IntersectionRing,
    pub h: Option<DivisorClass>,
    pub b0: DivisorClass,
    pub gamma: CurveClass,
    pub divisor: Option<DivisorClass>,
    /// Present when `ring` is a point blow-up; `h`, `b0`, `gamma` are then the lifted classes.
    pub blowup: Option<BlowupGeometry>,
    pub warnings: Vec<String>,
}

pub fn read_config(path: &Path) -> CliResult<GeometryConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> CliResult<GeometryConfig> {
    Ok(serde_json::from_str(text)?)
}

fn divisor(spec: &ClassSpec, ring: &IntersectionRing) -> CliResult<DivisorClass> {
    Ok(DivisorClass::new(spec.resolve(ring.divisor_names())?))
}

fn curve(spec: &ClassSpec, ring: &IntersectionRing) -> CliResult<CurveClass> {
    Ok(CurveClass::new(spec.resolve(ring.curve_names())?))
}

impl GeometryConfig {
    pub fn builtin(&self) -> CliResult<Option<Builtin>> {
        self.builtin.as_deref().map(str::parse).transpose()
    }

    fn has_tables(&self) -> bool {
        self.divisor_basis.is_some() || self.curve_basis.is_some() || self.mult.is_some() || self.pairing.is_some()
    }

    /// The ring described by the explicit tables, without any consistency check.
    pub fn explicit_ring(&self) -> CliResult<IntersectionRing> {
        let missing = |what: &str| CliError::Input(format!("explicit ring needs `{what}`"));
        let divisor_names = self.divisor_basis.clone().ok_or_else(|| missing("divisor_basis"))?;
        let curve_names = self.curve_basis.clone().ok_or_else(|| missing("curve_basis"))?;
        let mult = self
            .mult
            .as_ref()
            .ok_or_else(|| missing("mult"))?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        let coeffs = match entry {
                            CurveEntry::Vector(v) => v.iter().map(Scalar::to_rational).collect::<CliResult<_>>()?,
                            CurveEntry::Expr(e) => parse_linear(e, &curve_names)?,
                        };
                        Ok(CurveClass::new(coeffs))
                    })
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        let pairing = self
            .pairing
            .as_ref()
            .ok_or_else(|| missing("pairing"))?
            .iter()
            .map(|row| row.iter().map(Scalar::to_rational).collect::<CliResult<Vec<_>>>())
            .collect::<CliResult<Vec<_>>>()?;
        Ok(IntersectionRing::new(divisor_names, curve_names, mult, pairing)?)
    }

    /// The ring a `validate` run inspects: the explicit tables, or the built-in ring.
    pub fn raw_ring(&self) -> CliResult<IntersectionRing> {
        if self.has_tables() {
            if self.builtin.is_some() {
                return Err(CliError::Input("config gives both `builtin` and explicit tables".into()));
            }
            return self.explicit_ring();
        }
        Ok(self.build()?.ring)
    }

    pub fn build(&self) -> CliResult<Geometry> {
        match (self.builtin()?, self.has_tables()) {
            (Some(_), true) => Err(CliError::Input("config gives both `builtin` and explicit tables".into())),
            (None, false) => Err(CliError::Usage("no geometry given: use --builtin or --config".into())),
            (Some(b), false) => self.build_builtin(b),
            (None, true) => {
                let ring = self.explicit_ring()?;
                let report = ring.validate();
                if let Some(v) = report.violations.first() {
                    return Err(CliError::Input(format!("ring fails validation: {v}")));
                }
                if self.blow_up {
                    self.lift(&ring, None, Vec::new())
                } else {
                    let h = self.h.as_ref().map(|s| divisor(s, &ring)).transpose()?;
                    let b0 = self.b0.as_ref().map_or(Ok(ring.zero_divisor()), |s| divisor(s, &ring))?;
                    let gamma = self.gamma.as_ref().map_or(Ok(ring.zero_curve()), |s| curve(s, &ring))?;
                    let d = self.divisor.as_ref().map(|s| divisor(s, &ring)).transpose()?;
                    Ok(Geometry {
                        ring,
                        h,
                        b0,
                        gamma,
                        divisor: d,
                        blowup: None,
                        warnings: Vec::new(),
                    })
                }
            }
        }
    }

    fn build_builtin(&self, builtin: Builtin) -> CliResult<Geometry> {
        let mut warnings = Vec::new();
        let scenario = match builtin {
            Builtin::Contraction { l3, d3, m } => contraction_scenario(l3, d3, m)?,
            Builtin::Weierstrass { ks2, t } => {
                if !is_del_pezzo_degree(&ks2) {
                    warnings.push(format!("K_S^2 = {ks2} is not the degree of a del Pezzo surface"));
                }
                weierstrass_scenario(ks2, t)?
            }
            Builtin::Blowup { h3 } => {
                let base = IntersectionRing::polarized(h3)?;
                let h = base.divisor("H")?;
                return self.lift(&base, Some(h), warnings);
            }
        };
        let ring = scenario.ring;
        let h = match &self.h {
            Some(s) => divisor(s, &ring)?,
            None => scenario.h,
        };
        let d = match &self.divisor {
            Some(s) => divisor(s, &ring)?,
            None => scenario.d,
        };
        let b0 = self.b0.as_ref().map_or(Ok(ring.zero_divisor()), |s| divisor(s, &ring))?;
        let gamma = self.gamma.as_ref().map_or(Ok(ring.zero_curve()), |s| curve(s, &ring))?;
        Ok(Geometry {
            ring,
            h: Some(h),
            b0,
            gamma,
            divisor: Some(d),
            blowup: None,
            warnings,
        })
    }

    fn lift(&self, base: &IntersectionRing, default_h: Option<DivisorClass>, warnings: Vec<String>) -> CliResult<Geometry> {
        let h = match (&self.h, default_h) {
            (Some(s), _) => divisor(s, base)?,
            (None, Some(h)) => h,
            (None, None) => return Err(CliError::Input("blowing up needs a polarization `H` on the base".into())),
        };
        let b0 = self.b0.as_ref().map_or(Ok(base.zero_divisor()), |s| divisor(s, base))?;
        let gamma = self.gamma.as_ref().map_or(Ok(base.zero_curve()), |s| curve(s, base))?;
        let geom = make_blowup_geometry(base, h, b0, gamma)?;
        let ring = geom.ring().clone();
        let d = match &self.divisor {
            Some(s) => divisor(s, &ring)?,
            None => geom.blowup.exceptional(),
        };
        Ok(Geometry {
            ring,
            h: Some(geom.h_tilde.clone()),
            b0: geom.b0_tilde.clone(),
            gamma: geom.gamma_tilde.clone(),
            divisor: Some(d),
            blowup: Some(geom),
            warnings,
        })
    }
}

impl Geometry {
    pub fn polarization(&self) -> CliResult<&DivisorClass> {
        self.h
            .as_ref()
            .ok_or_else(|| CliError::Input("no polarization: set `H` in the config".into()))
    }

    pub fn default_divisor(&self) -> CliResult<&DivisorClass> {
        self.divisor
            .as_ref()
            .ok_or_else(|| CliError::Input("no divisor given: use --divisor or set `divisor` in the config".into()))
    }
}
