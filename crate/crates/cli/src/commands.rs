use num::Signed;
use tiltchow::{
    central_charge, check_divisor_counterexample, contraction_margin, contraction_scenario, enumerate_candidate_walls,
    parse_rational, positivity_check, radius_bound_higher_rank, to_lambda, vertical_wall, weierstrass_margin,
    weierstrass_scenario, weierstrass_threshold_ok, bridgeland_slope, Caps, DivisorClass, Rational, Region,
    StabilityParams,
};

use crate::classes::{format_class, format_combination, parse_class};
use crate::config::{Builtin, Geometry, GeometryConfig};
use crate::error::{CliError, CliResult};
use crate::expr::parse_linear;
use crate::report::{Report, Table};

/// A finished run: its report and the process exit code (0 or 1).
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn rational_arg(name: &str, text: &str) -> CliResult<Rational> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn describe_geometry(report: &mut Report, config: &GeometryConfig, geom: &Geometry) {
    if let Some(b) = &config.builtin {
        report.input("geometry", b);
    } else {
        report.input("geometry", "explicit");
    }
    let names = geom.ring.divisor_names();
    if let Some(h) = &geom.h {
        report.input("H", format_combination(h.coefficients(), names));
    }
    report.input("B0", format_combination(geom.b0.coefficients(), names));
    report.input("Gamma", format_combination(geom.gamma.coefficients(), geom.ring.curve_names()));
    report.warnings.extend(geom.warnings.iter().cloned());
}

pub fn check(command: String, config: &GeometryConfig, divisor: Option<&str>) -> CliResult<Outcome> {
    let geom = config.build()?;
    let mut report = Report::new(command);
    describe_geometry(&mut report, config, &geom);
    let ring = &geom.ring;
    let h = geom.polarization()?;
    let d = match divisor {
        Some(e) => DivisorClass::new(parse_linear(e, ring.divisor_names())?),
        None => geom.default_divisor()?.clone(),
    };
    report.input("divisor", format_combination(d.coefficients(), ring.divisor_names()));
    if !geom.b0.is_zero() && geom.blowup.is_none() {
        report.warnings.push("check always uses B0 = 0; the configured B0 is ignored".into());
    }

    report.output("H^3", ring.cube(h)?);
    report.output("D.H^2", ring.triple(&d, h, h)?);
    report.output("D^2.H", ring.triple(&d, &d, h)?);
    report.output("D^3", ring.cube(&d)?);
    let r = check_divisor_counterexample(ring, &d, h, &geom.gamma)?;
    report.output("satisfied", r.satisfied);
    report.output("margin", &r.margin);
    let closed_form = config.h.is_none() && geom.gamma.is_zero() && geom.default_divisor().ok() == Some(&d);
    match config.builtin()? {
        Some(Builtin::Contraction { l3, d3, m }) if closed_form => {
            report.output("closed_form_margin", contraction_margin(&l3, &d3, m)?);
        }
        Some(Builtin::Weierstrass { ks2, t }) if closed_form => {
            report.output("closed_form_margin", weierstrass_margin(&ks2, &t)?);
            report.output("threshold_ok", weierstrass_threshold_ok(&t));
        }
        _ => {}
    }
    report.output_with_approx("beta0", &r.beta0);
    report.output_with_approx("alpha_sq_lower", &r.alpha_sq_lower);
    report.output_with_approx("alpha_sq_upper", &r.alpha_sq_upper);
    match (&r.witness_alpha_sq, &r.witness_defect) {
        (Some(w), Some(defect)) => {
            report.output_with_approx("witness_alpha_sq", w);
            report.output("witness_defect", defect);
        }
        _ => {
            report.output("witness_alpha_sq", "none");
            report.output("witness_defect", "none");
        }
    }
    Ok(Outcome {
        report,
        exit_code: if r.satisfied { 0 } else { 1 },
    })
}

pub struct WallArgs<'a> {
    pub class: &'a str,
    pub beta_min: &'a str,
    pub beta_max: &'a str,
    pub alpha_sq_max: &'a str,
    pub max_rank: u32,
    pub max_ch1: i64,
}

pub fn walls(command: String, config: &GeometryConfig, args: &WallArgs<'_>) -> CliResult<Outcome> {
    let geom = config.build()?;
    let mut report = Report::new(command);
    describe_geometry(&mut report, config, &geom);
    let ring = &geom.ring;
    let h = geom.polarization()?;
    let ch = parse_class(args.class, &geom)?;
    let region = Region {
        beta_min: rational_arg("beta-min", args.beta_min)?,
        beta_max: rational_arg("beta-max", args.beta_max)?,
        alpha_sq_max: rational_arg("alpha-sq-max", args.alpha_sq_max)?,
    };
    if args.max_ch1 < 0 {
        return Err(CliError::Usage("--max-ch1 must be non-negative".into()));
    }
    let caps = Caps {
        max_rank: args.max_rank,
        max_ch1: args.max_ch1,
    };
    report.input("class", format_class(&ch, &geom));
    report.input("beta_min", &region.beta_min);
    report.input("beta_max", &region.beta_max);
    report.input("alpha_sq_max", &region.alpha_sq_max);
    report.input("max_rank", caps.max_rank);
    report.input("max_ch1", caps.max_ch1);

    let v = to_lambda(ring, h, &geom.b0, &ch)?;
    let h3 = ring.cube(h)?;
    let walls = enumerate_candidate_walls(&v, &h3, &region, &caps)?;
    report.output("v0", &v.v0);
    report.output("v1", &v.v1);
    report.output("v2", &v.v2);
    report.output("discriminant", v.discriminant());
    report.output(
        "vertical_wall",
        vertical_wall(&v)?.map_or_else(|| "none".to_string(), |b| b.to_string()),
    );
    if !v.v0.is_negative() {
        let rank = (&v.v0 / &h3).floor().to_integer() + 1;
        if let Ok(rank) = u32::try_from(rank) {
            if let Ok(bound) = radius_bound_higher_rank(&v, &h3, rank) {
                report.output("least_subobject_rank", rank);
                report.output_with_approx("radius_sq_bound", &bound);
            }
        }
    }
    report.output("wall_count", walls.len());
    report.table = Some(Table {
        columns: ["center", "radius_sq", "w0", "w1", "w2"].map(String::from).to_vec(),
        rows: walls
            .iter()
            .map(|w| {
                vec![
                    w.center.to_string(),
                    w.radius_sq.to_string(),
                    w.w[0].to_string(),
                    w.w[1].to_string(),
                    w.w[2].to_string(),
                ]
            })
            .collect(),
    });
    Ok(Outcome { report, exit_code: 0 })
}

pub struct ChargeArgs<'a> {
    pub class: &'a str,
    pub alpha_sq: &'a str,
    pub beta: &'a str,
    pub s: &'a str,
    pub blowup: bool,
}

pub fn charge(command: String, config: &GeometryConfig, args: &ChargeArgs<'_>) -> CliResult<Outcome> {
    let geom = config.build()?;
    let mut report = Report::new(command);
    describe_geometry(&mut report, config, &geom);
    let ring = &geom.ring;
    let ch = parse_class(args.class, &geom)?;
    let alpha_sq = rational_arg("alpha-sq", args.alpha_sq)?;
    let beta = rational_arg("beta", args.beta)?;
    let s = rational_arg("s", args.s)?;
    report.input("class", format_class(&ch, &geom));
    report.input("alpha_sq", &alpha_sq);
    report.input("beta", &beta);
    report.input("s", &s);

    let params = StabilityParams::new(
        geom.polarization()?.clone(),
        geom.b0.clone(),
        alpha_sq.clone(),
        beta.clone(),
        s.clone(),
        geom.gamma.clone(),
    )?;
    let z = central_charge(ring, &params, &ch)?;
    report.output("re", &z.re);
    report.output("im", &z.im);
    if !ch.is_zero() {
        let slope = bridgeland_slope(ring, &params, &ch)?;
        report.output("slope_numerator", &slope.numerator);
        report.output("slope_denominator", &slope.denominator);
        report.output("slope", slope.value());
    }
    report.output("positivity", format!("{:?}", positivity_check(ring, &params, &ch)?));

    let mut exit_code = 0;
    if args.blowup {
        let bl = geom
            .blowup
            .as_ref()
            .ok_or_else(|| CliError::Input("--blowup needs a blow-up geometry (builtin blowup:H3 or blow_up: true)".into()))?;
        let check = bl.verify_factor_three(&alpha_sq, &beta, &s, &ch)?;
        let transported = bl.transport(&ch)?;
        let base_geom = Geometry {
            ring: bl.base().clone(),
            h: Some(bl.h.clone()),
            b0: bl.b0.clone(),
            gamma: bl.gamma.clone(),
            divisor: None,
            blowup: None,
            warnings: Vec::new(),
        };
        report.output("transported_class", format_class(&transported, &base_geom));
        report.output("three_z_tilde_re", &check.lifted_times_three.re);
        report.output("three_z_tilde_im", &check.lifted_times_three.im);
        report.output("z_of_transport_re", &check.base.re);
        report.output("z_of_transport_im", &check.base.im);
        report.output("verdict", if check.matches { "MATCH" } else { "MISMATCH" });
        if !check.matches {
            exit_code = 1;
        }
    }
    Ok(Outcome { report, exit_code })
}

fn parse_grid(grid: &str) -> CliResult<Vec<Rational>> {
    let grid = grid.trim();
    if let Some((a, b)) = grid.split_once("..") {
        let a = rational_arg("grid", a)?;
        let b = rational_arg("grid", b)?;
        if !a.is_integer() || !b.is_integer() {
            return Err(CliError::Usage("--grid ranges a..b need integer endpoints".into()));
        }
        let mut out = Vec::new();
        let mut x = a;
        while x <= b {
            out.push(x.clone());
            x += Rational::from_integer(1.into());
        }
        if out.is_empty() {
            return Err(CliError::Usage(format!("--grid `{grid}` is empty")));
        }
        return Ok(out);
    }
    let out: Vec<Rational> = grid
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| rational_arg("grid", p))
        .collect::<CliResult<_>>()?;
    if out.is_empty() {
        return Err(CliError::Usage("--grid is empty".into()));
    }
    Ok(out)
}

pub fn sweep(command: String, family: &str, grid: &str) -> CliResult<Outcome> {
    let mut report = Report::new(command);
    let points = parse_grid(grid)?;
    let (kind, args) = family
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("family `{family}` must be contraction:L3,D3 or weierstrass:KS2")))?;
    let args: Vec<Rational> = args
        .split(',')
        .map(|a| rational_arg("family", a))
        .collect::<CliResult<_>>()?;
    report.input("family", family);
    report.input(
        "grid",
        points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
    );
    let mut rows = Vec::new();
    let columns: Vec<String>;
    match (kind, args.as_slice()) {
        ("contraction", [l3, d3]) => {
            columns = ["m", "h3", "margin", "satisfied", "note"].map(String::from).to_vec();
            for m in &points {
                let m_int = m
                    .is_integer()
                    .then(|| m.to_integer())
                    .and_then(|m| u32::try_from(m).ok())
                    .filter(|&m| m > 0)
                    .ok_or_else(|| CliError::Usage(format!("contraction grid needs positive integers, got {m}")))?;
                let h3 = m * m * m * l3 - d3;
                match contraction_scenario(l3.clone(), d3.clone(), m_int) {
                    Ok(s) => {
                        let r = check_divisor_counterexample(&s.ring, &s.d, &s.h, &s.ring.zero_curve())?;
                        let closed = contraction_margin(l3, d3, m_int)?;
                        let note = if closed == r.margin { "" } else { "closed form disagrees" };
                        rows.push(vec![
                            m.to_string(),
                            h3.to_string(),
                            r.margin.to_string(),
                            r.satisfied.to_string(),
                            note.to_string(),
                        ]);
                    }
                    Err(tiltchow::Error::Precondition(_)) => rows.push(vec![
                        m.to_string(),
                        h3.to_string(),
                        String::new(),
                        "false".into(),
                        "invalid: m^3*L^3 <= D^3".into(),
                    ]),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        ("weierstrass", [ks2]) => {
            columns = ["t", "h3", "margin", "satisfied", "threshold_ok"].map(String::from).to_vec();
            for t in &points {
                let s = weierstrass_scenario(ks2.clone(), t.clone())?;
                let r = check_divisor_counterexample(&s.ring, &s.d, &s.h, &s.ring.zero_curve())?;
                let closed = weierstrass_margin(ks2, t)?;
                if closed != r.margin {
                    report.warnings.push(format!("closed form disagrees at t = {t}"));
                }
                rows.push(vec![
                    t.to_string(),
                    s.ring.cube(&s.h)?.to_string(),
                    r.margin.to_string(),
                    r.satisfied.to_string(),
                    weierstrass_threshold_ok(t).to_string(),
                ]);
            }
        }
        _ => {
            return Err(CliError::Usage(format!(
                "family `{family}` must be contraction:L3,D3 or weierstrass:KS2"
            )))
        }
    }
    report.output("points", rows.len());
    report.table = Some(Table { columns, rows });
    Ok(Outcome { report, exit_code: 0 })
}

pub fn validate(command: String, config: &GeometryConfig) -> CliResult<Outcome> {
    let ring = config.raw_ring()?;
    let mut report = Report::new(command);
    report.input("divisor_basis", ring.divisor_names().join(","));
    report.input("curve_basis", ring.curve_names().join(","));
    let result = ring.validate();
    report.output("violations", result.violations.len());
    report.output("status", if result.is_empty() { "ok" } else { "invalid" });
    report.table = Some(Table {
        columns: vec!["violation".into()],
        rows: result.violations.iter().map(|v| vec![v.to_string()]).collect(),
    });
    Ok(Outcome {
        report,
        exit_code: if result.is_empty() { 0 } else { 1 },
    })
}
