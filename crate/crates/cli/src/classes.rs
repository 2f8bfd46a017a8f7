//! Chern character literals accepted by `walls` and `charge`.
//!
//! Named forms: `O`, `skyscraper`, `ideal_point`, `O_D` (default divisor),
//! `O_D:<divisor>`, `line:<divisor>`, `exceptional:<k>` (blow-ups only).
//! Explicit form: `ch0; ch1; ch2; ch3` with `ch1` and `ch2` as expressions over
//! the divisor and curve bases. A leading `-` negates any form.

use num::{One, Signed, Zero};
use tiltchow::{
    ch_exceptional_twist, ch_ideal_point, ch_skyscraper, ch_structure_sheaf, ch_structure_sheaf_divisor,
    exp_divisor, parse_rational, ChernCharacter, CurveClass, DivisorClass, Rational,
};

use crate::config::Geometry;
use crate::error::{CliError, CliResult};
use crate::expr::parse_linear;

fn core(e: tiltchow::Error) -> CliError {
    CliError::Input(e.to_string())
}

pub fn parse_class(text: &str, geom: &Geometry) -> CliResult<ChernCharacter> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('-') {
        if !rest.trim_start().starts_with(|c: char| c.is_ascii_digit()) {
            return Ok(-&parse_class(rest, geom)?);
        }
    }
    let ring = &geom.ring;
    if text.contains(';') {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 4 {
            return Err(CliError::Input(format!(
                "class literal needs four `;`-separated parts, got {}",
                parts.len()
            )));
        }
        let scalar = |s: &str| parse_rational(s).map_err(core);
        let ch1 = if parts[1].trim().is_empty() {
            ring.zero_divisor()
        } else {
            DivisorClass::new(parse_linear(parts[1], ring.divisor_names())?)
        };
        let ch2 = if parts[2].trim().is_empty() {
            ring.zero_curve()
        } else {
            CurveClass::new(parse_linear(parts[2], ring.curve_names())?)
        };
        return Ok(ChernCharacter::new(scalar(parts[0])?, ch1, ch2, scalar(parts[3])?));
    }
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (text, None),
    };
    let divisor_arg = |arg: Option<&str>| -> CliResult<DivisorClass> {
        match arg.filter(|a| !a.is_empty()) {
            Some(a) => Ok(DivisorClass::new(parse_linear(a, ring.divisor_names())?)),
            None => Ok(geom.default_divisor()?.clone()),
        }
    };
    match name {
        "O" if arg.is_none() => Ok(ch_structure_sheaf(ring)),
        "skyscraper" if arg.is_none() => Ok(ch_skyscraper(ring)),
        "ideal_point" if arg.is_none() => Ok(ch_ideal_point(ring)),
        "O_D" => ch_structure_sheaf_divisor(ring, &divisor_arg(arg)?).map_err(core),
        "line" => exp_divisor(ring, &divisor_arg(arg)?).map_err(core),
        "exceptional" => {
            let bl = geom
                .blowup
                .as_ref()
                .ok_or_else(|| CliError::Input("`exceptional:<k>` needs a blow-up geometry".into()))?;
            let k = arg.ok_or_else(|| CliError::Input("`exceptional` needs a twist `exceptional:<k>`".into()))?;
            let k = parse_rational(k).map_err(core)?;
            if !k.is_integer() {
                return Err(CliError::Input(format!("twist must be an integer, got {k}")));
            }
            let k: i64 = k
                .to_integer()
                .try_into()
                .map_err(|_| CliError::Input("twist out of range".into()))?;
            ch_exceptional_twist(&bl.blowup, k).map_err(core)
        }
        _ => Err(CliError::Input(format!(
            "unknown class `{text}` (expected O, skyscraper, ideal_point, O_D[:D], line:D, exceptional:k or `ch0; ch1; ch2; ch3`)"
        ))),
    }
}

/// A linear combination written over basis names, e.g. `2*L - D`.
pub fn format_combination(coeffs: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, n) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(n);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Exact text form `ch0; ch1; ch2; ch3` using basis names.
pub fn format_class(ch: &ChernCharacter, geom: &Geometry) -> String {
    format!(
        "{}; {}; {}; {}",
        ch.ch0,
        format_combination(ch.ch1.coefficients(), geom.ring.divisor_names()),
        format_combination(ch.ch2.coefficients(), geom.ring.curve_names()),
        ch.ch3
    )
}
