//! Linear expressions over a named basis, such as `2L - D` or `1/2*Theta + F`.

use num::Zero;
use tiltchow::{parse_rational, Rational};

use crate::error::{CliError, CliResult};

fn split_terms(expr: &str) -> CliResult<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    for c in expr.chars() {
        if c == '+' || c == '-' {
            if current.trim().is_empty() {
                if c == '-' {
                    negative = !negative;
                }
            } else {
                terms.push((negative, std::mem::take(&mut current)));
                negative = c == '-';
            }
        } else {
            current.push(c);
        }
    }
    if current.trim().is_empty() {
        if !terms.is_empty() || negative {
            return Err(CliError::Input(format!("dangling sign in `{expr}`")));
        }
    } else {
        terms.push((negative, current));
    }
    Ok(terms)
}

/// Coefficients of `expr` in the basis `names`.
pub fn parse_linear(expr: &str, names: &[String]) -> CliResult<Vec<Rational>> {
    let mut coeffs = vec![Rational::zero(); names.len()];
    let terms = split_terms(expr)?;
    if terms.is_empty() {
        return Err(CliError::Input("empty class expression".into()));
    }
    for (negative, body) in terms {
        let body = body.trim();
        let (coef, name) = if let Some(i) = names.iter().position(|n| n == body) {
            (Rational::from_integer(1.into()), Some(i))
        } else {
            let split = body
                .find(|c: char| !(c.is_ascii_digit() || c == '/' || c == '.'))
                .unwrap_or(body.len());
            let (num, rest) = body.split_at(split);
            if num.is_empty() {
                return Err(CliError::Input(format!(
                    "unknown basis element `{body}` (known: {})",
                    names.join(", ")
                )));
            }
            let coef = parse_rational(num).map_err(|e| CliError::Input(e.to_string()))?;
            let rest = rest.trim();
            let rest = rest.strip_prefix('*').unwrap_or(rest).trim();
            if rest.is_empty() {
                if !coef.is_zero() {
                    return Err(CliError::Input(format!("constant term `{body}` in class expression")));
                }
                (coef, None)
            } else {
                let i = names.iter().position(|n| n == rest).ok_or_else(|| {
                    CliError::Input(format!(
                        "unknown basis element `{rest}` (known: {})",
                        names.join(", ")
                    ))
                })?;
                (coef, Some(i))
            }
        };
        if let Some(i) = name {
            coeffs[i] += if negative { -coef } else { coef };
        }
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltchow::{int, rat};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_sums_with_coefficients() {
        let n = names(&["L", "D"]);
        assert_eq!(parse_linear("2L - D", &n).unwrap(), vec![int(2), int(-1)]);
        assert_eq!(parse_linear("-D", &n).unwrap(), vec![int(0), int(-1)]);
        assert_eq!(parse_linear("1/2*L + 3 D - D", &n).unwrap(), vec![rat(1, 2), int(2)]);
        assert_eq!(parse_linear("0", &n).unwrap(), vec![int(0), int(0)]);
        assert_eq!(parse_linear("0.25L", &n).unwrap(), vec![rat(1, 4), int(0)]);
    }

    #[test]
    fn names_may_contain_operators() {
        let n = names(&["f*H^2", "E^2"]);
        assert_eq!(parse_linear("f*H^2 - 1/6 E^2", &n).unwrap(), vec![int(1), rat(-1, 6)]);
        assert_eq!(parse_linear("2*f*H^2", &n).unwrap(), vec![int(2), int(0)]);
    }

    #[test]
    fn rejects_garbage() {
        let n = names(&["L", "D"]);
        assert!(parse_linear("2X", &n).is_err());
        assert!(parse_linear("L +", &n).is_err());
        assert!(parse_linear("3", &n).is_err());
        assert!(parse_linear("", &n).is_err());
        assert!(parse_linear("1/0 L", &n).is_err());
    }
}
