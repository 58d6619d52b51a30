//! Complex numbers as written in scenario files.
//!
//! Accepted forms: `3`, `-0.5`, `1/2`, `sqrt(2)`, `1/sqrt(2)`, `i`, `-2i`,
//! `0.5+0.5i`, `1/sqrt(2)-1/sqrt(2)i`, and `exp(p/q)` for `e^{2πi p/q}`.

use hilbext_core::group::root_of_unity;
use num_complex::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some(inner) = t.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        let (p, q) = inner
            .split_once('/')
            .ok_or_else(|| format!("exp({inner}): expected exp(p/q)"))?;
        let p: i64 = p.parse().map_err(|_| format!("exp({inner}): bad numerator"))?;
        let q: i64 = q.parse().map_err(|_| format!("exp({inner}): bad denominator"))?;
        if q <= 0 {
            return Err(format!("exp({inner}): denominator must be positive"));
        }
        return Ok(root_of_unity(p, q));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    // Split at the last sign that starts the imaginary part.
    let bytes = body.as_bytes();
    let mut split = None;
    let mut depth = 0i32;
    for (k, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if k > 0 && depth == 0 && !matches!(bytes[k - 1], b'e' | b'E' | b'*' | b'/') => {
                split = Some(k)
            }
            _ => {}
        }
    }
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, imag_coefficient(&body[k..])?),
        None => (0.0, imag_coefficient(body)?),
    };
    Ok(Complex64::new(re, im))
}

fn imag_coefficient(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s.strip_suffix('*').unwrap_or(s)),
    }
}

/// Decimals, `p/q`, `sqrt(x)` and quotients/products of these.
pub fn parse_real(s: &str) -> Result<f64, String> {
    if let Some(rest) = s.strip_prefix('-') {
        return parse_real(rest).map(|v| -v);
    }
    if let Some(rest) = s.strip_prefix('+') {
        return parse_real(rest);
    }
    // Lowest precedence first: split at the last top-level '/' or '*'.
    let mut depth = 0i32;
    let mut split = None;
    for (k, b) in s.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' | b'*' if depth == 0 => split = Some(k),
            _ => {}
        }
    }
    if let Some(k) = split {
        let (l, r) = (parse_real(&s[..k])?, parse_real(&s[k + 1..])?);
        return match &s[k..k + 1] {
            "/" if r == 0.0 => Err(format!("{s}: division by zero")),
            "/" => Ok(l / r),
            _ => Ok(l * r),
        };
    }
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let v = parse_real(inner)?;
        if v < 0.0 {
            return Err(format!("sqrt of negative number {v}"));
        }
        return Ok(v.sqrt());
    }
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("cannot read {s:?} as a number"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-15
    }

    #[test]
    fn forms() {
        assert!(close(parse_complex("3").unwrap(), 3.0, 0.0));
        assert!(close(parse_complex("-1/2").unwrap(), -0.5, 0.0));
        assert!(close(parse_complex("i").unwrap(), 0.0, 1.0));
        assert!(close(parse_complex("-i").unwrap(), 0.0, -1.0));
        assert!(close(parse_complex("-2i").unwrap(), 0.0, -2.0));
        assert!(close(parse_complex("0.5 + 0.25i").unwrap(), 0.5, 0.25));
        assert!(close(parse_complex("1e-3-1e-3i").unwrap(), 1e-3, -1e-3));
        let h = 1.0 / 2f64.sqrt();
        assert!(close(parse_complex("1/sqrt(2)").unwrap(), h, 0.0));
        assert!(close(parse_complex("1/sqrt(2)-1/sqrt(2)i").unwrap(), h, -h));
        assert!(close(parse_complex("exp(1/4)").unwrap(), 0.0, 1.0));
        assert!(close(parse_complex("exp(1/2)").unwrap(), -1.0, 0.0));
    }

    #[test]
    fn rejects() {
        for bad in ["", "x", "1/0", "exp(1)", "sqrt(-1)", "1+", "inf"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }
}
