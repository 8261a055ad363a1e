//! Input grammars: divisors like `2L-1E` and classes like `7,4,1,1/6`.

use tiltwall_core::{int, parse_rational, ChernVector, DivisorClass, Rational};

use crate::error::CliError;

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

/// `[+|-]<coeff><name>` terms over the variety's basis, whitespace ignored.
/// A bare name has coefficient 1; coefficients may be `p/q` so that
/// non-integral divisors reach the integrality check instead of failing here.
/// The literal `0` is the zero divisor.
pub fn parse_divisor(input: &str, basis: &[String]) -> Result<DivisorClass, CliError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(usage("empty divisor".into()));
    }
    if s == "0" {
        return Ok(DivisorClass::zero());
    }
    let mut coeffs = [int(0), int(0)];
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if rest.len() == s.len() => (false, rest),
            _ => return Err(usage(format!("malformed divisor {input:?}"))),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];

        let split = term
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(|| usage(format!("term {term:?} in {input:?} names no generator")))?;
        let (coeff, name) = term.split_at(split);
        let idx = basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| usage(format!("unknown generator {name:?} in {input:?}")))?;
        let mut value = if coeff.is_empty() {
            int(1)
        } else {
            parse_rational(coeff).map_err(|e| usage(e.to_string()))?
        };
        if negative {
            value = -value;
        }
        coeffs[idx] += value;
    }
    let [l, e] = coeffs;
    Ok(DivisorClass::new(l, e))
}

/// Four comma-separated rationals `e0,e1,e2,e3`.
pub fn parse_class(input: &str) -> Result<ChernVector, CliError> {
    let parts: Vec<Rational> = input
        .split(',')
        .map(|p| parse_rational(p).map_err(|e| usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    match <[Rational; 4]>::try_from(parts) {
        Ok([a, b, c, d]) => Ok(ChernVector::new(a, b, c, d)),
        Err(parts) => Err(usage(format!(
            "class {input:?} has {} components, expected 4",
            parts.len()
        ))),
    }
}

/// `lo,hi` pair of rationals.
pub fn parse_range(input: &str) -> Result<(Rational, Rational), CliError> {
    match input.split_once(',') {
        Some((a, b)) => {
            let lo = parse_rational(a).map_err(|e| usage(e.to_string()))?;
            let hi = parse_rational(b).map_err(|e| usage(e.to_string()))?;
            if lo >= hi {
                return Err(usage(format!("range {input:?} is empty")));
            }
            Ok((lo, hi))
        }
        None => Err(usage(format!("range {input:?} must be `lo,hi`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltwall_core::rat;

    fn basis() -> Vec<String> {
        vec!["L".into(), "E".into()]
    }

    #[test]
    fn divisor_forms() {
        let b = basis();
        assert_eq!(parse_divisor("L", &b).unwrap(), DivisorClass::from_ints(1, 0));
        assert_eq!(parse_divisor("2L-1E", &b).unwrap(), DivisorClass::from_ints(2, -1));
        assert_eq!(parse_divisor(" 2 L - E ", &b).unwrap(), DivisorClass::from_ints(2, -1));
        assert_eq!(parse_divisor("-L+3E", &b).unwrap(), DivisorClass::from_ints(-1, 3));
        assert_eq!(parse_divisor("0L+0E", &b).unwrap(), DivisorClass::zero());
        assert_eq!(parse_divisor("0", &b).unwrap(), DivisorClass::zero());
        assert_eq!(
            parse_divisor("1/2L", &b).unwrap(),
            DivisorClass::new(rat(1, 2), int(0))
        );
    }

    #[test]
    fn divisor_errors() {
        let b = basis();
        for bad in ["", "2", "2X", "L--E", "2.5L", "L+", "+"] {
            assert!(matches!(parse_divisor(bad, &b), Err(CliError::Usage(_))), "{bad}");
        }
        assert!(parse_divisor("E", &["L".to_string()]).is_err());
    }

    #[test]
    fn class_forms() {
        assert_eq!(
            parse_class("7,4,1,1/6").unwrap(),
            ChernVector::new(int(7), int(4), int(1), rat(1, 6))
        );
        assert!(parse_class("7,4,1").is_err());
        assert!(parse_class("7,4,1,0.5").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-1/4,3/4").unwrap(), (rat(-1, 4), rat(3, 4)));
        assert!(parse_range("1,1").is_err());
        assert!(parse_range("1").is_err());
    }
}
