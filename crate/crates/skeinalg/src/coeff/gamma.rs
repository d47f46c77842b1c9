//! Parser for framing-scalar expressions.
//!
//! Grammar: an optional sign, then `·`- or `*`-separated factors, each an
//! integer, `q^(k/2)`, `a^(k)`, or `s^(k)` (bare `q`, `a`, `s` mean exponent 1).
//! The result is always a signed monomial in `LaurentSA`, e.g. `-q^(1/2)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::LaurentSA;

/// Parse a scalar expression such as `"q^(1/2)"`, `"-q^(1/2)"`, `"2·a^(-1)"`.
pub fn parse_scalar_expr(input: &str) -> Result<LaurentSA, String> {
    let text = input.trim();
    if text.is_empty() {
        return Err("empty scalar expression".to_string());
    }
    let (negate, rest) = match text.strip_prefix('-') {
        Some(r) => (true, r.trim_start()),
        None => (false, text),
    };
    let mut result = LaurentSA::one();
    for raw in rest.split(['·', '*']) {
        let factor = raw.trim();
        if factor.is_empty() {
            return Err(format!("empty factor in scalar expression: {input:?}"));
        }
        result = result * parse_factor(factor)?;
    }
    if negate {
        result = -result;
    }
    Ok(result)
}

fn parse_factor(factor: &str) -> Result<LaurentSA, String> {
    if let Ok(n) = factor.parse::<BigInt>() {
        if n.is_zero() {
            return Err("zero factor in scalar expression".to_string());
        }
        return Ok(LaurentSA::monomial(n, 0, 0));
    }
    let (var, rest) = factor.split_at(1);
    let exp = if rest.is_empty() {
        (1, 1)
    } else {
        parse_exponent(rest)?
    };
    let (num, den) = exp;
    match var {
        "q" => {
            // q^(n/d) = s^(2n/d); the doubled numerator must come out integral
            let twice = 2 * num;
            if twice % den != 0 {
                return Err(format!("fractional s-exponent in factor {factor:?}"));
            }
            Ok(LaurentSA::s_pow(twice / den))
        }
        "s" | "a" => {
            if num % den != 0 {
                return Err(format!("fractional exponent in factor {factor:?}"));
            }
            let k = num / den;
            Ok(if var == "s" {
                LaurentSA::s_pow(k)
            } else {
                LaurentSA::a_pow(k)
            })
        }
        _ => Err(format!("unknown factor {factor:?}")),
    }
}

fn parse_exponent(rest: &str) -> Result<(i64, i64), String> {
    let body = rest
        .strip_prefix('^')
        .ok_or_else(|| format!("expected ^ in exponent {rest:?}"))?;
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(body);
    let mut parts = body.splitn(2, '/');
    let num: i64 = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| format!("bad exponent numerator in {rest:?}"))?;
    let den: i64 = match parts.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| format!("bad exponent denominator in {rest:?}"))?,
        None => 1,
    };
    if den == 0 {
        return Err("zero exponent denominator".to_string());
    }
    Ok((num, den))
}
