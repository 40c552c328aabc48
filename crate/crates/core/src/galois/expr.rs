//! Parser for the element notations used by table rows and the CLI:
//! `0`, signed prime-field integers, prime-field fractions `a/b`,
//! and powers of the generator written `alpha^k`, `a^k`, `α^k` or bare `alpha`.

use thiserror::Error;

use super::{Elem, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("malformed element expression {0:?}")]
    Malformed(String),
    #[error("denominator of {0:?} vanishes in the prime field")]
    ZeroDenominator(String),
}

pub fn parse_element(field: &Field, text: &str) -> Result<Elem, ExprError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let malformed = || ExprError::Malformed(text.to_string());
    if s.is_empty() {
        return Err(malformed());
    }

    for name in ["alpha", "α", "a"] {
        if let Some(rest) = s.strip_prefix(name) {
            if rest.is_empty() {
                return Ok(field.alpha());
            }
            let exp = rest.strip_prefix('^').ok_or_else(malformed)?;
            let exp = exp
                .strip_prefix('{')
                .and_then(|e| e.strip_suffix('}'))
                .unwrap_or(exp);
            let k: i64 = exp.parse().map_err(|_| malformed())?;
            return Ok(field.alpha_pow(k));
        }
    }

    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.parse().map_err(|_| malformed())?;
        let den: i64 = den.parse().map_err(|_| malformed())?;
        let den = field
            .inv(field.from_int(den))
            .map_err(|_| ExprError::ZeroDenominator(text.to_string()))?;
        return Ok(field.mul(field.from_int(num), den));
    }

    let k: i64 = s.parse().map_err(|_| malformed())?;
    Ok(field.from_int(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldSpec;

    fn gf25() -> Field {
        Field::new(FieldSpec::new(5, 1, 2, vec![2, 4, 1])).unwrap()
    }

    #[test]
    fn integers_and_fractions() {
        let f = gf25();
        assert_eq!(parse_element(&f, "0").unwrap(), Elem::ZERO);
        assert_eq!(parse_element(&f, "-2").unwrap(), f.from_int(3));
        let half = parse_element(&f, "3/2").unwrap();
        assert_eq!(f.mul(half, f.from_int(2)), f.from_int(3));
        assert_eq!(
            parse_element(&f, "1/5"),
            Err(ExprError::ZeroDenominator("1/5".into()))
        );
    }

    #[test]
    fn generator_powers() {
        let f = gf25();
        assert_eq!(parse_element(&f, "alpha").unwrap(), f.alpha());
        assert_eq!(parse_element(&f, "a^3").unwrap(), f.alpha_pow(3));
        assert_eq!(parse_element(&f, "alpha^{20}").unwrap(), f.alpha_pow(20));
        assert_eq!(parse_element(&f, "α^-1").unwrap(), f.alpha_pow(23));
        assert_eq!(parse_element(&f, "a^24").unwrap(), Elem::ONE);
    }

    #[test]
    fn garbage_rejected() {
        let f = gf25();
        for bad in ["", "b", "a^", "a^x", "1/", "1.5", "alpha3"] {
            assert!(
                matches!(parse_element(&f, bad), Err(ExprError::Malformed(_))),
                "{bad}"
            );
        }
    }
}
