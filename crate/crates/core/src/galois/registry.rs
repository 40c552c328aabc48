use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use super::{prime_power, Field, FieldSpec, GaloisError};

const BUILTIN: &str = include_str!("../../data/registry.txt");

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("registry line {line}: duplicate record for q={q}, m={m}")]
    Duplicate { line: usize, q: u32, m: u32 },
    #[error("unknown field: q={q} is not a prime power (m={m})")]
    UnknownField { q: u32, m: u32 },
    #[error("cannot read registry {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Field(#[from] GaloisError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub spec: FieldSpec,
    /// The record replaces a printed value that cannot be used as is.
    pub is_override: bool,
}

/// Primitive polynomials keyed by (q, m).
#[derive(Debug, Clone, Default)]
pub struct Registry {
    entries: BTreeMap<(u32, u32), RegistryEntry>,
}

impl Registry {
    /// The registry shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin registry is well formed")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RegistryError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses records `p t m c0 c1 … cD [override]`, `#` starting a comment.
    /// Every record is validated by building its field.
    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut tokens: Vec<&str> = body.split_whitespace().collect();
            let is_override = tokens.last() == Some(&"override");
            if is_override {
                tokens.pop();
            }
            let nums = tokens
                .iter()
                .map(|tok| tok.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| RegistryError::Parse {
                    line,
                    msg: format!("expected integers: {e}"),
                })?;
            if nums.len() < 5 {
                return Err(RegistryError::Parse {
                    line,
                    msg: "need p, t, m and at least two coefficients".into(),
                });
            }
            let spec = FieldSpec::new(nums[0], nums[1], nums[2], nums[3..].to_vec());
            Field::new(spec.clone()).map_err(|e| RegistryError::Parse {
                line,
                msg: e.to_string(),
            })?;
            let key = (spec.q(), spec.m);
            if entries.contains_key(&key) {
                return Err(RegistryError::Duplicate {
                    line,
                    q: key.0,
                    m: key.1,
                });
            }
            entries.insert(key, RegistryEntry { spec, is_override });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.values()
    }

    pub fn get(&self, q: u32, m: u32) -> Option<&RegistryEntry> {
        self.entries.get(&(q, m))
    }

    /// The recorded spec for (q, m), or the deterministic default.
    pub fn spec(&self, q: u32, m: u32) -> Result<FieldSpec, RegistryError> {
        if let Some(e) = self.entries.get(&(q, m)) {
            return Ok(e.spec.clone());
        }
        let (p, t) = prime_power(q).ok_or(RegistryError::UnknownField { q, m })?;
        if m == 0 {
            return Err(RegistryError::UnknownField { q, m });
        }
        Ok(FieldSpec::smallest_primitive(p, t, m)?)
    }

    pub fn field(&self, q: u32, m: u32) -> Result<Field, RegistryError> {
        Ok(Field::new(self.spec(q, m)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_all_recorded_fields() {
        let reg = Registry::builtin();
        let keys: Vec<(u32, u32)> = reg.entries().map(|e| (e.spec.q(), e.spec.m)).collect();
        for key in [
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (2, 7),
            (2, 8),
            (3, 2),
            (3, 3),
            (3, 4),
            (3, 5),
            (4, 2),
            (4, 3),
            (4, 4),
            (5, 2),
            (5, 3),
            (7, 2),
            (8, 2),
            (9, 2),
        ] {
            assert!(keys.contains(&key), "missing {key:?}");
        }
    }

    #[test]
    fn unprinted_pairs_follow_default_rule() {
        let reg = Registry::builtin();
        for (q, m) in [(2, 1), (2, 2), (4, 1), (8, 1), (3, 1), (9, 1), (5, 1), (7, 1), (3, 5)] {
            let e = reg.get(q, m).unwrap();
            let d = FieldSpec::smallest_primitive(e.spec.p, e.spec.t, m).unwrap();
            assert_eq!(e.spec, d, "q={q} m={m}");
        }
    }

    #[test]
    fn swapped_rows_are_overrides_of_correct_degree() {
        let reg = Registry::builtin();
        let e8 = reg.get(8, 2).unwrap();
        assert!(e8.is_override);
        assert_eq!(e8.spec.prim_poly, vec![1, 1, 0, 1, 1, 0, 1]);
        let e9 = reg.get(9, 2).unwrap();
        assert!(e9.is_override);
        assert_eq!(e9.spec.p, 3);
        assert_eq!(e9.spec.prim_poly, vec![2, 0, 0, 2, 1]);
    }

    #[test]
    fn defaults_for_missing_pairs() {
        let reg = Registry::builtin();
        let f = reg.field(5, 1).unwrap();
        assert_eq!(f.alpha(), f.from_int(2));
        let f = reg.field(9, 1).unwrap();
        assert_eq!(f.order(), 9);
        assert!(matches!(
            reg.spec(6, 2),
            Err(RegistryError::UnknownField { q: 6, m: 2 })
        ));
    }

    #[test]
    fn parse_errors_are_located() {
        let err = Registry::parse("# c\n2 1 3 1 1 1 1\n").unwrap_err();
        match err {
            RegistryError::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("reducible"), "{msg}");
            }
            other => panic!("unexpected {other}"),
        }
        assert!(matches!(
            Registry::parse("2 1 3 1 1 0 1\n2 1 3 1 0 1 1\n"),
            Err(RegistryError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            Registry::parse("2 1 x 1 1\n"),
            Err(RegistryError::Parse { line: 1, .. })
        ));
    }
}
