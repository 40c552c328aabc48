use std::path::Path;

use serde::{Deserialize, Serialize};

use super::VerifyError;

const BUILTIN: &str = include_str!("../../data/errata.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErratumScope {
    /// A single printed table row; target is `<table>:<row>`, rows from 1.
    Row,
    /// A case formula of one regime; target is the regime id.
    Regime,
    /// A primitive-polynomial record.
    Registry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub id: String,
    pub scope: ErratumScope,
    pub target: String,
    pub field: String,
    pub printed: String,
    pub corrected: String,
    pub note: String,
}

#[derive(Debug, Clone, Default)]
pub struct Errata {
    entries: Vec<Erratum>,
}

impl Errata {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin errata are well formed")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, VerifyError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| VerifyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let mut entries: Vec<Erratum> = Vec::new();
        for rec in rdr.deserialize() {
            let e: Erratum = rec.map_err(|e| VerifyError::Data {
                what: "errata".into(),
                msg: e.to_string(),
            })?;
            if entries.iter().any(|x| x.id == e.id) {
                return Err(VerifyError::Data {
                    what: "errata".into(),
                    msg: format!("duplicate id {}", e.id),
                });
            }
            entries.push(e);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Erratum] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&Erratum> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn for_row<'a>(&'a self, table: &str, row: usize) -> impl Iterator<Item = &'a Erratum> + 'a {
        let target = format!("{table}:{row}");
        self.entries
            .iter()
            .filter(move |e| e.scope == ErratumScope::Row && e.target == target)
    }

    pub fn for_regime<'a>(&'a self, regime: &'a str) -> impl Iterator<Item = &'a Erratum> + 'a {
        self.entries
            .iter()
            .filter(move |e| e.scope == ErratumScope::Regime && e.target == regime)
    }
}
