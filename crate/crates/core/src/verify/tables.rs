use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::dickson::DicksonKind;

const BUILTIN: &str = include_str!("../../data/tables.csv");

/// Table ids in print order, with their captions.
pub const TABLES: [(&str, &str); 8] = [
    ("Dp", "Cyclic codes from D_{p^h}(x,a)"),
    ("D2", "Cyclic codes from D_2(x,a)"),
    ("D3", "Cyclic codes from D_3(x,a)"),
    ("D4", "Cyclic codes from D_4(x,a)"),
    ("D5", "Cyclic codes from D_5(x,a)"),
    ("D7-11", "Cyclic codes from D_i(x,a), i in {7,11}"),
    ("E", "Examples of cyclic codes from E_i(x,a)"),
    ("D-1", "More cyclic codes from D_i(x,a) - 1"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Opt {
    Yes,
    No,
    #[serde(rename = "AOP")]
    Aop,
    Maybe,
}

impl fmt::Display for Opt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Opt::Yes => "Yes",
            Opt::No => "No",
            Opt::Aop => "AOP",
            Opt::Maybe => "Maybe",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum Flag {
    Yes,
    No,
}

#[derive(Debug, Deserialize)]
struct RawRow {
    table: String,
    n: usize,
    k: usize,
    d: u32,
    m: u32,
    q: u32,
    a: String,
    bd: String,
    opt: Opt,
    regime: String,
    db: Flag,
    kind: String,
    order: u32,
    offset: i64,
}

/// One printed row, as printed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: String,
    /// Position within its table, from 1.
    pub index: usize,
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub m: u32,
    pub q: u32,
    pub a: String,
    /// Database bound; `None` where the column is blank.
    pub bd: Option<u32>,
    pub opt: Opt,
    pub regime: Option<String>,
    pub db: bool,
    pub kind: DicksonKind,
    pub order: u32,
    /// Prime-field constant added to the polynomial.
    pub offset: i64,
}

#[derive(Debug, Clone)]
pub struct TableSet {
    rows: Vec<TableRow>,
}

impl TableSet {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin tables are well formed")
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
        let bad = |line: usize, msg: String| VerifyError::Data {
            what: "tables".into(),
            msg: format!("record {line}: {msg}"),
        };
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let mut rows: Vec<TableRow> = Vec::new();
        for (i, rec) in rdr.deserialize().enumerate() {
            let r: RawRow = rec.map_err(|e| bad(i + 1, e.to_string()))?;
            if !TABLES.iter().any(|(id, _)| *id == r.table) {
                return Err(bad(i + 1, format!("unknown table {:?}", r.table)));
            }
            let kind = match r.kind.as_str() {
                "D" => DicksonKind::First,
                "E" => DicksonKind::Second,
                other => return Err(bad(i + 1, format!("kind {other:?} is not D or E"))),
            };
            let bd = match r.bd.trim() {
                "" | "-" => None,
                s => Some(s.parse().map_err(|_| bad(i + 1, format!("bad Bd {s:?}")))?),
            };
            let index = rows.iter().filter(|x| x.table == r.table).count() + 1;
            rows.push(TableRow {
                table: r.table,
                index,
                n: r.n,
                k: r.k,
                d: r.d,
                m: r.m,
                q: r.q,
                a: r.a,
                bd,
                opt: r.opt,
                regime: (!r.regime.is_empty()).then_some(r.regime),
                db: r.db == Flag::Yes,
                kind,
                order: r.order,
                offset: r.offset,
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn table(&self, id: &str) -> Result<Vec<&TableRow>, VerifyError> {
        if !TABLES.iter().any(|(t, _)| *t == id) {
            return Err(VerifyError::UnknownTable(id.to_string()));
        }
        Ok(self.rows.iter().filter(|r| r.table == id).collect())
    }
}

pub fn caption(id: &str) -> Option<&'static str> {
    TABLES.iter().find(|(t, _)| *t == id).map(|(_, c)| *c)
}
