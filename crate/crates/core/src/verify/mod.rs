//! Predicted parameters for the families with a closed form, table
//! reproduction and full-field sweeps.

mod errata;
mod predict;
mod report;
mod tables;

pub use errata::{Errata, Erratum, ErratumScope};
pub use predict::{
    compare, predict, quartic_ternary_weight3_word, CaseReport, DConstraint, PredictedCode,
    Regime, Verdict,
};
pub use report::{
    row_spec, run_row, run_table, run_table_with, sweep, BdCheck, RowReport, RowStatus, SweepLine,
    SweepReport, TableReport,
};
pub use tables::{caption, Opt, TableRow, TableSet, TABLES};

use thiserror::Error;

use crate::cyclic::CodeError;
use crate::galois::{ExprError, RegistryError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown table id {0:?}; known ids are Dp, D2, D3, D4, D5, D7-11, E, D-1")]
    UnknownTable(String),
    #[error("no theorem applies to {0}; use the generic pipeline")]
    OutOfRegime(String),
    #[error("{what}: {msg}")]
    Data { what: String, msg: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("table {table} row {row}: {source}")]
    Row {
        table: String,
        row: usize,
        #[source]
        source: Box<VerifyError>,
    },
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Code(#[from] CodeError),
}
