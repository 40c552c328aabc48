use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use super::predict::{compare, predict, CaseReport, Regime, Verdict};
use super::tables::{caption, Opt, TableRow, TableSet};
use super::{Errata, VerifyError};
use crate::cyclic::{
    bch_lower_bound, code_from_sequence, minimum_distance, DistanceConfig, DistanceMethod,
    DistanceResult,
};
use crate::dickson::{DicksonKind, DicksonSpec};
use crate::galois::{parse_element, Field, Registry};
use crate::lfsr::defining_sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MATCH-WITH-ERRATUM")]
    MatchWithErratum,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    /// The printed length is not q^m − 1; the row ran at q^m − 1.
    #[serde(rename = "FLAGGED")]
    Flagged,
}

impl RowStatus {
    pub fn label(self) -> &'static str {
        match self {
            RowStatus::Match => "MATCH",
            RowStatus::MatchWithErratum => "MATCH-WITH-ERRATUM",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Flagged => "FLAGGED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BdCheck {
    Ok,
    Exceeded,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub table: String,
    pub row: usize,
    /// Printed n, k, d.
    pub printed: [usize; 3],
    /// n, k, d after row errata.
    pub expected: [usize; 3],
    pub m: u32,
    pub q: u32,
    pub a: String,
    pub bd: Option<u32>,
    pub opt: Opt,
    pub n: usize,
    pub k: usize,
    pub d: String,
    pub d_method: DistanceMethod,
    pub bch_bound: u32,
    pub generator: String,
    pub witness: Option<String>,
    pub bd_check: BdCheck,
    pub status: RowStatus,
    pub errata: Vec<String>,
    pub regime: Option<CaseReport>,
    pub note: String,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub id: String,
    pub caption: String,
    pub rows: Vec<RowReport>,
    pub runtime_ms: u64,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    table: &'a str,
    row: usize,
    n: usize,
    k: usize,
    d: usize,
    m: u32,
    q: u32,
    a: &'a str,
    bd: String,
    opt: Opt,
    computed_n: usize,
    computed_k: usize,
    computed_d: &'a str,
    d_method: DistanceMethod,
    bch_bound: u32,
    bd_check: BdCheck,
    status: &'static str,
    errata: String,
    regime: String,
    regime_check: &'static str,
    note: &'a str,
}

impl TableReport {
    pub fn count(&self, status: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn has_mismatch(&self) -> bool {
        self.count(RowStatus::Mismatch) > 0
    }

    /// No timings, so output is reproducible.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(CsvRow {
                table: &r.table,
                row: r.row,
                n: r.printed[0],
                k: r.printed[1],
                d: r.printed[2],
                m: r.m,
                q: r.q,
                a: &r.a,
                bd: r.bd.map_or(String::new(), |b| b.to_string()),
                opt: r.opt,
                computed_n: r.n,
                computed_k: r.k,
                computed_d: &r.d,
                d_method: r.d_method,
                bch_bound: r.bch_bound,
                bd_check: r.bd_check,
                status: r.status.label(),
                errata: r.errata.join(";"),
                regime: r
                    .regime
                    .as_ref()
                    .map_or(String::new(), |c| format!("{} ({})", c.regime, c.case)),
                regime_check: match &r.regime {
                    None => "",
                    Some(c) if c.ok() => "ok",
                    Some(_) => "mismatch",
                },
                note: &r.note,
            })
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.id, self.caption);
        for r in &self.rows {
            let _ = write!(
                s,
                "{:>3}  q={:<2} m={:<2} a={:<10} printed [{},{},{}]  computed [{},{},{}] {:<11} {}",
                r.row,
                r.q,
                r.m,
                r.a,
                r.printed[0],
                r.printed[1],
                r.printed[2],
                r.n,
                r.k,
                r.d,
                r.d_method,
                r.status.label()
            );
            if !r.errata.is_empty() {
                let _ = write!(s, " [{}]", r.errata.join(","));
            }
            if !r.note.is_empty() {
                let _ = write!(s, "  {}", r.note);
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} rows: {} match, {} match with erratum, {} flagged, {} mismatch",
            self.rows.len(),
            self.count(RowStatus::Match),
            self.count(RowStatus::MatchWithErratum),
            self.count(RowStatus::Flagged),
            self.count(RowStatus::Mismatch)
        );
        s
    }
}

struct Expected {
    n: usize,
    k: usize,
    d: u32,
    m: u32,
    q: u32,
    bd: Option<u32>,
}

fn apply_errata(row: &TableRow, errata: &Errata) -> Result<(Expected, Vec<String>), VerifyError> {
    let mut e = Expected {
        n: row.n,
        k: row.k,
        d: row.d,
        m: row.m,
        q: row.q,
        bd: row.bd,
    };
    let mut ids = Vec::new();
    for x in errata.for_row(&row.table, row.index) {
        let bad = |msg: String| VerifyError::Data {
            what: format!("erratum {}", x.id),
            msg,
        };
        let num = |s: &str| -> Result<u64, VerifyError> {
            s.parse().map_err(|_| bad(format!("{s:?} is not a number")))
        };
        let printed = match x.field.as_str() {
            "n" => e.n.to_string(),
            "k" => e.k.to_string(),
            "d" => e.d.to_string(),
            "m" => e.m.to_string(),
            "q" => e.q.to_string(),
            "bd" => e.bd.map_or("-".into(), |b| b.to_string()),
            other => return Err(bad(format!("unknown field {other:?}"))),
        };
        if printed != x.printed {
            return Err(bad(format!("row prints {printed}, erratum expects {}", x.printed)));
        }
        match x.field.as_str() {
            "n" => e.n = num(&x.corrected)? as usize,
            "k" => e.k = num(&x.corrected)? as usize,
            "d" => e.d = num(&x.corrected)? as u32,
            "m" => e.m = num(&x.corrected)? as u32,
            "q" => e.q = num(&x.corrected)? as u32,
            _ => {
                e.bd = match x.corrected.as_str() {
                    "-" => None,
                    s => Some(num(s)? as u32),
                }
            }
        }
        ids.push(x.id.clone());
    }
    Ok((e, ids))
}

fn build_spec(row: &TableRow, exp: &Expected, registry: &Registry) -> Result<(Field, DicksonSpec), VerifyError> {
    let f = registry.field(exp.q, exp.m)?;
    let a = parse_element(&f, &row.a)?;
    let spec = match row.kind {
        DicksonKind::First => DicksonSpec::first(row.order, a),
        DicksonKind::Second => DicksonSpec::second(row.order, a),
    }
    .with_offset(f.from_int(row.offset));
    Ok((f, spec))
}

/// Field and polynomial of a row, with (q, m) taken after row errata.
pub fn row_spec(row: &TableRow, registry: &Registry, errata: &Errata) -> Result<(Field, DicksonSpec), VerifyError> {
    let (exp, _) = apply_errata(row, errata)?;
    build_spec(row, &exp, registry)
}

/// Builds one row's code through the generic pipeline and grades it.
/// `cfg.workers` is passed through to the distance search.
pub fn run_row(
    row: &TableRow,
    registry: &Registry,
    errata: &Errata,
    cfg: &DistanceConfig,
) -> Result<RowReport, VerifyError> {
    let start = Instant::now();
    let (exp, ids) = apply_errata(row, errata)?;
    let (f, spec) = build_spec(row, &exp, registry)?;
    let seq = defining_sequence(&f, &spec);
    let code = code_from_sequence(&f, &seq);
    let dist = minimum_distance(&f, &code, cfg)?;
    let n = code.n();
    let d_exact = dist.exact();

    let bd_check = match exp.bd {
        None => BdCheck::Skipped,
        Some(b) if dist.lower <= b => BdCheck::Ok,
        Some(_) => BdCheck::Exceeded,
    };

    let mut notes: Vec<String> = Vec::new();
    let regime = match &row.regime {
        None => None,
        Some(id) => match predict(&f, &spec) {
            Ok(pred) => {
                if pred.regime.id() != id {
                    notes.push(format!("row cites {id}, spec falls under {}", pred.regime));
                }
                let c = compare(&pred, &code, Some(&dist));
                if !c.ok() {
                    notes.push(format!(
                        "closed form disagrees: predicted k={} {}",
                        c.predicted_k, c.predicted_d
                    ));
                }
                Some(c)
            }
            // tables also list parameters outside the cited hypotheses
            Err(VerifyError::OutOfRegime(_)) => {
                notes.push(format!("outside the hypotheses of {id}"));
                None
            }
            Err(e) => return Err(e),
        },
    };
    let regime_ok = regime
        .as_ref()
        .is_none_or(|c| c.ok() && Some(c.regime.id()) == row.regime.as_deref());

    let params_match = n == exp.n && code.k() == exp.k && d_exact == Some(exp.d);
    let status = if exp.n != n {
        notes.insert(
            0,
            format!("printed n={} is not q^m-1={n}; ran at n={n}", exp.n),
        );
        RowStatus::Flagged
    } else if params_match && bd_check != BdCheck::Exceeded && regime_ok {
        if ids.is_empty() {
            RowStatus::Match
        } else {
            RowStatus::MatchWithErratum
        }
    } else {
        if d_exact.is_none() {
            notes.insert(0, format!("d undecided: {dist}"));
        } else if !params_match {
            notes.insert(
                0,
                format!("expected [{},{},{}]", exp.n, exp.k, exp.d),
            );
        }
        if bd_check == BdCheck::Exceeded {
            notes.push(format!("d exceeds Bd={}", exp.bd.unwrap()));
        }
        RowStatus::Mismatch
    };

    Ok(RowReport {
        table: row.table.clone(),
        row: row.index,
        printed: [row.n, row.k, row.d as usize],
        expected: [exp.n, exp.k, exp.d as usize],
        m: row.m,
        q: row.q,
        a: row.a.clone(),
        bd: row.bd,
        opt: row.opt,
        n,
        k: code.k(),
        d: dist.to_string(),
        d_method: dist.method,
        bch_bound: bch_lower_bound(&f, &code),
        generator: code.generator().to_text(&f),
        witness: dist.witness.as_ref().map(|w| w.to_text(&f)),
        bd_check,
        status,
        errata: ids,
        regime,
        note: notes.join("; "),
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs a shipped table against the shipped errata.
pub fn run_table(id: &str, registry: &Registry, cfg: &DistanceConfig) -> Result<TableReport, VerifyError> {
    run_table_with(id, &TableSet::builtin(), registry, &Errata::builtin(), cfg)
}

/// Rows run on `cfg.workers` threads, each with a single-threaded search.
pub fn run_table_with(
    id: &str,
    tables: &TableSet,
    registry: &Registry,
    errata: &Errata,
    cfg: &DistanceConfig,
) -> Result<TableReport, VerifyError> {
    let start = Instant::now();
    let rows = tables.table(id)?;
    let row_cfg = DistanceConfig {
        workers: 1,
        ..cfg.clone()
    };
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<RowReport, VerifyError>>>> =
        Mutex::new((0..rows.len()).map(|_| None).collect());
    let threads = cfg.workers.clamp(1, rows.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= rows.len() {
                    break;
                }
                let r = run_row(rows[i], registry, errata, &row_cfg).map_err(|e| VerifyError::Row {
                    table: rows[i].table.clone(),
                    row: rows[i].index,
                    source: Box::new(e),
                });
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let rows = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every row ran"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableReport {
        id: id.to_string(),
        caption: caption(id).unwrap_or_default().to_string(),
        rows,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepLine {
    pub a: String,
    pub case: String,
    pub predicted_k: usize,
    pub actual_k: usize,
    pub generator_match: bool,
    pub predicted_d: String,
    pub d: Option<String>,
    pub d_verdict: Option<Verdict>,
    pub printed_k: Option<usize>,
    pub printed_d_verdict: Option<Verdict>,
    pub errata: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub q: u32,
    pub m: u32,
    pub order: u32,
    pub regime: Regime,
    pub lines: Vec<SweepLine>,
}

impl SweepReport {
    pub fn generator_mismatches(&self) -> usize {
        self.lines.iter().filter(|l| !l.generator_match).count()
    }

    pub fn violations(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| l.d_verdict == Some(Verdict::Violated))
            .count()
    }

    pub fn ok(&self) -> bool {
        self.generator_mismatches() == 0 && self.violations() == 0
    }

    pub fn to_csv(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            a: &'a str,
            case: &'a str,
            predicted_k: usize,
            actual_k: usize,
            generator_match: bool,
            predicted_d: &'a str,
            d: &'a str,
            d_verdict: &'static str,
            errata: String,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for l in &self.lines {
            w.serialize(Line {
                a: &l.a,
                case: &l.case,
                predicted_k: l.predicted_k,
                actual_k: l.actual_k,
                generator_match: l.generator_match,
                predicted_d: &l.predicted_d,
                d: l.d.as_deref().unwrap_or(""),
                d_verdict: verdict_label(l.d_verdict),
                errata: l.errata.join(";"),
            })
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "D_{} over GF({}^{}), regime {}\n",
            self.order, self.q, self.m, self.regime
        );
        for l in &self.lines {
            let _ = write!(
                s,
                "a={:<8} k={:<4} {} {:<12} ",
                l.a,
                l.actual_k,
                if l.generator_match { "generator ok      " } else { "GENERATOR MISMATCH" },
                l.predicted_d
            );
            if let Some(d) = &l.d {
                let _ = write!(s, "d={d} {} ", verdict_label(l.d_verdict));
            }
            let _ = write!(s, "{}", l.case);
            if !l.errata.is_empty() {
                let _ = write!(s, " [{}]", l.errata.join(","));
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} values of a: {} generator mismatches, {} distance violations",
            self.lines.len(),
            self.generator_mismatches(),
            self.violations()
        );
        s
    }
}

fn verdict_label(v: Option<Verdict>) -> &'static str {
    match v {
        None => "",
        Some(Verdict::Holds) => "holds",
        Some(Verdict::Violated) => "VIOLATED",
        Some(Verdict::Undecided) => "undecided",
    }
}

/// Every a in GF(q^m): closed form against the pipeline. With `distance`
/// set, also checks the distance claim, one search per distinct generator;
/// codes with k = 0 have no distance and are skipped.
pub fn sweep(
    f: &Field,
    order: u32,
    distance: Option<&DistanceConfig>,
) -> Result<SweepReport, VerifyError> {
    let regime = predict(f, &DicksonSpec::first(order, crate::galois::Elem::ONE))?.regime;
    let mut cache: HashMap<String, DistanceResult> = HashMap::new();
    let mut lines = Vec::new();
    for a in f.elements() {
        let spec = DicksonSpec::first(order, a);
        let pred = predict(f, &spec)?;
        let code = code_from_sequence(f, &defining_sequence(f, &spec));
        let dist = match distance {
            None => None,
            Some(_) if code.k() == 0 => None,
            Some(cfg) => {
                let key = code.generator().to_text(f);
                if !cache.contains_key(&key) {
                    let d = minimum_distance(f, &code, cfg)?;
                    cache.insert(key.clone(), d);
                }
                cache.get(&key).cloned()
            }
        };
        let c = compare(&pred, &code, dist.as_ref());
        lines.push(SweepLine {
            a: f.fmt_elem(a),
            case: c.case,
            predicted_k: c.predicted_k,
            actual_k: c.actual_k,
            generator_match: c.generator_match,
            predicted_d: c.predicted_d,
            d: dist.map(|d| d.to_string()),
            d_verdict: c.d_verdict,
            printed_k: c.printed_k,
            printed_d_verdict: c.printed_d_verdict,
            errata: c.errata,
        });
    }
    Ok(SweepReport {
        q: f.q(),
        m: f.m(),
        order,
        regime,
        lines,
    })
}
