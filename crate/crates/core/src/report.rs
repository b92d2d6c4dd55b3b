//! Machine-readable reports and their human-readable rendering.
//!
//! Every number in a [`ReportDocument`] is a string: integers in decimal,
//! rationals as reduced `p/q`. The JSON layout is described by
//! `schema/report.schema.json`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::checks::{self, SearchMode, Witness};
use crate::complex::{Face, SimplicialComplex};
use crate::exact::rational_string;
use crate::invariants::f_vector;

pub const SCHEMA_VERSION: u32 = 1;

/// A check selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Eulerian,
    Ds,
    Formula,
    Proof,
    Flag,
}

impl Check {
    /// The checks selected by `all`. Flag status is informational and only
    /// checked on request.
    pub const ALL: [Check; 4] = [Check::Eulerian, Check::Ds, Check::Formula, Check::Proof];

    pub fn name(self) -> &'static str {
        match self {
            Check::Eulerian => "eulerian",
            Check::Ds => "ds",
            Check::Formula => "formula",
            Check::Proof => "proof",
            Check::Flag => "flag",
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eulerian" => Ok(Check::Eulerian),
            "ds" => Ok(Check::Ds),
            "formula" => Ok(Check::Formula),
            "proof" => Ok(Check::Proof),
            "flag" => Ok(Check::Flag),
            other => Err(format!(
                "unknown check `{other}` (expected eulerian, ds, formula, proof, flag or all)"
            )),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which checks to run. Checks named explicitly are *requested*: if their
/// precondition fails (e.g. `proof` on odd-dimensional input) that is an input
/// error. Checks pulled in by `all` are skipped instead.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    checks: BTreeMap<Check, bool>,
}

impl Selection {
    pub fn all() -> Self {
        let mut s = Selection::default();
        s.add_all();
        s
    }

    pub fn add(&mut self, check: Check) {
        self.checks.insert(check, true);
    }

    pub fn add_all(&mut self) {
        for c in Check::ALL {
            self.checks.entry(c).or_insert(false);
        }
    }

    /// Parses names such as `["eulerian", "formula"]` or `["all"]`. An empty
    /// list selects `all`.
    pub fn parse<S: AsRef<str>>(names: &[S]) -> Result<Self, String> {
        let mut s = Selection::default();
        for name in names {
            match name.as_ref() {
                "all" => s.add_all(),
                other => s.add(other.parse()?),
            }
        }
        if s.checks.is_empty() {
            s.add_all();
        }
        Ok(s)
    }

    pub fn contains(&self, check: Check) -> bool {
        self.checks.contains_key(&check)
    }

    pub fn is_requested(&self, check: Check) -> bool {
        self.checks.get(&check).copied().unwrap_or(false)
    }

    pub fn checks(&self) -> impl Iterator<Item = Check> + '_ {
        self.checks.keys().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDoc {
    File { path: String },
    Generator { spec: String },
    Inline,
}

impl fmt::Display for InputDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputDoc::File { path } => write!(f, "file {path}"),
            InputDoc::Generator { spec } => write!(f, "generator {spec}"),
            InputDoc::Inline => f.write_str("inline"),
        }
    }
}

/// A boolean property with an optional offending face (as labels).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusDoc {
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EulerianWitnessDoc {
    EmptyComplex,
    NotPure {
        face: Vec<String>,
    },
    Link {
        face: Vec<String>,
        link_chi: String,
        expected_chi: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianDoc {
    pub holds: bool,
    pub faces_checked: String,
    pub witness: Option<EulerianWitnessDoc>,
    pub failures: Vec<EulerianWitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsRowDoc {
    pub i: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainFormulaDoc {
    pub lhs: String,
    pub rhs: String,
    pub scaled_lhs: String,
    pub scaled_rhs: String,
    pub holds: bool,
    pub parity_warning: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTraceDoc {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "P")]
    pub p: String,
    pub a_eq_c: bool,
    pub a_eq_p: bool,
    pub a_eq_b: bool,
    pub ds_hold: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub outcome: Outcome,
    /// Named explicitly rather than implied by `all`.
    pub requested: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub input: InputDoc,
    pub dim: String,
    pub f_vector: Vec<String>,
    pub h_vector: Vec<String>,
    pub chi: String,
    pub is_pure: StatusDoc,
    pub is_flag: StatusDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub is_eulerian: Option<EulerianDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ds_rows: Option<Vec<DsRowDoc>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub main_formula: Option<MainFormulaDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub proof_trace: Option<ProofTraceDoc>,
    /// Outcome per selected check; empty for `info`.
    pub checks: BTreeMap<String, CheckEntry>,
}

fn labels(k: &SimplicialComplex, face: &Face) -> Vec<String> {
    k.face_labels(face)
}

fn eulerian_witness(k: &SimplicialComplex, w: &Witness) -> EulerianWitnessDoc {
    match w {
        Witness::EmptyComplex => EulerianWitnessDoc::EmptyComplex,
        Witness::NotPure { facet } => EulerianWitnessDoc::NotPure {
            face: labels(k, facet),
        },
        Witness::Link {
            face,
            link_chi,
            expected_chi,
        } => EulerianWitnessDoc::Link {
            face: labels(k, face),
            link_chi: link_chi.to_string(),
            expected_chi: expected_chi.to_string(),
        },
        other => unreachable!("not an eulerian witness: {other:?}"),
    }
}

impl ReportDocument {
    /// Invariants only: dimension, f- and h-vectors, χ, purity and flagness.
    pub fn info(k: &SimplicialComplex, input: InputDoc) -> Self {
        let f = f_vector(k);
        let h = f.h_vector();
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            input,
            dim: k.dim().to_string(),
            f_vector: f.counts().iter().map(u64::to_string).collect(),
            h_vector: h.coeffs().iter().map(ToString::to_string).collect(),
            chi: f.euler_characteristic().to_string(),
            is_pure: StatusDoc {
                holds: k.is_pure(),
                witness: k.purity_violation().map(|f| labels(k, f)),
            },
            is_flag: {
                let w = k.flag_violation();
                StatusDoc {
                    holds: w.is_none(),
                    witness: w.map(|f| labels(k, &f)),
                }
            },
            is_eulerian: None,
            ds_rows: None,
            main_formula: None,
            proof_trace: None,
            checks: BTreeMap::new(),
        }
    }

    /// Invariants plus the selected checks.
    pub fn check(k: &SimplicialComplex, input: InputDoc, selection: &Selection, mode: SearchMode) -> Self {
        let mut doc = Self::info(k, input);
        for check in selection.checks() {
            let requested = selection.is_requested(check);
            let entry = |holds: bool| CheckEntry {
                outcome: if holds { Outcome::Pass } else { Outcome::Fail },
                requested,
                reason: None,
            };
            let skipped = |e: crate::Error| CheckEntry {
                outcome: Outcome::NotApplicable,
                requested,
                reason: Some(e.to_string()),
            };
            let result = match check {
                Check::Eulerian => {
                    let r = checks::is_eulerian(k, mode);
                    let faces_checked = r
                        .values
                        .get("faces_checked")
                        .map_or_else(|| "0".to_owned(), ToString::to_string);
                    doc.is_eulerian = Some(EulerianDoc {
                        holds: r.holds,
                        faces_checked,
                        witness: r.witness.as_ref().map(|w| eulerian_witness(k, w)),
                        failures: r.failures.iter().map(|w| eulerian_witness(k, w)).collect(),
                    });
                    entry(r.holds)
                }
                Check::Ds => match checks::ds_residuals(k) {
                    Ok(ds) => {
                        doc.ds_rows = Some(
                            ds.rows
                                .iter()
                                .map(|r| DsRowDoc {
                                    i: r.i.to_string(),
                                    lhs: r.lhs.to_string(),
                                    rhs: r.rhs.to_string(),
                                    holds: r.holds,
                                })
                                .collect(),
                        );
                        entry(ds.report.holds)
                    }
                    Err(e) => skipped(e),
                },
                Check::Formula => match checks::check_main_formula(k) {
                    Ok(mf) => {
                        doc.main_formula = Some(MainFormulaDoc {
                            lhs: mf.lhs.to_string(),
                            rhs: rational_string(&mf.rhs),
                            scaled_lhs: mf.scaled_lhs.to_string(),
                            scaled_rhs: mf.scaled_rhs.to_string(),
                            holds: mf.holds,
                            parity_warning: mf.parity_warning,
                        });
                        entry(mf.holds)
                    }
                    Err(e) => skipped(e),
                },
                Check::Proof => match checks::proof_trace(k) {
                    Ok(t) => {
                        doc.proof_trace = Some(ProofTraceDoc {
                            a: t.a.to_string(),
                            b: t.b.to_string(),
                            c: t.c.to_string(),
                            p: t.p.to_string(),
                            a_eq_c: t.a_eq_c,
                            a_eq_p: t.a_eq_p,
                            a_eq_b: t.a_eq_b,
                            ds_hold: t.ds_hold,
                        });
                        entry(t.report.holds)
                    }
                    Err(e) => skipped(e),
                },
                Check::Flag => entry(doc.is_flag.holds),
            };
            doc.checks.insert(check.name().to_owned(), result);
        }
        doc
    }

    /// True iff no selected check failed or was inapplicable when requested.
    pub fn holds(&self) -> bool {
        self.exit_code() == 0
    }

    /// 0: all selected checks hold; 1: a check failed; 2: a requested check
    /// could not run on this input.
    pub fn exit_code(&self) -> u8 {
        let entries = self.checks.values();
        if entries
            .clone()
            .any(|e| e.requested && e.outcome == Outcome::NotApplicable)
        {
            2
        } else if entries.clone().any(|e| e.outcome == Outcome::Fail) {
            1
        } else {
            0
        }
    }

    /// Names of checks that failed.
    pub fn failed_checks(&self) -> BTreeSet<&str> {
        self.checks
            .iter()
            .filter(|(_, e)| e.outcome == Outcome::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// ANSI styling, disabled when color is off.
#[derive(Clone, Copy)]
struct Style(bool);

impl Style {
    fn paint(self, code: &str, s: &str) -> String {
        if self.0 {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_owned()
        }
    }

    fn verdict(self, holds: bool) -> String {
        if holds {
            self.paint("32", "PASS")
        } else {
            self.paint("31", "FAIL")
        }
    }
}

fn tuple(items: &[String]) -> String {
    format!("({})", items.join(","))
}

fn face(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(" "))
}

/// Renders `rows` with left-aligned text columns and right-aligned numbers.
fn table(out: &mut String, header: &[&str], rows: &[Vec<String>], right: &[bool]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut String, cells: &[String]| {
        let mut s = String::from("   ");
        for (i, cell) in cells.iter().enumerate() {
            let pad = widths[i] - cell.chars().count();
            if right[i] {
                s.push_str(&" ".repeat(pad));
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(pad));
            }
            s.push_str("  ");
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(out, &header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        line(out, row);
    }
}

/// Human-readable rendering of a report.
pub fn render_text(doc: &ReportDocument, color: bool) -> String {
    let style = Style(color);
    let mut out = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut summary = vec![
        ("input", doc.input.to_string()),
        ("dim", doc.dim.clone()),
        ("f-vector", tuple(&doc.f_vector)),
        ("h-vector", tuple(&doc.h_vector)),
        ("chi", doc.chi.clone()),
        ("pure", {
            let mut s = yes_no(doc.is_pure.holds).to_owned();
            if let Some(w) = &doc.is_pure.witness {
                let _ = write!(s, " (facet {} is not top-dimensional)", face(w));
            }
            s
        }),
        ("flag", {
            let mut s = yes_no(doc.is_flag.holds).to_owned();
            if let Some(w) = &doc.is_flag.witness {
                let _ = write!(s, " (clique {} is not a face)", face(w));
            }
            s
        }),
    ];
    let width = summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in summary.drain(..) {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }

    let order = [
        Check::Eulerian,
        Check::Ds,
        Check::Formula,
        Check::Proof,
        Check::Flag,
    ];
    for check in order {
        let name = check.name();
        let Some(entry) = doc.checks.get(name) else {
            continue;
        };
        out.push('\n');
        let verdict = match entry.outcome {
            Outcome::Pass => style.verdict(true),
            Outcome::Fail => style.verdict(false),
            Outcome::NotApplicable => style.paint("33", "N/A"),
        };
        let _ = writeln!(out, "[{verdict}] {name}");
        if let Some(reason) = &entry.reason {
            let _ = writeln!(out, "   {reason}");
        }
        match check {
            Check::Eulerian => render_eulerian(&mut out, doc),
            Check::Ds => render_ds(&mut out, doc, style),
            Check::Formula => render_formula(&mut out, doc),
            Check::Proof => render_proof(&mut out, doc),
            Check::Flag => {
                if let Some(w) = &doc.is_flag.witness {
                    let _ = writeln!(out, "   clique {} of the 1-skeleton is not a face", face(w));
                }
            }
        }
    }
    out
}

fn render_eulerian(out: &mut String, doc: &ReportDocument) {
    let Some(e) = &doc.is_eulerian else { return };
    let _ = writeln!(out, "   {} faces checked", e.faces_checked);
    let describe = |w: &EulerianWitnessDoc| match w {
        EulerianWitnessDoc::EmptyComplex => "the complex is empty".to_owned(),
        EulerianWitnessDoc::NotPure { face: f } => format!("facet {} is not top-dimensional", face(f)),
        EulerianWitnessDoc::Link {
            face: f,
            link_chi,
            expected_chi,
        } => format!("link of {} has chi {link_chi}, expected {expected_chi}", face(f)),
    };
    if e.failures.len() > 1 {
        let rows: Vec<Vec<String>> = e
            .failures
            .iter()
            .enumerate()
            .map(|(i, w)| vec![(i + 1).to_string(), describe(w)])
            .collect();
        table(out, &["#", "failure"], &rows, &[true, false]);
    } else if let Some(w) = &e.witness {
        let _ = writeln!(out, "   {}", describe(w));
    }
}

fn render_ds(out: &mut String, doc: &ReportDocument, style: Style) {
    let Some(rows) = &doc.ds_rows else { return };
    let d = rows.len().saturating_sub(1);
    let _ = writeln!(
        out,
        "   h_(d-i) - h_i = (-1)^i C(d,i) (chi - chi(S^(d-1))),  d = {d}"
    );
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.i.clone(),
                r.lhs.clone(),
                r.rhs.clone(),
                if r.holds {
                    style.paint("32", "ok")
                } else {
                    style.paint("31", "MISMATCH")
                },
            ]
        })
        .collect();
    table(out, &["i", "lhs", "rhs", ""], &body, &[true, true, true, false]);
}

fn render_formula(out: &mut String, doc: &ReportDocument) {
    let Some(mf) = &doc.main_formula else { return };
    let _ = writeln!(out, "   chi                  = {}", mf.lhs);
    let _ = writeln!(out, "   sum (-1/2)^i f_i     = {}", mf.rhs);
    let _ = writeln!(
        out,
        "   scaled by 2^dim      : {} vs {}",
        mf.scaled_lhs, mf.scaled_rhs
    );
    if mf.parity_warning {
        let _ = writeln!(
            out,
            "   warning: odd dimension, the identity is only expected in even dimension"
        );
    }
}

fn render_proof(out: &mut String, doc: &ReportDocument) {
    let Some(t) = &doc.proof_trace else { return };
    let mark = |b: bool| if b { "=" } else { "!=" };
    let rows = vec![
        vec!["A".into(), "h(-1)".into(), t.a.clone()],
        vec!["B".into(), "2^(2m) (chi - 2)".into(), t.b.clone()],
        vec!["C".into(), "f(-2)".into(), t.c.clone()],
        vec![
            "P".into(),
            "sum_(i<=m) (-1)^i (h_(d-i) - h_i)".into(),
            t.p.clone(),
        ],
    ];
    table(out, &["", "quantity", "value"], &rows, &[false, false, true]);
    let _ = writeln!(
        out,
        "   A {} C,  A {} P,  A {} B  (Dehn-Sommerville rows {})",
        mark(t.a_eq_c),
        mark(t.a_eq_p),
        mark(t.a_eq_b),
        if t.ds_hold { "hold" } else { "fail" }
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn selection_parsing() {
        let s = Selection::parse::<&str>(&[]).unwrap();
        assert_eq!(s, Selection::all());
        assert!(!s.contains(Check::Flag));
        assert!(!s.is_requested(Check::Proof));

        let s = Selection::parse(&["formula", "flag"]).unwrap();
        assert_eq!(s.checks().collect::<Vec<_>>(), vec![Check::Formula, Check::Flag]);
        assert!(s.is_requested(Check::Formula));

        let s = Selection::parse(&["all", "proof"]).unwrap();
        assert!(s.is_requested(Check::Proof));
        assert!(!s.is_requested(Check::Ds));
        assert!(Selection::parse(&["homology"]).is_err());
    }

    #[test]
    fn projective_plane_report() {
        let k = generators::projective_plane6().unwrap();
        let doc = ReportDocument::check(
            &k,
            InputDoc::Generator {
                spec: "projective_plane6".into(),
            },
            &Selection::all(),
            SearchMode::FirstFailure,
        );
        assert_eq!(doc.f_vector, ["6", "15", "10"]);
        assert_eq!(doc.h_vector, ["1", "3", "6", "0"]);
        let mf = doc.main_formula.as_ref().unwrap();
        assert_eq!((mf.lhs.as_str(), mf.rhs.as_str()), ("1", "1/1"));
        assert_eq!(doc.exit_code(), 0);
        assert!(!doc.is_flag.holds);
        let text = render_text(&doc, false);
        assert!(text.contains("[PASS] formula"), "{text}");
        assert!(!text.contains('\x1b'));
    }

    #[test]
    fn odd_dimension_under_all_skips_proof() {
        let k = generators::polygon(6).unwrap();
        let doc = ReportDocument::check(&k, InputDoc::Inline, &Selection::all(), SearchMode::FirstFailure);
        assert_eq!(doc.checks["proof"].outcome, Outcome::NotApplicable);
        assert_eq!(doc.checks["formula"].outcome, Outcome::Fail);
        assert_eq!(doc.exit_code(), 1);
        assert!(doc.proof_trace.is_none());

        let doc = ReportDocument::check(
            &k,
            InputDoc::Inline,
            &Selection::parse(&["proof"]).unwrap(),
            SearchMode::FirstFailure,
        );
        assert_eq!(doc.exit_code(), 2);
    }

    #[test]
    fn colored_output_uses_ansi() {
        let k = generators::simplex_boundary(3).unwrap();
        let doc = ReportDocument::check(&k, InputDoc::Inline, &Selection::all(), SearchMode::FirstFailure);
        assert!(render_text(&doc, true).contains("\x1b[32mPASS"));
    }

    #[test]
    fn json_round_trips() {
        let k = generators::suspension(&generators::torus7().unwrap()).unwrap();
        let doc = ReportDocument::check(&k, InputDoc::Inline, &Selection::all(), SearchMode::Exhaustive);
        let back: ReportDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }
}
