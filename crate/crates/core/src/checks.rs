//! Audits of the Eulerian link condition, the Dehn–Sommerville relations in
//! h-vector form, the alternating `(-1/2)^i` formula for χ, and the
//! intermediate polynomial identities that connect them.
//!
//! Every check produces a [`CheckReport`] whose numeric values are exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exact::{binomial, pow2, rational_string, sign, Rational};
use crate::invariants::{f_vector, FVector, HVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Eulerian,
    DehnSommerville,
    MainFormula,
    ProofTrace,
    Flag,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Eulerian => "eulerian",
            CheckKind::DehnSommerville => "dehn_sommerville",
            CheckKind::MainFormula => "main_formula",
            CheckKind::ProofTrace => "proof_trace",
            CheckKind::Flag => "flag",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact quantity recorded in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Integer(BigInt),
    Rational(Rational),
    Bool(bool),
}

impl ExactValue {
    pub fn int(v: impl Into<BigInt>) -> Self {
        ExactValue::Integer(v.into())
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Integer(v) => write!(f, "{v}"),
            ExactValue::Rational(r) => f.write_str(&rational_string(r)),
            ExactValue::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// Where a check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    EmptyComplex,
    /// A facet whose dimension is below the complex dimension.
    NotPure {
        facet: Face,
    },
    /// A face whose link has the wrong Euler characteristic.
    Link {
        face: Face,
        link_chi: i64,
        expected_chi: i64,
    },
    /// A failing Dehn–Sommerville row.
    Row(usize),
    /// A clique of the 1-skeleton that is not a face.
    NonFaceClique(Face),
    /// A named identity that does not hold.
    Identity(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub holds: bool,
    /// First failure in canonical order.
    pub witness: Option<Witness>,
    /// Every failure found; only the first unless the check ran exhaustively.
    pub failures: Vec<Witness>,
    pub values: BTreeMap<&'static str, ExactValue>,
}

impl CheckReport {
    fn new(kind: CheckKind) -> Self {
        CheckReport {
            kind,
            holds: true,
            witness: None,
            failures: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    fn fail(&mut self, w: Witness) {
        self.holds = false;
        if self.witness.is_none() {
            self.witness = Some(w.clone());
        }
        self.failures.push(w);
    }

    fn set(&mut self, name: &'static str, v: ExactValue) {
        self.values.insert(name, v);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first failure.
    #[default]
    FirstFailure,
    /// Collect every failure.
    Exhaustive,
}

/// χ(S^n) = 1 + (-1)^n, with χ(S^{-1}) = 0 for the empty sphere.
pub fn sphere_chi(n: i64) -> Result<i64> {
    match n {
        n if n < -1 => Err(Error::SphereDimension(n)),
        -1 => Ok(0),
        n => Ok(1 + sign(n as u64)),
    }
}

/// Checks that `k` is nonempty and pure and that the link of every nonempty
/// face σ has χ(link σ) = χ(S^{dim K - dim σ - 1}).
///
/// Faces are visited in (dimension, lexicographic) order; links are evaluated
/// in parallel but the reported witness is always the first failure in that
/// order.
pub fn is_eulerian(k: &SimplicialComplex, mode: SearchMode) -> CheckReport {
    let mut report = CheckReport::new(CheckKind::Eulerian);
    if k.is_empty() {
        report.fail(Witness::EmptyComplex);
        return report;
    }
    if let Some(facet) = k.purity_violation() {
        report.fail(Witness::NotPure { facet: facet.clone() });
        if mode == SearchMode::FirstFailure {
            return report;
        }
    }

    let dim = k.dim();
    let faces: Vec<&Face> = k.faces().collect();
    let check = |face: &&Face| -> Option<Witness> {
        let expected = sphere_chi(dim - face.dim() - 1).expect("dim K >= dim σ");
        let link_chi = k.link_euler_characteristic(face);
        (link_chi != expected).then(|| Witness::Link {
            face: (*face).clone(),
            link_chi,
            expected_chi: expected,
        })
    };
    match mode {
        SearchMode::FirstFailure => {
            if let Some(w) = faces.par_iter().map(check).find_first(Option::is_some) {
                report.fail(w.expect("filtered"));
            }
        }
        SearchMode::Exhaustive => {
            let found: Vec<Witness> = faces.par_iter().filter_map(check).collect();
            for w in found {
                report.fail(w);
            }
        }
    }
    report.set("faces_checked", ExactValue::int(faces.len()));
    if let Some(Witness::Link {
        link_chi,
        expected_chi,
        ..
    }) = report.witness.clone()
    {
        report.set("witness_link_chi", ExactValue::int(link_chi));
        report.set("witness_expected_chi", ExactValue::int(expected_chi));
    }
    report
}

/// One Dehn–Sommerville relation `h_{d-i} - h_i = (-1)^i C(d,i) (χ(K) - χ(S^{d-1}))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsRow {
    pub i: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsResiduals {
    pub rows: Vec<DsRow>,
    pub report: CheckReport,
}

/// Evaluates every relation for `i = 0..=d`, where `d = dim K + 1`. Rows are
/// computed for any nonempty complex; they are only guaranteed to hold for
/// Eulerian manifolds.
pub fn ds_residuals(k: &SimplicialComplex) -> Result<DsResiduals> {
    if k.is_empty() {
        return Err(Error::EmptyComplex {
            operation: "ds_residuals",
        });
    }
    let f = f_vector(k);
    Ok(ds_rows_from(&f, &f.h_vector()))
}

fn ds_rows_from(f: &FVector, h: &HVector) -> DsResiduals {
    let d = h.d();
    let chi = f.euler_characteristic();
    let excess = chi - sphere_chi(d as i64 - 1).expect("d >= 1");
    let rows: Vec<DsRow> = (0..=d)
        .map(|i| {
            let lhs = h.get(d - i) - h.get(i);
            let rhs = sign(i as u64) * binomial(d as u64, i as u64) * excess;
            DsRow {
                i,
                holds: lhs == rhs,
                lhs,
                rhs,
            }
        })
        .collect();
    let mut report = CheckReport::new(CheckKind::DehnSommerville);
    for row in rows.iter().filter(|r| !r.holds) {
        report.fail(Witness::Row(row.i));
    }
    report.set("d", ExactValue::int(d));
    report.set("chi", ExactValue::int(chi));
    report.set("chi_minus_sphere_chi", ExactValue::int(excess));
    DsResiduals { rows, report }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainFormula {
    /// χ(K).
    pub lhs: i64,
    /// `Σ (-1/2)^i f_i`.
    pub rhs: Rational,
    /// `2^n χ(K)` with `n = dim K`.
    pub scaled_lhs: BigInt,
    /// `Σ (-1)^i 2^{n-i} f_i`.
    pub scaled_rhs: BigInt,
    pub holds: bool,
    /// Set when `dim K` is odd and the formula is not expected to hold.
    pub parity_warning: bool,
    pub report: CheckReport,
}

/// Compares χ(K) with `Σ_{i=0}^{dim K} (-1/2)^i f_i`.
///
/// Equality is decided on the integer identity scaled by `2^{dim K}`; the
/// rational right-hand side is reported alongside. Odd-dimensional input is
/// evaluated the same way and flagged.
pub fn check_main_formula(k: &SimplicialComplex) -> Result<MainFormula> {
    if k.is_empty() {
        return Err(Error::EmptyComplex {
            operation: "check_main_formula",
        });
    }
    let f = f_vector(k);
    let n = k.dim() as u64;
    let lhs = f.euler_characteristic();
    let scaled_lhs = pow2(n) * lhs;
    let scaled_rhs = f
        .counts()
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, &fi)| {
            acc + sign(i as u64) * pow2(n - i as u64) * BigInt::from(fi)
        });
    let rhs = f
        .counts()
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, &fi)| {
            acc + Rational::new(BigInt::from(sign(i as u64)) * fi, pow2(i as u64))
        });
    let holds = scaled_lhs == scaled_rhs;
    debug_assert_eq!(holds, rhs == Rational::from_integer(lhs.into()));
    let parity_warning = n % 2 == 1;

    let mut report = CheckReport::new(CheckKind::MainFormula);
    if !holds {
        report.fail(Witness::Identity("chi = sum (-1/2)^i f_i"));
    }
    report.set("lhs", ExactValue::int(lhs));
    report.set("rhs", ExactValue::Rational(rhs.clone()));
    report.set("scaled_lhs", ExactValue::Integer(scaled_lhs.clone()));
    report.set("scaled_rhs", ExactValue::Integer(scaled_rhs.clone()));
    report.set("parity_warning", ExactValue::Bool(parity_warning));
    Ok(MainFormula {
        lhs,
        rhs,
        scaled_lhs,
        scaled_rhs,
        holds,
        parity_warning,
        report,
    })
}

/// The chain of identities linking the h-polynomial at -1 to the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    /// `h_K(-1)`.
    pub a: BigInt,
    /// `2^{2m} (χ(K) - 2)`.
    pub b: BigInt,
    /// `f_K(-2)`.
    pub c: BigInt,
    /// `Σ_{i=0}^{m} (-1)^i (h_{2m+1-i} - h_i)`.
    pub p: BigInt,
    pub a_eq_c: bool,
    pub a_eq_p: bool,
    pub a_eq_b: bool,
    /// Whether every Dehn–Sommerville row holds; implies `a_eq_b`.
    pub ds_hold: bool,
    pub report: CheckReport,
}

/// Evaluates the intermediate quantities for an even-dimensional complex of
/// dimension `2m`. `A = C` and `A = P` hold for every such complex; `A = B`
/// follows when the Dehn–Sommerville rows hold.
pub fn proof_trace(k: &SimplicialComplex) -> Result<ProofTrace> {
    if k.is_empty() {
        return Err(Error::EmptyComplex {
            operation: "proof_trace",
        });
    }
    let dim = k.dim();
    if dim % 2 != 0 {
        return Err(Error::OddDimension {
            operation: "proof_trace",
            dim,
        });
    }
    let m = (dim / 2) as usize;
    let f = f_vector(k);
    let h = f.h_vector();
    let d = h.d();
    debug_assert_eq!(d, 2 * m + 1);

    let a = h.eval(&BigInt::from(-1));
    let c = f.eval(&BigInt::from(-2));
    let b = pow2(2 * m as u64) * (f.euler_characteristic() - 2);
    let p = (0..=m).fold(BigInt::zero(), |acc, i| {
        acc + sign(i as u64) * (h.get(d - i) - h.get(i))
    });
    let ds_hold = ds_rows_from(&f, &h).report.holds;

    let a_eq_c = a == c;
    let a_eq_p = a == p;
    let a_eq_b = a == b;
    let mut report = CheckReport::new(CheckKind::ProofTrace);
    if !a_eq_c {
        report.fail(Witness::Identity("h(-1) = f(-2)"));
    }
    if !a_eq_p {
        report.fail(Witness::Identity("h(-1) = sum (-1)^i (h_{d-i} - h_i)"));
    }
    if !a_eq_b {
        report.fail(Witness::Identity("h(-1) = 2^{2m} (chi - 2)"));
    }
    report.set("A", ExactValue::Integer(a.clone()));
    report.set("B", ExactValue::Integer(b.clone()));
    report.set("C", ExactValue::Integer(c.clone()));
    report.set("P", ExactValue::Integer(p.clone()));
    report.set("ds_hold", ExactValue::Bool(ds_hold));
    Ok(ProofTrace {
        a,
        b,
        c,
        p,
        a_eq_c,
        a_eq_p,
        a_eq_b,
        ds_hold,
        report,
    })
}

/// Flag-complex check; the witness is a minimal non-face clique.
pub fn flag_check(k: &SimplicialComplex) -> CheckReport {
    let mut report = CheckReport::new(CheckKind::Flag);
    if let Some(clique) = k.flag_violation() {
        report.fail(Witness::NonFaceClique(clique));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(facets: Vec<Vec<String>>) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets).unwrap()
    }

    fn simplex_boundary(n: usize) -> SimplicialComplex {
        complex(
            (0..=n)
                .map(|skip| (0..=n).filter(|&v| v != skip).map(|v| v.to_string()).collect())
                .collect(),
        )
    }

    fn cycle(n: usize) -> SimplicialComplex {
        complex(
            (0..n)
                .map(|i| vec![i.to_string(), ((i + 1) % n).to_string()])
                .collect(),
        )
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn sphere_characteristics() {
        assert_eq!(sphere_chi(-1), Ok(0));
        assert_eq!(sphere_chi(0), Ok(2));
        assert_eq!(sphere_chi(2), Ok(2));
        assert_eq!(sphere_chi(3), Ok(0));
        assert_eq!(sphere_chi(-2), Err(Error::SphereDimension(-2)));
    }

    #[test]
    fn simplex_boundaries_are_eulerian() {
        for n in 2..=5 {
            let r = is_eulerian(&simplex_boundary(n), SearchMode::FirstFailure);
            assert!(r.holds, "n={n}: {r:?}");
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn empty_and_impure_complexes_are_not_eulerian() {
        let r = is_eulerian(&SimplicialComplex::empty(), SearchMode::FirstFailure);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Witness::EmptyComplex));

        let mut facets: Vec<Vec<String>> = simplex_boundary(3)
            .facets()
            .iter()
            .map(|f| f.vertices().iter().map(|v| v.to_string()).collect())
            .collect();
        facets.push(vec!["x".into(), "y".into()]);
        let k = complex(facets);
        let r = is_eulerian(&k, SearchMode::FirstFailure);
        assert!(matches!(r.witness, Some(Witness::NotPure { .. })));
        assert_eq!(r.failures.len(), 1);
        let r = is_eulerian(&k, SearchMode::Exhaustive);
        assert!(r.failures.len() > 1);
    }

    #[test]
    fn two_triangles_sharing_an_edge_fail_at_a_boundary_vertex() {
        // A disc: boundary vertex links are paths (χ = 1) rather than circles (χ = 0).
        let k = complex(vec![
            vec!["a".into(), "b".into(), "c".into()],
            vec!["b".into(), "c".into(), "d".into()],
        ]);
        let r = is_eulerian(&k, SearchMode::FirstFailure);
        assert!(!r.holds);
        match r.witness.unwrap() {
            Witness::Link {
                face,
                link_chi,
                expected_chi,
            } => {
                assert_eq!(k.face_labels(&face), vec!["a"]);
                assert_eq!((link_chi, expected_chi), (1, 0));
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let all = is_eulerian(&k, SearchMode::Exhaustive);
        // Four vertices and the four boundary edges fail; the inner edge passes.
        assert_eq!(all.failures.len(), 8);
        assert_eq!(all.witness, Some(all.failures[0].clone()));
    }

    #[test]
    fn ds_rows_for_tetrahedron_boundary() {
        let ds = ds_residuals(&simplex_boundary(3)).unwrap();
        assert_eq!(ds.rows.len(), 5 - 1);
        assert!(ds.rows.iter().all(|r| r.holds && r.rhs.is_zero()));
        assert!(ds.report.holds);
    }

    #[test]
    fn ds_rows_from_reference_h_vectors() {
        let rp2 = FVector::new(vec![6, 15, 10]);
        let ds = ds_rows_from(&rp2, &rp2.h_vector());
        assert_eq!(
            ds.rows.iter().map(|r| r.lhs.clone()).collect::<Vec<_>>(),
            ints(&[-1, 3, -3, 1])
        );
        assert_eq!(
            ds.rows.iter().map(|r| r.rhs.clone()).collect::<Vec<_>>(),
            ints(&[-1, 3, -3, 1])
        );
        let torus = FVector::new(vec![7, 21, 14]);
        let ds = ds_rows_from(&torus, &torus.h_vector());
        assert_eq!(ds.rows[0].lhs, BigInt::from(-2));
        assert_eq!(ds.rows[1].lhs, BigInt::from(6));
        assert!(ds.report.holds);
    }

    #[test]
    fn ds_rows_fail_off_manifolds() {
        let disc = complex(vec![vec!["a".into(), "b".into(), "c".into()]]);
        let ds = ds_residuals(&disc).unwrap();
        assert!(!ds.report.holds);
        // Row 0 holds by accident for a single triangle; row 1 does not.
        assert!(ds.rows[0].holds);
        assert_eq!(ds.report.witness, Some(Witness::Row(1)));
        assert!(ds_residuals(&SimplicialComplex::empty()).is_err());
    }

    #[test]
    fn main_formula_on_tetrahedron_boundary() {
        let mf = check_main_formula(&simplex_boundary(3)).unwrap();
        assert_eq!(mf.lhs, 2);
        assert_eq!(mf.rhs, Rational::from_integer(2.into()));
        assert_eq!(mf.scaled_lhs, BigInt::from(8));
        assert_eq!(mf.scaled_rhs, BigInt::from(8));
        assert!(mf.holds && !mf.parity_warning);
    }

    #[test]
    fn main_formula_fails_on_hexagon() {
        let mf = check_main_formula(&cycle(6)).unwrap();
        assert_eq!(mf.lhs, 0);
        assert_eq!(rational_string(&mf.rhs), "3/1");
        assert!(!mf.holds);
        assert!(mf.parity_warning);
        assert!(mf.report.witness.is_some());
    }

    #[test]
    fn proof_trace_on_tetrahedron_boundary() {
        let t = proof_trace(&simplex_boundary(3)).unwrap();
        assert_eq!(
            (t.a.clone(), t.b.clone(), t.c.clone()),
            (0.into(), 0.into(), 0.into())
        );
        assert!(t.a_eq_b && t.a_eq_c && t.a_eq_p && t.ds_hold);
    }

    #[test]
    fn proof_trace_rejects_odd_dimension() {
        assert!(matches!(
            proof_trace(&cycle(5)),
            Err(Error::OddDimension { dim: 1, .. })
        ));
    }

    #[test]
    fn proof_trace_on_a_disc_breaks_only_the_last_link() {
        let disc = complex(vec![vec!["a".into(), "b".into(), "c".into()]]);
        let t = proof_trace(&disc).unwrap();
        assert!(t.a_eq_c && t.a_eq_p);
        assert!(!t.ds_hold);
        assert!(!t.a_eq_b);
        assert_eq!(
            t.report.witness,
            Some(Witness::Identity("h(-1) = 2^{2m} (chi - 2)"))
        );
    }

    #[test]
    fn flag_report() {
        let r = flag_check(&simplex_boundary(3));
        assert!(!r.holds);
        assert!(matches!(r.witness, Some(Witness::NonFaceClique(ref f)) if f.len() == 4));
        assert!(flag_check(&cycle(4)).holds);
    }
}
