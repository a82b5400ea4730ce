//! Command-line front end: parse invariant documents and space expressions,
//! dispatch to the engines, and render text or JSON reports in which every
//! summand and factor carries its provenance.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cohomology::{evaluate_manifold_report, TheoryDescriptor};
use crate::gauge::{
    classify_su_bundles, gauge_trivial, gauge_su, pi_factors, require_zero_c2, GaugeReport,
};
use crate::hilton::pi_wedge;
use crate::homotopy;
use crate::spaces::{parse as parse_space, Localization, SpaceExpr, Term};
use crate::splitter::{split_report, validate, ManifoldInvariants, P1Action, RawInvariants, RawP1Action, Validated};

/// The JSON document describing the invariants of the manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsDocument {
    pub b: i64,
    pub d: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<TorsionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1_action: Option<P1ActionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1_mod_3: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionEntry {
    pub p: u64,
    pub r: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "type", rename_all = "lowercase")]
pub enum P1ActionDoc {
    Trivial,
    Free {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        indices: Vec<usize>,
    },
    Torsion {
        indices: Vec<usize>,
    },
}

impl InvariantsDocument {
    pub fn to_raw(&self) -> RawInvariants {
        RawInvariants {
            b: self.b,
            d: self.d,
            torsion: self
                .torsion
                .iter()
                .map(|t| (BigUint::from(t.p), t.r))
                .collect(),
            p1_action: self.p1_action.as_ref().map(|a| match a {
                P1ActionDoc::Trivial => RawP1Action::Trivial,
                P1ActionDoc::Free { indices } => RawP1Action::Free {
                    indices: indices.clone(),
                },
                P1ActionDoc::Torsion { indices } => RawP1Action::Torsion {
                    indices: indices.clone(),
                },
            }),
            p1_mod_3: self.p1_mod_3,
        }
    }

    /// The normalized document for validated invariants (2-primary torsion
    /// dropped, the action made explicit).
    pub fn from_invariants(inv: &ManifoldInvariants) -> Self {
        InvariantsDocument {
            b: inv.b() as i64,
            d: inv.d() as i64,
            torsion: inv
                .torsion()
                .iter()
                .map(|t| TorsionEntry {
                    p: t.prime.to_u64().expect("document-scale prime"),
                    r: t.exp,
                })
                .collect(),
            p1_action: Some(match inv.p1() {
                P1Action::Trivial => P1ActionDoc::Trivial,
                P1Action::NontrivialFree => P1ActionDoc::Free { indices: vec![] },
                P1Action::NontrivialTorsion(ix) => P1ActionDoc::Torsion {
                    indices: ix.clone(),
                },
            }),
            p1_mod_3: None,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sixsplit",
    version,
    about = "Suspension splittings, cohomology and gauge groups of simply connected 6-manifolds, away from 2"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check an invariants document and print the homology table
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decompose the suspension of M into a wedge of catalogue atoms
    Split {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a reduced cohomology theory on M through the splitting
    Cohomology {
        file: PathBuf,
        /// HZ, HZmod:<q>, or KU
        #[arg(long)]
        theory: String,
        #[arg(long)]
        degree: Option<i64>,
        /// All degrees 0..=6
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a gauge group over M
    Gauge {
        file: PathBuf,
        /// The trivial bundle (requires --lie)
        #[arg(long)]
        trivial: bool,
        /// Structure group label for the trivial bundle, e.g. SU(5) or E8
        #[arg(long)]
        lie: Option<String>,
        /// SU(n)-bundle with c2 = 0 (requires --c3)
        #[arg(long)]
        su: Option<u32>,
        /// Third Chern number of the bundle
        #[arg(long)]
        c3: Option<i64>,
        /// Second Chern class entries; must all vanish
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c2: Option<Vec<i64>>,
        /// Also compute pi_i of the resulting product
        #[arg(long)]
        pi: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Homotopy groups: a single atom from the tables, or a wedge through
    /// the basic-product decomposition
    Pi {
        #[arg(long)]
        atom: Option<String>,
        #[arg(long)]
        wedge: Option<String>,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Run the command line; returns the process exit code. 0 is success, 1 a
/// domain error (with the violated hypothesis in the message), 2 a usage
/// error.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(&cli.cmd, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cmd: &Cmd, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Cmd::Validate { file, json } => cmd_validate(file, *json, out),
        Cmd::Split { file, json } => cmd_split(file, *json, out),
        Cmd::Cohomology {
            file,
            theory,
            degree,
            all,
            json,
        } => cmd_cohomology(file, theory, *degree, *all, *json, out),
        Cmd::Gauge {
            file,
            trivial,
            lie,
            su,
            c3,
            c2,
            pi,
            json,
        } => cmd_gauge(file, *trivial, lie, *su, *c3, c2, *pi, *json, out),
        Cmd::Pi {
            atom,
            wedge,
            degree,
            json,
        } => cmd_pi(atom, wedge, *degree, *json, out),
    }
}

fn load(file: &Path) -> Result<Validated, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", file.display())))?;
    let doc: InvariantsDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::Domain(format!("invalid invariants document: {e}")))?;
    validate(&doc.to_raw()).map_err(domain)
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(domain)?;
    let _ = writeln!(out);
    Ok(())
}

fn cmd_validate(file: &Path, as_json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let v = load(file)?;
    let inv = &v.invariants;
    let table = inv.homology_table();
    if as_json {
        let value = json!({
            "case": inv.case(),
            "document": InvariantsDocument::from_invariants(inv),
            "homology": (0..7).map(|i| json!({
                "degree": i,
                "group": table[i].to_string(),
            })).collect::<Vec<_>>(),
            "warnings": v.warnings,
        });
        return write_json(out, &value);
    }
    for w in &v.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(
        out,
        "valid: b = {}, d = {}, T = {}, case {}",
        inv.b(),
        inv.d(),
        inv.torsion_group(),
        inv.case()
    );
    for (i, h) in table.iter().enumerate() {
        let _ = writeln!(out, "  H_{i}(M) = {h}");
    }
    Ok(())
}

fn cmd_split(file: &Path, as_json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let v = load(file)?;
    let report = split_report(&v.invariants);
    let expr = report.expr();
    if as_json {
        let value = json!({
            "case": report.case,
            "suspension": expr.to_string(),
            "summands": report.summands.iter().map(|s| json!({
                "atom": s.atom.to_string(),
                "citation": s.citation,
            })).collect::<Vec<_>>(),
            "warnings": v.warnings,
            "citations": dedup(report.summands.iter().map(|s| s.citation.clone())),
        });
        return write_json(out, &value);
    }
    for w in &v.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "case {}", report.case);
    let _ = writeln!(out, "Sigma M = {expr}   (away from 2)");
    for (atom, citation, count) in with_counts(report.summands.iter().map(|s| (s.atom.to_string(), s.citation.clone()))) {
        let _ = writeln!(out, "  {count} x {atom}: {citation}");
    }
    Ok(())
}

fn parse_theory(text: &str) -> Result<TheoryDescriptor, CliError> {
    if text == "HZ" {
        return Ok(TheoryDescriptor::hz());
    }
    if text == "KU" {
        return Ok(TheoryDescriptor::ku());
    }
    if let Some(q) = text.strip_prefix("HZmod:") {
        let q: u64 = q
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid modulus in theory `{text}`")))?;
        if q < 2 {
            return Err(CliError::Usage("modulus must be at least 2".to_string()));
        }
        return Ok(TheoryDescriptor::hz_mod(q));
    }
    Err(CliError::Usage(format!(
        "unknown theory `{text}`; expected HZ, HZmod:<q> or KU"
    )))
}

fn cmd_cohomology(
    file: &Path,
    theory: &str,
    degree: Option<i64>,
    all: bool,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if all == degree.is_some() {
        return Err(CliError::Usage(
            "pass exactly one of --degree <n> or --all".to_string(),
        ));
    }
    let th = parse_theory(theory)?;
    let v = load(file)?;
    let degrees: Vec<i64> = match degree {
        Some(n) => vec![n],
        None => (0..=6).collect(),
    };
    let reports = degrees
        .iter()
        .map(|&n| evaluate_manifold_report(&th, &v.invariants, n).map_err(domain))
        .collect::<Result<Vec<_>, _>>()?;
    if as_json {
        let value = json!({
            "case": reports[0].case,
            "theory": th.name,
            "groups": reports.iter().map(|r| json!({
                "degree": r.degree,
                "total": r.total.to_string(),
                "contributions": r.contributions.iter().map(|c| json!({
                    "source": c.source,
                    "summand": c.summand.to_string(),
                    "value": c.value.to_string(),
                    "citation": c.citation,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "warnings": v.warnings,
            "citations": dedup(reports.iter().flat_map(|r| r.contributions.iter().map(|c| c.citation.clone()))),
        });
        return write_json(out, &value);
    }
    let _ = writeln!(out, "theory {}, case {}", th.name, reports[0].case);
    for r in &reports {
        let _ = writeln!(out, "h^{}(M) = {}   (away from 2)", r.degree, r.total);
        if degrees.len() == 1 {
            for c in &r.contributions {
                let _ = writeln!(out, "  h^{}({}) = {}: {}", r.degree, c.source, c.value, c.citation);
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_gauge(
    file: &Path,
    trivial: bool,
    lie: &Option<String>,
    su: Option<u32>,
    c3: Option<i64>,
    c2: &Option<Vec<i64>>,
    pi: Option<u32>,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let v = load(file)?;
    let report: GaugeReport = match (trivial, su) {
        (true, None) => {
            let Some(g) = lie else {
                return Err(CliError::Usage(
                    "--trivial requires --lie <group label>".to_string(),
                ));
            };
            if c3.is_some() || c2.is_some() {
                return Err(CliError::Usage(
                    "Chern data applies only to --su bundles".to_string(),
                ));
            }
            gauge_trivial(&v.invariants, g)
        }
        (false, Some(n)) => {
            let Some(l) = c3 else {
                return Err(CliError::Usage("--su requires --c3 <integer>".to_string()));
            };
            if lie.is_some() {
                return Err(CliError::Usage(
                    "--lie applies only to --trivial bundles".to_string(),
                ));
            }
            if let Some(c2) = c2 {
                require_zero_c2(c2).map_err(domain)?;
            }
            let (h4, h6) = classify_su_bundles(&v.invariants, n).map_err(domain)?;
            let mut report = gauge_su(&v.invariants, n, l).map_err(domain)?;
            report.notes.insert(
                0,
                format!("bundles over M are classified by (c2, c3) in ({h4}) x ({h6}); this one has c2 = 0, c3 = {l}"),
            );
            report
        }
        _ => {
            return Err(CliError::Usage(
                "pass exactly one of --trivial --lie <G> or --su <n> --c3 <l>".to_string(),
            ))
        }
    };
    let product = report.product();
    let pi_result = match pi {
        None => None,
        Some(i) => Some(pi_factors(&product, i).map_err(domain)?),
    };
    if as_json {
        let value = json!({
            "case": report.case,
            "product": product.to_string(),
            "factors": report.entries.iter().map(|e| json!({
                "factor": e.factor.to_string(),
                "citation": e.citation,
            })).collect::<Vec<_>>(),
            "pi": pi_result.as_ref().map(|p| json!({
                "degree": pi,
                "total": p.total.to_string(),
                "per_factor": p.per_factor.iter().map(|(f, g, c)| json!({
                    "factor": f.to_string(),
                    "group": g.to_string(),
                    "citation": c,
                })).collect::<Vec<_>>(),
            })),
            "warnings": v.warnings,
            "notes": report.notes,
            "citations": dedup(report.entries.iter().map(|e| e.citation.clone())),
        });
        return write_json(out, &value);
    }
    let _ = writeln!(out, "case {}", report.case);
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "gauge group = {product}   (away from 2)");
    for (factor, citation, count) in
        with_counts(report.entries.iter().map(|e| (e.factor.to_string(), e.citation.clone())))
    {
        let _ = writeln!(out, "  {count} x {factor}: {citation}");
    }
    if let Some(p) = pi_result {
        let _ = writeln!(out, "pi_{} = {}", pi.unwrap(), p.total);
        for (f, g, c) in &p.per_factor {
            let _ = writeln!(out, "  pi of {f} = {g}: {c}");
        }
    }
    Ok(())
}

fn cmd_pi(
    atom: &Option<String>,
    wedge: &Option<String>,
    degree: u32,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match (atom, wedge) {
        (Some(text), None) => {
            let expr = parse_space(text).map_err(domain)?;
            let Term::Atom(a) = &expr.term else {
                return Err(CliError::Domain(format!(
                    "`{text}` is not a single atom; use --wedge for compound expressions"
                )));
            };
            let g = homotopy::pi(a, degree, Localization::AwayFromTwo).map_err(domain)?;
            if as_json {
                let value = json!({
                    "atom": a.to_string(),
                    "degree": degree,
                    "group": g.group.to_string(),
                    "generators": g.generators,
                    "citations": [g.citation],
                });
                return write_json(out, &value);
            }
            let _ = writeln!(out, "pi_{degree}({a}) = {g}   (away from 2)");
            let _ = writeln!(out, "  {}", g.citation);
            Ok(())
        }
        (None, Some(text)) => {
            let expr: SpaceExpr = parse_space(text).map_err(domain)?;
            let result = pi_wedge(&expr, degree, Localization::AwayFromTwo).map_err(domain)?;
            if as_json {
                let value = json!({
                    "wedge": expr.to_string(),
                    "degree": degree,
                    "total": result.total.to_string(),
                    "summands": result.summands.iter().map(|(bp, g)| json!({
                        "word": bp.word,
                        "weight": bp.weight,
                        "smash": bp.smash.to_string(),
                        "group": g.group.to_string(),
                        "generators": g.generators,
                        "citation": g.citation,
                    })).collect::<Vec<_>>(),
                    "citations": dedup(result.summands.iter().map(|(_, g)| g.citation.clone())),
                });
                return write_json(out, &value);
            }
            let _ = writeln!(out, "pi_{degree}({expr}) = {}   (away from 2)", result.total);
            for (bp, g) in &result.summands {
                let _ = writeln!(
                    out,
                    "  word {:?} -> {}: {g} ({})",
                    bp.word, bp.smash, g.citation
                );
            }
            Ok(())
        }
        _ => Err(CliError::Usage(
            "pass exactly one of --atom <expr> or --wedge <expr>".to_string(),
        )),
    }
}

fn dedup(items: impl Iterator<Item = String>) -> Vec<String> {
    let mut seen = Vec::new();
    for i in items {
        if !seen.contains(&i) {
            seen.push(i);
        }
    }
    seen
}

/// Collapse equal (display, citation) pairs into counts, preserving order.
fn with_counts(items: impl Iterator<Item = (String, String)>) -> Vec<(String, String, usize)> {
    let mut out: Vec<(String, String, usize)> = Vec::new();
    for (display, citation) in items {
        if let Some(e) = out
            .iter_mut()
            .find(|(d, c, _)| *d == display && *c == citation)
        {
            e.2 += 1;
        } else {
            out.push((display, citation, 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("sixsplit".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_doc(doc: &serde_json::Value) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), serde_json::to_string_pretty(doc).unwrap()).unwrap();
        f
    }

    fn sample_doc() -> serde_json::Value {
        json!({
            "b": 2, "d": 1,
            "torsion": [{"p": 3, "r": 2}, {"p": 5, "r": 1}],
            "p1_action": {"type": "trivial"}
        })
    }

    #[test]
    fn split_prints_case_a_wedge() {
        let f = write_doc(&sample_doc());
        let (code, out, _) = run_capture(&["split", f.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("case A"));
        assert!(out.contains("S7"));
        assert!(out.contains("P4(9)"));
    }

    #[test]
    fn split_json_matches_text_multiset() {
        let f = write_doc(&sample_doc());
        let (code, text, _) = run_capture(&["split", f.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        let (code, js, _) = run_capture(&["split", f.path().to_str().unwrap(), "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        let mut atoms: Vec<String> = v["summands"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["atom"].as_str().unwrap().to_string())
            .collect();
        atoms.sort();
        // Reconstruct the multiset from the text's "n x atom" lines.
        let mut from_text = Vec::new();
        for line in text.lines().filter(|l| l.trim_start().contains(" x ")) {
            let t = line.trim_start();
            let (count, rest) = t.split_once(" x ").unwrap();
            let atom = rest.split(':').next().unwrap().trim();
            for _ in 0..count.parse::<usize>().unwrap() {
                from_text.push(atom.to_string());
            }
        }
        from_text.sort();
        assert_eq!(atoms, from_text);
    }

    #[test]
    fn invalid_document_exits_1() {
        let f = write_doc(&json!({
            "b": -1, "d": 0,
            "p1_action": {"type": "trivial"}
        }));
        let (code, _, err) = run_capture(&["split", f.path().to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains("non-negative"));
    }

    #[test]
    fn unknown_field_is_schema_violation() {
        let f = write_doc(&json!({
            "b": 1, "d": 0, "bogus": 1,
            "p1_action": {"type": "trivial"}
        }));
        let (code, _, err) = run_capture(&["validate", f.path().to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains("invalid invariants document"));
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, _) = run_capture(&["split"]);
        assert_eq!(code, 2);
        let f = write_doc(&sample_doc());
        let path = f.path().to_str().unwrap().to_string();
        let (code, _, _) = run_capture(&["cohomology", &path, "--theory", "HZ"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["gauge", &path]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["pi", "--degree", "6"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&[
            "cohomology", &path, "--theory", "Hmm", "--degree", "4",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn pi_atom_example() {
        let (code, out, _) = run_capture(&["pi", "--atom", "P4(27)", "--degree", "6"]);
        assert_eq!(code, 0);
        assert!(out.contains("Z/3 + Z/27"));
        let (code, _, err) = run_capture(&["pi", "--atom", "P4(27)", "--degree", "9"]);
        assert_eq!(code, 1);
        assert!(err.contains("not catalogued"));
    }

    #[test]
    fn cohomology_degree_4() {
        let f = write_doc(&sample_doc());
        let (code, out, _) = run_capture(&[
            "cohomology",
            f.path().to_str().unwrap(),
            "--theory",
            "HZ",
            "--degree",
            "4",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("h^4(M) = Z^2 + Z/9 + Z/5"), "got: {out}");
    }

    #[test]
    fn cohomology_mod_3() {
        // H^3(M; Z/3) = Hom(H_3, Z/3) + Ext(H_2, Z/3) = (Z/3)^4 here.
        let f = write_doc(&sample_doc());
        let (code, out, _) = run_capture(&[
            "cohomology",
            f.path().to_str().unwrap(),
            "--theory",
            "HZmod:3",
            "--degree",
            "3",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("h^3(M) = Z/3 + Z/3 + Z/3 + Z/3"), "got: {out}");
    }

    #[test]
    fn gauge_trivial_and_su() {
        let f = write_doc(&sample_doc());
        let path = f.path().to_str().unwrap().to_string();
        let (code, out, _) = run_capture(&["gauge", &path, "--trivial", "--lie", "SU(6)", "--pi", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("Omega^6 SU(6)"));
        assert!(out.contains("pi_2 = "));

        let (code, out, _) = run_capture(&["gauge", &path, "--su", "4", "--c3", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("Gauge_(0,3)"));

        let (code, _, err) = run_capture(&["gauge", &path, "--su", "2", "--c3", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("n >= 3"));

        let (code, _, err) = run_capture(&[
            "gauge", &path, "--su", "4", "--c3", "0", "--c2", "0,1,0",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("vanishing second Chern class"));
    }

    #[test]
    fn validate_json_round_trips_under_schema() {
        let f = write_doc(&json!({
            "b": 1, "d": 0,
            "torsion": [{"p": 2, "r": 1}, {"p": 3, "r": 2}],
            "p1_action": {"type": "torsion", "indices": [1]}
        }));
        let (code, out, _) = run_capture(&["validate", f.path().to_str().unwrap(), "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let doc: InvariantsDocument =
            serde_json::from_value(v["document"].clone()).unwrap();
        // The 2-torsion was dropped and the index remapped.
        assert_eq!(doc.torsion, vec![TorsionEntry { p: 3, r: 2 }]);
        assert_eq!(
            doc.p1_action,
            Some(P1ActionDoc::Torsion { indices: vec![0] })
        );
        assert!(v["warnings"].as_array().unwrap().len() == 1);
    }
}
