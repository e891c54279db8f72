use std::fmt::Write as _;

use ci_lattice::binomial::presentation_report;
use ci_lattice::gluing::GluingError;
use ci_lattice::linalg::DisplayVec;
use ci_lattice::mixed::{fms_decompose, is_mixed, is_mixed_dominating};
use ci_lattice::semigroup::{associated_semigroup, cone_report};
use ci_lattice::{
    basis_from_certificate, stci_decide, verify_certificate, Characteristic, GluingCertificate, IntMatrix, Outcome,
};
use serde::Serialize;

use crate::schema::{int_rows, parse, to_json, CertificateFile, InstanceFile, Int, Labels, MatrixFile, NodeRecord};
use crate::{CliError, Format, Output, Status};

// `writeln!` into a `String` cannot fail.
macro_rules! line {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

#[derive(Serialize)]
struct MixedRecord {
    rows: usize,
    cols: usize,
    mixed: bool,
    mixed_dominating: bool,
    decomposition: Option<DecompositionRecord>,
}

/// A decomposition step in the input's 1-based row and column labels.
#[derive(Serialize)]
struct DecompositionRecord {
    rows: Vec<usize>,
    columns: Vec<usize>,
    glue_row: Option<usize>,
    left: Option<Box<DecompositionRecord>>,
    right: Option<Box<DecompositionRecord>>,
}

fn decompose(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> DecompositionRecord {
    let labels = |idx: &[usize], map: &[usize]| idx.iter().map(|&i| map[i] + 1).collect::<Vec<_>>();
    let all_rows: Vec<usize> = (0..rows.len()).collect();
    let all_cols: Vec<usize> = (0..cols.len()).collect();
    let mut node = DecompositionRecord {
        rows: labels(&all_rows, rows),
        columns: labels(&all_cols, cols),
        glue_row: None,
        left: None,
        right: None,
    };
    if m.nrows() == 0 {
        return node;
    }
    let d = fms_decompose(m).expect("mixed dominating matrices decompose");
    let (b1, b2) = d.blocks(m);
    let pick = |idx: &[usize], map: &[usize]| idx.iter().map(|&i| map[i]).collect::<Vec<_>>();
    node.glue_row = Some(rows[d.q] + 1);
    node.left = Some(Box::new(decompose(&b1, &pick(&d.s1, rows), &pick(&d.e1, cols))));
    node.right = Some(Box::new(decompose(&b2, &pick(&d.s2, rows), &pick(&d.e2, cols))));
    node
}

fn render_decomposition(out: &mut String, node: &DecompositionRecord, depth: usize) {
    let pad = "  ".repeat(depth);
    let zero_based = |v: &[usize]| v.iter().map(|i| i - 1).collect::<Vec<_>>();
    match node.glue_row {
        None => line!(out, "{pad}columns {}: no rows", Labels(&zero_based(&node.columns))),
        Some(q) => {
            let (left, right) = (node.left.as_ref().unwrap(), node.right.as_ref().unwrap());
            line!(
                out,
                "{pad}glue row {q}: columns {} | {}",
                Labels(&zero_based(&left.columns)),
                Labels(&zero_based(&right.columns))
            );
            render_decomposition(out, left, depth + 1);
            render_decomposition(out, right, depth + 1);
        }
    }
}

pub fn check_mixed_dominating(matrix_text: &str, format: Format) -> Result<Output, CliError> {
    let m = parse::<MatrixFile>(matrix_text, "matrix file")?.into_matrix()?;
    let mixed = is_mixed(&m);
    let dominating = is_mixed_dominating(&m);
    let decomposition = dominating.then(|| {
        let rows: Vec<usize> = (0..m.nrows()).collect();
        let cols: Vec<usize> = (0..m.ncols()).collect();
        decompose(&m, &rows, &cols)
    });
    let record = MixedRecord { rows: m.nrows(), cols: m.ncols(), mixed, mixed_dominating: dominating, decomposition };
    let text = match format {
        Format::Machine => to_json(&record),
        Format::Text => {
            let mut out = String::new();
            if m.nrows() == 0 {
                line!(out, "mixed dominating: true (empty)");
            } else if !mixed {
                line!(out, "mixed: false");
            } else {
                line!(out, "mixed: true");
                line!(out, "mixed dominating: {dominating}");
            }
            if let Some(d) = &record.decomposition {
                if m.nrows() > 0 {
                    line!(out, "decomposition:");
                    render_decomposition(&mut out, d, 1);
                }
            }
            out
        }
    };
    Ok(Output { text, status: Status::Decided })
}

#[derive(Serialize)]
struct DecideRecord {
    outcome: String,
    characteristic: u64,
    ambient_dim: usize,
    rank: usize,
    root: Option<NodeRecord>,
    basis: Vec<Vec<Int>>,
    binomials: Vec<String>,
    note: Option<String>,
    diagnostics: Vec<String>,
}

fn render_certificate(out: &mut String, cert: &GluingCertificate, coords: &[usize], depth: usize) {
    let pad = "  ".repeat(depth);
    match cert {
        GluingCertificate::Leaf { .. } => line!(out, "{pad}leaf {}", Labels(coords)),
        GluingCertificate::Node(n) => {
            let map = |side: &[usize]| side.iter().map(|&i| coords[i]).collect::<Vec<_>>();
            let (left, right) = (map(&n.e1), map(&n.e2));
            line!(
                out,
                "{pad}glue E1 = {} E2 = {} u = {} index exponent {}",
                Labels(&left),
                Labels(&right),
                DisplayVec(&n.u),
                n.index_exponent
            );
            render_certificate(out, &n.left, &left, depth + 1);
            render_certificate(out, &n.right, &right, depth + 1);
        }
    }
}

pub fn decide(instance_text: &str, ch: Characteristic, max_exp: u32, format: Format) -> Result<Output, CliError> {
    let instance = parse::<InstanceFile>(instance_text, "instance file")?.into_instance()?;
    let l = &instance.lattice;
    let verdict = stci_decide(l, ch, max_exp).map_err(|e| match e {
        GluingError::NotPositive { .. } => CliError::Input(format!("{e}; no certificate is possible")),
        other => CliError::Input(other.to_string()),
    })?;
    let (basis, report) = match &verdict.certificate {
        Some(cert) => {
            let basis = basis_from_certificate(cert).expect("decider certificates are well formed");
            let report = presentation_report(l, cert, ch, None).expect("decider certificates verify");
            (basis, Some(report))
        }
        None => (Vec::new(), None),
    };
    let status = match verdict.outcome {
        Outcome::NoWithinBound => Status::BoundExhausted,
        Outcome::Yes | Outcome::No => Status::Decided,
    };
    let text = match format {
        Format::Machine => to_json(&DecideRecord {
            outcome: verdict.outcome.to_string(),
            characteristic: ch.as_u64(),
            ambient_dim: l.ambient_dim(),
            rank: l.rank(),
            root: verdict.certificate.as_ref().map(NodeRecord::from_certificate),
            basis: int_rows(&basis),
            binomials: report.as_ref().map(|r| r.binomials()).unwrap_or_default(),
            note: report.as_ref().and_then(|r| r.note()),
            diagnostics: verdict.diagnostics.clone(),
        }),
        Format::Text => {
            let mut out = String::new();
            if instance.semigroup.is_some() {
                line!(out, "kernel lattice: {}", l.basis());
            }
            line!(out, "characteristic: {ch}");
            line!(out, "verdict: {}", verdict.outcome);
            if let Some(cert) = &verdict.certificate {
                line!(out, "certificate:");
                render_certificate(&mut out, cert, &(0..l.ambient_dim()).collect::<Vec<_>>(), 1);
                line!(out, "basis:");
                for b in &basis {
                    line!(out, "  {}", DisplayVec(b));
                }
                line!(out, "mixed dominating matrix: {}", IntMatrix::from_bigint_rows(l.ambient_dim(), basis.clone()));
            }
            if let Some(report) = &report {
                line!(out, "binomials (height {}):", report.height);
                for b in report.binomials() {
                    line!(out, "  {b}");
                }
                if let Some(note) = report.note() {
                    line!(out, "generated {note}");
                }
            }
            line!(out, "diagnostics:");
            for d in &verdict.diagnostics {
                line!(out, "  {d}");
            }
            out
        }
    };
    Ok(Output { text, status })
}

#[derive(Serialize)]
struct VerifyRecord {
    pass: bool,
    violation: Option<String>,
}

pub fn verify(instance_text: &str, certificate_text: &str, format: Format) -> Result<Output, CliError> {
    let instance = parse::<InstanceFile>(instance_text, "instance file")?.into_instance()?;
    let file = parse::<CertificateFile>(certificate_text, "certificate file")?;
    let ch = file.characteristic()?;
    let cert = file.certificate()?;
    let violation = verify_certificate(&instance.lattice, &cert, ch).err().map(|v| v.to_string());
    let status = if violation.is_some() { Status::VerifyFailed } else { Status::Decided };
    let text = match format {
        Format::Machine => to_json(&VerifyRecord { pass: violation.is_none(), violation }),
        Format::Text => match violation {
            None => format!("pass (characteristic {ch})\n"),
            Some(v) => format!("fail: {v}\n"),
        },
    };
    Ok(Output { text, status })
}

#[derive(Serialize)]
struct ConeRecord {
    projected: Vec<Vec<Int>>,
    dimension: usize,
    extreme_rays: Vec<usize>,
    count: usize,
    bound: Option<usize>,
    within_bound: Option<bool>,
}

pub fn cone(instance_text: &str, format: Format) -> Result<Output, CliError> {
    let instance = parse::<InstanceFile>(instance_text, "instance file")?.into_instance()?;
    let semigroup = match instance.semigroup {
        Some(s) => s,
        None => associated_semigroup(&instance.lattice).map_err(|e| CliError::Input(e.to_string()))?,
    };
    let r = cone_report(&semigroup).map_err(|e| CliError::Input(e.to_string()))?;
    let bound = (r.dimension >= 2).then(|| 2 * r.dimension - 2);
    let text = match format {
        Format::Machine => to_json(&ConeRecord {
            projected: int_rows(&r.projected),
            dimension: r.dimension,
            extreme_rays: r.rays.iter().map(|i| i + 1).collect(),
            count: r.count,
            bound,
            within_bound: r.within_bound,
        }),
        Format::Text => {
            let mut out = String::new();
            line!(out, "projected generators:");
            for (i, g) in r.projected.iter().enumerate() {
                line!(out, "  {}: {}", i + 1, DisplayVec(g));
            }
            line!(out, "dimension: {}", r.dimension);
            line!(out, "extreme rays: {}", Labels(&r.rays));
            line!(out, "count: {}", r.count);
            match (bound, r.within_bound) {
                (Some(b), Some(ok)) => line!(out, "bound 2n'-2 = {b}: {ok}"),
                _ => line!(out, "bound 2n'-2: not applicable (dimension < 2)"),
            }
            out
        }
    };
    Ok(Output { text, status: Status::Decided })
}
