//! Text, JSON and CSV rendering. Floats are printed as the shortest decimal
//! that parses back to the same `f64`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::{Failure, Format, StateSource};
use crate::characterize::{ClassificationRecord, TrajectoryPoint};
use crate::locc::{self, LoccVerdict};
use crate::numeric::{ComplexScalar, Matrix, StateVector};
use crate::qubit::{
    in_ensemble, universality_defect, universality_defect_up_to_phase, FormalState, QubitSpec,
};
use crate::signalling::{self, SignallingVerdict};
use crate::tolerance::{CONSTRAINT_TOL, EPS_EIG, EPS_MAT, EPS_NORM, VIOLATION_TOL};

pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_owned()
    } else {
        x.to_string()
    }
}

pub fn format_complex(z: ComplexScalar) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_float(z.re), sign, format_float(z.im.abs()))
}

fn complex_json(z: ComplexScalar) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(|&z| complex_json(z)).collect()))
            .collect(),
    )
}

/// State vectors go into the matrix map as single-column matrices.
fn column_json(s: &StateVector) -> Value {
    Value::Array(s.amplitudes().iter().map(|&z| json!([complex_json(z)])).collect())
}

fn input_json(psi: &QubitSpec, source: StateSource) -> Value {
    let mut m = Map::new();
    m.insert("a".into(), complex_json(psi.a()));
    m.insert("b".into(), complex_json(psi.b()));
    m.insert("generic".into(), json!(psi.is_generic()));
    let origin = match source {
        StateSource::Amplitudes => json!("amplitudes"),
        StateSource::Default => json!("default"),
        StateSource::Ensemble(p) => json!({ "beta": p.beta(), "sign": p.sign().symbol() }),
    };
    m.insert("source".into(), origin);
    Value::Object(m)
}

fn tolerances_json(tol: f64) -> Value {
    json!({
        "eps_norm": EPS_NORM,
        "eps_mat": EPS_MAT,
        "eps_eig": EPS_EIG,
        "violation": tol,
        "violation_default": VIOLATION_TOL,
        "constraint": CONSTRAINT_TOL,
    })
}

fn document(input: Value, verdict: Value, matrices: Value, tol: f64) -> String {
    let doc = json!({
        "input": input,
        "verdict": verdict,
        "matrices": matrices,
        "tolerances": tolerances_json(tol),
        "version": env!("CARGO_PKG_VERSION"),
    });
    canonical_json(&doc)
}

/// Pretty JSON with sorted keys and a trailing newline. Parsing the output
/// and passing it back through here reproduces it byte for byte.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values are serializable");
    s.push('\n');
    s
}

fn defect_json(psi: &QubitSpec, tol: f64) -> Value {
    let [x, y, z] = psi.bloch();
    json!({
        "universality_defect": universality_defect(psi),
        "defect_up_to_phase": universality_defect_up_to_phase(psi),
        "in_ensemble": in_ensemble(psi, tol),
        "bloch": [x, y, z],
        "generic": psi.is_generic(),
    })
}

fn signalling_json(v: &SignallingVerdict) -> Value {
    json!({
        "distance": v.distance,
        "residual_alpha": v.residual_alpha,
        "residual_beta": v.residual_beta,
        "signalling": v.signalling,
        "spectra_equal": v.spectra_equal,
        "spectrum_before": v.spectrum_before.values(),
        "spectrum_after": v.spectrum_after.values(),
        "tol": v.tol,
    })
}

fn locc_json(v: &LoccVerdict) -> Value {
    json!({
        "entropy_before": v.entropy_before,
        "entropy_after": v.entropy_after,
        "n": v.n,
        "lambda_plus": v.lambda_plus,
        "lambda_minus": v.lambda_minus,
        "constraint_residual": v.constraint_residual,
        "purity_gap": v.purity_gap,
        "resource_norm_sqr": v.resource_norm_sqr,
        "violation": v.violation,
        "constraint_violated": v.constraint_violated,
        "degenerate": v.degenerate,
        "tol": v.tol,
    })
}

fn write_matrix(out: &mut String, title: &str, m: &Matrix) {
    let _ = writeln!(out, "{title}");
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|&z| format_complex(z)).collect();
        let _ = writeln!(out, "  [ {} ]", cells.join(", "));
    }
}

fn write_state(out: &mut String, title: &str, formal: &FormalState, state: &StateVector) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "  branches: {formal}");
    let cells: Vec<String> = state.amplitudes().iter().map(|&z| format_complex(z)).collect();
    let _ = writeln!(out, "  dims {:?}: ( {} )", state.dims(), cells.join(", "));
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<22}{value}");
}

fn floats(xs: &[f64]) -> String {
    xs.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(" ")
}

fn state_header(out: &mut String, psi: &QubitSpec, source: StateSource) {
    kv(out, "a", format_complex(psi.a()));
    kv(out, "b", format_complex(psi.b()));
    if let StateSource::Ensemble(p) = source {
        kv(out, "ensemble", format!("beta {} sign {}", format_float(p.beta()), p.sign().symbol()));
    }
    kv(out, "generic", psi.is_generic());
}

fn csv_row(out: &mut String, header: &[&str], values: &[String]) {
    let _ = writeln!(out, "{}", header.join(","));
    let _ = writeln!(out, "{}", values.join(","));
}

pub(super) fn defect(psi: &QubitSpec, source: StateSource, tol: f64, format: Format) -> String {
    match format {
        Format::Json => document(
            input_json(psi, source),
            defect_json(psi, tol),
            json!({}),
            tol,
        ),
        Format::Text => {
            let mut out = String::new();
            state_header(&mut out, psi, source);
            kv(&mut out, "defect", format_float(universality_defect(psi)));
            kv(&mut out, "defect_up_to_phase", format_float(universality_defect_up_to_phase(psi)));
            kv(&mut out, "in_ensemble", in_ensemble(psi, tol));
            kv(&mut out, "bloch", floats(&psi.bloch()));
            out
        }
        Format::Csv => {
            let [x, y, z] = psi.bloch();
            let mut out = String::new();
            csv_row(
                &mut out,
                &["defect", "defect_up_to_phase", "in_ensemble", "x", "y", "z"],
                &[
                    format_float(universality_defect(psi)),
                    format_float(universality_defect_up_to_phase(psi)),
                    in_ensemble(psi, tol).to_string(),
                    format_float(x),
                    format_float(y),
                    format_float(z),
                ],
            );
            out
        }
    }
}

pub(super) fn signalling(
    psi: &QubitSpec,
    source: StateSource,
    v: &SignallingVerdict,
    format: Format,
) -> String {
    match format {
        Format::Json => document(
            input_json(psi, source),
            signalling_json(v),
            json!({ "eq3": matrix_json(&v.rho_before), "eq5": matrix_json(&v.rho_after) }),
            v.tol,
        ),
        Format::Text => {
            let mut out = String::new();
            state_header(&mut out, psi, source);
            write_matrix(&mut out, "rho_A before (eq3)", &v.rho_before);
            write_matrix(&mut out, "rho_A after (eq5)", &v.rho_after);
            kv(&mut out, "trace_distance", format_float(v.distance));
            kv(&mut out, "residual_alpha", format_float(v.residual_alpha));
            kv(&mut out, "residual_beta", format_float(v.residual_beta));
            kv(&mut out, "spectrum_before", floats(v.spectrum_before.values()));
            kv(&mut out, "spectrum_after", floats(v.spectrum_after.values()));
            kv(&mut out, "spectra_equal", v.spectra_equal);
            kv(&mut out, "signalling", v.signalling);
            out
        }
        Format::Csv => {
            let mut out = String::new();
            csv_row(
                &mut out,
                &["distance", "residual_alpha", "residual_beta", "signalling", "spectra_equal"],
                &[
                    format_float(v.distance),
                    format_float(v.residual_alpha),
                    format_float(v.residual_beta),
                    v.signalling.to_string(),
                    v.spectra_equal.to_string(),
                ],
            );
            out
        }
    }
}

pub(super) fn locc(psi: &QubitSpec, source: StateSource, v: &LoccVerdict, format: Format) -> String {
    match format {
        Format::Json => document(
            input_json(psi, source),
            locc_json(v),
            json!({ "eq9": matrix_json(&v.rho_before), "eq11": matrix_json(&v.rho_after) }),
            v.tol,
        ),
        Format::Text => {
            let mut out = String::new();
            state_header(&mut out, psi, source);
            write_matrix(&mut out, "rho_A before (eq9)", &v.rho_before);
            write_matrix(&mut out, "rho_A after (eq11)", &v.rho_after);
            locc_scalars(&mut out, v);
            out
        }
        Format::Csv => {
            let mut out = String::new();
            csv_row(
                &mut out,
                &[
                    "entropy_before",
                    "entropy_after",
                    "n",
                    "lambda_plus",
                    "lambda_minus",
                    "constraint_residual",
                    "violation",
                ],
                &[
                    format_float(v.entropy_before),
                    format_float(v.entropy_after),
                    format_float(v.n),
                    format_float(v.lambda_plus),
                    format_float(v.lambda_minus),
                    format_float(v.constraint_residual),
                    v.violation.to_string(),
                ],
            );
            out
        }
    }
}

fn locc_scalars(out: &mut String, v: &LoccVerdict) {
    kv(out, "entropy_before", format_float(v.entropy_before));
    kv(out, "entropy_after", format_float(v.entropy_after));
    kv(out, "N", format_float(v.n));
    kv(out, "lambda_plus (eq13)", format_float(v.lambda_plus));
    kv(out, "lambda_minus (eq13)", format_float(v.lambda_minus));
    kv(out, "residual (eq14)", format_float(v.constraint_residual));
    kv(out, "violation", v.violation);
}

/// Everything computed for one state in a report.
pub(super) struct ReportRun {
    psi: QubitSpec,
    source: StateSource,
    eq2: FormalState,
    eq4: FormalState,
    eq7: FormalState,
    eq10: FormalState,
    eq2_state: StateVector,
    eq4_state: StateVector,
    eq7_state: StateVector,
    eq10_state: StateVector,
    eq12: Matrix,
    eq13_numeric: Vec<f64>,
    eq9_spectrum: Vec<f64>,
    pub(super) signalling: SignallingVerdict,
    pub(super) locc: LoccVerdict,
}

impl ReportRun {
    pub(super) fn new(psi: &QubitSpec, source: StateSource, tol: f64) -> Result<Self, Failure> {
        let locc = locc::locc_verdict(psi, tol)?;
        let signalling = signalling::signalling_verdict(psi, tol);
        let eq2 = signalling::build_signalling_resource(psi);
        let eq4 = signalling::apply_machine_bob(&eq2)?;
        let eq7 = locc::build_locc_resource(psi);
        let eq10 = locc::apply_machine_b2(&eq7)?;
        Ok(Self {
            psi: *psi,
            source,
            eq2_state: eq2.to_state()?,
            eq4_state: eq4.to_state()?,
            eq7_state: eq7.to_state()?,
            eq10_state: eq10.to_state()?,
            eq2,
            eq4,
            eq7,
            eq10,
            eq12: locc::closed_form_after(psi)?,
            eq13_numeric: locc.rho_after.spectrum().values().to_vec(),
            eq9_spectrum: locc.rho_before.spectrum().values().to_vec(),
            signalling,
            locc,
        })
    }

    fn text(&self, out: &mut String, title: &str, tol: f64) {
        let _ = writeln!(out, "== {title} ==");
        state_header(out, &self.psi, self.source);
        kv(out, "defect", format_float(universality_defect(&self.psi)));
        kv(out, "in_ensemble (eq6)", in_ensemble(&self.psi, tol));
        kv(out, "bloch", floats(&self.psi.bloch()));
        let _ = writeln!(out, "-- no-signalling --");
        write_state(out, "eq2 shared state", &self.eq2, &self.eq2_state);
        write_matrix(out, "eq3 rho_A", &self.signalling.rho_before);
        write_state(out, "eq4 after Bob's machine", &self.eq4, &self.eq4_state);
        write_matrix(out, "eq5 rho'_A", &self.signalling.rho_after);
        kv(out, "eq3 == eq5", !self.signalling.signalling);
        kv(out, "trace_distance", format_float(self.signalling.distance));
        kv(out, "residual_alpha", format_float(self.signalling.residual_alpha));
        kv(out, "residual_beta", format_float(self.signalling.residual_beta));
        kv(out, "spectrum eq3", floats(self.signalling.spectrum_before.values()));
        kv(out, "spectrum eq5", floats(self.signalling.spectrum_after.values()));
        let _ = writeln!(out, "-- entanglement --");
        write_state(out, "eq7 product resource", &self.eq7, &self.eq7_state);
        kv(out, "eq7 written norm^2", format_float(self.locc.resource_norm_sqr));
        write_matrix(out, "eq9 rho_A", &self.locc.rho_before);
        kv(out, "eq9 eigenvalues", floats(&self.eq9_spectrum));
        write_state(out, "eq10 after machine on B2", &self.eq10, &self.eq10_state);
        write_matrix(out, "eq11 rho'_A (numeric)", &self.locc.rho_after);
        write_matrix(out, "eq12 rho'_A (closed form)", &self.eq12);
        kv(out, "eq13 numeric", floats(&self.eq13_numeric));
        locc_scalars(out, &self.locc);
    }

    fn json(&self, tol: f64) -> (Value, Value, Value) {
        let verdict = json!({
            "defect": defect_json(&self.psi, tol),
            "signalling": signalling_json(&self.signalling),
            "locc": locc_json(&self.locc),
            "eq13_numeric": self.eq13_numeric,
            "eq9_eigenvalues": self.eq9_spectrum,
        });
        let matrices = json!({
            "eq2": column_json(&self.eq2_state),
            "eq3": matrix_json(&self.signalling.rho_before),
            "eq4": column_json(&self.eq4_state),
            "eq5": matrix_json(&self.signalling.rho_after),
            "eq7": column_json(&self.eq7_state),
            "eq9": matrix_json(&self.locc.rho_before),
            "eq10": column_json(&self.eq10_state),
            "eq11": matrix_json(&self.locc.rho_after),
            "eq12": matrix_json(&self.eq12),
        });
        (input_json(&self.psi, self.source), verdict, matrices)
    }
}

pub(super) fn report(user: &ReportRun, reference: &ReportRun, tol: f64, format: Format) -> String {
    match format {
        Format::Json => {
            let (ui, uv, um) = user.json(tol);
            let (ri, rv, rm) = reference.json(tol);
            document(
                json!({ "user": ui, "reference": ri }),
                json!({ "user": uv, "reference": rv }),
                json!({ "user": um, "reference": rm }),
                tol,
            )
        }
        _ => {
            let mut out = String::new();
            user.text(&mut out, "user state", tol);
            out.push('\n');
            reference.text(&mut out, "reference ensemble state", tol);
            out
        }
    }
}

pub const RECORD_COLUMNS: [&str; 10] = [
    "theta",
    "phi",
    "chi",
    "x",
    "y",
    "z",
    "signalling_distance",
    "entropy_after",
    "constraint_residual",
    "in_ensemble",
];

pub fn records_csv(records: &[ClassificationRecord]) -> String {
    let mut out = String::with_capacity(128 * (records.len() + 1));
    let _ = writeln!(out, "{}", RECORD_COLUMNS.join(","));
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            format_float(r.theta),
            format_float(r.phi),
            format_float(r.chi),
            format_float(r.bloch[0]),
            format_float(r.bloch[1]),
            format_float(r.bloch[2]),
            format_float(r.signalling_distance),
            format_float(r.entropy_after),
            format_float(r.constraint_residual),
            r.in_ensemble,
        );
    }
    out
}

pub fn trajectory_csv(points: &[TrajectoryPoint]) -> String {
    let mut out = String::from("beta,alpha,x,y,z\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_float(p.beta),
            format_float(p.alpha),
            format_float(p.x),
            format_float(p.y),
            format_float(p.z),
        );
    }
    out
}
