//! Subcommand bodies. Each returns the text to emit and an exit code.

use std::path::Path;

use quatplace::control::{self, companion_gain, DesignOptions, DesignReport, Method};
use quatplace::simulate::simulate_closed_loop;
use quatplace::spectral::right_spectrum;
use quatplace::QMatrix;
use serde_json::{json, Map, Value};

use crate::canonical::{self as c, number};
use crate::error::{exit, CliError};
use crate::input::{self, InputDigest, SystemFile, Target};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, exit: exit::OK }
    }
}

fn header(command: &str, digest: &InputDigest, label: &Option<String>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    m.insert("input_digest".into(), digest.hex().into());
    m.insert("label".into(), label.clone().map(Value::String).unwrap_or(Value::Null));
    m
}

fn put_matrix(m: &mut Map<String, Value>, key: &str, value: &QMatrix) {
    m.insert(key.into(), c::matrix(value));
    m.insert(format!("{key}_rounded"), c::rounded_matrix(value));
}

pub fn companion(system: &Path) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    let file = SystemFile::load(system, &mut digest)?;
    let ct = control::companion_transform(&file.system()?)?;
    let mut m = header("companion", &digest, &file.label);
    put_matrix(&mut m, "C", &ct.ctrb);
    put_matrix(&mut m, "C_inv", &ct.ctrb_inv);
    put_matrix(&mut m, "T", &ct.t);
    put_matrix(&mut m, "T_inv", &ct.t_inv);
    put_matrix(&mut m, "A_c", &ct.a_c);
    m.insert("B_c".into(), c::column(&ct.b_c));
    m.insert("companion_polynomial".into(), c::polynomial(&ct.poly));
    m.insert("companion_polynomial_rounded".into(), c::rounded_polynomial(&ct.poly));
    m.insert(
        "residuals".into(),
        json!({
            "annihilation": number(ct.annihilation_residual()),
            "structure": number(ct.structure_residual()),
        }),
    );
    Ok(Outcome::ok(c::to_string(&Value::Object(m))))
}

fn design_report(command: &str, digest: &InputDigest, file: &SystemFile, r: &DesignReport, opts: &DesignOptions) -> Map<String, Value> {
    let mut m = header(command, digest, &file.label);
    m.insert("method".into(), r.method.map(|x| Value::from(x.as_str())).unwrap_or(Value::Null));
    put_matrix(&mut m, "K", &r.k);
    put_matrix(&mut m, "closed_loop", &r.closed_loop);
    match &r.target_poly {
        Some(p) => {
            m.insert("target_polynomial".into(), c::polynomial(p));
            m.insert("target_polynomial_rounded".into(), c::rounded_polynomial(p));
        }
        None => {
            m.insert("target_polynomial".into(), Value::Null);
        }
    }
    m.insert("target".into(), c::spectrum(&r.target));
    m.insert("achieved".into(), c::spectrum(&r.achieved));
    m.insert("matched".into(), r.matched.into());
    m.insert("stable".into(), r.stable.into());
    m.insert(
        "residuals".into(),
        json!({
            "annihilation": number(r.residuals.annihilation),
            "placement": number(r.residuals.placement),
        }),
    );
    m.insert(
        "tolerances".into(),
        json!({
            "match_tol": number(opts.match_tol),
            "pivot_tol": number(opts.pivot_tol),
            "stability_margin": number(opts.stability_margin),
        }),
    );
    m.insert("warnings".into(), r.warnings.clone().into());
    m
}

fn verdict(r: &DesignReport) -> u8 {
    if r.matched && r.stable {
        exit::OK
    } else {
        exit::VERIFICATION
    }
}

pub fn place(
    system: &Path,
    target: &Path,
    method: Method,
    allow_nonreal: bool,
    opts: &DesignOptions,
) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    let file = SystemFile::load(system, &mut digest)?;
    let target = Target::load(target, &mut digest)?;
    let sys = file.system()?;
    let a_d = target.polynomial(file.n)?;
    let mut r = match method {
        Method::Matching => control::place_matching(&sys, &a_d, opts)?,
        Method::Ackermann => control::place_ackermann(&sys, &a_d, allow_nonreal, opts)?,
    };
    // roots given directly are the intended classes
    if let Target::Roots(_) = target {
        r.target = target.spectrum(file.n)?;
        r.matched = r.achieved.matches(&r.target, opts.match_tol);
    }
    let mut m = design_report("place", &digest, &file, &r, opts);
    let ct = control::companion_transform_with_tol(&sys, opts.pivot_tol)?;
    put_matrix(&mut m, "K_companion", &companion_gain(&ct, &a_d));
    Ok(Outcome {
        text: c::to_string(&Value::Object(m)),
        exit: verdict(&r),
    })
}

pub fn verify(system: &Path, gain: &Path, target: &Path, opts: &DesignOptions) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    let file = SystemFile::load(system, &mut digest)?;
    let k = input::load_gain(gain, file.n, &mut digest)?;
    let target = Target::load(target, &mut digest)?;
    let sys = file.system()?;
    let r = control::verify_placement(&sys, &k, &target.spectrum(file.n)?, opts)?;
    let m = design_report("verify", &digest, &file, &r, opts);
    Ok(Outcome {
        text: c::to_string(&Value::Object(m)),
        exit: verdict(&r),
    })
}

/// Works on any file with an `A` matrix; `B` is ignored.
pub fn spectrum(matrix: &Path, margin: f64) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    let file = SystemFile::load(matrix, &mut digest)?;
    let s = right_spectrum(&file.a)?;
    let mut m = header("spectrum", &digest, &file.label);
    m.insert("order".into(), file.n.into());
    m.insert("classes".into(), c::spectrum(&s));
    m.insert("stable".into(), s.is_stable(margin).into());
    m.insert("stability_margin".into(), number(margin));
    Ok(Outcome::ok(c::to_string(&Value::Object(m))))
}

/// CSV with header `t,x1_w,x1_x,x1_y,x1_z,…,norm`, one row per step.
pub fn simulate(system: &Path, gain: &Path, x0: &str, dt: f64, horizon: f64) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    let file = SystemFile::load(system, &mut digest)?;
    let k = input::load_gain(gain, file.n, &mut digest)?;
    let x0 = input::parse_state(x0, file.n)?;
    let tr = simulate_closed_loop(&file.system()?, &k, &x0, dt, horizon)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut head = vec!["t".to_string()];
    for i in 1..=file.n {
        for part in ["w", "x", "y", "z"] {
            head.push(format!("x{i}_{part}"));
        }
    }
    head.push("norm".into());
    w.write_record(&head).map_err(csv_error)?;
    for ((t, x), norm) in tr.times.iter().zip(&tr.states).zip(&tr.norms) {
        let mut rec = vec![c::fmt_f64(*t)];
        rec.extend(x.as_slice().iter().flat_map(|q| q.to_array()).map(c::fmt_f64));
        rec.push(c::fmt_f64(*norm));
        w.write_record(&rec).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(Outcome::ok(String::from_utf8(bytes).expect("csv of ASCII numbers")))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Parse(format!("csv: {e}"))
}
