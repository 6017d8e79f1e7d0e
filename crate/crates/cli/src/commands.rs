//! The `transform`, `table` and `parseval` commands.

use finfourier::oracle::quad_hat_spec;
use finfourier::parseval::parseval_partial_sum;
use finfourier::polyfamilies::{Family, FamilySpec};
use finfourier::transforms::{hat, hat_with, MethodId};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::args::{Format, MethodChoice, ParsevalArgs, TableArgs, TransformArgs};
use crate::output::{self, json_real, real, Row, SCHEMA};
use crate::Failure;

/// Evaluates one row. `None` selects the dispatcher; the oracle honours the
/// requested quadrature tolerance.
pub fn evaluate(spec: &FamilySpec, lambda: f64, method: Option<MethodId>, tol: f64) -> Result<Row, Failure> {
    let (value, method, est, flags) = match method {
        Some(MethodId::Oracle) => {
            let q = quad_hat_spec(spec, lambda, tol)?;
            if !q.converged {
                return Err(Failure::Numerical(format!(
                    "{spec} at λ={lambda}: quadrature budget exhausted (error estimate {:e})",
                    q.abs_err_est
                )));
            }
            let scale = q.value.norm();
            let est = if scale > 0.0 {
                q.abs_err_est / scale
            } else {
                q.abs_err_est
            };
            (q.value, MethodId::Oracle, est, Vec::new())
        }
        other => {
            let r = match other {
                None => hat(spec, lambda)?,
                Some(m) => hat_with(spec, lambda, m)?,
            };
            (r.value, r.method, r.est_rel_err, r.flags.names())
        }
    };
    Ok(Row {
        family: spec.family.name(),
        n: spec.n,
        params: spec.params_label(),
        lambda,
        method: method.as_str(),
        re: value.re,
        im: value.im,
        est_rel_err: est,
        flags,
    })
}

/// Rows for every `(n, λ, method)` in that nesting order, computed in
/// parallel and returned in order.
pub fn rows(
    family: Family,
    degrees: &[usize],
    lambdas: &[f64],
    method: MethodChoice,
    tol: f64,
) -> Result<Vec<Row>, Failure> {
    let methods = method.expand(&family);
    let mut jobs = Vec::new();
    for &n in degrees {
        let spec = FamilySpec::new(family, n)?;
        for &l in lambdas {
            for &m in &methods {
                jobs.push((spec, l, m));
            }
        }
    }
    jobs.par_iter()
        .map(|(spec, l, m)| evaluate(spec, *l, *m, tol))
        .collect()
}

fn emit_rows(command: &str, rows: &[Row], format: Format) -> String {
    match format {
        Format::Json => output::rows_json(command, rows),
        Format::Csv => output::rows_csv(rows),
        Format::Text => output::rows_text(rows),
    }
}

pub fn transform(a: &TransformArgs) -> Result<String, Failure> {
    let family = a.family.family().map_err(Failure::Usage)?;
    let rows = rows(family, &[a.n], &[a.lambda], a.method, a.tol)?;
    Ok(emit_rows("transform", &rows, a.format))
}

pub fn table(a: &TableArgs) -> Result<String, Failure> {
    let family = a.family.family().map_err(Failure::Usage)?;
    let degrees: Vec<usize> = (a.n.first..=a.n.last).collect();
    let rows = rows(family, &degrees, &a.lambda_grid.points(), a.method, a.tol)?;
    Ok(emit_rows("table", &rows, a.format))
}

#[derive(Serialize)]
struct JsonOctave {
    j: usize,
    re: Box<RawValue>,
    im: Box<RawValue>,
}

#[derive(Serialize)]
struct ParsevalDoc {
    schema: &'static str,
    command: &'static str,
    n: usize,
    m: usize,
    alpha: Box<RawValue>,
    beta: Box<RawValue>,
    jmax: usize,
    re: Box<RawValue>,
    im: Box<RawValue>,
    target: Box<RawValue>,
    residual: Box<RawValue>,
    tail_est: Box<RawValue>,
    octaves: Vec<JsonOctave>,
}

pub fn parseval(a: &ParsevalArgs) -> Result<String, Failure> {
    let m = a.m.unwrap_or(a.n);
    let r = parseval_partial_sum(a.n, m, a.alpha, a.beta, a.jmax)?;
    Ok(match a.format {
        Format::Json => output::pretty(&ParsevalDoc {
            schema: SCHEMA,
            command: "parseval",
            n: r.n,
            m: r.m,
            alpha: json_real(r.alpha),
            beta: json_real(r.beta),
            jmax: r.j_max,
            re: json_real(r.partial_sum.re),
            im: json_real(r.partial_sum.im),
            target: json_real(r.target),
            residual: json_real(r.residual),
            tail_est: json_real(r.tail_est),
            octaves: r
                .octaves
                .iter()
                .map(|(j, s)| JsonOctave {
                    j: *j,
                    re: json_real(s.re),
                    im: json_real(s.im),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "re", "im", "target"]).expect("in-memory write");
            for (j, s) in &r.octaves {
                w.write_record([j.to_string(), real(s.re), real(s.im), real(r.target)])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
        }
        Format::Text => {
            let mut t = vec![vec!["J".to_string(), "re".into(), "im".into()]];
            for (j, s) in &r.octaves {
                t.push(vec![j.to_string(), real(s.re), real(s.im)]);
            }
            format!(
                "n={} m={} alpha={} beta={} jmax={}\ntarget    {}\nsum       {} {}\nresidual  {}\ntail_est  {}\n\n{}",
                r.n,
                r.m,
                real(r.alpha),
                real(r.beta),
                r.j_max,
                real(r.target),
                real(r.partial_sum.re),
                real(r.partial_sum.im),
                real(r.residual),
                real(r.tail_est),
                output::align(&t)
            )
        }
    })
}
