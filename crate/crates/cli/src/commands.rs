use std::fs;
use std::path::{Path, PathBuf};

use okounkov_core::{
    okounkov_body, pushforward_lebesgue, AdmissibilityReport, Filtration, Measure, Rational, Scalar,
};
use serde::Serialize;

use crate::schema::{
    parse_q, read_source, MeasureDoc, PiecesDoc, PolytopeDoc, SemigroupDoc, Source,
    TestConfigurationDoc,
};
use crate::{CliError, CommandName, CommandRequest, Outcome};

pub fn run(req: &CommandRequest) -> Result<Outcome, CliError> {
    let input = read_json(&req.input)?;
    let mut out = Outcome::default();
    match req.command {
        CommandName::Body => body(req, input, &mut out),
        CommandName::Weights => weights(req, input, &mut out),
        CommandName::Transform => transform(req, input, &mut out),
        CommandName::Pushforward => pushforward(req, input, &mut out),
        CommandName::Converge => converge(req, input, &mut out),
        CommandName::NormalCone => normal_cone(req, input, &mut out),
        CommandName::F0 => f0(req, input, &mut out),
        CommandName::Check => check(req, input, &mut out),
    }?;
    Ok(out)
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn write_json<T: Serialize>(path: &Path, value: &T, out: &mut Outcome) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    out.written.push(path.to_path_buf());
    Ok(())
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>], out: &mut Outcome) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    out.written.push(path.to_path_buf());
    Ok(())
}

/// CSV written next to a JSON output.
fn sibling_csv(output: &Path) -> Result<PathBuf, CliError> {
    if output.extension().is_some_and(|e| e == "csv") {
        return Err(CliError::Validation(
            "this command writes JSON to --output and CSV beside it; use a .json output path".into(),
        ));
    }
    Ok(output.with_extension("csv"))
}

/// At most 12 significant digits, plain decimal where that is shorter.
fn approx(x: &Rational) -> String {
    let rounded: f64 = format!("{:.11e}", x.to_f64_approx()).parse().unwrap();
    format!("{rounded}")
}

/// Exact columns followed by their `_approx` twins.
fn with_approx(names: &[&str], exact_from: usize) -> Vec<String> {
    let mut h: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    h.extend(names[exact_from..].iter().map(|s| format!("{s}_approx")));
    h
}

fn row_with_approx(lead: Vec<String>, values: &[Rational]) -> Vec<String> {
    let mut r = lead;
    r.extend(values.iter().map(Scalar::to_exact_string));
    r.extend(values.iter().map(approx));
    r
}

fn require_k(req: &CommandRequest) -> Result<u32, CliError> {
    req.params
        .k
        .ok_or_else(|| CliError::Validation("this command needs --k".into()))
}

fn k_list_or(req: &CommandRequest, default: &[u32]) -> Vec<u32> {
    if req.params.k_list.is_empty() {
        default.to_vec()
    } else {
        req.params.k_list.clone()
    }
}

fn param_c(req: &CommandRequest) -> Result<Option<Rational>, CliError> {
    req.params.c.as_deref().map(|s| parse_q(s, "--c")).transpose()
}

fn source(req: &CommandRequest, input: serde_json::Value) -> Result<Source, CliError> {
    read_source(input, param_c(req)?.as_ref())
}

fn body(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let doc: SemigroupDoc = serde_json::from_value(input)?;
    let p = okounkov_body(&doc.to_semigroup()?)?;
    write_json(&req.output, &PolytopeDoc::from_polytope(&p), out)
}

#[derive(Serialize)]
struct WeightsDoc {
    k: u32,
    raw: MeasureDoc,
    normalized: MeasureDoc,
}

fn weights(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let doc: TestConfigurationDoc = serde_json::from_value(input)?;
    let k = require_k(req)?;
    let wm = doc.to_test_configuration()?.weight_measure(k)?;
    let result = WeightsDoc {
        k,
        raw: MeasureDoc::from_measure(&wm.raw),
        normalized: MeasureDoc::from_measure(&wm.normalized),
    };
    write_json(&req.output, &result, out)
}

/// The filtration of a source materialized up to `degree_bound`, with notes
/// on degrees the normal-cone construction leaves out.
fn filtration_of(src: Source, degree_bound: u32, out: &mut Outcome) -> Result<Filtration, CliError> {
    match src {
        Source::Toric(t) => Ok(t.toric_filtration(degree_bound)?),
        Source::NormalCone(d) => {
            let nf = d.normal_cone_filtration(degree_bound)?;
            if !nf.skipped.is_empty() {
                out.notes.push(format!("skipped degrees with c k not integral: {:?}", nf.skipped));
            }
            Ok(nf.filtration)
        }
        Source::Table(f) => Ok(f),
    }
}

fn transform(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let src = source(req, input)?;
    let (f, ks) = match src {
        Source::Table(f) => {
            let ks = k_list_or(req, &f.degrees());
            (f, ks)
        }
        Source::NormalCone(_) => {
            let asked = k_list_or(req, &(1..=8).collect::<Vec<_>>());
            let f = filtration_of(src, asked.iter().copied().max().unwrap_or(1), out)?;
            let ks = asked.into_iter().filter(|k| f.level(*k).is_ok()).collect();
            (f, ks)
        }
        Source::Toric(_) => {
            let ks = k_list_or(req, &[1, 2, 4, 8]);
            (filtration_of(src, ks.iter().copied().max().unwrap_or(1), out)?, ks)
        }
    };
    let est = f.concave_transform_estimate(&ks)?;
    if est.extrapolated {
        out.notes.push("samples do not cover the polytope; boundary values are extrapolated".into());
    }
    let doc = TestConfigurationDoc {
        polytope: PolytopeDoc::from_polytope(est.envelope.domain()),
        g: PiecesDoc::from_function(&est.envelope),
        extrapolated: Some(est.extrapolated),
    };
    let csv_path = sibling_csv(&req.output)?;
    write_json(&req.output, &doc, out)?;

    let n = f.base().dim();
    let mut names: Vec<String> = vec!["k".into()];
    names.extend((1..=n).map(|i| format!("x{i}")));
    names.push("value".into());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let header = with_approx(&refs, 1);
    let mut rows = Vec::new();
    for &k in &ks {
        let kk = Rational::from_int(k as i64);
        for (x, w) in f.gk_function(k)?.values {
            let mut vals = x;
            vals.push(Rational::from_int(w) / &kk);
            rows.push(row_with_approx(vec![k.to_string()], &vals));
        }
    }
    write_csv(&csv_path, &header, &rows, out)
}

fn limit_measure(src: &Source) -> Result<Measure, CliError> {
    match src {
        Source::Toric(t) => Ok(pushforward_lebesgue(t.g())?),
        Source::NormalCone(d) => Ok(d.normal_cone_pushforward()),
        Source::Table(_) => Err(CliError::Validation(
            "a weight table has no limiting function; give a test configuration or normal-cone datum".into(),
        )),
    }
}

/// Every breakpoint, eight interior points per gap and one point beyond
/// each end.
fn cdf_grid(m: &Measure) -> Vec<Rational> {
    let bps = m.breakpoints();
    let (Some(lo), Some(hi)) = (bps.first(), bps.last()) else {
        return Vec::new();
    };
    let span = if hi > lo { hi - lo } else { Rational::from_int(1) };
    let margin = &span / Rational::from_int(8);
    let mut grid = vec![lo - &margin];
    for w in bps.windows(2) {
        for i in 0..8 {
            grid.push(&w[0] + (&w[1] - &w[0]) * Rational::from_frac(i, 8));
        }
    }
    grid.push(hi.clone());
    grid.push(hi + &margin);
    grid
}

fn pushforward(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let src = source(req, input)?;
    let m = limit_measure(&src)?;
    let csv_path = sibling_csv(&req.output)?;
    write_json(&req.output, &MeasureDoc::from_measure(&m), out)?;
    let rows: Vec<Vec<String>> = cdf_grid(&m)
        .into_iter()
        .map(|t| {
            let tail = m.tail(&t);
            row_with_approx(Vec::new(), &[t, tail])
        })
        .collect();
    write_csv(&csv_path, &with_approx(&["t", "tail"], 0), &rows, out)
}

fn converge(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let src = source(req, input)?;
    let limit = limit_measure(&src)?;
    let asked = k_list_or(req, &[5, 10, 20, 40]);
    let finite: Vec<(u32, Measure)> = match &src {
        Source::Toric(t) => asked
            .iter()
            .map(|&k| Ok((k, t.weight_measure(k)?.normalized)))
            .collect::<Result<_, CliError>>()?,
        Source::NormalCone(d) => {
            let bound = asked.iter().copied().max().unwrap_or(1);
            let f = d.normal_cone_filtration(bound)?.filtration;
            let mut v = Vec::new();
            for &k in &asked {
                match f.nu_measure(k) {
                    Ok(m) => v.push((k, m)),
                    Err(_) => out.notes.push(format!("skipped k = {k}: c k is not integral")),
                }
            }
            v
        }
        Source::Table(_) => unreachable!("rejected by limit_measure"),
    };
    let limit_moments: Vec<Rational> = (1..=3).map(|r| limit.moment(r)).collect();
    let rows: Vec<Vec<String>> = finite
        .iter()
        .map(|(k, m)| {
            let mut vals = vec![m.kolmogorov_distance(&limit)];
            vals.extend((1..=3).map(|r| {
                let gap = m.moment(r) - &limit_moments[r as usize - 1];
                gap.clone().max(-gap)
            }));
            row_with_approx(vec![k.to_string()], &vals)
        })
        .collect();
    let header = with_approx(
        &["k", "kolmogorov_distance", "moment_gap_1", "moment_gap_2", "moment_gap_3"],
        1,
    );
    write_csv(&req.output, &header, &rows, out)
}

#[derive(Serialize)]
struct SliceDoc {
    a: String,
    holds: bool,
}

#[derive(Serialize)]
struct NormalConeResult {
    c: String,
    measure: MeasureDoc,
    total_mass: String,
    slice_check: Vec<SliceDoc>,
}

fn normal_cone(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let Source::NormalCone(d) = source(req, input)? else {
        return Err(CliError::Validation("normal-cone needs a normal-cone datum".into()));
    };
    let c = d.c().clone();
    let a_values = match &req.params.a {
        Some(a) => vec![parse_q(a, "--a")?],
        None => vec![Rational::from_int(0), &c / Rational::from_int(2), c.clone()],
    };
    let m = d.normal_cone_pushforward();
    let slice_check = a_values
        .into_iter()
        .map(|a| {
            let holds = d.slice_check(&a)?;
            Ok(SliceDoc {
                a: a.to_exact_string(),
                holds,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let result = NormalConeResult {
        c: c.to_exact_string(),
        total_mass: m.total_mass().to_exact_string(),
        measure: MeasureDoc::from_measure(&m),
        slice_check,
    };
    write_json(&req.output, &result, out)
}

#[derive(Serialize)]
struct RatioDoc {
    k: u32,
    ratio: String,
    ratio_approx: String,
}

#[derive(Serialize)]
struct F0Doc {
    f0: String,
    f0_approx: String,
    ratios: Vec<RatioDoc>,
}

fn f0(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let doc: TestConfigurationDoc = serde_json::from_value(input)?;
    let ks = k_list_or(req, &(1..=10).collect::<Vec<_>>());
    let r = doc.to_test_configuration()?.f0_invariant(&ks)?;
    let result = F0Doc {
        f0: r.f0.to_exact_string(),
        f0_approx: approx(&r.f0),
        ratios: r
            .ratios
            .iter()
            .map(|(k, v)| RatioDoc {
                k: *k,
                ratio: v.to_exact_string(),
                ratio_approx: approx(v),
            })
            .collect(),
    };
    write_json(&req.output, &result, out)
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ViolationDoc {
    Superadditivity {
        k: u32,
        m: u32,
        alpha: Vec<i64>,
        beta: Vec<i64>,
        lhs: i64,
        rhs: i64,
    },
    WeightBound {
        k: u32,
        alpha: Vec<i64>,
        weight: i64,
        bound: String,
    },
}

#[derive(Serialize)]
struct CheckDoc {
    k_max: u32,
    bound: String,
    admissible: bool,
    violation: Option<ViolationDoc>,
}

fn check(req: &CommandRequest, input: serde_json::Value, out: &mut Outcome) -> Result<(), CliError> {
    let src = source(req, input)?;
    let f = match src {
        Source::Table(f) => f,
        other => filtration_of(other, req.params.k.unwrap_or(8), out)?,
    };
    let k_max = req.params.k.unwrap_or_else(|| f.degree_bound());
    let report = f.check_admissible(k_max)?;
    let violation = match report {
        AdmissibilityReport::Pass => None,
        AdmissibilityReport::Superadditivity {
            k,
            m,
            alpha,
            beta,
            lhs,
            rhs,
        } => Some(ViolationDoc::Superadditivity {
            k,
            m,
            alpha,
            beta,
            lhs,
            rhs,
        }),
        AdmissibilityReport::WeightBound {
            k,
            alpha,
            weight,
            bound,
        } => Some(ViolationDoc::WeightBound {
            k,
            alpha,
            weight,
            bound,
        }),
    };
    let result = CheckDoc {
        k_max,
        bound: f.bound().to_exact_string(),
        admissible: violation.is_none(),
        violation,
    };
    write_json(&req.output, &result, out)
}
