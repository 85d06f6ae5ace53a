//! Command bodies. Each returns the exact stdout bytes and an exit code, so
//! the binary is a thin shell around them and tests can call them directly.

use std::fmt::Write as _;
use std::path::Path;

use cliffmoeb_core::disk::{
    bergman_kernel, taylor_coefficients, wavelet_transform, BergmanOptions, BoundaryFunction, BoundaryGrid,
    CocycleConfig, Complex64,
};
use cliffmoeb_core::{
    resolve_phi_convention, verify_laws, verify_proposition, LawsConfig, Multivector, ProjectivePoint, Rational,
    Signature, VahlenMatrix, VerificationReport,
};
use serde::Serialize;
use serde_json::json;

use crate::expr;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommandError {
    /// Malformed invocation (exit 64).
    #[error("{0}")]
    Usage(String),
    /// Well-formed invocation with unusable input data (exit 65).
    #[error("{0}")]
    Input(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => EXIT_USAGE,
            CommandError::Input(_) => EXIT_INPUT,
        }
    }
}

fn input(e: impl ToString) -> CommandError {
    CommandError::Input(e.to_string())
}

fn unsupported(format: Format, command: &str) -> CommandError {
    let name = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    };
    CommandError::Usage(format!("{command} does not support --format {name}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

pub type CommandResult = Result<Output, CommandError>;

fn json_line(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

pub fn parse_signature(s: &str) -> Result<Signature, CommandError> {
    let (p, q) =
        s.split_once(',').ok_or_else(|| CommandError::Usage(format!("signature {s:?} is not of the form p,q")))?;
    let parse = |t: &str| {
        t.trim().parse::<usize>().map_err(|_| CommandError::Usage(format!("signature {s:?} is not of the form p,q")))
    };
    Signature::new(parse(p)?, parse(q)?).map_err(input)
}

pub fn parse_complex(s: &str) -> Result<Complex64, CommandError> {
    let bad = || CommandError::Usage(format!("{s:?} is not a complex number re,im"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Comma-separated coefficients, each `re` or `re:im`.
pub fn parse_coefficients(s: &str) -> Result<Vec<Complex64>, CommandError> {
    s.split(',')
        .map(|item| {
            let bad = || CommandError::Usage(format!("coefficient {item:?} is not re or re:im"));
            let (re, im) = item.split_once(':').unwrap_or((item, "0"));
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            if re.is_finite() && im.is_finite() {
                Ok(Complex64::new(re, im))
            } else {
                Err(bad())
            }
        })
        .collect()
}

fn evaluate(src: &str, sig: Signature) -> Result<Multivector<Rational>, CommandError> {
    expr::evaluate(src, sig).map_err(|e| CommandError::Input(format!("expression {src:?}: {e}")))
}

pub fn alg_eval(sig: Signature, src: &str, format: Format) -> CommandResult {
    let x = evaluate(src, sig)?;
    match format {
        Format::Text => Ok(Output::ok(format!("{x}\n"))),
        Format::Json => Ok(Output::ok(json_line(&x))),
        Format::Csv => Err(unsupported(format, "alg eval")),
    }
}

pub fn alg_involutions(sig: Signature, src: &str, format: Format) -> CommandResult {
    let x = evaluate(src, sig)?;
    let rows = [
        ("value", x.clone()),
        ("reversion", x.reversion()),
        ("conjugation", x.conjugation()),
        ("grade", x.grade_involution()),
    ];
    match format {
        Format::Text => {
            let mut s = String::new();
            for (name, v) in &rows {
                writeln!(s, "{name}: {v}").unwrap();
            }
            Ok(Output::ok(s))
        }
        Format::Json => {
            let obj: serde_json::Map<_, _> = rows.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
            Ok(Output::ok(json_line(&obj)))
        }
        Format::Csv => Err(unsupported(format, "alg involutions")),
    }
}

pub fn moebius_apply(matrix_path: &Path, point: &str, format: Format) -> CommandResult {
    let text = std::fs::read_to_string(matrix_path)
        .map_err(|e| CommandError::Input(format!("{}: {e}", matrix_path.display())))?;
    let m: VahlenMatrix<Rational> =
        serde_json::from_str(&text).map_err(|e| CommandError::Input(format!("{}: {e}", matrix_path.display())))?;
    if !m.vahlen_check() {
        return Err(CommandError::Input("matrix fails the Vahlen conditions".into()));
    }
    let sig = m.signature();
    let x = if point.trim() == "inf" {
        ProjectivePoint::new(Multivector::one(sig), Multivector::zero(sig), 0.0)
    } else {
        let x = evaluate(point, sig)?;
        if !x.is_vector() {
            return Err(CommandError::Input(format!("point {point:?} is not a vector")));
        }
        ProjectivePoint::finite(x)
    };
    let y = m.moebius_apply_point(&x).map_err(input)?;
    match format {
        Format::Text => Ok(Output::ok(match y.value() {
            Some(v) => format!("{v}\n"),
            None => format!("inf ({}) / ({})\n", y.numerator(), y.denominator()),
        })),
        Format::Json => {
            let v = match y.value() {
                Some(v) => json!({"finite": true, "value": v.to_json()}),
                None => json!({
                    "finite": false,
                    "numerator": y.numerator().to_json(),
                    "denominator": y.denominator().to_json(),
                }),
            };
            Ok(Output::ok(json_line(&v)))
        }
        Format::Csv => Err(unsupported(format, "moebius apply")),
    }
}

fn report_output(report: VerificationReport, format: Format, command: &str) -> CommandResult {
    let stdout = match format {
        Format::Json => report.to_json_string() + "\n",
        Format::Text => report.to_text(),
        Format::Csv => return Err(unsupported(format, command)),
    };
    Ok(Output { stdout, code: report.exit_code() })
}

pub fn verify_laws_cmd(p: usize, q: usize, samples: usize, seed: u64, format: Format) -> CommandResult {
    let report = verify_laws(p, q, LawsConfig::uniform(samples), seed).map_err(input)?;
    report_output(report, format, "verify laws")
}

pub fn verify_proposition_cmd(p: usize, q: usize, samples: usize, seed: u64, format: Format) -> CommandResult {
    let report = verify_proposition(p, q, samples, seed).map_err(input)?;
    report_output(report, format, "verify proposition")
}

pub fn verify_convention_cmd(p: usize, q: usize, trials: usize, seed: u64, format: Format) -> CommandResult {
    let report = resolve_phi_convention(p, q, trials, seed).map_err(input)?;
    let stdout = match format {
        Format::Json => json_line(&report),
        Format::Text => report.to_text(),
        Format::Csv => return Err(unsupported(format, "verify convention")),
    };
    Ok(Output { stdout, code: report.exit_code() })
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn grid(nodes: usize) -> Result<BoundaryGrid, CommandError> {
    BoundaryGrid::new(nodes).map_err(|e| CommandError::Usage(e.to_string()))
}

fn cocycle(kappa: u32) -> Result<CocycleConfig, CommandError> {
    CocycleConfig::new(kappa).map_err(|e| CommandError::Usage(e.to_string()))
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}

/// Ŵ of the boundary values of z^degree at `point`, against the oracle
/// point^degree.
pub fn ftheory_cauchy(degree: u32, point: Complex64, nodes: usize, kappa: u32, format: Format) -> CommandResult {
    let f = BoundaryFunction::monomial(grid(nodes)?, degree);
    let value = wavelet_transform(&f, point, cocycle(kappa)?).map_err(input)?;
    let reference = point.powu(degree);
    let abs_error = (value - reference).norm();
    let stdout = match format {
        Format::Json => json_line(&json!({
            "N": nodes,
            "kappa": kappa,
            "point": pair(point),
            "value": pair(value),
            "reference": pair(reference),
            "abs_error": abs_error,
        })),
        Format::Csv => csv_string(|w| {
            w.write_record([
                "N",
                "kappa",
                "point_re",
                "point_im",
                "value_re",
                "value_im",
                "reference_re",
                "reference_im",
                "abs_error",
            ])?;
            w.serialize((nodes, kappa, point.re, point.im, value.re, value.im, reference.re, reference.im, abs_error))
        }),
        Format::Text => format!(
            "N = {nodes}, kappa = {kappa}\nvalue = {value}\nreference = {reference}\nabs_error = {abs_error:e}\n"
        ),
    };
    Ok(Output::ok(stdout))
}

/// Taylor coefficients of the boundary values of Σ coeffs[m] z^m, together
/// with the reconstruction error against the input coefficients.
pub fn ftheory_taylor(coeffs: &[Complex64], order: usize, nodes: usize, format: Format) -> CommandResult {
    let f = BoundaryFunction::polynomial(grid(nodes)?, coeffs);
    let found = taylor_coefficients(&f, order).map_err(|e| CommandError::Usage(e.to_string()))?;
    let zero = Complex64::new(0.0, 0.0);
    let expected = |m: usize| coeffs.get(m).copied().unwrap_or(zero);
    let max_abs_error = found.iter().enumerate().map(|(m, c)| (c - expected(m)).norm()).fold(0.0, f64::max);
    let stdout = match format {
        Format::Json => json_line(&json!({
            "N": nodes,
            "order": order,
            "input": coeffs.iter().copied().map(pair).collect::<Vec<_>>(),
            "coefficients": found.iter().copied().map(pair).collect::<Vec<_>>(),
            "max_abs_error": max_abs_error,
        })),
        Format::Csv => csv_string(|w| {
            w.write_record(["m", "c_re", "c_im", "input_re", "input_im"])?;
            for (m, c) in found.iter().enumerate() {
                w.serialize((m, c.re, c.im, expected(m).re, expected(m).im))?;
            }
            Ok(())
        }),
        Format::Text => {
            let mut s = String::new();
            for (m, c) in found.iter().enumerate() {
                writeln!(s, "c_{m} = {c}").unwrap();
            }
            writeln!(s, "max_abs_error = {max_abs_error:e}").unwrap();
            s
        }
    };
    Ok(Output::ok(stdout))
}

#[derive(Debug, serde::Deserialize)]
struct PairRow {
    x_re: f64,
    x_im: f64,
    y_re: f64,
    y_im: f64,
}

pub fn read_pairs(path: &Path) -> Result<Vec<(Complex64, Complex64)>, CommandError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?;
    reader
        .deserialize::<PairRow>()
        .map(|row| {
            let r = row.map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?;
            Ok((Complex64::new(r.x_re, r.x_im), Complex64::new(r.y_re, r.y_im)))
        })
        .collect()
}

/// Monte Carlo kernel estimates for each pair; every pair uses the same
/// sample stream, so swapped pairs come out exactly conjugate.
pub fn ftheory_bergman(
    pairs: &[(Complex64, Complex64)],
    samples: usize,
    seed: u64,
    kappa: u32,
    format: Format,
) -> CommandResult {
    let opts = BergmanOptions::new(samples, seed, kappa);
    let estimates =
        pairs.iter().map(|&(x, y)| bergman_kernel(x, y, &opts).map_err(input)).collect::<Result<Vec<_>, _>>()?;
    let stdout = match format {
        Format::Csv => csv_string(|w| {
            w.write_record(["x_re", "x_im", "y_re", "y_im", "K_re", "K_im", "stderr"])?;
            for (&(x, y), k) in pairs.iter().zip(&estimates) {
                w.serialize((x.re, x.im, y.re, y.im, k.value.re, k.value.im, k.stderr))?;
            }
            Ok(())
        }),
        Format::Json => {
            let rows: Vec<_> = pairs
                .iter()
                .zip(&estimates)
                .map(|(&(x, y), k)| {
                    json!({
                        "x": pair(x),
                        "y": pair(y),
                        "K": pair(k.value),
                        "stderr": k.stderr,
                        "non_convergent": k.non_convergent,
                    })
                })
                .collect();
            json_line(&json!({"samples": samples, "seed": seed, "kappa": kappa, "kernel": rows}))
        }
        Format::Text => {
            let mut s = String::new();
            for (&(x, y), k) in pairs.iter().zip(&estimates) {
                let flag = if k.non_convergent { " (non-convergent)" } else { "" };
                writeln!(s, "K({x}, {y}) = {} ± {:e}{flag}", k.value, k.stderr).unwrap();
            }
            s
        }
    };
    Ok(Output::ok(stdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alg_eval_kelvin_example() {
        let sig = parse_signature("0,2").unwrap();
        assert_eq!(alg_eval(sig, "inv(3*e1)", Format::Text).unwrap().stdout, "-1/3*e1\n");
        assert_eq!(alg_eval(sig, "e3", Format::Text).unwrap_err().exit_code(), EXIT_INPUT);
        assert_eq!(alg_eval(sig, "e1", Format::Csv).unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn cauchy_example() {
        let out = ftheory_cauchy(2, Complex64::new(0.0, 0.5), 256, 1, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert!((v["value"][0].as_f64().unwrap() + 0.25).abs() < 1e-6);
        assert!(v["value"][1].as_f64().unwrap().abs() < 1e-6);
        assert!(v["abs_error"].as_f64().unwrap() < 1e-6);
        let outside = ftheory_cauchy(2, Complex64::new(1.0, 0.0), 256, 1, Format::Json);
        assert_eq!(outside.unwrap_err().exit_code(), EXIT_INPUT);
    }

    #[test]
    fn taylor_recovers_coefficients() {
        let coeffs = parse_coefficients("1,0.5:-2,0,3").unwrap();
        let out = ftheory_taylor(&coeffs, 5, 64, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v["max_abs_error"].as_f64().unwrap() < 1e-12);
        assert_eq!(ftheory_taylor(&coeffs, 32, 64, Format::Json).unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn argument_parsers() {
        assert!(parse_signature("1,2").is_ok());
        assert!(matches!(parse_signature("12"), Err(CommandError::Usage(_))));
        assert!(matches!(parse_signature("7,7"), Err(CommandError::Input(_))));
        assert_eq!(parse_complex(" -0.5, 2").unwrap(), Complex64::new(-0.5, 2.0));
        assert!(parse_complex("nan,0").is_err());
        assert!(parse_coefficients("1,,2").is_err());
    }
}
