//! Serializable command outputs and their JSON / CSV / text renderings.
//!
//! Exact integers travel as decimal strings; floats go through serde_json,
//! which prints the shortest round-tripping representation.

use std::fmt::Write as _;

use legendre_qix::FerrersNumerator;
use legendre_qix::hypergeom::SeriesOutcome;
use legendre_qix::quadrature::{GramReport, PiMultiple, QuadratureResult};
use legendre_qix::verify::CheckOutcome;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::Format;

#[derive(Serialize, Debug, Clone, Copy, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn complex_text(z: ComplexJson) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", z.re, z.im.abs())
}

/// A π-multiple, exact and as a float.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct PiJson {
    pub coefficient: String,
    pub value: f64,
}

impl From<&PiMultiple> for PiJson {
    fn from(c: &PiMultiple) -> Self {
        Self { coefficient: c.coefficient().to_string(), value: c.to_real() }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct PolyReport {
    pub k: u32,
    pub l: u32,
    pub sigma: u8,
    pub degree: usize,
    /// Ascending powers of x.
    pub coefficients: Vec<String>,
    pub a0: Option<String>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct A0Report {
    pub l: u32,
    pub closed: String,
    pub sum: String,
    pub equal: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct GramJson {
    pub k: u32,
    pub tol: f64,
    pub converged: bool,
    pub matrix: Vec<Vec<ComplexJson>>,
    pub expected: Vec<Vec<PiJson>>,
    pub deviation: Vec<Vec<f64>>,
    pub max_abs_deviation: f64,
    pub max_diagonal_magnitude: f64,
    pub max_off_diagonal_magnitude: f64,
    pub evaluations: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct IntegralReport {
    pub value: ComplexJson,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Exact value when known (diagonal entries).
    pub expected: Option<PiJson>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SeriesReport {
    pub value: ComplexJson,
    pub terms_used: usize,
    pub converged: bool,
    pub truncation_estimate: f64,
    pub purity_snapped: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CheckJson {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ChecksReport {
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum Report {
    Value(ComplexJson),
    Poly(PolyReport),
    A0(A0Report),
    Gram(GramJson),
    Integral(IntegralReport),
    Series(SeriesReport),
    Checks(ChecksReport),
}

impl Report {
    pub fn value(z: Complex64) -> Self {
        Report::Value(z.into())
    }

    pub fn poly(n: &FerrersNumerator, a0: Option<BigInt>) -> Self {
        Report::Poly(PolyReport {
            k: n.index().k(),
            l: n.index().l(),
            sigma: n.sigma().bit(),
            degree: n.degree(),
            coefficients: n.poly().coeffs().iter().map(ToString::to_string).collect(),
            a0: a0.map(|a| a.to_string()),
        })
    }

    pub fn a0(l: u32, closed: BigInt, sum: BigRational) -> Self {
        let equal = sum == BigRational::from_integer(closed.clone());
        Report::A0(A0Report { l, closed: closed.to_string(), sum: sum.to_string(), equal })
    }

    pub fn gram(g: &GramReport<f64>, tol: f64) -> Self {
        let n = g.k as usize;
        Report::Gram(GramJson {
            k: g.k,
            tol,
            converged: g.converged,
            matrix: g.matrix.iter().map(|row| row.iter().map(|&z| z.into()).collect()).collect(),
            expected: g.expected.iter().map(|row| row.iter().map(PiJson::from).collect()).collect(),
            deviation: (0..n).map(|i| (0..n).map(|j| g.deviation(i, j)).collect()).collect(),
            max_abs_deviation: g.max_abs_deviation,
            max_diagonal_magnitude: g.max_diagonal_magnitude(),
            max_off_diagonal_magnitude: g.max_off_diagonal_magnitude(),
            evaluations: g.entries.iter().flatten().map(|r| r.evaluations).sum(),
        })
    }

    pub fn integral(r: &QuadratureResult<f64>, expected: Option<PiMultiple>) -> Self {
        Report::Integral(IntegralReport {
            value: r.value.into(),
            abs_error_estimate: r.abs_error_estimate,
            evaluations: r.evaluations,
            converged: r.converged,
            expected: expected.as_ref().map(PiJson::from),
        })
    }

    pub fn series(s: &SeriesOutcome<f64>) -> Self {
        Report::Series(SeriesReport {
            value: s.value.into(),
            terms_used: s.terms_used,
            converged: s.converged,
            truncation_estimate: s.truncation_estimate,
            purity_snapped: s.purity_snapped,
        })
    }

    pub fn checks(outcomes: &[CheckOutcome]) -> Self {
        Report::Checks(ChecksReport {
            passed: outcomes.iter().all(|o| o.passed),
            checks: outcomes
                .iter()
                .map(|o| CheckJson { id: o.id, description: o.description, passed: o.passed, detail: o.detail.clone() })
                .collect(),
        })
    }

    /// Renders the report; callers reject CSV for everything but Gram reports.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => match self {
                Report::Gram(g) => gram_csv(g),
                _ => self.render(Format::Text),
            },
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Value(z) => writeln!(out, "{}", complex_text(*z)),
            Report::Poly(p) => {
                writeln!(out, "k = {}, l = {}, sigma = {}, degree = {}", p.k, p.l, p.sigma, p.degree).ok();
                writeln!(out, "coefficients (ascending) = [{}]", p.coefficients.join(", ")).ok();
                match &p.a0 {
                    Some(a0) => writeln!(out, "A0({}) = {a0}", p.l),
                    None => Ok(()),
                }
            }
            Report::A0(a) => writeln!(out, "closed: {}, sum: {}, equal: {}", a.closed, a.sum, a.equal),
            Report::Gram(g) => {
                writeln!(out, "k = {}, tol = {}, converged = {}", g.k, g.tol, g.converged).ok();
                for (i, row) in g.matrix.iter().enumerate() {
                    for (j, z) in row.iter().enumerate() {
                        let e = &g.expected[i][j];
                        writeln!(out, "[{i}][{j}] = {} (expected {}pi = {})", complex_text(*z), e.coefficient, e.value).ok();
                    }
                }
                writeln!(out, "max deviation = {}", g.max_abs_deviation)
            }
            Report::Integral(r) => {
                writeln!(out, "value = {}", complex_text(r.value)).ok();
                writeln!(out, "abs_error_estimate = {}", r.abs_error_estimate).ok();
                writeln!(out, "evaluations = {}, converged = {}", r.evaluations, r.converged).ok();
                match &r.expected {
                    Some(e) => writeln!(out, "expected = {}pi = {}", e.coefficient, e.value),
                    None => Ok(()),
                }
            }
            Report::Series(s) => {
                writeln!(out, "value = {}", complex_text(s.value)).ok();
                writeln!(out, "terms_used = {}, converged = {}", s.terms_used, s.converged).ok();
                writeln!(out, "truncation_estimate = {}", s.truncation_estimate)
            }
            Report::Checks(c) => {
                for check in &c.checks {
                    let verdict = if check.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{verdict} {} {}: {}", check.id, check.description, check.detail).ok();
                }
                writeln!(out, "{}", if c.passed { "all checks passed" } else { "some checks failed" })
            }
        }
        .expect("writing to a String cannot fail");
        out
    }
}

fn gram_csv(g: &GramJson) -> String {
    let mut out = String::from("l,lp,re,im,expected_re,deviation\n");
    for (i, row) in g.matrix.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let line = format!("{i},{j},{},{},{},{}\n", z.re, z.im, g.expected[i][j].value, g.deviation[i][j]);
            out.push_str(&line);
        }
    }
    out
}

/// One failed check or non-converged computation, reported on stderr.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Failure {
    pub id: String,
    pub detail: String,
}

impl Failure {
    pub fn new(id: &str, detail: &str) -> Self {
        Self { id: id.into(), detail: detail.into() }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("failures serialize")
    }
}

/// A report plus anything that should turn the exit status to 1.
pub struct Emit {
    pub report: Report,
    pub failures: Vec<Failure>,
}

impl Emit {
    pub fn clean(report: Report) -> Self {
        Self { report, failures: Vec::new() }
    }

    pub fn with_failures(report: Report, failures: Vec<Failure>) -> Self {
        Self { report, failures }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_text_signs() {
        assert_eq!(complex_text(ComplexJson { re: -1.0, im: 0.0 }), "-1+0i");
        assert_eq!(complex_text(ComplexJson { re: 0.5, im: -2.0 }), "0.5-2i");
    }

    #[test]
    fn a0_report_flags_equality() {
        let r = Report::a0(2, BigInt::from(-8), BigRational::from_integer(BigInt::from(-8)));
        assert_eq!(r.render(Format::Text), "closed: -8, sum: -8, equal: true\n");
        let json = r.render(Format::Json);
        assert!(json.contains("\"closed\": \"-8\""));
    }

    #[test]
    fn csv_rows_follow_the_matrix() {
        let g = GramJson {
            k: 1,
            tol: 1e-10,
            converged: true,
            matrix: vec![vec![ComplexJson { re: 3.0, im: 0.0 }]],
            expected: vec![vec![PiJson { coefficient: "1".into(), value: 3.0 }]],
            deviation: vec![vec![0.0]],
            max_abs_deviation: 0.0,
            max_diagonal_magnitude: 3.0,
            max_off_diagonal_magnitude: 0.0,
            evaluations: 1,
        };
        assert_eq!(gram_csv(&g), "l,lp,re,im,expected_re,deviation\n0,0,3,0,3,0\n");
    }

    #[test]
    fn failures_are_single_json_lines() {
        let line = Failure::new("C1", "bad").to_json_line();
        assert_eq!(line, r#"{"id":"C1","detail":"bad"}"#);
    }
}
