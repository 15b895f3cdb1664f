use std::fmt::Write as _;

use curstat::{CdfEstimate, CdfKind, ModelChoice, ObservationSample, StepCdf};

#[derive(Debug)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Parses `u,delta` lines. Blank lines are skipped; a first line whose
/// fields are not numeric is taken as a header.
pub fn parse_sample(text: &str) -> Result<ObservationSample, ParseError> {
    let mut u = Vec::new();
    let mut delta = Vec::new();
    let mut seen_first = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed
            .split([',', ';', '\t', ' '])
            .filter(|f| !f.is_empty())
            .collect();
        let is_first = !seen_first;
        seen_first = true;
        if is_first && fields.iter().all(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let err = |message: String| ParseError {
            line: Some(line),
            message,
        };
        if fields.len() != 2 {
            return Err(err(format!(
                "expected 2 fields `u,delta`, found {}",
                fields.len()
            )));
        }
        let x: f64 = fields[0]
            .parse()
            .map_err(|_| err(format!("examination time '{}' is not a number", fields[0])))?;
        if !x.is_finite() || x < 0.0 {
            return Err(err(format!(
                "examination time {x} must be finite and non-negative"
            )));
        }
        let d = match fields[1] {
            "0" => 0,
            "1" => 1,
            other => return Err(err(format!("indicator '{other}' must be 0 or 1"))),
        };
        u.push(x);
        delta.push(d);
    }
    if u.is_empty() {
        return Err(ParseError {
            line: None,
            message: "input contains no observations".into(),
        });
    }
    ObservationSample::new(u, delta).map_err(|e| ParseError {
        line: None,
        message: e.to_string(),
    })
}

pub fn format_sample(sample: &ObservationSample) -> String {
    let mut out = String::from("u,delta\n");
    for (u, d) in sample.u().iter().zip(sample.delta()) {
        writeln!(out, "{u},{d}").unwrap();
    }
    out
}

fn describe_choice(c: &ModelChoice) -> String {
    let m = &c.model;
    let p = m.level().map_or("-".to_string(), |p| p.to_string());
    let r = m.degree().map_or("-".to_string(), |r| r.to_string());
    format!(
        "# model {}: family={} p={p} r={r} D={} contrast={:.15e} penalty={:.15e}",
        c.role,
        m.family().name(),
        m.dimension(),
        c.contrast,
        c.penalty
    )
}

/// Header lines describing the fit, then `x,value` rows on `grid` points.
pub fn format_estimate(estimate: &CdfEstimate, n: usize, grid: usize) -> String {
    let mut out = String::new();
    writeln!(out, "# method: {}", estimate.method).unwrap();
    writeln!(out, "# n: {n}").unwrap();
    if estimate.choices.is_empty() {
        match &estimate.kind {
            CdfKind::Step(StepCdf::RegularBins { values }) => {
                writeln!(out, "# model: regular histogram, {} bins", values.len()).unwrap();
            }
            _ => writeln!(out, "# model: none").unwrap(),
        }
    }
    for c in &estimate.choices {
        writeln!(out, "{}", describe_choice(c)).unwrap();
    }
    if let CdfKind::Regression { clamp, .. } = estimate.kind {
        writeln!(out, "# clamp: {clamp}").unwrap();
    }
    writeln!(out, "x,value").unwrap();
    for (x, v) in estimate.on_grid(grid) {
        writeln!(out, "{x:.14e},{v:.14e}").unwrap();
    }
    out
}
