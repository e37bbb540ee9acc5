//! Text formats: coefficient-set JSON in, eigensystem JSON and CSV out.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphene::{BandPoint, ConcurrencePoint, ThermalPoint};
use crate::hamiltonian::CoefficientSet;
use crate::solver::{EigenPair, Eigensystem};
use crate::thermo::ThermalReport;

pub fn parse_coefficients(text: &str) -> Result<CoefficientSet> {
    let c: CoefficientSet =
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("coefficient set: {e}")))?;
    c.validate()?;
    Ok(c)
}

#[derive(Serialize)]
struct EigensystemOut<'a> {
    eigenvalues: &'a [EigenPair; 4],
    states: Vec<Vec<Vec<[f64; 2]>>>,
    method: &'static str,
    degenerate: bool,
}

pub fn eigensystem_json(es: &Eigensystem) -> String {
    let states = es
        .states
        .iter()
        .map(|s| s.0.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect())
        .collect();
    let out = EigensystemOut { eigenvalues: &es.eigenvalues, states, method: es.method.as_str(), degenerate: es.degenerate };
    serde_json::to_string_pretty(&out).expect("eigensystem serializes")
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv(header: &str, rows: impl Iterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

pub fn bands_csv(points: &[BandPoint]) -> String {
    csv(
        "kx,ky,E1,E2",
        points.iter().map(|p| format!("{},{},{},{}", fmt_f64(p.kx), fmt_f64(p.ky), fmt_f64(p.e1), fmt_f64(p.e2))),
    )
}

pub fn concurrence_csv(points: &[ConcurrencePoint]) -> String {
    csv(
        "kx,ky,C,flag",
        points.iter().map(|p| format!("{},{},{},{}", fmt_f64(p.kx), fmt_f64(p.ky), fmt_f64(p.c), p.flag)),
    )
}

pub fn thermal_curve_csv(points: &[ThermalPoint]) -> String {
    csv("T,C,flag", points.iter().map(|p| format!("{},{},{}", fmt_f64(p.temperature), fmt_f64(p.c), p.flag)))
}

pub fn thermo_csv(rows: &[ThermalReport]) -> String {
    csv(
        "T,Z,purity,concurrence,flag",
        rows.iter().map(|r| {
            format!("{},{},{},{},{}", fmt_f64(r.temperature), fmt_f64(r.z_value), fmt_f64(r.purity), fmt_f64(r.concurrence), r.flag)
        }),
    )
}

/// Header and numeric rows of a CSV produced above.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?
        .split(',')
        .map(String::from)
        .collect::<Vec<_>>();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|f| f.parse::<f64>().map_err(|e| Error::InvalidArgument(format!("CSV field {f:?}: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((header, rows))
}

/// `n` temperatures spaced evenly in log t from `tmin` to `tmax`.
pub fn log_temperatures(tmin: f64, tmax: f64, n: usize) -> Result<Vec<f64>> {
    if !(tmin > 0.0 && tmax >= tmin && tmax.is_finite()) || n == 0 || (n == 1 && tmin != tmax) {
        return Err(Error::InvalidArgument(format!("temperature range [{tmin}, {tmax}] with {n} steps")));
    }
    if n == 1 {
        return Ok(vec![tmin]);
    }
    let (a, b) = (tmin.ln(), tmax.ln());
    Ok((0..n)
        .map(|i| if i == n - 1 { tmax } else if i == 0 { tmin } else { (a + (b - a) * i as f64 / (n - 1) as f64).exp() })
        .collect())
}
