use num_integer::Integer;
use serde::Serialize;
use serde_json::json;

use taurep::identities::{verify_theorem_with, ScanOutcome};
use taurep::{
    a1_scan, delta_series, divisor_table, enumerate_characters, hecke_eigenform_probe,
    l_minus3_closed_form, l_value_nonpositive, quadratic_character, trace_series, Construction,
    CycNum, DirichletCharacter, ParityMode, QSeries,
};

use crate::args::Format;
use crate::cache::DiskCache;
use crate::config::{RunConfig, Series, Task};
use crate::output::Output;

/// What a finished command reports besides its stdout.
pub struct Done {
    pub output: Output,
    /// Human-oriented lines for stderr (summaries, timing, warnings).
    pub notes: Vec<String>,
    /// A check the command was asked to perform did not hold.
    pub failed: bool,
}

type Run = Result<Done, taurep::Error>;

#[derive(Serialize)]
struct ValueRow<'a> {
    n: u64,
    value: &'a CycNum,
}

fn value_rows<'a>(
    values: impl IntoIterator<Item = (u64, &'a CycNum)>,
) -> Vec<(ValueRow<'a>, Vec<String>)> {
    values
        .into_iter()
        .map(|(n, value)| {
            (
                ValueRow { n, value },
                vec![n.to_string(), value.to_string()],
            )
        })
        .collect()
}

fn natural_field(a: &DirichletCharacter, b: &DirichletCharacter) -> u64 {
    a.order().lcm(&b.order())
}

fn parity_note(l: u32, phi: &DirichletCharacter, psi: &DirichletCharacter) -> Option<String> {
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    (phi.parity() * psi.parity() != sign)
        .then(|| format!("warning: {phi}(-1)·{psi}(-1) ≠ (-1)^{l}; values computed anyway (use --strict-parity to reject)"))
}

pub fn execute(config: RunConfig) -> Run {
    let cache = DiskCache::new(config.cache_dir.clone());
    let mut out = Output::new(config.format);
    let mut notes = Vec::new();
    let mut failed = false;
    match config.task {
        Task::Chars { d, values: None } => {
            let rows: Vec<_> = enumerate_characters(d)?
                .into_iter()
                .map(|c| {
                    let v = json!({
                        "label": c.label_string(),
                        "order": c.order(),
                        "parity": c.parity(),
                        "conductor": c.conductor(),
                        "primitive": c.is_primitive(),
                    });
                    let r = vec![
                        c.label_string(),
                        c.order().to_string(),
                        c.parity().to_string(),
                        c.conductor().to_string(),
                        c.is_primitive().to_string(),
                    ];
                    (v, r)
                })
                .collect();
            out.table(
                &["label", "order", "parity", "conductor", "primitive"],
                &rows,
            );
        }
        Task::Chars {
            d,
            values: Some(chi),
        } => {
            let values = (0..d)
                .map(|n| chi.evaluate(n as i64, chi.order()))
                .collect::<Result<Vec<_>, _>>()?;
            out.table(&["n", "value"], &value_rows((0..d).zip(&values)));
        }
        Task::Sigma { l, phi, psi, nmax } => {
            let field = natural_field(&phi, &psi);
            let table = divisor_table(l, &phi, &psi, nmax, field, config.parity)?;
            if config.parity == ParityMode::Lenient {
                notes.extend(parity_note(l, &phi, &psi));
            }
            out.table(&["n", "value"], &value_rows((0..=nmax).zip(&table.values)));
        }
        Task::Lvalue { chi, m } => {
            let v = l_value_nonpositive(&chi, m)?;
            match config.format {
                Format::Json => out.json(&v),
                Format::Csv => {
                    out.csv_row(["char", "m", "value"]);
                    out.csv_row([chi.label_string(), m.to_string(), v.to_string()]);
                }
            }
        }
        Task::LvalueClosed { p } => {
            let closed = l_minus3_closed_form(p)?;
            let bernoulli = l_value_nonpositive(&quadratic_character(p)?, 4)?;
            let agree = bernoulli.as_rational() == Some(&closed);
            failed = !agree;
            match config.format {
                Format::Json => out.json(&json!({
                    "p": p,
                    "closed_form": closed.to_string(),
                    "bernoulli": bernoulli.to_string(),
                    "agree": agree,
                })),
                Format::Csv => {
                    out.csv_row(["p", "closed_form", "bernoulli", "agree"]);
                    out.csv_row([
                        p.to_string(),
                        closed.to_string(),
                        bernoulli.to_string(),
                        agree.to_string(),
                    ]);
                }
            }
        }
        Task::Qexp { series, nmax } => {
            let s = match series {
                Series::Delta => delta_series(nmax as usize)?,
                Series::Eisenstein { k, chi1, chi2 } => {
                    let table = divisor_table(
                        k,
                        &chi1,
                        &chi2,
                        nmax,
                        natural_field(&chi1, &chi2),
                        config.parity,
                    )?;
                    if config.parity == ParityMode::Lenient {
                        notes.extend(parity_note(k, &chi1, &chi2));
                    }
                    QSeries::new(table.values)?
                }
                Series::Trace(params) => trace_series(&params, nmax as usize)?,
            };
            match config.format {
                Format::Json => out.json(&s.coeffs()),
                Format::Csv => out.table(&["n", "value"], &value_rows((0..=nmax).zip(s.coeffs()))),
            }
        }
        Task::Tau { nmax } => {
            let delta = delta_series(nmax as usize)?;
            let rows: Vec<_> = (1..=nmax)
                .map(|n| {
                    let t = delta.coeff(n as usize).unwrap().to_string();
                    (json!({ "n": n, "tau": t }), vec![n.to_string(), t])
                })
                .collect();
            out.table(&["n", "tau"], &rows);
        }
        Task::Coeff {
            params,
            nmax,
            normalized,
        } => {
            let coeffs = Construction::with_tables(&params, nmax, &cache)?.coefficients();
            let inv = if normalized {
                if coeffs[0].is_zero() {
                    return Err(taurep::Error::NormalizationUndefined);
                }
                Some(coeffs[0].inverse()?)
            } else {
                None
            };
            let rows: Vec<_> = coeffs
                .iter()
                .zip(1u64..)
                .map(|(a, n)| match &inv {
                    Some(inv) => {
                        let t = a * inv;
                        let r = vec![n.to_string(), a.to_string(), t.to_string()];
                        (json!({ "n": n, "a": a, "a_tilde": t }), r)
                    }
                    None => (
                        json!({ "n": n, "a": a }),
                        vec![n.to_string(), a.to_string()],
                    ),
                })
                .collect();
            let header: &[&str] = if normalized {
                &["n", "a", "a_tilde"]
            } else {
                &["n", "a"]
            };
            out.table(header, &rows);
        }
        Task::Verify { case, d, chi, nmax } => {
            let report = verify_theorem_with(case, d, &chi, nmax, &cache)?;
            let rows: Vec<_> = report
                .rows
                .iter()
                .map(|r| {
                    let csv = vec![
                        r.n.to_string(),
                        r.tau.to_string(),
                        r.a.to_string(),
                        r.a1.to_string(),
                        r.pass.to_string(),
                    ];
                    (r, csv)
                })
                .collect();
            out.table(&["n", "tau", "a", "a1", "pass"], &rows);
            let passed = report.rows.iter().filter(|r| r.pass).count();
            notes.push(format!(
                "case {case} D={d} χ={chi}: {passed}/{} rows pass in {:.3} s",
                report.rows.len(),
                report.elapsed.as_secs_f64()
            ));
            if report.normalization_undefined {
                notes.push("a(1) = 0: normalization undefined, the check is vacuous".into());
            }
            failed = !report.pass;
        }
        Task::ScanA1 { d, chi, kmax } => {
            let entries = a1_scan(d, &chi, kmax)?;
            let rows: Vec<_> = entries
                .iter()
                .map(|e| {
                    let head = [e.ell, e.k, e.e, e.weight].map(|x| x.to_string());
                    let tail = match &e.outcome {
                        ScanOutcome::Evaluated {
                            a1,
                            zero,
                            forced_zero,
                        } => [
                            "evaluated".to_string(),
                            a1.to_string(),
                            zero.to_string(),
                            forced_zero.clone().unwrap_or_default(),
                        ],
                        ScanOutcome::Skipped { reason } => [
                            "skipped".to_string(),
                            String::new(),
                            String::new(),
                            reason.clone(),
                        ],
                    };
                    (e, head.into_iter().chain(tail).collect())
                })
                .collect();
            out.table(
                &["ell", "k", "e", "weight", "status", "a1", "zero", "note"],
                &rows,
            );
            let unexplained = entries.iter().filter(|e| e.unexplained_zero()).count();
            notes.push(format!(
                "{} entries, {unexplained} unexplained zero(s)",
                entries.len()
            ));
        }
        Task::HeckeProbe {
            params,
            nmax,
            primes,
        } => {
            let coeffs = Construction::with_tables(&params, nmax, &cache)?.coefficients();
            let series = QSeries::new(
                std::iter::once(CycNum::zero(params.field()))
                    .chain(coeffs)
                    .collect(),
            )?;
            let report = hecke_eigenform_probe(&series, params.weight(), &primes, nmax)?;
            match config.format {
                Format::Json => out.json(&report),
                Format::Csv => {
                    let v = report.first_violation.as_ref();
                    out.csv_row([
                        "weight",
                        "primes",
                        "nmax",
                        "checks",
                        "consistent",
                        "violation_p",
                        "violation_n",
                    ]);
                    out.csv_row([
                        report.weight.to_string(),
                        primes
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                        nmax.to_string(),
                        report.checks.to_string(),
                        report.consistent().to_string(),
                        v.map(|v| v.p.to_string()).unwrap_or_default(),
                        v.map(|v| v.n.to_string()).unwrap_or_default(),
                    ]);
                }
            }
            notes.push(match &report.first_violation {
                None => format!("{} relations hold", report.checks),
                Some(v) => format!("relation fails at p = {}, n = {}", v.p, v.n),
            });
        }
    }
    notes.extend(cache.take_log());
    Ok(Done {
        output: out,
        notes,
        failed,
    })
}
