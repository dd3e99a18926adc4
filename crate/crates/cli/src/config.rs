//! Turns parsed arguments into a fully validated [`RunConfig`]. Every problem
//! found is collected so the user sees them all in one message.

use std::path::PathBuf;

use taurep::characters::is_prime;
use taurep::{
    quadratic_character, ConstructionParams, DirichletCharacter, IdentityCase, ParityMode,
};

use crate::args::{Cli, Command, ConstructionArgs, Format, SeriesKind};

#[derive(Debug)]
pub enum Series {
    Delta,
    Eisenstein {
        k: u32,
        chi1: DirichletCharacter,
        chi2: DirichletCharacter,
    },
    Trace(ConstructionParams),
}

#[derive(Debug)]
pub enum Task {
    Chars {
        d: u64,
        values: Option<DirichletCharacter>,
    },
    Sigma {
        l: u32,
        phi: DirichletCharacter,
        psi: DirichletCharacter,
        nmax: u64,
    },
    Lvalue {
        chi: DirichletCharacter,
        m: u32,
    },
    LvalueClosed {
        p: u64,
    },
    Qexp {
        series: Series,
        nmax: u64,
    },
    Tau {
        nmax: u64,
    },
    Coeff {
        params: ConstructionParams,
        nmax: u64,
        normalized: bool,
    },
    Verify {
        case: IdentityCase,
        d: u64,
        chi: DirichletCharacter,
        nmax: u64,
    },
    ScanA1 {
        d: u64,
        chi: DirichletCharacter,
        kmax: u32,
    },
    HeckeProbe {
        params: ConstructionParams,
        nmax: u64,
        primes: Vec<u64>,
    },
}

#[derive(Debug)]
pub struct RunConfig {
    pub format: Format,
    pub parity: ParityMode,
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub task: Task,
}

#[derive(Default)]
struct Problems(Vec<String>);

impl Problems {
    fn push(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        if !self.0.contains(&msg) {
            self.0.push(msg);
        }
    }

    fn label(&mut self, flag: &str, s: &str) -> Option<DirichletCharacter> {
        match s.parse::<DirichletCharacter>() {
            Ok(c) => Some(c),
            Err(e) => {
                self.push(format!("{flag} {s:?}: {e}"));
                None
            }
        }
    }

    fn modulus(&mut self, d: u64, chi: &DirichletCharacter) {
        if chi.modulus() != d {
            self.push(format!("--chi {chi} is not a character modulo --D {d}"));
        }
    }

    fn at_least(&mut self, flag: &str, value: u64, min: u64) {
        if value < min {
            self.push(format!("{flag} must be at least {min}, got {value}"));
        }
    }

    fn case(&mut self, s: &str) -> Option<IdentityCase> {
        match s.parse() {
            Ok(c) => Some(c),
            Err(e) => {
                self.push(format!("--case: {e}"));
                None
            }
        }
    }

    fn construction(&mut self, args: &ConstructionArgs) -> Option<ConstructionParams> {
        let chi = match &args.chi {
            Some(s) => self.label("--chi", s),
            None => None,
        };
        if let (Some(d), Some(chi)) = (args.d, &chi) {
            self.modulus(d, chi);
        }
        if let Some(case_str) = &args.case {
            let case = self.case(case_str)?;
            let d = args.d.or(chi.as_ref().map(|c| c.modulus()));
            let Some(d) = d else {
                self.push("--case needs --D or --chi");
                return None;
            };
            let chi = match chi {
                Some(c) => c,
                None if d == 1 => DirichletCharacter::trivial(),
                None if case == IdentityCase::C => match quadratic_character(d) {
                    Ok(c) => c,
                    Err(e) => {
                        self.push(format!("--D {d}: {e}"));
                        return None;
                    }
                },
                None => {
                    self.push(format!("case {case} with D = {d} needs --chi"));
                    return None;
                }
            };
            let (ell, k, e) = case.weights();
            for (flag, given, want) in [
                ("--ell", args.ell, ell),
                ("--k", args.k, k),
                ("--e", args.e, e),
            ] {
                if given.is_some_and(|g| g != want) {
                    self.push(format!(
                        "{flag} conflicts with case {case}, which fixes it to {want}"
                    ));
                }
            }
            return match case.check(d, &chi) {
                Ok(p) => Some(p),
                Err(e) => {
                    self.push(e.to_string());
                    None
                }
            };
        }
        let chi = match chi {
            Some(c) => Some(c),
            None if args.d == Some(1) => Some(DirichletCharacter::trivial()),
            None => {
                self.push("--chi is required (or give --case)");
                None
            }
        };
        let mut missing = Vec::new();
        for (flag, v) in [("--ell", args.ell), ("--k", args.k), ("--e", args.e)] {
            if v.is_none() {
                missing.push(flag);
            }
        }
        if !missing.is_empty() {
            self.push(format!("{} required without --case", missing.join(", ")));
            return None;
        }
        let params = ConstructionParams::new(chi?, args.ell?, args.k?, args.e?);
        for v in params.violations() {
            self.push(v);
        }
        Some(params)
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, String> {
        let mut p = Problems::default();
        if cli.threads == Some(0) {
            p.push("--threads must be at least 1");
        }
        let task = match cli.command {
            Command::Chars { d, chi } => {
                p.at_least("--D", d, 1);
                let values = chi.and_then(|s| p.label("--chi", &s));
                if let Some(c) = &values {
                    p.modulus(d, c);
                }
                Some(Task::Chars { d, values })
            }
            Command::Sigma { l, phi, psi, nmax } => {
                p.at_least("--l", l.into(), 3);
                let phi = p.label("--phi", &phi);
                let psi = p.label("--psi", &psi);
                match (phi, psi) {
                    (Some(phi), Some(psi)) => Some(Task::Sigma { l, phi, psi, nmax }),
                    _ => None,
                }
            }
            Command::Lvalue { chi, m } => {
                p.at_least("--m", m.into(), 1);
                p.label("--char", &chi).map(|chi| Task::Lvalue { chi, m })
            }
            Command::LvalueClosed { p: prime } => {
                if !(is_prime(prime) && prime % 4 == 1) {
                    p.push(format!("--p must be a prime ≡ 1 (mod 4), got {prime}"));
                }
                Some(Task::LvalueClosed { p: prime })
            }
            Command::Qexp {
                series,
                weight,
                chi1,
                chi2,
                construction,
                nmax,
            } => {
                let series = match series {
                    SeriesKind::Delta => Some(Series::Delta),
                    SeriesKind::Eisenstein => {
                        let chi1 = p.label("--chi1", &chi1);
                        let chi2 = p.label("--chi2", &chi2);
                        if weight.is_none() {
                            p.push("--series eisenstein needs --weight");
                        }
                        match (weight, chi1, chi2) {
                            (Some(k), Some(chi1), Some(chi2)) => {
                                Some(Series::Eisenstein { k, chi1, chi2 })
                            }
                            _ => None,
                        }
                    }
                    SeriesKind::Trace => p.construction(&construction).map(Series::Trace),
                };
                series.map(|series| Task::Qexp { series, nmax })
            }
            Command::Tau { nmax } => {
                p.at_least("--nmax", nmax, 1);
                Some(Task::Tau { nmax })
            }
            Command::Coeff {
                construction,
                nmax,
                normalized,
            } => {
                p.at_least("--nmax", nmax, 1);
                p.construction(&construction).map(|params| Task::Coeff {
                    params,
                    nmax,
                    normalized,
                })
            }
            Command::Verify { case, d, chi, nmax } => {
                p.at_least("--nmax", nmax, 1);
                let args = ConstructionArgs {
                    case: Some(case),
                    d: Some(d),
                    chi,
                    ell: None,
                    k: None,
                    e: None,
                };
                p.construction(&args).map(|params| Task::Verify {
                    case: args.case.as_deref().unwrap().parse().unwrap(),
                    d,
                    chi: params.chi,
                    nmax,
                })
            }
            Command::ScanA1 { d, chi, kmax } => {
                let chi = p.label("--chi", &chi);
                if let Some(c) = &chi {
                    p.modulus(d, c);
                    if !c.is_primitive() {
                        p.push(format!("--chi {c} is not primitive"));
                    }
                }
                p.at_least("--kmax", kmax.into(), 8);
                chi.map(|chi| Task::ScanA1 { d, chi, kmax })
            }
            Command::HeckeProbe {
                construction,
                nmax,
                primes,
            } => {
                if primes.is_empty() {
                    p.push("--primes must list at least one prime");
                }
                for &q in &primes {
                    if !is_prime(q) {
                        p.push(format!("--primes: {q} is not prime"));
                    }
                }
                let max_p = primes.iter().copied().max().unwrap_or(2);
                p.at_least("--nmax", nmax, 2 * max_p);
                p.construction(&construction)
                    .map(|params| Task::HeckeProbe {
                        params,
                        nmax,
                        primes,
                    })
            }
        };
        match task {
            Some(task) if p.0.is_empty() => Ok(RunConfig {
                format: cli.format,
                parity: if cli.strict_parity {
                    ParityMode::Strict
                } else {
                    ParityMode::Lenient
                },
                threads: cli.threads,
                cache_dir: cli.cache_dir,
                task,
            }),
            _ => Err(p.0.join("; ")),
        }
    }
}
