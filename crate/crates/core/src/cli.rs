//! Command-line front end. Every command prints one JSON document on stdout;
//! library errors print a one-line `{"error": ..., "message": ...}` object
//! and exit with status 1, usage errors exit with status 2.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::{Serialize, Serializer};

use crate::algebra::GraphLieAlgebra;
use crate::error::Error;
use crate::exact::Rational;
use crate::geodesic::{first_hit, first_hit_jacobian, geodesic_log, InitialVelocity, JacobianOptions, PeriodMode};
use crate::graph::parse_graph;
use crate::lattice::{closed_geodesic_search, format_two_pi_multiple, RationalVelocity};
use crate::spectral::{
    classify_singularity, heisenberg_like_sampled, heisenberg_like_structural, resonance_scan,
    skew_spectrum, DEFAULT_CLUSTER_TOL, DEFAULT_QMAX, DEFAULT_RESONANCE_TOL,
};

#[derive(Debug, Parser)]
#[command(name = "nilgraph", version, about = "2-step nilpotent Lie algebras of directed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singularity class, perfect-matching witness and Heisenberg-like test.
    Classify {
        graph: PathBuf,
        /// Directions sampled for the spectral Heisenberg-like test.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, env = "NILGRAPH_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Frequencies, multiplicities and kernel dimension of j(Z).
    Spectrum {
        graph: PathBuf,
        /// Coefficients a1,...,aq of Z.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        z: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        tol: f64,
        /// Print `frequency,multiplicity,dimension` rows instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// log of the geodesic with initial velocity xi at time t.
    Geodesic {
        graph: PathBuf,
        /// Coordinates of xi: vertices first, then edges.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        xi: Vec<f64>,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// First return of the geodesic to z + ker j(Z), optionally with the
    /// rank of the first-hit map.
    Firsthit {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        xi: Vec<f64>,
        #[arg(long)]
        jacobian: bool,
        /// Hold the period fixed while differentiating.
        #[arg(long, requires = "jacobian")]
        frozen: bool,
        #[arg(long, default_value_t = crate::geodesic::JACOBIAN_STEP)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u64,
        #[arg(long, default_value_t = DEFAULT_RESONANCE_TOL)]
        tol: f64,
    },
    /// Fraction of sampled unit Z that are resonant, and for 4-vertex graphs
    /// the fraction with nonzero ratio-map gradient.
    ResonanceScan {
        graph: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, env = "NILGRAPH_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u64,
        #[arg(long, default_value_t = DEFAULT_RESONANCE_TOL)]
        tol: f64,
    },
    /// Exact closed geodesic for the standard lattice.
    ClosedGeodesic {
        graph: PathBuf,
        /// Rational coordinates "p/q" of xi: vertices first, then edges.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true, value_parser = parse_rational)]
        xi: Vec<Rational>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("not a rational p/q: {s:?} ({e})"))
}

#[derive(Debug)]
pub enum CliError {
    Library(Error),
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Library(e) => e.kind(),
            CliError::Io { .. } => "io",
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Obj<'a> {
            error: &'a str,
            message: String,
        }
        serde_json::to_string(&Obj {
            error: self.kind(),
            message: self.to_string(),
        })
        .expect("serializable")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

/// A float printed with 12 significant digits; non-finite values become null.
#[derive(Debug, Clone, Copy)]
struct F(f64);

impl F {
    fn rounded(self) -> f64 {
        let r: f64 = format!("{:.11e}", self.0).parse().expect("float");
        // avoid "-0.0"
        if r == 0.0 { 0.0 } else { r }
    }
}

impl fmt::Display for F {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rounded())
    }
}

impl Serialize for F {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.rounded())
        } else {
            s.serialize_none()
        }
    }
}

fn fs(v: &[f64]) -> Vec<F> {
    v.iter().copied().map(F).collect()
}

fn load(path: &PathBuf) -> Result<GraphLieAlgebra, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    Ok(GraphLieAlgebra::new(parse_graph(&text)?)?)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[derive(Serialize)]
struct ClassifyOut {
    kind: &'static str,
    witness: Vec<[usize; 2]>,
    reason: Option<&'static str>,
    heisenberg_like: bool,
    evidence: Evidence,
}

#[derive(Serialize)]
struct Evidence {
    sampled: bool,
    samples: usize,
    seed: u64,
    constants: Vec<F>,
    kernel_dim: usize,
    disagreement: Option<[Vec<F>; 2]>,
}

#[derive(Serialize)]
struct SpectrumOut {
    frequencies: Vec<F>,
    multiplicities: Vec<usize>,
    kernel_dim: usize,
}

#[derive(Serialize)]
struct PointOut {
    v: Vec<F>,
    z: Vec<F>,
}

#[derive(Serialize)]
struct GeodesicOut {
    t: F,
    point: PointOut,
}

#[derive(Serialize)]
struct JacobianOut {
    mode: &'static str,
    rows: usize,
    cols: usize,
    rank: usize,
    singular_values: Vec<F>,
    kernel: Vec<Vec<F>>,
}

#[derive(Serialize)]
struct FirstHitOut {
    omega: F,
    hit: PointOut,
    in_wz_residual: F,
    #[serde(skip_serializing_if = "Option::is_none")]
    jacobian: Option<JacobianOut>,
}

#[derive(Serialize)]
struct ScanOut {
    samples: usize,
    seed: u64,
    resonant: usize,
    fraction_resonant: F,
    unclassified: usize,
    nonzero_gradient: Option<usize>,
    fraction_nonzero_gradient: Option<F>,
}

#[derive(Serialize)]
struct ClosedOut {
    m: serde_json::Value,
    hit: Vec<String>,
    first_hit: Vec<String>,
    omega: F,
    translation_residual: F,
}

/// Runs one command and returns what it prints.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Classify {
            graph,
            samples,
            seed,
            tol,
        } => {
            let alg = load(graph)?;
            let verdict = classify_singularity(&alg);
            let ev = heisenberg_like_sampled(&alg, (*samples).max(2), *seed, *tol);
            Ok(json(&ClassifyOut {
                kind: verdict.kind.as_str(),
                witness: verdict
                    .witness
                    .map(|m| m.pairs().iter().map(|&(a, b)| [a + 1, b + 1]).collect())
                    .unwrap_or_default(),
                reason: verdict.reason.map(|r| r.as_str()),
                heisenberg_like: heisenberg_like_structural(alg.graph()),
                evidence: Evidence {
                    sampled: ev.heisenberg_like,
                    samples: (*samples).max(2),
                    seed: *seed,
                    constants: fs(&ev.spectrum.constants),
                    kernel_dim: ev.spectrum.kernel_dim,
                    disagreement: ev.disagreement.map(|(a, b)| [fs(&a.0), fs(&b.0)]),
                },
            }))
        }
        Command::Spectrum { graph, z, tol, csv } => {
            let alg = load(graph)?;
            if z.len() != alg.dim_z() {
                return Err(Error::DimensionMismatch {
                    expected: alg.dim_z(),
                    got: z.len(),
                }
                .into());
            }
            let dec = skew_spectrum(&alg.j_matrix(&crate::algebra::CenterVector(z.clone())), *tol)?;
            if *csv {
                let mut out = String::from("frequency,multiplicity,dimension\n");
                for b in &dec.blocks {
                    out += &format!("{},{},{}\n", F(b.frequency), b.multiplicity(), 2 * b.multiplicity());
                }
                out += &format!("0,0,{}", dec.kernel_dim());
                return Ok(out);
            }
            Ok(json(&SpectrumOut {
                frequencies: fs(&dec.frequencies()),
                multiplicities: dec.multiplicities(),
                kernel_dim: dec.kernel_dim(),
            }))
        }
        Command::Geodesic { graph, xi, t } => {
            let alg = load(graph)?;
            let xi = InitialVelocity::from_coordinates(&alg, xi)?;
            let p = geodesic_log(&alg, &xi, *t)?;
            Ok(json(&GeodesicOut {
                t: F(*t),
                point: PointOut {
                    v: fs(&p.v),
                    z: fs(&p.z),
                },
            }))
        }
        Command::Firsthit {
            graph,
            xi,
            jacobian,
            frozen,
            step,
            qmax,
            tol,
        } => {
            let alg = load(graph)?;
            let xi = InitialVelocity::from_coordinates(&alg, xi)?;
            let fh = first_hit(&alg, &xi, *qmax, *tol)?;
            let jac = if *jacobian {
                let mode = if *frozen { PeriodMode::Frozen } else { PeriodMode::Tracking };
                let j = first_hit_jacobian(
                    &alg,
                    &xi,
                    JacobianOptions {
                        step: *step,
                        mode,
                        qmax: *qmax,
                        tol: *tol,
                    },
                )?;
                Some(JacobianOut {
                    mode: if *frozen { "frozen" } else { "tracking" },
                    rows: j.matrix.nrows(),
                    cols: j.matrix.ncols(),
                    rank: j.rank,
                    singular_values: fs(&j.singular_values),
                    kernel: j.kernel.iter().map(|v| fs(v.as_slice())).collect(),
                })
            } else {
                None
            };
            Ok(json(&FirstHitOut {
                omega: F(fh.omega),
                hit: PointOut {
                    v: fs(&fh.hit.v),
                    z: fs(&fh.hit.z),
                },
                in_wz_residual: F(fh.in_wz_residual),
                jacobian: jac,
            }))
        }
        Command::ResonanceScan {
            graph,
            samples,
            seed,
            qmax,
            tol,
        } => {
            let alg = load(graph)?;
            let s = resonance_scan(&alg, *samples, *seed, *qmax, *tol);
            Ok(json(&ScanOut {
                samples: s.samples,
                seed: *seed,
                resonant: s.resonant,
                fraction_resonant: F(s.fraction_resonant()),
                unclassified: s.unclassified,
                nonzero_gradient: s.nonzero_gradient,
                fraction_nonzero_gradient: s.fraction_nonzero_gradient().map(F),
            }))
        }
        Command::ClosedGeodesic { graph, xi } => {
            let alg = load(graph)?;
            let xi = RationalVelocity::from_coordinates(&alg, xi)?;
            let cg = closed_geodesic_search(&alg, &xi)?;
            let m = match u64::try_from(&cg.m) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(cg.m.to_string()),
            };
            Ok(json(&ClosedOut {
                m,
                hit: cg.hit.coordinates().iter().map(format_two_pi_multiple).collect(),
                first_hit: cg.first_hit.coordinates().iter().map(format_two_pi_multiple).collect(),
                omega: F(cg.omega),
                translation_residual: F(cg.translation_residual),
            }))
        }
    }
}

/// Parses the process arguments, runs, prints, and returns the exit code.
pub fn main_exit() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            0
        }
        Err(e) => {
            println!("{}", e.to_json());
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_twelve_digits() {
        assert_eq!(json(&F(std::f64::consts::PI)), "3.14159265359");
        assert_eq!(json(&F(-0.0)), "0.0");
        assert_eq!(json(&F(1e-20)), "1e-20");
        assert_eq!(json(&F(f64::NAN)), "null");
    }

    #[test]
    fn rational_arguments() {
        assert_eq!(parse_rational("3/4").unwrap(), crate::exact::rat(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), crate::exact::rat(-2, 1));
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn error_objects_are_one_line() {
        let e = CliError::Library(Error::EdgelessGraph);
        let s = e.to_json();
        assert!(!s.contains('\n'));
        assert!(s.starts_with("{\"error\":\"edgeless_graph\""));
    }
}
