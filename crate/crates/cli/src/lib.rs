//! Command-line front end for `harmgerm`.
//!
//! [`run`] does all the work and returns the text to print and the exit
//! status, so the binary is a thin wrapper and tests can call it directly.
//! Exit status: 0 success, 1 a check or validation failed, 2 usage or
//! parse error.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use harmgerm::determinacy::{determinacy_check, DeterminacyCertificate};
use harmgerm::equivalence::{
    default_tolerance, reduce_biharmonic, reduce_germ, Normalization, WitnessChain,
};
use harmgerm::graded::{kernel_basis, product_space, Relation};
use harmgerm::harmonic::{almansi, harmonic_split, re_im_power};
use harmgerm::{parse_poly, Degree, ParseError, Poly, Rational};
use serde::Serialize;
use thiserror::Error;

pub mod selftest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "harmgerm",
    version,
    about = "Exact computations for germs with harmonic leading terms"
)]
pub struct Cli {
    /// Degree of the harmonic leading term, or the level for `determinacy`.
    #[arg(long, global = true)]
    pub k: Option<Degree>,

    /// Laplacian power or multiplier degree.
    #[arg(long, global = true)]
    pub s: Option<Degree>,

    /// Largest degree explored by `selftest`.
    #[arg(long = "max-degree", global = true, default_value_t = 30)]
    pub max_degree: Degree,

    /// Seed for every random instance.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Residual threshold for numeric normalization of the leading term.
    #[arg(long, global = true, value_parser = parse_tolerance)]
    pub tolerance: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print f_k = Re (x+iy)^k and g_k = Im (x+iy)^k.
    Harmonic,
    /// Basis of the kernel of the s-th Laplacian power on degree-k forms.
    Kernel,
    /// Compare P_s H_k with the kernel of the (s+1)-th Laplacian power.
    Span,
    /// Write a polyharmonic form as a sum of r^(2j) times harmonic forms.
    Almansi { poly: String },
    /// Split a form as harmonic + r^2 * quotient.
    Split { poly: String },
    /// Check the Jacobian criterion for k-determinacy.
    Determinacy { poly: String },
    /// Reduce a germ to its harmonic leading part of degree k.
    Reduce { poly: String },
    /// Reduce f_k + R for a biharmonic perturbation R.
    Biharm { poly: String },
    /// Run the verification suite.
    Selftest,
}

fn parse_tolerance(text: &str) -> Result<f64, String> {
    let t: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err("tolerance must be a positive finite number".into())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] harmgerm::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use harmgerm::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Core(
                E::KernelViolation { .. }
                | E::NotInSpan { .. }
                | E::LeadingNotHarmonic(_)
                | E::Verification(_),
            ) => 1,
            CliError::Core(_) => 2,
        }
    }
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Output of one command in both renderings.
pub trait Report: Serialize {
    fn text(&self) -> String;

    fn exit_code(&self) -> i32 {
        0
    }
}

pub fn render(report: &dyn ErasedReport, format: Format) -> String {
    match format {
        Format::Text => report.text(),
        Format::Json => report.json(),
    }
}

/// Object-safe view of [`Report`].
pub trait ErasedReport {
    fn text(&self) -> String;
    fn json(&self) -> String;
    fn exit_code(&self) -> i32;
}

impl<T: Report> ErasedReport for T {
    fn text(&self) -> String {
        Report::text(self)
    }

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    fn exit_code(&self) -> i32 {
        Report::exit_code(self)
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(report) => Outcome {
            stdout: render(report.as_ref(), cli.format),
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn need(value: Option<Degree>, flag: &str) -> Result<Degree, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this command")))
}

fn tolerance(cli: &Cli) -> Rational {
    cli.tolerance
        .and_then(Rational::from_float)
        .unwrap_or_else(default_tolerance)
}

fn dispatch(cli: &Cli) -> Result<Box<dyn ErasedReport>, CliError> {
    Ok(match &cli.command {
        Command::Harmonic => {
            let k = need(cli.k, "k")?;
            if k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let (f, g) = re_im_power::<Rational>(k);
            Box::new(HarmonicOutput { k, f, g })
        }
        Command::Kernel => {
            let (k, s) = (need(cli.k, "k")?, need(cli.s, "s")?);
            Box::new(KernelOutput {
                k,
                s,
                basis: kernel_basis::<Rational>(k, s).basis(),
            })
        }
        Command::Span => {
            let (k, s) = (need(cli.k, "k")?, need(cli.s, "s")?);
            let span = product_space::<Rational>(s, k);
            let kernel = kernel_basis::<Rational>(s + k, s + 1);
            let relation = match span.compare(&kernel)? {
                Relation::Equal => "equal",
                Relation::AInB => "span inside kernel",
                Relation::BInA => "kernel inside span",
                Relation::Incomparable => "incomparable",
            };
            Box::new(SpanOutput {
                s,
                k,
                degree: s + k,
                full: span.is_full(),
                kernel_dimension: kernel.dim(),
                relation,
                basis: span.basis(),
            })
        }
        Command::Almansi { poly } => {
            let u = parse_poly(poly)?;
            let s = need(cli.s, "s")?;
            let degree = u
                .homogeneous_degree()
                .ok_or(harmgerm::Error::NotHomogeneous)?;
            let d = almansi(&u, degree, s)?;
            Box::new(AlmansiOutput {
                degree,
                s,
                reconstructs: d.reconstruct() == u,
                components: d.components,
            })
        }
        Command::Split { poly } => {
            let p = parse_poly(poly)?;
            let degree = p
                .homogeneous_degree()
                .ok_or(harmgerm::Error::NotHomogeneous)?;
            let (harmonic, quotient) = harmonic_split(&p)?;
            Box::new(SplitOutput {
                degree,
                harmonic,
                quotient,
            })
        }
        Command::Determinacy { poly } => {
            let h = parse_poly(poly)?;
            let k = need(cli.k, "k")?;
            let certificate = determinacy_check(&h, k);
            let rechecked = certificate.recheck();
            Box::new(DeterminacyOutput {
                certificate,
                rechecked,
            })
        }
        Command::Reduce { poly } => {
            let germ = parse_poly(poly)?;
            let k = need(cli.k, "k")?;
            let out = reduce_germ(&germ, k, 2 * k.max(2) - 3, &tolerance(cli))?;
            Box::new(ChainOutput {
                chain: out.reduction,
                normalization: out.normalization,
            })
        }
        Command::Biharm { poly } => {
            let r = parse_poly(poly)?;
            let k = need(cli.k, "k")?;
            let chain = reduce_biharmonic(k, &r, 2 * k.max(2) - 3)?;
            Box::new(ChainOutput {
                chain,
                normalization: None,
            })
        }
        Command::Selftest => Box::new(selftest::run(&selftest::Grid {
            max_degree: cli.max_degree,
            seed: cli.seed,
        })),
    })
}

#[derive(Debug, Serialize)]
pub struct HarmonicOutput {
    pub k: Degree,
    pub f: Poly,
    pub g: Poly,
}

impl Report for HarmonicOutput {
    fn text(&self) -> String {
        format!("f_{k} = {}\ng_{k} = {}\n", self.f, self.g, k = self.k)
    }
}

#[derive(Debug, Serialize)]
pub struct KernelOutput {
    pub k: Degree,
    pub s: Degree,
    pub basis: Vec<Poly>,
}

impl Report for KernelOutput {
    fn text(&self) -> String {
        let mut out = format!(
            "kernel of laplacian^{} on P_{}: dimension {}\n",
            self.s,
            self.k,
            self.basis.len()
        );
        for b in &self.basis {
            let _ = writeln!(out, "  {b}");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SpanOutput {
    pub s: Degree,
    pub k: Degree,
    pub degree: Degree,
    pub full: bool,
    pub kernel_dimension: usize,
    pub relation: &'static str,
    pub basis: Vec<Poly>,
}

impl Report for SpanOutput {
    fn text(&self) -> String {
        let mut out = format!(
            "P_{} H_{} in degree {}: dimension {}{}\nkernel of laplacian^{}: dimension {}\nrelation: {}\n",
            self.s,
            self.k,
            self.degree,
            self.basis.len(),
            if self.full { " (all of P)" } else { "" },
            self.s + 1,
            self.kernel_dimension,
            self.relation
        );
        for b in &self.basis {
            let _ = writeln!(out, "  {b}");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct AlmansiOutput {
    pub degree: Degree,
    pub s: Degree,
    /// `components[j]` multiplies `r^(2j)`.
    pub components: Vec<Poly>,
    pub reconstructs: bool,
}

impl Report for AlmansiOutput {
    fn text(&self) -> String {
        let mut out = format!("degree {}, s = {}\n", self.degree, self.s);
        for (j, h) in self.components.iter().enumerate() {
            let _ = writeln!(out, "h_{j} = {h}");
        }
        let _ = writeln!(out, "reconstructs: {}", self.reconstructs);
        out
    }

    fn exit_code(&self) -> i32 {
        if self.reconstructs {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SplitOutput {
    pub degree: Degree,
    pub harmonic: Poly,
    pub quotient: Poly,
}

impl Report for SplitOutput {
    fn text(&self) -> String {
        format!("harmonic: {}\nquotient: {}\n", self.harmonic, self.quotient)
    }
}

#[derive(Debug, Serialize)]
pub struct DeterminacyOutput {
    #[serde(flatten)]
    pub certificate: DeterminacyCertificate,
    pub rechecked: bool,
}

impl Report for DeterminacyOutput {
    fn text(&self) -> String {
        let c = &self.certificate;
        format!(
            "germ: {}\nlevel: {}\ngenerators: {}\nverdict: {}\nrechecked: {}\n",
            c.germ,
            c.level,
            c.generators.len(),
            if c.verdict {
                "determined"
            } else {
                "inconclusive"
            },
            self.rechecked
        )
    }

    fn exit_code(&self) -> i32 {
        if self.certificate.verdict && self.rechecked {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ChainOutput {
    #[serde(flatten)]
    pub chain: WitnessChain,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
}

fn chain_text(out: &mut String, chain: &WitnessChain) {
    let _ = writeln!(out, "source: {}", chain.source);
    let _ = writeln!(out, "target: {}", chain.target);
    let _ = writeln!(out, "bound: {}", chain.bound);
    for (i, m) in chain.maps.iter().enumerate() {
        let _ = writeln!(out, "map {}: x -> {}", i + 1, m.first());
        let _ = writeln!(out, "       y -> {}", m.second());
    }
    if let Some(c) = &chain.certificate {
        let _ = writeln!(
            out,
            "certificate: level {}, verdict {}, {} generators",
            c.level,
            c.verdict,
            c.generators.len()
        );
    }
    let _ = writeln!(out, "verified: {}", chain.verified);
}

impl Report for ChainOutput {
    fn text(&self) -> String {
        let mut out = String::new();
        chain_text(&mut out, &self.chain);
        match &self.normalization {
            Some(Normalization::Exact(c)) => {
                out.push_str("normalization (exact):\n");
                chain_text(&mut out, c);
            }
            Some(Normalization::Numeric(w)) => {
                let _ = writeln!(out, "normalization (numeric, {} bits):", w.precision_bits);
                let _ = writeln!(out, "x -> {}", w.x);
                let _ = writeln!(out, "y -> {}", w.y);
                let _ = writeln!(out, "residual: {}", w.residual);
                let _ = writeln!(out, "tolerance: {}", w.tolerance);
            }
            None => {}
        }
        out
    }

    fn exit_code(&self) -> i32 {
        let normalized = match &self.normalization {
            Some(Normalization::Exact(c)) => c.verified,
            Some(Normalization::Numeric(w)) => w.within_tolerance(),
            None => true,
        };
        if self.chain.verified && normalized {
            0
        } else {
            1
        }
    }
}
