//! Command-line front end.
//!
//! Every subcommand prints a plain-text report, or with `--json` a single JSON
//! object carrying `"schema": 1` alongside the report fields. Exit status is
//! 0 on success, 1 on domain errors (diagnostic on stderr) and 2 on usage
//! errors.
//!
//! Lattices are named with `U`, `U<m>` (the hyperbolic plane scaled by `m`),
//! `A<n>`, `D<n>`, `E8`, `K3`, `M` (the degree-5 pair lattice) and `T` (its
//! orthogonal complement in `K3`), joined with `+`. An argument starting with
//! `[` is read as a JSON Gram matrix instead.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::hodge::{
    eigen_hodge_numbers, hodge_numbers_primitive, residue_basis, DiagonalAction, EigenReport,
    HodgeVector,
};
use crate::jacobian::{hilbert_series_closed_form, JacobianContext};
use crate::lattice::{
    discriminant_form, discriminant_group, is_primitive, orthogonal_complement, same_genus_bounded,
    smith_normal_form, Lattice, LatticeError, LatticeSpec, SublatticeEmbedding,
    DEFAULT_GENUS_BOUND,
};
use crate::polyring::{parse_polynomial, parse_polynomial_file, Polynomial, WeightedRing};
use crate::scenarios::{self, HorikawaReport, LatticeSplitReport, ModuliDimensions};
use crate::selftest::{self, CriterionOutcome};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "reslat",
    version,
    about = "Hodge numbers of weighted hypersurfaces and K3 lattice computations"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Ring declaration `vars;weights`, e.g. "x0,x1,y,z;1,1,2,5".
    #[arg(long)]
    ring: Option<String>,
    /// Polynomial text.
    #[arg(
        long,
        conflicts_with = "file",
        required_unless_present = "file",
        requires = "ring"
    )]
    poly: Option<String>,
    /// Polynomial file with an optional `vars: ...; weights: ...` header.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Primitive Hodge numbers of a quasi-smooth hypersurface.
    Hodge {
        #[command(flatten)]
        input: PolyInput,
        /// Also list a monomial residue basis for every pole order.
        #[arg(long)]
        basis: bool,
    },
    /// Hodge numbers split by characters of a diagonal group action.
    Eigen {
        #[command(flatten)]
        input: PolyInput,
        /// Invariant factors of the group, e.g. "2,2".
        #[arg(long)]
        group: String,
        /// Exponent rows, one per generator, e.g. "1,0,0,0;0,1,0,0".
        #[arg(long)]
        action: String,
    },
    /// Whether the hypersurface is quasi-smooth.
    Quasismooth {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Hilbert series coefficients of a weighted complete intersection
    /// quotient, optionally compared with a Jacobian ring.
    Hilbert {
        #[arg(long)]
        ring: Option<String>,
        /// Generator degrees, e.g. "9,9,8,5".
        #[arg(long, conflicts_with_all = ["poly", "file"], required_unless_present_any = ["poly", "file"], requires = "ring")]
        degrees: Option<String>,
        /// Use the degrees of the partials of this polynomial.
        #[arg(long, conflicts_with = "file", requires = "ring")]
        poly: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        up_to: usize,
    },
    #[command(subcommand)]
    Lattice(LatticeCommand),
    #[command(subcommand)]
    Scenario(ScenarioCommand),
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Rank, determinant, signature, parity and discriminant group.
    Info {
        #[arg(long = "a")]
        a: String,
    },
    /// Smith normal form `D = U G V` of the Gram matrix.
    Snf {
        #[arg(long = "a")]
        a: String,
    },
    /// Discriminant quadratic form.
    Disc {
        #[arg(long = "a")]
        a: String,
    },
    /// Orthogonal complement of a sublattice.
    Complement {
        #[arg(long)]
        ambient: String,
        /// Basis rows in ambient coordinates, "1,0,0;0,1,0" or JSON.
        #[arg(long)]
        basis: String,
    },
    /// Genus comparison of two even lattices.
    Genus {
        #[arg(long = "a")]
        a: String,
        #[arg(long = "b")]
        b: String,
        /// Largest discriminant order searched exhaustively.
        #[arg(long, default_value_t = DEFAULT_GENUS_BOUND)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ScenarioCommand {
    /// Special Horikawa surface `z^2 = F(x0^2, x1^2, y)`.
    Horikawa {
        /// The quintic `F(u, v, w)`; defaults to `u^5 + v^5 + w^5`.
        #[arg(long)]
        quintic: Option<String>,
    },
    /// The lattice spanned by a line and five exceptional curves.
    PairLattice,
    /// Embedding of the pair lattice in the K3 lattice and its complement.
    K3Split,
    /// Two independent dimension counts for the family.
    Moduli,
}

/// A report with the schema version in front.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    #[serde(flatten)]
    pub report: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeOutput {
    pub ring: String,
    pub polynomial: String,
    pub degree: u64,
    pub hodge: HodgeVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_basis: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenOutput {
    pub ring: String,
    pub polynomial: String,
    #[serde(flatten)]
    pub eigen: EigenReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiSmoothOutput {
    pub ring: String,
    pub polynomial: String,
    pub degree: u64,
    pub socle_degree: i64,
    pub quasi_smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertOutput {
    pub ring: String,
    pub generator_degrees: Vec<u64>,
    pub series: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_dims: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeInfo {
    pub name: String,
    pub gram: Vec<Vec<i64>>,
    pub rank: usize,
    pub determinant: i64,
    pub signature: (usize, usize),
    pub degenerate_directions: usize,
    pub even: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant_group: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfOutput {
    pub name: String,
    pub diagonal: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscOutput {
    pub name: String,
    pub invariant_factors: Vec<u64>,
    /// `q(g_i)` mod 2 as `p/q`.
    pub q_values: Vec<String>,
    /// `b(g_i, g_j)` mod 1 as `p/q`.
    pub b_values: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementOutput {
    pub ambient: String,
    pub basis: Vec<Vec<i64>>,
    pub sublattice_primitive: bool,
    pub complement_basis: Vec<Vec<i64>>,
    pub complement_gram: Vec<Vec<i64>>,
    pub rank: usize,
    pub signature: (usize, usize),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant_group: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusOutput {
    pub a: String,
    pub b: String,
    pub same_genus: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLatticeOutput {
    pub gram: Vec<Vec<i64>>,
    pub determinant: i64,
    pub signature: (usize, usize),
    pub discriminant_group: Vec<u64>,
    pub h_squared: i64,
    pub h_dot_line: i64,
    /// Rows in `(l', e_1, ..., e_5)` coordinates with Gram matrix `U(2) + D4`.
    pub standard_basis: Vec<Vec<i64>>,
    pub same_genus_as_u2_d4: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestOutput {
    pub seed: u64,
    pub criteria: Vec<CriterionOutcome>,
    pub all_passed: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    /// A complete report whose verdict is negative: stdout, exit 1.
    Negative(String),
}

type Outcome = Result<String, Failure>;

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

/// Runs the CLI on `argv` (program name first), writing the report to `out`
/// and diagnostics to `err`. Returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Negative(report)) => {
            let _ = out.write_all(report.as_bytes());
            let _ = writeln!(err, "error: some acceptance checks failed");
            1
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn emit<T: Serialize>(json: bool, report: T, text: impl FnOnce(&T) -> String) -> Outcome {
    if json {
        let env = Envelope {
            schema: SCHEMA_VERSION,
            report,
        };
        let mut s = serde_json::to_string(&env).map_err(domain)?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(text(&report))
    }
}

fn execute(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Hodge { input, basis } => hodge(json, input, *basis),
        Command::Eigen {
            input,
            group,
            action,
        } => eigen(json, input, group, action),
        Command::Quasismooth { input } => quasismooth(json, input),
        Command::Hilbert {
            ring,
            degrees,
            poly,
            file,
            up_to,
        } => hilbert(
            json,
            ring.as_deref(),
            degrees.as_deref(),
            poly.as_deref(),
            file.as_ref(),
            *up_to,
        ),
        Command::Lattice(cmd) => lattice(json, cmd),
        Command::Scenario(cmd) => scenario(json, cmd),
        Command::Selftest { seed } => selftest_cmd(json, *seed),
    }
}

fn parse_ring(decl: &str) -> Result<Arc<WeightedRing>, Failure> {
    WeightedRing::parse_decl(decl).map_err(domain)
}

fn load_polynomial(
    ring: Option<&str>,
    poly: Option<&str>,
    file: Option<&PathBuf>,
) -> Result<Polynomial, Failure> {
    let ring = ring.map(parse_ring).transpose()?;
    match (poly, file) {
        (Some(src), None) => {
            let ring = ring.ok_or_else(|| Failure::Usage("--poly needs --ring".into()))?;
            parse_polynomial(src, &ring).map_err(domain)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
            parse_polynomial_file(&text, ring.as_ref()).map_err(domain)
        }
        _ => Err(Failure::Usage(
            "give exactly one of --poly or --file".into(),
        )),
    }
}

fn input_polynomial(input: &PolyInput) -> Result<Polynomial, Failure> {
    load_polynomial(
        input.ring.as_deref(),
        input.poly.as_deref(),
        input.file.as_ref(),
    )
}

fn hodge(json: bool, input: &PolyInput, with_basis: bool) -> Outcome {
    let g = input_polynomial(input)?;
    let hodge = hodge_numbers_primitive(&g).map_err(domain)?;
    let residue_basis = if with_basis {
        let bases = (1..g.ring().arity())
            .map(|q| residue_basis(&g, q).map(|b| b.iter().map(|m| m.display(g.ring())).collect()))
            .collect::<Result<Vec<Vec<String>>, _>>()
            .map_err(domain)?;
        Some(bases)
    } else {
        None
    };
    let report = HodgeOutput {
        ring: g.ring().decl(),
        degree: g.weighted_degree().map_err(domain)?,
        polynomial: g.to_string(),
        hodge,
        residue_basis,
    };
    emit(json, report, |r| {
        let mut s = format!(
            "ring: {}\npolynomial: {}\ndegree: {}\nprimitive Hodge numbers: {}\n",
            r.ring, r.polynomial, r.degree, r.hodge
        );
        if let Some(bases) = &r.residue_basis {
            for (q, b) in bases.iter().enumerate() {
                let _ = writeln!(s, "residue basis, pole order {}: [{}]", q + 1, b.join(", "));
            }
        }
        s
    })
}

fn parse_u64_list(src: &str, what: &str) -> Result<Vec<u64>, Failure> {
    src.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Domain(format!("bad {what} entry `{}`", t.trim())))
        })
        .collect()
}

fn parse_action(group: &str, action: &str, arity: usize) -> Result<DiagonalAction, Failure> {
    let factors = parse_u64_list(group, "group")?;
    let rows = action
        .split(';')
        .map(|row| parse_u64_list(row, "action"))
        .collect::<Result<Vec<_>, _>>()?;
    DiagonalAction::new(factors, rows, arity).map_err(domain)
}

fn eigen(json: bool, input: &PolyInput, group: &str, action: &str) -> Outcome {
    let g = input_polynomial(input)?;
    let action = parse_action(group, action, g.ring().arity())?;
    let eigen = eigen_hodge_numbers(&g, &action).map_err(domain)?;
    let report = EigenOutput {
        ring: g.ring().decl(),
        polynomial: g.to_string(),
        eigen,
    };
    emit(json, report, |r| {
        let mut s = format!("ring: {}\npolynomial: {}\n", r.ring, r.polynomial);
        for (c, h) in &r.eigen.characters {
            let _ = writeln!(s, "character {c}: {h}");
        }
        let _ = writeln!(s, "total: {}", r.eigen.total);
        s
    })
}

fn quasismooth(json: bool, input: &PolyInput) -> Outcome {
    let g = input_polynomial(input)?;
    let ctx = JacobianContext::new(&g).map_err(domain)?;
    let report = QuasiSmoothOutput {
        ring: g.ring().decl(),
        polynomial: g.to_string(),
        degree: ctx.degree(),
        socle_degree: ctx.socle_degree(),
        quasi_smooth: ctx.is_quasi_smooth(),
    };
    emit(json, report, |r| {
        format!(
            "ring: {}\npolynomial: {}\ndegree: {}\nsocle degree: {}\nquasi-smooth: {}\n",
            r.ring, r.polynomial, r.degree, r.socle_degree, r.quasi_smooth
        )
    })
}

fn hilbert(
    json: bool,
    ring: Option<&str>,
    degrees: Option<&str>,
    poly: Option<&str>,
    file: Option<&PathBuf>,
    up_to: usize,
) -> Outcome {
    let report = match degrees {
        Some(degrees) => {
            let ring =
                parse_ring(ring.ok_or_else(|| Failure::Usage("--degrees needs --ring".into()))?)?;
            let generator_degrees = parse_u64_list(degrees, "degree")?;
            if generator_degrees.contains(&0) {
                return Err(Failure::Domain("generator degrees must be positive".into()));
            }
            HilbertOutput {
                series: hilbert_series_closed_form(&ring, &generator_degrees, up_to),
                ring: ring.decl(),
                generator_degrees,
                quotient_dims: None,
            }
        }
        None => {
            let g = load_polynomial(ring, poly, file)?;
            let ctx = JacobianContext::new(&g).map_err(domain)?;
            let generator_degrees = ctx.generator_degrees();
            HilbertOutput {
                series: hilbert_series_closed_form(ctx.ring(), &generator_degrees, up_to),
                quotient_dims: Some(
                    (0..=up_to)
                        .map(|k| ctx.graded_quotient_dim(k as i64))
                        .collect(),
                ),
                ring: ctx.ring().decl(),
                generator_degrees,
            }
        }
    };
    emit(json, report, |r| {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(", ");
        let mut s = format!(
            "ring: {}\ngenerator degrees: [{}]\nseries: [{}]\n",
            r.ring,
            join(&mut r.generator_degrees.iter().map(u64::to_string)),
            join(&mut r.series.iter().map(i64::to_string)),
        );
        if let Some(d) = &r.quotient_dims {
            let _ = writeln!(
                s,
                "quotient dims: [{}]",
                join(&mut d.iter().map(usize::to_string))
            );
        }
        s
    })
}

fn lattice_component(token: &str) -> Result<Lattice, Failure> {
    let bad = || Failure::Domain(format!("unknown lattice `{token}`"));
    let number = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
    let spec = match token {
        "U" => LatticeSpec::U,
        "E8" => LatticeSpec::E8,
        "K3" => LatticeSpec::K3,
        "M" => return Ok(scenarios::degree5_pair_lattice()),
        "T" => return Ok(scenarios::k3_orthogonal_split().map_err(domain)?.t_gram),
        _ => match token.split_at(1) {
            ("U", m) => LatticeSpec::ScaledU(number(m)? as i64),
            ("A", n) => LatticeSpec::A(number(n)?),
            ("D", n) => LatticeSpec::D(number(n)?),
            _ => return Err(bad()),
        },
    };
    Lattice::standard(&spec).map_err(domain)
}

/// Parses the lattice mini-language or a JSON Gram matrix.
pub fn parse_lattice(src: &str) -> Result<Lattice, String> {
    parse_lattice_inner(src).map_err(|f| match f {
        Failure::Usage(m) | Failure::Domain(m) | Failure::Negative(m) => m,
    })
}

fn parse_lattice_inner(src: &str) -> Result<Lattice, Failure> {
    let src = src.trim();
    if src.starts_with('[') {
        return Lattice::from_json(src).map_err(domain);
    }
    if src.is_empty() {
        return Err(Failure::Domain("empty lattice name".into()));
    }
    let parts = src
        .split('+')
        .map(|t| lattice_component(t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let l = if parts.len() == 1 {
        parts.into_iter().next().expect("one part")
    } else {
        Lattice::direct_sum(&parts)
    };
    Ok(l.with_label(src))
}

fn small(x: &BigInt) -> Result<i64, Failure> {
    x.to_i64().ok_or_else(|| domain(LatticeError::Overflow))
}

fn small_matrix(m: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>, Failure> {
    m.iter().map(|r| r.iter().map(small).collect()).collect()
}

fn group_u64(l: &Lattice) -> Result<Option<Vec<u64>>, Failure> {
    if !l.is_nondegenerate() {
        return Ok(None);
    }
    let g = discriminant_group(l).map_err(domain)?;
    Ok(Some(
        g.iter()
            .map(|d| d.to_u64().ok_or_else(|| domain(LatticeError::Overflow)))
            .collect::<Result<_, _>>()?,
    ))
}

fn fmt_rows(rows: &[Vec<i64>]) -> String {
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "  [{}]",
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    lines.join("\n")
}

fn fmt_list<T: ToString>(v: &[T]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn fmt_group(g: &Option<Vec<u64>>) -> String {
    match g {
        None => "undefined (degenerate)".into(),
        Some(g) if g.is_empty() => "trivial".into(),
        Some(g) => g
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x "),
    }
}

fn parse_rows(src: &str) -> Result<Vec<Vec<i64>>, Failure> {
    let src = src.trim();
    if src.starts_with('[') {
        return serde_json::from_str(src).map_err(|e| Failure::Domain(format!("bad basis: {e}")));
    }
    src.split(';')
        .map(|row| {
            row.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Failure::Domain(format!("bad basis entry `{}`", t.trim())))
                })
                .collect()
        })
        .collect()
}

fn lattice(json: bool, cmd: &LatticeCommand) -> Outcome {
    match cmd {
        LatticeCommand::Info { a } => {
            let l = parse_lattice_inner(a)?;
            let sig = l.signature();
            let report = LatticeInfo {
                name: a.clone(),
                gram: l.gram().to_vec(),
                rank: l.rank(),
                determinant: small(&l.determinant())?,
                signature: sig.pair(),
                degenerate_directions: sig.degenerate,
                even: l.is_even(),
                discriminant_group: group_u64(&l)?,
            };
            emit(json, report, |r| {
                format!(
                    "lattice: {}\nrank: {}\ndeterminant: {}\nsignature: {:?}\neven: {}\ndiscriminant group: {}\n",
                    r.name, r.rank, r.determinant, r.signature, r.even, fmt_group(&r.discriminant_group)
                )
            })
        }
        LatticeCommand::Snf { a } => {
            let l = parse_lattice_inner(a)?;
            let s = smith_normal_form(l.gram());
            let report = SnfOutput {
                name: a.clone(),
                diagonal: (0..l.rank())
                    .map(|i| small(&s.d[i][i]))
                    .collect::<Result<_, _>>()?,
                u: small_matrix(&s.u)?,
                v: small_matrix(&s.v)?,
            };
            emit(json, report, |r| {
                format!(
                    "lattice: {}\nSmith diagonal: {}\nU:\n{}\nV:\n{}\n",
                    r.name,
                    fmt_list(&r.diagonal),
                    fmt_rows(&r.u),
                    fmt_rows(&r.v)
                )
            })
        }
        LatticeCommand::Disc { a } => {
            let l = parse_lattice_inner(a)?;
            let form = discriminant_form(&l).map_err(domain)?;
            let report = DiscOutput {
                name: a.clone(),
                invariant_factors: form.invariant_factors.clone(),
                q_values: form.q_values.iter().map(ToString::to_string).collect(),
                b_values: form
                    .b_values
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
            };
            emit(json, report, |r| {
                let mut s = format!(
                    "lattice: {}\ndiscriminant group: {}\nq on generators (mod 2): {}\nb on generators (mod 1):\n",
                    r.name,
                    fmt_group(&Some(r.invariant_factors.clone())),
                    fmt_list(&r.q_values)
                );
                for row in &r.b_values {
                    let _ = writeln!(s, "  {}", fmt_list(row));
                }
                s
            })
        }
        LatticeCommand::Complement { ambient, basis } => {
            let l = parse_lattice_inner(ambient)?;
            let rows = parse_rows(basis)?;
            let sub = SublatticeEmbedding::new(l, rows).map_err(domain)?;
            let c = orthogonal_complement(&sub).map_err(domain)?;
            let gram = c.lattice();
            let report = ComplementOutput {
                ambient: ambient.clone(),
                sublattice_primitive: is_primitive(&sub),
                basis: sub.basis.clone(),
                complement_basis: c.basis.clone(),
                rank: gram.rank(),
                signature: gram.signature().pair(),
                discriminant_group: group_u64(&gram)?,
                complement_gram: gram.gram().to_vec(),
            };
            emit(json, report, |r| {
                format!(
                    "ambient: {}\nsublattice primitive: {}\ncomplement rank: {}\ncomplement signature: {:?}\n\
                     complement discriminant group: {}\ncomplement basis:\n{}\ncomplement Gram matrix:\n{}\n",
                    r.ambient,
                    r.sublattice_primitive,
                    r.rank,
                    r.signature,
                    fmt_group(&r.discriminant_group),
                    fmt_rows(&r.complement_basis),
                    fmt_rows(&r.complement_gram)
                )
            })
        }
        LatticeCommand::Genus { a, b, bound } => {
            let la = parse_lattice_inner(a)?;
            let lb = parse_lattice_inner(b)?;
            let same = same_genus_bounded(&la, &lb, *bound).map_err(domain)?;
            let report = GenusOutput {
                a: a.clone(),
                b: b.clone(),
                same_genus: same,
            };
            emit(json, report, |r| format!("same genus: {}\n", r.same_genus))
        }
    }
}

fn horikawa_text(r: &HorikawaReport) -> String {
    let mut s = format!(
        "equation: {} = 0\ny^5 present: {}\nquasi-smooth: {}\n",
        r.equation, r.y5_present, r.quasi_smooth
    );
    if let Some(t) = &r.total {
        let _ = writeln!(s, "primitive Hodge numbers: {t}");
    }
    if let Some(e) = &r.eigen {
        for (c, h) in &e.characters {
            let name = match c.0.as_slice() {
                [0, 1] => " (chi_0)",
                [1, 0] => " (chi_1)",
                _ => "",
            };
            let _ = writeln!(s, "character {c}{name}: {h}");
        }
    }
    s
}

fn split_text(r: &LatticeSplitReport) -> String {
    format!(
        "embedding isometric: {}\nM primitive: {}\nT primitive: {}\nrank T: {}\nsignature T: {:?}\n\
         discriminant group T: {}\nM in genus of U(2)+D4: {}\nT in genus of U+U(2)+D4+E8: {}\n\
         h^2 = 2: {}\nh.l' = 1: {}\nembedding of l', e1..e5:\n{}\nT basis:\n{}\n",
        r.embedding_isometric,
        r.m_primitive,
        r.t_primitive,
        r.t_rank,
        r.t_signature,
        fmt_group(&Some(r.t_discriminant_group.clone())),
        r.genus_m_ok,
        r.genus_t_ok,
        r.h_class_checks[0],
        r.h_class_checks[1],
        fmt_rows(&r.embedding),
        fmt_rows(&r.t_basis)
    )
}

fn scenario(json: bool, cmd: &ScenarioCommand) -> Outcome {
    match cmd {
        ScenarioCommand::Horikawa { quintic } => {
            let ring = scenarios::quintic_ring();
            let f = parse_polynomial(quintic.as_deref().unwrap_or("u^5 + v^5 + w^5"), &ring)
                .map_err(domain)?;
            let report = scenarios::horikawa_surface(&f).map_err(domain)?;
            if !report.quasi_smooth {
                let reason = if report.y5_present {
                    ""
                } else {
                    " (the w^5 term is missing)"
                };
                return Err(Failure::Domain(format!(
                    "{} = 0 is not quasi-smooth{reason}",
                    report.equation
                )));
            }
            emit(json, report, horikawa_text)
        }
        ScenarioCommand::PairLattice => {
            let m = scenarios::degree5_pair_lattice();
            let u2d4 = parse_lattice_inner("U2+D4")?;
            let report = PairLatticeOutput {
                gram: m.gram().to_vec(),
                determinant: small(&m.determinant())?,
                signature: m.signature().pair(),
                discriminant_group: group_u64(&m)?.unwrap_or_default(),
                h_squared: m.inner(&scenarios::HYPERPLANE_CLASS, &scenarios::HYPERPLANE_CLASS),
                h_dot_line: m.inner(&scenarios::HYPERPLANE_CLASS, &scenarios::LINE_CLASS),
                standard_basis: scenarios::STANDARD_BASIS_OF_PAIR_LATTICE
                    .iter()
                    .map(|r| r.to_vec())
                    .collect(),
                same_genus_as_u2_d4: crate::lattice::same_genus(&m, &u2d4).map_err(domain)?,
            };
            emit(json, report, |r| {
                format!(
                    "Gram matrix (l', e1..e5):\n{}\ndeterminant: {}\nsignature: {:?}\ndiscriminant group: {}\n\
                     h^2: {}\nh.l': {}\nsame genus as U(2)+D4: {}\nbasis with Gram matrix U(2)+D4:\n{}\n",
                    fmt_rows(&r.gram),
                    r.determinant,
                    r.signature,
                    fmt_group(&Some(r.discriminant_group.clone())),
                    r.h_squared,
                    r.h_dot_line,
                    r.same_genus_as_u2_d4,
                    fmt_rows(&r.standard_basis)
                )
            })
        }
        ScenarioCommand::K3Split => {
            let report = scenarios::k3_orthogonal_split().map_err(domain)?;
            emit(json, report, split_text)
        }
        ScenarioCommand::Moduli => {
            let report: ModuliDimensions = scenarios::moduli_dimensions();
            emit(json, report, |r| {
                format!(
                    "branch data: {}\nhypersurface: {}\n",
                    r.branch_data, r.hypersurface
                )
            })
        }
    }
}

fn selftest_cmd(json: bool, seed: u64) -> Outcome {
    let criteria = selftest::run_all(seed);
    let all_passed = criteria.iter().all(|c| c.passed);
    let text = emit(
        json,
        SelftestOutput {
            seed,
            criteria,
            all_passed,
        },
        |r| {
            let mut s = String::new();
            for c in &r.criteria {
                let _ = writeln!(s, "{c}");
            }
            let passed = r.criteria.iter().filter(|c| c.passed).count();
            let _ = writeln!(
                s,
                "{passed}/{} criteria passed (seed {})",
                r.criteria.len(),
                r.seed
            );
            s
        },
    )?;
    if all_passed {
        Ok(text)
    } else {
        Err(Failure::Negative(text))
    }
}
