use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multischeme::blowup::{blowup_good, blowup_hypersurface, blowup_reduced, CenterKind, CenterSpec};
use multischeme::catalog::{
    carpet_decompose, carpet_obstruction, extension_lattice, make_p2, quasiprojective, solve_pullback_family,
    symbolic_obstruction, Quasiprojective,
};
use multischeme::cohomology::{
    canonical_class, coboundary_solve, contract_cup, extension_obstruction, h2_residue, iso_decide, SectionKind,
    SolverReport,
};
use multischeme::good_points::{blowup_iso_decide, delta_invariant, GoodPoint};
use multischeme::io::AtlasFile;
use multischeme::laurent::{format_rational, parse_rational, LaurentPoly, Rational};
use multischeme::Error;

#[derive(Parser)]
#[command(name = "pms", version, about = "Primitive multiple schemes over toric charts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every cocycle and structure stored in an atlas file.
    Validate { atlas: PathBuf },
    /// Blow up along a center and print the new atlas.
    Blowup {
        atlas: PathBuf,
        #[arg(long)]
        center: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Search for an isomorphism between two double structures.
    ClassifyIso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Solve the pullback constraints for the family over the blown-up plane.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 6)]
        ansatz_bound: i64,
    },
    /// Queries about the carpets over the blown-up plane.
    Carpet {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum)]
        query: CarpetQuery,
        /// `M N` for the `extends` query.
        #[arg(allow_hyphen_values = true)]
        args: Vec<i64>,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Good points at P = (0:0:1) on a double plane.
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_enum)]
        query: GammaQuery,
        /// Coefficients `a1,a2` of the other point for `iso-with`.
        #[arg(allow_hyphen_values = true)]
        other: Option<String>,
        /// Double plane to work on; defaults to the nontrivial one.
        #[arg(long)]
        atlas: Option<PathBuf>,
    },
    /// Cohomological operations on the double structure of an atlas file.
    Cohomology {
        #[arg(long, value_enum)]
        op: CohomologyOp,
        atlas: PathBuf,
        /// Cocycle name in the file (for cup, residue and obstruction).
        cocycle: Option<String>,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Reduced,
    Good,
    Hypersurface,
}

#[derive(Clone, Copy, ValueEnum)]
enum CarpetQuery {
    Quasiprojective,
    Decompose,
    Extends,
    Lattice,
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaQuery {
    Delta,
    IsoWith,
}

#[derive(Clone, Copy, ValueEnum)]
enum CohomologyOp {
    Coboundary,
    Cup,
    Residue,
    Obstruction,
}

/// Printed output and whether the queried answer was positive.
struct Outcome {
    body: String,
    positive: bool,
}

impl Outcome {
    fn yes(v: Value) -> Self {
        Outcome {
            body: v.to_string(),
            positive: true,
        }
    }

    fn answer(v: Value, positive: bool) -> Self {
        Outcome {
            body: v.to_string(),
            positive,
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> CliResult<AtlasFile> {
    AtlasFile::parse(&read(path)?).map_err(|e| match e {
        Error::Parse(m) => Failure::Usage(format!("{}: {m}", path.display())),
        other => other.into(),
    })
}

fn rational_arg(s: &str) -> CliResult<Rational> {
    parse_rational(s.trim()).map_err(|e| Failure::Usage(format!("bad rational `{s}`: {e}")))
}

fn coeff_pair(s: &str) -> CliResult<(Rational, Rational)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::Usage(format!("expected `a1,a2`, got `{s}`")));
    }
    Ok((rational_arg(parts[0])?, rational_arg(parts[1])?))
}

fn validate(path: &Path) -> CliResult<Outcome> {
    let file = load(path)?;
    let mut failures = Vec::new();
    match file.atlas() {
        Err(e) => failures.push(e.to_string()),
        Ok(atlas) => {
            match file.cocycle_list(&atlas) {
                Ok(list) => {
                    for c in list {
                        failures.extend(c.validate(&atlas).failures);
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
            if file.double_structure.is_some() {
                match file.double() {
                    Ok(s) => failures.extend(s.validate().failures),
                    Err(e) => failures.push(e.to_string()),
                }
            }
            if file.transitions.is_some() {
                match file.multiple() {
                    Ok(s) => failures.extend(s.validate().failures),
                    Err(e) => failures.push(e.to_string()),
                }
            }
        }
    }
    failures.dedup();
    if failures.is_empty() {
        Ok(Outcome::yes(json!({"answer": "valid"})))
    } else {
        Ok(Outcome::answer(json!({"answer": "invalid", "failures": failures}), false))
    }
}

fn blowup(path: &Path, center: &Path, kind: Kind) -> CliResult<Outcome> {
    let file = load(path)?;
    let spec = CenterSpec::from_json(&read(center)?).map_err(|e| match e {
        Error::Parse(m) => Failure::Usage(format!("{}: {m}", center.display())),
        other => other.into(),
    })?;
    let expected = match kind {
        Kind::Reduced => CenterKind::Reduced,
        Kind::Good => CenterKind::Good,
        Kind::Hypersurface => CenterKind::Hypersurface,
    };
    if spec.kind != expected {
        return Err(Failure::Usage("--kind disagrees with the center file".into()));
    }
    let out = match kind {
        Kind::Reduced => {
            let b = blowup_reduced(&file.multiple()?, &spec)?;
            let mut out = AtlasFile::from_multiple(&b.scheme)?;
            out.add_cocycle(&b.scheme.atlas, &b.exceptional)?;
            out
        }
        Kind::Good => AtlasFile::from_double(&blowup_good(&file.double()?, &spec)?)?,
        Kind::Hypersurface => AtlasFile::from_multiple(&blowup_hypersurface(&file.multiple()?, &spec)?)?,
    };
    let mut body = out.render();
    body.pop();
    Ok(Outcome { body, positive: true })
}

fn classify_iso(a: &Path, b: &Path, bound: i64) -> CliResult<Outcome> {
    let s = load(a)?.double()?;
    let s2 = load(b)?.double()?;
    let found = iso_decide(&s, &s2, bound)?;
    let positive = found.is_some();
    let report = match found {
        Some((tau, t)) => SolverReport::new(&s.atlas, bound, Some(tau), Some(&t)),
        None => SolverReport::new(&s.atlas, bound, None, None),
    };
    Ok(Outcome::answer(serde_json::to_value(report).expect("serializable"), positive))
}

fn carpet(alpha: &str, query: CarpetQuery, args: &[i64], bound: i64) -> CliResult<Outcome> {
    let alpha = if alpha == "symbolic" {
        None
    } else {
        Some(rational_arg(alpha)?)
    };
    match query {
        CarpetQuery::Quasiprojective => match quasiprojective(alpha.as_ref())? {
            Quasiprojective::Yes { m, n } => Ok(Outcome::yes(json!({"answer": "yes", "witness": [m, n]}))),
            Quasiprojective::No => Ok(Outcome::answer(json!({"answer": "no"}), false)),
        },
        CarpetQuery::Decompose => {
            let Some(alpha) = alpha else {
                // Both sides are linear in alpha: decompose at 0 and 1.
                let d0 = carpet_decompose(&Rational::from_integer(0.into()), bound)?;
                let d1 = carpet_decompose(&Rational::from_integer(1.into()), bound)?;
                let lin = |a: &Rational, b: &Rational| {
                    json!({"constant": format_rational(a), "alpha": format_rational(&(b - a))})
                };
                return Ok(Outcome::yes(json!({
                    "u": lin(&d0.u, &d1.u),
                    "v": lin(&d0.v, &d1.v),
                    "bound": bound,
                })));
            };
            let d = carpet_decompose(&alpha, bound)?;
            Ok(Outcome::yes(serde_json::to_value(d).expect("serializable")))
        }
        CarpetQuery::Extends => {
            let [m, n] = args else {
                return Err(Failure::Usage("extends needs two integers M N".into()));
            };
            match alpha {
                None => {
                    let (a, b) = symbolic_obstruction(*m, *n)?;
                    let identically_zero = a == Rational::from_integer(0.into()) && b == a;
                    Ok(Outcome::answer(
                        json!({
                            "answer": if identically_zero { "yes" } else { "no" },
                            "obstruction": {"constant": format_rational(&a), "alpha": format_rational(&b)},
                        }),
                        identically_zero,
                    ))
                }
                Some(alpha) => {
                    let o = carpet_obstruction(&alpha, *m, *n)?;
                    let zero = o == Rational::from_integer(0.into());
                    Ok(Outcome::answer(
                        json!({"answer": if zero { "yes" } else { "no" }, "obstruction": format_rational(&o)}),
                        zero,
                    ))
                }
            }
        }
        CarpetQuery::Lattice => match alpha {
            None => Ok(Outcome::yes(json!({"generators": []}))),
            Some(alpha) => {
                let (m, n) = extension_lattice(&alpha)?;
                Ok(Outcome::yes(json!({"generators": [[m, n]]})))
            }
        },
    }
}

fn gamma(coeffs: &str, query: GammaQuery, other: Option<&str>, atlas: Option<&Path>) -> CliResult<Outcome> {
    let spec = match atlas {
        Some(p) => load(p)?.double()?,
        None => make_p2(-3, true)?,
    };
    let point = |s: &str| -> CliResult<GoodPoint> {
        let (a1, a2) = coeff_pair(s)?;
        Ok(GoodPoint::at_p(LaurentPoly::constant(2, a1), LaurentPoly::constant(2, a2)))
    };
    let z = point(coeffs)?;
    match query {
        GammaQuery::Delta => {
            let d = delta_invariant(&z, &spec)?;
            Ok(Outcome::yes(serde_json::to_value(d).expect("serializable")))
        }
        GammaQuery::IsoWith => {
            let other = other.ok_or_else(|| Failure::Usage("iso-with needs the other point's coefficients".into()))?;
            let yes = blowup_iso_decide(&z, &point(other)?, &spec)?;
            Ok(Outcome::answer(json!({"answer": if yes { "yes" } else { "no" }}), yes))
        }
    }
}

fn cohomology(op: CohomologyOp, path: &Path, cocycle: Option<&str>, bound: i64) -> CliResult<Outcome> {
    let file = load(path)?;
    let s = file.double()?;
    let atlas = &s.atlas;
    let alpha = s.full_alpha()?;
    let d = s.full_d()?;
    let bundle = || -> CliResult<_> {
        let name = cocycle.ok_or_else(|| Failure::Usage("this operation needs a cocycle name".into()))?;
        Ok(file.cocycle(atlas, name)?)
    };
    match op {
        CohomologyOp::Coboundary => {
            let found = coboundary_solve(atlas, &alpha, &d, SectionKind::VectorFields, bound)?;
            let positive = found.is_some();
            let report = SolverReport::new(atlas, bound, None, found.as_deref());
            Ok(Outcome::answer(serde_json::to_value(report).expect("serializable"), positive))
        }
        CohomologyOp::Cup => {
            let omega = canonical_class(atlas, &bundle()?)?.full(atlas)?;
            let cup = contract_cup(atlas, &alpha, &d, &omega)?;
            let entries: serde_json::Map<String, Value> = cup
                .data
                .iter()
                .map(|((i, j, k), v)| {
                    let key = format!("{},{},{}", atlas.name(*i), atlas.name(*j), atlas.name(*k));
                    (key, serde_json::to_value(v).expect("serializable"))
                })
                .collect();
            Ok(Outcome::yes(json!({"cup": entries})))
        }
        CohomologyOp::Residue => {
            let omega = canonical_class(atlas, &bundle()?)?.full(atlas)?;
            let r = h2_residue(atlas, &contract_cup(atlas, &alpha, &d, &omega)?)?;
            Ok(Outcome::yes(json!({"residue": format_rational(&r)})))
        }
        CohomologyOp::Obstruction => {
            let o = extension_obstruction(&s, &bundle()?)?;
            let zero = o == Rational::from_integer(0.into());
            Ok(Outcome::answer(
                json!({"answer": if zero { "extends" } else { "obstructed" }, "obstruction": format_rational(&o)}),
                zero,
            ))
        }
    }
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Validate { atlas } => validate(&atlas),
        Command::Blowup { atlas, center, kind } => blowup(&atlas, &center, kind),
        Command::ClassifyIso { a, b, bound } => classify_iso(&a, &b, bound),
        Command::Family { m, p, ansatz_bound } => {
            let f = solve_pullback_family(m, p, ansatz_bound)?;
            Ok(Outcome::yes(serde_json::to_value(f).expect("serializable")))
        }
        Command::Carpet {
            alpha,
            query,
            args,
            bound,
        } => carpet(&alpha, query, &args, bound),
        Command::Gamma {
            coeffs,
            query,
            other,
            atlas,
        } => gamma(&coeffs, query, other.as_deref(), atlas.as_deref()),
        Command::Cohomology {
            op,
            atlas,
            cocycle,
            bound,
        } => cohomology(op, &atlas, cocycle.as_deref(), bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.body);
            if out.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            println!("{}", json!({"answer": "invalid", "error": m}));
            ExitCode::from(1)
        }
    }
}
