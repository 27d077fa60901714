use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use surfrank_cli::{
    exit_code, point_text, render_text, run, sig6, FamilyReport, Flags, InputSpec, SearchReport,
};
use surfrank_core::error::{Error, Result};
use surfrank_core::exactalg::Rational;
use surfrank_core::expr::parse_poly;
use surfrank_core::families;
use surfrank_core::nagao::estimate_rank;

#[derive(Parser)]
#[command(
    name = "surfrank",
    version,
    about = "Exact Mordell-Weil ranks of Y^2 = A(X)T^2 + B(X)T + C(X) over Q(T)"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    /// A, B, C as polynomials in X.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_hyphen_values = true)]
    triple: Option<Vec<String>>,
    /// a2, a4, a6 of Y^2 = X^3 + a2 X^2 + a4 X + a6 as polynomials in T.
    #[arg(long, num_args = 3, value_names = ["A2", "A4", "A6"], allow_hyphen_values = true)]
    weierstrass: Option<Vec<String>>,
    /// L, B, C of Y^2 = L^3 T^2 + B T + C as polynomials in X.
    #[arg(long, num_args = 3, value_names = ["L", "B", "C"], allow_hyphen_values = true)]
    cube: Option<Vec<String>>,
}

impl Input {
    fn spec(&self) -> InputSpec {
        let take = |v: &Vec<String>| (v[0].clone(), v[1].clone(), v[2].clone());
        if let Some(v) = &self.triple {
            let (a, b, c) = take(v);
            InputSpec::Triple { a, b, c }
        } else if let Some(v) = &self.weierstrass {
            let (a2, a4, a6) = take(v);
            InputSpec::Weierstrass { a2, a4, a6 }
        } else {
            let (l, b, c) = take(self.cube.as_ref().expect("clap enforces one input form"));
            InputSpec::Cube { l, b, c }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact rank with intermediates, points and torsion.
    Rank {
        #[command(flatten)]
        input: Input,
        /// Also run the Nagao estimate up to this bound.
        #[arg(long = "nagao-Q")]
        nagao_q: Option<u64>,
        /// Skip the orbit descent.
        #[arg(long)]
        no_descent: bool,
    },
    /// Points obtained by descending the Galois orbits.
    Points {
        #[command(flatten)]
        input: Input,
    },
    /// Heuristic Nagao estimate against the exact rank.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long = "nagao-Q", default_value_t = 100_000)]
        nagao_q: u64,
        /// Write the trace as CSV to this path.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// Parametric families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Find a point on y^2 = C(x) through surfaces Y^2 = B(X) T + C(X).
    SearchPoint {
        /// Monic cubic C in X.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 20)]
        bound: u32,
        /// Recorded in the output; the enumeration order is fixed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Find a second point on y^2 = C(x) from a known one.
    SearchSecondPoint {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, allow_hyphen_values = true)]
        y0: String,
        #[arg(long, default_value_t = 20)]
        bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// A = 0 family with points (0, k) and (1, l).
    GenRank2 {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        l: String,
    },
    /// A = k^2 family with a point of order 3.
    GenTorsion3 {
        #[arg(long, allow_hyphen_values = true)]
        b0: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// A = k^2 family with a point of order 4.
    GenTorsion4 {
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// deg A = 2 family with five points.
    GenRank5 {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        m3: String,
    },
    /// A = X^3 family with six points.
    GenRank6 {
        #[arg(long, allow_hyphen_values = true)]
        b3: String,
        #[arg(long, allow_hyphen_values = true)]
        b0: String,
        /// Six distinct positive integers.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<i64>,
    },
}

/// A rational literal such as `-3/4`.
fn rational(s: &str) -> Result<Rational> {
    let p = parse_poly(s, 'X')?;
    if !p.is_constant() {
        return Err(Error::Syntax {
            offset: 0,
            message: format!("expected a rational number, got {s}"),
        });
    }
    Ok(p.coeff(0))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) {
    let out = if json {
        serde_json::to_string_pretty(value).expect("report serializes") + "\n"
    } else {
        text(value)
    };
    // A closed pipe (e.g. `| head`) is not an error.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn family_text(r: &FamilyReport) -> String {
    let mut out = format!(
        "{}: Y^2 = ({})*T^2 + ({})*T + ({})\npromise: {}\nrank: {}\n",
        r.family, r.surface.a, r.surface.b, r.surface.c, r.promise, r.rank
    );
    for (i, p) in r.points.iter().enumerate() {
        out.push_str(&format!("P{} = {}\n", i + 1, point_text(&p.x, &p.y)));
    }
    out
}

fn search_text(r: &SearchReport) -> String {
    match (&r.surface, &r.point) {
        (Some(s), Some((x, y))) => format!(
            "surface: Y^2 = ({})*T^2 + ({})*T + ({})\npoint: ({x}, {y})\n",
            s.a, s.b, s.c
        ),
        _ => "no point found within the bound\n".into(),
    }
}

fn execute(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Rank {
            input,
            nagao_q,
            no_descent,
        } => {
            let r = run(
                &input.spec(),
                Flags {
                    nagao_q,
                    no_descent,
                },
            )?;
            emit(json, &r, render_text);
        }
        Command::Points { input } => {
            let r = run(&input.spec(), Flags::default())?;
            emit(json, &r.points, |pts| {
                pts.iter()
                    .enumerate()
                    .map(|(i, p)| {
                        format!(
                            "P{} = {}  [{}]\n",
                            i + 1,
                            point_text(&p.x, &p.y),
                            p.provenance
                        )
                    })
                    .collect()
            });
        }
        Command::Verify {
            input,
            nagao_q,
            csv,
        } => {
            let s = input.spec().to_surface()?;
            let trace = estimate_rank(&s, nagao_q)?;
            if let Some(path) = csv {
                std::fs::write(&path, trace.to_csv()).map_err(|e| {
                    Error::DegenerateInput(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            let view = surfrank_cli::NagaoView::from(&trace);
            emit(json, &view, |v| {
                let mut out = format!("exact rank: {}\nnagao estimate (heuristic):\n", v.target);
                for (q, r) in &v.trace {
                    out.push_str(&format!("  Q = {q}: {}\n", sig6(*r)));
                }
                out
            });
        }
        Command::Family(f) => {
            let (name, inst) = match f {
                FamilyCmd::GenRank2 { k, l } => (
                    "gen-rank2",
                    families::gen_rank2_a0(&rational(&k)?, &rational(&l)?)?,
                ),
                FamilyCmd::GenTorsion3 { b0, b1, k } => (
                    "gen-torsion3",
                    families::gen_torsion3(&rational(&b0)?, &rational(&b1)?, &rational(&k)?)?,
                ),
                FamilyCmd::GenTorsion4 { b2, b1, k } => (
                    "gen-torsion4",
                    families::gen_torsion4(&rational(&b2)?, &rational(&b1)?, &rational(&k)?)?,
                ),
                FamilyCmd::GenRank5 { k, b1, b2, m3 } => (
                    "gen-rank5",
                    families::gen_rank5(
                        &rational(&k)?,
                        &rational(&b1)?,
                        &rational(&b2)?,
                        &rational(&m3)?,
                    )?,
                ),
                FamilyCmd::GenRank6 { b3, b0, r } => {
                    let r: [i64; 6] = r.try_into().map_err(|r: Vec<i64>| {
                        Error::DegenerateParameters(format!("expected six roots, got {}", r.len()))
                    })?;
                    (
                        "gen-rank6",
                        families::gen_rank6(&rational(&b3)?, &rational(&b0)?, &r)?,
                    )
                }
            };
            emit(json, &FamilyReport::new(name, &inst)?, family_text);
        }
        Command::SearchPoint { c, bound, seed } => {
            let hit = families::search_point(&parse_poly(&c, 'X')?, bound)?;
            emit(json, &SearchReport::new(hit.as_ref(), seed), search_text);
        }
        Command::SearchSecondPoint {
            c,
            x0,
            y0,
            bound,
            seed,
        } => {
            let (x0, y0) = (rational(&x0)?, rational(&y0)?);
            let hit = families::search_second_point(&parse_poly(&c, 'X')?, (&x0, &y0), bound)?;
            emit(json, &SearchReport::new(hit.as_ref(), seed), search_text);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
