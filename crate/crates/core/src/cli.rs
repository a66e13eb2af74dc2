//! The `cremona` command line.
//!
//! Every command prints one JSON report on standard output. Exit codes:
//! `0` success, `1` usage or parse error, `2` precondition violation,
//! `3` verification failure.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::corpus::{self, BUNDLED_MAPS};
use crate::error::{Error, Result};
use crate::families::{xi_restrict, DiagonalSpec};
use crate::group::{
    conjugate_by_word, diag_orbit_classify, free_generator_matrices, no_relation_certificate,
    pingpong_check, sample_grid, DiagonalInput, GroupWord, OrbitClass, Sl2Matrix, SymbolicDiagonal,
};
use crate::leading::{
    g_form, g_form_of_representative, is_in_group, leading_pair, predict_leading, rho,
};
use crate::maps::ProjectiveMap;
use crate::newton::{
    map_newton_body, newton_body_levels, newton_polytope, normalized_volume, LatticePolytope,
    SystemGenerators,
};
use crate::poly::Rational;
use crate::report::{self, digest, Report, Status};
use crate::text::{parse_polynomial, MapFile};

#[derive(Parser, Debug)]
#[command(
    name = "cremona",
    version,
    about = "Exact computations with birational self-maps of projective space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct MapSource {
    /// Map file; the bundled witness file is used when omitted.
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a map file or a single polynomial and print it canonically.
    Parse {
        #[command(flatten)]
        src: MapSource,
        /// Parse this expression instead of a map file.
        #[arg(long)]
        poly: Option<String>,
        /// Ambient n for `--poly` (defaults to the map file's n).
        #[arg(long)]
        n: Option<usize>,
        /// Reduce each map to its coprime representative.
        #[arg(long)]
        normalize: bool,
    },
    /// Compose maps: `-m g -m f` gives g∘f.
    Compose {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map", required = true)]
        maps: Vec<String>,
        #[arg(long)]
        normalize: bool,
    },
    /// Exponent matrix rho of a map in G-form.
    Rho {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: String,
    },
    /// G-form data of a map; with `--inverse`, group membership.
    Gform {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: String,
        /// Examine the coprime representative instead of the one given.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        inverse: Option<String>,
    },
    /// Predicted and actual leading pair of h(f).
    PredictLeading {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: String,
        #[arg(long)]
        poly: String,
    },
    /// Newton polytope of a polynomial or Newton body of a map.
    Newton {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        level: usize,
        /// Component used as denominator of the generators.
        #[arg(long, default_value_t = 0)]
        denominator: usize,
    },
    /// Normalized lattice volume of a Newton polytope or Newton body.
    Volume {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value_t = 0)]
        denominator: usize,
    },
    /// Whether a map contracts the hyperplane X_i = 0 to a point.
    Contracts {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: String,
        #[arg(long)]
        hyperplane: usize,
        #[arg(long)]
        normalize: bool,
    },
    /// Restriction of a map to the hyperplane X_i = 0.
    Restrict {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: String,
        #[arg(long)]
        hyperplane: usize,
    },
    /// Jacobian determinant of an affine map, or of xi of a projective map.
    Jacobian {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: String,
    },
    /// Certify that no relation of length <= 2L holds between two generators.
    Freegroup {
        #[arg(long = "len", default_value_t = 10)]
        len: usize,
        #[arg(long, value_enum, default_value_t = Pair::Sl2)]
        pair: Pair,
        /// Ambient n for `--pair rho`.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Conjugate a map by a word in a1^2 (A) and a2^2 (B).
    Conjugate {
        #[command(flatten)]
        src: MapSource,
        #[arg(short = 'm', long = "map")]
        map: String,
        /// Word over A, a, B, b (a, b are inverses).
        #[arg(long)]
        word: String,
        /// Compare the result with this map.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Orbit classification of a diagonal map under the free group.
    DiagClassify {
        /// Comma-separated nonzero scalars l1,...,ln.
        #[arg(long, conflicts_with = "symbolic")]
        lambda: Option<String>,
        #[arg(long, value_enum)]
        symbolic: Option<Symbolic>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long = "len", default_value_t = 2)]
        len: usize,
    },
    /// Run the bundled witness suite.
    Corpus {
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Pair {
    /// [[1, 2], [0, 1]] and [[1, 0], [-2, 1]].
    Sl2,
    /// rho(a1)^2 and rho(a2)^2.
    Rho,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Symbolic {
    /// (t, ..., t).
    Scalar,
    /// (t1, ..., tn).
    Generic,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = if e.use_stderr() { 1 } else { 0 };
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let mut inv = Invocation::default();
    let outcome = execute(&cli.command, &mut inv);
    let command = Value::Object(inv.echo);
    let digest = digest(&inv.inputs.iter().map(Vec::as_slice).collect::<Vec<_>>());
    let (report, stderr) = match outcome {
        Ok((result, status)) => {
            let stderr = match status {
                Status::Ok => String::new(),
                _ => format!("cremona: {}\n", failure_summary(&result)),
            };
            (Report::new(command, digest, result, status), stderr)
        }
        Err(e) => {
            let stderr = format!("cremona: {e}\n");
            (Report::failure(command, digest, &e), stderr)
        }
    };
    CliOutput {
        code: report.status.exit_code(),
        stdout: report.to_json(),
        stderr,
    }
}

fn failure_summary(result: &Value) -> String {
    result
        .get("failure")
        .and_then(Value::as_str)
        .unwrap_or("verification failed")
        .to_string()
}

#[derive(Default)]
struct Invocation {
    echo: Map<String, Value>,
    inputs: Vec<Vec<u8>>,
}

impl Invocation {
    fn arg(&mut self, key: &str, value: impl Into<Value>) {
        let v = value.into();
        self.inputs.push(format!("{key}={v}").into_bytes());
        self.echo.insert(key.to_string(), v);
    }

    fn load(&mut self, src: &MapSource) -> Result<MapFile> {
        let text = match &src.file {
            Some(path) => {
                self.arg("file", path.as_str());
                std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?
            }
            None => {
                self.arg("file", "<bundled>");
                BUNDLED_MAPS.to_string()
            }
        };
        self.inputs.push(text.clone().into_bytes());
        MapFile::parse(&text)
    }
}

type Outcome = Result<(Value, Status)>;

fn ok(v: Value) -> Outcome {
    Ok((v, Status::Ok))
}

fn checked(v: Value, passed: bool, failure: &str) -> Outcome {
    if passed {
        Ok((v, Status::Ok))
    } else {
        let mut v = v;
        if let Value::Object(m) = &mut v {
            m.insert("failure".into(), Value::String(failure.to_string()));
        }
        Ok((v, Status::VerificationFailed))
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get())
}

fn execute(cmd: &Command, inv: &mut Invocation) -> Outcome {
    match cmd {
        Command::Parse {
            src,
            poly,
            n,
            normalize,
        } => {
            inv.arg("name", "parse");
            if let Some(expr) = poly {
                inv.arg("poly", expr.as_str());
                let n = match n {
                    Some(n) => *n,
                    None => inv.load(src)?.ambient_n(),
                };
                inv.arg("n", report::int(n));
                let p = parse_polynomial(expr, n)?;
                return ok(json!({
                    "polynomial": report::polynomial(&p),
                    "terms": report::int(p.num_terms()),
                    "homogeneous_degree": p.is_homogeneous().map(report::int),
                }));
            }
            inv.arg("normalize", *normalize);
            let file = inv.load(src)?;
            let maps: Map<String, Value> = file
                .maps()
                .iter()
                .map(|(k, f)| {
                    let f = if *normalize {
                        f.normalized()
                    } else {
                        f.clone()
                    };
                    (k.clone(), report::map(&f))
                })
                .collect();
            let affine: Map<String, Value> = file
                .affine_maps()
                .iter()
                .map(|(k, f)| (k.clone(), report::affine(f)))
                .collect();
            ok(json!({ "n": report::int(file.ambient_n()), "maps": maps, "affine": affine }))
        }
        Command::Compose {
            src,
            maps,
            normalize,
        } => {
            inv.arg("name", "compose");
            inv.arg("maps", maps.clone());
            inv.arg("normalize", *normalize);
            let file = inv.load(src)?;
            let mut it = maps.iter().rev();
            let first = it.next().expect("clap enforces at least one map");
            let mut acc = file.map(first)?.clone();
            for name in it {
                acc = file.map(name)?.compose(&acc, *normalize)?;
            }
            ok(json!({ "map": report::map(&acc), "degree": report::int(acc.degree()) }))
        }
        Command::Rho { src, map } => {
            inv.arg("name", "rho");
            inv.arg("map", map.as_str());
            let file = inv.load(src)?;
            let m = rho(file.map(map)?)?;
            ok(json!({
                "matrix": report::matrix(&m),
                "det": report::int(m.det()),
                "column_sums": report::ints(&m.column_sums()),
                "sl_prime": m.is_sl_prime(),
            }))
        }
        Command::Gform {
            src,
            map,
            normalize,
            inverse,
        } => {
            inv.arg("name", "gform");
            inv.arg("map", map.as_str());
            inv.arg("normalize", *normalize);
            if let Some(i) = inverse {
                inv.arg("inverse", i.as_str());
            }
            let file = inv.load(src)?;
            let f = file.map(map)?;
            let shape = if *normalize {
                g_form(f).ok_or_else(|| "coprime representative is not in G-form".to_string())
            } else {
                g_form_of_representative(f)
            };
            let mut out = match &shape {
                Ok(data) => json!({
                    "present": true,
                    "degree": report::int(data.degree),
                    "base": report::ints(&data.base),
                    "columns": Value::Array(data.columns.iter().map(|c| report::ints(c)).collect()),
                    "alphas": Value::Array(data.alphas.iter().map(report::rational).collect()),
                    "rho": report::matrix(&data.matrix()),
                }),
                Err(reason) => json!({ "present": false, "reason": reason }),
            };
            match inverse {
                None => ok(out),
                Some(i) => {
                    let member = is_in_group(f, file.map(i)?)?;
                    out["in_group"] = json!(member);
                    checked(out, member, "the supplied inverse does not invert the map")
                }
            }
        }
        Command::PredictLeading { src, map, poly } => {
            inv.arg("name", "predict-leading");
            inv.arg("map", map.as_str());
            inv.arg("poly", poly.as_str());
            let file = inv.load(src)?;
            let f = file.map(map)?;
            let h = parse_polynomial(poly, file.ambient_n())?;
            let predicted = predict_leading(&h, f)?;
            let actual = leading_pair(&h.substitute(f.components())?)?;
            let pair = |p: &crate::leading::LeadingPair| json!({ "x0_degree": report::int(p.x0_degree), "residual": report::ints(&p.residual) });
            checked(
                json!({ "predicted": pair(&predicted), "actual": pair(&actual), "equal": predicted == actual }),
                predicted == actual,
                "predicted leading pair differs from the computed one",
            )
        }
        Command::Newton {
            src,
            map,
            poly,
            n,
            level,
            denominator,
        } => {
            inv.arg("name", "newton");
            let target = newton_target(inv, src, map, poly, n, *level, *denominator)?;
            match target {
                NewtonTarget::Poly(p) => ok(json!({ "polytope": report::polytope(&p) })),
                NewtonTarget::System(sys, k) => {
                    let r = newton_body_levels(&sys, k)?;
                    ok(json!({
                        "levels": Value::Array(r.levels.iter().map(report::polytope).collect()),
                        "body": report::polytope(r.body()),
                        "stable_from": report::int(r.stable_from),
                        "monotone": r.monotone,
                        "standard_simplex": crate::newton::is_standard_simplex(r.body()),
                    }))
                }
            }
        }
        Command::Volume {
            src,
            map,
            poly,
            n,
            level,
            denominator,
        } => {
            inv.arg("name", "volume");
            let target = newton_target(inv, src, map, poly, n, *level, *denominator)?;
            let p = match target {
                NewtonTarget::Poly(p) => p,
                NewtonTarget::System(sys, k) => map_newton_body(&sys, k)?,
            };
            let v = normalized_volume(&p)?;
            ok(json!({
                "polytope": report::polytope(&p),
                "volume": report::rational(&v.value),
                "full_dimensional": v.full_dimensional,
                "simplices": report::int(v.simplices),
            }))
        }
        Command::Contracts {
            src,
            map,
            hyperplane,
            normalize,
        } => {
            inv.arg("name", "contracts");
            inv.arg("map", map.as_str());
            inv.arg("hyperplane", report::int(hyperplane));
            inv.arg("normalize", *normalize);
            let file = inv.load(src)?;
            let f = pick(&file, map, *normalize)?;
            let point = f.contracts_to_point(*hyperplane)?;
            ok(json!({
                "contracts": point.is_some(),
                "point": point.as_ref().map(|p| Value::String(p.to_string())),
                "coordinates": point.as_ref().map(report::point),
            }))
        }
        Command::Restrict {
            src,
            map,
            hyperplane,
        } => {
            inv.arg("name", "restrict");
            inv.arg("map", map.as_str());
            inv.arg("hyperplane", report::int(hyperplane));
            let file = inv.load(src)?;
            let r = file.map(map)?.restrict_to_hyperplane(*hyperplane)?;
            ok(json!({
                "components": Value::Array(r.components.iter().map(report::polynomial).collect()),
                "all_zero": r.all_zero,
            }))
        }
        Command::Jacobian { src, map } => {
            inv.arg("name", "jacobian");
            inv.arg("map", map.as_str());
            let file = inv.load(src)?;
            let (psi, via_xi) = match file.affine(map) {
                Ok(a) => (a.clone(), false),
                Err(_) => (xi_restrict(file.map(map)?)?, true),
            };
            let det = psi.jacobian_det();
            ok(json!({
                "affine_map": report::affine(&psi),
                "via_xi": via_xi,
                "jacobian": report::polynomial(&det),
                "is_one": det == crate::poly::Polynomial::one(psi.dim()),
            }))
        }
        Command::Freegroup {
            len,
            pair,
            n,
            workers,
        } => {
            inv.arg("name", "freegroup");
            inv.arg("len", report::int(len));
            inv.arg("pair", format!("{pair:?}").to_lowercase());
            let workers = workers.unwrap_or_else(default_workers);
            let (cert, extra) = match pair {
                Pair::Sl2 => {
                    let cert = no_relation_certificate(
                        &Sl2Matrix::upper(2),
                        &Sl2Matrix::lower(-2),
                        *len,
                        workers,
                    )?;
                    let pp = pingpong_check(2, &sample_grid(20), 3)?;
                    (cert, json!({ "pingpong_m2_radius20": pp.holds() }))
                }
                Pair::Rho => {
                    inv.arg("n", report::int(n));
                    let (a, b) = free_generator_matrices(*n)?;
                    let cert = no_relation_certificate(&a, &b, *len, workers)?;
                    (
                        cert,
                        json!({ "a": report::matrix(&a), "b": report::matrix(&b) }),
                    )
                }
            };
            let mut out = json!({
                "max_len": report::int(cert.max_len),
                "words_checked": report::int(cert.words_checked),
                "all_distinct": cert.holds(),
                "collision": cert.collision.as_ref().map(|(u, v)| json!([u.to_string(), v.to_string()])),
            });
            out["generators"] = extra;
            checked(
                out,
                cert.holds(),
                "two distinct reduced words have the same image",
            )
        }
        Command::Conjugate {
            src,
            map,
            word,
            expect,
        } => {
            inv.arg("name", "conjugate");
            inv.arg("map", map.as_str());
            inv.arg("word", word.as_str());
            if let Some(e) = expect {
                inv.arg("expect", e.as_str());
            }
            let file = inv.load(src)?;
            let w: GroupWord = word.parse()?;
            let g = conjugate_by_word(&w, file.map(map)?)?;
            let mut out = json!({
                "word": w.to_string(),
                "map": report::map(&g),
                "degree": report::int(g.degree()),
            });
            match expect {
                None => ok(out),
                Some(e) => {
                    let eq = g.equals_projectively(file.map(e)?);
                    out["matches_expected"] = json!(eq);
                    checked(out, eq, "conjugate differs from the expected map")
                }
            }
        }
        Command::DiagClassify {
            lambda,
            symbolic,
            n,
            len,
        } => {
            inv.arg("name", "diag-classify");
            inv.arg("len", report::int(len));
            let input = match (lambda, symbolic) {
                (Some(l), _) => {
                    inv.arg("lambda", l.as_str());
                    DiagonalInput::Concrete(parse_lambdas(l)?)
                }
                (None, Some(s)) => {
                    inv.arg("symbolic", format!("{s:?}").to_lowercase());
                    inv.arg("n", report::int(n));
                    DiagonalInput::Symbolic(match s {
                        Symbolic::Scalar => SymbolicDiagonal::all_equal(*n),
                        Symbolic::Generic => SymbolicDiagonal::generic(*n),
                    })
                }
                (None, None) => {
                    return Err(Error::Usage("pass --lambda or --symbolic".into()));
                }
            };
            let class = diag_orbit_classify(&input, *len)?;
            ok(match class {
                OrbitClass::FixedUnconditionally => {
                    json!({ "class": "fixed", "unconditional": true })
                }
                OrbitClass::FixedUpTo(l) => {
                    json!({ "class": "fixed", "unconditional": false, "checked_up_to": report::int(l) })
                }
                OrbitClass::Moved(w) => json!({ "class": "moved", "witness": w.to_string() }),
            })
        }
        Command::Corpus { workers } => {
            inv.arg("name", "corpus");
            inv.inputs.push(BUNDLED_MAPS.as_bytes().to_vec());
            let outcomes = corpus::run_corpus(workers.unwrap_or_else(default_workers))?;
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let entries: Map<String, Value> = outcomes
                .iter()
                .map(|o| {
                    (
                        o.name.to_string(),
                        json!({ "passed": o.passed, "detail": o.detail }),
                    )
                })
                .collect();
            let total = outcomes.len();
            checked(
                json!({ "entries": entries, "passed": report::int(passed), "total": report::int(total) }),
                passed == total,
                "some corpus entries failed",
            )
        }
    }
}

enum NewtonTarget {
    Poly(LatticePolytope),
    System(SystemGenerators, usize),
}

#[allow(clippy::too_many_arguments)]
fn newton_target(
    inv: &mut Invocation,
    src: &MapSource,
    map: &Option<String>,
    poly: &Option<String>,
    n: &Option<usize>,
    level: usize,
    denominator: usize,
) -> Result<NewtonTarget> {
    match (map, poly) {
        (Some(_), Some(_)) => Err(Error::Usage("pass either -m or --poly, not both".into())),
        (None, None) => Err(Error::Usage("pass -m NAME or --poly EXPR".into())),
        (None, Some(expr)) => {
            inv.arg("poly", expr.as_str());
            let n = match n {
                Some(n) => *n,
                None => inv.load(src)?.ambient_n(),
            };
            inv.arg("n", report::int(n));
            Ok(NewtonTarget::Poly(newton_polytope(&parse_polynomial(
                expr, n,
            )?)?))
        }
        (Some(name), None) => {
            inv.arg("map", name.as_str());
            inv.arg("level", report::int(level));
            inv.arg("denominator", report::int(denominator));
            let file = inv.load(src)?;
            let sys = SystemGenerators::of_map_over(file.map(name)?, denominator)?;
            Ok(NewtonTarget::System(sys, level))
        }
    }
}

fn pick(file: &MapFile, name: &str, normalize: bool) -> Result<ProjectiveMap> {
    let f = file.map(name)?;
    Ok(if normalize { f.normalized() } else { f.clone() })
}

fn parse_lambdas(s: &str) -> Result<DiagonalSpec> {
    let vals = s
        .split(',')
        .map(|part| {
            let p = parse_polynomial(part, 0)?;
            if !p.is_constant() {
                return Err(Error::Usage(format!("`{part}` is not a number")));
            }
            let c = p
                .terms()
                .next()
                .map_or_else(Rational::default, |(_, c)| c.clone());
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    DiagonalSpec::new(vals)
}
