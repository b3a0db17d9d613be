//! `quintic`: verification suites, censuses, the net/form correspondence and
//! arithmetic queries. Exit codes: 0 all checks pass, 1 a check failed or the
//! input is mathematically invalid, 2 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quintic::algebra::{AlgebraError, Budget, Gf, GfField, Matrix, RingSpec, Scalar};
use quintic::arithmetic::{local_class, shafarevich_count, z_classification, Place};
use quintic::codec::{form_from_json, form_to_json, integer_form, net_from_json, net_to_json, rational_form};
use quintic::correspondence::{certify_rank4, net_from_form, phi_from_net, Rank4Certificate};
use quintic::forms::{signature_pair, AlternatingNet, TernarySymForm};
use quintic::geometry::{census, classify_point, lines_through, trisecant_points};
use quintic::group_actions::{sigma, sigma_prime};
use quintic::models::{y_split_ideal, ProjPoint};
use quintic::verify::{self, Mode, Status, Suite, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "quintic",
    version,
    about = "Exact checks for nets of alternating forms and the quintic threefolds they define"
)]
struct Cli {
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Roundtrip,
    Actions,
    Geometry,
    Arithmetic,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Randomized,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Net2form,
    Form2net,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "randomized")]
        mode: ModeArg,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
        /// An integer, or `random` to draw one (echoed in the report).
        #[arg(long)]
        seed: Option<String>,
    },
    /// Transform a net into its ternary form or back.
    Correspond {
        #[arg(long, value_enum)]
        dir: Direction,
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit census of Y_spl(GF(q)).
    Census {
        #[arg(long)]
        q: u64,
    },
    /// Lines of Y_spl through a point over GF(q).
    Lines {
        #[arg(long)]
        q: u64,
        /// Seven comma-separated coordinates a0..a6.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Intersection of the line of a point with the projected Veronese surface.
    Trisecant {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Apply the SL2 action on the seven coordinates.
    Act {
        /// 0 for QQ, otherwise the prime p of GF(p).
        #[arg(long = "char")]
        characteristic: u64,
        /// Entries a,b,c,d of g = [[a,b],[c,d]].
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Count forms with good reduction outside a set of primes.
    Shafarevich {
        /// Comma-separated primes; empty for S = {}.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        primes: String,
    },
    /// Local split/non-split class of a rational form at a place.
    LocalClass {
        #[arg(long)]
        form: PathBuf,
        /// A prime or `inf`.
        #[arg(long)]
        place: String,
    },
    /// Print the split model over a ring, or classify a unimodular integral form.
    SplitModel {
        /// ZZ, QQ, GF(q) or GF(p^k).
        #[arg(long, default_value = "ZZ")]
        ring: String,
        /// Classify this form over ZZ instead.
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

/// Failure modes mapped onto exit codes.
enum Failure {
    /// Exit 1: a check failed or the input violates a mathematical precondition.
    Math(String, Option<Value>),
    /// Exit 2.
    Usage(String),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    report: Value,
    human: Vec<String>,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.report).expect("serializable"));
            } else {
                for line in &out.human {
                    println!("{line}");
                }
                println!("status: {} ({:.2?})", if out.passed { "pass" } else { "fail" }, start.elapsed());
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Math(msg, report)) => {
            if cli.json {
                let r = report.unwrap_or_else(|| json!({"status": "fail", "error": msg}));
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"status": "error", "error": msg})).expect("serializable")
                );
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Verify { suite, mode, samples, seed } => cmd_verify(*suite, *mode, *samples, seed.as_deref()),
        Command::Correspond { dir, input, out } => cmd_correspond(*dir, input, out.as_ref()),
        Command::Census { q } => cmd_census(*q),
        Command::Lines { q, point } => cmd_lines(*q, point),
        Command::Trisecant { q, point } => cmd_trisecant(*q, point),
        Command::Act { characteristic, g, point } => cmd_act(*characteristic, g, point),
        Command::Shafarevich { primes } => cmd_shafarevich(primes),
        Command::LocalClass { form, place } => cmd_local_class(form, place),
        Command::SplitModel { ring, form } => cmd_split_model(ring, form.as_ref()),
    }
}

fn cmd_verify(suite: SuiteArg, mode: ModeArg, samples: usize, seed: Option<&str>) -> Result<Output, Failure> {
    if samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let seed = match seed {
        None => verify::DEFAULT_SEED,
        Some("random") => rand::random(),
        Some(s) => {
            s.parse().map_err(|_| Failure::Usage(format!("--seed expects an integer or `random`, got `{s}`")))?
        }
    };
    let suite = match suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Roundtrip => Suite::Roundtrip,
        SuiteArg::Actions => Suite::Actions,
        SuiteArg::Geometry => Suite::Geometry,
        SuiteArg::Arithmetic => Suite::Arithmetic,
        SuiteArg::All => Suite::All,
    };
    let mode = match mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Randomized => Mode::Randomized,
    };
    let opts = VerifyOptions { suite, mode, samples, seed };
    let report = verify::run(&opts, &Budget::from_env())?;
    let human = report
        .details
        .iter()
        .map(|d| {
            let mut line = format!("[{}] {}: {}", d.suite, d.identity, d.status);
            if !d.detail.is_empty() {
                line.push_str(&format!("  ({})", d.detail));
            }
            if let Some(w) = &d.witness {
                line.push_str(&format!("  witness {w}"));
            }
            line
        })
        .collect();
    let value = serde_json::to_value(&report).expect("serializable");
    match report.status {
        Status::Error => {
            let msg = report.failures().map(|d| format!("{}: {}", d.identity, d.detail)).collect::<Vec<_>>().join("; ");
            Err(Failure::Usage(msg))
        }
        s => Ok(Output { report: value, human, passed: s == Status::Pass }),
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&PathBuf>, doc: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("serializable");
    match out {
        Some(p) => fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

/// det and, over ZZ or QQ, the signature pair.
fn form_summary(spec: &RingSpec, q: &TernarySymForm<Scalar>) -> Value {
    let det = q.det();
    let signature = match spec {
        RingSpec::Integer | RingSpec::Rational if !quintic::algebra::Ring::is_zero(&det) => {
            rational_form(q).ok().and_then(|r| signature_pair(r.matrix()).ok()).map(|(p, n)| json!([p, n]))
        }
        _ => None,
    };
    json!({"det": det.encode(), "signature": signature})
}

fn cmd_correspond(dir: Direction, input: &PathBuf, out: Option<&PathBuf>) -> Result<Output, Failure> {
    let doc = read_json(input)?;
    match dir {
        Direction::Net2form => {
            let (spec, net) = net_from_json(&doc)?;
            match certify_rank4(&net)? {
                Rank4Certificate::Certified => {}
                Rank4Certificate::FailedAt(p) => {
                    return Err(Failure::Math(format!("rank-4 certification failed at ({})", p.join(",")), None))
                }
                Rank4Certificate::DegenerateForm => {
                    return Err(Failure::Math("rank-4 certification failed: det Q_ν = 0".into(), None))
                }
            }
            let q = phi_from_net(&net);
            let image = form_to_json(&spec, &q);
            write_or_print(out, &image)?;
            let summary = form_summary(&spec, &q);
            let mut human = vec![format!("ring: {spec}"), format!("Q = {:?}", q.matrix().row_vecs())];
            human.push(format!(
                "det = {}, signature = {}",
                summary["det"].as_str().unwrap_or_default(),
                summary["signature"]
            ));
            Ok(Output {
                report: json!({"command": "correspond", "inputs": {"dir": "net2form"}, "status": "pass", "image": image, "summary": summary}),
                human,
                passed: true,
            })
        }
        Direction::Form2net => {
            let (spec, q) = form_from_json(&doc)?;
            if !q.is_nondegenerate() {
                return Err(Failure::Math(format!("form is degenerate over {spec}: det = {}", q.det()), None));
            }
            let net = net_from_form(&q).map_err(|e| Failure::Math(e.to_string(), None))?;
            let image = net_to_json(&spec, &net);
            write_or_print(out, &image)?;
            let summary = form_summary(&spec, &q);
            let human = vec![
                format!("ring: {spec}"),
                format!("A = {:?}", net.a().row_vecs()),
                format!("B = {:?}", net.b().row_vecs()),
                format!("C = {:?}", net.c().row_vecs()),
                format!(
                    "det Q = {}, signature = {}",
                    summary["det"].as_str().unwrap_or_default(),
                    summary["signature"]
                ),
            ];
            Ok(Output {
                report: json!({"command": "correspond", "inputs": {"dir": "form2net"}, "status": "pass", "image": image, "summary": summary}),
                human,
                passed: true,
            })
        }
    }
}

fn field(q: u64) -> Result<&'static GfField, Failure> {
    Ok(GfField::of_order(q)?)
}

fn parse_list(s: &str, spec: &RingSpec, len: usize) -> Result<Vec<Scalar>, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != len {
        return Err(Failure::Usage(format!("expected {len} comma-separated entries, got {}", parts.len())));
    }
    Ok(parts.iter().map(|p| spec.parse(p)).collect::<Result<_, _>>()?)
}

fn gf_point(q: u64, s: &str) -> Result<ProjPoint<Gf>, Failure> {
    let f = field(q)?;
    let spec = RingSpec::of(&Scalar::Gf(f.zero()));
    let coords: Vec<Gf> = parse_list(s, &spec, 7)?.iter().map(|x| x.as_gf().expect("field entries")).collect();
    let p = ProjPoint::new(coords)?;
    if !y_split_ideal(&f.zero()).contains(p.coords())? {
        return Err(Failure::Math(format!("{p} is not on Y_spl over GF({q})"), None));
    }
    Ok(p)
}

fn cmd_census(q: u64) -> Result<Output, Failure> {
    let r = census(q)?;
    let mut human = vec![format!("Y_spl(GF({q})): {} points", r.total)];
    for o in &r.orbits {
        let lines = o.lines.as_ref().map(|l| format!("{l:?}")).unwrap_or_else(|| "-".into());
        let tri = o.trisecant.as_ref().map(|t| format!("{t:?}")).unwrap_or_else(|| "-".into());
        human.push(format!("  {:<4} {:>6}  lines {lines}  trisecant {tri}", o.label.to_string(), o.size));
    }
    human.extend(r.mismatches.iter().map(|m| format!("  mismatch: {m}")));
    let orbits: Vec<Value> = r
        .orbits
        .iter()
        .map(|o| {
            json!({
                "label": o.label.to_string(),
                "size": o.size,
                "lines": o.lines,
                "trisecant": o.trisecant,
            })
        })
        .collect();
    let passed = r.passed();
    Ok(Output {
        report: json!({
            "command": "census",
            "inputs": {"q": q},
            "status": if passed { "pass" } else { "fail" },
            "total": r.total,
            "orbits": orbits,
            "lines_checked": r.lines_checked,
            "mismatches": r.mismatches,
        }),
        human,
        passed,
    })
}

fn cmd_lines(q: u64, point: &str) -> Result<Output, Failure> {
    let p = gf_point(q, point)?;
    let label = classify_point(&p)?;
    let found = lines_through(&p)?;
    let mut kinds: Vec<_> = found.iter().map(|l| l.line.kind()).collect();
    kinds.sort();
    let passed = kinds == label.expected_lines();
    let mut human = vec![format!("point {p} in orbit {label}: {} line(s)", found.len())];
    let lines: Vec<Value> = found
        .iter()
        .map(|l| {
            human.push(format!("  over GF({}^{}): {}", q, l.degree, l.line));
            let [a, b] = l.line.points();
            json!({"field_degree": l.degree, "type": l.line.kind(), "points": [a.to_string(), b.to_string()]})
        })
        .collect();
    Ok(Output {
        report: json!({
            "command": "lines",
            "inputs": {"q": q, "point": p.to_string()},
            "status": if passed { "pass" } else { "fail" },
            "orbit": label.to_string(),
            "lines": lines,
        }),
        human,
        passed,
    })
}

fn cmd_trisecant(q: u64, point: &str) -> Result<Output, Failure> {
    let p = gf_point(q, point)?;
    let label = classify_point(&p)?;
    let tri = trisecant_points(&p)?;
    let profile = tri.typed_profile();
    let passed = profile == label.expected_trisecant_profile();
    let mut human = vec![format!("point {p} in orbit {label}; intersection over GF({q}^{})", tri.field_degree)];
    let points: Vec<Value> = tri
        .points
        .iter()
        .map(|t| {
            human.push(format!("  {} from {} with multiplicity {}", t.image, t.plane, t.multiplicity));
            json!({"image": t.image.to_string(), "plane": t.plane.to_string(), "multiplicity": t.multiplicity})
        })
        .collect();
    human.push(format!("  profile {:?}", tri.profile()));
    Ok(Output {
        report: json!({
            "command": "trisecant",
            "inputs": {"q": q, "point": p.to_string()},
            "status": if passed { "pass" } else { "fail" },
            "orbit": label.to_string(),
            "field_degree": tri.field_degree,
            "points": points,
            "profile": tri.profile(),
            "typed_profile": profile,
        }),
        human,
        passed,
    })
}

fn cmd_act(characteristic: u64, g: &str, point: &str) -> Result<Output, Failure> {
    let spec = if characteristic == 0 { RingSpec::Rational } else { RingSpec::Prime(characteristic) };
    spec.validate()?;
    let ge = parse_list(g, &spec, 4)?;
    let x = parse_list(point, &spec, 7)?;
    let gm = Matrix::from_rows(vec![ge[..2].to_vec(), ge[2..].to_vec()]).map_err(Failure::from)?;
    let act = if characteristic == 2 { sigma_prime(&gm)? } else { sigma(&gm)? };
    let image = act.mul_vec(&x)?;
    let y = y_split_ideal(&spec.zero()?);
    let before = y.contains(&x)?;
    let after = y.contains(&image)?;
    let passed = before == after;
    let enc = |v: &[Scalar]| v.iter().map(Scalar::encode).collect::<Vec<_>>().join(",");
    let human = vec![
        format!("g = [[{},{}],[{},{}]] over {spec}", ge[0], ge[1], ge[2], ge[3]),
        format!("({}) on model: {before}", enc(&x)),
        format!("({}) on model: {after}", enc(&image)),
    ];
    Ok(Output {
        report: json!({
            "command": "act",
            "inputs": {"char": characteristic, "g": enc(&ge), "point": enc(&x)},
            "status": if passed { "pass" } else { "fail" },
            "image": enc(&image),
            "input_on_model": before,
            "image_on_model": after,
        }),
        human,
        passed,
    })
}

fn cmd_shafarevich(primes: &str) -> Result<Output, Failure> {
    let s: Vec<u64> = primes
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| Failure::Usage(format!("`{p}` is not a prime"))))
        .collect::<Result<_, _>>()?;
    let r = shafarevich_count(&s)?;
    let passed = r.passed();
    let places: Vec<String> = r.places.iter().map(ToString::to_string).collect();
    let mut human = vec![format!("places {{{}}}: r = {}, count = {}", places.join(","), r.r, r.count)];
    if r.two_normalized {
        human.push("note: 2 is always among the places and was removed from S".into());
    }
    for c in &r.classes {
        human.push(format!("  non-split at {}: {:?} verified {}", c.pattern, c.representative, c.verified));
    }
    let mut report = serde_json::to_value(&r).expect("serializable");
    report["command"] = json!("shafarevich");
    report["inputs"] = json!({"primes": s});
    report["status"] = json!(if passed { "pass" } else { "fail" });
    Ok(Output { report, human, passed })
}

fn cmd_local_class(form: &PathBuf, place: &str) -> Result<Output, Failure> {
    let (_, q) = form_from_json(&read_json(form)?)?;
    let place = Place::parse(place)?;
    let rq = rational_form(&q)?;
    if !rq.is_nondegenerate() {
        return Err(Failure::Math("form is degenerate: det = 0".into(), None));
    }
    let class = local_class(&rq, place)?;
    let cls = serde_json::to_value(class).expect("serializable");
    Ok(Output {
        report: json!({"command": "local-class", "inputs": {"place": place}, "status": "pass", "class": cls}),
        human: vec![format!("class at {place}: {}", cls.as_str().unwrap_or_default())],
        passed: true,
    })
}

fn cmd_split_model(ring: &str, form: Option<&PathBuf>) -> Result<Output, Failure> {
    if let Some(path) = form {
        let (_, q) = form_from_json(&read_json(path)?)?;
        let zq = integer_form(&q)?;
        let class = z_classification(&zq).map_err(|e| Failure::Math(e.to_string(), None))?;
        let cls = serde_json::to_value(class).expect("serializable");
        return Ok(Output {
            report: json!({"command": "split-model", "inputs": {"form": path}, "status": "pass", "class": cls}),
            human: vec![format!("class over ZZ: {}", cls.as_str().unwrap_or_default())],
            passed: true,
        });
    }
    let spec: RingSpec = ring.parse()?;
    let zero = spec.zero()?;
    let system = y_split_ideal(&zero);
    let quadrics: Vec<String> = system.generators().iter().map(ToString::to_string).collect();
    let mut human = vec![format!("Y_spl over {spec}:")];
    human.extend(quadrics.iter().map(|q| format!("  {q} = 0")));
    Ok(Output {
        report: json!({
            "command": "split-model",
            "inputs": {"ring": spec.to_string()},
            "status": "pass",
            "coordinates": system.coordinate_names(),
            "quadrics": quadrics,
            "net": net_to_json(&spec, &AlternatingNet::split(&zero)),
            "form": form_to_json(&spec, &TernarySymForm::split(&zero)),
        }),
        human,
        passed: true,
    })
}
