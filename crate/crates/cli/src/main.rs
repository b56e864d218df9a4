use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gencontact::courant::{
    pairing_contact, validate_maurer_cartan, Algebroid, ContactBracket, StandardBracket,
};
use gencontact::courant::check_courant_axioms;
use gencontact::io::{encode_frame, Document, Encode};
use gencontact::oracle::{check_bracket_oracle, check_differential_oracle_random};
use gencontact::spinor::{
    check_annihilator_involutive, conjugate_pair, mukai_mixed, solve_involutive, validate_mixed_pair, FormPair,
};
use gencontact::structures::{
    check_admissible, check_cokahler, check_dual_conjugation, check_einstein_pairing, check_sekiya_transform,
    check_t_duality, compose_transforms, dualize_metric, dualize_quadruple, encode_einstein, t_dualize_circle,
    transform_mixed_pair, transform_section, transform_sekiya, transform_twists, validate_cech, validate_metric,
    validate_sekiya, CircleData,
};
use gencontact::{gallery, parse_nil, Check, Error, Polyform, Report};

/// Exact checks for generalised contact structures on frame algebras.
#[derive(Parser)]
#[command(name = "gencontact", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BracketKind {
    Standard,
    Contact,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Bracket,
    Differential,
    Sekiya,
}

#[derive(Subcommand)]
enum Command {
    /// Frame d² = 0, Maurer–Cartan twists, mixed pairs, quadruples, metrics.
    Validate {
        doc: PathBuf,
        /// Also enforce the individual φ and ψ pairings of mixed pairs.
        #[arg(long)]
        strict: bool,
    },
    /// Seeded Courant axiom trials for the standard or contact bracket.
    Axioms {
        /// Document supplying the frame; without one, the Heisenberg frame
        /// (contact, twists (0, dη, 0)) or R³ (standard, H = ε₁₂₃) is used.
        doc: Option<PathBuf>,
        #[arg(long, value_enum)]
        bracket: BracketKind,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Twists for the contact bracket.
        #[arg(long)]
        twists: Option<String>,
        /// Named 3-form H for the standard bracket.
        #[arg(long)]
        h: Option<String>,
        #[arg(long, hide = true)]
        corrupt_bracket: bool,
    },
    /// Witness solve and annihilator bracket identity for a mixed pair.
    Involutivity {
        doc: PathBuf,
        #[arg(long)]
        pair: String,
        #[arg(long)]
        twists: Option<String>,
        #[arg(long, default_value_t = 0)]
        degree_bound: u32,
    },
    /// Apply a (B, b, a)-transform to a named section, pair, quadruple,
    /// twist set or metric.
    Transform {
        doc: PathBuf,
        #[arg(long)]
        by: String,
        #[arg(long)]
        target: String,
    },
    /// Generalised coKähler check of two quadruples and a metric.
    Cokahler {
        doc: PathBuf,
        #[arg(long)]
        j1: String,
        #[arg(long)]
        j2: String,
        #[arg(long)]
        metric: String,
    },
    /// Constant ratio of the lengths of two pairs (or forms, with ψ = 0).
    Einstein {
        doc: PathBuf,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Circle T-dual of a mixed pair, optionally with a coKähler triple.
    Tdualize {
        doc: PathBuf,
        #[arg(long)]
        pair: String,
        #[arg(long)]
        twists: Option<String>,
        /// Named 1-form A with dA = F.
        #[arg(long)]
        connection: Option<String>,
        /// Named 1-form Ã with dÃ = H₂.
        #[arg(long)]
        dual_connection: Option<String>,
        #[arg(long, requires_all = ["j2", "metric"])]
        j1: Option<String>,
        #[arg(long)]
        j2: Option<String>,
        #[arg(long)]
        metric: Option<String>,
    },
    /// ι_{e_j}ι_{e_i}H = 0 for all pairs of fibre directions.
    Admissible {
        doc: PathBuf,
        /// Named 3-form.
        #[arg(long)]
        h: String,
        #[arg(long, value_delimiter = ',', required = true)]
        fibers: Vec<usize>,
    },
    /// Curvature, cocycle and gauge checks of Čech data.
    Cech {
        doc: PathBuf,
        #[arg(long)]
        data: String,
        #[arg(long)]
        expected: String,
        /// A second datum to compare up to a global gauge transformation.
        #[arg(long)]
        other: Option<String>,
    },
    /// Parse structure-constant notation and print the canonical frame.
    ParseNil { tuple: String },
    /// Cross-check reduced formulas against the circle extension, or the
    /// printed quadruple deformation against conjugation.
    Oracle {
        doc: Option<PathBuf>,
        #[arg(long, value_enum)]
        check: OracleKind,
        #[arg(long)]
        twists: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Quadruple and transform for `--check sekiya`.
        #[arg(long)]
        quadruple: Option<String>,
        #[arg(long)]
        by: Option<String>,
    },
}

/// A report plus an optional computed object.
struct Outcome {
    result: Option<Value>,
    report: Report,
}

impl Outcome {
    fn report(report: Report) -> Self {
        Outcome { result: None, report }
    }
}

fn max_degree() -> Result<u32, Error> {
    match std::env::var("GC_MAX_DEGREE") {
        Err(_) => Ok(4),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("GC_MAX_DEGREE must be a non-negative integer, found '{s}'"))),
    }
}

fn load(path: &Path) -> Result<Document, Error> {
    Document::load(path)
}

fn named_form(doc: &Document, name: &str) -> Result<Polyform, Error> {
    doc.form(name).cloned()
}

/// A pair by name, or a named form `φ` read as `(φ, 0)`.
fn form_pair(doc: &Document, name: &str) -> Result<FormPair, Error> {
    if let Ok(p) = doc.pair(name) {
        return Ok(p.pair());
    }
    if let Ok(f) = doc.form(name) {
        return Ok((f.clone(), Polyform::zero(f.dim())));
    }
    Err(Error::Input(format!("no pair or form named '{name}'")))
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Validate { doc, strict } => {
            let d = load(&doc)?;
            let mut r = d.frame.validate();
            for (name, t) in &d.twists {
                r.extend(validate_maurer_cartan(&d.frame, t).scoped(&format!("twists.{name}")));
            }
            for (name, p) in &d.pairs {
                r.extend(validate_mixed_pair(p, strict).scoped(&format!("pairs.{name}")));
            }
            for (name, q) in &d.quadruples {
                r.extend(validate_sekiya(q).scoped(&format!("quadruples.{name}")));
            }
            for (name, m) in &d.metrics {
                r.extend(validate_metric(m).scoped(&format!("metrics.{name}")));
            }
            Ok(Outcome::report(r))
        }
        Command::Axioms { doc, bracket, trials, seed, twists, h, corrupt_bracket } => {
            let alg: Box<dyn Algebroid> = match (bracket, doc) {
                (BracketKind::Standard, None) => {
                    let a = StandardBracket::new(gencontact::FrameAlgebra::coordinate(3), Polyform::basis(3, &[1, 2, 3]))?;
                    Box::new(if corrupt_bracket { a.corrupted() } else { a })
                }
                (BracketKind::Standard, Some(p)) => {
                    let d = load(&p)?;
                    let h = match h {
                        Some(n) => named_form(&d, &n)?,
                        None => Polyform::zero(d.frame.dim()),
                    };
                    let a = StandardBracket::new(d.frame.clone(), h)?;
                    Box::new(if corrupt_bracket { a.corrupted() } else { a })
                }
                (BracketKind::Contact, None) => {
                    let (frame, _, tw) = gallery::heisenberg_contact();
                    let a = ContactBracket::new(frame, tw)?;
                    Box::new(if corrupt_bracket { a.corrupted() } else { a })
                }
                (BracketKind::Contact, Some(p)) => {
                    let d = load(&p)?;
                    let tw = d.twists_or_zero(twists.as_deref())?;
                    let a = ContactBracket::new(d.frame.clone(), tw)?;
                    Box::new(if corrupt_bracket { a.corrupted() } else { a })
                }
            };
            Ok(Outcome::report(check_courant_axioms(alg.as_ref(), trials, seed)))
        }
        Command::Involutivity { doc, pair, twists, degree_bound } => {
            let cap = max_degree()?;
            if degree_bound > cap {
                return Err(Error::Input(format!("degree bound {degree_bound} exceeds GC_MAX_DEGREE = {cap}")));
            }
            let d = load(&doc)?;
            let mp = d.pair(&pair)?;
            let tw = d.twists_or_zero(twists.as_deref())?;
            let mut r = Report::new();
            let witness = solve_involutive(&d.frame, &mp.pair(), &tw, degree_bound)?;
            r.push(match &witness {
                Some(_) => Check::pass("involutive.witness").with_notes(format!("degree ≤ {degree_bound}")),
                None => Check::fail("involutive.witness", None)
                    .with_notes(format!("no witness of polynomial degree ≤ {degree_bound}")),
            });
            if mp.phi.has_constant_coefficients() && mp.psi.has_constant_coefficients() {
                r.extend(check_annihilator_involutive(&d.frame, mp, &tw));
            } else {
                r.push(Check::skip("theorem", "annihilator identity needs constant coefficients"));
            }
            Ok(Outcome { result: witness.map(|w| json!({"witness": w.encode()})), report: r })
        }
        Command::Transform { doc, by, target } => {
            let d = load(&doc)?;
            let t = d.transform(&by)?.clone();
            transform_target(&d, &t, &target)
        }
        Command::Cokahler { doc, j1, j2, metric } => {
            let d = load(&doc)?;
            Ok(Outcome::report(check_cokahler(d.quadruple(&j1)?, d.quadruple(&j2)?, d.metric(&metric)?)))
        }
        Command::Einstein { doc, p1, p2 } => {
            let d = load(&doc)?;
            let c = check_einstein_pairing(&form_pair(&d, &p1)?, &form_pair(&d, &p2)?)?;
            let check = match &c {
                Some(c) => Check::pass("einstein.constant").with_notes(format!("c = {c}")),
                None => Check::fail("einstein.constant", None).with_notes("lengths are not related by a real constant"),
            };
            let mut r = Report::new();
            r.push(check);
            Ok(Outcome { result: Some(encode_einstein(&c)), report: r })
        }
        Command::Tdualize { doc, pair, twists, connection, dual_connection, j1, j2, metric } => {
            let d = load(&doc)?;
            let n = d.frame.dim();
            let pot = |name: Option<String>| match name {
                Some(x) => named_form(&d, &x),
                None => Ok(Polyform::zero(n)),
            };
            let data = CircleData::new(d.pair(&pair)?.clone(), d.twists_or_zero(twists.as_deref())?)
                .with_connections(pot(connection)?, pot(dual_connection)?);
            let dual = t_dualize_circle(&d.frame, &data)?;
            let mut r = check_t_duality(&d.frame, &data);
            let mut result = json!({"dual": dual.encode()});
            if let (Some(j1), Some(j2), Some(m)) = (j1, j2, metric) {
                let (q1, q2, m) = (d.quadruple(&j1)?, d.quadruple(&j2)?, d.metric(&m)?);
                let (d1, d2, md) = (dualize_quadruple(q1), dualize_quadruple(q2), dualize_metric(m)?);
                r.extend(check_cokahler(q1, q2, m).scoped("before"));
                r.extend(check_cokahler(&d1, &d2, &md).scoped("after"));
                r.extend(check_dual_conjugation(q1, q2, m));
                result["j1"] = d1.encode();
                result["j2"] = d2.encode();
                result["metric"] = md.encode();
            }
            Ok(Outcome { result: Some(result), report: r })
        }
        Command::Admissible { doc, h, fibers } => {
            let d = load(&doc)?;
            Ok(Outcome::report(check_admissible(&named_form(&d, &h)?, &fibers)))
        }
        Command::Cech { doc, data, expected, other } => {
            let d = load(&doc)?;
            let other = match other {
                Some(o) => Some(d.cech_datum(&o)?),
                None => None,
            };
            Ok(Outcome::report(validate_cech(&d.frame, d.cech_datum(&data)?, d.twist(&expected)?, other)))
        }
        Command::ParseNil { tuple } => {
            let f = parse_nil(&tuple, None)?;
            Ok(Outcome { result: Some(encode_frame(&f)), report: f.validate() })
        }
        Command::Oracle { doc, check, twists, trials, seed, quadruple, by } => {
            let d = doc.as_deref().map(load).transpose()?;
            match check {
                OracleKind::Bracket | OracleKind::Differential => {
                    let (frame, tw) = match &d {
                        Some(d) => (d.frame.clone(), d.twists_or_zero(twists.as_deref())?),
                        None => {
                            let (f, _, t) = gallery::heisenberg_contact();
                            (f, t)
                        }
                    };
                    Ok(Outcome::report(match check {
                        OracleKind::Bracket => check_bracket_oracle(&frame, &tw, trials, seed),
                        _ => check_differential_oracle_random(&frame, &tw, trials, seed),
                    }))
                }
                OracleKind::Sekiya => {
                    let d = d.ok_or_else(|| Error::Input("--check sekiya needs a document".into()))?;
                    let q = d.quadruple(quadruple.as_deref().ok_or_else(|| Error::Input("--quadruple is required".into()))?)?;
                    let t = d.transform(by.as_deref().ok_or_else(|| Error::Input("--by is required".into()))?)?;
                    Ok(Outcome::report(check_sekiya_transform(t, q)))
                }
            }
        }
    }
}

fn transform_target(d: &Document, t: &gencontact::structures::BbaTransform, target: &str) -> Result<Outcome, Error> {
    let mut kinds = Vec::new();
    if d.sections.contains_key(target) {
        kinds.push("section");
    }
    if d.pairs.contains_key(target) {
        kinds.push("pair");
    }
    if d.quadruples.contains_key(target) {
        kinds.push("quadruple");
    }
    if d.twists.contains_key(target) {
        kinds.push("twists");
    }
    if d.metrics.contains_key(target) {
        kinds.push("metric");
    }
    let mut r = Report::new();
    let result = match kinds.as_slice() {
        [] => return Err(Error::Input(format!("no section, pair, quadruple, twists or metric named '{target}'"))),
        ["section"] => {
            let s = d.section(target)?;
            let ts = transform_section(t, s);
            r.push(Check::vanishing("transform.pairing", &(&pairing_contact(&ts, &ts) - &pairing_contact(s, s))));
            json!({"section": ts.encode()})
        }
        ["pair"] => {
            let mp = d.pair(target)?;
            let p = mp.pair();
            let tp = transform_mixed_pair(t, &p);
            let before = mukai_mixed(&p, &conjugate_pair(&p))?;
            let after = mukai_mixed(&tp, &transform_mixed_pair(t, &conjugate_pair(&p)))?;
            r.push(Check::vanishing("transform.mukai", &(&after - &before)));
            let mut out = json!({"phi": tp.0.encode(), "psi": tp.1.encode()});
            if t.b.is_zero() && t.a.is_zero() {
                let mut m2 = mp.clone();
                (m2.phi, m2.psi) = tp;
                for e in [&mut m2.e1, &mut m2.e2] {
                    *e = transform_section(t, &e.to_contact()).gen_part();
                }
                r.extend(validate_mixed_pair(&m2, false).scoped("transform"));
                out = json!({"pair": m2.encode()});
            }
            out
        }
        ["quadruple"] => {
            let q = d.quadruple(target)?;
            // the printed deformation formulas are compared by `oracle --check sekiya`
            let mut checks = check_sekiya_transform(t, q);
            checks.checks.retain(|c| !c.name.starts_with("sekiya.literal"));
            r.extend(checks);
            json!({"quadruple": transform_sekiya(t, q)?.encode()})
        }
        ["twists"] => {
            let tw = transform_twists(&d.frame, t, d.twist(target)?)?;
            r.extend(validate_maurer_cartan(&d.frame, &tw).scoped("transform"));
            json!({"twists": tw.encode()})
        }
        ["metric"] => {
            let m = d.metric(target)?;
            let m2 = m.clone().with_transform(compose_transforms(t, &m.transform));
            r.extend(validate_metric(&m2).scoped("transform"));
            json!({"metric": m2.encode()})
        }
        several => {
            return Err(Error::Input(format!("'{target}' is ambiguous: names a {}", several.join(" and a "))));
        }
    };
    Ok(Outcome { result: Some(result), report: r })
}

fn emit(format: Format, out: &Outcome) {
    let report = out.report.clone().sorted();
    match format {
        Format::Json => {
            let mut v = report.to_json();
            if let Some(res) = &out.result {
                v["result"] = res.clone();
            }
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
        Format::Text => {
            if let Some(res) = &out.result {
                println!("{}", serde_json::to_string_pretty(res).expect("serializable"));
            }
            print!("{}", report.to_text());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            emit(cli.format, &out);
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
