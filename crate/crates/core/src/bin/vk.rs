use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use vknot::audit::{axiom_audit, move_invariance, AuditConfig, Sabotage, CLAUSE_NAMES};
use vknot::census::{write_census, CensusRecord, DEFAULT_CAP};
use vknot::generate::{random_flat, random_gauss, rng};
use vknot::indices::{carter_genus, flat_indices, index_polynomial, index_report, project};
use vknot::invariants::{
    dwrithe, flat_linking_number, flat_module_invariant, flat_writhe, lkn_polynomial,
    wp0_polynomial, writhe_polynomial, F_invariant, L_invariant, SmoothingMode, Weight,
};
use vknot::module::ModuleElement;
use vknot::moves::{
    canonical_code, equivalent, fingerprint, format_witness, simplify, Budget, Fingerprintable,
    Orientation, Verdict,
};
use vknot::smoothing::{smooth0, smooth0_flat, smooth1, smooth1_flat};
use vknot::{
    lattice_diagram, ChordDiagram, ChordId, Error, FlatDiagram, FlatLinkDiagram, GaussDiagram,
};

const EXIT_DISTINCT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "vk", version, about = "Chord indices and smoothing invariants of virtual knots")]
struct Cli {
    /// Search node limit per phase.
    #[arg(long, global = true, env = "VK_BUDGET_NODES")]
    budget_nodes: Option<usize>,
    /// Extra chords allowed above the best chord count during search.
    #[arg(long, global = true)]
    budget_extra: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Virtual,
    Flat,
    FlatLink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SabotageArg {
    SignFlip,
}

#[derive(Subcommand)]
enum Command {
    /// Print every invariant that applies to a diagram.
    Inv {
        #[arg(long, value_enum, default_value = "virtual")]
        kind: Kind,
        code: String,
    },
    /// Print a generated diagram.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Decide whether two diagrams represent the same class.
    Compare {
        #[arg(long, value_enum, default_value = "flat")]
        kind: Kind,
        /// Compare up to reversal of orientation.
        #[arg(long)]
        unoriented: bool,
        a: String,
        b: String,
    },
    /// Print the 0- and 1-smoothings at a chord.
    Smooth {
        #[arg(long, value_enum, default_value = "virtual")]
        kind: Kind,
        code: String,
        chord: u32,
    },
    /// Delete the chords whose index is not a multiple of `n`.
    Project { code: String, n: u64 },
    /// Reduce a diagram by a bounded move search.
    Simplify {
        #[arg(long, value_enum, default_value = "virtual")]
        kind: Kind,
        #[arg(long)]
        unoriented: bool,
        code: String,
    },
    /// Randomized chord index axiom audit and move-invariance suite.
    CheckAxioms {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 6)]
        max_chords: usize,
        #[arg(long, value_enum)]
        sabotage: Option<SabotageArg>,
    },
    /// Write records for all diagrams up to a chord count, one JSON per line.
    Census {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_chords: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The flat lattice diagram with p horizontal and q vertical chords.
    Lattice { p: usize, q: usize },
    /// A uniformly random diagram.
    Random {
        n: usize,
        seed: u64,
        #[arg(long)]
        flat: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

fn parse_failure(input: &str, e: Error) -> Failure {
    let message = match &e {
        Error::Parse(p) => format!("{e}\n  {input}\n  {}^", " ".repeat(p.pos)),
        _ => e.to_string(),
    };
    Failure { code: EXIT_INPUT, message }
}

fn gauss(code: &str) -> Result<GaussDiagram, Failure> {
    GaussDiagram::parse(code).map_err(|e| parse_failure(code, e))
}

fn flat(code: &str) -> Result<FlatDiagram, Failure> {
    FlatDiagram::parse(code).map_err(|e| parse_failure(code, e))
}

fn flat_link(code: &str) -> Result<FlatLinkDiagram, Failure> {
    FlatLinkDiagram::parse(code).map_err(|e| parse_failure(code, e))
}

fn module_text(e: &ModuleElement) -> String {
    if e.terms().all(|(k, _, _)| k.complete) {
        e.to_string()
    } else {
        format!("{e} (upper-bound form)")
    }
}

fn budget(cli: &Cli) -> Budget {
    let d = Budget::default();
    Budget::new(cli.budget_nodes.unwrap_or(d.max_nodes), cli.budget_extra.unwrap_or(d.max_extra))
}

fn print_lines(lines: &[(String, String)]) {
    for (k, v) in lines {
        println!("{k} = {v}");
    }
}

fn inv(cli: &Cli, kind: Kind, code: &str) -> Result<u8, Failure> {
    let b = budget(cli);
    match kind {
        Kind::Virtual => {
            let d = gauss(code)?;
            if cli.json {
                let rec = CensusRecord::new(&d, cli.seed, b)?;
                println!("{}", serde_json::to_string(&rec).expect("records serialize"));
                return Ok(0);
            }
            let mut lines = vec![
                ("code".into(), d.to_string()),
                ("canonical_code".into(), canonical_code(&d, Orientation::Oriented)),
                ("chords".into(), d.chord_count().to_string()),
                ("writhe".into(), d.writhe().to_string()),
            ];
            for (c, i) in index_report(&d).indices {
                lines.push((format!("ind({c})"), i.to_string()));
            }
            lines.push(("W".into(), writhe_polynomial(&d).to_string()));
            for n in 1..=3 {
                lines.push((format!("dwrithe_{n}"), dwrithe(&d, n)?.to_string()));
            }
            for n in 1..=2 {
                lines.push((format!("L^{n}"), lkn_polynomial(&d, n)?.to_string()));
            }
            lines.push(("wp0".into(), wp0_polynomial(&d).to_string()));
            lines.push(("carter_genus".into(), carter_genus(&d.shadow()).to_string()));
            lines.push(("F".into(), module_text(&F_invariant(&d, b)?)));
            lines.push(("L".into(), module_text(&L_invariant(&d, b)?)));
            print_lines(&lines);
        }
        Kind::Flat => {
            let f = flat(code)?;
            let fp = fingerprint(&f, Orientation::Oriented, b);
            let mut modules = Vec::new();
            for (name, w, m) in [
                ("F~", Weight::Sign, SmoothingMode::Knot),
                ("L~", Weight::Sign, SmoothingMode::Link),
                ("F~ind", Weight::Index, SmoothingMode::Knot),
                ("L~ind", Weight::Index, SmoothingMode::Link),
            ] {
                modules.push((name.to_string(), module_text(&flat_module_invariant(&f, w, m, b)?)));
            }
            let indices: Vec<(String, String)> = flat_indices(&f)
                .into_iter()
                .map(|(c, i)| (format!("ind({c})"), i.to_string()))
                .collect();
            if cli.json {
                let v = json!({
                    "code": f.to_string(),
                    "chords": f.chord_count(),
                    "flat_writhe": flat_writhe(&f),
                    "indices": indices.iter().map(|(_, v)| v.parse::<i64>().unwrap()).collect::<Vec<_>>(),
                    "P": index_polynomial(&f).to_string(),
                    "carter_genus": carter_genus(&f),
                    "reduced_code": fp.reduced_code,
                    "modules": modules.iter().cloned().collect::<std::collections::BTreeMap<_, _>>(),
                });
                println!("{v}");
                return Ok(0);
            }
            let mut lines = vec![
                ("code".into(), f.to_string()),
                ("chords".into(), f.chord_count().to_string()),
                ("flat_writhe".into(), flat_writhe(&f).to_string()),
            ];
            lines.extend(indices);
            lines.push(("P".into(), index_polynomial(&f).to_string()));
            lines.push(("carter_genus".into(), carter_genus(&f).to_string()));
            lines.push(("fingerprint".into(), fp.to_string()));
            lines.extend(modules);
            print_lines(&lines);
        }
        Kind::FlatLink => {
            let l = flat_link(code)?;
            let fp = fingerprint(&l, Orientation::Oriented, b);
            if cli.json {
                let v = json!({
                    "code": l.to_string(),
                    "chords": l.chord_count(),
                    "lk": flat_linking_number(&l),
                    "reduced_code": fp.reduced_code,
                });
                println!("{v}");
                return Ok(0);
            }
            print_lines(&[
                ("code".into(), l.to_string()),
                ("chords".into(), l.chord_count().to_string()),
                ("lk".into(), flat_linking_number(&l).to_string()),
                ("fingerprint".into(), fp.to_string()),
            ]);
        }
    }
    Ok(0)
}

fn report_verdict(cli: &Cli, v: Verdict) -> u8 {
    let (name, detail, code) = match &v {
        Verdict::Equal(w) => ("Equal", format_witness(w), 0),
        Verdict::Distinct(why) => ("Distinct", why.clone(), EXIT_DISTINCT),
        Verdict::Unknown => ("Unknown", String::new(), EXIT_UNKNOWN),
    };
    if cli.json {
        println!("{}", json!({ "verdict": name, "detail": detail }));
    } else {
        println!("{name}");
        if !detail.is_empty() {
            print!("{}", if detail.ends_with('\n') { detail } else { format!("{detail}\n") });
        }
    }
    code
}

fn compare_as<D: Fingerprintable>(cli: &Cli, a: &D, b: &D, mode: Orientation) -> u8 {
    report_verdict(cli, equivalent(a, b, mode, budget(cli)))
}

fn simplify_as<D: Fingerprintable>(cli: &Cli, d: &D, mode: Orientation) -> u8 {
    let s = simplify(d, budget(cli));
    let reduced = canonical_code(&s.diagram, mode);
    if cli.json {
        let v = json!({
            "reduced_code": reduced,
            "chords": s.diagram.chord_count(),
            "nodes": s.nodes,
            "complete": s.complete,
            "witness": format_witness(&s.path),
        });
        println!("{v}");
    } else {
        println!("reduced_code = {reduced}");
        println!("chords = {}", s.diagram.chord_count());
        println!("nodes = {}", s.nodes);
        println!("complete = {}", s.complete);
        print!("{}", format_witness(&s.path));
    }
    0
}

fn check_axioms(cli: &Cli, trials: u64, max_chords: usize, sabotage: Option<SabotageArg>) -> Result<u8, Failure> {
    let cfg = AuditConfig {
        max_chords,
        sabotage: match sabotage {
            Some(SabotageArg::SignFlip) => Sabotage::SignFlip,
            None => Sabotage::None,
        },
        ..AuditConfig::new(trials, cli.seed, budget(cli))
    };
    let axioms = axiom_audit(&cfg)?;
    let invariance = move_invariance(&cfg)?;
    if cli.json {
        println!("{}", json!({ "axioms": axioms, "invariance": invariance }));
    } else {
        println!("axiom audit: {} trials, seed {}", axioms.trials, axioms.seed);
        for (i, (st, name)) in axioms.clauses.iter().zip(CLAUSE_NAMES).enumerate() {
            println!(
                "  clause {}: {name}: trials {} knot {}/{} link {}/{} unresolved {}",
                i + 1,
                st.trials,
                st.knot_checks - st.knot_violations,
                st.knot_checks,
                st.link_checks - st.link_violations,
                st.link_checks,
                st.unresolved
            );
        }
        println!("move invariance: {} trials", invariance.trials);
        for (name, st) in &invariance.invariants {
            println!("  {name}: {} checks, {} violations", st.checks, st.violations);
        }
        println!("violations = {}", axioms.violations() + invariance.violations());
    }
    Ok(if axioms.violations() + invariance.violations() > 0 { EXIT_VIOLATION } else { 0 })
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Inv { kind, code } => inv(cli, *kind, code),
        Command::Gen { family } => {
            let code = match family {
                Family::Lattice { p, q } => canonical_code(&lattice_diagram(*p, *q)?, Orientation::Oriented),
                Family::Random { n, seed, flat } => {
                    let mut r = rng(*seed);
                    if *flat {
                        random_flat(*n, &mut r).to_string()
                    } else {
                        random_gauss(*n, &mut r).to_string()
                    }
                }
            };
            println!("{code}");
            Ok(0)
        }
        Command::Compare { kind, unoriented, a, b } => {
            let mode = if *unoriented { Orientation::Unoriented } else { Orientation::Oriented };
            Ok(match kind {
                Kind::Virtual => compare_as(cli, &gauss(a)?, &gauss(b)?, mode),
                Kind::Flat => compare_as(cli, &flat(a)?, &flat(b)?, mode),
                Kind::FlatLink => compare_as(cli, &flat_link(a)?, &flat_link(b)?, mode),
            })
        }
        Command::Smooth { kind, code, chord } => {
            let c = ChordId(*chord);
            let (zero, one) = match kind {
                Kind::Virtual => {
                    let d = gauss(code)?;
                    (smooth0(&d, c)?.to_string(), smooth1(&d, c)?.link.to_string())
                }
                Kind::Flat => {
                    let f = flat(code)?;
                    (smooth0_flat(&f, c)?.to_string(), smooth1_flat(&f, c)?.to_string())
                }
                Kind::FlatLink => {
                    return Err(Failure {
                        code: EXIT_INPUT,
                        message: "smoothing applies to knots, not links".into(),
                    })
                }
            };
            if cli.json {
                println!("{}", json!({ "zero": zero, "one": one }));
            } else {
                println!("0-smoothing = {zero}");
                println!("1-smoothing = {one}");
            }
            Ok(0)
        }
        Command::Project { code, n } => {
            println!("{}", project(&gauss(code)?, *n));
            Ok(0)
        }
        Command::Simplify { kind, unoriented, code } => {
            let mode = if *unoriented { Orientation::Unoriented } else { Orientation::Oriented };
            Ok(match kind {
                Kind::Virtual => simplify_as(cli, &gauss(code)?, mode),
                Kind::Flat => simplify_as(cli, &flat(code)?, mode),
                Kind::FlatLink => simplify_as(cli, &flat_link(code)?, mode),
            })
        }
        Command::CheckAxioms { trials, max_chords, sabotage } => {
            check_axioms(cli, *trials, *max_chords, *sabotage)
        }
        Command::Census { max_chords, out, cap } => {
            let s = write_census(out, *max_chords, *cap, cli.seed, budget(cli))?;
            if cli.json {
                println!("{}", serde_json::to_string(&s).expect("summaries serialize"));
            } else {
                println!("records = {}", s.records);
                println!("nonzero_W_records = {}", s.nonzero_w_records);
                println!("distinct_nonzero_W = {}", s.distinct_nonzero_w);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
