//! Command-line front end. [`run`] does all the work and returns the exit code
//! and output streams, so it can be driven directly from tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{CommandFactory, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    ab_class, analyze_12_sequence, find_negative_in_12_orbit, integer_fixed_points, is_cluster_cyclic,
    is_fixed_point, mk_class_matm, one_two_orbit, one_two_sequence_f64, AbClass, Certificate,
};
use crate::enumerate::{alternate_witness, enumerate_m1, format_table, surjectivity_witness};
use crate::error::{Error, Result};
use crate::matrices::{MatM, Triple};
use crate::orbits::{lift_to_matm, mu_orbit_search_acyclic, orbit_bfs, reduce_to_fundamental};
use crate::search::{
    SearchOptions, DEFAULT_DEPTH, DEFAULT_DESCENT_CAP, DEFAULT_ENTRY_BOUND, DEFAULT_NEGATIVE_SEARCH_CAP,
};
use crate::surd::Surd;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "markov-mutator", version, about = "Exact mutations of rank-3 skew-symmetrizable matrices")]
#[command(after_help = "Matrices are given as \"x y z / x' y' z'\" or as a row-major 3x3 JSON array.\n\
Setting MARKOV_MUTATOR_THREADS fixes the worker thread count.")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cyclicity, cluster-cyclicity certificate, Markov constant and (M1)/(A)/(B) data.
    Classify {
        matrix: String,
        /// Descent cap for the (A)/(B) classification of the triple.
        #[arg(long, default_value_t = DEFAULT_DESCENT_CAP)]
        cap: usize,
    },
    /// Reduce a cluster-cyclic matrix to its fundamental-domain representative.
    Reduce { matrix: String },
    /// Bounded γ-orbit enumeration, or with --mu a μ-word search for an acyclic matrix.
    Orbit {
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_ENTRY_BOUND)]
        entry_bound: u64,
        #[arg(long)]
        mu: bool,
    },
    /// All (M1) representatives with Markov constant C.
    Enumerate {
        #[arg(long, allow_negative_numbers = true)]
        markov: i64,
        /// Upper bound on p²; required for C = 4.
        #[arg(long)]
        p_square_cap: Option<u64>,
    },
    /// A triple with Markov constant C and its integer lift.
    Witness {
        #[arg(long, allow_negative_numbers = true)]
        markov: i64,
        /// Use the (√(9-n), √(9-n), 3) family.
        #[arg(long)]
        alternate: bool,
    },
    /// The seven positive integer fixed points of the γ action.
    FixedPoints,
    /// Integer matrix whose skew-symmetrized form is the given triple.
    Lift { triple: String },
    /// γ_1/γ_2 iterates of a triple against the Chebyshev closed form.
    Chebyshev {
        triple: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Search cap for the first negative term when r < 2.
        #[arg(long, default_value_t = DEFAULT_NEGATIVE_SEARCH_CAP)]
        cap: usize,
        /// Treat the triple as floating point and report the long-run behaviour.
        #[arg(long)]
        float: bool,
    },
    /// Classify every positive-cyclic matrix with entries at most N.
    Sweep {
        #[arg(long)]
        max_entry: i64,
        /// Cross-check each decision with a μ-word search of this depth.
        #[arg(long)]
        depth: Option<usize>,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_RESOURCE,
                    stdout: String::new(),
                    stderr: format!("{}\n{}", e.render(), Cli::command().render_help()),
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let code = if e.is_resource() { EXIT_RESOURCE } else { EXIT_DOMAIN };
            let stderr = if cli.json {
                let kind = if e.is_resource() { "resource" } else { "domain" };
                format!("{}\n", json!({ "error": e.to_string(), "kind": kind }))
            } else {
                format!("error: {e}\n")
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Classify { matrix, cap } => classify(&matrix.parse()?, *cap, cli.json),
        Command::Reduce { matrix } => {
            let r = reduce_to_fundamental(&matrix.parse()?)?;
            if cli.json {
                return Ok(to_json(&r));
            }
            Ok(format!(
                "representative: {}\npath: {}\nexplored: {}\ncertified minimal: {}\n",
                r.representative, r.path, r.explored, r.is_minimal_certified
            ))
        }
        Command::Orbit {
            matrix,
            depth,
            entry_bound,
            mu,
        } => {
            let m: MatM = matrix.parse()?;
            let opts = SearchOptions {
                depth: *depth,
                entry_bound: *entry_bound,
                cancel: None,
            };
            if *mu {
                let hit = mu_orbit_search_acyclic(&m, &opts)?;
                if cli.json {
                    return Ok(to_json(&json!({ "depth": depth, "hit": hit })));
                }
                return Ok(match hit {
                    Some(h) => format!("acyclic after mutation word {}: {}\n", h.path, h.matrix),
                    None => format!("no acyclic matrix within depth {depth}\n"),
                });
            }
            let o = orbit_bfs(&m, &opts)?;
            if cli.json {
                return Ok(to_json(&o));
            }
            let mut out = String::new();
            for g in &o.members {
                let _ = writeln!(out, "{g}");
            }
            let _ = writeln!(
                out,
                "{} members (depth {}, entry bound {}; pruned {} by bound, {} by overflow)",
                o.members.len(),
                o.depth,
                o.entry_bound,
                o.pruned_by_bound,
                o.pruned_by_overflow
            );
            Ok(out)
        }
        Command::Enumerate { markov, p_square_cap } => {
            let e = enumerate_m1(*markov, *p_square_cap)?;
            if cli.json {
                return Ok(to_json(&e.representatives));
            }
            Ok(format!(
                "{}{} representatives; R = {:.12}, R² <= {}; {} candidates visited\n",
                format_table(&e.representatives),
                e.representatives.len(),
                e.bound.r,
                e.bound.r_square_floor,
                e.visited
            ))
        }
        Command::Witness { markov, alternate } => {
            let w = if *alternate {
                alternate_witness(*markov)?
            } else {
                surjectivity_witness(*markov)?
            };
            if cli.json {
                return Ok(to_json(&w));
            }
            Ok(format!(
                "triple: ({})\nC = {}\nlift: {}\n",
                w.triple,
                w.triple.markov()?,
                w.lift
            ))
        }
        Command::FixedPoints => {
            let all = integer_fixed_points();
            if cli.json {
                return Ok(to_json(&all));
            }
            Ok(all.iter().map(|m| format!("{m}\n")).collect())
        }
        Command::Lift { triple } => {
            let s: Triple<Surd> = triple.parse()?;
            let m = lift_to_matm(&s)?;
            if cli.json {
                return Ok(to_json(&json!({ "triple": s, "lift": m })));
            }
            Ok(format!("{m}\n"))
        }
        Command::Chebyshev { triple, n, cap, float } => {
            if *float {
                chebyshev_float(&triple.parse()?, *n, cli.json)
            } else {
                chebyshev_exact(&triple.parse()?, *n, *cap, cli.json)
            }
        }
        Command::Sweep { max_entry, depth } => sweep(*max_entry, *depth, cli.json),
    }
}

fn classify(m: &MatM, cap: usize, json_out: bool) -> Result<String> {
    let cert = is_cluster_cyclic(m)?;
    let markov = m.markov_abs()?;
    let sk = m.sk()?;
    let positive = if m.is_positive() { Some(*m) } else if m.cyclicity() == crate::CyclicityClass::NegativeCyclic { Some(m.negate()?) } else { None };
    let mk = positive.map(|p| mk_class_matm(&p)).transpose()?;
    let ab = match (&cert, positive) {
        (Certificate::ClusterCyclic { .. }, Some(p)) => Some(ab_class(&p.sk()?, cap)?),
        _ => None,
    };
    let fixed = is_fixed_point(m);
    if json_out {
        return Ok(to_json(&json!({
            "matrix": m,
            "cyclicity": m.cyclicity(),
            "markov": markov,
            "markov_signed": m.markov()?,
            "products": m.column_products(),
            "certificate": cert,
            "fixed_point": fixed,
            "sk": sk,
            "mk_class": mk,
            "ab_class": ab,
            "descent_cap": cap,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "matrix: {m}");
    let _ = writeln!(out, "cyclicity: {}", m.cyclicity());
    let p = m.column_products();
    let _ = writeln!(out, "products: xx' = {}, yy' = {}, zz' = {}", p[0], p[1], p[2]);
    let _ = writeln!(out, "C = {markov}");
    match &cert {
        Certificate::ClusterCyclic { .. } => {
            let _ = writeln!(out, "cluster-cyclic");
        }
        Certificate::ClusterAcyclic { violated, witness_path } => {
            let _ = writeln!(out, "cluster-acyclic ({violated}); mutation word {witness_path}");
        }
    }
    let _ = writeln!(out, "fixed point: {}", if fixed { "yes" } else { "no" });
    let _ = writeln!(out, "sk: ({sk})");
    if let Some(mk) = mk {
        let _ = writeln!(out, "class: {mk}");
    }
    match ab {
        Some(AbClass::A { representative, path }) => {
            let _ = writeln!(out, "case (A): minimum ({representative}) via {path}");
        }
        Some(AbClass::B { steps, .. }) => {
            let _ = writeln!(out, "case (B) after {steps} steps");
        }
        None => {}
    }
    Ok(out)
}

fn chebyshev_exact(s: &Triple<Surd>, n: usize, cap: usize, json_out: bool) -> Result<String> {
    let orbit = one_two_orbit(s, n)?;
    let negative = if s.is_positive() && s.r() < Surd::integer(2) {
        Some(find_negative_in_12_orbit(s, cap)?)
    } else {
        None
    };
    if json_out {
        return Ok(to_json(&json!({
            "triple": s,
            "n": n,
            "f": orbit.f_values,
            "iterates": orbit.iterates,
            "first_negative": negative.map(|(k, v)| json!({ "n": k, "value": v })),
            "cap": cap,
        })));
    }
    let mut out = String::new();
    for (k, (f, it)) in orbit.f_values.iter().skip(1).zip(&orbit.iterates).enumerate() {
        let _ = writeln!(out, "n = {k:>3}  f = {f:<20} S = ({it})");
    }
    if let Some((k, v)) = negative {
        let _ = writeln!(out, "first negative term: f_{k} = {v}");
    }
    Ok(out)
}

fn chebyshev_float(s: &Triple<f64>, n: usize, json_out: bool) -> Result<String> {
    let behaviour = analyze_12_sequence(s).ok();
    let f = one_two_sequence_f64(s, n)?;
    if json_out {
        return Ok(to_json(&json!({ "triple": s, "n": n, "behavior": behaviour, "f": f })));
    }
    let mut out = String::new();
    if let Some(b) = behaviour {
        let _ = writeln!(out, "behaviour: {b:?}");
    }
    for (k, v) in f.iter().enumerate() {
        let _ = writeln!(out, "f_{} = {v:e}", k as i64 - 1);
    }
    Ok(out)
}

/// Every positive tuple with entries in `1..=n` obeying `xyz = x'y'z'`, sorted.
pub fn positive_matrices_up_to(n: i64) -> Vec<MatM> {
    let mut out = Vec::new();
    let range = 1..=n;
    for x in range.clone() {
        for y in range.clone() {
            for z in range.clone() {
                for xp in range.clone() {
                    for yp in range.clone() {
                        for zp in range.clone() {
                            if x * y * z == xp * yp * zp {
                                out.push(MatM::new([x, y, z], [xp, yp, zp]).expect("valid"));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn sweep(max_entry: i64, depth: Option<usize>, json_out: bool) -> Result<String> {
    use rayon::prelude::*;
    if !(1..=64).contains(&max_entry) {
        return Err(Error::Precondition(format!("--max-entry must be in 1..=64, got {max_entry}")));
    }
    let all = positive_matrices_up_to(max_entry);
    let results: Vec<Result<(bool, String, Option<bool>)>> = all
        .par_iter()
        .map(|m| {
            let cert = is_cluster_cyclic(m)?;
            let label = match &cert {
                Certificate::ClusterCyclic { .. } => "cluster_cyclic".to_string(),
                Certificate::ClusterAcyclic { violated, .. } => {
                    serde_json::to_value(violated).expect("label").as_str().unwrap_or("").to_string()
                }
            };
            let agrees = match depth {
                Some(d) => {
                    let found = mu_orbit_search_acyclic(m, &SearchOptions::with_depth(d))?.is_some();
                    Some(found != cert.is_cluster_cyclic())
                }
                None => None,
            };
            Ok((cert.is_cluster_cyclic(), label, agrees))
        })
        .collect();
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let (mut cyclic, mut disagreements) = (0, 0);
    for r in results {
        let (cc, label, agrees) = r?;
        cyclic += cc as usize;
        *tally.entry(label).or_default() += 1;
        if agrees == Some(false) {
            disagreements += 1;
        }
    }
    let report: Value = json!({
        "max_entry": max_entry,
        "matrices": all.len(),
        "cluster_cyclic": cyclic,
        "cluster_acyclic": all.len() - cyclic,
        "by_decision": tally,
        "verify_depth": depth,
        "disagreements": depth.map(|_| disagreements),
    });
    if json_out {
        return Ok(to_json(&report));
    }
    let mut out = format!(
        "{} positive-cyclic matrices with entries <= {max_entry}: {cyclic} cluster-cyclic, {} cluster-acyclic\n",
        all.len(),
        all.len() - cyclic
    );
    for (k, v) in &tally {
        let _ = writeln!(out, "  {k}: {v}");
    }
    if let Some(d) = depth {
        let _ = writeln!(out, "μ-search to depth {d}: {disagreements} disagreements");
    }
    Ok(out)
}
