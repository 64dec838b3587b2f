//! `rootstring` — construct abstract root systems, compute Phi-strings by
//! brute force, cross-check them against the closed-form catalog, and emit
//! string diagrams.
//!
//! Simple-root indices are 1-based on this surface, matching the usual
//! `alpha_1..alpha_n` diagram labels; exit status is 0 on success or
//! all-pass, nonzero otherwise with a diagnostic naming the first failure.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootstring::closedform::{
    classical_string_formula, classical_template, exceptional_string_fixture, pair_type,
    ClassicalFamily, ClassicalTag, ExceptionalFamily, FixtureTables, Labeling, StringFamily,
};
use rootstring::rootsys::{build_root_system, Root, RootSystem, RootSystemType};
use rootstring::stringgraph::{build_string_graph, emit_dot, graph_invariants};
use rootstring::strings::phi_string;
use rootstring::verify::{caps_from_env, verify_case, verify_catalog};

#[derive(Parser)]
#[command(
    name = "rootstring",
    about = "Exact Phi-strings in abstract root systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the positive roots of a system (text output is the debug dump
    /// format: one comma-separated coefficient row per root, sorted by
    /// level then lexicographically).
    Roots {
        /// System designator, e.g. A5, BC3, E8.
        #[arg(long = "type")]
        rtype: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the Phi-string of lambda, flag its minimum-level root, and
    /// classify the pair when phi is connected and lambda minimal.
    String {
        #[arg(long = "type")]
        rtype: String,
        /// Comma-separated 1-based simple indices (may be empty).
        #[arg(long, default_value = "")]
        phi: String,
        /// Comma-separated integer coefficients of lambda over the simple basis.
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check closed form against brute force: one case, or the whole
    /// classical-and-exceptional catalog with --all.
    Verify {
        #[arg(long = "type", required_unless_present = "all")]
        rtype: Option<String>,
        #[arg(long, default_value = "")]
        phi: String,
        #[arg(long, required_unless_present = "all")]
        lambda: Option<String>,
        /// Verify the full catalog (ROOTSTRING_MAX_RANK caps the ranks).
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit the oriented string diagram.
    Diagram {
        #[arg(long = "type")]
        rtype: String,
        #[arg(long, default_value = "")]
        phi: String,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Regenerate the classical member formulas (at a chosen n) and the
    /// exceptional member tables.
    Tables {
        /// Base rank for the classical families.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn fail(msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(1);
}

fn parse_system(spec: &str) -> RootSystem {
    let rtype: RootSystemType = match spec.parse() {
        Ok(t) => t,
        Err(e) => fail(e),
    };
    match build_root_system(rtype) {
        Ok(rs) => rs,
        Err(e) => fail(e),
    }
}

/// Parses 1-based comma-separated simple indices into 0-based ones.
fn parse_phi(s: &str, rank: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = tok
            .parse()
            .unwrap_or_else(|_| fail(format!("bad phi index `{tok}`")));
        if i < 1 || i > rank {
            fail(format!("phi index {i} out of range 1..={rank}"));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn parse_lambda(s: &str, rank: usize) -> Root {
    let coeffs: Vec<i64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .unwrap_or_else(|_| fail(format!("bad lambda coefficient `{t}`")))
        })
        .collect();
    if coeffs.len() != rank {
        fail(format!(
            "lambda has {} coefficients, the system has rank {rank}",
            coeffs.len()
        ));
    }
    Root::new(coeffs)
}

fn coeffs_json(r: &Root) -> Value {
    Value::Array(r.coeffs().iter().map(|&c| json!(c)).collect())
}

fn one_based(phi: &[usize]) -> Vec<usize> {
    phi.iter().map(|&i| i + 1).collect()
}

fn reject_dot(format: Format, what: &str) {
    if format == Format::Dot {
        fail(format!("dot output is only available for diagram, not {what}"));
    }
}

fn cmd_roots(rtype: &str, format: Format) {
    reject_dot(format, "roots");
    let rs = parse_system(rtype);
    match format {
        Format::Text => print!("{}", rs.dump_positives()),
        Format::Json => {
            let positives: Vec<Value> = rs
                .positives()
                .iter()
                .map(|r| {
                    json!({
                        "coeffs": coeffs_json(r),
                        "level": r.level(),
                        "norm2": rs.norm2(r).to_string(),
                    })
                })
                .collect();
            let out = json!({
                "type": rs.requested_type().to_string(),
                "canonical_type": rs.rtype().to_string(),
                "alias": rs.is_alias(),
                "rank": rs.rank(),
                "positive_count": rs.positives().len(),
                "positives": positives,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Dot => unreachable!(),
    }
}

/// Pair classification of the string's distinguished base, when phi is
/// connected and the base is of minimum level off the span of phi.
fn classify_for_output(
    rs: &RootSystem,
    phi: &[usize],
    s: &rootstring::StringSet,
) -> Option<(StringFamily, String, String)> {
    if s.is_subsystem_case() || phi.is_empty() || !rs.is_connected_subset(phi) {
        return None;
    }
    let base = s.minimum_level_root().ok()?;
    let cls = pair_type(rs, phi, base).ok()?;
    Some((
        cls.family,
        cls.descriptor.phi_type.to_string(),
        cls.descriptor.extended_type.to_string(),
    ))
}

fn cmd_string(rtype: &str, phi_s: &str, lambda_s: &str, format: Format) {
    reject_dot(format, "string");
    let rs = parse_system(rtype);
    let phi = parse_phi(phi_s, rs.rank());
    let lambda = parse_lambda(lambda_s, rs.rank());
    let s = match phi_string(&rs, &phi, &lambda) {
        Ok(s) => s,
        Err(e) => fail(e),
    };
    let minimum = s.minimum_level_root().ok().cloned();
    let pair = classify_for_output(&rs, &phi, &s);
    let members = s.members_sorted();
    match format {
        Format::Json => {
            let out = json!({
                "type": rs.requested_type().to_string(),
                "phi": one_based(&phi),
                "lambda": coeffs_json(&lambda),
                "subsystem_case": s.is_subsystem_case(),
                "minimum": minimum.as_ref().map(coeffs_json),
                "members": members.iter().map(coeffs_json).collect::<Vec<_>>(),
                "cardinality": s.cardinality(),
                "pair": pair.as_ref().map(|(_, pt, et)| json!({
                    "phi_type": pt,
                    "extended_type": et,
                })),
                "family": pair.as_ref().map(|(f, _, _)| f.to_string()),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            println!("type: {}", rs.requested_type());
            println!("phi: {:?}", one_based(&phi));
            println!("lambda: {lambda}");
            println!("subsystem case: {}", s.is_subsystem_case());
            match &minimum {
                Some(m) => println!("minimum: {m}"),
                None => println!("minimum: none (no distinguished base)"),
            }
            match &pair {
                Some((f, pt, et)) => println!("pair: ({pt}, {et})  family: {f}"),
                None => println!("pair: unclassified"),
            }
            println!("members ({}):", s.cardinality());
            for m in &members {
                println!("  {m}  level {}", m.level());
            }
        }
        Format::Dot => unreachable!(),
    }
}

fn cmd_verify(
    rtype: Option<&str>,
    phi_s: &str,
    lambda_s: Option<&str>,
    all: bool,
    format: Format,
) {
    reject_dot(format, "verify");
    let outcomes = if all {
        let (max_n, max_n_bc) = caps_from_env();
        verify_catalog(max_n, max_n_bc, FixtureTables::builtin())
    } else {
        let rs = parse_system(rtype.expect("clap enforces --type without --all"));
        let phi = parse_phi(phi_s, rs.rank());
        let lambda = parse_lambda(lambda_s.expect("clap enforces --lambda"), rs.rank());
        vec![verify_case(&rs, &phi, &lambda, FixtureTables::builtin())]
    };
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.pass).collect();
    match format {
        Format::Json => {
            let cases: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "pass": o.pass,
                        "count": o.count,
                        "detail": if o.detail.is_empty() { Value::Null } else { json!(o.detail) },
                    })
                })
                .collect();
            let out = json!({
                "cases": cases,
                "total": outcomes.len(),
                "failed": failed.len(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            for o in &outcomes {
                if o.pass {
                    match o.count {
                        Some(c) => println!("[PASS] {} ({c} members)", o.name),
                        None => println!("[PASS] {}", o.name),
                    }
                } else {
                    println!("[FAIL] {}: {}", o.name, o.detail);
                }
            }
            println!("{} case(s), {} failed", outcomes.len(), failed.len());
        }
        Format::Dot => unreachable!(),
    }
    if let Some(first) = failed.first() {
        fail(format!("first failing case: {}: {}", first.name, first.detail));
    }
}

fn cmd_diagram(rtype: &str, phi_s: &str, lambda_s: &str, format: Format) {
    let rs = parse_system(rtype);
    let phi = parse_phi(phi_s, rs.rank());
    let lambda = parse_lambda(lambda_s, rs.rank());
    let s = match phi_string(&rs, &phi, &lambda) {
        Ok(s) => s,
        Err(e) => fail(e),
    };
    let g = match build_string_graph(&rs, &s) {
        Ok(g) => g,
        Err(e) => fail(e),
    };
    let report = graph_invariants(&g);
    match format {
        Format::Dot => print!("{}", emit_dot(&g)),
        Format::Text => {
            println!("nodes ({}):", g.node_count());
            for n in g.nodes() {
                println!("  {n}");
            }
            println!("edges ({}):", g.edge_count());
            for &(f, t, l) in g.edges() {
                println!("  {} -> {}  [a{}]", g.nodes()[f], g.nodes()[t], l + 1);
            }
            println!(
                "invariants: {}",
                if report.pass { "pass" } else { "FAIL" }
            );
            for f in &report.failures {
                println!("  {f}");
            }
        }
        Format::Json => {
            let out = json!({
                "type": rs.requested_type().to_string(),
                "phi": one_based(&phi),
                "lambda": coeffs_json(&lambda),
                "nodes": g.nodes().iter().map(coeffs_json).collect::<Vec<_>>(),
                "edges": g.edges().iter()
                    .map(|&(f, t, l)| json!([f, t, l + 1]))
                    .collect::<Vec<_>>(),
                "invariants_pass": report.pass,
                "failures": report.failures,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    if !report.pass {
        fail("graph invariants failed");
    }
}

fn cmd_tables(n: usize, format: Format) {
    reject_dot(format, "tables");
    let mut classical: Vec<(String, Vec<Root>)> = Vec::new();
    for tag in ClassicalTag::all() {
        if n < tag.min_n() {
            continue;
        }
        // One representative extension per tag is enough for the member set;
        // the formula is shared across its extension variants.
        let ext = *tag_ext_for_tables(tag);
        let template = classical_template(tag, n, ext);
        let rs = build_root_system(template.ext).unwrap_or_else(|e| fail(e));
        let lambda = rs
            .simple_root(template.lambda_node)
            .unwrap_or_else(|e| fail(e));
        let fam = ClassicalFamily::new(tag, n).unwrap_or_else(|e| fail(e));
        let labeling = Labeling {
            lambda,
            alphas: template.alpha_nodes.clone(),
        };
        let s = classical_string_formula(&rs, fam, &labeling).unwrap_or_else(|e| fail(e));
        classical.push((format!("{fam}"), s.members_sorted()));
    }
    let exceptional: Vec<(String, Vec<Root>)> = ExceptionalFamily::all()
        .into_iter()
        .map(|f| {
            let s = exceptional_string_fixture(f);
            (f.to_string(), s.members_sorted())
        })
        .collect();
    match format {
        Format::Text => {
            println!("== classical member formulas at n={n} ==");
            for (name, members) in &classical {
                let list: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                println!("{name} [{}]: {}", members.len(), list.join(" "));
            }
            println!("== exceptional member tables ==");
            for (name, members) in &exceptional {
                let list: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                println!("{name} [{}]: {}", members.len(), list.join(" "));
            }
        }
        Format::Json => {
            let block = |v: &[(String, Vec<Root>)]| {
                v.iter()
                    .map(|(name, members)| {
                        json!({
                            "family": name,
                            "cardinality": members.len(),
                            "members": members.iter().map(coeffs_json).collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>()
            };
            let out = json!({
                "n": n,
                "classical": block(&classical),
                "exceptional": block(&exceptional),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Dot => unreachable!(),
    }
}

fn tag_ext_for_tables(tag: ClassicalTag) -> &'static rootstring::Family {
    match tag {
        ClassicalTag::AToABBc => &rootstring::Family::A,
        ClassicalTag::AToC | ClassicalTag::CToC => &rootstring::Family::C,
        ClassicalTag::AToD | ClassicalTag::DToD => &rootstring::Family::D,
        ClassicalTag::BBcToBBc => &rootstring::Family::B,
    }
}

fn main() {
    // Die quietly on a closed pipe instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Roots { rtype, format } => cmd_roots(&rtype, format),
        Command::String {
            rtype,
            phi,
            lambda,
            format,
        } => cmd_string(&rtype, &phi, &lambda, format),
        Command::Verify {
            rtype,
            phi,
            lambda,
            all,
            format,
        } => cmd_verify(rtype.as_deref(), &phi, lambda.as_deref(), all, format),
        Command::Diagram {
            rtype,
            phi,
            lambda,
            format,
        } => cmd_diagram(&rtype, &phi, &lambda, format),
        Command::Tables { n, format } => cmd_tables(n, format),
    }
}
