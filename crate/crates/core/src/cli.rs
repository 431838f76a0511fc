//! Command-line front end.
//!
//! Exit codes: 0 affirmative, 1 negative mathematical outcome, 2 usage or
//! validation error, 3 internal inconsistency. Reports go to stdout,
//! diagnostics to stderr. With `--json` every report is a single JSON
//! document with sorted keys.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley::CayleyGraph;
use crate::construction::{inverse_closed_transversal, regular_set_connection, ConstructionOutcome, Infeasible};
use crate::equitable::{ab_from_mu, eigenvalue_membership, mu_from_quotient, quotient_matrix};
use crate::error::Error;
use crate::group::{build_group, ElementSet, GroupTable};
use crate::regular::{
    check_regular_set, check_subgroup_regular, condition1_holds, is_perfect_code, is_total_perfect_code,
    CertificateJson, Regularity,
};
use crate::search::{enumerate_regular_sets, feasible_ab_table, question1_probe, Budget};

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "regsets",
    version,
    about = "Regular sets, perfect codes and total perfect codes in Cayley graphs"
)]
struct Cli {
    /// Bound the number of worker threads used by searches.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify C as an (a,b)-regular set of Cay(G,S).
    Verify(VerifyArgs),
    /// Build S making a normal subgroup H an (a,b)-regular set.
    Construct(ConstructArgs),
    /// Find an inverse-closed left transversal of H.
    Transversal(SubgroupArgs),
    /// Check the involution condition for H.
    Condition1(SubgroupArgs),
    /// List all regular sets of Cay(G,S).
    Enumerate(EnumerateArgs),
    /// Exhaustive (a,b) feasibility table for a subgroup H.
    Feasible(FeasibleArgs),
    /// Quotient matrix of the partition {C, G \ C}.
    Quotient(VerifyArgs),
    /// Whether an integer is an eigenvalue of Cay(G,S).
    Eigcheck(EigcheckArgs),
    /// Compare the involution condition with perfect-code search on non-normal subgroups.
    #[command(name = "probe-q1")]
    ProbeQ1(ProbeArgs),
}

#[derive(Debug, Args)]
struct GroupArg {
    /// Group spec, e.g. cyclic:6, dihedral:5, genq:20, q8, product(cyclic:2,cyclic:4), perm:(1,2,3);(1,2), table:<path>.
    #[arg(long)]
    group: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Connection set S, comma-separated element names.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Candidate set C.
    #[arg(long, allow_hyphen_values = true)]
    subset: String,
    /// Include the edge list of the Cayley graph.
    #[arg(long)]
    edges: bool,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Generators of H; the generated subgroup is used.
    #[arg(long, allow_hyphen_values = true)]
    subgroup: String,
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    /// Include the edge list of the resulting Cayley graph.
    #[arg(long)]
    edges: bool,
}

#[derive(Debug, Args)]
struct SubgroupArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Generators of H; the generated subgroup is used.
    #[arg(long, allow_hyphen_values = true)]
    subgroup: String,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Only report sets with this a (requires --b).
    #[arg(long, requires = "b")]
    a: Option<usize>,
    #[arg(long, requires = "a")]
    b: Option<usize>,
    /// Largest group order for all-subsets enumeration.
    #[arg(long, default_value_t = crate::search::DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Debug, Args)]
struct FeasibleArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long, allow_hyphen_values = true)]
    subgroup: String,
    /// Candidate connection sets examined before giving up.
    #[arg(long, default_value_t = crate::search::DEFAULT_CANDIDATE_BUDGET)]
    max_candidates: u64,
}

#[derive(Debug, Args)]
struct EigcheckArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: i64,
}

#[derive(Debug, Args)]
struct ProbeArgs {
    /// Group spec; repeat for several groups.
    #[arg(long = "group", required = true)]
    groups: Vec<String>,
    #[arg(long, default_value_t = crate::search::DEFAULT_CANDIDATE_BUDGET)]
    max_candidates: u64,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    json: Value,
    text: String,
    code: i32,
}

/// Serializes with sorted keys and no floats, so output re-serializes byte-identically.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    serde_json::to_string_pretty(&v).expect("value serializes")
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_AFFIRMATIVE };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            } else {
                Output {
                    stdout: rendered,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    let json = cli.json;
    let result = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Error::OutOfRange(format!("cannot start {n} workers: {e}"))),
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(report) => Output {
            stdout: if json {
                canonical_json(&report.json) + "\n"
            } else {
                report.text
            },
            stderr: String::new(),
            code: report.code,
        },
        Err(e) => {
            let code = if matches!(e, Error::Internal(_)) {
                EXIT_INTERNAL
            } else {
                EXIT_USAGE
            };
            let stdout = if json {
                canonical_json(&json!({ "error": e.to_string() })) + "\n"
            } else {
                String::new()
            };
            Output {
                stdout,
                stderr: format!("error: {e}\n"),
                code,
            }
        }
    }
}

fn dispatch(command: Command) -> crate::Result<Report> {
    match command {
        Command::Verify(args) => verify(args),
        Command::Construct(args) => construct(args),
        Command::Transversal(args) => transversal(args),
        Command::Condition1(args) => condition1(args),
        Command::Enumerate(args) => enumerate(args),
        Command::Feasible(args) => feasible(args),
        Command::Quotient(args) => quotient(args),
        Command::Eigcheck(args) => eigcheck(args),
        Command::ProbeQ1(args) => probe(args),
    }
}

fn names(group: &GroupTable, set: &ElementSet) -> Vec<String> {
    group.set_names(set)
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn subgroup_from(group: &GroupTable, generators: &str) -> crate::Result<ElementSet> {
    let gens = group.parse_set(generators)?;
    Ok(group.generate_subgroup(&gens))
}

fn edge_list(graph: &CayleyGraph<'_>) -> Vec<[String; 2]> {
    let group = graph.group();
    graph
        .edges()
        .into_iter()
        .map(|(u, v)| [group.name(u).to_string(), group.name(v).to_string()])
        .collect()
}

fn verify(args: VerifyArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let graph = CayleyGraph::from_set(&group, group.parse_set(&args.set)?)?;
    let c = group.parse_set(&args.subset)?;
    let outcome = check_regular_set(&graph, &c)?;
    let cert = CertificateJson::new(&group, &outcome, c.len(), graph.degree());
    let perfect = is_perfect_code(&graph, &c)?;
    let total = outcome.ab() == Some((1, 1)) && is_total_perfect_code(&graph, &c)?;
    let mut json = json!({
        "command": "verify",
        "group": group.spec(),
        "S": names(&group, graph.connection().elems()),
        "C": names(&group, &c),
        "certificate": cert,
        "perfect_code": perfect,
        "total_perfect_code": total,
    });
    if args.edges {
        json["edges"] = json!(edge_list(&graph));
    }
    let (text, code) = match &outcome {
        Regularity::Regular(cert) => {
            let mut t = format!("regular: (a,b) = ({},{})\n", cert.a, cert.b);
            if perfect {
                t.push_str("perfect code\n");
            }
            if total {
                t.push_str("total perfect code\n");
            }
            (t, EXIT_AFFIRMATIVE)
        }
        Regularity::NotRegular(w) => (
            format!(
                "not regular: {} has {} neighbours in C, {} has {}\n",
                group.name(w.u),
                w.u_count,
                group.name(w.v),
                w.v_count
            ),
            EXIT_NEGATIVE,
        ),
    };
    let mut text = text;
    if args.edges {
        for [u, v] in edge_list(&graph) {
            let _ = writeln!(text, "{u} -- {v}");
        }
    }
    Ok(Report { json, text, code })
}

fn construct(args: ConstructArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let h = subgroup_from(&group, &args.subgroup)?;
    match regular_set_connection(&group, &h, args.a, args.b)? {
        ConstructionOutcome::Built(trace) => {
            let s = trace.connection().clone();
            // independent re-verification before anything is printed
            let checks = trace.check(&group);
            let by_subgroup = check_subgroup_regular(&group, &s, &h)?.ab();
            let graph = CayleyGraph::new(&group, s)?;
            let by_count = check_regular_set(&graph, &h)?.ab();
            let expected = Some((args.a, args.b));
            if !checks.all() || by_subgroup != expected || by_count != expected {
                return Err(Error::Internal(format!(
                    "construction for (a,b) = ({},{}) certified as {by_count:?} / {by_subgroup:?}",
                    args.a, args.b
                )));
            }
            let mut json = serde_json::to_value(trace.to_json(&group)).expect("trace serializes");
            json["command"] = json!("construct");
            json["group"] = json!(group.spec());
            json["certificate"] = json!({ "a": args.a, "b": args.b });
            if args.edges {
                json["edges"] = json!(edge_list(&graph));
            }
            let tj = trace.to_json(&group);
            let mut text = format!(
                "H = {}\nS0 = ({}) with m = {}\nK = {}\n",
                braces(&tj.subgroup),
                tj.s0.join(", "),
                tj.m,
                braces(&tj.k)
            );
            for (i, block) in tj.s_blocks.iter().enumerate() {
                let _ = writeln!(text, "S_{} = {}", i + 1, braces(block));
            }
            for block in &tj.t_blocks {
                let _ = writeln!(
                    text,
                    "T[{}] (alpha = {}, beta = {}) = {}",
                    block.rep,
                    block.alpha,
                    block.beta,
                    braces(&block.block)
                );
            }
            let _ = writeln!(text, "S = {} (|S| = {})", braces(&tj.s), tj.s.len());
            let _ = writeln!(text, "certified ({},{})", args.a, args.b);
            if args.edges {
                for [u, v] in edge_list(&graph) {
                    let _ = writeln!(text, "{u} -- {v}");
                }
            }
            Ok(Report {
                json,
                text,
                code: EXIT_AFFIRMATIVE,
            })
        }
        ConstructionOutcome::Infeasible(reason) => {
            let (why, witness) = match reason {
                Infeasible::NoTransversal { witness } => (
                    "no inverse-closed left transversal",
                    witness.map(|g| group.name(g).to_string()),
                ),
                Infeasible::OddSubset => ("|H| is odd and a is odd", None),
            };
            let json = json!({
                "command": "construct",
                "group": group.spec(),
                "H": names(&group, &h),
                "a": args.a,
                "b": args.b,
                "feasible": false,
                "reason": why,
                "witness": witness,
            });
            let mut text = format!("infeasible: {why}\n");
            if let Some(w) = &witness {
                let _ = writeln!(text, "witness g = {w}");
            }
            Ok(Report {
                json,
                text,
                code: EXIT_NEGATIVE,
            })
        }
    }
}

fn transversal(args: SubgroupArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let h = subgroup_from(&group, &args.subgroup)?;
    let found = inverse_closed_transversal(&group, &h)?;
    let s0 = found
        .as_ref()
        .map(|s0| s0.elems.iter().map(|&x| group.name(x).to_string()).collect::<Vec<_>>());
    let json = json!({
        "command": "transversal",
        "group": group.spec(),
        "H": names(&group, &h),
        "exists": found.is_some(),
        "S0": s0,
        "m": found.as_ref().map(|s0| s0.m),
    });
    Ok(match found {
        Some(t) => Report {
            text: format!("S0 = ({}) with m = {}\n", s0.unwrap_or_default().join(", "), t.m),
            json,
            code: EXIT_AFFIRMATIVE,
        },
        None => Report {
            json,
            text: "no inverse-closed left transversal\n".into(),
            code: EXIT_NEGATIVE,
        },
    })
}

fn condition1(args: SubgroupArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let h = subgroup_from(&group, &args.subgroup)?;
    let c1 = condition1_holds(&group, &h)?;
    let witness = c1.witness.map(|g| group.name(g).to_string());
    let json = json!({
        "command": "condition1",
        "group": group.spec(),
        "H": names(&group, &h),
        "normal": group.is_normal(&h)?,
        "holds": c1.holds,
        "witness": witness,
    });
    Ok(if c1.holds {
        Report {
            json,
            text: "condition holds\n".into(),
            code: EXIT_AFFIRMATIVE,
        }
    } else {
        let w = witness.unwrap_or_default();
        Report {
            json,
            text: format!("condition fails: g = {w} has g^2 in H but no h in H with (gh)^2 = e\n"),
            code: EXIT_NEGATIVE,
        }
    })
}

fn enumerate(args: EnumerateArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let graph = CayleyGraph::from_set(&group, group.parse_set(&args.set)?)?;
    let filter = args.a.zip(args.b);
    let found = enumerate_regular_sets(&graph, filter, args.cap)?;
    let sets: Vec<Value> = found
        .iter()
        .map(|(c, cert)| json!({ "C": names(&group, c), "a": cert.a, "b": cert.b }))
        .collect();
    let mut text = String::new();
    for (c, cert) in &found {
        let _ = writeln!(text, "({},{}) {}", cert.a, cert.b, braces(&names(&group, c)));
    }
    let _ = writeln!(text, "{} regular sets", found.len());
    let json = json!({
        "command": "enumerate",
        "group": group.spec(),
        "S": names(&group, graph.connection().elems()),
        "filter": filter.map(|(a, b)| json!({ "a": a, "b": b })),
        "sets": sets,
    });
    let code = if found.is_empty() {
        EXIT_NEGATIVE
    } else {
        EXIT_AFFIRMATIVE
    };
    Ok(Report { json, text, code })
}

fn feasible(args: FeasibleArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let h = subgroup_from(&group, &args.subgroup)?;
    let budget = Budget {
        max_candidates: args.max_candidates,
        ..Budget::default()
    };
    let table = feasible_ab_table(&group, &h, &budget)?;
    let mut json = serde_json::to_value(table.to_json(&group)).expect("table serializes");
    json["command"] = json!("feasible");
    json["group"] = json!(group.spec());
    json["complete"] = json!(table.complete);
    json["candidates_examined"] = json!(table.candidates_examined);
    let d = h.len();
    let mut text = format!(
        "H = {} ({}normal)\n",
        braces(&names(&group, &h)),
        if table.normal { "" } else { "not " }
    );
    let _ = writeln!(
        text,
        "a\\b {}",
        (0..=d).map(|b| format!("{b:>2}")).collect::<Vec<_>>().join(" ")
    );
    for a in 0..d {
        let row: Vec<String> = (0..=d)
            .map(|b| match table.cell(a, b).state {
                crate::search::CellState::Feasible(_) => " +".to_string(),
                crate::search::CellState::Infeasible => " .".to_string(),
                crate::search::CellState::Unknown => " ?".to_string(),
            })
            .collect();
        let _ = writeln!(text, "{a:>3} {}", row.join(" "));
    }
    if !table.complete {
        let _ = writeln!(
            text,
            "budget exhausted after {} candidates; ? cells unknown",
            table.candidates_examined
        );
    }
    Ok(Report {
        json,
        text,
        code: EXIT_AFFIRMATIVE,
    })
}

fn quotient(args: VerifyArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let graph = CayleyGraph::from_set(&group, group.parse_set(&args.set)?)?;
    let c = group.parse_set(&args.subset)?;
    let q = quotient_matrix(&graph, &c)?;
    let mut json = json!({
        "command": "quotient",
        "group": group.spec(),
        "S": names(&group, graph.connection().elems()),
        "C": names(&group, &c),
        "equitable": q.is_some(),
    });
    if args.edges {
        json["edges"] = json!(edge_list(&graph));
    }
    let Some(q) = q else {
        return Ok(Report {
            json,
            text: "not equitable\n".into(),
            code: EXIT_NEGATIVE,
        });
    };
    let mu = mu_from_quotient(&q);
    let (a, b) = ab_from_mu(q.degree, Ratio::from_integer(mu), c.len() as i64, group.order() as i64)?;
    json["matrix"] = json!(q.entries);
    json["degree"] = json!(q.degree);
    json["mu"] = json!(mu);
    json["ab_from_mu"] = json!([a, b]);
    let text = format!(
        "M = [[{}, {}], [{}, {}]], k = {}, mu = {mu}, (a,b) = ({a},{b})\n",
        q.entries[0][0], q.entries[0][1], q.entries[1][0], q.entries[1][1], q.degree
    );
    Ok(Report {
        json,
        text,
        code: EXIT_AFFIRMATIVE,
    })
}

fn eigcheck(args: EigcheckArgs) -> crate::Result<Report> {
    let group = build_group(&args.group.group)?;
    let graph = CayleyGraph::from_set(&group, group.parse_set(&args.set)?)?;
    let is_eigen = eigenvalue_membership(&graph, args.lambda);
    let json = json!({
        "command": "eigcheck",
        "group": group.spec(),
        "S": names(&group, graph.connection().elems()),
        "lambda": args.lambda,
        "eigenvalue": is_eigen,
    });
    let text = format!(
        "{} is {}an eigenvalue\n",
        args.lambda,
        if is_eigen { "" } else { "not " }
    );
    Ok(Report {
        json,
        text,
        code: if is_eigen { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE },
    })
}

fn probe(args: ProbeArgs) -> crate::Result<Report> {
    let budget = Budget {
        max_candidates: args.max_candidates,
        ..Budget::default()
    };
    let report = question1_probe(&args.groups, &budget)?;
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["command"] = json!("probe-q1");
    let mut text = String::new();
    for e in &report.entries {
        let pc = match e.perfect_code {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        };
        let _ = writeln!(
            text,
            "{} H = {}: condition {}, perfect code {pc}",
            e.group,
            braces(&e.subgroup),
            e.condition1
        );
    }
    for s in &report.skipped {
        let _ = writeln!(text, "skipped {s}");
    }
    let _ = writeln!(
        text,
        "{} non-normal subgroups checked, {} disagreements",
        report.entries.len(),
        report.disagreements.len()
    );
    let code = if report.disagreements.is_empty() {
        EXIT_AFFIRMATIVE
    } else {
        EXIT_NEGATIVE
    };
    Ok(Report { json, text, code })
}
