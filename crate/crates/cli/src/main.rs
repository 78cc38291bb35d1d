//! tpp: triple-product-property tests, capacity searches, algorithm
//! benchmarks, and capacity tables over small finite groups.
//!
//! Exit codes: 0 success (and true verdicts), 1 false verdict from
//! `test-triple`, 2 usage or validation errors, 3 budget/resource limits.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tpp_core::bench::{run_bench, BenchMode, BenchPlan};
use tpp_core::chars::{character_degrees_seeded, DEFAULT_DEGREE_SEED};
use tpp_core::error::{Error, Result};
use tpp_core::group::FiniteGroup;
use tpp_core::search::{search_subgroups, search_subsets, BoundBase, SearchConfig};
use tpp_core::sets::ElementSet;
use tpp_core::subgroups::all_subgroups;
use tpp_core::spec::{
    named_families, preset, preset_catalog, resolve_group, small_group_presets,
};
use tpp_core::tpp::{is_tpp, to_basic, TestAlgorithm, TppTriple};

#[derive(Parser)]
#[command(
    name = "tpp",
    version,
    about = "Triple product property tests and searches over small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group facts: order, conjugacy classes, character degrees
    Info(InfoArgs),
    /// Run TPP test algorithms on one (S, T, U) triple
    TestTriple(TestTripleArgs),
    /// Brute-force capacity searches over subgroups or subsets
    #[command(subcommand)]
    Search(SearchCommand),
    /// Compare the test algorithms' runtimes over the preset catalog
    Bench(BenchArgs),
    /// Capacity table (D3, beta, beta_g, size vectors) over many groups
    Table(TableArgs),
}

#[derive(Args)]
struct InfoArgs {
    /// Group to inspect: preset name, family shorthand (C12, D8, Q16, S5,
    /// A6, SL(2,3), PSL(2,7)), or a path to a JSON group spec
    #[arg(long, required_unless_present_any = ["families", "presets"])]
    group: Option<String>,
    /// List the named group families understood by shorthand and specs
    #[arg(long, conflicts_with = "group")]
    families: bool,
    /// List the built-in presets (name, annotation, order)
    #[arg(long, conflicts_with = "group")]
    presets: bool,
    /// Include the multiset of subgroup orders (computes the lattice)
    #[arg(long)]
    subgroup_orders: bool,
    /// Seed for the randomized character-degree computation
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TestTripleArgs {
    /// Group the triple lives in
    #[arg(long)]
    group: String,
    /// S as comma-separated element indices, e.g. 0,3,5 (0 is the identity)
    #[arg(long)]
    s: String,
    /// T as comma-separated element indices
    #[arg(long)]
    t: String,
    /// U as comma-separated element indices
    #[arg(long)]
    u: String,
    /// Algorithm name (e.g. murthy-subset, naive-group) or "all" for every
    /// applicable one
    #[arg(long, default_value = "all")]
    test: String,
    /// Write the JSON verdict here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Scan subgroup triples for the largest TPP product
    Subgroups(SearchArgs),
    /// Scan subset triples (identity-anchored) for the largest TPP product
    Subsets(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Group to search: preset, shorthand, or JSON spec path
    #[arg(long)]
    group: String,
    /// Bound the product comparison by |G| or by D3(G)
    #[arg(long, value_enum, default_value_t = BoundBaseArg::Order)]
    bound_base: BoundBaseArg,
    /// Test algorithm to plug in (defaults to the Murthy variant)
    #[arg(long)]
    test: Option<String>,
    /// Worker threads (default: rayon's global pool; env TPP_THREADS overrides)
    #[arg(long)]
    threads: Option<usize>,
    /// Consider all proper nontrivial subgroups, not just nonnormal ones
    #[arg(long)]
    no_nonnormal_filter: bool,
    /// Accept products equal to the bound, not only strictly above it
    #[arg(long)]
    non_strict: bool,
    /// Table-reproduction mode: shorthand for --non-strict --no-nonnormal-filter
    #[arg(long)]
    table_mode: bool,
    /// Give up after this many seconds (report flags exhaustive=false)
    #[arg(long)]
    time_budget_secs: Option<f64>,
    /// Seed for the character-degree computation (bound-base d3)
    #[arg(long)]
    seed: Option<u64>,
    /// Cap on |G| for subset searches
    #[arg(long)]
    subset_budget: Option<u32>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BoundBaseArg {
    Order,
    D3,
}

#[derive(Args)]
struct BenchArgs {
    /// What each timed repetition runs
    #[arg(long, value_enum)]
    mode: BenchModeArg,
    /// Include presets of order up to this (default 31 subgroup and
    /// triple-batch, 16 subset)
    #[arg(long)]
    max_order: Option<u32>,
    /// Timed repetitions per (group, algorithm) cell
    #[arg(long, default_value_t = 3)]
    reps: u32,
    /// Untimed warmup runs per cell
    #[arg(long, default_value_t = 1)]
    warmup: u32,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BenchModeArg {
    Subgroup,
    Subset,
    TripleBatch,
}

#[derive(Args)]
struct TableArgs {
    /// Include presets of order up to this
    #[arg(long, default_value_t = 24)]
    max_order: u32,
    /// Explicit comma-separated group tokens instead of the preset sweep
    #[arg(long)]
    groups: Option<String>,
    /// Run the subset search (beta column) only up to this order
    #[arg(long, default_value_t = 16)]
    subset_limit: u32,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Worker threads (default: rayon's global pool; env TPP_THREADS overrides)
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for the character-degree computation
    #[arg(long)]
    seed: Option<u64>,
    /// Write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ClosureBudgetExceeded { .. }
        | Error::SubgroupBudgetExceeded { .. }
        | Error::ProductBudgetExceeded { .. }
        | Error::OrderBudgetExceeded { .. }
        | Error::BinomialOverflow { .. }
        | Error::DegreeComputation { .. }
        | Error::Io(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Info(args) => cmd_info(args),
        Command::TestTriple(args) => cmd_test_triple(args),
        Command::Search(SearchCommand::Subgroups(args)) => cmd_search(args, true),
        Command::Search(SearchCommand::Subsets(args)) => cmd_search(args, false),
        Command::Bench(args) => cmd_bench(args),
        Command::Table(args) => cmd_table(args),
    }
}

/// CLI flag, then the TPP_THREADS environment variable, then the default.
fn thread_override(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var("TPP_THREADS").ok().and_then(|v| v.parse().ok()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(value)?)
}

// ----- info ------------------------------------------------------------------

#[derive(Serialize)]
struct DegreesOut {
    degrees: Vec<u32>,
    d1: u64,
    d2: u64,
    d3: u64,
}

#[derive(Serialize)]
struct InfoOut {
    name: String,
    order: u32,
    abelian: bool,
    conjugacy_classes: usize,
    character_degrees: DegreesOut,
    /// Ascending orders of all subgroups (only with --subgroup-orders).
    #[serde(skip_serializing_if = "Option::is_none")]
    subgroup_orders: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct PresetOut {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap_id_annotation: Option<[u32; 2]>,
    order: u32,
}

fn cmd_info(args: InfoArgs) -> Result<ExitCode> {
    if args.families || args.presets {
        let mut doc = serde_json::Map::new();
        if args.families {
            doc.insert("families".into(), serde_json::to_value(named_families())?);
        }
        if args.presets {
            let rows: Vec<PresetOut> = preset_catalog()
                .iter()
                .map(|e| PresetOut {
                    name: e.spec.name.clone(),
                    gap_id_annotation: e.gap_id,
                    order: e.expected_order,
                })
                .collect();
            doc.insert("presets".into(), serde_json::to_value(rows)?);
        }
        emit_json(&args.out, &doc)?;
        return Ok(ExitCode::SUCCESS);
    }
    let g = resolve_group(args.group.as_deref().expect("required by clap"))?;
    let degrees = character_degrees_seeded(&g, args.seed.unwrap_or(DEFAULT_DEGREE_SEED))?;
    let subgroup_orders = if args.subgroup_orders {
        let mut orders: Vec<u32> = all_subgroups(&g)?.iter().map(|h| h.order).collect();
        orders.sort_unstable();
        Some(orders)
    } else {
        None
    };
    let info = InfoOut {
        name: g.name().to_string(),
        order: g.order(),
        abelian: g.is_abelian(),
        conjugacy_classes: degrees.count(),
        character_degrees: DegreesOut {
            degrees: degrees.degrees.clone(),
            d1: degrees.d_r(1),
            d2: degrees.d_r(2),
            d3: degrees.d3(),
        },
        subgroup_orders,
    };
    emit_json(&args.out, &info)?;
    Ok(ExitCode::SUCCESS)
}

// ----- test-triple -----------------------------------------------------------

#[derive(Serialize)]
struct TestResultOut {
    algorithm: TestAlgorithm,
    verdict: bool,
    /// True when the triple was right-translated to a basic one first
    /// (murthy-subset needs that; verdicts are translation invariant).
    translated_to_basic: bool,
    wall_seconds: f64,
}

#[derive(Serialize)]
struct TestTripleOut {
    group: String,
    order: u32,
    s: Vec<u32>,
    t: Vec<u32>,
    u: Vec<u32>,
    sizes: (u32, u32, u32),
    product: u64,
    basic: bool,
    subgroups: bool,
    results: Vec<TestResultOut>,
    verdict: bool,
}

fn parse_indices(g: &FiniteGroup, role: &str, text: &str) -> Result<ElementSet> {
    let mut set = ElementSet::empty(g.order());
    for part in text.split(',') {
        let part = part.trim();
        let idx: u32 = part
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("{role}: bad element index '{part}'")))?;
        if idx >= g.order() {
            return Err(Error::InvalidSpec(format!(
                "{role}: index {idx} out of range for a group of order {}",
                g.order()
            )));
        }
        set.insert(idx);
    }
    if set.is_empty() {
        return Err(Error::EmptySet("test-triple"));
    }
    Ok(set)
}

fn cmd_test_triple(args: TestTripleArgs) -> Result<ExitCode> {
    let g = resolve_group(&args.group)?;
    let triple = TppTriple::new(
        parse_indices(&g, "S", &args.s)?,
        parse_indices(&g, "T", &args.t)?,
        parse_indices(&g, "U", &args.u)?,
    );
    let basic = triple.is_basic(g.identity());
    let subgroups = [&triple.s, &triple.t, &triple.u]
        .into_iter()
        .all(|set| g.is_subgroup_set(set));
    let algorithms: Vec<TestAlgorithm> = if args.test == "all" {
        let mut algs = TestAlgorithm::SUBSET.to_vec();
        if subgroups {
            algs.extend(TestAlgorithm::GROUP);
        }
        algs
    } else {
        vec![TestAlgorithm::parse(&args.test)?]
    };
    let basic_triple =
        if basic { None } else { Some(to_basic(&g, &triple)?) };
    let mut results = Vec::new();
    for alg in algorithms {
        // MurthySubset is defined on basic triples only; verdicts are
        // translation invariant, so test the translated triple instead.
        let translate = alg == TestAlgorithm::MurthySubset && !basic;
        let subject = if translate { basic_triple.as_ref().unwrap() } else { &triple };
        let started = Instant::now();
        let verdict = is_tpp(&g, subject, alg)?;
        results.push(TestResultOut {
            algorithm: alg,
            verdict,
            translated_to_basic: translate,
            wall_seconds: started.elapsed().as_secs_f64(),
        });
    }
    let verdict = results.iter().all(|r| r.verdict);
    let doc = TestTripleOut {
        group: g.name().to_string(),
        order: g.order(),
        s: triple.s.to_vec(),
        t: triple.t.to_vec(),
        u: triple.u.to_vec(),
        sizes: triple.sizes(),
        product: triple.product(),
        basic,
        subgroups,
        results,
        verdict,
    };
    emit_json(&args.out, &doc)?;
    Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ----- search ----------------------------------------------------------------

fn search_config(args: &SearchArgs) -> Result<SearchConfig> {
    let mut config =
        if args.table_mode { SearchConfig::table_mode() } else { SearchConfig::default() };
    if args.non_strict {
        config.strict = false;
    }
    if args.no_nonnormal_filter {
        config.nonnormal_filter = false;
    }
    config.bound_base = match args.bound_base {
        BoundBaseArg::Order => BoundBase::GroupOrder,
        BoundBaseArg::D3 => BoundBase::D3,
    };
    if let Some(name) = &args.test {
        config.algorithm = Some(TestAlgorithm::parse(name)?);
    }
    config.threads = thread_override(args.threads);
    config.time_budget = args.time_budget_secs.map(Duration::from_secs_f64);
    if let Some(seed) = args.seed {
        config.degree_seed = seed;
    }
    if let Some(budget) = args.subset_budget {
        config.subset_order_budget = budget;
    }
    Ok(config)
}

fn cmd_search(args: SearchArgs, subgroup_mode: bool) -> Result<ExitCode> {
    let g = resolve_group(&args.group)?;
    let config = search_config(&args)?;
    let report =
        if subgroup_mode { search_subgroups(&g, &config)? } else { search_subsets(&g, &config)? };
    emit_json(&args.out, &report)?;
    Ok(ExitCode::SUCCESS)
}

// ----- bench -----------------------------------------------------------------

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let mode = match args.mode {
        BenchModeArg::Subgroup => BenchMode::Subgroup,
        BenchModeArg::Subset => BenchMode::Subset,
        BenchModeArg::TripleBatch => BenchMode::TripleBatch,
    };
    let max_order = args.max_order.unwrap_or(match mode {
        BenchMode::Subset => 16,
        _ => 31,
    });
    let groups: Vec<_> = small_group_presets(max_order).iter().map(|e| e.spec.clone()).collect();
    let mut plan = BenchPlan::new(groups, mode);
    plan.repetitions = args.reps;
    plan.warmup = args.warmup;
    let result = run_bench(&plan)?;
    for s in &result.skipped {
        eprintln!("skipped {}: {}", s.group, s.reason);
    }
    emit(&args.out, result.to_csv().trim_end())?;
    Ok(ExitCode::SUCCESS)
}

// ----- table -----------------------------------------------------------------

#[derive(Serialize)]
struct Ratio {
    exact: String,
    approx: String,
}

impl Ratio {
    fn new(num: u64, den: u64) -> Ratio {
        let g = gcd(num, den);
        Ratio {
            exact: format!("{}/{}", num / g, den / g),
            approx: format!("{:.6}", num as f64 / den as f64),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a.max(1) } else { gcd(b, a % b) }
}

#[derive(Serialize)]
struct TableRow {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap_id_annotation: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d3: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_g: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_over_d3: Option<Ratio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_over_order: Option<Ratio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    differs: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn error_row(name: &str, gap_id: Option<[u32; 2]>, order: Option<u32>, e: &Error) -> TableRow {
    TableRow {
        name: name.to_string(),
        gap_id_annotation: gap_id,
        order,
        d3: None,
        beta: None,
        beta_g: None,
        beta_over_d3: None,
        beta_over_order: None,
        n: None,
        p: None,
        m: None,
        differs: None,
        error: Some(e.to_string()),
    }
}

fn table_row(
    g: &FiniteGroup,
    gap_id: Option<[u32; 2]>,
    args: &TableArgs,
) -> TableRow {
    let mut config = SearchConfig::table_mode();
    config.threads = thread_override(args.threads);
    if let Some(seed) = args.seed {
        config.degree_seed = seed;
    }
    let name = g.name().to_string();
    let d3 = match character_degrees_seeded(g, config.degree_seed) {
        Ok(deg) => deg.d3(),
        Err(e) => return error_row(&name, gap_id, Some(g.order()), &e),
    };
    let subgroup_report = match search_subgroups(g, &config) {
        Ok(r) => r,
        Err(e) => return error_row(&name, gap_id, Some(g.order()), &e),
    };
    let subset_report = if g.order() <= args.subset_limit {
        match search_subsets(g, &config) {
            Ok(r) => Some(r),
            Err(e) => return error_row(&name, gap_id, Some(g.order()), &e),
        }
    } else {
        None
    };
    let beta_g = subgroup_report.best_product;
    let beta = subset_report.as_ref().map(|r| r.best_product);
    // The vector and ratio columns follow beta when it was computed,
    // beta_g otherwise; ratios are recomputed from the integers here.
    let (value, sizes) = match &subset_report {
        Some(r) => (r.best_product, r.sizes),
        None => (beta_g, subgroup_report.sizes),
    };
    TableRow {
        name,
        gap_id_annotation: gap_id,
        order: Some(g.order()),
        d3: Some(d3),
        beta,
        beta_g: Some(beta_g),
        beta_over_d3: Some(Ratio::new(value, d3)),
        beta_over_order: Some(Ratio::new(value, g.order() as u64)),
        n: Some(sizes.0),
        p: Some(sizes.1),
        m: Some(sizes.2),
        differs: beta.map(|b| b != beta_g),
        error: None,
    }
}

const TABLE_CSV_HEADER: &str =
    "name,gap_id_annotation,order,d3,beta,beta_g,beta_over_d3,beta_over_order,n,p,m,differs,error";

fn table_csv(rows: &[TableRow]) -> String {
    fn cell<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map(|x| x.to_string()).unwrap_or_default()
    }
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let gap = r.gap_id_annotation.map(|[a, b]| format!("{a}-{b}")).unwrap_or_default();
        let row = [
            r.name.clone(),
            gap,
            cell(&r.order),
            cell(&r.d3),
            cell(&r.beta),
            cell(&r.beta_g),
            r.beta_over_d3.as_ref().map(|x| x.approx.clone()).unwrap_or_default(),
            r.beta_over_order.as_ref().map(|x| x.approx.clone()).unwrap_or_default(),
            cell(&r.n),
            cell(&r.p),
            cell(&r.m),
            cell(&r.differs),
            r.error.clone().unwrap_or_default().replace(',', ";"),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn cmd_table(args: TableArgs) -> Result<ExitCode> {
    // (sort key, row); built groups sort by (order, name), failures sink
    // to the end by name.
    let mut rows: Vec<((u32, String), TableRow)> = Vec::new();
    match &args.groups {
        Some(list) => {
            for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let gap_id = preset(token).and_then(|e| e.gap_id);
                match resolve_group(token) {
                    Ok(g) => {
                        let key = (g.order(), g.name().to_string());
                        rows.push((key, table_row(&g, gap_id, &args)));
                    }
                    Err(e) => rows.push((
                        (u32::MAX, token.to_string()),
                        error_row(token, gap_id, None, &e),
                    )),
                }
            }
        }
        None => {
            for entry in small_group_presets(args.max_order) {
                let name = entry.spec.name.clone();
                match tpp_core::spec::build_entry(entry) {
                    Ok(g) => {
                        let key = (g.order(), g.name().to_string());
                        rows.push((key, table_row(&g, entry.gap_id, &args)));
                    }
                    Err(e) => rows.push((
                        (entry.expected_order, name.clone()),
                        error_row(&name, entry.gap_id, Some(entry.expected_order), &e),
                    )),
                }
            }
        }
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let rows: Vec<TableRow> = rows.into_iter().map(|(_, r)| r).collect();
    match args.format {
        FormatArg::Json => emit_json(&args.out, &rows)?,
        FormatArg::Csv => emit(&args.out, table_csv(&rows).trim_end())?,
    }
    Ok(ExitCode::SUCCESS)
}
