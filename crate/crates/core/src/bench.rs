//! Timing harness comparing the TPP test algorithms: runs the searches
//! (or standalone triple batches) with each algorithm plugged in,
//! accumulates per-algorithm runtimes across groups in ascending order,
//! and reports means, cumulative times, and ratios against the naive
//! baseline.
//!
//! Subgroup lattices are computed once per group outside the timed
//! region — the comparison isolates per-algorithm test work, not shared
//! setup that is identical across algorithms and cached in practice.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::search::{
    search_subgroups_with_lattice, search_subsets, SearchConfig, SearchReport,
};
use crate::spec::{build_group, GroupSpec};
use crate::subgroups::{all_subgroups_budgeted, Subgroup};
use crate::tpp::{is_tpp_budgeted, TestAlgorithm, TppTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMode {
    /// Time `search_subgroups` per algorithm (lattice precomputed).
    Subgroup,
    /// Time `search_subsets` per algorithm.
    Subset,
    /// Time a fixed batch of standalone subgroup-triple tests; all nine
    /// algorithms apply since subgroup triples are basic subset triples.
    TripleBatch,
}

impl BenchMode {
    pub fn baseline(self) -> TestAlgorithm {
        match self {
            BenchMode::Subgroup | BenchMode::TripleBatch => TestAlgorithm::NaiveGroup,
            BenchMode::Subset => TestAlgorithm::NaiveSubset,
        }
    }

    pub fn default_algorithms(self) -> Vec<TestAlgorithm> {
        match self {
            BenchMode::Subgroup => TestAlgorithm::GROUP.to_vec(),
            BenchMode::Subset => TestAlgorithm::SUBSET.to_vec(),
            BenchMode::TripleBatch => TestAlgorithm::ALL.to_vec(),
        }
    }

    fn applicable(self, algorithm: TestAlgorithm) -> bool {
        match self {
            BenchMode::Subgroup => algorithm.is_group_variant(),
            BenchMode::Subset => !algorithm.is_group_variant(),
            BenchMode::TripleBatch => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub groups: Vec<GroupSpec>,
    pub mode: BenchMode,
    pub algorithms: Vec<TestAlgorithm>,
    pub repetitions: u32,
    pub warmup: u32,
    /// Search configuration shared by every timed run; the algorithm field
    /// is overridden per cell and threads are forced to 1.
    pub config: SearchConfig,
}

impl BenchPlan {
    pub fn new(groups: Vec<GroupSpec>, mode: BenchMode) -> BenchPlan {
        BenchPlan {
            groups,
            mode,
            algorithms: mode.default_algorithms(),
            repetitions: 3,
            warmup: 1,
            config: SearchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchCell {
    pub group: String,
    pub order: u32,
    pub algorithm: TestAlgorithm,
    pub mean_seconds: f64,
    pub cumulative_seconds: f64,
    pub relative_to_baseline: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedGroup {
    pub group: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchResult {
    pub mode: BenchMode,
    pub baseline: TestAlgorithm,
    pub cells: Vec<BenchCell>,
    pub skipped: Vec<SkippedGroup>,
}

impl BenchResult {
    /// Final cumulative seconds for one algorithm (its last cell).
    pub fn total_seconds(&self, algorithm: TestAlgorithm) -> Option<f64> {
        self.cells
            .iter()
            .rev()
            .find(|c| c.algorithm == algorithm)
            .map(|c| c.cumulative_seconds)
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("group,order,algorithm,mean_seconds,cumulative_seconds,relative_to_baseline\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{:.9},{:.9},{:.6}\n",
                c.group, c.order, c.algorithm, c.mean_seconds, c.cumulative_seconds,
                c.relative_to_baseline
            ));
        }
        out
    }
}

/// Per-group work unit: what one timed repetition executes, plus the
/// verdict digest the correctness gate compares across algorithms.
enum GroupWork {
    Search(Vec<Subgroup>),
    SubsetSearch,
    Batch(Vec<TppTriple>),
}

impl GroupWork {
    fn run(
        &self,
        g: &FiniteGroup,
        config: &SearchConfig,
        algorithm: TestAlgorithm,
    ) -> Result<String> {
        match self {
            GroupWork::Search(lattice) => {
                let report = search_subgroups_with_lattice(g, lattice, config)?;
                Ok(digest(&report))
            }
            GroupWork::SubsetSearch => {
                let report = search_subsets(g, config)?;
                Ok(digest(&report))
            }
            GroupWork::Batch(triples) => {
                let mut verdicts = String::with_capacity(triples.len());
                for triple in triples {
                    let ok = is_tpp_budgeted(g, triple, algorithm, config.product_budget)?;
                    verdicts.push(if ok { '1' } else { '0' });
                }
                Ok(verdicts)
            }
        }
    }
}

fn digest(report: &SearchReport) -> String {
    format!("{} {:?}", report.best_product, report.sizes)
}

/// Every ordered proper-nontrivial-subgroup triple with pairwise trivial
/// intersections, scanned like the subgroup search (descending sizes).
/// These are exactly the triples a search would put through a TPP test,
/// minus the product gates.
fn subgroup_triple_batch(g: &FiniteGroup, lattice: &[Subgroup]) -> Vec<TppTriple> {
    let proper: Vec<&Subgroup> =
        lattice.iter().filter(|h| h.order > 1 && h.order < g.order()).collect();
    let mut batch = Vec::new();
    for i in (0..proper.len()).rev() {
        for j in (0..i).rev() {
            if proper[i].elements.intersection_len(&proper[j].elements) != 1 {
                continue;
            }
            for k in (0..j).rev() {
                if proper[j].elements.intersection_len(&proper[k].elements) != 1
                    || proper[i].elements.intersection_len(&proper[k].elements) != 1
                {
                    continue;
                }
                batch.push(TppTriple::new(
                    proper[i].elements.clone(),
                    proper[j].elements.clone(),
                    proper[k].elements.clone(),
                ));
            }
        }
    }
    batch
}

/// Runs the plan: groups ascending by (order, name); per group, a
/// correctness gate comparing every algorithm's result digest, then
/// warmup and timed repetitions per algorithm, all single-threaded and
/// serial. Groups that exceed a budget are skipped and flagged, never
/// dropped silently.
pub fn run_bench(plan: &BenchPlan) -> Result<BenchResult> {
    if plan.repetitions < 1 {
        return Err(Error::InvalidSpec("bench needs at least one repetition".into()));
    }
    if plan.groups.is_empty() {
        return Err(Error::InvalidSpec("bench needs at least one group".into()));
    }
    let baseline = plan.mode.baseline();
    if !plan.algorithms.contains(&baseline) {
        return Err(Error::InvalidSpec(format!(
            "bench algorithm list must include the baseline {baseline}"
        )));
    }
    for &alg in &plan.algorithms {
        if !plan.mode.applicable(alg) {
            return Err(Error::InvalidSpec(format!(
                "algorithm {alg} does not apply to {:?} mode",
                plan.mode
            )));
        }
    }

    let mut groups: Vec<FiniteGroup> = Vec::new();
    let mut skipped: Vec<SkippedGroup> = Vec::new();
    for spec in &plan.groups {
        match build_group(spec) {
            Ok(g) => groups.push(g),
            Err(e) => skipped.push(SkippedGroup {
                group: spec.name.clone(),
                reason: format!("build failed: {e}"),
            }),
        }
    }
    groups.sort_by(|a, b| (a.order(), a.name()).cmp(&(b.order(), b.name())));

    // One single-thread pool for the whole run: timed regions stay strictly
    // sequential without paying a pool construction inside each cell.
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
    let (cells, skipped) = pool.install(move || bench_cells(plan, &groups, skipped, baseline))?;
    Ok(BenchResult { mode: plan.mode, baseline, cells, skipped })
}

fn bench_cells(
    plan: &BenchPlan,
    groups: &[FiniteGroup],
    mut skipped: Vec<SkippedGroup>,
    baseline: TestAlgorithm,
) -> Result<(Vec<BenchCell>, Vec<SkippedGroup>)> {
    let mut cells: Vec<BenchCell> = Vec::new();
    let mut cumulative: Vec<f64> = vec![0.0; plan.algorithms.len()];
    'groups: for g in groups {
        let mut config = plan.config.clone();
        config.threads = None; // inherit the harness's single-thread pool
        let skip = |reason: String, skipped: &mut Vec<SkippedGroup>| {
            skipped.push(SkippedGroup { group: g.name().to_string(), reason });
        };
        let work = match plan.mode {
            BenchMode::Subgroup | BenchMode::TripleBatch => {
                match all_subgroups_budgeted(g, config.lattice_budget) {
                    Ok(lattice) => match plan.mode {
                        BenchMode::Subgroup => GroupWork::Search(lattice),
                        _ => GroupWork::Batch(subgroup_triple_batch(g, &lattice)),
                    },
                    Err(e @ Error::SubgroupBudgetExceeded { .. }) => {
                        skip(format!("budget: {e}"), &mut skipped);
                        continue 'groups;
                    }
                    Err(e) => return Err(e),
                }
            }
            BenchMode::Subset => GroupWork::SubsetSearch,
        };
        // Correctness gate: every algorithm must produce the same digest
        // before anything is timed.
        let mut gate: Option<String> = None;
        for &alg in &plan.algorithms {
            config.algorithm = Some(alg);
            let key = match work.run(g, &config, alg) {
                Ok(k) => k,
                Err(e @ (Error::OrderBudgetExceeded { .. }
                | Error::SubgroupBudgetExceeded { .. }
                | Error::ProductBudgetExceeded { .. })) => {
                    skip(format!("budget: {e}"), &mut skipped);
                    continue 'groups;
                }
                Err(e) => return Err(e),
            };
            match &gate {
                None => gate = Some(key),
                Some(prev) => {
                    if *prev != key {
                        return Err(Error::InvalidSpec(format!(
                            "correctness gate failed on {}: {alg} reported {key}, expected {prev}",
                            g.name()
                        )));
                    }
                }
            }
        }
        for (ai, &alg) in plan.algorithms.iter().enumerate() {
            config.algorithm = Some(alg);
            for _ in 0..plan.warmup {
                work.run(g, &config, alg)?;
            }
            let started = Instant::now();
            for _ in 0..plan.repetitions {
                work.run(g, &config, alg)?;
            }
            let mean = started.elapsed().as_secs_f64() / plan.repetitions as f64;
            cumulative[ai] += mean;
            cells.push(BenchCell {
                group: g.name().to_string(),
                order: g.order(),
                algorithm: alg,
                mean_seconds: mean,
                cumulative_seconds: cumulative[ai],
                relative_to_baseline: 0.0, // filled below
            });
        }
    }
    // Relative series: cumulative divided pointwise by the baseline's
    // cumulative at the same group.
    let baseline_cumulative: Vec<f64> = cells
        .iter()
        .filter(|c| c.algorithm == baseline)
        .map(|c| c.cumulative_seconds)
        .collect();
    let per_group = plan.algorithms.len();
    for (i, cell) in cells.iter_mut().enumerate() {
        let group_index = i / per_group;
        let base = baseline_cumulative[group_index];
        cell.relative_to_baseline = if base > 0.0 { cell.cumulative_seconds / base } else { 1.0 };
    }
    Ok((cells, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_shorthand;

    fn specs(tokens: &[&str]) -> Vec<GroupSpec> {
        tokens.iter().map(|t| parse_shorthand(t).unwrap()).collect()
    }

    #[test]
    fn single_cell_plan_times_positively() {
        let mut plan = BenchPlan::new(specs(&["S3"]), BenchMode::Subgroup);
        plan.algorithms = vec![TestAlgorithm::NaiveGroup];
        plan.repetitions = 1;
        plan.warmup = 0;
        let result = run_bench(&plan).unwrap();
        assert_eq!(result.cells.len(), 1);
        assert!(result.cells[0].mean_seconds > 0.0);
        assert_eq!(result.cells[0].relative_to_baseline, 1.0);
        assert!(result.skipped.is_empty());
    }

    #[test]
    fn plan_validation() {
        let mut plan = BenchPlan::new(specs(&["S3"]), BenchMode::Subgroup);
        plan.repetitions = 0;
        assert!(run_bench(&plan).is_err());

        let mut plan = BenchPlan::new(specs(&["S3"]), BenchMode::Subgroup);
        plan.algorithms = vec![TestAlgorithm::NaiveGroup, TestAlgorithm::MurthySubset];
        assert!(run_bench(&plan).is_err());

        let mut plan = BenchPlan::new(specs(&["S3"]), BenchMode::Subgroup);
        plan.algorithms = vec![TestAlgorithm::MurthyGroup]; // missing baseline
        assert!(run_bench(&plan).is_err());
    }

    #[test]
    fn cumulative_series_is_monotone_and_ordered() {
        let mut plan = BenchPlan::new(specs(&["D8", "S3", "D10"]), BenchMode::Subgroup);
        plan.algorithms = vec![TestAlgorithm::NaiveGroup, TestAlgorithm::MurthyGroup];
        plan.repetitions = 2;
        plan.warmup = 1;
        let result = run_bench(&plan).unwrap();
        assert_eq!(result.cells.len(), 6);
        // Rows grouped by ascending group order.
        let orders: Vec<u32> = result.cells.iter().map(|c| c.order).collect();
        assert_eq!(orders, [6, 6, 8, 8, 10, 10]);
        for alg in [TestAlgorithm::NaiveGroup, TestAlgorithm::MurthyGroup] {
            let series: Vec<f64> = result
                .cells
                .iter()
                .filter(|c| c.algorithm == alg)
                .map(|c| c.cumulative_seconds)
                .collect();
            assert!(series.windows(2).all(|w| w[0] <= w[1]), "{alg} not monotone");
        }
        // Baseline's relative series is identically 1.
        for c in result.cells.iter().filter(|c| c.algorithm == TestAlgorithm::NaiveGroup) {
            assert!((c.relative_to_baseline - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn triple_batch_mode_runs_all_nine() {
        let mut plan = BenchPlan::new(specs(&["D10", "A4"]), BenchMode::TripleBatch);
        plan.repetitions = 1;
        plan.warmup = 0;
        let result = run_bench(&plan).unwrap();
        assert_eq!(result.cells.len(), 18);
        assert_eq!(result.baseline, TestAlgorithm::NaiveGroup);
        assert!(result.skipped.is_empty());
    }

    #[test]
    fn over_budget_groups_are_flagged_not_dropped() {
        let mut plan = BenchPlan::new(specs(&["S3", "D30"]), BenchMode::Subset);
        plan.config.subset_order_budget = 24;
        plan.repetitions = 1;
        plan.warmup = 0;
        let result = run_bench(&plan).unwrap();
        assert_eq!(result.skipped.len(), 1);
        assert_eq!(result.skipped[0].group, "D30");
        assert!(result.skipped[0].reason.contains("budget"));
        // S3 cells still present for all four subset algorithms.
        assert_eq!(result.cells.len(), 4);
    }

    #[test]
    fn csv_shape() {
        let mut plan = BenchPlan::new(specs(&["S3"]), BenchMode::Subgroup);
        plan.algorithms = vec![TestAlgorithm::NaiveGroup];
        plan.repetitions = 1;
        plan.warmup = 0;
        let result = run_bench(&plan).unwrap();
        let csv = result.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "group,order,algorithm,mean_seconds,cumulative_seconds,relative_to_baseline"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("S3,6,naive-group,"));
        assert!(lines.next().is_none());
    }
}
