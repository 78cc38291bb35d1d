//! Brute-force searches for maximal TPP triples over subgroups and subsets,
//! plus the combinatorial support: exact binomials, lexicographic k-subset
//! unranking, and the candidate-size pruning counter.
//!
//! Parallel runs are bit-reproducible: work is split over the outermost
//! candidate index into blocks that are pure functions of their input, and
//! block results are merged in scan order under a pinned rule — a strictly
//! larger product wins, equal products keep the earlier find. That matches
//! the sequential semantics of the descending-lattice scan, where the
//! strict bound gate never lets an equal product overwrite. The subset
//! search preserves its sequential first-hit semantics by scanning
//! fixed-size rank chunks in waves and accepting the earliest hit in index
//! order.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{character_degrees_seeded, DEFAULT_DEGREE_SEED};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::sets::ElementSet;
use crate::subgroups::{all_subgroups_budgeted, Subgroup, DEFAULT_SUBGROUP_BUDGET};
use crate::tpp::{is_tpp_unchecked, TestAlgorithm, TppTriple, DEFAULT_PRODUCT_BUDGET};

// ----- exact combinatorics -------------------------------------------------

/// Exact binomial coefficient in u128, with an explicit overflow error.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::BinomialOverflow { n, k })?
            / (i as u128 + 1)
    }
    Ok(acc)
}

/// The `number_s`-th (1-based) `size_s`-subset of {1..order_g} in
/// lexicographic order, as sorted 1-based indices. Ranks
/// 1..C(order_g-1, size_s-1) are exactly the subsets containing 1.
pub fn generate_subset(order_g: u64, size_s: u64, number_s: u128) -> Result<Vec<u32>> {
    if size_s == 0 || size_s > order_g {
        return Err(Error::InvalidSpec(format!(
            "subset size {size_s} out of range for ground set {order_g}"
        )));
    }
    let total = binomial(order_g, size_s)?;
    if number_s == 0 || number_s > total {
        return Err(Error::RankOutOfRange { rank: number_s, count: total });
    }
    let mut out = Vec::with_capacity(size_s as usize);
    let mut r = number_s - 1; // 0-based rank among the remaining choices
    let mut v = 1u64; // smallest value still available
    let mut n = order_g;
    let mut k = size_s;
    while k > 0 {
        // Subsets starting with v among k-subsets of {v..order_g}.
        let with_v = binomial(n - 1, k - 1)?;
        if r < with_v {
            out.push(v as u32);
            n -= 1;
            k -= 1;
        } else {
            r -= with_v;
            n -= 1;
        }
        v += 1;
    }
    Ok(out)
}

/// In-place successor in lexicographic order over k-subsets of {lo..hi}
/// (inclusive bounds, 1-based values). Returns false after the last subset.
fn next_combination(combo: &mut [u32], hi: u32) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        let max_here = hi - (k - 1 - i) as u32;
        if combo[i] < max_here {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// ----- pruning counter -----------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PruneStages {
    /// |P|^3 over the distinct usable orders (sizes 2..|G|-1).
    pub raw: u64,
    /// After restricting to ordered triples a >= b >= c.
    pub ordered: u64,
    /// After requiring a*b*c > bound.
    pub after_product: u64,
    /// After Neumann's inequality a*(b + c - 1) <= |G|.
    pub after_neumann: u64,
}

/// Stage-by-stage candidate counts for size triples drawn from a list of
/// subgroup orders, reproducing the successive search-space reductions.
pub fn prune_count(subgroup_orders: &[u32], group_order: u64, bound: u64) -> PruneStages {
    let mut p: Vec<u64> = subgroup_orders
        .iter()
        .map(|&o| o as u64)
        .filter(|&o| o >= 2 && o < group_order)
        .collect();
    p.sort_unstable();
    p.dedup();
    let m = p.len() as u64;
    let raw = m * m * m;
    let mut ordered = 0u64;
    let mut after_product = 0u64;
    let mut after_neumann = 0u64;
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in p.iter().enumerate().take(i + 1) {
            for &c in p.iter().take(j + 1) {
                ordered += 1;
                if a * b * c > bound {
                    after_product += 1;
                    if a * (b + c - 1) <= group_order {
                        after_neumann += 1;
                    }
                }
            }
        }
    }
    PruneStages { raw, ordered, after_product, after_neumann }
}

// ----- configuration and report --------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundBase {
    /// Compare candidate products against |G| (capacity-finding mode).
    GroupOrder,
    /// Compare against D_3(G) (nontrivial-bound mode).
    D3,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub bound_base: BoundBase,
    /// Test algorithm; None picks MurthyGroup / MurthySubset per mode.
    pub algorithm: Option<TestAlgorithm>,
    /// Strict product gate (>) as in the search algorithm; false uses >= so
    /// witnesses with product exactly equal to the bound are reported too
    /// (table-reproduction mode).
    pub strict: bool,
    /// Restrict subgroup candidates to the nonnormal ones.
    pub nonnormal_filter: bool,
    pub threads: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Entry cap for the naive tests' materialized product list.
    pub product_budget: u128,
    /// |G| cap for subgroup-lattice enumeration.
    pub lattice_budget: u32,
    /// |G| cap for the subset search.
    pub subset_order_budget: u32,
    /// Seed for the character-degree computation when bound_base = D3.
    pub degree_seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            bound_base: BoundBase::GroupOrder,
            algorithm: None,
            strict: true,
            nonnormal_filter: true,
            threads: None,
            time_budget: None,
            product_budget: DEFAULT_PRODUCT_BUDGET,
            lattice_budget: DEFAULT_SUBGROUP_BUDGET,
            subset_order_budget: 24,
            degree_seed: DEFAULT_DEGREE_SEED,
        }
    }
}

impl SearchConfig {
    /// Table-reproduction mode: non-strict gate, no nonnormal filter.
    pub fn table_mode() -> SearchConfig {
        SearchConfig { strict: false, nonnormal_filter: false, ..SearchConfig::default() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PruneCounters {
    /// Candidate subgroups after filtering, or size triples in W.
    pub candidates: u64,
    pub nonnormal_excluded: u64,
    /// Outer candidates skipped by the cube-root lower cutoff.
    pub lower_cutoff_skips: u64,
    pub st_intersection_rejects: u64,
    pub neumann_rejects: u64,
    pub product_gate_breaks: u64,
    pub tu_su_intersection_rejects: u64,
    pub tests_run: u64,
    pub success_breaks: u64,
}

impl PruneCounters {
    fn add(&mut self, other: &PruneCounters) {
        self.candidates += other.candidates;
        self.nonnormal_excluded += other.nonnormal_excluded;
        self.lower_cutoff_skips += other.lower_cutoff_skips;
        self.st_intersection_rejects += other.st_intersection_rejects;
        self.neumann_rejects += other.neumann_rejects;
        self.product_gate_breaks += other.product_gate_breaks;
        self.tu_su_intersection_rejects += other.tu_su_intersection_rejects;
        self.tests_run += other.tests_run;
        self.success_breaks += other.success_breaks;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub s: Vec<u32>,
    pub t: Vec<u32>,
    pub u: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub group: String,
    pub order: u32,
    pub mode: &'static str,
    pub algorithm: TestAlgorithm,
    pub bound_base: BoundBase,
    pub bound_value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3: Option<u64>,
    pub best_product: u64,
    /// Realized sizes, descending: n >= p >= m.
    pub sizes: (u32, u32, u32),
    pub witness: Witness,
    /// False when the best triple is the trivial (G, {1}, {1}) fallback.
    pub nontrivial: bool,
    /// False when a time budget cut the scan short.
    pub exhaustive: bool,
    pub triples_tested: u64,
    pub pruning: PruneCounters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_stages: Option<PruneStages>,
    pub wall_seconds: f64,
}

impl SearchReport {
    pub fn witness_triple(&self, g: &FiniteGroup) -> TppTriple {
        TppTriple::new(
            ElementSet::from_indices(g.order(), &self.witness.s),
            ElementSet::from_indices(g.order(), &self.witness.t),
            ElementSet::from_indices(g.order(), &self.witness.u),
        )
    }
}

/// Smallest l with l^3 >= bound.
fn cube_root_ceil(bound: u64) -> u64 {
    let mut l = (bound as f64).cbrt().floor() as u64;
    while l.pow(3) < bound {
        l += 1;
    }
    while l > 1 && (l - 1).pow(3) >= bound {
        l -= 1;
    }
    l
}

// ----- candidate merging ----------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct Candidate {
    product: u64,
    sizes: (u32, u32, u32),
    s: Vec<u32>,
    t: Vec<u32>,
    u: Vec<u32>,
}

fn trivial_candidate(g: &FiniteGroup) -> Candidate {
    Candidate {
        product: g.order() as u64,
        sizes: (g.order(), 1, 1),
        s: (0..g.order()).collect(),
        t: vec![0],
        u: vec![0],
    }
}

fn bound_value(g: &FiniteGroup, config: &SearchConfig) -> Result<(u64, Option<u64>)> {
    match config.bound_base {
        BoundBase::GroupOrder => Ok((g.order() as u64, None)),
        BoundBase::D3 => {
            let d3 = character_degrees_seeded(g, config.degree_seed)?.d3();
            Ok((d3, Some(d3)))
        }
    }
}

fn run_in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn finish_report(
    g: &FiniteGroup,
    mode: &'static str,
    algorithm: TestAlgorithm,
    config: &SearchConfig,
    bound: u64,
    d3: Option<u64>,
    best: Candidate,
    nontrivial: bool,
    exhaustive: bool,
    pruning: PruneCounters,
    w_stages: Option<PruneStages>,
    started: Instant,
) -> SearchReport {
    SearchReport {
        group: g.name().to_string(),
        order: g.order(),
        mode,
        algorithm,
        bound_base: config.bound_base,
        bound_value: bound,
        d3,
        best_product: best.product,
        sizes: best.sizes,
        witness: Witness { s: best.s, t: best.t, u: best.u },
        nontrivial,
        exhaustive,
        triples_tested: pruning.tests_run,
        pruning,
        w_stages,
        wall_seconds: started.elapsed().as_secs_f64(),
    }
}

// ----- subgroup search -------------------------------------------------------

/// Exact subgroup TPP capacity with a witness, over the full subgroup
/// lattice (optionally restricted to nonnormal candidates).
pub fn search_subgroups(g: &FiniteGroup, config: &SearchConfig) -> Result<SearchReport> {
    if g.is_abelian() {
        return search_subgroups_with_lattice(g, &[], config);
    }
    let lattice = all_subgroups_budgeted(g, config.lattice_budget)?;
    search_subgroups_with_lattice(g, &lattice, config)
}

/// Subgroup search over a precomputed lattice, so callers that already
/// hold one (or time repeated searches) skip its recomputation.
pub fn search_subgroups_with_lattice(
    g: &FiniteGroup,
    lattice: &[Subgroup],
    config: &SearchConfig,
) -> Result<SearchReport> {
    let started = Instant::now();
    let algorithm = config.algorithm.unwrap_or(TestAlgorithm::MurthyGroup);
    if !algorithm.is_group_variant() {
        return Err(Error::InvalidSpec(format!(
            "subgroup search needs a subgroup test, got {algorithm}"
        )));
    }
    let (bound, d3) = bound_value(g, config)?;
    if g.is_abelian() {
        return Ok(finish_report(
            g,
            "subgroup",
            algorithm,
            config,
            bound,
            d3,
            trivial_candidate(g),
            false,
            true,
            PruneCounters::default(),
            None,
            started,
        ));
    }
    // Proper nontrivial subgroups only: sizes 1 and |G| can never improve
    // on the trivial triple. The nonnormal restriction is optional.
    let proper: Vec<&Subgroup> =
        lattice.iter().filter(|h| h.order > 1 && h.order < g.order()).collect();
    let total = proper.len() as u64;
    let candidates: Vec<&Subgroup> = if config.nonnormal_filter {
        proper.into_iter().filter(|h| !h.is_normal).collect()
    } else {
        proper
    };
    let mut counters = PruneCounters {
        candidates: candidates.len() as u64,
        nonnormal_excluded: total - candidates.len() as u64,
        ..PruneCounters::default()
    };
    let ell = cube_root_ceil(bound);
    let first_block = candidates.iter().position(|h| h.order as u64 >= ell).unwrap_or(candidates.len());
    counters.lower_cutoff_skips = first_block as u64;
    let deadline = config.time_budget.map(|d| started + d);

    let blocks: Vec<usize> = (first_block..candidates.len()).rev().collect();
    let results: Vec<Option<(Option<Candidate>, PruneCounters)>> = run_in_pool(config.threads, || {
        blocks
            .par_iter()
            .map(|&i| {
                if let Some(dl) = deadline {
                    if Instant::now() > dl {
                        return None;
                    }
                }
                Some(subgroup_block(g, &candidates, i, bound, config, algorithm))
            })
            .collect()
    })?;

    // Merge in block order (descending |S|): a strictly larger product
    // wins; equal products keep the earlier find, except that any real
    // find replaces the trivial initialization.
    let mut best = trivial_candidate(g);
    let mut nontrivial = false;
    let mut exhaustive = true;
    for r in results {
        match r {
            None => exhaustive = false,
            Some((cand, c)) => {
                counters.add(&c);
                if let Some(cand) = cand {
                    if cand.product > best.product
                        || (cand.product == best.product && !nontrivial)
                    {
                        best = cand;
                        nontrivial = true;
                    }
                }
            }
        }
    }
    Ok(finish_report(
        g, "subgroup", algorithm, config, bound, d3, best, nontrivial, exhaustive, counters,
        None, started,
    ))
}

/// One outer-loop block: S fixed to candidates[i], descending j > k inner
/// loops with the intersection, Neumann, and product gates. Pure function
/// of its inputs, so parallel scheduling cannot change its result.
fn subgroup_block(
    g: &FiniteGroup,
    candidates: &[&Subgroup],
    i: usize,
    bound: u64,
    config: &SearchConfig,
    algorithm: TestAlgorithm,
) -> (Option<Candidate>, PruneCounters) {
    let mut counters = PruneCounters::default();
    let mut best: Option<Candidate> = None;
    let mut n_max = bound;
    let s = candidates[i];
    let order_g = g.order() as u64;
    for j in (0..i).rev() {
        let t = candidates[j];
        if s.elements.intersection_len(&t.elements) != 1 {
            counters.st_intersection_rejects += 1;
            continue;
        }
        for k in (0..j).rev() {
            let u = candidates[k];
            if s.order as u64 * (t.order as u64 + u.order as u64 - 1) > order_g {
                counters.neumann_rejects += 1;
                continue;
            }
            let product = s.order as u64 * t.order as u64 * u.order as u64;
            let gate = if config.strict { product > n_max } else { product >= n_max };
            if !gate {
                // Everything further down the U loop is no larger.
                counters.product_gate_breaks += 1;
                break;
            }
            if t.elements.intersection_len(&u.elements) != 1
                || s.elements.intersection_len(&u.elements) != 1
            {
                counters.tu_su_intersection_rejects += 1;
                continue;
            }
            counters.tests_run += 1;
            let triple =
                TppTriple::new(s.elements.clone(), t.elements.clone(), u.elements.clone());
            if is_tpp_unchecked(g, &triple, algorithm, config.product_budget)
                .expect("subgroup candidates satisfy the test preconditions")
            {
                // Keep the first find at each product level; later equal
                // products never overwrite (mirrors the strict bound gate).
                if best.as_ref().is_none_or(|b| product > b.product) {
                    best = Some(Candidate {
                        product,
                        sizes: (s.order, t.order, u.order),
                        s: s.elements.to_vec(),
                        t: t.elements.to_vec(),
                        u: u.elements.to_vec(),
                    });
                }
                n_max = product;
                counters.success_breaks += 1;
                break;
            }
        }
    }
    (best, counters)
}

// ----- subset search ---------------------------------------------------------

/// Exact subset TPP capacity with a witness. Size triples are screened by
/// the ordering, product, cube-root, and Neumann observations, sorted by
/// decreasing product; subsets are enumerated identity-anchored by rank,
/// and the first verified triple in that order wins.
pub fn search_subsets(g: &FiniteGroup, config: &SearchConfig) -> Result<SearchReport> {
    let started = Instant::now();
    let algorithm = config.algorithm.unwrap_or(TestAlgorithm::MurthySubset);
    if algorithm.is_group_variant() {
        return Err(Error::InvalidSpec(format!(
            "subset search needs a subset test, got {algorithm}"
        )));
    }
    let n = g.order();
    if n > config.subset_order_budget {
        return Err(Error::OrderBudgetExceeded {
            order: n as usize,
            budget: config.subset_order_budget as usize,
        });
    }
    let (bound, d3) = bound_value(g, config)?;
    if g.is_abelian() {
        return Ok(finish_report(
            g,
            "subset",
            algorithm,
            config,
            bound,
            d3,
            trivial_candidate(g),
            false,
            true,
            PruneCounters::default(),
            None,
            started,
        ));
    }

    // Build W: ordered size triples passing every size-level observation.
    let nn = n as u64;
    let ell = cube_root_ceil(bound);
    let mut w_raw = 0u64;
    let mut w_ordered = 0u64;
    let mut w_after_product = 0u64;
    let mut w: Vec<(u32, u32, u32)> = Vec::new();
    if nn > 2 {
        let span = nn - 2;
        w_raw = span * span * span;
    }
    for a in 2..nn {
        for b in 2..=a {
            for c in 2..=b {
                w_ordered += 1;
                let product = a * b * c;
                let pass = if config.strict { product > bound } else { product >= bound };
                if !pass || a < ell {
                    continue;
                }
                w_after_product += 1;
                if a * (b + c - 1) <= nn {
                    w.push((a as u32, b as u32, c as u32));
                }
            }
        }
    }
    // Decreasing product; ties by ascending size vector for a pinned order.
    w.sort_by(|x, y| {
        let px = x.0 as u64 * x.1 as u64 * x.2 as u64;
        let py = y.0 as u64 * y.1 as u64 * y.2 as u64;
        py.cmp(&px).then(x.cmp(y))
    });
    let w_stages = PruneStages {
        raw: w_raw,
        ordered: w_ordered,
        after_product: w_after_product,
        after_neumann: w.len() as u64,
    };
    let mut counters = PruneCounters { candidates: w.len() as u64, ..PruneCounters::default() };
    let deadline = config.time_budget.map(|d| started + d);

    let scan = || -> Result<(Option<Candidate>, PruneCounters, bool)> {
        let mut scanned = PruneCounters::default();
        let mut best: Option<Candidate> = None;
        let mut exhaustive = true;
        'by_size: for &(a, b, c) in &w {
            let total_ranks = binomial(nn - 1, a as u64 - 1)?;
            let chunk = 64u128;
            let n_chunks = total_ranks.div_ceil(chunk);
            let wave = rayon::current_num_threads().max(1) as u128 * 4;
            let mut next_chunk = 0u128;
            while next_chunk < n_chunks {
                if let Some(dl) = deadline {
                    if Instant::now() > dl {
                        exhaustive = false;
                        break 'by_size;
                    }
                }
                let batch: Vec<u128> =
                    (next_chunk..(next_chunk + wave).min(n_chunks)).collect();
                next_chunk += batch.len() as u128;
                let results: Vec<(PruneCounters, Option<Candidate>)> = batch
                    .par_iter()
                    .map(|&ci| {
                        let lo = ci * chunk + 1;
                        let hi = ((ci + 1) * chunk).min(total_ranks);
                        subset_chunk(g, (a, b, c), lo, hi, algorithm, config)
                    })
                    .collect();
                // Accumulate counters in index order up to (and including)
                // the first chunk that found a hit: exactly the sequential
                // prefix, independent of parallel scheduling.
                for (c_local, cand) in results {
                    scanned.add(&c_local);
                    if let Some(cand) = cand {
                        best = Some(cand);
                        break 'by_size;
                    }
                }
            }
        }
        Ok((best, scanned, exhaustive))
    };
    let (best, scanned, exhaustive) = run_in_pool(config.threads, scan)??;
    counters.add(&scanned);

    let (best, nontrivial) = match best {
        Some(c) => (c, true),
        None => (trivial_candidate(g), false),
    };
    Ok(finish_report(
        g,
        "subset",
        algorithm,
        config,
        bound,
        d3,
        best,
        nontrivial,
        exhaustive,
        counters,
        Some(w_stages),
        started,
    ))
}

/// Evaluates S-ranks lo..=hi (1-based, identity-anchored) for one size
/// triple; stops at the first verified triple. Pure in its inputs.
fn subset_chunk(
    g: &FiniteGroup,
    (a, b, c): (u32, u32, u32),
    lo: u128,
    hi: u128,
    algorithm: TestAlgorithm,
    config: &SearchConfig,
) -> (PruneCounters, Option<Candidate>) {
    let mut counters = PruneCounters::default();
    let n = g.order();
    // S combos containing 1 are the first C(n-1, a-1) ranks in lex order;
    // unrank the first, then step with the successor.
    let mut s_combo = generate_subset(n as u64, a as u64, lo).expect("rank within range");
    debug_assert_eq!(s_combo[0], 1);
    let mut rank = lo;
    loop {
        let s_set = combo_to_set(n, &s_combo);
        if let Some(cand) = scan_t_u(g, &s_set, (a, b, c), algorithm, config, &mut counters) {
            return (counters, Some(cand));
        }
        rank += 1;
        if rank > hi {
            break;
        }
        if !next_combination(&mut s_combo, n) {
            break;
        }
    }
    (counters, None)
}

fn combo_to_set(n: u32, combo: &[u32]) -> ElementSet {
    let mut set = ElementSet::empty(n);
    for &v in combo {
        set.insert(v - 1);
    }
    set
}

/// Inner T and U loops for a fixed S, in identity-anchored rank order.
fn scan_t_u(
    g: &FiniteGroup,
    s_set: &ElementSet,
    (_a, b, c): (u32, u32, u32),
    algorithm: TestAlgorithm,
    config: &SearchConfig,
    counters: &mut PruneCounters,
) -> Option<Candidate> {
    let n = g.order();
    // T = {1} ∪ (b-1)-subset of {2..n}; same for U.
    let mut t_tail: Vec<u32> = (2..(2 + b - 1)).collect();
    loop {
        let mut t_set = combo_to_set(n, &t_tail);
        t_set.insert(0);
        if s_set.intersection_len(&t_set) != 1 {
            counters.st_intersection_rejects += 1;
        } else {
            let mut u_tail: Vec<u32> = (2..(2 + c - 1)).collect();
            loop {
                let mut u_set = combo_to_set(n, &u_tail);
                u_set.insert(0);
                if s_set.intersection_len(&u_set) != 1 || t_set.intersection_len(&u_set) != 1 {
                    counters.tu_su_intersection_rejects += 1;
                } else {
                    counters.tests_run += 1;
                    let triple = TppTriple::new(s_set.clone(), t_set.clone(), u_set.clone());
                    if is_tpp_unchecked(g, &triple, algorithm, config.product_budget)
                        .expect("basic subset triples satisfy the test preconditions")
                    {
                        return Some(Candidate {
                            product: triple.product(),
                            sizes: (s_set.len(), t_set.len(), u_set.len()),
                            s: s_set.to_vec(),
                            t: t_set.to_vec(),
                            u: u_set.to_vec(),
                        });
                    }
                }
                if c == 1 || !next_combination(&mut u_tail, n) {
                    break;
                }
            }
        }
        if b == 1 || !next_combination(&mut t_tail, n) {
            break;
        }
    }
    None
}
