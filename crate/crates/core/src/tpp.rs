//! The nine triple-product-property test algorithms.
//!
//! Four subset tests (naive list, triple loop, Orem, Murthy) and their
//! subgroup specializations (where Q(X) = X), plus the coset-overlap
//! subgroup test. Each variant does its own work — no shared shortcuts —
//! so the benchmark comparisons stay meaningful.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::sets::ElementSet;
use crate::subgroups::right_cosets_of_set;

/// Cap on materialized product-list entries for the naive variants.
pub const DEFAULT_PRODUCT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TppTriple {
    pub s: ElementSet,
    pub t: ElementSet,
    pub u: ElementSet,
}

impl TppTriple {
    pub fn new(s: ElementSet, t: ElementSet, u: ElementSet) -> TppTriple {
        TppTriple { s, t, u }
    }

    /// (|S|, |T|, |U|) in the triple's own order.
    pub fn sizes(&self) -> (u32, u32, u32) {
        (self.s.len(), self.t.len(), self.u.len())
    }

    /// Sizes sorted descending: n >= p >= m.
    pub fn sorted_sizes(&self) -> (u32, u32, u32) {
        let mut v = [self.s.len(), self.t.len(), self.u.len()];
        v.sort_unstable_by(|a, b| b.cmp(a));
        (v[0], v[1], v[2])
    }

    pub fn product(&self) -> u64 {
        self.s.len() as u64 * self.t.len() as u64 * self.u.len() as u64
    }

    pub fn is_basic(&self, identity: u32) -> bool {
        self.s.contains(identity) && self.t.contains(identity) && self.u.contains(identity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestAlgorithm {
    NaiveSubset,
    TripleLoopSubset,
    OremSubset,
    MurthySubset,
    NaiveGroup,
    TripleLoopGroup,
    OremGroup,
    MurthyGroup,
    MurthyHedtkeGroup,
}

impl TestAlgorithm {
    pub const ALL: [TestAlgorithm; 9] = [
        TestAlgorithm::NaiveSubset,
        TestAlgorithm::TripleLoopSubset,
        TestAlgorithm::OremSubset,
        TestAlgorithm::MurthySubset,
        TestAlgorithm::NaiveGroup,
        TestAlgorithm::TripleLoopGroup,
        TestAlgorithm::OremGroup,
        TestAlgorithm::MurthyGroup,
        TestAlgorithm::MurthyHedtkeGroup,
    ];

    pub const SUBSET: [TestAlgorithm; 4] = [
        TestAlgorithm::NaiveSubset,
        TestAlgorithm::TripleLoopSubset,
        TestAlgorithm::OremSubset,
        TestAlgorithm::MurthySubset,
    ];

    pub const GROUP: [TestAlgorithm; 5] = [
        TestAlgorithm::NaiveGroup,
        TestAlgorithm::TripleLoopGroup,
        TestAlgorithm::OremGroup,
        TestAlgorithm::MurthyGroup,
        TestAlgorithm::MurthyHedtkeGroup,
    ];

    pub fn is_group_variant(self) -> bool {
        matches!(
            self,
            TestAlgorithm::NaiveGroup
                | TestAlgorithm::TripleLoopGroup
                | TestAlgorithm::OremGroup
                | TestAlgorithm::MurthyGroup
                | TestAlgorithm::MurthyHedtkeGroup
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            TestAlgorithm::NaiveSubset => "naive-subset",
            TestAlgorithm::TripleLoopSubset => "triple-loop-subset",
            TestAlgorithm::OremSubset => "orem-subset",
            TestAlgorithm::MurthySubset => "murthy-subset",
            TestAlgorithm::NaiveGroup => "naive-group",
            TestAlgorithm::TripleLoopGroup => "triple-loop-group",
            TestAlgorithm::OremGroup => "orem-group",
            TestAlgorithm::MurthyGroup => "murthy-group",
            TestAlgorithm::MurthyHedtkeGroup => "murthy-hedtke-group",
        }
    }

    pub fn parse(text: &str) -> Result<TestAlgorithm> {
        let mut key: String =
            text.to_ascii_lowercase().chars().filter(|c| c.is_alphanumeric()).collect();
        // Accept a "grp" suffix as an alias for the group variants.
        if let Some(stripped) = key.strip_suffix("grp") {
            key = format!("{stripped}group");
        }
        for alg in TestAlgorithm::ALL {
            let canon: String = alg.name().chars().filter(|c| c.is_alphanumeric()).collect();
            if key == canon {
                return Ok(alg);
            }
        }
        Err(Error::InvalidSpec(format!("unknown test algorithm '{text}'")))
    }
}

impl std::fmt::Display for TestAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs the chosen TPP test after validating its preconditions:
/// nonempty sets over this group, subgroups for the group variants,
/// a basic triple for MurthySubset.
pub fn is_tpp(g: &FiniteGroup, triple: &TppTriple, algorithm: TestAlgorithm) -> Result<bool> {
    is_tpp_budgeted(g, triple, algorithm, DEFAULT_PRODUCT_BUDGET)
}

pub fn is_tpp_budgeted(
    g: &FiniteGroup,
    triple: &TppTriple,
    algorithm: TestAlgorithm,
    product_budget: u128,
) -> Result<bool> {
    let roles: [(&ElementSet, &'static str); 3] =
        [(&triple.s, "S"), (&triple.t, "T"), (&triple.u, "U")];
    for (set, role) in roles {
        if set.is_empty() {
            return Err(Error::EmptySet(role));
        }
        if set.universe() != g.order() {
            return Err(Error::InvalidSpec(format!(
                "set {role} lives over {} elements but the group has {}",
                set.universe(),
                g.order()
            )));
        }
    }
    if algorithm.is_group_variant() {
        for (set, role) in roles {
            if !g.is_subgroup_set(set) {
                return Err(Error::NotASubgroup { role });
            }
        }
    }
    if algorithm == TestAlgorithm::MurthySubset && !triple.is_basic(g.identity()) {
        return Err(Error::NotBasicTriple { role: "MurthySubset" });
    }
    is_tpp_unchecked(g, triple, algorithm, product_budget)
}

/// The raw tests, assuming preconditions hold. Used directly by the search
/// and benchmark loops, whose candidates are subgroups by construction.
pub(crate) fn is_tpp_unchecked(
    g: &FiniteGroup,
    triple: &TppTriple,
    algorithm: TestAlgorithm,
    product_budget: u128,
) -> Result<bool> {
    let (s, t, u) = (&triple.s, &triple.t, &triple.u);
    match algorithm {
        TestAlgorithm::NaiveSubset => {
            let qs = g.right_quotient(s)?;
            let qt = g.right_quotient(t)?;
            let qu = g.right_quotient(u)?;
            naive_list_test(g, &qs, &qt, &qu, product_budget)
        }
        TestAlgorithm::NaiveGroup => naive_list_test(g, s, t, u, product_budget),
        TestAlgorithm::TripleLoopSubset => {
            let qs = g.right_quotient(s)?;
            let qt = g.right_quotient(t)?;
            let qu = g.right_quotient(u)?;
            Ok(triple_loop_test(g, &qs, &qt, &qu))
        }
        TestAlgorithm::TripleLoopGroup => Ok(triple_loop_test(g, s, t, u)),
        TestAlgorithm::OremSubset => {
            let mut s_inv = ElementSet::empty(g.order());
            for x in s.iter() {
                s_inv.insert(g.inv(x));
            }
            let qt = g.right_quotient(t)?;
            orem_test(g, &s_inv, &qt, u)
        }
        TestAlgorithm::OremGroup => orem_test(g, s, t, u),
        TestAlgorithm::MurthySubset => {
            let qt = g.right_quotient(t)?;
            let qu = g.right_quotient(u)?;
            if qt.intersection_len(&qu) != 1 {
                return Ok(false);
            }
            let qs = g.right_quotient(s)?;
            let qtqu = g.set_product(&qt, &qu)?;
            Ok(qs.intersection_len(&qtqu) == 1)
        }
        TestAlgorithm::MurthyGroup => {
            if t.intersection_len(u) != 1 {
                return Ok(false);
            }
            let tu = g.set_product(t, u)?;
            Ok(s.intersection_len(&tu) == 1)
        }
        TestAlgorithm::MurthyHedtkeGroup => {
            if s.intersection_len(t) != 1 || s.intersection_len(u) != 1 {
                return Ok(false);
            }
            let cosets = right_cosets_of_set(g, s);
            for block in cosets.iter().skip(1) {
                if block.intersection_len(t) + block.intersection_len(u) > 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Builds the full product list a·b·c with multiplicity and counts how
/// often the identity occurs; TPP holds iff it occurs exactly once.
fn naive_list_test(
    g: &FiniteGroup,
    a: &ElementSet,
    b: &ElementSet,
    c: &ElementSet,
    product_budget: u128,
) -> Result<bool> {
    let entries = a.len() as u128 * b.len() as u128 * c.len() as u128;
    if entries > product_budget {
        return Err(Error::ProductBudgetExceeded { entries, budget: product_budget });
    }
    let mut list: Vec<u32> = Vec::with_capacity(entries as usize);
    for x in a.iter() {
        for y in b.iter() {
            let xy = g.mul(x, y);
            for z in c.iter() {
                list.push(g.mul(xy, z));
            }
        }
    }
    let ones = list.iter().filter(|&&p| p == g.identity()).count();
    Ok(ones == 1)
}

fn triple_loop_test(g: &FiniteGroup, a: &ElementSet, b: &ElementSet, c: &ElementSet) -> bool {
    let id = g.identity();
    for x in a.iter() {
        for y in b.iter() {
            let xy = g.mul(x, y);
            for z in c.iter() {
                if g.mul(xy, z) == id && !(x == id && y == id && z == id) {
                    return false;
                }
            }
        }
    }
    true
}

/// Orem's characterization: |A|·|U| = |A·U| and A·(M\1)·U disjoint from A·U,
/// where A is S^-1 (subset form) or S itself (subgroup form) and M is Q(T)
/// or T. An empty middle set leaves the second condition vacuously true.
fn orem_test(g: &FiniteGroup, a: &ElementSet, middle: &ElementSet, u: &ElementSet) -> Result<bool> {
    let au = g.set_product(a, u)?;
    if (a.len() as u64 * u.len() as u64) != au.len() as u64 {
        return Ok(false);
    }
    let mut m = middle.clone();
    m.remove(g.identity());
    if m.is_empty() {
        return Ok(true);
    }
    let am = g.set_product(a, &m)?;
    let amu = g.set_product(&am, u)?;
    Ok(amu.is_disjoint(&au))
}

/// Right-translates each set by the inverse of its minimal element so the
/// identity lands in all three (choosing d = 1, a = s0^-1, b = t0^-1,
/// c = u0^-1 in the translation freedom (dSa, dTb, dUc)).
pub fn to_basic(g: &FiniteGroup, triple: &TppTriple) -> Result<TppTriple> {
    let translate = |set: &ElementSet| -> Result<ElementSet> {
        let first = set.iter().next().ok_or(Error::EmptySet("to_basic"))?;
        let shift = g.inv(first);
        let mut out = ElementSet::empty(g.order());
        for x in set.iter() {
            out.insert(g.mul(x, shift));
        }
        Ok(out)
    };
    Ok(TppTriple::new(translate(&triple.s)?, translate(&triple.t)?, translate(&triple.u)?))
}

/// Fast necessary-condition screen: false means the triple provably fails
/// the TPP (size bound |S|+|T|+|U| <= |G|+2, or some pairwise right-quotient
/// intersection beyond the identity); true is inconclusive.
pub fn tpp_sanity_filters(g: &FiniteGroup, triple: &TppTriple) -> bool {
    let (s, t, u) = (&triple.s, &triple.t, &triple.u);
    if s.is_empty() || t.is_empty() || u.is_empty() {
        return false;
    }
    if s.len() as u64 + t.len() as u64 + u.len() as u64 > g.order() as u64 + 2 {
        return false;
    }
    let qs = g.right_quotient(s).expect("nonempty");
    let qt = g.right_quotient(t).expect("nonempty");
    let qu = g.right_quotient(u).expect("nonempty");
    qs.intersection_len(&qt) == 1 && qt.intersection_len(&qu) == 1 && qs.intersection_len(&qu) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dicyclic, dihedral, symmetric};
    use crate::subgroups::all_subgroups;
    use rand::prelude::*;
    use rand::rngs::StdRng;

    fn set(g: &FiniteGroup, xs: &[u32]) -> ElementSet {
        ElementSet::from_indices(g.order(), xs)
    }

    /// Definition-level oracle: no s in Q(S), t in Q(T), u in Q(U) with
    /// stu = 1 besides s = t = u = 1.
    fn tpp_by_definition(g: &FiniteGroup, triple: &TppTriple) -> bool {
        let qs = g.right_quotient(&triple.s).unwrap();
        let qt = g.right_quotient(&triple.t).unwrap();
        let qu = g.right_quotient(&triple.u).unwrap();
        for x in qs.iter() {
            for y in qt.iter() {
                for z in qu.iter() {
                    if g.mul(g.mul(x, y), z) == 0 && (x, y, z) != (0, 0, 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn trivial_triple_is_tpp_for_all_nine() {
        for g in [symmetric(3).unwrap(), dihedral(8).unwrap()] {
            let triple =
                TppTriple::new(ElementSet::full(g.order()), set(&g, &[0]), set(&g, &[0]));
            for alg in TestAlgorithm::ALL {
                assert!(is_tpp(&g, &triple, alg).unwrap(), "{alg} on {}", g.name());
            }
        }
    }

    #[test]
    fn involution_pair_fails_for_all_nine() {
        let g = dihedral(8).unwrap();
        let s = (1..g.order()).find(|&x| g.element_order(x) == 2).unwrap();
        let pair = set(&g, &[0, s]);
        let triple = TppTriple::new(pair.clone(), pair, set(&g, &[0]));
        for alg in TestAlgorithm::ALL {
            assert!(!is_tpp(&g, &triple, alg).unwrap(), "{alg}");
        }
    }

    #[test]
    fn d10_triple_from_the_size_twelve_witness() {
        // S = {1, s}, T = {d, s}, U = {1, sd, d^3} realizes sizes (2,2,3).
        let g = dihedral(10).unwrap();
        let d = g.generators()[0];
        let s = g.generators()[1];
        let sd = g.mul(s, d);
        let d3 = g.power(d, 3);
        let triple =
            TppTriple::new(set(&g, &[0, s]), set(&g, &[d, s]), set(&g, &[0, sd, d3]));
        assert_eq!(triple.product(), 12);
        assert!(tpp_by_definition(&g, &triple));
        for alg in [
            TestAlgorithm::NaiveSubset,
            TestAlgorithm::TripleLoopSubset,
            TestAlgorithm::OremSubset,
        ] {
            assert!(is_tpp(&g, &triple, alg).unwrap(), "{alg}");
        }
        // T does not contain the identity, so MurthySubset rejects it raw...
        assert!(matches!(
            is_tpp(&g, &triple, TestAlgorithm::MurthySubset),
            Err(Error::NotBasicTriple { .. })
        ));
        // ...and accepts (and verifies) the translated basic form.
        let basic = to_basic(&g, &triple).unwrap();
        assert!(basic.is_basic(0));
        assert_eq!(basic.sorted_sizes(), (3, 2, 2));
        assert!(is_tpp(&g, &basic, TestAlgorithm::MurthySubset).unwrap());
        assert!(tpp_sanity_filters(&g, &triple));
    }

    #[test]
    fn group_variants_reject_non_subgroups() {
        let g = dihedral(10).unwrap();
        let d = g.generators()[0];
        let not_subgroup = set(&g, &[0, d]); // d has order 5
        let ok = set(&g, &[0]);
        for alg in TestAlgorithm::GROUP {
            let r = is_tpp(&g, &TppTriple::new(not_subgroup.clone(), ok.clone(), ok.clone()), alg);
            assert!(matches!(r, Err(Error::NotASubgroup { role: "S" })), "{alg}");
        }
        // Subset variants are fine with it.
        for alg in [TestAlgorithm::NaiveSubset, TestAlgorithm::TripleLoopSubset, TestAlgorithm::OremSubset]
        {
            assert!(is_tpp(&g, &TppTriple::new(not_subgroup.clone(), ok.clone(), ok.clone()), alg).is_ok(), "{alg}");
        }
    }

    #[test]
    fn empty_set_is_an_error() {
        let g = symmetric(3).unwrap();
        let triple = TppTriple::new(ElementSet::empty(6), set(&g, &[0]), set(&g, &[0]));
        assert!(matches!(
            is_tpp(&g, &triple, TestAlgorithm::NaiveSubset),
            Err(Error::EmptySet("S"))
        ));
    }

    #[test]
    fn naive_budget_guard() {
        let g = symmetric(4).unwrap();
        let all = ElementSet::full(g.order());
        let triple = TppTriple::new(all.clone(), all.clone(), all);
        let r = is_tpp_budgeted(&g, &triple, TestAlgorithm::NaiveGroup, 1000);
        assert!(matches!(r, Err(Error::ProductBudgetExceeded { entries: 13824, budget: 1000 })));
    }

    #[test]
    fn all_group_variants_agree_on_every_subgroup_triple() {
        for g in [symmetric(3).unwrap(), dihedral(8).unwrap(), dicyclic(8).unwrap()] {
            let subs = all_subgroups(&g).unwrap();
            for a in &subs {
                for b in &subs {
                    for c in &subs {
                        let triple = TppTriple::new(
                            a.elements.clone(),
                            b.elements.clone(),
                            c.elements.clone(),
                        );
                        let expect = tpp_by_definition(&g, &triple);
                        for alg in TestAlgorithm::GROUP {
                            assert_eq!(
                                is_tpp(&g, &triple, alg).unwrap(),
                                expect,
                                "{alg} on {} sizes {:?}",
                                g.name(),
                                triple.sizes()
                            );
                        }
                    }
                }
            }
        }
    }

    fn random_subset(rng: &mut StdRng, n: u32, force_identity: bool) -> ElementSet {
        let size = rng.gen_range(1..=4.min(n));
        let mut out = ElementSet::empty(n);
        if force_identity {
            out.insert(0);
        }
        while out.len() < size {
            out.insert(rng.gen_range(0..n));
        }
        out
    }

    #[test]
    fn subset_variants_agree_on_random_basic_triples() {
        let mut rng = StdRng::seed_from_u64(0x7790_0001);
        for g in [symmetric(3).unwrap(), dihedral(8).unwrap(), dicyclic(12).unwrap()] {
            for _ in 0..500 {
                let triple = TppTriple::new(
                    random_subset(&mut rng, g.order(), true),
                    random_subset(&mut rng, g.order(), true),
                    random_subset(&mut rng, g.order(), true),
                );
                let expect = tpp_by_definition(&g, &triple);
                for alg in TestAlgorithm::SUBSET {
                    assert_eq!(is_tpp(&g, &triple, alg).unwrap(), expect, "{alg} on {}", g.name());
                }
            }
        }
    }

    #[test]
    fn subset_variants_agree_on_random_general_triples() {
        // Non-basic sets: Murthy is excluded (it demands basic input).
        let mut rng = StdRng::seed_from_u64(0x7790_0002);
        let g = dihedral(12).unwrap();
        for _ in 0..500 {
            let triple = TppTriple::new(
                random_subset(&mut rng, g.order(), false),
                random_subset(&mut rng, g.order(), false),
                random_subset(&mut rng, g.order(), false),
            );
            let expect = tpp_by_definition(&g, &triple);
            for alg in
                [TestAlgorithm::NaiveSubset, TestAlgorithm::TripleLoopSubset, TestAlgorithm::OremSubset]
            {
                assert_eq!(is_tpp(&g, &triple, alg).unwrap(), expect, "{alg}");
            }
        }
    }

    #[test]
    fn permutation_and_translation_symmetry_random() {
        let mut rng = StdRng::seed_from_u64(0x7790_0003);
        let g = dihedral(8).unwrap();
        for _ in 0..300 {
            let s = random_subset(&mut rng, g.order(), false);
            let t = random_subset(&mut rng, g.order(), false);
            let u = random_subset(&mut rng, g.order(), false);
            let base = tpp_by_definition(&g, &TppTriple::new(s.clone(), t.clone(), u.clone()));
            // Permutation symmetry.
            for (a, b, c) in [
                (&s, &u, &t),
                (&t, &s, &u),
                (&t, &u, &s),
                (&u, &s, &t),
                (&u, &t, &s),
            ] {
                let v = is_tpp(&g, &TppTriple::new(a.clone(), b.clone(), c.clone()), TestAlgorithm::TripleLoopSubset)
                    .unwrap();
                assert_eq!(v, base);
            }
            // Translation invariance: (dSa, dTb, dUc).
            let [dd, a, b, c] = [0; 4].map(|_| rng.gen_range(0..g.order()));
            let translate = |x: &ElementSet, right: u32| {
                let mut out = ElementSet::empty(g.order());
                for e in x.iter() {
                    out.insert(g.mul(g.mul(dd, e), right));
                }
                out
            };
            let moved = TppTriple::new(translate(&s, a), translate(&t, b), translate(&u, c));
            assert_eq!(is_tpp(&g, &moved, TestAlgorithm::OremSubset).unwrap(), base);
        }
    }

    #[test]
    fn basic_tpp_triple_has_trivial_pairwise_intersections() {
        let mut rng = StdRng::seed_from_u64(0x7790_0004);
        let g = dicyclic(8).unwrap();
        let mut hits = 0;
        for _ in 0..2000 {
            let triple = TppTriple::new(
                random_subset(&mut rng, g.order(), true),
                random_subset(&mut rng, g.order(), true),
                random_subset(&mut rng, g.order(), true),
            );
            if tpp_by_definition(&g, &triple) {
                hits += 1;
                assert_eq!(triple.s.intersection_len(&triple.t), 1);
                assert_eq!(triple.t.intersection_len(&triple.u), 1);
                assert_eq!(triple.s.intersection_len(&triple.u), 1);
            }
        }
        assert!(hits > 0, "sampler never found a TPP triple");
    }

    #[test]
    fn sanity_filters_reject_size_bound_violation() {
        let g = symmetric(3).unwrap();
        let all = ElementSet::full(g.order());
        // 6 + 6 + 6 = 18 > 6 + 2.
        let triple = TppTriple::new(all.clone(), all.clone(), all);
        assert!(!tpp_sanity_filters(&g, &triple));
        // (G, {1}, {1}) passes the screen (inconclusive true).
        let ok = TppTriple::new(
            ElementSet::full(g.order()),
            set(&g, &[0]),
            set(&g, &[0]),
        );
        assert!(tpp_sanity_filters(&g, &ok));
    }

    #[test]
    fn sanity_filters_reject_shared_involution_subgroup() {
        let g = dihedral(10).unwrap();
        let s = g.generators()[1];
        let sub = set(&g, &[0, s]);
        let triple = TppTriple::new(sub.clone(), sub.clone(), set(&g, &[0]));
        assert!(!tpp_sanity_filters(&g, &triple));
    }

    #[test]
    fn murthy_hedtke_on_trivial_s() {
        let g = symmetric(3).unwrap();
        let subs = all_subgroups(&g).unwrap();
        let t = &subs[1]; // order 2
        let u = subs.iter().filter(|h| h.order == 2).nth(1).unwrap();
        let triple = TppTriple::new(
            ElementSet::singleton(g.order(), 0),
            t.elements.clone(),
            u.elements.clone(),
        );
        for alg in TestAlgorithm::GROUP {
            assert!(is_tpp(&g, &triple, alg).unwrap(), "{alg}");
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in TestAlgorithm::ALL {
            assert_eq!(TestAlgorithm::parse(alg.name()).unwrap(), alg);
        }
        assert_eq!(TestAlgorithm::parse("MurthyGRP").unwrap(), TestAlgorithm::MurthyGroup);
        assert!(TestAlgorithm::parse("bogus").is_err());
    }
}
