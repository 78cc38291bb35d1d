//! Subgroup enumeration, normality, cosets, cores, and quotient groups.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::sets::ElementSet;

/// Default cap on |G| for full-lattice enumeration.
pub const DEFAULT_SUBGROUP_BUDGET: u32 = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: ElementSet,
    pub order: u32,
    pub is_normal: bool,
}

#[derive(Debug, Clone)]
pub struct CosetSpace {
    /// Right cosets Hg as element sets; the block containing the identity
    /// (H itself) comes first, the rest follow by minimal element.
    pub blocks: Vec<ElementSet>,
    /// Minimal element of each block.
    pub representatives: Vec<u32>,
}

/// Validates closure and identity membership, computes normality.
pub fn subgroup_from_set(g: &FiniteGroup, elements: &ElementSet) -> Result<Subgroup> {
    if !g.is_subgroup_set(elements) {
        return Err(Error::NotASubgroup { role: "input set" });
    }
    Ok(Subgroup {
        elements: elements.clone(),
        order: elements.len(),
        is_normal: is_normal_set(g, elements),
    })
}

fn is_normal_set(g: &FiniteGroup, h: &ElementSet) -> bool {
    // gHg^-1 = H for every generator implies normality under all of G.
    g.generators()
        .iter()
        .all(|&x| h.iter().all(|e| h.contains(g.conjugate(x, e))))
}

/// All subgroups of G, ascending by order, ties broken by lexicographic
/// comparison of sorted element lists. Enumerated as the join-closure of
/// the cyclic subgroups.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_budgeted(g, DEFAULT_SUBGROUP_BUDGET)
}

pub fn all_subgroups_budgeted(g: &FiniteGroup, budget: u32) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > budget {
        return Err(Error::SubgroupBudgetExceeded {
            order: n as usize,
            budget: budget as usize,
        });
    }
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut list: Vec<ElementSet> = Vec::new();
    let trivial = ElementSet::singleton(n, g.identity());
    seen.insert(trivial.clone());
    list.push(trivial);
    // Cyclic subgroups from element powers, one witness generator each.
    let mut cyclic: Vec<(ElementSet, u32)> = Vec::new();
    for x in 1..n {
        let set = g.generated_subgroup_set(&[x]);
        if seen.insert(set.clone()) {
            list.push(set.clone());
            cyclic.push((set, x));
        }
    }
    // Iterated joins to a fixed point.
    let mut head = 0;
    while head < list.len() {
        let base = list[head].clone();
        head += 1;
        if base.len() == n {
            continue;
        }
        for (c, x) in &cyclic {
            if c.is_subset_of(&base) {
                continue;
            }
            let mut seeds = base.to_vec();
            seeds.push(*x);
            let join = g.generated_subgroup_set(&seeds);
            if seen.insert(join.clone()) {
                list.push(join);
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = list
        .into_iter()
        .map(|set| {
            assert_eq!(n % set.len(), 0, "Lagrange violated: bug in closure");
            Subgroup { order: set.len(), is_normal: is_normal_set(g, &set), elements: set }
        })
        .collect();
    subgroups.sort_by(|a, b| a.order.cmp(&b.order).then(a.elements.cmp_elements(&b.elements)));
    Ok(subgroups)
}

/// The non-normal entries of `all_subgroups`, in the same order.
pub fn nonnormal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g)?.into_iter().filter(|h| !h.is_normal).collect())
}

/// Right cosets Hg, identity block (H itself) first.
pub fn right_cosets(g: &FiniteGroup, h: &Subgroup) -> CosetSpace {
    let blocks = right_cosets_of_set(g, &h.elements);
    let representatives = blocks.iter().map(|b| b.iter().next().unwrap()).collect();
    CosetSpace { blocks, representatives }
}

/// Coset blocks for a subgroup given as a bare element set; identity block
/// first, then ascending by minimal element.
pub(crate) fn right_cosets_of_set(g: &FiniteGroup, h: &ElementSet) -> Vec<ElementSet> {
    let n = g.order();
    let mut assigned = ElementSet::empty(n);
    let mut blocks = Vec::with_capacity((n / h.len()) as usize);
    for rep in 0..n {
        if assigned.contains(rep) {
            continue;
        }
        let mut block = ElementSet::empty(n);
        for e in h.iter() {
            let y = g.mul(e, rep);
            block.insert(y);
            assigned.insert(y);
        }
        blocks.push(block);
    }
    blocks
}

/// Largest normal subgroup of G contained in H: the intersection of all
/// conjugates of H.
pub fn normal_core(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut core = h.elements.clone();
    for x in 0..g.order() {
        if core.len() == 1 {
            break;
        }
        let mut conj = ElementSet::empty(g.order());
        for e in h.elements.iter() {
            conj.insert(g.conjugate(x, e));
        }
        core = core.intersection(&conj);
    }
    Subgroup { order: core.len(), is_normal: is_normal_set(g, &core), elements: core }
}

/// Quotient group G/N on coset indices; requires N normal.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<FiniteGroup> {
    if !n.is_normal {
        return Err(Error::NotNormal);
    }
    let name = format!("{}/H{}", g.name(), n.order);
    g.quotient_table(&n.elements, &name)
}
