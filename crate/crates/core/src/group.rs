//! Finite groups with dense element indexing.
//!
//! Elements are indices 0..order with the identity pinned at 0. Groups are
//! built by breadth-first closure over a generator list (permutations or
//! matrices over F_q); elements are deduplicated by canonical form and the
//! discovery order is deterministic for a fixed spec. Groups up to
//! `TABLE_THRESHOLD` elements carry a dense multiplication table; larger
//! groups multiply through their canonical forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::matrix::Mat;
use crate::perm::Perm;
use crate::sets::ElementSet;

/// Largest order for which a dense n x n multiplication table is built.
pub const TABLE_THRESHOLD: usize = 4096;

/// Default cap on closure enumeration, guarding runaway generator sets.
pub const DEFAULT_CLOSURE_BUDGET: usize = 100_000;

#[derive(Debug, Clone)]
enum Forms {
    Perm { forms: Vec<Perm>, index: HashMap<Perm, u32> },
    Mat { field: GaloisField, forms: Vec<Mat>, index: HashMap<Mat, u32> },
    /// Product and quotient groups: elements are plain indices.
    Opaque,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: u32,
    /// Dense row-major table when order <= TABLE_THRESHOLD.
    table: Option<Vec<u16>>,
    forms: Forms,
    inv: Vec<u32>,
    generators: Vec<u32>,
    abelian: bool,
}

impl FiniteGroup {
    // ----- construction -------------------------------------------------

    pub fn from_perm_generators(name: &str, degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
        Self::from_perm_generators_budgeted(name, degree, gens, DEFAULT_CLOSURE_BUDGET)
    }

    pub fn from_perm_generators_budgeted(
        name: &str,
        degree: usize,
        gens: &[Perm],
        budget: usize,
    ) -> Result<FiniteGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidSpec(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let (forms, index, gen_ids) = close(Perm::identity(degree), gens, budget, |a, b| {
            a.compose(b)
        })?;
        let inv: Vec<u32> = forms.iter().map(|f| index[&f.inverse()]).collect();
        let forms = Forms::Perm { forms, index };
        finish(name, forms, inv, gen_ids)
    }

    pub fn from_matrix_generators(
        name: &str,
        field: GaloisField,
        dim: usize,
        gens: &[Mat],
    ) -> Result<FiniteGroup> {
        Self::from_matrix_generators_budgeted(name, field, dim, gens, DEFAULT_CLOSURE_BUDGET)
    }

    pub fn from_matrix_generators_budgeted(
        name: &str,
        field: GaloisField,
        dim: usize,
        gens: &[Mat],
        budget: usize,
    ) -> Result<FiniteGroup> {
        for g in gens {
            if g.dim() != dim {
                return Err(Error::InvalidSpec(format!(
                    "generator dimension {} does not match group dimension {dim}",
                    g.dim()
                )));
            }
            if g.inverse(&field).is_none() {
                return Err(Error::NonInvertibleGenerator(g.rows_string()));
            }
        }
        let f = field.clone();
        let (forms, index, gen_ids) =
            close(Mat::identity(dim), gens, budget, move |a, b| a.mul(b, &f))?;
        let inv: Vec<u32> = forms
            .iter()
            .map(|m| index[&m.inverse(&field).expect("group elements are invertible")])
            .collect();
        let forms = Forms::Mat { field, forms, index };
        finish(name, forms, inv, gen_ids)
    }

    /// Builds a group from an explicit table over opaque indices. The table
    /// must have the identity at 0; this is used for products and quotients.
    fn from_table(name: &str, order: usize, table: Vec<u16>, generators: Vec<u32>) -> FiniteGroup {
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            order: order as u32,
            table: Some(table),
            forms: Forms::Opaque,
            inv,
            generators,
            abelian: false,
        };
        g.abelian = g.compute_abelian();
        g.verify();
        g
    }

    /// Direct product with elements (a, b) -> a * |B| + b.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let order = a.order as usize * b.order as usize;
        if order > TABLE_THRESHOLD {
            return Err(Error::InvalidSpec(format!(
                "direct product order {order} exceeds the dense-table limit {TABLE_THRESHOLD}"
            )));
        }
        let (na, nb) = (a.order as usize, b.order as usize);
        let mut table = vec![0u16; order * order];
        for i1 in 0..na {
            for j1 in 0..nb {
                let x = i1 * nb + j1;
                for i2 in 0..na {
                    let ai = a.mul(i1 as u32, i2 as u32) as usize;
                    for j2 in 0..nb {
                        let y = i2 * nb + j2;
                        let bj = b.mul(j1 as u32, j2 as u32) as usize;
                        table[x * order + y] = (ai * nb + bj) as u16;
                    }
                }
            }
        }
        let mut generators: Vec<u32> = Vec::new();
        for &g in &a.generators {
            generators.push(g * nb as u32);
        }
        for &g in &b.generators {
            generators.push(g);
        }
        let name = format!("{} x {}", a.name, b.name);
        Ok(FiniteGroup::from_table(&name, order, table, generators))
    }

    /// Quotient by a normal subgroup given as an element set. Cosets are
    /// ordered by their minimal element, so the identity coset is index 0.
    /// Callers are expected to have checked normality.
    pub(crate) fn quotient_table(&self, normal: &ElementSet, name: &str) -> Result<FiniteGroup> {
        let n = self.order as usize;
        let k = normal.len() as usize;
        let q_order = n / k;
        if q_order > TABLE_THRESHOLD {
            return Err(Error::InvalidSpec(format!(
                "quotient order {q_order} exceeds the dense-table limit {TABLE_THRESHOLD}"
            )));
        }
        // Partition into right cosets N g in order of minimal representative.
        let mut coset_of = vec![u32::MAX; n];
        let mut reps: Vec<u32> = Vec::with_capacity(q_order);
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(g);
            for h in normal.iter() {
                coset_of[self.mul(h, g) as usize] = c;
            }
        }
        let mut table = vec![0u16; q_order * q_order];
        for c1 in 0..q_order {
            for c2 in 0..q_order {
                let prod = self.mul(reps[c1], reps[c2]);
                table[c1 * q_order + c2] = coset_of[prod as usize] as u16;
            }
        }
        let mut generators: Vec<u32> = Vec::new();
        for &g in &self.generators {
            let c = coset_of[g as usize];
            if c != 0 && !generators.contains(&c) {
                generators.push(c);
            }
        }
        Ok(FiniteGroup::from_table(name, q_order, table, generators))
    }

    pub fn with_name(mut self, name: &str) -> FiniteGroup {
        self.name = name.to_string();
        self
    }

    // ----- basic operations ---------------------------------------------

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(table) = &self.table {
            return table[a as usize * self.order as usize + b as usize] as u32;
        }
        match &self.forms {
            Forms::Perm { forms, index } => {
                index[&forms[a as usize].compose(&forms[b as usize])]
            }
            Forms::Mat { field, forms, index } => {
                index[&forms[a as usize].mul(&forms[b as usize], field)]
            }
            Forms::Opaque => unreachable!("opaque groups always carry a table"),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// g x g^-1.
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn power(&self, a: u32, k: i64) -> u32 {
        let mut k = k.rem_euclid(self.element_order(a) as i64) as u32;
        let mut acc = self.identity();
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// A printable form: cycle notation, matrix rows, or the bare index.
    pub fn element_name(&self, a: u32) -> String {
        match &self.forms {
            Forms::Perm { forms, .. } => forms[a as usize].cycle_string(),
            Forms::Mat { forms, .. } => forms[a as usize].rows_string(),
            Forms::Opaque => format!("#{a}"),
        }
    }

    pub fn perm_form(&self, a: u32) -> Option<&Perm> {
        match &self.forms {
            Forms::Perm { forms, .. } => Some(&forms[a as usize]),
            _ => None,
        }
    }

    pub fn matrix_form(&self, a: u32) -> Option<&Mat> {
        match &self.forms {
            Forms::Mat { forms, .. } => Some(&forms[a as usize]),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<&GaloisField> {
        match &self.forms {
            Forms::Mat { field, .. } => Some(field),
            _ => None,
        }
    }

    /// Index of the element with the given canonical permutation form.
    pub fn index_of_perm(&self, p: &Perm) -> Option<u32> {
        match &self.forms {
            Forms::Perm { index, .. } => index.get(p).copied(),
            _ => None,
        }
    }

    pub fn index_of_matrix(&self, m: &Mat) -> Option<u32> {
        match &self.forms {
            Forms::Mat { index, .. } => index.get(m).copied(),
            _ => None,
        }
    }

    // ----- set-level operations ------------------------------------------

    /// Right quotient Q(X) = { x y^-1 : x, y in X }.
    pub fn right_quotient(&self, x: &ElementSet) -> Result<ElementSet> {
        if x.is_empty() {
            return Err(Error::EmptySet("right_quotient"));
        }
        let mut q = ElementSet::empty(self.order);
        let xs = x.to_vec();
        for &a in &xs {
            for &b in &xs {
                q.insert(self.mul(a, self.inv(b)));
            }
        }
        Ok(q)
    }

    /// Element-wise product set A B = { a b : a in A, b in B }.
    pub fn set_product(&self, a: &ElementSet, b: &ElementSet) -> Result<ElementSet> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet("set_product"));
        }
        let mut p = ElementSet::empty(self.order);
        for x in a.iter() {
            for y in b.iter() {
                p.insert(self.mul(x, y));
            }
        }
        Ok(p)
    }

    /// Is the set closed under multiplication with the identity inside?
    /// (For finite sets this is exactly the subgroup property.)
    pub fn is_subgroup_set(&self, s: &ElementSet) -> bool {
        if !s.contains(self.identity()) {
            return false;
        }
        let v = s.to_vec();
        for &a in &v {
            for &b in &v {
                if !s.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure of a set of elements into the subgroup it generates.
    pub fn generated_subgroup_set(&self, seeds: &[u32]) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        set.insert(self.identity());
        let mut list: Vec<u32> = vec![self.identity()];
        for &s in seeds {
            if set.insert(s) {
                list.push(s);
            }
        }
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            // Products with everything already found, on both sides.
            for i in 0..list.len() {
                let y = list[i];
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if set.insert(z) {
                        list.push(z);
                    }
                }
            }
        }
        set
    }

    /// Elements commuting with every element (computed via generators).
    pub fn center_set(&self) -> ElementSet {
        let mut z = ElementSet::empty(self.order);
        for x in 0..self.order {
            if self.generators.iter().all(|&g| self.mul(x, g) == self.mul(g, x)) {
                z.insert(x);
            }
        }
        // With no generators the group is trivial and the loop above is right.
        z
    }

    // ----- internal construction helpers ---------------------------------

    fn compute_abelian(&self) -> bool {
        if !self.generators.is_empty() {
            return self
                .generators
                .iter()
                .all(|&g| self.generators.iter().all(|&h| self.mul(g, h) == self.mul(h, g)));
        }
        // No generator metadata: fall back to a full scan.
        (0..self.order)
            .all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Construction-time consistency checks. These can only fail on an
    /// internal bug, so violations panic.
    fn verify(&self) {
        let n = self.order as usize;
        if let Some(table) = &self.table {
            for j in 0..n {
                assert_eq!(table[j] as usize, j, "identity row broken in {}", self.name);
                assert_eq!(table[j * n] as usize, j, "identity column broken in {}", self.name);
            }
            // Latin square: every row and column is a permutation.
            let mut stamp = vec![u32::MAX; n];
            for (i, row) in table.chunks(n).enumerate() {
                for &v in row {
                    assert!(
                        (v as usize) < n && stamp[v as usize] != i as u32,
                        "row {i} of {} is not a permutation",
                        self.name
                    );
                    stamp[v as usize] = i as u32;
                }
            }
            let mut stamp = vec![u32::MAX; n];
            for j in 0..n {
                for i in 0..n {
                    let v = table[i * n + j] as usize;
                    assert!(stamp[v] != j as u32, "column {j} of {} is not a permutation", self.name);
                    stamp[v] = j as u32;
                }
            }
        }
        for a in 0..self.order {
            assert_eq!(
                self.mul(a, self.inv(a)),
                self.identity(),
                "inverse map broken in {}",
                self.name
            );
        }
        // Associativity spot-check: generator pairs against every element.
        for &g in &self.generators {
            for &h in &self.generators {
                let gh = self.mul(g, h);
                for a in 0..self.order {
                    assert_eq!(
                        self.mul(self.mul(a, g), h),
                        self.mul(a, gh),
                        "associativity broken in {}",
                        self.name
                    );
                }
            }
        }
    }

    /// Test-only helper: relabel elements by a permutation fixing 0.
    #[doc(hidden)]
    pub fn relabeled(&self, relabel: &[u32]) -> FiniteGroup {
        assert_eq!(relabel[0], 0, "identity must stay at index 0");
        let n = self.order as usize;
        assert!(n <= TABLE_THRESHOLD, "relabeling is only for table groups");
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a as u32, b as u32);
                table[relabel[a] as usize * n + relabel[b] as usize] = relabel[c as usize] as u16;
            }
        }
        let generators = self.generators.iter().map(|&g| relabel[g as usize]).collect();
        FiniteGroup::from_table(&format!("{} (relabeled)", self.name), n, table, generators)
    }
}

/// Forms in discovery order, the index map, and the generators' indices.
type Closure<F> = (Vec<F>, HashMap<F, u32>, Vec<u32>);

/// Breadth-first closure over right multiplication by the generators,
/// in input order.
fn close<F: Clone + std::hash::Hash + Eq>(
    identity: F,
    gens: &[F],
    budget: usize,
    op: impl Fn(&F, &F) -> F,
) -> Result<Closure<F>> {
    let mut forms = vec![identity.clone()];
    let mut index: HashMap<F, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < forms.len() {
        for g in gens {
            let y = op(&forms[head], g);
            if !index.contains_key(&y) {
                if forms.len() >= budget {
                    return Err(Error::ClosureBudgetExceeded { budget });
                }
                index.insert(y.clone(), forms.len() as u32);
                forms.push(y);
            }
        }
        head += 1;
    }
    let gen_ids = gens.iter().map(|g| index[g]).collect();
    Ok((forms, index, gen_ids))
}

fn finish(name: &str, forms: Forms, inv: Vec<u32>, gen_ids: Vec<u32>) -> Result<FiniteGroup> {
    let order = inv.len();
    let table = if order <= TABLE_THRESHOLD {
        let mut table = vec![0u16; order * order];
        match &forms {
            Forms::Perm { forms, index } => {
                for a in 0..order {
                    for b in 0..order {
                        table[a * order + b] = index[&forms[a].compose(&forms[b])] as u16;
                    }
                }
            }
            Forms::Mat { field, forms, index } => {
                for a in 0..order {
                    for b in 0..order {
                        table[a * order + b] = index[&forms[a].mul(&forms[b], field)] as u16;
                    }
                }
            }
            Forms::Opaque => unreachable!(),
        }
        Some(table)
    } else {
        None
    };
    let mut generators = Vec::new();
    for g in gen_ids {
        if g != 0 && !generators.contains(&g) {
            generators.push(g);
        }
    }
    let mut group = FiniteGroup {
        name: name.to_string(),
        order: order as u32,
        table,
        forms,
        inv,
        generators,
        abelian: false,
    };
    group.abelian = group.compute_abelian();
    group.verify();
    Ok(group)
}

// ----- named families ----------------------------------------------------

/// Cyclic group C_n.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("cyclic group needs n >= 1".into()));
    }
    let name = format!("C{n}");
    if n == 1 {
        return FiniteGroup::from_perm_generators(&name, 1, &[]);
    }
    let cycle: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
    FiniteGroup::from_perm_generators(&name, n, &[Perm::from_images(cycle)?])
}

/// Dihedral group of total order m (m even, m >= 2).
pub fn dihedral(m: usize) -> Result<FiniteGroup> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidSpec(format!("dihedral order {m} must be even and >= 2")));
    }
    let name = format!("D{m}");
    let n = m / 2;
    if n == 1 {
        return FiniteGroup::from_perm_generators(&name, 2, &[Perm::parse_cycles("(1,2)", 2)?]);
    }
    if n == 2 {
        let gens =
            [Perm::parse_cycles("(1,2)", 4)?, Perm::parse_cycles("(3,4)", 4)?];
        return FiniteGroup::from_perm_generators(&name, 4, &gens);
    }
    // Rotation and a reflection of the n-gon on points 1..n (fixing point 1).
    let rot: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
    let refl: Vec<u16> = (0..n as u16).map(|i| (n as u16 - i) % n as u16).collect();
    let gens = [Perm::from_images(rot)?, Perm::from_images(refl)?];
    FiniteGroup::from_perm_generators(&name, n, &gens)
}

/// Dicyclic (generalized quaternion) group of total order m = 4k, via its
/// left-regular permutation representation. Generators a (order m/2) and b
/// with b^2 = a^(m/4) and b a b^-1 = a^-1.
pub fn dicyclic(m: usize) -> Result<FiniteGroup> {
    if m < 8 || !m.is_multiple_of(4) {
        return Err(Error::InvalidSpec(format!("dicyclic order {m} must be a multiple of 4, >= 8")));
    }
    let k = m / 4;
    let two_k = 2 * k;
    // Elements a^i b^e at point i + 2k e; left multiplication by a and by b.
    let mut la = vec![0u16; m];
    let mut lb = vec![0u16; m];
    for i in 0..two_k {
        for e in 0..2 {
            let p = i + two_k * e;
            la[p] = (((i + 1) % two_k) + two_k * e) as u16;
            lb[p] = if e == 0 {
                ((two_k - i) % two_k + two_k) as u16
            } else {
                ((k + two_k - i) % two_k) as u16
            };
        }
    }
    let name = format!("Q{m}");
    let gens = [Perm::from_images(la)?, Perm::from_images(lb)?];
    FiniteGroup::from_perm_generators(&name, m, &gens)
}

/// Symmetric group S_n on n points.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("symmetric group needs n >= 1".into()));
    }
    let name = format!("S{n}");
    if n == 1 {
        return FiniteGroup::from_perm_generators(&name, 1, &[]);
    }
    let mut gens = vec![Perm::parse_cycles("(1,2)", n)?];
    if n > 2 {
        let cycle: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
        gens.push(Perm::from_images(cycle)?);
    }
    FiniteGroup::from_perm_generators(&name, n, &gens)
}

/// Alternating group A_n, generated by the 3-cycles (1,2,k).
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("alternating group needs n >= 1".into()));
    }
    let name = format!("A{n}");
    if n <= 2 {
        return FiniteGroup::from_perm_generators(&name, n.max(1), &[]);
    }
    let gens: Result<Vec<Perm>> =
        (3..=n).map(|k| Perm::parse_cycles(&format!("(1,2,{k})"), n)).collect();
    FiniteGroup::from_perm_generators(&name, n, &gens?)
}

/// SL_n(F_q), generated by all transvections I + c E_ij.
pub fn special_linear(n: usize, q: usize) -> Result<FiniteGroup> {
    special_linear_budgeted(n, q, DEFAULT_CLOSURE_BUDGET)
}

pub fn special_linear_budgeted(n: usize, q: usize, budget: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidSpec("SL needs dimension >= 2".into()));
    }
    let field = GaloisField::new(q)?;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for c in 1..q {
                let mut rows = vec![vec![0u64; n]; n];
                for (d, row) in rows.iter_mut().enumerate() {
                    row[d] = 1;
                }
                rows[i][j] = c as u64;
                gens.push(Mat::from_rows(&rows, &field)?);
            }
        }
    }
    let name = format!("SL({n},{q})");
    FiniteGroup::from_matrix_generators_budgeted(&name, field, n, &gens, budget)
}

/// PSL_n(F_q) = SL_n(F_q) / center.
pub fn projective_special_linear(n: usize, q: usize) -> Result<FiniteGroup> {
    let sl = special_linear(n, q)?;
    let center = sl.center_set();
    sl.quotient_table(&center, &format!("PSL({n},{q})"))
}
