//! Conjugacy classes and complex irreducible character degrees.
//!
//! Degrees are recovered without building a character table: the class
//! multiplication coefficients give k matrices sharing the central
//! characters as common eigenvectors. A random real combination splits the
//! eigenspaces, inverse iteration extracts each eigenvector, normalizing by
//! the identity-class component yields the central character values, and
//! the second orthogonality relation turns those into d_i^2 = |G| / sum of
//! |w_j|^2 / |C_j|. Everything is validated against exact integer identities
//! (sum of d_i^2 = |G|, each d_i divides |G|) before being returned.

use nalgebra::{Complex, DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const DEFAULT_DEGREE_SEED: u64 = 0x7e57ed;
const DEGREE_TOLERANCE: f64 = 1e-6;
const MAX_RETRIES: u32 = 8;

#[derive(Debug, Clone)]
pub struct ClassData {
    /// Conjugacy classes, ordered by minimal element; identity class first.
    /// Elements within a class are sorted ascending.
    pub classes: Vec<Vec<u32>>,
    /// Element index -> class index.
    pub class_of: Vec<u32>,
    /// Class index -> class of the inverses of its members.
    pub inverse_class: Vec<u32>,
}

impl ClassData {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c.len() as u32).collect()
    }

    pub fn representatives(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// Orbits of the conjugation action, via closure under conjugation by the
/// group's generators.
pub fn conjugacy_classes(g: &FiniteGroup) -> ClassData {
    let n = g.order() as usize;
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for rep in 0..n as u32 {
        if class_of[rep as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut orbit = vec![rep];
        class_of[rep as usize] = id;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in g.generators() {
                let y = g.conjugate(s, x);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = id;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    let inverse_class =
        classes.iter().map(|c| class_of[g.inv(c[0]) as usize]).collect();
    ClassData { classes, class_of, inverse_class }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterDegrees {
    /// Ascending multiset of irreducible degrees; one per conjugacy class.
    pub degrees: Vec<u32>,
}

impl CharacterDegrees {
    pub fn count(&self) -> usize {
        self.degrees.len()
    }

    /// D_r = sum of d_i^r.
    pub fn d_r(&self, r: u32) -> u64 {
        self.degrees.iter().map(|&d| (d as u64).pow(r)).sum()
    }

    pub fn d3(&self) -> u64 {
        self.d_r(3)
    }
}

pub fn character_degrees(g: &FiniteGroup) -> Result<CharacterDegrees> {
    character_degrees_seeded(g, DEFAULT_DEGREE_SEED)
}

pub fn character_degrees_seeded(g: &FiniteGroup, seed: u64) -> Result<CharacterDegrees> {
    let n = g.order();
    if g.is_abelian() {
        return Ok(CharacterDegrees { degrees: vec![1; n as usize] });
    }
    let classes = conjugacy_classes(g);
    let k = classes.count();
    // Class multiplication coefficients a[i][j][k0]: the number of ways a
    // fixed element of class k0 factors as x y with x in C_i, y in C_j.
    // Stored per i as a k x k matrix with rows j, columns k0.
    let mut mats: Vec<DMatrix<f64>> = vec![DMatrix::zeros(k, k); k];
    let reps = classes.representatives();
    for (k0, &z) in reps.iter().enumerate() {
        for (mat, class) in mats.iter_mut().zip(&classes.classes) {
            for &x in class {
                let y = g.mul(g.inv(x), z);
                let j = classes.class_of[y as usize] as usize;
                mat[(j, k0)] += 1.0;
            }
        }
    }
    let sizes = classes.sizes();
    for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha20Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        if let Some(degrees) = try_degrees(&mats, &sizes, n, &mut rng) {
            return Ok(CharacterDegrees { degrees });
        }
    }
    Err(Error::DegreeComputation { retries: MAX_RETRIES })
}

/// One randomized attempt; None when eigenvalues cluster or validation fails.
fn try_degrees(
    mats: &[DMatrix<f64>],
    sizes: &[u32],
    order: u32,
    rng: &mut ChaCha20Rng,
) -> Option<Vec<u32>> {
    let k = mats.len();
    let mut combo = DMatrix::<f64>::zeros(k, k);
    for m in mats {
        combo += m * rng.gen_range(0.1..1.0);
    }
    let eigenvalues = combo.clone().complex_eigenvalues();
    let scale = eigenvalues.iter().map(|l| l.norm()).fold(1.0, f64::max);
    // Distinct eigenvalues are required for inverse iteration to isolate
    // one central character per eigenvalue.
    for a in 0..k {
        for b in (a + 1)..k {
            if (eigenvalues[a] - eigenvalues[b]).norm() < 1e-6 * scale {
                return None;
            }
        }
    }
    let complex: DMatrix<Complex<f64>> = combo.map(|x| Complex::new(x, 0.0));
    let mut degrees = Vec::with_capacity(k);
    for lambda in eigenvalues.iter() {
        let w = eigenvector_for(&complex, *lambda, scale, rng)?;
        // Normalize by the identity-class component (always 1 for a central
        // character).
        let w0 = w[0];
        if w0.norm() < 1e-9 {
            return None;
        }
        let mut weighted = 0.0;
        for j in 0..k {
            let v = w[j] / w0;
            weighted += v.norm_sqr() / sizes[j] as f64;
        }
        let d_sq = order as f64 / weighted;
        if d_sq < 0.5 {
            return None;
        }
        let d = d_sq.sqrt();
        let rounded = d.round();
        if (d - rounded).abs() > DEGREE_TOLERANCE || rounded < 1.0 {
            return None;
        }
        degrees.push(rounded as u32);
    }
    degrees.sort_unstable();
    // Exact integer validation: sum of squares is the group order and every
    // degree divides it.
    let sum_sq: u64 = degrees.iter().map(|&d| d as u64 * d as u64).sum();
    if sum_sq != order as u64 {
        return None;
    }
    if degrees.iter().any(|&d| !order.is_multiple_of(d)) {
        return None;
    }
    Some(degrees)
}

/// Inverse iteration with a slightly shifted LU factorization.
fn eigenvector_for(
    m: &DMatrix<Complex<f64>>,
    lambda: Complex<f64>,
    scale: f64,
    rng: &mut ChaCha20Rng,
) -> Option<DVector<Complex<f64>>> {
    let k = m.nrows();
    let mut shift = 1e-8 * scale;
    for _ in 0..4 {
        let shifted = m
            - DMatrix::<Complex<f64>>::identity(k, k)
                * (lambda + Complex::new(shift, shift * 0.5));
        let lu = shifted.lu();
        let mut v = DVector::<Complex<f64>>::from_fn(k, |_, _| {
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let mut ok = true;
        for _ in 0..3 {
            match lu.solve(&v) {
                Some(next) => {
                    let norm = next.norm();
                    if !norm.is_finite() || norm == 0.0 {
                        ok = false;
                        break;
                    }
                    v = next / Complex::new(norm, 0.0);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(v);
        }
        shift *= 100.0;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        alternating, cyclic, dicyclic, dihedral, projective_special_linear, special_linear,
        symmetric,
    };

    #[test]
    fn abelian_degrees_are_all_ones() {
        let g = cyclic(6).unwrap();
        let deg = character_degrees(&g).unwrap();
        assert_eq!(deg.degrees, vec![1; 6]);
        assert_eq!(deg.d_r(1), 6);
        assert_eq!(deg.d_r(2), 6);
        assert_eq!(deg.d3(), 6);
    }

    #[test]
    fn s3_classes_and_degrees() {
        let g = symmetric(3).unwrap();
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.count(), 3);
        let mut sizes = classes.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(classes.classes[0], vec![0]);
        let deg = character_degrees(&g).unwrap();
        assert_eq!(deg.degrees, vec![1, 1, 2]);
        assert_eq!(deg.d3(), 10);
    }

    #[test]
    fn small_group_d3_values() {
        // Independent facts: degree multisets of these groups are classical.
        for (g, expect_degrees, expect_d3) in [
            (dihedral(8).unwrap(), vec![1, 1, 1, 1, 2], 12),
            (dicyclic(8).unwrap(), vec![1, 1, 1, 1, 2], 12),
            (alternating(4).unwrap(), vec![1, 1, 1, 3], 30),
            (dihedral(10).unwrap(), vec![1, 1, 2, 2], 18),
            (symmetric(4).unwrap(), vec![1, 1, 2, 3, 3], 64),
            (special_linear(2, 3).unwrap(), vec![1, 1, 1, 2, 2, 2, 3], 54),
        ] {
            let deg = character_degrees(&g).unwrap();
            assert_eq!(deg.degrees, expect_degrees, "{}", g.name());
            assert_eq!(deg.d3(), expect_d3, "{}", g.name());
            assert_eq!(deg.d_r(2), g.order() as u64, "{}", g.name());
        }
    }

    #[test]
    fn psl27_d3() {
        let g = projective_special_linear(2, 7).unwrap();
        assert_eq!(g.order(), 168);
        let deg = character_degrees(&g).unwrap();
        assert_eq!(deg.degrees, vec![1, 3, 3, 6, 7, 8]);
        assert_eq!(deg.d3(), 1126);
    }

    #[test]
    fn degree_count_equals_class_count() {
        for g in [symmetric(4).unwrap(), dicyclic(12).unwrap(), dihedral(14).unwrap()] {
            let classes = conjugacy_classes(&g);
            let deg = character_degrees(&g).unwrap();
            assert_eq!(classes.count(), deg.count(), "{}", g.name());
        }
    }

    #[test]
    fn classes_partition_the_group() {
        for g in [symmetric(4).unwrap(), special_linear(2, 3).unwrap()] {
            let classes = conjugacy_classes(&g);
            let total: u32 = classes.sizes().iter().sum();
            assert_eq!(total, g.order());
            // Every element belongs to the class it is listed in.
            for (i, class) in classes.classes.iter().enumerate() {
                for &x in class {
                    assert_eq!(classes.class_of[x as usize] as usize, i);
                }
            }
            // Inverse-class involution.
            for i in 0..classes.count() {
                let j = classes.inverse_class[i] as usize;
                assert_eq!(classes.inverse_class[j] as usize, i);
            }
        }
    }

    #[test]
    fn degrees_invariant_under_relabeling() {
        let g = special_linear(2, 3).unwrap();
        let base = character_degrees(&g).unwrap();
        // Deterministic scrambles of the non-identity indices.
        for offset in [1, 5, 11] {
            let n = g.order();
            let mut relabel: Vec<u32> = vec![0; n as usize];
            for x in 1..n {
                relabel[x as usize] = (x + offset - 1) % (n - 1) + 1;
            }
            let h = g.relabeled(&relabel);
            let deg = character_degrees(&h).unwrap();
            assert_eq!(deg.degrees, base.degrees, "offset {offset}");
        }
    }

    #[test]
    fn seeded_runs_are_deterministic() {
        let g = symmetric(4).unwrap();
        let a = character_degrees_seeded(&g, 42).unwrap();
        let b = character_degrees_seeded(&g, 42).unwrap();
        let c = character_degrees_seeded(&g, 43).unwrap();
        assert_eq!(a, b);
        // Different seed still converges to the same exact degrees.
        assert_eq!(a, c);
    }

    #[test]
    fn d_r_orderings() {
        for g in [symmetric(3).unwrap(), dicyclic(8).unwrap(), cyclic(9).unwrap()] {
            let deg = character_degrees(&g).unwrap();
            let (d1, d2, d3) = (deg.d_r(1), deg.d_r(2), deg.d3());
            assert!(d1 <= d2 && d2 <= d3);
            assert_eq!(d2, g.order() as u64);
            assert_eq!(d2 == d3, g.is_abelian());
        }
    }

    #[test]
    fn quotient_group_degrees() {
        // PSL(2,3) = A4 shape: degrees 1,1,1,3.
        let g = projective_special_linear(2, 3).unwrap();
        assert_eq!(g.order(), 12);
        let deg = character_degrees(&g).unwrap();
        assert_eq!(deg.degrees, vec![1, 1, 1, 3]);
        assert_eq!(deg.d3(), 30);
    }
}
