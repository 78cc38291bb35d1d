//! Permutations on {0, .., degree-1} stored as image vectors, plus the
//! 1-based cycle notation used in spec files ("(1,2,3)(4,5)").

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { image: (0..degree as u16).collect() }
    }

    /// Builds a permutation from its image vector, rejecting non-bijections.
    pub fn from_images(image: Vec<u16>) -> Result<Perm> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if (i as usize) >= image.len() || seen[i as usize] {
                return Err(Error::NonInvertibleGenerator(format!("{image:?}")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.image[point] as usize
    }

    /// self applied after other: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { image: other.image.iter().map(|&x| self.image[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0u16; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u16;
        }
        Perm { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// Parses disjoint cycle notation with 1-based points, e.g. "(1,2,3)(4,5)".
    /// "()" and the empty string denote the identity. `degree` may exceed the
    /// largest moved point; points above it are fixed.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let text = text.trim();
        let mut image: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        if text.is_empty() || text == "()" {
            return Ok(Perm { image });
        }
        let bad = |msg: &str| Error::InvalidSpec(format!("cycle notation {text:?}: {msg}"));
        if !text.starts_with('(') || !text.ends_with(')') {
            return Err(bad("expected parenthesized cycles"));
        }
        for cycle_text in text[1..text.len() - 1].split(")(") {
            let mut points = Vec::new();
            for part in cycle_text.split(',') {
                let p: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| bad(&format!("bad point {:?}", part.trim())))?;
                if p == 0 || p > degree {
                    return Err(bad(&format!("point {p} outside 1..={degree}")));
                }
                points.push(p - 1);
            }
            if points.len() < 2 {
                return Err(bad("cycles need at least two points"));
            }
            for &p in &points {
                if moved[p] {
                    return Err(bad(&format!("point {} repeated", p + 1)));
                }
                moved[p] = true;
            }
            // Map each point to the next one in the cycle, wrapping around.
            for i in 0..points.len() {
                image[points[i]] = points[(i + 1) % points.len()] as u16;
            }
        }
        Perm::from_images(image)
    }

    /// Formats as 1-based disjoint cycles; the identity prints as "()".
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                out.push_str(&(p + 1).to_string());
                p = self.apply(p);
                if p == start {
                    break;
                }
                out.push(',');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let p = Perm::parse_cycles("(1,2,3)(4,5)", 6).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(3), 4);
        assert_eq!(p.apply(5), 5);
        assert_eq!(p.cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(Perm::parse_cycles("()", 4).unwrap(), Perm::identity(4));
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::parse_cycles("(1,2)", 3).unwrap();
        let b = Perm::parse_cycles("(2,3)", 3).unwrap();
        // (a*b)(2) = a(b(2)) = a(3) = 3  [1-based points]
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.cycle_string(), "(1,2,3)");
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Perm::parse_cycles("(1,2,3,4,5)(6,7)", 9).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(Perm::parse_cycles("(1,2", 3).is_err());
        assert!(Perm::parse_cycles("(0,1)", 3).is_err());
        assert!(Perm::parse_cycles("(1,4)", 3).is_err());
        assert!(Perm::parse_cycles("(1,2)(2,3)", 3).is_err());
        assert!(Perm::parse_cycles("(1)", 3).is_err());
    }
}
