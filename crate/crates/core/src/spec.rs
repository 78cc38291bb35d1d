//! JSON-loadable group specifications and the preset catalog.
//!
//! A spec names a group and says how to build it: a named family with
//! parameters, permutation generators in cycle notation, or matrix
//! generators over a finite field. The preset catalog ships specs for
//! every nonabelian group of order < 32, the Mathieu group of degree 11,
//! and the PSL/SL families, each carrying its expected order (checked at
//! build time) and an untrusted GAP small-group-id annotation.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::group::{
    alternating, cyclic, dicyclic, dihedral, projective_special_linear, special_linear,
    symmetric, FiniteGroup,
};
use crate::matrix::Mat;
use crate::perm::Perm;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: GroupKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    NamedFamily(FamilySpec),
    PermutationGenerators { degree: u32, generators: Vec<String> },
    MatrixGenerators { q: u32, dim: u32, generators: Vec<Vec<Vec<u64>>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GroupSpec>,
}

/// One row of `named_families()`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FamilyDescriptor {
    pub family: &'static str,
    pub parameters: &'static str,
    pub example: &'static str,
}

pub fn named_families() -> Vec<FamilyDescriptor> {
    vec![
        FamilyDescriptor { family: "cyclic", parameters: "n (order)", example: "C6" },
        FamilyDescriptor { family: "dihedral", parameters: "n (order, even)", example: "D8" },
        FamilyDescriptor {
            family: "dicyclic",
            parameters: "n (order, multiple of 4); includes generalized quaternion",
            example: "Q16",
        },
        FamilyDescriptor { family: "symmetric", parameters: "n (degree)", example: "S4" },
        FamilyDescriptor { family: "alternating", parameters: "n (degree)", example: "A5" },
        FamilyDescriptor { family: "special_linear", parameters: "dim, q", example: "SL(2,3)" },
        FamilyDescriptor {
            family: "projective_special_linear",
            parameters: "dim, q",
            example: "PSL(2,7)",
        },
        FamilyDescriptor {
            family: "direct_product",
            parameters: "factors (list of specs)",
            example: "C2xD8 (preset)",
        },
        FamilyDescriptor {
            family: "permutation_generators",
            parameters: "degree, cycle strings (escape hatch)",
            example: "(1,2,3)(4,5)",
        },
        FamilyDescriptor {
            family: "matrix_generators",
            parameters: "q, dim, row-major entries (escape hatch)",
            example: "SL(3,2) from two generators",
        },
    ]
}

fn need(value: Option<u32>, what: &str, family: &str) -> Result<usize> {
    value
        .map(|v| v as usize)
        .ok_or_else(|| Error::InvalidSpec(format!("family {family} needs parameter {what}")))
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let g = match &spec.kind {
        GroupKind::NamedFamily(f) => match f.family.as_str() {
            "cyclic" => cyclic(need(f.n, "n", "cyclic")?)?,
            "dihedral" => dihedral(need(f.n, "n", "dihedral")?)?,
            "dicyclic" => dicyclic(need(f.n, "n", "dicyclic")?)?,
            "symmetric" => symmetric(need(f.n, "n", "symmetric")?)?,
            "alternating" => alternating(need(f.n, "n", "alternating")?)?,
            "special_linear" => {
                special_linear(need(f.dim, "dim", "special_linear")?, need(f.q, "q", "special_linear")?)?
            }
            "projective_special_linear" => projective_special_linear(
                need(f.dim, "dim", "projective_special_linear")?,
                need(f.q, "q", "projective_special_linear")?,
            )?,
            "direct_product" => {
                if f.factors.len() < 2 {
                    return Err(Error::InvalidSpec(
                        "direct_product needs at least two factors".into(),
                    ));
                }
                let mut acc = build_group(&f.factors[0])?;
                for factor in &f.factors[1..] {
                    acc = FiniteGroup::direct_product(&acc, &build_group(factor)?)?;
                }
                acc
            }
            other => {
                return Err(Error::InvalidSpec(format!("unknown family {other}")));
            }
        },
        GroupKind::PermutationGenerators { degree, generators } => {
            let perms: Vec<Perm> = generators
                .iter()
                .map(|text| Perm::parse_cycles(text, *degree as usize))
                .collect::<Result<_>>()?;
            FiniteGroup::from_perm_generators(&spec.name, *degree as usize, &perms)?
        }
        GroupKind::MatrixGenerators { q, dim, generators } => {
            let field = GaloisField::new(*q as usize)?;
            let mats: Vec<Mat> = generators
                .iter()
                .map(|rows| Mat::from_rows(rows, &field))
                .collect::<Result<_>>()?;
            FiniteGroup::from_matrix_generators(&spec.name, field, *dim as usize, &mats)?
        }
    };
    Ok(g.with_name(&spec.name))
}

/// Parses compact family names: C12, D8, Q16, S4, A5, SL(2,3), PSL(2,7).
pub fn parse_shorthand(token: &str) -> Option<GroupSpec> {
    let family_spec = |family: &str, n: u32| GroupSpec {
        name: token.to_string(),
        kind: GroupKind::NamedFamily(FamilySpec {
            family: family.to_string(),
            n: Some(n),
            q: None,
            dim: None,
            factors: Vec::new(),
        }),
    };
    let linear = |family: &str, args: &str| -> Option<GroupSpec> {
        let inner = args.strip_prefix('(')?.strip_suffix(')')?;
        let (dim, q) = inner.split_once(',')?;
        Some(GroupSpec {
            name: token.to_string(),
            kind: GroupKind::NamedFamily(FamilySpec {
                family: family.to_string(),
                n: None,
                q: Some(q.trim().parse().ok()?),
                dim: Some(dim.trim().parse().ok()?),
                factors: Vec::new(),
            }),
        })
    };
    if let Some(rest) = token.strip_prefix("PSL") {
        return linear("projective_special_linear", rest);
    }
    if let Some(rest) = token.strip_prefix("SL") {
        return linear("special_linear", rest);
    }
    let (letter, digits) = token.split_at(1);
    let n: u32 = digits.parse().ok()?;
    match letter {
        "C" => Some(family_spec("cyclic", n)),
        "D" => Some(family_spec("dihedral", n)),
        "Q" => Some(family_spec("dicyclic", n)),
        "S" => Some(family_spec("symmetric", n)),
        "A" => Some(family_spec("alternating", n)),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresetEntry {
    /// GAP small-group id, recorded from the source tables; not verified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_id: Option<[u32; 2]>,
    pub expected_order: u32,
    pub spec: GroupSpec,
}

static CATALOG: OnceLock<Vec<PresetEntry>> = OnceLock::new();

pub fn preset_catalog() -> &'static [PresetEntry] {
    CATALOG.get_or_init(|| {
        serde_json::from_str(include_str!("../presets/catalog.json"))
            .expect("embedded preset catalog is valid JSON")
    })
}

pub fn preset(name: &str) -> Option<&'static PresetEntry> {
    preset_catalog().iter().find(|p| p.spec.name == name)
}

/// Catalog presets carrying a GAP id annotation, up to the given order,
/// sorted by (order, annotation) — the small-group table row order.
pub fn small_group_presets(max_order: u32) -> Vec<&'static PresetEntry> {
    let mut rows: Vec<&PresetEntry> = preset_catalog()
        .iter()
        .filter(|p| p.gap_id.is_some() && p.expected_order <= max_order)
        .collect();
    rows.sort_by_key(|p| (p.expected_order, p.gap_id));
    rows
}

/// Builds a preset by exact name and validates the expected order.
pub fn build_preset(name: &str) -> Result<FiniteGroup> {
    let entry = preset(name)
        .ok_or_else(|| Error::InvalidSpec(format!("unknown preset {name}")))?;
    build_entry(entry)
}

pub fn build_entry(entry: &PresetEntry) -> Result<FiniteGroup> {
    let g = build_group(&entry.spec)?;
    if g.order() != entry.expected_order {
        return Err(Error::InvalidSpec(format!(
            "preset {} built a group of order {}, expected {}",
            entry.spec.name,
            g.order(),
            entry.expected_order
        )));
    }
    Ok(g)
}

/// Resolves a CLI group token: preset name, compact family name, or a path
/// to a JSON spec file.
pub fn resolve_group(token: &str) -> Result<FiniteGroup> {
    if let Some(entry) = preset(token) {
        return build_entry(entry);
    }
    if let Some(spec) = parse_shorthand(token) {
        return build_group(&spec);
    }
    let path = Path::new(token);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let spec: GroupSpec = serde_json::from_str(&text)?;
        return build_group(&spec);
    }
    Err(Error::InvalidSpec(format!(
        "cannot resolve group {token}: not a preset, family shorthand, or spec file"
    )))
}
