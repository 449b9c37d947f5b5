//! The input document and its validation into core objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use gradedproj_core::abelian::{FgAbelianGroup, GroupElement};
use gradedproj_core::atlas::RelevantFamily;
use gradedproj_core::graded::{GradedRing, GradedRingHom};
use gradedproj_core::module::GradedModule;
use gradedproj_core::poly::Polynomial;
use gradedproj_core::submonoid::{GeneratorSpec, HomogeneousSubmonoid};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::InputError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub group: GroupBlock,
    pub ring: RingBlock,
    #[serde(default)]
    pub submonoids: Vec<SubmonoidBlock>,
    #[serde(default)]
    pub families: Vec<FamilyBlock>,
    #[serde(default)]
    pub modules: Vec<ModuleBlock>,
    pub target: Option<TargetBlock>,
    pub factor: Option<Box<FactorBlock>>,
    #[serde(default)]
    pub checks: Checks,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupBlock {
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub invariants: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableBlock {
    pub name: String,
    pub degree: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingBlock {
    pub variables: Vec<VariableBlock>,
    #[serde(default)]
    pub ideal: Vec<String>,
}

/// `[factor, multiplicity]` pairs for one generator.
pub type Factorization = Vec<(String, u32)>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmonoidBlock {
    pub name: String,
    pub generators: Vec<String>,
    /// Per generator, `[factor, multiplicity]` pairs; `null` leaves it to automatic splitting.
    #[serde(default)]
    pub factorizations: Option<Vec<Option<Factorization>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyBlock {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    pub name: String,
    pub generator_degrees: Vec<Vec<i64>>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// `Ψ: A → B`. Without `ring`, `B` is `A` modulo `ideal`; `images` default to
/// the variables of the same name.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetBlock {
    pub ring: Option<RingBlock>,
    #[serde(default)]
    pub ideal: Vec<String>,
    pub images: Option<Vec<String>>,
}

/// Second ring for product checks.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorBlock {
    pub group: GroupBlock,
    pub ring: RingBlock,
    #[serde(default)]
    pub submonoids: Vec<SubmonoidBlock>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checks {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub degree_bound: Option<u32>,
    pub relevance: Option<Vec<String>>,
    pub potion_eq: Option<PotionEqCheck>,
    pub magic: Option<MagicCheck>,
    pub sum_cover: Option<Vec<String>>,
    pub atlas: Option<FamilyRef>,
    pub functorial: Option<FamilyRef>,
    pub closed_immersion: Option<Vec<String>>,
    pub product: Option<ProductCheck>,
    pub twist: Option<TwistCheck>,
    pub negligible: Option<NegligibleCheck>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionBlock {
    pub num: String,
    pub den: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairBlock {
    pub left: FractionBlock,
    pub right: FractionBlock,
    #[serde(default = "yes")]
    pub expect: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotionEqCheck {
    pub submonoid: String,
    pub pairs: Vec<PairBlock>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagicCheck {
    pub s: String,
    pub t: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRef {
    pub family: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductCheck {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistCheck {
    pub submonoid: String,
    pub alpha: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegligibleCheck {
    pub module: String,
    pub family: String,
}

/// A validated document.
pub struct Problem {
    pub ring: Arc<GradedRing>,
    pub submonoids: BTreeMap<String, HomogeneousSubmonoid>,
    pub submonoid_order: Vec<String>,
    pub families: BTreeMap<String, RelevantFamily>,
    pub modules: BTreeMap<String, GradedModule>,
    pub target: Option<GradedRingHom>,
    pub factor: Option<(Arc<GradedRing>, BTreeMap<String, HomogeneousSubmonoid>)>,
    pub checks: Checks,
    /// Families rejected for irrelevance, kept so the failure surfaces when used.
    pub family_errors: BTreeMap<String, String>,
}

fn semantic(path: impl Into<String>, message: impl std::fmt::Display) -> InputError {
    InputError::Semantic {
        path: path.into(),
        message: message.to_string(),
    }
}

fn build_group(g: &GroupBlock, path: &str) -> Result<FgAbelianGroup, InputError> {
    FgAbelianGroup::new(g.rank, g.invariants.iter().map(|&d| BigInt::from(d)).collect()).map_err(|e| semantic(path, e))
}

fn degree(group: &FgAbelianGroup, coords: &[i64], path: &str) -> Result<GroupElement, InputError> {
    group.element_i64(coords).map_err(|e| semantic(path, e))
}

fn build_ring(group: FgAbelianGroup, r: &RingBlock, path: &str) -> Result<GradedRing, InputError> {
    let vars = r
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| Ok((v.name.clone(), degree(&group, &v.degree, &format!("{path}.variables[{i}].degree"))?)))
        .collect::<Result<Vec<_>, InputError>>()?;
    let base = GradedRing::polynomial_ring(group, vars).map_err(|e| semantic(format!("{path}.variables"), e))?;
    let ideal = r
        .ideal
        .iter()
        .enumerate()
        .map(|(i, p)| parse(&base, p, &format!("{path}.ideal[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    // Checked one generator at a time so the offending entry is named.
    for (i, p) in ideal.iter().enumerate() {
        base.quotient(vec![p.clone()])
            .map_err(|e| semantic(format!("{path}.ideal[{i}]"), e))?;
    }
    base.quotient(ideal).map_err(|e| semantic(format!("{path}.ideal"), e))
}

pub fn parse(ring: &GradedRing, text: &str, path: &str) -> Result<Polynomial, InputError> {
    ring.parse(text).map_err(|e| semantic(path, e))
}

fn build_submonoids(
    ring: &Arc<GradedRing>,
    blocks: &[SubmonoidBlock],
    path: &str,
) -> Result<(BTreeMap<String, HomogeneousSubmonoid>, Vec<String>), InputError> {
    let mut out = BTreeMap::new();
    let mut order = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        let here = format!("{path}[{k}]");
        if out.contains_key(&b.name) {
            return Err(semantic(here, format!("duplicate submonoid name {}", b.name)));
        }
        if let Some(f) = &b.factorizations {
            if f.len() != b.generators.len() {
                return Err(semantic(
                    format!("{here}.factorizations"),
                    format!("{} entries for {} generators", f.len(), b.generators.len()),
                ));
            }
        }
        let mut specs = Vec::with_capacity(b.generators.len());
        for (i, g) in b.generators.iter().enumerate() {
            let poly = parse(ring, g, &format!("{here}.generators[{i}]"))?;
            let factors = match b.factorizations.as_ref().and_then(|f| f[i].as_ref()) {
                None => None,
                Some(list) => Some(
                    list.iter()
                        .enumerate()
                        .map(|(j, (f, m))| Ok((parse(ring, f, &format!("{here}.factorizations[{i}][{j}]"))?, *m)))
                        .collect::<Result<Vec<_>, InputError>>()?,
                ),
            };
            specs.push(GeneratorSpec { poly, factors });
        }
        let s = HomogeneousSubmonoid::with_factorizations(ring.clone(), specs)
            .map_err(|e| semantic(format!("{here} ({})", b.name), e))?;
        order.push(b.name.clone());
        out.insert(b.name.clone(), s);
    }
    Ok((out, order))
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Syntax {
            line: e.line(),
            column: e.column(),
            message: {
                let full = e.to_string();
                match full.rsplit_once(" at line ") {
                    Some((head, _)) => head.to_string(),
                    None => full,
                }
            },
        })
    }

    pub fn validate(self) -> Result<Problem, InputError> {
        let group = build_group(&self.group, "group")?;
        let ring = Arc::new(build_ring(group.clone(), &self.ring, "ring")?);
        let (submonoids, submonoid_order) = build_submonoids(&ring, &self.submonoids, "submonoids")?;

        let mut families = BTreeMap::new();
        let mut family_errors = BTreeMap::new();
        for (k, f) in self.families.iter().enumerate() {
            let mut members = Vec::with_capacity(f.members.len());
            for (i, m) in f.members.iter().enumerate() {
                let s = submonoids.get(m).ok_or_else(|| {
                    semantic(format!("families[{k}].members[{i}]"), format!("unknown submonoid {m}"))
                })?;
                members.push((m.clone(), s.clone()));
            }
            match RelevantFamily::new(ring.clone(), members) {
                Ok(fam) => {
                    families.insert(f.name.clone(), fam);
                }
                Err(e) => {
                    family_errors.insert(f.name.clone(), format!("families[{k}] ({}): {e}", f.name));
                }
            }
        }

        let mut modules = BTreeMap::new();
        for (k, m) in self.modules.iter().enumerate() {
            let here = format!("modules[{k}]");
            let degs = m
                .generator_degrees
                .iter()
                .enumerate()
                .map(|(i, d)| degree(&group, d, &format!("{here}.generator_degrees[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let rels = m
                .relations
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, p)| parse(&ring, p, &format!("{here}.relations[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let module = GradedModule::new(ring.clone(), degs, rels).map_err(|e| semantic(format!("{here} ({})", m.name), e))?;
            modules.insert(m.name.clone(), module);
        }

        let target = self.target.as_ref().map(|t| build_target(&ring, &group, t)).transpose()?;

        let factor = match &self.factor {
            None => None,
            Some(f) => {
                let g = build_group(&f.group, "factor.group")?;
                let r = Arc::new(build_ring(g, &f.ring, "factor.ring")?);
                let (subs, _) = build_submonoids(&r, &f.submonoids, "factor.submonoids")?;
                Some((r, subs))
            }
        };

        Ok(Problem {
            ring,
            submonoids,
            submonoid_order,
            families,
            modules,
            target,
            factor,
            checks: self.checks,
            family_errors,
        })
    }
}

fn build_target(ring: &Arc<GradedRing>, group: &FgAbelianGroup, t: &TargetBlock) -> Result<GradedRingHom, InputError> {
    let base = match &t.ring {
        Some(r) => build_ring(group.clone(), r, "target.ring")?,
        None => (**ring).clone(),
    };
    let extra = t
        .ideal
        .iter()
        .enumerate()
        .map(|(i, p)| parse(&base, p, &format!("target.ideal[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let target = Arc::new(base.quotient(extra).map_err(|e| semantic("target.ideal", e))?);
    let images = match &t.images {
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, p)| parse(&target, p, &format!("target.images[{i}]")))
            .collect::<Result<Vec<_>, _>>()?,
        None => ring
            .names()
            .iter()
            .map(|n| parse(&target, n, "target.images"))
            .collect::<Result<Vec<_>, _>>()?,
    };
    GradedRingHom::new(ring.clone(), target, images).map_err(|e| semantic("target", e))
}

impl Problem {
    pub fn submonoid(&self, name: &str, path: &str) -> Result<&HomogeneousSubmonoid, InputError> {
        self.submonoids
            .get(name)
            .ok_or_else(|| semantic(path, format!("unknown submonoid {name}")))
    }

    pub fn family(&self, name: &str, path: &str) -> Result<&RelevantFamily, InputError> {
        if let Some(e) = self.family_errors.get(name) {
            return Err(semantic(path, e));
        }
        self.families
            .get(name)
            .ok_or_else(|| semantic(path, format!("unknown family {name}")))
    }

    pub fn module(&self, name: &str, path: &str) -> Result<&GradedModule, InputError> {
        self.modules
            .get(name)
            .ok_or_else(|| semantic(path, format!("unknown module {name}")))
    }

    pub fn degree(&self, coords: &[i64], path: &str) -> Result<GroupElement, InputError> {
        degree(self.ring.group(), coords, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"group": {"rank": 1}, "ring": {"variables": [{"name": "x", "degree": [1]}]}}"#;

    #[test]
    fn minimal_document_parses() {
        let p = Document::from_json(MINIMAL).unwrap().validate().unwrap();
        assert_eq!(p.ring.nvars(), 1);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Document::from_json("{\n  \"group\": }").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn inhomogeneous_ideal_generator_is_named() {
        let doc = r#"{"group": {"rank": 1}, "ring": {"variables": [{"name": "x", "degree": [1]}, {"name": "y", "degree": [1]}], "ideal": ["x*y", "x + y^2"]}}"#;
        let err = Document::from_json(doc).unwrap().validate().err().unwrap().to_string();
        assert!(err.contains("ring.ideal[1]"), "{err}");
    }

    #[test]
    fn dangling_family_member_rejected() {
        let doc = r#"{"group": {"rank": 1}, "ring": {"variables": [{"name": "x", "degree": [1]}]},
            "submonoids": [{"name": "X", "generators": ["x"]}],
            "families": [{"name": "F", "members": ["X", "Y"]}]}"#;
        let err = Document::from_json(doc).unwrap().validate().err().unwrap().to_string();
        assert!(err.contains("families[0].members[1]") && err.contains("unknown submonoid Y"), "{err}");
    }
}
