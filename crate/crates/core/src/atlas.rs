//! Charts, overlaps and glueing data of `Proj` over a declared family.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::abelian::GroupElement;
use crate::error::{Error, Result};
use crate::graded::{GradedRing, GradedRingHom};
use crate::magic::{open_immersion_certificate, OpenImmersionCertificate};
use crate::poly::{solve_linear, Monomial, Polynomial, Rational};
use crate::potion::{
    image_submonoid, potion_equiv, potion_map_into, Composite, InducedByHom, PotionElement, PotionMorphism, PotionRing, Rewrite,
};
use crate::sample::Sampler;
use crate::submonoid::{GeneratorSpec, HomogeneousSubmonoid};
use crate::verdict::{CheckConfig, Verdict};

/// Named relevant submonoids of one ring.
#[derive(Clone, Debug)]
pub struct RelevantFamily {
    ring: Arc<GradedRing>,
    names: Vec<String>,
    members: Vec<HomogeneousSubmonoid>,
}

impl RelevantFamily {
    pub fn new(ring: Arc<GradedRing>, members: Vec<(String, HomogeneousSubmonoid)>) -> Result<Self> {
        let mut names = Vec::with_capacity(members.len());
        let mut subs = Vec::with_capacity(members.len());
        for (name, s) in members {
            if **s.ring() != *ring {
                return Err(Error::RingMismatch);
            }
            if names.contains(&name) {
                return Err(Error::Precondition(format!("duplicate family member {name}")));
            }
            if !s.is_relevant() {
                return Err(Error::NotRelevant(format!("{name} = {}", s.describe())));
            }
            names.push(name);
            subs.push(s);
        }
        Ok(Self {
            ring,
            names,
            members: subs,
        })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn members(&self) -> &[HomogeneousSubmonoid] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The members at the given indices, in order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<Self> {
        let members = indices
            .iter()
            .map(|&i| {
                self.members
                    .get(i)
                    .map(|s| (self.names[i].clone(), s.clone()))
                    .ok_or_else(|| Error::Precondition(format!("no family member {i}")))
            })
            .collect::<Result<_>>()?;
        Self::new(self.ring.clone(), members)
    }
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub potion: Arc<PotionRing>,
    pub maximally_relevant: bool,
    /// `A_(SS) ≅ A_(S)` round trip on samples.
    pub self_overlap: Verdict,
}

/// `D†(ST) ⊆ D†(S)` for the ordered pair `(S, T) = (members[source], members[other])`.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub source: usize,
    pub other: usize,
    pub certificate: OpenImmersionCertificate,
    /// Text of the elements `e_t` that become invertible on the overlap.
    pub transition: Vec<String>,
    /// `A_(ST) ≅ A_(TS)` round trip on samples.
    pub symmetry: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub members: [usize; 3],
    pub samples: usize,
    pub mismatches: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct ChartAtlas {
    pub family: RelevantFamily,
    pub charts: Vec<Chart>,
    pub overlaps: Vec<Overlap>,
    pub cocycles: Vec<CocycleReport>,
    pub warnings: Vec<String>,
}

impl ChartAtlas {
    /// Number of unordered pairs of distinct members.
    pub fn overlap_classes(&self) -> usize {
        self.overlaps
            .iter()
            .map(|o| (o.source.min(o.other), o.source.max(o.other)))
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn verdict(&self) -> Verdict {
        let charts = self.charts.iter().map(|c| c.self_overlap);
        let overlaps = self.overlaps.iter().map(|o| o.certificate.verdict.and(o.symmetry));
        let cocycles = self.cocycles.iter().map(|c| c.verdict);
        Verdict::all(charts.chain(overlaps).chain(cocycles))
    }
}

fn round_trip(a: &Arc<PotionRing>, b: &Arc<PotionRing>, config: &CheckConfig, salt: u64) -> Result<Verdict> {
    let (there, back) = potion_equiv(a, b)?;
    let mut sampler = Sampler::new(config.seed ^ salt);
    for x in sampler.potion_elements(a, config.samples) {
        if !back.apply(&there.apply(&x)?)?.equals(&x) {
            return Ok(Verdict::Fail);
        }
    }
    Ok(Verdict::Pass)
}

fn product_ring(a: &HomogeneousSubmonoid, b: &HomogeneousSubmonoid) -> Result<Arc<PotionRing>> {
    Ok(PotionRing::new(a.product(b)?))
}

pub fn build_atlas(family: &RelevantFamily, config: &CheckConfig) -> Result<ChartAtlas> {
    let members = family.members();
    let mut warnings: Vec<String> = Vec::new();
    for w in members.iter().flat_map(|s| s.warnings()) {
        if !warnings.contains(w) {
            warnings.push(w.clone());
        }
    }

    let mut charts = Vec::with_capacity(members.len());
    for (i, s) in members.iter().enumerate() {
        let potion = PotionRing::new(s.clone());
        let doubled = product_ring(s, s)?;
        charts.push(Chart {
            name: family.names()[i].clone(),
            maximally_relevant: s.is_maximally_relevant(),
            self_overlap: round_trip(&potion, &doubled, config, i as u64)?,
            potion,
        });
    }

    let mut overlaps = Vec::new();
    for i in 0..members.len() {
        for j in 0..members.len() {
            if i == j {
                continue;
            }
            let certificate = open_immersion_certificate(&charts[i].potion, &members[j])?;
            let transition = certificate.elements.iter().map(PotionElement::to_text).collect();
            let st = product_ring(&members[i], &members[j])?;
            let ts = product_ring(&members[j], &members[i])?;
            let salt = ((i as u64) << 32) | j as u64;
            overlaps.push(Overlap {
                source: i,
                other: j,
                certificate,
                transition,
                symmetry: round_trip(&st, &ts, config, salt)?,
            });
        }
    }

    let mut cocycles = Vec::new();
    let n = members.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                cocycles.push(cocycle(members, [i, j, k], config)?);
            }
        }
    }

    if !family.is_empty() {
        warnings.push("results are relative to the declared family".into());
    }
    Ok(ChartAtlas {
        family: family.clone(),
        charts,
        overlaps,
        cocycles,
        warnings,
    })
}

/// For each pair `(S, T)` of the triple with third member `U`, compares
/// `A_(ST) → A_(STU)` with `A_(ST) ≅ A_(TS) → A_(TSU) ≅ A_(STU)` on samples.
fn cocycle(members: &[HomogeneousSubmonoid], idx: [usize; 3], config: &CheckConfig) -> Result<CocycleReport> {
    let [a, b, c] = idx;
    let stu = PotionRing::new(members[a].product(&members[b])?.product(&members[c])?);
    let mut samples = 0;
    let mut mismatches = 0;
    for (s, t, u) in [(a, b, c), (b, c, a), (a, c, b)] {
        let st = product_ring(&members[s], &members[t])?;
        let ts = product_ring(&members[t], &members[s])?;
        let tsu = PotionRing::new(ts.submonoid().product(&members[u])?);
        let stu_local = PotionRing::new(st.submonoid().product(&members[u])?);
        let direct = Composite::new(vec![
            Arc::new(potion_map_into(&st, &stu_local)?),
            Arc::new(Rewrite::find(stu_local.clone(), stu.clone())?),
        ])?;
        let (swap, _) = potion_equiv(&st, &ts)?;
        let up = potion_map_into(&ts, &tsu)?;
        let (into_stu, _) = potion_equiv(&tsu, &stu)?;
        let salt = ((s as u64) << 40) | ((t as u64) << 20) | u as u64;
        let mut sampler = Sampler::new(config.seed ^ salt);
        for x in sampler.potion_elements(&st, config.samples) {
            samples += 1;
            let left = direct.apply(&x)?;
            let right = into_stu.apply(&up.apply(&swap.apply(&x)?)?)?;
            if !left.equals(&right) {
                mismatches += 1;
            }
        }
    }
    Ok(CocycleReport {
        members: idx,
        samples,
        mismatches,
        verdict: Verdict::from_bool(mismatches == 0),
    })
}

/// Outcome for one family member under `Ψ`.
#[derive(Clone)]
pub struct MemberImage {
    pub name: String,
    pub map: Option<InducedByHom>,
    pub problem: Option<String>,
}

#[derive(Clone)]
pub struct FunctorialityReport {
    pub members: Vec<MemberImage>,
    /// `(i, j, verdict)`: the square through `A_(S_i S_j)` commutes on samples.
    pub compatibility: Vec<(usize, usize, Verdict)>,
    pub warnings: Vec<String>,
    pub verdict: Verdict,
}

/// `A_(S) → B_(Ψ(S))` for every member whose image is relevant.
pub fn functoriality_map(hom: &GradedRingHom, family: &RelevantFamily, config: &CheckConfig) -> Result<FunctorialityReport> {
    if **hom.source() != **family.ring() {
        return Err(Error::RingMismatch);
    }
    let mut members = Vec::with_capacity(family.len());
    let mut warnings = Vec::new();
    for (name, s) in family.names().iter().zip(family.members()) {
        let outcome = image_submonoid(hom, s).and_then(|(image, _)| {
            if image.is_relevant() {
                InducedByHom::new(hom.clone(), PotionRing::new(s.clone()))
            } else {
                Err(Error::NotRelevant(image.describe()))
            }
        });
        match outcome {
            Ok(map) => members.push(MemberImage {
                name: name.clone(),
                map: Some(map),
                problem: None,
            }),
            Err(e) => {
                warnings.push(format!("member {name} dropped: {e}"));
                members.push(MemberImage {
                    name: name.clone(),
                    map: None,
                    problem: Some(e.to_string()),
                });
            }
        }
    }

    let mut compatibility = Vec::new();
    for i in 0..members.len() {
        for j in 0..members.len() {
            let (Some(fi), Some(fj)) = (&members[i].map, &members[j].map) else {
                continue;
            };
            if i == j {
                continue;
            }
            // A_(S) → A_(ST) → B_(Ψ(ST)) against A_(S) → B_(Ψ(S)) → B_(Ψ(S)Ψ(T)).
            let s = fi.source();
            let st = product_ring(s.submonoid(), &family.members()[j])?;
            let to_st = potion_map_into(s, &st)?;
            let image_st = match InducedByHom::new(hom.clone(), st.clone()) {
                Ok(m) => m,
                Err(e) => {
                    warnings.push(format!("overlap of {} and {}: {e}", members[i].name, members[j].name));
                    compatibility.push((i, j, Verdict::Inconclusive));
                    continue;
                }
            };
            let joint = product_ring(fi.target().submonoid(), fj.target().submonoid())?;
            let into_joint = potion_map_into(fi.target(), &joint)?;
            let (align, _) = potion_equiv(image_st.target(), &joint)?;
            let mut sampler = Sampler::new(config.seed ^ (((i as u64) << 32) | j as u64));
            let mut ok = true;
            for x in sampler.potion_elements(s, config.samples) {
                let left = align.apply(&image_st.apply(&to_st.apply(&x)?)?)?;
                let right = into_joint.apply(&fi.apply(&x)?)?;
                ok &= left.equals(&right);
            }
            compatibility.push((i, j, Verdict::from_bool(ok)));
        }
    }

    // Dropped members are warnings; with nothing left there is nothing to check.
    let verdict = if members.iter().all(|m| m.map.is_none()) {
        Verdict::Inconclusive
    } else {
        Verdict::all(compatibility.iter().map(|c| c.2))
    };
    Ok(FunctorialityReport {
        members,
        compatibility,
        warnings,
        verdict,
    })
}

/// One lifted sample: `a / s ↦ b / Ψ(s)`.
#[derive(Clone, Debug)]
pub struct LiftRecord {
    pub target: String,
    pub lift: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ClosedImmersionReport {
    pub verdict: Verdict,
    pub degree_bound: u32,
    pub lifts: Vec<LiftRecord>,
}

impl ClosedImmersionReport {
    pub fn label(&self) -> &'static str {
        match self.verdict {
            Verdict::Pass => "surjective",
            _ => "inconclusive",
        }
    }
}

/// Lifts sampled elements of `B_(Ψ(S))` back to `A_(S)` by linear algebra on
/// monomial coefficients of total degree at most the configured bound.
pub fn closed_immersion_check(hom: &GradedRingHom, s: &HomogeneousSubmonoid, config: &CheckConfig) -> Result<ClosedImmersionReport> {
    if !hom.is_surjective_on_variables() {
        return Err(Error::Precondition("the homomorphism is not surjective on variables".into()));
    }
    // A generator sent to zero makes the target chart the zero ring, onto which every map is surjective.
    if let Some(g) = s.generators().iter().find(|g| hom.target().is_zero(&hom.apply(g.poly()))) {
        return Ok(ClosedImmersionReport {
            verdict: Verdict::Pass,
            degree_bound: config.degree_bound,
            lifts: vec![LiftRecord {
                target: format!("0 (zero ring: {} maps to 0)", s.ring().display(g.poly())),
                lift: Some("0".into()),
            }],
        });
    }
    let source = PotionRing::new(s.clone());
    let forward = InducedByHom::new(hom.clone(), source.clone())?;
    let target = forward.target().clone();
    let (_, positions) = image_submonoid(hom, s)?;

    let mut sampler = Sampler::new(config.seed);
    let mut elements = vec![target.one()];
    elements.extend(sampler.potion_elements(&target, config.samples));

    let mut lifts = Vec::with_capacity(elements.len());
    let mut verdict = Verdict::Pass;
    for y in &elements {
        // Witness over Ψ(S) back to a witness over S through the first preimage position.
        let mut witness = vec![0u32; s.len()];
        for (p, &w) in y.witness().iter().enumerate() {
            let j = positions
                .iter()
                .position(|&q| q == p)
                .ok_or_else(|| Error::Internal("image generator without preimage".into()))?;
            witness[j] += w;
        }
        let degree = s.witness_degree(&witness);
        let lifted = lift_homogeneous(hom, y.num(), &degree, config.degree_bound)
            .map(|num| source.fraction(num, witness))
            .transpose()?;
        let ok = match &lifted {
            Some(x) => forward.apply(x)?.equals(y),
            None => false,
        };
        if !ok {
            verdict = Verdict::Inconclusive;
        }
        lifts.push(LiftRecord {
            target: y.to_text(),
            lift: lifted.filter(|_| ok).map(|x| x.to_text()),
        });
    }
    Ok(ClosedImmersionReport {
        verdict,
        degree_bound: config.degree_bound,
        lifts,
    })
}

/// A homogeneous `a` of the given degree with `Ψ(a) = b` in the target, if one
/// exists among monomials of total degree at most `bound`.
pub fn lift_homogeneous(hom: &GradedRingHom, b: &Polynomial, degree: &GroupElement, bound: u32) -> Option<Polynomial> {
    let source = hom.source();
    let target = hom.target();
    let candidates: Vec<Monomial> = source.monomials_of_degree(degree, bound);
    let images: Vec<Polynomial> = candidates
        .iter()
        .map(|m| target.reduce(&hom.apply(&Polynomial::term(m.clone(), Rational::from_integer(1.into())))))
        .collect();
    let rhs = target.reduce(b);
    let mut rows: Vec<Monomial> = images
        .iter()
        .chain(std::iter::once(&rhs))
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
        .collect();
    rows.sort();
    rows.dedup();
    let coeff = |p: &Polynomial, m: &Monomial| {
        p.terms()
            .find(|(n, _)| *n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    };
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|m| images.iter().map(|p| coeff(p, m)).collect())
        .collect();
    let rhs_col: Vec<Rational> = rows.iter().map(|m| coeff(&rhs, m)).collect();
    let x = solve_linear(&a, &rhs_col)?;
    Some(Polynomial::from_terms(
        source.nvars(),
        candidates.into_iter().zip(x).filter(|(_, c)| *c != Rational::default()),
    ))
}

/// `A ⊗ A′` graded by `M × M′`, with the two variable embeddings.
#[derive(Clone, Debug)]
pub struct ProductGrading {
    pub ring: Arc<GradedRing>,
    pub left_vars: usize,
    pub renamed: Vec<(String, String)>,
    left_degrees: Vec<GroupElement>,
    right_degrees: Vec<GroupElement>,
}

impl ProductGrading {
    pub fn embed_left(&self, p: &Polynomial) -> Polynomial {
        p.embed(self.ring.nvars(), 0)
    }

    pub fn embed_right(&self, p: &Polynomial) -> Polynomial {
        p.embed(self.ring.nvars(), self.left_vars)
    }

    /// The degrees of the left factor's variables in `M × M′`.
    pub fn left_degrees(&self) -> &[GroupElement] {
        &self.left_degrees
    }

    pub fn right_degrees(&self) -> &[GroupElement] {
        &self.right_degrees
    }

    fn embed_submonoid(&self, s: &HomogeneousSubmonoid, right: bool) -> Result<HomogeneousSubmonoid> {
        let embed = |p: &Polynomial| if right { self.embed_right(p) } else { self.embed_left(p) };
        let n = self.ring.nvars();
        let specs = s
            .generators()
            .iter()
            .zip(s.factorizations())
            .map(|(g, f)| {
                let mut factors: Vec<(Polynomial, u32)> = f.factors.iter().map(|(h, k)| (embed(h.poly()), *k)).collect();
                factors.push((Polynomial::constant(n, f.unit.clone()), 1));
                GeneratorSpec {
                    poly: embed(g.poly()),
                    factors: Some(factors),
                }
            })
            .collect();
        HomogeneousSubmonoid::with_factorizations(self.ring.clone(), specs)
    }
}

pub fn product_grading(a: &GradedRing, b: &GradedRing) -> Result<ProductGrading> {
    let (group, emb) = a.group().direct_product(b.group());
    let mut names: Vec<String> = a.names().to_vec();
    let mut renamed = Vec::new();
    let right_names: Vec<String> = b
        .names()
        .iter()
        .map(|n| {
            let taken = |c: &str| names.iter().any(|m| m == c) || b.names().iter().any(|m| m == c && m != n);
            let mut name = n.clone();
            if names.contains(n) {
                let mut k = 2;
                name = format!("{n}_{k}");
                while taken(&name) {
                    k += 1;
                    name = format!("{n}_{k}");
                }
                renamed.push((n.clone(), name.clone()));
            }
            names.push(name.clone());
            name
        })
        .collect();
    let left_degrees: Vec<GroupElement> = a.degrees().iter().map(|d| emb.left(d)).collect();
    let right_degrees: Vec<GroupElement> = b.degrees().iter().map(|d| emb.right(d)).collect();
    let vars = a
        .names()
        .iter()
        .cloned()
        .zip(left_degrees.iter().cloned())
        .chain(right_names.into_iter().zip(right_degrees.iter().cloned()))
        .collect();
    let n = a.nvars() + b.nvars();
    let ideal = a
        .ideal()
        .generators()
        .iter()
        .map(|p| p.embed(n, 0))
        .chain(b.ideal().generators().iter().map(|p| p.embed(n, a.nvars())))
        .collect();
    let ring = GradedRing::new(group, vars, ideal)?;
    Ok(ProductGrading {
        ring: Arc::new(ring),
        left_vars: a.nvars(),
        renamed,
        left_degrees,
        right_degrees,
    })
}

#[derive(Clone, Debug)]
pub struct ProductChartReport {
    pub product: ProductGrading,
    pub samples: usize,
    pub decomposed: usize,
    pub verdict: Verdict,
}

/// Checks on samples that `(A ⊗ A′)_(S·T)` is generated by the images of
/// `A_(S)` and `A′_(T)`: each monomial `m⊗m′` of a numerator over `s⊗t` splits
/// as `(m/s)·(m′/t)`, and the recombined sum is compared exactly.
pub fn product_chart_check(s: &HomogeneousSubmonoid, t: &HomogeneousSubmonoid, config: &CheckConfig) -> Result<ProductChartReport> {
    for x in [s, t] {
        if !x.is_relevant() {
            return Err(Error::NotRelevant(x.describe()));
        }
    }
    let product = product_grading(s.ring(), t.ring())?;
    let left = PotionRing::new(s.clone());
    let right = PotionRing::new(t.clone());
    let s_emb = product.embed_submonoid(s, false)?;
    let t_emb = product.embed_submonoid(t, true)?;
    let joint = PotionRing::new(s_emb.product(&t_emb)?);
    let left_map = Rewrite::find(PotionRing::new(s_emb.clone()), joint.clone())?;
    let right_map = Rewrite::find(PotionRing::new(t_emb.clone()), joint.clone())?;
    let ns = s.len();
    let nl = product.left_vars;

    let mut sampler = Sampler::new(config.seed);
    let samples = sampler.potion_elements(&joint, config.samples);
    let mut decomposed = 0;
    let mut verdict = Verdict::Pass;
    for y in &samples {
        // The joint witness lists S's generators first.
        let ws = y.witness()[..ns].to_vec();
        let wt = y.witness()[ns..].to_vec();
        let deg_s = s.witness_degree(&ws);
        let deg_t = t.witness_degree(&wt);
        let mut sum = joint.zero();
        let mut split_ok = true;
        for (m, c) in y.num().terms() {
            let (ml, mr) = m.exponents().split_at(nl);
            let ml = Monomial::from_exponents(ml.to_vec());
            let mr = Monomial::from_exponents(mr.to_vec());
            if s.ring().monomial_degree(&ml) != deg_s || t.ring().monomial_degree(&mr) != deg_t {
                split_ok = false;
                break;
            }
            let a = left.fraction(Polynomial::term(ml, c.clone()), ws.clone())?;
            let b = right.fraction(Polynomial::term(mr, Rational::from_integer(1.into())), wt.clone())?;
            let a_img = left_map.apply(&lift_into(&a, &s_emb, &product, false)?)?;
            let b_img = right_map.apply(&lift_into(&b, &t_emb, &product, true)?)?;
            sum = &sum + &(&a_img * &b_img);
        }
        if !split_ok {
            verdict = verdict.and(Verdict::Inconclusive);
            continue;
        }
        if sum.equals(y) {
            decomposed += 1;
        } else {
            verdict = Verdict::Fail;
        }
    }
    Ok(ProductChartReport {
        product,
        samples: samples.len(),
        decomposed,
        verdict,
    })
}

fn lift_into(a: &PotionElement, emb: &HomogeneousSubmonoid, product: &ProductGrading, right: bool) -> Result<PotionElement> {
    let num = if right {
        product.embed_right(a.num())
    } else {
        product.embed_left(a.num())
    };
    PotionRing::new(emb.clone()).fraction(num, a.witness().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;

    fn p1() -> Arc<GradedRing> {
        let g = FgAbelianGroup::free(1);
        let vars = ["x", "y"]
            .iter()
            .map(|n| (n.to_string(), g.element_i64(&[1]).unwrap()))
            .collect();
        Arc::new(GradedRing::new(g, vars, vec![]).unwrap())
    }

    fn sub(r: &Arc<GradedRing>, gens: &[&str]) -> HomogeneousSubmonoid {
        HomogeneousSubmonoid::new(r.clone(), gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap()
    }

    fn family(r: &Arc<GradedRing>, gens: &[&str]) -> RelevantFamily {
        let members = gens.iter().map(|g| (g.to_string(), sub(r, &[g]))).collect();
        RelevantFamily::new(r.clone(), members).unwrap()
    }

    fn small() -> CheckConfig {
        CheckConfig {
            samples: 5,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn projective_line_atlas() {
        let r = p1();
        let atlas = build_atlas(&family(&r, &["x", "y"]), &small()).unwrap();
        assert_eq!(atlas.charts.len(), 2);
        assert_eq!(atlas.overlap_classes(), 1);
        assert_eq!(atlas.overlaps[0].transition, vec!["(y)/(x)".to_string()]);
        assert!(atlas.cocycles.is_empty());
        assert_eq!(atlas.verdict(), Verdict::Pass);
    }

    #[test]
    fn single_member_has_no_overlaps() {
        let r = p1();
        let atlas = build_atlas(&family(&r, &["x"]), &small()).unwrap();
        assert_eq!((atlas.charts.len(), atlas.overlaps.len()), (1, 0));
    }

    #[test]
    fn three_member_cocycle() {
        let r = p1();
        let atlas = build_atlas(&family(&r, &["x", "y", "x + y"]), &small()).unwrap();
        assert_eq!(atlas.overlap_classes(), 3);
        assert_eq!(atlas.cocycles.len(), 1);
        assert_eq!(atlas.verdict(), Verdict::Pass);
    }

    #[test]
    fn irrelevant_member_rejected() {
        let g = FgAbelianGroup::free(2);
        let vars = vec![
            ("x".to_string(), g.element_i64(&[1, 0]).unwrap()),
            ("y".to_string(), g.element_i64(&[0, 1]).unwrap()),
        ];
        let r = Arc::new(GradedRing::new(g, vars, vec![]).unwrap());
        let members = vec![("x".to_string(), sub(&r, &["x"]))];
        assert!(matches!(RelevantFamily::new(r, members), Err(Error::NotRelevant(_))));
    }

    #[test]
    fn functoriality_to_quotient() {
        let r = p1();
        let q = Arc::new(r.quotient(vec![r.parse("y").unwrap()]).unwrap());
        let hom = GradedRingHom::new(r.clone(), q.clone(), vec![q.var(0), q.zero()]).unwrap();
        let rep = functoriality_map(&hom, &family(&r, &["x", "y"]), &small()).unwrap();
        assert!(rep.members[0].map.is_some());
        assert!(rep.members[1].map.is_none());
        let map = rep.members[0].map.as_ref().unwrap();
        let y_over_x = map.source().fraction(r.parse("y").unwrap(), vec![1]).unwrap();
        assert!(map.apply(&y_over_x).unwrap().is_zero());
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.warnings.len(), 1);

        let id = GradedRingHom::identity(r.clone());
        let rep = functoriality_map(&id, &family(&r, &["x", "y"]), &small()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn closed_immersion_onto_quotient() {
        let r = p1();
        let q = Arc::new(r.quotient(vec![r.parse("y").unwrap()]).unwrap());
        let hom = GradedRingHom::new(r.clone(), q.clone(), vec![q.var(0), q.var(1)]).unwrap();
        let rep = closed_immersion_check(&hom, &sub(&r, &["x"]), &small()).unwrap();
        assert_eq!(rep.label(), "surjective");
        assert_eq!(rep.lifts[0].lift.as_deref(), Some("(1)/(1)"));

        let rep = closed_immersion_check(&hom, &sub(&r, &["y"]), &small()).unwrap();
        assert_eq!(rep.label(), "surjective");
        assert_eq!(rep.lifts.len(), 1);
    }

    #[test]
    fn lift_fails_beyond_bound() {
        let r = p1();
        let hom = GradedRingHom::identity(r.clone());
        let d = r.group().element_i64(&[3]).unwrap();
        assert!(lift_homogeneous(&hom, &r.parse("x^3").unwrap(), &d, 2).is_none());
        assert!(lift_homogeneous(&hom, &r.parse("x^3").unwrap(), &d, 3).is_some());
    }

    #[test]
    fn product_of_lines() {
        let a = p1();
        let prod = product_grading(&a, &a).unwrap();
        assert_eq!(prod.ring.names(), &["x", "y", "x_2", "y_2"]);
        assert_eq!(prod.renamed.len(), 2);
        let degs: Vec<String> = prod.ring.degrees().iter().map(|d| d.to_string()).collect();
        assert_eq!(degs, vec!["[1, 0]", "[1, 0]", "[0, 1]", "[0, 1]"]);
        let rep = product_chart_check(&sub(&a, &["x"]), &sub(&a, &["x"]), &small()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.decomposed, rep.samples);
    }

    #[test]
    fn product_with_trivial_sides() {
        let a = p1();
        let g = FgAbelianGroup::free(0);
        let point = Arc::new(GradedRing::new(g, vec![], vec![]).unwrap());
        let rep = product_chart_check(&sub(&a, &["x"]), &HomogeneousSubmonoid::trivial(point.clone()), &small()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let both = product_chart_check(
            &HomogeneousSubmonoid::trivial(point.clone()),
            &HomogeneousSubmonoid::trivial(point),
            &small(),
        )
        .unwrap();
        assert_eq!(both.verdict, Verdict::Pass);
    }
}
