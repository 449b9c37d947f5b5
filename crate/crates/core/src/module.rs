//! Finitely presented graded modules, their potions, twists and negligibility.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::abelian::GroupElement;
use crate::atlas::RelevantFamily;
use crate::error::{Error, Result};
use crate::graded::{GradedRing, Homogeneity};
use crate::poly::{Polynomial, Submodule};
use crate::potion::{PotionElement, PotionRing};
use crate::sample::Sampler;
use crate::submonoid::BarSubmonoid;
use crate::verdict::{CheckConfig, Verdict};

/// `A^r / (relations)` with free generators in the given degrees.
#[derive(Clone, PartialEq)]
pub struct GradedModule {
    ring: Arc<GradedRing>,
    gen_degrees: Vec<GroupElement>,
    relations: Vec<Vec<Polynomial>>,
}

impl GradedModule {
    /// Every relation must be homogeneous: entry `j` of degree `d − gen_degrees[j]`
    /// for one common `d`.
    pub fn new(ring: Arc<GradedRing>, gen_degrees: Vec<GroupElement>, relations: Vec<Vec<Polynomial>>) -> Result<Self> {
        for d in &gen_degrees {
            if !ring.group().contains(d) {
                return Err(Error::InvalidModule(format!("generator degree {d} is not in the grading group")));
            }
        }
        for (k, rel) in relations.iter().enumerate() {
            if rel.len() != gen_degrees.len() {
                return Err(Error::InvalidModule(format!(
                    "relation {k} has {} entries, expected {}",
                    rel.len(),
                    gen_degrees.len()
                )));
            }
            let mut common: Option<GroupElement> = None;
            for (j, p) in rel.iter().enumerate() {
                if p.nvars() != ring.nvars() {
                    return Err(Error::VariableMismatch {
                        left: ring.nvars(),
                        right: p.nvars(),
                    });
                }
                let d = match ring.is_homogeneous(p) {
                    Homogeneity::Zero => continue,
                    Homogeneity::Homogeneous(d) => &d + &gen_degrees[j],
                    Homogeneity::Mixed => {
                        return Err(Error::InvalidModule(format!(
                            "relation {k}, entry {j} ({}) is not homogeneous",
                            ring.display(p)
                        )))
                    }
                };
                match &common {
                    None => common = Some(d),
                    Some(c) if *c != d => {
                        return Err(Error::InvalidModule(format!(
                            "relation {k} mixes degrees {c} and {d}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self {
            ring,
            gen_degrees,
            relations,
        })
    }

    pub fn free(ring: Arc<GradedRing>, gen_degrees: Vec<GroupElement>) -> Self {
        Self {
            ring,
            gen_degrees,
            relations: Vec::new(),
        }
    }

    /// `A / (gens)`, one generator in degree zero.
    pub fn cyclic(ring: Arc<GradedRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let zero = ring.group().zero();
        Self::new(ring, vec![zero], gens.into_iter().map(|g| vec![g]).collect())
    }

    pub fn zero_module(ring: Arc<GradedRing>) -> Self {
        Self::free(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[GroupElement] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        &self.relations
    }

    pub fn shift(&self, alpha: &GroupElement) -> ShiftedModule {
        ShiftedModule {
            base: self.clone(),
            shift: alpha.clone(),
        }
    }

    /// Relations together with `I·eⱼ`, as a submodule of the free polynomial module.
    fn relation_submodule(&self) -> Submodule {
        let r = self.rank();
        let n = self.ring.nvars();
        let mut gens = self.relations.clone();
        for g in self.ring.ideal().generators() {
            for j in 0..r {
                let mut v = vec![Polynomial::zero(n); r];
                v[j] = g.clone();
                gens.push(v);
            }
        }
        Submodule::new(n, r, gens).expect("shapes validated on construction")
    }

    /// Degree of a homogeneous vector, `None` for zero, error when mixed.
    pub fn element_degree(&self, v: &[Polynomial]) -> Result<Option<GroupElement>> {
        if v.len() != self.rank() {
            return Err(Error::InvalidModule(format!("vector has {} entries, expected {}", v.len(), self.rank())));
        }
        let mut common: Option<GroupElement> = None;
        for (j, p) in v.iter().enumerate() {
            let d = match self.ring.is_homogeneous(p) {
                Homogeneity::Zero => continue,
                Homogeneity::Homogeneous(d) => &d + &self.gen_degrees[j],
                Homogeneity::Mixed => return Err(Error::NotHomogeneous(self.ring.display(p))),
            };
            match &common {
                None => common = Some(d),
                Some(c) if *c != d => return Err(Error::DegreeMismatch(format!("vector mixes degrees {c} and {d}"))),
                _ => {}
            }
        }
        Ok(common)
    }
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("gen_degrees", &self.gen_degrees)
            .field("relations", &self.relations.len())
            .finish()
    }
}

/// `Q(α)` with `(Q(α))_β = Q_{α+β}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedModule {
    pub base: GradedModule,
    pub shift: GroupElement,
}

impl ShiftedModule {
    pub fn shift(&self, beta: &GroupElement) -> ShiftedModule {
        ShiftedModule {
            base: self.base.clone(),
            shift: &self.shift + beta,
        }
    }

    /// The same presentation with generator degrees moved by `−α`.
    pub fn module(&self) -> GradedModule {
        GradedModule {
            ring: self.base.ring.clone(),
            gen_degrees: self.base.gen_degrees.iter().map(|d| d - &self.shift).collect(),
            relations: self.base.relations.clone(),
        }
    }
}

/// `Q_(S)`: degree-zero fractions `m / s` with `m ∈ Q` and `s ∈ S`.
pub struct ModulePotion {
    module: GradedModule,
    potion: Arc<PotionRing>,
    saturated: OnceLock<Submodule>,
}

#[derive(Clone)]
pub struct ModulePotionElement {
    parent: Arc<ModulePotion>,
    degree: GroupElement,
    num: Vec<Polynomial>,
    witness: Vec<u32>,
}

impl ModulePotion {
    pub fn new(module: GradedModule, potion: Arc<PotionRing>) -> Result<Arc<Self>> {
        if **potion.ring() != *module.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Arc::new(Self {
            module,
            potion,
            saturated: OnceLock::new(),
        }))
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn potion(&self) -> &Arc<PotionRing> {
        &self.potion
    }

    /// Whether `v/1` vanishes after inverting `S`.
    pub fn kills(&self, v: &[Polynomial]) -> bool {
        let ring = self.module.ring();
        let v: Vec<Polynomial> = v.iter().map(|p| ring.reduce(p)).collect();
        if v.iter().all(Polynomial::is_zero) {
            return true;
        }
        let sat = self.saturated.get_or_init(|| {
            let rel = self.module.relation_submodule();
            if rel.generators().is_empty() {
                rel
            } else {
                rel.saturate(&ring.reduce(&self.potion.saturating_element()))
            }
        });
        sat.contains(&v)
    }

    pub fn element(self: &Arc<Self>, num: Vec<Polynomial>, witness: Vec<u32>) -> Result<ModulePotionElement> {
        let s = self.potion.submonoid();
        s.check_witness(&witness)?;
        let degree = s.witness_degree(&witness);
        if let Some(d) = self.module.element_degree(&num)? {
            if d != degree {
                return Err(Error::DegreeMismatch(format!(
                    "numerator has degree {d}, denominator {degree}"
                )));
            }
        }
        Ok(ModulePotionElement {
            parent: self.clone(),
            degree,
            num,
            witness,
        })
    }

    pub fn zero(self: &Arc<Self>) -> ModulePotionElement {
        let n = self.module.ring.nvars();
        ModulePotionElement {
            parent: self.clone(),
            degree: self.module.ring.group().zero(),
            num: vec![Polynomial::zero(n); self.module.rank()],
            witness: vec![0; self.potion.submonoid().len()],
        }
    }
}

impl ModulePotionElement {
    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn num(&self) -> &[Polynomial] {
        &self.num
    }

    pub fn witness(&self) -> &[u32] {
        &self.witness
    }

    fn den(&self) -> Polynomial {
        self.parent
            .potion
            .submonoid()
            .element(&self.witness)
            .expect("witness validated")
            .into_parts()
            .0
    }

    fn check_same(&self, other: &ModulePotionElement) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::SubmonoidMismatch)
        }
    }

    pub fn try_add(&self, other: &ModulePotionElement) -> Result<ModulePotionElement> {
        self.check_same(other)?;
        let (da, db) = (self.den(), other.den());
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| &(a * &db) + &(b * &da))
            .collect();
        Ok(ModulePotionElement {
            parent: self.parent.clone(),
            degree: &self.degree + &other.degree,
            num,
            witness: self.witness.iter().zip(&other.witness).map(|(a, b)| a + b).collect(),
        })
    }

    /// The action of `A_(S)`.
    pub fn scale(&self, a: &PotionElement) -> Result<ModulePotionElement> {
        if !self.parent.potion.same_as(a.potion_ring()) {
            return Err(Error::SubmonoidMismatch);
        }
        Ok(ModulePotionElement {
            parent: self.parent.clone(),
            degree: &self.degree + a.degree(),
            num: self.num.iter().map(|p| p * a.num()).collect(),
            witness: self.witness.iter().zip(a.witness()).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.parent.kills(&self.num)
    }
}

/// `den_b·num_a − den_a·num_b` is killed by a power of the generator product of `S`.
pub fn module_potion_eq(a: &ModulePotionElement, b: &ModulePotionElement) -> Result<bool> {
    a.check_same(b)?;
    let (da, db) = (a.den(), b.den());
    let diff: Vec<Polynomial> = a
        .num
        .iter()
        .zip(&b.num)
        .map(|(x, y)| &(x * &db) - &(y * &da))
        .collect();
    Ok(a.parent.kills(&diff))
}

/// `num / ∏ gⱼ^witness` over `S` without the degree-zero restriction.
#[derive(Clone, Debug)]
pub struct GradedFractionOverS {
    pub num: Polynomial,
    pub witness: Vec<u32>,
    pub degree: GroupElement,
}

impl GradedFractionOverS {
    fn mul(&self, other: &GradedFractionOverS) -> GradedFractionOverS {
        GradedFractionOverS {
            num: &self.num * &other.num,
            witness: self.witness.iter().zip(&other.witness).map(|(a, b)| a + b).collect(),
            degree: &self.degree + &other.degree,
        }
    }

    fn to_potion(&self, s: &Arc<PotionRing>) -> Result<PotionElement> {
        s.fraction(self.num.clone(), self.witness.clone())
    }

    fn from_potion(a: &PotionElement) -> Self {
        Self {
            num: a.num().clone(),
            witness: a.witness().to_vec(),
            degree: a.potion_ring().ring().group().zero(),
        }
    }

    fn equals(&self, other: &GradedFractionOverS, s: &PotionRing) -> bool {
        let sub = s.submonoid();
        let da = sub.element(&self.witness).expect("valid witness");
        let db = sub.element(&other.witness).expect("valid witness");
        self.degree == other.degree && s.kills(&(&(&self.num * db.poly()) - &(&other.num * da.poly())))
    }

    pub fn to_text(&self, s: &PotionRing) -> String {
        let ring = s.ring();
        let den = s.submonoid().element(&self.witness).expect("valid witness");
        format!("({})/({})", ring.display(&self.num), ring.display(den.poly()))
    }
}

/// `u = s/s′` of degree `α` with `s, s′ ∈ S̄`, and its inverse.
#[derive(Clone, Debug)]
pub struct TwistUnit {
    pub alpha: GroupElement,
    /// Exponents over the divisor generators of `S̄`.
    pub s: Vec<u32>,
    pub s_prime: Vec<u32>,
    pub unit: GradedFractionOverS,
    pub inverse: GradedFractionOverS,
    pub inverse_verified: bool,
    /// `A_(S) ⇄ A(α)_(S)` by multiplication with `u` and `u⁻¹`, on samples.
    pub bijection: Verdict,
}

impl TwistUnit {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.inverse_verified).and(self.bijection)
    }
}

/// `p/q` with `p, q` products over `S̄`, rewritten over `S` through a lift of `q`.
fn bar_quotient(bar: &BarSubmonoid, p: &[u32], q: &[u32]) -> Result<GradedFractionOverS> {
    let lift = bar.lift_to_base(q);
    let num = (bar.element(p)?.poly() * bar.element(&lift.cofactor)?.poly()).scalar_mul(&lift.unit);
    Ok(GradedFractionOverS {
        num,
        witness: lift.base,
        degree: &bar.witness_degree(p) - &bar.witness_degree(q),
    })
}

pub fn twist_generator(s: &Arc<PotionRing>, alpha: &GroupElement, config: &CheckConfig) -> Result<TwistUnit> {
    let sub = s.submonoid();
    if !sub.is_maximally_relevant() {
        return Err(Error::NotMaximallyRelevant(sub.describe()));
    }
    let ring = s.ring();
    if !ring.group().contains(alpha) {
        return Err(Error::Precondition(format!("{alpha} is not in the grading group")));
    }
    let bar = sub.bar();
    let (plus, minus) = if bar.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let d = ring
            .group()
            .represent_as_difference(alpha, &bar.degrees())
            .ok_or_else(|| Error::Internal(format!("{alpha} has no representation over a maximally relevant submonoid")))?;
        (d.plus, d.minus)
    };
    let unit = bar_quotient(&bar, &plus, &minus)?;
    let inverse = bar_quotient(&bar, &minus, &plus)?;
    if unit.degree != *alpha {
        return Err(Error::Internal("twist unit has the wrong degree".into()));
    }
    let inverse_verified = unit.mul(&inverse).to_potion(s)?.is_one();

    let mut sampler = Sampler::new(config.seed);
    let mut ok = true;
    for a in sampler.potion_elements(s, config.samples) {
        let a = GradedFractionOverS::from_potion(&a);
        ok &= a.mul(&unit).mul(&inverse).equals(&a, s);
    }
    for _ in 0..config.samples {
        let witness = sampler.witness(sub.len());
        let degree = &sub.witness_degree(&witness) + alpha;
        let num = sampler.homogeneous(ring, &degree, config.degree_bound);
        let b = GradedFractionOverS {
            num,
            witness,
            degree: alpha.clone(),
        };
        let back = b.mul(&inverse);
        ok &= back.to_potion(s).is_ok() && back.mul(&unit).equals(&b, s);
    }
    Ok(TwistUnit {
        alpha: alpha.clone(),
        s: plus,
        s_prime: minus,
        unit,
        inverse,
        inverse_verified,
        bijection: Verdict::from_bool(ok),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Negligibility {
    Negligible,
    NotNegligible,
    Inconclusive,
}

impl Negligibility {
    pub fn as_str(&self) -> &'static str {
        match self {
            Negligibility::Negligible => "negligible over F",
            Negligibility::NotNegligible => "not negligible over F",
            Negligibility::Inconclusive => "inconclusive",
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            Negligibility::Negligible => Verdict::Pass,
            Negligibility::NotNegligible => Verdict::Fail,
            Negligibility::Inconclusive => Verdict::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartNegligibility {
    pub name: String,
    /// Per free generator: `gᵢ/1 = 0` after inverting the member.
    pub killed: Vec<bool>,
    pub maximally_relevant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegligibilityReport {
    pub charts: Vec<ChartNegligibility>,
    pub result: Negligibility,
}

/// Negligible when every generator dies on every chart. A surviving generator
/// proves `Q_(S) ≠ 0` only when `S` is maximally relevant, since then units of
/// every degree move it into degree zero.
pub fn is_negligible_on_family(q: &GradedModule, family: &RelevantFamily) -> Result<NegligibilityReport> {
    if **family.ring() != *q.ring {
        return Err(Error::RingMismatch);
    }
    let n = q.ring.nvars();
    let mut charts = Vec::with_capacity(family.len());
    for (name, s) in family.names().iter().zip(family.members()) {
        let mp = ModulePotion::new(q.clone(), PotionRing::new(s.clone()))?;
        let killed = (0..q.rank())
            .map(|i| {
                let mut v = vec![Polynomial::zero(n); q.rank()];
                v[i] = Polynomial::one(n);
                mp.kills(&v)
            })
            .collect();
        charts.push(ChartNegligibility {
            name: name.clone(),
            killed,
            maximally_relevant: s.is_maximally_relevant(),
        });
    }
    let failing: Vec<&ChartNegligibility> = charts.iter().filter(|c| c.killed.iter().any(|k| !k)).collect();
    let result = if failing.is_empty() {
        Negligibility::Negligible
    } else if failing.iter().any(|c| c.maximally_relevant) {
        Negligibility::NotNegligible
    } else {
        Negligibility::Inconclusive
    };
    Ok(NegligibilityReport { charts, result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::submonoid::HomogeneousSubmonoid;
    use proptest::prelude::*;

    fn ring(degs: &[i64]) -> Arc<GradedRing> {
        let g = FgAbelianGroup::free(1);
        let vars = degs
            .iter()
            .zip(["x", "y"])
            .map(|(d, n)| (n.to_string(), g.element_i64(&[*d]).unwrap()))
            .collect();
        Arc::new(GradedRing::new(g, vars, vec![]).unwrap())
    }

    fn potion(r: &Arc<GradedRing>, gens: &[&str]) -> Arc<PotionRing> {
        PotionRing::new(HomogeneousSubmonoid::new(r.clone(), gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap())
    }

    fn p1_family(r: &Arc<GradedRing>) -> RelevantFamily {
        let members = ["x", "y"]
            .iter()
            .map(|g| (g.to_string(), potion(r, &[g]).submonoid().clone()))
            .collect();
        RelevantFamily::new(r.clone(), members).unwrap()
    }

    fn deg(r: &GradedRing, d: i64) -> GroupElement {
        r.group().element_i64(&[d]).unwrap()
    }

    #[test]
    fn shifts_compose_and_cancel() {
        let r = ring(&[1, 1]);
        let q = GradedModule::free(r.clone(), vec![deg(&r, 0)]);
        assert_eq!(q.shift(&deg(&r, 0)).module(), q);
        assert_eq!(q.shift(&deg(&r, 2)).shift(&deg(&r, -2)).module(), q);
        assert_eq!(q.shift(&deg(&r, 3)).module().gen_degrees(), &[deg(&r, -3)]);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let r = ring(&[1, 1]);
        let bad = GradedModule::cyclic(r.clone(), vec![r.parse("x + y^2").unwrap()]);
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
        let mixed = GradedModule::new(
            r.clone(),
            vec![deg(&r, 0), deg(&r, 0)],
            vec![vec![r.parse("x").unwrap(), r.parse("y^2").unwrap()]],
        );
        assert!(matches!(mixed, Err(Error::InvalidModule(_))));
    }

    #[test]
    fn quotient_by_maximal_ideal_dies_on_charts() {
        let r = ring(&[1, 1]);
        let q = GradedModule::cyclic(r.clone(), vec![r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        let mp = ModulePotion::new(q.clone(), potion(&r, &["x"])).unwrap();
        let a = mp.element(vec![r.parse("y").unwrap()], vec![1]).unwrap();
        assert!(a.is_zero());
        let rep = is_negligible_on_family(&q, &p1_family(&r)).unwrap();
        assert_eq!(rep.result, Negligibility::Negligible);
        let free = GradedModule::free(r.clone(), vec![deg(&r, 0)]);
        let rep = is_negligible_on_family(&free, &p1_family(&r)).unwrap();
        assert_eq!(rep.result, Negligibility::NotNegligible);
        let zero = GradedModule::zero_module(r.clone());
        assert_eq!(is_negligible_on_family(&zero, &p1_family(&r)).unwrap().result, Negligibility::Negligible);
    }

    #[test]
    fn negligibility_is_monotone() {
        let r = ring(&[1, 1]);
        let q = GradedModule::cyclic(r.clone(), vec![r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        let fam = p1_family(&r);
        for idx in [vec![0], vec![1], vec![]] {
            let sub = fam.subfamily(&idx).unwrap();
            assert_eq!(is_negligible_on_family(&q, &sub).unwrap().result, Negligibility::Negligible);
        }
    }

    #[test]
    fn twist_on_projective_line() {
        let r = ring(&[1, 1]);
        let s = potion(&r, &["x"]);
        let t = twist_generator(&s, &deg(&r, 1), &CheckConfig::default()).unwrap();
        assert_eq!(t.unit.to_text(&s), "(x)/(1)");
        assert!(t.inverse_verified);
        assert_eq!(t.verdict(), Verdict::Pass);
        let t0 = twist_generator(&s, &deg(&r, 0), &CheckConfig::default()).unwrap();
        assert_eq!(t0.unit.to_text(&s), "(1)/(1)");
    }

    #[test]
    fn twist_on_weighted_line() {
        let r = ring(&[2, 3]);
        let s = potion(&r, &["x", "y"]);
        let t = twist_generator(&s, &deg(&r, 1), &CheckConfig::default()).unwrap();
        assert_eq!(t.unit.to_text(&s), "(y)/(x)");
        assert_eq!(t.unit.degree, deg(&r, 1));
        assert_eq!(t.verdict(), Verdict::Pass);
        let not_max = potion(&r, &["x"]);
        assert!(matches!(
            twist_generator(&not_max, &deg(&r, 1), &CheckConfig::default()),
            Err(Error::NotMaximallyRelevant(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn free_module_matches_potion(seed in any::<u64>()) {
            let r = ring(&[1, 1]);
            let s = potion(&r, &["x", "x + y"]);
            let mp = ModulePotion::new(GradedModule::free(r.clone(), vec![deg(&r, 0)]), s.clone()).unwrap();
            let mut sampler = Sampler::new(seed);
            let a = sampler.potion_element(&s);
            let b = if seed % 2 == 0 { sampler.potion_element(&s) } else { &a + &s.zero() };
            let ma = mp.element(vec![a.num().clone()], a.witness().to_vec()).unwrap();
            let mb = mp.element(vec![b.num().clone()], b.witness().to_vec()).unwrap();
            prop_assert_eq!(module_potion_eq(&ma, &mb).unwrap(), a.equals(&b));
        }

        #[test]
        fn shift_round_trip(a in -5i64..5, b in -5i64..5) {
            let r = ring(&[1, 1]);
            let q = GradedModule::cyclic(r.clone(), vec![r.parse("x").unwrap()]).unwrap();
            let back = q.shift(&deg(&r, a)).shift(&deg(&r, b)).shift(&deg(&r, -a - b)).module();
            prop_assert_eq!(back, q);
        }
    }
}
