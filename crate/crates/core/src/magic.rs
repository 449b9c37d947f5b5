//! Localization certificates between potions.
//!
//! For a relevant `S` and a finitely generated `T`, each generator `t` of `T`
//! gets data `(n, s, s′)` with `s, s′ ∈ S̄` and `deg(tⁿ) = deg(s) − deg(s′)`.
//! The elements `e_t = tⁿ·s′/s` of `A_(S)` become invertible in `A_(ST)`, and
//! `A_(ST)` is the localization of `A_(S)` at them. This module builds both
//! directions of that isomorphism explicitly.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::abelian::GroupElement;
use crate::error::{Error, Result};
use crate::graded::HomogeneousElement;
use crate::poly::{Ideal, Polynomial};
use crate::potion::{equiv_bar_potion, potion_map_into, BarForward, PotionElement, PotionMorphism, PotionRing, Rewrite};
use crate::sample::Sampler;
use crate::submonoid::{BarSubmonoid, HomogeneousSubmonoid};
use crate::verdict::{CheckConfig, Verdict};

/// Data for one generator `t` of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotionGenEntry {
    /// Index of `t` among the generators of `T`.
    pub index: usize,
    pub element: HomogeneousElement,
    pub n: u32,
    /// Exponents of `s` over the divisor generators of `S̄`.
    pub s: Vec<u32>,
    /// Exponents of `s′` over the divisor generators of `S̄`.
    pub s_prime: Vec<u32>,
    pub i: GroupElement,
    pub i_prime: GroupElement,
}

#[derive(Clone, Debug)]
pub struct PotionGen {
    base: HomogeneousSubmonoid,
    bar: BarSubmonoid,
    t: HomogeneousSubmonoid,
    entries: Vec<PotionGenEntry>,
}

impl PotionGen {
    /// For each generator of `T`, the least admissible `n` and the canonical
    /// difference representation of `n·deg(t)`.
    pub fn find(s: &HomogeneousSubmonoid, t: &HomogeneousSubmonoid) -> Result<Self> {
        check_relevant(s)?;
        let group = s.ring().group();
        let bar = s.bar();
        let bound = group
            .torsion_exponent(&bar.deg_group())
            .ok_or_else(|| Error::Internal("relevant submonoid with infinite exponent".into()))?;
        let bound = bound
            .to_u32()
            .ok_or_else(|| Error::Internal("torsion exponent exceeds u32".into()))?;
        let mut ns = Vec::with_capacity(t.len());
        for g in t.generators() {
            let n = (1..=bound)
                .find(|&n| represent(&bar, &g.degree().scale(&BigInt::from(n))).is_some())
                .ok_or_else(|| Error::Internal(format!("no n ≤ {bound} for {}", s.ring().display(g.poly()))))?;
            ns.push(n);
        }
        Self::from_exponents(s, t, &ns)
    }

    /// Uses the given `n` for each generator of `T`.
    pub fn from_exponents(s: &HomogeneousSubmonoid, t: &HomogeneousSubmonoid, ns: &[u32]) -> Result<Self> {
        check_relevant(s)?;
        if !s.same_ring(t) {
            return Err(Error::RingMismatch);
        }
        if ns.len() != t.len() {
            return Err(Error::Precondition(format!("{} exponents for {} generators", ns.len(), t.len())));
        }
        let bar = s.bar();
        let mut entries = Vec::with_capacity(t.len());
        for (index, (g, &n)) in t.generators().iter().zip(ns).enumerate() {
            if n == 0 {
                return Err(Error::Precondition("exponents must be positive".into()));
            }
            let target = g.degree().scale(&BigInt::from(n));
            let (plus, minus) = represent(&bar, &target).ok_or_else(|| {
                Error::Precondition(format!(
                    "{n}·deg({}) is not in the degree group of the divisor closure",
                    s.ring().display(g.poly())
                ))
            })?;
            entries.push(PotionGenEntry {
                index,
                element: g.clone(),
                n,
                i: bar.witness_degree(&plus),
                i_prime: bar.witness_degree(&minus),
                s: plus,
                s_prime: minus,
            });
        }
        let gen = Self {
            base: s.clone(),
            bar,
            t: t.clone(),
            entries,
        };
        gen.verify()?;
        Ok(gen)
    }

    /// Checks `deg(tⁿ) = i − i′`, `deg(s) = i`, `deg(s′) = i′`.
    pub fn verify(&self) -> Result<()> {
        for e in &self.entries {
            let tn = e.element.degree().scale(&BigInt::from(e.n));
            let ok = tn == &e.i - &e.i_prime
                && self.bar.witness_degree(&e.s) == e.i
                && self.bar.witness_degree(&e.s_prime) == e.i_prime;
            if !ok {
                return Err(Error::Internal(format!(
                    "degree equations fail for generator {}",
                    e.index
                )));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[PotionGenEntry] {
        &self.entries
    }

    pub fn base(&self) -> &HomogeneousSubmonoid {
        &self.base
    }

    pub fn bar(&self) -> &BarSubmonoid {
        &self.bar
    }

    pub fn t(&self) -> &HomogeneousSubmonoid {
        &self.t
    }

    /// The elements `e_t = tⁿ·s′/s` as elements of `A_(S)`.
    pub fn gen_submonoid(&self, s: &Arc<PotionRing>) -> Result<GenSubmonoidCert> {
        if !s.submonoid().same_ring(&self.base) || s.submonoid().len() != self.base.len() {
            return Err(Error::SubmonoidMismatch);
        }
        let (forward, _) = equiv_bar_potion(s)?;
        let bar_ring = forward.source().clone();
        let generators = self
            .entries
            .iter()
            .map(|e| {
                let num = e.element.pow(e.n).poly() * self.bar.element(&e.s_prime)?.poly();
                let in_bar = bar_ring.fraction(num, e.s.clone())?;
                forward.apply(&in_bar)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GenSubmonoidCert { generators })
    }
}

fn check_relevant(s: &HomogeneousSubmonoid) -> Result<()> {
    if s.is_relevant() {
        Ok(())
    } else {
        Err(Error::NotRelevant(s.describe()))
    }
}

fn represent(bar: &BarSubmonoid, target: &GroupElement) -> Option<(Vec<u32>, Vec<u32>)> {
    if bar.is_empty() {
        return target.is_zero().then(|| (Vec::new(), Vec::new()));
    }
    let group = bar.base().ring().group();
    group
        .represent_as_difference(target, &bar.degrees())
        .map(|d| (d.plus, d.minus))
}

/// The elements `e_t ∈ A_(S)`; each is a degree-balanced fraction by construction.
#[derive(Clone, Debug)]
pub struct GenSubmonoidCert {
    pub generators: Vec<PotionElement>,
}

/// `A_(S)[e_t⁻¹]`, elements `a / ∏ e_t^k`.
#[derive(Debug)]
pub struct LocalizedPotionRing {
    base: Arc<PotionRing>,
    gen: PotionGen,
    elements: Vec<PotionElement>,
    saturated: OnceLock<Ideal>,
}

#[derive(Clone, Debug)]
pub struct LocalizedElement {
    ring: Arc<LocalizedPotionRing>,
    numerator: PotionElement,
    exponents: Vec<u32>,
}

impl LocalizedPotionRing {
    pub fn new(base: Arc<PotionRing>, gen: PotionGen) -> Result<Arc<Self>> {
        let elements = gen.gen_submonoid(&base)?.generators;
        Ok(Arc::new(Self {
            base,
            gen,
            elements,
            saturated: OnceLock::new(),
        }))
    }

    pub fn base(&self) -> &Arc<PotionRing> {
        &self.base
    }

    pub fn potion_gen(&self) -> &PotionGen {
        &self.gen
    }

    /// The inverted elements `e_t`.
    pub fn inverted(&self) -> &[PotionElement] {
        &self.elements
    }

    /// Whether `c/d ∈ A_(S)` is killed by a power of `∏ e_t`.
    fn kills(&self, a: &PotionElement) -> bool {
        let ring = self.base.ring();
        if ring.ideal().is_zero_ideal() {
            return a.num().is_zero();
        }
        let sat = self.saturated.get_or_init(|| {
            let g = self
                .elements
                .iter()
                .fold(self.base.saturating_element(), |acc, e| &acc * e.num());
            ring.ideal().saturate(&ring.reduce(&g))
        });
        sat.contains(&ring.reduce(a.num()))
    }

    pub fn element(self: &Arc<Self>, numerator: PotionElement, exponents: Vec<u32>) -> Result<LocalizedElement> {
        if !self.base.same_as(numerator.potion_ring()) {
            return Err(Error::SubmonoidMismatch);
        }
        if exponents.len() != self.elements.len() {
            return Err(Error::Witness(format!(
                "{} exponents for {} inverted elements",
                exponents.len(),
                self.elements.len()
            )));
        }
        Ok(LocalizedElement {
            ring: self.clone(),
            numerator,
            exponents,
        })
    }

    pub fn from_base(self: &Arc<Self>, a: PotionElement) -> Result<LocalizedElement> {
        let k = self.elements.len();
        self.element(a, vec![0; k])
    }

    /// `1 / e_t`.
    pub fn inverse_of_generator(self: &Arc<Self>, t: usize) -> LocalizedElement {
        let mut exps = vec![0; self.elements.len()];
        exps[t] = 1;
        self.element(self.base.one(), exps).expect("shapes agree")
    }

    fn e_power(&self, exps: &[u32]) -> PotionElement {
        self.elements
            .iter()
            .zip(exps)
            .fold(self.base.one(), |acc, (e, &k)| &acc * &e.pow(k))
    }
}

impl LocalizedElement {
    pub fn numerator(&self) -> &PotionElement {
        &self.numerator
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    fn check_same(&self, other: &LocalizedElement) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::SubmonoidMismatch)
        }
    }

    pub fn try_eq(&self, other: &LocalizedElement) -> Result<bool> {
        self.check_same(other)?;
        let lhs = &self.numerator * &self.ring.e_power(&other.exponents);
        let rhs = &other.numerator * &self.ring.e_power(&self.exponents);
        Ok(self.ring.kills(&(&lhs - &rhs)))
    }

    pub fn equals(&self, other: &LocalizedElement) -> bool {
        self.try_eq(other).expect("elements of different localizations")
    }

    pub fn try_add(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check_same(other)?;
        let num = &(&self.numerator * &self.ring.e_power(&other.exponents))
            + &(&other.numerator * &self.ring.e_power(&self.exponents));
        Ok(LocalizedElement {
            ring: self.ring.clone(),
            numerator: num,
            exponents: add(&self.exponents, &other.exponents),
        })
    }

    pub fn try_mul(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check_same(other)?;
        Ok(LocalizedElement {
            ring: self.ring.clone(),
            numerator: &self.numerator * &other.numerator,
            exponents: add(&self.exponents, &other.exponents),
        })
    }

    pub fn neg(&self) -> LocalizedElement {
        LocalizedElement {
            ring: self.ring.clone(),
            numerator: self.numerator.neg(),
            exponents: self.exponents.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        format!("{} / e^{:?}", self.numerator.to_text(), self.exponents)
    }
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Both directions of `A_(S)[e⁻¹] ≅ A_(ST)`.
pub struct LocalizationEquiv {
    localized: Arc<LocalizedPotionRing>,
    st: Arc<PotionRing>,
    to_st: Rewrite,
    /// `1/φ(e_t)` in `A_(ST)`.
    inverses: Vec<PotionElement>,
    bar_forward: BarForward,
    /// For each generator of `ST`: the entry index if it is a new generator from `T`.
    t_positions: Vec<Option<usize>>,
}

/// Builds `A_(S)[e⁻¹] ⇄ A_(ST)` from a verified [`PotionGen`].
pub fn localization_equiv_potion(s: &Arc<PotionRing>, gen: PotionGen) -> Result<LocalizationEquiv> {
    gen.verify()?;
    let base = s.submonoid();
    let st_sub = base.product(gen.t())?;
    let st = PotionRing::new(st_sub);
    let to_st = potion_map_into(s, &st)?;
    let localized = LocalizedPotionRing::new(s.clone(), gen)?;
    let (bar_forward, _) = equiv_bar_potion(s)?;
    let gen = &localized.gen;
    let bar = &gen.bar;
    let st_sub = st.submonoid();

    let mut inverses = Vec::with_capacity(gen.entries.len());
    for e in &gen.entries {
        // e_t = tⁿ·s′/s. With a lift σ = u·s′·c′ ∈ S, the inverse is u·s·c′/(tⁿ·σ).
        let lift = bar.lift_to_base(&e.s_prime);
        let num = (bar.element(&e.s)?.poly() * bar.element(&lift.cofactor)?.poly()).scalar_mul(&lift.unit);
        let mut witness = vec![0u32; st_sub.len()];
        witness[..base.len()].copy_from_slice(&lift.base);
        let p = st_sub
            .position(e.element.poly())
            .ok_or_else(|| Error::Internal("generator of T missing from ST".into()))?;
        witness[p] += e.n;
        inverses.push(st.fraction(num, witness)?);
    }

    let t_positions = (0..st_sub.len())
        .map(|p| {
            if p < base.len() {
                None
            } else {
                let g = &st_sub.generators()[p];
                gen.entries.iter().position(|e| e.element.poly() == g.poly())
            }
        })
        .collect();

    Ok(LocalizationEquiv {
        localized,
        st,
        to_st,
        inverses,
        bar_forward,
        t_positions,
    })
}

impl LocalizationEquiv {
    pub fn localized(&self) -> &Arc<LocalizedPotionRing> {
        &self.localized
    }

    pub fn st(&self) -> &Arc<PotionRing> {
        &self.st
    }

    /// `1/φ(e_t)` in `A_(ST)`.
    pub fn inverses(&self) -> &[PotionElement] {
        &self.inverses
    }

    /// The image of `e_t` in `A_(ST)`.
    pub fn image_of_generator(&self, t: usize) -> Result<PotionElement> {
        self.to_st.apply(&self.localized.elements[t])
    }

    /// `a / ∏ e_t^k ↦ φ(a) · ∏ (1/φ(e_t))^k`.
    pub fn forward(&self, x: &LocalizedElement) -> Result<PotionElement> {
        if !Arc::ptr_eq(&x.ring, &self.localized) {
            return Err(Error::SubmonoidMismatch);
        }
        let mut out = self.to_st.apply(&x.numerator)?;
        for (inv, &k) in self.inverses.iter().zip(&x.exponents) {
            if k > 0 {
                out = out.try_mul(&inv.pow(k))?;
            }
        }
        Ok(out)
    }

    /// Pads each `t`-exponent `b` of the denominator to `q·n` and trades `tⁿ`
    /// for `e_t·s/s′`, landing in `A_(S̄)` and then in `A_(S)`.
    pub fn backward(&self, y: &PotionElement) -> Result<LocalizedElement> {
        if !self.st.same_as(y.potion_ring()) {
            return Err(Error::SubmonoidMismatch);
        }
        let gen = &self.localized.gen;
        let bar = &gen.bar;
        let nbase = gen.base.len();
        let w = y.witness();
        let (unit, mut bar_exps) = bar.express_base(&w[..nbase]);
        let mut num = y.num().scalar_mul(&unit.recip());
        let mut q = vec![0u32; gen.entries.len()];
        for (p, entry) in self.t_positions.iter().enumerate() {
            let Some(k) = *entry else {
                // A generator of ST beyond S that is not in T cannot occur.
                if p >= nbase {
                    return Err(Error::Internal("unmatched generator of ST".into()));
                }
                continue;
            };
            let b = w[p];
            if b == 0 {
                continue;
            }
            let e = &gen.entries[k];
            let qk = b.div_ceil(e.n);
            let c = qk * e.n - b;
            q[k] += qk;
            num = &num * &e.element.pow(c).poly().clone();
            num = &num * bar.element(&e.s_prime)?.pow(qk).poly();
            for (acc, &x) in bar_exps.iter_mut().zip(&e.s) {
                *acc += x * qk;
            }
        }
        let bar_ring = self.bar_forward.source();
        let in_bar = bar_ring.fraction(num, bar_exps)?;
        let numerator = self.bar_forward.apply(&in_bar)?;
        self.localized.element(numerator, q)
    }
}

/// Failures of `backward∘forward = id` and `forward∘backward = id` on samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripReport {
    pub samples: usize,
    pub backward_forward_failures: usize,
    pub forward_backward_failures: usize,
    pub verdict: Verdict,
}

pub fn round_trip_check(eq: &LocalizationEquiv, config: &CheckConfig) -> Result<RoundTripReport> {
    let loc = eq.localized();
    let mut sampler = Sampler::new(config.seed);
    let mut bf = 0;
    for _ in 0..config.samples {
        let a = sampler.potion_element(loc.base());
        let exps = sampler.witness(loc.inverted().len());
        let x = loc.element(a, exps)?;
        if !eq.backward(&eq.forward(&x)?)?.equals(&x) {
            bf += 1;
        }
    }
    let mut fb = 0;
    for y in sampler.potion_elements(eq.st(), config.samples) {
        if !eq.forward(&eq.backward(&y)?)?.equals(&y) {
            fb += 1;
        }
    }
    Ok(RoundTripReport {
        samples: config.samples,
        backward_forward_failures: bf,
        forward_backward_failures: fb,
        verdict: Verdict::from_bool(bf == 0 && fb == 0),
    })
}

/// Ring-level content of the open immersion `D†(ST) ⊆ D†(S)`: `A_(ST)` is the
/// localization of `A_(S)` at the listed elements.
#[derive(Clone, Debug)]
pub struct OpenImmersionCertificate {
    pub potion_gen: PotionGen,
    pub elements: Vec<PotionElement>,
    /// Per element: an inverse inside `A_(S)` was found and verified.
    pub unit_in_base: Vec<bool>,
    pub verdict: Verdict,
}

pub fn open_immersion_certificate(s: &Arc<PotionRing>, t: &HomogeneousSubmonoid) -> Result<OpenImmersionCertificate> {
    let gen = PotionGen::find(s.submonoid(), t)?;
    let elements = gen.gen_submonoid(s)?.generators;
    let base = s.submonoid();
    let bar = &gen.bar;
    let mut unit_in_base = Vec::with_capacity(elements.len());
    for (e, el) in gen.entries.iter().zip(&elements) {
        // When t ∈ S the inverse u·s·c′/(tⁿ·σ) already lives in A_(S).
        let verified = match base.position(e.element.poly()) {
            Some(p) => {
                let lift = bar.lift_to_base(&e.s_prime);
                let num = (bar.element(&e.s)?.poly() * bar.element(&lift.cofactor)?.poly()).scalar_mul(&lift.unit);
                let mut witness = lift.base.clone();
                witness[p] += e.n;
                let inv = s.fraction(num, witness)?;
                (el * &inv).is_one()
            }
            None => false,
        };
        unit_in_base.push(verified);
    }
    // Each e_t must become invertible after passing to A_(ST).
    let equiv = localization_equiv_potion(s, gen.clone())?;
    let mut ok = true;
    for (k, inv) in equiv.inverses().iter().enumerate() {
        ok &= (&equiv.image_of_generator(k)? * inv).is_one();
    }
    Ok(OpenImmersionCertificate {
        potion_gen: gen,
        elements,
        unit_in_base,
        verdict: Verdict::from_bool(ok),
    })
}

/// Per-pair result of [`sum_cover_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCompatibility {
    pub i: usize,
    pub j: usize,
    pub samples: usize,
    pub mismatches: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct SumCoverReport {
    pub sum: Polynomial,
    pub pairs: Vec<PairCompatibility>,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

/// For `g = f₁ + … + fₙ`, checks that `A_(g) → A_(fᵢg) → A_(fᵢfⱼg)` and
/// `A_(g) → A_(fⱼg) → A_(fᵢfⱼg)` agree on sampled elements.
pub fn sum_cover_check(
    ring: &Arc<crate::graded::GradedRing>,
    f: &[Polynomial],
    config: &CheckConfig,
) -> Result<SumCoverReport> {
    if f.is_empty() {
        return Err(Error::Precondition("at least one element is required".into()));
    }
    let mut degree: Option<GroupElement> = None;
    let mut singles = Vec::with_capacity(f.len());
    for p in f {
        let s = HomogeneousSubmonoid::new(ring.clone(), vec![p.clone()])?;
        let d = s.generators()[0].degree().clone();
        match &degree {
            None => degree = Some(d),
            Some(e) if *e != d => {
                return Err(Error::DegreeMismatch(format!(
                    "{} has degree {d}, expected {e}",
                    ring.display(p)
                )))
            }
            _ => {}
        }
        check_relevant(&s)?;
        singles.push(s);
    }
    let g = f.iter().fold(ring.zero(), |acc, p| &acc + p);
    if ring.is_zero(&g) {
        return Err(Error::Precondition("the sum of the elements is zero".into()));
    }
    let g_sub = HomogeneousSubmonoid::new(ring.clone(), vec![g.clone()])?;
    let a_g = PotionRing::new(g_sub.clone());
    let fg: Vec<Arc<PotionRing>> = singles
        .iter()
        .map(|s| Ok(PotionRing::new(g_sub.product(s)?)))
        .collect::<Result<_>>()?;
    let maps_g: Vec<Rewrite> = fg.iter().map(|t| potion_map_into(&a_g, t)).collect::<Result<_>>()?;

    let mut sampler = Sampler::new(config.seed);
    let samples = sampler.potion_elements(&a_g, config.samples);
    let mut pairs = Vec::new();
    for i in 0..f.len() {
        for j in (i + 1)..f.len() {
            let fij = PotionRing::new(fg[i].submonoid().product(&singles[j])?);
            let via_i = potion_map_into(&fg[i], &fij)?;
            let via_j = potion_map_into(&fg[j], &fij)?;
            let mut mismatches = 0;
            for a in &samples {
                let left = via_i.apply(&maps_g[i].apply(a)?)?;
                let right = via_j.apply(&maps_g[j].apply(a)?)?;
                if !left.equals(&right) {
                    mismatches += 1;
                }
            }
            pairs.push(PairCompatibility {
                i,
                j,
                samples: samples.len(),
                mismatches,
                verdict: Verdict::from_bool(mismatches == 0),
            });
        }
    }
    let mut warnings: Vec<String> = Vec::new();
    for w in singles.iter().flat_map(|s| s.warnings()).chain(g_sub.warnings()) {
        if !warnings.contains(w) {
            warnings.push(w.clone());
        }
    }
    Ok(SumCoverReport {
        sum: g,
        verdict: Verdict::all(pairs.iter().map(|p| p.verdict)),
        pairs,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::graded::GradedRing;

    fn ring(degs: &[i64]) -> Arc<GradedRing> {
        let g = FgAbelianGroup::free(1);
        let names = ["x", "y", "z"];
        let vars = degs
            .iter()
            .enumerate()
            .map(|(i, d)| (names[i].to_string(), g.element_i64(&[*d]).unwrap()))
            .collect();
        Arc::new(GradedRing::new(g, vars, vec![]).unwrap())
    }

    fn sub(r: &Arc<GradedRing>, gens: &[&str]) -> HomogeneousSubmonoid {
        HomogeneousSubmonoid::new(r.clone(), gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn projective_line_generator() {
        let r = ring(&[1, 1]);
        let gen = PotionGen::find(&sub(&r, &["x"]), &sub(&r, &["y"])).unwrap();
        let e = &gen.entries()[0];
        assert_eq!((e.n, e.s.clone(), e.s_prime.clone()), (1, vec![1], vec![0]));
        let s = PotionRing::new(sub(&r, &["x"]));
        let cert = gen.gen_submonoid(&s).unwrap();
        let y_over_x = s.fraction(r.parse("y").unwrap(), vec![1]).unwrap();
        assert!(cert.generators[0].equals(&y_over_x));
    }

    #[test]
    fn weighted_generator_needs_square() {
        let r = ring(&[2, 3]);
        let gen = PotionGen::find(&sub(&r, &["x"]), &sub(&r, &["y"])).unwrap();
        let e = &gen.entries()[0];
        assert_eq!((e.n, e.s.clone(), e.s_prime.clone()), (2, vec![3], vec![0]));
    }

    #[test]
    fn trivial_t_gives_empty_data() {
        let r = ring(&[1, 1]);
        let gen = PotionGen::find(&sub(&r, &["x"]), &HomogeneousSubmonoid::trivial(r.clone())).unwrap();
        assert!(gen.entries().is_empty());
    }

    #[test]
    fn irrelevant_base_rejected() {
        let g = FgAbelianGroup::free(2);
        let vars = vec![
            ("x".to_string(), g.element_i64(&[1, 0]).unwrap()),
            ("y".to_string(), g.element_i64(&[0, 1]).unwrap()),
        ];
        let r = Arc::new(GradedRing::new(g, vars, vec![]).unwrap());
        assert!(matches!(
            PotionGen::find(&sub(&r, &["x"]), &sub(&r, &["y"])),
            Err(Error::NotRelevant(_))
        ));
    }

    #[test]
    fn projective_line_localization() {
        let r = ring(&[1, 1]);
        let s = PotionRing::new(sub(&r, &["x"]));
        let gen = PotionGen::find(s.submonoid(), &sub(&r, &["y"])).unwrap();
        let eq = localization_equiv_potion(&s, gen).unwrap();
        let loc = eq.localized().clone();
        let u_inv = loc.inverse_of_generator(0);
        let x_over_y = eq.st().fraction(r.parse("x").unwrap(), vec![0, 1]).unwrap();
        assert!(eq.forward(&u_inv).unwrap().equals(&x_over_y));
        let u = loc.from_base(s.fraction(r.parse("y").unwrap(), vec![1]).unwrap()).unwrap();
        let one = loc.from_base(s.one()).unwrap();
        let u2_plus_1 = u.try_mul(&u).unwrap().try_add(&one).unwrap();
        for x in [&u, &u_inv, &u2_plus_1] {
            let back = eq.backward(&eq.forward(x).unwrap()).unwrap();
            assert!(back.equals(x), "{}", x.to_text());
        }
        let rep = round_trip_check(&eq, &CheckConfig::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn open_immersion_units_when_t_inside_s() {
        let r = ring(&[1, 1]);
        let s = PotionRing::new(sub(&r, &["x", "y"]));
        let cert = open_immersion_certificate(&s, &sub(&r, &["y"])).unwrap();
        assert_eq!(cert.unit_in_base, vec![true]);
        assert_eq!(cert.verdict, Verdict::Pass);
        let s = PotionRing::new(sub(&r, &["x"]));
        let cert = open_immersion_certificate(&s, &sub(&r, &["y"])).unwrap();
        assert_eq!(cert.elements.len(), 1);
        assert_eq!(cert.verdict, Verdict::Pass);
    }

    #[test]
    fn sum_cover_on_projective_line() {
        let r = ring(&[1, 1]);
        let f = vec![r.parse("x").unwrap(), r.parse("y").unwrap()];
        let rep = sum_cover_check(&r, &f, &CheckConfig::default()).unwrap();
        assert_eq!(rep.pairs.len(), 1);
        assert_eq!(rep.verdict, Verdict::Pass);
        let single = sum_cover_check(&r, &f[..1], &CheckConfig::default()).unwrap();
        assert!(single.pairs.is_empty());
        assert_eq!(single.verdict, Verdict::Pass);
        let w = ring(&[2, 3]);
        let mixed = vec![w.parse("x").unwrap(), w.parse("y").unwrap()];
        assert!(matches!(
            sum_cover_check(&w, &mixed, &CheckConfig::default()),
            Err(Error::DegreeMismatch(_))
        ));
    }
}
