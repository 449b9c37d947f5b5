//! Potion rings `A_(S)`: degree-zero fractions `num/den` with `den ∈ S`.
//!
//! Two fractions are equal when `n·d′ − n′·d` is killed by an element of `S`,
//! which is decided by membership in the saturation of the defining ideal at
//! the product of all generators of `S`. The saturation is computed once per
//! potion ring.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::abelian::GroupElement;
use crate::error::{Error, Result};
use crate::graded::{GradedRing, GradedRingHom};
use crate::poly::{Ideal, MonomialOrder, Polynomial, Rational};
use crate::submonoid::{BarSubmonoid, GeneratorSpec, HomogeneousSubmonoid};

/// A fraction whose numerator and denominator share one degree; the
/// denominator carries its exponent vector over the generators of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumDenSameDeg {
    pub deg: GroupElement,
    pub num: Polynomial,
    pub den: Polynomial,
    pub witness: Vec<u32>,
}

#[derive(Debug)]
pub struct PotionRing {
    submonoid: HomogeneousSubmonoid,
    saturated: OnceLock<Ideal>,
}

#[derive(Clone)]
pub struct PotionElement {
    ring: Arc<PotionRing>,
    repr: NumDenSameDeg,
}

impl PotionRing {
    pub fn new(submonoid: HomogeneousSubmonoid) -> Arc<Self> {
        Arc::new(Self {
            submonoid,
            saturated: OnceLock::new(),
        })
    }

    pub fn submonoid(&self) -> &HomogeneousSubmonoid {
        &self.submonoid
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.submonoid.ring()
    }

    /// Product of all generators of `S`.
    pub fn saturating_element(&self) -> Polynomial {
        let ring = self.ring();
        self.submonoid
            .generators()
            .iter()
            .fold(ring.one(), |acc, g| &acc * g.poly())
    }

    /// `I : g^∞` for the generator product `g`.
    pub fn saturated_ideal(&self) -> &Ideal {
        self.saturated.get_or_init(|| {
            let ideal = self.ring().ideal();
            if ideal.is_zero_ideal() {
                ideal.clone()
            } else {
                ideal.saturate(&self.ring().reduce(&self.saturating_element()))
            }
        })
    }

    /// Whether `z/1` vanishes after inverting `S`.
    pub fn kills(&self, z: &Polynomial) -> bool {
        let ring = self.ring();
        if ring.ideal().is_zero_ideal() {
            return z.is_zero();
        }
        let r = ring.reduce(z);
        r.is_zero() || self.saturated_ideal().contains(&r)
    }

    pub fn same_as(&self, other: &PotionRing) -> bool {
        std::ptr::eq(self, other)
            || (self.submonoid.same_ring(&other.submonoid)
                && self.submonoid.len() == other.submonoid.len()
                && self
                    .submonoid
                    .generators()
                    .iter()
                    .zip(other.submonoid.generators())
                    .all(|(a, b)| a.poly() == b.poly()))
    }

    /// `num / ∏ gⱼ^witness[j]`; `num` must have the degree of the denominator.
    pub fn fraction(self: &Arc<Self>, num: Polynomial, witness: Vec<u32>) -> Result<PotionElement> {
        let den = self.submonoid.element(&witness)?;
        let num = self.ring().homogeneous_of_degree(&num, den.degree())?;
        let (den, deg) = den.into_parts();
        Ok(PotionElement {
            ring: self.clone(),
            repr: NumDenSameDeg {
                deg,
                num: self.ring().reduce(num.poly()),
                den,
                witness,
            },
        })
    }

    /// Validates a serialized triple.
    pub fn from_triple(self: &Arc<Self>, t: NumDenSameDeg) -> Result<PotionElement> {
        let expected = self.submonoid.element(&t.witness)?;
        if !self.ring().equal(expected.poly(), &t.den) {
            return Err(Error::Witness(format!(
                "denominator {} is not the witnessed product {}",
                self.ring().display(&t.den),
                self.ring().display(expected.poly())
            )));
        }
        if *expected.degree() != t.deg {
            return Err(Error::DegreeMismatch(format!(
                "declared degree {} but denominator has degree {}",
                t.deg,
                expected.degree()
            )));
        }
        self.fraction(t.num, t.witness)
    }

    pub fn scalar(self: &Arc<Self>, c: Rational) -> PotionElement {
        let n = self.submonoid.len();
        self.fraction(Polynomial::constant(self.ring().nvars(), c), vec![0; n])
            .expect("constants have degree zero")
    }

    pub fn one(self: &Arc<Self>) -> PotionElement {
        self.scalar(Rational::one())
    }

    pub fn zero(self: &Arc<Self>) -> PotionElement {
        self.scalar(Rational::zero())
    }

    /// `h/1` for a homogeneous element of degree zero.
    pub fn embed_degree_zero(self: &Arc<Self>, h: &Polynomial) -> Result<PotionElement> {
        self.fraction(h.clone(), vec![0; self.submonoid.len()])
    }
}

impl PotionElement {
    pub fn potion_ring(&self) -> &Arc<PotionRing> {
        &self.ring
    }

    pub fn triple(&self) -> &NumDenSameDeg {
        &self.repr
    }

    pub fn num(&self) -> &Polynomial {
        &self.repr.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.repr.den
    }

    pub fn degree(&self) -> &GroupElement {
        &self.repr.deg
    }

    pub fn witness(&self) -> &[u32] {
        &self.repr.witness
    }

    fn check_same(&self, other: &PotionElement) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::SubmonoidMismatch)
        }
    }

    fn build(&self, deg: GroupElement, num: Polynomial, witness: Vec<u32>) -> PotionElement {
        let den = self
            .ring
            .submonoid
            .element(&witness)
            .expect("witness length preserved");
        debug_assert_eq!(*den.degree(), deg);
        let ring = self.ring.ring();
        let num = ring.reduce(&num);
        debug_assert!(ring.homogeneous_of_degree(&num, &deg).is_ok());
        PotionElement {
            ring: self.ring.clone(),
            repr: NumDenSameDeg {
                deg,
                num,
                den: den.into_parts().0,
                witness,
            },
        }
    }

    pub fn try_eq(&self, other: &PotionElement) -> Result<bool> {
        self.check_same(other)?;
        let z = &(&self.repr.num * &other.repr.den) - &(&other.repr.num * &self.repr.den);
        Ok(self.ring.kills(&z))
    }

    /// Equality in the potion; panics if the operands live over different submonoids.
    pub fn equals(&self, other: &PotionElement) -> bool {
        self.try_eq(other).expect("potion elements over different submonoids")
    }

    pub fn is_zero(&self) -> bool {
        self.ring.kills(&self.repr.num)
    }

    pub fn is_one(&self) -> bool {
        self.ring.kills(&(&self.repr.num - &self.repr.den))
    }

    pub fn try_add(&self, other: &PotionElement) -> Result<PotionElement> {
        self.check_same(other)?;
        let num = &(&self.repr.num * &other.repr.den) + &(&other.repr.num * &self.repr.den);
        Ok(self.build(
            &self.repr.deg + &other.repr.deg,
            num,
            add_witness(&self.repr.witness, &other.repr.witness),
        ))
    }

    pub fn try_sub(&self, other: &PotionElement) -> Result<PotionElement> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &PotionElement) -> Result<PotionElement> {
        self.check_same(other)?;
        Ok(self.build(
            &self.repr.deg + &other.repr.deg,
            &self.repr.num * &other.repr.num,
            add_witness(&self.repr.witness, &other.repr.witness),
        ))
    }

    pub fn neg(&self) -> PotionElement {
        PotionElement {
            ring: self.ring.clone(),
            repr: NumDenSameDeg {
                num: -&self.repr.num,
                ..self.repr.clone()
            },
        }
    }

    pub fn pow(&self, k: u32) -> PotionElement {
        (0..k).fold(self.ring.one(), |acc, _| acc.try_mul(self).expect("same ring"))
    }

    pub fn scale(&self, c: &Rational) -> PotionElement {
        PotionElement {
            ring: self.ring.clone(),
            repr: NumDenSameDeg {
                num: self.repr.num.scalar_mul(c),
                ..self.repr.clone()
            },
        }
    }

    /// `num/den` written with the ring's variable names.
    pub fn to_text(&self) -> String {
        let ring = self.ring.ring();
        format!("({})/({})", ring.display(&self.repr.num), ring.display(&self.repr.den))
    }
}

fn add_witness(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl fmt::Debug for PotionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [deg {}, witness {:?}]", self.to_text(), self.repr.deg, self.repr.witness)
    }
}

impl std::ops::Add for &PotionElement {
    type Output = PotionElement;
    fn add(self, rhs: &PotionElement) -> PotionElement {
        self.try_add(rhs).expect("potion elements over different submonoids")
    }
}

impl std::ops::Sub for &PotionElement {
    type Output = PotionElement;
    fn sub(self, rhs: &PotionElement) -> PotionElement {
        self.try_sub(rhs).expect("potion elements over different submonoids")
    }
}

impl std::ops::Mul for &PotionElement {
    type Output = PotionElement;
    fn mul(self, rhs: &PotionElement) -> PotionElement {
        self.try_mul(rhs).expect("potion elements over different submonoids")
    }
}

impl std::ops::Neg for &PotionElement {
    type Output = PotionElement;
    fn neg(self) -> PotionElement {
        PotionElement::neg(self)
    }
}

/// A ring homomorphism between potion rings.
pub trait PotionMorphism: Send + Sync {
    fn source(&self) -> &Arc<PotionRing>;
    fn target(&self) -> &Arc<PotionRing>;
    fn apply(&self, a: &PotionElement) -> Result<PotionElement>;

    fn check_source(&self, a: &PotionElement) -> Result<()> {
        if self.source().same_as(a.potion_ring()) {
            Ok(())
        } else {
            Err(Error::SubmonoidMismatch)
        }
    }
}

/// `source generator j = unit · ∏ target generatorₖ^exponents[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCertificate {
    pub unit: Rational,
    pub exponents: Vec<u32>,
}

/// The map `a/s ↦ a/s` induced by an inclusion of submonoids, realized by
/// rewriting denominators through verified certificates.
#[derive(Clone, Debug)]
pub struct Rewrite {
    source: Arc<PotionRing>,
    target: Arc<PotionRing>,
    certificates: Vec<GeneratorCertificate>,
}

impl Rewrite {
    pub fn new(source: Arc<PotionRing>, target: Arc<PotionRing>, certificates: Vec<GeneratorCertificate>) -> Result<Self> {
        let (s, t) = (source.submonoid(), target.submonoid());
        if !s.same_ring(t) {
            return Err(Error::RingMismatch);
        }
        if certificates.len() != s.len() {
            return Err(Error::Certificate(format!(
                "{} certificates for {} generators",
                certificates.len(),
                s.len()
            )));
        }
        let ring = s.ring();
        for (g, c) in s.generators().iter().zip(&certificates) {
            let rhs = t.element(&c.exponents)?.poly().scalar_mul(&c.unit);
            if c.unit.is_zero() || !ring.equal(g.poly(), &rhs) {
                return Err(Error::Certificate(format!(
                    "{} is not {} times the certified product",
                    ring.display(g.poly()),
                    crate::poly::rational_text(&c.unit)
                )));
            }
        }
        Ok(Self {
            source,
            target,
            certificates,
        })
    }

    /// Searches certificates expressing every generator of the source over the
    /// generators of the target, then verifies them.
    pub fn find(source: Arc<PotionRing>, target: Arc<PotionRing>) -> Result<Self> {
        let certs = find_certificates(source.submonoid(), target.submonoid())?;
        Self::new(source, target, certs)
    }

    pub fn certificates(&self) -> &[GeneratorCertificate] {
        &self.certificates
    }
}

impl PotionMorphism for Rewrite {
    fn source(&self) -> &Arc<PotionRing> {
        &self.source
    }

    fn target(&self) -> &Arc<PotionRing> {
        &self.target
    }

    fn apply(&self, a: &PotionElement) -> Result<PotionElement> {
        self.check_source(a)?;
        let mut witness = vec![0u32; self.target.submonoid().len()];
        let mut unit = Rational::one();
        for (c, &w) in self.certificates.iter().zip(a.witness()) {
            if w == 0 {
                continue;
            }
            unit = &unit * &num_traits::pow(c.unit.clone(), w as usize);
            for (acc, &e) in witness.iter_mut().zip(&c.exponents) {
                *acc += e * w;
            }
        }
        self.target.fraction(a.num().scalar_mul(&unit.recip()), witness)
    }
}

fn find_certificates(s: &HomogeneousSubmonoid, t: &HomogeneousSubmonoid) -> Result<Vec<GeneratorCertificate>> {
    if !s.same_ring(t) {
        return Err(Error::RingMismatch);
    }
    let ring = s.ring();
    // Common divisor list across both factorizations.
    let mut divisors: Vec<Polynomial> = Vec::new();
    let mut vectorize = |f: &crate::submonoid::Factorization| -> Vec<(usize, u32)> {
        f.factors
            .iter()
            .map(|(h, k)| {
                let idx = divisors.iter().position(|d| d == h.poly()).unwrap_or_else(|| {
                    divisors.push(h.poly().clone());
                    divisors.len() - 1
                });
                (idx, *k)
            })
            .collect()
    };
    let s_sparse: Vec<Vec<(usize, u32)>> = s.factorizations().iter().map(&mut vectorize).collect();
    let t_sparse: Vec<Vec<(usize, u32)>> = t.factorizations().iter().map(&mut vectorize).collect();
    let dense = |sp: &[(usize, u32)]| {
        let mut v = vec![0u32; divisors.len()];
        for &(i, k) in sp {
            v[i] += k;
        }
        v
    };
    let t_vecs: Vec<Vec<u32>> = t_sparse.iter().map(|v| dense(v)).collect();

    let mut out = Vec::with_capacity(s.len());
    for (j, g) in s.generators().iter().enumerate() {
        let goal = dense(&s_sparse[j]);
        let mut budget = 200_000usize;
        let mut exps = vec![0u32; t.len()];
        if !cover(&goal, &t_vecs, &mut exps, &mut budget) {
            return Err(Error::Certificate(format!(
                "{} is not a product of generators of {}",
                ring.display(g.poly()),
                t.describe()
            )));
        }
        let product = ring.reduce(t.element(&exps)?.poly());
        let target = ring.reduce(g.poly());
        let unit = match (
            target.leading_term(MonomialOrder::GrevLex),
            product.leading_term(MonomialOrder::GrevLex),
        ) {
            (Some((_, a)), Some((_, b))) => a / b,
            _ => {
                return Err(Error::Certificate(format!(
                    "certified product for {} vanishes",
                    ring.display(g.poly())
                )))
            }
        };
        out.push(GeneratorCertificate { unit, exponents: exps });
    }
    Ok(out)
}

/// Exact cover of the multiplicity vector `goal` by nonnegative combinations of `parts`.
fn cover(goal: &[u32], parts: &[Vec<u32>], exps: &mut [u32], budget: &mut usize) -> bool {
    let Some(i) = goal.iter().position(|&e| e > 0) else {
        return true;
    };
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    for (k, p) in parts.iter().enumerate() {
        if p[i] == 0 || p.iter().zip(goal).any(|(a, b)| a > b) {
            continue;
        }
        let rest: Vec<u32> = goal.iter().zip(p).map(|(a, b)| a - b).collect();
        exps[k] += 1;
        if cover(&rest, parts, exps, budget) {
            return true;
        }
        exps[k] -= 1;
    }
    false
}

/// `A_(S̄) → A_(S)`: `a/d ↦ a·c/s` for a lift `s = unit·d·c` of `d` into `S`.
#[derive(Clone, Debug)]
pub struct BarForward {
    bar: BarSubmonoid,
    source: Arc<PotionRing>,
    target: Arc<PotionRing>,
}

impl PotionMorphism for BarForward {
    fn source(&self) -> &Arc<PotionRing> {
        &self.source
    }

    fn target(&self) -> &Arc<PotionRing> {
        &self.target
    }

    fn apply(&self, a: &PotionElement) -> Result<PotionElement> {
        self.check_source(a)?;
        let lift = self.bar.lift_to_base(a.witness());
        let cofactor = self.bar.element(&lift.cofactor)?;
        let num = (a.num() * cofactor.poly()).scalar_mul(&lift.unit);
        self.target.fraction(num, lift.base)
    }
}

/// The potion of `Ψ(S)` together with the generator correspondence.
#[derive(Clone, Debug)]
pub struct InducedByHom {
    hom: GradedRingHom,
    positions: Vec<usize>,
    source: Arc<PotionRing>,
    target: Arc<PotionRing>,
}

impl InducedByHom {
    /// `A_(S) → B_(Ψ(S))`, failing when some generator maps to zero.
    pub fn new(hom: GradedRingHom, source: Arc<PotionRing>) -> Result<Self> {
        let s = source.submonoid();
        if **s.ring() != **hom.source() {
            return Err(Error::RingMismatch);
        }
        let (image, positions) = image_submonoid(&hom, s)?;
        Ok(Self {
            hom,
            positions,
            source,
            target: PotionRing::new(image),
        })
    }

    pub fn hom(&self) -> &GradedRingHom {
        &self.hom
    }
}

/// `Ψ(S)`: images of the generators (deduplicated) and of their factors.
pub fn image_submonoid(hom: &GradedRingHom, s: &HomogeneousSubmonoid) -> Result<(HomogeneousSubmonoid, Vec<usize>)> {
    let target = hom.target();
    let mut specs: Vec<GeneratorSpec> = Vec::new();
    let mut seen: Vec<Polynomial> = Vec::new();
    let mut positions = Vec::with_capacity(s.len());
    for (g, f) in s.generators().iter().zip(s.factorizations()) {
        let img = hom.apply(g.poly());
        if img.is_zero() {
            return Err(Error::Precondition(format!(
                "generator {} maps to zero, so the image submonoid contains 0",
                s.ring().display(g.poly())
            )));
        }
        if let Some(p) = seen.iter().position(|q| *q == img) {
            positions.push(p);
            continue;
        }
        let mut factors: Vec<(Polynomial, u32)> = f
            .factors
            .iter()
            .map(|(h, k)| (hom.apply(h.poly()), *k))
            .collect();
        factors.push((Polynomial::constant(target.nvars(), f.unit.clone()), 1));
        positions.push(seen.len());
        seen.push(img.clone());
        specs.push(GeneratorSpec {
            poly: img,
            factors: Some(factors),
        });
    }
    let image = HomogeneousSubmonoid::with_factorizations(target.clone(), specs)?;
    Ok((image, positions))
}

impl PotionMorphism for InducedByHom {
    fn source(&self) -> &Arc<PotionRing> {
        &self.source
    }

    fn target(&self) -> &Arc<PotionRing> {
        &self.target
    }

    fn apply(&self, a: &PotionElement) -> Result<PotionElement> {
        self.check_source(a)?;
        let mut witness = vec![0u32; self.target.submonoid().len()];
        for (&p, &w) in self.positions.iter().zip(a.witness()) {
            witness[p] += w;
        }
        let num = self.hom.apply(a.num());
        let den = self.target.submonoid().element(&witness)?;
        let image_den = self.hom.apply(a.den());
        // Generator images are stored reduced, so the denominators agree in B.
        debug_assert!(self.target.ring().equal(den.poly(), &image_den));
        self.target.ring().homogeneous_of_degree(&num, den.degree())?;
        self.target.fraction(num, witness)
    }
}

/// Composite `maps[n−1] ∘ … ∘ maps[0]`.
#[derive(Clone)]
pub struct Composite {
    maps: Vec<Arc<dyn PotionMorphism>>,
}

impl Composite {
    pub fn new(maps: Vec<Arc<dyn PotionMorphism>>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Precondition("empty composite".into()));
        }
        for w in maps.windows(2) {
            if !w[0].target().same_as(w[1].source()) {
                return Err(Error::SubmonoidMismatch);
            }
        }
        Ok(Self { maps })
    }
}

impl PotionMorphism for Composite {
    fn source(&self) -> &Arc<PotionRing> {
        self.maps[0].source()
    }

    fn target(&self) -> &Arc<PotionRing> {
        self.maps.last().expect("nonempty").target()
    }

    fn apply(&self, a: &PotionElement) -> Result<PotionElement> {
        self.maps.iter().try_fold(a.clone(), |acc, m| m.apply(&acc))
    }
}

/// `A_(S) → A_(ST)`.
pub fn potion_map(source: &Arc<PotionRing>, t: &HomogeneousSubmonoid) -> Result<Rewrite> {
    let st = source.submonoid().product(t)?;
    potion_map_into(source, &PotionRing::new(st))
}

/// `A_(S) → A_(ST)` into an existing potion ring of `ST`.
pub fn potion_map_into(source: &Arc<PotionRing>, st: &Arc<PotionRing>) -> Result<Rewrite> {
    let s = source.submonoid();
    let target = st.submonoid();
    let mut certs = Vec::with_capacity(s.len());
    for g in s.generators() {
        match target.position(g.poly()) {
            Some(p) => {
                let mut exps = vec![0u32; target.len()];
                exps[p] = 1;
                certs.push(GeneratorCertificate {
                    unit: Rational::one(),
                    exponents: exps,
                });
            }
            None => return Rewrite::find(source.clone(), st.clone()),
        }
    }
    Rewrite::new(source.clone(), st.clone(), certs)
}

/// Both directions of `A_(S̄) ≅ A_(S)`: `(forward: A_(S̄) → A_(S), backward: A_(S) → A_(S̄))`.
pub fn equiv_bar_potion(s: &Arc<PotionRing>) -> Result<(BarForward, Rewrite)> {
    let bar = s.submonoid().bar();
    let bar_ring = PotionRing::new(bar.as_submonoid());
    let certs = (0..s.submonoid().len())
        .map(|j| {
            let mut base = vec![0u32; s.submonoid().len()];
            base[j] = 1;
            let (unit, exponents) = bar.express_base(&base);
            GeneratorCertificate { unit, exponents }
        })
        .collect();
    let backward = Rewrite::new(s.clone(), bar_ring.clone(), certs)?;
    let forward = BarForward {
        bar,
        source: bar_ring,
        target: s.clone(),
    };
    Ok((forward, backward))
}

/// Mutually inverse rewrites `A_(S) ⇄ A_(T)` for two generating sets of one submonoid.
pub fn potion_equiv(s: &Arc<PotionRing>, t: &Arc<PotionRing>) -> Result<(Rewrite, Rewrite)> {
    Ok((Rewrite::find(s.clone(), t.clone())?, Rewrite::find(t.clone(), s.clone())?))
}
