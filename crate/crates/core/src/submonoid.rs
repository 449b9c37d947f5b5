//! Finitely generated homogeneous submonoids, their divisor closures and the
//! relevance conditions on their degree groups.
//!
//! Elements are exponent vectors over the generator list, so membership is
//! always witnessed. Divisor closures come from factorization data: monomials
//! are split into variables, other factors are trusted as irreducible and a
//! warning is kept.

use std::sync::Arc;

use num_traits::One;

use crate::abelian::{GroupElement, SubgroupPresentation};
use crate::error::{Error, Result};
use crate::graded::{GradedRing, HomogeneousElement};
use crate::poly::{MonomialOrder, Polynomial, Rational};

/// `generator = unit · ∏ factorᵏ`, factors monic and pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(HomogeneousElement, u32)>,
}

#[derive(Clone, Debug)]
pub struct HomogeneousSubmonoid {
    ring: Arc<GradedRing>,
    generators: Vec<HomogeneousElement>,
    factorizations: Vec<Factorization>,
    warnings: Vec<String>,
}

/// Declared input for one generator: the polynomial and optionally its factors
/// with multiplicities.
#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub poly: Polynomial,
    pub factors: Option<Vec<(Polynomial, u32)>>,
}

impl GeneratorSpec {
    pub fn plain(poly: Polynomial) -> Self {
        Self { poly, factors: None }
    }
}

impl HomogeneousSubmonoid {
    /// Submonoid generated by `gens`, each factored automatically.
    pub fn new(ring: Arc<GradedRing>, gens: Vec<Polynomial>) -> Result<Self> {
        Self::with_factorizations(ring, gens.into_iter().map(GeneratorSpec::plain).collect())
    }

    pub fn trivial(ring: Arc<GradedRing>) -> Self {
        Self {
            ring,
            generators: Vec::new(),
            factorizations: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn with_factorizations(ring: Arc<GradedRing>, specs: Vec<GeneratorSpec>) -> Result<Self> {
        let mut out = Self::trivial(ring);
        for spec in specs {
            out.push_generator(spec)?;
        }
        Ok(out)
    }

    fn push_generator(&mut self, spec: GeneratorSpec) -> Result<()> {
        let ring = self.ring.clone();
        if spec.poly.nvars() != ring.nvars() {
            return Err(Error::VariableMismatch {
                left: ring.nvars(),
                right: spec.poly.nvars(),
            });
        }
        let g = ring.reduce(&spec.poly);
        if g.is_zero() {
            return Err(Error::ZeroGenerator(ring.display(&spec.poly)));
        }
        let generator = ring.homogeneous(&g)?;

        let declared = spec.factors.unwrap_or_else(|| vec![(g.clone(), 1)]);
        let mut unit = Rational::one();
        let mut factors: Vec<(HomogeneousElement, u32)> = Vec::new();
        let add_factor = |f: Polynomial, k: u32, factors: &mut Vec<(HomogeneousElement, u32)>| -> Result<()> {
            let h = ring.homogeneous(&f)?;
            if let Some(entry) = factors.iter_mut().find(|(e, _)| e.poly() == h.poly()) {
                entry.1 += k;
            } else {
                factors.push((h, k));
            }
            Ok(())
        };
        for (f, k) in declared {
            if k == 0 {
                continue;
            }
            let f = ring.reduce(&f);
            if f.is_zero() {
                return Err(Error::Factorization(format!(
                    "zero factor declared for {}",
                    ring.display(&g)
                )));
            }
            if let Some(c) = f.constant_value() {
                unit = &unit * &num_traits::pow(c, k as usize);
                continue;
            }
            let (lc, monic) = f.monic(MonomialOrder::GrevLex);
            unit = &unit * &num_traits::pow(lc, k as usize);
            if monic.is_monomial() {
                let (m, _) = monic.terms().next().expect("nonzero");
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        add_factor(ring.var(i), e * k, &mut factors)?;
                    }
                }
            } else {
                let note = format!("irreducibility of {} is assumed", ring.display(&monic));
                if !self.warnings.contains(&note) {
                    self.warnings.push(note);
                }
                add_factor(monic, k, &mut factors)?;
            }
        }

        let product = factors.iter().fold(ring.one(), |acc, (f, k)| &acc * &f.poly().pow(*k));
        let product = product.scalar_mul(&unit);
        if !ring.equal(&product, &g) {
            return Err(Error::Factorization(format!(
                "declared factors multiply to {}, not {}",
                ring.display(&ring.reduce(&product)),
                ring.display(&g)
            )));
        }
        factors.sort_by_key(|(f, _)| f.poly().to_text(ring.names()));
        self.generators.push(generator);
        self.factorizations.push(Factorization { unit, factors });
        Ok(())
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[HomogeneousElement] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn factorizations(&self) -> &[Factorization] {
        &self.factorizations
    }

    /// Trusted irreducibility claims made while factoring.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn same_ring(&self, other: &HomogeneousSubmonoid) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    /// `∏ gⱼ^exps[j]`.
    pub fn element(&self, exps: &[u32]) -> Result<HomogeneousElement> {
        self.check_witness(exps)?;
        Ok(exps
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .fold(HomogeneousElement::one(&self.ring), |acc, (&e, g)| acc.mul(&g.pow(e))))
    }

    pub fn check_witness(&self, exps: &[u32]) -> Result<()> {
        if exps.len() != self.generators.len() {
            return Err(Error::Witness(format!(
                "exponent vector of length {} for {} generators",
                exps.len(),
                self.generators.len()
            )));
        }
        Ok(())
    }

    pub fn witness_degree(&self, exps: &[u32]) -> GroupElement {
        exps.iter()
            .zip(&self.generators)
            .fold(self.ring.group().zero(), |acc, (&e, g)| {
                &acc + &g.degree().scale(&e.into())
            })
    }

    pub fn position(&self, p: &Polynomial) -> Option<usize> {
        let r = self.ring.reduce(p);
        self.generators.iter().position(|g| *g.poly() == r)
    }

    /// Degrees of the generators, which generate `deg(S)` as a monoid.
    pub fn deg_monoid(&self) -> Vec<GroupElement> {
        self.generators.iter().map(|g| g.degree().clone()).collect()
    }

    /// The subgroup generated by `deg(S)`.
    pub fn deg_group(&self) -> SubgroupPresentation {
        SubgroupPresentation {
            ambient: self.ring.group().clone(),
            generators: self.deg_monoid(),
        }
    }

    pub fn bar(&self) -> BarSubmonoid {
        let mut divisors: Vec<HomogeneousElement> = Vec::new();
        for f in &self.factorizations {
            for (h, _) in &f.factors {
                if !divisors.iter().any(|d| d.poly() == h.poly()) {
                    divisors.push(h.clone());
                }
            }
        }
        let multiplicity = self
            .factorizations
            .iter()
            .map(|f| {
                divisors
                    .iter()
                    .map(|d| f.factors.iter().find(|(h, _)| h.poly() == d.poly()).map_or(0, |(_, k)| *k))
                    .collect()
            })
            .collect();
        BarSubmonoid {
            base: self.clone(),
            divisor_generators: divisors,
            multiplicity,
        }
    }

    /// `M/M[S̄]` is torsion (relative to the declared factorizations).
    pub fn is_relevant(&self) -> bool {
        self.ring.group().is_torsion_quotient(&self.bar().deg_group())
    }

    /// `M[S̄] = M`.
    pub fn is_maximally_relevant(&self) -> bool {
        self.ring
            .group()
            .quotient_invariants(&self.bar().deg_group())
            .is_trivial()
    }

    /// `ST`: generators of `self` followed by the new generators of `other`.
    pub fn product(&self, other: &HomogeneousSubmonoid) -> Result<HomogeneousSubmonoid> {
        if !self.same_ring(other) {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        for (g, f) in other.generators.iter().zip(&other.factorizations) {
            if !out.generators.iter().any(|h| h.poly() == g.poly()) {
                out.generators.push(g.clone());
                out.factorizations.push(f.clone());
            }
        }
        for w in &other.warnings {
            if !out.warnings.contains(w) {
                out.warnings.push(w.clone());
            }
        }
        Ok(out)
    }

    /// Generator texts, e.g. `⟨x, y^2⟩`.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| self.ring.display(g.poly())).collect();
        format!("<{}>", gens.join(", "))
    }
}

/// The divisor closure `S̄`, generated by the distinct declared factors.
#[derive(Clone, Debug)]
pub struct BarSubmonoid {
    base: HomogeneousSubmonoid,
    divisor_generators: Vec<HomogeneousElement>,
    /// `multiplicity[j][k]`: exponent of divisor `k` in base generator `j`.
    multiplicity: Vec<Vec<u32>>,
}

/// `s = unit · d · ∏ divisorₖ^cofactor[k]` with `s = ∏ gⱼ^base[j]` in `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub base: Vec<u32>,
    pub cofactor: Vec<u32>,
    pub unit: Rational,
}

impl BarSubmonoid {
    pub fn base(&self) -> &HomogeneousSubmonoid {
        &self.base
    }

    pub fn divisor_generators(&self) -> &[HomogeneousElement] {
        &self.divisor_generators
    }

    pub fn len(&self) -> usize {
        self.divisor_generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisor_generators.is_empty()
    }

    pub fn degrees(&self) -> Vec<GroupElement> {
        self.divisor_generators.iter().map(|d| d.degree().clone()).collect()
    }

    pub fn deg_group(&self) -> SubgroupPresentation {
        SubgroupPresentation {
            ambient: self.base.ring.group().clone(),
            generators: self.degrees(),
        }
    }

    pub fn element(&self, exps: &[u32]) -> Result<HomogeneousElement> {
        if exps.len() != self.divisor_generators.len() {
            return Err(Error::Witness(format!(
                "exponent vector of length {} for {} divisors",
                exps.len(),
                self.divisor_generators.len()
            )));
        }
        Ok(exps
            .iter()
            .zip(&self.divisor_generators)
            .filter(|(&e, _)| e > 0)
            .fold(HomogeneousElement::one(self.base.ring()), |acc, (&e, g)| acc.mul(&g.pow(e))))
    }

    pub fn witness_degree(&self, exps: &[u32]) -> GroupElement {
        exps.iter()
            .zip(&self.divisor_generators)
            .fold(self.base.ring.group().zero(), |acc, (&e, g)| {
                &acc + &g.degree().scale(&e.into())
            })
    }

    /// Rewrites `∏ gⱼ^base[j]` over the divisors: `(unit, exponents)`.
    pub fn express_base(&self, base: &[u32]) -> (Rational, Vec<u32>) {
        let mut unit = Rational::one();
        let mut exps = vec![0u32; self.divisor_generators.len()];
        for (j, &e) in base.iter().enumerate() {
            if e == 0 {
                continue;
            }
            unit = &unit * &num_traits::pow(self.base.factorizations[j].unit.clone(), e as usize);
            for (k, &m) in self.multiplicity[j].iter().enumerate() {
                exps[k] += m * e;
            }
        }
        (unit, exps)
    }

    /// Finds `s ∈ S` divisible by the divisor product `∏ dₖ^exps[k]`.
    pub fn lift_to_base(&self, exps: &[u32]) -> Lift {
        let mut base = vec![0u32; self.base.len()];
        for (k, &a) in exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let j = (0..self.base.len())
                .find(|&j| self.multiplicity[j][k] > 0)
                .expect("every divisor occurs in some generator");
            let m = self.multiplicity[j][k];
            // Reuse what earlier picks already provide.
            let (_, have) = self.express_base(&base);
            if have[k] < a {
                base[j] += (a - have[k]).div_ceil(m);
            }
        }
        let (unit, total) = self.express_base(&base);
        let cofactor = total.iter().zip(exps).map(|(t, a)| t - a).collect();
        Lift { base, cofactor, unit }
    }

    /// `S̄` as a submonoid in its own right, each divisor its own factor.
    pub fn as_submonoid(&self) -> HomogeneousSubmonoid {
        HomogeneousSubmonoid {
            ring: self.base.ring.clone(),
            generators: self.divisor_generators.clone(),
            factorizations: self
                .divisor_generators
                .iter()
                .map(|d| Factorization {
                    unit: Rational::one(),
                    factors: vec![(d.clone(), 1)],
                })
                .collect(),
            warnings: self.base.warnings.clone(),
        }
    }
}
