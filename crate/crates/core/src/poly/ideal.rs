use std::sync::OnceLock;

use super::groebner::{self, ModuleOrder, Vector};
use super::monomial::MonomialOrder;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Reduced Gröbner basis of `⟨gens⟩` under `order`.
pub fn groebner_basis(gens: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let vectors: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
    groebner::groebner(&vectors, ModuleOrder::Pot(order))
        .into_iter()
        .map(|mut v| v.pop().expect("rank one"))
        .collect()
}

/// Remainder of `p` under full reduction by `basis`.
pub fn normal_form_by(p: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    if basis.is_empty() {
        return p.clone();
    }
    let vectors: Vec<Vector> = basis.iter().map(|g| vec![g.clone()]).collect();
    groebner::reduce(std::slice::from_ref(p), &vectors, ModuleOrder::Pot(order))
        .pop()
        .expect("rank one")
}

/// An ideal of `ℚ[x₁..xₙ]` with a lazily computed, write-once grevlex basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.generators == other.generators
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableMismatch {
                left: nvars,
                right: bad.nvars(),
            });
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self {
            nvars,
            generators,
            basis: OnceLock::new(),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            generators: Vec::new(),
            basis: OnceLock::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.basis
            .get_or_init(|| groebner_basis(&self.generators, MonomialOrder::GrevLex))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.nvars, "polynomial over the wrong ring");
        if self.generators.is_empty() {
            return p.clone();
        }
        normal_form_by(p, self.groebner_basis(), MonomialOrder::GrevLex)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner_basis().iter().any(Polynomial::is_one)
    }

    /// `I : f^∞`, by adjoining `t`, adding `t·f − 1` and eliminating `t`.
    pub fn saturate(&self, f: &Polynomial) -> Ideal {
        assert_eq!(f.nvars(), self.nvars, "saturating element over the wrong ring");
        assert!(!f.is_zero(), "saturation at zero");
        if f.constant_value().is_some() {
            return self.clone();
        }
        let t = Polynomial::var(self.nvars + 1, 0);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.prepend_vars(1)).collect();
        gens.push(&(&t * &f.prepend_vars(1)) - &Polynomial::one(self.nvars + 1));
        let eliminated: Vec<Polynomial> = groebner_basis(&gens, MonomialOrder::Elimination(1))
            .into_iter()
            .filter_map(|g| g.drop_leading_vars(1))
            .collect();
        Ideal::new(self.nvars, eliminated).expect("variable count preserved")
    }
}
