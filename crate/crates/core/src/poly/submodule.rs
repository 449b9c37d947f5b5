use std::sync::OnceLock;

use super::groebner::{self, ModuleOrder, Vector};
use super::monomial::MonomialOrder;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

const ORDER: ModuleOrder = ModuleOrder::Pot(MonomialOrder::GrevLex);

/// A submodule of `ℚ[x₁..xₙ]^rank` given by generating vectors.
#[derive(Clone, Debug)]
pub struct Submodule {
    nvars: usize,
    rank: usize,
    generators: Vec<Vector>,
    basis: OnceLock<Vec<Vector>>,
}

impl Submodule {
    pub fn new(nvars: usize, rank: usize, generators: Vec<Vec<Polynomial>>) -> Result<Self> {
        for g in &generators {
            if g.len() != rank {
                return Err(Error::InvalidModule(format!(
                    "relation vector has {} entries, expected {rank}",
                    g.len()
                )));
            }
            if let Some(bad) = g.iter().find(|p| p.nvars() != nvars) {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: bad.nvars(),
                });
            }
        }
        let generators = generators
            .into_iter()
            .filter(|g| !groebner::vector_is_zero(g))
            .collect();
        Ok(Self {
            nvars,
            rank,
            generators,
            basis: OnceLock::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    /// Reduced Gröbner basis, position over term with grevlex.
    pub fn groebner_basis(&self) -> &[Vec<Polynomial>] {
        self.basis
            .get_or_init(|| groebner::groebner(&self.generators, ORDER))
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.rank, "vector of the wrong rank");
        if self.generators.is_empty() {
            return v.to_vec();
        }
        groebner::reduce(v, self.groebner_basis(), ORDER)
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.normal_form(v).iter().all(Polynomial::is_zero)
    }

    /// `N : f^∞ = {v : f^k·v ∈ N for some k}`.
    pub fn saturate(&self, f: &Polynomial) -> Submodule {
        assert!(!f.is_zero(), "saturation at zero");
        if f.constant_value().is_some() {
            return self.clone();
        }
        let n1 = self.nvars + 1;
        let t = Polynomial::var(n1, 0);
        let tf1 = &(&t * &f.prepend_vars(1)) - &Polynomial::one(n1);
        let mut gens: Vec<Vector> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|p| p.prepend_vars(1)).collect())
            .collect();
        for j in 0..self.rank {
            let mut v = vec![Polynomial::zero(n1); self.rank];
            v[j] = tf1.clone();
            gens.push(v);
        }
        let basis = groebner::groebner(&gens, ModuleOrder::Top(MonomialOrder::Elimination(1)));
        let kept: Vec<Vector> = basis
            .into_iter()
            .filter_map(|v| v.iter().map(|p| p.drop_leading_vars(1)).collect::<Option<Vector>>())
            .collect();
        Submodule::new(self.nvars, self.rank, kept).expect("shape preserved")
    }
}

/// Remainder of `v` modulo the submodule generated by `relations`.
pub fn module_normal_form(v: &[Polynomial], relations: &[Vec<Polynomial>]) -> Result<Vec<Polynomial>> {
    let nvars = v.first().map_or(0, Polynomial::nvars);
    let m = Submodule::new(nvars, v.len(), relations.to_vec())?;
    Ok(m.normal_form(v))
}
