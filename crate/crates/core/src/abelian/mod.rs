//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
//! Every torsion decision (relevance, exponents, difference representations)
//! reduces to a Smith normal form of a relation matrix.

mod matrix;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use matrix::{smith_normal_form, IntegerMatrix, SmithForm};

use crate::error::{Error, Result};

/// `ℤ^rank ⊕ ⊕ᵢ ℤ/dᵢ` with a divisibility chain of invariant factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: usize,
    invariants: Arc<[BigInt]>,
}

/// An element of a [`FgAbelianGroup`]; torsion coordinates are kept reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
    moduli: Arc<[BigInt]>,
}

/// A subgroup given by generators inside an ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub ambient: FgAbelianGroup,
    pub generators: Vec<GroupElement>,
}

/// Rank and invariant factors of a quotient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub invariants: Vec<BigInt>,
}

impl QuotientInvariants {
    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariants.is_empty()
    }
}

/// A representation `Σ (plus[i] − minus[i])·gᵢ = target` with nonnegative
/// exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl FgAbelianGroup {
    pub fn new(rank: usize, invariants: Vec<BigInt>) -> Result<Self> {
        for (i, d) in invariants.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} at position {i} is below 2"
                )));
            }
            if i + 1 < invariants.len() && !invariants[i + 1].is_multiple_of(d) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} does not divide {}",
                    invariants[i + 1]
                )));
            }
        }
        Ok(Self {
            rank,
            invariants: invariants.into(),
        })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            invariants: Arc::from(Vec::new()),
        }
    }

    pub fn cyclic(order: u64) -> Result<Self> {
        Self::new(0, vec![BigInt::from(order)])
    }

    /// Normalizes `ℤ^rank ⊕ ⊕ ℤ/oᵢ` for arbitrary orders `oᵢ ≥ 2` into
    /// invariant-factor form. The returned map sends old torsion coordinates to
    /// new ones.
    pub fn from_cyclic_orders(rank: usize, orders: &[BigInt]) -> Result<(Self, TorsionRecoordination)> {
        if let Some(bad) = orders.iter().find(|o| **o < BigInt::from(2)) {
            return Err(Error::InvalidGroup(format!("cyclic order {bad} is below 2")));
        }
        let k = orders.len();
        let mut diag = IntegerMatrix::zeros(k, k);
        for (i, o) in orders.iter().enumerate() {
            diag[(i, i)] = o.clone();
        }
        let snf = smith_normal_form(&diag);
        let d = snf.diagonal.diagonal();
        let kept: Vec<usize> = (0..k).filter(|&i| !d[i].is_one()).collect();
        let invariants: Vec<BigInt> = kept.iter().map(|&i| d[i].clone()).collect();
        let group = Self::new(rank, invariants)?;
        let map = TorsionRecoordination {
            left: snf.left,
            kept,
        };
        Ok((group, map))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    /// Number of coordinates of an element: free rank plus torsion count.
    pub fn dimension(&self) -> usize {
        self.rank + self.invariants.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.invariants.len()],
            moduli: self.invariants.clone(),
        }
    }

    /// Builds an element from its coordinates: free part first, then torsion.
    pub fn element(&self, coords: &[BigInt]) -> Result<GroupElement> {
        if coords.len() != self.dimension() {
            return Err(Error::InvalidGroup(format!(
                "degree vector has length {}, expected {}",
                coords.len(),
                self.dimension()
            )));
        }
        let free = coords[..self.rank].to_vec();
        let torsion = coords[self.rank..]
            .iter()
            .zip(self.invariants.iter())
            .map(|(c, d)| c.mod_floor(d))
            .collect();
        Ok(GroupElement {
            free,
            torsion,
            moduli: self.invariants.clone(),
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        self.element(&big)
    }

    /// The standard generators: unit vectors of the free part, then one
    /// generator per cyclic torsion factor.
    pub fn standard_generators(&self) -> Vec<GroupElement> {
        (0..self.dimension())
            .map(|i| {
                let mut coords = vec![BigInt::zero(); self.dimension()];
                coords[i] = BigInt::one();
                self.element(&coords).expect("unit vector has the right length")
            })
            .collect()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.free.len() == self.rank && g.moduli == self.invariants
    }

    /// Relation matrix presenting `self / ⟨gens⟩` on the coordinate lattice.
    fn relation_matrix(&self, gens: &[GroupElement]) -> IntegerMatrix {
        let n = self.dimension();
        let mut columns: Vec<Vec<BigInt>> = gens.iter().map(GroupElement::coords).collect();
        for (i, d) in self.invariants.iter().enumerate() {
            let mut col = vec![BigInt::zero(); n];
            col[self.rank + i] = d.clone();
            columns.push(col);
        }
        IntegerMatrix::from_columns(n, &columns)
    }

    /// Rank and invariant factors of `self / H`.
    pub fn quotient_invariants(&self, h: &SubgroupPresentation) -> QuotientInvariants {
        debug_assert!(h.generators.iter().all(|g| self.contains(g)));
        let n = self.dimension();
        let snf = smith_normal_form(&self.relation_matrix(&h.generators));
        let factors = snf.invariant_factors();
        QuotientInvariants {
            free_rank: n - factors.len(),
            invariants: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_torsion_quotient(&self, h: &SubgroupPresentation) -> bool {
        self.quotient_invariants(h).is_torsion()
    }

    /// Least `N > 0` with `N·m ∈ H` for every `m`, or `None` when the quotient
    /// has positive free rank.
    pub fn torsion_exponent(&self, h: &SubgroupPresentation) -> Option<BigInt> {
        let q = self.quotient_invariants(h);
        if !q.is_torsion() {
            return None;
        }
        Some(q.invariants.iter().fold(BigInt::one(), |acc, d| acc.lcm(d)))
    }

    /// Integer coefficients `x` with `Σ xᵢ·gensᵢ = target`, if any exist.
    ///
    /// Among the solutions reachable from the Smith-form particular solution
    /// by single kernel steps, returns one minimizing `(Σ|xᵢ|, x)`.
    pub fn solve_combination(&self, target: &GroupElement, gens: &[GroupElement]) -> Option<Vec<BigInt>> {
        let m = gens.len();
        let a = self.relation_matrix(gens);
        let snf = smith_normal_form(&a);
        let rhs = snf.left.mul_vec(&target.coords());
        let diag = snf.diagonal.diagonal();
        let r = snf.rank();
        let cols = a.cols();
        let mut w = vec![BigInt::zero(); cols];
        for i in 0..rhs.len() {
            if i < r {
                let (q, rem) = rhs[i].div_rem(&diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                w[i] = q;
            } else if !rhs[i].is_zero() {
                return None;
            }
        }
        let z = snf.right.mul_vec(&w);
        let mut x: Vec<BigInt> = z[..m].to_vec();

        let kernel: Vec<Vec<BigInt>> = (r..cols)
            .map(|j| snf.right.column(j)[..m].to_vec())
            .filter(|k| k.iter().any(|c| !c.is_zero()))
            .collect();
        loop {
            let mut improved = false;
            for k in &kernel {
                for sign in [1i32, -1] {
                    let cand: Vec<BigInt> = x
                        .iter()
                        .zip(k)
                        .map(|(a, b)| a + b * BigInt::from(sign))
                        .collect();
                    if cost_cmp(&cand, &x) == Ordering::Less {
                        x = cand;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        Some(x)
    }

    /// Writes `target` as a difference of two nonnegative combinations of
    /// `monoid_gens`, or `None` if it lies outside their group span.
    pub fn represent_as_difference(&self, target: &GroupElement, monoid_gens: &[GroupElement]) -> Option<Difference> {
        let x = self.solve_combination(target, monoid_gens)?;
        let to_u32 = |v: BigInt| v.to_u32().expect("difference exponent exceeds u32");
        let plus = x
            .iter()
            .map(|c| to_u32(if c.is_positive() { c.clone() } else { BigInt::zero() }))
            .collect();
        let minus = x
            .iter()
            .map(|c| to_u32(if c.is_negative() { -c } else { BigInt::zero() }))
            .collect();
        Some(Difference { plus, minus })
    }

    /// Direct product `self × other`; torsion parts are renormalized.
    pub fn direct_product(&self, other: &FgAbelianGroup) -> (FgAbelianGroup, ProductEmbedding) {
        let orders: Vec<BigInt> = self
            .invariants
            .iter()
            .chain(other.invariants.iter())
            .cloned()
            .collect();
        let (group, recoord) = Self::from_cyclic_orders(self.rank + other.rank, &orders)
            .expect("invariant factors are at least 2");
        let embedding = ProductEmbedding {
            left_rank: self.rank,
            right_rank: other.rank,
            left_torsion: self.invariants.len(),
            right_torsion: other.invariants.len(),
            recoord,
            product: group.clone(),
        };
        (group, embedding)
    }
}

fn cost_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    let l1 = |v: &[BigInt]| v.iter().fold(BigInt::zero(), |acc, c| acc + c.abs());
    l1(a).cmp(&l1(b)).then_with(|| a.cmp(b))
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariants.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Re-expresses torsion coordinates after invariant-factor normalization.
#[derive(Clone, Debug)]
pub struct TorsionRecoordination {
    left: IntegerMatrix,
    kept: Vec<usize>,
}

impl TorsionRecoordination {
    pub fn apply(&self, torsion: &[BigInt]) -> Vec<BigInt> {
        let full = self.left.mul_vec(torsion);
        self.kept.iter().map(|&i| full[i].clone()).collect()
    }
}

/// Embeddings of the two factors into a direct product.
#[derive(Clone, Debug)]
pub struct ProductEmbedding {
    left_rank: usize,
    right_rank: usize,
    left_torsion: usize,
    right_torsion: usize,
    recoord: TorsionRecoordination,
    product: FgAbelianGroup,
}

impl ProductEmbedding {
    pub fn product(&self) -> &FgAbelianGroup {
        &self.product
    }

    pub fn left(&self, g: &GroupElement) -> GroupElement {
        assert_eq!(g.free.len(), self.left_rank);
        let mut free = g.free.clone();
        free.extend(std::iter::repeat_n(BigInt::zero(), self.right_rank));
        let mut torsion = g.torsion.clone();
        torsion.extend(std::iter::repeat_n(BigInt::zero(), self.right_torsion));
        self.assemble(free, &torsion)
    }

    pub fn right(&self, g: &GroupElement) -> GroupElement {
        assert_eq!(g.free.len(), self.right_rank);
        let mut free = vec![BigInt::zero(); self.left_rank];
        free.extend(g.free.iter().cloned());
        let mut torsion = vec![BigInt::zero(); self.left_torsion];
        torsion.extend(g.torsion.iter().cloned());
        self.assemble(free, &torsion)
    }

    fn assemble(&self, mut coords: Vec<BigInt>, torsion: &[BigInt]) -> GroupElement {
        coords.extend(self.recoord.apply(torsion));
        self.product
            .element(&coords)
            .expect("product coordinates have the right length")
    }
}

impl GroupElement {
    /// Coordinates, free part first.
    pub fn coords(&self) -> Vec<BigInt> {
        self.free.iter().chain(self.torsion.iter()).cloned().collect()
    }

    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(self.torsion.iter()).all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        self.map_coords(|c| c * k)
    }

    fn map_coords(&self, f: impl Fn(&BigInt) -> BigInt) -> GroupElement {
        GroupElement {
            free: self.free.iter().map(&f).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(self.moduli.iter())
                .map(|(c, d)| f(c).mod_floor(d))
                .collect(),
            moduli: self.moduli.clone(),
        }
    }

    fn zip_with(&self, other: &GroupElement, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> GroupElement {
        assert!(
            self.free.len() == other.free.len() && self.moduli == other.moduli,
            "group elements from different groups"
        );
        GroupElement {
            free: self.free.iter().zip(&other.free).map(|(a, b)| f(a, b)).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .zip(self.moduli.iter())
                .map(|((a, b), d)| f(a, b).mod_floor(d))
                .collect(),
            moduli: self.moduli.clone(),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.free
            .cmp(&other.free)
            .then_with(|| self.torsion.cmp(&other.torsion))
            .then_with(|| self.moduli.cmp(&other.moduli))
    }
}

impl std::ops::Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl std::ops::Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.map_coords(|c| -c)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", coords.join(", "))
    }
}

impl SubgroupPresentation {
    pub fn new(ambient: FgAbelianGroup, generators: Vec<GroupElement>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| !ambient.contains(g)) {
            return Err(Error::InvalidGroup(format!("generator {bad} is not an element of {ambient}")));
        }
        Ok(Self { ambient, generators })
    }

    pub fn whole(ambient: &FgAbelianGroup) -> Self {
        Self {
            generators: ambient.standard_generators(),
            ambient: ambient.clone(),
        }
    }

    pub fn trivial(ambient: &FgAbelianGroup) -> Self {
        Self {
            generators: Vec::new(),
            ambient: ambient.clone(),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.ambient.solve_combination(g, &self.generators).is_some()
    }
}
