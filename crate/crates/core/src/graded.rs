//! Rings `ℚ[x₁..xₙ]/I` graded by a finitely generated abelian group through
//! one degree per variable.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian::{FgAbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, Ideal, Monomial, Polynomial};

/// A presented graded algebra. Shared between submonoids and potions via `Arc`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedRing {
    group: FgAbelianGroup,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    ideal: Ideal,
}

/// Result of a homogeneity test. Zero is homogeneous of every degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(GroupElement),
    Mixed,
}

impl Homogeneity {
    pub fn degree(&self) -> Option<&GroupElement> {
        match self {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// A polynomial together with the degree of each of its terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousElement {
    poly: Polynomial,
    degree: GroupElement,
}

impl GradedRing {
    pub fn new(
        group: FgAbelianGroup,
        variables: Vec<(String, GroupElement)>,
        ideal_generators: Vec<Polynomial>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, degree) in &variables {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable name '{name}'")));
            }
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("'{name}' is not a valid variable name")));
            }
            if !group.contains(degree) {
                return Err(Error::InvalidRing(format!(
                    "degree {degree} of '{name}' is not an element of {group}"
                )));
            }
        }
        let (names, degrees): (Vec<String>, Vec<GroupElement>) = variables.into_iter().unzip();
        let ideal = Ideal::new(names.len(), ideal_generators)?;
        let ring = Self {
            group,
            names,
            degrees,
            ideal,
        };
        for g in ring.ideal.generators() {
            if ring.raw_homogeneity(g) == Homogeneity::Mixed {
                return Err(Error::NotHomogeneous(format!(
                    "ideal generator {}",
                    ring.display(g)
                )));
            }
        }
        Ok(ring)
    }

    /// A polynomial ring without relations.
    pub fn polynomial_ring(group: FgAbelianGroup, variables: Vec<(String, GroupElement)>) -> Result<Self> {
        Self::new(group, variables, Vec::new())
    }

    /// The same variables and grading modulo additional homogeneous relations.
    pub fn quotient(&self, extra: Vec<Polynomial>) -> Result<Self> {
        let mut gens = self.ideal.generators().to_vec();
        gens.extend(extra);
        Self::new(self.group.clone(), self.variables(), gens)
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn variables(&self) -> Vec<(String, GroupElement)> {
        self.names.iter().cloned().zip(self.degrees.iter().cloned()).collect()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn var_by_name(&self, name: &str) -> Option<Polynomial> {
        self.names.iter().position(|n| n == name).map(|i| self.var(i))
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.names)
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.to_text(&self.names)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> GroupElement {
        assert_eq!(m.nvars(), self.nvars(), "monomial over the wrong ring");
        m.exponents()
            .iter()
            .zip(&self.degrees)
            .filter(|(&e, _)| e > 0)
            .fold(self.group.zero(), |acc, (&e, d)| &acc + &d.scale(&BigInt::from(e)))
    }

    /// Splits `p` term by term according to monomial degree.
    pub fn homogeneous_components(&self, p: &Polynomial) -> BTreeMap<GroupElement, HomogeneousElement> {
        let mut parts: BTreeMap<GroupElement, Polynomial> = BTreeMap::new();
        for (m, c) in p.terms() {
            let d = self.monomial_degree(m);
            let entry = parts.entry(d).or_insert_with(|| self.zero());
            *entry = &*entry + &Polynomial::term(m.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(d, poly)| (d.clone(), HomogeneousElement { poly, degree: d }))
            .collect()
    }

    fn raw_homogeneity(&self, p: &Polynomial) -> Homogeneity {
        let mut degree: Option<GroupElement> = None;
        for (m, _) in p.terms() {
            let d = self.monomial_degree(m);
            match &degree {
                None => degree = Some(d),
                Some(e) if *e != d => return Homogeneity::Mixed,
                _ => {}
            }
        }
        degree.map_or(Homogeneity::Zero, Homogeneity::Homogeneous)
    }

    /// Homogeneity of the class of `p` in the ring, judged on its normal form.
    pub fn is_homogeneous(&self, p: &Polynomial) -> Homogeneity {
        match self.raw_homogeneity(p) {
            Homogeneity::Mixed => self.raw_homogeneity(&self.reduce(p)),
            Homogeneity::Homogeneous(_) if self.reduce(p).is_zero() => Homogeneity::Zero,
            h => h,
        }
    }

    /// Canonical representative modulo the ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.ideal.normal_form(p)
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.ideal.contains(p)
    }

    pub fn equal(&self, p: &Polynomial, q: &Polynomial) -> bool {
        self.ideal.contains(&(p - q))
    }

    /// Wraps `p` as a homogeneous element, reducing first if the raw text is mixed.
    /// The zero class has no intrinsic degree and is rejected; use
    /// [`GradedRing::homogeneous_of_degree`] for it.
    pub fn homogeneous(&self, p: &Polynomial) -> Result<HomogeneousElement> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch {
                left: self.nvars(),
                right: p.nvars(),
            });
        }
        match self.raw_homogeneity(p) {
            Homogeneity::Homogeneous(degree) => Ok(HomogeneousElement { poly: p.clone(), degree }),
            Homogeneity::Zero => Err(Error::NotHomogeneous(
                "the zero polynomial needs an explicit degree".into(),
            )),
            Homogeneity::Mixed => {
                let r = self.reduce(p);
                match self.raw_homogeneity(&r) {
                    Homogeneity::Homogeneous(degree) => Ok(HomogeneousElement { poly: r, degree }),
                    _ => Err(Error::NotHomogeneous(self.display(p))),
                }
            }
        }
    }

    /// Wraps `p` with the given degree; every term of `p` must have that degree.
    pub fn homogeneous_of_degree(&self, p: &Polynomial, degree: &GroupElement) -> Result<HomogeneousElement> {
        if !self.group.contains(degree) {
            return Err(Error::DegreeMismatch(format!("{degree} is not an element of {}", self.group)));
        }
        match self.raw_homogeneity(p) {
            Homogeneity::Zero => Ok(HomogeneousElement {
                poly: p.clone(),
                degree: degree.clone(),
            }),
            Homogeneity::Homogeneous(d) if d == *degree => Ok(HomogeneousElement {
                poly: p.clone(),
                degree: d,
            }),
            Homogeneity::Homogeneous(d) => Err(Error::DegreeMismatch(format!(
                "{} has degree {d}, expected {degree}",
                self.display(p)
            ))),
            Homogeneity::Mixed => {
                let r = self.reduce(p);
                if r.is_zero() || self.raw_homogeneity(&r).degree() == Some(degree) {
                    Ok(HomogeneousElement {
                        poly: r,
                        degree: degree.clone(),
                    })
                } else {
                    Err(Error::NotHomogeneous(self.display(p)))
                }
            }
        }
    }

    /// All monomials of total degree at most `bound`, in ascending lex order.
    pub fn monomials_up_to(&self, bound: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == exps.len() {
                out.push(Monomial::from_exponents(exps.clone()));
                return;
            }
            for e in 0..=left {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
            exps[i] = 0;
        }
        rec(0, bound, &mut exps, &mut out);
        out.sort();
        out
    }

    /// Monomials of degree `degree` and total degree at most `bound`.
    pub fn monomials_of_degree(&self, degree: &GroupElement, bound: u32) -> Vec<Monomial> {
        self.monomials_up_to(bound)
            .into_iter()
            .filter(|m| self.monomial_degree(m) == *degree)
            .collect()
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedRing(")?;
        for (i, (n, d)) in self.names.iter().zip(&self.degrees).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{d}")?;
        }
        write!(f, " over {}", self.group)?;
        if !self.ideal.is_zero_ideal() {
            let gens: Vec<String> = self.ideal.generators().iter().map(|g| self.display(g)).collect();
            write!(f, " mod ({})", gens.join(", "))?;
        }
        write!(f, ")")
    }
}

impl HomogeneousElement {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn into_parts(self) -> (Polynomial, GroupElement) {
        (self.poly, self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn one(ring: &GradedRing) -> Self {
        Self {
            poly: ring.one(),
            degree: ring.group().zero(),
        }
    }

    pub fn mul(&self, other: &HomogeneousElement) -> HomogeneousElement {
        HomogeneousElement {
            poly: &self.poly * &other.poly,
            degree: &self.degree + &other.degree,
        }
    }

    pub fn pow(&self, k: u32) -> HomogeneousElement {
        HomogeneousElement {
            poly: self.poly.pow(k),
            degree: self.degree.scale(&BigInt::from(k)),
        }
    }
}

/// A fraction `num/den` of homogeneous elements with `den` a recorded
/// product of submonoid generators; its degree is `deg(num) − deg(den)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFraction {
    pub num: HomogeneousElement,
    pub den: HomogeneousElement,
    pub den_witness: Vec<u32>,
}

impl GradedFraction {
    pub fn degree(&self) -> GroupElement {
        self.num.degree() - self.den.degree()
    }
}

/// A degree-preserving ring map `source → target` given by variable images.
#[derive(Clone, Debug)]
pub struct GradedRingHom {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<Polynomial>,
}

impl GradedRingHom {
    pub fn new(source: Arc<GradedRing>, target: Arc<GradedRing>, images: Vec<Polynomial>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::InvalidHom("source and target are graded by different groups".into()));
        }
        if images.len() != source.nvars() {
            return Err(Error::InvalidHom(format!(
                "{} images given for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.nvars() != target.nvars() {
                return Err(Error::VariableMismatch {
                    left: target.nvars(),
                    right: img.nvars(),
                });
            }
            match target.is_homogeneous(img) {
                Homogeneity::Zero => {}
                Homogeneity::Homogeneous(d) if d == source.degrees()[i] => {}
                Homogeneity::Homogeneous(d) => {
                    return Err(Error::DegreeMismatch(format!(
                        "image of '{}' has degree {d}, expected {}",
                        source.names()[i],
                        source.degrees()[i]
                    )))
                }
                Homogeneity::Mixed => {
                    return Err(Error::NotHomogeneous(format!(
                        "image of '{}' ({})",
                        source.names()[i],
                        target.display(img)
                    )))
                }
            }
        }
        let hom = Self { source, target, images };
        for (i, g) in hom.source.ideal().generators().iter().enumerate() {
            let image = g.substitute(&hom.images)?;
            if !hom.target.is_zero(&image) {
                return Err(Error::InvalidHom(format!(
                    "ideal generator {i} ({}) does not map into the target ideal",
                    hom.source.display(g)
                )));
            }
        }
        Ok(hom)
    }

    pub fn identity(ring: Arc<GradedRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Self {
            source: ring.clone(),
            target: ring,
            images,
        }
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Image of `p`, reduced in the target.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let raw = p.substitute(&self.images).expect("image variable count checked");
        self.target.reduce(&raw)
    }

    pub fn apply_homogeneous(&self, h: &HomogeneousElement) -> HomogeneousElement {
        HomogeneousElement {
            poly: self.apply(h.poly()),
            degree: h.degree().clone(),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GradedRingHom) -> Result<GradedRingHom> {
        if *self.target != *next.source {
            return Err(Error::RingMismatch);
        }
        let images = self.images.iter().map(|p| next.apply(p)).collect();
        GradedRingHom::new(self.source.clone(), next.target.clone(), images)
    }

    /// Every target variable is (the class of) some variable image, or zero.
    pub fn is_surjective_on_variables(&self) -> bool {
        let reduced: Vec<Polynomial> = self.images.iter().map(|p| self.target.reduce(p)).collect();
        (0..self.target.nvars()).all(|j| {
            let v = self.target.reduce(&self.target.var(j));
            v.is_zero() || reduced.contains(&v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    fn ring(group: FgAbelianGroup, vars: &[(&str, &[i64])], ideal: &[&str]) -> GradedRing {
        let vars: Vec<(String, GroupElement)> = vars
            .iter()
            .map(|(n, d)| (n.to_string(), group.element_i64(d).unwrap()))
            .collect();
        let names: Vec<String> = vars.iter().map(|(n, _)| n.clone()).collect();
        let ideal = ideal.iter().map(|s| parse_polynomial(s, &names).unwrap()).collect();
        GradedRing::new(group, vars, ideal).unwrap()
    }

    fn p1() -> GradedRing {
        ring(z(), &[("x", &[1]), ("y", &[1])], &[])
    }

    #[test]
    fn monomial_degrees() {
        let r = p1();
        assert!(r.monomial_degree(&Monomial::one(2)).is_zero());
        let x2y = r.parse("x^2*y").unwrap();
        let (m, _) = x2y.terms().next().unwrap();
        assert_eq!(r.monomial_degree(m), z().element_i64(&[3]).unwrap());

        let z2 = FgAbelianGroup::cyclic(2).unwrap();
        let r = ring(z2.clone(), &[("x", &[1])], &[]);
        let x3 = r.parse("x^3").unwrap();
        let (m, _) = x3.terms().next().unwrap();
        let one = z2.element_i64(&[1]).unwrap();
        let repeated = &(&one + &one) + &one;
        assert_eq!(r.monomial_degree(m), repeated);
        assert_eq!(r.monomial_degree(m), one);
    }

    #[test]
    fn components_and_homogeneity() {
        let r = ring(z(), &[("x", &[1])], &[]);
        let comps = r.homogeneous_components(&r.parse("x + x^2").unwrap());
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&z().element_i64(&[1]).unwrap()].poly(), &r.parse("x").unwrap());
        assert_eq!(comps[&z().element_i64(&[2]).unwrap()].poly(), &r.parse("x^2").unwrap());
        assert!(r.homogeneous_components(&r.zero()).is_empty());

        let r = p1();
        assert_eq!(
            r.is_homogeneous(&r.parse("x + y").unwrap()),
            Homogeneity::Homogeneous(z().element_i64(&[1]).unwrap())
        );
        assert_eq!(r.is_homogeneous(&r.zero()), Homogeneity::Zero);
        let w = ring(z(), &[("x", &[2]), ("y", &[3])], &[]);
        assert_eq!(w.is_homogeneous(&w.parse("x + y").unwrap()), Homogeneity::Mixed);
    }

    #[test]
    fn inhomogeneous_ideal_rejected() {
        let g = z();
        let vars = vec![
            ("x".to_string(), g.element_i64(&[1]).unwrap()),
            ("y".to_string(), g.element_i64(&[1]).unwrap()),
        ];
        let bad = parse_polynomial("x - y^2", &["x".into(), "y".into()]).unwrap();
        assert!(matches!(GradedRing::new(g, vars, vec![bad]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        let g = z();
        let d = g.element_i64(&[1]).unwrap();
        let vars = vec![("x".to_string(), d.clone()), ("x".to_string(), d)];
        assert!(GradedRing::new(g, vars, vec![]).is_err());
    }

    #[test]
    fn homomorphisms() {
        let a = Arc::new(p1());
        let b = Arc::new(ring(z(), &[("x", &[1]), ("y", &[1])], &["y"]));
        let id = GradedRingHom::identity(a.clone());
        assert!(id.is_surjective_on_variables());

        let proj = GradedRingHom::new(a.clone(), b.clone(), vec![b.var(0), b.var(1)]).unwrap();
        assert!(proj.is_surjective_on_variables());
        assert!(proj.apply(&a.parse("x*y + x^2").unwrap()) == b.parse("x^2").unwrap());

        let wrong = GradedRingHom::new(a.clone(), a.clone(), vec![a.parse("x^2").unwrap(), a.var(1)]);
        assert!(matches!(wrong, Err(Error::DegreeMismatch(_))));

        // The quotient does not map back: y ↦ y sends the relation y to y ≠ 0.
        let back = GradedRingHom::new(b.clone(), a.clone(), vec![a.var(0), a.var(1)]);
        assert!(matches!(back, Err(Error::InvalidHom(_))));

        let composed = id.then(&proj).unwrap();
        for text in ["x", "y", "x^3 + x*y^2"] {
            let q = a.parse(text).unwrap();
            assert_eq!(composed.apply(&q), proj.apply(&q));
        }
    }

    #[test]
    fn enumerates_monomials_of_a_degree() {
        let w = ring(z(), &[("x", &[2]), ("y", &[3])], &[]);
        let six = z().element_i64(&[6]).unwrap();
        let ms = w.monomials_of_degree(&six, 6);
        assert_eq!(ms.len(), 2); // x^3, y^2
    }
}
