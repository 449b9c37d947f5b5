//! Standard example rings.

use std::sync::Arc;

use crate::abelian::FgAbelianGroup;
use crate::graded::GradedRing;
use crate::submonoid::HomogeneousSubmonoid;
use crate::Result;

fn build(group: FgAbelianGroup, vars: &[(&str, &[i64])], ideal: &[&str]) -> Arc<GradedRing> {
    let vars = vars
        .iter()
        .map(|(n, d)| (n.to_string(), group.element_i64(d).expect("degree fits the group")))
        .collect();
    let ring = GradedRing::polynomial_ring(group, vars).expect("valid example ring");
    let ideal = ideal.iter().map(|g| ring.parse(g).expect("valid generator")).collect();
    Arc::new(ring.quotient(ideal).expect("homogeneous example ideal"))
}

/// `ℚ[x, y]`, both of degree 1 in `ℤ`.
pub fn projective_line() -> Arc<GradedRing> {
    build(FgAbelianGroup::free(1), &[("x", &[1]), ("y", &[1])], &[])
}

/// `ℚ[x, y]` with `deg x = a`, `deg y = b` in `ℤ`.
pub fn weighted_line(a: i64, b: i64) -> Arc<GradedRing> {
    build(FgAbelianGroup::free(1), &[("x", &[a]), ("y", &[b])], &[])
}

/// `ℚ[x0, x1, y0, y1]` graded by `ℤ²`.
pub fn product_of_lines() -> Arc<GradedRing> {
    build(
        FgAbelianGroup::free(2),
        &[("x0", &[1, 0]), ("x1", &[1, 0]), ("y0", &[0, 1]), ("y1", &[0, 1])],
        &[],
    )
}

/// `ℚ[x]` graded by `ℤ/2` with `deg x = 1`.
pub fn parity_line() -> Arc<GradedRing> {
    build(FgAbelianGroup::cyclic(2).expect("order 2"), &[("x", &[1])], &[])
}

/// `ℚ[x, y]/(xy)`, both of degree 1 in `ℤ`.
pub fn crossing_lines() -> Arc<GradedRing> {
    build(FgAbelianGroup::free(1), &[("x", &[1]), ("y", &[1])], &["x*y"])
}

/// Submonoid generated by parsed expressions.
pub fn submonoid(ring: &Arc<GradedRing>, gens: &[&str]) -> Result<HomogeneousSubmonoid> {
    let gens = gens.iter().map(|g| ring.parse(g)).collect::<Result<_>>()?;
    HomogeneousSubmonoid::new(ring.clone(), gens)
}

/// The five rings used for ring-axiom checks, each with a relevant submonoid.
pub fn axiom_examples() -> Vec<(&'static str, Arc<GradedRing>, HomogeneousSubmonoid)> {
    let cases: [(&str, Arc<GradedRing>, &[&str]); 5] = [
        ("projective line", projective_line(), &["x"]),
        ("weighted line (2,3)", weighted_line(2, 3), &["x"]),
        ("product of lines", product_of_lines(), &["x0*y0"]),
        ("parity line", parity_line(), &["x"]),
        ("crossing lines", crossing_lines(), &["x"]),
    ];
    cases
        .into_iter()
        .map(|(name, ring, gens)| {
            let s = submonoid(&ring, gens).expect("valid example submonoid");
            (name, ring, s)
        })
        .collect()
}
