//! Buchberger's algorithm over free modules `k[x]^r`; ideals are the case `r = 1`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{Polynomial, Rational};

/// Term orders on `k[x]^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleOrder {
    /// Position over term: `e₀ > e₁ > …`, then the monomial order.
    Pot(MonomialOrder),
    /// Term over position: the monomial order, ties broken by position.
    Top(MonomialOrder),
}

impl ModuleOrder {
    fn monomial_order(&self) -> MonomialOrder {
        match *self {
            ModuleOrder::Pot(o) | ModuleOrder::Top(o) => o,
        }
    }

    fn compare(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match *self {
            ModuleOrder::Pot(o) => b.0.cmp(&a.0).then_with(|| o.compare(a.1, b.1)),
            ModuleOrder::Top(o) => o.compare(a.1, b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }
}

pub(crate) type Vector = Vec<Polynomial>;

#[derive(Clone, Debug)]
struct Lead {
    pos: usize,
    mono: Monomial,
    coeff: Rational,
}

fn lead(v: &[Polynomial], order: ModuleOrder) -> Option<Lead> {
    let mo = order.monomial_order();
    let mut best: Option<Lead> = None;
    for (pos, p) in v.iter().enumerate() {
        let Some((m, c)) = p.leading_term(mo) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some(b) => order.compare((pos, m), (b.pos, &b.mono)) == Ordering::Greater,
        };
        if better {
            best = Some(Lead {
                pos,
                mono: m.clone(),
                coeff: c.clone(),
            });
        }
    }
    best
}

fn is_zero(v: &[Polynomial]) -> bool {
    v.iter().all(Polynomial::is_zero)
}

fn scale(v: &[Polynomial], m: &Monomial, c: &Rational) -> Vector {
    v.iter().map(|p| p.mul_term(m, c)).collect()
}

fn sub_assign(v: &mut [Polynomial], w: &[Polynomial]) {
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a = &*a - b;
        }
    }
}

fn make_monic(v: Vector, order: ModuleOrder) -> Vector {
    match lead(&v, order) {
        Some(l) if !l.coeff.is_one() => {
            let inv = l.coeff.recip();
            v.iter().map(|p| p.scalar_mul(&inv)).collect()
        }
        _ => v,
    }
}

/// Full reduction of `v` by `basis` (which need not be a Gröbner basis).
pub(crate) fn reduce(v: &[Polynomial], basis: &[Vector], order: ModuleOrder) -> Vector {
    let leads: Vec<Lead> = basis
        .iter()
        .map(|g| lead(g, order).expect("basis elements are nonzero"))
        .collect();
    reduce_with_leads(v, basis, &leads, order)
}

fn reduce_with_leads(v: &[Polynomial], basis: &[Vector], leads: &[Lead], order: ModuleOrder) -> Vector {
    let mut p: Vector = v.to_vec();
    let mut r: Vector = v.iter().map(|q| Polynomial::zero(q.nvars())).collect();
    while let Some(lt) = lead(&p, order) {
        let divisor = leads
            .iter()
            .position(|l| l.pos == lt.pos && l.mono.divides(&lt.mono));
        match divisor {
            Some(k) => {
                let shift = lt.mono.div(&leads[k].mono).expect("divisibility checked");
                let c = &lt.coeff / &leads[k].coeff;
                sub_assign(&mut p, &scale(&basis[k], &shift, &c));
            }
            None => {
                let c = p[lt.pos].remove_term(&lt.mono).expect("leading term present");
                r[lt.pos].add_term(lt.mono, c);
            }
        }
    }
    r
}

fn s_vector(f: &[Polynomial], lf: &Lead, g: &[Polynomial], lg: &Lead) -> Vector {
    let l = lf.mono.lcm(&lg.mono);
    let mut a = scale(f, &l.div(&lf.mono).expect("lcm"), &lf.coeff.recip());
    let b = scale(g, &l.div(&lg.mono).expect("lcm"), &lg.coeff.recip());
    sub_assign(&mut a, &b);
    a
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// Elements are monic and sorted by descending leading term, so the output is
/// deterministic for a fixed input.
pub(crate) fn groebner(gens: &[Vector], order: ModuleOrder) -> Vec<Vector> {
    let rank = gens.first().map_or(0, Vec::len);
    let mut basis: Vec<Vector> = Vec::new();
    let mut leads: Vec<Lead> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let push = |v: Vector, basis: &mut Vec<Vector>, leads: &mut Vec<Lead>, pending: &mut BTreeSet<(usize, usize)>| {
        let v = make_monic(v, order);
        let l = lead(&v, order).expect("nonzero");
        let idx = basis.len();
        for (k, lk) in leads.iter().enumerate() {
            if lk.pos == l.pos {
                pending.insert((k, idx));
            }
        }
        basis.push(v);
        leads.push(l);
    };

    for g in gens {
        if !is_zero(g) {
            push(g.clone(), &mut basis, &mut leads, &mut pending);
        }
    }

    while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
        let la = leads[a.0].mono.lcm(&leads[a.1].mono);
        let lb = leads[b.0].mono.lcm(&leads[b.1].mono);
        order
            .monomial_order()
            .compare(&la, &lb)
            .then_with(|| a.cmp(b))
    }) {
        pending.remove(&(i, j));
        let (li, lj) = (&leads[i], &leads[j]);

        // Product criterion (ideals only).
        if rank == 1 && li.mono.is_coprime(&lj.mono) {
            continue;
        }
        // Chain criterion.
        let l = li.mono.lcm(&lj.mono);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].pos == li.pos
                && leads[k].mono.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_vector(&basis[i], li, &basis[j], lj);
        let r = reduce_with_leads(&s, &basis, &leads, order);
        if !is_zero(&r) {
            push(r, &mut basis, &mut leads, &mut pending);
        }
    }

    minimize_and_reduce(basis, order)
}

fn minimize_and_reduce(basis: Vec<Vector>, order: ModuleOrder) -> Vec<Vector> {
    let leads: Vec<Lead> = basis.iter().map(|g| lead(g, order).expect("nonzero")).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && leads[j].pos == leads[i].pos
                    && leads[j].mono.divides(&leads[i].mono)
                    && (leads[j].mono != leads[i].mono || j < i)
            })
        })
        .collect();
    let minimal: Vec<Vector> = keep.iter().map(|&i| basis[i].clone()).collect();

    let mut reduced: Vec<Vector> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vector> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let l = lead(&minimal[i], order).expect("nonzero");
        // Keep the leading term, reduce the tail.
        let mut tail = minimal[i].clone();
        tail[l.pos].remove_term(&l.mono);
        let mut r = if others.is_empty() {
            tail
        } else {
            reduce(&tail, &others, order)
        };
        r[l.pos].add_term(l.mono, l.coeff);
        reduced.push(make_monic(r, order));
    }
    reduced.sort_by(|a, b| {
        let la = lead(a, order).expect("nonzero");
        let lb = lead(b, order).expect("nonzero");
        order.compare((lb.pos, &lb.mono), (la.pos, &la.mono))
    });
    reduced
}

pub(crate) fn vector_is_zero(v: &[Polynomial]) -> bool {
    is_zero(v)
}
