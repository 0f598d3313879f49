//! Gröbner bases for global orders, standard bases for the local order, and the
//! derived ideal operations (elimination, saturation, dimensions).

mod dimension;
mod mora;
mod reduce;
mod saturation;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::time::{Duration, Instant};

pub use dimension::{krull_dimension, krull_dimension_of_monomials, staircase_dimension, DimensionResult};
pub use mora::{mora_normal_form, mora_standard_basis, mora_standard_basis_with_budget};
pub use saturation::{
    eliminate, eliminate_with_budget, intersect, intersect_with_budget, radical_membership,
    radical_membership_with_budget, saturate_element, saturate_element_with_budget, saturate_ideal,
    saturate_ideal_with_budget, translate_ideal,
};

use crate::error::{GbError, PolyError};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, Polynomial, RingRef};
use reduce::{reduce_from, reduce_full, Reducer};

/// Wall-clock limit shared by long-running computations.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(secs: u64) -> Self {
        Budget { deadline: Some(Instant::now() + Duration::from_secs(secs)) }
    }

    pub fn until(deadline: Instant) -> Self {
        Budget { deadline: Some(deadline) }
    }

    pub fn check(&self) -> Result<(), GbError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(GbError::BudgetExceeded),
            _ => Ok(()),
        }
    }
}

/// An ideal given by generators; zero generators are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Self, PolyError> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn unit(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), generators: vec![Polynomial::one(ring)] }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when some generator is a nonzero constant.
    pub fn has_unit_generator(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, PolyError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(PolyError::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Ideal { ring: self.ring.clone(), generators: gens })
    }

    /// Same generators in a ring that differs only in its monomial order.
    pub fn reorder(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.with_order(order);
        Ideal {
            generators: self.generators.iter().map(|g| g.reorder(&ring)).collect(),
            ring,
        }
    }
}

/// A Gröbner basis (global order) or standard basis (local order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingRef,
    elements: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    /// True when the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn ideal(&self) -> Ideal {
        Ideal { ring: self.ring.clone(), generators: self.elements.clone() }
    }

    /// Checks that every S-polynomial reduces to zero (global orders only).
    pub fn is_groebner(&self) -> bool {
        assert!(self.order().is_global());
        let reducer = Reducer::new(&self.elements);
        let budget = Budget::unlimited();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                match reduce_full(s, &reducer, &budget) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// `lcm/LT(f) * f * lc(g) - lcm/LT(g) * g * lc(f)`, scaled to stay integral over Q.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_term().unwrap(), g.leading_term().unwrap());
    let lcm = lf.mono.lcm(&lg.mono);
    let qf = lf.mono.quotient_of(&lcm).unwrap();
    let qg = lg.mono.quotient_of(&lcm).unwrap();
    let (a, b) = lf.coeff.reduction_factors(&lg.coeff);
    // a*lc(f) == b*lc(g)
    let left = f.mul_term(&a, &qf);
    let right = g.mul_term(&b, &qg);
    &left - &right
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Row-echelon preprocessing: returns polynomials spanning the same vector space
/// with pairwise distinct leading monomials.
pub(crate) fn echelonize(polys: &[Polynomial], budget: &Budget) -> Result<Vec<Polynomial>, GbError> {
    let mut pivots: HashMap<Monomial, Polynomial> = HashMap::new();
    let mut order_seen: Vec<Monomial> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        if k % 64 == 0 {
            budget.check()?;
        }
        let mut h = p.normalize_content();
        while let Some(lt) = h.leading_term().cloned() {
            match pivots.get(&lt.mono) {
                Some(piv) => {
                    let (a, b) = lt.coeff.reduction_factors(piv.leading_coeff().unwrap());
                    h = (&h.scale(&a) - &piv.scale(&b)).normalize_content();
                }
                None => {
                    order_seen.push(lt.mono.clone());
                    pivots.insert(lt.mono, h);
                    break;
                }
            }
        }
    }
    Ok(order_seen.into_iter().map(|m| pivots.remove(&m).unwrap()).collect())
}

/// Gebauer–Möller update shared by the global and local engines.
/// `active[k]` is cleared for elements made redundant by `h`.
fn gm_update(
    basis: &[Polynomial],
    active: &mut [bool],
    pairs: &mut Vec<Pair>,
    h_idx: usize,
    sugar_of: impl Fn(usize, usize, &Monomial) -> u32,
) {
    let lm_h = basis[h_idx].leading_monomial().unwrap().clone();
    let candidates: Vec<(usize, Monomial)> = (0..h_idx)
        .filter(|&k| active[k])
        .map(|k| (k, basis[k].leading_monomial().unwrap().lcm(&lm_h)))
        .collect();

    // Chain criterion among the new pairs; coprime pairs are kept here so that they
    // can shadow others, then dropped by the product criterion.
    let mut keep = vec![true; candidates.len()];
    for a in 0..candidates.len() {
        let (ka, ref lcm_a) = candidates[a];
        let coprime_a = basis[ka].leading_monomial().unwrap().is_coprime(&lm_h);
        if coprime_a {
            continue;
        }
        for b in 0..candidates.len() {
            if a == b || !keep[b] {
                continue;
            }
            let lcm_b = &candidates[b].1;
            if lcm_b.divides(lcm_a) && (lcm_b != lcm_a || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    // Among pairs with identical lcm keep exactly one; drop it entirely if any of the
    // group is coprime with h.
    let mut new_pairs = Vec::new();
    let mut handled: Vec<bool> = vec![false; candidates.len()];
    for a in 0..candidates.len() {
        if !keep[a] || handled[a] {
            continue;
        }
        let lcm_a = candidates[a].1.clone();
        let mut any_coprime = false;
        for b in a..candidates.len() {
            if keep[b] && candidates[b].1 == lcm_a {
                handled[b] = true;
                let kb = candidates[b].0;
                if basis[kb].leading_monomial().unwrap().is_coprime(&lm_h) {
                    any_coprime = true;
                }
            }
        }
        if !any_coprime {
            let k = candidates[a].0;
            new_pairs.push(Pair { i: k, j: h_idx, sugar: sugar_of(k, h_idx, &lcm_a), lcm: lcm_a });
        }
    }

    pairs.retain(|p| {
        if !lm_h.divides(&p.lcm) {
            return true;
        }
        let lm_i = basis[p.i].leading_monomial().unwrap();
        let lm_j = basis[p.j].leading_monomial().unwrap();
        lm_i.lcm(&lm_h) == p.lcm || lm_j.lcm(&lm_h) == p.lcm
    });
    pairs.extend(new_pairs);

    for k in 0..h_idx {
        if active[k] && lm_h.divides(basis[k].leading_monomial().unwrap()) {
            active[k] = false;
        }
    }
}

fn pop_min_pair(pairs: &mut Vec<Pair>, order: MonomialOrder) -> Option<Pair> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0;
    for k in 1..pairs.len() {
        if pair_cmp(&pairs[k], &pairs[best], order) == Ordering::Less {
            best = k;
        }
    }
    Some(pairs.swap_remove(best))
}

fn pair_cmp(a: &Pair, b: &Pair, order: MonomialOrder) -> Ordering {
    a.sugar
        .cmp(&b.sugar)
        .then_with(|| a.lcm.degree().cmp(&b.lcm.degree()))
        .then_with(|| order.compare(&a.lcm, &b.lcm))
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

/// Reduced Gröbner basis for a global order.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis, GbError> {
    buchberger_with_budget(ideal, order, &Budget::unlimited())
}

pub fn buchberger_with_budget(
    ideal: &Ideal,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GbError> {
    if !order.is_global() {
        return Err(GbError::WrongOrder { expected: "global" });
    }
    let ideal = ideal.reorder(order);
    let ring = ideal.ring().clone();

    let mut input = echelonize(ideal.generators(), budget)?;
    // Monomials first, then by ascending leading monomial. Monomials cut every later
    // reduction short; processed late they leave long tails whose coefficients
    // swell over Q.
    input.sort_by(|a, b| {
        (a.len() != 1)
            .cmp(&(b.len() != 1))
            .then_with(|| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    // Normal strategy: pair selection by total degree of the lcm, then by the order.
    let sugar = |_: usize, _: usize, lcm: &Monomial| lcm.degree();

    let insert = |h: Polynomial, basis: &mut Vec<Polynomial>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        basis.push(h);
        active.push(true);
        let idx = basis.len() - 1;
        gm_update(basis, active, pairs, idx, sugar);
        tail_reduce_by(basis, active, idx, budget)
    };

    for f in input {
        budget.check()?;
        let reducer = Reducer::from_active(&basis, &active);
        let h = reduce_full(f, &reducer, budget)?;
        if h.is_zero() {
            continue;
        }
        let h = h.normalize_content();
        if h.leading_monomial().unwrap().is_one() {
            return Ok(unit_basis(&ring));
        }
        insert(h, &mut basis, &mut active, &mut pairs)?;
    }

    while let Some(pair) = pop_min_pair(&mut pairs, order) {
        budget.check()?;
        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        let reducer = Reducer::from_active(&basis, &active);
        let h = reduce_full(s, &reducer, budget)?;
        if h.is_zero() {
            continue;
        }
        let h = h.normalize_content();
        if h.leading_monomial().unwrap().is_one() {
            return Ok(unit_basis(&ring));
        }
        insert(h, &mut basis, &mut active, &mut pairs)?;
    }

    let kept: Vec<Polynomial> = basis
        .into_iter()
        .zip(active)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();
    interreduce(&ring, kept, budget)
}

/// Rewrites the tails of active elements that the new element `idx` can reduce.
///
/// Over Q, tails left unreduced feed their coefficients into every later
/// S-polynomial and heights grow geometrically. A rewritten element keeps its
/// leading monomial and differs from the old one by multiples of basis elements
/// with smaller leading terms, so processed pairs remain valid.
fn tail_reduce_by(basis: &mut [Polynomial], active: &[bool], idx: usize, budget: &Budget) -> Result<(), GbError> {
    let lm = basis[idx].leading_monomial().unwrap().clone();
    let touched: Vec<usize> = (0..basis.len())
        .filter(|&k| k != idx && active[k] && basis[k].terms()[1..].iter().any(|t| lm.divides(&t.mono)))
        .collect();
    if touched.is_empty() {
        return Ok(());
    }
    // An element never reduces its own tail, and stale versions of the others
    // are still ideal elements with the same leading terms.
    let snapshot = basis.to_vec();
    let reducer = Reducer::from_active(&snapshot, active);
    for k in touched {
        basis[k] = reduce_from(basis[k].clone(), 1, &reducer, budget)?.normalize_content();
    }
    Ok(())
}

fn unit_basis(ring: &RingRef) -> GroebnerBasis {
    GroebnerBasis { ring: ring.clone(), elements: vec![Polynomial::one(ring)], reduced: true }
}

/// Minimalizes, tail-reduces and makes monic; sorted by ascending leading monomial.
fn interreduce(ring: &RingRef, polys: Vec<Polynomial>, budget: &Budget) -> Result<GroebnerBasis, GbError> {
    let order = ring.order();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in polys.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = polys.iter().enumerate().any(|(l, other)| {
            let lo = other.leading_monomial().unwrap();
            l != k && lo.divides(lm) && (lo != lm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, g)| g.clone())
            .collect();
        let reducer = Reducer::new(&others);
        let r = reduce_full(minimal[k].clone(), &reducer, budget)?;
        reduced.push(r.make_monic());
    }
    Ok(GroebnerBasis { ring: ring.clone(), elements: reduced, reduced: true })
}

/// Fully reduced remainder of `p` modulo `basis`. For a reduced (monic) basis this
/// is the exact normal form; it is zero iff `p` lies in the ideal (global orders).
pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    normal_form_with_budget(p, basis, &Budget::unlimited()).expect("unlimited budget")
}

pub fn normal_form_with_budget(p: &Polynomial, basis: &GroebnerBasis, budget: &Budget) -> Result<Polynomial, GbError> {
    if !basis.order().is_global() {
        return Err(GbError::WrongOrder { expected: "global" });
    }
    let p = p.reorder(basis.ring());
    let reducer = Reducer::new(&basis.elements);
    reduce_full(p, &reducer, budget)
}

/// Membership test through the normal form.
pub fn contains(basis: &GroebnerBasis, p: &Polynomial) -> bool {
    normal_form(p, basis).is_zero()
}

/// Whether every generator of `inner` lies in the ideal of `outer`.
pub fn ideal_contains(outer: &GroebnerBasis, inner: &Ideal) -> bool {
    inner.generators().iter().all(|g| contains(outer, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::poly::Ring;

    fn ring(names: &[&str]) -> RingRef {
        Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Rationals, MonomialOrder::DegRevLex)
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn already_reduced() {
        let r = ring(&["x", "y"]);
        let g = buchberger(&ideal(&r, &["x", "y"]), MonomialOrder::DegRevLex).unwrap();
        let shown: Vec<String> = g.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["y", "x"]);
        assert!(g.is_reduced());
    }

    #[test]
    fn small_basis_is_groebner() {
        let r = ring(&["x", "y"]);
        let g = buchberger(&ideal(&r, &["x^2 - y", "x^3"]), MonomialOrder::DegRevLex).unwrap();
        assert!(g.is_groebner());
        // x^3 = x*(x^2 - y) + x*y, so x*y and y^2 join the basis.
        let lms: Vec<String> = g.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(lms, vec!["y^2", "x*y", "x^2 - y"]);
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let gx = buchberger(&ideal(&r, &["x"]), MonomialOrder::DegRevLex).unwrap();
        assert!(normal_form(&parse_polynomial("x^2", &r).unwrap(), &gx).is_zero());
        let g = buchberger(&ideal(&r, &["x - y"]), MonomialOrder::DegRevLex).unwrap();
        let nf = normal_form(&parse_polynomial("x + y", &r).unwrap(), &g);
        assert_eq!(nf, parse_polynomial("2*y", &r).unwrap());
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring(&["x", "y"]);
        let g = buchberger(&ideal(&r, &["x*y - 1", "x"]), MonomialOrder::DegRevLex).unwrap();
        assert!(g.is_unit());
    }

    #[test]
    fn local_order_rejected() {
        let r = ring(&["x"]);
        assert!(buchberger(&ideal(&r, &["x"]), MonomialOrder::NegDegRevLex).is_err());
    }

    #[test]
    fn deterministic_output() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["x^2 + y*z - 2", "y^2 - x*z + 1", "z^3 - x*y"]);
        let a = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        let b = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        let sa: Vec<String> = a.elements().iter().map(|p| p.to_string()).collect();
        let sb: Vec<String> = b.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(sa, sb);
        assert!(a.is_groebner());
    }
}

