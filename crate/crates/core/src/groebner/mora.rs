//! Standard bases for the local degree order via Mora's tangent cone algorithm.

use crate::error::GbError;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

use super::dimension::max_standard_degree;
use super::reduce::reduce_step;
use super::{gm_update, pop_min_pair, s_polynomial, Budget, GroebnerBasis, Ideal, Pair};

struct Entry {
    poly: Polynomial,
    ecart: u32,
    mask: u64,
}

impl Entry {
    fn new(poly: Polynomial) -> Self {
        let ecart = poly.ecart();
        let mask = poly.leading_monomial().map_or(0, Monomial::support_mask);
        Entry { poly, ecart, mask }
    }
}

/// Mora's weak normal form: reduces the leading term of `h` with ecart-minimal
/// reducers, remembering intermediate results whose ecart is smaller than the
/// chosen reducer's. The result is zero iff `h` lies in the ideal of the local ring.
///
/// With `corner = Some(d)` every monomial of degree `>= d` is known to lie in the
/// local ideal, and such terms are dropped.
fn nf_mora(h: Polynomial, basis: &[Entry], corner: Option<u32>, budget: &Budget) -> Result<Polynomial, GbError> {
    let ring = h.ring().clone();
    let order = ring.order();
    let mut extra: Vec<Entry> = Vec::new();
    let mut h = truncate(h, corner);
    let mut steps = 0usize;
    loop {
        let Some(lt) = h.leading_term() else { return Ok(h) };
        let lm = &lt.mono;
        let mask = lm.support_mask();
        let mut best: Option<&Entry> = None;
        for e in basis.iter().chain(extra.iter()) {
            if e.mask & !mask != 0 {
                continue;
            }
            let elm = e.poly.leading_monomial().unwrap();
            if !elm.divides(lm) {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    e.ecart < b.ecart
                        || (e.ecart == b.ecart
                            && order.compare(elm, b.poly.leading_monomial().unwrap()) == std::cmp::Ordering::Less)
                }
            };
            if better {
                best = Some(e);
            }
        }
        let Some(g) = best else { return Ok(h) };
        let h_ecart = h.ecart();
        let g_poly = g.poly.clone();
        let g_ecart = g.ecart;
        if g_ecart > h_ecart {
            extra.push(Entry::new(h.clone()));
        }
        let glt = g_poly.leading_term().unwrap();
        let q = glt.mono.quotient_of(&lt.mono).unwrap();
        let (a, b) = lt.coeff.reduction_factors(&glt.coeff);
        let terms = reduce_step(h.terms(), 0, &a, &b, &q, &g_poly, order);
        h = truncate(Polynomial::from_sorted_terms(&ring, terms), corner);
        steps += 1;
        if steps % 16 == 0 {
            budget.check()?;
            h = h.normalize_content();
        }
    }
}

/// Terms are sorted by increasing degree in the local order, so the ones at or
/// above the corner form a suffix.
fn truncate(h: Polynomial, corner: Option<u32>) -> Polynomial {
    let Some(d) = corner else { return h };
    match h.terms().iter().position(|t| t.mono.degree() >= d) {
        None => h,
        Some(cut) => {
            let ring = h.ring().clone();
            let mut terms = h.into_terms();
            terms.truncate(cut);
            Polynomial::from_sorted_terms(&ring, terms)
        }
    }
}

/// Weak normal form of `p` with respect to a local standard basis.
pub fn mora_normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial, GbError> {
    if basis.order().is_global() {
        return Err(GbError::WrongOrder { expected: "local" });
    }
    let entries: Vec<Entry> = basis.elements().iter().cloned().map(Entry::new).collect();
    nf_mora(p.reorder(basis.ring()), &entries, None, &Budget::unlimited())
}

pub fn mora_standard_basis(ideal: &Ideal) -> Result<GroebnerBasis, GbError> {
    mora_standard_basis_with_budget(ideal, &Budget::unlimited())
}

/// Standard basis of `ideal` in the localization at the origin, for the
/// negative degree reverse lexicographic order.
pub fn mora_standard_basis_with_budget(ideal: &Ideal, budget: &Budget) -> Result<GroebnerBasis, GbError> {
    let order = MonomialOrder::NegDegRevLex;
    let ideal = ideal.reorder(order);
    let ring = ideal.ring().clone();

    let mut input = super::echelonize(ideal.generators(), budget)?;
    // Low ecart first: generators with a pure lowest-degree part are cheap reducers.
    input.sort_by(|a, b| {
        a.ecart()
            .cmp(&b.ecart())
            .then_with(|| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()))
    });

    let mut entries: Vec<Entry> = Vec::new();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let nvars = ring.nvars();
    // Once the leading monomials leave a finite staircase of top degree D, every
    // monomial of degree D + 1 lies in the local ideal (Nakayama).
    let mut corner: Option<u32> = noether_degree(&ideal, budget)?;
    let add = |h: Polynomial,
               entries: &mut Vec<Entry>,
               basis: &mut Vec<Polynomial>,
               active: &mut Vec<bool>,
               pairs: &mut Vec<Pair>,
               corner: &mut Option<u32>| {
        entries.push(Entry::new(h.clone()));
        basis.push(h);
        active.push(true);
        let idx = basis.len() - 1;
        let ecarts: Vec<u32> = entries.iter().map(|e| e.ecart).collect();
        gm_update(basis, active, pairs, idx, |i, j, lcm| lcm.degree() + ecarts[i].max(ecarts[j]));
        let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        if let Some(top) = max_standard_degree(&lms, nvars) {
            *corner = Some(corner.map_or(top + 1, |d| d.min(top + 1)));
        }
    };

    if let Some(d) = corner {
        for m in monomials_of_degree(nvars, d) {
            let h = Polynomial::monomial(&ring, ring.field().one(), m);
            add(h, &mut entries, &mut basis, &mut active, &mut pairs, &mut corner);
        }
    }
    for f in input {
        budget.check()?;
        let h = nf_mora(f, &entries, corner, budget)?;
        if h.is_zero() {
            continue;
        }
        let h = h.normalize_content();
        if h.leading_monomial().unwrap().is_one() {
            return Ok(unit(&ring));
        }
        add(h, &mut entries, &mut basis, &mut active, &mut pairs, &mut corner);
    }

    while let Some(pair) = pop_min_pair(&mut pairs, order) {
        budget.check()?;
        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        if corner.is_some_and(|d| pair.lcm.degree() >= d) {
            continue;
        }
        let h = nf_mora(s, &entries, corner, budget)?;
        if h.is_zero() {
            continue;
        }
        let h = h.normalize_content();
        if h.leading_monomial().unwrap().is_one() {
            return Ok(unit(&ring));
        }
        add(h, &mut entries, &mut basis, &mut active, &mut pairs, &mut corner);
    }

    // Minimal standard basis: drop elements whose leading monomial is a proper
    // multiple of (or equal to an earlier) leading monomial.
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    let mut elements: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = lms
            .iter()
            .enumerate()
            .any(|(l, lo)| l != k && lo.divides(&lms[k]) && (*lo != lms[k] || l < k));
        if !redundant {
            elements.push(g.clone());
        }
    }
    elements.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    Ok(GroebnerBasis { ring, elements, reduced: false })
}

/// Above this many monomials of one degree the search for a corner is abandoned.
const CORNER_MONOMIAL_LIMIT: usize = 6000;

/// The search also stops at this degree; positive-dimensional germs never reach a
/// plateau and would otherwise run to the monomial limit.
const CORNER_DEGREE_LIMIT: u32 = 24;

/// Smallest `k` with `m^k ⊆ I` in the local ring, when it is found before the
/// monomial count of degree `k` exceeds [`CORNER_MONOMIAL_LIMIT`] or `k` exceeds
/// [`CORNER_DEGREE_LIMIT`].
///
/// Equal dimensions of `k[x]/(I + m^k)` and `k[x]/(I + m^(k+1))` give
/// `m^k ⊆ I + m^(k+1)`, hence `m^k ⊆ I` locally by Nakayama. Without such a
/// bound the tangent cone normal form can expand into very long power series.
pub(crate) fn noether_degree(ideal: &Ideal, budget: &Budget) -> Result<Option<u32>, GbError> {
    let ring = ideal.ring().with_order(MonomialOrder::DegRevLex);
    let gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.reorder(&ring)).collect();
    let mut prev: Option<u64> = None;
    for k in 1u32.. {
        let monos = monomials_of_degree(ring.nvars(), k);
        if monos.len() > CORNER_MONOMIAL_LIMIT || k > CORNER_DEGREE_LIMIT {
            return Ok(None);
        }
        let mut all = gens.clone();
        all.extend(monos.into_iter().map(|m| Polynomial::monomial(&ring, ring.field().one(), m)));
        let basis = super::buchberger_with_budget(&Ideal::new(&ring, all).expect("same ring"), MonomialOrder::DegRevLex, budget)?;
        let dim = super::staircase_dimension(&basis).finite().expect("m-primary ideal");
        if prev == Some(dim) {
            return Ok(Some(k - 1));
        }
        prev = Some(dim);
    }
    unreachable!()
}

pub(crate) fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    fn rec(var: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var + 1 == exps.len() {
            exps[var] = left as u16;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[var] = e as u16;
            rec(var + 1, left - e, exps, out);
        }
        exps[var] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut exps, &mut out);
    out
}

fn unit(ring: &crate::poly::RingRef) -> GroebnerBasis {
    GroebnerBasis { ring: ring.clone(), elements: vec![Polynomial::one(ring)], reduced: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::groebner::{staircase_dimension, DimensionResult};
    use crate::parse::parse_polynomial;
    use crate::poly::{Ring, RingRef};

    fn ring(names: &[&str]) -> RingRef {
        Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Rationals, MonomialOrder::DegRevLex)
    }

    fn local_dim(r: &RingRef, gens: &[&str]) -> DimensionResult {
        let i = Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap();
        staircase_dimension(&mora_standard_basis(&i).unwrap())
    }

    #[test]
    fn milnor_numbers_of_simple_germs() {
        let r = ring(&["x", "y"]);
        // A2, D4 and E6 gradient ideals.
        assert_eq!(local_dim(&r, &["2*x", "3*y^2"]), DimensionResult::Finite { count: 2 });
        assert_eq!(local_dim(&r, &["3*x^2 - 3*y^2", "-6*x*y"]), DimensionResult::Finite { count: 4 });
        assert_eq!(local_dim(&r, &["3*x^2", "4*y^3"]), DimensionResult::Finite { count: 6 });
    }

    #[test]
    fn zeros_away_from_the_origin_are_invisible() {
        let r = ring(&["x", "y"]);
        assert_eq!(local_dim(&r, &["x*(x - 1)", "y"]), DimensionResult::Finite { count: 1 });
        assert_eq!(local_dim(&r, &["x^2*(1 + y)", "y^2 - y^3"]), DimensionResult::Finite { count: 4 });
        assert_eq!(local_dim(&r, &["x - 1", "y"]), DimensionResult::Finite { count: 0 });
    }

    #[test]
    fn units_in_the_local_ring_give_the_unit_basis() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, vec![parse_polynomial("1 + x + y^2", &r).unwrap()]).unwrap();
        assert!(mora_standard_basis(&i).unwrap().is_unit());
    }

    #[test]
    fn weak_normal_form_detects_local_membership() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, vec![parse_polynomial("x - x^2", &r).unwrap(), parse_polynomial("y", &r).unwrap()]).unwrap();
        let basis = mora_standard_basis(&i).unwrap();
        // x = (x - x^2) / (1 - x) locally, while x - 1 is a unit.
        assert!(mora_normal_form(&parse_polynomial("x", &r).unwrap(), &basis).unwrap().is_zero());
        assert!(!mora_normal_form(&parse_polynomial("x - 1", &r).unwrap(), &basis).unwrap().is_zero());
        let global = crate::groebner::buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        assert!(matches!(mora_normal_form(&parse_polynomial("x", &r).unwrap(), &global), Err(GbError::WrongOrder { .. })));
    }

    #[test]
    fn corner_degree_of_a_monomial_ideal() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, vec![parse_polynomial("x^2", &r).unwrap(), parse_polynomial("y^3", &r).unwrap()]).unwrap();
        // The socle x*y^2 has degree 3, so m^4 is the first power inside.
        assert_eq!(noether_degree(&i, &Budget::unlimited()).unwrap(), Some(4));
        let line = Ideal::new(&r, vec![parse_polynomial("x", &r).unwrap()]).unwrap();
        assert_eq!(noether_degree(&line, &Budget::unlimited()).unwrap(), None);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }
}
