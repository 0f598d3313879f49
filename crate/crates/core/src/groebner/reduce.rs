//! Division of a polynomial by a list of reducers.

use std::cmp::Ordering;

use crate::error::GbError;
use crate::field::FieldSpec;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};

use super::Budget;

pub(crate) struct Reducer<'a> {
    polys: Vec<&'a Polynomial>,
    masks: Vec<u64>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(polys: &'a [Polynomial]) -> Self {
        let polys: Vec<&Polynomial> = polys.iter().filter(|p| !p.is_zero()).collect();
        let masks = polys.iter().map(|p| p.leading_monomial().unwrap().support_mask()).collect();
        Reducer { polys, masks }
    }

    pub(crate) fn from_active(polys: &'a [Polynomial], active: &[bool]) -> Self {
        let polys: Vec<&Polynomial> = polys
            .iter()
            .zip(active)
            .filter_map(|(p, &a)| (a && !p.is_zero()).then_some(p))
            .collect();
        let masks = polys.iter().map(|p| p.leading_monomial().unwrap().support_mask()).collect();
        Reducer { polys, masks }
    }

    /// Shortest reducer whose leading monomial divides `m`.
    pub(crate) fn find(&self, m: &Monomial) -> Option<&'a Polynomial> {
        let mask = m.support_mask();
        let mut best: Option<&'a Polynomial> = None;
        for (p, &pm) in self.polys.iter().zip(&self.masks) {
            if pm & !mask != 0 {
                continue;
            }
            if p.leading_monomial().unwrap().divides(m) && best.is_none_or(|b| p.len() < b.len()) {
                best = Some(p);
            }
        }
        best
    }
}

/// `a * h - b * q * g`, where the term of `h` at `idx` is cancelled by the leading
/// term of `q * g` and every term of `h` before `idx` is larger than it.
pub(crate) fn reduce_step(
    h: &[Term],
    idx: usize,
    a: &crate::field::Coeff,
    b: &crate::field::Coeff,
    q: &Monomial,
    g: &Polynomial,
    order: crate::monomial::MonomialOrder,
) -> Vec<Term> {
    let scale_h = !a.is_one();
    let mut out = Vec::with_capacity(h.len() + g.len());
    for t in &h[..idx] {
        out.push(if scale_h { Term { coeff: t.coeff.mul(a), mono: t.mono.clone() } } else { t.clone() });
    }
    let nb = b.neg();
    let tail = &g.terms()[1..];
    let (mut i, mut j) = (idx + 1, 0);
    let mut pending: Option<Term> = None;
    while i < h.len() || j < tail.len() || pending.is_some() {
        if pending.is_none() && j < tail.len() {
            let t = &tail[j];
            pending = Some(Term { coeff: t.coeff.mul(&nb), mono: t.mono.mul(q) });
            j += 1;
        }
        match (h.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => match order.compare(&x.mono, &y.mono) {
                Ordering::Greater => {
                    out.push(scaled(x, a, scale_h));
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                }
                Ordering::Equal => {
                    let y = pending.take().unwrap();
                    let c = if scale_h { x.coeff.mul(a).add(&y.coeff) } else { x.coeff.add(&y.coeff) };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: y.mono });
                    }
                    i += 1;
                }
            },
            (Some(x), None) => {
                out.push(scaled(x, a, scale_h));
                i += 1;
            }
            (None, Some(_)) => out.push(pending.take().unwrap()),
            (None, None) => break,
        }
    }
    out
}

fn scaled(t: &Term, a: &crate::field::Coeff, scale: bool) -> Term {
    if scale {
        Term { coeff: t.coeff.mul(a), mono: t.mono.clone() }
    } else {
        t.clone()
    }
}

/// Complete reduction: afterwards no term is divisible by a reducer's leading monomial.
/// Over Q the result is a scalar multiple of the remainder unless all reducers are monic.
pub(crate) fn reduce_full(p: Polynomial, reducer: &Reducer<'_>, budget: &Budget) -> Result<Polynomial, GbError> {
    reduce_from(p, 0, reducer, budget)
}

/// Like [`reduce_full`] but leaves the first `start` terms in place (up to the
/// common scalar factor).
pub(crate) fn reduce_from(
    p: Polynomial,
    start: usize,
    reducer: &Reducer<'_>,
    budget: &Budget,
) -> Result<Polynomial, GbError> {
    let ring = p.ring().clone();
    let order = ring.order();
    let rational = ring.field() == FieldSpec::Rationals;
    let mut terms = p.into_terms();
    let mut idx = start;
    let mut steps = 0usize;
    while idx < terms.len() {
        let Some(g) = reducer.find(&terms[idx].mono) else {
            idx += 1;
            continue;
        };
        let lt = g.leading_term().unwrap();
        let q = lt.mono.quotient_of(&terms[idx].mono).unwrap();
        let (a, b) = terms[idx].coeff.reduction_factors(&lt.coeff);
        terms = reduce_step(&terms, idx, &a, &b, &q, g, order);
        steps += 1;
        if steps % 32 == 0 {
            budget.check()?;
            if rational {
                terms = Polynomial::from_sorted_terms(&ring, terms).normalize_content().into_terms();
            }
        }
    }
    Ok(Polynomial::from_sorted_terms(&ring, terms))
}
