//! Elimination, saturation and intersection through auxiliary variables.

use crate::error::GbError;
use crate::field::Coeff;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

use super::{buchberger_with_budget, Budget, Ideal};

const SAT_VAR: &str = "_w";
const TAG_VAR: &str = "_u";

pub fn eliminate(ideal: &Ideal, first_k: usize) -> Ideal {
    eliminate_with_budget(ideal, first_k, &Budget::unlimited()).expect("unlimited budget")
}

/// `ideal ∩ k[x_{k+1}, …]`, returned in the ring without the first `first_k`
/// variables (ordered by degrevlex).
pub fn eliminate_with_budget(ideal: &Ideal, first_k: usize, budget: &Budget) -> Result<Ideal, GbError> {
    if first_k == 0 {
        return Ok(ideal.clone());
    }
    let ring = ideal.ring();
    let sub = ring.drop_front(first_k, MonomialOrder::DegRevLex);
    let basis = buchberger_with_budget(ideal, MonomialOrder::BlockElimination { split: first_k }, budget)?;
    let gens = basis
        .elements()
        .iter()
        .filter_map(|g| g.restrict_front(&sub, first_k))
        .collect();
    Ok(Ideal::new(&sub, gens).expect("same ring"))
}

pub fn saturate_element(ideal: &Ideal, g: &Polynomial) -> Ideal {
    saturate_element_with_budget(ideal, g, &Budget::unlimited()).expect("unlimited budget")
}

/// `ideal : g^∞` from `ideal + (1 - w·g)` with `w` eliminated.
pub fn saturate_element_with_budget(ideal: &Ideal, g: &Polynomial, budget: &Budget) -> Result<Ideal, GbError> {
    assert!(!g.is_zero(), "saturation by zero");
    if g.is_constant() || ideal.is_zero() || ideal.has_unit_generator() {
        return Ok(ideal.clone());
    }
    let ring = ideal.ring();
    let ext = ring.prepend_vars(&[SAT_VAR], MonomialOrder::BlockElimination { split: 1 });
    let w = Polynomial::var(&ext, 0);
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|f| f.embed_front(&ext, 1)).collect();
    gens.push(&Polynomial::one(&ext) - &(&w * &g.reorder(ring).embed_front(&ext, 1)));
    let elim = eliminate_with_budget(&Ideal::new(&ext, gens).expect("same ring"), 1, budget)?;
    Ok(back_to(ring, &elim))
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Ideal {
    intersect_with_budget(a, b, &Budget::unlimited()).expect("unlimited budget")
}

/// `a ∩ b` from `u·a + (1 - u)·b` with the tag `u` eliminated.
pub fn intersect_with_budget(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal, GbError> {
    if a.is_zero() || b.has_unit_generator() {
        return Ok(a.clone());
    }
    if b.is_zero() || a.has_unit_generator() {
        return Ok(Ideal::new(a.ring(), b.generators().iter().map(|g| g.reorder(a.ring())).collect())
            .expect("same ring"));
    }
    let ring = a.ring();
    let ext = ring.prepend_vars(&[TAG_VAR], MonomialOrder::BlockElimination { split: 1 });
    let u = Polynomial::var(&ext, 0);
    let one_minus_u = &Polynomial::one(&ext) - &u;
    let mut gens: Vec<Polynomial> = a.generators().iter().map(|f| &u * &f.embed_front(&ext, 1)).collect();
    gens.extend(b.generators().iter().map(|f| &one_minus_u * &f.reorder(ring).embed_front(&ext, 1)));
    let elim = eliminate_with_budget(&Ideal::new(&ext, gens).expect("same ring"), 1, budget)?;
    Ok(back_to(ring, &elim))
}

pub fn saturate_ideal(ideal: &Ideal, by: &Ideal) -> Ideal {
    saturate_ideal_with_budget(ideal, by, &Budget::unlimited()).expect("unlimited budget")
}

/// `ideal : by^∞` as the intersection of the saturations by each generator of `by`.
///
/// Returns `ideal` unchanged when `by` contains a unit or `1 ∈ ideal + by`; in the
/// latter case every power of `by` is comaximal with `ideal`.
pub fn saturate_ideal_with_budget(ideal: &Ideal, by: &Ideal, budget: &Budget) -> Result<Ideal, GbError> {
    assert!(!by.is_zero(), "saturation by the zero ideal");
    let by = Ideal::new(ideal.ring(), by.generators().iter().map(|g| g.reorder(ideal.ring())).collect())
        .expect("same variables");
    if by.has_unit_generator() {
        return Ok(ideal.clone());
    }
    // A reduced basis is a far better starting point for the eliminations than
    // raw generators such as long lists of minors.
    let base = back_to(ideal.ring(), &buchberger_with_budget(ideal, MonomialOrder::DegRevLex, budget)?.ideal());
    let sum = base.sum(&by).expect("same ring");
    if buchberger_with_budget(&sum, MonomialOrder::DegRevLex, budget)?.is_unit() {
        return Ok(ideal.clone());
    }
    let mut acc: Option<Ideal> = None;
    for g in by.generators() {
        let sat = saturate_element_with_budget(&base, g, budget)?;
        // Interreduce so the next intersection starts from a small generating set.
        let sat = buchberger_with_budget(&sat, MonomialOrder::DegRevLex, budget)?.ideal();
        let sat = back_to(ideal.ring(), &sat);
        acc = Some(match acc {
            None => sat,
            Some(prev) => {
                let both = intersect_with_budget(&prev, &sat, budget)?;
                back_to(ideal.ring(), &buchberger_with_budget(&both, MonomialOrder::DegRevLex, budget)?.ideal())
            }
        });
    }
    Ok(acc.expect("nonzero ideal has a generator"))
}

pub fn radical_membership(g: &Polynomial, ideal: &Ideal) -> bool {
    radical_membership_with_budget(g, ideal, &Budget::unlimited()).expect("unlimited budget")
}

/// `g ∈ √ideal` iff `1 ∈ ideal + (1 - w·g)`.
pub fn radical_membership_with_budget(g: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool, GbError> {
    if g.is_zero() || ideal.has_unit_generator() {
        return Ok(true);
    }
    let ring = ideal.ring();
    let ext = ring.prepend_vars(&[SAT_VAR], MonomialOrder::DegRevLex);
    let w = Polynomial::var(&ext, 0);
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|f| f.embed_front(&ext, 1)).collect();
    gens.push(&Polynomial::one(&ext) - &(&w * &g.reorder(ring).embed_front(&ext, 1)));
    let basis = buchberger_with_budget(&Ideal::new(&ext, gens).expect("same ring"), MonomialOrder::DegRevLex, budget)?;
    Ok(basis.is_unit())
}

/// Substitutes `x_i ↦ x_i + point_i`, moving `point` to the origin.
pub fn translate_ideal(ideal: &Ideal, point: &[Coeff]) -> Ideal {
    let ring = ideal.ring();
    assert_eq!(point.len(), ring.nvars(), "point length");
    if point.iter().all(Coeff::is_zero) {
        return ideal.clone();
    }
    let images: Vec<Polynomial> = point
        .iter()
        .enumerate()
        .map(|(i, c)| &Polynomial::var(ring, i) + &Polynomial::constant(ring, c.clone()))
        .collect();
    let gens = ideal.generators().iter().map(|f| f.substitute(ring, &images)).collect();
    Ideal::new(ring, gens).expect("same ring")
}

/// Same generators in `ring`, which has the same variables in another order.
fn back_to(ring: &crate::poly::RingRef, ideal: &Ideal) -> Ideal {
    Ideal::new(ring, ideal.generators().iter().map(|g| g.reorder(ring)).collect()).expect("same ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::groebner::{buchberger, contains};
    use crate::parse::parse_polynomial;
    use crate::poly::{Ring, RingRef};

    fn ring(names: &[&str]) -> RingRef {
        Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Rationals, MonomialOrder::DegRevLex)
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
        let ga = buchberger(a, MonomialOrder::DegRevLex).unwrap();
        let gb = buchberger(b, MonomialOrder::DegRevLex).unwrap();
        ga.elements() == gb.elements()
    }

    #[test]
    fn elimination() {
        let r = ring(&["w", "x", "y"]);
        let e = eliminate(&ideal(&r, &["1 - w*x"]), 1);
        assert!(e.is_zero());
        let e = eliminate(&ideal(&r, &["1 - w*x", "x*y"]), 1);
        let sub = ring(&["x", "y"]);
        assert!(same_ideal(&back_to(&sub, &e), &ideal(&sub, &["y"])));
        let i = ideal(&r, &["x*y"]);
        assert_eq!(eliminate(&i, 0), i);
    }

    #[test]
    fn element_saturation() {
        let r = ring(&["x", "y"]);
        let s = saturate_element(&ideal(&r, &["x^2*y"]), &p(&r, "x"));
        assert!(same_ideal(&s, &ideal(&r, &["y"])));
        let s = saturate_element(&ideal(&r, &["x^2", "x*y"]), &p(&r, "x"));
        assert!(s.has_unit_generator() || buchberger(&s, MonomialOrder::DegRevLex).unwrap().is_unit());
        let i = ideal(&r, &["x^2 + y"]);
        assert_eq!(saturate_element(&i, &p(&r, "1")), i);
    }

    #[test]
    fn ideal_saturation() {
        let r = ring(&["x", "y", "z"]);
        let s = saturate_ideal(&ideal(&r, &["x*y", "x*z"]), &ideal(&r, &["x"]));
        assert!(same_ideal(&s, &ideal(&r, &["y", "z"])));
        let i = ideal(&r, &["x*y"]);
        assert_eq!(saturate_ideal(&i, &ideal(&r, &["1"])), i);
    }

    #[test]
    fn intersection() {
        let r = ring(&["x", "y"]);
        let i = intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"]));
        assert!(same_ideal(&i, &ideal(&r, &["x*y"])));
        let g = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        assert!(contains(&g, &p(&r, "x^2*y")));
    }

    #[test]
    fn radicals() {
        let r = ring(&["x", "y"]);
        assert!(radical_membership(&p(&r, "x"), &ideal(&r, &["x^2"])));
        assert!(!radical_membership(&p(&r, "y"), &ideal(&r, &["x"])));
    }

    #[test]
    fn translation() {
        let r = ring(&["x"]);
        let q = FieldSpec::Rationals;
        let t = translate_ideal(&ideal(&r, &["x - 1"]), &[q.one()]);
        assert_eq!(t, ideal(&r, &["x"]));
        let i = ideal(&r, &["x^2 - 3"]);
        assert_eq!(translate_ideal(&i, &[q.zero()]), i);
    }
}
