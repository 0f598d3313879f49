//! Dimensions read off leading monomial ideals.

use serde::Serialize;

use crate::monomial::Monomial;

use super::GroebnerBasis;

/// Vector-space dimension of the quotient when finite, Krull dimension otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimensionResult {
    Finite { count: u64 },
    Infinite { krull_dim: usize },
}

impl DimensionResult {
    pub fn finite(&self) -> Option<u64> {
        match self {
            DimensionResult::Finite { count } => Some(*count),
            DimensionResult::Infinite { .. } => None,
        }
    }
}

/// Number of standard monomials (monomials outside the leading ideal).
///
/// For a global basis this is `dim k[x]/I`; for a local standard basis it is the
/// dimension of the quotient of the local ring at the origin.
pub fn staircase_dimension(basis: &GroebnerBasis) -> DimensionResult {
    let lms = basis.leading_monomials();
    staircase_of_monomials(&lms, basis.ring().nvars())
}

pub(crate) fn staircase_of_monomials(lms: &[Monomial], nvars: usize) -> DimensionResult {
    if lms.iter().any(Monomial::is_one) {
        return DimensionResult::Finite { count: 0 };
    }
    // Zero-dimensional iff every variable has a pure power among the leading monomials.
    let mut bounds = vec![u16::MAX; nvars];
    for m in lms {
        if let Some(i) = m.pure_power_var() {
            bounds[i] = bounds[i].min(m.exponents()[i]);
        }
    }
    if bounds.contains(&u16::MAX) {
        return DimensionResult::Infinite { krull_dim: krull_dimension_of_monomials(lms, nvars) };
    }
    let mut exps = vec![0u16; nvars];
    DimensionResult::Finite { count: count_standard(lms, &bounds, &mut exps, 0) }
}

/// Depth-first walk of the staircase. A partial exponent vector (later variables
/// zero) divisible by a leading monomial prunes all of its completions, and the
/// same holds for every larger exponent of the current variable.
fn count_standard(lms: &[Monomial], bounds: &[u16], exps: &mut [u16], var: usize) -> u64 {
    if var == exps.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        exps[var] = e;
        if in_monomial_ideal(lms, exps) {
            break;
        }
        total += count_standard(lms, bounds, exps, var + 1);
    }
    exps[var] = 0;
    total
}

/// Largest total degree of a standard monomial, or `None` if the staircase is infinite.
pub(crate) fn max_standard_degree(lms: &[Monomial], nvars: usize) -> Option<u32> {
    if lms.iter().any(Monomial::is_one) {
        return Some(0);
    }
    let mut bounds = vec![u16::MAX; nvars];
    for m in lms {
        if let Some(i) = m.pure_power_var() {
            bounds[i] = bounds[i].min(m.exponents()[i]);
        }
    }
    if bounds.contains(&u16::MAX) {
        return None;
    }
    let mut exps = vec![0u16; nvars];
    let mut best = 0;
    max_degree_walk(lms, &bounds, &mut exps, 0, 0, &mut best);
    Some(best)
}

fn max_degree_walk(lms: &[Monomial], bounds: &[u16], exps: &mut [u16], var: usize, deg: u32, best: &mut u32) {
    if var == exps.len() {
        *best = (*best).max(deg);
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        if in_monomial_ideal(lms, exps) {
            break;
        }
        max_degree_walk(lms, bounds, exps, var + 1, deg + e as u32, best);
    }
    exps[var] = 0;
}

fn in_monomial_ideal(lms: &[Monomial], exps: &[u16]) -> bool {
    lms.iter().any(|m| m.exponents().iter().zip(exps).all(|(a, b)| a <= b))
}

/// Krull dimension of `k[x]/I` for a global basis, from its leading ideal.
pub fn krull_dimension(basis: &GroebnerBasis) -> usize {
    krull_dimension_of_monomials(&basis.leading_monomials(), basis.ring().nvars())
}

/// Largest set of variables containing the support of no generator (an
/// independent set modulo the monomial ideal); `None`-like `0` for the unit ideal
/// is not distinguished here, callers check `is_unit` first.
pub fn krull_dimension_of_monomials(lms: &[Monomial], nvars: usize) -> usize {
    if lms.iter().any(Monomial::is_one) {
        return 0;
    }
    let supports: Vec<u64> = lms.iter().map(|m| support_bits(m)).collect();
    let mut best = 0;
    search_independent(&supports, nvars, 0, 0, 0, &mut best);
    best
}

fn support_bits(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | 1 << i)
}

fn search_independent(supports: &[u64], nvars: usize, var: usize, chosen: u64, size: usize, best: &mut usize) {
    if size + (nvars - var) <= *best {
        return;
    }
    if var == nvars {
        *best = size;
        return;
    }
    let with = chosen | 1 << var;
    if supports.iter().all(|s| s & !with != 0) {
        search_independent(supports, nvars, var + 1, with, size + 1, best);
    }
    search_independent(supports, nvars, var + 1, chosen, size, best);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Direct enumeration over a box that certainly contains the staircase.
    fn brute_force(lms: &[Monomial], nvars: usize, edge: u16) -> u64 {
        let mut count = 0;
        let mut exps = vec![0u16; nvars];
        loop {
            if !lms.iter().any(|g| g.exponents().iter().zip(&exps).all(|(a, b)| a <= b)) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == nvars {
                    return count;
                }
                exps[k] += 1;
                if exps[k] < edge {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn box_staircase() {
        let lms = [m(&[2, 0]), m(&[0, 3])];
        assert_eq!(staircase_of_monomials(&lms, 2), DimensionResult::Finite { count: 6 });
        assert_eq!(brute_force(&lms, 2, 8), 6);
    }

    #[test]
    fn maximal_ideal_staircase() {
        let lms = [m(&[1, 0]), m(&[0, 1])];
        assert_eq!(staircase_of_monomials(&lms, 2), DimensionResult::Finite { count: 1 });
    }

    #[test]
    fn staircase_with_mixed_generators() {
        let lms = [m(&[3, 0, 0]), m(&[0, 2, 0]), m(&[0, 0, 4]), m(&[1, 1, 1]), m(&[2, 0, 2])];
        let expected = brute_force(&lms, 3, 6);
        assert_eq!(staircase_of_monomials(&lms, 3).finite(), Some(expected));
    }

    #[test]
    fn krull_of_monomial_ideals() {
        assert_eq!(krull_dimension_of_monomials(&[], 3), 3);
        assert_eq!(krull_dimension_of_monomials(&[m(&[1, 0])], 2), 1);
        assert_eq!(krull_dimension_of_monomials(&[m(&[1, 1, 0]), m(&[0, 1, 1])], 3), 2);
        assert_eq!(
            staircase_of_monomials(&[m(&[1, 0, 0])], 3),
            DimensionResult::Infinite { krull_dim: 2 }
        );
    }
}
