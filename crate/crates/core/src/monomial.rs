//! Exponent vectors and the monomial orders used by the engine.

use std::cmp::Ordering;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// A power product `x_1^a_1 ... x_n^a_n` with cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().map(|&e| e as u32).sum(),
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit mask of the variables with positive exponent (folded modulo 64).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << (i % 64))
    }

    /// Degree in the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    /// Index of the single variable this monomial is a pure power of.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Re-embeds into a ring with `extra` new variables in front.
    pub fn prepend_vars(&self, extra: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, extra);
        exps.extend_from_slice(&self.exps);
        Monomial { exps, degree: self.degree }
    }

    /// Drops the first `k` variables, which must have exponent zero.
    pub fn drop_front(&self, k: usize) -> Option<Monomial> {
        if self.exps[..k].iter().any(|&e| e > 0) {
            return None;
        }
        Some(Monomial::from_exponents(&self.exps[k..]))
    }
}

/// Monomial orders. `DegRevLex` is global, `NegDegRevLex` is the local degree order
/// with `1` maximal, and `BlockElimination { split }` compares the first `split`
/// variables by degrevlex before the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    NegDegRevLex,
    BlockElimination { split: usize },
}

impl MonomialOrder {
    pub fn is_global(&self) -> bool {
        !matches!(self, MonomialOrder::NegDegRevLex)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::NegDegRevLex => b.degree.cmp(&a.degree).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::BlockElimination { split } => {
                let k = *split;
                a.partial_degree(0..k)
                    .cmp(&b.partial_degree(0..k))
                    .then_with(|| revlex(&a.exps[..k], &b.exps[..k]))
                    .then_with(|| {
                        let n = a.exps.len();
                        a.partial_degree(k..n).cmp(&b.partial_degree(k..n))
                    })
                    .then_with(|| revlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}

/// Reverse lexicographic tie-break for equal degree: the monomial with the smaller
/// exponent in the last differing variable is larger.
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
