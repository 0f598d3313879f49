//! Sparse multivariate polynomials over an exact field.
//!
//! A [`Polynomial`] is a list of terms kept strictly descending under the order of
//! its [`Ring`], with no zero coefficients and no repeated monomials. Values are
//! immutable once built; every operation returns a fresh canonical polynomial.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::field::{Coeff, FieldSpec};
use crate::monomial::{Monomial, MonomialOrder};

/// Variable names, coefficient field and active monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: Vec<String>, field: FieldSpec, order: MonomialOrder) -> RingRef {
        Arc::new(Ring { vars, field, order })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Ring::new(self.vars.clone(), self.field, order)
    }

    pub fn with_field(&self, field: FieldSpec) -> RingRef {
        Ring::new(self.vars.clone(), field, self.order)
    }

    /// Ring with `names` prepended to the variable list.
    pub fn prepend_vars(&self, names: &[&str], order: MonomialOrder) -> RingRef {
        let mut vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        Ring::new(vars, self.field, order)
    }

    /// Ring without its first `k` variables.
    pub fn drop_front(&self, k: usize, order: MonomialOrder) -> RingRef {
        Ring::new(self.vars[k..].to_vec(), self.field, order)
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: Coeff) -> Self {
        Self::from_terms(ring, vec![Term { coeff: c, mono: Monomial::one(ring.nvars()) }])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &RingRef, v: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(v))
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { coeff: ring.field().one(), mono: Monomial::var(ring.nvars(), i) }],
        }
    }

    pub fn monomial(ring: &RingRef, coeff: Coeff, mono: Monomial) -> Self {
        Self::from_terms(ring, vec![Term { coeff, mono }])
    }

    /// Canonicalizes arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<Term>) -> Self {
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = last.coeff.add(&t.coeff),
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| t.coeff.is_zero()) {
            out.pop();
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Wraps terms already in canonical order. Only checked in debug builds.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    /// Leading term under the ring's order.
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Maximal total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Total degree minus the degree of the leading monomial.
    pub fn ecart(&self) -> u32 {
        match self.leading_monomial() {
            Some(lm) => self.total_degree().unwrap_or(0) - lm.degree(),
            None => 0,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, Some(&self.ring.field().one().neg())))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return Ok(self.mul_term(&t.coeff, &t.mono));
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return Ok(other.mul_term(&t.coeff, &t.mono));
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let c = a.coeff.mul(&b.coeff);
                acc.entry(a.mono.mul(&b.mono))
                    .and_modify(|e| *e = e.add(&c))
                    .or_insert(c);
            }
        }
        let terms = acc.into_iter().map(|(mono, coeff)| Term { coeff, mono }).collect();
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    /// `self + scale * other` by a linear merge of the sorted term lists.
    fn merge(&self, other: &Polynomial, scale: Option<&Coeff>) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |t: &Term| match scale {
            Some(s) => Term { coeff: t.coeff.mul(s), mono: t.mono.clone() },
            None => t.clone(),
        };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.compare(&a.mono, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(scaled(b));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = match scale {
                        Some(s) => a.coeff.add(&b.coeff.mul(s)),
                        None => a.coeff.add(&b.coeff),
                    };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: a.mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(scaled));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.mul(c), mono: t.mono.clone() })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplication by `c * m`; the order is multiplicative so no re-sort is needed.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.mul(c), mono: t.mono.mul(m) })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.exponents()[i] > 0)
            .map(|t| {
                let e = t.mono.exponents()[i];
                let mut exps = t.mono.exponents().to_vec();
                exps[i] -= 1;
                Term {
                    coeff: t.coeff.mul(&field.from_i64(e as i64)),
                    mono: Monomial::from_exponents(&exps),
                }
            })
            .collect();
        // Derivatives of distinct monomials in one variable stay distinct, but
        // prime characteristic can kill coefficients and the order may shift.
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Evaluates at a point given as field elements, one per variable.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.ring.nvars(), got: point.len() });
        }
        let mut acc = self.ring.field().zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &e) in point.iter().zip(t.mono.exponents()) {
                if e > 0 {
                    v = v.mul(&x.pow(e as u32));
                }
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> images[i]`; all images must live in `target`.
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut v = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                v = &v * &cache[i][e as usize];
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Same polynomial viewed in a ring that differs only in its order.
    pub fn reorder(&self, ring: &RingRef) -> Polynomial {
        assert_eq!(ring.vars(), self.ring.vars());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Embeds into `ring`, whose variables are `k` new ones followed by ours.
    pub fn embed_front(&self, ring: &RingRef, k: usize) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars() + k);
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.prepend_vars(k) })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Inverse of [`embed_front`](Self::embed_front); `None` if a dropped variable occurs.
    pub fn restrict_front(&self, ring: &RingRef, k: usize) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.len());
        for t in &self.terms {
            terms.push(Term { coeff: t.coeff.clone(), mono: t.mono.drop_front(k)? });
        }
        Some(Polynomial::from_terms(ring, terms))
    }

    /// Moves into another field (e.g. reduction of a rational polynomial mod p).
    pub fn change_field(&self, ring: &RingRef) -> Result<Polynomial, crate::error::FieldError> {
        let field = ring.field();
        let mut terms = Vec::with_capacity(self.len());
        for t in &self.terms {
            let c = match &t.coeff {
                Coeff::Rational(q) => field.from_rational(q)?,
                Coeff::Modular { value, .. } => field.from_i64(*value as i64),
            };
            terms.push(Term { coeff: c, mono: t.mono.clone() });
        }
        Ok(Polynomial::from_terms(ring, terms))
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Over the rationals: scales to a primitive integer polynomial with positive
    /// leading coefficient. Over a prime field: makes the polynomial monic.
    pub fn normalize_content(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        match self.ring.field() {
            FieldSpec::PrimeField(_) => self.make_monic(),
            FieldSpec::Rationals => {
                let den_lcm = self.terms.iter().fold(BigInt::one(), |acc, t| {
                    acc.lcm(t.coeff.as_rational().expect("rational coefficient").denom())
                });
                let cleared: Vec<BigInt> = self
                    .terms
                    .iter()
                    .map(|t| {
                        let q = t.coeff.as_rational().unwrap();
                        q.numer() * (&den_lcm / q.denom())
                    })
                    .collect();
                let g = cleared.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
                let lead_negative = cleared[0].is_negative();
                if den_lcm.is_one() && g.is_one() && !lead_negative {
                    return self.clone();
                }
                let sign = if lead_negative { -BigInt::one() } else { BigInt::one() };
                let terms = self
                    .terms
                    .iter()
                    .zip(cleared)
                    .map(|(t, c)| Term {
                        coeff: Coeff::Rational(BigRational::from_integer(&c / &g * &sign)),
                        mono: t.mono.clone(),
                    })
                    .collect();
                Polynomial { ring: self.ring.clone(), terms }
            }
        }
    }

    /// Largest coefficient size in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff.bits()).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |acc, t| acc | t.mono.support_mask())
    }

    pub fn differential(&self) -> OneForm {
        OneForm::new(
            &self.ring,
            (0..self.ring.nvars()).map(|i| self.partial_derivative(i)).collect(),
        )
        .expect("one coefficient per variable")
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field().one().neg())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let abs = if negative { t.coeff.neg() } else { t.coeff.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(&self.ring, &t.mono);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in ring.vars().iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// A 1-form `sum a_i dx_i`, one coefficient per ring variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    ring: RingRef,
    coeffs: Vec<Polynomial>,
}

impl OneForm {
    pub fn new(ring: &RingRef, coeffs: Vec<Polynomial>) -> Result<Self, PolyError> {
        if coeffs.len() != ring.nvars() {
            return Err(PolyError::LengthMismatch { expected: ring.nvars(), got: coeffs.len() });
        }
        if coeffs.iter().any(|c| !same_ring(c.ring(), ring)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(OneForm { ring: ring.clone(), coeffs })
    }

    /// The constant form `sum c_i dx_i`, i.e. `dl` for the linear function `l`.
    pub fn constant(ring: &RingRef, values: &[Coeff]) -> Result<Self, PolyError> {
        let coeffs = values.iter().map(|c| Polynomial::constant(ring, c.clone())).collect();
        OneForm::new(ring, coeffs)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
