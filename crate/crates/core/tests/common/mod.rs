//! Helpers shared by the integration tests, including linear-algebra oracles that
//! share no code with the Gröbner engine.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use phn_core::field::{Coeff, FieldSpec};
use phn_core::groebner::Ideal;
use phn_core::monomial::{Monomial, MonomialOrder};
use phn_core::parse::parse_polynomial;
use phn_core::poly::{Polynomial, Ring, RingRef, Term};
use phn_core::scenario::{parse_scenario, Scenario};

pub const ORACLE_PRIME: u64 = 2_147_483_647;

pub fn ring(names: &[&str]) -> RingRef {
    Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Rationals, MonomialOrder::DegRevLex)
}

pub fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn ring_n(n: usize, field: FieldSpec) -> RingRef {
    Ring::new(vars(n), field, MonomialOrder::DegRevLex)
}

pub fn poly(r: &RingRef, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

pub fn load(name: &str) -> Scenario {
    let src = std::fs::read_to_string(scenario_path(name)).unwrap();
    parse_scenario(&src).unwrap()
}

/// Random polynomial with integer coefficients in `[-9, 9]` and monomials of total
/// degree in `degrees`.
pub fn random_poly<R: Rng>(rng: &mut R, r: &RingRef, terms: usize, degrees: std::ops::RangeInclusive<u32>) -> Polynomial {
    let n = r.nvars();
    let mut out = Vec::new();
    for _ in 0..terms {
        let d = rng.random_range(degrees.clone());
        let mut exps = vec![0u16; n];
        for _ in 0..d {
            exps[rng.random_range(0..n)] += 1;
        }
        let c = rng.random_range(-9i64..=9);
        out.push(Term { coeff: r.field().from_i64(c), mono: Monomial::from_exponents(&exps) });
    }
    Polynomial::from_terms(r, out)
}

/// A zero-dimensional ideal: `x_i^{a_i}` plus lower-degree noise for each
/// variable, and up to two extra random generators. The pure powers leave no
/// solutions at infinity.
pub fn random_zero_dim<R: Rng>(rng: &mut R, r: &RingRef, max_power: u32, extra: usize) -> (Ideal, Vec<u32>) {
    let n = r.nvars();
    let mut gens = Vec::new();
    let mut powers = Vec::new();
    for i in 0..n {
        let a = rng.random_range(1..=max_power);
        powers.push(a);
        let lead = Polynomial::var(r, i).pow(a);
        let noise = if a > 1 { random_poly(rng, r, 3, 0..=a - 1) } else { random_poly(rng, r, 1, 0..=0) };
        gens.push(&lead + &noise);
    }
    for _ in 0..extra {
        gens.push(random_poly(rng, r, 3, 1..=4));
    }
    (Ideal::new(r, gens).unwrap(), powers)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = mul(result, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    result
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Maps a coefficient over Q or over F_p (for the same p) into F_p.
fn coeff_mod(t: &Term, p: u64) -> u64 {
    match &t.coeff {
        Coeff::Rational(q) => {
            let den = reduce(q.denom(), p);
            assert!(den != 0, "denominator divisible by the oracle prime");
            mul(reduce(q.numer(), p), inv_mod(den, p), p)
        }
        Coeff::Modular { value, modulus } => {
            assert_eq!(*modulus, p, "oracle prime differs from the field");
            *value
        }
    }
}

/// All exponent vectors with `nvars` entries and total degree at most `d`.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Vec<u16>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e as u16);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Incremental row echelon form over F_p on a fixed set of columns.
pub struct Echelon {
    p: u64,
    ncols: usize,
    pivots: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl Echelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        Echelon { p, ncols, pivots: vec![None; ncols], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the stored rows; the first nonzero column of a stored
    /// row is its pivot and earlier columns are zero.
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        for c in 0..self.ncols {
            if v[c] == 0 {
                continue;
            }
            if let Some(row) = &self.pivots[c] {
                let f = v[c];
                for j in c..self.ncols {
                    if row[j] != 0 {
                        v[j] = (v[j] + p - mul(f, row[j], p)) % p;
                    }
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: Vec<u64>) {
        let v = self.reduce(v);
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let s = inv_mod(v[c], self.p);
            let row: Vec<u64> = v.iter().map(|&x| mul(x, s, self.p)).collect();
            self.pivots[c] = Some(row);
            self.rank += 1;
        }
    }

    pub fn in_span(&self, v: Vec<u64>) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Macaulay matrices modulo a prime: the span of `m·g` over generators `g` and
/// monomials `m`, restricted to degree at most `degree`.
pub struct Macaulay {
    columns: HashMap<Vec<u16>, usize>,
    echelon: Echelon,
    p: u64,
}

impl Macaulay {
    pub fn new(ideal: &Ideal, degree: u32, p: u64) -> Self {
        let n = ideal.ring().nvars();
        let monos = monomials_up_to(n, degree);
        let columns: HashMap<Vec<u16>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut echelon = Echelon::new(p, monos.len());
        for g in ideal.generators() {
            let Some(dg) = g.total_degree() else { continue };
            if dg > degree {
                continue;
            }
            for m in monos.iter().filter(|m| m.iter().map(|&e| e as u32).sum::<u32>() <= degree - dg) {
                let mut row = vec![0u64; monos.len()];
                for t in g.terms() {
                    let e: Vec<u16> = t.mono.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                    row[columns[&e]] = coeff_mod(t, p);
                }
                echelon.insert(row);
            }
        }
        Macaulay { columns, echelon, p }
    }

    /// `dim P_{≤D} − rank`; equals `dim k[x]/I` once `D` is past the regularity.
    pub fn quotient_dim(&self) -> usize {
        self.columns.len() - self.echelon.rank()
    }

    /// `None` when `f` has degree above the matrix degree.
    pub fn contains(&self, f: &Polynomial) -> Option<bool> {
        let mut row = vec![0u64; self.columns.len()];
        for t in f.terms() {
            let c = *self.columns.get(t.mono.exponents())?;
            row[c] = coeff_mod(t, self.p);
        }
        Some(self.echelon.in_span(row))
    }
}

/// `dim k[x]/(I + m^k)` by truncated Macaulay matrices.
pub fn truncated_local_dim(ideal: &Ideal, k: u32, p: u64) -> usize {
    let n = ideal.ring().nvars();
    if k == 0 {
        return 0;
    }
    let monos = monomials_up_to(n, k - 1);
    let columns: HashMap<Vec<u16>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = Echelon::new(p, monos.len());
    for g in ideal.generators() {
        for m in &monos {
            let mut row = vec![0u64; monos.len()];
            let mut any = false;
            for t in g.terms() {
                let e: Vec<u16> = t.mono.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&c) = columns.get(&e) {
                    row[c] = coeff_mod(t, p);
                    any = true;
                }
            }
            if any {
                echelon.insert(row);
            }
        }
    }
    monos.len() - echelon.rank()
}

/// Local multiplicity at the origin: the truncated dimensions increase until two
/// consecutive ones agree, after which `m^k ⊆ I` locally. `None` when no plateau
/// appears below `max_k`.
pub fn local_dim_oracle(ideal: &Ideal, max_k: u32, p: u64) -> Option<usize> {
    let mut prev = truncated_local_dim(ideal, 1, p);
    for k in 2..=max_k {
        let cur = truncated_local_dim(ideal, k, p);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

/// Quotient dimension at the first degree from `start` where two consecutive
/// Macaulay degrees agree.
pub fn global_dim_oracle(ideal: &Ideal, start: u32, max: u32, p: u64) -> Option<usize> {
    let mut prev = Macaulay::new(ideal, start, p).quotient_dim();
    for d in start + 1..=max {
        let cur = Macaulay::new(ideal, d, p).quotient_dim();
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

/// Standard monomials counted by enumerating a box and testing divisibility by
/// each leading monomial.
pub fn brute_force_staircase(lms: &[Monomial], nvars: usize, bound: u16) -> u64 {
    let mut count = 0;
    let mut exps = vec![0u16; nvars];
    loop {
        let m = Monomial::from_exponents(&exps);
        if !lms.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return count;
            }
            exps[i] += 1;
            if exps[i] <= bound {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
