//! Determinantal varieties: minors, smoothings, Jacobians and critical ideals.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{GbError, IndexError, PolyError};
use crate::groebner::{buchberger_with_budget, krull_dimension, radical_membership_with_budget, Budget, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, OneForm, Polynomial, RingRef};

/// An `m × n` matrix of polynomials over one ring, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &RingRef, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::LengthMismatch { expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(PolyError::LengthMismatch { expected: n, got: bad.len() });
        }
        PolyMatrix::new(ring, m, n, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn transpose(&self) -> PolyMatrix {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    /// Rows and columns reindexed by the given permutations.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> PolyMatrix {
        let entries = row_perm
            .iter()
            .flat_map(|&i| col_perm.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    /// All `k × k` minors, ordered lexicographically by (row subset, column subset).
    pub fn minors(&self, k: usize) -> Vec<Polynomial> {
        if k == 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        if k > self.rows.min(self.cols) {
            return Vec::new();
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut memo = HashMap::new();
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for r in &row_sets {
            for c in &col_sets {
                out.push(self.minor_memo(r, c, &mut memo));
            }
        }
        out
    }

    /// Determinant of the square submatrix on `rows × cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        self.minor_memo(rows, cols, &mut HashMap::new())
    }

    /// Laplace expansion along the first selected row; sub-minors are shared
    /// through `memo`, keyed by the remaining rows and columns as bit masks.
    fn minor_memo(&self, rows: &[usize], cols: &[usize], memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
        match rows.len() {
            0 => return Polynomial::one(&self.ring),
            1 => return self.get(rows[0], cols[0]).clone(),
            _ => {}
        }
        let key = (mask(rows), mask(cols));
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(&self.ring);
        let rest_rows = &rows[1..];
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.get(rows[0], c);
            if a.is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.minor_memo(rest_rows, &rest_cols, memo);
            if sub.is_zero() {
                continue;
            }
            let term = a * &sub;
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        memo.insert(key, acc.clone());
        acc
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

/// All increasing `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Ideal of all `k × k` minors; `k = 0` gives the unit ideal.
pub fn minors_ideal(m: &PolyMatrix, k: usize) -> Ideal {
    Ideal::new(m.ring(), dedup(m.minors(k))).expect("entries share the ring")
}

/// Drops repeated generators, including repeats up to sign.
fn dedup(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = std::collections::HashSet::new();
    polys
        .into_iter()
        .filter(|p| !p.is_zero())
        .filter(|p| seen.insert(p.normalize_content()))
        .collect()
}

/// `(m - t + 1)(n - t + 1)`, the codimension of matrices of rank `< t`.
pub fn expected_codim(m: usize, n: usize, t: usize) -> usize {
    (m + 1 - t) * (n + 1 - t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimCheck {
    pub krull_dim: usize,
    pub expected_dim: usize,
    pub codim: usize,
    pub passed: bool,
}

/// Whether `V(minors_t(F))` has dimension `N - (m-t+1)(n-t+1)`.
pub fn expected_codim_check(f: &PolyMatrix, t: usize) -> CodimCheck {
    let codim = expected_codim(f.rows(), f.cols(), t);
    expected_codim_check_with(f, t, codim, &Budget::unlimited()).expect("unlimited budget")
}

/// As [`expected_codim_check`] against an explicit codimension, for presentations
/// (such as symmetric matrices) whose loci are not generic determinantal ones.
pub fn expected_codim_check_with(
    f: &PolyMatrix,
    t: usize,
    codim: usize,
    budget: &Budget,
) -> Result<CodimCheck, GbError> {
    let nvars = f.ring().nvars();
    let basis = buchberger_with_budget(&minors_ideal(f, t), MonomialOrder::DegRevLex, budget)?;
    let krull_dim = if basis.is_unit() { 0 } else { krull_dimension(&basis) };
    let expected_dim = nvars.saturating_sub(codim);
    Ok(CodimCheck { krull_dim, expected_dim, codim, passed: !basis.is_unit() && krull_dim == expected_dim && codim <= nvars })
}

/// `F + ε·A`, with `A` a grid of rational constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingSpec {
    pub base: PolyMatrix,
    pub perturbation: Vec<Vec<BigRational>>,
    pub epsilon: BigRational,
}

pub fn apply_smoothing(spec: &SmoothingSpec) -> Result<PolyMatrix, IndexError> {
    let f = &spec.base;
    let ring = f.ring();
    let field = ring.field();
    if spec.perturbation.len() != f.rows() || spec.perturbation.iter().any(|r| r.len() != f.cols()) {
        return Err(IndexError::Input(format!("perturbation must be a {}x{} grid", f.rows(), f.cols())));
    }
    if spec.epsilon.is_zero() {
        return Ok(f.clone());
    }
    let mut entries = Vec::with_capacity(f.entries().len());
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            let a = &spec.perturbation[i][j] * &spec.epsilon;
            let e = f.get(i, j);
            entries.push(if a.is_zero() { e.clone() } else { e + &Polynomial::constant(ring, field.from_rational(&a).map_err(|e| IndexError::Input(e.to_string()))?) });
        }
    }
    Ok(PolyMatrix { ring: ring.clone(), rows: f.rows(), cols: f.cols(), entries })
}

/// A smoothing of the determinantal germ is smooth iff `N < (m-t+2)(n-t+2)`.
pub fn genuine_smoothing_predicate(m: usize, n: usize, t: usize, nvars: usize) -> bool {
    nvars < (m + 2 - t) * (n + 2 - t)
}

/// Rows are generators, columns are variables.
pub fn jacobian(ring: &RingRef, gens: &[Polynomial]) -> PolyMatrix {
    let n = ring.nvars();
    let entries = gens
        .iter()
        .flat_map(|g| (0..n).map(move |j| g.reorder(ring).partial_derivative(j)))
        .collect();
    PolyMatrix { ring: ring.clone(), rows: gens.len(), cols: n, entries }
}

/// The Jacobian of `gens` with the coefficients of `w` appended as a last row.
pub fn augmented_jacobian(gens: &[Polynomial], w: &OneForm) -> PolyMatrix {
    let ring = w.ring();
    let mut m = jacobian(ring, gens);
    m.entries.extend(w.coeffs().iter().cloned());
    m.rows += 1;
    m
}

/// `I_X` plus the `(c+1) × (c+1)` minors of the augmented Jacobian: the critical
/// scheme of `w` on the smooth part of `X`, where the Jacobian has rank `c`.
pub fn critical_ideal(i_x: &Ideal, w: &OneForm, c: usize) -> Ideal {
    let aug = augmented_jacobian(i_x.generators(), w);
    let mut gens = i_x.generators().to_vec();
    gens.extend(dedup(aug.minors(c + 1)));
    Ideal::new(i_x.ring(), gens).expect("same ring")
}

/// `minors_{t-1}(F̃)`; the unit ideal when `t = 1`.
pub fn singular_locus_ideal(f_tilde: &PolyMatrix, t: usize) -> Ideal {
    assert!(t >= 1, "rank bound must be positive");
    minors_ideal(f_tilde, t - 1)
}

/// Compares the Jacobian-criterion singular scheme `I_X + minors_c(Jac)` with
/// `I_X + J_sing`: both must be the unit ideal together, or otherwise contain
/// exactly the same variables in their radicals.
pub fn smoothness_verification(i_x: &Ideal, j_sing: &Ideal, c: usize, budget: &Budget) -> Result<bool, GbError> {
    let ring = i_x.ring();
    let jac = jacobian(ring, i_x.generators());
    let jac_sing = i_x.sum(&Ideal::new(ring, dedup(jac.minors(c))).expect("same ring")).expect("same ring");
    let det_sing = i_x.sum(j_sing).expect("same ring");
    let a_unit = buchberger_with_budget(&jac_sing, MonomialOrder::DegRevLex, budget)?.is_unit();
    let b_unit = buchberger_with_budget(&det_sing, MonomialOrder::DegRevLex, budget)?.is_unit();
    if a_unit || b_unit {
        return Ok(a_unit == b_unit);
    }
    for i in 0..ring.nvars() {
        let x = Polynomial::var(ring, i);
        if radical_membership_with_budget(&x, &jac_sing, budget)? != radical_membership_with_budget(&x, &det_sing, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
