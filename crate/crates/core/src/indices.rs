//! PHN indices, Euler obstructions, polar multiplicities and the coefficient layer.
//!
//! A run is prepared once into a [`Setup`] (smoothed matrix, `I_X̃`, `J`, the linear
//! form) and each 1-form is then counted by [`phn_index`]: the critical ideal `K` of
//! the deformed form on `X̃` is saturated by `J`, and the staircase of `K : J^∞`
//! counts the critical points on the regular part of the smoothing.

use std::thread;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::detvar::{
    apply_smoothing, critical_ideal, expected_codim, genuine_smoothing_predicate, minors_ideal, singular_locus_ideal,
    PolyMatrix, SmoothingSpec,
};
use crate::error::{GbError, IndexError, PolyError};
use crate::field::{format_rational, Coeff};
use crate::groebner::{
    buchberger_with_budget, mora_standard_basis_with_budget, saturate_ideal_with_budget, staircase_dimension,
    translate_ideal, Budget, DimensionResult, Ideal,
};
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::{OneForm, Polynomial, Ring, RingRef};
use crate::scenario::{FormInput, Scenario};

/// Largest matrix side accepted; keeps every coefficient-table product inside `i64`.
pub const MAX_MATRIX_SIDE: usize = 30;

/// How the number of critical points off the singular locus is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Staircase dimension of `K : J^∞`.
    #[default]
    Saturation,
    /// Global dimension of `K` minus local dimensions at rational points of `V(J)`,
    /// compared against saturation.
    LocalCrosscheck,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "saturation" => Some(Mode::Saturation),
            "local_crosscheck" => Some(Mode::LocalCrosscheck),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Saturation => "saturation",
            Mode::LocalCrosscheck => "local_crosscheck",
        }
    }
}

/// A scenario resolved into ideals over its declared field.
#[derive(Clone, Debug)]
pub struct Setup {
    pub ring: RingRef,
    pub f: PolyMatrix,
    pub f_tilde: PolyMatrix,
    pub perturbation: Vec<Vec<BigRational>>,
    pub epsilon: BigRational,
    pub t: usize,
    pub codim: usize,
    pub i_x: Ideal,
    pub sing: Ideal,
    pub linear: Vec<BigRational>,
    pub tau: BigRational,
    pub form: Option<OneForm>,
    pub function: Option<Polynomial>,
    pub points: Vec<Vec<BigRational>>,
    pub mode: Mode,
    pub seed: u64,
}

impl Setup {
    pub fn from_scenario(s: &Scenario) -> Result<Setup, IndexError> {
        let ring = Ring::new(s.variables.clone(), s.field, MonomialOrder::DegRevLex);
        let parse = |src: &str| parse_polynomial(src, &ring).map_err(|d| IndexError::Input(d.to_string()));
        let rows = s
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| parse(e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let f = PolyMatrix::from_rows(&ring, rows)?;
        let (m, n) = (f.rows(), f.cols());
        if s.t == 0 || s.t > m.min(n) {
            return Err(IndexError::Input(format!("t = {} outside 1..={}", s.t, m.min(n))));
        }
        let epsilon = s.epsilon.clone().unwrap_or_else(|| {
            if s.perturbation.is_some() {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let perturbation = match &s.perturbation {
            Some(a) => a.clone(),
            None if epsilon.is_zero() => vec![vec![BigRational::zero(); n]; m],
            None => seeded_perturbation(s.seed, m, n),
        };
        let f_tilde = apply_smoothing(&SmoothingSpec { base: f.clone(), perturbation: perturbation.clone(), epsilon: epsilon.clone() })?;
        let codim = s.expected_codim.unwrap_or_else(|| expected_codim(m, n, s.t));
        let i_x = minors_ideal(&f_tilde, s.t);
        let sing = singular_locus_ideal(&f_tilde, s.t);
        let linear = s.linear_form.clone().unwrap_or_else(|| seeded_linear_form(s.seed, 0, ring.nvars()));
        let (form, function) = match &s.form {
            None => (None, None),
            Some(FormInput::OneForm(coeffs)) => {
                let coeffs = coeffs.iter().map(|c| parse(c)).collect::<Result<Vec<_>, _>>()?;
                (Some(OneForm::new(&ring, coeffs)?), None)
            }
            Some(FormInput::Function(src)) => {
                let g = parse(src)?;
                (Some(g.differential()), Some(g))
            }
        };
        Ok(Setup {
            ring,
            f,
            f_tilde,
            perturbation,
            epsilon,
            t: s.t,
            codim,
            i_x,
            sing,
            linear,
            tau: s.tau.clone(),
            form,
            function,
            points: s.singular_points.clone(),
            mode: s.mode,
            seed: s.seed,
        })
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// `N - codim`; negative when the declared codimension exceeds `N`.
    pub fn dim_x(&self) -> i64 {
        self.nvars() as i64 - self.codim as i64
    }

    pub fn smoothable(&self) -> bool {
        genuine_smoothing_predicate(self.f.rows(), self.f.cols(), self.t, self.nvars())
    }

    /// `dl` for the setup's linear form.
    pub fn linear_differential(&self) -> Result<OneForm, IndexError> {
        constant_form(&self.ring, &self.linear)
    }

    pub fn critical_ideal_of(&self, w: &OneForm) -> Ideal {
        critical_ideal(&self.i_x, w, self.codim)
    }
}

pub fn constant_form(ring: &RingRef, values: &[BigRational]) -> Result<OneForm, IndexError> {
    let field = ring.field();
    let coeffs = values
        .iter()
        .map(|v| field.from_rational(v).map_err(|e| IndexError::Input(e.to_string())))
        .collect::<Result<Vec<Coeff>, _>>()?;
    Ok(OneForm::constant(ring, &coeffs)?)
}

/// Coefficient-wise `w + tau·l`.
pub fn deform_oneform(w: &OneForm, l: &[BigRational], tau: &BigRational) -> Result<OneForm, IndexError> {
    let ring = w.ring();
    if l.len() != ring.nvars() {
        return Err(PolyError::LengthMismatch { expected: ring.nvars(), got: l.len() }.into());
    }
    if tau.is_zero() {
        return Ok(w.clone());
    }
    let scaled: Vec<BigRational> = l.iter().map(|v| v * tau).collect();
    let shift = constant_form(ring, &scaled)?;
    let coeffs = w.coeffs().iter().zip(shift.coeffs()).map(|(a, b)| a + b).collect();
    Ok(OneForm::new(ring, coeffs)?)
}

/// Whether the counted form is deformed by `tau·l` first. A linear form is already
/// generic and is counted as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Form { tau: BigRational },
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDim {
    pub point: Vec<String>,
    pub dim: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhnComputation {
    #[serde(skip)]
    pub critical: Ideal,
    #[serde(skip)]
    pub sing: Ideal,
    #[serde(skip)]
    pub saturated: Ideal,
    pub critical_generators: usize,
    pub global_dim: DimensionResult,
    pub saturated_dim: u64,
    /// Present only when the local crosscheck ran.
    pub local_dims: Option<Vec<LocalDim>>,
    pub phn: u64,
    pub mode: Mode,
    pub warnings: Vec<String>,
}

/// Counts the critical points of the (deformed) form on the regular part of `X̃`.
pub fn phn_index(setup: &Setup, w: &OneForm, role: &Role, budget: &Budget) -> Result<PhnComputation, IndexError> {
    let w = match role {
        Role::Form { tau } => deform_oneform(w, &setup.linear, tau)?,
        Role::Linear => w.clone(),
    };
    let k = setup.critical_ideal_of(&w);
    let global = buchberger_with_budget(&k, MonomialOrder::DegRevLex, budget)?;
    let global_dim = dim_of(&global);
    let base = back_to(&setup.ring, &global.ideal());
    let saturated = saturate_ideal_with_budget(&base, &setup.sing, budget)?;
    let sat_basis = buchberger_with_budget(&saturated, MonomialOrder::DegRevLex, budget)?;
    let saturated_dim = match dim_of(&sat_basis) {
        DimensionResult::Finite { count } => count,
        DimensionResult::Infinite { krull_dim } => {
            let what = format!("critical locus off the singular locus has dimension {krull_dim}");
            return Err(match role {
                Role::Form { .. } => IndexError::NonIsolated(what),
                Role::Linear => IndexError::NonGeneric(format!("{what} for the linear form")),
            });
        }
    };
    let mut out = PhnComputation {
        critical_generators: k.generators().len(),
        critical: k,
        sing: setup.sing.clone(),
        saturated: back_to(&setup.ring, &sat_basis.ideal()),
        global_dim,
        saturated_dim,
        local_dims: None,
        phn: saturated_dim,
        mode: setup.mode,
        warnings: Vec::new(),
    };
    if setup.mode == Mode::LocalCrosscheck {
        match local_crosscheck(setup, &out, budget) {
            Ok((phn, locals)) => {
                if phn != saturated_dim {
                    return Err(IndexError::NonGeneric(format!(
                        "saturation gives {saturated_dim} but the local crosscheck gives {phn}"
                    )));
                }
                out.local_dims = Some(locals);
            }
            Err(IndexError::BudgetExceeded) => return Err(IndexError::BudgetExceeded),
            Err(e) => out.warnings.push(format!("local crosscheck skipped ({e}); saturation value reported")),
        }
    }
    Ok(out)
}

/// `global_dim(K) - Σ local_dim_p(K)` over the listed points `p` lying on `V(J)`.
///
/// The listed points must carry all of `V(K + J)`: the global dimension of `K + J`
/// has to equal the sum of its local dimensions there.
fn local_crosscheck(setup: &Setup, comp: &PhnComputation, budget: &Budget) -> Result<(u64, Vec<LocalDim>), IndexError> {
    let field = setup.ring.field();
    let DimensionResult::Finite { count: global } = comp.global_dim else {
        return Err(IndexError::NonGeneric("critical ideal is not zero-dimensional".into()));
    };
    let mut candidates = vec![vec![BigRational::zero(); setup.nvars()]];
    for p in &setup.points {
        if !candidates.contains(p) {
            candidates.push(p.clone());
        }
    }
    let mut on_sing = Vec::new();
    for p in candidates {
        let coords = p
            .iter()
            .map(|c| field.from_rational(c).map_err(|e| IndexError::Input(e.to_string())))
            .collect::<Result<Vec<Coeff>, _>>()?;
        let vanishes = setup.sing.generators().iter().all(|g| g.evaluate(&coords).map(|v| v.is_zero()).unwrap_or(false));
        if vanishes {
            on_sing.push((p, coords));
        }
    }
    let k_plus_j = comp.critical.sum(&setup.sing)?;
    let support_global = dim_of(&buchberger_with_budget(&k_plus_j, MonomialOrder::DegRevLex, budget)?);
    let mut support_local = 0;
    for (_, coords) in &on_sing {
        support_local += local_dim(&k_plus_j, coords, budget)?;
    }
    if support_global != (DimensionResult::Finite { count: support_local }) {
        return Err(IndexError::IrrationalSingularPoints);
    }
    let mut locals = Vec::new();
    let mut subtract = 0;
    for (p, coords) in &on_sing {
        let d = local_dim(&comp.critical, coords, budget)?;
        subtract += d;
        locals.push(LocalDim { point: p.iter().map(format_rational).collect(), dim: d });
    }
    Ok((global - subtract, locals))
}

/// Dimension of the local ring of `V(ideal)` at `point`.
pub fn local_dim(ideal: &Ideal, point: &[Coeff], budget: &Budget) -> Result<u64, IndexError> {
    let moved = translate_ideal(ideal, point);
    let basis = mora_standard_basis_with_budget(&moved, budget)?;
    staircase_dimension(&basis)
        .finite()
        .ok_or_else(|| IndexError::NonGeneric("positive-dimensional germ at a listed point".into()))
}

fn dim_of(basis: &crate::groebner::GroebnerBasis) -> DimensionResult {
    if basis.is_unit() {
        DimensionResult::Finite { count: 0 }
    } else {
        staircase_dimension(basis)
    }
}

fn back_to(ring: &RingRef, ideal: &Ideal) -> Ideal {
    Ideal::new(ring, ideal.generators().iter().map(|g| g.reorder(ring)).collect()).expect("same variables")
}

/// `phn` of the setup's form and of `dl`, computed side by side.
#[derive(Clone, Debug, Serialize)]
pub struct IndexPair {
    pub omega: PhnComputation,
    pub dl: PhnComputation,
}

pub fn phn_pair(setup: &Setup, budget: &Budget) -> Result<IndexPair, IndexError> {
    let w = setup.form.as_ref().ok_or_else(|| IndexError::Input("scenario has neither `oneform` nor `function`".into()))?;
    let dl = setup.linear_differential()?;
    let role = Role::Form { tau: setup.tau.clone() };
    let (omega, dl) = thread::scope(|s| {
        let a = s.spawn(|| phn_index(setup, w, &role, budget));
        let b = s.spawn(|| phn_index(setup, &dl, &Role::Linear, budget));
        (a.join().expect("phn worker"), b.join().expect("phn worker"))
    });
    // The form's failure is reported first so the exit code reflects it.
    let omega = omega?;
    Ok(IndexPair { omega, dl: dl? })
}

/// `phn(ω) - phn(dl)`.
pub fn euler_obstruction_oneform(pair: &IndexPair) -> i64 {
    pair.omega.phn as i64 - pair.dl.phn as i64
}

/// `(-1)^{dim X}·(phn(df) - phn(dl))`.
pub fn euler_obstruction_function(pair: &IndexPair, dim_x: i64) -> i64 {
    parity_sign(dim_x) * euler_obstruction_oneform(pair)
}

/// `m_d(X, 0) = phn(dl)`.
pub fn polar_multiplicity(pair: &IndexPair) -> u64 {
    pair.dl.phn
}

/// `μ_D(f) = phn(df)`, defined only for smoothable singularities.
pub fn milnor_determinantal(setup: &Setup, pair: &IndexPair) -> Result<u64, IndexError> {
    let (m, n, t, big_n) = (setup.f.rows(), setup.f.cols(), setup.t, setup.nvars());
    if setup.function.is_none() {
        return Err(IndexError::Input("the determinantal Milnor number needs a `function`".into()));
    }
    if !genuine_smoothing_predicate(m, n, t, big_n) {
        let bound = (m + 2 - t) * (n + 2 - t);
        return Err(IndexError::NotSmoothable(format!("N = {big_n} is not below (m-t+2)(n-t+2) = {bound}")));
    }
    Ok(pair.omega.phn)
}

/// `(-1)^e`.
pub fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Signed binomial tables attached to the rank strata of `M^t_{m,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientTable {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    /// `n_table[i][j] = (-1)^{(m+n)(j-i)}·C(m-i, m-j)` for `i <= j`, zero below the diagonal.
    pub n_table: Vec<Vec<i64>>,
    /// `m_table[i][j] = (-1)^{(m+n+1)(j-i)}·C(m-i, m-j)` for `i <= j`.
    pub m_table: Vec<Vec<i64>>,
}

impl CoefficientTable {
    /// Index pairs `(i, k)` where `Σ_j n_ij·m_jk` differs from `δ_ik`.
    pub fn moebius_failures(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..=self.t {
            for k in i..=self.t {
                let s: i128 = (i..=k).map(|j| self.n_table[i][j] as i128 * self.m_table[j][k] as i128).sum();
                if s != i128::from(i == k) {
                    bad.push((i, k));
                }
            }
        }
        bad
    }
}

pub fn binomial(a: usize, b: usize) -> i64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for k in 0..b {
        acc = acc * (a - k) as u128 / (k + 1) as u128;
    }
    i64::try_from(acc).expect("binomial fits in i64 for admissible sizes")
}

/// The closed formulas without the identity check.
pub fn coefficient_table_unchecked(m: usize, n: usize, t: usize) -> CoefficientTable {
    assert!(t <= m.min(n), "t must not exceed min(m, n)");
    assert!(m.max(n) <= MAX_MATRIX_SIDE, "matrix side above {MAX_MATRIX_SIDE}");
    let mut n_table = vec![vec![0i64; t + 1]; t + 1];
    let mut m_table = vec![vec![0i64; t + 1]; t + 1];
    for i in 0..=t {
        for j in i..=t {
            let c = binomial(m - i, m - j);
            let d = (j - i) as i64;
            n_table[i][j] = parity_sign((m + n) as i64 * d) * c;
            m_table[i][j] = parity_sign((m + n + 1) as i64 * d) * c;
        }
    }
    CoefficientTable { m, n, t, n_table, m_table }
}

/// Tables for `(m, n, t)`; panics if the Möbius identity fails.
pub fn coefficient_table(m: usize, n: usize, t: usize) -> CoefficientTable {
    let table = coefficient_table_unchecked(m, n, t);
    assert!(table.moebius_failures().is_empty(), "Möbius identity fails for ({m}, {n}, {t})");
    table
}

/// `(-1)^{(m+n+1)t}·C(m, m-t) + phn + Σ_i (-1)^{dim X_i - 1}·m_it·χ̄_i`, where
/// `dim X_i = N - (m-i+1)(n-i+1)` and `chi[i-1] = χ̄(X_i, 0)`.
pub fn lemma_eu_assemble(
    phn: i64,
    chi: &[BigRational],
    m: usize,
    n: usize,
    t: usize,
    nvars: usize,
) -> Result<BigRational, IndexError> {
    if chi.len() != t {
        return Err(PolyError::LengthMismatch { expected: t, got: chi.len() }.into());
    }
    let table = coefficient_table(m, n, t);
    let mut acc = BigRational::from_integer(BigInt::from(table.m_table[0][t] + phn));
    for i in 1..=t {
        let dim_i = nvars as i64 - ((m - i + 1) * (n - i + 1)) as i64;
        let c = parity_sign(dim_i - 1) * table.m_table[i][t];
        acc += BigRational::from_integer(BigInt::from(c)) * &chi[i - 1];
    }
    Ok(acc)
}

/// Deformation scales cycled through by [`genericity_stability`].
pub fn stability_taus() -> [BigRational; 3] {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    [q(1, 1), q(1, 3), q(2, 7)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityTrial {
    /// Seed of the freshly drawn linear form.
    pub seed: u64,
    pub tau: String,
    pub phn_dl: Option<u64>,
    pub phn_omega: Option<u64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub passed: bool,
    pub expected_dl: u64,
    pub expected_omega: Option<u64>,
    pub trials: Vec<StabilityTrial>,
}

impl StabilityReport {
    pub fn divergent_seeds(&self) -> Vec<u64> {
        self.trials
            .iter()
            .filter(|t| {
                t.error.is_some()
                    || t.phn_dl != Some(self.expected_dl)
                    || (self.expected_omega.is_some() && t.phn_omega != self.expected_omega)
            })
            .map(|t| t.seed)
            .collect()
    }
}

/// Recounts `phn(dl)` for `trials` freshly seeded linear forms and `phn(ω̃)` for
/// the scales of [`stability_taus`]; passes iff every count matches `pair`.
pub fn genericity_stability(
    setup: &Setup,
    pair: &IndexPair,
    trials: usize,
    budget: &Budget,
) -> Result<StabilityReport, IndexError> {
    let taus = stability_taus();
    let runs: Vec<Result<StabilityTrial, IndexError>> = thread::scope(|s| {
        let handles: Vec<_> = (0..trials)
            .map(|k| {
                let tau = taus[k % taus.len()].clone();
                s.spawn(move || stability_trial(setup, k, tau, budget))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("stability worker")).collect()
    });
    let mut report = StabilityReport {
        passed: true,
        expected_dl: pair.dl.phn,
        expected_omega: setup.form.as_ref().map(|_| pair.omega.phn),
        trials: Vec::with_capacity(trials),
    };
    for run in runs {
        report.trials.push(run?);
    }
    report.passed = report.divergent_seeds().is_empty();
    Ok(report)
}

fn stability_trial(setup: &Setup, k: usize, tau: BigRational, budget: &Budget) -> Result<StabilityTrial, IndexError> {
    let seed = trial_seed(setup.seed, k);
    let l = seeded_linear_form(seed, 1 + k as u64, setup.nvars());
    let mut trial = StabilityTrial { seed, tau: format_rational(&tau), phn_dl: None, phn_omega: None, error: None };
    let dl = constant_form(&setup.ring, &l)?;
    match phn_index(setup, &dl, &Role::Linear, budget) {
        Ok(c) => trial.phn_dl = Some(c.phn),
        Err(IndexError::BudgetExceeded) => return Err(IndexError::BudgetExceeded),
        Err(e) => trial.error = Some(e.to_string()),
    }
    if let Some(w) = &setup.form {
        match phn_index(setup, w, &Role::Form { tau }, budget) {
            Ok(c) => trial.phn_omega = Some(c.phn),
            Err(IndexError::BudgetExceeded) => return Err(IndexError::BudgetExceeded),
            Err(e) => trial.error = Some(e.to_string()),
        }
    }
    Ok(trial)
}

fn trial_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64 + 1)
}

/// Numerator uniform in `[-20, 20] \ {0}`, denominator uniform in `[1, 20]`.
pub fn sample_rational<R: Rng>(rng: &mut R) -> BigRational {
    let mut num: i64 = rng.random_range(-20..=19);
    if num >= 0 {
        num += 1;
    }
    let den: i64 = rng.random_range(1..=20);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Stream 0 of the ChaCha generator for `seed`.
pub fn seeded_perturbation(seed: u64, m: usize, n: usize) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    (0..m).map(|_| (0..n).map(|_| sample_rational(&mut rng)).collect()).collect()
}

/// Linear form from stream `1 + stream` of the ChaCha generator for `seed`.
pub fn seeded_linear_form(seed: u64, stream: u64, nvars: usize) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1 + stream);
    (0..nvars).map(|_| sample_rational(&mut rng)).collect()
}

/// Whether `minors_t(a) ⊆ (minors_t(b))` and conversely.
pub fn same_minors_ideal(a: &PolyMatrix, b: &PolyMatrix, t: usize, budget: &Budget) -> Result<bool, GbError> {
    let ia = minors_ideal(a, t);
    let ib = minors_ideal(b, t);
    let ga = buchberger_with_budget(&ia, MonomialOrder::DegRevLex, budget)?;
    let gb = buchberger_with_budget(&ib, MonomialOrder::DegRevLex, budget)?;
    Ok(crate::groebner::ideal_contains(&ga, &ib) && crate::groebner::ideal_contains(&gb, &ia))
}
