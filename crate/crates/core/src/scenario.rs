//! Scenario documents: TOML files describing one problem instance.
//!
//! ```toml
//! variables = ["x1", "x2", "x3", "x4", "x5", "x6"]
//! matrix = [["x1", "x2", "x3"], ["x4", "x5", "x6"]]
//! t = 2
//! oneform = ["2*x1", "3*x2^2*x3", "x2^3", "-x5", "-x4", "0"]
//! linear_form = [2, 5, 3, -5, -7, 11]
//! ```
//!
//! Rational constants are TOML integers or strings such as `"-1/100"`. Every
//! diagnostic carries the 1-based position and the dotted path of its field.

use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;
use toml::Spanned;

use crate::error::{FieldError, ParseDiagnostic};
use crate::field::{parse_rational, FieldSpec};
use crate::indices::{Mode, MAX_MATRIX_SIDE};
use crate::monomial::MonomialOrder;
use crate::parse::{is_valid_variable_name, line_col, parse_polynomial};
use crate::poly::Ring;

/// Smallest prime accepted for a scenario field.
pub const MIN_SCENARIO_PRIME: u64 = 1 << 30;

/// Variables beyond this count do not fit the support masks of the engine,
/// which also needs room for two auxiliary variables.
pub const MAX_VARIABLES: usize = 62;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormInput {
    OneForm(Vec<String>),
    Function(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub t: usize,
    pub form: Option<FormInput>,
    pub linear_form: Option<Vec<BigRational>>,
    pub perturbation: Option<Vec<Vec<BigRational>>>,
    /// Scale of the perturbation; absent means 1 with a perturbation and 0 without.
    pub epsilon: Option<BigRational>,
    pub tau: BigRational,
    pub field: FieldSpec,
    pub seed: u64,
    pub mode: Mode,
    pub chi: Option<Vec<BigRational>>,
    pub singular_points: Vec<Vec<BigRational>>,
    /// Overrides `(m-t+1)(n-t+1)` for presentations such as symmetric matrices.
    pub expected_codim: Option<usize>,
}

impl Scenario {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    /// Checks that every polynomial text parses over `field`, for overrides
    /// applied after the document was read.
    pub fn with_field(&self, field: FieldSpec) -> Result<Scenario, ParseDiagnostic> {
        check_field(field).map_err(|e| ParseDiagnostic::new(1, 1, e.to_string()).at_path("field"))?;
        let ring = Ring::new(self.variables.clone(), field, MonomialOrder::DegRevLex);
        let mut texts: Vec<(String, &String)> = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                texts.push((format!("matrix[{i}][{j}]"), e));
            }
        }
        match &self.form {
            Some(FormInput::OneForm(cs)) => texts.extend(cs.iter().enumerate().map(|(i, c)| (format!("oneform[{i}]"), c))),
            Some(FormInput::Function(f)) => texts.push(("function".into(), f)),
            None => {}
        }
        for (path, src) in texts {
            parse_polynomial(src, &ring).map_err(|d| d.at_path(path))?;
        }
        let constants = self
            .linear_form
            .iter()
            .flatten()
            .chain(self.perturbation.iter().flatten().flatten())
            .chain(self.singular_points.iter().flatten());
        for c in constants {
            field.from_rational(c).map_err(|e| ParseDiagnostic::new(1, 1, e.to_string()).at_path("field"))?;
        }
        Ok(Scenario { field, ..self.clone() })
    }
}

fn check_field(field: FieldSpec) -> Result<(), FieldError> {
    match field {
        FieldSpec::PrimeField(p) if p < MIN_SCENARIO_PRIME => Err(FieldError::PrimeTooSmall(p)),
        _ => Ok(()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    variables: Spanned<Vec<Spanned<String>>>,
    matrix: Spanned<Vec<Spanned<Vec<Spanned<String>>>>>,
    t: Spanned<i64>,
    oneform: Option<Spanned<Vec<Spanned<String>>>>,
    function: Option<Spanned<String>>,
    linear_form: Option<Spanned<Vec<Spanned<toml::Value>>>>,
    perturbation: Option<Spanned<Vec<Spanned<Vec<Spanned<toml::Value>>>>>>,
    epsilon: Option<Spanned<toml::Value>>,
    tau: Option<Spanned<toml::Value>>,
    field: Option<Spanned<String>>,
    seed: Option<Spanned<i64>>,
    mode: Option<Spanned<String>>,
    chi: Option<Spanned<Vec<Spanned<toml::Value>>>>,
    singular_points: Option<Spanned<Vec<Spanned<Vec<Spanned<toml::Value>>>>>>,
    expected_codim: Option<Spanned<i64>>,
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn at(&self, span: Range<usize>, path: &str, msg: impl Into<String>) -> ParseDiagnostic {
        let (l, c) = line_col(self.src, span.start);
        ParseDiagnostic::new(l, c, msg).at_path(path)
    }

    fn rational(&self, v: &Spanned<toml::Value>, path: &str) -> Result<BigRational, ParseDiagnostic> {
        match v.get_ref() {
            toml::Value::Integer(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            toml::Value::String(s) => {
                parse_rational(s).ok_or_else(|| self.at(v.span(), path, format!("`{s}` is not a rational `a` or `a/b`")))
            }
            other => Err(self.at(v.span(), path, format!("expected an integer or a rational string, found {}", other.type_str()))),
        }
    }

    fn rationals(&self, vs: &[Spanned<toml::Value>], path: &str) -> Result<Vec<BigRational>, ParseDiagnostic> {
        vs.iter().enumerate().map(|(i, v)| self.rational(v, &format!("{path}[{i}]"))).collect()
    }

    /// Parses polynomial text, mapping positions inside single-line strings back into the file.
    fn polynomial(&self, ring: &crate::poly::RingRef, s: &Spanned<String>, path: &str) -> Result<(), ParseDiagnostic> {
        match parse_polynomial(s.get_ref(), ring) {
            Ok(_) => Ok(()),
            Err(d) => {
                let (l, c) = line_col(self.src, s.span().start);
                let raw = &self.src[s.span()];
                let plain = d.line == 1 && !raw.contains('\\') && !raw.starts_with("\"\"\"") && !raw.starts_with("'''");
                let col = if plain { c + d.column } else { c };
                Err(ParseDiagnostic::new(l, col, d.message).at_path(path))
            }
        }
    }
}

/// Parses and validates a scenario document, applying defaults.
pub fn parse_scenario(src: &str) -> Result<Scenario, ParseDiagnostic> {
    let ctx = Ctx { src };
    let raw: RawScenario = toml::from_str(src).map_err(|e| {
        let (l, c) = e.span().map_or((1, 1), |s| line_col(src, s.start));
        ParseDiagnostic::new(l, c, e.message().trim().to_string())
    })?;

    let variables: Vec<String> = raw.variables.get_ref().iter().map(|v| v.get_ref().clone()).collect();
    if variables.is_empty() {
        return Err(ctx.at(raw.variables.span(), "variables", "at least one variable is required"));
    }
    if variables.len() > MAX_VARIABLES {
        return Err(ctx.at(raw.variables.span(), "variables", format!("at most {MAX_VARIABLES} variables are supported")));
    }
    for (i, v) in raw.variables.get_ref().iter().enumerate() {
        let path = format!("variables[{i}]");
        if !is_valid_variable_name(v.get_ref()) {
            return Err(ctx.at(v.span(), &path, format!("`{}` is not a valid variable name", v.get_ref())));
        }
        if variables[..i].contains(v.get_ref()) {
            return Err(ctx.at(v.span(), &path, format!("duplicate variable `{}`", v.get_ref())));
        }
    }
    let nvars = variables.len();

    let field = match &raw.field {
        None => FieldSpec::Rationals,
        Some(f) => FieldSpec::parse(f.get_ref())
            .and_then(|fs| check_field(fs).map(|_| fs))
            .map_err(|e| ctx.at(f.span(), "field", e.to_string()))?,
    };
    let ring = Ring::new(variables.clone(), field, MonomialOrder::DegRevLex);

    let rows = raw.matrix.get_ref();
    if rows.is_empty() || rows[0].get_ref().is_empty() {
        return Err(ctx.at(raw.matrix.span(), "matrix", "the matrix must have at least one row and one column"));
    }
    let n = rows[0].get_ref().len();
    if rows.len() > MAX_MATRIX_SIDE || n > MAX_MATRIX_SIDE {
        return Err(ctx.at(raw.matrix.span(), "matrix", format!("matrix sides are limited to {MAX_MATRIX_SIDE}")));
    }
    let mut matrix = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.get_ref().len() != n {
            return Err(ctx.at(row.span(), &format!("matrix[{i}]"), format!("expected {n} entries like the first row, found {}", row.get_ref().len())));
        }
        let mut out = Vec::with_capacity(n);
        for (j, e) in row.get_ref().iter().enumerate() {
            ctx.polynomial(&ring, e, &format!("matrix[{i}][{j}]"))?;
            out.push(e.get_ref().clone());
        }
        matrix.push(out);
    }
    let m = matrix.len();

    let t = *raw.t.get_ref();
    if t < 1 || t as usize > m.min(n) {
        return Err(ctx.at(raw.t.span(), "t", format!("t must lie in 1..={} for a {m}x{n} matrix, found {t}", m.min(n))));
    }
    let t = t as usize;

    let form = match (&raw.oneform, &raw.function) {
        (Some(_), Some(f)) => return Err(ctx.at(f.span(), "function", "give either `oneform` or `function`, not both")),
        (Some(w), None) => {
            if w.get_ref().len() != nvars {
                return Err(ctx.at(w.span(), "oneform", format!("expected {nvars} coefficients, found {}", w.get_ref().len())));
            }
            for (i, c) in w.get_ref().iter().enumerate() {
                ctx.polynomial(&ring, c, &format!("oneform[{i}]"))?;
            }
            Some(FormInput::OneForm(w.get_ref().iter().map(|c| c.get_ref().clone()).collect()))
        }
        (None, Some(f)) => {
            ctx.polynomial(&ring, f, "function")?;
            Some(FormInput::Function(f.get_ref().clone()))
        }
        (None, None) => None,
    };

    let in_field = |q: BigRational, span: Range<usize>, path: &str| -> Result<BigRational, ParseDiagnostic> {
        field.from_rational(&q).map_err(|e| ctx.at(span, path, e.to_string()))?;
        Ok(q)
    };

    let linear_form = match &raw.linear_form {
        None => None,
        Some(l) => {
            if l.get_ref().len() != nvars {
                return Err(ctx.at(l.span(), "linear_form", format!("expected {nvars} values, found {}", l.get_ref().len())));
            }
            let vals = ctx.rationals(l.get_ref(), "linear_form")?;
            Some(vals.into_iter().map(|q| in_field(q, l.span(), "linear_form")).collect::<Result<Vec<_>, _>>()?)
        }
    };

    let perturbation = match &raw.perturbation {
        None => None,
        Some(a) => {
            if a.get_ref().len() != m {
                return Err(ctx.at(a.span(), "perturbation", format!("expected {m} rows, found {}", a.get_ref().len())));
            }
            let mut grid = Vec::with_capacity(m);
            for (i, row) in a.get_ref().iter().enumerate() {
                let path = format!("perturbation[{i}]");
                if row.get_ref().len() != n {
                    return Err(ctx.at(row.span(), &path, format!("expected {n} values, found {}", row.get_ref().len())));
                }
                grid.push(ctx.rationals(row.get_ref(), &path)?);
            }
            Some(grid)
        }
    };

    let epsilon = raw.epsilon.as_ref().map(|e| ctx.rational(e, "epsilon")).transpose()?;
    if let (Some(e), Some(sp)) = (&epsilon, &raw.epsilon) {
        let scaled = perturbation.iter().flatten().flatten().map(|a| a * e);
        for v in scaled {
            in_field(v, sp.span(), "epsilon")?;
        }
    }
    let tau = match &raw.tau {
        None => BigRational::one(),
        Some(v) => {
            let q = ctx.rational(v, "tau")?;
            let l = linear_form.clone().unwrap_or_default();
            for c in &l {
                in_field(c * &q, v.span(), "tau")?;
            }
            q
        }
    };

    let seed = match &raw.seed {
        None => 0,
        Some(s) if *s.get_ref() < 0 => return Err(ctx.at(s.span(), "seed", "seed must be non-negative")),
        Some(s) => *s.get_ref() as u64,
    };

    let mode = match &raw.mode {
        None => Mode::Saturation,
        Some(s) => Mode::parse(s.get_ref())
            .ok_or_else(|| ctx.at(s.span(), "mode", format!("unknown mode `{}` (expected `saturation` or `local_crosscheck`)", s.get_ref())))?,
    };

    let chi = match &raw.chi {
        None => None,
        Some(c) => {
            if c.get_ref().len() != t {
                return Err(ctx.at(c.span(), "chi", format!("expected t = {t} values, found {}", c.get_ref().len())));
            }
            Some(ctx.rationals(c.get_ref(), "chi")?)
        }
    };

    let mut singular_points = Vec::new();
    if let Some(ps) = &raw.singular_points {
        for (i, p) in ps.get_ref().iter().enumerate() {
            let path = format!("singular_points[{i}]");
            if p.get_ref().len() != nvars {
                return Err(ctx.at(p.span(), &path, format!("expected {nvars} coordinates, found {}", p.get_ref().len())));
            }
            let coords = ctx.rationals(p.get_ref(), &path)?;
            singular_points.push(coords.into_iter().map(|q| in_field(q, p.span(), &path)).collect::<Result<Vec<_>, _>>()?);
        }
    }

    let expected_codim = match &raw.expected_codim {
        None => None,
        Some(c) if *c.get_ref() < 1 || *c.get_ref() as usize > nvars => {
            return Err(ctx.at(c.span(), "expected_codim", format!("expected_codim must lie in 1..={nvars}")))
        }
        Some(c) => Some(*c.get_ref() as usize),
    };

    Ok(Scenario {
        variables,
        matrix,
        t,
        form,
        linear_form,
        perturbation,
        epsilon,
        tau,
        field,
        seed,
        mode,
        chi,
        singular_points,
        expected_codim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
variables = ["x1", "x2", "x3", "x4", "x5", "x6"]
matrix = [["x1", "x2", "x3"], ["x4", "x5", "x6"]]
t = 2
oneform = ["2*x1", "3*x2^2*x3", "x2^3", "-x5", "-x4", "0"]
linear_form = [2, 5, 3, -5, -7, 11]
"#;

    #[test]
    fn reads_a_full_document() {
        let s = parse_scenario(EXAMPLE).unwrap();
        assert_eq!(s.variables.len(), 6);
        assert_eq!((s.rows(), s.cols(), s.t), (2, 3, 2));
        assert_eq!(s.tau, BigRational::one());
        assert_eq!(s.mode, Mode::Saturation);
        assert_eq!(s.field, FieldSpec::Rationals);
        assert!(matches!(s.form, Some(FormInput::OneForm(ref w)) if w.len() == 6));
    }

    #[test]
    fn missing_linear_form_stays_absent() {
        let src = EXAMPLE.replace("linear_form = [2, 5, 3, -5, -7, 11]\n", "");
        assert_eq!(parse_scenario(&src).unwrap().linear_form, None);
    }

    #[test]
    fn rank_bound_violation() {
        let err = parse_scenario(&EXAMPLE.replace("t = 2", "t = 3")).unwrap_err();
        assert_eq!(err.path, "t");
        assert_eq!((err.line, err.column), (4, 5));
    }

    #[test]
    fn bad_entry_is_located_inside_the_string() {
        let err = parse_scenario(&EXAMPLE.replace("\"x5\", \"x6\"]]", "\"x5\", \"x6 + y\"]]")).unwrap_err();
        assert_eq!(err.path, "matrix[1][2]");
        assert_eq!(err.line, 3);
        let line = EXAMPLE.lines().nth(2).unwrap().replace("\"x6\"", "\"x6 + y\"");
        assert_eq!(&line[err.column - 1..err.column], "y");
    }

    #[test]
    fn ragged_matrix_and_unknown_key() {
        let err = parse_scenario(&EXAMPLE.replace("[\"x4\", \"x5\", \"x6\"]", "[\"x4\", \"x5\"]")).unwrap_err();
        assert_eq!(err.path, "matrix[1]");
        let err = parse_scenario(&format!("{EXAMPLE}colour = 1\n")).unwrap_err();
        assert!(err.message.contains("colour"), "{err}");
        assert_eq!(err.line, 7);
    }

    #[test]
    fn rationals_and_fields() {
        let src = format!("{EXAMPLE}tau = \"1/3\"\nfield = \"prime:2147483647\"\nmode = \"local_crosscheck\"\n");
        let s = parse_scenario(&src).unwrap();
        assert_eq!(s.tau, BigRational::new(1.into(), 3.into()));
        assert_eq!(s.field, FieldSpec::PrimeField(2_147_483_647));
        assert_eq!(s.mode, Mode::LocalCrosscheck);
        let err = parse_scenario(&format!("{EXAMPLE}field = \"prime:101\"\n")).unwrap_err();
        assert_eq!(err.path, "field");
        let err = parse_scenario(&format!("{EXAMPLE}tau = 0.5\n")).unwrap_err();
        assert_eq!(err.path, "tau");
    }

    #[test]
    fn both_form_kinds_rejected() {
        let err = parse_scenario(&format!("{EXAMPLE}function = \"x1\"\n")).unwrap_err();
        assert_eq!(err.path, "function");
    }

    #[test]
    fn field_override_rechecks_constants() {
        let s = parse_scenario(&EXAMPLE.replace("\"x4\", \"x5\", \"x6\"]]", "\"x4\", \"x5\", \"x6 - 1/1073741827\"]]")).unwrap();
        assert!(s.with_field(FieldSpec::PrimeField(1_073_741_827)).is_err());
        assert!(s.with_field(FieldSpec::PrimeField(2_147_483_647)).is_ok());
    }
}
