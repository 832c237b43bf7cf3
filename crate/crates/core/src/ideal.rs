//! Graph ideals of monomial maps.
//!
//! A [`VarietySpec`] fixes `m` free variables `t1..tm` and `k` relations
//!
//! ```text
//! f*_j = t_{m+j} - λ_j * t1^a(1,j) * ... * tm^a(m,j)      (j = 1..k)
//! ```
//!
//! in `Q[t1, ..., tn]`, `n = m + k`. The substitution `φ` fixing `t1..tm`
//! and sending `t_{m+j}` to `λ_j t^a(·,j)` is a surjection onto `Q[t1..tm]`
//! whose kernel is both the vanishing ideal of the variety and the ideal
//! generated by the `f*_j`. So `f` is a member exactly when `φ(f) = 0`, and
//! the variety has dimension `m`.
//!
//! Membership is witnessed by explicit cofactors: for every monomial `t^I`,
//! [`VarietySpec::reduce_term`] produces `g_1..g_k` with
//! `t^I - Π λ_j^i(m+j) t^b = Σ g_j f*_j`, built one relation at a time from
//! the telescoping factor `u^e - v^e = (u - v) Δ_e(u, v)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::poly::{delta_expand, Monomial, PolyError, Polynomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("relation index {index} out of range 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid variety: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    m: usize,
    lambdas: Vec<Rational>,
    /// `exponents[j][l]` is the exponent of `t_{l+1}` in relation `j+1`.
    exponents: Vec<Vec<u32>>,
}

/// Cofactors `g_1..g_k` in ambient `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub cofactors: Vec<Polynomial>,
}

/// `f = lift(normal_form) + Σ_j certificate.cofactors[j] * f*_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    /// Lives in the `m` free variables.
    pub normal_form: Polynomial,
    pub certificate: Certificate,
}

impl Certificate {
    pub fn zero(spec: &VarietySpec) -> Self {
        Certificate {
            cofactors: vec![Polynomial::zero(spec.n()); spec.k()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cofactors.iter().all(Polynomial::is_zero)
    }

    /// `Σ_j g_j f*_j`.
    pub fn combine(&self, spec: &VarietySpec) -> Result<Polynomial, IdealError> {
        spec.check_certificate_shape(self)?;
        let mut sum = Polynomial::zero(spec.n());
        for (j, g) in self.cofactors.iter().enumerate() {
            sum = sum.try_add(&g.try_mul(&spec.generator(j + 1)?)?)?;
        }
        Ok(sum)
    }
}

impl VarietySpec {
    pub fn new(
        m: usize,
        lambdas: Vec<Rational>,
        exponents: Vec<Vec<u32>>,
    ) -> Result<Self, IdealError> {
        if m == 0 {
            return Err(IdealError::InvalidSpec("m must be positive".into()));
        }
        if lambdas.is_empty() {
            return Err(IdealError::InvalidSpec("k must be positive".into()));
        }
        if exponents.len() != lambdas.len() {
            return Err(IdealError::InvalidSpec(format!(
                "{} exponent rows for {} relations",
                exponents.len(),
                lambdas.len()
            )));
        }
        if let Some((j, row)) = exponents.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(IdealError::InvalidSpec(format!(
                "relation {} has {} exponents, expected {m}",
                j + 1,
                row.len()
            )));
        }
        Ok(VarietySpec {
            m,
            lambdas,
            exponents,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    pub fn n(&self) -> usize {
        self.m + self.k()
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn exponent_rows(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    fn check_index(&self, j: usize) -> Result<usize, IdealError> {
        if j == 0 || j > self.k() {
            Err(IdealError::IndexOutOfRange {
                index: j,
                k: self.k(),
            })
        } else {
            Ok(j - 1)
        }
    }

    fn check_ambient(&self, f: &Polynomial) -> Result<(), IdealError> {
        if f.ambient() != self.n() {
            return Err(PolyError::AmbientMismatch {
                left: f.ambient(),
                right: self.n(),
            }
            .into());
        }
        Ok(())
    }

    fn check_certificate_shape(&self, cert: &Certificate) -> Result<(), IdealError> {
        if cert.cofactors.len() != self.k() {
            return Err(IdealError::Shape(format!(
                "{} cofactors for {} relations",
                cert.cofactors.len(),
                self.k()
            )));
        }
        for g in &cert.cofactors {
            self.check_ambient(g)?;
        }
        Ok(())
    }

    /// `λ_j t^a(·,j)` in ambient `ambient` (either `m` or `n`), `j` zero-based.
    fn relation_image(&self, j: usize, ambient: usize) -> Polynomial {
        Polynomial::term(
            self.lambdas[j].clone(),
            Monomial::new(self.exponents[j].clone()).resized(ambient),
        )
    }

    /// `f*_j = t_{m+j} - λ_j t^a(·,j)`, for `1 <= j <= k`.
    pub fn generator(&self, j: usize) -> Result<Polynomial, IdealError> {
        let j = self.check_index(j)?;
        let n = self.n();
        let target = Polynomial::var(n, self.m + j)?;
        Ok(target.try_sub(&self.relation_image(j, n))?)
    }

    pub fn generators(&self) -> Result<Vec<Polynomial>, IdealError> {
        (1..=self.k()).map(|j| self.generator(j)).collect()
    }

    /// Images of `t1..tn` under `φ`, each in ambient `m`.
    pub fn substitution_images(&self) -> Vec<Polynomial> {
        let mut images: Vec<Polynomial> = (0..self.m)
            .map(|l| Polynomial::var(self.m, l).expect("l < m"))
            .collect();
        images.extend((0..self.k()).map(|j| self.relation_image(j, self.m)));
        images
    }

    /// `b_l = i_l + Σ_j a(l,j) * i_{m+j}`: the exponents of `φ(t^I)`.
    pub fn b_vector(&self, mono: &Monomial) -> Result<Monomial, IdealError> {
        if mono.len() != self.n() {
            return Err(PolyError::AmbientMismatch {
                left: mono.len(),
                right: self.n(),
            }
            .into());
        }
        let exps = mono.exponents();
        let (free, bound) = exps.split_at(self.m);
        let mut b = free.to_vec();
        for (row, &power) in self.exponents.iter().zip(bound) {
            for (bl, &a) in b.iter_mut().zip(row) {
                *bl = a
                    .checked_mul(power)
                    .and_then(|x| bl.checked_add(x))
                    .ok_or(PolyError::ExponentOverflow)?;
            }
        }
        Ok(Monomial::new(b))
    }

    /// `Π_j λ_j^i(m+j)`: the coefficient of `φ(t^I)`.
    pub fn image_coefficient(&self, mono: &Monomial) -> Rational {
        self.lambdas
            .iter()
            .zip(&mono.exponents()[self.m..])
            .fold(Rational::one(), |acc, (lambda, &e)| acc.mul(&lambda.pow(e)))
    }

    /// `φ(f)`, grouping terms by their `b`-vector.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, IdealError> {
        self.check_ambient(f)?;
        let terms = f
            .terms()
            .map(|(mono, c)| Ok((self.b_vector(mono)?, c.mul(&self.image_coefficient(mono)))))
            .collect::<Result<Vec<_>, IdealError>>()?;
        Ok(Polynomial::from_terms(self.m, terms)?)
    }

    pub fn is_member(&self, f: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Cofactors for `t^I - Π λ_j^i(m+j) t^b`.
    ///
    /// Relations are added one at a time. Going from `j-1` to `j` relations,
    /// the existing cofactors are multiplied by `t_{m+j}^i(m+j)` and the new
    /// one is `(Π_{j'<j} λ_j'^i(m+j')) t^b_{j-1} Δ_{i(m+j)}(t_{m+j}, λ_j t^a(·,j))`,
    /// where `b_{j-1}` accounts only for the first `j-1` relations.
    pub fn reduce_term(&self, mono: &Monomial) -> Result<Certificate, IdealError> {
        let n = self.n();
        if mono.len() != n {
            return Err(PolyError::AmbientMismatch {
                left: mono.len(),
                right: n,
            }
            .into());
        }
        let exps = mono.exponents();
        let mut cofactors: Vec<Polynomial> = Vec::with_capacity(self.k());
        let mut prefix = Rational::one();
        let mut b: Vec<u32> = exps[..self.m].to_vec();
        for j in 0..self.k() {
            let target = self.m + j;
            let power = exps[target];
            let lift = Monomial::var(n, target)?.try_pow(power)?;
            for g in &mut cofactors {
                *g = g.shift(&lift)?;
            }
            let base = Polynomial::term(prefix.clone(), Monomial::new(b.clone()).resized(n));
            let delta = delta_expand(power, target, &self.relation_image(j, n))?;
            cofactors.push(base.try_mul(&delta)?);

            prefix = prefix.mul(&self.lambdas[j].pow(power));
            for (bl, &a) in b.iter_mut().zip(&self.exponents[j]) {
                *bl = a
                    .checked_mul(power)
                    .and_then(|x| bl.checked_add(x))
                    .ok_or(PolyError::ExponentOverflow)?;
            }
        }
        Ok(Certificate { cofactors })
    }

    /// Normal form plus cofactors for `f - lift(normal_form)`, aggregated
    /// term by term with the coefficients of `f`.
    pub fn certify(&self, f: &Polynomial) -> Result<ReductionResult, IdealError> {
        self.check_ambient(f)?;
        let mut certificate = Certificate::zero(self);
        let mut image_terms = Vec::with_capacity(f.len());
        for (mono, c) in f.terms() {
            image_terms.push((self.b_vector(mono)?, c.mul(&self.image_coefficient(mono))));
            let per_term = self.reduce_term(mono)?;
            for (acc, g) in certificate.cofactors.iter_mut().zip(&per_term.cofactors) {
                if !g.is_zero() {
                    *acc = acc.try_add(&g.scale(c))?;
                }
            }
        }
        Ok(ReductionResult {
            normal_form: Polynomial::from_terms(self.m, image_terms)?,
            certificate,
        })
    }

    /// `f - lift(r.normal_form) - Σ_j g_j f*_j`.
    pub fn residual(&self, f: &Polynomial, r: &ReductionResult) -> Result<Polynomial, IdealError> {
        self.check_ambient(f)?;
        if r.normal_form.ambient() != self.m {
            return Err(PolyError::AmbientMismatch {
                left: r.normal_form.ambient(),
                right: self.m,
            }
            .into());
        }
        let combined = r.certificate.combine(self)?;
        Ok(f.try_sub(&r.normal_form.embed(self.n())?)?
            .try_sub(&combined)?)
    }

    pub fn verify_certificate(
        &self,
        f: &Polynomial,
        r: &ReductionResult,
    ) -> Result<bool, IdealError> {
        Ok(self.residual(f, r)?.is_zero())
    }

    /// The coordinate ring is isomorphic to `Q[t1..tm]`, so the dimension is `m`.
    pub fn dimension(&self) -> usize {
        self.m
    }

    /// The point `(x, λ_1 x^a(·,1), ..., λ_k x^a(·,k))` of the variety.
    pub fn parametrize(&self, free: &[Rational]) -> Result<Vec<Rational>, IdealError> {
        if free.len() != self.m {
            return Err(PolyError::AmbientMismatch {
                left: free.len(),
                right: self.m,
            }
            .into());
        }
        let mut point = free.to_vec();
        for (lambda, row) in self.lambdas.iter().zip(&self.exponents) {
            let value = row
                .iter()
                .zip(free)
                .fold(lambda.clone(), |acc, (&a, x)| acc.mul(&x.pow(a)));
            point.push(value);
        }
        Ok(point)
    }
}

/// Malformed variety file; `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SpecFileError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct LineCursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

const FINITE_FIELD_KEYS: &[&str] = &[
    "mod",
    "modulus",
    "p",
    "char",
    "characteristic",
    "prime",
    "field",
];

impl<'a> LineCursor<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> SpecFileError {
        SpecFileError {
            line: self.line,
            column: at + 1,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) -> usize {
        let skipped = self.rest().len() - self.rest().trim_start().len();
        self.pos += skipped;
        skipped
    }

    fn require_ws(&mut self, before: &str) -> Result<(), SpecFileError> {
        if self.skip_ws() == 0 {
            return Err(self.error(self.pos, format!("expected whitespace before {before}")));
        }
        Ok(())
    }

    fn literal(&mut self, lit: &str) -> Result<(), SpecFileError> {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected {lit:?}")))
        }
    }

    fn token(&mut self) -> (&'a str, usize) {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| c.is_whitespace() || c == ',' || c == ':')
            .unwrap_or(self.rest().len());
        self.pos += len;
        (&self.text[start..start + len], start)
    }

    fn uint<T: FromStr>(&mut self, what: &str) -> Result<(T, usize), SpecFileError> {
        let (tok, at) = self.token();
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error(
                at,
                format!("expected nonnegative integer for {what}, found {tok:?}"),
            ));
        }
        tok.parse::<T>()
            .map(|v| (v, at))
            .map_err(|_| self.error(at, format!("{what} value {tok} out of range")))
    }

    fn finish(&mut self) -> Result<(), SpecFileError> {
        self.skip_ws();
        if self.rest().is_empty() {
            return Ok(());
        }
        let key = self.rest().split(['=', ' ', '\t']).next().unwrap_or("");
        if FINITE_FIELD_KEYS.contains(&key.to_ascii_lowercase().as_str()) {
            return Err(self.error(
                self.pos,
                "finite-field coefficients are not supported; coefficients must be rationals",
            ));
        }
        Err(self.error(
            self.pos,
            format!("unexpected trailing input {:?}", self.rest()),
        ))
    }
}

fn parse_header(cur: &mut LineCursor<'_>) -> Result<(usize, usize), SpecFileError> {
    cur.skip_ws();
    cur.literal("m=")?;
    let (m, m_at) = cur.uint::<usize>("m")?;
    if m == 0 {
        return Err(cur.error(m_at, "m must be positive"));
    }
    cur.require_ws("k=")?;
    cur.literal("k=")?;
    let (k, k_at) = cur.uint::<usize>("k")?;
    if k == 0 {
        return Err(cur.error(k_at, "k must be positive"));
    }
    cur.finish()?;
    Ok((m, k))
}

fn parse_relation(
    cur: &mut LineCursor<'_>,
    expected: usize,
    m: usize,
) -> Result<(Rational, Vec<u32>), SpecFileError> {
    cur.skip_ws();
    cur.literal("rel")?;
    cur.require_ws("relation index")?;
    let (j, j_at) = cur.uint::<usize>("relation index")?;
    if j != expected {
        return Err(cur.error(j_at, format!("expected relation {expected}, found {j}")));
    }
    cur.literal(":")?;
    cur.skip_ws();
    cur.literal("lambda=")?;
    let (tok, at) = cur.token();
    let lambda = tok
        .parse::<Rational>()
        .map_err(|e| cur.error(at, format!("bad lambda {tok:?}: {e}")))?;
    cur.require_ws("exps=")?;
    cur.literal("exps=")?;
    let mut exps = Vec::with_capacity(m);
    loop {
        let (e, _) = cur.uint::<u32>("exponent")?;
        exps.push(e);
        if cur.rest().starts_with(',') {
            cur.pos += 1;
        } else {
            break;
        }
    }
    if exps.len() != m {
        return Err(cur.error(
            cur.pos,
            format!(
                "relation {j} lists {} exponents, expected m = {m}",
                exps.len()
            ),
        ));
    }
    cur.finish()?;
    Ok((lambda, exps))
}

/// Parses the line-oriented variety format:
///
/// ```text
/// m=1 k=1
/// rel 1: lambda=4 exps=3
/// ```
///
/// Blank lines are allowed only after the last relation.
pub fn parse_spec_file(text: &str) -> Result<VarietySpec, SpecFileError> {
    let mut lines = text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate();
    let missing = |line: usize, what: &str| SpecFileError {
        line,
        column: 1,
        message: format!("missing {what}"),
    };
    let (_, header) = lines
        .next()
        .ok_or_else(|| missing(1, "header `m=<uint> k=<uint>`"))?;
    let (m, k) = parse_header(&mut LineCursor {
        text: header,
        pos: 0,
        line: 1,
    })?;
    let mut lambdas = Vec::with_capacity(k);
    let mut rows = Vec::with_capacity(k);
    for j in 1..=k {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| missing(j + 1, &format!("line `rel {j}: ...`")))?;
        let (lambda, exps) = parse_relation(
            &mut LineCursor {
                text: line,
                pos: 0,
                line: idx + 1,
            },
            j,
            m,
        )?;
        lambdas.push(lambda);
        rows.push(exps);
    }
    for (idx, line) in lines {
        if !line.trim().is_empty() {
            let col = line.len() - line.trim_start().len();
            return Err(SpecFileError {
                line: idx + 1,
                column: col + 1,
                message: format!("unexpected content after {k} relations"),
            });
        }
    }
    Ok(VarietySpec::new(m, lambdas, rows).expect("shape checked while parsing"))
}

impl FromStr for VarietySpec {
    type Err = SpecFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec_file(s)
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={} k={}", self.m, self.k())?;
        for (j, (lambda, row)) in self.lambdas.iter().zip(&self.exponents).enumerate() {
            let exps: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "rel {}: lambda={lambda} exps={}", j + 1, exps.join(","))?;
        }
        Ok(())
    }
}
