//! Polynomials with exact rational coefficients, their exponent matrices and
//! quasihomogeneous weights.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::{Error, Inadmissible, Result};
use crate::milnor;
use crate::rational::{self, Rational};

/// Exponent vector of a monomial; its length is the ambient variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Index of the single variable when this is a pure power `x_i^k`, `k > 0`.
    pub fn pure_power_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Graded reverse lexicographic comparison: total degree first, then the
/// monomial with the smaller exponent in the last differing variable is larger.
pub fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| revlex_cmp(a, b))
}

pub(crate) fn revlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A polynomial in canonical collected form: distinct monomials, nonzero
/// coefficients, terms sorted leading-first in degree reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    variables: Vec<String>,
    terms: Vec<(Rational, Monomial)>,
}

impl Polynomial {
    /// Collects like terms and drops zero coefficients. The result may be zero.
    pub fn new(
        variables: Vec<String>,
        terms: impl IntoIterator<Item = (Rational, Monomial)>,
    ) -> Result<Self> {
        let n = variables.len();
        let mut collected: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (c, m) in terms {
            if m.len() != n {
                return Err(Error::VariableMismatch {
                    expected: n,
                    found: m.len(),
                });
            }
            *collected.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = collected
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        terms.sort_by(|a, b| degrevlex_cmp(&b.1, &a.1));
        Ok(Polynomial { variables, terms })
    }

    pub fn zero(variables: Vec<String>) -> Self {
        Polynomial {
            variables,
            terms: Vec::new(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(_, m)| m)
    }

    /// Same support with every coefficient replaced by `f(coefficient)`.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Rational) -> Rational) -> Result<Self> {
        Polynomial::new(
            self.variables.clone(),
            self.terms.iter().map(|(c, m)| (f(c), m.clone())),
        )
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(c, m)| {
            let e = m.exponents()[var];
            (e > 0).then(|| {
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                (c * Rational::from_integer(e.into()), Monomial::new(exps))
            })
        });
        Polynomial::new(self.variables.clone(), terms).expect("derivative keeps the arity")
    }

    /// True when some term is `c * x_i * x_j` with `i != j`.
    pub fn has_cross_term(&self) -> bool {
        self.monomials().any(is_cross_term)
    }
}

fn is_cross_term(m: &Monomial) -> bool {
    let e = m.exponents();
    e.iter().filter(|&&a| a == 1).count() == 2 && e.iter().all(|&a| a <= 1)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let factors = monomial_factors(&self.variables, m);
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn monomial_factors(vars: &[String], m: &Monomial) -> Vec<String> {
    m.exponents()
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| {
            if *e == 1 {
                v.clone()
            } else {
                format!("{}^{}", v, e)
            }
        })
        .collect()
}

/// Renders a monomial over the given variable names, `1` for the empty monomial.
pub fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let factors = monomial_factors(vars, m);
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Sort key placing x, y, z, w first, other single letters next, indexed
/// names (`x1`, `x2`, ..., `x10`) by numeric index after that.
fn variable_key(name: &str) -> (u8, String, u64, String) {
    const PREFERRED: [&str; 4] = ["x", "y", "z", "w"];
    if let Some(rank) = PREFERRED.iter().position(|p| *p == name) {
        return (0, String::new(), rank as u64, name.to_string());
    }
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return (1, name.to_string(), 0, name.to_string());
    }
    let (prefix, index) = name.split_at(name.len() - digits);
    let index = index.parse().unwrap_or(u64::MAX);
    (2, prefix.to_string(), index, name.to_string())
}

pub fn sort_variables(names: &mut Vec<String>) {
    names.sort_by_key(|n| variable_key(n));
    names.dedup();
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type RawTerm = (Rational, Vec<(String, u32)>);

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(&self.src[start..self.pos])
    }

    fn coefficient(&mut self) -> Result<Option<Rational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: Rational = rational::parse(num).expect("digits parse");
        if self.eat('/') {
            let Some(den) = self.digits() else {
                return self.err("expected denominator after '/'");
            };
            let den = rational::parse(den).expect("digits parse");
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Some(num / den));
        }
        Ok(Some(num))
    }

    fn factor(&mut self) -> Result<(String, u32)> {
        let Some(name) = self.identifier() else {
            return self.err("expected a variable");
        };
        let name = name.to_string();
        if self.eat('^') {
            let at = self.pos;
            let Some(exp) = self.digits() else {
                return self.err("expected a positive integer exponent after '^'");
            };
            match exp.parse::<u32>() {
                Ok(e) if e > 0 => return Ok((name, e)),
                _ => {
                    self.pos = at;
                    return self.err("exponent must be a positive integer");
                }
            }
        }
        Ok((name, 1))
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut factors = Vec::new();
        let coef = match self.coefficient()? {
            Some(c) => {
                if !self.eat('*') {
                    return Ok((c, factors));
                }
                c
            }
            None => Rational::one(),
        };
        factors.push(self.factor()?);
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok((coef, factors))
    }

    fn polynomial(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -Rational::one()
        } else {
            self.eat('+');
            Rational::one()
        };
        loop {
            let (c, f) = self.term()?;
            terms.push((c * &sign, f));
            self.skip_ws();
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = -Rational::one();
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("unexpected character");
        }
        Ok(terms)
    }
}

/// Parses `term (('+'|'-') term)*` with `term := [coef '*'] var['^'k] ('*' var['^'k])*`.
/// A bare coefficient is accepted as a constant term.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let raw = Parser { src: text, pos: 0 }.polynomial()?;
    let mut variables: Vec<String> = raw
        .iter()
        .flat_map(|(_, fs)| fs.iter().map(|(v, _)| v.clone()))
        .collect();
    sort_variables(&mut variables);
    let terms = raw
        .into_iter()
        .map(|(c, fs)| {
            let mut exps = vec![0u32; variables.len()];
            for (v, e) in fs {
                let i = variables.iter().position(|x| *x == v).expect("collected");
                exps[i] += e;
            }
            (c, Monomial::new(exps))
        })
        .collect::<Vec<_>>();
    let poly = Polynomial::new(variables, terms)?;
    if poly.is_zero() {
        return Err(Error::Parse {
            position: text.len(),
            message: "polynomial is empty after collecting like terms".into(),
        });
    }
    Ok(poly)
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

// ---------------------------------------------------------------------------
// Exponent matrices and weights

/// `a[i][j]` is the exponent of variable `j` in term `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: Vec<Vec<u32>>,
    cols: usize,
}

impl ExponentMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged exponent matrix"
        );
        ExponentMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    pub fn transpose(&self) -> ExponentMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j]).collect())
            .collect();
        ExponentMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn has_cross_term_row(&self) -> bool {
        self.rows
            .iter()
            .any(|r| is_cross_term(&Monomial::new(r.clone())))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&e| Rational::from_integer(e.into()))
                    .collect()
            })
            .collect();
        row_reduce(&mut m, self.cols)
    }
}

/// Gauss-Jordan elimination on the first `cols` columns; returns the rank.
fn row_reduce(m: &mut [Vec<Rational>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..m[i].len() {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn exponent_matrix(w: &Polynomial) -> ExponentMatrix {
    ExponentMatrix::from_rows(
        w.monomials().map(|m| m.exponents().to_vec()).collect(),
        w.nvars(),
    )
}

/// Quasihomogeneous weights `J = (q_1, ..., q_n)`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSystem(Vec<Rational>);

impl WeightSystem {
    pub fn new(q: Vec<Rational>) -> Result<Self, WeightError> {
        if let Some(i) = q.iter().position(|x| !x.is_positive()) {
            return Err(WeightError::NonPositiveWeight(i));
        }
        Ok(WeightSystem(q))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weights of the variables listed in `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> WeightSystem {
        WeightSystem(indices.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::fmt).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weights are not unique (exponent matrix has rank {rank} < {vars})")]
    NonUnique { rank: usize, vars: usize },
    #[error("not quasihomogeneous: A q = 1 has no solution")]
    NoSolution,
    #[error("weight q_{} is not positive", .0 + 1)]
    NonPositiveWeight(usize),
    #[error("weight q_{} exceeds 1/2 although no x_i x_j term is present", .0 + 1)]
    WeightBoundViolated(usize),
}

/// Solves `A q = (1, ..., 1)` exactly.
pub fn solve_weights(a: &ExponentMatrix) -> Result<WeightSystem, WeightError> {
    let n = a.ncols();
    let mut m: Vec<Vec<Rational>> = a
        .rows()
        .iter()
        .map(|r| {
            let mut row: Vec<Rational> = r
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .collect();
            row.push(Rational::one());
            row
        })
        .collect();
    let rank = row_reduce(&mut m, n);
    // a zero row with a nonzero right-hand side
    if m[rank..].iter().any(|r| !r[n].is_zero()) {
        return Err(WeightError::NoSolution);
    }
    if rank < n {
        return Err(WeightError::NonUnique { rank, vars: n });
    }
    let q: Vec<Rational> = m[..n].iter().map(|r| r[n].clone()).collect();
    let q = WeightSystem::new(q)?;
    if !a.has_cross_term_row() {
        let half = rational::ratio(1, 2);
        if let Some(i) = q.as_slice().iter().position(|x| *x > half) {
            return Err(WeightError::WeightBoundViolated(i));
        }
    }
    Ok(q)
}

pub fn weights(w: &Polynomial) -> Result<WeightSystem, WeightError> {
    solve_weights(&exponent_matrix(w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Invertible,
    Noninvertible,
    NotAdmissible(Inadmissible),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Invertible => write!(f, "Invertible"),
            Classification::Noninvertible => write!(f, "Noninvertible"),
            Classification::NotAdmissible(r) => write!(f, "NotAdmissible({})", r),
        }
    }
}

pub fn classify(w: &Polynomial) -> Classification {
    match admissible_weights(w) {
        Ok(_) if w.nterms() == w.nvars() => Classification::Invertible,
        Ok(_) => Classification::Noninvertible,
        Err(reason) => Classification::NotAdmissible(reason),
    }
}

/// Weights of `w` after checking uniqueness, positivity, the 1/2 bound and
/// nondegeneracy.
pub fn admissible_weights(w: &Polynomial) -> Result<WeightSystem, Inadmissible> {
    let q = weights(w)?;
    match milnor::is_nondegenerate(w) {
        Ok(true) => Ok(q),
        Ok(false) => Err(Inadmissible::Degenerate),
        Err(Error::ResourceLimit(n)) => Err(Inadmissible::ResourceLimit(n)),
        Err(_) => Err(Inadmissible::Degenerate),
    }
}

/// `2 * sum(a_i q_i)`.
pub fn monomial_bdegree(m: &Monomial, q: &WeightSystem) -> Rational {
    assert_eq!(m.len(), q.len(), "monomial and weights disagree on arity");
    let s: Rational = m
        .exponents()
        .iter()
        .zip(q.as_slice())
        .map(|(&a, qi)| Rational::from_integer(a.into()) * qi)
        .sum();
    s * rational::int(2)
}

/// Row permutation `perm` of a square exponent matrix such that row `perm[i]`
/// is paired with variable `i`: the permutation maximising the product of the
/// paired entries, lexicographically smallest among ties. For Fermat, chain
/// and loop polynomials this pairs each variable with the monomial in which
/// it carries its large exponent.
pub fn diagonal_pairing(a: &ExponentMatrix) -> Option<Vec<usize>> {
    let n = a.ncols();
    if a.nrows() != n {
        return None;
    }
    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn search(
        a: &ExponentMatrix,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        product: u128,
        best: &mut Option<(u128, Vec<usize>)>,
    ) {
        let n = a.ncols();
        let col = perm.len();
        if col == n {
            if best.as_ref().is_none_or(|(b, _)| product > *b) {
                *best = Some((product, perm.clone()));
            }
            return;
        }
        for row in 0..n {
            let e = a.get(row, col) as u128;
            if used[row] || e == 0 {
                continue;
            }
            used[row] = true;
            perm.push(row);
            search(a, perm, used, product.saturating_mul(e), best);
            perm.pop();
            used[row] = false;
        }
    }
    search(a, &mut perm, &mut used, 1, &mut best);
    best.map(|(_, p)| p)
}

/// Exponent matrix of an invertible polynomial with rows permuted by
/// [`diagonal_pairing`], so row `i` is the monomial paired with variable `i`.
pub fn paired_exponent_matrix(w: &Polynomial) -> Result<ExponentMatrix> {
    let a = exponent_matrix(w);
    let not_invertible = Error::NotInvertible {
        rows: a.nrows(),
        cols: a.ncols(),
    };
    if a.nrows() != a.ncols() || a.rank() < a.ncols() {
        return Err(not_invertible);
    }
    let perm = diagonal_pairing(&a).ok_or(not_invertible)?;
    Ok(ExponentMatrix::from_rows(
        perm.iter().map(|&r| a.rows()[r].clone()).collect(),
        a.ncols(),
    ))
}
