//! Transpose polynomials, graded mirror checks and the search for weight
//! systems of candidate transpose polynomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::amodel;
use crate::error::{Error, Result};
use crate::milnor::{self, GradedDims};
use crate::polycore::{self, Monomial, Polynomial, WeightSystem};
use crate::rational::{self, ratio, Rational};
use crate::symmetry;

/// `W^T`: the polynomial whose exponent matrix is the transpose of the paired
/// exponent matrix of `W`, with unit coefficients and the same variable names.
pub fn transpose_polynomial(w: &Polynomial) -> Result<Polynomial> {
    let a = polycore::paired_exponent_matrix(w)?.transpose();
    let terms = a
        .rows()
        .iter()
        .map(|r| (Rational::one(), Monomial::new(r.clone())));
    Polynomial::new(w.variables().to_vec(), terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorComparison {
    pub transpose: Polynomial,
    pub a_side: GradedDims,
    pub b_side: GradedDims,
}

impl MirrorComparison {
    pub fn agrees(&self) -> bool {
        self.a_side == self.b_side
    }
}

/// `A_{W, G^max}` against `B_{W^T, {0}}`.
pub fn mirror_comparison(w: &Polynomial) -> Result<MirrorComparison> {
    let transpose = transpose_polynomial(w)?;
    let a = amodel::amodel(w, &symmetry::gmax(w)?)?;
    let b = milnor::bmodel(&transpose)?;
    Ok(MirrorComparison {
        transpose,
        a_side: a.graded,
        b_side: b.graded,
    })
}

pub fn mirror_check(w: &Polynomial) -> Result<bool> {
    Ok(mirror_comparison(w)?.agrees())
}

fn in_weight_range(q: &Rational) -> bool {
    q.is_positive() && *q <= ratio(1, 2)
}

/// Every rational `(q1, q2)` with `q1 <= q2`, `q1 + q2 = s` and
/// `(1/q1 - 1)(1/q2 - 1) = d`, before any range filter. When `d = 1` and
/// `s = 1` the solution set is the whole line and only `(1/2, 1/2)` is reported.
pub fn pair_roots(d: &Rational, s: &Rational) -> Vec<(Rational, Rational)> {
    if d.is_one() {
        return if s.is_one() {
            vec![(ratio(1, 2), ratio(1, 2))]
        } else {
            Vec::new()
        };
    }
    // (1 - q1)(1 - q2) = d q1 q2 gives q1 q2 = (1 - s) / (d - 1)
    let product = (Rational::one() - s) / (d - Rational::one());
    let disc = s * s - &product * rational::int(4);
    let Some(root) = rational::sqrt_exact(&disc) else {
        return Vec::new();
    };
    let two = rational::int(2);
    let lo = (s - &root) / &two;
    let hi = (s + &root) / &two;
    if lo.is_zero() || hi.is_zero() {
        // 1/q is undefined; keep the root pair so the range filter rejects it
        return vec![(lo, hi)];
    }
    let check = (lo.recip() - Rational::one()) * (hi.recip() - Rational::one());
    if check == *d {
        vec![(lo, hi)]
    } else {
        Vec::new()
    }
}

/// The rational pairs of [`pair_roots`] with both weights in `(0, 1/2]`.
pub fn solve_pair(d: &Rational, s: &Rational) -> Vec<(Rational, Rational)> {
    pair_roots(d, s)
        .into_iter()
        .filter(|(a, b)| in_weight_range(a) && in_weight_range(b))
        .collect()
}

/// Coefficients `(n(2n-3), 2(3-2n), n-2)` of the quadratic in `q_2` for
/// `d = 2n - 2` and `q_1 + q_2 = 2/n`.
pub fn family_quadratic(n: i64) -> (BigInt, BigInt, BigInt) {
    let n = BigInt::from(n);
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    (
        &n * (&two * &n - &three),
        &two * (&three - &two * &n),
        &n - &two,
    )
}

/// `b^2 - 4ac` of [`family_quadratic`].
pub fn discriminant_2var(n: i64) -> Rational {
    let (a, b, c) = family_quadratic(n);
    Rational::from_integer(&b * &b - BigInt::from(4) * a * c)
}

/// `-4(2n^3 - 11n^2 + 18n - 9)`.
pub fn discriminant_closed_form(n: i64) -> Rational {
    let n = BigInt::from(n);
    let cubic = BigInt::from(2) * &n * &n * &n - BigInt::from(11) * &n * &n + BigInt::from(18) * &n
        - BigInt::from(9);
    Rational::from_integer(BigInt::from(-4) * cubic)
}

/// Discriminant of `t^2 - s t + (1 - s)/(d - 1)` scaled by `(d - 1)^2`:
/// `(d - 1)^2 s^2 - 4 (d - 1)(1 - s)`.
pub fn discriminant_general(d: &Rational, s: &Rational) -> Rational {
    let e = d - Rational::one();
    &e * &e * s * s - rational::int(4) * &e * (Rational::one() - s)
}

/// Equations (1), (2) with the tail `q_3..q_m` fixed, reduced to a two-variable problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReduction {
    pub d_pair: Rational,
    pub s_pair: Rational,
    pub tail: Vec<Rational>,
}

impl PairReduction {
    /// `A = 1 - d / prod_tail(1/q_i - 1)`, so that `A q1 q2 - q1 - q2 + 1 = 0`.
    pub fn a_coefficient(&self) -> Rational {
        Rational::one() - &self.d_pair
    }

    /// `B` with `q1 + q2 = B`.
    pub fn b_coefficient(&self) -> Rational {
        self.s_pair.clone()
    }

    /// Discriminant `(AB)^2 - 4A(B - 1)` of `A q1^2 - AB q1 + (B - 1) = 0`.
    pub fn discriminant(&self) -> Rational {
        let a = self.a_coefficient();
        let b = self.b_coefficient();
        let ab = &a * &b;
        &ab * &ab - rational::int(4) * &a * (b - Rational::one())
    }
}

fn tail_product(tail: &[Rational]) -> Rational {
    tail.iter().map(|q| q.recip() - Rational::one()).product()
}

pub fn reduce_to_pair(
    d: &Rational,
    delta: &Rational,
    m: usize,
    tail: &[Rational],
) -> Result<PairReduction> {
    if m < 2 || tail.len() != m - 2 {
        return Err(Error::InvalidInput(format!(
            "a tail for {} variables must have {} entries, got {}",
            m,
            m.saturating_sub(2),
            tail.len()
        )));
    }
    if let Some(q) = tail.iter().find(|q| !in_weight_range(q)) {
        return Err(Error::InvalidInput(format!(
            "tail weight {} is outside (0, 1/2]",
            q
        )));
    }
    let product = tail_product(tail);
    if product > *d {
        return Err(Error::TailProductTooLarge {
            product: rational::fmt(&product),
            target: rational::fmt(d),
        });
    }
    let m_r = Rational::from_integer(m.into());
    let sum: Rational = tail.iter().sum();
    Ok(PairReduction {
        d_pair: d / product,
        s_pair: (m_r * rational::int(2) - delta) / rational::int(4) - sum,
        tail: tail.to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    SolutionsFound,
    NoneWithinBound,
    NoneExact,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    rational_pair(r).serialize(s)
}

fn ser_solutions<S: Serializer>(
    sols: &[WeightSystem],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<[i64; 2]>> = sols
        .iter()
        .map(|w| w.as_slice().iter().map(rational_pair).collect())
        .collect();
    v.serialize(s)
}

/// `[numerator, denominator]`; values in scope fit comfortably in `i64`.
pub fn rational_pair(r: &Rational) -> [i64; 2] {
    use num_traits::ToPrimitive;
    [
        r.numer().to_i64().expect("numerator fits in i64"),
        r.denom().to_i64().expect("denominator fits in i64"),
    ]
}

/// Outcome of a weight-system search for a candidate `W^T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    #[serde(serialize_with = "ser_rational")]
    pub target_dim: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub target_top: Rational,
    pub vars: usize,
    pub bound: u64,
    pub status: SearchStatus,
    #[serde(serialize_with = "ser_solutions")]
    pub solutions: Vec<WeightSystem>,
}

fn accept(mut q: Vec<Rational>, d: &Rational, delta: &Rational) -> Option<WeightSystem> {
    q.sort();
    let dim: Rational = q.iter().map(|x| x.recip() - Rational::one()).product();
    let top: Rational = q
        .iter()
        .map(|x| Rational::one() - x * rational::int(2))
        .sum::<Rational>()
        * rational::int(2);
    (dim == *d && top == *delta && q.iter().all(in_weight_range))
        .then(|| WeightSystem::new(q).expect("positive"))
}

fn search_tails(
    d: &Rational,
    delta: &Rational,
    m: usize,
    grid: &[Rational],
    first: std::ops::Range<usize>,
) -> Vec<WeightSystem> {
    let mut out = Vec::new();
    let mut tail: Vec<usize> = Vec::with_capacity(m - 2);
    fn walk(
        d: &Rational,
        delta: &Rational,
        m: usize,
        grid: &[Rational],
        tail: &mut Vec<usize>,
        product: &Rational,
        out: &mut Vec<WeightSystem>,
    ) {
        if tail.len() == m - 2 {
            let qs: Vec<Rational> = tail.iter().map(|&i| grid[i].clone()).collect();
            let Ok(red) = reduce_to_pair(d, delta, m, &qs) else {
                return;
            };
            for (q1, q2) in solve_pair(&red.d_pair, &red.s_pair) {
                let mut full = qs.clone();
                full.push(q1);
                full.push(q2);
                if let Some(w) = accept(full, d, delta) {
                    out.push(w);
                }
            }
            return;
        }
        let start = *tail.last().unwrap();
        for i in start..grid.len() {
            let next = product * (grid[i].recip() - Rational::one());
            // factors shrink as q grows, so later grid points may still fit
            if next > *d {
                continue;
            }
            tail.push(i);
            walk(d, delta, m, grid, tail, &next, out);
            tail.pop();
        }
    }
    for i in first {
        let product = grid[i].recip() - Rational::one();
        if product > *d {
            continue;
        }
        tail.push(i);
        walk(d, delta, m, grid, &mut tail, &product, &mut out);
        tail.pop();
    }
    out
}

/// Weight systems `q` in `m` variables with `prod(1/q_i - 1) = d` and
/// `2 sum(1 - 2 q_i) = delta`, each `q_i` in `(0, 1/2]`. Exact for `m <= 2`;
/// for `m >= 3` the tail `q_3..q_m` ranges over fractions with denominator at
/// most `bound`.
pub fn search_weight_systems(
    d: &Rational,
    delta: &Rational,
    m: usize,
    bound: u64,
) -> Result<SearchReport> {
    search_weight_systems_with_threads(d, delta, m, bound, 1)
}

pub fn search_weight_systems_with_threads(
    d: &Rational,
    delta: &Rational,
    m: usize,
    bound: u64,
    threads: usize,
) -> Result<SearchReport> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "at least one variable is required".into(),
        ));
    }
    let mut solutions: Vec<WeightSystem> = match m {
        1 => {
            let q = (d + Rational::one()).recip();
            if d.is_positive() {
                accept(vec![q], d, delta).into_iter().collect()
            } else {
                Vec::new()
            }
        }
        2 => {
            let s = (rational::int(4) - delta) / rational::int(4);
            solve_pair(d, &s)
                .into_iter()
                .filter_map(|(a, b)| accept(vec![a, b], d, delta))
                .collect()
        }
        _ if *d < Rational::one() => Vec::new(),
        _ => {
            let grid = rational::farey_range(bound, &(d + Rational::one()).recip(), &ratio(1, 2));
            let threads = threads.clamp(1, grid.len().max(1));
            let block = grid.len().div_ceil(threads).max(1);
            let grid = &grid;
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..grid.len())
                    .step_by(block)
                    .map(|lo| {
                        let hi = (lo + block).min(grid.len());
                        scope.spawn(move || search_tails(d, delta, m, grid, lo..hi))
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("search worker panicked"))
                    .collect()
            })
        }
    };
    solutions.sort();
    solutions.dedup();
    let status = if !solutions.is_empty() {
        SearchStatus::SolutionsFound
    } else if m <= 2 {
        SearchStatus::NoneExact
    } else {
        SearchStatus::NoneWithinBound
    };
    Ok(SearchReport {
        target_dim: d.clone(),
        target_top: delta.clone(),
        vars: m,
        bound,
        status,
        solutions,
    })
}

/// Tail values `q_3` on the grid of denominators up to `bound` in `(0, 1/2]`
/// for which the three-variable discriminant is nonnegative. Returns the
/// largest such value when they form an initial segment of the grid.
pub fn three_var_discriminant_boundary(
    d: &Rational,
    delta: &Rational,
    bound: u64,
) -> Option<Rational> {
    let grid = rational::farey_range(bound, &ratio(1, bound as i64 + 1), &ratio(1, 2));
    let signs: Vec<(Rational, bool)> = grid
        .into_iter()
        .map(|q3| {
            // the tail-product bound is deliberately not applied here
            let red = PairReduction {
                d_pair: d / tail_product(std::slice::from_ref(&q3)),
                s_pair: (rational::int(6) - delta) / rational::int(4) - &q3,
                tail: vec![q3.clone()],
            };
            (q3, !red.discriminant().is_negative())
        })
        .collect();
    let last = signs.iter().rposition(|(_, ok)| *ok)?;
    signs[..=last]
        .iter()
        .all(|(_, ok)| *ok)
        .then(|| signs[last].0.clone())
}

/// Nondegeneracy of enumerated supports is tested with all coefficients equal to 1.
pub const SUPPORT_CAVEAT: &str = "nondegeneracy tested with all coefficients equal to 1";

fn default_variables(n: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if n <= NAMES.len() {
        NAMES[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Exponent vectors `a` with `sum a_i q_i = 1`, ascending.
pub fn weight_monomials(q: &WeightSystem) -> Vec<Monomial> {
    let n = q.len();
    let mut out = Vec::new();
    let mut a = vec![0u32; n];
    fn walk(q: &[Rational], i: usize, left: &Rational, a: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == q.len() {
            if left.is_zero() {
                out.push(Monomial::new(a.clone()));
            }
            return;
        }
        let mut k = 0u32;
        let mut rest = left.clone();
        while !rest.is_negative() {
            a[i] = k;
            walk(q, i + 1, &rest, a, out);
            k += 1;
            rest -= &q[i];
        }
        a[i] = 0;
    }
    walk(q.as_slice(), 0, &Rational::one(), &mut a, &mut out);
    out.sort();
    out
}

/// Every support of at least `n` monomials of weight 1 whose weights are
/// unique and equal to `q` and whose all-ones polynomial is nondegenerate.
/// See [`SUPPORT_CAVEAT`].
pub fn enumerate_admissible_supports(q: &WeightSystem) -> Result<Vec<Polynomial>> {
    let n = q.len();
    let pool = weight_monomials(q);
    if pool.len() > 20 {
        return Err(Error::InvalidInput(format!(
            "{} monomials of weight 1; too many supports to enumerate",
            pool.len()
        )));
    }
    let vars = default_variables(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pool.len()) {
        if (mask.count_ones() as usize) < n {
            continue;
        }
        let terms: Vec<(Rational, Monomial)> = (0..pool.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (Rational::one(), pool[i].clone()))
            .collect();
        let w = Polynomial::new(vars.clone(), terms)?;
        match polycore::weights(&w) {
            Ok(found) if found == *q => {}
            _ => continue,
        }
        if milnor::is_nondegenerate(&w)? && seen.insert(w.to_string()) {
            out.push(w);
        }
    }
    Ok(out)
}
