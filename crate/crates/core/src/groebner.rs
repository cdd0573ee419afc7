//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are kept internally as term vectors sorted ascending in the
//! active monomial order, so the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polycore::{revlex_cmp, Monomial, Polynomial, WeightSystem};
use crate::rational::{self, Rational};

pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_PAIR_BUDGET`].
pub const PAIR_BUDGET_ENV: &str = "LGMK_PAIR_BUDGET";

pub fn default_pair_budget() -> usize {
    std::env::var(PAIR_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_PAIR_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    WeightedDegRevLex(WeightSystem),
}

/// Degree (plain or weighted) first, ties broken reverse lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    // weights scaled to a common denominator
    scaled: Option<Vec<u64>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            scaled: None,
        }
    }

    pub fn weighted(q: &WeightSystem) -> Result<Self> {
        let l = rational::lcm_of_denominators(q.as_slice());
        let scaled = q
            .as_slice()
            .iter()
            .map(|x| {
                (x * Rational::from_integer(l.clone()))
                    .to_integer()
                    .to_u64()
            })
            .collect::<Option<Vec<u64>>>()
            .ok_or_else(|| Error::InvalidInput(format!("weights {} too fine for the order", q)))?;
        Ok(MonomialOrder {
            kind: OrderKind::WeightedDegRevLex(q.clone()),
            scaled: Some(scaled),
        })
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    fn degree(&self, m: &Monomial) -> u128 {
        match &self.scaled {
            None => m.total_degree() as u128,
            Some(w) => m
                .exponents()
                .iter()
                .zip(w)
                .map(|(&e, &wi)| e as u128 * wi as u128)
                .sum(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| revlex_cmp(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    // ascending; leading term last
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> Poly {
        let mut terms: Vec<_> = p
            .terms()
            .iter()
            .map(|(c, m)| (m.clone(), c.clone()))
            .collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Poly { terms }
    }

    fn to_polynomial(&self, variables: &[String]) -> Polynomial {
        Polynomial::new(
            variables.to_vec(),
            self.terms.iter().map(|(m, c)| (c.clone(), m.clone())),
        )
        .expect("arity preserved")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.last() {
            let inv = lc.recip();
            for (_, c) in self.terms.iter_mut() {
                *c *= &inv;
            }
        }
    }

    /// `self - coef * mono * other`.
    fn sub_scaled(
        &self,
        coef: &Rational,
        mono: &Monomial,
        other: &Poly,
        order: &MonomialOrder,
    ) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, c)| (m.mul(mono), c * coef))
            .peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().cloned(),
                (None, Some(_)) => b.next().map(|(m, c)| (m, -c)),
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => a.next().cloned(),
                    Ordering::Greater => b.next().map(|(m, c)| (m, -c)),
                    Ordering::Equal => {
                        let (m, c) = a.next().cloned().expect("peeked");
                        let (_, d) = b.next().expect("peeked");
                        let s = c - d;
                        if s.is_zero() {
                            continue;
                        }
                        Some((m, s))
                    }
                },
            };
            out.extend(next);
        }
        Poly { terms: out }
    }

    /// Full reduction: no term of the result is divisible by a leading monomial of `basis`.
    fn reduce(mut self, basis: &[Poly], order: &MonomialOrder) -> Poly {
        let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((lm, lc)) = self.leading().cloned() {
            match basis.iter().find(|g| g.lm().divides(&lm)) {
                Some(g) => {
                    let (glm, glc) = g.leading().expect("nonzero");
                    let coef = &lc / glc;
                    self = self.sub_scaled(&coef, &lm.div(glm), g, order);
                }
                None => {
                    remainder.push(self.terms.pop().expect("nonempty"));
                }
            }
        }
        remainder.reverse();
        Poly { terms: remainder }
    }
}

fn s_polynomial(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let scaled_f = Poly { terms: Vec::new() }.sub_scaled(&-fc.recip(), &l.div(fm), f, order);
    scaled_f.sub_scaled(&gc.recip(), &l.div(gm), g, order)
}

/// A reduced Gröbner basis: monic, auto-reduced, sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    variables: Vec<String>,
    order: MonomialOrder,
    polys: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.polys
            .iter()
            .map(|p| p.to_polynomial(&self.variables))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(gens, order, default_pair_budget())
}

pub fn buchberger_with_budget(
    gens: &[Polynomial],
    order: &MonomialOrder,
    pair_budget: usize,
) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidInput("empty generator list".into()));
    };
    let variables = first.variables().to_vec();
    for g in gens {
        if g.nvars() != variables.len() {
            return Err(Error::VariableMismatch {
                expected: variables.len(),
                found: g.nvars(),
            });
        }
    }

    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for g in gens {
        let mut p = Poly::from_polynomial(g, order).reduce(&basis, order);
        if !p.is_zero() {
            p.make_monic();
            let k = basis.len();
            pairs.extend((0..k).map(|i| (i, k)));
            basis.push(p);
        }
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let &(i, j) = pairs
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                order
                    .cmp(
                        &basis[a].lm().lcm(basis[b].lm()),
                        &basis[c].lm().lcm(basis[d].lm()),
                    )
                    .then((a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        processed += 1;
        if processed > pair_budget {
            return Err(Error::ResourceLimit(pair_budget));
        }

        let (lmi, lmj) = (basis[i].lm(), basis[j].lm());
        if lmi.is_coprime(lmj) {
            continue;
        }
        let l = lmi.lcm(lmj);
        let pending = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && basis[k].lm().divides(&l) && !pending(i, k) && !pending(j, k)
        });
        if chain {
            continue;
        }

        let mut r = s_polynomial(&basis[i], &basis[j], order).reduce(&basis, order);
        if !r.is_zero() {
            r.make_monic();
            let k = basis.len();
            pairs.extend((0..k).map(|a| (a, k)));
            basis.push(r);
        }
    }

    Ok(GroebnerBasis {
        variables,
        order: order.clone(),
        polys: auto_reduce(basis, order),
    })
}

fn auto_reduce(mut basis: Vec<Poly>, order: &MonomialOrder) -> Vec<Poly> {
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|g| g.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        let (lm, lc) = minimal[k].leading().cloned().expect("nonzero");
        let tail = Poly {
            terms: minimal[k].terms[..minimal[k].terms.len() - 1].to_vec(),
        };
        let mut tail = tail.reduce(&others, order);
        tail.terms.push((lm, lc));
        tail.make_monic();
        reduced.push(tail);
    }
    reduced
}

/// Remainder of `p` on division by `g`; canonical representative in the quotient.
pub fn normal_form(p: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    if p.nvars() != g.variables.len() {
        return Err(Error::VariableMismatch {
            expected: g.variables.len(),
            found: p.nvars(),
        });
    }
    Ok(Poly::from_polynomial(p, &g.order)
        .reduce(&g.polys, &g.order)
        .to_polynomial(&g.variables))
}

/// True iff every variable has a pure power among the leading monomials
/// (or the ideal is the whole ring).
pub fn is_zero_dimensional(g: &GroebnerBasis) -> bool {
    let n = g.variables.len();
    let lms = g.leading_monomials();
    if lms.iter().any(Monomial::is_one) {
        return true;
    }
    let mut covered = vec![false; n];
    for m in &lms {
        if let Some(i) = m.pure_power_index() {
            covered[i] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Monomials outside the leading-term ideal, ascending in the basis order.
pub fn standard_monomials(g: &GroebnerBasis) -> Result<Vec<Monomial>> {
    if !is_zero_dimensional(g) {
        return Err(Error::NotFiniteDimensional);
    }
    let n = g.variables.len();
    let lms = g.leading_monomials();
    if lms.iter().any(Monomial::is_one) {
        return Ok(Vec::new());
    }
    let mut bound = vec![u32::MAX; n];
    for m in &lms {
        if let Some(i) = m.pure_power_index() {
            bound[i] = bound[i].min(m.exponents()[i]);
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    loop {
        let m = Monomial::new(current.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box [0, bound_i)
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| g.order.cmp(a, b));
                return Ok(out);
            }
            current[k] += 1;
            if current[k] < bound[k] {
                break;
            }
            current[k] = 0;
            k += 1;
        }
    }
}

/// Number of standard monomials, i.e. the dimension of the quotient ring.
pub fn quotient_dimension(g: &GroebnerBasis) -> Result<usize> {
    standard_monomials(g).map(|v| v.len())
}
