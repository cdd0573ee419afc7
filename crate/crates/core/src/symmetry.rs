//! Diagonal symmetry groups as finite subgroups of `(Q/Z)^n`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mirror;
use crate::polycore::{self, ExponentMatrix, Polynomial, WeightSystem};
use crate::rational::{self, Rational};
use crate::snf;

/// Phase vector with every coordinate reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<Rational>);

impl GroupElement {
    pub fn new(phases: Vec<Rational>) -> Self {
        GroupElement(phases.iter().map(rational::frac).collect())
    }

    pub fn identity(n: usize) -> Self {
        GroupElement(vec![Rational::zero(); n])
    }

    pub fn from_weights(q: &WeightSystem) -> Self {
        GroupElement::new(q.as_slice().to_vec())
    }

    pub fn phases(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        GroupElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| rational::frac(&(a + b)))
                .collect(),
        )
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| rational::frac(&-a)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let k = Rational::from_integer(k.clone());
        GroupElement(self.0.iter().map(|a| rational::frac(&(a * &k))).collect())
    }

    /// Order of the element in `(Q/Z)^n`: lcm of the phase denominators.
    pub fn order(&self) -> BigInt {
        rational::lcm_of_denominators(&self.0)
    }

    pub fn phase_sum(&self) -> Rational {
        self.0.iter().sum()
    }

    /// True iff `A g` is integral, i.e. `g` is a symmetry of every monomial.
    pub fn preserves(&self, a: &ExponentMatrix) -> bool {
        a.rows().iter().all(|row| {
            let s: Rational = row
                .iter()
                .zip(&self.0)
                .map(|(&e, g)| Rational::from_integer(e.into()) * g)
                .sum();
            rational::is_integer(&s)
        })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::fmt).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A finite group stored with a generating set and its sorted element list.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    ambient: usize,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl PartialEq for SymmetryGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements == other.elements
    }
}

impl Eq for SymmetryGroup {}

impl SymmetryGroup {
    pub fn trivial(ambient: usize) -> Self {
        SymmetryGroup {
            ambient,
            generators: Vec::new(),
            elements: vec![GroupElement::identity(ambient)],
        }
    }

    /// Closure of `gens` under addition mod 1.
    pub fn generated_by(ambient: usize, gens: &[GroupElement]) -> Result<Self> {
        let mut elements: BTreeSet<GroupElement> = BTreeSet::new();
        elements.insert(GroupElement::identity(ambient));
        let mut kept = Vec::new();
        for g in gens {
            if g.len() != ambient {
                return Err(Error::VariableMismatch {
                    expected: ambient,
                    found: g.len(),
                });
            }
            if elements.contains(g) {
                continue;
            }
            kept.push(g.clone());
            // <S, g> is the union of the cosets S + k g until k g lands in S
            let base: Vec<GroupElement> = elements.iter().cloned().collect();
            let mut step = g.clone();
            while !elements.contains(&step) {
                for s in &base {
                    elements.insert(s.add(&step));
                }
                step = step.add(g);
            }
        }
        Ok(SymmetryGroup {
            ambient,
            generators: kept,
            elements: elements.into_iter().collect(),
        })
    }

    /// Builds a group from a complete element list, choosing generators greedily.
    pub fn from_elements(
        ambient: usize,
        elements: impl IntoIterator<Item = GroupElement>,
    ) -> Result<Self> {
        let all: BTreeSet<GroupElement> = elements.into_iter().collect();
        let mut group = SymmetryGroup::trivial(ambient);
        for e in &all {
            if !group.contains(e) {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                group = SymmetryGroup::generated_by(ambient, &gens)?;
            }
        }
        if group.elements.len() != all.len() {
            return Err(Error::InvalidInput(
                "element list is not closed under addition".into(),
            ));
        }
        Ok(group)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &SymmetryGroup) -> bool {
        self.ambient == other.ambient && self.elements.iter().all(|g| other.contains(g))
    }

    /// Invariant factors `d_1 | d_2 | ...` (all > 1) of the group.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        quotient_invariant_factors(self, &SymmetryGroup::trivial(self.ambient))
            .expect("trivial group is a subgroup")
    }
}

/// Invariant factors of `big / small`, read off from how many cosets are
/// killed by each prime power.
pub fn quotient_invariant_factors(
    big: &SymmetryGroup,
    small: &SymmetryGroup,
) -> Result<Vec<BigInt>> {
    if !small.is_subgroup_of(big) {
        return Err(Error::InvalidInput("quotient by a non-subgroup".into()));
    }
    let index = big.order() / small.order();
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, e) in factorize(index as u64) {
        let pk = |k: u32| BigInt::from(p).pow(k);
        // c[k] = #{cosets x : p^k x = 0}, as a power of p
        let mut logs = vec![0u32];
        let mut k = 1;
        while *logs.last().unwrap() < e {
            let count = big
                .elements
                .iter()
                .filter(|x| small.contains(&x.scale(&pk(k))))
                .count()
                / small.order();
            logs.push(ilog(count as u64, p));
            k += 1;
        }
        // r[k] = number of cyclic p-factors of exponent >= k
        let r: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
        let mut exps = Vec::new();
        for (k, window) in r.iter().enumerate() {
            let next = r.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(window - next) {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let count = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<BigInt> = (0..count)
        .map(|j| {
            per_prime
                .iter()
                .map(|(p, e)| BigInt::from(*p).pow(e.get(j).copied().unwrap_or(0)))
                .product()
        })
        .collect();
    factors.reverse();
    Ok(factors)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

fn big_matrix(a: &ExponentMatrix) -> snf::IntMatrix {
    a.rows()
        .iter()
        .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
        .collect()
}

/// `G^max = { g : A g in Z^m }` through the Smith normal form `U A V = D`:
/// with `h = V^-1 g` the condition reads `d_i h_i in Z`, so the columns of
/// `V` divided by `d_i` generate the group.
pub fn gmax_of_matrix(a: &ExponentMatrix) -> Result<SymmetryGroup> {
    let n = a.ncols();
    let smith = snf::smith_normal_form(&big_matrix(a));
    let rank = smith.rank();
    if rank < n {
        return Err(Error::InfiniteGroup { rank, vars: n });
    }
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in smith.diagonal.iter().enumerate() {
        let g = GroupElement::new(
            (0..n)
                .map(|r| Rational::new(smith.v[r][i].clone(), d.clone()))
                .collect(),
        );
        if !g.is_identity() {
            gens.push(g);
            orders.push(d.clone());
        }
    }
    // enumerate sum k_i gens_i, 0 <= k_i < d_i
    let mut elements = vec![GroupElement::identity(n)];
    for (g, d) in gens.iter().zip(&orders) {
        let d = d
            .to_usize()
            .ok_or_else(|| Error::InvalidInput("group too large".into()))?;
        let mut next = Vec::with_capacity(elements.len() * d);
        let mut multiple = GroupElement::identity(n);
        for _ in 0..d {
            next.extend(elements.iter().map(|e| e.add(&multiple)));
            multiple = multiple.add(g);
        }
        elements = next;
    }
    elements.sort();
    elements.dedup();
    Ok(SymmetryGroup {
        ambient: n,
        generators: gens,
        elements,
    })
}

pub fn gmax(w: &Polynomial) -> Result<SymmetryGroup> {
    gmax_of_matrix(&polycore::exponent_matrix(w))
}

/// Every `k / bound` phase vector satisfying `A g in Z^m`. Complete only when
/// `bound` is a multiple of the group exponent.
pub fn gmax_bruteforce(w: &Polynomial, bound: u32) -> Result<SymmetryGroup> {
    let a = polycore::exponent_matrix(w);
    let n = w.nvars();
    let bound = bound.max(1);
    let mut found = Vec::new();
    let mut k = vec![0u32; n];
    'outer: loop {
        let g = GroupElement::new(
            k.iter()
                .map(|&x| rational::ratio(x as i64, bound as i64))
                .collect(),
        );
        if g.preserves(&a) {
            found.push(g);
        }
        for slot in k.iter_mut() {
            *slot += 1;
            if *slot < bound {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    SymmetryGroup::from_elements(n, found)
}

pub fn subgroup_generated(ambient: usize, gens: &[GroupElement]) -> Result<SymmetryGroup> {
    SymmetryGroup::generated_by(ambient, gens)
}

/// True iff `J` (the weights read as phases) lies in `G`.
pub fn is_admissible_group(g: &SymmetryGroup, q: &WeightSystem) -> bool {
    g.contains(&GroupElement::from_weights(q))
}

/// Elements whose phases sum to an integer (determinant one).
pub fn sl_subgroup(g: &SymmetryGroup) -> SymmetryGroup {
    let kept = g
        .elements
        .iter()
        .filter(|e| rational::is_integer(&e.phase_sum()))
        .cloned();
    SymmetryGroup::from_elements(g.ambient, kept).expect("kernel of a homomorphism is a subgroup")
}

/// `sum_ij g_i A_ij h_j`.
fn pairing(g: &GroupElement, a: &ExponentMatrix, h: &GroupElement) -> Rational {
    let mut s = Rational::zero();
    for (i, gi) in g.phases().iter().enumerate() {
        for (j, hj) in h.phases().iter().enumerate() {
            let e = a.get(i, j);
            if e != 0 {
                s += gi * hj * Rational::from_integer(e.into());
            }
        }
    }
    s
}

/// `G^T = { g in G^max(W^T) : g A h^T in Z for all h in G }`, with `A` the
/// paired exponent matrix of `W` so that variable `i` of `W^T` is the
/// monomial of `W` paired with variable `i`.
pub fn transpose_group(g: &SymmetryGroup, w: &Polynomial) -> Result<SymmetryGroup> {
    let a = polycore::paired_exponent_matrix(w)?;
    if g.ambient != w.nvars() {
        return Err(Error::VariableMismatch {
            expected: w.nvars(),
            found: g.ambient,
        });
    }
    let wt = mirror::transpose_polynomial(w)?;
    let dual_max = gmax(&wt)?;
    let kept = dual_max.elements.iter().filter(|x| {
        g.generators
            .iter()
            .all(|h| rational::is_integer(&pairing(x, &a, h)))
    });
    SymmetryGroup::from_elements(g.ambient, kept.cloned())
}

/// Indices `i` with `g_i = 0`.
pub fn fixed_locus(g: &GroupElement) -> Vec<usize> {
    g.phases()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// `G^max` of `x^p + y^q + x^r y^s` in closed form: `<(1/p, 1/q), (1/gcd(p, r), 0)>`.
pub fn bendall_gmax(p: u32, q: u32, r: u32, s: u32) -> Result<SymmetryGroup> {
    if p == 0 || q == 0 {
        return Err(Error::WeightConditionViolated);
    }
    let lhs = rational::ratio(r as i64, p as i64) + rational::ratio(s as i64, q as i64);
    if !lhs.is_one() {
        return Err(Error::WeightConditionViolated);
    }
    let n = p.gcd(&r);
    SymmetryGroup::generated_by(
        2,
        &[
            GroupElement::new(vec![
                rational::ratio(1, p as i64),
                rational::ratio(1, q as i64),
            ]),
            GroupElement::new(vec![rational::ratio(1, n as i64), Rational::zero()]),
        ],
    )
}

/// The second generating set `<(1/p, 1/q), (0, 1/gcd(q, s))>`.
pub fn bendall_gmax_alternative(p: u32, q: u32, r: u32, s: u32) -> Result<SymmetryGroup> {
    bendall_gmax(p, q, r, s)?;
    let m = q.gcd(&s);
    SymmetryGroup::generated_by(
        2,
        &[
            GroupElement::new(vec![
                rational::ratio(1, p as i64),
                rational::ratio(1, q as i64),
            ]),
            GroupElement::new(vec![Rational::zero(), rational::ratio(1, m as i64)]),
        ],
    )
}
