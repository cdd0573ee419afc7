//! A-model state spaces `A_{W,G}`: sectors, invariants and degrees.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::milnor::{self, GradedDims};
use crate::polycore::{self, ExponentMatrix, Monomial, Polynomial, WeightSystem};
use crate::rational::{self, Rational};
use crate::symmetry::{self, GroupElement, SymmetryGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// No term of `W` survives; the Milnor ring is the ground field.
    Trivial,
    Polynomial(Polynomial),
}

/// Terms of `w` supported on the variables in `fix`, rewritten in those variables.
pub fn restrict(w: &Polynomial, fix: &[usize]) -> Restriction {
    let vars: Vec<String> = fix.iter().map(|&i| w.variables()[i].clone()).collect();
    let terms: Vec<(Rational, Monomial)> = w
        .terms()
        .iter()
        .filter(|(_, m)| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || fix.contains(&i))
        })
        .map(|(c, m)| {
            let e = fix.iter().map(|&i| m.exponents()[i]).collect();
            (c.clone(), Monomial::new(e))
        })
        .collect();
    if terms.is_empty() {
        return Restriction::Trivial;
    }
    Restriction::Polynomial(
        Polynomial::new(vars, terms).expect("restricted monomials match the restricted variables"),
    )
}

/// Basis vector `[m; g]` of a sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorElement {
    /// Exponents indexed by `fix`.
    pub monomial: Monomial,
    pub fix: Vec<usize>,
    pub sector: GroupElement,
    pub adegree: Rational,
}

impl SectorElement {
    pub fn label(&self, variables: &[String]) -> String {
        let names: Vec<String> = self.fix.iter().map(|&i| variables[i].clone()).collect();
        format!(
            "[{}; {}]",
            polycore::format_monomial(&names, &self.monomial),
            self.sector
        )
    }
}

#[derive(Clone, Debug)]
pub struct AModel {
    pub source: Polynomial,
    pub weights: WeightSystem,
    pub group: SymmetryGroup,
    pub basis: Vec<SectorElement>,
    pub graded: GradedDims,
    /// Sectors where the full-ambient determinant would select different monomials.
    pub convention_disagreements: Vec<GroupElement>,
}

impl AModel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> Option<&Rational> {
        self.graded.top_degree()
    }
}

/// `|fix(g)| + 2 * sum(g_i - q_i)`.
pub fn adegree(g: &GroupElement, q: &WeightSystem) -> Rational {
    assert_eq!(g.len(), q.len(), "sector and weights disagree on arity");
    let fix = symmetry::fixed_locus(g);
    let s: Rational = g
        .phases()
        .iter()
        .zip(q.as_slice())
        .map(|(gi, qi)| gi - qi)
        .sum();
    Rational::from_integer(fix.len().into()) + s * rational::int(2)
}

fn weighted_sum(h: &GroupElement, fix: &[usize], offsets: &[u32]) -> Rational {
    fix.iter()
        .zip(offsets)
        .map(|(&i, &a)| &h.phases()[i] * Rational::from_integer(a.into()))
        .sum()
}

/// `x^a` is fixed by `h` when `sum_{i in fix} h_i (a_i + 1)` is an integer.
fn invariant_under(h: &GroupElement, fix: &[usize], m: &Monomial) -> bool {
    let shifted: Vec<u32> = m.exponents().iter().map(|a| a + 1).collect();
    rational::is_integer(&weighted_sum(h, fix, &shifted))
}

/// The same test with the determinant taken over all `n` coordinates.
fn ambient_invariant_under(h: &GroupElement, fix: &[usize], m: &Monomial) -> bool {
    let det: Rational = h.phase_sum();
    rational::is_integer(&(det + weighted_sum(h, fix, m.exponents())))
}

struct FixData {
    restricted: Vec<Monomial>,
    ambient: Vec<Monomial>,
}

fn sector_data(
    w: &Polynomial,
    q: &WeightSystem,
    group: &SymmetryGroup,
    fix: &[usize],
) -> Result<FixData> {
    let basis = match restrict(w, fix) {
        Restriction::Trivial if fix.is_empty() => vec![Monomial::one(0)],
        Restriction::Trivial => return Err(Error::DegenerateRestriction(fix.to_vec())),
        Restriction::Polynomial(wr) => match milnor::milnor_basis(&wr, &q.restrict(fix)) {
            Err(Error::NotFiniteDimensional) => {
                return Err(Error::DegenerateRestriction(fix.to_vec()))
            }
            other => other?,
        },
    };
    // the character is additive in h, so generators suffice
    let gens = group.generators();
    let restricted = if fix.is_empty() {
        basis.clone()
    } else {
        basis
            .iter()
            .filter(|m| gens.iter().all(|h| invariant_under(h, fix, m)))
            .cloned()
            .collect()
    };
    let ambient = basis
        .iter()
        .filter(|m| gens.iter().all(|h| ambient_invariant_under(h, fix, m)))
        .cloned()
        .collect();
    Ok(FixData {
        restricted,
        ambient,
    })
}

/// Milnor-basis monomials of `W|fix(g)` fixed by every element of `G`.
pub fn invariant_monomials(
    g: &GroupElement,
    w: &Polynomial,
    group: &SymmetryGroup,
) -> Result<Vec<Monomial>> {
    let q = polycore::weights(w)?;
    Ok(sector_data(w, &q, group, &symmetry::fixed_locus(g))?.restricted)
}

fn check_group(w: &Polynomial, q: &WeightSystem, group: &SymmetryGroup) -> Result<ExponentMatrix> {
    if group.ambient() != w.nvars() {
        return Err(Error::VariableMismatch {
            expected: w.nvars(),
            found: group.ambient(),
        });
    }
    let a = polycore::exponent_matrix(w);
    if let Some(h) = group.generators().iter().find(|h| !h.preserves(&a)) {
        return Err(Error::GroupNotSymmetry(h.to_string()));
    }
    if !symmetry::is_admissible_group(group, q) {
        return Err(Error::GroupNotAdmissible);
    }
    Ok(a)
}

pub fn amodel(w: &Polynomial, group: &SymmetryGroup) -> Result<AModel> {
    amodel_with_threads(w, group, 1)
}

/// As [`amodel`], computing the distinct fixed loci on up to `threads` workers.
pub fn amodel_with_threads(
    w: &Polynomial,
    group: &SymmetryGroup,
    threads: usize,
) -> Result<AModel> {
    let q = polycore::admissible_weights(w)?;
    check_group(w, &q, group)?;

    let loci: Vec<Vec<usize>> = {
        let mut set: Vec<Vec<usize>> = group.elements().iter().map(symmetry::fixed_locus).collect();
        set.sort();
        set.dedup();
        set
    };
    let threads = threads.clamp(1, loci.len().max(1));
    let chunk = loci.len().div_ceil(threads).max(1);
    let results: Vec<Result<FixData>> = std::thread::scope(|scope| {
        let handles: Vec<_> = loci
            .chunks(chunk)
            .map(|block| {
                let q = &q;
                scope.spawn(move || {
                    block
                        .iter()
                        .map(|fix| sector_data(w, q, group, fix))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sector worker panicked"))
            .collect()
    });
    let mut by_fix: BTreeMap<Vec<usize>, FixData> = BTreeMap::new();
    for (fix, data) in loci.into_iter().zip(results) {
        by_fix.insert(fix, data?);
    }

    let mut basis = Vec::new();
    let mut disagreements = Vec::new();
    for g in group.elements() {
        let fix = symmetry::fixed_locus(g);
        let data = &by_fix[&fix];
        if data.restricted != data.ambient {
            disagreements.push(g.clone());
        }
        let deg = adegree(g, &q);
        for m in &data.restricted {
            basis.push(SectorElement {
                monomial: m.clone(),
                fix: fix.clone(),
                sector: g.clone(),
                adegree: deg.clone(),
            });
        }
    }
    // elements and monomials are already in order, so a stable sort on degree suffices
    basis.sort_by(|a, b| {
        a.adegree
            .cmp(&b.adegree)
            .then_with(|| a.sector.cmp(&b.sector))
    });
    let graded = GradedDims::from_degrees(basis.iter().map(|e| &e.adegree));
    Ok(AModel {
        source: w.clone(),
        weights: q,
        group: group.clone(),
        basis,
        graded,
        convention_disagreements: disagreements,
    })
}

/// Compares the Poincaré data of `A_{W1,G}` and `A_{W2,G}` for two polynomials
/// with the same weights.
pub fn group_weights_compare(
    w1: &Polynomial,
    w2: &Polynomial,
    group: &SymmetryGroup,
) -> Result<bool> {
    let q1 = polycore::weights(w1)?;
    let q2 = polycore::weights(w2)?;
    if q1 != q2 {
        return Err(Error::InvalidInput(format!(
            "weights differ: {} vs {}",
            q1, q2
        )));
    }
    Ok(amodel(w1, group)?.graded == amodel(w2, group)?.graded)
}

impl fmt::Display for AModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A({}, |G|={}) = {}",
            self.source,
            self.group.order(),
            self.graded
        )
    }
}

/// Basis size of every sector, including empty ones.
pub fn sector_dimensions(a: &AModel) -> BTreeMap<GroupElement, usize> {
    let mut out: BTreeMap<GroupElement, usize> =
        a.group.elements().iter().map(|g| (g.clone(), 0)).collect();
    for e in &a.basis {
        *out.get_mut(&e.sector).expect("sector belongs to the group") += 1;
    }
    out
}
