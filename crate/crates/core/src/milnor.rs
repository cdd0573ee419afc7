//! Milnor rings and the unorbifolded B-model as graded vector spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Inadmissible, Result};
use crate::groebner::{self, MonomialOrder};
use crate::polycore::{self, Monomial, Polynomial, WeightSystem};
use crate::rational::{self, Rational};

/// Poincaré data: rational degree -> dimension of the graded piece.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedDims(BTreeMap<Rational, usize>);

impl GradedDims {
    pub fn from_degrees<'a>(degrees: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut map = BTreeMap::new();
        for d in degrees {
            *map.entry(d.clone()).or_insert(0) += 1;
        }
        GradedDims(map)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn top_degree(&self) -> Option<&Rational> {
        self.0.keys().next_back()
    }

    pub fn get(&self, degree: &Rational) -> usize {
        self.0.get(degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, usize)> {
        self.0.iter().map(|(d, n)| (d, *n))
    }

    /// dim at `d` equals dim at `top - d` for every degree.
    pub fn is_symmetric(&self) -> bool {
        let Some(top) = self.top_degree() else {
            return true;
        };
        self.0.iter().all(|(d, n)| self.get(&(top - d)) == *n)
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(d, n)| format!("{}:{}", rational::fmt(d), n))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `Q_W` as a graded vector space, equal to `B_{W,{0}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModel {
    pub source: Polynomial,
    pub weights: WeightSystem,
    pub basis: Vec<Monomial>,
    pub graded: GradedDims,
}

pub fn jacobian_ideal(w: &Polynomial) -> Vec<Polynomial> {
    (0..w.nvars()).map(|i| w.derivative(i)).collect()
}

fn jacobian_order(w: &Polynomial) -> MonomialOrder {
    polycore::weights(w)
        .ok()
        .and_then(|q| MonomialOrder::weighted(&q).ok())
        .unwrap_or_else(MonomialOrder::degrevlex)
}

/// Finite-dimensional Milnor ring, tested through a Gröbner basis of the
/// Jacobian ideal. A polynomial in zero variables counts as nondegenerate.
pub fn is_nondegenerate(w: &Polynomial) -> Result<bool> {
    if w.nvars() == 0 {
        return Ok(true);
    }
    let g = groebner::buchberger(&jacobian_ideal(w), &jacobian_order(w))?;
    Ok(groebner::is_zero_dimensional(&g))
}

/// Standard-monomial basis of `Q_W` under the weighted order for `q`. The
/// zero-variable ring is spanned by the empty monomial.
pub fn milnor_basis(w: &Polynomial, q: &WeightSystem) -> Result<Vec<Monomial>> {
    if w.nvars() == 0 {
        return Ok(vec![Monomial::one(0)]);
    }
    let g = groebner::buchberger(&jacobian_ideal(w), &MonomialOrder::weighted(q)?)?;
    groebner::standard_monomials(&g)
}

/// `prod(1/q_i - 1)`.
pub fn bdim_formula(q: &WeightSystem) -> Rational {
    q.as_slice()
        .iter()
        .map(|x| x.recip() - Rational::one())
        .product()
}

/// `2 * sum(1 - 2 q_i)`.
pub fn btop_formula(q: &WeightSystem) -> Rational {
    let s: Rational = q
        .as_slice()
        .iter()
        .map(|x| Rational::one() - x * rational::int(2))
        .sum();
    s * rational::int(2)
}

pub fn bmodel(w: &Polynomial) -> Result<BModel> {
    let q = polycore::weights(w)?;
    let basis = match milnor_basis(w, &q) {
        Err(Error::NotFiniteDimensional) => {
            return Err(Error::NotAdmissible(Inadmissible::Degenerate))
        }
        other => other?,
    };
    let degrees: Vec<Rational> = basis
        .iter()
        .map(|m| polycore::monomial_bdegree(m, &q))
        .collect();
    let graded = GradedDims::from_degrees(&degrees);

    let expected_dim = bdim_formula(&q);
    if Rational::from_integer(basis.len().into()) != expected_dim {
        return Err(Error::FormulaMismatch(format!(
            "Milnor ring of {} has dimension {} but prod(1/q_i - 1) = {}",
            w,
            basis.len(),
            expected_dim
        )));
    }
    let expected_top = btop_formula(&q);
    if graded.top_degree() != Some(&expected_top) {
        return Err(Error::FormulaMismatch(format!(
            "Milnor ring of {} has top degree {:?} but 2*sum(1 - 2q_i) = {}",
            w,
            graded.top_degree().map(rational::fmt),
            expected_top
        )));
    }
    Ok(BModel {
        source: w.clone(),
        weights: q,
        basis,
        graded,
    })
}
