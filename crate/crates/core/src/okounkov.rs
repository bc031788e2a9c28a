//! Okounkov bodies of finitely generated graded semigroups and the
//! lowest-term valuation on polynomial section representatives.

use std::collections::BTreeSet;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::polytope::RationalPolytope;
use crate::scalar::Scalar;

/// Generators of a semigroup in `N^{n+1}`; the last coordinate is the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    ambient: usize,
    generators: Vec<Vec<i64>>,
}

impl FiniteSemigroup {
    pub fn new(ambient: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if ambient < 2 {
            return Err(Error::ZeroDimension);
        }
        for g in &generators {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: g.len(),
                });
            }
            if g.iter().any(|&v| v < 0) {
                return Err(Error::NegativeGenerator(g.clone()));
            }
        }
        Ok(Self { ambient, generators })
    }

    /// Degree-one generators `(alpha, 1)` for the lattice points of `P`.
    ///
    /// This generates the full toric semigroup exactly when `P` is normal,
    /// which holds for every integral polygon and segment.
    pub fn toric<T: Scalar>(p: &RationalPolytope<T>) -> Result<Self> {
        let generators = p
            .lattice_points()
            .into_iter()
            .map(|mut a| {
                a.push(1);
                a
            })
            .collect();
        Self::new(p.dim() + 1, generators)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `n`, the dimension of the body.
    pub fn dim(&self) -> usize {
        self.ambient - 1
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn cone<T: Scalar>(&self) -> RationalCone<T> {
        RationalCone {
            generators: self
                .generators
                .iter()
                .filter(|g| g.iter().any(|&v| v != 0))
                .map(|g| g.iter().map(|&v| T::from_int(v)).collect())
                .collect(),
        }
    }

    fn check_compact(&self) -> Result<()> {
        let n = self.dim();
        if let Some(g) = self
            .generators
            .iter()
            .find(|g| g[n] == 0 && g.iter().any(|&v| v != 0))
        {
            return Err(Error::RecessionGenerator(g.clone()));
        }
        Ok(())
    }
}

/// Nonnegative combinations of finitely many vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone<T> {
    generators: Vec<Vec<T>>,
}

impl<T: Scalar> RationalCone<T> {
    pub fn new(generators: Vec<Vec<T>>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::EmptySample);
        };
        let d = first.len();
        if let Some(g) = generators.iter().find(|g| g.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.len(),
            });
        }
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    /// `{x : (x, 1) in cone}` for a cone whose generators all have positive
    /// last coordinate.
    pub fn height_one_slice(&self) -> Result<RationalPolytope<T>> {
        let Some(first) = self.generators.first() else {
            return Err(Error::EmptyGrading);
        };
        let n = first.len() - 1;
        if self.generators.iter().any(|g| !g[n].is_positive()) {
            return Err(Error::Unbounded);
        }
        let points: Vec<Vec<T>> = self
            .generators
            .iter()
            .map(|g| g[..n].iter().map(|v| v.clone() / g[n].clone()).collect())
            .collect();
        RationalPolytope::from_vertices(n, &points)
    }
}

/// Exponent vector; `Ord` is the lexicographic order (first coordinate
/// decides, then the second, and so on).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: Self) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// `Delta(Gamma) = {alpha : (alpha, 1) in Sigma(Gamma)}`.
pub fn okounkov_body<T: Scalar>(s: &FiniteSemigroup) -> Result<RationalPolytope<T>> {
    s.check_compact()?;
    let cone = s.cone::<T>();
    if cone.generators.is_empty() {
        return Err(Error::EmptyGrading);
    }
    cone.height_one_slice()
}

/// `Delta_k = {alpha : (k alpha, k) in Gamma}`, sorted, with entries over `k`.
///
/// Degree-zero generators other than the origin would make every level
/// infinite and are rejected.
pub fn delta_k<T: Scalar>(s: &FiniteSemigroup, k: u32) -> Result<Vec<Vec<T>>> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "k",
            value: "0".into(),
            reason: "degrees start at 1",
        });
    }
    s.check_compact()?;
    let level = semigroup_level(s, k as usize);
    let kk = T::from_int(k as i64);
    Ok(level
        .into_iter()
        .map(|a| a.iter().map(|&v| T::from_int(v) / kk.clone()).collect())
        .collect())
}

/// Integer points `alpha` with `(alpha, k)` in the semigroup.
pub(crate) fn semigroup_level(s: &FiniteSemigroup, k: usize) -> BTreeSet<Vec<i64>> {
    let n = s.dim();
    let graded: Vec<&Vec<i64>> = s.generators.iter().filter(|g| g[n] > 0).collect();
    let mut reach: Vec<BTreeSet<Vec<i64>>> = vec![BTreeSet::new(); k + 1];
    reach[0].insert(vec![0; n]);
    for j in 1..=k {
        let mut here = BTreeSet::new();
        for g in &graded {
            let h = g[n] as usize;
            if h > j {
                continue;
            }
            for a in &reach[j - h] {
                here.insert(a.iter().zip(g.iter()).map(|(x, y)| x + y).collect());
            }
        }
        reach[j] = here;
    }
    reach.pop().unwrap()
}

/// Lexicographically smallest multi-index with a nonzero coefficient.
pub fn lowest_term_valuation<T: Scalar>(terms: &[(MultiIndex, T)]) -> Result<MultiIndex> {
    let mut seen = BTreeSet::new();
    for (m, _) in terms {
        if !seen.insert(m) {
            return Err(Error::DuplicateMultiIndex(m.0.clone()));
        }
    }
    terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, _)| m)
        .min()
        .cloned()
        .ok_or(Error::ZeroSection)
}
