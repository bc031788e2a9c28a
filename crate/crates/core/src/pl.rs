//! Concave piecewise-affine functions on rational polytopes, represented as
//! a minimum of finitely many affine forms.

use std::collections::BTreeSet;

use crate::error::{point_strings, Error, Result};
use crate::polytope::{hull_parts, simplex_volume, Halfspace, RationalPolytope};
use crate::scalar::{dot, Scalar};

/// `x -> coeffs . x + constant`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm<T> {
    pub coeffs: Vec<T>,
    pub constant: T,
}

impl<T: Scalar> AffineForm<T> {
    pub fn new(coeffs: Vec<T>, constant: T) -> Self {
        Self { coeffs, constant }
    }

    pub fn constant_form(dim: usize, c: T) -> Self {
        Self::new(vec![T::zero(); dim], c)
    }

    /// The coordinate function `x_i + shift`.
    pub fn coordinate(dim: usize, i: usize, shift: T) -> Self {
        let mut coeffs = vec![T::zero(); dim];
        coeffs[i] = T::one();
        Self::new(coeffs, shift)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[T]) -> T {
        dot(&self.coeffs, x) + self.constant.clone()
    }

    /// `{x : self(x) >= t}` as a halfspace.
    pub fn at_least(&self, t: &T) -> Halfspace<T> {
        Halfspace::new(
            self.coeffs.iter().map(|c| -c.clone()).collect(),
            self.constant.clone() - t.clone(),
        )
    }

    /// `{x : self(x) <= other(x)}` as a halfspace.
    fn at_most(&self, other: &Self) -> Halfspace<T> {
        Halfspace::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
            other.constant.clone() - self.constant.clone(),
        )
    }
}

/// A cell of the subdivision induced by the pieces: the region where piece
/// `piece` attains the minimum.
#[derive(Debug, Clone)]
pub struct Cell<T> {
    pub piece: usize,
    pub region: RationalPolytope<T>,
}

#[derive(Debug, Clone)]
pub struct ConcavePLFunction<T> {
    domain: RationalPolytope<T>,
    pieces: Vec<AffineForm<T>>,
}

/// Same domain and same piece list (not just the same function).
impl<T: Scalar> PartialEq for ConcavePLFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.pieces == other.pieces
    }
}

impl<T: Scalar> ConcavePLFunction<T> {
    pub fn new(domain: RationalPolytope<T>, pieces: Vec<AffineForm<T>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::NoPieces);
        }
        if domain.is_empty() {
            return Err(Error::DegenerateDomain);
        }
        for p in &pieces {
            if p.dim() != domain.dim() {
                return Err(Error::DimensionMismatch {
                    expected: domain.dim(),
                    found: p.dim(),
                });
            }
        }
        let pieces = pieces.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(Self { domain, pieces })
    }

    pub fn constant(domain: RationalPolytope<T>, c: T) -> Result<Self> {
        let n = domain.dim();
        Self::new(domain, vec![AffineForm::constant_form(n, c)])
    }

    pub fn domain(&self) -> &RationalPolytope<T> {
        &self.domain
    }

    pub fn pieces(&self) -> &[AffineForm<T>] {
        &self.pieces
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn eval(&self, x: &[T]) -> T {
        self.pieces.iter().map(|p| p.eval(x)).min().unwrap()
    }

    /// Nonempty cells of the induced subdivision.
    pub fn cells(&self) -> Vec<Cell<T>> {
        self.pieces
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let cuts = self
                    .pieces
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, q)| p.at_most(q));
                let region = self.domain.intersect(cuts).expect("subset of bounded domain");
                (!region.is_empty()).then_some(Cell { piece: i, region })
            })
            .collect()
    }

    /// Vertices of all cells of the induced subdivision.
    pub fn subdivision_vertices(&self) -> Vec<Vec<T>> {
        let mut out = BTreeSet::new();
        for c in self.cells() {
            out.extend(c.region.vertices().iter().cloned());
        }
        out.into_iter().collect()
    }

    /// Sorted distinct values at the subdivision vertices.
    pub fn breakpoints(&self) -> Vec<T> {
        self.subdivision_vertices()
            .iter()
            .map(|v| self.eval(v))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn min_value(&self) -> T {
        self.breakpoints().into_iter().next().unwrap()
    }

    pub fn max_value(&self) -> T {
        self.breakpoints().into_iter().last().unwrap()
    }

    /// Errors with the minimizing vertex if the function is negative on the domain.
    pub fn ensure_nonnegative(&self) -> Result<()> {
        let verts = self.subdivision_vertices();
        let worst = verts.iter().min_by_key(|v| self.eval(v)).unwrap();
        let value = self.eval(worst);
        if value.is_negative() {
            return Err(Error::NegativeFunction {
                point: point_strings(worst),
                value: value.to_exact_string(),
            });
        }
        Ok(())
    }

    /// `{x in P : g(x) >= t}`.
    pub fn superlevel_set(&self, t: &T) -> RationalPolytope<T> {
        self.domain
            .intersect(self.pieces.iter().map(|p| p.at_least(t)))
            .expect("subset of bounded domain")
    }

    /// Exact integral over the domain; zero if the domain is lower-dimensional.
    pub fn integrate(&self) -> T {
        let mut total = T::zero();
        for cell in self.cells() {
            let piece = &self.pieces[cell.piece];
            for simplex in cell.region.triangulation() {
                let m = T::from_int(simplex.len() as i64);
                let mean = simplex
                    .iter()
                    .fold(T::zero(), |acc, v| acc + piece.eval(v))
                    / m;
                total = total + simplex_volume(&simplex) * mean;
            }
        }
        total
    }

    /// Smallest concave function on `domain` lying above every sample
    /// `(x, h)`: the upper facets of the hull of the lifted points. Outside
    /// the hull of the sample locations the pieces extrapolate.
    pub fn upper_envelope(domain: RationalPolytope<T>, samples: &[(Vec<T>, T)]) -> Result<Self> {
        let n = domain.dim();
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        let lifted: Vec<Vec<T>> = samples
            .iter()
            .map(|(x, h)| {
                let mut p = x.clone();
                p.push(h.clone());
                p
            })
            .collect();
        for p in &lifted {
            if p.len() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len() - 1,
                });
            }
        }
        let parts = hull_parts(&lifted, n + 1).expect("nonempty sample");
        let to_piece = |normal: &[T], offset: &T| {
            let ay = normal[n].clone();
            AffineForm::new(
                normal[..n].iter().map(|a| -a.clone() / ay.clone()).collect(),
                offset.clone() / ay,
            )
        };
        let pieces = match parts.equalities.iter().find(|(w, _)| !w[n].is_zero()) {
            Some((w, c)) => vec![to_piece(w, c)],
            None => parts
                .facets
                .iter()
                .filter(|h| h.normal[n].is_positive())
                .map(|h| to_piece(&h.normal, &h.offset))
                .collect(),
        };
        Self::new(domain, pieces)
    }
}
