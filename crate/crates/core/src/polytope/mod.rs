//! Exact rational polytopes.
//!
//! A [`RationalPolytope`] is stored by its irredundant inequalities together
//! with its vertex list. Construction from inequalities enumerates vertices
//! as feasible intersections of `n` tight hyperplanes; construction from
//! points goes through the exact gift-wrapping hull in [`hull`].

mod hull;

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{point_strings, Error, Result};
use crate::linalg::{affine_dim, determinant, factorial, solve, sub};
use crate::scalar::{dot, int_point, Scalar};

pub(crate) use hull::{hull_halfspaces, hull_parts};

/// The closed halfspace `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Halfspace<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Self {
        Self { normal, offset }
    }

    pub fn contains(&self, x: &[T]) -> bool {
        dot(&self.normal, x) <= self.offset
    }

    pub fn is_tight(&self, x: &[T]) -> bool {
        dot(&self.normal, x) == self.offset
    }

    /// Positive rescaling so the first nonzero normal entry has absolute value 1.
    fn normalized(&self) -> Self {
        match self.normal.iter().find(|v| !v.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let s = lead.abs();
                Self {
                    normal: self.normal.iter().map(|v| v.clone() / s.clone()).collect(),
                    offset: self.offset.clone() / s,
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RationalPolytope<T> {
    dim: usize,
    ineqs: Vec<Halfspace<T>>,
    vertices: Vec<Vec<T>>,
}

impl<T: Scalar> RationalPolytope<T> {
    /// Builds `{x : a_i . x <= b_i}`; rejects unbounded sets and drops
    /// redundant rows.
    pub fn from_inequalities(dim: usize, ineqs: Vec<Halfspace<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for h in &ineqs {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.normal.len(),
                });
            }
        }
        let mut rows: BTreeSet<Halfspace<T>> = BTreeSet::new();
        for h in ineqs {
            if h.normal.iter().all(|v| v.is_zero()) {
                if h.offset.is_negative() {
                    return Ok(Self::empty(dim));
                }
                continue;
            }
            rows.insert(h.normalized());
        }
        let rows: Vec<Halfspace<T>> = rows.into_iter().collect();

        if has_recession_direction(dim, &rows) {
            if fourier_motzkin_feasible(dim, &rows) {
                return Err(Error::Unbounded);
            }
            return Ok(Self::empty(dim));
        }
        let vertices = enumerate_vertices(dim, &rows);
        if vertices.is_empty() {
            return Ok(Self::empty(dim));
        }
        let ineqs = if affine_dim(&vertices) == Some(dim) {
            let mut seen = BTreeSet::new();
            rows.into_iter()
                .filter(|h| {
                    let tight: Vec<usize> = (0..vertices.len())
                        .filter(|&i| h.is_tight(&vertices[i]))
                        .collect();
                    let tight_pts: Vec<Vec<T>> =
                        tight.iter().map(|&i| vertices[i].clone()).collect();
                    affine_dim(&tight_pts) == Some(dim - 1) && seen.insert(tight)
                })
                .collect()
        } else {
            hull_halfspaces(&vertices, dim)
                .into_iter()
                .map(|h| h.normalized())
                .collect()
        };
        Ok(Self {
            dim,
            ineqs,
            vertices,
        })
    }

    /// Convex hull of a finite point set.
    pub fn from_vertices(dim: usize, points: &[Vec<T>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        Self::from_inequalities(dim, hull_halfspaces(points, dim))
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            ineqs: vec![Halfspace::new(vec![T::zero(); dim], -T::one())],
            vertices: Vec::new(),
        }
    }

    /// Axis-parallel box `prod [lo_i, hi_i]`.
    pub fn axis_box(bounds: &[(T, T)]) -> Result<Self> {
        let n = bounds.len();
        let mut ineqs = Vec::with_capacity(2 * n);
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            ineqs.push(Halfspace::new(e.clone(), hi.clone()));
            e[i] = -T::one();
            ineqs.push(Halfspace::new(e, -lo.clone()));
        }
        Self::from_inequalities(n, ineqs)
    }

    pub fn unit_cube(n: usize) -> Self {
        Self::axis_box(&vec![(T::zero(), T::one()); n]).expect("unit cube is bounded")
    }

    /// `conv{0, e_1, ..., e_n}`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut ineqs: Vec<Halfspace<T>> = (0..n)
            .map(|i| {
                let mut e = vec![T::zero(); n];
                e[i] = -T::one();
                Halfspace::new(e, T::zero())
            })
            .collect();
        ineqs.push(Halfspace::new(vec![T::one(); n], T::one()));
        Self::from_inequalities(n, ineqs).expect("simplex is bounded")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Halfspace<T>] {
        &self.ineqs
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn affine_dim(&self) -> Option<usize> {
        affine_dim(&self.vertices)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.dim)
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(|v| v.is_integral())
    }

    /// Errors with the first non-integral vertex.
    pub fn ensure_integral(&self) -> Result<()> {
        match self.vertices.iter().find(|v| !v.iter().all(|x| x.is_integral())) {
            Some(v) => Err(Error::NonIntegralPolytope(point_strings(v))),
            None => Ok(()),
        }
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim && self.ineqs.iter().all(|h| h.contains(x))
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices.iter().all(|v| other.contains(v))
    }

    /// Intersection with further halfspaces.
    pub fn intersect(&self, extra: impl IntoIterator<Item = Halfspace<T>>) -> Result<Self> {
        let mut rows = self.ineqs.clone();
        rows.extend(extra);
        Self::from_inequalities(self.dim, rows)
    }

    /// `{k x : x in P}` for `k > 0`.
    pub fn dilate(&self, k: &T) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::NonPositiveScale(k.to_exact_string()));
        }
        Ok(Self {
            dim: self.dim,
            ineqs: self
                .ineqs
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), h.offset.clone() * k.clone()))
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x.clone() * k.clone()).collect())
                .collect(),
        })
    }

    pub fn translate(&self, shift: &[T]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: shift.len(),
            });
        }
        let ineqs = self
            .ineqs
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), h.offset.clone() + dot(&h.normal, shift)))
            .collect();
        let mut vertices: Vec<Vec<T>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a.clone() + b.clone()).collect())
            .collect();
        vertices.sort();
        Ok(Self {
            dim: self.dim,
            ineqs,
            vertices,
        })
    }

    /// `{x + y : x in P, y in Q}`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.dim));
        }
        let sums: Vec<Vec<T>> = self
            .vertices
            .iter()
            .cartesian_product(&other.vertices)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect())
            .collect();
        Self::from_vertices(self.dim, &sums)
    }

    /// Simplices (as vertex lists) of a pulling triangulation; empty unless
    /// the polytope is full-dimensional.
    pub fn triangulation(&self) -> Vec<Vec<Vec<T>>> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        let tight: Vec<Vec<usize>> = self
            .ineqs
            .iter()
            .map(|h| {
                (0..self.vertices.len())
                    .filter(|&i| h.is_tight(&self.vertices[i]))
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        pull(&all, self.dim, &tight, &self.vertices)
            .into_iter()
            .map(|s| s.into_iter().map(|i| self.vertices[i].clone()).collect())
            .collect()
    }

    /// Exact Lebesgue volume; zero for lower-dimensional or empty polytopes.
    pub fn volume(&self) -> T {
        let total = self
            .triangulation()
            .iter()
            .fold(T::zero(), |acc, s| acc + simplex_volume(s));
        total
    }

    /// Range of integer coordinates `(ceil(min), floor(max))` per axis.
    pub fn integer_bounding_box(&self) -> Option<Vec<(i64, i64)>> {
        if self.is_empty() {
            return None;
        }
        Some(
            (0..self.dim)
                .map(|j| {
                    let lo = self.vertices.iter().map(|v| v[j].clone()).min().unwrap();
                    let hi = self.vertices.iter().map(|v| v[j].clone()).max().unwrap();
                    (lo.ceil_i64(), hi.floor_i64())
                })
                .collect(),
        )
    }

    /// All integer points of the polytope in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let Some(bbox) = self.integer_bounding_box() else {
            return Vec::new();
        };
        if bbox.iter().any(|(lo, hi)| lo > hi) {
            return Vec::new();
        }
        let (lo0, hi0) = bbox[0];
        (lo0..=hi0)
            .into_par_iter()
            .map(|x0| {
                let mut out = Vec::new();
                let mut prefix = vec![x0];
                self.scan_box(&bbox, &mut prefix, &mut out);
                out
            })
            .collect::<Vec<_>>()
            .concat()
    }

    fn scan_box(&self, bbox: &[(i64, i64)], prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == self.dim {
            if self.contains(&int_point::<T>(prefix)) {
                out.push(prefix.clone());
            }
            return;
        }
        let (lo, hi) = bbox[prefix.len()];
        for v in lo..=hi {
            prefix.push(v);
            self.scan_box(bbox, prefix, out);
            prefix.pop();
        }
    }

    pub fn count_lattice_points(&self) -> usize {
        self.lattice_points().len()
    }

    /// A point in the relative interior (vertex centroid).
    pub fn centroid(&self) -> Option<Vec<T>> {
        let m = T::from_int(self.vertices.len() as i64);
        let first = self.vertices.first()?;
        let mut c = vec![T::zero(); first.len()];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci = ci.clone() + vi.clone();
            }
        }
        Some(c.into_iter().map(|x| x / m.clone()).collect())
    }
}

/// Set equality, certified by mutual vertex inclusion.
impl<T: Scalar> PartialEq for RationalPolytope<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.is_subset_of(other) && other.is_subset_of(self)
    }
}

pub(crate) fn simplex_volume<T: Scalar>(simplex: &[Vec<T>]) -> T {
    let n = simplex.len() - 1;
    let rows: Vec<Vec<T>> = simplex[1..].iter().map(|v| sub(v, &simplex[0])).collect();
    determinant(&rows).abs() / factorial::<T>(n)
}

fn pull<T: Scalar>(
    face: &[usize],
    d: usize,
    tight: &[Vec<usize>],
    verts: &[Vec<T>],
) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut subfacets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in tight {
        let s: Vec<usize> = face.iter().copied().filter(|i| t.contains(i)).collect();
        if s.len() < d || s.contains(&apex) {
            continue;
        }
        let pts: Vec<Vec<T>> = s.iter().map(|&i| verts[i].clone()).collect();
        if affine_dim(&pts) == Some(d - 1) {
            subfacets.insert(s);
        }
    }
    let mut out = Vec::new();
    for s in subfacets {
        for mut simplex in pull(&s, d - 1, tight, verts) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    out
}

fn enumerate_vertices<T: Scalar>(dim: usize, rows: &[Halfspace<T>]) -> Vec<Vec<T>> {
    let mut found = BTreeSet::new();
    for combo in (0..rows.len()).combinations(dim) {
        let m: Vec<Vec<T>> = combo.iter().map(|&i| rows[i].normal.clone()).collect();
        let rhs: Vec<T> = combo.iter().map(|&i| rows[i].offset.clone()).collect();
        if let Some(x) = solve(&m, &rhs) {
            if rows.iter().all(|h| h.contains(&x)) {
                found.insert(x);
            }
        }
    }
    found.into_iter().collect()
}

/// Whether `{d : a_i . d <= 0}` contains a nonzero vector.
fn has_recession_direction<T: Scalar>(dim: usize, rows: &[Halfspace<T>]) -> bool {
    let mut cone: Vec<Halfspace<T>> = rows
        .iter()
        .map(|h| Halfspace::new(h.normal.clone(), T::zero()))
        .collect();
    for j in 0..dim {
        let mut e = vec![T::zero(); dim];
        e[j] = T::one();
        cone.push(Halfspace::new(e.clone(), T::one()));
        e[j] = -T::one();
        cone.push(Halfspace::new(e, T::one()));
    }
    enumerate_vertices(dim, &cone)
        .iter()
        .any(|v| v.iter().any(|x| !x.is_zero()))
}

/// Feasibility of a system of inequalities by Fourier-Motzkin elimination.
fn fourier_motzkin_feasible<T: Scalar>(dim: usize, rows: &[Halfspace<T>]) -> bool {
    let mut rows: Vec<Halfspace<T>> = rows.to_vec();
    for j in 0..dim {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for h in rows {
            if h.normal[j].is_positive() {
                pos.push(h);
            } else if h.normal[j].is_negative() {
                neg.push(h);
            } else {
                rest.push(h);
            }
        }
        for p in &pos {
            for q in &neg {
                let (cp, cq) = (p.normal[j].clone(), -q.normal[j].clone());
                let normal = p
                    .normal
                    .iter()
                    .zip(&q.normal)
                    .map(|(a, b)| a.clone() * cq.clone() + b.clone() * cp.clone())
                    .collect();
                let offset = p.offset.clone() * cq.clone() + q.offset.clone() * cp.clone();
                rest.push(Halfspace::new(normal, offset).normalized());
            }
        }
        rows = rest.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    }
    rows.iter().all(|h| !h.offset.is_negative())
}
