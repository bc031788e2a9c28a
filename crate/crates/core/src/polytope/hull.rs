//! Exact convex hull (V to H conversion) by gift wrapping.
//!
//! Facets are found by rotating a supporting hyperplane about each ridge;
//! ridges of a facet are the facets of the facet's own point set, computed
//! recursively one dimension down. Coplanar and cospherical degeneracies are
//! handled because facets are identified by their incident point sets.

use std::collections::{BTreeSet, VecDeque};

use super::Halfspace;
use crate::linalg::{affine_dim, null_space, rref, sub};
use crate::scalar::{dot, Scalar};

/// Supporting functional `normal . x <= offset` of a point set.
#[derive(Debug, Clone)]
struct Support<T> {
    normal: Vec<T>,
    offset: T,
}

impl<T: Scalar> Support<T> {
    fn tight(&self, points: &[Vec<T>]) -> Vec<usize> {
        points
            .iter()
            .enumerate()
            .filter(|(_, p)| dot(&self.normal, p) == self.offset)
            .map(|(i, _)| i)
            .collect()
    }
}

struct AffineHull<T> {
    directions: Vec<Vec<T>>,
    normals: Vec<Vec<T>>,
}

fn affine_hull<T: Scalar>(points: &[Vec<T>], n: usize) -> AffineHull<T> {
    let p0 = &points[0];
    let mut diffs: Vec<Vec<T>> = points[1..].iter().map(|p| sub(p, p0)).collect();
    let rank = rref(&mut diffs, n).len();
    diffs.truncate(rank);
    let normals = null_space(&diffs, n);
    AffineHull {
        directions: diffs,
        normals,
    }
}

/// H-representation of `conv(points)`: equality pairs cutting out the affine
/// hull followed by one halfspace per (relative) facet. Empty input yields
/// the infeasible row `0 . x <= -1`.
pub(crate) fn hull_halfspaces<T: Scalar>(points: &[Vec<T>], n: usize) -> Vec<Halfspace<T>> {
    let Some(parts) = hull_parts(points, n) else {
        return vec![Halfspace::new(vec![T::zero(); n], -T::one())];
    };
    let mut out = Vec::new();
    for (w, c) in parts.equalities {
        out.push(Halfspace::new(w.iter().map(|v| -v.clone()).collect(), -c.clone()));
        out.push(Halfspace::new(w, c));
    }
    out.extend(parts.facets);
    out
}

/// Affine-hull equalities `w . x = c` and relative facets, kept apart.
pub(crate) struct HullParts<T> {
    pub equalities: Vec<(Vec<T>, T)>,
    pub facets: Vec<Halfspace<T>>,
}

/// `None` for an empty point set.
pub(crate) fn hull_parts<T: Scalar>(points: &[Vec<T>], n: usize) -> Option<HullParts<T>> {
    let pts: Vec<Vec<T>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if pts.is_empty() {
        return None;
    }
    let hull = affine_hull(&pts, n);
    let equalities = hull
        .normals
        .iter()
        .map(|w| (w.clone(), dot(w, &pts[0])))
        .collect();
    let facets = relative_facets(&pts, n, &hull)
        .into_iter()
        .map(|f| Halfspace::new(f.normal, f.offset))
        .collect();
    Some(HullParts { equalities, facets })
}

fn relative_facets<T: Scalar>(pts: &[Vec<T>], n: usize, hull: &AffineHull<T>) -> Vec<Support<T>> {
    let d = hull.directions.len();
    match d {
        0 => Vec::new(),
        1 => {
            let r = hull.directions[0].clone();
            let values: Vec<T> = pts.iter().map(|p| dot(&r, p)).collect();
            let hi = values.iter().max().unwrap().clone();
            let lo = values.iter().min().unwrap().clone();
            vec![
                Support {
                    normal: r.clone(),
                    offset: hi,
                },
                Support {
                    normal: r.iter().map(|v| -v.clone()).collect(),
                    offset: -lo,
                },
            ]
        }
        _ => wrap(pts, n, hull),
    }
}

fn initial_facet<T: Scalar>(pts: &[Vec<T>], n: usize, hull: &AffineHull<T>) -> Support<T> {
    let d = hull.directions.len();
    let normal = hull.directions[0].clone();
    let offset = pts.iter().map(|p| dot(&normal, p)).max().unwrap();
    let mut sup = Support { normal, offset };
    loop {
        let tight = sup.tight(pts);
        let tight_pts: Vec<Vec<T>> = tight.iter().map(|&i| pts[i].clone()).collect();
        if affine_dim(&tight_pts) == Some(d - 1) {
            return sup;
        }
        // Rotate about aff(tight) towards a direction orthogonal to it.
        let t0 = &tight_pts[0];
        let mut rows: Vec<Vec<T>> = hull.normals.clone();
        rows.extend(tight_pts[1..].iter().map(|t| sub(t, t0)));
        rows.push(sup.normal.clone());
        let mut q = null_space(&rows, n)
            .into_iter()
            .next()
            .expect("rotation direction exists below full facet dimension");
        let mut c = dot(&q, t0);
        if pts.iter().all(|p| dot(&q, p) <= c) {
            q = q.iter().map(|v| -v.clone()).collect();
            c = -c;
        }
        let step = pts
            .iter()
            .filter_map(|p| {
                let qp = dot(&q, p);
                (qp > c).then(|| (sup.offset.clone() - dot(&sup.normal, p)) / (qp - c.clone()))
            })
            .min()
            .unwrap();
        sup = Support {
            normal: sup
                .normal
                .iter()
                .zip(&q)
                .map(|(r, qi)| r.clone() + step.clone() * qi.clone())
                .collect(),
            offset: sup.offset + step * c,
        };
    }
}

fn wrap<T: Scalar>(pts: &[Vec<T>], n: usize, hull: &AffineHull<T>) -> Vec<Support<T>> {
    let first = initial_facet(pts, n, hull);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut facets = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(first.tight(pts));
    queue.push_back(first);
    while let Some(facet) = queue.pop_front() {
        let on: Vec<usize> = facet.tight(pts);
        let on_pts: Vec<Vec<T>> = on.iter().map(|&i| pts[i].clone()).collect();
        let sub_hull = affine_hull(&on_pts, n);
        for ridge in relative_facets(&on_pts, n, &sub_hull) {
            // Smallest rotation parameter keeping every point below.
            let step = pts
                .iter()
                .filter_map(|p| {
                    let u = facet.offset.clone() - dot(&facet.normal, p);
                    (!u.is_zero()).then(|| (dot(&ridge.normal, p) - ridge.offset.clone()) / u)
                })
                .max()
                .expect("full-dimensional point set has points off every facet");
            let next = Support {
                normal: ridge
                    .normal
                    .iter()
                    .zip(&facet.normal)
                    .map(|(r, a)| r.clone() + step.clone() * a.clone())
                    .collect(),
                offset: ridge.offset.clone() + step * facet.offset.clone(),
            };
            if seen.insert(next.tight(pts)) {
                queue.push_back(next);
            }
        }
        facets.push(facet);
    }
    facets
}
