//! Finite positive measures on the line made of point masses and
//! piecewise-polynomial densities.
//!
//! Tails use the closed convention `m([t, inf))`, so `tail` is decreasing and
//! left-continuous, with atoms at `t` counted.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::pl::ConcavePLFunction;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Density `density(t)` on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityPiece<T> {
    pub lo: T,
    pub hi: T,
    pub density: Polynomial<T>,
}

/// Kept in canonical form: atoms sorted with positive masses and distinct
/// locations; pieces sorted, disjoint, nonzero, and adjacent pieces with the
/// same polynomial merged. Equal measures therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureOnR<T> {
    atoms: Vec<(T, T)>,
    pieces: Vec<DensityPiece<T>>,
}

impl<T: Scalar> Default for MeasureOnR<T> {
    fn default() -> Self {
        Self {
            atoms: Vec::new(),
            pieces: Vec::new(),
        }
    }
}

impl<T: Scalar> MeasureOnR<T> {
    /// Validates masses and densities and puts the data in canonical form.
    pub fn new(atoms: Vec<(T, T)>, pieces: Vec<DensityPiece<T>>) -> Result<Self> {
        if let Some((loc, mass)) = atoms.iter().find(|(_, m)| m.is_negative()) {
            return Err(Error::ParameterOutOfRange {
                name: "atom mass",
                value: format!("{} at {}", mass.to_exact_string(), loc.to_exact_string()),
                reason: "masses must be nonnegative",
            });
        }
        let mut pieces: Vec<DensityPiece<T>> =
            pieces.into_iter().filter(|p| !p.density.is_zero()).collect();
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        for p in &pieces {
            if p.lo >= p.hi {
                return Err(Error::ParameterOutOfRange {
                    name: "density interval",
                    value: format!("[{}, {}]", p.lo.to_exact_string(), p.hi.to_exact_string()),
                    reason: "intervals need lo < hi",
                });
            }
            if !nonnegative_on(&p.density, &p.lo, &p.hi) {
                return Err(Error::ParameterOutOfRange {
                    name: "density",
                    value: format!("on [{}, {}]", p.lo.to_exact_string(), p.hi.to_exact_string()),
                    reason: "densities must be nonnegative",
                });
            }
        }
        for w in pieces.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(Error::ParameterOutOfRange {
                    name: "density interval",
                    value: w[1].lo.to_exact_string(),
                    reason: "intervals overlap",
                });
            }
        }
        let mut merged: Vec<DensityPiece<T>> = Vec::new();
        for p in pieces {
            match merged.last_mut() {
                Some(last) if last.hi == p.lo && last.density == p.density => last.hi = p.hi,
                _ => merged.push(p),
            }
        }
        let mut table: BTreeMap<T, T> = BTreeMap::new();
        for (loc, mass) in atoms {
            let e = table.entry(loc).or_insert_with(T::zero);
            *e = e.clone() + mass;
        }
        Ok(Self {
            atoms: table.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
            pieces: merged,
        })
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        Self::new(atoms.into_iter().collect(), Vec::new())
    }

    pub fn atoms(&self) -> &[(T, T)] {
        &self.atoms
    }

    pub fn pieces(&self) -> &[DensityPiece<T>] {
        &self.pieces
    }

    pub fn total_mass(&self) -> T {
        self.moment(0)
    }

    /// `m([t, inf))`
    pub fn tail(&self, t: &T) -> T {
        let atoms = self
            .atoms
            .iter()
            .filter(|(loc, _)| loc >= t)
            .fold(T::zero(), |acc, (_, m)| acc + m.clone());
        atoms + self.density_tail(t)
    }

    /// `m((t, inf))`, the right limit of `tail` at `t`.
    pub fn tail_right(&self, t: &T) -> T {
        let atoms = self
            .atoms
            .iter()
            .filter(|(loc, _)| loc > t)
            .fold(T::zero(), |acc, (_, m)| acc + m.clone());
        atoms + self.density_tail(t)
    }

    fn density_tail(&self, t: &T) -> T {
        self.pieces
            .iter()
            .filter(|p| &p.hi > t)
            .fold(T::zero(), |acc, p| {
                let lo = if &p.lo > t { p.lo.clone() } else { t.clone() };
                acc + p.density.integrate(&lo, &p.hi)
            })
    }

    /// `int x^r dm`
    pub fn moment(&self, r: u32) -> T {
        let atoms = self.atoms.iter().fold(T::zero(), |acc, (loc, m)| {
            acc + m.clone() * num_traits::pow(loc.clone(), r as usize)
        });
        let xr = Polynomial::identity().pow(r);
        self.pieces.iter().fold(atoms, |acc, p| {
            acc + (&xr * &p.density).integrate(&p.lo, &p.hi)
        })
    }

    /// Atom locations and piece endpoints, sorted.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut set: BTreeSet<T> = self.atoms.iter().map(|(l, _)| l.clone()).collect();
        for p in &self.pieces {
            set.insert(p.lo.clone());
            set.insert(p.hi.clone());
        }
        set.into_iter().collect()
    }

    fn density_on(&self, lo: &T, hi: &T) -> Polynomial<T> {
        self.pieces
            .iter()
            .find(|p| &p.lo <= lo && &p.hi >= hi)
            .map(|p| p.density.clone())
            .unwrap_or_else(Polynomial::zero)
    }

    /// Multiply every mass and density by `s >= 0`.
    pub fn scaled(&self, s: &T) -> Self {
        Self::new(
            self.atoms
                .iter()
                .map(|(l, m)| (l.clone(), m.clone() * s.clone()))
                .collect(),
            self.pieces
                .iter()
                .map(|p| DensityPiece {
                    lo: p.lo.clone(),
                    hi: p.hi.clone(),
                    density: p.density.scale(s),
                })
                .collect(),
        )
        .expect("scaling by a nonnegative factor keeps the measure valid")
    }

    /// Kolmogorov distance `sup_t |tail_a(t) - tail_b(t)|`.
    ///
    /// Exact whenever the density difference between consecutive
    /// breakpoints has degree at most one (always the case for densities
    /// arising from polytopes of dimension at most two). Otherwise interior
    /// extrema are located by Sturm bisection to a relative width of 2^-80.
    pub fn kolmogorov_distance(&self, other: &Self) -> T {
        let diff = |t: &T| (self.tail(t) - other.tail(t)).abs();
        let diff_right = |t: &T| (self.tail_right(t) - other.tail_right(t)).abs();
        let mut bps: BTreeSet<T> = self.breakpoints().into_iter().collect();
        bps.extend(other.breakpoints());
        let bps: Vec<T> = bps.into_iter().collect();
        let Some(first) = bps.first() else {
            return T::zero();
        };
        let mut best = (self.total_mass() - other.total_mass()).abs();
        best = best.max(diff(first));
        for b in &bps {
            best = best.max(diff(b)).max(diff_right(b));
        }
        let width_scale = T::one() / num_traits::pow(T::from_int(2), 80);
        for w in bps.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let slope = &self.density_on(lo, hi) - &other.density_on(lo, hi);
            let width = (hi.clone() - lo.clone()) * width_scale.clone();
            for t in slope.approximate_roots(lo, hi, &width) {
                best = best.max(diff(&t));
            }
        }
        best
    }

    /// Every density piece has degree at most `n - 1`.
    pub fn dh_structure_check(&self, n: usize) -> bool {
        n >= 1
            && self
                .pieces
                .iter()
                .all(|p| p.density.degree().is_none_or(|d| d < n))
    }
}

fn nonnegative_on<T: Scalar>(p: &Polynomial<T>, lo: &T, hi: &T) -> bool {
    if p.eval(lo).is_negative() || p.eval(hi).is_negative() {
        return false;
    }
    let width = (hi.clone() - lo.clone()) / num_traits::pow(T::from_int(2), 64);
    let mut probes = p.derivative().approximate_roots(lo, hi, &width);
    probes.insert(0, lo.clone());
    probes.push(hi.clone());
    let mids: Vec<T> = probes
        .windows(2)
        .map(|w| (w[0].clone() + w[1].clone()) * T::half())
        .collect();
    probes.iter().chain(&mids).all(|x| !p.eval(x).is_negative())
}

/// `g_* (Lebesgue on the domain of g)`.
///
/// The tail `t -> vol{g >= t}` is a polynomial of degree at most `n` between
/// consecutive values of `g` at subdivision vertices; it is recovered on each
/// such interval by interpolation at `n + 1` nodes. The density is minus its
/// derivative. A flat top `{g = max g}` of positive volume becomes an atom.
pub fn pushforward_lebesgue<T: Scalar>(g: &ConcavePLFunction<T>) -> Result<MeasureOnR<T>> {
    if !g.domain().is_full_dimensional() {
        return Err(Error::DegenerateDomain);
    }
    let n = g.dim();
    let bps = g.breakpoints();
    let top = bps.last().unwrap().clone();
    let mut pieces = Vec::new();
    for w in bps.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let step = (hi.clone() - lo.clone()) / T::from_int(n as i64 + 1);
        let nodes: Vec<T> = (0..=n)
            .map(|j| lo.clone() + step.clone() * T::from_int(j as i64))
            .collect();
        let values: Vec<T> = nodes.iter().map(|t| g.superlevel_set(t).volume()).collect();
        let tail = Polynomial::interpolate(&nodes, &values);
        pieces.push(DensityPiece {
            lo: lo.clone(),
            hi: hi.clone(),
            density: -&tail.derivative(),
        });
    }
    let top_mass = g.superlevel_set(&top).volume();
    MeasureOnR::new(vec![(top, top_mass)], pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::AffineForm;
    use crate::polytope::RationalPolytope;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qi(n: i64) -> Q {
        Q::from_int(n)
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn uniform01() -> MeasureOnR<Q> {
        MeasureOnR::new(
            vec![],
            vec![DensityPiece {
                lo: qi(0),
                hi: qi(1),
                density: Polynomial::constant(qi(1)),
            }],
        )
        .unwrap()
    }

    fn square_roof_measure() -> MeasureOnR<Q> {
        MeasureOnR::new(
            vec![(qi(1), q(1, 2))],
            vec![DensityPiece {
                lo: qi(0),
                hi: qi(1),
                density: Polynomial::identity(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn tail_examples() {
        assert_eq!(uniform01().tail(&q(1, 2)), q(1, 2));
        let two = MeasureOnR::from_atoms([(qi(0), qi(1)), (qi(1), qi(1))]).unwrap();
        assert_eq!(two.tail(&qi(0)), qi(2));
        assert_eq!(two.tail_right(&qi(0)), qi(1));
        assert_eq!(square_roof_measure().tail(&qi(1)), q(1, 2));
    }

    #[test]
    fn moment_examples() {
        assert_eq!(uniform01().moment(1), q(1, 2));
        let atom = MeasureOnR::from_atoms([(q(1, 2), qi(3))]).unwrap();
        assert_eq!(atom.moment(2), q(3, 4));
        assert_eq!(uniform01().moment(2), q(1, 3));
    }

    #[test]
    fn kolmogorov_examples() {
        let u = uniform01();
        assert_eq!(u.kolmogorov_distance(&u), qi(0));
        let two = MeasureOnR::from_atoms([(qi(0), qi(1)), (qi(1), qi(1))]).unwrap();
        assert_eq!(two.kolmogorov_distance(&u), qi(1));
        assert_eq!(u.kolmogorov_distance(&two), qi(1));
    }

    #[test]
    fn kolmogorov_interior_extremum() {
        // density 2t vs uniform on [0,1]: tails 1-t^2 and 1-t, max gap 1/4 at t = 1/2
        let lin = MeasureOnR::new(
            vec![],
            vec![DensityPiece {
                lo: qi(0),
                hi: qi(1),
                density: Polynomial::new(vec![qi(0), qi(2)]),
            }],
        )
        .unwrap();
        assert_eq!(lin.kolmogorov_distance(&uniform01()), q(1, 4));
    }

    #[test]
    fn dh_examples() {
        assert!(uniform01().dh_structure_check(1));
        assert!(square_roof_measure().dh_structure_check(2));
        let sq = MeasureOnR::new(
            vec![],
            vec![DensityPiece {
                lo: qi(0),
                hi: qi(1),
                density: Polynomial::new(vec![qi(0), qi(0), qi(1)]),
            }],
        )
        .unwrap();
        assert!(!sq.dh_structure_check(2));
    }

    #[test]
    fn canonical_form_merges_equal_neighbours() {
        let split = MeasureOnR::new(
            vec![(qi(0), qi(0)), (qi(2), qi(1)), (qi(2), qi(1))],
            vec![
                DensityPiece {
                    lo: q(1, 2),
                    hi: qi(1),
                    density: Polynomial::constant(qi(1)),
                },
                DensityPiece {
                    lo: qi(0),
                    hi: q(1, 2),
                    density: Polynomial::constant(qi(1)),
                },
            ],
        )
        .unwrap();
        let direct = MeasureOnR::new(vec![(qi(2), qi(2))], uniform01().pieces().to_vec()).unwrap();
        assert_eq!(split, direct);
    }

    #[test]
    fn invalid_measures_are_rejected() {
        assert!(MeasureOnR::from_atoms([(qi(0), qi(-1))]).is_err());
        let neg = DensityPiece {
            lo: qi(0),
            hi: qi(1),
            density: Polynomial::new(vec![q(-1, 2), qi(1)]),
        };
        assert!(MeasureOnR::new(vec![], vec![neg]).is_err());
        // dips below zero strictly inside: (t - 1/2)^2 - 1/100
        let dip = DensityPiece {
            lo: qi(0),
            hi: qi(1),
            density: Polynomial::new(vec![q(6, 25), qi(-1), qi(1)]),
        };
        assert!(MeasureOnR::new(vec![], vec![dip]).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let p1 = RationalPolytope::unit_cube(1);
        let g = ConcavePLFunction::new(p1, vec![AffineForm::new(vec![qi(-1)], qi(1))]).unwrap();
        assert_eq!(pushforward_lebesgue(&g).unwrap(), uniform01());

        let sq = RationalPolytope::unit_cube(2);
        let roof = ConcavePLFunction::new(
            sq,
            vec![
                AffineForm::constant_form(2, qi(1)),
                AffineForm::new(vec![qi(-1), qi(-1)], qi(2)),
            ],
        )
        .unwrap();
        let m = pushforward_lebesgue(&roof).unwrap();
        assert_eq!(m, square_roof_measure());
        assert_eq!(m.total_mass(), qi(1));

        let seg = RationalPolytope::axis_box(&[(qi(0), qi(2))]).unwrap();
        let nc = ConcavePLFunction::new(
            seg,
            vec![AffineForm::coordinate(1, 0, qi(-1)), AffineForm::constant_form(1, qi(0))],
        )
        .unwrap();
        let expected = MeasureOnR::new(
            vec![(qi(0), qi(1))],
            vec![DensityPiece {
                lo: qi(-1),
                hi: qi(0),
                density: Polynomial::constant(qi(1)),
            }],
        )
        .unwrap();
        assert_eq!(pushforward_lebesgue(&nc).unwrap(), expected);
    }

    #[test]
    fn degenerate_domain_is_rejected() {
        let pt = RationalPolytope::from_vertices(1, &[vec![qi(0)]]).unwrap();
        let g = ConcavePLFunction::constant(pt, qi(1)).unwrap();
        assert_eq!(pushforward_lebesgue(&g), Err(Error::DegenerateDomain));
    }
}
