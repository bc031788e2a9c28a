//! Deformation to the normal cone of a torus-invariant divisor `Z`, in
//! coordinates where `Z` is the facet `{x_j = 0}` of the integral polytope
//! `P` and `x_j` is the vanishing order along `Z`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::filtration::WeightFiltration;
use crate::measures::{DensityPiece, MeasureOnR};
use crate::pl::{AffineForm, ConcavePLFunction};
use crate::poly::Polynomial;
use crate::polytope::{Halfspace, RationalPolytope};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct NormalConeDatum<T> {
    base: RationalPolytope<T>,
    coordinate: usize,
    c: T,
}

#[derive(Debug, Clone)]
pub struct NormalConeFiltration<T> {
    pub filtration: WeightFiltration<T>,
    /// Degrees `k <= degree_bound` left out because `c k` is not integral.
    pub skipped: Vec<u32>,
}

impl<T: Scalar> NormalConeDatum<T> {
    /// `coordinate` is the zero-based index `j`. Requires `P` integral with
    /// a facet on `{x_j = 0}` and lying in `{x_j >= 0}`, and `c > 0` with
    /// `P_c` full-dimensional.
    pub fn new(base: RationalPolytope<T>, coordinate: usize, c: T) -> Result<Self> {
        if coordinate >= base.dim() {
            return Err(Error::ParameterOutOfRange {
                name: "facet_coordinate",
                value: coordinate.to_string(),
                reason: "must index a coordinate of the polytope",
            });
        }
        if !c.is_positive() {
            return Err(Error::ParameterOutOfRange {
                name: "c",
                value: c.to_exact_string(),
                reason: "must be positive",
            });
        }
        base.ensure_integral()?;
        if !base.is_full_dimensional() {
            return Err(Error::DegenerateDomain);
        }
        if base.vertices().iter().any(|v| v[coordinate].is_negative()) {
            return Err(Error::InvalidNormalConeDatum(format!(
                "polytope is not contained in x_{coordinate} >= 0"
            )));
        }
        let on_facet: Vec<Vec<T>> = base
            .vertices()
            .iter()
            .filter(|v| v[coordinate].is_zero())
            .cloned()
            .collect();
        if crate::linalg::affine_dim(&on_facet) != Some(base.dim() - 1) {
            return Err(Error::InvalidNormalConeDatum(format!(
                "x_{coordinate} = 0 does not cut out a facet"
            )));
        }
        let datum = Self {
            base,
            coordinate,
            c,
        };
        if !datum.slice(&datum.c).is_full_dimensional() {
            return Err(Error::InvalidNormalConeDatum(format!(
                "P cut at x_{} >= {} is not full-dimensional",
                datum.coordinate,
                datum.c.to_exact_string()
            )));
        }
        Ok(datum)
    }

    pub fn base(&self) -> &RationalPolytope<T> {
        &self.base
    }

    pub fn coordinate(&self) -> usize {
        self.coordinate
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    fn slice(&self, a: &T) -> RationalPolytope<T> {
        let mut normal = vec![T::zero(); self.base.dim()];
        normal[self.coordinate] = -T::one();
        self.base
            .intersect([Halfspace::new(normal, -a.clone())])
            .expect("slice of a bounded polytope")
    }

    fn check_a(&self, a: &T) -> Result<()> {
        if a.is_negative() || a > &self.c {
            return Err(Error::ParameterOutOfRange {
                name: "a",
                value: a.to_exact_string(),
                reason: "must lie in [0, c]",
            });
        }
        Ok(())
    }

    /// `P_a = P ∩ {x_j >= a}` for `0 <= a <= c`.
    pub fn shrunken_polytope(&self, a: &T) -> Result<RationalPolytope<T>> {
        self.check_a(a)?;
        Ok(self.slice(a))
    }

    /// `c k` when it is a natural number.
    fn shift(&self, k: u32) -> Option<i64> {
        let ck = self.c.clone() * T::from_int(k as i64);
        ck.is_integral().then(|| ck.floor_i64())
    }

    /// `w_k(alpha) = min(alpha_j - c k, 0)` on the degrees `k <= degree_bound`
    /// with `c k` integral.
    pub fn normal_cone_filtration(&self, degree_bound: u32) -> Result<NormalConeFiltration<T>> {
        let (kept, skipped): (Vec<u32>, Vec<u32>) =
            (1..=degree_bound).partition(|&k| self.shift(k).is_some());
        if kept.is_empty() {
            return Err(Error::ParameterOutOfRange {
                name: "degree_bound",
                value: degree_bound.to_string(),
                reason: "no degree up to the bound has c k integral",
            });
        }
        let j = self.coordinate;
        let filtration = WeightFiltration::from_fn(self.base.clone(), &kept, self.c.clone(), |k, a| {
            (a[j] - self.shift(k).unwrap()).min(0)
        })?;
        Ok(NormalConeFiltration {
            filtration,
            skipped,
        })
    }

    /// `g_{c,k}(eta) = ceil(max(eta + c k, 0))`, the vanishing order along
    /// `Z` imposed on `F_eta`.
    pub fn jet_order(&self, k: u32, eta: i64) -> Result<i64> {
        let ck = self.shift(k).ok_or_else(|| Error::ParameterOutOfRange {
            name: "k",
            value: k.to_string(),
            reason: "c k must be integral",
        })?;
        Ok((eta + ck).max(0))
    }

    /// `dim F_eta H^0(kL)` counted as sections vanishing to order
    /// `g_{c,k}(eta)` along `Z`; zero for `eta > 0`.
    pub fn vanishing_dimension(&self, k: u32, eta: i64) -> Result<usize> {
        let order = self.jet_order(k, eta)?;
        if eta > 0 {
            return Ok(0);
        }
        let kp = self.base.dilate(&T::from_int(k as i64))?;
        Ok(kp
            .lattice_points()
            .iter()
            .filter(|a| a[self.coordinate] >= order)
            .count())
    }

    /// `min(x_j - c, 0)` on `P`.
    pub fn normal_cone_transform(&self) -> ConcavePLFunction<T> {
        let n = self.base.dim();
        ConcavePLFunction::new(
            self.base.clone(),
            vec![
                AffineForm::coordinate(n, self.coordinate, -self.c.clone()),
                AffineForm::constant_form(n, T::zero()),
            ],
        )
        .expect("two pieces on a nonempty domain")
    }

    /// `vol(P_c) delta_0` plus the density `-d/dx vol(P_{x+c})` on `[-c, 0]`.
    ///
    /// `a -> vol(P_a)` is a polynomial of degree at most `n` between
    /// consecutive `x_j`-coordinates of vertices of `P`, recovered exactly by
    /// interpolation at `n + 1` equally spaced nodes including both ends.
    pub fn normal_cone_pushforward(&self) -> MeasureOnR<T> {
        let n = self.base.dim();
        let mut critical: BTreeSet<T> = self
            .base
            .vertices()
            .iter()
            .map(|v| v[self.coordinate].clone())
            .filter(|a| a > &T::zero() && a < &self.c)
            .collect();
        critical.insert(T::zero());
        critical.insert(self.c.clone());
        let critical: Vec<T> = critical.into_iter().collect();
        let pieces = critical
            .windows(2)
            .map(|w| {
                let step = (w[1].clone() - w[0].clone()) / T::from_int(n as i64);
                let nodes: Vec<T> = (0..=n)
                    .map(|i| w[0].clone() + step.clone() * T::from_int(i as i64))
                    .collect();
                let values: Vec<T> = nodes.iter().map(|a| self.slice(a).volume()).collect();
                let vol = Polynomial::interpolate(&nodes, &values);
                DensityPiece {
                    lo: w[0].clone() - self.c.clone(),
                    hi: w[1].clone() - self.c.clone(),
                    density: (-&vol.derivative()).shift(&self.c),
                }
            })
            .collect();
        MeasureOnR::new(vec![(T::zero(), self.slice(&self.c).volume())], pieces)
            .expect("volumes of shrinking slices are monotone")
    }

    /// `{min(x_j - c, 0) >= a - c} = P_a` as polytopes.
    pub fn slice_check(&self, a: &T) -> Result<bool> {
        let lhs = self
            .normal_cone_transform()
            .superlevel_set(&(a.clone() - self.c.clone()));
        Ok(lhs == self.shrunken_polytope(a)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::pushforward_lebesgue;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qi(n: i64) -> Q {
        Q::from_int(n)
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn segment() -> NormalConeDatum<Q> {
        let p = RationalPolytope::axis_box(&[(qi(0), qi(2))]).unwrap();
        NormalConeDatum::new(p, 0, qi(1)).unwrap()
    }

    fn square() -> NormalConeDatum<Q> {
        NormalConeDatum::new(RationalPolytope::unit_cube(2), 0, q(1, 2)).unwrap()
    }

    #[test]
    fn shrunken_examples() {
        let d = segment();
        let expected = RationalPolytope::axis_box(&[(qi(1), qi(2))]).unwrap();
        assert_eq!(d.shrunken_polytope(&qi(1)).unwrap(), expected);
        assert_eq!(d.shrunken_polytope(&qi(0)).unwrap(), *d.base());
        let s = square().shrunken_polytope(&q(1, 2)).unwrap();
        assert_eq!(s, RationalPolytope::axis_box(&[(q(1, 2), qi(1)), (qi(0), qi(1))]).unwrap());
        assert_eq!(s.volume(), q(1, 2));
        assert!(d.shrunken_polytope(&qi(2)).is_err());
    }

    #[test]
    fn filtration_examples() {
        let d = segment();
        let f = d.normal_cone_filtration(4).unwrap();
        assert!(f.skipped.is_empty());
        let w: Vec<i64> = f.filtration.level(2).unwrap().values().copied().collect();
        assert_eq!(w, vec![-2, -1, 0, 0, 0]);
        assert_eq!(d.jet_order(2, -1).unwrap(), 1);
        assert_eq!(f.filtration.dim_filtration(2, &qi(-1)).unwrap(), 4);
        assert_eq!(d.vanishing_dimension(2, -1).unwrap(), 4);
        assert_eq!(f.filtration.dim_filtration(2, &qi(1)).unwrap(), 0);
        assert_eq!(d.vanishing_dimension(2, 1).unwrap(), 0);
    }

    #[test]
    fn half_integral_c_skips_odd_degrees() {
        let f = square().normal_cone_filtration(5).unwrap();
        assert_eq!(f.skipped, vec![1, 3, 5]);
        assert_eq!(f.filtration.degrees(), vec![2, 4]);
    }

    #[test]
    fn transform_examples() {
        let g = segment().normal_cone_transform();
        assert_eq!(g.eval(&[q(1, 2)]), q(-1, 2));
        assert_eq!(g.eval(&[qi(1)]), qi(0));
        assert_eq!(g.eval(&[q(3, 2)]), qi(0));
    }

    #[test]
    fn pushforward_examples() {
        let unit = |lo: Q| DensityPiece {
            lo,
            hi: qi(0),
            density: Polynomial::constant(qi(1)),
        };
        let m = segment().normal_cone_pushforward();
        assert_eq!(m, MeasureOnR::new(vec![(qi(0), qi(1))], vec![unit(qi(-1))]).unwrap());
        assert_eq!(m.total_mass(), qi(2));
        let m = square().normal_cone_pushforward();
        assert_eq!(m, MeasureOnR::new(vec![(qi(0), q(1, 2))], vec![unit(q(-1, 2))]).unwrap());
        for d in [segment(), square()] {
            assert_eq!(
                d.normal_cone_pushforward(),
                pushforward_lebesgue(&d.normal_cone_transform()).unwrap()
            );
        }
    }

    #[test]
    fn slice_examples() {
        let d = segment();
        for a in [q(1, 2), qi(0), qi(1)] {
            assert!(d.slice_check(&a).unwrap());
        }
    }

    #[test]
    fn invalid_data() {
        let p = RationalPolytope::axis_box(&[(qi(1), qi(2))]).unwrap();
        assert!(matches!(
            NormalConeDatum::new(p, 0, q(1, 2)),
            Err(Error::InvalidNormalConeDatum(_))
        ));
        let p = RationalPolytope::axis_box(&[(qi(0), qi(2))]).unwrap();
        assert!(matches!(
            NormalConeDatum::new(p.clone(), 0, qi(2)),
            Err(Error::InvalidNormalConeDatum(_))
        ));
        assert!(NormalConeDatum::new(p.clone(), 0, qi(0)).is_err());
        assert!(NormalConeDatum::new(p, 1, qi(1)).is_err());
        // the simplex meets x_0 = 0 in a facet
        assert!(NormalConeDatum::new(RationalPolytope::<Q>::standard_simplex(2), 0, q(1, 2)).is_ok());
    }
}
