//! Toric test configurations given by a nonnegative concave PL function `g`
//! on an integral polytope `P`: the roof polytope, weight measures, the
//! induced filtration and the invariant `F_0`.
//!
//! Weights follow the sign convention in which roof height enters
//! positively, so the lattice point `alpha` of `kP` has weight
//! `floor(k g(alpha / k))`, the height of the top lattice point of `kQ` above
//! it. For `k` with `k g(alpha / k)` not integral this floor is the exact
//! lattice description.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filtration::WeightFiltration;
use crate::measures::MeasureOnR;
use crate::pl::ConcavePLFunction;
use crate::polytope::{Halfspace, RationalPolytope};
use crate::scalar::{int_point, Scalar};

#[derive(Debug, Clone)]
pub struct ToricTestConfiguration<T> {
    g: ConcavePLFunction<T>,
    scale: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMeasure<T> {
    /// `mu(T, k)`: mass `dim V_eta` at each weight `eta`.
    pub raw: MeasureOnR<T>,
    /// `k^-n` times `raw`, with atoms moved to `eta / k`.
    pub normalized: MeasureOnR<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F0Report<T> {
    /// `int_P g / vol P`.
    pub f0: T,
    /// `(k, w_k / (k d_k))`.
    pub ratios: Vec<(u32, T)>,
}

impl<T: Scalar> ToricTestConfiguration<T> {
    /// `scale`, when given, is a positive `r` such that `r g` has an
    /// integral roof; it is recorded and not otherwise used.
    pub fn new(g: ConcavePLFunction<T>, scale: Option<u32>) -> Result<Self> {
        g.domain().ensure_integral()?;
        g.ensure_nonnegative()?;
        if scale == Some(0) {
            return Err(Error::NonPositiveScale("0".into()));
        }
        Ok(Self { g, scale })
    }

    pub fn g(&self) -> &ConcavePLFunction<T> {
        &self.g
    }

    pub fn base(&self) -> &RationalPolytope<T> {
        self.g.domain()
    }

    pub fn scale(&self) -> Option<u32> {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `Q = {(x, y) : x in P, 0 <= y <= g(x)}`.
    pub fn roof_polytope(&self) -> RationalPolytope<T> {
        let n = self.dim();
        let lift = |normal: &[T], y: T| {
            let mut v = normal.to_vec();
            v.push(y);
            v
        };
        let mut rows: Vec<Halfspace<T>> = self
            .base()
            .inequalities()
            .iter()
            .map(|h| Halfspace::new(lift(&h.normal, T::zero()), h.offset.clone()))
            .collect();
        rows.push(Halfspace::new(lift(&vec![T::zero(); n], -T::one()), T::zero()));
        for p in self.g.pieces() {
            let neg: Vec<T> = p.coeffs.iter().map(|a| -a.clone()).collect();
            rows.push(Halfspace::new(lift(&neg, T::one()), p.constant.clone()));
        }
        RationalPolytope::from_inequalities(n + 1, rows).expect("roof over a bounded base")
    }

    /// `floor(k g(alpha / k))`, computed as `floor(min_i a_i . alpha + k b_i)`.
    pub fn weight(&self, k: u32, alpha: &[i64]) -> i64 {
        let x = int_point::<T>(alpha);
        let kk = T::from_int(k as i64);
        self.g
            .pieces()
            .iter()
            .map(|p| {
                p.coeffs
                    .iter()
                    .zip(&x)
                    .fold(p.constant.clone() * kk.clone(), |acc, (a, v)| acc + a.clone() * v.clone())
            })
            .min()
            .unwrap()
            .floor_i64()
    }

    fn weights(&self, k: u32) -> Result<Vec<i64>> {
        let kp = self.base().dilate(&T::from_int(k as i64))?;
        Ok(kp.lattice_points().par_iter().map(|a| self.weight(k, a)).collect())
    }

    pub fn weight_measure(&self, k: u32) -> Result<WeightMeasure<T>> {
        check_degree(k)?;
        let weights = self.weights(k)?;
        let kk = T::from_int(k as i64);
        let mass = T::one() / num_traits::pow(kk.clone(), self.dim());
        let raw = MeasureOnR::from_atoms(weights.iter().map(|&w| (T::from_int(w), T::one())))?;
        let normalized = MeasureOnR::from_atoms(
            weights
                .iter()
                .map(|&w| (T::from_int(w) / kk.clone(), mass.clone())),
        )?;
        Ok(WeightMeasure { raw, normalized })
    }

    /// `w_k(alpha) = floor(k g(alpha / k))` for `k = 1..=degree_bound`, with
    /// `C = max_P g`.
    pub fn toric_filtration(&self, degree_bound: u32) -> Result<WeightFiltration<T>> {
        check_degree(degree_bound)?;
        let degrees: Vec<u32> = (1..=degree_bound).collect();
        let bound = self.g.max_value().max(-self.g.min_value());
        WeightFiltration::from_fn(self.base().clone(), &degrees, bound, |k, a| self.weight(k, a))
    }

    /// `F_0 = int_P g / vol P` together with the exact ratios `w_k / (k d_k)`,
    /// where `w_k` is the total weight and `d_k` the number of lattice points.
    pub fn f0_invariant(&self, ks: &[u32]) -> Result<F0Report<T>> {
        if !self.base().is_full_dimensional() {
            return Err(Error::DegenerateDomain);
        }
        let f0 = self.g.integrate() / self.base().volume();
        let ratios = ks
            .par_iter()
            .map(|&k| {
                check_degree(k)?;
                let weights = self.weights(k)?;
                let total: i64 = weights.iter().sum();
                let d = T::from_int(weights.len() as i64);
                Ok((k, T::from_int(total) / (T::from_int(k as i64) * d)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(F0Report { f0, ratios })
    }
}

fn check_degree(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "k",
            value: "0".into(),
            reason: "degrees start at 1",
        });
    }
    Ok(())
}
