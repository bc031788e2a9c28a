//! Filtrations of the section ring that are diagonal in the lattice-point
//! basis, stored as integer weights `w_k(alpha)` on the lattice points of `kP`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::MeasureOnR;
use crate::pl::ConcavePLFunction;
use crate::polytope::RationalPolytope;
use crate::scalar::Scalar;

pub type WeightTable = BTreeMap<Vec<i64>, i64>;

#[derive(Debug, Clone)]
pub struct WeightFiltration<T> {
    base: RationalPolytope<T>,
    levels: BTreeMap<u32, WeightTable>,
    bound: T,
}

/// `G_k(alpha) = w_k(k alpha)` on the points of `Delta_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkFunction<T> {
    pub k: u32,
    pub values: BTreeMap<Vec<T>, i64>,
}

impl<T: Scalar> GkFunction<T> {
    /// `(G_k)_* nu_k`: mass one at `G_k(alpha)` for every point `alpha`.
    pub fn pushforward(&self) -> MeasureOnR<T> {
        MeasureOnR::from_atoms(self.values.values().map(|&w| (T::from_int(w), T::one())))
            .expect("unit masses")
    }
}

#[derive(Debug, Clone)]
pub struct ConcaveTransformEstimate<T> {
    pub envelope: ConcavePLFunction<T>,
    /// `(alpha / k, w_k(alpha) / k)` over all sampled degrees.
    pub samples: Vec<(Vec<T>, T)>,
    /// The sample locations do not cover the whole base, so part of the
    /// envelope is an extension of its pieces rather than a fitted value.
    pub extrapolated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityReport {
    Pass,
    /// `w_{k+m}(alpha + beta) = lhs < rhs = w_k(alpha) + w_m(beta)`.
    Superadditivity {
        k: u32,
        m: u32,
        alpha: Vec<i64>,
        beta: Vec<i64>,
        lhs: i64,
        rhs: i64,
    },
    /// `|w_k(alpha)| > C k`.
    WeightBound {
        k: u32,
        alpha: Vec<i64>,
        weight: i64,
        bound: String,
    },
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

impl<T: Scalar> WeightFiltration<T> {
    /// Materializes `w(k, alpha)` for every `k` in `degrees`. `bound` is the
    /// constant `C` of the linear bound `|w_k| <= C k`.
    pub fn from_fn<F>(base: RationalPolytope<T>, degrees: &[u32], bound: T, w: F) -> Result<Self>
    where
        F: Fn(u32, &[i64]) -> i64 + Sync,
    {
        validate_degrees(degrees)?;
        let levels = degrees
            .par_iter()
            .map(|&k| {
                let kp = base.dilate(&T::from_int(k as i64))?;
                let table = kp
                    .lattice_points()
                    .into_iter()
                    .map(|a| {
                        let v = w(k, &a);
                        (a, v)
                    })
                    .collect();
                Ok((k, table))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { base, levels, bound })
    }

    /// Explicit weight tables. Each level must list every lattice point of
    /// `kP` exactly once. Without `bound`, `C` is the smallest constant the
    /// table satisfies.
    pub fn from_table(
        base: RationalPolytope<T>,
        levels: BTreeMap<u32, WeightTable>,
        bound: Option<T>,
    ) -> Result<Self> {
        let degrees: Vec<u32> = levels.keys().copied().collect();
        validate_degrees(&degrees)?;
        for (&k, table) in &levels {
            let kp = base.dilate(&T::from_int(k as i64))?;
            let points = kp.lattice_points();
            if let Some(a) = table.keys().find(|a| a.len() != base.dim()) {
                return Err(Error::DimensionMismatch {
                    expected: base.dim(),
                    found: a.len(),
                });
            }
            if points.len() != table.len() || points.iter().any(|p| !table.contains_key(p)) {
                let missing = points.iter().find(|p| !table.contains_key(*p));
                let msg = match missing {
                    Some(p) => format!("degree {k}: lattice point {p:?} of kP has no weight"),
                    None => format!("degree {k}: weights given outside kP"),
                };
                return Err(Error::InvalidFiltration(msg));
            }
        }
        let bound = bound.unwrap_or_else(|| {
            levels
                .iter()
                .flat_map(|(&k, t)| {
                    t.values()
                        .map(move |&w| T::from_int(w.abs()) / T::from_int(k as i64))
                })
                .max()
                .unwrap_or_else(T::zero)
        });
        Ok(Self { base, levels, bound })
    }

    pub fn base(&self) -> &RationalPolytope<T> {
        &self.base
    }

    pub fn bound(&self) -> &T {
        &self.bound
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.levels.keys().copied().collect()
    }

    pub fn degree_bound(&self) -> u32 {
        self.levels.keys().last().copied().unwrap_or(0)
    }

    pub fn level(&self, k: u32) -> Result<&WeightTable> {
        self.levels.get(&k).ok_or(Error::DegreeOutOfRange {
            k,
            bound: self.degree_bound(),
        })
    }

    pub fn weight(&self, k: u32, alpha: &[i64]) -> Option<i64> {
        self.levels.get(&k)?.get(alpha).copied()
    }

    /// `dim F_t H^0(kL) = #{alpha : w_k(alpha) >= ceil(t)}`.
    pub fn dim_filtration(&self, k: u32, t: &T) -> Result<usize> {
        let t = t.ceil_i64();
        Ok(self.level(k)?.values().filter(|&&w| w >= t).count())
    }

    /// `dim H^0(kL)`, the lattice-point count of `kP`.
    pub fn full_dimension(&self, k: u32) -> Result<usize> {
        Ok(self.level(k)?.len())
    }

    /// `nu(F, k)`: mass `k^-n` at `w_k(alpha) / k` for each lattice point.
    pub fn nu_measure(&self, k: u32) -> Result<MeasureOnR<T>> {
        let kk = T::from_int(k as i64);
        let mass = T::one() / num_traits::pow(kk.clone(), self.base.dim());
        let atoms = self
            .level(k)?
            .values()
            .map(|&w| (T::from_int(w) / kk.clone(), mass.clone()));
        MeasureOnR::from_atoms(atoms)
    }

    pub fn gk_function(&self, k: u32) -> Result<GkFunction<T>> {
        let kk = T::from_int(k as i64);
        let values = self
            .level(k)?
            .iter()
            .map(|(a, &w)| (a.iter().map(|&v| T::from_int(v) / kk.clone()).collect(), w))
            .collect();
        Ok(GkFunction { k, values })
    }

    /// Upper concave envelope of the points `(alpha / k, G_k(alpha) / k)`.
    pub fn concave_transform_estimate(&self, k_list: &[u32]) -> Result<ConcaveTransformEstimate<T>> {
        if k_list.is_empty() {
            return Err(Error::EmptySample);
        }
        let mut samples = Vec::new();
        for &k in k_list {
            let kk = T::from_int(k as i64);
            for (x, w) in self.gk_function(k)?.values {
                samples.push((x, T::from_int(w) / kk.clone()));
            }
        }
        let locations: Vec<Vec<T>> = samples.iter().map(|(x, _)| x.clone()).collect();
        let covered = RationalPolytope::from_vertices(self.base.dim(), &locations)?;
        let extrapolated = !self.base.is_subset_of(&covered);
        let envelope = ConcavePLFunction::upper_envelope(self.base.clone(), &samples)?;
        Ok(ConcaveTransformEstimate {
            envelope,
            samples,
            extrapolated,
        })
    }

    /// Superadditivity for every materialized `k, m` with `k + m <= k_max`,
    /// then `|w_k| <= C k` for `k <= k_max`. Reports the first violation in
    /// the order `k`, `m`, `alpha`, `beta` (lattice points ascending).
    pub fn check_admissible(&self, k_max: u32) -> Result<AdmissibilityReport> {
        if k_max > self.degree_bound() {
            return Err(Error::DegreeOutOfRange {
                k: k_max,
                bound: self.degree_bound(),
            });
        }
        let pairs: Vec<(u32, u32)> = self
            .levels
            .keys()
            .flat_map(|&k| self.levels.keys().map(move |&m| (k, m)))
            .filter(|&(k, m)| k + m <= k_max && self.levels.contains_key(&(k + m)))
            .collect();
        let found = pairs.par_iter().find_map_first(|&(k, m)| {
            let (wk, wm, wkm) = (&self.levels[&k], &self.levels[&m], &self.levels[&(k + m)]);
            for (a, &x) in wk {
                for (b, &y) in wm {
                    let sum: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                    let lhs = wkm[&sum];
                    if lhs < x + y {
                        return Some(AdmissibilityReport::Superadditivity {
                            k,
                            m,
                            alpha: a.clone(),
                            beta: b.clone(),
                            lhs,
                            rhs: x + y,
                        });
                    }
                }
            }
            None
        });
        if let Some(report) = found {
            return Ok(report);
        }
        for (&k, table) in self.levels.range(..=k_max) {
            let cap = self.bound.clone() * T::from_int(k as i64);
            if let Some((a, &w)) = table.iter().find(|(_, &w)| T::from_int(w.abs()) > cap) {
                return Ok(AdmissibilityReport::WeightBound {
                    k,
                    alpha: a.clone(),
                    weight: w,
                    bound: self.bound.to_exact_string(),
                });
            }
        }
        Ok(AdmissibilityReport::Pass)
    }
}

fn validate_degrees(degrees: &[u32]) -> Result<()> {
    if degrees.is_empty() {
        return Err(Error::EmptySample);
    }
    if degrees.contains(&0) {
        return Err(Error::ParameterOutOfRange {
            name: "k",
            value: "0".into(),
            reason: "degrees start at 1",
        });
    }
    Ok(())
}
