mod common;

use std::collections::BTreeMap;

use common::*;
use num_traits::{Signed, Zero};
use okounkov_core::{
    delta_k, lowest_term_valuation, okounkov_body, pushforward_lebesgue, AffineForm, DensityPiece,
    FiniteSemigroup, Measure, MultiIndex, NormalCone, PlFunction, Polynomial, Polytope, Rational,
    ToricTc,
};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn lattice_polygon() -> impl Strategy<Value = Polytope> {
    prop::collection::vec((0i64..5, 0i64..5), 3..7).prop_filter_map("degenerate", |pts| {
        let pts: Vec<Vec<Rational>> = pts.iter().map(|&(x, y)| vec![qi(x), qi(y)]).collect();
        let p = Polytope::from_vertices(2, &pts).ok()?;
        p.is_full_dimensional().then_some(p)
    })
}

fn pieces(dim: usize) -> impl Strategy<Value = Vec<AffineForm<Rational>>> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..4, dim), -4i64..8),
        1..4,
    )
    .prop_map(|raw| {
        raw.into_iter()
            .map(|(a, b)| AffineForm::new(a.into_iter().map(qi).collect(), qi(b)))
            .collect()
    })
}

fn pl_on_polygon() -> impl Strategy<Value = PlFunction> {
    (lattice_polygon(), pieces(2)).prop_map(|(p, f)| PlFunction::new(p, f).unwrap())
}

/// Same function shifted up so its minimum is zero.
fn nonnegative(g: &PlFunction) -> PlFunction {
    let m = g.min_value();
    let pieces = g
        .pieces()
        .iter()
        .map(|p| AffineForm::new(p.coeffs.clone(), &p.constant - &m))
        .collect();
    PlFunction::new(g.domain().clone(), pieces).unwrap()
}

/// Convex polygon vertices in counterclockwise order around the centroid.
fn ccw(vertices: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = qi(vertices.len() as i64);
    let cx: Rational = vertices.iter().map(|v| v[0].clone()).sum::<Rational>() / &n;
    let cy: Rational = vertices.iter().map(|v| v[1].clone()).sum::<Rational>() / &n;
    let mut v = vertices.to_vec();
    v.sort_by(|a, b| {
        let (ax, ay) = (&a[0] - &cx, &a[1] - &cy);
        let (bx, by) = (&b[0] - &cx, &b[1] - &cy);
        let half = |x: &Rational, y: &Rational| y.is_negative() || (y.is_zero() && x.is_negative());
        half(&ax, &ay)
            .cmp(&half(&bx, &by))
            .then_with(|| (&bx * &ay).cmp(&(&ax * &by)))
    });
    v
}

/// `int_P g^r` by fan triangulation of each linearity cell and the exact
/// simplex formula `int_S l^r = r! n! vol(S) / (n + r)! * h_r(l(v_0), ..)`.
fn integral_of_power(g: &PlFunction, r: u32) -> Rational {
    let complete_homogeneous = |vals: &[Rational], r: u32| -> Rational {
        fn go(vals: &[Rational], r: u32) -> Rational {
            match (vals.split_first(), r) {
                (_, 0) => qi(1),
                (None, _) => qi(0),
                (Some((v, rest)), r) => {
                    (0..=r).map(|i| num_traits::pow(v.clone(), i as usize) * go(rest, r - i)).sum()
                }
            }
        }
        go(vals, r)
    };
    let fact = |n: u32| qi((1..=n as i64).product());
    let mut total = qi(0);
    for cell in g.cells() {
        let verts = cell.region.vertices();
        if verts.len() < 3 {
            continue;
        }
        let piece = &g.pieces()[cell.piece];
        let v = ccw(verts);
        for i in 1..v.len() - 1 {
            let tri = [&v[0], &v[i], &v[i + 1]];
            let area = ((&tri[1][0] - &tri[0][0]) * (&tri[2][1] - &tri[0][1])
                - (&tri[2][0] - &tri[0][0]) * (&tri[1][1] - &tri[0][1]))
                .abs()
                / qi(2);
            let vals: Vec<Rational> = tri.iter().map(|p| piece.eval(p)).collect();
            total += area * fact(r) * fact(2) / fact(r + 2) * complete_homogeneous(&vals, r);
        }
    }
    total
}

fn small_measure() -> impl Strategy<Value = Measure> {
    let atoms = prop::collection::vec((-6i64..6, 1i64..4), 0..4);
    let pieces = prop::collection::vec((-6i64..6, 1i64..4, 0i64..3, 0i64..3), 0..3);
    (atoms, pieces).prop_filter_map("overlap", |(atoms, pieces)| {
        let atoms = atoms.into_iter().map(|(l, m)| (q(l, 2), q(m, 2))).collect();
        let pieces = pieces
            .into_iter()
            .map(|(lo, w, c0, c1)| DensityPiece {
                lo: q(lo, 2),
                hi: q(lo + w, 2),
                density: Polynomial::new(vec![qi(c0), qi(c1)]),
            })
            .collect();
        Measure::new(atoms, pieces).ok()
    })
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn ehrhart_interpolation_predicts_counts(p in lattice_polygon()) {
        let counts: Vec<Rational> =
            (1..=3).map(|k| qi(p.dilate(&qi(k)).unwrap().count_lattice_points() as i64)).collect();
        let nodes: Vec<Rational> = (1..=3).map(qi).collect();
        let ehrhart = Polynomial::interpolate(&nodes, &counts);
        prop_assert_eq!(ehrhart.leading(), p.volume());
        prop_assert_eq!(ehrhart.eval(&qi(0)), qi(1));
        for k in [4i64, 7, 20] {
            let count = qi(p.dilate(&qi(k)).unwrap().count_lattice_points() as i64);
            prop_assert_eq!(ehrhart.eval(&qi(k)), count);
        }
    }

    #[test]
    fn lattice_points_match_bounding_box_scan(p in lattice_polygon(), k in 1i64..4) {
        let kp = p.dilate(&q(2 * k + 1, 2)).unwrap();
        let brute = (-1..=4 * k + 4)
            .flat_map(|x| (-1..=4 * k + 4).map(move |y| vec![x, y]))
            .filter(|a| kp.contains(&[qi(a[0]), qi(a[1])]))
            .collect::<Vec<_>>();
        prop_assert_eq!(kp.lattice_points(), brute);
    }

    #[test]
    fn volume_scales_and_minkowski_sums_contain_sums(p in lattice_polygon(), r in lattice_polygon(), k in 1i64..5) {
        prop_assert_eq!(p.dilate(&qi(k)).unwrap().volume(), p.volume() * qi(k * k));
        let s = p.minkowski_sum(&r).unwrap();
        for a in p.vertices() {
            for b in r.vertices() {
                let c: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                prop_assert!(s.contains(&c));
            }
        }
        prop_assert!(s.volume() >= p.volume() + r.volume());
    }

    #[test]
    fn superlevel_sets_shrink(g in pl_on_polygon(), s in -8i64..8, d in 0i64..6) {
        let lo = g.superlevel_set(&q(s, 2));
        let hi = g.superlevel_set(&q(s + d, 2));
        prop_assert!(hi.is_subset_of(&lo));
        prop_assert!(hi.volume() <= lo.volume());
    }

    #[test]
    fn pushforward_moments_match_simplex_integrals(g in pl_on_polygon()) {
        let m = pushforward_lebesgue(&g).unwrap();
        prop_assert_eq!(m.total_mass(), g.domain().volume());
        for r in 0..=2 {
            prop_assert_eq!(m.moment(r), integral_of_power(&g, r));
        }
        prop_assert!(m.dh_structure_check(2));
    }

    #[test]
    fn pushforward_tail_is_superlevel_volume(g in pl_on_polygon(), t in -16i64..16) {
        let m = pushforward_lebesgue(&g).unwrap();
        let t = q(t, 3);
        prop_assert_eq!(m.tail(&t), g.superlevel_set(&t).volume());
    }

    #[test]
    fn envelope_of_exact_samples_is_the_function(g in pl_on_polygon()) {
        let mut samples = Vec::new();
        for v in g.subdivision_vertices() {
            let h = g.eval(&v);
            samples.push((v, h));
        }
        let env = PlFunction::upper_envelope(g.domain().clone(), &samples).unwrap();
        for (x, h) in &samples {
            prop_assert_eq!(&env.eval(x), h);
        }
        if let Some(c) = g.domain().centroid() {
            prop_assert_eq!(env.eval(&c), g.eval(&c));
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn tail_is_monotone_with_correct_limits(m in small_measure(), s in -20i64..20, d in 0i64..10) {
        let (a, b) = (q(s, 3), q(s + d, 3));
        prop_assert!(m.tail(&b) <= m.tail(&a));
        prop_assert_eq!(m.tail(&qi(-100)), m.total_mass());
        prop_assert_eq!(m.tail(&qi(100)), qi(0));
        prop_assert!(m.tail_right(&a) <= m.tail(&a));
    }

    #[test]
    fn layer_cake(m in small_measure()) {
        let support_nonnegative = m.atoms().iter().all(|(l, _)| !l.is_negative())
            && m.pieces().iter().all(|p| !p.lo.is_negative());
        prop_assume!(support_nonnegative);
        let mut cuts = vec![qi(0)];
        cuts.extend(m.breakpoints());
        cuts.sort();
        cuts.dedup();
        let mut area = qi(0);
        for w in cuts.windows(2) {
            // tail is a polynomial of degree <= 2 on the open interval
            let nodes: Vec<Rational> =
                (1..=3).map(|i| &w[0] + (&w[1] - &w[0]) * q(i, 4)).collect();
            let values: Vec<Rational> = nodes.iter().map(|t| m.tail(t)).collect();
            area += Polynomial::interpolate(&nodes, &values).integrate(&w[0], &w[1]);
        }
        prop_assert_eq!(m.moment(1), area);
    }

    #[test]
    fn kolmogorov_is_a_metric(a in small_measure(), b in small_measure(), c in small_measure()) {
        prop_assert_eq!(a.kolmogorov_distance(&a), qi(0));
        let ab = a.kolmogorov_distance(&b);
        prop_assert_eq!(&ab, &b.kolmogorov_distance(&a));
        prop_assert!(ab <= a.kolmogorov_distance(&c) + c.kolmogorov_distance(&b));
        if ab.is_zero() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn kolmogorov_dominates_grid_oracle(a in small_measure(), b in small_measure()) {
        let d = a.kolmogorov_distance(&b);
        let grid = (-80..=80).map(|i| q(i, 12));
        for t in grid {
            prop_assert!((a.tail(&t) - b.tail(&t)).abs() <= d);
        }
        // gaps at breakpoints, their right limits and below all mass
        let mut best = (a.total_mass() - b.total_mass()).abs();
        for t in a.breakpoints().iter().chain(b.breakpoints().iter()) {
            best = best.max((a.tail(t) - b.tail(t)).abs());
            best = best.max((a.tail_right(t) - b.tail_right(t)).abs());
        }
        prop_assert!(best <= d);
    }
}

type Sparse = BTreeMap<Vec<u32>, i64>;

fn sparse_poly() -> impl Strategy<Value = Sparse> {
    prop::collection::btree_map(
        prop::collection::vec(0u32..4, 3),
        prop_oneof![-5i64..0, 1i64..6],
        1..6,
    )
}

fn multiply(s: &Sparse, t: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (a, x) in s {
        for (b, y) in t {
            let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
            *out.entry(e).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn terms(s: &Sparse) -> Vec<(MultiIndex, Rational)> {
    s.iter().map(|(e, &c)| (MultiIndex(e.clone()), qi(c))).collect()
}

fn generator_set() -> impl Strategy<Value = FiniteSemigroup> {
    prop::collection::vec((0i64..3, 0i64..3, 1i64..3), 1..4)
        .prop_map(|g| FiniteSemigroup::new(3, g.into_iter().map(|(a, b, c)| vec![a, b, c]).collect()).unwrap())
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn valuation_is_additive(s in sparse_poly(), t in sparse_poly()) {
        let vs = lowest_term_valuation(&terms(&s)).unwrap();
        let vt = lowest_term_valuation(&terms(&t)).unwrap();
        let vst = lowest_term_valuation(&terms(&multiply(&s, &t))).unwrap();
        prop_assert_eq!(vst, &vs + &vt);
    }

    #[test]
    fn delta_k_sits_in_the_body_and_adds(s in generator_set(), k in 1u32..4, m in 1u32..4) {
        let body: Polytope = okounkov_body(&s).unwrap();
        let dk = delta_k::<Rational>(&s, k).unwrap();
        let dm = delta_k::<Rational>(&s, m).unwrap();
        let dkm = delta_k::<Rational>(&s, k + m).unwrap();
        let (kk, mm, km) = (qi(k as i64), qi(m as i64), qi((k + m) as i64));
        for a in &dk {
            prop_assert!(body.contains(a));
            for b in &dm {
                let c: Vec<Rational> = a.iter().zip(b).map(|(x, y)| (x * &kk + y * &mm) / &km).collect();
                prop_assert!(dkm.binary_search(&c).is_ok());
            }
        }
    }

    #[test]
    fn toric_level_counts_are_lattice_counts(p in lattice_polygon(), k in 1u32..4) {
        let s = FiniteSemigroup::toric(&p).unwrap();
        let body: Polytope = okounkov_body(&s).unwrap();
        prop_assert_eq!(&body, &p);
        let count = p.dilate(&qi(k as i64)).unwrap().count_lattice_points();
        prop_assert_eq!(delta_k::<Rational>(&s, k).unwrap().len(), count);
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn toric_filtration_invariants(g in pl_on_polygon()) {
        let g = nonnegative(&g);
        prop_assume!(g.domain().is_integral());
        let t = ToricTc::new(g, None).unwrap();
        let f = t.toric_filtration(4).unwrap();
        prop_assert!(f.check_admissible(4).unwrap().passed());
        for k in 1..=4u32 {
            let kk = qi(k as i64);
            let nu = f.nu_measure(k).unwrap();
            prop_assert_eq!(&nu, &t.weight_measure(k).unwrap().normalized);
            prop_assert_eq!(nu.total_mass() * kk.clone() * kk.clone(), qi(f.full_dimension(k).unwrap() as i64));
            let (lo, hi) = (nu.atoms().first().unwrap().0.clone(), nu.atoms().last().unwrap().0.clone());
            prop_assert!(hi <= *f.bound() && lo >= -f.bound().clone());
            for (x, w) in f.gk_function(k).unwrap().values {
                let g = t.g().eval(&x);
                let s = qi(w) / &kk;
                prop_assert!(s <= g && &g - &s < qi(1) / &kk);
            }
            // jumps of t -> dim F_t are the atoms of k^n nu rescaled by k
            for (loc, mass) in nu.atoms() {
                let eta = loc * &kk;
                let jump = f.dim_filtration(k, &eta).unwrap() - f.dim_filtration(k, &(&eta + qi(1))).unwrap();
                prop_assert_eq!(qi(jump as i64), mass * &kk * &kk);
            }
        }
        let est = f.concave_transform_estimate(&[1, 2, 4]).unwrap();
        for (x, h) in &est.samples {
            prop_assert!(est.envelope.eval(x) >= *h);
        }
    }

    #[test]
    fn normal_cone_identities(w in 1i64..4, h in 1i64..4, tri in any::<bool>(), c_num in 1i64..6) {
        let p = if tri {
            Polytope::from_vertices(2, &[vec![qi(0), qi(0)], vec![qi(w), qi(0)], vec![qi(0), qi(h)]]).unwrap()
        } else {
            Polytope::axis_box(&[(qi(0), qi(w)), (qi(0), qi(h))]).unwrap()
        };
        let c = q(c_num, 3);
        prop_assume!(c < qi(w));
        let d = NormalCone::new(p.clone(), 0, c.clone()).unwrap();
        let m = d.normal_cone_pushforward();
        prop_assert_eq!(&m, &pushforward_lebesgue(&d.normal_cone_transform()).unwrap());
        prop_assert_eq!(m.total_mass(), p.volume());
        prop_assert!(m.dh_structure_check(2));
        for j in 0..=4 {
            prop_assert!(d.slice_check(&(&c * q(j, 4))).unwrap());
        }
        let nf = d.normal_cone_filtration(6).unwrap();
        for k in nf.filtration.degrees() {
            let ck = (&c * qi(k as i64)).to_integer().try_into().unwrap_or(i64::MAX);
            prop_assert!(nf.filtration.level(k).unwrap().values().all(|&x| (-ck..=0).contains(&x)));
            for eta in -ck - 1..=1 {
                prop_assert_eq!(
                    nf.filtration.dim_filtration(k, &qi(eta)).unwrap(),
                    d.vanishing_dimension(k, eta).unwrap()
                );
            }
        }
    }
}
