#![allow(dead_code)]

use okounkov_core::{
    AffineForm, FiniteSemigroup, NormalCone, PlFunction, Polytope, Rational, Scalar, ToricTc,
};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

pub fn qi(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn interval(lo: i64, hi: i64) -> Polytope {
    Polytope::axis_box(&[(qi(lo), qi(hi))]).unwrap()
}

pub fn two_by_one() -> Polytope {
    Polytope::axis_box(&[(qi(0), qi(2)), (qi(0), qi(1))]).unwrap()
}

pub fn shipped_polygons() -> Vec<(&'static str, Polytope)> {
    vec![
        ("unit square", Polytope::unit_cube(2)),
        ("standard triangle", Polytope::standard_simplex(2)),
        ("[0,2]x[0,1]", two_by_one()),
    ]
}

/// `g = 1 - x` on `[0, 1]`.
pub fn one_minus_x() -> ToricTc {
    let g = PlFunction::new(Polytope::unit_cube(1), vec![AffineForm::new(vec![qi(-1)], qi(1))]);
    ToricTc::new(g.unwrap(), None).unwrap()
}

/// `g = min(1, 2 - x - y)` on the unit square.
pub fn square_roof() -> ToricTc {
    let g = PlFunction::new(
        Polytope::unit_cube(2),
        vec![
            AffineForm::constant_form(2, qi(1)),
            AffineForm::new(vec![qi(-1), qi(-1)], qi(2)),
        ],
    );
    ToricTc::new(g.unwrap(), None).unwrap()
}

pub fn shipped_toric() -> Vec<(&'static str, ToricTc)> {
    vec![("1-x on [0,1]", one_minus_x()), ("min(1,2-x-y) on square", square_roof())]
}

pub fn segment_nc() -> NormalCone {
    NormalCone::new(interval(0, 2), 0, qi(1)).unwrap()
}

pub fn square_nc() -> NormalCone {
    NormalCone::new(Polytope::unit_cube(2), 0, q(1, 2)).unwrap()
}

pub fn shipped_normal_cone() -> Vec<(&'static str, NormalCone)> {
    vec![("[0,2], c=1", segment_nc()), ("square, c=1/2", square_nc())]
}

/// Generator sets with their expected bodies.
pub fn shipped_semigroups() -> Vec<(FiniteSemigroup, Polytope)> {
    let sg = |gens: &[&[i64]]| {
        FiniteSemigroup::new(gens[0].len(), gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    };
    let point = Polytope::from_vertices(1, &[vec![qi(0)]]).unwrap();
    vec![
        (sg(&[&[0, 1], &[1, 1]]), Polytope::unit_cube(1)),
        (sg(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]), Polytope::standard_simplex(2)),
        (sg(&[&[0, 1]]), point),
    ]
}

/// Degree-`n` polynomial through `(k, L(k))` for `k = 1..=n+1`, leading
/// coefficient by the `n`-th forward difference over `n!`.
pub fn ehrhart_leading_coefficient(p: &Polytope) -> Rational {
    let n = p.dim();
    let counts: Vec<Rational> = (1..=n as i64 + 1)
        .map(|k| qi(p.dilate(&qi(k)).unwrap().count_lattice_points() as i64))
        .collect();
    let mut diffs = counts;
    for _ in 0..n {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let fact: i64 = (1..=n as i64).product();
    &diffs[0] / qi(fact)
}
