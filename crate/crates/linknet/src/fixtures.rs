//! Canonical nets used across the test suite and shipped as JSON files:
//! the two-generator segment net SEG2, the triangle net TRI3, the five
//! two-generator and three-generator patterns over ℤ²-quivers, and an
//! exact singleton-generated net.

use crate::linalg::{qmat, Field, Matrix, PrimeField, Rationals};
use crate::net::NetPresentation;
use crate::zquiver::Vertex;
use std::collections::BTreeMap;

pub fn v(coords: &[i64]) -> Vertex {
    Vertex::normalize(coords)
}

/// SEG2: n = 1, dimension 2, generators u = (0,0) and v = (1,0);
/// phi^u_v kills the second basis vector, phi^v_u the first.
pub fn seg2() -> NetPresentation<Rationals> {
    let hull = vec![v(&[0, 0]), v(&[1, 0])];
    let dims = vec![2, 2];
    let mut cross = BTreeMap::new();
    cross.insert((0, 1), qmat(vec![vec![1, 0], vec![0, 0]]));
    cross.insert((1, 0), qmat(vec![vec![0, 0], vec![0, 1]]));
    NetPresentation::new(Rationals, 1, hull, dims, cross).expect("SEG2 is a valid presentation")
}

/// TRI3: n = 2, dimension 3, generated by the triangle
/// (0,0,0), (1,0,0), (1,1,0) with one simple summand per vertex.
/// The cyclic maps are the diagonal matrices M0, M1, M2 with a single
/// zero at the position of the summand generated at the arrival vertex.
pub fn tri3() -> NetPresentation<Rationals> {
    let hull = vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])];
    let dims = vec![3, 3, 3];
    let m0 = qmat(vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]);
    let m1 = qmat(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]);
    let m2 = qmat(vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let mut cross = BTreeMap::new();
    cross.insert((0, 1), m0.clone());
    cross.insert((1, 2), m1.clone());
    cross.insert((2, 0), m2.clone());
    cross.insert((0, 2), m1.compose(&m0).unwrap());
    cross.insert((1, 0), m2.compose(&m1).unwrap());
    cross.insert((2, 1), m0.compose(&m2).unwrap());
    NetPresentation::new(Rationals, 2, hull, dims, cross).expect("TRI3 is a valid presentation")
}

/// An exact simple net over a ℤⁿ-quiver, generated by a single vertex.
pub fn exact_simple(n: usize, generator: &[i64]) -> NetPresentation<Rationals> {
    NetPresentation::new(Rationals, n, vec![v(generator)], vec![1], BTreeMap::new())
        .expect("singleton presentation is valid")
}

/// A simple net minimally generated by the given polygon: dimensions 1
/// on the polygon, all cross maps zero. Expansion reproduces the
/// strip/cone patterns of the five classified configurations.
pub fn simple_polygon_net(n: usize, polygon: &[Vertex]) -> NetPresentation<Rationals> {
    let k = polygon.len();
    let mut cross = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                cross.insert((i, j), Matrix::zero(Rationals, 1, 1));
            }
        }
    }
    NetPresentation::new(Rationals, n, polygon.to_vec(), vec![1; k], cross)
        .expect("polygon presentation is valid")
}

/// Type I: segment joined by a single type-0 arrow.
pub fn type_i() -> NetPresentation<Rationals> {
    simple_polygon_net(2, &[v(&[0, 0, 0]), v(&[1, 0, 0])])
}

/// Type II: segment joined by a single type-1 arrow, anchored so the
/// generators are (0,0,0) and (1,0,1), matching the reference diagram.
pub fn type_ii() -> NetPresentation<Rationals> {
    simple_polygon_net(2, &[v(&[0, 0, 0]), v(&[1, 0, 1])])
}

/// Type III: segment joined by a single type-2 arrow.
pub fn type_iii() -> NetPresentation<Rationals> {
    simple_polygon_net(2, &[v(&[0, 0, 0]), v(&[0, 0, 1])])
}

/// Type IV: counterclockwise triangle (types 0, 1, 2 around the cycle).
pub fn type_iv() -> NetPresentation<Rationals> {
    simple_polygon_net(2, &[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])])
}

/// Type V: clockwise triangle (types 0, 2, 1 around the cycle).
pub fn type_v() -> NetPresentation<Rationals> {
    simple_polygon_net(2, &[v(&[0, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])])
}

/// The reference arrow colors of the five configuration diagrams: per
/// fixture, (arrow source, arrow type, color), red meaning the zero map
/// and blue a nonzero one. Coordinates are anchored at the lower orange
/// generator of each diagram.
pub fn figure_color_data() -> Vec<(&'static str, Vec<(Vec<i64>, usize, &'static str)>)> {
    fn e(c: [i64; 3], t: usize, color: &'static str) -> (Vec<i64>, usize, &'static str) {
        (c.to_vec(), t, color)
    }
    vec![
        (
            "type_i",
            vec![
                e([1, 1, 0], 2, "red"),
                e([1, 2, 0], 2, "red"),
                e([0, 2, 0], 0, "red"),
                e([0, 1, 0], 0, "red"),
                e([0, 0, 0], 0, "red"),
                e([0, 0, 1], 0, "red"),
                e([0, 0, 2], 0, "red"),
                e([1, 0, 1], 1, "red"),
                e([1, 0, 2], 1, "red"),
                e([1, 0, 1], 2, "blue"),
                e([0, 0, 0], 2, "blue"),
                e([1, 0, 0], 2, "blue"),
                e([0, 0, 1], 2, "blue"),
                e([1, 1, 0], 1, "blue"),
                e([1, 0, 0], 1, "blue"),
                e([0, 0, 0], 1, "blue"),
                e([0, 1, 0], 1, "blue"),
                e([1, 0, 0], 0, "blue"),
            ],
        ),
        (
            "type_ii",
            vec![
                e([1, 0, 0], 2, "red"),
                e([2, 0, 0], 2, "red"),
                e([0, 0, 1], 0, "red"),
                e([0, 0, 2], 0, "red"),
                e([1, 0, 1], 1, "red"),
                e([1, 0, 2], 1, "red"),
                e([1, 0, 3], 1, "red"),
                e([2, 0, 1], 1, "red"),
                e([3, 0, 1], 1, "red"),
                e([1, 0, 1], 2, "blue"),
                e([1, 0, 2], 2, "blue"),
                e([0, 0, 0], 2, "blue"),
                e([0, 0, 1], 2, "blue"),
                e([0, 0, 0], 1, "blue"),
                e([1, 0, 1], 0, "blue"),
                e([2, 0, 1], 0, "blue"),
                e([0, 0, 0], 0, "blue"),
                e([1, 0, 0], 0, "blue"),
            ],
        ),
        (
            "type_iii",
            vec![
                e([1, 0, 0], 2, "red"),
                e([2, 0, 0], 2, "red"),
                e([0, 0, 0], 2, "red"),
                e([0, 1, 0], 2, "red"),
                e([0, 2, 0], 2, "red"),
                e([0, 2, 1], 0, "red"),
                e([0, 1, 1], 0, "red"),
                e([1, 0, 1], 1, "red"),
                e([2, 0, 1], 1, "red"),
                e([0, 0, 1], 2, "blue"),
                e([0, 0, 0], 1, "blue"),
                e([0, 1, 0], 1, "blue"),
                e([0, 0, 1], 1, "blue"),
                e([0, 1, 1], 1, "blue"),
                e([0, 0, 1], 0, "blue"),
                e([1, 0, 1], 0, "blue"),
                e([0, 0, 0], 0, "blue"),
                e([1, 0, 0], 0, "blue"),
            ],
        ),
        (
            "type_iv",
            vec![
                e([3, 1, 0], 2, "red"),
                e([1, 3, 0], 2, "red"),
                e([2, 1, 0], 2, "red"),
                e([1, 1, 0], 2, "red"),
                e([1, 2, 0], 2, "red"),
                e([0, 2, 0], 0, "red"),
                e([0, 1, 0], 0, "red"),
                e([0, 0, 0], 0, "red"),
                e([0, 0, 1], 0, "red"),
                e([0, 0, 2], 0, "red"),
                e([3, 0, 0], 1, "red"),
                e([2, 0, 0], 1, "red"),
                e([1, 0, 0], 1, "red"),
                e([1, 0, 1], 1, "red"),
                e([1, 0, 2], 1, "red"),
                e([1, 0, 1], 2, "blue"),
                e([0, 0, 0], 2, "blue"),
                e([1, 0, 0], 2, "blue"),
                e([0, 0, 1], 2, "blue"),
                e([1, 1, 0], 1, "blue"),
                e([1, 2, 0], 1, "blue"),
                e([0, 0, 0], 1, "blue"),
                e([0, 1, 0], 1, "blue"),
                e([2, 1, 0], 0, "blue"),
                e([1, 1, 0], 0, "blue"),
                e([2, 0, 0], 0, "blue"),
                e([1, 0, 0], 0, "blue"),
            ],
        ),
        (
            "type_v",
            vec![
                e([3, 1, 0], 2, "red"),
                e([2, 1, 0], 2, "red"),
                e([1, 2, 0], 2, "red"),
                e([1, 1, 0], 2, "red"),
                e([1, 3, 0], 2, "red"),
                e([0, 3, 0], 0, "red"),
                e([0, 2, 0], 0, "red"),
                e([0, 1, 1], 0, "red"),
                e([0, 1, 2], 0, "red"),
                e([0, 1, 0], 0, "red"),
                e([2, 0, 0], 1, "red"),
                e([1, 0, 0], 1, "red"),
                e([0, 0, 0], 1, "red"),
                e([0, 0, 1], 1, "red"),
                e([0, 0, 2], 1, "red"),
                e([0, 0, 1], 2, "blue"),
                e([0, 1, 1], 2, "blue"),
                e([0, 0, 0], 2, "blue"),
                e([0, 1, 0], 2, "blue"),
                e([0, 1, 0], 1, "blue"),
                e([0, 2, 0], 1, "blue"),
                e([1, 2, 0], 1, "blue"),
                e([1, 1, 0], 1, "blue"),
                e([1, 1, 0], 0, "blue"),
                e([0, 0, 0], 0, "blue"),
                e([1, 0, 0], 0, "blue"),
                e([2, 1, 0], 0, "blue"),
            ],
        ),
    ]
}

/// The five figure fixtures by name, matching [`figure_color_data`].
pub fn figure_fixture(name: &str) -> NetPresentation<Rationals> {
    match name {
        "type_i" => type_i(),
        "type_ii" => type_ii(),
        "type_iii" => type_iii(),
        "type_iv" => type_iv(),
        "type_v" => type_v(),
        other => panic!("unknown figure fixture {other}"),
    }
}

/// Reduce a rational presentation modulo p; entries must be integral
/// at p (true for every fixture in this module).
pub fn presentation_mod_p(
    pres: &NetPresentation<Rationals>,
    f: PrimeField,
) -> NetPresentation<PrimeField> {
    let cross: BTreeMap<(usize, usize), Matrix<PrimeField>> = pres
        .cross
        .iter()
        .map(|(k, m)| {
            (
                *k,
                m.map_entries(f, |e| {
                    let num = f.parse(&e.numer().to_string()).expect("numerator fits");
                    let den = f.parse(&e.denom().to_string()).expect("denominator fits");
                    f.div(&num, &den).expect("entry is p-integral")
                }),
            )
        })
        .collect();
    NetPresentation::new(f, pres.n, pres.hull.clone(), pres.dims.clone(), cross)
        .expect("reduction preserves validity")
}

/// A weakly-linked-net violation: a 1-dimensional net on a minimal
/// circuit whose composite is the identity instead of zero.
pub fn circuit_violation(n: usize) -> crate::net::WindowNet<Rationals> {
    use crate::zquiver::window;
    use std::collections::BTreeSet;
    let seed: BTreeSet<Vertex> = [Vertex::origin(n)].into();
    let win = window(&seed, n + 1);
    let mut dims = BTreeMap::new();
    for u in win.members() {
        dims.insert(u.clone(), 1);
    }
    let mut arrows = BTreeMap::new();
    for u in win.members() {
        for a in 0..=n {
            if win.contains(&u.arrow_target(a)) {
                arrows.insert((u.clone(), a), Matrix::identity(Rationals, 1));
            }
        }
    }
    crate::net::WindowNet::new(Rationals, n, win, dims, arrows).expect("well-shaped")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seg2_axioms() {
        let net = seg2().expand(3).unwrap();
        assert!(net.check_weakly_linked().passed);
        assert!(net.check_linked().passed);
        assert!(net.check_exact().passed);
        assert!(net.check_pure().passed);
    }

    #[test]
    fn tri3_axioms() {
        let net = tri3().expand(3).unwrap();
        assert!(net.check_weakly_linked().passed);
        assert!(net.check_linked().passed);
        assert!(net.check_exact().passed);
        assert!(net.check_pure().passed);
    }

    #[test]
    fn seg2_class_maps() {
        let net = seg2().expand(3).unwrap();
        let u = v(&[0, 0]);
        let w = v(&[1, 0]);
        // u = v gives the identity.
        assert_eq!(net.class_map(&u, &u).unwrap(), Matrix::identity(Rationals, 2));
        // Between the generators, the stored cross map.
        assert_eq!(
            net.class_map(&u, &w).unwrap(),
            qmat(vec![vec![1, 0], vec![0, 0]])
        );
        // The circuit composite vanishes.
        let back = net.class_map(&w, &u).unwrap();
        let forth = net.class_map(&u, &w).unwrap();
        assert!(back.compose(&forth).unwrap().is_zero());
    }

    #[test]
    fn circuit_violation_detected() {
        let bad = circuit_violation(1);
        let report = bad.check_weakly_linked();
        assert!(!report.passed);
        assert!(report.violations.iter().any(|w| w.contains("minimal circuit")));
    }

    #[test]
    fn expansions_reproduce_the_reference_color_patterns() {
        for (name, edges) in figure_color_data() {
            let net = figure_fixture(name).expand(4).unwrap();
            for (from, arrow_type, color) in edges {
                let src = v(&from);
                let m = net
                    .arrow(&src, arrow_type)
                    .unwrap_or_else(|| panic!("{name}: arrow ({src}, {arrow_type}) missing"));
                let expect_zero = color == "red";
                assert_eq!(
                    m.is_zero(),
                    expect_zero,
                    "{name}: arrow ({src}, type {arrow_type}) should be {color}"
                );
            }
        }
    }

    #[test]
    fn seg2_minimal_generators() {
        let net = seg2().expand(3).unwrap();
        let gens = net.minimal_one_generators().unwrap();
        assert_eq!(gens, [v(&[0, 0]), v(&[1, 0])].into());
        // Neither generator alone suffices.
        assert!(!net.is_generated_by(&[v(&[0, 0])].into()));
        assert!(net.is_generated_by(&[v(&[0, 0]), v(&[1, 0])].into()));
    }
}
