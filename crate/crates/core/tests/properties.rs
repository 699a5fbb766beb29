mod common;

use nalgebra::DMatrix;
use nilgraph::algebra::{CenterVector, GraphLieAlgebra};
use nilgraph::exact::{determinant, int, pfaffian, Rational};
use nilgraph::geodesic::{first_hit_jacobian, InitialVelocity, JacobianOptions, PeriodMode};
use nilgraph::graph::named::{k3, p3, star};
use nilgraph::graph::DirectedGraph;
use nilgraph::lattice::{exact_first_hit, LatticeCandidate, RationalVelocity, StandardLattice};
use nilgraph::spectral::{skew_spectrum, DEFAULT_CLUSTER_TOL};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = DirectedGraph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let m = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(0u8..3, m))
        })
        .prop_map(|(n, picks)| {
            // 0: no edge, 1: i -> j, 2: j -> i
            let edges: Vec<(usize, usize)> = common::pairs(n)
                .into_iter()
                .zip(picks)
                .filter_map(|((a, b), p)| match p {
                    1 => Some((a, b)),
                    2 => Some((b, a)),
                    _ => None,
                })
                .collect();
            DirectedGraph::new(n, &edges).unwrap()
        })
}

fn nonempty_graph(max_n: usize) -> impl Strategy<Value = DirectedGraph> {
    graph_strategy(max_n).prop_filter("at least one edge", |g| g.edge_count() > 0)
}

fn brute_force_matching(g: &DirectedGraph) -> bool {
    fn go(g: &DirectedGraph, used: &mut Vec<bool>) -> bool {
        let Some(v) = used.iter().position(|u| !u) else {
            return true;
        };
        used[v] = true;
        for w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                if go(g, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        used[v] = false;
        false
    }
    g.vertex_count().is_multiple_of(2) && go(g, &mut vec![false; g.vertex_count()])
}

fn random_center(g: &DirectedGraph, coeffs: &[f64]) -> CenterVector {
    CenterVector(coeffs.iter().take(g.edge_count()).copied().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matching_agrees_with_brute_force(g in graph_strategy(10)) {
        let found = g.perfect_matching();
        prop_assert_eq!(found.is_some(), brute_force_matching(&g));
        if let Some(m) = found {
            prop_assert!(m.is_perfect_for(&g));
        }
    }

    #[test]
    fn stars_have_no_path_of_length_three(n in 1usize..9) {
        prop_assert!(star(n).contains_path3().is_none());
    }

    #[test]
    fn path_of_length_three_is_a_path(g in graph_strategy(8)) {
        if let Some([a, b, c, d]) = g.contains_path3() {
            prop_assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d));
        }
    }

    #[test]
    fn components_partition_the_vertices(g in graph_strategy(9)) {
        let comps = g.connected_components();
        let mut seen: Vec<usize> = comps.iter().flat_map(|(_, vs)| vs.iter().copied()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.vertex_count()).collect::<Vec<_>>());
        let edges: usize = comps.iter().map(|(c, _)| c.edge_count()).sum();
        prop_assert_eq!(edges, g.edge_count());
        for (c, _) in &comps {
            prop_assert!(c.is_connected());
        }
    }

    #[test]
    fn determinant_is_pfaffian_squared(
        g in nonempty_graph(8).prop_filter("even", |g| g.vertex_count() % 2 == 0),
        coeffs in proptest::collection::vec(-5i64..=5, 28),
    ) {
        let alg = GraphLieAlgebra::new(g.clone()).unwrap();
        let z: Vec<Rational> = coeffs.iter().take(g.edge_count()).map(|&c| int(c)).collect();
        let j = alg.j_matrix(&CenterVector(z));
        let pf = pfaffian(&j).unwrap();
        prop_assert_eq!(&pf * &pf, determinant(&j).unwrap());
    }

    #[test]
    fn reversing_an_edge_negates_its_coefficient(
        g in nonempty_graph(7),
        coeffs in proptest::collection::vec(-2.0f64..2.0, 21),
        pick in 0usize..21,
    ) {
        let k = pick % g.edge_count();
        let z = random_center(&g, &coeffs);
        let mut flipped = z.clone();
        flipped.0[k] = -flipped.0[k];
        let a = GraphLieAlgebra::new(g.clone()).unwrap();
        let b = GraphLieAlgebra::new(g.with_reversed_edge(k)).unwrap();
        prop_assert_eq!(a.j_matrix(&flipped), b.j_matrix(&z));
        let sa = nilgraph::spectral::singular_values(&a.j_matrix(&flipped));
        let sb = nilgraph::spectral::singular_values(&b.j_matrix(&z));
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn decomposition_is_orthogonal_with_even_blocks(
        g in nonempty_graph(7),
        coeffs in proptest::collection::vec(-2.0f64..2.0, 21),
    ) {
        let a = GraphLieAlgebra::new(g.clone()).unwrap();
        let z = random_center(&g, &coeffs);
        let Ok(dec) = skew_spectrum(&a.j_matrix(&z), DEFAULT_CLUSTER_TOL) else {
            return Ok(());
        };
        let n = g.vertex_count();
        prop_assert_eq!((n - dec.kernel_dim()) % 2, 0);
        let mut total = dec.kernel_projector();
        for k in 0..dec.blocks.len() {
            let p = dec.block_projector(k);
            prop_assert!((&p * &p - &p).norm() < 1e-9);
            prop_assert!((&p * dec.kernel_projector()).norm() < 1e-9);
            total += p;
        }
        prop_assert!((total - DMatrix::<f64>::identity(n, n)).norm() < 1e-9);
        prop_assert!((dec.reconstruct() - a.j_matrix(&z)).norm() < 1e-9 * (1.0 + a.j_matrix(&z).norm()));
    }

    #[test]
    fn frequencies_scale_with_z(
        g in nonempty_graph(7),
        coeffs in proptest::collection::vec(-2.0f64..2.0, 21),
        c in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0],
    ) {
        let a = GraphLieAlgebra::new(g.clone()).unwrap();
        let z = random_center(&g, &coeffs);
        let (Ok(d1), Ok(d2)) = (
            skew_spectrum(&a.j_matrix(&z), DEFAULT_CLUSTER_TOL),
            skew_spectrum(&a.j_matrix(&z.scale(&c)), DEFAULT_CLUSTER_TOL),
        ) else {
            return Ok(());
        };
        prop_assert_eq!(d1.multiplicities(), d2.multiplicities());
        prop_assert_eq!(d1.kernel_dim(), d2.kernel_dim());
        for (x, y) in d1.frequencies().iter().zip(d2.frequencies()) {
            prop_assert!((x * c.abs() - y).abs() < 1e-9 * (1.0 + y));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn jacobian_rank_is_stable_in_the_step(
        coords in proptest::collection::vec(prop_oneof![-1.5f64..-0.3, 0.3f64..1.5], 5),
        step_exp in -7.0f64..-4.0,
        frozen in any::<bool>(),
    ) {
        let a = GraphLieAlgebra::new(p3()).unwrap();
        let xi = InitialVelocity::from_coordinates(&a, &coords).unwrap();
        let mode = if frozen { PeriodMode::Frozen } else { PeriodMode::Tracking };
        let reference = first_hit_jacobian(&a, &xi, JacobianOptions { mode, ..Default::default() }).unwrap();
        let j = first_hit_jacobian(&a, &xi, JacobianOptions { mode, step: 10f64.powf(step_exp), ..Default::default() }).unwrap();
        prop_assert_eq!(j.rank, reference.rank);
    }

    #[test]
    fn first_closed_hit_is_minimal(
        which in 0usize..3,
        xs in proptest::collection::vec((-3i64..=3, 1i64..=3), 5),
        ts in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let g = [star(3), star(4), k3()][which].clone();
        let a = GraphLieAlgebra::new(g).unwrap();
        let mut ts = ts.into_iter();
        // rational unit vector from integer stereographic coordinates
        let t: Vec<Rational> = (0..a.dim_z() - 1).map(|_| int(ts.next().unwrap_or(1))).collect();
        let tt = t.iter().fold(Rational::zero(), |acc, x| acc + x * x);
        let d = int(1) + &tt;
        let mut z: Vec<Rational> = t.iter().map(|x| int(2) * x / &d).collect();
        z.push((int(1) - &tt) / &d);
        let x: Vec<Rational> = xs.iter().take(a.dim_v()).map(|&(p, q)| Rational::new(p.into(), q.into())).collect();
        let xi = RationalVelocity::from_parts(x, z);
        let Ok((first, m, _)) = exact_first_hit(&a, &xi) else {
            return Ok(());
        };
        let lattice = StandardLattice::new(&a);
        let mm = m.to_u64().unwrap();
        prop_assume!(mm <= 200);
        let at = |k: u64| LatticeCandidate::TwoPiMultiple(first.scale(&Rational::from_integer(BigInt::from(k))));
        prop_assert!(lattice.contains(&at(mm)).unwrap());
        for k in 1..mm {
            prop_assert!(!lattice.contains(&at(k)).unwrap(), "k = {} below m = {}", k, mm);
        }
    }
}
