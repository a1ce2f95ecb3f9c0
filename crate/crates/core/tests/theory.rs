mod common;

use std::collections::BTreeSet;

use common::{edge_directions, random_pairs, random_point, rng};
use polysum::{
    convex_hull_of_cones, dual_cone, facets_from_refined_cone, is_minkowski_vertex_pair, minkowski_vertex_cone,
    normal_fan, oracle_sum, polar_dual, polyhedral_cap, primal_cone, sum_dual_brute, sum_primal, Polytope,
    Rational, Vector,
};
use rand::Rng;

fn pairs() -> Vec<(Polytope, Polytope)> {
    random_pairs(0x7e, &[(2, 10), (3, 6), (4, 2)])
}

fn argmax_unique(points: &[Vector], u: &Vector) -> Option<Vector> {
    let best = points.iter().map(|p| u.dot(p).unwrap()).max()?;
    let hits: BTreeSet<&Vector> = points.iter().filter(|p| u.dot(p).unwrap() == best).collect();
    (hits.len() == 1).then(|| (*hits.iter().next().unwrap()).clone())
}

#[test]
fn full_dimensional_refinement_marks_sum_vertices() {
    for (a, b) in pairs() {
        let reference = oracle_sum(&a, &b).unwrap();
        for i in 0..a.vertices().len() {
            for j in 0..b.vertices().len() {
                let (ok, _) = is_minkowski_vertex_pair(&a, &b, i, j).unwrap();
                let c = &a.vertices()[i] + &b.vertices()[j];
                assert_eq!(ok, reference.vertex_index(&c).is_some(), "pair ({i}, {j})");
            }
        }
    }
}

#[test]
fn interior_directions_select_the_pair_sum() {
    let mut r = rng(3);
    for (a, b) in pairs() {
        let sums: Vec<Vector> =
            a.vertices().iter().flat_map(|x| b.vertices().iter().map(move |y| x + y)).collect();
        for i in 0..a.vertices().len() {
            for j in 0..b.vertices().len() {
                let (ok, refined) = is_minkowski_vertex_pair(&a, &b, i, j).unwrap();
                if !ok {
                    continue;
                }
                let c = &a.vertices()[i] + &b.vertices()[j];
                for _ in 0..3 {
                    let mut u = Vector::zeros(a.dim());
                    for ray in refined.rays() {
                        u = &u + &ray.scale(&Rational::from_integer(r.gen_range(1..=5).into()));
                    }
                    assert!(refined.contains_direction(&u, true));
                    assert_eq!(argmax_unique(&sums, &u), Some(c.clone()));
                }
            }
        }
    }
}

#[test]
fn facets_of_refined_cones_recover_the_sum() {
    for (a, b) in pairs() {
        let mut facets = BTreeSet::new();
        for i in 0..a.vertices().len() {
            for j in 0..b.vertices().len() {
                let (ok, refined) = is_minkowski_vertex_pair(&a, &b, i, j).unwrap();
                if ok {
                    let c = &a.vertices()[i] + &b.vertices()[j];
                    facets.extend(facets_from_refined_cone(&refined, &c).unwrap());
                }
            }
        }
        let reference = oracle_sum(&a, &b).unwrap();
        assert_eq!(facets.into_iter().collect::<Vec<_>>(), reference.facets().to_vec());
    }
}

#[test]
fn caps_are_nonempty_and_connected() {
    for (a, b) in pairs() {
        let mut covered = BTreeSet::new();
        for i in 0..a.vertices().len() {
            let cap = polyhedral_cap(&a, &b, i).unwrap();
            assert!(!cap.is_empty());
            assert!(cap.is_connected(&b), "cap of {i} is disconnected: {:?}", cap.members);
            covered.extend(cap.members);
        }
        // every vertex of B takes part in some sum vertex
        assert_eq!(covered.len(), b.vertices().len());
    }
}

#[test]
fn hull_cone_is_polar_of_refined_cone() {
    for (a, b) in pairs() {
        let d = sum_dual_brute(&a, &b).unwrap();
        for (c, &(i, j)) in d.sum().vertices().iter().zip(d.witnesses()) {
            let refined = dual_cone(&a, i).unwrap().intersect(&dual_cone(&b, j).unwrap()).unwrap();
            let ca = primal_cone(&a, i).unwrap().translated(c.clone());
            let cb = primal_cone(&b, j).unwrap().translated(c.clone());
            let hull = convex_hull_of_cones(&ca, &cb, c).unwrap();
            assert_eq!(polar_dual(&refined).translated(c.clone()), hull);
            assert_eq!(minkowski_vertex_cone(&a, &b, i, j).unwrap(), hull);
        }
    }
}

#[test]
fn sum_edges_are_parallel_to_summand_edges() {
    for (a, b) in pairs() {
        let d = sum_primal(&a, &b).unwrap();
        let allowed: BTreeSet<Vector> = edge_directions(&a).union(&edge_directions(&b)).cloned().collect();
        for e in edge_directions(d.sum()) {
            assert!(allowed.contains(&e), "edge direction {e} not found in either summand");
        }
        for (&(i, j), c) in d.witnesses().iter().zip(d.sum().vertices()) {
            let hull = minkowski_vertex_cone(&a, &b, i, j).unwrap();
            assert_eq!(hull.apex(), c);
            for ray in hull.rays() {
                assert!(allowed.contains(ray));
            }
        }
    }
}

#[test]
fn sum_is_intersection_of_vertex_cone_sums() {
    let mut r = rng(17);
    for (a, b) in random_pairs(0x17, &[(2, 4), (3, 2)]) {
        let sum = oracle_sum(&a, &b).unwrap();
        let mut cone_sums = Vec::new();
        for i in 0..a.vertices().len() {
            for j in 0..b.vertices().len() {
                let c = &a.vertices()[i] + &b.vertices()[j];
                let ca = primal_cone(&a, i).unwrap().translated(c.clone());
                let cb = primal_cone(&b, j).unwrap().translated(c.clone());
                cone_sums.push(convex_hull_of_cones(&ca, &cb, &c).unwrap());
            }
        }
        for _ in 0..40 {
            let x = random_point(&mut r, a.dim(), 12);
            let in_all = cone_sums.iter().all(|k| k.supports().iter().all(|h| h.contains(&x)));
            assert_eq!(sum.contains(&x), in_all, "point {x}");
        }
    }
}

#[test]
fn normal_fan_covers_directions_and_selects_argmax() {
    let mut r = rng(5);
    for (a, _) in pairs().iter().take(8) {
        let fan = normal_fan(a);
        for _ in 0..250 {
            let u = random_point(&mut r, a.dim(), 10);
            if u.is_zero() {
                continue;
            }
            let hits = fan.locate(&u);
            assert!(!hits.is_empty());
            let strict: Vec<usize> =
                (0..fan.len()).filter(|&k| fan.cone(k).contains_direction(&u, true)).collect();
            let argmax = argmax_unique(a.vertices(), &u);
            match strict.as_slice() {
                [k] => assert_eq!(argmax.as_ref(), Some(&a.vertices()[*k])),
                [] => assert!(argmax.is_none()),
                _ => panic!("direction {u} strictly inside two cones"),
            }
        }
    }
}
