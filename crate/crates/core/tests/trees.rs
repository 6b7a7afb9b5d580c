use freezetag_core::balance::{path_node_bound, pseudo_balance, C_PB};
use freezetag_core::heavy_path::heavy_path_decomposition;
use freezetag_core::{Error, Instance, RobotId, Violation, WakeUpTree, TOL};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn long_spoke_star() -> Instance {
    Instance::star_uniform(&[1.0, 1.0, 1.0, 100.0], 1).unwrap()
}

fn tree(parents: &[usize]) -> WakeUpTree {
    let mut p = vec![None];
    p.extend(parents.iter().map(|&x| Some(RobotId(x))));
    WakeUpTree::from_parents(p)
}

/// Random rooted tree respecting the wake-up degree bounds. With `chain`
/// set, nodes attach preferentially to the newest node, giving deep trees.
fn random_tree(rng: &mut ChaCha8Rng, n: usize, chain: bool) -> WakeUpTree {
    let mut parents = vec![None; n];
    let mut degree = vec![0usize; n];
    #[allow(clippy::needless_range_loop)]
    for v in 1..n {
        let cap = |u: usize| if u == 0 { 1 } else { 2 };
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < cap(u)).collect();
        let u = if chain && rng.gen_bool(0.9) {
            *open.last().unwrap()
        } else {
            open[rng.gen_range(0..open.len())]
        };
        degree[u] += 1;
        parents[v] = Some(RobotId(u));
    }
    WakeUpTree::from_parents(parents)
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
    Instance::planar(&pts, 0).unwrap()
}

/// Wake times from the parent array alone, by repeated relaxation.
fn times_by_parents(inst: &Instance, t: &WakeUpTree) -> Vec<f64> {
    let n = t.len();
    let mut time = vec![f64::NAN; n];
    time[0] = 0.0;
    for _ in 0..n {
        for v in 1..n {
            let p = t.parents()[v].unwrap();
            time[v] = time[p.0] + inst.distance(p, RobotId(v));
        }
    }
    time
}

fn makespan_by_parents(inst: &Instance, t: &WakeUpTree) -> f64 {
    times_by_parents(inst, t).into_iter().fold(0.0, f64::max)
}

fn path_nodes_by_parents(t: &WakeUpTree) -> usize {
    (0..t.len())
        .map(|mut v| {
            let mut k = 1;
            while let Some(p) = t.parents()[v] {
                v = p.0;
                k += 1;
            }
            k
        })
        .max()
        .unwrap_or(0)
}

#[test]
fn long_spoke_star_trees() {
    let star = long_spoke_star();
    // source wakes b1, then heads for b4 while b1's robot takes b2 and b3
    let optimal = tree(&[0, 1, 2, 1]);
    assert_eq!(star.makespan(&optimal).unwrap(), 102.0);
    // b1 first, then b2 and b3 in parallel, then b4
    let sef = tree(&[0, 1, 1, 2]);
    assert_eq!(star.makespan(&sef).unwrap(), 104.0);
}

#[test]
fn trivial_trees() {
    let single = Instance::star(&[]).unwrap();
    assert_eq!(single.makespan(&WakeUpTree::from_parents(vec![None])).unwrap(), 0.0);
    let path = Instance::star_uniform(&[2.0], 3).unwrap();
    assert!(tree(&[0, 1, 2]).validate(&path).is_ok());
}

#[test]
fn violations_are_reported() {
    let star = long_spoke_star();
    let wide_root = WakeUpTree::from_children(vec![
        vec![RobotId(1), RobotId(2)],
        vec![RobotId(3), RobotId(4)],
        vec![],
        vec![],
        vec![],
    ]);
    let v = wide_root.validate(&star).unwrap_err();
    assert!(v.contains(&Violation::RootOutDegree { children: 2 }));
    assert_eq!(v[0].to_string(), "root out-degree > 1 (2 children)");

    let wide = WakeUpTree::from_children(vec![
        vec![RobotId(1)],
        vec![RobotId(2), RobotId(3), RobotId(4)],
        vec![],
        vec![],
        vec![],
    ]);
    let v = wide.validate(&star).unwrap_err();
    assert_eq!(
        v,
        vec![Violation::BinaryBoundExceeded {
            node: RobotId(1),
            children: 3
        }]
    );
    assert!(v[0].to_string().contains("binary bound exceeded"));
    assert!(matches!(star.makespan(&wide), Err(Error::InvalidTree(_))));

    let short = tree(&[0, 1]);
    assert!(matches!(
        short.validate(&star).unwrap_err()[0],
        Violation::RobotCount { tree: 3, instance: 5 }
    ));

    let unknown = tree(&[0, 1, 7, 1]);
    assert!(unknown
        .validate(&star)
        .unwrap_err()
        .contains(&Violation::UnknownRobot {
            node: RobotId(3),
            referenced: 7
        }));

    // a cycle detached from the root
    let cycle = WakeUpTree::from_parents(vec![None, Some(RobotId(0)), Some(RobotId(3)), Some(RobotId(2)), Some(RobotId(1))]);
    let v = cycle.validate(&star).unwrap_err();
    assert!(v.contains(&Violation::Unreachable { node: RobotId(2) }));
    assert!(v.contains(&Violation::Unreachable { node: RobotId(3) }));
}

#[test]
fn lower_bound_examples() {
    let lb = long_spoke_star().lower_bounds();
    assert_eq!(lb.max_dist_from_source, 100.0);
    assert!(lb.half_diameter >= 50.5);
    let single = Instance::star(&[]).unwrap().lower_bounds();
    assert_eq!((single.max_dist_from_source, single.half_diameter), (0.0, 0.0));
    let square = Instance::planar(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)], 0).unwrap();
    let lb = square.lower_bounds();
    assert!((lb.max_dist_from_source - 2f64.sqrt()).abs() <= TOL);
    assert!((lb.half_diameter - 2f64.sqrt() / 2.0).abs() <= TOL);
}

#[test]
fn heavy_path_examples() {
    let path = tree(&[0, 1, 2, 3]);
    let hp = heavy_path_decomposition(&path);
    assert_eq!(hp.paths, vec![(0..5).map(RobotId).collect::<Vec<_>>()]);
    assert!(hp.light_edges.is_empty());

    let perfect = WakeUpTree::from_children(vec![
        vec![RobotId(1), RobotId(2)],
        vec![RobotId(3), RobotId(4)],
        vec![RobotId(5), RobotId(6)],
        vec![],
        vec![],
        vec![],
        vec![],
    ]);
    let hp = heavy_path_decomposition(&perfect);
    assert_eq!(hp.paths.len(), 4);
    assert_eq!(hp.paths[0], vec![RobotId(0), RobotId(1), RobotId(3)]);
    assert_eq!(hp.heavy_child[2], Some(RobotId(5)));

    // root, one child, two grandchildren of which the second has a subtree
    let forked = tree(&[0, 1, 1, 3]);
    let hp = heavy_path_decomposition(&forked);
    assert_eq!(hp.paths[0], vec![RobotId(0), RobotId(1), RobotId(3), RobotId(4)]);
    assert_eq!(hp.light_edges, vec![(RobotId(1), RobotId(2))]);
}

#[test]
fn heavy_paths_partition_and_light_depth() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..200 {
        let n = rng.gen_range(1..=300);
        let chain = rng.gen_bool(0.5);
        let t = random_tree(&mut rng, n, chain);
        let hp = heavy_path_decomposition(&t);
        let mut seen = vec![0; n];
        for p in &hp.paths {
            for w in p.windows(2) {
                assert_eq!(t.parents()[w[1].0], Some(w[0]));
            }
            for r in p {
                seen[r.0] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        assert_eq!(hp.light_edges.len(), hp.paths.len() - 1);
        let bound = (n as f64).log2().ceil() as usize;
        assert!(hp.max_light_depth() <= bound);
    }
}

#[test]
fn pseudo_balance_colinear_path() {
    let pts: Vec<(f64, f64)> = (0..64).map(|i| (i as f64, 0.0)).collect();
    let inst = Instance::planar(&pts, 0).unwrap();
    let chain = tree(&(0..63).collect::<Vec<_>>());
    let t = inst.makespan(&chain).unwrap();
    assert_eq!(t, 63.0);
    let b = pseudo_balance(&inst, &chain, 0.5).unwrap();
    assert!(b.validate(&inst).is_ok());
    assert!(makespan_by_parents(&inst, &b) <= 1.5 * t + TOL);
    assert!(path_nodes_by_parents(&b) as f64 <= path_node_bound(64, 0.5) + TOL);
}

#[test]
fn pseudo_balance_edge_cases() {
    let inst = Instance::planar(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], 0).unwrap();
    let chain = tree(&[0, 1]);
    assert!(matches!(pseudo_balance(&inst, &chain, 0.0), Err(Error::Parameter(_))));
    assert!(matches!(pseudo_balance(&inst, &chain, -1.0), Err(Error::Parameter(_))));
    assert_eq!(pseudo_balance(&inst, &chain, 1.0).unwrap(), chain);

    let colocated = Instance::planar(&vec![(0.5, 0.5); 40], 0).unwrap();
    let long = tree(&(0..39).collect::<Vec<_>>());
    let b = pseudo_balance(&colocated, &long, 0.5).unwrap();
    assert_eq!(colocated.makespan(&b).unwrap(), 0.0);
    assert!(path_nodes_by_parents(&b) as f64 <= C_PB * 1.5 * 40f64.log2().powi(2));
}

#[test]
fn pseudo_balance_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    for round in 0..120 {
        let n = rng.gen_range(2..=256);
        let inst = random_points(&mut rng, n);
        let t = random_tree(&mut rng, n, round % 2 == 0);
        let before = makespan_by_parents(&inst, &t);
        for mu in [0.25, 0.5, 1.0] {
            let b = pseudo_balance(&inst, &t, mu).unwrap();
            assert!(b.validate(&inst).is_ok());
            assert!(makespan_by_parents(&inst, &b) <= (1.0 + mu) * before + TOL);
            assert!(path_nodes_by_parents(&b) as f64 <= path_node_bound(n, mu) + TOL);
        }
    }
}

proptest! {
    #[test]
    fn evaluation_invariants(seed in any::<u64>(), n in 1usize..40, chain in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_points(&mut rng, n);
        let t = random_tree(&mut rng, n, chain);
        let times = t.wake_times(&inst).unwrap();
        let oracle = times_by_parents(&inst, &t);
        for (a, b) in times.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= TOL);
        }
        let m = inst.makespan(&t).unwrap();
        let lb = inst.lower_bounds();
        prop_assert!(m >= lb.max_dist_from_source - TOL);
        prop_assert!(m >= lb.half_diameter - TOL);
        for v in 1..n {
            let p = t.parents()[v].unwrap();
            prop_assert!(times[v] >= times[p.0] - TOL);
        }
        let reversed: Vec<Vec<RobotId>> = (0..n)
            .map(|v| t.children(RobotId(v)).iter().rev().copied().collect())
            .collect();
        let flipped = WakeUpTree::from_children(reversed);
        prop_assert_eq!(inst.makespan(&flipped).unwrap(), m);
    }
}
