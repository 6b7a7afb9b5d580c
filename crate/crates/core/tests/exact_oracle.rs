use freezetag_core::exact::{solve_optimal, solve_optimal_equal_star, Limits};
use freezetag_core::{Instance, Metric, RobotId, Spoke, WakeUpTree, TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum makespan over every parent array that forms a valid wake-up tree.
fn brute_force(inst: &Instance) -> f64 {
    let n = inst.robot_count();
    if n == 1 {
        return 0.0;
    }
    let mut parent = vec![0usize; n];
    let mut best = f64::INFINITY;
    loop {
        if let Some(t) = depth(inst, &parent) {
            best = best.min(t);
        }
        // odometer over parent[1..], skipping nothing: invalid arrays are filtered
        let mut i = 1;
        loop {
            if i == n {
                return best;
            }
            parent[i] += 1;
            if parent[i] < n {
                break;
            }
            parent[i] = 0;
            i += 1;
        }
    }
}

fn depth(inst: &Instance, parent: &[usize]) -> Option<f64> {
    let n = parent.len();
    let mut out = vec![0usize; n];
    for v in 1..n {
        if parent[v] == v {
            return None;
        }
        out[parent[v]] += 1;
    }
    if out[0] > 1 || out.iter().any(|&d| d > 2) {
        return None;
    }
    let mut best: f64 = 0.0;
    for v in 1..n {
        let mut t = 0.0;
        let mut cur = v;
        let mut steps = 0;
        while cur != 0 {
            t += inst.distance(RobotId(parent[cur]), RobotId(cur));
            cur = parent[cur];
            steps += 1;
            if steps > n {
                return None;
            }
        }
        best = best.max(t);
    }
    Some(best)
}

fn random_star(rng: &mut ChaCha8Rng, max_robots: usize, uniform: bool) -> Instance {
    loop {
        let m = rng.gen_range(1..=5);
        let q = rng.gen_range(1..=2);
        let spokes: Vec<Spoke> = (0..m)
            .map(|_| {
                let len = rng.gen_range(1..=8) as f64;
                let r = if uniform { q } else { rng.gen_range(1..=3) };
                Spoke::new(len, r)
            })
            .collect();
        let inst = Instance::star(&spokes).unwrap();
        if inst.robot_count() <= max_robots {
            return inst;
        }
    }
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![rng.gen_range(0..10) as f64, rng.gen_range(0..10) as f64])
        .collect();
    let counts: Vec<usize> = (0..n).map(|i| if i == 0 { 1 } else { rng.gen_range(1..=2) }).collect();
    let metric = [Metric::L1, Metric::L2, Metric::LInf][rng.gen_range(0..3)];
    Instance::points(2, &pts, 0, &counts, metric).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, v: usize) -> Instance {
    let mut edges = Vec::new();
    for i in 1..v {
        edges.push((rng.gen_range(0..i), i, rng.gen_range(1..=5) as f64));
    }
    for _ in 0..v {
        let a = rng.gen_range(0..v);
        let b = rng.gen_range(0..v);
        if a != b {
            edges.push((a, b, rng.gen_range(1..=5) as f64));
        }
    }
    let robots: Vec<usize> = (0..v).map(|i| if i == 0 { 1 } else { rng.gen_range(0..=2) }).collect();
    Instance::graph(v, &edges, 0, &robots).unwrap()
}

fn check(inst: &Instance) {
    let s = solve_optimal(inst, &Limits::default()).unwrap();
    assert!(s.optimal);
    assert!(s.tree.validate(inst).is_ok());
    assert_eq!(inst.makespan(&s.tree).unwrap(), s.makespan);
    let oracle = brute_force(inst);
    assert!(
        (s.makespan - oracle).abs() <= TOL,
        "solver {} vs brute force {} on {inst:?}",
        s.makespan,
        oracle
    );
    assert!(s.makespan >= inst.lower_bounds().max() - TOL);
}

#[test]
fn matches_brute_force_on_stars() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        check(&random_star(&mut rng, 7, false));
    }
}

#[test]
fn matches_brute_force_on_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let inst = random_points(&mut rng, n);
        if inst.robot_count() <= 7 {
            check(&inst);
        }
    }
}

#[test]
fn matches_brute_force_on_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let v = rng.gen_range(2..=6);
        let inst = random_graph(&mut rng, v);
        if inst.robot_count() <= 7 {
            check(&inst);
        }
    }
}

#[test]
fn equal_star_restriction_keeps_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..150 {
        let inst = random_star(&mut rng, 9, true);
        let full = solve_optimal(&inst, &Limits::default()).unwrap();
        let restricted = solve_optimal_equal_star(&inst, &Limits::default()).unwrap();
        assert!((full.makespan - restricted.makespan).abs() <= TOL, "{inst:?}");
        assert!(restricted.tree.validate(&inst).is_ok());
    }
}

#[test]
fn invariant_under_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..30 {
        let inst = random_star(&mut rng, 9, false);
        let lambda = rng.gen_range(0.1..10.0);
        let a = solve_optimal(&inst, &Limits::default()).unwrap().makespan;
        let b = solve_optimal(&inst.scaled(lambda), &Limits::default()).unwrap().makespan;
        assert!((a * lambda - b).abs() <= 1e-9 * (1.0 + b));
    }
}

#[test]
fn invariant_under_robot_order_within_a_site() {
    // the same multiset of sites listed in two orders
    let a = Instance::star(&[Spoke::new(3.0, 2), Spoke::new(1.0, 1), Spoke::new(5.0, 3)]).unwrap();
    let b = Instance::star(&[Spoke::new(5.0, 3), Spoke::new(3.0, 2), Spoke::new(1.0, 1)]).unwrap();
    let ta = solve_optimal(&a, &Limits::default()).unwrap().makespan;
    let tb = solve_optimal(&b, &Limits::default()).unwrap().makespan;
    assert_eq!(ta, tb);
}

#[test]
fn tight_family_k2_within_3k_plus_4() {
    let mut lengths = vec![1.0; 3];
    lengths.extend([2.0; 4]);
    lengths.push(6.0);
    let star = Instance::star_uniform(&lengths, 1).unwrap();
    let s = solve_optimal(&star, &Limits::default()).unwrap();
    assert!(s.optimal);
    assert!(s.makespan <= 10.0 + TOL);
}

#[test]
fn trees_from_solver_round_trip_through_itineraries() {
    let star = Instance::star_uniform(&[1.0, 1.0, 1.0, 100.0], 1).unwrap();
    let s = solve_optimal(&star, &Limits::default()).unwrap();
    let again = WakeUpTree::from_itineraries(&s.tree.itineraries()).unwrap();
    assert_eq!(star.makespan(&again).unwrap(), 102.0);
}
