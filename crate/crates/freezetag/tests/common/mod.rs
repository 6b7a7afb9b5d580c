//! Instance suites and independent oracles shared by the integration tests.
#![allow(dead_code)]

use freezetag::families;
use freezetag_core::{Instance, RobotId, Spoke, WakeUpTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Star with equal leaf populations and at most `max_robots` robots in total.
pub fn uniform_star(rng: &mut ChaCha8Rng, max_robots: usize) -> Instance {
    let q = rng.gen_range(1..=2usize.min(max_robots - 1));
    let m = rng.gen_range(1..=(max_robots - 1) / q);
    families::random_star(m, q, rng.gen()).unwrap()
}

/// Star with 1 to 3 robots per leaf and at most `max_robots` robots in total.
pub fn mixed_star(rng: &mut ChaCha8Rng, max_robots: usize) -> Instance {
    loop {
        let m = rng.gen_range(1..=max_robots - 1);
        let inst = families::random_star(m, 0, rng.gen()).unwrap();
        if inst.robot_count() <= max_robots {
            return inst;
        }
    }
}

/// Star whose spokes share one length, with 1 to 3 robots per leaf.
pub fn equal_length_star(rng: &mut ChaCha8Rng, max_robots: usize) -> Instance {
    let length = rng.gen_range(0.5..10.0);
    let mut spokes = Vec::new();
    let mut robots = 1;
    let m = rng.gen_range(1..=max_robots - 1);
    for _ in 0..m {
        let r = rng.gen_range(1..=3usize).min(max_robots - robots);
        if r == 0 {
            break;
        }
        robots += r;
        spokes.push(Spoke::new(length, r));
    }
    Instance::star(&spokes).unwrap()
}

/// Connected graph on `vertices` vertices with weights in `[lo, hi)`.
pub fn graph(rng: &mut ChaCha8Rng, vertices: usize, lo: f64, hi: f64, robots: &dyn Fn(&mut ChaCha8Rng) -> usize) -> Instance {
    let mut edges = Vec::new();
    for v in 1..vertices {
        edges.push((rng.gen_range(0..v), v, rng.gen_range(lo..hi)));
    }
    for _ in 0..rng.gen_range(0..=vertices) {
        let a = rng.gen_range(0..vertices);
        let b = rng.gen_range(0..vertices);
        if a != b {
            edges.push((a, b, rng.gen_range(lo..hi)));
        }
    }
    let mut counts: Vec<usize> = (0..vertices).map(|_| robots(rng)).collect();
    counts[0] = counts[0].max(1);
    Instance::graph(vertices, &edges, 0, &counts).unwrap()
}

/// Graph with weights in `[1, 2)` and at most `max_robots` robots.
pub fn bounded_graph(rng: &mut ChaCha8Rng, max_robots: usize) -> Instance {
    loop {
        let v = rng.gen_range(2..=7);
        let inst = graph(rng, v, 1.0, 2.0, &|r| r.gen_range(0..=2));
        if inst.robot_count() <= max_robots && inst.robot_count() >= 2 {
            return inst;
        }
    }
}

/// Planar point set of `n` robots: uniform, clustered or on a grid.
pub fn planar(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let pts: Vec<(f64, f64)> = match rng.gen_range(0..3) {
        0 => (0..n).map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect(),
        1 => {
            let centers: Vec<(f64, f64)> = (0..2).map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect();
            (0..n)
                .map(|_| {
                    let c = centers[rng.gen_range(0..2)];
                    (c.0 + rng.gen_range(-0.5..0.5), c.1 + rng.gen_range(-0.5..0.5))
                })
                .collect()
        }
        _ => (0..n).map(|_| (rng.gen_range(0..4) as f64, rng.gen_range(0..4) as f64)).collect(),
    };
    Instance::planar(&pts, 0).unwrap()
}

pub fn diameter(inst: &Instance) -> f64 {
    let n = inst.robot_count();
    let mut d: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            d = d.max(inst.distance(RobotId(a), RobotId(b)));
        }
    }
    d
}

/// Random valid wake-up tree over `n` robots: each new robot hangs below a
/// random node with room left. `chain` biases towards long paths.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, chain: f64) -> WakeUpTree {
    let mut parent: Vec<Option<RobotId>> = vec![None; n];
    let mut degree = vec![0usize; n];
    let mut order: Vec<usize> = (1..n).collect();
    // shuffle so ids do not follow depth
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut placed = vec![0usize];
    for &v in &order {
        let cap = |u: usize| if u == 0 { 1 } else { 2 };
        let last = *placed.last().unwrap();
        let p = if rng.gen_bool(chain) && degree[last] < cap(last) {
            last
        } else {
            loop {
                let u = placed[rng.gen_range(0..placed.len())];
                if degree[u] < cap(u) {
                    break u;
                }
            }
        };
        parent[v] = Some(RobotId(p));
        degree[p] += 1;
        placed.push(v);
    }
    WakeUpTree::from_parents(parent)
}

/// Minimum average completion time over rational star schedules, by
/// exhaustive search. Robots reaching the center in `(time, id)` order claim
/// any unclaimed spoke; with none left they stay where they are.
pub fn min_average_completion(inst: &Instance) -> f64 {
    let spokes = inst.spokes().unwrap();
    let n = inst.robot_count();
    // (center time, robot), completion per robot
    let mut best = f64::INFINITY;
    let start = vec![(0.0, 0usize)];
    let completion = vec![0.0; n];
    let claimed = vec![false; spokes.len()];
    let mut next_id = 1;
    let mut ids: Vec<Vec<usize>> = Vec::new();
    for s in spokes {
        ids.push((next_id..next_id + s.robots).collect());
        next_id += s.robots;
    }
    fn go(
        pending: Vec<(f64, usize)>,
        completion: Vec<f64>,
        claimed: Vec<bool>,
        spokes: &[Spoke],
        ids: &[Vec<usize>],
        best: &mut f64,
    ) {
        let Some(pos) = (0..pending.len()).min_by(|&a, &b| {
            pending[a].0.total_cmp(&pending[b].0).then(pending[a].1.cmp(&pending[b].1))
        }) else {
            if claimed.iter().all(|&c| c) {
                let avg = completion.iter().sum::<f64>() / completion.len() as f64;
                *best = best.min(avg);
            }
            return;
        };
        let mut rest = pending.clone();
        let (time, robot) = rest.remove(pos);
        let open: Vec<usize> = (0..spokes.len()).filter(|&s| !claimed[s]).collect();
        if open.is_empty() {
            go(rest, completion, claimed, spokes, ids, best);
            return;
        }
        for s in open {
            let arrival = time + spokes[s].length;
            let mut c = completion.clone();
            let mut cl = claimed.clone();
            let mut p = rest.clone();
            cl[s] = true;
            for &r in std::iter::once(&robot).chain(&ids[s]) {
                c[r] = arrival;
                p.push((arrival + spokes[s].length, r));
            }
            go(p, c, cl, spokes, ids, best);
        }
    }
    go(start, completion, claimed, spokes, &ids, &mut best);
    best
}
