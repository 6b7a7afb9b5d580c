//! Instance generators: the worst-case constructions and seeded random families.

use std::fmt;
use std::str::FromStr;

use freezetag_core::graphs::adversary_family;
use freezetag_core::{Error, Instance, Metric, Spoke};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `2^k - 1` unit spokes, `2^k` spokes of length `k`, one of length `3k`.
    SefTight,
    /// One spoke of length `1 + eps` holding `n - 1` robots and `n - 1` unit spokes.
    SefBad,
    /// `n / 2` unit spokes and `n / 2` spokes of length `log2 n`.
    RdBad,
    /// `k` unit neighbors of the source, the last one leading to `k` robots.
    OnlineAdversary,
    RandomStar,
    RandomGraph,
    RandomPoints,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::SefTight,
        Family::SefBad,
        Family::RdBad,
        Family::OnlineAdversary,
        Family::RandomStar,
        Family::RandomGraph,
        Family::RandomPoints,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SefTight => "sef-tight",
            Family::SefBad => "sef-bad",
            Family::RdBad => "rd-bad",
            Family::OnlineAdversary => "online-adversary",
            Family::RandomStar => "random-star",
            Family::RandomGraph => "random-graph",
            Family::RandomPoints => "random-points",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Generator parameters; each family reads the ones it needs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub k: usize,
    pub n: usize,
    /// Robots per leaf for random stars; 0 draws 1..=3 per leaf.
    pub q: usize,
    pub epsilon: f64,
    /// 0-based neighbor carrying the populous vertex; `None` means the last.
    pub heavy: Option<usize>,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            k: 2,
            n: 8,
            q: 1,
            epsilon: 0.01,
            heavy: None,
            seed: 0,
        }
    }
}

pub fn generate(family: Family, p: &Params) -> Result<Instance, Error> {
    match family {
        Family::SefTight => sef_tight(p.k),
        Family::SefBad => sef_bad(p.n, p.epsilon),
        Family::RdBad => rd_bad(p.n),
        Family::OnlineAdversary => adversary_family(p.k, p.epsilon, p.heavy.unwrap_or(p.k.saturating_sub(1))),
        Family::RandomStar => random_star(p.n, p.q, p.seed),
        Family::RandomGraph => random_graph(p.n, p.seed),
        Family::RandomPoints => random_points(p.n, p.seed),
    }
}

pub fn sef_tight(k: usize) -> Result<Instance, Error> {
    if !(1..=12).contains(&k) {
        return Err(Error::Parameter(format!("sef-tight needs 1 <= k <= 12, got {k}")));
    }
    let mut lengths = vec![1.0; (1 << k) - 1];
    lengths.extend(std::iter::repeat_n(k as f64, 1 << k));
    lengths.push(3.0 * k as f64);
    Instance::star_uniform(&lengths, 1)
}

pub fn sef_bad(n: usize, epsilon: f64) -> Result<Instance, Error> {
    if n < 2 {
        return Err(Error::Parameter(format!("sef-bad needs n >= 2, got {n}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let mut spokes = vec![Spoke::new(1.0 + epsilon, n - 1)];
    spokes.extend(std::iter::repeat_n(Spoke::new(1.0, 1), n - 1));
    Instance::star(&spokes)
}

pub fn rd_bad(n: usize) -> Result<Instance, Error> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Parameter(format!("rd-bad needs an even n >= 4, got {n}")));
    }
    let mut lengths = vec![1.0; n / 2];
    lengths.extend(std::iter::repeat_n((n as f64).log2(), n / 2));
    Instance::star_uniform(&lengths, 1)
}

/// `n` spokes with lengths uniform in `[1, 10)`.
pub fn random_star(n: usize, q: usize, seed: u64) -> Result<Instance, Error> {
    if n == 0 {
        return Err(Error::Parameter("random-star needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spokes: Vec<Spoke> = (0..n)
        .map(|_| {
            let length = rng.gen_range(1.0..10.0);
            let robots = if q == 0 { rng.gen_range(1..=3) } else { q };
            Spoke::new(length, robots)
        })
        .collect();
    Instance::star(&spokes)
}

/// `n` vertices: a random spanning tree plus about `n / 2` extra edges,
/// weights uniform in `[1, 5)`, 0 to 2 robots per vertex and one at the source.
pub fn random_graph(n: usize, seed: u64) -> Result<Instance, Error> {
    if n < 2 {
        return Err(Error::Parameter("random-graph needs n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, rng.gen_range(1.0..5.0)));
    }
    for _ in 0..n / 2 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.push((a, b, rng.gen_range(1.0..5.0)));
        }
    }
    let mut robots: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    robots[0] = 1;
    Instance::graph(n, &edges, 0, &robots)
}

/// `n` points uniform in the unit square, one robot each, Euclidean.
pub fn random_points(n: usize, seed: u64) -> Result<Instance, Error> {
    if n == 0 {
        return Err(Error::Parameter("random-points needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect();
    Instance::points(2, &pts, 0, &vec![1; n], Metric::L2)
}
