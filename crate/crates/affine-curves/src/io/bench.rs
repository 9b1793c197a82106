//! Seeded random round trips: a random polynomial curve `c`, its image under a
//! fixed affine map, reparametrized so that `phi(z) = 2z - 1` is planted.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curve::Curve;
use crate::equivalence::{affine_equivalences, AffineEquivalence, Options, Status};
use crate::exact::{Gr, MultiPoly, RatFunc, Var};
use crate::moebius::MoebiusMap;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchSpec {
    pub dims: Vec<usize>,
    pub degrees: Vec<u32>,
    pub bound: i64,
    pub seed: u64,
    pub reps: usize,
}

impl Default for BenchSpec {
    fn default() -> Self {
        Self { dims: (2..=6).collect(), degrees: (6..=10).collect(), bound: 10, seed: 1, reps: 1 }
    }
}

fn list<T: std::str::FromStr>(s: &str, line: usize) -> Result<Vec<T>, Error> {
    let bad = || Error::Parse { line, col: 1, msg: format!("bad list '{s}'") };
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            for k in a..=b {
                out.push(k.to_string().parse().map_err(|_| bad())?);
            }
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

/// `key = value` lines: `dims`, `degrees` (lists or ranges `a..b`), `bound`, `seed`, `reps`.
pub fn parse_bench_spec(text: &str) -> Result<BenchSpec, Error> {
    let mut spec = BenchSpec::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let Some((k, v)) = body.split_once('=') else {
            return Err(Error::Parse { line, col: 1, msg: "expected 'key = value'".into() });
        };
        let v = v.trim();
        let num = |v: &str| v.parse::<u64>().map_err(|_| Error::Parse { line, col: 1, msg: format!("bad number '{v}'") });
        match k.trim() {
            "dims" => spec.dims = list(v, line)?,
            "degrees" => spec.degrees = list(v, line)?,
            "bound" => spec.bound = num(v)? as i64,
            "seed" => spec.seed = num(v)?,
            "reps" => spec.reps = num(v)? as usize,
            other => return Err(Error::Parse { line, col: 1, msg: format!("unknown key '{other}'") }),
        }
    }
    if spec.dims.iter().any(|&n| !(2..=6).contains(&n)) {
        return Err(Error::Unsupported("bench dimensions must lie in 2..=6".into()));
    }
    Ok(spec)
}

/// The affine maps `(A, b)` used for each dimension.
pub fn table_map(n: usize) -> Option<(Vec<Vec<Gr>>, Vec<Gr>)> {
    let rows: &[&[i64]] = match n {
        2 => &[&[1, -1], &[2, 0]],
        3 => &[&[1, -1, 2], &[2, 0, 3], &[0, 0, 4]],
        4 => &[&[1, -1, 2, -1], &[2, 0, 3, 0], &[0, 0, 4, -1], &[0, 1, 0, 2]],
        5 => &[&[1, -1, 2, -1, 3], &[2, 0, 3, 0, 1], &[0, 0, 4, -1, 3], &[0, 0, 4, -1, 0], &[0, 1, 0, 2, 1]],
        6 => &[
            &[1, -1, 2, -1, 3, 0],
            &[2, 0, 3, 0, 1, 2],
            &[0, 0, 4, -1, 3, 1],
            &[0, 0, 4, -1, 0, 2],
            &[0, 1, 0, 2, 1, 1],
            &[0, -1, 2, 0, -1, 3],
        ],
        _ => return None,
    };
    let a = rows.iter().map(|r| r.iter().map(|&x| Gr::from_int(x)).collect()).collect();
    let b = (0..n).map(|i| Gr::from_int(i64::from(i == 1))).collect();
    Some((a, b))
}

/// The planted reparametrization.
pub fn planted_phi() -> MoebiusMap {
    MoebiusMap::from_ints(2, -1, 0, 1).unwrap()
}

/// Polynomial curve with components of exact degree `d`, coefficients in `[-bound, bound]`.
/// Draws failing the hyperplane or properness check are redrawn and counted.
pub fn random_curve(n: usize, d: u32, bound: i64, rng: &mut ChaCha8Rng) -> (Curve, usize) {
    let mut redraws = 0;
    loop {
        let comps: Vec<RatFunc> = (0..n)
            .map(|_| {
                let mut cs: Vec<Gr> = (0..=d).map(|_| Gr::from_int(rng.gen_range(-bound..=bound))).collect();
                while cs[d as usize] == Gr::from_int(0) {
                    cs[d as usize] = Gr::from_int(rng.gen_range(-bound..=bound));
                }
                RatFunc::from_poly(MultiPoly::from_univariate(Var::Z, &cs))
            })
            .collect();
        let c = Curve::rational(comps).expect("valid components");
        if c.check_not_in_hyperplane() && c.check_proper_rational().unwrap_or(false) {
            return (c, redraws);
        }
        redraws += 1;
    }
}

fn cell_seed(seed: u64, n: usize, d: u32, rep: usize) -> u64 {
    seed.wrapping_mul(1_000_003) ^ ((n as u64) << 40) ^ ((d as u64) << 24) ^ rep as u64
}

/// `q = A c + b` reparametrized by the inverse of `2z - 1`, so `A c + b = q ∘ (2z - 1)`.
pub fn planted_pair(n: usize, d: u32, bound: i64, seed: u64) -> (Curve, Curve, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (c, redraws) = random_curve(n, d, bound, &mut rng);
    let (a, b) = table_map(n).expect("dimension with a fixed map");
    let q = c.affine_image(&a, &b).unwrap().compose(&planted_phi().inverse()).unwrap();
    (c, q, redraws)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub d: u32,
    pub rep: usize,
    pub seed: u64,
    pub recovered: bool,
    /// All invariants were constant, so nothing could be recovered.
    pub degenerate: bool,
    pub equivalences: usize,
    pub redraws: usize,
    pub seconds: f64,
}

fn is_planted(e: &AffineEquivalence, n: usize) -> bool {
    let (a, b) = table_map(n).unwrap();
    e.phi == planted_phi() && e.a == a && e.b == b
}

/// One grid cell instance.
pub fn run_instance(n: usize, d: u32, rep: usize, spec: &BenchSpec) -> Result<BenchRow, Error> {
    let seed = cell_seed(spec.seed, n, d, rep);
    let (p, q, redraws) = planted_pair(n, d, spec.bound, seed);
    let start = Instant::now();
    let report = affine_equivalences(&p, &q, &Options::default())?;
    let seconds = start.elapsed().as_secs_f64();
    let recovered = report.equivalences.iter().any(|e| is_planted(e, n));
    let degenerate = report.status == Status::DegenerateInvariants;
    Ok(BenchRow { n, d, rep, seed, recovered, degenerate, equivalences: report.equivalences.len(), redraws, seconds })
}

/// Runs the grid on `workers` threads; rows come back ordered by `(n, d, rep)`.
pub fn bench_run(spec: &BenchSpec, workers: usize) -> Result<Vec<BenchRow>, Error> {
    let mut jobs = Vec::new();
    for &n in &spec.dims {
        for &d in &spec.degrees {
            for rep in 0..spec.reps {
                jobs.push((n, d, rep));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let rows: Vec<Result<BenchRow, Error>> =
        pool.install(|| jobs.par_iter().map(|&(n, d, rep)| run_instance(n, d, rep, spec)).collect());
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    if let Some(r) = rows.iter().find(|r| !r.recovered) {
        return Err(Error::Unsupported(format!(
            "planted map not recovered: seed {} n {} d {} (reproduce with bench seed/n/d)",
            r.seed, r.n, r.d
        )));
    }
    Ok(rows)
}

/// Per-instance rows as CSV.
pub fn rows_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("n,d,rep,seed,recovered,degenerate,equivalences,redraws,seconds\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{:.3}\n",
            r.n, r.d, r.rep, r.seed, r.recovered, r.degenerate, r.equivalences, r.redraws, r.seconds
        ));
    }
    s
}

/// Mean seconds per instance, one row per dimension and one column per degree
/// (wall clock, machine-relative).
pub fn table_csv(spec: &BenchSpec, rows: &[BenchRow]) -> String {
    let mut s = String::from("n");
    for d in &spec.degrees {
        s.push_str(&format!(",d={d}"));
    }
    s.push('\n');
    for &n in &spec.dims {
        s.push_str(&n.to_string());
        for &d in &spec.degrees {
            let cell: Vec<f64> = rows.iter().filter(|r| r.n == n && r.d == d).map(|r| r.seconds).collect();
            let mean = if cell.is_empty() { 0.0 } else { cell.iter().sum::<f64>() / cell.len() as f64 };
            s.push_str(&format!(",{mean:.3}"));
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_file() {
        let s = parse_bench_spec("dims = 2,3\ndegrees = 6..8\nseed = 7\nreps = 2\n").unwrap();
        assert_eq!(s.dims, vec![2, 3]);
        assert_eq!(s.degrees, vec![6, 7, 8]);
        assert_eq!((s.seed, s.reps, s.bound), (7, 2, 10));
        assert!(parse_bench_spec("colour = red").is_err());
    }

    #[test]
    fn deterministic_pairs() {
        assert_eq!(planted_pair(3, 6, 10, 5).1, planted_pair(3, 6, 10, 5).1);
    }
}
