//! Distance and dimension bounds for cyclic codes with locality.
//!
//! Lower bounds on distance come from the BCH bound and the Hartmann-Tzeng
//! bound, both found by exhaustive witness search over the defining set.
//! Upper bounds are the Singleton-like bound for (r, rho)-locality and two
//! dimension bounds obtained by puncturing along the product structure: a
//! near-hypercube bound (`dim_bound_cube`) and its exhaustive
//! hyperrectangle refinement (`dim_bound_rect`).

use serde::{Deserialize, Serialize};

use crate::construction::{ConstructionParams, CyclicLrc, DefiningSet};
use crate::error::{Error, Result};
use crate::gf::gcd;

/// A Hartmann-Tzeng witness: the exponents
/// `{ start + s1*step1 + s2*step2 : 0 <= s1 <= delta-2, 0 <= s2 <= gamma }`
/// all lie in the defining set and both steps are units mod n, certifying
/// distance >= delta + gamma. `gamma = 0` is a plain BCH witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtWitness {
    pub start: u64,
    pub step1: u64,
    pub step2: u64,
    pub delta: u64,
    pub gamma: u64,
}

impl HtWitness {
    /// Certified distance bound delta + gamma.
    pub fn value(&self) -> u64 {
        self.delta + self.gamma
    }

    /// The exponents the witness claims are in the defining set.
    pub fn exponents(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if self.delta < 2 {
            return out;
        }
        for s2 in 0..=self.gamma {
            for s1 in 0..=self.delta - 2 {
                out.push((self.start + s1 * self.step1 + s2 * self.step2) % n);
            }
        }
        out
    }

    /// Independent re-check of the witness against a defining set.
    pub fn is_valid_for(&self, d: &DefiningSet) -> bool {
        let n = d.modulus();
        gcd(n, self.step1 % n) == 1
            && gcd(n, self.step2 % n) == 1
            && self.exponents(n).iter().all(|&e| d.contains(e))
    }

    fn tie_key(&self) -> (u64, u64, u64, u64) {
        (self.start, self.step1, self.step2, self.delta)
    }
}

/// A distance lower bound together with the witness that certifies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBound {
    pub value: u64,
    pub witness: HtWitness,
}

fn trivial_bound() -> DistanceBound {
    DistanceBound {
        value: 1,
        witness: HtWitness {
            start: 0,
            step1: 1,
            step2: 1,
            delta: 1,
            gamma: 0,
        },
    }
}

fn full_set_bound(n: u64) -> DistanceBound {
    // all n exponents are roots: the zero code, certified by a full run
    DistanceBound {
        value: n + 1,
        witness: HtWitness {
            start: 0,
            step1: 1,
            step2: 1,
            delta: n + 1,
            gamma: 0,
        },
    }
}

fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&z| gcd(n, z) == 1).collect()
}

/// Run lengths of arithmetic progressions with step `z` inside the
/// membership table: `runs[v]` counts how many of v, v+z, v+2z, ... are
/// consecutive members starting at v. Requires at least one non-member.
fn run_table(member: &[bool], z: u64) -> Vec<u64> {
    let n = member.len() as u64;
    let start = member
        .iter()
        .position(|&m| !m)
        .expect("caller handles the full set") as u64;
    let mut runs = vec![0u64; n as usize];
    let mut pos = start;
    for _ in 0..n {
        let prev = (pos + n - z) % n;
        runs[prev as usize] = if member[prev as usize] {
            runs[pos as usize] + 1
        } else {
            0
        };
        pos = prev;
    }
    runs
}

fn replace_if_better(best: &mut Option<DistanceBound>, candidate: DistanceBound) {
    match best {
        None => *best = Some(candidate),
        Some(cur) => {
            if candidate.value > cur.value
                || (candidate.value == cur.value
                    && candidate.witness.tie_key() < cur.witness.tie_key())
            {
                *best = Some(candidate);
            }
        }
    }
}

/// BCH bound: the largest delta such that the defining set contains
/// delta - 1 exponents in arithmetic progression with a step coprime to n.
/// Ties broken by the lexicographically smallest witness.
pub fn bch_bound(d: &DefiningSet) -> DistanceBound {
    if d.is_empty() {
        return trivial_bound();
    }
    let n = d.modulus();
    if d.is_full() {
        return full_set_bound(n);
    }
    let member = d.membership();
    let mut best = None;
    for z in units(n) {
        let runs = run_table(&member, z);
        for u in d.iter() {
            let delta = runs[u as usize] + 1;
            replace_if_better(
                &mut best,
                DistanceBound {
                    value: delta,
                    witness: HtWitness {
                        start: u,
                        step1: z,
                        step2: 1,
                        delta,
                        gamma: 0,
                    },
                },
            );
        }
    }
    best.expect("nonempty defining set yields at least delta = 2")
}

/// Hartmann-Tzeng bound: maximizes delta + gamma over all witnesses, by
/// exhaustive search over start, both steps, and gamma. Always at least
/// the BCH bound. Ties broken by the lexicographically smallest
/// (start, step1, step2, delta).
pub fn ht_bound(d: &DefiningSet) -> DistanceBound {
    if d.is_empty() {
        return trivial_bound();
    }
    let n = d.modulus();
    if d.is_full() {
        return full_set_bound(n);
    }
    let member = d.membership();
    let unit_list = units(n);
    let mut best = None;
    for &z1 in &unit_list {
        let runs = run_table(&member, z1);
        for &z2 in &unit_list {
            for u in d.iter() {
                let mut min_run = u64::MAX;
                let mut gamma = 0u64;
                loop {
                    let row = ((u + gamma * z2) % n) as usize;
                    if !member[row] {
                        break;
                    }
                    min_run = min_run.min(runs[row]);
                    replace_if_better(
                        &mut best,
                        DistanceBound {
                            value: min_run + 1 + gamma,
                            witness: HtWitness {
                                start: u,
                                step1: z1,
                                step2: z2,
                                delta: min_run + 1,
                                gamma,
                            },
                        },
                    );
                    gamma += 1;
                    if gamma == n {
                        break;
                    }
                }
            }
        }
    }
    best.expect("nonempty defining set yields at least delta = 2")
}

/// Singleton-like upper bound on the distance of an [n, k] code with
/// (r, rho)-locality: n - k + 1 - (ceil(k/r) - 1)(rho - 1).
pub fn singleton_like(n: u64, k: u64, r: u64, rho: u64) -> Result<i64> {
    if k == 0 || k > n || r == 0 || rho < 2 {
        return Err(Error::InvalidBoundArgs(format!(
            "singleton_like(n={n}, k={k}, r={r}, rho={rho})"
        )));
    }
    let ceil_kr = k.div_ceil(r);
    Ok((n - k + 1) as i64 - ((ceil_kr - 1) * (rho - 1)) as i64)
}

/// The index helper s_{i,j} = (j*q - i*p) mod pq.
pub fn sij(i: i64, j: i64, p: u64, q: u64) -> u64 {
    assert!(p >= 1 && q >= 1, "moduli must be positive");
    let pq = (p as i128) * (q as i128);
    let v = (j as i128 * q as i128 - i as i128 * p as i128).rem_euclid(pq);
    v as u64
}

/// Largest v with v^e <= x.
fn integer_root(x: u64, e: u32) -> u64 {
    let mut v = 0u64;
    while ((v + 1) as u128).pow(e) <= x as u128 {
        v += 1;
    }
    v
}

/// For ascending component lengths, the smallest index `xi` such that
/// `n[xi]` exceeds `v = floor(((d-1) / prod(n[..xi]))^(1/(t-xi)))`, along
/// with that v: the punctured block fills the first xi dimensions and
/// forms a (t-xi)-dimensional cube of side v in the rest.
pub fn xi_value(n_sorted: &[u64], rho: u64, d: u64) -> (usize, u64) {
    let t = n_sorted.len();
    assert!(t >= 1, "at least one component");
    assert!(
        n_sorted.windows(2).all(|w| w[0] <= w[1]),
        "lengths must be sorted ascending"
    );
    assert!(
        rho >= 2 && rho <= n_sorted[0],
        "rho must lie in 2..=min(n_i)"
    );
    let n: u64 = n_sorted.iter().product();
    assert!(d >= 1 && d <= n, "d must lie in 1..=prod(n_i)");

    let mut prefix = 1u64;
    for (xi, &ni) in n_sorted.iter().enumerate() {
        let v = integer_root((d - 1) / prefix, (t - xi) as u32);
        if ni > v {
            return (xi, v);
        }
        prefix *= ni;
    }
    unreachable!("d - 1 < prod(n_i) guarantees xi < t")
}

fn validate_dim_args(n_list: &[u64], rho_list: &[u64], d: u64) -> Result<()> {
    if n_list.is_empty() || n_list.len() != rho_list.len() {
        return Err(Error::InvalidBoundArgs("empty or mismatched lengths".into()));
    }
    for (i, &ni) in n_list.iter().enumerate() {
        if ni < 2 {
            return Err(Error::InvalidBoundArgs(format!("n[{i}] = {ni} < 2")));
        }
        for &nj in &n_list[..i] {
            if gcd(ni, nj) != 1 {
                return Err(Error::InvalidBoundArgs(format!(
                    "lengths {nj} and {ni} are not coprime"
                )));
            }
        }
    }
    for (i, (&rho, &ni)) in rho_list.iter().zip(n_list).enumerate() {
        if rho < 2 || rho > ni {
            return Err(Error::InvalidBoundArgs(format!(
                "rho[{i}] = {rho} outside 2..={ni}"
            )));
        }
    }
    let n = n_list
        .iter()
        .try_fold(1u64, |acc, &ni| acc.checked_mul(ni))
        .ok_or_else(|| Error::InvalidBoundArgs("block length overflows".into()))?;
    if d == 0 || d > n {
        return Err(Error::InvalidBoundArgs(format!("d = {d} outside 1..={n}")));
    }
    Ok(())
}

/// Dimension upper bound from puncturing a block as close to a hypercube
/// as possible: prod(n_i - rho + 1) minus
/// max(0, v - (rho-1))^(t-xi) * prod_{i<=xi}(n_i - rho + 1),
/// with lengths sorted ascending. Uniform rho only.
pub fn dim_bound_cube(n_list: &[u64], rho: u64, d: u64) -> Result<u64> {
    let rho_list = vec![rho; n_list.len()];
    validate_dim_args(n_list, &rho_list, d)?;
    let mut sorted = n_list.to_vec();
    sorted.sort_unstable();
    let t = sorted.len();

    let (xi, v) = xi_value(&sorted, rho, d);
    let unreduced: u64 = sorted.iter().map(|&ni| ni - rho + 1).product();
    let shrink = v.saturating_sub(rho - 1);
    let correction: u64 =
        shrink.pow((t - xi) as u32) * sorted[..xi].iter().map(|&ni| ni - rho + 1).product::<u64>();
    Ok(unreduced - correction)
}

/// Refinement of the cube bound by exhaustive search over all integer
/// hyperrectangles (v_1..v_t), 0 <= v_i <= n_i, of volume at most d - 1:
/// the best rectangle removes prod max(0, v_i - rho_i + 1) dimensions.
/// Returns the bound and the lexicographically smallest optimal rectangle.
pub fn dim_bound_rect(n_list: &[u64], rho_list: &[u64], d: u64) -> Result<(u64, Vec<u64>)> {
    validate_dim_args(n_list, rho_list, d)?;
    let lattice: u128 = n_list.iter().map(|&ni| ni as u128 + 1).product();
    if lattice > 10_000_000 {
        return Err(Error::SearchSpaceTooLarge {
            candidates: lattice,
            cap: 10_000_000,
        });
    }

    let t = n_list.len();
    let mut best_reduction = 0u64;
    let mut best_sides = vec![0u64; t];
    let mut sides = vec![0u64; t];
    // odometer over the lattice in lexicographic order; the first maximum
    // encountered is the lexicographically smallest optimal rectangle
    loop {
        let volume: u64 = sides.iter().product();
        if volume < d {
            let reduction: u64 = sides
                .iter()
                .zip(rho_list)
                .map(|(&v, &rho)| v.saturating_sub(rho - 1))
                .product();
            if reduction > best_reduction {
                best_reduction = reduction;
                best_sides = sides.clone();
            }
        }
        // increment from the last coordinate so earlier coordinates are
        // most significant in the enumeration order
        let mut pos = t;
        loop {
            if pos == 0 {
                let unreduced: u64 = n_list
                    .iter()
                    .zip(rho_list)
                    .map(|(&ni, &rho)| ni - rho + 1)
                    .product();
                return Ok((unreduced - best_reduction, best_sides));
            }
            pos -= 1;
            if sides[pos] < n_list[pos] {
                sides[pos] += 1;
                break;
            }
            sides[pos] = 0;
        }
    }
}

/// Product lower bound on the distance: prod rho_i, independent of D_g.
pub fn product_distance_bound(params: &ConstructionParams) -> u64 {
    params.rhos().iter().product()
}

/// Singleton-like bound instantiated for one locality component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSingletonBound {
    pub component: usize,
    pub r: u64,
    pub rho: u64,
    pub upper: i64,
}

/// The cube dimension bound with its internals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeDimBound {
    pub distance: u64,
    pub xi: usize,
    pub v: u64,
    pub bound: u64,
}

/// The hyperrectangle dimension bound with the optimal rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectDimBound {
    pub distance: u64,
    pub bound: u64,
    pub sides: Vec<u64>,
}

/// Every bound the library computes for one code, with witnesses.
/// Dimension bounds are evaluated at the Hartmann-Tzeng distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bch: u64,
    pub bch_witness: HtWitness,
    pub ht: u64,
    pub ht_witness: HtWitness,
    pub product_distance: u64,
    pub singleton_like: Vec<LocalSingletonBound>,
    pub singleton_like_min: Option<i64>,
    pub cube_dim_bound: Option<CubeDimBound>,
    pub rect_dim_bound: Option<RectDimBound>,
}

impl BoundReport {
    pub fn evaluate(code: &CyclicLrc) -> BoundReport {
        let params = code.params();
        let d = code.defining_set();
        let bch = bch_bound(d);
        let ht = ht_bound(d);
        let n = code.length() as u64;
        let k = code.dimension() as u64;

        let singleton_like_bounds: Vec<LocalSingletonBound> = if k >= 1 {
            params
                .lengths()
                .iter()
                .zip(params.rhos())
                .enumerate()
                .map(|(i, (&ni, &rho))| {
                    let r = ni - rho + 1;
                    LocalSingletonBound {
                        component: i,
                        r,
                        rho,
                        upper: singleton_like(n, k, r, rho)
                            .expect("valid params give valid bound arguments"),
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        let singleton_like_min = singleton_like_bounds.iter().map(|b| b.upper).min();

        let uniform_rho = params.rhos().iter().all(|&r| r == params.rhos()[0]);
        let dims_applicable = k >= 1 && ht.value <= n;
        let cube_dim_bound = (dims_applicable && uniform_rho).then(|| {
            let rho = params.rhos()[0];
            let mut sorted = params.lengths().to_vec();
            sorted.sort_unstable();
            let (xi, v) = xi_value(&sorted, rho, ht.value);
            CubeDimBound {
                distance: ht.value,
                xi,
                v,
                bound: dim_bound_cube(params.lengths(), rho, ht.value)
                    .expect("valid params give valid bound arguments"),
            }
        });
        let rect_dim_bound = dims_applicable.then(|| {
            let (bound, sides) = dim_bound_rect(params.lengths(), params.rhos(), ht.value)
                .expect("valid params give valid bound arguments");
            RectDimBound {
                distance: ht.value,
                bound,
                sides,
            }
        });

        BoundReport {
            bch: bch.value,
            bch_witness: bch.witness,
            ht: ht.value,
            ht_witness: ht.witness,
            product_distance: product_distance_bound(params),
            singleton_like: singleton_like_bounds,
            singleton_like_min,
            cube_dim_bound,
            rect_dim_bound,
        }
    }
}
