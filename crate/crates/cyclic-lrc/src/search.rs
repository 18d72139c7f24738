//! Search for the global exponent set D_g that maximizes the
//! Hartmann-Tzeng bound, and the built-in reference parameter table whose
//! certified values double as a golden regression check.

use rayon::iter::{ParallelBridge, ParallelIterator};
use serde::{Deserialize, Serialize};

use crate::bounds::{dim_bound_cube, ht_bound};
use crate::construction::{ConstructionParams, DefiningSet};
use crate::error::{Error, Result};

/// Default cap on the number of candidate subsets.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

/// Outcome of a global-set search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub global_set: Vec<u64>,
    pub ht: u64,
    pub dimension: u64,
    pub candidates: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc
            .saturating_mul((n - i) as u128)
            .checked_div((i + 1) as u128)
            .unwrap_or(u128::MAX);
    }
    acc
}

/// Lexicographic m-subsets of a sorted pool.
struct Combinations<'a> {
    pool: &'a [u64],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    fn new(pool: &'a [u64], m: usize) -> Combinations<'a> {
        Combinations {
            pool,
            idx: (0..m).collect(),
            done: m > pool.len(),
        }
    }
}

impl Iterator for Combinations<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out: Vec<u64> = self.idx.iter().map(|&i| self.pool[i]).collect();
        let m = self.idx.len();
        let mut pos = m;
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.idx[pos] < self.pool.len() - (m - pos) {
                self.idx[pos] += 1;
                for later in pos + 1..m {
                    self.idx[later] = self.idx[later - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Exhaustively searches all size-m extensions of the base defining set
/// for the one maximizing the Hartmann-Tzeng bound. By default candidates
/// exclude exponents already covered by the local sets (overlap buys no
/// new roots). Ties break to the lexicographically smallest exponent set;
/// candidates are evaluated in parallel but the outcome is deterministic.
pub fn optimize_dg(
    params: &ConstructionParams,
    size: usize,
    allow_overlap: bool,
    cap: u64,
) -> Result<SearchResult> {
    if !params.global_set().is_empty() {
        return Err(Error::SearchBaseNotEmpty);
    }
    let n = params.block_length();
    let base = params.base_defining_set();
    let pool: Vec<u64> = if allow_overlap {
        (0..n).collect()
    } else {
        (0..n).filter(|&e| !base.contains(e)).collect()
    };
    if size > pool.len() {
        return Err(Error::SearchSizeTooLarge {
            m: size,
            available: pool.len(),
        });
    }
    let candidates = binomial(pool.len(), size);
    if candidates > cap as u128 {
        return Err(Error::SearchSpaceTooLarge { candidates, cap });
    }

    let evaluate = |subset: Vec<u64>| -> (u64, Vec<u64>) {
        let mut ds = base.clone();
        for &e in &subset {
            ds.insert(e).expect("pool exponents are in range");
        }
        (ht_bound(&ds).value, subset)
    };

    let better = |a: (u64, Vec<u64>), b: (u64, Vec<u64>)| -> (u64, Vec<u64>) {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };

    let (ht, chosen) = Combinations::new(&pool, size)
        .par_bridge()
        .map(evaluate)
        .reduce_with(better)
        .expect("at least one candidate subset exists");

    let mut full = base;
    for &e in &chosen {
        full.insert(e).expect("pool exponents are in range");
    }
    Ok(SearchResult {
        global_set: chosen,
        ht,
        dimension: n - full.len() as u64,
        candidates: candidates as u64,
    })
}

/// One row of the reference parameter table: a two-component construction
/// with its certified Hartmann-Tzeng bound, dimension, and cube dimension
/// bound. All rows use rho = (2, 2), offsets (1, 1), shift 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub lengths: [u64; 2],
    pub global_set: Vec<u64>,
    pub distance_bound: u64,
    pub dimension: u64,
    pub dimension_bound: u64,
}

impl ReferenceRow {
    pub fn length(&self) -> u64 {
        self.lengths[0] * self.lengths[1]
    }

    pub fn params(&self) -> ConstructionParams {
        ConstructionParams::new(&self.lengths, &[2, 2])
            .expect("reference lengths are valid")
            .with_global_set(&self.global_set)
            .expect("reference exponents are in range")
    }
}

/// The certified reference rows. Each global set was chosen optimal for
/// the Hartmann-Tzeng bound at its size.
pub fn reference_rows() -> Vec<ReferenceRow> {
    let row = |lengths: [u64; 2], global_set: &[u64], d: u64, k: u64, bound: u64| ReferenceRow {
        lengths,
        global_set: global_set.to_vec(),
        distance_bound: d,
        dimension: k,
        dimension_bound: bound,
    };
    vec![
        row([3, 5], &[4], 5, 7, 7),
        row([3, 5], &[4, 7, 8, 11], 11, 4, 4),
        row([3, 7], &[8], 5, 11, 11),
        row([3, 7], &[4, 5], 6, 10, 11),
        row([3, 7], &[8, 10, 11, 13], 11, 8, 8),
        row([3, 17], &[16], 5, 31, 31),
        row([3, 17], &[14, 16], 6, 30, 31),
        row([3, 17], &[10, 11, 13, 14, 16], 11, 27, 28),
        row([5, 7], &[4], 4, 23, 24),
        row([5, 7], &[4, 6], 5, 22, 23),
        row([5, 7], &[8, 9, 11, 12, 13], 10, 19, 20),
    ]
}

/// A reference row together with the recomputed triple and a match flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub row: ReferenceRow,
    pub computed_distance_bound: u64,
    pub computed_dimension: u64,
    pub computed_dimension_bound: u64,
    pub pass: bool,
}

/// Recomputes every reference row from scratch and compares against the
/// certified values.
pub fn check_reference_rows() -> Vec<ReferenceCheck> {
    reference_rows()
        .into_iter()
        .map(|row| {
            let params = row.params();
            let defining: DefiningSet = params.full_defining_set();
            let ht = ht_bound(&defining).value;
            let dimension = row.length() - defining.len() as u64;
            let dim_bound = dim_bound_cube(&row.lengths, 2, ht)
                .expect("reference parameters are valid bound arguments");
            let pass = ht == row.distance_bound
                && dimension == row.dimension
                && dim_bound == row.dimension_bound;
            ReferenceCheck {
                row,
                computed_distance_bound: ht,
                computed_dimension: dimension,
                computed_dimension_bound: dim_bound,
                pass,
            }
        })
        .collect()
}
