//! Repair-set partitions, strong orthogonality, local-distance
//! verification, and erasure repair through the local groups.
//!
//! Component i partitions the positions 0..n into n/n_i groups
//! `A_{i,j} = { j + v * (n/n_i) : 0 <= v < n_i }`. Under the residue map
//! x -> (x mod n_1, ..., x mod n_t) each group varies exactly one
//! coordinate, which is what makes the t partitions strongly orthogonal
//! and the code a t-dimensional product-like code.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::construction::{ConstructionParams, CyclicLrc};
use crate::distance::span_min_weight;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::linalg::{self, SolveOutcome};

/// Message-space cap below which restricted codes are brute-forced.
pub const LOCAL_ENUM_BUDGET: u64 = 1 << 24;

/// Default largest dependent-column-set size probed by the rank method.
pub const LOCAL_RANK_CAP: usize = 4;

/// The t repair-set partitions of the positions 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFamily {
    length: usize,
    group_sizes: Vec<u64>,
    partitions: Vec<Vec<Vec<usize>>>,
}

impl PartitionFamily {
    pub fn length(&self) -> usize {
        self.length
    }

    /// Group size of partition i (= n_i).
    pub fn group_sizes(&self) -> &[u64] {
        &self.group_sizes
    }

    pub fn partition_count(&self) -> usize {
        self.partitions.len()
    }

    /// Groups of partition i, each a sorted position list.
    pub fn groups(&self, i: usize) -> &[Vec<usize>] {
        &self.partitions[i]
    }

    pub fn partitions(&self) -> &[Vec<Vec<usize>>] {
        &self.partitions
    }

    /// The group of partition i containing the given position.
    pub fn group_of(&self, i: usize, position: usize) -> &[usize] {
        let stride = self.length / self.group_sizes[i] as usize;
        &self.partitions[i][position % stride]
    }
}

/// Builds the repair-set partitions of the construction.
pub fn build_partitions(params: &ConstructionParams) -> PartitionFamily {
    let n = params.block_length() as usize;
    let mut partitions = Vec::with_capacity(params.component_count());
    for &ni in params.lengths() {
        let stride = n / ni as usize;
        let groups: Vec<Vec<usize>> = (0..stride)
            .map(|j| (0..ni as usize).map(|v| (j + v * stride) % n).collect())
            .collect();
        partitions.push(groups);
    }
    PartitionFamily {
        length: n,
        group_sizes: params.lengths().to_vec(),
        partitions,
    }
}

/// Residue tuple (x mod n_1, ..., x mod n_t); bijective on 0..prod(n_i)
/// when the moduli are pairwise coprime.
pub fn crt_map(x: u64, n_list: &[u64]) -> Result<Vec<u64>> {
    let n: u64 = n_list.iter().product();
    if x >= n {
        return Err(Error::PositionOutOfRange(x as usize));
    }
    Ok(n_list.iter().map(|&ni| x % ni).collect())
}

/// Strong orthogonality under an arbitrary position-to-tuple map: the map
/// must be a bijection onto distinct tuples and, within every group of
/// partition i, all coordinates except coordinate i must stay constant.
pub fn check_strong_orthogonality_with<F>(
    partitions: &[Vec<Vec<usize>>],
    length: usize,
    map: F,
) -> Result<bool>
where
    F: Fn(usize) -> Vec<u64>,
{
    let t = partitions.len();
    for partition in partitions {
        let mut seen = vec![false; length];
        for group in partition {
            for &pos in group {
                if pos >= length || seen[pos] {
                    return Err(Error::MalformedPartition);
                }
                seen[pos] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::MalformedPartition);
        }
    }

    let tuples: Vec<Vec<u64>> = (0..length).map(&map).collect();
    if tuples.iter().any(|tup| tup.len() != t) {
        return Err(Error::MalformedPartition);
    }
    let distinct: HashSet<&Vec<u64>> = tuples.iter().collect();
    if distinct.len() != length {
        return Ok(false);
    }

    for (i, partition) in partitions.iter().enumerate() {
        for group in partition {
            let reference = &tuples[group[0]];
            for &pos in &group[1..] {
                let tup = &tuples[pos];
                for coord in 0..t {
                    if coord != i && tup[coord] != reference[coord] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Strong orthogonality of a built partition family under the residue map.
pub fn check_strong_orthogonality(family: &PartitionFamily) -> bool {
    let n_list = family.group_sizes.clone();
    check_strong_orthogonality_with(&family.partitions, family.length, |x| {
        crt_map(x as u64, &n_list).expect("positions are in range")
    })
    .expect("built partitions are well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalDistanceMethod {
    Exhaustive,
    ParityRank,
}

/// Verified lower bound on the distance of a restricted code. A bound of
/// s + 1 on s positions means the restriction is the zero code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDistance {
    pub bound: usize,
    pub exact: bool,
    pub method: LocalDistanceMethod,
    pub restricted_dimension: usize,
}

fn validate_positions(code: &CyclicLrc, positions: &[usize]) -> Result<()> {
    if positions.is_empty() {
        return Err(Error::EmptyPositions);
    }
    let mut seen = vec![false; code.length()];
    for &pos in positions {
        if pos >= code.length() {
            return Err(Error::PositionOutOfRange(pos));
        }
        if seen[pos] {
            return Err(Error::DuplicatePosition(pos));
        }
        seen[pos] = true;
    }
    Ok(())
}

/// Row-reduced basis of the code restricted (punctured) to `positions`.
fn restricted_basis(code: &CyclicLrc, positions: &[usize]) -> Vec<Vec<FieldElement>> {
    let mut rows: Vec<Vec<FieldElement>> = code
        .generator_matrix()
        .iter()
        .map(|row| positions.iter().map(|&p| row[p]).collect())
        .collect();
    linalg::rref(code.field(), &mut rows);
    rows
}

fn trivial_local_distance(
    restricted_dimension: usize,
    width: usize,
) -> Option<LocalDistance> {
    if restricted_dimension == 0 {
        // zero restriction: no nonzero codewords at all
        return Some(LocalDistance {
            bound: width + 1,
            exact: true,
            method: LocalDistanceMethod::Exhaustive,
            restricted_dimension,
        });
    }
    if restricted_dimension == width {
        // full restriction contains weight-1 words
        return Some(LocalDistance {
            bound: 1,
            exact: true,
            method: LocalDistanceMethod::Exhaustive,
            restricted_dimension,
        });
    }
    None
}

/// Exact restricted distance by message enumeration. Errors if q^dim
/// exceeds the budget.
pub fn local_distance_exhaustive(
    code: &CyclicLrc,
    positions: &[usize],
    budget: u64,
) -> Result<LocalDistance> {
    validate_positions(code, positions)?;
    let basis = restricted_basis(code, positions);
    if let Some(trivial) = trivial_local_distance(basis.len(), positions.len()) {
        return Ok(trivial);
    }
    let size = (code.field().order() as u128)
        .checked_pow(basis.len() as u32)
        .unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::SearchSpaceTooLarge {
            candidates: size,
            cap: budget,
        });
    }
    let (weight, _) = span_min_weight(code.field(), &basis);
    Ok(LocalDistance {
        bound: weight,
        exact: true,
        method: LocalDistanceMethod::Exhaustive,
        restricted_dimension: basis.len(),
    })
}

/// Enumerates c-subsets of 0..total in lexicographic order.
fn for_each_subset(total: usize, c: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..c).collect();
    if c > total {
        return;
    }
    loop {
        if f(&idx) {
            return;
        }
        let mut pos = c;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < total - (c - pos) {
                idx[pos] += 1;
                for later in pos + 1..c {
                    idx[later] = idx[later - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Restricted distance via the parity-check columns: the distance equals
/// the smallest number of linearly dependent columns, probed for sizes
/// 1..=cap. When no dependency appears the result is the lower bound
/// cap + 1 (not exact).
pub fn local_distance_rank(
    code: &CyclicLrc,
    positions: &[usize],
    cap: usize,
) -> Result<LocalDistance> {
    validate_positions(code, positions)?;
    let basis = restricted_basis(code, positions);
    let width = positions.len();
    if let Some(trivial) = trivial_local_distance(basis.len(), width) {
        return Ok(trivial);
    }
    let field = code.field();
    let parity = linalg::kernel_basis(field, &basis, width);
    // columns of the parity matrix, one vector per code position
    let columns: Vec<Vec<FieldElement>> = (0..width)
        .map(|j| parity.iter().map(|row| row[j]).collect())
        .collect();

    let cap = cap.min(width);
    for c in 1..=cap {
        let mut dependent = false;
        for_each_subset(width, c, |subset| {
            let chosen: Vec<Vec<FieldElement>> =
                subset.iter().map(|&j| columns[j].clone()).collect();
            if linalg::rank(field, &chosen) < c {
                dependent = true;
            }
            dependent
        });
        if dependent {
            return Ok(LocalDistance {
                bound: c,
                exact: true,
                method: LocalDistanceMethod::ParityRank,
                restricted_dimension: basis.len(),
            });
        }
    }
    Ok(LocalDistance {
        bound: cap + 1,
        exact: false,
        method: LocalDistanceMethod::ParityRank,
        restricted_dimension: basis.len(),
    })
}

/// Restricted distance with automatic method selection: exhaustive when
/// the restricted message space is small, parity-rank otherwise.
pub fn local_distance(code: &CyclicLrc, positions: &[usize]) -> Result<LocalDistance> {
    validate_positions(code, positions)?;
    let basis = restricted_basis(code, positions);
    if let Some(trivial) = trivial_local_distance(basis.len(), positions.len()) {
        return Ok(trivial);
    }
    let size = (code.field().order() as u128)
        .checked_pow(basis.len() as u32)
        .unwrap_or(u128::MAX);
    if size <= LOCAL_ENUM_BUDGET as u128 {
        local_distance_exhaustive(code, positions, LOCAL_ENUM_BUDGET)
    } else {
        local_distance_rank(code, positions, LOCAL_RANK_CAP)
    }
}

/// Locality parameters of one component: group size n_i, local distance
/// rho_i, and locality r_i = n_i - rho_i + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityProfile {
    pub component: usize,
    pub group_size: u64,
    pub rho: u64,
    pub r: u64,
}

/// Verification outcome for one repair group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCheck {
    pub partition: usize,
    pub group: usize,
    pub positions: Vec<usize>,
    pub required: u64,
    pub bound: usize,
    pub exact: bool,
    pub method: LocalDistanceMethod,
    pub pass: bool,
}

/// Group-by-group availability verification plus the orthogonality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvailabilityReport {
    pub profiles: Vec<LocalityProfile>,
    pub strongly_orthogonal: bool,
    pub groups: Vec<GroupCheck>,
}

impl AvailabilityReport {
    pub fn all_pass(&self) -> bool {
        self.strongly_orthogonal && self.groups.iter().all(|g| g.pass)
    }
}

/// Verifies that every repair group of every partition reaches its local
/// distance rho_i, and that the partitions are strongly orthogonal.
/// Results are ordered by (partition, group).
pub fn verify_availability(code: &CyclicLrc) -> AvailabilityReport {
    let params = code.params();
    let family = build_partitions(params);
    let profiles = params
        .lengths()
        .iter()
        .zip(params.rhos())
        .enumerate()
        .map(|(component, (&ni, &rho))| LocalityProfile {
            component,
            group_size: ni,
            rho,
            r: ni - rho + 1,
        })
        .collect();

    let mut groups = Vec::new();
    for (i, partition) in family.partitions().iter().enumerate() {
        let required = params.rhos()[i];
        for (j, positions) in partition.iter().enumerate() {
            let ld = local_distance(code, positions).expect("groups are valid position sets");
            groups.push(GroupCheck {
                partition: i,
                group: j,
                positions: positions.clone(),
                required,
                bound: ld.bound,
                exact: ld.exact,
                method: ld.method,
                pass: ld.bound as u64 >= required,
            });
        }
    }

    AvailabilityReport {
        profiles,
        strongly_orthogonal: check_strong_orthogonality(&family),
        groups,
    }
}

/// Repairs erasures group by group through partition i, solving the
/// restricted parity checks at the erased coordinates. Every group may
/// hold at most rho_i - 1 erasures.
pub fn repair(
    code: &CyclicLrc,
    word: &[Option<FieldElement>],
    partition: usize,
) -> Result<Vec<FieldElement>> {
    if word.len() != code.length() {
        return Err(Error::WrongLength {
            expected: code.length(),
            got: word.len(),
        });
    }
    if partition >= code.params().component_count() {
        return Err(Error::PartitionIndex(partition));
    }
    let family = build_partitions(code.params());
    let rho = code.params().rhos()[partition];
    let field = code.field();
    let mut repaired: Vec<Option<FieldElement>> = word.to_vec();

    for (j, group) in family.groups(partition).iter().enumerate() {
        let erased: Vec<usize> = (0..group.len())
            .filter(|&local| word[group[local]].is_none())
            .collect();
        if erased.is_empty() {
            continue;
        }
        if erased.len() as u64 > rho - 1 {
            return Err(Error::TooManyErasures {
                partition,
                group: j,
                count: erased.len(),
                max: (rho - 1) as usize,
            });
        }

        let basis = restricted_basis(code, group);
        let parity = linalg::kernel_basis(field, &basis, group.len());
        if parity.is_empty() {
            return Err(Error::AmbiguousRepair);
        }
        // split each parity row into erased-coefficient part and the
        // known-symbol contribution moved to the right-hand side
        let mut lhs = Vec::with_capacity(parity.len());
        let mut rhs = Vec::with_capacity(parity.len());
        for row in &parity {
            lhs.push(erased.iter().map(|&local| row[local]).collect::<Vec<_>>());
            let mut acc = field.zero();
            for (local, &pos) in group.iter().enumerate() {
                if let Some(value) = word[pos] {
                    acc = field.add(acc, field.mul(row[local], value));
                }
            }
            rhs.push(field.neg(acc));
        }
        match linalg::solve(field, &lhs, &rhs) {
            SolveOutcome::Unique(values) => {
                for (&local, &value) in erased.iter().zip(&values) {
                    repaired[group[local]] = Some(value);
                }
            }
            SolveOutcome::Inconsistent => return Err(Error::InconsistentWord),
            SolveOutcome::Underdetermined => return Err(Error::AmbiguousRepair),
        }
    }

    Ok(repaired
        .into_iter()
        .map(|s| s.expect("every position belongs to a group of the partition"))
        .collect())
}
