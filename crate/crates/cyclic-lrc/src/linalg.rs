//! Small dense matrix routines over a finite field: row reduction, kernel
//! bases, and linear solves. Everything here works on `Vec<Vec<FieldElement>>`
//! row-major matrices; sizes are tiny (n <= a few hundred).

use crate::gf::{FieldElement, FiniteField};

/// Reduces `rows` to reduced row echelon form in place, drops zero rows,
/// and returns the pivot column of each remaining row (strictly increasing).
pub(crate) fn rref(field: &FiniteField, rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = field
            .inv(rows[rank][col])
            .expect("pivot entry is nonzero");
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of the right kernel {x : A x = 0} of a matrix given by `rows`.
/// The rows need not be independent.
pub(crate) fn kernel_basis(
    field: &FiniteField,
    rows: &[Vec<FieldElement>],
    width: usize,
) -> Vec<Vec<FieldElement>> {
    let mut reduced: Vec<Vec<FieldElement>> = rows.to_vec();
    let pivots = rref(field, &mut reduced);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; width];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..width).filter(|&c| !pivot_set[c]) {
        let mut v = vec![field.zero(); width];
        v[free] = field.one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

pub(crate) enum SolveOutcome {
    Unique(Vec<FieldElement>),
    Inconsistent,
    Underdetermined,
}

/// Solves A x = b for x by Gaussian elimination on the augmented matrix.
pub(crate) fn solve(
    field: &FiniteField,
    a: &[Vec<FieldElement>],
    b: &[FieldElement],
) -> SolveOutcome {
    assert_eq!(a.len(), b.len(), "matrix and right-hand side disagree");
    let unknowns = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&unknowns) {
        return SolveOutcome::Inconsistent;
    }
    if pivots.len() < unknowns {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![field.zero(); unknowns];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[unknowns];
    }
    SolveOutcome::Unique(x)
}

/// Rank of the matrix spanned by `rows`.
pub(crate) fn rank(field: &FiniteField, rows: &[Vec<FieldElement>]) -> usize {
    let mut copy = rows.to_vec();
    rref(field, &mut copy).len()
}
