//! Defining sets and the cyclic LRC construction.
//!
//! A code is specified by pairwise-coprime component lengths n_1..n_t,
//! local distances rho_1..rho_t, per-component offsets b_i coprime to n_i,
//! a global shift l, and a global exponent set D_g. Component i contributes
//! the local root set
//!
//! ```text
//! D_i = { (j*n_i + s*b_i + l) mod n : 0 <= j < n/n_i, 0 <= s <= rho_i - 2 }
//! ```
//!
//! and the code is the cyclic code over GF(q), n | q - 1, whose generator
//! polynomial has roots alpha^e exactly for e in D = D_1 u ... u D_t u D_g.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{gcd, FieldElement, FiniteField, Poly};
use crate::linalg;

/// Sorted set of exponents modulo n; the roots alpha^e of a generator
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    modulus: u64,
    exponents: BTreeSet<u64>,
}

impl DefiningSet {
    pub fn new(modulus: u64, exponents: impl IntoIterator<Item = u64>) -> Result<DefiningSet> {
        let mut set = BTreeSet::new();
        for e in exponents {
            if e >= modulus {
                return Err(Error::ExponentOutOfRange { e, n: modulus });
            }
            set.insert(e);
        }
        Ok(DefiningSet {
            modulus,
            exponents: set,
        })
    }

    pub fn empty(modulus: u64) -> DefiningSet {
        DefiningSet {
            modulus,
            exponents: BTreeSet::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// True when every exponent 0..n is present (the zero code).
    pub fn is_full(&self) -> bool {
        self.exponents.len() as u64 == self.modulus
    }

    pub fn contains(&self, e: u64) -> bool {
        self.exponents.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.exponents.iter().copied().collect()
    }

    pub fn union(&self, other: &DefiningSet) -> Result<DefiningSet> {
        if self.modulus != other.modulus {
            return Err(Error::ExponentOutOfRange {
                e: other.modulus,
                n: self.modulus,
            });
        }
        let mut exponents = self.exponents.clone();
        exponents.extend(&other.exponents);
        Ok(DefiningSet {
            modulus: self.modulus,
            exponents,
        })
    }

    pub fn insert(&mut self, e: u64) -> Result<()> {
        if e >= self.modulus {
            return Err(Error::ExponentOutOfRange {
                e,
                n: self.modulus,
            });
        }
        self.exponents.insert(e);
        Ok(())
    }

    /// Membership table indexed by exponent.
    pub(crate) fn membership(&self) -> Vec<bool> {
        let mut v = vec![false; self.modulus as usize];
        for &e in &self.exponents {
            v[e as usize] = true;
        }
        v
    }
}

/// Parameters of the construction: component lengths, local distances,
/// offsets, global shift, global exponent set, and an optional field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    lengths: Vec<u64>,
    rhos: Vec<u64>,
    offsets: Vec<u64>,
    shift: u64,
    global_set: BTreeSet<u64>,
    field_order: Option<u64>,
}

impl ConstructionParams {
    /// Validates lengths and local distances; offsets default to 1, the
    /// shift to 0, and the global set to empty.
    pub fn new(lengths: &[u64], rhos: &[u64]) -> Result<ConstructionParams> {
        if lengths.is_empty() || lengths.len() != rhos.len() {
            return Err(Error::ParamShape);
        }
        let mut n: u64 = 1;
        for (i, &ni) in lengths.iter().enumerate() {
            if ni < 2 {
                return Err(Error::LengthTooSmall(ni));
            }
            for &nj in &lengths[..i] {
                if gcd(ni, nj) != 1 {
                    return Err(Error::NotCoprime(nj, ni));
                }
            }
            n = n.checked_mul(ni).ok_or(Error::ParamShape)?;
        }
        for (i, (&rho, &ni)) in rhos.iter().zip(lengths).enumerate() {
            if rho < 2 || rho > ni {
                return Err(Error::RhoOutOfRange { i, rho, n_i: ni });
            }
        }
        Ok(ConstructionParams {
            lengths: lengths.to_vec(),
            rhos: rhos.to_vec(),
            offsets: vec![1; lengths.len()],
            shift: 0,
            global_set: BTreeSet::new(),
            field_order: None,
        })
    }

    /// Sets the per-component offsets b_i; each must be coprime to n_i.
    pub fn with_offsets(mut self, offsets: &[u64]) -> Result<ConstructionParams> {
        if offsets.len() != self.lengths.len() {
            return Err(Error::ParamShape);
        }
        for (i, (&b, &ni)) in offsets.iter().zip(&self.lengths).enumerate() {
            if gcd(ni, b) != 1 {
                return Err(Error::OffsetNotUnit { i, b, n_i: ni });
            }
        }
        self.offsets = offsets.to_vec();
        Ok(self)
    }

    /// Sets the global shift l (reduced mod n).
    pub fn with_shift(mut self, shift: u64) -> ConstructionParams {
        self.shift = shift % self.block_length();
        self
    }

    /// Sets the global exponent set D_g, a subset of 0..n.
    pub fn with_global_set(mut self, exponents: &[u64]) -> Result<ConstructionParams> {
        let n = self.block_length();
        let mut set = BTreeSet::new();
        for &e in exponents {
            if e >= n {
                return Err(Error::ExponentOutOfRange { e, n });
            }
            set.insert(e);
        }
        self.global_set = set;
        Ok(self)
    }

    /// Pins the field order q; n must divide q - 1.
    pub fn with_field_order(mut self, q: u64) -> Result<ConstructionParams> {
        let n = self.block_length();
        if q < 2 || !(q - 1).is_multiple_of(n) {
            return Err(Error::FieldLengthMismatch { q, n });
        }
        self.field_order = Some(q);
        Ok(self)
    }

    /// Number of components t.
    pub fn component_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn rhos(&self) -> &[u64] {
        &self.rhos
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn global_set(&self) -> Vec<u64> {
        self.global_set.iter().copied().collect()
    }

    pub fn field_order(&self) -> Option<u64> {
        self.field_order
    }

    /// Code length n, the product of the component lengths.
    pub fn block_length(&self) -> u64 {
        self.lengths.iter().product()
    }

    /// Local root set D_i of component i (0-based).
    pub fn local_defining_set(&self, i: usize) -> Result<DefiningSet> {
        if i >= self.lengths.len() {
            return Err(Error::PartitionIndex(i));
        }
        let n = self.block_length();
        let ni = self.lengths[i];
        let b = self.offsets[i] as u128;
        let mut exponents = BTreeSet::new();
        for j in 0..n / ni {
            for s in 0..self.rhos[i] - 1 {
                let e = (j as u128 * ni as u128 + s as u128 * b + self.shift as u128)
                    % n as u128;
                exponents.insert(e as u64);
            }
        }
        Ok(DefiningSet {
            modulus: n,
            exponents,
        })
    }

    /// Union of the local root sets, without D_g.
    pub fn base_defining_set(&self) -> DefiningSet {
        let n = self.block_length();
        let mut exponents = BTreeSet::new();
        for i in 0..self.lengths.len() {
            exponents.extend(self.local_defining_set(i).unwrap().exponents);
        }
        DefiningSet {
            modulus: n,
            exponents,
        }
    }

    /// Full defining set D = D_1 u ... u D_t u D_g.
    pub fn full_defining_set(&self) -> DefiningSet {
        let mut ds = self.base_defining_set();
        ds.exponents.extend(&self.global_set);
        ds
    }

    /// Exponents of D_g already covered by some local set. Legal but
    /// wasteful: they cost dimension without adding roots.
    pub fn global_overlap(&self) -> Vec<u64> {
        let base = self.base_defining_set();
        self.global_set
            .iter()
            .copied()
            .filter(|&e| base.contains(e))
            .collect()
    }
}

/// A built cyclic LRC: field, root of unity, defining set, generator
/// polynomial, and the shift-basis generator matrix. Immutable.
pub struct CyclicLrc {
    field: Arc<FiniteField>,
    params: ConstructionParams,
    length: usize,
    root: FieldElement,
    defining_set: DefiningSet,
    generator: Poly,
    dimension: usize,
    matrix: Vec<Vec<FieldElement>>,
}

impl CyclicLrc {
    /// Builds the code over the requested field, or over the smallest field
    /// with n | q - 1 when none is given.
    pub fn build(params: ConstructionParams) -> Result<CyclicLrc> {
        let n = params.block_length();
        let field = match params.field_order {
            Some(q) => FiniteField::for_order(q)?,
            None => FiniteField::find_for_length(n)?,
        };
        if (field.order() - 1) % n != 0 {
            return Err(Error::FieldLengthMismatch {
                q: field.order(),
                n,
            });
        }
        let root = field.nth_root_of_unity(n)?;
        let defining_set = params.full_defining_set();
        let roots: Vec<FieldElement> = defining_set.iter().map(|e| field.pow(root, e)).collect();
        let generator = field.poly_from_roots(&roots);
        debug_assert_eq!(generator.degree().unwrap_or(0), defining_set.len());

        let n = n as usize;
        let dimension = n - defining_set.len();
        let mut matrix = Vec::with_capacity(dimension);
        for i in 0..dimension {
            let mut row = vec![field.zero(); n];
            for (j, &c) in generator.coeffs().iter().enumerate() {
                row[i + j] = c;
            }
            matrix.push(row);
        }

        Ok(CyclicLrc {
            field: Arc::new(field),
            params,
            length: n,
            root,
            defining_set,
            generator,
            dimension,
            matrix,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    /// Code length n.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Code dimension k = n - |D|.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The n-th root of unity alpha whose powers index the defining set.
    pub fn root(&self) -> FieldElement {
        self.root
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    pub fn generator_poly(&self) -> &Poly {
        &self.generator
    }

    /// Shift-basis generator matrix: row i holds the coefficients of
    /// x^i * g(x). Empty for the zero code.
    pub fn generator_matrix(&self) -> &[Vec<FieldElement>] {
        &self.matrix
    }

    /// Row-reduced view [I_k | A] of the generator matrix.
    pub fn systematic_generator(&self) -> Vec<Vec<FieldElement>> {
        let mut rows = self.matrix.clone();
        linalg::rref(&self.field, &mut rows);
        rows
    }

    /// Encodes k message symbols as the coefficients of m(x) * g(x).
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.dimension {
            return Err(Error::WrongLength {
                expected: self.dimension,
                got: message.len(),
            });
        }
        let m_poly = self.field.poly(message.to_vec());
        let product = self.field.poly_mul(&m_poly, &self.generator);
        let mut word = vec![self.field.zero(); self.length];
        for (i, &c) in product.coeffs().iter().enumerate() {
            word[i] = c;
        }
        Ok(word)
    }

    /// True when the word polynomial vanishes at alpha^e for every e in D.
    pub fn is_codeword(&self, word: &[FieldElement]) -> Result<bool> {
        if word.len() != self.length {
            return Err(Error::WrongLength {
                expected: self.length,
                got: word.len(),
            });
        }
        let poly = self.field.poly(word.to_vec());
        Ok(self
            .defining_set
            .iter()
            .all(|e| self.field.poly_eval(&poly, self.field.pow(self.root, e)).is_zero()))
    }

    /// Hamming weight of a word.
    pub fn weight(word: &[FieldElement]) -> usize {
        word.iter().filter(|c| !c.is_zero()).count()
    }
}
