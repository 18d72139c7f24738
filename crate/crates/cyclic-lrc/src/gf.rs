//! Finite fields GF(p^m) in the polynomial basis, with univariate
//! polynomial arithmetic over them.
//!
//! A [`FiniteField`] is built canonically: the modulus is the first monic
//! irreducible polynomial of degree m over GF(p) in coefficient order
//! (constant term least significant), and the primitive element is the
//! first element of multiplicative order q - 1 in the same order. Elements
//! are stored as packed base-p indices; multiplication goes through
//! discrete log/antilog tables, so every operation is O(1) or O(m).

use std::fmt;

use crate::error::{Error, Result};

/// Field orders are capped at 2^20; everything here is desk scale.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub(crate) fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            let mut e = 0;
            while x.is_multiple_of(d) {
                x /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// An element of a specific finite field, stored as a packed base-p index.
///
/// The packed index of an element with coefficients (c_0, ..., c_{m-1}) is
/// sum c_i p^i, so 0 is the zero element and 1 is the one element.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field_order: u32,
    index: u32,
}

impl FieldElement {
    /// Packed base-p index of the element.
    pub fn index(&self) -> u32 {
        self.index
    }

    /// Order of the field this element belongs to.
    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}:{}", self.field_order, self.index)
    }
}

/// A univariate polynomial over a finite field, lowest degree first.
///
/// The zero polynomial has an empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field_order: u32,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^i, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement {
            field_order: self.field_order,
            index: 0,
        })
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Immutable GF(p^m) arithmetic context. All operations are pure and the
/// struct is safe to share across threads.
pub struct FiniteField {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    gamma: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

// ---------------------------------------------------------------------------
// raw polynomial arithmetic over GF(p), used only while building a field
// ---------------------------------------------------------------------------

fn unpack_digits(p: u64, m: u32, mut idx: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn pack_digits(p: u64, digits: &[u64]) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `f` modulo the monic polynomial `g`, coefficients mod p.
fn poly_rem_modp(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let pos = shift + i;
                r[pos] = (r[pos] + p * p - (lead * gc) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn is_irreducible_modp(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for packed in 0..count {
            let mut g = unpack_digits(p, d as u32, packed);
            g.push(1);
            if poly_rem_modp(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree m over GF(p), scanning the
/// lower coefficients in packed order (constant term least significant).
fn find_modulus(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    for packed in 0..p.pow(m) {
        let mut f = unpack_digits(p, m, packed);
        f.push(1);
        if is_irreducible_modp(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

fn raw_mul(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    let mut r = poly_rem_modp(&prod, modulus, p);
    r.resize(m, 0);
    r
}

fn raw_pow(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut result = vec![0u64; m];
    result[0] = 1;
    let mut acc = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = raw_mul(&result, &acc, modulus, p);
        }
        acc = raw_mul(&acc, &acc, modulus, p);
        e >>= 1;
    }
    result
}

impl FiniteField {
    /// Builds GF(p^m) with the canonical modulus and primitive element.
    pub fn new(p: u64, m: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge { p, m })?;

        let modulus = find_modulus(p, m);
        let qm1 = q - 1;
        let one = {
            let mut v = vec![0u64; m as usize];
            v[0] = 1;
            v
        };

        let gamma = if q == 2 {
            1
        } else {
            let primes: Vec<u64> = factorize(qm1).into_iter().map(|(l, _)| l).collect();
            (2..q)
                .find(|&idx| {
                    let digits = unpack_digits(p, m, idx);
                    primes
                        .iter()
                        .all(|&l| raw_pow(&digits, qm1 / l, &modulus, p) != one)
                })
                .expect("the multiplicative group of a finite field is cyclic")
        };

        let gamma_digits = unpack_digits(p, m, gamma);
        let mut exp = Vec::with_capacity(qm1 as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = one.clone();
        for i in 0..qm1 {
            let packed = pack_digits(p, &cur) as u32;
            exp.push(packed);
            log[packed as usize] = i as u32;
            cur = raw_mul(&cur, &gamma_digits, &modulus, p);
        }
        debug_assert_eq!(cur, one, "primitive element must have order q - 1");

        Ok(FiniteField {
            p,
            m,
            q,
            modulus,
            gamma: gamma as u32,
            exp,
            log,
        })
    }

    /// Builds the field of the given prime-power order.
    pub fn for_order(q: u64) -> Result<FiniteField> {
        let factors = factorize(q);
        match factors.as_slice() {
            [(p, m)] => FiniteField::new(*p, *m),
            _ => Err(Error::NotPrimePower(q)),
        }
    }

    /// Smallest field whose order is congruent to 1 mod n, so that an n-th
    /// root of unity exists.
    pub fn find_for_length(n: u64) -> Result<FiniteField> {
        if n < 2 {
            return Err(Error::LengthTooSmall(n));
        }
        let mut q = n + 1;
        while q <= MAX_FIELD_ORDER {
            if factorize(q).len() == 1 {
                return FiniteField::for_order(q);
            }
            q += n;
        }
        Err(Error::NoFieldInRange(n))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients over GF(p), lowest degree first; monic of degree m.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.wrap(self.gamma)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    fn wrap(&self, index: u32) -> FieldElement {
        FieldElement {
            field_order: self.q as u32,
            index,
        }
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        assert!(
            a.field_order as u64 == self.q,
            "element of GF({}) used with GF({})",
            a.field_order,
            self.q
        );
    }

    /// Element with the given packed index.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.q {
            return Err(Error::ExponentOutOfRange {
                e: index,
                n: self.q,
            });
        }
        Ok(self.wrap(index as u32))
    }

    /// Embeds an integer residue as a constant (degree-zero) element.
    pub fn from_residue(&self, r: u64) -> FieldElement {
        self.wrap((r % self.p) as u32)
    }

    /// Coefficient vector of the element in the polynomial basis, length m.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u64> {
        self.check(a);
        unpack_digits(self.p, self.m, a.index as u64)
    }

    /// All field elements in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| self.wrap(i as u32))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let index = if self.m == 1 {
            ((a.index as u64 + b.index as u64) % self.p) as u32
        } else if self.p == 2 {
            a.index ^ b.index
        } else {
            let mut out = 0u64;
            let mut scale = 1u64;
            let (mut x, mut y) = (a.index as u64, b.index as u64);
            for _ in 0..self.m {
                out += (x % self.p + y % self.p) % self.p * scale;
                scale *= self.p;
                x /= self.p;
                y /= self.p;
            }
            out as u32
        };
        self.wrap(index)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        let index = if self.m == 1 {
            ((self.p - a.index as u64) % self.p) as u32
        } else if self.p == 2 {
            a.index
        } else {
            let mut out = 0u64;
            let mut scale = 1u64;
            let mut x = a.index as u64;
            for _ in 0..self.m {
                out += (self.p - x % self.p) % self.p * scale;
                scale *= self.p;
                x /= self.p;
            }
            out as u32
        };
        self.wrap(index)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.index == 0 || b.index == 0 {
            return self.zero();
        }
        let s =
            (self.log[a.index as usize] as u64 + self.log[b.index as usize] as u64) % (self.q - 1);
        self.wrap(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.index == 0 {
            return Err(Error::ZeroInverse);
        }
        let qm1 = self.q - 1;
        let s = (qm1 - self.log[a.index as usize] as u64) % qm1;
        Ok(self.wrap(self.exp[s as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        self.check(a);
        if a.index == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let qm1 = (self.q - 1) as u128;
        let s = (self.log[a.index as usize] as u128 * (e as u128 % qm1)) % qm1;
        self.wrap(self.exp[s as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FieldElement) -> Result<u64> {
        self.check(a);
        if a.index == 0 {
            return Err(Error::ZeroInverse);
        }
        let qm1 = self.q - 1;
        let l = self.log[a.index as usize] as u64;
        Ok(qm1 / gcd(qm1, l))
    }

    /// Returns gamma^((q-1)/n), an element of multiplicative order exactly n.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        let qm1 = self.q - 1;
        if n == 0 || !qm1.is_multiple_of(n) {
            return Err(Error::NoRootOfUnity { n, qm1 });
        }
        Ok(self.pow(self.primitive_element(), qm1 / n))
    }

    // -----------------------------------------------------------------------
    // polynomials over the field
    // -----------------------------------------------------------------------

    fn check_poly(&self, f: &Poly) {
        assert!(
            f.field_order as u64 == self.q,
            "polynomial over GF({}) used with GF({})",
            f.field_order,
            self.q
        );
    }

    /// Normalizing constructor: trims trailing zero coefficients.
    pub fn poly(&self, mut coeffs: Vec<FieldElement>) -> Poly {
        for &c in &coeffs {
            self.check(c);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field_order: self.q as u32,
            coeffs,
        }
    }

    /// Polynomial from packed element indices, lowest degree first.
    pub fn poly_from_indices(&self, indices: &[u64]) -> Result<Poly> {
        let coeffs = indices
            .iter()
            .map(|&i| self.element(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.poly(coeffs))
    }

    pub fn poly_zero(&self) -> Poly {
        self.poly(Vec::new())
    }

    pub fn poly_one(&self) -> Poly {
        self.poly(vec![self.one()])
    }

    pub fn poly_x(&self) -> Poly {
        self.poly(vec![self.zero(), self.one()])
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(&self, n: usize) -> Poly {
        let mut coeffs = vec![self.zero(); n + 1];
        coeffs[0] = self.neg(self.one());
        coeffs[n] = self.one();
        self.poly(coeffs)
    }

    pub fn poly_add(&self, f: &Poly, g: &Poly) -> Poly {
        self.check_poly(f);
        self.check_poly(g);
        let len = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..len).map(|i| self.add(f.coeff(i), g.coeff(i))).collect();
        self.poly(coeffs)
    }

    pub fn poly_sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.check_poly(f);
        self.check_poly(g);
        let len = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..len).map(|i| self.sub(f.coeff(i), g.coeff(i))).collect();
        self.poly(coeffs)
    }

    pub fn poly_scale(&self, c: FieldElement, f: &Poly) -> Poly {
        self.check(c);
        self.check_poly(f);
        self.poly(f.coeffs.iter().map(|&a| self.mul(c, a)).collect())
    }

    pub fn poly_mul(&self, f: &Poly, g: &Poly) -> Poly {
        self.check_poly(f);
        self.check_poly(g);
        if f.is_zero() || g.is_zero() {
            return self.poly_zero();
        }
        let mut coeffs = vec![self.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                coeffs[i + j] = self.add(coeffs[i + j], self.mul(a, b));
            }
        }
        self.poly(coeffs)
    }

    /// Quotient and remainder of f by g. Panics if g is zero.
    pub fn poly_divrem(&self, f: &Poly, g: &Poly) -> (Poly, Poly) {
        self.check_poly(f);
        self.check_poly(g);
        let dg = g.degree().expect("division by the zero polynomial");
        let lead_inv = self
            .inv(g.leading().unwrap())
            .expect("leading coefficient is nonzero");
        let mut rem = f.coeffs.clone();
        let mut quot = vec![self.zero(); f.coeffs.len().saturating_sub(dg)];
        while rem.len() > dg {
            let lead = *rem.last().unwrap();
            if !lead.is_zero() {
                let c = self.mul(lead, lead_inv);
                let shift = rem.len() - 1 - dg;
                quot[shift] = c;
                for (i, &gc) in g.coeffs.iter().enumerate() {
                    rem[shift + i] = self.sub(rem[shift + i], self.mul(c, gc));
                }
            }
            rem.pop();
        }
        (self.poly(quot), self.poly(rem))
    }

    pub fn poly_rem(&self, f: &Poly, g: &Poly) -> Poly {
        self.poly_divrem(f, g).1
    }

    /// Evaluates f at the point x by Horner's rule.
    pub fn poly_eval(&self, f: &Poly, x: FieldElement) -> FieldElement {
        self.check_poly(f);
        self.check(x);
        let mut acc = self.zero();
        for &c in f.coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Product of (x - r) over the given roots.
    pub fn poly_from_roots(&self, roots: &[FieldElement]) -> Poly {
        let mut acc = self.poly_one();
        for &r in roots {
            let factor = self.poly(vec![self.neg(r), self.one()]);
            acc = self.poly_mul(&acc, &factor);
        }
        acc
    }

    /// Renders a polynomial with coefficients shown as packed indices.
    pub fn poly_string(&self, f: &Poly) -> String {
        render_poly(&f.coeffs.iter().map(|c| c.index as u64).collect::<Vec<_>>())
    }

    /// Renders the field modulus as a polynomial over GF(p).
    pub fn modulus_string(&self) -> String {
        render_poly(&self.modulus)
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{} = {}, {})", self.p, self.m, self.q, self.modulus_string())
    }
}

fn render_poly(coeffs: &[u64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match d {
            0 => format!("{c}"),
            1 if c == 1 => "x".to_string(),
            1 => format!("{c}x"),
            _ if c == 1 => format!("x^{d}"),
            _ => format!("{c}x^{d}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
