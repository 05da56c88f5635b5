//! Construction of and arithmetic in the finite fields F_{p^n}.
//!
//! Elements are stored in the polynomial basis: an element is a coefficient
//! vector `[c_0, .., c_{n-1}]` over F_p, low degree first, representing
//! `c_0 + c_1 t + .. + c_{n-1} t^{n-1}` modulo a monic irreducible of degree
//! `n`. The canonical index of an element is `sum c_i * p^i`, which orders
//! the field `0, 1, .., p-1, t, 1+t, ..` and is used for table lookups and
//! all deterministic tie-breaking.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

/// Largest supported characteristic.
pub const MAX_PRIME: u64 = 61;
/// Largest supported field order p^n.
pub const MAX_ORDER: u64 = 1 << 20;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` divided by a monic polynomial `m` over F_p.
/// Both are coefficient vectors, low degree first.
fn poly_rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1);
    let d = m.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > d {
        let lead = *r.last().unwrap() % p;
        let k = r.len() - 1 - d;
        if lead != 0 {
            for i in 0..d {
                r[k + i] = (r[k + i] + (p - lead) * m[i]) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_zero_poly(r: &[u64]) -> bool {
    r.iter().all(|&c| c == 0)
}

/// Brute-force irreducibility over F_p: a monic polynomial of degree n >= 1
/// is irreducible iff no monic polynomial of degree 1..=n/2 divides it.
fn is_irreducible(coeffs: &[u64], p: u64) -> bool {
    let n = coeffs.len() - 1;
    for d in 1..=n / 2 {
        let mut div = vec![0u64; d + 1];
        div[d] = 1;
        loop {
            if is_zero_poly(&poly_rem_monic(coeffs, &div, p)) {
                return false;
            }
            // next divisor: increment the low d coefficients as a base-p counter
            let mut i = 0;
            while i < d {
                div[i] += 1;
                if div[i] < p {
                    break;
                }
                div[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

/// The monic irreducible of degree n over F_p whose coefficient list
/// (low degree first) is lexicographically smallest.
fn default_modulus(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        // Placeholder `x - 0`; degree-1 arithmetic never reduces.
        return vec![0, 1];
    }
    let total = (p as u128).pow(n as u32);
    let mut k: u128 = 0;
    while k < total {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        let mut rem = k;
        // c_0 is the most significant digit so that increasing k walks the
        // coefficient lists in lexicographic order.
        for i in (0..n).rev() {
            coeffs[i] = (rem % p as u128) as u64;
            rem /= p as u128;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        k += 1;
    }
    unreachable!("irreducible polynomials exist in every degree");
}

/// A field F_{p^n} described by its characteristic, extension degree and
/// defining modulus (monic, degree n, coefficients low degree first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
}

#[derive(Deserialize)]
struct RawFieldSpec {
    p: u64,
    n: usize,
    #[serde(default)]
    modulus: Option<Vec<u64>>,
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawFieldSpec::deserialize(deserializer)?;
        FieldSpec::new(raw.p, raw.n, raw.modulus).map_err(serde::de::Error::custom)
    }
}

/// An element of some F_{p^n}: coefficients over F_p, low degree first.
/// Ordering follows the canonical index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl FieldSpec {
    /// Builds F_{p^n}. When `modulus` is `None` the lexicographically
    /// smallest monic irreducible of degree n is selected, making the
    /// construction fully deterministic.
    pub fn new(p: u64, n: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if n == 0 {
            return Err(Error::RangeError(
                "extension degree n must be at least 1".into(),
            ));
        }
        if (p as u128).pow(n as u32) > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge { p, n });
        }
        let modulus = match modulus {
            None => default_modulus(p, n),
            Some(m) => {
                if m.len() != n + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: n + 1,
                        got: m.len(),
                    });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficients must lie in [0, {p})"
                    )));
                }
                if *m.last().unwrap() != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if n == 1 {
                    if m != vec![0, 1] {
                        return Err(Error::InvalidModulus(
                            "degree-1 fields use the fixed placeholder modulus [0, 1]".into(),
                        ));
                    }
                } else if !is_irreducible(&m, p) {
                    return Err(Error::Reducible { p, modulus: m });
                }
                m
            }
        };
        Ok(FieldSpec { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field order q = p^n.
    pub fn order(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.n],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    /// Embeds the prime-field scalar `c mod p` as a constant.
    pub fn scalar(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    /// The residue class t (requires n >= 2).
    pub fn generator_t(&self) -> Result<FieldElement> {
        if self.n < 2 {
            return Err(Error::RangeError(
                "the residue class t requires extension degree n >= 2".into(),
            ));
        }
        self.element_from_index(self.p)
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        e.coeffs.len() == self.n && e.coeffs.iter().all(|&c| c < self.p)
    }

    pub fn element_from_coeffs(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        let e = FieldElement { coeffs };
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Canonical index of an element: sum of `c_i * p^i`.
    pub fn index_of(&self, e: &FieldElement) -> u64 {
        debug_assert!(self.contains(e));
        let mut idx = 0;
        for &c in e.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn element_from_index(&self, idx: u64) -> Result<FieldElement> {
        if idx >= self.order() {
            return Err(Error::RangeError(format!(
                "element index {idx} outside field of order {}",
                self.order()
            )));
        }
        let mut coeffs = vec![0; self.n];
        let mut rem = idx;
        for c in coeffs.iter_mut() {
            *c = rem % self.p;
            rem /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    /// All field elements in canonical index order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order())
            .map(|i| self.element_from_index(i).unwrap())
            .collect()
    }

    /// Canonical index of the sum of the elements with indices `i` and `j`.
    pub fn index_add(&self, i: u64, j: u64) -> u64 {
        let (mut a, mut b) = (i, j);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        debug_assert!(self.contains(a));
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    /// Scalar action of `iota mod p`.
    pub fn scalar_mul(&self, iota: u64, a: &FieldElement) -> FieldElement {
        debug_assert!(self.contains(a));
        let s = iota % self.p;
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| x * s % self.p).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let n = self.n;
        if n == 1 {
            return FieldElement {
                coeffs: vec![a.coeffs[0] * b.coeffs[0] % self.p],
            };
        }
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce x^k = -(m_0 x^{k-n} + .. + m_{n-1} x^{k-1}) using the monic modulus
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for i in 0..n {
                    prod[k - n + i] = (prod[k - n + i] + (self.p - self.modulus[i]) * c) % self.p;
                }
            }
        }
        prod.truncate(n);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(q-2).
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }
}

/// An ordered F_p-basis of F_{p^n}. The columns of `matrix` hold the basis
/// vectors in polynomial-basis coordinates; the inverse is cached so that
/// coordinate extraction is a single matrix application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    spec: FieldSpec,
    vectors: Vec<FieldElement>,
    matrix: FpMatrix,
    inverse: FpMatrix,
}

impl Basis {
    /// Basis from an explicit ordered list of n independent vectors.
    pub fn new(spec: &FieldSpec, vectors: Vec<FieldElement>) -> Result<Self> {
        if vectors.len() != spec.n {
            return Err(Error::LengthMismatch {
                left: vectors.len(),
                right: spec.n,
            });
        }
        if vectors.iter().any(|v| !spec.contains(v)) {
            return Err(Error::FieldMismatch);
        }
        Self::from_vectors(spec, vectors)
    }

    fn from_vectors(spec: &FieldSpec, vectors: Vec<FieldElement>) -> Result<Self> {
        let cols: Vec<Vec<u64>> = vectors.iter().map(|v| v.coeffs.clone()).collect();
        let matrix = FpMatrix::from_columns(spec.p, spec.n, &cols);
        let inverse = matrix.inverse().ok_or(Error::DependentDirections)?;
        Ok(Basis {
            spec: spec.clone(),
            vectors,
            matrix,
            inverse,
        })
    }

    /// The polynomial basis 1, t, .., t^{n-1}.
    pub fn standard(spec: &FieldSpec) -> Self {
        let vectors = (0..spec.n)
            .map(|i| {
                let mut coeffs = vec![0; spec.n];
                coeffs[i] = 1;
                FieldElement { coeffs }
            })
            .collect();
        Self::from_vectors(spec, vectors).expect("unit vectors are independent")
    }

    /// Completes `alpha` (and optionally `beta`) to a full basis, scanning
    /// the remaining elements in canonical index order and keeping each one
    /// that enlarges the span. Deterministic.
    pub fn with_leading(
        spec: &FieldSpec,
        alpha: &FieldElement,
        beta: Option<&FieldElement>,
    ) -> Result<Self> {
        if !spec.contains(alpha) || !beta.map_or(true, |b| spec.contains(b)) {
            return Err(Error::FieldMismatch);
        }
        if alpha.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let mut vectors = vec![alpha.clone()];
        if let Some(b) = beta {
            vectors.push(b.clone());
            let cols: Vec<Vec<u64>> = vectors.iter().map(|v| v.coeffs.clone()).collect();
            if FpMatrix::from_columns(spec.p, spec.n, &cols).rank() != 2 {
                return Err(Error::DependentDirections);
            }
        }
        let mut rank = vectors.len();
        for idx in 1..spec.order() {
            if rank == spec.n {
                break;
            }
            let cand = spec.element_from_index(idx).unwrap();
            let mut cols: Vec<Vec<u64>> = vectors.iter().map(|v| v.coeffs.clone()).collect();
            cols.push(cand.coeffs.clone());
            if FpMatrix::from_columns(spec.p, spec.n, &cols).rank() == rank + 1 {
                vectors.push(cand);
                rank += 1;
            }
        }
        Self::from_vectors(spec, vectors)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn vectors(&self) -> &[FieldElement] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &FieldElement {
        &self.vectors[i]
    }

    /// Coordinates of `e` in this basis.
    pub fn coords(&self, e: &FieldElement) -> Vec<u64> {
        debug_assert!(self.spec.contains(e));
        self.inverse.mul_vec(&e.coeffs)
    }

    /// The element with the given coordinates.
    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        FieldElement {
            coeffs: self.matrix.mul_vec(coords),
        }
    }
}
