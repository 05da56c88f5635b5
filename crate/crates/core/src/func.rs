//! Representations of functions F_{p^n} -> F_{p^n} and exact conversions
//! between them.
//!
//! Three forms are supported: dense value tables indexed by canonical
//! element index, univariate polynomials of degree < p^n, and multivariate
//! normal forms (per-component polynomials in the F_p-coordinates of a
//! chosen basis, every exponent in 0..p). A function's multivariate
//! coefficients are unique once the basis is fixed.

use crate::error::{Error, Result};
use crate::field::{Basis, FieldElement, FieldSpec};
use crate::linalg::FpMatrix;

/// Dense table of values, indexed by the canonical index of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    spec: FieldSpec,
    values: Vec<FieldElement>,
}

impl FunctionTable {
    pub fn new(spec: FieldSpec, values: Vec<FieldElement>) -> Result<Self> {
        if values.len() != spec.order() as usize {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: spec.order() as usize,
            });
        }
        if values.iter().any(|v| !spec.contains(v)) {
            return Err(Error::FieldMismatch);
        }
        Ok(FunctionTable { spec, values })
    }

    /// Tabulates `f` over the whole field in canonical index order.
    pub fn build(spec: &FieldSpec, mut f: impl FnMut(&FieldElement) -> FieldElement) -> Result<Self> {
        let values = spec.elements().iter().map(|e| f(e)).collect();
        Self::new(spec.clone(), values)
    }

    pub fn constant(spec: &FieldSpec, v: &FieldElement) -> Result<Self> {
        Self::new(spec.clone(), vec![v.clone(); spec.order() as usize])
    }

    pub fn zero(spec: &FieldSpec) -> Self {
        Self::constant(spec, &spec.zero()).unwrap()
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn value_at_index(&self, idx: u64) -> &FieldElement {
        &self.values[idx as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_same_field(&self, other: &FunctionTable) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FunctionTable) -> Result<FunctionTable> {
        self.check_same_field(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.spec.add(a, b))
            .collect();
        Ok(FunctionTable {
            spec: self.spec.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &FunctionTable) -> Result<FunctionTable> {
        self.check_same_field(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.spec.sub(a, b))
            .collect();
        Ok(FunctionTable {
            spec: self.spec.clone(),
            values,
        })
    }

    pub fn neg(&self) -> FunctionTable {
        FunctionTable {
            spec: self.spec.clone(),
            values: self.values.iter().map(|v| self.spec.neg(v)).collect(),
        }
    }

    /// Pointwise product with a constant element.
    pub fn scale(&self, c: &FieldElement) -> FunctionTable {
        FunctionTable {
            spec: self.spec.clone(),
            values: self.values.iter().map(|v| self.spec.mul(c, v)).collect(),
        }
    }

    /// The translate x -> F(x + alpha).
    pub fn shift(&self, alpha: &FieldElement) -> Result<FunctionTable> {
        if !self.spec.contains(alpha) {
            return Err(Error::FieldMismatch);
        }
        let a = self.spec.index_of(alpha);
        let values = (0..self.spec.order())
            .map(|i| self.values[self.spec.index_add(i, a) as usize].clone())
            .collect();
        Ok(FunctionTable {
            spec: self.spec.clone(),
            values,
        })
    }
}

/// Univariate polynomial over F_{p^n} with degree < p^n; trailing zero
/// coefficients are trimmed, the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl UnivariatePoly {
    pub fn new(spec: FieldSpec, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() > spec.order() as usize {
            return Err(Error::RangeError(format!(
                "more than {} coefficients cannot describe a distinct function",
                spec.order()
            )));
        }
        if coeffs.iter().any(|c| !spec.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(UnivariatePoly { spec, coeffs })
    }

    pub fn zero(spec: &FieldSpec) -> Self {
        UnivariatePoly {
            spec: spec.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.spec.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.spec.add(&self.spec.mul(&acc, x), c);
        }
        acc
    }

    pub fn to_table(&self) -> FunctionTable {
        FunctionTable::build(&self.spec, |x| self.evaluate(x)).unwrap()
    }

    /// The unique polynomial of degree < q interpolating a full table.
    ///
    /// Over the whole field the master polynomial is x^q - x, whose
    /// derivative is the constant -1, so Lagrange interpolation reduces to
    /// P = -sum_i y_i * (x^q - x)/(x - x_i); each quotient comes from one
    /// synthetic division and costs O(q) multiplications.
    pub fn interpolate(table: &FunctionTable) -> UnivariatePoly {
        let spec = table.spec.clone();
        let q = spec.order() as usize;
        let mut out = vec![spec.zero(); q];
        for (i, y) in table.values.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let x = spec.element_from_index(i as u64).unwrap();
            let mut pw = spec.one();
            for k in (1..q).rev() {
                out[k] = spec.sub(&out[k], &spec.mul(y, &pw));
                pw = spec.mul(&pw, &x);
            }
            // pw is now x^{q-1}; the constant quotient coefficient is x^{q-1} - 1
            let b0 = spec.sub(&pw, &spec.one());
            out[0] = spec.sub(&out[0], &spec.mul(y, &b0));
        }
        UnivariatePoly::new(spec, out).unwrap()
    }
}

/// Nonzero F_p-linear combination of output components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSelector {
    mu: Vec<u64>,
}

impl ComponentSelector {
    pub fn new(p: u64, entries: Vec<u64>) -> Result<Self> {
        let mu: Vec<u64> = entries.into_iter().map(|c| c % p).collect();
        if mu.iter().all(|&c| c == 0) {
            return Err(Error::ZeroMu);
        }
        Ok(ComponentSelector { mu })
    }

    /// Selector of the k-th component alone.
    pub fn unit(m: usize, k: usize) -> Self {
        let mut mu = vec![0; m];
        mu[k] = 1;
        ComponentSelector { mu }
    }

    pub fn mu(&self) -> &[u64] {
        &self.mu
    }
}

pub(crate) fn grid_digits(p: u64, n: usize, mut idx: usize) -> Vec<u64> {
    let mut digits = vec![0u64; n];
    for d in digits.iter_mut() {
        *d = (idx as u64) % p;
        idx /= p as usize;
    }
    digits
}

/// Adds two grid point indices digit-wise mod p.
fn grid_index_add(p: u64, n: usize, i: usize, j: usize) -> usize {
    let (mut a, mut b) = (i as u64, j as u64);
    let mut out = 0usize;
    let mut place = 1usize;
    for _ in 0..n {
        out += ((a % p + b % p) % p) as usize * place;
        a /= p;
        b /= p;
        place *= p as usize;
    }
    out
}

/// Difference g(x + dir) - g(x) of an F_p-valued grid function, where `dir`
/// is a coordinate vector.
pub fn scalar_grid_derivative(p: u64, n: usize, grid: &[u64], dir: &[u64]) -> Vec<u64> {
    assert_eq!(dir.len(), n);
    let mut d_idx = 0usize;
    let mut place = 1usize;
    for &c in dir {
        d_idx += (c % p) as usize * place;
        place *= p as usize;
    }
    (0..grid.len())
        .map(|i| {
            let shifted = grid[grid_index_add(p, n, i, d_idx)];
            (shifted + p - grid[i] % p) % p
        })
        .collect()
}

/// Applies a p x p matrix along one tensor axis of a dense F_p grid.
fn apply_axis(p: u64, data: &[u64], m: &FpMatrix, axis: usize) -> Vec<u64> {
    let pu = p as usize;
    let stride = pu.pow(axis as u32);
    let block = stride * pu;
    let mut out = vec![0u64; data.len()];
    let mut base_block = 0;
    while base_block < data.len() {
        for off in 0..stride {
            let base = base_block + off;
            for t_out in 0..pu {
                let mut acc = 0u64;
                for t_in in 0..pu {
                    acc = (acc + m.at(t_out, t_in) * data[base + t_in * stride]) % p;
                }
                out[base + t_out * stride] = acc;
            }
        }
        base_block += block;
    }
    out
}

fn vandermonde(p: u64) -> FpMatrix {
    let pu = p as usize;
    let mut v = FpMatrix::zeros(p, pu, pu);
    for x in 0..pu {
        let mut pw = 1u64;
        for k in 0..pu {
            v.set(x, k, pw);
            pw = pw * x as u64 % p;
        }
    }
    v
}

/// Binomial coefficients mod p for all 0 <= k <= n < p.
pub(crate) fn pascal_mod_p(p: u64) -> Vec<Vec<u64>> {
    let pu = p as usize;
    let mut rows = vec![vec![0u64; pu]; pu];
    for n in 0..pu {
        rows[n][0] = 1;
        for k in 1..=n {
            rows[n][k] = (rows[n - 1][k - 1] + rows[n - 1][k]) % p;
        }
    }
    rows
}

/// Multivariate normal form: for each of `m` output components, a dense
/// coefficient grid over exponent vectors in {0,..,p-1}^n. Exponents and
/// grid points share the same base-p index (axis 0 least significant), and
/// the variables x_1..x_n are the coordinates with respect to `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariateAnf {
    spec: FieldSpec,
    basis: Basis,
    m: usize,
    coeffs: Vec<Vec<u64>>,
}

impl MultivariateAnf {
    pub fn zero(spec: &FieldSpec, basis: &Basis, m: usize) -> Self {
        MultivariateAnf {
            spec: spec.clone(),
            basis: basis.clone(),
            m,
            coeffs: vec![vec![0; spec.order() as usize]; m],
        }
    }

    /// Builds an m-component form from raw coefficient grids.
    pub fn from_coeffs(spec: &FieldSpec, basis: &Basis, coeffs: Vec<Vec<u64>>) -> Result<Self> {
        if basis.spec() != spec || coeffs.is_empty() {
            return Err(Error::BasisMismatch);
        }
        let q = spec.order() as usize;
        for grid in &coeffs {
            if grid.len() != q {
                return Err(Error::LengthMismatch {
                    left: grid.len(),
                    right: q,
                });
            }
            if grid.iter().any(|&c| c >= spec.p()) {
                return Err(Error::RangeError("coefficients must lie in [0, p)".into()));
            }
        }
        Ok(MultivariateAnf {
            spec: spec.clone(),
            basis: basis.clone(),
            m: coeffs.len(),
            coeffs,
        })
    }

    /// Interpolates a single F_p-valued grid into its coefficient grid by
    /// one univariate interpolation per axis, axes in fixed increasing
    /// order.
    pub fn from_scalar_grid(spec: &FieldSpec, basis: &Basis, values: &[u64]) -> Result<Self> {
        let v_inv = vandermonde(spec.p()).inverse().expect("Vandermonde is invertible");
        let q = spec.order() as usize;
        if values.len() != q {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: q,
            });
        }
        let mut grid: Vec<u64> = values.iter().map(|&v| v % spec.p()).collect();
        for axis in 0..spec.n() {
            grid = apply_axis(spec.p(), &grid, &v_inv, axis);
        }
        Self::from_coeffs(spec, basis, vec![grid])
    }

    /// Normal form of a full table: one component per output coordinate in
    /// `basis`.
    pub fn from_table(table: &FunctionTable, basis: &Basis) -> Result<Self> {
        if table.spec() != basis.spec() {
            return Err(Error::FieldMismatch);
        }
        let spec = table.spec().clone();
        let (n, q) = (spec.n(), spec.order() as usize);
        let mut grids = vec![vec![0u64; q]; n];
        for gidx in 0..q {
            let x = grid_digits(spec.p(), n, gidx);
            let e = basis.from_coords(&x);
            let y = basis.coords(table.value_at_index(spec.index_of(&e)));
            for c in 0..n {
                grids[c][gidx] = y[c];
            }
        }
        let v_inv = vandermonde(spec.p()).inverse().expect("Vandermonde is invertible");
        let coeffs = grids
            .into_iter()
            .map(|mut grid| {
                for axis in 0..n {
                    grid = apply_axis(spec.p(), &grid, &v_inv, axis);
                }
                grid
            })
            .collect();
        Ok(MultivariateAnf {
            spec: spec.clone(),
            basis: basis.clone(),
            m: n,
            coeffs,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn components(&self) -> usize {
        self.m
    }

    pub fn coeff_grid(&self, component: usize) -> &[u64] {
        &self.coeffs[component]
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff_at(&self, component: usize, exponents: &[u64]) -> u64 {
        assert_eq!(exponents.len(), self.spec.n());
        let mut idx = 0usize;
        let mut place = 1usize;
        for &e in exponents {
            assert!(e < self.spec.p());
            idx += e as usize * place;
            place *= self.spec.p() as usize;
        }
        self.coeffs[component][idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|g| g.iter().all(|&c| c == 0))
    }

    /// Values of one component over the coordinate grid.
    pub fn component_grid(&self, component: usize) -> Vec<u64> {
        let v = vandermonde(self.spec.p());
        let mut grid = self.coeffs[component].clone();
        for axis in 0..self.spec.n() {
            grid = apply_axis(self.spec.p(), &grid, &v, axis);
        }
        grid
    }

    /// Evaluates one component at a coordinate point.
    pub fn eval_component(&self, component: usize, point: &[u64]) -> u64 {
        let p = self.spec.p();
        let n = self.spec.n();
        assert_eq!(point.len(), n);
        let pu = p as usize;
        let mut powers = vec![vec![1u64; pu]; n];
        for j in 0..n {
            for k in 1..pu {
                powers[j][k] = powers[j][k - 1] * (point[j] % p) % p;
            }
        }
        let mut acc = 0u64;
        for (idx, &c) in self.coeffs[component].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let exps = grid_digits(p, n, idx);
            let mut term = c;
            for j in 0..n {
                term = term * powers[j][exps[j] as usize] % p;
            }
            acc = (acc + term) % p;
        }
        acc
    }

    /// Rebuilds the value table; requires one component per coordinate.
    pub fn to_table(&self) -> Result<FunctionTable> {
        let n = self.spec.n();
        if self.m != n {
            return Err(Error::LengthMismatch {
                left: self.m,
                right: n,
            });
        }
        let q = self.spec.order() as usize;
        let grids: Vec<Vec<u64>> = (0..n).map(|c| self.component_grid(c)).collect();
        let mut values = vec![self.spec.zero(); q];
        for gidx in 0..q {
            let x = grid_digits(self.spec.p(), n, gidx);
            let e = self.basis.from_coords(&x);
            let y: Vec<u64> = (0..n).map(|c| grids[c][gidx]).collect();
            values[self.spec.index_of(&e) as usize] = self.basis.from_coords(&y);
        }
        FunctionTable::new(self.spec.clone(), values)
    }

    /// The scalar function mu . F obtained by combining components.
    pub fn component_function(&self, mu: &ComponentSelector) -> Result<MultivariateAnf> {
        if mu.mu().len() != self.m {
            return Err(Error::LengthMismatch {
                left: mu.mu().len(),
                right: self.m,
            });
        }
        let p = self.spec.p();
        let q = self.spec.order() as usize;
        let mut grid = vec![0u64; q];
        for (k, &w) in mu.mu().iter().enumerate() {
            if w == 0 {
                continue;
            }
            for idx in 0..q {
                grid[idx] = (grid[idx] + w * self.coeffs[k][idx]) % p;
            }
        }
        Ok(MultivariateAnf {
            spec: self.spec.clone(),
            basis: self.basis.clone(),
            m: 1,
            coeffs: vec![grid],
        })
    }

    /// Largest exponent of variable `axis` in a nonzero monomial of the
    /// given component; `None` for the zero component (ordered below 0).
    pub fn component_degree_in_variable(&self, component: usize, axis: usize) -> Option<usize> {
        let p = self.spec.p();
        self.coeffs[component]
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(idx, _)| grid_digits(p, self.spec.n(), idx)[axis] as usize)
            .max()
    }

    /// Degree in one variable of a single-component form.
    pub fn degree_in_variable(&self, axis: usize) -> Option<usize> {
        assert_eq!(self.m, 1, "degree_in_variable expects a scalar form");
        self.component_degree_in_variable(0, axis)
    }

    /// Largest total degree (sum of exponents) across all components;
    /// `None` for the zero function.
    pub fn total_degree(&self) -> Option<usize> {
        let p = self.spec.p();
        let n = self.spec.n();
        self.coeffs
            .iter()
            .flat_map(|grid| {
                grid.iter().enumerate().filter(|&(_, &c)| c != 0).map(|(idx, _)| {
                    grid_digits(p, n, idx).iter().sum::<u64>() as usize
                })
            })
            .max()
    }

    /// Coefficient grid of the discrete derivative along basis vector
    /// `axis`: the monomial x^k contributes C(k, j) x^j for every j < k, so
    /// the new coefficient at exponent j along the axis is
    /// sum_{k > j} C(k, j) times the old coefficient at k.
    pub fn axis_derivative(&self, axis: usize) -> MultivariateAnf {
        let p = self.spec.p();
        let pu = p as usize;
        let binom = pascal_mod_p(p);
        let stride = pu.pow(axis as u32);
        let block = stride * pu;
        let coeffs = self
            .coeffs
            .iter()
            .map(|grid| {
                let mut out = vec![0u64; grid.len()];
                let mut base_block = 0;
                while base_block < grid.len() {
                    for off in 0..stride {
                        let base = base_block + off;
                        for j in 0..pu - 1 {
                            let mut acc = 0u64;
                            for k in j + 1..pu {
                                acc = (acc + binom[k][j] * grid[base + k * stride]) % p;
                            }
                            out[base + j * stride] = acc;
                        }
                    }
                    base_block += block;
                }
                out
            })
            .collect();
        MultivariateAnf {
            spec: self.spec.clone(),
            basis: self.basis.clone(),
            m: self.m,
            coeffs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_table, rng_from_seed};

    fn f3() -> FieldSpec {
        FieldSpec::new(3, 1, None).unwrap()
    }

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 2, None).unwrap()
    }

    fn square_table(spec: &FieldSpec) -> FunctionTable {
        FunctionTable::build(spec, |x| spec.mul(x, x)).unwrap()
    }

    #[test]
    fn table_constructors_validate() {
        let f = f3();
        assert!(FunctionTable::new(f.clone(), vec![f.zero(); 2]).is_err());
        let t = FunctionTable::constant(&f, &f.scalar(2)).unwrap();
        assert!(!t.is_zero());
        assert!(FunctionTable::zero(&f).is_zero());
        let f9 = f9();
        assert_eq!(
            t.add(&FunctionTable::zero(&f9)),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn interpolation_examples() {
        let f = f3();
        // x^2 has table [0, 1, 1]
        let p = UnivariatePoly::interpolate(&square_table(&f));
        assert_eq!(
            p.coeffs(),
            &[f.zero(), f.zero(), f.one()],
            "interpolating the squaring table must give x^2"
        );
        assert_eq!(p.degree(), Some(2));

        let c = UnivariatePoly::interpolate(&FunctionTable::constant(&f, &f.scalar(2)).unwrap());
        assert_eq!(c.coeffs(), &[f.scalar(2)]);

        // the identity interpolates to x itself (x^q = x as functions)
        let id = FunctionTable::build(&f9(), |x| x.clone()).unwrap();
        let p = UnivariatePoly::interpolate(&id);
        assert_eq!(p.coeffs(), &[f9().zero(), f9().one()]);

        assert_eq!(UnivariatePoly::interpolate(&FunctionTable::zero(&f)).degree(), None);
    }

    #[test]
    fn interpolation_round_trips_random() {
        for (p, n) in [(3, 2), (5, 1), (2, 3)] {
            let spec = FieldSpec::new(p, n, None).unwrap();
            let mut rng = rng_from_seed(91 + p + n as u64);
            for _ in 0..25 {
                let t = random_table(&spec, &mut rng);
                let poly = UnivariatePoly::interpolate(&t);
                assert!(poly.degree().map_or(0, |d| d + 1) <= spec.order() as usize);
                assert_eq!(poly.to_table(), t);
            }
        }
    }

    #[test]
    fn evaluate_univariate() {
        let f = f9();
        let t = f.generator_t().unwrap();
        let x_sq = UnivariatePoly::new(f.clone(), vec![f.zero(), f.zero(), f.one()]).unwrap();
        assert_eq!(x_sq.evaluate(&t), f.scalar(2));
        assert_eq!(UnivariatePoly::zero(&f).evaluate(&t), f.zero());
    }

    #[test]
    fn scalar_grid_normal_form_example() {
        // f(x1, x2) = x1^2 x2 + x2^2 over F_3 coordinates
        let spec = f9();
        let basis = Basis::standard(&spec);
        let q = spec.order() as usize;
        let mut grid = vec![0u64; q];
        for idx in 0..q {
            let x = grid_digits(3, 2, idx);
            grid[idx] = (x[0] * x[0] % 3 * x[1] + x[1] * x[1]) % 3;
        }
        let anf = MultivariateAnf::from_scalar_grid(&spec, &basis, &grid).unwrap();
        assert_eq!(anf.coeff_at(0, &[2, 1]), 1);
        assert_eq!(anf.coeff_at(0, &[0, 2]), 1);
        let nonzero = anf.coeff_grid(0).iter().filter(|&&c| c != 0).count();
        assert_eq!(nonzero, 2);
        assert_eq!(anf.component_grid(0), grid);
        assert_eq!(anf.degree_in_variable(0), Some(2));
        assert_eq!(anf.degree_in_variable(1), Some(2));
        assert_eq!(anf.total_degree(), Some(3));
    }

    #[test]
    fn table_normal_form_round_trips() {
        for (p, n) in [(3, 2), (5, 2), (3, 3), (2, 4)] {
            let spec = FieldSpec::new(p, n, None).unwrap();
            let basis = Basis::standard(&spec);
            let mut rng = rng_from_seed(1000 + p + n as u64);
            for _ in 0..10 {
                let t = random_table(&spec, &mut rng);
                let anf = MultivariateAnf::from_table(&t, &basis).unwrap();
                assert_eq!(anf.to_table().unwrap(), t);
            }
        }
    }

    #[test]
    fn normal_form_in_nonstandard_basis_round_trips() {
        let spec = f9();
        let t_el = spec.generator_t().unwrap();
        let one_plus_t = spec.element_from_coeffs(vec![1, 1]).unwrap();
        let basis = Basis::with_leading(&spec, &t_el, Some(&one_plus_t)).unwrap();
        let mut rng = rng_from_seed(77);
        for _ in 0..10 {
            let t = random_table(&spec, &mut rng);
            let anf = MultivariateAnf::from_table(&t, &basis).unwrap();
            assert_eq!(anf.to_table().unwrap(), t);
        }
    }

    #[test]
    fn zero_table_has_zero_normal_form() {
        let spec = f9();
        let basis = Basis::standard(&spec);
        let anf = MultivariateAnf::from_table(&FunctionTable::zero(&spec), &basis).unwrap();
        assert!(anf.is_zero());
        assert_eq!(anf.total_degree(), None);
        assert_eq!(anf.component_degree_in_variable(0, 0), None);
    }

    #[test]
    fn nonzero_coefficients_evaluate_nonzero_somewhere() {
        // uniqueness: a nonzero coefficient grid cannot evaluate to zero
        // everywhere, because the grid <-> coefficient maps are inverse
        // bijections
        let spec = FieldSpec::new(3, 3, None).unwrap();
        let basis = Basis::standard(&spec);
        let mut rng = rng_from_seed(5);
        for _ in 0..25 {
            let grid: Vec<u64> = (0..27).map(|_| crate::sample::uniform_below(&mut rng, 3)).collect();
            let anf = MultivariateAnf::from_coeffs(&spec, &basis, vec![grid.clone()]).unwrap();
            let values = anf.component_grid(0);
            let back = MultivariateAnf::from_scalar_grid(&spec, &basis, &values).unwrap();
            assert_eq!(back.coeff_grid(0), &grid[..]);
            if grid.iter().any(|&c| c != 0) {
                assert!(values.iter().any(|&v| v != 0));
            }
        }
    }

    #[test]
    fn eval_component_agrees_with_grid() {
        let spec = f9();
        let basis = Basis::standard(&spec);
        let mut rng = rng_from_seed(8);
        let t = random_table(&spec, &mut rng);
        let anf = MultivariateAnf::from_table(&t, &basis).unwrap();
        for c in 0..2 {
            let grid = anf.component_grid(c);
            for idx in 0..9 {
                let x = grid_digits(3, 2, idx);
                assert_eq!(anf.eval_component(c, &x), grid[idx]);
            }
        }
    }

    #[test]
    fn univariate_and_multivariate_agree_pointwise() {
        let spec = f9();
        let basis = Basis::standard(&spec);
        let mut rng = rng_from_seed(13);
        for _ in 0..10 {
            let t = random_table(&spec, &mut rng);
            let poly = UnivariatePoly::interpolate(&t);
            let anf = MultivariateAnf::from_table(&t, &basis).unwrap();
            for e in spec.elements() {
                let via_poly = poly.evaluate(&e);
                let coords = basis.coords(&e);
                let y: Vec<u64> = (0..2).map(|c| anf.eval_component(c, &coords)).collect();
                assert_eq!(basis.from_coords(&y), via_poly);
            }
        }
    }

    #[test]
    fn component_selector_rules() {
        assert!(ComponentSelector::new(3, vec![0, 0]).is_err());
        assert!(ComponentSelector::new(3, vec![3, 3]).is_err(), "entries reduce mod p");
        let mu = ComponentSelector::new(3, vec![1, 2]).unwrap();
        assert_eq!(mu.mu(), &[1, 2]);

        let spec = f9();
        let basis = Basis::standard(&spec);
        let mut rng = rng_from_seed(21);
        let t = random_table(&spec, &mut rng);
        let anf = MultivariateAnf::from_table(&t, &basis).unwrap();

        // unit selectors pick out single components
        for k in 0..2 {
            let sel = anf.component_function(&ComponentSelector::unit(2, k)).unwrap();
            assert_eq!(sel.coeff_grid(0), anf.coeff_grid(k));
        }
        // linearity: mu = (1, 2) is component 0 plus twice component 1
        let combo = anf.component_function(&mu).unwrap();
        for idx in 0..9 {
            let want = (anf.coeff_grid(0)[idx] + 2 * anf.coeff_grid(1)[idx]) % 3;
            assert_eq!(combo.coeff_grid(0)[idx], want);
        }
        // mu = (1, 2) applied to duplicated components scales by 1 + 2 = 0
        let dup = MultivariateAnf::from_coeffs(
            &spec,
            &basis,
            vec![anf.coeff_grid(0).to_vec(), anf.coeff_grid(0).to_vec()],
        )
        .unwrap();
        assert!(dup.component_function(&mu).unwrap().is_zero());
        assert!(anf.component_function(&ComponentSelector::new(3, vec![1]).unwrap()).is_err());
    }

    #[test]
    fn axis_derivative_matches_grid_difference() {
        for (p, n) in [(3, 2), (5, 2), (2, 3)] {
            let spec = FieldSpec::new(p, n, None).unwrap();
            let basis = Basis::standard(&spec);
            let q = spec.order() as usize;
            let mut rng = rng_from_seed(p * 31 + n as u64);
            for _ in 0..10 {
                let grid: Vec<u64> =
                    (0..q).map(|_| crate::sample::uniform_below(&mut rng, p)).collect();
                let anf = MultivariateAnf::from_scalar_grid(&spec, &basis, &grid).unwrap();
                for axis in 0..n {
                    let mut dir = vec![0u64; n];
                    dir[axis] = 1;
                    let expected = scalar_grid_derivative(p, n, &grid, &dir);
                    let got = anf.axis_derivative(axis);
                    assert_eq!(got.component_grid(0), expected, "p={p} n={n} axis={axis}");
                    // differentiating drops the axis degree by at least one
                    let before = anf.component_degree_in_variable(0, axis);
                    let after = got.component_degree_in_variable(0, axis);
                    match (before, after) {
                        (None, a) => assert_eq!(a, None),
                        (Some(0), a) => assert_eq!(a, None),
                        (Some(b), a) => assert!(a.map_or(0, |x| x + 1) <= b),
                    }
                }
            }
        }
    }
}
