//! Antiderivative existence, construction, and first-order derivative
//! matching.
//!
//! The discrete derivative is never injective, so going backwards is a
//! constraint-solving problem. This module answers three flavours of it:
//!
//! * single direction: decide whether `H` with `D_alpha H = D` exists, and
//!   build one,
//! * several directions at once: compatibility conditions and a joint `H`,
//! * cross-variable matching: given `f`, find `g` with `D_x1 f = D_x2 g` as
//!   polynomials, via a triangular coefficient system.

use std::collections::BTreeMap;

use crate::deriv::{derivative, generalized_differential};
use crate::error::{AntiderivativeWitness, Error, Result};
use crate::field::{Basis, FieldElement, FieldSpec};
use crate::func::{
    grid_digits, pascal_mod_p, scalar_grid_derivative, FunctionTable, MultivariateAnf,
};
use crate::linalg::{inv_mod, solve_augmented, SolveOutcome};

fn check_nonzero_direction(spec: &FieldSpec, alpha: &FieldElement) -> Result<()> {
    if !spec.contains(alpha) {
        return Err(Error::FieldMismatch);
    }
    if alpha.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(())
}

/// Decides whether some `H` satisfies `D_alpha H = D`.
///
/// Equivalent to the sum of `D` over every coset of `F_p alpha` vanishing,
/// which is exactly the generalized differential of `D` at `alpha` being
/// identically zero.
pub fn antiderivative_exists(d: &FunctionTable, alpha: &FieldElement) -> Result<bool> {
    check_nonzero_direction(d.spec(), alpha)?;
    Ok(generalized_differential(d, alpha)?.is_zero())
}

/// Builds `H` with `D_alpha H = D`, normalized so that `H` vanishes on the
/// smallest-index element of each coset of `F_p alpha`.
///
/// When the sum of `D` over some coset is nonzero no `H` exists; the first
/// such coset (element indices, ascending) is reported as the witness.
pub fn construct_antiderivative(d: &FunctionTable, alpha: &FieldElement) -> Result<FunctionTable> {
    let spec = d.spec().clone();
    check_nonzero_direction(&spec, alpha)?;
    let q = spec.order();
    let step = spec.index_of(alpha);
    let mut h = vec![spec.zero(); q as usize];
    let mut seen = vec![false; q as usize];
    for rep in 0..q {
        if seen[rep as usize] {
            continue;
        }
        // rep is the smallest index in its coset: everything below is seen.
        let mut coset = Vec::with_capacity(spec.p() as usize);
        let mut cur = rep;
        let mut acc = spec.zero();
        for _ in 0..spec.p() {
            seen[cur as usize] = true;
            coset.push(cur);
            acc = spec.add(&acc, d.value_at_index(cur));
            cur = spec.index_add(cur, step);
            if cur != rep {
                h[cur as usize] = acc.clone();
            }
        }
        if !acc.is_zero() {
            coset.sort_unstable();
            return Err(Error::NoAntiderivative {
                witness: AntiderivativeWitness::Coset(coset),
            });
        }
    }
    FunctionTable::new(spec, h)
}

/// Decides whether some `G` satisfies `F = D_alpha^(p-1) G`, i.e. whether
/// `F` is a generalized differential along `alpha`: true exactly when
/// `D_alpha F` is identically zero.
pub fn pth_antiderivative_exists(f: &FunctionTable, alpha: &FieldElement) -> Result<bool> {
    check_nonzero_direction(f.spec(), alpha)?;
    Ok(derivative(f, alpha)?.is_zero())
}

/// Decides whether `F` and `G` share their derivative along `alpha`, i.e.
/// differ by a function the derivative kills. Both routes (derivative
/// equality, kernel membership of the difference) are computed and must
/// agree.
pub fn kernel_relation_check(
    f: &FunctionTable,
    g: &FunctionTable,
    alpha: &FieldElement,
) -> Result<bool> {
    if f.spec() != g.spec() {
        return Err(Error::FieldMismatch);
    }
    check_nonzero_direction(f.spec(), alpha)?;
    let direct = derivative(f, alpha)? == derivative(g, alpha)?;
    let via_difference = derivative(&f.sub(g)?, alpha)?.is_zero();
    assert_eq!(direct, via_difference);
    Ok(direct)
}

/// Outcome of the compatibility conditions for a joint antiderivative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// Per direction i: whether `D_i` has an antiderivative along `alpha_i`.
    pub per_direction: Vec<bool>,
    /// Per pair i < j: whether `D_{alpha_j} D_i = D_{alpha_i} D_j`.
    pub symmetry_pairs: Vec<(usize, usize, bool)>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.per_direction.iter().all(|&b| b) && self.symmetry_pairs.iter().all(|&(_, _, b)| b)
    }
}

fn check_direction_setup(
    ds: &[FunctionTable],
    alphas: &[FieldElement],
    spec: &FieldSpec,
) -> Result<()> {
    if ds.len() != alphas.len() {
        return Err(Error::LengthMismatch {
            left: ds.len(),
            right: alphas.len(),
        });
    }
    for d in ds {
        if d.spec() != spec {
            return Err(Error::FieldMismatch);
        }
    }
    for a in alphas {
        check_nonzero_direction(spec, a)?;
    }
    // Independence over F_p: the alphas must span a subgroup of p^k elements.
    let mut in_span = vec![false; spec.order() as usize];
    in_span[0] = true;
    let mut size: u128 = 1;
    for a in alphas {
        let step = spec.index_of(a);
        let current: Vec<u64> = (0..spec.order()).filter(|&i| in_span[i as usize]).collect();
        for base in current {
            let mut cur = base;
            for _ in 1..spec.p() {
                cur = spec.index_add(cur, step);
                if !in_span[cur as usize] {
                    in_span[cur as usize] = true;
                    size += 1;
                }
            }
        }
    }
    if (spec.p() as u128).checked_pow(alphas.len() as u32) != Some(size) {
        return Err(Error::DependentDirections);
    }
    Ok(())
}

/// Evaluates the compatibility conditions for the system `D_alpha_i H = D_i`
/// to admit a solution: each `D_i` integrable along its own direction, and
/// all cross derivatives symmetric. The directions must be independent
/// over `F_p`.
pub fn integrability_conditions(ds: &[FunctionTable], alphas: &[FieldElement]) -> Result<ConditionReport> {
    let spec = match ds.first() {
        Some(d) => d.spec().clone(),
        None => return Err(Error::RangeError("need at least one direction".into())),
    };
    check_direction_setup(ds, alphas, &spec)?;
    let per_direction = ds
        .iter()
        .zip(alphas)
        .map(|(d, a)| antiderivative_exists(d, a))
        .collect::<Result<Vec<_>>>()?;
    let mut symmetry_pairs = Vec::new();
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            let lhs = derivative(&ds[i], &alphas[j])?;
            let rhs = derivative(&ds[j], &alphas[i])?;
            symmetry_pairs.push((i, j, lhs == rhs));
        }
    }
    Ok(ConditionReport {
        per_direction,
        symmetry_pairs,
    })
}

/// Builds a joint antiderivative: `H` with `D_alpha_i H = D_i` for every i,
/// normalized to vanish on the smallest-index element of each coset of the
/// span of the directions.
///
/// The compatibility conditions are screened first; a failing one is
/// reported through its witness (offending coset, or offending pair). The
/// remaining linear system is solved exactly per field coordinate. The
/// conditions make it uniquely solvable, so any residual failure is a bug
/// and surfaces as an internal inconsistency; every defining equation is
/// re-checked on the result before it is returned.
pub fn construct_multi_antiderivative(
    ds: &[FunctionTable],
    alphas: &[FieldElement],
) -> Result<FunctionTable> {
    let spec = match ds.first() {
        Some(d) => d.spec().clone(),
        None => return Err(Error::RangeError("need at least one direction".into())),
    };
    check_direction_setup(ds, alphas, &spec)?;
    let report = integrability_conditions(ds, alphas)?;
    if let Some(i) = report.per_direction.iter().position(|&b| !b) {
        match construct_antiderivative(&ds[i], &alphas[i]) {
            Err(e @ Error::NoAntiderivative { .. }) => return Err(e),
            _ => unreachable!("single-direction check and construction disagree"),
        }
    }
    if let Some(&(i, j, _)) = report.symmetry_pairs.iter().find(|&&(_, _, b)| !b) {
        return Err(Error::NoAntiderivative {
            witness: AntiderivativeWitness::Pair(i, j),
        });
    }

    let q = spec.order() as usize;
    let p = spec.p();
    // Span of the directions, as index offsets; distinct by independence.
    let mut span = vec![0u64];
    for a in alphas {
        let step = spec.index_of(a);
        let current = span.clone();
        for base in current {
            let mut cur = base;
            for _ in 1..p {
                cur = spec.index_add(cur, step);
                span.push(cur);
            }
        }
    }
    // One pin row per coset of the span: H(smallest index) = 0.
    let mut seen = vec![false; q];
    let mut roots = Vec::new();
    for rep in 0..q as u64 {
        if seen[rep as usize] {
            continue;
        }
        roots.push(rep);
        for &off in &span {
            seen[spec.index_add(rep, off) as usize] = true;
        }
    }

    let steps: Vec<u64> = alphas.iter().map(|a| spec.index_of(a)).collect();
    let n = spec.n();
    let mut coords: Vec<Vec<u64>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(steps.len() * q + roots.len());
        for (i, &step) in steps.iter().enumerate() {
            for x in 0..q as u64 {
                // H(x + alpha_i) - H(x) = D_i(x), coordinate c.
                let mut row = vec![0u64; q + 1];
                let shifted = spec.index_add(x, step) as usize;
                row[shifted] = (row[shifted] + 1) % p;
                row[x as usize] = (row[x as usize] + p - 1) % p;
                row[q] = ds[i].value_at_index(x).coeffs()[c];
                rows.push(row);
            }
        }
        for &r in &roots {
            let mut row = vec![0u64; q + 1];
            row[r as usize] = 1;
            rows.push(row);
        }
        match solve_augmented(p, rows, q) {
            SolveOutcome::Unique(sol) => coords.push(sol),
            SolveOutcome::Inconsistent => {
                return Err(Error::InternalInconsistency(
                    "joint antiderivative system inconsistent after conditions passed".into(),
                ))
            }
            SolveOutcome::Underdetermined => {
                return Err(Error::InternalInconsistency(
                    "joint antiderivative system underdetermined after pinning".into(),
                ))
            }
        }
    }
    let values: Result<Vec<FieldElement>> = (0..q)
        .map(|x| spec.element_from_coeffs((0..n).map(|c| coords[c][x]).collect()))
        .collect();
    let h = FunctionTable::new(spec, values?)?;
    for (d, a) in ds.iter().zip(alphas) {
        if derivative(&h, a)? != *d {
            return Err(Error::InternalInconsistency(
                "constructed joint antiderivative fails its defining equations".into(),
            ));
        }
    }
    Ok(h)
}

/// Degree test for antiderivative existence along coordinate direction
/// `axis`: true when no component of `f` has a monomial of degree `p-1` in
/// that variable.
///
/// The quantifier over all nonzero output selectors collapses to the unit
/// selectors: selected components combine linearly, so a full-degree
/// monomial survives in some selection iff it occurs in some component.
pub fn degree_criterion(f: &MultivariateAnf, axis: usize) -> Result<bool> {
    let n = f.spec().n();
    if axis >= n {
        return Err(Error::RangeError(format!(
            "axis {axis} out of range for {n} variables"
        )));
    }
    let limit = (f.spec().p() - 1) as usize;
    for c in 0..f.components() {
        if f.component_degree_in_variable(c, axis) == Some(limit) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The coefficient system relating `f` and an unknown `g` with
/// `D_x1 f = D_x2 g`, taken componentwise over a shared basis.
///
/// For each component, first-variable exponent `i1` and tail exponent block
/// `w`, the unknowns are the coefficients of `g` at second-variable
/// exponents `1..p-1`. The matrix entry at row `j`, unknown `k` is
/// `C(k, k-j)` mod p, nonzero only for `k > j`, so every block solves by
/// back substitution. The coefficients of `g` at second-variable exponent
/// `0` stay free and are pinned to zero.
pub struct MatchingSystem {
    f: MultivariateAnf,
    matrix: Vec<Vec<u64>>,
    target: MultivariateAnf,
}

impl MatchingSystem {
    pub fn new(f: &MultivariateAnf, basis: &Basis) -> Result<Self> {
        if f.basis() != basis {
            return Err(Error::BasisMismatch);
        }
        let spec = f.spec();
        if spec.n() < 2 {
            return Err(Error::RangeError(
                "matching needs at least two variables".into(),
            ));
        }
        let p = spec.p();
        let binom = pascal_mod_p(p);
        let rows = (p - 1) as usize;
        let mut matrix = vec![vec![0u64; rows]; rows];
        for j in 0..rows {
            for k in j + 1..=rows {
                matrix[j][k - 1] = binom[k][k - j];
            }
        }
        let target = f.axis_derivative(0);
        Ok(MatchingSystem {
            f: f.clone(),
            matrix,
            target,
        })
    }

    /// Triangular block matrix, rows j = 0..p-1, columns the unknown
    /// second-variable exponents k = 1..p-1.
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    /// The shared derivative both sides are equated to: `D_x1 f`.
    pub fn target(&self) -> &MultivariateAnf {
        &self.target
    }

    /// Exponent vectors of the coefficients of `g` the system leaves free
    /// (second-variable exponent zero), per component.
    pub fn free_exponents(&self) -> Vec<Vec<u64>> {
        let spec = self.f.spec();
        let p = spec.p();
        let n = spec.n();
        let tail = (p as usize).pow((n - 2) as u32);
        let mut out = Vec::new();
        for w in 0..tail {
            let wd = grid_digits(p, n - 2, w);
            for i1 in 0..p {
                let mut e = vec![i1, 0];
                e.extend_from_slice(&wd);
                out.push(e);
            }
        }
        out
    }

    /// Solves for the canonical `g`: checks the obstruction rows (the tail
    /// of `f` at second-variable exponent p-1 must differentiate to zero),
    /// then back substitutes each block. The result is re-verified two
    /// independent ways before being returned.
    pub fn solve(&self) -> Result<MultivariateAnf> {
        let spec = self.f.spec().clone();
        let p = spec.p();
        let pu = p as usize;
        let n = spec.n();
        let tail = pu.pow((n - 2) as u32);
        let binom = pascal_mod_p(p);

        // Obstruction: D_x2 g never involves x2^{p-1}, so the corresponding
        // coefficients of D_x1 f must all vanish.
        for c in 0..self.f.components() {
            let fg = self.f.coeff_grid(c);
            for j in 0..pu - 1 {
                for w in 0..tail {
                    let mut acc = 0u64;
                    for k in j + 1..pu {
                        acc = (acc + binom[k][k - j] * fg[k + (pu - 1) * pu + w * pu * pu]) % p;
                    }
                    if acc != 0 {
                        return Err(Error::NoMatch {
                            component: c,
                            j,
                            w: grid_digits(p, n - 2, w),
                        });
                    }
                }
            }
        }

        let mut grids: Vec<Vec<u64>> = Vec::with_capacity(self.f.components());
        for c in 0..self.f.components() {
            let d_grid = self.target.coeff_grid(c);
            let mut g = vec![0u64; pu.pow(n as u32)];
            for w in 0..tail {
                for i1 in 0..pu {
                    // Block (i1, w): unknowns u_k = g at (i1, k, w), k >= 1.
                    let mut u = vec![0u64; pu];
                    for j in (0..pu - 1).rev() {
                        let mut acc = d_grid[i1 + j * pu + w * pu * pu];
                        for k in j + 2..pu {
                            acc = (acc + p * p - binom[k][k - j] * u[k] % p) % p;
                        }
                        u[j + 1] = acc * inv_mod((j + 1) as u64, p) % p;
                    }
                    for k in 1..pu {
                        g[i1 + k * pu + w * pu * pu] = u[k];
                    }
                }
            }
            grids.push(g);
        }
        let g = MultivariateAnf::from_coeffs(&spec, self.f.basis(), grids)?;

        // Verification route 1: coefficient grids of both derivatives.
        if g.axis_derivative(1) != self.target {
            return Err(Error::InternalInconsistency(
                "solved g fails the coefficient-level derivative equation".into(),
            ));
        }
        // Verification route 2: pointwise derivatives of the value grids.
        let mut e1 = vec![0u64; n];
        e1[0] = 1;
        let mut e2 = vec![0u64; n];
        e2[1] = 1;
        for c in 0..self.f.components() {
            let lhs = scalar_grid_derivative(p, n, &self.f.component_grid(c), &e1);
            let rhs = scalar_grid_derivative(p, n, &g.component_grid(c), &e2);
            if lhs != rhs {
                return Err(Error::InternalInconsistency(
                    "solved g fails the pointwise derivative equation".into(),
                ));
            }
        }
        Ok(g)
    }
}

/// Decides whether `D_x1 f = D_x2 g` as polynomials, componentwise:
/// interior coefficient equations plus both boundary families, evaluated
/// directly on the coefficient grids.
pub fn fo_matching_check(f: &MultivariateAnf, g: &MultivariateAnf, basis: &Basis) -> Result<bool> {
    if f.spec() != g.spec() {
        return Err(Error::FieldMismatch);
    }
    if f.basis() != basis || g.basis() != basis {
        return Err(Error::BasisMismatch);
    }
    if f.components() != g.components() {
        return Err(Error::LengthMismatch {
            left: f.components(),
            right: g.components(),
        });
    }
    let spec = f.spec();
    let n = spec.n();
    if n < 2 {
        return Err(Error::RangeError(
            "matching needs at least two variables".into(),
        ));
    }
    let p = spec.p();
    let pu = p as usize;
    let tail = pu.pow((n - 2) as u32);
    let binom = pascal_mod_p(p);
    let at = |grid: &[u64], i1: usize, i2: usize, w: usize| grid[i1 + i2 * pu + w * pu * pu];
    for c in 0..f.components() {
        let fg = f.coeff_grid(c);
        let gg = g.coeff_grid(c);
        for w in 0..tail {
            // Interior: mixed coefficients present on both sides.
            for j1 in 0..pu - 1 {
                for j2 in 0..pu - 1 {
                    let mut lhs = 0u64;
                    for k in j1 + 1..pu {
                        lhs = (lhs + binom[k][k - j1] * at(fg, k, j2, w)) % p;
                    }
                    let mut rhs = 0u64;
                    for k in j2 + 1..pu {
                        rhs = (rhs + binom[k][k - j2] * at(gg, j1, k, w)) % p;
                    }
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
            // Boundaries: neither derivative reaches full degree in its own
            // variable, so the other side must vanish there.
            for j in 0..pu - 1 {
                let mut acc = 0u64;
                for k in j + 1..pu {
                    acc = (acc + binom[k][k - j] * at(fg, k, pu - 1, w)) % p;
                }
                if acc != 0 {
                    return Ok(false);
                }
                let mut acc = 0u64;
                for k in j + 1..pu {
                    acc = (acc + binom[k][k - j] * at(gg, pu - 1, k, w)) % p;
                }
                if acc != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Solves `D_x1 f = D_x2 g` for the canonical `g`, or reports the first
/// violated obstruction row.
pub fn solve_matching_g(f: &MultivariateAnf, basis: &Basis) -> Result<MultivariateAnf> {
    MatchingSystem::new(f, basis)?.solve()
}

/// Given `D_xi f = D_xj g` (checked first, else `NotApplicable`), verifies
/// that the shared derivative has degree below p-1 in both variable i and
/// variable j, computing each degree from both sides independently.
pub fn vardeg_lemma_check(
    f: &MultivariateAnf,
    g: &MultivariateAnf,
    i: usize,
    j: usize,
) -> Result<bool> {
    if f.spec() != g.spec() {
        return Err(Error::FieldMismatch);
    }
    if f.basis() != g.basis() {
        return Err(Error::BasisMismatch);
    }
    let n = f.spec().n();
    if i >= n || j >= n {
        return Err(Error::RangeError(format!(
            "axes ({i}, {j}) out of range for {n} variables"
        )));
    }
    let df = f.axis_derivative(i);
    let dg = g.axis_derivative(j);
    if df != dg {
        return Err(Error::NotApplicable);
    }
    let limit = (f.spec().p() - 1) as usize;
    let mut ok = true;
    for c in 0..df.components() {
        for axis in [i, j] {
            let a = df.component_degree_in_variable(c, axis);
            let b = dg.component_degree_in_variable(c, axis);
            assert_eq!(a, b);
            if a >= Some(limit) {
                ok = false;
            }
        }
    }
    Ok(ok)
}

/// Builds a one-component polynomial from sparse (exponents, coefficient)
/// pairs; exponent vectors are per variable, low axis first.
pub fn anf_from_sparse(
    spec: &FieldSpec,
    basis: &Basis,
    entries: &BTreeMap<Vec<u64>, u64>,
) -> Result<MultivariateAnf> {
    let n = spec.n();
    let p = spec.p();
    let mut grid = vec![0u64; (p as usize).pow(n as u32)];
    for (exps, &coeff) in entries {
        if exps.len() != n {
            return Err(Error::LengthMismatch {
                left: exps.len(),
                right: n,
            });
        }
        let mut idx = 0usize;
        let mut place = 1usize;
        for &e in exps {
            if e >= p {
                return Err(Error::RangeError(format!(
                    "exponent {e} out of range for characteristic {p}"
                )));
            }
            idx += e as usize * place;
            place *= p as usize;
        }
        grid[idx] = coeff % p;
    }
    MultivariateAnf::from_coeffs(spec, basis, vec![grid])
}
