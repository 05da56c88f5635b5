//! The discrete derivative operator and the structural checks built on it.
//!
//! For F: F_{p^n} -> F_{p^n} and a direction alpha, the derivative is
//! D_alpha F(x) = F(x + alpha) - F(x). Higher-order derivatives apply the
//! operator once per listed direction; the result does not depend on the
//! order. The generalized differential sums F over a full line,
//! sum_{iota in F_p} F(x + iota * alpha), and coincides with the
//! (p-1)-fold derivative repeated along alpha.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::func::FunctionTable;

/// Longest direction list accepted by the subset expansion (2^d terms).
pub const MAX_EXPANSION_DIRECTIONS: usize = 20;

/// An ordered list of derivative directions, all from one field. Zero
/// entries are representable; operations that need nonzero directions
/// reject them individually.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionList {
    spec: FieldSpec,
    dirs: Vec<FieldElement>,
}

impl DirectionList {
    pub fn new(spec: &FieldSpec, dirs: Vec<FieldElement>) -> Result<Self> {
        if dirs.iter().any(|d| !spec.contains(d)) {
            return Err(Error::FieldMismatch);
        }
        Ok(DirectionList {
            spec: spec.clone(),
            dirs,
        })
    }

    /// `count` copies of the same direction.
    pub fn repeated(spec: &FieldSpec, alpha: &FieldElement, count: usize) -> Result<Self> {
        Self::new(spec, vec![alpha.clone(); count])
    }

    /// The list alpha, 2 alpha, .., (p-1) alpha.
    pub fn scalar_multiples(spec: &FieldSpec, alpha: &FieldElement) -> Result<Self> {
        let dirs = (1..spec.p()).map(|i| spec.scalar_mul(i, alpha)).collect();
        Self::new(spec, dirs)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn dirs(&self) -> &[FieldElement] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }
}

fn check_direction(f: &FunctionTable, alpha: &FieldElement) -> Result<()> {
    if !f.spec().contains(alpha) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// First-order derivative D_alpha F. A zero direction gives the zero table.
pub fn derivative(f: &FunctionTable, alpha: &FieldElement) -> Result<FunctionTable> {
    check_direction(f, alpha)?;
    Ok(f.shift(alpha)?.sub(f)?)
}

/// Sequential higher-order derivative along every listed direction.
pub fn higher_derivative(f: &FunctionTable, dirs: &DirectionList) -> Result<FunctionTable> {
    if f.spec() != dirs.spec() {
        return Err(Error::FieldMismatch);
    }
    let mut acc = f.clone();
    for alpha in dirs.dirs().iter().rev() {
        acc = derivative(&acc, alpha)?;
    }
    Ok(acc)
}

/// The same higher-order derivative computed in closed form as an
/// inclusion-exclusion sum over subsets of the direction list:
/// sum over S of (-1)^(d - |S|) F(x + sum of S). Exponential in d.
pub fn higher_derivative_expansion(
    f: &FunctionTable,
    dirs: &DirectionList,
) -> Result<FunctionTable> {
    if f.spec() != dirs.spec() {
        return Err(Error::FieldMismatch);
    }
    let d = dirs.len();
    if d > MAX_EXPANSION_DIRECTIONS {
        return Err(Error::TooManyDirections {
            got: d,
            max: MAX_EXPANSION_DIRECTIONS,
        });
    }
    let spec = f.spec().clone();
    let q = spec.order();
    let mut out = vec![spec.zero(); q as usize];
    for mask in 0u32..(1u32 << d) {
        let mut offset = spec.zero();
        for (i, alpha) in dirs.dirs().iter().enumerate() {
            if mask >> i & 1 == 1 {
                offset = spec.add(&offset, alpha);
            }
        }
        let off_idx = spec.index_of(&offset);
        let negate = (d - mask.count_ones() as usize) % 2 == 1;
        for x in 0..q {
            let term = f.value_at_index(spec.index_add(x, off_idx));
            let term = if negate { spec.neg(term) } else { term.clone() };
            out[x as usize] = spec.add(&out[x as usize], &term);
        }
    }
    FunctionTable::new(spec, out)
}

/// Sum of F over the line through x in direction alpha:
/// sum_{iota in F_p} F(x + iota alpha).
pub fn generalized_differential(f: &FunctionTable, alpha: &FieldElement) -> Result<FunctionTable> {
    check_direction(f, alpha)?;
    let spec = f.spec().clone();
    let q = spec.order();
    let step_indices: Vec<u64> = (0..spec.p())
        .map(|iota| spec.index_of(&spec.scalar_mul(iota, alpha)))
        .collect();
    let mut out = vec![spec.zero(); q as usize];
    for x in 0..q {
        let mut acc = spec.zero();
        for &s in &step_indices {
            acc = spec.add(&acc, f.value_at_index(spec.index_add(x, s)));
        }
        out[x as usize] = acc;
    }
    FunctionTable::new(spec, out)
}

/// Outcome of the four first-order derivative identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    /// D_{alpha,beta} F = D_{beta,alpha} F.
    pub symmetry: bool,
    /// D_alpha F(x) = -D_{-alpha} F(x + alpha).
    pub reflection: bool,
    /// D_alpha F - D_beta F = D_{alpha-beta} F(. + beta).
    pub difference: bool,
    /// D_{iota alpha} F = D_alpha applied to sum_{j<iota} F(. + j alpha).
    pub scalar_chain: bool,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.symmetry && self.reflection && self.difference && self.scalar_chain
    }
}

/// Checks the four basic identities exactly, on full tables.
pub fn verify_basic_properties(
    f: &FunctionTable,
    alpha: &FieldElement,
    beta: &FieldElement,
    iota: u64,
) -> Result<PropertyReport> {
    check_direction(f, alpha)?;
    check_direction(f, beta)?;
    let spec = f.spec().clone();

    let ab = derivative(&derivative(f, beta)?, alpha)?;
    let ba = derivative(&derivative(f, alpha)?, beta)?;
    let symmetry = ab == ba;

    let lhs = derivative(f, alpha)?;
    let reflection = lhs == derivative(f, &spec.neg(alpha))?.shift(alpha)?.neg();

    let diff_dir = spec.sub(alpha, beta);
    let difference =
        lhs.sub(&derivative(f, beta)?)? == derivative(f, &diff_dir)?.shift(beta)?;

    let iota = iota % spec.p();
    let mut partial = FunctionTable::zero(&spec);
    for j in 0..iota {
        partial = partial.add(&f.shift(&spec.scalar_mul(j, alpha))?)?;
    }
    let scalar_chain = derivative(f, &spec.scalar_mul(iota, alpha))? == derivative(&partial, alpha)?;

    Ok(PropertyReport {
        symmetry,
        reflection,
        difference,
        scalar_chain,
    })
}

/// Worst-case solution count of the generalized differential equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapnReport {
    /// True when every equation sum_iota F(x + iota alpha) = beta has at
    /// most p solutions.
    pub is_gapn: bool,
    pub max_solutions: usize,
    /// First (alpha, beta) attaining the maximum, in canonical index order.
    pub worst_alpha: FieldElement,
    pub worst_beta: FieldElement,
}

/// Scans every nonzero direction and every target value.
pub fn gapn_check(f: &FunctionTable) -> GapnReport {
    let spec = f.spec().clone();
    let q = spec.order();
    let mut max_solutions = 0usize;
    let mut worst: Option<(FieldElement, FieldElement)> = None;
    for a in 1..q {
        let alpha = spec.element_from_index(a).unwrap();
        let t = generalized_differential(f, &alpha).unwrap();
        // the line sum must agree with the (p-1)-fold repeated derivative
        let repeated = higher_derivative(
            f,
            &DirectionList::repeated(&spec, &alpha, spec.p() as usize - 1).unwrap(),
        )
        .unwrap();
        assert_eq!(
            t, repeated,
            "generalized differential disagrees with the repeated derivative"
        );
        let mut histogram = vec![0usize; q as usize];
        for x in 0..q {
            histogram[spec.index_of(t.value_at_index(x)) as usize] += 1;
        }
        for (b, &count) in histogram.iter().enumerate() {
            if count > max_solutions {
                max_solutions = count;
                worst = Some((alpha.clone(), spec.element_from_index(b as u64).unwrap()));
            }
        }
    }
    let (worst_alpha, worst_beta) = worst.expect("a nonzero direction always exists");
    GapnReport {
        is_gapn: max_solutions <= spec.p() as usize,
        max_solutions,
        worst_alpha,
        worst_beta,
    }
}

/// Both sides of the repeated-versus-scaled-directions identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    /// (p-1)-fold derivative along alpha, as the line sum.
    pub repeated: FunctionTable,
    /// Derivative along alpha, 2 alpha, .., (p-1) alpha.
    pub chain: FunctionTable,
    /// True when repeated = -chain everywhere.
    pub pass: bool,
}

/// Verifies that the (p-1)-fold derivative along alpha equals minus the
/// derivative along all nonzero multiples of alpha.
pub fn main_lemma_check(f: &FunctionTable, alpha: &FieldElement) -> Result<LemmaCheck> {
    check_direction(f, alpha)?;
    if alpha.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let spec = f.spec().clone();
    let repeated = generalized_differential(f, alpha)?;
    let chain = higher_derivative(f, &DirectionList::scalar_multiples(&spec, alpha)?)?;
    let pass = repeated == chain.neg();
    Ok(LemmaCheck {
        repeated,
        chain,
        pass,
    })
}
