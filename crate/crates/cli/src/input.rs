//! Argument decoding shared by the commands: field descriptions, function
//! descriptions, direction lists, matching bases.

use std::fs;
use std::path::Path;

use ffderiv::parse::parse_univariate;
use ffderiv::{
    Basis, Error, FieldElement, FieldSpec, FunctionRepr, FunctionTable, MultivariateAnf, Result,
};

/// A field argument is inline JSON (leading `{`) or a path to a JSON file.
pub fn load_field(arg: &str) -> Result<FieldSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| Error::Input(format!("cannot read field {arg}: {e}")))?
    };
    serde_json::from_str(text.trim()).map_err(|e| Error::Input(format!("invalid field: {e}")))
}

/// A function argument is inline JSON, a path to a file holding JSON or a
/// polynomial expression, or a polynomial expression itself.
pub fn load_function(spec: &FieldSpec, arg: &str) -> Result<FunctionRepr> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if Path::new(arg).exists() {
        fs::read_to_string(arg)
            .map_err(|e| Error::Input(format!("cannot read function {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let text = text.trim();
    if text.starts_with('{') {
        FunctionRepr::from_json(spec, text)
    } else {
        Ok(FunctionRepr::Poly(parse_univariate(spec, text)?))
    }
}

pub fn load_table(spec: &FieldSpec, arg: &str) -> Result<FunctionTable> {
    load_function(spec, arg)?.to_function_table()
}

pub fn elements_from_indices(spec: &FieldSpec, indices: &[u64]) -> Result<Vec<FieldElement>> {
    indices.iter().map(|&i| spec.element_from_index(i)).collect()
}

/// Basis for the matching commands: explicit leading directions when given,
/// otherwise the basis carried by an ANF input, otherwise the standard one.
pub fn matching_basis(
    spec: &FieldSpec,
    repr: &FunctionRepr,
    alpha: Option<u64>,
    beta: Option<u64>,
) -> Result<Basis> {
    match (alpha, beta) {
        (None, None) => Ok(match repr {
            FunctionRepr::Anf(a) => a.basis().clone(),
            _ => Basis::standard(spec),
        }),
        (Some(a), b) => {
            let alpha = spec.element_from_index(a)?;
            let beta = b.map(|i| spec.element_from_index(i)).transpose()?;
            Basis::with_leading(spec, &alpha, beta.as_ref())
        }
        (None, Some(_)) => Err(Error::Input("--beta requires --alpha".into())),
    }
}

/// Converts any representation to ANF coordinates over `basis`. An ANF
/// input must already use that basis.
pub fn to_anf(repr: FunctionRepr, basis: &Basis) -> Result<MultivariateAnf> {
    match repr {
        FunctionRepr::Anf(a) => {
            if a.basis() != basis {
                return Err(Error::BasisMismatch);
            }
            Ok(a)
        }
        other => MultivariateAnf::from_table(&other.to_function_table()?, basis),
    }
}
