//! JSON wire formats for functions.
//!
//! A function arrives in exactly one of three shapes:
//!
//! * `{"table": [v0, v1, ..]}` - values by canonical input index,
//! * `{"poly": [c0, c1, ..]}` - univariate coefficients, low degree first,
//! * `{"anf": {"basis": [[..], ..], "components": [{"(i1,..,in)": c}, ..]}}`
//!   - per-component sparse monomial maps over the given basis (omitting
//!   `basis` selects the standard one).
//!
//! Field elements inside `table` and `poly` entries are written as
//! canonical indices; a length-n array of F_p coefficients (or `[index]`)
//! is also accepted on input. Emission always uses flat indices and sorted
//! keys, so equal inputs produce byte-identical output.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Basis, FieldElement, FieldSpec};
use crate::func::{FunctionTable, MultivariateAnf, UnivariatePoly};

/// A function in whichever representation the caller supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionRepr {
    Table(FunctionTable),
    Poly(UnivariatePoly),
    Anf(MultivariateAnf),
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::Input(format!("{what} must be a nonnegative integer")))
}

fn element_from_value(spec: &FieldSpec, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(_) => spec.element_from_index(as_u64(v, "element")?),
        Value::Array(items) if items.len() == spec.n() => {
            let coeffs = items
                .iter()
                .map(|c| as_u64(c, "element coefficient"))
                .collect::<Result<Vec<_>>>()?;
            spec.element_from_coeffs(coeffs)
        }
        Value::Array(items) if items.len() == 1 => {
            spec.element_from_index(as_u64(&items[0], "element index")?)
        }
        _ => Err(Error::Input(
            "element must be an index or a coefficient array".into(),
        )),
    }
}

fn parse_exponent_key(spec: &FieldSpec, key: &str) -> Result<usize> {
    let inner = key
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Input(format!("monomial key {key:?} must look like (i1,..,in)")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != spec.n() {
        return Err(Error::Input(format!(
            "monomial key {key:?} must list {} exponents",
            spec.n()
        )));
    }
    let mut idx = 0usize;
    let mut place = 1usize;
    for part in parts {
        let e: u64 = part
            .parse()
            .map_err(|_| Error::Input(format!("bad exponent {part:?} in key {key:?}")))?;
        if e >= spec.p() {
            return Err(Error::RangeError(format!(
                "exponent {e} out of range for characteristic {}",
                spec.p()
            )));
        }
        idx += e as usize * place;
        place *= spec.p() as usize;
    }
    Ok(idx)
}

fn exponent_key(spec: &FieldSpec, mut idx: usize) -> String {
    let mut digits = Vec::with_capacity(spec.n());
    for _ in 0..spec.n() {
        digits.push((idx as u64 % spec.p()).to_string());
        idx /= spec.p() as usize;
    }
    format!("({})", digits.join(","))
}

fn parse_table(spec: &FieldSpec, v: &Value) -> Result<FunctionTable> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Input("\"table\" must be an array of values".into()))?;
    let values = items
        .iter()
        .map(|it| element_from_value(spec, it))
        .collect::<Result<Vec<_>>>()?;
    FunctionTable::new(spec.clone(), values)
}

fn parse_poly(spec: &FieldSpec, v: &Value) -> Result<UnivariatePoly> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Input("\"poly\" must be an array of coefficients".into()))?;
    let coeffs = items
        .iter()
        .map(|it| element_from_value(spec, it))
        .collect::<Result<Vec<_>>>()?;
    UnivariatePoly::new(spec.clone(), coeffs)
}

fn parse_anf(spec: &FieldSpec, v: &Value) -> Result<MultivariateAnf> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("\"anf\" must be an object".into()))?;
    for key in obj.keys() {
        if key != "basis" && key != "components" {
            return Err(Error::Input(format!("unknown key {key:?} inside \"anf\"")));
        }
    }
    let basis = match obj.get("basis") {
        None => Basis::standard(spec),
        Some(b) => {
            let vecs = b
                .as_array()
                .ok_or_else(|| Error::Input("\"basis\" must be an array of vectors".into()))?
                .iter()
                .map(|col| element_from_value(spec, col))
                .collect::<Result<Vec<_>>>()?;
            Basis::new(spec, vecs)?
        }
    };
    let comps = obj
        .get("components")
        .ok_or_else(|| Error::Input("\"anf\" needs a \"components\" array".into()))?
        .as_array()
        .ok_or_else(|| Error::Input("\"components\" must be an array of objects".into()))?;
    if comps.is_empty() {
        return Err(Error::Input("\"components\" must be nonempty".into()));
    }
    let q = spec.order() as usize;
    let mut grids = Vec::with_capacity(comps.len());
    for comp in comps {
        let map = comp
            .as_object()
            .ok_or_else(|| Error::Input("each component must be a monomial map".into()))?;
        let mut grid = vec![0u64; q];
        for (key, val) in map {
            let idx = parse_exponent_key(spec, key)?;
            let c = as_u64(val, "coefficient")?;
            if c >= spec.p() {
                return Err(Error::RangeError(format!(
                    "coefficient {c} out of range for characteristic {}",
                    spec.p()
                )));
            }
            grid[idx] = c;
        }
        grids.push(grid);
    }
    MultivariateAnf::from_coeffs(spec, &basis, grids)
}

impl FunctionRepr {
    /// Parses one of the three function shapes. The top level must be an
    /// object with exactly one of the keys `table`, `poly`, `anf`.
    pub fn from_json(spec: &FieldSpec, text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Input("function JSON must be an object".into()))?;
        let known: Vec<&str> = ["table", "poly", "anf"]
            .into_iter()
            .filter(|k| obj.contains_key(*k))
            .collect();
        if known.len() != 1 || obj.len() != 1 {
            return Err(Error::Input(
                "function JSON must have exactly one of the keys \"table\", \"poly\", \"anf\""
                    .into(),
            ));
        }
        match known[0] {
            "table" => Ok(FunctionRepr::Table(parse_table(spec, &obj["table"])?)),
            "poly" => Ok(FunctionRepr::Poly(parse_poly(spec, &obj["poly"])?)),
            _ => Ok(FunctionRepr::Anf(parse_anf(spec, &obj["anf"])?)),
        }
    }

    /// Compact JSON in the same shape the value was built from, with flat
    /// element indices and sorted monomial keys.
    pub fn to_json(&self) -> String {
        let value = match self {
            FunctionRepr::Table(t) => {
                let spec = t.spec();
                let idxs: Vec<u64> = t.values().iter().map(|v| spec.index_of(v)).collect();
                serde_json::json!({ "table": idxs })
            }
            FunctionRepr::Poly(p) => {
                let spec = p.spec();
                let idxs: Vec<u64> = p.coeffs().iter().map(|c| spec.index_of(c)).collect();
                serde_json::json!({ "poly": idxs })
            }
            FunctionRepr::Anf(a) => {
                let spec = a.spec();
                let basis: Vec<&[u64]> =
                    a.basis().vectors().iter().map(|v| v.coeffs()).collect();
                let components: Vec<BTreeMap<String, u64>> = (0..a.components())
                    .map(|c| {
                        a.coeff_grid(c)
                            .iter()
                            .enumerate()
                            .filter(|&(_, &coeff)| coeff != 0)
                            .map(|(idx, &coeff)| (exponent_key(spec, idx), coeff))
                            .collect()
                    })
                    .collect();
                serde_json::json!({ "anf": { "basis": basis, "components": components } })
            }
        };
        serde_json::to_string(&value).expect("JSON value serializes")
    }

    pub fn spec(&self) -> &FieldSpec {
        match self {
            FunctionRepr::Table(t) => t.spec(),
            FunctionRepr::Poly(p) => p.spec(),
            FunctionRepr::Anf(a) => a.spec(),
        }
    }

    /// The underlying value table. Multivariate forms must have one
    /// component per coordinate.
    pub fn to_function_table(&self) -> Result<FunctionTable> {
        match self {
            FunctionRepr::Table(t) => Ok(t.clone()),
            FunctionRepr::Poly(p) => Ok(p.to_table()),
            FunctionRepr::Anf(a) => a.to_table(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::anf_from_sparse;
    use crate::sample::{random_table, rng_from_seed};

    fn f3() -> FieldSpec {
        FieldSpec::new(3, 1, None).unwrap()
    }

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 2, None).unwrap()
    }

    #[test]
    fn table_json_round_trip_and_exact_bytes() {
        let spec = f3();
        let t = FunctionTable::build(&spec, |x| spec.mul(x, x)).unwrap();
        let repr = FunctionRepr::Table(t.clone());
        let json = repr.to_json();
        assert_eq!(json, r#"{"table":[0,1,1]}"#);
        let back = FunctionRepr::from_json(&spec, &json).unwrap();
        assert_eq!(back, repr);
        assert_eq!(back.to_function_table().unwrap(), t);
    }

    #[test]
    fn poly_entries_accept_indices_and_coefficient_arrays() {
        let spec = f9();
        let a = FunctionRepr::from_json(&spec, r#"{"poly":[0,0,1]}"#).unwrap();
        let b = FunctionRepr::from_json(&spec, r#"{"poly":[[0,0],[0],[1,0]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), r#"{"poly":[0,0,1]}"#);
        match a {
            FunctionRepr::Poly(ref p) => assert_eq!(p.degree(), Some(2)),
            _ => panic!("expected poly"),
        }
        // trailing zeros trim away
        let c = FunctionRepr::from_json(&spec, r#"{"poly":[0,0,1,0]}"#).unwrap();
        assert_eq!(c.to_json(), r#"{"poly":[0,0,1]}"#);
    }

    #[test]
    fn anf_json_matches_sparse_builder() {
        let spec = f9();
        let basis = Basis::standard(&spec);
        let json = r#"{"anf":{"basis":[[1,0],[0,1]],"components":[{"(2,1)":1,"(0,2)":1}]}}"#;
        let repr = FunctionRepr::from_json(&spec, json).unwrap();
        let mut entries = BTreeMap::new();
        entries.insert(vec![2, 1], 1);
        entries.insert(vec![0, 2], 1);
        let expected = anf_from_sparse(&spec, &basis, &entries).unwrap();
        assert_eq!(repr, FunctionRepr::Anf(expected));
        assert_eq!(
            repr.to_json(),
            r#"{"anf":{"basis":[[1,0],[0,1]],"components":[{"(0,2)":1,"(2,1)":1}]}}"#
        );
        // omitted basis means the standard one
        let bare = FunctionRepr::from_json(
            &spec,
            r#"{"anf":{"components":[{"(2,1)":1,"(0,2)":1}]}}"#,
        )
        .unwrap();
        assert_eq!(bare, repr);
    }

    #[test]
    fn anf_full_function_round_trips_through_json() {
        let spec = f9();
        let basis = Basis::standard(&spec);
        let mut rng = rng_from_seed(3);
        for _ in 0..10 {
            let t = random_table(&spec, &mut rng);
            let anf = MultivariateAnf::from_table(&t, &basis).unwrap();
            let repr = FunctionRepr::Anf(anf);
            let back = FunctionRepr::from_json(&spec, &repr.to_json()).unwrap();
            assert_eq!(back, repr);
            assert_eq!(back.to_function_table().unwrap(), t);
        }
    }

    #[test]
    fn malformed_function_json_is_rejected() {
        let spec = f9();
        for bad in [
            "",
            "0",
            "[]",
            "{}",
            r#"{"tabel":[0]}"#,
            r#"{"table":[0],"poly":[0]}"#,
            r#"{"table":"x"}"#,
            r#"{"table":[0,1]}"#,
            r#"{"table":[9,0,0,0,0,0,0,0,0]}"#,
            r#"{"poly":[-1]}"#,
            r#"{"poly":[0,0,0,0,0,0,0,0,0,1]}"#,
            r#"{"anf":[]}"#,
            r#"{"anf":{}}"#,
            r#"{"anf":{"components":[]}}"#,
            r#"{"anf":{"components":[{"(3,0)":1}]}}"#,
            r#"{"anf":{"components":[{"(1)":1}]}}"#,
            r#"{"anf":{"components":[{"1,1":1}]}}"#,
            r#"{"anf":{"components":[{"(1,1)":3}]}}"#,
            r#"{"anf":{"components":[{"(1,1)":1}],"extra":0}}"#,
            r#"{"anf":{"basis":[[1,0]],"components":[{"(1,1)":1}]}}"#,
            r#"{"anf":{"basis":[[1,0],[2,0]],"components":[{"(1,1)":1}]}}"#,
        ] {
            assert!(
                FunctionRepr::from_json(&spec, bad).is_err(),
                "accepted: {bad}"
            );
        }
    }

    #[test]
    fn anf_with_one_component_does_not_tabulate() {
        let spec = f9();
        let repr =
            FunctionRepr::from_json(&spec, r#"{"anf":{"components":[{"(1,0)":1}]}}"#).unwrap();
        assert_eq!(
            repr.to_function_table(),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }
}
