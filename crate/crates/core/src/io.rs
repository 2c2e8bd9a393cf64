//! JSON descriptions of extensions. Scalars are `"num/den"` strings so that
//! files are bit-exact.

use serde::{Deserialize, Serialize};

use crate::algebra::{Extension, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::group::{subgroup_extension, GroupTable};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: Field,
    pub dim: usize,
    /// `structure[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
    pub structure: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

fn encode_all(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::encode).collect()
}

fn parse_all(field: Field, v: &[String]) -> Result<Vector> {
    v.iter().map(|s| field.parse_scalar(s)).collect()
}

impl AlgebraSpec {
    pub fn from_algebra(a: &FiniteAlgebra) -> AlgebraSpec {
        AlgebraSpec {
            field: a.field(),
            dim: a.dim(),
            structure: a.structure_cube().iter().map(|row| row.iter().map(|v| encode_all(v)).collect()).collect(),
            unit: encode_all(a.unit()),
        }
    }

    /// Reads the coefficients in `field`, or in the declared field.
    pub fn build(&self, field: Option<Field>) -> Result<FiniteAlgebra> {
        let field = field.unwrap_or(self.field);
        let n = self.dim;
        if self.structure.len() != n || self.unit.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.structure.len().min(self.unit.len()) });
        }
        let mut cube = Vec::with_capacity(n);
        for row in &self.structure {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            let parsed = row
                .iter()
                .map(|v| {
                    if v.len() != n {
                        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
                    }
                    parse_all(field, v)
                })
                .collect::<Result<Vec<_>>>()?;
            cube.push(parsed);
        }
        FiniteAlgebra::from_cube(field, cube, parse_all(field, &self.unit)?)
    }
}

/// An extension `ι: B → A`, either from a group and subgroup or from two
/// explicit algebras and the images `ι(b_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExtensionSpec {
    Group {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        field: Field,
        table: Vec<Vec<usize>>,
        subgroup: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normal: Option<bool>,
    },
    Algebras {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        a: AlgebraSpec,
        b: AlgebraSpec,
        /// `iota[j]` is `ι(b_j)` in the basis of `A`.
        iota: Vec<Vec<String>>,
    },
}

impl ExtensionSpec {
    pub fn from_extension(name: Option<&str>, ext: &Extension) -> ExtensionSpec {
        ExtensionSpec::Algebras {
            name: name.map(str::to_string),
            a: AlgebraSpec::from_algebra(ext.a()),
            b: AlgebraSpec::from_algebra(ext.b()),
            iota: ext.b_images().iter().map(|v| encode_all(v)).collect(),
        }
    }

    pub fn parse(json: &str) -> Result<ExtensionSpec> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            ExtensionSpec::Group { name, .. } | ExtensionSpec::Algebras { name, .. } => name.as_deref(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            ExtensionSpec::Group { field, .. } => *field,
            ExtensionSpec::Algebras { a, .. } => a.field,
        }
    }

    /// Builds the extension, optionally over a different field.
    pub fn build(&self, field: Option<Field>) -> Result<Extension> {
        match self {
            ExtensionSpec::Group { field: declared, table, subgroup, normal, .. } => {
                let g = GroupTable::new(table.clone())?;
                let ge = subgroup_extension(field.unwrap_or(*declared), &g, subgroup)?;
                if let Some(flag) = normal {
                    if *flag != ge.normal {
                        return Err(Error::Parse(format!("normal flag is {flag} but the subgroup says {}", ge.normal)));
                    }
                }
                Ok(ge.extension)
            }
            ExtensionSpec::Algebras { a, b, iota, .. } => {
                if field.is_none() && a.field != b.field {
                    return Err(Error::FieldMismatch("A and B declare different fields".into()));
                }
                let a = a.build(field)?;
                let b = b.build(field)?;
                if iota.len() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: b.dim(), found: iota.len() });
                }
                let cols = iota.iter().map(|v| parse_all(a.field(), v)).collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_columns(a.field(), a.dim(), &cols)?;
                Extension::from_parts(b, a, m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        let a = FiniteAlgebra::matrix_units(Field::Rationals, 2);
        let spec = ExtensionSpec::from_extension(Some("m2"), &Extension::trivial(a.clone()));
        let back = ExtensionSpec::parse(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let ext = back.build(None).unwrap();
        assert_eq!(ext.a(), &a);
        assert_eq!(ext.b(), &a);
    }

    #[test]
    fn group_spec_with_field_override() {
        let json = r#"{"kind":"group","field":"Q","table":[[0,1],[1,0]],"subgroup":[0]}"#;
        let spec = ExtensionSpec::parse(json).unwrap();
        let ext = spec.build(Some(Field::prime(2).unwrap())).unwrap();
        assert_eq!(ext.field(), Field::Prime(2));
        assert_eq!(ext.a().dim(), 2);
    }

    #[test]
    fn wrong_normal_flag_and_bad_json_are_errors() {
        let json = r#"{"kind":"group","field":"Q","table":[[0,1],[1,0]],"subgroup":[0],"normal":false}"#;
        assert!(ExtensionSpec::parse(json).unwrap().build(None).is_err());
        assert!(matches!(ExtensionSpec::parse("{"), Err(Error::Parse(_))));
        let bad = r#"{"kind":"algebras","a":{"field":"Q","dim":1,"structure":[[["1/1"]]],"unit":["2/1"]},
                     "b":{"field":"Q","dim":1,"structure":[[["1/1"]]],"unit":["1/1"]},"iota":[["1/1"]]}"#;
        assert!(ExtensionSpec::parse(bad).unwrap().build(None).is_err());
    }

    #[test]
    fn fractions_reduce_mod_p() {
        let json = r#"{"kind":"algebras","a":{"field":"Q","dim":1,"structure":[[["2/2"]]],"unit":["1/1"]},
                       "b":{"field":"Q","dim":1,"structure":[[["1"]]],"unit":["1"]},"iota":[["3/3"]]}"#;
        let ext = ExtensionSpec::parse(json).unwrap().build(Some(Field::prime(5).unwrap())).unwrap();
        assert_eq!(ext.a().dim(), 1);
    }
}
