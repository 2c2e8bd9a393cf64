//! Named example extensions.

use crate::algebra::{compose_extensions, Extension, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::io::ExtensionSpec;
use crate::linalg::unit_vector;
use crate::scalar::Field;

pub const NAMES: &[&str] = &[
    "trivial-M2",
    "field-sqrt2",
    "field-sqrt2-f5",
    "s3-a3",
    "s3-a3-f5",
    "s3-transposition",
    "c2-over-k",
    "c2-over-k-f2",
];

/// `A_3` inside `S_3` in the ordering of `GroupTable::symmetric3`.
pub const A3: [usize; 3] = [0, 3, 4];
/// The subgroup generated by the transposition swapping the first two points.
pub const TRANSPOSITION: [usize; 2] = [0, 2];

/// `k[x]/(x² − 2)` with basis `1, x`.
pub fn sqrt2_algebra(field: Field) -> FiniteAlgebra {
    let two = field.from_i64(2);
    FiniteAlgebra::from_products(field, 2, unit_vector(field, 2, 0), |i, j| match (i, j) {
        (0, k) | (k, 0) => unit_vector(field, 2, k),
        _ => vec![two.clone(), field.zero()],
    })
    .expect("k[x]/(x^2 - 2)")
}

/// Scalars inside `M_2(k)`.
pub fn scalars_in_m2(field: Field) -> Extension {
    Extension::over_ground(FiniteAlgebra::matrix_units(field, 2))
}

/// `k ⊆ M_2(k) ⊆ M_2(k)`.
pub fn composite_m2(field: Field) -> Result<Extension> {
    let m2 = FiniteAlgebra::matrix_units(field, 2);
    compose_extensions(&scalars_in_m2(field), &Extension::trivial(m2))
}

fn group_spec(name: &str, field: Field, g: &GroupTable, subgroup: &[usize]) -> ExtensionSpec {
    ExtensionSpec::Group {
        name: Some(name.to_string()),
        field,
        table: g.table().to_vec(),
        subgroup: subgroup.to_vec(),
        normal: Some(g.is_normal(subgroup)),
    }
}

pub fn example(name: &str) -> Result<ExtensionSpec> {
    let q = Field::Rationals;
    let s3 = GroupTable::symmetric3();
    let c2 = GroupTable::cyclic(2);
    let f = |p| Field::prime(p).expect("prime");
    Ok(match name {
        "trivial-M2" => ExtensionSpec::from_extension(Some(name), &Extension::trivial(FiniteAlgebra::matrix_units(q, 2))),
        "field-sqrt2" => ExtensionSpec::from_extension(Some(name), &Extension::over_ground(sqrt2_algebra(q))),
        "field-sqrt2-f5" => ExtensionSpec::from_extension(Some(name), &Extension::over_ground(sqrt2_algebra(f(5)))),
        "s3-a3" => group_spec(name, q, &s3, &A3),
        "s3-a3-f5" => group_spec(name, f(5), &s3, &A3),
        "s3-transposition" => group_spec(name, q, &s3, &TRANSPOSITION),
        "c2-over-k" => group_spec(name, q, &c2, &[0]),
        "c2-over-k-f2" => group_spec(name, f(2), &c2, &[0]),
        _ => return Err(Error::UnknownExample(name.to_string())),
    })
}

pub fn build(name: &str) -> Result<Extension> {
    example(name)?.build(None)
}

/// Whether the catalog entry is expected to be right depth two.
pub fn expected_d2(name: &str) -> bool {
    name != "s3-transposition"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_round_trips() {
        for name in NAMES {
            let spec = example(name).unwrap();
            assert_eq!(ExtensionSpec::parse(&spec.to_json()).unwrap(), spec);
            let ext = spec.build(None).unwrap();
            assert!(ext.a().dim() >= ext.b().dim());
        }
        assert!(matches!(example("nope"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn dims() {
        let t = build("trivial-M2").unwrap();
        assert_eq!((t.a().dim(), t.b().dim()), (4, 4));
        assert!(t.iota().matrix().is_identity());
        let s = build("field-sqrt2").unwrap();
        assert_eq!((s.a().dim(), s.b().dim()), (2, 1));
        let g = build("s3-a3").unwrap();
        assert_eq!((g.a().dim(), g.b().dim()), (6, 3));
        assert!(matches!(example("s3-a3").unwrap(), ExtensionSpec::Group { normal: Some(true), .. }));
        assert!(matches!(example("s3-transposition").unwrap(), ExtensionSpec::Group { normal: Some(false), .. }));
    }

    #[test]
    fn composite_is_scalars_in_m2() {
        let c = composite_m2(Field::Rationals).unwrap();
        assert_eq!(c.b().dim(), 1);
        assert_eq!(c.a().dim(), 4);
    }
}
