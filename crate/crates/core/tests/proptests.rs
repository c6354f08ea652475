mod common;

use common::CASES;

#[test]
fn field_axioms() {
    common::field_axioms(CASES).unwrap();
}

#[test]
fn star_anti_automorphism() {
    common::star_anti_automorphism(CASES).unwrap();
}

#[test]
fn tensor_functoriality() {
    common::tensor_functoriality(CASES).unwrap();
}

#[test]
fn intertwiner_dimension_symmetry() {
    common::intertwiner_symmetry(CASES).unwrap();
}
