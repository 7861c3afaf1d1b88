use blowuplab::model_io::catalog;
use blowuplab::model_io::{parse_algebra, serialize_algebra, Metadata};
use blowuplab::poly::ratio;
use blowuplab::Error;

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn fixtures_match_catalog() {
    let so3 = parse_algebra(&read("so3.toml")).unwrap();
    assert_eq!(so3.algebra.constants(), catalog::so3().constants());
    assert_eq!(so3.metadata.expected_height, Some(1));
    let sl2 = parse_algebra(&read("sl2.toml")).unwrap();
    assert_eq!(sl2.algebra.constants(), catalog::sl2().constants());
}

#[test]
fn fractions_survive() {
    let l = parse_algebra(&read("affine_fraction.toml")).unwrap().algebra;
    assert_eq!(l.constant(0, 1, 1), &ratio(3, 7));
    assert_eq!(l.constant(1, 0, 1), &ratio(-3, 7));
    let again = parse_algebra(&serialize_algebra(&l, &Metadata::default())).unwrap().algebra;
    assert_eq!(again.constants(), l.constants());
}

#[test]
fn error_kinds() {
    match parse_algebra(&read("float_value.toml")) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_algebra(&read("jacobi_violation.toml")), Err(Error::Jacobi(_))));
    assert!(matches!(parse_algebra(&read("index_out_of_range.toml")), Err(Error::IndexRange(_))));
}

#[test]
fn every_catalog_algebra_round_trips() {
    for l in catalog::algebras() {
        let meta = catalog::metadata_for(l.name().unwrap());
        let text = serialize_algebra(&l, &meta);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back.algebra.constants(), l.constants(), "{text}");
        assert_eq!(back.metadata, meta);
    }
}
