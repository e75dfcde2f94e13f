use theta5::exact::int;
use theta5::identities::{verify, verify_all, IdentityReport, Variant, VariantSelection};
use theta5::numeric::{run_numeric, NumericCheck, NumericConfig, NumericReport};

#[test]
fn identity_reports_round_trip_through_json() {
    for (id, variant) in [("E2", Variant::AsStated), ("ME6", Variant::AsStated), ("ME6", Variant::Corrected)] {
        let r = verify(id, &int(12), variant).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: IdentityReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert_eq!(back.passed, variant == Variant::Corrected || id == "E2");
    }
}

#[test]
fn mismatch_is_reported_with_exact_strings() {
    let r = verify("ME6", &int(20), Variant::AsStated).unwrap();
    let m = r.first_mismatch.expect("printed sign fails");
    assert_eq!(m.exponent, "45/4");
    assert_eq!(m.lhs[0], "1/1");
    assert_eq!(m.rhs[0], "-1/1");
}

#[test]
fn numeric_reports_round_trip_through_json() {
    let r = run_numeric(NumericCheck::Residues, Some(2), None, &NumericConfig::default(), false);
    let text = serde_json::to_string(&r).unwrap();
    let back: NumericReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.residual, r.residual);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

#[test]
fn parallel_and_sequential_runs_agree() {
    let a = verify_all(&int(6), true, VariantSelection::All);
    let b = verify_all(&int(6), false, VariantSelection::All);
    let strip = |v: Vec<IdentityReport>| v.into_iter().map(|r| serde_json::to_string(&r).unwrap()).collect::<Vec<_>>();
    assert_eq!(strip(a), strip(b));
}
