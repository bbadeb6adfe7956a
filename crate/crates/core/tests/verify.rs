use std::f64::consts::PI;

use szf_core::geodesics::{build_spectrum, GroupPresentation};
use szf_core::verify::{all_passed, run_all, run_checks, verify_growth, verify_x_asymptotic, Check, VerifyConfig};
use szf_core::zeta::ZetaEvaluator;
use szf_core::{Error, Execution};

fn evaluator() -> ZetaEvaluator {
    let s = build_spectrum(&GroupPresentation::bolza(), 10).unwrap();
    ZetaEvaluator::new(s, 2).unwrap()
}

fn untimed() -> VerifyConfig {
    VerifyConfig {
        record_timing: false,
        ..VerifyConfig::default()
    }
}

#[test]
fn defaults_pass_and_reports_are_reproducible() {
    let z = evaluator();
    let a = run_all(&z, &untimed()).unwrap();
    assert!(all_passed(&a), "{a:#?}");
    let names: Vec<_> = a.iter().map(|r| r.check_name.as_str()).collect();
    assert_eq!(names, ["asymptotic", "growth", "involution", "t1p", "zeros"]);

    let b = run_all(&z.clone().with_execution(Execution::Sequential), &untimed()).unwrap();
    let json = |r: &Vec<_>| serde_json::to_string(r).unwrap();
    assert_eq!(json(&a), json(&b));
}

#[test]
fn genus_override_is_detected() {
    let cfg = VerifyConfig {
        genus_override: Some(3),
        ..untimed()
    };
    let r = run_checks(&[Check::Zeros], &evaluator(), &cfg).unwrap();
    assert!(!r[0].passed);
    assert_eq!(r[0].observed["winding.n=1"], 6.0);
    assert_eq!(r[0].thresholds["winding.n=1"], 12.0);
}

#[test]
fn configuration_errors_name_the_check() {
    let cfg = VerifyConfig {
        growth_angles: vec![PI],
        ..untimed()
    };
    let e = run_all(&evaluator(), &cfg).unwrap_err();
    assert!(e.to_string().starts_with("check growth:"), "{e}");
}

#[test]
fn growth_report_values() {
    let z = evaluator();
    let r = verify_growth(&z, &[6.0], &[3.0 * PI / 4.0], &[5.0, 10.0, 15.0]).unwrap();
    assert!(r.passed);
    let ratio = r.observed["right.sigma=6.ratio"];
    assert!(ratio > 0.0 && ratio <= 1.0);
    assert!(r.observed["left.arg=2.3562.r=5"] < r.observed["left.arg=2.3562.r=15"]);
    assert!(matches!(verify_growth(&z, &[3.0], &[PI], &[5.0]), Err(Error::Configuration(_))));
}

#[test]
fn asymptotic_shape_at_two_sigmas() {
    let r = verify_x_asymptotic(&[1.0, 1.5, 2.0, 2.5, 3.0], &[0.5, 3.0], 2).unwrap();
    assert!(r.passed, "{r:#?}");
    assert!(r.observed["residual_over_bound_max"] <= 1.0);
    let slope = r.observed["slope.sigma=0.5"];
    assert!((slope + 2.0 * PI).abs() <= 0.15 * 2.0 * PI);
}

#[test]
fn empty_spectrum_is_rejected_before_any_check() {
    let text = "word,trace,norm,length,primitive,multiplicity\n";
    let e = szf_core::geodesics::read_spectrum(text.as_bytes(), "empty").unwrap_err();
    assert_eq!(e.to_string(), "empty spectrum");
}
