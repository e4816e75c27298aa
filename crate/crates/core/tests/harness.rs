//! Suite runner behaviour: determinism, configuration errors, report shape.

use gtbv::harness::{run_suite, Suite, SuiteConfig, DEFAULT_SEED};
use gtbv::modulispace::GroupSpec;
use gtbv::surface::standard;
use gtbv::Error;
use serde_json::Value;

fn keys_sorted(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.keys().zip(m.keys().skip(1)).all(|(a, b)| a < b) && m.values().all(keys_sorted),
        Value::Array(a) => a.iter().all(keys_sorted),
        _ => true,
    }
}

#[test]
fn same_seed_same_report() {
    let cfg = SuiteConfig::new(Suite::GoldmanEven).trials(3);
    let (a, b) = (run_suite(&cfg).unwrap(), run_suite(&cfg).unwrap());
    assert_eq!(a.to_json_value(false).to_string(), b.to_json_value(false).to_string());
    assert!(keys_sorted(&a.to_json_value(true)));
    let c = run_suite(&cfg.clone().seed(DEFAULT_SEED + 1000)).unwrap();
    assert_ne!(a.to_json_value(false), c.to_json_value(false));
}

#[test]
fn trial_seeds_are_consecutive() {
    let r = run_suite(&SuiteConfig::new(Suite::GtAxioms).trials(2).seed(40)).unwrap();
    let seeds: Vec<u64> = r.trials.iter().map(|t| t.seed).collect();
    assert_eq!(seeds, (40..40 + seeds.len() as u64).collect::<Vec<_>>());
    assert!(r.passed());
    assert_eq!(r.failures(), 0);
    assert!(r.first_counterexample().is_none());
}

#[test]
fn explicit_cases() {
    let cfg = SuiteConfig::new(Suite::BvInvariance).trials(2).surface("theta", standard::theta().with_rot2(&[1, 0, -1])).group(GroupSpec::Q(1));
    let r = run_suite(&cfg).unwrap();
    assert_eq!(r.trials.len(), 2);
    assert!(r.passed());
}

#[test]
fn configuration_errors() {
    assert!(matches!(run_suite(&SuiteConfig::new(Suite::GtAxioms).trials(0)), Err(Error::InvalidConfig(_))));
    assert!(matches!(run_suite(&SuiteConfig::new(Suite::GoldmanEven).group(GroupSpec::Q(1))), Err(Error::InvalidConfig(_))));
    assert!(matches!(run_suite(&SuiteConfig::new(Suite::BvSquare).group(GroupSpec::Gl(2))), Err(Error::InvalidConfig(_))));
}

#[test]
fn suite_names() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        assert_eq!(s.name().to_lowercase().parse::<Suite>().unwrap(), s);
    }
    assert!(matches!("NOPE".parse::<Suite>(), Err(Error::UnknownSuite(_))));
}
