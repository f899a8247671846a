//! Kept in its own binary: it changes the process environment.

use thetaval::cli::run;

fn prec_of(args: &[&str]) -> u64 {
    let mut out = Vec::new();
    let argv = std::iter::once("thetaval").chain(args.iter().copied());
    run(argv, &mut out, &mut Vec::new());
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    v["prec_bits"].as_u64().unwrap()
}

#[test]
fn env_sets_default_and_flag_wins() {
    std::env::set_var("THETAVAL_PREC_BITS", "320");
    let a = prec_of(&["verify", "r3"]);
    let b = prec_of(&["verify", "r3", "--prec", "256"]);
    std::env::remove_var("THETAVAL_PREC_BITS");
    assert_eq!(a, 320);
    assert_eq!(b, 256);
    assert_eq!(prec_of(&["verify", "r3"]), 512);
}
