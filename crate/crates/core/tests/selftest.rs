//! The release gate: a fresh checkout must pass the self-test with the
//! default seed, and two runs with the same seed must render byte-identical
//! reports.

use hdvol::harness::run_selftest;

#[test]
fn selftest_passes_and_is_reproducible() {
    let first = run_selftest(0);
    let rendered = first.render();
    print!("{rendered}");
    assert!(first.passed(), "selftest reported failures:\n{rendered}");

    let second = run_selftest(0);
    assert_eq!(rendered, second.render(), "same seed must render identically");
}
