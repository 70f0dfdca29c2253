// temporary probe for the sweep criteria; replaced by the CLI acceptance suite
use holder_approx::suite;

#[test]
fn probe_sweeps() {
    for id in [8usize, 9, 10, 11, 12] {
        let t0 = std::time::Instant::now();
        let out = suite::run_criterion(id).unwrap();
        println!(
            "criterion {id} ({}) passed={} in {:.1?}: {}",
            out.name,
            out.passed,
            t0.elapsed(),
            out.detail
        );
    }
}
