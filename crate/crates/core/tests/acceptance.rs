use std::process::ExitCode;

use gmatrix_core::gmatrix::References;
use gmatrix_core::verify::{run_criterion, Criterion};

/// Wall-clock budget in seconds for each check.
fn budget(c: Criterion) -> f64 {
    match c {
        Criterion::OracleEquivalence => 120.0,
        Criterion::QuadrupleIdentity => 60.0,
        Criterion::HillBound => 120.0,
        Criterion::UpperBound => 180.0,
        Criterion::GIdentities => 180.0,
        Criterion::PathIndependence | Criterion::MutationFormulas => 300.0,
        Criterion::GBounds => 180.0,
        Criterion::GaleAntisymmetry => 120.0,
        Criterion::KArcs => 600.0,
        Criterion::ClosedForm => 1.0,
        Criterion::Wendel => 120.0,
        Criterion::FStarFromF => 120.0,
    }
}

fn main() -> ExitCode {
    let refs = References::new();
    let mut failures = 0;
    for c in Criterion::ALL {
        let settings = c.default_settings();
        let (ok, line) = match run_criterion(c, &settings, &refs) {
            Ok(r) => {
                let secs = r.seconds.unwrap_or(0.0);
                let in_time = secs <= budget(c);
                let mut line = format!(
                    "{} instances, {:.1}s of {:.0}s; {}",
                    r.instances,
                    secs,
                    budget(c),
                    r.detail
                );
                if let Some(w) = &r.witness {
                    line.push_str(&format!("; witness: {} {:?}", w.note, w.indices));
                }
                (r.passed && in_time, line)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!ok);
        println!(
            "{} criterion {:>2} {}: {line}",
            if ok { "PASS" } else { "FAIL" },
            c.number(),
            c.name()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
