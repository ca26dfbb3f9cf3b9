//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Time limits are the pinned tolerances; campaigns run on the available
//! cores. The process fails if a criterion fails for any reason other than
//! the known boundary-linkage counterexamples, which are checked to be
//! exactly the confirmed-infeasible stacked-singleton instances.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gridlink::grid::Vertex;
use gridlink::lemmas::{T1, T1_ADMISSIBLE, T2, T2_ADMISSIBLE};
use gridlink::routing::is_weakly_2_linked;
use gridlink::verifier::{
    all_instances, pairability_check, verify_lemma, GraphFamily, LemmaId, LemmaInstance, LemmaReport,
    PairabilityStrategy, Strategy,
};

const PAIRABILITY_SAMPLES: usize = 100_000;
const PAIRABILITY_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    /// A failure documented in the decisions ledger and re-checked here.
    known: bool,
    summary: String,
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn exhaustive(id: LemmaId) -> LemmaReport {
    verify_lemma(id, Strategy::Exhaustive, workers())
}

fn detail(r: &LemmaReport, key: &str) -> usize {
    r.detail(key).and_then(|v| v.parse().ok()).unwrap_or(usize::MAX)
}

fn clean(r: &LemmaReport, expected: usize) -> bool {
    r.is_clean() && r.instances == expected && r.passed == expected
}

fn counts(r: &LemmaReport) -> String {
    format!(
        "{} {}/{} passed, {} defects",
        r.subject,
        r.passed,
        r.instances,
        r.defects.len()
    )
}

fn plain(pass: bool, summary: String) -> Outcome {
    Outcome {
        pass,
        known: false,
        summary,
    }
}

fn weak_linkage() -> Outcome {
    let r = exhaustive(LemmaId::L4);
    let direct = (3..=6).all(|k| is_weakly_2_linked(&GraphFamily::Strip(k).graph()))
        && (3..=6).all(|k| is_weakly_2_linked(&GraphFamily::LShape(k).graph()))
        && !is_weakly_2_linked(&GraphFamily::Path(3).graph());
    plain(
        clean(&r, 9) && direct,
        format!("{}; strips and L-shapes k=3..6 linked, P1xP3 not", counts(&r)),
    )
}

fn frames() -> Outcome {
    let r = exhaustive(LemmaId::L5);
    plain(
        clean(&r, 162),
        format!("{}; mating paths checked against C0 and C1 edges", counts(&r)),
    )
}

fn frame_and_mate() -> Outcome {
    let reports = [LemmaId::L5i, LemmaId::L6, LemmaId::L7].map(exhaustive);
    let pass = clean(&reports[0], 324) && clean(&reports[1], 252) && clean(&reports[2], 252);
    plain(pass, reports.iter().map(counts).collect::<Vec<_>>().join("; "))
}

fn adjusted_escapes() -> (Outcome, LemmaReport) {
    let r = exhaustive(LemmaId::L8);
    (plain(clean(&r, 1085), counts(&r)), r)
}

fn exceptional_family() -> Outcome {
    let r = exhaustive(LemmaId::L9);
    let line = |t: &[Vertex], w: &[Vertex]| {
        let join = |xs: &[Vertex]| xs.iter().map(Vertex::to_string).collect::<Vec<_>>().join(" ");
        format!("[{}] working [{}]", join(t), join(w))
    };
    let got: BTreeSet<&str> = r
        .details
        .iter()
        .filter(|(k, _)| k == "exceptional")
        .map(|(_, v)| v.as_str())
        .collect();
    let want_lines = [line(&T2, &T2_ADMISSIBLE), line(&T1, &T1_ADMISSIBLE)];
    let want: BTreeSet<&str> = want_lines.iter().map(String::as_str).collect();
    plain(
        clean(&r, 837) && got == want,
        format!(
            "{}; exceptional sets: {}",
            counts(&r),
            got.into_iter().collect::<Vec<_>>().join(", ")
        ),
    )
}

fn boundary_linkage() -> Outcome {
    let r = exhaustive(LemmaId::L10);
    let p = exhaustive(LemmaId::P1);
    let matching_ok = clean(&p, 26244) && detail(&p, "clamp_records") > 0;

    // Every defect must be a stacked-singleton instance that the second
    // oracle confirms has no routing.
    let domain = all_instances(LemmaId::L10);
    let stacked = r.defects.iter().all(|d| {
        domain.iter().any(|i| {
            d.starts_with(&format!("{i}: ")) && matches!(i, LemmaInstance::Boundary { s2, s3, .. } if s2 == s3)
        })
    });
    let confirmed = detail(&r, "confirmed_infeasible") == r.defects.len();
    let pass = clean(&r, 26244) && matching_ok;
    let known = !pass && matching_ok && r.instances == 26244 && stacked && confirmed && r.defects.len() == 100;
    Outcome {
        pass,
        known,
        summary: format!(
            "{} ({} confirmed infeasible, all with s2 = s3); clamp matching {}/{} instances, {} records, {} disagreements",
            counts(&r),
            detail(&r, "confirmed_infeasible"),
            p.passed,
            p.instances,
            detail(&p, "clamp_records"),
            p.defects.len()
        ),
    }
}

fn crowded() -> Outcome {
    let reports = [(LemmaId::L1, 4725), (LemmaId::L2, 5040), (LemmaId::L3, 1260)].map(|(id, n)| (exhaustive(id), n));
    let pass = reports.iter().all(|(r, n)| clean(r, *n));
    plain(
        pass,
        format!(
            "{}; side conditions checked per certificate",
            reports.iter().map(|(r, _)| counts(r)).collect::<Vec<_>>().join("; ")
        ),
    )
}

fn pairability() -> LemmaReport {
    pairability_check(
        PairabilityStrategy::Random {
            samples: PAIRABILITY_SAMPLES,
            seed: PAIRABILITY_SEED,
        },
        workers(),
    )
}

fn run(n: usize, limit: Duration, f: impl FnOnce() -> Outcome, failures: &mut usize) {
    let start = Instant::now();
    let out = f();
    report(n, Some((start.elapsed(), limit)), out, failures);
}

/// `timing` is the measured time and its limit, if the criterion has one.
fn report(n: usize, timing: Option<(Duration, Duration)>, out: Outcome, failures: &mut usize) {
    let in_time = timing.is_none_or(|(took, limit)| took <= limit);
    let pass = out.pass && in_time;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let note = if !pass && out.known && in_time {
        " [known, see decisions ledger]"
    } else {
        ""
    };
    let time = match timing {
        Some((took, limit)) => format!("; {:.1} s (limit {} s)", took.as_secs_f64(), limit.as_secs()),
        None => String::new(),
    };
    println!("criterion {n}: {verdict} {}{time}{note}", out.summary);
    if !pass && !(out.known && in_time) {
        *failures += 1;
    }
}

fn main() -> ExitCode {
    println!("acceptance run on {} worker(s)", workers());
    let mut failures = 0;
    let secs = Duration::from_secs;

    run(1, secs(60), weak_linkage, &mut failures);
    run(2, secs(10), frames, &mut failures);
    run(3, secs(60), frame_and_mate, &mut failures);

    let start = Instant::now();
    let (c4, l8) = adjusted_escapes();
    report(4, Some((start.elapsed(), secs(120))), c4, &mut failures);

    run(5, secs(300), exceptional_family, &mut failures);
    run(6, secs(600), boundary_linkage, &mut failures);
    run(7, secs(1800), crowded, &mut failures);

    let start = Instant::now();
    let first = pairability();
    let took = start.elapsed();
    let c8 = plain(
        first.instances == PAIRABILITY_SAMPLES && detail(&first, "counterexamples") == 0 && first.is_clean(),
        format!(
            "{} random 4-pair sets on 6x6, seed {PAIRABILITY_SEED}, {} counterexamples",
            first.instances,
            detail(&first, "counterexamples")
        ),
    );
    report(8, Some((took, secs(3600))), c8, &mut failures);

    let checked = detail(&l8, "flow_checked");
    let mismatches = detail(&l8, "flow_mismatches");
    report(
        9,
        None,
        plain(
            checked > 0 && mismatches == 0,
            format!(
                "router and flow reduction on {checked} all-escape instances, {mismatches} mismatches (tolerance 0)"
            ),
        ),
        &mut failures,
    );

    let start = Instant::now();
    let second = pairability();
    let took = start.elapsed();
    let same = first.body() == second.body();
    report(
        10,
        Some((took, secs(3600))),
        plain(
            same,
            format!("repeated pairability run, report bodies byte-identical: {same}"),
        ),
        &mut failures,
    );

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
