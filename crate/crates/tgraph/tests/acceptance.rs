//! The ten acceptance checks. One test per criterion; each prints its
//! verdict line (run with `--nocapture` to see the lines for passing tests).

use std::time::{Duration, Instant};

use num_traits::Zero;
use tgraph::code::{AbForm, Bit, Letter};
use tgraph::counting::{
    brute_force_ind_vector, brute_force_match_vector, ind_vector, match_vector, OracleLimits,
};
use tgraph::extremal;
use tgraph::graph::{edge_count, Graph};
use tgraph::moves::{
    ab_switch, bracketed_0_move, bracketed_1_move, indset_consecutive_move,
    indset_nonconsecutive_move, maximize_matchings_by_moves, minimize_indsets_by_moves,
};
use tgraph::verify::{
    conjecture_scan, enumerate_codes, enumeration_report, verify_max_matchings,
    verify_min_indsets,
};
use tgraph::ThresholdCode;

#[test]
fn criterion_01_worked_example_vector() {
    let code = ThresholdCode::parse("001001*").unwrap();
    let m = match_vector(&code);
    assert_eq!(m.to_string(), "[1, 5, 2, 0]");
    assert_eq!(m.total(), 8u32.into());

    let iterations = 10_000u32;
    let started = Instant::now();
    for _ in 0..iterations {
        std::hint::black_box(match_vector(std::hint::black_box(&code)));
    }
    let per_call = started.elapsed() / iterations;
    assert!(per_call < Duration::from_millis(1), "took {per_call:?} per call");
    println!(
        "criterion 1: PASS — m(001001*) = [1, 5, 2], total 8, {per_call:?} per call"
    );
}

#[test]
fn criterion_02_dynamic_programs_match_oracles() {
    let started = Instant::now();
    let limits = OracleLimits::default();
    let mut codes = 0u64;
    for n in 1..=10 {
        for code in enumerate_codes(n) {
            let graph = Graph::from_code(&code);
            assert_eq!(
                match_vector(&code),
                brute_force_match_vector(&graph, &limits).unwrap(),
                "matchings differ on {code}"
            );
            assert_eq!(
                ind_vector(&code),
                brute_force_ind_vector(&graph, &limits).unwrap(),
                "independent sets differ on {code}"
            );
            codes += 1;
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(codes, 1023);
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 2: PASS — both DPs equal the oracles on all {codes} codes, n <= 10, in {elapsed:?}");
}

#[test]
fn criterion_03_matching_maximizers() {
    let started = Instant::now();
    for n in 1..=12 {
        let verdict = verify_max_matchings(n, 0);
        assert!(verdict.pass, "n={n}: {:?}", verdict.failures);
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "criterion 3: PASS — almost-alternating codes are exactly the matching maximizers, n <= 12, in {elapsed:?}"
    );
}

#[test]
fn criterion_04_indset_minimizers() {
    for n in 1..=12 {
        let verdict = verify_min_indsets(n, 0);
        assert!(verdict.pass, "n={n}: {:?}", verdict.failures);
    }
    println!(
        "criterion 4: PASS — the colex code uniquely minimizes independent sets, n <= 12"
    );
}

#[test]
fn criterion_05_almost_alternating_codes_share_vectors() {
    for n in 1..=12 {
        let report = enumeration_report(n, 0);
        for row in &report.rows {
            assert!(row.summary.aa_codes >= 1, "n={n} e={}", row.summary.e);
            assert!(
                row.summary.aa_vector_mismatch.is_none(),
                "n={n} e={}: {:?}",
                row.summary.e,
                row.summary.aa_vector_mismatch
            );
        }
    }
    println!(
        "criterion 5: PASS — all almost-alternating codes at each (n, e) share one matching vector, n <= 12"
    );
}

#[test]
fn criterion_06_move_laws() {
    let mut applications = 0u64;
    for n in 2..=12usize {
        for code in enumerate_codes(n) {
            let e = edge_count(&code);
            let m = match_vector(&code);
            let i = ind_vector(&code);
            for at in 0..n - 1 {
                if let Ok(next) = ab_switch(&code, at) {
                    assert_eq!(next.n(), n);
                    assert_eq!(edge_count(&next), e);
                    assert_eq!(match_vector(&next), m, "ab-switch at {at} on {code}");
                    applications += 1;
                }
                for next in [bracketed_1_move(&code, at), bracketed_0_move(&code, at)]
                    .into_iter()
                    .flatten()
                {
                    assert_eq!(next.n(), n);
                    assert_eq!(edge_count(&next), e);
                    let grown = match_vector(&next);
                    assert!(grown.total() > m.total(), "no strict growth at {at} on {code}");
                    assert!(m.le_pointwise(&grown), "some m_k dropped at {at} on {code}");
                    applications += 1;
                }
                for next in
                    [indset_consecutive_move(&code, at), indset_nonconsecutive_move(&code, at)]
                        .into_iter()
                        .flatten()
                {
                    assert_eq!(next.n(), n);
                    assert_eq!(edge_count(&next), e);
                    let shrunk = ind_vector(&next);
                    assert!(shrunk.total() < i.total(), "no strict drop at {at} on {code}");
                    assert!(shrunk.le_pointwise(&i), "some i_k grew at {at} on {code}");
                    applications += 1;
                }
            }
        }
    }
    println!(
        "criterion 6: PASS — monotonicity and (n, e) preservation for all {applications} \
         applicable windows, n <= 12"
    );
}

#[test]
fn criterion_07_closed_form_edge_counts() {
    for n in 1..=14usize {
        let top = (n as u64) * (n as u64 - 1) / 2;
        let mut small_max = 0;
        for code in enumerate_codes(n) {
            let forms = code.ab_forms();
            if forms.is_empty() {
                continue;
            }
            let e = edge_count(&code);
            for form in &forms {
                let alpha = form.alpha() as u64;
                let beta = form.beta() as u64;
                let closed = if form.is_small() {
                    if form.starred() {
                        extremal::s_star(alpha, beta)
                    } else {
                        extremal::s(alpha, beta)
                    }
                } else if form.starred() {
                    top - extremal::s_star(beta, alpha)
                } else {
                    top - extremal::s(beta, alpha)
                };
                assert_eq!(e, closed, "{code} as {form}");
            }
            if forms.iter().any(AbForm::is_small) {
                small_max = small_max.max(e);
            }
        }
        assert_eq!(small_max, extremal::sm(n), "densest small code at n={n}");
    }

    // the all-b word is the same code as a 1-block, all-a word, and a star
    for k in 1..=7usize {
        let all_b = AbForm::new(None, 0, vec![Letter::B; k], false);
        let rewritten = AbForm::new(Some(Bit::One), 1, vec![Letter::A; k - 1], true);
        assert_eq!(all_b.code(), rewritten.code(), "k={k}");
    }
    println!(
        "criterion 7: PASS — closed forms s, s*, sm and the b-word boundary identity, n <= 14"
    );
}

#[test]
fn criterion_08_reduction_fixpoints() {
    for n in 1..=12 {
        for code in enumerate_codes(n) {
            let up = maximize_matchings_by_moves(&code);
            assert!(up.validate(), "broken maximize trace for {code}");
            assert!(up.final_code.is_almost_alternating(), "{code}");

            let down = minimize_indsets_by_moves(&code);
            assert!(down.validate(), "broken minimize trace for {code}");
            let colex = extremal::colex_code(n, edge_count(&code)).unwrap();
            assert_eq!(down.final_code, colex, "{code}");
        }
    }
    println!(
        "criterion 8: PASS — every reduction lands on its extremal code, n <= 12"
    );
}

#[test]
fn criterion_09_conjecture_scan_and_remark() {
    let scan = conjecture_scan(14, 0);
    assert!(scan.pass, "{:?}", scan.counterexamples);

    // the worked non-strictness case: T("1000111*") has 13 edges and no
    // 4-matchings, and the almost-alternating vector is zero there too, so
    // the strictness clause is vacuous at k = 4
    let remark = ThresholdCode::parse("1000111*").unwrap();
    assert_eq!(edge_count(&remark), 13);
    assert!(match_vector(&remark).get(4).is_zero());

    // the printed representative "1010100*" actually has 15 edges, not 13;
    // the 13-edge almost-alternating family is the three-a-one-b word
    let printed = ThresholdCode::parse("1010100*").unwrap();
    assert_eq!(edge_count(&printed), 15);
    let aa = extremal::almost_alternating_code(8, 13).unwrap();
    assert_eq!(aa.to_string(), "0101011*");
    let form = &aa.ab_forms()[0];
    assert_eq!((form.alpha(), form.beta()), (3, 1));
    assert!(match_vector(&aa).get(4).is_zero());

    let report = enumeration_report(8, 0);
    let row = &report.rows[13];
    assert!(row.summary.max_mk.get(4).is_zero());
    assert!(row.summary.non_aa_max_mk.as_ref().unwrap().get(4).is_zero());

    println!(
        "criterion 9: PASS — conjecture clean for n <= 14; the (8, 13) remark case reproduced"
    );
}

#[test]
fn criterion_10_round_trips() {
    for n in 1..=10 {
        for code in enumerate_codes(n) {
            assert_eq!(ThresholdCode::parse(&code.to_string()).unwrap(), code);
            assert_eq!(Graph::from_code(&code).to_code().unwrap(), code);
            assert_eq!(code.complement().complement(), code);
        }
    }
    println!(
        "criterion 10: PASS — parse/render, graph, and complement round-trips, n <= 10"
    );
}
