//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

use common::props::*;
use common::*;
use gmhm::bridge::first_homology_all;
use gmhm::census::crystallizations;
use gmhm::diagram::ReductionAudit;
use gmhm::embedding::RegularEmbedding;
use gmhm::gem::Gem;
use gmhm::gm::{forest_choices, gm_value, gm_value_crystallization, GmOptions, DEFAULT_FOREST_CAP};
use gmhm::{cross_check, first_homology, H1Fingerprint};

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, title: &str, o: &Outcome) {
    println!("criterion {id} [{}] {title}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
}

/// Census gems up to order 12, connected sums of fixtures, and census gems
/// of order at most 8 with one dipole inserted at every position.
struct Corpus {
    census: Vec<Gem>,
    sums: Vec<Gem>,
    dipoles: Vec<Gem>,
    enumeration: Duration,
}

fn corpus() -> Corpus {
    let t = Instant::now();
    let census: Vec<Gem> = (2..=12)
        .step_by(2)
        .flat_map(|n| crystallizations(n, false, u64::MAX).unwrap())
        .collect();
    let enumeration = t.elapsed();
    let names = ["rp3", "l31", "s1xs2", "s1xts2"];
    let mut sums = vec![gem_fixture("rp3_sum_rp3")];
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            let (g1, g2) = (gem_fixture(a), gem_fixture(b));
            for (v, w) in [(0, 0), (1, g2.order() - 1)] {
                sums.push(g1.connected_sum(v, &g2, w).with_name(format!("{a}#{b}@{v},{w}")));
            }
        }
    }
    let dipoles = census_upto(&census, 8)
        .flat_map(|g| {
            (0..g.order()).flat_map(move |v| {
                (0..4u8).map(move |c| g.insert_dipole(v, c).with_name(format!("{}+d{v}.{c}", g.name())))
            })
        })
        .collect();
    Corpus { census, sums, dipoles, enumeration }
}

fn census_upto(census: &[Gem], order: usize) -> impl Iterator<Item = &Gem> {
    census.iter().filter(move |g| g.order() <= order)
}

fn complexity_zero_family() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, manifold) in [
        ("s3_order2", "S3"),
        ("rp3", "RP3"),
        ("l31", "L(3,1)"),
        ("s1xs2", "S1xS2"),
        ("s1xts2", "S1x~S2"),
    ] {
        let t = Instant::now();
        let g = gem_fixture(name);
        let value = gm_value(&g, &GmOptions::default()).map(|w| w.value);
        let dt = t.elapsed();
        let ok = g.is_contracted() && value.as_ref().is_ok_and(|&v| v == 0) && dt < Duration::from_secs(10);
        pass &= ok;
        lines.push(format!("{manifold}={:?} in {:.1}ms", value.ok(), dt.as_secs_f64() * 1e3));
    }
    Outcome { pass, detail: lines.join(", ") }
}

struct CrossRun {
    outcome: Outcome,
    audit: ReductionAudit,
    rd_count_failures: usize,
    curve_totals: (usize, usize),
}

fn central_oracle(c: &Corpus) -> CrossRun {
    let t = Instant::now();
    let opts = GmOptions::default();
    let gems: Vec<&Gem> = c.census.iter().chain(&c.sums).chain(&c.dipoles).collect();
    let results: Vec<_> = gems
        .par_iter()
        .map(|g| {
            let cc = cross_check(g, &opts);
            // crystallizations reduce by deleting one curve from each family
            let rd_bad = match &cc {
                Ok(cc) if g.is_contracted() => cc
                    .pairs
                    .iter()
                    .filter(|p| p.hm.reductions != p.prime_curves * p.double_prime_curves)
                    .count(),
                _ => 0,
            };
            (g.name().to_string(), cc, rd_bad)
        })
        .collect();
    let mut mismatches = Vec::new();
    let mut errors = Vec::new();
    let mut unclean = 0;
    let mut audit = ReductionAudit::default();
    let mut rd_count_failures = 0;
    let mut values = std::collections::BTreeMap::new();
    for (name, cc, rd_bad) in &results {
        rd_count_failures += rd_bad;
        match cc {
            Ok(cc) => {
                if !cc.equal {
                    mismatches.push(format!("{name}: gm {} hm {}", cc.gm_value, cc.hm_value));
                }
                if !cc.audit_clean {
                    unclean += 1;
                }
                *values.entry(cc.gm_value).or_insert(0usize) += 1;
                for p in &cc.pairs {
                    let a = &p.hm.audit;
                    audit.forests_checked += a.forests_checked;
                    audit.tree_formula_failures += a.tree_formula_failures;
                    audit.convention_mismatches += a.convention_mismatches;
                    audit.curve_count_failures += a.curve_count_failures;
                    audit.unreduced_outputs += a.unreduced_outputs;
                    audit.surface_changes += a.surface_changes;
                }
            }
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    let cross_time = t.elapsed();

    // per-choice oracle: every removal choice on census gems up to order 10
    // and on every dipole gem
    let t2 = Instant::now();
    let choice_gems: Vec<&Gem> = census_upto(&c.census, 10).chain(&c.dipoles).collect();
    let choice_results: Vec<Result<usize, String>> = choice_gems
        .par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            for s in 0..3 {
                let emb = RegularEmbedding::new(g, s);
                let (a, b) = emb.pair();
                let (x, y) = emb.complement();
                let ds = forest_choices(g, a, b, DEFAULT_FOREST_CAP).unwrap();
                let dps = forest_choices(g, x, y, DEFAULT_FOREST_CAP).unwrap();
                for d in &ds {
                    for dp in &dps {
                        out.push(per_choice_agreement(g, s, &d.curves, &dp.curves));
                    }
                }
            }
            out
        })
        .collect();
    let choice_failures: Vec<&String> = choice_results.iter().filter_map(|r| r.as_ref().err()).collect();
    let mut choice_values = std::collections::BTreeMap::new();
    for v in choice_results.iter().flatten() {
        *choice_values.entry(*v).or_insert(0usize) += 1;
    }

    let total = c.enumeration + cross_time;
    let pass = mismatches.is_empty()
        && errors.is_empty()
        && unclean == 0
        && choice_failures.is_empty()
        && total < Duration::from_secs(600);
    let mut detail = format!(
        "{} census gems + {} sums + {} dipole gems, {} mismatches, {} errors, {} unclean audits, values {:?}; \
         {} removal choices compared, {} disagreements, choice values {:?}; \
         enumeration {:.1}s + cross-check {:.1}s (+ per-choice {:.1}s)",
        c.census.len(),
        c.sums.len(),
        c.dipoles.len(),
        mismatches.len(),
        errors.len(),
        unclean,
        values,
        choice_results.len(),
        choice_failures.len(),
        choice_values,
        c.enumeration.as_secs_f64(),
        cross_time.as_secs_f64(),
        t2.elapsed().as_secs_f64(),
    );
    for m in mismatches.iter().chain(&errors).chain(choice_failures.iter().copied()).take(5) {
        detail.push_str(&format!("\n    {m}"));
    }
    let curve_totals = results
        .iter()
        .filter_map(|(_, cc, _)| cc.as_ref().ok())
        .flat_map(|cc| &cc.pairs)
        .fold((0, 0), |(p, d), s| (p + s.prime_curves, d + s.double_prime_curves));
    CrossRun {
        outcome: Outcome { pass, detail },
        audit,
        rd_count_failures,
        curve_totals,
    }
}

fn euler_bookkeeping(c: &Corpus) -> Outcome {
    let mut gems: Vec<Gem> = GEM_FIXTURES.iter().map(|n| gem_fixture(n)).collect();
    gems.extend(c.sums.iter().cloned());
    gems.extend(c.dipoles.iter().cloned());
    gems.extend(c.census.iter().cloned());
    let mut checked = 0;
    let mut literal_checked = 0;
    let mut failures = Vec::new();
    for g in &gems {
        for s in 0..3 {
            let emb = RegularEmbedding::new(g, s);
            let (a, b) = emb.pair();
            let boundary: usize = emb.faces.iter().map(|f| f.edges.len()).sum();
            let chi = g.order() as i64 - g.edge_count() as i64 + emb.faces.len() as i64;
            let rho = RegularEmbedding::rho_from_residues(g, s);
            checked += 1;
            if boundary != 2 * g.edge_count() || chi != emb.euler_char || chi != 2 - 2 * rho {
                failures.push(format!("{} pair {a}{b}: chi {chi}, rho {rho}", g.name()));
            }
            if g.is_contracted() {
                literal_checked += 1;
                let literal = g.g_pair(a, b) as i64 - g.g_hat(a) as i64 - g.g_hat(b) as i64 + 1;
                if chi != 2 - 2 * literal {
                    failures.push(format!("{} pair {a}{b}: literal genus {literal}, chi {chi}", g.name()));
                }
            }
        }
    }
    let mut detail = format!(
        "{} (gem, pair) surfaces checked ({} with the pair's own hats on contracted gems), {} failures",
        checked,
        literal_checked,
        failures.len()
    );
    for f in failures.iter().take(5) {
        detail.push_str(&format!("\n    {f}"));
    }
    Outcome { pass: failures.is_empty(), detail }
}

fn formula_suite(run: &CrossRun) -> Outcome {
    let a = &run.audit;
    let pass = a.forests_checked > 0
        && a.tree_formula_failures == 0
        && a.curve_count_failures == 0
        && a.unreduced_outputs == 0
        && a.surface_changes == 0
        && run.rd_count_failures == 0;
    Outcome {
        pass,
        detail: format!(
            "{} forests checked, {} tree-formula failures, {} skipped for odd crosscap number, \
             {} reduced systems with wrong curve count, {} unreduced outputs, {} surface changes, \
             {} crystallization pairs with |Rd| != g'g'' (induced curves C'={} C''={})",
            a.forests_checked,
            a.tree_formula_failures,
            a.convention_mismatches,
            a.curve_count_failures,
            a.unreduced_outputs,
            a.surface_changes,
            run.rd_count_failures,
            run.curve_totals.0,
            run.curve_totals.1,
        ),
    }
}

fn definition_agreement(c: &Corpus) -> Outcome {
    let opts = GmOptions::default();
    let mut gems: Vec<Gem> = GEM_FIXTURES.iter().map(|n| gem_fixture(n)).collect();
    gems.extend(c.census.iter().cloned());
    gems.retain(|g| g.is_contracted());
    let failures: Vec<String> = gems
        .par_iter()
        .filter_map(|g| {
            let fast = gm_value_crystallization(g, &opts).map(|w| w.value);
            let general = gm_value(g, &opts).map(|w| w.value);
            match (fast, general) {
                (Ok(x), Ok(y)) if x == y => None,
                (x, y) => Some(format!("{}: {:?} vs {:?}", g.name(), x.ok(), y.ok())),
            }
        })
        .collect();
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{} contracted gems, {} disagreements", gems.len(), failures.len()),
    }
}

fn fingerprint_sanity() -> Outcome {
    let mut pass = true;
    let mut lines = Vec::new();
    for (name, want) in [("s3_order2", "0"), ("rp3", "Z2"), ("l31", "Z3"), ("s1xs2", "Z"), ("s1xts2", "Z")] {
        let g = gem_fixture(name);
        let want: H1Fingerprint = want.parse().unwrap();
        let oracle = homology_of_k(&g);
        let got = first_homology(&g, DEFAULT_FOREST_CAP);
        let all = first_homology_all(&g, DEFAULT_FOREST_CAP).unwrap();
        let ok = got.as_ref().is_ok_and(|h| *h == want)
            && all.iter().all(|h| *h == want)
            && (want.rank, want.torsion.clone()) == oracle;
        pass &= ok;
        lines.push(format!(
            "{name}={}",
            got.map(|h| h.to_string()).unwrap_or_else(|e| e.to_string())
        ));
    }
    Outcome { pass, detail: format!("{} (all three pairs, chain-complex oracle agrees)", lines.join(", ")) }
}

fn err<T: std::fmt::Debug>(e: proptest::test_runner::TestError<T>) -> String {
    e.to_string()
}

fn property_tests() -> Outcome {
    const CASES: u32 = 1000;
    let runner = |name: &str, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| {
        let mut r = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
        (name.to_string(), f(&mut r))
    };
    let results = [
        runner("gem round trip", &|r| r.run(&gem_case(3), |c| gem_round_trip(&c)).map_err(err)),
        runner("hdg round trip", &|r| {
            r.run(&(gem_case(2), 0..3usize), |(c, s)| hdg_round_trip(&c, s)).map_err(err)
        }),
        runner("region partition", &|r| {
            r.run(&(gem_case(2), 0..3usize, proptest::prelude::any::<u64>()), |(c, s, k)| {
                region_partition(&c, s, k)
            })
            .map_err(err)
        }),
        runner("reducedness and n(R) <= c", &|r| {
            r.run(&(gem_case(2), 0..3usize), |(c, s)| reductions_are_reduced(&c, s)).map_err(err)
        }),
        runner("per-choice agreement", &|r| {
            let pick = (proptest::prelude::any::<usize>(), proptest::prelude::any::<usize>());
            r.run(&(gem_case(2), 0..3usize, pick), |(c, s, p)| choice_agreement(&c, s, p))
                .map_err(err)
        }),
    ];
    let pass = results.iter().all(|(_, r)| r.is_ok());
    let detail = results
        .iter()
        .map(|(n, r)| match r {
            Ok(()) => format!("{n}: {CASES} ok"),
            Err(e) => format!("{n}: {e}"),
        })
        .collect::<Vec<_>>()
        .join(", ");
    Outcome { pass, detail }
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    let run = central_oracle(&corpus);
    let formulas = formula_suite(&run);
    let outcomes = [
        (1, "complexity-zero family", complexity_zero_family()),
        (2, "gem/diagram cross-check", run.outcome),
        (3, "Euler bookkeeping", euler_bookkeeping(&corpus)),
        (4, "tree formula and curve counts", formulas),
        (5, "definition agreement", definition_agreement(&corpus)),
        (6, "homology fingerprints", fingerprint_sanity()),
        (7, "property tests", property_tests()),
    ];
    let mut failed = 0;
    for (id, title, o) in &outcomes {
        report(*id, title, o);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of 7 passed in {:.1}s", 7 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
