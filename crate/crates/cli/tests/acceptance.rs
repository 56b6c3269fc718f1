//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAIL` are expected to print FAIL; the analysis
//! lives in the project's decision notes. The process exits nonzero when any
//! other criterion fails, or when a known failure starts passing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use selfdual_cli::commands::{self, QcArgs};
use selfdual_core::code::{apply_shift, apply_shift_times, shift_identity_exponent, weight_enumerator, LinearCode, Shift};
use selfdual_core::cyclic_enum::{build_selection_set, count_selfdual_cyclic};
use selfdual_core::oracle::{
    count_subspaces, enumerate_cyclic_codes, enumerate_selfdual_cyclic, theta_cyclic_codes, DEFAULT_GUARD,
    SUBSPACE_GUARD,
};
use selfdual_core::quasicyclic::{crt_decompose, direct_count, n_formula, proposition_formula, Proposition, RhoInputs};
use selfdual_core::{Automorphism, Elem, Field};

const KNOWN_FAIL: &[u32] = &[8];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn gf(q: u64) -> Field {
    Field::with_order(q).expect("field")
}

fn within(budget: Option<Duration>, elapsed: Duration) -> bool {
    budget.is_none_or(|b| elapsed <= b)
}

fn c1() -> Outcome {
    let rep = commands::count(&gf(4), 6, 1).expect("count");
    let got = (rep.selfdual_cyclic_count, rep.lambda_bar, rep.theta_cyclic_count);
    outcome(got == (3, 2, 1), format!("(|A|, Λ̄_1, θ-cyclic) = {got:?}"))
}

fn c2() -> Outcome {
    let rep = commands::count(&gf(4), 14, 1).expect("count");
    let got = (rep.selfdual_cyclic_count, rep.lambda_bar, rep.theta_cyclic_count);
    outcome(got == (3, 0, 3), format!("(|A|, Λ̄_1, θ-cyclic) = {got:?}"))
}

fn c3() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 4, 8] {
        let f = gf(q);
        for n in (2..=20u64).step_by(2) {
            let built = build_selection_set(&f, n).expect("selection set").len() as u128;
            let formula = count_selfdual_cyclic(q, n).expect("count");
            if built != formula {
                return outcome(false, format!("q={q} n={n}: |A|={built}, formula {formula}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} (q, n) pairs"))
}

fn c4() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 4] {
        let f = gf(q);
        for n in 1..=14u64 {
            let found = enumerate_selfdual_cyclic(&f, n as usize).expect("oracle");
            if let Some(c) = found.iter().find(|c| !c.is_self_dual() || !c.is_cyclic()) {
                return outcome(false, format!("q={q} n={n}: oracle returned a non-self-dual or non-cyclic code {c:?}"));
            }
            let want = if n % 2 == 0 { count_selfdual_cyclic(q, n).expect("count") } else { 0 };
            if found.len() as u128 != want {
                return outcome(false, format!("q={q} n={n}: oracle {} vs formula {want}", found.len()));
            }
            checked += 1;
        }
    }
    for q in [3u64, 5, 7, 9] {
        let f = gf(q);
        for n in 1..=14usize {
            let found = enumerate_selfdual_cyclic(&f, n).expect("oracle");
            if !found.is_empty() {
                return outcome(false, format!("q={q} n={n}: {} self-dual cyclic codes", found.len()));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} (q, n) pairs"))
}

fn c5() -> Outcome {
    let mut codes_checked = 0usize;
    let mut gcd_one = 0usize;
    let mut gcd_more = 0usize;
    let cases: [(u64, u32, &[usize]); 4] =
        [(4, 1, &[3, 4, 5, 6, 7]), (8, 1, &[3, 4, 5, 6, 7]), (8, 2, &[4, 6]), (9, 1, &[3, 4, 5, 7])];
    for (q, r, ns) in cases {
        let f = gf(q);
        let theta = Automorphism::new(&f, r).expect("θ");
        for &n in ns {
            let (s, p1) = shift_identity_exponent(n, theta.order());
            for deg in 1..n {
                let codes = theta_cyclic_codes(&f, n, theta, deg, DEFAULT_GUARD).expect("θ-cyclic codes");
                for code in &codes {
                    let closed = if s == 1 { code.is_cyclic() } else { code.is_quasi_cyclic(s) };
                    if !closed {
                        return outcome(false, format!("q={q} r={r} n={n}: θ-cyclic code not closed under T^{s}"));
                    }
                }
                codes_checked += codes.len();
                if s == 1 {
                    gcd_one += codes.len();
                } else {
                    gcd_more += codes.len();
                }
            }
            // T_θ^(p1·|θ|) is linear, so a basis suffices; scaled basis
            // vectors check that the field part cancels too.
            let times = p1 as usize * theta.order() as usize;
            let alpha = f.primitive_element();
            for i in 0..n {
                for a in [Elem::ONE, alpha] {
                    let mut v = vec![Elem::ZERO; n];
                    v[i] = a;
                    if apply_shift_times(&f, &v, Shift::Twisted(theta), times) != apply_shift(&f, &v, Shift::Power(s)) {
                        return outcome(false, format!("q={q} r={r} n={n}: T_θ^{times} != T^{s}"));
                    }
                }
            }
        }
    }
    let ok = codes_checked >= 100 && gcd_one > 0 && gcd_more > 0;
    outcome(ok, format!("{codes_checked} codes ({gcd_one} with gcd 1, {gcd_more} with gcd > 1); operator identity on all bases"))
}

fn minimal_index(code: &LinearCode) -> usize {
    let n = code.length();
    (1..=n).find(|&l| n.is_multiple_of(l) && code.is_quasi_cyclic(l)).unwrap_or(n)
}

fn c6() -> Outcome {
    let mut checked = 0usize;
    for (q, m, r) in [(4u64, 3usize, 1u32), (4, 5, 1), (16, 3, 1), (16, 3, 2), (8, 3, 1), (9, 2, 1)] {
        let f = gf(q);
        let theta = Automorphism::new(&f, r).expect("θ");
        let decomp = crt_decompose(&f, m).expect("decomposition");
        for code in decomp.selfdual_codes(2, SUBSPACE_GUARD).expect("self-dual codes") {
            let image = code.image(Shift::Twisted(theta));
            let same_weights = weight_enumerator(&code, DEFAULT_GUARD).expect("weights")
                == weight_enumerator(&image, DEFAULT_GUARD).expect("weights");
            let ok = code.is_self_dual()
                && image.is_self_dual()
                && image.is_quasi_cyclic(2)
                && minimal_index(&image) == minimal_index(&code)
                && same_weights;
            if !ok {
                return outcome(false, format!("q={q} m={m} r={r}: T_θ(C) breaks the property for {code:?}"));
            }
            checked += 1;
        }
    }
    outcome(checked >= 50, format!("{checked} self-dual quasi-cyclic codes"))
}

fn c7() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 3, 4, 5] {
        let f = gf(q);
        for d in 0..=3u32 {
            let formula = n_formula(d, q as u128).expect("N(d, q)");
            let counted = count_subspaces(&f, d as usize, SUBSPACE_GUARD).expect("subspaces");
            if formula != counted {
                return outcome(false, format!("N({d},{q}) = {formula}, exhaustive {counted}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} (d, q) pairs"))
}

fn c8() -> Outcome {
    let cases: [(Proposition, u64, usize); 12] = [
        (Proposition::P5, 2, 3),
        (Proposition::P5, 2, 5),
        (Proposition::P5, 2, 7),
        (Proposition::P5, 4, 3),
        (Proposition::P5, 8, 3),
        (Proposition::P5, 16, 3),
        (Proposition::P6, 5, 2),
        (Proposition::P7, 2, 2),
        (Proposition::P7, 8, 2),
        (Proposition::P8, 4, 2),
        (Proposition::P10, 5, 2),
        (Proposition::P10, 9, 2),
    ];
    let mut nonzero = Vec::new();
    let mut matches_direct = 0;
    for (case, q, size) in cases {
        let f = gf(q);
        let r = f.m();
        let formula = proposition_formula(&f, case, size, r, &RhoInputs::default()).expect("formula");
        for t in formula.terms.iter().filter(|t| t.rho != 0) {
            nonzero.push(format!("{case} q={q}: ρ({})={}", t.label, t.rho));
        }
        let (d, m) = case.shape(size);
        let theta = Automorphism::identity(&f);
        let direct = direct_count(&crt_decompose(&f, m).expect("decomposition"), d, theta, SUBSPACE_GUARD).expect("direct");
        if direct.theta_invariant == formula.count().expect("count") {
            matches_direct += 1;
        }
    }
    let detail = format!(
        "{} instances; nonzero ρ-sums: [{}]; formula equals the direct count in {matches_direct} of them",
        cases.len(),
        nonzero.join(", ")
    );
    outcome(nonzero.is_empty(), detail)
}

fn c9() -> Outcome {
    let args = QcArgs {
        case: Proposition::P5,
        size: 3,
        r: 1,
        rho: RhoInputs::default(),
        guard: DEFAULT_GUARD,
        skip_oracle: false,
    };
    let rep = commands::qc(&gf(4), &args).expect("qc report");
    let json = serde_json::to_value(&rep).expect("json");
    let present = ["formula_count", "oracle_count", "agree"].iter().all(|k| !json[k].is_null());
    let detail = format!(
        "formula {} oracle {:?} direct {:?} agree {:?}",
        rep.formula_count,
        rep.oracle_count,
        rep.direct_count.as_ref().map(|d| d.theta_invariant),
        rep.agree
    );
    outcome(present && (rep.q, rep.d, rep.m, rep.r) == (4, 2, 3, 1), detail)
}

fn c10() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 4] {
        let f = gf(q);
        let id = Automorphism::identity(&f);
        for n in 1..=10usize {
            let mut skew = Vec::new();
            for deg in 0..=n {
                skew.extend(theta_cyclic_codes(&f, n, id, deg, DEFAULT_GUARD).expect("skew oracle"));
            }
            skew.sort();
            let mut cyclic = enumerate_cyclic_codes(&f, n, None).expect("cyclic oracle");
            cyclic.sort();
            if skew != cyclic {
                return outcome(false, format!("q={q} n={n}: {} skew codes vs {} cyclic codes", skew.len(), cyclic.len()));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} (q, n) pairs, code sets equal"))
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 10] = [
        (1, "q=4 n=6 r=1 counts 3/2/1", secs(1), c1),
        (2, "q=4 n=14 r=1 counts 3/0/3", secs(1), c2),
        (3, "selection set size equals the closed form", secs(10), c3),
        (4, "cyclic oracle agrees with the closed form", secs(60), c4),
        (5, "θ-cyclic codes closed under T or T^s", None, c5),
        (6, "T_θ preserves self-duality, index and weights", None, c6),
        (7, "N(d,q) equals the exhaustive subspace count", secs(30), c7),
        (8, "θ = id makes every ρ-sum 0", None, c8),
        (9, "P5 dual-path report at q=4 m=3 r=1", None, c9),
        (10, "skew oracle with θ = id equals the cyclic oracle", None, c10),
    ];
    let mut unexpected = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let timely = within(budget, elapsed);
        let pass = out.ok && timely;
        let budget_note = budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
        println!(
            "{} [{id:>2}] {name}: {} [{:.3}s{budget_note}]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
        let known = KNOWN_FAIL.contains(&id);
        if pass == known {
            unexpected += 1;
            if known {
                println!("      criterion {id} was expected to fail and passed; update KNOWN_FAIL");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
