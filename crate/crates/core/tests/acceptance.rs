use std::time::{Duration, Instant};

use serde_json::Value;
use xiform::verify::{self, RunConfig, Suite, SuiteReport};

const TIME_LIMIT: Duration = Duration::from_secs(600);

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn find<'a>(reports: &'a [SuiteReport], s: Suite) -> &'a SuiteReport {
    reports.iter().find(|r| r.suite == s).expect("suite ran")
}

fn rows(v: &Value) -> &Vec<Value> {
    v.as_array().expect("dims table")
}

fn int(v: &Value, key: &str) -> i64 {
    v[key].as_i64().unwrap_or_else(|| panic!("missing {key}"))
}

fn hkr(r: &SuiteReport) -> Outcome {
    let table = rows(&r.dims);
    let mut pass = r.passed();
    for n in 1..=2i64 {
        for k in 0..=n + 1 {
            for w in -k..=2 {
                let hit = table.iter().find(|d| int(d, "n") == n && int(d, "k") == k && int(d, "w") == w);
                pass &= hit.is_some_and(|d| int(d, "hh") == int(d, "polyvectors") && int(d, "hkr_rank") == int(d, "hh"));
            }
        }
    }
    Outcome { id: 1, name: "HKR", pass, detail: format!("{} weight pieces, dim HH = dim V = hkr rank, tolerance 0", table.len()) }
}

fn dgla(r: &SuiteReport) -> Outcome {
    let n2 = rows(&r.dims).iter().any(|d| int(d, "n") == 2 && int(d, "triples") > 0);
    let b = &r.budget;
    let grid = b["max_arity"] == 3 && b["max_slot_order"] == 2 && b["max_coef_deg"] == 2 && b["vars"] == 2;
    Outcome {
        id: 2,
        name: "DGLA",
        pass: r.passed() && n2 && grid,
        detail: format!("{} exact identities, {} failures", r.checked, r.failures.len()),
    }
}

fn braces(r: &SuiteReport) -> Outcome {
    let d = &r.dims;
    let unique = int(d, "homotopy_sign_survivors") == 1 && int(d, "derivation_sign_survivors") == 1;
    Outcome {
        id: 3,
        name: "braces",
        pass: r.passed() && unique && r.budget["trials"] == 20,
        detail: format!(
            "20 trials, sign survivors {}/{} and {}/{}",
            d["homotopy_sign_survivors"], d["homotopy_sign_candidates"], d["derivation_sign_survivors"], d["derivation_sign_candidates"]
        ),
    }
}

fn obstruction(r: &SuiteReport) -> Outcome {
    let table = rows(&r.dims);
    let zero = table.len() == 2
        && table.iter().all(|d| int(d, "rank") == 2 && d["solution"] == serde_json::json!(["0", "0"]));
    Outcome {
        id: 4,
        name: "obstruction",
        pass: r.passed() && zero && r.budget["vars"] == 3,
        detail: table.iter().map(|d| format!("{}: rank {} of 2", d["ansatz"], d["rank"])).collect::<Vec<_>>().join(", "),
    }
}

fn plain(id: usize, name: &'static str, r: &SuiteReport) -> Outcome {
    Outcome { id, name, pass: r.passed(), detail: format!("{} checks, {} failures", r.checked, r.failures.len()) }
}

fn xi(r: &SuiteReport) -> Outcome {
    let b = &r.budget["xi"];
    let budget = b["max_factors"] == 3 && b["max_word_len"] == 3 && b["max_coef_deg"] == 2;
    let mut o = plain(5, "Xi", r);
    o.pass &= budget && rows(&r.dims).len() == 2;
    o
}

fn harrison(r: &SuiteReport) -> Outcome {
    let table = rows(&r.dims);
    let mut dims = Vec::new();
    let mut pass = r.passed();
    for w in 1..=3 {
        let piece: Vec<&Value> = table.iter().filter(|d| int(d, "n") == 1 && int(d, "weight") == w).collect();
        pass &= !piece.is_empty() && piece.iter().all(|d| d["complete"] == true);
        pass &= piece.iter().all(|d| int(d, "degree") == 0 || int(d, "dim") == 0);
        dims.push(piece.iter().filter(|d| int(d, "degree") == 0).map(|d| int(d, "dim")).sum::<i64>());
    }
    pass &= dims == [1, 1, 1];
    Outcome { id: 8, name: "Harrison", pass, detail: format!("n=1 degree-0 dims {dims:?}, higher degrees 0") }
}

fn witt(r: &SuiteReport) -> Outcome {
    let table = rows(&r.dims);
    let agree = table.iter().all(|d| d["rank"] == d["witt"]);
    let covered = table.iter().filter(|d| int(d, "alphabet") <= 3 && int(d, "length") <= 4).count() == 12;
    Outcome {
        id: 9,
        name: "combinatorics",
        pass: r.passed() && agree && covered,
        detail: format!("{} rank/Witt pairs, {} checks", table.len(), r.checked),
    }
}

#[test]
fn acceptance() {
    let cfg = RunConfig::default();
    let start = Instant::now();
    let first = verify::run(&cfg).expect("default run");
    let elapsed = start.elapsed();
    let second = verify::run(&cfg).expect("second run");
    let (a, b) = (verify::report_json(&first), verify::report_json(&second));

    let outcomes = vec![
        hkr(find(&first, Suite::Hkr)),
        dgla(find(&first, Suite::Schouten)),
        braces(find(&first, Suite::Braces)),
        obstruction(find(&first, Suite::Obstruction)),
        xi(find(&first, Suite::Xi)),
        plain(6, "sigma", find(&first, Suite::Sigma)),
        plain(7, "cobar", find(&first, Suite::Cobar)),
        harrison(find(&first, Suite::Harrison)),
        witt(find(&first, Suite::Witt)),
        Outcome {
            id: 10,
            name: "determinism",
            pass: a == b && elapsed < TIME_LIMIT,
            detail: format!("identical reports: {}, default run {:.1}s (limit 600s)", a == b, elapsed.as_secs_f64()),
        },
    ];
    for o in &outcomes {
        println!("criterion {:>2} {:<14} {}  {}", o.id, o.name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
