//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperkit::{emit_hasse, parse_structure, serialize_structure};
use hyperkit_core::ablation::{ablate, Property};
use hyperkit_core::axioms::MosaicAxiom;
use hyperkit_core::enumeration::{enumerate_bjoin, enumerate_lmosaic, Bounds, RhoMode};
use hyperkit_core::equivalence::{assoc_scan, roundtrip_bjoin, roundtrip_lmosaic};
use hyperkit_core::extraction::lub_properties;
use hyperkit_core::{
    check_bjoin, check_lmosaic, extract_bjoin, extract_join, induced_order, nakano,
    BJoinSemilattice, ElemSet, ExtractJoinError, LMosaic, Structure,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const BJOIN_COUNTS: [usize; 6] = [1, 1, 1, 2, 5, 15];
const LMOSAIC_BOUND: usize = 4;

fn semilattices(max: usize) -> Vec<BJoinSemilattice> {
    let b = Bounds::default();
    (1..=max)
        .flat_map(|n| enumerate_bjoin(n, &b).unwrap())
        .collect()
}

fn lmosaics(max: usize) -> Vec<LMosaic> {
    let b = Bounds::default();
    (1..=max)
        .flat_map(|n| enumerate_lmosaic(n, &b, RhoMode::Identity).unwrap())
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("took {e:?}, limit {limit:?}"))?;
    Ok(e)
}

fn nakano_validity() -> Outcome {
    let t = Instant::now();
    let b = Bounds::default();
    let mut total = 0;
    for n in 1..=6 {
        let all = enumerate_bjoin(n, &b).map_err(|e| e.to_string())?;
        ensure(all.len() == BJOIN_COUNTS[n - 1], || {
            format!(
                "n={n}: {} classes, expected {}",
                all.len(),
                BJOIN_COUNTS[n - 1]
            )
        })?;
        for (i, s) in all.iter().enumerate() {
            let m = nakano(s).map_err(|e| format!("n={n} #{i}: {e}"))?;
            let r = check_lmosaic(&m, false);
            ensure(r.all_pass(), || format!("n={n} #{i}:\n{r}"))?;
            total += 1;
        }
    }
    let e = within(t, Duration::from_secs(60))?;
    Ok(format!(
        "{total} semilattices, counts {BJOIN_COUNTS:?}, {e:.2?}"
    ))
}

fn reverse_construction() -> Outcome {
    let t = Instant::now();
    let all = lmosaics(LMOSAIC_BOUND);
    for (i, m) in all.iter().enumerate() {
        let s = extract_bjoin(m).map_err(|e| format!("#{i}: {e}"))?;
        let r = check_bjoin(&s);
        ensure(r.all_pass(), || format!("#{i}:\n{r}"))?;
    }
    let e = within(t, Duration::from_secs(600))?;
    Ok(format!(
        "{} L-mosaics with n <= {LMOSAIC_BOUND}, {e:.2?}",
        all.len()
    ))
}

fn mutual_inverses() -> Outcome {
    let sl = semilattices(6);
    for (i, s) in sl.iter().enumerate() {
        let d = roundtrip_bjoin(s).map_err(|e| format!("bjoin #{i}: {e}"))?;
        ensure(d.is_identical(), || format!("bjoin #{i}: {d}"))?;
    }
    let lm = lmosaics(LMOSAIC_BOUND);
    for (i, m) in lm.iter().enumerate() {
        let d = roundtrip_lmosaic(m).map_err(|e| format!("lmosaic #{i}: {e}"))?;
        ensure(d.is_identical(), || format!("lmosaic #{i}: {d}"))?;
    }
    let b = Bounds::default();
    let mut counts = Vec::new();
    for n in 1..=LMOSAIC_BOUND {
        let j = enumerate_bjoin(n, &b).unwrap().len();
        let m = enumerate_lmosaic(n, &b, RhoMode::Identity).unwrap().len();
        ensure(j == m && m == BJOIN_COUNTS[n - 1], || {
            format!("n={n}: {j} semilattices, {m} L-mosaics")
        })?;
        counts.push(m);
    }
    Ok(format!(
        "{} + {} round trips identical, counts {counts:?}",
        sl.len(),
        lm.len()
    ))
}

fn induced_order_correctness() -> Outcome {
    let sl = semilattices(6);
    for (i, s) in sl.iter().enumerate() {
        let m = nakano(s).map_err(|e| e.to_string())?;
        let o = induced_order(&m);
        for x in 0..s.size() {
            for y in 0..s.size() {
                ensure(o.leq(x, y) == (s.join(x, y) == y), || {
                    format!("#{i}: order disagrees at ({x},{y})")
                })?;
            }
        }
        let r = lub_properties(&m).map_err(|e| format!("#{i}: {e}"))?;
        ensure(r.verdicts.len() == 3 && r.all_pass(), || {
            format!("#{i}:\n{r}")
        })?;
    }
    Ok(format!("{} Nakano structures", sl.len()))
}

fn choice_contract() -> Outcome {
    let full = LMosaic::from_fn(2, 0, |_, _| ElemSet::full(2)).unwrap();
    match extract_join(&full, 0, 1) {
        Err(ExtractJoinError::MultipleWitnesses { candidates, .. })
            if candidates == ElemSet::full(2) => {}
        other => return Err(format!("full structure: {other:?}")),
    }
    let mut valid: Vec<LMosaic> = lmosaics(LMOSAIC_BOUND);
    for s in semilattices(6) {
        valid.push(nakano(&s).unwrap());
    }
    for (i, m) in valid.iter().enumerate() {
        for x in 0..m.size() {
            let j = extract_join(m, x, x).map_err(|e| format!("#{i}: {e}"))?;
            ensure(j == x, || format!("#{i}: join({x},{x}) = {j}"))?;
        }
    }
    Ok(format!(
        "MultipleWitnesses {{0,1}}; idempotent on {} L-mosaics",
        valid.len()
    ))
}

fn lm4_ablation() -> Outcome {
    let b = Bounds::default();
    let r = ablate(2, MosaicAxiom::Lm4, &b)
        .map_err(|e| e.to_string())?
        .ok_or("no structure found")?;
    ensure(r.breaks(Property::ExtractJoinDefinedness), || {
        format!("broken list lacks join definedness: {:?}", r.broken)
    })?;
    let again = ablate(2, MosaicAxiom::Lm4, &b).unwrap();
    ensure(again.as_ref() == Some(&r), || "second run differs".into())?;
    let text = serde_json::to_string_pretty(&Some(&r)).unwrap() + "\n";
    let expected = golden("ablate_2_lm4.json")?;
    ensure(text == expected, || format!("golden mismatch:\n{text}"))?;
    let names: Vec<_> = r.broken.iter().map(|p| p.property.name()).collect();
    Ok(format!("broken {names:?}"))
}

fn assoc_scan_pinned() -> Outcome {
    let t = Instant::now();
    let w = assoc_scan(5, &Bounds::default())
        .map_err(|e| e.to_string())?
        .ok_or("scan found no witness")?;
    let e = within(t, Duration::from_secs(60))?;
    let pinned = (5, 3, (1, 1, 2));
    let left: ElemSet = [2, 4].into_iter().collect();
    let right: ElemSet = [2, 3, 4].into_iter().collect();
    ensure(
        (w.size, w.index, w.triple) == pinned && w.left == left && w.right == right,
        || format!("got {w:?}"),
    )?;
    Ok(format!(
        "size 5 #3 triple (1, 1, 2): {} != {}, {e:.2?}",
        w.left, w.right
    ))
}

fn golden(name: &str) -> Result<String, String> {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))
}

fn format_stability() -> Outcome {
    let b = Bounds::default();
    let diamond = BJoinSemilattice::diamond();
    let mut corpus: Vec<Structure> = vec![nakano(&diamond).unwrap().into(), diamond.clone().into()];
    for n in 1..=4 {
        corpus.extend(
            enumerate_bjoin(n, &b)
                .unwrap()
                .into_iter()
                .map(Structure::from),
        );
        corpus.extend(
            enumerate_lmosaic(n, &b, RhoMode::Involutions)
                .unwrap()
                .into_iter()
                .map(Structure::from),
        );
    }
    for (i, s) in corpus.iter().enumerate() {
        let text = serialize_structure(s);
        let back = parse_structure(&text).map_err(|e| format!("#{i}: {e}"))?;
        ensure(&back == s, || format!("#{i} changed:\n{text}"))?;
    }
    let dot = emit_hasse(&diamond.into()).map_err(|r| r.to_string())?;
    ensure(dot == golden("diamond.dot")?, || {
        format!("hasse mismatch:\n{dot}")
    })?;
    let edges = dot.matches("->").count();
    ensure(edges == 4, || format!("{edges} edges"))?;
    Ok(format!(
        "{} documents round-trip; diamond has {edges} covering edges",
        corpus.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "nakano images are L-mosaics, n <= 6, < 60 s",
            nakano_validity,
        ),
        (
            "extraction yields semilattices, n <= 4",
            reverse_construction,
        ),
        ("constructions are mutually inverse", mutual_inverses),
        (
            "induced order and least upper bounds, n <= 6",
            induced_order_correctness,
        ),
        ("join extraction needs a unique witness", choice_contract),
        ("dropping lm4 breaks join definedness", lm4_ablation),
        ("assoc-scan n <= 5 pinned, < 60 s", assoc_scan_pinned),
        ("document round trip and Hasse golden", format_stability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
