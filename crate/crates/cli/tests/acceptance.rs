//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre::ideal::{mode_ideal, render, segre_ideal, RenderFormat, SymbolicGenerator};
use segre::linalg::haar_unitary;
use segre::measures::{concurrence_bipartite, measure_multipartite, three_qubit_explicit};
use segre::minors::{all_minors, on_segre_variety};
use segre::separability::{analyze, PartitionSpec};
use segre::tensor::{make_state, mode_purity, named_state, random_state, NamedState, NormPolicy, RandomKind};
use segre::{MeasureConfig, PureStateTensor, Shape, C64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SHAPES: [&[usize]; 6] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 2, 3], &[2, 2, 2, 2]];

fn shape(d: &[usize]) -> Shape {
    Shape::new(d.to_vec()).unwrap()
}

fn haar(d: &[usize], seed: u64) -> PureStateTensor {
    random_state(&shape(d), &RandomKind::Haar, seed).unwrap()
}

fn full_product(d: &[usize], seed: u64) -> PureStateTensor {
    let blocks = (1..=d.len()).map(|j| vec![j]).collect();
    random_state(&shape(d), &RandomKind::ProductHaar(blocks), seed).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg() -> MeasureConfig {
    MeasureConfig::default()
}

fn ac1_two_qubit_concurrence() -> Outcome {
    let start = Instant::now();
    let bell = concurrence_bipartite(&named_state(&NamedState::Bell(1)).unwrap(), &cfg()).unwrap().value;
    let mut worst = (bell - 1.0).abs();
    for p in [0.1f64, 0.25, 0.5] {
        let amps = vec![C64::new(p.sqrt(), 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new((1.0 - p).sqrt(), 0.0)];
        let s = make_state(shape(&[2, 2]), amps, NormPolicy::RequireNormalized).unwrap();
        let c = concurrence_bipartite(&s, &cfg()).unwrap().value;
        worst = worst.max((c - 2.0 * (p * (1.0 - p)).sqrt()).abs());
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-12, || format!("max error {worst:e} > 1e-12"))?;
    ensure(elapsed < Duration::from_millis(1), || format!("took {elapsed:?}, limit 1 ms"))?;
    Ok(format!("Bell = {bell:.12}, max error {worst:.1e}, {elapsed:?}"))
}

fn ac2_three_qubit_goldens() -> Outcome {
    let ghz = named_state(&NamedState::Ghz(3)).unwrap();
    let w = named_state(&NamedState::W(3)).unwrap();
    for (name, f) in [
        ("measure_multipartite", measure_multipartite as fn(&PureStateTensor, &MeasureConfig) -> segre::Result<_>),
        ("three_qubit_explicit", three_qubit_explicit),
    ] {
        let g = f(&ghz, &cfg()).unwrap().value;
        let v = f(&w, &cfg()).unwrap().value;
        ensure((g - 3f64.sqrt()).abs() <= 1e-12, || format!("{name}: GHZ(3) = {g}"))?;
        ensure((v - (8.0f64 / 3.0).sqrt()).abs() <= 1e-12, || format!("{name}: W(3) = {v}"))?;
    }
    let mut worst = 0.0f64;
    for seed in 0..500 {
        let s = haar(&[2, 2, 2], seed);
        let a = measure_multipartite(&s, &cfg()).unwrap().value;
        let b = three_qubit_explicit(&s, &cfg()).unwrap().value;
        worst = worst.max((a - b).abs() / a.max(b));
    }
    ensure(worst <= 1e-12, || format!("routes disagree by {worst:e} relative"))?;
    Ok(format!("GHZ(3) = sqrt(3), W(3) = sqrt(8/3) on both routes; 500 Haar max rel diff {worst:.1e}"))
}

fn ac3_purity_identity() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for dims in SHAPES {
        for seed in 0..1000 {
            let s = haar(dims, seed);
            let e = measure_multipartite(&s, &cfg()).unwrap().value;
            let want: f64 = (1..=dims.len()).map(|j| 2.0 * (1.0 - mode_purity(&s, j).unwrap())).sum();
            worst = worst.max((e * e - want).abs());
        }
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-10, || format!("max deviation {worst:e} > 1e-10"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}, limit 10 s"))?;
    Ok(format!("6000 states, max |E^2 - sum 2(1-Tr rho^2)| = {worst:.1e}, {elapsed:?}"))
}

fn ac4_segre_equivalence() -> Outcome {
    let mut checked = 0;
    for dims in SHAPES {
        let scale = (cfg().norm_const * dims.len() as f64).sqrt();
        for seed in 0..500 {
            for (kind, s) in [("haar", haar(dims, seed)), ("product", full_product(dims, seed))] {
                let segre = on_segre_variety(&s, 1e-9).unwrap().on_variety;
                let r = analyze(&s, 1e-9, &cfg()).unwrap();
                let small_e = r.measure_e.value < 1e-9 * scale;
                ensure(segre == r.fully_separable && segre == small_e && r.consistency_error.is_none(), || {
                    format!("{dims:?} {kind} seed {seed}: segre {segre}, separable {}, E {}", r.fully_separable, r.measure_e.value)
                })?;
                ensure(segre == (kind == "product"), || format!("{dims:?} {kind} seed {seed}: unexpected verdict {segre}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} states, zero disagreements"))
}

fn ac5_local_unitary_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for dims in [&[2, 2][..], &[2, 2, 2], &[2, 2, 2, 2]] {
        for seed in 0..100 {
            let s = haar(dims, seed);
            let e = measure_multipartite(&s, &cfg()).unwrap().value;
            let c = (dims.len() == 2).then(|| concurrence_bipartite(&s, &cfg()).unwrap().value);
            for _ in 0..10 {
                let mut t = s.clone();
                for j in 1..=dims.len() {
                    t = t.apply_local(j, &haar_unitary(dims[j - 1], &mut rng)).unwrap();
                }
                worst = worst.max((measure_multipartite(&t, &cfg()).unwrap().value - e).abs());
                if let Some(c) = c {
                    worst = worst.max((concurrence_bipartite(&t, &cfg()).unwrap().value - c).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-9, || format!("max change {worst:e} > 1e-9"))?;
    Ok(format!("3000 local-unitary images, max change {worst:.1e}"))
}

fn ac6_biseparability_gap() -> Outcome {
    let bell = named_state(&NamedState::Bell(1)).unwrap();
    let amps: Vec<C64> = bell.amps().iter().flat_map(|a| bell.amps().iter().map(move |b| a * b)).collect();
    let pair = make_state(shape(&[2, 2, 2, 2]), amps, NormPolicy::RequireNormalized).unwrap();
    let r = analyze(&pair, 1e-9, &cfg()).unwrap();
    let cuts: Vec<String> = r.factorable_cuts().map(|c| c.partition.to_string()).collect();
    ensure(r.per_bipartition.len() == 7, || format!("{} bipartitions", r.per_bipartition.len()))?;
    ensure(r.measure_e.value > 0.5, || format!("E = {}", r.measure_e.value))?;
    ensure(cuts == ["{1,2}|{3,4}"], || format!("factorable cuts {cuts:?}"))?;
    ensure(r.factorable_cuts().next().unwrap().partition == PartitionSpec::new(&[3, 4], 4).unwrap(), || "cut identity".into())?;
    ensure(!r.fully_separable, || "reported fully separable".into())?;
    let ghz = analyze(&named_state(&NamedState::Ghz(4)).unwrap(), 1e-9, &cfg()).unwrap();
    ensure(ghz.factorable_cuts().count() == 0, || "GHZ(4) has a factorable cut".into())?;
    Ok(format!("Phi+ (x) Phi+: E = {:.6}, factorable {:?}; GHZ(4): none", r.measure_e.value, cuts))
}

fn parse_gen(s: &str) -> SymbolicGenerator {
    let idx = |t: &str| t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect::<Vec<_>>();
    let (p, n) = s.split_once('-').unwrap();
    let (p0, p1) = p.split_once('*').unwrap();
    let (n0, n1) = n.split_once('*').unwrap();
    SymbolicGenerator::new(idx(p0), idx(p1), idx(n0), idx(n1)).unwrap()
}

fn ac7_ideal_goldens() -> Outcome {
    let lists: [[&str; 6]; 3] = [
        ["111*212-112*211", "111*221-121*211", "111*222-122*211", "112*221-121*212", "112*222-122*212", "121*222-122*221"],
        ["111*122-112*121", "111*221-211*121", "111*222-212*121", "112*221-211*122", "112*222-122*212", "211*222-212*221"],
        ["111*122-121*112", "111*212-211*112", "111*222-221*112", "121*212-211*122", "121*222-221*122", "211*222-221*212"],
    ];
    let s = shape(&[2, 2, 2]);
    let mut union = BTreeSet::new();
    for (j, list) in lists.iter().enumerate() {
        let ours: BTreeSet<_> = mode_ideal(&s, j + 1).unwrap().gens.into_iter().collect();
        let theirs: BTreeSet<_> = list.iter().map(|g| parse_gen(g)).collect();
        ensure(ours == theirs, || format!("mode {} generators differ", j + 1))?;
        union.extend(theirs);
    }
    let segre: BTreeSet<_> = segre_ideal(&s).unwrap().gens.into_iter().collect();
    ensure(segre.len() == 12, || format!("Segre ideal has {} generators", segre.len()))?;
    ensure(segre == union, || "Segre ideal is not the union of the mode ideals".into())?;
    let quadric = render(&mode_ideal(&shape(&[2, 2]), 1).unwrap(), RenderFormat::PlainText);
    ensure(quadric.trim_end() == "a_{1,1}*a_{2,2} - a_{1,2}*a_{2,1}", || format!("two-qubit ideal: {quadric}"))?;
    Ok("three mode ideals match as sets, Segre ideal has 12 generators, two-qubit quadric".into())
}

fn ac8_minor_counts() -> Outcome {
    fn c2(n: usize) -> usize {
        n * (n - 1) / 2
    }
    let mut counts = Vec::new();
    for dims in SHAPES.iter().copied().chain([&[2, 3, 2][..]]) {
        let total: usize = dims.iter().product();
        let want: usize = dims.iter().map(|&n| c2(n) * c2(total / n)).sum();
        let got = all_minors(&haar(dims, 0)).unwrap().len();
        ensure(got == want, || format!("{dims:?}: {got} minors, formula {want}"))?;
        counts.push(got);
    }
    ensure(counts[5] == 112, || format!("(2,2,2,2) gave {}", counts[5]))?;
    Ok(format!("counts {counts:?}"))
}

fn segre_bin(args: &[&str], cwd: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_segre")).args(args).current_dir(cwd).output().expect("run segre")
}

fn ac9_cli_end_to_end() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let fixtures: [(&[&str], i32); 8] = [
        (&["gen", "bell", "1", "--out", "bell.json"], 1),
        (&["gen", "ghz", "3", "--out", "ghz3.json"], 1),
        (&["gen", "w", "3", "--out", "w3.json"], 1),
        (&["gen", "ghz", "4", "--out", "ghz4.json"], 1),
        (&["gen", "product", "2,2,2", "--seed", "7", "--out", "prod.json"], 0),
        (&["gen", "product", "2,3,2", "--seed", "1", "--out", "prod232.json"], 0),
        (&["gen", "haar", "2,2,2,2", "--seed", "3", "--out", "haar.json"], 1),
        (&["gen", "blocks", "2,2,2,2", "--blocks", "1,2;3,4", "--seed", "5", "--out", "blocks.json"], 1),
    ];
    for (args, want) in fixtures {
        let g = segre_bin(args, d);
        ensure(g.status.code() == Some(0), || format!("{args:?} failed: {}", String::from_utf8_lossy(&g.stderr)))?;
        let file = args[args.len() - 1];
        let a = segre_bin(&["analyze", file], d);
        ensure(a.status.code() == Some(want), || format!("analyze {file}: exit {:?}, want {want}", a.status.code()))?;
    }
    std::fs::write(d.join("bad.json"), "{\"dims\": [2, 2], \"amps\": [[1, 0]").unwrap();
    std::fs::write(d.join("unnorm.json"), "{\"dims\": [2, 2], \"amps\": [[1,0],[0,0],[0,0],[1,0]]}").unwrap();
    for (file, extra, want) in [("bad.json", None, 2), ("unnorm.json", None, 2), ("unnorm.json", Some("--normalize"), 1), ("missing.json", None, 2)] {
        let mut args = vec!["analyze", file];
        args.extend(extra);
        let a = segre_bin(&args, d);
        ensure(a.status.code() == Some(want), || format!("analyze {args:?}: exit {:?}, want {want}", a.status.code()))?;
    }
    let first = segre_bin(&["analyze", "ghz4.json", "--json"], d);
    let second = segre_bin(&["analyze", "ghz4.json", "--json"], d);
    ensure(first.stdout == second.stdout, || "JSON output differs between runs".into())?;
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| format!("invalid JSON: {e}"))?;
    ensure(doc["per_bipartition"].as_array().map(Vec::len) == Some(7), || "JSON report lacks 7 cuts".into())?;
    let golden = include_str!("golden/ghz4_report.json");
    ensure(String::from_utf8_lossy(&first.stdout) == golden, || "JSON report differs from golden file".into())?;
    Ok("exit codes 0/1/2 on 12 files, JSON stable and matches golden".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 two-qubit concurrence goldens", ac1_two_qubit_concurrence),
        ("AC2 three-qubit goldens, two routes", ac2_three_qubit_goldens),
        ("AC3 purity identity", ac3_purity_identity),
        ("AC4 Segre equivalence", ac4_segre_equivalence),
        ("AC5 local-unitary invariance", ac5_local_unitary_invariance),
        ("AC6 biseparability gap exhibit", ac6_biseparability_gap),
        ("AC7 ideal golden sets", ac7_ideal_goldens),
        ("AC8 minor counts", ac8_minor_counts),
        ("AC9 CLI end-to-end", ac9_cli_end_to_end),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("PASS  {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL  {name}: panicked");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
