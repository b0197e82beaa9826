use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use semicrossed::poly::rat;
use semicrossed::report::{analyze, to_json, ActionSpec};
use semicrossed::{
    closed_form_pattern, codim_invariant, distinguish, equal_to_degree, generated_pattern, generators,
    probe_generating_set, rank_oracle, stratum_support, verify_identification, GeneratorSet, MonomialKey, Pattern,
    Permutation, Rational, Stratum, Verdict, Z2Action,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_perm(rng: &mut StdRng, k: usize) -> Permutation {
    let mut v: Vec<usize> = (0..k).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

fn random_nonzero(rng: &mut StdRng) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-12..=12);
        if num != 0 {
            return rat(num, rng.gen_range(1..=9));
        }
    }
}

fn example_action() -> Z2Action {
    Z2Action::new(
        Permutation::parse_cycles("(0 1 2)(3 4 5)", 6).unwrap(),
        Permutation::parse_cycles("(0 3)(1 4)(2 5)", 6).unwrap(),
    )
    .unwrap()
}

fn spec_path() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/specs/perpendicular6.json"))
}

fn diagonal_shift_identification() -> Outcome {
    for k in 1..=5 {
        let g = generated_pattern(&generators(&Z2Action::diagonal_shift(k)), 8);
        let target = Pattern::bk2(k, 8);
        ensure(g.keys() == target.keys(), || format!("k={k}: {:?}", equal_to_degree(&g, &target, 8)))?;
    }
    Ok("k = 1..5 at N = 8".into())
}

fn bidisk_base_case() -> Outcome {
    let g = generated_pattern(&generators(&Z2Action::trivial(1)), 8);
    let brute: BTreeSet<MonomialKey> =
        (0..=8).flat_map(|m| (0..=8 - m).map(move |n| MonomialKey::new(0, 0, m, n))).collect();
    ensure(g.keys() == &brute, || format!("{} keys", g.len()))?;
    ensure(g.keys() == Pattern::bidisk(8).keys(), || "differs from bidisk constructor".into())?;
    Ok(format!("{} keys", g.len()))
}

fn perpendicular_example() -> Outcome {
    let a = example_action();
    let d = a.perp_decompose().map_err(|e| e.to_string())?;
    ensure(d.factor_sizes() == (3, 2), || format!("factors {:?}", d.factor_sizes()))?;
    d.verify(&a)?;
    ensure(d.h(0) == (0, 0) && d.h(4) == (1, 3), || format!("h(0)={:?}, h(4)={:?}", d.h(0), d.h(4)))?;
    ensure([d.h(3), d.h(5)] == [(0, 3), (2, 3)], || format!("h(3)={:?}, h(5)={:?}", d.h(3), d.h(5)))?;
    Ok("factors (3,2), h intertwines both generators".into())
}

fn product_identification() -> Outcome {
    let mut checked = 0;
    for k in 1..=6 {
        for a in Z2Action::all_commuting(k) {
            let Ok(d) = a.perp_decompose() else { continue };
            let (k1, k2) = d.factor_sizes();
            let cmp = verify_identification(&a, &Pattern::tensor(k1, k2, 8), 8, Some(&d.tensor_relabeling()))
                .map_err(|e| e.to_string())?;
            ensure(cmp.is_equal(), || format!("{a:?}: {cmp:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} perpendicular pairs"))
}

fn closed_form_oracle() -> Outcome {
    let mut checked = 0;
    for k in 1..=5 {
        for a in Z2Action::canonical_commuting(k) {
            let g = generated_pattern(&generators(&a), 6);
            let c = closed_form_pattern(&a, 6);
            ensure(g.keys() == c.keys(), || format!("{a:?}: {:?}", equal_to_degree(&g, &c, 6)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} canonical pairs"))
}

fn codimension_invariants() -> Outcome {
    for p in 2..=6 {
        let inv = codim_invariant(&Pattern::bk2(p, 8)).map_err(|e| e.to_string())?;
        ensure(inv.distinct == BTreeSet::from([1, p * p]), || format!("B_{{{p},2}}: {:?}", inv.distinct))?;
    }
    let tensors = [(2, 2), (2, 3), (3, 2), (3, 3)];
    for (k, l) in tensors {
        let inv = codim_invariant(&Pattern::tensor(k, l, 8)).map_err(|e| e.to_string())?;
        let expected = BTreeSet::from([1, k * k, l * l, k * k * l * l]);
        ensure(inv.distinct == expected, || format!("tensor({k},{l}): {:?}", inv.distinct))?;
        let d = distinguish(&Pattern::bk2(k * l, 8), &Pattern::tensor(k, l, 8)).map_err(|e| e.to_string())?;
        ensure(d.verdict == Verdict::Distinguished, || format!("B_{{{},2}} vs tensor({k},{l})", k * l))?;
    }
    Ok("5 B_{p,2}, 4 tensors, 4 distinguished pairs".into())
}

fn rank_oracle_concordance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut pool: Vec<Pattern> = (1..=5).map(|k| Pattern::bk2(k, 8)).collect();
    pool.push(Pattern::bidisk(8));
    for (k, l) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        pool.push(Pattern::tensor(k, l, 8));
    }
    pool.push(generated_pattern(&generators(&example_action()), 8));
    for k in 2..=5 {
        for a in Z2Action::canonical_commuting(k) {
            pool.push(closed_form_pattern(&a, 6));
        }
    }
    let chosen: Vec<&Pattern> = pool.choose_multiple(&mut rng, 20).collect();
    for p in &chosen {
        for s in Stratum::ALL {
            for _ in 0..3 {
                let (lambda, mu) = match s {
                    Stratum::Origin => (Rational::zero(), Rational::zero()),
                    Stratum::ZOnly => (random_nonzero(&mut rng), Rational::zero()),
                    Stratum::WOnly => (Rational::zero(), random_nonzero(&mut rng)),
                    Stratum::Generic => (random_nonzero(&mut rng), random_nonzero(&mut rng)),
                };
                let rank = rank_oracle(p, &lambda, &mu);
                let support = stratum_support(p, s).len();
                ensure(rank == support, || format!("{} at ({lambda}, {mu}): rank {rank}, support {support}", p.tag().name()))?;
            }
        }
    }
    Ok(format!("{} patterns x 4 strata x 3 points", chosen.len()))
}

fn conjugacy_invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    for _ in 0..10 {
        let k = rng.gen_range(1..=6);
        let a = Z2Action::all_commuting(k).choose(&mut rng).unwrap().clone();
        let base = codim_invariant(&generated_pattern(&generators(&a), 8)).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let pi = random_perm(&mut rng, k);
            let b = a.conjugate_by(&pi);
            let inv = codim_invariant(&generated_pattern(&generators(&b), 8)).map_err(|e| e.to_string())?;
            ensure(inv == base, || format!("{a:?} conjugated by {pi}"))?;
        }
    }
    Ok("10 pairs x 100 relabelings".into())
}

fn root_of_unity_invariance() -> Outcome {
    for k in 2..=4 {
        let p = Pattern::akd2(k, 8);
        ensure(!p.is_empty(), || format!("A_{k}(D^2) empty"))?;
        if let Some(bad) = p.keys().iter().find(|x| (x.m + x.n) % k != 0) {
            return Err(format!("A_{k}(D^2) key {bad:?}"));
        }
    }
    for (k, l) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let p = Pattern::tensor(k, l, 8);
        if let Some(bad) = p.keys().iter().find(|x| x.i == x.j && (x.m % k != 0 || x.n % l != 0)) {
            return Err(format!("tensor({k},{l}) diagonal key {bad:?}"));
        }
    }
    Ok("A_k(D^2) for k = 2..4, tensor diagonals".into())
}

fn generating_set_probe() -> Outcome {
    let target = Pattern::tensor(3, 2, 8);
    let product = probe_generating_set(&GeneratorSet::product_shift(3, 2), &target, 8).map_err(|e| e.to_string())?;
    ensure(product.is_equal(), || format!("two-generator set: {product:?}"))?;
    let mixed = probe_generating_set(&GeneratorSet::mixed_shift(3, 2), &target, 8).map_err(|e| e.to_string())?;
    let witness = mixed.witness().ok_or_else(|| "single generator reading unexpectedly generates".to_string())?;
    Ok(format!("two generators suffice; single generator misses {:?}", witness.to_array()))
}

fn cli_determinism() -> Outcome {
    let runs: Vec<Vec<u8>> = (0..5)
        .map(|_| {
            let out = Command::new(env!("CARGO_BIN_EXE_semicrossed"))
                .arg("analyze")
                .arg(spec_path())
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
            Ok(out.stdout)
        })
        .collect::<Result<_, String>>()?;
    ensure(runs.windows(2).all(|w| w[0] == w[1]), || "outputs differ between runs".into())?;
    let spec = ActionSpec::load(spec_path()).map_err(|e| e.to_string())?;
    let expected = to_json(&analyze(&spec.action().map_err(|e| e.to_string())?, spec.degree_or(None), false));
    ensure(runs[0] == expected.as_bytes(), || "binary output differs from library report".into())?;
    let report: serde_json::Value = serde_json::from_slice(&runs[0]).map_err(|e| e.to_string())?;
    ensure(report["classification"]["perpendicular"] == true, || "not flagged perpendicular".into())?;
    ensure(report["invariant"]["distinct"] == serde_json::json!([1, 4, 9, 36]), || {
        format!("distinct set {}", report["invariant"]["distinct"])
    })?;
    Ok(format!("5 identical runs, {} bytes", runs[0].len()))
}

struct Criterion {
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let criteria = [
        Criterion { title: "diagonal shift generates B_{k,2}", budget: ms(1_000), run: diagonal_shift_identification },
        Criterion { title: "one point generates the bidisk pattern", budget: ms(10), run: bidisk_base_case },
        Criterion { title: "six-point action decomposes as 3 x 2", budget: ms(10), run: perpendicular_example },
        Criterion { title: "perpendicular pairs give tensor patterns", budget: ms(5_000), run: product_identification },
        Criterion { title: "closed form matches fixpoint closure", budget: ms(60_000), run: closed_form_oracle },
        Criterion { title: "codimension sets and distinctions", budget: ms(5_000), run: codimension_invariants },
        Criterion { title: "rank oracle matches support counts", budget: ms(30_000), run: rank_oracle_concordance },
        Criterion { title: "invariant unchanged under relabeling", budget: ms(30_000), run: conjugacy_invariance },
        Criterion { title: "root-of-unity exponent congruences", budget: ms(1_000), run: root_of_unity_invariance },
        Criterion { title: "generating-set probe", budget: ms(1_000), run: generating_set_probe },
        Criterion { title: "analyze output is byte-stable", budget: ms(1_000), run: cli_determinism },
    ];
    let mut failures = 0;
    for (n, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; over budget {:?}", c.budget)),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag}  {}  [{:.1?}] {detail}", n + 1, c.title, elapsed);
        failures += usize::from(outcome.is_err());
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
