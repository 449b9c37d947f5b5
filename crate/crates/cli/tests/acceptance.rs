//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gradedproj_core::abelian::{smith_normal_form, FgAbelianGroup, IntegerMatrix};
use gradedproj_core::atlas::{build_atlas, closed_immersion_check, product_chart_check, ChartAtlas, RelevantFamily};
use gradedproj_core::catalog::{axiom_examples, product_of_lines, projective_line, submonoid, weighted_line};
use gradedproj_core::graded::{GradedRing, GradedRingHom};
use gradedproj_core::magic::{localization_equiv_potion, round_trip_check, PotionGen};
use gradedproj_core::module::{is_negligible_on_family, twist_generator, GradedModule, Negligibility};
use gradedproj_core::potion::PotionRing;
use gradedproj_core::sample::Sampler;
use gradedproj_core::submonoid::HomogeneousSubmonoid;
use gradedproj_core::verdict::{CheckConfig, Verdict};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Member name, generator texts, and optional `(factor, multiplicity)` lists per generator.
type MemberSpec<'a> = (&'a str, &'a [&'a str], &'a [&'a [(&'a str, u32)]]);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn snf_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    for k in 0..200 {
        let (r, c) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.random_range(-5..=5)).collect()).collect();
        let a = IntegerMatrix::from_rows(c, &rows);
        let snf = smith_normal_form(&a);
        ensure(snf.left.mul(&a).mul(&snf.right) == snf.diagonal, format!("matrix {k}: U·A·V ≠ D"))?;
        ensure(snf.diagonal.is_diagonal(), format!("matrix {k}: D not diagonal"))?;
        for u in [&snf.left, &snf.right] {
            let d = u.determinant();
            ensure(d == one || d == -&one, format!("matrix {k}: transform not unimodular"))?;
        }
        let d = snf.diagonal.diagonal();
        ensure(d.iter().all(|x| *x >= zero), format!("matrix {k}: negative diagonal entry"))?;
        for w in d.windows(2) {
            let divides = w[1] == zero || (w[0] != zero && &w[1] % &w[0] == zero);
            ensure(divides, format!("matrix {k}: {} does not divide {}", w[0], w[1]))?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("200 matrices in {:?}", start.elapsed()))
}

/// A free basis vector `e_j` is torsion modulo the span iff some integer
/// combination of the degrees lands on a positive multiple of it; searched by
/// brute force over coefficient boxes.
fn relevant_by_search(rank: usize, invariants: &[i64], degrees: &[Vec<i64>], bound: i64) -> bool {
    let k = degrees.len();
    (0..rank).all(|j| {
        let mut coeffs = vec![-bound; k];
        loop {
            let mut sum = vec![0i64; rank + invariants.len()];
            for (c, d) in coeffs.iter().zip(degrees) {
                for (s, x) in sum.iter_mut().zip(d) {
                    *s += c * x;
                }
            }
            let free_ok = (0..rank).all(|i| if i == j { sum[i] > 0 } else { sum[i] == 0 });
            let torsion_ok = invariants.iter().enumerate().all(|(t, m)| sum[rank + t].rem_euclid(*m) == 0);
            if free_ok && torsion_ok {
                return true;
            }
            let mut i = 0;
            loop {
                if i == k {
                    return false;
                }
                coeffs[i] += 1;
                if coeffs[i] <= bound {
                    break;
                }
                coeffs[i] = -bound;
                i += 1;
            }
        }
    })
}

fn relevance_oracle() -> Outcome {
    let chains: [&[i64]; 5] = [&[], &[2], &[3], &[4], &[2, 4]];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut relevant = 0;
    for k in 0..50 {
        let rank = rng.random_range(0..=2usize);
        let inv = chains[rng.random_range(0..chains.len())];
        let group = FgAbelianGroup::new(rank, inv.iter().map(|&d| BigInt::from(d)).collect()).map_err(|e| e.to_string())?;
        let n = rng.random_range(1..=3usize);
        let degrees: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..group.dimension()).map(|_| rng.random_range(-3..=3)).collect())
            .collect();
        let vars = degrees
            .iter()
            .enumerate()
            .map(|(i, d)| Ok((format!("v{i}"), group.element_i64(d)?)))
            .collect::<gradedproj_core::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        let ring = Arc::new(GradedRing::polynomial_ring(group, vars).map_err(|e| e.to_string())?);
        let s = HomogeneousSubmonoid::new(ring.clone(), (0..n).map(|i| ring.var(i)).collect()).map_err(|e| e.to_string())?;
        let expected = relevant_by_search(rank, inv, &degrees, 24);
        ensure(
            s.is_relevant() == expected,
            format!("instance {k}: rank {rank}, invariants {inv:?}, degrees {degrees:?}: got {}, oracle {expected}", s.is_relevant()),
        )?;
        relevant += expected as usize;
    }
    Ok(format!("50/50 agree ({relevant} relevant, {} not)", 50 - relevant))
}

fn potion_axioms() -> Outcome {
    for (name, _, s) in axiom_examples() {
        let r = PotionRing::new(s);
        for seed in 0..100 {
            let mut sampler = Sampler::new(seed);
            let [a, b, c] = [0, 1, 2].map(|_| sampler.potion_element(&r));
            let fail = |what: &str| format!("{name}, seed {seed}: {what}");
            let (zero, one) = (r.zero(), r.one());
            ensure(a.equals(&a), fail("reflexivity"))?;
            ensure(a.equals(&b) == b.equals(&a), fail("symmetry"))?;
            ensure(!(a.equals(&b) && b.equals(&c)) || a.equals(&c), fail("transitivity"))?;
            let rescaled = r
                .fraction(
                    a.num() * r.submonoid().element(b.witness()).map_err(|e| e.to_string())?.poly(),
                    a.witness().iter().zip(b.witness()).map(|(x, y)| x + y).collect(),
                )
                .map_err(|e| e.to_string())?;
            ensure(a.equals(&rescaled), fail("rescaled representative"))?;
            ensure((&(&a + &b) + &c).equals(&(&a + &(&b + &c))), fail("additive associativity"))?;
            ensure((&a + &b).equals(&(&b + &a)), fail("additive commutativity"))?;
            ensure((&a + &zero).equals(&a), fail("additive identity"))?;
            ensure((&a + &(-&a)).is_zero(), fail("additive inverse"))?;
            ensure((&(&a * &b) * &c).equals(&(&a * &(&b * &c))), fail("multiplicative associativity"))?;
            ensure((&a * &b).equals(&(&b * &a)), fail("multiplicative commutativity"))?;
            ensure((&a * &one).equals(&a), fail("multiplicative identity"))?;
            ensure((&a * &(&b + &c)).equals(&(&(&a * &b) + &(&a * &c))), fail("distributivity"))?;
        }
    }
    Ok("5 rings x 100 triples".into())
}

fn magic_round_trips() -> Outcome {
    let start = Instant::now();
    let config = CheckConfig::default();
    let mut notes = Vec::new();
    for (label, ring, n_expected) in [("P1", projective_line(), 1), ("P(2,3)", weighted_line(2, 3), 2)] {
        let sx = submonoid(&ring, &["x"]).map_err(|e| e.to_string())?;
        let ty = submonoid(&ring, &["y"]).map_err(|e| e.to_string())?;
        let gen = PotionGen::find(&sx, &ty).map_err(|e| e.to_string())?;
        let n = gen.entries()[0].n;
        ensure(n == n_expected, format!("{label}: n = {n}, expected {n_expected}"))?;
        let eq = localization_equiv_potion(&PotionRing::new(sx), gen).map_err(|e| e.to_string())?;
        let rep = round_trip_check(&eq, &config).map_err(|e| e.to_string())?;
        ensure(rep.samples == 20, format!("{label}: {} samples", rep.samples))?;
        ensure(
            rep.verdict == Verdict::Pass,
            format!("{label}: {} + {} round-trip failures", rep.backward_forward_failures, rep.forward_backward_failures),
        )?;
        notes.push(format!("{label} n={n}"));
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} in {:?}", notes.join(", "), start.elapsed()))
}

fn family(ring: &Arc<GradedRing>, members: &[MemberSpec]) -> Result<RelevantFamily, String> {
    let subs = members
        .iter()
        .map(|(name, gens, factors)| {
            let s = if factors.is_empty() {
                submonoid(ring, gens)
            } else {
                let specs = gens
                    .iter()
                    .zip(factors.iter())
                    .map(|(g, f)| {
                        Ok(gradedproj_core::submonoid::GeneratorSpec {
                            poly: ring.parse(g)?,
                            factors: Some(f.iter().map(|(h, k)| Ok((ring.parse(h)?, *k))).collect::<gradedproj_core::Result<_>>()?),
                        })
                    })
                    .collect::<gradedproj_core::Result<Vec<_>>>()?;
                HomogeneousSubmonoid::with_factorizations(ring.clone(), specs)
            };
            s.map(|s| (name.to_string(), s))
        })
        .collect::<gradedproj_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    RelevantFamily::new(ring.clone(), subs).map_err(|e| e.to_string())
}

fn p1_family() -> Result<RelevantFamily, String> {
    family(&projective_line(), &[("X", &["x"], &[]), ("Y", &["y"], &[])])
}

fn p1xp1_family() -> Result<RelevantFamily, String> {
    family(
        &product_of_lines(),
        &[
            ("U00", &["x0*y0"], &[&[("x0", 1), ("y0", 1)]]),
            ("U01", &["x0*y1"], &[&[("x0", 1), ("y1", 1)]]),
            ("U10", &["x1*y0"], &[&[("x1", 1), ("y0", 1)]]),
            ("U11", &["x1*y1"], &[&[("x1", 1), ("y1", 1)]]),
        ],
    )
}

fn all_pass(atlas: &ChartAtlas) -> Result<(), String> {
    for o in &atlas.overlaps {
        ensure(o.certificate.verdict == Verdict::Pass, format!("overlap ({}, {}) certificate", o.source, o.other))?;
        ensure(o.symmetry == Verdict::Pass, format!("overlap ({}, {}) symmetry", o.source, o.other))?;
    }
    for c in &atlas.charts {
        ensure(c.self_overlap == Verdict::Pass, format!("chart {} self-overlap", c.name))?;
    }
    for c in &atlas.cocycles {
        ensure(c.verdict == Verdict::Pass, format!("cocycle {:?}", c.members))?;
    }
    ensure(atlas.verdict() == Verdict::Pass, "atlas verdict")
}

fn atlas_reproduction() -> Outcome {
    let config = CheckConfig::default();
    let p1 = build_atlas(&p1_family()?, &config).map_err(|e| e.to_string())?;
    ensure(p1.charts.len() == 2, format!("P1: {} charts", p1.charts.len()))?;
    ensure(p1.overlap_classes() == 1, "P1: overlap classes")?;
    let xy = p1
        .overlaps
        .iter()
        .find(|o| (o.source, o.other) == (0, 1))
        .ok_or("P1: missing overlap")?;
    ensure(xy.transition == ["(y)/(x)"], format!("P1: transition {:?}", xy.transition))?;
    all_pass(&p1)?;

    let pp = build_atlas(&p1xp1_family()?, &config).map_err(|e| e.to_string())?;
    ensure(pp.charts.len() == 4, "P1xP1: chart count")?;
    ensure(pp.overlap_classes() == 6, "P1xP1: overlap classes")?;
    ensure(pp.overlaps.len() == 12, "P1xP1: ordered overlaps")?;
    ensure(pp.cocycles.len() == 4, "P1xP1: cocycle triples")?;
    all_pass(&pp)?;

    let line = |v: [&str; 2]| {
        let g = FgAbelianGroup::free(1);
        let vars = v.iter().map(|n| (n.to_string(), g.element_i64(&[1]).unwrap())).collect();
        Arc::new(GradedRing::polynomial_ring(g, vars).unwrap())
    };
    let (a, b) = (line(["x0", "x1"]), line(["y0", "y1"]));
    let s = submonoid(&a, &["x0"]).map_err(|e| e.to_string())?;
    let t = submonoid(&b, &["y0"]).map_err(|e| e.to_string())?;
    let product = product_chart_check(&s, &t, &config).map_err(|e| e.to_string())?;
    ensure(product.verdict == Verdict::Pass, format!("product chart: {}/{}", product.decomposed, product.samples))?;
    Ok(format!(
        "P1: 2 charts, y/x; P1xP1: 4 charts, 6 overlap classes, 4 cocycles; product {}/{}",
        product.decomposed, product.samples
    ))
}

fn closed_immersion() -> Outcome {
    let config = CheckConfig {
        degree_bound: 12,
        ..CheckConfig::default()
    };
    let a = projective_line();
    let b = Arc::new(a.quotient(vec![a.parse("y").map_err(|e| e.to_string())?]).map_err(|e| e.to_string())?);
    let hom = GradedRingHom::new(a.clone(), b.clone(), vec![b.var(0), b.var(1)]).map_err(|e| e.to_string())?;
    let fam = p1_family()?;
    let mut lifted = 0;
    for (name, s) in fam.names().iter().zip(fam.members()) {
        let rep = closed_immersion_check(&hom, s, &config).map_err(|e| e.to_string())?;
        ensure(rep.label() == "surjective", format!("chart {name}: {}", rep.label()))?;
        ensure(rep.lifts.iter().all(|l| l.lift.is_some()), format!("chart {name}: missing lift"))?;
        lifted += rep.lifts.len();
    }
    Ok(format!("both charts surjective, {lifted} lifts within degree 12"))
}

fn twists() -> Outcome {
    let config = CheckConfig::default();
    let mut notes = Vec::new();
    for (label, ring, gens, unit) in [
        ("P1 <x>", projective_line(), &["x"][..], "(x)/(1)"),
        ("P(2,3) <x,y>", weighted_line(2, 3), &["x", "y"][..], "(y)/(x)"),
    ] {
        let r = PotionRing::new(submonoid(&ring, gens).map_err(|e| e.to_string())?);
        let alpha = ring.group().element_i64(&[1]).map_err(|e| e.to_string())?;
        let u = twist_generator(&r, &alpha, &config).map_err(|e| e.to_string())?;
        let text = u.unit.to_text(&r);
        ensure(text == unit, format!("{label}: u = {text}, expected {unit}"))?;
        ensure(u.inverse_verified, format!("{label}: inverse not verified"))?;
        ensure(u.verdict() == Verdict::Pass, format!("{label}: bijection {}", u.bijection))?;
        notes.push(format!("{label}: u = {text}"));
    }
    Ok(notes.join("; "))
}

fn negligibility() -> Outcome {
    let ring = projective_line();
    let fam = p1_family()?;
    let q = GradedModule::cyclic(ring.clone(), vec![ring.var(0), ring.var(1)]).map_err(|e| e.to_string())?;
    let rep = is_negligible_on_family(&q, &fam).map_err(|e| e.to_string())?;
    ensure(rep.result == Negligibility::Negligible, format!("A/(x,y): {}", rep.result.as_str()))?;
    let a = GradedModule::free(ring.clone(), vec![ring.group().zero()]);
    let rep = is_negligible_on_family(&a, &fam).map_err(|e| e.to_string())?;
    ensure(rep.result == Negligibility::NotNegligible, format!("A: {}", rep.result.as_str()))?;
    Ok("A/(x,y) negligible, A not negligible".into())
}

fn zero_times_one() -> Outcome {
    let mut rings: Vec<(String, Arc<PotionRing>)> = axiom_examples()
        .into_iter()
        .map(|(name, _, s)| (name.to_string(), PotionRing::new(s)))
        .collect();
    let config = CheckConfig::default();
    for fam in [p1_family()?, p1xp1_family()?] {
        let atlas = build_atlas(&fam, &config).map_err(|e| e.to_string())?;
        for c in atlas.charts {
            rings.push((c.name.clone(), c.potion.clone()));
        }
        let m = fam.members();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let st = m[i].product(&m[j]).map_err(|e| e.to_string())?;
                rings.push((format!("{}{}", fam.names()[i], fam.names()[j]), PotionRing::new(st)));
            }
        }
    }
    let weighted = weighted_line(2, 3);
    rings.push(("<x,y> on P(2,3)".into(), PotionRing::new(submonoid(&weighted, &["x", "y"]).map_err(|e| e.to_string())?)));
    for (name, r) in &rings {
        ensure((&r.zero() * &r.one()).equals(&r.zero()), format!("{name}: 0 x 1 != 0"))?;
    }
    Ok(format!("{} potion rings", rings.len()))
}

/// (input, command) pairs with stored golden reports.
fn corpus_cases(dir: &Path) -> Vec<(String, String)> {
    let mut cases: Vec<(String, String)> = std::fs::read_dir(dir.join("golden"))
        .map(|d| {
            d.filter_map(|e| e.ok())
                .filter_map(|e| {
                    let name = e.file_name().into_string().ok()?;
                    let stem = name.strip_suffix(".json")?;
                    let (input, command) = stem.split_once('.')?;
                    Some((input.to_string(), command.to_string()))
                })
                .collect()
        })
        .unwrap_or_default();
    cases.sort();
    cases
}

fn run_binary(dir: &Path, input: &str, command: &str, report: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_gradedproj"))
        .arg(command)
        .arg("--input")
        .arg(dir.join(format!("{input}.json")))
        .arg("--report")
        .arg(report)
        .arg("--quiet")
        .env_remove("GRADEDPROJ_SEED")
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code().is_some_and(|c| c < 3), format!("{input} {command}: exit {status}"))?;
    std::fs::read(report).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let cases = corpus_cases(&dir);
    ensure(!cases.is_empty(), "no golden reports found")?;
    let scratch = std::env::temp_dir().join(format!("gradedproj-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).map_err(|e| e.to_string())?;
    let result = (|| {
        for (input, command) in &cases {
            let first = run_binary(&dir, input, command, &scratch.join("first.json"))?;
            let second = run_binary(&dir, input, command, &scratch.join("second.json"))?;
            ensure(first == second, format!("{input} {command}: runs differ"))?;
            let golden = std::fs::read(dir.join("golden").join(format!("{input}.{command}.json"))).map_err(|e| e.to_string())?;
            ensure(first == golden, format!("{input} {command}: differs from golden"))?;
        }
        Ok(format!("{} reports byte-identical across two runs and to goldens", cases.len()))
    })();
    let _ = std::fs::remove_dir_all(&scratch);
    result
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("smith normal form suite", snf_suite),
        ("relevance agrees with brute-force oracle", relevance_oracle),
        ("potion ring axioms", potion_axioms),
        ("localization round trips", magic_round_trips),
        ("atlas reproduction", atlas_reproduction),
        ("closed-immersion lifts", closed_immersion),
        ("twist invertibility", twists),
        ("negligibility", negligibility),
        ("0 x 1 = 0 in every potion ring", zero_times_one),
        ("deterministic corpus reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
