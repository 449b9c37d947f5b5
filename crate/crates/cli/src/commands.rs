use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use gradedproj_core::atlas::{build_atlas, closed_immersion_check, functoriality_map, product_chart_check};
use gradedproj_core::graded::GradedRing;
use gradedproj_core::magic::{
    localization_equiv_potion, open_immersion_certificate, round_trip_check, sum_cover_check, PotionGen,
};
use gradedproj_core::module::{is_negligible_on_family, twist_generator, Negligibility};
use gradedproj_core::potion::{PotionMorphism, PotionRing};
use gradedproj_core::submonoid::{BarSubmonoid, HomogeneousSubmonoid};
use gradedproj_core::verdict::{CheckConfig, Verdict, DEFAULT_DEGREE_BOUND};
use gradedproj_core::sample::{DEFAULT_SAMPLES, DEFAULT_SEED};
use serde_json::{json, Value};

use crate::report::{digest, Report};
use crate::schema::{parse, Document, Problem};
use crate::{Command, InputError};

/// Flag values; `None` falls back to the document, then to the defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub degree_bound: Option<u32>,
    pub timings: bool,
}

pub struct Outcome {
    pub report: Report,
    /// Human-readable summary lines.
    pub lines: Vec<String>,
    pub verdict: Verdict,
}

struct Partial {
    verdict: Verdict,
    results: Value,
    lines: Vec<String>,
    warnings: Vec<String>,
}

fn core_err(path: &str) -> impl Fn(gradedproj_core::Error) -> InputError + '_ {
    move |e| InputError::Semantic {
        path: path.to_string(),
        message: e.to_string(),
    }
}

fn missing(path: &str) -> InputError {
    InputError::Semantic {
        path: path.to_string(),
        message: "required for this command".into(),
    }
}

pub fn run(command: Command, input: &str, opts: RunOptions) -> Result<Outcome, InputError> {
    let started = Instant::now();
    let problem = Document::from_json(input)?.validate()?;
    let config = CheckConfig {
        seed: opts.seed.or(problem.checks.seed).unwrap_or(DEFAULT_SEED),
        samples: opts.samples.or(problem.checks.samples).unwrap_or(DEFAULT_SAMPLES),
        degree_bound: opts
            .degree_bound
            .or(problem.checks.degree_bound)
            .unwrap_or(DEFAULT_DEGREE_BOUND),
    };
    let partial = match command {
        Command::CheckRelevance => check_relevance(&problem)?,
        Command::PotionEq => potion_eq(&problem)?,
        Command::Magic2 => magic2(&problem, &config)?,
        Command::Magic4 => magic4(&problem, &config)?,
        Command::Atlas => atlas(&problem, &config)?,
        Command::Functorial => functorial(&problem, &config)?,
        Command::ClosedImmersion => closed_immersion(&problem, &config)?,
        Command::ProductCheck => product(&problem, &config)?,
        Command::Twist => twist(&problem, &config)?,
        Command::Negligible => negligible(&problem)?,
    };
    let mut lines = vec![format!("gradedproj {}", command.name())];
    lines.extend(partial.lines);
    lines.extend(partial.warnings.iter().map(|w| format!("warning: {w}")));
    lines.push(format!("verdict: {}", partial.verdict));
    let timings_ms = opts.timings.then(|| {
        let mut t = BTreeMap::new();
        t.insert("total".to_string(), started.elapsed().as_millis());
        t
    });
    Ok(Outcome {
        report: Report {
            command: command.name().to_string(),
            input_digest: digest(input.as_bytes()),
            seed: config.seed,
            samples: config.samples,
            degree_bound: config.degree_bound,
            verdict: partial.verdict.as_str().to_string(),
            results: partial.results,
            warnings: partial.warnings,
            timings_ms,
        },
        lines,
        verdict: partial.verdict,
    })
}

fn gens_text(s: &HomogeneousSubmonoid) -> Vec<String> {
    s.generators().iter().map(|g| s.ring().display(g.poly())).collect()
}

fn bar_text(bar: &BarSubmonoid, exps: &[u32]) -> String {
    let ring = bar.base().ring();
    bar.element(exps)
        .map(|e| ring.display(e.poly()))
        .unwrap_or_else(|_| "?".into())
}

fn push_unique(warnings: &mut Vec<String>, new: &[String]) {
    for w in new {
        if !warnings.contains(w) {
            warnings.push(w.clone());
        }
    }
}

fn check_relevance(p: &Problem) -> Result<Partial, InputError> {
    let names = p.checks.relevance.clone().unwrap_or_else(|| p.submonoid_order.clone());
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut warnings = Vec::new();
    let mut verdict = Verdict::Pass;
    for (i, name) in names.iter().enumerate() {
        let s = p.submonoid(name, &format!("checks.relevance[{i}]"))?;
        let bar = s.bar();
        let q = p.ring.group().quotient_invariants(&bar.deg_group());
        let relevant = s.is_relevant();
        let maximal = s.is_maximally_relevant();
        verdict = verdict.and(Verdict::from_bool(relevant));
        push_unique(&mut warnings, s.warnings());
        let status = match (relevant, maximal) {
            (true, true) => "relevant, maximally relevant",
            (true, false) => "relevant, not maximally relevant",
            _ => "not relevant",
        };
        lines.push(format!("{name} = {}: {status} (with declared factorizations)", s.describe()));
        results.push(json!({
            "name": name,
            "generators": gens_text(s),
            "divisor_generators": bar.divisor_generators().iter().map(|g| p.ring.display(g.poly())).collect::<Vec<_>>(),
            "quotient": {
                "free_rank": q.free_rank,
                "invariants": q.invariants.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            },
            "relevant": relevant,
            "maximally_relevant": maximal,
        }));
    }
    Ok(Partial {
        verdict,
        results: Value::Array(results),
        lines,
        warnings,
    })
}

fn potion_eq(p: &Problem) -> Result<Partial, InputError> {
    let check = p.checks.potion_eq.as_ref().ok_or_else(|| missing("checks.potion_eq"))?;
    let s = p.submonoid(&check.submonoid, "checks.potion_eq.submonoid")?;
    let ring = PotionRing::new(s.clone());
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut verdict = Verdict::Pass;
    for (i, pair) in check.pairs.iter().enumerate() {
        let here = format!("checks.potion_eq.pairs[{i}]");
        let side = |f: &crate::schema::FractionBlock, which: &str| {
            let path = format!("{here}.{which}");
            let num = parse(&p.ring, &f.num, &path)?;
            ring.fraction(num, f.den.clone()).map_err(core_err(&path))
        };
        let (a, b) = (side(&pair.left, "left")?, side(&pair.right, "right")?);
        let equal = a.equals(&b);
        let v = Verdict::from_bool(equal == pair.expect);
        verdict = verdict.and(v);
        lines.push(format!("{} = {}: {equal} (expected {})", a.to_text(), b.to_text(), pair.expect));
        results.push(json!({
            "left": a.to_text(),
            "right": b.to_text(),
            "equal": equal,
            "expect": pair.expect,
            "verdict": v.as_str(),
        }));
    }
    let zero_one = (&ring.zero() * &ring.one()).equals(&ring.zero());
    Ok(Partial {
        verdict,
        results: json!({
            "submonoid": check.submonoid,
            "pairs": results,
            "zero_times_one_is_zero": zero_one,
        }),
        lines,
        warnings: s.warnings().to_vec(),
    })
}

fn magic2(p: &Problem, config: &CheckConfig) -> Result<Partial, InputError> {
    let check = p.checks.magic.as_ref().ok_or_else(|| missing("checks.magic"))?;
    let s = p.submonoid(&check.s, "checks.magic.s")?;
    let t = p.submonoid(&check.t, "checks.magic.t")?;
    let err = core_err("checks.magic");
    let base = PotionRing::new(s.clone());
    let gen = PotionGen::find(s, t).map_err(&err)?;
    let bar = gen.bar().clone();
    let entries: Vec<Value> = gen
        .entries()
        .iter()
        .map(|e| {
            json!({
                "t": p.ring.display(e.element.poly()),
                "n": e.n,
                "s": bar_text(&bar, &e.s),
                "s_prime": bar_text(&bar, &e.s_prime),
                "i": e.i.to_string(),
                "i_prime": e.i_prime.to_string(),
            })
        })
        .collect();
    let cert = open_immersion_certificate(&base, t).map_err(&err)?;
    let eq = localization_equiv_potion(&base, gen).map_err(&err)?;
    let rt = round_trip_check(&eq, config).map_err(&err)?;
    let inverted: Vec<String> = cert.elements.iter().map(|e| e.to_text()).collect();
    let mut lines: Vec<String> = gen_lines(&entries);
    lines.push(format!("inverted elements: {}", inverted.join(", ")));
    lines.push(format!(
        "round trips on {} samples: {} + {} failures",
        rt.samples, rt.backward_forward_failures, rt.forward_backward_failures
    ));
    let mut warnings = s.warnings().to_vec();
    push_unique(&mut warnings, t.warnings());
    Ok(Partial {
        verdict: rt.verdict.and(cert.verdict),
        results: json!({
            "s": check.s,
            "t": check.t,
            "potion_gen": entries,
            "inverted": inverted,
            "inverses_in_st": eq.inverses().iter().map(|e| e.to_text()).collect::<Vec<_>>(),
            "open_immersion": {
                "unit_in_base": cert.unit_in_base,
                "verdict": cert.verdict.as_str(),
            },
            "round_trip": {
                "samples": rt.samples,
                "backward_forward_failures": rt.backward_forward_failures,
                "forward_backward_failures": rt.forward_backward_failures,
                "verdict": rt.verdict.as_str(),
            },
        }),
        lines,
        warnings,
    })
}

fn gen_lines(entries: &[Value]) -> Vec<String> {
    entries
        .iter()
        .map(|e| {
            format!(
                "t = {}: n = {}, s = {}, s' = {}",
                e["t"].as_str().unwrap_or(""),
                e["n"],
                e["s"].as_str().unwrap_or(""),
                e["s_prime"].as_str().unwrap_or("")
            )
        })
        .collect()
}

fn magic4(p: &Problem, config: &CheckConfig) -> Result<Partial, InputError> {
    let texts = p.checks.sum_cover.as_ref().ok_or_else(|| missing("checks.sum_cover"))?;
    let f = texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse(&p.ring, t, &format!("checks.sum_cover[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = sum_cover_check(&p.ring, &f, config).map_err(core_err("checks.sum_cover"))?;
    let lines = rep
        .pairs
        .iter()
        .map(|c| format!("pair ({}, {}): {} mismatches in {} samples", texts[c.i], texts[c.j], c.mismatches, c.samples))
        .collect();
    Ok(Partial {
        verdict: rep.verdict,
        results: json!({
            "elements": texts,
            "sum": p.ring.display(&rep.sum),
            "pairs": rep.pairs.iter().map(|c| json!({
                "i": c.i,
                "j": c.j,
                "samples": c.samples,
                "mismatches": c.mismatches,
                "verdict": c.verdict.as_str(),
            })).collect::<Vec<_>>(),
        }),
        lines,
        warnings: rep.warnings,
    })
}

fn atlas(p: &Problem, config: &CheckConfig) -> Result<Partial, InputError> {
    let name = p
        .checks
        .atlas
        .as_ref()
        .map(|f| f.family.clone())
        .ok_or_else(|| missing("checks.atlas"))?;
    let fam = p.family(&name, "checks.atlas.family")?;
    let atlas = build_atlas(fam, config).map_err(core_err("checks.atlas"))?;
    let names = fam.names();
    let charts: Vec<Value> = atlas
        .charts
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "generators": gens_text(c.potion.submonoid()),
                "maximally_relevant": c.maximally_relevant,
                "self_overlap": c.self_overlap.as_str(),
            })
        })
        .collect();
    let overlaps: Vec<Value> = atlas
        .overlaps
        .iter()
        .map(|o| {
            json!({
                "chart": names[o.source],
                "other": names[o.other],
                "transition": o.transition,
                "unit_in_base": o.certificate.unit_in_base,
                "certificate": o.certificate.verdict.as_str(),
                "symmetry": o.symmetry.as_str(),
            })
        })
        .collect();
    let cocycles: Vec<Value> = atlas
        .cocycles
        .iter()
        .map(|c| {
            json!({
                "members": c.members.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                "samples": c.samples,
                "mismatches": c.mismatches,
                "verdict": c.verdict.as_str(),
            })
        })
        .collect();
    let mut lines = vec![format!(
        "{} charts, {} overlap classes, {} cocycle triples",
        atlas.charts.len(),
        atlas.overlap_classes(),
        atlas.cocycles.len()
    )];
    for o in &atlas.overlaps {
        lines.push(format!(
            "D({}{}) in D({}): inverts {}",
            names[o.source],
            names[o.other],
            names[o.source],
            o.transition.join(", ")
        ));
    }
    Ok(Partial {
        verdict: atlas.verdict(),
        results: json!({
            "family": name,
            "charts": charts,
            "overlap_classes": atlas.overlap_classes(),
            "overlaps": overlaps,
            "cocycles": cocycles,
        }),
        lines,
        warnings: atlas.warnings.clone(),
    })
}

fn functorial(p: &Problem, config: &CheckConfig) -> Result<Partial, InputError> {
    let hom = p.target.as_ref().ok_or_else(|| missing("target"))?;
    let name = p
        .checks
        .functorial
        .as_ref()
        .map(|f| f.family.clone())
        .ok_or_else(|| missing("checks.functorial"))?;
    let fam = p.family(&name, "checks.functorial.family")?;
    let rep = functoriality_map(hom, fam, config).map_err(core_err("checks.functorial"))?;
    let members: Vec<Value> = rep
        .members
        .iter()
        .map(|m| {
            json!({
                "name": m.name,
                "image": m.map.as_ref().map(|f| f.target().submonoid().describe()),
                "problem": m.problem,
            })
        })
        .collect();
    let lines = rep
        .members
        .iter()
        .map(|m| match &m.map {
            Some(f) => format!("{} -> {}", m.name, f.target().submonoid().describe()),
            None => format!("{} dropped", m.name),
        })
        .collect();
    Ok(Partial {
        verdict: rep.verdict,
        results: json!({
            "family": name,
            "members": members,
            "compatibility": rep.compatibility.iter().map(|(i, j, v)| json!({
                "chart": rep.members[*i].name,
                "other": rep.members[*j].name,
                "verdict": v.as_str(),
            })).collect::<Vec<_>>(),
        }),
        lines,
        warnings: rep.warnings,
    })
}

fn closed_immersion(p: &Problem, config: &CheckConfig) -> Result<Partial, InputError> {
    let hom = p.target.as_ref().ok_or_else(|| missing("target"))?;
    let names = p
        .checks
        .closed_immersion
        .clone()
        .unwrap_or_else(|| p.submonoid_order.clone());
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut verdict = Verdict::Pass;
    for (i, name) in names.iter().enumerate() {
        let path = format!("checks.closed_immersion[{i}]");
        let s = p.submonoid(name, &path)?;
        let rep = closed_immersion_check(hom, s, config).map_err(core_err(&path))?;
        verdict = verdict.and(rep.verdict);
        let lifted = rep.lifts.iter().filter(|l| l.lift.is_some()).count();
        lines.push(format!("{name}: {} ({lifted}/{} lifted)", rep.label(), rep.lifts.len()));
        results.push(json!({
            "submonoid": name,
            "verdict": rep.label(),
            "lifts": rep.lifts.iter().map(|l| json!({"target": l.target, "lift": l.lift})).collect::<Vec<_>>(),
        }));
    }
    Ok(Partial {
        verdict,
        results: Value::Array(results),
        lines,
        warnings: Vec::new(),
    })
}

fn product(p: &Problem, config: &CheckConfig) -> Result<Partial, InputError> {
    let check = p.checks.product.as_ref().ok_or_else(|| missing("checks.product"))?;
    let (_, factor_subs) = p.factor.as_ref().ok_or_else(|| missing("factor"))?;
    let s = p.submonoid(&check.left, "checks.product.left")?;
    let t = factor_subs.get(&check.right).ok_or_else(|| InputError::Semantic {
        path: "checks.product.right".into(),
        message: format!("unknown factor submonoid {}", check.right),
    })?;
    let rep = product_chart_check(s, t, config).map_err(core_err("checks.product"))?;
    let ring: &Arc<GradedRing> = &rep.product.ring;
    let variables: Vec<Value> = ring
        .names()
        .iter()
        .zip(ring.degrees())
        .map(|(n, d)| json!({"name": n, "degree": d.to_string()}))
        .collect();
    let mut warnings: Vec<String> = rep
        .product
        .renamed
        .iter()
        .map(|(a, b)| format!("factor variable {a} renamed to {b}"))
        .collect();
    push_unique(&mut warnings, s.warnings());
    push_unique(&mut warnings, t.warnings());
    Ok(Partial {
        verdict: rep.verdict,
        results: json!({
            "left": check.left,
            "right": check.right,
            "variables": variables,
            "samples": rep.samples,
            "decomposed": rep.decomposed,
        }),
        lines: vec![format!("{}/{} sampled chart elements decomposed", rep.decomposed, rep.samples)],
        warnings,
    })
}

fn twist(p: &Problem, config: &CheckConfig) -> Result<Partial, InputError> {
    let check = p.checks.twist.as_ref().ok_or_else(|| missing("checks.twist"))?;
    let s = p.submonoid(&check.submonoid, "checks.twist.submonoid")?;
    let alpha = p.degree(&check.alpha, "checks.twist.alpha")?;
    let ring = PotionRing::new(s.clone());
    let unit = twist_generator(&ring, &alpha, config).map_err(core_err("checks.twist"))?;
    let bar = s.bar();
    Ok(Partial {
        verdict: unit.verdict(),
        results: json!({
            "submonoid": check.submonoid,
            "alpha": alpha.to_string(),
            "s": bar_text(&bar, &unit.s),
            "s_prime": bar_text(&bar, &unit.s_prime),
            "unit": unit.unit.to_text(&ring),
            "inverse": unit.inverse.to_text(&ring),
            "inverse_verified": unit.inverse_verified,
            "bijection": unit.bijection.as_str(),
        }),
        lines: vec![format!(
            "u = {} of degree {alpha}, inverse {}",
            unit.unit.to_text(&ring),
            unit.inverse.to_text(&ring)
        )],
        warnings: s.warnings().to_vec(),
    })
}

fn negligible(p: &Problem) -> Result<Partial, InputError> {
    let check = p.checks.negligible.as_ref().ok_or_else(|| missing("checks.negligible"))?;
    let q = p.module(&check.module, "checks.negligible.module")?;
    let fam = p.family(&check.family, "checks.negligible.family")?;
    let rep = is_negligible_on_family(q, fam).map_err(core_err("checks.negligible"))?;
    let lines = rep
        .charts
        .iter()
        .map(|c| {
            let dead = c.killed.iter().filter(|k| **k).count();
            format!("{}: {dead}/{} generators vanish", c.name, c.killed.len())
        })
        .chain(std::iter::once(match rep.result {
            Negligibility::Inconclusive => format!("negligibility of {} is inconclusive", check.module),
            _ => format!("{} is {}", check.module, rep.result.as_str()),
        }))
        .collect();
    Ok(Partial {
        verdict: rep.result.verdict(),
        results: json!({
            "module": check.module,
            "family": check.family,
            "charts": rep.charts.iter().map(|c| json!({
                "name": c.name,
                "killed": c.killed,
                "maximally_relevant": c.maximally_relevant,
            })).collect::<Vec<_>>(),
            "result": rep.result.as_str(),
        }),
        lines,
        warnings: vec!["results are relative to the declared family".into()],
    })
}
