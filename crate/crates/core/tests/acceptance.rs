//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use metaeq_core::affine::AffineForm;
use metaeq_core::decide::{
    decide, verify_certificate, verify_report, Budget, Decision, ModulusDesc, Proof, Report, Verdict, VerdictKind,
};
use metaeq_core::expsolve::{grouping_solve, semenov_solve, SemenovEquation, SemenovSystem, SolveBudget};
use metaeq_core::frontend::{parse_input, EquationSystem};
use metaeq_core::groups::{verify_witness, Assignment, BsElement, GroupElement, GroupSpec, WreathElement};
use metaeq_core::intlinalg::{smith_normal_form, solve_affine, AffineLattice, IntMatrix};
use metaeq_core::oracle::{brute_force_cyclic, brute_force_exp, brute_force_group, ExpEquation, SearchBall};
use metaeq_core::reduce::{merge_components, reduce_bs, reduce_wreath, CyclicRing, ExpSum, IntLaurent};
use metaeq_core::rings::{AbelianShape, LaurentPoly, RElem, ZkFrac};

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(id: u32, title: &str, limit: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let ok = out.ok && in_time;
    let timing = if in_time { String::new() } else { format!(" [over the {}s limit]", limit.as_secs()) };
    println!(
        "{} {id}. {title}: {} ({:.1}s){timing}",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64()
    );
    ok
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

// 1. group arithmetic

fn families() -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("BS(1,2)", GroupSpec::bs(2)),
        ("BS(1,3)", GroupSpec::bs(3)),
        ("Z_2 wr Z", GroupSpec::wreath(0, vec![2])),
        ("Z wr Z", GroupSpec::wreath(1, vec![])),
        ("(Z + Z_2) wr Z", GroupSpec::wreath(1, vec![2])),
    ]
}

fn random_element(rng: &mut ChaCha8Rng, spec: &GroupSpec, r: i64) -> GroupElement {
    match spec {
        GroupSpec::Bs { k } => GroupElement::Bs(BsElement::new(
            ZkFrac::new(rng.gen_range(-4 * r..=4 * r), rng.gen_range(0..=r as u64), *k),
            BigInt::from(rng.gen_range(-r..=r)),
        )),
        GroupSpec::Wreath { shape } => GroupElement::Wreath(random_wreath(rng, shape, r)),
    }
}

fn random_wreath(rng: &mut ChaCha8Rng, shape: &Arc<AbelianShape>, r: i64) -> WreathElement {
    let terms = rng.gen_range(0..=r as usize);
    let p = LaurentPoly::from_terms((0..terms).map(|_| {
        let vals: Vec<BigInt> = (0..shape.components()).map(|_| BigInt::from(rng.gen_range(-r..=r))).collect();
        (rng.gen_range(-r..=r), RElem::from_components(shape, &vals))
    }));
    WreathElement::new(p, BigInt::from(rng.gen_range(-r..=r)))
}

fn group_arithmetic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = 0;
    for (_, spec) in families() {
        let e = spec.identity();
        for _ in 0..10_000 {
            let [g, h, f] = [0; 3].map(|_| random_element(&mut rng, &spec, 4));
            let gh_f = spec.mul(&spec.mul(&g, &h).unwrap(), &f).unwrap();
            let g_hf = spec.mul(&g, &spec.mul(&h, &f).unwrap()).unwrap();
            let gi = spec.inv(&g).unwrap();
            let ok = gh_f == g_hf
                && spec.mul(&g, &gi).unwrap() == e
                && spec.mul(&gi, &g).unwrap() == e
                && spec.mul(&g, &e).unwrap() == g
                && spec.mul(&e, &g).unwrap() == g;
            failures += usize::from(!ok);
        }
    }
    let mut relation = true;
    for k in [2u32, 3, 5] {
        let spec = GroupSpec::bs(k);
        let (a, b) = (spec.generator("a").unwrap(), spec.generator("b").unwrap());
        let lhs = spec.mul(&spec.mul(&spec.inv(&b).unwrap(), &a).unwrap(), &b).unwrap();
        relation &= lhs == spec.pow(&a, k as i64).unwrap();
    }
    Outcome {
        ok: failures == 0 && relation,
        detail: format!("50000 triples, {failures} failures; b^-1 a b = a^k for k in 2,3,5: {relation}"),
    }
}

// 2. Smith normal form

fn snf_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    for _ in 0..1000 {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-50..=50)).collect()).collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        let diag = s.diagonal();
        let diagonal_only = (0..m).all(|i| (0..n).all(|j| i == j || s.d[(i, j)].is_zero()));
        let chain = diag.iter().all(|d| !d.is_negative())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        let ok = s.u.mul(&a).mul(&s.v) == s.d
            && s.u.determinant().abs().is_one()
            && s.v.determinant().abs().is_one()
            && s.v.mul(&s.v_inv) == IntMatrix::identity(n)
            && diagonal_only
            && chain;
        failures += usize::from(!ok);
    }
    Outcome { ok: failures == 0, detail: format!("1000 matrices, {failures} failures") }
}

// 3 and 4. exponential equations against brute force

fn box_points(bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &(lo, hi) in bounds {
        out = out.into_iter().flat_map(|p: Vec<i64>| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

fn covered(lats: &[AffineLattice], bounds: &[(i64, i64)]) -> BTreeSet<Vec<i64>> {
    box_points(bounds).into_iter().filter(|x| lats.iter().any(|l| l.contains(&ints(x)))).collect()
}

fn semenov_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut failures, mut nonempty) = (0, 0);
    for _ in 0..2000 {
        let k = rng.gen_range(2..=3u32);
        let nv = rng.gen_range(1..=3usize);
        let vars = names("y", nv);
        let nterms = rng.gen_range(1..=4usize);
        let terms: Vec<(BigInt, AffineForm)> = (0..nterms)
            .map(|j| {
                let beta = loop {
                    let b = rng.gen_range(-5..=5i64);
                    if b != 0 {
                        break b;
                    }
                };
                let var = if j < nv { j } else { rng.gen_range(0..nv) };
                let exp = AffineForm::var(&vars[var]).add(&AffineForm::constant(rng.gen_range(-1..=1i64)));
                (BigInt::from(beta), exp)
            })
            .collect();
        let constant = BigInt::from(rng.gen_range(-20..=20i64));
        let eq = SemenovEquation { terms: terms.clone(), constant: constant.clone() };
        let sys = SemenovSystem { k, vars: vars.clone(), equations: vec![eq] };
        let bounds = vec![(-8i64, 20i64); nv];
        let want: BTreeSet<Vec<i64>> =
            brute_force_exp(k, &vars, &[ExpEquation { terms, constant }], &bounds).into_iter().collect();
        nonempty += usize::from(!want.is_empty());
        let ok = match semenov_solve(&sys, &mut SolveBudget::new(10_000_000)) {
            Ok(lats) => covered(&lats, &bounds) == want,
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    Outcome {
        ok: failures == 0,
        detail: format!("2000 equations ({nonempty} with solutions in the box), {failures} mismatches"),
    }
}

fn cyclic_sum(n: u64, terms: &[(BigInt, AffineForm)], c: &BigInt) -> ExpSum<CyclicRing> {
    let ring = CyclicRing { n };
    let mut s = ExpSum::constant(&ring, ring.reduce(c.clone()));
    for (a, e) in terms {
        s.add_term(None, e.clone(), ring.reduce(a.clone()));
    }
    s
}

fn lamplighter_five_example() -> bool {
    let x = |i: usize| AffineForm::var(&format!("x{i}"));
    let c = |v: i64| AffineForm::constant(v);
    let terms = [
        (BigInt::from(3), c(3).sub(&x(1)).add(&x(2))),
        (BigInt::from(4), c(-2).add(&x(1))),
        (BigInt::from(2), x(3).sub(&c(2))),
    ];
    let vars = names("x", 3);
    let Ok(out) = grouping_solve(&[cyclic_sum(5, &terms, &BigInt::one())], &vars, &mut SolveBudget::new(100_000))
    else {
        return false;
    };
    let expected = solve_affine(&[c(3).sub(&x(1)).add(&x(2)).sub(&x(3).sub(&c(2))), c(-2).add(&x(1))], &vars, "p");
    AffineLattice::from_solution(&expected).is_some_and(|l| out.contains(&l))
}

fn grouping_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = 0;
    let mut nonempty = 0;
    for _ in 0..1000 {
        let n = [0u64, 2, 3, 5, 6][rng.gen_range(0..5)];
        let nv = rng.gen_range(1..=3usize);
        let vars = names("x", nv);
        let nterms = rng.gen_range(1..=5usize);
        let terms: Vec<(BigInt, AffineForm)> = (0..nterms)
            .map(|_| {
                let mut f = AffineForm::constant(rng.gen_range(-2..=2i64));
                for v in &vars {
                    f.add_term(v, &BigInt::from(rng.gen_range(-1..=1i64)));
                }
                (BigInt::from(rng.gen_range(-4..=4i64)), f)
            })
            .collect();
        let c = BigInt::from(rng.gen_range(-3..=3i64));
        let bounds = vec![(-10i64, 10i64); nv];
        let oracle = ExpEquation { terms: terms.clone(), constant: c.clone() };
        let want: BTreeSet<Vec<i64>> = brute_force_cyclic(n, &vars, &[oracle], &bounds).into_iter().collect();
        nonempty += usize::from(!want.is_empty());
        let ok = match grouping_solve(&[cyclic_sum(n, &terms, &c)], &vars, &mut SolveBudget::new(10_000_000)) {
            Ok(lats) => covered(&lats, &bounds) == want,
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    let l5 = lamplighter_five_example();
    Outcome {
        ok: failures == 0 && l5,
        detail: format!(
            "1000 equations ({nonempty} with solutions in the box), {failures} mismatches; L_5 branch present: {l5}"
        ),
    }
}

// 5. reduction soundness

fn random_word(rng: &mut ChaCha8Rng, gens: &[String], vars: &[&str]) -> String {
    let len = rng.gen_range(0..=4);
    let letters: Vec<String> = (0..len)
        .map(|_| {
            let i = rng.gen_range(0..gens.len() + vars.len());
            let name = if i < gens.len() { gens[i].as_str() } else { vars[i - gens.len()] };
            let e = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if letters.is_empty() {
        "1".into()
    } else {
        letters.join(" ")
    }
}

fn bs_reduced_holds(system: &EquationSystem, asg: &Assignment) -> bool {
    let red = reduce_bs(system);
    let mut point = BTreeMap::new();
    for v in &system.variables {
        point.insert(format!("r_{v}"), asg[v].as_bs().unwrap().r.clone());
    }
    let atoms: Vec<ZkFrac> = red.atoms.iter().map(|a| asg[&a.var].as_bs().unwrap().u.clone()).collect();
    red.lin.iter().all(|l| l.eval(&point).unwrap().is_zero())
        && red.rows.iter().all(|r| r.eval(&point, &atoms).unwrap().is_zero())
}

fn wreath_reduced_holds(system: &EquationSystem, asg: &Assignment) -> bool {
    let merged = merge_components(&reduce_wreath(system), system);
    let mut point = BTreeMap::new();
    for v in &system.variables {
        point.insert(format!("x_{v}"), asg[v].as_wreath().unwrap().x.clone());
    }
    let atoms: Vec<IntLaurent> = merged
        .atoms
        .iter()
        .map(|a| {
            let p = &asg[&a.var].as_wreath().unwrap().p;
            p.terms().map(|(d, c)| (d, c.component(a.component))).filter(|(_, c)| !c.is_zero()).collect()
        })
        .collect();
    merged.lin.iter().all(|l| l.eval(&point).unwrap().is_zero())
        && merged.rows.iter().all(|r| r.eval(&point, &atoms).unwrap().is_empty())
}

fn reduction_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut failures, mut positives, mut total) = (0usize, 0usize, 0usize);
    for (_, spec) in families() {
        let gens = spec.generator_names();
        for _ in 0..500 {
            let nv = rng.gen_range(1..=2);
            let vars = &["X", "Y"][..nv];
            // Half the systems are planted: the right side is the left side
            // with every variable replaced by a generator word.
            let plant: Vec<String> = vars.iter().map(|_| random_word(&mut rng, &gens, &[])).collect();
            let planted = rng.gen_bool(0.5);
            let eqs: Vec<String> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let lhs = random_word(&mut rng, &gens, vars);
                    let rhs = if planted {
                        substitute_word(&lhs, vars, &plant)
                    } else {
                        random_word(&mut rng, &gens, vars)
                    };
                    format!("{lhs} = {rhs}")
                })
                .collect();
            let Ok(system) = parse_input(&format!("{spec}\n{}\n", eqs.join("\n"))) else {
                failures += 1;
                continue;
            };
            let planted_asg: Option<Assignment> = planted.then(|| {
                vars.iter()
                    .zip(&plant)
                    .map(|(v, w)| {
                        let word = parse_input(&format!("{spec}\n{w} = 1\n")).unwrap().equations[0].lhs.clone();
                        (v.to_string(), spec.eval_word(&word, &Assignment::new()).unwrap())
                    })
                    .collect()
            });
            for i in 0..200 {
                let mut asg: Assignment = match (&planted_asg, i) {
                    (Some(a), 0) => a.clone(),
                    _ => vars.iter().map(|v| (v.to_string(), random_element(&mut rng, &spec, 3))).collect(),
                };
                asg.retain(|v, _| system.variables.contains(v));
                let group = verify_witness(&system, &asg).unwrap();
                let reduced = match spec {
                    GroupSpec::Bs { .. } => bs_reduced_holds(&system, &asg),
                    GroupSpec::Wreath { .. } => wreath_reduced_holds(&system, &asg),
                };
                total += 1;
                positives += usize::from(group);
                failures += usize::from(group != reduced);
            }
        }
    }
    Outcome {
        ok: failures == 0,
        detail: format!("{total} assignments over 2500 systems ({positives} satisfying), {failures} disagreements"),
    }
}

fn substitute_word(word: &str, vars: &[&str], values: &[String]) -> String {
    if word == "1" {
        return word.into();
    }
    let out = word
        .split(' ')
        .map(|letter| {
            let (name, exp) = letter.split_once('^').map_or((letter, 1i64), |(n, e)| (n, e.parse().unwrap()));
            match vars.iter().position(|v| *v == name) {
                Some(i) => {
                    let inner = if exp < 0 { invert_word(&values[i]) } else { values[i].clone() };
                    vec![inner; exp.unsigned_abs() as usize].join(" ")
                }
                None => letter.to_string(),
            }
        })
        .flat_map(|w| w.split(' ').filter(|l| *l != "1" && !l.is_empty()).map(String::from).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    if out.is_empty() {
        "1".into()
    } else {
        out.join(" ")
    }
}

fn invert_word(word: &str) -> String {
    if word == "1" {
        return word.into();
    }
    word.split(' ')
        .rev()
        .map(|letter| {
            let (name, exp) = letter.split_once('^').map_or((letter, 1i64), |(n, e)| (n, e.parse().unwrap()));
            format!("{name}^{}", -exp)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

// 6 to 8. curated corpus

struct Instance {
    name: String,
    expect: VerdictKind,
    text: String,
}

fn corpus() -> Vec<Instance> {
    let raw = include_str!("data/corpus.txt");
    raw.split("\n\n")
        .filter(|b| b.starts_with("name:"))
        .map(|block| {
            let mut lines = block.lines();
            let name = lines.next().unwrap().trim_start_matches("name:").trim().to_string();
            let expect = match lines.next().unwrap().trim_start_matches("expect:").trim() {
                "sat" => VerdictKind::Sat,
                "unsat" => VerdictKind::Unsat,
                other => panic!("bad expectation {other}"),
            };
            let text = lines.map(|l| format!("{l}\n")).collect();
            Instance { name, expect, text }
        })
        .collect()
}

fn run_corpus(corpus: &[Instance]) -> Vec<(EquationSystem, Decision)> {
    corpus
        .iter()
        .map(|inst| {
            let system = parse_input(&inst.text).unwrap_or_else(|e| panic!("{}: {e}", inst.name));
            let decision = decide(&system, &Budget::default());
            (system, decision)
        })
        .collect()
}

fn proof_uses_prime_power(p: &Proof) -> bool {
    match p {
        Proof::ModulusObstruction { chain, .. } => {
            chain.iter().any(|r| matches!(r.modulus, ModulusDesc::PrimePower { .. }))
        }
        Proof::BranchCover { branches } => branches.iter().any(proof_uses_prime_power),
        _ => false,
    }
}

fn proof_uses_prime_n(p: &Proof) -> bool {
    match p {
        Proof::ComponentObstruction { inner, .. } => proof_uses_prime_n(inner),
        Proof::ModulusObstruction { chain, .. } => chain.iter().any(|r| match r.modulus {
            ModulusDesc::Monic { n, .. } => n > 1 && (2..n).all(|d| n % d != 0),
            _ => false,
        }),
        Proof::BranchCover { branches } => branches.iter().any(proof_uses_prime_n),
        _ => false,
    }
}

fn corpus_suite(corpus: &[Instance], results: &[(EquationSystem, Decision)]) -> Outcome {
    let mut problems = Vec::new();
    let (mut sat, mut unsat) = (0, 0);
    for (inst, (system, decision)) in corpus.iter().zip(results) {
        let got = decision.verdict.kind();
        if got != inst.expect {
            problems.push(format!("{}: expected {:?}, got {got:?}", inst.name, inst.expect));
            continue;
        }
        match &decision.verdict {
            Verdict::Sat(asg) => {
                sat += 1;
                if verify_witness(system, asg) != Ok(true) {
                    problems.push(format!("{}: witness rejected", inst.name));
                }
            }
            Verdict::Unsat(cert) => {
                unsat += 1;
                if verify_certificate(cert, system).is_err() {
                    problems.push(format!("{}: certificate rejected", inst.name));
                }
                if !brute_force_group(system, SearchBall { radius: 4 }, Some(1)).is_empty() {
                    problems.push(format!("{}: oracle finds a solution at radius 4", inst.name));
                }
            }
            Verdict::Unknown(_) => unreachable!(),
        }
    }
    let find = |name: &str| corpus.iter().position(|i| i.name == name).map(|i| &results[i].1.verdict);
    let mut named = |name: &str, check: &dyn Fn(&Verdict) -> bool| {
        if !find(name).is_some_and(check) {
            problems.push(format!("{name}: named expectation not met"));
        }
    };
    named("bs2-conj-a3", &|v| matches!(v, Verdict::Unsat(c) if proof_uses_prime_power(&c.proof)));
    named("bs2-square-a3", &|v| match v {
        Verdict::Sat(asg) => {
            asg["X"] == GroupElement::Bs(BsElement::new(ZkFrac::new(3, 1, 2), BigInt::zero()))
        }
        _ => false,
    });
    named("bs2-square-ab", &|v| matches!(v, Verdict::Unsat(c) if matches!(c.proof, Proof::LinearInfeasible { .. })));
    named("zz-commutator-a2", &|v| matches!(v, Verdict::Unsat(c) if proof_uses_prime_n(&c.proof)));
    let enough = corpus.len() >= 30;
    if !enough {
        problems.push(format!("corpus has only {} instances", corpus.len()));
    }
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} instances ({sat} sat, {unsat} unsat) decided and cross-checked", corpus.len())
        } else {
            problems.join("; ")
        },
    }
}

/// Every way of changing one scalar field of a JSON value.
fn single_field_edits(v: &Value) -> Vec<Value> {
    let mut out = Vec::new();
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                for edit in single_field_edits(inner) {
                    let mut m = map.clone();
                    m.insert(k.clone(), edit);
                    out.push(Value::Object(m));
                }
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                for edit in single_field_edits(inner) {
                    let mut a = items.clone();
                    a[i] = edit;
                    out.push(Value::Array(a));
                }
            }
        }
        Value::Number(n) => out.push(Value::from(n.as_u64().map_or(1, |x| x + 1))),
        Value::String(s) => out.push(Value::String(match s.parse::<BigInt>() {
            Ok(x) => (x + 1u32).to_string(),
            Err(_) => format!("{s}x"),
        })),
        Value::Bool(b) => out.push(Value::Bool(!b)),
        Value::Null => out.push(Value::from(0)),
    }
    out
}

fn audit_suite(results: &[(EquationSystem, Decision)]) -> Outcome {
    let (mut replayed, mut replay_failures, mut tampered, mut accepted) = (0, 0, 0, 0);
    for (system, decision) in results {
        let json = Report::new(system, decision, 0).to_json();
        let reloaded = Report::from_json(&json).unwrap();
        replayed += 1;
        if verify_report(&reloaded).map_err(|_| ()) != Ok(decision.verdict.kind()) {
            replay_failures += 1;
        }
        let Verdict::Unsat(cert) = &decision.verdict else { continue };
        let value = serde_json::to_value(cert).unwrap();
        for edit in single_field_edits(&value) {
            tampered += 1;
            let ok = match serde_json::from_value(edit) {
                Ok(c) => verify_certificate(&c, system).is_ok(),
                Err(_) => false,
            };
            accepted += usize::from(ok);
        }
    }
    Outcome {
        ok: replay_failures == 0 && accepted == 0 && tampered > 0,
        detail: format!(
            "{replayed} reports replayed, {replay_failures} rejected; {tampered} tampered certificates, {accepted} accepted"
        ),
    }
}

fn determinism_suite(corpus: &[Instance], first: &[(EquationSystem, Decision)]) -> Outcome {
    let second = run_corpus(corpus);
    let differ = first
        .iter()
        .zip(&second)
        .filter(|((s1, d1), (s2, d2))| {
            Report::new(s1, d1, 1).to_json_untimed() != Report::new(s2, d2, 2).to_json_untimed()
        })
        .count();
    Outcome { ok: differ == 0, detail: format!("{} reports compared, {differ} differ", corpus.len()) }
}

fn main() {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= report(1, "group arithmetic", secs(10), group_arithmetic);
    ok &= report(2, "Smith normal form", secs(30), snf_suite);
    ok &= report(3, "Semenov solver vs brute force", secs(300), semenov_suite);
    ok &= report(4, "grouping solver vs brute force", secs(120), grouping_suite);
    ok &= report(5, "reduction soundness", secs(300), reduction_suite);

    let corpus = corpus();
    let start = Instant::now();
    let results = run_corpus(&corpus);
    let decide_time = start.elapsed();
    ok &= report(6, "curated corpus", secs(600).saturating_sub(decide_time), || {
        let mut out = corpus_suite(&corpus, &results);
        out.detail += &format!("; deciding took {:.1}s", decide_time.as_secs_f64());
        out
    });
    ok &= report(7, "certificate audit", secs(600), || audit_suite(&results));
    ok &= report(8, "determinism", secs(600), || determinism_suite(&corpus, &results));
    if !ok {
        std::process::exit(1);
    }
}
