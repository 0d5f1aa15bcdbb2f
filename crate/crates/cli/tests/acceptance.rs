//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p cohomlim --test acceptance`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command as Process, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use cohomlim::config::Config;
use cohomlim::verify::run_claims;
use cohomlim::{parse_config, run, Command, Options};
use cohomlim_core::cochain::{all_cochains, differential, h_n, z_n, Cochain};
use cohomlim_core::h1::{enumerate_z1_backtracking, enumerate_z1_bruteforce, h1};
use cohomlim_core::{Budget, FiniteGroup, GAction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn demo() -> Config {
    parse_config(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/demo.json")).expect("demo config parses")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cyc(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n).unwrap())
}

/// Every action of a cyclic `G` on `A`: the generator goes to any
/// automorphism whose order divides `|G|`.
fn cyclic_actions(g: &Arc<FiniteGroup>, a: &Arc<FiniteGroup>) -> Vec<GAction> {
    if g.order() == 1 {
        return vec![GAction::trivial(g.clone(), a.clone())];
    }
    a.automorphisms()
        .unwrap()
        .into_iter()
        .filter_map(|phi| GAction::from_generator_images(g.clone(), a.clone(), &[1], &[phi]).ok())
        .collect()
}

/// S₃ acting on an abelian group through the sign, by inversion.
fn sign_action(a: &Arc<FiniteGroup>) -> GAction {
    let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
    let even = s3.commutator_subgroup();
    let rows: Vec<Vec<usize>> = s3
        .elements()
        .map(|s| a.elements().map(|x| if even.contains(s) { x } else { a.inv(x) }).collect())
        .collect();
    GAction::new(s3, a.clone(), &rows).unwrap()
}

/// `d_n` written out from the defining formula, one tuple at a time.
fn d_oracle(act: &GAction, n: usize, f: &[usize]) -> Vec<usize> {
    let g = act.acting_group();
    let a = act.module();
    let k = g.order();
    let index = |t: &[usize]| t.iter().fold(0, |acc, &s| acc * k + s);
    let mut out = Vec::with_capacity(k.pow(n as u32 + 1));
    for code in 0..k.pow(n as u32 + 1) {
        let mut s = vec![0; n + 1];
        let mut c = code;
        for slot in s.iter_mut().rev() {
            *slot = c % k;
            c /= k;
        }
        let mut acc = act.act(s[0], f[index(&s[1..])]);
        for i in 1..=n {
            let mut t = s[..i - 1].to_vec();
            t.push(g.mul(s[i - 1], s[i]));
            t.extend_from_slice(&s[i + 1..]);
            let v = f[index(&t)];
            acc = a.mul(acc, if i % 2 == 1 { a.inv(v) } else { v });
        }
        let v = f[index(&s[..n])];
        acc = a.mul(acc, if (n + 1) % 2 == 1 { a.inv(v) } else { v });
        out.push(acc);
    }
    out
}

fn is_zero(v: &[usize]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn criterion_1() -> Outcome {
    let b = Budget::DEFAULT;
    let mut exhaustive = 0usize;
    for gn in 1..=3 {
        for an in 1..=3 {
            for act in cyclic_actions(&cyc(gn), &cyc(an)) {
                for n in 0..=2 {
                    for f in all_cochains(&act, n, b).map_err(|e| e.to_string())? {
                        let df = differential(&act, &f).map_err(|e| e.to_string())?;
                        ensure(df.values() == d_oracle(&act, n, f.values()).as_slice(), "d disagrees with formula")?;
                        let ddf = differential(&act, &df).map_err(|e| e.to_string())?;
                        ensure(ddf.is_zero(), format!("d∘d ≠ 0 for G=Z/{gn}, A=Z/{an}, n={n}"))?;
                        exhaustive += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let k4 = Arc::new(FiniteGroup::direct_product(&cyc(2), &cyc(2)).unwrap());
    let z2z4 = Arc::new(FiniteGroup::direct_product(&cyc(2), &cyc(4)).unwrap());
    let mut modules: Vec<Arc<FiniteGroup>> = (1..=8).map(cyc).collect();
    modules.extend([k4, z2z4]);
    let mut pool: Vec<GAction> = Vec::new();
    for gn in 1..=6 {
        for a in &modules {
            pool.extend(cyclic_actions(&cyc(gn), a));
        }
    }
    for a in &modules {
        pool.push(sign_action(a));
    }
    for _ in 0..1000 {
        let act = pool.choose(&mut rng).unwrap();
        let n = rng.gen_range(0..=3);
        let len = act.acting_group().order().pow(n as u32);
        let values: Vec<usize> = (0..len).map(|_| rng.gen_range(0..act.module().order())).collect();
        let f = Cochain::new(act, n, values).map_err(|e| e.to_string())?;
        let df = differential(act, &f).map_err(|e| e.to_string())?;
        ensure(df.values() == d_oracle(act, n, f.values()).as_slice(), "d disagrees with formula")?;
        ensure(is_zero(&d_oracle(act, n + 1, df.values())), "d∘d ≠ 0 by formula")?;
        ensure(differential(act, &df).map_err(|e| e.to_string())?.is_zero(), "d∘d ≠ 0 on a random cochain")?;
    }
    Ok(format!("{exhaustive} exhaustive cochains, 1000 random over {} modules", pool.len()))
}

fn criterion_2(cfg: &Config) -> Outcome {
    let b = Budget::DEFAULT;
    let mut count = 0;
    let (mut s3, mut d4) = (false, false);
    for (name, act) in &cfg.actions {
        let brute = enumerate_z1_bruteforce(act, b).map_err(|e| e.to_string())?;
        let gens = act.acting_group().generating_set();
        let fast = enumerate_z1_backtracking(act, &gens, b).map_err(|e| e.to_string())?;
        ensure(brute == fast, format!("{name}: enumerators differ"))?;
        let m = act.module();
        s3 |= m.order() == 6 && !m.is_abelian();
        d4 |= m.order() == 8 && !m.is_abelian();
        count += 1;
    }
    ensure(count >= 10 && s3 && d4, "need ≥ 10 triples with S₃ and D₄ coefficients")?;
    Ok(format!("{count} triples"))
}

/// Cocycles and orbits straight from the definitions.
fn h1_oracle(act: &GAction) -> usize {
    let g = act.acting_group();
    let a = act.module();
    let k = g.order();
    let mut z1: BTreeSet<Vec<usize>> = BTreeSet::new();
    for code in 0..a.order().pow(k as u32) {
        let v: Vec<usize> = (0..k).map(|i| code / a.order().pow(i as u32) % a.order()).collect();
        let cocycle = g
            .elements()
            .all(|s| g.elements().all(|t| v[g.mul(s, t)] == a.mul(v[s], act.act(s, v[t]))));
        if cocycle {
            z1.insert(v);
        }
    }
    let mut classes = 0;
    while let Some(first) = z1.pop_first() {
        for x in a.elements() {
            let moved: Vec<usize> = g.elements().map(|s| a.mul(a.mul(a.inv(x), first[s]), act.act(s, x))).collect();
            z1.remove(&moved);
        }
        classes += 1;
    }
    classes
}

fn h2_oracle(act: &GAction) -> usize {
    let a = act.module();
    let k = act.acting_group().order();
    let decode = |code: usize, len: usize| -> Vec<usize> { (0..len).map(|i| code / a.order().pow(i as u32) % a.order()).collect() };
    let z2 = (0..a.order().pow((k * k) as u32))
        .filter(|&c| is_zero(&d_oracle(act, 2, &decode(c, k * k))))
        .count();
    let b2: BTreeSet<Vec<usize>> = (0..a.order().pow(k as u32)).map(|c| d_oracle(act, 1, &decode(c, k))).collect();
    z2 / b2.len()
}

fn criterion_3(cfg: &Config) -> Outcome {
    let b = Budget::DEFAULT;
    let inv23 = cfg.action("inv23").map_err(|e| e.to_string())?;
    let triv22 = cfg.action("triv22").map_err(|e| e.to_string())?;
    let h1_inv = h1(inv23, b).map_err(|e| e.to_string())?.len();
    let h1_triv = h1(triv22, b).map_err(|e| e.to_string())?.len();
    let h2_triv = h_n(triv22, 2, b).map_err(|e| e.to_string())?.h_size();
    ensure(h1_inv == 1 && h1_oracle(inv23) == 1, format!("|H¹(Z/2, Z/3, inversion)| = {h1_inv}"))?;
    ensure(h1_triv == 2 && h1_oracle(triv22) == 2, format!("|H¹(Z/2, Z/2, trivial)| = {h1_triv}"))?;
    ensure(h2_triv == 2 && h2_oracle(triv22) == 2, format!("|H²(Z/2, Z/2, trivial)| = {h2_triv}"))?;
    for (name, act) in &cfg.actions {
        let direct: Vec<usize> = act
            .module()
            .elements()
            .filter(|&x| act.acting_group().elements().all(|s| act.act(s, x) == x))
            .collect();
        ensure(act.fixed_points().members() == direct.as_slice(), format!("{name}: A^G"))?;
        if act.module().is_abelian() {
            let h0: Vec<usize> = z_n(act, 0, b).map_err(|e| e.to_string())?.iter().map(|f| f.values()[0]).collect();
            ensure(h0 == direct, format!("{name}: H⁰ ≠ A^G"))?;
        }
    }
    Ok(format!("H¹ = 1, 2; H² = 2; H⁰ = A^G over {} actions", cfg.actions.len()))
}

/// Claims from `verify-all` that must pass with every configured action checked.
/// `allowed_skip` names the only checks that may be skipped for budget.
fn claim_criterion(cfg: &Config, claims: &[cohomlim::verify::Claim], index: usize, allowed_skip: Option<&str>) -> Outcome {
    let c = &claims[index];
    ensure(c.passed(), format!("{}: {:?}", c.name, c.failures))?;
    ensure(
        c.skipped.iter().all(|s| allowed_skip.is_some_and(|a| s.contains(a))),
        format!("{}: skipped {:?}", c.name, c.skipped),
    )?;
    ensure(c.checked >= cfg.actions.iter().filter(|(_, a)| index != 10 || a.module().is_abelian()).count(), "too few checks")?;
    Ok(format!("{} checks, {} skipped for budget", c.checked, c.skipped.len()))
}

fn criterion_6(cfg: &Config, claims: &[cohomlim::verify::Claim]) -> Outcome {
    let c = &claims[5];
    ensure(c.passed() && c.skipped.is_empty(), format!("{:?} {:?}", c.failures, c.skipped))?;
    ensure(c.checked == cfg.actions.len(), "every action has |Z¹| ≤ 10³ and must be checked")?;
    Ok(format!("{} actions, pairwise isomorphism ⇔ cohomologous", c.checked))
}

fn theta_check(cfg: &Config, system: &str, n: Option<usize>) -> Result<(), String> {
    let r = run(&Command::Theta { system: system.into(), n }, cfg, &Options::default()).map_err(|e| format!("{system}: {e}"))?;
    let v = &r.results;
    ensure(
        r.ok && v["well_defined"] == true && v["natural"] == true && v["bijective"] == true,
        format!("{system}: {v}"),
    )?;
    ensure(r.notes.iter().any(|n| n.contains("bijectivity is expected")), "report lacks the finite-poset note")?;
    if n == Some(2) {
        ensure(v["homomorphism"] == true, format!("{system}: Θ₂ not a homomorphism"))?;
    }
    Ok(())
}

fn criterion_7(cfg: &Config) -> Outcome {
    for s in ["two_adic", "two_adic_inv", "s3_derived"] {
        theta_check(cfg, s, None)?;
    }
    Ok("two_adic, two_adic_inv, s3_derived".into())
}

fn criterion_8(cfg: &Config) -> Outcome {
    for s in ["z4_z2", "z4_z2_inv"] {
        theta_check(cfg, s, Some(2))?;
    }
    Ok("z4_z2, z4_z2_inv".into())
}

fn criterion_9(cfg: &Config) -> Outcome {
    let opts = Options::default();
    for action in ["triv28", "inv28"] {
        let cmd = Command::Present {
            action: action.into(),
            chain: vec![8, 4, 2, 1],
            n: Some(2),
        };
        let r = run(&cmd, cfg, &opts).map_err(|e| e.to_string())?;
        ensure(r.ok && r.results["isomorphism"] == true, format!("{action}: {}", r.results))?;
    }
    let cmd = Command::DerivedTower {
        action: "conj_s3".into(),
        verify: true,
    };
    let r = run(&cmd, cfg, &opts).map_err(|e| e.to_string())?;
    ensure(r.ok && r.results["presentation"]["isomorphism"] == true, format!("conj_s3: {}", r.results))?;
    Ok("Z/8 2-adic chain (trivial, inversion), S₃ derived tower".into())
}

fn criterion_10(cfg: &Config) -> Outcome {
    let opts = Options::default();
    let mut towers = 0;
    for (name, entry) in &cfg.systems {
        let sys = &entry.system;
        if sys.poset().as_chain().is_none() || !sys.objects().iter().all(|o| o.module().is_abelian()) {
            continue;
        }
        let r = run(&Command::Lim1 { system: name.clone(), i: None }, cfg, &opts).map_err(|e| e.to_string())?;
        ensure(r.ok && r.results["lim1_size"] == 1, format!("{name}: {}", r.results))?;
        towers += 1;
    }
    for system in ["z4_z2", "z4_z2_inv"] {
        for i in 1..=2 {
            let r = run(&Command::Exactness { system: system.into(), i }, cfg, &opts).map_err(|e| e.to_string())?;
            ensure(r.ok, format!("{system} i={i}: {}", r.results))?;
        }
    }
    Ok(format!("lim¹ = 1 on {towers} towers; exact at i = 1, 2"))
}

fn criterion_12() -> Outcome {
    let demo = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/demo.json");
    let once = |format: &str| {
        Process::new(env!("CARGO_BIN_EXE_cohomlim"))
            .args(["verify-all", "--deterministic", "--format", format])
            .arg(&demo)
            .output()
            .map_err(|e| e.to_string())
    };
    for format in ["json", "table"] {
        let (a, b) = (once(format)?, once(format)?);
        ensure(a.status.success() && b.status.success(), "verify-all failed")?;
        ensure(a.stdout == b.stdout, format!("{format} reports differ"))?;
    }
    Ok("json and table reports byte-identical".into())
}

fn main() -> ExitCode {
    let cfg = demo();
    let claims = run_claims(&cfg, &Options::default());
    let criteria: Vec<Criterion<'_>> = vec![
        ("cochain complex law", Box::new(criterion_1)),
        ("enumerator equivalence", Box::new(|| criterion_2(&cfg))),
        ("classical values", Box::new(|| criterion_3(&cfg))),
        ("orbit-stabilizer", Box::new(|| claim_criterion(&cfg, &claims, 3, Some("degree 2")))),
        ("stabilizer of trivial cocycle = A^G", Box::new(|| claim_criterion(&cfg, &claims, 4, None))),
        ("torsor correspondence", Box::new(|| criterion_6(&cfg, &claims))),
        ("Θ₁ on towers", Box::new(|| criterion_7(&cfg))),
        ("Θ₂ on Z/4 → Z/2", Box::new(|| criterion_8(&cfg))),
        ("presentation as a limit", Box::new(|| criterion_9(&cfg))),
        ("lim¹ vanishing and exactness", Box::new(|| criterion_10(&cfg))),
        ("abelian/nonabelian agreement", Box::new(|| claim_criterion(&cfg, &claims, 10, None))),
        ("determinism", Box::new(criterion_12)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
