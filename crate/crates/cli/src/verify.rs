//! `verify-all`: every invariant suite over every configured object, one
//! summary entry per claim.

use std::collections::BTreeSet;

use cohomlim_core::cochain::{all_cochains, b_n, differential, h_n, orbit_n, stab_n, z_n, Cochain};
use cohomlim_core::filtration::verify_presentation;
use cohomlim_core::h1::{enumerate_z1, enumerate_z1_bruteforce, h1, orbit, stabilizer};
use cohomlim_core::limit::{exact_sequence_check, lim1_tower, theta_1, theta_n, AbelianTower, THETA_NOTES};
use cohomlim_core::torsor::{classify, Torsor};
use cohomlim_core::{Budget, Cocycle1, Error, GAction, InverseSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::Options;
use crate::config::Config;
use crate::report::Report;

const EXHAUSTIVE_COCHAINS: u128 = 1 << 12;
const RANDOM_COCHAINS: usize = 64;
const TORSOR_Z1_MAX: usize = 1000;

/// Outcome of one claim across all configured objects.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Claim {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub skipped: Vec<String>,
}

impl Claim {
    fn new(name: &'static str) -> Self {
        Claim {
            name,
            ..Claim::default()
        }
    }

    fn record(&mut self, what: impl Into<String>, outcome: Result<bool, Error>) {
        let what = what.into();
        match outcome {
            Ok(true) => self.checked += 1,
            Ok(false) => {
                self.checked += 1;
                self.failures.push(what);
            }
            Err(e @ Error::BudgetExceeded { .. }) => self.skipped.push(format!("{what}: {e}")),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{what}: {e}"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn to_value(&self) -> Value {
        json!({
            "claim": self.name,
            "checked": self.checked,
            "passed": self.passed(),
            "failures": self.failures,
            "skipped": self.skipped,
        })
    }
}

type Suite = fn(&Config, &Options) -> Claim;

pub const CLAIMS: [(&str, Suite); 11] = [
    ("cochain complex: d∘d = 0", cochain_complex),
    ("backtracking and brute-force Z¹ agree", enumerators),
    ("H⁰ = A^G and H¹, Hⁿ match brute force", classical_values),
    ("orbit-stabilizer in degrees 1 and n", orbit_stabilizer),
    ("stabilizer of the trivial cocycle is A^G", trivial_stabilizer),
    ("torsor classes biject with H¹", torsors),
    ("Θ₁ bijective on every system", theta_one),
    ("Θ₂ bijective group isomorphism on abelian systems", theta_two),
    ("A ≅ lim of its quotient tower", presentations),
    ("lim¹ vanishes and the exact sequence holds", lim1_exactness),
    ("orbit and coset partitions of H¹ agree", abelian_agreement),
];

/// Runs every claim; claims run in parallel and are reported in a fixed order.
pub fn run_claims(cfg: &Config, opts: &Options) -> Vec<Claim> {
    CLAIMS.par_iter().map(|(_, suite)| suite(cfg, opts)).collect()
}

pub fn verify_all(cfg: &Config, opts: &Options) -> Report {
    let claims = run_claims(cfg, opts);
    let failed = claims.iter().filter(|c| !c.passed()).count();
    let skipped: usize = claims.iter().map(|c| c.skipped.len()).sum();
    let results = json!({
        "claims": claims.iter().map(Claim::to_value).collect::<Vec<_>>(),
        "seed": opts.seed,
        "budget": opts.budget.0,
        "summary": { "claims": claims.len(), "failed": failed, "skipped_checks": skipped },
    });
    let mut r = Report::new("verify-all", failed == 0, results).with_notes(THETA_NOTES);
    if cfg.is_empty() {
        r.warnings.push("config declares no actions or systems; nothing was checked".into());
    }
    if skipped > 0 {
        r.warnings.push(format!("{skipped} checks skipped for exceeding the budget"));
    }
    r
}

fn abelian(act: &GAction) -> bool {
    act.module().is_abelian()
}

fn abelian_system(sys: &InverseSystem) -> bool {
    sys.objects().iter().all(abelian)
}

fn count_cochains(act: &GAction, n: usize) -> u128 {
    let len = (act.acting_group().order() as u128).saturating_pow(n as u32);
    (act.module().order() as u128).saturating_pow(len.min(u32::MAX as u128) as u32)
}

/// H¹ classes by brute force: `Z¹` by exhaustive search, orbits by applying
/// `a_s ↦ x⁻¹ a_s ˢx` straight from the tables.
pub fn h1_partition_oracle(act: &GAction, budget: Budget) -> Result<BTreeSet<BTreeSet<Vec<usize>>>, Error> {
    let a = act.module();
    let mut left: BTreeSet<Vec<usize>> = enumerate_z1_bruteforce(act, budget)?
        .into_iter()
        .map(|c| c.values().to_vec())
        .collect();
    let mut classes = BTreeSet::new();
    while let Some(first) = left.pop_first() {
        let class: BTreeSet<Vec<usize>> = a
            .elements()
            .map(|x| {
                first
                    .iter()
                    .enumerate()
                    .map(|(s, &v)| a.mul(a.mul(a.inv(x), v), act.act(s, x)))
                    .collect()
            })
            .collect();
        for c in &class {
            left.remove(c);
        }
        classes.insert(class);
    }
    Ok(classes)
}

fn cochain_complex(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[0].0);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (name, act) in cfg.actions.iter().filter(|(_, a)| abelian(a)) {
        let g = act.acting_group().order();
        let m = act.module().order();
        for n in 0..=3usize {
            if n <= 2 && count_cochains(act, n) <= EXHAUSTIVE_COCHAINS {
                let outcome = all_cochains(act, n, opts.budget).and_then(|fs| {
                    for f in fs {
                        if !differential(act, &differential(act, &f)?)?.is_zero() {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
                claim.record(format!("{name}: all {n}-cochains"), outcome);
            }
            let work = (g as u128).pow(n as u32 + 2) * (n as u128 + 3);
            if work > opts.budget.0 as u128 / RANDOM_COCHAINS as u128 {
                claim.skipped.push(format!("{name}: random {n}-cochains: too large"));
                continue;
            }
            let len = g.pow(n as u32);
            let outcome = (0..RANDOM_COCHAINS).try_fold(true, |ok, _| {
                let values = (0..len).map(|_| rng.gen_range(0..m)).collect();
                let f = Cochain::new(act, n, values)?;
                Ok(ok && differential(act, &differential(act, &f)?)?.is_zero())
            });
            claim.record(format!("{name}: {RANDOM_COCHAINS} random {n}-cochains"), outcome);
        }
    }
    claim
}

fn enumerators(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[1].0);
    for (name, act) in &cfg.actions {
        let outcome = (|| Ok(enumerate_z1_bruteforce(act, opts.budget)? == enumerate_z1(act, opts.budget)?))();
        claim.record(name.clone(), outcome);
    }
    claim
}

fn classical_values(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[2].0);
    let b = opts.budget;
    for (name, act) in &cfg.actions {
        let direct: Vec<usize> = act
            .module()
            .elements()
            .filter(|&x| act.acting_group().elements().all(|s| act.act(s, x) == x))
            .collect();
        let outcome = if abelian(act) {
            z_n(act, 0, b).map(|z0| z0.iter().map(|f| f.values()[0]).collect::<Vec<_>>() == direct)
        } else {
            Ok(act.fixed_points().members() == direct.as_slice())
        };
        claim.record(format!("{name}: H⁰ = A^G"), outcome);

        let outcome = (|| {
            let ours: BTreeSet<BTreeSet<Vec<usize>>> = h1(act, b)?
                .classes()
                .iter()
                .map(|c| c.members.iter().map(|a| a.values().to_vec()).collect())
                .collect();
            Ok(ours == h1_partition_oracle(act, b)?)
        })();
        claim.record(format!("{name}: H¹ classes"), outcome);

        if abelian(act) {
            for n in 1..=2 {
                let outcome = (|| {
                    let h = h_n(act, n, b)?;
                    let z: BTreeSet<Cochain> = z_n(act, n, b)?.into_iter().collect();
                    let bn = b_n(act, n, b)?;
                    Ok(bn.is_subset(&z) && z.len() == bn.len() * h.h_size())
                })();
                claim.record(format!("{name}: |H{n}| = |Z{n}|/|B{n}|"), outcome);
            }
        }
    }
    claim
}

fn orbit_stabilizer(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[3].0);
    let b = opts.budget;
    for (name, act) in &cfg.actions {
        let order = act.module().order();
        let outcome = enumerate_z1(act, b)
            .map(|z1| z1.iter().all(|a| orbit(act, a).len() * stabilizer(act, a).order() == order));
        claim.record(format!("{name}: degree 1"), outcome);
        if !abelian(act) {
            continue;
        }
        for n in 1..=2usize {
            let outcome = (|| {
                let zn = z_n(act, n, b)?;
                b.check((zn.len() as u128).saturating_mul(count_cochains(act, n - 1)))?;
                let target = count_cochains(act, n - 1);
                let bn = b_n(act, n, b)?;
                for a in &zn {
                    let orb = orbit_n(act, a, b)?;
                    let stab = stab_n(act, a, b)?;
                    if orb.len() != bn.len() || (orb.len() * stab.len()) as u128 != target {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            claim.record(format!("{name}: degree {n} cosets"), outcome);
        }
    }
    claim
}

fn trivial_stabilizer(cfg: &Config, _opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[4].0);
    for (name, act) in &cfg.actions {
        let stab = stabilizer(act, &Cocycle1::trivial(act));
        let a = act.module();
        let direct: Vec<usize> = a
            .elements()
            .filter(|&x| act.acting_group().elements().all(|s| a.mul(a.inv(x), act.act(s, x)) == 0))
            .collect();
        claim.record(name.clone(), Ok(stab == act.fixed_points() && stab.members() == direct.as_slice()));
    }
    claim
}

fn torsors(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[5].0);
    for (name, act) in &cfg.actions {
        let outcome = (|| {
            let h = h1(act, opts.budget)?;
            if h.z1_size() > TORSOR_Z1_MAX {
                return Err(Error::BudgetExceeded {
                    estimate: h.z1_size() as u128,
                    budget: TORSOR_Z1_MAX as u64,
                });
            }
            let z1: Vec<Cocycle1> = h.cocycles().cloned().collect();
            if classify(act, &z1)?.len() != h.len() {
                return Ok(false);
            }
            let torsors: Vec<Torsor> = z1.iter().map(|a| Torsor::from_cocycle(act, a)).collect();
            for (a, ta) in z1.iter().zip(&torsors) {
                ta.validate(act)?;
                for (c, tc) in z1.iter().zip(&torsors) {
                    let iso = ta.isomorphism_to(act, tc)?.is_some();
                    if iso != (h.class_of(a) == h.class_of(c)) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        claim.record(name.clone(), outcome);
    }
    claim
}

fn theta_one(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[6].0);
    for (name, entry) in &cfg.systems {
        claim.record(name.clone(), theta_1(&entry.system, opts.budget).map(|t| t.holds()));
    }
    claim
}

fn theta_two(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[7].0);
    for (name, entry) in cfg.systems.iter().filter(|(_, e)| abelian_system(&e.system)) {
        let outcome = theta_n(&entry.system, 2, opts.budget).map(|t| t.holds() && t.homomorphism == Some(true));
        claim.record(name.clone(), outcome);
    }
    claim
}

fn presentations(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[8].0);
    for (name, entry) in &cfg.systems {
        let Some(source) = &entry.source else { continue };
        let act = &cfg.actions[source];
        let degree = abelian(act).then_some(2);
        let outcome = verify_presentation(act, &entry.system, degree, opts.budget).map(|p| p.holds());
        claim.record(name.clone(), outcome);
    }
    claim
}

fn lim1_exactness(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[9].0);
    let towers = cfg
        .systems
        .iter()
        .filter(|(_, e)| abelian_system(&e.system) && e.system.poset().as_chain().is_some());
    for (name, entry) in towers {
        let sys = &entry.system;
        let outcome = AbelianTower::from_system(sys).and_then(|t| lim1_tower(&t, opts.budget)).map(|r| r.trivial());
        claim.record(format!("{name}: lim¹ of the coefficients"), outcome);
        for i in 1..=2 {
            let outcome = exact_sequence_check(sys, i, opts.budget).map(|r| r.holds());
            claim.record(format!("{name}: exactness at i = {i}"), outcome);
        }
    }
    claim
}

fn abelian_agreement(cfg: &Config, opts: &Options) -> Claim {
    let mut claim = Claim::new(CLAIMS[10].0);
    for (name, act) in cfg.actions.iter().filter(|(_, a)| abelian(a)) {
        let outcome = (|| {
            let orbits = h1(act, opts.budget)?;
            let cosets = h_n(act, 1, opts.budget)?;
            let by_orbit: BTreeSet<BTreeSet<Vec<usize>>> = orbits
                .classes()
                .iter()
                .map(|c| c.members.iter().map(|a| a.values().to_vec()).collect())
                .collect();
            let by_coset: BTreeSet<BTreeSet<Vec<usize>>> = cosets
                .classes()
                .iter()
                .map(|c| c.iter().map(|f| f.values().to_vec()).collect())
                .collect();
            Ok(by_orbit == by_coset)
        })();
        claim.record(name.clone(), outcome);
    }
    claim
}
