use std::collections::BTreeSet;

use cohomlim_core::cochain::{b_n, h_n, z_n, CohomologyGroup};
use cohomlim_core::filtration::{derived_tower, filtration_tower, verify_presentation, PresentationReport};
use cohomlim_core::h1::{enumerate_z1_bruteforce, h1};
use cohomlim_core::limit::{
    cohomology_tower, exact_sequence_check, lim1_tower, theta_1, theta_n, AbelianTower, Lim1Report, ThetaReport,
    THETA_NOTES,
};
use cohomlim_core::torsor::{classify, Torsor};
use cohomlim_core::{Budget, Filtration, GAction};
use serde_json::{json, Value};

use crate::config::{group_json, Config};
use crate::report::Report;
use crate::verify::{h1_partition_oracle, verify_all};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    H1 { action: String },
    Hn { action: String, n: usize },
    Torsors { action: String, classify: bool },
    Theta { system: String, n: Option<usize> },
    Lim1 { system: String, i: Option<usize> },
    Exactness { system: String, i: usize },
    DerivedTower { action: String, verify: bool },
    Present { action: String, chain: Vec<usize>, n: Option<usize> },
    VerifyAll,
}

impl Command {
    pub fn echo(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::H1 { action } => format!("h1 --action {action}"),
            Command::Hn { action, n } => format!("hn --action {action} --n {n}"),
            Command::Torsors { action, classify } => {
                format!("torsors --action {action}{}", if *classify { " --classify" } else { "" })
            }
            Command::Theta { system, n } => match n {
                Some(n) => format!("theta --system {system} --n {n}"),
                None => format!("theta --system {system}"),
            },
            Command::Lim1 { system, i } => match i {
                Some(i) => format!("lim1 --system {system} --i {i}"),
                None => format!("lim1 --system {system}"),
            },
            Command::Exactness { system, i } => format!("exactness --system {system} --i {i}"),
            Command::DerivedTower { action, verify } => {
                format!("derived-tower --action {action}{}", if *verify { " --verify" } else { "" })
            }
            Command::Present { action, chain, n } => {
                let orders: Vec<String> = chain.iter().map(usize::to_string).collect();
                let mut s = format!("present --action {action} --chain orders={}", orders.join(","));
                if let Some(n) = n {
                    s.push_str(&format!(" --n {n}"));
                }
                s
            }
            Command::VerifyAll => "verify-all".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub budget: Budget,
    /// Cross-check results against brute-force computations.
    pub oracle: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: Budget::DEFAULT,
            oracle: false,
            seed: 0,
        }
    }
}

/// Parses `orders=8,4,2,1`.
pub fn parse_chain(s: &str) -> Result<Vec<usize>, CliError> {
    let list = s
        .strip_prefix("orders=")
        .ok_or_else(|| CliError::Usage(format!("expected orders=N,N,..., got {s:?}")))?;
    list.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad order {x:?} in {s:?}")))
        })
        .collect()
}

pub fn run(cmd: &Command, cfg: &Config, opts: &Options) -> Result<Report, CliError> {
    let b = opts.budget;
    let echo = cmd.echo();
    match cmd {
        Command::Validate => Ok(validate(cfg, echo)),
        Command::H1 { action } => h1_report(cfg.action(action)?, echo, opts),
        Command::Hn { action, n } => hn_report(cfg.action(action)?, *n, echo, opts),
        Command::Torsors { action, classify } => torsor_report(cfg.action(action)?, *classify, echo, b),
        Command::Theta { system, n } => {
            let sys = &cfg.system(system)?.system;
            let t = match n {
                None | Some(1) => theta_1(sys, b)?,
                Some(n) => theta_n(sys, *n, b)?,
            };
            Ok(Report::new(echo, t.holds(), theta_json(&t)).with_notes(THETA_NOTES))
        }
        Command::Lim1 { system, i } => {
            let sys = &cfg.system(system)?.system;
            let tower = match i {
                None => AbelianTower::from_system(sys)?,
                Some(0) => return Err(CliError::Usage("--i must be at least 1".into())),
                Some(i) => cohomology_tower(sys, i - 1, b)?,
            };
            let r = lim1_tower(&tower, b)?;
            let mut v = lim1_json(&r);
            v["levels"] = tower.groups().iter().map(|g| g.order()).collect::<Vec<_>>().into();
            Ok(Report::new(echo, r.trivial(), v).with_notes(["finite towers satisfy Mittag-Leffler, so lim¹ is expected to vanish"]))
        }
        Command::Exactness { system, i } => {
            let r = exact_sequence_check(&cfg.system(system)?.system, *i, b)?;
            let v = json!({
                "i": r.degree,
                "lim1": lim1_json(&r.lim1),
                "theta": theta_json(&r.theta),
                "exact": r.holds(),
            });
            Ok(Report::new(echo, r.holds(), v).with_notes(THETA_NOTES))
        }
        Command::DerivedTower { action, verify } => {
            let act = cfg.action(action)?;
            let sys = derived_tower(act)?;
            let levels: Vec<usize> = sys.objects().iter().map(|o| o.module().order()).collect();
            let series: Vec<usize> = act.module().derived_series().iter().map(|n| n.order()).collect();
            let mut v = json!({ "levels": levels, "derived_series": series });
            let mut ok = true;
            if *verify {
                let degree = act.module().is_abelian().then_some(2);
                let p = verify_presentation(act, &sys, degree, b)?;
                ok = p.holds();
                v["presentation"] = presentation_json(&p);
            }
            Ok(Report::new(echo, ok, v).with_notes(THETA_NOTES))
        }
        Command::Present { action, chain, n } => {
            let act = cfg.action(action)?;
            let f = Filtration::by_orders(act.module(), chain)?;
            let sys = filtration_tower(act, &f)?;
            let p = verify_presentation(act, &sys, *n, b)?;
            Ok(Report::new(echo, p.holds(), presentation_json(&p)).with_notes(THETA_NOTES))
        }
        Command::VerifyAll => Ok(verify_all(cfg, opts)),
    }
}

fn validate(cfg: &Config, echo: String) -> Report {
    let groups: serde_json::Map<String, Value> =
        cfg.groups.iter().map(|(k, g)| (k.clone(), group_json(g))).collect();
    let actions: serde_json::Map<String, Value> = cfg
        .actions
        .iter()
        .map(|(k, a)| {
            let v = json!({
                "g_order": a.acting_group().order(),
                "a_order": a.module().order(),
                "abelian": a.module().is_abelian(),
                "table": a.rows(),
            });
            (k.clone(), v)
        })
        .collect();
    let systems: serde_json::Map<String, Value> = cfg
        .systems
        .iter()
        .map(|(k, s)| {
            let levels: Vec<usize> = s.system.objects().iter().map(|o| o.module().order()).collect();
            (k.clone(), json!({ "levels": levels }))
        })
        .collect();
    let filtrations: serde_json::Map<String, Value> = cfg
        .filtrations
        .iter()
        .map(|(k, f)| {
            let orders: Vec<usize> = f.filtration.chain().iter().map(|n| n.order()).collect();
            (k.clone(), json!({ "orders": orders }))
        })
        .collect();
    let mut r = Report::new(
        echo,
        true,
        json!({ "groups": groups, "actions": actions, "systems": systems, "filtrations": filtrations }),
    );
    if cfg.is_empty() {
        r.warnings.push("config declares no actions or systems".into());
    }
    r
}

fn h1_report(act: &GAction, echo: String, opts: &Options) -> Result<Report, CliError> {
    let h = h1(act, opts.budget)?;
    let classes: Vec<Value> = h
        .classes()
        .iter()
        .map(|c| json!({ "size": c.size(), "stab_size": c.stabilizer_order, "rep": c.rep().values() }))
        .collect();
    let mut v = json!({ "z1_size": h.z1_size(), "classes": classes, "base_class": h.base_class() });
    let mut ok = true;
    if opts.oracle {
        let brute = enumerate_z1_bruteforce(act, opts.budget)?;
        let partition = h1_partition_oracle(act, opts.budget)?;
        let ours: BTreeSet<BTreeSet<Vec<usize>>> = h
            .classes()
            .iter()
            .map(|c| c.members.iter().map(|a| a.values().to_vec()).collect())
            .collect();
        let z1_agrees = brute.iter().eq(h.cocycles());
        let classes_agree = ours == partition;
        ok = z1_agrees && classes_agree;
        v["oracle"] = json!({
            "bruteforce_z1_size": brute.len(),
            "z1_agrees": z1_agrees,
            "classes_agree": classes_agree,
        });
    }
    Ok(Report::new(echo, ok, v))
}

fn hn_report(act: &GAction, n: usize, echo: String, opts: &Options) -> Result<Report, CliError> {
    let h = h_n(act, n, opts.budget)?;
    let mut v = hn_json(&h);
    let mut ok = true;
    if opts.oracle {
        let z: BTreeSet<_> = z_n(act, n, opts.budget)?.into_iter().collect();
        let b = b_n(act, n, opts.budget)?;
        let b_in_z = b.is_subset(&z);
        let lagrange = z.len() == b.len() * h.h_size();
        let (low_degree, low_ok) = match n {
            0 => ("fixed_points", act.fixed_points().order() == h.h_size()),
            1 => ("h1_orbits", h1(act, opts.budget)?.len() == h.h_size()),
            _ => ("none", true),
        };
        ok = b_in_z && lagrange && low_ok;
        v["oracle"] = json!({
            "b_in_z": b_in_z,
            "index_matches": lagrange,
            "low_degree_check": low_degree,
            "low_degree_agrees": low_ok,
        });
    }
    Ok(Report::new(echo, ok, v))
}

fn torsor_report(act: &GAction, classify_flag: bool, echo: String, b: Budget) -> Result<Report, CliError> {
    let h = h1(act, b)?;
    let z1: Vec<_> = h.cocycles().cloned().collect();
    let mut valid = true;
    for a in &z1 {
        valid &= Torsor::from_cocycle(act, a).validate(act).is_ok();
    }
    let mut v = json!({ "torsors": z1.len(), "all_valid": valid, "h1_size": h.len() });
    let mut ok = valid;
    if classify_flag {
        let classes = classify(act, &z1)?;
        let matches = classes.len() == h.len()
            && classes.iter().all(|c| {
                let k = h.class_of(&c[0]);
                c.iter().all(|a| h.class_of(a) == k) && c.len() == k.map_or(0, |k| h.classes()[k].size())
            });
        v["classes"] = classes
            .iter()
            .map(|c| json!({ "size": c.len(), "rep": c.iter().min().expect("non-empty class").values() }))
            .collect::<Vec<_>>()
            .into();
        v["count"] = classes.len().into();
        v["matches_h1"] = matches.into();
        ok &= matches;
    }
    Ok(Report::new(echo, ok, v))
}

pub(crate) fn hn_json(h: &CohomologyGroup) -> Value {
    json!({
        "n": h.degree(),
        "z": h.z_size(),
        "b": h.b_size(),
        "h": h.h_size(),
        "orders": h.element_orders(),
    })
}

pub(crate) fn theta_json(t: &ThetaReport) -> Value {
    json!({
        "degree": t.degree,
        "limit_order": t.limit_order,
        "source_size": t.source_size,
        "level_sizes": t.level_sizes,
        "target_size": t.target.len(),
        "well_defined": t.well_defined,
        "natural": t.natural,
        "injective": t.injective,
        "surjective": t.surjective,
        "bijective": t.bijective(),
        "homomorphism": t.homomorphism,
    })
}

pub(crate) fn lim1_json(r: &Lim1Report) -> Value {
    json!({
        "product_size": r.product_size,
        "codomain_size": r.codomain_size,
        "lim_size": r.kernel_size,
        "image_size": r.image_size,
        "lim1_size": r.lim1_size,
        "trivial": r.trivial(),
    })
}

pub(crate) fn presentation_json(p: &PresentationReport) -> Value {
    let mut v = json!({
        "levels": p.levels,
        "limit_order": p.limit_order,
        "bijective": p.bijective,
        "homomorphism": p.homomorphism,
        "equivariant": p.equivariant,
        "isomorphism": p.isomorphism(),
        "h1_direct": p.direct_h1_size,
        "theta_1": theta_json(&p.theta_1),
    });
    if let Some((t, direct)) = &p.theta_n {
        v["theta_n"] = theta_json(t);
        v["hn_direct"] = (*direct).into();
    }
    v
}
