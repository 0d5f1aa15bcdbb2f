//! Config files: a single JSON document naming groups, actions, inverse
//! systems and filtrations.
//!
//! ```text
//! config      := { "budget"?: u64, "format"?: "json" | "table",
//!                  "groups"?: { name: group }, "actions"?: { name: action },
//!                  "systems"?: { name: system }, "filtrations"?: { name: filtration } }
//! group       := name | "trivial" | "cyclic:N" | "dihedral:N" | "symmetric:N"
//!              | "product:(group,group)" | { "order": N, "mul": [[..]] }
//! action      := { "g": group, "a": group, "kind": kind }
//! kind        := "trivial" | "inversion" | "conjugation"
//!              | { "table": [[..]] }      rows indexed by s ∈ G, columns by x ∈ A
//!              | { "inner": x }           generator 1 of G acts by conjugation by x
//! system      := { "g": group, "tower": [level, ..], "maps": [map, ..] }
//!              | { "g": group, "leq": [[bool]], "objects": [level, ..],
//!                  "transitions": [{ "from": r, "to": t, "image": [..] }, ..] }
//!              | { "derived": action-name }
//!              | { "filtration": filtration-name, "action": action-name }
//! level       := { "a": group, "action": kind }
//! map         := "reduce" | "identity" | { "image": [..] }
//! filtration  := { "group": group, "orders": [N, ..] } | { "group": group, "derived": true }
//!              | { "group": group, "subgroups": [[members], ..] }
//! ```
//!
//! Tower levels are listed from the top; `maps[i]` goes from level `i` to
//! level `i + 1`, and `"reduce"` sends `x` to `x mod |A_{i+1}|`. In general
//! systems `leq[i][j]` means `i ≤ j` and a transition goes from `from` down
//! to `to`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use cohomlim_core::filtration::{derived_tower, filtration_tower};
use cohomlim_core::group::GroupHom;
use cohomlim_core::{DirectedPoset, Filtration, FiniteGroup, GAction, InverseSystem, Subgroup};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table { order: usize, mul: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionKind {
    Named(String),
    Table { table: Vec<Vec<usize>> },
    Inner { inner: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAction {
    pub g: GroupSpec,
    pub a: GroupSpec,
    pub kind: ActionKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLevel {
    pub a: GroupSpec,
    pub action: ActionKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Named(String),
    Image { image: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTransition {
    pub from: usize,
    pub to: usize,
    pub image: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawSystem {
    Tower {
        g: GroupSpec,
        tower: Vec<RawLevel>,
        maps: Vec<MapSpec>,
    },
    Poset {
        g: GroupSpec,
        leq: Vec<Vec<bool>>,
        objects: Vec<RawLevel>,
        transitions: Vec<RawTransition>,
    },
    Derived {
        derived: String,
    },
    Filtration {
        filtration: String,
        action: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFiltration {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub derived: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<Vec<Vec<usize>>>,
}

/// The file as written, before references are resolved.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, RawAction>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub systems: BTreeMap<String, RawSystem>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filtrations: BTreeMap<String, RawFiltration>,
}

/// A validated system, remembering the action it was cut from, if any.
#[derive(Clone, Debug)]
pub struct SystemEntry {
    pub system: InverseSystem,
    pub source: Option<String>,
}

#[derive(Clone, Debug)]
pub struct FiltrationEntry {
    pub group: Arc<FiniteGroup>,
    pub filtration: Filtration,
}

/// A fully resolved and validated config.
#[derive(Clone, Debug)]
pub struct Config {
    pub raw: RawConfig,
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub actions: BTreeMap<String, GAction>,
    pub systems: BTreeMap<String, SystemEntry>,
    pub filtrations: BTreeMap<String, FiltrationEntry>,
}

pub fn parse_config(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<Config, CliError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    Config::from_raw(raw)
}

impl Config {
    pub fn empty() -> Self {
        Config::from_raw(RawConfig::default()).expect("empty config is valid")
    }

    pub fn from_raw(raw: RawConfig) -> Result<Self, CliError> {
        let mut resolver = Resolver {
            specs: &raw.groups,
            done: BTreeMap::new(),
            visiting: BTreeSet::new(),
        };
        let mut groups = BTreeMap::new();
        for name in raw.groups.keys() {
            groups.insert(name.clone(), resolver.named(name)?);
        }
        let mut actions = BTreeMap::new();
        for (name, spec) in &raw.actions {
            let g = resolver.group(&spec.g)?;
            let a = resolver.group(&spec.a)?;
            let act = build_action(g, a, &spec.kind).map_err(|e| e.context(format!("action {name}")))?;
            actions.insert(name.clone(), act);
        }
        let mut filtrations = BTreeMap::new();
        for (name, spec) in &raw.filtrations {
            let group = resolver.group(&spec.group)?;
            let filtration = build_filtration(&group, spec).map_err(|e| e.context(format!("filtration {name}")))?;
            filtrations.insert(name.clone(), FiltrationEntry { group, filtration });
        }
        let mut systems = BTreeMap::new();
        for (name, spec) in &raw.systems {
            let entry = build_system(&mut resolver, &actions, &filtrations, spec)
                .map_err(|e| e.context(format!("system {name}")))?;
            systems.insert(name.clone(), entry);
        }
        Ok(Config {
            raw,
            groups,
            actions,
            systems,
            filtrations,
        })
    }

    pub fn action(&self, name: &str) -> Result<&GAction, CliError> {
        self.actions
            .get(name)
            .ok_or_else(|| CliError::UnknownReference(format!("action {name}")))
    }

    pub fn system(&self, name: &str) -> Result<&SystemEntry, CliError> {
        self.systems
            .get(name)
            .ok_or_else(|| CliError::UnknownReference(format!("system {name}")))
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty() && self.systems.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.raw).expect("config serializes")
    }
}

/// `{"order": n, "mul": [[..]]}`, which parses back as a group spec.
pub fn group_json(g: &FiniteGroup) -> serde_json::Value {
    serde_json::json!({ "order": g.order(), "mul": g.rows() })
}

struct Resolver<'a> {
    specs: &'a BTreeMap<String, GroupSpec>,
    done: BTreeMap<String, Arc<FiniteGroup>>,
    visiting: BTreeSet<String>,
}

impl Resolver<'_> {
    fn named(&mut self, name: &str) -> Result<Arc<FiniteGroup>, CliError> {
        if let Some(g) = self.done.get(name) {
            return Ok(g.clone());
        }
        let spec = self
            .specs
            .get(name)
            .ok_or_else(|| CliError::UnknownReference(format!("group {name}")))?;
        if !self.visiting.insert(name.to_string()) {
            return Err(CliError::Validation(format!("group {name} is defined in terms of itself")));
        }
        let g = self.group(spec)?;
        self.visiting.remove(name);
        self.done.insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn group(&mut self, spec: &GroupSpec) -> Result<Arc<FiniteGroup>, CliError> {
        match spec {
            GroupSpec::Table { mul, order } => {
                if mul.len() != *order {
                    return Err(CliError::Validation(format!("table has {} rows, order is {order}", mul.len())));
                }
                Ok(Arc::new(FiniteGroup::from_table(mul)?))
            }
            GroupSpec::Named(s) => self.expr(s.trim()),
        }
    }

    fn expr(&mut self, s: &str) -> Result<Arc<FiniteGroup>, CliError> {
        if s == "trivial" {
            return Ok(Arc::new(FiniteGroup::trivial()));
        }
        let Some((kind, arg)) = s.split_once(':') else {
            return self.named(s);
        };
        let number = || {
            arg.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Validation(format!("bad group size in {s:?}")))
        };
        let g = match kind.trim() {
            "cyclic" => FiniteGroup::cyclic(number()?)?,
            "dihedral" => FiniteGroup::dihedral(number()?)?,
            "symmetric" => FiniteGroup::symmetric(number()?)?,
            "product" => {
                let inner = arg
                    .trim()
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| CliError::Validation(format!("product needs parentheses: {s:?}")))?;
                let (left, right) = split_top_level(inner)
                    .ok_or_else(|| CliError::Validation(format!("product needs two factors: {s:?}")))?;
                let left = self.expr(left.trim())?;
                let right = self.expr(right.trim())?;
                FiniteGroup::direct_product(&left, &right)?
            }
            _ => return Err(CliError::UnknownReference(format!("group constructor {kind}"))),
        };
        Ok(Arc::new(g))
    }
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn build_action(g: Arc<FiniteGroup>, a: Arc<FiniteGroup>, kind: &ActionKind) -> Result<GAction, CliError> {
    Ok(match kind {
        ActionKind::Named(k) => match k.as_str() {
            "trivial" => GAction::trivial(g, a),
            "inversion" => GAction::inversion(g, a)?,
            "conjugation" => {
                if *g != *a {
                    return Err(CliError::Validation("conjugation needs g and a to be the same group".into()));
                }
                GAction::conjugation(g)
            }
            other => return Err(CliError::UnknownReference(format!("action kind {other}"))),
        },
        ActionKind::Table { table } => GAction::new(g, a, table)?,
        ActionKind::Inner { inner } => {
            if *inner >= a.order() {
                return Err(CliError::Validation(format!("element {inner} is not in a group of order {}", a.order())));
            }
            let image: Vec<usize> = a.elements().map(|y| a.mul(a.mul(*inner, y), a.inv(*inner))).collect();
            let conj = GroupHom::new(&a, &a, image)?;
            if g.order() < 2 {
                return Err(CliError::Validation("inner action needs a non-trivial cyclic g".into()));
            }
            GAction::from_generator_images(g, a, &[1], &[conj])?
        }
    })
}

fn build_filtration(group: &FiniteGroup, spec: &RawFiltration) -> Result<Filtration, CliError> {
    match (&spec.orders, spec.derived, &spec.subgroups) {
        (Some(orders), false, None) => Ok(Filtration::by_orders(group, orders)?),
        (None, true, None) => Ok(Filtration::derived(group)?),
        (None, false, Some(subs)) => {
            let chain = subs
                .iter()
                .map(|m| Subgroup::from_members(group, m))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Filtration::new(group, chain)?)
        }
        _ => Err(CliError::Validation("filtration needs exactly one of orders, derived, subgroups".into())),
    }
}

fn build_level(
    resolver: &mut Resolver<'_>,
    g: &Arc<FiniteGroup>,
    level: &RawLevel,
) -> Result<GAction, CliError> {
    let a = resolver.group(&level.a)?;
    build_action(g.clone(), a, &level.action)
}

fn build_system(
    resolver: &mut Resolver<'_>,
    actions: &BTreeMap<String, GAction>,
    filtrations: &BTreeMap<String, FiltrationEntry>,
    spec: &RawSystem,
) -> Result<SystemEntry, CliError> {
    let lookup = |name: &str| {
        actions
            .get(name)
            .ok_or_else(|| CliError::UnknownReference(format!("action {name}")))
    };
    match spec {
        RawSystem::Tower { g, tower, maps } => {
            let g = resolver.group(g)?;
            let levels = tower
                .iter()
                .map(|l| build_level(resolver, &g, l))
                .collect::<Result<Vec<_>, _>>()?;
            if maps.len() + 1 != levels.len() {
                return Err(CliError::Validation(format!(
                    "{} levels need {} maps, got {}",
                    levels.len(),
                    levels.len().saturating_sub(1),
                    maps.len()
                )));
            }
            let images = maps
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let (src, tgt) = (levels[i].module().order(), levels[i + 1].module().order());
                    match m {
                        MapSpec::Named(k) if k == "reduce" => Ok((0..src).map(|x| x % tgt).collect()),
                        MapSpec::Named(k) if k == "identity" => Ok((0..src).collect()),
                        MapSpec::Named(k) => Err(CliError::UnknownReference(format!("map kind {k}"))),
                        MapSpec::Image { image } => Ok(image.clone()),
                    }
                })
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            Ok(SystemEntry {
                system: InverseSystem::tower(levels, &images)?,
                source: None,
            })
        }
        RawSystem::Poset {
            g,
            leq,
            objects,
            transitions,
        } => {
            let g = resolver.group(g)?;
            let poset = DirectedPoset::new(leq)?;
            let objects = objects
                .iter()
                .map(|l| build_level(resolver, &g, l))
                .collect::<Result<Vec<_>, _>>()?;
            let mut maps = BTreeMap::new();
            for t in transitions {
                let (Some(src), Some(tgt)) = (objects.get(t.from), objects.get(t.to)) else {
                    return Err(CliError::Validation(format!("transition {} -> {} out of range", t.from, t.to)));
                };
                let hom = GroupHom::new(src.module(), tgt.module(), t.image.clone())?;
                if maps.insert((t.from, t.to), hom).is_some() {
                    return Err(CliError::Validation(format!("transition {} -> {} given twice", t.from, t.to)));
                }
            }
            Ok(SystemEntry {
                system: InverseSystem::new(poset, objects, maps)?,
                source: None,
            })
        }
        RawSystem::Derived { derived } => Ok(SystemEntry {
            system: derived_tower(lookup(derived)?)?,
            source: Some(derived.clone()),
        }),
        RawSystem::Filtration { filtration, action } => {
            let act = lookup(action)?;
            let entry = filtrations
                .get(filtration)
                .ok_or_else(|| CliError::UnknownReference(format!("filtration {filtration}")))?;
            if *entry.group != **act.module() {
                return Err(CliError::Validation(format!("filtration {filtration} is on a different group")));
            }
            Ok(SystemEntry {
                system: filtration_tower(act, &entry.filtration)?,
                source: Some(action.clone()),
            })
        }
    }
}
