//! Towers of quotients `A/N_r` from chains of characteristic subgroups,
//! including the derived series, and the check that `A ≅ lim A/N_r`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::action::{GAction, CHARACTERISTIC_CHECK_MAX};
use crate::cochain::h_n;
use crate::group::{FiniteGroup, Subgroup};
use crate::h1::h1;
use crate::limit::{limit, theta_1, theta_n, InverseSystem, ThetaReport};
use crate::{Budget, Elem, Error, Result};

/// A decreasing chain `N₀ ⊇ N₁ ⊇ … ⊇ N_k = 1` of characteristic subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    chain: Vec<Subgroup>,
}

impl Filtration {
    /// Characteristicity is checked through `Aut(A)` when `|A|` is at most
    /// [`CHARACTERISTIC_CHECK_MAX`]; above that only normality is checked
    /// here and preservation by the action is checked when building towers.
    pub fn new(group: &FiniteGroup, chain: Vec<Subgroup>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::BottomNotTrivial);
        }
        for (i, n) in chain.iter().enumerate() {
            if n.parent_order() != group.order() {
                return Err(Error::InvalidArgument("subgroup belongs to another group"));
            }
            if i > 0 && !n.is_subset_of(&chain[i - 1]) {
                return Err(Error::NotNested(i));
            }
            let characteristic = if group.order() <= CHARACTERISTIC_CHECK_MAX {
                group.is_characteristic(n)?
            } else {
                n.is_normal(group)
            };
            if !characteristic {
                return Err(Error::FiltrationNotCharacteristic(i));
            }
        }
        if !chain.last().is_some_and(Subgroup::is_trivial) {
            return Err(Error::BottomNotTrivial);
        }
        Ok(Filtration { chain })
    }

    /// The derived series `A = A(0) ⊇ A(1) ⊇ … ⊇ 1`.
    pub fn derived(group: &FiniteGroup) -> Result<Self> {
        let series = group.derived_series();
        let last = series.last().expect("non-empty series");
        if !last.is_trivial() {
            return Err(Error::NotSolvable(last.order()));
        }
        Ok(Filtration { chain: series })
    }

    /// One characteristic subgroup per requested order. Candidates are the
    /// subgroups generated by at most two elements; each order must pick
    /// out exactly one of them.
    pub fn by_orders(group: &FiniteGroup, orders: &[usize]) -> Result<Self> {
        let mut candidates: BTreeSet<Subgroup> = BTreeSet::new();
        for x in group.elements() {
            for y in x..group.order() {
                candidates.insert(group.generated(&[x, y]));
            }
        }
        let mut chain = Vec::with_capacity(orders.len());
        for &k in orders {
            let mut hits = Vec::new();
            for c in candidates.iter().filter(|c| c.order() == k) {
                let ok = if group.order() <= CHARACTERISTIC_CHECK_MAX {
                    group.is_characteristic(c)?
                } else {
                    c.is_normal(group)
                };
                if ok {
                    hits.push(c.clone());
                }
            }
            match hits.len() {
                1 => chain.push(hits.pop().expect("one hit")),
                0 => return Err(Error::InvalidArgument("no characteristic subgroup of requested order")),
                _ => return Err(Error::InvalidArgument("several characteristic subgroups of requested order")),
            }
        }
        Self::new(group, chain)
    }

    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }
}

/// Tower over the chain entries: the top level is `A/N_last`, the bottom
/// `A/N_first`, transitions are the canonical projections.
fn tower_from_chain(act: &GAction, chain: &[Subgroup]) -> Result<InverseSystem> {
    let mut levels = Vec::with_capacity(chain.len());
    let mut projections = Vec::with_capacity(chain.len());
    let mut reps = Vec::with_capacity(chain.len());
    for n in chain.iter().rev() {
        let (ind, quot) = act.induced_on_quotient(n)?;
        levels.push(ind);
        projections.push(quot.projection);
        reps.push(quot.reps);
    }
    let maps: Vec<Vec<Elem>> = (0..levels.len().saturating_sub(1))
        .map(|k| reps[k].iter().map(|&x| projections[k + 1].apply(x)).collect())
        .collect();
    InverseSystem::tower(levels, &maps)
}

/// `A/N_k → … → A/N₀` with induced actions.
pub fn filtration_tower(act: &GAction, filtration: &Filtration) -> Result<InverseSystem> {
    tower_from_chain(act, filtration.chain())
}

/// `A = A/A(k) → … → A/A(1)` for solvable `A`.
pub fn derived_tower(act: &GAction) -> Result<InverseSystem> {
    let filtration = Filtration::derived(act.module())?;
    tower_from_chain(act, &filtration.chain()[1..])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub levels: Vec<usize>,
    pub limit_order: usize,
    /// `x ↦ (x mod N_r)` is a bijection `A → lim`.
    pub bijective: bool,
    pub homomorphism: bool,
    pub equivariant: bool,
    pub direct_h1_size: usize,
    pub theta_1: ThetaReport,
    /// `(Θₙ report, |Hⁿ(G, A)|)` when requested.
    pub theta_n: Option<(ThetaReport, usize)>,
}

impl PresentationReport {
    pub fn isomorphism(&self) -> bool {
        self.bijective && self.homomorphism && self.equivariant
    }

    pub fn holds(&self) -> bool {
        let h1_ok = self.theta_1.holds() && self.theta_1.source_size == self.direct_h1_size;
        let hn_ok = self
            .theta_n
            .as_ref()
            .is_none_or(|(t, direct)| t.holds() && t.source_size == *direct);
        self.isomorphism() && h1_ok && hn_ok
    }
}

/// Checks the canonical map `A → lim(tower)` is an equivariant isomorphism,
/// then compares `Θ₁` (and optionally `Θₙ`) with `H(G, A)` computed directly.
///
/// `tower` must come from a chain with trivial bottom, with level `0` equal
/// to `A` modulo that bottom.
pub fn verify_presentation(
    act: &GAction,
    tower: &InverseSystem,
    degree: Option<usize>,
    budget: Budget,
) -> Result<PresentationReport> {
    let a = act.module();
    let lim = limit(tower, budget)?;
    let top = tower.objects()[0].module();
    if top.order() != a.order() {
        return Err(Error::BottomNotTrivial);
    }
    // level 0 is A/1 on minimal representatives, i.e. A with the same labels
    let canonical: Vec<Option<Elem>> = a
        .elements()
        .map(|x| {
            let tuple: Vec<Elem> = (0..tower.poset().size())
                .map(|r| tower.transition(0, r).map(|phi| phi.apply(x)).unwrap_or(usize::MAX))
                .collect();
            lim.index_of(&tuple)
        })
        .collect();
    let mut hit = alloc::vec![false; lim.group().order()];
    let mut bijective = canonical.len() == lim.group().order();
    for c in &canonical {
        match c {
            Some(i) if !core::mem::replace(&mut hit[*i], true) => {}
            _ => bijective = false,
        }
    }
    let image = |x: Elem| canonical[x].unwrap_or(usize::MAX);
    let homomorphism = bijective
        && a.elements()
            .all(|x| a.elements().all(|y| image(a.mul(x, y)) == lim.group().mul(image(x), image(y))));
    let equivariant = bijective
        && act.acting_group().elements().all(|s| {
            a.elements()
                .all(|x| image(act.act(s, x)) == lim.action().act(s, image(x)))
        });
    let theta = theta_1(tower, budget)?;
    let direct_h1_size = h1(act, budget)?.len();
    let theta_n = match degree {
        Some(n) => Some((theta_n(tower, n, budget)?, h_n(act, n, budget)?.h_size())),
        None => None,
    };
    Ok(PresentationReport {
        levels: tower.objects().iter().map(|o| o.module().order()).collect(),
        limit_order: lim.group().order(),
        bijective,
        homomorphism,
        equivariant,
        direct_h1_size,
        theta_1: theta,
        theta_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn derived_towers() {
        let z6 = cyc(6);
        let act = GAction::trivial(cyc(2), z6);
        let sys = derived_tower(&act).unwrap();
        assert_eq!(sys.objects().len(), 1);
        assert_eq!(sys.objects()[0].module().order(), 6);

        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let sys = derived_tower(&GAction::conjugation(s3)).unwrap();
        let orders: Vec<usize> = sys.objects().iter().map(|o| o.module().order()).collect();
        assert_eq!(orders, [6, 2]);

        let s5 = Arc::new(FiniteGroup::symmetric(5).unwrap());
        let act = GAction::trivial(Arc::new(FiniteGroup::trivial()), s5);
        assert_eq!(derived_tower(&act).unwrap_err(), Error::NotSolvable(60));
    }

    #[test]
    fn filtration_towers() {
        let z8 = cyc(8);
        let act = GAction::inversion(cyc(2), z8.clone()).unwrap();
        let f = Filtration::by_orders(&z8, &[8, 4, 2, 1]).unwrap();
        let sys = filtration_tower(&act, &f).unwrap();
        let orders: Vec<usize> = sys.objects().iter().map(|o| o.module().order()).collect();
        assert_eq!(orders, [8, 4, 2, 1]);

        let whole = Filtration::new(&z8, alloc::vec![Subgroup::whole(&z8), Subgroup::trivial(&z8)]).unwrap();
        let sys = filtration_tower(&act, &whole).unwrap();
        let orders: Vec<usize> = sys.objects().iter().map(|o| o.module().order()).collect();
        assert_eq!(orders, [8, 1]);
    }

    #[test]
    fn filtration_errors() {
        let k4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap())
            .unwrap();
        let factor = Subgroup::from_members(&k4, &[0, 1]).unwrap();
        let chain = alloc::vec![Subgroup::whole(&k4), factor, Subgroup::trivial(&k4)];
        assert_eq!(Filtration::new(&k4, chain), Err(Error::FiltrationNotCharacteristic(1)));

        let z8 = FiniteGroup::cyclic(8).unwrap();
        let four = z8.generated(&[2]);
        let chain = alloc::vec![Subgroup::trivial(&z8), four.clone()];
        assert_eq!(Filtration::new(&z8, chain), Err(Error::NotNested(1)));
        assert_eq!(
            Filtration::new(&z8, alloc::vec![Subgroup::whole(&z8), four]),
            Err(Error::BottomNotTrivial)
        );
    }

    #[test]
    fn presentations() {
        let b = Budget::DEFAULT;
        let z8 = cyc(8);
        let act = GAction::inversion(cyc(2), z8.clone()).unwrap();
        let f = Filtration::by_orders(&z8, &[8, 4, 2, 1]).unwrap();
        let sys = filtration_tower(&act, &f).unwrap();
        let rep = verify_presentation(&act, &sys, Some(2), b).unwrap();
        assert!(rep.isomorphism());
        assert!(rep.holds(), "{rep:?}");

        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let act = GAction::conjugation(s3);
        let sys = derived_tower(&act).unwrap();
        let rep = verify_presentation(&act, &sys, None, b).unwrap();
        assert!(rep.holds(), "{rep:?}");

        let act = GAction::trivial(cyc(2), cyc(5));
        let f = Filtration::new(act.module(), alloc::vec![Subgroup::whole(act.module()), Subgroup::trivial(act.module())])
            .unwrap();
        let rep = verify_presentation(&act, &filtration_tower(&act, &f).unwrap(), None, b).unwrap();
        assert!(rep.holds());
    }
}
