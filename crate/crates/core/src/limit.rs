//! Inverse systems of finite `G`-groups over finite directed posets, their
//! limits, the comparison maps `Θ: H(G, lim A_r) → lim H(G, A_r)` and `lim¹`
//! of towers of finite abelian groups.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::GAction;
use crate::cochain::{h_n, induced_class_map, require_abelian, CohomologyGroup};
use crate::group::{FiniteGroup, GroupHom};
use crate::h1::{h1, push_unchecked, pushforward_classes, H1Set};
use crate::{Budget, Elem, Error, Result};

/// Caveats attached to every comparison report.
pub const THETA_NOTES: [&str; 2] = [
    "finite directed posets have a greatest element, so bijectivity is expected; \
     both sides are computed independently and compared",
    "evenly continuous: automatic, finite discrete",
];

/// A finite partial order with `le(i, j)` meaning `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedPoset {
    size: usize,
    leq: Vec<bool>,
}

impl DirectedPoset {
    pub fn new(rows: &[Vec<bool>]) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::NotPoset("empty index set"));
        }
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::NotPoset("relation is not square"));
        }
        let p = DirectedPoset {
            size,
            leq: rows.concat(),
        };
        for i in 0..size {
            if !p.le(i, i) {
                return Err(Error::NotPoset("not reflexive"));
            }
            for j in 0..size {
                if i != j && p.le(i, j) && p.le(j, i) {
                    return Err(Error::NotPoset("not antisymmetric"));
                }
                for k in 0..size {
                    if p.le(i, j) && p.le(j, k) && !p.le(i, k) {
                        return Err(Error::NotPoset("not transitive"));
                    }
                }
                if !(0..size).any(|u| p.le(i, u) && p.le(j, u)) {
                    return Err(Error::NotDirected(i, j));
                }
            }
        }
        Ok(p)
    }

    /// The chain `0 > 1 > … > len−1`; index `0` is the top.
    pub fn chain(len: usize) -> Self {
        let leq = (0..len * len).map(|k| k / len >= k % len).collect();
        DirectedPoset { size: len, leq }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    pub fn greatest(&self) -> usize {
        (0..self.size)
            .find(|&m| (0..self.size).all(|i| self.le(i, m)))
            .expect("finite directed posets have a greatest element")
    }

    /// If the order is total, indices from the top down.
    pub fn as_chain(&self) -> Option<Vec<usize>> {
        let n = self.size;
        let total = (0..n).all(|i| (0..n).all(|j| self.le(i, j) || self.le(j, i)));
        total.then(|| self.top_down())
    }

    /// A linear extension listing larger indices first.
    fn top_down(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| ((0..self.size).filter(|&j| self.le(i, j)).count(), i));
        order
    }
}

/// Compatible tuples `(x_r)` with `f(r, t, x_r) = x_t` for all `r ≥ t`,
/// built by extending partial tuples one index at a time from the top.
/// Tuples are returned in index order, sorted.
pub fn compatible_tuples(
    poset: &DirectedPoset,
    sizes: &[usize],
    budget: Budget,
    f: impl Fn(usize, usize, Elem) -> Elem,
) -> Result<Vec<Vec<Elem>>> {
    let order = poset.top_down();
    let mut partial: Vec<Vec<Elem>> = vec![Vec::new()];
    for (k, &r) in order.iter().enumerate() {
        budget.check((partial.len() as u128) * (sizes[r] as u128))?;
        let placed = &order[..k];
        let mut next = Vec::new();
        for tuple in &partial {
            for y in 0..sizes[r] {
                let ok = placed.iter().zip(tuple).all(|(&p, &xp)| {
                    if poset.le(r, p) {
                        f(p, r, xp) == y
                    } else if poset.le(p, r) {
                        f(r, p, y) == xp
                    } else {
                        true
                    }
                });
                if ok {
                    let mut t = tuple.clone();
                    t.push(y);
                    next.push(t);
                }
            }
        }
        partial = next;
    }
    let mut out: Vec<Vec<Elem>> = partial
        .into_iter()
        .map(|t| {
            let mut full = vec![0; order.len()];
            for (&r, x) in order.iter().zip(t) {
                full[r] = x;
            }
            full
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Objects `A_r` with equivariant transitions `φ_{rt}: A_r → A_t` for `r ≥ t`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    poset: DirectedPoset,
    objects: Vec<GAction>,
    transitions: BTreeMap<(usize, usize), GroupHom>,
}

impl InverseSystem {
    /// Validates functoriality and equivariance exhaustively. Missing
    /// `φ_{rr}` are filled in as identities.
    pub fn new(
        poset: DirectedPoset,
        objects: Vec<GAction>,
        mut transitions: BTreeMap<(usize, usize), GroupHom>,
    ) -> Result<Self> {
        if objects.len() != poset.size() {
            return Err(Error::InvalidArgument("one object per poset index required"));
        }
        for (r, obj) in objects.iter().enumerate() {
            transitions
                .entry((r, r))
                .or_insert_with(|| GroupHom::identity(obj.module()));
        }
        let sys = InverseSystem {
            poset,
            objects,
            transitions,
        };
        sys.validate()?;
        Ok(sys)
    }

    /// Tower `levels[0] → levels[1] → …` with `maps[i]: levels[i] → levels[i+1]`
    /// given as image tables; longer transitions are composites.
    pub fn tower(levels: Vec<GAction>, maps: &[Vec<Elem>]) -> Result<Self> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(Error::InvalidArgument("tower needs one map between consecutive levels"));
        }
        let mut steps = Vec::with_capacity(maps.len());
        for (i, image) in maps.iter().enumerate() {
            steps.push(GroupHom::new(
                levels[i].module(),
                levels[i + 1].module(),
                image.clone(),
            )?);
        }
        let mut transitions = BTreeMap::new();
        for r in 0..levels.len() {
            let mut acc = GroupHom::identity(levels[r].module());
            transitions.insert((r, r), acc.clone());
            for (t, step) in steps.iter().enumerate().skip(r) {
                acc = acc.then(step);
                transitions.insert((r, t + 1), acc.clone());
            }
        }
        Self::new(DirectedPoset::chain(levels.len()), levels, transitions)
    }

    fn validate(&self) -> Result<()> {
        let n = self.poset.size();
        let g = self.objects[0].acting_group();
        if self.objects.iter().any(|o| !o.same_acting_group(&self.objects[0])) {
            return Err(Error::ActingGroupMismatch);
        }
        for r in 0..n {
            for t in 0..n {
                if !self.poset.le(t, r) {
                    continue;
                }
                let phi = self
                    .transitions
                    .get(&(r, t))
                    .ok_or(Error::MissingTransition { r, t })?;
                let (src, tgt) = (&self.objects[r], &self.objects[t]);
                if phi.source_order() != src.module().order()
                    || phi.target_order() != tgt.module().order()
                {
                    return Err(Error::InvalidArgument("transition has wrong shape"));
                }
                GroupHom::new(src.module(), tgt.module(), phi.image_table().to_vec())?;
                for s in g.elements() {
                    for x in src.module().elements() {
                        if phi.apply(src.act(s, x)) != tgt.act(s, phi.apply(x)) {
                            return Err(Error::TransitionNotEquivariant { r, t, s, x });
                        }
                    }
                }
            }
            let id = &self.transitions[&(r, r)];
            if let Some(x) = self.objects[r].module().elements().find(|&x| id.apply(x) != x) {
                return Err(Error::NotFunctorial { r, t: r, u: r, x });
            }
        }
        for r in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if !(self.poset.le(t, r) && self.poset.le(u, t)) {
                        continue;
                    }
                    let (rt, tu, ru) = (
                        &self.transitions[&(r, t)],
                        &self.transitions[&(t, u)],
                        &self.transitions[&(r, u)],
                    );
                    if let Some(x) = self.objects[r]
                        .module()
                        .elements()
                        .find(|&x| tu.apply(rt.apply(x)) != ru.apply(x))
                    {
                        return Err(Error::NotFunctorial { r, t, u, x });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &DirectedPoset {
        &self.poset
    }

    pub fn objects(&self) -> &[GAction] {
        &self.objects
    }

    pub fn acting_group(&self) -> &Arc<FiniteGroup> {
        self.objects[0].acting_group()
    }

    /// `φ_{rt}` for `r ≥ t`.
    pub fn transition(&self, r: usize, t: usize) -> Option<&GroupHom> {
        self.transitions.get(&(r, t))
    }

    fn transition_or_panic(&self, r: usize, t: usize) -> &GroupHom {
        &self.transitions[&(r, t)]
    }
}

/// `lim A_r` as compatible tuples, with componentwise group law and action.
#[derive(Clone, Debug)]
pub struct LimitGroup {
    tuples: Vec<Vec<Elem>>,
    index: BTreeMap<Vec<Elem>, Elem>,
    group: Arc<FiniteGroup>,
    action: GAction,
    projections: Vec<GroupHom>,
}

impl LimitGroup {
    pub fn tuples(&self) -> &[Vec<Elem>] {
        &self.tuples
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    /// `φ_r: lim A → A_r`.
    pub fn projection(&self, r: usize) -> &GroupHom {
        &self.projections[r]
    }

    pub fn index_of(&self, tuple: &[Elem]) -> Option<Elem> {
        self.index.get(tuple).copied()
    }

    /// The unique hom `B → lim` through which a compatible cone
    /// `f_r: B → A_r` factors.
    pub fn mediating_hom(&self, sys: &InverseSystem, cone: &[GroupHom]) -> Result<GroupHom> {
        let n = sys.poset().size();
        if cone.len() != n {
            return Err(Error::InvalidArgument("cone needs one map per index"));
        }
        let b_order = cone[0].source_order();
        for r in 0..n {
            for t in 0..n {
                if sys.poset().le(t, r) {
                    let phi = sys.transition_or_panic(r, t);
                    if (0..b_order).any(|x| phi.apply(cone[r].apply(x)) != cone[t].apply(x)) {
                        return Err(Error::NotFunctorial { r, t, u: t, x: 0 });
                    }
                }
            }
        }
        let image = (0..b_order)
            .map(|x| {
                let tuple: Vec<Elem> = cone.iter().map(|f| f.apply(x)).collect();
                self.index_of(&tuple).ok_or(Error::NotFunctorial { r: 0, t: 0, u: 0, x })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom::from_parts(image, self.group.order()))
    }
}

pub fn limit(sys: &InverseSystem, budget: Budget) -> Result<LimitGroup> {
    let sizes: Vec<usize> = sys.objects.iter().map(|o| o.module().order()).collect();
    let tuples = compatible_tuples(&sys.poset, &sizes, budget, |r, t, x| {
        sys.transition_or_panic(r, t).apply(x)
    })?;
    let index: BTreeMap<Vec<Elem>, Elem> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let k = tuples.len();
    let lookup = |t: Vec<Elem>| index.get(&t).copied().ok_or(Error::NotSubgroup);
    let mut mul = Vec::with_capacity(k * k);
    for x in &tuples {
        for y in &tuples {
            let prod = sys
                .objects
                .iter()
                .zip(x.iter().zip(y))
                .map(|(o, (&a, &b))| o.module().mul(a, b))
                .collect();
            mul.push(lookup(prod)?);
        }
    }
    let group = Arc::new(FiniteGroup::from_flat(k, mul)?);
    let g = sys.acting_group().clone();
    let mut table = Vec::with_capacity(g.order() * k);
    for s in g.elements() {
        for x in &tuples {
            let moved = sys
                .objects
                .iter()
                .zip(x)
                .map(|(o, &a)| o.act(s, a))
                .collect();
            table.push(lookup(moved)?);
        }
    }
    let action = GAction::from_flat(g, group.clone(), table)?;
    let projections = (0..sys.poset.size())
        .map(|r| {
            let image = tuples.iter().map(|t| t[r]).collect();
            GroupHom::new(&group, sys.objects[r].module(), image)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitGroup {
        tuples,
        index,
        group,
        action,
        projections,
    })
}

/// Outcome of comparing `H(G, lim A_r)` with `lim H(G, A_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub degree: usize,
    pub limit_order: usize,
    /// `|H(G, lim A_r)|`.
    pub source_size: usize,
    /// `|H(G, A_r)|` per index.
    pub level_sizes: Vec<usize>,
    /// `lim H(G, A_r)` as compatible class tuples.
    pub target: Vec<Vec<usize>>,
    /// Image of each source class in `target`, if it lands there.
    pub map: Vec<Option<usize>>,
    /// Every representative of every class has the same image.
    pub well_defined: bool,
    /// Pushing each cocycle to every level agrees with `Θ` of its class.
    pub natural: bool,
    pub injective: bool,
    pub surjective: bool,
    /// `Θ(x + y) = Θ(x) + Θ(y)`; only for abelian degrees.
    pub homomorphism: Option<bool>,
}

impl ThetaReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }

    /// Everything checked holds.
    pub fn holds(&self) -> bool {
        self.well_defined && self.natural && self.bijective() && self.homomorphism != Some(false)
    }

    fn finish(&mut self) {
        let mut hit = vec![false; self.target.len()];
        let mut injective = self.map.iter().all(Option::is_some);
        for m in self.map.iter().flatten() {
            if core::mem::replace(&mut hit[*m], true) {
                injective = false;
            }
        }
        self.injective = injective;
        self.surjective = hit.iter().all(|&h| h);
    }
}

/// `Θ₁: H¹(G, lim A_r) → lim H¹(G, A_r)`.
///
/// The left side is `H¹` of the limit group with its componentwise action.
/// The right side never touches the limit group: it is `H¹` of each level,
/// the induced maps of pointed sets, and their compatible tuples.
pub fn theta_1(sys: &InverseSystem, budget: Budget) -> Result<ThetaReport> {
    let lim = limit(sys, budget)?;
    let left = h1(lim.action(), budget)?;
    let levels: Vec<H1Set> = sys
        .objects
        .iter()
        .map(|o| h1(o, budget))
        .collect::<Result<_>>()?;
    let induced = induced_maps(sys, |r, t, phi| {
        pushforward_classes(&sys.objects[r], &levels[r], &sys.objects[t], &levels[t], phi)
    })?;
    let sizes: Vec<usize> = levels.iter().map(H1Set::len).collect();
    let target = compatible_tuples(&sys.poset, &sizes, budget, |r, t, c| induced[&(r, t)][c])?;
    let target_index: BTreeMap<&[usize], usize> =
        target.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();

    let push_all = |a: &crate::h1::Cocycle1| -> Vec<usize> {
        (0..sys.poset.size())
            .map(|r| {
                levels[r]
                    .class_of(&push_unchecked(lim.projection(r), a))
                    .expect("projections are equivariant")
            })
            .collect()
    };

    let mut well_defined = true;
    let mut map = Vec::with_capacity(left.len());
    for class in left.classes() {
        let image = push_all(class.rep());
        well_defined &= class.members.iter().all(|a| push_all(a) == image);
        map.push(target_index.get(image.as_slice()).copied());
    }
    let natural = left.cocycles().all(|a| {
        let c = left.class_of(a).expect("listed cocycle");
        map[c].map(|i| target[i] == push_all(a)).unwrap_or(false)
    });
    let mut report = ThetaReport {
        degree: 1,
        limit_order: lim.group().order(),
        source_size: left.len(),
        level_sizes: sizes,
        target,
        map,
        well_defined,
        natural,
        injective: false,
        surjective: false,
        homomorphism: None,
    };
    report.finish();
    Ok(report)
}

/// `Θₙ: Hⁿ(G, lim A_r) → lim Hⁿ(G, A_r)` for abelian objects.
pub fn theta_n(sys: &InverseSystem, n: usize, budget: Budget) -> Result<ThetaReport> {
    for o in &sys.objects {
        require_abelian(o)?;
    }
    let lim = limit(sys, budget)?;
    let left = h_n(lim.action(), n, budget)?;
    let levels: Vec<CohomologyGroup> = sys
        .objects
        .iter()
        .map(|o| h_n(o, n, budget))
        .collect::<Result<_>>()?;
    let induced = induced_maps(sys, |r, t, phi| {
        induced_class_map(&sys.objects[r], &levels[r], &sys.objects[t], &levels[t], phi)
    })?;
    let sizes: Vec<usize> = levels.iter().map(CohomologyGroup::h_size).collect();
    let target = compatible_tuples(&sys.poset, &sizes, budget, |r, t, c| induced[&(r, t)][c])?;
    let target_index: BTreeMap<&[usize], usize> =
        target.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();

    let push_all = |a: &crate::cochain::Cochain| -> Vec<usize> {
        (0..sys.poset.size())
            .map(|r| {
                levels[r]
                    .class_of(&a.map(lim.projection(r)))
                    .expect("projections are equivariant")
            })
            .collect()
    };

    let mut well_defined = true;
    let mut map = Vec::with_capacity(left.h_size());
    for class in left.classes() {
        let image = push_all(&class[0]);
        well_defined &= class.iter().all(|a| push_all(a) == image);
        map.push(target_index.get(image.as_slice()).copied());
    }
    let natural = left.classes().iter().flatten().all(|a| {
        let c = left.class_of(a).expect("listed cocycle");
        map[c].map(|i| target[i] == push_all(a)).unwrap_or(false)
    });
    let k = left.h_size();
    let homomorphism = (0..k).all(|x| {
        (0..k).all(|y| match (map[x], map[y], map[left.add(x, y)]) {
            (Some(ix), Some(iy), Some(isum)) => (0..levels.len())
                .all(|r| levels[r].add(target[ix][r], target[iy][r]) == target[isum][r]),
            _ => false,
        })
    });
    let mut report = ThetaReport {
        degree: n,
        limit_order: lim.group().order(),
        source_size: k,
        level_sizes: sizes,
        target,
        map,
        well_defined,
        natural,
        injective: false,
        surjective: false,
        homomorphism: Some(homomorphism),
    };
    report.finish();
    Ok(report)
}

fn induced_maps(
    sys: &InverseSystem,
    mut induce: impl FnMut(usize, usize, &GroupHom) -> Result<Vec<usize>>,
) -> Result<BTreeMap<(usize, usize), Vec<usize>>> {
    let mut out = BTreeMap::new();
    for (&(r, t), phi) in &sys.transitions {
        out.insert((r, t), induce(r, t, phi)?);
    }
    Ok(out)
}

/// A tower `groups[0] → groups[1] → …` of finite abelian groups.
#[derive(Clone, Debug)]
pub struct AbelianTower {
    groups: Vec<Arc<FiniteGroup>>,
    maps: Vec<GroupHom>,
}

impl AbelianTower {
    pub fn new(groups: Vec<Arc<FiniteGroup>>, maps: Vec<GroupHom>) -> Result<Self> {
        if groups.is_empty() || maps.len() + 1 != groups.len() {
            return Err(Error::InvalidArgument("tower needs one map between consecutive levels"));
        }
        if groups.iter().any(|g| !g.is_abelian()) {
            return Err(Error::NotAbelian);
        }
        for (i, m) in maps.iter().enumerate() {
            GroupHom::new(&groups[i], &groups[i + 1], m.image_table().to_vec())?;
        }
        Ok(AbelianTower { groups, maps })
    }

    /// The coefficient groups of a chain-shaped system, top first.
    pub fn from_system(sys: &InverseSystem) -> Result<Self> {
        let order = sys
            .poset()
            .as_chain()
            .ok_or(Error::InvalidArgument("system is not a tower"))?;
        let groups = order.iter().map(|&r| sys.objects()[r].module().clone()).collect();
        let maps = order
            .windows(2)
            .map(|w| sys.transition_or_panic(w[0], w[1]).clone())
            .collect();
        Self::new(groups, maps)
    }

    pub fn groups(&self) -> &[Arc<FiniteGroup>] {
        &self.groups
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lim1Report {
    pub product_size: usize,
    pub codomain_size: usize,
    /// `|ker Δ|`, which is `|lim|`.
    pub kernel_size: usize,
    pub image_size: usize,
    /// `|coker Δ|`, which is `|lim¹|`.
    pub lim1_size: usize,
}

impl Lim1Report {
    pub fn trivial(&self) -> bool {
        self.lim1_size == 1
    }
}

/// `lim¹` as the cokernel of `Δ(a)_i = a_i − φ(a_{i−1})` for `i ≥ 1`,
/// from the full product onto the product of all levels below the top
/// (the top has nothing above it, as in a tower continued by identities).
/// Surjectivity is checked by enumerating the image.
pub fn lim1_tower(tower: &AbelianTower, budget: Budget) -> Result<Lim1Report> {
    let sizes: Vec<usize> = tower.groups.iter().map(|g| g.order()).collect();
    let product: u128 = sizes.iter().map(|&s| s as u128).product();
    budget.check(product)?;
    let codomain: usize = sizes[1..].iter().product();
    let mut image = BTreeSet::new();
    let mut kernel = 0;
    let mut a = vec![0; sizes.len()];
    loop {
        let delta: Vec<Elem> = (1..sizes.len())
            .map(|i| {
                let g = &tower.groups[i];
                g.mul(a[i], g.inv(tower.maps[i - 1].apply(a[i - 1])))
            })
            .collect();
        if delta.iter().all(|&d| d == 0) {
            kernel += 1;
        }
        image.insert(delta);
        let mut i = sizes.len();
        loop {
            if i == 0 {
                let image_size = image.len();
                return Ok(Lim1Report {
                    product_size: product as usize,
                    codomain_size: codomain,
                    kernel_size: kernel,
                    image_size,
                    lim1_size: codomain / image_size,
                });
            }
            i -= 1;
            a[i] += 1;
            if a[i] < sizes[i] {
                break;
            }
            a[i] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub degree: usize,
    /// `lim¹` of the tower `H^{i−1}(G, A_r)`.
    pub lim1: Lim1Report,
    pub theta: ThetaReport,
}

impl ExactnessReport {
    pub fn holds(&self) -> bool {
        self.lim1.trivial() && self.theta.holds()
    }
}

/// The tower `Hⁿ(G, A_r)` with induced maps, as abstract abelian groups.
pub fn cohomology_tower(sys: &InverseSystem, n: usize, budget: Budget) -> Result<AbelianTower> {
    let order = sys
        .poset()
        .as_chain()
        .ok_or(Error::InvalidArgument("system is not a tower"))?;
    let levels: Vec<CohomologyGroup> = order
        .iter()
        .map(|&r| h_n(&sys.objects[r], n, budget))
        .collect::<Result<_>>()?;
    let groups: Vec<Arc<FiniteGroup>> = levels.iter().map(|h| Arc::new(h.as_group())).collect();
    let mut maps = Vec::new();
    for (k, w) in order.windows(2).enumerate() {
        let (r, t) = (w[0], w[1]);
        let image = induced_class_map(
            &sys.objects[r],
            &levels[k],
            &sys.objects[t],
            &levels[k + 1],
            sys.transition_or_panic(r, t),
        )?;
        maps.push(GroupHom::new(&groups[k], &groups[k + 1], image)?);
    }
    AbelianTower::new(groups, maps)
}

/// `lim¹ H^{i−1}(G, A_r)` trivial and `Θ_i` bijective: the finite instance
/// of `0 → lim¹ H^{i−1} → H^i(G, lim A) → lim H^i → 0`.
pub fn exact_sequence_check(sys: &InverseSystem, i: usize, budget: Budget) -> Result<ExactnessReport> {
    if i == 0 {
        return Err(Error::InvalidArgument("exactness check needs i >= 1"));
    }
    let lim1 = lim1_tower(&cohomology_tower(sys, i - 1, budget)?, budget)?;
    let theta = theta_n(sys, i, budget)?;
    Ok(ExactnessReport {
        degree: i,
        lim1,
        theta,
    })
}
