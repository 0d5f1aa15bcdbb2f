//! Crossed homomorphisms `G → A` and nonabelian `H¹(G, A)` as the orbit
//! space of the coboundary action `(a.x)_s = x⁻¹ a_s ˢx`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{check_equivariant, GAction};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::{pow_estimate, Budget, Elem, Error, Result};

/// A 1-cocycle: `values[s] = a_s` with `a_{st} = a_s ˢa_t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cocycle1 {
    values: Vec<Elem>,
}

impl Cocycle1 {
    pub fn new(act: &GAction, values: Vec<Elem>) -> Result<Self> {
        if is_cocycle(act, &values) {
            Ok(Cocycle1 { values })
        } else {
            Err(Error::NotCocycle)
        }
    }

    /// The distinguished cocycle `s ↦ 1`.
    pub fn trivial(act: &GAction) -> Self {
        Cocycle1 {
            values: vec![0; act.acting_group().order()],
        }
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn at(&self, s: Elem) -> Elem {
        self.values[s]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

pub fn is_cocycle(act: &GAction, values: &[Elem]) -> bool {
    let (g, a) = (act.acting_group(), act.module());
    if values.len() != g.order() || values.iter().any(|&v| v >= a.order()) {
        return false;
    }
    g.elements().all(|s| {
        g.elements()
            .all(|t| values[g.mul(s, t)] == a.mul(values[s], act.act(s, values[t])))
    })
}

/// Every table with `a_1 = 1` checked against the cocycle identity.
pub fn enumerate_z1_bruteforce(act: &GAction, budget: Budget) -> Result<BTreeSet<Cocycle1>> {
    let (g, a) = (act.acting_group(), act.module());
    budget.check(pow_estimate(a.order(), g.order() - 1))?;
    let mut values = vec![0; g.order()];
    let mut out = BTreeSet::new();
    loop {
        if is_cocycle(act, &values) {
            out.insert(Cocycle1 {
                values: values.clone(),
            });
        }
        // odometer over positions 1..|G|
        let mut i = 1;
        loop {
            if i == values.len() {
                return Ok(out);
            }
            values[i] += 1;
            if values[i] < a.order() {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

/// Assigns values on `gens` and propagates `a_{sg} = a_s ˢa_g` along the
/// Cayley graph, rejecting on any conflicting edge.
pub fn enumerate_z1_backtracking(
    act: &GAction,
    gens: &[Elem],
    budget: Budget,
) -> Result<BTreeSet<Cocycle1>> {
    let (g, a) = (act.acting_group(), act.module());
    if gens.iter().any(|&x| x >= g.order()) || g.generated(gens).order() != g.order() {
        return Err(Error::NotGenerating);
    }
    budget.check(pow_estimate(a.order(), gens.len()))?;
    let mut out = BTreeSet::new();
    let mut gen_values = vec![0; gens.len()];
    loop {
        if let Some(values) = propagate(act, gens, &gen_values) {
            out.insert(Cocycle1 { values });
        }
        let mut i = 0;
        loop {
            if i == gen_values.len() {
                return Ok(out);
            }
            gen_values[i] += 1;
            if gen_values[i] < a.order() {
                break;
            }
            gen_values[i] = 0;
            i += 1;
        }
    }
}

fn propagate(act: &GAction, gens: &[Elem], gen_values: &[Elem]) -> Option<Vec<Elem>> {
    let (g, a) = (act.acting_group(), act.module());
    let mut values = vec![usize::MAX; g.order()];
    values[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(s) = queue.pop_front() {
        for (&t, &at) in gens.iter().zip(gen_values) {
            let st = g.mul(s, t);
            let v = a.mul(values[s], act.act(s, at));
            if values[st] == usize::MAX {
                values[st] = v;
                queue.push_back(st);
            } else if values[st] != v {
                return None;
            }
        }
    }
    Some(values)
}

/// `Z¹(G, A)` via backtracking on the acting group's generating set.
pub fn enumerate_z1(act: &GAction, budget: Budget) -> Result<BTreeSet<Cocycle1>> {
    let gens = act.acting_group().generating_set();
    enumerate_z1_backtracking(act, &gens, budget)
}

/// `(a.x)_s = x⁻¹ a_s ˢx`.
pub fn cb_act(act: &GAction, a: &Cocycle1, x: Elem) -> Cocycle1 {
    let m = act.module();
    let xinv = m.inv(x);
    let values = a
        .values
        .iter()
        .enumerate()
        .map(|(s, &v)| m.mul(m.mul(xinv, v), act.act(s, x)))
        .collect();
    Cocycle1 { values }
}

pub fn stabilizer(act: &GAction, a: &Cocycle1) -> Subgroup {
    let mask = act
        .module()
        .elements()
        .map(|x| cb_act(act, a, x) == *a)
        .collect();
    Subgroup::from_mask(mask)
}

pub fn orbit(act: &GAction, a: &Cocycle1) -> BTreeSet<Cocycle1> {
    act.module().elements().map(|x| cb_act(act, a, x)).collect()
}

/// One cohomology class; `members` is sorted so `members[0]` is the
/// lexicographically least representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Class {
    pub members: Vec<Cocycle1>,
    pub stabilizer_order: usize,
}

impl H1Class {
    pub fn rep(&self) -> &Cocycle1 {
        &self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// `H¹(G, A)` as a pointed set of orbits, sorted by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Set {
    classes: Vec<H1Class>,
    class_of: BTreeMap<Cocycle1, usize>,
    base_class: usize,
}

impl H1Set {
    /// Partitions a full `Z¹` into coboundary orbits.
    pub fn from_cocycles(act: &GAction, z1: &BTreeSet<Cocycle1>) -> Self {
        let mut class_of = BTreeMap::new();
        let mut classes = Vec::new();
        for a in z1 {
            if class_of.contains_key(a) {
                continue;
            }
            let members: Vec<Cocycle1> = orbit(act, a).into_iter().collect();
            let idx = classes.len();
            for m in &members {
                class_of.insert(m.clone(), idx);
            }
            classes.push(H1Class {
                stabilizer_order: stabilizer(act, a).order(),
                members,
            });
        }
        let base_class = class_of
            .get(&Cocycle1::trivial(act))
            .copied()
            .expect("trivial cocycle is always in Z1");
        H1Set {
            classes,
            class_of,
            base_class,
        }
    }

    pub fn classes(&self) -> &[H1Class] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class of the trivial cocycle.
    pub fn base_class(&self) -> usize {
        self.base_class
    }

    pub fn class_of(&self, a: &Cocycle1) -> Option<usize> {
        self.class_of.get(a).copied()
    }

    pub fn z1_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn cocycles(&self) -> impl Iterator<Item = &Cocycle1> {
        self.class_of.keys()
    }
}

pub fn h1(act: &GAction, budget: Budget) -> Result<H1Set> {
    Ok(H1Set::from_cocycles(act, &enumerate_z1(act, budget)?))
}

/// `s ↦ φ(a_s)` for an equivariant `φ: A → A'`.
pub fn pushforward(
    src: &GAction,
    tgt: &GAction,
    phi: &GroupHom,
    a: &Cocycle1,
) -> Result<Cocycle1> {
    check_equivariant(src, tgt, phi)?;
    Ok(push_unchecked(phi, a))
}

pub(crate) fn push_unchecked(phi: &GroupHom, a: &Cocycle1) -> Cocycle1 {
    Cocycle1 {
        values: a.values.iter().map(|&v| phi.apply(v)).collect(),
    }
}

/// The induced map of pointed sets `H¹(G, A) → H¹(G, A')`, as a class-index
/// table. Every member of every class is pushed, so a representative
/// dependence is reported rather than hidden.
pub fn pushforward_classes(
    src: &GAction,
    src_h1: &H1Set,
    tgt: &GAction,
    tgt_h1: &H1Set,
    phi: &GroupHom,
) -> Result<Vec<usize>> {
    check_equivariant(src, tgt, phi)?;
    let mut map = Vec::with_capacity(src_h1.len());
    for class in src_h1.classes() {
        let mut target = None;
        for a in &class.members {
            let image = push_unchecked(phi, a);
            let c = tgt_h1.class_of(&image).ok_or(Error::NotCocycle)?;
            match target {
                None => target = Some(c),
                Some(t) if t != c => return Err(Error::RepresentativeDependent),
                Some(_) => {}
            }
        }
        map.push(target.expect("classes are non-empty"));
    }
    Ok(map)
}

/// `t ↦ a_{ψ(t)}` over `H`, together with the action restricted along `ψ`.
pub fn pullback(
    act: &GAction,
    h: Arc<FiniteGroup>,
    psi: &GroupHom,
    a: &Cocycle1,
) -> Result<(GAction, Cocycle1)> {
    let restricted = act.restrict(h.clone(), psi)?;
    let values = h.elements().map(|t| a.at(psi.apply(t))).collect();
    let b = Cocycle1 { values };
    debug_assert!(is_cocycle(&restricted, &b.values));
    Ok((restricted, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn inv23() -> GAction {
        GAction::inversion(cyc(2), cyc(3)).unwrap()
    }

    fn triv(g: usize, a: usize) -> GAction {
        GAction::trivial(cyc(g), cyc(a))
    }

    #[test]
    fn cocycle_examples() {
        assert!(is_cocycle(&inv23(), &[0, 0]));
        assert!(is_cocycle(&inv23(), &[0, 1]));
        assert!(!is_cocycle(&triv(2, 2), &[1, 0]));
    }

    #[test]
    fn bruteforce_counts() {
        let b = Budget::DEFAULT;
        assert_eq!(enumerate_z1_bruteforce(&inv23(), b).unwrap().len(), 3);
        assert_eq!(enumerate_z1_bruteforce(&triv(2, 2), b).unwrap().len(), 2);
        assert_eq!(enumerate_z1_bruteforce(&triv(3, 3), b).unwrap().len(), 3);
        assert!(matches!(
            enumerate_z1_bruteforce(&triv(8, 8), Budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn backtracking_examples() {
        let b = Budget::DEFAULT;
        let t = GAction::trivial(Arc::new(FiniteGroup::trivial()), cyc(5));
        let z = enumerate_z1_backtracking(&t, &[], b).unwrap();
        assert_eq!(z.len(), 1);

        // S3: element 1 is the transposition (0 2 1), element 3 a 3-cycle
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        assert_eq!(s3.element_order(1), 2);
        assert_eq!(s3.element_order(3), 3);
        let act = GAction::trivial(s3.clone(), cyc(2));
        let z = enumerate_z1_backtracking(&act, &[1, 3], b).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z, enumerate_z1_bruteforce(&act, b).unwrap());
        assert_eq!(
            enumerate_z1_backtracking(&act, &[3], b),
            Err(Error::NotGenerating)
        );
    }

    #[test]
    fn coboundary_action() {
        let act = inv23();
        let a = Cocycle1::new(&act, vec![0, 1]).unwrap();
        assert_eq!(cb_act(&act, &a, 0), a);
        assert_eq!(cb_act(&act, &a, 1).values(), &[0, 2]);
        for x in 0..3 {
            for y in 0..3 {
                let lhs = cb_act(&act, &cb_act(&act, &a, x), y);
                assert_eq!(lhs, cb_act(&act, &a, act.module().mul(x, y)));
            }
        }
    }

    #[test]
    fn h1_examples() {
        let b = Budget::DEFAULT;
        assert_eq!(h1(&inv23(), b).unwrap().len(), 1);
        let h = h1(&triv(2, 2), b).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.base_class(), 0);
        let t = GAction::trivial(Arc::new(FiniteGroup::trivial()), cyc(3));
        assert_eq!(h1(&t, b).unwrap().len(), 1);
    }

    #[test]
    fn stabilizers_and_orbits() {
        let act = inv23();
        let a = Cocycle1::new(&act, vec![0, 1]).unwrap();
        assert_eq!(stabilizer(&act, &a).members(), &[0]);
        assert_eq!(orbit(&act, &Cocycle1::trivial(&act)).len(), 3);
        assert_eq!(stabilizer(&act, &Cocycle1::trivial(&act)), act.fixed_points());

        // trivial action on S3: stabilizer of a is the centralizer of its values
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let act = GAction::trivial(cyc(2), s3.clone());
        for a in enumerate_z1(&act, b()).unwrap() {
            let st = stabilizer(&act, &a);
            for x in s3.elements() {
                let commutes = a.values().iter().all(|&v| s3.mul(x, v) == s3.mul(v, x));
                assert_eq!(st.contains(x), commutes);
            }
        }
    }

    fn b() -> Budget {
        Budget::DEFAULT
    }

    #[test]
    fn pushforward_examples() {
        let z4 = cyc(4);
        let z2 = cyc(2);
        let src = GAction::trivial(z2.clone(), z4.clone());
        let tgt = GAction::trivial(z2.clone(), z2.clone());
        let red = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let a = Cocycle1::new(&src, vec![0, 2]).unwrap();
        let pushed = pushforward(&src, &tgt, &red, &a).unwrap();
        assert!(pushed.is_trivial());

        let hs = h1(&src, b()).unwrap();
        let ht = h1(&tgt, b()).unwrap();
        let map = pushforward_classes(&src, &hs, &tgt, &ht, &red).unwrap();
        assert_eq!(map[hs.class_of(&a).unwrap()], ht.base_class());
        let id = pushforward_classes(&tgt, &ht, &tgt, &ht, &GroupHom::identity(&z2)).unwrap();
        assert_eq!(id, [0, 1]);

        // the identity of Z/3 does not intertwine the trivial and inversion actions
        let t3 = triv(2, 3);
        let err = pushforward(&t3, &inv23(), &GroupHom::identity(&cyc(3)), &Cocycle1::trivial(&t3));
        assert_eq!(err, Err(Error::NotEquivariant { s: 1, x: 1 }));
    }

    #[test]
    fn pullback_examples() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let z2 = cyc(2);
        let act = GAction::trivial(s3.clone(), z2.clone());
        let sign: Vec<Elem> = s3.elements().map(|x| if s3.element_order(x) == 2 { 1 } else { 0 }).collect();
        let sign = Cocycle1::new(&act, sign).unwrap();
        let psi = GroupHom::new(&z2, &s3, vec![0, 1]).unwrap();
        let (res, b) = pullback(&act, z2.clone(), &psi, &sign).unwrap();
        assert_eq!(b.values(), &[0, 1]);
        assert!(res.is_trivial());

        let (_, same) = pullback(&act, s3.clone(), &GroupHom::identity(&s3), &sign).unwrap();
        assert_eq!(same, sign);
        let one = Arc::new(FiniteGroup::trivial());
        let (_, t) = pullback(&act, one.clone(), &GroupHom::trivial(&one, &s3), &sign).unwrap();
        assert_eq!(t.values(), &[0]);
    }
}
