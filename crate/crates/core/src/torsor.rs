//! `G`-torsors under `A` with point set identified with `A`, and the
//! correspondence with `H¹(G, A)`.

use alloc::vec::Vec;

use crate::action::GAction;
use crate::h1::Cocycle1;
use crate::{Elem, Error, Result};

/// A set of `|A|` points with a left `G`-action and a simply transitive
/// right `A`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torsor {
    g_order: usize,
    points: usize,
    /// `g_table[s·n + p] = ˢp`
    g_table: Vec<Elem>,
    /// `a_table[p·n + x] = p·x`
    a_table: Vec<Elem>,
}

impl Torsor {
    /// Validates raw tables against `act`.
    pub fn new(act: &GAction, g_rows: &[Vec<Elem>], a_rows: &[Vec<Elem>]) -> Result<Self> {
        let n = act.module().order();
        let shape_ok = g_rows.len() == act.acting_group().order()
            && a_rows.len() == n
            && g_rows.iter().chain(a_rows).all(|r| r.len() == n && r.iter().all(|&p| p < n));
        if !shape_ok {
            return Err(Error::ActionMismatch);
        }
        let t = Torsor {
            g_order: g_rows.len(),
            points: n,
            g_table: g_rows.concat(),
            a_table: a_rows.concat(),
        };
        t.validate(act)?;
        Ok(t)
    }

    /// `_aP`: underlying set `A`, `s` acting by `p ↦ a_s ˢp`, `A` acting by
    /// right multiplication.
    pub fn from_cocycle(act: &GAction, a: &Cocycle1) -> Torsor {
        let (g, m) = (act.acting_group(), act.module());
        let n = m.order();
        let g_table = g
            .elements()
            .flat_map(|s| m.elements().map(move |p| (s, p)))
            .map(|(s, p)| m.mul(a.at(s), act.act(s, p)))
            .collect();
        let a_table = m.elements().flat_map(|p| m.elements().map(move |x| m.mul(p, x))).collect();
        Torsor {
            g_order: g.order(),
            points: n,
            g_table,
            a_table,
        }
    }

    #[inline]
    pub fn g_act(&self, s: Elem, p: Elem) -> Elem {
        self.g_table[s * self.points + p]
    }

    #[inline]
    pub fn a_act(&self, p: Elem, x: Elem) -> Elem {
        self.a_table[p * self.points + x]
    }

    pub fn points(&self) -> usize {
        self.points
    }

    fn matches(&self, act: &GAction) -> bool {
        self.g_order == act.acting_group().order() && self.points == act.module().order()
    }

    /// The unique `x` with `p·x = q`, if the right action is simply transitive.
    fn divide(&self, p: Elem, q: Elem) -> Option<Elem> {
        let mut hits = (0..self.points).filter(|&x| self.a_act(p, x) == q);
        let x = hits.next()?;
        hits.next().is_none().then_some(x)
    }

    /// Left action axioms, simple transitivity, and `ˢ(p·x) = ˢp·ˢx`.
    pub fn validate(&self, act: &GAction) -> Result<()> {
        if !self.matches(act) {
            return Err(Error::ActionMismatch);
        }
        let (g, m) = (act.acting_group(), act.module());
        let n = self.points;
        if (0..n).any(|p| self.g_act(0, p) != p) {
            return Err(Error::InvalidTorsor("identity of G moves a point"));
        }
        for s in g.elements() {
            for t in g.elements() {
                if (0..n).any(|p| self.g_act(g.mul(s, t), p) != self.g_act(s, self.g_act(t, p))) {
                    return Err(Error::InvalidTorsor("G-action not compatible with multiplication"));
                }
            }
        }
        for p in 0..n {
            if self.a_act(p, 0) != p {
                return Err(Error::InvalidTorsor("identity of A moves a point"));
            }
            for x in m.elements() {
                for y in m.elements() {
                    if self.a_act(self.a_act(p, x), y) != self.a_act(p, m.mul(x, y)) {
                        return Err(Error::InvalidTorsor("A-action is not a right action"));
                    }
                }
            }
        }
        for p in 0..n {
            let mut seen = alloc::vec![false; n];
            for x in m.elements() {
                seen[self.a_act(p, x)] = true;
            }
            if seen.iter().any(|&s| !s) {
                return Err(Error::InvalidTorsor("A-action is not simply transitive"));
            }
        }
        for s in g.elements() {
            for p in 0..n {
                for x in m.elements() {
                    let lhs = self.g_act(s, self.a_act(p, x));
                    let rhs = self.a_act(self.g_act(s, p), act.act(s, x));
                    if lhs != rhs {
                        return Err(Error::InvalidTorsor("actions are not compatible"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `a_s` is the unique element with `ˢp₀ = p₀·a_s`.
    pub fn cocycle_at(&self, act: &GAction, p0: Elem) -> Result<Cocycle1> {
        if !self.matches(act) || p0 >= self.points {
            return Err(Error::ActionMismatch);
        }
        let values = act
            .acting_group()
            .elements()
            .map(|s| {
                self.divide(p0, self.g_act(s, p0))
                    .ok_or(Error::InvalidTorsor("A-action is not simply transitive"))
            })
            .collect::<Result<Vec<_>>>()?;
        Cocycle1::new(act, values)
    }

    /// An isomorphism of `(G, A)`-sets `self → other`, as a point table.
    ///
    /// Any such map commutes with the right action, so it is fixed by the
    /// image `q` of point `0`: `0·x ↦ q·x`. Only those `|A|` candidates are
    /// tried.
    pub fn isomorphism_to(&self, act: &GAction, other: &Torsor) -> Result<Option<Vec<Elem>>> {
        if !self.matches(act) || !other.matches(act) {
            return Err(Error::ActionMismatch);
        }
        let n = self.points;
        'candidates: for q in 0..n {
            let mut map = alloc::vec![usize::MAX; n];
            for x in 0..n {
                map[self.a_act(0, x)] = other.a_act(q, x);
            }
            let mut hit = alloc::vec![false; n];
            for &y in &map {
                if y == usize::MAX || core::mem::replace(&mut hit[y], true) {
                    continue 'candidates;
                }
            }
            for p in 0..n {
                for x in 0..n {
                    if map[self.a_act(p, x)] != other.a_act(map[p], x) {
                        continue 'candidates;
                    }
                }
                for s in act.acting_group().elements() {
                    if map[self.g_act(s, p)] != other.g_act(s, map[p]) {
                        continue 'candidates;
                    }
                }
            }
            return Ok(Some(map));
        }
        Ok(None)
    }
}

/// Groups the torsors `_aP` of the given cocycles into isomorphism classes,
/// in first-seen order; each class lists the cocycles whose torsors fall in it.
pub fn classify<'a>(
    act: &GAction,
    cocycles: impl IntoIterator<Item = &'a Cocycle1>,
) -> Result<Vec<Vec<Cocycle1>>> {
    let mut reps: Vec<Torsor> = Vec::new();
    let mut classes: Vec<Vec<Cocycle1>> = Vec::new();
    for a in cocycles {
        let t = Torsor::from_cocycle(act, a);
        let mut placed = false;
        for (rep, class) in reps.iter().zip(classes.iter_mut()) {
            if t.isomorphism_to(act, rep)?.is_some() {
                class.push(a.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            reps.push(t);
            classes.push(alloc::vec![a.clone()]);
        }
    }
    Ok(classes)
}
