//! Actions of a finite group `G` on a finite group `A` by automorphisms.

use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, GroupHom, Quotient, Subgroup};
use crate::{Elem, Error, Result};

/// Groups up to this order have characteristicity checked through `Aut(A)`.
pub const CHARACTERISTIC_CHECK_MAX: usize = 24;

/// `table[s·|A| + x] = ˢx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAction {
    g: Arc<FiniteGroup>,
    a: Arc<FiniteGroup>,
    table: Vec<Elem>,
}

impl GAction {
    /// Validates an action given as one row per element of `G`.
    pub fn new(g: Arc<FiniteGroup>, a: Arc<FiniteGroup>, rows: &[Vec<Elem>]) -> Result<Self> {
        if rows.len() != g.order() || rows.iter().any(|r| r.len() != a.order()) {
            return Err(Error::ActionShape);
        }
        if rows.iter().flatten().any(|&x| x >= a.order()) {
            return Err(Error::ActionShape);
        }
        Self::from_flat(g, a, rows.concat())
    }

    pub(crate) fn from_flat(g: Arc<FiniteGroup>, a: Arc<FiniteGroup>, table: Vec<Elem>) -> Result<Self> {
        let act = GAction { g, a, table };
        act.validate()?;
        Ok(act)
    }

    fn validate(&self) -> Result<()> {
        let (g, a) = (&*self.g, &*self.a);
        for x in a.elements() {
            if self.act(0, x) != x {
                return Err(Error::IdentityAxiom(x));
            }
        }
        for s in g.elements() {
            for x in a.elements() {
                for y in a.elements() {
                    if self.act(s, a.mul(x, y)) != a.mul(self.act(s, x), self.act(s, y)) {
                        return Err(Error::AutomorphismAxiom(s, x, y));
                    }
                }
            }
        }
        for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                for x in a.elements() {
                    if self.act(st, x) != self.act(s, self.act(t, x)) {
                        return Err(Error::CompositionAxiom(s, t, x));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(g: Arc<FiniteGroup>, a: Arc<FiniteGroup>) -> Self {
        let table = (0..g.order()).flat_map(|_| a.elements()).collect();
        GAction { g, a, table }
    }

    /// The non-identity element of `G` (of order two) acts by `x ↦ x⁻¹`.
    pub fn inversion(g: Arc<FiniteGroup>, a: Arc<FiniteGroup>) -> Result<Self> {
        if g.order() > 2 {
            return Err(Error::InvalidArgument("inversion action needs |G| <= 2"));
        }
        if !a.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let table = g
            .elements()
            .flat_map(|s| a.elements().map(move |x| (s, x)))
            .map(|(s, x)| if s == 0 { x } else { a.inv(x) })
            .collect();
        Self::from_flat(g, a, table)
    }

    /// `G` acting on itself by `ˢx = s x s⁻¹`.
    pub fn conjugation(g: Arc<FiniteGroup>) -> Self {
        let table = g
            .elements()
            .flat_map(|s| g.elements().map(move |x| (s, x)))
            .map(|(s, x)| g.mul(g.mul(s, x), g.inv(s)))
            .collect();
        GAction {
            a: g.clone(),
            g,
            table,
        }
    }

    /// Action from a hom `G → Aut(A)`, given as one automorphism per element.
    pub fn from_automorphisms(
        g: Arc<FiniteGroup>,
        a: Arc<FiniteGroup>,
        rho: &[GroupHom],
    ) -> Result<Self> {
        if rho.len() != g.order() || rho.iter().any(|r| r.source_order() != a.order()) {
            return Err(Error::ActionShape);
        }
        let table = rho.iter().flat_map(|r| r.image_table().iter().copied()).collect();
        Self::from_flat(g, a, table)
    }

    /// Action determined by automorphisms assigned to generators of `G`,
    /// using `ˢᵗx = ˢ(ᵗx)` along the Cayley graph.
    pub fn from_generator_images(
        g: Arc<FiniteGroup>,
        a: Arc<FiniteGroup>,
        gens: &[Elem],
        images: &[GroupHom],
    ) -> Result<Self> {
        if gens.len() != images.len() || images.iter().any(|r| r.source_order() != a.order()) {
            return Err(Error::ActionShape);
        }
        let n = a.order();
        let mut rows: Vec<Option<Vec<Elem>>> = vec![None; g.order()];
        rows[0] = Some(a.elements().collect());
        let mut queue = VecDeque::from([0]);
        while let Some(s) = queue.pop_front() {
            for (&t, rho) in gens.iter().zip(images) {
                let st = g.mul(s, t);
                let row_s = rows[s].as_ref().expect("visited");
                let row: Vec<Elem> = (0..n).map(|x| row_s[rho.apply(x)]).collect();
                match &rows[st] {
                    None => {
                        rows[st] = Some(row);
                        queue.push_back(st);
                    }
                    Some(existing) if *existing != row => {
                        let x = (0..n).find(|&x| existing[x] != row[x]).unwrap_or(0);
                        return Err(Error::CompositionAxiom(s, t, x));
                    }
                    Some(_) => {}
                }
            }
        }
        let rows: Option<Vec<Vec<Elem>>> = rows.into_iter().collect();
        let rows = rows.ok_or(Error::NotGenerating)?;
        Self::from_flat(g, a, rows.concat())
    }

    pub fn acting_group(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn module(&self) -> &Arc<FiniteGroup> {
        &self.a
    }

    /// `ˢx`.
    #[inline]
    pub fn act(&self, s: Elem, x: Elem) -> Elem {
        self.table[s * self.a.order() + x]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.a.order()).map(|r| r.to_vec()).collect()
    }

    /// Row `s` as the automorphism `ρ(s)` of `A`.
    pub fn automorphism_of(&self, s: Elem) -> GroupHom {
        let n = self.a.order();
        GroupHom::new(&self.a, &self.a, self.table[s * n..(s + 1) * n].to_vec())
            .expect("validated action rows are automorphisms")
    }

    /// All rows as automorphisms; inverse of [`GAction::from_automorphisms`].
    pub fn automorphisms(&self) -> Vec<GroupHom> {
        self.g.elements().map(|s| self.automorphism_of(s)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.g
            .elements()
            .all(|s| self.a.elements().all(|x| self.act(s, x) == x))
    }

    /// `A^G`, which is also `H⁰(G, A)`.
    pub fn fixed_points(&self) -> Subgroup {
        let mask = self
            .a
            .elements()
            .map(|x| self.g.elements().all(|s| self.act(s, x) == x))
            .collect();
        Subgroup::from_mask(mask)
    }

    pub fn same_acting_group(&self, other: &GAction) -> bool {
        Arc::ptr_eq(&self.g, &other.g) || *self.g == *other.g
    }

    /// Induced action on `A/N`; `N` must be normal and mapped into itself by
    /// every `ρ(s)`.
    pub fn induced_on_quotient(&self, n: &Subgroup) -> Result<(GAction, Quotient)> {
        for s in self.g.elements() {
            if n.members().iter().any(|&x| !n.contains(self.act(s, x))) {
                return Err(Error::NotPreserved(s));
            }
        }
        let quot = self.a.quotient(n)?;
        let q = quot.group.order();
        let mut table = Vec::with_capacity(self.g.order() * q);
        for s in self.g.elements() {
            for &rep in &quot.reps {
                table.push(quot.projection.apply(self.act(s, rep)));
            }
        }
        let act = GAction::from_flat(self.g.clone(), Arc::new(quot.group.clone()), table)?;
        Ok((act, quot))
    }

    /// As [`GAction::induced_on_quotient`], but first requires `N` to be
    /// characteristic in `A` when `|A|` is small enough to enumerate `Aut(A)`.
    pub fn induced_on_characteristic_quotient(&self, n: &Subgroup) -> Result<(GAction, Quotient)> {
        if self.a.order() <= CHARACTERISTIC_CHECK_MAX && !self.a.is_characteristic(n)? {
            return Err(Error::NotCharacteristic);
        }
        self.induced_on_quotient(n)
    }

    /// The action of `H` on `A` through `ψ: H → G`.
    pub fn restrict(&self, h: Arc<FiniteGroup>, psi: &GroupHom) -> Result<GAction> {
        if psi.source_order() != h.order() || psi.target_order() != self.g.order() {
            return Err(Error::ActionShape);
        }
        let table = h
            .elements()
            .flat_map(|t| self.a.elements().map(move |x| (t, x)))
            .map(|(t, x)| self.act(psi.apply(t), x))
            .collect();
        GAction::from_flat(h, self.a.clone(), table)
    }
}

/// Checks that `phi: A → A'` satisfies `φ(ˢx) = ˢφ(x)` for the two actions
/// of the same `G`.
pub fn check_equivariant(src: &GAction, tgt: &GAction, phi: &GroupHom) -> Result<()> {
    if !src.same_acting_group(tgt) {
        return Err(Error::ActingGroupMismatch);
    }
    if phi.source_order() != src.module().order() || phi.target_order() != tgt.module().order() {
        return Err(Error::ActionShape);
    }
    for s in src.acting_group().elements() {
        for x in src.module().elements() {
            if phi.apply(src.act(s, x)) != tgt.act(s, phi.apply(x)) {
                return Err(Error::NotEquivariant { s, x });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn validation_examples() {
        let (z2, z3, z4) = (cyc(2), cyc(3), cyc(4));
        let t = GAction::trivial(z2.clone(), z3.clone());
        assert!(GAction::new(z2.clone(), z3.clone(), &t.rows()).is_ok());
        let neg = GAction::new(z2.clone(), z3.clone(), &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(neg, GAction::inversion(z2.clone(), z3).unwrap());
        let shift = [vec![0, 1, 2, 3], vec![1, 2, 3, 0]];
        assert_eq!(
            GAction::new(z2.clone(), z4.clone(), &shift),
            Err(Error::AutomorphismAxiom(1, 0, 0))
        );
        let z3 = cyc(3);
        let rows = [vec![0, 1, 2], vec![0, 2, 1], vec![0, 1, 2]];
        assert_eq!(
            GAction::new(z3.clone(), z3, &rows),
            Err(Error::CompositionAxiom(1, 2, 1))
        );
        // identity row fine, s^2 = 1 respected, but not additive
        let bad = [vec![0, 1, 2, 3], vec![1, 0, 3, 2]];
        assert_eq!(
            GAction::new(z2.clone(), z4, &bad),
            Err(Error::AutomorphismAxiom(1, 0, 0))
        );
        let bad_id = [vec![1, 0], vec![0, 1]];
        assert_eq!(GAction::new(z2.clone(), z2, &bad_id), Err(Error::IdentityAxiom(0)));
    }

    #[test]
    fn standard_actions() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let conj = GAction::conjugation(s3.clone());
        assert!(GAction::new(s3.clone(), s3.clone(), &conj.rows()).is_ok());
        assert_eq!(conj.fixed_points().members(), &[0]);
        assert_eq!(
            GAction::inversion(cyc(2), s3.clone()),
            Err(Error::NotAbelian)
        );
        assert_eq!(GAction::inversion(cyc(2), cyc(3)).unwrap().fixed_points().order(), 1);
        let t = GAction::trivial(cyc(2), s3);
        assert_eq!(t.fixed_points().order(), 6);
    }

    #[test]
    fn hom_round_trip() {
        let d4 = Arc::new(FiniteGroup::dihedral(4).unwrap());
        let conj = GAction::conjugation(d4.clone());
        let rho = conj.automorphisms();
        assert_eq!(GAction::from_automorphisms(d4.clone(), d4.clone(), &rho).unwrap(), conj);

        // Z/2 acting on D4 by conjugation with the reflection s (index 4)
        let z2 = cyc(2);
        let by_s = conj.automorphism_of(4);
        let act = GAction::from_generator_images(z2, d4.clone(), &[1], core::slice::from_ref(&by_s)).unwrap();
        assert_eq!(act.automorphism_of(1), by_s);
        // x ↦ 2x on Z/5 has order 4, so it cannot be the image of an order-2 generator
        let z5 = cyc(5);
        let double = GroupHom::new(&z5, &z5, vec![0, 2, 4, 1, 3]).unwrap();
        assert!(GAction::from_generator_images(cyc(2), z5, &[1], &[double]).is_err());
    }

    #[test]
    fn induced_quotient_actions() {
        let z2 = cyc(2);
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let conj = GAction::conjugation(s3.clone());
        let (ind, quot) = conj
            .induced_on_characteristic_quotient(&s3.commutator_subgroup())
            .unwrap();
        assert_eq!(ind.module().order(), 2);
        assert!(ind.is_trivial());
        assert_eq!(check_equivariant_projection(&conj, &ind, &quot.projection), Ok(()));

        let z8 = cyc(8);
        let inv = GAction::inversion(z2.clone(), z8.clone()).unwrap();
        let n = Subgroup::from_members(&z8, &[0, 4]).unwrap();
        let (ind, quot) = inv.induced_on_characteristic_quotient(&n).unwrap();
        assert_eq!(ind, GAction::inversion(z2.clone(), cyc(4)).unwrap());
        assert_eq!(check_equivariant_projection(&inv, &ind, &quot.projection), Ok(()));

        let (same, _) = inv.induced_on_quotient(&Subgroup::trivial(&z8)).unwrap();
        assert_eq!(same, inv);
    }

    fn check_equivariant_projection(src: &GAction, tgt: &GAction, p: &GroupHom) -> Result<()> {
        check_equivariant(src, tgt, p)
    }

    #[test]
    fn non_characteristic_rejected() {
        let k4 = Arc::new(
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap())
                .unwrap(),
        );
        let act = GAction::trivial(cyc(2), k4.clone());
        let factor = Subgroup::from_members(&k4, &[0, 1]).unwrap();
        assert_eq!(
            act.induced_on_characteristic_quotient(&factor).unwrap_err(),
            Error::NotCharacteristic
        );
        // equivariance alone suffices for the plain variant
        assert!(act.induced_on_quotient(&factor).is_ok());
        // swap action does not preserve the factor
        let swap = GroupHom::new(&k4, &k4, vec![0, 2, 1, 3]).unwrap();
        let act = GAction::from_generator_images(cyc(2), k4, &[1], &[swap]).unwrap();
        assert_eq!(act.induced_on_quotient(&factor).unwrap_err(), Error::NotPreserved(1));
    }
}
