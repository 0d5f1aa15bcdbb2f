//! Finite groups as Cayley tables, with homomorphisms, subgroups, quotients
//! and automorphisms.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Elem, Error, Result, DEFAULT_ORDER_CAP};

/// A finite group stored as a flat `order × order` multiplication table.
///
/// Element `0` is always the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
}

impl FiniteGroup {
    /// Validates a table under [`DEFAULT_ORDER_CAP`].
    ///
    /// If the identity is not element `0` the table is relabelled by swapping
    /// the identity with `0`.
    pub fn from_table(rows: &[Vec<Elem>]) -> Result<Self> {
        Self::from_table_capped(rows, DEFAULT_ORDER_CAP)
    }

    pub fn from_table_capped(rows: &[Vec<Elem>], cap: usize) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        check_cap(order, cap)?;
        let mut mul = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    order,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
            }
            mul.extend_from_slice(row);
        }
        Self::from_flat(order, mul)
    }

    /// Validates a flat row-major table (no cap check).
    pub(crate) fn from_flat(order: usize, mut mul: Vec<Elem>) -> Result<Self> {
        let at = |mul: &[Elem], x: usize, y: usize| mul[x * order + y];
        let e = (0..order)
            .find(|&e| (0..order).all(|x| at(&mul, e, x) == x && at(&mul, x, e) == x))
            .ok_or(Error::NoIdentity)?;
        if e != 0 {
            mul = relabel_swap(order, &mul, 0, e);
        }
        let mut inv = vec![0; order];
        for x in 0..order {
            inv[x] = (0..order)
                .find(|&y| at(&mul, x, y) == 0 && at(&mul, y, x) == 0)
                .ok_or(Error::NoInverse(x))?;
        }
        for x in 0..order {
            for y in 0..order {
                let xy = at(&mul, x, y);
                for z in 0..order {
                    if at(&mul, xy, z) != at(&mul, x, at(&mul, y, z)) {
                        return Err(Error::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, mul, inv })
    }

    /// Trivial group of order one.
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            inv: vec![0],
        }
    }

    /// `Z/n`, element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group needs n >= 1"));
        }
        check_cap(n, DEFAULT_ORDER_CAP)?;
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat(n, mul)
    }

    /// Dihedral group of order `2n`; element `i + n*j` is `rⁱ sʲ`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dihedral group needs n >= 1"));
        }
        let order = 2 * n;
        check_cap(order, DEFAULT_ORDER_CAP)?;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (i, j) = (x % n, x / n);
            for y in 0..order {
                let (k, l) = (y % n, y / n);
                // rⁱ sʲ rᵏ sˡ = r^(i ± k) s^(j+l)
                let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                mul.push(rot + n * ((j + l) % 2));
            }
        }
        Self::from_flat(order, mul)
    }

    /// Symmetric group on `n` points; permutations listed lexicographically,
    /// product `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("symmetric group needs n >= 1"));
        }
        let order = (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k));
        let order = order.unwrap_or(usize::MAX);
        check_cap(order, DEFAULT_ORDER_CAP)?;
        let perms = permutations(n);
        let mut mul = Vec::with_capacity(order * order);
        let mut prod = vec![0u8; n];
        for s in &perms {
            for t in &perms {
                for i in 0..n {
                    prod[i] = s[t[i] as usize];
                }
                mul.push(lehmer_rank(&prod));
            }
        }
        Self::from_flat(order, mul)
    }

    /// `G × H`; the pair `(g, h)` has index `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let order = g.order.saturating_mul(h.order);
        check_cap(order, DEFAULT_ORDER_CAP)?;
        let m = h.order;
        let mul = (0..order * order)
            .map(|i| {
                let (x, y) = (i / order, i % order);
                g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
            })
            .collect();
        Self::from_flat(order, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x]
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.order
    }

    /// Table as rows, the inverse of [`FiniteGroup::from_table`].
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        self.mul(self.mul(self.inv(x), self.inv(y)), xy)
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(&self, gens: &[Elem]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    /// A small generating set, chosen greedily by descending element order
    /// (ties broken by index).
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut by_order: Vec<Elem> = self.elements().skip(1).collect();
        by_order.sort_by_key(|&x| (core::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for x in by_order {
            if span.order() == self.order {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// `[H, H]` for a subgroup `H`.
    pub fn commutator_of(&self, h: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        let mut seen = vec![false; self.order];
        for &x in h.members() {
            for &y in h.members() {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.generated(&comms)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        self.commutator_of(&Subgroup::whole(self))
    }

    /// `A(0) = G`, `A(i+1) = [A(i), A(i)]`, stopping at the first repeat.
    /// The last entry is trivial iff `G` is solvable.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup::whole(self)];
        loop {
            let last = series.last().expect("series is non-empty");
            let next = self.commutator_of(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().map(Subgroup::order) == Some(1)
    }

    /// `G/N` on minimal coset representatives, with the projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        n.check_parent(self)?;
        if let Some((g, m)) = n.normality_witness(self) {
            return Err(Error::NotNormal { g, n: m });
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &m in n.members() {
                coset_of[self.mul(x, m)] = idx;
            }
        }
        let k = reps.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset_of[self.mul(a, b)]);
            }
        }
        let group = FiniteGroup::from_flat(k, mul)?;
        let projection = GroupHom {
            image: coset_of,
            target_order: k,
        };
        Ok(Quotient {
            group,
            projection,
            reps,
        })
    }

    /// All automorphisms, found by backtracking over images of
    /// [`FiniteGroup::generating_set`] restricted to elements of equal order.
    pub fn automorphisms(&self) -> Result<Vec<GroupHom>> {
        check_cap(self.order, DEFAULT_ORDER_CAP)?;
        let gens = self.generating_set();
        let orders: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        let mut found = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.aut_search(&gens, &orders, &mut images, &mut found);
        found.sort_by(|a: &GroupHom, b| a.image.cmp(&b.image));
        Ok(found)
    }

    fn aut_search(
        &self,
        gens: &[Elem],
        orders: &[usize],
        images: &mut Vec<Elem>,
        found: &mut Vec<GroupHom>,
    ) {
        if images.len() == gens.len() {
            if let Some(image) = extend_hom(self, self, gens, images) {
                let mut hit = vec![false; self.order];
                image.iter().for_each(|&y| hit[y] = true);
                if hit.iter().all(|&h| h) {
                    found.push(GroupHom {
                        image,
                        target_order: self.order,
                    });
                }
            }
            return;
        }
        let g = gens[images.len()];
        for y in self.elements() {
            if orders[y] != orders[g] || images.contains(&y) {
                continue;
            }
            images.push(y);
            self.aut_search(gens, orders, images, found);
            images.pop();
        }
    }

    /// Whether every automorphism maps `n` onto itself.
    pub fn is_characteristic(&self, n: &Subgroup) -> Result<bool> {
        n.check_parent(self)?;
        Ok(self
            .automorphisms()?
            .iter()
            .all(|sigma| n.members().iter().all(|&x| n.contains(sigma.apply(x)))))
    }
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::SizeLimit { order, cap })
    } else {
        Ok(())
    }
}

fn relabel_swap(order: usize, mul: &[Elem], a: Elem, b: Elem) -> Vec<Elem> {
    let sw = |x: Elem| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    };
    let mut out = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            out[sw(x) * order + sw(y)] = sw(mul[x * order + y]);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

fn lehmer_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&q| q < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Extends generator images to a map on all of `src` by walking the Cayley
/// graph; `None` if some edge disagrees (the assignment is not a hom).
pub(crate) fn extend_hom(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[Elem],
    gen_images: &[Elem],
) -> Option<Vec<Elem>> {
    let mut image = vec![usize::MAX; src.order()];
    image[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&g, &gy) in gens.iter().zip(gen_images) {
            let y = src.mul(x, g);
            let val = tgt.mul(image[x], gy);
            if image[y] == usize::MAX {
                image[y] = val;
                queue.push_back(y);
            } else if image[y] != val {
                return None;
            }
        }
    }
    if image.contains(&usize::MAX) {
        return None;
    }
    Some(image)
}

/// A subgroup, stored as a membership mask over the parent's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Checks closure; the identity must be listed.
    pub fn from_members(g: &FiniteGroup, members: &[Elem]) -> Result<Self> {
        let mut mask = vec![false; g.order()];
        for &x in members {
            if x >= g.order() {
                return Err(Error::NotSubgroup);
            }
            mask[x] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup);
        }
        let sub = Subgroup::from_mask(mask);
        for &x in sub.members() {
            if !sub.contains(g.inv(x)) || sub.members().iter().any(|&y| !sub.contains(g.mul(x, y)))
            {
                return Err(Error::NotSubgroup);
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Subgroup::from_mask(mask)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup::from_mask(vec![true; g.order()])
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.normality_witness(g).is_none()
    }

    fn normality_witness(&self, g: &FiniteGroup) -> Option<(Elem, Elem)> {
        for x in g.elements() {
            for &m in &self.members {
                if !self.contains(g.mul(g.mul(x, m), g.inv(x))) {
                    return Some((x, m));
                }
            }
        }
        None
    }

    fn check_parent(&self, g: &FiniteGroup) -> Result<()> {
        if self.mask.len() != g.order() {
            return Err(Error::InvalidArgument("subgroup belongs to another group"));
        }
        Ok(())
    }
}

/// A homomorphism given by its table of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    image: Vec<Elem>,
    target_order: usize,
}

impl GroupHom {
    pub fn new(src: &FiniteGroup, tgt: &FiniteGroup, image: Vec<Elem>) -> Result<Self> {
        if image.len() != src.order() || image.iter().any(|&y| y >= tgt.order()) {
            return Err(Error::InvalidArgument("hom table has wrong shape"));
        }
        for x in src.elements() {
            for y in src.elements() {
                if image[src.mul(x, y)] != tgt.mul(image[x], image[y]) {
                    return Err(Error::NotHom { x, y });
                }
            }
        }
        Ok(GroupHom {
            image,
            target_order: tgt.order(),
        })
    }

    pub(crate) fn from_parts(image: Vec<Elem>, target_order: usize) -> Self {
        GroupHom {
            image,
            target_order,
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            image: g.elements().collect(),
            target_order: g.order(),
        }
    }

    /// The map sending everything to the identity.
    pub fn trivial(src: &FiniteGroup, tgt: &FiniteGroup) -> Self {
        GroupHom {
            image: vec![0; src.order()],
            target_order: tgt.order(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn image_table(&self) -> &[Elem] {
        &self.image
    }

    pub fn source_order(&self) -> usize {
        self.image.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            image: self.image.iter().map(|&y| other.apply(y)).collect(),
            target_order: other.target_order,
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        self.image.iter().all(|&y| !core::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        self.image.iter().for_each(|&y| hit[y] = true);
        hit.iter().all(|&h| h)
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_mask(self.image.iter().map(|&y| y == 0).collect())
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.target_order];
        h.members().iter().for_each(|&x| mask[self.image[x]] = true);
        Subgroup::from_mask(mask)
    }
}

/// `G/N` together with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    /// Minimal representative of each coset, indexed by quotient element.
    pub reps: Vec<Elem>,
}
