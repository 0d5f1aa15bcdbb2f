//! Inhomogeneous cochains with values in an abelian `G`-module and the
//! cohomology groups `Hⁿ = Zⁿ / Bⁿ`.
//!
//! The group law of `A` is written additively here. A degree-`n` cochain is
//! a flat table over `Gⁿ`, the tuple `(s₁, …, sₙ)` stored at the mixed-radix
//! index `s₁·|G|ⁿ⁻¹ + … + sₙ`. Degree 0 is a single element of `A`.
//! Cochains are not normalized.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{check_equivariant, GAction};
use crate::group::{FiniteGroup, GroupHom};
use crate::{pow_estimate, Budget, Elem, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cochain {
    degree: usize,
    values: Vec<Elem>,
}

impl Cochain {
    pub fn new(act: &GAction, degree: usize, values: Vec<Elem>) -> Result<Self> {
        require_abelian(act)?;
        let len = table_len(act.acting_group().order(), degree)?;
        if values.len() != len || values.iter().any(|&v| v >= act.module().order()) {
            return Err(Error::InvalidArgument("cochain table has wrong shape"));
        }
        Ok(Cochain { degree, values })
    }

    pub fn zero(act: &GAction, degree: usize) -> Result<Self> {
        let len = table_len(act.acting_group().order(), degree)?;
        Ok(Cochain {
            degree,
            values: vec![0; len],
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise sum; both cochains must have the same degree.
    pub fn add(&self, a: &FiniteGroup, other: &Cochain) -> Cochain {
        debug_assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| a.mul(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &FiniteGroup) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|&x| a.inv(x)).collect(),
        }
    }

    /// `k·f`.
    pub fn scale(&self, a: &FiniteGroup, k: usize) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|&x| a.pow(x, k)).collect(),
        }
    }

    /// Applies `φ` pointwise.
    pub fn map(&self, phi: &GroupHom) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|&x| phi.apply(x)).collect(),
        }
    }
}

fn table_len(g_order: usize, degree: usize) -> Result<usize> {
    let len = pow_estimate(g_order, degree);
    usize::try_from(len)
        .ok()
        .filter(|&l| l <= u32::MAX as usize)
        .ok_or(Error::BudgetExceeded {
            estimate: len,
            budget: u32::MAX as u64,
        })
}

pub fn require_abelian(act: &GAction) -> Result<()> {
    if act.module().is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

fn decode(mut idx: usize, g_order: usize, digits: &mut [Elem]) {
    for d in digits.iter_mut().rev() {
        *d = idx % g_order;
        idx /= g_order;
    }
}

fn encode(digits: impl Iterator<Item = Elem>, g_order: usize) -> usize {
    digits.fold(0, |acc, d| acc * g_order + d)
}

/// `d f` for `f` of degree `n − 1`:
///
/// `(d f)(s₁,…,sₙ) = s₁·f(s₂,…,sₙ) + Σᵢ (−1)ⁱ f(…, sᵢsᵢ₊₁, …) + (−1)ⁿ f(s₁,…,sₙ₋₁)`.
pub fn differential(act: &GAction, f: &Cochain) -> Result<Cochain> {
    require_abelian(act)?;
    let (g, a) = (act.acting_group(), act.module());
    let q = g.order();
    let n = f.degree + 1;
    let len = table_len(q, n)?;
    if f.values.len() != table_len(q, f.degree)? {
        return Err(Error::InvalidArgument("cochain does not match the action"));
    }
    let signed = |x: Elem, i: usize| if i.is_multiple_of(2) { x } else { a.inv(x) };
    let mut digits = vec![0; n];
    let mut face = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(len);
    for idx in 0..len {
        decode(idx, q, &mut digits);
        let mut acc = act.act(digits[0], f.values[encode(digits[1..].iter().copied(), q)]);
        for i in 1..n {
            face.clear();
            face.extend_from_slice(&digits[..i - 1]);
            face.push(g.mul(digits[i - 1], digits[i]));
            face.extend_from_slice(&digits[i + 1..]);
            acc = a.mul(acc, signed(f.values[encode(face.iter().copied(), q)], i));
        }
        let last = f.values[encode(digits[..n - 1].iter().copied(), q)];
        acc = a.mul(acc, signed(last, n));
        values.push(acc);
    }
    Ok(Cochain { degree: n, values })
}

/// Every degree-`n` cochain, in lexicographic order of value tables.
pub fn all_cochains(act: &GAction, n: usize, budget: Budget) -> Result<Vec<Cochain>> {
    require_abelian(act)?;
    let (g, a) = (act.acting_group(), act.module());
    let len = table_len(g.order(), n)?;
    budget.check(pow_estimate(a.order(), len))?;
    let mut out = Vec::new();
    let mut values = vec![0; len];
    loop {
        out.push(Cochain {
            degree: n,
            values: values.clone(),
        });
        let mut i = len;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            values[i] += 1;
            if values[i] < a.order() {
                break;
            }
            values[i] = 0;
        }
    }
}

/// `Zⁿ = ker d_{n+1}`, sorted.
pub fn z_n(act: &GAction, n: usize, budget: Budget) -> Result<Vec<Cochain>> {
    let mut out = Vec::new();
    for f in all_cochains(act, n, budget)? {
        if differential(act, &f)?.is_zero() {
            out.push(f);
        }
    }
    Ok(out)
}

/// `Bⁿ = im d_n`; `B⁰ = 0`.
pub fn b_n(act: &GAction, n: usize, budget: Budget) -> Result<BTreeSet<Cochain>> {
    if n == 0 {
        require_abelian(act)?;
        return Ok(BTreeSet::from([Cochain::zero(act, 0)?]));
    }
    all_cochains(act, n - 1, budget)?
        .iter()
        .map(|f| differential(act, f))
        .collect()
}

/// `Stab(a) = {f ∈ Cⁿ⁻¹ : a + d f = a}` for the coboundary action of
/// `(n−1)`-cochains on `Zⁿ`.
pub fn stab_n(act: &GAction, a: &Cochain, budget: Budget) -> Result<BTreeSet<Cochain>> {
    if a.degree == 0 {
        return Err(Error::InvalidArgument("coboundary action needs degree >= 1"));
    }
    let m = act.module();
    let mut out = BTreeSet::new();
    for f in all_cochains(act, a.degree - 1, budget)? {
        if a.add(m, &differential(act, &f)?) == *a {
            out.insert(f);
        }
    }
    Ok(out)
}

/// `a + Bⁿ`.
pub fn orbit_n(act: &GAction, a: &Cochain, budget: Budget) -> Result<BTreeSet<Cochain>> {
    if a.degree == 0 {
        return Err(Error::InvalidArgument("coboundary action needs degree >= 1"));
    }
    let m = act.module();
    all_cochains(act, a.degree - 1, budget)?
        .iter()
        .map(|f| Ok(a.add(m, &differential(act, f)?)))
        .collect()
}

/// `Hⁿ(G, A)` as the coset partition of `Zⁿ` by `Bⁿ`.
///
/// Classes are sorted by least representative, so class `0` is `Bⁿ` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    degree: usize,
    z_size: usize,
    b_size: usize,
    classes: Vec<Vec<Cochain>>,
    class_of: BTreeMap<Cochain, usize>,
    element_orders: Vec<usize>,
    add_table: Vec<usize>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn z_size(&self) -> usize {
        self.z_size
    }

    pub fn b_size(&self) -> usize {
        self.b_size
    }

    pub fn h_size(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<Cochain>] {
        &self.classes
    }

    pub fn rep(&self, class: usize) -> &Cochain {
        &self.classes[class][0]
    }

    pub fn class_of(&self, a: &Cochain) -> Option<usize> {
        self.class_of.get(a).copied()
    }

    /// Orders of all classes, sorted ascending.
    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    /// Class of the sum of representatives.
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add_table[x * self.classes.len() + y]
    }

    /// The quotient as a [`FiniteGroup`] on class indices.
    pub fn as_group(&self) -> FiniteGroup {
        FiniteGroup::from_flat(self.classes.len(), self.add_table.clone())
            .expect("Zⁿ/Bⁿ is a group")
    }
}

pub fn h_n(act: &GAction, n: usize, budget: Budget) -> Result<CohomologyGroup> {
    let z = z_n(act, n, budget)?;
    let b = b_n(act, n, budget)?;
    debug_assert!(b.iter().all(|c| z.binary_search(c).is_ok()));
    let m = act.module();
    let mut class_of = BTreeMap::new();
    let mut classes = Vec::new();
    for a in &z {
        if class_of.contains_key(a) {
            continue;
        }
        let coset: BTreeSet<Cochain> = b.iter().map(|c| a.add(m, c)).collect();
        let idx = classes.len();
        for c in &coset {
            class_of.insert(c.clone(), idx);
        }
        classes.push(coset.into_iter().collect::<Vec<_>>());
    }
    let k = classes.len();
    let reps: Vec<&Cochain> = classes.iter().map(|c| &c[0]).collect();
    let mut add_table = Vec::with_capacity(k * k);
    for x in &reps {
        for y in &reps {
            add_table.push(class_of[&x.add(m, y)]);
        }
    }
    let mut element_orders: Vec<usize> = reps
        .iter()
        .map(|r| {
            (1..)
                .find(|&j| class_of[&r.scale(m, j)] == 0)
                .expect("finite group")
        })
        .collect();
    element_orders.sort_unstable();
    Ok(CohomologyGroup {
        degree: n,
        z_size: z.len(),
        b_size: b.len(),
        classes,
        class_of,
        element_orders,
        add_table,
    })
}

/// The map `Hⁿ(G, A) → Hⁿ(G, A')` induced by an equivariant `φ`, checked on
/// every member of every class.
pub fn induced_class_map(
    src: &GAction,
    src_h: &CohomologyGroup,
    tgt: &GAction,
    tgt_h: &CohomologyGroup,
    phi: &GroupHom,
) -> Result<Vec<usize>> {
    check_equivariant(src, tgt, phi)?;
    let mut map = Vec::with_capacity(src_h.h_size());
    for class in src_h.classes() {
        let mut target = None;
        for a in class {
            let c = tgt_h.class_of(&a.map(phi)).ok_or(Error::NotCocycle)?;
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
