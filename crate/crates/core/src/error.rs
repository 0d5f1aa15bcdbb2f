use crate::Elem;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure names the first witness found, in iteration order.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("multiplication table is not square: row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(Elem),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("group order {order} exceeds cap {cap}")]
    SizeLimit { order: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("member set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal: {g} * {n} * {g}^-1 leaves it")]
    NotNormal { g: Elem, n: Elem },
    #[error("map is not a homomorphism at ({x}, {y})")]
    NotHom { x: Elem, y: Elem },
    #[error("group is not abelian")]
    NotAbelian,

    #[error("action table has wrong shape")]
    ActionShape,
    #[error("identity does not act trivially on {0}")]
    IdentityAxiom(Elem),
    #[error("action is not compatible with multiplication in G at ({0}, {1}, {2})")]
    CompositionAxiom(Elem, Elem, Elem),
    #[error("element {0} of G does not act by an automorphism at ({1}, {2})")]
    AutomorphismAxiom(Elem, Elem, Elem),
    #[error("element {0} of G does not preserve the subgroup")]
    NotPreserved(Elem),
    #[error("subgroup is not characteristic")]
    NotCharacteristic,

    #[error("candidate count {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },
    #[error("generators do not generate the group")]
    NotGenerating,
    #[error("values do not form a cocycle")]
    NotCocycle,
    #[error("map is not G-equivariant at ({s}, {x})")]
    NotEquivariant { s: Elem, x: Elem },
    #[error("induced map on classes depends on the representative")]
    RepresentativeDependent,

    #[error("torsor and action do not match")]
    ActionMismatch,
    #[error("invalid torsor: {0}")]
    InvalidTorsor(&'static str),

    #[error("relation is not a partial order: {0}")]
    NotPoset(&'static str),
    #[error("indices {0} and {1} have no common upper bound")]
    NotDirected(usize, usize),
    #[error("missing transition map {r} -> {t}")]
    MissingTransition { r: usize, t: usize },
    #[error("transition maps are not functorial at ({r}, {t}, {u}) on {x}")]
    NotFunctorial { r: usize, t: usize, u: usize, x: Elem },
    #[error("transition {r} -> {t} is not equivariant at ({s}, {x})")]
    TransitionNotEquivariant { r: usize, t: usize, s: Elem, x: Elem },
    #[error("objects are acted on by different groups")]
    ActingGroupMismatch,

    #[error("filtration member {0} is not characteristic")]
    FiltrationNotCharacteristic(usize),
    #[error("filtration member {0} is not contained in its predecessor")]
    NotNested(usize),
    #[error("filtration does not end in the trivial subgroup")]
    BottomNotTrivial,
    #[error("group is not solvable: derived series stalls at order {0}")]
    NotSolvable(usize),
}
