//! Vertex groups and their finitely generated subgroups.
//!
//! Three kinds of group are supported: finite groups given by a multiplication
//! table, the integers, and free groups of finite rank. Every kind can decide
//! membership in finitely generated subgroups, compute indices and right-coset
//! transversals, and find a finite-index subgroup that contains a given subgroup
//! while avoiding a finite set of elements.
//!
//! Cosets are always right cosets `S·t`: two elements `a`, `b` lie in the same
//! coset exactly when `a·b⁻¹ ∈ S`.

mod finite;
mod free;
mod integer;

use std::fmt;
use std::sync::Arc;

pub use finite::{FiniteGroup, DEFAULT_ORDER_CAP};
pub use free::{CoreGraph, FreeGroup, FreeWord, Trace};

use crate::error::{Error, Result};

/// An element of some vertex group. Elements are only meaningful relative to
/// the group they came from; every representation is a normal form, so
/// structural equality is group equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Index into the element list of a finite group.
    Finite(usize),
    Integer(i64),
    Free(FreeWord),
}

/// Index of a subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn finite(self) -> Option<usize> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Finite,
    Integer,
    Free,
}

/// A vertex group together with its decision procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroup {
    Finite(FiniteGroup),
    Integer,
    Free(FreeGroup),
}

impl VertexGroup {
    /// The cyclic group of order `n` with generator called `generator`; elements
    /// are named `1`, `g`, `g2`, ….
    pub fn cyclic(n: usize, generator: &str) -> Self {
        VertexGroup::Finite(FiniteGroup::cyclic(n, generator))
    }

    pub fn free(rank: usize) -> Self {
        VertexGroup::Free(FreeGroup::new(rank))
    }

    pub fn kind(&self) -> GroupKind {
        match self {
            VertexGroup::Finite(_) => GroupKind::Finite,
            VertexGroup::Integer => GroupKind::Integer,
            VertexGroup::Free(_) => GroupKind::Free,
        }
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<usize> {
        match self {
            VertexGroup::Finite(g) => Some(g.order()),
            VertexGroup::Integer => None,
            VertexGroup::Free(f) if f.rank() == 0 => Some(1),
            VertexGroup::Free(_) => None,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            VertexGroup::Finite(g) => Element::Finite(g.identity()),
            VertexGroup::Integer => Element::Integer(0),
            VertexGroup::Free(_) => Element::Free(FreeWord::identity()),
        }
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        match (self, a) {
            (VertexGroup::Finite(g), Element::Finite(i)) => *i == g.identity(),
            (VertexGroup::Integer, Element::Integer(n)) => *n == 0,
            (VertexGroup::Free(_), Element::Free(w)) => w.is_identity(),
            _ => false,
        }
    }

    /// Whether `a` is a valid element of this group.
    pub fn contains(&self, a: &Element) -> bool {
        match (self, a) {
            (VertexGroup::Finite(g), Element::Finite(i)) => *i < g.order(),
            (VertexGroup::Integer, Element::Integer(_)) => true,
            (VertexGroup::Free(f), Element::Free(w)) => f.contains(w),
            _ => false,
        }
    }

    /// Product `a·b`. Panics on elements of another group; use
    /// [`VertexGroup::checked_mul`] for untrusted input.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (VertexGroup::Finite(g), Element::Finite(x), Element::Finite(y)) => Element::Finite(g.mul(*x, *y)),
            (VertexGroup::Integer, Element::Integer(x), Element::Integer(y)) => Element::Integer(x + y),
            (VertexGroup::Free(_), Element::Free(x), Element::Free(y)) => Element::Free(x.mul(y)),
            _ => panic!("foreign element in group multiplication"),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (self, a) {
            (VertexGroup::Finite(g), Element::Finite(x)) => Element::Finite(g.inv(*x)),
            (VertexGroup::Integer, Element::Integer(x)) => Element::Integer(-x),
            (VertexGroup::Free(_), Element::Free(x)) => Element::Free(x.inv()),
            _ => panic!("foreign element in group inversion"),
        }
    }

    pub fn checked_mul(&self, a: &Element, b: &Element) -> Result<Element> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::ForeignElement);
        }
        Ok(self.mul(a, b))
    }

    pub fn checked_inv(&self, a: &Element) -> Result<Element> {
        if !self.contains(a) {
            return Err(Error::ForeignElement);
        }
        Ok(self.inv(a))
    }

    pub fn checked_eq(&self, a: &Element, b: &Element) -> Result<bool> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::ForeignElement);
        }
        Ok(a == b)
    }

    /// `a·b⁻¹`, the quantity whose membership decides whether `a` and `b`
    /// represent the same right coset.
    pub fn right_quotient(&self, a: &Element, b: &Element) -> Element {
        self.mul(a, &self.inv(b))
    }

    /// `k⁻¹·a·k`.
    pub fn conjugate(&self, a: &Element, k: &Element) -> Element {
        self.mul(&self.mul(&self.inv(k), a), k)
    }

    pub fn parse_element(&self, token: &str) -> Result<Element> {
        match self {
            VertexGroup::Finite(g) => g
                .element_by_name(token)
                .map(Element::Finite)
                .ok_or_else(|| Error::parse(token, "no element of that name in the finite group")),
            VertexGroup::Integer => token
                .trim()
                .parse::<i64>()
                .map(Element::Integer)
                .map_err(|e| Error::parse(token, e.to_string())),
            VertexGroup::Free(f) => f.parse(token).map(Element::Free),
        }
    }

    pub fn format_element(&self, a: &Element) -> String {
        match (self, a) {
            (VertexGroup::Finite(g), Element::Finite(i)) if *i < g.order() => g.name(*i).to_owned(),
            (VertexGroup::Integer, Element::Integer(n)) => n.to_string(),
            (VertexGroup::Free(_), Element::Free(w)) => w.to_string(),
            _ => format!("<foreign {a:?}>"),
        }
    }

    /// All elements, for finite groups.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            VertexGroup::Finite(g) => Some((0..g.order()).map(Element::Finite).collect()),
            VertexGroup::Free(f) if f.rank() == 0 => Some(vec![self.identity()]),
            _ => None,
        }
    }

    /// A finite sample of elements: every element of a finite group, integers in
    /// `[-bound, bound]`, or reduced free words of length at most `bound`.
    /// Identity first, then in a fixed order.
    pub fn sample_elements(&self, bound: usize) -> Vec<Element> {
        match self {
            VertexGroup::Finite(g) => {
                let mut out = vec![Element::Finite(g.identity())];
                out.extend((0..g.order()).filter(|&i| i != g.identity()).map(Element::Finite));
                out
            }
            VertexGroup::Integer => {
                let b = bound as i64;
                let mut out = vec![Element::Integer(0)];
                for n in 1..=b {
                    out.push(Element::Integer(n));
                    out.push(Element::Integer(-n));
                }
                out
            }
            VertexGroup::Free(f) => f.words_up_to(bound).into_iter().map(Element::Free).collect(),
        }
    }

    /// Short description such as `C3`, `Z` or `F2`.
    pub fn label(&self) -> String {
        match self {
            VertexGroup::Finite(g) => g.label(),
            VertexGroup::Integer => "Z".to_owned(),
            VertexGroup::Free(f) => format!("F{}", f.rank()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Finite(finite::FiniteSubgroup),
    Integer { modulus: u64 },
    Free(CoreGraph),
}

/// A finitely generated subgroup of a vertex group, held in a canonical form:
/// the member set (finite kind), the non-negative generator `m` of `mZ`
/// (integer kind), or the folded core graph (free kind). Two handles for the
/// same subgroup compare equal regardless of how they were generated.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: Arc<VertexGroup>,
    generators: Vec<Element>,
    repr: Repr,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) && self.repr == other.repr
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generate(group: &Arc<VertexGroup>, gens: &[Element]) -> Result<Subgroup> {
        if gens.iter().any(|g| !group.contains(g)) {
            return Err(Error::ForeignElement);
        }
        Ok(Self::generate_trusted(group, gens))
    }

    pub(crate) fn generate_trusted(group: &Arc<VertexGroup>, gens: &[Element]) -> Subgroup {
        let repr = match group.as_ref() {
            VertexGroup::Finite(g) => Repr::Finite(finite::FiniteSubgroup::generate(g, gens)),
            VertexGroup::Integer => Repr::Integer {
                modulus: integer::gcd_of(gens),
            },
            VertexGroup::Free(f) => Repr::Free(CoreGraph::fold(f.rank(), gens)),
        };
        let generators = match (&repr, group.as_ref()) {
            (Repr::Finite(s), VertexGroup::Finite(g)) => {
                s.canonical_generators(g).into_iter().map(Element::Finite).collect()
            }
            (Repr::Integer { modulus }, _) => {
                if *modulus == 0 {
                    Vec::new()
                } else {
                    vec![Element::Integer(*modulus as i64)]
                }
            }
            (Repr::Free(core), _) => core.basis().into_iter().map(Element::Free).collect(),
            _ => unreachable!(),
        };
        Subgroup {
            group: Arc::clone(group),
            generators,
            repr,
        }
    }

    pub fn trivial(group: &Arc<VertexGroup>) -> Subgroup {
        Self::generate_trusted(group, &[])
    }

    /// The whole group. Free groups are generated by their letters.
    pub fn full(group: &Arc<VertexGroup>) -> Subgroup {
        let gens: Vec<Element> = match group.as_ref() {
            VertexGroup::Finite(g) => (0..g.order()).map(Element::Finite).collect(),
            VertexGroup::Integer => vec![Element::Integer(1)],
            VertexGroup::Free(f) => (1..=f.rank() as i32)
                .map(|l| Element::Free(FreeWord::letter(l)))
                .collect(),
        };
        Self::generate_trusted(group, &gens)
    }

    pub fn group(&self) -> &Arc<VertexGroup> {
        &self.group
    }

    /// A canonical generating set (depends only on the subgroup).
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Membership test. Elements of other groups are never members.
    pub fn contains(&self, g: &Element) -> bool {
        if !self.group.contains(g) {
            return false;
        }
        match (&self.repr, g) {
            (Repr::Finite(s), Element::Finite(i)) => s.contains(*i),
            (Repr::Integer { modulus }, Element::Integer(n)) => integer::divides(*modulus, *n),
            (Repr::Free(core), Element::Free(w)) => core.accepts(w),
            _ => false,
        }
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Whether `a` and `b` lie in the same right coset.
    pub fn same_coset(&self, a: &Element, b: &Element) -> bool {
        self.contains(&self.group.right_quotient(a, b))
    }

    pub fn index(&self) -> Index {
        match &self.repr {
            Repr::Finite(s) => Index::Finite(s.index()),
            Repr::Integer { modulus: 0 } => Index::Infinite,
            Repr::Integer { modulus } => Index::Finite(*modulus as usize),
            Repr::Free(core) => core.index(),
        }
    }

    /// A right transversal `t_1 = 1, t_2, …, t_d`.
    pub fn coset_reps(&self) -> Result<Vec<Element>> {
        match &self.repr {
            Repr::Finite(s) => Ok(s.reps().iter().copied().map(Element::Finite).collect()),
            Repr::Integer { modulus: 0 } => Err(Error::InfiniteIndex),
            Repr::Integer { modulus } => Ok((0..*modulus as i64).map(Element::Integer).collect()),
            Repr::Free(core) => {
                if !core.index().is_finite() {
                    return Err(Error::InfiniteIndex);
                }
                Ok(core.transversal().into_iter().map(Element::Free).collect())
            }
        }
    }

    /// The transversal element of the right coset containing `g`.
    ///
    /// Free subgroups of infinite index still canonicalise cosets whose
    /// representatives can be read in the core graph.
    pub fn canonical_rep(&self, g: &Element) -> Result<Element> {
        if !self.group.contains(g) {
            return Err(Error::ForeignElement);
        }
        match (&self.repr, g) {
            (Repr::Finite(s), Element::Finite(i)) => Ok(Element::Finite(s.rep_of(*i))),
            (Repr::Integer { modulus: 0 }, _) => Err(Error::InfiniteIndex),
            (Repr::Integer { modulus }, Element::Integer(n)) => Ok(Element::Integer(n.rem_euclid(*modulus as i64))),
            (Repr::Free(core), Element::Free(w)) => match core.trace(w) {
                Trace::Complete(state) => Ok(Element::Free(core.transversal_word(state))),
                Trace::Stuck { .. } => Err(Error::UntracedCoset),
            },
            _ => Err(Error::ForeignElement),
        }
    }

    /// `canonical_rep` when the coset has a canonical representative, otherwise
    /// `g` itself.
    pub fn normalize(&self, g: &Element) -> Element {
        if self.index().is_finite() {
            self.canonical_rep(g).unwrap_or_else(|_| g.clone())
        } else {
            g.clone()
        }
    }

    /// A finite-index subgroup containing `self` and none of `excluded`.
    ///
    /// Finite groups return the subgroup itself; for `Z`, `mZ` with `m ≠ 0` is
    /// returned unchanged and `0Z` becomes `nZ` with `n = 1 + max|x|`; for free
    /// groups the core graph is extended by a path reading each excluded element
    /// and then every letter's partial permutation is completed.
    pub fn separate(&self, excluded: &[Element]) -> Result<Subgroup> {
        for x in excluded {
            if !self.group.contains(x) {
                return Err(Error::ForeignElement);
            }
            if self.contains(x) {
                return Err(Error::NotSeparated(self.group.format_element(x)));
            }
        }
        match &self.repr {
            Repr::Finite(_) => Ok(self.clone()),
            Repr::Integer { modulus } if *modulus != 0 => Ok(self.clone()),
            Repr::Integer { .. } => {
                let n = integer::separating_modulus(excluded);
                Ok(Self::generate_trusted(&self.group, &[Element::Integer(n)]))
            }
            Repr::Free(core) => {
                let words: Vec<&FreeWord> = excluded
                    .iter()
                    .map(|x| match x {
                        Element::Free(w) => w,
                        _ => unreachable!(),
                    })
                    .collect();
                let cover = core.complete_avoiding(&words);
                let gens: Vec<Element> = cover.basis().into_iter().map(Element::Free).collect();
                Ok(Subgroup {
                    group: Arc::clone(&self.group),
                    generators: gens,
                    repr: Repr::Free(cover),
                })
            }
        }
    }

    /// `k⁻¹·S·k`.
    pub fn conjugate(&self, k: &Element) -> Subgroup {
        let gens: Vec<Element> = self.generators.iter().map(|g| self.group.conjugate(g, k)).collect();
        Self::generate_trusted(&self.group, &gens)
    }

    /// The subgroup generated by `self` and `other`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::generate_trusted(&self.group, &gens)
    }

    /// The subgroup generated by `self` and `g`.
    pub fn with_element(&self, g: &Element) -> Subgroup {
        if self.contains(g) {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(g.clone());
        Self::generate_trusted(&self.group, &gens)
    }

    /// All members, for subgroups of finite groups.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match &self.repr {
            Repr::Finite(s) => Some(s.members().map(Element::Finite).collect()),
            Repr::Free(core) if core.state_count() == 1 && core.is_trivial() => Some(vec![self.group.identity()]),
            Repr::Integer { modulus: 0 } => Some(vec![Element::Integer(0)]),
            _ => None,
        }
    }

    /// The folded core graph of a free-group subgroup.
    pub fn core_graph(&self) -> Option<&CoreGraph> {
        match &self.repr {
            Repr::Free(core) => Some(core),
            _ => None,
        }
    }

    /// Human-readable generator list, e.g. `<a, b2>`.
    pub fn describe(&self) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| self.group.format_element(g)).collect();
        format!("<{}>", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, g: &str) -> Arc<VertexGroup> {
        Arc::new(VertexGroup::cyclic(n, g))
    }

    fn el(g: &VertexGroup, s: &str) -> Element {
        g.parse_element(s).unwrap()
    }

    #[test]
    fn element_arithmetic() {
        let c2 = c(2, "a");
        let a = el(&c2, "a");
        assert!(c2.is_identity(&c2.mul(&a, &a)));

        let z = VertexGroup::Integer;
        assert_eq!(z.inv(&Element::Integer(5)), Element::Integer(-5));

        let f2 = VertexGroup::free(2);
        let xy = el(&f2, "x1.x2");
        let y_inv = el(&f2, "x2-");
        assert_eq!(f2.mul(&xy, &y_inv), el(&f2, "x1"));
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let c2 = c(2, "a");
        assert_eq!(
            c2.checked_mul(&Element::Integer(1), &c2.identity()),
            Err(Error::ForeignElement)
        );
        assert_eq!(c2.checked_inv(&Element::Finite(2)), Err(Error::ForeignElement));
        let f2 = VertexGroup::free(2);
        assert!(!f2.contains(&Element::Free(FreeWord::letter(3))));
    }

    #[test]
    fn generate_examples() {
        let z = Arc::new(VertexGroup::Integer);
        let s = Subgroup::generate(&z, &[Element::Integer(4), Element::Integer(6)]).unwrap();
        assert_eq!(s.generators(), &[Element::Integer(2)]);
        assert_eq!(s.index(), Index::Finite(2));

        let c3 = c(3, "b");
        let s = Subgroup::generate(&c3, &[el(&c3, "b2")]).unwrap();
        assert_eq!(s, Subgroup::full(&c3));
        assert_eq!(s.index(), Index::Finite(1));
    }

    #[test]
    fn membership_examples() {
        let z = Arc::new(VertexGroup::Integer);
        let two_z = Subgroup::generate(&z, &[Element::Integer(2)]).unwrap();
        assert!(!two_z.contains(&Element::Integer(7)));
        assert!(two_z.contains(&Element::Integer(-4)));

        let c2 = c(2, "a");
        let triv = Subgroup::trivial(&c2);
        assert!(!triv.contains(&el(&c2, "a")));
        assert!(triv.contains(&el(&c2, "1")));
    }

    #[test]
    fn index_and_transversal_examples() {
        let z = Arc::new(VertexGroup::Integer);
        let two_z = Subgroup::generate(&z, &[Element::Integer(2)]).unwrap();
        assert_eq!(
            two_z.coset_reps().unwrap(),
            vec![Element::Integer(0), Element::Integer(1)]
        );
        assert_eq!(two_z.canonical_rep(&Element::Integer(7)).unwrap(), Element::Integer(1));
        assert_eq!(two_z.canonical_rep(&Element::Integer(-3)).unwrap(), Element::Integer(1));

        let c3 = c(3, "b");
        let triv = Subgroup::trivial(&c3);
        assert_eq!(triv.index(), Index::Finite(3));
        let reps: Vec<String> = triv
            .coset_reps()
            .unwrap()
            .iter()
            .map(|t| c3.format_element(t))
            .collect();
        assert_eq!(reps, ["1", "b", "b2"]);
        assert_eq!(triv.canonical_rep(&el(&c3, "b2")).unwrap(), el(&c3, "b2"));

        let zero = Subgroup::trivial(&z);
        assert_eq!(zero.index(), Index::Infinite);
        assert_eq!(zero.coset_reps(), Err(Error::InfiniteIndex));
        assert_eq!(zero.canonical_rep(&Element::Integer(3)), Err(Error::InfiniteIndex));
    }

    #[test]
    fn separate_finite_returns_self() {
        let c2 = c(2, "a");
        let triv = Subgroup::trivial(&c2);
        let k = triv.separate(&[el(&c2, "a")]).unwrap();
        assert_eq!(k, triv);
        assert_eq!(k.index(), Index::Finite(2));
    }

    #[test]
    fn separate_integer_uses_one_plus_max() {
        let z = Arc::new(VertexGroup::Integer);
        let zero = Subgroup::trivial(&z);
        let k = zero.separate(&[Element::Integer(2)]).unwrap();
        assert_eq!(k.generators(), &[Element::Integer(3)]);
        let k = zero.separate(&[]).unwrap();
        assert_eq!(k.index(), Index::Finite(1));
        let k = zero.separate(&[Element::Integer(-5), Element::Integer(3)]).unwrap();
        assert_eq!(k.generators(), &[Element::Integer(6)]);
        let four = Subgroup::generate(&z, &[Element::Integer(4)]).unwrap();
        assert_eq!(four.separate(&[Element::Integer(2)]).unwrap(), four);
    }

    #[test]
    fn separate_rejects_members() {
        let z = Arc::new(VertexGroup::Integer);
        let two = Subgroup::generate(&z, &[Element::Integer(2)]).unwrap();
        assert!(matches!(
            two.separate(&[Element::Integer(4)]),
            Err(Error::NotSeparated(_))
        ));
    }

    #[test]
    fn conjugate_and_join() {
        let s3 = Arc::new(VertexGroup::Finite(FiniteGroup::symmetric(3)));
        let t = el(&s3, "p102");
        let k = el(&s3, "p021");
        let s = Subgroup::generate(&s3, std::slice::from_ref(&t)).unwrap();
        let c = s.conjugate(&k);
        assert!(c.contains(&s3.conjugate(&t, &k)));
        assert_eq!(c.index(), Index::Finite(3));
        assert_eq!(s.join(&c), Subgroup::full(&s3));
    }
}
