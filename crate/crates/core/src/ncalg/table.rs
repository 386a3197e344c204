use std::collections::BTreeMap;
use std::sync::Arc;

use super::expr::Var;

/// How the atoms of a family behave under time shift and reordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// No relations beyond those declared pairwise.
    Free,
    /// Every shift of the family commutes with every shift of every other
    /// scalar family.
    Scalar,
    /// A scalar family fixed by the shift (`c' = c`).
    Constant,
}

impl FamilyKind {
    pub fn is_scalar(self) -> bool {
        matches!(self, FamilyKind::Scalar | FamilyKind::Constant)
    }
}

/// Relation between two atoms of equal shift drawn from a declared pair of
/// families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Commute,
    /// `hi·lo = q^w·lo·hi`, where `lo` precedes `hi` in canonical order.
    QCommute(i32),
}

/// Declared families and their pairwise relations.
///
/// Pairwise relations hold between atoms of the same shift, so they are
/// invariant under the shift. Undeclared families are free.
#[derive(Clone, Debug, Default)]
pub struct CommutationTable {
    kinds: BTreeMap<Arc<str>, FamilyKind>,
    index_ranges: BTreeMap<Arc<str>, u16>,
    relations: BTreeMap<(Arc<str>, Arc<str>), Relation>,
}

impl CommutationTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(mut self, family: &str, kind: FamilyKind) -> Self {
        self.kinds.insert(family.into(), kind);
        self
    }

    pub fn scalar(self, family: &str) -> Self {
        self.declare(family, FamilyKind::Scalar)
    }

    pub fn constant(self, family: &str) -> Self {
        self.declare(family, FamilyKind::Constant)
    }

    /// Declares an indexed family with members `family[1] .. family[count]`.
    pub fn indexed(mut self, family: &str, kind: FamilyKind, count: u16) -> Self {
        self.kinds.insert(family.into(), kind);
        self.index_ranges.insert(family.into(), count);
        self
    }

    /// Atoms of `a` and `b` with equal shift commute. With `a == b` this
    /// makes distinct members of an indexed family commute.
    pub fn commute(mut self, a: &str, b: &str) -> Self {
        let key = ordered(a, b);
        self.relations.insert(key, Relation::Commute);
        self
    }

    /// `second·first = q^w·first·second` for atoms of equal shift.
    pub fn qcommute(mut self, first: &str, second: &str, w: i32) -> Self {
        let w = if first <= second { w } else { -w };
        self.relations.insert(ordered(first, second), Relation::QCommute(w));
        self
    }

    pub fn kind(&self, family: &str) -> FamilyKind {
        self.kinds.get(family).copied().unwrap_or(FamilyKind::Free)
    }

    pub fn is_declared(&self, family: &str) -> bool {
        self.kinds.contains_key(family)
    }

    pub fn index_range(&self, family: &str) -> Option<u16> {
        self.index_ranges.get(family).copied()
    }

    pub fn relation(&self, a: &str, b: &str) -> Option<Relation> {
        self.relations.get(&ordered(a, b)).copied()
    }

    /// If `left·right` may be rewritten as `q^e·right·left`, returns `e`.
    pub(crate) fn exchange(&self, left: &Var, right: &Var) -> Option<i32> {
        if left == right {
            return Some(0);
        }
        if self.kind(&left.family).is_scalar() && self.kind(&right.family).is_scalar() {
            return Some(0);
        }
        if left.shift != right.shift {
            return None;
        }
        match self.relation(&left.family, &right.family)? {
            Relation::Commute => Some(0),
            Relation::QCommute(w) => {
                // For equal families the index decides which atom is `hi`.
                let left_is_hi = (&left.family, left.index) > (&right.family, right.index);
                Some(if left_is_hi { w } else { -w })
            }
        }
    }
}

fn ordered(a: &str, b: &str) -> (Arc<str>, Arc<str>) {
    if a <= b {
        (a.into(), b.into())
    } else {
        (b.into(), a.into())
    }
}
