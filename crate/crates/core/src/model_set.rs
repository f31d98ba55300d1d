//! Sets of models and binary relations over models, both indexed by the
//! position of each model in the enumerated (bounded) model space.

use fixedbitset::FixedBitSet;
use std::fmt;

/// A finite set of models, represented as a bit set over model indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    bits: FixedBitSet,
}

impl ModelSet {
    pub fn empty(space: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(space),
        }
    }

    pub fn full(space: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(space);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_indices(space: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(space);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Size of the model space this set lives in.
    pub fn space(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn insert(&mut self, index: usize) {
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.bits.set(index, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ModelSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ModelSet { bits }
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ModelSet { bits }
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ModelSet { bits }
    }

    pub fn complement(&self) -> ModelSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ModelSet { bits }
    }

    pub fn intersect_with(&mut self, other: &ModelSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn union_with(&mut self, other: &ModelSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &ModelSet) {
        self.bits.difference_with(&other.bits);
    }

    /// True when `self ∩ other \ minus` is nonempty, without allocating.
    pub fn meets_outside(&self, other: &ModelSet, minus: &ModelSet) -> bool {
        self.bits
            .as_slice()
            .iter()
            .zip(other.bits.as_slice())
            .zip(minus.bits.as_slice())
            .any(|((a, b), m)| a & b & !m != 0)
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation over the model space, stored extensionally as an
/// `n × n` bit matrix. `holds(a, b)` reads "a ⪯ b".
#[derive(Clone, PartialEq, Eq)]
pub struct ModelRelation {
    space: usize,
    pairs: FixedBitSet,
}

impl ModelRelation {
    pub fn empty(space: usize) -> Self {
        Self {
            space,
            pairs: FixedBitSet::with_capacity(space * space),
        }
    }

    pub fn full(space: usize) -> Self {
        let mut rel = Self::empty(space);
        rel.pairs.insert_range(..);
        rel
    }

    pub fn from_pairs(space: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut rel = Self::empty(space);
        for (a, b) in pairs {
            rel.insert(a, b);
        }
        rel
    }

    /// Builds the relation from a predicate evaluated on every ordered pair.
    pub fn from_fn(space: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rel = Self::empty(space);
        for a in 0..space {
            for b in 0..space {
                if f(a, b) {
                    rel.insert(a, b);
                }
            }
        }
        rel
    }

    pub fn space(&self) -> usize {
        self.space
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.pairs.insert(a * self.space + b);
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(a * self.space + b)
    }

    /// The strict part: `a ≺ b` iff `a ⪯ b` and not `b ⪯ a`.
    pub fn strictly(&self, a: usize, b: usize) -> bool {
        self.holds(a, b) && !self.holds(b, a)
    }

    pub fn len(&self) -> usize {
        self.pairs.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_clear()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.ones().map(|i| (i / self.space, i % self.space))
    }

    pub fn union(&self, other: &ModelRelation) -> ModelRelation {
        let mut pairs = self.pairs.clone();
        pairs.union_with(&other.pairs);
        ModelRelation {
            space: self.space,
            pairs,
        }
    }

    pub fn intersection(&self, other: &ModelRelation) -> ModelRelation {
        let mut pairs = self.pairs.clone();
        pairs.intersect_with(&other.pairs);
        ModelRelation {
            space: self.space,
            pairs,
        }
    }

    pub fn is_subset(&self, other: &ModelRelation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }
}

impl fmt::Debug for ModelRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// `Min(𝕄, ⪯)`: the members of `set` that no member of `set` strictly
/// precedes.
pub fn min_models(set: &ModelSet, rel: &ModelRelation) -> ModelSet {
    let mut out = ModelSet::empty(set.space());
    for m in set.iter() {
        if !set.iter().any(|other| rel.strictly(other, m)) {
            out.insert(m);
        }
    }
    out
}
