//! The satisfaction-system contract and the semantic toolbox built on top
//! of it: `Mod`, consequence membership, `Triv` and consistency, all
//! realized by exhaustive enumeration of a bounded model space.

use crate::error::{Error, Result};
use crate::model_set::ModelSet;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

/// Spaces at least this large are evaluated in parallel.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LogicTag {
    #[serde(rename = "PL")]
    Pl,
    #[serde(rename = "HCL")]
    Hcl,
    #[serde(rename = "FOL")]
    Fol,
    #[serde(rename = "DL-EL")]
    DlEl,
    #[serde(rename = "DL-ELU")]
    DlElu,
    #[serde(rename = "DL-ALC")]
    DlAlc,
}

impl fmt::Display for LogicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LogicTag::Pl => "PL",
            LogicTag::Hcl => "HCL",
            LogicTag::Fol => "FOL",
            LogicTag::DlEl => "DL-EL",
            LogicTag::DlElu => "DL-ELU",
            LogicTag::DlAlc => "DL-ALC",
        };
        f.write_str(s)
    }
}

/// A logic `(Sen, Mod, ⊨)` over a fixed signature, with a finite,
/// deterministically ordered model space.
///
/// Models are addressed by their index in the enumeration; `model(i)`
/// decodes the i-th model on demand so that large spaces never need to be
/// materialized.
pub trait SatisfactionSystem: Send + Sync {
    type Sentence: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;
    type Model: Clone + fmt::Debug + fmt::Display + Send + Sync;

    fn logic(&self) -> LogicTag;

    fn model_count(&self) -> usize;

    fn model(&self, index: usize) -> Self::Model;

    /// The satisfaction relation. Callers validate the sentence with
    /// [`check_sentence`](Self::check_sentence) first.
    fn satisfies(&self, model: &Self::Model, sentence: &Self::Sentence) -> bool;

    /// Rejects sentences that mention symbols outside the signature.
    fn check_sentence(&self, sentence: &Self::Sentence) -> Result<()>;

    /// `Triv`: the models satisfying every sentence of the logic.
    fn trivial_models(&self) -> ModelSet;

    /// A canonical tautology of the logic.
    fn tautology(&self) -> Self::Sentence;

    /// The enumeration bound, for logics whose model space is truncated.
    fn bound(&self) -> Option<usize> {
        None
    }

    /// All models of one sentence.
    fn sentence_models(&self, sentence: &Self::Sentence) -> ModelSet {
        let n = self.model_count();
        if n < PARALLEL_THRESHOLD {
            ModelSet::from_indices(
                n,
                (0..n).filter(|&i| self.satisfies(&self.model(i), sentence)),
            )
        } else {
            let hits: Vec<usize> = (0..n)
                .into_par_iter()
                .filter(|&i| self.satisfies(&self.model(i), sentence))
                .collect();
            ModelSet::from_indices(n, hits)
        }
    }

    /// A knowledge base whose models are exactly `models`, when the logic
    /// can express that set. `Ok(None)` means the set is not definable;
    /// an error means the logic offers no such synthesis at all.
    fn definable_theory(&self, models: &ModelSet) -> Result<Option<Vec<Self::Sentence>>> {
        let _ = models;
        Err(Error::Unsupported(format!(
            "theory synthesis from model sets is not available for {}",
            self.logic()
        )))
    }
}

/// A finite knowledge base: an ordered list of sentences without
/// structural duplicates. Indices are stable and serve as the tie-break
/// key of the revision search.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KnowledgeBase<T> {
    sentences: Vec<T>,
}

impl<T: PartialEq> KnowledgeBase<T> {
    /// Builds a knowledge base, dropping structural duplicates while
    /// keeping the first occurrence.
    pub fn new(sentences: impl IntoIterator<Item = T>) -> Self {
        let mut out: Vec<T> = Vec::new();
        for s in sentences {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        Self { sentences: out }
    }

    pub fn empty() -> Self {
        Self {
            sentences: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.sentences.iter()
    }

    pub fn get(&self, index: usize) -> Option<&T> {
        self.sentences.get(index)
    }

    pub fn sentences(&self) -> &[T] {
        &self.sentences
    }

    pub fn contains(&self, sentence: &T) -> bool {
        self.sentences.contains(sentence)
    }

    /// Syntactic inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.sentences.iter().all(|s| other.contains(s))
    }
}

impl<T: PartialEq + Clone> KnowledgeBase<T> {
    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.sentences.iter().chain(other.sentences.iter()).cloned())
    }

    pub fn with(&self, sentence: T) -> Self {
        Self::new(self.sentences.iter().cloned().chain(std::iter::once(sentence)))
    }

    /// The sub-knowledge-base selected by a bit mask over indices.
    pub fn subset_by_mask(&self, mask: u64) -> Self {
        Self::new(
            self.sentences
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone()),
        )
    }
}

impl<T: PartialEq> FromIterator<T> for KnowledgeBase<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl<T: fmt::Display> fmt::Display for KnowledgeBase<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.sentences.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl<T: fmt::Debug> fmt::Debug for KnowledgeBase<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.sentences.iter()).finish()
    }
}

impl<T: fmt::Display> Serialize for KnowledgeBase<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sentences.iter().map(|s| s.to_string()))
    }
}

/// A satisfaction system together with a memo table of per-sentence model
/// sets. All the semantic queries of the engine go through here.
pub struct Semantics<S: SatisfactionSystem> {
    system: S,
    trivial: ModelSet,
    cache: RwLock<HashMap<S::Sentence, Arc<ModelSet>>>,
}

impl<S: SatisfactionSystem> Semantics<S> {
    pub fn new(system: S) -> Self {
        let trivial = system.trivial_models();
        Self {
            system,
            trivial,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &S {
        &self.system
    }

    pub fn space(&self) -> usize {
        self.system.model_count()
    }

    pub fn full(&self) -> ModelSet {
        ModelSet::full(self.space())
    }

    pub fn satisfies(&self, model: &S::Model, sentence: &S::Sentence) -> Result<bool> {
        self.system.check_sentence(sentence)?;
        Ok(self.system.satisfies(model, sentence))
    }

    /// `Mod(φ)`, memoized.
    pub fn sentence_models(&self, sentence: &S::Sentence) -> Result<Arc<ModelSet>> {
        if let Some(hit) = self.cache.read().expect("model cache poisoned").get(sentence) {
            return Ok(Arc::clone(hit));
        }
        self.system.check_sentence(sentence)?;
        let models = Arc::new(self.system.sentence_models(sentence));
        self.cache
            .write()
            .expect("model cache poisoned")
            .insert(sentence.clone(), Arc::clone(&models));
        Ok(models)
    }

    /// `Mod(T)`; the empty knowledge base has every bounded model.
    pub fn models_of(&self, kb: &KnowledgeBase<S::Sentence>) -> Result<ModelSet> {
        self.models_of_sentences(kb.iter())
    }

    pub fn models_of_sentences<'a>(
        &self,
        sentences: impl IntoIterator<Item = &'a S::Sentence>,
    ) -> Result<ModelSet>
    where
        S::Sentence: 'a,
    {
        let mut acc = self.full();
        for s in sentences {
            acc.intersect_with(&*self.sentence_models(s)?);
        }
        Ok(acc)
    }

    pub fn trivial_models(&self) -> &ModelSet {
        &self.trivial
    }

    /// A model set denotes a consistent theory iff it has a non-trivial
    /// member.
    pub fn is_consistent_set(&self, models: &ModelSet) -> bool {
        !models.is_subset(&self.trivial)
    }

    pub fn is_consistent(&self, kb: &KnowledgeBase<S::Sentence>) -> Result<bool> {
        Ok(self.is_consistent_set(&self.models_of(kb)?))
    }

    /// `φ ∈ Cn(T)`.
    pub fn entails(&self, kb: &KnowledgeBase<S::Sentence>, sentence: &S::Sentence) -> Result<bool> {
        let models = self.models_of(kb)?;
        Ok(models.is_subset(&*self.sentence_models(sentence)?))
    }

    /// `Cn(T1) = Cn(T2)`, decided as `Mod(T1) = Mod(T2)`.
    pub fn cn_equal(
        &self,
        kb1: &KnowledgeBase<S::Sentence>,
        kb2: &KnowledgeBase<S::Sentence>,
    ) -> Result<bool> {
        Ok(self.models_of(kb1)? == self.models_of(kb2)?)
    }

    pub fn is_tautology(&self, sentence: &S::Sentence) -> Result<bool> {
        Ok(self.sentence_models(sentence)?.is_full())
    }

    pub fn describe_models(&self, models: &ModelSet) -> Vec<String> {
        models
            .iter()
            .map(|i| self.system.model(i).to_string())
            .collect()
    }
}
