//! Revision based on relaxation: relax each sentence of the old base as
//! few times as possible until it becomes consistent with the new one.

use crate::error::{Error, Result};
use crate::model_set::{ModelRelation, ModelSet};
use crate::relax::Relaxation;
use crate::satsys::{KnowledgeBase, SatisfactionSystem, Semantics};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One Σ-minimal vector, chosen by a fixed tie-break.
    Minimal,
    /// The join of the Σ-minimal vectors of every weaker context.
    Coherent,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimal" => Ok(Mode::Minimal),
            "coherent" => Ok(Mode::Coherent),
            other => Err(Error::Config(format!(
                "unknown mode `{other}` (expected minimal or coherent)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Minimal => "minimal",
            Mode::Coherent => "coherent",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RevisionConfig {
    pub mode: Mode,
    /// Upper bound on relaxations of a single sentence.
    pub max_cap: usize,
    /// Coherent mode enumerates model supersets of the new base only when
    /// there are at most this many.
    pub superset_limit: usize,
    pub allow_non_exhaustive: bool,
}

impl Default for RevisionConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Coherent,
            max_cap: 8,
            superset_limit: 4096,
            allow_non_exhaustive: false,
        }
    }
}

impl RevisionConfig {
    pub fn minimal() -> Self {
        Self {
            mode: Mode::Minimal,
            ..Self::default()
        }
    }

    pub fn coherent() -> Self {
        Self::default()
    }
}

/// Per-sentence relaxation counts, indexed like the knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RelaxationVector(pub Vec<usize>);

impl RelaxationVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Componentwise `≤`.
    pub fn leq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `≤` and strictly smaller somewhere.
    pub fn lt(&self, other: &Self) -> bool {
        self.leq(other) && self != other
    }

    pub fn join(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl fmt::Display for RelaxationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: fmt::Display"))]
pub struct RevisionResult<T> {
    pub revised: KnowledgeBase<T>,
    pub vector: RelaxationVector,
    pub mode: Mode,
    /// The Σ-minimal consistent vectors for the new base itself.
    pub candidates: Vec<RelaxationVector>,
    pub flags: Vec<String>,
}

pub const FLAG_INCONSISTENT_INPUT: &str = "inconsistent-input";
pub const FLAG_INCONSISTENT_BASE: &str = "inconsistent-base";

struct Chain<T> {
    sentences: Vec<T>,
    models: Vec<Arc<ModelSet>>,
    done: bool,
}

/// Iterated relaxations of every sentence of a base, built lazily and
/// shared by all the consistency queries of one revision.
pub struct RelaxationSearch<'a, S: SatisfactionSystem, R: ?Sized> {
    sem: &'a Semantics<S>,
    rho: &'a R,
    chains: Vec<Chain<S::Sentence>>,
    max_cap: usize,
}

impl<'a, S, R> RelaxationSearch<'a, S, R>
where
    S: SatisfactionSystem,
    R: Relaxation<S> + ?Sized,
{
    pub fn new(
        sem: &'a Semantics<S>,
        rho: &'a R,
        kb: &KnowledgeBase<S::Sentence>,
        max_cap: usize,
    ) -> Result<Self> {
        let mut chains = Vec::with_capacity(kb.len());
        for s in kb.iter() {
            let models = sem.sentence_models(s)?;
            let done = models.is_full() || max_cap == 0;
            chains.push(Chain {
                sentences: vec![s.clone()],
                models: vec![models],
                done,
            });
        }
        Ok(Self {
            sem,
            rho,
            chains,
            max_cap,
        })
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    fn extend_to(&mut self, level: usize) -> Result<()> {
        for chain in &mut self.chains {
            while !chain.done && chain.sentences.len() <= level {
                let last = chain.sentences.last().expect("chains are never empty");
                let next = self.rho.relax(self.sem, last)?;
                if &next == last {
                    chain.done = true;
                    break;
                }
                let models = self.sem.sentence_models(&next)?;
                chain.done = models.is_full() || chain.sentences.len() == self.max_cap;
                chain.sentences.push(next);
                chain.models.push(models);
            }
        }
        Ok(())
    }

    /// Builds every chain to its end and returns the per-sentence caps:
    /// the exhaustivity index, the first syntactic fixpoint, or `max_cap`.
    pub fn caps(&mut self) -> Result<Vec<usize>> {
        self.extend_to(self.max_cap)?;
        Ok(self.chains.iter().map(|c| c.sentences.len() - 1).collect())
    }

    fn current_caps(&self) -> Vec<usize> {
        self.chains.iter().map(|c| c.sentences.len() - 1).collect()
    }

    fn all_done(&self) -> bool {
        self.chains.iter().all(|c| c.done)
    }

    /// `Mod(ρ^𝒦(T))`. Components must be within the built chains.
    pub fn vector_models(&self, k: &[usize]) -> ModelSet {
        let mut acc = self.sem.full();
        for (chain, &ki) in self.chains.iter().zip(k) {
            acc.intersect_with(&chain.models[ki.min(chain.models.len() - 1)]);
        }
        acc
    }

    fn consistent_with(&self, k: &[usize], base: &ModelSet) -> bool {
        let mut acc = base.clone();
        for (chain, &ki) in self.chains.iter().zip(k) {
            acc.intersect_with(&chain.models[ki.min(chain.models.len() - 1)]);
            if acc.is_empty() {
                return false;
            }
        }
        !acc.is_empty()
    }

    /// Whether `ρ^𝒦(T) ∪ T'` is consistent, with `T'` given by its models.
    pub fn is_consistent(&mut self, k: &[usize], target: &ModelSet) -> Result<bool> {
        let top = k.iter().copied().max().unwrap_or(0);
        self.extend_to(top)?;
        let base = target.difference(self.sem.trivial_models());
        Ok(self.consistent_with(k, &base))
    }

    /// All consistent vectors of least sum, in ascending lexicographic
    /// order, or `None` when no vector within the caps is consistent.
    pub fn minimal_vectors(&mut self, target: &ModelSet) -> Result<Option<Vec<RelaxationVector>>> {
        let base = target.difference(self.sem.trivial_models());
        if base.is_empty() {
            return Ok(None);
        }
        let mut level = 0;
        loop {
            self.extend_to(level)?;
            let caps = self.current_caps();
            if self.all_done() && level > caps.iter().sum::<usize>() {
                return Ok(None);
            }
            let mut vectors = Vec::new();
            compositions(level, &caps, &mut Vec::new(), &mut vectors);
            let mut hits: Vec<RelaxationVector> = vectors
                .into_par_iter()
                .filter(|k| self.consistent_with(k, &base))
                .map(RelaxationVector)
                .collect();
            if !hits.is_empty() {
                hits.sort();
                return Ok(Some(hits));
            }
            level += 1;
        }
    }

    /// `ρ^𝒦(T)`, keeping the first of any duplicates.
    pub fn apply(&mut self, k: &RelaxationVector) -> Result<KnowledgeBase<S::Sentence>> {
        let top = k.0.iter().copied().max().unwrap_or(0);
        self.extend_to(top)?;
        Ok(KnowledgeBase::new(self.chains.iter().zip(&k.0).map(
            |(chain, &ki)| chain.sentences[ki.min(chain.sentences.len() - 1)].clone(),
        )))
    }

    fn frontier(&self) -> String {
        let caps = self.current_caps();
        format!("every vector up to caps {}", RelaxationVector(caps))
    }
}

/// Vectors with the given sum, bounded componentwise by `caps`, in
/// ascending lexicographic order.
fn compositions(sum: usize, caps: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == caps.len() {
        if sum == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let rest: usize = caps[prefix.len() + 1..].iter().sum();
    let cap = caps[prefix.len()];
    let lo = sum.saturating_sub(rest);
    for k in lo..=cap.min(sum) {
        prefix.push(k);
        compositions(sum - k, caps, prefix, out);
        prefix.pop();
    }
}

/// `ρ^𝒦(T)`.
pub fn apply_vector<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    rho: &(impl Relaxation<S> + ?Sized),
    kb: &KnowledgeBase<S::Sentence>,
    vector: &RelaxationVector,
) -> Result<KnowledgeBase<S::Sentence>> {
    if vector.len() != kb.len() {
        return Err(Error::LengthMismatch {
            left: kb.len(),
            right: vector.len(),
        });
    }
    let max = vector.0.iter().copied().max().unwrap_or(0);
    RelaxationSearch::new(sem, rho, kb, max)?.apply(vector)
}

/// `T' ⊑ T''`, decided as `Mod(T'') ⊆ Mod(T')`.
pub fn revision_order_leq<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    t1: &KnowledgeBase<S::Sentence>,
    t2: &KnowledgeBase<S::Sentence>,
) -> Result<bool> {
    Ok(sem.models_of(t2)?.is_subset(&sem.models_of(t1)?))
}

/// The definitional form, with the witness `T''' = T' ∪ T''`.
pub fn revision_order_leq_witness<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    t1: &KnowledgeBase<S::Sentence>,
    t2: &KnowledgeBase<S::Sentence>,
) -> Result<bool> {
    let witness = t1.union(t2);
    Ok(t1.is_subset(&witness) && sem.cn_equal(&witness, t2)?)
}

fn check_admissible<S: SatisfactionSystem>(
    rho: &(impl Relaxation<S> + ?Sized),
    config: &RevisionConfig,
) -> Result<()> {
    if !rho.exhaustive() && !config.allow_non_exhaustive {
        return Err(Error::Config(format!(
            "relaxation `{}` is not exhaustive; enable non-exhaustive relaxations to use it",
            rho.name()
        )));
    }
    Ok(())
}

fn context_sets<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    t_new: Option<&KnowledgeBase<S::Sentence>>,
    target: &ModelSet,
    config: &RevisionConfig,
) -> Result<Vec<ModelSet>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |set: ModelSet, out: &mut Vec<ModelSet>| {
        if sem.is_consistent_set(&set) && seen.insert(set.clone()) {
            out.push(set);
        }
    };
    push(target.clone(), &mut out);
    if let Some(kb) = t_new {
        if kb.len() <= 16 {
            for mask in 0..(1u64 << kb.len()) {
                push(sem.models_of(&kb.subset_by_mask(mask))?, &mut out);
            }
        }
    }
    let free: Vec<usize> = target.complement().iter().collect();
    if free.len() < usize::BITS as usize && (1usize << free.len()) <= config.superset_limit {
        for mask in 1..(1u64 << free.len()) {
            let mut set = target.clone();
            for (bit, &m) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    set.insert(m);
                }
            }
            match sem.system().definable_theory(&set) {
                Ok(Some(_)) => push(set, &mut out),
                Ok(None) => {}
                Err(Error::Unsupported(_)) => break,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

fn choose_vector<S, R>(
    sem: &Semantics<S>,
    search: &mut RelaxationSearch<'_, S, R>,
    t_new: Option<&KnowledgeBase<S::Sentence>>,
    target: &ModelSet,
    config: &RevisionConfig,
) -> Result<(RelaxationVector, Vec<RelaxationVector>)>
where
    S: SatisfactionSystem,
    R: Relaxation<S> + ?Sized,
{
    let candidates = search
        .minimal_vectors(target)?
        .ok_or_else(|| Error::RevisionFailed {
            frontier: search.frontier(),
        })?;
    let vector = match config.mode {
        // Ties are broken towards relaxing earlier sentences.
        Mode::Minimal => candidates.last().cloned().expect("nonempty"),
        Mode::Coherent => {
            let mut joined = RelaxationVector::zeros(search.len());
            for context in context_sets(sem, t_new, target, config)? {
                if let Some(mins) = search.minimal_vectors(&context)? {
                    for k in &mins {
                        joined = joined.join(k);
                    }
                }
            }
            joined
        }
    };
    Ok((vector, candidates))
}

/// `T ∘ T'`.
pub fn revise<S, R>(
    sem: &Semantics<S>,
    rho: &R,
    t: &KnowledgeBase<S::Sentence>,
    t_new: &KnowledgeBase<S::Sentence>,
    config: &RevisionConfig,
) -> Result<RevisionResult<S::Sentence>>
where
    S: SatisfactionSystem,
    R: Relaxation<S> + ?Sized,
{
    check_admissible(rho, config)?;
    let target = sem.models_of(t_new)?;
    let mut flags = Vec::new();
    if !sem.is_consistent_set(&target) {
        flags.push(FLAG_INCONSISTENT_INPUT.to_string());
        return Ok(RevisionResult {
            revised: t_new.clone(),
            vector: RelaxationVector::zeros(t.len()),
            mode: config.mode,
            candidates: Vec::new(),
            flags,
        });
    }
    if !sem.is_consistent(t)? {
        flags.push(FLAG_INCONSISTENT_BASE.to_string());
    }
    let mut search = RelaxationSearch::new(sem, rho, t, config.max_cap)?;
    let (vector, candidates) = choose_vector(sem, &mut search, Some(t_new), &target, config)?;
    let revised = search.apply(&vector)?.union(t_new);
    Ok(RevisionResult {
        revised,
        vector,
        mode: config.mode,
        candidates,
        flags,
    })
}

/// The vector the operator picks when the new base is given only by its
/// models. `None` when those models are inconsistent.
pub fn revision_vector_for_models<S, R>(
    sem: &Semantics<S>,
    rho: &R,
    t: &KnowledgeBase<S::Sentence>,
    target: &ModelSet,
    config: &RevisionConfig,
) -> Result<Option<RelaxationVector>>
where
    S: SatisfactionSystem,
    R: Relaxation<S> + ?Sized,
{
    check_admissible(rho, config)?;
    if !sem.is_consistent_set(target) {
        return Ok(None);
    }
    let mut search = RelaxationSearch::new(sem, rho, t, config.max_cap)?;
    Ok(Some(choose_vector(sem, &mut search, None, target, config)?.0))
}

/// Zeroing any nonzero component makes the revision inconsistent again.
pub fn check_relevance<S, R>(
    sem: &Semantics<S>,
    rho: &R,
    t: &KnowledgeBase<S::Sentence>,
    t_new: &KnowledgeBase<S::Sentence>,
    vector: &RelaxationVector,
) -> Result<bool>
where
    S: SatisfactionSystem,
    R: Relaxation<S> + ?Sized,
{
    let target = sem.models_of(t_new)?;
    if !sem.is_consistent_set(&target) {
        return Ok(true);
    }
    let max = vector.0.iter().copied().max().unwrap_or(0);
    let mut search = RelaxationSearch::new(sem, rho, t, max)?;
    for i in 0..vector.len() {
        if vector.0[i] == 0 {
            continue;
        }
        let mut k = vector.0.clone();
        k[i] = 0;
        if search.is_consistent(&k, &target)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No consistent vector has a strictly smaller sum.
pub fn check_minimality<S, R>(
    sem: &Semantics<S>,
    rho: &R,
    t: &KnowledgeBase<S::Sentence>,
    t_new: &KnowledgeBase<S::Sentence>,
    vector: &RelaxationVector,
    max_cap: usize,
) -> Result<bool>
where
    S: SatisfactionSystem,
    R: Relaxation<S> + ?Sized,
{
    let target = sem.models_of(t_new)?;
    let mut search = RelaxationSearch::new(sem, rho, t, max_cap)?;
    match search.minimal_vectors(&target)? {
        Some(mins) => Ok(mins[0].sum() >= vector.sum()),
        None => Ok(true),
    }
}

fn box_vectors(lo: &[usize], hi: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for (&l, &h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for prefix in &out {
            for k in l..=h.max(l) {
                let mut v = prefix.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn strictly_below(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a != b
}

/// The relation `⪯_T` assigned to `T` by `f_ρ`, as the union over every
/// definable model set `X` of `⪯^X_T`. Vectors range from `𝒦^X_T` up to
/// the exhaustivity caps.
pub fn f_rho_relation<S, R>(
    sem: &Semantics<S>,
    rho: &R,
    t: &KnowledgeBase<S::Sentence>,
    config: &RevisionConfig,
) -> Result<ModelRelation>
where
    S: SatisfactionSystem,
    R: Relaxation<S> + ?Sized,
{
    let n = sem.space();
    if n > 12 {
        return Err(Error::SpaceTooLarge {
            count: 1u128 << n.min(127),
            ceiling: 1 << 12,
        });
    }
    let mut search = RelaxationSearch::new(sem, rho, t, config.max_cap)?;
    let caps = search.caps()?;
    let mut rel = ModelRelation::empty(n);
    for mask in 0..(1u64 << n) {
        let set = ModelSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if sem.system().definable_theory(&set)?.is_none() {
            continue;
        }
        let Some(k_x) = revision_vector_for_models(sem, rho, t, &set, config)? else {
            continue;
        };
        let vectors = box_vectors(&k_x.0, &caps);
        let models: Vec<ModelSet> = vectors.iter().map(|k| search.vector_models(k)).collect();
        for a in set.iter() {
            for b in set.iter() {
                let holds = vectors.iter().zip(&models).all(|(k2, m2)| {
                    !m2.contains(b)
                        || vectors
                            .iter()
                            .zip(&models)
                            .any(|(k1, m1)| strictly_below(k1, k2) && m1.contains(a))
                });
                if holds {
                    rel.insert(a, b);
                }
            }
        }
    }
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_are_bounded_and_ordered() {
        let mut out = Vec::new();
        compositions(2, &[1, 2], &mut Vec::new(), &mut out);
        assert_eq!(out, vec![vec![0, 2], vec![1, 1]]);
    }

    #[test]
    fn vector_order() {
        let a = RelaxationVector(vec![0, 1]);
        let b = RelaxationVector(vec![1, 1]);
        assert!(a.lt(&b));
        assert!(!b.lt(&a));
        assert!(!a.lt(&a));
        assert_eq!(a.join(&RelaxationVector(vec![1, 0])), b);
    }

    #[test]
    fn mode_parses() {
        assert_eq!("minimal".parse::<Mode>().unwrap(), Mode::Minimal);
        assert!("fast".parse::<Mode>().is_err());
    }
}
