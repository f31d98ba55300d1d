//! Relaxations: sentence transforms that never lose models and, iterated,
//! eventually reach the whole model space.

use crate::error::Result;
use crate::satsys::{SatisfactionSystem, Semantics};

pub trait Relaxation<S: SatisfactionSystem>: Send + Sync {
    fn name(&self) -> &str;

    fn relax(&self, sem: &Semantics<S>, sentence: &S::Sentence) -> Result<S::Sentence>;

    /// Whether iteration is guaranteed to reach a tautology. Revision with
    /// a non-exhaustive relaxation has to be requested explicitly.
    fn exhaustive(&self) -> bool {
        true
    }
}

impl<S: SatisfactionSystem, R: Relaxation<S> + ?Sized> Relaxation<S> for Box<R> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn relax(&self, sem: &Semantics<S>, sentence: &S::Sentence) -> Result<S::Sentence> {
        (**self).relax(sem, sentence)
    }

    fn exhaustive(&self) -> bool {
        (**self).exhaustive()
    }
}

/// `ρ^k(φ)`.
pub fn relax_times<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    rho: &(impl Relaxation<S> + ?Sized),
    sentence: &S::Sentence,
    k: usize,
) -> Result<S::Sentence> {
    let mut current = sentence.clone();
    for _ in 0..k {
        current = rho.relax(sem, &current)?;
    }
    Ok(current)
}

/// `Mod(φ) ⊆ Mod(ρ(φ))` on the bounded space.
pub fn check_extensivity<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    rho: &(impl Relaxation<S> + ?Sized),
    sentence: &S::Sentence,
) -> Result<bool> {
    let before = sem.sentence_models(sentence)?;
    let after = sem.sentence_models(&rho.relax(sem, sentence)?)?;
    Ok(before.is_subset(&after))
}

/// The least `k ≤ cap` with `Mod(ρ^k(φ))` the full bounded space.
pub fn exhaustivity_index<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    rho: &(impl Relaxation<S> + ?Sized),
    sentence: &S::Sentence,
    cap: usize,
) -> Result<Option<usize>> {
    let mut current = sentence.clone();
    for k in 0..=cap {
        if sem.sentence_models(&current)?.is_full() {
            return Ok(Some(k));
        }
        if k < cap {
            let next = rho.relax(sem, &current)?;
            if next == current {
                return Ok(None);
            }
            current = next;
        }
    }
    Ok(None)
}

/// Maps every sentence to the canonical tautology of the logic.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialRelaxation;

impl<S: SatisfactionSystem> Relaxation<S> for TrivialRelaxation {
    fn name(&self) -> &str {
        "trivial"
    }

    fn relax(&self, sem: &Semantics<S>, _sentence: &S::Sentence) -> Result<S::Sentence> {
        Ok(sem.system().tautology())
    }
}
