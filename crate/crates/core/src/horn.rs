//! Propositional Horn clauses. A sentence is a finite conjunction of
//! clauses `a & b -> c`; facts have an empty body.
//!
//! Valuations use the same indexing as the propositional module, so the
//! Hamming dilation carries over unchanged.

use crate::error::{Error, Result};
use crate::model_set::ModelSet;
use crate::pl::{dilate_models, PlSignature, Symbol, Valuation};
use crate::relax::Relaxation;
use crate::satsys::{LogicTag, SatisfactionSystem, Semantics};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornClause {
    pub body: BTreeSet<Symbol>,
    pub head: Symbol,
}

impl HornClause {
    pub fn new<I, A>(body: I, head: &str) -> Self
    where
        I: IntoIterator<Item = A>,
        A: AsRef<str>,
    {
        Self {
            body: body.into_iter().map(|a| Arc::from(a.as_ref())).collect(),
            head: Arc::from(head),
        }
    }

    pub fn fact(head: &str) -> Self {
        Self::new(std::iter::empty::<&str>(), head)
    }
}

impl fmt::Display for HornClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<&str> = self.body.iter().map(|a| &**a).collect();
        if body.is_empty() {
            write!(f, "-> {}", self.head)
        } else {
            write!(f, "{} -> {}", body.join(" & "), self.head)
        }
    }
}

/// A conjunction of Horn clauses, kept as an ordered set so that equal
/// clause sets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornSentence {
    clauses: BTreeSet<HornClause>,
}

impl HornSentence {
    pub fn new(clauses: impl IntoIterator<Item = HornClause>) -> Self {
        Self {
            clauses: clauses.into_iter().collect(),
        }
    }

    pub fn clauses(&self) -> impl Iterator<Item = &HornClause> {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

/// Clauses are separated by `;` on a single line. Documents print one
/// clause per line instead.
impl fmt::Display for HornSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Pointwise conjunction of two valuations.
pub fn model_intersect(a: &Valuation, b: &Valuation) -> Result<Valuation> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(Valuation::new(
        a.bits().iter().zip(b.bits()).map(|(x, y)| *x && *y).collect(),
    ))
}

/// Least superset of `set` closed under pairwise intersection, iterated
/// to a fixpoint.
pub fn intersection_closure(set: &ModelSet) -> ModelSet {
    let mut out = set.clone();
    let mut frontier: Vec<usize> = set.iter().collect();
    while let Some(i) = frontier.pop() {
        let members: Vec<usize> = out.iter().collect();
        for j in members {
            let k = i & j;
            if !out.contains(k) {
                out.insert(k);
                frontier.push(k);
            }
        }
    }
    out
}

pub fn is_intersection_closed(set: &ModelSet) -> bool {
    let members: Vec<usize> = set.iter().collect();
    members
        .iter()
        .all(|&i| members.iter().all(|&j| set.contains(i & j)))
}

#[derive(Clone, Debug)]
pub struct HornSystem {
    sig: PlSignature,
}

/// Clause as bit masks over valuation indices.
struct Compiled {
    body: usize,
    head: usize,
}

impl HornSystem {
    pub fn new(sig: PlSignature) -> Self {
        Self { sig }
    }

    pub fn with_atoms<I, A>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = A>,
        A: AsRef<str>,
    {
        Ok(Self::new(PlSignature::new(atoms)?))
    }

    pub fn signature(&self) -> &PlSignature {
        &self.sig
    }

    fn all_true(&self) -> usize {
        (1 << self.sig.len()) - 1
    }

    fn bit(&self, name: &str) -> usize {
        1 << (self.sig.len() - 1 - self.sig.position(name).expect("checked sentence"))
    }

    fn compile(&self, s: &HornSentence) -> Vec<Compiled> {
        s.clauses
            .iter()
            .map(|c| Compiled {
                body: c.body.iter().fold(0, |m, a| m | self.bit(a)),
                head: self.bit(&c.head),
            })
            .collect()
    }

    fn holds(clauses: &[Compiled], v: usize) -> bool {
        clauses.iter().all(|c| v & c.body != c.body || v & c.head != 0)
    }

    /// Every clause with `head ∉ body` valid in all of `set`, in canonical
    /// order. `p -> p` stands in when no such clause is valid.
    ///
    /// The all-true valuation satisfies every Horn clause, so the result
    /// has `set ∪ {all-true}` as its models.
    pub fn horn_from_models(&self, set: &ModelSet) -> Result<HornSentence> {
        if !is_intersection_closed(set) {
            return Err(Error::NotIntersectionClosed);
        }
        let n = self.sig.len();
        let atoms = self.sig.atoms();
        let mut clauses = BTreeSet::new();
        for body in 0usize..1 << n {
            for h in 0..n {
                let head = 1 << (n - 1 - h);
                if body & head != 0 {
                    continue;
                }
                if set.iter().all(|v| v & body != body || v & head != 0) {
                    let names = (0..n)
                        .filter(|j| body >> (n - 1 - j) & 1 == 1)
                        .map(|j| atoms[j].clone());
                    clauses.insert(HornClause {
                        body: names.collect(),
                        head: atoms[h].clone(),
                    });
                }
            }
        }
        if clauses.is_empty() {
            return Ok(self.tautology());
        }
        Ok(HornSentence { clauses })
    }
}

impl SatisfactionSystem for HornSystem {
    type Sentence = HornSentence;
    type Model = Valuation;

    fn logic(&self) -> LogicTag {
        LogicTag::Hcl
    }

    fn model_count(&self) -> usize {
        1 << self.sig.len()
    }

    fn model(&self, index: usize) -> Valuation {
        Valuation::from_index(self.sig.len(), index)
    }

    fn satisfies(&self, model: &Valuation, sentence: &HornSentence) -> bool {
        Self::holds(&self.compile(sentence), model.index())
    }

    fn check_sentence(&self, sentence: &HornSentence) -> Result<()> {
        for c in &sentence.clauses {
            for a in c.body.iter().chain(std::iter::once(&c.head)) {
                if self.sig.position(a).is_none() {
                    return Err(Error::UnknownSymbol {
                        symbol: a.to_string(),
                        context: "atom".into(),
                    });
                }
            }
        }
        Ok(())
    }

    fn trivial_models(&self) -> ModelSet {
        ModelSet::from_indices(self.model_count(), [self.all_true()])
    }

    /// `p -> p` over the first atom.
    fn tautology(&self) -> HornSentence {
        let p = &self.sig.atoms()[0];
        HornSentence::new([HornClause::new([&**p], p)])
    }

    fn sentence_models(&self, sentence: &HornSentence) -> ModelSet {
        let clauses = self.compile(sentence);
        let n = self.model_count();
        ModelSet::from_indices(n, (0..n).filter(|&v| Self::holds(&clauses, v)))
    }

    /// Exactly the intersection-closed sets containing the all-true
    /// valuation are Horn-definable.
    fn definable_theory(&self, models: &ModelSet) -> Result<Option<Vec<HornSentence>>> {
        if !models.contains(self.all_true()) || !is_intersection_closed(models) {
            return Ok(None);
        }
        Ok(Some(vec![self.horn_from_models(models)?]))
    }
}

/// `cl_∩` of the unit Hamming dilation, resynthesized as Horn clauses.
#[derive(Debug, Clone, Copy, Default)]
pub struct HornRelaxation;

impl Relaxation<HornSystem> for HornRelaxation {
    fn name(&self) -> &str {
        "horn"
    }

    fn relax(&self, sem: &Semantics<HornSystem>, sentence: &HornSentence) -> Result<HornSentence> {
        let sys = sem.system();
        let models = sem.sentence_models(sentence)?;
        let dilated = dilate_models(sys.signature().len(), &models);
        sys.horn_from_models(&intersection_closure(&dilated))
    }
}
