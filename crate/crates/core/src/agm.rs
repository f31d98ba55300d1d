//! Brute-force checks of the AGM postulates and of faithful assignments
//! over a finite corpus of knowledge bases.

use crate::error::{Error, Result};
use crate::model_set::{min_models, ModelRelation, ModelSet};
use crate::satsys::{KnowledgeBase, SatisfactionSystem, Semantics};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// Counterexamples kept per postulate. Failures are always counted.
pub const COUNTEREXAMPLE_LIMIT: usize = 16;

pub trait RevisionOperator<T>: Sync {
    fn revise(&self, t: &KnowledgeBase<T>, t_new: &KnowledgeBase<T>) -> Result<KnowledgeBase<T>>;
}

impl<T, F> RevisionOperator<T> for F
where
    F: Fn(&KnowledgeBase<T>, &KnowledgeBase<T>) -> Result<KnowledgeBase<T>> + Sync,
{
    fn revise(&self, t: &KnowledgeBase<T>, t_new: &KnowledgeBase<T>) -> Result<KnowledgeBase<T>> {
        self(t, t_new)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postulate {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    /// The syntax-independent strengthening of G4.
    G4Strong,
    /// G1-G3, G5 and G6 together imply G4.
    G4Derivation,
    Faithful1,
    Faithful2,
    FaMin,
    FaNonempty,
    FaIntersection,
}

impl Postulate {
    pub const AGM: [Postulate; 6] = [
        Postulate::G1,
        Postulate::G2,
        Postulate::G3,
        Postulate::G4,
        Postulate::G5,
        Postulate::G6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Postulate::G1 => "G1",
            Postulate::G2 => "G2",
            Postulate::G3 => "G3",
            Postulate::G4 => "G4",
            Postulate::G5 => "G5",
            Postulate::G6 => "G6",
            Postulate::G4Strong => "G'4",
            Postulate::G4Derivation => "G4-derivation",
            Postulate::Faithful1 => "FA1",
            Postulate::Faithful2 => "FA2",
            Postulate::FaMin => "FA+1",
            Postulate::FaNonempty => "FA+2",
            Postulate::FaIntersection => "FA+3",
        }
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Postulate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// A failing tuple. `kbs` lists the knowledge bases in the order the
/// postulate names them, e.g. `(T, T', T'')` for G5.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: fmt::Display"))]
pub struct Counterexample<T> {
    pub postulate: Postulate,
    pub kbs: Vec<KnowledgeBase<T>>,
    pub model: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct PostulateOutcome<T> {
    pub postulate: Postulate,
    pub checked: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample<T>>,
}

impl<T> PostulateOutcome<T> {
    fn new(postulate: Postulate) -> Self {
        Self {
            postulate,
            checked: 0,
            failed: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.failed == 0
    }

    /// Fraction of checked tuples that pass; 1 when nothing applied.
    pub fn pass_rate(&self) -> f64 {
        if self.checked == 0 {
            1.0
        } else {
            (self.checked - self.failed) as f64 / self.checked as f64
        }
    }

    fn record(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample<T>) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < COUNTEREXAMPLE_LIMIT {
                self.counterexamples.push(cex());
            }
        }
    }

    fn merge(&mut self, other: PostulateOutcome<T>) {
        self.checked += other.checked;
        self.failed += other.failed;
        for c in other.counterexamples {
            if self.counterexamples.len() < COUNTEREXAMPLE_LIMIT {
                self.counterexamples.push(c);
            }
        }
    }
}

impl<T: fmt::Display> Serialize for PostulateOutcome<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PostulateOutcome", 5)?;
        st.serialize_field("postulate", &self.postulate)?;
        st.serialize_field("status", if self.holds() { "holds" } else { "fails" })?;
        st.serialize_field("checked", &self.checked)?;
        st.serialize_field("failed", &self.failed)?;
        st.serialize_field("counterexamples", &self.counterexamples)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: fmt::Display"))]
#[serde(transparent)]
pub struct PostulateReport<T> {
    pub outcomes: Vec<PostulateOutcome<T>>,
}

impl<T> PostulateReport<T> {
    pub fn get(&self, postulate: Postulate) -> Option<&PostulateOutcome<T>> {
        self.outcomes.iter().find(|o| o.postulate == postulate)
    }

    pub fn holds(&self, postulate: Postulate) -> bool {
        self.get(postulate).is_some_and(|o| o.holds())
    }

    fn from_map(map: HashMap<Postulate, PostulateOutcome<T>>) -> Self {
        let mut outcomes: Vec<_> = map.into_values().collect();
        outcomes.sort_by_key(|o| o.postulate);
        Self { outcomes }
    }
}

type Tally<T> = HashMap<Postulate, PostulateOutcome<T>>;

fn tally<T>(map: &mut Tally<T>, p: Postulate) -> &mut PostulateOutcome<T> {
    map.entry(p).or_insert_with(|| PostulateOutcome::new(p))
}

fn merge_tallies<T>(into: &mut Tally<T>, from: Tally<T>) {
    let mut entries: Vec<_> = from.into_iter().collect();
    entries.sort_by_key(|(p, _)| *p);
    for (p, o) in entries {
        tally(into, p).merge(o);
    }
}

/// All knowledge bases of at most `max_size` sentences drawn from `pool`,
/// by increasing size and then by pool index.
pub fn knowledge_bases<T: Clone + PartialEq>(pool: &[T], max_size: usize) -> Vec<KnowledgeBase<T>> {
    fn rec<T: Clone + PartialEq>(
        pool: &[T],
        start: usize,
        left: usize,
        current: &mut Vec<T>,
        out: &mut Vec<KnowledgeBase<T>>,
    ) {
        if left == 0 {
            out.push(KnowledgeBase::new(current.iter().cloned()));
            return;
        }
        for i in start..pool.len() {
            current.push(pool[i].clone());
            rec(pool, i + 1, left - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=max_size.min(pool.len()) {
        rec(pool, 0, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Memoized `Mod(T ∘ X)` for a fixed `T`, calling the operator twice on
/// every fresh input to catch nondeterminism.
struct RevisionMemo<'a, S: SatisfactionSystem, O: ?Sized> {
    sem: &'a Semantics<S>,
    op: &'a O,
    t: &'a KnowledgeBase<S::Sentence>,
    cache: HashMap<KnowledgeBase<S::Sentence>, ModelSet>,
}

impl<'a, S, O> RevisionMemo<'a, S, O>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    fn new(sem: &'a Semantics<S>, op: &'a O, t: &'a KnowledgeBase<S::Sentence>) -> Self {
        Self {
            sem,
            op,
            t,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, x: &KnowledgeBase<S::Sentence>) -> Result<ModelSet> {
        if let Some(m) = self.cache.get(x) {
            return Ok(m.clone());
        }
        let first = self.op.revise(self.t, x)?;
        let second = self.op.revise(self.t, x)?;
        if first != second {
            return Err(Error::Nondeterministic(format!(
                "revising {} by {} gave {} and then {}",
                self.t, x, first, second
            )));
        }
        let models = self.sem.models_of(&first)?;
        self.cache.insert(x.clone(), models.clone());
        Ok(models)
    }
}

fn first_of(set: &ModelSet) -> Option<usize> {
    set.iter().next()
}

/// Groups corpus indices by model set, in first-occurrence order.
fn cn_classes<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    corpus: &[KnowledgeBase<S::Sentence>],
) -> Result<Vec<Vec<usize>>> {
    let mut index: HashMap<ModelSet, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, kb) in corpus.iter().enumerate() {
        let m = sem.models_of(kb)?;
        match index.get(&m) {
            Some(&c) => classes[c].push(i),
            None => {
                index.insert(m, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    Ok(classes)
}

struct PerBase<T> {
    tally: Tally<T>,
    results: Vec<ModelSet>,
}

fn check_one_base<S, O>(
    sem: &Semantics<S>,
    op: &O,
    t: &KnowledgeBase<S::Sentence>,
    corpus: &[KnowledgeBase<S::Sentence>],
    corpus_models: &[ModelSet],
    classes: &[Vec<usize>],
) -> Result<PerBase<S::Sentence>>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    let mut memo = RevisionMemo::new(sem, op, t);
    let mut tl: Tally<S::Sentence> = Tally::new();
    let t_models = sem.models_of(t)?;
    let mut results = Vec::with_capacity(corpus.len());
    for x in corpus {
        results.push(memo.get(x)?);
    }
    for (i, x) in corpus.iter().enumerate() {
        let r = &results[i];
        let x_models = &corpus_models[i];
        if sem.is_consistent_set(x_models) {
            let ok = sem.is_consistent_set(r);
            tl_record(&mut tl, Postulate::G1, ok, || Counterexample {
                postulate: Postulate::G1,
                kbs: vec![t.clone(), x.clone()],
                model: None,
                detail: "new base consistent but revision inconsistent".into(),
            });
        }
        let outside = r.difference(x_models);
        tl_record(&mut tl, Postulate::G2, outside.is_empty(), || Counterexample {
            postulate: Postulate::G2,
            kbs: vec![t.clone(), x.clone()],
            model: first_of(&outside),
            detail: "revision has a model outside Mod(T')".into(),
        });
        let union_models = t_models.intersection(x_models);
        if sem.is_consistent_set(&union_models) {
            let ok = *r == union_models;
            tl_record(&mut tl, Postulate::G3, ok, || Counterexample {
                postulate: Postulate::G3,
                kbs: vec![t.clone(), x.clone()],
                model: first_of(&r.union(&union_models).difference(&r.intersection(&union_models))),
                detail: "T ∪ T' consistent but Mod(T ∘ T') differs from Mod(T ∪ T')".into(),
            });
        }
        for (j, y) in corpus.iter().enumerate() {
            let lhs = r.intersection(&corpus_models[j]);
            let joint = x.union(y);
            let rhs = memo.get(&joint)?;
            let missing = lhs.difference(&rhs);
            tl_record(&mut tl, Postulate::G5, missing.is_empty(), || Counterexample {
                postulate: Postulate::G5,
                kbs: vec![t.clone(), x.clone(), y.clone()],
                model: first_of(&missing),
                detail: "model of (T ∘ T') ∪ T'' missing from T ∘ (T' ∪ T'')".into(),
            });
            if sem.is_consistent_set(&lhs) {
                let extra = rhs.difference(&lhs);
                tl_record(&mut tl, Postulate::G6, extra.is_empty(), || Counterexample {
                    postulate: Postulate::G6,
                    kbs: vec![t.clone(), x.clone(), y.clone()],
                    model: first_of(&extra),
                    detail: "model of T ∘ (T' ∪ T'') missing from (T ∘ T') ∪ T''".into(),
                });
            }
        }
    }
    for class in classes {
        for (a, &i) in class.iter().enumerate() {
            for &j in &class[a + 1..] {
                let ok = results[i] == results[j];
                tl_record(&mut tl, Postulate::G4, ok, || Counterexample {
                    postulate: Postulate::G4,
                    kbs: vec![t.clone(), corpus[i].clone(), corpus[j].clone()],
                    model: first_of(
                        &results[i]
                            .union(&results[j])
                            .difference(&results[i].intersection(&results[j])),
                    ),
                    detail: "equivalent new bases revise to different model sets".into(),
                });
            }
        }
    }
    Ok(PerBase {
        tally: tl,
        results,
    })
}

fn tl_record<T>(
    tl: &mut Tally<T>,
    p: Postulate,
    ok: bool,
    cex: impl FnOnce() -> Counterexample<T>,
) {
    tally(tl, p).record(ok, cex);
}

fn run_corpus<S, O>(
    sem: &Semantics<S>,
    op: &O,
    corpus: &[KnowledgeBase<S::Sentence>],
) -> Result<(Vec<usize>, Vec<PerBase<S::Sentence>>, Vec<Vec<usize>>)>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    let corpus_models: Vec<ModelSet> = corpus
        .iter()
        .map(|kb| sem.models_of(kb))
        .collect::<Result<_>>()?;
    let classes = cn_classes(sem, corpus)?;
    let bases: Vec<usize> = (0..corpus.len())
        .filter(|&i| sem.is_consistent_set(&corpus_models[i]))
        .collect();
    let per: Vec<PerBase<S::Sentence>> = bases
        .par_iter()
        .map(|&i| check_one_base(sem, op, &corpus[i], corpus, &corpus_models, &classes))
        .collect::<Result<_>>()?;
    Ok((bases, per, classes))
}

/// G1-G6, plus G'4, evaluated at the model level on the corpus. The base
/// `T` ranges over the consistent members of the corpus; `T'` and `T''`
/// range over all of it.
pub fn check_postulates<S, O>(
    sem: &Semantics<S>,
    op: &O,
    corpus: &[KnowledgeBase<S::Sentence>],
) -> Result<PostulateReport<S::Sentence>>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    let (bases, per, classes) = run_corpus(sem, op, corpus)?;
    let mut total: Tally<S::Sentence> = Tally::new();
    for p in Postulate::AGM {
        tally(&mut total, p);
    }
    for pb in &per {
        merge_tallies(&mut total, pb.tally.clone());
    }
    // G'4: equivalent old bases revised by equivalent new bases.
    let position: HashMap<usize, usize> = bases.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let strong = tally(&mut total, Postulate::G4Strong);
    for old_class in &classes {
        let members: Vec<usize> = old_class.iter().filter_map(|i| position.get(i).copied()).collect();
        for (a, &p1) in members.iter().enumerate() {
            for &p2 in &members[a + 1..] {
                for new_class in &classes {
                    for &x1 in new_class {
                        for &x2 in new_class {
                            let ok = per[p1].results[x1] == per[p2].results[x2];
                            strong.record(ok, || Counterexample {
                                postulate: Postulate::G4Strong,
                                kbs: vec![
                                    corpus[bases[p1]].clone(),
                                    corpus[bases[p2]].clone(),
                                    corpus[x1].clone(),
                                    corpus[x2].clone(),
                                ],
                                model: None,
                                detail: "equivalent inputs revise to different model sets".into(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(PostulateReport::from_map(total))
}

/// For every base that passes G1-G3, G5 and G6 on the whole corpus, G4
/// must hold too.
pub fn check_g4_derivation<S, O>(
    sem: &Semantics<S>,
    op: &O,
    corpus: &[KnowledgeBase<S::Sentence>],
) -> Result<PostulateReport<S::Sentence>>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    let (bases, per, _) = run_corpus(sem, op, corpus)?;
    let mut out = PostulateOutcome::new(Postulate::G4Derivation);
    for (k, pb) in per.iter().enumerate() {
        let premises = [
            Postulate::G1,
            Postulate::G2,
            Postulate::G3,
            Postulate::G5,
            Postulate::G6,
        ]
        .iter()
        .all(|p| pb.tally.get(p).is_none_or(|o| o.holds()));
        if !premises {
            continue;
        }
        let g4 = pb.tally.get(&Postulate::G4);
        let ok = g4.is_none_or(|o| o.holds());
        out.record(ok, || {
            let mut kbs = vec![corpus[bases[k]].clone()];
            if let Some(c) = g4.and_then(|o| o.counterexamples.first()) {
                kbs = c.kbs.clone();
            }
            Counterexample {
                postulate: Postulate::G4Derivation,
                kbs,
                model: None,
                detail: "base satisfies G1-G3, G5, G6 but not G4".into(),
            }
        });
    }
    Ok(PostulateReport {
        outcomes: vec![out],
    })
}

/// Re-runs the postulate on a stored tuple; `true` when it still fails.
pub fn replay<S, O>(
    sem: &Semantics<S>,
    op: &O,
    cex: &Counterexample<S::Sentence>,
) -> Result<bool>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    let kbs = &cex.kbs;
    let need = |n: usize| -> Result<()> {
        if kbs.len() == n {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{} counterexample needs {n} knowledge bases, found {}",
                cex.postulate,
                kbs.len()
            )))
        }
    };
    let rev = |t: &KnowledgeBase<S::Sentence>, x: &KnowledgeBase<S::Sentence>| -> Result<ModelSet> {
        sem.models_of(&op.revise(t, x)?)
    };
    let fails = match cex.postulate {
        Postulate::G1 => {
            need(2)?;
            sem.is_consistent(&kbs[1])? && !sem.is_consistent_set(&rev(&kbs[0], &kbs[1])?)
        }
        Postulate::G2 => {
            need(2)?;
            !rev(&kbs[0], &kbs[1])?.is_subset(&sem.models_of(&kbs[1])?)
        }
        Postulate::G3 => {
            need(2)?;
            let union = sem.models_of(&kbs[0].union(&kbs[1]))?;
            sem.is_consistent_set(&union) && rev(&kbs[0], &kbs[1])? != union
        }
        Postulate::G4 => {
            need(3)?;
            sem.cn_equal(&kbs[1], &kbs[2])? && rev(&kbs[0], &kbs[1])? != rev(&kbs[0], &kbs[2])?
        }
        Postulate::G5 | Postulate::G6 => {
            need(3)?;
            let lhs = rev(&kbs[0], &kbs[1])?.intersection(&sem.models_of(&kbs[2])?);
            let rhs = rev(&kbs[0], &kbs[1].union(&kbs[2]))?;
            if cex.postulate == Postulate::G5 {
                !lhs.is_subset(&rhs)
            } else {
                sem.is_consistent_set(&lhs) && !rhs.is_subset(&lhs)
            }
        }
        Postulate::G4Strong => {
            need(4)?;
            sem.cn_equal(&kbs[0], &kbs[1])?
                && sem.cn_equal(&kbs[2], &kbs[3])?
                && rev(&kbs[0], &kbs[2])? != rev(&kbs[1], &kbs[3])?
        }
        other => {
            return Err(Error::Unsupported(format!(
                "{other} counterexamples are replayed with replay_fa_plus"
            )))
        }
    };
    Ok(fails)
}

/// A map from knowledge bases to relations over the bounded model space.
pub struct Assignment<'a, T> {
    map: Box<dyn Fn(&KnowledgeBase<T>) -> Result<ModelRelation> + Send + Sync + 'a>,
}

impl<'a, T> Assignment<'a, T> {
    pub fn new(f: impl Fn(&KnowledgeBase<T>) -> Result<ModelRelation> + Send + Sync + 'a) -> Self {
        Self { map: Box::new(f) }
    }

    pub fn relation(&self, kb: &KnowledgeBase<T>) -> Result<ModelRelation> {
        (self.map)(kb)
    }

    /// The constant assignment.
    pub fn constant(rel: ModelRelation) -> Self
    where
        T: 'a,
    {
        Self::new(move |_| Ok(rel.clone()))
    }
}

/// Pointwise union.
pub fn fa_join<'a, T: 'a>(a1: &'a Assignment<'a, T>, a2: &'a Assignment<'a, T>) -> Assignment<'a, T> {
    Assignment::new(move |kb| Ok(a1.relation(kb)?.union(&a2.relation(kb)?)))
}

/// Pointwise intersection.
pub fn fa_meet<'a, T: 'a>(a1: &'a Assignment<'a, T>, a2: &'a Assignment<'a, T>) -> Assignment<'a, T> {
    Assignment::new(move |kb| Ok(a1.relation(kb)?.intersection(&a2.relation(kb)?)))
}

/// Both faithfulness conditions for the relation assigned to `kb`.
pub fn check_faithful<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    rel: &ModelRelation,
    kb: &KnowledgeBase<S::Sentence>,
) -> Result<bool> {
    let (c1, c2) = faithful_violations(sem, rel, kb)?;
    Ok(c1.is_none() && c2.is_none())
}

type Violation = Option<(usize, usize)>;

fn faithful_violations<S: SatisfactionSystem>(
    sem: &Semantics<S>,
    rel: &ModelRelation,
    kb: &KnowledgeBase<S::Sentence>,
) -> Result<(Violation, Violation)> {
    let inside = sem.models_of(kb)?;
    let outside = inside.complement();
    let mut first = None;
    'outer: for a in inside.iter() {
        for b in inside.iter() {
            if rel.strictly(a, b) {
                first = Some((a, b));
                break 'outer;
            }
        }
    }
    let mut second = None;
    'outer2: for a in inside.iter() {
        for b in outside.iter() {
            if !rel.strictly(a, b) {
                second = Some((a, b));
                break 'outer2;
            }
        }
    }
    Ok((first, second))
}

/// Faithfulness plus the three supplementary conditions linking `⪯_T`
/// to the operator, for every consistent `T` in the corpus.
pub fn check_fa_plus<S, O>(
    sem: &Semantics<S>,
    assignment: &Assignment<'_, S::Sentence>,
    op: &O,
    corpus: &[KnowledgeBase<S::Sentence>],
) -> Result<PostulateReport<S::Sentence>>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    let triv = sem.trivial_models().clone();
    let corpus_models: Vec<ModelSet> = corpus
        .iter()
        .map(|kb| sem.models_of(kb))
        .collect::<Result<_>>()?;
    let mut total: Tally<S::Sentence> = Tally::new();
    for p in [
        Postulate::Faithful1,
        Postulate::Faithful2,
        Postulate::FaMin,
        Postulate::FaNonempty,
        Postulate::FaIntersection,
    ] {
        tally(&mut total, p);
    }
    for (ti, t) in corpus.iter().enumerate() {
        if !sem.is_consistent_set(&corpus_models[ti]) {
            continue;
        }
        let rel = assignment.relation(t)?;
        let (v1, v2) = faithful_violations(sem, &rel, t)?;
        tally(&mut total, Postulate::Faithful1).record(v1.is_none(), || Counterexample {
            postulate: Postulate::Faithful1,
            kbs: vec![t.clone()],
            model: v1.map(|p| p.0),
            detail: format!("strict pair inside Mod(T): {v1:?}"),
        });
        tally(&mut total, Postulate::Faithful2).record(v2.is_none(), || Counterexample {
            postulate: Postulate::Faithful2,
            kbs: vec![t.clone()],
            model: v2.map(|p| p.1),
            detail: format!("model of T not strictly below an outside model: {v2:?}"),
        });
        let mut memo = RevisionMemo::new(sem, op, t);
        let mut mins: Vec<ModelSet> = Vec::with_capacity(corpus.len());
        for x_models in &corpus_models {
            mins.push(min_models(&x_models.difference(&triv), &rel));
        }
        for (xi, x) in corpus.iter().enumerate() {
            let r = memo.get(x)?;
            let lhs = r.difference(&triv);
            tally(&mut total, Postulate::FaMin).record(lhs == mins[xi], || Counterexample {
                postulate: Postulate::FaMin,
                kbs: vec![t.clone(), x.clone()],
                model: first_of(&lhs.union(&mins[xi]).difference(&lhs.intersection(&mins[xi]))),
                detail: "Mod(T ∘ T') \\ Triv differs from Min(Mod(T') \\ Triv, ⪯_T)".into(),
            });
            if sem.is_consistent_set(&corpus_models[xi]) {
                tally(&mut total, Postulate::FaNonempty).record(!mins[xi].is_empty(), || {
                    Counterexample {
                        postulate: Postulate::FaNonempty,
                        kbs: vec![t.clone(), x.clone()],
                        model: None,
                        detail: "no minimal model in a consistent Mod(T')".into(),
                    }
                });
            }
            for (yi, y) in corpus.iter().enumerate() {
                if !sem.is_consistent_set(&r.intersection(&corpus_models[yi])) {
                    continue;
                }
                let lhs = mins[xi].intersection(&corpus_models[yi]);
                let joint = corpus_models[xi].intersection(&corpus_models[yi]);
                let rhs = min_models(&joint.difference(&triv), &rel);
                tally(&mut total, Postulate::FaIntersection).record(lhs == rhs, || {
                    Counterexample {
                        postulate: Postulate::FaIntersection,
                        kbs: vec![t.clone(), x.clone(), y.clone()],
                        model: first_of(&lhs.union(&rhs).difference(&lhs.intersection(&rhs))),
                        detail: "Min(Mod(T')) ∩ Mod(T'') differs from Min(Mod(T' ∪ T''))".into(),
                    }
                });
            }
        }
    }
    Ok(PostulateReport::from_map(total))
}

/// `⪯_T = ∪_X ⪯^X_T`, with `X` ranging over the canonical theory of every
/// definable model set: `M ⪯^X_T M'` iff both are models of `X`, `M` is a
/// model of `T ∘ X` and `M'` is not.
pub fn induced_assignment<S, O>(
    sem: &Semantics<S>,
    op: &O,
    kb: &KnowledgeBase<S::Sentence>,
) -> Result<ModelRelation>
where
    S: SatisfactionSystem,
    O: RevisionOperator<S::Sentence> + ?Sized,
{
    let n = sem.space();
    if n > 16 {
        return Err(Error::SpaceTooLarge {
            count: 1u128 << n.min(127),
            ceiling: 1 << 16,
        });
    }
    let mut rel = ModelRelation::empty(n);
    for mask in 0..(1u64 << n) {
        let set = ModelSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let Some(theory) = sem.system().definable_theory(&set)? else {
            continue;
        };
        let revised = sem.models_of(&op.revise(kb, &KnowledgeBase::new(theory))?)?;
        for a in set.intersection(&revised).iter() {
            for b in set.difference(&revised).iter() {
                rel.insert(a, b);
            }
        }
    }
    Ok(rel)
}
