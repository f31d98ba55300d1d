//! Concept relaxations and retractions, and the axiom relaxations built
//! from them.

use super::normal::{rho_depth, rho_e, rho_leaves};
use super::{Axiom, Concept, DlSystem, R_TOP};
use crate::error::{Error, Result};
use crate::model_set::ModelSet;
use crate::pl::Symbol;
use crate::relax::Relaxation;
use crate::satsys::{SatisfactionSystem, Semantics};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    /// Extensive, applied to the right of `⊑`.
    Relax,
    /// Anti-extensive, applied to the left of `⊑`.
    Retract,
}

/// Which side of a subsumption the operator rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl From<OpKind> for Side {
    fn from(k: OpKind) -> Side {
        match k {
            OpKind::Relax => Side::Right,
            OpKind::Retract => Side::Left,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub concept: Concept,
    /// Set when the operator could not make progress (no eligible
    /// exception, nothing to flip).
    pub flag: bool,
}

impl Step {
    fn done(concept: Concept) -> Step {
        Step { concept, flag: false }
    }

    fn stuck(concept: Concept) -> Step {
        Step { concept, flag: true }
    }
}

/// Models against which subsumption side conditions are decided.
#[derive(Clone, Debug)]
pub struct Context {
    models: Arc<ModelSet>,
}

impl Context {
    /// No background axioms: the whole bounded space.
    pub fn empty(sem: &Semantics<DlSystem>) -> Context {
        Context {
            models: Arc::new(sem.full()),
        }
    }

    pub fn of(sem: &Semantics<DlSystem>, axioms: &[Axiom]) -> Result<Context> {
        Ok(Context {
            models: Arc::new(sem.models_of_sentences(axioms)?),
        })
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    /// `c ⊑ d` in every model of the context.
    pub fn subsumes(&self, sem: &Semantics<DlSystem>, c: &Concept, d: &Concept) -> Result<bool> {
        let ax = Axiom::Sub(c.clone(), d.clone());
        Ok(self.models.is_subset(&*sem.sentence_models(&ax)?))
    }
}

pub trait ConceptOp: Send + Sync {
    fn name(&self) -> &str;

    fn kind(&self) -> OpKind;

    fn exhaustive(&self) -> bool {
        true
    }

    fn apply(&self, sem: &Semantics<DlSystem>, ctx: &Context, c: &Concept) -> Result<Step>;
}

// ---------------------------------------------------------------------------
// Quantifier prefixes.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Splits `Q1 r1. ... Qm rm. D` with `D` quantifier-free. Fails when a
/// quantifier occurs below a boolean connective.
pub fn split_prefix(c: &Concept) -> Result<(Vec<(Quantifier, Symbol)>, Concept)> {
    let mut prefix = Vec::new();
    let mut cur = c;
    loop {
        match cur {
            Concept::Exists(r, a) => {
                prefix.push((Quantifier::Exists, r.clone()));
                cur = a;
            }
            Concept::Forall(r, a) => {
                prefix.push((Quantifier::Forall, r.clone()));
                cur = a;
            }
            d if d.is_quantifier_free() => return Ok((prefix, d.clone())),
            _ => {
                return Err(Error::Shape(format!(
                    "`{c}` is not a quantifier prefix over a quantifier-free concept"
                )))
            }
        }
    }
}

pub fn with_prefix(prefix: &[(Quantifier, Symbol)], d: Concept) -> Concept {
    prefix.iter().rev().fold(d, |acc, (q, r)| match q {
        Quantifier::Exists => Concept::Exists(r.clone(), Box::new(acc)),
        Quantifier::Forall => Concept::Forall(r.clone(), Box::new(acc)),
    })
}

// ---------------------------------------------------------------------------
// Dalal operators.

type Literal = (Symbol, bool);

fn literal_concept((n, positive): &Literal) -> Concept {
    if *positive {
        Concept::Name(n.clone())
    } else {
        Concept::not(Concept::Name(n.clone()))
    }
}

/// Clauses (for CNF) or terms (for DNF) of a quantifier-free concept. The
/// outer list is the conjunction for CNF and the disjunction for DNF.
fn normal_form(c: &Concept, positive: bool, cnf: bool) -> Vec<Vec<Literal>> {
    // `outer` joins lists; `inner` distributes over them.
    let outer = |parts: Vec<Vec<Vec<Literal>>>| parts.into_iter().flatten().collect::<Vec<_>>();
    let inner = |parts: Vec<Vec<Vec<Literal>>>| {
        let mut acc: Vec<Vec<Literal>> = vec![Vec::new()];
        for p in parts {
            let mut next = Vec::new();
            for a in &acc {
                for b in &p {
                    let mut merged = a.clone();
                    for l in b {
                        if !merged.contains(l) {
                            merged.push(l.clone());
                        }
                    }
                    next.push(merged);
                }
            }
            acc = next;
        }
        acc
    };
    let (is_top, is_and) = match c {
        Concept::Top => (Some(positive), None),
        Concept::Bottom => (Some(!positive), None),
        Concept::And(_) => (None, Some(positive)),
        Concept::Or(_) => (None, Some(!positive)),
        _ => (None, None),
    };
    if let Some(top) = is_top {
        // ⊤ is the empty CNF and the DNF with one empty term.
        return if top == cnf { Vec::new() } else { vec![Vec::new()] };
    }
    if let Some(and) = is_and {
        let (Concept::And(ps) | Concept::Or(ps)) = c else {
            unreachable!()
        };
        let parts = ps.iter().map(|p| normal_form(p, positive, cnf)).collect();
        return if and == cnf { outer(parts) } else { inner(parts) };
    }
    match c {
        Concept::Name(n) => vec![vec![(n.clone(), positive)]],
        Concept::Not(a) => normal_form(a, !positive, cnf),
        _ => unreachable!("quantifier-free input"),
    }
}

fn sorted(mut lits: Vec<Literal>) -> Vec<Literal> {
    lits.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    lits
}

fn dalal(c: &Concept, retract: bool) -> Result<Concept> {
    let constant = if retract { Concept::Bottom } else { Concept::Top };
    let (prefix, d) = split_prefix(c)?;
    let groups: Vec<Vec<Literal>> = normal_form(&d, true, retract)
        .into_iter()
        .map(sorted)
        .collect();
    let is_constant = groups.is_empty() || groups.iter().any(Vec::is_empty);
    if is_constant {
        return Ok(constant);
    }
    let (join, meet): (fn(Vec<Concept>) -> Concept, fn(Vec<Concept>) -> Concept) = if retract {
        (Concept::disj, Concept::conj)
    } else {
        (Concept::conj, Concept::disj)
    };
    let per_group = groups.iter().map(|lits| {
        meet((0..lits.len())
            .map(|j| {
                join(lits
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .map(|(_, l)| literal_concept(l))
                    .collect())
            })
            .collect())
    });
    let body = if retract {
        Concept::conj(per_group)
    } else {
        Concept::disj(per_group)
    };
    Ok(with_prefix(&prefix, body))
}

/// Literal-level Dalal erosion of each CNF clause under the prefix.
pub fn kappa_dalal(c: &Concept) -> Result<Concept> {
    dalal(c, true)
}

/// Literal-level Dalal dilation of each DNF term under the prefix.
pub fn rho_dalal(c: &Concept) -> Result<Concept> {
    dalal(c, false)
}

// ---------------------------------------------------------------------------
// Exceptions.

/// `C ⊔ E1 ⊔ ... ⊔ Ek` over the first `k` exceptions disjoint from `C`.
pub fn rho_exceptions(
    sem: &Semantics<DlSystem>,
    ctx: &Context,
    c: &Concept,
    exceptions: &[Concept],
    k: usize,
) -> Result<Step> {
    if k == 0 {
        return Ok(Step::done(c.clone()));
    }
    let present: Vec<&Concept> = match c {
        Concept::Or(ps) => ps.iter().collect(),
        other => vec![other],
    };
    let mut chosen = Vec::new();
    for e in exceptions {
        if chosen.len() == k {
            break;
        }
        if present.contains(&e) {
            continue;
        }
        if ctx.subsumes(sem, &Concept::conj([e.clone(), c.clone()]), &Concept::Bottom)? {
            chosen.push(e.clone());
        }
    }
    let flag = chosen.len() < k;
    let concept = Concept::disj(std::iter::once(c.clone()).chain(chosen));
    Ok(Step { concept, flag })
}

/// `C ⊓ ~E1 ⊓ ... ⊓ ~En` over the exceptions subsumed by `C`.
pub fn kappa_exceptions(
    sem: &Semantics<DlSystem>,
    ctx: &Context,
    c: &Concept,
    exceptions: &[Concept],
) -> Result<Step> {
    let mut chosen = Vec::new();
    for e in exceptions {
        if ctx.subsumes(sem, e, c)? {
            chosen.push(Concept::not(e.clone()));
        }
    }
    if chosen.is_empty() {
        return Ok(Step::stuck(c.clone()));
    }
    Ok(Step::done(Concept::conj(std::iter::once(c.clone()).chain(chosen))))
}

// ---------------------------------------------------------------------------
// Quantifier flips.

fn flips(c: &Concept, from: Quantifier) -> Result<Vec<Concept>> {
    let (prefix, d) = split_prefix(c)?;
    let to = match from {
        Quantifier::Exists => Quantifier::Forall,
        Quantifier::Forall => Quantifier::Exists,
    };
    Ok((0..prefix.len())
        .filter(|&j| prefix[j].0 == from)
        .map(|j| {
            let mut p = prefix.clone();
            p[j].0 = to;
            with_prefix(&p, d.clone())
        })
        .collect())
}

/// Disjunction of the single `∀ → ∃` flips. A prefix without `∀` gives
/// `Top`. Disjunctions are handled member by member.
pub fn rho_q(c: &Concept) -> Result<Concept> {
    if let Concept::Or(ps) = c {
        return Ok(Concept::disj(ps.iter().map(rho_q).collect::<Result<Vec<_>>>()?));
    }
    let out = flips(c, Quantifier::Forall)?;
    if out.is_empty() {
        return Ok(Concept::Top);
    }
    Ok(Concept::disj(out))
}

/// Conjunction of the single `∃ → ∀` flips, member by member on
/// conjunctions. Flagged when nothing can be flipped.
pub fn kappa_q(c: &Concept) -> Result<Step> {
    let members: Vec<Concept> = match c {
        Concept::And(ps) => ps.clone(),
        other => vec![other.clone()],
    };
    let mut any = false;
    let mut out = Vec::new();
    for m in &members {
        let f = flips(m, Quantifier::Exists)?;
        if f.is_empty() {
            out.push(m.clone());
        } else {
            any = true;
            out.push(Concept::conj(f));
        }
    }
    let concept = Concept::conj(out);
    Ok(if any {
        Step::done(concept)
    } else {
        Step::stuck(concept)
    })
}

// ---------------------------------------------------------------------------
// Registry.

struct Simple {
    name: &'static str,
    kind: OpKind,
    exhaustive: bool,
    f: fn(&Concept) -> Result<Step>,
}

impl ConceptOp for Simple {
    fn name(&self) -> &str {
        self.name
    }

    fn kind(&self) -> OpKind {
        self.kind
    }

    fn exhaustive(&self) -> bool {
        self.exhaustive
    }

    fn apply(&self, _: &Semantics<DlSystem>, _: &Context, c: &Concept) -> Result<Step> {
        (self.f)(c)
    }
}

struct Exceptions {
    name: &'static str,
    kind: OpKind,
    exceptions: Vec<Concept>,
    k: usize,
    under_prefix: bool,
}

impl ConceptOp for Exceptions {
    fn name(&self) -> &str {
        self.name
    }

    fn kind(&self) -> OpKind {
        self.kind
    }

    fn exhaustive(&self) -> bool {
        false
    }

    fn apply(&self, sem: &Semantics<DlSystem>, ctx: &Context, c: &Concept) -> Result<Step> {
        let (prefix, d) = if self.under_prefix {
            split_prefix(c)?
        } else {
            (Vec::new(), c.clone())
        };
        let step = match self.kind {
            OpKind::Relax => rho_exceptions(sem, ctx, &d, &self.exceptions, self.k)?,
            OpKind::Retract => kappa_exceptions(sem, ctx, &d, &self.exceptions)?,
        };
        Ok(Step {
            concept: with_prefix(&prefix, step.concept),
            flag: step.flag,
        })
    }
}

/// Names accepted by [`concept_op`].
pub const CONCEPT_OPS: [&str; 13] = [
    "rho_top",
    "kappa_bot",
    "rho_depth",
    "rho_leaves",
    "rho_e",
    "rho_exceptions",
    "kappa_exceptions",
    "kappa_dalal",
    "rho_dalal",
    "kappa_cap",
    "rho_cup",
    "kappa_q",
    "rho_q",
];

/// Builds an operator by name. `k` defaults to 1 for `rho_exceptions` and
/// to the number of exceptions for `rho_cup`.
pub fn concept_op(
    name: &str,
    exceptions: &[Concept],
    k: Option<usize>,
) -> Result<Box<dyn ConceptOp>> {
    let simple = |name, kind, exhaustive, f| -> Box<dyn ConceptOp> {
        Box::new(Simple {
            name,
            kind,
            exhaustive,
            f,
        })
    };
    let excs = |name, kind, k, under_prefix| -> Box<dyn ConceptOp> {
        Box::new(Exceptions {
            name,
            kind,
            exceptions: exceptions.to_vec(),
            k,
            under_prefix,
        })
    };
    use OpKind::*;
    Ok(match name {
        "rho_top" => simple("rho_top", Relax, true, |_| Ok(Step::done(Concept::Top))),
        "kappa_bot" => simple("kappa_bot", Retract, true, |_| Ok(Step::done(Concept::Bottom))),
        "rho_depth" => simple("rho_depth", Relax, true, |c| rho_depth(c).map(Step::done)),
        "rho_leaves" => simple("rho_leaves", Relax, true, |c| rho_leaves(c).map(Step::done)),
        "rho_e" => simple("rho_e", Relax, true, |c| rho_e(c).map(Step::done)),
        "kappa_dalal" => simple("kappa_dalal", Retract, true, |c| kappa_dalal(c).map(Step::done)),
        "rho_dalal" => simple("rho_dalal", Relax, true, |c| rho_dalal(c).map(Step::done)),
        "rho_q" => simple("rho_q", Relax, true, |c| rho_q(c).map(Step::done)),
        "kappa_q" => simple("kappa_q", Retract, false, kappa_q),
        "rho_exceptions" => excs("rho_exceptions", Relax, k.unwrap_or(1), false),
        "kappa_exceptions" => excs("kappa_exceptions", Retract, 0, false),
        "rho_cup" => excs("rho_cup", Relax, k.unwrap_or(exceptions.len()), true),
        "kappa_cap" => excs("kappa_cap", Retract, 0, true),
        other => {
            return Err(Error::Config(format!(
                "unknown concept operator `{other}` (expected one of {})",
                CONCEPT_OPS.join(", ")
            )))
        }
    })
}

// ---------------------------------------------------------------------------
// Axiom relaxation.

/// Lifts a concept operator to axioms. A relaxation rewrites the right of
/// `⊑` and relaxes assertions; a retraction rewrites the left of `⊑` and
/// maps `a : C` to `a : Top`. Role assertions move to `r_top`.
pub struct FormulaRelaxation {
    op: Box<dyn ConceptOp>,
    ctx: Context,
}

impl FormulaRelaxation {
    pub fn new(op: Box<dyn ConceptOp>, ctx: Context) -> Self {
        Self { op, ctx }
    }

    pub fn side(&self) -> Side {
        self.op.kind().into()
    }

    pub fn op(&self) -> &dyn ConceptOp {
        &*self.op
    }

    /// One rewriting step with the operator's progress flag.
    pub fn step(&self, sem: &Semantics<DlSystem>, ax: &Axiom) -> Result<(Axiom, bool)> {
        let apply = |c: &Concept| self.op.apply(sem, &self.ctx, c);
        let (out, flag) = match (ax, self.side()) {
            (Axiom::Sub(c, d), Side::Right) => {
                let s = apply(d)?;
                (Axiom::Sub(c.clone(), s.concept), s.flag)
            }
            (Axiom::Sub(c, d), Side::Left) => {
                let s = apply(c)?;
                (Axiom::Sub(s.concept, d.clone()), s.flag)
            }
            (Axiom::Inst(a, c), Side::Right) => {
                let s = apply(c)?;
                (Axiom::Inst(a.clone(), s.concept), s.flag)
            }
            (Axiom::Inst(a, _), Side::Left) => (Axiom::Inst(a.clone(), Concept::Top), false),
            (Axiom::Role(a, b, _), _) => (Axiom::Role(a.clone(), b.clone(), Arc::from(R_TOP)), false),
        };
        let allowed = sem.system().fragment();
        if out.fragment() > allowed {
            return Err(Error::Fragment {
                operation: self.op.name().to_string(),
                required: out.fragment().to_string(),
                found: allowed.to_string(),
            });
        }
        sem.system().check_sentence(&out)?;
        Ok((out, flag))
    }
}

impl Relaxation<DlSystem> for FormulaRelaxation {
    fn name(&self) -> &str {
        self.op.name()
    }

    fn relax(&self, sem: &Semantics<DlSystem>, ax: &Axiom) -> Result<Axiom> {
        self.step(sem, ax).map(|(a, _)| a)
    }

    fn exhaustive(&self) -> bool {
        self.op.exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::{DlSignature, Fragment};

    fn n(s: &str) -> Concept {
        Concept::name(s)
    }

    fn tweety() -> Semantics<DlSystem> {
        let sig = DlSignature::new(&["bird", "flies"], &[], &["Tweety"]).unwrap();
        Semantics::new(DlSystem::new(sig, Fragment::Alc, 3, false).unwrap())
    }

    #[test]
    fn dalal_shapes() {
        let d = Concept::conj([n("A"), n("B"), n("C")]);
        assert_eq!(
            kappa_dalal(&d).unwrap().to_string(),
            "Bot"
        );
        let d = Concept::disj([n("A"), n("B"), n("C")]);
        assert_eq!(kappa_dalal(&d).unwrap().to_string(), "(B | C) & (A | C) & (A | B)");
        let d = Concept::conj([n("A"), n("B"), n("C")]);
        assert_eq!(rho_dalal(&d).unwrap().to_string(), "B & C | A & C | A & B");
        let d = Concept::some("r", Concept::disj([n("A"), Concept::not(n("B"))]));
        assert_eq!(kappa_dalal(&d).unwrap().to_string(), "some r. (~B & A)");
        assert_eq!(rho_dalal(&Concept::Top).unwrap(), Concept::Top);
        assert!(kappa_dalal(&Concept::conj([n("A"), Concept::some("r", n("B"))])).is_err());
    }

    #[test]
    fn quantifier_flips() {
        let c = Concept::some("r", Concept::some("s", n("D")));
        assert_eq!(
            kappa_q(&c).unwrap().concept.to_string(),
            "all r. some s. D & some r. all s. D"
        );
        let all = Concept::all("r", n("D"));
        assert!(kappa_q(&all).unwrap().flag);
        assert_eq!(rho_q(&all).unwrap().to_string(), "some r. D");
        assert_eq!(rho_q(&Concept::some("r", n("D"))).unwrap(), Concept::Top);
    }

    #[test]
    fn tweety_exceptions() {
        let sem = tweety();
        let t_new = [Axiom::sub(Concept::conj([n("Tweety"), n("flies")]), Concept::Bottom)];
        let ctx = Context::of(&sem, &t_new).unwrap();
        let s = rho_exceptions(&sem, &ctx, &n("flies"), &[n("Tweety")], 1).unwrap();
        assert_eq!(s.concept.to_string(), "flies | Tweety");
        assert!(!s.flag);
        let again = rho_exceptions(&sem, &ctx, &s.concept, &[n("Tweety")], 1).unwrap();
        assert!(again.flag);
        assert_eq!(again.concept, s.concept);

        let t_old = [Axiom::sub(n("Tweety"), n("bird"))];
        let ctx = Context::of(&sem, &t_old).unwrap();
        let s = kappa_exceptions(&sem, &ctx, &n("bird"), &[n("Tweety")]).unwrap();
        assert_eq!(s.concept.to_string(), "bird & ~Tweety");

        let op = concept_op("kappa_exceptions", &[n("Tweety")], None).unwrap();
        let rel = FormulaRelaxation::new(op, ctx);
        let out = rel.relax(&sem, &Axiom::sub(n("bird"), n("flies"))).unwrap();
        assert_eq!(out.to_string(), "bird & ~Tweety [= flies");
        let out = rel.relax(&sem, &Axiom::inst("Tweety", n("bird"))).unwrap();
        assert_eq!(out.to_string(), "Tweety : Top");
    }

    #[test]
    fn kappa_bot_lifts_left() {
        let sem = tweety();
        let op = concept_op("kappa_bot", &[], None).unwrap();
        let rel = FormulaRelaxation::new(op, Context::empty(&sem));
        let out = rel.relax(&sem, &Axiom::sub(n("Tweety"), n("bird"))).unwrap();
        assert_eq!(out.to_string(), "Bot [= bird");
        assert!(sem.is_tautology(&out).unwrap());
    }

    #[test]
    fn output_fragment_is_checked() {
        let sig = DlSignature::new(&["bird"], &[], &["Tweety"]).unwrap();
        let sem = Semantics::new(DlSystem::new(sig, Fragment::El, 2, false).unwrap());
        let op = concept_op("kappa_exceptions", &[n("Tweety")], None).unwrap();
        let ctx = Context::of(&sem, &[Axiom::sub(n("Tweety"), n("bird"))]).unwrap();
        let rel = FormulaRelaxation::new(op, ctx);
        let ax = Axiom::sub(n("bird"), n("bird"));
        assert!(matches!(rel.relax(&sem, &ax), Err(Error::Fragment { .. })));
    }
}
