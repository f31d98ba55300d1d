//! Bounded interpretations and the compiled evaluator.

use super::{Axiom, Concept, DlSignature, Fragment, R_TOP};
use crate::error::{Error, Result};
use crate::model_set::ModelSet;
use crate::satsys::{LogicTag, SatisfactionSystem};
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

/// Domains are bit masks in a `u8`.
pub const MAX_DOMAIN: usize = 8;

pub const MODEL_CEILING: u128 = 1 << 23;

/// An interpretation over `Δ = {0, ..., size-1}`. `succ[r * size + x]`
/// is the successor mask of `x` for role `r`.
#[derive(Clone, Debug)]
pub struct Interpretation {
    sig: Arc<DlSignature>,
    pub size: usize,
    pub concepts: Vec<u8>,
    pub succ: Vec<u8>,
    pub individuals: Vec<u8>,
}

impl Interpretation {
    pub fn domain(&self) -> u8 {
        full(self.size)
    }

    pub fn successors(&self, role: usize, x: usize) -> u8 {
        self.succ[role * self.size + x]
    }

    /// Every element has a successor for each listed role.
    pub fn is_serial_for(&self, roles: &[usize]) -> bool {
        roles
            .iter()
            .all(|&r| (0..self.size).all(|x| self.successors(r, x) != 0))
    }

    /// Serial for every declared role.
    pub fn is_serial(&self) -> bool {
        let roles: Vec<usize> = (0..self.sig.roles().len()).collect();
        self.is_serial_for(&roles)
    }

    /// `C^I` as a mask. Unknown names evaluate to the empty set.
    pub fn eval(&self, c: &Concept) -> u8 {
        eval(self, &compile_concept(&self.sig, c))
    }
}

fn full(size: usize) -> u8 {
    ((1u16 << size) - 1) as u8
}

fn show_mask(mask: u8, size: usize) -> String {
    let items: Vec<String> = (0..size)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|D|={}", self.size)?;
        for (name, m) in self.sig.concepts().iter().zip(&self.concepts) {
            write!(f, " {name}={}", show_mask(*m, self.size))?;
        }
        for (r, name) in self.sig.roles().iter().enumerate() {
            let pairs: Vec<String> = (0..self.size)
                .flat_map(|x| {
                    (0..self.size)
                        .filter(move |y| self.successors(r, x) >> y & 1 == 1)
                        .map(move |y| format!("({x},{y})"))
                })
                .collect();
            write!(f, " {name}={{{}}}", pairs.join(","))?;
        }
        for (name, e) in self.sig.individuals().iter().zip(&self.individuals) {
            write!(f, " {name}={e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct SizeBlock {
    size: usize,
    start: usize,
    count: usize,
}

#[derive(Clone, Debug)]
pub struct DlSystem {
    sig: Arc<DlSignature>,
    fragment: Fragment,
    bound: usize,
    empty_domain: bool,
    blocks: Vec<SizeBlock>,
    count: usize,
}

impl DlSystem {
    pub fn new(sig: DlSignature, fragment: Fragment, bound: usize, empty_domain: bool) -> Result<Self> {
        Self::with_ceiling(sig, fragment, bound, empty_domain, MODEL_CEILING)
    }

    pub fn with_ceiling(
        sig: DlSignature,
        fragment: Fragment,
        bound: usize,
        empty_domain: bool,
        ceiling: u128,
    ) -> Result<Self> {
        if bound > MAX_DOMAIN {
            return Err(Error::Config(format!(
                "DL domains are limited to {MAX_DOMAIN} elements, got bound {bound}"
            )));
        }
        let with_empty = empty_domain && sig.individuals().is_empty();
        let first = if with_empty { 0 } else { 1 };
        if bound < first.max(1) && !with_empty {
            return Err(Error::InvalidBound(bound));
        }
        let nc = sig.concepts().len() as u32;
        let nr = sig.roles().len() as u32;
        let ni = sig.individuals().len() as u32;
        let mut blocks = Vec::new();
        let mut total: u128 = 0;
        for size in first..=bound {
            let n = size as u32;
            let bits = n * nc + n * n * nr;
            let count = if bits >= 127 {
                u128::MAX
            } else {
                (1u128 << bits).saturating_mul((size as u128).pow(ni))
            };
            if count == 0 {
                continue;
            }
            total = total.saturating_add(count);
            if total > ceiling {
                return Err(Error::SpaceTooLarge { count: total, ceiling });
            }
            blocks.push(SizeBlock {
                size,
                start: (total - count) as usize,
                count: count as usize,
            });
        }
        if total == 0 {
            return Err(Error::InvalidBound(bound));
        }
        Ok(Self {
            sig: Arc::new(sig),
            fragment,
            bound,
            empty_domain,
            blocks,
            count: total as usize,
        })
    }

    pub fn signature(&self) -> &DlSignature {
        &self.sig
    }

    pub fn fragment(&self) -> Fragment {
        self.fragment
    }

    pub fn empty_domain(&self) -> bool {
        self.empty_domain
    }

    fn decode(&self, index: usize) -> Interpretation {
        let b = self
            .blocks
            .iter()
            .find(|b| index < b.start + b.count)
            .expect("index in range");
        let n = b.size;
        let mut r = index - b.start;
        let ni = self.sig.individuals().len();
        let nr = self.sig.roles().len();
        let nc = self.sig.concepts().len();
        let mut individuals = vec![0u8; ni];
        for slot in individuals.iter_mut().rev() {
            *slot = (r % n) as u8;
            r /= n;
        }
        let mut succ = vec![0u8; nr * n];
        let role_bits = n * n;
        for role in (0..nr).rev() {
            let digit = if role_bits >= usize::BITS as usize {
                let d = r;
                r = 0;
                d
            } else {
                let d = r & ((1usize << role_bits) - 1);
                r >>= role_bits;
                d
            };
            for x in 0..n {
                succ[role * n + x] = (digit >> (x * n) & full(n) as usize) as u8;
            }
        }
        let mut concepts = vec![0u8; nc];
        for slot in concepts.iter_mut().rev() {
            *slot = (r & full(n) as usize) as u8;
            r >>= n;
        }
        Interpretation {
            sig: Arc::clone(&self.sig),
            size: n,
            concepts,
            succ,
            individuals,
        }
    }
}

/// Concepts with names resolved to indices. `None` roles stand for `r_top`.
enum CConcept {
    Top,
    Bottom,
    Concept(usize),
    Nominal(usize),
    Unknown,
    Not(Box<CConcept>),
    And(Vec<CConcept>),
    Or(Vec<CConcept>),
    Exists(Option<usize>, Box<CConcept>),
    Forall(Option<usize>, Box<CConcept>),
}

enum CAxiom {
    Sub(CConcept, CConcept),
    Inst(usize, CConcept),
    Role(usize, usize, Option<usize>),
}

fn role_index(sig: &DlSignature, r: &str) -> Option<usize> {
    if r == R_TOP {
        None
    } else {
        sig.role(r)
    }
}

fn compile_concept(sig: &DlSignature, c: &Concept) -> CConcept {
    match c {
        Concept::Top => CConcept::Top,
        Concept::Bottom => CConcept::Bottom,
        Concept::Name(n) => match (sig.concept(n), sig.individual(n)) {
            (Some(i), _) => CConcept::Concept(i),
            (None, Some(i)) => CConcept::Nominal(i),
            _ => CConcept::Unknown,
        },
        Concept::Not(a) => CConcept::Not(Box::new(compile_concept(sig, a))),
        Concept::And(ps) => CConcept::And(ps.iter().map(|p| compile_concept(sig, p)).collect()),
        Concept::Or(ps) => CConcept::Or(ps.iter().map(|p| compile_concept(sig, p)).collect()),
        Concept::Exists(r, a) => CConcept::Exists(role_index(sig, r), Box::new(compile_concept(sig, a))),
        Concept::Forall(r, a) => CConcept::Forall(role_index(sig, r), Box::new(compile_concept(sig, a))),
    }
}

fn compile_axiom(sig: &DlSignature, ax: &Axiom) -> CAxiom {
    let ind = |a: &str| sig.individual(a).expect("checked sentence");
    match ax {
        Axiom::Sub(c, d) => CAxiom::Sub(compile_concept(sig, c), compile_concept(sig, d)),
        Axiom::Inst(a, c) => CAxiom::Inst(ind(a), compile_concept(sig, c)),
        Axiom::Role(a, b, r) => CAxiom::Role(ind(a), ind(b), role_index(sig, r)),
    }
}

fn eval(i: &Interpretation, c: &CConcept) -> u8 {
    let dom = i.domain();
    match c {
        CConcept::Top => dom,
        CConcept::Bottom | CConcept::Unknown => 0,
        CConcept::Concept(k) => i.concepts[*k],
        CConcept::Nominal(k) => 1 << i.individuals[*k],
        CConcept::Not(a) => !eval(i, a) & dom,
        CConcept::And(ps) => ps.iter().fold(dom, |m, p| m & eval(i, p)),
        CConcept::Or(ps) => ps.iter().fold(0, |m, p| m | eval(i, p)),
        CConcept::Exists(r, a) => {
            let inner = eval(i, a);
            match r {
                None => {
                    if inner != 0 {
                        dom
                    } else {
                        0
                    }
                }
                Some(r) => (0..i.size)
                    .filter(|&x| i.successors(*r, x) & inner != 0)
                    .fold(0, |m, x| m | 1 << x),
            }
        }
        CConcept::Forall(r, a) => {
            let inner = eval(i, a);
            match r {
                None => {
                    if inner == dom {
                        dom
                    } else {
                        0
                    }
                }
                Some(r) => (0..i.size)
                    .filter(|&x| i.successors(*r, x) & !inner == 0)
                    .fold(0, |m, x| m | 1 << x),
            }
        }
    }
}

fn holds(i: &Interpretation, ax: &CAxiom) -> bool {
    match ax {
        CAxiom::Sub(c, d) => eval(i, c) & !eval(i, d) == 0,
        CAxiom::Inst(a, c) => eval(i, c) >> i.individuals[*a] & 1 == 1,
        CAxiom::Role(a, b, r) => match r {
            None => true,
            Some(r) => {
                i.successors(*r, i.individuals[*a] as usize) >> i.individuals[*b] & 1 == 1
            }
        },
    }
}

impl SatisfactionSystem for DlSystem {
    type Sentence = Axiom;
    type Model = Interpretation;

    fn logic(&self) -> LogicTag {
        match self.fragment {
            Fragment::El => LogicTag::DlEl,
            Fragment::Elu => LogicTag::DlElu,
            Fragment::Alc => LogicTag::DlAlc,
        }
    }

    fn model_count(&self) -> usize {
        self.count
    }

    fn model(&self, index: usize) -> Interpretation {
        self.decode(index)
    }

    fn satisfies(&self, model: &Interpretation, sentence: &Axiom) -> bool {
        holds(model, &compile_axiom(&self.sig, sentence))
    }

    /// Symbols only. Fragments are enforced by documents and operators.
    fn check_sentence(&self, sentence: &Axiom) -> Result<()> {
        self.sig.check_axiom(sentence)
    }

    fn trivial_models(&self) -> ModelSet {
        let mut out = ModelSet::empty(self.count);
        if let Some(b) = self.blocks.first() {
            if b.size == 0 {
                out.insert(b.start);
            }
        }
        out
    }

    fn tautology(&self) -> Axiom {
        Axiom::Sub(Concept::Top, Concept::Top)
    }

    fn bound(&self) -> Option<usize> {
        Some(self.bound)
    }

    fn sentence_models(&self, sentence: &Axiom) -> ModelSet {
        let ax = compile_axiom(&self.sig, sentence);
        let hits: Vec<usize> = (0..self.count)
            .into_par_iter()
            .with_min_len(1024)
            .filter(|&i| holds(&self.decode(i), &ax))
            .collect();
        ModelSet::from_indices(self.count, hits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let sig = DlSignature::new(&["A"], &[], &[]).unwrap();
        assert_eq!(DlSystem::new(sig, Fragment::El, 1, false).unwrap().model_count(), 2);
        let sig = DlSignature::new(&["A"], &["r"], &[]).unwrap();
        // size 1: 2 * 2, size 2: 4 * 16.
        assert_eq!(DlSystem::new(sig, Fragment::El, 2, false).unwrap().model_count(), 4 + 64);
        let sig = DlSignature::new(&["A"], &[], &["a"]).unwrap();
        assert!(DlSystem::new(sig, Fragment::El, 0, true).is_err());
    }

    #[test]
    fn empty_domain_is_trivial() {
        let sig = DlSignature::new(&["A"], &[], &[]).unwrap();
        let sys = DlSystem::new(sig, Fragment::El, 1, true).unwrap();
        assert_eq!(sys.model_count(), 3);
        assert_eq!(sys.trivial_models().iter().collect::<Vec<_>>(), vec![0]);
        let bot = Axiom::Sub(Concept::Top, Concept::Bottom);
        assert_eq!(sys.sentence_models(&bot).iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn decode_round_trip_shapes() {
        let sig = DlSignature::new(&["A", "B"], &["r"], &["a", "b"]).unwrap();
        let sys = DlSystem::new(sig, Fragment::Alc, 2, false).unwrap();
        // size 1: 4 * 2 * 1; size 2: 16 * 16 * 4.
        assert_eq!(sys.model_count(), 8 + 1024);
        let last = sys.model(sys.model_count() - 1);
        assert_eq!(last.size, 2);
        assert_eq!(last.concepts, vec![3, 3]);
        assert_eq!(last.succ, vec![3, 3]);
        assert_eq!(last.individuals, vec![1, 1]);
    }

    #[test]
    fn quantifiers_evaluate() {
        let sig = DlSignature::new(&["A"], &["r"], &[]).unwrap();
        let sys = DlSystem::new(sig, Fragment::Alc, 2, false).unwrap();
        let i = (0..sys.model_count())
            .map(|k| sys.model(k))
            .find(|i| i.size == 2 && i.concepts == [2] && i.succ == [2, 0])
            .unwrap();
        assert_eq!(i.eval(&Concept::some("r", Concept::name("A"))), 1);
        assert_eq!(i.eval(&Concept::all("r", Concept::name("A"))), 3);
        assert_eq!(i.eval(&Concept::some(R_TOP, Concept::name("A"))), 3);
        assert_eq!(i.eval(&Concept::all(R_TOP, Concept::name("A"))), 0);
    }
}
