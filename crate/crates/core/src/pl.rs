//! Propositional logic over a finite ordered set of atoms, with the
//! Hamming-ball dilation as relaxation.

use crate::error::{Error, Result};
use crate::model_set::ModelSet;
use crate::relax::Relaxation;
use crate::satsys::{LogicTag, SatisfactionSystem, Semantics};
use std::fmt;
use std::sync::Arc;

pub type Symbol = Arc<str>;

/// Valuations are indexed by reading the atoms, in signature order, as
/// the bits of a binary number: over `p, q` the index of `p=1, q=0` is
/// `0b10`.
pub const MAX_ATOMS: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PlFormula {
    Atom(Symbol),
    Not(Box<PlFormula>),
    Or(Box<PlFormula>, Box<PlFormula>),
}

impl PlFormula {
    pub fn atom(name: &str) -> Self {
        PlFormula::Atom(Arc::from(name))
    }

    pub fn not(f: PlFormula) -> Self {
        PlFormula::Not(Box::new(f))
    }

    pub fn or(a: PlFormula, b: PlFormula) -> Self {
        PlFormula::Or(Box::new(a), Box::new(b))
    }

    /// `a ∧ b` as `¬(¬a ∨ ¬b)`.
    pub fn and(a: PlFormula, b: PlFormula) -> Self {
        Self::not(Self::or(Self::not(a), Self::not(b)))
    }

    /// `a ⇒ b` as `¬a ∨ b`.
    pub fn implies(a: PlFormula, b: PlFormula) -> Self {
        Self::or(Self::not(a), b)
    }

    pub fn depth(&self) -> usize {
        match self {
            PlFormula::Atom(_) => 0,
            PlFormula::Not(a) => 1 + a.depth(),
            PlFormula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn atoms(&self, out: &mut Vec<Symbol>) {
        match self {
            PlFormula::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            PlFormula::Not(a) => a.atoms(out),
            PlFormula::Or(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }

    fn as_and(&self) -> Option<(&PlFormula, &PlFormula)> {
        if let PlFormula::Not(inner) = self {
            if let PlFormula::Or(a, b) = &**inner {
                if let (PlFormula::Not(a), PlFormula::Not(b)) = (&**a, &**b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn as_implies(&self) -> Option<(&PlFormula, &PlFormula)> {
        if let PlFormula::Or(a, b) = self {
            if a.as_and().is_some() {
                return None;
            }
            if let PlFormula::Not(a) = &**a {
                return Some((a, b));
            }
        }
        None
    }

    // 0: implication, 1: disjunction, 2: conjunction, 3: negation, 4: atom.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let (prec, body): (u8, Box<dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result + '_>) =
            if let Some((a, b)) = self.as_and() {
                (2, Box::new(move |f| {
                    a.fmt_prec(f, 2)?;
                    f.write_str(" & ")?;
                    b.fmt_prec(f, 3)
                }))
            } else if let Some((a, b)) = self.as_implies() {
                (0, Box::new(move |f| {
                    a.fmt_prec(f, 1)?;
                    f.write_str(" -> ")?;
                    b.fmt_prec(f, 0)
                }))
            } else {
                match self {
                    PlFormula::Atom(name) => (4, Box::new(move |f| f.write_str(name))),
                    PlFormula::Not(a) => (3, Box::new(move |f| {
                        f.write_str("!")?;
                        a.fmt_prec(f, 3)
                    })),
                    PlFormula::Or(a, b) => (1, Box::new(move |f| {
                        a.fmt_prec(f, 1)?;
                        f.write_str(" | ")?;
                        b.fmt_prec(f, 2)
                    })),
                }
            };
        if prec < min {
            f.write_str("(")?;
            body(f)?;
            f.write_str(")")
        } else {
            body(f)
        }
    }
}

impl fmt::Display for PlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

pub fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlSignature {
    atoms: Vec<Symbol>,
}

impl PlSignature {
    pub fn new<I, A>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = A>,
        A: AsRef<str>,
    {
        let mut out: Vec<Symbol> = Vec::new();
        for a in atoms {
            let a = a.as_ref();
            if !is_atom_name(a) {
                return Err(Error::Signature(format!("`{a}` is not a valid atom name")));
            }
            if out.iter().any(|b| &**b == a) {
                return Err(Error::Signature(format!("atom `{a}` declared twice")));
            }
            out.push(Arc::from(a));
        }
        if out.is_empty() {
            return Err(Error::Signature("at least one atom is required".into()));
        }
        if out.len() > MAX_ATOMS {
            return Err(Error::SpaceTooLarge {
                count: 1u128 << out.len(),
                ceiling: 1u128 << MAX_ATOMS,
            });
        }
        Ok(Self { atoms: out })
    }

    pub fn atoms(&self) -> &[Symbol] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| &**a == name)
    }

    /// The signature with the atoms of `other` appended.
    pub fn merge(&self, other: &PlSignature) -> Result<PlSignature> {
        let mut atoms: Vec<&str> = self.atoms.iter().map(|a| &**a).collect();
        for a in &other.atoms {
            if !atoms.contains(&&**a) {
                atoms.push(a);
            }
        }
        PlSignature::new(atoms)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Valuation {
    bits: Vec<bool>,
}

impl Valuation {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn from_index(n: usize, index: usize) -> Self {
        Self {
            bits: (0..n).map(|j| index >> (n - 1 - j) & 1 == 1).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, atom: usize) -> bool {
        self.bits[atom]
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Number of atoms on which two valuations differ.
pub fn hamming(a: &Valuation, b: &Valuation) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.bits.iter().zip(&b.bits).filter(|(x, y)| x != y).count())
}

#[derive(Clone, Debug)]
pub struct PlSystem {
    sig: PlSignature,
}

impl PlSystem {
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

    fn bit(&self, name: &str) -> usize {
        let n = self.sig.len();
        n - 1 - self.sig.position(name).expect("checked sentence")
    }

    fn eval(&self, index: usize, f: &PlFormula) -> bool {
        match f {
            PlFormula::Atom(a) => index >> self.bit(a) & 1 == 1,
            PlFormula::Not(a) => !self.eval(index, a),
            PlFormula::Or(a, b) => self.eval(index, a) || self.eval(index, b),
        }
    }

    /// `p ∧ ¬p` over the first atom.
    pub fn contradiction(&self) -> PlFormula {
        let p = PlFormula::Atom(self.sig.atoms[0].clone());
        PlFormula::and(p.clone(), PlFormula::not(p))
    }

    fn minterm(&self, index: usize) -> PlFormula {
        let n = self.sig.len();
        let mut lits = self.sig.atoms.iter().enumerate().map(|(j, a)| {
            let atom = PlFormula::Atom(a.clone());
            if index >> (n - 1 - j) & 1 == 1 {
                atom
            } else {
                PlFormula::not(atom)
            }
        });
        let first = lits.next().expect("nonempty signature");
        lits.fold(first, PlFormula::and)
    }

    /// The full disjunctive normal form of a model set, minterms in index
    /// order. The empty set gives the canonical contradiction and the full
    /// space the canonical tautology.
    pub fn dnf(&self, models: &ModelSet) -> PlFormula {
        if models.is_empty() {
            return self.contradiction();
        }
        if models.is_full() {
            return self.tautology();
        }
        let mut terms = models.iter().map(|i| self.minterm(i));
        let first = terms.next().expect("nonempty");
        terms.fold(first, PlFormula::or)
    }
}

impl SatisfactionSystem for PlSystem {
    type Sentence = PlFormula;
    type Model = Valuation;

    fn logic(&self) -> LogicTag {
        LogicTag::Pl
    }

    fn model_count(&self) -> usize {
        1 << self.sig.len()
    }

    fn model(&self, index: usize) -> Valuation {
        Valuation::from_index(self.sig.len(), index)
    }

    fn satisfies(&self, model: &Valuation, sentence: &PlFormula) -> bool {
        self.eval(model.index(), sentence)
    }

    fn check_sentence(&self, sentence: &PlFormula) -> Result<()> {
        let mut atoms = Vec::new();
        sentence.atoms(&mut atoms);
        for a in atoms {
            if self.sig.position(&a).is_none() {
                return Err(Error::UnknownSymbol {
                    symbol: a.to_string(),
                    context: "atom".into(),
                });
            }
        }
        Ok(())
    }

    fn trivial_models(&self) -> ModelSet {
        ModelSet::empty(self.model_count())
    }

    /// `p ∨ ¬p` over the first atom.
    fn tautology(&self) -> PlFormula {
        let p = PlFormula::Atom(self.sig.atoms[0].clone());
        PlFormula::or(p.clone(), PlFormula::not(p))
    }

    fn sentence_models(&self, sentence: &PlFormula) -> ModelSet {
        let n = self.model_count();
        ModelSet::from_indices(n, (0..n).filter(|&i| self.eval(i, sentence)))
    }

    fn definable_theory(&self, models: &ModelSet) -> Result<Option<Vec<PlFormula>>> {
        Ok(Some(vec![self.dnf(models)]))
    }
}

/// Valuations at Hamming distance at most 1 from some member of `set`.
pub fn dilate_models(atoms: usize, set: &ModelSet) -> ModelSet {
    let mut out = set.clone();
    for i in set.iter() {
        for j in 0..atoms {
            out.insert(i ^ (1 << j));
        }
    }
    out
}

/// `D_B(φ)`: dilation by the unit Hamming ball.
pub fn dilate(sem: &Semantics<PlSystem>, sentence: &PlFormula) -> Result<PlFormula> {
    let sys = sem.system();
    let models = sem.sentence_models(sentence)?;
    Ok(sys.dnf(&dilate_models(sys.signature().len(), &models)))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HammingDilation;

impl Relaxation<PlSystem> for HammingDilation {
    fn name(&self) -> &str {
        "hamming"
    }

    fn relax(&self, sem: &Semantics<PlSystem>, sentence: &PlFormula) -> Result<PlFormula> {
        dilate(sem, sentence)
    }
}

/// Whether `distance` over the valuations of `atoms` atoms has the
/// betweenness property: for all `x, y` and every `k ≤ δ(x, y)` some `z`
/// has `δ(x, z) = k` and `δ(z, y) = δ(x, y) - k`.
pub fn check_betweenness(atoms: usize, distance: impl Fn(usize, usize) -> usize) -> bool {
    let n = 1usize << atoms;
    (0..n).all(|x| {
        (0..n).all(|y| {
            let d = distance(x, y);
            (0..=d).all(|k| (0..n).any(|z| distance(x, z) == k && distance(z, y) == d - k))
        })
    })
}

/// Hamming distance between valuation indices.
pub fn hamming_index(a: usize, b: usize) -> usize {
    (a ^ b).count_ones() as usize
}

/// Every formula over `atoms` built from `¬` and `∨` up to the given
/// depth, without repeats, in order of construction.
pub fn sentence_pool(atoms: &[Symbol], depth: usize) -> Vec<PlFormula> {
    let mut level: Vec<PlFormula> = atoms.iter().map(|a| PlFormula::Atom(a.clone())).collect();
    for _ in 0..depth {
        let mut next = level.clone();
        let push = |f: PlFormula, next: &mut Vec<PlFormula>| {
            if !next.contains(&f) {
                next.push(f);
            }
        };
        for a in &level {
            push(PlFormula::not(a.clone()), &mut next);
        }
        for a in &level {
            for b in &level {
                push(PlFormula::or(a.clone(), b.clone()), &mut next);
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> Semantics<PlSystem> {
        Semantics::new(PlSystem::with_atoms(["p", "q"]).unwrap())
    }

    #[test]
    fn hamming_examples() {
        let v = |s: &str| Valuation::new(s.chars().map(|c| c == '1').collect());
        assert_eq!(hamming(&v("11"), &v("11")).unwrap(), 0);
        assert_eq!(hamming(&v("10"), &v("01")).unwrap(), 2);
        assert_eq!(hamming(&v("110"), &v("100")).unwrap(), 1);
        assert!(hamming(&v("1"), &v("10")).is_err());
    }

    #[test]
    fn valuation_index_reads_atoms_as_bits() {
        let v = Valuation::from_index(2, 0b10);
        assert_eq!(v.to_string(), "10");
        assert!(v.get(0));
        assert!(!v.get(1));
        assert_eq!(v.index(), 2);
    }

    #[test]
    fn dilation_of_conjunction_is_disjunction() {
        let sem = pq();
        let f = PlFormula::and(PlFormula::atom("p"), PlFormula::atom("q"));
        let d = dilate(&sem, &f).unwrap();
        let expected = ModelSet::from_indices(4, [0b11, 0b10, 0b01]);
        assert_eq!(*sem.sentence_models(&d).unwrap(), expected);
    }

    #[test]
    fn dilation_of_atom_covers_everything() {
        let sem = pq();
        let d = dilate(&sem, &PlFormula::atom("q")).unwrap();
        assert!(sem.sentence_models(&d).unwrap().is_full());
    }

    #[test]
    fn dilation_keeps_contradictions() {
        let sem = pq();
        let c = sem.system().contradiction();
        assert_eq!(dilate(&sem, &c).unwrap(), c);
    }

    #[test]
    fn dnf_round_trips() {
        let sem = pq();
        let sys = sem.system();
        assert_eq!(sys.dnf(&ModelSet::from_indices(4, [3])).to_string(), "p & q");
        assert_eq!(
            sys.dnf(&ModelSet::from_indices(4, [1, 2])).to_string(),
            "!p & q | p & !q"
        );
        assert!(sem.is_tautology(&sys.dnf(&ModelSet::full(4))).unwrap());
    }

    #[test]
    fn display_resugars() {
        let f = PlFormula::implies(
            PlFormula::atom("q"),
            PlFormula::and(PlFormula::atom("p"), PlFormula::atom("q")),
        );
        assert_eq!(f.to_string(), "q -> p & q");
        let g = PlFormula::not(PlFormula::or(PlFormula::atom("p"), PlFormula::atom("q")));
        assert_eq!(g.to_string(), "!(p | q)");
        let h = PlFormula::or(
            PlFormula::implies(PlFormula::atom("p"), PlFormula::atom("q")),
            PlFormula::atom("p"),
        );
        assert_eq!(h.to_string(), "(p -> q) | p");
    }

    #[test]
    fn betweenness() {
        assert!(check_betweenness(2, hamming_index));
        assert!(check_betweenness(1, hamming_index));
        assert!(!check_betweenness(2, |a, b| 2 * hamming_index(a, b)));
    }

    #[test]
    fn pool_sizes() {
        let atoms = [Symbol::from("p")];
        assert_eq!(sentence_pool(&atoms, 0).len(), 1);
        assert_eq!(sentence_pool(&atoms, 1).len(), 3);
        assert_eq!(sentence_pool(&atoms, 2).len(), 13);
    }
}
