//! Many-sorted first-order logic over structures with bounded carriers.
//!
//! Sentences are stored as disjunctions of prenex blocks. Input formulas
//! go through [`prenex`], which removes `->`/`<->`, pushes negations to
//! the atoms, splits a top-level disjunction into blocks and pulls the
//! quantifiers of each block to the front. Variables are renamed `x0`,
//! `x1`, ... per block in the order their quantifiers appear.
//!
//! Equality is not built in: `=` is an ordinary binary predicate that a
//! signature may declare, printed infix.

use crate::error::{Error, Result};
use crate::model_set::ModelSet;
use crate::pl::Symbol;
use crate::relax::Relaxation;
use crate::satsys::{LogicTag, SatisfactionSystem, Semantics};
use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Largest model space the enumerator accepts.
pub const MODEL_CEILING: u128 = 1 << 22;

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const RESERVED: [&str; 4] = ["forall", "exists", "true", "false"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncDecl {
    pub name: Symbol,
    pub args: Vec<usize>,
    pub result: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredDecl {
    pub name: Symbol,
    pub args: Vec<usize>,
}

/// `(S, F, P)`. Argument and result sorts are indices into `sorts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolSignature {
    sorts: Vec<Symbol>,
    funcs: Vec<FuncDecl>,
    preds: Vec<PredDecl>,
}

impl FolSignature {
    /// Builds and validates a signature from names: `funcs` as
    /// `(name, arg sorts, result sort)`, `preds` as `(name, arg sorts)`.
    pub fn new(
        sorts: &[&str],
        funcs: &[(&str, &[&str], &str)],
        preds: &[(&str, &[&str])],
    ) -> Result<Self> {
        let mut sig = FolSignature {
            sorts: Vec::new(),
            funcs: Vec::new(),
            preds: Vec::new(),
        };
        for s in sorts {
            if !is_identifier(s) || RESERVED.contains(s) {
                return Err(Error::Signature(format!("`{s}` is not a valid sort name")));
            }
            if sig.sort_index(s).is_some() {
                return Err(Error::Signature(format!("sort `{s}` declared twice")));
            }
            sig.sorts.push(Arc::from(*s));
        }
        if sig.sorts.is_empty() {
            return Err(Error::Signature("at least one sort is required".into()));
        }
        let sort = |sig: &FolSignature, s: &str| {
            sig.sort_index(s).ok_or_else(|| Error::UnknownSymbol {
                symbol: s.to_string(),
                context: "sort".into(),
            })
        };
        for (name, args, result) in funcs {
            if !is_identifier(name) || RESERVED.contains(name) {
                return Err(Error::Signature(format!("`{name}` is not a valid function name")));
            }
            let decl = FuncDecl {
                name: Arc::from(*name),
                args: args.iter().map(|a| sort(&sig, a)).collect::<Result<_>>()?,
                result: sort(&sig, result)?,
            };
            sig.check_fresh(name)?;
            sig.funcs.push(decl);
        }
        for (name, args) in preds {
            if (!is_identifier(name) && *name != "=") || RESERVED.contains(name) {
                return Err(Error::Signature(format!("`{name}` is not a valid predicate name")));
            }
            if *name == "=" && args.len() != 2 {
                return Err(Error::Signature("`=` must be binary".into()));
            }
            let decl = PredDecl {
                name: Arc::from(*name),
                args: args.iter().map(|a| sort(&sig, a)).collect::<Result<_>>()?,
            };
            sig.check_fresh(name)?;
            sig.preds.push(decl);
        }
        Ok(sig)
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.func(name).is_some() || self.pred(name).is_some() {
            return Err(Error::Signature(format!("symbol `{name}` declared twice")));
        }
        Ok(())
    }

    pub fn sorts(&self) -> &[Symbol] {
        &self.sorts
    }

    pub fn funcs(&self) -> &[FuncDecl] {
        &self.funcs
    }

    pub fn preds(&self) -> &[PredDecl] {
        &self.preds
    }

    pub fn sort_index(&self, name: &str) -> Option<usize> {
        self.sorts.iter().position(|s| &**s == name)
    }

    pub fn func(&self, name: &str) -> Option<usize> {
        self.funcs.iter().position(|f| &*f.name == name)
    }

    pub fn pred(&self, name: &str) -> Option<usize> {
        self.preds.iter().position(|p| &*p.name == name)
    }
}

// ---------------------------------------------------------------------------
// Surface syntax, as produced by the parser.

#[derive(Clone, Debug, PartialEq, Eq, Hash, Copy)]
pub enum Quant {
    Forall,
    Exists,
}

impl Quant {
    fn dual(self) -> Self {
        match self {
            Quant::Forall => Quant::Exists,
            Quant::Exists => Quant::Forall,
        }
    }
}

impl fmt::Display for Quant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quant::Forall => "forall",
            Quant::Exists => "exists",
        })
    }
}

/// A term before variables are told apart from constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceTerm {
    Name(Symbol),
    App(Symbol, Vec<SurfaceTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(Symbol, Vec<SurfaceTerm>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Quantifier, variable, optional sort (inferred when there is one).
    Quant(Quant, Symbol, Option<Symbol>, Box<Formula>),
}

// ---------------------------------------------------------------------------
// Prenex sentences.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App(Symbol, Vec<Term>),
}

/// Quantifier-free matrix in negation normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Matrix {
    True,
    False,
    Atom(Symbol, Vec<Term>),
    Not(Box<Matrix>),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

impl Matrix {
    fn and(parts: Vec<Matrix>) -> Matrix {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Matrix::True => {}
                Matrix::False => return Matrix::False,
                Matrix::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Matrix::True,
            1 => out.pop().expect("one part"),
            _ => Matrix::And(out),
        }
    }

    fn or(parts: Vec<Matrix>) -> Matrix {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Matrix::False => {}
                Matrix::True => return Matrix::True,
                Matrix::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Matrix::False,
            1 => out.pop().expect("one part"),
            _ => Matrix::Or(out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    /// Quantifier and sort name of `x0`, `x1`, ...
    pub prefix: Vec<(Quant, Symbol)>,
    pub matrix: Matrix,
}

impl Block {
    fn is_true(&self) -> bool {
        self.matrix == Matrix::True
    }

    fn universal_positions(&self) -> Vec<usize> {
        (0..self.prefix.len())
            .filter(|&i| self.prefix[i].0 == Quant::Forall)
            .collect()
    }
}

/// A disjunction of prenex blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FolSentence {
    blocks: Vec<Block>,
}

impl FolSentence {
    /// Normalizes: a block with a `true` matrix makes the whole sentence
    /// `true`, a quantifier-free disjunction is split, `false` blocks are
    /// dropped when others remain and duplicates are removed.
    pub fn from_blocks(blocks: impl IntoIterator<Item = Block>) -> Self {
        let mut out: Vec<Block> = Vec::new();
        let mut pending: Vec<Block> = blocks.into_iter().collect();
        pending.reverse();
        while let Some(b) = pending.pop() {
            if b.is_true() {
                return Self::tautology();
            }
            if b.prefix.is_empty() {
                if let Matrix::Or(parts) = b.matrix {
                    for m in parts.into_iter().rev() {
                        pending.push(Block {
                            prefix: Vec::new(),
                            matrix: m,
                        });
                    }
                    continue;
                }
            }
            if b.matrix == Matrix::False || out.contains(&b) {
                continue;
            }
            out.push(b);
        }
        if out.is_empty() {
            out.push(Block {
                prefix: Vec::new(),
                matrix: Matrix::False,
            });
        }
        Self { blocks: out }
    }

    pub fn tautology() -> Self {
        Self {
            blocks: vec![Block {
                prefix: Vec::new(),
                matrix: Matrix::True,
            }],
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_canonical_tautology(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].prefix.is_empty() && self.blocks[0].is_true()
    }

    /// Longest quantifier prefix over all blocks.
    pub fn max_prefix(&self) -> usize {
        self.blocks.iter().map(|b| b.prefix.len()).max().unwrap_or(0)
    }
}

/// Desugars, moves negations inward and prenexes a closed formula.
pub fn prenex(formula: &Formula, sig: &FolSignature) -> Result<FolSentence> {
    let nnf = to_nnf(&desugar(formula), false);
    let mut disjuncts = Vec::new();
    split_or(nnf, &mut disjuncts);
    let mut blocks = Vec::new();
    for d in disjuncts {
        let mut prefix = Vec::new();
        let mut scope = Vec::new();
        let matrix = pull(&d, &mut scope, &mut prefix, sig)?;
        blocks.push(Block { prefix, matrix });
    }
    let s = FolSentence::from_blocks(blocks);
    check_sentence(sig, &s)?;
    Ok(s)
}

/// Removes `->` and `<->`.
fn desugar(f: &Formula) -> Formula {
    use Formula::*;
    let bx = |f: &Formula| Box::new(desugar(f));
    match f {
        True | False | Atom(..) => f.clone(),
        Not(a) => Not(bx(a)),
        And(a, b) => And(bx(a), bx(b)),
        Or(a, b) => Or(bx(a), bx(b)),
        Implies(a, b) => Or(Box::new(Not(bx(a))), bx(b)),
        Iff(a, b) => And(
            Box::new(Or(Box::new(Not(bx(a))), bx(b))),
            Box::new(Or(Box::new(Not(bx(b))), bx(a))),
        ),
        Quant(q, x, s, body) => Quant(*q, x.clone(), s.clone(), bx(body)),
    }
}

fn to_nnf(f: &Formula, negate: bool) -> Formula {
    use Formula::*;
    match (f, negate) {
        (True, false) | (False, true) => True,
        (True, true) | (False, false) => False,
        (Atom(..), false) => f.clone(),
        (Atom(..), true) => Not(Box::new(f.clone())),
        (Not(a), n) => to_nnf(a, !n),
        (And(a, b), false) => And(Box::new(to_nnf(a, false)), Box::new(to_nnf(b, false))),
        (And(a, b), true) => Or(Box::new(to_nnf(a, true)), Box::new(to_nnf(b, true))),
        (Or(a, b), false) => Or(Box::new(to_nnf(a, false)), Box::new(to_nnf(b, false))),
        (Or(a, b), true) => And(Box::new(to_nnf(a, true)), Box::new(to_nnf(b, true))),
        (Quant(q, x, s, body), n) => {
            let q = if n { q.dual() } else { *q };
            Quant(q, x.clone(), s.clone(), Box::new(to_nnf(body, n)))
        }
        (Implies(..) | Iff(..), _) => unreachable!("desugared"),
    }
}

fn split_or(f: Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Or(a, b) => {
            split_or(*a, out);
            split_or(*b, out);
        }
        other => out.push(other),
    }
}

/// Pulls quantifiers out of an NNF formula. Every bound variable gets the
/// next free index, so indices follow the pre-order of the quantifiers and
/// no capture can occur.
fn pull(
    f: &Formula,
    scope: &mut Vec<(Symbol, usize)>,
    prefix: &mut Vec<(Quant, Symbol)>,
    sig: &FolSignature,
) -> Result<Matrix> {
    use Formula as F;
    Ok(match f {
        F::True => Matrix::True,
        F::False => Matrix::False,
        F::Atom(p, args) => Matrix::Atom(
            p.clone(),
            args.iter()
                .map(|t| resolve_term(t, scope, sig))
                .collect::<Result<_>>()?,
        ),
        F::Not(a) => match pull(a, scope, prefix, sig)? {
            Matrix::True => Matrix::False,
            Matrix::False => Matrix::True,
            m => Matrix::Not(Box::new(m)),
        },
        F::And(a, b) => {
            let l = pull(a, scope, prefix, sig)?;
            let r = pull(b, scope, prefix, sig)?;
            Matrix::and(vec![l, r])
        }
        F::Or(a, b) => {
            let l = pull(a, scope, prefix, sig)?;
            let r = pull(b, scope, prefix, sig)?;
            Matrix::or(vec![l, r])
        }
        F::Quant(q, x, sort, body) => {
            let sort = match sort {
                Some(s) => {
                    if sig.sort_index(s).is_none() {
                        return Err(Error::UnknownSymbol {
                            symbol: s.to_string(),
                            context: "sort".into(),
                        });
                    }
                    s.clone()
                }
                None if sig.sorts.len() == 1 => sig.sorts[0].clone(),
                None => {
                    return Err(Error::Signature(format!(
                        "variable `{x}` needs a sort annotation"
                    )))
                }
            };
            let idx = prefix.len();
            prefix.push((*q, sort));
            scope.push((x.clone(), idx));
            let m = pull(body, scope, prefix, sig);
            scope.pop();
            m?
        }
        F::Implies(..) | F::Iff(..) => unreachable!("desugared"),
    })
}

fn resolve_term(t: &SurfaceTerm, scope: &[(Symbol, usize)], sig: &FolSignature) -> Result<Term> {
    match t {
        SurfaceTerm::Name(n) => {
            if let Some((_, i)) = scope.iter().rev().find(|(x, _)| x == n) {
                Ok(Term::Var(*i))
            } else if sig.func(n).is_some() {
                Ok(Term::App(n.clone(), Vec::new()))
            } else {
                Err(Error::UnknownSymbol {
                    symbol: n.to_string(),
                    context: "free variable or undeclared constant".into(),
                })
            }
        }
        SurfaceTerm::App(f, args) => Ok(Term::App(
            f.clone(),
            args.iter()
                .map(|a| resolve_term(a, scope, sig))
                .collect::<Result<_>>()?,
        )),
    }
}

/// Checks symbols, arities and sorts.
pub fn check_sentence(sig: &FolSignature, s: &FolSentence) -> Result<()> {
    for b in &s.blocks {
        let mut vars = Vec::new();
        for (_, sort) in &b.prefix {
            vars.push(sig.sort_index(sort).ok_or_else(|| Error::UnknownSymbol {
                symbol: sort.to_string(),
                context: "sort".into(),
            })?);
        }
        check_matrix(sig, &vars, &b.matrix)?;
    }
    Ok(())
}

fn check_matrix(sig: &FolSignature, vars: &[usize], m: &Matrix) -> Result<()> {
    match m {
        Matrix::True | Matrix::False => Ok(()),
        Matrix::Atom(p, args) => {
            let i = sig.pred(p).ok_or_else(|| Error::UnknownSymbol {
                symbol: p.to_string(),
                context: "predicate".into(),
            })?;
            check_args(sig, vars, &sig.preds[i].args, args, p)
        }
        Matrix::Not(a) => check_matrix(sig, vars, a),
        Matrix::And(ps) | Matrix::Or(ps) => ps.iter().try_for_each(|p| check_matrix(sig, vars, p)),
    }
}

fn check_args(
    sig: &FolSignature,
    vars: &[usize],
    expected: &[usize],
    args: &[Term],
    name: &str,
) -> Result<()> {
    if expected.len() != args.len() {
        return Err(Error::Signature(format!(
            "`{name}` takes {} arguments, got {}",
            expected.len(),
            args.len()
        )));
    }
    for (want, t) in expected.iter().zip(args) {
        let got = term_sort(sig, vars, t)?;
        if got != *want {
            return Err(Error::Signature(format!(
                "argument of `{name}` has sort `{}`, expected `{}`",
                sig.sorts[got], sig.sorts[*want]
            )));
        }
    }
    Ok(())
}

fn term_sort(sig: &FolSignature, vars: &[usize], t: &Term) -> Result<usize> {
    match t {
        Term::Var(i) => vars
            .get(*i)
            .copied()
            .ok_or_else(|| Error::Signature(format!("unbound variable x{i}"))),
        Term::App(f, args) => {
            let i = sig.func(f).ok_or_else(|| Error::UnknownSymbol {
                symbol: f.to_string(),
                context: "function".into(),
            })?;
            check_args(sig, vars, &sig.funcs[i].args, args, f)?;
            Ok(sig.funcs[i].result)
        }
    }
}

// ---------------------------------------------------------------------------
// Display.

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Matrix {
    /// Precedence: `|` 1, `&` 2, `!` and atoms 3.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        match self {
            Matrix::True => f.write_str("true"),
            Matrix::False => f.write_str("false"),
            Matrix::Atom(p, args) if &**p == "=" => write!(f, "{} = {}", args[0], args[1]),
            Matrix::Atom(p, args) => fmt::Display::fmt(&Term::App(p.clone(), args.clone()), f),
            Matrix::Not(a) => match &**a {
                Matrix::Atom(p, _) if &**p == "=" => write!(f, "!({a})"),
                _ => {
                    f.write_str("!")?;
                    a.fmt_prec(f, 3)
                }
            },
            Matrix::And(ps) | Matrix::Or(ps) => {
                let (prec, op) = if matches!(self, Matrix::And(_)) {
                    (2, " & ")
                } else {
                    (1, " | ")
                };
                if ctx > prec {
                    f.write_str("(")?;
                }
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    p.fmt_prec(f, prec + 1)?;
                }
                if ctx > prec {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, s)) in self.prefix.iter().enumerate() {
            write!(f, "{q} x{i}:{s}. ")?;
        }
        self.matrix.fmt(f)
    }
}

impl fmt::Display for FolSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.len() == 1 {
            return self.blocks[0].fmt(f);
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            if b.prefix.is_empty() {
                b.matrix.fmt_prec(f, 2)?;
            } else {
                write!(f, "({b})")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Structures.

/// A structure with carriers `{0, ..., n-1}` per sort. Function tables and
/// predicate extensions are indexed row-major over argument tuples.
#[derive(Clone, Debug)]
pub struct FolStructure {
    sig: Arc<FolSignature>,
    pub sizes: Vec<usize>,
    pub funcs: Vec<Vec<usize>>,
    pub preds: Vec<Vec<bool>>,
}

impl FolStructure {
    fn tuple_index(&self, args_sorts: &[usize], args: &[usize]) -> usize {
        args_sorts
            .iter()
            .zip(args)
            .fold(0, |acc, (s, a)| acc * self.sizes[*s] + a)
    }

    fn tuples(&self, args_sorts: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for s in args_sorts {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.sizes[*s]).map(move |e| {
                        let mut t = t.clone();
                        t.push(e);
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// Whether predicate `name` holds exactly on `tuples`.
    pub fn pred_is(&self, name: &str, tuples: &[&[usize]]) -> bool {
        let Some(p) = self.sig.pred(name) else {
            return false;
        };
        let args = &self.sig.preds[p].args;
        let mut want = vec![false; self.preds[p].len()];
        for t in tuples {
            if t.len() != args.len() || t.iter().zip(args).any(|(e, s)| *e >= self.sizes[*s]) {
                return false;
            }
            want[self.tuple_index(args, t)] = true;
        }
        want == self.preds[p]
    }
}

impl fmt::Display for FolStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (s, n) in self.sig.sorts.iter().zip(&self.sizes) {
            parts.push(format!("|{s}|={n}"));
        }
        let show = |t: &[usize]| {
            let inner: Vec<String> = t.iter().map(|e| e.to_string()).collect();
            format!("({})", inner.join(","))
        };
        for (d, table) in self.sig.funcs.iter().zip(&self.funcs) {
            let entries: Vec<String> = self
                .tuples(&d.args)
                .iter()
                .zip(table)
                .map(|(t, v)| if t.is_empty() { v.to_string() } else { format!("{}->{v}", show(t)) })
                .collect();
            parts.push(format!("{}:[{}]", d.name, entries.join(",")));
        }
        for (d, ext) in self.sig.preds.iter().zip(&self.preds) {
            let entries: Vec<String> = self
                .tuples(&d.args)
                .iter()
                .zip(ext)
                .filter(|(_, b)| **b)
                .map(|(t, _)| show(t))
                .collect();
            parts.push(format!("{}:{{{}}}", d.name, entries.join(",")));
        }
        f.write_str(&parts.join(" "))
    }
}

/// One carrier-size assignment and the index range it covers.
#[derive(Clone, Debug)]
struct SizeBlock {
    sizes: Vec<usize>,
    start: usize,
    /// Radix of every table digit, functions first, most significant first.
    radices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FolSystem {
    sig: Arc<FolSignature>,
    bound: usize,
    blocks: Vec<SizeBlock>,
    count: usize,
}

impl FolSystem {
    pub fn new(sig: FolSignature, bound: usize) -> Result<Self> {
        Self::with_ceiling(sig, bound, MODEL_CEILING)
    }

    pub fn with_ceiling(sig: FolSignature, bound: usize, ceiling: u128) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidBound(0));
        }
        let mut size_vectors: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in &sig.sorts {
            size_vectors = size_vectors
                .into_iter()
                .flat_map(|v| {
                    (1..=bound).map(move |n| {
                        let mut v = v.clone();
                        v.push(n);
                        v
                    })
                })
                .collect();
        }
        let mut blocks = Vec::new();
        let mut total: u128 = 0;
        for sizes in size_vectors {
            let tuples = |args: &[usize]| -> u128 {
                args.iter().map(|s| sizes[*s] as u128).product()
            };
            let mut radices = Vec::new();
            let mut count: u128 = 1;
            for fd in &sig.funcs {
                let n = tuples(&fd.args);
                let r = sizes[fd.result];
                if n > 64 {
                    return Err(Error::SpaceTooLarge { count: u128::MAX, ceiling });
                }
                for _ in 0..n {
                    radices.push(r);
                    count = count.saturating_mul(r as u128);
                }
            }
            for pd in &sig.preds {
                let n = tuples(&pd.args);
                if n > 64 {
                    return Err(Error::SpaceTooLarge { count: u128::MAX, ceiling });
                }
                for _ in 0..n {
                    radices.push(2);
                }
                count = count.saturating_mul(1u128 << n);
            }
            blocks.push(SizeBlock {
                sizes,
                start: total as usize,
                radices,
            });
            total = total.saturating_add(count);
            if total > ceiling {
                return Err(Error::SpaceTooLarge { count: total, ceiling });
            }
        }
        Ok(Self {
            sig: Arc::new(sig),
            bound,
            blocks,
            count: total as usize,
        })
    }

    pub fn signature(&self) -> &FolSignature {
        &self.sig
    }

    fn decode(&self, index: usize) -> FolStructure {
        let b = self
            .blocks
            .iter()
            .rev()
            .find(|b| b.start <= index)
            .expect("index in range");
        let mut digits = vec![0; b.radices.len()];
        let mut r = index - b.start;
        for (d, radix) in digits.iter_mut().zip(&b.radices).rev() {
            *d = r % radix;
            r /= radix;
        }
        let mut it = digits.into_iter();
        let n = |args: &[usize]| args.iter().map(|s| b.sizes[*s]).product::<usize>();
        let funcs = self
            .sig
            .funcs
            .iter()
            .map(|fd| it.by_ref().take(n(&fd.args)).collect())
            .collect();
        let preds = self
            .sig
            .preds
            .iter()
            .map(|pd| it.by_ref().take(n(&pd.args)).map(|d| d == 1).collect())
            .collect();
        FolStructure {
            sig: Arc::clone(&self.sig),
            sizes: b.sizes.clone(),
            funcs,
            preds,
        }
    }

    fn compile(&self, s: &FolSentence) -> Vec<CBlock> {
        s.blocks
            .iter()
            .map(|b| CBlock {
                prefix: b
                    .prefix
                    .iter()
                    .map(|(q, s)| (*q, self.sig.sort_index(s).expect("checked sentence")))
                    .collect(),
                matrix: self.compile_matrix(&b.matrix),
            })
            .collect()
    }

    fn compile_matrix(&self, m: &Matrix) -> CMatrix {
        match m {
            Matrix::True => CMatrix::Const(true),
            Matrix::False => CMatrix::Const(false),
            Matrix::Atom(p, args) => {
                let i = self.sig.pred(p).expect("checked sentence");
                CMatrix::Atom(i, args.iter().map(|t| self.compile_term(t)).collect())
            }
            Matrix::Not(a) => CMatrix::Not(Box::new(self.compile_matrix(a))),
            Matrix::And(ps) => CMatrix::And(ps.iter().map(|p| self.compile_matrix(p)).collect()),
            Matrix::Or(ps) => CMatrix::Or(ps.iter().map(|p| self.compile_matrix(p)).collect()),
        }
    }

    fn compile_term(&self, t: &Term) -> CTerm {
        match t {
            Term::Var(i) => CTerm::Var(*i),
            Term::App(f, args) => CTerm::App(
                self.sig.func(f).expect("checked sentence"),
                args.iter().map(|a| self.compile_term(a)).collect(),
            ),
        }
    }
}

enum CTerm {
    Var(usize),
    App(usize, Vec<CTerm>),
}

enum CMatrix {
    Const(bool),
    Atom(usize, Vec<CTerm>),
    Not(Box<CMatrix>),
    And(Vec<CMatrix>),
    Or(Vec<CMatrix>),
}

struct CBlock {
    prefix: Vec<(Quant, usize)>,
    matrix: CMatrix,
}

fn eval_term(m: &FolStructure, env: &[usize], t: &CTerm) -> usize {
    match t {
        CTerm::Var(i) => env[*i],
        CTerm::App(f, args) => {
            let vals: Vec<usize> = args.iter().map(|a| eval_term(m, env, a)).collect();
            let idx = m.tuple_index(&m.sig.funcs[*f].args, &vals);
            m.funcs[*f][idx]
        }
    }
}

fn eval_matrix(m: &FolStructure, env: &[usize], c: &CMatrix) -> bool {
    match c {
        CMatrix::Const(b) => *b,
        CMatrix::Atom(p, args) => {
            let vals: Vec<usize> = args.iter().map(|a| eval_term(m, env, a)).collect();
            m.preds[*p][m.tuple_index(&m.sig.preds[*p].args, &vals)]
        }
        CMatrix::Not(a) => !eval_matrix(m, env, a),
        CMatrix::And(ps) => ps.iter().all(|p| eval_matrix(m, env, p)),
        CMatrix::Or(ps) => ps.iter().any(|p| eval_matrix(m, env, p)),
    }
}

fn eval_block(m: &FolStructure, b: &CBlock, env: &mut Vec<usize>) -> bool {
    let depth = env.len();
    if depth == b.prefix.len() {
        return eval_matrix(m, env, &b.matrix);
    }
    let (q, sort) = b.prefix[depth];
    let mut result = q == Quant::Forall;
    for e in 0..m.sizes[sort] {
        env.push(e);
        let v = eval_block(m, b, env);
        env.pop();
        if v != result {
            result = v;
            break;
        }
    }
    result
}

fn eval_compiled(m: &FolStructure, blocks: &[CBlock]) -> bool {
    let mut env = Vec::new();
    blocks.iter().any(|b| eval_block(m, b, &mut env))
}

/// Direct recursive evaluation of a surface formula, with variables bound
/// by name. Independent of [`prenex`]; tests use it as an oracle.
pub fn eval_formula(m: &FolStructure, f: &Formula) -> Result<bool> {
    fn term(m: &FolStructure, env: &HashMap<Symbol, usize>, t: &SurfaceTerm) -> Result<usize> {
        let (name, args): (&Symbol, &[SurfaceTerm]) = match t {
            SurfaceTerm::Name(n) => {
                if let Some(v) = env.get(n) {
                    return Ok(*v);
                }
                (n, &[])
            }
            SurfaceTerm::App(n, args) => (n, args),
        };
        let fi = m.sig.func(name).ok_or_else(|| Error::UnknownSymbol {
            symbol: name.to_string(),
            context: "function".into(),
        })?;
        let vals = args.iter().map(|a| term(m, env, a)).collect::<Result<Vec<_>>>()?;
        Ok(m.funcs[fi][m.tuple_index(&m.sig.funcs[fi].args, &vals)])
    }
    fn go(m: &FolStructure, env: &mut HashMap<Symbol, usize>, f: &Formula) -> Result<bool> {
        use Formula as F;
        Ok(match f {
            F::True => true,
            F::False => false,
            F::Atom(p, args) => {
                let pi = m.sig.pred(p).ok_or_else(|| Error::UnknownSymbol {
                    symbol: p.to_string(),
                    context: "predicate".into(),
                })?;
                let vals = args.iter().map(|a| term(m, env, a)).collect::<Result<Vec<_>>>()?;
                m.preds[pi][m.tuple_index(&m.sig.preds[pi].args, &vals)]
            }
            F::Not(a) => !go(m, env, a)?,
            F::And(a, b) => go(m, env, a)? && go(m, env, b)?,
            F::Or(a, b) => go(m, env, a)? || go(m, env, b)?,
            F::Implies(a, b) => !go(m, env, a)? || go(m, env, b)?,
            F::Iff(a, b) => go(m, env, a)? == go(m, env, b)?,
            F::Quant(q, x, sort, body) => {
                let s = match sort {
                    Some(s) => m.sig.sort_index(s).ok_or_else(|| Error::UnknownSymbol {
                        symbol: s.to_string(),
                        context: "sort".into(),
                    })?,
                    None => 0,
                };
                let saved = env.get(x).copied();
                let mut result = *q == Quant::Forall;
                for e in 0..m.sizes[s] {
                    env.insert(x.clone(), e);
                    let v = go(m, env, body)?;
                    if v != result {
                        result = v;
                        break;
                    }
                }
                match saved {
                    Some(v) => env.insert(x.clone(), v),
                    None => env.remove(x),
                };
                result
            }
        })
    }
    go(m, &mut HashMap::new(), f)
}

impl SatisfactionSystem for FolSystem {
    type Sentence = FolSentence;
    type Model = FolStructure;

    fn logic(&self) -> LogicTag {
        LogicTag::Fol
    }

    fn model_count(&self) -> usize {
        self.count
    }

    fn model(&self, index: usize) -> FolStructure {
        self.decode(index)
    }

    fn satisfies(&self, model: &FolStructure, sentence: &FolSentence) -> bool {
        eval_compiled(model, &self.compile(sentence))
    }

    fn check_sentence(&self, sentence: &FolSentence) -> Result<()> {
        check_sentence(&self.sig, sentence)
    }

    fn trivial_models(&self) -> ModelSet {
        ModelSet::empty(self.count)
    }

    fn tautology(&self) -> FolSentence {
        FolSentence::tautology()
    }

    fn bound(&self) -> Option<usize> {
        Some(self.bound)
    }

    fn sentence_models(&self, sentence: &FolSentence) -> ModelSet {
        let blocks = self.compile(sentence);
        let hits: Vec<usize> = (0..self.count)
            .into_par_iter()
            .filter(|&i| eval_compiled(&self.decode(i), &blocks))
            .collect();
        ModelSet::from_indices(self.count, hits)
    }
}

/// Turns one universal quantifier into an existential one, in every
/// possible position, and takes the disjunction. Blocks without universal
/// quantifiers relax to `true`.
#[derive(Debug, Clone, Copy, Default)]
pub struct QuantifierRelaxation;

pub fn relax_quantifiers(s: &FolSentence) -> FolSentence {
    let mut out = Vec::new();
    for b in &s.blocks {
        let positions = b.universal_positions();
        if b.is_true() || positions.is_empty() {
            return FolSentence::tautology();
        }
        for i in positions {
            let mut flipped = b.clone();
            flipped.prefix[i].0 = Quant::Exists;
            out.push(flipped);
        }
    }
    FolSentence::from_blocks(out)
}

impl Relaxation<FolSystem> for QuantifierRelaxation {
    fn name(&self) -> &str {
        "quantifier"
    }

    fn relax(&self, _sem: &Semantics<FolSystem>, sentence: &FolSentence) -> Result<FolSentence> {
        Ok(relax_quantifiers(sentence))
    }
}
