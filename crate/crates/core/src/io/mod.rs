//! Knowledge-base documents: a `key: value` header, a `---` line, then the
//! sentences in the grammar of the declared logic.
//!
//! ```text
//! logic: dl
//! concepts: bird, flies
//! individuals: Tweety
//! ---
//! Tweety [= bird
//! bird [= flies
//! ```
//!
//! [`serialize`] prints the canonical form, which [`parse`] reads back to
//! the same document.

mod lexer;
mod syntax;

pub use syntax::{
    parse_axiom, parse_axiom_at, parse_concept, parse_concept_at, parse_fol, parse_fol_at,
    parse_horn_clause_at, parse_pl, parse_pl_at,
};

use crate::dl::{Axiom, Concept, DlSignature, DlSystem, Fragment};
use crate::error::{Error, Result};
use crate::fol::{prenex, FolSentence, FolSignature, FolSystem};
use crate::horn::{HornSentence, HornSystem};
use crate::pl::{PlFormula, PlSignature, PlSystem, Symbol};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Logic {
    Pl,
    Horn,
    Fol,
    Dl,
}

impl Logic {
    pub fn keyword(self) -> &'static str {
        match self {
            Logic::Pl => "pl",
            Logic::Horn => "horn",
            Logic::Fol => "fol",
            Logic::Dl => "dl",
        }
    }
}

impl std::str::FromStr for Logic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pl" => Ok(Logic::Pl),
            "horn" => Ok(Logic::Horn),
            "fol" => Ok(Logic::Fol),
            "dl" => Ok(Logic::Dl),
            other => Err(Error::Config(format!(
                "unknown logic `{other}` (expected pl, horn, fol or dl)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Meta {
    pub name: Option<String>,
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlDoc {
    pub meta: Meta,
    pub signature: PlSignature,
    pub sentences: Vec<PlFormula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornDoc {
    pub meta: Meta,
    pub signature: PlSignature,
    pub sentences: Vec<HornSentence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolDoc {
    pub meta: Meta,
    pub signature: FolSignature,
    pub sentences: Vec<FolSentence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlDoc {
    pub meta: Meta,
    pub signature: DlSignature,
    pub fragment: Fragment,
    pub empty_domain: bool,
    /// Ordered; operators pick exceptions in this order.
    pub exceptions: Vec<Concept>,
    pub axioms: Vec<Axiom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Pl(PlDoc),
    Horn(HornDoc),
    Fol(FolDoc),
    Dl(DlDoc),
}

impl Document {
    pub fn logic(&self) -> Logic {
        match self {
            Document::Pl(_) => Logic::Pl,
            Document::Horn(_) => Logic::Horn,
            Document::Fol(_) => Logic::Fol,
            Document::Dl(_) => Logic::Dl,
        }
    }

    pub fn meta(&self) -> &Meta {
        match self {
            Document::Pl(d) => &d.meta,
            Document::Horn(d) => &d.meta,
            Document::Fol(d) => &d.meta,
            Document::Dl(d) => &d.meta,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Document::Pl(d) => d.sentences.len(),
            Document::Horn(d) => d.sentences.len(),
            Document::Fol(d) => d.sentences.len(),
            Document::Dl(d) => d.axioms.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Default enumeration bound for FOL and DL when neither the caller nor
/// the document sets one.
pub const DEFAULT_BOUND: usize = 3;

impl PlDoc {
    pub fn system(&self) -> PlSystem {
        PlSystem::new(self.signature.clone())
    }
}

impl HornDoc {
    pub fn system(&self) -> HornSystem {
        HornSystem::new(self.signature.clone())
    }
}

impl FolDoc {
    pub fn system(&self, bound: Option<usize>) -> Result<FolSystem> {
        FolSystem::new(
            self.signature.clone(),
            bound.or(self.meta.bound).unwrap_or(DEFAULT_BOUND),
        )
    }
}

impl DlDoc {
    pub fn system(&self, bound: Option<usize>) -> Result<DlSystem> {
        DlSystem::new(
            self.signature.clone(),
            self.fragment,
            bound.or(self.meta.bound).unwrap_or(DEFAULT_BOUND),
            self.empty_domain,
        )
    }
}

// ---------------------------------------------------------------------------
// Header.

struct HeaderLine {
    key: String,
    value: String,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Splits on `sep` outside parentheses, keeping each piece's offset.
fn split_top(value: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in value.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &value[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &value[start..]));
    out.into_iter().filter(|(_, s)| !s.trim().is_empty()).collect()
}

struct Header {
    lines: Vec<HeaderLine>,
    used: Vec<bool>,
}

impl Header {
    fn take(&mut self, key: &str) -> Option<&HeaderLine> {
        let i = self.lines.iter().position(|h| h.key == key)?;
        self.used[i] = true;
        Some(&self.lines[i])
    }

    fn value(&mut self, key: &str) -> Option<String> {
        self.take(key).map(|h| h.value.clone())
    }

    fn reject_unused(&self, logic: Logic) -> Result<()> {
        for (h, used) in self.lines.iter().zip(&self.used) {
            if !used {
                return Err(syntax(
                    h.line,
                    h.column,
                    format!("key `{}` does not apply to {} documents", h.key, logic.keyword()),
                ));
            }
        }
        Ok(())
    }
}

const KEYS: [&str; 13] = [
    "logic",
    "name",
    "bound",
    "atoms",
    "sorts",
    "funcs",
    "preds",
    "concepts",
    "roles",
    "individuals",
    "exceptions",
    "fragment",
    "empty_domain",
];

/// Header lines, the body lines with their numbers.
fn split_document(text: &str) -> Result<(Header, Vec<(usize, &str)>)> {
    let mut lines = Vec::new();
    let mut body = None;
    let all: Vec<&str> = text.lines().collect();
    for (i, raw) in all.iter().enumerate() {
        let n = i + 1;
        let trimmed = raw.trim();
        if trimmed == "---" {
            body = Some(i + 1);
            break;
        }
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, _)) = raw.split_once(':') else {
            return Err(syntax(n, 1, "expected `key: value` or `---`"));
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(syntax(n, 1, format!("unknown header key `{key}`")));
        }
        if lines.iter().any(|h: &HeaderLine| h.key == key) {
            return Err(syntax(n, 1, format!("header key `{key}` given twice")));
        }
        let offset = raw.len() - raw.trim_start().len();
        let vstart = key.len() + offset + 1;
        let value_raw = &raw[raw.find(':').expect("split") + 1..];
        let lead = value_raw.len() - value_raw.trim_start().len();
        lines.push(HeaderLine {
            key: key.to_string(),
            value: value_raw.trim().to_string(),
            line: n,
            column: vstart + lead + 1,
        });
    }
    let Some(start) = body else {
        return Err(syntax(all.len().max(1), 1, "missing `---` line after the header"));
    };
    let used = vec![false; lines.len()];
    let body = all[start..]
        .iter()
        .enumerate()
        .map(|(i, l)| (start + i + 1, *l))
        .collect();
    Ok((Header { lines, used }, body))
}

fn parse_meta(h: &mut Header) -> Result<Meta> {
    let name = h.value("name").filter(|s| !s.is_empty());
    let bound = match h.take("bound") {
        None => None,
        Some(b) => Some(
            b.value
                .parse::<usize>()
                .map_err(|_| syntax(b.line, b.column, "bound must be a non-negative integer"))?,
        ),
    };
    Ok(Meta { name, bound })
}

/// Body lines with comments and surrounding blanks removed.
fn content(line: &str) -> (&str, usize) {
    let no_comment = line.split('#').next().unwrap_or("");
    let lead = no_comment.len() - no_comment.trim_start().len();
    (no_comment.trim(), lead + 1)
}

/// Rejects a sentence whose canonical print does not read back to it.
fn check_reparse<T: PartialEq + std::fmt::Display>(
    value: &T,
    line: usize,
    reparse: impl Fn(&str) -> Result<T>,
) -> Result<()> {
    let shown = value.to_string();
    match reparse(&shown) {
        Ok(back) if back == *value => Ok(()),
        _ => Err(syntax(
            line,
            1,
            format!("sentence has no stable canonical form (prints as `{shown}`)"),
        )),
    }
}

fn with_line(e: Error, line: usize) -> Error {
    match e {
        Error::UnknownSymbol { symbol, context } => Error::UnknownSymbol {
            symbol,
            context: format!("{context} (line {line})"),
        },
        Error::Signature(m) => Error::Signature(format!("{m} (line {line})")),
        other => other,
    }
}

// ---------------------------------------------------------------------------
// Per-logic bodies.

fn pl_signature(declared: Option<String>, seen: &[Symbol], h_line: usize) -> Result<PlSignature> {
    match declared {
        Some(v) => PlSignature::new(list(&v)).map_err(|e| with_line(e, h_line)),
        None => {
            if seen.is_empty() {
                return Err(Error::Signature(
                    "no atoms declared and none used in the sentences".into(),
                ));
            }
            PlSignature::new(seen.iter().map(|s| &**s))
        }
    }
}

fn parse_pl_doc(mut h: Header, body: Vec<(usize, &str)>) -> Result<PlDoc> {
    let meta = parse_meta(&mut h)?;
    let atoms_line = h.take("atoms").map(|a| a.line).unwrap_or(0);
    let declared = h.lines.iter().find(|l| l.key == "atoms").map(|l| l.value.clone());
    h.reject_unused(Logic::Pl)?;
    let mut sentences = Vec::new();
    let mut lines = Vec::new();
    let mut seen = Vec::new();
    for (n, raw) in body {
        let (text, col) = content(raw);
        if text.is_empty() {
            continue;
        }
        let f = parse_pl_at(text, n, col)?;
        f.atoms(&mut seen);
        check_reparse(&f, n, parse_pl)?;
        sentences.push(f);
        lines.push(n);
    }
    let signature = pl_signature(declared, &seen, atoms_line)?;
    for (f, n) in sentences.iter().zip(&lines) {
        let mut used = Vec::new();
        f.atoms(&mut used);
        for a in used {
            if signature.position(&a).is_none() {
                return Err(Error::UnknownSymbol {
                    symbol: a.to_string(),
                    context: format!("atom (line {n})"),
                });
            }
        }
    }
    Ok(PlDoc {
        meta,
        signature,
        sentences,
    })
}

/// Blank lines separate sentences; each line holds one or more clauses
/// separated by `;`.
fn parse_horn_doc(mut h: Header, body: Vec<(usize, &str)>) -> Result<HornDoc> {
    let meta = parse_meta(&mut h)?;
    let atoms_line = h.take("atoms").map(|a| a.line).unwrap_or(0);
    let declared = h.lines.iter().find(|l| l.key == "atoms").map(|l| l.value.clone());
    h.reject_unused(Logic::Horn)?;
    let mut sentences: Vec<(usize, HornSentence)> = Vec::new();
    let mut current = Vec::new();
    let mut start = 0;
    let mut seen: Vec<Symbol> = Vec::new();
    let flush = |current: &mut Vec<_>, start: usize, out: &mut Vec<(usize, HornSentence)>| {
        if !current.is_empty() {
            out.push((start, HornSentence::new(current.drain(..))));
        }
    };
    for (n, raw) in body {
        let (text, col) = content(raw);
        if text.is_empty() {
            if raw.trim().is_empty() {
                flush(&mut current, start, &mut sentences);
            }
            continue;
        }
        if current.is_empty() {
            start = n;
        }
        for (off, piece) in split_top(text, ';') {
            let lead = piece.len() - piece.trim_start().len();
            let clause = parse_horn_clause_at(piece.trim(), n, col + off + lead)?;
            for a in clause.body.iter().chain(std::iter::once(&clause.head)) {
                if !seen.contains(a) {
                    seen.push(a.clone());
                }
            }
            current.push(clause);
        }
    }
    flush(&mut current, start, &mut sentences);
    let signature = pl_signature(declared, &seen, atoms_line)?;
    let sys = HornSystem::new(signature.clone());
    for (n, s) in &sentences {
        crate::satsys::SatisfactionSystem::check_sentence(&sys, s).map_err(|e| with_line(e, *n))?;
    }
    Ok(HornDoc {
        meta,
        signature,
        sentences: sentences.into_iter().map(|(_, s)| s).collect(),
    })
}

/// `c() -> s; f(s, s) -> s`. A bare `c -> s` is a constant too.
fn parse_funcs(h: &HeaderLine) -> Result<Vec<(String, Vec<String>, String)>> {
    let mut out = Vec::new();
    for (off, piece) in split_top(&h.value, ';') {
        let bad = || syntax(h.line, h.column + off, format!("bad function declaration `{}`", piece.trim()));
        let (lhs, result) = piece.rsplit_once("->").ok_or_else(bad)?;
        let (name, args) = split_decl(lhs).ok_or_else(bad)?;
        out.push((name, args, result.trim().to_string()));
    }
    Ok(out)
}

/// `=(s, s); P(s); Q`.
fn parse_preds(h: &HeaderLine) -> Result<Vec<(String, Vec<String>)>> {
    let mut out = Vec::new();
    for (off, piece) in split_top(&h.value, ';') {
        let (name, args) = split_decl(piece).ok_or_else(|| {
            syntax(h.line, h.column + off, format!("bad predicate declaration `{}`", piece.trim()))
        })?;
        out.push((name, args));
    }
    Ok(out)
}

fn split_decl(text: &str) -> Option<(String, Vec<String>)> {
    let text = text.trim();
    match text.split_once('(') {
        None => Some((text.to_string(), Vec::new())),
        Some((name, rest)) => {
            let inner = rest.trim_end().strip_suffix(')')?;
            Some((name.trim().to_string(), list(inner)))
        }
    }
}

fn parse_fol_doc(mut h: Header, body: Vec<(usize, &str)>) -> Result<FolDoc> {
    let meta = parse_meta(&mut h)?;
    let sorts = h
        .value("sorts")
        .ok_or_else(|| Error::Signature("fol documents need a `sorts:` line".into()))?;
    let funcs = match h.take("funcs") {
        Some(l) => parse_funcs(l)?,
        None => Vec::new(),
    };
    let preds = match h.take("preds") {
        Some(l) => parse_preds(l)?,
        None => Vec::new(),
    };
    h.reject_unused(Logic::Fol)?;
    let sorts = list(&sorts);
    let sort_refs: Vec<&str> = sorts.iter().map(String::as_str).collect();
    let func_args: Vec<Vec<&str>> = funcs
        .iter()
        .map(|(_, a, _)| a.iter().map(String::as_str).collect())
        .collect();
    let func_refs: Vec<(&str, &[&str], &str)> = funcs
        .iter()
        .zip(&func_args)
        .map(|((n, _, r), a)| (n.as_str(), a.as_slice(), r.as_str()))
        .collect();
    let pred_args: Vec<Vec<&str>> = preds
        .iter()
        .map(|(_, a)| a.iter().map(String::as_str).collect())
        .collect();
    let pred_refs: Vec<(&str, &[&str])> = preds
        .iter()
        .zip(&pred_args)
        .map(|((n, _), a)| (n.as_str(), a.as_slice()))
        .collect();
    let signature = FolSignature::new(&sort_refs, &func_refs, &pred_refs)?;
    let mut sentences = Vec::new();
    for (n, raw) in body {
        let (text, col) = content(raw);
        if text.is_empty() {
            continue;
        }
        let f = parse_fol_at(text, n, col)?;
        let s = prenex(&f, &signature).map_err(|e| with_line(e, n))?;
        check_reparse(&s, n, |t| prenex(&parse_fol(t)?, &signature))?;
        sentences.push(s);
    }
    Ok(FolDoc {
        meta,
        signature,
        sentences,
    })
}

fn parse_dl_doc(mut h: Header, body: Vec<(usize, &str)>) -> Result<DlDoc> {
    let meta = parse_meta(&mut h)?;
    let concepts = list(&h.value("concepts").unwrap_or_default());
    let roles = list(&h.value("roles").unwrap_or_default());
    let individuals = list(&h.value("individuals").unwrap_or_default());
    let signature = DlSignature::new(&concepts, &roles, &individuals)?;
    let declared_fragment = match h.take("fragment") {
        None => None,
        Some(l) => Some(
            l.value
                .parse::<Fragment>()
                .map_err(|_| syntax(l.line, l.column, "fragment must be EL, ELU or ALC"))?,
        ),
    };
    let empty_domain = match h.take("empty_domain") {
        None => false,
        Some(l) => match l.value.as_str() {
            "true" => true,
            "false" => false,
            _ => return Err(syntax(l.line, l.column, "empty_domain must be true or false")),
        },
    };
    let mut exceptions = Vec::new();
    if let Some(l) = h.take("exceptions") {
        for (off, piece) in split_top(&l.value, ',') {
            let lead = piece.len() - piece.trim_start().len();
            let c = parse_concept_at(piece.trim(), l.line, l.column + off + lead)?;
            signature.check_concept(&c).map_err(|e| with_line(e, l.line))?;
            exceptions.push(c);
        }
    }
    h.reject_unused(Logic::Dl)?;
    let mut axioms = Vec::new();
    let mut lines = Vec::new();
    for (n, raw) in body {
        let (text, col) = content(raw);
        if text.is_empty() {
            continue;
        }
        let ax = parse_axiom_at(text, n, col)?;
        signature.check_axiom(&ax).map_err(|e| with_line(e, n))?;
        check_reparse(&ax, n, parse_axiom)?;
        axioms.push(ax);
        lines.push(n);
    }
    let used = axioms
        .iter()
        .map(Axiom::fragment)
        .chain(exceptions.iter().map(Concept::fragment))
        .max()
        .unwrap_or(Fragment::El);
    let fragment = declared_fragment.unwrap_or(used);
    for (ax, n) in axioms.iter().zip(&lines) {
        if ax.fragment() > fragment {
            return Err(Error::Fragment {
                operation: format!("axiom on line {n}"),
                required: ax.fragment().to_string(),
                found: fragment.to_string(),
            });
        }
    }
    Ok(DlDoc {
        meta,
        signature,
        fragment,
        empty_domain,
        exceptions,
        axioms,
    })
}

/// Parses a document in any of the four logics.
pub fn parse(text: &str) -> Result<Document> {
    let (mut header, body) = split_document(text)?;
    let logic_line = header
        .take("logic")
        .ok_or_else(|| syntax(1, 1, "missing `logic:` header line"))?;
    let (ll, lc) = (logic_line.line, logic_line.column);
    let logic: Logic = logic_line
        .value
        .parse()
        .map_err(|_| syntax(ll, lc, "logic must be pl, horn, fol or dl"))?;
    Ok(match logic {
        Logic::Pl => Document::Pl(parse_pl_doc(header, body)?),
        Logic::Horn => Document::Horn(parse_horn_doc(header, body)?),
        Logic::Fol => Document::Fol(parse_fol_doc(header, body)?),
        Logic::Dl => Document::Dl(parse_dl_doc(header, body)?),
    })
}

// ---------------------------------------------------------------------------
// Serialization.

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn write_meta(out: &mut String, logic: Logic, meta: &Meta) {
    let _ = writeln!(out, "logic: {}", logic.keyword());
    if let Some(n) = &meta.name {
        let _ = writeln!(out, "name: {n}");
    }
    if let Some(b) = meta.bound {
        let _ = writeln!(out, "bound: {b}");
    }
}

/// The canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    write_meta(&mut out, doc.logic(), doc.meta());
    match doc {
        Document::Pl(d) => {
            let _ = writeln!(out, "atoms: {}", join(d.signature.atoms().iter(), ", "));
            out.push_str("---\n");
            for s in &d.sentences {
                let _ = writeln!(out, "{s}");
            }
        }
        Document::Horn(d) => {
            let _ = writeln!(out, "atoms: {}", join(d.signature.atoms().iter(), ", "));
            out.push_str("---\n");
            for (i, s) in d.sentences.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                for c in s.clauses() {
                    let _ = writeln!(out, "{c}");
                }
            }
        }
        Document::Fol(d) => {
            let sig = &d.signature;
            let sort = |i: &usize| sig.sorts()[*i].clone();
            let _ = writeln!(out, "sorts: {}", join(sig.sorts().iter(), ", "));
            if !sig.funcs().is_empty() {
                let funcs = sig.funcs().iter().map(|f| {
                    format!("{}({}) -> {}", f.name, join(f.args.iter().map(sort), ", "), sort(&f.result))
                });
                let _ = writeln!(out, "funcs: {}", join(funcs, "; "));
            }
            if !sig.preds().is_empty() {
                let preds = sig.preds().iter().map(|p| {
                    if p.args.is_empty() {
                        p.name.to_string()
                    } else {
                        format!("{}({})", p.name, join(p.args.iter().map(sort), ", "))
                    }
                });
                let _ = writeln!(out, "preds: {}", join(preds, "; "));
            }
            out.push_str("---\n");
            for s in &d.sentences {
                let _ = writeln!(out, "{s}");
            }
        }
        Document::Dl(d) => {
            let sig = &d.signature;
            let _ = writeln!(out, "fragment: {}", d.fragment);
            let _ = writeln!(out, "concepts: {}", join(sig.concepts().iter(), ", "));
            if !sig.roles().is_empty() {
                let _ = writeln!(out, "roles: {}", join(sig.roles().iter(), ", "));
            }
            if !sig.individuals().is_empty() {
                let _ = writeln!(out, "individuals: {}", join(sig.individuals().iter(), ", "));
            }
            if !d.exceptions.is_empty() {
                let _ = writeln!(out, "exceptions: {}", join(d.exceptions.iter(), ", "));
            }
            if d.empty_domain {
                out.push_str("empty_domain: true\n");
            }
            out.push_str("---\n");
            for ax in &d.axioms {
                let _ = writeln!(out, "{ax}");
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Two documents over one signature.

fn union_names(a: &[Symbol], b: &[Symbol]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().map(|s| s.to_string()).collect();
    for s in b {
        if !out.iter().any(|o| o == &**s) {
            out.push(s.to_string());
        }
    }
    out
}

/// Rewrites both documents over the union of their signatures so that
/// they can be compared and revised. FOL signatures must agree exactly.
pub fn unify(a: &Document, b: &Document) -> Result<(Document, Document)> {
    match (a, b) {
        (Document::Pl(x), Document::Pl(y)) => {
            let sig = x.signature.merge(&y.signature)?;
            Ok((
                Document::Pl(PlDoc { signature: sig.clone(), ..x.clone() }),
                Document::Pl(PlDoc { signature: sig, ..y.clone() }),
            ))
        }
        (Document::Horn(x), Document::Horn(y)) => {
            let sig = x.signature.merge(&y.signature)?;
            Ok((
                Document::Horn(HornDoc { signature: sig.clone(), ..x.clone() }),
                Document::Horn(HornDoc { signature: sig, ..y.clone() }),
            ))
        }
        (Document::Fol(x), Document::Fol(y)) => {
            if x.signature != y.signature {
                return Err(Error::Signature(
                    "both fol documents must declare the same signature".into(),
                ));
            }
            Ok((a.clone(), b.clone()))
        }
        (Document::Dl(x), Document::Dl(y)) => {
            let (xs, ys) = (&x.signature, &y.signature);
            let sig = DlSignature::new(
                &union_names(xs.concepts(), ys.concepts()),
                &union_names(xs.roles(), ys.roles()),
                &union_names(xs.individuals(), ys.individuals()),
            )?;
            let fragment = x.fragment.max(y.fragment);
            let mut exceptions = x.exceptions.clone();
            for e in &y.exceptions {
                if !exceptions.contains(e) {
                    exceptions.push(e.clone());
                }
            }
            let empty_domain = x.empty_domain && y.empty_domain;
            let rebuild = |d: &DlDoc| {
                Document::Dl(DlDoc {
                    signature: sig.clone(),
                    fragment,
                    empty_domain,
                    exceptions: exceptions.clone(),
                    ..d.clone()
                })
            };
            Ok((rebuild(x), rebuild(y)))
        }
        _ => Err(Error::Config(format!(
            "documents use different logics ({} and {})",
            a.logic().keyword(),
            b.logic().keyword()
        ))),
    }
}
