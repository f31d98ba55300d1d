//! Recursive-descent grammars for the sentences of each logic.

use super::lexer::{Parser, Tok};
use crate::dl::{is_name, Axiom, Concept};
use crate::error::{Error, Result};
use crate::fol::{Formula, Quant, SurfaceTerm};
use crate::horn::HornClause;
use crate::pl::{is_atom_name, PlFormula};
use std::sync::Arc;

fn pl_atom(p: &mut Parser) -> Result<PlFormula> {
    let (line, column) = p.here();
    let name = p.ident("an atom")?;
    if !is_atom_name(&name) {
        return Err(Error::Syntax {
            line,
            column,
            message: format!("`{name}` is not an atom name (lowercase letters, digits, `_`)"),
        });
    }
    Ok(PlFormula::atom(&name))
}

fn pl_unary(p: &mut Parser) -> Result<PlFormula> {
    if p.eat("!") {
        return Ok(PlFormula::not(pl_unary(p)?));
    }
    if p.eat("(") {
        let f = pl_implication(p)?;
        p.expect(")")?;
        return Ok(f);
    }
    pl_atom(p)
}

fn pl_conjunction(p: &mut Parser) -> Result<PlFormula> {
    let mut f = pl_unary(p)?;
    while p.eat("&") {
        f = PlFormula::and(f, pl_unary(p)?);
    }
    Ok(f)
}

fn pl_disjunction(p: &mut Parser) -> Result<PlFormula> {
    let mut f = pl_conjunction(p)?;
    while p.eat("|") {
        f = PlFormula::or(f, pl_conjunction(p)?);
    }
    Ok(f)
}

fn pl_implication(p: &mut Parser) -> Result<PlFormula> {
    let f = pl_disjunction(p)?;
    if p.eat("->") {
        return Ok(PlFormula::implies(f, pl_implication(p)?));
    }
    Ok(f)
}

/// `!`, `&`, `|` and right-associative `->`, tightest first.
pub fn parse_pl_at(text: &str, line: usize, column: usize) -> Result<PlFormula> {
    let mut p = Parser::new(text, line, column)?;
    let f = pl_implication(&mut p)?;
    p.finish()?;
    Ok(f)
}

pub fn parse_pl(text: &str) -> Result<PlFormula> {
    parse_pl_at(text, 1, 1)
}

/// `a & b -> c`, or `-> c` for a fact.
pub fn parse_horn_clause_at(text: &str, line: usize, column: usize) -> Result<HornClause> {
    let mut p = Parser::new(text, line, column)?;
    let mut body = Vec::new();
    if !p.is("->") {
        body.push(horn_atom(&mut p)?);
        while p.eat("&") {
            body.push(horn_atom(&mut p)?);
        }
    }
    p.expect("->")?;
    let head = horn_atom(&mut p)?;
    p.finish()?;
    Ok(HornClause::new(body, &head))
}

fn horn_atom(p: &mut Parser) -> Result<String> {
    let (line, column) = p.here();
    let name = p.ident("an atom")?;
    if !is_atom_name(&name) {
        return Err(Error::Syntax {
            line,
            column,
            message: format!("`{name}` is not an atom name"),
        });
    }
    Ok(name)
}

// ---------------------------------------------------------------------------
// First-order formulas.

const FOL_WORDS: [&str; 4] = ["forall", "exists", "true", "false"];

fn fol_term(p: &mut Parser) -> Result<SurfaceTerm> {
    let name = fol_name(p, "a term")?;
    if p.eat("(") {
        let mut args = vec![fol_term(p)?];
        while p.eat(",") {
            args.push(fol_term(p)?);
        }
        p.expect(")")?;
        return Ok(SurfaceTerm::App(Arc::from(name.as_str()), args));
    }
    Ok(SurfaceTerm::Name(Arc::from(name.as_str())))
}

fn fol_name(p: &mut Parser, what: &str) -> Result<String> {
    if FOL_WORDS.iter().any(|w| p.is_word(w)) {
        return Err(p.error(format!("expected {what}")));
    }
    p.ident(what)
}

/// An atom `P(t, ...)`, a nullary `P`, or `t = u` / `t != u`.
fn fol_atom(p: &mut Parser) -> Result<Formula> {
    let head = fol_term(p)?;
    if p.eat("=") {
        let rhs = fol_term(p)?;
        return Ok(Formula::Atom(Arc::from("="), vec![head, rhs]));
    }
    if p.eat("!=") {
        let rhs = fol_term(p)?;
        let eq = Formula::Atom(Arc::from("="), vec![head, rhs]);
        return Ok(Formula::Not(Box::new(eq)));
    }
    Ok(match head {
        SurfaceTerm::Name(n) => Formula::Atom(n, Vec::new()),
        SurfaceTerm::App(n, args) => Formula::Atom(n, args),
    })
}

fn fol_unary(p: &mut Parser) -> Result<Formula> {
    if p.eat("!") {
        return Ok(Formula::Not(Box::new(fol_unary(p)?)));
    }
    if p.eat("(") {
        let f = fol_formula(p)?;
        p.expect(")")?;
        return Ok(f);
    }
    for (word, q) in [("forall", Quant::Forall), ("exists", Quant::Exists)] {
        if p.is_word(word) {
            p.advance();
            let var = fol_name(p, "a variable")?;
            let sort = if p.eat(":") {
                Some(Arc::from(fol_name(p, "a sort")?.as_str()))
            } else {
                None
            };
            p.expect(".")?;
            let body = fol_formula(p)?;
            return Ok(Formula::Quant(q, Arc::from(var.as_str()), sort, Box::new(body)));
        }
    }
    if p.is_word("true") {
        p.advance();
        return Ok(Formula::True);
    }
    if p.is_word("false") {
        p.advance();
        return Ok(Formula::False);
    }
    fol_atom(p)
}

fn fol_binary(
    p: &mut Parser,
    op: &str,
    next: fn(&mut Parser) -> Result<Formula>,
    build: fn(Box<Formula>, Box<Formula>) -> Formula,
) -> Result<Formula> {
    let mut f = next(p)?;
    while p.eat(op) {
        f = build(Box::new(f), Box::new(next(p)?));
    }
    Ok(f)
}

fn fol_conjunction(p: &mut Parser) -> Result<Formula> {
    fol_binary(p, "&", fol_unary, Formula::And)
}

fn fol_disjunction(p: &mut Parser) -> Result<Formula> {
    fol_binary(p, "|", fol_conjunction, Formula::Or)
}

fn fol_implication(p: &mut Parser) -> Result<Formula> {
    let f = fol_disjunction(p)?;
    if p.eat("->") {
        return Ok(Formula::Implies(Box::new(f), Box::new(fol_implication(p)?)));
    }
    Ok(f)
}

/// Quantifier bodies extend as far right as possible.
fn fol_formula(p: &mut Parser) -> Result<Formula> {
    fol_binary(p, "<->", fol_implication, Formula::Iff)
}

pub fn parse_fol_at(text: &str, line: usize, column: usize) -> Result<Formula> {
    let mut p = Parser::new(text, line, column)?;
    let f = fol_formula(&mut p)?;
    p.finish()?;
    Ok(f)
}

pub fn parse_fol(text: &str) -> Result<Formula> {
    parse_fol_at(text, 1, 1)
}

// ---------------------------------------------------------------------------
// Description logic.

fn dl_name(p: &mut Parser, what: &str) -> Result<String> {
    let (line, column) = p.here();
    let name = p.ident(what)?;
    if !is_name(&name) {
        return Err(Error::Syntax {
            line,
            column,
            message: format!("`{name}` is not a valid name"),
        });
    }
    Ok(name)
}

fn dl_unary(p: &mut Parser) -> Result<Concept> {
    if p.eat("~") {
        return Ok(Concept::not(dl_unary(p)?));
    }
    if p.eat("(") {
        let c = dl_concept(p)?;
        p.expect(")")?;
        return Ok(c);
    }
    for word in ["some", "all"] {
        if p.is_word(word) {
            p.advance();
            let role = dl_name(p, "a role")?;
            p.expect(".")?;
            let body = dl_unary(p)?;
            return Ok(if word == "some" {
                Concept::some(&role, body)
            } else {
                Concept::all(&role, body)
            });
        }
    }
    if p.is_word("Top") {
        p.advance();
        return Ok(Concept::Top);
    }
    if p.is_word("Bot") {
        p.advance();
        return Ok(Concept::Bottom);
    }
    Ok(Concept::name(&dl_name(p, "a concept")?))
}

/// Chains of one operator become one n-ary node; explicit parentheses
/// are kept as nesting.
fn dl_chain(
    p: &mut Parser,
    op: &str,
    next: fn(&mut Parser) -> Result<Concept>,
    build: fn(Vec<Concept>) -> Concept,
) -> Result<Concept> {
    let first = next(p)?;
    if !p.is(op) {
        return Ok(first);
    }
    let mut parts = vec![first];
    while p.eat(op) {
        parts.push(next(p)?);
    }
    Ok(build(parts))
}

fn dl_conjunction(p: &mut Parser) -> Result<Concept> {
    dl_chain(p, "&", dl_unary, Concept::And)
}

fn dl_concept(p: &mut Parser) -> Result<Concept> {
    dl_chain(p, "|", dl_conjunction, Concept::Or)
}

pub fn parse_concept_at(text: &str, line: usize, column: usize) -> Result<Concept> {
    let mut p = Parser::new(text, line, column)?;
    let c = dl_concept(&mut p)?;
    p.finish()?;
    Ok(c)
}

pub fn parse_concept(text: &str) -> Result<Concept> {
    parse_concept_at(text, 1, 1)
}

/// `C [= D`, `a : C` or `(a, b) : r`.
pub fn parse_axiom_at(text: &str, line: usize, column: usize) -> Result<Axiom> {
    let mut p = Parser::new(text, line, column)?;
    let ax = if p.is("(") && matches!(p.peek_at(1), Tok::Ident(_)) && p.peek_at(2) == &Tok::Sym(",")
    {
        p.advance();
        let a = dl_name(&mut p, "an individual")?;
        p.expect(",")?;
        let b = dl_name(&mut p, "an individual")?;
        p.expect(")")?;
        p.expect(":")?;
        let r = dl_name(&mut p, "a role")?;
        Axiom::role(&a, &b, &r)
    } else if matches!(p.peek(), Tok::Ident(_)) && p.peek_at(1) == &Tok::Sym(":") {
        let a = dl_name(&mut p, "an individual")?;
        p.expect(":")?;
        Axiom::inst(&a, dl_concept(&mut p)?)
    } else {
        let c = dl_concept(&mut p)?;
        p.expect("[=")?;
        Axiom::sub(c, dl_concept(&mut p)?)
    };
    p.finish()?;
    Ok(ax)
}

pub fn parse_axiom(text: &str) -> Result<Axiom> {
    parse_axiom_at(text, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pl_sugar_round_trips() {
        let f = parse_pl("p & q").unwrap();
        assert_eq!(
            f,
            PlFormula::not(PlFormula::or(
                PlFormula::not(PlFormula::atom("p")),
                PlFormula::not(PlFormula::atom("q"))
            ))
        );
        assert_eq!(f.to_string(), "p & q");
        for s in ["p -> q -> r", "(p -> q) -> r", "!(p | q) & r", "p | q & !r", "!!p"] {
            let f = parse_pl(s).unwrap();
            assert_eq!(parse_pl(&f.to_string()).unwrap(), f, "{s}");
        }
    }

    #[test]
    fn syntax_error_at_gap() {
        match parse_axiom("C [= ") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn axioms_and_concepts() {
        let ax = parse_axiom("Tweety & flies [= Bot").unwrap();
        assert_eq!(ax.to_string(), "Tweety & flies [= Bot");
        let ax = parse_axiom("(Bob, Mary) : hasChild").unwrap();
        assert_eq!(ax, Axiom::role("Bob", "Mary", "hasChild"));
        let ax = parse_axiom("Bob : all hasChild. (rich | John)").unwrap();
        assert_eq!(ax.to_string(), "Bob : all hasChild. (rich | John)");
        let c = parse_concept("(A & B) & some r. A & B").unwrap();
        assert_eq!(c.to_string(), "(A & B) & some r. A & B");
    }

    #[test]
    fn fol_equality_and_quantifiers() {
        let f = parse_fol("forall x:s. exists y. x != y | P(f(x, y))").unwrap();
        assert!(matches!(f, Formula::Quant(Quant::Forall, _, Some(_), _)));
        assert!(parse_fol("forall true. P").is_err());
    }
}
