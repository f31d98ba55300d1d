//! Description logics ALC, ELU and EL over bounded interpretations, with
//! the concept relaxations and retractions built on them.

mod interp;
mod normal;
mod ops;

pub use interp::{DlSystem, Interpretation, MAX_DOMAIN, MODEL_CEILING};
pub use normal::{
    el_subsumes, from_tree, normalize_grouping, rho_depth, rho_e, rho_leaves, to_tree, DescTree,
    ElNormal,
};
pub use ops::{
    concept_op, kappa_dalal, kappa_exceptions, kappa_q, rho_dalal, rho_exceptions, rho_q,
    split_prefix, with_prefix, ConceptOp, Context, FormulaRelaxation, OpKind, Quantifier, Side, Step,
    CONCEPT_OPS,
};

use crate::error::{Error, Result};
use crate::pl::Symbol;
use std::fmt;
use std::sync::Arc;

/// The reserved universal role, interpreted as `Δ × Δ`.
pub const R_TOP: &str = "r_top";

const RESERVED: [&str; 5] = ["Top", "Bot", "some", "all", R_TOP];

pub fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    El,
    Elu,
    Alc,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::El => "EL",
            Fragment::Elu => "ELU",
            Fragment::Alc => "ALC",
        })
    }
}

impl std::str::FromStr for Fragment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "EL" => Ok(Fragment::El),
            "ELU" => Ok(Fragment::Elu),
            "ALC" => Ok(Fragment::Alc),
            other => Err(Error::Config(format!("unknown fragment `{other}`"))),
        }
    }
}

/// `(N_C, N_R, I)`. `r_top` is implicit and never listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlSignature {
    concepts: Vec<Symbol>,
    roles: Vec<Symbol>,
    individuals: Vec<Symbol>,
}

impl DlSignature {
    pub fn new<A: AsRef<str>>(concepts: &[A], roles: &[A], individuals: &[A]) -> Result<Self> {
        let mut seen: Vec<Symbol> = Vec::new();
        let mut take = |names: &[A], what: &str| -> Result<Vec<Symbol>> {
            let mut out = Vec::new();
            for n in names {
                let n = n.as_ref();
                if !is_name(n) || RESERVED.contains(&n) {
                    return Err(Error::Signature(format!("`{n}` is not a valid {what} name")));
                }
                if seen.iter().any(|s| &**s == n) {
                    return Err(Error::Signature(format!("name `{n}` declared twice")));
                }
                let s: Symbol = Arc::from(n);
                seen.push(s.clone());
                out.push(s);
            }
            Ok(out)
        };
        let concepts = take(concepts, "concept")?;
        let roles = take(roles, "role")?;
        let individuals = take(individuals, "individual")?;
        if concepts.is_empty() {
            return Err(Error::Signature("at least one concept name is required".into()));
        }
        Ok(Self {
            concepts,
            roles,
            individuals,
        })
    }

    pub fn concepts(&self) -> &[Symbol] {
        &self.concepts
    }

    pub fn roles(&self) -> &[Symbol] {
        &self.roles
    }

    pub fn individuals(&self) -> &[Symbol] {
        &self.individuals
    }

    pub fn concept(&self, name: &str) -> Option<usize> {
        self.concepts.iter().position(|c| &**c == name)
    }

    pub fn role(&self, name: &str) -> Option<usize> {
        self.roles.iter().position(|c| &**c == name)
    }

    pub fn individual(&self, name: &str) -> Option<usize> {
        self.individuals.iter().position(|c| &**c == name)
    }

    fn check_role(&self, r: &str) -> Result<()> {
        if r == R_TOP || self.role(r).is_some() {
            Ok(())
        } else {
            Err(Error::UnknownSymbol {
                symbol: r.to_string(),
                context: "role".into(),
            })
        }
    }

    fn check_individual(&self, a: &str) -> Result<()> {
        self.individual(a).map(|_| ()).ok_or_else(|| Error::UnknownSymbol {
            symbol: a.to_string(),
            context: "individual".into(),
        })
    }

    pub fn check_concept(&self, c: &Concept) -> Result<()> {
        match c {
            Concept::Top | Concept::Bottom => Ok(()),
            Concept::Name(n) => {
                if self.concept(n).is_some() || self.individual(n).is_some() {
                    Ok(())
                } else {
                    Err(Error::UnknownSymbol {
                        symbol: n.to_string(),
                        context: "concept".into(),
                    })
                }
            }
            Concept::Not(a) => self.check_concept(a),
            Concept::And(ps) | Concept::Or(ps) => ps.iter().try_for_each(|p| self.check_concept(p)),
            Concept::Exists(r, a) | Concept::Forall(r, a) => {
                self.check_role(r)?;
                self.check_concept(a)
            }
        }
    }

    pub fn check_axiom(&self, ax: &Axiom) -> Result<()> {
        match ax {
            Axiom::Sub(c, d) => {
                self.check_concept(c)?;
                self.check_concept(d)
            }
            Axiom::Inst(a, c) => {
                self.check_individual(a)?;
                self.check_concept(c)
            }
            Axiom::Role(a, b, r) => {
                self.check_individual(a)?;
                self.check_individual(b)?;
                self.check_role(r)
            }
        }
    }
}

/// Concept syntax. A name is a concept name or, when it is declared as an
/// individual, the nominal `{a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Bottom,
    Name(Symbol),
    Not(Box<Concept>),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Exists(Symbol, Box<Concept>),
    Forall(Symbol, Box<Concept>),
}

impl Concept {
    pub fn name(n: &str) -> Concept {
        Concept::Name(Arc::from(n))
    }

    pub fn not(c: Concept) -> Concept {
        Concept::Not(Box::new(c))
    }

    pub fn some(r: &str, c: Concept) -> Concept {
        Concept::Exists(Arc::from(r), Box::new(c))
    }

    pub fn all(r: &str, c: Concept) -> Concept {
        Concept::Forall(Arc::from(r), Box::new(c))
    }

    /// Flattening conjunction: drops `Top`, absorbs into `Bot`, removes
    /// repeats and unwraps singletons.
    pub fn conj(parts: impl IntoIterator<Item = Concept>) -> Concept {
        let mut out: Vec<Concept> = Vec::new();
        for p in parts {
            let items = match p {
                Concept::And(inner) => inner,
                other => vec![other],
            };
            for q in items {
                match q {
                    Concept::Top => {}
                    Concept::Bottom => return Concept::Bottom,
                    q if out.contains(&q) => {}
                    q => out.push(q),
                }
            }
        }
        match out.len() {
            0 => Concept::Top,
            1 => out.pop().expect("one part"),
            _ => Concept::And(out),
        }
    }

    /// Flattening disjunction, dual to [`Concept::conj`].
    pub fn disj(parts: impl IntoIterator<Item = Concept>) -> Concept {
        let mut out: Vec<Concept> = Vec::new();
        for p in parts {
            let items = match p {
                Concept::Or(inner) => inner,
                other => vec![other],
            };
            for q in items {
                match q {
                    Concept::Bottom => {}
                    Concept::Top => return Concept::Top,
                    q if out.contains(&q) => {}
                    q => out.push(q),
                }
            }
        }
        match out.len() {
            0 => Concept::Bottom,
            1 => out.pop().expect("one part"),
            _ => Concept::Or(out),
        }
    }

    /// The least fragment containing every constructor used.
    pub fn fragment(&self) -> Fragment {
        match self {
            Concept::Top | Concept::Bottom | Concept::Name(_) => Fragment::El,
            Concept::Not(_) | Concept::Forall(..) => Fragment::Alc,
            Concept::And(ps) => ps.iter().map(Concept::fragment).max().unwrap_or(Fragment::El),
            Concept::Or(ps) => ps
                .iter()
                .map(Concept::fragment)
                .max()
                .unwrap_or(Fragment::El)
                .max(Fragment::Elu),
            Concept::Exists(_, c) => c.fragment(),
        }
    }

    pub fn contains_bottom(&self) -> bool {
        match self {
            Concept::Bottom => true,
            Concept::Top | Concept::Name(_) => false,
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) => c.contains_bottom(),
            Concept::And(ps) | Concept::Or(ps) => ps.iter().any(Concept::contains_bottom),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Concept::Top | Concept::Bottom | Concept::Name(_) => true,
            Concept::Not(c) => c.is_quantifier_free(),
            Concept::And(ps) | Concept::Or(ps) => ps.iter().all(Concept::is_quantifier_free),
            Concept::Exists(..) | Concept::Forall(..) => false,
        }
    }

    /// Nesting depth of role restrictions.
    pub fn role_depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Name(_) => 0,
            Concept::Not(c) => c.role_depth(),
            Concept::And(ps) | Concept::Or(ps) => {
                ps.iter().map(Concept::role_depth).max().unwrap_or(0)
            }
            Concept::Exists(_, c) | Concept::Forall(_, c) => 1 + c.role_depth(),
        }
    }

    /// Precedence: `|` 1, `&` 2, everything else 3.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("Top"),
            Concept::Bottom => f.write_str("Bot"),
            Concept::Name(n) => f.write_str(n),
            Concept::Not(c) => {
                f.write_str("~")?;
                c.fmt_prec(f, 3)
            }
            Concept::Exists(r, c) => {
                write!(f, "some {r}. ")?;
                c.fmt_prec(f, 3)
            }
            Concept::Forall(r, c) => {
                write!(f, "all {r}. ")?;
                c.fmt_prec(f, 3)
            }
            Concept::And(ps) | Concept::Or(ps) => {
                let (prec, op) = if matches!(self, Concept::And(_)) {
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

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `C ⊑ D`
    Sub(Concept, Concept),
    /// `a : C`
    Inst(Symbol, Concept),
    /// `(a, b) : r`
    Role(Symbol, Symbol, Symbol),
}

impl Axiom {
    pub fn sub(c: Concept, d: Concept) -> Axiom {
        Axiom::Sub(c, d)
    }

    pub fn inst(a: &str, c: Concept) -> Axiom {
        Axiom::Inst(Arc::from(a), c)
    }

    pub fn role(a: &str, b: &str, r: &str) -> Axiom {
        Axiom::Role(Arc::from(a), Arc::from(b), Arc::from(r))
    }

    pub fn fragment(&self) -> Fragment {
        match self {
            Axiom::Sub(c, d) => c.fragment().max(d.fragment()),
            Axiom::Inst(_, c) => c.fragment(),
            Axiom::Role(..) => Fragment::El,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Sub(c, d) => write!(f, "{c} [= {d}"),
            Axiom::Inst(a, c) => write!(f, "{a} : {c}"),
            Axiom::Role(a, b, r) => write!(f, "({a}, {b}) : {r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_keeps_nesting() {
        let a = Concept::name("A");
        let b = Concept::name("B");
        let c = Concept::And(vec![Concept::And(vec![a.clone(), b.clone()]), a.clone()]);
        assert_eq!(c.to_string(), "(A & B) & A");
        let d = Concept::all("r", Concept::Or(vec![a.clone(), b.clone()]));
        assert_eq!(d.to_string(), "all r. (A | B)");
        let e = Concept::And(vec![Concept::some("r", a.clone()), b.clone()]);
        assert_eq!(e.to_string(), "some r. A & B");
        assert_eq!(Concept::not(Concept::And(vec![a, b])).to_string(), "~(A & B)");
    }

    #[test]
    fn fragments() {
        let a = Concept::name("A");
        assert_eq!(Concept::some("r", a.clone()).fragment(), Fragment::El);
        assert_eq!(Concept::Or(vec![a.clone(), Concept::Top]).fragment(), Fragment::Elu);
        assert_eq!(Concept::all("r", a).fragment(), Fragment::Alc);
    }

    #[test]
    fn signature_rejects_clashes() {
        assert!(DlSignature::new(&["A", "A"], &[], &[]).is_err());
        assert!(DlSignature::new(&["A"], &["r_top"], &[]).is_err());
        assert!(DlSignature::new::<&str>(&[], &[], &[]).is_err());
    }
}
