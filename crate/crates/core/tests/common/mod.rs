//! Generators shared by the property suites.
#![allow(dead_code)]

use beliefrev::dl::{with_prefix, Axiom, Concept, Quantifier};
use beliefrev::fol::Formula;
use beliefrev::horn::{HornClause, HornSentence};
use beliefrev::io::parse_fol;
use beliefrev::pl::{PlFormula, Symbol};
use beliefrev::KnowledgeBase;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub const ATOMS: [&str; 3] = ["p", "q", "r"];

pub fn pl_formula() -> impl Strategy<Value = PlFormula> {
    let leaf = prop::sample::select(ATOMS.to_vec()).prop_map(PlFormula::atom);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(PlFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PlFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PlFormula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| PlFormula::implies(a, b)),
        ]
    })
}

pub fn pl_kb(max: usize) -> impl Strategy<Value = KnowledgeBase<PlFormula>> {
    prop::collection::vec(pl_formula(), 0..=max).prop_map(KnowledgeBase::new)
}

pub fn horn_clause() -> impl Strategy<Value = HornClause> {
    (prop::sample::select(ATOMS.to_vec()), prop::sample::subsequence(ATOMS.to_vec(), 0..=2))
        .prop_map(|(head, body)| {
            let body: Vec<&str> = body.into_iter().filter(|a| *a != head).collect();
            HornClause::new(body, head)
        })
}

pub fn horn_sentence() -> impl Strategy<Value = HornSentence> {
    prop::collection::vec(horn_clause(), 1..=3).prop_map(HornSentence::new)
}

fn name() -> impl Strategy<Value = Concept> {
    prop::sample::select(vec!["A", "B"]).prop_map(Concept::name)
}

pub fn el_concept() -> impl Strategy<Value = Concept> {
    prop_oneof![4 => name(), 1 => Just(Concept::Top)].prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::conj([a, b])),
            inner.prop_map(|c| Concept::some("r", c)),
        ]
    })
}

pub fn elu_concept() -> impl Strategy<Value = Concept> {
    el_concept().prop_recursive(2, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::disj([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::conj([a, b])),
            inner.prop_map(|c| Concept::some("r", c)),
        ]
    })
}

pub fn alc_concept() -> impl Strategy<Value = Concept> {
    prop_oneof![
        4 => name(),
        1 => Just(Concept::Top),
        1 => Just(Concept::Bottom),
        1 => Just(Concept::name("a")),
    ]
    .prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Concept::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::conj([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::disj([a, b])),
            inner.clone().prop_map(|c| Concept::some("r", c)),
            inner.prop_map(|c| Concept::all("r", c)),
        ]
    })
}

/// A quantifier prefix over a boolean combination of literals.
pub fn prefixed_concept() -> impl Strategy<Value = Concept> {
    let literal = (name(), any::<bool>()).prop_map(|(c, neg)| if neg { Concept::not(c) } else { c });
    let body = literal.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::conj([a, b])),
            (inner.clone(), inner).prop_map(|(a, b)| Concept::disj([a, b])),
        ]
    });
    (prop::collection::vec(any::<bool>(), 0..=2), body).prop_map(|(qs, body)| {
        let prefix: Vec<(Quantifier, Symbol)> = qs
            .into_iter()
            .map(|e| (if e { Quantifier::Exists } else { Quantifier::Forall }, Arc::from("r")))
            .collect();
        with_prefix(&prefix, body)
    })
}

pub fn alc_axiom() -> impl Strategy<Value = Axiom> {
    prop_oneof![
        3 => (alc_concept(), alc_concept()).prop_map(|(c, d)| Axiom::sub(c, d)),
        1 => alc_concept().prop_map(|c| Axiom::inst("a", c)),
        1 => Just(Axiom::role("a", "a", "r")),
    ]
}

fn fol_text(rng: &mut ChaCha8Rng, vars: &mut Vec<String>, depth: usize) -> String {
    if vars.is_empty() || (depth > 0 && rng.gen_bool(0.3)) {
        let v = format!("v{}", vars.len());
        let q = if rng.gen_bool(0.5) { "forall" } else { "exists" };
        vars.push(v.clone());
        let body = fol_text(rng, vars, depth.saturating_sub(1));
        vars.pop();
        return format!("{q} {v}. ({body})");
    }
    if depth == 0 || rng.gen_bool(0.3) {
        let a = &vars[rng.gen_range(0..vars.len())];
        let b = &vars[rng.gen_range(0..vars.len())];
        return match rng.gen_range(0..3) {
            0 => format!("P({a})"),
            1 => format!("R({a}, {b})"),
            _ => format!("R(c, {a})"),
        };
    }
    let l = fol_text(rng, vars, depth - 1);
    match rng.gen_range(0..5) {
        0 => format!("!({l})"),
        1 => format!("({l}) & ({})", fol_text(rng, vars, depth - 1)),
        2 => format!("({l}) | ({})", fol_text(rng, vars, depth - 1)),
        3 => format!("({l}) -> ({})", fol_text(rng, vars, depth - 1)),
        _ => format!("({l}) <-> ({})", fol_text(rng, vars, depth - 1)),
    }
}

/// A closed formula over `c`, `P/1` and `R/2`, grown from a seed.
pub fn fol_formula() -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = fol_text(&mut rng, &mut Vec::new(), 3);
        parse_fol(&text).expect("generated formula parses")
    })
}
