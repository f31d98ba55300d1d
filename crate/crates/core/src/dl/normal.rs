//! EL description trees, the ELU normal form with grouped existential
//! restrictions, and the relaxations defined on them.

use super::{Concept, Fragment};
use crate::error::{Error, Result};
use crate::pl::Symbol;
use std::collections::{BTreeMap, BTreeSet};

fn fragment_error(op: &str, required: Fragment, c: &Concept) -> Error {
    Error::Fragment {
        operation: op.to_string(),
        required: required.to_string(),
        found: c.fragment().to_string(),
    }
}

// ---------------------------------------------------------------------------
// Description trees.

/// Node labels are concept names; edges carry role names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DescTree {
    pub labels: BTreeSet<Symbol>,
    pub children: Vec<(Symbol, DescTree)>,
}

impl DescTree {
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|(_, c)| 1 + c.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Tree of an EL concept without `Bot`. `Ok(None)` when `Bot` occurs.
pub fn to_tree(c: &Concept) -> Result<Option<DescTree>> {
    if c.fragment() != Fragment::El {
        return Err(fragment_error("description tree", Fragment::El, c));
    }
    if c.contains_bottom() {
        return Ok(None);
    }
    fn go(c: &Concept, t: &mut DescTree) {
        match c {
            Concept::Top => {}
            Concept::Name(n) => {
                t.labels.insert(n.clone());
            }
            Concept::And(ps) => ps.iter().for_each(|p| go(p, t)),
            Concept::Exists(r, a) => {
                let mut child = DescTree::default();
                go(a, &mut child);
                t.children.push((r.clone(), child));
            }
            _ => unreachable!("EL without bottom"),
        }
    }
    let mut t = DescTree::default();
    go(c, &mut t);
    Ok(Some(t))
}

pub fn from_tree(t: &DescTree) -> Concept {
    Concept::conj(
        t.labels
            .iter()
            .map(|l| Concept::Name(l.clone()))
            .chain(
                t.children
                    .iter()
                    .map(|(r, c)| Concept::Exists(r.clone(), Box::new(from_tree(c)))),
            ),
    )
}

fn prune_level(t: &mut DescTree, level: usize) {
    if level == 0 {
        t.children.clear();
    } else {
        for (_, c) in &mut t.children {
            prune_level(c, level - 1);
        }
    }
}

/// Cuts the deepest level of the tree. Depth 0 relaxes to `Top`.
pub fn rho_depth(c: &Concept) -> Result<Concept> {
    let Some(mut t) = to_tree(c)? else {
        return Ok(Concept::Top);
    };
    let d = t.depth();
    if d == 0 {
        return Ok(Concept::Top);
    }
    prune_level(&mut t, d - 1);
    Ok(from_tree(&t))
}

fn strip_leaves(t: &mut DescTree) {
    t.children.retain(|(_, c)| !(c.is_leaf() && c.labels.is_empty()));
    for (_, c) in &mut t.children {
        if c.is_leaf() {
            c.labels.clear();
        } else {
            strip_leaves(c);
        }
    }
}

/// Removes one layer of leaves: a labeled leaf loses its labels, an
/// unlabeled leaf loses its edge. A lone root relaxes to `Top`.
pub fn rho_leaves(c: &Concept) -> Result<Concept> {
    let Some(mut t) = to_tree(c)? else {
        return Ok(Concept::Top);
    };
    if t.is_leaf() {
        return Ok(Concept::Top);
    }
    strip_leaves(&mut t);
    Ok(from_tree(&t))
}

// ---------------------------------------------------------------------------
// Normal form with grouping.

/// An EL concept `⊓ N_D ⊓ ⊓_r D_r` with `D_r = ⊓_{E ∈ C_{D_r}} ∃r.E`.
/// `Bot` is not representable here; it is the empty ELU disjunction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ElNormal {
    pub names: BTreeSet<Symbol>,
    pub groups: BTreeMap<Symbol, Vec<ElNormal>>,
}

impl ElNormal {
    pub fn is_top(&self) -> bool {
        self.names.is_empty() && self.groups.is_empty()
    }

    fn name(n: &Symbol) -> Self {
        let mut out = ElNormal::default();
        out.names.insert(n.clone());
        out
    }

    fn exists(r: &Symbol, e: ElNormal) -> Self {
        let mut out = ElNormal::default();
        out.groups.insert(r.clone(), vec![e]);
        out
    }

    /// Conjunction, with the grouped restrictions reduced again.
    fn meet(&self, other: &ElNormal) -> ElNormal {
        let mut out = self.clone();
        out.names.extend(other.names.iter().cloned());
        for (r, es) in &other.groups {
            out.groups.entry(r.clone()).or_default().extend(es.iter().cloned());
        }
        out.reduce();
        out
    }

    /// Drops restrictions implied by a stronger one in the same group.
    fn reduce(&mut self) {
        for es in self.groups.values_mut() {
            let mut kept: Vec<ElNormal> = Vec::new();
            for e in es.drain(..) {
                if kept.iter().any(|k| el_subsumes(k, &e)) {
                    continue;
                }
                kept.retain(|k| !el_subsumes(&e, k));
                kept.push(e);
            }
            *es = kept;
        }
    }

    pub fn to_concept(&self) -> Concept {
        Concept::conj(
            self.names.iter().map(|n| Concept::Name(n.clone())).chain(
                self.groups.iter().flat_map(|(r, es)| {
                    es.iter()
                        .map(move |e| Concept::Exists(r.clone(), Box::new(e.to_concept())))
                }),
            ),
        )
    }
}

/// Structural subsumption `c ⊑ d` between EL concepts without a TBox:
/// every name of `d` occurs in `c` and every restriction `∃r.E` of `d` is
/// matched by some `∃r.F` of `c` with `F ⊑ E`.
pub fn el_subsumes(c: &ElNormal, d: &ElNormal) -> bool {
    d.names.is_subset(&c.names)
        && d.groups.iter().all(|(r, es)| {
            let fs = c.groups.get(r).map(Vec::as_slice).unwrap_or(&[]);
            es.iter().all(|e| fs.iter().any(|f| el_subsumes(f, e)))
        })
}

/// The ELU normal form of a concept: a disjunction of grouped EL concepts.
fn elu_normal(c: &Concept) -> Result<Vec<ElNormal>> {
    Ok(match c {
        Concept::Top => vec![ElNormal::default()],
        Concept::Bottom => Vec::new(),
        Concept::Name(n) => vec![ElNormal::name(n)],
        Concept::Or(ps) => {
            let mut out = Vec::new();
            for p in ps {
                out.extend(elu_normal(p)?);
            }
            out
        }
        Concept::And(ps) => {
            let mut acc = vec![ElNormal::default()];
            for p in ps {
                let part = elu_normal(p)?;
                let mut next = Vec::new();
                for a in &acc {
                    for b in &part {
                        next.push(a.meet(b));
                    }
                }
                acc = next;
            }
            acc
        }
        Concept::Exists(r, a) => elu_normal(a)?
            .into_iter()
            .map(|e| ElNormal::exists(r, e))
            .collect(),
        Concept::Not(_) | Concept::Forall(..) => {
            return Err(fragment_error("normal form", Fragment::Elu, c))
        }
    })
}

/// Removes disjuncts subsumed by another one, keeping the first of
/// equivalent ones.
fn simplify_disjunction(ds: Vec<ElNormal>) -> Vec<ElNormal> {
    let mut kept: Vec<ElNormal> = Vec::new();
    for d in ds {
        if kept.iter().any(|k| el_subsumes(&d, k)) {
            continue;
        }
        kept.retain(|k| !el_subsumes(k, &d));
        kept.push(d);
    }
    kept
}

fn disjunction_concept(ds: &[ElNormal]) -> Concept {
    Concept::disj(ds.iter().map(ElNormal::to_concept))
}

/// ELU concept rewritten as a disjunction of EL concepts in normal form
/// with grouping of existential restrictions.
pub fn normalize_grouping(c: &Concept) -> Result<Concept> {
    let nf = elu_normal(c)?;
    Ok(disjunction_concept(&simplify_disjunction(nf)))
}

/// The conjuncts `C_D`: each name alone, then each role group.
fn components(d: &ElNormal) -> Vec<ElNormal> {
    let mut out: Vec<ElNormal> = d.names.iter().map(ElNormal::name).collect();
    for (r, es) in &d.groups {
        let mut g = ElNormal::default();
        g.groups.insert(r.clone(), es.clone());
        out.push(g);
    }
    out
}

fn rho_e_el(d: &ElNormal) -> Vec<ElNormal> {
    if d.is_top() {
        return vec![ElNormal::default()];
    }
    let comps = components(d);
    if comps.len() == 1 {
        let g = &comps[0];
        if let Some((r, es)) = g.groups.iter().next() {
            return rho_e_group(r, es);
        }
        // A lone concept name.
        return vec![ElNormal::default()];
    }
    let mut out = Vec::new();
    for (i, g) in comps.iter().enumerate() {
        let rest = comps
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(ElNormal::default(), |acc, (_, h)| acc.meet(h));
        for relaxed in rho_e_el(g) {
            out.push(relaxed.meet(&rest));
        }
    }
    out
}

fn rho_e_group(r: &Symbol, es: &[ElNormal]) -> Vec<ElNormal> {
    if es.iter().all(ElNormal::is_top) {
        return vec![ElNormal::default()];
    }
    let n = es.len();
    let mut out = Vec::new();
    for mask in 1usize..1 << n {
        let mut kept = ElNormal::default();
        let mut chosen = ElNormal::default();
        for (i, e) in es.iter().enumerate() {
            if mask >> i & 1 == 1 {
                chosen = chosen.meet(e);
            } else {
                kept = kept.meet(&ElNormal::exists(r, e.clone()));
            }
        }
        for g in rho_e_el(&chosen) {
            out.push(kept.meet(&ElNormal::exists(r, g)));
        }
    }
    out
}

/// Relaxation from the normal form. `Bot` (the empty disjunction) relaxes
/// to `Top`.
pub fn rho_e(c: &Concept) -> Result<Concept> {
    if c.fragment() > Fragment::Elu {
        return Err(fragment_error("rho_e", Fragment::Elu, c));
    }
    let nf = simplify_disjunction(elu_normal(c)?);
    if nf.is_empty() {
        return Ok(Concept::Top);
    }
    let relaxed: Vec<ElNormal> = nf.iter().flat_map(rho_e_el).collect();
    Ok(disjunction_concept(&simplify_disjunction(relaxed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Concept {
        Concept::name(s)
    }

    #[test]
    fn depth_and_leaves() {
        let c = Concept::conj([
            n("A"),
            Concept::some("r", Concept::conj([n("B"), Concept::some("s", n("E"))])),
        ]);
        assert_eq!(rho_depth(&c).unwrap().to_string(), "A & some r. B");
        assert_eq!(rho_depth(&n("A")).unwrap(), Concept::Top);
        let c = Concept::conj([n("A"), Concept::some("r", n("B"))]);
        let once = rho_leaves(&c).unwrap();
        assert_eq!(once.to_string(), "A & some r. Top");
        assert_eq!(rho_leaves(&once).unwrap(), n("A"));
        assert_eq!(rho_leaves(&n("A")).unwrap(), Concept::Top);
    }

    #[test]
    fn grouping_drops_weaker_restrictions() {
        let c = Concept::conj([Concept::some("r", n("A")), Concept::some("r", Concept::Top)]);
        assert_eq!(normalize_grouping(&c).unwrap().to_string(), "some r. A");
        let c = Concept::conj([Concept::some("r", n("A")), Concept::some("r", n("B")), n("P")]);
        assert_eq!(
            normalize_grouping(&c).unwrap().to_string(),
            "P & some r. A & some r. B"
        );
    }

    #[test]
    fn rho_e_base_cases() {
        assert_eq!(rho_e(&Concept::Top).unwrap(), Concept::Top);
        assert_eq!(rho_e(&Concept::some("r", Concept::Top)).unwrap(), Concept::Top);
        assert_eq!(rho_e(&Concept::Bottom).unwrap(), Concept::Top);
        let bc = Concept::some("m", Concept::conj([n("B"), n("C")]));
        assert_eq!(rho_e(&bc).unwrap().to_string(), "some m. C | some m. B");
    }

    #[test]
    fn tree_round_trip() {
        let c = Concept::conj([n("A"), Concept::some("r", Concept::conj([n("B"), n("C")]))]);
        let t = to_tree(&c).unwrap().unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(from_tree(&t), c);
        assert!(to_tree(&Concept::all("r", n("A"))).is_err());
    }
}
