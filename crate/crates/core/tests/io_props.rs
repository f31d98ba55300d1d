//! Documents print canonically and parse back to the same value.

mod common;

use beliefrev::fol::{prenex, FolSignature};
use beliefrev::io::{parse, serialize, Document};
use common::{alc_axiom, fol_formula, horn_sentence, pl_formula};
use proptest::prelude::*;

fn round_trip(text: &str) -> Result<(), TestCaseError> {
    let doc = parse(text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    let canonical = serialize(&doc);
    let again = parse(&canonical).map_err(|e| TestCaseError::fail(format!("{e}\n{canonical}")))?;
    prop_assert_eq!(&again, &doc);
    prop_assert_eq!(serialize(&again), canonical);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pl_documents(fs in prop::collection::vec(pl_formula(), 1..4)) {
        let body: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        round_trip(&format!("logic: pl\natoms: p, q, r\n---\n{}\n", body.join("\n")))?;
    }

    #[test]
    fn horn_documents(hs in prop::collection::vec(horn_sentence(), 1..4)) {
        let body: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
        round_trip(&format!("logic: horn\natoms: p, q, r\n---\n{}\n", body.join("\n\n")))?;
    }

    #[test]
    fn fol_documents(fs in prop::collection::vec(fol_formula(), 1..3)) {
        let sig = FolSignature::new(&["s"], &[("c", &[], "s")], &[("P", &["s"]), ("R", &["s", "s"])]).unwrap();
        let body: Vec<String> = fs.iter().map(|f| prenex(f, &sig).unwrap().to_string()).collect();
        round_trip(&format!(
            "logic: fol\nbound: 2\nsorts: s\nfuncs: c() -> s\npreds: P(s); R(s, s)\n---\n{}\n",
            body.join("\n")
        ))?;
    }

    #[test]
    fn dl_documents(axs in prop::collection::vec(alc_axiom(), 1..4)) {
        let body: Vec<String> = axs.iter().map(|a| a.to_string()).collect();
        let text = format!(
            "logic: dl\nname: random\nfragment: ALC\nconcepts: A, B\nroles: r\nindividuals: a\nexceptions: A & B, ~B\n---\n{}\n",
            body.join("\n")
        );
        round_trip(&text)?;
        let Document::Dl(doc) = parse(&text).unwrap() else { unreachable!() };
        prop_assert_eq!(doc.axioms, axs);
    }
}
