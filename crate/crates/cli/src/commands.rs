//! Subcommand implementations. Each one is written once against the
//! satisfaction-system interface and instantiated per logic.

use crate::config::FileConfig;
use crate::{Cli, Command, ContextChoice, Failure, OpArgs};
use beliefrev::agm::{check_g4_derivation, check_postulates, knowledge_bases};
use beliefrev::dl::{concept_op, Axiom, Concept, Context, DlSystem, FormulaRelaxation, OpKind};
use beliefrev::fol::{prenex, QuantifierRelaxation};
use beliefrev::horn::{HornClause, HornRelaxation, HornSentence, HornSystem};
use beliefrev::io::{self, parse_axiom, parse_concept, parse_fol, parse_pl, Document};
use beliefrev::pl::{sentence_pool, HammingDilation, PlSystem};
use beliefrev::{
    revise, Error, KnowledgeBase, Mode, Relaxation, RevisionConfig, SatisfactionSystem, Semantics,
    TrivialRelaxation,
};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;

pub struct Output {
    pub json: Value,
    pub text: String,
}

/// A resolved operator request.
pub struct OpSpec {
    pub name: String,
    pub k: Option<usize>,
    /// Concepts from a named configuration set, overriding the document.
    pub exceptions: Option<Vec<String>>,
    pub context: ContextChoice,
}

type SentenceParser<S> =
    Box<dyn Fn(&str) -> Result<<S as SatisfactionSystem>::Sentence, Failure>>;
type RelaxationFactory<S> =
    Box<dyn Fn(&OpSpec, &Semantics<S>) -> Result<Box<dyn Relaxation<S>>, Failure>>;

/// Everything a subcommand needs, for one logic.
pub struct Env<S: SatisfactionSystem> {
    pub sem: Semantics<S>,
    pub kbs: Vec<KnowledgeBase<S::Sentence>>,
    pub parse_sentence: SentenceParser<S>,
    pub relaxation: RelaxationFactory<S>,
}

trait Task {
    fn run<S: SatisfactionSystem + 'static>(self, env: Env<S>) -> Result<Output, Failure>;
}

fn header<S: SatisfactionSystem>(command: &str, sem: &Semantics<S>) -> Value {
    let sys = sem.system();
    json!({
        "schema": 1,
        "command": command,
        "logic": sys.logic(),
        "bound": sys.bound(),
        "space": sem.space(),
    })
}

fn extend(mut base: Value, more: Value) -> Value {
    if let (Value::Object(b), Value::Object(m)) = (&mut base, more) {
        b.extend(m);
    }
    base
}

fn names<T: std::fmt::Display>(items: &[T]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

// ---------------------------------------------------------------------------
// Tasks.

struct Models {
    limit: usize,
}

impl Task for Models {
    fn run<S: SatisfactionSystem + 'static>(self, env: Env<S>) -> Result<Output, Failure> {
        let models = env.sem.models_of(&env.kbs[0])?;
        let shown: Vec<usize> = if self.limit == 0 {
            models.iter().collect()
        } else {
            models.iter().take(self.limit).collect()
        };
        let described: Vec<String> = shown
            .iter()
            .map(|&i| env.sem.system().model(i).to_string())
            .collect();
        let mut text = format!("{} of {} models\n", models.len(), env.sem.space());
        for (i, d) in shown.iter().zip(&described) {
            let _ = writeln!(text, "#{i} {d}");
        }
        if shown.len() < models.len() {
            let _ = writeln!(text, "... {} more", models.len() - shown.len());
        }
        let list: Vec<Value> = shown
            .iter()
            .zip(&described)
            .map(|(i, d)| json!({ "index": i, "model": d }))
            .collect();
        let json = extend(
            header("models", &env.sem),
            json!({
                "count": models.len(),
                "truncated": shown.len() < models.len(),
                "models": list,
            }),
        );
        Ok(Output { json, text })
    }
}

struct Consistent;

impl Task for Consistent {
    fn run<S: SatisfactionSystem + 'static>(self, env: Env<S>) -> Result<Output, Failure> {
        let models = env.sem.models_of(&env.kbs[0])?;
        let consistent = env.sem.is_consistent_set(&models);
        let text = format!("{}\n", if consistent { "consistent" } else { "inconsistent" });
        let json = extend(
            header("consistent", &env.sem),
            json!({ "consistent": consistent, "models": models.len() }),
        );
        Ok(Output { json, text })
    }
}

struct Entails {
    sentence: String,
}

impl Task for Entails {
    fn run<S: SatisfactionSystem + 'static>(self, env: Env<S>) -> Result<Output, Failure> {
        let s = (env.parse_sentence)(&self.sentence)?;
        let entails = env.sem.entails(&env.kbs[0], &s)?;
        let text = format!("{entails}\n");
        let json = extend(
            header("entails", &env.sem),
            json!({ "sentence": s.to_string(), "entails": entails }),
        );
        Ok(Output { json, text })
    }
}

struct Relax {
    spec: OpSpec,
    times: usize,
}

impl Task for Relax {
    fn run<S: SatisfactionSystem + 'static>(self, env: Env<S>) -> Result<Output, Failure> {
        let rho = (env.relaxation)(&self.spec, &env.sem)?;
        let mut text = String::new();
        let mut rows = Vec::new();
        for s in env.kbs[0].iter() {
            let out = beliefrev::relax::relax_times(&env.sem, &*rho, s, self.times)?;
            let tautology = env.sem.is_tautology(&out)?;
            let _ = writeln!(text, "{s}  =>  {out}");
            rows.push(json!({
                "input": s.to_string(),
                "output": out.to_string(),
                "unchanged": &out == s,
                "tautology": tautology,
            }));
        }
        let json = extend(
            header("relax", &env.sem),
            json!({
                "op": rho.name(),
                "exhaustive": rho.exhaustive(),
                "times": self.times,
                "sentences": rows,
            }),
        );
        Ok(Output { json, text })
    }
}

struct Revise {
    spec: OpSpec,
    config: RevisionConfig,
}

impl Task for Revise {
    fn run<S: SatisfactionSystem + 'static>(self, env: Env<S>) -> Result<Output, Failure> {
        let rho = (env.relaxation)(&self.spec, &env.sem)?;
        let result = revise(&env.sem, &*rho, &env.kbs[0], &env.kbs[1], &self.config)?;
        let mut text = String::new();
        let _ = writeln!(text, "vector {}", result.vector);
        for s in result.revised.iter() {
            let _ = writeln!(text, "{s}");
        }
        for f in &result.flags {
            let _ = writeln!(text, "flag: {f}");
        }
        let body = serde_json::to_value(&result).expect("serializable result");
        let json = extend(
            header("revise", &env.sem),
            extend(json!({ "op": rho.name() }), body),
        );
        Ok(Output { json, text })
    }
}

// ---------------------------------------------------------------------------
// Per-logic environments.

fn unknown_op(name: &str, logic: &str, known: &[&str]) -> Failure {
    Failure::Usage(format!(
        "operator `{name}` is not available for {logic} (use one of: {})",
        known.join(", ")
    ))
}

fn parse_failure(e: Error) -> Failure {
    Failure::Parse(e)
}

fn check<S: SatisfactionSystem>(sys: &S, s: S::Sentence) -> Result<S::Sentence, Failure> {
    sys.check_sentence(&s).map_err(Failure::Parse)?;
    Ok(s)
}

fn dispatch<T: Task>(docs: Vec<Document>, bound: Option<usize>, task: T) -> Result<Output, Failure> {
    match &docs[0] {
        Document::Pl(_) => {
            let docs: Vec<_> = docs
                .into_iter()
                .map(|d| match d {
                    Document::Pl(d) => d,
                    _ => unreachable!("unified"),
                })
                .collect();
            let sys = docs[0].system();
            let checker = sys.clone();
            task.run(Env {
                sem: Semantics::new(sys),
                kbs: docs.iter().map(|d| KnowledgeBase::new(d.sentences.clone())).collect(),
                parse_sentence: Box::new(move |t| {
                    check(&checker, parse_pl(t).map_err(parse_failure)?)
                }),
                relaxation: Box::new(|spec, _| -> Result<Box<dyn Relaxation<PlSystem>>, Failure> {
                    match spec.name.as_str() {
                        "hamming" => Ok(Box::new(HammingDilation)),
                        "trivial" => Ok(Box::new(TrivialRelaxation)),
                        n => Err(unknown_op(n, "pl", &["hamming", "trivial"])),
                    }
                }),
            })
        }
        Document::Horn(_) => {
            let docs: Vec<_> = docs
                .into_iter()
                .map(|d| match d {
                    Document::Horn(d) => d,
                    _ => unreachable!("unified"),
                })
                .collect();
            let sys = docs[0].system();
            let checker = sys.clone();
            task.run(Env {
                sem: Semantics::new(sys),
                kbs: docs.iter().map(|d| KnowledgeBase::new(d.sentences.clone())).collect(),
                parse_sentence: Box::new(move |t| {
                    let text = format!("logic: horn\natoms: {}\n---\n{t}\n", {
                        let atoms: Vec<&str> =
                            checker.signature().atoms().iter().map(|a| &**a).collect();
                        atoms.join(", ")
                    });
                    let sentence = match io::parse(&text).map_err(parse_failure)? {
                        Document::Horn(d) if d.sentences.len() == 1 => d.sentences[0].clone(),
                        _ => {
                            return Err(Failure::Usage("expected exactly one Horn sentence".into()))
                        }
                    };
                    check(&checker, sentence)
                }),
                relaxation: Box::new(|spec, _| -> Result<Box<dyn Relaxation<HornSystem>>, Failure> {
                    match spec.name.as_str() {
                        "horn" => Ok(Box::new(HornRelaxation)),
                        "trivial" => Ok(Box::new(TrivialRelaxation)),
                        n => Err(unknown_op(n, "horn", &["horn", "trivial"])),
                    }
                }),
            })
        }
        Document::Fol(_) => {
            let docs: Vec<_> = docs
                .into_iter()
                .map(|d| match d {
                    Document::Fol(d) => d,
                    _ => unreachable!("unified"),
                })
                .collect();
            let sys = docs[0].system(bound)?;
            let sig = docs[0].signature.clone();
            task.run(Env {
                sem: Semantics::new(sys),
                kbs: docs.iter().map(|d| KnowledgeBase::new(d.sentences.clone())).collect(),
                parse_sentence: Box::new(move |t| {
                    prenex(&parse_fol(t).map_err(parse_failure)?, &sig).map_err(parse_failure)
                }),
                relaxation: Box::new(|spec, _| -> Result<Box<dyn Relaxation<_>>, Failure> {
                    match spec.name.as_str() {
                        "quantifier" => Ok(Box::new(QuantifierRelaxation)),
                        "trivial" => Ok(Box::new(TrivialRelaxation)),
                        n => Err(unknown_op(n, "fol", &["quantifier", "trivial"])),
                    }
                }),
            })
        }
        Document::Dl(_) => {
            let docs: Vec<_> = docs
                .into_iter()
                .map(|d| match d {
                    Document::Dl(d) => d,
                    _ => unreachable!("unified"),
                })
                .collect();
            let sys = docs[0].system(bound)?;
            let sig = docs[0].signature.clone();
            let sig2 = sig.clone();
            let doc_exceptions = docs[0].exceptions.clone();
            let old: Vec<Axiom> = docs[0].axioms.clone();
            let new: Vec<Axiom> = docs.last().expect("one document").axioms.clone();
            let fragment = docs[0].fragment;
            let checker = sys.clone();
            task.run(Env {
                sem: Semantics::new(sys),
                kbs: docs.iter().map(|d| KnowledgeBase::new(d.axioms.clone())).collect(),
                parse_sentence: Box::new(move |t| {
                    let ax = parse_axiom(t).map_err(parse_failure)?;
                    sig.check_axiom(&ax).map_err(parse_failure)?;
                    if ax.fragment() > fragment {
                        return Err(Failure::Parse(Error::Fragment {
                            operation: "sentence".into(),
                            required: ax.fragment().to_string(),
                            found: fragment.to_string(),
                        }));
                    }
                    check(&checker, ax)
                }),
                relaxation: Box::new(
                    move |spec, sem| -> Result<Box<dyn Relaxation<DlSystem>>, Failure> {
                        if spec.name == "trivial" {
                            return Ok(Box::new(TrivialRelaxation));
                        }
                        let exceptions: Vec<Concept> = match &spec.exceptions {
                            None => doc_exceptions.clone(),
                            Some(list) => list
                                .iter()
                                .map(|s| {
                                    let c = parse_concept(s).map_err(parse_failure)?;
                                    sig2.check_concept(&c).map_err(parse_failure)?;
                                    Ok(c)
                                })
                                .collect::<Result<_, Failure>>()?,
                        };
                        let op = concept_op(&spec.name, &exceptions, spec.k).map_err(|e| {
                            Failure::Usage(format!("{e}; `trivial` is also accepted"))
                        })?;
                        let axioms: &[Axiom] = match (spec.context, op.kind()) {
                            (ContextChoice::None, _) => &[],
                            (ContextChoice::Old, _) | (ContextChoice::Default, OpKind::Retract) => {
                                &old
                            }
                            (ContextChoice::New, _) | (ContextChoice::Default, OpKind::Relax) => {
                                &new
                            }
                        };
                        let ctx = Context::of(sem, axioms)?;
                        Ok(Box::new(FormulaRelaxation::new(op, ctx)))
                    },
                ),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Entry point.

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    io::parse(&text).map_err(|e| match e {
        Error::Syntax { .. }
        | Error::UnknownSymbol { .. }
        | Error::Signature(_)
        | Error::Fragment { .. } => Failure::Parse(annotate(e, path)),
        other => Failure::Semantic(other),
    })
}

fn annotate(e: Error, path: &Path) -> Error {
    match e {
        Error::Syntax {
            line,
            column,
            message,
        } => Error::Syntax {
            line,
            column,
            message: format!("{message} (in {})", path.display()),
        },
        other => other,
    }
}

fn op_spec(args: &OpArgs, file: &FileConfig) -> Result<OpSpec, Failure> {
    let name = args
        .op
        .clone()
        .or_else(|| file.run.op.clone())
        .ok_or_else(|| Failure::Usage("no operator given (use --op or `op` in the config)".into()))?;
    let set = args.exceptions.clone().or_else(|| file.run.exceptions.clone());
    let exceptions = match set {
        None => None,
        Some(n) => Some(file.exception_set(&n).map_err(|e| Failure::Usage(e.to_string()))?.to_vec()),
    };
    let context = match (args.context, file.run.context.as_deref()) {
        (Some(c), _) => c,
        (None, None) | (None, Some("default")) => ContextChoice::Default,
        (None, Some("old")) => ContextChoice::Old,
        (None, Some("new")) => ContextChoice::New,
        (None, Some("none")) => ContextChoice::None,
        (None, Some(other)) => {
            return Err(Failure::Usage(format!("unknown context `{other}`")));
        }
    };
    Ok(OpSpec {
        name,
        k: args.k.or(file.run.k),
        exceptions,
        context,
    })
}

pub fn run(cli: &Cli, file: FileConfig) -> Result<Output, Failure> {
    let bound = cli.global.bound.or(file.run.bound);
    match &cli.command {
        Command::Models { kb, limit } => dispatch(vec![load(kb)?], bound, Models { limit: *limit }),
        Command::Consistent { kb } => dispatch(vec![load(kb)?], bound, Consistent),
        Command::Entails { kb, sentence } => dispatch(
            vec![load(kb)?],
            bound,
            Entails {
                sentence: sentence.clone(),
            },
        ),
        Command::Relax { kb, op, times } => dispatch(
            vec![load(kb)?],
            bound,
            Relax {
                spec: op_spec(op, &file)?,
                times: *times,
            },
        ),
        Command::Revise {
            old,
            new,
            op,
            mode,
            max_cap,
            allow_non_exhaustive,
        } => {
            let (a, b) = io::unify(&load(old)?, &load(new)?).map_err(Failure::Parse)?;
            let mode: Mode = mode
                .clone()
                .or_else(|| file.run.mode.clone())
                .unwrap_or_else(|| "coherent".into())
                .parse()
                .map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let mut config = match mode {
                Mode::Minimal => RevisionConfig::minimal(),
                Mode::Coherent => RevisionConfig::coherent(),
            };
            if let Some(c) = max_cap.or(file.run.max_cap) {
                config.max_cap = c;
            }
            if let Some(l) = file.run.superset_limit {
                config.superset_limit = l;
            }
            config.allow_non_exhaustive =
                *allow_non_exhaustive || file.run.allow_non_exhaustive.unwrap_or(false);
            dispatch(
                vec![a, b],
                bound,
                Revise {
                    spec: op_spec(op, &file)?,
                    config,
                },
            )
        }
        Command::CheckAgm {
            operator_config,
            atoms,
            sentences,
        } => {
            let op_file = FileConfig::load(operator_config).map_err(|e| Failure::Usage(e.to_string()))?;
            check_agm(&op_file, &file, *atoms, *sentences)
        }
    }
}

// ---------------------------------------------------------------------------
// AGM suite.

const ATOM_NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

/// Every Horn clause over the atoms, as a one-clause sentence, plus the
/// tautology.
fn horn_pool(atoms: &[&str]) -> Vec<HornSentence> {
    let n = atoms.len();
    let mut out = Vec::new();
    for body in 0usize..1 << n {
        for (h, head) in atoms.iter().enumerate() {
            if body >> h & 1 == 1 {
                continue;
            }
            let names = (0..n).filter(|j| body >> j & 1 == 1).map(|j| atoms[j]);
            out.push(HornSentence::new([HornClause::new(names, head)]));
        }
    }
    out
}

fn agm_report<S: SatisfactionSystem + 'static>(
    sem: Semantics<S>,
    rho: Box<dyn Relaxation<S>>,
    pool: Vec<S::Sentence>,
    max_size: usize,
    config: RevisionConfig,
) -> Result<Output, Failure> {
    let corpus = knowledge_bases(&pool, max_size);
    let op = |t: &KnowledgeBase<S::Sentence>, tn: &KnowledgeBase<S::Sentence>| {
        revise(&sem, &*rho, t, tn, &config).map(|r| r.revised)
    };
    let report = check_postulates(&sem, &op, &corpus)?;
    let derivation = check_g4_derivation(&sem, &op, &corpus)?;
    let mut text = format!(
        "corpus: {} knowledge bases from {} sentences\n",
        corpus.len(),
        pool.len()
    );
    for o in report.outcomes.iter().chain(&derivation.outcomes) {
        let _ = writeln!(
            text,
            "{:<14} {:<6} {}/{} pass",
            o.postulate.label(),
            if o.holds() { "holds" } else { "fails" },
            o.checked - o.failed,
            o.checked
        );
    }
    let json = extend(
        header("check-agm", &sem),
        json!({
            "op": rho.name(),
            "mode": config.mode,
            "corpus": corpus.len(),
            "pool": names(&pool),
            "postulates": report,
            "g4_derivation": derivation,
        }),
    );
    Ok(Output { json, text })
}

fn check_agm(
    op_file: &FileConfig,
    global: &FileConfig,
    atoms: Option<usize>,
    sentences: Option<usize>,
) -> Result<Output, Failure> {
    let pick = |a: &Option<String>, b: &Option<String>| a.clone().or_else(|| b.clone());
    let logic = pick(&op_file.agm.logic, &global.agm.logic).unwrap_or_else(|| "pl".into());
    let n = atoms
        .or(op_file.agm.atoms)
        .or(global.agm.atoms)
        .unwrap_or(2);
    if n == 0 || n > ATOM_NAMES.len() {
        return Err(Failure::Usage(format!(
            "--atoms must be between 1 and {}",
            ATOM_NAMES.len()
        )));
    }
    let max_size = sentences
        .or(op_file.agm.sentences)
        .or(global.agm.sentences)
        .unwrap_or(2);
    let depth = op_file.agm.pool_depth.or(global.agm.pool_depth).unwrap_or(2);
    let mode: Mode = pick(&op_file.run.mode, &global.run.mode)
        .unwrap_or_else(|| "coherent".into())
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut config = match mode {
        Mode::Minimal => RevisionConfig::minimal(),
        Mode::Coherent => RevisionConfig::coherent(),
    };
    if let Some(c) = op_file.run.max_cap.or(global.run.max_cap) {
        config.max_cap = c;
    }
    let op = pick(&op_file.run.op, &global.run.op);
    let names = &ATOM_NAMES[..n];
    match logic.as_str() {
        "pl" => {
            let sys = PlSystem::with_atoms(names.iter().copied())?;
            let pool = sentence_pool(sys.signature().atoms(), depth);
            let rho: Box<dyn Relaxation<PlSystem>> = match op.as_deref().unwrap_or("hamming") {
                "hamming" => Box::new(HammingDilation),
                "trivial" => Box::new(TrivialRelaxation),
                other => return Err(unknown_op(other, "pl", &["hamming", "trivial"])),
            };
            agm_report(Semantics::new(sys), rho, pool, max_size, config)
        }
        "horn" => {
            let sys = HornSystem::with_atoms(names.iter().copied())?;
            let pool = horn_pool(names);
            let rho: Box<dyn Relaxation<HornSystem>> = match op.as_deref().unwrap_or("horn") {
                "horn" => Box::new(HornRelaxation),
                "trivial" => Box::new(TrivialRelaxation),
                other => return Err(unknown_op(other, "horn", &["horn", "trivial"])),
            };
            agm_report(Semantics::new(sys), rho, pool, max_size, config)
        }
        other => Err(Failure::Usage(format!(
            "check-agm supports the pl and horn logics, not `{other}`"
        ))),
    }
}
