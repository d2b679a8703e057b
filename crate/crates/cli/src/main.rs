use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gogsep_core::dot::{gog_to_dot, morphism_to_dot};
use gogsep_core::fuzz::seeded_loops;
use gogsep_core::schema::{from_json, parse_loop, to_json};
use gogsep_core::verifier::crosscheck;
use gogsep_core::{
    complete_to_cover, cover_index, enlarge, exclusion_sets, fold_generators, kurosh_rank, separate_element,
    verify_certificate_with, CertificateDoc, CosetConvention, DecoratedMorphism, Element, Error, GogDoc, GraphOfGroups,
    LoadOptions, MorphismDoc, SeparateOptions, TieBreak, VerifyOptions, VertexId, Word,
};

#[derive(Parser)]
#[command(
    name = "gogsep",
    version,
    about = "Separate elements from subgroups of graphs of groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Seed for pairing cosets during completion; lexicographic when absent.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run coset enumeration with at most this many cosets when verifying.
    #[arg(long, global = true)]
    coset_cap: Option<usize>,
    /// Coset convention used for decorations in written documents.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Right)]
    convention: Convention,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest finite vertex group accepted from a document.
    #[arg(long, global = true, default_value_t = gogsep_core::group::DEFAULT_ORDER_CAP)]
    max_order: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Right,
    PaperLeft,
}

impl From<Convention> for CosetConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Right => CosetConvention::Right,
            Convention::PaperLeft => CosetConvention::PaperLeft,
        }
    }
}

#[derive(Args)]
struct Subject {
    /// Graph of groups document.
    #[arg(long)]
    input: PathBuf,
    /// Subgroup generators as a JSON array of words; defaults to the
    /// document's `subgroup` field.
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Fold subgroup generators into an immersion.
    Fold(Subject),
    /// Kurosh rank of a folded subgroup.
    Rank {
        #[command(flatten)]
        subject: Subject,
    },
    /// Degree of a cover.
    Index {
        #[arg(long)]
        immersion: PathBuf,
    },
    /// Complete an immersion to a finite cover.
    Complete {
        #[arg(long)]
        immersion: PathBuf,
    },
    /// Enlarge vertex subgroups to finite index, avoiding the exclusion sets.
    Enlarge {
        #[arg(long)]
        immersion: PathBuf,
        /// Extra exclusions: JSON object from domain vertex index to elements.
        #[arg(long)]
        exclude: Option<String>,
    },
    /// Build a separation certificate for an element outside the subgroup.
    Separate {
        #[command(flatten)]
        subject: Subject,
        /// The element to separate, as a JSON word.
        #[arg(long)]
        element: String,
    },
    /// Check a separation certificate and print its transcript.
    Verify {
        certificate: Option<PathBuf>,
        #[arg(long = "input")]
        input: Option<PathBuf>,
    },
    /// Decide membership of a word in the subgroup of an immersion.
    Member {
        #[arg(long)]
        immersion: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Graphviz output for a graph of groups, morphism or certificate.
    ExportDot { file: PathBuf },
    /// Compare membership through folding with a bounded brute-force search.
    Crosscheck {
        #[command(flatten)]
        subject: Subject,
        /// Longest loop examined, in syllables.
        #[arg(long, default_value_t = 5)]
        syllables: usize,
        /// Number of random generators when none are given.
        #[arg(long, default_value_t = 2)]
        random_gens: usize,
        /// Element bound for infinite vertex groups.
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Schema { .. } | Error::Parse { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn schema_failure(pointer: &str, message: impl ToString) -> Failure {
    Error::Schema {
        pointer: pointer.to_owned(),
        message: message.to_string(),
    }
    .into()
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| schema_failure("", format!("cannot read {}: {e}", path.display())))
}

fn opts(g: &Global) -> LoadOptions {
    LoadOptions { order_cap: g.max_order }
}

fn load_subject(s: &Subject, g: &Global) -> Result<(Arc<GraphOfGroups>, Vec<Word>), Failure> {
    let doc = GogDoc::parse(&read(&s.input)?)?;
    let gog = Arc::new(doc.build(opts(g))?);
    let gens = match &s.gens {
        Some(text) => {
            let words: Vec<Vec<String>> = from_json(text).map_err(|e| prefix("--gens", e))?;
            words
                .iter()
                .enumerate()
                .map(|(i, w)| parse_loop(&gog, gog.base(), w, &format!("--gens/{i}")))
                .collect::<Result<Vec<_>, _>>()?
        }
        None => doc.subgroup_words(&gog)?,
    };
    Ok((gog, gens))
}

fn prefix(flag: &str, e: Error) -> Error {
    match e {
        Error::Schema { pointer, message } => Error::Schema {
            pointer: format!("{flag}{pointer}"),
            message,
        },
        e => e,
    }
}

fn load_immersion(path: &Path, g: &Global) -> Result<DecoratedMorphism, Failure> {
    Ok(MorphismDoc::parse(&read(path)?)?.build(opts(g))?)
}

fn morphism_json(m: &DecoratedMorphism, g: &Global) -> String {
    to_json(&MorphismDoc::from_morphism(m, g.convention.into()))
}

fn word_flag(gog: &GraphOfGroups, start: VertexId, text: &str, flag: &str) -> Result<Word, Failure> {
    let toks: Vec<String> = from_json(text).map_err(|e| prefix(flag, e))?;
    Ok(parse_loop(gog, Some(start), &toks, flag)?)
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Fold(s) => {
            let (gog, gens) = load_subject(s, g)?;
            let base = gog.base().expect("documents name a base");
            let m = fold_generators(&gog, base, &gens)?;
            Ok((morphism_json(&m, g), 0))
        }
        Command::Rank { subject } => {
            let (gog, gens) = load_subject(subject, g)?;
            let base = gog.base().expect("documents name a base");
            let m = fold_generators(&gog, base, &gens)?;
            let k = kurosh_rank(&m, m.base().expect("folded wedge has a base"));
            let out = json!({ "kappa": k.kappa, "reduced": k.reduced });
            Ok((format!("{out}\n"), 0))
        }
        Command::Index { immersion } => {
            let m = load_immersion(immersion, g)?;
            Ok((format!("{}\n", cover_index(&m)?), 0))
        }
        Command::Complete { immersion } => {
            let m = load_immersion(immersion, g)?;
            let (cover, degree) = complete_to_cover(&m, TieBreak::from_seed(g.seed))?;
            eprintln!("degree {degree}");
            Ok((morphism_json(&cover, g), 0))
        }
        Command::Enlarge { immersion, exclude } => {
            let m = load_immersion(immersion, g)?;
            let mut extra: BTreeMap<VertexId, Vec<Element>> = BTreeMap::new();
            if let Some(text) = exclude {
                let raw: BTreeMap<String, Vec<String>> = from_json(text).map_err(|e| prefix("--exclude", e))?;
                for (k, xs) in raw {
                    let at = format!("--exclude/{k}");
                    let v = k
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v < m.vertex_count())
                        .ok_or_else(|| schema_failure(&at, "not a domain vertex index"))?;
                    let group = m.vertex_group(VertexId(v));
                    let parsed = xs
                        .iter()
                        .enumerate()
                        .map(|(i, x)| {
                            group
                                .parse_element(x)
                                .map_err(|e| schema_failure(&format!("{at}/{i}"), e))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    extra.insert(VertexId(v), parsed);
                }
            }
            let xs = exclusion_sets(&m, &extra)?;
            Ok((morphism_json(&enlarge(&m, &xs)?, g), 0))
        }
        Command::Separate { subject, element } => {
            let (gog, gens) = load_subject(subject, g)?;
            let base = gog.base().expect("documents name a base");
            let x = word_flag(&gog, base, element, "--element")?;
            let opts = SeparateOptions {
                tie: TieBreak::from_seed(g.seed),
            };
            let cert = separate_element(&gog, base, &gens, &x, opts)?;
            eprintln!("degree {}", cert.degree);
            Ok((
                to_json(&CertificateDoc::from_certificate(&cert, g.convention.into())),
                0,
            ))
        }
        Command::Verify { certificate, input } => {
            let path = certificate
                .as_ref()
                .or(input.as_ref())
                .ok_or_else(|| schema_failure("", "no certificate given"))?;
            let cert = CertificateDoc::parse(&read(path)?)?.build(opts(g))?;
            let v = verify_certificate_with(&cert, VerifyOptions { coset_cap: g.coset_cap });
            let mut out = String::new();
            for c in &v.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("{mark} {}: {}\n", c.name, c.detail));
            }
            let ok = v.passed();
            out.push_str(if ok {
                "certificate verified\n"
            } else {
                "certificate rejected\n"
            });
            Ok((out, if ok { 0 } else { 1 }))
        }
        Command::Member { immersion, word } => {
            let m = load_immersion(immersion, g)?;
            let base = m.base().expect("documents name a base");
            let w = word_flag(m.target(), m.phi_vertex(base), word, "--word")?;
            Ok((format!("{}\n", m.subgroup_member(base, &w)?), 0))
        }
        Command::ExportDot { file } => {
            let text = read(file)?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| schema_failure("", e))?;
            let dot = if value.get("cover").is_some() {
                morphism_to_dot(&CertificateDoc::parse(&text)?.build(opts(g))?.cover)
            } else if value.get("target").is_some() {
                morphism_to_dot(&MorphismDoc::parse(&text)?.build(opts(g))?)
            } else {
                gog_to_dot(&GogDoc::parse(&text)?.build(opts(g))?)
            };
            Ok((dot, 0))
        }
        Command::Crosscheck {
            subject,
            syllables,
            random_gens,
            bound,
        } => {
            let (gog, mut gens) = load_subject(subject, g)?;
            let base = gog.base().expect("documents name a base");
            if gens.is_empty() {
                gens = seeded_loops(&gog, base, *random_gens, 5, g.seed.unwrap_or(0));
            }
            let m = fold_generators(&gog, base, &gens)?;
            let r = crosscheck(
                &m,
                m.base().expect("folded wedge has a base"),
                &gens,
                *syllables,
                Some(*bound),
            )?;
            let out = json!({
                "generators": gens.iter().map(|w| gog.format_word(w)).collect::<Vec<_>>(),
                "checked": r.checked,
                "members": r.members,
                "unconfirmed": r.unconfirmed,
                "counterexample": r.counterexample.as_ref().map(|w| gog.format_word(w)),
            });
            let code = if r.counterexample.is_some() { 1 } else { 0 };
            Ok((format!("{}\n", serde_json::to_string_pretty(&out).expect("json")), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            match &cli.global.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
