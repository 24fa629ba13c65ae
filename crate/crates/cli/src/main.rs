//! `algaut`: command-line access to the algebraic automata toolkit.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use algaut::algebra::{enumerate_algebras, enumerate_up_to, AlgMorphism, FinAlgebra, VarietyTag};
use algaut::automata::{language_of_state, Coalgebra, LAlgebra};
use algaut::duality::{dual_morphism, dual_object, verify_preduality, PairTag};
use algaut::lab::{self, check_eilenberg_simple, languages_of_simple_pseudovariety};
use algaut::langlib::{alphabet, alphabet_of, generated_local_variety, parse_regex, DMonoidMorphismFree, RegularLanguage};
use algaut::monoids::{dual_generated_monoid, DMonoid};
use algaut::preimage::{algebra_preimage, check_preimage_laws, coalgebra_preimage, Corpus};
use algaut::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use render::{Output, VarietyOut};

#[derive(Parser)]
#[command(name = "algaut", version, about = "Finite algebras, enriched automata, regular languages and D-monoids")]
struct Cli {
    /// Print the structured (JSON) form on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Print Graphviz DOT where the output is an automaton, language or algebra.
    #[arg(long, global = true, conflicts_with = "json")]
    dot: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dual of an algebra or morphism document.
    Dualize {
        #[arg(long)]
        pair: PairTag,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Run the exhaustive duality checks instead.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Canonical minimal automaton of a language.
    Minimize {
        #[command(flatten)]
        lang: LangInput,
        /// Read a coalgebra document and take the language of this state.
        #[arg(long)]
        state: Option<usize>,
    },
    /// Left or right derivative of a language by a letter.
    Deriv {
        #[command(flatten)]
        lang: LangInput,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        letter: char,
    },
    /// Local variety generated by seed languages.
    Localvariety {
        /// Pair or C-side tag: BA, DL01, JSL0, VECT2, BR.
        #[arg(long)]
        tag: PairTag,
        /// File with one regex per line.
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long)]
        regex: Vec<String>,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Dual Σ-generated D-monoid of the local variety of one language (its
    /// syntactic monoid up to the left-right convention).
    Syntactic {
        #[arg(long)]
        tag: PairTag,
        #[arg(long)]
        regex: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Preimage of an automaton along a morphism of free monoids.
    Preimage {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Side2::C)]
        side: Side2,
    },
    /// Languages of the pseudovariety generated by a D-monoid, at one alphabet.
    Varlang {
        #[command(flatten)]
        monoid: MonoidInput,
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        pair: Option<PairTag>,
    },
    /// Language membership against division, per sample language.
    EilenbergCheck {
        #[command(flatten)]
        monoid: MonoidInput,
        /// Lines of `regex alphabet`; built-in samples when absent.
        #[arg(long)]
        samples: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        #[arg(long)]
        pair: Option<PairTag>,
    },
    /// Preimage laws over a corpus.
    CheckLaws {
        /// Corpus document; the built-in corpus when absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated subset of lrev,cpre,proppre,lempre,qfcomp,frcom,tpre.
        #[arg(long, value_delimiter = ',')]
        laws: Vec<String>,
        /// Keep only seeds whose minimal automaton has at most this many states.
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Algebras of one size up to isomorphism.
    Enumerate {
        #[arg(long)]
        tag: VarietyTag,
        #[arg(long)]
        size: usize,
        /// Include every size from 1.
        #[arg(long)]
        up_to: bool,
    },
}

#[derive(Args)]
struct LangInput {
    #[arg(long, conflicts_with = "input")]
    regex: Option<String>,
    #[arg(long)]
    alphabet: Option<String>,
    /// Language document (or coalgebra document with --state).
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct MonoidInput {
    /// D-monoid document.
    #[arg(long, conflicts_with = "builtin")]
    monoid: Option<PathBuf>,
    /// One of trivial, order2, nil3 (needs --tag).
    #[arg(long, requires = "tag")]
    builtin: Option<String>,
    /// D-side tag for --builtin: SET, POS, JSL0, VECT2, SET_STAR.
    #[arg(long)]
    tag: Option<VarietyTag>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side2 {
    C,
    D,
}

/// Failure modes mapped to exit statuses.
#[derive(Debug)]
enum Fail {
    Law(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Cap(_) | Error::Bound(_) => Fail::Cap(e.to_string()),
            Error::Disagreement(_) => Fail::Law(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Res<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn letters(explicit: Option<&str>, regex: &str) -> Vec<char> {
    match explicit {
        Some(a) => alphabet(a),
        None => {
            let a = alphabet_of(regex);
            if a.is_empty() {
                vec!['a']
            } else {
                a
            }
        }
    }
}

fn language(input: &LangInput, state: Option<usize>) -> Res<RegularLanguage> {
    match (&input.regex, &input.input) {
        (Some(r), None) => Ok(parse_regex(r, &letters(input.alphabet.as_deref(), r))?),
        (None, Some(p)) => match state {
            Some(s) => {
                let q: Coalgebra = read_json(p)?;
                if s >= q.size() {
                    return Err(Fail::Usage(format!("state {s} is outside the carrier")));
                }
                Ok(language_of_state(&q, s))
            }
            None => read_json(p),
        },
        _ => Err(Fail::Usage("give exactly one of --regex and --in".into())),
    }
}

fn monoid(m: &MonoidInput) -> Res<DMonoid> {
    match (&m.monoid, &m.builtin, m.tag) {
        (Some(p), None, _) => read_json(p),
        (None, Some(name), Some(tag)) => Ok(match name.as_str() {
            "trivial" => lab::trivial_monoid(tag)?,
            "order2" => lab::order2_group(tag)?,
            "nil3" => lab::nil3_monoid(tag)?,
            other => return Err(Fail::Usage(format!("unknown built-in monoid {other:?}"))),
        }),
        _ => Err(Fail::Usage("give --monoid FILE or --builtin NAME --tag TAG".into())),
    }
}

fn pair_for(explicit: Option<PairTag>, m: &DMonoid) -> Res<PairTag> {
    match explicit {
        Some(p) => Ok(p),
        None => PairTag::MAIN
            .into_iter()
            .find(|p| p.d_tag() == m.tag())
            .ok_or_else(|| Fail::Usage(format!("no pair has {} on its D side; pass --pair", m.tag()))),
    }
}

fn samples(path: Option<&Path>) -> Res<Vec<(String, String)>> {
    let Some(p) = path else { return Ok(lab::default_samples()) };
    let mut out = Vec::new();
    for line in read(p)?.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(r), Some(a), None) => out.push((r.to_string(), a.to_string())),
            (Some(r), None, None) => out.push((r.to_string(), letters(None, r).iter().collect())),
            _ => return Err(Fail::Usage(format!("bad sample line {line:?}"))),
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Res<Output> {
    let out = match cli.cmd {
        Cmd::Dualize { pair, input, check, max_size } => {
            if check {
                let r = verify_preduality(pair, max_size)?;
                Output::Preduality(pair, max_size, r)
            } else {
                let path = input.ok_or_else(|| Fail::Usage("--in is required unless --check is given".into()))?;
                let text = read(&path)?;
                let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Fail::Usage(e.to_string()))?;
                if value.get("source").is_some() {
                    let h: AlgMorphism = serde_json::from_value(value).map_err(|e| Fail::Usage(e.to_string()))?;
                    Output::Morphism(dual_morphism(pair, &h)?)
                } else {
                    let a: FinAlgebra = serde_json::from_value(value).map_err(|e| Fail::Usage(e.to_string()))?;
                    Output::Algebra(dual_object(pair, &a)?)
                }
            }
        }
        Cmd::Minimize { lang, state } => Output::Language(language(&lang, state)?),
        Cmd::Deriv { lang, side, letter } => {
            let l = language(&lang, None)?;
            Output::Language(match side {
                Side::Left => l.left_deriv(letter)?,
                Side::Right => l.right_deriv(letter)?,
            })
        }
        Cmd::Localvariety { tag, seeds, regex, alphabet: alpha } => {
            let mut texts = regex;
            if let Some(p) = seeds {
                texts.extend(read(&p)?.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from));
            }
            if texts.is_empty() {
                return Err(Fail::Usage("no seed languages given".into()));
            }
            let sigma = match &alpha {
                Some(a) => alphabet(a),
                None => letters(None, &texts.concat()),
            };
            let langs = texts.iter().map(|r| parse_regex(r, &sigma)).collect::<algaut::Result<Vec<_>>>()?;
            let v = generated_local_variety(tag.c_tag(), &langs)?;
            Output::Variety(VarietyOut::new(v.coalgebra, v.languages))
        }
        Cmd::Syntactic { tag, regex, alphabet: alpha } => {
            let l = parse_regex(&regex, &letters(alpha.as_deref(), &regex))?;
            let v = generated_local_variety(tag.c_tag(), &[l])?;
            Output::Monoid(dual_generated_monoid(&v.coalgebra)?)
        }
        Cmd::Preimage { automaton, map, side } => {
            let f: DMonoidMorphismFree = read_json(&map)?;
            match side {
                Side2::C => Output::Coalgebra(coalgebra_preimage(&read_json(&automaton)?, &f)?),
                Side2::D => {
                    let a: LAlgebra = read_json(&automaton)?;
                    Output::LAlgebra(algebra_preimage(&a, &f)?)
                }
            }
        }
        Cmd::Varlang { monoid: m, alphabet: alpha, pair } => {
            let d = monoid(&m)?;
            let pair = pair_for(pair, &d)?;
            let v = languages_of_simple_pseudovariety(&d, &alphabet(&alpha), pair)?;
            Output::Variety(VarietyOut::new(v.coalgebra, v.languages))
        }
        Cmd::EilenbergCheck { monoid: m, samples: s, nmax, pair } => {
            let d = monoid(&m)?;
            let pair = pair_for(pair, &d)?;
            Output::Eilenberg(check_eilenberg_simple(&d, pair, &samples(s.as_deref())?, nmax)?)
        }
        Cmd::CheckLaws { corpus, laws, max_states } => {
            let mut c: Corpus = match corpus {
                Some(p) => read_json(&p)?,
                None => Corpus::default_corpus(),
            };
            if let Some(m) = max_states {
                let mut kept = Vec::new();
                for s in c.seeds {
                    if parse_regex(&s.regex, &alphabet(&s.alphabet))?.num_states() <= m {
                        kept.push(s);
                    }
                }
                c.seeds = kept;
            }
            let names: Vec<&str> = laws.iter().map(String::as_str).collect();
            Output::Laws(check_preimage_laws(&c, &names)?)
        }
        Cmd::Enumerate { tag, size, up_to } => {
            let list = if up_to { enumerate_up_to(tag, size)? } else { enumerate_algebras(tag, size)? };
            Output::Algebras(list)
        }
    };
    Ok(out)
}

fn emit<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, dot_out) = (cli.json, cli.dot);
    match run(cli) {
        Ok(out) => {
            let text = if json {
                out.json()
            } else if dot_out {
                match out.dot() {
                    Some(d) => d,
                    None => {
                        eprintln!("error: this output has no DOT form");
                        return ExitCode::from(2);
                    }
                }
            } else {
                out.text()
            };
            print!("{text}");
            ExitCode::from(out.status())
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Law(m)) => {
            eprintln!("failure: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use algaut::dot;

    #[test]
    fn parses_every_subcommand() {
        for args in [
            "algaut dualize --pair JSL0 --in x.json",
            "algaut dualize --pair BA --check --max-size 4",
            "algaut minimize --regex (ab)*",
            "algaut deriv --side left --letter a --regex ab",
            "algaut localvariety --tag BA --regex (aa)*",
            "algaut syntactic --tag BA --regex (ab)*",
            "algaut preimage --automaton q.json --map f.json --side D",
            "algaut varlang --builtin order2 --tag SET --alphabet a --pair BA",
            "algaut eilenberg-check --builtin nil3 --tag POS --nmax 2",
            "algaut check-laws --laws lrev,cpre --max-states 3",
            "algaut enumerate --tag DL01 --size 4 --json",
        ] {
            assert!(Cli::try_parse_from(args.split(' ')).is_ok(), "{args}");
        }
        assert!(Cli::try_parse_from(["algaut", "deriv", "--side", "up", "--letter", "a"]).is_err());
    }

    #[test]
    fn error_classes() {
        assert!(matches!(Fail::from(Error::Cap("x".into())), Fail::Cap(_)));
        assert!(matches!(Fail::from(Error::Syntax { pos: 0, msg: "x".into() }), Fail::Usage(_)));
        assert!(matches!(Fail::from(Error::Disagreement("x".into())), Fail::Law(_)));
    }

    #[test]
    fn sample_lines() {
        let dir = std::env::temp_dir().join(format!("algaut-samples-{}", std::process::id()));
        fs::write(&dir, "# comment\n(aa)* a\n\na*b*\n").unwrap();
        let s = samples(Some(&dir)).unwrap();
        fs::remove_file(&dir).unwrap();
        assert_eq!(s, vec![("(aa)*".into(), "a".into()), ("a*b*".into(), "ab".into())]);
    }

    #[test]
    fn dot_available_for_graphs() {
        let l = parse_regex("a*", &['a']).unwrap();
        assert!(Output::Language(l).dot().unwrap().starts_with("digraph"));
        assert!(dot::hasse_dot(&FinAlgebra::set(1)).contains("hasse"));
    }
}
