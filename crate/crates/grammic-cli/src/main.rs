//! Command-line front end: every operation of the library behind stateless
//! subcommands. Exit codes encode the mathematical answer for predicates
//! (0 = equivalent, 1 = inequivalent), 2 flags usage errors, 3 a blown
//! search budget.

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;

use grammic::{
    build_tableau, column_normal_form, erase, grammic_eq3, grammic_eq_bounded, plactic_eq,
    project, row_normal_form, Alphabet, GrammicOutcome, Relation, RowVector, Rule4Variant,
    RuleSet, SearchLimits, Word,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "grammic",
    version,
    about = "Young tableaux, plactic and grammic equivalence, rewriting, and class exploration"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Node budget for the graph searches and enumerations.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Young tableau of a word with its row and column normal forms.
    Tableau {
        word: String,
        #[arg(long)]
        alphabet: Option<u8>,
    },
    /// Print the row or column normal form of a word.
    #[command(group(ArgGroup::new("which").required(true).args(["row", "column"])))]
    Nf {
        #[arg(long)]
        row: bool,
        #[arg(long)]
        column: bool,
        word: String,
        #[arg(long)]
        alphabet: Option<u8>,
    },
    /// Decide equivalence of two words; exit code 0 means equivalent.
    #[command(group(
        ArgGroup::new("relation")
            .required(true)
            .args(["plactic", "grammic", "grammic3", "rewrite"])
    ))]
    Eq {
        #[arg(long)]
        plactic: bool,
        #[arg(long)]
        grammic: bool,
        /// Constant-time three-letter decider.
        #[arg(long)]
        grammic3: bool,
        /// Rewrite-graph search under a named rule set
        /// (knuth | grammic3 | bdac | badc).
        #[arg(long, value_name = "RULESET")]
        rewrite: Option<String>,
        u: String,
        v: String,
        #[arg(long)]
        alphabet: Option<u8>,
    },
    /// Act on a row vector by a word.
    Act {
        word: String,
        /// Starting vector, comma-separated: x1,...,xk.
        #[arg(long)]
        vector: String,
        #[arg(long)]
        alphabet: Option<u8>,
    },
    /// Find a rewrite derivation connecting two words; exit code 1 if none.
    Derive {
        u: String,
        v: String,
        /// Rule set: knuth | grammic3 | bdac | badc.
        #[arg(long, default_value = "grammic3")]
        rules: String,
        #[arg(long)]
        alphabet: Option<u8>,
    },
    /// Print the six exponents of the three-letter row normal form.
    Params { word: String },
    /// Enumerate congruence classes of all words of one length.
    Classes {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        alphabet: u8,
        /// plactic | grammic | rewrite:<ruleset>.
        #[arg(long)]
        relation: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Project a word onto a subalphabet (relabeled to 1..=|letters|).
    Project {
        /// Letters to keep, comma-separated.
        #[arg(long)]
        letters: String,
        word: String,
        #[arg(long)]
        alphabet: Option<u8>,
    },
    /// Probe the four-letter candidate rules against the grammic partition.
    Conjecture4 {
        #[arg(long)]
        max_len: usize,
        /// bdac | badc | both.
        #[arg(long)]
        rule: String,
    },
}

fn letter_value(ch: char) -> Option<u8> {
    match ch {
        '1'..='9' => Some(ch as u8 - b'0'),
        'a'..='z' => Some(ch as u8 - b'a' + 1),
        _ => None,
    }
}

/// Explicit flag wins; otherwise the smallest alphabet containing every
/// letter mentioned.
fn resolve_alphabet(flag: Option<u8>, texts: &[&str]) -> grammic::Result<Alphabet> {
    match flag {
        Some(k) => Alphabet::new(k),
        None => {
            let max = texts
                .iter()
                .flat_map(|text| text.chars())
                .filter_map(letter_value)
                .max()
                .unwrap_or(1);
            Alphabet::new(max)
        }
    }
}

fn parse_csv_u64(text: &str) -> grammic::Result<Vec<u64>> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| grammic::Error::Parse {
                text: text.to_owned(),
                reason: format!("bad number {part:?}"),
            })
        })
        .collect()
}

fn parse_csv_letters(text: &str) -> grammic::Result<Vec<u8>> {
    parse_csv_u64(text)?
        .into_iter()
        .map(|value| {
            u8::try_from(value).map_err(|_| grammic::Error::Parse {
                text: text.to_owned(),
                reason: format!("letter {value} out of range"),
            })
        })
        .collect()
}

fn vector_text(v: &RowVector) -> String {
    let parts: Vec<String> = v.coords().iter().map(u64::to_string).collect();
    parts.join(",")
}

fn emit<T: serde::Serialize>(format: Format, payload: &T, text: String) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(payload).expect("valid json"))
        }
        Format::Text => println!("{text}"),
    }
}

fn run(cli: Cli) -> grammic::Result<i32> {
    let limits = SearchLimits::with_budget(cli.budget);
    match cli.command {
        Command::Tableau { word, alphabet } => {
            let alphabet = resolve_alphabet(alphabet, &[&word])?;
            let word = Word::parse(&word, alphabet)?;
            let tableau = build_tableau(&word);
            let row_nf = row_normal_form(&word);
            let col_nf = column_normal_form(&word);
            let rendered = if tableau.is_empty() {
                "(empty tableau)".to_owned()
            } else {
                tableau.render().trim_end().to_owned()
            };
            emit(
                cli.format,
                &json!({
                    "word": word,
                    "k": alphabet.size(),
                    "rows": tableau,
                    "rowNormalForm": row_nf,
                    "columnNormalForm": col_nf,
                }),
                format!("{rendered}\nrow normal form: {row_nf}\ncolumn normal form: {col_nf}"),
            );
            Ok(0)
        }
        Command::Nf {
            row,
            column: _,
            word,
            alphabet,
        } => {
            let alphabet = resolve_alphabet(alphabet, &[&word])?;
            let word = Word::parse(&word, alphabet)?;
            let nf = if row {
                row_normal_form(&word)
            } else {
                column_normal_form(&word)
            };
            emit(
                cli.format,
                &json!({
                    "word": word,
                    "k": alphabet.size(),
                    "kind": if row { "row" } else { "column" },
                    "normalForm": nf,
                }),
                nf.to_string(),
            );
            Ok(0)
        }
        Command::Eq {
            plactic,
            grammic,
            grammic3,
            rewrite,
            u,
            v,
            alphabet,
        } => {
            let (relation, rules) = if plactic {
                ("plactic".to_owned(), None)
            } else if grammic {
                ("grammic".to_owned(), None)
            } else if grammic3 {
                ("grammic3".to_owned(), None)
            } else {
                let name = rewrite.expect("clap enforces the relation group");
                (format!("rewrite:{name}"), Some(name))
            };
            // Fixed-alphabet rule sets pin the alphabet themselves.
            let alphabet = match rules.as_deref() {
                Some("grammic3") => Alphabet::new(3)?,
                Some("bdac") | Some("badc") => Alphabet::new(4)?,
                _ if grammic3 => Alphabet::new(3)?,
                _ => resolve_alphabet(alphabet, &[&u, &v])?,
            };
            let u = Word::parse(&u, alphabet)?;
            let v = Word::parse(&v, alphabet)?;
            let mut payload = json!({
                "relation": relation,
                "k": alphabet.size(),
                "u": u,
                "v": v,
            });
            let mut detail = String::new();
            let equivalent = if plactic {
                plactic_eq(&u, &v)?
            } else if grammic3 {
                grammic_eq3(&u, &v)?
            } else if let Some(name) = rules {
                grammic::rewrite_eq(&u, &v, &RuleSet::by_name(&name, alphabet)?, limits)?
            } else {
                match grammic_eq_bounded(&u, &v)? {
                    GrammicOutcome::Equivalent => true,
                    GrammicOutcome::LengthMismatch { len_u, len_v } => {
                        payload["lengthMismatch"] = json!({"u": len_u, "v": len_v});
                        detail = format!("\nlength mismatch: {len_u} vs {len_v}");
                        false
                    }
                    GrammicOutcome::Witness(witness) => {
                        detail = format!(
                            "\nwitness x=({}) image_u=({}) image_v=({})",
                            vector_text(&witness.point),
                            vector_text(&witness.image_u),
                            vector_text(&witness.image_v),
                        );
                        payload["witness"] =
                            serde_json::to_value(&witness).expect("witness serializes");
                        false
                    }
                }
            };
            payload["equivalent"] = json!(equivalent);
            let verdict = if equivalent { "equivalent" } else { "inequivalent" };
            emit(cli.format, &payload, format!("{verdict}{detail}"));
            Ok(if equivalent { 0 } else { 1 })
        }
        Command::Act {
            word,
            vector,
            alphabet,
        } => {
            let coords = parse_csv_u64(&vector)?;
            let alphabet = match alphabet {
                Some(k) => Alphabet::new(k)?,
                None => Alphabet::new(coords.len() as u8)?,
            };
            let word = Word::parse(&word, alphabet)?;
            let start = RowVector::new(coords)?;
            let image = start.act_word(&word)?;
            emit(
                cli.format,
                &json!({
                    "word": word,
                    "k": alphabet.size(),
                    "vector": start,
                    "image": image,
                }),
                vector_text(&image),
            );
            Ok(0)
        }
        Command::Derive {
            u,
            v,
            rules,
            alphabet,
        } => {
            let alphabet = match rules.as_str() {
                "grammic3" => Alphabet::new(3)?,
                "bdac" | "badc" => Alphabet::new(4)?,
                _ => resolve_alphabet(alphabet, &[&u, &v])?,
            };
            let rules = RuleSet::by_name(&rules, alphabet)?;
            let u = Word::parse(&u, alphabet)?;
            let v = Word::parse(&v, alphabet)?;
            let has_extra = rules
                .rules()
                .iter()
                .any(|rule| rule.kind() == grammic::RuleKind::Extra);
            let found = if has_extra {
                grammic::min_extra_derivation(&u, &v, &rules, limits)?
            } else {
                grammic::derivation(&u, &v, &rules, limits)?
            };
            match found {
                None => {
                    emit(
                        cli.format,
                        &json!({
                            "start": u,
                            "end": v,
                            "ruleSet": rules.name(),
                            "derivation": null,
                        }),
                        format!("no derivation: words are not congruent under {}", rules.name()),
                    );
                    Ok(1)
                }
                Some(derivation) => {
                    let mut lines = vec![u.to_string()];
                    let mut current = u.clone();
                    for step in &derivation.steps {
                        let rule = rules.find(&step.rule).expect("search uses its own rules");
                        let (from, to) = match step.dir {
                            grammic::Direction::Forward => (rule.lhs(), rule.rhs()),
                            grammic::Direction::Backward => (rule.rhs(), rule.lhs()),
                        };
                        let mut letters = current.letters().to_vec();
                        letters[step.pos..step.pos + from.len()].copy_from_slice(to);
                        current = Word::new(letters, alphabet)?;
                        let text: String = current
                            .letters()
                            .iter()
                            .enumerate()
                            .map(|(i, &letter)| {
                                let digit = (b'0' + letter) as char;
                                if i == step.pos {
                                    format!("[{digit}")
                                } else if i + 1 == step.pos + to.len() {
                                    format!("{digit}]")
                                } else {
                                    digit.to_string()
                                }
                            })
                            .collect();
                        let dir = match step.dir {
                            grammic::Direction::Forward => "forward",
                            grammic::Direction::Backward => "backward",
                        };
                        lines.push(format!("{text}   {} {dir} @{}", step.rule, step.pos));
                    }
                    lines.push(format!(
                        "grammic rule count: {}",
                        derivation.grammic_rule_count
                    ));
                    emit(cli.format, &derivation, lines.join("\n"));
                    Ok(0)
                }
            }
        }
        Command::Params { word } => {
            let alphabet = Alphabet::new(3)?;
            let word = Word::parse(&word, alphabet)?;
            let params = grammic::extract_params(&word)?;
            let tableau = build_tableau(&word);
            let slashed: Vec<String> = tableau
                .rows()
                .iter()
                .rev()
                .map(|row| {
                    row.letters()
                        .iter()
                        .map(|&letter| (b'0' + letter) as char)
                        .collect()
                })
                .collect();
            emit(
                cli.format,
                &params,
                format!(
                    "row normal form: {}\na={} b={} c={} d={} e={} f={}",
                    slashed.join("/"),
                    params.a,
                    params.b,
                    params.c,
                    params.d,
                    params.e,
                    params.f
                ),
            );
            Ok(0)
        }
        Command::Classes {
            length,
            alphabet,
            relation,
            count_only,
        } => {
            let alphabet = Alphabet::new(alphabet)?;
            let relation = Relation::parse(&relation, alphabet)?;
            let partition = grammic::enumerate_classes(length, alphabet, &relation, limits)?;
            let mut text = format!(
                "n={} k={} relation={} classes={} words={}",
                partition.n,
                partition.k,
                partition.relation,
                partition.class_count(),
                partition.word_count()
            );
            if !count_only {
                for class in &partition.classes {
                    let members: Vec<String> = class.iter().map(Word::to_string).collect();
                    text.push('\n');
                    text.push_str(&members.join(" "));
                }
            }
            if count_only {
                let json = json!({
                    "n": partition.n,
                    "k": partition.k,
                    "relation": partition.relation,
                    "toolVersion": partition.tool_version,
                    "classCount": partition.class_count(),
                    "wordCount": partition.word_count(),
                });
                emit(cli.format, &json, text);
            } else {
                emit(cli.format, &partition, text);
            }
            Ok(0)
        }
        Command::Project {
            letters,
            word,
            alphabet,
        } => {
            let keep = parse_csv_letters(&letters)?;
            let alphabet = resolve_alphabet(alphabet, &[&word])?;
            let word = Word::parse(&word, alphabet)?;
            let erased = erase(&word, &keep)?;
            let projected = project(&word, &keep)?;
            emit(
                cli.format,
                &json!({
                    "word": word,
                    "k": alphabet.size(),
                    "letters": keep,
                    "erased": erased,
                    "projection": projected,
                    "projectionAlphabet": projected.alphabet().size(),
                }),
                projected.to_string(),
            );
            Ok(0)
        }
        Command::Conjecture4 { max_len, rule } => {
            let variants: Vec<Rule4Variant> = match rule.as_str() {
                "both" => vec![Rule4Variant::Bdac, Rule4Variant::Badc],
                name => vec![name.parse()?],
            };
            let report = grammic::conjecture4(max_len, &variants, limits)?;
            let mut lines = vec![format!(
                "conjecture scan: k=4 max-len={} budget={}",
                report.max_len, report.budget
            )];
            for variant in &report.variants {
                lines.push(format!(
                    "variant {} (rule set {})",
                    variant.variant, variant.rule_set
                ));
                for instance in &variant.rule_instances {
                    lines.push(format!(
                        "  rule {}: {}",
                        instance.rule,
                        if instance.valid {
                            "grammic-valid"
                        } else {
                            "NOT grammic-valid"
                        }
                    ));
                }
                for length in &variant.lengths {
                    let agreement = match length.agreement {
                        grammic::explore::Agreement::Equal => "equal".to_owned(),
                        grammic::explore::Agreement::RewriteFiner => {
                            "rewrite strictly finer".to_owned()
                        }
                        grammic::explore::Agreement::GrammicFiner => {
                            "grammic strictly finer".to_owned()
                        }
                        grammic::explore::Agreement::Incomparable => "incomparable".to_owned(),
                    };
                    let mut line = format!(
                        "  n={}: rewrite classes {}, grammic classes {} -- {agreement}",
                        length.n, length.rewrite_classes, length.grammic_classes
                    );
                    if let Some(ok) = length.soundness_ok {
                        line.push_str(if ok {
                            " (soundness ok)"
                        } else {
                            " (SOUNDNESS VIOLATED)"
                        });
                    }
                    for pair in &length.counterexamples {
                        line.push_str(&format!(
                            " counterexample: {} vs {} (rewrite {}, grammic {})",
                            pair.u,
                            pair.v,
                            pair.rewrite_equivalent,
                            pair.grammic_equivalent
                        ));
                    }
                    lines.push(line);
                }
            }
            emit(cli.format, &report, lines.join("\n"));
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(error) => {
            eprintln!("error: {error}");
            let code = match error {
                grammic::Error::BudgetExceeded { .. } => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}
