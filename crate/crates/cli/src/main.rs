use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dyer::cocycle::cocycle;
use dyer::parabolic::{
    intersect, min_coset_rep, parabolic_closure, parse_vertex_list, prefix_family, ClosureMode, ParabolicSubgroup, Side,
};
use dyer::rewriting::{qd_system, RewritingSystem};
use dyer::{Error, Group, GroupElement, OrbitBudget, Presentation, SyllabicWord};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "dyer",
    version,
    about = "Word problem and parabolic subgroups in Dyer and quasi-Dyer groups"
)]
struct Cli {
    /// Presentation file (`vertex <name> order <n|inf>` / `edge <u> <v> m <n>` lines).
    #[arg(long, short = 'p', global = true)]
    presentation: Option<PathBuf>,

    /// Most words visited while searching one braid orbit
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_orbit_size: Option<u64>,

    /// Longest syllabic word accepted as input
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_word_length: Option<u64>,

    /// Element budget for commands that enumerate the group.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_enumeration: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    /// One JSON object per line with fields `command`, `inputs`, `result`.
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fold,
    Enumerate,
}

#[derive(Subcommand)]
enum Command {
    /// Print the presentation class.
    Validate,
    /// Normal form of a word.
    Nf { word: String },
    /// Whether two words represent the same element.
    Eq { left: String, right: String },
    /// Syllabic length.
    Len { word: String },
    /// Support of the element.
    Supp { word: String },
    /// The M-operations taking a word to its normal form.
    ReduceTrace { word: String },
    /// Minimal representative of `g D_Y` (left) or `D_Y g` (right).
    CosetMin {
        #[arg(long, value_enum)]
        side: SideArg,
        /// Comma-separated vertices of `Y`.
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
        word: String,
    },
    /// Intersection of two parabolic subgroups given as `<word>;<vertices>`.
    Intersect {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Parabolic closure of a set of elements.
    Pc {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Family member `<word>;<vertices>` for fold mode (repeatable).
        #[arg(long)]
        family: Vec<String>,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Critical-pair confluence check of a rewriting system.
    Confluence {
        /// The `QD_{m,k}` system, as `m,k`.
        #[arg(long, conflicts_with = "rules", required_unless_present = "rules")]
        qd: Option<String>,
        /// A rules file (`lhs -> rhs` lines).
        #[arg(long)]
        rules: Option<PathBuf>,
    },
    /// Reflection cocycle `N(g)`.
    Cocycle { word: String },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Output {
    plain: String,
    json: Value,
}

fn word_json(g: &Group, w: &SyllabicWord) -> Value {
    Value::String(w.display(g.presentation()).to_string())
}

fn names(g: &Group, vertices: impl IntoIterator<Item = usize>) -> Vec<String> {
    vertices
        .into_iter()
        .map(|v| g.presentation().name(v).to_string())
        .collect()
}

fn parabolic_json(g: &Group, p: &ParabolicSubgroup) -> Value {
    json!({
        "conjugator": p.conjugator().to_string(),
        "generators": names(g, p.generators().iter().copied()),
    })
}

impl Cli {
    fn load_presentation(&self) -> Result<Presentation, Failure> {
        let path = self
            .presentation
            .as_ref()
            .ok_or_else(|| Failure::Usage("this command needs --presentation <path>".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        Ok(text.parse()?)
    }

    fn group(&self) -> Result<Group, Failure> {
        let mut budget = OrbitBudget::default();
        if let Some(n) = self.max_orbit_size {
            budget.max_orbit_size = n as usize;
        }
        if let Some(n) = self.max_word_length {
            budget.max_word_length = n as usize;
        }
        let group = Group::new(self.load_presentation()?)?.with_budget(budget);
        if !group.verified() {
            eprintln!(
                "warning: {} presentation is outside the verified classes (Dyer, QD_(m,k)); results are not guaranteed",
                group.class()
            );
        }
        Ok(group)
    }

    fn run(&self) -> Result<(Value, Output), Failure> {
        match &self.command {
            Command::Validate => {
                let p = self.load_presentation()?;
                let class = p.classify();
                if let Some(why) = p.violation() {
                    eprintln!("{why}");
                }
                Ok((
                    json!({}),
                    Output {
                        plain: class.to_string(),
                        json: json!(class.to_string()),
                    },
                ))
            }
            Command::Nf { word } => {
                let g = self.group()?;
                let e = g.element(word)?;
                Ok((
                    json!({ "word": word }),
                    Output {
                        plain: e.to_string(),
                        json: word_json(&g, e.normal_form()),
                    },
                ))
            }
            Command::Eq { left, right } => {
                let g = self.group()?;
                let same = g.equal(&g.parse_word(left)?, &g.parse_word(right)?)?;
                Ok((
                    json!({ "left": left, "right": right }),
                    Output {
                        plain: same.to_string(),
                        json: json!(same),
                    },
                ))
            }
            Command::Len { word } => {
                let g = self.group()?;
                let n = g.length(&g.parse_word(word)?)?;
                Ok((
                    json!({ "word": word }),
                    Output {
                        plain: n.to_string(),
                        json: json!(n),
                    },
                ))
            }
            Command::Supp { word } => {
                let g = self.group()?;
                let s = names(&g, g.element(word)?.support());
                Ok((
                    json!({ "word": word }),
                    Output {
                        plain: s.join(","),
                        json: json!(s),
                    },
                ))
            }
            Command::ReduceTrace { word } => {
                let g = self.group()?;
                let trace = g.reduce_trace(&g.parse_word(word)?)?;
                let p = g.presentation();
                let mut plain = format!("input {}", trace.input.display(p));
                let mut steps = Vec::new();
                for step in &trace.steps {
                    plain.push_str(&format!("\n{} => {}", step.op, step.word.display(p)));
                    steps.push(json!({
                        "kind": step.op.kind.to_string(),
                        "position": step.op.position,
                        "length": step.op.length,
                        "word": word_json(&g, &step.word),
                    }));
                }
                plain.push_str(&format!("\noutput {}", trace.output.display(p)));
                let result = json!({
                    "input": word_json(&g, &trace.input),
                    "steps": steps,
                    "output": word_json(&g, &trace.output),
                });
                Ok((json!({ "word": word }), Output { plain, json: result }))
            }
            Command::CosetMin { side, sub, word } => {
                let g = self.group()?;
                let y = parse_vertex_list(&g, sub)?;
                let side = match side {
                    SideArg::Left => Side::Left,
                    SideArg::Right => Side::Right,
                };
                let d = min_coset_rep(&g, &g.element(word)?, &y, side)?;
                let plain = format!(
                    "g0 {}\nh {}\nlength {}\nnon_unique_possible {}",
                    d.representative,
                    d.residual,
                    d.representative.length(),
                    d.non_unique_possible
                );
                let result = json!({
                    "g0": word_json(&g, d.representative.normal_form()),
                    "h": word_json(&g, d.residual.normal_form()),
                    "length": d.representative.length(),
                    "non_unique_possible": d.non_unique_possible,
                });
                let side = if side == Side::Left { "left" } else { "right" };
                Ok((
                    json!({ "side": side, "sub": sub, "word": word }),
                    Output { plain, json: result },
                ))
            }
            Command::Intersect { p1, p2 } => {
                let g = self.group()?;
                let a = ParabolicSubgroup::parse(&g, p1)?;
                let b = ParabolicSubgroup::parse(&g, p2)?;
                let r = intersect(&g, &a, &b)?;
                let plain = r.display(&g).to_string();
                Ok((
                    json!({ "p1": p1, "p2": p2 }),
                    Output {
                        plain,
                        json: parabolic_json(&g, &r),
                    },
                ))
            }
            Command::Pc { mode, family, words } => {
                let g = self.group()?;
                let a = words
                    .iter()
                    .map(|w| g.element(w))
                    .collect::<Result<Vec<GroupElement>, _>>()?;
                let (mode_name, mode) = match mode {
                    ModeArg::Enumerate => {
                        if !family.is_empty() {
                            return Err(Failure::Usage("--family only applies to --mode fold".into()));
                        }
                        (
                            "enumerate",
                            ClosureMode::Enumerate {
                                max_elements: self.max_enumeration as usize,
                            },
                        )
                    }
                    ModeArg::Fold => {
                        let members = if family.is_empty() {
                            prefix_family(&g, &a)?
                        } else {
                            family
                                .iter()
                                .map(|f| ParabolicSubgroup::parse(&g, f))
                                .collect::<Result<_, _>>()?
                        };
                        ("fold", ClosureMode::Fold(members))
                    }
                };
                let r = parabolic_closure(&g, &a, mode)?;
                let inputs = json!({ "mode": mode_name, "family": family, "words": words });
                let plain = r.display(&g).to_string();
                Ok((
                    inputs,
                    Output {
                        plain,
                        json: parabolic_json(&g, &r),
                    },
                ))
            }
            Command::Confluence { qd, rules } => {
                let (inputs, system) = match (qd, rules) {
                    (Some(spec), _) => {
                        let parsed: Option<(u32, u32)> = spec
                            .split_once(',')
                            .and_then(|(m, k)| Some((m.trim().parse().ok()?, k.trim().parse().ok()?)));
                        let (m, k) =
                            parsed.ok_or_else(|| Failure::Usage(format!("--qd expects `m,k`, got `{spec}`")))?;
                        (json!({ "qd": spec }), qd_system(m, k)?)
                    }
                    (None, Some(path)) => {
                        let text = std::fs::read_to_string(path)
                            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                        (
                            json!({ "rules": path.display().to_string() }),
                            RewritingSystem::parse(&text)?,
                        )
                    }
                    (None, None) => return Err(Failure::Usage("confluence needs --qd or --rules".into())),
                };
                let report = system.confluence_report();
                let mut plain = format!("{}\ncritical pairs {}", report.is_confluent(), report.pairs.len());
                let mut unresolved = Vec::new();
                for u in &report.unresolved {
                    let (l, r) = (system.render(&u.left), system.render(&u.right));
                    plain.push_str(&format!("\nunresolved {} : {l} != {r}", u.pair.display(&system)));
                    unresolved.push(json!({ "pair": u.pair.display(&system), "left": l, "right": r }));
                }
                let result = json!({
                    "confluent": report.is_confluent(),
                    "critical_pairs": report.pairs.len(),
                    "unresolved": unresolved,
                });
                Ok((inputs, Output { plain, json: result }))
            }
            Command::Cocycle { word } => {
                let g = self.group()?;
                let n = cocycle(&g, &g.parse_word(word)?)?;
                let mut lines = Vec::new();
                let mut entries = Vec::new();
                for (r, v, a) in n.entries() {
                    lines.push(format!("{a} [{r}] ~ {}", g.presentation().name(v)));
                    entries.push(
                        json!({ "reflection": r.to_string(), "vertex": g.presentation().name(v), "coefficient": a }),
                    );
                }
                Ok((
                    json!({ "word": word }),
                    Output {
                        plain: lines.join("\n"),
                        json: json!(entries),
                    },
                ))
            }
        }
    }

    fn command_name(&self) -> &'static str {
        match self.command {
            Command::Validate => "validate",
            Command::Nf { .. } => "nf",
            Command::Eq { .. } => "eq",
            Command::Len { .. } => "len",
            Command::Supp { .. } => "supp",
            Command::ReduceTrace { .. } => "reduce-trace",
            Command::CosetMin { .. } => "coset-min",
            Command::Intersect { .. } => "intersect",
            Command::Pc { .. } => "pc",
            Command::Confluence { .. } => "confluence",
            Command::Cocycle { .. } => "cocycle",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok((inputs, out)) => {
            match cli.format {
                Format::Plain => {
                    let lines: Vec<&str> = out.plain.lines().map(str::trim_end).collect();
                    println!("{}", lines.join("\n"));
                }
                Format::Json => println!(
                    "{}",
                    json!({ "command": cli.command_name(), "inputs": inputs, "result": out.json })
                ),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e @ Error::BudgetExceeded(_))) => {
            eprintln!("error: {e} (raise --max-orbit-size, --max-word-length or --max-enumeration)");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
