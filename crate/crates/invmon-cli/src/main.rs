use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use invmon::constructions::{
    build_hnn, build_idempotent_e, build_marked_omega, build_moldavanskii, build_n, build_stabiliser_monoid, build_units_presentation,
    Construction,
};
use invmon::experiments::{check_stabiliser, run_experiment, ExperimentSpec};
use invmon::graph::{GraphAnnotations, InverseGraph, DEFAULT_VERTEX_CAP};
use invmon::groups::{all_subgroups, coset_union, lemma51_check, parse_group_file, setwise_stabiliser, GroupFile, Subgroup};
use invmon::munn::{fim_equal, fim_leq, munn_tree};
use invmon::presentation::{parse_document, Flavor, Presentation, PresentationDocument};
use invmon::stephen::{Certificate, Stephen, DEFAULT_DEPTH};
use invmon::witness::{Grammar, UnitsWitness, DEFAULT_BUDGET};
use invmon::words::{Alphabet, Word};

/// Workbench for finitely presented special inverse monoids.
#[derive(Parser, Debug)]
#[command(name = "invmon", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Expansion rounds before a search gives up.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Largest graph a search may build.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP)]
    vertex_cap: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for anything randomized.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free inverse monoid queries via Munn trees.
    #[command(subcommand)]
    Fim(FimCmd),
    /// Bounded Stephen searches in a presented monoid.
    #[command(subcommand)]
    Stephen(StephenCmd),
    /// Finite permutation groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Emit constructed presentations and graphs.
    #[command(subcommand)]
    Build(BuildCmd),
    /// The lazy witness graph for the units construction.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Experiment suites.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Subcommand, Debug)]
enum FimCmd {
    Eq { u: String, v: String },
    Leq { u: String, v: String },
    Tree {
        w: String,
        #[arg(long, value_enum, default_value_t = Format::Dump)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dump,
    Dot,
}

#[derive(Args, Debug)]
struct PresentationArgs {
    /// Presentation file.
    #[arg(long, short)]
    presentation: PathBuf,
    /// Extra bicyclic image, `GEN=WORD` over `b`.
    #[arg(long = "bicyclic", value_name = "GEN=WORD")]
    bicyclic: Vec<String>,
    /// Extra integer weight, `GEN=INT`.
    #[arg(long = "weight", value_name = "GEN=INT")]
    weights: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum StephenCmd {
    Leq {
        #[command(flatten)]
        p: PresentationArgs,
        u: String,
        v: String,
    },
    Eq {
        #[command(flatten)]
        p: PresentationArgs,
        u: String,
        v: String,
    },
    /// Right invertibility.
    Runit {
        #[command(flatten)]
        p: PresentationArgs,
        w: String,
    },
    Unit {
        #[command(flatten)]
        p: PresentationArgs,
        w: String,
    },
    /// Expand the session of a word and report its size.
    Expand {
        #[command(flatten)]
        p: PresentationArgs,
        w: String,
    },
    /// Expand and print the graph.
    Export {
        #[command(flatten)]
        p: PresentationArgs,
        w: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Group file.
    #[arg(long, short)]
    group: PathBuf,
    /// Subgroup generator word; defaults to the file's subgroup section.
    #[arg(long = "subgroup", short = 's')]
    subgroup: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    Enumerate {
        #[command(flatten)]
        g: GroupArgs,
    },
    /// Stabiliser of `XH`, compared with the automorphisms of marked Ω.
    Stabiliser {
        #[command(flatten)]
        g: GroupArgs,
        /// Coset representative word; repeat for several.
        #[arg(long = "x", short = 'x', required = true)]
        x: Vec<String>,
    },
    /// Index check for `K ∩ tKt'` in the stabiliser of `K ∪ tK`.
    Lemma51 {
        #[command(flatten)]
        g: GroupArgs,
        /// The element `t`; omit to sweep every subgroup and every `t`.
        #[arg(long)]
        t: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// Monoid whose units are `⟨B⟩` in a finite group.
    Units {
        /// Monoid presentation of the group.
        #[arg(long, short)]
        presentation: PathBuf,
        #[arg(long = "b", short = 'b')]
        b: Vec<String>,
    },
    N {
        k: usize,
    },
    Stabmonoid {
        /// Group presentation.
        #[arg(long, short)]
        presentation: PathBuf,
        #[arg(long = "b", short = 'b')]
        b: Vec<String>,
    },
    E {
        /// Presentation containing `y` and `z`.
        #[arg(long, short)]
        presentation: PathBuf,
        #[arg(long = "x", short = 'x', required = true)]
        x: Vec<String>,
    },
    Omega {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long = "x", short = 'x', required = true)]
        x: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    Moldavanskii,
    Hnn {
        #[arg(long, short)]
        presentation: PathBuf,
        /// Associated pair `U=V`.
        #[arg(long = "assoc", value_name = "U=V")]
        assoc: Vec<String>,
        #[arg(long, default_value = "t")]
        t: String,
    },
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    g: GroupArgs,
    /// Sample vertices for local validation.
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 2)]
    radius: usize,
    /// Length of the random walks that pick samples.
    #[arg(long, default_value_t = 8)]
    walk: usize,
    /// Oracle calls allowed for validation.
    #[arg(long, default_value_t = DEFAULT_BUDGET * 100)]
    budget: usize,
    /// Drop the d-loops (a deliberately broken graph).
    #[arg(long, hide = true)]
    no_d_loops: bool,
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    Validate {
        #[command(flatten)]
        w: WitnessArgs,
    },
    /// Try to read a word into the root.
    Refute {
        #[command(flatten)]
        w: WitnessArgs,
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCmd {
    Run {
        #[arg(required = true)]
        specs: Vec<PathBuf>,
    },
    List {
        #[arg(default_value = "suites")]
        dir: PathBuf,
    },
}

/// What a command wants printed and the exit code it earned.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome { text, json, code: 0 }
    }

    fn verdict(c: &Certificate) -> Outcome {
        let text = format!("{}\n{}", c.verdict.as_str(), serde_json::to_string_pretty(&c.to_json()).expect("json"));
        Outcome { text, json: c.to_json(), code: c.verdict.exit_code() as u8 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if cli.global.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let printed = if cli.global.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json"))
            } else {
                write!(stdout, "{}", out.text).and_then(|_| if out.text.ends_with('\n') { Ok(()) } else { writeln!(stdout) })
            };
            if printed.is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Fim(c) => fim(c),
        Command::Stephen(c) => stephen(g, c),
        Command::Group(c) => group(c),
        Command::Build(c) => build(c),
        Command::Witness(c) => witness(g, c),
        Command::Experiment(c) => experiment(c),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_or_return(output: &Option<PathBuf>, text: String) -> Result<String> {
    match output {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?;
            Ok(format!("wrote {}", p.display()))
        }
        None => Ok(text),
    }
}

fn fim(c: &FimCmd) -> Result<Outcome> {
    let parse = |al: &Alphabet, s: &str| al.parse_word(s).map_err(|e| anyhow!("{e}"));
    match c {
        FimCmd::Eq { u, v } | FimCmd::Leq { u, v } => {
            let al = Alphabet::infer(&[u, v])?;
            let (a, b) = (parse(&al, u)?, parse(&al, v)?);
            let holds = if matches!(c, FimCmd::Eq { .. }) { fim_equal(&a, &b) } else { fim_leq(&a, &b) };
            Ok(Outcome { text: holds.to_string(), json: json!({ "verdict": holds }), code: if holds { 0 } else { 1 } })
        }
        FimCmd::Tree { w, format } => {
            let al = Alphabet::infer(&[w])?;
            let t = munn_tree(&parse(&al, w)?);
            let graph = t.tree().clone();
            let mut notes = GraphAnnotations::new();
            notes.insert(t.end(), "end".into());
            let text = render_graph(&graph, &al, &notes, *format);
            let json = json!({
                "vertices": t.vertex_count(),
                "edges": t.edge_count(),
                "dump": graph.dump(&al),
            });
            Ok(Outcome::ok(text, json))
        }
    }
}

fn render_graph(g: &InverseGraph, al: &Alphabet, notes: &GraphAnnotations, format: Format) -> String {
    match format {
        Format::Dump => g.dump(al),
        Format::Dot => g.to_dot(al, notes),
    }
}

fn split_pair(s: &str) -> Result<(&str, &str)> {
    s.split_once('=').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| anyhow!("expected `LHS=RHS`, got `{s}`"))
}

fn load_document(path: &Path) -> Result<PresentationDocument> {
    parse_document(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn engine(g: &Global, args: &PresentationArgs) -> Result<Stephen> {
    let mut doc = load_document(&args.presentation)?;
    if doc.presentation.flavor() == Flavor::Group {
        doc.presentation = doc.presentation.group_as_inverse();
    }
    for s in &args.bicyclic {
        let (gen, w) = split_pair(s)?;
        doc.bicyclic.push((gen.to_string(), w.to_string()));
    }
    for s in &args.weights {
        let (gen, w) = split_pair(s)?;
        doc.weights.push((gen.to_string(), w.parse().with_context(|| format!("bad weight `{w}`"))?));
    }
    let mut st = Stephen::new(&doc.presentation)?.with_depth(g.depth).with_vertex_cap(g.vertex_cap);
    if let Some(images) = doc.bicyclic_images()? {
        if !st.register_bicyclic(&images) {
            bail!("the bicyclic assignment does not send every relator to 1");
        }
    }
    if let Some(w) = doc.weight_vector() {
        if !st.register_weights(&w) {
            bail!("the weights do not vanish on every relator");
        }
    }
    Ok(st)
}

fn word(p: &Presentation, s: &str) -> Result<Word> {
    p.parse_word(s).with_context(|| format!("in word `{s}`"))
}

fn stephen(g: &Global, c: &StephenCmd) -> Result<Outcome> {
    match c {
        StephenCmd::Leq { p, u, v } | StephenCmd::Eq { p, u, v } => {
            let st = engine(g, p)?;
            let (a, b) = (word(st.presentation(), u)?, word(st.presentation(), v)?);
            let cert = if matches!(c, StephenCmd::Leq { .. }) { st.certify_leq(&a, &b)? } else { st.certify_equal(&a, &b)? };
            Ok(Outcome::verdict(&cert))
        }
        StephenCmd::Runit { p, w } | StephenCmd::Unit { p, w } => {
            let st = engine(g, p)?;
            let x = word(st.presentation(), w)?;
            let cert = if matches!(c, StephenCmd::Unit { .. }) { st.certify_unit(&x)? } else { st.certify_right_invertible(&x)? };
            Ok(Outcome::verdict(&cert))
        }
        StephenCmd::Expand { p, w } => {
            let st = engine(g, p)?;
            let mut s = st.session(&word(st.presentation(), w)?)?;
            s.expand_to(g.depth)?;
            let json = json!({
                "rounds": s.rounds_done(),
                "vertices": s.vertex_count(),
                "saturated": s.is_saturated(),
                "relators_close": s.relators_close_everywhere(),
            });
            let text = format!(
                "rounds {}, vertices {}, saturated {}, relators close {}",
                s.rounds_done(),
                s.vertex_count(),
                s.is_saturated(),
                s.relators_close_everywhere()
            );
            Ok(Outcome::ok(text, json))
        }
        StephenCmd::Export { p, w, format, output } => {
            let st = engine(g, p)?;
            let mut s = st.session(&word(st.presentation(), w)?)?;
            s.expand_to(g.depth)?;
            let graph = s.graph();
            let mut notes = GraphAnnotations::new();
            let end = s.terminal();
            if end != s.root() {
                notes.insert(end, "end".into());
            }
            let text = render_graph(&graph, st.presentation().alphabet(), &notes, *format);
            let json = json!({ "vertices": graph.vertex_count(), "dump": graph.dump(st.presentation().alphabet()) });
            Ok(Outcome::ok(write_or_return(output, text)?, json))
        }
    }
}

fn load_group(args: &GroupArgs) -> Result<(GroupFile, Subgroup)> {
    let file = parse_group_file(&read(&args.group)?).with_context(|| format!("in {}", args.group.display()))?;
    let words: Vec<Word> = if args.subgroup.is_empty() {
        file.subgroup.clone().unwrap_or_default()
    } else {
        args.subgroup.iter().map(|s| file.group.alphabet().parse_word(s).with_context(|| format!("in word `{s}`"))).collect::<Result<_>>()?
    };
    let h = Subgroup::generated_by(&file.group, &words);
    Ok((file, h))
}

fn group(c: &GroupCmd) -> Result<Outcome> {
    match c {
        GroupCmd::Enumerate { g } => {
            let (file, _) = load_group(g)?;
            let grp = &file.group;
            let al = grp.alphabet();
            let rows: Vec<Value> = (0..grp.order())
                .map(|i| json!({ "index": i, "perm": grp.element(i).to_string(), "word": al.render(grp.word(i)), "order": grp.element_order(i) }))
                .collect();
            let mut text = format!("order {}\n", grp.order());
            for i in 0..grp.order() {
                text.push_str(&format!("{i:>5}  {:<20} {}\n", grp.element(i).to_string(), al.render(grp.word(i))));
            }
            Ok(Outcome::ok(text, json!({ "order": grp.order(), "elements": rows })))
        }
        GroupCmd::Stabiliser { g, x } => {
            let (file, h) = load_group(g)?;
            let grp = &file.group;
            let xw = x.iter().map(|s| grp.alphabet().parse_word(s).with_context(|| format!("in word `{s}`"))).collect::<Result<Vec<_>>>()?;
            let xh = coset_union(grp, &h, &xw);
            let stab = setwise_stabiliser(grp, &xh.set);
            let check = check_stabiliser(grp, &h, &xh.representatives);
            let perms = |s: &[usize]| s.iter().map(|&e| grp.element(e).to_string()).collect::<Vec<_>>();
            let json = json!({
                "subgroup_order": h.order(),
                "xh": perms(&xh.set),
                "stabiliser": perms(stab.elements()),
                "automorphisms": check.automorphisms,
                "witness": check.witness,
            });
            let text = format!(
                "|H| = {}\nXH = {{{}}}\nStab(XH) = {{{}}}\n|Aut(Ω)| = {}, witness {}",
                h.order(),
                perms(&xh.set).join(", "),
                perms(stab.elements()).join(", "),
                check.automorphisms,
                check.witness
            );
            Ok(Outcome { text, json, code: if check.holds() { 0 } else { 1 } })
        }
        GroupCmd::Lemma51 { g, t } => {
            let (file, k) = load_group(g)?;
            let grp = &file.group;
            let cases: Vec<(Subgroup, usize)> = match t {
                Some(t) => vec![(k, grp.parse_element(t)?)],
                None => all_subgroups(grp)?.into_iter().flat_map(|k| (0..grp.order()).map(move |t| (k.clone(), t))).collect(),
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut failures = 0;
            for (k, t) in &cases {
                let label = format!("|K|={} t={}", k.order(), grp.element(*t));
                match lemma51_check(grp, k, *t) {
                    Ok(r) => {
                        text.push_str(&format!("{label}: index {} disjoint {}\n", r.index, r.disjoint));
                        rows.push(json!({ "k_order": r.k_order, "t": grp.element(*t).to_string(), "report": r }));
                    }
                    Err(e) => {
                        failures += 1;
                        text.push_str(&format!("{label}: {e}\n"));
                        rows.push(json!({ "k_order": k.order(), "t": grp.element(*t).to_string(), "error": e.to_string() }));
                    }
                }
            }
            text.push_str(&format!("{} cases, {failures} failures", cases.len()));
            Ok(Outcome { text, json: json!({ "cases": rows, "failures": failures }), code: u8::from(failures > 0) })
        }
    }
}

fn construction_outcome(c: &Construction) -> Outcome {
    let mut text = c.document().to_text();
    for (name, w) in &c.distinguished {
        text.push_str(&format!("# {name} = {}\n", c.presentation.render(w)));
    }
    Outcome::ok(text, c.manifest())
}

fn build(c: &BuildCmd) -> Result<Outcome> {
    match c {
        BuildCmd::Units { presentation, b } => {
            let base = load_document(presentation)?.presentation;
            Ok(construction_outcome(&build_units_presentation(&base.with_flavor(Flavor::Monoid), b)?))
        }
        BuildCmd::N { k } => Ok(construction_outcome(&build_n(*k))),
        BuildCmd::Stabmonoid { presentation, b } => {
            let base = load_document(presentation)?.presentation;
            let bw = b.iter().map(|s| word(&base, s)).collect::<Result<Vec<_>>>()?;
            Ok(construction_outcome(&build_stabiliser_monoid(&base, &bw)?))
        }
        BuildCmd::E { presentation, x } => {
            let p = load_document(presentation)?.presentation;
            let xw = x.iter().map(|s| word(&p, s)).collect::<Result<Vec<_>>>()?;
            let e = build_idempotent_e(&p, &xw)?;
            let r = p.render(&e);
            Ok(Outcome::ok(r.clone(), json!({ "e": r })))
        }
        BuildCmd::Omega { g, x, format, output } => {
            let (file, h) = load_group(g)?;
            let grp = &file.group;
            let xw = x.iter().map(|s| grp.alphabet().parse_word(s).with_context(|| format!("in word `{s}`"))).collect::<Result<Vec<_>>>()?;
            let om = build_marked_omega(grp, &coset_union(grp, &h, &xw));
            let mut notes = GraphAnnotations::new();
            for v in 0..grp.order() {
                notes.insert(v, grp.element(v).to_string());
            }
            for &(v, y, z) in &om.markers {
                notes.insert(v, format!("{} XH", grp.element(v)));
                notes.insert(y, "y".into());
                notes.insert(z, "z".into());
            }
            let text = render_graph(&om.graph, &om.alphabet, &notes, *format);
            let json = json!({ "vertices": om.graph.vertex_count(), "markers": om.markers.len(), "dump": om.graph.dump(&om.alphabet) });
            Ok(Outcome::ok(write_or_return(output, text)?, json))
        }
        BuildCmd::Moldavanskii => Ok(construction_outcome(&build_moldavanskii().0)),
        BuildCmd::Hnn { presentation, assoc, t } => {
            let base = load_document(presentation)?.presentation;
            let pairs = assoc
                .iter()
                .map(|s| {
                    let (u, v) = split_pair(s)?;
                    Ok((word(&base, u)?, word(&base, v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let p = build_hnn(&base, &pairs, t)?;
            Ok(Outcome::ok(p.to_text(), json!({ "presentation": p.to_text() })))
        }
    }
}

fn witness_graph(args: &WitnessArgs) -> Result<UnitsWitness> {
    let (file, _) = load_group(&args.g)?;
    let base = Presentation::new(file.group.alphabet().clone(), file.relators.clone(), Flavor::Monoid)?;
    let b_names: Vec<String> = if args.g.subgroup.is_empty() {
        file.subgroup.iter().flatten().map(|w| file.group.alphabet().render(w)).collect()
    } else {
        args.g.subgroup.clone()
    };
    let om = UnitsWitness::new(&file.group, &base, &b_names)?;
    Ok(om.with_grammar(Grammar { d_loops: !args.no_d_loops }))
}

fn witness(g: &Global, c: &WitnessCmd) -> Result<Outcome> {
    let args = match c {
        WitnessCmd::Validate { w } | WitnessCmd::Refute { w, .. } => w,
    };
    let om = witness_graph(args)?;
    let samples = om.sample_vertices(args.samples, args.walk, g.seed);
    let report = om.validate_locally(&samples, args.radius, args.budget)?;
    match c {
        WitnessCmd::Validate { .. } => {
            let json = serde_json::to_value(&report)?;
            Ok(Outcome { text: report.to_string(), json, code: u8::from(!report.passed) })
        }
        WitnessCmd::Refute { word: w, .. } => {
            if !report.passed {
                let mut text = report.to_string();
                text.push_str("\nlocal validation failed; refusing to refute");
                return Ok(Outcome { text, json: json!({ "validation": report, "verdict": Value::Null }), code: 3 });
            }
            let x = word(om.presentation(), w)?;
            let cert = om.refute_readable_into(&x, &report, DEFAULT_BUDGET)?;
            Ok(Outcome::verdict(&cert))
        }
    }
}

fn experiment(c: &ExperimentCmd) -> Result<Outcome> {
    match c {
        ExperimentCmd::Run { specs } => {
            let mut text = String::new();
            let mut reports = Vec::new();
            let mut all = true;
            for path in specs {
                let (spec, base) = ExperimentSpec::load(path)?;
                let report = run_experiment(&spec, &base)?;
                all &= report.passed;
                text.push_str(&report.table());
                reports.push(report);
            }
            Ok(Outcome { text, json: serde_json::to_value(&reports)?, code: u8::from(!all) })
        }
        ExperimentCmd::List { dir } => {
            let mut rows = Vec::new();
            let mut entries: Vec<PathBuf> = fs::read_dir(dir)
                .with_context(|| format!("cannot list {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "toml"))
                .collect();
            entries.sort();
            for p in entries {
                let (spec, _) = ExperimentSpec::load(&p)?;
                rows.push((p.display().to_string(), spec.name, format!("{:?}", spec.kind).to_lowercase()));
            }
            let text = rows.iter().map(|(p, n, k)| format!("{n:<20} {k:<12} {p}")).collect::<Vec<_>>().join("\n");
            let json = json!(rows.iter().map(|(p, n, k)| json!({ "path": p, "name": n, "kind": k })).collect::<Vec<_>>());
            Ok(Outcome::ok(text, json))
        }
    }
}
