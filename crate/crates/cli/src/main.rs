use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use twinstab::chibound::{chi_bounded_color, chi_bounded_color_with, ChiCertificate};
use twinstab::colnum::verify_star_coloring;
use twinstab::contraction::{convexify, verify_convex_width, verify_width, MergeTree, TreeKind};
use twinstab::decompose::{decompose, Decomposition};
use twinstab::graph::{full_set, BipartiteGraph, OrderedBipartiteGraph};
use twinstab::io::{parse_gr, parse_tww, read_cert, write_bipartite_gr, write_cert, write_gr, write_tww, GraphFile};
use twinstab::ladder::{measure_graph_index, measure_quasi_index_in, quasi_ladder_at_least_in};
use twinstab::sparsify::{self, IncidenceGraph, IncidenceRecord, Sidecar};
use twinstab::{gen, oracle, Error};

#[derive(Parser)]
#[command(name = "twinstab", version, about = "Twin-width, ladder indices, chi-bounds and sparse codecs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph in `.gr` format
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
    /// Contraction sequence in `.tww` format
    #[arg(short = 's', long = "sequence")]
    sequence: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Width of a contraction sequence
    Width {
        #[command(subcommand)]
        action: WidthAction,
    },
    /// Quasi-ladder index (graph index unless --bipartite)
    Index {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        bipartite: bool,
        /// Threshold query instead of the exact index
        #[arg(short = 'k')]
        k: Option<usize>,
    },
    /// Freezing decomposition of a bipartite graph
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(short = 'd')]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check a stored certificate instead of computing one
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Chi-bounded colouring with cograph classes
    Color {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Encode into an incidence graph plus sidecar (`<out>.gr`, `<out>.json`)
    Encode {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode an incidence graph with its sidecar
    Decode {
        /// Incidence graph in `.gr` format
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long)]
        sidecar: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode, decode and compare
    Roundtrip {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sparse incidence graph with biclique check
    Sparse {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Instance generators (`<out>.gr`, plus `<out>.tww` when certified)
    Gen {
        kind: GenKind,
        #[arg(short = 'n', default_value_t = 8)]
        n: usize,
        #[arg(short = 'd', default_value_t = 1)]
        d: usize,
        /// Grid height (width is -n)
        #[arg(long, default_value_t = 4)]
        height: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive ground truth
    Oracle {
        kind: OracleKind,
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Biclique side size
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
}

#[derive(Subcommand)]
enum WidthAction {
    Verify {
        #[command(flatten)]
        input: Input,
        /// Fail unless the width is at most this
        #[arg(short = 'd')]
        d: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Cograph,
    Halfgraph,
    Grid,
    Power,
    PowerCompanion,
    RandomTww,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Twinwidth,
    Chromatic,
    Clique,
    P4free,
    Biclique,
}

#[derive(Serialize, Deserialize)]
struct EncodingFile {
    incidence: IncidenceRecord,
    sidecar: Sidecar,
}

/// A guarantee that should have held did not.
#[derive(Debug)]
struct Violated(String);

impl std::fmt::Display for Violated {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "certified failure: {}", self.0)
    }
}

impl std::error::Error for Violated {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let certified = e.downcast_ref::<Violated>().is_some()
                || e.chain().any(|c| c.downcast_ref::<Error>().is_some_and(Error::is_certified_failure));
            ExitCode::from(if certified { 2 } else { 1 })
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn load(input: &Input) -> anyhow::Result<(GraphFile, Option<MergeTree>)> {
    let file = parse_gr(&read(&input.graph)?)?;
    let tree = match &input.sequence {
        Some(p) => Some(parse_tww(&read(p)?, file.graph().n())?),
        None => None,
    };
    Ok((file, tree))
}

fn load_with_tree(input: &Input) -> anyhow::Result<(GraphFile, MergeTree)> {
    let (file, tree) = load(input)?;
    let tree = tree.ok_or_else(|| anyhow!("this command needs a contraction sequence (-s)"))?;
    Ok((file, tree))
}

fn bipartite(file: GraphFile) -> anyhow::Result<BipartiteGraph> {
    match file {
        GraphFile::Bipartite(b) => Ok(b),
        GraphFile::Plain(_) => bail!("expected a bipartite graph (`p btww` header)"),
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Width { action: WidthAction::Verify { input, d } } => {
            let (file, tree) = load_with_tree(&input)?;
            let rep = match (&file, tree.kind()) {
                (GraphFile::Bipartite(b), TreeKind::Convex) => {
                    verify_convex_width(&OrderedBipartiteGraph::natural(b.clone()), &tree)?
                }
                _ => verify_width(file.graph(), &tree)?,
            };
            println!("width: {}", rep.width);
            if let Some(d) = d {
                if rep.width > d {
                    bail!("width {} exceeds {d}", rep.width);
                }
            }
        }
        Command::Index { input, bipartite: bip, k } => {
            let (file, _) = load(&input)?;
            let (g, a, b) = if bip {
                let b = bipartite(file)?;
                let (l, r) = (b.left().clone(), b.right().clone());
                (b.into_graph(), l, r)
            } else {
                let g = file.into_graph();
                let all = full_set(g.n());
                (g, all.clone(), all)
            };
            match k {
                Some(k) => match quasi_ladder_at_least_in(&g, &a, &b, k) {
                    Some(w) => {
                        println!("at-least-{k}: true");
                        let ids = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ");
                        println!("xs: {}", ids(&w.xs));
                        println!("ys: {}", ids(&w.ys));
                    }
                    None => println!("at-least-{k}: false"),
                },
                None if bip => println!("{}", measure_quasi_index_in(&g, &a, &b)),
                None => println!("{}", measure_graph_index(&g)),
            }
        }
        Command::Decompose { input, k, d, out, verify } => {
            let (file, tree) = load_with_tree(&input)?;
            let (og, ct) = convexify(&bipartite(file)?, &tree)?;
            let dec = match verify {
                Some(p) => read_cert::<Decomposition>(&read(&p)?, "decomposition")?,
                None => {
                    let d = d.unwrap_or(verify_convex_width(&og, &ct)?.width).max(2);
                    let k = k.unwrap_or_else(|| measure_quasi_index_in(og.graph(), og.bip().left(), og.bip().right())).max(2);
                    decompose(&og, &ct, k, d)?
                }
            };
            dec.verify(&og)?;
            println!("k: {}", dec.k);
            println!("d: {}", dec.d);
            println!("parts: {}", dec.parts.len());
            println!("h-edges: {}", dec.h_edges.len());
            println!("covers: {}", dec.covers.len());
            println!("blocks: {}", dec.blocks.len());
            println!("flips: {}", dec.flips.len());
            println!("verified: true");
            if let Some(p) = out {
                write(&p, &write_cert("decomposition", &dec)?)?;
            }
        }
        Command::Color { input, k, out, verify } => {
            let (file, tree) = load_with_tree(&input)?;
            let g = file.into_graph();
            let cert = match verify {
                Some(p) => read_cert::<ChiCertificate>(&read(&p)?, "chi-certificate")?,
                None => match k {
                    Some(k) => chi_bounded_color_with(&g, &tree, k)?,
                    None => chi_bounded_color(&g, &tree)?,
                },
            };
            cert.verify(&g)?;
            println!("k: {}", cert.k);
            println!("d: {}", cert.d);
            println!("classes: {}", cert.classes);
            if let Some(c) = &cert.coloring {
                println!("colors: {}", c.count);
                println!("omega: {}{}", c.omega, if c.omega_exact { "" } else { " (cotree)" });
            }
            println!("class-bound: {}", cert.class_bound());
            if !cert.bound_ok() {
                return Err(Violated("chi-bound: colour or class count above the bound".into()).into());
            }
            println!("bound-ok");
            if let Some(p) = out {
                write(&p, &write_cert("chi-certificate", &cert)?)?;
            }
        }
        Command::Encode { input, out } => {
            let (file, tree) = load_with_tree(&input)?;
            let enc = match file {
                GraphFile::Bipartite(b) => sparsify::encode_bipartite(&b, &tree)?,
                GraphFile::Plain(g) => sparsify::encode_graph(&g, &tree)?,
            };
            write(&with_ext(&out, "gr"), &write_gr(&enc.incidence.graph))?;
            let file = EncodingFile { incidence: enc.incidence.record(), sidecar: enc.sidecar };
            write(&with_ext(&out, "json"), &write_cert("encoding", &file)?)?;
            println!("relations: {}", enc.incidence.relations);
            println!("incidence-vertices: {}", enc.incidence.graph.n());
            println!("depth: {}", enc.structure.root.depth());
        }
        Command::Decode { graph, sidecar, out } => {
            let inc_graph = parse_gr(&read(&graph)?)?.into_graph();
            let file: EncodingFile = read_cert(&read(&sidecar)?, "encoding")?;
            let inc = IncidenceGraph::from_parts(inc_graph, &file.incidence)?;
            let g = sparsify::decode(&inc, &file.sidecar)?;
            println!("vertices: {}", g.n());
            println!("edges: {}", g.edge_count());
            match out {
                Some(p) => write(&p, &write_gr(&g))?,
                None => print!("{}", write_gr(&g)),
            }
        }
        Command::Roundtrip { input, out } => {
            let (file, tree) = load_with_tree(&input)?;
            let (_, rep) = match file {
                GraphFile::Bipartite(b) => sparsify::pipeline_bipartite(&b, &tree)?,
                GraphFile::Plain(g) => sparsify::pipeline(&g, &tree)?,
            };
            println!("equal: {}", rep.equal);
            println!("k: {}", rep.k);
            println!("d: {}", rep.d);
            println!("depth: {}", rep.depth);
            println!("relations: {}", rep.relations);
            if let Some(p) = out {
                write(&p, &write_cert("roundtrip", &rep)?)?;
            }
            if !rep.equal {
                return Err(Violated("codec: decoded graph differs from the input".into()).into());
            }
        }
        Command::Sparse { input, out } => {
            let (file, tree) = load_with_tree(&input)?;
            let (enc, rep) = match file {
                GraphFile::Bipartite(b) => sparsify::pipeline_bipartite(&b, &tree)?,
                GraphFile::Plain(g) => sparsify::pipeline(&g, &tree)?,
            };
            println!("relations: {}", rep.relations);
            println!("incidence-vertices: {}", rep.incidence_vertices);
            println!("structural: {}", rep.structural);
            match rep.biclique_free {
                Some(b) => println!("biclique-free: {b}"),
                None => println!("biclique-free: unchecked (too large)"),
            }
            if let Some(p) = out {
                write(&p, &write_gr(&enc.incidence.graph))?;
            }
            if !rep.structural || rep.biclique_free == Some(false) {
                return Err(Violated("sparse-incidence: incidence graph contains a forbidden biclique".into()).into());
            }
        }
        Command::Gen { kind, n, d, height, seed, out } => {
            let mut rng = gen::rng(seed);
            let (text, tree) = match kind {
                GenKind::Cograph => {
                    let (g, t) = gen::cograph(n, &mut rng);
                    (write_gr(&g), Some(t))
                }
                GenKind::Halfgraph => {
                    let (g, t) = gen::half_graph(n);
                    (write_bipartite_gr(&g)?, Some(t))
                }
                GenKind::Grid => {
                    let (g, t) = gen::grid(n, height);
                    (write_gr(&g), Some(t))
                }
                GenKind::Power => (write_gr(&gen::power(n)), None),
                GenKind::PowerCompanion => {
                    let (og, colors) = gen::power_companion(n)?;
                    if !verify_star_coloring(&og, &colors) {
                        return Err(Violated("star-coloring: companion colouring rejected".into()).into());
                    }
                    let line = colors.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                    write(&with_ext(&out, "col"), &format!("{line}\n"))?;
                    println!("star-coloring: 4 colours verified");
                    (write_gr(og.graph()), None)
                }
                GenKind::RandomTww => {
                    let (g, t) = gen::random_tww(n, d, &mut rng);
                    (write_gr(&g), Some(t))
                }
            };
            write(&with_ext(&out, "gr"), &text)?;
            if let Some(t) = tree {
                write(&with_ext(&out, "tww"), &write_tww(&t))?;
            }
        }
        Command::Oracle { kind, graph, size } => {
            let g = parse_gr(&read(&graph)?)?.into_graph();
            match kind {
                OracleKind::Twinwidth => println!("{}", oracle::twinwidth(&g)?),
                OracleKind::Chromatic => println!("{}", oracle::chromatic(&g)?),
                OracleKind::Clique => println!("{}", oracle::clique(&g)?),
                OracleKind::P4free => println!("{}", oracle::p4free(&g)),
                OracleKind::Biclique => println!("{}", oracle::has_biclique(&g, size)?),
            }
        }
    }
    Ok(())
}

