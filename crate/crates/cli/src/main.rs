//! `mspace` — dictionaries, networks, designs and sonification for
//! generalized musical spaces.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mspace_core::catalog::{
    pcs_dictionary, rhythm_dictionary, rhythm_p_dictionary, Catalog, CatalogKind, OrderMode,
};
use mspace_core::design::{
    harmonic_design, rhythmic_design, score_design, DesignRun, DesignSequence,
};
use mspace_core::graph::Graph;
use mspace_core::network::{
    ego_network, orchestral_network, pcs_network, r_lead_network, read_chord_sequence,
    read_orchestral_csv, rhythm_network, score_dictionary, score_network, score_subnetwork,
    vl_network, vl_network_by_name, NetworkParams, NetworkStats, ProgressionNetwork,
};
use mspace_core::rhythm::Duration;
use mspace_core::sonify::{midi_map, read_series, scale_map, write_midi};
use mspace_core::Metric;

#[derive(Parser)]
#[command(name = "mspace", version, about = "Musical-space dictionaries, networks and design")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the dictionary (catalog) of a musical space as CSV
    Dictionary(DictionaryArgs),
    /// Build a network over a dictionary, score or orchestration table
    Network(NetworkArgs),
    /// Generate a design sequence from a pre-built reference network
    Design(DesignArgs),
    /// Map a two-column data series onto a scale and write MIDI
    Sonify(SonifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DictionarySpace {
    Pcs,
    Rhythm,
    #[value(name = "rhythmP", alias = "rhythmp")]
    RhythmP,
    Score,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CliOrder {
    Prime,
    Normal,
    Normal0,
}

impl From<CliOrder> for OrderMode {
    fn from(value: CliOrder) -> Self {
        match value {
            CliOrder::Prime => OrderMode::Prime,
            CliOrder::Normal => OrderMode::Normal,
            CliOrder::Normal0 => OrderMode::Normal0,
        }
    }
}

#[derive(Args)]
struct DictionaryArgs {
    /// Musical space to enumerate
    #[arg(long, value_enum)]
    space: DictionarySpace,
    /// Cardinality (pcs: subset size, rhythm spaces: cell length)
    #[arg(long)]
    nc: Option<usize>,
    /// Temperament cardinality
    #[arg(long, default_value_t = 12)]
    tet: u32,
    /// Canonical ordering for pcs dictionaries
    #[arg(long, value_enum, default_value_t = CliOrder::Prime)]
    order: CliOrder,
    /// Restrict enumeration to the pitches of this tone row (comma-separated)
    #[arg(long)]
    row: Option<String>,
    /// Duration symbols of the rhythm cell, e.g. q,e,e
    #[arg(long)]
    symbols: Option<String>,
    /// Number of reference units to group (rhythmP)
    #[arg(long)]
    n: Option<u32>,
    /// Reference duration for rhythmP (symbol or fraction)
    #[arg(long, default_value = "e")]
    ref_dur: String,
    /// Chord-sequence JSON for the score space
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NetworkSpace {
    Pcs,
    Vlead,
    Vleadname,
    Rhythm,
    Rlead,
    Score,
    Orch,
}

#[derive(Args)]
struct NetworkArgs {
    #[arg(long, value_enum)]
    space: NetworkSpace,
    /// Dictionary CSV produced by the dictionary subcommand
    #[arg(long)]
    dict: Option<PathBuf>,
    /// Chord-sequence JSON (score) or orchestration CSV (orch)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 12)]
    tet: u32,
    #[arg(long, default_value_t = 1.5)]
    thup: f64,
    #[arg(long, default_value_t = 0.0)]
    thdw: f64,
    #[arg(long, default_value_t = 1.0)]
    prob: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "euclidean")]
    metric: Metric,
    /// Operator name for the vleadname space, e.g. "O(1)"
    #[arg(long)]
    name: Option<String>,
    /// Label chord progressions with voice-leading operators instead of
    /// distance operators (score space)
    #[arg(long)]
    general: bool,
    /// Start of a score sub-network slice (inclusive)
    #[arg(long)]
    start: Option<usize>,
    /// End of a score sub-network slice (exclusive)
    #[arg(long)]
    end: Option<usize>,
    /// Build the ego network of this node label instead of the full network
    #[arg(long)]
    ego: Option<String>,
    #[arg(long, default_value_t = 5.0)]
    thup_e: f64,
    #[arg(long, default_value_t = 0.0)]
    thdw_e: f64,
    /// Worker threads for the pairwise distance phase
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DesignKind {
    Harmonic,
    Rhythmic,
}

#[derive(Args)]
struct DesignArgs {
    /// nodes.csv of the reference network
    #[arg(long)]
    ref_nodes: PathBuf,
    /// edges.csv of the reference network
    #[arg(long)]
    ref_edges: PathBuf,
    #[arg(long, value_enum, default_value_t = DesignKind::Harmonic)]
    kind: DesignKind,
    /// Scaffold size (nodes of the preferential-attachment graph)
    #[arg(long)]
    nnodes: usize,
    /// Edges attached per arriving scaffold node
    #[arg(long)]
    nedges: usize,
    /// Rotation offset into the reference degree ranking
    #[arg(long, default_value_t = 0)]
    nstart: usize,
    /// Map scaffold ranks onto ascending reference degree instead
    #[arg(long)]
    reverse: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    tet: u32,
    /// Also emit the design as MIDI at this path (harmonic designs)
    #[arg(long)]
    midi: Option<PathBuf>,
    /// Design JSON with rhythm cells to zip against when writing MIDI
    #[arg(long)]
    durations: Option<PathBuf>,
    /// Duration scale factor for MIDI emission
    #[arg(long, default_value_t = 1.0)]
    fac: f64,
    #[arg(long, default_value_t = 480)]
    tpq: u16,
    #[arg(long, default_value_t = 120)]
    bpm: u32,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SonifyArgs {
    /// Two-column numeric text file
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "chromatic")]
    scale: String,
    #[arg(long, default_value_t = 60)]
    base_note: u8,
    #[arg(long, default_value_t = 2)]
    octaves: u32,
    #[arg(long, default_value_t = 480)]
    tpq: u16,
    #[arg(long, default_value_t = 120)]
    bpm: u32,
    /// Output MIDI path (defaults to <out-dir>/music.mid)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dictionary(args) => cmd_dictionary(args),
        Command::Network(args) => cmd_network(args),
        Command::Design(args) => cmd_design(args),
        Command::Sonify(args) => cmd_sonify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn parse_int_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|p| p.trim().parse::<u32>().context("bad integer list"))
        .collect()
}

fn cmd_dictionary(args: DictionaryArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    let csv_path = args.out_dir.join("dictionary.csv");
    let z_path = args.out_dir.join("zrelations.txt");
    log_config(json!({
        "subcommand": "dictionary",
        "space": format!("{:?}", args.space),
        "nc": args.nc,
        "tet": args.tet,
        "order": format!("{:?}", args.order),
        "row": args.row,
        "symbols": args.symbols,
        "n": args.n,
        "ref": args.ref_dur,
        "input": args.input,
        "out_dir": args.out_dir,
    }));
    match args.space {
        DictionarySpace::Pcs => {
            let nc = args.nc.context("--nc is required for --space pcs")?;
            let row = args.row.as_deref().map(parse_int_list).transpose()?;
            let (catalog, zrel) =
                pcs_dictionary(nc, args.tet, args.order.into(), row.as_deref())?;
            catalog.write_csv(&csv_path)?;
            write_zlist(&z_path, &zrel)?;
        }
        DictionarySpace::Rhythm => {
            let symbols_text =
                args.symbols.context("--symbols is required for --space rhythm")?;
            let symbols: Vec<&str> = symbols_text.split(',').map(str::trim).collect();
            let nc = args.nc.unwrap_or(symbols.len());
            let (catalog, zrel) = rhythm_dictionary(nc, &symbols)?;
            catalog.write_csv(&csv_path)?;
            write_zlist(&z_path, &zrel)?;
        }
        DictionarySpace::RhythmP => {
            let nc = args.nc.context("--nc is required for --space rhythmP")?;
            let n = args.n.context("--n is required for --space rhythmP")?;
            let reference = Duration::parse(&args.ref_dur)?;
            let (catalog, zrel) = rhythm_p_dictionary(n, nc, reference)?;
            catalog.write_csv(&csv_path)?;
            write_zlist(&z_path, &zrel)?;
        }
        DictionarySpace::Score => {
            let input = args.input.context("--input is required for --space score")?;
            let seq = read_chord_sequence(&input)?;
            let catalog = score_dictionary(&seq)?;
            catalog.write_csv(&csv_path)?;
        }
    }
    Ok(())
}

fn write_zlist(path: &Path, zrel: &[String]) -> Result<()> {
    let mut text = zrel.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

fn cmd_network(args: NetworkArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    log_config(json!({
        "subcommand": "network",
        "space": format!("{:?}", args.space),
        "dict": args.dict,
        "input": args.input,
        "tet": args.tet,
        "thup": args.thup,
        "thdw": args.thdw,
        "prob": args.prob,
        "seed": args.seed,
        "metric": args.metric.to_string(),
        "name": args.name,
        "general": args.general,
        "ego": args.ego,
        "jobs": args.jobs,
        "out_dir": args.out_dir,
    }));
    let run = || -> Result<()> {
        match args.space {
            NetworkSpace::Pcs | NetworkSpace::Vlead | NetworkSpace::Vleadname => {
                let dict = args.dict.as_ref().context("--dict is required")?;
                let catalog = Catalog::read_csv(dict, CatalogKind::Pcs, args.tet)?;
                if let Some(ego_label) = &args.ego {
                    let (ego, alters) = ego_network(
                        ego_label,
                        &catalog,
                        args.thup_e,
                        args.thdw_e,
                        args.thup,
                        args.thdw,
                        args.metric,
                    )?;
                    ego.write_csv(
                        args.out_dir.join("nodes_ego.csv"),
                        args.out_dir.join("edges_ego.csv"),
                    )?;
                    alters.write_edges_csv(args.out_dir.join("edges_alters.csv"))?;
                    return Ok(());
                }
                let graph = match args.space {
                    NetworkSpace::Pcs => {
                        let params = params_from(&args)?;
                        pcs_network(&catalog, &params)?
                    }
                    NetworkSpace::Vlead => {
                        let params = params_from(&args)?;
                        vl_network(&catalog, &params)?
                    }
                    NetworkSpace::Vleadname => {
                        let name =
                            args.name.as_ref().context("--name is required for vleadname")?;
                        vl_network_by_name(&catalog, name, args.metric)?
                    }
                    _ => unreachable!(),
                };
                write_network(&args.out_dir, &graph, args.seed)
            }
            NetworkSpace::Rhythm | NetworkSpace::Rlead => {
                let dict = args.dict.as_ref().context("--dict is required")?;
                let catalog = Catalog::read_csv(dict, CatalogKind::Rhythm, args.tet)?;
                let params = params_from(&args)?;
                let graph = match args.space {
                    NetworkSpace::Rhythm => rhythm_network(&catalog, &params)?,
                    _ => r_lead_network(&catalog, &params)?,
                };
                write_network(&args.out_dir, &graph, args.seed)
            }
            NetworkSpace::Score => {
                let input = args.input.as_ref().context("--input is required")?;
                let seq = read_chord_sequence(input)?;
                let net = match (args.start, args.end) {
                    (Some(start), Some(end)) => {
                        score_subnetwork(&seq, start, end, args.general, args.metric)?
                    }
                    (None, None) => score_network(&seq, args.general, args.metric)?,
                    _ => bail!("--start and --end must be given together"),
                };
                write_progression(&args.out_dir, &net, args.seed)
            }
            NetworkSpace::Orch => {
                let input = args.input.as_ref().context("--input is required")?;
                let (_, beats) = read_orchestral_csv(input)?;
                let net = orchestral_network(&beats)?;
                write_progression(&args.out_dir, &net, args.seed)
            }
        }
    };
    match args.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
            pool.install(run)
        }
        None => run(),
    }
}

fn params_from(args: &NetworkArgs) -> Result<NetworkParams> {
    Ok(NetworkParams::new(args.thup, args.thdw, args.metric, args.prob, args.seed)?)
}

fn write_network(out_dir: &Path, graph: &Graph, seed: u64) -> Result<()> {
    graph.write_csv(out_dir.join("nodes.csv"), out_dir.join("edges.csv"))?;
    let stats = NetworkStats::from_graph(graph, seed);
    std::fs::write(out_dir.join("stats.json"), serde_json::to_string_pretty(&stats)?)?;
    Ok(())
}

fn write_progression(out_dir: &Path, net: &ProgressionNetwork, seed: u64) -> Result<()> {
    net.graph.write_csv(out_dir.join("nodes.csv"), out_dir.join("edges.csv"))?;
    let communities = net.partition.iter().copied().max().map_or(0, |m| m + 1);
    let stats = json!({
        "nodes": net.graph.node_count(),
        "edges": net.graph.edge_count(),
        "avgdeg": net.avgdeg,
        "modularity": net.modularity,
        "communities": communities,
        "seed": seed,
        "counts": net.counts,
        "partition": net.partition,
    });
    std::fs::write(out_dir.join("stats.json"), serde_json::to_string_pretty(&stats)?)?;
    Ok(())
}

fn cmd_design(args: DesignArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    log_config(json!({
        "subcommand": "design",
        "kind": format!("{:?}", args.kind),
        "ref_nodes": args.ref_nodes,
        "ref_edges": args.ref_edges,
        "nnodes": args.nnodes,
        "nedges": args.nedges,
        "nstart": args.nstart,
        "reverse": args.reverse,
        "seed": args.seed,
        "fac": args.fac,
        "midi": args.midi,
        "out_dir": args.out_dir,
    }));
    let reference = Graph::read_csv(&args.ref_nodes, &args.ref_edges, false)?;
    let DesignRun { sequence, route } = match args.kind {
        DesignKind::Harmonic => harmonic_design(
            &reference,
            args.nnodes,
            args.nedges,
            args.nstart,
            args.seed,
            args.reverse,
        )?,
        DesignKind::Rhythmic => rhythmic_design(
            &reference,
            args.nnodes,
            args.nedges,
            args.nstart,
            args.seed,
            args.reverse,
        )?,
    };
    std::fs::write(args.out_dir.join("design.json"), sequence.to_json())?;
    std::fs::write(args.out_dir.join("route.json"), serde_json::to_string_pretty(&route)?)?;
    if let Some(midi_path) = &args.midi {
        if args.kind != DesignKind::Harmonic {
            bail!("MIDI emission needs a harmonic design for the pitch sequence");
        }
        let durations = match &args.durations {
            Some(path) => DesignSequence::from_json(&std::fs::read_to_string(path)?)?,
            None => DesignSequence { items: vec!["[1/4]".to_string()] },
        };
        let events = score_design(&sequence, &durations, args.fac, args.tet)?;
        std::fs::write(
            args.out_dir.join("score_events.json"),
            serde_json::to_string_pretty(&events)?,
        )?;
        write_midi(&events, midi_path, args.tpq, args.bpm)?;
    }
    Ok(())
}

fn cmd_sonify(args: SonifyArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    let out = args.out.clone().unwrap_or_else(|| args.out_dir.join("music.mid"));
    log_config(json!({
        "subcommand": "sonify",
        "input": args.input,
        "scale": args.scale,
        "base_note": args.base_note,
        "octaves": args.octaves,
        "tpq": args.tpq,
        "bpm": args.bpm,
        "out": out,
    }));
    let series = read_series(&args.input)?;
    let scale = scale_map(&args.scale)?;
    let events = midi_map(&series, &scale, args.base_note, args.octaves)?;
    write_midi(&events, &out, args.tpq, args.bpm)?;
    Ok(())
}

fn log_config(config: serde_json::Value) {
    eprintln!("mspace: config {config}");
}
