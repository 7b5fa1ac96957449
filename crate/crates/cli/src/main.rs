//! Command line for directed {m,n} tilings.
//!
//! Exit codes: 0 on success, 1 when a verification or realizability check
//! fails, 2 on usage or schema errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;

use dirtile::alignment::{
    apply_reversal, check_phi_generated, check_psi_reflective, generate_from_scheme, infer_psi,
    reflect_automorphism,
};
use dirtile::dihedral::{DihedralElement, EdgeReversalCode};
use dirtile::error::Error;
use dirtile::mgon::{count_isomorphism_classes, enumerate_representatives, MGonCategory};
use dirtile::patch::{CoxeterParams, TilingPatch};
use dirtile::render::{render_svg, RenderStyle};
use dirtile::reversal::{brute_force_maximal, enumerate_maximal, ReversalClosedSubset};
use dirtile::schema;

#[derive(Parser)]
#[command(
    name = "dirtile",
    version,
    about = "Build, realign, verify, and render directed {m,n} tilings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the canonical directed m-gon shapes and their count
    Enumerate {
        #[arg(long)]
        m: usize,
    },
    /// Show maximal reversal-closed subsets for a code (or all canonical codes)
    ReversalClosed(ReversalClosedArgs),
    /// Build a reflective {m,n} patch and write it to a file
    Build {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Category code as a sign string, e.g. "+--+-"
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate the edge reversal driven by a reflection scheme
    Align {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        scheme: PathBuf,
        /// Starting element of gamma for the base tile
        #[arg(long, default_value = "e")]
        sigma0: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check patch invariants, and optionally a reversal and its scheme
    Verify(VerifyArgs),
    /// Reflect across the geodesic through an edge and test psi-reflectivity
    Reflect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tau: PathBuf,
        #[arg(long)]
        edge: u32,
    },
    /// Emit an SVG figure of a patch, optionally with an edge reversal
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tau: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Print the label d_i next to each edge
        #[arg(long)]
        edge_labels: bool,
        /// Leave tiles unfilled
        #[arg(long)]
        no_fill: bool,
    },
}

#[derive(Args)]
struct ReversalClosedArgs {
    /// Code as a sign string; mutually exclusive with --m
    #[arg(long, conflicts_with = "m")]
    delta: Option<String>,
    /// Tabulate every canonical code of this length
    #[arg(long)]
    m: Option<usize>,
    /// Cross-check against the brute-force enumeration
    #[arg(long)]
    oracle: bool,
    /// Also show the subsets lifted to the k-fold repeated code
    #[arg(long, value_name = "K")]
    lift_repeat: Option<usize>,
    /// Also show the subsets lifted to the k-fold stretched code
    #[arg(long, value_name = "K")]
    lift_stretch: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    tau: Option<PathBuf>,
    #[arg(long, requires = "tau")]
    scheme: Option<PathBuf>,
    /// Recompute the reversal along this many random alternate tracks per
    /// interior tile (requires --scheme)
    #[arg(long, requires = "scheme", default_value_t = 0)]
    tracks: usize,
    /// Seed for the random track choices
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotRealizable { .. }
        | Error::NoTrack { .. }
        | Error::EmptyDomain(_)
        | Error::StabilizerViolation { .. } => 1,
        _ => 2,
    }
}

fn run(command: Command) -> dirtile::error::Result<ExitCode> {
    match command {
        Command::Enumerate { m } => {
            let reps = enumerate_representatives(m)?;
            for rep in &reps {
                println!("{}", rep.code());
            }
            println!("classes: {}", count_isomorphism_classes(m)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ReversalClosed(args) => reversal_closed(args),
        Command::Build {
            m,
            n,
            code,
            radius,
            out,
        } => {
            let patch = TilingPatch::build_reflective(
                CoxeterParams::new(m, n)?,
                MGonCategory::parse(&code)?,
                radius,
            )?;
            let report = patch.validate();
            if !report.is_empty() {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                return Ok(ExitCode::from(1));
            }
            schema::write_patch(&out, &patch)?;
            println!(
                "wrote {{{m},{n}}} patch over {code}: {} tiles, {} edges, {} vertices -> {}",
                patch.tiles().len(),
                patch.edges().len(),
                patch.vertices().len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Align {
            input,
            scheme,
            sigma0,
            out,
        } => {
            let patch = schema::read_patch(&input)?;
            let scheme = schema::read_scheme(&scheme)?;
            let sigma0 = DihedralElement::parse(patch.m(), &sigma0)?;
            let tau = generate_from_scheme(&patch, &scheme, &sigma0)?;
            if !check_phi_generated(&patch, &tau, &scheme)? {
                eprintln!("generated reversal failed its own local check");
                return Ok(ExitCode::from(1));
            }
            schema::write_reversal(&out, &tau, &input.display().to_string())?;
            println!(
                "wrote reversal for {} edges -> {}",
                tau.len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify(args),
        Command::Reflect { input, tau, edge } => {
            let patch = schema::read_patch(&input)?;
            let tau = schema::read_reversal(&tau, &patch)?;
            let geodesic = patch.geodesic_through(edge)?;
            let labels: Vec<usize> = geodesic
                .iter()
                .map(|&e| patch.edges()[e as usize].slots[0].1)
                .collect();
            println!("geodesic through edge {edge}: {} edges, labels {labels:?}", geodesic.len());
            let gamma = reflect_automorphism(&patch, &geodesic)?;
            let psi = infer_psi(&patch, &tau, &gamma)?;
            let ok = check_psi_reflective(&patch, &tau, &gamma, &psi)?;
            println!(
                "reflection domain: {} tiles, psi = {psi}, psi-reflective: {}",
                gamma.len(),
                if ok { "yes" } else { "no" }
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Render {
            input,
            tau,
            out,
            edge_labels,
            no_fill,
        } => {
            let patch = schema::read_patch(&input)?;
            let tau = tau
                .map(|p| schema::read_reversal(&p, &patch))
                .transpose()?;
            let mut style = RenderStyle::for_params(patch.params());
            style.show_edge_labels = edge_labels;
            style.fill_tiles = !no_fill;
            let svg = render_svg(&patch, tau.as_ref(), &style)?;
            std::fs::write(&out, svg)?;
            println!("wrote figure -> {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn format_subsets(subsets: &[ReversalClosedSubset]) -> String {
    subsets
        .iter()
        .map(|g| format!("{g}"))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn reversal_closed(args: ReversalClosedArgs) -> dirtile::error::Result<ExitCode> {
    let codes: Vec<EdgeReversalCode> = match (&args.delta, args.m) {
        (Some(delta), None) => vec![EdgeReversalCode::parse(delta)?],
        (None, Some(m)) => enumerate_representatives(m)?
            .into_iter()
            .map(|c| c.code().clone())
            .collect(),
        _ => {
            return Err(Error::InvalidParams(
                "pass exactly one of --delta or --m".into(),
            ))
        }
    };
    let mut ok = true;
    for delta in codes {
        let maximal = enumerate_maximal(&delta)?;
        println!("{delta}  {}", format_subsets(&maximal));
        if args.oracle {
            let oracle = brute_force_maximal(&delta)?;
            let matches = oracle.len() == maximal.len()
                && oracle
                    .iter()
                    .all(|g| maximal.iter().any(|h| h.elements() == g.elements()));
            println!("oracle: {}", if matches { "MATCH" } else { "MISMATCH" });
            ok &= matches;
        }
        if let Some(k) = args.lift_repeat {
            for g in &maximal {
                let lifted = g.lift_repeat(k)?;
                println!("repeat x{k} -> {}  {lifted}", lifted.delta());
            }
        }
        if let Some(k) = args.lift_stretch {
            for g in &maximal {
                let lifted = g.lift_stretch(k)?;
                println!("stretch x{k} -> {}  {lifted}", lifted.delta());
            }
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify(args: VerifyArgs) -> dirtile::error::Result<ExitCode> {
    let patch = schema::read_patch(&args.input)?;
    let report = patch.validate();
    let mut ok = report.is_empty();
    if ok {
        println!(
            "patch ok: {} tiles, {} edges, {} vertices, reflective: {}",
            patch.tiles().len(),
            patch.edges().len(),
            patch.vertices().len(),
            if patch.is_reflective() { "yes" } else { "no" }
        );
    } else {
        for v in &report.violations {
            println!("violation: {v}");
        }
    }

    let tau = args
        .tau
        .as_ref()
        .map(|p| schema::read_reversal(p, &patch))
        .transpose()?;
    if let Some(tau) = &tau {
        // Realizability: rebuild over the target the base tile points at.
        let target_code = patch
            .category()
            .code()
            .product(&tau.tile_tuple(&patch, patch.base_tile())?)?;
        let target = MGonCategory::new(target_code)?;
        match apply_reversal(&patch, tau, &target) {
            Ok((transformed, _)) => {
                let transformed_report = transformed.validate();
                if transformed_report.is_empty() {
                    println!("reversal ok: realizable over {}", target.code());
                } else {
                    ok = false;
                    for v in &transformed_report.violations {
                        println!("violation after reversal: {v}");
                    }
                }
            }
            Err(Error::NotRealizable { tile, tuple }) => {
                ok = false;
                println!("reversal not realizable over {}: tile {tile} has tuple {tuple}", target.code());
            }
            Err(e) => return Err(e),
        }
    }

    if let (Some(tau), Some(scheme_path)) = (&tau, &args.scheme) {
        let scheme = schema::read_scheme(scheme_path)?;
        if check_phi_generated(&patch, tau, &scheme)? {
            println!("scheme check ok at every interior tile");
        } else {
            ok = false;
            println!("scheme check failed");
        }
        if args.tracks > 0 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
            let base_tuple = tau.tile_tuple(&patch, patch.base_tile())?;
            let tiles: Vec<u32> = (0..patch.tiles().len() as u32).collect();
            let mut failures = 0usize;
            for &t in &patch.interior_tiles() {
                for _ in 0..args.tracks {
                    let &w = tiles.choose(&mut rng).expect("patch has tiles");
                    let mut route = patch.track_between(patch.base_tile(), w)?;
                    route.extend(patch.track_between(w, t)?);
                    let recomputed = base_tuple.product(&scheme.phi_of_route(&route))?;
                    if recomputed != tau.tile_tuple(&patch, t)? {
                        failures += 1;
                    }
                }
            }
            if failures == 0 {
                println!(
                    "track independence ok: {} random tracks per interior tile (seed {})",
                    args.tracks, args.seed
                );
            } else {
                ok = false;
                println!("track independence failed on {failures} tracks");
            }
        }
    }

    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
