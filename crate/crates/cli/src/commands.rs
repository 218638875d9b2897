use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use mcur_core::chain::{EdgeCell, FaceCell};
use mcur_core::curves::{self, curve_split_decomposition, CurvePiece};
use mcur_core::decompose::{big_component_bound_check, greedy_decompose, variational_oracle, Indecomposability};
use mcur_core::io::{self, ParseError};
use mcur_core::planar::{self, PixelSet, SimplicityMethod};
use mcur_core::rational::{format_rational, parse_rational};
use mcur_core::{
    flat_norm, indecomposability, minimal_filling, render, report_row, BatchReport, Chain1, Decomposition,
    FlatNormCache, MetricComplex, SearchMode,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{
    CheckArgs, Cli, Command, CurveArgs, DecomposeArgs, DecomposeMethod, FillArgs, Mode, PlanarArgs, PlanarCheck,
    PlanarMethod, ReportArgs,
};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Parse(String),
    /// Well-formed input that an operation cannot accept.
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) => f.write_str(m),
        }
    }
}

fn precondition(e: impl fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

fn parse_at(path: &Path) -> impl Fn(ParseError) -> CliError + '_ {
    move |e| CliError::Parse(format!("{}: {e}", path.display()))
}

type Result<T> = std::result::Result<T, CliError>;

/// Caps the worker pool at `MCUR_THREADS` when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("MCUR_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Parse(format!("MCUR_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(precondition)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<MetricComplex> {
    io::parse_complex(&read(path)?).map_err(parse_at(path))
}

fn load_chain(cx: &MetricComplex, path: &Path) -> Result<Chain1> {
    io::parse_chain::<EdgeCell>(cx, &read(path)?).map_err(parse_at(path))
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Decompose(args) => decompose(args),
        Command::Flatnorm(args) => {
            let cx = load_complex(&args.complex)?;
            let t = load_chain(&cx, &args.chain)?;
            flatnorm(&cx, &t)
        }
        Command::Fill(args) => fill(args),
        Command::Check(args) => check(args),
        Command::Curve(args) => curve(args),
        Command::Planar(args) => planar(args),
        Command::Report(args) => report(args, cli.seed),
    }
}

fn search_mode(mode: Mode) -> SearchMode {
    match mode {
        Mode::Exact => SearchMode::Exact,
        Mode::Heuristic => SearchMode::Heuristic,
    }
}

fn print_components(cx: &MetricComplex, dec: &Decomposition) -> Result<()> {
    println!("components {}", dec.len());
    for (i, c) in dec.components().iter().enumerate() {
        let n = cx.normal_mass(c).map_err(precondition)?;
        println!("  {}: {} N = {}", i + 1, c.describe(cx), format_rational(&n));
    }
    println!("certificate {}", if dec.certificate().is_valid() { "valid" } else { "invalid" });
    Ok(())
}

fn decompose(args: &DecomposeArgs) -> Result<()> {
    let cx = load_complex(&args.input.complex)?;
    let t = load_chain(&cx, &args.input.chain)?;
    let dec = match args.method {
        DecomposeMethod::Greedy => greedy_decompose(&cx, &t, search_mode(args.mode)).map_err(precondition)?,
        DecomposeMethod::VariationalOracle => {
            let alpha = parse_rational(&args.alpha)
                .ok_or_else(|| CliError::Parse(format!("invalid rational `{}` for --alpha", args.alpha)))?;
            let res = variational_oracle(&cx, &t, &alpha).map_err(precondition)?;
            println!("energy {:.12} (alpha {}, unique {})", res.energy.value, format_rational(&alpha), res.unique);
            res.decomposition
        }
    };
    println!("method {}", dec.method());
    print_components(&cx, &dec)?;
    if args.bound {
        let rep = big_component_bound_check(&cx, &t, &dec, &FlatNormCache::new()).map_err(precondition)?;
        println!("F(T) = {}", format_rational(&rep.flat_parent));
        println!("F(T)/(N(T1)N(T)) = {}", format_rational(&rep.empirical_constant));
        println!("chain inequalities hold {}", rep.chain_inequalities_ok);
    }
    if let Some(out) = &args.out {
        write(out, &io::write_decomposition(&cx, &dec))?;
    }
    if let Some(svg) = &args.svg {
        write(svg, &render::render_decomposition(&cx, &dec).map_err(precondition)?)?;
    }
    Ok(())
}

fn flatnorm(cx: &MetricComplex, t: &Chain1) -> Result<()> {
    let res = flat_norm(cx, t).map_err(precondition)?;
    let masses = cx.mass_report(t).map_err(precondition)?;
    println!("F = {}", format_rational(&res.value));
    println!("M = {}", format_rational(&masses.mass));
    println!("N = {}", format_rational(&masses.normal_mass));
    println!("r = {}", res.r.describe(cx));
    println!("s = {}", res.s.describe(cx));
    println!("optimal {}", res.optimal);
    println!("relaxation integral {}", res.relaxation_integral);
    Ok(())
}

fn fill(args: &FillArgs) -> Result<()> {
    let cx = load_complex(&args.input.complex)?;
    let t = load_chain(&cx, &args.input.chain)?;
    let res = minimal_filling(&cx, &t).map_err(precondition)?;
    println!("feasible {}", res.feasible);
    if res.feasible {
        println!("fill mass = {}", format_rational(&res.fill_mass));
        println!("s = {}", res.s.describe(&cx));
        if let Some(out) = &args.out {
            write(out, &io::write_chain::<FaceCell>(&cx, &res.s))?;
        }
    }
    Ok(())
}

fn check(args: &CheckArgs) -> Result<()> {
    let cx = load_complex(&args.complex)?;
    if let Some(path) = &args.dec {
        let dec = io::parse_decomposition(&cx, &read(path)?).map_err(parse_at(path))?;
        println!("valid true");
        println!("method {}", dec.method());
        return print_components(&cx, &dec);
    }
    let path = args.chain.as_ref().expect("clap requires --chain or --dec");
    let t = load_chain(&cx, path)?;
    match indecomposability(&cx, &t).map_err(precondition)? {
        Indecomposability::Zero => println!("indecomposable false (zero chain)"),
        Indecomposability::Indecomposable(shape) => {
            let names: Vec<&str> = shape.vertices.iter().map(|&v| cx.vertex(v).name.as_str()).collect();
            println!("indecomposable true");
            println!("{:?} {}", shape.kind, names.join(" "));
        }
        Indecomposability::Decomposable { first, second } => {
            println!("indecomposable false");
            println!("witness {} + {}", first.describe(&cx), second.describe(&cx));
        }
    }
    Ok(())
}

fn curve(args: &CurveArgs) -> Result<()> {
    let cx = load_complex(&args.complex)?;
    let c = io::parse_walk(&cx, &read(&args.walk)?).map_err(parse_at(&args.walk))?;
    let t = curves::currentify(&cx, &c).map_err(precondition)?;
    println!("classification {}", curves::classify(&c));
    println!("length = {}", format_rational(&curves::length(&cx, &c).map_err(precondition)?));
    println!("mass = {}", format_rational(&cx.mass(&t).map_err(precondition)?));
    println!("chain {}", t.describe(&cx));
    if args.split {
        let dec = curve_split_decomposition(&cx, &c).map_err(precondition)?;
        println!("method {}", dec.method());
        print_components(&cx, &dec)?;
    }
    if let Some(out) = &args.out {
        write(out, &io::write_chain(&cx, &t))?;
    }
    Ok(())
}

fn planar(args: &PlanarArgs) -> Result<()> {
    let a = io::parse_pbm(&read(&args.image)?).map_err(parse_at(&args.image))?;
    let method = match args.method {
        PlanarMethod::ViaBoundary => SimplicityMethod::ViaBoundary,
        PlanarMethod::ViaConnectivity => SimplicityMethod::ViaConnectivity,
    };
    println!("perimeter {}", a.perimeter());
    let jordan = match args.check {
        PlanarCheck::Simple => {
            let simple = planar::is_simple(&a, method).map_err(precondition)?;
            println!("simple: {simple}");
            if simple {
                Some(planar::jordan_loop(&a).map_err(precondition)?)
            } else {
                None
            }
        }
        PlanarCheck::Components => {
            let comps = planar::indecomposable_components(&a);
            println!("components: {}", comps.len());
            for (i, comp) in comps.iter().enumerate() {
                println!("  {}: cells {} perimeter {}", i + 1, comp.len(), comp.perimeter());
            }
            None
        }
        PlanarCheck::Loop => {
            let lp = planar::jordan_loop(&a).map_err(precondition)?;
            print_loop(&a, &lp);
            Some(lp)
        }
    };
    if let (Some(out), Some(lp)) = (&args.out, &jordan) {
        write(out, &io::write_walk(a.complex(), lp))?;
    }
    if let Some(svg) = &args.svg {
        write(svg, &render::render_pixels(&a, jordan.as_ref()).map_err(precondition)?)?;
    }
    Ok(())
}

fn print_loop(a: &PixelSet, lp: &CurvePiece) {
    let pts: Vec<String> = lp
        .vertices()
        .iter()
        .map(|&v| {
            let (x, y) = a.grid().point(v);
            format!("({x},{y})")
        })
        .collect();
    println!("loop {}", pts.join(" "));
}

fn chain_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Parse(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::Parse(format!("{}: {e}", dir.display())))?.path();
        if path.extension().is_some_and(|x| x == "ch1") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn random_chain(cx: &MetricComplex, rng: &mut ChaCha8Rng) -> Result<Chain1> {
    let mut edges: Vec<usize> = (0..cx.edges().len()).collect();
    edges.shuffle(rng);
    let k = rng.random_range(1..=edges.len().min(8));
    let coeffs: Vec<(usize, i64)> = edges[..k]
        .iter()
        .map(|&e| {
            let c = rng.random_range(1..=3);
            (e, if rng.random::<bool>() { c } else { -c })
        })
        .collect();
    Chain1::from_coeffs(cx, coeffs).map_err(precondition)
}

fn report(args: &ReportArgs, seed: u64) -> Result<()> {
    let cx = load_complex(&args.complex)?;
    if cx.edges().is_empty() && args.random > 0 {
        return Err(CliError::Precondition("cannot sample chains on a complex without edges".into()));
    }
    let mut inputs = Vec::new();
    if let Some(dir) = &args.dir {
        for path in chain_files(dir)? {
            let label = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            inputs.push((label, load_chain(&cx, &path)?));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..args.random {
        inputs.push((format!("random{i}"), random_chain(&cx, &mut rng)?));
    }
    let mode = search_mode(args.mode);
    let cache = FlatNormCache::new();
    let rows = inputs
        .par_iter()
        .map(|(label, t)| report_row(&cx, label.clone(), t, mode, &cache).map_err(precondition))
        .collect::<Result<Vec<_>>>()?;
    let batch = BatchReport::new(rows);
    let text = batch.to_text();
    match &args.out {
        Some(out) => write(out, &text)?,
        None => print!("{text}"),
    }
    if let Some(svg) = &args.svg {
        write(svg, &render::render_report_scatter(&batch))?;
    }
    Ok(())
}
