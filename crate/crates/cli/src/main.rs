use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use fdif_core::compose::{GeneratorConfig, Generator, GridSpec, ObjectCount};
use fdif_core::library::{build_default_library, SubsetSelector};
use fdif_core::storage::{evenly_spaced, export_slices, read_sample, DatasetManifest, Mode, SliceAxis};
use fdif_core::validate::Suite;
use fdif_core::Error;

#[derive(Parser)]
#[command(name = "fdif", version, about = "Synthetic labeled 3D volumes from signed distance functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a segmentation dataset (many objects per volume, voxel labels).
    GenSeg(GenSeg),
    /// Generate a classification dataset (one centered object, class label).
    GenCls(GenCls),
    /// Export PNG slices of a sample file.
    Preview(Preview),
    /// Run the built-in correctness checks.
    Validate(Validate),
    /// Re-read every sample of a dataset and check it against the manifest.
    Verify(Verify),
    /// Print the shape-class table.
    ListShapes,
    /// Print one class recipe as JSON.
    DescribeClass(DescribeClass),
}

#[derive(Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

impl Toggle {
    fn on(self) -> bool {
        matches!(self, Toggle::On)
    }
}

#[derive(Args)]
struct Common {
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Grid size: `N` for a cube or `WxHxD`.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Class subset: default, extN, revN, combinedN, randomN or ids:1,2,3.
    #[arg(long)]
    subset: Option<SubsetSelector>,
    /// Surface displacement.
    #[arg(long, value_enum)]
    disp: Option<Toggle>,
    /// Per-object intensity mapper variation (off uses inverse cube for all).
    #[arg(long, value_enum)]
    map: Option<Toggle>,
    /// Worker threads (defaults to the available cores). Output does not
    /// depend on this.
    #[arg(long)]
    threads: Option<usize>,
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GenSeg {
    #[command(flatten)]
    common: Common,
    /// Number of samples.
    #[arg(long)]
    num: Option<u64>,
    /// Objects per sample: `K` or `MIN-MAX`.
    #[arg(long, value_parser = parse_objects)]
    objects: Option<ObjectCount>,
}

#[derive(Args)]
struct GenCls {
    #[command(flatten)]
    common: Common,
    /// Samples per class.
    #[arg(long)]
    per_class: Option<u64>,
}

#[derive(Args)]
struct Preview {
    /// Sample file to read.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_axis, default_value = "z")]
    axis: SliceAxis,
    /// Number of evenly spaced slices.
    #[arg(long, default_value_t = 3)]
    slices: usize,
    /// Output directory for the PNG files.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Eikonal,
    Sign,
    Distance,
    Labels,
    Determinism,
    Distribution,
    All,
}

#[derive(Args)]
struct Validate {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
}

#[derive(Args)]
struct Verify {
    /// Dataset directory containing manifest.json.
    #[arg(long)]
    dir: PathBuf,
}

#[derive(Args)]
struct DescribeClass {
    id: u32,
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let dims: Vec<u32> = s
        .split('x')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad grid {s:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let grid = match dims[..] {
        [n] => GridSpec::new(n, n, n),
        [w, h, d] => GridSpec::new(w, h, d),
        _ => return Err(format!("grid must be N or WxHxD, got {s:?}")),
    };
    grid.map_err(|e| e.to_string())
}

fn parse_objects(s: &str) -> Result<ObjectCount, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad object count {s:?}: {e}"));
    match s.split_once('-') {
        Some((a, b)) => Ok(ObjectCount::Range([num(a)?, num(b)?])),
        None => Ok(ObjectCount::Fixed(num(s)?)),
    }
}

fn parse_axis(s: &str) -> Result<SliceAxis, String> {
    s.parse()
}

/// Failures split by exit code: 2 for bad input, 1 for everything else.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::UnknownClass(_) | Error::SubsetTooLarge { .. } | Error::Json(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

fn load_config(mode: Mode, file: Option<&Path>) -> Result<GeneratorConfig, Failure> {
    let mut value = serde_json::to_value(GeneratorConfig::for_mode(mode)).expect("defaults serialize");
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
        let over: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        if !over.is_object() {
            return Err(Failure::Usage(format!("{}: expected a JSON object", path.display())));
        }
        merge(&mut value, over);
    }
    let cfg: GeneratorConfig =
        serde_json::from_value(value).map_err(|e| Failure::Usage(format!("invalid configuration: {e}")))?;
    if cfg.mode != mode {
        return Err(Failure::Usage("config file mode does not match the command".into()));
    }
    Ok(cfg)
}

fn apply_common(cfg: &mut GeneratorConfig, c: &Common) {
    if let Some(g) = c.grid {
        cfg.grid = g;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(s) = &c.subset {
        cfg.subset = s.clone();
    }
    if let Some(t) = c.disp {
        cfg.displacement = t.on();
    }
    if let Some(t) = c.map {
        cfg.mapper = t.on();
    }
}

fn generate(cfg: GeneratorConfig, c: &Common) -> Result<(), Failure> {
    let generator = Generator::new(cfg)?;
    let threads = c
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let total = generator.sample_count();
    let done = AtomicU64::new(0);
    let progress = |_| {
        let n = done.fetch_add(1, Ordering::Relaxed) + 1;
        if n == total || n.is_multiple_of(10) {
            eprint!("\r{n}/{total} samples");
            let _ = std::io::stderr().flush();
        }
    };
    let start = std::time::Instant::now();
    let result = generator.generate_dataset(&c.out, threads, &progress);
    eprintln!();
    let manifest = result?;
    println!(
        "wrote {} samples to {} in {:.1}s",
        manifest.samples.len(),
        c.out.display(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::GenSeg(a) => {
            let mut cfg = load_config(Mode::Segmentation, a.common.config.as_deref())?;
            apply_common(&mut cfg, &a.common);
            if let Some(n) = a.num {
                cfg.num = n;
            }
            if let Some(k) = a.objects {
                cfg.objects = k;
            }
            generate(cfg, &a.common)
        }
        Command::GenCls(a) => {
            let mut cfg = load_config(Mode::Classification, a.common.config.as_deref())?;
            apply_common(&mut cfg, &a.common);
            if let Some(n) = a.per_class {
                cfg.per_class = n;
            }
            generate(cfg, &a.common)
        }
        Command::Preview(a) => {
            let volume = read_sample(&a.input)?;
            let [w, h, d] = volume.grid.dims().map(|v| v as usize);
            let len = match a.axis {
                SliceAxis::X => w,
                SliceAxis::Y => h,
                SliceAxis::Z => d,
            };
            if a.slices == 0 || a.slices > len {
                return Err(Failure::Usage(format!("--slices must be in 1..={len}")));
            }
            for f in export_slices(&volume, a.axis, &evenly_spaced(len, a.slices), &a.out)? {
                println!("{}", f.display());
            }
            Ok(())
        }
        Command::Validate(a) => {
            let suites: Vec<Suite> = match a.suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::Eikonal => vec![Suite::Eikonal],
                SuiteArg::Sign => vec![Suite::Sign],
                SuiteArg::Distance => vec![Suite::Distance],
                SuiteArg::Labels => vec![Suite::Labels],
                SuiteArg::Determinism => vec![Suite::Determinism],
                SuiteArg::Distribution => vec![Suite::Distribution],
            };
            let mut failed = 0;
            for s in suites {
                for c in s.run() {
                    println!("{c}");
                    failed += usize::from(!c.passed);
                }
            }
            if failed > 0 {
                return Err(Failure::Runtime(format!("{failed} check(s) failed")));
            }
            Ok(())
        }
        Command::Verify(a) => {
            let manifest = DatasetManifest::read(&a.dir)?;
            let bad = manifest.verify(&a.dir);
            for (entry, why) in &bad {
                println!("FAIL {}: {why}", entry.file);
            }
            println!("{} of {} samples verified", manifest.samples.len() - bad.len(), manifest.samples.len());
            if !bad.is_empty() {
                return Err(Failure::Runtime("checksum verification failed".into()));
            }
            Ok(())
        }
        Command::ListShapes => {
            let lib = build_default_library();
            let mut out = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) just ends the listing
            let _ = writeln!(out, "{:>4}  {:<24} base", "id", "construction").and_then(|_| {
                lib.recipes
                    .iter()
                    .try_for_each(|r| writeln!(out, "{:>4}  {:<24} {}", r.id, r.construction_label(), r.base_label()))
            });
            Ok(())
        }
        Command::DescribeClass(a) => {
            let lib = build_default_library();
            let recipe = lib.get(a.id).ok_or(Error::UnknownClass(a.id))?;
            println!("{}", serde_json::to_string_pretty(recipe).expect("recipe serializes"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
