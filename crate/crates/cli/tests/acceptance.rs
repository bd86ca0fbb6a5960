//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use fdif_core::compose::{render_primitive, GridSpec, PrimitiveInstance, RenderOptions, SampleProvenance};
use fdif_core::geometry::{AffineTransform, Point3, Shape3};
use fdif_core::library::SdfInstance;
use fdif_core::storage::{
    encode_sample, read_sample, write_sample, DatasetManifest, Labels, ManifestStatus, HEADER_LEN,
};
use fdif_core::texture::{DisplacementSpec, MapperSpec};
use fdif_core::validate::{direct_masks, Check, Suite};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Result<Outcome, String> + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks(checks: Vec<Check>) -> Outcome {
    let passed = checks.iter().all(|c| c.passed);
    let detail = checks
        .iter()
        .map(|c| format!("{}={}", c.name, if c.passed { "ok" } else { "FAILED" }))
        .collect::<Vec<_>>()
        .join(", ");
    for c in &checks {
        println!("    {c}");
    }
    Outcome { passed, detail }
}

fn fdif(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fdif"))
        .args(args)
        .output()
        .expect("fdif binary runs")
}

fn run_ok(args: &[&str]) -> Result<f64, String> {
    let start = Instant::now();
    let out = fdif(args);
    if !out.status.success() {
        return Err(format!(
            "fdif {} exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(start.elapsed().as_secs_f64())
}

fn sorted_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

fn eikonal() -> Outcome {
    from_checks(Suite::Eikonal.run())
}

fn sign() -> Outcome {
    from_checks(Suite::Sign.run())
}

fn distance() -> Outcome {
    from_checks(Suite::Distance.run())
}

fn labels() -> Outcome {
    from_checks(Suite::Labels.run())
}

fn determinism(tmp: &Path) -> Result<Outcome, String> {
    let start = Instant::now();
    let a = tmp.join("det1");
    let b = tmp.join("det8");
    let base = ["gen-seg", "--num", "3", "--grid", "48", "--objects", "10", "--seed", "123"];
    for (dir, threads) in [(&a, "1"), (&b, "8")] {
        let mut args = base.to_vec();
        args.extend(["--threads", threads, "--out", dir.to_str().unwrap()]);
        run_ok(&args)?;
    }
    let fa = sorted_files(&a);
    let fb = sorted_files(&b);
    let names = |v: &[PathBuf]| v.iter().map(|p| p.file_name().unwrap().to_owned()).collect::<Vec<_>>();
    let same_names = names(&fa) == names(&fb) && fa.len() == 7;
    let identical = same_names && fa.iter().zip(&fb).all(|(x, y)| fs::read(x).unwrap() == fs::read(y).unwrap());
    let secs = start.elapsed().as_secs_f64();
    Ok(Outcome {
        passed: identical && secs < 30.0,
        detail: format!("{} files byte-identical: {identical}; {secs:.1}s (limit 30s)", fa.len()),
    })
}

fn corpus(tmp: &Path) -> Result<Outcome, String> {
    let dir = tmp.join("corpus");
    let secs = run_ok(&[
        "gen-seg",
        "--num",
        "50",
        "--grid",
        "96",
        "--objects",
        "20",
        "--seed",
        "2024",
        "--threads",
        "8",
        "--out",
        dir.to_str().unwrap(),
    ])?;
    let manifest = DatasetManifest::read(&dir).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    if manifest.samples.len() != 50 || manifest.status != ManifestStatus::Complete {
        problems.push(format!("{} samples, status {:?}", manifest.samples.len(), manifest.status));
    }
    for e in &manifest.samples {
        let v = read_sample(&dir.join(&e.file)).map_err(|e| e.to_string())?;
        if v.grid != GridSpec::cube(96) {
            problems.push(format!("{}: grid {:?}", e.file, v.grid.dims()));
        }
        if !v.intensity.iter().all(|x| x.is_finite() && (0.0..=1.0).contains(x)) {
            problems.push(format!("{}: intensity outside [0,1] or non-finite", e.file));
        }
        if v.max_label() > 109 {
            problems.push(format!("{}: label {}", e.file, v.max_label()));
        }
        let prov: SampleProvenance =
            serde_json::from_str(&fs::read_to_string(dir.join(&e.provenance)).unwrap()).unwrap();
        if prov.primitives.len() != 20 {
            problems.push(format!("{}: {} primitives", e.file, prov.primitives.len()));
        }
    }
    let per_volume = secs / 50.0;
    let paper_scale_hours = per_volume * 5000.0 / 3600.0;
    Ok(Outcome {
        passed: problems.is_empty() && per_volume <= 2.0 && paper_scale_hours < 3.0,
        detail: format!(
            "50 volumes in {secs:.1}s ({per_volume:.3}s/volume, limit 2s; 5000-volume run projected at {paper_scale_hours:.2}h on {} core(s)); problems: {problems:?}",
            std::thread::available_parallelism().map_or(1, |n| n.get())
        ),
    })
}

fn class_balance() -> Outcome {
    from_checks(
        Suite::Distribution
            .run()
            .into_iter()
            .filter(|c| c.name == "class-balance")
            .collect(),
    )
}

fn classification(tmp: &Path) -> Result<Outcome, String> {
    let dir = tmp.join("cls");
    run_ok(&["gen-cls", "--per-class", "2", "--seed", "5", "--out", dir.to_str().unwrap()])?;
    let manifest = DatasetManifest::read(&dir).map_err(|e| e.to_string())?;
    let mut per_class = vec![0u32; 110];
    let mut worst = 0.0f64;
    let mut problems = Vec::new();
    for e in &manifest.samples {
        let v = read_sample(&dir.join(&e.file)).map_err(|e| e.to_string())?;
        let class = match v.labels {
            Labels::Class(c) => c,
            Labels::Dense(_) => return Err("classification sample has dense labels".into()),
        };
        per_class[class as usize] += 1;
        let prov: SampleProvenance =
            serde_json::from_str(&fs::read_to_string(dir.join(&e.provenance)).unwrap()).unwrap();
        let t = *prov.primitives[0].transform.translation();
        if t != Point3::zeros() {
            problems.push(format!("{}: translation {t:?}", e.file));
        }
        let (_, mask) = &direct_masks(&v.grid, &prov.primitives)[0];
        let (mut sum, mut n) = ([0.0f64; 3], 0usize);
        for (idx, _) in mask.iter().enumerate().filter(|(_, &m)| m) {
            let (i, j, k) = v.grid.unindex(idx);
            sum[0] += i as f64;
            sum[1] += j as f64;
            sum[2] += k as f64;
            n += 1;
        }
        if n == 0 {
            problems.push(format!("{}: empty foreground", e.file));
            continue;
        }
        let c = 31.5;
        let off = sum.map(|s| s / n as f64 - c);
        worst = worst.max((off[0] * off[0] + off[1] * off[1] + off[2] * off[2]).sqrt());
    }
    let balanced = per_class[1..].iter().all(|&c| c == 2) && per_class[0] == 0;
    Ok(Outcome {
        passed: manifest.samples.len() == 218 && balanced && worst <= 3.0 && problems.is_empty(),
        detail: format!(
            "{} samples, exactly 2 per class: {balanced}; worst centroid offset {worst:.2} voxels (limit 3); problems: {problems:?}",
            manifest.samples.len()
        ),
    })
}

fn sphere_volume() -> Outcome {
    let grid = GridSpec::cube(96);
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for (r, t) in [(0.5, Point3::zeros()), (0.8, Point3::new(0.1, -0.05, 0.0)), (0.3, Point3::new(-0.4, 0.3, 0.2))] {
        let prim = PrimitiveInstance {
            class_id: 1,
            sdf: SdfInstance {
                class_id: 1,
                shape: Shape3::Sphere { radius: r },
            },
            transform: AffineTransform::translation_only(t).unwrap(),
            displacement_id: None,
            displacement: DisplacementSpec::Identity,
            mapper_id: None,
            mapper: MapperSpec::InverseCube {
                alpha: 1e-3,
                epsilon: 0.1,
            },
            volume: 0,
        };
        let got = render_primitive(&grid, &prim, RenderOptions::default()).volume as f64;
        let expected = 4.0 / 3.0 * std::f64::consts::PI * (r * 48.0f64).powi(3);
        let rel = (got / expected - 1.0).abs();
        worst = worst.max(rel);
        lines.push(format!("r={r}: {got} vs {expected:.0}"));
    }
    Outcome {
        passed: worst <= 0.02,
        detail: format!("{}; worst relative error {:.3}% (limit 2%)", lines.join(", "), 100.0 * worst),
    }
}

fn storage(tmp: &Path) -> Result<Outcome, String> {
    let dir = tmp.join("store");
    run_ok(&["gen-seg", "--num", "2", "--grid", "32", "--objects", "5", "--seed", "9", "--out", dir.to_str().unwrap()])?;
    let manifest = DatasetManifest::read(&dir).map_err(|e| e.to_string())?;
    let first = dir.join(&manifest.samples[0].file);
    let original = fs::read(&first).unwrap();
    let volume = read_sample(&first).map_err(|e| e.to_string())?;
    let copy = tmp.join("copy.fdif");
    let sum = write_sample(&volume, &copy).map_err(|e| e.to_string())?;
    let round_trip = fs::read(&copy).unwrap() == original
        && encode_sample(&read_sample(&copy).unwrap()).unwrap() == original
        && sum == manifest.samples[0].checksum;

    let clean = fdif(&["verify", "--dir", dir.to_str().unwrap()]).status.code();
    let mut corrupted = original.clone();
    corrupted[HEADER_LEN + 1234] ^= 0x10;
    fs::write(&first, &corrupted).unwrap();
    let dirty = fdif(&["verify", "--dir", dir.to_str().unwrap()]).status.code();
    Ok(Outcome {
        passed: round_trip && clean == Some(0) && dirty == Some(1),
        detail: format!(
            "write/read/write identical: {round_trip}; verify exit clean={clean:?}, after 1-byte corruption={dirty:?}"
        ),
    })
}

fn main() {
    let tmp = tempfile::tempdir().expect("temp dir");
    let t = tmp.path();
    let criteria: Vec<Criterion> = vec![
        ("eikonal suite", Box::new(|| Ok(eikonal()))),
        ("sign suite", Box::new(|| Ok(sign()))),
        ("distance suite and cone apex", Box::new(|| Ok(distance()))),
        ("label-rule equivalence", Box::new(|| Ok(labels()))),
        ("determinism across thread counts", Box::new(|| determinism(t))),
        ("corpus shape at scale-down", Box::new(|| corpus(t))),
        ("class balance", Box::new(|| Ok(class_balance()))),
        ("classification mode", Box::new(|| classification(t))),
        ("sphere voxel volume", Box::new(|| Ok(sphere_volume()))),
        ("storage round trip and corruption", Box::new(|| storage(t))),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: e,
        });
        failed += usize::from(!outcome.passed);
        println!(
            "ACCEPTANCE {} {name} ({:.1}s): {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
