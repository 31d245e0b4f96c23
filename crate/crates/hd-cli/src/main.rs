use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use heegaard::bounds::{
    entropy_bounds, geometric_entropy_bounds, penner_family, tube_metrics, CoverLength, GeometricProfile, TubeInput,
};
use heegaard::build::random_from;
use heegaard::covers::{cohomology_basis, cyclic_cover};
use heegaard::domains::check_weak_admissibility;
use heegaard::generators::enumerate_generators;
use heegaard::presentation::{first_homology, intersection_stats, short_curve_report, u_beta_presentation};
use heegaard::winding::{wind_with, WindOptions};
use heegaard::{parse_diagram, parse_unchecked, reduce_to_pointed, serialize, CocycleClass, Diagram, Handle};

#[derive(Parser)]
#[command(name = "hd", version, about = "Combinatorial Heegaard diagram toolkit")]
struct Cli {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Files {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Worker threads; output order follows the inputs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every validity rule.
    Validate(Files),
    /// Intersection data, homology, presentation length, admissibility.
    Invariants(Files),
    /// Presentation read along the alpha curves.
    Present(Files),
    /// Weak admissibility with a witness when it fails.
    Admissible(Files),
    /// Wind alpha curves until the diagram is weakly admissible.
    Wind {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Extra rounds beyond the required count.
        #[arg(long, default_value_t = 0)]
        extra: usize,
    },
    /// Cyclic cover dual to a cohomology class.
    Cover {
        file: PathBuf,
        #[arg(long)]
        sheets: u64,
        /// Weights on the beta curves, comma separated; defaults to the first
        /// cohomology basis vector.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        class: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also reduce the cover to a singly pointed diagram.
        #[arg(long)]
        reduce: bool,
    },
    /// Reduce a multi-pointed diagram to one marked point.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count generators; optionally list some.
    Generators {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        list: Option<usize>,
    },
    /// Entropy bounds from intersection data.
    Bounds {
        file: PathBuf,
        /// Fiber genus of the class.
        #[arg(long, default_value_t = 3)]
        genus: u32,
        /// Heegaard presentation length, for the bound through a cover.
        #[arg(long, requires = "degree")]
        length: Option<u64>,
        #[arg(long, requires = "length")]
        degree: Option<u64>,
    },
    /// Complete a hyperbolic tube from any two of r, l, volume, wrist.
    Tube {
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        l: Option<f64>,
        #[arg(long)]
        volume: Option<f64>,
        #[arg(long)]
        wrist: Option<f64>,
        #[arg(long)]
        phi: Option<f64>,
    },
    /// Thick/thin and arithmetic bound chains.
    Geom {
        #[arg(long = "vol-w")]
        vol_w: f64,
        #[arg(long, value_delimiter = ',')]
        wrists: Vec<f64>,
        #[arg(long = "tube-vols", value_delimiter = ',')]
        tube_vols: Vec<f64>,
        #[arg(long = "total-vol")]
        total_vol: f64,
        #[arg(long)]
        systole: f64,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 0.104)]
        mu: f64,
        #[arg(long = "Dmu")]
        dmu: Option<f64>,
        #[arg(long)]
        genus: Option<u32>,
    },
    /// The monodromy family and its spectral data.
    Penner {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long = "w-inf", requires = "vol_inf")]
        w_inf: Option<f64>,
        #[arg(long = "vol-inf", requires = "w_inf")]
        vol_inf: Option<f64>,
    },
    /// Random valid diagram from standard handles and finger moves.
    Random {
        #[arg(long)]
        seed: u64,
        /// Handles: s3, p3, l<p>, s1s2; comma separated.
        #[arg(long, value_delimiter = ',', default_value = "s3")]
        handles: Vec<String>,
        #[arg(long, default_value_t = 1)]
        points: usize,
        /// Finger moves to apply.
        #[arg(long, default_value_t = 4)]
        moves: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Fail {
    Usage(String),
    Domain(String),
    /// Ran to completion but some input was rejected.
    Rejected(String, Value),
}

type Out = Result<(String, Value), Fail>;

fn read(p: &Path) -> Result<String, Fail> {
    fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{}: {}", p.display(), e)))
}

fn load(p: &Path) -> Result<Diagram, Fail> {
    parse_diagram(&read(p)?).map_err(|e| Fail::Domain(format!("{}: {}", p.display(), e)))
}

fn write_out(p: &Option<PathBuf>, d: &Diagram) -> Result<(), Fail> {
    if let Some(p) = p {
        fs::write(p, serialize(d)).map_err(|e| Fail::Usage(format!("{}: {}", p.display(), e)))?;
    }
    Ok(())
}

fn dom<E: std::fmt::Display>(e: E) -> Fail {
    Fail::Domain(e.to_string())
}

fn parse_handle(s: &str) -> Result<Handle, Fail> {
    match s {
        "s3" => Ok(Handle::Lens(1)),
        "p3" => Ok(Handle::Lens(2)),
        "s1s2" => Ok(Handle::Product),
        _ => s
            .strip_prefix('l')
            .and_then(|p| p.parse::<u32>().ok())
            .filter(|&p| p >= 1)
            .map(Handle::Lens)
            .ok_or_else(|| Fail::Usage(format!("unknown handle {:?}", s))),
    }
}

/// Per-file result: text line, JSON value, success.
type FileResult = (String, Value, bool);

fn each_file(files: &Files, f: impl Fn(&Path) -> Result<FileResult, Fail> + Sync) -> Out {
    let n = files.files.len();
    let jobs = files.jobs.max(1).min(n.max(1));
    let mut results: Vec<Option<Result<FileResult, Fail>>> = (0..n).map(|_| None).collect();
    std::thread::scope(|s| {
        let chunks: Vec<(usize, &mut [Option<Result<FileResult, Fail>>])> = {
            let size = n.div_ceil(jobs).max(1);
            results.chunks_mut(size).enumerate().map(|(i, c)| (i * size, c)).collect()
        };
        for (start, chunk) in chunks {
            let f = &f;
            let paths = &files.files;
            s.spawn(move || {
                for (k, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(f(&paths[start + k]));
                }
            });
        }
    });
    let mut text = Vec::new();
    let mut vals = Vec::new();
    let mut ok = true;
    for (p, r) in files.files.iter().zip(results) {
        let (t, mut v, good) = r.expect("every slot filled")?;
        ok &= good;
        v["file"] = json!(p.display().to_string());
        text.push(if n > 1 { format!("{}: {}", p.display(), t) } else { t });
        vals.push(v);
    }
    let value = json!({ "results": vals, "ok": ok });
    if ok {
        Ok((text.join("\n"), value))
    } else {
        Err(Fail::Rejected(text.join("\n"), value))
    }
}

fn validate_one(p: &Path) -> Result<FileResult, Fail> {
    let d = match parse_unchecked(&read(p)?) {
        Ok(d) => d,
        Err(e) => {
            let line = e.to_string();
            return Ok((line.clone(), json!({ "valid": false, "parse_error": line }), false));
        }
    };
    let rep = d.validate();
    let k = d.vertices.len();
    let text = if rep.is_valid() {
        let pts = if d.points.len() > 1 { format!(", {} marked points", d.points.len()) } else { String::new() };
        format!("valid, genus {}, k={}{}", d.genus, k, pts)
    } else {
        let lines: Vec<String> = rep.violations.iter().map(|v| v.to_string()).collect();
        format!("invalid\n{}", lines.join("\n"))
    };
    Ok((text, json!({ "valid": rep.is_valid(), "k": k, "report": rep }), rep.is_valid()))
}

fn invariants_one(p: &Path) -> Result<FileResult, Fail> {
    let d = load(p)?;
    let stats = intersection_stats(&d);
    let h = first_homology(&d).map_err(dom)?;
    let pres = if d.points.len() == 1 { Some(u_beta_presentation(&d).map_err(dom)?) } else { None };
    let adm = check_weak_admissibility(&d).map_err(dom)?;
    let short = short_curve_report(&d).map_err(dom)?;
    let mut text = format!(
        "genus {}, k={}, k_alpha={:?}, k_min={}, o_alpha={}, o_beta={}\nH1 = {}, b1 = {}",
        stats.g, stats.k, stats.k_per_alpha, stats.k_min, stats.o_alpha, stats.o_beta, h, h.betti_one
    );
    if let Some(p) = &pres {
        text.push_str(&format!("\npresentation length {}", p.length()));
    }
    text.push_str(if adm.admissible { "\nweakly admissible" } else { "\nnot weakly admissible" });
    for s in &short {
        text.push_str(&format!("\nshort curve {} ({} intersections)", s.curve, s.intersections));
    }
    let v = json!({
        "stats": stats,
        "homology": { "text": h.to_string(), "summary": h },
        "presentation_length": pres.as_ref().map(|p| p.length()),
        "admissible": adm.admissible,
        "short_curves": short,
    });
    Ok((text, v, true))
}

fn present_one(p: &Path) -> Result<FileResult, Fail> {
    let d = load(p)?;
    let pres = u_beta_presentation(&d).map_err(dom)?;
    let text = format!("{}\nlength {}", pres, pres.length());
    Ok((text, json!({ "presentation": pres.to_string(), "relators": pres.relators, "length": pres.length() }), true))
}

fn admissible_one(p: &Path) -> Result<FileResult, Fail> {
    let d = load(p)?;
    let v = check_weak_admissibility(&d).map_err(dom)?;
    let text = match &v.witness {
        None => "weakly admissible".to_string(),
        Some(w) => {
            let parts: Vec<String> = w
                .support()
                .into_iter()
                .map(|(i, x)| format!("{}*{}", x, d.names.regions[i]))
                .collect();
            format!("not weakly admissible; positive periodic domain {}", parts.join(" + "))
        }
    };
    Ok((text, json!({ "admissible": v.admissible, "witness": v.witness }), true))
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Validate(f) => each_file(f, validate_one),
        Cmd::Invariants(f) => each_file(f, invariants_one),
        Cmd::Present(f) => each_file(f, present_one),
        Cmd::Admissible(f) => each_file(f, admissible_one),
        Cmd::Generators { files, list } => {
            let list = *list;
            each_file(files, move |p| {
                let d = load(p)?;
                let g = enumerate_generators(&d, list).map_err(dom)?;
                let mut text = format!("{} generators (product bound {})", g.count, g.product_bound);
                if let Some(l) = &g.list {
                    for t in l {
                        text.push_str(&format!("\n{}", t.join(" ")));
                    }
                }
                Ok((text, json!(g), true))
            })
        }
        Cmd::Wind { file, out, extra } => {
            let d = load(file)?;
            let before = check_weak_admissibility(&d).map_err(dom)?;
            let (w, r) = wind_with(&d, WindOptions { extra_rounds: *extra }).map_err(dom)?;
            write_out(out, &w)?;
            let worst = r.per_curve_new_intersections.iter().copied().max().unwrap_or(0);
            let text = format!(
                "K={}, new intersections {}/{} budget, {}",
                r.k_rounds,
                worst,
                r.budget,
                if r.verified_admissible { "admissible" } else { "not admissible" }
            );
            Ok((text, json!({ "admissible_before": before.admissible, "report": r, "k_after": w.vertices.len() })))
        }
        Cmd::Cover { file, sheets, class, out, reduce } => {
            let d = load(file)?;
            let class = if class.is_empty() {
                let basis = cohomology_basis(&d).map_err(dom)?;
                basis.into_iter().next().ok_or_else(|| Fail::Domain("no nonzero cohomology class: b1 = 0".into()))?
            } else {
                CocycleClass::from_i64(class)
            };
            let c = cyclic_cover(&d, &class, *sheets).map_err(dom)?;
            let r = &c.report;
            let mut text = format!(
                "{} sheets, cover genus {}, {} marked points, lifts per curve {}, admissibility {}",
                r.sheets,
                r.cover_genus,
                r.lifted_point_count,
                r.lifted_curve_counts.iter().map(|l| l.lifts).max().unwrap_or(0),
                if r.admissibility_preserved { "preserved" } else { "NOT preserved" }
            );
            let mut reduced = Value::Null;
            let written = if *reduce {
                let red = reduce_to_pointed(&c.diagram).map_err(dom)?;
                let len = u_beta_presentation(&red).map_err(dom)?.length();
                text.push_str(&format!("\nreduced: genus {}, presentation length {}", red.genus, len));
                reduced = json!({ "genus": red.genus, "presentation_length": len, "k": red.vertices.len() });
                red
            } else {
                c.diagram.clone()
            };
            write_out(out, &written)?;
            Ok((text, json!({ "report": r, "k": c.diagram.vertices.len(), "reduced": reduced })))
        }
        Cmd::Reduce { file, out } => {
            let d = load(file)?;
            let r = reduce_to_pointed(&d).map_err(dom)?;
            write_out(out, &r)?;
            let text = format!("genus {}, k={}, {} alpha curves", r.genus, r.vertices.len(), r.alphas().len());
            Ok((text, json!({ "genus": r.genus, "k": r.vertices.len(), "alpha_curves": r.alphas().len() })))
        }
        Cmd::Bounds { file, genus, length, degree } => {
            let d = load(file)?;
            let stats = intersection_stats(&d);
            let h = first_homology(&d).map_err(dom)?;
            let cover = length.zip(*degree).map(|(l, g)| CoverLength { heegaard_length: l, degree: g });
            let b = entropy_bounds(&stats, h.betti_one, *genus, cover).map_err(dom)?;
            let fmt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{:.6}", v));
            let text = format!(
                "with b1: {}\nfine: {}\nfiber genus 2: {}\nlog 3 form: {}\nthrough cover: {}\nbest: {}",
                fmt(b.bound_with_b),
                fmt(b.bound_fine),
                fmt(b.bound_genus2),
                fmt(b.bound_log3),
                fmt(b.bound_cover),
                fmt(b.best)
            );
            Ok((text, json!({ "b1": h.betti_one, "stats": stats, "bounds": b })))
        }
        Cmd::Tube { r, l, volume, wrist, phi } => {
            let t = tube_metrics(&TubeInput { r: *r, l: *l, volume: *volume, wrist: *wrist, phi: *phi }).map_err(dom)?;
            let text = format!(
                "r={:.9} l={:.9} volume={:.9} wrist={:.9} ball volume={:.9}",
                t.r, t.l, t.volume, t.wrist, t.ball_volume
            );
            Ok((text, json!(t)))
        }
        Cmd::Geom { vol_w, wrists, tube_vols, total_vol, systole, eps, mu, dmu, genus } => {
            let p = GeometricProfile {
                vol_w: *vol_w,
                tube_wrists: wrists.clone(),
                tube_volumes: tube_vols.clone(),
                total_vol: *total_vol,
                systole: *systole,
                epsilon: *eps,
                mu: *mu,
                genus: *genus,
                dmu: *dmu,
            };
            let g = geometric_entropy_bounds(&p).map_err(dom)?;
            let mut text = format!(
                "Heegaard length cap {:.6e}\nentropy cap from volume and systole {:.6e}",
                g.heegaard_length_cap, g.entropy_volume_systole
            );
            if let Some(a) = g.assembled_entropy {
                text.push_str(&format!("\nassembled entropy bound {:.6}", a));
            }
            if let Some(c) = g.wrist_sum_cap {
                text.push_str(&format!("\nwrist sum {:.6} <= cap {:.6}", g.wrist_sum, c));
            }
            if let Some(c) = g.arithmetic_constant {
                text.push_str(&format!("\narithmetic constant {:.6e}", c));
            }
            Ok((text, json!(g)))
        }
        Cmd::Penner { n, genus, w_inf, vol_inf } => {
            let p = penner_family(*n, *genus, w_inf.zip(*vol_inf)).map_err(dom)?;
            let text = format!(
                "spectral radius {} ≈ {:.6}, entropy floor {:.6}",
                p.eigenvalues[0], p.spectral_radius, p.entropy_floor
            );
            Ok((text, json!(p)))
        }
        Cmd::Random { seed, handles, points, moves, out } => {
            let hs = handles.iter().map(|h| parse_handle(h)).collect::<Result<Vec<_>, _>>()?;
            if *points == 0 {
                return Err(Fail::Usage("--points must be at least 1".into()));
            }
            let d = random_from(&hs, *points, *moves, *seed);
            let text = serialize(&d);
            write_out(out, &d)?;
            let text = if out.is_some() { format!("genus {}, k={}", d.genus, d.vertices.len()) } else { text };
            Ok((text.trim_end().to_string(), json!({ "genus": d.genus, "k": d.vertices.len(), "diagram": serialize(&d) })))
        }
    }
}

fn name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Validate(_) => "validate",
        Cmd::Invariants(_) => "invariants",
        Cmd::Present(_) => "present",
        Cmd::Admissible(_) => "admissible",
        Cmd::Wind { .. } => "wind",
        Cmd::Cover { .. } => "cover",
        Cmd::Reduce { .. } => "reduce",
        Cmd::Generators { .. } => "generators",
        Cmd::Bounds { .. } => "bounds",
        Cmd::Tube { .. } => "tube",
        Cmd::Geom { .. } => "geom",
        Cmd::Penner { .. } => "penner",
        Cmd::Random { .. } => "random",
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn say(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{}", s);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let schema = format!("hd.{}.v1", name(&cli.cmd));
    let emit = |mut v: Value| {
        if let Value::Object(m) = &mut v {
            m.insert("schema".into(), json!(schema));
        } else {
            v = json!({ "schema": schema, "value": v });
        }
        say(&serde_json::to_string_pretty(&v).expect("values serialize"));
    };
    match run(&cli) {
        Ok((text, v)) => {
            if cli.json {
                emit(v);
            } else {
                say(&text);
            }
            ExitCode::SUCCESS
        }
        Err(Fail::Domain(msg)) => {
            if cli.json {
                emit(json!({ "error": msg, "ok": false }));
            } else {
                eprintln!("{}", msg);
            }
            ExitCode::from(1)
        }
        Err(Fail::Rejected(text, v)) => {
            if cli.json {
                emit(v);
            } else {
                say(&text);
            }
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("usage error: {}", msg);
            ExitCode::from(2)
        }
    }
}
