//! `h4m`: censuses, verification, exports and pictures of the rank-4
//! matroid of the H4 root system. Everything is computed from the embedded
//! coordinate matrix; no input files or network access.
//!
//! Exit codes: 0 when every requested check passes, 1 when any claim or
//! check fails (or a computation errors out), 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use h4matroid::autos::{
    nongeometric_witness, pencil_graph, primitivity_report, stabilizer_report,
};
use h4matroid::matroid::{incidence_table, Census, IncidenceTable};
use h4matroid::project::{render_svg, ProjectionSpec};
use h4matroid::roots::PointTable;
use h4matroid::verify::{run_all, Pipeline, VerifyOptions};
use h4matroid::{bits, Rat};

#[derive(Parser)]
#[command(
    name = "h4m",
    version,
    about = "Exact combinatorics of the H4 root-system matroid",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for the enumeration kernels (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the flat census and the incidence table; exit 0 iff they match
    /// the classical counts.
    Census {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run every structural and group-theoretic claim, write a JSON report.
    #[command(name = "verify-all")]
    VerifyAll {
        /// Write the JSON report here (stdout lines either way).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the randomized property suites.
        #[arg(long, default_value_t = 0x4834)]
        seed: u64,
        /// Cases per property suite.
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        /// Self-test: negate one matrix entry and watch the suite fail.
        #[arg(long)]
        tamper: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List the 75 orthoframes.
    Orthoframes {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count bases among all 4-subsets of the ground set.
    Bases,
    /// Compute the full automorphism group (and the geometric subgroup).
    Aut {
        /// Write generators, order and the coset witness as JSON.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Structure certificate for the stabilizer of one point.
    Stab { id: usize },
    /// Primitivity analysis of the automorphism action.
    Primitivity,
    /// Emit a deterministic SVG projection of the configuration.
    Project {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overlay all lines of this size (2, 3 or 5).
        #[arg(long)]
        lines: Option<usize>,
        /// Highlight the orthoplane of this point id.
        #[arg(long)]
        plane: Option<usize>,
    },
    /// Export data sets as JSON (with a manifest and local checks).
    Export {
        #[arg(value_enum)]
        what: ExportKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Roots,
    Flats,
    Orthoframes,
    Group,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_err()
        {
            eprintln!("warning: worker pool already initialized; --jobs ignored");
        }
    }
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn run(cmd: Cmd) -> anyhow::Result<bool> {
    match cmd {
        Cmd::Census { format } => census(format),
        Cmd::VerifyAll { out, seed, cases, tamper, format } => {
            verify_all(out, seed, cases, tamper, format)
        }
        Cmd::Orthoframes { format, out } => orthoframes(format, out),
        Cmd::Bases => bases(),
        Cmd::Aut { export } => aut(export),
        Cmd::Stab { id } => stab(id),
        Cmd::Primitivity => primitivity(),
        Cmd::Project { out, lines, plane } => project(out, lines, plane),
        Cmd::Export { what, out } => export(what, out),
    }
}

fn census(format: Format) -> anyhow::Result<bool> {
    let table = PointTable::<Rat>::load_h4()?;
    let flats = h4matroid::matroid::enumerate_flats(&table)?;
    let census = flats.census();
    let incidence = incidence_table(&flats)?;
    let ok = census == Census::EXPECTED && incidence == IncidenceTable::EXPECTED;
    match format {
        Format::Text => {
            println!("Flat census");
            println!("  points         {:>5}", census.points);
            println!("  2-point lines  {:>5}", census.lines2);
            println!("  3-point lines  {:>5}", census.lines3);
            println!("  5-point lines  {:>5}", census.lines5);
            println!("  Pi3 planes     {:>5}", census.pi3);
            println!("  Pi5 planes     {:>5}", census.pi5);
            println!("  Pi6 planes     {:>5}", census.pi6);
            println!("  Pi15 planes    {:>5}", census.pi15);
            println!();
            println!("Incidence (flats of one kind containing a given flat)");
            println!("                 2-pt  3-pt  5-pt   Pi3   Pi5   Pi6  Pi15");
            let p = incidence.point;
            println!(
                "  point          {:>4}  {:>4}  {:>4}  {:>3}*  {:>3}*  {:>4}  {:>4}",
                p.lines2, p.lines3, p.lines5, p.pi3_apex, p.pi5_apex, p.pi6, p.pi15
            );
            for (name, size, row) in [
                ("2-point line", 2, incidence.line2),
                ("3-point line", 3, incidence.line3),
                ("5-point line", 5, incidence.line5),
            ] {
                let cell = |k: usize| if k == size { "1" } else { "-" };
                println!(
                    "  {name:<13}  {:>4}  {:>4}  {:>4}  {:>4}  {:>4}  {:>4}  {:>4}",
                    cell(2), cell(3), cell(5), row.pi3, row.pi5, row.pi6, row.pi15
                );
            }
            println!(
                "  * apex incidences; any-position totals are {} and {}",
                p.pi3_total, p.pi5_total
            );
            println!();
            println!("match with the classical counts: {}", if ok { "yes" } else { "NO" });
        }
        Format::Csv => {
            println!("kind,count");
            println!("points,{}", census.points);
            println!("lines2,{}", census.lines2);
            println!("lines3,{}", census.lines3);
            println!("lines5,{}", census.lines5);
            println!("pi3,{}", census.pi3);
            println!("pi5,{}", census.pi5);
            println!("pi6,{}", census.pi6);
            println!("pi15,{}", census.pi15);
            let p = incidence.point;
            println!("row,lines2,lines3,lines5,pi3,pi5,pi6,pi15");
            println!(
                "point,{},{},{},{}(apex),{}(apex),{},{}",
                p.lines2, p.lines3, p.lines5, p.pi3_apex, p.pi5_apex, p.pi6, p.pi15
            );
            for (name, size, row) in [
                ("line2", 2, incidence.line2),
                ("line3", 3, incidence.line3),
                ("line5", 5, incidence.line5),
            ] {
                let cell = |k: usize| if k == size { "1" } else { "" };
                println!(
                    "{name},{},{},{},{},{},{},{}",
                    cell(2), cell(3), cell(5), row.pi3, row.pi5, row.pi6, row.pi15
                );
            }
        }
        Format::Json => {
            let doc = json!({ "census": census, "incidence": incidence, "matches_expected": ok });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(ok)
}

fn verify_all(
    out: Option<PathBuf>,
    seed: u64,
    cases: usize,
    tamper: bool,
    format: Format,
) -> anyhow::Result<bool> {
    let report = run_all(VerifyOptions { seed, cases, tampered: tamper });
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json())?),
        _ => {
            for c in &report.claims {
                println!(
                    "{} {:<28} {} ({} ms)",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    if c.pass {
                        c.expected.to_string()
                    } else {
                        format!("{} != {}", c.computed, c.expected)
                    },
                    c.millis
                );
            }
            println!("{} of {} claims pass", report.passed(), report.claims.len());
        }
    }
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&report.to_json())?;
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.all_pass)
}

fn orthoframes(format: Format, out: Option<PathBuf>) -> anyhow::Result<bool> {
    let table = PointTable::<Rat>::load_h4()?;
    let flats = h4matroid::matroid::enumerate_flats(&table)?;
    let ortho = h4matroid::matroid::enumerate_orthoframes(&table, &flats)?;
    let mut content = String::new();
    match format {
        Format::Text => {
            for (i, f) in ortho.frames.iter().enumerate() {
                content.push_str(&format!("{i:>2}: {:?}\n", f.ids()));
            }
            content.push_str(&format!("{} orthoframes\n", ortho.frames.len()));
        }
        Format::Csv => {
            content.push_str("frame,p0,p1,p2,p3\n");
            for (i, f) in ortho.frames.iter().enumerate() {
                let ids = f.ids();
                content.push_str(&format!("{i},{},{},{},{}\n", ids[0], ids[1], ids[2], ids[3]));
            }
        }
        Format::Json => {
            let frames: Vec<Vec<usize>> =
                ortho.frames.iter().map(|f| f.ids().to_vec()).collect();
            content = serde_json::to_string_pretty(&json!({ "orthoframes": frames }))?;
            content.push('\n');
        }
    }
    emit(&out, &content)?;
    Ok(ortho.frames.len() == 75)
}

fn bases() -> anyhow::Result<bool> {
    let table = PointTable::<Rat>::load_h4()?;
    let flats = h4matroid::matroid::enumerate_flats(&table)?;
    let ortho = h4matroid::matroid::enumerate_orthoframes(&table, &flats)?;
    let scan = h4matroid::matroid::scan_bases(&table, &flats, &ortho)?;
    // one decimal place, computed in integers
    let permille = scan.bases * 1000 / scan.subsets;
    println!(
        "bases: {} of {} 4-subsets ({}.{}%)",
        scan.bases,
        scan.subsets,
        permille / 10,
        permille % 10
    );
    Ok(scan.bases == 398_475)
}

fn aut(export: Option<PathBuf>) -> anyhow::Result<bool> {
    let p = Pipeline::build()?;
    let witness = nongeometric_witness(&p.ortho, &p.aut, &p.geo)?;
    println!("automorphism group order: {}", p.aut.group.order());
    println!("geometric subgroup order: {}", p.geo.order());
    println!("generators used: {}", p.aut.gens.len());
    println!(
        "non-geometric coset witness fixes 0, odd on its frames: {}",
        witness.witness_parity_odd
    );
    if let Some(path) = export {
        let doc = json!({
            "artifact": "h4matroid",
            "version": env!("CARGO_PKG_VERSION"),
            "order": p.aut.group.order(),
            "geometric_order": p.geo.order(),
            "generators": p.aut.gens.iter().map(|g| g.images().to_vec()).collect::<Vec<_>>(),
            "coset_witness": witness.witness.images().to_vec(),
            "checks": {
                "order_is_14400": p.aut.group.order() == 14_400,
                "index_two": p.aut.group.order() == 2 * p.geo.order(),
                "witness_parity_odd": witness.witness_parity_odd,
            },
        });
        fs::write(&path, serde_json::to_string_pretty(&doc)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(p.aut.group.order() == 14_400 && p.geo.order() == 7_200)
}

fn stab(id: usize) -> anyhow::Result<bool> {
    if id >= 60 {
        bail!("point id {id} out of range 0..60");
    }
    let p = Pipeline::build()?;
    let rep = stabilizer_report(&p.table, &p.ortho, &p.aut, id, id == 0)?;
    println!("stabilizer of point {id}");
    println!("  order:                         {}", rep.order);
    println!("  reflection central:            {}", rep.reflection_central);
    println!("  orthoplane restriction image:  {}", rep.restriction_image_order);
    println!("  restriction kernel = {{id, r}}:  {}", rep.kernel_ok);
    println!("  frame-action image:            {} of 120", rep.frame_action_image);
    if let Some(iso) = rep.table_is_s5_x_z2 {
        println!("  table isomorphic to S5 x Z2:   {iso}");
    }
    let ok = rep.order == 240
        && rep.reflection_central
        && rep.kernel_ok
        && rep.restriction_image_order == 120
        && rep.frame_action_image == 120
        && rep.table_is_s5_x_z2 != Some(false);
    Ok(ok)
}

fn primitivity() -> anyhow::Result<bool> {
    let p = Pipeline::build()?;
    let rep = primitivity_report(&p.ortho, &p.aut)?;
    println!("point action primitive: {}", rep.primitive);
    println!(
        "block sizes admitted by pencil counting: {:?} (of which divide 60: {:?})",
        rep.candidate_block_sizes, rep.candidates_dividing_60
    );
    println!(
        "stabilizer restricted to an orthoplane: blocks {:?} (the five partial frames: {})",
        rep.restricted_block_sizes, rep.restricted_blocks_are_frames
    );
    // a sample pencil graph, for the record
    let pencil = pencil_graph(&p.flats, 0)?;
    println!(
        "pencil graph at 0: 6-regular {}, connected {}",
        pencil.six_regular, pencil.connected
    );
    Ok(rep.primitive && rep.restricted_blocks_are_frames)
}

fn project(
    out: Option<PathBuf>,
    lines: Option<usize>,
    plane: Option<usize>,
) -> anyhow::Result<bool> {
    let table = PointTable::<Rat>::load_h4()?;
    let flats = h4matroid::matroid::enumerate_flats(&table)?;
    let mut spec = ProjectionSpec::standard();
    spec.lines = lines;
    spec.plane = plane;
    let svg = render_svg(&table, &flats, &spec)?;
    emit(&out, &svg)?;
    Ok(true)
}

fn export(what: ExportKind, out: Option<PathBuf>) -> anyhow::Result<bool> {
    let manifest = |checks: serde_json::Value| {
        json!({ "artifact": "h4matroid", "version": env!("CARGO_PKG_VERSION"), "checks": checks })
    };
    let (doc, ok) = match what {
        ExportKind::Roots => {
            let table = PointTable::<Rat>::load_h4()?;
            let roots: Vec<_> = table
                .points()
                .iter()
                .map(|p| {
                    json!({
                        "id": p.id,
                        "coords": p.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let ok = roots.len() == 60;
            (
                json!({
                    "manifest": manifest(json!({"points": roots.len(), "pass": ok})),
                    "roots": roots,
                }),
                ok,
            )
        }
        ExportKind::Flats => {
            let table = PointTable::<Rat>::load_h4()?;
            let flats = h4matroid::matroid::enumerate_flats(&table)?;
            let ortho = h4matroid::matroid::enumerate_orthoframes(&table, &flats)?;
            let census = flats.census();
            let ok = census == Census::EXPECTED;
            let lines =
                |size: usize| flats.lines_of_size(size).map(|f| f.ids()).collect::<Vec<_>>();
            let planes = |class: h4matroid::matroid::FlatClass| {
                flats.planes_of_class(class).map(|f| f.ids()).collect::<Vec<_>>()
            };
            use h4matroid::matroid::FlatClass::{Pi15, Pi3, Pi5, Pi6};
            (
                json!({
                    "manifest": manifest(json!({"census": census, "pass": ok})),
                    "lines": {
                        "size2": lines(2),
                        "size3": lines(3),
                        "size5": lines(5),
                    },
                    "planes": {
                        "pi3": planes(Pi3),
                        "pi5": planes(Pi5),
                        "pi6": planes(Pi6),
                        "pi15": planes(Pi15),
                    },
                    "orthoframes": ortho.frames.iter().map(|f| f.ids().to_vec()).collect::<Vec<_>>(),
                }),
                ok,
            )
        }
        ExportKind::Orthoframes => {
            let table = PointTable::<Rat>::load_h4()?;
            let flats = h4matroid::matroid::enumerate_flats(&table)?;
            let ortho = h4matroid::matroid::enumerate_orthoframes(&table, &flats)?;
            let ok = ortho.frames.len() == 75;
            (
                json!({
                    "manifest": manifest(json!({"orthoframes": ortho.frames.len(), "pass": ok})),
                    "orthoframes": ortho.frames.iter().map(|f| f.ids().to_vec()).collect::<Vec<_>>(),
                    "orthoplanes": (0..60).map(|x| json!({
                        "point": x,
                        "plane": bits::ids(ortho.orthoplane_mask[x]),
                    })).collect::<Vec<_>>(),
                }),
                ok,
            )
        }
        ExportKind::Group => {
            let p = Pipeline::build()?;
            let witness = nongeometric_witness(&p.ortho, &p.aut, &p.geo)?;
            let ok = p.aut.group.order() == 14_400;
            (
                json!({
                    "manifest": manifest(json!({"order": p.aut.group.order(), "pass": ok})),
                    "order": p.aut.group.order(),
                    "geometric_order": p.geo.order(),
                    "generators": p.aut.gens.iter().map(|g| g.images().to_vec()).collect::<Vec<_>>(),
                    "coset_witness": witness.witness.images().to_vec(),
                }),
                ok,
            )
        }
    };
    let mut body = serde_json::to_string_pretty(&doc)?;
    body.push('\n');
    emit(&out, &body)?;
    Ok(ok)
}
