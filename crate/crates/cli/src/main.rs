//! `digitop`: verify, construct and explore digital topological groups.
//!
//! Exit status: 0 when the top-level verdict is affirmative, 1 when it is
//! refuted (a witness is printed), 2 for input errors.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use digitop::construct::{
    cayley_graph, cayley_np2_obstruction, cluster_np2_group, embed_in_hypercube, fixture,
    scc_group, Ambient, FIXTURE_NAMES,
};
use digitop::dtg::{
    classify_np2, component_theory, dtg_product, dtg_quotient, verify_dtg, z2_c1_classification,
    Dtg,
};
use digitop::enumerate::{dtg_structures, scan_np2, scan_z2_windows, ScanReport};
use digitop::graph::{
    components, degree_profile, is_cluster_graph, is_simple_closed_curve, SearchLimits,
};
use digitop::groups::Subgroup;
use digitop::io::{self, DtgDocument};
use digitop::morphisms::{check_dtg_hom, first_isomorphism, is_open_map};
use digitop::{Adjacency, DigitalImage, Error, NpLevel};

#[derive(Parser)]
#[command(name = "digitop", version, about = "Digital topological groups")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Print the graph in DOT format instead of a document or report.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Np1,
    Np2,
}

impl From<Level> for NpLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Np1 => NpLevel::Np1,
            Level::Np2 => NpLevel::Np2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Records {
    All,
    /// Only candidates with a structure or an inconsistency.
    Notable,
}

#[derive(Subcommand)]
enum Command {
    /// Check continuity of multiplication and inversion.
    Verify {
        /// DTG document, or a fixture name.
        dtg: String,
        #[arg(long, value_enum, default_value = "np1")]
        level: Level,
    },
    /// Which group structures an image admits, and its shape.
    Classify {
        /// Image document, DTG document, or a fixture name.
        image: String,
    },
    /// Identity component, component group and quotient isomorphism.
    Components { dtg: String },
    /// Direct product of two DTGs.
    Product {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value = "np1")]
        level: Level,
    },
    /// Quotient by a normal subgroup.
    Quotient {
        dtg: String,
        /// Comma-separated member indices.
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
    },
    /// Cayley graph of a group and a symmetric generating set.
    Cayley {
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<usize>,
    },
    /// Z_n on a simple closed curve.
    Scc {
        n: usize,
        /// Realize as a rectangle boundary in (Z^2, c_1).
        #[arg(long)]
        z2: bool,
    },
    /// Z_n x Z_k on k disjoint complete graphs K_n.
    Cluster { n: usize, k: usize },
    /// Realize an image's graph in [-1,1]^m with c_m adjacency.
    Embed { image: String },
    /// Homomorphism, continuity, openness and first isomorphism report.
    Hom {
        source: String,
        target: String,
        map: String,
    },
    /// Exhaustive scans.
    Enumerate {
        #[command(subcommand)]
        scan: Scan,
    },
    /// Emit a named example.
    Fixture {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIXTURE_NAMES))]
        name: String,
    },
}

#[derive(Subcommand)]
enum Scan {
    /// Connected subsets of [-w,w]^2 under c_1.
    Z2 {
        #[arg(long, default_value_t = 1)]
        window: usize,
        #[arg(long, value_enum, default_value = "all")]
        records: Records,
    },
    /// Every graph up to the given size.
    Np2 {
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value = "all")]
        records: Records,
    },
    /// Group structures on one image.
    Structures { image: String },
}

/// What a command produced: a verdict plus either a document or a report.
struct Outcome {
    verdict: bool,
    text: String,
    json: Value,
    /// Normalized document printed in place of the report when present.
    document: Option<String>,
    dot: Option<String>,
}

impl Outcome {
    fn report(verdict: bool, text: String, json: Value, graph: Option<String>) -> Self {
        Outcome {
            verdict,
            text,
            json,
            document: None,
            dot: graph,
        }
    }
}

fn read(path: &str) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

fn load_dtg(arg: &str) -> anyhow::Result<DtgDocument> {
    if !Path::new(arg).exists() && FIXTURE_NAMES.contains(&arg) {
        let f = fixture(arg)?;
        return Ok(DtgDocument {
            dtg: f.dtg,
            names: f.names,
        });
    }
    io::load_dtg(&read(arg)?).with_context(|| format!("in {arg}"))
}

fn load_image(arg: &str) -> anyhow::Result<DigitalImage> {
    if !Path::new(arg).exists() && FIXTURE_NAMES.contains(&arg) {
        return Ok(fixture(arg)?.dtg.image().clone());
    }
    let text = read(arg)?;
    let is_dtg = serde_json::from_str::<Value>(&text)
        .map(|v| v.get("image").is_some())
        .unwrap_or(false);
    if is_dtg {
        let doc = io::load_dtg(&text).with_context(|| format!("in {arg}"))?;
        return Ok(doc.dtg.image().clone());
    }
    io::load_image(&text).with_context(|| format!("in {arg}"))
}

fn labels(doc: &DtgDocument) -> Vec<String> {
    match &doc.names {
        Some(names) => names.clone(),
        None => doc.dtg.image().points().iter().map(|p| p.to_string()).collect(),
    }
}

fn dot_of(image: &DigitalImage, names: &[String]) -> String {
    image.graph().to_dot(names)
}

fn point_labels(image: &DigitalImage) -> Vec<String> {
    image.points().iter().map(|p| p.to_string()).collect()
}

fn level_name(level: Option<NpLevel>) -> String {
    level.map_or("none".into(), |l| l.to_string())
}

fn emit_dtg(dtg: &Dtg, names: Option<&[String]>, summary: String) -> Outcome {
    let labels = names.map_or_else(|| point_labels(dtg.image()), <[String]>::to_vec);
    Outcome {
        verdict: true,
        text: summary,
        json: Value::Null,
        document: Some(io::dtg_to_json(dtg, names)),
        dot: Some(dot_of(dtg.image(), &labels)),
    }
}

fn verify(arg: &str, level: NpLevel) -> anyhow::Result<Outcome> {
    let doc = load_dtg(arg)?;
    let names = labels(&doc);
    let report = verify_dtg(doc.dtg.image(), doc.dtg.group(), level)?;
    let described = report.witness.map(|w| w.describe(&names));
    let text = match &described {
        None => format!("{level}: verified ({} elements)", doc.dtg.order()),
        Some(w) => format!("{level}: refuted\nwitness: {w}"),
    };
    let json = json!({
        "level": level,
        "verified": report.ok(),
        "witness": report.witness,
        "witness_text": described,
        "verified_level": doc.dtg.level(),
    });
    Ok(Outcome::report(
        report.ok(),
        text,
        json,
        Some(dot_of(doc.dtg.image(), &names)),
    ))
}

fn classify(arg: &str) -> anyhow::Result<Outcome> {
    let image = load_image(arg)?;
    let g = image.graph();
    let structures = dtg_structures(g)?;
    let mut best = None;
    for s in &structures {
        best = best.max(digitop::dtg::np_level(g, s)?);
    }
    let np2 = classify_np2(g)?;
    let z2 = if image.dimension() == 2
        && image.adjacency() == &Adjacency::Cu(1)
        && components(g).is_connected()
    {
        Some(z2_c1_classification(&image)?)
    } else {
        None
    };
    let profile = degree_profile(g);
    let json = json!({
        "points": image.len(),
        "edges": g.edge_count(),
        "structure_count": structures.len(),
        "np_level": best,
        "simple_closed_curve": is_simple_closed_curve(g),
        "cluster_graph": is_cluster_graph(g),
        "regular_cluster_graph": np2.admits_np2,
        "regular": profile.is_regular,
        "components": components(g).count(),
        "z2_c1": z2,
    });
    let text = format!(
        "points: {}\nedges: {}\ngroup structures: {}\nbest level: {}\nsimple closed curve: {}\ncluster graph: {}\nregular cluster graph (admits NP2): {}",
        image.len(),
        g.edge_count(),
        structures.len(),
        level_name(best),
        is_simple_closed_curve(g),
        is_cluster_graph(g),
        np2.admits_np2,
    );
    let dot = dot_of(&image, &point_labels(&image));
    Ok(Outcome::report(!structures.is_empty(), text, json, Some(dot)))
}

fn component_report(arg: &str) -> anyhow::Result<Outcome> {
    let doc = load_dtg(arg)?;
    let names = labels(&doc);
    let theory = component_theory(&doc.dtg, &SearchLimits::default())?;
    let comps: Vec<Vec<&str>> = theory
        .decomposition
        .components
        .iter()
        .map(|c| c.iter().map(|&i| names[i].as_str()).collect())
        .collect();
    let verdict = theory.translates_components
        && theory.components_pairwise_isomorphic
        && theory.identity_component_normal
        && theory.quotient_iso_ok;
    let json = json!({
        "identity_component": theory.identity_component,
        "components": theory.decomposition.components,
        "component_group_order": theory.component_group.order(),
        "component_group_table": theory.component_group.rows(),
        "translates_components": theory.translates_components,
        "components_pairwise_isomorphic": theory.components_pairwise_isomorphic,
        "identity_component_normal": theory.identity_component_normal,
        "quotient_iso_ok": theory.quotient_iso_ok,
    });
    let text = format!(
        "components: {comps:?}\nidentity component: {:?}\ncomponent group order: {}\ntranslates components: {}\ncomponents pairwise isomorphic: {}\nidentity component normal: {}\nG/G_e isomorphic to C_G: {}",
        comps[theory.decomposition.component_id[doc.dtg.group().identity()]],
        theory.component_group.order(),
        theory.translates_components,
        theory.components_pairwise_isomorphic,
        theory.identity_component_normal,
        theory.quotient_iso_ok,
    );
    Ok(Outcome::report(verdict, text, json, Some(dot_of(doc.dtg.image(), &names))))
}

fn hom(source: &str, target: &str, map: &str) -> anyhow::Result<Outcome> {
    let s = load_dtg(source)?;
    let t = load_dtg(target)?;
    let map = io::load_hom(&read(map)?).with_context(|| format!("in {map}"))?;
    let h = check_dtg_hom(&s.dtg, &t.dtg, &map)?;
    let mut json = json!({
        "is_hom": h.is_hom,
        "is_continuous": h.is_continuous,
        "kernel": h.kernel,
        "image": h.image,
    });
    let mut text = format!(
        "homomorphism: {}\ncontinuous: {}\nkernel: {:?}\nimage: {:?}",
        h.is_hom, h.is_continuous, h.kernel, h.image
    );
    if h.is_continuous {
        let open = is_open_map(&h)?;
        json["is_open"] = json!(open.open);
        json["open_witness"] = json!(open.witness);
        text += &format!("\nopen: {}", open.open);
        if let Some((z, w)) = open.witness {
            let tp = t.dtg.image();
            text += &format!(
                "\nopen witness: {} ~ {} have no adjacent preimages",
                tp.point(z),
                tp.point(w)
            );
        }
    }
    if h.is_hom && h.is_continuous {
        let fi = first_isomorphism(&h)?;
        json["first_isomorphism"] = json!({
            "map": fi.f.map,
            "image_elements": fi.image_elements,
            "is_dtg_isomorphism": fi.is_dtg_isomorphism,
        });
        text += &format!(
            "\ninduced map G/ker -> image: {:?}\ndigital isomorphism: {}",
            fi.f.map, fi.is_dtg_isomorphism
        );
    }
    Ok(Outcome::report(h.is_hom && h.is_continuous, text, json, None))
}

fn scan_outcome(mut report: ScanReport, records: Records) -> Outcome {
    let text = format!(
        "scan: {} (bound {})\ncandidates: {}\nwith structures: {}\nexceptions: {}",
        report.scan,
        report.bound,
        report.candidates,
        report.records.iter().filter(|r| r.structure_count > 0).count(),
        report.exceptions
    );
    if let Records::Notable = records {
        report
            .records
            .retain(|r| r.structure_count > 0 || !r.consistent);
    }
    let verdict = report.consistent();
    let json = serde_json::to_value(&report).expect("report serializes");
    Outcome::report(verdict, text, json, None)
}

fn structures(arg: &str) -> anyhow::Result<Outcome> {
    let image = load_image(arg)?;
    let found = dtg_structures(image.graph())?;
    let mut entries = Vec::new();
    let mut text = format!("{} group structures with identity at point 0", found.len());
    for g in &found {
        let level = digitop::dtg::np_level(image.graph(), g)?;
        text += &format!(
            "\n  order {} abelian {} level {}",
            g.order(),
            g.is_abelian(),
            level_name(level)
        );
        entries.push(json!({
            "table": g.rows(),
            "abelian": g.is_abelian(),
            "np_level": level,
        }));
    }
    let json = json!({ "structure_count": found.len(), "structures": entries });
    Ok(Outcome::report(!found.is_empty(), text, json, None))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    Ok(match &cli.command {
        Command::Verify { dtg, level } => verify(dtg, (*level).into())?,
        Command::Classify { image } => classify(image)?,
        Command::Components { dtg } => component_report(dtg)?,
        Command::Product {
            first,
            second,
            level,
        } => {
            let (a, b) = (load_dtg(first)?, load_dtg(second)?);
            let p = dtg_product(&a.dtg, &b.dtg, (*level).into())?;
            let summary = format!("product of order {}, level {}", p.order(), level_name(p.level()));
            emit_dtg(&p, None, summary)
        }
        Command::Quotient { dtg, subgroup } => {
            let doc = load_dtg(dtg)?;
            let n = Subgroup::new(doc.dtg.group(), subgroup)?;
            let q = dtg_quotient(&doc.dtg, &n)?;
            let summary = format!(
                "quotient of order {}, level {}, representatives {:?}",
                q.dtg.order(),
                level_name(q.dtg.level()),
                q.representatives
            );
            emit_dtg(&q.dtg, None, summary)
        }
        Command::Cayley { group, gens } => {
            let (g, names) = io::load_group(&read(group)?).with_context(|| format!("in {group}"))?;
            let d = cayley_graph(&g, gens)?;
            let obstruction = cayley_np2_obstruction(&g, gens);
            let summary = format!(
                "Cayley graph, level {}, NP2 obstruction {:?}",
                level_name(d.level()),
                obstruction
            );
            emit_dtg(&d, names.as_deref(), summary)
        }
        Command::Scc { n, z2 } => {
            let ambient = if *z2 { Ambient::Z2 } else { Ambient::Abstract };
            let d = scc_group(*n, ambient)?;
            emit_dtg(&d, None, format!("closed curve of {n} points, level {}", level_name(d.level())))
        }
        Command::Cluster { n, k } => {
            let d = cluster_np2_group(*n, *k)?;
            emit_dtg(&d, None, format!("{k} copies of K{n}, level {}", level_name(d.level())))
        }
        Command::Embed { image } => {
            let img = load_image(image)?;
            let e = embed_in_hypercube(img.graph())?;
            Outcome {
                verdict: true,
                text: format!("embedded in [-1,1]^{}", e.image.dimension()),
                json: Value::Null,
                document: Some(io::image_to_json(&e.image)),
                dot: Some(dot_of(&e.image, &point_labels(&e.image))),
            }
        }
        Command::Hom {
            source,
            target,
            map,
        } => hom(source, target, map)?,
        Command::Enumerate { scan } => match scan {
            Scan::Z2 { window, records } => scan_outcome(scan_z2_windows(*window)?, *records),
            Scan::Np2 {
                max_vertices,
                records,
            } => scan_outcome(scan_np2(*max_vertices)?, *records),
            Scan::Structures { image } => structures(image)?,
        },
        Command::Fixture { name } => {
            let f = fixture(name)?;
            let summary = format!("{name}: verified level {}", level_name(f.dtg.level()));
            emit_dtg(&f.dtg, f.names.as_deref(), summary)
        }
    })
}

fn print(cli: &Cli, outcome: &Outcome) -> anyhow::Result<()> {
    if cli.dot {
        let dot = outcome
            .dot
            .as_ref()
            .ok_or_else(|| anyhow!("--dot is not available for this command"))?;
        print!("{dot}");
    } else if let Some(doc) = &outcome.document {
        print!("{doc}");
        eprintln!("{}", outcome.text);
    } else if cli.json {
        let mut json = outcome.json.clone();
        if let Value::Object(map) = &mut json {
            map.insert("verdict".into(), json!(outcome.verdict));
        } else {
            bail!("report is not an object");
        }
        print!("{}", io::to_json(&json));
    } else {
        println!("{}", outcome.text);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli).and_then(|o| print(&cli, &o).map(|()| o.verdict)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => match e.downcast_ref::<Error>() {
            Some(Error::TheoremFalsified { statement, detail }) => {
                if cli.json {
                    let report = json!({
                        "verdict": false,
                        "falsified": statement,
                        "witness": detail,
                    });
                    print!("{}", io::to_json(&report));
                } else {
                    println!("refuted: {statement}\nwitness: {detail}");
                }
                ExitCode::from(1)
            }
            _ => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}
