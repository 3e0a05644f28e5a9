//! Per-file analysis and output.

use std::path::Path;
use std::time::Instant;

use sha2::{Digest, Sha256};

use gmhm::bridge::summarize_pair;
use gmhm::census::{census as enumerate, Catalogue};
use gmhm::gem::validate_gem;
use gmhm::report::InputIdentity;
use gmhm::{
    cross_check, first_homology, gm_value, induce_diagram, modified_complexity, parse_gem,
    parse_hdg, serialize_hdg, CensusOptions, ComplexityReport, Error, GemInvariants,
    GeneralizedHeegaardDiagram, GmOptions, H1Fingerprint, SurfaceDiagram,
};

use crate::{CensusArgs, Fatal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Validate,
    Info,
    Gm,
    Hm,
    Crosscheck,
}

pub struct Opts {
    pub json: bool,
    pub quiet: bool,
    pub gm: GmOptions,
}

pub struct Analysis {
    pub report: ComplexityReport,
    pub code: u8,
}

enum Input {
    Gem(gmhm::Gem),
    Hdg(SurfaceDiagram),
}

fn code_of(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

fn looks_like_hdg(path: &Path, text: &str) -> bool {
    match path.extension().and_then(|e| e.to_str()) {
        Some("hdg") => true,
        Some("gem") => false,
        _ => text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .is_some_and(|l| l.starts_with("hdg")),
    }
}

pub fn analyse(kind: Kind, path: &Path, opts: &Opts) -> Analysis {
    let start = Instant::now();
    let name = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let mut report = ComplexityReport::new(InputIdentity {
        name,
        format: String::new(),
        digest: String::new(),
    });
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            report.error = Some(format!("{}: {e}", path.display()));
            return Analysis { report, code: 4 };
        }
    };
    report.input.digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    let hdg = looks_like_hdg(path, &text);
    report.input.format = if hdg { "hdg" } else { "gem" }.to_string();
    let parsed = if hdg {
        parse_hdg(&text).map(Input::Hdg)
    } else {
        parse_gem(&text).map(Input::Gem).map_err(Error::from)
    };
    let code = match parsed {
        Ok(input) => match fill(kind, &input, opts, &mut report) {
            Ok(code) => code,
            Err(e) => {
                report.error = Some(e.to_string());
                code_of(&e)
            }
        },
        Err(e) => {
            report.valid = Some(false);
            report.problems.push(e.to_string());
            report.error = Some(e.to_string());
            1
        }
    };
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Analysis { report, code }
}

fn fill(kind: Kind, input: &Input, opts: &Opts, r: &mut ComplexityReport) -> Result<u8, Error> {
    match (kind, input) {
        (Kind::Validate, Input::Gem(g)) => {
            let v = validate_gem(g);
            if !v.connected {
                r.problems.push(format!("disconnected ({} components)", v.components));
            }
            r.invariants = Some(GemInvariants::of(g));
            r.valid = Some(r.problems.is_empty());
        }
        (Kind::Validate, Input::Hdg(d)) => {
            let report = d.validate();
            r.problems.extend(report.violations.iter().cloned());
            if report.is_valid() {
                if let Err(e) = GeneralizedHeegaardDiagram::new(d.clone()) {
                    r.problems.push(e.to_string());
                }
            }
            r.diagram = Some(report);
            r.valid = Some(r.problems.is_empty());
        }
        (Kind::Info, Input::Gem(g)) => {
            let inv = GemInvariants::of(g);
            if inv.manifold && g.is_connected() {
                r.h1 = first_homology(g, opts.gm.forest_cap).ok().map(|h| h.to_string());
            }
            r.invariants = Some(inv);
        }
        (Kind::Info, Input::Hdg(d)) => r.diagram = Some(d.validate()),
        (Kind::Gm, Input::Gem(g)) => {
            r.invariants = Some(GemInvariants::of(g));
            let w = gm_value(g, &opts.gm)?;
            r.gm_value = Some(w.value);
            r.gm_witness = Some(w);
        }
        (Kind::Hm, Input::Hdg(d)) => {
            let d = GeneralizedHeegaardDiagram::new(d.clone())?;
            r.diagram = Some(d.diagram().validate());
            let hm = modified_complexity(d.diagram(), opts.gm.forest_cap)?;
            r.hm_value = Some(hm.value);
            r.hm_witness = Some(hm);
        }
        (Kind::Hm, Input::Gem(g)) => {
            if !g.is_manifold() {
                return Err(Error::NotManifold);
            }
            r.invariants = Some(GemInvariants::of(g));
            for s in selected(&opts.gm) {
                r.pairs.push(summarize_pair(g, s, opts.gm.forest_cap)?);
            }
            let best = r.pairs.iter().min_by_key(|p| p.hm.value).expect("a splitting");
            r.hm_value = Some(best.hm.value);
            r.hm_witness = Some(best.hm.clone());
        }
        (Kind::Crosscheck, Input::Gem(g)) => {
            r.invariants = Some(GemInvariants::of(g));
            let cc = cross_check(g, &opts.gm)?;
            r.gm_value = Some(cc.gm_value);
            r.hm_value = Some(cc.hm_value);
            r.gm_witness = Some(cc.gem_witness);
            r.equal = Some(cc.equal);
            r.hm_witness = cc
                .pairs
                .iter()
                .find(|p| p.splitting == cc.diagram_splitting)
                .map(|p| p.hm.clone());
            r.pairs = cc.pairs;
            r.h1 = first_homology(g, opts.gm.forest_cap).ok().map(|h| h.to_string());
            if !cc.audit_clean {
                r.problems.push("an induced diagram failed its reduction audit".into());
            }
            if !cc.equal || !cc.audit_clean {
                return Ok(3);
            }
        }
        (_, Input::Hdg(_)) => return Err(Error::Invalid(format!("{kind:?} needs a GEM input").to_lowercase())),
    }
    Ok(if r.valid == Some(false) { 1 } else { 0 })
}

fn selected(opts: &GmOptions) -> Vec<usize> {
    let mut s = if opts.splittings.is_empty() { vec![0, 1, 2] } else { opts.splittings.clone() };
    s.sort_unstable();
    s.dedup();
    s
}

pub fn emit(kind: Kind, r: &ComplexityReport, opts: &Opts) {
    if opts.json {
        println!("{}", serde_json::to_string(r).expect("report serializes"));
        return;
    }
    if let Some(e) = &r.error {
        eprintln!("{}: {e}", r.input.name);
        if r.valid != Some(false) || kind != Kind::Validate {
            return;
        }
    }
    let value = match kind {
        Kind::Gm | Kind::Crosscheck => r.gm_value,
        Kind::Hm => r.hm_value,
        _ => None,
    };
    if opts.quiet {
        if let Some(v) = value {
            println!("{v}");
        }
        return;
    }
    let name = &r.input.name;
    match kind {
        Kind::Validate => {
            if r.valid == Some(true) {
                println!("{name}: valid {}", r.input.format);
            } else {
                println!("{name}: invalid: {}", r.problems.join("; "));
            }
        }
        Kind::Info => {
            if let Some(inv) = &r.invariants {
                println!("{name}: {} vertices", inv.vertices);
                let join = |m: &std::collections::BTreeMap<String, usize>| {
                    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
                };
                println!("  g_ij  {}", join(&inv.g_ij));
                println!("  g_hat {}", join(&inv.g_hat));
                println!(
                    "  bipartite {} contracted {} manifold {} chi(K) {}",
                    inv.bipartite, inv.contracted, inv.manifold, inv.euler_char_k
                );
                if let Some(h) = &r.h1 {
                    println!("  H1 {h}");
                }
            }
            if let Some(d) = &r.diagram {
                println!(
                    "{name}: {} vertices, {} edges, {} faces, chi {}, {}orientable, {} crossings",
                    d.vertices,
                    d.edges,
                    d.faces,
                    d.euler_char,
                    if d.orientable { "" } else { "non-" },
                    d.crossings
                );
                for v in &d.violations {
                    println!("  violation: {v}");
                }
            }
        }
        Kind::Gm => {
            if let (Some(v), Some(w)) = (r.gm_value, &r.gm_witness) {
                println!("{name}: gm_value {v}");
                println!(
                    "  splitting {}{}|{}{} removed {:?} / {:?} region faces {:?}",
                    w.pair.0, w.pair.1, w.complement.0, w.complement.1, w.removed_ab, w.removed_cd, w.region_faces
                );
            }
        }
        Kind::Hm => {
            if let (Some(v), Some(w)) = (r.hm_value, &r.hm_witness) {
                println!("{name}: hm_value {v}");
                println!(
                    "  {} reductions; best removes {:?} / {:?}; {} crossings, {} on the best region",
                    w.reductions, w.removed_prime, w.removed_double_prime, w.witness.crossings, w.witness.region_crossings
                );
            }
        }
        Kind::Crosscheck => {
            if let (Some(a), Some(b), Some(eq)) = (r.gm_value, r.hm_value, r.equal) {
                println!(
                    "{name}: gm {a} hm {b} {}{}",
                    if eq { "equal" } else { "MISMATCH" },
                    r.h1.as_ref().map(|h| format!(" H1 {h}")).unwrap_or_default()
                );
                for p in &r.problems {
                    println!("  {p}");
                }
            }
        }
    }
}

pub fn induce(path: &Path, out: Option<&Path>, opts: &Opts) -> Result<u8, Fatal> {
    let text = std::fs::read_to_string(path).map_err(|e| Fatal::usage(format!("{}: {e}", path.display())))?;
    let gem = parse_gem(&text).map_err(|e| Fatal { code: 1, message: format!("{}: {e}", path.display()) })?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Fatal::usage(format!("{}: {e}", dir.display())))?;
    }
    let mut written = Vec::new();
    for s in selected(&opts.gm) {
        let induced = induce_diagram(&gem, s);
        let body = serialize_hdg(&induced.diagram);
        match out {
            Some(dir) => {
                let file = dir.join(format!("{}.hdg", induced.diagram.name()));
                std::fs::write(&file, body).map_err(|e| Fatal::usage(format!("{}: {e}", file.display())))?;
                written.push(file.display().to_string());
            }
            None => {
                if !written.is_empty() {
                    println!();
                }
                print!("{body}");
                written.push(induced.diagram.name().to_string());
            }
        }
    }
    if out.is_some() {
        if opts.json {
            println!("{}", serde_json::json!({ "written": written }));
        } else if !opts.quiet {
            for w in &written {
                println!("{w}");
            }
        }
    }
    Ok(0)
}

pub fn census(args: &CensusArgs, opts: &Opts) -> Result<u8, Fatal> {
    let filter = args
        .fingerprint
        .as_deref()
        .map(str::parse::<H1Fingerprint>)
        .transpose()
        .map_err(|e| Fatal::usage(e.to_string()))?;
    let catalogue = match &args.catalogue {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Fatal::usage(format!("{}: {e}", path.display())))?;
            Catalogue::from_jsonl(&text).map_err(|e| Fatal { code: 1, message: e.to_string() })?
        }
        None => enumerate(&CensusOptions {
            max_order: args.max_order,
            colour_free: args.colour_free,
            budget: args.budget,
            fingerprint: true,
        })
        .map_err(|e| match e {
            Error::BudgetExceeded { .. } => Fatal { code: 2, message: e.to_string() },
            e => Fatal::usage(e.to_string()),
        })?,
    };
    let catalogue = match &filter {
        Some(h) => Catalogue {
            entries: catalogue.with_fingerprint(h).into_iter().cloned().collect(),
        },
        None => catalogue,
    };
    if let Some(dir) = &args.dir {
        std::fs::create_dir_all(dir).map_err(|e| Fatal::usage(format!("{}: {e}", dir.display())))?;
        for e in &catalogue.entries {
            let file = dir.join(format!("{}.gem", e.name));
            std::fs::write(&file, &e.gem).map_err(|err| Fatal::usage(format!("{}: {err}", file.display())))?;
        }
    }
    let body = catalogue.to_jsonl();
    match &args.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Fatal::usage(format!("{}: {e}", path.display())))?;
            if opts.quiet {
                println!("{}", catalogue.entries.len());
            } else if !opts.json {
                println!("{} entries written to {}", catalogue.entries.len(), path.display());
            }
        }
        None if opts.quiet => println!("{}", catalogue.entries.len()),
        None => print!("{body}"),
    }
    Ok(0)
}
