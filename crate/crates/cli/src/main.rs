//! `cartanlab`: exact algebra checks, flatness/integrability verdicts and
//! groupoid residuals from the command line.
//!
//! Exit codes: 0 all verdicts pass, 1 any FAIL/NOT-FLAT verdict, 2 input or
//! usage error.

mod catalog;
mod report;

use anyhow::{anyhow, bail, Context, Result};
use cartanlab_core::algebra::basis_vec;
use cartanlab_core::curvature::{
    curvature_split_check, flatness_check, k_integrability_witness, second_order_split_check,
    FlatVerdict, IntegrabilityVerdict,
};
use cartanlab_core::extension::{check_reductive, induced_quotient_bracket, semidirect_iso_check};
use cartanlab_core::groupoid::{
    build_reductive_extension, cube_grid, divisor_identity_residual, groupoid_axiom_residual,
    holonomic_residual_sweep, isotropy_action_residual, multiplicativity_residual, KGroup,
};
use cartanlab_core::io;
use cartanlab_core::linalg::format_rational;
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use report::{Report, Status, Verdict};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "cartanlab", version, about = "Transitive-geometry calculus checks")]
struct Cli {
    /// Emit the machine-readable JSON report on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Deterministic seed (overrides CARTANLAB_SEED; default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker-thread hint. Execution is single threaded; results never
    /// depend on this value.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Antisymmetry (at load) and exact Jacobi check of an algebra file
    CheckAlgebra { input: String },
    /// Exactness checks plus, when a splitting is present, reductivity
    CheckExtension { input: String },
    /// Exactness checks only
    CheckExact { input: String },
    /// Exactness and reductivity (requires a [splitting] section)
    CheckReductive { input: String },
    /// Extract the induced bracket on V and compare with the reference k
    ExtractBracket { input: String },
    /// Infinitesimal reduction tower of Pfaffian data
    Tower { input: String },
    /// Flatness verdict of a chart scenario via the structure equations
    CheckFlatness { input: String },
    /// k-integrability witness for the scenario frames
    CheckIntegrability { input: String },
    /// Curvature split identities (first-order model or [second_order])
    SplitCheck { input: String },
    /// Divisor, groupoid and Pfaffian-form residuals of an action model
    GroupoidCheck {
        /// `translations` or `heisenberg` (alternative to a config input)
        #[arg(long)]
        model: Option<String>,
        /// dimension for the translation model
        #[arg(long)]
        n: Option<usize>,
        /// parameter k for the Heisenberg model on R^{2k+1}
        #[arg(long)]
        k: Option<usize>,
        /// optional config file or catalog:NAME
        input: Option<String>,
    },
    /// List bundled inputs (stable names and content hashes)
    Catalog {
        /// write every bundled entry into this directory
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(rep) => {
            if cli.json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.render_human(started.elapsed()));
            }
            std::process::exit(if rep.all_ok() { 0 } else { 1 });
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn seed_of(cli: &Cli) -> u64 {
    cli.seed
        .or_else(|| std::env::var("CARTANLAB_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

/// Resolve `catalog:NAME` or a filesystem path into (label, content, base dir).
fn resolve_input(reference: &str) -> Result<(String, String, Option<PathBuf>)> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        let entry = catalog::find(name)
            .ok_or_else(|| anyhow!("no catalog entry named `{name}`"))?;
        return Ok((format!("catalog:{name}"), entry.content.to_string(), None));
    }
    let path = Path::new(reference);
    let content = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let base = path.parent().map(Path::to_path_buf);
    Ok((reference.to_string(), content, base))
}

fn run(cli: &Cli) -> Result<Report> {
    let seed = seed_of(cli);
    match &cli.command {
        Command::CheckAlgebra { input } => check_algebra(input, seed),
        Command::CheckExtension { input } => check_extension(input, seed, None),
        Command::CheckExact { input } => check_extension(input, seed, Some(false)),
        Command::CheckReductive { input } => check_extension(input, seed, Some(true)),
        Command::ExtractBracket { input } => extract_bracket(input, seed),
        Command::Tower { input } => tower(input, seed),
        Command::CheckFlatness { input } => check_flatness(input, seed),
        Command::CheckIntegrability { input } => check_integrability(input, seed),
        Command::SplitCheck { input } => split_check(input, seed),
        Command::GroupoidCheck { model, n, k, input } => {
            groupoid_check(model.as_deref(), *n, *k, input.as_deref(), seed)
        }
        Command::Catalog { export } => catalog_cmd(export.as_deref()),
    }
}

fn check_algebra(input: &str, seed: u64) -> Result<Report> {
    let (label, content, _) = resolve_input(input)?;
    let mut rep = Report::new(format!("check-algebra {label}"), seed);
    rep.add_input(&label, content.as_bytes());
    let alg = io::algebra_from_toml(&content)?;
    rep.push(
        Verdict::new("antisymmetry", Status::Pass)
            .with_witness(format!("dim {}", alg.dim())),
    );
    match alg.jacobi_witness() {
        None => rep.push(Verdict::new("jacobi", Status::Pass)),
        Some((j, k, l)) => {
            let names = alg.basis_names();
            rep.push(Verdict::new("jacobi", Status::Fail).with_witness(format!(
                "jacobiator nonzero on ({}, {}, {})",
                names[j], names[k], names[l]
            )));
        }
    }
    Ok(rep)
}

fn check_extension(input: &str, seed: u64, want_reductive: Option<bool>) -> Result<Report> {
    let (label, content, base) = resolve_input(input)?;
    let verb = match want_reductive {
        None => "check-extension",
        Some(true) => "check-reductive",
        Some(false) => "check-exact",
    };
    let mut rep = Report::new(format!("{verb} {label}"), seed);
    rep.add_input(&label, content.as_bytes());
    let loaded = io::extension_from_toml(&content, base.as_deref())?;
    let exact = loaded.cte.ext().check_exact();
    let b = |ok: bool| if ok { Status::Pass } else { Status::Fail };
    rep.push(Verdict::new("i-injective", b(exact.i_injective)));
    rep.push(Verdict::new("p-surjective", b(exact.p_surjective)));
    rep.push(Verdict::new("exact-at-z", b(exact.exact_at_z)));
    if let (Some(ie), Some(pe)) = (exact.i_equivariant, exact.p_equivariant) {
        rep.push(Verdict::new("i-equivariant", b(ie)));
        rep.push(Verdict::new("p-equivariant", b(pe)));
    }
    let run_reductive = match want_reductive {
        Some(x) => x,
        None => loaded.splitting.is_some(),
    };
    if run_reductive {
        let sp = loaded
            .splitting
            .as_ref()
            .ok_or_else(|| anyhow!("reductivity check needs a [splitting] section"))?;
        let r = check_reductive(&loaded.cte, sp);
        let mut v = Verdict::new("reductive", b(r.reductive));
        if let Some(w) = r.witness {
            v = v.with_witness(format!("{} condition fails at pair ({}, {})", w.condition, w.a, w.b));
        }
        rep.push(v);
    }
    Ok(rep)
}

fn extract_bracket(input: &str, seed: u64) -> Result<Report> {
    let (label, content, base) = resolve_input(input)?;
    let mut rep = Report::new(format!("extract-bracket {label}"), seed);
    rep.add_input(&label, content.as_bytes());
    let loaded = io::extension_from_toml(&content, base.as_deref())?;
    let sp = loaded
        .splitting
        .as_ref()
        .ok_or_else(|| anyhow!("extract-bracket needs a [splitting] section"))?;
    let r = check_reductive(&loaded.cte, sp);
    if !r.reductive {
        rep.push(Verdict::new("reductive", Status::Fail));
        return Ok(rep);
    }
    rep.push(Verdict::new("reductive", Status::Pass));
    let k = induced_quotient_bracket(&loaded.cte, sp)?;
    let matches = k.structure_constants() == loaded.k_reference.structure_constants();
    let mut listing = String::new();
    let dim = k.dim();
    for a in 0..dim {
        for bb in (a + 1)..dim {
            let col = k.bracket(&basis_vec(dim, a), &basis_vec(dim, bb)).unwrap();
            if col.iter().any(|c| !num::Zero::is_zero(c)) {
                let terms: Vec<String> = col
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num::Zero::is_zero(*c))
                    .map(|(i, c)| format!("{} k{}", format_rational(c), i + 1))
                    .collect();
                listing.push_str(&format!("[k{}, k{}] = {}; ", a + 1, bb + 1, terms.join(" + ")));
            }
        }
    }
    if listing.is_empty() {
        listing = "abelian".into();
    }
    rep.push(
        Verdict::new(
            "bracket-matches-reference",
            if matches { Status::Pass } else { Status::Fail },
        )
        .with_witness(listing.trim_end_matches("; ").to_string()),
    );
    let iso = semidirect_iso_check(&loaded.cte, sp)?;
    rep.push(Verdict::new("semidirect-iso", if iso { Status::Pass } else { Status::Fail }));
    Ok(rep)
}

fn tower(input: &str, seed: u64) -> Result<Report> {
    let (label, content, base) = resolve_input(input)?;
    let mut rep = Report::new(format!("tower {label}"), seed);
    rep.add_input(&label, content.as_bytes());
    let pf = io::pfaffian_from_toml(&content, base.as_deref())?;
    let h = pf.symbol_ideal();
    let (w, _) = pf.image_w();
    rep.push(
        Verdict::new("symbol-ideal", Status::Pass)
            .with_witness(format!("dim h = {}, dim W = {}", h.dim(), w.dim())),
    );
    let t = pf.reduction_tower();
    let dims: Vec<String> = t
        .stages
        .iter()
        .map(|s| format!("(g {}, V {})", s.g.dim(), s.v_dim))
        .collect();
    rep.push(
        Verdict::new("tower", Status::Pass)
            .with_witness(format!("order {}; stages {}", t.order, dims.join(" -> "))),
    );
    Ok(rep)
}

fn check_flatness(input: &str, seed: u64) -> Result<Report> {
    let (label, content, base) = resolve_input(input)?;
    let mut rep = Report::new(format!("check-flatness {label}"), seed);
    rep.add_input(&label, content.as_bytes());
    let scenario = io::scenario_from_toml(&content, base.as_deref())?;
    let f = scenario
        .flatness
        .as_ref()
        .ok_or_else(|| anyhow!("scenario has no [coframe]/[model] flatness data"))?;
    let r = flatness_check(f)?;
    let status = match r.verdict {
        FlatVerdict::Flat => Status::Flat,
        FlatVerdict::NotFlat => Status::NotFlat,
    };
    let (i, a, b) = r.worst_torsion;
    rep.push(
        Verdict::new("flatness", status)
            .with_max(r.max_t_defect.max(r.max_r), r.tol)
            .with_witness(format!(
                "max |R| = {:.3e}; worst torsion T^{}_{}{} = {:.6} at {:?}",
                r.max_r,
                i + 1,
                a + 1,
                b + 1,
                r.worst_torsion_value,
                r.worst_point
            ))
            .with_samples(r.points as u64),
    );
    Ok(rep)
}

fn check_integrability(input: &str, seed: u64) -> Result<Report> {
    let (label, content, base) = resolve_input(input)?;
    let mut rep = Report::new(format!("check-integrability {label}"), seed);
    rep.add_input(&label, content.as_bytes());
    let scenario = io::scenario_from_toml(&content, base.as_deref())?;
    let frames = scenario
        .frames
        .as_ref()
        .ok_or_else(|| anyhow!("scenario has no [frames] section"))?;
    let k = scenario
        .k_alg
        .as_ref()
        .ok_or_else(|| anyhow!("scenario has no [model] with a k algebra"))?;
    let r = k_integrability_witness(frames, k, &scenario.boxx)?;
    let status = match r.verdict {
        IntegrabilityVerdict::Pass => Status::Pass,
        IntegrabilityVerdict::Fail => Status::Fail,
    };
    rep.push(
        Verdict::new("k-integrability", status)
            .with_max(r.max_defect, r.tol)
            .with_witness(format!(
                "worst frame pair ({}, {}) at {:?}",
                r.worst_pair.0 + 1,
                r.worst_pair.1 + 1,
                r.worst_point
            ))
            .with_samples(r.points as u64),
    );
    Ok(rep)
}

const SPLIT_TOL: f64 = 1e-8;

fn split_check(input: &str, seed: u64) -> Result<Report> {
    let (label, content, base) = resolve_input(input)?;
    let mut rep = Report::new(format!("split-check {label}"), seed);
    rep.add_input(&label, content.as_bytes());
    let scenario = io::scenario_from_toml(&content, base.as_deref())?;
    if let Some(so) = &scenario.second_order {
        let r = second_order_split_check(&so.tau2, &so.tau1, &so.theta1, &so.model, &scenario.boxx)?;
        rep.push(
            Verdict::residual("second-order-split", r.max_discrepancy, SPLIT_TOL)
                .with_samples(r.points as u64),
        );
    } else {
        let f = scenario
            .flatness
            .as_ref()
            .ok_or_else(|| anyhow!("scenario has neither [second_order] nor a flatness model"))?;
        let r = curvature_split_check(&f.tau, &f.theta, &f.h_alg, &f.k_alg, &f.rep, &f.boxx)?;
        rep.push(
            Verdict::residual("curvature-split", r.max_discrepancy, SPLIT_TOL)
                .with_samples(r.points as u64),
        );
    }
    Ok(rep)
}

#[derive(serde::Deserialize)]
struct GroupoidConfigFile {
    groupoid: GroupoidConfig,
}

#[derive(serde::Deserialize)]
struct GroupoidConfig {
    model: String,
    n: Option<usize>,
    k: Option<usize>,
    holonomic_samples: Option<usize>,
    multiplicativity_samples: Option<usize>,
    random_triples: Option<usize>,
    grid_per_axis: Option<usize>,
}

fn groupoid_check(
    model: Option<&str>,
    n: Option<usize>,
    k: Option<usize>,
    input: Option<&str>,
    seed: u64,
) -> Result<Report> {
    let (label, config) = match input {
        Some(reference) => {
            let (label, content, _) = resolve_input(reference)?;
            let parsed: GroupoidConfigFile =
                toml::from_str(&content).context("parsing groupoid config")?;
            (label, parsed.groupoid)
        }
        None => {
            let model = model
                .ok_or_else(|| anyhow!("groupoid-check needs --model or a config input"))?
                .to_string();
            (
                format!("--model {model}"),
                GroupoidConfig {
                    model,
                    n,
                    k,
                    holonomic_samples: None,
                    multiplicativity_samples: None,
                    random_triples: None,
                    grid_per_axis: None,
                },
            )
        }
    };
    let group = match config.model.as_str() {
        "translations" => KGroup::Translations { n: config.n.unwrap_or(2) },
        "heisenberg" => KGroup::Heisenberg { k: config.k.unwrap_or(1) },
        other => bail!("unknown groupoid model `{other}` (use translations|heisenberg)"),
    };
    let dim = group.dim();
    let mut rep = Report::new(format!("groupoid-check {label}"), seed);
    if let Some(reference) = input {
        if let Ok((_, content, _)) = resolve_input(reference) {
            rep.add_input(&label, content.as_bytes());
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let triples = config.random_triples.unwrap_or(1000);
    let d = divisor_identity_residual(&group, &mut rng, triples);
    rep.push(Verdict::residual("divisor-identities", d, 1e-12).with_samples(triples as u64));
    let axioms = groupoid_axiom_residual(&group, &mut rng, 200)?;
    rep.push(Verdict::residual("groupoid-axioms", axioms, 1e-12).with_samples(200));
    let per_axis = config.grid_per_axis.unwrap_or(if dim <= 2 { 4 } else { 3 });
    let grid = cube_grid(dim, per_axis);
    let hol_count = config.holonomic_samples.unwrap_or(20);
    let hol = holonomic_residual_sweep(&group, &mut rng, hol_count, &grid);
    rep.push(Verdict::residual("holonomic-bisections", hol, 1e-6).with_samples(hol_count as u64));
    let mult_count = config.multiplicativity_samples.unwrap_or(200);
    let mult = multiplicativity_residual(&group, &mut rng, mult_count)?;
    rep.push(Verdict::residual("multiplicativity", mult, 1e-5).with_samples(mult_count as u64));
    let iso = isotropy_action_residual(&group, &mut rng, 200)?;
    rep.push(Verdict::residual("isotropy-action-law", iso, 1e-8).with_samples(200));

    // induced reductive extension with the natural isotropy algebra
    let g_mats = match group {
        KGroup::Translations { n } => cartanlab_core::algebra::gl_matrices(n),
        KGroup::Heisenberg { k } => cartanlab_core::algebra::sp_k1_matrices(k),
    };
    match build_reductive_extension(&group, &g_mats) {
        Ok(ext) => {
            let r = check_reductive(&ext.cte, &ext.splitting);
            rep.push(
                Verdict::new(
                    "reductive-extension",
                    if r.reductive { Status::Pass } else { Status::Fail },
                )
                .with_witness(format!(
                    "z = g ⋉ k with dim ({} + {}); z is {}",
                    ext.g.dim(),
                    ext.k.dim(),
                    if ext.cte.z_bracket().is_lie() { "Lie" } else { "almost Lie (Jacobi fails)" }
                )),
            );
        }
        Err(e) => {
            rep.push(Verdict::new("reductive-extension", Status::Fail).with_witness(e.to_string()));
        }
    }
    Ok(rep)
}

fn catalog_cmd(export: Option<&Path>) -> Result<Report> {
    let mut rep = Report::new("catalog", 0);
    for entry in catalog::ENTRIES {
        rep.push(
            Verdict::new(entry.name, Status::Pass)
                .with_witness(format!(
                    "{} ({} bytes, sha256 {})",
                    entry.kind.label(),
                    entry.content.len(),
                    &report::sha256_hex(entry.content.as_bytes())[..16]
                )),
        );
    }
    if let Some(dir) = export {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))?;
        for entry in catalog::ENTRIES {
            let path = dir.join(format!("{}.toml", entry.name));
            std::fs::write(&path, entry.content)
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(rep)
}
