use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::closure::{closure_of_tail, inverse_witness_report, ClosureBudget};
use crate::error::{Error, Result};
use crate::experiment::config::{Scenario, ScenarioConfig};
use crate::experiment::manifest::{RunManifest, RunRecord};
use crate::experiment::{RunOptions, RunOutcome, EXIT_BUDGET, EXIT_OK};
use crate::free::{
    cancellation_experiment, log_bound_check, prefix_counts, random_pool, reflected_biased_walk,
    return_probability, smallest_passing_threshold, sphere_growth_profile,
};
use crate::group::{
    nilpotent_identity_check, torsion_inverse_witness, z_inverse_witness, GroupDescriptor,
    GroupElement,
};
use crate::lattice::{classify_subsemigroup, parse_vectors, subgroup_index, zero_in_convex_hull};
use crate::walk::{csv_err, generate_walk, WalkTrace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Walk,
    Closure,
    ArEstimate,
    LatticeClassify { input: PathBuf },
    FreeStats,
    NilpotentCheck,
    WitnessCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Walk => "walk",
            Command::Closure => "closure",
            Command::ArEstimate => "ar-estimate",
            Command::LatticeClassify { .. } => "lattice-classify",
            Command::FreeStats => "free-stats",
            Command::NilpotentCheck => "nilpotent-check",
            Command::WitnessCheck => "witness-check",
        }
    }
}

struct OutputFile {
    name: String,
    bytes: Vec<u8>,
}

struct SeedOutput {
    seed: u64,
    files: Vec<OutputFile>,
    rows: Vec<Vec<String>>,
    summary: String,
    complete: bool,
    wall_ms: u128,
}

impl SeedOutput {
    fn new(seed: u64) -> Self {
        SeedOutput {
            seed,
            files: Vec::new(),
            rows: Vec::new(),
            summary: String::new(),
            complete: true,
            wall_ms: 0,
        }
    }
}

// Shared header lines for every data file of a run.
fn metadata(command: &Command, hash: &str) -> Vec<String> {
    vec![format!("config_hash={hash} command={}", command.name())]
}

fn csv_bytes(meta: &[String], header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for line in meta {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(&mut out);
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    w.flush()?;
    drop(w);
    Ok(out)
}

fn to_bytes(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn short_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))[..16].to_string()
}

fn load_scenario(options: &RunOptions, command: &Command) -> Result<Scenario> {
    let path = options.config.as_ref().ok_or_else(|| Error::Config {
        path: "--config".into(),
        message: format!("{} needs a scenario config", command.name()),
    })?;
    let mut config = ScenarioConfig::load(path)?;
    if !options.seeds.is_empty() {
        config.scenario.seeds = options.seeds.clone();
    }
    config.validate()
}

fn out_dir(options: &RunOptions, scenario: Option<&Scenario>) -> PathBuf {
    options
        .out
        .clone()
        .or_else(|| scenario.and_then(|s| s.config.scenario.outputs.as_ref().map(PathBuf::from)))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::Config {
                path: "--threads".into(),
                message: "must be positive".into(),
            });
        }
        b = b.num_threads(t);
    }
    b.build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

pub(crate) fn run(command: &Command, options: &RunOptions) -> Result<RunOutcome> {
    let started_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let scenario = match command {
        Command::LatticeClassify { .. } | Command::NilpotentCheck => None,
        Command::WitnessCheck if options.config.is_none() => None,
        _ => Some(load_scenario(options, command)?),
    };
    let pool = pool(options.threads)?;
    let threads = pool.current_num_threads();
    let dir = out_dir(options, scenario.as_ref());

    let (hash, seeds, seed_outputs, global) = match (command, &scenario) {
        (Command::LatticeClassify { input }, _) => {
            let (hash, global) = lattice_classify(command, input)?;
            (hash, Vec::new(), Vec::new(), global)
        }
        (Command::NilpotentCheck, _) => {
            let hash = short_hash(b"nilpotent-check k=-3..3 n=1..10 m=1..10");
            let global = nilpotent_check(command, &hash)?;
            (hash, Vec::new(), Vec::new(), global)
        }
        (Command::WitnessCheck, None) => {
            let hash = short_hash(b"witness-check");
            let global = witness_identities(command, &hash)?;
            (hash, Vec::new(), Vec::new(), global)
        }
        (_, Some(s)) => {
            let seeds = s.config.scenario.seeds.clone();
            let outputs: Vec<SeedOutput> = pool.install(|| {
                seeds
                    .par_iter()
                    .map(|&seed| {
                        let t0 = Instant::now();
                        let mut o = per_seed(command, s, seed)?;
                        o.wall_ms = t0.elapsed().as_millis();
                        Ok(o)
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            let global = summarize(command, s, &outputs)?;
            (s.hash.clone(), seeds, outputs, global)
        }
        (_, None) => unreachable!("scenario loaded for seeded commands"),
    };

    std::fs::create_dir_all(&dir)?;
    let mut runs = Vec::new();
    let mut summary = String::new();
    let mut complete = true;
    for o in &seed_outputs {
        let files = write_files(&dir, &o.files)?;
        runs.push(RunRecord {
            seed: Some(o.seed),
            files,
            wall_ms: o.wall_ms,
        });
        summary.push_str(&o.summary);
        complete &= o.complete;
    }
    let t0 = Instant::now();
    let files = write_files(&dir, &global.files)?;
    summary.push_str(&global.summary);
    if !files.is_empty() {
        runs.push(RunRecord {
            seed: None,
            files,
            wall_ms: t0.elapsed().as_millis(),
        });
    }
    let manifest = RunManifest {
        command: command.name().into(),
        config_hash: hash,
        seeds,
        threads,
        runs,
        started_unix,
    };
    manifest.write(&dir)?;
    let exit_code = if !complete && *command == Command::ArEstimate {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok(RunOutcome {
        out_dir: dir,
        manifest,
        summary,
        exit_code,
    })
}

fn write_files(dir: &Path, files: &[OutputFile]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::with_capacity(files.len());
    for f in files {
        std::fs::write(dir.join(&f.name), &f.bytes)?;
        out.push(PathBuf::from(&f.name));
    }
    Ok(out)
}

fn walk_for(s: &Scenario, seed: u64, steps: usize) -> WalkTrace {
    generate_walk(&s.measure, steps, seed)
}

fn per_seed(command: &Command, s: &Scenario, seed: u64) -> Result<SeedOutput> {
    let meta = metadata(command, &s.hash);
    let mut o = SeedOutput::new(seed);
    let cfg = &s.config;
    match command {
        Command::Walk => {
            let t = walk_for(s, seed, cfg.scenario.steps);
            o.files.push(OutputFile {
                name: format!("walk_seed{seed}.trace"),
                bytes: t.to_text(&meta).into_bytes(),
            });
            o.files.push(OutputFile {
                name: format!("walk_seed{seed}.csv"),
                bytes: to_bytes(|b| t.write_positions_csv(b, &meta))?,
            });
            let last = t.position(t.len()).expect("steps > 0");
            o.summary = format!("seed {seed}: X_{} = {last}\n", t.len());
        }
        Command::Closure => {
            let t = walk_for(s, seed, cfg.scenario.steps);
            if cfg.scenario.tail_index > t.len() {
                return Err(Error::Config {
                    path: "scenario.tail_index".into(),
                    message: "exceeds scenario.steps".into(),
                });
            }
            let c = closure_of_tail(&t, cfg.scenario.tail_index, s.budget)?;
            let r = s.coverage_radius();
            let cov = c.coverage_fraction(r)?;
            o.files.push(OutputFile {
                name: format!("closure_seed{seed}.txt"),
                bytes: c.dump(&meta).into_bytes(),
            });
            o.rows.push(vec![
                seed.to_string(),
                c.len().to_string(),
                c.exhausted().to_string(),
                c.products_performed().to_string(),
                r.to_string(),
                cov.to_string(),
                format!("{:.6}", ratio_f64(cov)),
            ]);
            o.summary = format!(
                "seed {seed}: {} elements, exhausted={}, coverage(r={r})={cov}\n",
                c.len(),
                c.exhausted()
            );
        }
        Command::ArEstimate => {
            let t = walk_for(s, seed, s.walk_length());
            let r = s.coverage_radius();
            for n in s.prefix_lengths() {
                let rep =
                    inverse_witness_report(&t.truncated(n), cfg.scenario.tail_index, s.budget)?;
                let cov = rep.closure.coverage_fraction(r)?;
                o.complete &= rep.closure.exhausted();
                o.rows.push(vec![
                    seed.to_string(),
                    n.to_string(),
                    cov.to_string(),
                    format!("{:.6}", ratio_f64(cov)),
                    format!("{:.6}", rep.present_fraction_in_ball()),
                    rep.in_ball().to_string(),
                    rep.closure.exhausted().to_string(),
                ]);
            }
        }
        Command::FreeStats => free_stats_seed(command, s, seed, &meta, &mut o)?,
        Command::WitnessCheck => {
            let t = walk_for(s, seed, cfg.scenario.steps);
            let rep = inverse_witness_report(&t, cfg.scenario.tail_index, s.budget)?;
            o.files.push(OutputFile {
                name: format!("witness_seed{seed}.csv"),
                bytes: to_bytes(|b| rep.write_csv(b, &meta))?,
            });
            o.summary = format!(
                "seed {seed}: inverse present {}/{} in ball, exhausted={}\n",
                rep.present(),
                rep.in_ball(),
                rep.closure.exhausted()
            );
        }
        Command::LatticeClassify { .. } | Command::NilpotentCheck => {
            unreachable!("not seeded")
        }
    }
    Ok(o)
}

fn ratio_f64(r: num_rational::Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn free_stats_seed(
    command: &Command,
    s: &Scenario,
    seed: u64,
    meta: &[String],
    o: &mut SeedOutput,
) -> Result<()> {
    let GroupDescriptor::Free(d) = s.descriptor else {
        return Err(Error::Config {
            path: "scenario.group".into(),
            message: format!("{} needs a free group", command.name()),
        });
    };
    let a = &s.config.analysis;
    let t = walk_for(s, seed, s.config.scenario.steps);

    let stats = prefix_counts(&t)?.with_threshold(a.j0);
    let check = log_bound_check(&stats, a.j0);
    let threshold = smallest_passing_threshold(&stats);
    o.files.push(OutputFile {
        name: format!("prefix_seed{seed}.csv"),
        bytes: to_bytes(|b| stats.write_csv(b, meta))?,
    });

    let max_len = a.cancel_lengths.iter().copied().max().unwrap_or(1);
    let pool = random_pool(d, a.pool_size, max_len, seed ^ 0x9e37_79b9_7f4a_7c15);
    let cancel = cancellation_experiment(d, &a.cancel_lengths, a.cancel_trials, &pool, seed)?;
    o.files.push(OutputFile {
        name: format!("cancellation_seed{seed}.csv"),
        bytes: to_bytes(|b| cancel.write_csv(b, meta))?,
    });

    let budget = ClosureBudget::new(
        a.growth_radius,
        s.budget.max_elements,
        s.budget.max_products,
    )?;
    let prefix = t.truncated(a.growth_generators.min(t.len()));
    let growth = sphere_growth_profile(&closure_of_tail(&prefix, 1, budget)?)?;
    o.files.push(OutputFile {
        name: format!("growth_seed{seed}.csv"),
        bytes: to_bytes(|b| growth.write_csv(b, meta))?,
    });

    let walk = reflected_biased_walk(d as u64, a.reflected_steps, seed);
    o.files.push(OutputFile {
        name: format!("reflected_seed{seed}.csv"),
        bytes: to_bytes(|b| walk.write_csv(b, meta))?,
    });

    let exact = return_probability(d as u64);
    o.rows.push(vec![
        seed.to_string(),
        stats.max_depth().to_string(),
        threshold.to_string(),
        check.holds.to_string(),
        check
            .first_violation
            .map_or("none".into(), |j| j.to_string()),
        exact.to_string(),
        format!("{:.6}", walk.return_frequency()),
        walk.settled_levels.to_string(),
        format!("{:.6}", walk.visit_mean),
        format!("{:.6}", growth.slope),
        growth.below_four_power().to_string(),
    ]);
    o.summary = format!(
        "seed {seed}: max depth {}, smallest passing j0 {threshold}, bound at j0={} {}; \
         return probability formula {exact} = {:.6}, simulated {:.6} over {} levels; growth slope {:.4}\n",
        stats.max_depth(),
        a.j0,
        if check.holds { "holds" } else { "fails" },
        *exact.numer() as f64 / *exact.denom() as f64,
        walk.return_frequency(),
        walk.settled_levels,
        growth.slope,
    );
    Ok(())
}

struct GlobalOutput {
    files: Vec<OutputFile>,
    summary: String,
}

fn summarize(command: &Command, s: &Scenario, outputs: &[SeedOutput]) -> Result<GlobalOutput> {
    let meta = metadata(command, &s.hash);
    let rows: Vec<Vec<String>> = outputs
        .iter()
        .flat_map(|o| o.rows.iter().cloned())
        .collect();
    let mut files = Vec::new();
    let mut summary = String::new();
    match command {
        Command::Closure => {
            files.push(OutputFile {
                name: "closure_summary.csv".into(),
                bytes: csv_bytes(
                    &meta,
                    &[
                        "seed",
                        "elements",
                        "exhausted",
                        "products",
                        "radius",
                        "coverage_exact",
                        "coverage",
                    ],
                    &rows,
                )?,
            });
        }
        Command::ArEstimate => {
            files.push(OutputFile {
                name: "ar_estimate.csv".into(),
                bytes: csv_bytes(
                    &meta,
                    &[
                        "seed",
                        "n_used",
                        "coverage_exact",
                        "coverage",
                        "present_fraction",
                        "in_ball",
                        "exhausted",
                    ],
                    &rows,
                )?,
            });
            let mut agg = Vec::new();
            for n in s.prefix_lengths() {
                let sel: Vec<&Vec<String>> =
                    rows.iter().filter(|r| r[1] == n.to_string()).collect();
                let k = sel.len() as f64;
                let mean = |col: usize| {
                    sel.iter()
                        .map(|r| r[col].parse::<f64>().unwrap_or(0.0))
                        .sum::<f64>()
                        / k
                };
                let full = sel.iter().filter(|r| r[3] == "1.000000").count();
                let all_exhausted = sel.iter().all(|r| r[6] == "true");
                let _ = writeln!(
                    summary,
                    "N={n}: mean coverage {:.6}, full coverage in {full}/{} seeds, mean present fraction {:.6}, all exhausted {all_exhausted}",
                    mean(3),
                    sel.len(),
                    mean(4)
                );
                agg.push(vec![
                    n.to_string(),
                    sel.len().to_string(),
                    format!("{:.6}", mean(3)),
                    full.to_string(),
                    format!("{:.6}", mean(4)),
                    all_exhausted.to_string(),
                ]);
            }
            files.push(OutputFile {
                name: "ar_summary.csv".into(),
                bytes: csv_bytes(
                    &meta,
                    &[
                        "n_used",
                        "seeds",
                        "mean_coverage",
                        "full_coverage_seeds",
                        "mean_present_fraction",
                        "all_exhausted",
                    ],
                    &agg,
                )?,
            });
        }
        Command::FreeStats => {
            let mut all = rows.clone();
            if !rows.is_empty() {
                let k = rows.len() as f64;
                let mean = |col: usize| {
                    rows.iter()
                        .map(|r| r[col].parse::<f64>().unwrap_or(0.0))
                        .sum::<f64>()
                        / k
                };
                let max = |col: usize| {
                    rows.iter()
                        .map(|r| r[col].parse::<u64>().unwrap_or(0))
                        .max()
                        .unwrap_or(0)
                };
                let holds = rows.iter().filter(|r| r[3] == "true").count();
                all.push(vec![
                    "summary".into(),
                    max(1).to_string(),
                    max(2).to_string(),
                    format!("{holds}/{}", rows.len()),
                    String::new(),
                    rows[0][5].clone(),
                    format!("{:.6}", mean(6)),
                    String::new(),
                    format!("{:.6}", mean(8)),
                    format!("{:.6}", mean(9)),
                    String::new(),
                ]);
                let _ = writeln!(
                    summary,
                    "return probability: formula {} vs simulated mean {:.6}; log bound holds at configured j0 in {holds}/{} seeds",
                    rows[0][5],
                    mean(6),
                    rows.len()
                );
            }
            files.push(OutputFile {
                name: "free_summary.csv".into(),
                bytes: csv_bytes(
                    &meta,
                    &[
                        "seed",
                        "max_depth",
                        "smallest_j0",
                        "holds_at_j0",
                        "first_violation",
                        "return_probability_formula",
                        "return_frequency",
                        "settled_levels",
                        "mean_visits",
                        "growth_slope",
                        "below_four_power",
                    ],
                    &all,
                )?,
            });
        }
        Command::WitnessCheck => {
            let g = witness_identities(command, &s.hash)?;
            files.extend(g.files);
            summary.push_str(&g.summary);
        }
        _ => {}
    }
    Ok(GlobalOutput { files, summary })
}

fn lattice_classify(command: &Command, input: &Path) -> Result<(String, GlobalOutput)> {
    let text = std::fs::read_to_string(input).map_err(|e| Error::Config {
        path: input.display().to_string(),
        message: e.to_string(),
    })?;
    let vectors = parse_vectors(&text)?;
    let hash = short_hash(text.as_bytes());
    let class = classify_subsemigroup(&vectors)?;
    let witness = zero_in_convex_hull(&vectors)?;
    let lattice = subgroup_index(&vectors)?;
    let mut report = String::new();
    for line in metadata(command, &hash) {
        let _ = writeln!(report, "# {line}");
    }
    let _ = writeln!(report, "classification = {class}");
    let _ = writeln!(report, "witness = {witness}");
    let _ = writeln!(report, "rank = {}", lattice.rank);
    let _ = writeln!(report, "index = {}", lattice.index);
    let diag: Vec<String> = lattice
        .smith_diagonal
        .iter()
        .map(|x| x.to_string())
        .collect();
    let _ = writeln!(report, "smith_diagonal = {}", diag.join(" "));
    Ok((
        hash,
        GlobalOutput {
            files: vec![OutputFile {
                name: "classification.txt".into(),
                bytes: report.into_bytes(),
            }],
            summary: format!("{class}\n"),
        },
    ))
}

fn nilpotent_check(command: &Command, hash: &str) -> Result<GlobalOutput> {
    let mut rows = Vec::new();
    let mut failures = 0u64;
    let mut total = 0u64;
    for n in 1..=10u64 {
        for m in 1..=10u64 {
            let mut holds = 0u64;
            let mut checked = 0u64;
            for k1 in -3..=3 {
                for k2 in -3..=3 {
                    for k3 in -3..=3 {
                        for k4 in -3..=3 {
                            checked += 1;
                            holds += nilpotent_identity_check([k1, k2, k3, k4], n, m).holds as u64;
                        }
                    }
                }
            }
            failures += checked - holds;
            total += checked;
            rows.push(vec![
                n.to_string(),
                m.to_string(),
                checked.to_string(),
                holds.to_string(),
            ]);
        }
    }
    Ok(GlobalOutput {
        files: vec![OutputFile {
            name: "nilpotent.csv".into(),
            bytes: csv_bytes(
                &metadata(command, hash),
                &["n", "m", "checked", "holds"],
                &rows,
            )?,
        }],
        summary: format!(
            "nilpotent identity: {} of {total} cases hold\n",
            total - failures
        ),
    })
}

fn witness_identities(command: &Command, hash: &str) -> Result<GlobalOutput> {
    let mut rows = Vec::new();
    let (mut checked, mut valid) = (0u64, 0u64);
    for x in 1..=100i64 {
        for y in -100..=-1i64 {
            checked += 1;
            valid += z_inverse_witness(x, y)?.is_valid() as u64;
        }
    }
    rows.push(vec![
        "z-inverse".into(),
        "x=1..100 y=-100..-1".into(),
        checked.to_string(),
        valid.to_string(),
    ]);
    for m in 1..=24u64 {
        let (mut checked, mut valid) = (0u64, 0u64);
        for a in 0..m as i64 {
            for b in 0..m as i64 {
                let x = GroupElement::cyclic(m, a)?;
                let y = GroupElement::cyclic(m, b)?;
                checked += 1;
                if let Some((_, w)) = torsion_inverse_witness(&x, &y, m)? {
                    valid += (w == x.invert()) as u64;
                }
            }
        }
        rows.push(vec![
            "torsion".into(),
            format!("CyclicZ({m})"),
            checked.to_string(),
            valid.to_string(),
        ]);
    }
    let ok = rows.iter().all(|r| r[2] == r[3]);
    Ok(GlobalOutput {
        files: vec![OutputFile {
            name: "witness_identities.csv".into(),
            bytes: csv_bytes(
                &metadata(command, hash),
                &["family", "range", "checked", "valid"],
                &rows,
            )?,
        }],
        summary: format!("identity witnesses all valid: {ok}\n"),
    })
}
