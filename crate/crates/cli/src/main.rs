//! `pfchain` command-line front end.

use std::hash::{DefaultHasher, Hash, Hasher};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use pfchain::counting::{self, catalan, motzkin, pf_count, rational_to_f64};
use pfchain::entanglement::{self, SchmidtModel, SchmidtSpectrum};
use pfchain::markov::{self, rational_string, HopVariant, MarkovChain};
use pfchain::paircount::{self, pf_pairs};
use pfchain::spectra::{self, HamiltonianParams, Model, SolverOptions, Subspace};
use pfchain::words::IrreducibleString;
use pfchain::{repro, Error};

/// Hard ceiling for `--max-dim`.
const MAX_DIM_CAP: u128 = 50_000_000;
/// Largest `N` for rational-mode entropy.
const EXACT_ENTROPY_MAX_N: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "pfchain",
    version,
    about = "Pair-flip chain combinatorics, spectra and Markov bounds"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Working precision; floats are f64 and counts are exact, so only >= 64 is accepted.
    #[arg(long, default_value_t = 64, global = true)]
    precision_bits: u32,
    /// Directory holding word-count caches.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads for independent (model, size) tasks.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Largest basis or state space to build.
    #[arg(long, default_value_t = 5_000_000, global = true)]
    max_dim: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Pf,
    Catalan,
    Motzkin,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PairsMode {
    Exact,
    Asymptotic,
    Histogram,
    Bogf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EntropyModel {
    Pf,
    Motzkin,
    Dyck,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EntropyMode {
    Exact,
    Logspace,
    Oracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum HamModel {
    Pf,
    Motzkin,
    Fredkin,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ChainArg {
    Pf,
    Pd,
    Hop,
    Cwmh,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BoundArg {
    Canonical,
    Comparison,
    Dirichlet,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    PairGap,
    EntropyScaling,
    GapFit,
    Histogram,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Word or path counts for n = 0..=nmax reducible pairs and k extra letters.
    Count {
        #[arg(long, value_enum, default_value_t = Family::Pf)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        d: u32,
        /// Colors for the Catalan and Motzkin families.
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 9)]
        nmax: u64,
        #[arg(long, default_value_t = 0)]
        k: u64,
    },
    /// Equal-neighbour pair statistics for n = 0..=nmax.
    Pairs {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 9)]
        nmax: u64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        k_list: Vec<u64>,
        #[arg(long, value_enum, default_value_t = PairsMode::Exact)]
        mode: PairsMode,
    },
    /// Half-chain entanglement entropy of the uniform ground state.
    Entropy {
        #[arg(long, value_enum, default_value_t = EntropyModel::Pf)]
        model: EntropyModel,
        #[arg(long, default_value_t = 3)]
        d: u32,
        /// Colors for the Dyck model.
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long = "N")]
        n_sites: usize,
        #[arg(long, value_enum, default_value_t = EntropyMode::Logspace)]
        mode: EntropyMode,
    },
    /// Low spectrum of a restricted Hamiltonian.
    Spectrum {
        #[arg(long, value_enum, default_value_t = HamModel::Pf)]
        model: HamModel,
        #[arg(long, default_value_t = 3)]
        d: u8,
        #[arg(long, default_value_t = 1)]
        s: u8,
        #[arg(long = "N")]
        n_sites: usize,
        /// Subspace with the canonical k-letter irreducible string 1212...
        #[arg(long, conflicts_with_all = ["label", "full"])]
        k: Option<usize>,
        /// Subspace with this irreducible string, as digits (default: balanced).
        #[arg(long, conflicts_with = "full")]
        label: Option<String>,
        /// The whole q^N space.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long)]
        ends: bool,
        #[arg(long, default_value_t = 4)]
        eigs: usize,
        /// Also fit gap ~ N^a over the admissible sizes from --fit-min up to N.
        #[arg(long)]
        fit: bool,
        #[arg(long)]
        fit_min: Option<usize>,
        /// Write the matrix as `dim` followed by `row col value` lines.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Exact Markov chains and gap bounds.
    Markov {
        #[arg(long, value_enum, default_value_t = ChainArg::Pf)]
        chain: ChainArg,
        #[arg(long, default_value_t = 3)]
        d: u8,
        /// Pairs per word (pf, pd) or sites (hop, cwmh).
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Particles for the hopping chains.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum)]
        bound: Option<BoundArg>,
        /// Include every transition probability in the output.
        #[arg(long)]
        matrix: bool,
        /// Write the supertree parent list (child TAB parent).
        #[arg(long)]
        export_tree: Option<PathBuf>,
    },
    /// Run the reproduction suite.
    Repro {
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Comma-separated claim ids; default all.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<u8>,
    },
    /// CSV series for plotting.
    PlotData {
        #[arg(long, value_enum)]
        kind: PlotKind,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 200)]
        nmax: u64,
        #[arg(long, default_value_t = 20)]
        kmax: u64,
        #[arg(long = "N", default_value_t = 80)]
        n_sites: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

enum Failure {
    Assertion(String),
    Config(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimitExceeded { .. } => Failure::Resource(e.to_string()),
            Error::ConvergenceFailure { .. } | Error::MatchingInfeasible(_) => {
                Failure::Assertion(e.to_string())
            }
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Output {
    format: Format,
    hash: String,
    text: String,
}

impl Output {
    fn json(&mut self, mut v: Value) {
        if let Value::Object(m) = &mut v {
            m.insert("schema".into(), json!(1));
            m.insert("config_hash".into(), json!(self.hash));
        }
        self.text
            .push_str(&serde_json::to_string_pretty(&v).unwrap());
        self.text.push('\n');
    }

    fn csv(&mut self, header: &[&str], rows: &[Vec<String>]) {
        self.text
            .push_str(&format!("# schema 1, config {}\n", self.hash));
        self.text.push_str(&header.join(","));
        self.text.push('\n');
        for r in rows {
            self.text.push_str(&r.join(","));
            self.text.push('\n');
        }
    }

    /// Table output in either format.
    fn table(&mut self, header: &[&str], rows: Vec<Vec<String>>, meta: Value) {
        match self.format {
            Format::Csv => self.csv(header, &rows),
            Format::Json => {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            header
                                .iter()
                                .zip(r)
                                .map(|(h, v)| (h.to_string(), json!(v)))
                                .collect(),
                        )
                    })
                    .collect();
                let mut m = meta;
                m["rows"] = json!(items);
                self.json(m);
            }
        }
    }
}

fn rat(r: &BigRational) -> String {
    rational_string(r)
}

fn config_hash(args: &[String]) -> String {
    let mut h = DefaultHasher::new();
    args[1..].hash(&mut h);
    format!("{:016x}", h.finish())
}

/// Runs `f` over `items` on `jobs` threads, keeping input order.
fn par_map<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|sc| {
        for _ in 0..jobs.min(items.len()).max(1) {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner()
        .unwrap()
        .into_iter()
        .map(Option::unwrap)
        .collect()
}

fn with_cache<T>(cli: &Cli, d: u32, f: impl FnOnce() -> Res<T>) -> Res<T> {
    let path = cli
        .cache
        .as_ref()
        .map(|dir| dir.join(format!("counts-d{d}.bin")));
    if let Some(p) = &path {
        if p.exists() {
            counting::table(d).load(p)?;
        }
    }
    let r = f()?;
    if let Some(p) = &path {
        std::fs::create_dir_all(p.parent().unwrap())?;
        counting::table(d).save(p)?;
    }
    Ok(r)
}

/// `sum m lambda^2 (-log2 lambda^2)` with each weight formed as an exact rational.
fn rational_entropy(spec: &SchmidtSpectrum) -> f64 {
    (0..spec.entries.len())
        .filter(|&i| spec.entries[i].count.bits() > 0)
        .map(|i| {
            let l2 = spec.lambda_sq(i);
            let w = &l2 * BigRational::from_integer(spec.entries[i].multiplicity.clone().into());
            -rational_to_f64(&w) * rational_to_f64(&l2).log2()
        })
        .sum()
}

fn chain_json(c: &MarkovChain, matrix: bool) -> Value {
    let mut v = json!({
        "states": c.len(),
        "rows_sum_to_one": c.rows_sum_to_one(),
        "reversible": c.is_reversible(),
        "stationary": c.is_stationary(),
        "min_self_loop": rat(&c.min_self_loop()),
    });
    if let Some((lo, hi)) = c.off_diagonal_range() {
        v["min_transition"] = json!(rat(&lo));
        v["max_transition"] = json!(rat(&hi));
    }
    if matrix {
        let show = |w: &[u8]| w.iter().map(|x| x.to_string()).collect::<String>();
        v["words"] = json!(c.states.iter().map(|w| show(w)).collect::<Vec<_>>());
        v["pi"] = json!(c.pi.iter().map(rat).collect::<Vec<_>>());
        v["P"] = json!(c
            .rows
            .iter()
            .map(|r| r
                .iter()
                .map(|(t, p)| json!([t, rat(p)]))
                .collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    v
}

fn count_cmd(
    cli: &Cli,
    out: &mut Output,
    family: Family,
    d: u32,
    s: u32,
    nmax: u64,
    k: u64,
) -> Res<()> {
    let name = format!("{family:?}").to_lowercase();
    let param = if family == Family::Pf { d } else { s };
    let rows = with_cache(cli, d, || {
        (0..=nmax)
            .map(|n| {
                let c = match family {
                    Family::Pf => pf_count(d, n, k),
                    Family::Catalan => catalan(n, k, s),
                    Family::Motzkin => motzkin(n, k, s)?,
                };
                Ok(vec![
                    name.clone(),
                    param.to_string(),
                    n.to_string(),
                    k.to_string(),
                    c.to_string(),
                ])
            })
            .collect::<Res<Vec<_>>>()
    })?;
    out.table(&["family", "d", "n", "k", "count"], rows, json!({}));
    Ok(())
}

fn pairs_cmd(
    cli: &Cli,
    out: &mut Output,
    d: u32,
    nmax: u64,
    ks: &[u64],
    mode: PairsMode,
) -> Res<()> {
    let limit = cli.max_dim;
    let rows = with_cache(cli, d, || {
        let mut rows = Vec::new();
        for &k in ks {
            for n in 0..=nmax {
                let (words, total, avg) = match mode {
                    PairsMode::Exact | PairsMode::Asymptotic => {
                        let p = pf_pairs(d, n, k);
                        (p.words, p.total, p.average)
                    }
                    PairsMode::Histogram | PairsMode::Bogf => {
                        let len = 2 * n as usize + k as usize;
                        let h = if mode == PairsMode::Histogram {
                            paircount::pair_histogram(d, len, k as usize, limit)?
                        } else {
                            paircount::pair_histogram_bogf(d, len, k as usize, limit)?
                        };
                        let words: BigUint = h.values().sum();
                        let total: BigUint = h.iter().map(|(p, c)| c * *p).sum();
                        (words, total, paircount::histogram_moments(&h).0)
                    }
                };
                let (estimate, residual) = if mode == PairsMode::Asymptotic && n > 0 {
                    // the expansion is in half the total length
                    let e = paircount::pf_pair_asymptotics(d, n + k / 2, k)?.avg_estimate;
                    (e.to_string(), (rational_to_f64(&avg) - e).to_string())
                } else {
                    (String::new(), String::new())
                };
                rows.push(vec![
                    n.to_string(),
                    k.to_string(),
                    words.to_string(),
                    total.to_string(),
                    avg.numer().to_string(),
                    avg.denom().to_string(),
                    estimate,
                    residual,
                ]);
            }
        }
        Ok(rows)
    })?;
    out.table(
        &[
            "n",
            "k",
            "words",
            "pairs_total",
            "pairs_avg_num",
            "pairs_avg_den",
            "estimate",
            "residual",
        ],
        rows,
        json!({"d": d, "mode": format!("{mode:?}").to_lowercase()}),
    );
    Ok(())
}

fn entropy_cmd(
    cli: &Cli,
    out: &mut Output,
    model: EntropyModel,
    d: u32,
    s: u32,
    n_sites: usize,
    mode: EntropyMode,
) -> Res<()> {
    let m = match model {
        EntropyModel::Pf => SchmidtModel::Pf { d },
        EntropyModel::Motzkin => SchmidtModel::Motzkin,
        EntropyModel::Dyck => SchmidtModel::ColoredDyck { s },
    };
    let spec = entanglement::schmidt_spectrum(m, n_sites)?;
    let rep = entanglement::entropy(&spec)?;
    let bits = match mode {
        EntropyMode::Logspace => rep.entropy_bits,
        EntropyMode::Exact => {
            if n_sites > EXACT_ENTROPY_MAX_N {
                return Err(Failure::Config(format!(
                    "exact mode is for N <= {EXACT_ENTROPY_MAX_N}; use logspace"
                )));
            }
            rational_entropy(&spec)
        }
        EntropyMode::Oracle => {
            let EntropyModel::Pf = model else {
                return Err(Failure::Config(
                    "the SVD oracle is implemented for pf only".into(),
                ));
            };
            entanglement::ground_state_entropy_oracle(d as u8, n_sites, cli.max_dim)?.entropy_bits
        }
    };
    let mut v = json!({
        "model": format!("{model:?}").to_lowercase(),
        "mode": format!("{mode:?}").to_lowercase(),
        "N": n_sites,
        "entropy_bits": bits,
        "rank": rep.rank.to_string(),
        "distinct": rep.distinct,
    });
    if model == EntropyModel::Pf && d >= 3 {
        eprintln!("entropy: comparing with the {}-colored Dyck chain", d - 1);
        let c = entanglement::entropy_comparison(d, n_sites)?;
        v["ratio"] = json!(c.ratio);
        v["bounds"] = json!({
            "dyck_bits": c.dyck_bits,
            "lower_const": c.lower_const,
            "upper_const": c.upper_const,
            "lower_slack": c.lower_slack,
            "upper_slack": c.upper_slack,
            "hold": c.lower_ok && c.upper_ok,
        });
    }
    match cli.format {
        Format::Json => out.json(v),
        Format::Csv => out.csv(
            &["N", "entropy_bits", "rank"],
            &[vec![
                n_sites.to_string(),
                bits.to_string(),
                rep.rank.to_string(),
            ]],
        ),
    }
    Ok(())
}

struct SpectrumJob<'a> {
    model: Model,
    n_sites: usize,
    subspace: Subspace,
    delta: f64,
    ends: bool,
    eigs: usize,
    fit_sizes: Option<Vec<usize>>,
    export: Option<&'a PathBuf>,
}

fn spectrum_cmd(cli: &Cli, out: &mut Output, job: SpectrumJob) -> Res<()> {
    let params = |n: usize| HamiltonianParams {
        subspace: job.subspace.clone(),
        delta: job.delta,
        with_ends: job.ends,
        limit: cli.max_dim,
        ..HamiltonianParams::new(job.model, n)
    };
    let op = spectra::build_hamiltonian(&params(job.n_sites))?;
    if let Some(path) = job.export {
        std::fs::write(path, op.export_coo())?;
    }
    let spec = spectra::low_spectrum(
        &op,
        job.eigs.clamp(1, op.dim.max(1)),
        &SolverOptions::default(),
    )?;
    let mut v = json!({
        "N": job.n_sites,
        "dim": op.dim,
        "eigenvalues": spec.values,
        "residuals": spec.residuals,
        "gap": spectra::spectral_gap(&spec.values),
        "method": format!("{:?}", spec.method).to_lowercase(),
    });
    if let Some(sizes) = &job.fit_sizes {
        let pts = par_map(cli.jobs, sizes, |&n| {
            let r = spectra::subspace_gap(&params(n));
            eprintln!("spectrum: N = {n} done");
            r
        });
        let pts = pts.into_iter().collect::<Result<Vec<_>, _>>()?;
        let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let (slope, stderr, _) = spectra::power_law_fit(&xs, &ys)?;
        v["fit"] = json!({
            "points": sizes.iter().zip(&pts).map(|(n, (dim, g))| json!({"N": n, "dim": dim, "gap": g})).collect::<Vec<_>>(),
            "slope": slope,
            "stderr": stderr,
        });
    }
    match cli.format {
        Format::Json => out.json(v),
        Format::Csv => {
            let rows: Vec<Vec<String>> = spec
                .values
                .iter()
                .zip(&spec.residuals)
                .enumerate()
                .map(|(i, (e, r))| vec![i.to_string(), e.to_string(), r.to_string()])
                .collect();
            out.csv(&["index", "eigenvalue", "residual"], &rows);
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn markov_cmd(
    cli: &Cli,
    out: &mut Output,
    chain: ChainArg,
    d: u8,
    n: usize,
    k: usize,
    bound: Option<BoundArg>,
    matrix: bool,
    export_tree: Option<&PathBuf>,
) -> Res<()> {
    let limit = cli.max_dim;
    let c = match chain {
        ChainArg::Pf => markov::pf_chain(d, n, limit)?,
        ChainArg::Pd => markov::pd_chain(d, n, limit)?,
        ChainArg::Hop => markov::hopping_chain(d, n, k, HopVariant::PfWeighted)?,
        ChainArg::Cwmh => markov::hopping_chain(d, n, k, HopVariant::Cwmh)?,
    };
    let mut v = chain_json(&c, matrix);
    v["chain"] = json!(format!("{chain:?}").to_lowercase());
    v["d"] = json!(d);
    v["n"] = json!(n);
    if c.len() > 1 {
        v["gap"] = json!(c.gap()?);
    }
    if let Some(b) = bound {
        v["bound"] = match b {
            BoundArg::Canonical => {
                if chain != ChainArg::Pd {
                    return Err(Failure::Config(
                        "canonical paths are built for the pd chain".into(),
                    ));
                }
                let tree = markov::build_supertree(d, n, limit)?;
                let st = markov::canonical_path_bound(&tree, &c)?;
                json!({"max_len": st.max_len, "rho": rat(&st.rho), "bound": rat(&st.bound), "max_step_paths": st.max_step_paths})
            }
            BoundArg::Comparison => {
                let r = markov::comparison_bound(d, n, limit)?;
                json!({"constant": rat(&r.constant), "pf_gap": r.pf_gap, "pd_gap": r.pd_gap, "holds": r.holds, "moves_checked": r.moves_checked})
            }
            BoundArg::Dirichlet => {
                if !matches!(chain, ChainArg::Hop | ChainArg::Cwmh) {
                    return Err(Failure::Config(
                        "the Dirichlet sandwich compares the hopping chains".into(),
                    ));
                }
                let r = markov::dirichlet_sandwich(d, n, k)?;
                let s = markov::hopping_ratio_sandwich(d, n, k)?;
                json!({
                    "pfh_gap": r.pfh_gap, "cwmh_gap": r.cwmh_gap, "lower": r.lower, "holds": r.holds && s.holds,
                    "c": rat(&s.c), "min_ratio": rat(&s.min_ratio), "max_ratio": rat(&s.max_ratio),
                })
            }
        };
    }
    if let Some(path) = export_tree {
        let levels = if matches!(chain, ChainArg::Pf | ChainArg::Pd) {
            n
        } else {
            3
        };
        std::fs::write(
            path,
            markov::build_supertree(d, levels, limit)?.export_parent_list(),
        )?;
    }
    out.json(v);
    Ok(())
}

fn repro_cmd(cli: &Cli, out: &mut Output, suite: &str, claims: &[u8]) -> Res<()> {
    if suite != "paper" {
        return Err(Failure::Config(format!("unknown suite {suite:?}")));
    }
    let ids: Vec<u8> = if claims.is_empty() {
        (1..=repro::CLAIM_COUNT).collect()
    } else {
        claims.to_vec()
    };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > repro::CLAIM_COUNT) {
        return Err(Failure::Config(format!("no claim {bad}")));
    }
    let report = repro::run_suite(&ids);
    for r in &report.results {
        eprintln!("{}", r.line());
    }
    let header = [
        "claim",
        "title",
        "expected",
        "computed",
        "tolerance",
        "pass",
        "seconds",
    ];
    let rows: Vec<Vec<String>> = report
        .results
        .iter()
        .map(|r| {
            vec![
                r.id.to_string(),
                r.title.into(),
                r.expected.clone(),
                r.computed.clone(),
                r.tolerance.clone(),
                r.pass.to_string(),
                format!("{:.3}", r.seconds),
            ]
        })
        .collect();
    match cli.format {
        Format::Csv => {
            let quoted: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| format!("\"{}\"", x.replace('"', "'")))
                        .collect()
                })
                .collect();
            out.csv(&header, &quoted);
        }
        Format::Json => out.table(
            &header,
            rows,
            json!({"suite": suite, "all_pass": report.all_pass()}),
        ),
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Assertion("reproduction checks failed".into()))
    }
}

type Series = (Vec<&'static str>, Vec<Vec<String>>, String);

#[allow(clippy::too_many_arguments)]
fn plot_cmd(
    cli: &Cli,
    out: &mut Output,
    kind: PlotKind,
    d: u32,
    nmax: u64,
    kmax: u64,
    n_sites: usize,
    k: usize,
) -> Res<()> {
    let (header, rows, note): Series = match kind {
        PlotKind::PairGap => with_cache(cli, d, || {
            let phi = paircount::pf_pairs_table(d, nmax);
            let mut rows = Vec::new();
            for n in 1..=nmax {
                for kk in (2..=kmax.min(n)).step_by(2) {
                    let g = paircount::rescaled_subspace_gap(d, n, kk, &phi)?;
                    rows.push(vec![
                        n.to_string(),
                        kk.to_string(),
                        g.to_string(),
                        (kk <= 8).to_string(),
                    ]);
                }
                if n % 100 == 0 {
                    eprintln!("plot-data: n = {n}");
                }
            }
            Ok((
                vec!["n", "k", "rescaled_gap", "certified"],
                rows,
                "certified regime: k <= 8".to_string(),
            ))
        })?,
        PlotKind::EntropyScaling => {
            let sizes: Vec<usize> = std::iter::successors(Some(4usize), |m| Some(m * 2))
                .take_while(|&m| m <= n_sites)
                .collect();
            let reps = par_map(cli.jobs, &sizes, |&m| {
                entanglement::schmidt_spectrum(SchmidtModel::Pf { d }, m)
                    .and_then(|s| entanglement::entropy(&s))
            });
            let mut rows = Vec::new();
            for (m, r) in sizes.iter().zip(reps) {
                rows.push(vec![
                    m.to_string(),
                    (*m as f64).log2().to_string(),
                    r?.entropy_bits.to_string(),
                ]);
            }
            (
                vec!["N", "log2_N", "entropy_bits"],
                rows,
                format!("d = {d}"),
            )
        }
        PlotKind::GapFit => {
            let sizes: Vec<usize> = (4..=n_sites).step_by(2).collect();
            let model = Model::Pf { d: d as u8 };
            let limit = cli.max_dim;
            let pts = par_map(cli.jobs, &sizes, |&n| {
                spectra::subspace_gap(&HamiltonianParams {
                    limit,
                    ..HamiltonianParams::new(model, n)
                })
            });
            let pts = pts.into_iter().collect::<Result<Vec<_>, _>>()?;
            let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
            let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
            let (slope, stderr, _) = spectra::power_law_fit(&xs, &ys)?;
            let rows = sizes
                .iter()
                .zip(&pts)
                .map(|(n, (dim, g))| vec![n.to_string(), dim.to_string(), g.to_string()])
                .collect();
            (
                vec!["N", "dim", "gap"],
                rows,
                format!("slope {slope:.4} +- {stderr:.4}"),
            )
        }
        PlotKind::Histogram => {
            let h = paircount::pair_histogram_bogf(d, n_sites, k, cli.max_dim)?;
            let rows = h
                .iter()
                .map(|(p, c)| vec![p.to_string(), c.to_string()])
                .collect();
            (
                vec!["pairs", "words"],
                rows,
                format!("d = {d}, N = {n_sites}, k = {k}"),
            )
        }
    };
    out.text.push_str(&format!("# {note}\n"));
    out.csv(&header, &rows);
    Ok(())
}

fn spectrum_job<'a>(cmd: &'a Cmd) -> Res<SpectrumJob<'a>> {
    let Cmd::Spectrum {
        model,
        d,
        s,
        n_sites,
        k,
        label,
        full,
        delta,
        ends,
        eigs,
        fit,
        fit_min,
        export,
    } = cmd
    else {
        unreachable!()
    };
    let m = match model {
        HamModel::Pf => Model::Pf { d: *d },
        HamModel::Motzkin => Model::Motzkin,
        HamModel::Fredkin => Model::Fredkin { s: *s },
    };
    let subspace = if *full {
        Subspace::Full
    } else if let Some(k) = k {
        if *model != HamModel::Pf {
            return Err(Failure::Config(
                "--k applies to the pf model; use --label".into(),
            ));
        }
        Subspace::Reduced(IrreducibleString::canonical(*d, *k).letters().to_vec())
    } else {
        let (lo, hi) = m.letters();
        let letters = label
            .as_deref()
            .unwrap_or("")
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|x| x as u8)
                    .filter(|x| (lo..=hi).contains(x))
                    .ok_or_else(|| Failure::Config(format!("bad label letter {c:?}")))
            })
            .collect::<Res<Vec<u8>>>()?;
        Subspace::Reduced(letters)
    };
    let extra = match &subspace {
        Subspace::Reduced(l) => l.len(),
        _ => 0,
    };
    // Motzkin paths take every length; the other models need N - k even
    let step = if *model == HamModel::Motzkin { 1 } else { 2 };
    let fit_sizes = fit.then(|| {
        let mut lo = fit_min.unwrap_or(extra + 2).max(2);
        if step == 2 && (n_sites.saturating_sub(lo)) % 2 == 1 {
            lo += 1;
        }
        (lo..=*n_sites).step_by(step).collect::<Vec<_>>()
    });
    Ok(SpectrumJob {
        model: m,
        n_sites: *n_sites,
        subspace,
        delta: *delta,
        ends: *ends,
        eigs: *eigs,
        fit_sizes,
        export: export.as_ref(),
    })
}

fn run(cli: &Cli, out: &mut Output) -> Res<()> {
    if cli.precision_bits < 64 {
        return Err(Failure::Config(
            "--precision-bits must be at least 64".into(),
        ));
    }
    if cli.jobs == 0 {
        return Err(Failure::Config("--jobs must be at least 1".into()));
    }
    if cli.max_dim > MAX_DIM_CAP {
        return Err(Failure::Config(format!(
            "--max-dim is capped at {MAX_DIM_CAP}"
        )));
    }
    match &cli.cmd {
        Cmd::Count {
            family,
            d,
            s,
            nmax,
            k,
        } => count_cmd(cli, out, *family, *d, *s, *nmax, *k),
        Cmd::Pairs {
            d,
            nmax,
            k_list,
            mode,
        } => pairs_cmd(cli, out, *d, *nmax, k_list, *mode),
        Cmd::Entropy {
            model,
            d,
            s,
            n_sites,
            mode,
        } => entropy_cmd(cli, out, *model, *d, *s, *n_sites, *mode),
        Cmd::Spectrum { .. } => spectrum_cmd(cli, out, spectrum_job(&cli.cmd)?),
        Cmd::Markov {
            chain,
            d,
            n,
            k,
            bound,
            matrix,
            export_tree,
        } => markov_cmd(
            cli,
            out,
            *chain,
            *d,
            *n,
            *k,
            *bound,
            *matrix,
            export_tree.as_ref(),
        ),
        Cmd::Repro { suite, claims } => repro_cmd(cli, out, suite, claims),
        Cmd::PlotData {
            kind,
            d,
            nmax,
            kmax,
            n_sites,
            k,
        } => plot_cmd(cli, out, *kind, *d, *nmax, *kmax, *n_sites, *k),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = Output {
        format: cli.format,
        hash: config_hash(&args),
        text: String::new(),
    };
    match run(&cli, &mut out) {
        Ok(()) => {
            print!("{}", out.text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", out.text);
            let (code, msg) = match f {
                Failure::Assertion(m) => (1, m),
                Failure::Config(m) => (2, m),
                Failure::Resource(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
