//! Experiment dispatch: parameter schemas, seeded work-item construction,
//! and the per-item library calls behind each experiment name.
//!
//! Every experiment follows the same shape. The configuration file names the
//! experiment and its parameters; the schema check rejects unknown keys and
//! record kinds the experiment cannot consume; then either the file's
//! explicit point records form a single work item, or `sets` (or `configs`,
//! `functions`) seeded items are generated, each from its own
//! `item_seed(master, index)` stream. Items run in parallel and their
//! reports are collected in index order, so output is a pure function of
//! the configuration and the master seed.

use std::collections::BTreeSet;

use anyhow::{anyhow, bail, ensure, Context, Result};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use geomlab::config::{furst_from_config, ConfigFile};
use geomlab::euclid::{
    beck_report, bound_report_cs_st, dot_scaling_check, dual_furst_verify, dualize, dualize_line,
    erdos_beck_report, exceptional_directions, furst_verify, grid_example, lattice_report,
    max_collinear, ordinary_lines, pinned_radial_report, radial_containment_check,
    sharpness_ratio_sq, ungar_report, RatLine, RatPoint,
};
use geomlab::ff::{
    dft, enumerate_flats, example_fullgrid, example_subfield, falconer_ff_report,
    flat_spectrum_expected, inverse_dft, radial_bound_report, FfError, FieldSpec, FpFunction,
    FpVec,
};
use geomlab::report::{decimal, BoundReport, Tier};
use geomlab::rng::{item_seed, Rng};

use crate::corpus;

/// Runtime knobs shared by every experiment.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    /// Master seed; item `i` draws from `item_seed(seed, i)`.
    pub seed: u64,
    /// Enumeration ceiling passed through to every sweep.
    pub cap: u64,
    /// Worker threads; `None` uses the default pool.
    pub jobs: Option<usize>,
}

/// The experiment registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    FfFalconer,
    FfRadial,
    FfFourierIdentities,
    EuclidIncidence,
    ExceptionalDirections,
    Beck,
    ErdosBeck,
    PinnedRadial,
    Furstenberg,
    DualFurstenberg,
    Distances,
    DotProducts,
    NamedExample,
}

impl Experiment {
    pub const ALL: [Experiment; 13] = [
        Experiment::FfFalconer,
        Experiment::FfRadial,
        Experiment::FfFourierIdentities,
        Experiment::EuclidIncidence,
        Experiment::ExceptionalDirections,
        Experiment::Beck,
        Experiment::ErdosBeck,
        Experiment::PinnedRadial,
        Experiment::Furstenberg,
        Experiment::DualFurstenberg,
        Experiment::Distances,
        Experiment::DotProducts,
        Experiment::NamedExample,
    ];

    pub fn parse(name: &str) -> Option<Experiment> {
        Experiment::ALL.into_iter().find(|e| e.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Experiment::FfFalconer => "ff_falconer",
            Experiment::FfRadial => "ff_radial",
            Experiment::FfFourierIdentities => "ff_fourier_identities",
            Experiment::EuclidIncidence => "euclid_incidence",
            Experiment::ExceptionalDirections => "exceptional_directions",
            Experiment::Beck => "beck",
            Experiment::ErdosBeck => "erdos_beck",
            Experiment::PinnedRadial => "pinned_radial",
            Experiment::Furstenberg => "furstenberg",
            Experiment::DualFurstenberg => "dual_furstenberg",
            Experiment::Distances => "distances",
            Experiment::DotProducts => "dot_products",
            Experiment::NamedExample => "named_example",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Experiment::FfFalconer => {
                "orthogonal-projection exceptional sets over F_p^n against the 2p^(k(n-k))s/|X| bound"
            }
            Experiment::FfRadial => {
                "radial-projection exceptional pins over F_p^n against the 8n and 12-constant bounds"
            }
            Experiment::FfFourierIdentities => {
                "Plancherel, inversion, translation covariance, and flat spectra within the scaled tolerance"
            }
            Experiment::EuclidIncidence => {
                "Cauchy-Schwarz and Szemeredi-Trotter incidence bounds on seeded planar configurations"
            }
            Experiment::ExceptionalDirections => {
                "direction-set sweeps: exceptional thresholds, ordinary lines, and the Ungar bound"
            }
            Experiment::Beck => "the Beck dichotomy at a configurable constant over mixed corpora",
            Experiment::ErdosBeck => "the Erdos-Beck connecting-line bound on line-plus-noise sets",
            Experiment::PinnedRadial => {
                "pinned radial direction bounds and the exceptional-pin containment check"
            }
            Experiment::Furstenberg => {
                "Furstenberg (s, t) lower bounds on the sharpness grid or an explicit configuration"
            }
            Experiment::DualFurstenberg => {
                "the dual line-count bound on the dualized configuration, with the triple-count oracle"
            }
            Experiment::Distances => "distinct squared distances of [0, p]^n against np^2 + 1",
            Experiment::DotProducts => "dot-product set invariance under nonzero scaling",
            Experiment::NamedExample => "the pinned fullgrid and subfield counterexample reports",
        }
    }
}

/// Which record kinds an experiment consumes as explicit input.
struct RecordPolicy {
    points: bool,
    lines: bool,
    ff_points: bool,
}

const NO_RECORDS: RecordPolicy = RecordPolicy { points: false, lines: false, ff_points: false };
const POINT_RECORDS: RecordPolicy = RecordPolicy { points: true, lines: false, ff_points: false };
const PLANAR_RECORDS: RecordPolicy = RecordPolicy { points: true, lines: true, ff_points: false };
const FF_RECORDS: RecordPolicy = RecordPolicy { points: false, lines: false, ff_points: true };

fn schema(experiment: Experiment) -> (&'static [&'static str], RecordPolicy) {
    match experiment {
        Experiment::FfFalconer => {
            (&["p", "n", "k", "sets", "set_size", "min_size", "max_size"], FF_RECORDS)
        }
        Experiment::FfRadial => {
            (&["p", "n", "sets", "set_size", "min_size", "max_size"], FF_RECORDS)
        }
        Experiment::FfFourierIdentities => (&["p", "n", "functions"], NO_RECORDS),
        Experiment::EuclidIncidence => {
            (&["configs", "max_points", "max_lines", "range"], PLANAR_RECORDS)
        }
        Experiment::ExceptionalDirections => {
            (&["sets", "set_size", "min_size", "max_size", "range", "s"], POINT_RECORDS)
        }
        Experiment::Beck => {
            (&["sets", "set_size", "min_size", "max_size", "range", "constant", "corpus"], POINT_RECORDS)
        }
        Experiment::ErdosBeck => {
            (&["sets", "set_size", "min_size", "max_size", "range"], POINT_RECORDS)
        }
        Experiment::PinnedRadial => {
            (&["sets", "set_size", "min_size", "max_size", "pins", "range"], NO_RECORDS)
        }
        Experiment::Furstenberg | Experiment::DualFurstenberg => (&["s", "t"], PLANAR_RECORDS),
        Experiment::Distances => (&["p", "p_min", "p_max", "n"], NO_RECORDS),
        Experiment::DotProducts => {
            (&["sets", "n", "set_size", "min_size", "max_size", "range"], NO_RECORDS)
        }
        Experiment::NamedExample => (&["name", "p"], NO_RECORDS),
    }
}

const COMMON_KEYS: [&str; 3] = ["experiment", "seed", "output"];

/// Number of blocking-tier reports whose bound failed. This count becomes
/// the binary's exit signal; tracked-tier ratios never contribute.
pub fn blocking_violations(reports: &[BoundReport]) -> u64 {
    reports.iter().filter(|r| r.tier == Tier::Blocking && !r.holds).count() as u64
}

/// Run the experiment named by `file` and return its reports in a
/// deterministic order.
pub fn run_experiment(file: &ConfigFile, settings: &Settings) -> Result<Vec<BoundReport>> {
    let name = file.require("experiment")?;
    let experiment = Experiment::parse(name).ok_or_else(|| {
        anyhow!("key `experiment`: unknown experiment `{name}`; see `lab list-experiments`")
    })?;
    check_schema(file, experiment)?;
    let params = Params { file, experiment };
    with_pool(settings.jobs, || match experiment {
        Experiment::FfFalconer => run_ff_falconer(&params, settings),
        Experiment::FfRadial => run_ff_radial(&params, settings),
        Experiment::FfFourierIdentities => run_fourier_identities(&params, settings),
        Experiment::EuclidIncidence => run_euclid_incidence(&params, settings),
        Experiment::ExceptionalDirections => run_exceptional_directions(&params, settings),
        Experiment::Beck => run_beck(&params, settings),
        Experiment::ErdosBeck => run_erdos_beck(&params, settings),
        Experiment::PinnedRadial => run_pinned_radial(&params, settings),
        Experiment::Furstenberg => run_furstenberg(&params),
        Experiment::DualFurstenberg => run_dual_furstenberg(&params),
        Experiment::Distances => run_distances(&params, settings),
        Experiment::DotProducts => run_dot_products(&params, settings),
        Experiment::NamedExample => run_named_example(&params, settings),
    })
}

fn check_schema(file: &ConfigFile, experiment: Experiment) -> Result<()> {
    let (allowed, records) = schema(experiment);
    for (key, _) in file.pairs() {
        if !allowed.contains(&key) && !COMMON_KEYS.contains(&key) {
            bail!(
                "{}: unknown key `{key}` (accepted: {})",
                experiment.name(),
                allowed.join(", ")
            );
        }
    }
    if !records.points && !file.points().is_empty() {
        bail!("{}: point records are not accepted by this experiment", experiment.name());
    }
    if !records.lines && !file.lines().is_empty() {
        bail!("{}: line records are not accepted by this experiment", experiment.name());
    }
    if !records.ff_points && !file.ff_points().is_empty() {
        bail!("{}: ffpoint records are not accepted by this experiment", experiment.name());
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => work(),
        Some(threads) => {
            ensure!(threads >= 1, "--jobs needs at least one thread");
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .context("building the worker pool")?;
            pool.install(work)
        }
    }
}

struct Params<'a> {
    file: &'a ConfigFile,
    experiment: Experiment,
}

impl Params<'_> {
    fn u64(&self, key: &'static str) -> Result<u64> {
        self.file.require_u64(key).with_context(|| format!("{}.{key}", self.experiment.name()))
    }

    fn opt_u64(&self, key: &'static str) -> Result<Option<u64>> {
        self.file.get_u64(key).with_context(|| format!("{}.{key}", self.experiment.name()))
    }

    fn u64_or(&self, key: &'static str, default: u64) -> Result<u64> {
        Ok(self.opt_u64(key)?.unwrap_or(default))
    }

    fn usize(&self, key: &'static str) -> Result<usize> {
        Ok(self.u64(key)? as usize)
    }

    fn range(&self) -> Result<i64> {
        let range = self.u64_or("range", 12)?;
        ensure!(
            (1..=1_000_000).contains(&range),
            "{}.range: must lie in 1..=1000000, got {range}",
            self.experiment.name()
        );
        Ok(range as i64)
    }

    /// Per-item set sizes: `set_size` pins both ends, otherwise `min_size`
    /// and `max_size` give an inclusive range.
    fn sizes(&self, default: Option<(u64, u64)>, floor: u64) -> Result<(u64, u64)> {
        let pair = match (self.opt_u64("set_size")?, self.opt_u64("min_size")?, self.opt_u64("max_size")?) {
            (Some(v), None, None) => (v, v),
            (None, Some(lo), Some(hi)) => (lo, hi),
            (None, None, None) => default.ok_or_else(|| {
                anyhow!("{}: set sizes are required (set_size, or min_size and max_size)", self.experiment.name())
            })?,
            _ => bail!(
                "{}: give either set_size or both min_size and max_size",
                self.experiment.name()
            ),
        };
        ensure!(
            pair.0 >= floor,
            "{}: set sizes must be at least {floor}, got {}",
            self.experiment.name(),
            pair.0
        );
        ensure!(
            pair.0 <= pair.1,
            "{}: min_size {} exceeds max_size {}",
            self.experiment.name(),
            pair.0,
            pair.1
        );
        Ok(pair)
    }
}

fn draw_size(rng: &mut Rng, lo: u64, hi: u64) -> u64 {
    if lo == hi {
        lo
    } else {
        lo + rng.below(hi - lo + 1)
    }
}

fn tag(reports: Vec<BoundReport>, item: u64) -> Vec<BoundReport> {
    reports.into_iter().map(|r| r.with_param("item", item)).collect()
}

fn par_items(
    count: u64,
    item: impl Fn(u64) -> Result<Vec<BoundReport>> + Send + Sync,
) -> Result<Vec<BoundReport>> {
    let nested: Vec<Vec<BoundReport>> = (0..count).into_par_iter().map(item).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn ff_records(file: &ConfigFile, field: FieldSpec, n: usize) -> Result<Vec<FpVec>> {
    file.ff_points()
        .iter()
        .map(|coords| {
            ensure!(
                coords.len() == n,
                "ffpoint record has {} residues, the ambient dimension is {n}",
                coords.len()
            );
            FpVec::new(field, coords.clone()).context("ffpoint record")
        })
        .collect()
}

fn run_ff_falconer(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let p = params.u64("p")?;
    let n = params.usize("n")?;
    let k = params.usize("k")?;
    let field = FieldSpec::prime(p).context("key `p`")?;
    if !params.file.ff_points().is_empty() {
        let xs = ff_records(params.file, field, n)?;
        return Ok(falconer_ff_report(&xs, k, settings.cap)?);
    }
    let sets = params.u64("sets")?;
    let (lo, hi) = params.sizes(None, 1)?;
    let ambient = corpus::ambient_size(field, n, settings.cap)?;
    par_items(sets, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let size = draw_size(&mut rng, lo, hi).min(ambient);
        let xs = corpus::random_fp_points(&mut rng, field, n, size, settings.cap)?;
        Ok(tag(falconer_ff_report(&xs, k, settings.cap)?, i))
    })
}

fn run_ff_radial(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let p = params.u64("p")?;
    let n = params.usize("n")?;
    let field = FieldSpec::prime(p).context("key `p`")?;
    if !params.file.ff_points().is_empty() {
        let ys = ff_records(params.file, field, n)?;
        return Ok(radial_bound_report(field, n, &ys, settings.cap)?);
    }
    let sets = params.u64("sets")?;
    let (lo, hi) = params.sizes(None, 1)?;
    let ambient = corpus::ambient_size(field, n, settings.cap)?;
    par_items(sets, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let size = draw_size(&mut rng, lo, hi).min(ambient);
        let ys = corpus::random_fp_points(&mut rng, field, n, size, settings.cap)?;
        Ok(tag(radial_bound_report(field, n, &ys, settings.cap)?, i))
    })
}

/// A report that counts identity violations against zero: `lhs` is 1 when
/// the observed error exceeded the tolerance.
fn identity_report(bound_id: &str, anchor: &str, error: f64, tolerance: f64) -> BoundReport {
    BoundReport::exact(
        bound_id,
        anchor,
        u64::from(!(error <= tolerance)),
        BigRational::zero(),
        Tier::Blocking,
    )
    .with_param("max_error", format!("{error:.3e}"))
    .with_param("tolerance", format!("{tolerance:.3e}"))
}

fn random_function(rng: &mut Rng, field: FieldSpec, n: usize) -> FpFunction {
    let len = (field.q() as u128).pow(n as u32) as usize;
    let values = (0..len)
        .map(|_| {
            let re = rng.below(2_000) as f64 / 1_000.0 - 1.0;
            let im = rng.below(2_000) as f64 / 1_000.0 - 1.0;
            Complex64::new(re, im)
        })
        .collect();
    FpFunction::new(field, n, values).expect("value count matches the domain")
}

fn fourier_item(field: FieldSpec, n: usize, cap: u64, master: u64, item: u64) -> Result<Vec<BoundReport>> {
    let mut rng = Rng::new(item_seed(master, item));
    let f = random_function(&mut rng, field, n);
    let shift =
        FpVec::new(field, (0..n).map(|_| rng.below(field.q())).collect()).expect("canonical residues");
    let tau = f.tolerance();
    let spectrum = dft(&f, cap)?;

    let scale = f.values().len() as f64;
    let plancherel = identity_report(
        "fourier_plancherel",
        "Plancherel identity",
        (f.energy() - spectrum.energy() / scale).abs(),
        tau,
    );

    let back = inverse_dft(&spectrum, cap)?;
    let inversion =
        identity_report("fourier_inversion", "Fourier inversion", back.max_distance(&f)?, tau);

    let translated = dft(&f.translate(&shift)?, cap)?;
    let p = field.p();
    let mut worst = 0.0f64;
    for (index, value) in translated.values().iter().enumerate() {
        let xi = FpVec::from_index(field, n, index as u64);
        let dot = shift.dot(&xi)?;
        let phase =
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * dot as f64 / p as f64);
        worst = worst.max((value - spectrum.values()[index] * phase).norm());
    }
    let translation =
        identity_report("fourier_translation", "translation covariance of the transform", worst, tau);

    Ok(tag(vec![plancherel, inversion, translation], item))
}

fn run_fourier_identities(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let p = params.u64("p")?;
    let n = params.usize("n")?;
    let field = FieldSpec::prime(p).context("key `p`")?;
    let functions = params.u64("functions")?;
    corpus::ambient_size(field, n, settings.cap)?;

    let mut reports =
        par_items(functions, |i| fourier_item(field, n, settings.cap, settings.seed, i))?;

    for k in 1..n {
        let flats = match enumerate_flats(field, n, k, settings.cap) {
            Ok(flats) => flats,
            Err(FfError::SizeLimit { needed, cap }) => {
                reports.push(
                    BoundReport::exact(
                        "fourier_flat_spectrum",
                        "closed-form flat spectrum",
                        0,
                        BigRational::zero(),
                        Tier::Tracked,
                    )
                    .with_param("skipped", "precondition unmet")
                    .with_param("reason", format!("enumerating {needed} flats exceeds the cap {cap}"))
                    .with_param("k", k),
                );
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        for (index, flat) in flats.iter().enumerate() {
            let indicator = FpFunction::indicator(field, n, &flat.points(settings.cap)?)?;
            let expected = flat_spectrum_expected(flat, settings.cap)?;
            let spectrum = dft(&indicator, settings.cap)?;
            reports.push(
                identity_report(
                    "fourier_flat_spectrum",
                    "closed-form flat spectrum",
                    spectrum.max_distance(&expected)?,
                    expected.tolerance(),
                )
                .with_param("k", k)
                .with_param("flat", index),
            );
        }
    }
    Ok(reports)
}

fn random_lines(rng: &mut Rng, count: u64, range: i64) -> Vec<RatLine> {
    let mut lines = BTreeSet::new();
    let mut attempts: u64 = 0;
    while (lines.len() as u64) < count && attempts < 100 * (count + 1) {
        attempts += 1;
        let a = [rng.range_i64(-range, range), rng.range_i64(-range, range)];
        let b = [rng.range_i64(-range, range), rng.range_i64(-range, range)];
        if a == b {
            continue;
        }
        let p = RatPoint::from_integers(&a).expect("two coordinates");
        let q = RatPoint::from_integers(&b).expect("two coordinates");
        lines.insert(RatLine::through(&p, &q).expect("distinct points"));
    }
    lines.into_iter().collect()
}

fn run_euclid_incidence(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    if !params.file.points().is_empty() || !params.file.lines().is_empty() {
        let (cs, st) = bound_report_cs_st(params.file.points(), params.file.lines())?;
        return Ok(vec![cs, st]);
    }
    let configs = params.u64("configs")?;
    let max_points = params.u64_or("max_points", 40)?;
    let max_lines = params.u64_or("max_lines", 40)?;
    ensure!(max_points >= 1 && max_lines >= 1, "euclid_incidence: size ceilings must be positive");
    let range = params.range()?;
    let capacity = ((2 * range as u128 + 1).pow(2)).min(u64::MAX as u128) as u64;
    par_items(configs, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let np = (1 + rng.below(max_points)).min(capacity);
        let nl = 1 + rng.below(max_lines);
        let points = corpus::random_lattice_points(&mut rng, 2, np, range)?;
        let lines = random_lines(&mut rng, nl, range);
        let (cs, st) = bound_report_cs_st(&points, &lines)?;
        Ok(tag(vec![cs, st], i))
    })
}

fn direction_set_reports(xs: &[RatPoint], s: Option<u64>) -> Result<Vec<BoundReport>> {
    let distinct: BTreeSet<&RatPoint> = xs.iter().collect();
    let m = distinct.len() as u64;
    let threshold = s.unwrap_or_else(|| m.isqrt().max(1));
    let (_, [product, cs, st]) = exceptional_directions(xs, threshold)?;
    let ungar = ungar_report(xs)?;
    let ordinary = ordinary_lines(xs)?;
    let sylvester = BoundReport::exact(
        "sylvester_gallai",
        "ordinary line existence",
        1,
        BigRational::from_integer((ordinary.lines.len() as u64).into()),
        Tier::Blocking,
    )
    .with_param("set_size", m)
    .with_param("ordinary_lines", ordinary.lines.len());
    Ok(vec![product, cs, st, ungar, sylvester])
}

fn run_exceptional_directions(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let s = params.opt_u64("s")?;
    if !params.file.points().is_empty() {
        let xs = params.file.points();
        ensure!(
            noncollinear(xs),
            "exceptional_directions: records must form a noncollinear set of at least 3 points"
        );
        return direction_set_reports(xs, s);
    }
    let sets = params.u64("sets")?;
    let (lo, hi) = params.sizes(None, 3)?;
    let range = params.range()?;
    par_items(sets, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let size = draw_size(&mut rng, lo, hi);
        let xs = corpus::random_noncollinear_points(&mut rng, size, range)?;
        Ok(tag(direction_set_reports(&xs, s)?, i))
    })
}

fn noncollinear(xs: &[RatPoint]) -> bool {
    let distinct: BTreeSet<&RatPoint> = xs.iter().collect();
    let distinct: Vec<&RatPoint> = distinct.into_iter().collect();
    if distinct.len() < 3 {
        return false;
    }
    let witness = RatLine::through(distinct[0], distinct[1]).expect("distinct points");
    !distinct.iter().all(|x| witness.contains(x))
}

fn beck_corpus_item(rng: &mut Rng, kind: &str, size: u64, range: i64) -> Result<Vec<RatPoint>> {
    match kind {
        "random" => corpus::random_lattice_points(rng, 2, size, range),
        "collinear" => {
            let on = 2 + rng.below(size - 1);
            corpus::line_plus_noise_points(rng, size, on, range)
        }
        "grid" => {
            let rows = size.isqrt().max(2);
            corpus::grid_points(rows, size.div_ceil(rows))
        }
        other => bail!("key `corpus`: unknown corpus kind `{other}` (random, collinear, grid, mixed)"),
    }
}

fn run_beck(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let constant = params.u64_or("constant", 64)?;
    ensure!(constant >= 1, "beck.constant: must be at least 1, got {constant}");
    let c = BigRational::from_integer(constant.into());
    if !params.file.points().is_empty() {
        let (report, diagnostics) = beck_report(params.file.points(), &c)?;
        return Ok(vec![report.with_param("diagnostics", diagnostics.to_json())]);
    }
    let sets = params.u64("sets")?;
    let (lo, hi) = params.sizes(None, 3)?;
    let range = params.range()?;
    let corpus_kind = params.file.get("corpus").unwrap_or("mixed");
    ensure!(
        matches!(corpus_kind, "random" | "collinear" | "grid" | "mixed"),
        "key `corpus`: unknown corpus kind `{corpus_kind}` (random, collinear, grid, mixed)"
    );
    par_items(sets, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let kind = if corpus_kind == "mixed" {
            ["random", "collinear", "grid"][rng.index(3)]
        } else {
            corpus_kind
        };
        let size = draw_size(&mut rng, lo, hi);
        let xs = beck_corpus_item(&mut rng, kind, size, range)?;
        let (report, diagnostics) = beck_report(&xs, &c)?;
        Ok(tag(
            vec![report
                .with_param("corpus", kind)
                .with_param("diagnostics", diagnostics.to_json())],
            i,
        ))
    })
}

fn run_erdos_beck(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    if !params.file.points().is_empty() {
        return Ok(vec![erdos_beck_report(params.file.points())?]);
    }
    let sets = params.u64("sets")?;
    let (lo, hi) = params.sizes(None, 3)?;
    let range = params.range()?;
    par_items(sets, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let size = draw_size(&mut rng, lo, hi);
        let on = 2 + rng.below(size - 1);
        let xs = corpus::line_plus_noise_points(&mut rng, size, on, range)?;
        Ok(tag(vec![erdos_beck_report(&xs)?], i))
    })
}

fn run_pinned_radial(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let sets = params.u64("sets")?;
    let (lo, hi) = params.sizes(None, 3)?;
    let pins = params.u64_or("pins", 4)?;
    ensure!(pins >= 3, "pinned_radial.pins: a noncollinear pin set needs at least 3, got {pins}");
    let range = params.range()?;
    par_items(sets, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let xs = corpus::random_noncollinear_points(&mut rng, pins, range)?;
        let size = draw_size(&mut rng, lo, hi);
        let ys = corpus::random_noncollinear_points(&mut rng, size, range)?;
        let [product, cs, st] = pinned_radial_report(&xs, &ys)?;
        let s_cap = ys.len() as u64 - max_collinear(&ys)?;
        let containment = radial_containment_check(&ys, s_cap.min(2))?;
        Ok(tag(vec![product, cs, st, containment], i))
    })
}

fn furst_input(params: &Params) -> Result<geomlab::euclid::FurstConfig> {
    if params.file.points().is_empty() && params.file.lines().is_empty() {
        let s = params.u64("s")?;
        let t = params.u64("t")?;
        Ok(grid_example(s, t)?)
    } else {
        Ok(furst_from_config(params.file)?)
    }
}

fn run_furstenberg(params: &Params) -> Result<Vec<BoundReport>> {
    let cfg = furst_input(params)?;
    let [exact, cs2, st] = furst_verify(&cfg)?;
    let st = st.with_param("sharpness_sq", decimal(&sharpness_ratio_sq(&cfg), 6));
    Ok(vec![exact, cs2, st])
}

fn run_dual_furstenberg(params: &Params) -> Result<Vec<BoundReport>> {
    let cfg = furst_input(params)?;
    cfg.validate_primal()?;
    let lines = cfg.points.iter().map(dualize).collect::<Result<Vec<_>, _>>()?;
    let pins = cfg.lines.iter().map(dualize_line).collect::<Result<Vec<_>, _>>().context(
        "dualizing the line family (vertical lines have no dual point in the slope chart)",
    )?;
    let (report, _) = dual_furst_verify(&lines, &pins, cfg.s, cfg.t)?;
    Ok(vec![report])
}

fn run_distances(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let n = params.usize("n")?;
    let (p_min, p_max) = match params.opt_u64("p")? {
        Some(p) => {
            ensure!(
                params.opt_u64("p_min")?.is_none() && params.opt_u64("p_max")?.is_none(),
                "distances: give either p or the p_min/p_max pair, not both"
            );
            (p, p)
        }
        None => (params.u64("p_min")?, params.u64("p_max")?),
    };
    ensure!(p_min <= p_max, "distances: p_min {p_min} exceeds p_max {p_max}");
    let sides: Vec<u64> = (p_min..=p_max).collect();
    let nested: Vec<BoundReport> = sides
        .into_par_iter()
        .map(|p| Ok(lattice_report(p, n, settings.cap)?))
        .collect::<Result<_>>()?;
    Ok(nested)
}

fn run_dot_products(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let sets = params.u64("sets")?;
    let n = params.u64_or("n", 2)? as usize;
    ensure!(n >= 2, "dot_products.n: dimension must be at least 2, got {n}");
    let (lo, hi) = params.sizes(Some((1, 8)), 1)?;
    let range = params.range()?;
    par_items(sets, |i| {
        let mut rng = Rng::new(item_seed(settings.seed, i));
        let a = loop {
            let coords: Vec<i64> = (0..n).map(|_| rng.range_i64(-range, range)).collect();
            if coords.iter().any(|&c| c != 0) {
                break RatPoint::from_integers(&coords).expect("n >= 2");
            }
        };
        let numerator = loop {
            let v = rng.range_i64(-8, 8);
            if v != 0 {
                break v;
            }
        };
        let scale = BigRational::new(numerator.into(), (1 + rng.below(8) as i64).into());
        let size = draw_size(&mut rng, lo, hi);
        let ys = corpus::random_lattice_points(&mut rng, n, size, range)?;
        Ok(tag(vec![dot_scaling_check(&a, &scale, &ys)?], i))
    })
}

fn run_named_example(params: &Params, settings: &Settings) -> Result<Vec<BoundReport>> {
    let name = params.file.require("name")?;
    let p = params.u64("p")?;
    match name {
        "subfield" => {
            let (_, report) = example_subfield(p, settings.cap)?;
            Ok(vec![report])
        }
        "fullgrid" => {
            let (_, _, report) = example_fullgrid(p, settings.cap)?;
            Ok(vec![report])
        }
        other => bail!("key `name`: unknown example `{other}` (subfield, fullgrid)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 1_000_000;

    fn settings(seed: u64) -> Settings {
        Settings { seed, cap: CAP, jobs: Some(2) }
    }

    fn parse(text: &str) -> ConfigFile {
        ConfigFile::parse(text).unwrap()
    }

    fn violations(reports: &[BoundReport]) -> u64 {
        blocking_violations(reports)
    }

    #[test]
    fn violation_count_ignores_tracked_failures() {
        let zero = BigRational::from_integer(0.into());
        let blocking_bad = BoundReport::exact("a", "x", 3, zero.clone(), Tier::Blocking);
        let tracked_bad = BoundReport::exact("b", "x", 3, zero.clone(), Tier::Tracked);
        let blocking_good = BoundReport::exact("c", "x", 0, zero, Tier::Blocking);
        assert!(!blocking_bad.holds && !tracked_bad.holds && blocking_good.holds);
        assert_eq!(blocking_violations(&[blocking_bad, tracked_bad, blocking_good]), 1);
    }

    #[test]
    fn registry_names_parse_back() {
        for e in Experiment::ALL {
            assert_eq!(Experiment::parse(e.name()), Some(e));
        }
        assert_eq!(Experiment::parse("mystery"), None);
    }

    #[test]
    fn unknown_keys_and_records_are_schema_errors() {
        let file = parse("experiment = beck\nsets = 2\nset_size = 5\nbogus = 1\n");
        assert!(run_experiment(&file, &settings(0)).is_err());
        let file = parse("experiment = distances\nn = 2\np = 4\npoint 0 0\n");
        assert!(run_experiment(&file, &settings(0)).is_err());
        let file = parse("experiment = nope\n");
        assert!(run_experiment(&file, &settings(0)).is_err());
    }

    #[test]
    fn falconer_example_run_has_no_violations() {
        let file = parse("experiment = ff_falconer\np = 7\nn = 2\nk = 1\nsets = 200\nmin_size = 1\nmax_size = 30\n");
        let reports = run_experiment(&file, &settings(1)).unwrap();
        assert!(!reports.is_empty());
        assert_eq!(violations(&reports), 0);
    }

    #[test]
    fn falconer_accepts_explicit_ff_records() {
        let file = parse(
            "experiment = ff_falconer\np = 5\nn = 2\nk = 1\nffpoint 0 0\nffpoint 1 2\nffpoint 3 4\n",
        );
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert_eq!(violations(&reports), 0);
        assert!(reports.iter().all(|r| r.bound_id == "orth_exceptional"));
    }

    #[test]
    fn ff_record_dimension_mismatch_is_an_error() {
        let file = parse("experiment = ff_falconer\np = 5\nn = 2\nk = 1\nffpoint 0 0 0\n");
        assert!(run_experiment(&file, &settings(0)).is_err());
        let file = parse("experiment = ff_falconer\np = 5\nn = 2\nk = 1\nffpoint 9 0\n");
        assert!(run_experiment(&file, &settings(0)).is_err());
    }

    #[test]
    fn radial_runs_emit_both_families_or_skip_notes() {
        let file = parse("experiment = ff_radial\np = 5\nn = 2\nsets = 3\nset_size = 25\n");
        let reports = run_experiment(&file, &settings(3)).unwrap();
        assert_eq!(violations(&reports), 0);
        assert!(reports.iter().any(|r| r.bound_id == "radial_highlow"));
        assert!(reports.iter().any(|r| r.bound_id == "radial_lund_pham_vu"));
    }

    #[test]
    fn fourier_identities_hold_on_a_small_run() {
        let file = parse("experiment = ff_fourier_identities\np = 3\nn = 2\nfunctions = 5\n");
        let reports = run_experiment(&file, &settings(7)).unwrap();
        assert_eq!(violations(&reports), 0);
        assert_eq!(reports.iter().filter(|r| r.bound_id == "fourier_plancherel").count(), 5);
        let flats = reports.iter().filter(|r| r.bound_id == "fourier_flat_spectrum").count();
        assert_eq!(flats, 12);
    }

    #[test]
    fn incidence_zero_corpus_is_empty_and_clean() {
        let file = parse("experiment = euclid_incidence\nconfigs = 0\n");
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert!(reports.is_empty());
    }

    #[test]
    fn incidence_runs_both_bounds_per_config() {
        let file = parse("experiment = euclid_incidence\nconfigs = 10\n");
        let reports = run_experiment(&file, &settings(5)).unwrap();
        assert_eq!(reports.len(), 20);
        assert_eq!(violations(&reports), 0);
    }

    #[test]
    fn incidence_accepts_explicit_records() {
        let file = parse("experiment = euclid_incidence\npoint 0 0\npoint 1 1\nline 0 0 1 1\n");
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(violations(&reports), 0);
    }

    #[test]
    fn direction_sweeps_cover_all_five_reports() {
        let file = parse("experiment = exceptional_directions\nsets = 4\nmin_size = 4\nmax_size = 9\n");
        let reports = run_experiment(&file, &settings(2)).unwrap();
        assert_eq!(reports.len(), 20);
        assert_eq!(violations(&reports), 0);
        assert!(reports.iter().any(|r| r.bound_id == "sylvester_gallai"));
        assert!(reports.iter().any(|r| r.bound_id == "ungar_directions"));
    }

    #[test]
    fn collinear_direction_records_are_rejected() {
        let file =
            parse("experiment = exceptional_directions\npoint 0 0\npoint 1 1\npoint 2 2\n");
        assert!(run_experiment(&file, &settings(0)).is_err());
    }

    #[test]
    fn beck_dichotomy_holds_on_the_mixed_corpus() {
        let file = parse("experiment = beck\nsets = 12\nmin_size = 4\nmax_size = 20\n");
        let reports = run_experiment(&file, &settings(9)).unwrap();
        assert_eq!(reports.len(), 12);
        assert!(reports.iter().all(|r| r.holds));
        let kinds: BTreeSet<&str> =
            reports.iter().map(|r| r.params["corpus"].as_str()).collect();
        assert!(kinds.len() >= 2);
    }

    #[test]
    fn erdos_beck_runs_on_line_plus_noise_draws() {
        let file = parse("experiment = erdos_beck\nsets = 10\nmin_size = 5\nmax_size = 15\n");
        let reports = run_experiment(&file, &settings(4)).unwrap();
        assert_eq!(reports.len(), 10);
        assert!(reports.iter().all(|r| r.holds));
    }

    #[test]
    fn pinned_radial_emits_four_reports_per_item() {
        let file = parse("experiment = pinned_radial\nsets = 5\nmin_size = 5\nmax_size = 10\n");
        let reports = run_experiment(&file, &settings(6)).unwrap();
        assert_eq!(reports.len(), 20);
        assert_eq!(violations(&reports), 0);
    }

    #[test]
    fn furstenberg_grid_run_attaches_the_sharpness_ratio() {
        let file = parse("experiment = furstenberg\ns = 3\nt = 5\n");
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert_eq!(reports.len(), 3);
        assert_eq!(violations(&reports), 0);
        assert!(reports[2].params.contains_key("sharpness_sq"));
    }

    #[test]
    fn furstenberg_consumes_explicit_configurations() {
        let cfg = grid_example(2, 3).unwrap();
        let text = format!("experiment = furstenberg\n{}", geomlab::config::furst_to_text(&cfg));
        let reports = run_experiment(&parse(&text), &settings(0)).unwrap();
        assert_eq!(violations(&reports), 0);
    }

    #[test]
    fn dual_furstenberg_dualizes_the_grid() {
        let file = parse("experiment = dual_furstenberg\ns = 3\nt = 4\n");
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].bound_id, "dual_furst");
    }

    #[test]
    fn distance_sweep_covers_the_requested_range() {
        let file = parse("experiment = distances\nn = 2\np_min = 1\np_max = 6\n");
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert_eq!(reports.len(), 6);
        assert_eq!(violations(&reports), 0);
        let file = parse("experiment = distances\nn = 3\np = 4\n");
        assert_eq!(run_experiment(&file, &settings(0)).unwrap().len(), 1);
    }

    #[test]
    fn dot_product_scaling_is_exact_on_seeded_triples() {
        let file = parse("experiment = dot_products\nsets = 25\n");
        let reports = run_experiment(&file, &settings(8)).unwrap();
        assert_eq!(reports.len(), 25);
        assert_eq!(violations(&reports), 0);
    }

    #[test]
    fn named_examples_pin_their_counts() {
        let file = parse("experiment = named_example\nname = subfield\np = 3\n");
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert_eq!(reports[0].params["exceptional_slopes"], "3");
        assert_eq!(violations(&reports), 0);

        let file = parse("experiment = named_example\nname = fullgrid\np = 5\n");
        let reports = run_experiment(&file, &settings(0)).unwrap();
        assert_eq!(reports[0].params["incidences"], "125");
        assert_eq!(violations(&reports), 0);
    }

    #[test]
    fn reruns_are_identical_and_seeds_matter() {
        let file = parse("experiment = beck\nsets = 6\nmin_size = 4\nmax_size = 12\n");
        let first = run_experiment(&file, &settings(42)).unwrap();
        let second = run_experiment(&file, &settings(42)).unwrap();
        assert_eq!(first, second);
        let other = run_experiment(&file, &settings(43)).unwrap();
        assert_ne!(first, other);
    }

    #[test]
    fn job_count_does_not_change_output() {
        let file = parse("experiment = euclid_incidence\nconfigs = 8\n");
        let serial = run_experiment(&file, &Settings { seed: 11, cap: CAP, jobs: Some(1) }).unwrap();
        let parallel = run_experiment(&file, &Settings { seed: 11, cap: CAP, jobs: Some(4) }).unwrap();
        assert_eq!(serial, parallel);
    }
}
