//! Subcommand implementations. Each returns the process exit code.

use crate::config::{render_header, ConfigMap, RunParams};
use crate::{
    AnalyzeArgs, ConstructArgs, EnrollArgs, EnsembleArgs, SimulateArgs, SynthArgs, ThresholdArgs,
    VerifyArgs,
};
use anyhow::{bail, Context, Result};
use sfh_core::alist::{alist_read, alist_write};
use sfh_core::bits::BitVector;
use sfh_core::channel::{run_montecarlo_with, StopRule, Transmission};
use sfh_core::de::threshold as de_threshold;
use sfh_core::decoder::{DecoderConfig, DecoderVariant};
use sfh_core::ensemble::{edge_distributions, feasibility, row_weight_profile, EnsembleSpec};
use sfh_core::entropy::{
    distance_histogram_csv, dof_report, pairwise_distances, pseudomask_from_masks,
    synth_generate, syndrome_set_analysis, transition_probabilities, BaseModel, MaskModel,
    PairMode, SynthConfig, TemplateSet,
};
use sfh_core::fuzzy::{fc_enroll, fc_verify, fh_enroll, fh_verify, EnrollmentRecord, Scheme};
use sfh_core::peg::{girth_histogram, peg_construct, PegConfig};
use sfh_core::sparse::LdpcCode;
use std::path::{Path, PathBuf};

const DEFAULT_SEED: u64 = 0;
const DEFAULT_MAX_ITER: usize = 100;

fn write_or_print(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Loads an alist file, marking the code triangular when its rows end at
/// the diagonal of the right block.
fn load_code(path: &Path) -> Result<LdpcCode> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading code {}", path.display()))?;
    let h = alist_read(&text)?;
    Ok(LdpcCode::new_triangular(h.clone()).unwrap_or_else(|_| LdpcCode::new(h)))
}

fn load_templates(path: &Path) -> Result<Vec<BitVector>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading templates {}", path.display()))?;
    Ok(TemplateSet::decode_vectors(&text)?)
}

fn pick_template(path: &Path, index: usize) -> Result<BitVector> {
    let templates = load_templates(path)?;
    templates
        .get(index)
        .cloned()
        .with_context(|| format!("template index {index} out of range ({} present)", templates.len()))
}

fn rho_string(dist: &sfh_core::ensemble::DegreeDistribution) -> String {
    dist.rho()
        .iter()
        .map(|(deg, c)| format!("{c}*x^{}", deg - 1))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn ensemble(args: EnsembleArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let dv: usize = cfg.require(args.dv, "dv")?;
    let n = cfg.resolve(args.n, "n")?;
    let k = cfg.resolve(args.k, "k")?;
    let rate = cfg.resolve(args.rate, "rate")?;

    let (rate, nk) = match (rate, n, k) {
        (Some(rate), None, None) => (rate, None),
        (None, Some(n), Some(k)) => (k as f64 / n as f64, Some((n, k))),
        _ => bail!("give either --rate or both --n and --k"),
    };

    let spec = EnsembleSpec::new(rate, dv)?;
    if !feasibility(&spec) {
        bail!(
            "infeasible: rate {rate} with dv={dv} requires rate < {}",
            1.0 / (dv as f64 + 1.0)
        );
    }
    println!("rate: {rate}");
    println!("dv: {dv}");
    println!("feasible: true");
    println!("mean_row_weight: {}", spec.mean_row_weight());
    let dist = edge_distributions(&spec)?;
    println!("lambda: x^{}", dv - 1);
    println!("rho: {}", rho_string(&dist));
    if let Some((n, k)) = nk {
        let (light, heavy) = row_weight_profile(n, k, dv)?;
        println!("rows_weight_{dv}: {light}");
        println!("rows_weight_{}: {heavy}", dv + 1);
    }
    Ok(0)
}

pub fn threshold(args: ThresholdArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let rates = match cfg.resolve(args.rates.map(Csv), "rates")? {
        Some(Csv(v)) => v,
        None => vec![0.10, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04, 0.03, 0.02, 0.01],
    };
    let dvs = match cfg.resolve(args.dvs.map(Csv), "dvs")? {
        Some(Csv(v)) => v,
        None => vec![3usize, 4, 5],
    };
    let precision = cfg.resolve(args.precision, "precision")?.unwrap_or(1e-4);

    let mut params = RunParams::new("threshold");
    params.push("rates", join(&rates));
    params.push("dvs", join(&dvs));
    params.push("precision", precision);

    let mut csv = render_header(&params.header(None));
    csv.push('R');
    for dv in &dvs {
        csv.push_str(&format!(",dv{dv}"));
    }
    csv.push('\n');
    for &rate in &rates {
        csv.push_str(&format!("{rate}"));
        for &dv in &dvs {
            let dist = edge_distributions(&EnsembleSpec::new(rate, dv)?)?;
            csv.push_str(&format!(",{}", de_threshold(&dist, precision)));
        }
        csv.push('\n');
    }
    write_or_print(args.out.as_deref(), &csv)?;
    Ok(0)
}

pub fn construct(args: ConstructArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let n: usize = cfg.require(args.n, "n")?;
    let dv: usize = cfg.require(args.dv, "dv")?;
    let k = cfg.resolve(args.k, "k")?;
    let r = cfg.resolve(args.r, "r")?;
    let r = match (k, r) {
        (Some(k), None) if k < n => n - k,
        (None, Some(r)) => r,
        (None, None) => bail!("give --k or --r"),
        _ => bail!("give exactly one of --k and --r"),
    };
    let triangular = cfg.resolve_flag(args.triangular, "triangular")?;
    let seed = cfg.resolve(args.seed, "seed")?.unwrap_or(DEFAULT_SEED);

    let peg_cfg = PegConfig {
        n,
        r,
        dv,
        lower_triangular: triangular,
        seed,
    };
    let code = peg_construct(&peg_cfg)?;
    let girth = girth_histogram(code.h());

    std::fs::write(&args.out, alist_write(code.h()))
        .with_context(|| format!("writing {}", args.out.display()))?;

    let mut params = RunParams::new("construct");
    params.push("n", n);
    params.push("k", n - r);
    params.push("r", r);
    params.push("dv", dv);
    params.push("triangular", triangular);
    params.push("seed", seed);
    let mut meta = render_header(&params.header(Some(seed)));
    meta.push_str(&format!("# code_id: {}\n", code.content_id()));
    meta.push_str(&format!(
        "# girth: {}\n",
        girth.girth.map_or("none".to_string(), |g| g.to_string())
    ));
    let meta_path = sidecar(&args.out, "meta");
    std::fs::write(&meta_path, meta)
        .with_context(|| format!("writing {}", meta_path.display()))?;

    println!(
        "constructed n={n} k={} dv={dv} triangular={triangular} girth={:?} id={}",
        n - r,
        girth.girth,
        code.content_id()
    );
    Ok(0)
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}

fn decoder_config(
    cfg: &ConfigMap,
    variant: Option<String>,
    max_iter: Option<usize>,
    channel_p: Option<f64>,
) -> Result<DecoderConfig> {
    let variant: DecoderVariant = cfg
        .resolve(variant, "variant")?
        .unwrap_or_else(|| "spa".to_string())
        .parse()?;
    let max_iter = cfg.resolve(max_iter, "max_iter")?.unwrap_or(DEFAULT_MAX_ITER);
    let channel_p = cfg.resolve(channel_p, "channel_p")?;
    Ok(DecoderConfig {
        variant,
        max_iter,
        b_schedule: None,
        channel_p,
    })
}

pub fn simulate(args: SimulateArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let code = load_code(&args.code)?;
    let p_grid = match cfg.resolve(args.p_grid.map(Csv), "p_grid")? {
        Some(Csv(v)) => v,
        None => bail!("missing required parameter --p-grid"),
    };
    let frames = cfg.require(args.frames, "frames")?;
    let seed = cfg.resolve(args.seed, "seed")?.unwrap_or(DEFAULT_SEED);
    let dcfg = decoder_config(&cfg, args.variant, args.max_iter, args.channel_p)?;
    let stop = cfg
        .resolve(args.min_frame_errors, "min_frame_errors")?
        .map(|min_frame_errors| StopRule { min_frame_errors });
    let random_codewords = cfg.resolve_flag(args.random_codewords, "random_codewords")?;
    let tx = if random_codewords {
        Transmission::RandomCodewords
    } else {
        Transmission::AllZero
    };

    let report = run_montecarlo_with(&code, &dcfg, &p_grid, frames, seed, stop, tx)?;

    let mut params = RunParams::new("simulate");
    params.push("code", args.code.display());
    params.push("p_grid", join(&p_grid));
    params.push("frames", frames);
    params.push("variant", dcfg.variant.as_str());
    params.push("max_iter", dcfg.max_iter);
    if let Some(p) = dcfg.channel_p {
        params.push("channel_p", p);
    }
    if let Some(rule) = stop {
        params.push("min_frame_errors", rule.min_frame_errors);
    }
    params.push("random_codewords", random_codewords);
    params.push("seed", seed);

    let csv = report.to_csv(&params.header(Some(seed)));
    write_or_print(args.out.as_deref(), &csv)?;
    Ok(0)
}

pub fn enroll(args: EnrollArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let code = load_code(&args.code)?;
    let scheme: Scheme = cfg.require(args.scheme, "scheme")?.parse()?;
    let seed = cfg.resolve(args.seed, "seed")?.unwrap_or(DEFAULT_SEED);
    let x = pick_template(&args.template, args.index)?;

    let record = match scheme {
        Scheme::SyndromeFuzzyHash => fh_enroll(&code, &x)?,
        Scheme::FuzzyCommitment => fc_enroll(&code, &x, seed)?,
    };
    std::fs::write(&args.out, record.serialize())
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "enrolled scheme={} code={} payload_bits={}",
        scheme.as_str(),
        record.code_ref.id,
        record.payload.len()
    );
    Ok(0)
}

pub fn verify(args: VerifyArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let code = load_code(&args.code)?;
    let record_text = std::fs::read_to_string(&args.record)
        .with_context(|| format!("reading record {}", args.record.display()))?;
    let record = EnrollmentRecord::parse(&record_text)?;
    let probe = pick_template(&args.probe, args.index)?;
    let mut dcfg = decoder_config(&cfg, args.variant, args.max_iter, args.channel_p)?;
    if dcfg.variant == DecoderVariant::Spa && dcfg.channel_p.is_none() {
        dcfg.channel_p = Some(0.15);
    }

    let outcome = match record.scheme {
        Scheme::SyndromeFuzzyHash => fh_verify(&code, &record, &probe, &dcfg)?,
        Scheme::FuzzyCommitment => fc_verify(&code, &record, &probe, &dcfg)?,
    };
    if outcome.granted {
        println!("granted (decoder iterations: {})", outcome.decoder_iterations);
        Ok(0)
    } else {
        println!("denied (decoder iterations: {})", outcome.decoder_iterations);
        Ok(1)
    }
}

pub fn analyze(args: AnalyzeArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let templates = load_templates(&args.templates)?;
    let labels_text = std::fs::read_to_string(&args.labels)
        .with_context(|| format!("reading labels {}", args.labels.display()))?;
    let labels = TemplateSet::decode_labels(&labels_text);
    let masks = match &args.masks {
        Some(path) => Some(load_templates(path)?),
        None => None,
    };
    let set = TemplateSet::new(templates, labels, masks)?;

    let mode: PairMode = cfg
        .resolve(args.mode, "mode")?
        .unwrap_or_else(|| "inter".to_string())
        .parse()?;
    let use_pseudomask = cfg.resolve_flag(args.pseudomask, "pseudomask")?;
    let mth = cfg.resolve(args.mth, "mth")?.unwrap_or(0.024);
    let bins = cfg.resolve(args.bins, "bins")?.unwrap_or(100);

    let pseudomask = if use_pseudomask {
        let masks = set
            .masks()
            .context("--pseudomask requires --masks")?;
        Some(pseudomask_from_masks(masks, mth)?)
    } else {
        None
    };

    let distances = pairwise_distances(&set, mode, pseudomask.as_ref())?;
    let raw = dof_report(&distances)?;

    let mut params = RunParams::new("analyze");
    params.push("templates", args.templates.display());
    params.push(
        "mode",
        match mode {
            PairMode::Intra => "intra",
            PairMode::Inter => "inter",
        },
    );
    params.push("pseudomask", use_pseudomask);
    if use_pseudomask {
        params.push("mth", mth);
        params.push(
            "kept_positions",
            pseudomask.as_ref().map_or(0, |p| p.kept.len()),
        );
    }
    params.push("bins", bins);

    let mut csv = render_header(&params.header(None));
    csv.push_str("set,mode,pairs,mu,sigma,dof\n");
    let mode_name = match mode {
        PairMode::Intra => "intra",
        PairMode::Inter => "inter",
    };
    csv.push_str(&format!(
        "raw,{mode_name},{},{},{},{}\n",
        raw.pair_count, raw.mu, raw.sigma, raw.dof
    ));
    if let Some(code_path) = &args.code {
        let code = load_code(code_path)?;
        let synd = syndrome_set_analysis(&set, &code)?;
        csv.push_str(&format!(
            "syndrome,inter,{},{},{},{}\n",
            synd.pair_count, synd.mu, synd.sigma, synd.dof
        ));
    }
    write_or_print(args.out.as_deref(), &csv)?;

    if let Some(hist_path) = &args.hist_out {
        let mut hist = render_header(&params.header(None));
        hist.push_str(&distance_histogram_csv(&distances, bins));
        std::fs::write(hist_path, hist)
            .with_context(|| format!("writing {}", hist_path.display()))?;
    }

    if mode == PairMode::Intra {
        // BSC symmetry estimate over the intra-class pairs
        let mut pairs = Vec::new();
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if set.labels()[i] == set.labels()[j] {
                    pairs.push((set.templates()[i].clone(), set.templates()[j].clone()));
                }
            }
        }
        if let Ok((p10, p01)) = transition_probabilities(&pairs) {
            eprintln!("transition probabilities: p_1to0 = {p10}, p_0to1 = {p01}");
        }
    }
    Ok(0)
}

pub fn synth(args: SynthArgs) -> Result<i32> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let subjects = cfg.require(args.subjects, "subjects")?;
    let readings = cfg.resolve(args.readings, "readings")?.unwrap_or(1);
    let length = cfg.require(args.length, "length")?;
    let intra_p = cfg.resolve(args.intra_p, "intra_p")?.unwrap_or(0.0);
    let block_len = cfg.resolve(args.block_len, "block_len")?.unwrap_or(1);
    let mask_p = cfg.resolve(args.mask_p, "mask_p")?;
    let seed = cfg.resolve(args.seed, "seed")?.unwrap_or(DEFAULT_SEED);

    let synth_cfg = SynthConfig {
        subjects,
        readings_per_subject: readings,
        length,
        intra_p,
        base_model: if block_len <= 1 {
            BaseModel::Uniform
        } else {
            BaseModel::BlockRepeat { block_len }
        },
        mask_model: match mask_p {
            None => MaskModel::None,
            Some(p) => MaskModel::Uniform(p),
        },
        seed,
    };
    let set = synth_generate(&synth_cfg)?;

    let ftpl = sidecar(&args.out, "ftpl");
    std::fs::write(&ftpl, set.encode_templates())
        .with_context(|| format!("writing {}", ftpl.display()))?;
    let labels = sidecar(&args.out, "labels");
    std::fs::write(&labels, set.encode_labels())
        .with_context(|| format!("writing {}", labels.display()))?;
    if let Some(mask_text) = set.encode_masks() {
        let mask = sidecar(&args.out, "mask");
        std::fs::write(&mask, mask_text)
            .with_context(|| format!("writing {}", mask.display()))?;
    }

    let mut params = RunParams::new("synth");
    params.push("subjects", subjects);
    params.push("readings", readings);
    params.push("length", length);
    params.push("intra_p", intra_p);
    params.push("block_len", block_len);
    if let Some(p) = mask_p {
        params.push("mask_p", p);
    }
    params.push("seed", seed);
    let meta = sidecar(&args.out, "meta");
    std::fs::write(&meta, render_header(&params.header(Some(seed))))
        .with_context(|| format!("writing {}", meta.display()))?;

    println!(
        "generated {} templates of length {length} ({subjects} subjects x {readings} readings)",
        set.len()
    );
    Ok(0)
}

fn join<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Comma-separated list wrapper so lists can come from config values too.
struct Csv<T>(Vec<T>);

impl<T> std::str::FromStr for Csv<T>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<T>().map_err(|e| format!("{e}")))
            .collect::<std::result::Result<Vec<T>, _>>()
            .map(Csv)
    }
}
