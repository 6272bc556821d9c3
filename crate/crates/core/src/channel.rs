//! Binary symmetric channel and Monte Carlo BER/FER estimation.
//!
//! Simulation results are reproducible to the byte for a fixed master seed,
//! independent of how many worker threads run the frames: every frame draws
//! its randomness from its own generator, seeded by hashing
//! `(master_seed, point index, frame index)`, and per-point statistics are
//! integer sums over frames. Frames are processed in fixed-size blocks;
//! early stopping is evaluated between blocks so it, too, is independent of
//! the parallelism.

use crate::bits::{hamming_distance, BitVector};
use crate::decoder::{
    gallager_codeword_decode, spa_decode, DecodeResult, DecoderConfig, DecoderVariant,
};
use crate::error::{Error, Result};
use crate::sparse::{encode_systematic, LdpcCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

/// A binary symmetric channel with crossover probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BscChannel {
    p: f64,
}

impl BscChannel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "crossover probability must lie in [0,1], got {p}"
            )));
        }
        Ok(BscChannel { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Flips each bit of `x` independently with probability `p`.
    pub fn apply_with_rng<R: Rng + ?Sized>(&self, x: &BitVector, rng: &mut R) -> BitVector {
        let mut out = x.clone();
        for i in 0..x.len() {
            if rng.gen::<f64>() < self.p {
                out.flip(i);
            }
        }
        out
    }
}

/// One-shot BSC application with a dedicated seed.
pub fn bsc_apply(x: &BitVector, channel: &BscChannel, seed: u64) -> BitVector {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    channel.apply_with_rng(x, &mut rng)
}

/// What gets transmitted in a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transmission {
    /// The all-zero codeword; valid for symmetric decoders and free of
    /// encoding cost.
    AllZero,
    /// Fresh random codewords per frame (requires a triangular code);
    /// used to spot-check the all-zero-codeword assumption.
    RandomCodewords,
}

/// Early-stop rule: finish the current block and stop once a point has
/// accumulated this many frame errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub min_frame_errors: usize,
}

/// Default early-stop error count when early stopping is enabled.
pub const DEFAULT_MIN_FRAME_ERRORS: usize = 30;

/// Per-point statistics of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimPoint {
    pub p: f64,
    pub frames: usize,
    pub bit_errors: usize,
    pub frame_errors: usize,
    pub ber: f64,
    pub fer: f64,
    pub avg_iterations: f64,
    /// 95% Wilson interval on the frame error rate.
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Reproducibility metadata carried with every report.
#[derive(Debug, Clone, PartialEq)]
pub struct SimMetadata {
    pub code_id: String,
    pub n: usize,
    pub r: usize,
    pub decoder: DecoderVariant,
    pub max_iter: usize,
    pub master_seed: u64,
    pub transmission: Transmission,
}

/// A full BER/FER sweep over a crossover-probability grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub metadata: SimMetadata,
    pub points: Vec<SimPoint>,
}

impl SimulationReport {
    /// Renders the report as CSV with a commented metadata header.
    /// `extra_header` entries are emitted first.
    pub fn to_csv(&self, extra_header: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in extra_header {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let m = &self.metadata;
        out.push_str(&format!("# code_id: {}\n", m.code_id));
        out.push_str(&format!("# code_size: n={} r={}\n", m.n, m.r));
        out.push_str(&format!("# decoder: {}\n", m.decoder.as_str()));
        out.push_str(&format!("# max_iter: {}\n", m.max_iter));
        out.push_str(&format!("# master_seed: {}\n", m.master_seed));
        out.push_str(&format!(
            "# transmission: {}\n",
            match m.transmission {
                Transmission::AllZero => "all-zero",
                Transmission::RandomCodewords => "random-codewords",
            }
        ));
        out.push_str("p,frames,bit_errors,frame_errors,ber,fer,avg_iters,ci_low,ci_high\n");
        for pt in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                pt.p,
                pt.frames,
                pt.bit_errors,
                pt.frame_errors,
                pt.ber,
                pt.fer,
                pt.avg_iterations,
                pt.ci_low,
                pt.ci_high
            ));
        }
        out
    }
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval_95(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.96f64;
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn frame_seed(master_seed: u64, point: usize, frame: usize) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(master_seed.to_be_bytes());
    hasher.update((point as u64).to_be_bytes());
    hasher.update((frame as u64).to_be_bytes());
    hasher.finalize().into()
}

struct FrameOutcome {
    bit_errors: usize,
    frame_error: bool,
    iterations: usize,
}

fn run_frame(
    code: &LdpcCode,
    cfg: &DecoderConfig,
    channel: &BscChannel,
    tx: Transmission,
    seed: [u8; 32],
) -> FrameOutcome {
    let mut rng = ChaCha20Rng::from_seed(seed);
    let transmitted = match tx {
        Transmission::AllZero => BitVector::zeros(code.n()),
        Transmission::RandomCodewords => {
            let info = BitVector::random(code.k(), &mut rng);
            encode_systematic(code, &info).expect("triangular code checked by caller")
        }
    };
    let received = channel.apply_with_rng(&transmitted, &mut rng);
    let result: DecodeResult = match cfg.variant {
        DecoderVariant::Spa => spa_decode(code, &received, cfg).expect("validated config"),
        _ => gallager_codeword_decode(code, &received, cfg).expect("validated config"),
    };
    let bit_errors = hamming_distance(&result.estimate, &transmitted).expect("equal lengths");
    FrameOutcome {
        bit_errors,
        frame_error: bit_errors != 0,
        iterations: result.iterations,
    }
}

/// Frames per parallel block; early stopping is checked at block boundaries.
const FRAME_BLOCK: usize = 32;

/// Runs a BER/FER sweep transmitting the all-zero codeword.
///
/// For SPA decoding, a config without `channel_p` takes the design prior
/// from each grid point (clamped away from 0 and 0.5). Gallager variants
/// decode the received word through their syndrome form.
pub fn run_montecarlo(
    code: &LdpcCode,
    cfg: &DecoderConfig,
    p_grid: &[f64],
    frames: usize,
    master_seed: u64,
    stop: Option<StopRule>,
) -> Result<SimulationReport> {
    run_montecarlo_with(
        code,
        cfg,
        p_grid,
        frames,
        master_seed,
        stop,
        Transmission::AllZero,
    )
}

/// [`run_montecarlo`] with an explicit transmission mode.
pub fn run_montecarlo_with(
    code: &LdpcCode,
    cfg: &DecoderConfig,
    p_grid: &[f64],
    frames: usize,
    master_seed: u64,
    stop: Option<StopRule>,
    tx: Transmission,
) -> Result<SimulationReport> {
    if p_grid.is_empty() {
        return Err(Error::EmptyInput("crossover-probability grid".into()));
    }
    if frames == 0 {
        return Err(Error::InvalidParameter("need at least one frame".into()));
    }
    if tx == Transmission::RandomCodewords && !code.is_triangular() {
        return Err(Error::NotTriangular);
    }

    let mut points = Vec::with_capacity(p_grid.len());
    for (pi, &p) in p_grid.iter().enumerate() {
        let channel = BscChannel::new(p)?;
        let point_cfg = match cfg.variant {
            DecoderVariant::Spa => {
                let design = cfg.channel_p.unwrap_or(p).clamp(1e-6, 0.5 - 1e-6);
                DecoderConfig {
                    channel_p: Some(design),
                    ..cfg.clone()
                }
            }
            _ => cfg.clone(),
        };

        let mut done = 0usize;
        let mut bit_errors = 0usize;
        let mut frame_errors = 0usize;
        let mut total_iters = 0usize;
        while done < frames {
            let block = FRAME_BLOCK.min(frames - done);
            let outcomes: Vec<FrameOutcome> = (done..done + block)
                .into_par_iter()
                .map(|f| {
                    run_frame(code, &point_cfg, &channel, tx, frame_seed(master_seed, pi, f))
                })
                .collect();
            for o in outcomes {
                bit_errors += o.bit_errors;
                frame_errors += usize::from(o.frame_error);
                total_iters += o.iterations;
            }
            done += block;
            if let Some(rule) = stop {
                if frame_errors >= rule.min_frame_errors {
                    break;
                }
            }
        }

        let (ci_low, ci_high) = wilson_interval_95(frame_errors, done);
        points.push(SimPoint {
            p,
            frames: done,
            bit_errors,
            frame_errors,
            ber: bit_errors as f64 / (done * code.n()) as f64,
            fer: frame_errors as f64 / done as f64,
            avg_iterations: total_iters as f64 / done as f64,
            ci_low,
            ci_high,
        });
    }

    Ok(SimulationReport {
        metadata: SimMetadata {
            code_id: code.content_id(),
            n: code.n(),
            r: code.r(),
            decoder: cfg.variant,
            max_iter: cfg.max_iter,
            master_seed,
            transmission: tx,
        },
        points,
    })
}
