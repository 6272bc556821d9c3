//! Hard-decision (Gallager A/B) and sum-product decoding on the BSC, in both
//! syndrome-decoding and codeword-decoding form.
//!
//! All decoders run a flooding schedule on the Tanner graph and are fully
//! deterministic. The syndrome forms seek an error pattern `v` with
//! `H v = s` starting from the all-zero prior; the codeword forms seek the
//! codeword nearest to the received word. Check nodes enforce a parity
//! target `s_j` (zero for codeword decoding), so the two forms are exact
//! coset shifts of one another: decoding `y = c + e` and syndrome-decoding
//! `H e` walk through sign-isomorphic message trajectories, and the two
//! estimates differ by exactly `y`.
//!
//! Sum-product check updates are computed in sign/magnitude form — parity of
//! message signs and the target, times a magnitude from the tanh product of
//! absolute values — which makes that coset shift exact in floating point,
//! not merely in expectation.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::sparse::{LdpcCode, SparseParityCheck};

/// Message-passing decoder family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderVariant {
    /// Hard decision; a variable flips its prior only on unanimous
    /// disagreement of the incoming check messages.
    GallagerA,
    /// Hard decision with a flip threshold `b`, per iteration and clamped
    /// per node degree.
    GallagerB,
    /// Sum-product in the log-likelihood domain.
    Spa,
}

impl DecoderVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecoderVariant::GallagerA => "gallager-a",
            DecoderVariant::GallagerB => "gallager-b",
            DecoderVariant::Spa => "spa",
        }
    }
}

impl std::str::FromStr for DecoderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gallager-a" => Ok(DecoderVariant::GallagerA),
            "gallager-b" => Ok(DecoderVariant::GallagerB),
            "spa" => Ok(DecoderVariant::Spa),
            other => Err(Error::InvalidParameter(format!(
                "unknown decoder variant {other:?}"
            ))),
        }
    }
}

/// Decoder configuration.
///
/// `b_schedule` applies to Gallager B only: entry `l` is the flip threshold
/// of iteration `l + 1`, with the last entry repeating. Without a schedule
/// the per-degree default `min(ceil(d/2) + 1, d - 1)` is used. `channel_p`
/// is the design crossover probability behind the SPA prior.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderConfig {
    pub variant: DecoderVariant,
    pub max_iter: usize,
    pub b_schedule: Option<Vec<usize>>,
    pub channel_p: Option<f64>,
}

impl DecoderConfig {
    pub fn gallager_a(max_iter: usize) -> Self {
        DecoderConfig {
            variant: DecoderVariant::GallagerA,
            max_iter,
            b_schedule: None,
            channel_p: None,
        }
    }

    pub fn gallager_b(max_iter: usize) -> Self {
        DecoderConfig {
            variant: DecoderVariant::GallagerB,
            max_iter,
            b_schedule: None,
            channel_p: None,
        }
    }

    pub fn gallager_b_with_schedule(max_iter: usize, schedule: Vec<usize>) -> Self {
        DecoderConfig {
            variant: DecoderVariant::GallagerB,
            max_iter,
            b_schedule: Some(schedule),
            channel_p: None,
        }
    }

    pub fn spa(channel_p: f64, max_iter: usize) -> Self {
        DecoderConfig {
            variant: DecoderVariant::Spa,
            max_iter,
            b_schedule: None,
            channel_p: Some(channel_p),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
        }
        if self.variant == DecoderVariant::GallagerB {
            if let Some(sched) = &self.b_schedule {
                if sched.is_empty() || sched.contains(&0) {
                    return Err(Error::InvalidParameter(
                        "b schedule must be non-empty with thresholds >= 1".into(),
                    ));
                }
            }
        }
        if self.variant == DecoderVariant::Spa {
            match self.channel_p {
                Some(p) if p > 0.0 && p < 0.5 => {}
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "SPA needs channel_p in (0, 0.5), got {other:?}"
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Outcome of one decode. `success` means the estimate satisfies every
/// parity constraint exactly; `iterations` counts message-passing rounds
/// (zero when the prior already satisfies the constraints).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub success: bool,
    pub estimate: BitVector,
    pub iterations: usize,
}

/// LLR magnitude bound; decisions at BSC input magnitudes are unaffected.
const LLR_CLAMP: f64 = 30.0;
/// Keeps `atanh` finite when every incoming magnitude saturates.
const TANH_CEIL: f64 = 1.0 - 1e-15;

/// Flat edge-indexed view of the Tanner graph. Edges are numbered in
/// (variable, adjacent-check) order following the sorted adjacency lists,
/// so message passing is deterministic.
struct Graph {
    n: usize,
    r: usize,
    var_off: Vec<usize>,
    chk_off: Vec<usize>,
    /// edge ids (into the variable-ordered arrays) grouped by check
    chk_edges: Vec<u32>,
    /// variable of each entry of `chk_edges`
    chk_vars: Vec<u32>,
}

impl Graph {
    fn new(h: &SparseParityCheck) -> Self {
        let n = h.n();
        let r = h.r();
        let mut var_off = Vec::with_capacity(n + 1);
        var_off.push(0usize);
        let mut total = 0usize;
        for i in 0..n {
            total += h.col(i).len();
            var_off.push(total);
        }
        // walk columns in row order to assign edge ids per check
        let mut cursor = var_off.clone();
        let mut chk_off = Vec::with_capacity(r + 1);
        let mut chk_edges = Vec::with_capacity(total);
        let mut chk_vars = Vec::with_capacity(total);
        chk_off.push(0);
        for j in 0..r {
            for &v in h.row(j) {
                let v = v as usize;
                // each column lists this row exactly once and rows arrive in
                // sorted order, so the cursor points at the matching edge
                chk_edges.push(cursor[v] as u32);
                chk_vars.push(v as u32);
                cursor[v] += 1;
            }
            chk_off.push(chk_edges.len());
        }
        Graph {
            n,
            r,
            var_off,
            chk_off,
            chk_edges,
            chk_vars,
        }
    }
}

fn hard_satisfies(g: &Graph, est: &[bool], target: &BitVector) -> bool {
    for j in 0..g.r {
        let mut parity = false;
        for &v in &g.chk_vars[g.chk_off[j]..g.chk_off[j + 1]] {
            parity ^= est[v as usize];
        }
        if parity != target.get(j) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// sum-product
// ---------------------------------------------------------------------------

fn clamp_llr(x: f64) -> f64 {
    x.clamp(-LLR_CLAMP, LLR_CLAMP)
}

/// Flooding SPA with per-check parity targets.
fn spa_run(
    h: &SparseParityCheck,
    priors: &[f64],
    target: &BitVector,
    max_iter: usize,
) -> (bool, Vec<bool>, usize) {
    let g = Graph::new(h);
    let ne = g.chk_edges.len();

    let hard = |totals: &[f64]| -> Vec<bool> {
        totals
            .iter()
            .zip(priors)
            .map(|(&t, &p)| t < 0.0 || (t == 0.0 && p < 0.0))
            .collect()
    };

    let mut est = hard(priors);
    if hard_satisfies(&g, &est, target) {
        return (true, est, 0);
    }

    let mut vmsg = vec![0.0f64; ne];
    for (v, &prior) in priors.iter().enumerate() {
        vmsg[g.var_off[v]..g.var_off[v + 1]].fill(prior);
    }
    let mut cmsg = vec![0.0f64; ne];
    let mut tanh_mag = vec![0.0f64; ne];
    let mut neg = vec![false; ne];
    let mut totals = vec![0.0f64; g.n];
    let mut prefix: Vec<f64> = Vec::new();

    for iter in 1..=max_iter {
        for e in 0..ne {
            let m = vmsg[e];
            neg[e] = m < 0.0;
            tanh_mag[e] = (m.abs() / 2.0).tanh();
        }
        for j in 0..g.r {
            let edges = &g.chk_edges[g.chk_off[j]..g.chk_off[j + 1]];
            let d = edges.len();
            let mut neg_count = 0usize;
            for &e in edges {
                neg_count += usize::from(neg[e as usize]);
            }
            // prefix/suffix products of tanh magnitudes give each edge the
            // product over the other edges without divisions
            prefix.clear();
            prefix.push(1.0);
            for &e in edges {
                let last = *prefix.last().unwrap();
                prefix.push(last * tanh_mag[e as usize]);
            }
            let mut suffix = 1.0f64;
            for i in (0..d).rev() {
                let e = edges[i] as usize;
                let prod = (prefix[i] * suffix).min(TANH_CEIL);
                let others_neg = neg_count - usize::from(neg[e]);
                let flip = target.get(j) ^ (others_neg % 2 == 1);
                let mag = clamp_llr(2.0 * prod.atanh());
                cmsg[e] = if flip { -mag } else { mag };
                suffix *= tanh_mag[e];
            }
        }
        for v in 0..g.n {
            let span = g.var_off[v]..g.var_off[v + 1];
            let mut total = priors[v];
            for e in span.clone() {
                total += cmsg[e];
            }
            totals[v] = total;
            for e in span {
                vmsg[e] = clamp_llr(total - cmsg[e]);
            }
        }
        est = hard(&totals);
        if hard_satisfies(&g, &est, target) {
            return (true, est, iter);
        }
    }
    (false, est, max_iter)
}

/// Sum-product codeword decoding of a received word `y`.
///
/// The prior LLR of each bit is `±ln((1-p)/p)` with the sign taken from the
/// received value; on success the estimate is the decoded codeword.
pub fn spa_decode(code: &LdpcCode, y: &BitVector, cfg: &DecoderConfig) -> Result<DecodeResult> {
    cfg.validate()?;
    if cfg.variant != DecoderVariant::Spa {
        return Err(Error::InvalidParameter(
            "spa_decode requires the SPA variant".into(),
        ));
    }
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let p = cfg.channel_p.expect("validated");
    let l0 = ((1.0 - p) / p).ln();
    let y_int = code.internalize(y);
    let priors: Vec<f64> = (0..code.n())
        .map(|i| if y_int.get(i) { -l0 } else { l0 })
        .collect();
    let target = BitVector::zeros(code.r());
    let (success, est, iterations) = spa_run(code.h(), &priors, &target, cfg.max_iter);
    Ok(DecodeResult {
        success,
        estimate: code.externalize(&BitVector::from_bools(&est)),
        iterations,
    })
}

/// Sum-product syndrome decoding: seeks a low-weight pattern `v` with
/// `H v = s`, starting from the all-zero prior.
pub fn spa_syndrome_decode(
    code: &LdpcCode,
    s: &BitVector,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    cfg.validate()?;
    if cfg.variant != DecoderVariant::Spa {
        return Err(Error::InvalidParameter(
            "spa_syndrome_decode requires the SPA variant".into(),
        ));
    }
    if s.len() != code.r() {
        return Err(Error::LengthMismatch {
            expected: code.r(),
            got: s.len(),
        });
    }
    let p = cfg.channel_p.expect("validated");
    let l0 = ((1.0 - p) / p).ln();
    let priors = vec![l0; code.n()];
    let (success, est, iterations) = spa_run(code.h(), &priors, s, cfg.max_iter);
    Ok(DecodeResult {
        success,
        estimate: code.externalize(&BitVector::from_bools(&est)),
        iterations,
    })
}

// ---------------------------------------------------------------------------
// Gallager A / B
// ---------------------------------------------------------------------------

/// Message-rule flip threshold over the `d - 1` extrinsic inputs;
/// `usize::MAX` means the variable never flips its prior in messages.
fn msg_threshold(variant: DecoderVariant, b: usize, d: usize) -> usize {
    if d < 2 {
        return usize::MAX;
    }
    match variant {
        DecoderVariant::GallagerA => d - 1,
        DecoderVariant::GallagerB => b.max(1).min(d - 1),
        DecoderVariant::Spa => unreachable!("hard-decision rule queried for SPA"),
    }
}

/// Decision flip threshold over all `d` incoming messages: one vote more
/// than the message rule, which for variant A is exactly "all incoming
/// disagree".
fn decision_threshold(variant: DecoderVariant, b: usize, d: usize) -> usize {
    match variant {
        DecoderVariant::GallagerA => d.max(1),
        DecoderVariant::GallagerB => {
            if d < 2 {
                usize::MAX
            } else {
                b.max(1).min(d - 1) + 1
            }
        }
        DecoderVariant::Spa => unreachable!(),
    }
}

/// Per-degree default threshold for Gallager B: `min(ceil(d/2) + 1, d - 1)`.
fn default_b(d: usize) -> usize {
    if d < 2 {
        1
    } else {
        (d.div_ceil(2) + 1).min(d - 1)
    }
}

/// Hard-decision syndrome decoding with the Gallager A or B rule.
///
/// The prior is the all-zero word; check `j` enforces parity `s_j`. On
/// success the estimate is an error pattern with `H v = s`.
pub fn gallager_decode(
    code: &LdpcCode,
    s: &BitVector,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    cfg.validate()?;
    let variant = cfg.variant;
    if variant == DecoderVariant::Spa {
        return Err(Error::InvalidParameter(
            "gallager_decode requires a hard-decision variant".into(),
        ));
    }
    if s.len() != code.r() {
        return Err(Error::LengthMismatch {
            expected: code.r(),
            got: s.len(),
        });
    }
    let g = Graph::new(code.h());
    let ne = g.chk_edges.len();

    let mut est = vec![false; g.n];
    if hard_satisfies(&g, &est, s) {
        return Ok(DecodeResult {
            success: true,
            estimate: code.externalize(&BitVector::from_bools(&est)),
            iterations: 0,
        });
    }

    let schedule = cfg.b_schedule.as_deref();
    let b_for = |iter: usize, d: usize| -> usize {
        match schedule {
            Some(sched) => sched[(iter - 1).min(sched.len() - 1)],
            None => default_b(d),
        }
    };

    // message true = flip of the all-zero prior
    let mut vmsg = vec![false; ne];
    let mut cmsg = vec![false; ne];

    for iter in 1..=cfg.max_iter {
        for j in 0..g.r {
            let edges = &g.chk_edges[g.chk_off[j]..g.chk_off[j + 1]];
            let mut total = s.get(j);
            for &e in edges {
                total ^= vmsg[e as usize];
            }
            for &e in edges {
                cmsg[e as usize] = total ^ vmsg[e as usize];
            }
        }
        for (v, decision) in est.iter_mut().enumerate() {
            let span = g.var_off[v]..g.var_off[v + 1];
            let d = span.len();
            let mut ones = 0usize;
            for e in span.clone() {
                ones += usize::from(cmsg[e]);
            }
            let b = b_for(iter, d);
            let t_msg = msg_threshold(variant, b, d);
            for e in span {
                let ext = ones - usize::from(cmsg[e]);
                vmsg[e] = ext >= t_msg;
            }
            *decision = ones >= decision_threshold(variant, b, d);
        }
        if hard_satisfies(&g, &est, s) {
            return Ok(DecodeResult {
                success: true,
                estimate: code.externalize(&BitVector::from_bools(&est)),
                iterations: iter,
            });
        }
    }
    Ok(DecodeResult {
        success: false,
        estimate: code.externalize(&BitVector::from_bools(&est)),
        iterations: cfg.max_iter,
    })
}

/// Hard-decision codeword decoding: syndrome-decodes `H y` and shifts the
/// recovered pattern back onto the received word.
pub fn gallager_codeword_decode(
    code: &LdpcCode,
    y: &BitVector,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let s = code.syndrome(y)?;
    let inner = gallager_decode(code, &s, cfg)?;
    Ok(DecodeResult {
        success: inner.success,
        estimate: y.xor(&inner.estimate)?,
        iterations: inner.iterations,
    })
}
