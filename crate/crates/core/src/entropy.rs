//! Discrimination-entropy analysis of binary template sets.
//!
//! The discrimination entropy (degrees of freedom) of a set is estimated
//! from the distribution of normalized Hamming distances between template
//! pairs: `DOF = mu (1 - mu) / sigma^2`. Passing templates through the
//! syndrome map of a low-rate code mixes correlated bits and drives the
//! inter-class DOF toward the syndrome length, which is how the syndrome
//! scheme reduces the predictability of what it stores.
//!
//! Occlusion masks with per-reading support are replaced by a fixed
//! pseudomask: position `i` is kept when its erase frequency `m(i)` stays
//! below a threshold. A synthetic template generator stands in for real
//! biometric corpora, with optional block correlation so the raw sets show
//! the sub-maximal DOF that real templates do.

use crate::bits::{hamming_distance, BitVector};
use crate::error::{Error, Result};
use crate::sparse::LdpcCode;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// A set of equal-length templates with subject labels and optional
/// per-reading occlusion masks (mask bit 1 = position erased).
#[derive(Debug, Clone, PartialEq)]
pub struct TemplateSet {
    templates: Vec<BitVector>,
    labels: Vec<String>,
    masks: Option<Vec<BitVector>>,
}

impl TemplateSet {
    pub fn new(
        templates: Vec<BitVector>,
        labels: Vec<String>,
        masks: Option<Vec<BitVector>>,
    ) -> Result<Self> {
        if templates.is_empty() {
            return Err(Error::TemplateSet("empty template list".into()));
        }
        let len = templates[0].len();
        if templates.iter().any(|t| t.len() != len) {
            return Err(Error::TemplateSet("templates differ in length".into()));
        }
        if labels.len() != templates.len() {
            return Err(Error::TemplateSet(format!(
                "{} labels for {} templates",
                labels.len(),
                templates.len()
            )));
        }
        if let Some(masks) = &masks {
            if masks.len() != templates.len() || masks.iter().any(|m| m.len() != len) {
                return Err(Error::TemplateSet(
                    "masks must match template count and length".into(),
                ));
            }
        }
        Ok(TemplateSet {
            templates,
            labels,
            masks,
        })
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn template_len(&self) -> usize {
        self.templates[0].len()
    }

    pub fn templates(&self) -> &[BitVector] {
        &self.templates
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn masks(&self) -> Option<&[BitVector]> {
        self.masks.as_deref()
    }

    /// Template file body: header `FTPL1 <count> <length>`, then one
    /// hex-packed template per line.
    pub fn encode_templates(&self) -> String {
        let mut out = format!("FTPL1 {} {}\n", self.len(), self.template_len());
        for t in &self.templates {
            out.push_str(&t.to_hex());
            out.push('\n');
        }
        out
    }

    /// Mask file body, identical layout to the template file.
    pub fn encode_masks(&self) -> Option<String> {
        self.masks.as_ref().map(|masks| {
            let mut out = format!("FTPL1 {} {}\n", masks.len(), self.template_len());
            for m in masks {
                out.push_str(&m.to_hex());
                out.push('\n');
            }
            out
        })
    }

    /// Labels file body: line `i` holds the subject id of template `i`.
    pub fn encode_labels(&self) -> String {
        let mut out = String::new();
        for l in &self.labels {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    /// Parses a template (or mask) file body.
    pub fn decode_vectors(text: &str) -> Result<Vec<BitVector>> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::TemplateSet("empty file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "FTPL1" {
            return Err(Error::TemplateSet(format!("bad header {header:?}")));
        }
        let count: usize = parts[1]
            .parse()
            .map_err(|_| Error::TemplateSet("bad count".into()))?;
        let len: usize = parts[2]
            .parse()
            .map_err(|_| Error::TemplateSet("bad length".into()))?;
        let mut vectors = Vec::with_capacity(count);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            vectors.push(BitVector::from_hex(line, len)?);
        }
        if vectors.len() != count {
            return Err(Error::TemplateSet(format!(
                "header claims {count} templates, file holds {}",
                vectors.len()
            )));
        }
        Ok(vectors)
    }

    /// Parses a labels file body (one label per line).
    pub fn decode_labels(text: &str) -> Vec<String> {
        text.lines().map(|l| l.trim().to_string()).collect()
    }
}

/// Which template pairs to compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Pairs of readings with the same label.
    Intra,
    /// Pairs of readings with different labels.
    Inter,
}

impl std::str::FromStr for PairMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intra" => Ok(PairMode::Intra),
            "inter" => Ok(PairMode::Inter),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// A fixed global bit selection derived from mask statistics.
///
/// `m[i]` is the erase frequency of position `i` under the default rule
/// ([`MaskRule::EraseFrequency`]); `kept` lists the positions with
/// `m[i] <= m_th`, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Pseudomask {
    pub kept: Vec<usize>,
    pub m: Vec<f64>,
    pub m_th: f64,
}

/// How the per-position statistic `m(i)` is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaskRule {
    /// `m(i)` = fraction of readings that erase position `i`; keep
    /// `m(i) <= m_th`. Keeps near-always-valid bits.
    #[default]
    EraseFrequency,
    /// `m(i)` = fraction of readings that do NOT erase position `i`; keep
    /// `m(i) <= m_th`. Keeps near-always-erased bits; retained for
    /// comparison with the other reading of the selection rule.
    NotErasedFrequency,
}

/// Derives a pseudomask from per-reading masks with the default rule.
pub fn pseudomask_from_masks(masks: &[BitVector], m_th: f64) -> Result<Pseudomask> {
    pseudomask_from_masks_with_rule(masks, m_th, MaskRule::EraseFrequency)
}

/// Derives a pseudomask under an explicit [`MaskRule`].
pub fn pseudomask_from_masks_with_rule(
    masks: &[BitVector],
    m_th: f64,
    rule: MaskRule,
) -> Result<Pseudomask> {
    if masks.is_empty() {
        return Err(Error::EmptyInput("mask list".into()));
    }
    let len = masks[0].len();
    if masks.iter().any(|m| m.len() != len) {
        return Err(Error::TemplateSet("masks differ in length".into()));
    }
    let total = masks.len() as f64;
    let mut m = vec![0.0f64; len];
    for mask in masks {
        for (i, mi) in m.iter_mut().enumerate() {
            if mask.get(i) {
                *mi += 1.0;
            }
        }
    }
    for mi in m.iter_mut() {
        *mi /= total;
        if rule == MaskRule::NotErasedFrequency {
            *mi = 1.0 - *mi;
        }
    }
    let kept: Vec<usize> = (0..len).filter(|&i| m[i] <= m_th).collect();
    Ok(Pseudomask { kept, m, m_th })
}

fn masked_distance(a: &BitVector, b: &BitVector, kept: &[usize]) -> f64 {
    let mut diff = 0usize;
    for &i in kept {
        if a.get(i) != b.get(i) {
            diff += 1;
        }
    }
    diff as f64 / kept.len() as f64
}

/// Normalized Hamming distances over all unordered pairs of the requested
/// mode, optionally restricted to a pseudomask's kept positions.
pub fn pairwise_distances(
    set: &TemplateSet,
    mode: PairMode,
    pseudomask: Option<&Pseudomask>,
) -> Result<Vec<f64>> {
    if set.len() < 2 {
        return Err(Error::TemplateSet("need at least two templates".into()));
    }
    if let Some(pm) = pseudomask {
        if pm.kept.is_empty() {
            return Err(Error::TemplateSet("pseudomask keeps no positions".into()));
        }
    }
    let n = set.template_len() as f64;
    let mut out = Vec::new();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let same = set.labels[i] == set.labels[j];
            if same != (mode == PairMode::Intra) {
                continue;
            }
            let d = match pseudomask {
                Some(pm) => masked_distance(&set.templates[i], &set.templates[j], &pm.kept),
                None => hamming_distance(&set.templates[i], &set.templates[j])? as f64 / n,
            };
            out.push(d);
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyInput(format!(
            "no {} pairs in the set",
            match mode {
                PairMode::Intra => "intra-class",
                PairMode::Inter => "inter-class",
            }
        )));
    }
    Ok(out)
}

/// Discrimination entropy `mu (1 - mu) / sigma^2`.
pub fn dof(mu: f64, sigma: f64) -> Result<f64> {
    if sigma <= 0.0 {
        return Err(Error::InvalidParameter(
            "standard deviation must be positive".into(),
        ));
    }
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "mean distance must lie in (0,1), got {mu}"
        )));
    }
    Ok(mu * (1.0 - mu) / (sigma * sigma))
}

/// Distance statistics of one pair population.
#[derive(Debug, Clone, PartialEq)]
pub struct DofReport {
    pub mu: f64,
    pub sigma: f64,
    pub dof: f64,
    pub pair_count: usize,
}

/// Sample mean/standard deviation (two-pass, Bessel-corrected) and the DOF.
pub fn dof_report(distances: &[f64]) -> Result<DofReport> {
    if distances.len() < 2 {
        return Err(Error::EmptyInput(
            "need at least two distances for a variance".into(),
        ));
    }
    let n = distances.len() as f64;
    let mu = distances.iter().sum::<f64>() / n;
    let var = distances.iter().map(|d| (d - mu) * (d - mu)).sum::<f64>() / (n - 1.0);
    let sigma = var.sqrt();
    Ok(DofReport {
        mu,
        sigma,
        dof: dof(mu, sigma)?,
        pair_count: distances.len(),
    })
}

/// Histogram of distances over `bins` uniform cells on `[0, 1]`, as CSV
/// rows `bin_low,bin_high,count`.
pub fn distance_histogram_csv(distances: &[f64], bins: usize) -> String {
    let mut counts = vec![0usize; bins];
    for &d in distances {
        let idx = ((d * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let mut out = String::from("bin_low,bin_high,count\n");
    for (i, c) in counts.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            i as f64 / bins as f64,
            (i + 1) as f64 / bins as f64,
            c
        ));
    }
    out
}

/// Empirical BSC transition estimates over aligned (reference, probe) pairs:
/// `p_1to0` is the fraction of reference ones observed as zero in the probe,
/// `p_0to1` the reverse.
pub fn transition_probabilities(pairs: &[(BitVector, BitVector)]) -> Result<(f64, f64)> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput("pair list".into()));
    }
    let mut ones = 0usize;
    let mut zeros = 0usize;
    let mut one_to_zero = 0usize;
    let mut zero_to_one = 0usize;
    for (reference, probe) in pairs {
        if reference.len() != probe.len() {
            return Err(Error::LengthMismatch {
                expected: reference.len(),
                got: probe.len(),
            });
        }
        for i in 0..reference.len() {
            match (reference.get(i), probe.get(i)) {
                (true, b) => {
                    ones += 1;
                    one_to_zero += usize::from(!b);
                }
                (false, b) => {
                    zeros += 1;
                    zero_to_one += usize::from(b);
                }
            }
        }
    }
    if ones == 0 || zeros == 0 {
        return Err(Error::InvalidParameter(
            "references carry no ones or no zeros".into(),
        ));
    }
    Ok((
        one_to_zero as f64 / ones as f64,
        zero_to_one as f64 / zeros as f64,
    ))
}

/// Base-template model of the synthetic generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseModel {
    /// Independent uniform bits; inter-class DOF approaches the template
    /// length.
    #[default]
    Uniform,
    /// Uniform bits repeated in blocks of the given length; inter-class DOF
    /// approaches `length / block_len`, mimicking the correlated bits of
    /// real templates.
    BlockRepeat { block_len: usize },
}

/// Per-reading mask model of the synthetic generator.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum MaskModel {
    #[default]
    None,
    /// Every position erased independently with one probability.
    Uniform(f64),
    /// Position `i` erased independently with probability `p[i]`.
    PerPosition(Vec<f64>),
}

/// Parameters of the synthetic template generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub subjects: usize,
    pub readings_per_subject: usize,
    pub length: usize,
    /// Intra-class BSC flip probability between a subject's base template
    /// and each reading.
    pub intra_p: f64,
    pub base_model: BaseModel,
    pub mask_model: MaskModel,
    pub seed: u64,
}

/// Generates a deterministic synthetic template set: one base template per
/// subject, each reading an independently noised copy of its base.
pub fn synth_generate(cfg: &SynthConfig) -> Result<TemplateSet> {
    if cfg.subjects == 0 || cfg.readings_per_subject == 0 || cfg.length == 0 {
        return Err(Error::InvalidParameter(
            "subjects, readings and length must be positive".into(),
        ));
    }
    if !(0.0..=1.0).contains(&cfg.intra_p) {
        return Err(Error::InvalidParameter(format!(
            "intra_p must lie in [0,1], got {}",
            cfg.intra_p
        )));
    }
    if let BaseModel::BlockRepeat { block_len } = cfg.base_model {
        if block_len == 0 {
            return Err(Error::InvalidParameter("block_len must be >= 1".into()));
        }
    }
    if let MaskModel::PerPosition(p) = &cfg.mask_model {
        if p.len() != cfg.length {
            return Err(Error::LengthMismatch {
                expected: cfg.length,
                got: p.len(),
            });
        }
    }

    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let mut templates = Vec::with_capacity(cfg.subjects * cfg.readings_per_subject);
    let mut labels = Vec::with_capacity(templates.capacity());
    let mut masks = Vec::new();

    for subject in 0..cfg.subjects {
        let base = match cfg.base_model {
            BaseModel::Uniform => BitVector::random(cfg.length, &mut rng),
            BaseModel::BlockRepeat { block_len } => {
                let blocks = cfg.length.div_ceil(block_len);
                let seed_bits = BitVector::random(blocks, &mut rng);
                let mut t = BitVector::zeros(cfg.length);
                for i in 0..cfg.length {
                    if seed_bits.get(i / block_len) {
                        t.set(i, true);
                    }
                }
                t
            }
        };
        for _ in 0..cfg.readings_per_subject {
            let mut reading = base.clone();
            if cfg.intra_p > 0.0 {
                for i in 0..cfg.length {
                    if rng.gen::<f64>() < cfg.intra_p {
                        reading.flip(i);
                    }
                }
            }
            templates.push(reading);
            labels.push(format!("s{subject:04}"));
            match &cfg.mask_model {
                MaskModel::None => {}
                MaskModel::Uniform(p) => {
                    let mut m = BitVector::zeros(cfg.length);
                    for i in 0..cfg.length {
                        if rng.gen::<f64>() < *p {
                            m.set(i, true);
                        }
                    }
                    masks.push(m);
                }
                MaskModel::PerPosition(ps) => {
                    let mut m = BitVector::zeros(cfg.length);
                    for (i, &p) in ps.iter().enumerate() {
                        if rng.gen::<f64>() < p {
                            m.set(i, true);
                        }
                    }
                    masks.push(m);
                }
            }
        }
    }

    let masks = match cfg.mask_model {
        MaskModel::None => None,
        _ => Some(masks),
    };
    TemplateSet::new(templates, labels, masks)
}

/// Maps every template to its syndrome under `code`, then reports the DOF
/// of the inter-class syndrome distances.
pub fn syndrome_set_analysis(set: &TemplateSet, code: &LdpcCode) -> Result<DofReport> {
    if set.template_len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: set.template_len(),
        });
    }
    let syndromes: Vec<BitVector> = set
        .templates
        .iter()
        .map(|t| code.syndrome(t))
        .collect::<Result<_>>()?;
    let synd_set = TemplateSet::new(syndromes, set.labels.clone(), None)?;
    let distances = pairwise_distances(&synd_set, PairMode::Inter, None)?;
    dof_report(&distances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peg::{peg_construct, PegConfig};

    fn tiny_set() -> TemplateSet {
        TemplateSet::new(
            vec![
                BitVector::parse_bits("1100").unwrap(),
                BitVector::parse_bits("1100").unwrap(),
                BitVector::parse_bits("0011").unwrap(),
            ],
            vec!["a".into(), "a".into(), "b".into()],
            None,
        )
        .unwrap()
    }

    #[test]
    fn identical_intra_pair_has_distance_zero() {
        let d = pairwise_distances(&tiny_set(), PairMode::Intra, None).unwrap();
        assert_eq!(d, vec![0.0]);
    }

    #[test]
    fn complement_inter_pair_has_distance_one() {
        let d = pairwise_distances(&tiny_set(), PairMode::Inter, None).unwrap();
        assert_eq!(d, vec![1.0, 1.0]);
    }

    #[test]
    fn three_readings_make_three_intra_pairs() {
        let set = TemplateSet::new(
            vec![BitVector::zeros(8); 3],
            vec!["x".into(); 3],
            None,
        )
        .unwrap();
        let d = pairwise_distances(&set, PairMode::Intra, None).unwrap();
        assert_eq!(d.len(), 3);
        assert!(pairwise_distances(&set, PairMode::Inter, None).is_err());
    }

    #[test]
    fn dof_reproduces_published_pairs() {
        assert!((dof(0.4897, 0.0281).unwrap() - 316.5).abs() <= 0.5);
        assert!((dof(0.4932, 0.0166).unwrap() - 907.1).abs() <= 0.5);
        assert!((dof(0.2824, 0.0435).unwrap() - 107.0).abs() <= 1.5);
        assert!((dof(0.262, 0.0486).unwrap() - 81.0).abs() <= 1.5);
    }

    #[test]
    fn dof_rejects_degenerate_inputs() {
        assert!(dof(0.5, 0.0).is_err());
        assert!(dof(0.0, 0.1).is_err());
        assert!(dof(1.0, 0.1).is_err());
    }

    #[test]
    fn dof_is_invariant_under_pair_order() {
        let mut d = vec![0.4, 0.45, 0.5, 0.55, 0.6];
        let a = dof_report(&d).unwrap();
        d.reverse();
        let b = dof_report(&d).unwrap();
        assert_eq!(a.dof, b.dof);
    }

    #[test]
    fn pseudomask_rules() {
        // position 0 erased in 1 of 10 readings -> excluded at 2.4%
        let mut masks = vec![BitVector::zeros(4); 10];
        masks[0].set(0, true);
        let pm = pseudomask_from_masks(&masks, 0.024).unwrap();
        assert_eq!(pm.kept, vec![1, 2, 3]);
        assert!((pm.m[0] - 0.1).abs() < 1e-12);

        // all-zero masks keep every position
        let masks = vec![BitVector::zeros(4); 41];
        let pm = pseudomask_from_masks(&masks, 0.024).unwrap();
        assert_eq!(pm.kept, vec![0, 1, 2, 3]);

        // the literal reading keeps almost-always-erased bits instead
        let mut masks = vec![BitVector::zeros(4); 10];
        for m in masks.iter_mut() {
            m.set(2, true);
        }
        let pm =
            pseudomask_from_masks_with_rule(&masks, 0.024, MaskRule::NotErasedFrequency).unwrap();
        assert_eq!(pm.kept, vec![2]);
    }

    #[test]
    fn pseudomask_restriction_matches_unrestricted_when_all_kept() {
        let set = tiny_set();
        let pm = Pseudomask {
            kept: (0..4).collect(),
            m: vec![0.0; 4],
            m_th: 0.1,
        };
        let a = pairwise_distances(&set, PairMode::Inter, Some(&pm)).unwrap();
        let b = pairwise_distances(&set, PairMode::Inter, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn transition_probability_examples() {
        let id = vec![(
            BitVector::parse_bits("1010").unwrap(),
            BitVector::parse_bits("1010").unwrap(),
        )];
        assert_eq!(transition_probabilities(&id).unwrap(), (0.0, 0.0));

        let comp = vec![(
            BitVector::parse_bits("1010").unwrap(),
            BitVector::parse_bits("0101").unwrap(),
        )];
        assert_eq!(transition_probabilities(&comp).unwrap(), (1.0, 1.0));

        let hand = vec![(
            BitVector::parse_bits("1100").unwrap(),
            BitVector::parse_bits("1010").unwrap(),
        )];
        assert_eq!(transition_probabilities(&hand).unwrap(), (0.5, 0.5));
    }

    #[test]
    fn transitions_of_symmetric_noise_balance_out() {
        let cfg = SynthConfig {
            subjects: 1,
            readings_per_subject: 2,
            length: 100_000,
            intra_p: 0.25,
            base_model: BaseModel::Uniform,
            mask_model: MaskModel::None,
            seed: 5,
        };
        let set = synth_generate(&cfg).unwrap();
        let pairs = vec![(set.templates()[0].clone(), set.templates()[1].clone())];
        let (p10, p01) = transition_probabilities(&pairs).unwrap();
        // both readings carry independent BSC(0.25) noise, so they differ
        // per position with probability 2 * 0.25 * 0.75
        let expect: f64 = 2.0 * 0.25 * 0.75;
        let sigma = (expect * (1.0 - expect) / 50_000.0).sqrt();
        assert!((p10 - expect).abs() < 3.0 * sigma, "p10 {p10}");
        assert!((p01 - expect).abs() < 3.0 * sigma, "p01 {p01}");
        assert!((p10 - p01).abs() < 6.0 * sigma);
    }

    #[test]
    fn synth_zero_noise_repeats_the_base() {
        let cfg = SynthConfig {
            subjects: 2,
            readings_per_subject: 3,
            length: 64,
            intra_p: 0.0,
            base_model: BaseModel::Uniform,
            mask_model: MaskModel::None,
            seed: 1,
        };
        let set = synth_generate(&cfg).unwrap();
        let d = pairwise_distances(&set, PairMode::Intra, None).unwrap();
        assert!(d.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn synth_statistics_match_the_models() {
        let cfg = SynthConfig {
            subjects: 2,
            readings_per_subject: 2,
            length: 10_000,
            intra_p: 0.28,
            base_model: BaseModel::Uniform,
            mask_model: MaskModel::None,
            seed: 2,
        };
        let set = synth_generate(&cfg).unwrap();
        let intra = pairwise_distances(&set, PairMode::Intra, None).unwrap();
        let mean_inter: f64 = pairwise_distances(&set, PairMode::Inter, None)
            .unwrap()
            .iter()
            .sum::<f64>()
            / 4.0;
        // two independent BSC(0.28) passes differ with prob 2*0.28*0.72
        let expect: f64 = 2.0 * 0.28 * 0.72;
        let sigma = (expect * (1.0 - expect) / 10_000.0).sqrt();
        for d in intra {
            assert!((d - expect).abs() < 4.0 * sigma, "intra {d}");
        }
        assert!((mean_inter - 0.5).abs() < 0.02, "inter {mean_inter}");
    }

    #[test]
    fn synth_is_seed_deterministic() {
        let cfg = SynthConfig {
            subjects: 3,
            readings_per_subject: 2,
            length: 256,
            intra_p: 0.1,
            base_model: BaseModel::BlockRepeat { block_len: 4 },
            mask_model: MaskModel::Uniform(0.05),
            seed: 7,
        };
        assert_eq!(synth_generate(&cfg).unwrap(), synth_generate(&cfg).unwrap());
    }

    #[test]
    fn syndrome_map_collapses_codeword_shifts() {
        let code = peg_construct(&PegConfig {
            n: 120,
            r: 100,
            dv: 3,
            lower_triangular: true,
            seed: 4,
        })
        .unwrap();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(8);
        let x = BitVector::random(code.n(), &mut rng);
        let info = BitVector::random(code.k(), &mut rng);
        let c = crate::sparse::encode_systematic(&code, &info).unwrap();
        let shifted = x.xor(&c).unwrap();
        assert_ne!(x, shifted);
        let set = TemplateSet::new(
            vec![x, shifted],
            vec!["a".into(), "b".into()],
            None,
        )
        .unwrap();
        let syndromes: Vec<BitVector> = set
            .templates()
            .iter()
            .map(|t| code.syndrome(t).unwrap())
            .collect();
        assert_eq!(syndromes[0], syndromes[1]);
    }

    #[test]
    fn syndrome_analysis_raises_dof_of_correlated_sets() {
        let code = peg_construct(&PegConfig {
            n: 1200,
            r: 1080,
            dv: 5,
            lower_triangular: false,
            seed: 3,
        })
        .unwrap();
        let cfg = SynthConfig {
            subjects: 40,
            readings_per_subject: 1,
            length: 1200,
            intra_p: 0.0,
            base_model: BaseModel::BlockRepeat { block_len: 8 },
            mask_model: MaskModel::None,
            seed: 9,
        };
        let set = synth_generate(&cfg).unwrap();
        let raw = dof_report(&pairwise_distances(&set, PairMode::Inter, None).unwrap()).unwrap();
        let synd = syndrome_set_analysis(&set, &code).unwrap();
        // raw DOF tracks n / block_len, syndrome DOF tracks r
        assert!(raw.dof < 400.0, "raw DOF {}", raw.dof);
        assert!(synd.dof > raw.dof, "syndrome {} raw {}", synd.dof, raw.dof);
    }

    #[test]
    fn template_file_round_trip() {
        let cfg = SynthConfig {
            subjects: 2,
            readings_per_subject: 2,
            length: 37,
            intra_p: 0.2,
            base_model: BaseModel::Uniform,
            mask_model: MaskModel::Uniform(0.1),
            seed: 11,
        };
        let set = synth_generate(&cfg).unwrap();
        let vectors = TemplateSet::decode_vectors(&set.encode_templates()).unwrap();
        assert_eq!(vectors, set.templates());
        let masks = TemplateSet::decode_vectors(&set.encode_masks().unwrap()).unwrap();
        assert_eq!(Some(masks.as_slice()), set.masks());
        let labels = TemplateSet::decode_labels(&set.encode_labels());
        assert_eq!(labels, set.labels());
    }

    #[test]
    fn template_file_rejects_bad_headers() {
        assert!(TemplateSet::decode_vectors("").is_err());
        assert!(TemplateSet::decode_vectors("FTPL2 1 8\nff\n").is_err());
        assert!(TemplateSet::decode_vectors("FTPL1 2 8\nff\n").is_err());
    }

    #[test]
    fn histogram_covers_all_distances() {
        let csv = distance_histogram_csv(&[0.0, 0.5, 0.999, 1.0], 100);
        let total: usize = csv
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
            .sum();
        assert_eq!(total, 4);
        assert_eq!(csv.lines().count(), 101);
    }
}
