//! The fuzzy commitment and syndrome fuzzy hashing schemes.
//!
//! Both schemes store a SHA-256 digest plus error-correction side
//! information instead of the template itself:
//!
//! - syndrome fuzzy hashing stores `(H_a(x), H x)`; verification syndrome-
//!   decodes `H x - H y = H(x - y)` and checks the digest of the repaired
//!   probe,
//! - fuzzy commitment stores `(H_a(r_x), x - r_x)` for a random codeword
//!   `r_x`; verification decodes `y - l` back to a codeword and compares
//!   digests.
//!
//! Access is granted only when the decoder reports success *and* the digest
//! matches; a decoder that lands on the wrong coset member is caught by the
//! digest comparison. The syndrome record stores `r` payload bits against
//! the commitment's `n`.
//!
//! Records serialize to a line-oriented text form that is bit-exact across
//! platforms (lowercase hex, LF separators); see [`EnrollmentRecord::serialize`].

use crate::bits::BitVector;
use crate::decoder::{
    gallager_codeword_decode, gallager_decode, spa_decode, spa_syndrome_decode, DecoderConfig,
    DecoderVariant,
};
use crate::error::{Error, Result};
use crate::sparse::{encode_systematic, LdpcCode};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// Template-protection scheme tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    SyndromeFuzzyHash,
    FuzzyCommitment,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::SyndromeFuzzyHash => "syndrome-fuzzy-hash",
            Scheme::FuzzyCommitment => "fuzzy-commitment",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "syndrome-fuzzy-hash" => Ok(Scheme::SyndromeFuzzyHash),
            "fuzzy-commitment" => Ok(Scheme::FuzzyCommitment),
            other => Err(Error::InvalidParameter(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Identifies the code a record was made with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeRef {
    pub id: String,
    pub n: usize,
    pub r: usize,
}

/// Persisted output of enrollment. The template itself is never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrollmentRecord {
    pub scheme: Scheme,
    pub code_ref: CodeRef,
    pub hash_alg: String,
    pub digest: [u8; 32],
    /// `H x` (length `r`) for syndrome fuzzy hashing, the shift vector
    /// `x - r_x` (length `n`) for fuzzy commitment.
    pub payload: BitVector,
}

/// Verification outcome. `recovered` is the reconstructed template, present
/// only when access is granted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub granted: bool,
    pub recovered: Option<BitVector>,
    pub decoder_iterations: usize,
}

/// SHA-256 over the packed bits prefixed by the 8-byte big-endian bit length.
pub fn template_digest(x: &BitVector) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update((x.len() as u64).to_be_bytes());
    hasher.update(x.as_bytes());
    hasher.finalize().into()
}

const RECORD_VERSION: u32 = 1;
const HASH_ALG: &str = "SHA-256";

impl EnrollmentRecord {
    /// Line-oriented text form:
    ///
    /// ```text
    /// version: 1
    /// scheme: syndrome-fuzzy-hash
    /// code_id: <hex id>
    /// code_n: <n>
    /// code_r: <r>
    /// hash_alg: SHA-256
    /// digest_hex: <64 hex chars>
    /// payload_hex: <packed payload>
    /// ```
    pub fn serialize(&self) -> String {
        format!(
            "version: {}\nscheme: {}\ncode_id: {}\ncode_n: {}\ncode_r: {}\nhash_alg: {}\ndigest_hex: {}\npayload_hex: {}\n",
            RECORD_VERSION,
            self.scheme.as_str(),
            self.code_ref.id,
            self.code_ref.n,
            self.code_ref.r,
            self.hash_alg,
            hex::encode(self.digest),
            self.payload.to_hex(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::RecordParse(format!("malformed line {line:?}")))?;
            fields.insert(key.trim().to_string(), value.trim().to_string());
        }
        let get = |k: &str| -> Result<&String> {
            fields
                .get(k)
                .ok_or_else(|| Error::RecordParse(format!("missing field {k}")))
        };
        let version: u32 = get("version")?
            .parse()
            .map_err(|_| Error::RecordParse("bad version".into()))?;
        if version != RECORD_VERSION {
            return Err(Error::RecordParse(format!(
                "unsupported record version {version}"
            )));
        }
        let scheme: Scheme = get("scheme")?.parse()?;
        let n: usize = get("code_n")?
            .parse()
            .map_err(|_| Error::RecordParse("bad code_n".into()))?;
        let r: usize = get("code_r")?
            .parse()
            .map_err(|_| Error::RecordParse("bad code_r".into()))?;
        let hash_alg = get("hash_alg")?.clone();
        if hash_alg != HASH_ALG {
            return Err(Error::RecordParse(format!(
                "unsupported hash algorithm {hash_alg}"
            )));
        }
        let digest_vec = hex::decode(get("digest_hex")?)
            .map_err(|e| Error::RecordParse(format!("bad digest hex: {e}")))?;
        let digest: [u8; 32] = digest_vec
            .try_into()
            .map_err(|_| Error::RecordParse("digest must be 32 bytes".into()))?;
        let payload_len = match scheme {
            Scheme::SyndromeFuzzyHash => r,
            Scheme::FuzzyCommitment => n,
        };
        let payload = BitVector::from_hex(get("payload_hex")?, payload_len)
            .map_err(|e| Error::RecordParse(format!("bad payload: {e}")))?;
        Ok(EnrollmentRecord {
            scheme,
            code_ref: CodeRef {
                id: get("code_id")?.clone(),
                n,
                r,
            },
            hash_alg,
            digest,
            payload,
        })
    }

    fn check_code(&self, code: &LdpcCode) -> Result<()> {
        let given = code.content_id();
        if self.code_ref.id != given || self.code_ref.n != code.n() || self.code_ref.r != code.r()
        {
            return Err(Error::CodeMismatch {
                record: format!(
                    "{} (n={}, r={})",
                    self.code_ref.id, self.code_ref.n, self.code_ref.r
                ),
                given: format!("{} (n={}, r={})", given, code.n(), code.r()),
            });
        }
        Ok(())
    }
}

fn code_ref(code: &LdpcCode) -> CodeRef {
    CodeRef {
        id: code.content_id(),
        n: code.n(),
        r: code.r(),
    }
}

/// Syndrome-fuzzy-hash enrollment: stores `(H_a(x), H x)`.
pub fn fh_enroll(code: &LdpcCode, x: &BitVector) -> Result<EnrollmentRecord> {
    if x.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: x.len(),
        });
    }
    Ok(EnrollmentRecord {
        scheme: Scheme::SyndromeFuzzyHash,
        code_ref: code_ref(code),
        hash_alg: HASH_ALG.to_string(),
        digest: template_digest(x),
        payload: code.syndrome(x)?,
    })
}

/// Syndrome-fuzzy-hash verification of a probe `y`.
///
/// Computes `s = H x + H y`, syndrome-decodes it to a difference estimate
/// `w`, reconstructs `x' = w + y` and grants access iff the decoder
/// succeeded and `H_a(x')` equals the stored digest.
pub fn fh_verify(
    code: &LdpcCode,
    record: &EnrollmentRecord,
    y: &BitVector,
    cfg: &DecoderConfig,
) -> Result<VerifyOutcome> {
    if record.scheme != Scheme::SyndromeFuzzyHash {
        return Err(Error::SchemeMismatch {
            record: record.scheme.as_str().into(),
            expected: Scheme::SyndromeFuzzyHash.as_str().into(),
        });
    }
    record.check_code(code)?;
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let s = record.payload.xor(&code.syndrome(y)?)?;
    let decode = match cfg.variant {
        DecoderVariant::Spa => spa_syndrome_decode(code, &s, cfg)?,
        _ => gallager_decode(code, &s, cfg)?,
    };
    let candidate = decode.estimate.xor(y)?;
    let granted = decode.success && template_digest(&candidate) == record.digest;
    Ok(VerifyOutcome {
        granted,
        recovered: granted.then_some(candidate),
        decoder_iterations: decode.iterations,
    })
}

/// Fuzzy-commitment enrollment: draws a random codeword `r_x` from `seed`
/// and stores `(H_a(r_x), x - r_x)`.
pub fn fc_enroll(code: &LdpcCode, x: &BitVector, seed: u64) -> Result<EnrollmentRecord> {
    if x.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: x.len(),
        });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let info = BitVector::random(code.k(), &mut rng);
    let r_x = encode_systematic(code, &info)?;
    Ok(EnrollmentRecord {
        scheme: Scheme::FuzzyCommitment,
        code_ref: code_ref(code),
        hash_alg: HASH_ALG.to_string(),
        digest: template_digest(&r_x),
        payload: x.xor(&r_x)?,
    })
}

/// Fuzzy-commitment verification of a probe `y`.
///
/// Decodes `z = y + l` to a codeword `c_z` and grants access iff decoding
/// succeeded and `H_a(c_z)` equals the stored digest. On grant the template
/// is reconstructed as `c_z + l`.
pub fn fc_verify(
    code: &LdpcCode,
    record: &EnrollmentRecord,
    y: &BitVector,
    cfg: &DecoderConfig,
) -> Result<VerifyOutcome> {
    if record.scheme != Scheme::FuzzyCommitment {
        return Err(Error::SchemeMismatch {
            record: record.scheme.as_str().into(),
            expected: Scheme::FuzzyCommitment.as_str().into(),
        });
    }
    record.check_code(code)?;
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let z = y.xor(&record.payload)?;
    let decode = match cfg.variant {
        DecoderVariant::Spa => spa_decode(code, &z, cfg)?,
        _ => gallager_codeword_decode(code, &z, cfg)?,
    };
    let granted = decode.success && template_digest(&decode.estimate) == record.digest;
    let recovered = if granted {
        Some(decode.estimate.xor(&record.payload)?)
    } else {
        None
    };
    Ok(VerifyOutcome {
        granted,
        recovered,
        decoder_iterations: decode.iterations,
    })
}
