//! JSON form of obstruction certificates.

use serde::{Deserialize, Serialize};

use super::ladder::{LadderSpec, MultiplicativeSetFG};
use super::obstruction::{verify_certificate, CertificateCheck, ObstructionCertificate};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{parse_poly, PolyRing, Polynomial, Ring};

#[derive(Serialize, Deserialize)]
struct RingFile {
    vars: Vec<String>,
    characteristic: u32,
}

#[derive(Serialize, Deserialize)]
struct LadderFile {
    ring: RingFile,
    r: usize,
    ideals: Vec<Vec<String>>,
    mset_generators: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    ladder: LadderFile,
    picks: Vec<Vec<u32>>,
    coefficients: Vec<Vec<String>>,
    identity_hash: String,
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(Polynomial::to_canonical_string).collect()
}

/// Pretty JSON with a fixed field order and a trailing newline.
pub fn certificate_to_json(cert: &ObstructionCertificate) -> String {
    let ladder = cert.ladder();
    let file = CertificateFile {
        ladder: LadderFile {
            ring: RingFile {
                vars: ladder.ring().vars().to_vec(),
                characteristic: ladder.ring().characteristic(),
            },
            r: ladder.r(),
            ideals: ladder
                .ideals()
                .iter()
                .map(|i| strings(i.generators()))
                .collect(),
            mset_generators: ladder
                .msets()
                .iter()
                .map(|m| strings(m.generators()))
                .collect(),
        },
        picks: cert.picks().to_vec(),
        coefficients: cert.coefficients().iter().map(|row| strings(row)).collect(),
        identity_hash: cert.identity_hash(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

fn parse_all(ring: &Ring, texts: &[String]) -> Result<Vec<Polynomial>> {
    texts
        .iter()
        .map(|t| parse_poly(t, ring).map_err(Error::from))
        .collect()
}

/// Reads a certificate and the hash stored alongside it.
pub fn certificate_from_json(text: &str) -> Result<(ObstructionCertificate, String)> {
    let file: CertificateFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidCertificate(format!("malformed JSON: {e}")))?;
    let l = &file.ladder;
    let ring = PolyRing::new(&l.ring.vars, l.ring.characteristic)?;
    if l.ideals.len() != l.r + 1 {
        return Err(Error::InvalidCertificate(format!(
            "r = {} but {} ideals",
            l.r,
            l.ideals.len()
        )));
    }
    let ideals = l
        .ideals
        .iter()
        .map(|g| Ideal::new(&ring, parse_all(&ring, g)?))
        .collect::<Result<Vec<_>>>()?;
    let msets = l
        .mset_generators
        .iter()
        .map(|g| MultiplicativeSetFG::new(&ring, parse_all(&ring, g)?))
        .collect::<Result<Vec<_>>>()?;
    let ladder = LadderSpec::new(&ring, ideals, msets)?;
    let coefficients = file
        .coefficients
        .iter()
        .map(|row| parse_all(&ring, row))
        .collect::<Result<Vec<_>>>()?;
    let cert = ObstructionCertificate::new(ladder, file.picks, coefficients)?;
    Ok((cert, file.identity_hash))
}

/// Result of checking a certificate file.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateFileCheck {
    pub identity: CertificateCheck,
    /// The stored hash equals the hash recomputed from the file's content.
    pub hash_matches: bool,
}

impl CertificateFileCheck {
    pub fn is_valid(&self) -> bool {
        self.identity.is_valid() && self.hash_matches
    }
}

pub fn verify_certificate_json(text: &str) -> Result<CertificateFileCheck> {
    let (cert, stored) = certificate_from_json(text)?;
    Ok(CertificateFileCheck {
        identity: verify_certificate(&cert),
        hash_matches: cert.identity_hash() == stored,
    })
}
