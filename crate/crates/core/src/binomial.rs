//! Rendering lattice vectors as binomials `x^{u⁺} − c·x^{u⁻}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gluing::{
    basis_from_certificate, verify_certificate, CertificateViolation, Characteristic, GluingCertificate,
};
use crate::linalg::{pos_neg_parts, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error("the zero vector has no binomial")]
    ZeroVector,
    #[error("character values must be nonzero")]
    ZeroCharacter,
    #[error("{found} character values for {expected} generators")]
    CharacterLength { expected: usize, found: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(#[from] CertificateViolation),
}

/// Nonzero rational coefficients, one per certificate basis vector. Used for
/// display only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterAssignment(Vec<BigRational>);

impl CharacterAssignment {
    pub fn new(values: Vec<BigRational>) -> Result<Self, BinomialError> {
        if values.iter().any(Zero::is_zero) {
            return Err(BinomialError::ZeroCharacter);
        }
        Ok(CharacterAssignment(values))
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }
}

fn monomial(exponents: &[BigInt]) -> String {
    let factors: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| if e.is_one() { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

fn coefficient(c: &BigRational) -> String {
    if c.is_integer() && c.is_positive() {
        c.to_integer().to_string()
    } else {
        format!("({c})")
    }
}

/// `x^{u⁺} - c*x^{u⁻}` with variables `x1, x2, …`.
pub fn emit_binomial(u: &[BigInt], c: Option<&BigRational>) -> Result<String, BinomialError> {
    if u.iter().all(Zero::is_zero) {
        return Err(BinomialError::ZeroVector);
    }
    let (plus, minus) = pos_neg_parts(u);
    let head = monomial(&plus);
    let tail = monomial(&minus);
    let tail = match c {
        Some(c) if !c.is_one() => {
            if minus.iter().all(Zero::is_zero) {
                coefficient(c)
            } else {
                format!("{}*{tail}", coefficient(c))
            }
        }
        _ => tail,
    };
    Ok(format!("{head} - {tail}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialPresentation {
    pub variables: Vec<String>,
    pub generators: Vec<(Vec<BigInt>, BigRational)>,
    pub height: usize,
    pub characteristic: Characteristic,
}

impl BinomialPresentation {
    pub fn binomials(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|(u, c)| emit_binomial(u, Some(c)).expect("certificate vectors are nonzero"))
            .collect()
    }

    /// Generation holds only up to radical in positive characteristic.
    pub fn note(&self) -> Option<String> {
        match self.characteristic {
            Characteristic::Zero => None,
            Characteristic::Prime(p) => Some(format!("up to radical, characteristic {p}")),
        }
    }
}

impl fmt::Display for BinomialPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "height: {}", self.height)?;
        for b in self.binomials() {
            writeln!(f, "  {b}")?;
        }
        if let Some(note) = self.note() {
            writeln!(f, "generated {note}")?;
        }
        Ok(())
    }
}

/// Binomials of a verified certificate's basis.
pub fn presentation_report(
    l: &Lattice,
    cert: &GluingCertificate,
    ch: Characteristic,
    rho: Option<&CharacterAssignment>,
) -> Result<BinomialPresentation, BinomialError> {
    verify_certificate(l, cert, ch)?;
    let basis = basis_from_certificate(cert).expect("verified certificates are well formed");
    let coefficients: Vec<BigRational> = match rho {
        Some(r) if r.0.len() != basis.len() => {
            return Err(BinomialError::CharacterLength { expected: basis.len(), found: r.0.len() })
        }
        Some(r) => r.0.clone(),
        None => vec![BigRational::one(); basis.len()],
    };
    Ok(BinomialPresentation {
        variables: (1..=l.ambient_dim()).map(|i| format!("x{i}")).collect(),
        generators: basis.into_iter().zip(coefficients).collect(),
        height: l.rank(),
        characteristic: ch,
    })
}
