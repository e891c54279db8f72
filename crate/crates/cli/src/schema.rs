//! JSON file formats. Integers are decimal JSON numbers of any size (quoted
//! decimal strings are accepted too); coordinate indices are 1-based.

use std::fmt;
use std::str::FromStr;

use ci_lattice::gluing::GlueNode;
use ci_lattice::semigroup::GroupElement;
use ci_lattice::{Characteristic, GluingCertificate, IntMatrix, Lattice, SemigroupPresentation};
use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Arbitrary precision integer written as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s,
            other => return Err(D::Error::custom(format!("expected an integer, found {other}"))),
        };
        BigInt::from_str(text.trim()).map(Int).map_err(|_| D::Error::custom(format!("not an integer: {text}")))
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn bigs(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Lattice {
        ambient_dim: usize,
        generators: Vec<Vec<Int>>,
    },
    Semigroup {
        free_rank: usize,
        #[serde(default)]
        torsion_orders: Vec<Int>,
        generators: Vec<GeneratorRecord>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub free: Vec<Int>,
    #[serde(default)]
    pub torsion: Vec<Int>,
}

/// A parsed instance: the lattice to decide and, for semigroup input, the
/// presentation it came from.
pub struct Instance {
    pub lattice: Lattice,
    pub semigroup: Option<SemigroupPresentation>,
}

impl InstanceFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        InstanceFile::Lattice { ambient_dim: l.ambient_dim(), generators: l.basis().row_iter().map(ints).collect() }
    }

    pub fn into_instance(self) -> Result<Instance, CliError> {
        match self {
            InstanceFile::Lattice { ambient_dim, generators } => {
                if let Some((i, g)) = generators.iter().enumerate().find(|(_, g)| g.len() != ambient_dim) {
                    return Err(CliError::Input(format!(
                        "generator {} has {} entries, ambient_dim is {ambient_dim}",
                        i + 1,
                        g.len()
                    )));
                }
                let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| bigs(g)).collect();
                Ok(Instance { lattice: Lattice::from_vectors(ambient_dim, &rows), semigroup: None })
            }
            InstanceFile::Semigroup { free_rank, torsion_orders, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| GroupElement { free: bigs(&g.free), torsion: bigs(&g.torsion) })
                    .collect();
                let p = SemigroupPresentation::new(free_rank, bigs(&torsion_orders), gens)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let lattice = ci_lattice::semigroup::kernel_lattice(&p);
                Ok(Instance { lattice, semigroup: Some(p) })
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub cols: usize,
    pub entries: Vec<Vec<Int>>,
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<IntMatrix, CliError> {
        if self.cols > 64 {
            return Err(CliError::Input(format!("at most 64 columns are supported, got {}", self.cols)));
        }
        if let Some((i, row)) = self.entries.iter().enumerate().find(|(_, r)| r.len() != self.cols) {
            return Err(CliError::Input(format!("row {} has {} entries, cols is {}", i + 1, row.len(), self.cols)));
        }
        Ok(IntMatrix::from_bigint_rows(self.cols, self.entries.iter().map(|r| bigs(r)).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NodeRecord {
    Leaf {
        dim: usize,
    },
    Node {
        e1: Vec<usize>,
        e2: Vec<usize>,
        u: Vec<Int>,
        index_exponent: u32,
        left: Box<NodeRecord>,
        right: Box<NodeRecord>,
    },
}

impl NodeRecord {
    pub fn from_certificate(c: &GluingCertificate) -> Self {
        match c {
            GluingCertificate::Leaf { dim } => NodeRecord::Leaf { dim: *dim },
            GluingCertificate::Node(n) => NodeRecord::Node {
                e1: n.e1.iter().map(|i| i + 1).collect(),
                e2: n.e2.iter().map(|i| i + 1).collect(),
                u: ints(&n.u),
                index_exponent: n.index_exponent,
                left: Box::new(Self::from_certificate(&n.left)),
                right: Box::new(Self::from_certificate(&n.right)),
            },
        }
    }

    pub fn to_certificate(&self) -> Result<GluingCertificate, CliError> {
        match self {
            NodeRecord::Leaf { dim } => Ok(GluingCertificate::Leaf { dim: *dim }),
            NodeRecord::Node { e1, e2, u, index_exponent, left, right } => {
                let zero_based = |side: &[usize]| -> Result<Vec<usize>, CliError> {
                    side.iter()
                        .map(|&i| {
                            i.checked_sub(1).ok_or_else(|| CliError::Input("coordinate indices start at 1".into()))
                        })
                        .collect()
                };
                Ok(GluingCertificate::Node(Box::new(GlueNode {
                    e1: zero_based(e1)?,
                    e2: zero_based(e2)?,
                    u: bigs(u),
                    index_exponent: *index_exponent,
                    left: left.to_certificate()?,
                    right: right.to_certificate()?,
                })))
            }
        }
    }
}

/// Certificate header plus tree. `root` is null when there is nothing to
/// certify; extra fields (as in `decide --format machine`) are ignored.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub characteristic: u64,
    pub ambient_dim: usize,
    pub root: Option<NodeRecord>,
}

impl CertificateFile {
    pub fn characteristic(&self) -> Result<Characteristic, CliError> {
        Characteristic::from_u64(self.characteristic)
            .ok_or_else(|| CliError::Input(format!("characteristic {} is neither 0 nor a prime", self.characteristic)))
    }

    pub fn certificate(&self) -> Result<GluingCertificate, CliError> {
        let cert = self
            .root
            .as_ref()
            .ok_or_else(|| CliError::Input("certificate file has no root".into()))?
            .to_certificate()?;
        if cert.dim() != self.ambient_dim {
            return Err(CliError::Input(format!(
                "certificate root covers {} coordinates, header says {}",
                cert.dim(),
                self.ambient_dim
            )));
        }
        Ok(cert)
    }
}

/// `{1, 2, 3}` with 1-based labels.
pub struct Labels<'a>(pub &'a [usize]);

impl fmt::Display for Labels<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

pub fn int_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Int>> {
    rows.iter().map(|r| ints(r)).collect()
}

pub fn int_vec(v: &[BigInt]) -> Vec<Int> {
    ints(v)
}
