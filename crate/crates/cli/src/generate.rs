use ci_lattice::mixed::block_compose;
use ci_lattice::{ci_decide, stci_decide, Characteristic, IntMatrix, Lattice};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::schema::{InstanceFile, Int};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct GenerateParams {
    pub seed: u64,
    pub rank: usize,
    pub cols: usize,
    pub characteristic: Characteristic,
    pub perturb_exp: u32,
    pub max_exp: u32,
}

/// Verdicts computed for the generated instance.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectedRecord {
    pub seed: u64,
    pub rank: usize,
    pub cols: usize,
    pub characteristic: u64,
    pub perturb_exp: u32,
    /// Index of the instance in the unperturbed block composed lattice.
    pub index: Int,
    pub ci: String,
    pub stci: Option<String>,
}

pub struct Generated {
    pub instance: InstanceFile,
    pub expected: ExpectedRecord,
}

fn nonneg_nonzero(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigInt> {
    loop {
        let v: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.gen_range(0..=3))).collect();
        if v.iter().any(|x| *x != BigInt::from(0)) {
            return v;
        }
    }
}

fn compose(rng: &mut ChaCha8Rng, r: usize, m: usize) -> IntMatrix {
    if r == 0 {
        return IntMatrix::empty(m);
    }
    let r1 = rng.gen_range(0..r);
    let r2 = r - 1 - r1;
    let m1 = rng.gen_range(r1 + 1..=m - r2 - 1);
    let a = compose(rng, r1, m1);
    let b = compose(rng, r2, m - m1);
    let up = nonneg_nonzero(rng, m1);
    let um = nonneg_nonzero(rng, m - m1);
    block_compose(&a, &b, &up, &um).expect("glue parts are nonnegative and nonzero")
}

/// A random `r × r` matrix of determinant `±det`.
fn with_determinant(rng: &mut ChaCha8Rng, r: usize, det: &BigInt) -> IntMatrix {
    let unimodular = |rng: &mut ChaCha8Rng| {
        let mut u = IntMatrix::identity(r);
        for _ in 0..3 * r {
            let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
            if i != j {
                u.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-2..=2)));
            } else {
                u.negate_row(i);
            }
        }
        u
    };
    let mut d = IntMatrix::identity(r);
    let k = rng.gen_range(0..r);
    d.set(k, k, det.clone());
    unimodular(rng).mul(&d).mul(&unimodular(rng))
}

pub fn generate(params: &GenerateParams) -> Result<Generated, CliError> {
    let GenerateParams { seed, rank: r, cols: m, characteristic, perturb_exp, max_exp } = *params;
    if m < r + 1 {
        return Err(CliError::Input(format!("a mixed dominating {r} x {m} matrix needs at least {} columns", r + 1)));
    }
    if m > 64 {
        return Err(CliError::Input(format!("at most 64 columns are supported, got {m}")));
    }
    let index = match (characteristic, perturb_exp) {
        (_, 0) => BigInt::from(1),
        (Characteristic::Zero, _) => {
            return Err(CliError::Input("--perturb-exp needs a prime --char".into()));
        }
        (_, _) if r == 0 => return Err(CliError::Input("--perturb-exp needs --rank at least 1".into())),
        (Characteristic::Prime(p), a) => p.pow(a),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let composed = compose(&mut rng, r, m);
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(&mut rng);
    let mut basis = composed.select_columns(&perm);
    if perturb_exp > 0 {
        basis = with_determinant(&mut rng, r, &index).mul(&basis);
    }
    let lattice = Lattice::from_generators(&basis);
    let outcome = |v: Result<ci_lattice::Verdict, ci_lattice::GluingError>| {
        v.map(|v| v.outcome.to_string()).map_err(|e| CliError::Input(e.to_string()))
    };
    let ci = outcome(ci_decide(&lattice))?;
    let stci = match characteristic {
        Characteristic::Zero => None,
        ch => Some(outcome(stci_decide(&lattice, ch, max_exp))?),
    };
    Ok(Generated {
        instance: InstanceFile::from_lattice(&lattice),
        expected: ExpectedRecord {
            seed,
            rank: r,
            cols: m,
            characteristic: characteristic.as_u64(),
            perturb_exp,
            index: Int(index),
            ci,
            stci,
        },
    })
}
