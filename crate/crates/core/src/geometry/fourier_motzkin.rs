//! Exact Fourier–Motzkin elimination for systems `a · x ≥ b`.
//!
//! Every derived row remembers the nonnegative combination of input rows it
//! came from. That gives Farkas certificates on infeasibility and drives
//! Chernikov's redundancy rule: after `k` eliminations a row built from more
//! than `k + 1` input rows is implied by the others and can be dropped.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    mult: Vec<BigInt>,
    support: usize,
}

impl Row {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn key(&self) -> (Vec<BigInt>, BigInt) {
        let g = self.coeffs.iter().fold(self.rhs.abs(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            (self.coeffs.clone(), self.rhs.clone())
        } else {
            (self.coeffs.iter().map(|x| x / &g).collect(), &self.rhs / &g)
        }
    }

    fn normalize(&mut self) {
        let g = self.coeffs.iter().chain(self.mult.iter()).fold(self.rhs.abs(), |g, x| g.gcd(x));
        if g > BigInt::one() {
            for x in self.coeffs.iter_mut().chain(self.mult.iter_mut()) {
                *x /= &g;
            }
            self.rhs /= &g;
        }
    }
}

/// Result of projecting a system onto its leading variables.
///
/// `levels[k]` is an inequality system in variables `0..k` equivalent to the
/// projection of the input onto those variables.
#[derive(Clone, Debug)]
pub(crate) struct Projection {
    nvars: usize,
    levels: Vec<Vec<Row>>,
}

/// Unbounded direction met while enumerating integer points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Unbounded;

/// Projects `{ x ∈ Q^nvars : rows }`. On infeasibility returns the
/// multipliers `y ≥ 0` with `Σ y_i a_i = 0` and `Σ y_i b_i > 0`.
pub(crate) fn project(nvars: usize, rows: &[(Vec<BigInt>, BigInt)]) -> Result<Projection, Vec<BigInt>> {
    let n = rows.len();
    let mut current = Vec::with_capacity(n);
    for (i, (coeffs, rhs)) in rows.iter().enumerate() {
        assert_eq!(coeffs.len(), nvars, "inequality has wrong arity");
        let mut mult = vec![BigInt::zero(); n];
        mult[i] = BigInt::one();
        current.push(Row { coeffs: coeffs.clone(), rhs: rhs.clone(), mult, support: 1 });
    }
    let mut current = tidy(current, usize::MAX)?;
    let mut levels = vec![Vec::new(); nvars + 1];
    for var in (0..nvars).rev() {
        let eliminated = nvars - var;
        let next = eliminate(&current, var);
        levels[var + 1] = std::mem::replace(&mut current, tidy(next, eliminated + 1)?);
    }
    levels[0] = current;
    Ok(Projection { nvars, levels })
}

fn eliminate(rows: &[Row], var: usize) -> Vec<Row> {
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in rows {
        if r.coeffs[var].is_positive() {
            pos.push(r);
        } else if r.coeffs[var].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let fp = -&q.coeffs[var];
            let fq = p.coeffs[var].clone();
            let combine = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
                a.iter().zip(b).map(|(x, y)| &fp * x + &fq * y).collect()
            };
            let mut coeffs = combine(&p.coeffs, &q.coeffs);
            coeffs[var] = BigInt::zero();
            let mult = combine(&p.mult, &q.mult);
            let support = mult.iter().filter(|m| !m.is_zero()).count();
            out.push(Row { coeffs, rhs: &fp * &p.rhs + &fq * &q.rhs, mult, support });
        }
    }
    out
}

// Drops trivially true and redundant rows; reports a contradiction.
fn tidy(rows: Vec<Row>, max_support: usize) -> Result<Vec<Row>, Vec<BigInt>> {
    let mut seen: HashMap<(Vec<BigInt>, BigInt), usize> = HashMap::new();
    let mut out: Vec<Row> = Vec::new();
    for mut r in rows {
        if r.is_trivial() {
            if r.rhs.is_positive() {
                return Err(r.mult);
            }
            continue;
        }
        if r.support > max_support {
            continue;
        }
        r.normalize();
        match seen.get(&r.key()) {
            Some(&idx) => {
                if r.support < out[idx].support {
                    out[idx] = r;
                }
            }
            None => {
                seen.insert(r.key(), out.len());
                out.push(r);
            }
        }
    }
    Ok(out)
}

impl Projection {
    /// Rational bounds on variable `k` given values for variables `0..k`.
    pub(crate) fn bounds(&self, k: usize, prefix: &[BigRational]) -> (Option<BigRational>, Option<BigRational>) {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in &self.levels[k + 1] {
            let a = &r.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let mut rest = BigRational::from_integer(r.rhs.clone());
            for (j, x) in prefix.iter().enumerate() {
                if !r.coeffs[j].is_zero() {
                    rest -= BigRational::from_integer(r.coeffs[j].clone()) * x;
                }
            }
            let bound = rest / BigRational::from_integer(a.clone());
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        (lo, hi)
    }

    fn integer_bounds(&self, k: usize, prefix: &[BigInt]) -> (Option<BigInt>, Option<BigInt>) {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for r in &self.levels[k + 1] {
            let a = &r.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let mut rest = r.rhs.clone();
            for (j, x) in prefix.iter().enumerate() {
                rest -= &r.coeffs[j] * x;
            }
            if a.is_positive() {
                let b = rest.div_ceil(a);
                if lo.as_ref().is_none_or(|l| &b > l) {
                    lo = Some(b);
                }
            } else {
                let b = rest.div_floor(a);
                if hi.as_ref().is_none_or(|h| &b < h) {
                    hi = Some(b);
                }
            }
        }
        (lo, hi)
    }

    /// Some rational point of the polyhedron.
    pub(crate) fn rational_point(&self) -> Vec<BigRational> {
        let mut point = Vec::with_capacity(self.nvars);
        for k in 0..self.nvars {
            let (lo, hi) = self.bounds(k, &point);
            point.push(lo.or(hi).unwrap_or_else(BigRational::zero));
        }
        point
    }

    /// Visits integer points in lexicographic order until `visit` breaks.
    pub(crate) fn for_each_integer_point(
        &self,
        mut visit: impl FnMut(&[BigInt]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Unbounded> {
        let mut prefix = Vec::with_capacity(self.nvars);
        self.walk(&mut prefix, &mut visit)
    }

    fn walk(
        &self,
        prefix: &mut Vec<BigInt>,
        visit: &mut impl FnMut(&[BigInt]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Unbounded> {
        let k = prefix.len();
        if k == self.nvars {
            return Ok(visit(prefix));
        }
        let (Some(lo), Some(hi)) = self.integer_bounds(k, prefix) else {
            return Err(Unbounded);
        };
        let mut x = lo;
        while x <= hi {
            prefix.push(x.clone());
            let flow = self.walk(prefix, visit)?;
            prefix.pop();
            if flow.is_break() {
                return Ok(flow);
            }
            x += 1;
        }
        Ok(ControlFlow::Continue(()))
    }
}
