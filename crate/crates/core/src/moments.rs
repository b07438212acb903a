//! Exact moments of the distance distribution of a cycle.
//!
//! Every moment is a sum over positions divided by `N`, returned as an
//! [`ExactRational`].

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

fn require_order(p: u32) -> Result<()> {
    if p == 0 {
        Err(Error::ZeroOrder)
    } else {
        Ok(())
    }
}

fn power_sum<'a>(values: impl Iterator<Item = &'a usize>, p: u32) -> BigInt {
    values.map(|&d| Pow::pow(BigInt::from(d), p)).fold(BigInt::zero(), |a, b| a + b)
}

fn over_total(sum: BigInt, cycle: &Cycle) -> ExactRational {
    ExactRational::new(sum, cycle.problem().total()).expect("N is positive")
}

/// `(1/N) Σ_{j ∈ J_k} Δ_j^p`.
pub fn sub_moment(cycle: &Cycle, p: u32, k: usize) -> Result<ExactRational> {
    require_order(p)?;
    cycle.problem().check_symbol(k)?;
    let profile = cycle.distances();
    Ok(over_total(power_sum(profile.by_symbol[k].iter(), p), cycle))
}

/// `(1/N) Σ_j Δ_j^p`.
pub fn raw_moment(cycle: &Cycle, p: u32) -> Result<ExactRational> {
    require_order(p)?;
    let profile = cycle.distances();
    Ok(over_total(power_sum(profile.deltas.iter(), p), cycle))
}

/// First raw moment. Equal to the alphabet size for every admissible cycle.
pub fn mean(cycle: &Cycle) -> ExactRational {
    raw_moment(cycle, 1).expect("order 1 is valid")
}

/// `(1/N) Σ_j (Δ_j − n)^p`.
pub fn central_moment(cycle: &Cycle, p: u32) -> Result<ExactRational> {
    require_order(p)?;
    let mu = BigInt::from(cycle.problem().alphabet_size());
    let sum = cycle
        .distances()
        .deltas
        .iter()
        .map(|&d| Pow::pow(BigInt::from(d) - &mu, p))
        .fold(BigInt::zero(), |a, b| a + b);
    Ok(over_total(sum, cycle))
}

/// Second central moment.
pub fn variance(cycle: &Cycle) -> ExactRational {
    central_moment(cycle, 2).expect("order 2 is valid")
}

/// Variance from a precomputed `Σ Δ²`: `Σ Δ²/N − n²`.
pub fn variance_from_objective(objective: u64, total: usize, alphabet_size: usize) -> ExactRational {
    let n = BigInt::from(alphabet_size);
    ExactRational::new(BigInt::from(objective), total).expect("N is positive")
        - ExactRational::from_integer(&n * &n)
}
