use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::factor::factor_primes;
use super::poly::eliminate;
use super::SymbolicOrbit;
use crate::error::{Error, Result};
use crate::field::minimal_degree;
use crate::orbit::{arc_check, construct_orbit};

/// The eliminated resultant of one pair and its prime divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    /// `Res_z(z^2-5, Res_s(s^2-3, Res_t(t^2+t+1, D_{i,j})))`.
    pub resultant: BigInt,
    pub primes: Vec<BigUint>,
}

/// Append-only memo of prime sets; many pairs share a resultant.
#[derive(Default)]
struct FactorCache(Mutex<HashMap<BigInt, Vec<BigUint>>>);

impl FactorCache {
    fn primes(&self, n: &BigInt) -> Result<Vec<BigUint>> {
        if let Some(hit) = self.0.lock().expect("poisoned").get(n) {
            return Ok(hit.clone());
        }
        let primes = factor_primes(n)?;
        self.0.lock().expect("poisoned").insert(n.clone(), primes.clone());
        Ok(primes)
    }
}

fn pair_record(sym: &SymbolicOrbit, i: usize, j: usize, cache: &FactorCache) -> Result<PairRecord> {
    let d = sym.collinearity_det(i, j)?;
    let zero = || Error::ZeroResultant { pair: Some((i, j)) };
    if d.is_zero() {
        return Err(zero());
    }
    let e = eliminate(&d);
    if e.primitive_resultant.is_zero() {
        return Err(zero());
    }
    // the content's primes divide the full resultant through its eighth power
    let mut primes: BTreeSet<BigUint> = cache.primes(&e.content)?.into_iter().collect();
    primes.extend(cache.primes(&e.primitive_resultant)?);
    Ok(PairRecord { i, j, resultant: e.full(), primes: primes.into_iter().collect() })
}

/// Eliminates and factors every pair, in lexicographic pair order.
pub fn compute_pairs(sym: &SymbolicOrbit) -> Result<Vec<PairRecord>> {
    let cache = FactorCache::default();
    let pairs: Vec<(usize, usize)> = sym.pairs().collect();
    pairs.par_iter().map(|&(i, j)| pair_record(sym, i, j, &cache)).collect()
}

/// Outcome of the numeric check for one prime of the union.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeStatus {
    /// p < 7; outside the range the construction is defined for.
    OutOfHypothesis,
    /// The orbit over GF(p^r) is not an arc.
    Confirmed { r: u32 },
    /// The orbit over GF(p^r) is an arc; the prime came from coordinate
    /// scaling.
    Spurious { r: u32 },
    /// Too large for the numeric field implementation.
    Untested,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub pairs: Vec<PairRecord>,
    /// Union of all pair prime sets.
    pub delta: BTreeSet<BigUint>,
    pub status: BTreeMap<BigUint, PrimeStatus>,
}

fn classify(p: &BigUint) -> Result<PrimeStatus> {
    let Some(small) = p.to_u64().filter(|&v| v < 1 << 31) else {
        return Ok(PrimeStatus::Untested);
    };
    if small < 7 {
        return Ok(PrimeStatus::OutOfHypothesis);
    }
    let r = minimal_degree(small)
        .ok_or_else(|| Error::InternalInconsistency(format!("no valid degree for p = {small}")))?;
    let orb = construct_orbit(small, r)?;
    Ok(if arc_check(&orb).is_arc { PrimeStatus::Spurious { r } } else { PrimeStatus::Confirmed { r } })
}

impl DeltaReport {
    /// Builds the union and runs the numeric check on each of its primes.
    pub fn from_pairs(pairs: Vec<PairRecord>) -> Result<Self> {
        let delta: BTreeSet<BigUint> = pairs.iter().flat_map(|r| r.primes.iter().cloned()).collect();
        let checked: Vec<(BigUint, PrimeStatus)> = delta
            .par_iter()
            .map(|p| classify(p).map(|s| (p.clone(), s)))
            .collect::<Result<_>>()?;
        Ok(DeltaReport { pairs, delta, status: checked.into_iter().collect() })
    }

    fn with_status(&self, pred: impl Fn(&PrimeStatus) -> bool) -> Vec<BigUint> {
        self.status.iter().filter(|(_, s)| pred(s)).map(|(p, _)| p.clone()).collect()
    }

    /// Primes for which the orbit is verified not to be an arc.
    pub fn confirmed(&self) -> Vec<BigUint> {
        self.with_status(|s| matches!(s, PrimeStatus::Confirmed { .. }))
    }

    pub fn spurious(&self) -> Vec<BigUint> {
        self.with_status(|s| matches!(s, PrimeStatus::Spurious { .. }))
    }

    pub fn out_of_hypothesis(&self) -> Vec<BigUint> {
        self.with_status(|s| matches!(s, PrimeStatus::OutOfHypothesis))
    }

    pub fn untested(&self) -> Vec<BigUint> {
        self.with_status(|s| matches!(s, PrimeStatus::Untested))
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&PairRecord> {
        self.pairs.iter().find(|r| r.i == i && r.j == j)
    }
}

/// Runs the full pipeline: elimination over all pairs, union, numeric
/// confirmation.
pub fn compute_delta(sym: &SymbolicOrbit) -> Result<DeltaReport> {
    DeltaReport::from_pairs(compute_pairs(sym)?)
}
