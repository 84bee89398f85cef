//! Symbolic replay of the orbit over `Z[t,s,z]/(t^2+t+1, s^2-3, z^2-5)`,
//! collinearity determinants, resultant elimination and the set of primes
//! for which the orbit can fail to be an arc.

pub mod cache;
pub mod delta;
pub mod factor;
pub mod poly;
pub mod ring;

use crate::error::{Error, Result};
use crate::orbit::{construct_orbit, OrbitResult};
use crate::plane::ProjPoint;

pub use delta::{compute_delta, compute_pairs, DeltaReport, PairRecord, PrimeStatus};
pub use factor::factor_primes;
pub use poly::{eliminate, eliminate_in_order, Elimination, IntPoly, Var};
pub use ring::{SymElem, SymVec};

/// Field whose BFS words seed the symbolic orbit. The words do not depend on
/// the field (see the group tests), so any valid q would do.
pub const REFERENCE_FIELD: (u64, u32) = (61, 1);

/// Number of pairs `1 <= i < j <= 89`.
pub const PAIR_COUNT: usize = 3916;

/// The 90 orbit points as ring vectors, index-aligned with the numeric
/// orbit they were replayed from.
#[derive(Clone, Debug)]
pub struct SymbolicOrbit {
    pub points: Vec<SymVec>,
}

/// Replays the coset words of `orb` on `(2, s-1, s-1)` and checks every
/// point against the numeric orbit under the specialization
/// `(t, s, z) -> orb.special`.
pub fn symbolic_orbit(orb: &OrbitResult) -> Result<SymbolicOrbit> {
    let base = ring::symbolic_basepoint();
    let points: Vec<SymVec> = orb.words.iter().map(|w| ring::apply_word(w, &base)).collect();
    let sym = SymbolicOrbit { points };
    sym.check_against(orb)?;
    Ok(sym)
}

/// Symbolic orbit from [`REFERENCE_FIELD`].
pub fn reference_symbolic_orbit() -> Result<SymbolicOrbit> {
    let (p, r) = REFERENCE_FIELD;
    symbolic_orbit(&construct_orbit(p, r)?)
}

impl SymbolicOrbit {
    /// Point `i` specialized into the plane of `orb`.
    pub fn specialize(&self, orb: &OrbitResult, i: usize) -> Option<ProjPoint> {
        let sp = &orb.special;
        let k = &sp.plane;
        let v = self.points[i].clone().map(|e| e.specialize(k, sp.t, sp.s, sp.z));
        ProjPoint::new(k, v).ok()
    }

    /// Checks that each symbolic point specializes to the numeric point with
    /// the same index.
    pub fn check_against(&self, orb: &OrbitResult) -> Result<()> {
        if self.points.len() != orb.points.len() {
            return Err(Error::WordReplayMismatch(self.points.len().min(orb.points.len())));
        }
        for (i, want) in orb.points.iter().enumerate() {
            if self.specialize(orb, i).as_ref() != Some(want) {
                return Err(Error::WordReplayMismatch(i));
            }
        }
        Ok(())
    }

    /// `D_{i,j} = det(P1, Q_i, Q_j)` for `1 <= i < j <= 89`.
    pub fn collinearity_det(&self, i: usize, j: usize) -> Result<SymElem> {
        if !(1 <= i && i < j && j < self.points.len()) {
            return Err(Error::BadIndex(i, j));
        }
        Ok(ring::det3(&[self.points[0].clone(), self.points[i].clone(), self.points[j].clone()]))
    }

    /// All pairs `(i, j)` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.points.len();
        (1..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}
