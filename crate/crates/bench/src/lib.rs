//! Fixtures shared by the benchmarks.

use a6arc::symcalc::{reference_symbolic_orbit, SymbolicOrbit};
use a6arc::OrbitResult;

/// Largest exceptional characteristic; its spectrum is the costliest of the
/// eleven.
pub const SPECTRUM_P: u64 = 421;

pub fn orbit(p: u64, r: u32) -> OrbitResult {
    a6arc::orbit::construct_orbit(p, r).expect("valid field")
}

pub fn symbolic() -> SymbolicOrbit {
    reference_symbolic_orbit().expect("replay succeeds")
}

/// Every `stride`-th pair, in lexicographic order.
pub fn pair_subset(sym: &SymbolicOrbit, stride: usize) -> Vec<(usize, usize)> {
    sym.pairs().step_by(stride).collect()
}
