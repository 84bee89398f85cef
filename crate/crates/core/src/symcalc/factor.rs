//! Prime sets of resultants: trial division, then Miller-Rabin and
//! Pollard-Brent rho on the cofactor.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division bound.
pub const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

const MR_BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Strong probable-prime test to the first twenty prime bases; exact below
/// 3.3 * 10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().expect("n > 1");
    let d = &nm1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of an odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            // backtrack one step at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

fn split(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(&n);
    let e = &n / &d;
    split(d, out);
    split(e, out);
}

/// Prime factorization of `|n|` with multiplicities; verified by
/// multiplying back.
pub fn factorize(n: &BigInt) -> Result<BTreeMap<BigUint, u32>> {
    if n.is_zero() {
        return Err(Error::ZeroResultant { pair: None });
    }
    let mut rest = n.abs().to_biguint().expect("non-negative");
    let mut out = BTreeMap::new();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        if let Some(small) = rest.to_u64() {
            if (p as u64) * (p as u64) > small {
                break;
            }
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        loop {
            let (quo, rem) = rest.div_rem(&bp);
            if !rem.is_zero() {
                break;
            }
            rest = quo;
            e += 1;
        }
        if e > 0 {
            out.insert(bp, e);
        }
    }
    split(rest, &mut out);
    let back: BigUint = out.iter().map(|(p, &e)| num_traits::pow(p.clone(), e as usize)).product();
    if back != n.abs().to_biguint().expect("non-negative") {
        return Err(Error::InternalInconsistency(format!("factorization of {n} does not multiply back")));
    }
    Ok(out)
}

/// The set of prime divisors of `n`, ascending.
pub fn factor_primes(n: &BigInt) -> Result<Vec<BigUint>> {
    Ok(factorize(n)?.into_keys().collect())
}
