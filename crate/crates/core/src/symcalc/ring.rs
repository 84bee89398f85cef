//! The ring `Z[t,s,z]/(t^2+t+1, s^2-3, z^2-5)` and the generator matrices
//! over it.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldCtx, FieldElem};
use crate::group::{Gen, Word};

/// An element of `Z[t,s,z]/(t^2+t+1, s^2-3, z^2-5)`, stored on the basis
/// `t^a s^b z^c` with `a, b, c` in `{0, 1}`; slot `a + 2b + 4c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymElem {
    c: [BigInt; 8],
}

const T: usize = 1;
const S: usize = 2;
const Z: usize = 4;

impl SymElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_int(v: i64) -> Self {
        let mut e = Self::zero();
        e.c[0] = BigInt::from(v);
        e
    }

    fn basis(slot: usize) -> Self {
        let mut e = Self::zero();
        e.c[slot] = BigInt::one();
        e
    }

    pub fn t() -> Self {
        Self::basis(T)
    }

    pub fn s() -> Self {
        Self::basis(S)
    }

    pub fn z() -> Self {
        Self::basis(Z)
    }

    /// Coefficient of `t^a s^b z^c`.
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> &BigInt {
        &self.c[a + 2 * b + 4 * c]
    }

    pub fn coeffs(&self) -> &[BigInt; 8] {
        &self.c
    }

    pub fn from_coeffs(c: [BigInt; 8]) -> Self {
        SymElem { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Image under the ring map sending t, s, z to the given field elements.
    pub fn specialize(&self, k: &FieldCtx, t: FieldElem, s: FieldElem, z: FieldElem) -> FieldElem {
        let p = BigInt::from(k.p());
        let mut acc = k.zero();
        for (slot, coef) in self.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let r: i64 = coef.mod_floor(&p).try_into().expect("reduced below p");
            let mut term = k.from_int(r);
            if slot & T != 0 {
                term = k.mul(term, t);
            }
            if slot & S != 0 {
                term = k.mul(term, s);
            }
            if slot & Z != 0 {
                term = k.mul(term, z);
            }
            acc = k.add(acc, term);
        }
        acc
    }
}

impl Add for &SymElem {
    type Output = SymElem;
    fn add(self, o: &SymElem) -> SymElem {
        SymElem { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
}

impl Sub for &SymElem {
    type Output = SymElem;
    fn sub(self, o: &SymElem) -> SymElem {
        SymElem { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl Neg for &SymElem {
    type Output = SymElem;
    fn neg(self) -> SymElem {
        SymElem { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

impl Mul for &SymElem {
    type Output = SymElem;
    fn mul(self, o: &SymElem) -> SymElem {
        let mut out = SymElem::zero();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut v = x * y;
                if i & j & S != 0 {
                    v *= 3;
                }
                if i & j & Z != 0 {
                    v *= 5;
                }
                let rest = (i ^ j) & (S | Z);
                if i & j & T != 0 {
                    // t^2 = -1 - t
                    out.c[rest] -= &v;
                    out.c[rest | T] -= v;
                } else {
                    out.c[rest | ((i | j) & T)] += v;
                }
            }
        }
        out
    }
}

pub type SymVec = [SymElem; 3];
pub type SymMat = [[SymElem; 3]; 3];

pub fn det3(rows: &[SymVec; 3]) -> SymElem {
    let [a, b, c] = rows;
    let minor = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    let t0 = &a[0] * &minor(1, 2);
    let t1 = &a[1] * &minor(0, 2);
    let t2 = &a[2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

pub fn mat_vec(m: &SymMat, v: &SymVec) -> SymVec {
    std::array::from_fn(|i| {
        let a = &m[i][0] * &v[0];
        let b = &m[i][1] * &v[1];
        let c = &m[i][2] * &v[2];
        &(&a + &b) + &c
    })
}

/// The generator matrices with entries in the ring; `Delta = t - t^2 = 2t + 1`.
pub fn symbolic_generator(g: Gen) -> SymMat {
    let n = SymElem::from_int;
    let t = SymElem::t();
    let t2 = &n(-1) - &t;
    match g {
        Gen::U => [[n(0), n(0), n(1)], [n(1), n(0), n(0)], [n(0), n(1), n(0)]],
        Gen::Omega => [[n(1), n(0), n(0)], [n(0), t, n(0)], [n(0), n(0), t2]],
        Gen::V => {
            let delta = &(&t + &t) + &n(1);
            let dz = &delta * &SymElem::z();
            let pl = &n(1) + &dz;
            let mi = &n(1) - &dz;
            [[n(-2), pl.clone(), pl], [mi.clone(), n(4), n(-2)], [mi, n(-2), n(4)]]
        }
        Gen::W => [[n(1), n(1), n(1)], [n(1), t.clone(), t2.clone()], [n(1), t2, t]],
    }
}

/// Applies a word to a vector; the rightmost letter acts first.
pub fn apply_word(word: &Word, v: &SymVec) -> SymVec {
    let mats: Vec<SymMat> = Gen::ALL.iter().map(|&g| symbolic_generator(g)).collect();
    word.0
        .iter()
        .rev()
        .fold(v.clone(), |acc, &g| mat_vec(&mats[g as usize], &acc))
}

/// `(2, s - 1, s - 1)`: P1 with the denominator cleared.
pub fn symbolic_basepoint() -> SymVec {
    let s = SymElem::s();
    let sm1 = &s - &SymElem::from_int(1);
    [SymElem::from_int(2), sm1.clone(), sm1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn arb_elem() -> impl Strategy<Value = SymElem> {
        proptest::array::uniform8(-1000i64..1000).prop_map(|a| SymElem::from_coeffs(a.map(BigInt::from)))
    }

    #[test]
    fn relations() {
        let t = SymElem::t();
        let t3 = &(&t * &t) * &t;
        assert_eq!(t3, SymElem::from_int(1));
        let tt = &t * &t;
        assert_eq!(&(&tt + &t) + &SymElem::from_int(1), SymElem::zero());
        assert_eq!(&SymElem::s() * &SymElem::s(), SymElem::from_int(3));
        assert_eq!(&SymElem::z() * &SymElem::z(), SymElem::from_int(5));
    }

    #[test]
    fn repeated_row_determinant_vanishes() {
        let p1 = symbolic_basepoint();
        let q = apply_word(&Word(vec![Gen::V, Gen::W, Gen::U]), &p1);
        assert!(det3(&[p1, q.clone(), q]).is_zero());
    }

    proptest! {
        #[test]
        fn specialization_is_a_homomorphism(a in arb_elem(), b in arb_elem(), which in 0usize..3) {
            let (p, t, s, z) = [(61, 13, 8, 26), (229, 94, 71, 66), (109, 45, 49, 21)][which];
            let k = make_field(p, 1).unwrap();
            let (t, s, z) = (k.from_int(t), k.from_int(s), k.from_int(z));
            prop_assert_eq!(k.mul(t, k.add(t, k.one())), k.from_int(-1));
            prop_assert_eq!(k.sqr(s), k.from_int(3));
            prop_assert_eq!(k.sqr(z), k.from_int(5));
            let ev = |e: &SymElem| e.specialize(&k, t, s, z);
            prop_assert_eq!(ev(&(&a * &b)), k.mul(ev(&a), ev(&b)));
            prop_assert_eq!(ev(&(&a + &b)), k.add(ev(&a), ev(&b)));
            prop_assert_eq!(ev(&(&a - &b)), k.sub(ev(&a), ev(&b)));
        }

        #[test]
        fn multiplication_is_commutative_and_associative(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
