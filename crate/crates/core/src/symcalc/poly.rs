//! Sparse integer polynomials in t, s, z and Sylvester resultants.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ring::SymElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T = 0,
    S = 1,
    Z = 2,
}

impl Var {
    /// The monic relation the variable satisfies in the ring, low degree first:
    /// `t^2 + t + 1`, `s^2 - 3`, `z^2 - 5`.
    pub fn relation(self) -> IntPoly {
        let c: [i64; 3] = match self {
            Var::T => [1, 1, 1],
            Var::S => [-3, 0, 1],
            Var::Z => [-5, 0, 1],
        };
        IntPoly::univariate(self, &c.map(BigInt::from))
    }
}

/// Sparse polynomial over Z; the key is the exponent vector `[t, s, z]`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v as usize] = 1;
        let mut p = Self::zero();
        p.add_term(e, BigInt::one());
        p
    }

    /// `sum coeffs[k] v^k` with integer coefficients.
    pub fn univariate(v: Var, coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = [0; 3];
            e[v as usize] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Lifts a ring element to the polynomial with degree at most one in
    /// each variable.
    pub fn from_sym(e: &SymElem) -> Self {
        let mut p = Self::zero();
        for (slot, c) in e.coeffs().iter().enumerate() {
            p.add_term([(slot & 1) as u32, (slot >> 1 & 1) as u32, (slot >> 2 & 1) as u32], c.clone());
        }
        p
    }

    fn add_term(&mut self, e: [u32; 3], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.terms.iter()
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v as usize]).max()
    }

    /// Non-negative gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `d`, which must divide them all.
    pub fn div_exact(&self, d: &BigInt) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            debug_assert!((c % d).is_zero());
            p.add_term(*e, c / d);
        }
        p
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials in the other variables.
    pub fn coeffs_in(&self, v: Var) -> Vec<IntPoly> {
        let n = self.degree(v).map_or(0, |d| d as usize + 1);
        let mut out = vec![IntPoly::zero(); n];
        for (e, c) in &self.terms {
            let mut rest = *e;
            let k = rest[v as usize] as usize;
            rest[v as usize] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[IntPoly]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e = *e;
                e[v as usize] += k as u32;
                p.add_term(e, x.clone());
            }
        }
        p
    }

    /// Remainder modulo a monic polynomial `g` in `v`.
    pub fn rem_monic(&self, v: Var, g: &IntPoly) -> Self {
        let gc = g.coeffs_in(v);
        let dg = gc.len() - 1;
        debug_assert_eq!(gc[dg], IntPoly::from_int(1));
        let mut fc = self.coeffs_in(v);
        while fc.len() > dg {
            let lead = fc.pop().expect("nonempty");
            let shift = fc.len() - dg;
            for (k, gk) in gc.iter().take(dg).enumerate() {
                fc[shift + k] = &fc[shift + k] - &(&lead * gk);
            }
        }
        Self::from_coeffs_in(v, &fc)
    }

    /// Value at integer points `(t, s, z)`.
    pub fn eval(&self, at: [i64; 3]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut term = c.clone();
                for (x, &k) in at.iter().zip(e) {
                    term *= num_traits::pow(BigInt::from(*x), k as usize);
                }
                term
            })
            .sum()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        self + &(-o)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        let mut p = IntPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        p
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n) given as
/// coefficient lists, low degree first: n shifted rows of f over m shifted
/// rows of g, highest coefficient leftmost.
pub fn sylvester_matrix(f: &[IntPoly], g: &[IntPoly]) -> Vec<Vec<IntPoly>> {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (count, src) in [(n, f), (m, g)] {
        for r in 0..count {
            let mut row = vec![IntPoly::zero(); size];
            for (k, c) in src.iter().rev().enumerate() {
                row[r + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    match n {
        0 => IntPoly::from_int(1),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = IntPoly::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<IntPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][col] * &determinant(&minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `Res_v(f, g)` as the determinant of the Sylvester matrix in `v`.
pub fn resultant(f: &IntPoly, g: &IntPoly, v: Var) -> IntPoly {
    if f.is_zero() || g.is_zero() {
        return IntPoly::zero();
    }
    determinant(&sylvester_matrix(&f.coeffs_in(v), &g.coeffs_in(v)))
}

/// Result of eliminating t, s and z from a ring element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    /// Integer content removed before elimination.
    pub content: BigInt,
    /// Resultant tower applied to the primitive part.
    pub primitive_resultant: BigInt,
}

impl Elimination {
    /// The tower applied to the element itself; the content contributes its
    /// eighth power.
    pub fn full(&self) -> BigInt {
        num_traits::pow(self.content.clone(), 8) * &self.primitive_resultant
    }
}

pub const STANDARD_ORDER: [Var; 3] = [Var::T, Var::S, Var::Z];

/// `Res_z(z^2-5, Res_s(s^2-3, Res_t(t^2+t+1, D)))` after removing content.
pub fn eliminate(d: &SymElem) -> Elimination {
    eliminate_in_order(d, STANDARD_ORDER)
}

/// Eliminates the variables in the given order. Between steps the
/// intermediate polynomial is reduced modulo the remaining relations; the
/// resultant with a monic polynomial only depends on that residue.
pub fn eliminate_in_order(d: &SymElem, order: [Var; 3]) -> Elimination {
    let poly = IntPoly::from_sym(d);
    let content = poly.content();
    if content.is_zero() {
        return Elimination { content, primitive_resultant: BigInt::zero() };
    }
    let mut cur = poly.div_exact(&content);
    for (step, v) in order.iter().enumerate() {
        cur = resultant(&v.relation(), &cur, *v);
        for w in &order[step + 1..] {
            cur = cur.rem_monic(*w, &w.relation());
        }
    }
    let primitive_resultant = cur.as_constant().expect("all variables eliminated");
    Elimination { content, primitive_resultant }
}
