//! Exact arithmetic in GF(p) and GF(p^2).
//!
//! Degree-two extensions are built as GF(p)[w]/(w^2 - n) where `n` is the
//! least quadratic non-residue mod p. A prime-field element is stored as
//! `(c0, 0)`, so GF(p) sits inside GF(p^2) with no change of representation.

use crate::error::{Error, Result};

/// A finite field GF(p^r), r in {1, 2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    r: u32,
    /// `n` in the modulus `w^2 - n`; zero for prime fields.
    nonresidue: u64,
    q: u64,
}

/// An element of a [`FieldCtx`], as coordinates on the basis `{1, w}`.
///
/// Elements do not carry their field; every operation goes through the
/// context. Coordinates are always reduced, so derived equality is field
/// equality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FieldElem {
    c: [u32; 2],
}

impl FieldElem {
    pub fn coeffs(self) -> [u32; 2] {
        self.c
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Tonelli-Shanks in GF(p). `a` must be a nonzero square.
fn sqrt_mod_prime(a: u64, p: u64, nonresidue: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut m = s;
    let mut c = pow_mod(nonresidue, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue")
}

/// Builds GF(p^r). For r = 2 the modulus is `w^2 - n` with `n` the least
/// quadratic non-residue mod p.
pub fn make_field(p: u64, r: u32) -> Result<FieldCtx> {
    if !is_prime_u64(p) {
        return Err(Error::CompositeP(p));
    }
    if p >= 1 << 31 {
        return Err(Error::PrimeTooLarge(p));
    }
    match r {
        1 => Ok(FieldCtx { p, r, nonresidue: 0, q: p }),
        // p = 2 has no non-residue of the required shape; the construction only
        // ever needs odd characteristic.
        2 if p > 2 => Ok(FieldCtx { p, r, nonresidue: least_nonresidue(p), q: p * p }),
        _ => Err(Error::UnsupportedDegree(r)),
    }
}

/// `p^r mod 30`.
pub fn q_mod_30(p: u64, r: u32) -> u64 {
    pow_mod(p % 30, r as u64, 30)
}

/// True iff `q = p^r` is congruent to 1 or 19 mod 30.
pub fn validate_q(p: u64, r: u32) -> bool {
    matches!(q_mod_30(p, r), 1 | 19)
}

/// Smallest degree r in {1, 2} for which `p^r` passes [`validate_q`].
pub fn minimal_degree(p: u64) -> Option<u32> {
    (1..=2).find(|&r| validate_q(p, r))
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The constant `n` of the modulus `w^2 - n`, if this is an extension.
    pub fn nonresidue(&self) -> Option<u64> {
        (self.r == 2).then_some(self.nonresidue)
    }

    /// Human-readable description of the defining polynomial.
    pub fn modulus_string(&self) -> String {
        match self.r {
            1 => format!("GF({})", self.p),
            _ => format!("GF({}^2) = GF({})[w]/(w^2 - {})", self.p, self.p, self.nonresidue),
        }
    }

    /// GF(p^2) over this prime field.
    pub fn quadratic_extension(&self) -> Result<FieldCtx> {
        match self.r {
            1 => make_field(self.p, 2),
            r => Err(Error::UnsupportedDegree(2 * r)),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { c: [0, 0] }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { c: [1, 0] }
    }

    /// The extension generator `w`; only meaningful for r = 2.
    pub fn generator(&self) -> FieldElem {
        debug_assert_eq!(self.r, 2);
        FieldElem { c: [0, 1] }
    }

    pub fn from_int(&self, v: i64) -> FieldElem {
        let p = self.p as i64;
        FieldElem { c: [v.rem_euclid(p) as u32, 0] }
    }

    pub fn from_coeffs(&self, c0: i64, c1: i64) -> FieldElem {
        let p = self.p as i64;
        let c1 = if self.r == 2 { c1.rem_euclid(p) } else { 0 };
        FieldElem { c: [c0.rem_euclid(p) as u32, c1 as u32] }
    }

    /// The integer encoding `c0 + c1 * p`, in `0..q`.
    pub fn index(&self, a: FieldElem) -> u64 {
        a.c[0] as u64 + a.c[1] as u64 * self.p
    }

    /// Inverse of [`FieldCtx::index`].
    pub fn from_index(&self, i: u64) -> FieldElem {
        debug_assert!(i < self.q);
        FieldElem { c: [(i % self.p) as u32, (i / self.p) as u32] }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    /// True iff the coordinates are a valid element of this field.
    pub fn contains(&self, a: FieldElem) -> bool {
        (a.c[0] as u64) < self.p && (a.c[1] as u64) < self.p && (self.r == 2 || a.c[1] == 0)
    }

    /// True iff `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: FieldElem) -> bool {
        a.c[1] == 0
    }

    pub fn is_zero(&self, a: FieldElem) -> bool {
        a.c == [0, 0]
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u32;
        let f = |x: u32, y: u32| {
            let s = x + y;
            if s >= p {
                s - p
            } else {
                s
            }
        };
        FieldElem { c: [f(a.c[0], b.c[0]), f(a.c[1], b.c[1])] }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.p as u32;
        let f = |x: u32| if x == 0 { 0 } else { p - x };
        FieldElem { c: [f(a.c[0]), f(a.c[1])] }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        let (a0, a1) = (a.c[0] as u64, a.c[1] as u64);
        let (b0, b1) = (b.c[0] as u64, b.c[1] as u64);
        if self.r == 1 {
            return FieldElem { c: [(a0 * b0 % p) as u32, 0] };
        }
        let c0 = (a0 * b0 + self.nonresidue * (a1 * b1 % p)) % p;
        let c1 = (a0 * b1 + a1 * b0) % p;
        FieldElem { c: [c0 as u32, c1 as u32] }
    }

    pub fn sqr(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Norm to the prime field: `a * a^p`.
    fn norm(&self, a: FieldElem) -> u64 {
        let p = self.p;
        let (a0, a1) = (a.c[0] as u64, a.c[1] as u64);
        (a0 * a0 % p + p - self.nonresidue * (a1 * a1 % p) % p) % p
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.p;
        if self.r == 1 {
            return Some(FieldElem { c: [pow_mod(a.c[0] as u64, p - 2, p) as u32, 0] });
        }
        let ninv = pow_mod(self.norm(a), p - 2, p);
        let c0 = a.c[0] as u64 * ninv % p;
        let c1 = (p - a.c[1] as u64) % p * ninv % p;
        Some(FieldElem { c: [c0 as u32, c1 as u32] })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        FieldElem { c: [a.c[0], if a.c[1] == 0 { 0 } else { self.p as u32 - a.c[1] }] }
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        match self.r {
            1 => pow_mod(a.c[0] as u64, (self.p - 1) / 2, self.p) == 1,
            // a is a square in GF(p^2) iff its norm is a square in GF(p).
            _ => {
                let n = self.norm(a);
                pow_mod(n, (self.p - 1) / 2, self.p) == 1
            }
        }
    }

    /// Of `a` and `-a`, the one with the smaller integer encoding.
    pub fn canonical_sign(&self, a: FieldElem) -> FieldElem {
        let b = self.neg(a);
        if self.index(b) < self.index(a) {
            b
        } else {
            a
        }
    }

    /// Canonical square root: of the two roots, the one with the smaller
    /// integer encoding. `None` if `a` is not a square.
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        let root = match self.r {
            1 => FieldElem { c: [self.prime_sqrt(a.c[0] as u64)? as u32, 0] },
            _ => self.extension_sqrt(a)?,
        };
        debug_assert_eq!(self.sqr(root), a);
        Some(self.canonical_sign(root))
    }

    fn prime_sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if pow_mod(a, (p - 1) / 2, p) != 1 {
            return None;
        }
        let n = if self.r == 2 { self.nonresidue } else { least_nonresidue(p) };
        Some(sqrt_mod_prime(a, p, n))
    }

    /// Square root in GF(p^2) via the norm: if `(u + v w)^2 = a0 + a1 w` then
    /// `u^2 = (a0 + m) / 2` with `m^2 = N(a)`.
    fn extension_sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        let p = self.p;
        let (a0, a1) = (a.c[0] as u64, a.c[1] as u64);
        let half = (p + 1) / 2;
        if a1 == 0 {
            if let Some(u) = self.prime_sqrt(a0) {
                return Some(FieldElem { c: [u as u32, 0] });
            }
            // a0 = n * v^2: v^2 = a0 / n
            let ninv = pow_mod(self.nonresidue, p - 2, p);
            let v = self.prime_sqrt(a0 * ninv % p)?;
            return Some(FieldElem { c: [0, v as u32] });
        }
        let m = self.prime_sqrt(self.norm(a))?;
        for m in [m, (p - m) % p] {
            let u2 = (a0 + m) % p * half % p;
            if let Some(u) = self.prime_sqrt(u2) {
                if u == 0 {
                    continue;
                }
                let v = a1 * half % p * pow_mod(u, p - 2, p) % p;
                let cand = FieldElem { c: [u as u32, v as u32] };
                if self.sqr(cand) == a {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Canonical primitive cube root of unity.
    pub fn primitive_cube_root(&self) -> Result<FieldElem> {
        if (self.q - 1) % 3 != 0 {
            return Err(Error::NoCubeRoot(self.q));
        }
        // t = (-1 +- sqrt(-3)) / 2
        let d = self.sqrt(self.from_int(-3)).ok_or_else(|| {
            Error::InternalInconsistency(format!("-3 is not a square in GF({})", self.q))
        })?;
        let half = self.inv(self.from_int(2)).expect("odd characteristic");
        let m1 = self.from_int(-1);
        let r1 = self.mul(self.add(m1, d), half);
        let r2 = self.mul(self.sub(m1, d), half);
        Ok(if self.index(r1) <= self.index(r2) { r1 } else { r2 })
    }

    /// Renders `a` as an integer for prime fields and as `a+b*w` otherwise.
    pub fn format(&self, a: FieldElem) -> String {
        match self.r {
            1 => a.c[0].to_string(),
            _ => format!("{}+{}*w", a.c[0], a.c[1]),
        }
    }
}

/// Where the square root of 3 lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SqrtHome {
    BaseField,
    QuadraticExtension,
}

/// Which conjugate of each special element to use. The default picks the
/// canonical roots; the flags switch to `t^2`, `-z` and `-s`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ElemChoice {
    pub conjugate_t: bool,
    pub negate_z: bool,
    pub negate_s: bool,
}

/// The constants the construction needs, all expressed in `plane`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecialElems {
    /// GF(q), the field of definition of the group.
    pub base: FieldCtx,
    /// The field containing `s`: `base` itself or its quadratic extension.
    pub plane: FieldCtx,
    pub t: FieldElem,
    pub z: FieldElem,
    pub s: FieldElem,
    pub delta: FieldElem,
    pub s_home: SqrtHome,
}

pub fn special_elems(ctx: &FieldCtx) -> Result<SpecialElems> {
    special_elems_with(ctx, ElemChoice::default())
}

pub fn special_elems_with(ctx: &FieldCtx, choice: ElemChoice) -> Result<SpecialElems> {
    if !validate_q(ctx.p, ctx.r) {
        return Err(Error::InvalidQ {
            p: ctx.p,
            r: ctx.r,
            q: ctx.q,
            residue: q_mod_30(ctx.p, ctx.r),
        });
    }
    let mut t = ctx.primitive_cube_root()?;
    let mut z = ctx
        .sqrt(ctx.from_int(5))
        .ok_or_else(|| Error::InternalInconsistency("5 is not a square".into()))?;
    let three = ctx.from_int(3);
    let (plane, mut s, s_home) = match ctx.sqrt(three) {
        Some(s) => (*ctx, s, SqrtHome::BaseField),
        None => {
            let ext = ctx.quadratic_extension()?;
            let s = ext
                .sqrt(three)
                .ok_or_else(|| Error::InternalInconsistency("3 is not a square in GF(q^2)".into()))?;
            (ext, s, SqrtHome::QuadraticExtension)
        }
    };
    if choice.conjugate_t {
        t = plane.sqr(t);
    }
    if choice.negate_z {
        z = plane.neg(z);
    }
    if choice.negate_s {
        s = plane.neg(s);
    }
    let delta = plane.sub(t, plane.sqr(t));
    Ok(SpecialElems { base: *ctx, plane, t, z, s, delta, s_home })
}
