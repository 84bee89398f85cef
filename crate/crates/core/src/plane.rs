//! Points, lines and projectivities of PG(2, q).

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// A point of PG(2, q) as a homogeneous triple whose first nonzero
/// coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint([FieldElem; 3]);

/// A line of PG(2, q), normalized like [`ProjPoint`]. A point lies on the
/// line iff the dot product vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine([FieldElem; 3]);

/// Scales `v` so its first nonzero entry is 1.
fn normalize(ctx: &FieldCtx, v: [FieldElem; 3]) -> Option<[FieldElem; 3]> {
    let lead = v.iter().copied().find(|&c| !ctx.is_zero(c))?;
    if lead == ctx.one() {
        return Some(v);
    }
    let inv = ctx.inv(lead).expect("nonzero");
    Some(v.map(|c| ctx.mul(c, inv)))
}

pub fn dot(ctx: &FieldCtx, a: &[FieldElem; 3], b: &[FieldElem; 3]) -> FieldElem {
    let s = ctx.add(ctx.mul(a[0], b[0]), ctx.mul(a[1], b[1]));
    ctx.add(s, ctx.mul(a[2], b[2]))
}

pub fn cross(ctx: &FieldCtx, a: &[FieldElem; 3], b: &[FieldElem; 3]) -> [FieldElem; 3] {
    let m = |x, y| ctx.mul(x, y);
    [
        ctx.sub(m(a[1], b[2]), m(a[2], b[1])),
        ctx.sub(m(a[2], b[0]), m(a[0], b[2])),
        ctx.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

fn det3(ctx: &FieldCtx, rows: [&[FieldElem; 3]; 3]) -> FieldElem {
    dot(ctx, rows[0], &cross(ctx, rows[1], rows[2]))
}

/// Canonical index of a normalized triple, matching the enumeration order
/// of [`all_points`]: `(1,y,z)`, then `(0,1,z)`, then `(0,0,1)`.
fn triple_index(ctx: &FieldCtx, v: &[FieldElem; 3]) -> u64 {
    let q = ctx.q();
    if !ctx.is_zero(v[0]) {
        ctx.index(v[1]) * q + ctx.index(v[2])
    } else if !ctx.is_zero(v[1]) {
        q * q + ctx.index(v[2])
    } else {
        q * q + q
    }
}

fn triple_from_index(ctx: &FieldCtx, i: u64) -> [FieldElem; 3] {
    let q = ctx.q();
    let (zero, one) = (ctx.zero(), ctx.one());
    if i < q * q {
        [one, ctx.from_index(i / q), ctx.from_index(i % q)]
    } else if i < q * q + q {
        [zero, one, ctx.from_index(i - q * q)]
    } else {
        [zero, zero, one]
    }
}

macro_rules! homogeneous {
    ($ty:ident) => {
        impl $ty {
            /// Normalizes a nonzero triple.
            pub fn new(ctx: &FieldCtx, v: [FieldElem; 3]) -> Result<Self> {
                if !v.iter().all(|&c| ctx.contains(c)) {
                    return Err(Error::MixedFields(ctx.q()));
                }
                normalize(ctx, v).map($ty).ok_or(Error::ZeroVector)
            }

            pub fn from_ints(ctx: &FieldCtx, v: [i64; 3]) -> Result<Self> {
                Self::new(ctx, v.map(|c| ctx.from_int(c)))
            }

            pub fn coords(&self) -> &[FieldElem; 3] {
                &self.0
            }

            /// Position in the canonical enumeration, in `0..q^2+q+1`.
            pub fn index(&self, ctx: &FieldCtx) -> u64 {
                triple_index(ctx, &self.0)
            }

            pub fn from_index(ctx: &FieldCtx, i: u64) -> Self {
                $ty(triple_from_index(ctx, i))
            }

            /// True iff every coordinate lies in `ctx`.
            pub fn belongs_to(&self, ctx: &FieldCtx) -> bool {
                self.0.iter().all(|&c| ctx.contains(c))
            }

            pub fn format(&self, ctx: &FieldCtx) -> String {
                let c = self.0.map(|x| ctx.format(x));
                format!("({}, {}, {})", c[0], c[1], c[2])
            }
        }
    };
}

homogeneous!(ProjPoint);
homogeneous!(ProjLine);

impl ProjLine {
    pub fn contains(&self, ctx: &FieldCtx, p: &ProjPoint) -> bool {
        ctx.is_zero(dot(ctx, &self.0, &p.0))
    }

    /// Two spanning points of the line; every point is `a + lambda b`
    /// for some `lambda`, or `b` itself.
    fn basis(&self, ctx: &FieldCtx) -> ([FieldElem; 3], [FieldElem; 3]) {
        let [a, b, c] = self.0;
        let (zero, one) = (ctx.zero(), ctx.one());
        if !ctx.is_zero(a) {
            ([ctx.neg(b), one, zero], [ctx.neg(c), zero, one])
        } else if !ctx.is_zero(b) {
            ([one, zero, zero], [zero, ctx.neg(c), one])
        } else {
            ([one, zero, zero], [zero, one, zero])
        }
    }

    /// The q + 1 points of the line.
    pub fn points<'a>(&self, ctx: &'a FieldCtx) -> impl Iterator<Item = ProjPoint> + 'a {
        let (u, v) = self.basis(ctx);
        ctx.elements()
            .map(move |lam| {
                let w = [
                    ctx.add(u[0], ctx.mul(lam, v[0])),
                    ctx.add(u[1], ctx.mul(lam, v[1])),
                    ctx.add(u[2], ctx.mul(lam, v[2])),
                ];
                ProjPoint(normalize(ctx, w).expect("u, v independent"))
            })
            .chain(std::iter::once(ProjPoint(normalize(ctx, v).expect("nonzero"))))
    }
}

/// True iff the three points lie on a common line.
pub fn collinear(ctx: &FieldCtx, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Result<bool> {
    if !(a.belongs_to(ctx) && b.belongs_to(ctx) && c.belongs_to(ctx)) {
        return Err(Error::MixedFields(ctx.q()));
    }
    Ok(ctx.is_zero(det3(ctx, [&a.0, &b.0, &c.0])))
}

/// The unique line through two distinct points.
pub fn line_through(ctx: &FieldCtx, a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine> {
    if a == b {
        return Err(Error::EqualPoints);
    }
    Ok(ProjLine(normalize(ctx, cross(ctx, &a.0, &b.0)).expect("distinct points")))
}

/// All q^2 + q + 1 points in canonical order.
pub fn all_points(ctx: &FieldCtx) -> impl Iterator<Item = ProjPoint> + '_ {
    let n = ctx.q() * ctx.q() + ctx.q() + 1;
    (0..n).map(move |i| ProjPoint::from_index(ctx, i))
}

/// All q^2 + q + 1 lines in canonical order.
pub fn all_lines(ctx: &FieldCtx) -> impl Iterator<Item = ProjLine> + '_ {
    let n = ctx.q() * ctx.q() + ctx.q() + 1;
    (0..n).map(move |i| ProjLine::from_index(ctx, i))
}

/// A 3x3 matrix over a field; acts on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[FieldElem; 3]; 3]);

impl Mat3 {
    pub fn identity(ctx: &FieldCtx) -> Self {
        let (o, l) = (ctx.zero(), ctx.one());
        Mat3([[l, o, o], [o, l, o], [o, o, l]])
    }

    pub fn from_ints(ctx: &FieldCtx, m: [[i64; 3]; 3]) -> Self {
        Mat3(m.map(|row| row.map(|c| ctx.from_int(c))))
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Mat3) -> Mat3 {
        let mut out = [[ctx.zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = ctx.zero();
                for k in 0..3 {
                    acc = ctx.add(acc, ctx.mul(self.0[i][k], other.0[k][j]));
                }
                *cell = acc;
            }
        }
        Mat3(out)
    }

    pub fn det(&self, ctx: &FieldCtx) -> FieldElem {
        det3(ctx, [&self.0[0], &self.0[1], &self.0[2]])
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> Mat3 {
        Mat3(self.0.map(|row| row.map(|x| ctx.mul(x, c))))
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[FieldElem; 3]) -> [FieldElem; 3] {
        [dot(ctx, &self.0[0], v), dot(ctx, &self.0[1], v), dot(ctx, &self.0[2], v)]
    }

    /// Representative modulo scalars: the first nonzero entry in row-major
    /// order is 1.
    pub fn canonical(&self, ctx: &FieldCtx) -> Mat3 {
        let lead = self.0.iter().flatten().copied().find(|&c| !ctx.is_zero(c));
        match lead {
            Some(l) if l != ctx.one() => self.scale(ctx, ctx.inv(l).expect("nonzero")),
            _ => *self,
        }
    }

    /// Image of a point under the projectivity.
    pub fn apply(&self, ctx: &FieldCtx, p: &ProjPoint) -> Result<ProjPoint> {
        if ctx.is_zero(self.det(ctx)) {
            return Err(Error::SingularMatrix);
        }
        Ok(self.apply_unchecked(ctx, p))
    }

    /// [`Mat3::apply`] without the determinant test.
    pub fn apply_unchecked(&self, ctx: &FieldCtx, p: &ProjPoint) -> ProjPoint {
        ProjPoint(normalize(ctx, self.mul_vec(ctx, &p.0)).expect("nonsingular"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn collinear_examples() {
        let f = make_field(61, 1).unwrap();
        let p = |v| ProjPoint::from_ints(&f, v).unwrap();
        assert!(collinear(&f, &p([1, 0, 0]), &p([0, 1, 0]), &p([1, 1, 0])).unwrap());
        assert!(collinear(&f, &p([1, 2, 3]), &p([1, 2, 3]), &p([0, 1, 5])).unwrap());
        assert!(!collinear(&f, &p([1, 0, 0]), &p([0, 1, 0]), &p([0, 0, 1])).unwrap());
    }

    #[test]
    fn mixed_fields_rejected() {
        let big = make_field(19, 2).unwrap();
        let small = make_field(19, 1).unwrap();
        let a = ProjPoint::new(&big, [big.one(), big.generator(), big.zero()]).unwrap();
        let b = ProjPoint::from_ints(&small, [0, 1, 0]).unwrap();
        assert_eq!(collinear(&small, &a, &b, &b), Err(Error::MixedFields(19)));
        assert_eq!(ProjPoint::from_ints(&small, [0, 0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn line_through_examples() {
        let f = make_field(61, 1).unwrap();
        let p = |v| ProjPoint::from_ints(&f, v).unwrap();
        let l = line_through(&f, &p([1, 0, 0]), &p([0, 1, 0])).unwrap();
        assert_eq!(l, ProjLine::from_ints(&f, [0, 0, 1]).unwrap());
        assert_eq!(line_through(&f, &p([1, 0, 0]), &p([2, 0, 0])), Err(Error::EqualPoints));
    }

    #[test]
    fn apply_examples() {
        let f = make_field(61, 1).unwrap();
        let p = ProjPoint::from_ints(&f, [3, 4, 5]).unwrap();
        assert_eq!(Mat3::identity(&f).apply(&f, &p).unwrap(), p);
        let m = Mat3::from_ints(&f, [[1, 2, 3], [0, 1, 4], [5, 6, 0]]);
        let scaled = m.scale(&f, f.from_int(17));
        assert_eq!(m.apply(&f, &p).unwrap(), scaled.apply(&f, &p).unwrap());
        let sing = Mat3::from_ints(&f, [[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(sing.apply(&f, &p), Err(Error::SingularMatrix));
    }

    #[test]
    fn enumeration_counts_and_order() {
        for (p, r) in [(7, 1), (61, 1), (7, 2)] {
            let f = make_field(p, r).unwrap();
            let n = f.q() * f.q() + f.q() + 1;
            let pts: Vec<_> = all_points(&f).collect();
            assert_eq!(pts.len() as u64, n);
            let set: HashSet<_> = pts.iter().collect();
            assert_eq!(set.len() as u64, n);
            for (i, pt) in pts.iter().enumerate() {
                assert_eq!(pt.index(&f), i as u64);
                assert_eq!(ProjPoint::new(&f, *pt.coords()).unwrap(), *pt);
            }
            assert_eq!(all_lines(&f).count() as u64, n);
        }
        assert_eq!(all_points(&make_field(61, 1).unwrap()).count(), 3783);
        assert_eq!(all_lines(&make_field(7, 2).unwrap()).count(), 2451);
    }

    #[test]
    fn incidence_regularity() {
        for (p, r) in [(7, 1), (11, 1), (3, 2)] {
            let f = make_field(p, r).unwrap();
            let q1 = f.q() as usize + 1;
            let lines: Vec<_> = all_lines(&f).collect();
            for l in &lines {
                let on: Vec<_> = l.points(&f).collect();
                assert_eq!(on.len(), q1);
                assert_eq!(on.iter().collect::<HashSet<_>>().len(), q1);
                assert!(on.iter().all(|pt| l.contains(&f, pt)));
            }
            for pt in all_points(&f) {
                assert_eq!(lines.iter().filter(|l| l.contains(&f, &pt)).count(), q1);
            }
        }
    }

    fn arb_point(f: FieldCtx) -> impl Strategy<Value = ProjPoint> {
        let n = f.q() * f.q() + f.q() + 1;
        (0..n).prop_map(move |i| ProjPoint::from_index(&f, i))
    }

    proptest! {
        #[test]
        fn collinearity_invariances(
            (a, b, c) in (arb_point(make_field(19, 2).unwrap()), arb_point(make_field(19, 2).unwrap()), arb_point(make_field(19, 2).unwrap())),
            k in 1i64..18,
            m in proptest::array::uniform9(0i64..19),
        ) {
            let f = make_field(19, 2).unwrap();
            let base = collinear(&f, &a, &b, &c).unwrap();
            prop_assert_eq!(collinear(&f, &c, &a, &b).unwrap(), base);
            prop_assert_eq!(collinear(&f, &b, &a, &c).unwrap(), base);
            // raw rescaled rows give the same determinant up to a unit
            let scaled = a.coords().map(|x| f.mul(x, f.from_int(k)));
            let d = dot(&f, &scaled, &cross(&f, b.coords(), c.coords()));
            prop_assert_eq!(f.is_zero(d), base);
            let mat = Mat3::from_ints(&f, [[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]]);
            if !f.is_zero(mat.det(&f)) {
                let (ma, mb, mc) = (mat.apply(&f, &a).unwrap(), mat.apply(&f, &b).unwrap(), mat.apply(&f, &c).unwrap());
                prop_assert_eq!(collinear(&f, &ma, &mb, &mc).unwrap(), base);
            }
            if a != b {
                let l = line_through(&f, &a, &b).unwrap();
                prop_assert!(l.contains(&f, &a) && l.contains(&f, &b));
                prop_assert_eq!(l.contains(&f, &c), base);
            }
        }
    }
}
