//! The 90-point orbit of the fixed point P1 of W, and its incidence
//! structure with the lines of the plane it lives in.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{
    make_field, q_mod_30, special_elems_with, validate_q, ElemChoice, FieldCtx, FieldElem,
    SpecialElems,
};
use crate::group::{build_generators, generate, ProjectivityGroup, Word};
use crate::plane::{dot, line_through, Mat3, ProjLine, ProjPoint};

pub const ORBIT_SIZE: usize = 90;
pub const STABILIZER_ORDER: usize = 4;

/// The three fixed points of W: `P1 = (1, (s-1)/2, (s-1)/2)`,
/// `P2 = (1, -(s+1)/2, -(s+1)/2)` and `P3 = (0, 1, -1)`.
///
/// Also checks that the characteristic polynomial of W is
/// `(x^2 - 3)(x - (1 + 2t))` and that each point is fixed.
pub fn fixed_points_of_w(sp: &SpecialElems) -> Result<[ProjPoint; 3]> {
    let base = sp.base;
    if !validate_q(base.p(), base.r()) {
        return Err(Error::InvalidQ {
            p: base.p(),
            r: base.r(),
            q: base.q(),
            residue: q_mod_30(base.p(), base.r()),
        });
    }
    let k = &sp.plane;
    let w = build_generators(sp)?.w;
    // a monic cubic is pinned down by four values
    for x in 0..4 {
        let x = k.from_int(x);
        let shifted = Mat3([
            [k.sub(x, w.0[0][0]), k.neg(w.0[0][1]), k.neg(w.0[0][2])],
            [k.neg(w.0[1][0]), k.sub(x, w.0[1][1]), k.neg(w.0[1][2])],
            [k.neg(w.0[2][0]), k.neg(w.0[2][1]), k.sub(x, w.0[2][2])],
        ]);
        let expected = k.mul(
            k.sub(k.sqr(x), k.from_int(3)),
            k.sub(x, k.add(k.one(), k.add(sp.t, sp.t))),
        );
        if shifted.det(k) != expected {
            return Err(Error::InternalInconsistency("characteristic polynomial of W".into()));
        }
    }
    let half = k.inv(k.from_int(2)).expect("odd characteristic");
    let a = k.mul(k.sub(sp.s, k.one()), half);
    let b = k.neg(k.mul(k.add(sp.s, k.one()), half));
    let pts = [
        ProjPoint::new(k, [k.one(), a, a])?,
        ProjPoint::new(k, [k.one(), b, b])?,
        ProjPoint::new(k, [k.zero(), k.one(), k.from_int(-1)])?,
    ];
    for pt in &pts {
        if w.apply(k, pt)? != *pt {
            return Err(Error::InternalInconsistency("eigenvector of W is not fixed".into()));
        }
    }
    Ok(pts)
}

/// The orbit together with everything used to build it.
#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub special: SpecialElems,
    pub group: ProjectivityGroup,
    /// Index 0 is P1; the rest in BFS discovery order.
    pub points: Vec<ProjPoint>,
    /// Coset representative word mapping P1 to each point.
    pub words: Vec<Word>,
}

impl OrbitResult {
    /// The field of definition of the group, GF(q).
    pub fn base(&self) -> &FieldCtx {
        &self.special.base
    }

    /// The field the orbit lives in: GF(q) or GF(q^2).
    pub fn plane(&self) -> &FieldCtx {
        &self.special.plane
    }

    pub fn plane_q(&self) -> u64 {
        self.special.plane.q()
    }

    pub fn basepoint(&self) -> &ProjPoint {
        &self.points[0]
    }

    pub fn contains(&self, pt: &ProjPoint) -> bool {
        self.points.contains(pt)
    }
}

pub fn construct_orbit(p: u64, r: u32) -> Result<OrbitResult> {
    construct_orbit_with(p, r, ElemChoice::default())
}

/// Builds the orbit using the given conjugates of t, z and s.
pub fn construct_orbit_with(p: u64, r: u32, choice: ElemChoice) -> Result<OrbitResult> {
    let base = make_field(p, r)?;
    let special = special_elems_with(&base, choice)?;
    let gens = build_generators(&special)?;
    let group = generate(&special.plane, &gens)?;
    let [p1, _, _] = fixed_points_of_w(&special)?;
    let orbit = group.orbit(&p1);
    if orbit.points.len() != ORBIT_SIZE {
        return Err(Error::InternalInconsistency(format!("orbit size {}", orbit.points.len())));
    }
    let stab = group.point_stabilizer(&p1).order();
    if stab != STABILIZER_ORDER {
        return Err(Error::InternalInconsistency(format!("stabilizer order {stab}")));
    }
    let words = orbit.reps.iter().map(|&i| group.words()[i].clone()).collect();
    Ok(OrbitResult { special, group, points: orbit.points, words })
}

/// A line meeting the orbit in at least two points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecantLine {
    pub line: ProjLine,
    /// Bit `i` is set iff orbit point `i` lies on the line.
    pub members: u128,
}

impl SecantLine {
    pub fn size(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..128).filter(|i| self.members >> i & 1 == 1)
    }
}

/// Every line through two orbit points, sorted by canonical line index.
pub fn secant_lines(orb: &OrbitResult) -> Vec<SecantLine> {
    let k = orb.plane();
    let n = orb.points.len();
    let mut map: HashMap<ProjLine, u128> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let l = line_through(k, &orb.points[i], &orb.points[j]).expect("distinct orbit points");
            *map.entry(l).or_insert(0) |= 1 << i | 1 << j;
        }
    }
    let mut out: Vec<_> = map.into_iter().map(|(line, members)| SecantLine { line, members }).collect();
    out.sort_by_key(|s| s.line.index(k));
    out
}

/// Number of lines meeting the orbit in each intersection size. Only
/// nonzero counts are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSpectrum {
    pub plane_q: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl LineSpectrum {
    pub fn from_pairs(plane_q: u64, pairs: &[(usize, u64)]) -> Self {
        LineSpectrum { plane_q, counts: pairs.iter().copied().filter(|&(_, c)| c > 0).collect() }
    }

    pub fn get(&self, m: usize) -> u64 {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    pub fn max_secancy(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// `(0,1,2,4,6)` style description.
    pub fn type_string(&self) -> String {
        let keys: Vec<String> = self.counts.keys().map(|k| k.to_string()).collect();
        format!("({})", keys.join(","))
    }

    /// Checks the three counting identities: all lines, point-line flags and
    /// point pairs.
    pub fn verify_identities(&self, orbit_size: usize) -> Result<()> {
        let q = self.plane_q as u128;
        let n = orbit_size as u128;
        let lines: u128 = self.counts.values().map(|&c| c as u128).sum();
        let flags: u128 = self.counts.iter().map(|(&m, &c)| m as u128 * c as u128).sum();
        let pairs: u128 = self
            .counts
            .iter()
            .map(|(&m, &c)| (m as u128 * (m as u128).saturating_sub(1) / 2) * c as u128)
            .sum();
        let checks = [
            ("line count", lines, q * q + q + 1),
            ("incidence count", flags, n * (q + 1)),
            ("pair count", pairs, n * (n - 1) / 2),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(Error::InternalInconsistency(format!("{what}: {got} != {want}")));
            }
        }
        Ok(())
    }
}

/// Line spectrum from the secant lines: tangents through each orbit point
/// are the q + 1 lines through it minus its secants, and external lines are
/// what remains.
pub fn line_spectrum(orb: &OrbitResult) -> LineSpectrum {
    spectrum_from_secants(orb, &secant_lines(orb))
}

pub fn spectrum_from_secants(orb: &OrbitResult, secants: &[SecantLine]) -> LineSpectrum {
    let q = orb.plane_q();
    let mut counts = BTreeMap::new();
    let mut through = vec![0u64; orb.points.len()];
    for s in secants {
        *counts.entry(s.size()).or_insert(0u64) += 1;
        for i in s.member_indices() {
            through[i] += 1;
        }
    }
    let tangents: u64 = through.iter().map(|&d| q + 1 - d).sum();
    let total = q * q + q + 1;
    let external = total - secants.len() as u64 - tangents;
    counts.insert(0, external);
    counts.insert(1, tangents);
    counts.retain(|_, c| *c > 0);
    LineSpectrum { plane_q: q, counts }
}

/// Line spectrum by testing every line of the plane against every orbit
/// point. Cost is `90 (q^2 + q + 1)`; used as an oracle for small planes.
pub fn line_spectrum_full_scan(orb: &OrbitResult) -> LineSpectrum {
    let k = *orb.plane();
    let q = k.q();
    let total = q * q + q + 1;
    let pts = &orb.points;
    let hist = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; pts.len() + 1],
            |mut h, i| {
                let l = ProjLine::from_index(&k, i);
                let m = pts.iter().filter(|p| k.is_zero(dot(&k, l.coords(), p.coords()))).count();
                h[m] += 1;
                h
            },
        )
        .reduce(
            || vec![0u64; pts.len() + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let pairs: Vec<(usize, u64)> = hist.into_iter().enumerate().collect();
    LineSpectrum::from_pairs(q, &pairs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcVerdict {
    pub is_arc: bool,
    /// Sorted index triples `i < j < k` of collinear orbit points.
    pub collinear_triples: Vec<[usize; 3]>,
}

/// Collinear triples read off the secant lines with three or more points.
pub fn arc_check(orb: &OrbitResult) -> ArcVerdict {
    arc_from_secants(&secant_lines(orb))
}

pub fn arc_from_secants(secants: &[SecantLine]) -> ArcVerdict {
    let mut triples = Vec::new();
    for s in secants.iter().filter(|s| s.size() >= 3) {
        let m: Vec<usize> = s.member_indices().collect();
        for a in 0..m.len() {
            for b in a + 1..m.len() {
                for c in b + 1..m.len() {
                    triples.push([m[a], m[b], m[c]]);
                }
            }
        }
    }
    triples.sort_unstable();
    ArcVerdict { is_arc: triples.is_empty(), collinear_triples: triples }
}

/// All collinear triples by evaluating every 3x3 determinant.
pub fn collinear_triples_brute(orb: &OrbitResult) -> Vec<[usize; 3]> {
    let k = *orb.plane();
    let pts = &orb.points;
    let n = pts.len();
    let mut out: Vec<[usize; 3]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut v = Vec::new();
            for j in i + 1..n {
                let c = crate::plane::cross(&k, pts[i].coords(), pts[j].coords());
                for l in j + 1..n {
                    if k.is_zero(dot(&k, &c, pts[l].coords())) {
                        v.push([i, j, l]);
                    }
                }
            }
            v
        })
        .collect();
    out.sort_unstable();
    out
}

/// How a completeness verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletenessMethod {
    /// Every point of the plane was classified.
    Exhaustive,
    /// The m-secants cannot cover the plane by counting; a witness was
    /// found by direct search.
    CountingBound,
    /// m <= 1: every line through an orbit point already has m points.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessVerdict {
    pub complete: bool,
    /// For incomplete sets, a point outside the orbit that can be added.
    pub witness: Option<ProjPoint>,
    pub method: CompletenessMethod,
}

/// True iff `x` lies outside the orbit and every line through `x` meets the
/// orbit in at most `m - 1` points, so the orbit plus `x` is still a
/// `(91, m)`-set.
pub fn extends(orb: &OrbitResult, x: &ProjPoint, m: usize) -> bool {
    if orb.contains(x) {
        return false;
    }
    let k = orb.plane();
    let mut seen: HashMap<ProjLine, usize> = HashMap::with_capacity(orb.points.len());
    for p in &orb.points {
        let l = line_through(k, x, p).expect("x is outside the orbit");
        let c = seen.entry(l).or_insert(0);
        *c += 1;
        if *c >= m {
            return false;
        }
    }
    true
}

/// Decides whether the orbit, viewed as a set with at most `m` points on a
/// line, is complete in its plane.
pub fn completeness_check(orb: &OrbitResult, m: usize) -> Result<CompletenessVerdict> {
    completeness_from_secants(orb, &secant_lines(orb), m)
}

pub fn completeness_from_secants(
    orb: &OrbitResult,
    secants: &[SecantLine],
    m: usize,
) -> Result<CompletenessVerdict> {
    if m <= 1 {
        return Ok(CompletenessVerdict { complete: true, witness: None, method: CompletenessMethod::Trivial });
    }
    let k = *orb.plane();
    let q = k.q();
    let total = q * q + q + 1;
    let blocking: Vec<&SecantLine> = secants.iter().filter(|s| s.size() >= m).collect();
    let coverable: u64 =
        orb.points.len() as u64 + blocking.iter().map(|s| q + 1 - s.size() as u64).sum::<u64>();

    if coverable < total {
        let witness = (0..total)
            .map(|i| ProjPoint::from_index(&k, i))
            .find(|x| extends(orb, x, m))
            .ok_or_else(|| Error::InternalInconsistency("no witness despite counting bound".into()))?;
        return Ok(CompletenessVerdict {
            complete: false,
            witness: Some(witness),
            method: CompletenessMethod::CountingBound,
        });
    }

    let mut covered = vec![0u64; total.div_ceil(64) as usize];
    let mut mark = |i: u64| covered[(i / 64) as usize] |= 1 << (i % 64);
    for p in &orb.points {
        mark(p.index(&k));
    }
    for s in &blocking {
        for p in s.line.points(&k) {
            mark(p.index(&k));
        }
    }
    let first_free = (0..total).find(|&i| covered[(i / 64) as usize] >> (i % 64) & 1 == 0);
    match first_free {
        None => Ok(CompletenessVerdict { complete: true, witness: None, method: CompletenessMethod::Exhaustive }),
        Some(i) => {
            let x = ProjPoint::from_index(&k, i);
            if !extends(orb, &x, m) {
                return Err(Error::InternalInconsistency(format!("witness {i} does not extend")));
            }
            Ok(CompletenessVerdict { complete: false, witness: Some(x), method: CompletenessMethod::Exhaustive })
        }
    }
}

/// Completeness by trying every plane point with [`extends`].
pub fn completeness_brute(orb: &OrbitResult, m: usize) -> bool {
    let k = *orb.plane();
    let total = k.q() * k.q() + k.q() + 1;
    !(0..total).into_par_iter().any(|i| extends(orb, &ProjPoint::from_index(&k, i), m))
}

/// Generator matrix of the `[n, 3, d]` MDS code of an arc; column `i` is
/// orbit point `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsCode {
    pub field: FieldCtx,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub columns: Vec<[FieldElem; 3]>,
}

impl MdsCode {
    /// Three CSV rows of `n` entries each, formatted by the field.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in 0..3 {
            let cells: Vec<String> = self.columns.iter().map(|c| self.field.format(c[row])).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn export_mds(orb: &OrbitResult) -> Result<MdsCode> {
    export_mds_from(orb, &line_spectrum(orb))
}

pub fn export_mds_from(orb: &OrbitResult, spectrum: &LineSpectrum) -> Result<MdsCode> {
    let max = spectrum.max_secancy();
    if max > 2 {
        return Err(Error::NotAnArc(max));
    }
    let n = orb.points.len();
    Ok(MdsCode {
        field: *orb.plane(),
        n,
        k: 3,
        d: n - max,
        columns: orb.points.iter().map(|p| *p.coords()).collect(),
    })
}

/// Distinct orbit points as a set; handy for Γ-invariance checks.
pub fn point_set(orb: &OrbitResult) -> HashSet<ProjPoint> {
    orb.points.iter().copied().collect()
}
