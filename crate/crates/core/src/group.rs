//! The projectivity group generated by U, Omega, V and W, built by
//! breadth-first closure over canonical matrix forms.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{validate_q, FieldCtx, SpecialElems};
use crate::plane::{Mat3, ProjPoint};

/// Order of the group generated by the four matrices.
pub const GROUP_ORDER: usize = 360;

/// Longest generator word accepted during closure.
pub const MAX_WORD_LEN: usize = 25;

/// Element-order histogram of A6.
pub const A6_ORDER_HISTOGRAM: [(u32, usize); 5] = [(1, 1), (2, 45), (3, 80), (4, 90), (5, 144)];

/// One of the four generators, in BFS order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    U,
    Omega,
    V,
    W,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::U, Gen::Omega, Gen::V, Gen::W];

    pub fn symbol(self) -> &'static str {
        match self {
            Gen::U => "U",
            Gen::Omega => "O",
            Gen::V => "V",
            Gen::W => "W",
        }
    }
}

/// A product of generators, read left to right as a matrix product; the
/// empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for g in &self.0 {
            f.write_str(g.symbol())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub u: Mat3,
    pub omega: Mat3,
    pub v: Mat3,
    pub w: Mat3,
}

impl GeneratorSet {
    pub fn get(&self, g: Gen) -> &Mat3 {
        match g {
            Gen::U => &self.u,
            Gen::Omega => &self.omega,
            Gen::V => &self.v,
            Gen::W => &self.w,
        }
    }

    /// Evaluates a word as a matrix (not normalized).
    pub fn eval(&self, ctx: &FieldCtx, word: &Word) -> Mat3 {
        word.0
            .iter()
            .fold(Mat3::identity(ctx), |acc, &g| acc.mul(ctx, self.get(g)))
    }
}

/// The four generator matrices over `sp.plane`.
pub fn build_generators(sp: &SpecialElems) -> Result<GeneratorSet> {
    let base = sp.base;
    if !validate_q(base.p(), base.r()) {
        return Err(Error::InvalidQ {
            p: base.p(),
            r: base.r(),
            q: base.q(),
            residue: crate::field::q_mod_30(base.p(), base.r()),
        });
    }
    let k = &sp.plane;
    let (o, l) = (k.zero(), k.one());
    let t = sp.t;
    let t2 = k.sqr(t);
    let n = |v| k.from_int(v);
    let dz = k.mul(sp.delta, sp.z);
    let (pl, mi) = (k.add(l, dz), k.sub(l, dz));
    let gens = GeneratorSet {
        u: Mat3([[o, o, l], [l, o, o], [o, l, o]]),
        omega: Mat3([[l, o, o], [o, t, o], [o, o, t2]]),
        v: Mat3([[n(-2), pl, pl], [mi, n(4), n(-2)], [mi, n(-2), n(4)]]),
        w: Mat3([[l, l, l], [l, t, t2], [l, t2, t]]),
    };
    for g in Gen::ALL {
        if k.is_zero(gens.get(g).det(k)) {
            return Err(Error::SingularMatrix);
        }
    }
    Ok(gens)
}

/// A finite projectivity group with one generator word per element.
#[derive(Clone, Debug)]
pub struct ProjectivityGroup {
    ctx: FieldCtx,
    gens: GeneratorSet,
    elements: Vec<Mat3>,
    words: Vec<Word>,
    index: HashMap<Mat3, usize>,
}

/// Breadth-first closure under left multiplication by the generators in
/// `gens_used`, stopping with [`Error::ClosureOverflow`] past `max_order`.
pub fn closure(
    ctx: &FieldCtx,
    gens: &GeneratorSet,
    gens_used: &[Gen],
    max_order: usize,
) -> Result<ProjectivityGroup> {
    let id = Mat3::identity(ctx);
    let mut elements = vec![id];
    let mut words = vec![Word::default()];
    let mut index = HashMap::from([(id, 0)]);
    let mut frontier = VecDeque::from([0usize]);
    while let Some(h) = frontier.pop_front() {
        for &g in gens_used {
            let m = gens.get(g).mul(ctx, &elements[h]).canonical(ctx);
            if index.contains_key(&m) {
                continue;
            }
            let mut w = Vec::with_capacity(words[h].0.len() + 1);
            w.push(g);
            w.extend_from_slice(&words[h].0);
            if elements.len() == max_order || w.len() > MAX_WORD_LEN {
                return Err(Error::ClosureOverflow { elements: max_order, word_len: MAX_WORD_LEN });
            }
            index.insert(m, elements.len());
            frontier.push_back(elements.len());
            elements.push(m);
            words.push(Word(w));
        }
    }
    Ok(ProjectivityGroup { ctx: *ctx, gens: *gens, elements, words, index })
}

/// The group generated by all four matrices; must have order 360.
pub fn generate(ctx: &FieldCtx, gens: &GeneratorSet) -> Result<ProjectivityGroup> {
    let g = closure(ctx, gens, &Gen::ALL, GROUP_ORDER)?;
    if g.order() != GROUP_ORDER {
        return Err(Error::InternalInconsistency(format!(
            "group has order {}, expected {GROUP_ORDER}",
            g.order()
        )));
    }
    Ok(g)
}

impl ProjectivityGroup {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in BFS discovery order; index 0 is the identity.
    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn position(&self, m: &Mat3) -> Option<usize> {
        self.index.get(&m.canonical(&self.ctx)).copied()
    }

    pub fn contains(&self, m: &Mat3) -> bool {
        self.position(m).is_some()
    }

    pub fn multiply(&self, a: usize, b: usize) -> Mat3 {
        self.elements[a].mul(&self.ctx, &self.elements[b]).canonical(&self.ctx)
    }

    /// Multiplicative order of the element at position `i`.
    pub fn element_order(&self, i: usize) -> u32 {
        let m = &self.elements[i];
        let mut acc = *m;
        let mut n = 1;
        while acc != self.elements[0] {
            acc = acc.mul(&self.ctx, m).canonical(&self.ctx);
            n += 1;
        }
        n
    }

    pub fn order_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for i in 0..self.order() {
            *h.entry(self.element_order(i)).or_insert(0) += 1;
        }
        h
    }

    /// Positions of the elements fixing `p`.
    pub fn point_stabilizer(&self, p: &ProjPoint) -> Stabilizer {
        let members = (0..self.order())
            .filter(|&i| self.elements[i].apply_unchecked(&self.ctx, p) == *p)
            .collect();
        Stabilizer { members }
    }

    /// The orbit of `p`, in discovery order over the BFS element order.
    /// `reps[k]` is the position of the first element mapping `p` to
    /// `points[k]`.
    pub fn orbit(&self, p: &ProjPoint) -> Orbit {
        let mut seen = HashMap::new();
        let mut points = Vec::new();
        let mut reps = Vec::new();
        for (i, m) in self.elements.iter().enumerate() {
            let img = m.apply_unchecked(&self.ctx, p);
            seen.entry(img).or_insert_with(|| {
                points.push(img);
                reps.push(i);
            });
        }
        Orbit { points, reps }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub members: Vec<usize>,
}

impl Stabilizer {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// True iff some member's order equals the stabilizer's order.
    pub fn is_cyclic(&self, g: &ProjectivityGroup) -> bool {
        self.members.iter().any(|&i| g.element_order(i) as usize == self.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<ProjPoint>,
    pub reps: Vec<usize>,
}
