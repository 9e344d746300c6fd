//! Finite colimits and limits of delta complexes, computed degreewise.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::id::fresh_id;
use super::{same_complex, ArrowSquare, DeltaComplex, SimplexId, SimplicialMap};
use crate::error::{bail, Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Tagged identifier used for coproduct summands.
pub fn tagged(part: usize, id: &SimplexId) -> SimplexId {
    SimplexId::from(format!("{part}:{id}"))
}

/// Elements `(part, simplex)` of a disjoint union, indexed densely.
struct Elements<'a> {
    items: Vec<(usize, usize, &'a SimplexId)>, // (part, dim, id)
    index: HashMap<(usize, &'a str), usize>,
}

impl<'a> Elements<'a> {
    fn new(parts: &[&'a DeltaComplex]) -> Self {
        let mut items = Vec::new();
        let mut index = HashMap::new();
        for (p, x) in parts.iter().enumerate() {
            for (k, id, _) in x.iter() {
                index.insert((p, id.as_str()), items.len());
                items.push((p, k, id));
            }
        }
        Elements { items, index }
    }

    fn idx(&self, part: usize, id: &str) -> usize {
        self.index[&(part, id)]
    }
}

/// Builds the quotient complex of a disjoint union once every element has a
/// class name. Faces are read off any representative; a disagreement means
/// the relation was not compatible with faces.
fn quotient_complex(parts: &[&DeltaComplex], elems: &Elements<'_>, uf: &mut UnionFind, names: &HashMap<usize, SimplexId>) -> Result<DeltaComplex> {
    let mut out = DeltaComplex::empty();
    let mut seen: HashMap<usize, Vec<SimplexId>> = HashMap::new();
    for (e, &(p, _, id)) in elems.items.iter().enumerate() {
        let root = uf.find(e);
        let faces: Vec<SimplexId> = parts[p]
            .faces_of(id)
            .iter()
            .map(|f| {
                let r = uf.find(elems.idx(p, f));
                names[&r].clone()
            })
            .collect();
        match seen.get(&root) {
            Some(prev) if *prev != faces => {
                return Err(Error::Internal(format!("quotient identifies simplices with different faces at {id}")));
            }
            Some(_) => {}
            None => {
                out.push_unchecked(names[&root].clone(), faces.clone());
                seen.insert(root, faces);
            }
        }
    }
    Ok(out)
}

fn leg(from: &Arc<DeltaComplex>, to: &Arc<DeltaComplex>, part: usize, elems: &Elements<'_>, uf: &mut UnionFind, names: &HashMap<usize, SimplexId>) -> SimplicialMap {
    let assign = from
        .iter()
        .map(|(_, id, _)| {
            let r = uf.find(elems.idx(part, id));
            (id.clone(), names[&r].clone())
        })
        .collect();
    SimplicialMap::new_unchecked(from.clone(), to.clone(), assign)
}

/// Disjoint union with identifiers tagged `"{part}:{id}"`, plus the inclusions.
pub fn coproduct(parts: &[Arc<DeltaComplex>]) -> (Arc<DeltaComplex>, Vec<SimplicialMap>) {
    let mut out = DeltaComplex::empty();
    for (p, x) in parts.iter().enumerate() {
        for (_, id, faces) in x.iter() {
            out.push_unchecked(tagged(p, id), faces.iter().map(|f| tagged(p, f)).collect());
        }
    }
    let out = Arc::new(out);
    let legs = parts
        .iter()
        .enumerate()
        .map(|(p, x)| {
            let assign = x.iter().map(|(_, id, _)| (id.clone(), tagged(p, id))).collect();
            SimplicialMap::new_unchecked(x.clone(), out.clone(), assign)
        })
        .collect();
    (out, legs)
}

/// Colimit of a finite diagram: objects plus arrows `(source, target, map)`.
/// Classes are named by their least tagged member, so the result of a
/// discrete diagram is exactly [`coproduct`].
pub fn colimit(objects: &[Arc<DeltaComplex>], arrows: &[(usize, usize, SimplicialMap)]) -> Result<(Arc<DeltaComplex>, Vec<SimplicialMap>)> {
    for (s, t, m) in arrows {
        if *s >= objects.len() || *t >= objects.len() || !same_complex(m.dom(), &objects[*s]) || !same_complex(m.cod(), &objects[*t]) {
            bail!(NotComposable, "diagram arrow {s} -> {t} has mismatched endpoints");
        }
    }
    let parts: Vec<&DeltaComplex> = objects.iter().map(|x| &**x).collect();
    let elems = Elements::new(&parts);
    let mut uf = UnionFind::new(elems.items.len());
    for (s, t, m) in arrows {
        for (x, y) in m.assignment() {
            uf.union(elems.idx(*s, x), elems.idx(*t, y));
        }
    }
    let mut best: HashMap<usize, SimplexId> = HashMap::new();
    for (e, &(p, _, id)) in elems.items.iter().enumerate() {
        let r = uf.find(e);
        let name = tagged(p, id);
        best.entry(r).and_modify(|b| if name < *b { *b = name.clone() }).or_insert(name);
    }
    let out = Arc::new(quotient_complex(&parts, &elems, &mut uf, &best)?);
    let legs = objects.iter().enumerate().map(|(p, x)| leg(x, &out, p, &elems, &mut uf, &best)).collect();
    Ok((out, legs))
}

/// Degreewise pushout of `f: A -> X` and `g: A -> Y`.
///
/// Classes meeting `Y` keep their least `Y` identifier; the remaining
/// singleton `X` classes keep their own identifier unless it collides, in
/// which case it is primed. Along a degreewise-injective `f`, `Y` therefore
/// survives verbatim.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<(Arc<DeltaComplex>, SimplicialMap, SimplicialMap)> {
    if !same_complex(f.dom(), g.dom()) {
        bail!(NotComposable, "pushout legs have different domains");
    }
    let (x, y) = (f.cod(), g.cod());
    let parts = [&**x, &**y];
    let elems = Elements::new(&parts);
    let mut uf = UnionFind::new(elems.items.len());
    for (a, fa) in f.assignment() {
        uf.union(elems.idx(0, fa), elems.idx(1, g.at(a)));
    }
    let mut names: HashMap<usize, SimplexId> = HashMap::new();
    for (e, &(p, _, id)) in elems.items.iter().enumerate() {
        if p == 1 {
            let r = uf.find(e);
            names.entry(r).and_modify(|b| if id < b { *b = id.clone() }).or_insert_with(|| id.clone());
        }
    }
    let mut taken: HashSet<SimplexId> = y.iter().map(|(_, id, _)| id.clone()).collect();
    for (e, &(p, _, id)) in elems.items.iter().enumerate() {
        if p == 0 {
            let r = uf.find(e);
            names.entry(r).or_insert_with(|| fresh_id(id, &mut taken));
        }
    }
    let out = Arc::new(quotient_complex(&parts, &elems, &mut uf, &names)?);
    let to_x = leg(x, &out, 0, &elems, &mut uf, &names);
    let to_y = leg(y, &out, 1, &elems, &mut uf, &names);
    Ok((out, to_x, to_y))
}

/// Degreewise coequaliser of parallel `f, g: X -> Y`; classes are named by
/// their least identifier.
pub fn coequaliser(f: &SimplicialMap, g: &SimplicialMap) -> Result<(Arc<DeltaComplex>, SimplicialMap)> {
    if !same_complex(f.dom(), g.dom()) || !same_complex(f.cod(), g.cod()) {
        bail!(NotComposable, "coequaliser needs parallel maps");
    }
    let y = f.cod();
    let parts = [&**y];
    let elems = Elements::new(&parts);
    let mut uf = UnionFind::new(elems.items.len());
    for (x, fx) in f.assignment() {
        uf.union(elems.idx(0, fx), elems.idx(0, g.at(x)));
    }
    let mut names: HashMap<usize, SimplexId> = HashMap::new();
    for (e, &(_, _, id)) in elems.items.iter().enumerate() {
        let r = uf.find(e);
        names.entry(r).and_modify(|b| if id < b { *b = id.clone() }).or_insert_with(|| id.clone());
    }
    let out = Arc::new(quotient_complex(&parts, &elems, &mut uf, &names)?);
    let q = leg(y, &out, 0, &elems, &mut uf, &names);
    Ok((out, q))
}

/// The subcomplex of `X` where parallel `f, g: X -> Y` agree, and its inclusion.
pub fn equaliser(f: &SimplicialMap, g: &SimplicialMap) -> Result<(Arc<DeltaComplex>, SimplicialMap)> {
    if !same_complex(f.dom(), g.dom()) || !same_complex(f.cod(), g.cod()) {
        bail!(NotComposable, "equaliser needs parallel maps");
    }
    let x = f.dom();
    let e = Arc::new(x.filter_unchecked(|s| f.at(s) == g.at(s)));
    let incl = SimplicialMap::inclusion_unchecked(e.clone(), x.clone());
    Ok((e, incl))
}

/// Pairs `(x', y)` with `r(x') = b(y)`, grouped by degree in the order of `Y`.
fn matching_pairs<'m>(r: &'m SimplicialMap, b: &'m SimplicialMap) -> Vec<(&'m SimplexId, &'m SimplexId)> {
    let mut fibre: HashMap<&SimplexId, Vec<&SimplexId>> = HashMap::new();
    for (xs, img) in r.assignment() {
        fibre.entry(img).or_default().push(xs);
    }
    let mut out = Vec::new();
    for (_, ys, _) in b.dom().iter() {
        for xs in fibre.get(b.at(ys)).into_iter().flatten() {
            out.push((*xs, b.dom().get_id(ys).expect("present")));
        }
    }
    out
}

/// Degreewise pullback of the cospan `r: X' -> Y'`, `b: Y -> Y'`, with the
/// two projections. Simplices are named `"(x'|y)"`.
pub fn pullback(r: &SimplicialMap, b: &SimplicialMap) -> Result<(Arc<DeltaComplex>, SimplicialMap, SimplicialMap)> {
    if !same_complex(r.cod(), b.cod()) {
        bail!(NotComposable, "pullback needs a cospan");
    }
    let (xp, y) = (r.dom(), b.dom());
    let pairs = matching_pairs(r, b);
    let names: HashMap<(&SimplexId, &SimplexId), SimplexId> =
        pairs.iter().map(|&(a, c)| ((a, c), SimplexId::from(format!("({a}|{c})")))).collect();
    if names.values().collect::<HashSet<_>>().len() != names.len() {
        return Err(Error::Internal("pullback names collide".into()));
    }
    let mut out = DeltaComplex::empty();
    let mut p1 = BTreeMap::new();
    let mut p2 = BTreeMap::new();
    for &(a, c) in &pairs {
        let faces = xp.faces_of(a).iter().zip(y.faces_of(c)).map(|(fa, fc)| names[&(fa, fc)].clone()).collect();
        let n = names[&(a, c)].clone();
        out.push_unchecked(n.clone(), faces);
        p1.insert(n.clone(), a.clone());
        p2.insert(n, c.clone());
    }
    let out = Arc::new(out);
    Ok((
        out.clone(),
        SimplicialMap::new_unchecked(out.clone(), xp.clone(), p1),
        SimplicialMap::new_unchecked(out, y.clone(), p2),
    ))
}

/// Whether the corner `X` of a commuting square is the degreewise pullback of
/// `right` and `bottom`: the comparison `x ↦ (top x, left x)` must be a
/// bijection onto the set of matching pairs in every degree.
pub fn is_pullback(sq: &ArrowSquare) -> Result<bool> {
    sq.validate()?;
    let pairs: HashSet<(&SimplexId, &SimplexId)> = matching_pairs(&sq.right, &sq.bottom).into_iter().collect();
    let mut hit = HashSet::new();
    for (x, t) in sq.top.assignment() {
        let pair = (t, sq.left.at(x));
        if !pairs.contains(&pair) || !hit.insert(pair) {
            return Ok(false);
        }
    }
    Ok(hit.len() == pairs.len())
}
