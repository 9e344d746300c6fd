#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use cellcx::corpus::{Generator, Limits};
use cellcx::{DeltaComplex, SimplexId, SimplicialMap};

/// Per stage, the number of cells of each dimension.
pub type StageCounts = Vec<BTreeMap<usize, usize>>;

/// A simplex of the oracle's own complex: dimension, faces by index, and
/// image in the codomain.
#[derive(Clone, Debug)]
struct Simp {
    dim: usize,
    faces: Vec<usize>,
    target: String,
    stage: usize,
}

/// Brute-force small object argument: at each stage list every tuple of
/// facet images over every simplex of `B`, keep the tuples satisfying the
/// simplicial identities, and at stages after the first keep only those
/// touching the newest simplices. Shares no code with the library.
pub fn oracle_free(f: &SimplicialMap, cap: usize) -> Option<(StageCounts, Vec<usize>)> {
    let a = f.dom();
    let b = f.cod();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut simps: Vec<Simp> = Vec::new();
    for k in 0..(a.max_dim() + 1) as usize {
        for id in a.simplices(k) {
            let faces = a.faces(id).unwrap().iter().map(|x| index[x.as_str()]).collect();
            index.insert(id.to_string(), simps.len());
            simps.push(Simp { dim: k, faces, target: f.at(id).to_string(), stage: 0 });
        }
    }
    let mut stages: StageCounts = Vec::new();
    let top = b.max_dim();
    loop {
        let n = stages.len();
        let mut found: Vec<Simp> = Vec::new();
        let first = if n == 0 { 0 } else { 1 };
        let dims: Vec<usize> = if top < 0 { Vec::new() } else { (first..=top as usize).collect() };
        for k in dims {
            for t in b.simplices(k) {
                if k == 0 {
                    found.push(Simp { dim: 0, faces: vec![], target: t.to_string(), stage: n + 1 });
                    continue;
                }
                let want: Vec<&SimplexId> = b.faces(t).unwrap().iter().collect();
                let cands: Vec<Vec<usize>> = (0..=k)
                    .map(|i| (0..simps.len()).filter(|&s| simps[s].dim == k - 1 && simps[s].target == want[i].as_str()).collect())
                    .collect();
                let mut pick = vec![0usize; k + 1];
                product(&cands, 0, &mut pick, &mut |u| {
                    for j in 1..=k {
                        for i in 0..j {
                            if k >= 2 && simps[u[j]].faces[i] != simps[u[i]].faces[j - 1] {
                                return;
                            }
                        }
                    }
                    if n > 0 && !u.iter().any(|&s| simps[s].stage == n) {
                        return;
                    }
                    found.push(Simp { dim: k, faces: u.to_vec(), target: t.to_string(), stage: n + 1 });
                });
            }
        }
        if found.is_empty() {
            break;
        }
        if n >= cap {
            return None;
        }
        let mut counts = BTreeMap::new();
        for s in &found {
            *counts.entry(s.dim).or_insert(0) += 1;
        }
        stages.push(counts);
        simps.extend(found);
    }
    let max = simps.iter().map(|s| s.dim + 1).max().unwrap_or(0);
    let mut body = vec![0; max];
    for s in &simps {
        body[s.dim] += 1;
    }
    Some((stages, body))
}

fn product(cands: &[Vec<usize>], i: usize, pick: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if i == cands.len() {
        visit(pick);
        return;
    }
    for &c in &cands[i] {
        pick[i] = c;
        product(cands, i + 1, pick, visit);
    }
}

/// Per-stage dimension counts of a library complex.
pub fn stage_counts(c: &cellcx::CellComplex) -> StageCounts {
    c.strata()
        .iter()
        .map(|st| {
            let mut m = BTreeMap::new();
            for s in st.cells() {
                *m.entry(s.dim).or_insert(0) += 1;
            }
            m
        })
        .collect()
}

/// Small generator limits for exhaustive checks.
pub fn tiny(seed: u64) -> Generator {
    Generator::with_limits(seed, Limits { max_dim: 2, max_vertices: 3, max_per_dim: 2, max_cells: 3 })
}

/// Ids of a complex, for set comparisons.
pub fn ids(x: &DeltaComplex) -> BTreeSet<String> {
    x.iter().map(|(_, id, _)| id.to_string()).collect()
}
