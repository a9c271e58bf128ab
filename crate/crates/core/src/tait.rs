//! Tait colorings of simple bridgeless planar cubic graphs: direct edge
//! 3-coloring, the Heawood spin condition, and the character sum over
//! face matrices of spin vectors.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_rational::Ratio;

use crate::alphasum::{AlphaTerm, EnumOptions, TermTally};
use crate::error::{check_budget, Error, Result};
use crate::fqlin::{rank_sign_in_place, FqMatrix};
use crate::gf::{FieldCtx, FqElem};
use crate::shard;

/// A plane embedding of a simple, connected, bridgeless cubic graph.
/// Vertices are numbered `1..=n` in the public interface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicPlanarGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Face boundaries as 0-based vertex cycles.
    faces: Vec<Vec<usize>>,
}

fn inapplicable(msg: impl Into<String>) -> Error {
    Error::Inapplicable(msg.into())
}

impl CubicPlanarGraph {
    /// `rotation[v]` lists the (0-based) indices of the three edges at
    /// vertex `v + 1` in cyclic order. Faces are traced as orbits of darts:
    /// arriving at `v` along `e`, leave along the successor of `e` at `v`.
    pub fn from_rotation(n: usize, edges: &[(usize, usize)], rotation: &[Vec<usize>]) -> Result<Self> {
        let incident = check_graph(n, edges)?;
        if rotation.len() != n {
            return Err(Error::Contract(format!("rotation lists {} vertices, graph has {n}", rotation.len())));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut a = rot.clone();
            let mut b = incident[v].clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::Contract(format!(
                    "rotation at vertex {} is {rot:?}, incident edges are {:?}",
                    v + 1,
                    incident[v]
                )));
            }
        }
        let other = |e: usize, v: usize| {
            let (a, b) = (edges[e].0 - 1, edges[e].1 - 1);
            if a == v {
                b
            } else {
                a
            }
        };
        // dart (tail, edge)
        let mut seen = vec![[false; 2]; edges.len()];
        let side = |e: usize, tail: usize| usize::from(edges[e].0 - 1 != tail);
        let mut faces = Vec::new();
        for e0 in 0..edges.len() {
            for s0 in 0..2 {
                if seen[e0][s0] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut tail, mut e) = (if s0 == 0 { edges[e0].0 - 1 } else { edges[e0].1 - 1 }, e0);
                while !seen[e][side(e, tail)] {
                    seen[e][side(e, tail)] = true;
                    face.push(tail);
                    let head = other(e, tail);
                    let rot = &rotation[head];
                    let pos = rot.iter().position(|&x| x == e).expect("validated");
                    e = rot[(pos + 1) % 3];
                    tail = head;
                }
                faces.push(face);
            }
        }
        Self::finish(n, edges, faces)
    }

    /// Faces given directly as vertex cycles (1-based); checked for
    /// consistency with the edges and Euler's formula.
    pub fn from_faces(n: usize, edges: &[(usize, usize)], faces: &[Vec<usize>]) -> Result<Self> {
        check_graph(n, edges)?;
        let index: HashMap<(usize, usize), usize> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
            .collect();
        let mut zero_based = Vec::with_capacity(faces.len());
        for face in faces {
            if face.len() < 3 || face.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::Contract(format!("bad face {face:?}")));
            }
            for k in 0..face.len() {
                let (u, v) = (face[k], face[(k + 1) % face.len()]);
                if !index.contains_key(&(u.min(v), u.max(v))) {
                    return Err(Error::Contract(format!("face {face:?}: {u}-{v} is not an edge")));
                }
            }
            zero_based.push(face.iter().map(|v| v - 1).collect());
        }
        Self::finish(n, edges, zero_based)
    }

    fn finish(n: usize, edges: &[(usize, usize)], faces: Vec<Vec<usize>>) -> Result<Self> {
        let expected = edges.len() + 2 - n;
        if faces.len() != expected {
            return Err(inapplicable(format!(
                "{} faces, Euler's formula needs {expected}: not a plane embedding",
                faces.len()
            )));
        }
        let mut on_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, face) in faces.iter().enumerate() {
            let distinct: BTreeSet<_> = face.iter().collect();
            if distinct.len() != face.len() {
                return Err(inapplicable(format!("face {} repeats a vertex", i + 1)));
            }
            for k in 0..face.len() {
                let (u, v) = (face[k] + 1, face[(k + 1) % face.len()] + 1);
                on_faces.entry((u.min(v), u.max(v))).or_default().push(i);
            }
        }
        for &(u, v) in edges {
            let fs = on_faces.get(&(u.min(v), u.max(v))).map(Vec::as_slice).unwrap_or(&[]);
            if fs.len() != 2 || fs[0] == fs[1] {
                return Err(inapplicable(format!("edge {u}-{v} does not lie on two distinct faces")));
            }
        }
        Ok(CubicPlanarGraph { n, edges: edges.to_vec(), faces })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges as 1-based vertex pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Face boundaries as 1-based vertex cycles.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.faces.iter().map(|f| f.iter().map(|v| v + 1).collect()).collect()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    fn faces_at(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.n];
        for (i, f) in self.faces.iter().enumerate() {
            for &v in f {
                at[v].push(i);
            }
        }
        at
    }

    /// Face matrix over F_3: entry `(i, j)` is the sum of the spins of the
    /// vertices shared by faces `i` and `j` (the diagonal sums over face `i`).
    pub fn face_matrix(&self, spins: &[i8]) -> Result<FqMatrix> {
        if spins.len() != self.n {
            return Err(Error::Dimension(format!("{} spins for {} vertices", spins.len(), self.n)));
        }
        if spins.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Contract("spins must be +1 or -1".into()));
        }
        let f = f3();
        let k = self.faces.len();
        let mut m = FqMatrix::zeros(f.clone(), k, k);
        for (v, fs) in self.faces_at().iter().enumerate() {
            let s = f.from_int(spins[v] as i64);
            for &i in fs {
                for &j in fs {
                    m.set(i, j, f.add(m.get(i, j), s));
                }
            }
        }
        Ok(m)
    }

    /// Number of proper 3-edge-colorings, by backtracking.
    pub fn tait_count_direct(&self) -> u64 {
        let mut used = vec![0u8; self.n];
        self.color_from(0, &mut used)
    }

    fn color_from(&self, e: usize, used: &mut [u8]) -> u64 {
        if e == self.edges.len() {
            return 1;
        }
        let (u, v) = (self.edges[e].0 - 1, self.edges[e].1 - 1);
        let mut total = 0;
        for c in 0..3 {
            let bit = 1 << c;
            if used[u] & bit == 0 && used[v] & bit == 0 {
                used[u] |= bit;
                used[v] |= bit;
                total += self.color_from(e + 1, used);
                used[u] &= !bit;
                used[v] &= !bit;
            }
        }
        total
    }

    /// `3 * #{sigma in {+1,-1}^V : every face has spin sum 0 mod 3}`.
    pub fn heawood_count(&self, budget: u64) -> Result<u64> {
        check_budget(1u128 << self.n, budget)?;
        let solutions = (0u64..1 << self.n)
            .filter(|&bits| {
                self.faces.iter().all(|f| {
                    let s: i64 = f.iter().map(|&v| if bits >> v & 1 == 1 { -1 } else { 1 }).sum();
                    s.rem_euclid(3) == 0
                })
            })
            .count() as u64;
        Ok(3 * solutions)
    }

    /// Tallies `(rank, eta)` of the face matrix over every spin vector and
    /// returns `3 * sum (-1/3)^{r/2} * sign` over even ranks. Spin vectors
    /// are visited in Gray-code order so each step flips one vertex and
    /// touches only the entries of its three faces.
    pub fn eval_tait_alpha(&self, opts: &EnumOptions) -> Result<TaitSum> {
        check_budget(1u128 << self.n, opts.budget)?;
        let f = f3();
        let k = self.faces.len();
        let at = self.faces_at();
        let total = 1u64 << self.n;
        let parts = shard::run(total, opts.workers, |range| {
            let mut tally = TermTally::default();
            let start = range.start;
            let gray = start ^ (start >> 1);
            let spins: Vec<i8> = (0..self.n).map(|v| if gray >> v & 1 == 1 { -1 } else { 1 }).collect();
            let mut spins = spins;
            let mut cur = self.face_matrix(&spins)?.data().to_vec();
            let mut buf = vec![FqElem::ZERO; k * k];
            for i in range {
                if i != start {
                    let v = i.trailing_zeros() as usize;
                    // s -> -s adds -2s = s in F_3
                    let delta = f.from_int(spins[v] as i64);
                    spins[v] = -spins[v];
                    for &a in &at[v] {
                        for &b in &at[v] {
                            cur[a * k + b] = f.add(cur[a * k + b], delta);
                        }
                    }
                }
                buf.copy_from_slice(&cur);
                let rs = rank_sign_in_place(&f, &mut buf, k);
                tally.record(AlphaTerm { r_star: rs.rank, sign: rs.sign });
            }
            Ok(tally)
        })?;
        let mut tally = TermTally::default();
        for t in &parts {
            tally.merge(t);
        }
        Ok(TaitSum::new(tally))
    }
}

fn f3() -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(3, 1).expect("3 is prime"))
}

/// Checks simplicity and the cubic/connected/bridgeless conditions; returns
/// the incident edges of every vertex.
fn check_graph(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut incident = vec![Vec::new(); n];
    let mut seen = BTreeSet::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::Contract(format!("edge {u}-{v} uses a vertex outside 1..={n}")));
        }
        if u == v {
            return Err(inapplicable(format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(inapplicable(format!("parallel edges {u}-{v}")));
        }
        incident[u - 1].push(i);
        incident[v - 1].push(i);
    }
    if let Some(v) = incident.iter().position(|inc| inc.len() != 3) {
        return Err(inapplicable(format!("vertex {} has degree {}", v + 1, incident[v].len())));
    }
    if !connected(n, edges, None) {
        return Err(inapplicable("graph is not connected"));
    }
    if let Some(e) = (0..edges.len()).find(|&e| !connected(n, edges, Some(e))) {
        return Err(inapplicable(format!("edge {}-{} is a bridge", edges[e].0, edges[e].1)));
    }
    Ok(incident)
}

fn connected(n: usize, edges: &[(usize, usize)], skip: Option<usize>) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let (a, b) = (find(&mut parent, u - 1), find(&mut parent, v - 1));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitSum {
    pub tally: TermTally,
    /// `sum (-1/3)^{r/2} * sign` over even-rank spin vectors.
    pub sum: Ratio<i128>,
    /// `3 * sum`, the number of Tait colorings.
    pub chi: Ratio<i128>,
}

impl TaitSum {
    fn new(tally: TermTally) -> Self {
        let sum = tally.value(3);
        TaitSum { tally, sum, chi: sum * Ratio::from_integer(3) }
    }
}
