//! Annotated Stallings folding.
//!
//! Vertices live in a union-find whose links carry words in the original
//! generators. Every edge `u -x-> v` carries a witness `a` with
//! `eval(a) = T(u)·x·T(v)⁻¹`, where `T` is a fixed vertex potential and
//! `T(base) = 1`. The product of witnesses along a closed path at the base
//! therefore evaluates to the path label. Merging two vertices re-bases the
//! potential of the absorbed class through the link word, so the invariant
//! survives every fold.

use crate::words::{Letter, Word};

/// Chooses which pending vertex the folder processes next.
pub trait Schedule {
    fn pick(&mut self, pending: usize) -> usize;
}

/// Last-in first-out processing.
pub struct Lifo;

impl Schedule for Lifo {
    fn pick(&mut self, pending: usize) -> usize {
        pending - 1
    }
}

impl<F: FnMut(usize) -> usize> Schedule for F {
    fn pick(&mut self, pending: usize) -> usize {
        self(pending)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RawEdge {
    pub src: usize,
    pub label: usize,
    pub dst: usize,
    pub witness: Word,
}

struct FoldEdge {
    src: usize,
    label: usize,
    dst: usize,
    witness: Word,
    alive: bool,
}

pub(crate) struct Folder {
    slot_count: usize,
    parent: Vec<usize>,
    link: Vec<Word>,
    size: Vec<usize>,
    adj: Vec<Vec<Vec<usize>>>,
    edges: Vec<FoldEdge>,
}

impl Folder {
    /// A bouquet of one petal per non-trivial generator word, sharing vertex 0.
    pub fn bouquet(rank: usize, generators: &[Word]) -> Self {
        let mut f = Folder {
            slot_count: 2 * rank,
            parent: Vec::new(),
            link: Vec::new(),
            size: Vec::new(),
            adj: Vec::new(),
            edges: Vec::new(),
        };
        f.add_vertex();
        for (i, w) in generators.iter().enumerate() {
            if let Some(g) = w.max_generator() {
                assert!(g < rank, "generator word uses index {g} outside rank {rank}");
            }
            let n = w.len();
            let mut prev = 0;
            for (j, &l) in w.letters().iter().enumerate() {
                let next = if j + 1 == n { 0 } else { f.add_vertex() };
                let alpha = if j + 1 == n {
                    Word::generator(i)
                } else {
                    Word::identity()
                };
                if l.is_inverse() {
                    f.add_edge(next, l.gen(), prev, alpha.inverse());
                } else {
                    f.add_edge(prev, l.gen(), next, alpha);
                }
                prev = next;
            }
        }
        f
    }

    fn add_vertex(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.link.push(Word::identity());
        self.size.push(1);
        self.adj.push(vec![Vec::new(); self.slot_count]);
        v
    }

    fn add_edge(&mut self, src: usize, label: usize, dst: usize, witness: Word) {
        let id = self.edges.len();
        self.edges.push(FoldEdge {
            src,
            label,
            dst,
            witness,
            alive: true,
        });
        self.adj[src][Letter::pos(label).slot()].push(id);
        self.adj[dst][Letter::neg(label).slot()].push(id);
    }

    /// Root of `v` and the word `D(v)` with `eval(D(v)) = T(root)·T(v)⁻¹`.
    fn find(&mut self, v: usize) -> (usize, Word) {
        let mut path = vec![v];
        while self.parent[*path.last().unwrap()] != *path.last().unwrap() {
            let p = self.parent[*path.last().unwrap()];
            path.push(p);
        }
        let root = path.pop().unwrap();
        let mut acc = Word::identity();
        for &u in path.iter().rev() {
            acc = acc.concat(&self.link[u]);
            self.parent[u] = root;
            self.link[u] = acc.clone();
        }
        let d = if v == root {
            Word::identity()
        } else {
            self.link[v].clone()
        };
        (root, d)
    }

    /// Traverses edge `e` out of the class of its endpoint in direction
    /// `slot`; returns the far root and the effective witness.
    fn traverse(&mut self, e: usize, slot: usize) -> (usize, Word) {
        let (src, dst) = (self.edges[e].src, self.edges[e].dst);
        let (rs, ds) = self.find(src);
        let (rd, dd) = self.find(dst);
        let forward = ds.concat(&self.edges[e].witness).concat(&dd.inverse());
        if slot.is_multiple_of(2) {
            (rd, forward)
        } else {
            (rs, forward.inverse())
        }
    }

    pub fn fold(&mut self, schedule: &mut impl Schedule) {
        let mut pending: Vec<usize> = (0..self.parent.len()).collect();
        'outer: while !pending.is_empty() {
            let idx = schedule.pick(pending.len());
            let v = pending.swap_remove(idx);
            let (r, _) = self.find(v);
            for slot in 0..self.slot_count {
                loop {
                    let edges = &self.edges;
                    self.adj[r][slot].retain(|&e| edges[e].alive);
                    if self.adj[r][slot].len() < 2 {
                        break;
                    }
                    let e1 = self.adj[r][slot][0];
                    let e2 = self.adj[r][slot][1];
                    let (w1, a1) = self.traverse(e1, slot);
                    let (w2, a2) = self.traverse(e2, slot);
                    self.edges[e2].alive = false;
                    self.adj[r][slot].swap_remove(1);
                    if w1 != w2 {
                        let keep = self.union(w1, a1, w2, a2);
                        pending.push(keep);
                        if self.parent[r] != r {
                            continue 'outer;
                        }
                    }
                }
            }
        }
    }

    fn union(&mut self, r1: usize, a1: Word, r2: usize, a2: Word) -> usize {
        // The base class keeps its potential; otherwise absorb the smaller
        // class into the larger.
        let keep_first = r1 == 0 || (r2 != 0 && self.size[r1] >= self.size[r2]);
        let (keep, lose, link) = if keep_first {
            (r1, r2, a1.inverse().concat(&a2))
        } else {
            (r2, r1, a2.inverse().concat(&a1))
        };
        self.parent[lose] = keep;
        self.link[lose] = link;
        self.size[keep] += self.size[lose];
        let moved = std::mem::take(&mut self.adj[lose]);
        for (slot, list) in moved.into_iter().enumerate() {
            self.adj[keep][slot].extend(list);
        }
        keep
    }

    /// Surviving edges over dense vertex ids, with the base class at 0.
    pub fn into_edges(mut self) -> (usize, Vec<RawEdge>) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut count = 0;
        for (v, slot) in id.iter_mut().enumerate() {
            if self.find(v).0 == v {
                *slot = count;
                count += 1;
            }
        }
        debug_assert_eq!(id[0], 0);
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            if !self.edges[e].alive {
                continue;
            }
            let (src, dst) = (self.edges[e].src, self.edges[e].dst);
            let (rs, ds) = self.find(src);
            let (rd, dd) = self.find(dst);
            let witness = ds.concat(&self.edges[e].witness).concat(&dd.inverse());
            out.push(RawEdge {
                src: id[rs],
                label: self.edges[e].label,
                dst: id[rd],
                witness,
            });
        }
        (count, out)
    }
}
