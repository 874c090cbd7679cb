//! Folded pointed core graphs of finitely generated subgroups.
//!
//! A [`SubgroupGraph`] is always folded, cored and canonically numbered:
//! vertices are numbered in breadth-first order from the basepoint (vertex
//! 0), following outgoing slots in letter order `a, a⁻¹, b, b⁻¹, …`. Two
//! graphs are therefore equal as subgroups exactly when their edge lists
//! coincide.

mod fold;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::morphisms::Homomorphism;
use crate::words::{Alphabet, Letter, Word};

pub use fold::{Lifo, Schedule};
use fold::{Folder, RawEdge};

/// A labelled edge `source --label--> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

/// A free basis read off a spanning tree: one word per non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub words: Vec<Word>,
    /// Index (into [`SubgroupGraph::edges`]) of the non-tree edge behind each word.
    pub via: Vec<usize>,
}

#[derive(Clone)]
pub struct SubgroupGraph {
    alphabet: Alphabet,
    generators: Vec<Word>,
    vertex_count: usize,
    edges: Vec<Edge>,
    /// Per edge, a word in the generator symbols `g1 … gk` (indices into
    /// `generators`) evaluating to `T(source)·label·T(target)⁻¹`.
    witnesses: Vec<Word>,
    /// `slots[v * 2m + letter.slot()]` is the edge read by `letter` from `v`.
    slots: Vec<Option<usize>>,
    basis: Basis,
}

impl SubgroupGraph {
    /// Folds the bouquet of `generators` into the graph of the subgroup they
    /// generate. Panics if a word uses a generator outside `alphabet`.
    pub fn fold(alphabet: &Alphabet, generators: &[Word]) -> Self {
        Self::fold_with(alphabet, generators, &mut Lifo)
    }

    /// As [`SubgroupGraph::fold`], processing fold events in the order chosen
    /// by `schedule`. The result does not depend on the schedule.
    pub fn fold_with(alphabet: &Alphabet, generators: &[Word], schedule: &mut impl Schedule) -> Self {
        let mut folder = Folder::bouquet(alphabet.len(), generators);
        folder.fold(schedule);
        let (n, edges) = folder.into_edges();
        Self::assemble(alphabet.clone(), generators.to_vec(), n, edges)
    }

    /// The trivial subgroup: one vertex, no edges.
    pub fn trivial(alphabet: &Alphabet) -> Self {
        Self::fold(alphabet, &[])
    }

    /// The whole free group on `alphabet`.
    pub fn whole(alphabet: &Alphabet) -> Self {
        Self::fold(alphabet, &alphabet.generators())
    }

    /// Builds a graph from an already folded edge list whose vertices are all
    /// connected to vertex 0. The generators become the spanning-tree basis.
    fn from_folded_edges(alphabet: Alphabet, n: usize, edges: Vec<Edge>) -> Self {
        let raw = edges
            .into_iter()
            .map(|e| RawEdge {
                src: e.source,
                label: e.label,
                dst: e.target,
                witness: Word::identity(),
            })
            .collect();
        let mut g = Self::assemble(alphabet, Vec::new(), n, raw);
        g.generators = g.basis.words.clone();
        for w in g.witnesses.iter_mut() {
            *w = Word::identity();
        }
        for (j, &e) in g.basis.via.iter().enumerate() {
            g.witnesses[e] = Word::generator(j);
        }
        g
    }

    fn assemble(alphabet: Alphabet, generators: Vec<Word>, n: usize, edges: Vec<RawEdge>) -> Self {
        let m2 = 2 * alphabet.len();
        let (n, edges) = core(n, edges);

        // Canonical breadth-first numbering from the basepoint.
        let mut adj: Vec<Option<usize>> = vec![None; n * m2];
        for (i, e) in edges.iter().enumerate() {
            let out = e.src * m2 + Letter::pos(e.label).slot();
            let inc = e.dst * m2 + Letter::neg(e.label).slot();
            debug_assert!(adj[out].is_none() && adj[inc].is_none(), "graph is not folded");
            adj[out] = Some(i);
            adj[inc] = Some(i);
        }
        let mut id = vec![usize::MAX; n];
        id[0] = 0;
        let mut order = vec![0];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for slot in 0..m2 {
                if let Some(e) = adj[v * m2 + slot] {
                    let w = if slot % 2 == 0 { edges[e].dst } else { edges[e].src };
                    if id[w] == usize::MAX {
                        id[w] = order.len();
                        order.push(w);
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), n, "graph is not connected");

        let mut canon: Vec<(Edge, Word)> = edges
            .into_iter()
            .map(|e| {
                (
                    Edge {
                        source: id[e.src],
                        label: e.label,
                        target: id[e.dst],
                    },
                    e.witness,
                )
            })
            .collect();
        canon.sort_by_key(|(e, _)| (e.source, e.label));
        let (edges, witnesses): (Vec<Edge>, Vec<Word>) = canon.into_iter().unzip();
        let mut slots = vec![None; n * m2];
        for (i, e) in edges.iter().enumerate() {
            slots[e.source * m2 + Letter::pos(e.label).slot()] = Some(i);
            slots[e.target * m2 + Letter::neg(e.label).slot()] = Some(i);
        }
        let mut g = SubgroupGraph {
            alphabet,
            generators,
            vertex_count: n,
            edges,
            witnesses,
            slots,
            basis: Basis {
                words: Vec::new(),
                via: Vec::new(),
            },
        };
        g.basis = g.spanning_tree_basis();
        g
    }

    fn spanning_tree_basis(&self) -> Basis {
        let m2 = 2 * self.alphabet.len();
        let mut label: Vec<Option<Word>> = vec![None; self.vertex_count];
        let mut tree = vec![false; self.edges.len()];
        label[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for slot in 0..m2 {
                if let Some(e) = self.slots[v * m2 + slot] {
                    let (w, l) = self.step(e, slot);
                    if label[w].is_none() {
                        let mut path = label[v].clone().unwrap();
                        path.push(l);
                        label[w] = Some(path);
                        tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut words = Vec::new();
        let mut via = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if tree[i] {
                continue;
            }
            let mut w = label[e.source].clone().unwrap();
            w.push(Letter::pos(e.label));
            w.append(&label[e.target].as_ref().unwrap().inverse());
            words.push(w);
            via.push(i);
        }
        Basis { words, via }
    }

    /// Far endpoint and letter read when traversing edge `e` via `slot`.
    fn step(&self, e: usize, slot: usize) -> (usize, Letter) {
        let edge = self.edges[e];
        if slot.is_multiple_of(2) {
            (edge.target, Letter::pos(edge.label))
        } else {
            (edge.source, Letter::neg(edge.label))
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The words this graph was folded from (for computed graphs, its basis).
    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    /// Follows `w` from the basepoint; the end vertex if the path exists.
    fn walk(&self, w: &Word) -> Option<(usize, Vec<(usize, usize)>)> {
        let m2 = 2 * self.alphabet.len();
        let mut v = 0;
        let mut path = Vec::with_capacity(w.len());
        for &l in w.letters() {
            if l.gen() >= self.alphabet.len() {
                return None;
            }
            let e = self.slots[v * m2 + l.slot()]?;
            path.push((e, l.slot()));
            v = self.step(e, l.slot()).0;
        }
        Some((v, path))
    }

    pub fn member(&self, w: &Word) -> bool {
        matches!(self.walk(w), Some((0, _)))
    }

    /// Writes a member `w` as a word in the generator symbols `g1 … gk` of
    /// [`SubgroupGraph::generators`] whose substitution reduces to `w`.
    pub fn express(&self, w: &Word) -> Result<Word> {
        match self.walk(w) {
            Some((0, path)) => {
                let mut out = Word::identity();
                for (e, slot) in path {
                    if slot.is_multiple_of(2) {
                        out.append(&self.witnesses[e]);
                    } else {
                        out.append(&self.witnesses[e].inverse());
                    }
                }
                Ok(out)
            }
            _ => Err(Error::NotAMember),
        }
    }

    fn check_alphabet(&self, other: &SubgroupGraph) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    /// The pullback of `self` and `other` at the pair of basepoints, cored.
    pub fn intersect(&self, other: &SubgroupGraph) -> Result<SubgroupGraph> {
        self.check_alphabet(other)?;
        let m2 = 2 * self.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(0, 0)];
        index.insert((0, 0), 0);
        let mut edges = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (u, v) = pairs[head];
            let here = head;
            head += 1;
            for slot in 0..m2 {
                let (Some(e1), Some(e2)) = (self.slots[u * m2 + slot], other.slots[v * m2 + slot]) else {
                    continue;
                };
                let next = (self.step(e1, slot).0, other.step(e2, slot).0);
                let there = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                if slot.is_multiple_of(2) {
                    edges.push(Edge {
                        source: here,
                        label: slot / 2,
                        target: there,
                    });
                }
            }
        }
        Ok(Self::from_folded_edges(self.alphabet.clone(), pairs.len(), edges))
    }

    /// Whether `other` is a subgroup of `self`.
    pub fn includes(&self, other: &SubgroupGraph) -> Result<bool> {
        self.check_alphabet(other)?;
        Ok(other.basis.words.iter().all(|w| self.member(w)))
    }

    /// Whether both graphs describe the same subgroup.
    pub fn same_subgroup(&self, other: &SubgroupGraph) -> Result<bool> {
        self.check_alphabet(other)?;
        Ok(self == other)
    }

    /// The subgroup `g⁻¹(self)`, computed as `g⁻¹(self ∩ im g)` for an
    /// injective `g` whose codomain is this graph's alphabet.
    pub fn preimage(&self, g: &Homomorphism) -> Result<SubgroupGraph> {
        if g.codomain() != &self.alphabet {
            return Err(Error::AlphabetMismatch(
                "preimage: graph is not over the codomain".into(),
            ));
        }
        if !g.is_injective() {
            return Err(Error::Unsupported(
                "preimage under a non-injective map contains its kernel, which is not finitely generated"
                    .into(),
            ));
        }
        let image = g.image();
        let meet = self.intersect(&image)?;
        let words = meet
            .basis
            .words
            .iter()
            .map(|b| image.express(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubgroupGraph::fold(g.domain(), &words))
    }

    /// Graphviz rendering; deterministic, basepoint drawn as a double circle.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph subgroup {\n  rankdir=LR;\n  node [shape=circle];\n");
        for v in 0..self.vertex_count {
            if v == 0 {
                let _ = writeln!(out, "  0 [shape=doublecircle];");
            } else {
                let _ = writeln!(out, "  {v};");
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                e.source,
                e.target,
                self.alphabet.symbol(e.label)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Equality of subgroups: same alphabet and same canonical graph.
impl PartialEq for SubgroupGraph {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.vertex_count == other.vertex_count
            && self.edges == other.edges
    }
}

impl Eq for SubgroupGraph {}

impl std::fmt::Debug for SubgroupGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupGraph")
            .field("vertices", &self.vertex_count)
            .field("edges", &self.edges)
            .field("basis", &self.basis.words)
            .finish()
    }
}

/// Repeatedly deletes non-base vertices of degree at most one, then
/// renumbers the survivors densely (keeping the base at 0).
fn core(n: usize, edges: Vec<RawEdge>) -> (usize, Vec<RawEdge>) {
    let mut degree = vec![0usize; n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        degree[e.src] += 1;
        degree[e.dst] += 1;
        incident[e.src].push(i);
        incident[e.dst].push(i);
    }
    let mut alive_edge = vec![true; edges.len()];
    let mut alive_vertex = vec![true; n];
    let mut queue: Vec<usize> = (1..n).filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = queue.pop() {
        if !alive_vertex[v] {
            continue;
        }
        alive_vertex[v] = false;
        for &i in &incident[v] {
            if !alive_edge[i] {
                continue;
            }
            alive_edge[i] = false;
            let e = &edges[i];
            for w in [e.src, e.dst] {
                degree[w] -= 1;
                if w != 0 && alive_vertex[w] && degree[w] <= 1 {
                    queue.push(w);
                }
            }
        }
    }
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if alive_vertex[v] {
            id[v] = count;
            count += 1;
        }
    }
    let kept = edges
        .into_iter()
        .zip(alive_edge)
        .filter(|(_, a)| *a)
        .map(|(mut e, _)| {
            e.src = id[e.src];
            e.dst = id[e.dst];
            e
        })
        .collect();
    (count, kept)
}

#[cfg(test)]
mod tests;
