use std::collections::BTreeSet;

use super::{Graph, Vertex};
use crate::error::Result;

/// Shape of a block. `K3` is tagged [`BlockKind::Clique`]: clique takes
/// precedence over odd cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Clique,
    OddCycle,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
    pub kind: BlockKind,
    /// The block contains exactly one cut-vertex (a leaf of the block-cut tree).
    pub terminal: bool,
}

impl Block {
    pub fn is_clique_or_odd_cycle(&self) -> bool {
        matches!(self.kind, BlockKind::Clique | BlockKind::OddCycle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    /// Sorted cut-vertices.
    pub cut_vertices: Vec<Vertex>,
    /// Tree edges `(block index, cut-vertex)`.
    pub links: Vec<(usize, Vertex)>,
}

impl BlockCutTree {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    pub fn terminal_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.terminal)
    }
}

/// Classifies the subgraph spanned by `vertices` and `edges`.
pub(crate) fn classify(vertices: usize, edges: usize, degrees: impl Iterator<Item = usize>) -> BlockKind {
    if edges == vertices * vertices.saturating_sub(1) / 2 {
        BlockKind::Clique
    } else if vertices >= 3 && vertices % 2 == 1 && edges == vertices && degrees.into_iter().all(|d| d == 2) {
        // a 2-connected graph with all degrees 2 is a cycle
        BlockKind::OddCycle
    } else {
        BlockKind::Other
    }
}

/// Blocks, cut-vertices and block-cut tree of a connected graph.
///
/// Iterative Hopcroft–Tarjan with an edge stack. A single vertex forms one
/// clique block with no edges.
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree> {
    g.ensure_connected()?;
    let n = g.n();
    if n == 0 {
        return Ok(BlockCutTree { blocks: Vec::new(), cut_vertices: Vec::new(), links: Vec::new() });
    }
    if n == 1 {
        let block = Block { vertices: vec![0], edges: Vec::new(), kind: BlockKind::Clique, terminal: false };
        return Ok(BlockCutTree { blocks: vec![block], cut_vertices: Vec::new(), links: Vec::new() });
    }

    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut raw_blocks: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    let mut is_cut = vec![false; n];

    // (vertex, parent, next neighbor index)
    let root = 0;
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
    disc[root] = time;
    low[root] = time;
    time += 1;
    let mut root_children = 0;

    while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
        if *idx < g.neighbors(u).len() {
            let v = g.neighbors(u)[*idx];
            *idx += 1;
            if disc[v] == usize::MAX {
                edge_stack.push((u, v));
                disc[v] = time;
                low[v] = time;
                time += 1;
                stack.push((v, u, 0));
            } else if v != parent && disc[v] < disc[u] {
                edge_stack.push((u, v));
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if low[u] >= disc[p] {
                    if p == root {
                        root_children += 1;
                    } else {
                        is_cut[p] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == (p, u) {
                            break;
                        }
                    }
                    raw_blocks.push(block);
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[root] = true;
    }

    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| is_cut[v]).collect();
    let mut blocks = Vec::with_capacity(raw_blocks.len());
    let mut links = Vec::new();
    for raw in raw_blocks {
        let mut edges: Vec<(Vertex, Vertex)> = raw.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let vertices: Vec<Vertex> =
            edges.iter().flat_map(|&(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
        let mut deg = std::collections::BTreeMap::new();
        for &(a, b) in &edges {
            *deg.entry(a).or_insert(0usize) += 1;
            *deg.entry(b).or_insert(0usize) += 1;
        }
        let kind = classify(vertices.len(), edges.len(), deg.values().copied());
        let cuts_here: Vec<Vertex> = vertices.iter().copied().filter(|&v| is_cut[v]).collect();
        let idx = blocks.len();
        links.extend(cuts_here.iter().map(|&c| (idx, c)));
        blocks.push(Block { vertices, edges, kind, terminal: cuts_here.len() == 1 });
    }
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    // re-derive links after sorting so indices match
    links.clear();
    for (i, b) in blocks.iter().enumerate() {
        links.extend(b.vertices.iter().copied().filter(|&v| is_cut[v]).map(|c| (i, c)));
    }
    Ok(BlockCutTree { blocks, cut_vertices, links })
}
