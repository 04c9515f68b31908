//! Exact branch-width by enumerating every unrooted cubic tree on the
//! ground set.
//!
//! Trees are grown by inserting leaf `i` into one edge of a tree on leaves
//! `0..i`, starting from the star on `{0, 1, 2}`. Every tree arises exactly
//! once, giving `(2n - 5)!!` trees for `n >= 3`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::ConnectivitySystem;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;

pub const BRANCH_WIDTH_LIMIT: usize = 8;

/// A tree rooted at leaf 0, children sorted by smallest leaf label.
/// Serialises as nested arrays of element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Nested {
    Leaf(usize),
    Node(Vec<Nested>),
}

impl Nested {
    fn min_leaf(&self) -> usize {
        match self {
            Nested::Leaf(e) => *e,
            Nested::Node(children) => children.iter().map(Nested::min_leaf).min().unwrap_or(usize::MAX),
        }
    }
}

impl fmt::Display for Nested {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nested::Leaf(e) => write!(f, "{}", e),
            Nested::Node(children) => {
                f.write_str("[")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", c)?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Unrooted tree whose leaves `0..n` are the elements of `X` and whose
/// remaining nodes have degree 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDecomposition {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl BranchDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn node_count(&self) -> usize {
        if self.n <= 2 {
            self.n
        } else {
            2 * self.n - 2
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Leaves `0..n` have degree 1, other nodes degree 3, and the graph is a tree.
    pub fn is_valid(&self) -> bool {
        let adj = self.adjacency();
        if self.n <= 1 {
            return self.edges.is_empty();
        }
        if self.edges.len() + 1 != adj.len() {
            return false;
        }
        let degrees_ok = adj
            .iter()
            .enumerate()
            .all(|(v, nb)| if v < self.n { nb.len() == 1 } else { nb.len() == 3 });
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        degrees_ok && seen.iter().all(|&s| s)
    }

    /// For every edge, the leaf set on the side away from leaf 0.
    pub fn displayed_sides(&self) -> Vec<SubsetMask> {
        if self.n <= 1 {
            return Vec::new();
        }
        let adj = self.adjacency();
        let mut below = vec![0u32; adj.len()];
        let mut sides = Vec::with_capacity(self.edges.len());
        subtree_masks(&adj, self.n, 0, usize::MAX, &mut below);
        for &(u, v) in &self.edges {
            // the endpoint farther from leaf 0 has the smaller leaf mask
            let child = if below[u] & 1 == 0 && (below[v] & 1 == 1 || below[u] < below[v]) {
                u
            } else {
                v
            };
            sides.push(SubsetMask(below[child]));
        }
        sides
    }

    /// Maximum order over displayed separations; `f(∅)` when there is no edge.
    pub fn width(&self, system: &ConnectivitySystem) -> u32 {
        self.displayed_sides()
            .into_iter()
            .map(|a| system.order(a))
            .max()
            .unwrap_or_else(|| system.order(SubsetMask::EMPTY))
    }

    /// Canonical nested form rooted at leaf 0.
    pub fn encoding(&self) -> Nested {
        match self.n {
            0 => Nested::Node(Vec::new()),
            1 => Nested::Node(vec![Nested::Leaf(0)]),
            _ => {
                let adj = self.adjacency();
                let next = adj[0][0];
                Nested::Node(vec![Nested::Leaf(0), encode(&adj, self.n, next, 0)])
            }
        }
    }
}

fn subtree_masks(adj: &[Vec<usize>], n: usize, v: usize, parent: usize, below: &mut [u32]) -> u32 {
    let mut mask = if v < n { 1u32 << v } else { 0 };
    for &w in &adj[v] {
        if w != parent {
            mask |= subtree_masks(adj, n, w, v, below);
        }
    }
    below[v] = mask;
    mask
}

fn encode(adj: &[Vec<usize>], n: usize, v: usize, parent: usize) -> Nested {
    if v < n {
        return Nested::Leaf(v);
    }
    let mut children: Vec<Nested> =
        adj[v].iter().filter(|&&w| w != parent).map(|&w| encode(adj, n, w, v)).collect();
    children.sort_by_key(Nested::min_leaf);
    Nested::Node(children)
}

#[derive(Clone, Debug)]
pub struct BranchWidth {
    pub width: u32,
    pub witness: BranchDecomposition,
    pub trees_examined: u64,
}

struct Enumerator<'a> {
    system: &'a ConnectivitySystem,
    n: usize,
    edges: Vec<(usize, usize)>,
    best: Option<(u32, Nested, BranchDecomposition)>,
    trees: u64,
}

impl Enumerator<'_> {
    fn grow(&mut self, leaf: usize) {
        if leaf == self.n {
            self.trees += 1;
            let tree = BranchDecomposition { n: self.n, edges: self.edges.clone() };
            let width = tree.width(self.system);
            let better = match &self.best {
                None => true,
                Some((w, _, _)) => width <= *w,
            };
            if better {
                let encoding = tree.encoding();
                let replace = match &self.best {
                    Some((w, enc, _)) => width < *w || encoding < *enc,
                    None => true,
                };
                if replace {
                    self.best = Some((width, encoding, tree));
                }
            }
            return;
        }
        // new internal node id: leaves occupy 0..n, internal nodes n..
        let internal = self.n + (leaf - 2);
        for i in 0..self.edges.len() {
            let (u, v) = self.edges[i];
            self.edges[i] = (u, internal);
            self.edges.push((internal, v));
            self.edges.push((internal, leaf));
            self.grow(leaf + 1);
            self.edges.pop();
            self.edges.pop();
            self.edges[i] = (u, v);
        }
    }
}

/// Minimum width over all branch decompositions, with the optimal tree of
/// smallest canonical encoding.
pub fn branch_width(system: &ConnectivitySystem) -> Result<BranchWidth> {
    let n = system.n();
    if n > BRANCH_WIDTH_LIMIT {
        return Err(Error::LimitExceeded { n, limit: BRANCH_WIDTH_LIMIT, what: "branch-width" });
    }
    if n <= 2 {
        let edges = if n == 2 { vec![(0, 1)] } else { Vec::new() };
        let witness = BranchDecomposition { n, edges };
        return Ok(BranchWidth { width: witness.width(system), witness, trees_examined: 1 });
    }
    let center = n;
    let mut e = Enumerator {
        system,
        n,
        edges: vec![(0, center), (1, center), (2, center)],
        best: None,
        trees: 0,
    };
    e.grow(3);
    let (width, _, witness) = e.best.expect("at least one tree");
    Ok(BranchWidth { width, witness, trees_examined: e.trees })
}
