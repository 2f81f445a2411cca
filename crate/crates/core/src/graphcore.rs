//! Construction of the carry graph H(g,k) from the paired digit/carry
//! equations, pivot identification, the existence test, pruning of dead
//! ends into the Young graph, and structural validation.
//!
//! Nodes are ordered carry pairs [r', r]. A distinguished starting node
//! \[\[0,0]] seeds the recursion; it has no incoming edges and no edge
//! leaving it may carry a zero digit on either side, since a number may
//! neither begin nor end with 0. (A weaker phrasing forbids only the
//! label "(0,0)"; the stricter per-digit rule is what makes a_0 != 0 and
//! a_{n-1} != 0 hold, and is what this module implements.)

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A node of the carry graph: an ordered pair of carries, plus the flag
/// distinguishing the starting node \[\[0,0]] from the internal node \[0,0].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeId {
    pub left: u32,
    pub right: u32,
    pub is_start: bool,
}

impl NodeId {
    pub fn start() -> Self {
        NodeId {
            left: 0,
            right: 0,
            is_start: true,
        }
    }

    pub fn internal(left: u32, right: u32) -> Self {
        NodeId {
            left,
            right,
            is_start: false,
        }
    }

    /// The mirror image \[r,s] -> \[s,r] of the involution Phi.
    pub fn swapped(&self) -> Self {
        NodeId {
            left: self.right,
            right: self.left,
            is_start: self.is_start,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.left == self.right
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_start {
            write!(f, "[[{},{}]]", self.left, self.right)
        } else {
            write!(f, "[{},{}]", self.left, self.right)
        }
    }
}

/// A directed edge with its digit-pair label (a_{n-1-i}, a_i). Endpoints
/// are indices into the owning graph's node list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label_left: u32,
    pub label_right: u32,
}

impl Edge {
    pub fn label(&self) -> (u32, u32) {
        (self.label_left, self.label_right)
    }
}

/// A single solution of the paired equations at one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSolution {
    pub label_left: u32,
    pub label_right: u32,
    pub successor: NodeId,
}

/// Solves the i-th equation pair at `node` = [r_{n-1-i}, r_{i-1}] by direct
/// search over all digit pairs, returning solutions ordered by label.
///
/// A pair (a_{n-1-i}, a_i) qualifies when
///
/// ```text
/// k a_i + r_{i-1}  ==  a_{n-1-i}   (mod g)
/// 0 <= a_i + r_{n-1-i} g - k a_{n-1-i} < k
/// ```
///
/// and the new carries are then
///
/// ```text
/// r_i       = (k a_i + r_{i-1} - a_{n-1-i}) / g
/// r_{n-2-i} = a_i + r_{n-1-i} g - k a_{n-1-i}
/// ```
///
/// giving the successor node [r_{n-2-i}, r_i]. At the starting node any
/// solution with a zero digit on either side is excluded.
pub fn solve_pair(g: u32, k: u32, node: NodeId) -> Vec<PairSolution> {
    let g64 = g as i64;
    let k64 = k as i64;
    let r_right = node.right as i64; // r_{i-1}
    let r_left = node.left as i64; // r_{n-1-i}
    let mut out = Vec::new();
    for a_left in 0..g as i64 {
        for a_right in 0..g as i64 {
            if node.is_start && (a_left == 0 || a_right == 0) {
                continue;
            }
            if (k64 * a_right + r_right - a_left) % g64 != 0 {
                continue;
            }
            let new_left = a_right + r_left * g64 - k64 * a_left;
            if new_left < 0 || new_left >= k64 {
                continue;
            }
            let new_right = (k64 * a_right + r_right - a_left) / g64;
            if new_right < 0 || new_right >= k64 {
                continue;
            }
            out.push(PairSolution {
                label_left: a_left as u32,
                label_right: a_right as u32,
                successor: NodeId::internal(new_left as u32, new_right as u32),
            });
        }
    }
    out
}

/// Node and edge counts removed by pruning. Edge removals include any
/// starting-node edges that led into dead ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PruneStats {
    pub removed_nodes: usize,
    pub removed_edges: usize,
}

/// The carry graph for one (g,k): H(g,k) as built, or the Young graph
/// after pruning. Node 0 is always the starting node; the rest follow in
/// breadth-first discovery order, and edges are ordered by (from, label).
#[derive(Debug, Clone, Serialize)]
pub struct YoungGraph {
    g: u32,
    k: u32,
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
    #[serde(skip)]
    index: HashMap<NodeId, usize>,
    #[serde(skip)]
    out: Vec<Vec<usize>>,
    even_pivots: Vec<usize>,
    odd_pivots: Vec<usize>,
    pruned: bool,
}

fn check_params(g: u32, k: u32) -> Result<()> {
    if g < 3 {
        return Err(Error::InvalidBase(g));
    }
    if k < 2 || k >= g {
        return Err(Error::InvalidMultiplier { g, k });
    }
    Ok(())
}

/// Builds H(g,k): breadth-first closure from the starting node under
/// `solve_pair`, fully expanding every discovered node.
pub fn build_h_graph(g: u32, k: u32) -> Result<YoungGraph> {
    check_params(g, k)?;
    let mut nodes = vec![NodeId::start()];
    let mut index = HashMap::new();
    index.insert(NodeId::start(), 0usize);
    let mut edges: Vec<Edge> = Vec::new();
    let mut cursor = 0;
    while cursor < nodes.len() {
        let node = nodes[cursor];
        for sol in solve_pair(g, k, node) {
            let to = *index.entry(sol.successor).or_insert_with(|| {
                nodes.push(sol.successor);
                nodes.len() - 1
            });
            edges.push(Edge {
                from: cursor,
                to,
                label_left: sol.label_left,
                label_right: sol.label_right,
            });
        }
        cursor += 1;
    }
    Ok(YoungGraph::assemble(g, k, nodes, edges, false))
}

/// Builds H(g,k) and prunes it. `None` when no Young graph exists.
pub fn build_young_graph(g: u32, k: u32) -> Result<Option<(YoungGraph, PruneStats)>> {
    Ok(build_h_graph(g, k)?.prune())
}

impl YoungGraph {
    fn assemble(g: u32, k: u32, nodes: Vec<NodeId>, edges: Vec<Edge>, pruned: bool) -> Self {
        let index: HashMap<NodeId, usize> =
            nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut out = vec![Vec::new(); nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        let mut graph = YoungGraph {
            g,
            k,
            nodes,
            edges,
            index,
            out,
            even_pivots: Vec::new(),
            odd_pivots: Vec::new(),
            pruned,
        };
        let (even, odd) = graph.find_pivots();
        graph.even_pivots = even;
        graph.odd_pivots = odd;
        graph
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_index(&self, node: NodeId) -> Option<usize> {
        self.index.get(&node).copied()
    }

    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = &Edge> {
        self.out[node].iter().map(move |&i| &self.edges[i])
    }

    /// Indices into [`Self::edges`] of the edges leaving `node`.
    pub fn out_edge_indices(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    /// Internal (non-starting) node count, the canonical graph size.
    pub fn internal_node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Edges between internal nodes; the starting node's out-edges are not
    /// counted.
    pub fn internal_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.from != 0).count()
    }

    pub fn total_node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn total_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn start_out_degree(&self) -> usize {
        self.out[0].len()
    }

    /// Indices of even pivots: every internal node \[r,r].
    pub fn even_pivots(&self) -> &[usize] {
        &self.even_pivots
    }

    /// Indices of odd pivots: internal \[r,r] with a loop, and internal
    /// [r',r] (r' != r) with an edge to [r,r'].
    pub fn odd_pivots(&self) -> &[usize] {
        &self.odd_pivots
    }

    pub fn is_even_pivot(&self, node: usize) -> bool {
        self.even_pivots.binary_search(&node).is_ok()
    }

    pub fn is_odd_pivot(&self, node: usize) -> bool {
        self.odd_pivots.binary_search(&node).is_ok()
    }

    /// The loop edge at `node`, if one exists.
    pub fn loop_edge(&self, node: usize) -> Option<usize> {
        self.out[node]
            .iter()
            .copied()
            .find(|&e| self.edges[e].to == node)
    }

    /// For a pair-form odd pivot [r',r], the closing edge to [r,r'].
    pub fn pair_edge(&self, node: usize) -> Option<usize> {
        let id = self.nodes[node];
        if id.is_start || id.is_diagonal() {
            return None;
        }
        let partner = self.node_index(id.swapped())?;
        self.out[node]
            .iter()
            .copied()
            .find(|&e| self.edges[e].to == partner)
    }

    /// Recomputes the pivot sets from the current nodes and edges.
    pub fn find_pivots(&self) -> (Vec<usize>, Vec<usize>) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.is_start {
                continue;
            }
            if node.is_diagonal() {
                even.push(i);
                if self.loop_edge(i).is_some() {
                    odd.push(i);
                }
            } else if self.pair_edge(i).is_some() {
                odd.push(i);
            }
        }
        (even, odd)
    }

    /// Young's existence test: a (g,k)-reverse multiple exists iff the
    /// graph has an internal node \[r,r] with r != 0, or an edge
    /// [r',r] -> [r,r'] with r' != r.
    pub fn exists(&self) -> bool {
        if self
            .nodes
            .iter()
            .any(|n| !n.is_start && n.is_diagonal() && n.left != 0)
        {
            return true;
        }
        self.edges.iter().any(|e| {
            let from = self.nodes[e.from];
            let to = self.nodes[e.to];
            !from.is_start && !from.is_diagonal() && to == from.swapped()
        })
    }

    /// Removes dead ends: internal nodes from which no pivot is reachable,
    /// together with all incident edges, iterating because an edge removal
    /// can demote a pair-form odd pivot. `None` iff `exists()` is false.
    pub fn prune(&self) -> Option<(YoungGraph, PruneStats)> {
        if !self.exists() {
            return None;
        }
        let n = self.nodes.len();
        let mut node_alive = vec![true; n];
        let mut edge_alive = vec![true; self.edges.len()];
        for _round in 0..=n {
            // Pivot set under the current (possibly reduced) edge set.
            let mut is_pivot = vec![false; n];
            for (i, node) in self.nodes.iter().enumerate() {
                if node.is_start || !node_alive[i] {
                    continue;
                }
                if node.is_diagonal() {
                    is_pivot[i] = true;
                } else if let Some(p) = self.node_index(node.swapped()) {
                    let has_pair = self.out[i]
                        .iter()
                        .any(|&e| edge_alive[e] && self.edges[e].to == p);
                    if has_pair {
                        is_pivot[i] = true;
                    }
                }
            }
            // Reverse reachability from the pivots over live edges.
            let mut reaches = is_pivot.clone();
            let mut changed = true;
            while changed {
                changed = false;
                for (e, edge) in self.edges.iter().enumerate() {
                    if edge_alive[e] && reaches[edge.to] && !reaches[edge.from] {
                        reaches[edge.from] = true;
                        changed = true;
                    }
                }
            }
            let mut removed_any = false;
            for i in 0..n {
                if node_alive[i] && !self.nodes[i].is_start && !reaches[i] {
                    node_alive[i] = false;
                    removed_any = true;
                }
            }
            if !removed_any {
                break;
            }
            for (e, edge) in self.edges.iter().enumerate() {
                if edge_alive[e] && (!node_alive[edge.from] || !node_alive[edge.to]) {
                    edge_alive[e] = false;
                }
            }
        }
        let removed_nodes = node_alive.iter().filter(|a| !**a).count();
        let removed_edges = edge_alive.iter().filter(|a| !**a).count();
        // Rebuild compactly, preserving discovery order.
        let mut remap = vec![usize::MAX; n];
        let mut nodes = Vec::with_capacity(n - removed_nodes);
        for (i, &alive) in node_alive.iter().enumerate() {
            if alive {
                remap[i] = nodes.len();
                nodes.push(self.nodes[i]);
            }
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| edge_alive[*e])
            .map(|(_, edge)| Edge {
                from: remap[edge.from],
                to: remap[edge.to],
                label_left: edge.label_left,
                label_right: edge.label_right,
            })
            .collect();
        let young = YoungGraph::assemble(self.g, self.k, nodes, edges, true);
        Some((
            young,
            PruneStats {
                removed_nodes,
                removed_edges,
            },
        ))
    }

    /// Recomputes an edge's labels from its endpoint carries alone (P1):
    ///
    /// ```text
    /// a_i       = (k r_i g - k r_{i-1} + r_{n-1-i} g - r_{n-2-i}) / (k^2 - 1)
    /// a_{n-1-i} = (k r_{n-1-i} g - k r_{n-2-i} + r_i g - r_{i-1}) / (k^2 - 1)
    /// ```
    ///
    /// `None` when the divisions are not exact or land outside [0, g).
    pub fn labels_from_carries(&self, from: NodeId, to: NodeId) -> Option<(u32, u32)> {
        let g = self.g as i64;
        let k = self.k as i64;
        let d = k * k - 1;
        let (fl, fr) = (from.left as i64, from.right as i64);
        let (tl, tr) = (to.left as i64, to.right as i64);
        let right_num = k * tr * g - k * fr + fl * g - tl;
        let left_num = k * fl * g - k * tl + tr * g - fr;
        if right_num % d != 0 || left_num % d != 0 {
            return None;
        }
        let a_right = right_num / d;
        let a_left = left_num / d;
        if a_right < 0 || a_right >= g || a_left < 0 || a_left >= g {
            return None;
        }
        Some((a_left as u32, a_right as u32))
    }

    /// Checks every structural invariant, recomputing edge labels from the
    /// carry closed form and testing the mirror closure. Intended for
    /// pruned graphs; a violation in a built graph is a library bug by
    /// definition.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        // Labels are determined by the end nodes.
        for e in &self.edges {
            let from = self.nodes[e.from];
            let to = self.nodes[e.to];
            match self.labels_from_carries(from, to) {
                Some((l, r)) if l == e.label_left && r == e.label_right => {}
                got => violations.push(Violation {
                    property: Property::LabelFormula,
                    message: format!(
                        "edge {} -> {} labeled ({},{}) but carries give {:?}",
                        from, to, e.label_left, e.label_right, got
                    ),
                }),
            }
        }

        // At most one edge between any ordered pair of nodes.
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            if !seen.insert((e.from, e.to)) {
                violations.push(Violation {
                    property: Property::EdgeUniqueness,
                    message: format!(
                        "duplicate edge {} -> {}",
                        self.nodes[e.from], self.nodes[e.to]
                    ),
                });
            }
        }

        // Mirror closure. The image of an edge from the starting node
        // lands on the internal node [0,0].
        for e in &self.edges {
            let from = self.nodes[e.from];
            let to = self.nodes[e.to];
            let m_from = to.swapped();
            let m_to = if from.is_start {
                NodeId::internal(0, 0)
            } else {
                from.swapped()
            };
            let found = match (self.node_index(m_from), self.node_index(m_to)) {
                (Some(f), Some(t)) => self.out[f].iter().any(|&i| {
                    let m = &self.edges[i];
                    m.to == t && m.label_left == e.label_right && m.label_right == e.label_left
                }),
                _ => false,
            };
            if !found {
                violations.push(Violation {
                    property: Property::MirrorClosure,
                    message: format!(
                        "edge {} ({},{}) {} has no mirror {} ({},{}) {}",
                        from,
                        e.label_left,
                        e.label_right,
                        to,
                        m_from,
                        e.label_right,
                        e.label_left,
                        m_to
                    ),
                });
            }
        }

        // The internal node [0,0] is present.
        if self.node_index(NodeId::internal(0, 0)).is_none() {
            violations.push(Violation {
                property: Property::ZeroNode,
                message: "internal node [0,0] missing".to_string(),
            });
        }

        // Loops and swap-pair edges carry equal label components.
        for e in &self.edges {
            let from = self.nodes[e.from];
            let to = self.nodes[e.to];
            let is_loop = e.from == e.to;
            let is_pair = !from.is_start && !from.is_diagonal() && to == from.swapped();
            if (is_loop || is_pair) && e.label_left != e.label_right {
                violations.push(Violation {
                    property: Property::SymmetricLabels,
                    message: format!(
                        "{} edge {} -> {} has unequal labels ({},{})",
                        if is_loop { "loop" } else { "pair" },
                        from,
                        to,
                        e.label_left,
                        e.label_right
                    ),
                });
            }
        }

        // Node labels all distinct; internal edge labels all distinct.
        let mut node_labels = std::collections::HashSet::new();
        for n in &self.nodes {
            if !node_labels.insert(*n) {
                violations.push(Violation {
                    property: Property::DistinctLabels,
                    message: format!("duplicate node label {}", n),
                });
            }
        }
        let mut edge_labels = std::collections::HashSet::new();
        for e in self.edges.iter().filter(|e| e.from != 0) {
            if !edge_labels.insert((e.label_left, e.label_right)) {
                violations.push(Violation {
                    property: Property::DistinctLabels,
                    message: format!("duplicate edge label ({},{})", e.label_left, e.label_right),
                });
            }
        }

        // Starting-node rules: no incoming edges, no zero digit on its
        // out-edges.
        for e in &self.edges {
            if self.nodes[e.to].is_start {
                violations.push(Violation {
                    property: Property::StartNode,
                    message: format!("edge into the starting node from {}", self.nodes[e.from]),
                });
            }
            if self.nodes[e.from].is_start && (e.label_left == 0 || e.label_right == 0) {
                violations.push(Violation {
                    property: Property::StartNode,
                    message: format!(
                        "starting-node edge with zero digit ({},{})",
                        e.label_left, e.label_right
                    ),
                });
            }
        }

        // Reachability: every node reachable from the start, every internal
        // node reaches a pivot.
        let mut fwd = vec![false; self.nodes.len()];
        fwd[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for &ei in &self.out[v] {
                let t = self.edges[ei].to;
                if !fwd[t] {
                    fwd[t] = true;
                    stack.push(t);
                }
            }
        }
        for (i, r) in fwd.iter().enumerate() {
            if !r {
                violations.push(Violation {
                    property: Property::Reachability,
                    message: format!("{} unreachable from the starting node", self.nodes[i]),
                });
            }
        }
        let mut back = vec![false; self.nodes.len()];
        for &p in self.even_pivots.iter().chain(&self.odd_pivots) {
            back[p] = true;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for e in &self.edges {
                if back[e.to] && !back[e.from] {
                    back[e.from] = true;
                    changed = true;
                }
            }
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if !node.is_start && !back[i] {
                violations.push(Violation {
                    property: Property::PivotReachability,
                    message: format!("{} does not reach any pivot", node),
                });
            }
        }

        // Stored pivot sets agree with a recomputation.
        let (even, odd) = self.find_pivots();
        if even != self.even_pivots || odd != self.odd_pivots {
            violations.push(Violation {
                property: Property::PivotSets,
                message: "stored pivot sets are stale".to_string(),
            });
        }

        ValidationReport { violations }
    }

    /// Test-only constructor for hand-built graphs.
    #[doc(hidden)]
    pub fn from_parts(g: u32, k: u32, nodes: Vec<NodeId>, edges: Vec<Edge>) -> Self {
        YoungGraph::assemble(g, k, nodes, edges, true)
    }

    #[cfg(test)]
    pub(crate) fn corrupt_edge_label_for_test(&mut self, edge: usize) {
        self.edges[edge].label_left = (self.edges[edge].label_left + 1) % self.g;
    }
}

/// Structural properties checked by [`YoungGraph::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    /// Edge labels are determined by the endpoint carries.
    LabelFormula,
    /// At most one edge between any ordered pair of nodes.
    EdgeUniqueness,
    /// Swapping every carry pair maps the edge set onto itself.
    MirrorClosure,
    /// The internal node \[0,0] is present.
    ZeroNode,
    /// Loops and swap-pair edges carry equal label components.
    SymmetricLabels,
    /// Node labels and internal edge labels are all distinct.
    DistinctLabels,
    StartNode,
    Reachability,
    PivotReachability,
    PivotSets,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub property: Property,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// The first violated property, if any.
    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(graph: &YoungGraph, indices: &[usize]) -> Vec<String> {
        indices
            .iter()
            .map(|&i| graph.nodes()[i].to_string())
            .collect()
    }

    #[test]
    fn solve_pair_start_10_9() {
        let sols = solve_pair(10, 9, NodeId::start());
        assert_eq!(
            sols,
            vec![PairSolution {
                label_left: 1,
                label_right: 9,
                successor: NodeId::internal(0, 8),
            }]
        );
    }

    #[test]
    fn solve_pair_start_8_5() {
        let sols = solve_pair(8, 5, NodeId::start());
        assert_eq!(
            sols,
            vec![PairSolution {
                label_left: 1,
                label_right: 5,
                successor: NodeId::internal(0, 3),
            }]
        );
    }

    #[test]
    fn solve_pair_interior_8_5() {
        let sols = solve_pair(8, 5, NodeId::internal(0, 3));
        assert!(sols.contains(&PairSolution {
            label_left: 0,
            label_right: 1,
            successor: NodeId::internal(1, 1),
        }));
        assert!(sols.contains(&PairSolution {
            label_left: 1,
            label_right: 6,
            successor: NodeId::internal(1, 4),
        }));
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn h_graph_sizes_largest_cases() {
        // The two largest carry graphs for g <= 100; published counts
        // exclude the starting node and its out-edges.
        let h = build_h_graph(58, 45).unwrap();
        assert_eq!(h.internal_node_count(), 588);
        assert_eq!(h.internal_edge_count(), 640);
        let h = build_h_graph(99, 68).unwrap();
        assert_eq!(h.internal_node_count(), 784);
        assert_eq!(h.internal_edge_count(), 848);
    }

    #[test]
    fn h_12_7_has_no_pivots() {
        let h = build_h_graph(12, 7).unwrap();
        assert!(h.even_pivots().is_empty());
        assert!(h.odd_pivots().is_empty());
        assert!(!h.exists());
        assert!(h.prune().is_none());
    }

    #[test]
    fn pivots_8_5() {
        let h = build_h_graph(8, 5).unwrap();
        let even: Vec<String> = ids(&h, h.even_pivots());
        let odd: Vec<String> = ids(&h, h.odd_pivots());
        for want in ["[0,0]", "[1,1]", "[3,3]", "[4,4]"] {
            assert!(
                even.contains(&want.to_string()),
                "missing even pivot {want}"
            );
        }
        for want in ["[0,0]", "[1,4]", "[3,0]", "[4,4]"] {
            assert!(odd.contains(&want.to_string()), "missing odd pivot {want}");
        }
        assert_eq!(even.len(), 4);
        assert_eq!(odd.len(), 4);
    }

    #[test]
    fn pivots_10_4() {
        let h = build_h_graph(10, 4).unwrap();
        let mut even: Vec<String> = ids(&h, h.even_pivots());
        let mut odd: Vec<String> = ids(&h, h.odd_pivots());
        even.sort();
        odd.sort();
        assert_eq!(even, vec!["[0,0]", "[3,3]"]);
        assert_eq!(odd, vec!["[0,0]", "[3,3]"]);
    }

    #[test]
    fn pivots_14_3() {
        let (young, _) = build_young_graph(14, 3).unwrap().unwrap();
        let even: Vec<String> = ids(&young, young.even_pivots());
        let odd: Vec<String> = ids(&young, young.odd_pivots());
        assert_eq!(even.len(), 2);
        assert!(even.contains(&"[0,0]".to_string()));
        assert!(even.contains(&"[2,2]".to_string()));
        assert_eq!(odd.len(), 4);
        for want in ["[0,0]", "[1,0]", "[1,2]", "[2,2]"] {
            assert!(odd.contains(&want.to_string()), "missing odd pivot {want}");
        }
    }

    #[test]
    fn existence_examples() {
        assert!(!build_h_graph(12, 7).unwrap().exists());
        assert!(build_h_graph(10, 4).unwrap().exists());
        assert!(build_h_graph(3, 2).unwrap().exists());
    }

    #[test]
    fn prune_8_3_removes_two_dead_ends() {
        let h = build_h_graph(8, 3).unwrap();
        assert_eq!(h.total_node_count(), 7); // the seven-node graph
        let (young, stats) = h.prune().unwrap();
        assert_eq!(stats.removed_nodes, 2);
        assert_eq!(stats.removed_edges, 5);
        assert_eq!(young.internal_node_count(), 4);
        assert_eq!(young.internal_edge_count(), 6);
        assert!(young.validate().passed());
    }

    #[test]
    fn prune_8_5_is_identity() {
        let h = build_h_graph(8, 5).unwrap();
        let (young, stats) = h.prune().unwrap();
        assert_eq!(stats.removed_nodes, 0);
        assert_eq!(stats.removed_edges, 0);
        assert_eq!(young.internal_node_count(), 8);
        assert_eq!(young.internal_edge_count(), 16);
    }

    #[test]
    fn prune_24_13_counts() {
        let h = build_h_graph(24, 13).unwrap();
        assert_eq!(h.internal_node_count(), 24);
        assert_eq!(h.internal_edge_count(), 36);
        let (young, stats) = h.prune().unwrap();
        // The published count says eight nodes disappear here, but that
        // contradicts the accompanying pivot list and counting series: the
        // unique length-5 walk to an even pivot passes through [9,7], so
        // [9,7] and [7,9] are not dead ends. Six nodes go, not eight.
        assert_eq!(stats.removed_nodes, 6);
        assert_eq!(stats.removed_edges, 10);
        assert_eq!(young.internal_node_count(), 18);
        assert_eq!(young.internal_edge_count(), 26);
        // The published pivot list is reproduced exactly.
        let mut pivots: Vec<String> = young
            .even_pivots()
            .iter()
            .chain(young.odd_pivots())
            .map(|&i| young.nodes()[i].to_string())
            .collect();
        pivots.sort();
        pivots.dedup();
        assert_eq!(
            pivots,
            vec!["[0,0]", "[12,12]", "[3,12]", "[5,12]", "[5,5]", "[7,0]", "[7,7]", "[9,0]"]
        );
        assert!(young.validate().passed());
    }

    #[test]
    fn young_graph_sizes() {
        let (young, _) = build_young_graph(40, 13).unwrap().unwrap();
        assert_eq!(young.internal_node_count(), 15);
        assert_eq!(young.internal_edge_count(), 22);
        let (young, _) = build_young_graph(24, 17).unwrap().unwrap();
        assert_eq!(young.internal_node_count(), 26);
        assert_eq!(young.internal_edge_count(), 34);
    }

    #[test]
    fn validate_published_graphs() {
        for (g, k) in [(10, 9), (40, 13)] {
            let (young, _) = build_young_graph(g, k).unwrap().unwrap();
            let report = young.validate();
            assert!(report.passed(), "({g},{k}): {:?}", report.first());
        }
    }

    #[test]
    fn validate_catches_corrupted_label() {
        let (mut young, _) = build_young_graph(10, 9).unwrap().unwrap();
        // Perturb an internal edge label; the label formula must fire first.
        let victim = (0..young.edges().len())
            .find(|&i| young.edges()[i].from != 0)
            .unwrap();
        young.corrupt_edge_label_for_test(victim);
        let report = young.validate();
        assert!(!report.passed());
        assert_eq!(report.first().unwrap().property, Property::LabelFormula);
    }

    #[test]
    fn phi_is_an_automorphism_of_order_two() {
        for g in 3..=20 {
            for k in 2..g {
                let Some((young, _)) = build_young_graph(g, k).unwrap() else {
                    continue;
                };
                for node in young.nodes().iter().filter(|n| !n.is_start) {
                    let image = node.swapped();
                    assert!(young.node_index(image).is_some(), "({g},{k}): {node}");
                    assert_eq!(image.swapped(), *node);
                }
                for e in young.edges().iter().filter(|e| e.from != 0) {
                    let from = young.nodes()[e.from];
                    let to = young.nodes()[e.to];
                    let mf = young.node_index(to.swapped()).unwrap();
                    let mt = young.node_index(from.swapped()).unwrap();
                    assert!(
                        young.out_edges(mf).any(|m| m.to == mt
                            && m.label_left == e.label_right
                            && m.label_right == e.label_left),
                        "({g},{k}): no Phi image for {} -> {}",
                        from,
                        to
                    );
                }
            }
        }
    }

    #[test]
    fn pruning_preserves_reachability() {
        for g in 3..=16 {
            for k in 2..g {
                let Some((young, _)) = build_young_graph(g, k).unwrap() else {
                    continue;
                };
                let report = young.validate();
                assert!(report.passed(), "({g},{k}): {:?}", report.first());
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_h_graph(2, 2).is_err());
        assert!(build_h_graph(10, 1).is_err());
        assert!(build_h_graph(10, 10).is_err());
    }
}
