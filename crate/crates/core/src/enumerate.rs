//! Generates (g,k)-reverse multiples in increasing order by walking paths
//! from the starting node to pivot nodes and decoding them into digit
//! strings.
//!
//! A path of t edges ending at an even pivot \[r,r] encodes a 2t-digit
//! number: the right edge-labels give a_0..a_{t-1} outbound and the left
//! labels give a_t..a_{2t-1} retracing. Ending at an odd pivot adds a
//! center digit, read once from either the loop at \[r,r] or the closing
//! edge [r',r] -> [r,r'].

use crate::error::{Error, Result};
use crate::graphcore::YoungGraph;
use crate::numeral::{is_reverse_multiple, CarrySequence, DigitVector};

/// Default cap on the number of paths explored per digit length.
pub const DEFAULT_PATH_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathParity {
    Even,
    OddPair,
    OddLoop,
}

/// A walk from the starting node to a pivot, plus the closing edge for the
/// odd parities. Edge values are indices into the graph's edge list.
#[derive(Debug, Clone)]
pub struct PivotPath<'g> {
    graph: &'g YoungGraph,
    edges: Vec<usize>,
    parity: PathParity,
    closing_edge: Option<usize>,
}

impl<'g> PivotPath<'g> {
    pub fn new(
        graph: &'g YoungGraph,
        edges: Vec<usize>,
        parity: PathParity,
        closing_edge: Option<usize>,
    ) -> Result<Self> {
        let path = PivotPath {
            graph,
            edges,
            parity,
            closing_edge,
        };
        path.check()?;
        Ok(path)
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn parity(&self) -> PathParity {
        self.parity
    }

    fn invalid(msg: &str) -> Error {
        Error::Internal(format!("invalid pivot path: {msg}"))
    }

    fn check(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Self::invalid("empty edge sequence"));
        }
        let all = self.graph.edges();
        if self.edges.iter().any(|&e| e >= all.len()) {
            return Err(Self::invalid("edge index out of range"));
        }
        if all[self.edges[0]].from != 0 {
            return Err(Self::invalid("path does not begin at the starting node"));
        }
        for w in self.edges.windows(2) {
            if all[w[0]].to != all[w[1]].from {
                return Err(Self::invalid("edges do not chain head to tail"));
            }
        }
        let terminal = all[*self.edges.last().unwrap()].to;
        let t_id = self.graph.nodes()[terminal];
        match self.parity {
            PathParity::Even => {
                if !self.graph.is_even_pivot(terminal) {
                    return Err(Self::invalid("terminal node is not an even pivot"));
                }
                if self.closing_edge.is_some() {
                    return Err(Self::invalid("even path carries a closing edge"));
                }
            }
            PathParity::OddLoop => {
                let Some(c) = self.closing_edge else {
                    return Err(Self::invalid("odd-loop path without loop edge"));
                };
                if !t_id.is_diagonal() || all[c].from != terminal || all[c].to != terminal {
                    return Err(Self::invalid("closing edge is not a loop at the pivot"));
                }
            }
            PathParity::OddPair => {
                let Some(c) = self.closing_edge else {
                    return Err(Self::invalid("odd-pair path without closing edge"));
                };
                let partner = self.graph.nodes()[all[c].to];
                if t_id.is_diagonal() || all[c].from != terminal || partner != t_id.swapped() {
                    return Err(Self::invalid("closing edge is not the swap-pair edge"));
                }
            }
        }
        Ok(())
    }

    /// Node indices along the walk, starting node first.
    fn node_run(&self) -> Vec<usize> {
        let all = self.graph.edges();
        let mut run = Vec::with_capacity(self.edges.len() + 1);
        run.push(0);
        for &e in &self.edges {
            run.push(all[e].to);
        }
        run
    }
}

/// Reads the digit string off a path: left labels forward, then for odd
/// parities one copy of the closing-edge digit, then right labels in
/// reverse.
pub fn decode(path: &PivotPath<'_>) -> Result<DigitVector> {
    path.check()?;
    let all = path.graph.edges();
    let mut digits: Vec<u32> = path.edges.iter().map(|&e| all[e].label_left).collect();
    if let Some(c) = path.closing_edge {
        digits.push(all[c].label_right);
    }
    digits.extend(path.edges.iter().rev().map(|&e| all[e].label_right));
    DigitVector::new(path.graph.g(), digits)
}

/// Reconstructs the carry sequence from the node labels along the path:
/// right labels outbound, then left labels retracing. The pivot's label is
/// used once for an even path and twice for an odd path; the far node of a
/// pair closure contributes nothing.
pub fn carries_of(path: &PivotPath<'_>) -> Result<CarrySequence> {
    path.check()?;
    let nodes = path.graph.nodes();
    let run = path.node_run();
    let mut carries: Vec<u32> = run.iter().map(|&v| nodes[v].right).collect();
    let skip_pivot = match path.parity {
        PathParity::Even => 1,
        PathParity::OddPair | PathParity::OddLoop => 0,
    };
    carries.extend(run.iter().rev().skip(skip_pivot).map(|&v| nodes[v].left));
    Ok(CarrySequence::from_raw(carries))
}

/// Enumeration limit: either the first `count` multiples or everything up
/// to a digit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Count(usize),
    MaxDigits(usize),
}

/// All (g,k)-reverse multiples up to the limit, sorted by length and then
/// lexicographically by digits (numeric order). Every emitted number is
/// re-verified against the digit arithmetic, and a duplicate decoding is a
/// hard error rather than a silent dedup.
pub fn enumerate_multiples(young: &YoungGraph, limit: Limit) -> Result<Vec<DigitVector>> {
    enumerate_multiples_with_budget(young, limit, DEFAULT_PATH_BUDGET)
}

pub fn enumerate_multiples_with_budget(
    young: &YoungGraph,
    limit: Limit,
    path_budget: usize,
) -> Result<Vec<DigitVector>> {
    let (count_goal, max_len) = match limit {
        Limit::Count(0) => return Ok(Vec::new()),
        Limit::MaxDigits(0) => return Ok(Vec::new()),
        // Once the internal [0,0] is reachable at distance d, lengths
        // 2d, 2d+1, ... all occur, so this cap cannot cut the list short.
        Limit::Count(c) => (Some(c), 2 * young.total_node_count() + c + 2),
        Limit::MaxDigits(m) => (None, m),
    };
    let mut out: Vec<DigitVector> = Vec::new();
    for n in 2..=max_len {
        let mut batch = multiples_of_length(young, n, path_budget)?;
        batch.sort();
        for pair in batch.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateMultiple(pair[0].tuple_notation()));
            }
        }
        for d in batch {
            match is_reverse_multiple(&d, young.k())? {
                crate::numeral::Verdict::Yes(_) => {}
                crate::numeral::Verdict::No => {
                    return Err(Error::Internal(format!(
                        "decoded path yields non-multiple {}",
                        d.tuple_notation()
                    )))
                }
            }
            out.push(d);
            if let Some(c) = count_goal {
                if out.len() == c {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Decodes every multiple with exactly `n` digits.
fn multiples_of_length(
    young: &YoungGraph,
    n: usize,
    path_budget: usize,
) -> Result<Vec<DigitVector>> {
    let steps = n / 2;
    if steps == 0 {
        return Ok(Vec::new());
    }
    let even = n.is_multiple_of(2);
    if even && young.even_pivots().is_empty() {
        return Ok(Vec::new());
    }
    if !even && young.odd_pivots().is_empty() {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    let mut explored = 0usize;
    let mut stack: Vec<usize> = Vec::with_capacity(steps);
    walk(
        young,
        0,
        steps,
        even,
        &mut stack,
        &mut explored,
        path_budget,
        n,
        &mut found,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    young: &YoungGraph,
    node: usize,
    remaining: usize,
    even: bool,
    stack: &mut Vec<usize>,
    explored: &mut usize,
    path_budget: usize,
    digits: usize,
    found: &mut Vec<DigitVector>,
) -> Result<()> {
    if remaining == 0 {
        *explored += 1;
        if *explored > path_budget {
            return Err(Error::PathBudgetExceeded {
                digits,
                budget: path_budget,
            });
        }
        if even {
            if young.is_even_pivot(node) {
                let path = PivotPath::new(young, stack.clone(), PathParity::Even, None)?;
                found.push(decode(&path)?);
            }
        } else if young.is_odd_pivot(node) {
            let id = young.nodes()[node];
            let (parity, closing) = if id.is_diagonal() {
                (PathParity::OddLoop, young.loop_edge(node))
            } else {
                (PathParity::OddPair, young.pair_edge(node))
            };
            let closing = closing
                .ok_or_else(|| Error::Internal("odd pivot lost its closing edge".to_string()))?;
            let path = PivotPath::new(young, stack.clone(), parity, Some(closing))?;
            found.push(decode(&path)?);
        }
        return Ok(());
    }
    for &idx in young.out_edge_indices(node) {
        stack.push(idx);
        walk(
            young,
            young.edges()[idx].to,
            remaining - 1,
            even,
            stack,
            explored,
            path_budget,
            digits,
            found,
        )?;
        stack.pop();
    }
    Ok(())
}

/// OEIS b-file rendering: one "index value" line per term, 1-based. Values
/// must fit 64 bits; anything larger is refused rather than truncated.
pub fn render_bfile(values: &[DigitVector]) -> Result<String> {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        let value = v.value_u64().ok_or(Error::ValueTooLarge)?;
        out.push_str(&format!("{} {}\n", i + 1, value));
    }
    Ok(out)
}
