//! Multiplicative path and cycle searches on gain graphs.

use crate::graph::NodeId;
use crate::rational::Rational;
use num_traits::One;
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub gain: Rational,
}

pub fn path_gain(edges: &[GainEdge], path: &[usize]) -> Rational {
    path.iter().fold(Rational::one(), |acc, &e| acc * &edges[e].gain)
}

/// Returns the edges of some cycle with gain product above one, in traversal
/// order, or `None` when every cycle has gain at most one.
pub fn find_generating_cycle(node_count: usize, edges: &[GainEdge]) -> Option<Vec<usize>> {
    let mut dist = vec![Rational::one(); node_count];
    let mut pred: Vec<Option<usize>> = vec![None; node_count];
    loop {
        let mut changed = false;
        for (e, edge) in edges.iter().enumerate() {
            let candidate = &dist[edge.from] * &edge.gain;
            if candidate > dist[edge.to] {
                dist[edge.to] = candidate;
                pred[edge.to] = Some(e);
                changed = true;
            }
        }
        if !changed {
            return None;
        }
        if let Some(cycle) = predecessor_cycle(node_count, edges, &pred) {
            debug_assert!(path_gain(edges, &cycle) > Rational::one());
            return Some(cycle);
        }
    }
}

fn predecessor_cycle(node_count: usize, edges: &[GainEdge], pred: &[Option<usize>]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on current walk, 2 = finished
    let mut state = vec![0u8; node_count];
    for start in 0..node_count {
        if state[start] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = start;
        loop {
            if state[v] == 2 {
                break;
            }
            if state[v] == 1 {
                let mut cycle = Vec::new();
                let mut u = v;
                loop {
                    let e = pred[u].expect("walk nodes have predecessors");
                    cycle.push(e);
                    u = edges[e].from;
                    if u == v {
                        break;
                    }
                }
                cycle.reverse();
                return Some(cycle);
            }
            state[v] = 1;
            walk.push(v);
            match pred[v] {
                Some(e) => v = edges[e].from,
                None => break,
            }
        }
        for w in walk {
            state[w] = 2;
        }
    }
    None
}

/// Highest path gain from every node to `target`; `None` for nodes that cannot
/// reach it. Returns `Err(())` if a generating cycle keeps improving values.
#[allow(clippy::result_unit_err)]
pub fn best_gains_to(node_count: usize, edges: &[GainEdge], target: NodeId) -> Result<Vec<Option<Rational>>, ()> {
    let mut best: Vec<Option<Rational>> = vec![None; node_count];
    best[target] = Some(Rational::one());
    for _ in 0..=node_count {
        let mut changed = false;
        for edge in edges {
            let Some(down) = &best[edge.to] else { continue };
            let candidate = &edge.gain * down;
            let better = match &best[edge.from] {
                None => true,
                Some(current) => candidate > *current,
            };
            if better && edge.from != target {
                best[edge.from] = Some(candidate);
                changed = true;
            }
        }
        if !changed {
            return Ok(best);
        }
    }
    Err(())
}

/// Nodes reachable from any node flagged in `sources`.
pub fn reachable_from(node_count: usize, edges: &[GainEdge], sources: &[bool]) -> Vec<bool> {
    let mut adj = vec![Vec::new(); node_count];
    for edge in edges {
        adj[edge.from].push(edge.to);
    }
    let mut seen = sources.to_vec();
    let mut queue: VecDeque<NodeId> = (0..node_count).filter(|&v| sources[v]).collect();
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Nodes that can reach some node flagged in `targets`.
pub fn reaching(node_count: usize, edges: &[GainEdge], targets: &[bool]) -> Vec<bool> {
    let flipped: Vec<GainEdge> =
        edges.iter().map(|e| GainEdge { from: e.to, to: e.from, gain: e.gain.clone() }).collect();
    reachable_from(node_count, &flipped, targets)
}

/// Fewest-edge path from a source to a target, as edge indices.
pub fn bfs_path(node_count: usize, edges: &[GainEdge], sources: &[bool], targets: &[bool]) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); node_count];
    for (e, edge) in edges.iter().enumerate() {
        adj[edge.from].push(e);
    }
    let mut pred: Vec<Option<usize>> = vec![None; node_count];
    let mut seen = sources.to_vec();
    let mut queue: VecDeque<NodeId> = (0..node_count).filter(|&v| sources[v]).collect();
    while let Some(u) = queue.pop_front() {
        if targets[u] {
            let mut path = Vec::new();
            let mut v = u;
            while let Some(e) = pred[v] {
                path.push(e);
                v = edges[e].from;
            }
            path.reverse();
            return Some(path);
        }
        for &e in &adj[u] {
            let v = edges[e].to;
            if !seen[v] {
                seen[v] = true;
                pred[v] = Some(e);
                queue.push_back(v);
            }
        }
    }
    None
}

/// Some cycle with gain product below one.
pub fn find_absorbing_cycle(node_count: usize, edges: &[GainEdge]) -> Option<Vec<usize>> {
    let inverted: Vec<GainEdge> =
        edges.iter().map(|e| GainEdge { from: e.from, to: e.to, gain: e.gain.recip() }).collect();
    find_generating_cycle(node_count, &inverted)
}

/// Some cycle with gain product exactly one. Expects no generating cycle;
/// returns `None` if one is present or every cycle absorbs.
pub fn find_unit_cycle(node_count: usize, edges: &[GainEdge]) -> Option<Vec<usize>> {
    let mut label = vec![Rational::one(); node_count];
    let mut settled = false;
    for _ in 0..=node_count {
        let mut changed = false;
        for edge in edges {
            let candidate = &label[edge.from] * &edge.gain;
            if candidate > label[edge.to] {
                label[edge.to] = candidate;
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        return None;
    }
    let tight: Vec<bool> = edges.iter().map(|e| &label[e.from] * &e.gain == label[e.to]).collect();
    let cycle = find_cycle(node_count, edges, |e| tight[e])?;
    debug_assert!(path_gain(edges, &cycle).is_one());
    Some(cycle)
}

/// Any directed cycle using only edges accepted by `allowed`, in traversal order.
pub fn find_cycle(node_count: usize, edges: &[GainEdge], allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); node_count];
    for (e, edge) in edges.iter().enumerate() {
        if allowed(e) {
            adj[edge.from].push(e);
        }
    }
    // 0 = new, 1 = on the DFS stack, 2 = done
    let mut color = vec![0u8; node_count];
    for root in 0..node_count {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
        let mut via: Vec<usize> = Vec::new();
        color[root] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < adj[u].len() {
                let e = adj[u][*next];
                *next += 1;
                let v = edges[e].to;
                match color[v] {
                    0 => {
                        color[v] = 1;
                        stack.push((v, 0));
                        via.push(e);
                    }
                    1 => {
                        let pos = stack.iter().position(|&(w, _)| w == v).expect("node on stack");
                        let mut cycle: Vec<usize> = via[pos..].to_vec();
                        cycle.push(e);
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[u] = 2;
                stack.pop();
                via.pop();
            }
        }
    }
    None
}

/// Nodes reachable from some generating cycle, together with one generating
/// cycle per discovery round; every node of the returned cycles is flagged.
pub fn generating_closure(node_count: usize, edges: &[GainEdge]) -> (Vec<bool>, Vec<Vec<usize>>) {
    let mut closed = vec![false; node_count];
    let mut cycles = Vec::new();
    loop {
        let outside: Vec<usize> =
            (0..edges.len()).filter(|&e| !closed[edges[e].from] && !closed[edges[e].to]).collect();
        let sub: Vec<GainEdge> = outside.iter().map(|&e| edges[e].clone()).collect();
        let Some(cycle) = find_generating_cycle(node_count, &sub) else { break };
        let cycle: Vec<usize> = cycle.into_iter().map(|k| outside[k]).collect();
        let mut seeds = vec![false; node_count];
        for &e in &cycle {
            seeds[edges[e].from] = true;
        }
        for (v, r) in reachable_from(node_count, edges, &seeds).into_iter().enumerate() {
            closed[v] |= r;
        }
        cycles.push(cycle);
    }
    (closed, cycles)
}
