//! Seeded random instances.

use crate::graph::{Arc, Flow, StdArc, StdInstance, UncapInstance};
use crate::lp2::LP2Instance;
use crate::rational::{ratio, Extended, Rational};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub nodes: usize,
    pub arcs: usize,
    /// Bit length of numerators and denominators.
    pub bits: u32,
    pub seed: u64,
}

/// Uniform index below `len`; sampled as u32 so a seed gives the same
/// instance on 32- and 64-bit targets.
fn index(rng: &mut ChaCha8Rng, len: usize) -> usize {
    rng.gen_range(0..len as u32) as usize
}

fn top(bits: u32) -> i64 {
    (1i64 << bits.clamp(1, 30)) - 1
}

fn fraction(rng: &mut ChaCha8Rng, bits: u32) -> Rational {
    let hi = top(bits);
    ratio(rng.gen_range(1..=hi), rng.gen_range(1..=hi))
}

/// Nonnegative value with `bits`-bit parts; zero a quarter of the time.
fn amount(rng: &mut ChaCha8Rng, bits: u32) -> Rational {
    if rng.gen_bool(0.25) {
        Rational::zero()
    } else {
        fraction(rng, bits)
    }
}

fn potentials(rng: &mut ChaCha8Rng, nodes: usize, sink: usize) -> Vec<Rational> {
    const CHOICES: [(i64, i64); 7] = [(1, 1), (4, 3), (3, 2), (5, 3), (2, 1), (5, 2), (3, 1)];
    (0..nodes)
        .map(|i| {
            if i == sink {
                Rational::one()
            } else {
                let (p, q) = CHOICES[index(rng, CHOICES.len())];
                ratio(p, q)
            }
        })
        .collect()
}

/// A gain at most `limit`, with small parts; sometimes exactly `limit`.
fn gain_below(rng: &mut ChaCha8Rng, bits: u32, limit: &Rational) -> Rational {
    if rng.gen_bool(0.15) {
        return limit.clone();
    }
    for _ in 0..8 {
        let g = fraction(rng, bits);
        if g <= *limit {
            return g;
        }
    }
    limit.clone()
}

/// Distinct ordered pairs: every node's arc to the sink first, then random
/// extra pairs up to `arcs` in total (at least `nodes` when possible).
fn arc_pairs(rng: &mut ChaCha8Rng, nodes: usize, sink: usize, arcs: usize, sink_arcs: bool) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if sink_arcs {
        pairs.extend((0..nodes).filter(|&i| i != sink).map(|i| (i, sink)));
    }
    let mut rest: Vec<(usize, usize)> = (0..nodes)
        .flat_map(|i| (0..nodes).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && !pairs.contains(&(i, j)))
        .collect();
    rest.shuffle(rng);
    let wanted = arcs.max(if sink_arcs { nodes } else { 0 });
    while pairs.len() < wanted {
        match rest.pop() {
            Some(p) => pairs.push(p),
            None => break,
        }
    }
    pairs
}

/// Uncapacitated instance satisfying every structural requirement, with a
/// feasible initial flow and no flow-generating cycles.
pub fn random_uncap(params: GenParams) -> UncapInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.nodes.max(1);
    let sink = n - 1;
    let mu = potentials(&mut rng, n, sink);
    let pairs = arc_pairs(&mut rng, n, sink, params.arcs, true);
    let arcs: Vec<Arc> =
        pairs.iter().map(|&(i, j)| Arc::regular(i, j, gain_below(&mut rng, params.bits, &(&mu[j] / &mu[i])))).collect();
    let mut flow = Flow::zero(arcs.len());
    for a in 0..arcs.len() {
        if rng.gen_bool(0.65) {
            flow[a] = fraction(&mut rng, params.bits);
        }
    }
    let mut demands = vec![Rational::zero(); n];
    for (a, arc) in arcs.iter().enumerate() {
        demands[arc.head] += &arc.gain * &flow[a];
        demands[arc.tail] -= &flow[a];
    }
    for (i, b) in demands.iter_mut().enumerate() {
        if i == sink {
            *b = Rational::zero();
        } else {
            *b -= amount(&mut rng, params.bits);
        }
    }
    UncapInstance::new(n, sink, arcs, demands, None, Some(flow)).expect("generated instance is valid")
}

/// Capacitated instance; occasionally unbounded.
pub fn random_std(params: GenParams) -> StdInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.nodes.max(1);
    let sink = n - 1;
    let mu = potentials(&mut rng, n, sink);
    let wild = rng.gen_bool(0.125);
    let pairs = arc_pairs(&mut rng, n, sink, params.arcs, false);
    let arcs = pairs
        .into_iter()
        .map(|(i, j)| {
            let capacity =
                if rng.gen_bool(0.3) { Extended::Infinite } else { Extended::Finite(amount(&mut rng, params.bits)) };
            let gain = if capacity.is_infinite() && !wild {
                gain_below(&mut rng, params.bits, &(&mu[j] / &mu[i]))
            } else {
                fraction(&mut rng, params.bits)
            };
            StdArc { tail: i, head: j, gain, capacity }
        })
        .collect();
    StdInstance::new(n, sink, arcs).expect("generated instance is valid")
}

/// Two-nonzero system with `nodes` rows and `arcs` columns. Most right-hand
/// sides come from a random point inside the bounds, so about half the
/// instances are feasible.
pub fn random_lp2(params: GenParams) -> LP2Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let rows = params.nodes.max(1);
    let signed = |rng: &mut ChaCha8Rng| {
        let v = fraction(rng, params.bits);
        if rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    };
    let mut columns = Vec::with_capacity(params.arcs);
    let mut upper = Vec::with_capacity(params.arcs);
    for _ in 0..params.arcs {
        let i = index(&mut rng, rows);
        let mut col = vec![(i, signed(&mut rng))];
        if rows > 1 && rng.gen_bool(0.75) {
            let k = (i + 1 + index(&mut rng, rows - 1)) % rows;
            col.push((k, signed(&mut rng)));
        }
        columns.push(col);
        upper.push(if rng.gen_bool(0.5) {
            Extended::Finite(amount(&mut rng, params.bits))
        } else {
            Extended::Infinite
        });
    }
    let rhs = if rng.gen_bool(0.6) {
        let mut b = vec![Rational::zero(); rows];
        for (col, u) in columns.iter().zip(&upper) {
            let x = match u {
                Extended::Finite(u) => u * ratio(rng.gen_range(0..=4), 4),
                Extended::Infinite => amount(&mut rng, params.bits),
            };
            for (i, a) in col {
                b[*i] += a * &x;
            }
        }
        b
    } else {
        (0..rows).map(|_| if rng.gen_bool(0.3) { Rational::zero() } else { signed(&mut rng) }).collect()
    };
    LP2Instance::new(rows, columns, rhs, upper).expect("generated instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gainpath::{find_generating_cycle, GainEdge};

    #[test]
    fn uncap_generation_is_deterministic_and_bounded() {
        for seed in 0..40 {
            let p = GenParams { nodes: 2 + (seed as usize % 6), arcs: 12, bits: 4, seed };
            let a = random_uncap(p);
            assert_eq!(a, random_uncap(p));
            assert!(a.arc_count() >= a.node_count());
            let edges: Vec<GainEdge> =
                a.arcs().iter().map(|x| GainEdge { from: x.tail, to: x.head, gain: x.gain.clone() }).collect();
            assert!(find_generating_cycle(a.node_count(), &edges).is_none());
        }
    }

    #[test]
    fn std_generation_is_deterministic() {
        let p = GenParams { nodes: 5, arcs: 10, bits: 3, seed: 7 };
        assert_eq!(random_std(p), random_std(p));
        assert_eq!(random_std(p).arcs().len(), 10);
    }

    #[test]
    fn lp2_generation_has_no_empty_columns() {
        for seed in 0..30 {
            let p = GenParams { nodes: 1 + seed as usize % 5, arcs: 8, bits: 3, seed };
            let lp = random_lp2(p);
            assert_eq!(lp, random_lp2(p));
            assert!((0..lp.cols()).all(|j| !lp.column(j).is_empty()));
        }
    }
}
