//! Generators for the graph families used in experiments, and the layered
//! network construction for permutation invariant graphs.

mod perm;

pub use perm::{
    is_permutation_invariant, midpoint_cut_cover, perm_invariant_network, signature, BitVector, BitVectorGraphSpec,
    PermNetwork, Signature,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::samples;

/// Largest dimension accepted for bit-vector families.
pub const MAX_DIMENSION: usize = 12;

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The mod-2 inner product graph on `{0,1}^d`: `u ~ v` iff
/// `sum u_i v_i` is even. `d` must be even.
pub fn orthogonality_graph(d: usize) -> Result<BipartiteGraph> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::domain(format!("dimension {d} must be even and positive")));
    }
    BitVectorGraphSpec::orthogonal(d)?.graph()
}

/// `A = B = [n]` with `i ~ j` iff their distance on the n-cycle is at most
/// `n / 4`.
pub fn circulant_quarter_graph(n: usize) -> Result<BipartiteGraph> {
    if n < 4 {
        return Err(Error::domain(format!("circulant graph needs n >= 4, got {n}")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let diff = i.abs_diff(j);
            let dist = diff.min(n - diff);
            if 4 * dist <= n {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::from_index_edges(numbered("a", n), numbered("b", n), edges)
}

/// The perfect matching `a_i ~ b_i` on `n + n` vertices.
pub fn matching_graph(n: usize) -> Result<BipartiteGraph> {
    if n == 0 {
        return Err(Error::domain("matching needs n >= 1"));
    }
    BipartiteGraph::from_index_edges(numbered("a", n), numbered("b", n), (0..n).map(|i| (i, i)))
}

/// Each of the `na * nb` pairs is an edge with probability `p`, drawn in
/// row-major order from a ChaCha8 stream seeded with `seed`.
pub fn random_bipartite(na: usize, nb: usize, p: f64, seed: u64) -> Result<BipartiteGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::from_index_edges(numbered("a", na), numbered("b", nb), edges)
}

/// Parses a family name: `orthogonal:d`, `circulant:n`, `matching:n`,
/// `random:na,nb,p,seed` or `sample`. `default_seed` fills in a missing
/// random seed.
pub fn from_name(name: &str, default_seed: u64) -> Result<BipartiteGraph> {
    let (family, args) = name.split_once(':').unwrap_or((name, ""));
    let bad = || Error::Parse(format!("cannot parse family {name:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match family {
        "orthogonal" => orthogonality_graph(num(args)?),
        "circulant" => circulant_quarter_graph(num(args)?),
        "matching" => matching_graph(num(args)?),
        "random" => {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 3 && parts.len() != 4 {
                return Err(bad());
            }
            let p: f64 = parts[2].trim().parse().map_err(|_| bad())?;
            let seed = match parts.get(3) {
                Some(s) => s.trim().parse().map_err(|_| bad())?,
                None => default_seed,
            };
            random_bipartite(num(parts[0])?, num(parts[1])?, p, seed)
        }
        "sample" if args.is_empty() => Ok(samples::graph()),
        _ => Err(bad()),
    }
}
