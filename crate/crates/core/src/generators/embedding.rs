//! Rotation-system embeddings and their Euler-genus check.

use crate::error::{Error, Result};
use crate::graph::{QueryGraph, VertexId};

/// Cyclic order of neighbors around each vertex.
pub type Rotation = Vec<Vec<VertexId>>;

/// Genus of the orientable surface the rotation system embeds `g` into.
///
/// Faces are traced dart by dart; with `C` components, Euler's formula gives
/// `V - E + F = 2C - 2·genus`. Isolated vertices contribute one face each.
pub fn embedding_genus(g: &QueryGraph, rotation: &Rotation) -> Result<usize> {
    let n = g.n();
    if rotation.len() != n {
        return Err(Error::Usage(format!("rotation covers {} of {n} vertices", rotation.len())));
    }
    // sorted (neighbor, slot) per vertex, for locating u inside rot[v]
    let mut slot_of: Vec<Vec<(VertexId, usize)>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut pairs: Vec<(VertexId, usize)> = rotation[v].iter().enumerate().map(|(i, &x)| (x, i)).collect();
        pairs.sort_unstable();
        if pairs.iter().map(|p| p.0).ne(g.adj(v).iter().copied()) {
            return Err(Error::Usage(format!("rotation at {v} is not a permutation of its neighbors")));
        }
        slot_of.push(pairs);
    }
    let offsets: Vec<usize> = std::iter::once(0)
        .chain(rotation.iter().scan(0, |acc, r| {
            *acc += r.len();
            Some(*acc)
        }))
        .collect();
    let mut used = vec![false; offsets[n]];
    let mut faces = 0usize;
    for u in 0..n {
        for i in 0..rotation[u].len() {
            if used[offsets[u] + i] {
                continue;
            }
            faces += 1;
            let (mut a, mut ai) = (u, i);
            while !used[offsets[a] + ai] {
                used[offsets[a] + ai] = true;
                let b = rotation[a][ai];
                let back = slot_of[b][slot_of[b].binary_search_by_key(&a, |p| p.0).unwrap()].1;
                let bi = (back + 1) % rotation[b].len();
                a = b;
                ai = bi;
            }
        }
    }
    faces += (0..n).filter(|&v| g.deg(v) == 0).count();
    let c = g.components().len() as i64;
    let euler = n as i64 - g.m() as i64 + faces as i64;
    let twice_genus = 2 * c - euler;
    debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
    Ok((twice_genus / 2) as usize)
}

pub fn is_planar_embedding(g: &QueryGraph, rotation: &Rotation) -> Result<bool> {
    Ok(embedding_genus(g, rotation)? == 0)
}
