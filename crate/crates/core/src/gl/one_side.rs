use std::fmt;

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::graph::{components_of_mask, non_cut_vertices, VertexSet, WeightedGraph};
use crate::partition::Partition;

use super::{bounded_gl, GlOptions, TargetWeights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Every part reaches `w_i / 3`.
    Lower,
    /// Every part stays within `3·w_i`.
    Upper,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

/// A CVP of `V` whose `i`-th part meets one side of the GL window.
///
/// Lower: a `α = 1/3` packing fills every index; each leftover component of
/// `G - V(𝒯)` joins the smallest-index set it touches. Upper: a `α = 1`
/// packing already covers `V`; missing indices are filled by splitting off
/// non-cut vertices of the heaviest multi-vertex set.
pub fn gl_one_side(g: &WeightedGraph, targets: &TargetWeights, side: Side, opts: GlOptions) -> Result<Partition> {
    let alpha = match side {
        Side::Lower => Frac::ONE_THIRD,
        Side::Upper => Frac::ONE,
    };
    let packing = bounded_gl(g, targets, alpha, opts)?;
    let mut sets = packing.sets;
    match side {
        Side::Lower => {
            if sets.iter().any(Option::is_none) {
                return Err(Error::precondition(
                    "lower packing left a target without a set; the graph is not k-connected",
                ));
            }
            let mut sets: Vec<VertexSet> = sets.into_iter().flatten().collect();
            attach_leftovers(g, &mut sets)?;
            Ok(Partition::new(sets))
        }
        Side::Upper => {
            if sets.iter().flatten().map(VertexSet::len).sum::<usize>() != g.n() {
                return Err(Error::internal("upper packing does not cover V"));
            }
            while let Some(i) = sets.iter().position(Option::is_none) {
                let j = (0..sets.len())
                    .filter(|&j| sets[j].as_ref().is_some_and(|s| s.len() >= 2))
                    .max_by_key(|&j| (sets[j].as_ref().map_or(0, VertexSet::weight), std::cmp::Reverse(j)))
                    .ok_or_else(|| Error::internal("no multi-vertex set to split"))?;
                let donor = sets[j].take().expect("filtered");
                let v = non_cut_vertices(g, &donor)[0];
                sets[j] = Some(donor.without(g, v));
                sets[i] = Some(VertexSet::singleton(g, v));
            }
            Ok(Partition::new(sets.into_iter().flatten().collect()))
        }
    }
}

fn attach_leftovers(g: &WeightedGraph, sets: &mut [VertexSet]) -> Result<()> {
    let mut owner = vec![None; g.n()];
    for (i, s) in sets.iter().enumerate() {
        for v in s.iter() {
            owner[v] = Some(i);
        }
    }
    let free: Vec<bool> = owner.iter().map(Option::is_none).collect();
    for comp in components_of_mask(g, &free) {
        let i = comp
            .iter()
            .flat_map(|v| g.neighbors(v).iter().filter_map(|&u| owner[u]))
            .min()
            .ok_or(Error::NotConnected)?;
        sets[i] = sets[i].union(g, &comp);
    }
    Ok(())
}
