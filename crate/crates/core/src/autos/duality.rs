//! The point-plane duality graph: 60 points on one side, their 60
//! orthoplanes on the other, an edge where the point lies in the plane.
//! Its automorphism group is the matroid group extended by the swap
//! `x <-> P_x`, doubling the order to 28,800.

use serde::Serialize;

use crate::bits;
use crate::group::{Perm, PermGroup};
use crate::matroid::{FlatClass, Flats, OrthoData};
use crate::roots::NPOINTS;
use crate::{Error, Result};

use super::search::AutGroup;

/// Findings on the duality graph. Vertices 0..59 are points, vertex 60+y is
/// the orthoplane of point y.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub vertices: usize,
    pub edges: usize,
    /// Both sides are 15-regular.
    pub regular15: bool,
    pub connected: bool,
    /// `x in P_y` iff `y in P_x` on all pairs.
    pub adjacency_symmetric: bool,
    /// The swap `x <-> P_x` preserves adjacency and is an involution.
    pub swap_is_automorphism: bool,
    /// The swap commutes with every induced matroid generator.
    pub swap_commutes: bool,
    /// Every line of the matroid arises as an intersection of two
    /// 15-point planes (this is what lets the matroid search stand in for a
    /// graph-automorphism engine on the side-preserving part).
    pub lines_are_plane_meets: bool,
    /// Order of the side-preserving automorphism group.
    pub side_preserving_order: u64,
    /// Order of the full graph automorphism group.
    pub total_order: u64,
}

fn adjacent(ortho: &OrthoData, x: usize, y: usize) -> bool {
    bits::contains(ortho.orthoplane_mask[y], x)
}

/// Lift a matroid permutation to the duality graph (same action on both
/// sides).
pub fn lift_to_graph(p: &Perm) -> Perm {
    let mut images = Vec::with_capacity(2 * NPOINTS);
    for i in 0..NPOINTS {
        images.push(p.apply(i));
    }
    for i in 0..NPOINTS {
        images.push(NPOINTS + p.apply(i));
    }
    Perm::from_images(images).expect("lift of a bijection")
}

pub fn duality_report(
    flats: &Flats,
    ortho: &OrthoData,
    aut: &AutGroup,
) -> Result<DualityReport> {
    let n = NPOINTS;

    let mut edges = 0;
    let mut adjacency_symmetric = true;
    let mut regular15 = true;
    for x in 0..n {
        let mut deg = 0;
        for y in 0..n {
            if adjacent(ortho, x, y) {
                deg += 1;
                edges += 1;
            }
            if adjacent(ortho, x, y) != adjacent(ortho, y, x) {
                adjacency_symmetric = false;
            }
        }
        if deg != 15 || ortho.orthoplane_mask[x].count_ones() != 15 {
            regular15 = false;
        }
    }

    // connectivity over the 120 vertices
    let mut seen = vec![false; 2 * n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..2 * n {
            let linked = if v < n && w >= n {
                adjacent(ortho, v, w - n)
            } else if v >= n && w < n {
                adjacent(ortho, w, v - n)
            } else {
                false
            };
            if linked && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let connected = seen.iter().all(|&s| s);

    // the swap is an automorphism precisely because adjacency is symmetric
    let swap = Perm::from_images(
        (0..2 * n).map(|v| if v < n { v + n } else { v - n }).collect(),
    )?;
    let mut swap_is_automorphism = swap.compose(&swap).is_identity();
    for x in 0..n {
        for y in 0..n {
            if adjacent(ortho, x, y) != adjacent(ortho, y, x) {
                swap_is_automorphism = false;
            }
        }
    }

    // induced matroid generators act on both sides; they are graph
    // automorphisms because automorphisms commute with orthoplanes:
    // P_{sigma(x)} = sigma(P_x)
    let lifted: Vec<Perm> = aut.group.generators().iter().map(lift_to_graph).collect();
    for (g, lg) in aut.group.generators().iter().zip(&lifted) {
        for x in 0..n {
            let image_plane = g.apply_mask(ortho.orthoplane_mask[x]);
            if image_plane != ortho.orthoplane_mask[g.apply(x)] {
                return Err(Error::GroupStructure(format!(
                    "generator does not commute with orthoplanes at point {x}"
                )));
            }
        }
        let _ = lg;
    }
    let swap_commutes = lifted
        .iter()
        .all(|lg| lg.compose(&swap) == swap.compose(lg));

    // every line is a pairwise meet of 15-point planes, so a side-preserving
    // graph automorphism preserves the line structure and its point part is
    // a line-preserving bijection - which the search already enumerated
    let pi15: Vec<u64> = flats
        .planes_of_class(FlatClass::Pi15)
        .map(|p| p.mask)
        .collect();
    let mut lines_are_plane_meets = true;
    'lines: for line in &flats.lines {
        for (i, &a) in pi15.iter().enumerate() {
            if line.mask & !a != 0 {
                continue;
            }
            for &b in &pi15[i + 1..] {
                if line.mask & !b == 0 && a & b == line.mask {
                    continue 'lines;
                }
            }
        }
        lines_are_plane_meets = false;
        break;
    }

    let side_preserving = PermGroup::generate(2 * n, &lifted);
    let mut with_swap = lifted.clone();
    with_swap.push(swap);
    let full = PermGroup::generate(2 * n, &with_swap);

    Ok(DualityReport {
        vertices: 2 * n,
        edges,
        regular15,
        connected,
        adjacency_symmetric,
        swap_is_automorphism,
        swap_commutes,
        lines_are_plane_meets,
        side_preserving_order: side_preserving.order(),
        total_order: full.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testworld::world;

    #[test]
    fn duality_graph_structure_and_group() {
        let w = world();
        let rep = duality_report(&w.flats, &w.ortho, &w.aut).unwrap();
        assert_eq!(rep.vertices, 120);
        assert_eq!(rep.edges, 60 * 15);
        assert!(rep.regular15);
        assert!(rep.connected);
        assert!(rep.adjacency_symmetric);
        assert!(rep.swap_is_automorphism);
        assert!(rep.swap_commutes);
        assert!(rep.lines_are_plane_meets);
        assert_eq!(rep.side_preserving_order, 14_400);
        assert_eq!(rep.total_order, 28_800);
    }

    #[test]
    fn lifted_generators_preserve_adjacency() {
        let w = world();
        for g in w.aut.group.generators() {
            let lg = lift_to_graph(g);
            for x in 0..NPOINTS {
                for y in 0..NPOINTS {
                    let before = adjacent(&w.ortho, x, y);
                    let after = adjacent(&w.ortho, lg.apply(x), lg.apply(NPOINTS + y) - NPOINTS);
                    assert_eq!(before, after);
                }
            }
        }
    }
}
