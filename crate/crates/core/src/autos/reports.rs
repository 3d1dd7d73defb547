//! Structure reports over the automorphism group: point stabilizers,
//! transitivity on flat classes, primitivity, the pencil graph, and the
//! non-geometric coset witness.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::bits;
use crate::group::{
    isomorphic, minimal_block_system, primitivity, Perm, PermGroup, MulTable,
};
use crate::matroid::{FlatClass, Flats, OrthoData};
use crate::roots::NPOINTS;
use crate::{Error, Result};

use super::search::AutGroup;

/// Certificate for the structure of one point stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct StabReport {
    pub x: usize,
    pub order: u64,
    /// The reflection through the point's orthoplane lies in the stabilizer
    /// and commutes with all of it.
    pub reflection_central: bool,
    /// Size of the image of the restriction to the 15 orthoplane points.
    pub restriction_image_order: usize,
    /// Kernel of that restriction is exactly {identity, reflection}.
    pub kernel_ok: bool,
    /// Distinct permutations induced on the five frames through the point
    /// (120 means all of the symmetric group on five objects).
    pub frame_action_image: usize,
    /// Multiplication table isomorphic to S5 x Z2 (only computed when
    /// requested; the table test costs more than the order checks).
    pub table_is_s5_x_z2: Option<bool>,
}

/// Generators of the stabilizer of `x`, by conjugating the chain stabilizer
/// of point 0 with a transversal element.
pub fn stabilizer_gens(aut: &AutGroup, x: usize) -> Result<Vec<Perm>> {
    let base_gens = aut.group.first_stabilizer_gens();
    if x == 0 {
        return Ok(base_gens);
    }
    let t = aut
        .group
        .transversal_to(x)
        .ok_or_else(|| Error::GroupStructure(format!("point {x} not in orbit of 0")))?;
    let ti = t.inverse();
    Ok(base_gens.iter().map(|g| t.compose(g).compose(&ti)).collect())
}

pub fn stabilizer_report<R: crate::gfield::GoldenScalar>(
    table: &crate::roots::PointTable<R>,
    ortho: &OrthoData,
    aut: &AutGroup,
    x: usize,
    check_table: bool,
) -> Result<StabReport> {
    let gens = stabilizer_gens(aut, x)?;
    let stab = PermGroup::generate(NPOINTS, &gens);
    let order = stab.order();
    let elements = stab
        .elements_capped(1024)
        .ok_or_else(|| Error::GroupStructure(format!("stab({x}) too large: {order}")))?;

    let reflection = super::reflection_perm(table, x)?;
    let reflection_central = stab.contains(&reflection)
        && gens
            .iter()
            .all(|g| g.compose(&reflection) == reflection.compose(g));

    // restriction to the orthoplane
    let plane_points = bits::ids(ortho.orthoplane_mask[x]);
    let mut restricted = HashSet::new();
    let mut kernel = Vec::new();
    for e in &elements {
        let r = e.restrict_to(&plane_points)?;
        if r.is_identity() {
            kernel.push(e.clone());
        }
        restricted.insert(r);
    }
    kernel.sort_by(|a, b| a.images().cmp(b.images()));
    let mut expected_kernel = vec![Perm::identity(NPOINTS), reflection.clone()];
    expected_kernel.sort_by(|a, b| a.images().cmp(b.images()));
    let kernel_ok = kernel == expected_kernel;

    // action on the five frames through x
    let frame_masks: Vec<u64> = ortho.frames_through[x]
        .iter()
        .map(|&fi| ortho.frames[fi as usize].mask)
        .collect();
    let mut frame_perms = HashSet::new();
    for e in &elements {
        let mut images = Vec::with_capacity(5);
        for m in &frame_masks {
            let im = e.apply_mask(*m);
            let Some(k) = frame_masks.iter().position(|&f| f == im) else {
                return Err(Error::GroupStructure(format!(
                    "stab({x}) element does not permute the frames through {x}"
                )));
            };
            images.push(k);
        }
        frame_perms.insert(Perm::from_images(images)?);
    }

    let table_is_s5_x_z2 = if check_table {
        let stab_table = MulTable::from_elements(&elements)?;
        let reference = MulTable::symmetric(5).direct_product(&MulTable::cyclic(2));
        Some(isomorphic(&stab_table, &reference))
    } else {
        None
    };

    Ok(StabReport {
        x,
        order,
        reflection_central,
        restriction_image_order: restricted.len(),
        kernel_ok,
        frame_action_image: frame_perms.len(),
        table_is_s5_x_z2,
    })
}

/// Orbit counts of the induced actions on flats, orthoframes, and
/// intersecting line pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub points: usize,
    pub lines2: usize,
    pub lines3: usize,
    pub lines5: usize,
    pub pi3: usize,
    pub pi5: usize,
    pub pi6: usize,
    pub pi15: usize,
    pub orthoframes: usize,
    /// Orbits on unordered pairs of intersecting 3-point lines, with sizes.
    pub line3_pairs: usize,
    pub line3_pair_sizes: Vec<usize>,
    /// Orbits on unordered pairs of intersecting 5-point lines.
    pub line5_pairs: usize,
}

fn orbit_count_masks(gens: &[Perm], objects: &[u64]) -> (usize, Vec<usize>) {
    let index: HashMap<u64, usize> =
        objects.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..objects.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, &m) in objects.iter().enumerate() {
        for g in gens {
            let j = index[&g.apply_mask(m)];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..objects.len() {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut out: Vec<usize> = sizes.into_values().collect();
    out.sort_unstable();
    (out.len(), out)
}

/// Orbits on unordered pairs of distinct intersecting lines of one size.
fn orbit_count_line_pairs(
    gens: &[Perm],
    flats: &Flats,
    size: usize,
) -> (usize, Vec<usize>) {
    let lines: Vec<u64> = flats.lines_of_size(size).map(|l| l.mask).collect();
    let mut objects = Vec::new();
    for (a, &la) in lines.iter().enumerate() {
        for &lb in &lines[a + 1..] {
            if (la & lb).count_ones() == 1 {
                objects.push((la.min(lb), la.max(lb)));
            }
        }
    }
    let index: HashMap<(u64, u64), usize> =
        objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..objects.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, &(la, lb)) in objects.iter().enumerate() {
        for g in gens {
            let (ia, ib) = (g.apply_mask(la), g.apply_mask(lb));
            let j = index[&(ia.min(ib), ia.max(ib))];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..objects.len() {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut out: Vec<usize> = sizes.into_values().collect();
    out.sort_unstable();
    (out.len(), out)
}

pub fn transitivity_report(
    flats: &Flats,
    ortho: &OrthoData,
    aut: &AutGroup,
) -> TransitivityReport {
    let gens = aut.group.generators();
    let points: Vec<u64> = (0..NPOINTS as u64).map(|i| 1u64 << i).collect();
    let masks_of = |class: FlatClass| -> Vec<u64> {
        flats
            .lines
            .iter()
            .chain(flats.planes.iter())
            .filter(|f| f.class == class)
            .map(|f| f.mask)
            .collect()
    };
    let frames: Vec<u64> = ortho.frames.iter().map(|f| f.mask).collect();
    let (line3_pairs, line3_pair_sizes) = orbit_count_line_pairs(gens, flats, 3);
    let (line5_pairs, _) = orbit_count_line_pairs(gens, flats, 5);
    TransitivityReport {
        points: orbit_count_masks(gens, &points).0,
        lines2: orbit_count_masks(gens, &masks_of(FlatClass::Line2)).0,
        lines3: orbit_count_masks(gens, &masks_of(FlatClass::Line3)).0,
        lines5: orbit_count_masks(gens, &masks_of(FlatClass::Line5)).0,
        pi3: orbit_count_masks(gens, &masks_of(FlatClass::Pi3)).0,
        pi5: orbit_count_masks(gens, &masks_of(FlatClass::Pi5)).0,
        pi6: orbit_count_masks(gens, &masks_of(FlatClass::Pi6)).0,
        pi15: orbit_count_masks(gens, &masks_of(FlatClass::Pi15)).0,
        orthoframes: orbit_count_masks(gens, &frames).0,
        line3_pairs,
        line3_pair_sizes,
        line5_pairs,
    }
}

/// Primitivity of the point action, plus the imprimitivity of the
/// stabilizer's restriction to one orthoplane.
#[derive(Clone, Debug, Serialize)]
pub struct PrimitivityReport {
    pub primitive: bool,
    /// Block sizes admitted by the pencil-counting argument (1 + {0,20} +
    /// {0,12,24}); only those dividing 60 can occur, leaving size 1.
    pub candidate_block_sizes: Vec<usize>,
    pub candidates_dividing_60: Vec<usize>,
    /// The restriction of stab(0) to its orthoplane is imprimitive: the
    /// minimal blocks are the five rank-3 partial frames.
    pub restricted_block_sizes: Vec<usize>,
    pub restricted_blocks_are_frames: bool,
}

pub fn primitivity_report(ortho: &OrthoData, aut: &AutGroup) -> Result<PrimitivityReport> {
    let (primitive, _) = primitivity(NPOINTS, aut.group.generators());

    let mut candidate_block_sizes: Vec<usize> = [0usize, 20]
        .iter()
        .flat_map(|&a| [0usize, 12, 24].iter().map(move |&b| 1 + a + b))
        .collect();
    candidate_block_sizes.sort_unstable();
    let candidates_dividing_60: Vec<usize> = candidate_block_sizes
        .iter()
        .copied()
        .filter(|s| 60 % s == 0)
        .collect();

    // restriction of stab(0) to the 15 points of its orthoplane
    let plane_points = bits::ids(ortho.orthoplane_mask[0]);
    let gens = stabilizer_gens(aut, 0)?;
    let restricted: Vec<Perm> = gens
        .iter()
        .map(|g| g.restrict_to(&plane_points))
        .collect::<Result<_>>()?;
    // pick a pair inside one partial frame: the minimal block through it is
    // that triple
    let triple = ortho.frames[ortho.frames_through[0][0] as usize].mask & !1u64;
    let local: Vec<usize> = bits::ids(triple)
        .iter()
        .map(|p| plane_points.iter().position(|q| q == p).unwrap())
        .collect();
    let sys = minimal_block_system(15, &restricted, local[0], local[1]);
    let restricted_block_sizes = sys.block_sizes();
    // blocks should be exactly the five partial frames, in local labels
    let frame_blocks: BTreeSet<Vec<usize>> = ortho.frames_through[0]
        .iter()
        .map(|&fi| {
            let t = ortho.frames[fi as usize].mask & !1u64;
            bits::ids(t)
                .iter()
                .map(|p| plane_points.iter().position(|q| q == p).unwrap())
                .collect::<Vec<usize>>()
        })
        .collect();
    let got_blocks: BTreeSet<Vec<usize>> = sys.blocks.iter().cloned().collect();
    Ok(PrimitivityReport {
        primitive,
        candidate_block_sizes,
        candidates_dividing_60,
        restricted_block_sizes,
        restricted_blocks_are_frames: got_blocks == frame_blocks,
    })
}

/// A certified non-geometric automorphism and the parity separation of the
/// two cosets.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    /// An automorphism fixing point 0 that is not in the geometric group.
    pub witness: Perm,
    /// It permutes the five frames through 0 oddly.
    pub witness_parity_odd: bool,
    /// Frame parity (after translating into the stabilizer of 0) agrees
    /// with geometric membership on every generator and their pairwise
    /// products: even iff geometric.
    pub parity_kernel_is_geometric: bool,
    /// |Aut| = 2 |Geo| and the witness lies outside, so the two cosets are
    /// Geo and witness·Geo.
    pub coset_ok: bool,
}

/// Parity of the action on the five frames through 0, after composing with
/// a geometric element bringing sigma(0) back to 0. Well defined because
/// geometric stabilizer elements act evenly.
fn frame_parity(
    ortho: &OrthoData,
    geo_orbit: &std::collections::BTreeMap<usize, Perm>,
    sigma: &Perm,
) -> Result<i8> {
    let w = geo_orbit
        .get(&sigma.apply(0))
        .ok_or_else(|| Error::GroupStructure("geometric group not transitive".into()))?;
    let adjusted = w.inverse().compose(sigma);
    debug_assert_eq!(adjusted.apply(0), 0);
    let frame_masks: Vec<u64> = ortho.frames_through[0]
        .iter()
        .map(|&fi| ortho.frames[fi as usize].mask)
        .collect();
    let mut images = Vec::with_capacity(5);
    for m in &frame_masks {
        let im = adjusted.apply_mask(*m);
        let k = frame_masks.iter().position(|&f| f == im).ok_or_else(|| {
            Error::GroupStructure("stabilized element does not permute frames".into())
        })?;
        images.push(k);
    }
    Ok(Perm::from_images(images)?.parity())
}

pub fn nongeometric_witness(
    ortho: &OrthoData,
    aut: &AutGroup,
    geo: &PermGroup,
) -> Result<WitnessReport> {
    let geo_orbit = crate::group::orbit_points(geo.generators(), 0);
    if geo_orbit.len() != NPOINTS {
        return Err(Error::GroupStructure("geometric group not transitive".into()));
    }

    let outside = aut
        .group
        .generators()
        .iter()
        .find(|g| !geo.contains(g))
        .ok_or_else(|| {
            Error::GroupStructure(
                "every automorphism generator is geometric; index-2 coset missing".into(),
            )
        })?;
    // pull the witness into the stabilizer of 0 with a geometric element
    let w = &geo_orbit[&outside.apply(0)];
    let witness = w.inverse().compose(outside);
    if geo.contains(&witness) {
        return Err(Error::GroupStructure("adjusted witness became geometric".into()));
    }

    let witness_parity_odd = frame_parity(ortho, &geo_orbit, &witness)? == -1;

    // parity must separate the cosets: check generators and their pairwise
    // products with the witness
    let mut parity_kernel_is_geometric = true;
    for g in aut.group.generators() {
        let even = frame_parity(ortho, &geo_orbit, g)? == 1;
        if even != geo.contains(g) {
            parity_kernel_is_geometric = false;
        }
        let prod = witness.compose(g);
        let even = frame_parity(ortho, &geo_orbit, &prod)? == 1;
        if even != geo.contains(&prod) {
            parity_kernel_is_geometric = false;
        }
    }
    let sq = witness.compose(&witness);
    if (frame_parity(ortho, &geo_orbit, &sq)? == 1) != geo.contains(&sq) {
        parity_kernel_is_geometric = false;
    }

    let coset_ok = aut.group.order() == 2 * geo.order() && !geo.contains(&witness);
    Ok(WitnessReport { witness, witness_parity_odd, parity_kernel_is_geometric, coset_ok })
}

/// The pencil graph at a point: vertices are the ten 3-point lines through
/// it, edges the pairs spanning a 6-point plane.
#[derive(Clone, Debug, Serialize)]
pub struct PencilReport {
    pub x: usize,
    pub degrees: Vec<usize>,
    pub six_regular: bool,
    pub connected: bool,
    /// The three non-neighbors of each line pair with it into 15-point
    /// planes instead.
    pub complement_pairs_give_pi15: bool,
    /// The 15 pairs of 5-point lines through the point span exactly the 15
    /// 15-point planes containing it.
    pub line5_pairs_give_all_pi15: bool,
}

pub fn pencil_graph(flats: &Flats, x: usize) -> Result<PencilReport> {
    let bit = 1u64 << x;
    let pencil3: Vec<u64> = flats
        .lines_of_size(3)
        .filter(|l| l.mask & bit != 0)
        .map(|l| l.mask)
        .collect();
    if pencil3.len() != 10 {
        return Err(Error::Classification(format!(
            "{} 3-point lines through point {x}, want 10",
            pencil3.len()
        )));
    }
    // the plane spanned by an intersecting pair is the unique plane
    // containing their union
    let span_class = |u: u64| -> Result<FlatClass> {
        flats
            .planes
            .iter()
            .find(|p| u & !p.mask == 0)
            .map(|p| p.class)
            .ok_or_else(|| Error::Classification("line pair spans no plane".into()))
    };
    let mut adj = vec![vec![false; 10]; 10];
    let mut complement_pairs_give_pi15 = true;
    for a in 0..10 {
        for b in (a + 1)..10 {
            match span_class(pencil3[a] | pencil3[b])? {
                FlatClass::Pi6 => {
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
                FlatClass::Pi15 => {}
                other => {
                    return Err(Error::Classification(format!(
                        "3-line pair spans {other:?}"
                    )))
                }
            }
        }
    }
    let degrees: Vec<usize> =
        (0..10).map(|a| (0..10).filter(|&b| adj[a][b]).count()).collect();
    let six_regular = degrees.iter().all(|&d| d == 6);
    for a in 0..10 {
        for b in (a + 1)..10 {
            if !adj[a][b] && span_class(pencil3[a] | pencil3[b])? != FlatClass::Pi15 {
                complement_pairs_give_pi15 = false;
            }
        }
    }
    // connectivity
    let mut seen = vec![false; 10];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for b in 0..10 {
            if adj[a][b] && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    let connected = seen.iter().all(|&s| s);

    // the 5-point-line pencil
    let pencil5: Vec<u64> = flats
        .lines_of_size(5)
        .filter(|l| l.mask & bit != 0)
        .map(|l| l.mask)
        .collect();
    let mut spanned = BTreeSet::new();
    for a in 0..pencil5.len() {
        for b in (a + 1)..pencil5.len() {
            let u = pencil5[a] | pencil5[b];
            let plane = flats
                .planes
                .iter()
                .find(|p| u & !p.mask == 0 && p.class == FlatClass::Pi15)
                .ok_or_else(|| {
                    Error::Classification("5-line pair spans no 15-point plane".into())
                })?;
            spanned.insert(plane.mask);
        }
    }
    let through_x: BTreeSet<u64> = flats
        .planes_of_class(FlatClass::Pi15)
        .filter(|p| p.mask & bit != 0)
        .map(|p| p.mask)
        .collect();
    let line5_pairs_give_all_pi15 = spanned == through_x && spanned.len() == 15;

    Ok(PencilReport {
        x,
        degrees,
        six_regular,
        connected,
        complement_pairs_give_pi15,
        line5_pairs_give_all_pi15,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testworld::world;

    #[test]
    fn stabilizer_of_zero_is_s5_x_z2() {
        let w = world();
        let rep = stabilizer_report(&w.table, &w.ortho, &w.aut, 0, true).unwrap();
        assert_eq!(rep.order, 240);
        assert!(rep.reflection_central);
        assert_eq!(rep.restriction_image_order, 120);
        assert!(rep.kernel_ok);
        assert_eq!(rep.frame_action_image, 120);
        assert_eq!(rep.table_is_s5_x_z2, Some(true));
        // orbit-stabilizer: 60 * 240 = 14,400
        assert_eq!(60 * rep.order, w.aut.group.order());
    }

    #[test]
    fn stabilizer_orders_for_sample_points() {
        let w = world();
        for x in [1, 17, 42, 59] {
            let rep = stabilizer_report(&w.table, &w.ortho, &w.aut, x, false).unwrap();
            assert_eq!(rep.order, 240, "stab({x})");
            assert!(rep.kernel_ok, "stab({x}) kernel");
            assert_eq!(rep.frame_action_image, 120, "stab({x}) frame action");
        }
    }

    #[test]
    fn transitivity_on_all_classes() {
        let w = world();
        let t = transitivity_report(&w.flats, &w.ortho, &w.aut);
        assert_eq!(
            (t.points, t.lines2, t.lines3, t.lines5),
            (1, 1, 1, 1)
        );
        assert_eq!((t.pi3, t.pi5, t.pi6, t.pi15), (1, 1, 1, 1));
        assert_eq!(t.orthoframes, 1);
        assert_eq!(t.line3_pairs, 2);
        assert_eq!(t.line3_pair_sizes, vec![900, 1800]);
        assert_eq!(t.line5_pairs, 1);
    }

    #[test]
    fn primitive_on_points_imprimitive_on_plane() {
        let w = world();
        let rep = primitivity_report(&w.ortho, &w.aut).unwrap();
        assert!(rep.primitive);
        assert_eq!(rep.candidate_block_sizes, vec![1, 13, 21, 25, 33, 45]);
        assert_eq!(rep.candidates_dividing_60, vec![1]);
        assert_eq!(rep.restricted_block_sizes, vec![3, 3, 3, 3, 3]);
        assert!(rep.restricted_blocks_are_frames);
    }

    #[test]
    fn witness_separates_the_cosets() {
        let w = world();
        let rep = nongeometric_witness(&w.ortho, &w.aut, &w.geo).unwrap();
        assert!(!w.geo.contains(&rep.witness));
        assert!(w.aut.group.contains(&rep.witness));
        assert_eq!(rep.witness.apply(0), 0);
        assert!(rep.witness_parity_odd);
        assert!(rep.parity_kernel_is_geometric);
        assert!(rep.coset_ok);
    }

    #[test]
    fn pencil_graphs_are_six_regular_and_connected() {
        let w = world();
        for x in [0, 9, 30, 59] {
            let rep = pencil_graph(&w.flats, x).unwrap();
            assert!(rep.six_regular, "pencil at {x}");
            assert!(rep.connected, "pencil at {x}");
            assert!(rep.complement_pairs_give_pi15, "pencil at {x}");
            assert!(rep.line5_pairs_give_all_pi15, "pencil at {x}");
        }
    }
}
