//! Rebuilding every flat from the 75 orthoframes alone.
//!
//! This module is deliberately firewalled from the rank oracle: its only
//! input is the list of frame masks. The recipe:
//!
//! 1. 15-point planes: union of the five frames through a point, minus it;
//! 2. 2-point lines: the six pairs inside each frame;
//! 3. 3- and 5-point lines: pairwise intersections of 15-point planes;
//! 4. Pi3/Pi5: a 3- or 5-point line inside a plane plus the plane's
//!    orthopoint as apex;
//! 5. Pi6: intersecting 3-point-line pairs lying in no common 15-point
//!    plane, completed through the two cross lines that meet in the sixth
//!    point.

use std::collections::{BTreeMap, BTreeSet};

use crate::bits;
use crate::{Error, Result};

use super::{FlatClass, Flats};

/// Flat masks per class, as rebuilt from the frames.
#[derive(Clone, Debug, Default)]
pub struct ReconstructedFlats {
    pub lines2: BTreeSet<u64>,
    pub lines3: BTreeSet<u64>,
    pub lines5: BTreeSet<u64>,
    pub pi3: BTreeSet<u64>,
    pub pi5: BTreeSet<u64>,
    pub pi6: BTreeSet<u64>,
    pub pi15: BTreeSet<u64>,
}

/// Run the reconstruction on `npoints` ground-set elements from the frame
/// masks only.
pub fn reconstruct_from_orthoframes(
    npoints: usize,
    frames: &[u64],
) -> Result<ReconstructedFlats> {
    let mut out = ReconstructedFlats::default();

    // step 1: orthoplanes, with their orthopoints
    let mut plane_of_point: BTreeMap<usize, u64> = BTreeMap::new();
    for x in 0..npoints {
        let through: Vec<u64> = frames
            .iter()
            .copied()
            .filter(|f| bits::contains(*f, x))
            .collect();
        if through.len() != 5 {
            return Err(Error::Reconstruction(format!(
                "point {x} lies in {} frames, want 5",
                through.len()
            )));
        }
        let union = through.iter().fold(0u64, |m, f| m | f);
        let plane = union & !(1 << x);
        if plane.count_ones() != 15 {
            return Err(Error::Reconstruction(format!(
                "frame union at point {x} has {} points, want 15",
                plane.count_ones()
            )));
        }
        if out.pi15.contains(&plane) {
            return Err(Error::Reconstruction(format!(
                "two points share the 15-point plane {:?}",
                bits::ids(plane)
            )));
        }
        out.pi15.insert(plane);
        plane_of_point.insert(x, plane);
    }

    // step 2: 2-point lines from frame pairs
    for f in frames {
        let ids = bits::ids(*f);
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                out.lines2.insert((1 << i) | (1 << j));
            }
        }
    }
    if out.lines2.len() != frames.len() * 6 {
        return Err(Error::Reconstruction(format!(
            "frame pairs yield {} distinct 2-point lines, want {}",
            out.lines2.len(),
            frames.len() * 6
        )));
    }

    // step 3: longer lines as plane intersections
    let planes: Vec<u64> = out.pi15.iter().copied().collect();
    for (a, pa) in planes.iter().enumerate() {
        for pb in &planes[a + 1..] {
            let m = pa & pb;
            match m.count_ones() {
                2 => {
                    if !out.lines2.contains(&m) {
                        return Err(Error::Reconstruction(format!(
                            "plane intersection {:?} is an unknown pair",
                            bits::ids(m)
                        )));
                    }
                }
                3 => {
                    out.lines3.insert(m);
                }
                5 => {
                    out.lines5.insert(m);
                }
                k => {
                    return Err(Error::Reconstruction(format!(
                        "planes intersect in {k} points: {:?}",
                        bits::ids(m)
                    )))
                }
            }
        }
    }

    // step 4: apex planes
    for (&x, &plane) in &plane_of_point {
        for l in &out.lines3 {
            if l & !plane == 0 {
                out.pi3.insert(l | (1 << x));
            }
        }
        for l in &out.lines5 {
            if l & !plane == 0 {
                out.pi5.insert(l | (1 << x));
            }
        }
    }

    // step 5: six-point planes from intersecting 3-line pairs that span no
    // 15-point plane
    let lines3: Vec<u64> = out.lines3.iter().copied().collect();
    for (a, la) in lines3.iter().enumerate() {
        for lb in &lines3[a + 1..] {
            let common = la & lb;
            if common.count_ones() != 1 {
                continue;
            }
            let union = la | lb;
            if planes.iter().any(|p| union & !p == 0) {
                continue;
            }
            // cross lines: meet both legs away from the common point and
            // carry the sixth point
            let legs = union & !common;
            let mut sixth: Option<usize> = None;
            let mut cross = 0usize;
            for lc in &lines3 {
                if lc == la || lc == lb {
                    continue;
                }
                let hit = lc & legs;
                if (lc & union).count_ones() != 2 || hit & (la & legs) == 0 || hit & (lb & legs) == 0
                {
                    continue;
                }
                let w = lc & !union;
                if w.count_ones() != 1 {
                    return Err(Error::Reconstruction(format!(
                        "cross line {:?} shares two points but no apex",
                        bits::ids(*lc)
                    )));
                }
                let w = w.trailing_zeros() as usize;
                if let Some(prev) = sixth {
                    if prev != w {
                        return Err(Error::Reconstruction(format!(
                            "lines {:?} and {:?} determine two sixth points {prev} and {w}",
                            bits::ids(*la),
                            bits::ids(*lb)
                        )));
                    }
                }
                sixth = Some(w);
                cross += 1;
            }
            let Some(w) = sixth else {
                return Err(Error::Reconstruction(format!(
                    "no sixth point completes lines {:?} and {:?}",
                    bits::ids(*la),
                    bits::ids(*lb)
                )));
            };
            if cross != 2 {
                return Err(Error::Reconstruction(format!(
                    "{cross} cross lines complete lines {:?} and {:?}, want 2",
                    bits::ids(*la),
                    bits::ids(*lb)
                )));
            }
            let plane = union | (1 << w);
            // the quadrilateral carries exactly four 3-point lines
            let internal = lines3.iter().filter(|l| *l & !plane == 0).count();
            if internal != 4 {
                return Err(Error::Reconstruction(format!(
                    "six-point plane {:?} contains {internal} 3-point lines",
                    bits::ids(plane)
                )));
            }
            out.pi6.insert(plane);
        }
    }

    Ok(out)
}

/// Set-for-set comparison against the oracle-enumerated flats.
pub fn reconstruction_matches(flats: &Flats, rec: &ReconstructedFlats) -> bool {
    let oracle_masks = |pred: &dyn Fn(&super::Flat) -> bool| -> BTreeSet<u64> {
        flats
            .lines
            .iter()
            .chain(flats.planes.iter())
            .filter(|f| pred(f))
            .map(|f| f.mask)
            .collect()
    };
    let by_class = |c: FlatClass| oracle_masks(&move |f: &super::Flat| f.class == c);
    rec.lines2 == by_class(FlatClass::Line2)
        && rec.lines3 == by_class(FlatClass::Line3)
        && rec.lines5 == by_class(FlatClass::Line5)
        && rec.pi3 == by_class(FlatClass::Pi3)
        && rec.pi5 == by_class(FlatClass::Pi5)
        && rec.pi6 == by_class(FlatClass::Pi6)
        && rec.pi15 == by_class(FlatClass::Pi15)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{enumerate_flats, enumerate_orthoframes};
    use crate::roots::PointTable;
    use crate::Rat;

    #[test]
    fn reconstruction_equals_oracle_enumeration() {
        let table = PointTable::<Rat>::load_h4().unwrap();
        let flats = enumerate_flats(&table).unwrap();
        let ortho = enumerate_orthoframes(&table, &flats).unwrap();
        let frames: Vec<u64> = ortho.frames.iter().map(|f| f.mask).collect();
        let rec = reconstruct_from_orthoframes(60, &frames).unwrap();
        assert_eq!(rec.pi15.len(), 60);
        assert_eq!(rec.lines2.len(), 450);
        assert_eq!(rec.lines3.len(), 200);
        assert_eq!(rec.lines5.len(), 72);
        assert_eq!(rec.pi3.len(), 600);
        assert_eq!(rec.pi5.len(), 360);
        assert_eq!(rec.pi6.len(), 300);
        assert!(reconstruction_matches(&flats, &rec));
    }

    #[test]
    fn damaged_frames_are_rejected() {
        let table = PointTable::<Rat>::load_h4().unwrap();
        let flats = enumerate_flats(&table).unwrap();
        let ortho = enumerate_orthoframes(&table, &flats).unwrap();
        let mut frames: Vec<u64> = ortho.frames.iter().map(|f| f.mask).collect();
        frames.pop();
        assert!(reconstruct_from_orthoframes(60, &frames).is_err());
    }
}
