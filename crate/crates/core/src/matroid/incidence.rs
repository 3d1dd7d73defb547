//! Flat incidence counts, the covering partitions, and 15-point-plane
//! intersections. All counts are verified to be uniform over every flat of a
//! kind; any deviation is reported with the offending flat.

use serde::Serialize;

use crate::bits;
use crate::gfield::GoldenScalar;
use crate::roots::{PointTable, NPOINTS};
use crate::{Error, Result};

use super::{plane_apex, Flat, FlatClass, Flats, RankOracle};

/// How many flats of each kind contain a given point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointIncidence {
    pub lines2: usize,
    pub lines3: usize,
    pub lines5: usize,
    /// Pi3 planes with this point as apex.
    pub pi3_apex: usize,
    /// Pi5 planes with this point as apex.
    pub pi5_apex: usize,
    /// All Pi3 planes containing the point, apex or not.
    pub pi3_total: usize,
    /// All Pi5 planes containing the point, apex or not.
    pub pi5_total: usize,
    pub pi6: usize,
    pub pi15: usize,
}

/// How many planes of each class contain a given line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LineIncidence {
    pub pi3: usize,
    pub pi5: usize,
    pub pi6: usize,
    pub pi15: usize,
}

/// The full incidence table, uniform across all flats of each kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceTable {
    pub point: PointIncidence,
    pub line2: LineIncidence,
    pub line3: LineIncidence,
    pub line5: LineIncidence,
}

impl IncidenceTable {
    /// The classical incidence numbers for `M(H4)`. The apex-only counts are
    /// 10 and 6; total point-plane incidences follow by double counting
    /// (600·4/60 = 40 and 360·6/60 = 36).
    pub const EXPECTED: IncidenceTable = IncidenceTable {
        point: PointIncidence {
            lines2: 15,
            lines3: 10,
            lines5: 6,
            pi3_apex: 10,
            pi5_apex: 6,
            pi3_total: 40,
            pi5_total: 36,
            pi6: 30,
            pi15: 15,
        },
        line2: LineIncidence { pi3: 4, pi5: 4, pi6: 2, pi15: 2 },
        line3: LineIncidence { pi3: 3, pi5: 0, pi6: 6, pi15: 3 },
        line5: LineIncidence { pi3: 0, pi5: 5, pi6: 0, pi15: 5 },
    };
}

fn point_incidence(flats: &Flats, apexes: &[Option<usize>], x: usize) -> PointIncidence {
    let bit = 1u64 << x;
    let mut inc = PointIncidence {
        lines2: 0,
        lines3: 0,
        lines5: 0,
        pi3_apex: 0,
        pi5_apex: 0,
        pi3_total: 0,
        pi5_total: 0,
        pi6: 0,
        pi15: 0,
    };
    for l in &flats.lines {
        if l.mask & bit != 0 {
            match l.size() {
                2 => inc.lines2 += 1,
                3 => inc.lines3 += 1,
                _ => inc.lines5 += 1,
            }
        }
    }
    for (p, apex) in flats.planes.iter().zip(apexes) {
        if p.mask & bit == 0 {
            continue;
        }
        match p.class {
            FlatClass::Pi3 => {
                inc.pi3_total += 1;
                if *apex == Some(x) {
                    inc.pi3_apex += 1;
                }
            }
            FlatClass::Pi5 => {
                inc.pi5_total += 1;
                if *apex == Some(x) {
                    inc.pi5_apex += 1;
                }
            }
            FlatClass::Pi6 => inc.pi6 += 1,
            FlatClass::Pi15 => inc.pi15 += 1,
            _ => unreachable!(),
        }
    }
    inc
}

fn line_incidence(flats: &Flats, line: &Flat) -> LineIncidence {
    let mut inc = LineIncidence { pi3: 0, pi5: 0, pi6: 0, pi15: 0 };
    for p in &flats.planes {
        if line.mask & !p.mask != 0 {
            continue;
        }
        match p.class {
            FlatClass::Pi3 => inc.pi3 += 1,
            FlatClass::Pi5 => inc.pi5 += 1,
            FlatClass::Pi6 => inc.pi6 += 1,
            FlatClass::Pi15 => inc.pi15 += 1,
            _ => unreachable!(),
        }
    }
    inc
}

/// Compute the incidence table, verifying uniformity over every point and
/// every line. A non-uniform flat is an error, not a warning.
pub fn incidence_table(flats: &Flats) -> Result<IncidenceTable> {
    let apexes: Vec<Option<usize>> =
        flats.planes.iter().map(|p| plane_apex(flats, p)).collect();

    let point = point_incidence(flats, &apexes, 0);
    for x in 1..NPOINTS {
        let other = point_incidence(flats, &apexes, x);
        if other != point {
            return Err(Error::Classification(format!(
                "point {x} has incidence {other:?}, point 0 has {point:?}"
            )));
        }
    }

    let mut rows = [None, None, None];
    for line in &flats.lines {
        let slot = match line.size() {
            2 => 0,
            3 => 1,
            _ => 2,
        };
        let inc = line_incidence(flats, line);
        match rows[slot] {
            None => rows[slot] = Some(inc),
            Some(prev) if prev != inc => {
                return Err(Error::Classification(format!(
                    "line {:?} has incidence {inc:?}, expected {prev:?}",
                    line.ids()
                )))
            }
            _ => {}
        }
    }
    Ok(IncidenceTable {
        point,
        line2: rows[0].expect("2-point lines exist"),
        line3: rows[1].expect("3-point lines exist"),
        line5: rows[2].expect("5-point lines exist"),
    })
}

/// Covering partition of one flat (a point or a line): the covers minus the
/// flat must tile the rest of the ground set exactly once.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringReport {
    pub flat_size: usize,
    /// Points of `E - F`, always `60 - flat_size`.
    pub residual: usize,
    /// Cover count per class, ordered as the class enum.
    pub parts: Vec<(FlatClass, usize)>,
    pub ok: bool,
}

/// Check the covering partition for a point (`rank 1`) or a line (`rank 2`).
pub fn check_flat_covering(flats: &Flats, mask: u64, rank: u8) -> Result<CoveringReport> {
    let covers: Vec<&Flat> = match rank {
        1 => flats.lines.iter().filter(|l| l.mask & mask == mask).collect(),
        2 => flats.planes.iter().filter(|p| p.mask & mask == mask).collect(),
        _ => {
            return Err(Error::Classification(
                "covering check applies to points and lines".into(),
            ))
        }
    };
    let full = (1u64 << NPOINTS) - 1;
    let mut seen = 0u64;
    let mut ok = true;
    let mut parts: Vec<(FlatClass, usize)> = Vec::new();
    for c in &covers {
        let extra = c.mask & !mask;
        if seen & extra != 0 {
            ok = false;
        }
        seen |= extra;
        match parts.iter_mut().find(|(cls, _)| *cls == c.class) {
            Some((_, n)) => *n += 1,
            None => parts.push((c.class, 1)),
        }
    }
    if seen != full & !mask {
        ok = false;
    }
    parts.sort_by_key(|(cls, _)| *cls);
    Ok(CoveringReport {
        flat_size: mask.count_ones() as usize,
        residual: (full & !mask).count_ones() as usize,
        parts,
        ok,
    })
}

/// Aggregate covering verdict over every point and every line.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoveringSummary {
    pub points_checked: usize,
    /// Residual point count for a point, always 59 (= 15·1 + 10·2 + 6·4).
    pub point_residual: usize,
    pub lines_checked: usize,
    /// Residuals by line size: 58, 57, 55.
    pub line_residuals: [usize; 3],
}

pub fn verify_all_coverings(flats: &Flats) -> Result<CoveringSummary> {
    let mut point_residual = 0;
    for x in 0..NPOINTS {
        let rep = check_flat_covering(flats, 1u64 << x, 1)?;
        if !rep.ok {
            return Err(Error::Classification(format!(
                "covers of point {x} do not partition the rest"
            )));
        }
        point_residual = rep.residual;
    }
    let mut line_residuals = [0usize; 3];
    for line in &flats.lines {
        let rep = check_flat_covering(flats, line.mask, 2)?;
        if !rep.ok {
            return Err(Error::Classification(format!(
                "covers of line {:?} do not partition the rest",
                line.ids()
            )));
        }
        let slot = match line.size() {
            2 => 0,
            3 => 1,
            _ => 2,
        };
        line_residuals[slot] = rep.residual;
    }
    Ok(CoveringSummary {
        points_checked: NPOINTS,
        point_residual,
        lines_checked: flats.lines.len(),
        line_residuals,
    })
}

/// Pairwise intersection structure of the 15-point planes.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Pi15Meets {
    pub pairs: usize,
    /// Every pairwise intersection is a rank-2 flat (no pair is disjoint).
    pub all_rank2: bool,
    /// For each fixed plane, how many of the other 59 meet it in a 5-, 3-,
    /// 2-point line. Uniform over all planes.
    pub profile: (usize, usize, usize),
}

pub fn pi15_pairwise_intersections<R: GoldenScalar>(
    table: &PointTable<R>,
    flats: &Flats,
) -> Result<Pi15Meets> {
    let oracle = RankOracle::new(table);
    let planes: Vec<&Flat> = flats.planes_of_class(FlatClass::Pi15).collect();
    let mut profile: Option<(usize, usize, usize)> = None;
    let mut pairs = 0;
    for (a, pa) in planes.iter().enumerate() {
        let mut meets = (0usize, 0usize, 0usize);
        for (b, pb) in planes.iter().enumerate() {
            if a == b {
                continue;
            }
            if b > a {
                pairs += 1;
            }
            let m = pa.mask & pb.mask;
            if flats.line_idx_of_mask(m).is_none() || oracle.rank_mask(m) != 2 {
                return Err(Error::Classification(format!(
                    "15-point planes {:?} and {:?} meet in non-line {:?}",
                    bits::ids(pa.mask),
                    bits::ids(pb.mask),
                    bits::ids(m)
                )));
            }
            match m.count_ones() {
                5 => meets.0 += 1,
                3 => meets.1 += 1,
                2 => meets.2 += 1,
                _ => unreachable!("lookup certified a line"),
            }
        }
        match profile {
            None => profile = Some(meets),
            Some(p) if p != meets => {
                return Err(Error::Classification(format!(
                    "plane {:?} meet profile {meets:?} differs from {p:?}",
                    bits::ids(pa.mask)
                )))
            }
            _ => {}
        }
    }
    Ok(Pi15Meets {
        pairs,
        all_rank2: true,
        profile: profile.expect("15-point planes exist"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::enumerate_flats;
    use crate::Rat;

    fn setup() -> (PointTable<Rat>, Flats) {
        let table = PointTable::load_h4().unwrap();
        let flats = enumerate_flats(&table).unwrap();
        (table, flats)
    }

    #[test]
    fn incidence_matches_expected() {
        let (_, flats) = setup();
        let t = incidence_table(&flats).unwrap();
        assert_eq!(t, IncidenceTable::EXPECTED);
        // double-counting ties the totals to the census: 600·4/60 and 360·6/60
        assert_eq!(t.point.pi3_total, 600 * 4 / 60);
        assert_eq!(t.point.pi5_total, 360 * 6 / 60);
    }

    #[test]
    fn point_covering_partitions_59() {
        let (_, flats) = setup();
        let rep = check_flat_covering(&flats, 1 << 17, 1).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.residual, 59);
        // 15 two-point, 10 three-point, 6 five-point covers
        assert_eq!(
            rep.parts,
            vec![(FlatClass::Line2, 15), (FlatClass::Line3, 10), (FlatClass::Line5, 6)]
        );
    }

    #[test]
    fn line_coverings() {
        let (_, flats) = setup();
        let summary = verify_all_coverings(&flats).unwrap();
        assert_eq!(summary.point_residual, 59);
        assert_eq!(summary.line_residuals, [58, 57, 55]);
        // spot-check class profiles of one line of each size
        for (size, expect) in [
            (2, vec![(FlatClass::Pi3, 4), (FlatClass::Pi5, 4), (FlatClass::Pi6, 2), (FlatClass::Pi15, 2)]),
            (3, vec![(FlatClass::Pi3, 3), (FlatClass::Pi6, 6), (FlatClass::Pi15, 3)]),
            (5, vec![(FlatClass::Pi5, 5), (FlatClass::Pi15, 5)]),
        ] {
            let line = flats.lines_of_size(size).next().unwrap();
            let rep = check_flat_covering(&flats, line.mask, 2).unwrap();
            assert!(rep.ok);
            assert_eq!(rep.parts, expect, "size {size}");
        }
    }

    #[test]
    fn pi15_meets() {
        let (table, flats) = setup();
        let meets = pi15_pairwise_intersections(&table, &flats).unwrap();
        assert_eq!(meets.pairs, 60 * 59 / 2);
        assert!(meets.all_rank2);
        assert_eq!(meets.profile, (24, 20, 15));
    }
}
