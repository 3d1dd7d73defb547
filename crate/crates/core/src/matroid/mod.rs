//! The matroid `M(H4)`: rank oracle, flats, and their combinatorics.
//!
//! Flats are stored as `u64` point masks. Lines (rank 2) have 2, 3 or 5
//! points; planes (rank 3) fall into exactly four structural classes. Any
//! rank-3 flat that fails to classify is a hard error - a fifth plane type
//! would mean the ground set was transcribed wrong.

mod incidence;
mod ortho;
mod recon;

pub use incidence::{
    check_flat_covering, incidence_table, pi15_pairwise_intersections, verify_all_coverings,
    CoveringReport, CoveringSummary, IncidenceTable, LineIncidence, Pi15Meets, PointIncidence,
};
pub use ortho::{
    enumerate_orthoframes, pi15_as_h3, scan_bases, BasisScan, H3Restriction, OrthoData,
    Orthoframe,
};
pub use recon::{reconstruct_from_orthoframes, reconstruction_matches, ReconstructedFlats};

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bits;
use crate::gfield::{GoldenNumber, GoldenScalar};
use crate::roots::{PointTable, NPOINTS};
use crate::{Error, Result};

/// Exact Gaussian elimination over the golden field, specialised to 4 rows.
/// Rows are kept in echelon form with leading coefficient 1; the pivot is
/// always the first nonzero entry, so results are deterministic.
#[derive(Clone)]
struct Eliminator<R: GoldenScalar> {
    rows: Vec<[GoldenNumber<R>; 4]>,
}

impl<R: GoldenScalar> Eliminator<R> {
    fn new() -> Self {
        Eliminator { rows: Vec::with_capacity(4) }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn lead(row: &[GoldenNumber<R>; 4]) -> usize {
        row.iter().position(|c| !c.is_zero()).expect("echelon row is nonzero")
    }

    fn reduce(&self, mut v: [GoldenNumber<R>; 4]) -> [GoldenNumber<R>; 4] {
        for row in &self.rows {
            let l = Self::lead(row);
            if !v[l].is_zero() {
                let f = v[l].clone();
                for k in l..4 {
                    v[k] = &v[k] - &(&f * &row[k]);
                }
            }
        }
        v
    }

    fn is_dependent(&self, v: &[GoldenNumber<R>; 4]) -> bool {
        self.reduce(v.clone()).iter().all(|c| c.is_zero())
    }

    /// Insert a vector; returns true when it was independent of the rows.
    fn insert(&mut self, v: &[GoldenNumber<R>; 4]) -> bool {
        let r = self.reduce(v.clone());
        let Some(l) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[l].inverse().expect("leading entry nonzero");
        let mut norm: [GoldenNumber<R>; 4] = std::array::from_fn(|_| GoldenNumber::zero());
        for k in l..4 {
            norm[k] = &r[k] * &inv;
        }
        norm[l] = GoldenNumber::one();
        let pos = self.rows.iter().position(|row| Self::lead(row) > l);
        match pos {
            Some(p) => self.rows.insert(p, norm),
            None => self.rows.push(norm),
        }
        true
    }
}

/// Rank and closure queries against a fixed point table.
pub struct RankOracle<'a, R: GoldenScalar> {
    table: &'a PointTable<R>,
}

impl<'a, R: GoldenScalar> RankOracle<'a, R> {
    pub fn new(table: &'a PointTable<R>) -> Self {
        RankOracle { table }
    }

    /// Rank of a set of point ids; the empty set has rank 0.
    pub fn rank_ids(&self, ids: &[usize]) -> Result<usize> {
        for &i in ids {
            if i >= self.table.len() {
                return Err(Error::PointOutOfRange(i));
            }
        }
        Ok(self.rank_mask(bits::from_ids(ids.iter().copied())))
    }

    pub fn rank_mask(&self, mask: u64) -> usize {
        let mut elim = Eliminator::new();
        for i in bits::iter(mask) {
            elim.insert(self.table.coords(i));
            if elim.rank() == 4 {
                return 4;
            }
        }
        elim.rank()
    }

    /// Closure (all points whose addition keeps the rank) and its rank.
    pub fn closure_mask(&self, mask: u64) -> (u64, usize) {
        let mut elim = Eliminator::new();
        for i in bits::iter(mask) {
            elim.insert(self.table.coords(i));
        }
        let rank = elim.rank();
        if rank == 4 {
            return ((1u64 << self.table.len()) - 1, 4);
        }
        let mut out = mask;
        for i in 0..self.table.len() {
            if !bits::contains(mask, i) && elim.is_dependent(self.table.coords(i)) {
                out |= 1u64 << i;
            }
        }
        (out, rank)
    }

    pub fn closure_ids(&self, ids: &[usize]) -> Result<(u64, usize)> {
        for &i in ids {
            if i >= self.table.len() {
                return Err(Error::PointOutOfRange(i));
            }
        }
        Ok(self.closure_mask(bits::from_ids(ids.iter().copied())))
    }
}

/// Structural class of a flat.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlatClass {
    Line2,
    Line3,
    Line5,
    Pi3,
    Pi5,
    Pi6,
    Pi15,
}

impl FlatClass {
    pub fn name(self) -> &'static str {
        match self {
            FlatClass::Line2 => "2-point line",
            FlatClass::Line3 => "3-point line",
            FlatClass::Line5 => "5-point line",
            FlatClass::Pi3 => "Pi3",
            FlatClass::Pi5 => "Pi5",
            FlatClass::Pi6 => "Pi6",
            FlatClass::Pi15 => "Pi15",
        }
    }
}

/// A closed set: point mask, rank, structural class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub mask: u64,
    pub rank: u8,
    pub class: FlatClass,
}

impl Flat {
    pub fn ids(&self) -> Vec<usize> {
        bits::ids(self.mask)
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }
}

/// Flat counts per class (the census table).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub points: usize,
    pub lines2: usize,
    pub lines3: usize,
    pub lines5: usize,
    pub pi3: usize,
    pub pi5: usize,
    pub pi6: usize,
    pub pi15: usize,
}

impl Census {
    /// The classical counts for `M(H4)`.
    pub const EXPECTED: Census = Census {
        points: 60,
        lines2: 450,
        lines3: 200,
        lines5: 72,
        pi3: 600,
        pi5: 360,
        pi6: 300,
        pi15: 60,
    };
}

/// Every rank-2 and rank-3 flat of the matroid, with per-pair line lookup.
#[derive(Debug)]
pub struct Flats {
    /// All lines, sorted by mask.
    pub lines: Vec<Flat>,
    /// All planes, sorted by mask.
    pub planes: Vec<Flat>,
    line_through: Vec<u16>,
    line_index: HashMap<u64, u16>,
    plane_index: HashMap<u64, u16>,
}

impl Flats {
    /// Index (into `lines`) of the unique line through two distinct points.
    pub fn line_through(&self, i: usize, j: usize) -> u16 {
        debug_assert_ne!(i, j);
        self.line_through[i * NPOINTS + j]
    }

    pub fn line(&self, idx: u16) -> &Flat {
        &self.lines[idx as usize]
    }

    pub fn plane(&self, idx: u16) -> &Flat {
        &self.planes[idx as usize]
    }

    pub fn line_idx_of_mask(&self, mask: u64) -> Option<u16> {
        self.line_index.get(&mask).copied()
    }

    pub fn plane_idx_of_mask(&self, mask: u64) -> Option<u16> {
        self.plane_index.get(&mask).copied()
    }

    pub fn lines_of_size(&self, size: usize) -> impl Iterator<Item = &Flat> {
        self.lines.iter().filter(move |f| f.size() == size)
    }

    pub fn planes_of_class(&self, class: FlatClass) -> impl Iterator<Item = &Flat> {
        self.planes.iter().filter(move |f| f.class == class)
    }

    /// Distinct internal lines of a point set (indices into `lines`).
    pub fn internal_lines(&self, mask: u64) -> Vec<u16> {
        let ids = bits::ids(mask);
        let mut seen = Vec::new();
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                let li = self.line_through(i, j);
                if !seen.contains(&li) {
                    seen.push(li);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    pub fn census(&self) -> Census {
        let count_l = |s| self.lines_of_size(s).count();
        let count_p = |c| self.planes_of_class(c).count();
        Census {
            points: NPOINTS,
            lines2: count_l(2),
            lines3: count_l(3),
            lines5: count_l(5),
            pi3: count_p(FlatClass::Pi3),
            pi5: count_p(FlatClass::Pi5),
            pi6: count_p(FlatClass::Pi6),
            pi15: count_p(FlatClass::Pi15),
        }
    }
}

/// Enumerate every line (closures of pairs) and every plane (closures of a
/// line plus an external point), classify the planes, and index everything.
pub fn enumerate_flats<R: GoldenScalar>(table: &PointTable<R>) -> Result<Flats> {
    let n = table.len();
    let oracle = RankOracle::new(table);

    // Lines: closure of each pair, deduplicated through the pair table.
    let mut line_through = vec![u16::MAX; n * n];
    let mut lines: Vec<Flat> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if line_through[i * n + j] != u16::MAX {
                continue;
            }
            let (mask, rank) = oracle.closure_mask((1 << i) | (1 << j));
            debug_assert_eq!(rank, 2);
            let size = mask.count_ones() as usize;
            let class = match size {
                2 => FlatClass::Line2,
                3 => FlatClass::Line3,
                5 => FlatClass::Line5,
                _ => {
                    return Err(Error::Classification(format!(
                        "line {:?} has {} points",
                        bits::ids(mask),
                        size
                    )))
                }
            };
            let idx = lines.len() as u16;
            let ids = bits::ids(mask);
            for (a, &p) in ids.iter().enumerate() {
                for &q in &ids[a + 1..] {
                    line_through[p * n + q] = idx;
                    line_through[q * n + p] = idx;
                }
            }
            lines.push(Flat { mask, rank: 2, class });
        }
    }

    // Planes: closure of (line, external point). Each plane is computed only
    // once; after it is found, every (internal line, internal point) pair
    // that would regenerate it is marked as seen.
    let mut seen: HashSet<(u16, usize)> = HashSet::new();
    let mut planes: Vec<Flat> = Vec::new();
    for li in 0..lines.len() as u16 {
        let lmask = lines[li as usize].mask;
        for k in 0..n {
            if bits::contains(lmask, k) || seen.contains(&(li, k)) {
                continue;
            }
            let (mask, rank) = oracle.closure_mask(lmask | (1 << k));
            debug_assert_eq!(rank, 3);
            let flat = classify_plane(mask, &lines, &line_through, n)?;
            for lj in flat_internal_lines(mask, &line_through, n) {
                let ljmask = lines[lj as usize].mask;
                for p in bits::iter(mask & !ljmask) {
                    seen.insert((lj, p));
                }
            }
            planes.push(flat);
        }
    }

    lines.sort_by_key(|f| f.mask);
    planes.sort_by_key(|f| f.mask);
    // Re-derive the pair table after sorting so indices stay valid.
    let mut line_index = HashMap::with_capacity(lines.len());
    let mut plane_index = HashMap::with_capacity(planes.len());
    let mut line_through = vec![u16::MAX; n * n];
    for (idx, f) in lines.iter().enumerate() {
        line_index.insert(f.mask, idx as u16);
        let ids = bits::ids(f.mask);
        for (a, &p) in ids.iter().enumerate() {
            for &q in &ids[a + 1..] {
                line_through[p * n + q] = idx as u16;
                line_through[q * n + p] = idx as u16;
            }
        }
    }
    for (idx, f) in planes.iter().enumerate() {
        plane_index.insert(f.mask, idx as u16);
    }

    let flats = Flats { lines, planes, line_through, line_index, plane_index };
    debug_assert!(flats
        .line_through
        .iter()
        .enumerate()
        .all(|(k, &v)| v != u16::MAX || k / n == k % n));
    Ok(flats)
}

fn flat_internal_lines(mask: u64, line_through: &[u16], n: usize) -> Vec<u16> {
    let ids = bits::ids(mask);
    let mut seen = Vec::new();
    for (a, &i) in ids.iter().enumerate() {
        for &j in &ids[a + 1..] {
            let li = line_through[i * n + j];
            if !seen.contains(&li) {
                seen.push(li);
            }
        }
    }
    seen
}

/// Structural classification of a rank-3 flat by its internal line census.
fn classify_plane(
    mask: u64,
    lines: &[Flat],
    line_through: &[u16],
    n: usize,
) -> Result<Flat> {
    let size = mask.count_ones() as usize;
    let internal = flat_internal_lines(mask, line_through, n);
    let mut by_size = [0usize; 6];
    for &li in &internal {
        by_size[lines[li as usize].size().min(5)] += 1;
    }
    let (l2, l3, l5) = (by_size[2], by_size[3], by_size[5]);
    let class = match (size, l2, l3, l5) {
        (4, 3, 1, 0) => FlatClass::Pi3,
        (6, 5, 0, 1) => FlatClass::Pi5,
        (6, 3, 4, 0) => FlatClass::Pi6,
        (15, 15, 10, 6) => FlatClass::Pi15,
        _ => {
            return Err(Error::Classification(format!(
                "rank-3 flat {:?} has {} points and line census (2:{l2}, 3:{l3}, 5:{l5})",
                bits::ids(mask),
                size
            )))
        }
    };
    Ok(Flat { mask, rank: 3, class })
}

/// Apex of a `Pi3`/`Pi5` plane: the point off its long internal line.
pub fn plane_apex(flats: &Flats, plane: &Flat) -> Option<usize> {
    let want = match plane.class {
        FlatClass::Pi3 => 3,
        FlatClass::Pi5 => 5,
        _ => return None,
    };
    let long = flats
        .internal_lines(plane.mask)
        .into_iter()
        .map(|li| flats.line(li))
        .find(|l| l.size() == want)?;
    let rest = plane.mask & !long.mask;
    debug_assert_eq!(rest.count_ones(), 1);
    Some(rest.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn setup() -> (PointTable<Rat>, Flats) {
        let table = PointTable::load_h4().unwrap();
        let flats = enumerate_flats(&table).unwrap();
        (table, flats)
    }

    #[test]
    fn rank_examples() {
        let table = PointTable::<Rat>::load_h4().unwrap();
        let oracle = RankOracle::new(&table);
        assert_eq!(oracle.rank_ids(&[]).unwrap(), 0);
        assert_eq!(oracle.rank_ids(&[0, 1, 2, 3]).unwrap(), 4);
        // 2*[1,0,0,0] - [1,1,1,1] = [1,-1,-1,-1]: columns 0, 4, 11
        assert_eq!(oracle.rank_ids(&[0, 4, 11]).unwrap(), 2);
        assert!(matches!(
            oracle.rank_ids(&[0, 99]),
            Err(Error::PointOutOfRange(99))
        ));
    }

    #[test]
    fn rank_matches_independent_oracle_on_small_sets() {
        // Independent check of the eliminator: rank via brute-force search
        // for a maximal independent subset using 4x4 determinants.
        let table = PointTable::<Rat>::load_h4().unwrap();
        let oracle = RankOracle::new(&table);
        let det_rank = |ids: &[usize]| -> usize {
            // all subsets, Laplace-free: test independence by eliminations
            // of a *different* pivot order (last nonzero instead of first)
            let mut best = 0;
            for sub in 0u32..(1 << ids.len()) {
                let chosen: Vec<usize> = (0..ids.len())
                    .filter(|&k| sub & (1 << k) != 0)
                    .map(|k| ids[k])
                    .collect();
                if chosen.len() <= best || chosen.len() > 4 {
                    continue;
                }
                let mut rows: Vec<[crate::Golden; 4]> =
                    chosen.iter().map(|&i| table.coords(i).clone()).collect();
                // elimination with pivot = last nonzero coordinate
                let mut ok = true;
                for r in 0..rows.len() {
                    let piv = (0..4).rev().find(|&c| !rows[r][c].is_zero());
                    let Some(piv) = piv else {
                        ok = false;
                        break;
                    };
                    for s in (r + 1)..rows.len() {
                        if !rows[s][piv].is_zero() {
                            let f = &rows[s][piv] / &rows[r][piv];
                            for c in 0..4 {
                                rows[s][c] = &rows[s][c] - &(&f * &rows[r][c]);
                            }
                        }
                    }
                }
                if ok && rows.iter().all(|row| row.iter().any(|c| !c.is_zero())) {
                    best = chosen.len();
                }
            }
            best
        };
        for ids in [
            vec![0, 4, 11],
            vec![0, 1, 2, 3],
            vec![12, 13, 14, 15],
            vec![5, 17, 29, 41, 53],
            vec![0, 4, 11, 20, 33],
        ] {
            assert_eq!(
                oracle.rank_ids(&ids).unwrap(),
                det_rank(&ids),
                "rank mismatch on {ids:?}"
            );
        }
    }

    #[test]
    fn closure_examples() {
        let (table, flats) = setup();
        let oracle = RankOracle::new(&table);
        // singleton: no parallel points
        let (m, r) = oracle.closure_ids(&[7]).unwrap();
        assert_eq!((m, r), (1 << 7, 1));
        // {e1, e2} spans a 2-point line; oracle = scan for rank-2 members
        let (m, r) = oracle.closure_ids(&[0, 1]).unwrap();
        assert_eq!(r, 2);
        let scan: u64 = (0..60)
            .filter(|&k| oracle.rank_ids(&[0, 1, k]).unwrap() == 2)
            .fold(0, |acc, k| acc | (1 << k));
        assert_eq!(m, scan);
        assert_eq!(m, 0b11);
        // the x3=x4 quadrilateral: columns {a..f} = {0,1,8,11,7,4}
        let (m, r) = oracle.closure_ids(&[0, 1, 8]).unwrap();
        assert_eq!(r, 3);
        assert_eq!(m, bits::from_ids([0, 1, 4, 7, 8, 11]));
        let idx = flats.plane_idx_of_mask(m).unwrap();
        assert_eq!(flats.plane(idx).class, FlatClass::Pi6);
    }

    #[test]
    fn census_matches_expected() {
        let (_, flats) = setup();
        assert_eq!(flats.census(), Census::EXPECTED);
    }

    #[test]
    fn line_double_counting() {
        let (_, flats) = setup();
        let c = flats.census();
        // every one of the C(60,2) pairs lies on exactly one line
        assert_eq!(c.lines2 * 1 + c.lines3 * 3 + c.lines5 * 10, 60 * 59 / 2);
    }

    #[test]
    fn planes_cover_all_collinear_triples() {
        let (_, flats) = setup();
        // every plane's point set closes to itself: closure = flat
        let table = PointTable::<Rat>::load_h4().unwrap();
        let oracle = RankOracle::new(&table);
        for f in flats.planes.iter().take(40) {
            let (m, r) = oracle.closure_mask(f.mask);
            assert_eq!((m, r), (f.mask, 3));
        }
        for f in flats.lines.iter().take(40) {
            let (m, r) = oracle.closure_mask(f.mask);
            assert_eq!((m, r), (f.mask, 2));
        }
    }

    #[test]
    fn apexes() {
        let (_, flats) = setup();
        for f in &flats.planes {
            match f.class {
                FlatClass::Pi3 | FlatClass::Pi5 => {
                    let apex = plane_apex(&flats, f).unwrap();
                    assert!(bits::contains(f.mask, apex));
                }
                _ => assert!(plane_apex(&flats, f).is_none()),
            }
        }
    }
}
