//! The ground set: 60 sign-canonical root columns of the H4 root system.
//!
//! The full root system has 120 vectors in 60 antipodal pairs; each pair is
//! one matroid point. Point ids 0..59 follow the column order of the defining
//! 4x60 matrix (five blocks of twelve), so exported data can be read against
//! the source coordinates directly. Coordinates are kept verbatim - mixed
//! norms and all - because the matroid only sees lines through the origin.

use std::collections::HashMap;

use num_traits::Zero;

use crate::gfield::{GoldenNumber, GoldenScalar};
use crate::{Error, Result};

/// Number of ground-set points.
pub const NPOINTS: usize = 60;

/// Entry codes for the defining matrix: 0, ±1, ±τ, ±τ².
const T: i8 = 2;
const S: i8 = 3;

/// The 60 columns, block by block. Blocks 2-5 carry their zero in rows
/// 1,2,3,4 respectively and run through the sign patterns of (τ, τ², 1).
#[rustfmt::skip]
const H_COLUMNS: [[i8; 4]; NPOINTS] = [
    // block 1: standard basis and (1, ±1, ±1, ±1)
    [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
    [1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1], [1, 1, -1, -1],
    [1, -1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, -1, -1, -1],
    // block 2: zero first coordinate
    [0, T, S, 1], [0, T, S, -1], [0, T, -S, 1], [0, T, -S, -1],
    [0, S, 1, T], [0, S, 1, -T], [0, S, -1, T], [0, S, -1, -T],
    [0, 1, T, S], [0, 1, T, -S], [0, 1, -T, S], [0, 1, -T, -S],
    // block 3: zero second coordinate
    [T, 0, 1, S], [T, 0, 1, -S], [T, 0, -1, S], [T, 0, -1, -S],
    [S, 0, T, 1], [S, 0, T, -1], [S, 0, -T, 1], [S, 0, -T, -1],
    [1, 0, S, T], [1, 0, S, -T], [1, 0, -S, T], [1, 0, -S, -T],
    // block 4: zero third coordinate
    [T, S, 0, 1], [T, S, 0, -1], [T, -S, 0, 1], [T, -S, 0, -1],
    [S, 1, 0, T], [S, 1, 0, -T], [S, -1, 0, T], [S, -1, 0, -T],
    [1, T, 0, S], [1, T, 0, -S], [1, -T, 0, S], [1, -T, 0, -S],
    // block 5: zero fourth coordinate
    [T, 1, S, 0], [T, 1, -S, 0], [T, -1, S, 0], [T, -1, -S, 0],
    [S, T, 1, 0], [S, T, -1, 0], [S, -T, 1, 0], [S, -T, -1, 0],
    [1, S, T, 0], [1, S, -T, 0], [1, -S, T, 0], [1, -S, -T, 0],
];

fn decode<R: GoldenScalar>(code: i8) -> GoldenNumber<R> {
    let v = match code.abs() {
        0 => GoldenNumber::zero(),
        1 => GoldenNumber::from_ints(1, 0),
        T => GoldenNumber::from_ints(0, 1),
        S => GoldenNumber::from_ints(1, 1),
        _ => unreachable!("unknown entry code"),
    };
    if code < 0 {
        -v
    } else {
        v
    }
}

/// One ground-set element: a stable id and its canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPoint<R> {
    pub id: usize,
    pub coords: [GoldenNumber<R>; 4],
}

/// Immutable table of the 60 points, with projective lookup.
#[derive(Debug)]
pub struct PointTable<R> {
    points: Vec<RootPoint<R>>,
    // keyed by the projective normal form (first nonzero coordinate scaled
    // to 1), so any nonzero golden multiple of a column resolves to its id
    index: HashMap<[GoldenNumber<R>; 4], usize>,
}

impl<R: GoldenScalar> PointTable<R> {
    /// Build the table from the embedded matrix, sign-canonicalizing each
    /// column and checking the ground-set invariants (exactly 60 points, no
    /// parallel pair). A failure here means the matrix was mistranscribed.
    pub fn load_h4() -> Result<Self> {
        Self::load_from(&H_COLUMNS)
    }

    /// Same table with one entry of the matrix negated. Testing aid for
    /// sensitivity checks: the negation collides with another sign pattern,
    /// so loading must fail with a parallel-columns report.
    pub fn load_h4_tampered() -> Result<Self> {
        let mut columns = H_COLUMNS;
        columns[12][3] = -columns[12][3];
        Self::load_from(&columns)
    }

    fn load_from(columns: &[[i8; 4]; NPOINTS]) -> Result<Self> {
        let mut points = Vec::with_capacity(NPOINTS);
        let mut index = HashMap::with_capacity(NPOINTS);
        for (id, codes) in columns.iter().enumerate() {
            let raw: [GoldenNumber<R>; 4] = std::array::from_fn(|r| decode(codes[r]));
            let coords = canonicalize(raw)?;
            let key = projective_key(&coords)?;
            if let Some(&dup) = index.get(&key) {
                return Err(Error::RootTable(format!(
                    "columns {dup} and {id} are parallel"
                )));
            }
            index.insert(key, id);
            points.push(RootPoint { id, coords });
        }
        Ok(PointTable { points, index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[RootPoint<R>] {
        &self.points
    }

    pub fn point(&self, id: usize) -> Result<&RootPoint<R>> {
        self.points.get(id).ok_or(Error::PointOutOfRange(id))
    }

    pub fn coords(&self, id: usize) -> &[GoldenNumber<R>; 4] {
        &self.points[id].coords
    }

    /// Exact inner product of two points' coordinate vectors.
    pub fn dot(&self, i: usize, j: usize) -> GoldenNumber<R> {
        dot(self.coords(i), self.coords(j))
    }

    /// Id of the point proportional to `v` by any nonzero golden scalar
    /// (reflection images arrive with factors like 1/2), or `None`.
    pub fn lookup(&self, v: &[GoldenNumber<R>; 4]) -> Option<usize> {
        let key = projective_key(v).ok()?;
        self.index.get(&key).copied()
    }
}

/// Exact inner product of two coordinate 4-tuples.
pub fn dot<R: GoldenScalar>(
    u: &[GoldenNumber<R>; 4],
    v: &[GoldenNumber<R>; 4],
) -> GoldenNumber<R> {
    use num_traits::Zero;
    let mut acc = GoldenNumber::zero();
    for k in 0..4 {
        acc = acc + &u[k] * &v[k];
    }
    acc
}

/// Return `v` or `-v` so the first nonzero coordinate is positive.
/// Idempotent; the zero vector is a domain error.
pub fn canonicalize<R: GoldenScalar>(
    v: [GoldenNumber<R>; 4],
) -> Result<[GoldenNumber<R>; 4]> {
    let lead = v
        .iter()
        .map(|c| c.sign())
        .find(|&s| s != 0)
        .ok_or(Error::ZeroVector)?;
    if lead > 0 {
        Ok(v)
    } else {
        Ok(v.map(|c| -c))
    }
}

/// Projective normal form: scale so the first nonzero coordinate is 1.
fn projective_key<R: GoldenScalar>(
    v: &[GoldenNumber<R>; 4],
) -> Result<[GoldenNumber<R>; 4]> {
    use num_traits::Zero;
    let pivot = v
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(Error::ZeroVector)?
        .inverse()?;
    Ok(std::array::from_fn(|k| &v[k] * &pivot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Golden, Rat};
    use num_traits::Zero;

    fn table() -> PointTable<Rat> {
        PointTable::load_h4().unwrap()
    }

    fn g(a: i64, b: i64) -> Golden {
        Golden::from_ints(a, b)
    }

    fn vec4(c: [(i64, i64); 4]) -> [Golden; 4] {
        c.map(|(a, b)| Golden::from_ints(a, b))
    }

    #[test]
    fn loads_expected_columns() {
        let t = table();
        assert_eq!(t.len(), 60);
        assert_eq!(t.coords(0), &vec4([(1, 0), (0, 0), (0, 0), (0, 0)]));
        assert_eq!(t.coords(4), &vec4([(1, 0), (1, 0), (1, 0), (1, 0)]));
        assert_eq!(t.coords(12), &vec4([(0, 0), (0, 1), (1, 1), (1, 0)]));
    }

    #[test]
    fn all_points_canonical_and_nonparallel() {
        let t = table();
        for p in t.points() {
            let lead = p.coords.iter().find(|c| !c.is_zero()).unwrap();
            assert_eq!(lead.sign(), 1, "point {} not sign-canonical", p.id);
            assert_eq!(canonicalize(p.coords.clone()).unwrap(), p.coords);
        }
        // 1770 pairs, none proportional: every projective key was distinct
        // at load time, but recheck pairwise to exercise the definition.
        for i in 0..60 {
            for j in (i + 1)..60 {
                let (u, v) = (t.coords(i), t.coords(j));
                // u ∥ v iff all 2x2 minors vanish
                let parallel = (0..4).all(|r| {
                    (r + 1..4).all(|s| (&u[r] * &v[s] - &u[s] * &v[r]).is_zero())
                });
                assert!(!parallel, "points {i} and {j} are parallel");
            }
        }
    }

    #[test]
    fn dot_examples() {
        let t = table();
        assert!(t.dot(0, 1).is_zero());
        assert_eq!(t.dot(4, 4), g(4, 0));
        // τ² + τ⁴ + 1 = (1+τ) + (2+3τ) + 1 = 4 + 4τ
        assert_eq!(t.dot(12, 12), g(4, 4));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            canonicalize(vec4([(-1, 0), (0, 0), (0, 0), (0, 0)])).unwrap(),
            vec4([(1, 0), (0, 0), (0, 0), (0, 0)])
        );
        let already = vec4([(1, 0), (-1, 0), (-1, 0), (-1, 0)]);
        assert_eq!(canonicalize(already.clone()).unwrap(), already);
        // first nonzero is 1-τ < 0, so the whole vector flips
        assert_eq!(
            canonicalize(vec4([(0, 0), (1, -1), (1, 0), (-1, 1)])).unwrap(),
            vec4([(0, 0), (-1, 1), (-1, 0), (1, -1)])
        );
        let zero = [Golden::zero(), Golden::zero(), Golden::zero(), Golden::zero()];
        assert!(matches!(canonicalize(zero), Err(Error::ZeroVector)));
    }

    #[test]
    fn lookup_examples() {
        let t = table();
        // positive scaling
        assert_eq!(t.lookup(&vec4([(2, 0), (0, 0), (0, 0), (0, 0)])), Some(0));
        // the half-scaled reflection image [1/2,1/2,-1/2,1/2] is column [1,1,-1,1]
        let half = |n: i64| Golden::new(Rat::new(n, 2), Rat::new(0, 1));
        let v = [half(1), half(1), half(-1), half(1)];
        let expect = t.lookup(&vec4([(1, 0), (1, 0), (-1, 0), (1, 0)]));
        assert!(expect.is_some());
        assert_eq!(t.lookup(&v), expect);
        // not proportional to any column
        assert_eq!(t.lookup(&vec4([(1, 0), (1, 0), (0, 0), (0, 0)])), None);
    }

    #[test]
    fn lookup_roundtrips_all_points() {
        let t = table();
        for p in t.points() {
            assert_eq!(t.lookup(&p.coords), Some(p.id));
            let neg = p.coords.clone().map(|c| -c);
            assert_eq!(t.lookup(&neg), Some(p.id));
        }
    }

    #[test]
    fn tampered_load_reports_parallel_columns() {
        let err = PointTable::<Rat>::load_h4_tampered().unwrap_err();
        assert!(matches!(err, Error::RootTable(_)));
    }
}
