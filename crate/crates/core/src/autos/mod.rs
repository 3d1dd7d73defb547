//! Automorphisms of `M(H4)`: the geometric subgroup generated by the 60
//! reflections, the full automorphism group found by line-preserving search
//! with basis certification, and the structure reports built on top.

mod duality;
mod reports;
mod search;

pub use duality::{duality_report, DualityReport};
pub use reports::{
    nongeometric_witness, pencil_graph, primitivity_report, stabilizer_report,
    transitivity_report, PencilReport, PrimitivityReport, StabReport, TransitivityReport,
    WitnessReport,
};
pub use search::{aut_group, certify_basis_preserving, AutGroup, LineSearch};

use crate::gfield::{GoldenNumber, GoldenScalar};
use crate::group::{Perm, PermGroup};
use crate::roots::PointTable;
use crate::{Error, Result};

/// The matroid permutation induced by reflecting the root system through the
/// hyperplane orthogonal to point `r`: `v ↦ v - (2 v·x / x·x) x`.
///
/// The image of every column must land back on a column up to a golden
/// scalar; a failed lookup would mean the root system is not closed under
/// its own reflections.
pub fn reflection_perm<R: GoldenScalar>(table: &PointTable<R>, r: usize) -> Result<Perm> {
    let x = table.point(r)?.coords.clone();
    let xx = crate::roots::dot(&x, &x);
    let factor = |v: &[GoldenNumber<R>; 4]| {
        let c = &(&GoldenNumber::from_int(2) * &crate::roots::dot(v, &x)) / &xx;
        let w: [GoldenNumber<R>; 4] = std::array::from_fn(|k| &v[k] - &(&c * &x[k]));
        w
    };
    let mut images = Vec::with_capacity(table.len());
    for p in table.points() {
        let w = factor(&p.coords);
        let id = table.lookup(&w).ok_or_else(|| {
            Error::RootTable(format!(
                "reflection through point {r} maps point {} outside the root system",
                p.id
            ))
        })?;
        images.push(id);
    }
    Perm::from_images(images)
}

/// All 60 reflection permutations, indexed by the reflecting point.
pub fn all_reflection_perms<R: GoldenScalar>(table: &PointTable<R>) -> Result<Vec<Perm>> {
    (0..table.len()).map(|r| reflection_perm(table, r)).collect()
}

/// The geometric symmetry group: everything generated by the reflections
/// (the Coxeter group modulo its center, acting on the 60 sign classes).
pub fn geometric_group<R: GoldenScalar>(table: &PointTable<R>) -> Result<PermGroup> {
    let gens = all_reflection_perms(table)?;
    Ok(PermGroup::generate_with_base(table.len(), &gens, &[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;
    use crate::matroid::{enumerate_flats, enumerate_orthoframes};
    use crate::Rat;

    fn table() -> PointTable<Rat> {
        PointTable::load_h4().unwrap()
    }

    #[test]
    fn reflection_worked_example() {
        // x = [1,-1,1,-1] is column 9. Reflection through its orthoplane
        // sends the quadrilateral columns a,b,c,d = 0,1,8,11 to
        // d',c',b',a' = 6,5,3,2.
        let t = table();
        let rx = reflection_perm(&t, 9).unwrap();
        assert_eq!(rx.apply(0), 6);
        assert_eq!(rx.apply(1), 5);
        assert_eq!(rx.apply(8), 3);
        assert_eq!(rx.apply(11), 2);
        // y = [1,-1,-1,1] is column 10: a,b,c,d go to c',d',a',b' = 5,6,2,3.
        let ry = reflection_perm(&t, 10).unwrap();
        assert_eq!(ry.apply(0), 5);
        assert_eq!(ry.apply(1), 6);
        assert_eq!(ry.apply(8), 2);
        assert_eq!(ry.apply(11), 3);
    }

    #[test]
    fn reflections_are_involutions_fixing_sixteen_points() {
        let t = table();
        let flats = enumerate_flats(&t).unwrap();
        let ortho = enumerate_orthoframes(&t, &flats).unwrap();
        for r in 0..60 {
            let p = reflection_perm(&t, r).unwrap();
            assert!(p.compose(&p).is_identity(), "reflection {r} not an involution");
            let fixed = p.fixed_points();
            assert_eq!(fixed.len(), 16, "reflection {r} fixes {} points", fixed.len());
            let fixed_mask = bits::from_ids(fixed.iter().copied());
            assert_eq!(fixed_mask, ortho.orthoplane_mask[r] | (1 << r));
            // 44 moved points in 22 transpositions
            assert_eq!(p.moved_points(), 44);
            assert_eq!(p.cycle_lengths().iter().filter(|&&l| l == 2).count(), 22);
        }
    }

    #[test]
    fn geometric_group_order_and_transitivity() {
        let t = table();
        let geo = geometric_group(&t).unwrap();
        assert_eq!(geo.order(), 7_200);
        assert_eq!(geo.first_orbit().len(), 60);
        for r in [0, 17, 59] {
            assert!(geo.contains(&reflection_perm(&t, r).unwrap()));
        }
    }
}
