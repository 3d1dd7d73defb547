//! Deterministic SVG picture of the matroid: a linear change of basis, the
//! affine slice at first coordinate 1, and a fixed oblique view of the
//! resulting triples. All geometry is exact until the final fixed-precision
//! decimal rendering, so the byte output is platform-independent.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::gfield::{GoldenNumber, GoldenScalar};
use crate::matroid::{FlatClass, Flats};
use crate::roots::PointTable;
use crate::{Error, Result};

/// How to draw the picture. The change of basis is free as long as it is
/// invertible and no point lands on the hyperplane of vanishing first
/// coordinate; there is no canonical best choice, so the default is simply
/// a documented constant.
#[derive(Clone, Debug)]
pub struct ProjectionSpec<R> {
    /// Change of basis applied to every column before slicing.
    pub transform: [[GoldenNumber<R>; 4]; 4],
    /// Two rows mapping the affine triple to picture coordinates.
    pub view: [[GoldenNumber<R>; 3]; 2],
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    /// Overlay all lines of this size (2, 3 or 5).
    pub lines: Option<usize>,
    /// Highlight the orthoplane of this point and its internal lines.
    pub plane: Option<usize>,
}

impl<R: GoldenScalar> ProjectionSpec<R> {
    /// The default view: first row (2,3,5,7) (meeting no root orthogonally),
    /// identity below, oblique coefficients 1/3 and 1/5.
    pub fn standard() -> Self {
        let g = GoldenNumber::from_int;
        let frac = |n: i64, d: i64| &g(n) / &g(d);
        ProjectionSpec {
            transform: [
                [g(2), g(3), g(5), g(7)],
                [g(0), g(1), g(0), g(0)],
                [g(0), g(0), g(1), g(0)],
                [g(0), g(0), g(0), g(1)],
            ],
            view: [
                [g(1), g(0), frac(1, 3)],
                [g(0), g(1), frac(1, 5)],
            ],
            width: 840,
            height: 840,
            margin: 40,
            lines: None,
            plane: None,
        }
    }
}

fn mat_apply<R: GoldenScalar>(
    m: &[[GoldenNumber<R>; 4]; 4],
    v: &[GoldenNumber<R>; 4],
) -> [GoldenNumber<R>; 4] {
    std::array::from_fn(|r| {
        let mut acc = GoldenNumber::zero();
        for (c, vc) in v.iter().enumerate() {
            acc = acc + &m[r][c] * vc;
        }
        acc
    })
}

fn matrix_rank<R: GoldenScalar>(m: &[[GoldenNumber<R>; 4]; 4]) -> usize {
    // rank by elimination on the rows
    let mut rows: Vec<[GoldenNumber<R>; 4]> = Vec::new();
    for r in m {
        let mut v = r.clone();
        for row in &rows {
            let lead = row.iter().position(|c| !c.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = v[lead].clone();
                for k in 0..4 {
                    v[k] = &v[k] - &(&f * &row[k]);
                }
            }
        }
        if let Some(lead) = v.iter().position(|c| !c.is_zero()) {
            let inv = v[lead].inverse().expect("nonzero leading entry");
            for k in 0..4 {
                v[k] = &v[k] * &inv;
            }
            rows.push(v);
        }
    }
    rows.len()
}

/// Exact picture coordinates of every point under the spec, before the
/// viewport scaling.
fn project_points<R: GoldenScalar>(
    table: &PointTable<R>,
    spec: &ProjectionSpec<R>,
) -> Result<Vec<(GoldenNumber<R>, GoldenNumber<R>)>> {
    if matrix_rank(&spec.transform) != 4 {
        return Err(Error::Projection("transform is singular".into()));
    }
    let mut out = Vec::with_capacity(table.len());
    for p in table.points() {
        let w = mat_apply(&spec.transform, &p.coords);
        if w[0].is_zero() {
            return Err(Error::Projection(format!(
                "point {} has vanishing first coordinate under the transform",
                p.id
            )));
        }
        let inv = w[0].inverse()?;
        let triple: [GoldenNumber<R>; 3] = std::array::from_fn(|k| &w[k + 1] * &inv);
        let px = (0..3).fold(GoldenNumber::zero(), |acc, k| acc + &spec.view[0][k] * &triple[k]);
        let py = (0..3).fold(GoldenNumber::zero(), |acc, k| acc + &spec.view[1][k] * &triple[k]);
        out.push((px, py));
    }
    Ok(out)
}

/// Widen to big rationals for the viewport arithmetic; scaling to pixels
/// inflates denominators past what 64-bit rationals can hold. The component
/// strings are exact, so this is a lossless bridge from any scalar.
fn widen<R: GoldenScalar>(x: &GoldenNumber<R>) -> crate::GoldenBig {
    let parse = |r: String| r.parse::<crate::BigRat>().expect("rational wire format");
    GoldenNumber::new(
        parse(x.rational_part().to_string()),
        parse(x.tau_part().to_string()),
    )
}

/// Render the SVG document. Output is byte-deterministic for a fixed spec:
/// exact arithmetic throughout, six-decimal coordinates at the end.
pub fn render_svg<R: GoldenScalar>(
    table: &PointTable<R>,
    flats: &Flats,
    spec: &ProjectionSpec<R>,
) -> Result<String> {
    let raw: Vec<(crate::GoldenBig, crate::GoldenBig)> = project_points(table, spec)?
        .iter()
        .map(|(x, y)| (widen(x), widen(y)))
        .collect();

    let xs: Vec<&crate::GoldenBig> = raw.iter().map(|(x, _)| x).collect();
    let ys: Vec<&crate::GoldenBig> = raw.iter().map(|(_, y)| y).collect();
    let xmin = (*xs.iter().min().expect("points exist")).clone();
    let xmax = (*xs.iter().max().expect("points exist")).clone();
    let ymin = (*ys.iter().min().expect("points exist")).clone();
    let ymax = (*ys.iter().max().expect("points exist")).clone();
    let xspan = &xmax - &xmin;
    let yspan = &ymax - &ymin;
    if xspan.is_zero() || yspan.is_zero() {
        return Err(Error::Projection("projection is degenerate".into()));
    }
    let g = GoldenNumber::<crate::BigRat>::from_int;
    let inner_w = g((spec.width - 2 * spec.margin) as i64);
    let inner_h = g((spec.height - 2 * spec.margin) as i64);
    let sx = &inner_w / &xspan;
    let sy = &inner_h / &yspan;
    let margin = g(spec.margin as i64);
    let place = |p: &(crate::GoldenBig, crate::GoldenBig)| -> (String, String) {
        let px = &margin + &(&(&p.0 - &xmin) * &sx);
        let py = &margin + &(&(&p.1 - &ymin) * &sy);
        (px.to_decimal_string(6), py.to_decimal_string(6))
    };
    let placed: Vec<(String, String)> = raw.iter().map(place).collect();

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{w}" height="{h}" fill="white"/>"#,
        w = spec.width,
        h = spec.height
    );

    // line overlays: a segment between the two extreme points of each line
    if let Some(size) = spec.lines {
        if !matches!(size, 2 | 3 | 5) {
            return Err(Error::Projection(format!("no lines of size {size}")));
        }
        let color = match size {
            2 => "#b0b0b0",
            3 => "#2b7a3e",
            _ => "#b0412e",
        };
        let _ = writeln!(svg, r#"<g stroke="{color}" stroke-width="0.8" opacity="0.7">"#);
        for line in flats.lines_of_size(size) {
            let ids = line.ids();
            let (mut lo, mut hi) = (ids[0], ids[0]);
            for &i in &ids {
                if raw[i] < raw[lo] {
                    lo = i;
                }
                if raw[i] > raw[hi] {
                    hi = i;
                }
            }
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                placed[lo].0, placed[lo].1, placed[hi].0, placed[hi].1
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    // orthoplane highlight: its internal lines plus recolored points
    let mut highlight = 0u64;
    if let Some(x) = spec.plane {
        if x >= table.len() {
            return Err(Error::PointOutOfRange(x));
        }
        // the orthoplane of x is the unique 15-point plane of points
        // orthogonal to x
        let plane = flats
            .planes_of_class(FlatClass::Pi15)
            .find(|p| p.ids().iter().all(|&y| table.dot(x, y).is_zero()))
            .ok_or_else(|| Error::Projection(format!("point {x} has no orthoplane")))?;
        highlight = plane.mask;
        let _ = writeln!(svg, r##"<g stroke="#1f4e79" stroke-width="1.2" opacity="0.8">"##);
        for li in flats.internal_lines(plane.mask) {
            let line = flats.line(li);
            if line.size() < 3 {
                continue;
            }
            let ids = line.ids();
            let (mut lo, mut hi) = (ids[0], ids[0]);
            for &i in &ids {
                if raw[i] < raw[lo] {
                    lo = i;
                }
                if raw[i] > raw[hi] {
                    hi = i;
                }
            }
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                placed[lo].0, placed[lo].1, placed[hi].0, placed[hi].1
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    for (id, (cx, cy)) in placed.iter().enumerate() {
        let fill = if crate::bits::contains(highlight, id) { "#b0412e" } else { "#1f4e79" };
        let _ = writeln!(svg, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="{fill}"/>"#);
        let _ = writeln!(
            svg,
            r##"<text x="{cx}" y="{cy}" dx="4" dy="-4" font-size="8" font-family="monospace" fill="#444444">{id}</text>"##
        );
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testworld::world;

    #[test]
    fn standard_spec_is_valid_and_deterministic() {
        let w = world();
        let spec = ProjectionSpec::standard();
        let a = render_svg(&w.table, &w.flats, &spec).unwrap();
        let b = render_svg(&w.table, &w.flats, &spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<circle").count(), 60);
        assert_eq!(a.matches("<text").count(), 60);
        assert!(a.starts_with("<?xml"));
    }

    #[test]
    fn no_point_vanishes_under_the_default_transform() {
        let w = world();
        let spec = ProjectionSpec::standard();
        assert!(project_points(&w.table, &spec).is_ok());
    }

    #[test]
    fn line_overlays_have_expected_counts() {
        let w = world();
        let mut spec = ProjectionSpec::standard();
        spec.lines = Some(3);
        let svg = render_svg(&w.table, &w.flats, &spec).unwrap();
        assert_eq!(svg.matches("<line").count(), 200);
        spec.lines = Some(5);
        let svg = render_svg(&w.table, &w.flats, &spec).unwrap();
        assert_eq!(svg.matches("<line").count(), 72);
    }

    #[test]
    fn plane_highlight_draws_its_long_lines() {
        let w = world();
        let mut spec = ProjectionSpec::standard();
        spec.plane = Some(0);
        let svg = render_svg(&w.table, &w.flats, &spec).unwrap();
        // ten 3-point and six 5-point internal lines
        assert_eq!(svg.matches("<line").count(), 16);
        assert_eq!(svg.matches("#b0412e").count(), 15);
    }

    #[test]
    fn singular_transform_is_rejected() {
        let w = world();
        let mut spec = ProjectionSpec::<crate::Rat>::standard();
        spec.transform[0] = spec.transform[1].clone();
        assert!(matches!(
            render_svg(&w.table, &w.flats, &spec),
            Err(Error::Projection(_))
        ));
    }

    #[test]
    fn vanishing_first_coordinate_is_reported() {
        let w = world();
        let mut spec = ProjectionSpec::<crate::Rat>::standard();
        // first row e1 kills the twelve columns with zero first coordinate
        let g = GoldenNumber::from_int;
        spec.transform[0] = [g(1), g(0), g(0), g(0)];
        let err = render_svg(&w.table, &w.flats, &spec).unwrap_err();
        assert!(matches!(err, Error::Projection(_)));
    }
}
