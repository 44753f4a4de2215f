//! SVG rendering of rhombus tilings (`d = 2`).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::frame::Frame;
use super::placement::Placement;
use crate::colors::ColorSet;
use crate::error::{Error, Result};
use crate::inversion::Cubillage;

const UNIT: i64 = 40;
const MARGIN: i64 = 20;

/// Draws every rhombus of the tiling. The first coordinate of the frame points
/// up, the second to the right; output is a deterministic function of the
/// cubillage and frame.
pub fn render_svg(q: &Cubillage, frame: &Frame) -> Result<String> {
    if q.d() != 2 || frame.d() != 2 || frame.n() != q.n() {
        return Err(Error::invalid("SVG export needs a d = 2 cubillage and a matching frame"));
    }
    let denom = frame.parameters().iter().fold(BigInt::one(), |acc, t| acc.lcm(t.denom()));
    let scale = BigRational::from_integer(denom.clone() * BigInt::from(UNIT));
    let to_px = |v: &BigRational| -> Result<i64> {
        (v * &scale).to_integer().to_i64().ok_or_else(|| Error::invalid("coordinates do not fit the canvas"))
    };
    let point = |vertex: ColorSet| -> Result<(i64, i64)> {
        let p = frame.point(vertex);
        Ok((to_px(&p[1])?, to_px(&p[0])?))
    };

    let placement = Placement::of(q);
    let mut polys = Vec::new();
    for (cube, base) in placement.cubes() {
        let c: Vec<usize> = cube.to_vec();
        let corners = [base, base.with(c[0]), base.with(c[0]).with(c[1]), base.with(c[1])];
        let pts = corners.iter().map(|&v| point(v)).collect::<Result<Vec<_>>>()?;
        polys.push((cube, pts));
    }
    let xs = polys.iter().flat_map(|(_, p)| p.iter().map(|q| q.0));
    let min_x = xs.clone().min().unwrap_or(0);
    let max_x = xs.max().unwrap_or(0);
    let height = point(ColorSet::full(q.n()))?.1;
    let width = max_x - min_x + 2 * MARGIN;
    let total_h = height + 2 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{total_h}" viewBox="0 0 {width} {total_h}">"#
    );
    for (cube, pts) in polys {
        let coords: Vec<String> =
            pts.iter().map(|(x, y)| format!("{},{}", x - min_x + MARGIN, height - y + MARGIN)).collect();
        let _ = writeln!(
            out,
            r#"  <polygon data-type="{cube}" points="{}" fill="none" stroke="black" stroke-width="1"/>"#,
            coords.join(" ")
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
