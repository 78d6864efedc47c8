//! Optional boundary handling: march an extended field over the whole cube and
//! clip the triangles against the faces of the Bell tetrahedron.

use std::collections::HashMap;

use super::grid::ScalarGrid;
use super::marching::extract_isosurface;
use super::mesh::{triangle_area, TriangleMesh, MIN_TRIANGLE_AREA};
use super::{classify_coords, FieldSpec};
use crate::error::{Error, Result};
use crate::states::TOL_PSD;

/// `4λ_i` for the four Bell eigenvalues; the tetrahedron is where all are ≥ 0.
const FACES: [[f64; 3]; 4] = [
    [-1.0, -1.0, -1.0],
    [-1.0, 1.0, 1.0],
    [1.0, -1.0, 1.0],
    [1.0, 1.0, -1.0],
];

fn face_value(face: usize, c: &[f64; 3]) -> f64 {
    let n = FACES[face];
    1.0 + n[0] * c[0] + n[1] * c[1] + n[2] * c[2]
}

/// Samples the field on every node, continuing it past the tetrahedron with
/// `0 · log 0` for negative eigenvalues. Only Bell-diagonal fields (no X
/// slice) have a polyhedral boundary to clip against.
pub fn sample_field_extended(spec: &FieldSpec, resolution: usize) -> Result<ScalarGrid> {
    spec.validate()?;
    if spec.slice.is_some() {
        return Err(Error::Unsupported(
            "boundary clipping is only available without an (r, s) slice".into(),
        ));
    }
    ScalarGrid::from_fn(resolution, |c| spec.evaluate_extended(c))
}

/// Level surface of an extended grid, cut at the tetrahedron faces.
pub fn extract_isosurface_clipped(grid: &ScalarGrid, level: f64) -> Result<TriangleMesh> {
    let raw = extract_isosurface(grid, level)?;

    let mut index: HashMap<[i64; 3], u32> = HashMap::new();
    let mut vertices: Vec<[f64; 3]> = Vec::new();
    let mut triangles = Vec::new();
    let mut weld = |p: [f64; 3], vertices: &mut Vec<[f64; 3]>| -> u32 {
        let key = p.map(|x| (x * 1e11).round() as i64);
        *index.entry(key).or_insert_with(|| {
            vertices.push(p);
            (vertices.len() - 1) as u32
        })
    };

    for t in 0..raw.triangles().len() {
        let mut poly: Vec<[f64; 3]> = raw.corners(t).to_vec();
        for face in 0..FACES.len() {
            poly = clip_polygon(&poly, face);
            if poly.len() < 3 {
                break;
            }
        }
        if poly.len() < 3 {
            continue;
        }
        for k in 1..poly.len() - 1 {
            let (a, b, c) = (poly[0], poly[k], poly[k + 1]);
            if triangle_area(&a, &b, &c) <= MIN_TRIANGLE_AREA {
                continue;
            }
            let ids = [
                weld(a, &mut vertices),
                weld(b, &mut vertices),
                weld(c, &mut vertices),
            ];
            if ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2] {
                triangles.push(ids);
            }
        }
    }
    let tags = vertices.iter().map(|&v| classify_coords(v, None)).collect();
    TriangleMesh::new(vertices, triangles, tags, None)
}

/// Sutherland–Hodgman against one face half-space.
fn clip_polygon(poly: &[[f64; 3]], face: usize) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (fa, fb) = (face_value(face, &a), face_value(face, &b));
        let (ina, inb) = (fa >= -TOL_PSD, fb >= -TOL_PSD);
        if ina {
            out.push(a);
        }
        if ina != inb {
            let t = fa / (fa - fb);
            out.push(std::array::from_fn(|d| a[d] + t * (b[d] - a[d])));
        }
    }
    out
}
