use std::collections::HashMap;

use super::classify_coords;
use super::grid::ScalarGrid;
use super::mesh::{triangle_area, TriangleMesh, MIN_TRIANGLE_AREA};
use super::tables::{CORNER_OFFSETS, EDGE_CORNERS, TRI_TABLE};
use crate::error::{Error, Result};
use crate::par;

/// A vertex identified by the lattice edge it lies on.
type EdgeVertex = (u64, [f64; 3]);

/// Marching cubes with linear edge interpolation.
///
/// Cells with a masked corner emit nothing, so the surface stops at the
/// boundary of the physical region. Vertices on a shared lattice edge are
/// welded, and zero-area triangles are dropped. Cells are processed in
/// parallel one z-layer at a time and merged in layer order, so the output is
/// independent of the thread count.
pub fn extract_isosurface(grid: &ScalarGrid, level: f64) -> Result<TriangleMesh> {
    grid.check_shape()?;
    if !level.is_finite() {
        return Err(Error::InvalidGrid(format!("level {level} is not finite")));
    }
    let n = grid.resolution();
    let layers: Vec<Vec<[EdgeVertex; 3]>> = par::map_range(n - 1, |k| {
        let mut out = Vec::new();
        for j in 0..n - 1 {
            for i in 0..n - 1 {
                march_cell(grid, level, [i, j, k], &mut out);
            }
        }
        out
    });

    let mut index: HashMap<u64, u32> = HashMap::new();
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for tri in layers.into_iter().flatten() {
        if triangle_area(&tri[0].1, &tri[1].1, &tri[2].1) <= MIN_TRIANGLE_AREA {
            continue;
        }
        let ids = tri.map(|(key, pos)| {
            *index.entry(key).or_insert_with(|| {
                vertices.push(pos);
                (vertices.len() - 1) as u32
            })
        });
        triangles.push(ids);
    }

    let slice = grid.slice();
    let tags = vertices
        .iter()
        .map(|&v| classify_coords(v, slice))
        .collect();
    TriangleMesh::new(vertices, triangles, tags, slice)
}

fn march_cell(grid: &ScalarGrid, level: f64, base: [usize; 3], out: &mut Vec<[EdgeVertex; 3]>) {
    let mut values = [0.0; 8];
    let mut case = 0usize;
    for (c, off) in CORNER_OFFSETS.iter().enumerate() {
        let Some(v) = grid.get(base[0] + off[0], base[1] + off[1], base[2] + off[2]) else {
            return;
        };
        values[c] = v;
        if v < level {
            case |= 1 << c;
        }
    }
    if case == 0 || case == 255 {
        return;
    }

    let row = &TRI_TABLE[case];
    for tri in row.chunks_exact(3).take_while(|t| t[0] >= 0) {
        out.push([0, 1, 2].map(|t| edge_vertex(grid, level, base, &values, tri[t] as usize)));
    }
}

fn edge_vertex(
    grid: &ScalarGrid,
    level: f64,
    base: [usize; 3],
    values: &[f64; 8],
    edge: usize,
) -> EdgeVertex {
    let [a, b] = EDGE_CORNERS[edge];
    let (oa, ob) = (CORNER_OFFSETS[a], CORNER_OFFSETS[b]);
    // Interpolate from the lower lattice node so a shared edge yields the
    // same position from every adjacent cell.
    let (lo, hi) = if oa <= ob { (a, b) } else { (b, a) };
    let (olo, ohi) = (CORNER_OFFSETS[lo], CORNER_OFFSETS[hi]);
    let axis = (0..3).find(|&d| olo[d] != ohi[d]).unwrap_or(0);
    let node = [base[0] + olo[0], base[1] + olo[1], base[2] + olo[2]];
    let key = grid.index(node[0], node[1], node[2]) as u64 * 3 + axis as u64;

    let (vlo, vhi) = (values[lo], values[hi]);
    let t = (level - vlo) / (vhi - vlo);
    let plo = grid.point(node[0], node[1], node[2]);
    let mut pos = plo;
    let next = grid.coordinate(node[axis] + 1);
    pos[axis] = plo[axis] + t * (next - plo[axis]);
    (key, pos)
}
