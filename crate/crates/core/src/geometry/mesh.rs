use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use super::{classify_coords, RegionTag, Slice};
use crate::error::{Error, Result};
use crate::measures::TOL_EQ;

/// Triangles at or below this area are discarded.
pub const MIN_TRIANGLE_AREA: f64 = 1e-14;

/// Indexed triangle mesh in `(c1, c2, c3)` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[u32; 3]>,
    tags: Vec<RegionTag>,
    slice: Option<Slice>,
}

impl TriangleMesh {
    pub fn new(
        vertices: Vec<[f64; 3]>,
        triangles: Vec<[u32; 3]>,
        tags: Vec<RegionTag>,
        slice: Option<Slice>,
    ) -> Result<Self> {
        if tags.len() != vertices.len() {
            return Err(Error::InvalidGrid(format!(
                "{} region tags for {} vertices",
                tags.len(),
                vertices.len()
            )));
        }
        if let Some(t) = triangles
            .iter()
            .find(|t| t.iter().any(|&i| i as usize >= vertices.len()))
        {
            return Err(Error::InvalidGrid(format!(
                "triangle {t:?} indexes past the vertex list"
            )));
        }
        Ok(TriangleMesh {
            vertices,
            triangles,
            tags,
            slice,
        })
    }

    /// Builds a mesh and tags its vertices by their Bell-tetrahedron region.
    pub fn from_parts(vertices: Vec<[f64; 3]>, triangles: Vec<[u32; 3]>) -> Result<Self> {
        let tags = vertices.iter().map(|&v| classify_coords(v, None)).collect();
        Self::new(vertices, triangles, tags, None)
    }

    pub fn empty() -> Self {
        TriangleMesh {
            vertices: Vec::new(),
            triangles: Vec::new(),
            tags: Vec::new(),
            slice: None,
        }
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn tags(&self) -> &[RegionTag] {
        &self.tags
    }

    pub fn slice(&self) -> Option<Slice> {
        self.slice
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, t: usize) -> [[f64; 3]; 3] {
        self.triangles[t].map(|i| self.vertices[i as usize])
    }

    pub fn centroid(&self, t: usize) -> [f64; 3] {
        let [a, b, c] = self.corners(t);
        std::array::from_fn(|d| (a[d] + b[d] + c[d]) / 3.0)
    }

    pub fn area(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        triangle_area(&a, &b, &c)
    }

    /// Keeps the triangles accepted by `keep(centroid)` and drops vertices no
    /// longer referenced.
    pub fn retain_triangles<F: Fn([f64; 3]) -> bool>(&self, keep: F) -> TriangleMesh {
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut vertices = Vec::new();
        let mut tags = Vec::new();
        let mut triangles = Vec::new();
        for t in 0..self.triangles.len() {
            if !keep(self.centroid(t)) {
                continue;
            }
            let ids = self.triangles[t].map(|old| {
                *remap.entry(old).or_insert_with(|| {
                    vertices.push(self.vertices[old as usize]);
                    tags.push(self.tags[old as usize]);
                    (vertices.len() - 1) as u32
                })
            });
            triangles.push(ids);
        }
        TriangleMesh {
            vertices,
            triangles,
            tags,
            slice: self.slice,
        }
    }
}

pub(crate) fn triangle_area(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    0.5 * (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt()
}

/// The part of a level surface where discord equals the relative entropy of
/// coherence: triangles whose centroid has `|c3| = max |c_i|`.
pub fn restrict_to_discord_equality(mesh: &TriangleMesh) -> TriangleMesh {
    mesh.retain_triangles(|c| c[2].abs() >= c[0].abs().max(c[1].abs()) - TOL_EQ)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceStats {
    pub total_area: f64,
    /// Share of the area whose triangle centroids are entangled; 0 for an
    /// empty mesh.
    pub entangled_area_fraction: f64,
    pub vertex_count: usize,
    pub triangle_count: usize,
}

pub fn surface_stats(mesh: &TriangleMesh) -> SurfaceStats {
    let mut total = 0.0;
    let mut entangled = 0.0;
    for t in 0..mesh.triangles.len() {
        let area = mesh.area(t);
        total += area;
        if classify_coords(mesh.centroid(t), mesh.slice) == RegionTag::Entangled {
            entangled += area;
        }
    }
    SurfaceStats {
        total_area: total,
        entangled_area_fraction: if total > 0.0 { entangled / total } else { 0.0 },
        vertex_count: mesh.vertices.len(),
        triangle_count: mesh.triangles.len(),
    }
}

/// Provenance recorded in the OBJ comment header.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshMetadata {
    pub field: String,
    pub level: f64,
    pub resolution: usize,
    pub slice: Option<Slice>,
    pub extra: Vec<(String, String)>,
}

/// Formats with nine significant digits in plain decimal notation.
pub(crate) fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (8 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Writes the mesh as Wavefront OBJ with 1-based face indices.
pub fn export_obj<W: Write>(mesh: &TriangleMesh, meta: &MeshMetadata, mut out: W) -> Result<()> {
    writeln!(out, "# qcoherence level surface")?;
    writeln!(out, "# measure: {}", meta.field)?;
    writeln!(out, "# level: {}", meta.level)?;
    writeln!(out, "# resolution: {}", meta.resolution)?;
    match meta.slice {
        Some(s) => writeln!(out, "# slice: r={} s={}", s.r, s.s)?,
        None => writeln!(out, "# slice: none")?,
    }
    for (k, v) in &meta.extra {
        writeln!(out, "# {k}: {v}")?;
    }
    for v in &mesh.vertices {
        writeln!(out, "v {} {} {}", sig9(v[0]), sig9(v[1]), sig9(v[2]))?;
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_obj_file(mesh: &TriangleMesh, meta: &MeshMetadata, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    export_obj(mesh, meta, BufWriter::new(file))
}

/// Vertices, 0-based faces and comment lines of an OBJ document.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ObjData {
    pub comments: Vec<String>,
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[u32; 3]>,
}

/// Reads the triangle subset of OBJ that [`export_obj`] writes.
pub fn read_obj<R: BufRead>(input: R) -> Result<ObjData> {
    let bad = |line: &str| Error::Unsupported(format!("malformed OBJ line: {line}"));
    let mut data = ObjData::default();
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        if let Some(c) = line.strip_prefix('#') {
            data.comments.push(c.trim().to_string());
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let xs: Vec<f64> = parts
                    .map(|p| p.parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(line))?;
                let [x, y, z] = xs[..] else {
                    return Err(bad(line));
                };
                data.vertices.push([x, y, z]);
            }
            Some("f") => {
                let ids: Vec<u32> = parts
                    .map(|p| p.split('/').next().unwrap_or("").parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(line))?;
                let [a, b, c] = ids[..] else {
                    return Err(bad(line));
                };
                if a == 0 || b == 0 || c == 0 {
                    return Err(bad(line));
                }
                data.faces.push([a - 1, b - 1, c - 1]);
            }
            _ => {}
        }
    }
    Ok(data)
}
