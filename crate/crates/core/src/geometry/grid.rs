use super::{FieldSpec, Slice};
use crate::error::{Error, Result};
use crate::measures::MeasureKind;
use crate::par;

pub const MIN_RESOLUTION: usize = 8;

/// Node values on a uniform `N³` lattice spanning `[-1, 1]³`. `None` marks
/// nodes outside the physical region.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    resolution: usize,
    values: Vec<Option<f64>>,
    slice: Option<Slice>,
}

impl ScalarGrid {
    /// Samples `f` at every node in parallel; node order is x fastest.
    pub fn from_fn<F>(resolution: usize, f: F) -> Result<Self>
    where
        F: Fn([f64; 3]) -> Option<f64> + Sync + Send,
    {
        check_resolution(resolution)?;
        let n = resolution;
        let values = par::map_range(n * n * n, |idx| {
            let (i, j, k) = (idx % n, (idx / n) % n, idx / (n * n));
            let c = [coord(n, i), coord(n, j), coord(n, k)];
            f(c).filter(|v| v.is_finite())
        });
        Ok(ScalarGrid {
            resolution,
            values,
            slice: None,
        })
    }

    pub fn from_values(resolution: usize, values: Vec<Option<f64>>) -> Result<Self> {
        check_resolution(resolution)?;
        if values.len() != resolution.pow(3) {
            return Err(Error::InvalidGrid(format!(
                "expected {} values, got {}",
                resolution.pow(3),
                values.len()
            )));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite node value".into()));
        }
        Ok(ScalarGrid {
            resolution,
            values,
            slice: None,
        })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// X-state slice used to classify points of this grid, if any.
    pub fn slice(&self) -> Option<Slice> {
        self.slice
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.resolution + j) * self.resolution + i
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<f64> {
        self.values[self.index(i, j, k)]
    }

    /// Coordinate of node index `i` along any axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        coord(self.resolution, i)
    }

    pub fn point(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        [self.coordinate(i), self.coordinate(j), self.coordinate(k)]
    }

    /// Spacing between neighboring nodes.
    pub fn cell_size(&self) -> f64 {
        2.0 / (self.resolution - 1) as f64
    }

    pub fn max_value(&self) -> Option<f64> {
        self.values.iter().flatten().copied().reduce(f64::max)
    }

    pub fn min_value(&self) -> Option<f64> {
        self.values.iter().flatten().copied().reduce(f64::min)
    }

    /// Node nearest to `c`.
    pub fn nearest_node(&self, c: [f64; 3]) -> (usize, usize, usize) {
        let n = self.resolution;
        let idx = |x: f64| {
            let t = ((x + 1.0) / 2.0 * (n - 1) as f64).round();
            t.clamp(0.0, (n - 1) as f64) as usize
        };
        (idx(c[0]), idx(c[1]), idx(c[2]))
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        check_resolution(self.resolution)?;
        if self.values.len() != self.resolution.pow(3) {
            return Err(Error::InvalidGrid(
                "value count does not match resolution".into(),
            ));
        }
        Ok(())
    }
}

/// `(2i − (N − 1)) / (N − 1)`: exact at ±1 and antisymmetric under
/// `i → N − 1 − i`.
fn coord(n: usize, i: usize) -> f64 {
    let span = (n - 1) as f64;
    (2.0 * i as f64 - span) / span
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidGrid(format!(
            "resolution {resolution} is below the minimum of {MIN_RESOLUTION}"
        )));
    }
    Ok(())
}

/// Samples `measure` over the tetrahedron, or over the X slice at `(r, s)`.
pub fn sample_field(
    measure: MeasureKind,
    resolution: usize,
    slice: Option<Slice>,
) -> Result<ScalarGrid> {
    let spec = FieldSpec {
        measure,
        slice,
        channel: None,
    };
    sample_field_spec(&spec, resolution)
}

pub fn sample_field_spec(spec: &FieldSpec, resolution: usize) -> Result<ScalarGrid> {
    spec.validate()?;
    let mut grid = ScalarGrid::from_fn(resolution, |c| spec.evaluate(c))?;
    grid.slice = spec.slice;
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{x_spectrum, XParams, TOL_PSD};

    #[test]
    fn coordinates_are_symmetric_and_exact_at_ends() {
        for n in [8, 16, 63, 64] {
            assert_eq!(coord(n, 0), -1.0);
            assert_eq!(coord(n, n - 1), 1.0);
            for i in 0..n {
                assert_eq!(coord(n, i), -coord(n, n - 1 - i));
            }
        }
    }

    #[test]
    fn rejects_small_or_malformed() {
        assert!(ScalarGrid::from_fn(7, |_| Some(0.0)).is_err());
        assert!(ScalarGrid::from_values(8, vec![Some(0.0); 10]).is_err());
        assert!(ScalarGrid::from_values(8, vec![Some(f64::NAN); 512]).is_err());
    }

    #[test]
    fn l1_field_at_origin() {
        // Odd resolution so that the origin is a node.
        let g = sample_field(MeasureKind::L1, 17, None).unwrap();
        assert_eq!(g.get(8, 8, 8), Some(0.0));
        let g = sample_field(MeasureKind::L1, 16, None).unwrap();
        let (i, j, k) = g.nearest_node([0.0, 0.0, 0.0]);
        assert!(g.get(i, j, k).unwrap() <= g.cell_size());
    }

    #[test]
    fn relative_entropy_bounded_by_one() {
        let g = sample_field(MeasureKind::RelativeEntropy, 16, None).unwrap();
        let (i, j, k) = g.nearest_node([1.0, -1.0, 1.0]);
        let v = g.get(i, j, k).unwrap();
        assert!(v <= 1.0 + 1e-12);
        assert!((v - 1.0).abs() < 1e-12);
        assert!(g.max_value().unwrap() <= 1.0 + 1e-12);
        // Unphysical corner.
        assert_eq!(g.get(15, 15, 15), None);
    }

    #[test]
    fn x_slice_masks_by_spectrum() {
        let g = sample_field(
            MeasureKind::RelativeEntropy,
            16,
            Some(Slice::new(0.5, 0.5).unwrap()),
        )
        .unwrap();
        for k in 0..16 {
            for j in 0..16 {
                for i in 0..16 {
                    let c = g.point(i, j, k);
                    let q = XParams::new(0.5, 0.5, c[0], c[1], c[2]).unwrap();
                    let physical = x_spectrum(&q).min() >= -TOL_PSD;
                    assert_eq!(g.get(i, j, k).is_some(), physical, "{c:?}");
                }
            }
        }
    }

    #[test]
    fn discord_with_slice_is_an_error() {
        assert!(sample_field(
            MeasureKind::Discord,
            16,
            Some(Slice::new(0.1, 0.1).unwrap())
        )
        .is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_field(MeasureKind::RelativeEntropy, 20, None).unwrap();
        let b = sample_field(MeasureKind::RelativeEntropy, 20, None).unwrap();
        assert_eq!(a, b);
    }
}
