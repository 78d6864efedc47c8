//! Level surfaces of coherence fields over the Bell-diagonal tetrahedron.
//!
//! A [`FieldSpec`] names what is evaluated at each point of `[-1, 1]³`
//! (interpreted as the correlation triple, optionally on an X-state slice at
//! fixed `(r, s)` or after a channel map), [`sample_field`] discretizes it
//! into a [`ScalarGrid`], [`extract_isosurface`] runs marching cubes and
//! [`surface_stats`] splits the resulting area into separable and entangled
//! parts.

mod clip;
mod grid;
mod marching;
mod mesh;
pub mod tables;

pub use clip::{extract_isosurface_clipped, sample_field_extended};
pub use grid::{sample_field, sample_field_spec, ScalarGrid, MIN_RESOLUTION};
pub use marching::extract_isosurface;
pub use mesh::{
    export_obj, read_obj, restrict_to_discord_equality, surface_stats, write_obj_file,
    MeshMetadata, ObjData, SurfaceStats, TriangleMesh, MIN_TRIANGLE_AREA,
};

use std::fmt;

use crate::channels::{bell_param_map, ChannelKind};
use crate::error::{check_range, Error, Result};
use crate::measures::{
    bell_coherence_gap, discord_bell, discord_gap, l1_coherence_bell,
    relative_entropy_coherence_bell, relative_entropy_coherence_x, MeasureKind,
};
use crate::states::{bell_spectrum, x_density, x_spectrum, BellParams, XParams, TOL_PSD};

/// Slack on the octahedron face `|c1|+|c2|+|c3| = 1`.
pub const TOL_SEPARABLE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    Invalid,
    Separable,
    Entangled,
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionTag::Invalid => "Invalid",
            RegionTag::Separable => "Separable",
            RegionTag::Entangled => "Entangled",
        })
    }
}

/// Fixed Bloch components `(r, s)` of an X-state slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slice {
    pub r: f64,
    pub s: f64,
}

impl Slice {
    pub fn new(r: f64, s: f64) -> Result<Self> {
        check_range("r", r, -1.0, 1.0)?;
        check_range("s", s, -1.0, 1.0)?;
        Ok(Slice { r, s })
    }
}

/// Tetrahedron membership, then the separable octahedron.
pub fn classify_point(p: &BellParams) -> RegionTag {
    if bell_spectrum(p).min() < -TOL_PSD {
        RegionTag::Invalid
    } else if p.as_array().iter().map(|c| c.abs()).sum::<f64>() <= 1.0 + TOL_SEPARABLE {
        RegionTag::Separable
    } else {
        RegionTag::Entangled
    }
}

/// X-state classification by the partial-transpose test, which is exact for
/// two qubits. On `r = s = 0` it agrees with [`classify_point`].
pub fn classify_x_point(q: &XParams) -> RegionTag {
    if x_spectrum(q).min() < -TOL_PSD {
        return RegionTag::Invalid;
    }
    // The partial transpose swaps the anti-diagonal couplings between blocks.
    let m = x_density(q);
    let d = m.diagonal();
    let outer = d[0] * d[3] - m.get(1, 2).norm_sqr();
    let inner = d[1] * d[2] - m.get(0, 3).norm_sqr();
    if outer.min(inner) < -TOL_SEPARABLE / 16.0 {
        RegionTag::Entangled
    } else {
        RegionTag::Separable
    }
}

/// Region of the point `c` in the Bell tetrahedron or on an X slice. Points
/// outside `[-1, 1]³` are invalid.
pub fn classify_coords(c: [f64; 3], slice: Option<Slice>) -> RegionTag {
    let Ok(p) = BellParams::new(c[0], c[1], c[2]) else {
        return RegionTag::Invalid;
    };
    match slice {
        None => classify_point(&p),
        Some(sl) => match XParams::from_bell(p, sl.r, sl.s) {
            Ok(q) => classify_x_point(&q),
            Err(_) => RegionTag::Invalid,
        },
    }
}

/// The scalar field sampled over the correlation cube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub measure: MeasureKind,
    pub slice: Option<Slice>,
    /// Channel applied to the state at each point before measuring.
    pub channel: Option<(ChannelKind, f64)>,
}

impl FieldSpec {
    pub fn new(measure: MeasureKind) -> Self {
        FieldSpec {
            measure,
            slice: None,
            channel: None,
        }
    }

    pub fn with_slice(mut self, slice: Slice) -> Self {
        self.slice = Some(slice);
        self
    }

    pub fn with_channel(mut self, kind: ChannelKind, p: f64) -> Self {
        self.channel = Some((kind, p));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(slice) = self.slice {
            Slice::new(slice.r, slice.s)?;
            if self.measure == MeasureKind::Discord {
                return Err(Error::Unsupported(
                    "discord is only defined for Bell-diagonal states; drop the (r, s) slice"
                        .into(),
                ));
            }
            if self.channel.is_some() {
                return Err(Error::Unsupported(
                    "channel maps are only available for Bell-diagonal states".into(),
                ));
            }
        }
        if let Some((_, p)) = self.channel {
            check_range("p", p, 0.0, 1.0)?;
        }
        Ok(())
    }

    /// Field value at `c` with the closed forms continued past the physical
    /// region (`0 · log 0` for negative eigenvalues). Bell-diagonal only.
    pub fn evaluate_extended(&self, c: [f64; 3]) -> Option<f64> {
        if self.slice.is_some() {
            return None;
        }
        let p = BellParams::new(c[0], c[1], c[2]).ok()?;
        let p = match self.channel {
            Some((kind, prob)) => bell_param_map(kind, prob, &p).ok()?,
            None => p,
        };
        Some(match self.measure {
            MeasureKind::L1 | MeasureKind::TraceNorm => l1_coherence_bell(&p).value(),
            MeasureKind::RelativeEntropy => bell_coherence_gap(&p),
            MeasureKind::Discord => discord_gap(&p),
        })
    }

    /// Field value at `c`, or `None` where the state is not physical.
    pub fn evaluate(&self, c: [f64; 3]) -> Option<f64> {
        if classify_coords(c, self.slice) == RegionTag::Invalid {
            return None;
        }
        let p = BellParams::new(c[0], c[1], c[2]).ok()?;
        let value = match self.slice {
            Some(sl) => {
                let q = XParams::from_bell(p, sl.r, sl.s).ok()?;
                match self.measure {
                    MeasureKind::L1 | MeasureKind::TraceNorm => l1_coherence_bell(&p),
                    MeasureKind::RelativeEntropy => relative_entropy_coherence_x(&q).ok()?,
                    MeasureKind::Discord => return None,
                }
            }
            None => {
                let p = match self.channel {
                    Some((kind, prob)) => bell_param_map(kind, prob, &p).ok()?,
                    None => p,
                };
                match self.measure {
                    MeasureKind::L1 | MeasureKind::TraceNorm => l1_coherence_bell(&p),
                    MeasureKind::RelativeEntropy => relative_entropy_coherence_bell(&p).ok()?,
                    MeasureKind::Discord => discord_bell(&p).ok()?,
                }
            }
        };
        Some(value.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(c1: f64, c2: f64, c3: f64) -> BellParams {
        BellParams::new(c1, c2, c3).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_point(&bell(0.0, 0.0, 0.0)), RegionTag::Separable);
        assert_eq!(classify_point(&bell(1.0, -1.0, 1.0)), RegionTag::Entangled);
        assert_eq!(classify_point(&bell(0.9, 0.9, 0.0)), RegionTag::Invalid);
        // Octahedron vertex is separable.
        assert_eq!(classify_point(&bell(0.0, 0.0, 1.0)), RegionTag::Separable);
        assert_eq!(classify_coords([1.5, 0.0, 0.0], None), RegionTag::Invalid);
    }

    #[test]
    fn ppt_agrees_with_octahedron_on_bell_slice() {
        let n = 21;
        let slice = Some(Slice::new(0.0, 0.0).unwrap());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let f = |t: usize| (2 * t) as f64 / (n - 1) as f64 - 1.0;
                    let c = [f(i), f(j), f(k)];
                    let s: f64 = c.iter().map(|v| v.abs()).sum();
                    if (s - 1.0).abs() < 1e-9 {
                        continue;
                    }
                    assert_eq!(classify_coords(c, None), classify_coords(c, slice), "{c:?}");
                }
            }
        }
    }

    #[test]
    fn field_spec_validation() {
        let slice = Slice::new(0.5, 0.5).unwrap();
        assert!(FieldSpec::new(MeasureKind::Discord)
            .with_slice(slice)
            .validate()
            .is_err());
        assert!(FieldSpec::new(MeasureKind::RelativeEntropy)
            .with_slice(slice)
            .with_channel(ChannelKind::BitFlip, 0.1)
            .validate()
            .is_err());
        assert!(FieldSpec::new(MeasureKind::L1)
            .with_channel(ChannelKind::BitFlip, 1.5)
            .validate()
            .is_err());
        assert!(FieldSpec::new(MeasureKind::L1)
            .with_slice(slice)
            .validate()
            .is_ok());
    }

    #[test]
    fn evaluate_masks_unphysical_points() {
        let spec = FieldSpec::new(MeasureKind::L1);
        assert_eq!(spec.evaluate([0.0, 0.0, 0.0]), Some(0.0));
        assert_eq!(spec.evaluate([0.9, 0.9, 0.0]), None);
        let x =
            FieldSpec::new(MeasureKind::RelativeEntropy).with_slice(Slice::new(0.5, 0.5).unwrap());
        // Diagonal entry (1 − r − s + c3)/4 < 0.
        assert_eq!(x.evaluate([0.0, 0.0, -0.2]), None);
        assert_eq!(x.evaluate([0.0, 0.0, 0.2]), Some(0.0));
    }

    #[test]
    fn evaluate_with_channel_uses_mapped_state() {
        let spec =
            FieldSpec::new(MeasureKind::RelativeEntropy).with_channel(ChannelKind::PhaseFlip, 1.0);
        assert_eq!(spec.evaluate([0.3, -0.2, 0.4]), Some(0.0));
    }
}
