use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use qcoherence::channels::uniform_p_grid;
use qcoherence::geometry::{
    classify_x_point, extract_isosurface_clipped, restrict_to_discord_equality,
    sample_field_extended, sample_field_spec, write_obj_file, FieldSpec, MeshMetadata,
};
use qcoherence::measures::{
    l1_coherence_bell, relative_entropy_coherence_bell, relative_entropy_coherence_x,
};
use qcoherence::verify::{self, VerifyConfig};
use qcoherence::{
    bell_density, classify_point, discord_bell, discord_equals_coherence, dynamics_trajectory,
    extract_isosurface, l1_coherence, surface_stats, trace_norm_coherence_x, x_density, BellParams,
    Error, MeasureKind, Result, Slice, XParams,
};
use serde_json::{json, Map, Value};

use crate::{ChannelArg, DynamicsArgs, StateArgs, SurfaceArgs, VerifyArgs};

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn json_text(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn slice_of(r: Option<f64>, s: Option<f64>) -> Result<Option<Slice>> {
    if r.is_none() && s.is_none() {
        return Ok(None);
    }
    Slice::new(r.unwrap_or(0.0), s.unwrap_or(0.0)).map(Some)
}

pub fn measure(a: &StateArgs) -> Result<ExitCode> {
    let bell = BellParams::new(a.c1, a.c2, a.c3)?;
    let mut doc = Map::new();
    doc.insert("c1".into(), json!(a.c1));
    doc.insert("c2".into(), json!(a.c2));
    doc.insert("c3".into(), json!(a.c3));
    match slice_of(a.r, a.s)? {
        Some(slice) => {
            let q = XParams::from_bell(bell, slice.r, slice.s)?;
            q.ensure_physical()?;
            let m = x_density(&q);
            doc.insert("r".into(), json!(slice.r));
            doc.insert("s".into(), json!(slice.s));
            doc.insert("l1".into(), json!(l1_coherence(&m).value()));
            doc.insert(
                "trace_norm".into(),
                json!(trace_norm_coherence_x(&m)?.value()),
            );
            doc.insert(
                "relative_entropy".into(),
                json!(relative_entropy_coherence_x(&q)?.value()),
            );
            doc.insert("region".into(), json!(classify_x_point(&q).to_string()));
        }
        None => {
            bell.ensure_physical()?;
            let m = bell_density(&bell);
            doc.insert("l1".into(), json!(l1_coherence_bell(&bell).value()));
            doc.insert(
                "trace_norm".into(),
                json!(trace_norm_coherence_x(&m)?.value()),
            );
            doc.insert(
                "relative_entropy".into(),
                json!(relative_entropy_coherence_bell(&bell)?.value()),
            );
            doc.insert("discord".into(), json!(discord_bell(&bell)?.value()));
            doc.insert("region".into(), json!(classify_point(&bell).to_string()));
            doc.insert(
                "discord_equals_coherence".into(),
                json!(discord_equals_coherence(&bell)?),
            );
        }
    }
    emit(&json_text(&Value::Object(doc)), a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn surface(a: &SurfaceArgs) -> Result<ExitCode> {
    if !(a.level > 0.0 && a.level <= 1.0) {
        return Err(Error::Unsupported(format!(
            "level {} must lie in (0, 1]",
            a.level
        )));
    }
    let measure = MeasureKind::from(a.measure);
    let channel = match (a.channel, a.p) {
        (Some(ChannelArg::All), _) => {
            return Err(Error::Unsupported(
                "surface takes a single channel, not `all`".into(),
            ))
        }
        (Some(c), Some(p)) => Some((c.kinds()[0], p)),
        _ => None,
    };
    let spec = FieldSpec {
        measure,
        slice: slice_of(a.r, a.s)?,
        channel,
    };
    spec.validate()?;
    if a.discord_equality && spec.slice.is_some() {
        return Err(Error::Unsupported(
            "the discord-equality region is only defined for Bell-diagonal states".into(),
        ));
    }

    let threshold = 2.0 / a.resolution as f64;
    if a.level < threshold {
        eprintln!(
            "warning: level {} is below 2/N = {threshold}; thin features near the c3 axis \
             may be missed, consider a larger --resolution",
            a.level
        );
    }

    let mut mesh = if a.clip {
        extract_isosurface_clipped(&sample_field_extended(&spec, a.resolution)?, a.level)?
    } else {
        extract_isosurface(&sample_field_spec(&spec, a.resolution)?, a.level)?
    };
    if a.discord_equality {
        mesh = restrict_to_discord_equality(&mesh);
    }

    let mut extra = Vec::new();
    if let Some((kind, p)) = channel {
        extra.push(("channel".to_string(), kind.short_name().to_string()));
        extra.push(("p".to_string(), p.to_string()));
    }
    extra.push(("boundary".to_string(), boundary_name(a.clip).to_string()));
    if a.discord_equality {
        extra.push(("region".to_string(), "discord-equality".to_string()));
    }
    let meta = MeshMetadata {
        field: measure.name().to_string(),
        level: a.level,
        resolution: a.resolution,
        slice: spec.slice,
        extra,
    };
    write_obj_file(&mesh, &meta, &a.out)?;

    let stats = surface_stats(&mesh);
    let doc = json!({
        "total_area": stats.total_area,
        "entangled_area_fraction": stats.entangled_area_fraction,
        "vertex_count": stats.vertex_count,
        "triangle_count": stats.triangle_count,
        "empty": mesh.is_empty(),
        "measure": measure.name(),
        "level": a.level,
        "resolution": a.resolution,
        "r": spec.slice.map(|s| s.r),
        "s": spec.slice.map(|s| s.s),
        "channel": channel.map(|(k, _)| k.short_name()),
        "p": channel.map(|(_, p)| p),
        "boundary": boundary_name(a.clip),
        "discord_equality": a.discord_equality,
    });
    emit(&json_text(&doc), a.stats_out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn boundary_name(clip: bool) -> &'static str {
    if clip {
        "clipped"
    } else {
        "discard"
    }
}

pub fn dynamics(a: &DynamicsArgs) -> Result<ExitCode> {
    let params = BellParams::new(a.c1, a.c2, a.c3)?;
    params.ensure_physical()?;
    if a.steps < 2 {
        return Err(Error::Unsupported(format!(
            "--steps must be at least 2, got {}",
            a.steps
        )));
    }
    let grid = uniform_p_grid(a.steps);
    let kinds = a.channel.kinds();
    let columns = kinds
        .iter()
        .map(|&k| dynamics_trajectory(&params, k, &grid))
        .collect::<Result<Vec<_>>>()?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["p".to_string()];
    header.extend(kinds.iter().map(|k| format!("C_{}", k.short_name())));
    writer.write_record(&header).map_err(csv_error)?;
    for (i, p) in grid.iter().enumerate() {
        let mut row = vec![p.to_string()];
        row.extend(columns.iter().map(|col| col[i].1.to_string()));
        writer.write_record(&row).map_err(csv_error)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| csv_error(e.into_error().into()))?;
    let csv = String::from_utf8(bytes).expect("CSV fields are ASCII numbers");
    emit(&csv, a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.into())
}

pub fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    if a.samples == 0 {
        return Err(Error::Unsupported("--samples must be positive".into()));
    }
    let cfg = VerifyConfig {
        samples: a.samples,
        seed: a.seed,
    };
    let report = if a.inject_fault {
        verify::run_with(&cfg, &|p: &BellParams| {
            let q = BellParams::new(p.c1(), -p.c2(), p.c3())?;
            Ok(relative_entropy_coherence_bell(&q)?.value())
        })
    } else {
        verify::run(&cfg)
    };
    let mut text = String::new();
    for suite in &report.suites {
        text.push_str(&suite.to_string());
        text.push('\n');
    }
    emit(&text, None)?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for suite in report.failures() {
            eprintln!("verification failed: {}", suite.name);
        }
        Ok(ExitCode::from(1))
    }
}
