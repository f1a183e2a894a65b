//! `verify`, `stable` and `derived`.

use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use hopfo_core::comod::{verify_comodule_algebra, verify_module_algebra};
use hopfo_core::derived::{e_projective_resolution, ext, homotopy_hom, is_perfect, rickard_consistency, BoundedComplex};
use hopfo_core::hopf::verify_hopf;
use hopfo_core::stable::{
    cone, cone_triangle, is_stably_zero, long_exact_check, shift_minus, shift_plus, stable_hom, Shift,
};
use hopfo_core::{Error, Scalar};
use serde_json::{json, Value};

use crate::report::{matrices_value, matrix_value, Report, Row};
use crate::workspace::{Kind, Resolver, WorkspaceFile};

/// What `verify` should look at, decided from the reference's shape.
fn classify(file: &WorkspaceFile, object: &str) -> Result<Kind> {
    if let Some(kind) = file.kind_of(object) {
        return Ok(kind);
    }
    if object.starts_with("builtin:") && !object.contains('/') {
        return Ok(Kind::Hopf);
    }
    if object.contains('/') {
        return Ok(Kind::Module);
    }
    if object.contains(':') {
        return Ok(Kind::Morphism);
    }
    bail!("no object named `{object}`")
}

pub fn verify<F: Scalar>(file: &WorkspaceFile, object: &str, report: &mut Report) -> Result<()> {
    let mut r = Resolver::<F>::new(file);
    let t = Instant::now();
    let verification = match classify(file, object)? {
        Kind::Hopf => r.hopf_structure(object).and_then(|s| Ok(verify_hopf(&s)?)),
        Kind::ModuleAlgebra => r.module_algebra_unverified(object).map(|a| verify_module_algebra(&a)),
        Kind::ComoduleAlgebra => r.base_unverified(object).map(|b| verify_comodule_algebra(&b)),
        Kind::Module => r.module_unverified(object).map(|m| m.verify()),
        Kind::Morphism => r.morphism_unverified(object).map(|f| f.verify()),
        Kind::Complex => {
            let ok = match r.complex(object) {
                Ok(_) => true,
                Err(e) if matches!(e.downcast_ref::<Error>(), Some(Error::Structural(_))) => false,
                Err(e) => return Err(e),
            };
            report.push(Row::check("differential_squares_to_zero", ok).timed(t));
            return Ok(());
        }
    };
    match verification {
        Ok(v) => report.extend_verification("", &v, t),
        // Data that cannot even be assembled (e.g. a singular antipode)
        // fails verification rather than aborting.
        Err(e) if matches!(e.downcast_ref::<Error>(), Some(Error::Structural(_) | Error::Contract(_))) => {
            report.push(Row::check("well_formed", false).detail(e.to_string()).timed(t));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn module_value<F: Scalar>(m: &hopfo_core::bmod::BModule<F>) -> Value {
    matrices_value(m.actions())
}

pub fn stable_hom_cmd<F: Scalar>(file: &WorkspaceFile, m: &str, n: &str, report: &mut Report) -> Result<()> {
    let mut r = Resolver::<F>::new(file);
    let (m, n) = (r.module(m)?, r.module(n)?);
    let t = Instant::now();
    let s = stable_hom(&m, &n)?;
    let reps: Vec<Value> = s.representatives().iter().map(|f| matrix_value(f.matrix())).collect();
    report.push(
        Row::info("stable_hom")
            .dim("dim", s.dim())
            .dim("hom", s.ambient.len())
            .dim("null_homotopic", s.null.maps.len())
            .witness(Some(Value::Array(reps)))
            .timed(t),
    );
    Ok(())
}

pub fn stable_zero_cmd<F: Scalar>(file: &WorkspaceFile, m: &str, report: &mut Report) -> Result<()> {
    let m = Resolver::<F>::new(file).module(m)?;
    let t = Instant::now();
    let w = is_stably_zero(&m)?;
    let row = Row::info("stably_zero")
        .dim("stably_zero", w.is_some())
        .dim("dim", m.dim())
        .witness(w.map(|g| json!({ "retraction_of_lambda": matrix_value(g.matrix()) })));
    report.push(row.timed(t));
    Ok(())
}

pub fn stable_shift_cmd<F: Scalar>(file: &WorkspaceFile, m: &str, n: i64, report: &mut Report) -> Result<()> {
    let m = Resolver::<F>::new(file).module(m)?;
    let t = Instant::now();
    let mut cur = m.clone();
    let mut last: Option<Shift<F>> = None;
    for _ in 0..n.unsigned_abs() {
        let s = if n > 0 { shift_plus(&cur)? } else { shift_minus(&cur)? };
        cur = s.module.clone();
        last = Some(s);
    }
    let witness = json!({
        "action": module_value(&cur),
        "structure_map": last.map(|s| matrix_value(s.map.matrix())),
    });
    report.push(Row::info(format!("shift[{n}]")).dim("dim", cur.dim()).dim("source_dim", m.dim()).witness(Some(witness)).timed(t));
    Ok(())
}

pub fn stable_cone_cmd<F: Scalar>(file: &WorkspaceFile, f: &str, report: &mut Report) -> Result<()> {
    let f = Resolver::<F>::new(file).morphism(f)?;
    let t = Instant::now();
    let c = cone(&f)?;
    let witness = json!({
        "action": module_value(&c.module),
        "g": matrix_value(c.g.matrix()),
        "h": matrix_value(c.hbar.matrix()),
    });
    report.push(
        Row::info("cone")
            .dim("dim", c.module.dim())
            .dim("source_dim", f.source().dim())
            .dim("target_dim", f.target().dim())
            .witness(Some(witness))
            .timed(t),
    );
    Ok(())
}

pub fn stable_triangle_cmd<F: Scalar>(
    file: &WorkspaceFile,
    f: &str,
    window: usize,
    against: &[String],
    report: &mut Report,
) -> Result<()> {
    let mut r = Resolver::<F>::new(file);
    let f = r.morphism(f)?;
    let t = Instant::now();
    let (tri, _) = cone_triangle(&f)?;
    report.extend_verification("triangle/", &tri.verify()?, t);
    let tests: Vec<(String, _)> = if against.is_empty() {
        vec![("source".to_string(), f.source().clone()), ("target".to_string(), f.target().clone())]
    } else {
        against.iter().map(|a| Ok((a.clone(), r.module(a)?))).collect::<Result<_>>()?
    };
    for (name, x) in tests {
        let t = Instant::now();
        let le = long_exact_check(&tri, &x, window)?;
        let row = Row::check(format!("long_exact/{name}"), le.report.passed())
            .dim("shom_dims", le.dims.clone())
            .dim("ranks", le.ranks.clone());
        let row = if le.report.passed() { row } else { row.detail(format!("fails at {}", le.report.failure_summary())) };
        report.push(row.timed(t));
    }
    Ok(())
}

pub fn derived_hom_cmd<F: Scalar>(file: &WorkspaceFile, c: &str, d: &str, report: &mut Report) -> Result<()> {
    let mut r = Resolver::<F>::new(file);
    let (c, d) = (r.complex(c)?, r.complex(d)?);
    let t = Instant::now();
    let h = homotopy_hom(&c, &d)?;
    let reps: Vec<Value> =
        h.representatives().iter().map(|f| Value::Array(f.components.iter().map(|g| matrix_value(g.matrix())).collect())).collect();
    report.push(
        Row::info("homotopy_hom")
            .dim("dim", h.dim())
            .dim("chain_maps", h.chain_maps.len())
            .witness(Some(Value::Array(reps)))
            .timed(t),
    );
    Ok(())
}

pub fn derived_ext_cmd<F: Scalar>(file: &WorkspaceFile, m: &str, n: &str, i: usize, report: &mut Report) -> Result<()> {
    if i == 0 {
        return Err(anyhow!("Ext is computed for degrees i ≥ 1 (degree 0 is `stable hom`)"));
    }
    let mut r = Resolver::<F>::new(file);
    let (m, n) = (r.module(m)?, r.module(n)?);
    let t = Instant::now();
    let e = ext(&m, &n, i)?;
    let reps: Vec<Value> = e.representatives.iter().map(|f| matrix_value(f.matrix())).collect();
    report.push(Row::info(format!("ext{i}")).dim("dim", e.dim).witness(Some(Value::Array(reps))).timed(t));
    Ok(())
}

pub fn derived_perfect_cmd<F: Scalar>(file: &WorkspaceFile, c: &str, report: &mut Report) -> Result<()> {
    let c: BoundedComplex<F> = Resolver::<F>::new(file).complex(c)?;
    let t = Instant::now();
    let p = is_perfect(&c)?;
    report.push(Row::info("perfect").dim("perfect", p).dim("terms", c.len()).timed(t));
    Ok(())
}

pub fn derived_resolve_cmd<F: Scalar>(file: &WorkspaceFile, m: &str, length: usize, report: &mut Report) -> Result<()> {
    let m = Resolver::<F>::new(file).module(m)?;
    let t = Instant::now();
    let res = e_projective_resolution(&m, length)?;
    let p: Vec<usize> = res.projectives.iter().map(|x| x.dim()).collect();
    let k: Vec<usize> = res.syzygies.iter().map(|x| x.dim()).collect();
    let witness = json!({
        "differentials": (0..length).map(|i| Ok(matrix_value(res.differential(i)?.matrix()))).collect::<Result<Vec<_>>>()?,
        "augmentation": matrix_value(res.deflations[0].matrix()),
    });
    report.push(Row::info("resolution").dim("projective_dims", p).dim("syzygy_dims", k).witness(Some(witness)).timed(t));
    for (i, c) in res.conflations.iter().enumerate() {
        let t = Instant::now();
        report.push(Row::check(format!("conflation_{i}"), c.verify()?.passed()).timed(t));
    }
    let t = Instant::now();
    let acyclic = hopfo_core::derived::is_strictly_e_acyclic(&res.augmented_complex()?)?.is_some();
    report.push(Row::check("augmented_complex_e_acyclic", acyclic).timed(t));
    Ok(())
}

pub fn derived_rickard_cmd<F: Scalar>(
    file: &WorkspaceFile,
    m: &str,
    n: &str,
    degrees: std::ops::RangeInclusive<usize>,
    report: &mut Report,
) -> Result<()> {
    let mut r = Resolver::<F>::new(file);
    let (m, n) = (r.module(m)?, r.module(n)?);
    for i in degrees {
        let t = Instant::now();
        let rc = rickard_consistency(&m, &n, i)?;
        report.push(Row::check(format!("rickard/ext{i}"), rc.report.passed()).dim("ext", rc.ext_dim).dim("stable", rc.stable_dim).timed(t));
    }
    Ok(())
}
