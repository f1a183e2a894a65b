//! The shipped example workspaces, one per corpus entry.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use hopfo_core::bmod::{lambda_map, tensor_h, BModule};
use hopfo_core::comod::{regular_comodule, smash_product, ComoduleAlgebra};
use hopfo_core::corpus::truncated_smash;
use hopfo_core::hopf::{builtin, Builtin};
use hopfo_core::{Fp, Scalar};

use crate::workspace::{Exporter, WorkspaceFile};

pub struct Example {
    pub slug: &'static str,
    pub description: &'static str,
}

pub const EXAMPLES: [Example; 7] = [
    Example { slug: "trivial-gf2", description: "H = k over GF(2)" },
    Example { slug: "dual-numbers-gf2", description: "GF(2)[d]/(d^2), d primitive" },
    Example { slug: "truncated-gf3", description: "GF(3)[d]/(d^3), d primitive" },
    Example { slug: "z2-gf2", description: "group algebra GF(2)[Z/2]" },
    Example { slug: "z2-gf3", description: "group algebra GF(3)[Z/2] (semisimple)" },
    Example { slug: "sweedler-gf5", description: "Sweedler's H4 over GF(5)" },
    Example { slug: "smash-gf2", description: "GF(2)[x]/(x^2) # GF(2)[d]/(d^2) with d.x = 1" },
];

/// Names the base `B`, its standard modules, `λ` of the first one and the
/// two-term complex it forms.
fn fill<F: Scalar>(e: &mut Exporter<F>, base: &Arc<ComoduleAlgebra<F>>, small: (&str, BModule<F>)) {
    e.add_base("B", base);
    e.add_module("B_regular", &BModule::regular(base.clone()));
    let (name, m) = small;
    e.add_module(name, &m);
    let mh = format!("{name}_H");
    e.add_module(&mh, &tensor_h(&m));
    let lambda = format!("lambda_{name}");
    e.add_morphism(&lambda, &lambda_map(&m));
    e.add_complex(&format!("{name}_to_{name}_H"), 0, &[name, &mh], &[&lambda]);
}

fn hopf_example<F: Scalar>(b: &Builtin) -> Result<WorkspaceFile> {
    let h = Arc::new(builtin::<F>(b)?);
    let base = regular_comodule(&h);
    let mut e = Exporter::<F>::new();
    e.add_hopf("H", &h);
    fill(&mut e, &base, ("k", BModule::trivial(base.clone())?));
    Ok(e.file)
}

pub fn build(slug: &str) -> Result<WorkspaceFile> {
    match slug {
        "trivial-gf2" => hopf_example::<Fp<2>>(&Builtin::Trivial),
        "dual-numbers-gf2" => hopf_example::<Fp<2>>(&Builtin::TruncatedPoly { p: 2 }),
        "truncated-gf3" => hopf_example::<Fp<3>>(&Builtin::TruncatedPoly { p: 3 }),
        "z2-gf2" => hopf_example::<Fp<2>>(&Builtin::Cyclic { n: 2 }),
        "z2-gf3" => hopf_example::<Fp<3>>(&Builtin::Cyclic { n: 2 }),
        "sweedler-gf5" => hopf_example::<Fp<5>>(&Builtin::Sweedler),
        "smash-gf2" => {
            let a = truncated_smash()?;
            let base = smash_product(&a)?;
            let mut e = Exporter::<Fp<2>>::new();
            e.add_hopf("H", a.hopf());
            e.add_module_algebra("A", &a);
            fill(&mut e, &base, ("A_natural", BModule::natural(base.clone())?));
            Ok(e.file)
        }
        other => bail!("unknown example `{other}`; see `hopfo examples list`"),
    }
}

pub fn list() {
    for ex in &EXAMPLES {
        println!("{:<18} {}", ex.slug, ex.description);
    }
    println!();
    println!("builtin references: builtin:trivial, builtin:truncated_poly(p=P), builtin:cyclic(n=N), builtin:sweedler");
}

/// Writes `<slug>.json` into `out`, or prints to stdout.
pub fn emit(which: &str, out: Option<&Path>) -> Result<()> {
    let slugs: Vec<&str> = if which == "all" { EXAMPLES.iter().map(|e| e.slug).collect() } else { vec![which] };
    if out.is_none() && slugs.len() > 1 {
        bail!("emitting every example needs --out <dir>");
    }
    for slug in slugs {
        let text = build(slug)?.to_json();
        match out {
            Some(dir) => {
                std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
                let path = dir.join(format!("{slug}.json"));
                std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
                println!("wrote {}", path.display());
            }
            None => print!("{text}"),
        }
    }
    Ok(())
}
