//! Seeded property suites over the corpus and the user's workspace.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::ValueEnum;
use hopfo_core::bmod::{lambda_map, rho_map, tensor_h, BModule};
use hopfo_core::corpus::{
    composite_with_rho, for_each_corpus, random_conflation, random_module, random_morphism, CorpusEntry, CorpusVisitor,
};
use hopfo_core::derived::{ext, rickard_consistency};
use hopfo_core::stable::{
    compare_triangle_routes, compose_deflations, conflation_to_triangle, frobenius_extend, frobenius_lift, is_conflation,
    is_stably_zero, long_exact_check, pullback, shift_counit, shift_unit, stable_hom, stable_iso_test, tensor_sequence,
};
use hopfo_core::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{matrices_value, Report, Row};
use crate::workspace::{Resolver, WorkspaceFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Conflation witnesses, pullbacks, composites, tensor stability and
    /// conflation triangles.
    ExactStructure,
    /// Zero objects, Frobenius lifting and extension, and shift inverses.
    Frobenius,
    /// Ext vanishing, Ext against stable Hom, and the semisimple collapse.
    Rickard,
    All,
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::ExactStructure, Suite::Frobenius, Suite::Rickard],
            s => vec![s],
        }
    }

    fn label(self) -> &'static str {
        match self {
            Suite::ExactStructure => "exact-structure",
            Suite::Frobenius => "frobenius",
            Suite::Rickard => "rickard",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Params {
    pub seed: u64,
    pub max_dim: usize,
    pub count: usize,
    pub window: usize,
    pub degrees: std::ops::RangeInclusive<usize>,
}

/// A failing case; the smallest one is echoed as the counterexample.
struct Failure {
    size: usize,
    text: String,
    witness: Value,
}

/// One property over one corpus entry.
#[derive(Default)]
struct Property {
    cases: usize,
    failures: Vec<Failure>,
    time: Duration,
}

impl Property {
    fn record(&mut self, ok: bool, size: usize, text: impl FnOnce() -> String, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { size, text: text(), witness: witness() });
        }
    }
}

struct Runner<'p> {
    params: &'p Params,
    suites: Vec<Suite>,
    rows: Vec<Row>,
}

/// A stable 64-bit hash (FNV-1a), so seeds do not depend on the platform.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn module_json<F: Scalar>(m: &BModule<F>) -> Value {
    matrices_value(m.actions())
}

impl Runner<'_> {
    fn rng(&self, suite: Suite, entry: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.params.seed ^ fnv(&format!("{}/{entry}", suite.label())))
    }

    fn finish(&mut self, suite: Suite, entry: &str, props: BTreeMap<&'static str, Property>) {
        for (name, p) in props {
            let mut row = Row::check(format!("{}/{entry}/{name}", suite.label()), p.failures.is_empty())
                .dim("cases", p.cases)
                .dim("failures", p.failures.len());
            row.timing_ms = p.time.as_secs_f64() * 1e3;
            if let Some(f) = p.failures.into_iter().min_by_key(|f| f.size) {
                row = row.detail(format!("counterexample: {}", f.text)).witness(Some(f.witness));
            }
            self.rows.push(row);
        }
    }

    fn exact_structure<F: Scalar>(&self, entry: &CorpusEntry<F>, props: &mut BTreeMap<&'static str, Property>) -> Result<()> {
        let mut rng = self.rng(Suite::ExactStructure, &entry.name);
        let hopf = entry.hopf_entry()?;
        let small = self.params.max_dim.min(2);
        for n in 0..self.params.count {
            let t = Instant::now();
            let (kind, c) = random_conflation(entry, &mut rng, small, 4 * small)?;
            let size = c.middle().dim();
            let case = |what: &str| format!("{kind:?} conflation #{n} ({} → {} → {}): {what}", c.left().dim(), size, c.right().dim());
            let seq = || json!({ "f": matrices_value([c.f.matrix()]), "g": matrices_value([c.g.matrix()]) });
            let p = props.entry("witness").or_default();
            p.record(c.verify()?.passed(), size, || case("retraction"), seq);
            p.time += t.elapsed();

            let t = Instant::now();
            let l2 = random_module(entry, &mut rng, small)?;
            let u = random_morphism(&mut rng, &l2, c.right())?;
            let (f2, g2) = pullback(&c, &u)?;
            let p = props.entry("pullback").or_default();
            p.record(is_conflation(&f2, &g2)?.is_some(), size + l2.dim(), || case("pullback"), seq);
            p.time += t.elapsed();

            let t = Instant::now();
            let (inc, comp) = compose_deflations(&rho_map(c.middle()), &c.g)?;
            let ok = comp == composite_with_rho(&c)? && is_conflation(&inc, &comp)?.is_some();
            let p = props.entry("composite").or_default();
            p.record(ok, size, || case("g ∘ ρ"), seq);
            p.time += t.elapsed();

            let t = Instant::now();
            let u = random_module(&hopf, &mut rng, small)?;
            let (fu, gu) = tensor_sequence(&c.f, &c.g, &u)?;
            let p = props.entry("tensor").or_default();
            p.record(is_conflation(&fu, &gu)?.is_some(), size * u.dim(), || case("⊗ U"), || json!({ "U": module_json(&u) }));
            p.time += t.elapsed();

            let t = Instant::now();
            let ct = conflation_to_triangle(&c)?;
            let ok = ct.triangle.verify()?.passed() && compare_triangle_routes(&ct)?.passed();
            let p = props.entry("triangle").or_default();
            p.record(ok, size, || case("triangle"), seq);
            p.time += t.elapsed();

            let t = Instant::now();
            let x = random_module(entry, &mut rng, small)?;
            let le = long_exact_check(&ct.triangle, &x, self.params.window)?;
            let p = props.entry("long-exact").or_default();
            p.record(le.report.passed(), size + x.dim(), || case(&format!("sHom(X, −) with dims {:?}", le.dims)), || {
                json!({ "X": module_json(&x) })
            });
            p.time += t.elapsed();
        }
        Ok(())
    }

    fn frobenius<F: Scalar>(&self, entry: &CorpusEntry<F>, props: &mut BTreeMap<&'static str, Property>) -> Result<()> {
        let mut rng = self.rng(Suite::Frobenius, &entry.name);
        let max = self.params.max_dim;
        for n in 0..self.params.count {
            let t = Instant::now();
            let x = random_module(entry, &mut rng, max)?;
            let xh = tensor_h(&x);
            let ok = match is_stably_zero(&xh)? {
                Some(g) => g.compose(&lambda_map(&xh))?.matrix().is_identity(),
                None => false,
            };
            let p = props.entry("zero-object").or_default();
            p.record(ok, x.dim(), || format!("X ⊗ H for X #{n}"), || json!({ "X": module_json(&x) }));
            p.time += t.elapsed();

            let t = Instant::now();
            let (_, c) = random_conflation(entry, &mut rng, max.min(2), 8)?;
            let z = random_module(entry, &mut rng, max.min(2))?;
            let zh = tensor_h(&z);
            let u = random_morphism(&mut rng, &zh, c.right())?;
            let v = random_morphism(&mut rng, c.left(), &zh)?;
            let p = props.entry("lift-extend").or_default();
            let ok = frobenius_lift(&c, &z, &u).is_ok() && frobenius_extend(&c, &z, &v).is_ok();
            p.record(ok, c.middle().dim() + z.dim(), || format!("conflation #{n} against Z ⊗ H"), || json!({ "Z": module_json(&z) }));
            p.time += t.elapsed();

            let t = Instant::now();
            let m = random_module(entry, &mut rng, max)?;
            let ok = stable_iso_test(&shift_unit(&m)?)? && stable_iso_test(&shift_counit(&m)?)?;
            let p = props.entry("shift-inverse").or_default();
            p.record(ok, m.dim(), || format!("M #{n}"), || json!({ "M": module_json(&m) }));
            p.time += t.elapsed();
        }
        let t = Instant::now();
        let p = props.entry("zero-object").or_default();
        for rank in 1..=2 {
            let free = BModule::free(entry.base.clone(), rank);
            p.record(is_stably_zero(&free)?.is_some(), free.dim(), || format!("B^{rank}"), || Value::Null);
        }
        p.time += t.elapsed();
        Ok(())
    }

    fn rickard<F: Scalar>(&self, entry: &CorpusEntry<F>, props: &mut BTreeMap<&'static str, Property>) -> Result<()> {
        let mut rng = self.rng(Suite::Rickard, &entry.name);
        let max = self.params.max_dim;
        for n in 0..self.params.count {
            let m = random_module(entry, &mut rng, max)?;
            let x = random_module(entry, &mut rng, max)?;
            let pair = || json!({ "M": module_json(&m), "N": module_json(&x) });
            let size = m.dim() + x.dim();

            let t = Instant::now();
            let xh = tensor_h(&x);
            let p = props.entry("ext-vanishing").or_default();
            for i in self.params.degrees.clone() {
                let d = ext(&m, &xh, i)?.dim;
                p.record(d == 0, size, || format!("pair #{n}: Ext^{i}(M, N ⊗ H) has dimension {d}"), pair);
            }
            p.time += t.elapsed();

            let t = Instant::now();
            let p = props.entry("ext-vs-stable").or_default();
            for i in self.params.degrees.clone() {
                let r = rickard_consistency(&m, &x, i)?;
                p.record(r.report.passed(), size, || format!("pair #{n}, i = {i}: ext {} vs stable {}", r.ext_dim, r.stable_dim), pair);
            }
            p.time += t.elapsed();

            if entry.is_semisimple() {
                let t = Instant::now();
                let s = stable_hom(&m, &x)?.dim();
                let p = props.entry("semisimple-collapse").or_default();
                p.record(s == 0, size, || format!("pair #{n}: stable Hom has dimension {s}"), pair);
                p.time += t.elapsed();
            }
        }
        Ok(())
    }
}

impl CorpusVisitor for Runner<'_> {
    fn visit<F: Scalar>(&mut self, entry: &CorpusEntry<F>) -> hopfo_core::Result<()> {
        // Core errors pass through; anything else is reported as internal.
        let run = |this: &mut Self, suite: Suite| -> Result<()> {
            let mut props = BTreeMap::new();
            match suite {
                Suite::ExactStructure => this.exact_structure(entry, &mut props)?,
                Suite::Frobenius => this.frobenius(entry, &mut props)?,
                Suite::Rickard => this.rickard(entry, &mut props)?,
                Suite::All => unreachable!("expanded"),
            }
            this.finish(suite, &entry.name, props);
            Ok(())
        };
        for suite in self.suites.clone() {
            run(self, suite).map_err(|e| match e.downcast::<hopfo_core::Error>() {
                Ok(e) => e,
                Err(e) => hopfo_core::Error::Internal(format!("{}: {e:#}", entry.name)),
            })?;
        }
        Ok(())
    }
}

/// The corpus, then one entry per workspace base that has named modules.
pub fn run<F: Scalar>(file: Option<&WorkspaceFile>, suite: Suite, params: &Params, report: &mut Report) -> Result<()> {
    let mut runner = Runner { params, suites: suite.expand(), rows: Vec::new() };
    for_each_corpus(&mut runner)?;
    if let Some(file) = file {
        let mut r = Resolver::<F>::new(file);
        r.load_all()?;
        for (base, modules) in r.modules_by_base()? {
            let b = modules[0].base().clone();
            let mut seeds = vec![BModule::regular(b.clone())];
            seeds.extend(modules.into_iter().filter(|m| !m.is_zero()));
            let entry = CorpusEntry { name: format!("workspace:{base}"), base: b, seeds };
            runner.visit(&entry)?;
        }
    }
    for row in runner.rows {
        report.push(row);
    }
    Ok(())
}
