//! The JSON workspace format and its translation to core objects.
//!
//! A workspace fixes the characteristic and names Hopf algebras, module
//! algebras, comodule algebras, modules, morphisms and complexes. Matrices
//! are row-major arrays of integers (or `"a/b"` strings over the rationals)
//! and follow the library's tensor conventions.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use hopfo_core::bmod::{lambda_map, rho_map, BModule, ModuleMorphism};
use hopfo_core::comod::{regular_comodule, smash_product, verify_module_algebra, ComoduleAlgebra, ModuleAlgebra};
use hopfo_core::derived::BoundedComplex;
use hopfo_core::hopf::{builtin, Algebra, Builtin, HopfAlgebra, HopfStructure};
use hopfo_core::stable::{shift_counit, shift_unit};
use hopfo_core::{FieldMatrix, Scalar};
use serde::{Deserialize, Serialize};

pub const WORKSPACE_DIR_VAR: &str = "HOPFO_WORKSPACE_DIR";
pub const DEFAULT_WORKSPACE: &str = "workspace.json";

/// A matrix entry: an integer, or a string `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

pub type Matrix = Vec<Vec<Entry>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Matrix>,
}

/// An `H`-module algebra; `action` is `dim A × (dim H · dim A)`, block `h`
/// holding the action of the `h`-th basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleAlgebraSpec {
    pub hopf: String,
    pub mult: Matrix,
    pub unit: Vec<Entry>,
    pub action: Matrix,
}

/// Exactly one of `regular` (a Hopf algebra reference), `smash` (a module
/// algebra name), or `hopf` + `mult` + `unit` + `coaction`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleAlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smash: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaction: Option<Matrix>,
}

/// A module over `base`, given either by a `kind` (`trivial`, `regular`,
/// `natural`, `free(n)`, `zero`) or by one action matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Matrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    pub matrix: Matrix,
}

/// `terms[j]` sits in degree `lowest + j`; `differentials[j]` maps it to
/// the next term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub lowest: i64,
    pub terms: Vec<String>,
    #[serde(default)]
    pub differentials: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hopf_algebras: BTreeMap<String, HopfSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub module_algebras: BTreeMap<String, ModuleAlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodule_algebras: BTreeMap<String, ComoduleAlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
}

/// What kind of object a workspace name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Hopf,
    ModuleAlgebra,
    ComoduleAlgebra,
    Module,
    Morphism,
    Complex,
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: WorkspaceFile = serde_json::from_str(text)?;
        file.check_names()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("cannot parse {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        crate::pretty::to_string(self)
    }

    fn names(&self) -> impl Iterator<Item = (&String, Kind)> {
        fn tag<V>(m: &BTreeMap<String, V>, k: Kind) -> impl Iterator<Item = (&String, Kind)> {
            m.keys().map(move |n| (n, k))
        }
        tag(&self.hopf_algebras, Kind::Hopf)
            .chain(tag(&self.module_algebras, Kind::ModuleAlgebra))
            .chain(tag(&self.comodule_algebras, Kind::ComoduleAlgebra))
            .chain(tag(&self.modules, Kind::Module))
            .chain(tag(&self.morphisms, Kind::Morphism))
            .chain(tag(&self.complexes, Kind::Complex))
    }

    /// Names are unique across sections and free of the reference syntax
    /// characters `:` and `/`.
    fn check_names(&self) -> Result<()> {
        let mut seen: HashMap<&str, Kind> = HashMap::new();
        for (name, kind) in self.names() {
            if name.is_empty() || name.contains([':', '/']) {
                bail!("invalid object name `{name}`: names must be nonempty and contain no `:` or `/`");
            }
            if let Some(prev) = seen.insert(name, kind) {
                bail!("name `{name}` is used for both a {prev:?} and a {kind:?}");
            }
        }
        Ok(())
    }

    pub fn kind_of(&self, name: &str) -> Option<Kind> {
        self.names().find(|(n, _)| n.as_str() == name).map(|(_, k)| k)
    }
}

/// Finds the workspace file: an explicit path (also tried relative to
/// `$HOPFO_WORKSPACE_DIR`), else `$HOPFO_WORKSPACE_DIR/workspace.json` if it
/// exists.
pub fn locate(explicit: Option<&Path>) -> Result<Option<PathBuf>> {
    let dir = std::env::var_os(WORKSPACE_DIR_VAR).map(PathBuf::from);
    match explicit {
        Some(p) if p.exists() => Ok(Some(p.to_path_buf())),
        Some(p) => match dir.map(|d| d.join(p)).filter(|q| p.is_relative() && q.exists()) {
            Some(q) => Ok(Some(q)),
            None => bail!("workspace file {} not found", p.display()),
        },
        None => Ok(dir.map(|d| d.join(DEFAULT_WORKSPACE)).filter(|q| q.exists())),
    }
}

/// The smallest characteristic a builtin works over.
pub fn natural_characteristic(b: &Builtin) -> u64 {
    match b {
        Builtin::TruncatedPoly { p } => *p as u64,
        Builtin::Sweedler => 3,
        _ => 2,
    }
}

/// The first `builtin:` reference among command-line arguments.
pub fn builtin_in_args<'a>(args: impl IntoIterator<Item = &'a str>) -> Option<Builtin> {
    args.into_iter().find_map(|a| {
        let rest = a.split_once("builtin:")?.1;
        let spec = rest.split('/').next()?;
        spec.parse().ok()
    })
}

pub fn scalar<F: Scalar>(e: &Entry) -> Result<F> {
    match e {
        Entry::Int(v) => Ok(F::from_i64(*v)),
        Entry::Text(s) => {
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s.trim(), "1"),
            };
            let num: i64 = num.parse().map_err(|_| anyhow!("`{s}` is not an integer or fraction"))?;
            let den: i64 = den.parse().map_err(|_| anyhow!("`{s}` is not an integer or fraction"))?;
            F::from_ratio(num, den).ok_or_else(|| anyhow!("`{s}` has a denominator that vanishes in the field"))
        }
    }
}

pub fn vector<F: Scalar>(v: &[Entry]) -> Result<Vec<F>> {
    v.iter().map(scalar).collect()
}

pub fn matrix<F: Scalar>(m: &Matrix) -> Result<FieldMatrix<F>> {
    let rows: Vec<Vec<F>> = m.iter().map(|r| vector(r)).collect::<Result<_>>()?;
    if let Some(r) = rows.iter().position(|r| r.len() != rows[0].len()) {
        bail!("matrix row {r} has {} entries, row 0 has {}", rows[r].len(), rows[0].len());
    }
    Ok(FieldMatrix::from_rows(rows))
}

pub fn entry_of<F: Scalar>(x: &F) -> Entry {
    let s = x.to_string();
    match s.parse::<i64>() {
        Ok(v) => Entry::Int(v),
        Err(_) => Entry::Text(s),
    }
}

pub fn export_matrix<F: Scalar>(m: &FieldMatrix<F>) -> Matrix {
    (0..m.rows()).map(|i| m.row(i).iter().map(entry_of).collect()).collect()
}

pub fn export_vector<F: Scalar>(v: &[F]) -> Vec<Entry> {
    v.iter().map(entry_of).collect()
}

/// A module kind suffix: `trivial`/`k`, `regular`/`B`/`H`, `natural`/`A`,
/// `free(n)`, `zero`.
fn module_of_kind<F: Scalar>(base: &Arc<ComoduleAlgebra<F>>, kind: &str) -> Result<BModule<F>> {
    let kind = kind.trim();
    Ok(match kind {
        "trivial" | "k" => BModule::trivial(base.clone())?,
        "regular" | "B" | "H" => BModule::regular(base.clone()),
        "natural" | "A" => BModule::natural(base.clone())?,
        "zero" | "0" => BModule::zero(base.clone()),
        _ => {
            let rank = kind
                .strip_prefix("free(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse().ok())
                .ok_or_else(|| anyhow!("unknown module kind `{kind}`"))?;
            BModule::free(base.clone(), rank)
        }
    })
}

fn builtin_structure<F: Scalar>(spec: &str) -> Result<HopfStructure<F>> {
    let b: Builtin = spec.parse()?;
    Ok(builtin::<F>(&b)?.structure().clone())
}

/// Resolves names and references to core objects, caching what it builds.
///
/// References accepted wherever a name is:
/// - Hopf algebras: a workspace name or `builtin:<spec>`.
/// - Bases: a comodule algebra name, or a Hopf reference (meaning `B = H`).
/// - Modules: a workspace name or `<base>/<kind>`.
/// - Morphisms: a workspace name or `id:`, `lambda:`, `rho:`, `unit:`,
///   `counit:` followed by a module reference.
/// - Complexes: a workspace name or a module reference (in degree 0).
pub struct Resolver<'a, F> {
    pub file: &'a WorkspaceFile,
    hopf: HashMap<String, Arc<HopfAlgebra<F>>>,
    module_algebras: HashMap<String, Arc<ModuleAlgebra<F>>>,
    bases: HashMap<String, Arc<ComoduleAlgebra<F>>>,
    modules: HashMap<String, BModule<F>>,
    morphisms: HashMap<String, ModuleMorphism<F>>,
}

impl<'a, F: Scalar> Resolver<'a, F> {
    pub fn new(file: &'a WorkspaceFile) -> Self {
        Resolver {
            file,
            hopf: HashMap::new(),
            module_algebras: HashMap::new(),
            bases: HashMap::new(),
            modules: HashMap::new(),
            morphisms: HashMap::new(),
        }
    }

    /// Resolves every named object, so that a broken workspace is rejected
    /// as a whole.
    pub fn load_all(&mut self) -> Result<()> {
        let f = self.file;
        for n in f.hopf_algebras.keys() {
            self.hopf(n).with_context(|| format!("hopf_algebras.{n}"))?;
        }
        for n in f.module_algebras.keys() {
            self.module_algebra(n).with_context(|| format!("module_algebras.{n}"))?;
        }
        for n in f.comodule_algebras.keys() {
            self.base(n).with_context(|| format!("comodule_algebras.{n}"))?;
        }
        for n in f.modules.keys() {
            self.module(n).with_context(|| format!("modules.{n}"))?;
        }
        for n in f.morphisms.keys() {
            self.morphism(n).with_context(|| format!("morphisms.{n}"))?;
        }
        for n in f.complexes.keys() {
            self.complex(n).with_context(|| format!("complexes.{n}"))?;
        }
        Ok(())
    }

    /// Hopf data as written, without checking the axioms.
    pub fn hopf_structure(&self, r: &str) -> Result<HopfStructure<F>> {
        if let Some(spec) = r.strip_prefix("builtin:") {
            return builtin_structure(spec);
        }
        let spec = self.file.hopf_algebras.get(r).ok_or_else(|| anyhow!("no Hopf algebra named `{r}`"))?;
        if let Some(b) = &spec.builtin {
            return builtin_structure(b);
        }
        let need = |what: &str| anyhow!("Hopf algebra `{r}` needs either `builtin` or `{what}`");
        let mult = matrix(spec.mult.as_ref().ok_or_else(|| need("mult"))?)?;
        let unit = vector(spec.unit.as_ref().ok_or_else(|| need("unit"))?)?;
        let comult = matrix(spec.comult.as_ref().ok_or_else(|| need("comult"))?)?;
        let counit = FieldMatrix::row_vector(vector(spec.counit.as_ref().ok_or_else(|| need("counit"))?)?);
        let antipode = matrix(spec.antipode.as_ref().ok_or_else(|| need("antipode"))?)?;
        Ok(HopfStructure::new(Algebra::new(mult, unit)?, comult, counit, antipode)?)
    }

    pub fn hopf(&mut self, r: &str) -> Result<Arc<HopfAlgebra<F>>> {
        if let Some(h) = self.hopf.get(r) {
            return Ok(h.clone());
        }
        let h = Arc::new(HopfAlgebra::new(self.hopf_structure(r)?)?);
        self.hopf.insert(r.to_string(), h.clone());
        Ok(h)
    }

    /// A module algebra as written, without checking the axioms.
    pub fn module_algebra_unverified(&mut self, name: &str) -> Result<ModuleAlgebra<F>> {
        let spec = self.file.module_algebras.get(name).ok_or_else(|| anyhow!("no module algebra named `{name}`"))?;
        let hopf = self.hopf(&spec.hopf)?;
        let alg = Algebra::new(matrix(&spec.mult)?, vector(&spec.unit)?)?;
        Ok(ModuleAlgebra::new(alg, matrix(&spec.action)?, hopf)?)
    }

    pub fn module_algebra(&mut self, name: &str) -> Result<Arc<ModuleAlgebra<F>>> {
        if let Some(a) = self.module_algebras.get(name) {
            return Ok(a.clone());
        }
        let a = self.module_algebra_unverified(name)?;
        let report = verify_module_algebra(&a);
        if !report.passed() {
            bail!("module algebra `{name}` fails: {}", report.failure_summary());
        }
        let a = Arc::new(a);
        self.module_algebras.insert(name.to_string(), a.clone());
        Ok(a)
    }

    /// A comodule algebra as written; smash products and regular comodules
    /// are built from their (checked) ingredients.
    pub fn base_unverified(&mut self, r: &str) -> Result<Arc<ComoduleAlgebra<F>>> {
        let Some(spec) = self.file.comodule_algebras.get(r) else {
            return Ok(regular_comodule(&self.hopf(r)?));
        };
        match (&spec.regular, &spec.smash, &spec.hopf) {
            (Some(h), None, None) => Ok(regular_comodule(&self.hopf(h)?)),
            (None, Some(a), None) => Ok(smash_product(&self.module_algebra(a)?)?),
            (None, None, Some(h)) => {
                let need = |what: &str| anyhow!("comodule algebra `{r}` needs `{what}`");
                let hopf = self.hopf(h)?;
                let mult = matrix(spec.mult.as_ref().ok_or_else(|| need("mult"))?)?;
                let unit = vector(spec.unit.as_ref().ok_or_else(|| need("unit"))?)?;
                let coaction = matrix(spec.coaction.as_ref().ok_or_else(|| need("coaction"))?)?;
                Ok(Arc::new(ComoduleAlgebra::new(Algebra::new(mult, unit)?, coaction, hopf)?))
            }
            _ => bail!("comodule algebra `{r}` needs exactly one of `regular`, `smash` or `hopf`"),
        }
    }

    pub fn base(&mut self, r: &str) -> Result<Arc<ComoduleAlgebra<F>>> {
        if let Some(b) = self.bases.get(r) {
            return Ok(b.clone());
        }
        let b = self.base_unverified(r)?;
        let report = hopfo_core::comod::verify_comodule_algebra(&b);
        if !report.passed() {
            bail!("comodule algebra `{r}` fails: {}", report.failure_summary());
        }
        self.bases.insert(r.to_string(), b.clone());
        Ok(b)
    }

    /// A module as written, without checking the axioms.
    pub fn module_unverified(&mut self, r: &str) -> Result<BModule<F>> {
        if let Some(spec) = self.file.modules.get(r) {
            let base = self.base(&spec.base)?;
            return match (&spec.kind, &spec.action) {
                (Some(kind), None) => module_of_kind(&base, kind),
                (None, Some(action)) => {
                    let action = action.iter().map(matrix).collect::<Result<Vec<_>>>()?;
                    Ok(BModule::unverified(base, action)?)
                }
                _ => bail!("module `{r}` needs exactly one of `kind` or `action`"),
            };
        }
        match r.rsplit_once('/') {
            Some((b, kind)) => module_of_kind(&self.base(b)?, kind),
            None => bail!("no module named `{r}` (and not of the form <base>/<kind>)"),
        }
    }

    pub fn module(&mut self, r: &str) -> Result<BModule<F>> {
        if let Some(m) = self.modules.get(r) {
            return Ok(m.clone());
        }
        let m = self.module_unverified(r)?;
        let report = m.verify();
        if !report.passed() {
            bail!("module `{r}` fails: {}", report.failure_summary());
        }
        self.modules.insert(r.to_string(), m.clone());
        Ok(m)
    }

    /// A morphism as written, without checking linearity.
    pub fn morphism_unverified(&mut self, r: &str) -> Result<ModuleMorphism<F>> {
        if let Some(spec) = self.file.morphisms.get(r) {
            let (s, t) = (self.module(&spec.source)?, self.module(&spec.target)?);
            return Ok(ModuleMorphism::unverified(s, t, matrix(&spec.matrix)?)?);
        }
        let Some((op, m)) = r.split_once(':').filter(|(op, _)| *op != "builtin") else {
            bail!("no morphism named `{r}`");
        };
        let m = self.module(m)?;
        Ok(match op {
            "id" => ModuleMorphism::identity(&m),
            "lambda" => lambda_map(&m),
            "rho" => rho_map(&m),
            "unit" => shift_unit(&m)?,
            "counit" => shift_counit(&m)?,
            _ => bail!("unknown morphism constructor `{op}:` (expected id, lambda, rho, unit or counit)"),
        })
    }

    pub fn morphism(&mut self, r: &str) -> Result<ModuleMorphism<F>> {
        if let Some(f) = self.morphisms.get(r) {
            return Ok(f.clone());
        }
        let f = self.morphism_unverified(r)?;
        let report = f.verify();
        if !report.passed() {
            bail!("morphism `{r}` is not B-linear: {}", report.failure_summary());
        }
        self.morphisms.insert(r.to_string(), f.clone());
        Ok(f)
    }

    pub fn complex(&mut self, r: &str) -> Result<BoundedComplex<F>> {
        let Some(spec) = self.file.complexes.get(r) else {
            return Ok(BoundedComplex::single(&self.module(r)?, 0));
        };
        let terms = spec.terms.iter().map(|t| self.module(t)).collect::<Result<Vec<_>>>()?;
        let Some(first) = terms.first() else {
            bail!("complex `{r}` has no terms");
        };
        let base = first.base().clone();
        let diffs = spec.differentials.iter().map(|d| self.morphism(d)).collect::<Result<Vec<_>>>()?;
        Ok(BoundedComplex::new(base, spec.lowest, terms, diffs)?)
    }

    /// Named modules grouped by the name of their base, in name order.
    pub fn modules_by_base(&mut self) -> Result<BTreeMap<String, Vec<BModule<F>>>> {
        let mut out: BTreeMap<String, Vec<BModule<F>>> = BTreeMap::new();
        let specs: Vec<(String, String)> = self.file.modules.iter().map(|(n, s)| (n.clone(), s.base.clone())).collect();
        for (name, base) in specs {
            out.entry(base).or_default().push(self.module(&name)?);
        }
        Ok(out)
    }
}

/// Builds a workspace file from core objects, writing every structure
/// constant explicitly.
pub struct Exporter<F> {
    pub file: WorkspaceFile,
    hopf: Vec<(Arc<HopfAlgebra<F>>, String)>,
    module_algebras: Vec<(Arc<ModuleAlgebra<F>>, String)>,
    bases: Vec<(Arc<ComoduleAlgebra<F>>, String)>,
    modules: Vec<(BModule<F>, String)>,
}

impl<F: Scalar> Exporter<F> {
    pub fn new() -> Self {
        Exporter {
            file: WorkspaceFile { characteristic: F::characteristic(), ..Default::default() },
            hopf: Vec::new(),
            module_algebras: Vec::new(),
            bases: Vec::new(),
            modules: Vec::new(),
        }
    }

    pub fn add_hopf(&mut self, name: &str, h: &Arc<HopfAlgebra<F>>) {
        let spec = HopfSpec {
            builtin: None,
            mult: Some(export_matrix(h.algebra().mult())),
            unit: Some(export_vector(h.algebra().unit())),
            comult: Some(export_matrix(h.comult())),
            counit: Some(export_vector(h.counit().row(0))),
            antipode: Some(export_matrix(h.antipode())),
        };
        self.file.hopf_algebras.insert(name.to_string(), spec);
        self.hopf.push((h.clone(), name.to_string()));
    }

    fn hopf_name(&mut self, h: &Arc<HopfAlgebra<F>>) -> String {
        if let Some((_, n)) = self.hopf.iter().find(|(g, _)| Arc::ptr_eq(g, h) || **g == **h) {
            return n.clone();
        }
        let name = format!("H{}", self.hopf.len());
        self.add_hopf(&name, h);
        name
    }

    pub fn add_module_algebra(&mut self, name: &str, a: &Arc<ModuleAlgebra<F>>) {
        let hopf = self.hopf_name(a.hopf());
        let spec = ModuleAlgebraSpec {
            hopf,
            mult: export_matrix(a.algebra().mult()),
            unit: export_vector(a.algebra().unit()),
            action: export_matrix(a.h_action()),
        };
        self.file.module_algebras.insert(name.to_string(), spec);
        self.module_algebras.push((a.clone(), name.to_string()));
    }

    pub fn add_base(&mut self, name: &str, b: &Arc<ComoduleAlgebra<F>>) {
        let spec = if b.is_regular() {
            ComoduleAlgebraSpec { regular: Some(self.hopf_name(b.hopf())), ..Default::default() }
        } else if let Some(a) = b.smash_factor() {
            let known = self.module_algebras.iter().find(|(x, _)| Arc::ptr_eq(x, a)).map(|(_, n)| n.clone());
            let a_name = known.unwrap_or_else(|| {
                let n = format!("{name}_factor");
                self.add_module_algebra(&n, a);
                n
            });
            ComoduleAlgebraSpec { smash: Some(a_name), ..Default::default() }
        } else {
            ComoduleAlgebraSpec {
                hopf: Some(self.hopf_name(b.hopf())),
                mult: Some(export_matrix(b.algebra().mult())),
                unit: Some(export_vector(b.algebra().unit())),
                coaction: Some(export_matrix(b.coaction())),
                ..Default::default()
            }
        };
        self.file.comodule_algebras.insert(name.to_string(), spec);
        self.bases.push((b.clone(), name.to_string()));
    }

    fn base_name(&mut self, b: &Arc<ComoduleAlgebra<F>>) -> String {
        if let Some((_, n)) = self.bases.iter().find(|(c, _)| Arc::ptr_eq(c, b) || **c == **b) {
            return n.clone();
        }
        let name = format!("B{}", self.bases.len());
        self.add_base(&name, b);
        name
    }

    pub fn add_module(&mut self, name: &str, m: &BModule<F>) {
        let base = self.base_name(m.base());
        let action = Some(m.actions().iter().map(export_matrix).collect());
        self.file.modules.insert(name.to_string(), ModuleSpec { base, kind: None, action });
        self.modules.push((m.clone(), name.to_string()));
    }

    fn module_name(&mut self, m: &BModule<F>) -> String {
        if let Some((_, n)) = self.modules.iter().find(|(x, _)| x == m) {
            return n.clone();
        }
        let name = format!("M{}", self.modules.len());
        self.add_module(&name, m);
        name
    }

    pub fn add_morphism(&mut self, name: &str, f: &ModuleMorphism<F>) {
        let source = self.module_name(f.source());
        let target = self.module_name(f.target());
        let spec = MorphismSpec { source, target, matrix: export_matrix(f.matrix()) };
        self.file.morphisms.insert(name.to_string(), spec);
    }

    pub fn add_complex(&mut self, name: &str, lowest: i64, terms: &[&str], differentials: &[&str]) {
        let spec = ComplexSpec {
            lowest,
            terms: terms.iter().map(|s| s.to_string()).collect(),
            differentials: differentials.iter().map(|s| s.to_string()).collect(),
        };
        self.file.complexes.insert(name.to_string(), spec);
    }
}

/// Re-serializes a workspace with every object written out explicitly.
#[cfg(test)]
pub fn export_workspace<F: Scalar>(file: &WorkspaceFile) -> Result<WorkspaceFile> {
    let mut r = Resolver::<F>::new(file);
    r.load_all()?;
    let mut e = Exporter::<F>::new();
    for n in file.hopf_algebras.keys() {
        e.add_hopf(n, &r.hopf(n)?);
    }
    for n in file.module_algebras.keys() {
        e.add_module_algebra(n, &r.module_algebra(n)?);
    }
    for n in file.comodule_algebras.keys() {
        e.add_base(n, &r.base(n)?);
    }
    for n in file.modules.keys() {
        e.add_module(n, &r.module(n)?);
    }
    for n in file.morphisms.keys() {
        e.add_morphism(n, &r.morphism(n)?);
    }
    e.file.complexes = file.complexes.clone();
    Ok(e.file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfo_core::{Gf2, Gf5, Rational};

    const DUAL: &str = r#"{
        "characteristic": 2,
        "hopf_algebras": { "D": { "builtin": "truncated_poly(p=2)" } },
        "modules": {
            "k": { "base": "D", "kind": "trivial" },
            "V": { "base": "D", "action": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]] }
        },
        "morphisms": { "f": { "source": "V", "target": "k", "matrix": [[1, 0]] } },
        "complexes": { "C": { "lowest": 0, "terms": ["V", "k"], "differentials": ["f"] } }
    }"#;

    #[test]
    fn loads_and_resolves_references() {
        let file = WorkspaceFile::parse(DUAL).unwrap();
        let mut r = Resolver::<Gf2>::new(&file);
        r.load_all().unwrap();
        assert_eq!(r.module("V").unwrap().dim(), 2);
        assert_eq!(r.module("D/free(2)").unwrap().dim(), 4);
        assert_eq!(r.module("builtin:truncated_poly(p=2)/k").unwrap().dim(), 1);
        assert_eq!(r.morphism("lambda:k").unwrap().target().dim(), 2);
        assert_eq!(r.complex("C").unwrap().len(), 2);
        assert_eq!(r.complex("k").unwrap().len(), 1);
        assert!(r.module("nope").is_err());
        assert!(r.morphism("twist:k").is_err());
    }

    #[test]
    fn round_trip_is_stable() {
        let file = WorkspaceFile::parse(DUAL).unwrap();
        let once = export_workspace::<Gf2>(&file).unwrap();
        let again = export_workspace::<Gf2>(&WorkspaceFile::parse(&once.to_json()).unwrap()).unwrap();
        assert_eq!(once, again);
        let (mut a, mut b) = (Resolver::<Gf2>::new(&file), Resolver::<Gf2>::new(&once));
        for n in ["k", "V"] {
            assert_eq!(a.module(n).unwrap().actions(), b.module(n).unwrap().actions());
        }
        assert_eq!(a.morphism("f").unwrap().matrix(), b.morphism("f").unwrap().matrix());
    }

    #[test]
    fn rejects_bad_names_and_shapes() {
        assert!(WorkspaceFile::parse(r#"{"characteristic": 2, "modules": {"a/b": {"base": "x", "kind": "k"}}}"#).is_err());
        assert!(WorkspaceFile::parse(
            r#"{"characteristic": 2, "hopf_algebras": {"x": {"builtin": "trivial"}}, "modules": {"x": {"base": "x", "kind": "k"}}}"#
        )
        .is_err());
        assert!(WorkspaceFile::parse(r#"{"characteristic": 2, "extra": 1}"#).is_err());
        let bad = r#"{"characteristic": 2, "hopf_algebras": {"D": {"builtin": "truncated_poly(p=2)"}},
            "modules": {"V": {"base": "D", "action": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}}}"#;
        let file = WorkspaceFile::parse(bad).unwrap();
        let mut r = Resolver::<Gf2>::new(&file);
        assert!(r.load_all().is_err());
        assert!(!r.module_unverified("V").unwrap().verify().passed());
    }

    #[test]
    fn entries_parse_as_integers_and_fractions() {
        assert_eq!(scalar::<Gf5>(&Entry::Int(-1)).unwrap(), Gf5::new(4));
        assert_eq!(scalar::<Gf5>(&Entry::Text("1/2".into())).unwrap(), Gf5::new(3));
        assert!(scalar::<Gf5>(&Entry::Text("1/5".into())).is_err());
        let half = scalar::<Rational>(&Entry::Text("1/2".into())).unwrap();
        assert_eq!(entry_of(&half), Entry::Text("1/2".into()));
        assert_eq!(entry_of(&Rational::from_i64(-3)), Entry::Int(-3));
    }

    #[test]
    fn characteristic_hints() {
        assert_eq!(builtin_in_args(["hom", "builtin:truncated_poly(p=3)/k"]), Some(Builtin::TruncatedPoly { p: 3 }));
        assert_eq!(natural_characteristic(&Builtin::Sweedler), 3);
        assert_eq!(builtin_in_args(["k"]), None);
    }
}
