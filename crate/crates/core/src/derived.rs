//! Bounded complexes of `B`-modules, their homotopy category, strict
//! `E`-acyclicity, `E`-projective resolutions and `Ext`, and the comparison
//! of `Ext^i(M, N)` with stable maps `M → N[i]`.

use std::sync::Arc;

use crate::bmod::{comult_section, hom_space, kernel, rho_map, tensor_h, BModule, ModuleMorphism};
use crate::comod::ComoduleAlgebra;
use crate::error::{contract, internal, structural, Result};
use crate::exactlin::{nullspace, rank, solve, FieldMatrix, QuotientSpace};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::stable::{is_conflation, is_e_projective, shift_plus_n, stable_hom, Conflation};

/// `… → M^k → M^{k+1} → …`, supported on `lowest ..= lowest + terms.len() − 1`.
#[derive(Clone)]
pub struct BoundedComplex<F> {
    base: Arc<ComoduleAlgebra<F>>,
    lowest: i64,
    terms: Vec<BModule<F>>,
    /// `diffs[j] : terms[j] → terms[j + 1]`.
    diffs: Vec<ModuleMorphism<F>>,
}

impl<F: Scalar> BoundedComplex<F> {
    pub fn new(
        base: Arc<ComoduleAlgebra<F>>,
        lowest: i64,
        terms: Vec<BModule<F>>,
        diffs: Vec<ModuleMorphism<F>>,
    ) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(contract!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1)));
        }
        if terms.iter().any(|t| t.base() != &base) {
            return Err(contract!("complex terms live over different algebras"));
        }
        for (j, d) in diffs.iter().enumerate() {
            if *d.source() != terms[j] || *d.target() != terms[j + 1] {
                return Err(contract!("differential in degree {} has the wrong endpoints", lowest + j as i64));
            }
        }
        for (j, w) in diffs.windows(2).enumerate() {
            if !w[1].matrix().matmul(w[0].matrix()).is_zero() {
                return Err(structural!("d∘d ≠ 0 starting in degree {}", lowest + j as i64));
            }
        }
        Ok(BoundedComplex { base, lowest, terms, diffs })
    }

    pub fn zero(base: Arc<ComoduleAlgebra<F>>) -> Self {
        BoundedComplex { base, lowest: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `M` concentrated in one degree.
    pub fn single(m: &BModule<F>, degree: i64) -> Self {
        BoundedComplex { base: m.base().clone(), lowest: degree, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn base(&self) -> &Arc<ComoduleAlgebra<F>> {
        &self.base
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// One past the highest supported degree.
    pub fn end(&self) -> i64 {
        self.lowest + self.terms.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lowest..self.end()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn index(&self, k: i64) -> Option<usize> {
        (self.lowest..self.end()).contains(&k).then(|| (k - self.lowest) as usize)
    }

    /// `M^k`, the zero module outside the support.
    pub fn term(&self, k: i64) -> BModule<F> {
        match self.index(k) {
            Some(j) => self.terms[j].clone(),
            None => BModule::zero(self.base.clone()),
        }
    }

    pub fn terms(&self) -> &[BModule<F>] {
        &self.terms
    }

    /// `d_k : M^k → M^{k+1}`.
    pub fn differential(&self, k: i64) -> ModuleMorphism<F> {
        match self.index(k) {
            Some(j) if j < self.diffs.len() => self.diffs[j].clone(),
            _ => ModuleMorphism::zero(&self.term(k), &self.term(k + 1)),
        }
    }

    /// Every term is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(BModule::is_zero)
    }
}

/// Degreewise maps `f^k : C^k → D^k`, indexed over the support of `C`.
#[derive(Clone)]
pub struct ChainMap<F> {
    pub source: BoundedComplex<F>,
    pub target: BoundedComplex<F>,
    pub components: Vec<ModuleMorphism<F>>,
}

impl<F: Scalar> ChainMap<F> {
    pub fn component(&self, k: i64) -> ModuleMorphism<F> {
        match self.source.index(k) {
            Some(j) => self.components[j].clone(),
            None => ModuleMorphism::zero(&self.source.term(k), &self.target.term(k)),
        }
    }

    pub fn identity(c: &BoundedComplex<F>) -> Self {
        ChainMap { source: c.clone(), target: c.clone(), components: c.terms.iter().map(ModuleMorphism::identity).collect() }
    }

    /// `d ∘ f^k = f^{k+1} ∘ d` in every degree, and each `f^k` is `B`-linear.
    pub fn verify(&self) -> VerificationReport {
        let mut r = VerificationReport::new();
        for k in self.source.lowest - 1..self.source.end() {
            let lhs = self.target.differential(k).matrix().matmul(self.component(k).matrix());
            let rhs = self.component(k + 1).matrix().matmul(self.source.differential(k).matrix());
            r.compare(&format!("commutes_{k}"), &lhs, &rhs);
        }
        for f in &self.components {
            r.extend(f.verify());
        }
        r
    }

    fn flatten(&self) -> Vec<F> {
        self.components.iter().flat_map(|f| f.matrix().to_vec()).collect()
    }
}

fn check_bases<F: Scalar>(c: &BoundedComplex<F>, d: &BoundedComplex<F>) -> Result<()> {
    if c.base != d.base {
        return Err(contract!("complexes live over different algebras"));
    }
    Ok(())
}

fn unflatten<F: Scalar>(c: &BoundedComplex<F>, d: &BoundedComplex<F>, v: &[F]) -> ChainMap<F> {
    let mut off = 0;
    let components = c
        .degrees()
        .map(|k| {
            let (s, t) = (c.term(k), d.term(k));
            let len = s.dim() * t.dim();
            let m = FieldMatrix::from_vec(t.dim(), s.dim(), v[off..off + len].to_vec());
            off += len;
            ModuleMorphism::from_parts(s, t, m)
        })
        .collect();
    ChainMap { source: c.clone(), target: d.clone(), components }
}

/// A basis of the chain maps `C → D`.
pub fn chain_map_space<F: Scalar>(c: &BoundedComplex<F>, d: &BoundedComplex<F>) -> Result<Vec<ChainMap<F>>> {
    check_bases(c, d)?;
    let bases: Vec<Vec<ModuleMorphism<F>>> =
        c.degrees().map(|k| hom_space(&c.term(k), &d.term(k))).collect::<Result<_>>()?;
    // Commutation equations live in Hom(C^k, D^{k+1}) for k = lowest − 1 ..
    let eq_degrees: Vec<i64> = (c.lowest - 1..c.end()).collect();
    let mut eq_offset = Vec::with_capacity(eq_degrees.len());
    let mut total = 0;
    for &k in &eq_degrees {
        eq_offset.push(total);
        total += c.term(k).dim() * d.term(k + 1).dim();
    }
    let mut columns = Vec::new();
    for (j, k) in c.degrees().enumerate() {
        let (dd, dc) = (d.differential(k), c.differential(k - 1));
        for phi in &bases[j] {
            let mut col = vec![F::zero(); total];
            // eq k: d_D ∘ f^k;  eq k − 1: −f^k ∘ d_C
            let e = (k - (c.lowest - 1)) as usize;
            for (i, x) in dd.matrix().matmul(phi.matrix()).to_vec().into_iter().enumerate() {
                col[eq_offset[e] + i] += x;
            }
            for (i, x) in phi.matrix().matmul(dc.matrix()).to_vec().into_iter().enumerate() {
                col[eq_offset[e - 1] + i] -= x;
            }
            columns.push(col);
        }
    }
    let sol = nullspace(&FieldMatrix::from_columns(total, &columns));
    let maps = (0..sol.cols())
        .map(|s| {
            let coeffs = sol.column(s);
            let mut idx = 0;
            let components = c
                .degrees()
                .enumerate()
                .map(|(j, k)| {
                    let terms: Vec<(F, &ModuleMorphism<F>)> = bases[j]
                        .iter()
                        .map(|phi| {
                            idx += 1;
                            (coeffs[idx - 1].clone(), phi)
                        })
                        .collect();
                    ModuleMorphism::combination(&c.term(k), &d.term(k), &terms)
                })
                .collect();
            ChainMap { source: c.clone(), target: d.clone(), components }
        })
        .collect();
    Ok(maps)
}

/// Chain maps `C → D` modulo those of the form `d h + h d`, with
/// `h^k ∈ Hom_B(C^k, D^{k−1})`.
#[derive(Clone)]
pub struct HomotopyHomSpace<F> {
    pub source: BoundedComplex<F>,
    pub target: BoundedComplex<F>,
    pub chain_maps: Vec<ChainMap<F>>,
    quotient: QuotientSpace<F>,
}

impl<F: Scalar> HomotopyHomSpace<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn representatives(&self) -> Vec<ChainMap<F>> {
        self.quotient.representatives().iter().map(|v| unflatten(&self.source, &self.target, v)).collect()
    }

    pub fn is_null(&self, f: &ChainMap<F>) -> bool {
        self.quotient.is_null(&f.flatten())
    }
}

pub fn homotopy_hom<F: Scalar>(c: &BoundedComplex<F>, d: &BoundedComplex<F>) -> Result<HomotopyHomSpace<F>> {
    let chain_maps = chain_map_space(c, d)?;
    let len: usize = c.degrees().map(|k| c.term(k).dim() * d.term(k).dim()).sum();
    let mut offsets = std::collections::HashMap::new();
    let mut off = 0;
    for k in c.degrees() {
        offsets.insert(k, off);
        off += c.term(k).dim() * d.term(k).dim();
    }
    let mut null = Vec::new();
    for k in c.degrees() {
        let (dd, dc) = (d.differential(k - 1), c.differential(k - 1));
        for h in hom_space(&c.term(k), &d.term(k - 1))? {
            let mut v = vec![F::zero(); len];
            // component k: d_D ∘ h;  component k − 1: h ∘ d_C
            for (i, x) in dd.matrix().matmul(h.matrix()).to_vec().into_iter().enumerate() {
                v[offsets[&k] + i] += x;
            }
            if let Some(&o) = offsets.get(&(k - 1)) {
                for (i, x) in h.matrix().matmul(dc.matrix()).to_vec().into_iter().enumerate() {
                    v[o + i] += x;
                }
            }
            null.push(v);
        }
    }
    let ambient = FieldMatrix::from_columns(len, &chain_maps.iter().map(ChainMap::flatten).collect::<Vec<_>>());
    let quotient = QuotientSpace::new(&ambient, &FieldMatrix::from_columns(len, &null));
    Ok(HomotopyHomSpace { source: c.clone(), target: d.clone(), chain_maps, quotient })
}

/// `Some(witnesses)` — one conflation `0 → Z^k → M^k → Z^{k+1} → 0` per
/// supported degree — when the complex is exact and every such sequence is
/// a conflation.
pub fn is_strictly_e_acyclic<F: Scalar>(c: &BoundedComplex<F>) -> Result<Option<Vec<Conflation<F>>>> {
    let cycles: Vec<(BModule<F>, ModuleMorphism<F>)> =
        (c.lowest..=c.end()).map(|k| kernel(&c.differential(k))).collect::<Result<_>>()?;
    for k in c.degrees() {
        let j = (k - c.lowest) as usize;
        if rank(c.differential(k - 1).matrix()) != cycles[j].0.dim() {
            return Ok(None);
        }
    }
    let mut witnesses = Vec::with_capacity(c.len());
    for k in c.degrees() {
        let j = (k - c.lowest) as usize;
        let (next, next_inc) = &cycles[j + 1];
        let d = c.differential(k);
        let onto = solve(next_inc.matrix(), d.matrix())?.ok_or_else(|| internal!("d does not land in the cycles"))?;
        let onto = ModuleMorphism::checked(c.term(k), next.clone(), onto, "corestricted differential")?;
        match is_conflation(&cycles[j].1, &onto)? {
            Some(w) => witnesses.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(witnesses))
}

/// Termwise: every term is `E`-projective.
pub fn is_perfect<F: Scalar>(c: &BoundedComplex<F>) -> Result<bool> {
    for t in c.terms() {
        if !is_e_projective(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P^0, …, P^{−n}` with `P^{−i} = K^i ⊗ H`, `K^0 = M` and
/// `K^{i+1} = ker(ρ : K^i ⊗ H → K^i)`.
#[derive(Clone)]
pub struct Resolution<F> {
    pub module: BModule<F>,
    /// `K^0, …, K^{n+1}`.
    pub syzygies: Vec<BModule<F>>,
    /// `P^0, …, P^{−n}`.
    pub projectives: Vec<BModule<F>>,
    /// `ρ : P^{−i} → K^i`.
    pub deflations: Vec<ModuleMorphism<F>>,
    /// `K^{i+1} → P^{−i}`.
    pub inclusions: Vec<ModuleMorphism<F>>,
    /// `0 → K^{i+1} → P^{−i} → K^i → 0`, split after `⊗ H` by `id ⊗ Δ`.
    pub conflations: Vec<Conflation<F>>,
}

impl<F: Scalar> Resolution<F> {
    /// `n`, the index of the last projective term.
    pub fn length(&self) -> usize {
        self.projectives.len() - 1
    }

    /// `d : P^{−i−1} → P^{−i}`.
    pub fn differential(&self, i: usize) -> Result<ModuleMorphism<F>> {
        self.inclusions[i].compose(&self.deflations[i + 1])
    }

    /// `P^{−n} → … → P^0` in degrees `−n ..= 0`.
    pub fn complex(&self) -> Result<BoundedComplex<F>> {
        let n = self.length();
        let terms: Vec<BModule<F>> = self.projectives.iter().rev().cloned().collect();
        let diffs = (0..n).rev().map(|i| self.differential(i)).collect::<Result<_>>()?;
        BoundedComplex::new(self.module.base().clone(), -(n as i64), terms, diffs)
    }

    /// `0 → K^{n+1} → P^{−n} → … → P^0 → M → 0`, in degrees `−n−1 ..= 1`.
    pub fn augmented_complex(&self) -> Result<BoundedComplex<F>> {
        let n = self.length();
        let mut terms = vec![self.syzygies[n + 1].clone()];
        terms.extend(self.projectives.iter().rev().cloned());
        terms.push(self.module.clone());
        let mut diffs = vec![self.inclusions[n].clone()];
        for i in (0..n).rev() {
            diffs.push(self.differential(i)?);
        }
        diffs.push(self.deflations[0].clone());
        BoundedComplex::new(self.module.base().clone(), -(n as i64) - 1, terms, diffs)
    }
}

/// The resolution with `P^0, …, P^{−length}`.
pub fn e_projective_resolution<F: Scalar>(m: &BModule<F>, length: usize) -> Result<Resolution<F>> {
    let mut res = Resolution {
        module: m.clone(),
        syzygies: vec![m.clone()],
        projectives: Vec::new(),
        deflations: Vec::new(),
        inclusions: Vec::new(),
        conflations: Vec::new(),
    };
    for _ in 0..=length {
        let k = res.syzygies.last().expect("nonempty").clone();
        let rho = rho_map(&k);
        let (next, inc) = kernel(&rho)?;
        let c = Conflation::from_section(&inc, &rho, &comult_section(&k))?;
        res.projectives.push(tensor_h(&k));
        res.syzygies.push(next);
        res.deflations.push(rho);
        res.inclusions.push(inc);
        res.conflations.push(c);
    }
    Ok(res)
}

/// `Ext^i(M, N)` with cocycle representatives `K^i → N`.
#[derive(Clone)]
pub struct ExtGroup<F> {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<ModuleMorphism<F>>,
}

/// For `i ≥ 1`, `Ext^i(M, N) = Hom_B(K^i, N) / {u ∘ ι : u ∈ Hom_B(P^{−i+1}, N)}`,
/// the degree-`i` cohomology of `Hom_B(P^•, N)` after using left exactness
/// of `Hom_B(−, N)` on `P^{−i−1} → P^{−i} → K^i → 0`; only `K^i` is built.
pub fn ext<F: Scalar>(m: &BModule<F>, n: &BModule<F>, i: usize) -> Result<ExtGroup<F>> {
    if m.base() != n.base() {
        return Err(contract!("modules live over different algebras"));
    }
    if i == 0 {
        let homs = hom_space(m, n)?;
        return Ok(ExtGroup { degree: 0, dim: homs.len(), representatives: homs });
    }
    let res = e_projective_resolution(m, i - 1)?;
    let syz = &res.syzygies[i];
    let inc = &res.inclusions[i - 1];
    let cocycles = hom_space(syz, n)?;
    let len = syz.dim() * n.dim();
    let mut boundaries = Vec::new();
    for u in hom_space(&res.projectives[i - 1], n)? {
        boundaries.push(u.compose(inc)?.matrix().to_vec());
    }
    let flat = |v: Vec<Vec<F>>| FieldMatrix::from_columns(len, &v);
    let q = QuotientSpace::new(&flat(cocycles.iter().map(|f| f.matrix().to_vec()).collect()), &flat(boundaries));
    let representatives = q
        .representatives()
        .into_iter()
        .map(|v| ModuleMorphism::from_parts(syz.clone(), n.clone(), FieldMatrix::from_vec(n.dim(), syz.dim(), v)))
        .collect();
    Ok(ExtGroup { degree: i, dim: q.dim(), representatives })
}

/// `dim H^i(Hom_B(P^•, N))` computed from the full cochain complex on a
/// resolution with `P^0, …, P^{−i−1}`; an independent check on [`ext`].
pub fn ext_by_cochains<F: Scalar>(m: &BModule<F>, n: &BModule<F>, i: usize) -> Result<usize> {
    let res = e_projective_resolution(m, i + 1)?;
    // δ^j : Hom(P^{−j}, N) → Hom(P^{−j−1}, N), φ ↦ φ ∘ d, in hom-basis coordinates.
    let coboundary = |j: usize| -> Result<(usize, FieldMatrix<F>)> {
        let src = hom_space(&res.projectives[j], n)?;
        let tgt = hom_space(&res.projectives[j + 1], n)?;
        let d = res.differential(j)?;
        let len = res.projectives[j + 1].dim() * n.dim();
        let tgt_mat = FieldMatrix::from_columns(len, &tgt.iter().map(|f| f.matrix().to_vec()).collect::<Vec<_>>());
        let images: Vec<Vec<F>> = src.iter().map(|f| f.compose(&d).map(|g| g.matrix().to_vec())).collect::<Result<_>>()?;
        let coords = solve(&tgt_mat, &FieldMatrix::from_columns(len, &images))?
            .ok_or_else(|| internal!("coboundary left the hom space"))?;
        Ok((src.len(), coords))
    };
    let (dim_i, delta_i) = coboundary(i)?;
    let kernel_dim = dim_i - rank(&delta_i);
    let image_dim = if i == 0 { 0 } else { rank(&coboundary(i - 1)?.1) };
    Ok(kernel_dim - image_dim)
}

/// Which half-line a stupid truncation keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Degrees `≤ k`.
    AtMost,
    /// Degrees `≥ k`.
    AtLeast,
}

pub fn truncate<F: Scalar>(c: &BoundedComplex<F>, mode: Truncation, k: i64) -> BoundedComplex<F> {
    let (lo, hi) = match mode {
        Truncation::AtMost => (c.lowest, c.end().min(k + 1)),
        Truncation::AtLeast => (c.lowest.max(k), c.end()),
    };
    if lo >= hi {
        return BoundedComplex::zero(c.base.clone());
    }
    let a = (lo - c.lowest) as usize;
    let b = (hi - c.lowest) as usize;
    BoundedComplex {
        base: c.base.clone(),
        lowest: lo,
        terms: c.terms[a..b].to_vec(),
        diffs: c.diffs[a..b - 1].to_vec(),
    }
}

/// `dim Ext^i(M, N)` against `dim sHom(M, N[i])`.
#[derive(Clone, Debug)]
pub struct RickardReport {
    pub degree: usize,
    pub ext_dim: usize,
    pub stable_dim: usize,
    pub report: VerificationReport,
}

pub fn rickard_consistency<F: Scalar>(m: &BModule<F>, n: &BModule<F>, i: usize) -> Result<RickardReport> {
    if i == 0 {
        return Err(contract!("the comparison needs i ≥ 1"));
    }
    let ext_dim = ext(m, n, i)?.dim;
    let stable_dim = stable_hom(m, &shift_plus_n(n, i)?)?.dim();
    let mut report = VerificationReport::new();
    report.push(format!("ext{i}_equals_stable_hom"), ext_dim == stable_dim, None);
    Ok(RickardReport { degree: i, ext_dim, stable_dim, report })
}
