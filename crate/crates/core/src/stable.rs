//! The stable category: `B`-modules modulo maps that factor through some
//! `X ⊗ H`, its shifts, cones and triangles, and the exact structure whose
//! conflations are the sequences that split after `⊗ H`.
//!
//! A map `M → N` factors through some `X ⊗ H` iff it factors through
//! `λ_M : M → M ⊗ H`, so null-homotopy is a single image computation.

use crate::bmod::{
    cokernel_module, comult_section, direct_sum, hom_space, kernel, lambda_map, rho_map, submodule, tensor_h,
    tensor_morphisms, untwist_right, BModule, DirectSum, ModuleMorphism,
};
use crate::error::{contract, internal, Result};
use crate::exactlin::{left_inverse, rank, right_inverse, solve, FieldMatrix, IncrementalSpan, QuotientSpace};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// Coefficients `c` with `Σ c_t A_t = target`, if any.
fn solve_in_span<F: Scalar>(candidates: &[FieldMatrix<F>], target: &FieldMatrix<F>) -> Result<Option<Vec<F>>> {
    let len = target.rows() * target.cols();
    if candidates.is_empty() {
        return Ok(target.is_zero().then(Vec::new));
    }
    let cols: Vec<Vec<F>> = candidates.iter().map(FieldMatrix::to_vec).collect();
    let a = FieldMatrix::from_columns(len, &cols);
    Ok(solve(&a, &FieldMatrix::column_vector(target.to_vec()))?.map(|x| x.to_vec()))
}

/// Finds a combination of `basis` (maps `S → T`) whose image under `apply`
/// equals `target`, and returns that combination.
fn solve_for_map<F: Scalar>(
    basis: &[ModuleMorphism<F>],
    source: &BModule<F>,
    target_module: &BModule<F>,
    apply: impl Fn(&FieldMatrix<F>) -> FieldMatrix<F>,
    target: &FieldMatrix<F>,
) -> Result<Option<ModuleMorphism<F>>> {
    let images: Vec<FieldMatrix<F>> = basis.iter().map(|b| apply(b.matrix())).collect();
    let Some(c) = solve_in_span(&images, target)? else {
        return Ok(None);
    };
    let terms: Vec<(F, &ModuleMorphism<F>)> = c.into_iter().zip(basis).collect();
    Ok(Some(ModuleMorphism::combination(source, target_module, &terms)))
}

/// A basis of the null-homotopic maps `M → N`, each stored with a witness
/// `g : M ⊗ H → N` such that the map is `g ∘ λ_M`.
#[derive(Clone)]
pub struct NullHomotopic<F> {
    pub maps: Vec<ModuleMorphism<F>>,
    pub witnesses: Vec<ModuleMorphism<F>>,
}

pub fn null_homotopic_subspace<F: Scalar>(m: &BModule<F>, n: &BModule<F>) -> Result<NullHomotopic<F>> {
    let lambda = lambda_map(m);
    let mut span = IncrementalSpan::new(m.dim() * n.dim());
    let (mut maps, mut witnesses) = (Vec::new(), Vec::new());
    for g in hom_space(lambda.target(), n)? {
        let f = g.compose(&lambda)?;
        if span.insert(&f.matrix().to_vec()) {
            maps.push(f);
            witnesses.push(g);
        }
    }
    Ok(NullHomotopic { maps, witnesses })
}

/// Some `g : M ⊗ H → N` with `g ∘ λ_M = f`, if `f` is null-homotopic.
pub fn null_homotopy_witness<F: Scalar>(f: &ModuleMorphism<F>) -> Result<Option<ModuleMorphism<F>>> {
    let lambda = lambda_map(f.source());
    let basis = hom_space(lambda.target(), f.target())?;
    solve_for_map(&basis, lambda.target(), f.target(), |g| g.matmul(lambda.matrix()), f.matrix())
}

pub fn is_null_homotopic<F: Scalar>(f: &ModuleMorphism<F>) -> Result<bool> {
    Ok(null_homotopy_witness(f)?.is_some())
}

/// `Hom` in the stable category, as `Hom_B(M, N)` modulo null-homotopic maps.
#[derive(Clone)]
pub struct StableHomSpace<F> {
    pub source: BModule<F>,
    pub target: BModule<F>,
    pub ambient: Vec<ModuleMorphism<F>>,
    pub null: NullHomotopic<F>,
    quotient: QuotientSpace<F>,
}

impl<F: Scalar> StableHomSpace<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Canonical coset representatives (RREF-reduced modulo the null maps).
    pub fn representatives(&self) -> Vec<ModuleMorphism<F>> {
        let (s, t) = (&self.source, &self.target);
        self.quotient
            .representatives()
            .into_iter()
            .map(|v| from_flat(s, t, v))
            .collect()
    }

    /// Coordinates of the class of `f` in the representative basis.
    pub fn coordinates(&self, f: &ModuleMorphism<F>) -> Option<Vec<F>> {
        self.quotient.coordinates(&f.matrix().to_vec())
    }

    pub fn is_null(&self, f: &ModuleMorphism<F>) -> bool {
        self.quotient.is_null(&f.matrix().to_vec())
    }
}

fn from_flat<F: Scalar>(s: &BModule<F>, t: &BModule<F>, v: Vec<F>) -> ModuleMorphism<F> {
    ModuleMorphism::from_parts(s.clone(), t.clone(), FieldMatrix::from_vec(t.dim(), s.dim(), v))
}

pub fn stable_hom<F: Scalar>(m: &BModule<F>, n: &BModule<F>) -> Result<StableHomSpace<F>> {
    let ambient = hom_space(m, n)?;
    let null = null_homotopic_subspace(m, n)?;
    let len = m.dim() * n.dim();
    let flat = |v: &[ModuleMorphism<F>]| {
        FieldMatrix::from_columns(len, &v.iter().map(|f| f.matrix().to_vec()).collect::<Vec<_>>())
    };
    let quotient = QuotientSpace::new(&flat(&ambient), &flat(&null.maps));
    Ok(StableHomSpace { source: m.clone(), target: n.clone(), ambient, null, quotient })
}

/// `Some(g)` with `g ∘ λ_M = id_M` when `M` is a direct summand of `M ⊗ H`,
/// i.e. when `M` is zero in the stable category.
pub fn is_stably_zero<F: Scalar>(m: &BModule<F>) -> Result<Option<ModuleMorphism<F>>> {
    null_homotopy_witness(&ModuleMorphism::identity(m))
}

/// The `E`-projective (equivalently `E`-injective) modules are exactly the
/// stably zero ones.
pub fn is_e_projective<F: Scalar>(m: &BModule<F>) -> Result<bool> {
    Ok(is_stably_zero(&strip_free_summands(m)?)?.is_some())
}

/// A shifted module with its structure map: the projection
/// `M ⊗ H → M[1]` or the inclusion `M[−1] → M ⊗ H`.
#[derive(Clone)]
pub struct Shift<F> {
    pub module: BModule<F>,
    pub map: ModuleMorphism<F>,
}

/// `M[1] = coker λ_M`.
pub fn shift_plus<F: Scalar>(m: &BModule<F>) -> Result<Shift<F>> {
    let (module, map) = cokernel_module(&lambda_map(m))?;
    Ok(Shift { module, map })
}

/// `M[−1] = ker ρ_M`.
pub fn shift_minus<F: Scalar>(m: &BModule<F>) -> Result<Shift<F>> {
    let (module, map) = kernel(&rho_map(m))?;
    Ok(Shift { module, map })
}

/// `M[i]` for `i ≥ 0`.
pub fn shift_plus_n<F: Scalar>(m: &BModule<F>, i: usize) -> Result<BModule<F>> {
    let mut x = m.clone();
    for _ in 0..i {
        x = shift_plus(&x)?.module;
    }
    Ok(x)
}

/// `f[1] : M[1] → N[1]`, induced by `f ⊗ id_H`.
pub fn shift_morphism<F: Scalar>(f: &ModuleMorphism<F>) -> Result<ModuleMorphism<F>> {
    let sx = shift_plus(f.source())?;
    let sy = shift_plus(f.target())?;
    let section = right_inverse(sx.map.matrix()).expect("projection is surjective");
    let m = sy.map.matrix().matmul(f.tensor_h().matrix()).matmul(&section);
    ModuleMorphism::checked(sx.module, sy.module, m, "shifted morphism")
}

/// The cone of `f : M → N`: `C_f = coker((−λ_M, f) : M → M ⊗ H ⊕ N)`.
#[derive(Clone)]
pub struct Cone<F> {
    pub module: BModule<F>,
    /// `N → C_f`.
    pub g: ModuleMorphism<F>,
    /// `C_f → M[1]`.
    pub hbar: ModuleMorphism<F>,
    /// `M → M ⊗ H ⊕ N`.
    pub inflation: ModuleMorphism<F>,
    /// `M ⊗ H ⊕ N → C_f`.
    pub projection: ModuleMorphism<F>,
    pub sum: DirectSum<F>,
    pub shift: Shift<F>,
}

pub fn cone<F: Scalar>(f: &ModuleMorphism<F>) -> Result<Cone<F>> {
    let m = f.source();
    let lambda = lambda_map(m);
    let sum = direct_sum(lambda.target(), f.target())?;
    let u = FieldMatrix::vstack(m.dim(), &[&lambda.matrix().scale(&-F::one()), f.matrix()]);
    let inflation = ModuleMorphism::checked(m.clone(), sum.module.clone(), u, "cone inflation")?;
    let (module, projection) = cokernel_module(&inflation)?;
    let g = projection.compose(&sum.inclusions[1])?;
    let shift = shift_plus(m)?;
    let section = right_inverse(projection.matrix()).expect("projection is surjective");
    let hbar = shift.map.matrix().matmul(sum.projections[0].matrix()).matmul(&section);
    let hbar = ModuleMorphism::checked(module.clone(), shift.module.clone(), hbar, "cone connecting map")?;
    Ok(Cone { module, g, hbar, inflation, projection, sum, shift })
}

/// `f` is a stable isomorphism iff its cone is stably zero.
pub fn stable_iso_test<F: Scalar>(f: &ModuleMorphism<F>) -> Result<bool> {
    let c = strip_free_summands(&cone(f)?.module)?;
    Ok(is_stably_zero(&c)?.is_some())
}

/// Over `B = H`, splits off free summands `Hv ≅ H` (injective, since `H`
/// is Frobenius) until none is found; the result is stably isomorphic to
/// `m`. Other bases are returned unchanged.
pub(crate) fn strip_free_summands<F: Scalar>(m: &BModule<F>) -> Result<BModule<F>> {
    use rand::{rngs::StdRng, SeedableRng};
    let mut m = m.clone();
    if !m.base().is_regular() {
        return Ok(m);
    }
    let nh = m.base().dim();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    'strip: while m.dim() >= nh {
        for _ in 0..16 {
            let v: Vec<F> = (0..m.dim()).map(|_| F::sample(&mut rng)).collect();
            let orbit: Vec<Vec<F>> = m.actions().iter().map(|a| a.apply(&v)).collect();
            let orbit = FieldMatrix::from_columns(m.dim(), &orbit);
            if rank(&orbit) == nh {
                m = crate::bmod::quotient(&m, &orbit)?.0;
                continue 'strip;
            }
        }
        break;
    }
    Ok(m)
}

/// A short exact sequence `0 → M → N → L → 0` that splits after `⊗ H`,
/// with a `B`-linear retraction of `f ⊗ id_H`.
#[derive(Clone)]
pub struct Conflation<F> {
    pub f: ModuleMorphism<F>,
    pub g: ModuleMorphism<F>,
    /// `N ⊗ H → M ⊗ H` with `retraction ∘ (f ⊗ id) = id`.
    pub retraction: ModuleMorphism<F>,
}

fn is_exact_pair<F: Scalar>(f: &ModuleMorphism<F>, g: &ModuleMorphism<F>) -> Result<bool> {
    if f.target() != g.source() {
        return Err(contract!("conflation maps are not composable"));
    }
    let (dm, dn, dl) = (f.source().dim(), f.target().dim(), g.target().dim());
    Ok(dm + dl == dn
        && rank(f.matrix()) == dm
        && rank(g.matrix()) == dl
        && g.matrix().matmul(f.matrix()).is_zero())
}

/// Checks exactness and then searches for a `B`-linear retraction of `f ⊗ id_H`.
pub fn is_conflation<F: Scalar>(f: &ModuleMorphism<F>, g: &ModuleMorphism<F>) -> Result<Option<Conflation<F>>> {
    if !is_exact_pair(f, g)? {
        return Ok(None);
    }
    let fh = f.tensor_h();
    if f.source().base().is_regular() {
        // Untwisting turns f ⊗ id into the plain k-linear f ⊗ id_H, so any
        // linear left inverse of f gives a retraction.
        let (um, un) = (untwist_right(f.source())?, untwist_right(f.target())?);
        let linv = left_inverse(f.matrix()).ok_or_else(|| internal!("inflation is not injective"))?;
        let plain = linv.kron(&FieldMatrix::identity(f.source().hopf().dim()));
        let r = um.backward.matrix().matmul(&plain).matmul(un.forward.matrix());
        let retraction = ModuleMorphism::checked(fh.target().clone(), fh.source().clone(), r, "retraction")?;
        return Ok(Some(Conflation { f: f.clone(), g: g.clone(), retraction }));
    }
    let Some(retraction) = solved_retraction(&fh)? else {
        return Ok(None);
    };
    Ok(Some(Conflation { f: f.clone(), g: g.clone(), retraction }))
}

/// A `B`-linear left inverse of `fh`, solved in the full hom space.
fn solved_retraction<F: Scalar>(fh: &ModuleMorphism<F>) -> Result<Option<ModuleMorphism<F>>> {
    let basis = hom_space(fh.target(), fh.source())?;
    let id = FieldMatrix::identity(fh.source().dim());
    solve_for_map(&basis, fh.target(), fh.source(), |r| r.matmul(fh.matrix()), &id)
}

impl<F: Scalar> Conflation<F> {
    /// Builds the witness from a known `B`-linear section `s` of `g ⊗ id_H`:
    /// the retraction is `(f ⊗ id)⁻¹ ∘ (id − s ∘ (g ⊗ id))`.
    pub fn from_section(f: &ModuleMorphism<F>, g: &ModuleMorphism<F>, section: &ModuleMorphism<F>) -> Result<Self> {
        if !is_exact_pair(f, g)? {
            return Err(contract!("sequence is not exact"));
        }
        let (fh, gh) = (f.tensor_h(), g.tensor_h());
        if !gh.matrix().matmul(section.matrix()).is_identity() {
            return Err(contract!("the given map is not a section of g ⊗ id"));
        }
        let idem = &FieldMatrix::identity(fh.target().dim()) - &section.matrix().matmul(gh.matrix());
        let linv = left_inverse(fh.matrix()).expect("f ⊗ id is injective");
        let retraction = ModuleMorphism::checked(fh.target().clone(), fh.source().clone(), linv.matmul(&idem), "retraction")?;
        Ok(Conflation { f: f.clone(), g: g.clone(), retraction })
    }

    pub fn left(&self) -> &BModule<F> {
        self.f.source()
    }

    pub fn middle(&self) -> &BModule<F> {
        self.f.target()
    }

    pub fn right(&self) -> &BModule<F> {
        self.g.target()
    }

    /// The `B`-linear section `(id − (f ⊗ id) ∘ r) ∘ (g ⊗ id)⁻¹` of `g ⊗ id_H`.
    pub fn section(&self) -> Result<ModuleMorphism<F>> {
        let (fh, gh) = (self.f.tensor_h(), self.g.tensor_h());
        let idem = &FieldMatrix::identity(fh.target().dim()) - &fh.matrix().matmul(self.retraction.matrix());
        let rinv = right_inverse(gh.matrix()).expect("g ⊗ id is surjective");
        ModuleMorphism::checked(gh.target().clone(), gh.source().clone(), idem.matmul(&rinv), "section")
    }

    /// Exactness and the witness identity, re-checked.
    pub fn verify(&self) -> Result<VerificationReport> {
        let mut r = VerificationReport::new();
        r.push("exact", is_exact_pair(&self.f, &self.g)?, None);
        let fh = self.f.tensor_h();
        r.compare("retraction", &self.retraction.matrix().matmul(fh.matrix()), &FieldMatrix::identity(fh.source().dim()));
        r.extend(self.retraction.verify());
        Ok(r)
    }
}

/// `0 → M[−1] → M ⊗ H → M → 0`, split after `⊗ H` by `id ⊗ Δ`.
pub fn syzygy_conflation<F: Scalar>(m: &BModule<F>) -> Result<(Shift<F>, Conflation<F>)> {
    let shift = shift_minus(m)?;
    let c = Conflation::from_section(&shift.map, &rho_map(m), &comult_section(m))?;
    Ok((shift, c))
}

/// `0 → M → M ⊗ H → M[1] → 0`.
pub fn lambda_sequence<F: Scalar>(m: &BModule<F>) -> Result<Conflation<F>> {
    let plus = shift_plus(m)?;
    is_conflation(&lambda_map(m), &plus.map)?.ok_or_else(|| internal!("λ_M is not an inflation"))
}

/// A triangle `M → N → C → M[1]`.
#[derive(Clone)]
pub struct Triangle<F> {
    pub f: ModuleMorphism<F>,
    pub g: ModuleMorphism<F>,
    pub h: ModuleMorphism<F>,
    /// `M[1]` with its projection from `M ⊗ H`.
    pub shift: Shift<F>,
}

impl<F: Scalar> Triangle<F> {
    /// `g ∘ f` and `h ∘ g` vanish stably.
    pub fn verify(&self) -> Result<VerificationReport> {
        let mut r = VerificationReport::new();
        r.push("g_after_f_null", is_null_homotopic(&self.g.compose(&self.f)?)?, None);
        r.push("h_after_g_null", is_null_homotopic(&self.h.compose(&self.g)?)?, None);
        r.push("h_lands_in_shift", *self.h.target() == self.shift.module, None);
        Ok(r)
    }
}

/// The standard triangle `M → N → C_f → M[1]`.
pub fn cone_triangle<F: Scalar>(f: &ModuleMorphism<F>) -> Result<(Triangle<F>, Cone<F>)> {
    let c = cone(f)?;
    let t = Triangle { f: f.clone(), g: c.g.clone(), h: c.hbar.clone(), shift: c.shift.clone() };
    Ok((t, c))
}

/// The triangle of a conflation together with the data that produced it.
#[derive(Clone)]
pub struct ConflationTriangle<F> {
    pub triangle: Triangle<F>,
    pub cone: Cone<F>,
    /// `g₁ : C_f → L`, induced by `(0, g)`; `C_f` is the pushout of
    /// `N ← M → M ⊗ H`.
    pub comparison: ModuleMorphism<F>,
    /// A `B`-linear section of `g₁`.
    pub section: ModuleMorphism<F>,
}

/// Completes a conflation to a triangle `M → N → L → M[1]`.
///
/// The pushout of the conflation along `λ_M` is `0 → M ⊗ H → C_f → L → 0`,
/// which splits since `M ⊗ H` is injective for the exact structure; with a
/// section `σ` of `g₁`, the connecting map is `h = hbar ∘ σ`.
pub fn conflation_to_triangle<F: Scalar>(c: &Conflation<F>) -> Result<ConflationTriangle<F>> {
    let cone = cone(&c.f)?;
    let l = c.right();
    let zero_g = FieldMatrix::hstack(l.dim(), &[&FieldMatrix::zeros(l.dim(), cone.sum.module.dim() - c.middle().dim()), c.g.matrix()]);
    let section_pi = right_inverse(cone.projection.matrix()).expect("projection is surjective");
    let comparison = ModuleMorphism::checked(cone.module.clone(), l.clone(), zero_g.matmul(&section_pi), "pushout map")?;
    let basis = hom_space(l, &cone.module)?;
    let id = FieldMatrix::identity(l.dim());
    let section = solve_for_map(&basis, l, &cone.module, |s| comparison.matrix().matmul(s), &id)?
        .ok_or_else(|| internal!("the pushout sequence of a conflation does not split"))?;
    let h = cone.hbar.compose(&section)?;
    let triangle = Triangle { f: c.f.clone(), g: c.g.clone(), h, shift: cone.shift.clone() };
    Ok(ConflationTriangle { triangle, cone, comparison, section })
}

/// Compares the pushout triangle of a conflation with the cone triangle of
/// its inflation: `g₁` is a stable isomorphism, `g₁ ∘ g_cone = g`, and the
/// connecting maps agree stably.
pub fn compare_triangle_routes<F: Scalar>(ct: &ConflationTriangle<F>) -> Result<VerificationReport> {
    let mut r = VerificationReport::new();
    r.push("comparison_is_stable_iso", stable_iso_test(&ct.comparison)?, None);
    r.push("comparison_commutes", ct.comparison.compose(&ct.cone.g)? == ct.triangle.g, None);
    let diff = ct.triangle.h.compose(&ct.comparison)?.sub(&ct.cone.hbar)?;
    r.push("connecting_maps_agree", is_null_homotopic(&diff)?, None);
    Ok(r)
}

/// The comparison `M → M[−1][1]`: the connecting map of
/// `0 → M[−1] → M ⊗ H → M → 0`.
pub fn shift_unit<F: Scalar>(m: &BModule<F>) -> Result<ModuleMorphism<F>> {
    let (_, c) = syzygy_conflation(m)?;
    Ok(conflation_to_triangle(&c)?.triangle.h)
}

/// Lifts `u : Z ⊗ H → L` through the deflation of `c`: returns
/// `t : Z ⊗ H → N` with `g ∘ t = u`, namely `t = ρ_N ∘ s ∘ (u ⊗ id) ∘ σ_Z`
/// where `s` splits `g ⊗ id` and `σ_Z = id ⊗ Δ`.
pub fn frobenius_lift<F: Scalar>(c: &Conflation<F>, z: &BModule<F>, u: &ModuleMorphism<F>) -> Result<ModuleMorphism<F>> {
    if *u.source() != tensor_h(z) || u.target() != c.right() {
        return Err(contract!("lift: expected a map Z ⊗ H → L"));
    }
    let s = c.section()?;
    let t = rho_map(c.middle()).compose(&s)?.compose(&u.tensor_h())?.compose(&comult_section(z))?;
    if c.g.compose(&t)? != *u {
        return Err(internal!("lift does not factor the given map"));
    }
    Ok(t)
}

/// Extends `v : M → Z ⊗ H` along the inflation of `c`: returns
/// `e : N → Z ⊗ H` with `e ∘ f = v`, namely `e = μ ∘ (v ⊗ id) ∘ r ∘ λ_N`
/// where `r` retracts `f ⊗ id` and `μ` retracts `λ_{Z ⊗ H}`.
pub fn frobenius_extend<F: Scalar>(c: &Conflation<F>, z: &BModule<F>, v: &ModuleMorphism<F>) -> Result<ModuleMorphism<F>> {
    let zh = tensor_h(z);
    if *v.target() != zh || v.source() != c.left() {
        return Err(contract!("extend: expected a map M → Z ⊗ H"));
    }
    let mu = is_stably_zero(&zh)?.ok_or_else(|| internal!("Z ⊗ H is not a summand of Z ⊗ H ⊗ H"))?;
    let e = mu.compose(&v.tensor_h())?.compose(&c.retraction)?.compose(&lambda_map(c.middle()))?;
    if e.compose(&c.f)? != *v {
        return Err(internal!("extension does not restrict to the given map"));
    }
    Ok(e)
}

/// The comparison `M[1][−1] → M`: lift `ρ_{M[1]}` through `M ⊗ H → M[1]`
/// and restrict to the kernel, which lands in `λ_M(M)`.
pub fn shift_counit<F: Scalar>(m: &BModule<F>) -> Result<ModuleMorphism<F>> {
    let lambda = lambda_map(m);
    let plus = shift_plus(m)?;
    let c = lambda_sequence(m)?;
    let x = &plus.module;
    let t = frobenius_lift(&c, x, &rho_map(x))?;
    let minus = shift_minus(x)?;
    let restricted = t.compose(&minus.map)?;
    let linv = left_inverse(lambda.matrix()).expect("λ is injective");
    ModuleMorphism::checked(minus.module, m.clone(), linv.matmul(restricted.matrix()), "shift comparison")
}

/// Which splitting [`transport_splitting`] is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitDirection {
    /// `γ′ : L → N` with `g ∘ γ′ = id`.
    Section,
    /// `β′ : N → M` with `β′ ∘ f = id`.
    Retraction,
}

/// Over `B = A # H`, turns an `A`-linear splitting into a `B`-linear one of
/// the sequence tensored with `H`:
/// `γ(x ⊗ h) = Σ (h₂ · γ′(S⁻¹(h₁) · x)) ⊗ h₃`, where `h ·` is the action of
/// `1 ⊗ h ∈ B`. The retraction case uses the same formula for `β′`.
pub fn transport_splitting<F: Scalar>(
    split: &FieldMatrix<F>,
    f: &ModuleMorphism<F>,
    g: &ModuleMorphism<F>,
    direction: SplitDirection,
) -> Result<ModuleMorphism<F>> {
    if f.target() != g.source() {
        return Err(contract!("sequence maps are not composable"));
    }
    let (x, y) = match direction {
        SplitDirection::Section => (g.target(), g.source()),
        SplitDirection::Retraction => (f.target(), f.source()),
    };
    if split.shape() != (y.dim(), x.dim()) {
        return Err(contract!("splitting has the wrong shape"));
    }
    let base = x.base().clone();
    let hopf = base.hopf().clone();
    let nh = hopf.dim();
    let (embed_h, embed_a): (Box<dyn Fn(&[F]) -> Vec<F>>, Vec<Vec<F>>) = if let Some(a) = base.smash_factor() {
        let b1 = base.clone();
        let elems = (0..a.dim()).map(|i| base.embed_module_algebra(&a.algebra().basis_vector(i)).expect("smash")).collect();
        (Box::new(move |h: &[F]| b1.embed_hopf(h).expect("smash")), elems)
    } else if base.is_regular() {
        (Box::new(|h: &[F]| h.to_vec()), vec![base.algebra().unit().to_vec()])
    } else {
        return Err(contract!("splitting transport needs B = A # H"));
    };
    for a in &embed_a {
        if split.matmul(&x.act_by(a)) != y.act_by(a).matmul(split) {
            return Err(contract!("the given splitting is not A-linear"));
        }
    }
    let splits = match direction {
        SplitDirection::Section => g.matrix().matmul(split).is_identity(),
        SplitDirection::Retraction => split.matmul(f.matrix()).is_identity(),
    };
    if !splits {
        return Err(contract!("the given map does not split the sequence"));
    }
    let hx: Vec<FieldMatrix<F>> = (0..nh).map(|p| x.act_by(&embed_h(&hopf.antipode_inverse().column(p)))).collect();
    let hy: Vec<FieldMatrix<F>> = (0..nh).map(|q| y.act_by(&embed_h(&hopf.algebra().basis_vector(q)))).collect();
    let (dx, dy) = (x.dim(), y.dim());
    let mut out = FieldMatrix::zeros(dy * nh, dx * nh);
    for j in 0..nh {
        for (p, q, r, c) in hopf.triple_coproduct_terms(j) {
            let block = hy[q].matmul(split).matmul(&hx[p]);
            for a in 0..dx {
                for b in 0..dy {
                    let v = &block[(b, a)];
                    if !v.is_zero() {
                        out[(b * nh + r, a * nh + j)] += c.clone() * v.clone();
                    }
                }
            }
        }
    }
    let result = ModuleMorphism::checked(tensor_h(x), tensor_h(y), out, "transported splitting")?;
    let ok = match direction {
        SplitDirection::Section => g.tensor_h().matrix().matmul(result.matrix()).is_identity(),
        SplitDirection::Retraction => result.matrix().matmul(f.tensor_h().matrix()).is_identity(),
    };
    if !ok {
        return Err(internal!("transported map does not split the tensored sequence"));
    }
    Ok(result)
}

/// Exactness of `sHom(X, −)` along `M → N → C → M[1] → N[1] → …`.
#[derive(Clone, Debug)]
pub struct LongExactReport {
    /// `dim sHom(X, Y_k)` for each object in the sequence.
    pub dims: Vec<usize>,
    /// Rank of each induced map.
    pub ranks: Vec<usize>,
    pub report: VerificationReport,
}

/// Applies `sHom(x, −)` to `window` consecutive maps of the rotated triangle
/// and checks exactness at every interior object.
pub fn long_exact_check<F: Scalar>(t: &Triangle<F>, x: &BModule<F>, window: usize) -> Result<LongExactReport> {
    let mut maps: Vec<ModuleMorphism<F>> = vec![t.f.clone(), t.g.clone(), t.h.clone()];
    while maps.len() < window {
        let next = shift_morphism(&maps[maps.len() - 3])?;
        maps.push(next);
    }
    maps.truncate(window);
    let mut objects: Vec<BModule<F>> = maps.iter().map(|m| m.source().clone()).collect();
    if let Some(last) = maps.last() {
        objects.push(last.target().clone());
    }
    for w in maps.windows(2) {
        if w[0].target() != w[1].source() {
            return Err(internal!("rotated triangle maps are not composable"));
        }
    }
    let spaces: Vec<StableHomSpace<F>> = objects.iter().map(|y| stable_hom(x, y)).collect::<Result<_>>()?;
    let mut induced = Vec::with_capacity(maps.len());
    for (k, phi) in maps.iter().enumerate() {
        let (src, tgt) = (&spaces[k], &spaces[k + 1]);
        let cols: Vec<Vec<F>> = src
            .representatives()
            .iter()
            .map(|r| tgt.coordinates(&phi.compose(r)?).ok_or_else(|| internal!("composite left the hom space")))
            .collect::<Result<_>>()?;
        induced.push(FieldMatrix::from_columns(tgt.dim(), &cols));
    }
    let ranks: Vec<usize> = induced.iter().map(rank).collect();
    let mut report = VerificationReport::new();
    for k in 1..maps.len() {
        let composite_zero = induced[k].matmul(&induced[k - 1]).is_zero();
        let exact = composite_zero && spaces[k].dim() - ranks[k] == ranks[k - 1];
        report.push(format!("exact_at_{k}"), exact, None);
    }
    Ok(LongExactReport { dims: spaces.iter().map(StableHomSpace::dim).collect(), ranks, report })
}

/// The pulled-back sequence `0 → M → P → L′ → 0` of a conflation along
/// `u : L′ → L`, with `P = {(n, l′) : g(n) = u(l′)}`.
pub fn pullback<F: Scalar>(c: &Conflation<F>, u: &ModuleMorphism<F>) -> Result<(ModuleMorphism<F>, ModuleMorphism<F>)> {
    if u.target() != c.right() {
        return Err(contract!("pullback: map does not land in the right-hand term"));
    }
    let sum = direct_sum(c.middle(), u.source())?;
    let diff = FieldMatrix::hstack(c.right().dim(), &[c.g.matrix(), &u.matrix().scale(&-F::one())]);
    let (p, inc) = submodule(&sum.module, &crate::exactlin::nullspace(&diff))?;
    let to_p = |m: FieldMatrix<F>| -> Result<FieldMatrix<F>> {
        solve(inc.matrix(), &m)?.ok_or_else(|| internal!("map does not land in the pullback"))
    };
    let f_into_sum = sum.inclusions[0].compose(&c.f)?;
    let f2 = ModuleMorphism::checked(c.left().clone(), p.clone(), to_p(f_into_sum.matrix().clone())?, "pullback inflation")?;
    let g2 = sum.projections[1].compose(&inc)?;
    Ok((f2, g2))
}

/// `ker(g₂ ∘ g₁) → N → L₂` for deflations `g₁ : N → L`, `g₂ : L → L₂`.
pub fn compose_deflations<F: Scalar>(
    g1: &ModuleMorphism<F>,
    g2: &ModuleMorphism<F>,
) -> Result<(ModuleMorphism<F>, ModuleMorphism<F>)> {
    let g = g2.compose(g1)?;
    let (_, inc) = kernel(&g)?;
    Ok((inc, g))
}

/// `(f ⊗ id_U, g ⊗ id_U)` for an `H`-module `U`.
pub fn tensor_sequence<F: Scalar>(
    f: &ModuleMorphism<F>,
    g: &ModuleMorphism<F>,
    u: &BModule<F>,
) -> Result<(ModuleMorphism<F>, ModuleMorphism<F>)> {
    let id = ModuleMorphism::identity(u);
    Ok((tensor_morphisms(f, &id)?, tensor_morphisms(g, &id)?))
}

#[cfg(test)]
mod tests;
