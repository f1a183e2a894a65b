//! The fixed family of small comodule algebras that property suites and the
//! command line sweep over, plus seeded generators of modules, morphisms
//! and conflations over each.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bmod::{
    direct_sum, generated_submodule, hom_space, quotient, rho_map, BModule, ModuleMorphism,
};
use crate::comod::{regular_comodule, smash_product, ComoduleAlgebra, ModuleAlgebra};
use crate::error::{internal, parameter, Result};
use crate::exactlin::FieldMatrix;
use crate::hopf::{builtin, Algebra, Builtin};
use crate::scalar::{Fp, Scalar};
use crate::stable::{cone, is_conflation, lambda_sequence, syzygy_conflation, Conflation};

/// A comodule algebra `B` with a few modules to build random ones from.
#[derive(Clone)]
pub struct CorpusEntry<F> {
    pub name: String,
    pub base: Arc<ComoduleAlgebra<F>>,
    pub seeds: Vec<BModule<F>>,
}

impl<F: Scalar> CorpusEntry<F> {
    /// `B = H` with seeds `H` and `k`.
    pub fn hopf(name: &str, b: &Builtin) -> Result<Self> {
        let base = regular_comodule(&Arc::new(builtin(b)?));
        let seeds = vec![BModule::regular(base.clone()), BModule::trivial(base.clone())?];
        Ok(CorpusEntry { name: name.to_string(), base, seeds })
    }

    /// A smash product `A # H` with seeds `B` and `A`.
    pub fn smash(name: &str, a: &Arc<ModuleAlgebra<F>>) -> Result<Self> {
        let base = smash_product(a)?;
        let seeds = vec![BModule::regular(base.clone()), BModule::natural(base.clone())?];
        Ok(CorpusEntry { name: name.to_string(), base, seeds })
    }

    /// The entry for `H` itself, whose modules are the `H`-modules used in
    /// tensor products.
    pub fn hopf_entry(&self) -> Result<Self> {
        if self.base.is_regular() {
            return Ok(self.clone());
        }
        let base = regular_comodule(self.base.hopf());
        let seeds = vec![BModule::regular(base.clone()), BModule::trivial(base.clone())?];
        Ok(CorpusEntry { name: format!("{} (H)", self.name), base, seeds })
    }

    pub fn is_semisimple(&self) -> bool {
        self.base.hopf().is_semisimple()
    }
}

/// `GF(2)[x]/(x²) # GF(2)[d]/(d²)` with `d · x = 1`.
pub fn truncated_smash() -> Result<Arc<ModuleAlgebra<Fp<2>>>> {
    let h = Arc::new(builtin::<Fp<2>>(&Builtin::TruncatedPoly { p: 2 })?);
    let one = Fp::<2>::new(1);
    let alg = Algebra::from_basis_product(2, vec![one, Fp::new(0)], |i, j| {
        let mut v = vec![Fp::new(0); 2];
        if i + j < 2 {
            v[i + j] = one;
        }
        v
    })?;
    let act = FieldMatrix::from_i64_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
    Ok(Arc::new(ModuleAlgebra::new(alg, act, h)?))
}

/// Visits corpus entries over their various fields.
pub trait CorpusVisitor {
    fn visit<F: Scalar>(&mut self, entry: &CorpusEntry<F>) -> Result<()>;
}

/// Names of the corpus entries, in visiting order.
pub const CORPUS: [&str; 7] = [
    "trivial/GF(2)",
    "GF(2)[d]/(d^2)",
    "GF(3)[d]/(d^3)",
    "GF(2)[Z/2]",
    "GF(3)[Z/2]",
    "H4/GF(5)",
    "GF(2)[x]/(x^2) # GF(2)[d]/(d^2)",
];

pub fn for_each_corpus<V: CorpusVisitor>(v: &mut V) -> Result<()> {
    v.visit(&CorpusEntry::<Fp<2>>::hopf(CORPUS[0], &Builtin::Trivial)?)?;
    v.visit(&CorpusEntry::<Fp<2>>::hopf(CORPUS[1], &Builtin::TruncatedPoly { p: 2 })?)?;
    v.visit(&CorpusEntry::<Fp<3>>::hopf(CORPUS[2], &Builtin::TruncatedPoly { p: 3 })?)?;
    v.visit(&CorpusEntry::<Fp<2>>::hopf(CORPUS[3], &Builtin::Cyclic { n: 2 })?)?;
    v.visit(&CorpusEntry::<Fp<3>>::hopf(CORPUS[4], &Builtin::Cyclic { n: 2 })?)?;
    v.visit(&CorpusEntry::<Fp<5>>::hopf(CORPUS[5], &Builtin::Sweedler)?)?;
    v.visit(&CorpusEntry::smash(CORPUS[6], &truncated_smash()?)?)?;
    Ok(())
}

fn random_vector<F: Scalar, R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<F> {
    loop {
        let v: Vec<F> = (0..len).map(|_| F::sample(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A random module of dimension `1 ..= max_dim`: a seed, a cyclic
/// submodule or quotient of a seed, or a direct sum of smaller ones.
///
/// Fails with a parameter error when no such module turns up, e.g. when
/// every nonzero module is larger than `max_dim`.
pub fn random_module<F: Scalar, R: Rng + ?Sized>(entry: &CorpusEntry<F>, rng: &mut R, max_dim: usize) -> Result<BModule<F>> {
    try_random_module(entry, rng, max_dim, 256)?
        .ok_or_else(|| parameter!("no module of dimension at most {max_dim} found over {}", entry.name))
}

fn try_random_module<F: Scalar, R: Rng + ?Sized>(
    entry: &CorpusEntry<F>,
    rng: &mut R,
    max_dim: usize,
    attempts: usize,
) -> Result<Option<BModule<F>>> {
    for _ in 0..attempts {
        let seed = entry.seeds.choose(rng).expect("corpus entries have seeds");
        let candidate = match rng.gen_range(0..4) {
            0 => seed.clone(),
            1 => generated_submodule(seed, &FieldMatrix::column_vector(random_vector(rng, seed.dim())))?.0,
            2 => {
                let (_, inc) = generated_submodule(seed, &FieldMatrix::column_vector(random_vector(rng, seed.dim())))?;
                quotient(seed, inc.matrix())?.0
            }
            _ if max_dim >= 2 => {
                let Some(a) = try_random_module(entry, rng, max_dim - 1, 8)? else { continue };
                let Some(b) = try_random_module(entry, rng, max_dim - a.dim(), 8)? else { continue };
                direct_sum(&a, &b)?.module
            }
            _ => continue,
        };
        if (1..=max_dim).contains(&candidate.dim()) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// A random `B`-linear map, as a random combination of a hom basis.
pub fn random_morphism<F: Scalar, R: Rng + ?Sized>(rng: &mut R, m: &BModule<F>, n: &BModule<F>) -> Result<ModuleMorphism<F>> {
    let basis = hom_space(m, n)?;
    let terms: Vec<(F, &ModuleMorphism<F>)> = basis.iter().map(|f| (F::sample(rng), f)).collect();
    Ok(ModuleMorphism::combination(m, n, &terms))
}

/// How a generated conflation was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConflationKind {
    /// `0 → M → M ⊗ H ⊕ N → C_f → 0`.
    Cone,
    /// `0 → M[−1] → M ⊗ H → M → 0`.
    Syzygy,
    /// `0 → M → M ⊗ H → M[1] → 0`.
    Lambda,
    /// `0 → M → M ⊕ N → N → 0`.
    Split,
    /// `0 → S → M → M/S → 0` for a submodule `S`; for `B = H` every such
    /// sequence is a conflation.
    Submodule,
}

/// A random conflation whose middle term has dimension at most
/// `max_middle`, with its witness.
pub fn random_conflation<F: Scalar, R: Rng + ?Sized>(
    entry: &CorpusEntry<F>,
    rng: &mut R,
    max_dim: usize,
    max_middle: usize,
) -> Result<(ConflationKind, Conflation<F>)> {
    let nh = entry.base.hopf().dim();
    loop {
        let kind = *[
            ConflationKind::Cone,
            ConflationKind::Syzygy,
            ConflationKind::Lambda,
            ConflationKind::Split,
            ConflationKind::Submodule,
        ]
        .choose(rng)
        .expect("nonempty");
        let m = random_module(entry, rng, max_dim)?;
        let c = match kind {
            ConflationKind::Cone => {
                let n = random_module(entry, rng, max_dim)?;
                if m.dim() * nh + n.dim() > max_middle {
                    continue;
                }
                let f = random_morphism(rng, &m, &n)?;
                let c = cone(&f)?;
                is_conflation(&c.inflation, &c.projection)?
            }
            ConflationKind::Syzygy | ConflationKind::Lambda if m.dim() * nh > max_middle => continue,
            ConflationKind::Syzygy => Some(syzygy_conflation(&m)?.1),
            ConflationKind::Lambda => Some(lambda_sequence(&m)?),
            ConflationKind::Split => {
                let n = random_module(entry, rng, max_dim)?;
                if m.dim() + n.dim() > max_middle {
                    continue;
                }
                let s = direct_sum(&m, &n)?;
                is_conflation(&s.inclusions[0], &s.projections[1])?
            }
            ConflationKind::Submodule => {
                if !entry.base.is_regular() {
                    continue;
                }
                let (_, inc) = generated_submodule(&m, &FieldMatrix::column_vector(random_vector(rng, m.dim())))?;
                let (_, proj) = quotient(&m, inc.matrix())?;
                is_conflation(&inc, &proj)?
            }
        };
        if let Some(c) = c {
            return Ok((kind, c));
        }
        return Err(internal!("a {kind:?} sequence failed to be a conflation"));
    }
}

/// `ρ_N` followed by the deflation of `c`: a composite of two deflations.
pub fn composite_with_rho<F: Scalar>(c: &Conflation<F>) -> Result<ModuleMorphism<F>> {
    c.g.compose(&rho_map(c.middle()))
}
