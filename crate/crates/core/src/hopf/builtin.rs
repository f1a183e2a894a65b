use std::fmt;
use std::str::FromStr;

use super::{Algebra, HopfAlgebra, HopfStructure};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::scalar::Scalar;

/// The built-in families of Hopf algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `H = k`.
    Trivial,
    /// `k[d]/(d^p)` with `d` primitive; needs characteristic `p`.
    TruncatedPoly { p: u32 },
    /// The group algebra of a finite group given by its Cayley table
    /// (`table[i][j]` is the index of `g_i g_j`).
    Group { table: Vec<Vec<usize>> },
    /// The group algebra of `Z/n`.
    Cyclic { n: usize },
    /// Sweedler's four-dimensional algebra, basis `1, g, x, gx`; needs
    /// characteristic other than 2.
    Sweedler,
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Trivial => write!(f, "trivial"),
            Builtin::TruncatedPoly { p } => write!(f, "truncated_poly(p={p})"),
            Builtin::Group { table } => write!(f, "group(order={})", table.len()),
            Builtin::Cyclic { n } => write!(f, "cyclic(n={n})"),
            Builtin::Sweedler => write!(f, "sweedler"),
        }
    }
}

/// Parses `trivial`, `sweedler`, `truncated_poly(p=2)`, `cyclic(n=3)`.
/// Group algebras with an explicit table have no string form.
impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(Error::Parameter(format!("malformed builtin reference `{s}`"))),
            None => (s, ""),
        };
        let mut params = Vec::new();
        for part in args.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("expected key=value in `{part}`")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parameter(format!("parameter `{}` is not a nonnegative integer", k.trim())))?;
            params.push((k.trim().to_string(), v));
        }
        let get = |key: &str| -> Result<u64> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Parameter(format!("builtin `{name}` needs parameter `{key}`")))
        };
        let allow = |keys: &[&str]| -> Result<()> {
            match params.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
                Some((k, _)) => Err(Error::Parameter(format!("unknown parameter `{k}` for builtin `{name}`"))),
                None => Ok(()),
            }
        };
        match name.trim() {
            "trivial" => allow(&[]).map(|_| Builtin::Trivial),
            "sweedler" => allow(&[]).map(|_| Builtin::Sweedler),
            "truncated_poly" => {
                allow(&["p"])?;
                let p = u32::try_from(get("p")?).map_err(|_| Error::Parameter("p is too large".into()))?;
                Ok(Builtin::TruncatedPoly { p })
            }
            "cyclic" => {
                allow(&["n"])?;
                Ok(Builtin::Cyclic { n: get("n")? as usize })
            }
            other => Err(Error::Parameter(format!("unknown builtin `{other}`"))),
        }
    }
}

/// Cayley table of `Z/n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Builds a built-in Hopf algebra over `F`.
pub fn builtin<F: Scalar>(which: &Builtin) -> Result<HopfAlgebra<F>> {
    let structure = match which {
        Builtin::Trivial => trivial(),
        Builtin::TruncatedPoly { p } => truncated_poly(*p)?,
        Builtin::Group { table } => group(table)?,
        Builtin::Cyclic { n } => {
            if *n == 0 {
                return Err(Error::Parameter("cyclic group needs n ≥ 1".into()));
            }
            group(&cyclic_table(*n))?
        }
        Builtin::Sweedler => sweedler()?,
    };
    HopfAlgebra::new(structure)
}

fn trivial<F: Scalar>() -> HopfStructure<F> {
    let one = FieldMatrix::identity(1);
    HopfStructure {
        algebra: Algebra::ground_field(),
        comult: one.clone(),
        counit: one.clone(),
        antipode: one.clone(),
        antipode_inverse: one,
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut c: i128 = 1;
    for i in 0..k {
        c = c * (n - i) as i128 / (i + 1) as i128;
    }
    i64::try_from(c).expect("binomial fits")
}

fn truncated_poly<F: Scalar>(p: u32) -> Result<HopfStructure<F>> {
    if !crate::scalar::is_prime(p) {
        return Err(Error::Parameter(format!("truncated_poly needs a prime p, got {p}")));
    }
    if F::characteristic() != p as u64 {
        return Err(Error::Parameter(format!(
            "truncated_poly(p={p}) needs characteristic {p}, the field has characteristic {}",
            F::characteristic()
        )));
    }
    let n = p as usize;
    let mut unit = vec![F::zero(); n];
    unit[0] = F::one();
    let algebra = Algebra::from_basis_product(n, unit, |i, j| {
        let mut v = vec![F::zero(); n];
        if i + j < n {
            v[i + j] = F::one();
        }
        v
    })?;
    let mut comult = FieldMatrix::zeros(n * n, n);
    for k in 0..n {
        for j in 0..=k {
            comult[(j * n + (k - j), k)] = F::from_i64(binomial(k, j));
        }
    }
    let mut counit = FieldMatrix::zeros(1, n);
    counit[(0, 0)] = F::one();
    let antipode = FieldMatrix::from_fn(n, n, |i, j| {
        if i != j {
            F::zero()
        } else if i % 2 == 0 {
            F::one()
        } else {
            -F::one()
        }
    });
    HopfStructure::new(algebra, comult, counit, antipode)
}

fn group<F: Scalar>(table: &[Vec<usize>]) -> Result<HopfStructure<F>> {
    let n = table.len();
    let bad = |msg: String| Err(Error::Parameter(format!("invalid Cayley table: {msg}")));
    if n == 0 {
        return bad("empty".into());
    }
    if let Some(i) = table.iter().position(|row| row.len() != n) {
        return bad(format!("row {i} has {} entries, expected {n}", table[i].len()));
    }
    if table.iter().flatten().any(|&x| x >= n) {
        return bad("entry out of range".into());
    }
    let Some(e) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
        return bad("no identity element".into());
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return bad(format!("not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    let mut inv = vec![0; n];
    for (g, slot) in inv.iter_mut().enumerate() {
        match (0..n).find(|&h| table[g][h] == e) {
            Some(h) => *slot = h,
            None => return bad(format!("element {g} has no inverse")),
        }
    }
    let mut unit = vec![F::zero(); n];
    unit[e] = F::one();
    let algebra = Algebra::from_basis_product(n, unit, |i, j| {
        let mut v = vec![F::zero(); n];
        v[table[i][j]] = F::one();
        v
    })?;
    let comult = FieldMatrix::from_fn(n * n, n, |r, g| if r == g * n + g { F::one() } else { F::zero() });
    let counit = FieldMatrix::from_fn(1, n, |_, _| F::one());
    let antipode = FieldMatrix::from_fn(n, n, |r, g| if r == inv[g] { F::one() } else { F::zero() });
    HopfStructure::new(algebra, comult, counit, antipode)
}

fn sweedler<F: Scalar>() -> Result<HopfStructure<F>> {
    if F::characteristic() == 2 {
        return Err(Error::Parameter("Sweedler's algebra needs characteristic other than 2".into()));
    }
    // g^a x^b sits at index a + 2b.
    let idx = |a: usize, b: usize| a + 2 * b;
    let algebra = Algebra::from_basis_product(4, vec![F::one(), F::zero(), F::zero(), F::zero()], |i, j| {
        let (a, b, c, d) = (i % 2, i / 2, j % 2, j / 2);
        let mut v = vec![F::zero(); 4];
        if b + d < 2 {
            let sign = if b * c == 1 { -F::one() } else { F::one() };
            v[idx((a + c) % 2, b + d)] = sign;
        }
        v
    })?;
    let mut comult = FieldMatrix::zeros(16, 4);
    let mut set = |src: usize, l: usize, r: usize| comult[(l * 4 + r, src)] = F::one();
    let (one, g, x, gx) = (0, 1, 2, 3);
    set(one, one, one);
    set(g, g, g);
    set(x, x, one);
    set(x, g, x);
    set(gx, gx, g);
    set(gx, one, gx);
    let counit = FieldMatrix::row_vector(vec![F::one(), F::one(), F::zero(), F::zero()]);
    let mut antipode = FieldMatrix::zeros(4, 4);
    antipode[(one, one)] = F::one();
    antipode[(g, g)] = F::one();
    antipode[(gx, x)] = -F::one();
    antipode[(x, gx)] = F::one();
    HopfStructure::new(algebra, comult, counit, antipode)
}
