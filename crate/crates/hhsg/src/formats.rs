//! Text formats for algebras, free resolutions and matrix factorizations.
//!
//! All three are line based. `#` starts a comment, blank lines are ignored,
//! and a header line has the form `key: value`. Numbers are integers or
//! fractions `a/b`, separated by whitespace.
//!
//! Algebra file:
//!
//! ```text
//! field: Q                # optional; must match the run's field
//! labels: 1 x             # basis labels, one per basis vector
//! unit: 1 0               # coordinates of the unit
//! structure:              # d*d rows, row i*d+j holds the coordinates of b_i b_j
//! 1 0
//! 0 1
//! 0 1
//! 0 0
//! ```
//!
//! Resolution file, for a free resolution of `A` over `A ⊗ A^op`:
//!
//! ```text
//! algebra: dual-numbers.alg   # relative to the resolution file
//! module: bimodule
//! ranks: 1 1 1                # ranks of P^0, P^-1, ..., P^-L
//! augmentation:               # rank(0) rows of length dim A
//! 1 0
//! differential 1:             # rank(t) rows of length rank(t-1) * dim(A)^2
//! 0 -1 1 0
//! differential 2:
//! 1 0 0 1
//! periodic: 2                 # optional: repeat the last 2 differentials on demand
//! ```
//!
//! The coordinate `g * dim(A)^2 + i * dim(A) + j` of a row is the coefficient
//! of `(b_i ⊗ b_j) e_g`.
//!
//! Matrix factorization file:
//!
//! ```text
//! vars: x, y
//! potential: x*y
//! size: 1
//! phi:                        # size rows, entries separated by commas
//! x
//! psi:
//! y
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use hhsg_core::algebra::{FinDimAlgebra, FinDimModule};
use hhsg_core::field::Field;
use hhsg_core::linalg::{self, SparseVec};
use hhsg_core::mfactor::{make_mf, MatrixFactorization, PolyMatrix};
use hhsg_core::polyring::PolyRing;
use hhsg_core::tate::{bimodule_data, FreeResolution, Provenance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn header<'a>(line: &'a str) -> Option<(&'a str, &'a str)> {
    let (k, v) = line.split_once(':')?;
    let k = k.trim();
    if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == ' ' || c == '-' || c == '_') {
        return None;
    }
    Some((k, v.trim()))
}

/// Parses a scalar through the polynomial grammar with no variables.
pub fn parse_scalar<F: Field>(field: &F, text: &str) -> Result<F::Elem, String> {
    let ring = PolyRing::new(field.clone(), Vec::new());
    let p = ring.parse(text).map_err(|e| format!("bad number {:?}: {}", text, e))?;
    if p.num_terms() > 1 {
        return Err(format!("bad number {:?}", text));
    }
    Ok(p.coeff(&[]).cloned().unwrap_or_else(|| field.zero()))
}

fn scalar_row<F: Field>(field: &F, line: usize, text: &str, len: usize) -> Result<Vec<F::Elem>, FormatError> {
    let row: Vec<F::Elem> =
        text.split_whitespace().map(|t| parse_scalar(field, t).map_err(|m| err(line, m))).collect::<Result<_, _>>()?;
    if row.len() != len {
        return Err(err(line, format!("expected {} entries, found {}", len, row.len())));
    }
    Ok(row)
}

fn check_field<F: Field>(field: &F, line: usize, value: &str) -> Result<(), FormatError> {
    let declared = crate::cli::FieldChoice::parse(value).map_err(|m| err(line, m))?;
    if declared.name() != field.name() {
        return Err(err(line, format!("file is over {}, but the run uses {}", declared.name(), field.name())));
    }
    Ok(())
}

/// Parses an algebra file. Associativity and the unit law are checked
/// separately by [`FinDimAlgebra::new`].
pub fn parse_algebra_unchecked<F: Field>(field: &F, text: &str) -> Result<FinDimAlgebra<F>, FormatError> {
    let ls = lines(text);
    let mut labels: Option<Vec<String>> = None;
    let mut unit = None;
    let mut structure = None;
    let mut i = 0;
    while i < ls.len() {
        let (n, l) = ls[i];
        let Some((key, value)) = header(l) else {
            return Err(err(n, format!("expected a header, found {:?}", l)));
        };
        match key {
            "field" => check_field(field, n, value)?,
            "labels" => labels = Some(value.split_whitespace().map(String::from).collect()),
            "unit" => {
                let d = labels.as_ref().ok_or_else(|| err(n, "unit before labels"))?.len();
                unit = Some(scalar_row(field, n, value, d)?);
            }
            "structure" => {
                let d = labels.as_ref().ok_or_else(|| err(n, "structure before labels"))?.len();
                let mut c = Vec::with_capacity(d * d * d);
                for _ in 0..d * d {
                    i += 1;
                    let (n, l) = *ls.get(i).ok_or_else(|| err(0, format!("structure needs {} rows", d * d)))?;
                    c.extend(scalar_row(field, n, l, d)?);
                }
                structure = Some(c);
            }
            _ => return Err(err(n, format!("unknown key {:?}", key))),
        }
        i += 1;
    }
    let labels = labels.ok_or_else(|| err(0, "missing labels"))?;
    let unit = unit.ok_or_else(|| err(0, "missing unit"))?;
    let structure = structure.ok_or_else(|| err(0, "missing structure"))?;
    FinDimAlgebra::new_unchecked(field.clone(), labels, structure, unit).map_err(|e| err(0, e.to_string()))
}

pub fn write_algebra<F: Field>(a: &FinDimAlgebra<F>) -> String {
    let f = a.field();
    let d = a.dim();
    let row = |v: &[F::Elem]| v.iter().map(|x| format!("{}", f.display(x))).collect::<Vec<_>>().join(" ");
    let mut out = format!("field: {}\nlabels: {}\nunit: {}\nstructure:\n", f.name(), a.labels().join(" "), row(a.unit()));
    for i in 0..d {
        for j in 0..d {
            out.push_str(&row(a.basis_product(i, j)));
            out.push('\n');
        }
    }
    out
}

/// A resolution file after parsing, before validation.
#[derive(Debug)]
pub struct ResolutionSpec<F: Field> {
    pub algebra_path: PathBuf,
    pub algebra: FinDimAlgebra<F>,
    pub ring: FinDimAlgebra<F>,
    pub module: FinDimModule<F>,
    pub ranks: Vec<usize>,
    pub images: Vec<Vec<SparseVec<F::Elem>>>,
    pub augmentation: Vec<Vec<F::Elem>>,
    pub period: Option<usize>,
}

impl<F: Field> ResolutionSpec<F> {
    pub fn build(&self) -> Result<FreeResolution<F>, hhsg_core::tate::ResolutionErrors> {
        FreeResolution::new(
            self.ring.clone(),
            self.module.clone(),
            self.ranks.clone(),
            self.images.clone(),
            self.augmentation.clone(),
            Provenance::UserSupplied,
        )
    }
}

/// Parses a resolution file; `base` is the directory of the file, against
/// which the algebra path is resolved. The algebra itself is validated.
pub fn parse_resolution<F: Field>(field: &F, text: &str, base: &Path) -> Result<ResolutionSpec<F>, FormatError> {
    let ls = lines(text);
    let mut algebra: Option<(PathBuf, FinDimAlgebra<F>)> = None;
    let mut ranks: Option<Vec<usize>> = None;
    let mut augmentation = None;
    let mut diffs: Vec<Option<Vec<SparseVec<F::Elem>>>> = Vec::new();
    let mut period = None;
    let mut module_seen = false;
    let mut i = 0;
    while i < ls.len() {
        let (n, l) = ls[i];
        let Some((key, value)) = header(l) else {
            return Err(err(n, format!("expected a header, found {:?}", l)));
        };
        let need_ranks = || ranks.clone().ok_or_else(|| err(n, "ranks must come first"));
        let need_dim = || algebra.as_ref().map(|(_, a)| a.dim()).ok_or_else(|| err(n, "algebra must come first"));
        match key {
            "field" => check_field(field, n, value)?,
            "algebra" => {
                let path = base.join(value);
                let text = std::fs::read_to_string(&path).map_err(|e| err(n, format!("{}: {}", path.display(), e)))?;
                let a = parse_algebra_unchecked(field, &text)
                    .map_err(|e| err(n, format!("{}: {}", path.display(), e)))?;
                let a = FinDimAlgebra::new(a.field().clone(), a.labels().to_vec(), a.structure().to_vec(), a.unit().to_vec())
                    .map_err(|e| err(n, format!("{}: {}", path.display(), e)))?;
                algebra = Some((path, a));
            }
            "module" => {
                if value != "bimodule" {
                    return Err(err(n, format!("unsupported module {:?}", value)));
                }
                module_seen = true;
            }
            "ranks" => {
                let r: Vec<usize> = value
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(n, format!("bad rank {:?}", t))))
                    .collect::<Result<_, _>>()?;
                if r.is_empty() {
                    return Err(err(n, "no ranks"));
                }
                diffs = vec![None; r.len() - 1];
                ranks = Some(r);
            }
            "augmentation" => {
                let r = need_ranks()?;
                let d = need_dim()?;
                let mut rows = Vec::new();
                for _ in 0..r[0] {
                    i += 1;
                    let (n, l) = *ls.get(i).ok_or_else(|| err(0, "augmentation is cut short"))?;
                    rows.push(scalar_row(field, n, l, d)?);
                }
                augmentation = Some(rows);
            }
            "periodic" => {
                let p: usize = value.parse().map_err(|_| err(n, format!("bad period {:?}", value)))?;
                period = Some(p);
            }
            _ if key.starts_with("differential ") => {
                let r = need_ranks()?;
                let d = need_dim()?;
                let t: usize = key["differential ".len()..]
                    .trim()
                    .parse()
                    .map_err(|_| err(n, format!("bad differential index in {:?}", key)))?;
                if t == 0 || t >= r.len() {
                    return Err(err(n, format!("differential {} out of range 1..={}", t, r.len() - 1)));
                }
                if diffs[t - 1].is_some() {
                    return Err(err(n, format!("differential {} given twice", t)));
                }
                let width = r[t - 1] * d * d;
                let mut rows = Vec::new();
                for _ in 0..r[t] {
                    i += 1;
                    let (n, l) = *ls.get(i).ok_or_else(|| err(0, format!("differential {} is cut short", t)))?;
                    rows.push(linalg::sparse_from_dense(field, &scalar_row(field, n, l, width)?));
                }
                diffs[t - 1] = Some(rows);
            }
            _ => return Err(err(n, format!("unknown key {:?}", key))),
        }
        i += 1;
    }
    let (algebra_path, algebra) = algebra.ok_or_else(|| err(0, "missing algebra"))?;
    if !module_seen {
        return Err(err(0, "missing module"));
    }
    let ranks = ranks.ok_or_else(|| err(0, "missing ranks"))?;
    let augmentation = augmentation.ok_or_else(|| err(0, "missing augmentation"))?;
    let images = diffs
        .into_iter()
        .enumerate()
        .map(|(t, d)| d.ok_or_else(|| err(0, format!("missing differential {}", t + 1))))
        .collect::<Result<_, _>>()?;
    let (ring, module) = bimodule_data(&algebra).map_err(|e| err(0, e.to_string()))?;
    Ok(ResolutionSpec { algebra_path, algebra, ring, module, ranks, images, augmentation, period })
}

fn poly_row<F: Field>(
    ring: &PolyRing<F>,
    line: usize,
    text: &str,
    size: usize,
) -> Result<Vec<hhsg_core::polyring::MultiPoly<F::Elem>>, FormatError> {
    let row: Vec<_> = text
        .split(',')
        .map(|t| ring.parse(t).map_err(|e| err(line, format!("{:?}: {}", t.trim(), e))))
        .collect::<Result<_, _>>()?;
    if row.len() != size {
        return Err(err(line, format!("expected {} entries, found {}", size, row.len())));
    }
    Ok(row)
}

/// A matrix factorization file after parsing; validation is separate.
#[derive(Debug)]
pub struct MfSpec<F: Field> {
    pub ring: PolyRing<F>,
    pub potential: hhsg_core::polyring::MultiPoly<F::Elem>,
    pub phi: PolyMatrix<F::Elem>,
    pub psi: PolyMatrix<F::Elem>,
}

impl<F: Field> MfSpec<F> {
    pub fn build(&self) -> Result<MatrixFactorization<F>, hhsg_core::mfactor::MfError> {
        make_mf(&self.ring, self.phi.clone(), self.psi.clone(), self.potential.clone())
    }
}

pub fn parse_mf<F: Field>(field: &F, text: &str) -> Result<MfSpec<F>, FormatError> {
    let ls = lines(text);
    let mut ring: Option<PolyRing<F>> = None;
    let mut potential = None;
    let mut size: Option<usize> = None;
    let mut phi = None;
    let mut psi = None;
    let mut i = 0;
    while i < ls.len() {
        let (n, l) = ls[i];
        let Some((key, value)) = header(l) else {
            return Err(err(n, format!("expected a header, found {:?}", l)));
        };
        match key {
            "field" => check_field(field, n, value)?,
            "vars" => {
                let vars: Vec<String> = value.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
                ring = Some(PolyRing::new(field.clone(), vars));
            }
            "potential" => {
                let r = ring.as_ref().ok_or_else(|| err(n, "vars must come first"))?;
                potential = Some(r.parse(value).map_err(|e| err(n, e.to_string()))?);
            }
            "size" => size = Some(value.parse().map_err(|_| err(n, format!("bad size {:?}", value)))?),
            "phi" | "psi" => {
                let r = ring.as_ref().ok_or_else(|| err(n, "vars must come first"))?;
                let s = size.ok_or_else(|| err(n, "size must come first"))?;
                let mut m = Vec::new();
                for _ in 0..s {
                    i += 1;
                    let (n, l) = *ls.get(i).ok_or_else(|| err(0, format!("{} is cut short", key)))?;
                    m.push(poly_row(r, n, l, s)?);
                }
                if key == "phi" {
                    phi = Some(m);
                } else {
                    psi = Some(m);
                }
            }
            _ => return Err(err(n, format!("unknown key {:?}", key))),
        }
        i += 1;
    }
    Ok(MfSpec {
        ring: ring.ok_or_else(|| err(0, "missing vars"))?,
        potential: potential.ok_or_else(|| err(0, "missing potential"))?,
        phi: phi.ok_or_else(|| err(0, "missing phi"))?,
        psi: psi.ok_or_else(|| err(0, "missing psi"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hhsg_core::field::{PrimeField, Rational, Rationals};

    const DUAL: &str = "labels: 1 x\nunit: 1 0\nstructure:\n1 0\n0 1\n0 1\n0 0\n";

    #[test]
    fn algebra_round_trip() {
        let a = parse_algebra_unchecked(&Rationals, DUAL).unwrap();
        assert_eq!(a.structure(), FinDimAlgebra::truncated_polynomial(Rationals, 2).structure());
        let again = parse_algebra_unchecked(&Rationals, &write_algebra(&a)).unwrap();
        assert_eq!(again.structure(), a.structure());
        assert_eq!(again.labels(), a.labels());
    }

    #[test]
    fn algebra_errors_have_lines() {
        let e = parse_algebra_unchecked(&Rationals, "labels: 1 x\nunit: 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_algebra_unchecked(&Rationals, "labels: 1\nunit: 1\nstructure:\n1/0\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_algebra_unchecked(&Rationals, &format!("field: GF(7)\n{}", DUAL)).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_algebra_unchecked(&PrimeField::new(7).unwrap(), &format!("field: GF(7)\n{}", DUAL)).is_ok());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar(&Rationals, "-3/6").unwrap(), Rational::new(-1, 2));
        assert!(parse_scalar(&Rationals, "x").is_err());
        assert_eq!(parse_scalar(&PrimeField::new(5).unwrap(), "1/2").unwrap(), 3);
    }

    #[test]
    fn factorization_file() {
        let spec = parse_mf(&Rationals, "vars: x, y\npotential: x*y\nsize: 1\nphi:\nx\npsi:\ny\n").unwrap();
        assert!(spec.build().is_ok());
        let spec = parse_mf(&Rationals, "vars: x, y\npotential: x*y\nsize: 1\nphi:\nx\npsi:\nx\n").unwrap();
        assert!(spec.build().is_err());
        let e = parse_mf(&Rationals, "vars: x\npotential: x^2\nsize: 2\nphi:\nx, 0\n0\n").unwrap_err();
        assert_eq!(e.line, 6);
    }
}
