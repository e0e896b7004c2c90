//! TOML file formats: algebra definitions, extension definitions, Pfaffian
//! data and chart scenarios. Indices in files are 1-based; coefficients are
//! exact `"p/q"` strings.

use crate::algebra::{
    abelian, gl_matrices, heisenberg, so_matrices, sp_k1_matrices,
    AlmostLieAlgebra,
};
use crate::chart::{ChartBox, DEFAULT_FD_STEP, DEFAULT_GRID, DEFAULT_TOL};
use crate::curvature::FlatnessScenario;
use crate::expr::parse as parse_expr;
use crate::extension::{
    complete_splitting, CartanTypeExtension, OneSided, RepExtension, SplittingPair,
};
use crate::form::{FrameField, VForm1};
use crate::jet::{jet2_algebra, second_order_model, SecondOrderModel};
use crate::linalg::{parse_rational, RatMat, Rational};
use crate::pfaffian::PfaffianGroupData;
use crate::rep::LinearRep;
use num::Zero;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("toml parse error: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("io error reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad index in {context}: {index} (dimension {dim})")]
    BadIndex { context: &'static str, index: usize, dim: usize },
    #[error("bracket table conflicts with antisymmetry at (j={j}, k={k})")]
    AntisymmetryConflict { j: usize, k: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Rational(#[from] crate::linalg::LinAlgError),
    #[error("algebra error: {0}")]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error("expression error in {context}: {message}")]
    Expr { context: String, message: String },
    #[error("chart error: {0}")]
    Chart(#[from] crate::chart::ChartError),
    #[error("extension error: {0}")]
    Extension(#[from] crate::extension::ExtensionError),
    #[error("pfaffian data error: {0}")]
    Pfaffian(#[from] crate::pfaffian::PfaffianError),
}

// ---------------------------------------------------------------------------
// Algebra files
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct AlgebraFile {
    algebra: AlgebraHeader,
    #[serde(default)]
    bracket: Vec<BracketEntry>,
}

#[derive(Debug, Deserialize)]
struct AlgebraHeader {
    #[allow(dead_code)]
    name: Option<String>,
    dim: usize,
    basis: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct BracketEntry {
    j: usize,
    k: usize,
    #[serde(default)]
    result: Vec<BracketTerm>,
}

#[derive(Debug, Deserialize)]
struct BracketTerm {
    i: usize,
    coeff: String,
}

/// Parse an algebra definition from TOML text.
pub fn algebra_from_toml(text: &str) -> Result<AlmostLieAlgebra, FileError> {
    let file: AlgebraFile = toml::from_str(text)?;
    let dim = file.algebra.dim;
    let names = match file.algebra.basis {
        Some(b) => {
            if b.len() != dim {
                return Err(FileError::Invalid(format!(
                    "basis has {} names, dim is {dim}",
                    b.len()
                )));
            }
            b
        }
        None => (0..dim).map(|i| format!("e{}", i + 1)).collect(),
    };
    let mut sc = vec![Rational::zero(); dim * dim * dim];
    let mut seen = std::collections::BTreeMap::<(usize, usize), Vec<Rational>>::new();
    for entry in &file.bracket {
        let check = |idx: usize, context: &'static str| {
            if idx == 0 || idx > dim {
                Err(FileError::BadIndex { context, index: idx, dim })
            } else {
                Ok(idx - 1)
            }
        };
        let j = check(entry.j, "bracket j")?;
        let k = check(entry.k, "bracket k")?;
        let mut col = vec![Rational::zero(); dim];
        for term in &entry.result {
            let i = check(term.i, "bracket result i")?;
            col[i] = parse_rational(&term.coeff)?;
        }
        if j == k && col.iter().any(|c| !c.is_zero()) {
            return Err(FileError::AntisymmetryConflict { j: j + 1, k: k + 1 });
        }
        if let Some(prev) = seen.get(&(j, k)) {
            if *prev != col {
                return Err(FileError::AntisymmetryConflict { j: j + 1, k: k + 1 });
            }
        }
        if let Some(opposite) = seen.get(&(k, j)) {
            let negated: Vec<Rational> = col.iter().map(|c| -c.clone()).collect();
            if *opposite != negated {
                return Err(FileError::AntisymmetryConflict { j: j + 1, k: k + 1 });
            }
        }
        seen.insert((j, k), col.clone());
        for (i, c) in col.into_iter().enumerate() {
            sc[i * dim * dim + j * dim + k] = c.clone();
            sc[i * dim * dim + k * dim + j] = -c;
        }
    }
    Ok(AlmostLieAlgebra::from_structure_constants(names, sc)?)
}

/// Builtin algebras: `builtin:abelian:N`, `builtin:hei:K` (dim `2K+1`),
/// `builtin:gl:N`, `builtin:so:N`, `builtin:sp1:K` (this is `sp(K,1)`),
/// `builtin:jet2:N`.
pub fn builtin_algebra(spec: &str) -> Result<AlmostLieAlgebra, FileError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse_param = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| FileError::UnknownBuiltin(spec.to_string()))
    };
    match parts.as_slice() {
        ["abelian", p] => Ok(abelian(parse_param(p)?)),
        ["hei", p] => Ok(heisenberg(parse_param(p)?)),
        ["gl", p] => Ok(crate::algebra::gl(parse_param(p)?)),
        ["so", p] => Ok(crate::algebra::so(parse_param(p)?)),
        ["sp1", p] => Ok(crate::algebra::sp_k1(parse_param(p)?)),
        ["jet2", p] => Ok(jet2_algebra(parse_param(p)?)),
        _ => Err(FileError::UnknownBuiltin(spec.to_string())),
    }
}

/// Matrices of the standard representation for matrix builtins.
pub fn builtin_matrices(spec: &str) -> Result<Vec<RatMat>, FileError> {
    let parts: Vec<&str> = parts_of(spec);
    let parse_param = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| FileError::UnknownBuiltin(spec.to_string()))
    };
    match parts.as_slice() {
        ["gl", p] => Ok(gl_matrices(parse_param(p)?)),
        ["so", p] => Ok(so_matrices(parse_param(p)?)),
        ["sp1", p] => Ok(sp_k1_matrices(parse_param(p)?)),
        _ => Err(FileError::UnknownBuiltin(format!("{spec} has no standard matrices"))),
    }
}

fn parts_of(spec: &str) -> Vec<&str> {
    spec.split(':').collect()
}

/// Resolve `builtin:...` or a path (relative to `base`).
pub fn load_algebra(reference: &str, base: Option<&Path>) -> Result<AlmostLieAlgebra, FileError> {
    if let Some(spec) = reference.strip_prefix("builtin:") {
        return builtin_algebra(spec);
    }
    let path = resolve(reference, base);
    let text = std::fs::read_to_string(&path).map_err(|source| FileError::Io { path, source })?;
    algebra_from_toml(&text)
}

fn resolve(reference: &str, base: Option<&Path>) -> PathBuf {
    let p = Path::new(reference);
    match (p.is_relative(), base) {
        (true, Some(b)) => b.join(p),
        _ => p.to_path_buf(),
    }
}

// ---------------------------------------------------------------------------
// Extension files
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct ExtensionFile {
    extension: ExtensionHeader,
    splitting: Option<SplittingSection>,
    #[serde(default)]
    z_bracket: Vec<BracketEntry>,
}

#[derive(Debug, Deserialize)]
struct ExtensionHeader {
    h_algebra: String,
    k_algebra: String,
    /// h-action on V: one V x V matrix (rows of `"p/q"`) per h basis element
    rep: Vec<Vec<Vec<String>>>,
    i: Vec<Vec<String>>,
    p: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct SplittingSection {
    l: Option<Vec<Vec<String>>>,
    r: Option<Vec<Vec<String>>>,
}

/// A fully-loaded extension: sequence, brackets, reference `k` and splitting.
pub struct LoadedExtension {
    pub cte: CartanTypeExtension,
    pub splitting: Option<SplittingPair>,
    /// the reference bracket on `V` from the file, for comparisons
    pub k_reference: AlmostLieAlgebra,
}

fn parse_matrix(rows: &[Vec<String>], context: &str) -> Result<RatMat, FileError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(FileError::Invalid(format!("{context}: ragged matrix")));
    }
    let mut out = RatMat::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            out.set(i, j, parse_rational(s)?);
        }
    }
    Ok(out)
}

fn bracket_entries_to_algebra(
    dim: usize,
    entries: &[BracketEntry],
    names: Vec<String>,
) -> Result<AlmostLieAlgebra, FileError> {
    let mut sc = vec![Rational::zero(); dim * dim * dim];
    for e in entries {
        let check = |idx: usize| -> Result<usize, FileError> {
            if idx == 0 || idx > dim {
                Err(FileError::BadIndex { context: "z_bracket", index: idx, dim })
            } else {
                Ok(idx - 1)
            }
        };
        let j = check(e.j)?;
        let k = check(e.k)?;
        for t in &e.result {
            let i = check(t.i)?;
            let v = parse_rational(&t.coeff)?;
            sc[i * dim * dim + j * dim + k] = v.clone();
            sc[i * dim * dim + k * dim + j] = -v;
        }
    }
    Ok(AlmostLieAlgebra::from_structure_constants(names, sc)?)
}

/// Load an extension definition. When `[z_bracket]` is absent the bracket on
/// `Z` is the semidirect `h ⋉ k` transported through the splitting (which is
/// then required).
pub fn extension_from_toml(text: &str, base: Option<&Path>) -> Result<LoadedExtension, FileError> {
    let file: ExtensionFile = toml::from_str(text)?;
    let h_alg = load_algebra(&file.extension.h_algebra, base)?;
    let k_ref = load_algebra(&file.extension.k_algebra, base)?;
    let i = parse_matrix(&file.extension.i, "i")?;
    let p = parse_matrix(&file.extension.p, "p")?;
    let (h_dim, v_dim, z_dim) = (i.cols(), p.rows(), i.rows());
    if h_alg.dim() != h_dim {
        return Err(FileError::Invalid(format!(
            "h algebra dim {} but i has {} columns",
            h_alg.dim(),
            h_dim
        )));
    }
    if k_ref.dim() != v_dim {
        return Err(FileError::Invalid(format!(
            "k algebra dim {} but p has {} rows",
            k_ref.dim(),
            v_dim
        )));
    }
    if file.extension.rep.len() != h_dim {
        return Err(FileError::Invalid(format!(
            "rep must list one matrix per h basis element ({} given, {} needed)",
            file.extension.rep.len(),
            h_dim
        )));
    }
    let rep_mats: Result<Vec<RatMat>, FileError> = file
        .extension
        .rep
        .iter()
        .map(|rows| parse_matrix(rows, "rep"))
        .collect();
    let h_rep_on_v = LinearRep::new(h_alg.clone(), v_dim, rep_mats?)?;

    let ext = RepExtension::new(i, p, None)?;
    let splitting = match &file.splitting {
        None => None,
        Some(s) => {
            let pair = match (&s.l, &s.r) {
                (Some(l), Some(r)) => {
                    let pair = SplittingPair {
                        l: parse_matrix(l, "splitting.l")?,
                        r: parse_matrix(r, "splitting.r")?,
                    };
                    pair.validate(&ext)?;
                    pair
                }
                (Some(l), None) => {
                    complete_splitting(&ext, OneSided::Left(parse_matrix(l, "splitting.l")?))?.0
                }
                (None, Some(r)) => {
                    complete_splitting(&ext, OneSided::Right(parse_matrix(r, "splitting.r")?))?.0
                }
                (None, None) => {
                    return Err(FileError::Invalid(
                        "[splitting] present but neither l nor r given".into(),
                    ))
                }
            };
            Some(pair)
        }
    };

    let z_bracket = if file.z_bracket.is_empty() {
        let sp = splitting.as_ref().ok_or_else(|| {
            FileError::Invalid(
                "no [[z_bracket]] given: a splitting is required to induce the semidirect bracket"
                    .into(),
            )
        })?;
        // transport h ⋉ k through z ≅ (l, p)
        let hk = crate::algebra::semidirect(&h_alg, &h_rep_on_v, &k_ref)?;
        let names = (0..z_dim).map(|idx| format!("z{}", idx + 1)).collect();
        let mut sc = vec![Rational::zero(); z_dim * z_dim * z_dim];
        let embed = |idx: usize| -> Vec<Rational> {
            let mut out = sp.l.col(idx);
            out.extend(ext.p().col(idx));
            out
        };
        // inverse of z -> (l z, p z) is (alpha, v) -> i alpha + r v
        for a in 0..z_dim {
            for b in (a + 1)..z_dim {
                let br = hk.bracket(&embed(a), &embed(b))?;
                let pulled = {
                    let h_part = ext.i().mul_vec(&br[..h_dim].to_vec()).expect("shape");
                    let v_part = sp.r.mul_vec(&br[h_dim..].to_vec()).expect("shape");
                    h_part
                        .iter()
                        .zip(&v_part)
                        .map(|(x, y)| x + y)
                        .collect::<Vec<Rational>>()
                };
                for i2 in 0..z_dim {
                    sc[i2 * z_dim * z_dim + a * z_dim + b] = pulled[i2].clone();
                    sc[i2 * z_dim * z_dim + b * z_dim + a] = -pulled[i2].clone();
                }
            }
        }
        AlmostLieAlgebra::from_structure_constants(names, sc)?
    } else {
        let names = (0..z_dim).map(|idx| format!("z{}", idx + 1)).collect();
        bracket_entries_to_algebra(z_dim, &file.z_bracket, names)?
    };

    let cte = CartanTypeExtension::new(ext, z_bracket, h_alg, h_rep_on_v)?;
    Ok(LoadedExtension { cte, splitting, k_reference: k_ref })
}

// ---------------------------------------------------------------------------
// Pfaffian data files (for the reduction tower)
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct PfaffianFile {
    pfaffian: PfaffianHeader,
}

#[derive(Debug, Deserialize)]
struct PfaffianHeader {
    algebra: String,
    v_dim: usize,
    rho: Vec<Vec<Vec<String>>>,
    l: Vec<Vec<String>>,
}

pub fn pfaffian_from_toml(text: &str, base: Option<&Path>) -> Result<PfaffianGroupData, FileError> {
    let file: PfaffianFile = toml::from_str(text)?;
    let g = load_algebra(&file.pfaffian.algebra, base)?;
    let mats: Result<Vec<RatMat>, FileError> = file
        .pfaffian
        .rho
        .iter()
        .map(|rows| parse_matrix(rows, "rho"))
        .collect();
    let rho = LinearRep::new(g.clone(), file.pfaffian.v_dim, mats?)?;
    let l = parse_matrix(&file.pfaffian.l, "l")?;
    Ok(PfaffianGroupData::new(g, file.pfaffian.v_dim, rho, l)?)
}

// ---------------------------------------------------------------------------
// Scenario files
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct ScenarioFile {
    chart: ChartSection,
    coframe: Option<RowsSection>,
    connection: Option<RowsSection>,
    model: Option<ModelSection>,
    frames: Option<RowsSection>,
    second_order: Option<SecondOrderSection>,
}

#[derive(Debug, Deserialize)]
struct ChartSection {
    coords: Vec<String>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    grid: Option<usize>,
    fd_step: Option<f64>,
    tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RowsSection {
    rows: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct ModelSection {
    h_algebra: String,
    k_algebra: String,
    /// either the string "standard" (matrix builtins) or explicit matrices
    rep: toml::Value,
}

#[derive(Debug, Deserialize)]
struct SecondOrderSection {
    n: usize,
    tau2: Vec<Vec<String>>,
    tau1: Vec<Vec<String>>,
    theta1: Vec<Vec<String>>,
}

/// A scenario ready for the engine.
pub struct LoadedScenario {
    pub flatness: Option<FlatnessScenario>,
    pub frames: Option<FrameField>,
    pub second_order: Option<SecondOrderScenario>,
    pub boxx: ChartBox,
    pub k_alg: Option<AlmostLieAlgebra>,
}

pub struct SecondOrderScenario {
    pub model: SecondOrderModel,
    pub tau2: VForm1,
    pub tau1: VForm1,
    pub theta1: VForm1,
}

fn rows_to_form(
    rows: &[Vec<String>],
    coords: &[String],
    context: &str,
) -> Result<VForm1, FileError> {
    let m = rows.len();
    let n = coords.len();
    let mut comps = Vec::with_capacity(m * n);
    for row in rows {
        if row.len() != n {
            return Err(FileError::Invalid(format!(
                "{context}: row has {} entries, chart has {n} coordinates",
                row.len()
            )));
        }
        for src in row {
            comps.push(parse_expr(src, coords).map_err(|e| FileError::Expr {
                context: context.to_string(),
                message: e.to_string(),
            })?);
        }
    }
    Ok(VForm1::new(m, n, comps))
}

pub fn scenario_from_toml(text: &str, base: Option<&Path>) -> Result<LoadedScenario, FileError> {
    let file: ScenarioFile = toml::from_str(text)?;
    let boxx = ChartBox::new(
        file.chart.coords.clone(),
        file.chart.lo.clone(),
        file.chart.hi.clone(),
        file.chart.grid.unwrap_or(DEFAULT_GRID),
        file.chart.fd_step.unwrap_or(DEFAULT_FD_STEP),
        file.chart.tol.unwrap_or(DEFAULT_TOL),
    )?;
    let model = match &file.model {
        Some(m) => {
            let h_alg = load_algebra(&m.h_algebra, base)?;
            let k_alg = load_algebra(&m.k_algebra, base)?;
            let rep = match &m.rep {
                toml::Value::String(s) if s == "standard" => {
                    let spec = m.h_algebra.strip_prefix("builtin:").ok_or_else(|| {
                        FileError::Invalid("rep = \"standard\" needs a builtin h_algebra".into())
                    })?;
                    let mats = builtin_matrices(spec)?;
                    if mats[0].rows() != k_alg.dim() {
                        return Err(FileError::Invalid(format!(
                            "standard rep acts on dim {}, k has dim {}",
                            mats[0].rows(),
                            k_alg.dim()
                        )));
                    }
                    LinearRep::new(h_alg.clone(), k_alg.dim(), mats)?
                }
                v => {
                    let rows: Vec<Vec<Vec<String>>> = v
                        .clone()
                        .try_into()
                        .map_err(|e| FileError::Invalid(format!("model.rep: {e}")))?;
                    let mats: Result<Vec<RatMat>, FileError> =
                        rows.iter().map(|mm| parse_matrix(mm, "model.rep")).collect();
                    LinearRep::new(h_alg.clone(), k_alg.dim(), mats?)?
                }
            };
            Some((h_alg, k_alg, rep))
        }
        None => None,
    };

    let flatness = match &file.coframe {
        None => None,
        Some(c) => {
            let (h_alg, k_alg, rep) = model.as_ref().ok_or_else(|| {
                FileError::Invalid("a [coframe] scenario needs a [model] section".into())
            })?;
            let theta = rows_to_form(&c.rows, boxx.coords(), "coframe")?;
            let tau = match &file.connection {
                Some(t) => rows_to_form(&t.rows, boxx.coords(), "connection")?,
                None => VForm1::zero(h_alg.dim(), boxx.n()),
            };
            if tau.target_dim() != h_alg.dim() {
                return Err(FileError::Invalid(format!(
                    "connection has {} rows, h algebra dim {}",
                    tau.target_dim(),
                    h_alg.dim()
                )));
            }
            Some(FlatnessScenario {
                boxx: boxx.clone(),
                theta,
                tau,
                h_alg: h_alg.clone(),
                k_alg: k_alg.clone(),
                rep: rep.clone(),
            })
        }
    };

    let frames = match &file.frames {
        None => None,
        Some(f) => {
            let n = boxx.n();
            if f.rows.len() != n {
                return Err(FileError::Invalid(format!(
                    "frames: {} fields given, chart dim {n}",
                    f.rows.len()
                )));
            }
            let mut fields = Vec::with_capacity(n * n);
            for row in &f.rows {
                if row.len() != n {
                    return Err(FileError::Invalid("frames: ragged rows".into()));
                }
                for src in row {
                    fields.push(parse_expr(src, boxx.coords()).map_err(|e| FileError::Expr {
                        context: "frames".into(),
                        message: e.to_string(),
                    })?);
                }
            }
            Some(FrameField::new(n, fields))
        }
    };

    let second_order = match &file.second_order {
        None => None,
        Some(s) => {
            let model = second_order_model(s.n);
            let tau2 = rows_to_form(&s.tau2, boxx.coords(), "second_order.tau2")?;
            let tau1 = rows_to_form(&s.tau1, boxx.coords(), "second_order.tau1")?;
            let theta1 = rows_to_form(&s.theta1, boxx.coords(), "second_order.theta1")?;
            Some(SecondOrderScenario { model, tau2, tau1, theta1 })
        }
    };

    if file.coframe.is_none() && file.frames.is_none() && file.second_order.is_none() {
        return Err(FileError::Invalid(
            "scenario has no [coframe], [frames] or [second_order] section".into(),
        ));
    }
    Ok(LoadedScenario {
        flatness,
        frames,
        second_order,
        boxx,
        k_alg: model.map(|(_, k, _)| k),
    })
}

/// Read a file with path-aware errors.
pub fn read_file(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path)
        .map_err(|source| FileError::Io { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEI3: &str = r#"
[algebra]
name = "hei3"
dim = 3
basis = ["e1", "e2", "e3"]

[[bracket]]
j = 1
k = 2
result = [{ i = 3, coeff = "1" }]
"#;

    #[test]
    fn algebra_roundtrip() {
        let a = algebra_from_toml(HEI3).unwrap();
        assert_eq!(a.structure_constants(), heisenberg(1).structure_constants());
    }

    #[test]
    fn antisymmetry_conflicts_rejected() {
        let conflicting = r#"
[algebra]
dim = 2
[[bracket]]
j = 1
k = 2
result = [{ i = 1, coeff = "1" }]
[[bracket]]
j = 2
k = 1
result = [{ i = 1, coeff = "1" }]
"#;
        assert!(matches!(
            algebra_from_toml(conflicting),
            Err(FileError::AntisymmetryConflict { .. })
        ));
        let diagonal = r#"
[algebra]
dim = 2
[[bracket]]
j = 1
k = 1
result = [{ i = 2, coeff = "1" }]
"#;
        assert!(matches!(
            algebra_from_toml(diagonal),
            Err(FileError::AntisymmetryConflict { .. })
        ));
        let out_of_range = r#"
[algebra]
dim = 2
[[bracket]]
j = 1
k = 3
result = []
"#;
        assert!(matches!(algebra_from_toml(out_of_range), Err(FileError::BadIndex { .. })));
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(builtin_algebra("hei:1").unwrap().dim(), 3);
        assert_eq!(builtin_algebra("sp1:1").unwrap().dim(), 6);
        assert_eq!(builtin_algebra("gl:2").unwrap().dim(), 4);
        assert_eq!(builtin_algebra("jet2:1").unwrap().dim(), 2);
        assert!(builtin_algebra("nope:3").is_err());
    }

    #[test]
    fn extension_file_with_induced_bracket() {
        // h = R acting trivially on k = hei3; canonical maps; splitting given
        let text = r#"
[extension]
h_algebra = "builtin:abelian:1"
k_algebra = "builtin:hei:1"
rep = [ [["0","0","0"],["0","0","0"],["0","0","0"]] ]
i = [["1"],["0"],["0"],["0"]]
p = [["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]

[splitting]
l = [["1","0","0","0"]]
"#;
        let loaded = extension_from_toml(text, None).unwrap();
        assert!(loaded.cte.ext().check_exact().passed());
        let sp = loaded.splitting.unwrap();
        let rep = crate::extension::check_reductive(&loaded.cte, &sp);
        assert!(rep.reductive);
        let k = crate::extension::induced_quotient_bracket(&loaded.cte, &sp).unwrap();
        assert_eq!(k.structure_constants(), loaded.k_reference.structure_constants());
    }

    #[test]
    fn scenario_file_contact() {
        let text = r#"
[chart]
coords = ["x", "y", "z"]
lo = [-1.0, -1.0, -1.0]
hi = [1.0, 1.0, 1.0]

[coframe]
rows = [["0","1","0"], ["1","0","0"], ["-y","0","1"]]

[model]
h_algebra = "builtin:sp1:1"
k_algebra = "builtin:hei:1"
rep = "standard"

[frames]
rows = [["0","1","0"], ["1","0","y"], ["0","0","1"]]
"#;
        let s = scenario_from_toml(text, None).unwrap();
        let f = s.flatness.unwrap();
        let r = crate::curvature::flatness_check(&f).unwrap();
        assert_eq!(r.verdict, crate::curvature::FlatVerdict::Flat);
        let frames = s.frames.unwrap();
        let ir =
            crate::curvature::k_integrability_witness(&frames, s.k_alg.as_ref().unwrap(), &s.boxx)
                .unwrap();
        assert_eq!(ir.verdict, crate::curvature::IntegrabilityVerdict::Pass);
    }
}
