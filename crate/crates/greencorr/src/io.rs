//! Module and complex JSON files, and subgroup specifications on the command line.

use crate::bundled;
use crate::cpx::Complex;
use crate::error::{Error, Result};
use crate::gfla::{is_prime, FpMatrix, MAX_P};
use crate::grp::{parse_group, Group, Perm, Subgroup, SubgroupCollection};
use crate::rep::Module;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    dim: usize,
    generators: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    group: String,
    p: u32,
    lo: i32,
    terms: Vec<ModuleFile>,
    boundaries: Vec<Vec<Vec<i64>>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A group given inline (text containing a `degree` line), as a file path relative to
/// `base`, or as a bundled name such as `s3` or `s3.grp`.
pub fn load_group(spec: &str, base: &Path) -> Result<(Arc<Group>, Option<u32>)> {
    if spec.contains("degree") {
        return parse_group(spec);
    }
    let path = base.join(spec);
    if path.is_file() {
        return parse_group(&read_file(&path)?);
    }
    match bundled::group_text(spec) {
        Some(t) => parse_group(t),
        None => Err(Error::Io(format!("{}: no such group file", path.display()))),
    }
}

fn check_p(p: u32) -> Result<u32> {
    if !is_prime(p) || p >= MAX_P {
        return Err(Error::Precondition(format!("{p} is not a supported prime")));
    }
    Ok(p)
}

fn matrix(p: u32, n: usize, m: usize, rows: &[Vec<i64>], what: &str) -> Result<FpMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension(format!("{what} must be {n} x {m}")));
    }
    if let Some(v) = rows.iter().flatten().find(|&&v| v < 0 || v >= p as i64) {
        return Err(Error::Precondition(format!("{what} has entry {v} outside [0, {p})")));
    }
    if n == 0 || m == 0 {
        return Ok(FpMatrix::zeros(p, n, m));
    }
    FpMatrix::from_rows(p, rows)
}

fn build_module(f: &ModuleFile, group: &Arc<Group>, p: u32) -> Result<Module> {
    let gens = f
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| matrix(p, f.dim, f.dim, g, &format!("generator {i}")))
        .collect::<Result<Vec<_>>>()?;
    Module::new(group.clone(), p, f.dim, gens)
}

fn resolve(group: Option<&str>, p: Option<u32>, base: &Path) -> Result<(Arc<Group>, u32)> {
    let spec = group.ok_or_else(|| Error::Precondition("missing \"group\"".into()))?;
    let (g, gp) = load_group(spec, base)?;
    let p = p.or(gp).ok_or_else(|| Error::Precondition("missing \"p\"".into()))?;
    Ok((g, check_p(p)?))
}

/// Parses the module JSON format; `base` resolves relative group paths.
pub fn parse_module(text: &str, base: &Path) -> Result<Module> {
    let f: ModuleFile = serde_json::from_str(text).map_err(json_error)?;
    let (g, p) = resolve(f.group.as_deref(), f.p, base)?;
    build_module(&f, &g, p)
}

pub fn load_module(path: &Path) -> Result<Module> {
    parse_module(&read_file(path)?, path.parent().unwrap_or(Path::new(".")))
}

/// Parses the complex JSON format. Term entries may omit `group` and `p`.
pub fn parse_complex(text: &str, base: &Path) -> Result<Complex> {
    let f: ComplexFile = serde_json::from_str(text).map_err(json_error)?;
    let (g, p) = resolve(Some(&f.group), Some(f.p), base)?;
    let terms = f.terms.iter().map(|t| build_module(t, &g, p)).collect::<Result<Vec<_>>>()?;
    if f.boundaries.len() != terms.len().saturating_sub(1) {
        return Err(Error::Dimension(format!("{} terms need {} boundaries", terms.len(), terms.len().saturating_sub(1))));
    }
    let diffs = f
        .boundaries
        .iter()
        .enumerate()
        .map(|(k, b)| matrix(p, terms[k + 1].dim(), terms[k].dim(), b, &format!("boundary {k}")))
        .collect::<Result<Vec<_>>>()?;
    Complex::new(&g, p, f.lo, terms, diffs)
}

pub fn load_complex(path: &Path) -> Result<Complex> {
    parse_complex(&read_file(path)?, path.parent().unwrap_or(Path::new(".")))
}

fn rows(m: &FpMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows()
}

fn module_file(m: &Module, group: Option<&str>) -> ModuleFile {
    ModuleFile {
        p: group.map(|_| m.p()),
        group: group.map(str::to_owned),
        dim: m.dim(),
        generators: m.generator_matrices().iter().map(rows).collect(),
    }
}

/// Module JSON with `group` written verbatim (a path, bundled name or inline text).
pub fn module_json(m: &Module, group: &str) -> String {
    serde_json::to_string(&module_file(m, Some(group))).expect("serializable")
}

pub fn complex_json(x: &Complex, group: &str) -> String {
    let f = ComplexFile {
        group: group.to_owned(),
        p: x.p(),
        lo: x.lo(),
        terms: x.terms().iter().map(|m| module_file(m, None)).collect(),
        boundaries: (x.lo()..x.hi()).map(|d| rows(&x.boundary(d))).collect(),
    };
    serde_json::to_string(&f).expect("serializable")
}

/// `whole`, `trivial`, or generators in cycle notation separated by `;`.
pub fn parse_subgroup(g: &Arc<Group>, spec: &str) -> Result<Subgroup> {
    match spec.trim() {
        "whole" => Ok(g.whole()),
        "trivial" | "1" => Ok(g.trivial_subgroup()),
        s => {
            let perms = s
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|t| Perm::parse_cycles(g.degree(), t.trim()))
                .collect::<Result<Vec<_>>>()?;
            g.subgroup_from_perms(&perms)
        }
    }
}

/// Subgroup specifications separated by `|`.
pub fn parse_collection(g: &Arc<Group>, spec: &str) -> Result<SubgroupCollection> {
    let members = spec.split('|').map(|s| parse_subgroup(g, s)).collect::<Result<Vec<_>>>()?;
    Ok(SubgroupCollection::new(members, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_round_trip() {
        let g = bundled::group("s3").unwrap();
        let m = Module::regular(&g, 3);
        let text = module_json(&m, "s3.grp");
        let back = parse_module(&text, Path::new("/nonexistent")).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn malformed_json_reports_position() {
        match parse_module("{\"p\": 2,\n  \"dim\": }", Path::new(".")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complex_round_trip() {
        let g = bundled::group("c2").unwrap();
        let k = Module::trivial(&g, 2);
        let reg = Module::regular(&g, 2);
        let x = Complex::two_term(&reg, &k, &FpMatrix::from_rows(2, &[vec![1, 1]]).unwrap(), -1).unwrap();
        let back = parse_complex(&complex_json(&x, "c2"), Path::new(".")).unwrap();
        assert_eq!(back, x);
    }
}
