//! Preset documents: a Hopf presentation, calculus tables, representations
//! and options, in a line-oriented text format (see `presets/FORMAT.md`).

use crate::calculus::{parse_form, Calculus, CalculusTables};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::gla::{FinVector, Mat};
use crate::hopf::{Element, HopfAlgebra, Presentation, Rule, Tensor};
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

pub const U1: &str = include_str!("../../presets/u1.preset");
pub const SUMU2_4D: &str = include_str!("../../presets/sumu2-4d.preset");

/// Environment variable naming a directory searched for `<name>.preset`.
pub const PRESET_DIR_ENV: &str = "QWEIL_PRESET_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CalculusKind {
    Wedge,
    Vee,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChernConvention {
    /// exp{Σ (-1)^{k+1} λ^k p_k / k}
    Signed,
    /// exp{Σ λ^k p_k / k}
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub calculus_kind: CalculusKind,
    pub degree_bound: usize,
    pub chern_convention: ChernConvention,
    pub validate_degree: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            calculus_kind: CalculusKind::Wedge,
            degree_bound: 6,
            chern_convention: ChernConvention::Signed,
            validate_degree: 3,
        }
    }
}

/// Matrix representation u with optional intertwiner data.
#[derive(Clone, Debug)]
pub struct RepresentationData {
    pub name: String,
    pub u: Vec<Vec<Element>>,
    pub modular: Option<Mat>,
    pub conjugation: Option<Mat>,
    pub braid: Option<Mat>,
}

/// Parsed but unvalidated document.
#[derive(Clone, Debug)]
pub struct PresetDocument {
    pub name: String,
    pub presentation: Presentation,
    pub tables: CalculusTables,
    pub representations: Vec<RepresentationData>,
    pub options: Options,
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    target: &'a str,
    value: &'a str,
}

fn err(line: &Line, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {}: {msg}", line.no))
}

fn split_line(no: usize, raw: &str) -> Result<Option<Line<'_>>> {
    let text = raw.split('#').next().unwrap_or("").trim();
    if text.is_empty() {
        return Ok(None);
    }
    let (head, value) = text
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("line {no}: expected `key [target] = value`")))?;
    let head = head.trim();
    let (key, target) = match head.split_once(char::is_whitespace) {
        Some((k, t)) => (k, t.trim()),
        None => (head, ""),
    };
    Ok(Some(Line { no, key, target, value: value.trim() }))
}

fn parse_matrix<T, F: Fn(&str) -> Result<T>>(src: &str, f: F) -> Result<Vec<Vec<T>>> {
    src.split(';')
        .map(|row| row.split(',').map(|e| f(e.trim())).collect::<Result<Vec<T>>>())
        .collect()
}

fn scalar_matrix(src: &str) -> Result<Mat> {
    Mat::from_rows(parse_matrix(src, Scalar::parse)?)
}

/// Algebra without relations, used to read raw expressions before the
/// presentation exists.
fn free_algebra(generators: &[String]) -> Result<HopfAlgebra> {
    let n = generators.len();
    HopfAlgebra::new(Presentation {
        generators: generators.to_vec(),
        star: (0..n).collect(),
        rules: Vec::new(),
        coproduct: vec![Tensor::zero(2); n],
        counit: vec![Scalar::zero(); n],
        antipode: vec![Element::zero(); n],
    })
}

fn word_of(free: &HopfAlgebra, src: &str, line: &Line) -> Result<Vec<u8>> {
    src.split('*')
        .map(|g| free.generator_index(g.trim()).ok_or_else(|| err(line, format!("unknown generator {g:?}"))))
        .collect()
}

pub fn parse_document(name: &str, text: &str) -> Result<PresetDocument> {
    let mut section = String::new();
    let mut generators: Vec<String> = Vec::new();
    let mut free: Option<HopfAlgebra> = None;
    let mut star: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rules = Vec::new();
    let mut coproduct: BTreeMap<usize, Tensor> = BTreeMap::new();
    let mut counit: BTreeMap<usize, Scalar> = BTreeMap::new();
    let mut antipode: BTreeMap<usize, Element> = BTreeMap::new();
    let mut basis: Vec<String> = Vec::new();
    let mut pi: BTreeMap<usize, FinVector> = BTreeMap::new();
    let mut circ: BTreeMap<usize, Mat> = BTreeMap::new();
    let mut reps: BTreeMap<usize, Element> = BTreeMap::new();
    let mut delta: BTreeMap<usize, FinVector> = BTreeMap::new();
    let mut r_generators = Vec::new();
    let mut s_wedge2: Vec<FinVector> = Vec::new();
    let mut representations: Vec<RepresentationData> = Vec::new();
    let mut options = Options::default();

    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.starts_with('[') {
            if !t.ends_with(']') {
                return Err(Error::Parse(format!("line {no}: malformed section header")));
            }
            section = t[1..t.len() - 1].trim().to_string();
            if !["hopf", "calculus", "representations", "options"].contains(&section.as_str()) {
                return Err(Error::Parse(format!("line {no}: unknown section [{section}]")));
            }
            continue;
        }
        let Some(line) = split_line(no, raw)? else { continue };
        let gen_idx = |free: &Option<HopfAlgebra>, s: &str| -> Result<usize> {
            free.as_ref()
                .and_then(|f| f.generator_index(s))
                .map(|g| g as usize)
                .ok_or_else(|| err(&line, format!("unknown generator {s:?}")))
        };
        let basis_idx = |s: &str| -> Result<usize> {
            basis.iter().position(|b| b == s).ok_or_else(|| err(&line, format!("unknown basis element {s:?}")))
        };
        match (section.as_str(), line.key) {
            ("hopf", "generators") => {
                generators = line.value.split_whitespace().map(String::from).collect();
                free = Some(free_algebra(&generators)?);
            }
            ("hopf", "star") => {
                let a = gen_idx(&free, line.target)?;
                let b = gen_idx(&free, line.value)?;
                star.insert(a, b);
            }
            ("hopf", "rule") => {
                let f = free.as_ref().ok_or_else(|| err(&line, "generators must come first"))?;
                let lhs = word_of(f, line.target, &line)?;
                let rhs = f.parse(line.value).map_err(|e| err(&line, e))?;
                rules.push(Rule { lhs, rhs });
            }
            ("hopf", "coproduct") => {
                let g = gen_idx(&free, line.target)?;
                let t = free.as_ref().expect("checked").parse_tensor(line.value).map_err(|e| err(&line, e))?;
                if t.legs != 2 {
                    return Err(err(&line, "coproduct must have two legs"));
                }
                coproduct.insert(g, t);
            }
            ("hopf", "counit") => {
                let g = gen_idx(&free, line.target)?;
                counit.insert(g, Scalar::parse(line.value).map_err(|e| err(&line, e))?);
            }
            ("hopf", "antipode") => {
                let g = gen_idx(&free, line.target)?;
                antipode.insert(g, free.as_ref().expect("checked").parse(line.value).map_err(|e| err(&line, e))?);
            }
            ("calculus", "basis") => {
                basis = line.value.split_whitespace().map(String::from).collect();
            }
            ("calculus", "pi") => {
                let g = gen_idx(&free, line.target)?;
                let (v, d) = parse_form(&basis, line.value).map_err(|e| err(&line, e))?;
                if d > 1 || (d == 0 && !v.is_zero()) {
                    return Err(err(&line, "pi must be a first-order form"));
                }
                pi.insert(g, v);
            }
            ("calculus", "circ") => {
                let g = gen_idx(&free, line.target)?;
                circ.insert(g, scalar_matrix(line.value).map_err(|e| err(&line, e))?);
            }
            ("calculus", "representative") => {
                let b = basis_idx(line.target)?;
                let f = free.as_ref().ok_or_else(|| err(&line, "generators must come first"))?;
                reps.insert(b, f.parse(line.value).map_err(|e| err(&line, e))?);
            }
            ("calculus", "delta") => {
                let b = basis_idx(line.target)?;
                let (v, d) = parse_form(&basis, line.value).map_err(|e| err(&line, e))?;
                if d != 2 && !v.is_zero() {
                    return Err(err(&line, "delta must be a second-order tensor"));
                }
                delta.insert(b, v);
            }
            ("calculus", "r-generator") => {
                let f = free.as_ref().ok_or_else(|| err(&line, "generators must come first"))?;
                r_generators.push(f.parse(line.value).map_err(|e| err(&line, e))?);
            }
            ("calculus", "s-wedge2") => {
                let (v, d) = parse_form(&basis, line.value).map_err(|e| err(&line, e))?;
                if d != 2 {
                    return Err(err(&line, "s-wedge2 entries are second-order tensors"));
                }
                s_wedge2.push(v);
            }
            ("representations", key @ ("rep" | "modular" | "conjugation" | "braid")) => {
                let name = line.target.to_string();
                if name.is_empty() {
                    return Err(err(&line, "representation name missing"));
                }
                let pos = match representations.iter().position(|r| r.name == name) {
                    Some(p) => p,
                    None => {
                        representations.push(RepresentationData {
                            name: name.clone(),
                            u: Vec::new(),
                            modular: None,
                            conjugation: None,
                            braid: None,
                        });
                        representations.len() - 1
                    }
                };
                let r = &mut representations[pos];
                match key {
                    "rep" => {
                        let f = free.as_ref().ok_or_else(|| err(&line, "generators must come first"))?;
                        r.u = parse_matrix(line.value, |s| f.parse(s)).map_err(|e| err(&line, e))?;
                    }
                    "modular" => r.modular = Some(scalar_matrix(line.value).map_err(|e| err(&line, e))?),
                    "conjugation" => r.conjugation = Some(scalar_matrix(line.value).map_err(|e| err(&line, e))?),
                    _ => r.braid = Some(scalar_matrix(line.value).map_err(|e| err(&line, e))?),
                }
            }
            ("options", "calculus-kind") => {
                options.calculus_kind = match line.value {
                    "wedge" => CalculusKind::Wedge,
                    "vee" => CalculusKind::Vee,
                    v => return Err(err(&line, format!("calculus-kind must be wedge or vee, got {v:?}"))),
                }
            }
            ("options", "chern-convention") => {
                options.chern_convention = match line.value {
                    "signed" => ChernConvention::Signed,
                    "exponential" => ChernConvention::Exponential,
                    v => return Err(err(&line, format!("unknown chern-convention {v:?}"))),
                }
            }
            ("options", "degree-bound") => {
                options.degree_bound = line.value.parse().map_err(|_| err(&line, "expected an integer"))?;
            }
            ("options", "validate-degree") => {
                options.validate_degree = line.value.parse().map_err(|_| err(&line, "expected an integer"))?;
            }
            (s, k) => return Err(err(&line, format!("unknown key {k:?} in section [{s}]"))),
        }
    }

    let ng = generators.len();
    let take = |what: &str, len: usize| -> Result<()> {
        if len != ng {
            return Err(Error::Parse(format!("{what} must be given for every generator")));
        }
        Ok(())
    };
    take("star", star.len())?;
    take("coproduct", coproduct.len())?;
    take("counit", counit.len())?;
    take("antipode", antipode.len())?;
    take("pi", pi.len())?;
    take("circ", circ.len())?;
    if reps.len() != basis.len() {
        return Err(Error::Parse("every basis element needs a representative".into()));
    }
    if !delta.is_empty() && delta.len() != basis.len() {
        return Err(Error::Parse("delta must be given for all basis elements or none".into()));
    }
    Ok(PresetDocument {
        name: name.to_string(),
        presentation: Presentation {
            generators,
            star: star.into_values().collect(),
            rules,
            coproduct: coproduct.into_values().collect(),
            counit: counit.into_values().collect(),
            antipode: antipode.into_values().collect(),
        },
        tables: CalculusTables {
            basis,
            pi: pi.into_values().collect(),
            circ: circ.into_values().collect(),
            representatives: reps.into_values().collect(),
            delta: if delta.is_empty() { None } else { Some(delta.into_values().collect()) },
            r_generators,
            s_wedge2: if s_wedge2.is_empty() { None } else { Some(s_wedge2) },
        },
        representations,
        options,
    })
}

/// Source text of a preset given by built-in name, file path, or a name
/// looked up in `$QWEIL_PRESET_DIR`.
pub fn source(name_or_path: &str) -> Result<(String, String)> {
    match name_or_path {
        "u1" => return Ok(("u1".into(), U1.into())),
        "sumu2-4d" => return Ok(("sumu2-4d".into(), SUMU2_4D.into())),
        _ => {}
    }
    let path = Path::new(name_or_path);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::PresetNotFound(format!("{name_or_path}: {e}")))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name_or_path).to_string();
        return Ok((stem, text));
    }
    if let Ok(dir) = std::env::var(PRESET_DIR_ENV) {
        let p = Path::new(&dir).join(format!("{name_or_path}.preset"));
        if p.is_file() {
            let text = std::fs::read_to_string(&p).map_err(|e| Error::PresetNotFound(format!("{}: {e}", p.display())))?;
            return Ok((name_or_path.to_string(), text));
        }
    }
    Err(Error::PresetNotFound(name_or_path.to_string()))
}

/// Builds a context without running the validators.
pub fn build(doc: PresetDocument) -> Result<Context> {
    let alg = Arc::new(HopfAlgebra::new(doc.presentation)?);
    let calc = Arc::new(Calculus::new(alg.clone(), doc.tables)?);
    Ok(Context::new(doc.name, alg, calc, doc.representations, doc.options))
}

pub fn load_unchecked(name_or_path: &str) -> Result<Context> {
    let (name, text) = source(name_or_path)?;
    build(parse_document(&name, &text)?)
}

pub fn load_text_unchecked(name: &str, text: &str) -> Result<Context> {
    build(parse_document(name, text)?)
}

/// Runs the Hopf and calculus validators at the preset's validation degree.
pub fn validate(ctx: &Context, seed: u64) -> Report {
    let d = ctx.options.validate_degree;
    let mut rep = crate::hopf::validate_presentation(&ctx.alg, d, 2000, seed);
    if rep.passed() {
        rep.merge(crate::calculus::validate_calculus(&ctx.calc, d));
        rep.merge(crate::classes::validate_representations(ctx));
    }
    rep
}

fn checked(ctx: Context) -> Result<Context> {
    let rep = validate(&ctx, 0);
    if rep.passed() {
        Ok(ctx)
    } else {
        Err(Error::Validation(format!("preset {} rejected\n{rep}", ctx.name)))
    }
}

/// Loads and validates; a failing preset is rejected with the report.
pub fn load(name_or_path: &str) -> Result<Context> {
    checked(load_unchecked(name_or_path)?)
}

pub fn load_text(name: &str, text: &str) -> Result<Context> {
    checked(load_text_unchecked(name, text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u1_loads_and_validates() {
        let ctx = load("u1").unwrap();
        assert_eq!(ctx.dim(), 1);
        assert_eq!(ctx.calc.basis_names(), ["zeta"]);
    }

    #[test]
    fn sumu2_loads_and_validates() {
        let ctx = load_unchecked("sumu2-4d").unwrap();
        let rep = validate(&ctx, 0);
        assert!(rep.passed(), "{rep}");
        assert_eq!(ctx.calc.basis_names(), ["tau", "eta3", "etap", "etam"]);
    }

    #[test]
    fn unknown_keys_and_sections_are_rejected() {
        let bad = U1.replace("degree-bound = 6", "degree-limit = 6");
        assert!(matches!(parse_document("x", &bad), Err(Error::Parse(_))));
        let bad = U1.replace("[options]", "[extras]");
        assert!(matches!(parse_document("x", &bad), Err(Error::Parse(_))));
    }

    #[test]
    fn missing_preset_is_reported() {
        assert!(matches!(load_unchecked("no-such-preset"), Err(Error::PresetNotFound(_))));
    }

    #[test]
    fn inconsistent_circ_is_rejected() {
        let bad = U1.replace("circ v = 1/lambda", "circ v = 2/lambda");
        match load_text("bad", &bad) {
            Err(Error::Validation(msg)) => assert!(msg.contains("circ-module-law"), "{msg}"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }
}
