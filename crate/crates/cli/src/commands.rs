use anyhow::{anyhow, bail, Context, Result};
use plane4_core::alexander::{
    alexander_matrix, alexander_poly, delta, link_alexander_poly, single_var_poly,
};
use plane4_core::arrangements::{
    bottom_components_d2, count_d2_classes, depth2_normal_form, permutation_depth, sigma_lists,
    table1_rows, ArrangementSpec, CatalogName,
};
use plane4_core::charvar::{tors_count, verify_subtorus_detail, Subtorus};
use plane4_core::{Error, FreeWord, LaurentPoly, Permutation};
use serde::Serialize;

use crate::report::{Field, Report, Sigma, Table, TableRow, TorsEntry, Verification};

/// A core error that should surface as a usage error (exit code 2).
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: Error, text: &str) -> anyhow::Error {
    match e {
        Error::Parse { pos, ref msg } => {
            let caret = format!("{}^", " ".repeat(pos));
            anyhow!(Usage(format!(
                "parse error at position {pos}: {msg}\n  {text}\n  {caret}"
            )))
        }
        other => anyhow!(Usage(other.to_string())),
    }
}

/// Parses a spec; a bare permutation such as `214356` is read as `perm:214356`.
pub fn parse_spec(text: &str) -> Result<ArrangementSpec> {
    if text.starts_with(|c: char| c.is_ascii_digit()) {
        return ArrangementSpec::parse(&format!("perm:{text}")).map_err(|e| match e {
            Error::Parse { pos, msg } => usage(
                Error::Parse {
                    pos: pos.saturating_sub(5),
                    msg,
                },
                text,
            ),
            other => usage(other, text),
        });
    }
    ArrangementSpec::parse(text).map_err(|e| usage(e, text))
}

/// Requests the library cannot serve are reported in place; anything else is an error.
fn field<T>(r: plane4_core::Result<T>) -> Result<Field<T>> {
    match r {
        Ok(v) => Ok(Field::Value(v)),
        Err(Error::Unsupported(_) | Error::NotDepthTwo(_) | Error::NoLinkingData(_)) => {
            Ok(Field::out_of_scope())
        }
        Err(e) => Err(anyhow!(Usage(e.to_string()))),
    }
}

fn poly_text(r: plane4_core::Result<LaurentPoly>) -> Result<Field<String>> {
    Ok(match field(r)? {
        Field::Value(f) => Field::Value(f.to_string()),
        Field::Unavailable(why) => Field::Unavailable(why),
    })
}

/// The permutation behind a horizontal spec, including catalog aliases.
fn horizontal(spec: &ArrangementSpec) -> Option<Permutation> {
    match spec {
        ArrangementSpec::Horizontal(p) => Some(p.clone()),
        ArrangementSpec::Catalog(c) => horizontal(&c.expand()),
        _ => None,
    }
}

/// Resolves `1`, `n`, `n-2`, … against the number of planes.
pub fn resolve_k(text: &str, n: usize) -> Result<usize> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let value: i64 = if let Some(rest) = t.strip_prefix('n') {
        let off: i64 = match rest.strip_prefix('-') {
            Some(d) => d
                .parse()
                .map_err(|_| anyhow!(Usage(format!("invalid k {text:?}"))))?,
            None if rest.is_empty() => 0,
            None => bail!(Usage(format!("invalid k {text:?}"))),
        };
        n as i64 - off
    } else {
        t.parse()
            .map_err(|_| anyhow!(Usage(format!("invalid k {text:?}"))))?
    };
    if value < 1 || value > n as i64 {
        bail!(Usage(format!(
            "k = {text} resolves to {value}, outside 1..={n}"
        )));
    }
    Ok(value as usize)
}

pub fn read_basis(path: &std::path::Path, rank: usize) -> Result<Vec<FreeWord>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| FreeWord::parse(w, rank).map_err(|e| usage(e, w)))
        .collect()
}

fn basis_words(b: &[FreeWord]) -> Vec<String> {
    b.iter().map(|w| w.to_string()).collect()
}

fn bottom_data(
    spec: &ArrangementSpec,
) -> Result<(Field<String>, Field<Sigma>, Field<Vec<String>>)> {
    let Some(perm) = horizontal(spec) else {
        return Ok((
            Field::out_of_scope(),
            Field::out_of_scope(),
            Field::out_of_scope(),
        ));
    };
    Ok(match field(depth2_normal_form(&perm))? {
        Field::Value(nf) => {
            let s = sigma_lists(&nf);
            let comps = bottom_components_d2(&nf)
                .iter()
                .map(|t| t.to_string())
                .collect();
            (
                Field::Value(nf.to_string()),
                Field::Value(Sigma {
                    all: s.all_text(),
                    through_one: s.through_one_text(),
                }),
                Field::Value(comps),
            )
        }
        Field::Unavailable(why) => (
            Field::Unavailable(why.clone()),
            Field::Unavailable(why.clone()),
            Field::Unavailable(why),
        ),
    })
}

pub fn invariants(
    spec: &ArrangementSpec,
    ps: &[u64],
    ks: &[String],
    basis: Option<&[FreeWord]>,
) -> Result<Report> {
    let n = spec.n().map_err(|e| usage(e, &spec.to_string()))?;
    let mut tors = Vec::new();
    for &p in ps {
        for k in ks {
            let k = resolve_k(k, n)?;
            let count = field(tors_count(spec, p, k).map(|c| c.count))?;
            tors.push(TorsEntry { p, k, count });
        }
    }
    let (normal_form, sigma, components) = bottom_data(spec)?;
    Ok(Report {
        spec: spec.to_string(),
        n,
        basis: basis.map(basis_words),
        alexander_poly: poly_text(alexander_poly(spec, basis))?,
        single_var_poly: poly_text(single_var_poly(spec))?,
        delta: field(delta(spec))?,
        tors,
        normal_form,
        sigma,
        components,
    })
}

/// Builds the cable spec from `k=`, `sign=`, `r=` tokens; defaults cable the
/// last plane once, positively.
pub fn cable_spec(base: &str, options: &[String]) -> Result<ArrangementSpec> {
    let base_spec = parse_spec(base)?;
    let mut k = base_spec.n().map_err(|e| usage(e, base))?;
    let mut sign = "+".to_string();
    let mut r = 1usize;
    for opt in options {
        let (key, value) = opt
            .split_once('=')
            .ok_or_else(|| anyhow!(Usage(format!("expected key=value, found {opt:?}"))))?;
        let bad = || anyhow!(Usage(format!("invalid value in {opt:?}")));
        match key.trim() {
            "k" => k = value.trim().parse().map_err(|_| bad())?,
            "r" => r = value.trim().parse().map_err(|_| bad())?,
            "sign" => sign = value.trim().to_string(),
            _ => bail!(Usage(format!("unknown cable option {key:?}"))),
        }
    }
    parse_spec(&format!("cable({base_spec},k={k},sign={sign},r={r})"))
}

#[derive(Serialize)]
pub struct AlexanderOut {
    pub spec: String,
    pub n: usize,
    pub basis: Option<Vec<String>>,
    pub matrix: Field<Vec<Vec<String>>>,
    pub alexander_poly: Field<String>,
    pub link_poly: Field<String>,
    pub link_poly_terms: Field<usize>,
    pub single_var_poly: Field<String>,
}

impl std::fmt::Display for AlexanderOut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "spec: {}", self.spec)?;
        if let Some(b) = &self.basis {
            writeln!(f, "basis: {}", b.join(" "))?;
        }
        match &self.matrix {
            Field::Value(rows) => {
                writeln!(f, "alexander matrix:")?;
                for row in rows {
                    writeln!(f, "  [ {} ]", row.join(" | "))?;
                }
            }
            Field::Unavailable(why) => writeln!(f, "alexander matrix: unavailable: {why}")?,
        }
        writeln!(f, "alexander polynomial: {}", self.alexander_poly)?;
        writeln!(
            f,
            "link polynomial ({} terms): {}",
            self.link_poly_terms, self.link_poly
        )?;
        writeln!(f, "single-variable polynomial: {}", self.single_var_poly)
    }
}

pub fn alexander(spec: &ArrangementSpec, basis: Option<&[FreeWord]>) -> Result<AlexanderOut> {
    let n = spec.n().map_err(|e| usage(e, &spec.to_string()))?;
    let matrix = match field(alexander_matrix(spec, basis))? {
        Field::Value(m) => Field::Value(
            (0..m.matrix.rows())
                .map(|i| m.matrix.row(i).iter().map(|f| f.to_string()).collect())
                .collect(),
        ),
        Field::Unavailable(why) => Field::Unavailable(why),
    };
    let link = field(link_alexander_poly(spec))?;
    Ok(AlexanderOut {
        spec: spec.to_string(),
        n,
        basis: basis.map(basis_words),
        matrix,
        alexander_poly: poly_text(alexander_poly(spec, basis))?,
        link_poly_terms: match &link {
            Field::Value(f) => Field::Value(f.term_count()),
            Field::Unavailable(w) => Field::Unavailable(w.clone()),
        },
        link_poly: match link {
            Field::Value(f) => Field::Value(f.to_string()),
            Field::Unavailable(w) => Field::Unavailable(w),
        },
        single_var_poly: poly_text(single_var_poly(spec))?,
    })
}

/// Bottom components shown in the table where the codimension list is not
/// derived from a normal form; containment is checked live.
fn known_bottom_components(spec: &ArrangementSpec) -> Option<(Vec<Subtorus>, Vec<FreeWord>)> {
    let ArrangementSpec::Catalog(name @ (CatalogName::K | CatalogName::L)) = spec else {
        return None;
    };
    let tori = [
        "t6=1 & t4=-1 & t3=-1 & t2=1",
        "t6=1 & t4=-1 & t3=1 & t1=1",
        "t6=1 & t5=1 & t4=1 & t3=-1",
        "t6=1 & t5=1 & t4=1 & t3=1 & t1=1",
        "t6=1 & t5=1 & t4=1 & t3=1 & t2=1",
        "t6=1 & t4=1 & t3=1 & t2=1 & t1=1",
    ]
    .iter()
    .map(|t| Subtorus::parse(t, 6).expect("valid torus"))
    .collect();
    Some((tori, name.display_basis()?))
}

/// The rendered table and the number of rows differing from the embedded data.
pub fn table1(check: bool) -> Result<(Table, usize)> {
    let reference = table1_rows();
    let mut rows = Vec::with_capacity(reference.len());
    let mut mismatches = 0;
    for (i, row) in reference.iter().enumerate() {
        eprintln!("[{}/{}] {}", i + 1, reference.len(), row.name);
        let spec = row.arrangement()?;
        let n = row.n;
        let perm = horizontal(&spec);
        let depth = perm.as_ref().and_then(permutation_depth);
        let tors2 = tors_count(&spec, 2, 1)?.count;
        let tors3 = tors_count(&spec, 3, 1)?.count;
        let nf = perm.as_ref().and_then(|p| depth2_normal_form(p).ok());
        let (sigma, sigma_status, tors2_bottom) = match nf {
            Some(nf) => (sigma_lists(&nf).all_text(), "computed".to_string(), None),
            None => {
                let bottom = tors_count(&spec, 2, n - 2)?.count;
                let status = match known_bottom_components(&spec) {
                    Some((tori, basis)) => {
                        let mut ok = true;
                        for t in &tori {
                            ok &= verify_subtorus_detail(&spec, t, n - 2, Some(&basis))?
                                .iter()
                                .all(|&z| z);
                        }
                        if ok {
                            "verified-containment-only"
                        } else {
                            "containment-failed"
                        }
                    }
                    None => "reference",
                };
                (row.sigma.clone(), status.to_string(), Some(bottom))
            }
        };
        let matches = check.then(|| {
            tors2 == row.tors2
                && tors3 == row.tors3
                && depth == row.depth
                && sigma == row.sigma
                && sigma_status != "containment-failed"
        });
        if matches == Some(false) {
            mismatches += 1;
        }
        rows.push(TableRow {
            n,
            name: row.name.clone(),
            depth,
            sigma,
            sigma_status,
            tors2_bottom,
            tors2,
            tors3,
            matches,
        });
    }
    Ok((Table { rows }, mismatches))
}

#[derive(Serialize)]
pub struct NormalFormOut {
    pub permutation: String,
    pub normal_form: Field<String>,
    pub normal_form_permutation: Field<String>,
    pub sigma: Field<Sigma>,
}

impl std::fmt::Display for NormalFormOut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.normal_form)?;
        if let Field::Value(p) = &self.normal_form_permutation {
            writeln!(f, "permutation: {p}")?;
        }
        if let Field::Value(s) = &self.sigma {
            writeln!(f, "sigma_{{n-2}}: {s}")?;
        }
        Ok(())
    }
}

pub fn normal_form(text: &str) -> Result<NormalFormOut> {
    let spec = parse_spec(text)?;
    let perm =
        horizontal(&spec).ok_or_else(|| anyhow!(Usage(format!("{text} is not a permutation"))))?;
    Ok(match field(depth2_normal_form(&perm))? {
        Field::Value(nf) => {
            let s = sigma_lists(&nf);
            NormalFormOut {
                permutation: perm.to_string(),
                normal_form: Field::Value(nf.to_string()),
                normal_form_permutation: Field::Value(nf.permutation().to_string()),
                sigma: Field::Value(Sigma {
                    all: s.all_text(),
                    through_one: s.through_one_text(),
                }),
            }
        }
        Field::Unavailable(why) => NormalFormOut {
            permutation: perm.to_string(),
            normal_form: Field::Unavailable(why.clone()),
            normal_form_permutation: Field::Unavailable(why.clone()),
            sigma: Field::Unavailable(why),
        },
    })
}

pub fn count_classes(n: usize) -> Result<String> {
    Ok(count_d2_classes(n)
        .map_err(|e| usage(e, &n.to_string()))?
        .to_string())
}

#[derive(Serialize)]
pub struct VerifyOut {
    pub spec: String,
    pub basis: Option<Vec<String>>,
    #[serde(flatten)]
    pub result: Verification,
}

impl std::fmt::Display for VerifyOut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.result.contained)?;
        writeln!(
            f,
            "{} of {} generators of E_{} vanish on {{{}}}",
            self.result.minors_vanishing,
            self.result.minors_total,
            self.result.k,
            self.result.torus
        )?;
        if let Some(b) = &self.basis {
            writeln!(f, "basis: {}", b.join(" "))?;
        }
        Ok(())
    }
}

/// Default basis: the catalog display basis when the spec has one.
pub fn default_basis(spec: &ArrangementSpec) -> Option<Vec<FreeWord>> {
    match spec {
        ArrangementSpec::Catalog(c) => c.display_basis(),
        _ => None,
    }
}

pub fn verify(
    spec: &ArrangementSpec,
    torus: &str,
    k: &str,
    basis: Option<&[FreeWord]>,
) -> Result<VerifyOut> {
    let n = spec.n().map_err(|e| usage(e, &spec.to_string()))?;
    let k = resolve_k(k, n)?;
    let t = Subtorus::parse(torus, n).map_err(|e| usage(e, torus))?;
    let detail =
        verify_subtorus_detail(spec, &t, k, basis).map_err(|e| anyhow!(Usage(e.to_string())))?;
    let vanishing = detail.iter().filter(|&&z| z).count();
    Ok(VerifyOut {
        spec: spec.to_string(),
        basis: basis.map(basis_words),
        result: Verification {
            torus: t.to_string(),
            k,
            contained: vanishing == detail.len(),
            minors_total: detail.len(),
            minors_vanishing: vanishing,
        },
    })
}

#[derive(Serialize)]
pub struct ComponentsOut {
    pub spec: String,
    pub normal_form: Field<String>,
    /// Basis the component equations are written in.
    pub basis: Field<Vec<String>>,
    pub components: Field<Vec<String>>,
}

impl std::fmt::Display for ComponentsOut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "spec: {}", self.spec)?;
        writeln!(f, "normal form: {}", self.normal_form)?;
        match (&self.basis, &self.components) {
            (Field::Value(b), Field::Value(cs)) => {
                writeln!(f, "basis: {}", b.join(" "))?;
                for c in cs {
                    writeln!(f, "{{{c}}}")?;
                }
                Ok(())
            }
            (_, Field::Unavailable(why)) | (Field::Unavailable(why), _) => {
                writeln!(f, "components: unavailable: {why}")
            }
        }
    }
}

/// Components of `V_{n-2}` of a depth-≤2 arrangement, in the block basis of
/// its normal form (the normal-form permutation's planes).
pub fn components(spec: &ArrangementSpec) -> Result<ComponentsOut> {
    let nf = match horizontal(spec) {
        Some(p) => field(depth2_normal_form(&p))?,
        None => Field::out_of_scope(),
    };
    Ok(match nf {
        Field::Value(nf) => ComponentsOut {
            spec: spec.to_string(),
            normal_form: Field::Value(nf.to_string()),
            basis: Field::Value(basis_words(&nf.block_basis())),
            components: Field::Value(
                bottom_components_d2(&nf)
                    .iter()
                    .map(|t| t.to_string())
                    .collect(),
            ),
        },
        Field::Unavailable(why) => ComponentsOut {
            spec: spec.to_string(),
            normal_form: Field::Unavailable(why.clone()),
            basis: Field::Unavailable(why.clone()),
            components: Field::Unavailable(why),
        },
    })
}
