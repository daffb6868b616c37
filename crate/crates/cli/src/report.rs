use std::fmt;

use serde::{Deserialize, Serialize};

pub const OUT_OF_SCOPE: &str = "out of scope";

/// A report value, or the reason it was not computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field<T> {
    Value(T),
    Unavailable(String),
}

impl<T> Field<T> {
    pub fn out_of_scope() -> Self {
        Field::Unavailable(OUT_OF_SCOPE.to_string())
    }
}

impl<T: fmt::Display> fmt::Display for Field<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Value(v) => write!(f, "{v}"),
            Field::Unavailable(why) => write!(f, "unavailable: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsEntry {
    pub p: u64,
    pub k: usize,
    pub count: Field<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma {
    /// Codimensions of all components, as in `3,4_2,5_3`.
    pub all: String,
    /// Codimensions of the components through the identity.
    pub through_one: String,
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (through 1: {})", self.all, self.through_one)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub torus: String,
    pub k: usize,
    pub contained: bool,
    pub minors_total: usize,
    pub minors_vanishing: usize,
}

/// Everything `invariants` (and `cable`) computes for one arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub spec: String,
    pub n: usize,
    /// Words of the free basis the matrix was built in, if not the standard one.
    pub basis: Option<Vec<String>>,
    pub alexander_poly: Field<String>,
    pub single_var_poly: Field<String>,
    pub delta: Field<u8>,
    pub tors: Vec<TorsEntry>,
    pub normal_form: Field<String>,
    pub sigma: Field<Sigma>,
    pub components: Field<Vec<String>>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spec: {}", self.spec)?;
        writeln!(f, "n: {}", self.n)?;
        if let Some(b) = &self.basis {
            writeln!(f, "basis: {}", b.join(" "))?;
        }
        writeln!(f, "alexander polynomial: {}", self.alexander_poly)?;
        writeln!(f, "single-variable polynomial: {}", self.single_var_poly)?;
        writeln!(f, "delta: {}", self.delta)?;
        for t in &self.tors {
            writeln!(f, "Tors_{{{},{}}} = {}", t.p, t.k, t.count)?;
        }
        writeln!(f, "normal form: {}", self.normal_form)?;
        writeln!(f, "sigma_{{n-2}}: {}", self.sigma)?;
        match &self.components {
            Field::Value(list) => {
                writeln!(
                    f,
                    "components of V_{{n-2}} (normal-form block basis): {}",
                    list.len()
                )?;
                for c in list {
                    writeln!(f, "  {{{c}}}")?;
                }
                Ok(())
            }
            Field::Unavailable(why) => writeln!(f, "components of V_{{n-2}}: unavailable: {why}"),
        }
    }
}

/// One rendered row of the reference table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub name: String,
    pub depth: Option<usize>,
    pub sigma: String,
    /// `computed`, `verified-containment-only` or `reference`.
    pub sigma_status: String,
    /// `Tors_{2,n-2}`, shown where the codimension list is not computed.
    pub tors2_bottom: Option<u128>,
    pub tors2: u128,
    pub tors3: u128,
    /// Whether the computed values agree with the embedded ones (`--check` only).
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<TableRow>,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma_col: Vec<String> = self
            .rows
            .iter()
            .map(|r| match (r.sigma_status.as_str(), r.tors2_bottom) {
                ("computed", _) => r.sigma.clone(),
                (status, Some(t)) => {
                    format!("{} [{status}; Tors_{{2,{}}} = {t}]", r.sigma, r.n - 2)
                }
                (status, None) => format!("{} [{status}]", r.sigma),
            })
            .collect();
        let name_w = self
            .rows
            .iter()
            .map(|r| r.name.chars().count())
            .max()
            .unwrap_or(0)
            .max(11);
        let sigma_w = sigma_col
            .iter()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(0)
            .max(7);
        let check = self.rows.iter().any(|r| r.matches.is_some());
        write!(
            f,
            "{:>2}  {:<name_w$}  {:>5}  {:<sigma_w$}  {:>10}  {:>10}",
            "n", "arrangement", "depth", "sigma", "Tors_{2,1}", "Tors_{3,1}"
        )?;
        writeln!(f, "{}", if check { "  check" } else { "" })?;
        for (r, sigma) in self.rows.iter().zip(&sigma_col) {
            let depth = r.depth.map_or("-".to_string(), |d| d.to_string());
            write!(
                f,
                "{:>2}  {:<name_w$}  {:>5}  {:<sigma_w$}  {:>10}  {:>10}",
                r.n, r.name, depth, sigma, r.tors2, r.tors3
            )?;
            match r.matches {
                Some(true) => writeln!(f, "  ok")?,
                Some(false) => writeln!(f, "  MISMATCH")?,
                None => writeln!(f)?,
            }
        }
        Ok(())
    }
}
