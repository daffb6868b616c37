use std::fmt;

use serde::{Deserialize, Serialize};

use super::combinatorics::{linking_from_xi, linking_matrix_of_perm, LinkingMatrix};
use crate::error::{Error, Result};
use crate::freebraid::{xi_braid, FreeWord, PureBraidWord};
use crate::perm::Permutation;

/// Named arrangements with fixed data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogName {
    /// The complexified real arrangement `A_n = A(1, 2, …, n)`.
    Complex(usize),
    /// `A(1234)`.
    ZPlus,
    /// `A(2134)`.
    ZMinus,
    /// `A(341256)`.
    K,
    /// Six planes with the linking numbers of `K` up to relabeling, stored by a combed braid.
    L,
    /// Six planes stored by a combed braid; not horizontal.
    M,
}

impl CatalogName {
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        Ok(match name {
            "Z+" => CatalogName::ZPlus,
            "Z-" | "Z−" => CatalogName::ZMinus,
            "K" => CatalogName::K,
            "L" => CatalogName::L,
            "M" => CatalogName::M,
            _ => {
                let digits = name
                    .strip_prefix("A_")
                    .or_else(|| name.strip_prefix('A'))
                    .ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
                let n: usize = digits
                    .parse()
                    .map_err(|_| Error::UnknownCatalog(name.to_string()))?;
                if n == 0 {
                    return Err(Error::UnknownCatalog(name.to_string()));
                }
                CatalogName::Complex(n)
            }
        })
    }

    /// The underlying horizontal permutation or combed braid.
    pub fn expand(&self) -> ArrangementSpec {
        let perm = |s: &str| ArrangementSpec::Horizontal(Permutation::parse(s).unwrap());
        match self {
            CatalogName::Complex(n) => ArrangementSpec::Horizontal(Permutation::identity(*n)),
            CatalogName::ZPlus => perm("1234"),
            CatalogName::ZMinus => perm("2134"),
            CatalogName::K => perm("341256"),
            CatalogName::L => ArrangementSpec::XiWord {
                n: 6,
                xi: PureBraidWord::parse("A(1,3) A(2,3) A(4,5) A(1,4) A(4,5)^-1 A(2,4)", 5)
                    .unwrap(),
            },
            CatalogName::M => ArrangementSpec::XiWord {
                n: 6,
                xi: PureBraidWord::parse("A(2,4) A(1,2) A(3,4) A(1,5) A(3,5)", 5).unwrap(),
            },
        }
    }

    /// For each strand coordinate of the combed braid, the component it represents.
    fn labels(&self) -> Option<Vec<usize>> {
        match self {
            // Matches the combed braid's linking numbers to the stored ones below.
            CatalogName::L => Some(vec![1, 2, 4, 5, 3, 6]),
            _ => None,
        }
    }

    /// Free basis `y_1..y_{n-1}` in which this entry's matrices and variety
    /// components are conventionally written, if it differs from the `x`-basis.
    pub fn display_basis(&self) -> Option<Vec<FreeWord>> {
        match self {
            CatalogName::K | CatalogName::L => Some(
                ["x1", "x3", "x1x2", "x1x2x3x4", "x5"]
                    .iter()
                    .map(|w| FreeWord::parse(w, 5).unwrap())
                    .collect(),
            ),
            _ => None,
        }
    }

    fn linking(&self) -> Option<LinkingMatrix> {
        match self {
            CatalogName::L => {
                let mut m = vec![vec![1i8; 6]; 6];
                for i in 0..6 {
                    m[i][i] = 0;
                }
                for (a, b) in [(1, 5), (2, 5), (1, 4), (2, 4)] {
                    m[a - 1][b - 1] = -1;
                    m[b - 1][a - 1] = -1;
                }
                Some(m)
            }
            _ => None,
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Complex(n) => write!(f, "A_{n}"),
            CatalogName::ZPlus => write!(f, "Z+"),
            CatalogName::ZMinus => write!(f, "Z-"),
            CatalogName::K => write!(f, "K"),
            CatalogName::L => write!(f, "L"),
            CatalogName::M => write!(f, "M"),
        }
    }
}

/// Combinatorial description of an arrangement of `n` transverse planes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArrangementSpec {
    /// Horizontal configuration `A(τ)`.
    Horizontal(Permutation),
    /// Arrangement given by its combed pure braid on `n - 1` strands.
    XiWord {
        n: usize,
        xi: PureBraidWord,
    },
    Catalog(CatalogName),
    /// `count` parallel copies of `component` added with crossing sign `sign`.
    Cable {
        base: Box<ArrangementSpec>,
        component: usize,
        sign: i8,
        count: usize,
    },
}

/// A spec reduced to its combed braid, with the component represented by
/// each strand coordinate (1-based; the last coordinate is the fiber).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolved {
    pub n: usize,
    pub xi: PureBraidWord,
    pub labels: Vec<usize>,
    /// Per strand coordinate: whether the component's orientation is
    /// reversed relative to its standard one. Rotating the top plane to the
    /// last position reverses every plane that moves to the front.
    pub reversed: Vec<bool>,
}

impl ArrangementSpec {
    /// Parses `perm:341256`, `perm:3,4,1,2,5,6`, `xi:n=6;A(2,4)A(1,2)…`,
    /// `cat:K` or `cable(<spec>,k=6,sign=+,r=2)`.
    pub fn parse(text: &str) -> Result<Self> {
        parse_at(text, 0)
    }

    /// Number of planes.
    pub fn n(&self) -> Result<usize> {
        Ok(match self {
            ArrangementSpec::Horizontal(p) => p.len(),
            ArrangementSpec::XiWord { n, .. } => *n,
            ArrangementSpec::Catalog(c) => c.expand().n()?,
            ArrangementSpec::Cable { base, count, .. } => base.n()? + count,
        })
    }

    /// Reduces to `(n, ξ, labels)`. Cables have no stored braid and are
    /// handled at the polynomial level instead.
    pub fn resolve(&self) -> Result<Resolved> {
        match self {
            ArrangementSpec::Horizontal(perm) => {
                let n = perm.len();
                let (rotated, origin) = perm.rotate_top_last();
                let top = perm.position_of(n);
                let labels = (1..=n)
                    .map(|v| origin[rotated.position_of(v) - 1])
                    .collect();
                let reversed = (1..=n)
                    .map(|v| origin[rotated.position_of(v) - 1] > top)
                    .collect();
                Ok(Resolved {
                    n,
                    xi: xi_braid(perm),
                    labels,
                    reversed,
                })
            }
            ArrangementSpec::XiWord { n, xi } => {
                if *n == 0 || xi.strands() != (*n).saturating_sub(1).max(1) {
                    return Err(Error::RankMismatch {
                        expected: n.saturating_sub(1).max(1),
                        found: xi.strands(),
                    });
                }
                Ok(Resolved {
                    n: *n,
                    xi: xi.clone(),
                    labels: (1..=*n).collect(),
                    reversed: vec![false; *n],
                })
            }
            ArrangementSpec::Catalog(c) => {
                let mut r = c.expand().resolve()?;
                if let Some(labels) = c.labels() {
                    r.labels = labels;
                }
                Ok(r)
            }
            ArrangementSpec::Cable { .. } => Err(Error::Unsupported(
                "cables are computed from the link polynomial, not a stored braid".into(),
            )),
        }
    }

    /// Linking numbers of the link at infinity, in this spec's component labels.
    pub fn linking_matrix(&self) -> Result<LinkingMatrix> {
        match self {
            ArrangementSpec::Horizontal(p) => Ok(linking_matrix_of_perm(p)),
            ArrangementSpec::XiWord { .. } => Err(Error::NoLinkingData(self.to_string())),
            ArrangementSpec::Catalog(c) => match c.linking() {
                Some(m) => Ok(m),
                None => match c.expand() {
                    ArrangementSpec::Horizontal(p) => Ok(linking_matrix_of_perm(&p)),
                    // Read off the combed braid: the only catalog braid without
                    // separately stored linking data.
                    _ => {
                        let r = self.resolve()?;
                        Ok(linking_from_xi(&r))
                    }
                },
            },
            ArrangementSpec::Cable {
                base,
                component,
                sign,
                count,
            } => {
                let mut m = base.linking_matrix()?;
                let n = m.len();
                if *component == 0 || *component > n {
                    return Err(Error::IndexOutOfRange {
                        what: "component",
                        index: *component,
                        max: n,
                    });
                }
                let mut around = *component - 1;
                for _ in 0..*count {
                    m = extend_linking(&m, around, *sign);
                    around = m.len() - 1;
                }
                Ok(m)
            }
        }
    }
}

/// Adds a parallel copy of component `k` (0-based) linking it with sign `sign`.
pub(crate) fn extend_linking(m: &LinkingMatrix, k: usize, sign: i8) -> LinkingMatrix {
    let n = m.len();
    let mut out = vec![vec![0i8; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = m[i][j];
        }
        out[i][n] = if i == k { sign } else { m[i][k] };
        out[n][i] = out[i][n];
    }
    out
}

fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &s[start..]));
    parts
}

fn shift(err: Error, offset: usize) -> Error {
    match err {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        Error::InvalidPermutation(msg) | Error::UnknownCatalog(msg) => {
            Error::Parse { pos: offset, msg }
        }
        other => other,
    }
}

fn parse_at(text: &str, offset: usize) -> Result<ArrangementSpec> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let offset = offset + lead;
    if let Some(rest) = body.strip_prefix("perm:") {
        return Permutation::parse(rest)
            .map(ArrangementSpec::Horizontal)
            .map_err(|e| shift(e, offset + 5));
    }
    if let Some(rest) = body.strip_prefix("cat:") {
        return CatalogName::parse(rest)
            .map(ArrangementSpec::Catalog)
            .map_err(|e| shift(e, offset + 4));
    }
    if let Some(rest) = body.strip_prefix("xi:") {
        let base = offset + 3;
        let (head, word) = rest
            .split_once(';')
            .ok_or_else(|| Error::parse(base, "expected 'n=<planes>;<word>'"))?;
        let n: usize = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse(base, "expected 'n=<planes>'"))?;
        if n == 0 {
            return Err(Error::parse(base, "n must be positive"));
        }
        let xi = PureBraidWord::parse(word, n.saturating_sub(1).max(1))
            .map_err(|e| shift(e, base + head.len() + 1))?;
        return Ok(ArrangementSpec::XiWord { n, xi });
    }
    if let Some(rest) = body.strip_prefix("cable(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(offset + body.len(), "expected ')'"))?;
        let base_offset = offset + 6;
        let mut spec_parts = Vec::new();
        let (mut component, mut sign, mut count) = (None, 1i8, 1usize);
        for (pos, part) in split_top_level(inner) {
            let p = part.trim();
            let at = base_offset + pos;
            if let Some(v) = p.strip_prefix("k=") {
                component = Some(
                    v.parse::<usize>()
                        .map_err(|_| Error::parse(at, "expected component index"))?,
                );
            } else if let Some(v) = p.strip_prefix("sign=") {
                sign = match v {
                    "+" | "+1" | "1" => 1,
                    "-" | "-1" => -1,
                    _ => return Err(Error::parse(at, "sign must be + or -")),
                };
            } else if let Some(v) = p.strip_prefix("r=") {
                count = v
                    .parse::<usize>()
                    .ok()
                    .filter(|&r| r >= 1)
                    .ok_or_else(|| Error::parse(at, "r must be a positive integer"))?;
            } else {
                spec_parts.push((pos, part));
            }
        }
        let Some(&(first, _)) = spec_parts.first() else {
            return Err(Error::parse(base_offset, "missing base spec"));
        };
        let joined: Vec<&str> = spec_parts.iter().map(|(_, s)| *s).collect();
        let base = parse_at(&joined.join(","), base_offset + first)?;
        let n = base.n()?;
        return Ok(ArrangementSpec::Cable {
            base: Box::new(base),
            component: component.unwrap_or(n),
            sign,
            count,
        });
    }
    Err(Error::parse(
        offset,
        "expected 'perm:', 'xi:', 'cat:' or 'cable('",
    ))
}

impl fmt::Display for ArrangementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementSpec::Horizontal(p) => write!(f, "perm:{p}"),
            ArrangementSpec::XiWord { n, xi } => {
                let word: String = xi.to_string().split_whitespace().collect();
                write!(f, "xi:n={n};{word}")
            }
            ArrangementSpec::Catalog(c) => write!(f, "cat:{c}"),
            ArrangementSpec::Cable {
                base,
                component,
                sign,
                count,
            } => write!(
                f,
                "cable({base},k={component},sign={},r={count})",
                if *sign < 0 { "-" } else { "+" }
            ),
        }
    }
}

/// Looks up a catalog entry by name and returns its underlying description.
pub fn catalog(name: &str) -> Result<ArrangementSpec> {
    CatalogName::parse(name).map(|c| c.expand())
}
