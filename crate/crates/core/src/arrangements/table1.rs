use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::spec::ArrangementSpec;
use crate::error::Result;

const TABLE1_JSON: &str = include_str!("../../data/table1.json");

/// One row of the reference table of arrangements of at most six planes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub name: String,
    /// Spec text accepted by [`ArrangementSpec::parse`].
    pub spec: String,
    /// Depth, when the arrangement is completely decomposable.
    pub depth: Option<usize>,
    /// Codimensions of the components of `V_{n-2}`, as in `3,4_2,5_3`.
    pub sigma: String,
    pub tors2: u128,
    pub tors3: u128,
    /// `δ` values of the indecomposable odd proper subarrangements.
    pub gamma_deltas: Vec<u8>,
}

impl Table1Row {
    pub fn arrangement(&self) -> Result<ArrangementSpec> {
        ArrangementSpec::parse(&self.spec)
    }
}

#[derive(Deserialize)]
struct Table1File {
    rows: Vec<Table1Row>,
}

/// The embedded reference rows, in table order.
pub fn table1_rows() -> &'static [Table1Row] {
    static ROWS: OnceLock<Vec<Table1Row>> = OnceLock::new();
    ROWS.get_or_init(|| {
        serde_json::from_str::<Table1File>(TABLE1_JSON)
            .expect("embedded table parses")
            .rows
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_load_and_parse() {
        let rows = table1_rows();
        assert_eq!(rows.len(), 20);
        for row in rows {
            let spec = row.arrangement().unwrap();
            assert_eq!(spec.n().unwrap(), row.n, "{}", row.name);
        }
        assert_eq!(
            rows.iter()
                .filter(|r| r.depth.is_some_and(|d| d <= 2))
                .count(),
            13
        );
    }
}
