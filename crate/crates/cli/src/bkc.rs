//! Best-known-codes snapshot: a local CSV of `n,k,d` records, optionally
//! with a `p` column. Used only to annotate reports.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BkcRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub n: usize,
    pub k: usize,
    pub d: u64,
}

#[derive(Debug, Clone, Default)]
pub struct BestKnown {
    records: Vec<BkcRecord>,
}

impl BestKnown {
    pub fn load(path: &Path) -> CliResult<Self> {
        let file = std::fs::File::open(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        Self::from_reader(file)
    }

    pub fn from_reader<R: std::io::Read>(reader: R) -> CliResult<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
        let records = rdr.deserialize().collect::<Result<Vec<BkcRecord>, _>>()?;
        Ok(BestKnown { records })
    }

    /// First record with matching `n`, `k` and, when present, `p`.
    pub fn lookup(&self, p: u32, n: usize, k: usize) -> Option<BkcRecord> {
        self.records.iter().find(|r| r.n == n && r.k == k && r.p.is_none_or(|rp| rp == p)).cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_respects_characteristic() {
        let csv = "# snapshot\np,n,k,d\n2,48,1,48\n3,18,1,18\n";
        let b = BestKnown::from_reader(csv.as_bytes()).unwrap();
        assert_eq!(b.lookup(2, 48, 1).unwrap().d, 48);
        assert!(b.lookup(3, 48, 1).is_none());
    }

    #[test]
    fn p_column_is_optional() {
        let b = BestKnown::from_reader("n,k,d\n448,58,152\n".as_bytes()).unwrap();
        assert_eq!(b.lookup(2, 448, 58).unwrap().d, 152);
    }
}
