use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One checked relation. `witness` is the nonzero normal form for symbolic
/// checks or the residual summary for numeric ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub relation: String,
    pub status: Status,
    pub witness: String,
    pub mode: String,
    pub q_power: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CheckReport {
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new(records: Vec<CheckRecord>) -> Self {
        CheckReport { records }
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn get(&self, relation: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.relation == relation)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            write!(f, "  [{tag}] {} ({}", r.relation, r.mode)?;
            if r.q_power != 1 {
                write!(f, ", q^{}", r.q_power)?;
            }
            f.write_str(")")?;
            if !r.passed() || r.residual.is_some() {
                write!(f, ": {}", r.witness)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
