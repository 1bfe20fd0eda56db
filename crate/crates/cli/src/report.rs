use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    /// Worst observed value of the checked quantity.
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Case {
    /// Passes when `measured <= tolerance`.
    pub fn within(
        name: impl Into<String>,
        measured: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        let status = if measured <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            status,
            measured,
            tolerance,
            detail: detail.into(),
        }
    }

    /// A case that could not be evaluated at all.
    pub fn failed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            measured: f64::NAN,
            tolerance: 0.0,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    /// Sorts cases by name and tallies the summary.
    pub fn new(suite: impl Into<String>, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |s| cases.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skip: count(Status::Skip),
            total: cases.len(),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            cases,
            summary,
        }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_matches_cases() {
        let r = Report::new(
            "x",
            vec![
                Case::within("b", 1.0, 2.0, ""),
                Case::within("a", 3.0, 2.0, ""),
                Case::failed("c", "boom"),
            ],
        );
        assert_eq!(r.cases[0].name, "a");
        assert_eq!(
            r.summary,
            Summary {
                pass: 1,
                fail: 2,
                skip: 0,
                total: 3
            }
        );
        assert!(!r.ok());
        assert!(r.to_json().contains("\"schema_version\": 1"));
    }

    #[test]
    fn nan_measurement_fails() {
        assert_eq!(Case::within("n", f64::NAN, 1.0, "").status, Status::Fail);
    }
}
