use serde::{Deserialize, Serialize};

/// One named residual compared against its threshold.
///
/// Informational checks are reported but never fail a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    pub informational: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            // NaN never passes
            passed: value <= threshold,
            informational: false,
        }
    }

    pub fn informational(mut self, yes: bool) -> Self {
        self.informational = yes;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: PropertyReport) {
        self.checks.extend(other.checks);
    }

    /// True when every non-informational check passed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_fail_semantics() {
        assert!(Check::new("a", 0.5, 1.0).passed);
        assert!(Check::new("a", 1.0, 1.0).passed);
        assert!(!Check::new("a", 1.5, 1.0).passed);
        assert!(!Check::new("a", f64::NAN, 1.0).passed);

        let mut r = PropertyReport::default();
        r.push(Check::new("ok", 0.0, 1.0));
        r.push(Check::new("info", 5.0, 1.0).informational(true));
        assert!(r.all_passed());
        r.push(Check::new("bad", 5.0, 1.0));
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.get("info").unwrap().value, 5.0);
    }
}
