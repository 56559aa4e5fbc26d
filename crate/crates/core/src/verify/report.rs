use std::fmt::Write as _;

/// One compared quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Statistic {
    pub name: String,
    pub estimate: f64,
    pub reference: f64,
    /// `NaN` for statistics compared against a threshold rather than a
    /// sampling distribution.
    pub standard_error: f64,
    pub pass: bool,
}

impl Statistic {
    /// Passes when `|estimate - reference| <= n_se * se`.
    pub fn within_se(
        name: impl Into<String>,
        estimate: f64,
        reference: f64,
        se: f64,
        n_se: f64,
    ) -> Self {
        Self {
            name: name.into(),
            estimate,
            reference,
            standard_error: se,
            pass: (estimate - reference).abs() <= n_se * se,
        }
    }

    /// Passes when `estimate >= threshold`.
    pub fn at_least(name: impl Into<String>, estimate: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            estimate,
            reference: threshold,
            standard_error: f64::NAN,
            pass: estimate >= threshold,
        }
    }

    /// Passes when `|estimate - reference| <= tol`.
    pub fn within_abs(name: impl Into<String>, estimate: f64, reference: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            estimate,
            reference,
            standard_error: f64::NAN,
            pass: (estimate - reference).abs() <= tol,
        }
    }

    /// `|estimate - reference| / se`.
    pub fn deviation_se(&self) -> f64 {
        (self.estimate - self.reference).abs() / self.standard_error
    }
}

/// Outcome of a verification run. The verdict is derived from the recorded
/// statistics only.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub test: String,
    pub sample_size: usize,
    pub seeds: Vec<u64>,
    pub statistics: Vec<Statistic>,
    /// Free-form `key = value` facts about the run.
    pub notes: Vec<(String, String)>,
    /// Share of statistics that must pass, per group.
    pub groups: Vec<CheckGroup>,
}

/// Statistics whose name starts with `prefix` must pass at least
/// `min_fraction` of the time.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckGroup {
    pub prefix: String,
    pub min_fraction: f64,
}

impl VerificationReport {
    pub fn new(test: impl Into<String>, sample_size: usize, seeds: Vec<u64>) -> Self {
        Self {
            test: test.into(),
            sample_size,
            seeds,
            statistics: Vec::new(),
            notes: Vec::new(),
            groups: Vec::new(),
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    pub fn require(&mut self, prefix: impl Into<String>, min_fraction: f64) {
        self.groups.push(CheckGroup {
            prefix: prefix.into(),
            min_fraction,
        });
    }

    /// `(passing, total)` among statistics named with `prefix`.
    pub fn tally(&self, prefix: &str) -> (usize, usize) {
        let group: Vec<_> = self
            .statistics
            .iter()
            .filter(|s| s.name.starts_with(prefix))
            .collect();
        (group.iter().filter(|s| s.pass).count(), group.len())
    }

    /// Every group meets its fraction; statistics outside all groups must
    /// each pass.
    pub fn pass(&self) -> bool {
        let grouped = |s: &Statistic| self.groups.iter().any(|g| s.name.starts_with(&g.prefix));
        let groups_ok = self.groups.iter().all(|g| {
            let (ok, total) = self.tally(&g.prefix);
            total == 0 || ok as f64 >= g.min_fraction * total as f64
        });
        groups_ok
            && self
                .statistics
                .iter()
                .filter(|s| !grouped(s))
                .all(|s| s.pass)
    }

    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "test = {}", self.test);
        let _ = writeln!(out, "sample_size = {}", self.sample_size);
        let seeds: Vec<String> = self.seeds.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "seeds = {}", seeds.join(","));
        for g in &self.groups {
            let (ok, total) = self.tally(&g.prefix);
            let _ = writeln!(
                out,
                "group.{} = {ok}/{total} (need {})",
                g.prefix, g.min_fraction
            );
        }
        let ok = self.statistics.iter().filter(|s| s.pass).count();
        let _ = writeln!(out, "statistics_passing = {ok}/{}", self.statistics.len());
        for (k, v) in &self.notes {
            let _ = writeln!(out, "{k} = {v}");
        }
        let _ = writeln!(out, "pass = {}", self.pass());
        out
    }

    /// Columns `name,estimate,reference,standard_error,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,estimate,reference,standard_error,pass\n");
        for s in &self.statistics {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                s.name, s.estimate, s.reference, s.standard_error, s.pass
            );
        }
        out
    }
}
