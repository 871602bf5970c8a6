use serde::ser::{Serialize, SerializeStruct, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Statistical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Statistical => "statistical",
        }
    }
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One line of the suite output.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub group: String,
    pub mode: Mode,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    /// Present exactly for statistical checks; `None` there means skipped.
    pub z_score: Option<f64>,
    /// `exact`, or the band in standard errors.
    pub tolerance: String,
    pub runtime_ms: u64,
}

impl CheckReport {
    pub fn exact(name: impl Into<String>, group: &str, ok: bool, expected: String, actual: String) -> Self {
        CheckReport {
            name: name.into(),
            group: group.to_string(),
            mode: Mode::Exact,
            status: if ok { Status::Pass } else { Status::Fail },
            expected,
            actual,
            z_score: None,
            tolerance: "exact".into(),
            runtime_ms: 0,
        }
    }

    pub fn statistical(
        name: impl Into<String>,
        group: &str,
        ok: bool,
        expected: String,
        actual: String,
        z: f64,
        sigma: f64,
    ) -> Self {
        CheckReport {
            name: name.into(),
            group: group.to_string(),
            mode: Mode::Statistical,
            status: if ok { Status::Pass } else { Status::Fail },
            expected,
            actual,
            z_score: Some(z),
            tolerance: format!("{sigma} sigma"),
            runtime_ms: 0,
        }
    }

    pub fn skipped(name: impl Into<String>, group: &str, mode: Mode, reason: String) -> Self {
        CheckReport {
            name: name.into(),
            group: group.to_string(),
            mode,
            status: Status::Skipped,
            expected: String::new(),
            actual: reason,
            z_score: None,
            tolerance: String::new(),
            runtime_ms: 0,
        }
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let stat = self.mode == Mode::Statistical;
        let mut st = s.serialize_struct("CheckReport", if stat { 9 } else { 8 })?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("mode", self.mode.as_str())?;
        st.serialize_field("status", self.status.as_str())?;
        st.serialize_field("expected", &self.expected)?;
        st.serialize_field("actual", &self.actual)?;
        if stat {
            st.serialize_field("z_score", &self.z_score.filter(|z| z.is_finite()))?;
        }
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("runtime_ms", &self.runtime_ms)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

pub fn count_failures(reports: &[CheckReport]) -> usize {
    reports.iter().filter(|r| r.status == Status::Fail).count()
}

/// Renders the reports as the versioned JSON document or an aligned table.
pub fn render_report(reports: &[CheckReport], seed: u64, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            #[derive(serde::Serialize)]
            struct Doc<'a> {
                suite_version: u32,
                seed: u64,
                checks: &'a [CheckReport],
                failures: usize,
            }
            let doc = Doc { suite_version: 1, seed, checks: reports, failures: count_failures(reports) };
            serde_json::to_string(&doc).expect("reports serialize")
        }
        ReportFormat::Table => {
            let header = ["group", "check", "mode", "status", "z", "expected", "actual"];
            let rows: Vec<[String; 7]> = reports
                .iter()
                .map(|r| {
                    [
                        r.group.clone(),
                        r.name.clone(),
                        r.mode.as_str().to_string(),
                        r.status.as_str().to_string(),
                        r.z_score.map(|z| format!("{z:+.2}")).unwrap_or_default(),
                        r.expected.clone(),
                        r.actual.clone(),
                    ]
                })
                .collect();
            let mut widths = header.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let fmt_row = |cells: Vec<&str>| -> String {
                let mut line = String::new();
                for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
                    if i + 1 == cells.len() {
                        line.push_str(c);
                    } else {
                        line.push_str(&format!("{c:<w$}  "));
                    }
                }
                line.trim_end().to_string()
            };
            let mut out = fmt_row(header.to_vec());
            out.push('\n');
            for row in &rows {
                out.push_str(&fmt_row(row.iter().map(String::as_str).collect()));
                out.push('\n');
            }
            out.push_str(&format!("{} checks, {} failures\n", reports.len(), count_failures(reports)));
            out
        }
    }
}
