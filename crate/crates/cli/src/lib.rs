//! Building blocks of the `oddgraph` command line: algebra selection,
//! verification suites and their JSON reports.

pub mod algebra;
pub mod suites;

use serde_json::Value;

/// A report and whether every identity it checks holds.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn new(report: Value, ok: bool) -> Self {
        Outcome { report, ok }
    }
}

/// Pretty JSON with a trailing newline. `serde_json` maps are sorted, so the
/// text depends only on the values.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
