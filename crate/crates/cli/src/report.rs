use qdom_core::{FinCompact, Poset, UpperSet, Valuation};
use serde_json::{json, Value};

/// What a command produced: both renderings, and whether the checked
/// property held (exit 0) or failed / a witness was found (exit 1).
pub struct Report {
    pub text: String,
    pub json: Value,
    pub holds: bool,
}

impl Report {
    pub fn new(text: String, json: Value) -> Report {
        Report { text, json, holds: true }
    }

    pub fn holds(mut self, holds: bool) -> Report {
        self.holds = holds;
        self
    }
}

pub fn names(poset: &Poset, xs: &[usize]) -> Value {
    json!(xs.iter().map(|&x| poset.name(x)).collect::<Vec<_>>())
}

pub fn compact(poset: &Poset, e: &FinCompact) -> Value {
    names(poset, e.elements())
}

pub fn upper_set(poset: &Poset, u: &UpperSet) -> Value {
    names(poset, &u.elements())
}

pub fn set_text(poset: &Poset, u: &UpperSet) -> String {
    poset.format_set(&u.elements())
}

pub fn valuation(poset: &Poset, v: &Valuation) -> Value {
    json!(v.format(poset))
}

pub fn valuations(poset: &Poset, vs: &[Valuation]) -> Value {
    json!(vs.iter().map(|v| v.format(poset)).collect::<Vec<_>>())
}

/// One valuation per line, or `(none)`.
pub fn valuation_lines(poset: &Poset, vs: &[Valuation], indent: &str) -> String {
    if vs.is_empty() {
        return format!("{indent}(none)\n");
    }
    vs.iter().map(|v| format!("{indent}{}\n", v.format(poset))).collect()
}
