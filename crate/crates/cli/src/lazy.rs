//! Commands on the countable posets N2, T and the sum of two copies of ℕ ∪ {ω}.

use std::fmt::Write;

use anyhow::{anyhow, bail, Result};
use qdom_core::enumerate::monotone_maps;
use qdom_core::lazy::{
    family_witness, hat_f_rigidity_check, n2_family, t_family, truncate, Code, FamilyIndex, LazyKind, LazyPoset,
    LazyQuasiDeflation,
};
use qdom_core::text::format_poset;
use qdom_core::MonotoneMap;
use serde_json::json;

use crate::report::Report;

pub fn kind_name(kind: LazyKind) -> &'static str {
    match kind {
        LazyKind::N2 => "n2",
        LazyKind::T => "t",
        LazyKind::NomegaSum => "nomega",
    }
}

pub fn code(kind: LazyKind, s: &str) -> Result<Code> {
    let c: Code = s.parse()?;
    Ok(LazyPoset::new(kind).check(c)?)
}

fn codes(cs: &[Code]) -> Vec<String> {
    cs.iter().map(Code::to_string).collect()
}

/// `i,j` for N2 (parentheses allowed), `i` for T.
pub fn member(kind: LazyKind, index: &str) -> Result<LazyQuasiDeflation> {
    let bad = || anyhow!("malformed family index `{index}`");
    let parts: Vec<u64> = index
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match (kind, parts.as_slice()) {
        (LazyKind::N2, [i, j]) => Ok(n2_family(*i, *j)),
        (LazyKind::T, [i]) => Ok(t_family(*i)),
        (LazyKind::NomegaSum, _) => bail!("no family is defined on nomega"),
        _ => Err(bad()),
    }
}

pub fn describe(kind: LazyKind) -> Result<Report> {
    let (elements, family) = match kind {
        LazyKind::N2 => ("bot, n:0:L, n:1:L, omega", "phi_ij indexed by i,j"),
        LazyKind::T => ("bot, n:0:L, n:1:L, top", "phi_i indexed by i"),
        LazyKind::NomegaSum => ("bot, n:0:L, n:1:L, omega0, omega1", "none"),
    };
    let t1 = truncate(kind, 1)?;
    let text = format!(
        "kind: {}\nelements: {elements}\nfamily: {family}\ntruncation 1: {} elements\n",
        kind_name(kind),
        t1.poset.len()
    );
    let json = json!({
        "kind": kind_name(kind),
        "elements": elements,
        "family": family,
        "truncation_1": codes(&t1.codes),
    });
    Ok(Report::new(text, json))
}

pub fn leq(kind: LazyKind, x: Code, y: Code) -> Result<Report> {
    let b = LazyPoset::new(kind).leq(x, y)?;
    Ok(Report::new(format!("{b}\n"), json!({ "leq": b })).holds(b))
}

pub fn family(kind: LazyKind, m: LazyQuasiDeflation, x: Code) -> Result<Report> {
    let image = m.apply(x)?;
    let set = codes(&image);
    let text = format!("phi{}({x}) = {{{}}}\n", m.index(), set.join(", "));
    let json = json!({ "kind": kind_name(kind), "index": m.index().to_string(), "point": x.to_string(), "image": set });
    Ok(Report::new(text, json))
}

/// An index whose member keeps `y` out of `↑φ(x)`; exit 1 when `x <= y`
/// and no such index can exist.
pub fn witness(kind: LazyKind, x: Code, y: Code) -> Result<Report> {
    if LazyPoset::new(kind).leq(x, y)? {
        let text = format!("{x} <= {y}: no index separates them\n");
        return Ok(Report::new(text, json!({ "index": null })).holds(false));
    }
    let idx = family_witness(kind, x, y)?;
    let text = format!("index {idx}: {y} is not in ↑phi{idx}({x})\n");
    let json = json!({ "index": match idx {
        FamilyIndex::N2(i, j) => json!([i, j]),
        FamilyIndex::T(i) => json!([i]),
    } });
    Ok(Report::new(text, json))
}

pub fn truncation(kind: LazyKind, k: u64, dot: bool) -> Result<Report> {
    let t = truncate(kind, k)?;
    if dot {
        let d = t.poset.to_dot("truncation");
        return Ok(Report::new(d.clone(), json!({ "dot": d })));
    }
    let text = format_poset(&t.poset);
    Ok(Report::new(text.clone(), json!({ "kind": kind_name(kind), "k": k, "poset": text })))
}

fn parse_bits(s: &str, k: u64) -> Result<Vec<bool>> {
    let bits: Vec<bool> = s
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(anyhow!("bits must be 0 or 1, got `{s}`")),
        })
        .collect::<Result<_>>()?;
    if bits.len() as u64 != k {
        bail!("expected {k} bits, got {}", bits.len());
    }
    Ok(bits)
}

/// The rigidity implication for `f̂` over every monotone self-map of `T_k`,
/// for the given bit string or for all of them.
pub fn rigidity(k: u64, bits: Option<&str>, cap: u64) -> Result<Report> {
    if k > 16 {
        bail!("truncation level {k} is too large for an exhaustive sweep");
    }
    let t = truncate(LazyKind::T, k)?;
    let patterns: Vec<Vec<bool>> = match bits {
        Some(s) => vec![parse_bits(s, k)?],
        None => (0..1u32 << k).map(|m| (0..k).map(|i| m >> i & 1 == 1).collect()).collect(),
    };
    let maps = monotone_maps(&t.poset, &t.poset);
    let total = maps.len() as u64 * patterns.len() as u64;
    if total > cap {
        bail!("{total} checks exceed --cap {cap}");
    }
    let mut failures = Vec::new();
    for table in maps.iter() {
        let g = MonotoneMap::new(t.poset.clone(), t.poset.clone(), table.clone())?;
        for bits in &patterns {
            if !hat_f_rigidity_check(&t, &g, bits)? {
                failures.push((bits.clone(), table.clone()));
            }
        }
    }
    let show = |b: &[bool]| b.iter().map(|&x| if x { '1' } else { '0' }).collect::<String>();
    let mut text = format!(
        "maps: {}\npatterns: {}\nfailures: {}\n",
        maps.len(),
        patterns.len(),
        failures.len()
    );
    if let Some((b, table)) = failures.first() {
        let images: Vec<&str> = table.iter().map(|&v| t.poset.name(v)).collect();
        writeln!(text, "first failure: bits {} g = [{}]", show(b), images.join(", "))?;
    }
    let json = json!({
        "k": k,
        "maps": maps.len(),
        "patterns": patterns.len(),
        "failures": failures.len(),
    });
    Ok(Report::new(text, json).holds(failures.is_empty()))
}
