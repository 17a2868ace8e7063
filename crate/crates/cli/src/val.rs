//! Commands on probability valuations.

use std::fmt::Write;

use anyhow::{bail, Result};
use qdom_core::rational::format_rational;
use qdom_core::valuation::{
    failed_deflation_c, failed_deflation_demo, grid_poset, grid_size, grid_with_cap, maximal_below_grid,
    maximal_way_below_grid, minimal_upper_bounds_grid, pushforward, pushforward_preimage, stochastic_leq,
    stochastic_leq_certified, way_below_witness, OrderCertificate,
};
use qdom_core::{Mesh, MonotoneMap, Poset, Valuation};
use serde_json::{json, Value};

use crate::report::{self, valuation_lines, Report};

pub fn order(p: &Poset, nu: &Valuation, mu: &Valuation) -> Result<Report> {
    let cert = stochastic_leq_certified(p, nu, mu)?;
    let (text, json) = match &cert {
        OrderCertificate::Plan(plan) => {
            let mut text = String::from("true\nplan:\n");
            let mut rows = Vec::new();
            for t in plan {
                let amount = format_rational(&t.amount);
                writeln!(text, "  {} -> {}: {}", p.name(t.from), p.name(t.to), amount)?;
                rows.push(json!({ "from": p.name(t.from), "to": p.name(t.to), "amount": amount }));
            }
            (text, json!({ "below": true, "plan": rows }))
        }
        OrderCertificate::Violation { upper_set, lower, upper } => {
            let text = format!(
                "false\nviolation: {}: {} > {}\n",
                report::set_text(p, upper_set),
                format_rational(lower),
                format_rational(upper)
            );
            let json = json!({
                "below": false,
                "violation": {
                    "upper_set": report::upper_set(p, upper_set),
                    "lower": format_rational(lower),
                    "upper": format_rational(upper),
                },
            });
            (text, json)
        }
    };
    Ok(Report::new(text, json).holds(cert.holds()))
}

pub fn way_below(p: &Poset, nu: &Valuation, mu: &Valuation) -> Result<Report> {
    let witness = way_below_witness(p, nu, mu)?;
    let below = stochastic_leq(p, nu, mu)?;
    let mut text = format!("{}\n", witness.is_none());
    let mut json = json!({ "way_below": witness.is_none(), "below": below, "witness": Value::Null });
    if let Some((u, a, b)) = &witness {
        let set = report::set_text(p, u);
        writeln!(text, "witness: {set}: {} vs {}", format_rational(a), format_rational(b))?;
        if below {
            writeln!(
                text,
                "note: below holds, but the mass on {set} is already tight, so this is below and not way-below"
            )?;
        }
        json["witness"] = json!({
            "upper_set": report::upper_set(p, u),
            "lower": format_rational(a),
            "upper": format_rational(b),
        });
    }
    Ok(Report::new(text, json).holds(witness.is_none()))
}

pub fn mub(p: &Poset, nu1: &Valuation, nu2: &Valuation, mesh: Mesh) -> Result<Report> {
    let ms = minimal_upper_bounds_grid(p, nu1, nu2, mesh)?;
    let text = format!(
        "minimal upper bounds on the 1/{} grid:\n{}",
        mesh.denominator(),
        valuation_lines(p, &ms, "  ")
    );
    Ok(Report::new(
        text,
        json!({ "grid": mesh.denominator(), "minimal_upper_bounds": report::valuations(p, &ms) }),
    ))
}

/// Both readings of "largest grid valuations under ν": plain `<=`, and
/// the strict way-below relation (pointed posets only).
pub fn max_below(p: &Poset, nu: &Valuation, mesh: Mesh) -> Result<Report> {
    let below = maximal_below_grid(p, nu, mesh)?;
    let strict = match p.bottom() {
        Some(_) => Some(maximal_way_below_grid(p, nu, mesh)?),
        None => None,
    };
    let n = mesh.denominator();
    let mut text = format!("maximal below on the 1/{n} grid:\n{}", valuation_lines(p, &below, "  "));
    match &strict {
        Some(s) => write!(text, "maximal way-below on the 1/{n} grid:\n{}", valuation_lines(p, s, "  "))?,
        None => text.push_str("maximal way-below: undefined, the poset has no least element\n"),
    }
    let json = json!({
        "grid": n,
        "maximal_below": report::valuations(p, &below),
        "maximal_way_below": strict.map(|s| report::valuations(p, &s)),
    });
    Ok(Report::new(text, json))
}

pub fn grid(p: &Poset, mesh: Mesh, cap: u128, dot: bool) -> Result<Report> {
    if dot {
        let size = grid_size(p.len(), mesh);
        if size > cap {
            bail!("{size} grid points exceed --cap {cap}");
        }
        let (order, _) = grid_poset(p, mesh)?;
        let d = order.to_dot("grid");
        return Ok(Report::new(d.clone(), json!({ "dot": d })));
    }
    let pts = grid_with_cap(p, mesh, cap)?;
    let text = valuation_lines(p, &pts, "");
    Ok(Report::new(
        text,
        json!({ "grid": mesh.denominator(), "count": pts.len(), "valuations": report::valuations(p, &pts) }),
    ))
}

/// `r_*ν`, or with `preimage` a valuation on the source pushing to `ν`.
pub fn push(r: &MonotoneMap, nu: &Valuation, preimage: bool) -> Result<Report> {
    let (out, on) = if preimage {
        (pushforward_preimage(r, nu)?, r.source())
    } else {
        (pushforward(r, nu)?, r.target())
    };
    let text = format!("{}\n", out.format(on));
    Ok(Report::new(text, json!({ "valuation": report::valuation(on, &out) })))
}

/// Searches for the counterexamples to the three rounding attempts; a
/// found witness is the expected outcome and is signalled by exit 1.
pub fn demo(p: &Poset, mesh: Mesh, at: Option<&Valuation>) -> Result<Report> {
    let d = failed_deflation_demo(p, mesh)?;
    let n = mesh.denominator();
    let mut text = format!("grid: 1/{n}\n");
    let mut json = json!({ "grid": n });

    text.push_str("(a) round every upper set down: ");
    match &d.modularity {
        Some((nu, w)) => {
            writeln!(text, "modularity fails")?;
            writeln!(text, "  nu = {}", nu.format(p))?;
            writeln!(
                text,
                "  U = {}, V = {}: f(U ∪ V) + f(U ∩ V) = {}, f(U) + f(V) = {}",
                report::set_text(p, &w.u),
                report::set_text(p, &w.v),
                format_rational(&w.join_meet),
                format_rational(&w.sum)
            )?;
            json["modularity"] = json!({
                "nu": report::valuation(p, nu),
                "u": report::upper_set(p, &w.u),
                "v": report::upper_set(p, &w.v),
                "join_meet": format_rational(&w.join_meet),
                "sum": format_rational(&w.sum),
            });
        }
        None => {
            text.push_str("no witness\n");
            json["modularity"] = Value::Null;
        }
    }

    text.push_str("(b) round every weight down: ");
    match &d.monotonicity {
        Some(w) => {
            writeln!(text, "monotonicity fails")?;
            writeln!(text, "  nu = {} <= nu' = {}", w.lower.format(p), w.upper.format(p))?;
            writeln!(
                text,
                "  f(nu) = {} is not below f(nu') = {}",
                w.lower_image.format(p),
                w.upper_image.format(p)
            )?;
            json["monotonicity"] = json!({
                "lower": report::valuation(p, &w.lower),
                "upper": report::valuation(p, &w.upper),
                "lower_image": report::valuation(p, &w.lower_image),
                "upper_image": report::valuation(p, &w.upper_image),
            });
        }
        None => {
            text.push_str("no witness\n");
            json["monotonicity"] = Value::Null;
        }
    }

    text.push_str("(c) largest grid valuation below: ");
    match &d.non_uniqueness {
        Some((nu, ms)) => {
            writeln!(text, "not unique")?;
            writeln!(text, "  nu = {}", nu.format(p))?;
            write!(text, "  {} maximal grid valuations below:\n{}", ms.len(), valuation_lines(p, ms, "    "))?;
            json["non_uniqueness"] = json!({
                "nu": report::valuation(p, nu),
                "maximal": report::valuations(p, ms),
            });
        }
        None => {
            text.push_str("no witness\n");
            json["non_uniqueness"] = Value::Null;
        }
    }

    if let Some(nu) = at {
        let ms = failed_deflation_c(p, nu, mesh)?;
        writeln!(text, "(c) at {}: cardinality {}", nu.format(p), ms.len())?;
        text.push_str(&valuation_lines(p, &ms, "    "));
        json["at"] = json!({
            "nu": report::valuation(p, nu),
            "cardinality": ms.len(),
            "maximal": report::valuations(p, &ms),
        });
    }

    let found = d.modularity.is_some() || d.monotonicity.is_some() || d.non_uniqueness.is_some();
    json["witness_found"] = json!(found);
    Ok(Report::new(text, json).holds(!found))
}
