//! Structured text output with exact numbers.

use std::fmt::Write;

use num_traits::Zero;

use crate::equivalence::{AffineEquivalence, EquivalenceReport, Status};
use crate::exact::Gr;
use crate::invgen::InvariantTemplate;

fn row(v: &[Gr]) -> String {
    let parts: Vec<String> = v.iter().map(Gr::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn translation(e: &AffineEquivalence) -> String {
    let parts: Vec<String> = e
        .b
        .iter()
        .zip(&e.b_beta)
        .map(|(b0, b1)| {
            if b1.is_zero() {
                return b0.to_string();
            }
            let lin = if b1 == &Gr::from_int(1) {
                "beta".to_string()
            } else if b1.is_real() {
                format!("{b1}*beta")
            } else {
                format!("({b1})*beta")
            };
            if b0.is_zero() { lin } else { format!("{b0} + {lin}") }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

/// One equivalence as an indented block.
pub fn format_equivalence(k: usize, e: &AffineEquivalence) -> String {
    let mut s = String::new();
    writeln!(s, "equivalence {k}").unwrap();
    writeln!(s, "  phi: w = {}", e.phi).unwrap();
    if let Some(x) = e.t_exp {
        let s_part = e.shift.as_ref().map_or(String::new(), |sh| format!("({})*", sh.s));
        writeln!(s, "  t-map: t_q = {s_part}t^{x}").unwrap();
    }
    if let Some(sh) = &e.shift {
        writeln!(s, "  shift: w = {} + beta, e^(({}) beta) = {}; {}", e.phi, sh.mu, sh.s, sh).unwrap();
    }
    let tags: Vec<String> = e.tags.iter().map(|t| t.to_string()).collect();
    writeln!(s, "  tags: {}", if tags.is_empty() { "-".to_string() } else { tags.join(" ") }).unwrap();
    writeln!(s, "  A:").unwrap();
    for r in &e.a {
        writeln!(s, "    {}", row(r)).unwrap();
    }
    writeln!(s, "  b: {}", translation(e)).unwrap();
    s
}

/// The whole report; deterministic for identical inputs.
pub fn format_report(r: &EquivalenceReport) -> String {
    let mut s = String::new();
    writeln!(s, "status: {}", r.status).unwrap();
    writeln!(s, "dim: {}", r.dim).unwrap();
    match r.status {
        Status::DegenerateInvariants => {
            writeln!(s, "warning: all the Möbius-commuting invariants are constant").unwrap();
        }
        Status::NotEquivalent => {
            writeln!(s, "result: not affinely equivalent").unwrap();
        }
        Status::EquivalencesFound => {}
    }
    writeln!(s, "candidates: {}", r.diagnostics.candidates).unwrap();
    writeln!(s, "rejected: {}", r.diagnostics.rejected).unwrap();
    if r.diagnostics.asserted_proper {
        writeln!(s, "properness: asserted").unwrap();
    }
    if r.diagnostics.improper {
        writeln!(s, "properness: failed, the list may be incomplete").unwrap();
    }
    writeln!(s, "equivalences: {}", r.equivalences.len()).unwrap();
    for (k, e) in r.equivalences.iter().enumerate() {
        s.push_str(&format_equivalence(k + 1, e));
    }
    s
}

pub fn format_templates(n: usize, ts: &[InvariantTemplate]) -> String {
    let mut s = format!("dim: {n}\n");
    for t in ts {
        writeln!(s, "{t}").unwrap();
    }
    s
}
