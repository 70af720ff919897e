//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write as _;

use hyperkit_core::axioms::{check_bjoin, check_lmosaic, CheckReport};
use hyperkit_core::extraction::{induced_order, InducedOrder};
use hyperkit_core::{Carrier, Structure};

/// DOT text for the covering relation of the structure's order, edges
/// pointing from the smaller element to the larger.
///
/// Structures that fail their axiom check have no well-defined order and
/// are refused with the failing report.
pub fn emit_hasse(s: &Structure) -> Result<String, CheckReport> {
    let order = match s {
        Structure::BJoin(j) => {
            let report = check_bjoin(j);
            if !report.all_pass() {
                return Err(report);
            }
            InducedOrder::of_semilattice(j)
        }
        Structure::LMosaic(m) => {
            let report = check_lmosaic(m, false);
            if !report.all_pass() {
                return Err(report);
            }
            induced_order(m)
        }
    };
    Ok(render(s.carrier(), &order))
}

fn render(carrier: &Carrier, order: &InducedOrder) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for x in 0..order.size() {
        let label = serde_json::to_string(&carrier.name(x)).expect("strings always serialize");
        let _ = writeln!(out, "  n{x} [label={label}];");
    }
    for (x, y) in order.covers() {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperkit_core::{nakano, BJoinSemilattice, ElemSet, LMosaic};

    #[test]
    fn chain_and_point() {
        let two = Structure::BJoin(BJoinSemilattice::chain(2).unwrap());
        assert_eq!(
            emit_hasse(&two).unwrap(),
            "digraph hasse {\n  rankdir=BT;\n  n0 [label=\"0\"];\n  n1 [label=\"1\"];\n  n0 -> n1;\n}\n"
        );
        let one = Structure::BJoin(BJoinSemilattice::chain(1).unwrap());
        assert_eq!(
            emit_hasse(&one).unwrap(),
            "digraph hasse {\n  rankdir=BT;\n  n0 [label=\"0\"];\n}\n"
        );
    }

    #[test]
    fn nakano_image_draws_the_same_diagram() {
        let d = BJoinSemilattice::diamond();
        let m = nakano(&d).unwrap();
        assert_eq!(
            emit_hasse(&Structure::BJoin(d)).unwrap(),
            emit_hasse(&Structure::LMosaic(m)).unwrap()
        );
    }

    #[test]
    fn refuses_invalid() {
        let full = LMosaic::from_fn(2, 0, |_, _| ElemSet::full(2)).unwrap();
        let report = emit_hasse(&Structure::LMosaic(full)).unwrap_err();
        assert!(report.get("lm4").is_some_and(|v| !v.pass()));
    }
}
