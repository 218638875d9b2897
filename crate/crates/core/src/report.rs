//! Batch aggregation of per-chain flat-norm ratios.
//!
//! Neither the isoperimetric constant nor the big-component constant has a
//! known numerical value, so a batch only reports the empirical maxima of
//! `F / N²` and `F(T) / (N(T₁) N(T))` over its inputs.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::chain::Chain1;
use crate::complex::MetricComplex;
use crate::decompose::{
    big_component_bound_check, greedy_decompose, BigComponentReport, DecomposeError, Decomposition, SearchMode,
};
use crate::flat::{FlatNormCache, IsoperimetricReport};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub label: String,
    pub components: usize,
    pub iso: IsoperimetricReport,
    pub bound: BigComponentReport,
}

/// Decomposes `t` greedily and evaluates both ratios.
pub fn report_row(
    cx: &MetricComplex,
    label: impl Into<String>,
    t: &Chain1,
    mode: SearchMode,
    cache: &FlatNormCache,
) -> Result<ReportRow, DecomposeError> {
    let dec = greedy_decompose(cx, t, mode)?;
    row_from_decomposition(cx, label, &dec, cache)
}

/// Evaluates both ratios for an existing decomposition, reusing flat norms
/// from `cache`. Panics if `F ≤ M ≤ N` fails.
pub fn row_from_decomposition(
    cx: &MetricComplex,
    label: impl Into<String>,
    dec: &Decomposition,
    cache: &FlatNormCache,
) -> Result<ReportRow, DecomposeError> {
    let t = dec.parent();
    let bound = big_component_bound_check(cx, t, dec, cache)?;
    let masses = cx.mass_report(t)?;
    let flat = bound.flat_parent.clone();
    assert!(flat <= masses.mass && masses.mass <= masses.normal_mass, "F ≤ M ≤ N violated");
    let ratio_flat_normal_sq = if masses.normal_mass.is_zero() {
        Rational::zero()
    } else {
        &flat / (&masses.normal_mass * &masses.normal_mass)
    };
    let iso = IsoperimetricReport { flat, mass: masses.mass, normal_mass: masses.normal_mass, ratio_flat_normal_sq };
    Ok(ReportRow { label: label.into(), components: dec.len(), iso, bound })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatchReport {
    pub rows: Vec<ReportRow>,
}

impl BatchReport {
    pub fn new(rows: Vec<ReportRow>) -> Self {
        BatchReport { rows }
    }

    pub fn max_isoperimetric_ratio(&self) -> Rational {
        self.rows.iter().map(|r| r.iso.ratio_flat_normal_sq.clone()).max().unwrap_or_else(Rational::zero)
    }

    pub fn max_empirical_constant(&self) -> Rational {
        self.rows.iter().map(|r| r.bound.empirical_constant.clone()).max().unwrap_or_else(Rational::zero)
    }

    pub fn all_chain_inequalities_ok(&self) -> bool {
        self.rows.iter().all(|r| r.bound.chain_inequalities_ok)
    }

    /// Tab-separated table, one row per chain, then the summary lines.
    pub fn to_text(&self) -> String {
        let mut out = String::from("label\tcomponents\tF\tM\tN\tF/N^2\tN(T1)\tF/(N(T1)N)\tchain_ok\n");
        for r in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.label,
                r.components,
                format_rational(&r.iso.flat),
                format_rational(&r.iso.mass),
                format_rational(&r.iso.normal_mass),
                format_rational(&r.iso.ratio_flat_normal_sq),
                format_rational(&r.bound.first_component_normal),
                format_rational(&r.bound.empirical_constant),
                r.bound.chain_inequalities_ok,
            )
            .expect("write to string");
        }
        writeln!(out, "chains {}", self.rows.len()).expect("write to string");
        writeln!(out, "max F/N^2 {}", format_rational(&self.max_isoperimetric_ratio())).expect("write to string");
        writeln!(out, "max F/(N(T1)N) {}", format_rational(&self.max_empirical_constant())).expect("write to string");
        writeln!(out, "chain inequalities hold {}", self.all_chain_inequalities_ok()).expect("write to string");
        out
    }
}
