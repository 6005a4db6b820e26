//! Serialization of report types: pretty JSON for round-tripping and
//! flat CSV for plotting.
//!
//! JSON goes through serde and is lossless: integers stay integers
//! (including the 128-bit Cauchy products) and floats use the shortest
//! round-trippable form. CSV is a human-facing table: header row,
//! decimal-dot floats with 12 significant digits.

use serde::Serialize;

use crate::congruence::{LinnikScan, MomentIdentity};
use crate::cramer::{CompareReport, SimReport};
use crate::interval::{CoverageReport, IntervalHistogram, PairReport};
use crate::singular::{GallagherReport, SingularValue};

/// Pretty JSON for any report type.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types contain no non-finite floats")
}

/// Formats with 12 significant digits and a plain decimal point.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (11 - exp).clamp(0, 30) as usize;
    format!("{v:.decimals$}")
}

/// CSV rendering: a header row, then one row per record.
pub trait CsvReport {
    fn to_csv(&self) -> String;
}

impl CsvReport for IntervalHistogram {
    fn to_csv(&self) -> String {
        let mut out = String::from("k,count,p_k\n");
        let k_max = self.counts.keys().max().copied().unwrap_or(0);
        for k in 0..=k_max {
            let c = self.counts.get(&k).copied().unwrap_or(0);
            out.push_str(&format!("{k},{c},{}\n", fmt_sig(c as f64 / self.x as f64)));
        }
        out
    }
}

impl CsvReport for CoverageReport {
    fn to_csv(&self) -> String {
        format!(
            "x,lambda,shift_cap,r_x,fraction,paper_lower_bound,moment1,moment2,\
             cauchy_lhs,cauchy_rhs\n{},{},{},{},{},{},{},{},{},{}\n",
            self.x,
            fmt_sig(self.lambda),
            self.shift_cap,
            self.r_x,
            fmt_sig(self.fraction),
            fmt_sig(self.paper_lower_bound),
            self.moment1,
            self.moment2,
            self.cauchy_lhs,
            self.cauchy_rhs
        )
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

impl CsvReport for PairReport {
    fn to_csv(&self) -> String {
        format!(
            "x,h1,h2,count,main_term,error_factor,error_constant,ratio\n{},{},{},{},{},{},{},{}\n",
            self.x,
            self.h1,
            self.h2,
            self.count,
            opt(self.main_term),
            opt(self.error_factor),
            opt(self.error_constant),
            opt(self.ratio)
        )
    }
}

impl CsvReport for SingularValue {
    fn to_csv(&self) -> String {
        format!(
            "h,value,abs_error\n{},{},{}\n",
            self.h,
            fmt_sig(self.value),
            fmt_sig(self.abs_error)
        )
    }
}

impl CsvReport for GallagherReport {
    fn to_csv(&self) -> String {
        format!(
            "h_max,sum,ratio\n{},{},{}\n",
            self.h_max,
            fmt_sig(self.sum),
            fmt_sig(self.ratio)
        )
    }
}

impl CsvReport for MomentIdentity {
    fn to_csv(&self) -> String {
        format!(
            "x,q,lhs,rhs,equal\n{},{},{},{},{}\n",
            self.x, self.q, self.lhs, self.rhs, self.equal
        )
    }
}

impl CsvReport for LinnikScan {
    /// Skipped rows have no columns to put in a table; they appear
    /// only in the JSON form.
    fn to_csv(&self) -> String {
        let mut out = String::from(
            "q,phi_q,x,covered,fraction,pi_x,second_moment,identity_ok,\
             covered_units,fraction_units\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.q,
                r.phi_q,
                r.x,
                r.covered,
                fmt_sig(r.fraction),
                r.pi_x,
                r.second_moment,
                r.identity_ok,
                r.covered_units,
                fmt_sig(r.fraction_units)
            ));
        }
        out
    }
}

impl CsvReport for SimReport {
    /// The distance scalars live in the JSON form; the CSV is the
    /// plottable histogram.
    fn to_csv(&self) -> String {
        let mut out = String::from("k,count,fraction\n");
        let k_max = self.counts.keys().max().copied().unwrap_or(0);
        for k in 0..=k_max {
            let c = self.counts.get(&k).copied().unwrap_or(0);
            out.push_str(&format!(
                "{k},{c},{}\n",
                fmt_sig(c as f64 / self.trials as f64)
            ));
        }
        out
    }
}

impl CsvReport for CompareReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("k,model,true,poisson\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.k,
                fmt_sig(r.model),
                fmt_sig(r.true_primes),
                fmt_sig(r.poisson)
            ));
        }
        out
    }
}
