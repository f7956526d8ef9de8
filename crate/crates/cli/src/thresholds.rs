use crate::error::CliResult;
use lehmer_core::bounds::{cor_i_member, prop2_threshold, GrowthMembership, LocalFieldDescriptor, ThresholdResult};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdTable {
    pub d: usize,
    pub p: u64,
    pub f: u32,
    pub c: f64,
    pub prop2: ThresholdResult,
    /// Absent for `d < 2`, where the growth family is undefined.
    pub growth: Option<GrowthMembership>,
}

pub fn threshold_table(d: usize, p: u64, f: u32, c: f64) -> CliResult<ThresholdTable> {
    let k = LocalFieldDescriptor::unramified(p, f)?;
    Ok(ThresholdTable {
        d,
        p,
        f,
        c,
        prop2: prop2_threshold(d, &k, c)?,
        growth: if d >= 2 { Some(cor_i_member(d, &k, 0)?) } else { None },
    })
}

impl fmt::Display for ThresholdTable {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let feasible = |t: &ThresholdResult| if t.feasible { "feasible" } else { "infeasible" };
        writeln!(out, "d = {}, q = {}^{}, c = {}", self.d, self.p, self.f, self.c)?;
        writeln!(out, "{:<28} {:>12} {:>9}  status", "family", "threshold", "required")?;
        writeln!(
            out,
            "{:<28} {:>12.4} {:>9}  {}",
            "h >= c/d membership",
            self.prop2.threshold,
            self.prop2.required_count,
            feasible(&self.prop2)
        )?;
        match &self.growth {
            Some(g) => writeln!(
                out,
                "{:<28} {:>12.4} {:>9}  {} (d h >= {:.4} log d - {:.4})",
                "growth sqrt(q^3 n d log d)",
                g.threshold.threshold,
                g.threshold.required_count,
                feasible(&g.threshold),
                g.growth_coefficient,
                g.error_term
            ),
            None => writeln!(out, "{:<28} {:>12} {:>9}  undefined for d < 2", "growth sqrt(q^3 n d log d)", "-", "-"),
        }
    }
}
