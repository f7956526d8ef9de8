use crate::record::ResultRecord;
use std::fmt;

/// Largest `bound / h` seen for one family of bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct Tightness {
    pub bound: &'static str,
    pub ratio: f64,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Summary {
    pub candidates: u64,
    pub records: u64,
    /// Candidates without a record: reducible, or irreducibility unsettled.
    pub excluded: u64,
    pub torsion: u64,
    pub vacuous: u64,
    /// Records whose best bound is positive.
    pub informative: u64,
    pub min_height: Option<(f64, String)>,
    pub tightness: Vec<Tightness>,
    pub violations: u64,
    pub worst_mahler_margin: Option<f64>,
    pub worst_proof_margin: Option<i64>,
}

impl Summary {
    pub fn from_records<'a>(candidates: u64, records: impl IntoIterator<Item = &'a ResultRecord>) -> Self {
        let mut s = Summary {
            candidates,
            ..Default::default()
        };
        let mut tight: Vec<Tightness> = ["thm1", "thm3", "cor1", "exact_disc"]
            .into_iter()
            .map(|b| Tightness {
                bound: b,
                ratio: f64::NEG_INFINITY,
                polynomial: String::new(),
            })
            .collect();
        for r in records {
            s.records += 1;
            s.torsion += r.torsion as u64;
            s.vacuous += r.vacuous as u64;
            s.informative += r.informative as u64;
            s.violations += r.violations as u64;
            s.worst_mahler_margin = Some(s.worst_mahler_margin.map_or(r.mahler_margin, |m| m.min(r.mahler_margin)));
            s.worst_proof_margin = Some(s.worst_proof_margin.map_or(r.proof_margin, |m| m.min(r.proof_margin)));
            if r.vacuous {
                continue;
            }
            if s.min_height.as_ref().is_none_or(|(h, _)| r.height < *h) {
                s.min_height = Some((r.height, r.polynomial.clone()));
            }
            if r.height <= 0.0 {
                continue;
            }
            let thm1 = r.thm1.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for (t, v) in tight.iter_mut().zip([Some(thm1), r.thm3, r.cor1, r.exact_disc]) {
                if let Some(v) = v {
                    if v / r.height > t.ratio {
                        t.ratio = v / r.height;
                        t.polynomial = r.polynomial.clone();
                    }
                }
            }
        }
        s.excluded = s.candidates.saturating_sub(s.records);
        s.tightness = tight.into_iter().filter(|t| t.ratio.is_finite()).collect();
        s
    }

    pub fn rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![
            ("candidates".to_string(), self.candidates.to_string()),
            ("records".to_string(), self.records.to_string()),
            ("excluded".to_string(), self.excluded.to_string()),
            ("torsion".to_string(), self.torsion.to_string()),
            ("vacuous".to_string(), self.vacuous.to_string()),
            ("informative".to_string(), self.informative.to_string()),
            ("violations".to_string(), self.violations.to_string()),
        ];
        if let Some((h, p)) = &self.min_height {
            rows.push(("min_height".to_string(), h.to_string()));
            rows.push(("min_height_poly".to_string(), p.clone()));
        }
        for t in &self.tightness {
            rows.push((format!("tightness_{}", t.bound), t.ratio.to_string()));
            rows.push((format!("tightness_{}_poly", t.bound), t.polynomial.clone()));
        }
        if let Some(m) = self.worst_mahler_margin {
            rows.push(("worst_mahler_margin".to_string(), m.to_string()));
        }
        if let Some(m) = self.worst_proof_margin {
            rows.push(("worst_proof_margin".to_string(), m.to_string()));
        }
        rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        for (k, v) in self.rows() {
            let v = if v.contains(',') { format!("\"{v}\"") } else { v };
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.rows() {
            writeln!(f, "{k:<24} {v}")?;
        }
        Ok(())
    }
}
