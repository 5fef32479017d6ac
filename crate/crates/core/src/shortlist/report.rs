use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ceil_log2, pow2_below, StandardMachine};
use crate::combinators::fk_envelope;
use crate::error::MachineError;
use crate::label::BitLabel;

/// Per-string result of an end-to-end run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XReport {
    pub x: BitLabel,
    #[serde(rename = "C_U")]
    pub c_u: Option<usize>,
    pub witness: Option<BitLabel>,
    pub list_size: usize,
    /// Length of the shortest `p` in `f(x)` with `U(p) = x`.
    pub best_in_list: Option<usize>,
    pub best_program: Option<BitLabel>,
    /// `best_in_list - C_U`.
    pub slack: Option<i64>,
    pub discards_per_k: BTreeMap<usize, usize>,
    /// Whether the short-program guarantee applies: `C_U(x) = k` with
    /// `ceil(log2 |x|) <= k <= min(|x|, k_max)` and `|x| <= cap(k)`.
    pub in_range: bool,
    /// `2^C_U(x) < |x|`: the `"01"` block must hold a `C_U + 3` program.
    pub long_output: bool,
    /// A `C_U + 3` program from the `"01"` block evaluates to `x`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub long_output_covered: Option<bool>,
    pub scope: String,
}

impl XReport {
    /// `slack <= 3` when in range, `best <= |x| + 3` always.
    pub fn passes(&self) -> bool {
        let via_literal = self.best_in_list.is_some_and(|b| b <= self.x.len() + 3);
        let short = !self.in_range || self.slack.is_some_and(|s| s <= 3);
        via_literal && short && self.long_output_covered != Some(false)
    }
}

pub fn shortlist_report(
    m: &StandardMachine,
    x: &BitLabel,
    max_len: usize,
) -> Result<XReport, MachineError> {
    let record = m.brute_force_c(x, max_len);
    let list = m.f(x)?;
    let best = list
        .iter()
        .filter(|p| m.eval_u(p).produces(x))
        .min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)))
        .cloned();
    let mut discards_per_k = BTreeMap::new();
    for k in m.list_levels(x) {
        if let Some(s) = m.session(k) {
            discards_per_k.insert(k, s.discards);
        }
    }
    let in_range = record.c_u.is_some_and(|k| {
        ceil_log2(x.len()) <= k
            && k <= x.len().min(m.family().k_max())
            && m.family().get(k).is_some_and(|e| x.len() <= e.cap)
    });
    let long_output = record.c_u.is_some_and(|k| pow2_below(k, x.len()));
    let long_output_covered = long_output.then(|| {
        let k = record.c_u.unwrap_or(0);
        let prefix = BitLabel::from_bits(vec![true, false, true]);
        list.iter().any(|p| {
            p.len() == k + 3 && p.starts_with(&prefix) && m.eval_u(p).produces(x)
        })
    });
    Ok(XReport {
        x: x.clone(),
        c_u: record.c_u,
        witness: record.witness,
        list_size: list.len(),
        best_in_list: best.as_ref().map(BitLabel::len),
        slack: match (&best, record.c_u) {
            (Some(b), Some(c)) => Some(b.len() as i64 - c as i64),
            _ => None,
        },
        best_program: best,
        discards_per_k,
        in_range,
        long_output,
        long_output_covered,
        scope: format!(
            "guarantee claimed only for C_U(x) = k with ceil(log2|x|) <= k <= min(|x|, {}) and |x| <= cap(k) = min(2^k, k+3)",
            m.family().k_max()
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ListSizeRow {
    pub n: usize,
    pub list_size: usize,
    /// `1 + #{p : 2^|p| < n} + sum_k deg_{H_k}(x)`.
    pub degree_sum_bound: u64,
    /// Same with distinct neighbor counts.
    pub distinct_sum: u64,
    /// Asymptotic bound: `sum_k lambda (n k)^2 * deg(F_k)` over
    /// `ceil(log2 n) <= k <= n`, plus the literal and `"01"` entries.
    pub envelope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ListSizeAudit {
    pub rows: Vec<ListSizeRow>,
    /// Least-squares slope of `log envelope` against `log n`.
    pub envelope_slope: f64,
    /// Slope between the last two rows.
    pub envelope_tail_slope: f64,
    /// Least-squares slope of `log list_size` against `log n`.
    pub measured_slope: f64,
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let num: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    num / den
}

/// Alternating `0101..` of length `n`.
pub fn audit_string(n: usize) -> BitLabel {
    BitLabel::from_bits((0..n).map(|i| i % 2 == 1).collect())
}

pub fn list_size_audit(
    m: &StandardMachine,
    lengths: impl IntoIterator<Item = usize>,
    lambda: u64,
    alpha: u64,
) -> Result<ListSizeAudit, MachineError> {
    let mut rows = Vec::new();
    for n in lengths {
        let x = audit_string(n);
        let list_size = m.f(&x)?.len();
        let mut small = 0u64;
        while pow2_below(small as usize, n) {
            small += 1;
        }
        let literal_and_small = 1 + (1u64 << small) - 1;
        let mut degree_sum = literal_and_small;
        let mut distinct_sum = literal_and_small;
        for k in m.list_levels(&x) {
            if let Some(e) = m.family().get(k) {
                if let Some(ns) = e.graph.neighbors(&x) {
                    degree_sum += ns.len() as u64;
                    distinct_sum += crate::graph::neighbor_set(e.graph.as_ref(), &x)
                        .map_or(0, |v| v.len()) as u64;
                }
            }
        }
        let envelope = literal_and_small as f64
            + (ceil_log2(n)..=n)
                .map(|k| {
                    let nk = (n * k) as f64;
                    let fk = fk_envelope(k as u64, alpha, 8 * k as u64);
                    lambda as f64 * nk * nk * fk.degree_bound as f64
                })
                .sum::<f64>();
        rows.push(ListSizeRow {
            n,
            list_size,
            degree_sum_bound: degree_sum,
            distinct_sum,
            envelope,
        });
    }
    let log = |v: f64| v.ln();
    let env: Vec<(f64, f64)> = rows.iter().map(|r| (log(r.n as f64), log(r.envelope))).collect();
    let measured: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (log(r.n as f64), log(r.list_size as f64)))
        .collect();
    let tail = if env.len() >= 2 {
        slope(&env[env.len() - 2..])
    } else {
        0.0
    };
    Ok(ListSizeAudit {
        envelope_slope: slope(&env),
        envelope_tail_slope: tail,
        measured_slope: slope(&measured),
        rows,
    })
}
