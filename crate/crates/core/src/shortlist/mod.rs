//! Toy standard machine `U`, the decompressor `V`, the translator `t`,
//! `list(x)`, `f(x)` and a brute-force complexity oracle.
//!
//! Dispatch: `U("0" q) = base(q)`, `U("1" v) = V(v)`, so `t(v) = "1" v`.
//! `V` has three clauses:
//!
//! * `V("00" p) = p`, one step;
//! * `V("01" p) = U(p)` when `|U(p)| > 2^|p|`, at the cost of `U(p)`;
//! * `V("1" p)`, `k = |p| - 1`: the left node matched to `p` in the shared
//!   level-`k` session, at the step round it was enumerated.
//!
//! Anything else, or any cost above the step budget, diverges.

mod family;
mod report;
mod table;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use family::{HkEntry, HkFamily, HkSource};
pub use report::{audit_string, list_size_audit, shortlist_report, ListSizeAudit, ListSizeRow, XReport};
pub use table::{parse_corpus, MachineTable};

use crate::error::MachineError;
use crate::label::BitLabel;
use crate::matching::{MatchSession, Outcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Eval {
    Halt { output: BitLabel, steps: u64 },
    Diverge,
}

impl Eval {
    pub fn output(&self) -> Option<&BitLabel> {
        match self {
            Eval::Halt { output, .. } => Some(output),
            Eval::Diverge => None,
        }
    }

    pub fn produces(&self, x: &BitLabel) -> bool {
        self.output() == Some(x)
    }
}

/// One enumerated output: first producer under the `(steps, q)` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumerated {
    pub x: BitLabel,
    pub program: BitLabel,
    pub steps: u64,
}

/// The memoized level-`k` matching run behind clause 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseSession {
    pub k: usize,
    /// Outputs admitted to `H_k`, in request order, with their outcome.
    pub requests: Vec<(Enumerated, Outcome)>,
    /// Right label -> (x, step round).
    pub decoded: BTreeMap<BitLabel, (BitLabel, u64)>,
    pub discards: usize,
    /// Enumerated outputs outside `H_k`'s left universe.
    pub skipped: usize,
    pub discard_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityRecord {
    pub x: BitLabel,
    /// `None`: no program up to `max_len` produces `x` within budget.
    pub c_u: Option<usize>,
    pub witness: Option<BitLabel>,
    pub witness_steps: Option<u64>,
    pub max_len: usize,
    pub programs_evaluated: u64,
    pub step_budget: u64,
}

pub struct StandardMachine {
    base: MachineTable,
    family: Arc<HkFamily>,
    step_budget: u64,
    sessions: Mutex<BTreeMap<usize, Arc<ClauseSession>>>,
}

pub const DEFAULT_STEP_BUDGET: u64 = 1 << 20;

fn pow2_below(len: usize, x_len: usize) -> bool {
    len < 64 && (1u64 << len) < x_len as u64
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

impl StandardMachine {
    pub fn new(base: MachineTable, family: Arc<HkFamily>, step_budget: u64) -> Self {
        Self {
            base,
            family,
            step_budget,
            sessions: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn base(&self) -> &MachineTable {
        &self.base
    }

    pub fn family(&self) -> &HkFamily {
        &self.family
    }

    pub fn step_budget(&self) -> u64 {
        self.step_budget
    }

    /// The translator: `t(v) = "1" v`.
    pub fn translate(v: &BitLabel) -> BitLabel {
        let mut out = BitLabel::from_bits(vec![true]);
        for &b in v.bits() {
            out.push(b);
        }
        out
    }

    fn within(&self, e: Eval) -> Eval {
        match e {
            Eval::Halt { steps, .. } if steps > self.step_budget => Eval::Diverge,
            e => e,
        }
    }

    pub fn eval_u(&self, p: &BitLabel) -> Eval {
        if p.is_empty() {
            return Eval::Diverge;
        }
        let rest = BitLabel::from_bits(p.bits()[1..].to_vec());
        if p.bit(0) {
            self.eval_v(&rest)
        } else {
            match self.base.get(&rest) {
                Some((out, steps)) => self.within(Eval::Halt {
                    output: out.clone(),
                    steps,
                }),
                None => Eval::Diverge,
            }
        }
    }

    pub fn eval_v(&self, w: &BitLabel) -> Eval {
        let b = w.bits();
        match b {
            [false, false, p @ ..] => self.within(Eval::Halt {
                output: BitLabel::from_bits(p.to_vec()),
                steps: 1,
            }),
            [false, true, p @ ..] => match self.eval_u(&BitLabel::from_bits(p.to_vec())) {
                Eval::Halt { output, steps } if pow2_below(p.len(), output.len()) => {
                    self.within(Eval::Halt { output, steps })
                }
                _ => Eval::Diverge,
            },
            [true, p @ ..] if !p.is_empty() => {
                let k = p.len() - 1;
                let Some(session) = self.session(k) else {
                    return Eval::Diverge;
                };
                match session.decoded.get(&BitLabel::from_bits(p.to_vec())) {
                    Some((x, steps)) => self.within(Eval::Halt {
                        output: x.clone(),
                        steps: *steps,
                    }),
                    None => Eval::Diverge,
                }
            }
            _ => Eval::Diverge,
        }
    }

    /// Distinct outputs of the length-`k` programs, ordered by the step
    /// round they halt at, ties broken by the smaller program.
    pub fn enumerate_outputs(&self, k: usize) -> Vec<Enumerated> {
        if k >= 32 {
            return Vec::new();
        }
        let mut halting: Vec<Enumerated> = BitLabel::all_of_len(k)
            .filter_map(|q| match self.eval_u(&q) {
                Eval::Halt { output, steps } => Some(Enumerated {
                    x: output,
                    program: q,
                    steps,
                }),
                Eval::Diverge => None,
            })
            .collect();
        halting.sort_by(|a, b| (a.steps, &a.program).cmp(&(b.steps, &b.program)));
        let mut seen = std::collections::BTreeSet::new();
        halting.retain(|e| seen.insert(e.x.clone()));
        halting
    }

    /// The level-`k` session, computed once. `None` when `H_k` is not
    /// available.
    pub fn session(&self, k: usize) -> Option<Arc<ClauseSession>> {
        if let Some(s) = self.sessions.lock().expect("session memo").get(&k) {
            return Some(s.clone());
        }
        let entry = self.family.get(k)?;
        let graph = entry.graph.clone();
        // Outputs of length-k programs only recurse into shorter levels.
        let stream = self.enumerate_outputs(k);
        let mut m = MatchSession::new(graph.as_ref());
        let mut requests = Vec::new();
        let mut decoded = BTreeMap::new();
        let mut skipped = 0;
        for e in stream {
            if !graph.left().contains(&e.x) {
                skipped += 1;
                continue;
            }
            let outcome = m.request(&e.x).expect("admitted labels are left nodes");
            if let Outcome::Matched(r) = &outcome {
                decoded.insert(r.clone(), (e.x.clone(), e.steps));
            }
            requests.push((e, outcome));
        }
        let session = Arc::new(ClauseSession {
            k,
            requests,
            decoded,
            discards: m.discarded().len(),
            skipped,
            discard_bound: self.family.discard_bound(k),
        });
        let mut memo = self.sessions.lock().expect("session memo");
        Some(memo.entry(k).or_insert(session).clone())
    }

    /// Levels `k` whose `H_k` neighbors enter `list(x)`, in descending order.
    pub fn list_levels(&self, x: &BitLabel) -> Vec<usize> {
        let lo = ceil_log2(x.len());
        let hi = x.len().min(self.family.k_max());
        (lo..=hi).rev().collect()
    }

    pub fn list_of(&self, x: &BitLabel) -> Result<Vec<BitLabel>, MachineError> {
        if x.is_empty() {
            return Err(MachineError::EmptyString);
        }
        let with_prefix = |prefix: &[bool], tail: &BitLabel| {
            let mut bits = prefix.to_vec();
            bits.extend_from_slice(tail.bits());
            BitLabel::from_bits(bits)
        };
        let mut out = vec![with_prefix(&[false, false], x)];
        let mut len = 0;
        while pow2_below(len, x.len()) {
            out.extend(BitLabel::all_of_len(len).map(|p| with_prefix(&[false, true], &p)));
            len += 1;
        }
        for k in self.list_levels(x) {
            let Some(entry) = self.family.get(k) else {
                continue;
            };
            let Some(ns) = entry.graph.neighbors(x) else {
                continue;
            };
            let mut seen = std::collections::BTreeSet::new();
            out.extend(
                ns.into_iter()
                    .filter(|r| seen.insert(r.clone()))
                    .map(|r| with_prefix(&[true], &r)),
            );
        }
        Ok(out)
    }

    /// `f(x) = { t(v) : v in list(x) }`, order kept, duplicates dropped.
    pub fn f(&self, x: &BitLabel) -> Result<Vec<BitLabel>, MachineError> {
        let mut seen = std::collections::BTreeSet::new();
        Ok(self
            .list_of(x)?
            .iter()
            .map(Self::translate)
            .filter(|p| seen.insert(p.clone()))
            .collect())
    }

    /// Shortest program of length `<= max_len` producing `x` within budget,
    /// ties broken lexicographically.
    pub fn brute_force_c(&self, x: &BitLabel, max_len: usize) -> ComplexityRecord {
        let mut evaluated = 0u64;
        let mut found = None;
        for len in 0..=max_len.min(30) {
            // Sessions below this length are warmed up serially first, so
            // the parallel scan only reads the memo.
            for k in 0..len.saturating_sub(1).min(self.family.k_max() + 1) {
                self.session(k);
            }
            let n = 1u64 << len;
            let hit = (0..n).into_par_iter().find_first(|&i| {
                self.eval_u(&BitLabel::from_u64(i, len)).produces(x)
            });
            if let Some(i) = hit {
                evaluated += i + 1;
                found = Some(BitLabel::from_u64(i, len));
                break;
            }
            evaluated += n;
        }
        let witness_steps = found.as_ref().and_then(|w| match self.eval_u(w) {
            Eval::Halt { steps, .. } => Some(steps),
            Eval::Diverge => None,
        });
        ComplexityRecord {
            x: x.clone(),
            c_u: found.as_ref().map(BitLabel::len),
            witness: found,
            witness_steps,
            max_len,
            programs_evaluated: evaluated,
            step_budget: self.step_budget,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::bits;

    fn machine(table: MachineTable) -> StandardMachine {
        let family = Arc::new(HkFamily::complete(2, 4).unwrap());
        StandardMachine::new(table, family, DEFAULT_STEP_BUDGET)
    }

    fn halt(s: &str) -> Option<BitLabel> {
        Some(bits(s))
    }

    #[test]
    fn dispatch_to_table() {
        let m = machine(MachineTable::new().with("01", "11010", 3));
        assert_eq!(m.eval_u(&bits("001")).output().cloned(), halt("11010"));
    }

    #[test]
    fn clause_one_through_dispatch() {
        let m = machine(MachineTable::new());
        assert_eq!(m.eval_u(&bits("100101")).output().cloned(), halt("101"));
        assert_eq!(m.eval_v(&bits("00")).output().cloned(), Some(BitLabel::empty()));
        assert_eq!(m.eval_u(&BitLabel::empty()), Eval::Diverge);
    }

    #[test]
    fn clause_two_needs_long_output() {
        // U("01") = "01011": 5 > 2^2, so V("01" "01") fires.
        let m = machine(MachineTable::new().with("1", "01011", 2).with("0", "0101", 2));
        assert_eq!(m.eval_v(&bits("0101")).output().cloned(), halt("01011"));
        // U("00") = "0101": 4 = 2^2 is not enough.
        assert_eq!(m.eval_v(&bits("0100")), Eval::Diverge);
        // U("1") = V(empty) diverges.
        assert_eq!(m.eval_v(&bits("011")), Eval::Diverge);
    }

    #[test]
    fn budget_exhaustion_diverges() {
        let t = MachineTable::new().with("1", "0", 10);
        let family = Arc::new(HkFamily::complete(2, 2).unwrap());
        let m = StandardMachine::new(t, family, 9);
        assert_eq!(m.eval_u(&bits("01")), Eval::Diverge);
    }

    #[test]
    fn enumeration_follows_step_rounds() {
        let m = machine(MachineTable::new().with("000", "0011", 5).with("001", "1111", 2));
        let xs: Vec<BitLabel> = m.enumerate_outputs(4).into_iter().map(|e| e.x).collect();
        let a = xs.iter().position(|x| *x == bits("1111")).unwrap();
        let b = xs.iter().position(|x| *x == bits("0011")).unwrap();
        assert!(a < b);
    }

    #[test]
    fn enumeration_keeps_earliest_producer() {
        let m = machine(MachineTable::new().with("10", "111", 4).with("11", "111", 4).with("01", "111", 9));
        let e = m.enumerate_outputs(3);
        let hit: Vec<_> = e.iter().filter(|e| e.x == bits("111")).collect();
        assert_eq!(hit.len(), 1);
        assert_eq!(hit[0].program, bits("010"));
    }

    #[test]
    fn empty_enumeration() {
        let m = machine(MachineTable::new());
        assert!(m.enumerate_outputs(0).is_empty());
    }

    #[test]
    fn list_blocks_for_length_four() {
        let m = machine(MachineTable::new());
        let x = bits("0110");
        let l = m.list_of(&x).unwrap();
        assert_eq!(l[0], bits("000110"));
        assert_eq!(&l[1..4], &[bits("01"), bits("010"), bits("011")]);
        assert_eq!(m.list_levels(&x), vec![4, 3, 2]);
        assert!(matches!(m.list_of(&BitLabel::empty()), Err(MachineError::EmptyString)));
    }

    #[test]
    fn single_bit_uses_small_levels() {
        let m = machine(MachineTable::new());
        assert_eq!(m.list_levels(&bits("1")), vec![1, 0]);
        let l = m.list_of(&bits("1")).unwrap();
        assert_eq!(l[0], bits("001"));
        // H_1 and H_0 are complete: 4 + 2 neighbors.
        assert_eq!(l.len(), 1 + 4 + 2);
    }

    #[test]
    fn clause_three_decodes_matches() {
        let mut t = MachineTable::new();
        for (i, q) in BitLabel::all_of_len(2).enumerate() {
            t.insert(q, BitLabel::from_u64(5 + i as u64, 4), 1 + i as u64);
        }
        let m = machine(t);
        let s = m.session(3).unwrap();
        assert_eq!(s.discards, 0);
        assert!(!s.decoded.is_empty());
        for (r, (x, _)) in &s.decoded {
            let p = StandardMachine::translate(&StandardMachine::translate(r));
            assert_eq!(m.eval_u(&p).output(), Some(x));
        }
    }

    #[test]
    fn empty_table_zero_has_complexity_four() {
        let m = machine(MachineTable::new());
        let r = m.brute_force_c(&bits("0"), 6);
        assert_eq!(r.c_u, Some(4));
        assert_eq!(r.witness, halt("1000"));
    }
}
