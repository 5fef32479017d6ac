use std::collections::BTreeMap;

use crate::error::MachineError;
use crate::label::BitLabel;

/// Base behavior of the toy machine: program -> (output, steps).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MachineTable {
    entries: BTreeMap<BitLabel, (BitLabel, u64)>,
}

impl MachineTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Later inserts for the same program replace earlier ones. Steps are
    /// clamped to at least 1.
    pub fn insert(&mut self, program: BitLabel, output: BitLabel, steps: u64) {
        self.entries.insert(program, (output, steps.max(1)));
    }

    pub fn with(mut self, program: &str, output: &str, steps: u64) -> Self {
        let parse = |s: &str| s.parse::<BitLabel>().expect("valid bit string");
        self.insert(parse(program), parse(output), steps);
        self
    }

    pub fn get(&self, program: &BitLabel) -> Option<(&BitLabel, u64)> {
        self.entries.get(program).map(|(o, s)| (o, *s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_prog_len(&self) -> usize {
        self.entries.keys().map(BitLabel::len).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitLabel, &BitLabel, u64)> {
        self.entries.iter().map(|(p, (o, s))| (p, o, *s))
    }

    /// Lines `<program>\t<output>\t<steps>`; blank lines and `#` comments
    /// are skipped. An empty program field is the empty program.
    pub fn parse(text: &str) -> Result<Self, MachineError> {
        let mut table = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| MachineError::Parse { line, msg };
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.trim_end_matches('\r').split('\t').collect();
            let [prog, out, steps] = fields[..] else {
                return Err(err(format!("expected 3 tab-separated fields, got {}", fields.len())));
            };
            let prog: BitLabel = prog.trim().parse().map_err(|e| err(format!("program: {e}")))?;
            let out: BitLabel = out.trim().parse().map_err(|e| err(format!("output: {e}")))?;
            let steps: u64 = steps
                .trim()
                .parse()
                .map_err(|e| err(format!("steps: {e}")))?;
            if steps == 0 {
                return Err(err("steps must be positive".into()));
            }
            if table.entries.contains_key(&prog) {
                return Err(err(format!("duplicate program {prog}")));
            }
            table.insert(prog, out, steps);
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        self.iter()
            .map(|(p, o, s)| format!("{p}\t{o}\t{s}\n"))
            .collect()
    }
}

/// Corpus file: one bit string per line.
pub fn parse_corpus(text: &str) -> Result<Vec<BitLabel>, MachineError> {
    crate::matching::parse_stream(text)
}
