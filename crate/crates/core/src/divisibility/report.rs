use std::fmt;

use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Established exhaustively or by a structural certificate.
    Holds,
    /// A concrete counterexample, printed in the CLI literal notation.
    FailsWith(String),
    /// No counterexample among the sampled or windowed cases.
    HoldsWithinBounds,
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::FailsWith(_))
    }

    fn tag(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::FailsWith(_) => "fails",
            Verdict::HoldsWithinBounds => "holds-within-bounds",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub property: String,
    pub verdict: Verdict,
    /// Number of cases examined.
    pub size: u64,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(property: impl Into<String>, verdict: Verdict, size: u64, seed: Option<u64>) -> Self {
        CheckReport {
            property: property.into(),
            verdict,
            size,
            seed,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json_value(&self) -> Value {
        let witness = match &self.verdict {
            Verdict::FailsWith(w) => Value::String(w.clone()),
            _ => Value::Null,
        };
        json!({
            "property": self.property,
            "verdict": self.verdict.tag(),
            "witness": witness,
            "size": self.size,
            "seed": self.seed.map(|s| s.to_string()),
            "notes": self.notes,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain JSON value")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property: {}", self.property)?;
        writeln!(f, "verdict: {}", self.verdict.tag())?;
        if let Verdict::FailsWith(w) = &self.verdict {
            writeln!(f, "witness: {w}")?;
        }
        writeln!(f, "size: {}", self.size)?;
        match self.seed {
            Some(s) => writeln!(f, "seed: {s}")?,
            None => writeln!(f, "seed: none")?,
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_sorted() {
        let r = CheckReport::new("atomic", Verdict::FailsWith("((1,0),K♯)".into()), 1, Some(7)).note("x");
        let text = r.to_json();
        let keys: Vec<usize> = ["notes", "property", "seed", "size", "verdict", "witness"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(r.to_string().contains("witness: ((1,0),K♯)"));
    }
}
