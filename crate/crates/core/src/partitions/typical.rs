//! Typical-element strings such as `(a,-a,b,0)`.
//!
//! Symbols are assigned in order of first appearance, scanning cells left to
//! right; a symbol always appears positively before its negation, and the
//! fixed class prints as `0`. After `z` the alphabet continues `a1, a2, ...`.

use super::{PartitionError, TaggedPartition};

fn symbol(index: usize) -> String {
    if index < 26 {
        char::from(b'a' + index as u8).to_string()
    } else {
        format!("a{}", index - 25)
    }
}

fn symbol_index(token: &str) -> Option<usize> {
    let mut chars = token.chars();
    let first = chars.next()?;
    if !first.is_ascii_lowercase() {
        return None;
    }
    let rest = chars.as_str();
    if rest.is_empty() {
        return Some((first as u8 - b'a') as usize);
    }
    if first != 'a' || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse::<usize>().ok().map(|k| k + 25)
}

impl TaggedPartition {
    pub fn typical_element(&self) -> String {
        // (symbol, negated) per class, filled in at first appearance
        let mut assigned: Vec<Option<(usize, bool)>> = vec![None; self.class_count()];
        let mut next = 0;
        let mut parts = Vec::with_capacity(self.n());
        for &c in self.class_ids() {
            if self.partner(c) == Some(c) {
                parts.push("0".to_string());
                continue;
            }
            let (s, negated) = *assigned[c].get_or_insert_with(|| {
                next += 1;
                (next - 1, false)
            });
            if let Some(d) = self.partner(c) {
                assigned[d].get_or_insert((s, true));
            }
            parts.push(if negated { format!("-{}", symbol(s)) } else { symbol(s) });
        }
        format!("({})", parts.join(","))
    }

    /// Inverse of [`TaggedPartition::typical_element`]. Accepts `-` or `−`
    /// for negation and ignores whitespace around entries.
    pub fn parse_typical_element(text: &str) -> Result<Self, PartitionError> {
        let fail = |reason: String| PartitionError::Typical {
            text: text.to_string(),
            reason,
        };
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| fail("expected parentheses around the entries".into()))?;
        if inner.trim().is_empty() {
            return Ok(TaggedPartition::discrete(0));
        }
        // label 2s is symbol s, 2s+1 its negation; usize::MAX is the zero class
        const ZERO: usize = usize::MAX;
        let mut labels = Vec::new();
        let mut symbols = 0;
        let mut has_negation: Vec<bool> = Vec::new();
        for raw in inner.split(',') {
            let token = raw.trim();
            if token == "0" {
                labels.push(ZERO);
                continue;
            }
            let (negated, name) = match token.strip_prefix('-').or_else(|| token.strip_prefix('−')) {
                Some(rest) => (true, rest.trim_start()),
                None => (false, token),
            };
            let s = symbol_index(name).ok_or_else(|| fail(format!("unrecognised entry {token:?}")))?;
            if s > symbols || (s == symbols && negated) {
                return Err(fail(format!(
                    "entry {token:?} out of order: symbols must first appear positively, as a, b, c, ..."
                )));
            }
            if s == symbols {
                symbols += 1;
                has_negation.push(false);
            }
            if negated {
                has_negation[s] = true;
            }
            labels.push(2 * s + usize::from(negated));
        }
        TaggedPartition::from_labels(&labels, |l| {
            if l == ZERO {
                Some(ZERO)
            } else if l % 2 == 1 || has_negation[l / 2] {
                Some(l ^ 1)
            } else {
                None
            }
        })
    }
}
