//! JSON form: `{"n":4,"classes":[[1],[2],[3],[4]],"involution":{"0":1},"fixed":3}`.
//! Cells are 1-based; `involution` and `fixed` refer to positions in
//! `classes`. Pairs may be listed in one or both directions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PartitionError, TaggedPartition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedPartitionDoc {
    pub n: usize,
    pub classes: Vec<Vec<usize>>,
    #[serde(default)]
    pub involution: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed: Option<usize>,
}

impl From<&TaggedPartition> for TaggedPartitionDoc {
    fn from(p: &TaggedPartition) -> Self {
        Self {
            n: p.n(),
            classes: p
                .classes()
                .into_iter()
                .map(|c| c.into_iter().map(|i| i + 1).collect())
                .collect(),
            involution: p.pairs().map(|(c, d)| (c.to_string(), d)).collect(),
            fixed: p.fixed_class(),
        }
    }
}

impl TryFrom<&TaggedPartitionDoc> for TaggedPartition {
    type Error = PartitionError;

    fn try_from(doc: &TaggedPartitionDoc) -> Result<Self, Self::Error> {
        let mut classes = Vec::with_capacity(doc.classes.len());
        for class in &doc.classes {
            let mut cells = Vec::with_capacity(class.len());
            for &cell in class {
                if cell == 0 || cell > doc.n {
                    return Err(PartitionError::Invalid(format!("cell {cell} outside 1..{}", doc.n)));
                }
                cells.push(cell - 1);
            }
            classes.push(cells);
        }
        let mut pairs = Vec::with_capacity(doc.involution.len());
        for (key, &d) in &doc.involution {
            let c: usize = key
                .parse()
                .map_err(|_| PartitionError::Invalid(format!("involution key {key:?} is not a class index")))?;
            pairs.push((c, d));
        }
        TaggedPartition::from_classes(doc.n, &classes, &pairs, doc.fixed)
    }
}

impl TaggedPartition {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TaggedPartitionDoc::from(self)).expect("partition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PartitionError> {
        let doc: TaggedPartitionDoc =
            serde_json::from_str(text).map_err(|e| PartitionError::Invalid(e.to_string()))?;
        TaggedPartition::try_from(&doc)
    }
}
