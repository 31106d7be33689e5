//! Problem instances and their JSON file format.
//!
//! ```json
//! {"n":3,"maximize":[2],"constraints":[[1,2],[3,2]]}
//! ```
//!
//! `maximize` lists 1-based indices of maximized variables; all others are
//! minimized. Each constraint `[i, j]` means `x_i >= x_j`. An optional
//! `provenance` string documents where the instance comes from.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hasse::{build_diagram, HasseDiagram, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub n: usize,
    pub maximize: Vec<usize>,
    pub constraints: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl Instance {
    pub fn new(signature: &Signature, constraints: &[(usize, usize)]) -> Instance {
        Instance {
            n: signature.n(),
            maximize: signature.ascending(),
            constraints: constraints.iter().map(|&(i, j)| [i, j]).collect(),
            provenance: None,
        }
    }

    pub fn signature(&self) -> Result<Signature> {
        Signature::new(self.n, self.maximize.iter().copied())
    }

    pub fn constraint_pairs(&self) -> Vec<(usize, usize)> {
        self.constraints.iter().map(|&[i, j]| (i, j)).collect()
    }

    /// Index checks without building a diagram.
    pub fn validate(&self) -> Result<()> {
        let sig = self.signature()?;
        for &[i, j] in &self.constraints {
            for index in [i, j] {
                if index == 0 || index > sig.n() {
                    return Err(Error::IndexOutOfRange { index, n: sig.n() });
                }
            }
        }
        Ok(())
    }

    pub fn diagram(&self) -> Result<HasseDiagram> {
        build_diagram(self.signature()?, &self.constraint_pairs())
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let instance: Instance = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        instance.validate()?;
        Ok(instance)
    }

    /// Compact single-line JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("instance serializes");
        text.push('\n');
        text
    }
}
