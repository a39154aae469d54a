//! JSON state files.
//!
//! ```json
//! {"format":"density","matrix":[[[re,im], ...4], ...4]}
//! {"format":"bloch","u":[..3],"v":[..3],"C":[[..3], ..3]}
//! ```
//!
//! Numbers are written in shortest round-trip form, so `parse(write(s))`
//! reproduces every double exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{CMat4, RMat3, RVec3};
use crate::states::{bloch_of, density_of, BlochMatrix, DensityOp};

#[derive(Debug, Clone, PartialEq)]
pub enum StateFile {
    Density(DensityOp),
    Bloch(BlochMatrix),
}

impl StateFile {
    pub fn bloch(&self) -> crate::Result<BlochMatrix> {
        match self {
            StateFile::Density(rho) => bloch_of(rho),
            StateFile::Bloch(b) => Ok(*b),
        }
    }

    pub fn density(&self) -> DensityOp {
        match self {
            StateFile::Density(rho) => *rho,
            StateFile::Bloch(b) => density_of(b),
        }
    }
}

/// A state file that failed to parse or validate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {source}")]
    Invalid {
        field: &'static str,
        #[source]
        source: crate::Error,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "lowercase", deny_unknown_fields)]
enum Raw {
    Density {
        matrix: [[[f64; 2]; 4]; 4],
    },
    Bloch {
        u: [f64; 3],
        v: [f64; 3],
        #[serde(rename = "C")]
        c: [[f64; 3]; 3],
    },
}

pub fn parse_state(text: &str) -> Result<StateFile, ParseError> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match raw {
        Raw::Density { matrix } => {
            let m = CMat4::try_new(matrix.map(|row| row.map(|[re, im]| Complex64::new(re, im))))
                .map_err(|source| ParseError::Invalid { field: "matrix", source })?;
            DensityOp::new(m)
                .map(StateFile::Density)
                .map_err(|source| ParseError::Invalid { field: "matrix", source })
        }
        Raw::Bloch { u, v, c } => BlochMatrix::new(RVec3(u), RVec3(v), RMat3(c))
            .map(StateFile::Bloch)
            .map_err(|source| ParseError::Invalid { field: "u/v/C", source }),
    }
}

pub fn write_state(state: &StateFile) -> String {
    let raw = match state {
        StateFile::Density(rho) => Raw::Density {
            matrix: rho.matrix().0.map(|row| row.map(|z| [z.re, z.im])),
        },
        StateFile::Bloch(b) => Raw::Bloch {
            u: b.u.0,
            v: b.v.0,
            c: b.c.0,
        },
    };
    serde_json::to_string(&raw).expect("finite doubles serialize")
}
