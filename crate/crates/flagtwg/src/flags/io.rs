//! JSON forms of flags and symplectic forms.
//!
//! A flag file looks like
//! `{"ambient": 3, "signature": [1, 2], "vectors": [[["1","0"],["0","0"],["0","0"]], ...]}`
//! where `vectors` lists basis vectors (columns) and each entry is a pair
//! of rational strings, real part first. A form file holds `{"gram": rows}`
//! with entries in the same format.

use serde::{Deserialize, Serialize};

use super::{ExactFlag, ExactMatrix, FlagError, GaussianRational, Signature, SymplecticForm};

type Entry = [String; 2];

#[derive(Debug, Serialize, Deserialize)]
pub struct FlagFile {
    pub ambient: usize,
    pub signature: Vec<usize>,
    pub vectors: Vec<Vec<Entry>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FormFile {
    pub gram: Vec<Vec<Entry>>,
}

fn parse_entries(rows: &[Vec<Entry>]) -> Result<Vec<Vec<GaussianRational>>, FlagError> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|[re, im]| GaussianRational::parse_parts(re, im).map_err(FlagError::Parse))
                .collect()
        })
        .collect()
}

impl FlagFile {
    pub fn to_flag(&self) -> Result<ExactFlag, FlagError> {
        let sig = Signature::new(self.signature.clone(), self.ambient)?;
        let cols = parse_entries(&self.vectors)?;
        let m = ExactMatrix::from_columns(self.ambient, cols).map_err(FlagError::Parse)?;
        ExactFlag::new(sig, m)
    }

    pub fn from_flag(f: &ExactFlag) -> Self {
        FlagFile {
            ambient: f.ambient(),
            signature: f.signature().dims().to_vec(),
            vectors: f
                .basis()
                .columns()
                .iter()
                .map(|c| c.iter().map(GaussianRational::to_parts).collect())
                .collect(),
        }
    }
}

impl FormFile {
    pub fn to_form(&self) -> Result<SymplecticForm, FlagError> {
        let rows = parse_entries(&self.gram)?;
        SymplecticForm::new(ExactMatrix::from_rows(rows).map_err(FlagError::Parse)?)
    }

    pub fn from_form(w: &SymplecticForm) -> Self {
        let g = w.gram();
        FormFile {
            gram: (0..g.rows())
                .map(|i| g.row(i).iter().map(GaussianRational::to_parts).collect())
                .collect(),
        }
    }
}
