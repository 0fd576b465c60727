use serde::{Deserialize, Serialize};

use crate::qsim::AnsatzParams;
use crate::{Error, Result};

/// Saved training state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub p: usize,
    pub betas: Vec<Vec<f64>>,
    pub gammas: Vec<Vec<f64>>,
    pub seed: u64,
    pub iter: usize,
    pub objective: f64,
}

impl Checkpoint {
    pub fn new(params: &AnsatzParams, seed: u64, iter: usize, objective: f64) -> Self {
        Self {
            p: params.layers(),
            betas: params.betas.clone(),
            gammas: params.gammas.clone(),
            seed,
            iter,
            objective,
        }
    }

    pub fn params(&self) -> Result<AnsatzParams> {
        AnsatzParams::new(self.betas.clone(), self.gammas.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("checkpoint serialises")
    }
}

/// Parses a checkpoint and checks that `p` matches both angle arrays and
/// that the angles form valid parameters.
pub fn parse_checkpoint(text: &str) -> Result<Checkpoint> {
    let cp: Checkpoint = serde_json::from_str(text)?;
    if cp.betas.len() != cp.p || cp.gammas.len() != cp.p {
        return Err(Error::InvalidInput(format!(
            "checkpoint declares p = {} but stores {} mixer and {} cost layers",
            cp.p,
            cp.betas.len(),
            cp.gammas.len()
        )));
    }
    cp.params()?;
    if !cp.objective.is_finite() {
        return Err(Error::InvalidInput("checkpoint objective is not finite".into()));
    }
    Ok(cp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let params = AnsatzParams::new(vec![vec![0.1, 0.2]], vec![vec![0.3]]).unwrap();
        let cp = Checkpoint::new(&params, 7, 12, 0.25);
        let back = parse_checkpoint(&cp.to_json()).unwrap();
        assert_eq!(back, cp);
        assert_eq!(back.params().unwrap(), params);
    }

    #[test]
    fn rejects_inconsistent_layers() {
        let text = r#"{"p": 2, "betas": [[0.1]], "gammas": [[0.2]], "seed": 1, "iter": 0, "objective": 0.0}"#;
        assert!(parse_checkpoint(text).is_err());
        assert!(parse_checkpoint("{").is_err());
    }
}
