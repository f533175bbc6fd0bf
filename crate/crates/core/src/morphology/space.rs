use crate::coding::{null_case_cost, Alphabet, BitLength, Case};
use crate::error::Result;
use crate::model_space::{ModelSpace, SearchBounds};

use super::{
    case_cost_given_model, generate_candidates_with, transfer_cost, CandidateFilter, Model,
};

/// The concatenation-pattern model space over one alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MorphologySpace {
    alphabet: Alphabet,
}

impl MorphologySpace {
    pub fn new(alphabet: Alphabet) -> Self {
        MorphologySpace { alphabet }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Largest two-part cost a model can have and still matter: hard-coding
    /// the case costs `1 + 1 + K(x, y)`, and every score either minimizes the
    /// two-part cost or adds a constant to it, so costlier models never win.
    pub fn relevance_budget(&self, case: &Case) -> Result<BitLength> {
        Ok(null_case_cost(case, &self.alphabet)? + 2)
    }
}

impl ModelSpace for MorphologySpace {
    type Model = Model;
    type Case = Case;

    fn candidates(&self, case: &Case, bounds: &SearchBounds) -> Result<Vec<Model>> {
        let filter = CandidateFilter {
            max_total: Some(self.relevance_budget(case)?),
            nonempty_slots: false,
        };
        let mut models: Vec<Model> =
            generate_candidates_with(case, bounds, &self.alphabet, &filter)?
                .into_iter()
                .map(Model::Morph)
                .collect();
        models.push(Model::HardCode);
        models.sort();
        Ok(models)
    }

    fn admits_source(&self, _source: &Model) -> bool {
        true
    }

    fn model_cost(&self, model: &Model) -> Result<BitLength> {
        model.cost(&self.alphabet)
    }

    fn case_cost(&self, model: &Model, case: &Case) -> Result<BitLength> {
        Ok(case_cost_given_model(model, case, &self.alphabet)?.bits)
    }

    fn null_case_cost(&self, case: &Case) -> Result<BitLength> {
        null_case_cost(case, &self.alphabet)
    }

    fn transfer_cost(&self, target: &Model, source: &Model) -> Result<BitLength> {
        transfer_cost(target, source, &self.alphabet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphology::parse_model;

    #[test]
    fn candidates_include_hardcode_and_suffix() {
        let space = MorphologySpace::default();
        let found = space
            .candidates(&Case::new("film", "films"), &SearchBounds::default())
            .unwrap();
        assert!(found.contains(&Model::HardCode));
        assert!(found.contains(&parse_model(r#"phi1=$1; phi2=$1."s""#).unwrap()));
        assert!(found.windows(2).all(|w| w[0] < w[1]));
    }
}
