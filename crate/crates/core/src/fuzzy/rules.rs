use super::{FuzzyError, FuzzyVariable};

/// One `IF energy IS e AND distance IS d THEN range IS r` rule, by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub energy: String,
    pub distance: String,
    pub comr: String,
}

impl Rule {
    pub fn new(energy: &str, distance: &str, comr: &str) -> Self {
        Self { energy: energy.into(), distance: distance.into(), comr: comr.into() }
    }
}

/// The default nine rules, ordered so that the consequent range grows with
/// the rule index: distance dominates, energy refines within a distance band.
pub fn default_rules() -> Vec<Rule> {
    [
        ("Low", "Close", "VerySmall"),
        ("Med", "Close", "Small"),
        ("High", "Close", "RatherSmall"),
        ("Low", "Med", "MedSmall"),
        ("Med", "Med", "Med"),
        ("High", "Med", "MedLarge"),
        ("Low", "Far", "RatherLarge"),
        ("Med", "Far", "Large"),
        ("High", "Far", "VeryLarge"),
    ]
    .into_iter()
    .map(|(e, d, r)| Rule::new(e, d, r))
    .collect()
}

/// Rule base resolved against concrete input and output variables.
///
/// Antecedent pairs cover the full energy × distance product exactly once and
/// every output term is the consequent of exactly one rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    rules: Vec<Rule>,
    // (energy term, distance term, comr term) indices
    resolved: Vec<(usize, usize, usize)>,
}

impl RuleBase {
    pub fn new(
        rules: Vec<Rule>,
        energy: &FuzzyVariable,
        distance: &FuzzyVariable,
        comr: &FuzzyVariable,
    ) -> Result<Self, FuzzyError> {
        let lookup = |var: &FuzzyVariable, label: &str| {
            var.term_index(label)
                .ok_or_else(|| FuzzyError::RuleBase(format!("unknown label `{label}` for variable `{}`", var.name())))
        };
        let n_e = energy.terms().len();
        let n_d = distance.terms().len();
        let n_r = comr.terms().len();
        if rules.len() != n_e * n_d {
            return Err(FuzzyError::RuleBase(format!(
                "expected {} rules (one per antecedent pair), got {}",
                n_e * n_d,
                rules.len()
            )));
        }
        if n_r != rules.len() {
            return Err(FuzzyError::RuleBase(format!(
                "output variable has {n_r} terms but there are {} rules",
                rules.len()
            )));
        }
        let mut seen_pair = vec![false; n_e * n_d];
        let mut seen_out = vec![false; n_r];
        let mut resolved = Vec::with_capacity(rules.len());
        for r in &rules {
            let e = lookup(energy, &r.energy)?;
            let d = lookup(distance, &r.distance)?;
            let c = lookup(comr, &r.comr)?;
            if std::mem::replace(&mut seen_pair[e * n_d + d], true) {
                return Err(FuzzyError::RuleBase(format!("duplicate antecedent ({}, {})", r.energy, r.distance)));
            }
            if std::mem::replace(&mut seen_out[c], true) {
                return Err(FuzzyError::RuleBase(format!("consequent `{}` used twice", r.comr)));
            }
            resolved.push((e, d, c));
        }
        Ok(Self { rules, resolved })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub(crate) fn resolved(&self) -> &[(usize, usize, usize)] {
        &self.resolved
    }
}
