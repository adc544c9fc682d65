use super::rules::{default_rules, RuleBase};
use super::{FuzzyError, FuzzyVariable, MembershipFunction};

pub const ENERGY_LABELS: [&str; 3] = ["Low", "Med", "High"];
pub const DISTANCE_LABELS: [&str; 3] = ["Close", "Med", "Far"];
pub const COMR_LABELS: [&str; 9] =
    ["VerySmall", "Small", "RatherSmall", "MedSmall", "Med", "MedLarge", "RatherLarge", "Large", "VeryLarge"];

/// Clipped output sets produced by inference.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedOutput<'a> {
    variable: &'a FuzzyVariable,
    clip_levels: Vec<f64>,
}

impl<'a> AggregatedOutput<'a> {
    pub fn new(variable: &'a FuzzyVariable, clip_levels: Vec<f64>) -> Result<Self, FuzzyError> {
        if clip_levels.len() != variable.terms().len() {
            return Err(FuzzyError::GradeCount {
                name: variable.name().to_owned(),
                expected: variable.terms().len(),
                got: clip_levels.len(),
            });
        }
        if let Some(&bad) = clip_levels.iter().find(|c| !(0.0..=1.0).contains(*c)) {
            return Err(FuzzyError::Grade(bad));
        }
        Ok(Self { variable, clip_levels })
    }

    pub fn variable(&self) -> &FuzzyVariable {
        self.variable
    }

    pub fn clip_levels(&self) -> &[f64] {
        &self.clip_levels
    }

    /// Pointwise aggregated membership: max over terms of min(clip, grade).
    pub fn membership(&self, x: f64) -> f64 {
        self.variable.terms().iter().zip(&self.clip_levels).map(|(t, &c)| c.min(t.mf.eval(x))).fold(0.0, f64::max)
    }

    /// Index of the consequent with the highest clip level; ties go to the lower index.
    pub fn dominant_term(&self) -> usize {
        let mut best = 0;
        for (i, &c) in self.clip_levels.iter().enumerate() {
            if c > self.clip_levels[best] {
                best = i;
            }
        }
        best
    }

    /// Center-of-area defuzzification.
    ///
    /// The aggregated set is piecewise linear, so the universe is cut at every
    /// slope change (term breakpoints, clip-level crossings, and crossings
    /// between clipped terms) and area and first moment are integrated exactly
    /// on each linear piece.
    pub fn centroid(&self) -> Result<f64, FuzzyError> {
        if self.clip_levels.iter().all(|&c| c <= 0.0) {
            return Err(FuzzyError::NoRuleFired);
        }
        let (lo, hi) = self.variable.universe();
        let active: Vec<(&MembershipFunction, f64)> = self
            .variable
            .terms()
            .iter()
            .zip(&self.clip_levels)
            .filter(|(_, &c)| c > 0.0)
            .map(|(t, &c)| (&t.mf, c))
            .collect();

        let mut cuts = vec![lo, hi];
        for (mf, c) in &active {
            cuts.extend(mf.breakpoints());
            cuts.extend(mf.level_crossings(*c));
        }
        cuts.retain(|&x| x >= lo && x <= hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let clipped = |x: f64| -> Vec<f64> { active.iter().map(|(mf, c)| c.min(mf.eval(x))).collect() };

        let mut area = 0.0;
        let mut moment = 0.0;
        let mut pieces = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ga = clipped(a);
            let gb = clipped(b);
            pieces.clear();
            pieces.push(a);
            for i in 0..active.len() {
                for j in i + 1..active.len() {
                    let da = ga[i] - ga[j];
                    let db = gb[i] - gb[j];
                    if (da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0) {
                        pieces.push(a + (b - a) * da / (da - db));
                    }
                }
            }
            pieces.push(b);
            pieces.sort_by(f64::total_cmp);
            for p in pieces.windows(2) {
                let (x0, x1) = (p[0], p[1]);
                let width = x1 - x0;
                if width <= 0.0 {
                    continue;
                }
                let m0 = self.membership(x0);
                let m1 = self.membership(x1);
                area += 0.5 * width * (m0 + m1);
                moment += width / 6.0 * (m0 * (2.0 * x0 + x1) + m1 * (x0 + 2.0 * x1));
            }
        }
        if area <= 0.0 {
            return Err(FuzzyError::NoRuleFired);
        }
        Ok((moment / area).clamp(lo, hi))
    }
}

/// Everything the range controller needs: both inputs, the output, and the rules.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyConfig {
    pub energy: FuzzyVariable,
    pub distance: FuzzyVariable,
    pub comr: FuzzyVariable,
    pub rules: RuleBase,
}

/// Breakpoints of a three-term input partition, as fractions of the universe width.
const INPUT_PARTITION: [(f64, f64); 2] = [(0.2, 0.4), (0.6, 0.8)];
const INPUT_MED: (f64, f64, f64) = (0.2, 0.5, 0.8);

/// Low/Med/High style partition over `[0, max]`.
pub fn three_term_partition(name: &str, max: f64, labels: [&str; 3]) -> Result<FuzzyVariable, FuzzyError> {
    let (l0, l1) = INPUT_PARTITION[0];
    let (h0, h1) = INPUT_PARTITION[1];
    let (m0, m1, m2) = INPUT_MED;
    FuzzyVariable::new(
        name,
        0.0,
        max,
        vec![
            (labels[0].into(), MembershipFunction::left_shoulder(l0 * max, l1 * max)?),
            (labels[1].into(), MembershipFunction::triangular(m0 * max, m1 * max, m2 * max)?),
            (labels[2].into(), MembershipFunction::right_shoulder(h0 * max, h1 * max)?),
        ],
    )
}

/// Nine evenly spaced output terms over `[0, max]`: shoulders at both ends,
/// triangles peaking at `i * max / 8` for `i = 1..=7`.
pub fn comr_partition(max: f64) -> Result<FuzzyVariable, FuzzyError> {
    let step = max / 8.0;
    let mut terms = Vec::with_capacity(9);
    for (i, label) in COMR_LABELS.iter().enumerate() {
        let peak = i as f64 * step;
        let mf = match i {
            0 => MembershipFunction::left_shoulder(0.0, step)?,
            8 => MembershipFunction::right_shoulder(max - step, max)?,
            _ => MembershipFunction::triangular(peak - step, peak, peak + step)?,
        };
        terms.push(((*label).to_owned(), mf));
    }
    FuzzyVariable::new("comr", 0.0, max, terms)
}

impl FuzzyConfig {
    pub fn new(
        energy: FuzzyVariable,
        distance: FuzzyVariable,
        comr: FuzzyVariable,
        rules: Vec<super::Rule>,
    ) -> Result<Self, FuzzyError> {
        let rules = RuleBase::new(rules, &energy, &distance, &comr)?;
        Ok(Self { energy, distance, comr, rules })
    }

    /// Default partitions: energy over `[0, initial_energy]`, distance over
    /// `[0, max_distance]`, range over `[0, max_range]`, with the standard rules.
    pub fn with_defaults(initial_energy: f64, max_distance: f64, max_range: f64) -> Result<Self, FuzzyError> {
        Self::new(
            three_term_partition("energy", initial_energy, ENERGY_LABELS)?,
            three_term_partition("distance", max_distance, DISTANCE_LABELS)?,
            comr_partition(max_range)?,
            default_rules(),
        )
    }

    /// Mamdani inference: each rule fires at the min of its antecedent grades,
    /// its consequent is clipped at that strength, clips combine by max.
    pub fn infer(&self, energy_grades: &[f64], distance_grades: &[f64]) -> Result<AggregatedOutput<'_>, FuzzyError> {
        for (var, grades) in [(&self.energy, energy_grades), (&self.distance, distance_grades)] {
            if grades.len() != var.terms().len() {
                return Err(FuzzyError::GradeCount {
                    name: var.name().to_owned(),
                    expected: var.terms().len(),
                    got: grades.len(),
                });
            }
        }
        let mut clips = vec![0.0; self.comr.terms().len()];
        for &(e, d, c) in self.rules.resolved() {
            let strength = energy_grades[e].min(distance_grades[d]);
            clips[c] = f64::max(clips[c], strength);
        }
        AggregatedOutput::new(&self.comr, clips)
    }

    /// Communication range for a node with `residual_energy` joules at
    /// `distance_to_bs` meters from the base station.
    pub fn compute_comr(&self, residual_energy: f64, distance_to_bs: f64) -> Result<f64, FuzzyError> {
        let e = self.energy.fuzzify(residual_energy);
        let d = self.distance.fuzzify(distance_to_bs);
        self.infer(&e, &d)?.centroid()
    }
}
