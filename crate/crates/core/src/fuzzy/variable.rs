use super::{FuzzyError, MembershipFunction};

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub label: String,
    pub mf: MembershipFunction,
}

/// A linguistic variable: a closed universe and an ordered list of labeled terms.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyVariable {
    name: String,
    lo: f64,
    hi: f64,
    terms: Vec<Term>,
}

impl FuzzyVariable {
    /// Builds a variable, checking label uniqueness and that every point of
    /// `[lo, hi]` has at least one term with a positive grade.
    pub fn new(
        name: impl Into<String>,
        lo: f64,
        hi: f64,
        terms: Vec<(String, MembershipFunction)>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(FuzzyError::Universe { name, lo, hi });
        }
        if terms.is_empty() {
            return Err(FuzzyError::Coverage { name, at: lo });
        }
        let terms: Vec<Term> = terms.into_iter().map(|(label, mf)| Term { label, mf }).collect();
        for (i, t) in terms.iter().enumerate() {
            if terms[..i].iter().any(|o| o.label == t.label) {
                return Err(FuzzyError::DuplicateLabel { name, label: t.label.clone() });
            }
        }
        let var = Self { name, lo, hi, terms };
        var.check_coverage()?;
        Ok(var)
    }

    // Between consecutive breakpoints every term is linear, so probing the
    // breakpoints and the midpoints between them decides coverage exactly.
    fn check_coverage(&self) -> Result<(), FuzzyError> {
        let mut points = vec![self.lo, self.hi];
        for t in &self.terms {
            points.extend(t.mf.breakpoints().into_iter().filter(|&x| x > self.lo && x < self.hi));
        }
        points.sort_by(f64::total_cmp);
        points.dedup();
        let mids: Vec<f64> = points.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        for &x in points.iter().chain(&mids) {
            if self.terms.iter().all(|t| t.mf.eval(x) <= 0.0) {
                return Err(FuzzyError::Coverage { name: self.name.clone(), at: x });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    pub fn clamp(&self, crisp: f64) -> f64 {
        if crisp.is_nan() {
            return self.lo;
        }
        crisp.clamp(self.lo, self.hi)
    }

    /// Grades of every term at `crisp`, in term order. Inputs outside the
    /// universe are clamped to its boundary first.
    pub fn fuzzify(&self, crisp: f64) -> Vec<f64> {
        let x = self.clamp(crisp);
        self.terms.iter().map(|t| t.mf.eval(x)).collect()
    }

    /// Labeled form of [`FuzzyVariable::fuzzify`].
    pub fn fuzzify_labeled(&self, crisp: f64) -> Vec<(&str, f64)> {
        self.terms.iter().zip(self.fuzzify(crisp)).map(|(t, g)| (t.label.as_str(), g)).collect()
    }
}
