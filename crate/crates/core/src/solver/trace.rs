use std::fmt;

/// Rewrite rules of the operational calculus, in the order they are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Linearity,
    InverseTranslation,
    Unity,
    Propagation,
    Power,
    Cosine,
    Sine,
    Scale,
    ShiftTheorem,
    SeriesInverse,
}

impl Rule {
    /// Stable machine identifier.
    pub fn id(self) -> &'static str {
        match self {
            Rule::Linearity => "linearity",
            Rule::InverseTranslation => "inverse-translation",
            Rule::Unity => "unity",
            Rule::Propagation => "propagation",
            Rule::Power => "power",
            Rule::Cosine => "cosine",
            Rule::Sine => "sine",
            Rule::Scale => "scale",
            Rule::ShiftTheorem => "shift-theorem",
            Rule::SeriesInverse => "series-inverse",
        }
    }

    /// Human label, numbered after the operator identities it applies.
    pub fn label(self) -> &'static str {
        match self {
            Rule::Linearity => "Eq. 3 linearity",
            Rule::InverseTranslation => "Eq. 4 inverse translation",
            Rule::Unity => "Eq. 5 unity",
            Rule::Propagation => "Eq. 6 propagation",
            Rule::Power => "Eq. 7 power rule",
            Rule::Cosine => "Eq. 8 cosine rule",
            Rule::Sine => "Eq. 9 sine rule",
            Rule::Scale => "Eq. 10 scale rule",
            Rule::ShiftTheorem => "Eq. 11 shift theorem",
            Rule::SeriesInverse => "difference-basis series inversion",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveStep {
    pub rule: Rule,
    pub before: String,
    pub after: String,
}

impl fmt::Display for SolveStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} => {}",
            self.rule.label(),
            self.before,
            self.after
        )
    }
}

/// Ordered rule applications. The last step's `after` is the rendered
/// particular solution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveTrace {
    pub steps: Vec<SolveStep>,
}

impl SolveTrace {
    pub fn push(&mut self, rule: Rule, before: impl Into<String>, after: impl Into<String>) {
        self.steps.push(SolveStep {
            rule,
            before: before.into(),
            after: after.into(),
        });
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.steps.iter().map(|s| s.rule).collect()
    }

    pub fn final_expression(&self) -> Option<&str> {
        self.steps.last().map(|s| s.after.as_str())
    }
}
