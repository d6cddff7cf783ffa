use std::fmt;

/// Non-fatal findings raised while canonizing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    /// A scope with more than `r` vertices had no `r`-vertex separator; its
    /// vertices were ranked in input order.
    NoSeparator { depth: usize, size: usize },
    /// No fixing sequence of the requested length exists.
    NoFixingSequence { r: usize },
    /// Two graphs received equal invariant codes but are not isomorphic.
    InvariantCollision { depth: usize, size: usize },
    /// Codes matched but the composed mapping is not an isomorphism.
    VerificationFailed,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoSeparator { depth, size } => {
                write!(f, "no-separator(depth={depth},size={size})")
            }
            Diagnostic::NoFixingSequence { r } => write!(f, "no-fixing-sequence(r={r})"),
            Diagnostic::InvariantCollision { depth, size } => {
                write!(f, "invariant-collision(depth={depth},size={size})")
            }
            Diagnostic::VerificationFailed => f.write_str("verification-failed"),
        }
    }
}

/// Joins diagnostics with `;`, or `-` when there are none.
pub fn format_diagnostics(diags: &[Diagnostic]) -> String {
    if diags.is_empty() {
        "-".to_string()
    } else {
        diags
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";")
    }
}
