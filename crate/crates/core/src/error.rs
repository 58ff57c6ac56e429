use thiserror::Error;

use crate::numerics::Enclosure;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },
    #[error("pole of {function} at {at}; {hint}")]
    Pole {
        function: &'static str,
        at: String,
        hint: &'static str,
    },
    #[error("precision exhausted in {context} (best radius {best_radius})")]
    PrecisionExhausted {
        context: String,
        best_radius: String,
        best: Option<Box<Enclosure>>,
    },
    #[error("{function} needs a point argument in the continuation region, got radius {radius}")]
    NonPointArgument {
        function: &'static str,
        radius: String,
    },
}

impl Error {
    pub fn domain(function: &'static str, detail: impl Into<String>) -> Error {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub fn pole(function: &'static str, at: impl Into<String>, hint: &'static str) -> Error {
        Error::Pole {
            function,
            at: at.into(),
            hint,
        }
    }

    pub fn exhausted(context: impl Into<String>, best: Option<Enclosure>) -> Error {
        Error::PrecisionExhausted {
            context: context.into(),
            best_radius: best
                .as_ref()
                .map(|b| b.radius_string())
                .unwrap_or_else(|| "inf".to_string()),
            best: best.map(Box::new),
        }
    }

    pub fn is_precision_exhausted(&self) -> bool {
        matches!(self, Error::PrecisionExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
