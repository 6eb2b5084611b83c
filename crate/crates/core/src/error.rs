use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {index} is outside the universe of {universe} points")]
    PointOutOfRange { index: usize, universe: usize },

    #[error("point set over {found} points used with a space of {expected} points")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("formula size is only defined on core formulas; found derived operator `{0}`")]
    DerivedOperator(&'static str),

    #[error("unknown proposition letter `{0}`")]
    UnknownLetter(String),

    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),

    #[error("duplicate proposition letter `{0}`")]
    DuplicateLetter(String),

    #[error("invalid image: {0}")]
    Image(String),

    #[error("undefined binding `{0}`")]
    UndefinedBinding(String),

    #[error("paint after save (statement {0})")]
    PaintAfterSave(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn syntax(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rfind('\n')
            .map_or(before.chars().count(), |nl| before[nl + 1..].chars().count())
            + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
