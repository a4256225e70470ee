use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NOT_ADMISSIBLE: u8 = 2;

/// An error on its way to stderr or, with `--json`, to stdout.
#[derive(Debug)]
pub struct Failure {
    pub code: String,
    pub message: String,
    pub context: Map<String, Value>,
    pub exit: u8,
}

#[derive(Serialize)]
struct Body<'a> {
    code: &'a str,
    message: &'a str,
    context: &'a Map<String, Value>,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Failure {
        Failure {
            code: "validation".into(),
            message: message.into(),
            context: Map::new(),
            exit: EXIT_ERROR,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Failure {
        Failure {
            code: "io".into(),
            message: format!("{}: {err}", path.display()),
            context: Map::new(),
            exit: EXIT_ERROR,
        }
        .with("path", path.display().to_string())
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Failure {
        self.context.insert(key.into(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": Body { code: &self.code, message: &self.message, context: &self.context } })
    }
}

impl From<isokit::Error> for Failure {
    fn from(e: isokit::Error) -> Failure {
        let mut trail = Vec::new();
        let mut cur = &e;
        while let isokit::Error::Context { context, source } = cur {
            trail.push(Value::from(context.clone()));
            cur = source;
        }
        let root = e.root();
        let mut f = Failure {
            code: root.code().into(),
            message: root.to_string(),
            context: Map::new(),
            exit: if e.is_non_admissible() {
                EXIT_NOT_ADMISSIBLE
            } else {
                EXIT_ERROR
            },
        };
        if !trail.is_empty() {
            f = f.with("trail", trail);
        }
        f
    }
}
