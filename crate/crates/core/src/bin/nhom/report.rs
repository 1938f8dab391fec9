use std::fmt::Write as _;
use std::process::ExitCode;

use serde_json::Value;

use nhom::Error;

/// The result of one command in both output forms.
pub struct Report {
    json: Value,
    text: String,
    failed: bool,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Self { json, text: String::new(), failed: false }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.text, "{}", s.as_ref());
    }

    pub fn fail(&mut self) {
        self.failed = true;
    }

    pub fn failed_if(&mut self, cond: bool) {
        self.failed |= cond;
    }

    pub fn emit(self, json: bool) -> ExitCode {
        if json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("serializable"));
        } else {
            print!("{}", self.text);
        }
        ExitCode::from(if self.failed { 1 } else { 0 })
    }
}

/// Mathematical failures exit with 1, everything else with 2.
pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotNHom { .. } | Error::NoSolution { .. } | Error::NotClosed(_) => 1,
        _ => 2,
    }
}
