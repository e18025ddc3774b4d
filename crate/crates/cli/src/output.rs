use std::fs;
use std::io::{self, Write};
use std::path::Path;

use qmachine::sharding::GENERATOR_ID;

/// Round-trip formatting for doubles: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows of a CSV table followed by `# key=value` comment lines.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { text: format!("{}\n", header.join(",")) }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn comment(&mut self, line: &str) {
        self.text.push_str("# ");
        self.text.push_str(line);
        self.text.push('\n');
    }

    /// Appends the trailing metadata line and returns the document.
    pub fn finish(mut self, command: &str, seed: u64, extra: &[(&str, String)]) -> String {
        let mut meta = format!(
            "command={command} seed={seed} version={} generator={GENERATOR_ID}",
            env!("CARGO_PKG_VERSION")
        );
        for (k, v) in extra {
            meta.push_str(&format!(" {k}={v}"));
        }
        self.comment(&meta);
        self.text
    }
}

pub fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
