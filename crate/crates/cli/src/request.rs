//! Request files: `key = expr` lines, an optional `with name: poly`
//! declaration, and `[command]` section headers in batch files.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    RationalIntegrate,
    HyperexpDecompose,
    Liouville,
    Cohomology,
    Linearize,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::RationalIntegrate => "rational-integrate",
            Command::HyperexpDecompose => "hyperexp-decompose",
            Command::Liouville => "liouville",
            Command::Cohomology => "cohomology",
            Command::Linearize => "linearize",
        }
    }

    /// Accepted input keys; the first group is required.
    pub fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Command::RationalIntegrate => (&["omega"], &[]),
            Command::HyperexpDecompose => (&["eta"], &[]),
            Command::Liouville => (&["eta", "omega"], &[]),
            Command::Cohomology => (&["eta"], &["s"]),
            Command::Linearize => (&["eta"], &["v", "p", "q"]),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Command as ValueEnum>::from_str(s.trim(), false).map_err(|_| format!("unknown command `{}`", s.trim()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub inputs: Vec<(String, String)>,
    /// `name: minimal polynomial in t`
    pub with: Option<String>,
}

impl Request {
    pub fn new(command: Command) -> Self {
        Request { command, inputs: vec![], with: None }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.inputs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// One line of a request body. Blank lines and `#` comments are ignored.
    pub fn add_line(&mut self, line: &str) -> Result<(), String> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(());
        }
        if let Some(decl) = line.strip_prefix("with ") {
            self.with = Some(decl.trim().to_string());
            return Ok(());
        }
        self.add_assignment(line)
    }

    /// `key = expr` or `key=expr`.
    pub fn add_assignment(&mut self, s: &str) -> Result<(), String> {
        let (k, v) = s.split_once('=').ok_or_else(|| format!("expected `key = expression`, got `{s}`"))?;
        let k = k.trim();
        let (req, opt) = self.command.keys();
        if !req.contains(&k) && !opt.contains(&k) {
            return Err(format!("`{}` does not take input `{k}`", self.command));
        }
        self.inputs.push((k.to_string(), v.trim().to_string()));
        Ok(())
    }

    pub fn add_text(&mut self, text: &str) -> Result<(), String> {
        text.lines().enumerate().try_for_each(|(i, l)| self.add_line(l).map_err(|e| format!("line {}: {e}", i + 1)))
    }

    pub fn check_complete(&self) -> Result<(), String> {
        let (req, _) = self.command.keys();
        match req.iter().find(|k| self.get(k).is_none()) {
            Some(k) => Err(format!("`{}` needs input `{k}`", self.command)),
            None => Ok(()),
        }
    }
}

/// Splits a batch file into requests at `[command]` headers.
pub fn parse_batch(text: &str) -> Result<Vec<Request>, String> {
    let mut out: Vec<Request> = vec![];
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            out.push(Request::new(name.parse().map_err(|e| format!("line {}: {e}", i + 1))?));
            continue;
        }
        match out.last_mut() {
            Some(r) => r.add_line(t).map_err(|e| format!("line {}: {e}", i + 1))?,
            None if t.is_empty() || t.starts_with('#') => {}
            None => return Err(format!("line {}: input before the first `[command]` header", i + 1)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_sections() {
        let text = "# two requests\n[rational-integrate]\nomega = form(1/x1)\n\n[cohomology]\nwith a: t^2-2\neta = form(x1)\ns = x1\n";
        let reqs = parse_batch(text).unwrap();
        assert_eq!(reqs.len(), 2);
        assert_eq!(reqs[0].get("omega"), Some("form(1/x1)"));
        assert_eq!(reqs[1].command, Command::Cohomology);
        assert_eq!(reqs[1].with.as_deref(), Some("a: t^2-2"));
    }

    #[test]
    fn rejects_unknown_keys_and_headers() {
        assert!(parse_batch("[liouville]\nfoo = 1").is_err());
        assert!(parse_batch("[integrate]").is_err());
        assert!(parse_batch("eta = form(1)").is_err());
        let mut r = Request::new(Command::Liouville);
        r.add_text("eta = form(1)").unwrap();
        assert!(r.check_complete().is_err());
    }
}
