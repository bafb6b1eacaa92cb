//! Plain-text run reports.

use std::fmt::Display;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Inconclusive,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Inconclusive => "inconclusive",
        }
    }
}

/// Lines of output plus whether any verdict ran out of budget.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    pub inconclusive: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            lines: vec![format!("command: {command}")],
            inconclusive: false,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn verdict(&mut self, key: &str, a: Answer, detail: Option<String>) {
        if a == Answer::Inconclusive {
            self.inconclusive = true;
        }
        match detail {
            Some(d) => self.lines.push(format!("{key}: {} ({d})", a.word())),
            None => self.lines.push(format!("{key}: {}", a.word())),
        }
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// One-based, space-separated.
pub fn ids(xs: &[usize]) -> String {
    xs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}
