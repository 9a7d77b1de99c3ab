//! The four log channels.
//!
//! `log` gets everything, `shortlog` the preambles and command headers,
//! `infolog` the preambles only and `finitlog` the `spec` entries. All
//! channels are appended to, so a log directory accumulates runs.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

const PREAMBLE_RULE: &str = "XXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXXX";
const ENTRY_RULE: &str = "*************************************";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Log,
    ShortLog,
    InfoLog,
    FinitLog,
}

impl Channel {
    pub const ALL: [Channel; 4] = [
        Channel::Log,
        Channel::ShortLog,
        Channel::InfoLog,
        Channel::FinitLog,
    ];

    pub fn file_name(self) -> &'static str {
        match self {
            Channel::Log => "log",
            Channel::ShortLog => "shortlog",
            Channel::InfoLog => "infolog",
            Channel::FinitLog => "finitlog",
        }
    }
}

/// Source of the `day:hour:minute:second` stamps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clock {
    Local,
    /// Always `00:00:00:00`, for reproducible logs.
    Fixed,
}

impl Clock {
    pub fn stamp(self) -> String {
        match self {
            Clock::Local => chrono::Local::now().format("%d:%H:%M:%S").to_string(),
            Clock::Fixed => "00:00:00:00".to_string(),
        }
    }
}

/// One command's worth of log output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Entry {
    pub header: String,
    pub body: Vec<String>,
}

impl Entry {
    pub fn new(header: impl Into<String>) -> Self {
        Entry {
            header: header.into(),
            body: Vec::new(),
        }
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.body.push(line.into());
    }
}

pub struct LogWriter {
    dir: PathBuf,
    clock: Clock,
}

impl LogWriter {
    pub fn new(dir: impl Into<PathBuf>, clock: Clock) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(LogWriter { dir, clock })
    }

    pub fn path(&self, channel: Channel) -> PathBuf {
        self.dir.join(channel.file_name())
    }

    fn append(&self, channel: Channel, text: &str) -> Result<()> {
        let path = self.path(channel);
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        file.write_all(text.as_bytes()).map_err(|e| Error::io(&path, e))
    }

    /// Writes a preamble block to `log`, `shortlog` and `infolog`.
    pub fn preamble(&self, lines: &[String]) -> Result<()> {
        let mut text = format!("\n{PREAMBLE_RULE}\n\n");
        for line in lines {
            text.push_str(line);
            text.push('\n');
        }
        text.push_str(&format!("\n{PREAMBLE_RULE}\n"));
        for channel in [Channel::Log, Channel::ShortLog, Channel::InfoLog] {
            self.append(channel, &text)?;
        }
        Ok(())
    }

    /// Writes a command entry; `spec` entries also go to `finitlog`.
    pub fn entry(&self, entry: &Entry, finit: bool) -> Result<()> {
        let mut full = format!("\n{}\n", entry.header);
        for line in &entry.body {
            full.push_str(line);
            full.push('\n');
        }
        full.push_str(&format!(" job finished: {}\n{ENTRY_RULE}\n", self.clock.stamp()));
        self.append(Channel::Log, &full)?;
        self.append(Channel::ShortLog, &format!("\n{}\n", entry.header))?;
        if finit {
            self.append(Channel::FinitLog, &full)?;
        }
        Ok(())
    }
}

/// True when every line of `small` occurs in `big`, in order.
pub fn is_line_subsequence(small: &str, big: &str) -> bool {
    let mut rest = big.lines();
    small.lines().all(|line| rest.any(|l| l == line))
}

/// Reads a channel, treating a missing file as empty.
pub fn read_channel(dir: &Path, channel: Channel) -> Result<String> {
    let path = dir.join(channel.file_name());
    match fs::read_to_string(&path) {
        Ok(text) => Ok(text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(String::new()),
        Err(e) => Err(Error::io(path, e)),
    }
}
