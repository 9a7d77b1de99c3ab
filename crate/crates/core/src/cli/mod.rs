//! Batch interpreter for the diagram workflow.
//!
//! A batch script has one command per line, tokens separated by whitespace.
//! Lines starting with `#` are comments; the comment lines at the top of a
//! script form its preamble. First-kind commands read and write
//! diagram-set files relative to the working directory; set generators
//! build a whole family and can also emit the equivalent script.

pub mod generator;
pub mod log;

use std::fs;
use std::path::{Path, PathBuf};

use crate::cremona::{spec_check, HirzebruchQuery, SpecVerdict};
use crate::diagram::{Diagram, DiagramSet, SymbolicDiagram};
use crate::error::{Error, Result};
use crate::field::DEFAULT_PRIME;
use crate::reduction::{red_set, redout_set, reduce, top_reduce};
use crate::setgen::{base_diagram, glue};
use crate::speciality::{
    ch, check_set_report, finalnba, hirzebruch_diagram, ns, ChVerdict, CheckConfig, CheckRecord, NsVerdict,
    PhaseReport, PHASE_TRIES,
};
use crate::tails::{atails, h_tails, ltails, tails_from, TailsRun};

pub use generator::{Generator, EMPTY_SET_FILE};
pub use log::{Channel, Clock, Entry, LogWriter};

pub const DEFAULT_SEED: u64 = 20_240_229;

/// Interpreter settings shared by every command of a run.
#[derive(Clone, Debug)]
pub struct Config {
    pub prime: u64,
    pub seed: u64,
    /// Tries for `ns` and `check` when the command does not give them.
    pub tries: Option<u32>,
    /// Directory that diagram-set file names are relative to.
    pub work_dir: PathBuf,
    pub log_dir: PathBuf,
    pub clock: Clock,
    /// Where set generators write their batch script, if anywhere.
    pub emit_batch: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            prime: DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            tries: None,
            work_dir: PathBuf::from("."),
            log_dir: PathBuf::from("."),
            clock: Clock::Local,
            emit_batch: None,
        }
    }
}

/// A parsed batch line. File names are kept as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Reduce {
        m: u32,
        input: String,
        output: String,
    },
    TopReduce {
        m: u32,
        input: String,
        output: String,
    },
    Red {
        m: u32,
        k: u32,
        input: String,
        output: String,
    },
    RedOut {
        m: u32,
        k: u32,
        input: String,
        target: String,
        output: String,
    },
    HTails {
        m: u32,
        h: u32,
        input: String,
        output: String,
    },
    LTails {
        m: u32,
        h: u32,
        input: String,
        output: String,
    },
    ATails {
        m: u32,
        h: u32,
        n: u32,
        input: String,
        output: String,
    },
    Tails {
        m: u32,
        start: SymbolicDiagram,
        output: String,
    },
    BaseDiag {
        start: u32,
        step: u32,
        count: u32,
        extra: Option<String>,
        output: String,
    },
    GlueDiags {
        left: String,
        mid: String,
        right: String,
        output: String,
    },
    Rev {
        input: String,
        output: String,
    },
    Ns {
        m: u32,
        r: u64,
        diagram: Diagram,
        tries: Option<u32>,
    },
    Check {
        m: u32,
        input: String,
        tries: Option<u32>,
        output: Option<String>,
    },
    Ch {
        m: u32,
        input: String,
        u: u32,
        v: u32,
    },
    FinalNba {
        m: u32,
        n: u32,
        a: u32,
        b: u32,
    },
    Spec(HirzebruchQuery),
    Generate {
        generator: Generator,
        output: String,
    },
}

fn num<T: std::str::FromStr>(token: &str, what: &str) -> std::result::Result<T, String> {
    token
        .parse()
        .map_err(|_| format!("{what} must be a non-negative integer, got {token:?}"))
}

fn is_number(token: &str) -> bool {
    !token.is_empty() && token.bytes().all(|b| b.is_ascii_digit())
}

impl Command {
    /// Parses the tokens of one line, checking the verb's arity.
    pub fn parse(tokens: &[&str]) -> std::result::Result<Command, String> {
        let (&verb, args) = tokens.split_first().ok_or("empty command")?;
        let s = |i: usize| args[i].to_string();
        let arity = |allowed: &[usize]| {
            if allowed.contains(&args.len()) {
                Ok(())
            } else {
                let want: Vec<String> = allowed.iter().map(|n| n.to_string()).collect();
                Err(format!(
                    "{verb} takes {} arguments, got {}",
                    want.join(" or "),
                    args.len()
                ))
            }
        };
        let cmd = match verb {
            "reduce" | "topreduce" => {
                arity(&[3])?;
                let (m, input, output) = (num(args[0], "m")?, s(1), s(2));
                if verb == "reduce" {
                    Command::Reduce { m, input, output }
                } else {
                    Command::TopReduce { m, input, output }
                }
            }
            "red" => {
                arity(&[4])?;
                Command::Red {
                    m: num(args[0], "m")?,
                    k: num(args[1], "k")?,
                    input: s(2),
                    output: s(3),
                }
            }
            "redout" => {
                arity(&[5])?;
                Command::RedOut {
                    m: num(args[0], "m")?,
                    k: num(args[1], "k")?,
                    input: s(2),
                    target: s(3),
                    output: s(4),
                }
            }
            "htails" | "ltails" => {
                arity(&[4])?;
                let (m, h, input, output) = (num(args[0], "m")?, num(args[1], "h")?, s(2), s(3));
                if verb == "htails" {
                    Command::HTails { m, h, input, output }
                } else {
                    Command::LTails { m, h, input, output }
                }
            }
            "atails" => {
                arity(&[5])?;
                Command::ATails {
                    m: num(args[0], "m")?,
                    h: num(args[1], "h")?,
                    n: num(args[2], "n")?,
                    input: s(3),
                    output: s(4),
                }
            }
            "tails" => {
                arity(&[3])?;
                Command::Tails {
                    m: num(args[0], "m")?,
                    start: args[1].parse().map_err(|e: Error| e.to_string())?,
                    output: s(2),
                }
            }
            "basediag" => {
                arity(&[4, 5])?;
                Command::BaseDiag {
                    start: num(args[0], "start")?,
                    step: num(args[1], "step")?,
                    count: num(args[2], "count")?,
                    extra: (args.len() == 5).then(|| s(3)),
                    output: s(args.len() - 1),
                }
            }
            "gluediags" => {
                arity(&[4])?;
                Command::GlueDiags {
                    left: s(0),
                    mid: s(1),
                    right: s(2),
                    output: s(3),
                }
            }
            "rev" => {
                arity(&[2])?;
                Command::Rev {
                    input: s(0),
                    output: s(1),
                }
            }
            "ns" => {
                arity(&[3, 4])?;
                Command::Ns {
                    m: num(args[0], "m")?,
                    r: num(args[1], "r")?,
                    diagram: args[2].parse().map_err(|e: Error| e.to_string())?,
                    tries: args.get(3).map(|t| num(t, "t")).transpose()?,
                }
            }
            "check" => {
                arity(&[2, 3, 4])?;
                let (tries, output) = match &args[2..] {
                    [] => (None, None),
                    [t] if is_number(t) => (Some(num(t, "t")?), None),
                    [out] => (None, Some(out.to_string())),
                    [t, out] => (Some(num(t, "t")?), Some(out.to_string())),
                    _ => unreachable!(),
                };
                Command::Check {
                    m: num(args[0], "m")?,
                    input: s(1),
                    tries,
                    output,
                }
            }
            "ch" => {
                arity(&[4])?;
                Command::Ch {
                    m: num(args[0], "m")?,
                    input: s(1),
                    u: num(args[2], "u")?,
                    v: num(args[3], "v")?,
                }
            }
            "finalnba" => {
                arity(&[4])?;
                Command::FinalNba {
                    m: num(args[0], "m")?,
                    n: num(args[1], "n")?,
                    a: num(args[2], "a")?,
                    b: num(args[3], "b")?,
                }
            }
            "spec" => {
                arity(&[5])?;
                Command::Spec(HirzebruchQuery {
                    m: num(args[0], "m")?,
                    n: num(args[1], "n")?,
                    a: num(args[2], "a")?,
                    b: num(args[3], "b")?,
                    r: num(args[4], "r")?,
                })
            }
            _ => {
                let Some(k) = Generator::arity(verb) else {
                    return Err(format!("unknown command {verb:?}"));
                };
                arity(&[k, k + 1])?;
                let params = args[..k]
                    .iter()
                    .map(|t| num(t, "parameter"))
                    .collect::<std::result::Result<Vec<u32>, _>>()?;
                Command::Generate {
                    generator: Generator::from_params(verb, &params).expect("arity checked"),
                    output: args.get(k).map_or_else(|| "diag".to_string(), |o| o.to_string()),
                }
            }
        };
        Ok(cmd)
    }

    pub fn parse_line(line: &str) -> std::result::Result<Command, String> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        Command::parse(&tokens)
    }
}

/// Splits a script into its preamble (leading comment lines) and the
/// numbered command lines.
pub fn split_script(text: &str) -> (Vec<String>, Vec<(usize, &str)>) {
    let mut preamble = Vec::new();
    let mut commands = Vec::new();
    let mut in_header = true;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if in_header {
                preamble.push(comment.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        in_header = false;
        commands.push((i + 1, line));
    }
    (preamble, commands)
}

fn push_set(entry: &mut Entry, set: &DiagramSet) {
    for d in set {
        entry.line(d.to_string());
    }
}

fn push_tails_footer(entry: &mut Entry, run: &TailsRun) {
    entry.line("tails found:");
    push_set(entry, &run.tails);
    entry.line(format!(
        "{} entries used, {} tails found.",
        run.entries,
        run.tails.len()
    ));
}

fn det(v: NsVerdict) -> &'static str {
    match v {
        NsVerdict::NonSpecial => "det <> 0",
        NsVerdict::NotDecided => "det = 0",
    }
}

fn check_line(rec: &CheckRecord) -> String {
    let mut line = format!("{}  {}", rec.diagram.diag_notation(), det(rec.at_r));
    if let Some(next) = rec.at_r_plus_one {
        line.push(' ');
        line.push_str(det(next));
    }
    line
}

fn push_phase(entry: &mut Entry, p: &PhaseReport) {
    entry.line(format!(
        "{} of {} diagrams reduced {} times to {} diagrams.",
        p.reducible, p.input, p.reductions, p.reduced
    ));
    entry.line(format!(
        "non-special: {}, not decided: {}",
        p.verified,
        p.unverified()
    ));
    entry.line(format!(
        "{} not reducible, {} reducing to not decided ones, {} left.",
        p.not_reducible, p.reducing_to_unverified, p.survivors
    ));
}

/// Executes commands and writes the log channels.
pub struct Session {
    config: Config,
    check: CheckConfig,
    log: LogWriter,
}

impl Session {
    pub fn new(config: Config) -> Result<Self> {
        let check = CheckConfig::new(config.prime, config.seed)?;
        let log = LogWriter::new(&config.log_dir, config.clock)?;
        Ok(Session { config, check, log })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn log(&self) -> &LogWriter {
        &self.log
    }

    fn path(&self, name: &str) -> PathBuf {
        self.config.work_dir.join(name)
    }

    fn read_set(&self, name: &str) -> Result<DiagramSet> {
        let path = self.path(name);
        if name == EMPTY_SET_FILE && !path.exists() {
            return Ok(DiagramSet::with_empty());
        }
        DiagramSet::read(&path)
    }

    fn write_set(&self, name: &str, set: &DiagramSet) -> Result<()> {
        set.write(&self.path(name))
    }

    fn tries(&self, given: Option<u32>) -> u32 {
        given.or(self.config.tries).unwrap_or(PHASE_TRIES)
    }

    /// Runs a script file: preamble first, then each command in order.
    /// Stops at the first failing line, which is logged before returning.
    pub fn run_script(&self, script: &Path) -> Result<()> {
        let text = fs::read_to_string(script).map_err(|e| Error::io(script, e))?;
        let (mut preamble, commands) = split_script(&text);
        if preamble.is_empty() {
            let name = script.file_name().map_or_else(
                || script.display().to_string(),
                |n| n.to_string_lossy().into_owned(),
            );
            preamble.push(format!("batch {name}"));
        }
        self.log.preamble(&preamble)?;
        for (number, line) in commands {
            self.run_line(line).map_err(|e| match e {
                Error::Batch { message, .. } => Error::Batch {
                    line: number,
                    message,
                },
                other => Error::Batch {
                    line: number,
                    message: other.to_string(),
                },
            })?;
        }
        Ok(())
    }

    /// Parses and executes one line, logging either its entry or the error.
    pub fn run_line(&self, line: &str) -> Result<()> {
        let result = Command::parse_line(line)
            .map_err(|message| Error::Batch { line: 0, message })
            .and_then(|cmd| self.execute(&cmd));
        if let Err(e) = &result {
            let mut entry = Entry::new(line.trim());
            entry.line(format!("error: {}", error_text(e)));
            self.log.entry(&entry, false)?;
        }
        result
    }

    pub fn execute(&self, cmd: &Command) -> Result<()> {
        let (entry, finit) = self.execute_entry(cmd)?;
        self.log.entry(&entry, finit)
    }

    fn execute_entry(&self, cmd: &Command) -> Result<(Entry, bool)> {
        let mut e;
        match cmd {
            Command::Reduce { m, input, output } => {
                let set = self.read_set(input)?;
                let out: DiagramSet = set.iter().filter_map(|d| reduce(*m, d).into_option()).collect();
                e = Entry::new(format!("reduce (m-reduction) {m}"));
                e.line(format!("{} diagrams loaded.", set.len()));
                e.line(format!("{} diagrams produced.", out.len()));
                self.write_set(output, &out)?;
            }
            Command::TopReduce { m, input, output } => {
                let set = self.read_set(input)?;
                let out: DiagramSet = set.iter().map(|d| top_reduce(*m, d)).collect();
                e = Entry::new(format!("topreduce (full m-reduction) {m}"));
                e.line(format!("{} diagrams loaded.", set.len()));
                e.line(format!("{} diagrams produced.", out.len()));
                self.write_set(output, &out)?;
            }
            Command::Red { m, k, input, output } => {
                let set = self.read_set(input)?;
                let out = red_set(*m, *k, &set);
                e = Entry::new(format!("red (sequence reduction) {m} {k}"));
                e.line(format!("{} diagrams loaded.", set.len()));
                e.line(format!("{} diagrams produced.", out.len()));
                self.write_set(output, &out)?;
            }
            Command::RedOut {
                m,
                k,
                input,
                target,
                output,
            } => {
                let set = self.read_set(input)?;
                let target_set = self.read_set(target)?;
                let out = redout_set(*m, *k, &set, &target_set);
                e = Entry::new(format!("redout (reductions outside target) {m} {k}"));
                e.line(format!("{} diagrams loaded.", set.len()));
                e.line(format!("{} target diagrams loaded.", target_set.len()));
                e.line(format!("{} diagrams produced.", out.len()));
                self.write_set(output, &out)?;
            }
            Command::HTails { m, h, input, output } => {
                let set = self.read_set(input)?;
                if set.len() != 1 {
                    return Err(Error::UnsupportedParameter(format!(
                        "htails needs exactly one diagram in {input}, found {}",
                        set.len()
                    )));
                }
                let seed = set.iter().next().expect("one diagram");
                let run = h_tails(*m, *h, seed)?;
                e = Entry::new(format!("htails (h-D-admissible tails) {m} {h}"));
                e.line("diagram:");
                e.line(seed.to_string());
                push_tails_footer(&mut e, &run);
                self.write_set(output, &run.tails)?;
            }
            Command::LTails { m, h, input, output }
            | Command::ATails {
                m, h, input, output, ..
            } => {
                let set = self.read_set(input)?;
                let run = match cmd {
                    Command::ATails { n, .. } => {
                        e = Entry::new(format!("atails (prefixed admissible tails) {m} {h} {n}"));
                        atails(*m, *h, *n, &set)?
                    }
                    _ => {
                        e = Entry::new(format!("ltails (all-h-D-admissible tails) {m} {h}"));
                        ltails(*m, *h, &set)?
                    }
                };
                e.line("tails loaded:");
                push_set(&mut e, &set);
                e.line(format!("{} tails loaded.", set.len()));
                push_tails_footer(&mut e, &run);
                self.write_set(output, &run.tails)?;
            }
            Command::Tails { m, start, output } => {
                let run = tails_from(*m, start)?;
                e = Entry::new(format!("tails (admissible tails) {m}"));
                e.line("diagram:");
                e.line(start.to_string());
                push_tails_footer(&mut e, &run);
                self.write_set(output, &run.tails)?;
            }
            Command::BaseDiag {
                start,
                step,
                count,
                extra,
                output,
            } => {
                let d = base_diagram(*start, *step, *count);
                let mut header = format!("basediag {start} {step} {count}");
                if let Some(x) = extra {
                    header.push_str(&format!(" {x}"));
                }
                e = Entry::new(header);
                e.line("base diagram:");
                e.line(d.to_string());
                self.write_set(output, &std::iter::once(d).collect())?;
            }
            Command::GlueDiags {
                left,
                mid,
                right,
                output,
            } => {
                let (l, c, r) = (self.read_set(left)?, self.read_set(mid)?, self.read_set(right)?);
                let mut out = DiagramSet::new();
                for d in &c {
                    out.extend_from(&glue(&l, d, &r, false));
                }
                e = Entry::new("gluediags (glue diagrams)");
                push_produced(&mut e, l.len() * c.len() * r.len(), out.len());
                self.write_set(output, &out)?;
            }
            Command::Rev { input, output } => {
                let set = self.read_set(input)?;
                let out = set.rev();
                e = Entry::new("rev (reverse diagrams)");
                e.line(format!("{} diagrams reversed.", set.len()));
                self.write_set(output, &out)?;
            }
            Command::Ns { m, r, diagram, tries } => {
                let verdict = ns(*m, *r, diagram, self.tries(*tries), &self.check);
                e = Entry::new(format!("ns (non-speciality test) {m} {r}"));
                e.line(format!("{}  {}", diagram.diag_notation(), det(verdict)));
                e.line(match verdict {
                    NsVerdict::NonSpecial => "result: non-special.",
                    NsVerdict::NotDecided => "result: not decided.",
                });
            }
            Command::Check {
                m,
                input,
                tries,
                output,
            } => {
                let set = self.read_set(input)?;
                let report = check_set_report(*m, &set, self.tries(*tries), &self.check);
                e = Entry::new("check");
                e.line(format!("multiplicity: {m}"));
                for rec in &report.records {
                    e.line(check_line(rec));
                }
                let special = report.special_count();
                e.line(if special == 0 {
                    "result: positive."
                } else {
                    "result: not decided."
                });
                e.line(format!("non-special: {}, special: {special}", report.kept.len()));
                if let Some(out) = output {
                    self.write_set(out, &report.kept)?;
                }
            }
            Command::Ch { m, input, u, v } => {
                let set = self.read_set(input)?;
                let report = ch(*m, &set, *u, *v, &self.check);
                e = Entry::new(format!("ch {m} {u} {v}"));
                e.line(format!("multiplicity: {m}"));
                e.line(format!("{} diagrams loaded.", set.len()));
                if let Some(p) = &report.u_phase {
                    push_phase(&mut e, p);
                }
                if let Some(p) = &report.v_phase {
                    e.line(format!("reversing {} diagrams.", p.input));
                    push_phase(&mut e, p);
                }
                e.line(format!(
                    "final check of {} diagrams:",
                    report.final_check.records.len()
                ));
                for rec in &report.final_check.records {
                    e.line(check_line(rec));
                }
                e.line(match report.verdict {
                    ChVerdict::Ok => "result: ok.",
                    ChVerdict::NotDecided => "result: not decided.",
                });
            }
            Command::FinalNba { m, n, a, b } => {
                let d = hirzebruch_diagram(*n, *a, *b)?;
                let special = finalnba(*m, *n, *a, *b, &self.check)?;
                e = Entry::new(format!("finalnba {m} {n} {a} {b}"));
                e.line(format!("diagram: {d}"));
                if special.is_empty() {
                    e.line("special r: none");
                } else {
                    let list: Vec<String> = special.iter().map(u64::to_string).collect();
                    e.line(format!("special r: {}", list.join(", ")));
                }
            }
            Command::Spec(q) => {
                let report = spec_check(*q)?;
                e = Entry::new(format!("spec {} {} {} {} {}", q.m, q.n, q.a, q.b, q.r));
                e.line(format!("expected dimension: {}", report.expected));
                for step in &report.steps {
                    e.line(format!(
                        "t = {}: {} -> {}, edim {}",
                        step.t, step.start, step.end, step.edim
                    ));
                }
                e.line(match report.verdict {
                    SpecVerdict::MinusOneSpecial => "result: -1-special.",
                    SpecVerdict::Error => "result: error.",
                });
                return Ok((e, true));
            }
            Command::Generate { generator, output } => {
                let fam = generator.family()?;
                e = Entry::new(generator.call());
                push_produced(&mut e, fam.pairs, fam.set.len());
                self.write_set(output, &fam.set)?;
                if let Some(path) = &self.config.emit_batch {
                    let mut text = generator.script(output)?.join("\n");
                    text.push('\n');
                    fs::write(path, text).map_err(|err| Error::io(path, err))?;
                    e.line(format!("batch file: {}", path.display()));
                }
            }
        }
        Ok((e, false))
    }
}

fn push_produced(e: &mut Entry, pairs: usize, distinct: usize) {
    e.line(format!("{pairs} diagrams produced."));
    if distinct != pairs {
        e.line(format!("{distinct} distinct diagrams kept."));
    }
}

/// The message of `e` without the line prefix of batch errors.
pub fn error_text(e: &Error) -> String {
    match e {
        Error::Batch { message, .. } => message.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> std::result::Result<Command, String> {
        Command::parse_line(line)
    }

    #[test]
    fn parses_the_setpb_listing() {
        assert_eq!(
            parse("tails 3 8,9,10,x,x rt").unwrap(),
            Command::Tails {
                m: 3,
                start: "8,9,10,x,x".parse().unwrap(),
                output: "rt".into()
            }
        );
        assert_eq!(
            parse("basediag 1 1 7 0 bt").unwrap(),
            Command::BaseDiag {
                start: 1,
                step: 1,
                count: 7,
                extra: Some("0".into()),
                output: "bt".into()
            }
        );
        assert!(matches!(
            parse("gluediags inempty bt rt diag").unwrap(),
            Command::GlueDiags { .. }
        ));
    }

    #[test]
    fn arity_and_unknown_verbs() {
        assert!(parse("reduce 3 in").unwrap_err().contains("takes 3"));
        assert!(parse("frobnicate 1").unwrap_err().contains("unknown"));
        assert!(parse("red x 3 a b").unwrap_err().contains("m must be"));
        assert!(parse("setpb 3").is_err());
        assert_eq!(
            parse("setpb 3 9").unwrap(),
            Command::Generate {
                generator: Generator::Pb { m: 3, b_big: 9 },
                output: "diag".into()
            }
        );
    }

    #[test]
    fn check_optional_arguments() {
        let c = |l| match parse(l).unwrap() {
            Command::Check { tries, output, .. } => (tries, output),
            _ => panic!(),
        };
        assert_eq!(c("check 2 diag"), (None, None));
        assert_eq!(c("check 2 diag 6"), (Some(6), None));
        assert_eq!(c("check 2 diag ok"), (None, Some("ok".into())));
        assert_eq!(c("check 2 diag 16 ok"), (Some(16), Some("ok".into())));
    }

    #[test]
    fn script_preamble_is_the_leading_comment_block() {
        let (pre, cmds) = split_script("# setpb 3 9\n#\n\ntails 3 8,9,10,x,x rt\n# later\nrev a b\n");
        assert_eq!(pre, ["setpb 3 9", ""]);
        assert_eq!(cmds, [(4, "tails 3 8,9,10,x,x rt"), (6, "rev a b")]);
    }
}
