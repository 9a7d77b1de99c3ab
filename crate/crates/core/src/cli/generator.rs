//! Set generators as batch commands, and the scripts they emit.
//!
//! An emitted script rebuilds the family from first-kind commands only
//! (`htails`, `ltails`, `atails`, `tails`, `basediag`, `rev`, `gluediags`),
//! so running it reproduces the generator's output file byte for byte.

use crate::diagram::{Diagram, SymbolicDiagram};
use crate::error::Result;
use crate::setgen::{self, nb_blocks, nba_prefix, Family};

/// The file name standing for `{∅}` when no such file exists.
pub const EMPTY_SET_FILE: &str = "inempty";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Bign { m: u32, n_big: u32 },
    Bign23 { m: u32, n_big: u32 },
    Bignb { m: u32, n_big: u32, b: u32 },
    Nb { m: u32, n: u32, b_big: u32 },
    Nba { m: u32, n: u32, b: u32, a_big: u32 },
    Pb { m: u32, b_big: u32 },
    Pba { m: u32, b: u32, a_big: u32 },
}

impl Generator {
    /// Number of numeric parameters taken by the verb, if it is a generator.
    pub fn arity(verb: &str) -> Option<usize> {
        Some(match verb {
            "setbign" | "setbign23" | "setpb" => 2,
            "setbignb" | "setnb" | "setpba" => 3,
            "setnba" => 4,
            _ => return None,
        })
    }

    pub fn from_params(verb: &str, p: &[u32]) -> Option<Self> {
        Some(match (verb, p) {
            ("setbign", &[m, n_big]) => Generator::Bign { m, n_big },
            ("setbign23", &[m, n_big]) => Generator::Bign23 { m, n_big },
            ("setbignb", &[m, n_big, b]) => Generator::Bignb { m, n_big, b },
            ("setnb", &[m, n, b_big]) => Generator::Nb { m, n, b_big },
            ("setnba", &[m, n, b, a_big]) => Generator::Nba { m, n, b, a_big },
            ("setpb", &[m, b_big]) => Generator::Pb { m, b_big },
            ("setpba", &[m, b, a_big]) => Generator::Pba { m, b, a_big },
            _ => return None,
        })
    }

    pub fn verb(&self) -> &'static str {
        match self {
            Generator::Bign { .. } => "setbign",
            Generator::Bign23 { .. } => "setbign23",
            Generator::Bignb { .. } => "setbignb",
            Generator::Nb { .. } => "setnb",
            Generator::Nba { .. } => "setnba",
            Generator::Pb { .. } => "setpb",
            Generator::Pba { .. } => "setpba",
        }
    }

    pub fn params(&self) -> Vec<u32> {
        match *self {
            Generator::Bign { m, n_big } | Generator::Bign23 { m, n_big } => vec![m, n_big],
            Generator::Bignb { m, n_big, b } => vec![m, n_big, b],
            Generator::Nb { m, n, b_big } => vec![m, n, b_big],
            Generator::Nba { m, n, b, a_big } => vec![m, n, b, a_big],
            Generator::Pb { m, b_big } => vec![m, b_big],
            Generator::Pba { m, b, a_big } => vec![m, b, a_big],
        }
    }

    /// `setpb 3 9` and the like.
    pub fn call(&self) -> String {
        let mut s = self.verb().to_string();
        for p in self.params() {
            s.push_str(&format!(" {p}"));
        }
        s
    }

    pub fn family(&self) -> Result<Family> {
        match *self {
            Generator::Bign { m, n_big } => setgen::set_bign(m, n_big),
            Generator::Bign23 { m, n_big } => setgen::set_bign23(m, n_big),
            Generator::Bignb { m, n_big, b } => setgen::set_bignb(m, n_big, b),
            Generator::Nb { m, n, b_big } => setgen::set_nb(m, n, b_big),
            Generator::Nba { m, n, b, a_big } => setgen::set_nba(m, n, b, a_big),
            Generator::Pb { m, b_big } => setgen::set_pb(m, b_big),
            Generator::Pba { m, b, a_big } => setgen::set_pba(m, b, a_big),
        }
    }

    /// A batch script producing the family in `output`. Parameters are
    /// validated by building the family first.
    pub fn script(&self, output: &str) -> Result<Vec<String>> {
        let fam = self.family()?;
        let mut s = Script::default();
        s.comment(self.call());
        match *self {
            Generator::Bign { m, n_big } => {
                let left = s.left_tails(m, n_big, 2 * m - 3, 2 * m - 2);
                s.tails(m, &Diagram::constant(2 * m - 1, m as usize), "rt");
                s.mid(&fam.mid, "bt");
                s.push(format!("gluediags {left} bt rt {output}"));
            }
            Generator::Bign23 { m, .. } => {
                s.push(format!("htails {m} {} {EMPTY_SET_FILE} lt0", m + 1));
                s.push(format!("ltails {m} {} lt0 lt", m + 2));
                s.push("rev lt rlt".to_string());
                s.tails(m, &Diagram::constant(m + 3, m as usize), "rt");
                s.mid(&fam.mid, "bt");
                s.push(format!("gluediags rlt bt rt {output}"));
            }
            Generator::Bignb { m, n_big, b } => {
                let left = s.left_tails(m, n_big, b - 1, b);
                s.push(format!("htails {m} {} {EMPTY_SET_FILE} rt", b + 1));
                s.mid(&fam.mid, "bt");
                s.push(format!("gluediags {left} bt rt {output}"));
            }
            Generator::Nb { m, n, b_big } => {
                let (_, h, k) = nb_blocks(m, n, b_big);
                s.tails(m, &h, "rt");
                s.mid(&k, "bt");
                s.push(format!("gluediags {EMPTY_SET_FILE} bt rt {output}"));
            }
            Generator::Nba { m, n, b, a_big } => {
                s.push(format!("htails {m} {} {EMPTY_SET_FILE} rt", b + 1));
                s.mid(&nba_prefix(m, n, b, a_big), "bt");
                s.push(format!("gluediags {EMPTY_SET_FILE} bt rt {output}"));
            }
            Generator::Pb { m, b_big } => {
                s.tails(m, &Diagram::arithmetic(b_big + 2 - m, 1, m as usize), "rt");
                s.mid(&fam.mid, "bt");
                s.push(format!("gluediags {EMPTY_SET_FILE} bt rt {output}"));
            }
            Generator::Pba { m, b, .. } => {
                s.push(format!("htails {m} {} {EMPTY_SET_FILE} rt", b + 1));
                s.mid(&fam.mid, "bt");
                s.push(format!("gluediags {EMPTY_SET_FILE} bt rt {output}"));
            }
        }
        Ok(s.lines)
    }
}

#[derive(Default)]
struct Script {
    lines: Vec<String>,
}

impl Script {
    fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    fn comment(&mut self, text: String) {
        self.lines.push(format!("# {text}"));
    }

    fn tails(&mut self, m: u32, start: &Diagram, out: &str) {
        let sym = SymbolicDiagram::new(start.layers().to_vec(), m - 1);
        self.push(format!("tails {m} {sym} {out}"));
    }

    /// The left-set pipeline of the `bign` families, ending in the reversed
    /// set; returns its file name.
    fn left_tails(&mut self, m: u32, n_big: u32, last_j: u32, top: u32) -> &'static str {
        self.push(format!("htails {m} {} {EMPTY_SET_FILE} lt", m + 1));
        for j in m + 2..=last_j {
            self.push(format!("atails {m} {j} {n_big} lt at"));
            self.push(format!("ltails {m} {j} at lt"));
        }
        self.push(format!("ltails {m} {top} lt lt"));
        self.push("rev lt rlt".to_string());
        "rlt"
    }

    /// Writes `d` to `out` as one `basediag` per arithmetic run, glued
    /// left to right.
    fn mid(&mut self, d: &Diagram, out: &str) {
        let runs = arithmetic_runs(d.layers());
        if runs.len() == 1 {
            let (start, step, count) = runs[0];
            self.push(format!("basediag {start} {step} {count} 0 {out}"));
            return;
        }
        for (i, &(start, step, count)) in runs.iter().enumerate() {
            self.push(format!("basediag {start} {step} {count} 0 {out}{}", i + 1));
        }
        let mut acc = format!("{out}1");
        for i in 2..=runs.len() {
            let next = if i == runs.len() {
                out.to_string()
            } else {
                format!("{out}1_{i}")
            };
            self.push(format!("gluediags {EMPTY_SET_FILE} {acc} {out}{i} {next}"));
            acc = next;
        }
    }
}

/// Splits `layers` greedily into maximal runs `(start, step, count)` with a
/// non-negative common difference.
fn arithmetic_runs(layers: &[u32]) -> Vec<(u32, u32, usize)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < layers.len() {
        let start = layers[i];
        let mut count = 1;
        let mut step = 0;
        if i + 1 < layers.len() && layers[i + 1] >= start {
            step = layers[i + 1] - start;
            count = 2;
            while i + count < layers.len() && layers[i + count] == start + count as u32 * step {
                count += 1;
            }
        }
        runs.push((start, step, count));
        i += count;
    }
    runs
}
