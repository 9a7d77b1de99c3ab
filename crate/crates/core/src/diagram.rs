//! Diagrams and diagram sets.
//!
//! A diagram `diag(a_1, ..., a_k)` is a finite list of non-negative layers;
//! layer `j` holds `a_j` unit cells, i.e. the monomials `x^(j-1) y^i` for
//! `0 <= i < a_j`. Values are kept canonical: trailing zero layers are
//! stripped, interior zeros are preserved.

use std::cmp::Ordering;
use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::ops::Add;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Diagram {
    layers: Vec<u32>,
}

impl Diagram {
    /// The empty diagram.
    pub fn empty() -> Self {
        Diagram { layers: Vec::new() }
    }

    /// Builds a canonical diagram, stripping trailing zeros.
    pub fn new(mut layers: Vec<u32>) -> Self {
        while layers.last() == Some(&0) {
            layers.pop();
        }
        Diagram { layers }
    }

    /// Canonicalizes signed input, rejecting negative layers.
    pub fn from_signed(layers: &[i64]) -> Result<Self> {
        let layers = layers
            .iter()
            .map(|&a| u32::try_from(a).map_err(|_| Error::InvalidDiagram(format!("layer {a} out of range"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Diagram::new(layers))
    }

    /// `diag([value]^count)`.
    pub fn constant(value: u32, count: usize) -> Self {
        Diagram::new(vec![value; count])
    }

    /// `diag(start, start + step, ..., start + (count - 1) * step)`.
    pub fn arithmetic(start: u32, step: u32, count: usize) -> Self {
        Diagram::new((0..count as u32).map(|i| start + i * step).collect())
    }

    /// `diag([from]^n, [from + 1]^n, ..., [to]^n)`; empty when `to < from`.
    pub fn blocks(from: u32, to: u32, n: usize) -> Self {
        let mut layers = Vec::new();
        for v in from..=to {
            layers.extend(std::iter::repeat_n(v, n));
        }
        Diagram::new(layers)
    }

    pub fn layers(&self) -> &[u32] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<u32> {
        self.layers
    }

    /// Number of layers in canonical form, interior zeros included.
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Number of cells, `#D`.
    pub fn size(&self) -> u64 {
        self.layers.iter().map(|&a| a as u64).sum()
    }

    /// Number of strictly positive layers.
    pub fn leng(&self) -> usize {
        self.layers.iter().filter(|&&a| a > 0).count()
    }

    /// The first `r` layers, or the whole diagram when `r >= len`.
    pub fn cut(&self, r: usize) -> Diagram {
        Diagram::new(self.layers[..r.min(self.len())].to_vec())
    }

    /// The last `l` layers, or the whole diagram when `l >= len`.
    pub fn cutr(&self, l: usize) -> Diagram {
        let k = self.len();
        Diagram::new(self.layers[k - l.min(k)..].to_vec())
    }

    pub fn rev(&self) -> Diagram {
        Diagram::new(self.layers.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Diagram) -> Diagram {
        let mut layers = Vec::with_capacity(self.len() + other.len());
        layers.extend_from_slice(&self.layers);
        layers.extend_from_slice(&other.layers);
        Diagram::new(layers)
    }

    /// Renders as `diag(5,4,1)`, the form used in check logs.
    pub fn diag_notation(&self) -> String {
        format!("diag({self})")
    }
}

impl Add for &Diagram {
    type Output = Diagram;

    fn add(self, rhs: &Diagram) -> Diagram {
        self.concat(rhs)
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.layers.cmp(&other.layers))
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_layers(f, &self.layers, 0)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diag({self})")
    }
}

impl From<Vec<u32>> for Diagram {
    fn from(layers: Vec<u32>) -> Self {
        Diagram::new(layers)
    }
}

impl<const N: usize> From<[u32; N]> for Diagram {
    fn from(layers: [u32; N]) -> Self {
        Diagram::new(layers.to_vec())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbolic: SymbolicDiagram = s.parse()?;
        symbolic.into_diagram().ok_or_else(|| Error::Parse {
            text: s.to_string(),
            reason: "symbolic layers are not allowed here".into(),
        })
    }
}

fn write_layers(f: &mut fmt::Formatter<'_>, layers: &[u32], xcount: u32) -> fmt::Result {
    let mut first = true;
    for a in layers {
        if !first {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
        first = false;
    }
    for _ in 0..xcount {
        if !first {
            f.write_str(",")?;
        }
        f.write_str("x")?;
        first = false;
    }
    Ok(())
}

/// A concrete prefix followed by `xcount` unknown layers.
///
/// With `xcount > 0` the prefix is stored verbatim (a zero right before the
/// unknowns is meaningful); with `xcount == 0` it is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolicDiagram {
    prefix: Vec<u32>,
    xcount: u32,
}

impl SymbolicDiagram {
    pub fn new(prefix: Vec<u32>, xcount: u32) -> Self {
        if xcount == 0 {
            return Diagram::new(prefix).into();
        }
        SymbolicDiagram { prefix, xcount }
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn xcount(&self) -> u32 {
        self.xcount
    }

    /// Size of the concrete part; unknown layers contribute nothing.
    pub fn size(&self) -> u64 {
        self.prefix.iter().map(|&a| a as u64).sum()
    }

    /// Positive prefix layers plus one per unknown layer.
    pub fn leng(&self) -> usize {
        self.prefix.iter().filter(|&&a| a > 0).count() + self.xcount as usize
    }

    pub fn is_concrete(&self) -> bool {
        self.xcount == 0
    }

    pub fn into_diagram(self) -> Option<Diagram> {
        self.is_concrete().then(|| Diagram::new(self.prefix))
    }
}

impl From<Diagram> for SymbolicDiagram {
    fn from(d: Diagram) -> Self {
        SymbolicDiagram {
            prefix: d.layers,
            xcount: 0,
        }
    }
}

impl fmt::Display for SymbolicDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_layers(f, &self.prefix, self.xcount)
    }
}

impl fmt::Debug for SymbolicDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diag({self})")
    }
}

impl FromStr for SymbolicDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text.is_empty() {
            return Ok(Diagram::empty().into());
        }
        let err = |reason: String| Error::Parse {
            text: s.to_string(),
            reason,
        };
        let mut prefix = Vec::new();
        let mut xcount = 0u32;
        for token in text.split(',').map(str::trim) {
            if token == "x" {
                xcount += 1;
            } else if xcount > 0 {
                return Err(err(format!("layer {token:?} after an x")));
            } else {
                let value = token
                    .parse::<u32>()
                    .map_err(|e| err(format!("bad layer {token:?}: {e}")))?;
                prefix.push(value);
            }
        }
        Ok(SymbolicDiagram::new(prefix, xcount))
    }
}

/// A finite set of diagrams iterated in length-then-lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DiagramSet {
    items: BTreeSet<Diagram>,
}

impl DiagramSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{∅}`.
    pub fn with_empty() -> Self {
        std::iter::once(Diagram::empty()).collect()
    }

    pub fn insert(&mut self, d: Diagram) -> bool {
        self.items.insert(d)
    }

    pub fn remove(&mut self, d: &Diagram) -> bool {
        self.items.remove(d)
    }

    pub fn contains(&self, d: &Diagram) -> bool {
        self.items.contains(d)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Diagram> {
        self.items.iter()
    }

    pub fn extend_from(&mut self, other: &DiagramSet) {
        self.items.extend(other.iter().cloned());
    }

    pub fn rev(&self) -> DiagramSet {
        self.iter().map(Diagram::rev).collect()
    }

    pub fn to_vec(&self) -> Vec<Diagram> {
        self.items.iter().cloned().collect()
    }

    /// One diagram per line, each line newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in self {
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses a set file; every line, blank ones included, is a diagram.
    pub fn from_text(text: &str) -> Result<Self> {
        text.lines().map(str::parse).collect()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

impl FromIterator<Diagram> for DiagramSet {
    fn from_iter<I: IntoIterator<Item = Diagram>>(iter: I) -> Self {
        DiagramSet {
            items: iter.into_iter().collect(),
        }
    }
}

impl Extend<Diagram> for DiagramSet {
    fn extend<I: IntoIterator<Item = Diagram>>(&mut self, iter: I) {
        self.items.extend(iter)
    }
}

impl IntoIterator for DiagramSet {
    type Item = Diagram;
    type IntoIter = btree_set::IntoIter<Diagram>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

impl<'a> IntoIterator for &'a DiagramSet {
    type Item = &'a Diagram;
    type IntoIter = btree_set::Iter<'a, Diagram>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

impl fmt::Debug for DiagramSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(layers: &[u32]) -> Diagram {
        Diagram::new(layers.to_vec())
    }

    #[test]
    fn canonical_form_strips_trailing_zeros_only() {
        assert_eq!(d(&[5, 4, 1, 0]), d(&[5, 4, 1]));
        assert_eq!(d(&[5, 4, 1, 0]).layers(), &[5, 4, 1]);
        assert!(d(&[]).is_empty());
        assert_eq!(d(&[3, 0, 1]).layers(), &[3, 0, 1]);
        assert_eq!(d(&[0, 0]), Diagram::empty());
    }

    #[test]
    fn negative_layers_are_rejected() {
        assert!(Diagram::from_signed(&[3, -1]).is_err());
        assert_eq!(Diagram::from_signed(&[3, 0]).unwrap(), d(&[3]));
    }

    #[test]
    fn size_and_leng() {
        assert_eq!(d(&[3, 2, 1]).size(), 6);
        assert_eq!(Diagram::empty().size(), 0);
        assert_eq!(d(&[3, 0, 1]).leng(), 2);
        assert_eq!(Diagram::empty().leng(), 0);
        let s: SymbolicDiagram = "5,5,x".parse().unwrap();
        assert_eq!(s.size(), 10);
        let s: SymbolicDiagram = "5,4,x".parse().unwrap();
        assert_eq!(s.leng(), 3);
    }

    #[test]
    fn cut_and_cutr() {
        let g = d(&[4, 4, 5, 5, 6, 6, 7]);
        assert_eq!(g.cut(4), d(&[4, 4, 5, 5]));
        assert_eq!(d(&[3, 2]).cut(5), d(&[3, 2]));
        assert_eq!(d(&[7, 5, 3, 0, 0]).cut(3), d(&[7, 5, 3]));
        assert_eq!(g.cutr(3), d(&[6, 6, 7]));
        assert_eq!(d(&[3]).cutr(7), d(&[3]));
        assert_eq!(d(&[1, 2, 3]).cutr(0), Diagram::empty());
    }

    #[test]
    fn rev_and_concat() {
        assert_eq!(d(&[8, 6, 3, 1]).rev(), d(&[1, 3, 6, 8]));
        assert_eq!(Diagram::empty().rev(), Diagram::empty());
        assert_eq!(&d(&[4]) + &d(&[4, 4]), d(&[4, 4, 4]));
        assert_eq!(&Diagram::empty() + &d(&[3]), d(&[3]));
        let long = &(&d(&[1, 3, 6, 8]) + &Diagram::constant(8, 11)) + &d(&[7, 6, 5, 4]);
        assert_eq!(long.len(), 19);
        assert_eq!(long.layers()[4..15], [8; 11]);
    }

    #[test]
    fn constructors() {
        assert_eq!(Diagram::arithmetic(1, 1, 7), d(&[1, 2, 3, 4, 5, 6, 7]));
        assert_eq!(Diagram::arithmetic(4, 0, 2), d(&[4, 4]));
        assert_eq!(Diagram::arithmetic(5, 2, 0), Diagram::empty());
        assert_eq!(Diagram::blocks(4, 6, 2), d(&[4, 4, 5, 5, 6, 6]));
    }

    #[test]
    fn parsing() {
        let s: SymbolicDiagram = "8,9,10,x,x".parse().unwrap();
        assert_eq!(s.prefix(), &[8, 9, 10]);
        assert_eq!(s.xcount(), 2);
        assert_eq!("".parse::<Diagram>().unwrap(), Diagram::empty());
        assert_eq!("5,5,4,2".parse::<Diagram>().unwrap(), d(&[5, 5, 4, 2]));
        assert!("5,x,3".parse::<SymbolicDiagram>().is_err());
        assert!("5,,3".parse::<Diagram>().is_err());
        assert!("5,-3".parse::<Diagram>().is_err());
        assert!("5,x".parse::<Diagram>().is_err());
    }

    #[test]
    fn set_order_is_length_then_lex() {
        let set: DiagramSet = [d(&[5, 5]), d(&[3]), Diagram::empty(), d(&[4, 2]), d(&[9])]
            .into_iter()
            .collect();
        let order: Vec<_> = set.iter().map(|x| x.to_string()).collect();
        assert_eq!(order, ["", "3", "9", "4,2", "5,5"]);
    }

    #[test]
    fn set_files_keep_blank_lines_as_empty_diagram() {
        let set = DiagramSet::from_text("\n3\n4,4\n").unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&Diagram::empty()));
        assert_eq!(set.to_text(), "\n3\n4,4\n");
        assert!(DiagramSet::from_text("").unwrap().is_empty());
    }

    fn diagram() -> impl Strategy<Value = Diagram> {
        prop::collection::vec(0u32..12, 0..10).prop_map(Diagram::new)
    }

    proptest! {
        #[test]
        fn rev_is_an_involution(a in diagram()) {
            // leading zeros become trailing ones and are stripped
            prop_assume!(a.layers().first() != Some(&0));
            prop_assert_eq!(a.rev().rev(), a);
        }

        #[test]
        fn concat_adds_sizes(a in diagram(), b in diagram()) {
            let c = &a + &b;
            prop_assert_eq!(c.size(), a.size() + b.size());
            prop_assert!(c.leng() <= a.leng() + b.leng());
        }

        #[test]
        fn cut_and_cutr_split_size(a in diagram(), r in 0usize..12) {
            let k = a.len();
            prop_assert_eq!(a.cut(k), a.clone());
            prop_assert_eq!(a.cutr(k), a.clone());
            let r = r.min(k);
            prop_assert_eq!(a.cut(r).size() + a.cutr(k - r).size(), a.size());
        }

        #[test]
        fn text_round_trip(prefix in prop::collection::vec(0u32..40, 0..8), x in 0u32..4) {
            let s = SymbolicDiagram::new(prefix, x);
            let text = s.to_string();
            let back: SymbolicDiagram = text.parse().unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, s);
        }
    }
}
