//! Framed links: linking numbers, rational framings and a table of `a_1`
//! Conway coefficients per sublink, plus the `.lnk` text format.
//!
//! Components are numbered from 1. Matrix rows are numbered from 0, so
//! component `i` lives in row `i - 1`.
//!
//! ```text
//! # (2,4) torus link pattern
//! components 2
//! framing 1 3/1
//! framing 2 -3/1
//! lk 1 2 2
//! a1 1,2 0
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{int, parse_rational, Rational, SymRatMatrix};

/// Most components a link may have; subsets are stored as `u64` masks.
pub const MAX_COMPONENTS: usize = 63;

/// A set of 1-based component indices.
///
/// Ordered by cardinality, then lexicographically on the sorted members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SubsetIndex {
    mask: u64,
}

impl SubsetIndex {
    pub fn empty() -> Self {
        SubsetIndex { mask: 0 }
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_COMPONENTS);
        SubsetIndex {
            mask: (1u64 << n) - 1,
        }
    }

    pub fn from_members(members: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &m in members {
            if m == 0 || m > MAX_COMPONENTS {
                return Err(Error::domain(format!("component index {m} out of range")));
            }
            mask |= 1 << (m - 1);
        }
        Ok(SubsetIndex { mask })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=MAX_COMPONENTS).contains(&i) && self.mask & (1 << (i - 1)) != 0
    }

    pub fn first(&self) -> Option<usize> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() as usize + 1)
    }

    pub fn insert(&self, i: usize) -> Self {
        SubsetIndex {
            mask: self.mask | (1 << (i - 1)),
        }
    }

    pub fn remove(&self, i: usize) -> Self {
        SubsetIndex {
            mask: self.mask & !(1 << (i - 1)),
        }
    }

    pub fn difference(&self, other: &SubsetIndex) -> Self {
        SubsetIndex {
            mask: self.mask & !other.mask,
        }
    }

    pub fn is_subset_of(&self, other: &SubsetIndex) -> bool {
        self.mask & !other.mask == 0
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..64).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
    }

    /// Matrix rows (members minus one), ascending.
    pub fn rows(&self) -> Vec<usize> {
        self.members().map(|m| m - 1).collect()
    }

    /// Every subset of `self`, empty set included, in mask order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetIndex> {
        let full = self.mask;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full {
                None
            } else {
                Some((s.wrapping_sub(full)) & full)
            };
            Some(SubsetIndex { mask: s })
        })
    }

    /// Nonempty subsets of `{1..n}` by increasing cardinality, then lexicographic.
    pub fn nonempty_subsets(n: usize) -> Vec<SubsetIndex> {
        let mut all: Vec<_> = SubsetIndex::full(n)
            .subsets()
            .filter(|s| !s.is_empty())
            .collect();
        all.sort();
        all
    }
}

impl Ord for SubsetIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.members().cmp(other.members()))
    }
}

impl PartialOrd for SubsetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in self.members() {
            if !first {
                f.write_char(',')?;
            }
            first = false;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// An `n`-component framed link in S^3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    n: usize,
    /// Row-major `n x n`; the diagonal is kept at 0 and never read.
    lk: Vec<i64>,
    framings: Vec<Rational>,
    a1: BTreeMap<SubsetIndex, i64>,
}

impl FramedLink {
    /// Unlinked components with the given framings.
    pub fn new(framings: Vec<Rational>) -> Result<Self> {
        let n = framings.len();
        if n == 0 {
            return Err(Error::domain("a link needs at least one component"));
        }
        if n > MAX_COMPONENTS {
            return Err(Error::domain(format!("at most {MAX_COMPONENTS} components")));
        }
        Ok(FramedLink {
            n,
            lk: vec![0; n * n],
            framings,
            a1: BTreeMap::new(),
        })
    }

    pub fn unknot(framing: Rational) -> Self {
        Self::new(vec![framing]).expect("one component")
    }

    /// Linear chain: consecutive components link once, others are unlinked.
    pub fn chain(framings: Vec<Rational>) -> Result<Self> {
        let mut link = Self::new(framings)?;
        for i in 1..link.n {
            link.set_linking(i, i + 1, 1)?;
        }
        Ok(link)
    }

    /// Two components with linking number `lk`.
    pub fn two_component(s1: Rational, s2: Rational, lk: i64) -> Self {
        let mut link = Self::new(vec![s1, s2]).expect("two components");
        link.set_linking(1, 2, lk).expect("valid indices");
        link
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Linking number `n_ij` (1-based, `i != j`).
    pub fn linking(&self, i: usize, j: usize) -> i64 {
        assert!(i != j, "linking number needs distinct components");
        self.lk[(i - 1) * self.n + (j - 1)]
    }

    pub fn set_linking(&mut self, i: usize, j: usize, v: i64) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::domain("lk needs two distinct components"));
        }
        self.lk[(i - 1) * self.n + (j - 1)] = v;
        self.lk[(j - 1) * self.n + (i - 1)] = v;
        Ok(())
    }

    pub fn framing(&self, i: usize) -> &Rational {
        &self.framings[i - 1]
    }

    pub fn framings(&self) -> &[Rational] {
        &self.framings
    }

    pub fn set_framing(&mut self, i: usize, s: Rational) -> Result<()> {
        self.check_index(i)?;
        self.framings[i - 1] = s;
        Ok(())
    }

    /// `a_1(L_I)`, 0 when absent from the table.
    pub fn a1(&self, subset: &SubsetIndex) -> i64 {
        self.a1.get(subset).copied().unwrap_or(0)
    }

    pub fn set_a1(&mut self, subset: SubsetIndex, v: i64) -> Result<()> {
        self.check_subset(&subset)?;
        self.a1.insert(subset, v);
        Ok(())
    }

    pub fn a1_table(&self) -> &BTreeMap<SubsetIndex, i64> {
        &self.a1
    }

    /// Nonempty sublinks with no explicit `a_1` entry (read as 0).
    pub fn defaulted_a1_keys(&self) -> Vec<SubsetIndex> {
        SubsetIndex::nonempty_subsets(self.n)
            .into_iter()
            .filter(|s| !self.a1.contains_key(s))
            .collect()
    }

    /// Product of the framing denominators.
    pub fn denominator_product(&self) -> BigInt {
        self.framings
            .iter()
            .fold(BigInt::one(), |acc, s| acc * s.denom())
    }

    /// `A(L, s)`: framings on the diagonal, linking numbers off it.
    pub fn surgery_matrix(&self) -> SymRatMatrix {
        SymRatMatrix::from_lower(self.n, |i, j| {
            if i == j {
                self.framings[i].clone()
            } else {
                int(self.lk[i * self.n + j])
            }
        })
    }

    /// Restriction to the components in `subset`, renumbered `1..#I` in order.
    pub fn sublink(&self, subset: &SubsetIndex) -> Result<FramedLink> {
        if subset.is_empty() {
            return Err(Error::domain("sublink of the empty index set"));
        }
        self.check_subset(subset)?;
        let members: Vec<usize> = subset.members().collect();
        let mut out = FramedLink::new(members.iter().map(|&m| self.framing(m).clone()).collect())?;
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate().skip(a + 1) {
                out.set_linking(a + 1, b + 1, self.linking(i, j))?;
            }
        }
        for (key, &v) in &self.a1 {
            if key.is_subset_of(subset) {
                let renumbered: Vec<usize> = key
                    .members()
                    .map(|k| members.iter().position(|&m| m == k).unwrap() + 1)
                    .collect();
                out.a1.insert(SubsetIndex::from_members(&renumbered)?, v);
            }
        }
        Ok(out)
    }

    /// Relabels components: old component `i` becomes `perm[i - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<FramedLink> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true))
        {
            return Err(Error::domain("not a permutation of the components"));
        }
        let mut framings = vec![Rational::one(); n];
        for i in 1..=n {
            framings[perm[i - 1] - 1] = self.framing(i).clone();
        }
        let mut out = FramedLink::new(framings)?;
        for i in 1..=n {
            for j in i + 1..=n {
                out.set_linking(perm[i - 1], perm[j - 1], self.linking(i, j))?;
            }
        }
        for (key, &v) in &self.a1 {
            let mapped: Vec<usize> = key.members().map(|m| perm[m - 1]).collect();
            out.a1.insert(SubsetIndex::from_members(&mapped)?, v);
        }
        Ok(out)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::domain(format!(
                "component {i} out of range 1..{}",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    fn check_subset(&self, s: &SubsetIndex) -> Result<()> {
        if s.is_subset_of(&SubsetIndex::full(self.n)) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "subset {{{s}}} not within 1..{}",
                self.n
            )))
        }
    }

    /// Canonical `.lnk` text.
    pub fn to_lnk(&self) -> String {
        let mut out = String::new();
        writeln!(out, "components {}", self.n).unwrap();
        for (i, s) in self.framings.iter().enumerate() {
            writeln!(out, "framing {} {}/{}", i + 1, s.numer(), s.denom()).unwrap();
        }
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                let v = self.linking(i, j);
                if v != 0 {
                    writeln!(out, "lk {i} {j} {v}").unwrap();
                }
            }
        }
        for (key, v) in &self.a1 {
            writeln!(out, "a1 {key} {v}").unwrap();
        }
        out
    }
}

impl fmt::Display for FramedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lnk())
    }
}

/// Strips a `#` comment and splits into tokens.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let body = line.split_once('#').map_or(line, |(b, _)| b);
    body.split_whitespace().collect()
}

/// Incremental `.lnk` reader shared with the path format.
pub(crate) struct LinkBuilder {
    link: Option<FramedLink>,
    framed: Vec<bool>,
    lk_seen: BTreeMap<(usize, usize), i64>,
}

impl LinkBuilder {
    pub(crate) fn new() -> Self {
        LinkBuilder {
            link: None,
            framed: Vec::new(),
            lk_seen: BTreeMap::new(),
        }
    }

    /// Consumes one directive. Returns `false` if the directive is not a link directive.
    pub(crate) fn directive(&mut self, lineno: usize, toks: &[&str]) -> Result<bool> {
        let err = |m: String| Error::parse(lineno, m);
        match toks[0] {
            "components" => {
                if self.link.is_some() {
                    return Err(err("duplicate `components` directive".into()));
                }
                let [_, n] = toks else {
                    return Err(err("expected `components <n>`".into()));
                };
                let n: usize = n
                    .parse()
                    .map_err(|_| err(format!("bad component count `{n}`")))?;
                if n == 0 || n > MAX_COMPONENTS {
                    return Err(err(format!("component count must be in 1..={MAX_COMPONENTS}")));
                }
                self.link = Some(FramedLink::new(vec![Rational::one(); n]).unwrap());
                self.framed = vec![false; n];
                Ok(true)
            }
            "framing" | "lk" | "a1" => {
                let Some(link) = self.link.as_mut() else {
                    return Err(err("`components` must come first".into()));
                };
                let n = link.n;
                let index = |s: &str| -> Result<usize> {
                    let i: usize = s
                        .parse()
                        .map_err(|_| err(format!("bad component index `{s}`")))?;
                    if i == 0 || i > n {
                        return Err(err(format!("component index {i} out of range 1..{n}")));
                    }
                    Ok(i)
                };
                let integer = |s: &str| -> Result<i64> {
                    s.parse().map_err(|_| err(format!("bad integer `{s}`")))
                };
                match toks {
                    ["framing", i, s] => {
                        let i = index(i)?;
                        if let Some((_, q)) = s.split_once('/') {
                            let q: BigInt =
                                q.parse().map_err(|_| err(format!("bad framing `{s}`")))?;
                            if !q.is_positive() {
                                return Err(err(format!(
                                    "framing denominator must be positive in `{s}`"
                                )));
                            }
                        }
                        let s = parse_rational(s).ok_or_else(|| err(format!("bad framing `{s}`")))?;
                        if std::mem::replace(&mut self.framed[i - 1], true) {
                            return Err(err(format!("duplicate framing for component {i}")));
                        }
                        link.framings[i - 1] = s;
                    }
                    ["lk", i, j, v] => {
                        let (i, j, v) = (index(i)?, index(j)?, integer(v)?);
                        if i == j {
                            return Err(err("lk needs two distinct components".into()));
                        }
                        let key = (i.min(j), i.max(j));
                        if let Some(&old) = self.lk_seen.get(&key) {
                            if old != v {
                                return Err(err(format!(
                                    "conflicting lk {} {}: {old} vs {v}",
                                    key.0, key.1
                                )));
                            }
                        }
                        self.lk_seen.insert(key, v);
                        link.set_linking(i, j, v).unwrap();
                    }
                    ["a1", set, v] => {
                        let mut members = Vec::new();
                        for part in set.split(',') {
                            let m = index(part)
                                .map_err(|_| err(format!("malformed subset `{set}`")))?;
                            if members.last().is_some_and(|&last| last >= m) {
                                return Err(err(format!(
                                    "subset `{set}` must be strictly increasing"
                                )));
                            }
                            members.push(m);
                        }
                        let key = SubsetIndex::from_members(&members).unwrap();
                        let v = integer(v)?;
                        if let Some(&old) = link.a1.get(&key) {
                            if old != v {
                                return Err(err(format!("conflicting a1 {set}: {old} vs {v}")));
                            }
                        }
                        link.a1.insert(key, v);
                    }
                    _ => {
                        return Err(err(format!("malformed `{}` directive", toks[0])));
                    }
                }
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    pub(crate) fn finish(self, last_line: usize) -> Result<FramedLink> {
        let link = self
            .link
            .ok_or_else(|| Error::parse(last_line, "missing `components` directive"))?;
        if let Some(i) = self.framed.iter().position(|&f| !f) {
            return Err(Error::parse(
                last_line,
                format!("missing framing for component {}", i + 1),
            ));
        }
        Ok(link)
    }
}

/// Parses the `.lnk` format.
pub fn parse_link(text: &str) -> Result<FramedLink> {
    let mut b = LinkBuilder::new();
    let mut last = 0;
    for (idx, line) in text.lines().enumerate() {
        last = idx + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if !b.directive(idx + 1, &toks)? {
            return Err(Error::parse(idx + 1, format!("unknown directive `{}`", toks[0])));
        }
    }
    b.finish(last.max(1))
}
