//! Self-crossing changes and their effect on `lambda`, `lambda_w` and `a_1`.
//!
//! A crossing change in component `c` passes through a singular link whose
//! double point splits `c` into two lobes. The data recorded is the linking
//! number `l` between the smoothed lobes and the linking numbers `k^a_{cj}`
//! of lobe `a` with every other component `j`. Lobe `b` is derived:
//! `k^b_{cj} = n_{cj} - k^a_{cj}`.
//!
//! Every delta is oriented as (negative resolution) minus (positive
//! resolution).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lescop::h1_order;
use crate::link::{tokens, FramedLink, LinkBuilder};
use crate::linalg::{det_exact, int, matrix_sign, RatMatrix, Rational};

/// Lobe data of one self-crossing change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingStep {
    /// 1-based component carrying the crossing.
    pub component: usize,
    /// Linking number of the two smoothed lobes.
    pub l: i64,
    /// `k^a_{cj}` keyed by `j`; absent entries are 0.
    pub ka: BTreeMap<usize, i64>,
}

impl CrossingStep {
    pub fn new(component: usize, l: i64) -> Self {
        CrossingStep {
            component,
            l,
            ka: BTreeMap::new(),
        }
    }

    pub fn with_ka(mut self, j: usize, v: i64) -> Self {
        self.ka.insert(j, v);
        self
    }

    pub fn ka(&self, j: usize) -> i64 {
        self.ka.get(&j).copied().unwrap_or(0)
    }

    pub fn kb(&self, link: &FramedLink, j: usize) -> i64 {
        link.linking(self.component, j) - self.ka(j)
    }

    /// The same crossing with the lobe labels exchanged.
    pub fn swapped(&self, link: &FramedLink) -> CrossingStep {
        let c = self.component;
        CrossingStep {
            component: c,
            l: self.l,
            ka: (1..=link.n())
                .filter(|&j| j != c)
                .map(|j| (j, self.kb(link, j)))
                .collect(),
        }
    }

    fn validate(&self, link: &FramedLink) -> Result<()> {
        let n = link.n();
        if self.component == 0 || self.component > n {
            return Err(Error::domain(format!(
                "crossing component {} out of range 1..{n}",
                self.component
            )));
        }
        if let Some(&j) = self
            .ka
            .keys()
            .find(|&&j| j == 0 || j > n || j == self.component)
        {
            return Err(Error::domain(format!(
                "lobe linking entry for component {j} is invalid on component {}",
                self.component
            )));
        }
        Ok(())
    }
}

/// A sequence of crossing changes on one link. Self-crossing changes never
/// alter the inter-component linking numbers, so the link data is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyPath {
    pub link: FramedLink,
    pub steps: Vec<CrossingStep>,
}

/// Row/column order putting the crossing component first.
fn order(link: &FramedLink, c: usize) -> Vec<usize> {
    std::iter::once(c)
        .chain((1..=link.n()).filter(|&j| j != c))
        .collect()
}

/// The lobe matrix: `l` in the corner, `k^a` along the first row, `k^b`
/// down the first column, and the surgery matrix of the other components
/// in the lower-right block. Component `c` is moved to the front.
pub fn crossing_matrix(link: &FramedLink, step: &CrossingStep) -> Result<RatMatrix> {
    step.validate(link)?;
    let ord = order(link, step.component);
    Ok(RatMatrix::from_fn(ord.len(), |x, y| {
        match (x, y) {
            (0, 0) => int(step.l),
            (0, _) => int(step.ka(ord[y])),
            (_, 0) => int(step.kb(link, ord[x])),
            _ if x == y => link.framing(ord[x]).clone(),
            _ => int(link.linking(ord[x], ord[y])),
        }
    }))
}

/// `lambda(L^-) - lambda(L^+) = sign(A) prod(q_i) det(crossing matrix)`.
/// Valid whether or not the surgered manifold is a rational homology sphere.
pub fn lambda_delta(link: &FramedLink, step: &CrossingStep) -> Result<Rational> {
    let x = crossing_matrix(link, step)?;
    let sign = matrix_sign(&link.surgery_matrix());
    Ok(x.det() * Rational::from_integer(link.denominator_product()) * int(sign as i64))
}

/// `lambda_w(L^-) - lambda_w(L^+) = 2 det(crossing matrix) / det(A)`.
pub fn cw_delta(link: &FramedLink, step: &CrossingStep) -> Result<Rational> {
    let x = crossing_matrix(link, step)?;
    let d = det_exact(&link.surgery_matrix());
    if d.is_zero() {
        return Err(Error::CassonWalkerUndefined);
    }
    Ok(int(2) * x.det() / d)
}

/// The link with every framing replaced by `-sum_{k != i} n_ik`.
///
/// For this choice every reduced matrix `A((L, s)_{N \ I}; I)` with `I` a
/// proper nonempty subset has zero row sums, so only `I = N` survives in
/// the crossing-change sum.
pub fn row_balanced(link: &FramedLink) -> FramedLink {
    let n = link.n();
    let mut out = link.clone();
    for i in 1..=n {
        let s: i64 = (1..=n).filter(|&k| k != i).map(|k| link.linking(i, k)).sum();
        out.set_framing(i, int(-s)).expect("index in range");
    }
    out
}

/// `a_1(L^-) - a_1(L^+)`: the crossing-matrix determinant under the
/// row-balanced framings. The link's own framings are ignored.
pub fn a1_delta(link: &FramedLink, step: &CrossingStep) -> Result<i64> {
    let balanced = row_balanced(link);
    let d = crossing_matrix(&balanced, step)?.det();
    debug_assert!(d.is_integer());
    d.to_integer()
        .to_i64()
        .ok_or_else(|| Error::domain("a_1 difference overflows i64"))
}

/// Per-step lambda deltas.
pub fn step_deltas(path: &HomotopyPath) -> Result<Vec<Rational>> {
    path.steps
        .iter()
        .map(|s| lambda_delta(&path.link, s))
        .collect()
}

/// Sum of the step deltas: `lambda(start) - lambda(end)` when each step is
/// written with the start link as its negative resolution.
pub fn path_delta(path: &HomotopyPath) -> Result<Rational> {
    Ok(step_deltas(path)?.into_iter().sum())
}

/// The `T(n)` family: two components with linking number `n`, framings
/// `(s, -s)`, and the `n - 1` self-crossing changes in component 1 that
/// carry it to its mirror with components interchanged. Step `i` has
/// `l = 0` and `k^a_{12} = n - i`.
pub fn tn_path(n: i64, s: Rational) -> Result<HomotopyPath> {
    if n < 1 {
        return Err(Error::domain(format!("T(n) needs n >= 1, got {n}")));
    }
    let link = FramedLink::two_component(s.clone(), -s, n);
    let steps = (1..n)
        .map(|i| CrossingStep::new(1, 0).with_ka(2, n - i))
        .collect();
    Ok(HomotopyPath { link, steps })
}

/// `lambda(L_(s,-s))` from a homotopy to the interchanged mirror image:
/// the path delta is `2 lambda`.
pub fn mirror_lambda(path: &HomotopyPath) -> Result<Rational> {
    let link = &path.link;
    if link.n() != 2 {
        return Err(Error::domain(format!(
            "mirror solver needs 2 components, got {}",
            link.n()
        )));
    }
    if *link.framing(2) != -link.framing(1) {
        return Err(Error::domain("mirror solver needs framings of the form (s, -s)"));
    }
    Ok(path_delta(path)? / int(2))
}

/// `|H_1| / 2`, the factor relating `lambda_delta` to `cw_delta`.
pub fn h1_half(link: &FramedLink) -> Rational {
    Rational::new(h1_order(link), BigInt::from(2))
}

/// Parses a path file: a `.lnk` block, then `path component <c>` headers
/// each followed by `step <l> [j:ka_j ...]` lines.
pub fn parse_path(text: &str) -> Result<HomotopyPath> {
    let mut builder = LinkBuilder::new();
    let mut raw_steps: Vec<(usize, CrossingStep)> = Vec::new();
    let mut current: Option<usize> = None;
    let mut last = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last = lineno;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let err = |m: String| Error::parse(lineno, m);
        match toks[0] {
            "path" => {
                let ["path", "component", c] = toks[..] else {
                    return Err(err("expected `path component <c>`".into()));
                };
                current = Some(c.parse().map_err(|_| err(format!("bad component `{c}`")))?);
            }
            "step" => {
                let Some(c) = current else {
                    return Err(err("`step` before `path component`".into()));
                };
                let Some(l) = toks.get(1) else {
                    return Err(err("expected `step <l> [j:ka ...]`".into()));
                };
                let l: i64 = l.parse().map_err(|_| err(format!("bad lobe linking `{l}`")))?;
                let mut step = CrossingStep::new(c, l);
                for t in &toks[2..] {
                    let (j, v) = t
                        .split_once(':')
                        .ok_or_else(|| err(format!("expected `j:ka`, got `{t}`")))?;
                    let j: usize = j.parse().map_err(|_| err(format!("bad index in `{t}`")))?;
                    let v: i64 = v.parse().map_err(|_| err(format!("bad value in `{t}`")))?;
                    if step.ka.insert(j, v).is_some() {
                        return Err(err(format!("duplicate entry for component {j}")));
                    }
                }
                raw_steps.push((lineno, step));
            }
            _ => {
                if current.is_some() {
                    return Err(err(format!(
                        "link directive `{}` after the path began",
                        toks[0]
                    )));
                }
                if !builder.directive(lineno, &toks)? {
                    return Err(err(format!("unknown directive `{}`", toks[0])));
                }
            }
        }
    }
    let link = builder.finish(last.max(1))?;
    let mut steps = Vec::with_capacity(raw_steps.len());
    for (lineno, step) in raw_steps {
        step.validate(&link).map_err(|e| Error::parse(lineno, e.to_string()))?;
        steps.push(step);
    }
    Ok(HomotopyPath { link, steps })
}

impl HomotopyPath {
    /// Path-file text; the inverse of [`parse_path`].
    pub fn to_text(&self) -> String {
        let mut out = self.link.to_lnk();
        let mut current = None;
        for s in &self.steps {
            if current != Some(s.component) {
                out.push_str(&format!("path component {}\n", s.component));
                current = Some(s.component);
            }
            out.push_str(&format!("step {}", s.l));
            for (j, v) in &s.ka {
                out.push_str(&format!(" {j}:{v}"));
            }
            out.push('\n');
        }
        out
    }
}
