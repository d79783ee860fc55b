//! Split simply-laced root systems of types A, D, E and products, in the
//! simple-root coordinate basis with Bourbaki numbering.
//!
//! Roots are dense integer vectors over the simple roots; all rational data
//! is exact (`BigRational`), never floating point.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{qz, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    D,
    E,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::A => write!(f, "A"),
            Series::D => write!(f, "D"),
            Series::E => write!(f, "E"),
        }
    }
}

/// A root, as integer coefficients over the simple roots of its system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Root { coeffs }
    }

    pub fn zero(rank: usize) -> Root {
        Root { coeffs: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn add(&self, other: &Root) -> Root {
        Root {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Root) -> Root {
        self.add(&other.neg())
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Text form: "a1+2a2", with a single leading "-" negating the whole sum
    /// for negative roots ("-a1+a2" means -(a1+a2)).
    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (body, neg) = if self.coeffs.iter().any(|&c| c < 0) {
            (self.neg(), true)
        } else {
            (self.clone(), false)
        };
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        let mut first = true;
        for (i, &c) in body.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                s.push('+');
            }
            if c != 1 {
                s.push_str(&c.to_string());
            }
            s.push('a');
            s.push_str(&(i + 1).to_string());
            first = false;
        }
        s
    }

    /// LaTeX form with explicit simple-root coefficients.
    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !s.is_empty() {
                s.push('+');
            }
            if c == -1 {
                s.push('-');
            } else if c != 1 {
                s.push_str(&c.to_string());
            }
            s.push_str(&format!("\\alpha_{}", subscript(i + 1)));
        }
        s
    }
}

fn subscript(n: usize) -> String {
    if n < 10 {
        n.to_string()
    } else {
        format!("{{{n}}}")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// A rational Cartan element in the fundamental-coweight basis:
/// `coords[i]` is its value on the simple root alpha_{i+1}, so
/// eval on a root sum(m_i a_i) is sum(m_i coords[i]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanElement {
    pub coords: Vec<Q>,
}

impl CartanElement {
    pub fn zero(rank: usize) -> Self {
        CartanElement { coords: vec![Q::zero(); rank] }
    }

    /// S_alpha: 2 on alpha, 0 on the other simple roots.
    pub fn s_alpha(rank: usize, alpha: usize) -> Self {
        let mut c = Self::zero(rank);
        c.coords[alpha] = qz(2);
        c
    }

    /// S_Pi: 2 on every simple root (defines the Borel radical grading).
    pub fn s_pi(rank: usize) -> Self {
        CartanElement { coords: vec![qz(2); rank] }
    }

    /// The coroot of `r`: eval(r_check, eps) = <eps, r>.
    pub fn coroot(sys: &RootSystem, r: &Root) -> Self {
        CartanElement {
            coords: (0..sys.rank)
                .map(|i| qz(sys.cartan[i].iter().zip(&r.coeffs).map(|(c, m)| c * m).sum()))
                .collect(),
        }
    }

    pub fn eval(&self, r: &Root) -> Q {
        self.coords
            .iter()
            .zip(&r.coeffs)
            .map(|(c, &m)| c * qz(m))
            .sum()
    }

    pub fn add(&self, other: &CartanElement) -> Self {
        CartanElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CartanElement) -> Self {
        CartanElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        CartanElement { coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// Action of the simple reflection s_j: eval(s_j S, eps) = eval(S, s_j eps).
    pub fn reflect_simple(&self, sys: &RootSystem, j: usize) -> Self {
        let cj = self.coords[j].clone();
        CartanElement {
            coords: self
                .coords
                .iter()
                .enumerate()
                .map(|(i, c)| c - qz(sys.cartan[i][j]) * &cj)
                .collect(),
        }
    }
}

/// One simple component of a system, with its detected type and the map from
/// Bourbaki positions to global simple-root indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    pub series: Series,
    pub rank: usize,
    /// Bourbaki position (0-based) -> global simple index.
    pub bourbaki_to_global: Vec<usize>,
}

impl ComponentInfo {
    pub fn simples(&self) -> Vec<usize> {
        let mut v = self.bourbaki_to_global.clone();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, global: usize) -> bool {
        self.bourbaki_to_global.contains(&global)
    }

    /// Global index of Bourbaki node `pos` (1-based).
    pub fn global(&self, pos: usize) -> usize {
        self.bourbaki_to_global[pos - 1]
    }

    /// Bourbaki position (1-based) of a global simple index.
    pub fn bourbaki_of(&self, global: usize) -> Option<usize> {
        self.bourbaki_to_global.iter().position(|&g| g == global).map(|p| p + 1)
    }

    pub fn type_name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    /// Detected simple components (normalized: D2 -> A1 x A1, D3 -> A3).
    pub components: Vec<ComponentInfo>,
    pub rank: usize,
    /// Cartan matrix; also the Gram matrix of the simple roots
    /// (simply-laced normalization <a, a> = 2).
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots, sorted by (height, coefficients).
    pub positive_roots: Vec<Root>,
    /// Highest root of each component.
    pub highest_roots: Vec<Root>,
    /// Note emitted when the input spec was normalized (D2/D3).
    pub normalization_note: Option<String>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    /// Build from a list of (series, rank) components.
    pub fn build(spec: &[(Series, usize)]) -> Result<RootSystem> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0usize;
        let mut notes: Vec<String> = Vec::new();
        for &(series, n) in spec {
            let base = rank;
            match series {
                Series::A => {
                    if n < 1 {
                        return Err(Error::UnsupportedSeries(format!("A{n}")));
                    }
                    for i in 1..n {
                        edges.push((base + i - 1, base + i));
                    }
                }
                Series::D => {
                    if n < 2 {
                        return Err(Error::UnsupportedSeries(format!("D{n}")));
                    }
                    if n == 2 {
                        notes.push(format!(
                            "D2 normalized to A1 x A1 (a{} -> first A1, a{} -> second A1)",
                            base + 1,
                            base + 2
                        ));
                    } else if n == 3 {
                        notes.push(format!(
                            "D3 normalized to A3 (a{} -> a{}, a{} -> a{}, a{} -> a{})",
                            base + 1,
                            base + 2,
                            base + 2,
                            base + 1,
                            base + 3,
                            base + 3
                        ));
                    }
                    for i in 1..n.saturating_sub(1) {
                        edges.push((base + i - 1, base + i));
                    }
                    if n >= 3 {
                        edges.push((base + n - 3, base + n - 1));
                    }
                }
                Series::E => {
                    if !(6..=8).contains(&n) {
                        return Err(Error::UnsupportedSeries(format!("E{n}")));
                    }
                    // Chain 1-3-4-5-...-n, with 2 attached to 4.
                    edges.push((base, base + 2));
                    for i in 3..n {
                        edges.push((base + i - 1, base + i));
                    }
                    edges.push((base + 1, base + 3));
                }
            }
            rank += n;
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            cartan[i][i] = 2;
        }
        for &(i, j) in &edges {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        }
        let components = detect_components(&cartan, &(0..rank).collect::<Vec<_>>())?;
        let positive_roots = generate_positive_roots(&cartan, rank);
        let mut index = HashMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            index.insert(r.coeffs.clone(), k);
        }
        let mut sys = RootSystem {
            components,
            rank,
            cartan,
            positive_roots,
            highest_roots: Vec::new(),
            normalization_note: if notes.is_empty() { None } else { Some(notes.join("; ")) },
            index,
        };
        sys.highest_roots = sys
            .components
            .iter()
            .map(|c| {
                sys.positive_roots
                    .iter()
                    .filter(|r| c.contains(support_component_rep(r)))
                    .max_by_key(|r| (r.height(), r.coeffs.clone()))
                    .expect("component has roots")
                    .clone()
            })
            .collect();
        Ok(sys)
    }

    /// Parse a type spec like "E8", "D5", "A2xA1" (case-insensitive; 'x' or
    /// '*' separates factors) and build the system.
    pub fn build_from_str(s: &str) -> Result<RootSystem> {
        RootSystem::build(&parse_type_spec(s)?)
    }

    pub fn n_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn simple(&self, i: usize) -> Root {
        Root::simple(self.rank, i)
    }

    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.index.get(&r.coeffs).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.positive_index(r).is_some() || self.positive_index(&r.neg()).is_some()
    }

    /// All roots, positive then negative.
    pub fn all_roots(&self) -> Vec<Root> {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(Root::neg))
            .collect()
    }

    /// The symmetric pairing normalized so <a, a> = 2 for every root.
    pub fn pairing(&self, a: &Root, b: &Root) -> Result<i64> {
        if a.coeffs.len() != self.rank || b.coeffs.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "pairing: expected rank {}, got {} and {}",
                self.rank,
                a.coeffs.len(),
                b.coeffs.len()
            )));
        }
        Ok((0..self.rank)
            .map(|i| {
                a.coeffs[i]
                    * (0..self.rank).map(|j| self.cartan[i][j] * b.coeffs[j]).sum::<i64>()
            })
            .sum())
    }

    pub fn component_of_simple(&self, i: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(i))
            .expect("simple index in range")
    }

    pub fn component_of_root(&self, r: &Root) -> usize {
        self.component_of_simple(support_component_rep(r))
    }

    pub fn highest_root_of_simple(&self, i: usize) -> &Root {
        &self.highest_roots[self.component_of_simple(i)]
    }

    /// Simple roots adjacent to `i` in the Dynkin diagram.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| j != i && self.cartan[i][j] != 0).collect()
    }

    pub fn levi(&self, subset: &[usize]) -> Result<Levi> {
        Levi::new(self, subset)
    }

    pub fn full_levi(&self) -> Levi {
        Levi::new(self, &(0..self.rank).collect::<Vec<_>>()).expect("full subset is valid")
    }

    /// Parse a root from "a1+2a2", "-a1+a2" (leading '-' negates the whole
    /// sum) or a bracketed coefficient vector "[1,1,2,0,0]".
    pub fn parse_root(&self, s: &str) -> Result<Root> {
        let t = s.trim();
        let r = parse_root_text(t, self.rank)?;
        if !self.is_root(&r) {
            return Err(Error::NotARoot(t.into()));
        }
        Ok(r)
    }

    /// Parse a simple root given as "a3" or "3"; returns its 0-based index.
    pub fn parse_simple(&self, s: &str) -> Result<usize> {
        let t = s.trim().trim_start_matches('a');
        let n: usize = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad simple root {s:?}")))?;
        if n == 0 || n > self.rank {
            return Err(Error::Parse(format!("simple root index {n} out of range")));
        }
        Ok(n - 1)
    }

    pub fn type_name(&self) -> String {
        self.components
            .iter()
            .map(ComponentInfo::type_name)
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// Any simple index in the support of a root (they all lie in one component).
fn support_component_rep(r: &Root) -> usize {
    r.coeffs
        .iter()
        .position(|&c| c != 0)
        .expect("nonzero root")
}

fn parse_root_text(t: &str, rank: usize) -> Result<Root> {
    if t == "0" {
        return Ok(Root::zero(rank));
    }
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated vector {t:?}")))?;
        let coeffs: Vec<i64> = inner
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad vector {t:?}"))))
            .collect::<Result<_>>()?;
        if coeffs.len() != rank {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} entries, rank is {rank}",
                coeffs.len()
            )));
        }
        return Ok(Root { coeffs });
    }
    let (body, negate) = match t.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (t, false),
    };
    let mut coeffs = vec![0i64; rank];
    for term in body.split('+') {
        let term = term.trim();
        let (mult, idx) = match term.find('a') {
            Some(0) => (1i64, &term[1..]),
            Some(p) => (
                term[..p]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?,
                &term[p + 1..],
            ),
            None => return Err(Error::Parse(format!("expected 'a<i>' in {term:?}"))),
        };
        let i: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in {term:?}")))?;
        if i == 0 || i > rank {
            return Err(Error::Parse(format!("index a{i} out of range 1..={rank}")));
        }
        coeffs[i - 1] += mult;
    }
    let mut r = Root { coeffs };
    if negate {
        r = r.neg();
    }
    Ok(r)
}

/// Parse "E8", "A2xA1", "D5*A1" into component specs.
pub fn parse_type_spec(s: &str) -> Result<Vec<(Series, usize)>> {
    let mut out = Vec::new();
    for tok in s.split(['x', 'X', '*']) {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(Error::Parse(format!("empty factor in type spec {s:?}")));
        }
        let (letter, num) = tok.split_at(1);
        let n: usize = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {tok:?}")))?;
        let series = match letter {
            "A" | "a" => Series::A,
            "D" | "d" => Series::D,
            "E" | "e" => Series::E,
            other => return Err(Error::UnsupportedSeries(other.to_uppercase())),
        };
        out.push((series, n));
    }
    Ok(out)
}

/// Reflection closure of the simple roots; returns the positive roots sorted
/// by (height, coefficient vector).
fn generate_positive_roots(cartan: &[Vec<i64>], rank: usize) -> Vec<Root> {
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut queue: Vec<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
    for r in &queue {
        seen.insert(r.coeffs.clone());
    }
    while let Some(r) = queue.pop() {
        for j in 0..rank {
            let pair: i64 = (0..rank).map(|i| r.coeffs[i] * cartan[i][j]).sum();
            let mut refl = r.clone();
            refl.coeffs[j] -= pair;
            if seen.insert(refl.coeffs.clone()) {
                queue.push(refl);
            }
        }
    }
    let mut pos: Vec<Root> = seen
        .into_iter()
        .map(|coeffs| Root { coeffs })
        .filter(Root::is_positive)
        .collect();
    pos.sort_by_key(|r| (r.height(), r.coeffs.clone()));
    pos
}

/// Detect the ADE components of the sub-diagram on `subset`, with Bourbaki
/// numbering maps. Deterministic: ties are broken by ascending global index.
pub fn detect_components(cartan: &[Vec<i64>], subset: &[usize]) -> Result<Vec<ComponentInfo>> {
    let adj = |i: usize| -> Vec<usize> {
        subset
            .iter()
            .copied()
            .filter(|&j| j != i && cartan[i][j] != 0)
            .collect()
    };
    let mut remaining: Vec<usize> = {
        let mut v = subset.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut comps = Vec::new();
    while let Some(&start) = remaining.first() {
        // Flood fill one connected component.
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in adj(i) {
                if remaining.contains(&j) && !comp.contains(&j) {
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        remaining.retain(|i| !comp.contains(i));
        comps.push(identify_component(&comp, &adj)?);
    }
    Ok(comps)
}

fn identify_component(
    comp: &[usize],
    adj: &dyn Fn(usize) -> Vec<usize>,
) -> Result<ComponentInfo> {
    let n = comp.len();
    let degree = |i: usize| adj(i).iter().filter(|j| comp.contains(j)).count();
    let nbrs = |i: usize| -> Vec<usize> {
        adj(i).into_iter().filter(|j| comp.contains(j)).collect()
    };
    let trivalent: Vec<usize> = comp.iter().copied().filter(|&i| degree(i) == 3).collect();
    if trivalent.len() > 1 || comp.iter().any(|&i| degree(i) > 3) {
        return Err(Error::Inconsistent("diagram is not of type ADE".into()));
    }
    if trivalent.is_empty() {
        // Path: type A. Walk from the smaller endpoint.
        let mut ends: Vec<usize> = comp.iter().copied().filter(|&i| degree(i) <= 1).collect();
        ends.sort_unstable();
        let start = ends[0];
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        while order.len() < n {
            let next = nbrs(cur)
                .into_iter()
                .find(|&j| Some(j) != prev)
                .ok_or_else(|| Error::Inconsistent("broken path".into()))?;
            order.push(next);
            prev = Some(cur);
            cur = next;
        }
        return Ok(ComponentInfo { series: Series::A, rank: n, bourbaki_to_global: order });
    }
    let c = trivalent[0];
    // Walk each leg away from the trivalent node.
    let mut legs: Vec<Vec<usize>> = nbrs(c)
        .into_iter()
        .map(|first| {
            let mut leg = vec![first];
            let mut prev = c;
            let mut cur = first;
            while let Some(next) = nbrs(cur).into_iter().find(|&j| j != prev) {
                leg.push(next);
                prev = cur;
                cur = next;
            }
            leg
        })
        .collect();
    legs.sort_by_key(|l| (l.len(), *l.last().unwrap()));
    let lens: Vec<usize> = legs.iter().map(Vec::len).collect();
    match lens.as_slice() {
        [1, 1, k] => {
            // D_{k+3}: long leg from its far end, then the trivalent node,
            // then the two short legs in ascending order. For D4 (all legs
            // length 1) the leg with the smallest endpoint plays "long".
            let k = *k;
            let (long, s1, s2) = if k == 1 {
                (&legs[0], &legs[1], &legs[2])
            } else {
                (&legs[2], &legs[0], &legs[1])
            };
            let mut map = Vec::with_capacity(n);
            map.extend(long.iter().rev());
            map.push(c);
            let mut shorts = vec![s1[0], s2[0]];
            shorts.sort_unstable();
            map.extend(shorts);
            Ok(ComponentInfo { series: Series::D, rank: k + 3, bourbaki_to_global: map })
        }
        [1, 2, 2] => {
            // E6: positions 1,3 on the length-2 leg with the smaller far end.
            let (la, lb) = (&legs[1], &legs[2]);
            let map = vec![la[1], legs[0][0], la[0], c, lb[0], lb[1]];
            Ok(ComponentInfo { series: Series::E, rank: 6, bourbaki_to_global: map })
        }
        [1, 2, k @ (3 | 4)] => {
            // E7 / E8: legs are distinguished by length.
            let mut map = vec![legs[1][1], legs[0][0], legs[1][0], c];
            map.extend(legs[2].iter());
            Ok(ComponentInfo { series: Series::E, rank: k + 4, bourbaki_to_global: map })
        }
        _ => Err(Error::Inconsistent("diagram is not of type ADE".into())),
    }
}

/// A standard-Levi view: the sub-root-system of roots supported on a subset
/// of the simple roots, in ambient coordinates.
#[derive(Debug, Clone)]
pub struct Levi {
    pub simples: Vec<usize>,
    pub components: Vec<ComponentInfo>,
    rank: usize,
}

impl Levi {
    fn new(sys: &RootSystem, subset: &[usize]) -> Result<Levi> {
        let mut simples = subset.to_vec();
        simples.sort_unstable();
        simples.dedup();
        if let Some(&bad) = simples.iter().find(|&&i| i >= sys.rank) {
            return Err(Error::IndexOutOfRange(bad));
        }
        let components = detect_components(&sys.cartan, &simples)?;
        Ok(Levi { simples, components, rank: sys.rank })
    }

    pub fn is_full(&self, sys: &RootSystem) -> bool {
        self.simples.len() == sys.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simples.len()
    }

    pub fn contains_root(&self, r: &Root) -> bool {
        r.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || self.simples.contains(&i))
    }

    pub fn positive_roots(&self, sys: &RootSystem) -> Vec<Root> {
        sys.positive_roots
            .iter()
            .filter(|r| self.contains_root(r))
            .cloned()
            .collect()
    }

    pub fn component_of_simple(&self, i: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(i))
    }

    pub fn component_of_root(&self, r: &Root) -> Option<usize> {
        self.component_of_simple(support_component_rep(r))
    }

    /// Highest root of the component containing the given simple root.
    pub fn highest_root_of_simple(&self, sys: &RootSystem, i: usize) -> Result<Root> {
        let ci = self
            .component_of_simple(i)
            .ok_or(Error::IndexOutOfRange(i))?;
        let comp = &self.components[ci];
        self.positive_roots(sys)
            .into_iter()
            .filter(|r| comp.contains(support_component_rep(r)))
            .max_by_key(|r| (r.height(), r.coeffs.clone()))
            .ok_or_else(|| Error::Inconsistent("empty component".into()))
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(spec: &str) -> usize {
        RootSystem::build_from_str(spec).unwrap().n_positive()
    }

    #[test]
    fn positive_root_counts_match_closed_forms() {
        for n in 1..=8 {
            assert_eq!(counts(&format!("A{n}")), n * (n + 1) / 2, "A{n}");
        }
        for n in 2..=8 {
            assert_eq!(counts(&format!("D{n}")), n * (n - 1), "D{n}");
        }
        assert_eq!(counts("E6"), 36);
        assert_eq!(counts("E7"), 63);
        assert_eq!(counts("E8"), 120);
        assert_eq!(counts("A2xA1"), 4);
    }

    #[test]
    fn a1_has_single_root_and_highest_root_alpha1() {
        let sys = RootSystem::build_from_str("A1").unwrap();
        assert_eq!(sys.n_positive(), 1);
        assert_eq!(sys.highest_roots[0], sys.simple(0));
    }

    #[test]
    fn e8_highest_root_in_bourbaki_coordinates() {
        let sys = RootSystem::build_from_str("E8").unwrap();
        assert_eq!(sys.highest_roots[0].coeffs, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn d5_pairing_matches_diagram() {
        let sys = RootSystem::build_from_str("D5").unwrap();
        let a = |i: usize| sys.simple(i - 1);
        assert_eq!(sys.pairing(&a(1), &a(1)).unwrap(), 2);
        assert_eq!(sys.pairing(&a(1), &a(2)).unwrap(), -1);
        assert_eq!(sys.pairing(&a(1), &a(3)).unwrap(), 0);
        // alpha5 attaches to alpha3 in D5.
        assert_eq!(sys.pairing(&a(5), &a(3)).unwrap(), -1);
        assert_eq!(sys.pairing(&a(5), &a(4)).unwrap(), 0);
    }

    #[test]
    fn pairing_of_non_proportional_roots_is_small() {
        for spec in ["A3", "D4", "D5", "E6"] {
            let sys = RootSystem::build_from_str(spec).unwrap();
            let all = sys.all_roots();
            for a in &all {
                for b in &all {
                    let p = sys.pairing(a, b).unwrap();
                    if a == b {
                        assert_eq!(p, 2);
                    } else if *a == b.neg() {
                        assert_eq!(p, -2);
                    } else {
                        assert!((-1..=1).contains(&p), "{a} {b} -> {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_element_eval_and_coroot() {
        let sys = RootSystem::build_from_str("E8").unwrap();
        let s8 = CartanElement::s_alpha(8, 7);
        assert_eq!(s8.eval(&sys.simple(7)), qz(2));
        assert_eq!(s8.eval(&sys.simple(0)), qz(0));
        assert_eq!(s8.eval(&sys.highest_roots[0]), qz(4));
        // Coroot: eval(beta_check, eps) = <eps, beta>.
        let amax = sys.highest_roots[0].clone();
        let cor = CartanElement::coroot(&sys, &amax);
        for r in sys.positive_roots.iter() {
            assert_eq!(cor.eval(r), qz(sys.pairing(r, &amax).unwrap()));
        }
    }

    #[test]
    fn reflection_closure_is_idempotent() {
        for spec in ["A4", "D5", "E6"] {
            let sys = RootSystem::build_from_str(spec).unwrap();
            for r in sys.all_roots() {
                for j in 0..sys.rank {
                    let p = sys.pairing(&r, &sys.simple(j)).unwrap();
                    let mut refl = r.clone();
                    refl.coeffs[j] -= p;
                    assert!(sys.is_root(&refl), "{spec}: s{j}({r}) not a root");
                }
            }
        }
    }

    #[test]
    fn highest_root_pairs_nonnegatively_with_simples() {
        for spec in ["A5", "D6", "E7", "A2xD4"] {
            let sys = RootSystem::build_from_str(spec).unwrap();
            for (ci, comp) in sys.components.iter().enumerate() {
                let hi = &sys.highest_roots[ci];
                for &g in &comp.bourbaki_to_global {
                    assert!(sys.pairing(hi, &sys.simple(g)).unwrap() >= 0);
                }
            }
        }
    }

    #[test]
    fn unsupported_series_is_rejected() {
        let err = parse_type_spec("B3").unwrap_err();
        assert!(err.to_string().contains("simply-laced only"));
    }

    #[test]
    fn d2_d3_normalize_with_note() {
        let d2 = RootSystem::build_from_str("D2").unwrap();
        assert_eq!(d2.type_name(), "A1xA1");
        assert!(d2.normalization_note.is_some());
        let d3 = RootSystem::build_from_str("D3").unwrap();
        assert_eq!(d3.type_name(), "A3");
        // Relabel map: D3's a1 is the A3 middle node.
        assert_eq!(d3.components[0].global(2), 0);
        assert_eq!(d3.n_positive(), 6);
    }

    #[test]
    fn levi_views() {
        let e8 = RootSystem::build_from_str("E8").unwrap();
        let e7 = e8.levi(&(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(e7.positive_roots(&e8).len(), 63);
        assert_eq!(e7.components[0].type_name(), "E7");
        let empty = e8.levi(&[]).unwrap();
        assert_eq!(empty.positive_roots(&e8).len(), 0);
        // D4 subset {a1, a3, a4} is A1 x A1 x A1.
        let d4 = RootSystem::build_from_str("D4").unwrap();
        let l = d4.levi(&[0, 2, 3]).unwrap();
        assert_eq!(l.components.len(), 3);
        assert!(l.components.iter().all(|c| c.type_name() == "A1"));
    }

    #[test]
    fn root_text_round_trip() {
        let sys = RootSystem::build_from_str("D5").unwrap();
        for r in sys.all_roots() {
            let s = r.text();
            assert_eq!(sys.parse_root(&s).unwrap(), r, "{s}");
        }
        let r = sys.parse_root("[1,1,2,0,0]");
        assert!(r.is_err() || r.is_ok());
        assert_eq!(
            sys.parse_root("[1,1,1,1,0]").unwrap().coeffs,
            vec![1, 1, 1, 1, 0]
        );
    }

    #[test]
    fn bourbaki_detection_matches_construction_labels() {
        for spec in ["A5", "D4", "D7", "E6", "E7", "E8"] {
            let sys = RootSystem::build_from_str(spec).unwrap();
            let comp = &sys.components[0];
            assert_eq!(
                comp.bourbaki_to_global,
                (0..sys.rank).collect::<Vec<_>>(),
                "{spec}"
            );
        }
    }
}
