//! Weyl group elements as words in simple reflections, acting exactly on
//! roots and rational Cartan elements.
//!
//! Words apply right-to-left: the rightmost letter acts first, matching
//! composition of functions. Searches never enumerate the Weyl group
//! globally; everything is orbit BFS on roots/weights with parent-pointer
//! path recovery, returning the lexicographically least shortest word.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::root_system::{CartanElement, Levi, Root, RootSystem, Series};

/// A word in simple reflections; `letters` holds 0-based simple indices,
/// displayed 1-based ("s2 s1"). The rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// Concatenation: `self` acts after `other` (self o other).
    pub fn then_after(&self, other: &WeylWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(&other.letters);
        WeylWord { letters }
    }

    /// Parse "s2 s1" or "s2*s1"; an empty string is the identity.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split([' ', '*']).filter(|t| !t.is_empty()) {
            let t = tok.trim().trim_start_matches('s');
            let n: usize = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad reflection {tok:?}")))?;
            if n == 0 || n > rank {
                return Err(Error::IndexOutOfRange(n));
            }
            letters.push(n - 1);
        }
        Ok(WeylWord { letters })
    }

    pub fn text(&self) -> String {
        self.letters
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.text())
        }
    }
}

/// s_delta(eps) = eps - <eps, delta> delta.
pub fn reflect(sys: &RootSystem, eps: &Root, delta: &Root) -> Result<Root> {
    let p = sys.pairing(eps, delta)?;
    let mut out = eps.clone();
    for (c, d) in out.coeffs.iter_mut().zip(&delta.coeffs) {
        *c -= p * d;
    }
    Ok(out)
}

fn reflect_simple_vec(sys: &RootSystem, v: &[i64], j: usize) -> Vec<i64> {
    let p: i64 = (0..sys.rank).map(|i| v[i] * sys.cartan[i][j]).sum();
    let mut out = v.to_vec();
    out[j] -= p;
    out
}

/// Apply a word to a root (rightmost letter first).
pub fn apply(sys: &RootSystem, w: &WeylWord, r: &Root) -> Result<Root> {
    let mut v = r.coeffs.clone();
    for &j in w.letters.iter().rev() {
        if j >= sys.rank {
            return Err(Error::IndexOutOfRange(j));
        }
        v = reflect_simple_vec(sys, &v, j);
    }
    Ok(Root { coeffs: v })
}

/// Apply a word to a Cartan element: eval(w S, eps) = eval(S, w^{-1} eps).
pub fn apply_cartan(sys: &RootSystem, w: &WeylWord, s: &CartanElement) -> CartanElement {
    let mut out = s.clone();
    for &j in w.letters.iter().rev() {
        out = out.reflect_simple(sys, j);
    }
    out
}

/// BFS closure of a seed set of root-lattice vectors under the simple
/// reflections indexed by `gens`. Result is sorted.
pub fn orbit(sys: &RootSystem, gens: &[usize], seeds: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut seen: std::collections::HashSet<Vec<i64>> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for &j in gens {
            let w = reflect_simple_vec(sys, &v, j);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

/// One slot of a search state: either a root-lattice vector (reflected as a
/// root) or a Cartan element (reflected dually).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SlotVal {
    RootV(Vec<i64>),
    CartanV(Vec<Q>),
}

impl SlotVal {
    fn reflect(&self, sys: &RootSystem, j: usize) -> SlotVal {
        match self {
            SlotVal::RootV(v) => SlotVal::RootV(reflect_simple_vec(sys, v, j)),
            SlotVal::CartanV(c) => {
                let ce = CartanElement { coords: c.clone() };
                SlotVal::CartanV(ce.reflect_simple(sys, j).coords)
            }
        }
    }
}

pub type SearchState = Vec<SlotVal>;

pub fn root_state(roots: &[&Root]) -> SearchState {
    roots.iter().map(|r| SlotVal::RootV(r.coeffs.clone())).collect()
}

/// Shortest-word search: finds the lexicographically least shortest word `w`
/// (over the generators `gens`) with `w(start) = targets[k]` for some k, via
/// multi-source reverse BFS from the targets. Returns `(w, k)`.
pub fn search_word(
    sys: &RootSystem,
    gens: &[usize],
    start: &SearchState,
    targets: &[SearchState],
) -> Option<(WeylWord, usize)> {
    let mut gens = gens.to_vec();
    gens.sort_unstable();
    gens.dedup();
    // parent map: state -> (parent state, generator, source index)
    let mut seen: HashMap<SearchState, (Option<SearchState>, usize, usize)> = HashMap::new();
    let mut queue: VecDeque<SearchState> = VecDeque::new();
    for (k, t) in targets.iter().enumerate() {
        if !seen.contains_key(t) {
            seen.insert(t.clone(), (None, usize::MAX, k));
            queue.push_back(t.clone());
        }
    }
    let recover = |seen: &HashMap<SearchState, (Option<SearchState>, usize, usize)>,
                   state: &SearchState| {
        let mut letters = Vec::new();
        let mut cur = state.clone();
        let source;
        loop {
            let (parent, g, k) = seen.get(&cur).expect("visited").clone();
            match parent {
                Some(p) => {
                    letters.push(g);
                    cur = p;
                }
                None => {
                    source = k;
                    break;
                }
            }
        }
        letters.reverse();
        (WeylWord::from_letters(letters), source)
    };
    if seen.contains_key(start) {
        return Some(recover(&seen, start));
    }
    while let Some(state) = queue.pop_front() {
        for &j in &gens {
            let next: SearchState = state.iter().map(|s| s.reflect(sys, j)).collect();
            if !seen.contains_key(&next) {
                let src = seen[&state].2;
                seen.insert(next.clone(), (Some(state.clone()), j, src));
                if next == *start {
                    return Some(recover(&seen, start));
                }
                queue.push_back(next);
            }
        }
    }
    None
}

/// Forward BFS orbit of a search state with shortest words (deterministic;
/// words are discovery-order, not lex-minimal).
pub fn orbit_words(
    sys: &RootSystem,
    gens: &[usize],
    seed: &SearchState,
) -> Vec<(SearchState, WeylWord)> {
    let mut gens = gens.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let mut words: HashMap<SearchState, Vec<usize>> = HashMap::new();
    words.insert(seed.clone(), Vec::new());
    let mut queue: VecDeque<SearchState> = VecDeque::new();
    queue.push_back(seed.clone());
    while let Some(state) = queue.pop_front() {
        let base = words[&state].clone();
        for &j in &gens {
            let next: SearchState = state.iter().map(|s| s.reflect(sys, j)).collect();
            if !words.contains_key(&next) {
                let mut w = vec![j];
                w.extend(&base);
                words.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<(SearchState, WeylWord)> = words
        .into_iter()
        .map(|(s, letters)| (s, WeylWord::from_letters(letters)))
        .collect();
    out.sort_by_key(|(_, w)| (w.len(), w.letters.clone()));
    out
}

/// Shortest word conjugating `eps` to `delta` inside the given Levi view.
/// Deterministic tie-break: lexicographically least letter sequence.
pub fn conjugating_word(
    sys: &RootSystem,
    within: &Levi,
    eps: &Root,
    delta: &Root,
) -> Result<WeylWord> {
    if !within.contains_root(eps) || !within.contains_root(delta) {
        return Err(Error::NotConjugate);
    }
    if within.component_of_root(eps) != within.component_of_root(delta) {
        return Err(Error::NotConjugate);
    }
    if eps == delta {
        return Ok(WeylWord::identity());
    }
    let (w, _) = search_word(
        sys,
        &within.simples,
        &root_state(&[eps]),
        &[root_state(&[delta])],
    )
    .ok_or(Error::NotConjugate)?;
    debug_assert_eq!(apply(sys, &w, eps)?, *delta);
    Ok(w)
}

/// Shortest-lex word over an explicit generator set conjugating `eps` to
/// `delta`; the roots need not lie in the generators' sub-system (used for
/// Levi actions on graded pieces outside the Levi).
pub fn conjugating_word_over_gens(
    sys: &RootSystem,
    gens: &[usize],
    eps: &Root,
    delta: &Root,
) -> Result<WeylWord> {
    if eps == delta {
        return Ok(WeylWord::identity());
    }
    let (w, _) = search_word(sys, gens, &root_state(&[eps]), &[root_state(&[delta])])
        .ok_or(Error::NotConjugate)?;
    debug_assert_eq!(apply(sys, &w, eps)?, *delta);
    Ok(w)
}

/// Conjugate an orthogonal pair of roots to an ordered pair of orthogonal
/// simple roots (shortest word, lex tie-break over all simple-pair targets).
/// Returns (word, i, j) with w(eps) = alpha_i, w(delta) = alpha_j (0-based).
pub fn pair_to_simple(
    sys: &RootSystem,
    within: &Levi,
    eps: &Root,
    delta: &Root,
) -> Result<(WeylWord, usize, usize)> {
    if sys.pairing(eps, delta)? != 0 {
        return Err(Error::NotOrthogonal);
    }
    let mut targets = Vec::new();
    let mut pairs = Vec::new();
    for &i in &within.simples {
        for &j in &within.simples {
            if i != j && sys.cartan[i][j] == 0 {
                targets.push(root_state(&[&sys.simple(i), &sys.simple(j)]));
                pairs.push((i, j));
            }
        }
    }
    let (w, k) = search_word(
        sys,
        &within.simples,
        &root_state(&[eps, delta]),
        &targets,
    )
    .ok_or(Error::NotConjugate)?;
    let (i, j) = pairs[k];
    debug_assert_eq!(apply(sys, &w, eps)?, sys.simple(i));
    debug_assert_eq!(apply(sys, &w, delta)?, sys.simple(j));
    Ok((w, i, j))
}

/// Longest element of the Weyl group of a Levi view, as a word: greedy
/// descent of a strictly dominant Cartan element. Its action maps the view's
/// positive roots to negative ones and squares to the identity.
pub fn longest_element(sys: &RootSystem, within: &Levi) -> WeylWord {
    let mut s = CartanElement::zero(sys.rank);
    for &i in &within.simples {
        s.coords[i] = crate::linalg::qz(1);
    }
    let mut letters = Vec::new();
    loop {
        let Some(&i) = within
            .simples
            .iter()
            .find(|&&i| s.coords[i] > Q::zero())
        else {
            break;
        };
        s = s.reflect_simple(sys, i);
        letters.push(i);
    }
    WeylWord::from_letters(letters)
}

/// A word for the reflection s_delta in an arbitrary root, built as
/// u^{-1} s_k u where u conjugates delta to a simple root.
pub fn reflection_word(sys: &RootSystem, delta: &Root) -> Result<WeylWord> {
    reflection_word_over(sys, &(0..sys.rank).collect::<Vec<_>>(), delta)
}

/// Reflection word over an explicit generator set (for reflections inside a
/// Levi sub-system).
pub fn reflection_word_over(
    sys: &RootSystem,
    gens: &[usize],
    delta: &Root,
) -> Result<WeylWord> {
    let targets: Vec<SearchState> =
        gens.iter().map(|&i| root_state(&[&sys.simple(i)])).collect();
    let (u, k) = search_word(sys, gens, &root_state(&[delta]), &targets)
        .ok_or_else(|| Error::NotARoot(delta.text()))?;
    let mut letters = u.inverse().letters;
    letters.push(gens[k]);
    letters.extend(&u.letters);
    Ok(WeylWord::from_letters(letters))
}

/// Lemma-style involution switching a nice simple root alpha with delta_alpha:
/// the longest element of the Levi dropping alpha (abelian case), or s_beta
/// times it (Heisenberg case, beta the unique neighbor of alpha).
pub fn involution_switch(sys: &RootSystem, alpha: usize) -> Result<WeylWord> {
    let ci = sys.component_of_simple(alpha);
    let comp = &sys.components[ci];
    let amax = &sys.highest_roots[ci];
    let coeff = amax.coeffs[alpha];
    let abelian = coeff == 1;
    let heisenberg = coeff == 2 && sys.pairing(&sys.simple(alpha), amax)? == 1;
    let nice = abelian || (heisenberg && comp.series == Series::E);
    if !nice {
        return Err(Error::NotNice);
    }
    let gens: Vec<usize> = comp
        .simples()
        .into_iter()
        .filter(|&i| i != alpha)
        .collect();
    let levi = sys.levi(&gens)?;
    let w0 = longest_element(sys, &levi);
    if abelian {
        Ok(w0)
    } else {
        let beta = *sys
            .neighbors(alpha)
            .first()
            .ok_or(Error::NotNice)?;
        let mut letters = vec![beta];
        letters.extend(&w0.letters);
        Ok(WeylWord::from_letters(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qz;

    #[test]
    fn reflect_basics() {
        let sys = RootSystem::build_from_str("D5").unwrap();
        let a1 = sys.simple(0);
        let a2 = sys.simple(1);
        let a3 = sys.simple(2);
        assert_eq!(reflect(&sys, &a1, &a1).unwrap(), a1.neg());
        assert_eq!(reflect(&sys, &a1, &a2).unwrap(), a1.add(&a2));
        // Orthogonal roots are fixed.
        assert_eq!(reflect(&sys, &a1, &a3).unwrap(), a1);
        // Involution.
        for r in sys.all_roots() {
            let s = reflect(&sys, &r, &a2).unwrap();
            assert_eq!(reflect(&sys, &s, &a2).unwrap(), r);
        }
    }

    #[test]
    fn apply_identity_and_paper_word_on_d4() {
        let d4 = RootSystem::build_from_str("D4").unwrap();
        let a2 = d4.simple(1);
        assert_eq!(apply(&d4, &WeylWord::identity(), &a2).unwrap(), a2);
        // s1 s3 s2 s4 s2 s1 s3 maps alpha2 to the highest root of D4.
        let w = WeylWord::parse("s1 s3 s2 s4 s2 s1 s3", 4).unwrap();
        assert_eq!(apply(&d4, &w, &a2).unwrap(), d4.highest_roots[0]);
    }

    #[test]
    fn apply_preserves_pairing() {
        let sys = RootSystem::build_from_str("E6").unwrap();
        let w = WeylWord::parse("s3 s1 s4 s2 s6 s5 s4", 6).unwrap();
        let roots = sys.all_roots();
        for a in roots.iter().step_by(7) {
            for b in roots.iter().step_by(5) {
                let wa = apply(&sys, &w, a).unwrap();
                let wb = apply(&sys, &w, b).unwrap();
                assert_eq!(
                    sys.pairing(a, b).unwrap(),
                    sys.pairing(&wa, &wb).unwrap()
                );
            }
        }
    }

    #[test]
    fn orbit_in_a2_is_all_six_roots() {
        let sys = RootSystem::build_from_str("A2").unwrap();
        let o = orbit(&sys, &[0, 1], &[sys.simple(0).coeffs]);
        assert_eq!(o.len(), 6);
        // Orbit under the empty generator set is the seed itself.
        let o = orbit(&sys, &[], &[sys.simple(0).coeffs]);
        assert_eq!(o.len(), 1);
    }

    #[test]
    fn e8_level_one_orbit_has_size_56() {
        let e8 = RootSystem::build_from_str("E8").unwrap();
        // Weights of alpha8-coefficient 1 under the E7 Levi: minuscule, 56-dim.
        let seed = e8
            .positive_roots
            .iter()
            .find(|r| r.coeffs[7] == 1 && r.height() == 1)
            .unwrap();
        let o = orbit(&e8, &(0..7).collect::<Vec<_>>(), &[seed.coeffs.clone()]);
        assert_eq!(o.len(), 56);
        assert!(o.iter().all(|v| v[7] == 1));
    }

    #[test]
    fn conjugating_word_lex_least_in_a2() {
        let sys = RootSystem::build_from_str("A2").unwrap();
        let w = conjugating_word(
            &sys,
            &sys.full_levi(),
            &sys.simple(0),
            &sys.simple(1),
        )
        .unwrap();
        assert_eq!(w.text(), "s1 s2");
        let id =
            conjugating_word(&sys, &sys.full_levi(), &sys.simple(0), &sys.simple(0)).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn conjugating_word_rejects_cross_component() {
        let sys = RootSystem::build_from_str("A1xA1").unwrap();
        let err = conjugating_word(
            &sys,
            &sys.full_levi(),
            &sys.simple(0),
            &sys.simple(1),
        )
        .unwrap_err();
        assert_eq!(err, Error::NotConjugate);
    }

    #[test]
    fn d4_alpha2_to_highest_root_word_agrees_with_paper_in_action() {
        let d4 = RootSystem::build_from_str("D4").unwrap();
        let a2 = d4.simple(1);
        let w = conjugating_word(&d4, &d4.full_levi(), &a2, &d4.highest_roots[0]).unwrap();
        assert_eq!(apply(&d4, &w, &a2).unwrap(), d4.highest_roots[0]);
    }

    #[test]
    fn pair_to_simple_classes_in_d5() {
        let d5 = RootSystem::build_from_str("D5").unwrap();
        let full = d5.full_levi();
        // (eps1 - eps2, eps1 + eps2) = (a1, highest root): class (a4, a5).
        let amax = d5.highest_roots[0].clone();
        let (w, i, j) = pair_to_simple(&d5, &full, &d5.simple(0), &amax).unwrap();
        assert_eq!(apply(&d5, &w, &d5.simple(0)).unwrap(), d5.simple(i));
        let set = [i.min(j), i.max(j)];
        assert_eq!(set, [3, 4], "type (1) pair lands in (a4, a5)");
        // (a1, a3) stays in the (a1, a3) class.
        let (_, i, j) = pair_to_simple(&d5, &full, &d5.simple(0), &d5.simple(2)).unwrap();
        let set = [i.min(j), i.max(j)];
        assert_ne!(set, [3, 4]);
        // Already-simple orthogonal pair: identity.
        let (w, i, j) = pair_to_simple(&d5, &full, &d5.simple(0), &d5.simple(2)).unwrap();
        assert!(w.is_identity());
        assert_eq!((i, j), (0, 2));
        // Non-orthogonal pair is rejected.
        assert_eq!(
            pair_to_simple(&d5, &full, &d5.simple(0), &d5.simple(1)).unwrap_err(),
            Error::NotOrthogonal
        );
    }

    #[test]
    fn longest_element_lengths_and_action() {
        let a1 = RootSystem::build_from_str("A1").unwrap();
        assert_eq!(longest_element(&a1, &a1.full_levi()).letters, vec![0]);
        let a2 = RootSystem::build_from_str("A2").unwrap();
        assert_eq!(longest_element(&a2, &a2.full_levi()).len(), 3);
        let e8 = RootSystem::build_from_str("E8").unwrap();
        let e7view = e8.levi(&(0..7).collect::<Vec<_>>()).unwrap();
        let w0 = longest_element(&e8, &e7view);
        assert_eq!(w0.len(), 63);
        // w0 maps the view's positives to negatives, and squares to identity.
        for r in e7view.positive_roots(&e8) {
            let img = apply(&e8, &w0, &r).unwrap();
            assert!(img.neg().is_positive());
            assert_eq!(apply(&e8, &w0, &img).unwrap(), r);
        }
    }

    #[test]
    fn involution_switch_on_e7_and_e8() {
        let e7 = RootSystem::build_from_str("E7").unwrap();
        // alpha7 abelian: w0 of the D6 Levi sends alpha7 to the highest root.
        let w = involution_switch(&e7, 6).unwrap();
        assert_eq!(apply(&e7, &w, &e7.simple(6)).unwrap(), e7.highest_roots[0]);
        let e8 = RootSystem::build_from_str("E8").unwrap();
        let w = involution_switch(&e8, 7).unwrap();
        let delta = e8.highest_roots[0].sub(&e8.simple(7)).sub(&e8.simple(6));
        assert!(e8.is_root(&delta));
        assert_eq!(apply(&e8, &w, &e8.simple(7)).unwrap(), delta);
        // Action squares to the identity on all roots.
        for r in e8.all_roots().iter().step_by(3) {
            let once = apply(&e8, &w, r).unwrap();
            assert_eq!(apply(&e8, &w, &once).unwrap(), *r);
        }
        // D5's alpha2 is not nice.
        let d5 = RootSystem::build_from_str("D5").unwrap();
        assert_eq!(involution_switch(&d5, 1).unwrap_err(), Error::NotNice);
    }

    #[test]
    fn reflection_word_acts_as_reflection() {
        let d5 = RootSystem::build_from_str("D5").unwrap();
        let amax = d5.highest_roots[0].clone();
        let w = reflection_word(&d5, &amax).unwrap();
        for r in d5.all_roots() {
            assert_eq!(
                apply(&d5, &w, &r).unwrap(),
                reflect(&d5, &r, &amax).unwrap()
            );
        }
    }

    #[test]
    fn apply_cartan_is_dual_to_root_action() {
        let d5 = RootSystem::build_from_str("D5").unwrap();
        let w = WeylWord::parse("s2 s1 s3", 5).unwrap();
        let s = CartanElement::s_alpha(5, 0);
        let ws = apply_cartan(&d5, &w, &s);
        for r in d5.all_roots() {
            let wr = apply(&d5, &w.inverse(), &r).unwrap();
            assert_eq!(ws.eval(&r), s.eval(&wr));
        }
        let _ = qz(0);
    }
}
