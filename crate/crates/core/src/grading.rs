//! Gradings g^S_i, abelian/Heisenberg/nice classification of simple roots,
//! the distinguished root sets Phi_alpha, Psi_alpha, B_alpha, delta_alpha,
//! minuscule-module checks, and symbolic coset-space descriptors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{qr, qz, Q};
use crate::root_system::{CartanElement, Levi, Root, RootSystem, Series};
use crate::weyl::{self, WeylWord};

/// Verdict for a simple root's maximal-parabolic nilradical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClass {
    Abelian,
    Heisenberg,
    Neither,
}

impl std::fmt::Display for RootClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootClass::Abelian => write!(f, "abelian"),
            RootClass::Heisenberg => write!(f, "Heisenberg"),
            RootClass::Neither => write!(f, "neither"),
        }
    }
}

/// A grading of the root spaces by exact rational eigenvalues; the Cartan is
/// assigned to eigenvalue 0.
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    pub s: CartanElement,
    pub levels: BTreeMap<Q, Vec<Root>>,
}

impl GradedSubspace {
    pub fn level(&self, q: &Q) -> &[Root] {
        self.levels.get(q).map_or(&[], Vec::as_slice)
    }

    /// Dimension of a level, counting the Cartan at level 0.
    pub fn dim_level(&self, q: &Q, rank: usize) -> usize {
        self.level(q).len() + if q.is_zero() { rank } else { 0 }
    }
}

/// Partition all roots by eval(S, .).
pub fn grade(sys: &RootSystem, s: &CartanElement) -> GradedSubspace {
    let mut levels: BTreeMap<Q, Vec<Root>> = BTreeMap::new();
    for r in sys.all_roots() {
        levels.entry(s.eval(&r)).or_default().push(r);
    }
    for v in levels.values_mut() {
        v.sort();
    }
    GradedSubspace { s: s.clone(), levels }
}

/// Roots of the nilradical u_alpha inside a Levi view: view roots whose
/// alpha-coefficient is positive.
pub fn u_alpha_roots(sys: &RootSystem, within: &Levi, alpha: usize) -> Vec<Root> {
    within
        .positive_roots(sys)
        .into_iter()
        .filter(|r| r.coeffs[alpha] > 0)
        .collect()
}

/// Classification from the derived algebra of u_alpha: in the simply-laced
/// Chevalley basis [g_a, g_b] is nonzero whenever a+b is a root, so
/// dim [u, u] is the number of roots that split as a sum of two u-roots.
fn classify_by_derived_algebra(sys: &RootSystem, within: &Levi, alpha: usize) -> RootClass {
    let u = u_alpha_roots(sys, within, alpha);
    let uset: std::collections::HashSet<&Root> = u.iter().collect();
    let mut sums: std::collections::HashSet<Root> = std::collections::HashSet::new();
    for (i, a) in u.iter().enumerate() {
        for b in &u[i..] {
            let s = a.add(b);
            if uset.contains(&s) {
                sums.insert(s);
            }
        }
    }
    match sums.len() {
        0 => RootClass::Abelian,
        1 => RootClass::Heisenberg,
        _ => RootClass::Neither,
    }
}

/// Classification from the highest root: abelian roots carry coefficient one
/// in the highest root; the Heisenberg root carries coefficient two and
/// pairs to one (it connects to the affine node).
fn classify_by_highest_root(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<RootClass> {
    let amax = within.highest_root_of_simple(sys, alpha)?;
    let coeff = amax.coeffs[alpha];
    Ok(if coeff == 1 {
        RootClass::Abelian
    } else if coeff == 2 && sys.pairing(&sys.simple(alpha), &amax)? == 1 {
        RootClass::Heisenberg
    } else {
        RootClass::Neither
    })
}

/// Classify a simple root inside a Levi view; the derived-algebra computation
/// and the highest-root criterion are both evaluated and must agree.
pub fn classify_root(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<RootClass> {
    if !within.simples.contains(&alpha) {
        return Err(Error::IndexOutOfRange(alpha));
    }
    let derived = classify_by_derived_algebra(sys, within, alpha);
    let coeff = classify_by_highest_root(sys, within, alpha)?;
    if derived != coeff {
        return Err(Error::Inconsistent(format!(
            "classification criteria disagree on a{}: derived={derived}, highest-root={coeff}",
            alpha + 1
        )));
    }
    Ok(derived)
}

/// Per-step report of a quasi-abelian enumeration check.
#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub order: Vec<usize>,
    pub classes: Vec<RootClass>,
    pub quasi_abelian: bool,
}

impl EnumerationReport {
    pub fn heisenberg_steps(&self) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == RootClass::Heisenberg)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Check that each beta_i is quasi-abelian in the Levi on beta_1..beta_i.
pub fn quasi_abelian_enumeration(sys: &RootSystem, order: &[usize]) -> Result<EnumerationReport> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sys.rank || sorted != (0..sys.rank).collect::<Vec<_>>() {
        return Err(Error::NotAPermutation);
    }
    let mut classes = Vec::with_capacity(order.len());
    for i in 0..order.len() {
        let levi = sys.levi(&order[..=i])?;
        classes.push(classify_root(sys, &levi, order[i])?);
    }
    let quasi_abelian = classes.iter().all(|c| *c != RootClass::Neither);
    Ok(EnumerationReport { order: order.to_vec(), classes, quasi_abelian })
}

/// The ambient S_alpha of a Levi view: 2 on alpha, 0 elsewhere.
pub fn s_alpha(sys: &RootSystem, alpha: usize) -> CartanElement {
    CartanElement::s_alpha(sys.rank, alpha)
}

/// Phi_alpha: view roots orthogonal to alpha at S_alpha-level 2.
pub fn phi_set(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<Vec<Root>> {
    let a = sys.simple(alpha);
    let mut out = Vec::new();
    for r in within.positive_roots(sys) {
        if r.coeffs[alpha] == 1 && sys.pairing(&r, &a)? == 0 {
            out.push(r);
        }
    }
    Ok(out)
}

/// Psi_alpha: view roots pairing non-positively with alpha at level 2.
pub fn psi_set(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<Vec<Root>> {
    let a = sys.simple(alpha);
    let mut out = Vec::new();
    for r in within.positive_roots(sys) {
        if r.coeffs[alpha] == 1 && sys.pairing(&r, &a)? <= 0 {
            out.push(r);
        }
    }
    Ok(out)
}

/// B_alpha for a Heisenberg root: positive view roots pairing to one with
/// alpha (the Lie algebra of Omega_alpha is spanned by their negatives).
pub fn b_set(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<Vec<Root>> {
    if classify_root(sys, within, alpha)? != RootClass::Heisenberg {
        return Err(Error::NotHeisenberg);
    }
    let a = sys.simple(alpha);
    let mut out = Vec::new();
    for r in within.positive_roots(sys) {
        if sys.pairing(&a, &r)? == 1 {
            out.push(r);
        }
    }
    Ok(out)
}

/// Nice: abelian, or Heisenberg with component of type E (the Heisenberg
/// root of D_n is excluded).
pub fn is_nice(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<bool> {
    match classify_root(sys, within, alpha)? {
        RootClass::Abelian => Ok(true),
        RootClass::Heisenberg => {
            let ci = within
                .component_of_simple(alpha)
                .ok_or(Error::IndexOutOfRange(alpha))?;
            Ok(within.components[ci].series == Series::E)
        }
        RootClass::Neither => Ok(false),
    }
}

/// The unique simple view root not orthogonal to alpha (Heisenberg case).
pub fn heisenberg_neighbor(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<usize> {
    let nbrs: Vec<usize> = within
        .simples
        .iter()
        .copied()
        .filter(|&j| j != alpha && sys.cartan[alpha][j] != 0)
        .collect();
    match nbrs.as_slice() {
        [b] => Ok(*b),
        _ => Err(Error::NotHeisenberg),
    }
}

/// delta_alpha: the highest root (abelian case) or highest - alpha - beta
/// (nice Heisenberg case); verified to be a root of the view.
pub fn delta_root(sys: &RootSystem, within: &Levi, alpha: usize) -> Result<Root> {
    if !is_nice(sys, within, alpha)? {
        return Err(Error::NotNice);
    }
    let amax = within.highest_root_of_simple(sys, alpha)?;
    let d = match classify_root(sys, within, alpha)? {
        RootClass::Abelian => amax,
        RootClass::Heisenberg => {
            let beta = heisenberg_neighbor(sys, within, alpha)?;
            amax.sub(&sys.simple(alpha)).sub(&sys.simple(beta))
        }
        RootClass::Neither => return Err(Error::NotNice),
    };
    if !sys.is_root(&d) || !within.contains_root(&d) {
        return Err(Error::Inconsistent(format!("delta = {d} is not a root of the view")));
    }
    Ok(d)
}

/// Report for the second internal Chevalley module of an extreme node.
#[derive(Debug, Clone)]
pub struct SecondChevalleyReport {
    pub alpha: usize,
    pub beta: usize,
    pub weights: Vec<Root>,
    pub dim: usize,
    pub single_orbit: bool,
}

/// Weights of the second internal Chevalley module of the neighbor of an
/// extreme node alpha: roots with beta-coefficient 2, as an M_alpha-weight
/// system, with the minuscule (single Weyl orbit) check.
pub fn second_chevalley_weights(sys: &RootSystem, alpha: usize) -> Result<SecondChevalleyReport> {
    let nbrs = sys.neighbors(alpha);
    let [beta] = nbrs.as_slice() else {
        return Err(Error::NotExtreme);
    };
    let beta = *beta;
    let weights: Vec<Root> = sys
        .positive_roots
        .iter()
        .filter(|r| r.coeffs[beta] == 2)
        .cloned()
        .collect();
    let m_gens: Vec<usize> = (0..sys.rank)
        .filter(|&j| j != alpha && sys.cartan[alpha][j] == 0)
        .collect();
    let single_orbit = match weights.first() {
        None => true,
        Some(w0) => {
            let orbit = weyl::orbit(sys, &m_gens, &[w0.coeffs.clone()]);
            orbit.len() == weights.len()
                && weights.iter().all(|w| orbit.contains(&w.coeffs))
        }
    };
    Ok(SecondChevalleyReport { alpha, beta, dim: weights.len(), weights, single_orbit })
}

/// The kinds of coset spaces appearing in expansion terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetKind {
    /// Gamma_alpha = (L_alpha n Gamma) / (Q_alpha n Gamma).
    GammaAlpha,
    /// Gamma_{i-1} over a prefix Levi of an enumeration.
    GammaStep,
    /// Lambda_alpha: quotient by the index-two subgroup stabilizing both
    /// lines of a plane; carries multiplicity 1/2.
    Lambda,
    /// M_alpha-quotient (script M).
    MQuotient,
    /// Gamma'_{j-1} of the B_nj terms.
    GammaPrime,
}

impl CosetKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CosetKind::GammaAlpha => "Gamma_alpha",
            CosetKind::GammaStep => "Gamma_step",
            CosetKind::Lambda => "Lambda",
            CosetKind::MQuotient => "M_quotient",
            CosetKind::GammaPrime => "Gamma_prime",
        }
    }
}

/// A symbolic coset-space descriptor: ambient Levi, the stabilized root
/// line(s), the parabolic condition (nonpositive eigenvalues of the listed
/// coroots), and a Bruhat-cell decomposition computed on demand. Coset
/// spaces over the field are infinite; descriptors are symbolic, never
/// point enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpaceDescriptor {
    pub name: String,
    pub latex: String,
    pub kind: CosetKind,
    pub levi: Vec<usize>,
    pub stabilized: Vec<Root>,
    pub multiplicity: Q,
}

/// One Bruhat cell: a minimal coset word and the negative roots of its
/// unipotent coordinate patch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatCell {
    pub word: WeylWord,
    pub unipotent_roots: Vec<Root>,
}

impl CosetSpaceDescriptor {
    pub fn trivial(name: &str, latex: &str, kind: CosetKind) -> Self {
        CosetSpaceDescriptor {
            name: name.into(),
            latex: latex.into(),
            kind,
            levi: Vec::new(),
            stabilized: Vec::new(),
            multiplicity: qz(1),
        }
    }

    /// Orbit of the stabilized tuple under the Levi's Weyl group; the coset
    /// space is trivial exactly when the orbit is a single point.
    pub fn is_trivial(&self, sys: &RootSystem) -> bool {
        self.bruhat_cells(sys).len() == 1
    }

    /// Bruhat cells: minimal-length words for the Weyl orbit of the
    /// stabilized tuple, each with its unipotent root patch
    /// {negatives of positive view roots sent negative by w^{-1}}.
    pub fn bruhat_cells(&self, sys: &RootSystem) -> Vec<BruhatCell> {
        if self.stabilized.is_empty() {
            return vec![BruhatCell { word: WeylWord::identity(), unipotent_roots: vec![] }];
        }
        let state: weyl::SearchState = self
            .stabilized
            .iter()
            .map(|r| weyl::SlotVal::RootV(r.coeffs.clone()))
            .collect();
        let mut cells: Vec<BruhatCell> = weyl::orbit_words(sys, &self.levi, &state)
            .into_iter()
            .map(|(_, w)| {
                let unip = self.unipotent_patch(sys, &w);
                BruhatCell { word: w, unipotent_roots: unip }
            })
            .collect();
        cells.sort_by_key(|c| (c.word.len(), c.word.letters.clone()));
        cells
    }

    fn unipotent_patch(&self, sys: &RootSystem, w: &WeylWord) -> Vec<Root> {
        let winv = w.inverse();
        let levi = sys.levi(&self.levi).expect("valid levi");
        levi.positive_roots(sys)
            .into_iter()
            .filter(|r| {
                weyl::apply(sys, &winv, r).map(|img| !img.is_positive()).unwrap_or(false)
            })
            .map(|r| r.neg())
            .collect()
    }

    /// Per-component factorization: the components of the Levi that act
    /// nontrivially, each with its own cell count (e.g. three rank-1
    /// projective-line factors).
    pub fn factors(&self, sys: &RootSystem) -> Vec<(String, usize)> {
        let levi = sys.levi(&self.levi).expect("valid levi");
        let mut out = Vec::new();
        for comp in &levi.components {
            let acts = self.stabilized.iter().any(|r| {
                comp.simples()
                    .iter()
                    .any(|&i| sys.pairing(r, &sys.simple(i)).unwrap_or(0) != 0)
            });
            if !acts {
                continue;
            }
            let sub = CosetSpaceDescriptor {
                name: String::new(),
                latex: String::new(),
                kind: self.kind,
                levi: comp.simples(),
                stabilized: self.stabilized.clone(),
                multiplicity: qz(1),
            };
            out.push((comp.type_name(), sub.bruhat_cells(sys).len()));
        }
        out
    }
}

/// Gamma_{i-1}: quotient of the prefix Levi by the stabilizer of the line
/// g*_{-beta_i}.
pub fn gamma_step_descriptor(
    sys: &RootSystem,
    prefix: &[usize],
    beta: usize,
    index: usize,
) -> CosetSpaceDescriptor {
    CosetSpaceDescriptor {
        name: format!("Gamma_{index}"),
        latex: format!("\\Gamma_{}", latex_sub(index)),
        kind: CosetKind::GammaStep,
        levi: {
            let mut v = prefix.to_vec();
            v.sort_unstable();
            v
        },
        stabilized: vec![Root::simple(sys.rank, beta)],
        multiplicity: qz(1),
    }
}

/// Gamma_alpha: quotient of L_alpha by the stabilizer of g*_{-alpha}.
pub fn gamma_alpha_descriptor(sys: &RootSystem, alpha: usize) -> CosetSpaceDescriptor {
    CosetSpaceDescriptor {
        name: format!("Gamma_a{}", alpha + 1),
        latex: format!("\\Gamma_{{\\alpha_{}}}", latex_sub(alpha + 1)),
        kind: CosetKind::GammaAlpha,
        levi: (0..sys.rank).filter(|&j| j != alpha).collect(),
        stabilized: vec![Root::simple(sys.rank, alpha)],
        multiplicity: qz(1),
    }
}

/// Lambda_alpha over a view: quotient by the joint stabilizer of the lines
/// g*_{-alpha} and g*_{-delta}, of index two in the plane stabilizer; the
/// multiplicity 1/2 is recorded here.
pub fn lambda_descriptor(
    sys: &RootSystem,
    within: &Levi,
    alpha: usize,
    delta: &Root,
    name: String,
    latex: String,
) -> CosetSpaceDescriptor {
    CosetSpaceDescriptor {
        name,
        latex,
        kind: CosetKind::Lambda,
        levi: within.simples.iter().copied().filter(|&j| j != alpha).collect(),
        stabilized: vec![Root::simple(sys.rank, alpha), delta.clone()],
        multiplicity: qr(1, 2),
    }
}

/// Script-M quotient: M_alpha (simples orthogonal to alpha, within a view)
/// modulo the stabilizer of g*_{-delta}.
pub fn m_quotient_descriptor(
    sys: &RootSystem,
    within: &Levi,
    alpha: usize,
    delta: &Root,
    name: String,
    latex: String,
) -> CosetSpaceDescriptor {
    CosetSpaceDescriptor {
        name,
        latex,
        kind: CosetKind::MQuotient,
        levi: within
            .simples
            .iter()
            .copied()
            .filter(|&j| j != alpha && sys.cartan[alpha][j] == 0)
            .collect(),
        stabilized: vec![delta.clone()],
        multiplicity: qz(1),
    }
}

/// Gamma'_{j-1}: Levi on the enumeration roots before j that are orthogonal
/// to beta_n, modulo the stabilizer of g*_{-beta_j}.
pub fn gamma_prime_descriptor(
    sys: &RootSystem,
    levi_simples: &[usize],
    beta_j: usize,
    index: usize,
) -> CosetSpaceDescriptor {
    CosetSpaceDescriptor {
        name: format!("Gamma'_{index}"),
        latex: format!("\\Gamma'_{}", latex_sub(index)),
        kind: CosetKind::GammaPrime,
        levi: {
            let mut v = levi_simples.to_vec();
            v.sort_unstable();
            v
        },
        stabilized: vec![Root::simple(sys.rank, beta_j)],
        multiplicity: qz(1),
    }
}

fn latex_sub(n: usize) -> String {
    if n < 10 {
        n.to_string()
    } else {
        format!("{{{n}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(spec: &str) -> RootSystem {
        RootSystem::build_from_str(spec).unwrap()
    }

    #[test]
    fn grade_by_zero_is_single_level() {
        let d5 = sys("D5");
        let g = grade(&d5, &CartanElement::zero(5));
        assert_eq!(g.levels.len(), 1);
        assert_eq!(g.level(&qz(0)).len(), 40);
    }

    #[test]
    fn e8_alpha8_grading_is_heisenberg_shaped() {
        let e8 = sys("E8");
        let g = grade(&e8, &CartanElement::s_alpha(8, 7));
        assert_eq!(g.level(&qz(2)).len(), 56);
        assert_eq!(g.level(&qz(4)).len(), 1);
        assert_eq!(g.level(&qz(4))[0], e8.highest_roots[0]);
        // dim u = 57.
        assert_eq!(u_alpha_roots(&e8, &e8.full_levi(), 7).len(), 57);
    }

    #[test]
    fn d5_alpha1_level2_is_coefficient_one() {
        let d5 = sys("D5");
        let g = grade(&d5, &CartanElement::s_alpha(5, 0));
        for r in g.level(&qz(2)) {
            assert_eq!(r.coeffs[0], 1);
        }
    }

    #[test]
    fn table1_classification_examples() {
        let a4 = sys("A4");
        for j in 0..4 {
            assert_eq!(classify_root(&a4, &a4.full_levi(), j).unwrap(), RootClass::Abelian);
        }
        let e8 = sys("E8");
        let full = e8.full_levi();
        assert_eq!(classify_root(&e8, &full, 7).unwrap(), RootClass::Heisenberg);
        for j in 0..7 {
            assert_eq!(classify_root(&e8, &full, j).unwrap(), RootClass::Neither, "a{}", j + 1);
        }
        let d5 = sys("D5");
        let full = d5.full_levi();
        assert_eq!(classify_root(&d5, &full, 0).unwrap(), RootClass::Abelian);
        assert_eq!(classify_root(&d5, &full, 1).unwrap(), RootClass::Heisenberg);
        assert_eq!(classify_root(&d5, &full, 2).unwrap(), RootClass::Neither);
        assert_eq!(classify_root(&d5, &full, 3).unwrap(), RootClass::Abelian);
        assert_eq!(classify_root(&d5, &full, 4).unwrap(), RootClass::Abelian);
    }

    #[test]
    fn quasi_abelian_enumerations() {
        let e8 = sys("E8");
        let rep = quasi_abelian_enumeration(&e8, &(0..8).collect::<Vec<_>>()).unwrap();
        assert!(rep.quasi_abelian);
        assert_eq!(rep.heisenberg_steps(), vec![7]);
        let e7 = sys("E7");
        let rep = quasi_abelian_enumeration(&e7, &(0..7).collect::<Vec<_>>()).unwrap();
        assert!(rep.quasi_abelian);
        assert!(rep.heisenberg_steps().is_empty());
        let d4 = sys("D4");
        let rep = quasi_abelian_enumeration(&d4, &[0, 2, 3, 1]).unwrap();
        assert!(rep.quasi_abelian);
        assert_eq!(rep.heisenberg_steps(), vec![3]);
        assert!(matches!(
            quasi_abelian_enumeration(&d4, &[0, 0, 2, 3]),
            Err(Error::NotAPermutation)
        ));
    }

    #[test]
    fn d4_b_set_matches_fixture() {
        let d4 = sys("D4");
        let b = b_set(&d4, &d4.full_levi(), 1).unwrap();
        let expect: Vec<Root> = ["a1+a2", "a2+a3", "a2+a4", "a1+2a2+a3+a4"]
            .iter()
            .map(|s| d4.parse_root(s).unwrap())
            .collect();
        let mut b2 = b.clone();
        b2.sort();
        let mut e2 = expect.clone();
        e2.sort();
        assert_eq!(b2, e2);
    }

    #[test]
    fn e8_delta_and_psi_union() {
        let e8 = sys("E8");
        let full = e8.full_levi();
        let d = delta_root(&e8, &full, 7).unwrap();
        let expect = e8.highest_roots[0].sub(&e8.simple(7)).sub(&e8.simple(6));
        assert_eq!(d, expect);
        // Psi = Phi U {amax - a8}, |Phi| = 27.
        let phi = phi_set(&e8, &full, 7).unwrap();
        let psi = psi_set(&e8, &full, 7).unwrap();
        assert_eq!(phi.len(), 27);
        assert_eq!(psi.len(), 28);
        let gamma = e8.highest_roots[0].sub(&e8.simple(7));
        assert!(psi.contains(&gamma));
        for r in &phi {
            assert!(psi.contains(r));
        }
    }

    #[test]
    fn nice_flags() {
        let e8 = sys("E8");
        assert!(is_nice(&e8, &e8.full_levi(), 7).unwrap());
        let d5 = sys("D5");
        assert!(!is_nice(&d5, &d5.full_levi(), 1).unwrap());
        let a3 = sys("A3");
        assert!(is_nice(&a3, &a3.full_levi(), 1).unwrap());
        assert!(matches!(delta_root(&d5, &d5.full_levi(), 1), Err(Error::NotNice)));
    }

    #[test]
    fn second_chevalley_dimensions() {
        let e8 = sys("E8");
        let rep = second_chevalley_weights(&e8, 7).unwrap();
        assert_eq!(rep.dim, 27);
        assert!(rep.single_orbit);
        let dn = sys("D6");
        let rep = second_chevalley_weights(&dn, 0).unwrap();
        assert_eq!(rep.dim, 1);
        assert!(rep.single_orbit);
        let e6 = sys("E6");
        let rep = second_chevalley_weights(&e6, 0).unwrap();
        assert_eq!(rep.dim, 5);
        assert!(rep.single_orbit);
        // Interior nodes are rejected.
        assert!(matches!(second_chevalley_weights(&e8, 3), Err(Error::NotExtreme)));
    }

    #[test]
    fn bruhat_cells_of_d5_gamma2() {
        // Levi {a4, a5} acting on the line of a3: the four cells of
        // P^1 x P^1, with words 1, s4, s5, and a length-2 word.
        let d5 = sys("D5");
        let desc = gamma_step_descriptor(&d5, &[3, 4], 2, 2);
        let cells = desc.bruhat_cells(&d5);
        assert_eq!(cells.len(), 4);
        assert!(cells[0].word.is_identity());
        assert!(cells[0].unipotent_roots.is_empty());
        let words: Vec<String> = cells.iter().map(|c| c.word.text()).collect();
        assert!(words.contains(&"s4".to_string()));
        assert!(words.contains(&"s5".to_string()));
        assert_eq!(cells[3].word.len(), 2);
        assert_eq!(cells[3].unipotent_roots.len(), 2);
        let factors = desc.factors(&d5);
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(t, n)| t == "A1" && *n == 2));
    }

    #[test]
    fn d4_gamma3_has_three_projective_line_factors() {
        let d4 = sys("D4");
        let desc = gamma_step_descriptor(&d4, &[0, 2, 3], 1, 3);
        let factors = desc.factors(&d4);
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|(t, n)| t == "A1" && *n == 2));
        assert_eq!(desc.bruhat_cells(&d4).len(), 8);
        // Gamma_0 is trivial.
        let triv = gamma_step_descriptor(&d4, &[], 0, 0);
        assert!(triv.is_trivial(&d4));
    }

    #[test]
    fn heisenberg_dimension_law() {
        for spec in ["D4", "D6", "E6", "E7", "E8"] {
            let s = sys(spec);
            let full = s.full_levi();
            for alpha in 0..s.rank {
                if classify_root(&s, &full, alpha).unwrap() == RootClass::Heisenberg {
                    let u = u_alpha_roots(&s, &full, alpha).len();
                    assert_eq!(u % 2, 1, "{spec} a{}", alpha + 1);
                    let b = b_set(&s, &full, alpha).unwrap().len();
                    assert_eq!(b, (u - 1) / 2, "{spec} a{}", alpha + 1);
                }
            }
        }
    }
}
