//! Nilpotent-orbit classification of covectors (zero / minimal /
//! next-to-minimal / larger), constructive conjugation to normal forms, and
//! the D-type partition catalog with its closure-order Hasse diagram.

use std::fmt;

use num_traits::Zero;

use crate::chevalley::{
    ad_star, dual_nilpotent, exp_ad_star, orbit_dim_in, word_on_covector, AlgebraElement,
    BasisIx, ChevalleyAlgebra, Covector,
};
use crate::error::{Error, Result};
use crate::linalg::{qz, Q};
use crate::root_system::{CartanElement, Root, RootSystem, Series};
use crate::weyl::{self, WeylWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    Zero,
    Minimal,
    NextToMinimal,
    Larger,
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitClass::Zero => write!(f, "zero"),
            OrbitClass::Minimal => write!(f, "minimal"),
            OrbitClass::NextToMinimal => write!(f, "next-to-minimal"),
            OrbitClass::Larger => write!(f, "larger"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalaCarter {
    Zero,
    A1,
    TwoA1,
    Other,
}

impl fmt::Display for BalaCarter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BalaCarter::Zero => write!(f, "0"),
            BalaCarter::A1 => write!(f, "A1"),
            BalaCarter::TwoA1 => write!(f, "2A1"),
            BalaCarter::Other => write!(f, "other"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VeryEvenTag {
    I,
    II,
}

/// A D-type orbit partition, with the I/II tag on very-even partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnPartition {
    /// Parts in descending order.
    pub parts: Vec<usize>,
    pub very_even: Option<VeryEvenTag>,
}

impl DnPartition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        DnPartition { parts, very_even: None }
    }

    pub fn with_tag(mut self, tag: VeryEvenTag) -> Self {
        self.very_even = Some(tag);
        self
    }

    pub fn is_very_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Text form "2^41^2" (exponents for repeated parts), with "_I"/"_II"
    /// appended on tagged very-even partitions.
    pub fn text(&self) -> String {
        let mut s = String::new();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut m = 0;
            while i < self.parts.len() && self.parts[i] == p {
                m += 1;
                i += 1;
            }
            s.push_str(&p.to_string());
            if m > 1 {
                s.push_str(&format!("^{m}"));
            }
        }
        match self.very_even {
            Some(VeryEvenTag::I) => s.push_str("_I"),
            Some(VeryEvenTag::II) => s.push_str("_II"),
            None => {}
        }
        s
    }

    pub fn parse(s: &str) -> Result<DnPartition> {
        let (body, tag) = if let Some(b) = s.strip_suffix("_II") {
            (b, Some(VeryEvenTag::II))
        } else if let Some(b) = s.strip_suffix("_I") {
            (b, Some(VeryEvenTag::I))
        } else {
            (s, None)
        };
        // The grouped text is ambiguous at digit boundaries ("2^21^6"), so
        // parse with backtracking under the descending-parts constraint,
        // preferring single-digit parts and exponents.
        fn groups(b: &[u8], max_part: usize) -> Option<Vec<usize>> {
            if b.is_empty() {
                return Some(Vec::new());
            }
            let digits = b.iter().take_while(|c| c.is_ascii_digit()).count();
            for plen in 1..=digits {
                let part: usize = std::str::from_utf8(&b[..plen]).ok()?.parse().ok()?;
                if part == 0 || part > max_part {
                    continue;
                }
                let rest = &b[plen..];
                if rest.first() == Some(&b'^') {
                    let edigits = rest[1..].iter().take_while(|c| c.is_ascii_digit()).count();
                    for elen in 1..=edigits {
                        let m: usize =
                            std::str::from_utf8(&rest[1..1 + elen]).ok()?.parse().ok()?;
                        if m == 0 {
                            continue;
                        }
                        if let Some(mut tail) = groups(&rest[1 + elen..], part - 1) {
                            let mut v = vec![part; m];
                            v.append(&mut tail);
                            return Some(v);
                        }
                    }
                }
                if let Some(mut tail) = groups(rest, part - 1) {
                    let mut v = vec![part];
                    v.append(&mut tail);
                    return Some(v);
                }
            }
            None
        }
        let parts = groups(body.as_bytes(), usize::MAX)
            .ok_or_else(|| Error::Parse(format!("bad partition {s:?}")))?;
        let mut out = DnPartition::new(parts);
        out.very_even = tag;
        Ok(out)
    }

    fn prefix_sums(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    }

    /// Dominance order on the underlying partitions (tags ignored).
    pub fn dominates(&self, other: &DnPartition) -> bool {
        let a = self.prefix_sums();
        let b = other.prefix_sums();
        let n = a.len().max(b.len());
        let total_a = *a.last().unwrap_or(&0);
        let total_b = *b.last().unwrap_or(&0);
        (0..n).all(|i| {
            let x = a.get(i).copied().unwrap_or(total_a);
            let y = b.get(i).copied().unwrap_or(total_b);
            x >= y
        })
    }
}

impl fmt::Display for DnPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Classification result for a covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitLabel {
    pub class: OrbitClass,
    pub bala_carter: BalaCarter,
    /// Partition for covectors concentrated in a single D-type component
    /// (or the zero covector of a simple D system).
    pub partition: Option<DnPartition>,
    /// Complex orbit dimension (sum over components).
    pub dim: usize,
}

/// Minimal-orbit dimension per simple type.
pub fn min_dim(series: Series, rank: usize) -> usize {
    match series {
        Series::A => 2 * rank,
        Series::D => 4 * rank - 6,
        Series::E => match rank {
            6 => 22,
            7 => 34,
            _ => 58,
        },
    }
}

/// Next-to-minimal orbit dimensions per simple type (empty when no 2A1
/// orbit exists: A1, and A2 by the regular-orbit exclusion).
pub fn ntm_dims(series: Series, rank: usize) -> Vec<usize> {
    match series {
        Series::A => {
            if rank >= 3 {
                vec![4 * rank - 4]
            } else {
                vec![]
            }
        }
        Series::D => {
            if rank == 4 {
                vec![12]
            } else {
                vec![4 * rank - 4, 8 * rank - 20]
            }
        }
        Series::E => match rank {
            6 => vec![32],
            7 => vec![52],
            _ => vec![92],
        },
    }
}

/// Lemma-style rank-2 typing of a two-root covector: pairing > 0 gives the
/// minimal orbit, = 0 next-to-minimal, < 0 larger (A2-regular exclusion).
pub fn rank2_type(sys: &RootSystem, eps: &Root, delta: &Root) -> Result<OrbitClass> {
    if eps == delta || *eps == delta.neg() {
        return Err(Error::Parse("proportional roots".into()));
    }
    let p = sys.pairing(eps, delta)?;
    Ok(if p > 0 {
        OrbitClass::Minimal
    } else if p == 0 {
        OrbitClass::NextToMinimal
    } else {
        OrbitClass::Larger
    })
}

/// Classify a covector: the primary method compares exact per-component
/// orbit dimensions against the minimal/next-to-minimal catalog and applies
/// the product rule across components. Single- and two-root supports are
/// cross-checked against the rank-2 typing on every call.
pub fn classify(sys: &RootSystem, alg: &ChevalleyAlgebra, phi: &Covector) -> Result<OrbitLabel> {
    let support = phi.support(sys)?;
    if support.is_empty() {
        let partition = if sys.components.len() == 1 && sys.components[0].series == Series::D {
            Some(DnPartition::new(vec![1; 2 * sys.rank]))
        } else {
            None
        };
        return Ok(OrbitLabel {
            class: OrbitClass::Zero,
            bala_carter: BalaCarter::Zero,
            partition,
            dim: 0,
        });
    }
    // Split the support by component and classify each factor by dimension.
    let mut comp_class: Vec<(usize, OrbitClass, usize)> = Vec::new();
    for (ci, comp) in sys.components.iter().enumerate() {
        let sub: Vec<(Root, Q)> = support
            .iter()
            .filter(|(r, _)| comp.contains(first_support_index(r)))
            .cloned()
            .collect();
        if sub.is_empty() {
            continue;
        }
        let sub_cv = Covector::from_support(sys, &sub)?;
        let f = dual_nilpotent(sys, &sub_cv)?;
        let levi = sys.levi(&comp.simples())?;
        let dim = orbit_dim_in(alg, sys, &levi, &f);
        let class = if dim == 0 {
            OrbitClass::Zero
        } else if dim == min_dim(comp.series, comp.rank) {
            OrbitClass::Minimal
        } else if ntm_dims(comp.series, comp.rank).contains(&dim) {
            OrbitClass::NextToMinimal
        } else {
            OrbitClass::Larger
        };
        comp_class.push((ci, class, dim));
    }
    let dim: usize = comp_class.iter().map(|(_, _, d)| d).sum();
    let nonzero: Vec<OrbitClass> = comp_class
        .iter()
        .map(|(_, c, _)| *c)
        .filter(|c| *c != OrbitClass::Zero)
        .collect();
    let class = match nonzero.as_slice() {
        [] => OrbitClass::Zero,
        [c] => *c,
        [OrbitClass::Minimal, OrbitClass::Minimal] => OrbitClass::NextToMinimal,
        _ => OrbitClass::Larger,
    };
    // Cross-check small supports against the rank-2 typing.
    if support.len() == 1 && class != OrbitClass::Minimal {
        return Err(Error::Inconsistent(
            "single-root covector not classified minimal".into(),
        ));
    }
    if support.len() == 2 {
        let expect = rank2_type(sys, &support[0].0, &support[1].0)?;
        if expect != class {
            return Err(Error::Inconsistent(format!(
                "two-root covector: rank-2 type {expect} but dimension method gives {class}"
            )));
        }
    }
    let bala_carter = match class {
        OrbitClass::Zero => BalaCarter::Zero,
        OrbitClass::Minimal => BalaCarter::A1,
        OrbitClass::NextToMinimal => BalaCarter::TwoA1,
        OrbitClass::Larger => BalaCarter::Other,
    };
    let partition = d_partition(sys, alg, phi, &comp_class, class)?;
    Ok(OrbitLabel { class, bala_carter, partition, dim })
}

fn first_support_index(r: &Root) -> usize {
    r.coeffs.iter().position(|&c| c != 0).expect("nonzero root")
}

/// Partition of a covector concentrated in one D-type component, for the
/// zero/minimal/next-to-minimal classes. The two next-to-minimal partitions
/// are separated by dimension for n >= 5 and by the conjugation class of
/// the orthogonal pair for D4 (where all three have dimension 12).
fn d_partition(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
    comp_class: &[(usize, OrbitClass, usize)],
    class: OrbitClass,
) -> Result<Option<DnPartition>> {
    let [(ci, _, dim)] = comp_class else { return Ok(None) };
    let comp = &sys.components[*ci];
    if comp.series != Series::D {
        return Ok(None);
    }
    let n = comp.rank;
    Ok(match class {
        OrbitClass::Zero => Some(DnPartition::new(vec![1; 2 * n])),
        OrbitClass::Minimal => {
            let mut parts = vec![2, 2];
            parts.extend(vec![1; 2 * n - 4]);
            Some(DnPartition::new(parts))
        }
        OrbitClass::NextToMinimal => {
            if n >= 5 {
                if *dim == 4 * n - 4 {
                    let mut parts = vec![3];
                    parts.extend(vec![1; 2 * n - 3]);
                    Some(DnPartition::new(parts))
                } else {
                    let mut parts = vec![2, 2, 2, 2];
                    parts.extend(vec![1; 2 * n - 8]);
                    Some(DnPartition::new(parts))
                }
            } else {
                d4_ntm_partition(sys, alg, phi, comp)?
            }
        }
        OrbitClass::Larger => None,
    })
}

/// D4 next-to-minimal partitions via the pair class: the (pos3, pos4) class
/// is 31^5; (pos1, pos3) is 2^4 I and (pos1, pos4) is 2^4 II by convention.
fn d4_ntm_partition(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
    comp: &crate::root_system::ComponentInfo,
) -> Result<Option<DnPartition>> {
    let pair = match phi.support_roots(sys)?.as_slice() {
        [a, b] if sys.pairing(a, b)? == 0 => Some((a.clone(), b.clone())),
        _ => {
            // Reduce constructively when the support is homogeneous at
            // level 2 of some simple alpha.
            let mut found = None;
            for &alpha in &comp.simples() {
                let level2 = phi
                    .support_roots(sys)?
                    .iter()
                    .all(|r| r.coeffs[alpha] == 1);
                if level2 {
                    if let Ok((_, nf)) = try_normal_form_ntm(sys, alg, phi, alpha) {
                        let roots = nf.support_roots(sys)?;
                        found = Some((roots[0].clone(), roots[1].clone()));
                        break;
                    }
                }
            }
            found
        }
    };
    let Some((a, b)) = pair else { return Ok(None) };
    let full = sys.full_levi();
    let (_, i, j) = weyl::pair_to_simple(sys, &full, &a, &b)?;
    let pi = comp.bourbaki_of(i).ok_or(Error::NotConjugate)?;
    let pj = comp.bourbaki_of(j).ok_or(Error::NotConjugate)?;
    let key = (pi.min(pj), pi.max(pj));
    let p = match key {
        (3, 4) => DnPartition::new(vec![3, 1, 1, 1, 1, 1]),
        (1, 3) => DnPartition::new(vec![2, 2, 2, 2]).with_tag(VeryEvenTag::I),
        (1, 4) => DnPartition::new(vec![2, 2, 2, 2]).with_tag(VeryEvenTag::II),
        other => {
            return Err(Error::Inconsistent(format!(
                "unexpected D4 pair class {other:?}"
            )))
        }
    };
    Ok(Some(p))
}

/// One step of a constructive conjugation: a Weyl word (acting through exact
/// exponentiated representatives) or an exponentiated nilpotent.
#[derive(Debug, Clone)]
pub enum TransformStep {
    Weyl(WeylWord),
    Exp(AlgebraElement),
}

/// A replayable transform; steps apply in order.
#[derive(Debug, Clone, Default)]
pub struct Transform {
    pub steps: Vec<TransformStep>,
}

impl Transform {
    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Replay a transform on a covector.
pub fn apply_transform(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    t: &Transform,
    phi: &Covector,
) -> Result<Covector> {
    let mut cur = phi.clone();
    for step in &t.steps {
        cur = match step {
            TransformStep::Weyl(w) => word_on_covector(alg, sys, w, &cur)?,
            TransformStep::Exp(x) => exp_ad_star(alg, sys, x, &cur)?,
        };
    }
    Ok(cur)
}

fn check_level2(sys: &RootSystem, phi: &Covector, alpha: usize) -> Result<()> {
    for r in phi.support_roots(sys)? {
        if r.coeffs[alpha] != 1 {
            return Err(Error::NotInLevel2);
        }
    }
    Ok(())
}

fn alpha_coefficient(sys: &RootSystem, phi: &Covector, alpha: usize) -> Option<Q> {
    let i = sys.positive_index(&sys.simple(alpha))?;
    phi.terms.get(&BasisIx::E(i)).cloned()
}

/// Move some support root onto alpha using the Levi Weyl group (minuscule
/// transitivity on the level-2 roots).
fn ensure_alpha_in_support(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    cur: &mut Covector,
    steps: &mut Vec<TransformStep>,
    alpha: usize,
) -> Result<()> {
    if alpha_coefficient(sys, cur, alpha).is_some() {
        return Ok(());
    }
    let seed = cur
        .support_roots(sys)?
        .first()
        .cloned()
        .ok_or(Error::NotMinimal)?;
    let gens: Vec<usize> = (0..sys.rank).filter(|&j| j != alpha).collect();
    let w = weyl::conjugating_word_over_gens(sys, &gens, &seed, &sys.simple(alpha))?;
    *cur = word_on_covector(alg, sys, &w, cur)?;
    steps.push(TransformStep::Weyl(w));
    Ok(())
}

/// Solve ad*(X)(c_alpha x*_alpha + c_beta x*_beta) = -psi for X supported on
/// the root vectors alpha - eps / beta - eps, by probing the coadjoint
/// action of each candidate direction and solving the small exact system.
fn solve_elimination_step(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    base: &Covector,
    psi: &Covector,
) -> Result<AlgebraElement> {
    let base_roots = base.support_roots(sys)?;
    let mut candidates: Vec<BasisIx> = Vec::new();
    for (d, _) in &psi.terms {
        let BasisIx::E(bi) = d else {
            return Err(Error::Inconsistent("psi off positive-root duals".into()));
        };
        let target = &sys.positive_roots[*bi];
        for b0 in &base_roots {
            let mu = b0.sub(target);
            if mu.is_zero() || !sys.is_root(&mu) {
                continue;
            }
            let ix = if mu.is_positive() {
                BasisIx::E(sys.positive_index(&mu).unwrap())
            } else {
                BasisIx::F(sys.positive_index(&mu.neg()).unwrap())
            };
            if !candidates.contains(&ix) {
                candidates.push(ix);
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoSolution);
    }
    // Equations over every dual direction any candidate can reach.
    let probes: Vec<Covector> = candidates
        .iter()
        .map(|&ix| ad_star(alg, sys, &AlgebraElement::single(ix, qz(1)), base))
        .collect();
    let mut rows: Vec<BasisIx> = Vec::new();
    for p in &probes {
        for d in p.terms.keys() {
            if !rows.contains(d) {
                rows.push(*d);
            }
        }
    }
    for d in psi.terms.keys() {
        if !rows.contains(d) {
            rows.push(*d);
        }
    }
    let mat = crate::linalg::Mat::from_rows(
        rows.iter()
            .map(|d| {
                probes
                    .iter()
                    .map(|p| p.terms.get(d).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect(),
    );
    let rhs: Vec<Q> = rows
        .iter()
        .map(|d| psi.terms.get(d).map(|c| -c.clone()).unwrap_or_else(Q::zero))
        .collect();
    let sol = mat.solve(&rhs).ok_or(Error::NoSolution)?;
    let mut x = AlgebraElement::zero();
    for (ix, c) in candidates.iter().zip(sol) {
        x.insert(*ix, c);
    }
    Ok(x)
}

fn project_support(sys: &RootSystem, phi: &Covector, keep: &[Root]) -> Covector {
    let mut out = Covector::zero();
    for (ix, c) in &phi.terms {
        if let BasisIx::E(i) = ix {
            if keep.contains(&sys.positive_roots[*i]) {
                out.insert(*ix, c.clone());
            }
        }
    }
    out
}

/// Constructive minimal normal form, without the classification precondition
/// (success certifies minimality; structured failure feeds the dual-method
/// agreement checks).
pub fn try_normal_form_min(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
    alpha: usize,
) -> Result<(Transform, Covector)> {
    check_level2(sys, phi, alpha)?;
    if phi.is_zero() {
        return Err(Error::NotMinimal);
    }
    let mut steps = Vec::new();
    let mut cur = phi.clone();
    ensure_alpha_in_support(sys, alg, &mut cur, &mut steps, alpha)?;
    let a_root = sys.simple(alpha);
    let rest: Vec<Root> = cur
        .support_roots(sys)?
        .into_iter()
        .filter(|r| *r != a_root)
        .collect();
    for r in &rest {
        if sys.pairing(r, &a_root)? != 1 {
            return Err(Error::NotMinimal);
        }
    }
    if !rest.is_empty() {
        let base = project_support(sys, &cur, std::slice::from_ref(&a_root));
        let psi = project_support(sys, &cur, &rest);
        let x = solve_elimination_step(sys, alg, &base, &psi)?;
        cur = exp_ad_star(alg, sys, &x, &cur)?;
        steps.push(TransformStep::Exp(x));
    }
    if cur.support_roots(sys)? != vec![a_root] {
        return Err(Error::NotMinimal);
    }
    Ok((Transform { steps }, cur))
}

/// Minimal normal form: a replayable transform carrying phi into g^x_{-alpha}.
pub fn normal_form_min(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
    alpha: usize,
) -> Result<(Transform, Covector)> {
    check_level2(sys, phi, alpha)?;
    if classify(sys, alg, phi)?.class != OrbitClass::Minimal {
        return Err(Error::NotMinimal);
    }
    let out = try_normal_form_min(sys, alg, phi, alpha)?;
    replay_check(sys, alg, phi, &out)?;
    Ok(out)
}

/// Constructive next-to-minimal normal form (no classification pre; success
/// certifies the class). Produces support {alpha, beta} with beta orthogonal
/// to alpha, further normalized to delta_alpha when alpha is nice.
pub fn try_normal_form_ntm(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
    alpha: usize,
) -> Result<(Transform, Covector)> {
    check_level2(sys, phi, alpha)?;
    let mut steps = Vec::new();
    let mut cur = phi.clone();
    ensure_alpha_in_support(sys, alg, &mut cur, &mut steps, alpha)?;
    let a_root = sys.simple(alpha);
    // Kill the components pairing +1 with alpha.
    for _ in 0..4 {
        let grade1: Vec<Root> = cur
            .support_roots(sys)?
            .into_iter()
            .filter(|r| *r != a_root && sys.pairing(r, &a_root).unwrap_or(0) == 1)
            .collect();
        if grade1.is_empty() {
            break;
        }
        let base = project_support(sys, &cur, std::slice::from_ref(&a_root));
        let psi = project_support(sys, &cur, &grade1);
        let x = solve_elimination_step(sys, alg, &base, &psi)?;
        cur = exp_ad_star(alg, sys, &x, &cur)?;
        steps.push(TransformStep::Exp(x));
    }
    // Now every other support root pairs <= 0 with alpha; pick an
    // orthogonal partner (preferring delta_alpha when nice).
    let rest: Vec<Root> = cur
        .support_roots(sys)?
        .into_iter()
        .filter(|r| *r != a_root)
        .collect();
    if rest.is_empty() {
        return Err(Error::NotNtm);
    }
    let full = sys.full_levi();
    let delta = crate::grading::delta_root(sys, &full, alpha).ok();
    let orthogonal: Vec<Root> = rest
        .iter()
        .filter(|r| sys.pairing(r, &a_root).unwrap_or(-1) == 0)
        .cloned()
        .collect();
    if orthogonal.is_empty() {
        return Err(Error::NotNtm);
    }
    let beta = delta
        .as_ref()
        .filter(|d| orthogonal.contains(d))
        .cloned()
        .unwrap_or_else(|| orthogonal[0].clone());
    // Graded elimination against the Z-grading of the pair.
    let z = CartanElement::coroot(sys, &a_root)
        .add(&CartanElement::coroot(sys, &beta))
        .sub(&CartanElement::s_alpha(sys.rank, alpha));
    for _ in 0..alg.dim() {
        let leftovers: Vec<(Root, Q)> = cur
            .support(sys)?
            .into_iter()
            .filter(|(r, _)| *r != a_root && *r != beta)
            .collect();
        if leftovers.is_empty() {
            break;
        }
        let grade_of = |r: &Root| -z.eval(r);
        let min_grade = leftovers
            .iter()
            .map(|(r, _)| grade_of(r))
            .min()
            .expect("nonempty");
        if min_grade <= Q::zero() {
            return Err(Error::NotNtm);
        }
        let targets: Vec<Root> = leftovers
            .iter()
            .filter(|(r, _)| grade_of(r) == min_grade)
            .map(|(r, _)| r.clone())
            .collect();
        let base = project_support(sys, &cur, &[a_root.clone(), beta.clone()]);
        let psi = project_support(sys, &cur, &targets);
        let x = solve_elimination_step(sys, alg, &base, &psi).map_err(|_| Error::NotNtm)?;
        cur = exp_ad_star(alg, sys, &x, &cur)?;
        steps.push(TransformStep::Exp(x));
    }
    let mut final_beta = beta.clone();
    // Nice roots: normalize the partner onto delta_alpha via the Weyl group
    // of M_alpha (transitive on Phi_alpha).
    if let Some(d) = &delta {
        if crate::grading::is_nice(sys, &full, alpha)? && final_beta != *d {
            let m_gens: Vec<usize> = (0..sys.rank)
                .filter(|&j| j != alpha && sys.cartan[alpha][j] == 0)
                .collect();
            let w = weyl::conjugating_word_over_gens(sys, &m_gens, &final_beta, d)?;
            cur = word_on_covector(alg, sys, &w, &cur)?;
            steps.push(TransformStep::Weyl(w));
            final_beta = d.clone();
        }
    }
    let mut expect = vec![a_root, final_beta];
    expect.sort();
    let mut got = cur.support_roots(sys)?;
    got.sort();
    if got != expect {
        return Err(Error::NotNtm);
    }
    Ok((Transform { steps }, cur))
}

/// Next-to-minimal normal form with the classification precondition and a
/// mandatory replay verification.
pub fn normal_form_ntm(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
    alpha: usize,
) -> Result<(Transform, Covector)> {
    check_level2(sys, phi, alpha)?;
    if classify(sys, alg, phi)?.class != OrbitClass::NextToMinimal {
        return Err(Error::NotNtm);
    }
    let out = try_normal_form_ntm(sys, alg, phi, alpha)?;
    replay_check(sys, alg, phi, &out)?;
    Ok(out)
}

/// Post-condition assertion, never skipped: the transform replays to the
/// claimed result exactly.
fn replay_check(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
    out: &(Transform, Covector),
) -> Result<()> {
    let replayed = apply_transform(sys, alg, &out.0, phi)?;
    if replayed != out.1 {
        return Err(Error::Inconsistent("transform replay mismatch".into()));
    }
    Ok(())
}

/// Entry of the D_n orbit catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub partition: DnPartition,
    pub dim: usize,
}

/// All nilpotent orbits of D_n: partitions of 2n with even parts of even
/// multiplicity, very-even ones split into I/II.
#[derive(Debug, Clone)]
pub struct DnOrbitCatalog {
    pub n: usize,
    pub entries: Vec<CatalogEntry>,
}

/// Orbit dimension from the partition: dim so_2n minus the centralizer
/// (sum of squared transpose parts minus the odd-part count, halved).
pub fn d_partition_dim(n: usize, parts: &[usize]) -> usize {
    let max = parts.first().copied().unwrap_or(0);
    let transpose: Vec<usize> = (1..=max)
        .map(|k| parts.iter().filter(|&&p| p >= k).count())
        .collect();
    let sq: usize = transpose.iter().map(|t| t * t).sum();
    let odd = parts.iter().filter(|&&p| p % 2 == 1).count();
    let dim_g = 2 * n * n - n;
    dim_g - (sq - odd) / 2
}

fn partitions_of(total: usize, max: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in (1..=max.min(total)).rev() {
        for mut rest in partitions_of(total - p, p) {
            let mut v = vec![p];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

pub fn dn_catalog(n: usize) -> Result<DnOrbitCatalog> {
    if n < 3 {
        return Err(Error::UnsupportedSeries(format!("D{n} catalog")));
    }
    let mut entries = Vec::new();
    for parts in partitions_of(2 * n, 2 * n) {
        let valid = parts
            .iter()
            .filter(|&&p| p % 2 == 0)
            .all(|&p| parts.iter().filter(|&&q| q == p).count() % 2 == 0);
        if !valid {
            continue;
        }
        let dim = d_partition_dim(n, &parts);
        let base = DnPartition::new(parts);
        if base.is_very_even() {
            entries.push(CatalogEntry {
                partition: base.clone().with_tag(VeryEvenTag::I),
                dim,
            });
            entries.push(CatalogEntry { partition: base.with_tag(VeryEvenTag::II), dim });
        } else {
            entries.push(CatalogEntry { partition: base, dim });
        }
    }
    entries.sort_by_key(|e| (e.dim, e.partition.text()));
    Ok(DnOrbitCatalog { n, entries })
}

/// Closure-order covering edges (from smaller to larger orbit): dominance
/// order on the partitions, with no relation between the I/II copies of a
/// very-even partition.
pub fn hasse_edges(cat: &DnOrbitCatalog) -> Vec<(usize, usize)> {
    let lt = |a: &CatalogEntry, b: &CatalogEntry| -> bool {
        a.partition.parts != b.partition.parts && b.partition.dominates(&a.partition)
    };
    let mut edges = Vec::new();
    for (i, a) in cat.entries.iter().enumerate() {
        for (j, b) in cat.entries.iter().enumerate() {
            if !lt(a, b) {
                continue;
            }
            let between = cat
                .entries
                .iter()
                .any(|c| lt(a, c) && lt(c, b));
            if !between {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Report of the minimal-to-minimal restriction check for a Levi view.
#[derive(Debug, Clone)]
pub struct Min2MinReport {
    pub cases: Vec<(Root, OrbitClass, OrbitClass)>,
    pub ok: bool,
}

/// For single-root covectors inside a Levi: whenever the ambient class is
/// minimal, the Levi class must be minimal too.
pub fn min2min_check(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    levi: &crate::root_system::Levi,
    roots: &[Root],
) -> Result<Min2MinReport> {
    let mut cases = Vec::new();
    let mut ok = true;
    for r in roots {
        if !levi.contains_root(r) {
            continue;
        }
        let cv = Covector::from_support(sys, &[(r.clone(), qz(1))])?;
        let f = dual_nilpotent(sys, &cv)?;
        let ambient = classify(sys, alg, &cv)?.class;
        // Class within the Levi, by per-component dimension.
        let mut levi_class = OrbitClass::Larger;
        if let Some(ci) = levi.component_of_root(r) {
            let comp = &levi.components[ci];
            let comp_levi = sys.levi(&comp.simples())?;
            let dim = orbit_dim_in(alg, sys, &comp_levi, &f);
            levi_class = if dim == 0 {
                OrbitClass::Zero
            } else if dim == min_dim(comp.series, comp.rank) {
                OrbitClass::Minimal
            } else if ntm_dims(comp.series, comp.rank).contains(&dim) {
                OrbitClass::NextToMinimal
            } else {
                OrbitClass::Larger
            };
        }
        if ambient == OrbitClass::Minimal && levi_class != OrbitClass::Minimal {
            ok = false;
        }
        cases.push((r.clone(), ambient, levi_class));
    }
    Ok(Min2MinReport { cases, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyAlgebra;

    fn build(spec: &str) -> (RootSystem, ChevalleyAlgebra) {
        let sys = RootSystem::build_from_str(spec).unwrap();
        let alg = ChevalleyAlgebra::build(&sys).unwrap();
        (sys, alg)
    }

    #[test]
    fn rank2_typing() {
        let (sys, _alg) = build("D5");
        let a = |i: usize| sys.simple(i - 1);
        assert_eq!(rank2_type(&sys, &a(4), &a(5)).unwrap(), OrbitClass::NextToMinimal);
        assert_eq!(
            rank2_type(&sys, &a(1), &a(1).add(&a(2))).unwrap(),
            OrbitClass::Minimal
        );
        assert_eq!(rank2_type(&sys, &a(1), &a(2)).unwrap(), OrbitClass::Larger);
        assert!(rank2_type(&sys, &a(1), &a(1)).is_err());
    }

    #[test]
    fn classify_fixtures_in_d5() {
        let (sys, alg) = build("D5");
        let zero = classify(&sys, &alg, &Covector::zero()).unwrap();
        assert_eq!(zero.class, OrbitClass::Zero);
        assert_eq!(zero.partition.unwrap().text(), "1^10");
        let min = classify(&sys, &alg, &Covector::parse(&sys, "a1:1").unwrap()).unwrap();
        assert_eq!(min.class, OrbitClass::Minimal);
        assert_eq!(min.dim, 14);
        assert_eq!(min.partition.unwrap().text(), "2^21^6");
        let ntm1 = classify(&sys, &alg, &Covector::parse(&sys, "a4:1,a5:1").unwrap()).unwrap();
        assert_eq!(ntm1.class, OrbitClass::NextToMinimal);
        assert_eq!(ntm1.dim, 16);
        assert_eq!(ntm1.partition.unwrap().text(), "31^7");
        let ntm2 = classify(&sys, &alg, &Covector::parse(&sys, "a1:1,a3:1").unwrap()).unwrap();
        assert_eq!(ntm2.dim, 20);
        assert_eq!(ntm2.partition.unwrap().text(), "2^41^2");
        let larger =
            classify(&sys, &alg, &Covector::parse(&sys, "a1:1,a2:1").unwrap()).unwrap();
        assert_eq!(larger.class, OrbitClass::Larger);
        assert_eq!(larger.partition, None);
    }

    #[test]
    fn classify_e8_single_root_is_minimal_dim_58() {
        let (sys, alg) = build("E8");
        let lab = classify(&sys, &alg, &Covector::parse(&sys, "a8:1").unwrap()).unwrap();
        assert_eq!(lab.class, OrbitClass::Minimal);
        assert_eq!(lab.bala_carter, BalaCarter::A1);
        assert_eq!(lab.dim, 58);
    }

    #[test]
    fn product_rule_across_components() {
        let (sys, alg) = build("A2xA2");
        // One minimal per component: next-to-minimal overall.
        let phi = Covector::parse(&sys, "a1:1,a4:1").unwrap();
        let lab = classify(&sys, &alg, &phi).unwrap();
        assert_eq!(lab.class, OrbitClass::NextToMinimal);
        // Regular in one A2: larger, never ntm (A2 exclusion).
        let phi = Covector::parse(&sys, "a1:1,a2:1").unwrap();
        let lab = classify(&sys, &alg, &phi).unwrap();
        assert_eq!(lab.class, OrbitClass::Larger);
    }

    #[test]
    fn d4_very_even_split() {
        let (sys, alg) = build("D4");
        let p13 = classify(&sys, &alg, &Covector::parse(&sys, "a1:1,a3:1").unwrap()).unwrap();
        assert_eq!(p13.partition.unwrap().text(), "2^4_I");
        let p14 = classify(&sys, &alg, &Covector::parse(&sys, "a1:1,a4:1").unwrap()).unwrap();
        assert_eq!(p14.partition.unwrap().text(), "2^4_II");
        let p34 = classify(&sys, &alg, &Covector::parse(&sys, "a3:1,a4:1").unwrap()).unwrap();
        assert_eq!(p34.partition.unwrap().text(), "31^5");
        assert_eq!(p13.dim, 12);
        assert_eq!(p34.dim, 12);
    }

    #[test]
    fn normal_form_min_on_d5() {
        let (sys, alg) = build("D5");
        // Already normal: identity transform.
        let phi = Covector::parse(&sys, "a1:1").unwrap();
        let (t, nf) = normal_form_min(&sys, &alg, &phi, 0).unwrap();
        assert!(t.is_identity());
        assert_eq!(nf, phi);
        // One Weyl move.
        let phi = Covector::parse(&sys, "a1+a2:1").unwrap();
        let (t, nf) = normal_form_min(&sys, &alg, &phi, 0).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert!(matches!(t.steps[0], TransformStep::Weyl(_)));
        assert_eq!(nf.support_roots(&sys).unwrap(), vec![sys.simple(0)]);
        // Exp deformation kills a pairing-one partner.
        let phi = Covector::parse(&sys, "a1:2,a1+a2:3").unwrap();
        let (t, nf) = normal_form_min(&sys, &alg, &phi, 0).unwrap();
        assert!(t.steps.iter().any(|s| matches!(s, TransformStep::Exp(_))));
        assert_eq!(nf.support_roots(&sys).unwrap(), vec![sys.simple(0)]);
        // Replay reproduces the result.
        assert_eq!(apply_transform(&sys, &alg, &t, &phi).unwrap(), nf);
        // Level mismatch is rejected.
        let bad = Covector::parse(&sys, "a2:1").unwrap();
        assert!(matches!(normal_form_min(&sys, &alg, &bad, 0), Err(Error::NotInLevel2)));
        // Non-minimal input is rejected.
        let ntm = Covector::parse(&sys, "a1:1,a1+2a2+2a3+a4+a5:1").unwrap();
        assert!(matches!(normal_form_min(&sys, &alg, &ntm, 0), Err(Error::NotMinimal)));
    }

    #[test]
    fn normal_form_ntm_on_d5() {
        let (sys, alg) = build("D5");
        let amax = sys.highest_roots[0].clone();
        // {a1, amax} is already a normal orthogonal pair (delta = amax).
        assert_eq!(sys.pairing(&sys.simple(0), &amax).unwrap(), 0);
        let phi = Covector::parse(&sys, &format!("a1:1,{}:1", amax.text())).unwrap();
        let (t, nf) = normal_form_ntm(&sys, &alg, &phi, 0).unwrap();
        assert!(t.is_identity());
        assert_eq!(nf, phi);
        // A three-root ntm covector reduces to the pair.
        let extra = sys.parse_root("a1+a2+a3+a4").unwrap();
        assert_eq!(sys.pairing(&sys.simple(0), &extra).unwrap(), 1);
        let phi3 =
            Covector::parse(&sys, &format!("a1:1,{}:1,{}:2", amax.text(), extra.text()))
                .unwrap();
        let (t3, nf3) = normal_form_ntm(&sys, &alg, &phi3, 0).unwrap();
        let mut sup = nf3.support_roots(&sys).unwrap();
        sup.sort();
        let mut expect = vec![sys.simple(0), amax.clone()];
        expect.sort();
        assert_eq!(sup, expect);
        assert_eq!(apply_transform(&sys, &alg, &t3, &phi3).unwrap(), nf3);
        // Minimal input is rejected.
        let min = Covector::parse(&sys, "a1:1").unwrap();
        assert!(matches!(normal_form_ntm(&sys, &alg, &min, 0), Err(Error::NotNtm)));
    }

    #[test]
    fn dn_catalog_d5_matches_figure() {
        let cat = dn_catalog(5).unwrap();
        assert_eq!(cat.entries.len(), 16);
        let texts: Vec<String> = cat.entries.iter().map(|e| e.partition.text()).collect();
        for t in ["1^10", "2^21^6", "2^41^2", "31^7", "91"] {
            assert!(texts.contains(&t.to_string()), "{t}");
        }
        let edges = hasse_edges(&cat);
        assert_eq!(edges.len(), 19);
        // Trivial orbit has dimension 0, top orbit 40.
        assert_eq!(cat.entries[0].dim, 0);
        assert_eq!(cat.entries.last().unwrap().dim, 40);
        // D5 ntm dimensions.
        let dim_of = |t: &str| {
            cat.entries
                .iter()
                .find(|e| e.partition.text() == t)
                .unwrap()
                .dim
        };
        assert_eq!(dim_of("31^7"), 16);
        assert_eq!(dim_of("2^41^2"), 20);
    }

    #[test]
    fn d4_catalog_splits_very_even() {
        let cat = dn_catalog(4).unwrap();
        let texts: Vec<String> = cat.entries.iter().map(|e| e.partition.text()).collect();
        assert!(texts.contains(&"2^4_I".to_string()));
        assert!(texts.contains(&"2^4_II".to_string()));
        // No I-II edge.
        let i = texts.iter().position(|t| t == "2^4_I").unwrap();
        let j = texts.iter().position(|t| t == "2^4_II").unwrap();
        let edges = hasse_edges(&cat);
        assert!(!edges.contains(&(i, j)) && !edges.contains(&(j, i)));
    }

    #[test]
    fn partition_text_round_trip() {
        for t in ["1^10", "2^21^6", "31^7", "2^4_I", "91", "3^22^2"] {
            assert_eq!(DnPartition::parse(t).unwrap().text(), t);
        }
    }

    #[test]
    fn min2min_on_d5_levi() {
        let (sys, alg) = build("D5");
        let levi = sys.levi(&[1, 2, 3, 4]).unwrap();
        let roots: Vec<Root> = sys.positive_roots.iter().take(8).cloned().collect();
        let rep = min2min_check(&sys, &alg, &levi, &roots).unwrap();
        assert!(rep.ok);
        assert!(!rep.cases.is_empty());
    }
}
