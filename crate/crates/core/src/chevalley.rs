//! Chevalley basis with +-1 structure constants, exact adjoint and coadjoint
//! actions, sl2-triples, and centralizer ranks by fraction-free elimination.
//!
//! Signs come from the standard asymmetry-function cocycle on the root
//! lattice with the simple-root ordering as built; any consistent choice is
//! an isomorphism, so the signs are pinned purely for golden-test stability.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel_dim_sparse, qz, Q};
use crate::root_system::{CartanElement, Levi, Root, RootSystem};
use crate::weyl::WeylWord;

/// Basis index: e/f vectors per positive root, h per simple coroot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisIx {
    E(usize),
    F(usize),
    H(usize),
}

impl BasisIx {
    pub fn flat(&self, n_pos: usize) -> usize {
        match *self {
            BasisIx::E(i) => i,
            BasisIx::F(i) => n_pos + i,
            BasisIx::H(k) => 2 * n_pos + k,
        }
    }
}

/// Sparse element of the Lie algebra in the Chevalley basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    pub terms: BTreeMap<BasisIx, Q>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single(ix: BasisIx, c: Q) -> Self {
        let mut e = Self::zero();
        e.insert(ix, c);
        e
    }

    pub fn insert(&mut self, ix: BasisIx, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(ix).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&ix);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ix, c) in &other.terms {
            out.insert(*ix, c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(ix, c)| (*ix, c * q)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&qz(-1))
    }
}

/// A nilpotent covector: a finitely supported functional on the algebra,
/// stored by dual-basis coefficients. The public face is a map
/// {positive root eps -> nonzero rational}, meaning a component in g*_{-eps}
/// (the functional dual to e_eps under the Killing pairing with f_eps).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Covector {
    pub terms: BTreeMap<BasisIx, Q>,
}

impl Covector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_support(sys: &RootSystem, support: &[(Root, Q)]) -> Result<Covector> {
        let mut cv = Covector::zero();
        for (r, c) in support {
            let i = sys
                .positive_index(r)
                .ok_or_else(|| Error::NotARoot(r.text()))?;
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient on {r}")));
            }
            cv.insert(BasisIx::E(i), c.clone());
        }
        Ok(cv)
    }

    /// Parse "a4:1,a5:1" or "a1+a2:3/2"; empty or "-" is the zero covector.
    pub fn parse(sys: &RootSystem, s: &str) -> Result<Covector> {
        let t = s.trim();
        if t.is_empty() || t == "-" || t == "0" {
            return Ok(Covector::zero());
        }
        let mut support = Vec::new();
        for part in t.split(',') {
            let (rs, cs) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected root:coeff in {part:?}")))?;
            let root = sys.parse_root(rs)?;
            let coeff: Q = cs
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {cs:?}")))?;
            support.push((root, coeff));
        }
        Covector::from_support(sys, &support)
    }

    pub fn insert(&mut self, ix: BasisIx, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(ix).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&ix);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ix, c) in &other.terms {
            out.insert(*ix, c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Covector {
            terms: self.terms.iter().map(|(ix, c)| (*ix, c * q)).collect(),
        }
    }

    /// Support as {positive root -> coefficient}; errors if the functional
    /// has components off the positive-root duals.
    pub fn support(&self, sys: &RootSystem) -> Result<Vec<(Root, Q)>> {
        let mut out = Vec::new();
        for (ix, c) in &self.terms {
            match ix {
                BasisIx::E(i) => out.push((sys.positive_roots[*i].clone(), c.clone())),
                _ => {
                    return Err(Error::Inconsistent(
                        "covector has components outside positive-root duals".into(),
                    ))
                }
            }
        }
        Ok(out)
    }

    pub fn support_roots(&self, sys: &RootSystem) -> Result<Vec<Root>> {
        Ok(self.support(sys)?.into_iter().map(|(r, _)| r).collect())
    }

    /// Pair the functional with an algebra element.
    pub fn pair(&self, x: &AlgebraElement) -> Q {
        self.terms
            .iter()
            .filter_map(|(ix, c)| x.terms.get(ix).map(|v| c * v))
            .sum()
    }

    pub fn text(&self, sys: &RootSystem) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(ix, c)| match ix {
                BasisIx::E(i) => format!("{}:{}", sys.positive_roots[*i].text(), c),
                BasisIx::F(i) => format!("-({}):{}", sys.positive_roots[*i].text(), c),
                BasisIx::H(k) => format!("h{}:{}", k + 1, c),
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(ix, c)| match ix {
                BasisIx::E(i) => format!("{c}*e[{i}]"),
                BasisIx::F(i) => format!("{c}*f[{i}]"),
                BasisIx::H(k) => format!("{c}*h[{k}]"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Chevalley algebra of a root system: bracket table driven by the
/// asymmetry cocycle, with Jacobi verified at build time.
#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    pub n_pos: usize,
    pub rank: usize,
    /// Exponent matrix of the bimultiplicative sign cocycle.
    b_form: Vec<Vec<i64>>,
}

impl ChevalleyAlgebra {
    /// Build the structure constants and verify the Jacobi identity:
    /// exhaustively for systems of rank <= 5, on a deterministic sample of
    /// at least 1000 basis triples otherwise.
    pub fn build(sys: &RootSystem) -> Result<ChevalleyAlgebra> {
        let rank = sys.rank;
        let mut b_form = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                b_form[i][j] = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => sys.cartan[i][j],
                    std::cmp::Ordering::Less => 0,
                };
            }
        }
        let alg = ChevalleyAlgebra { n_pos: sys.n_positive(), rank, b_form };
        alg.verify_jacobi(sys)?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        2 * self.n_pos + self.rank
    }

    pub fn basis(&self) -> Vec<BasisIx> {
        (0..self.n_pos)
            .map(BasisIx::E)
            .chain((0..self.n_pos).map(BasisIx::F))
            .chain((0..self.rank).map(BasisIx::H))
            .collect()
    }

    /// The sign (-1)^(u^T B v) of the asymmetry cocycle.
    fn eps_sign(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut e = 0i64;
        for i in 0..self.rank {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                e += u[i] * self.b_form[i][j] * v[j];
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn signed_vec(&self, sys: &RootSystem, ix: BasisIx) -> Option<Vec<i64>> {
        match ix {
            BasisIx::E(i) => Some(sys.positive_roots[i].coeffs.clone()),
            BasisIx::F(i) => Some(sys.positive_roots[i].neg().coeffs),
            BasisIx::H(_) => None,
        }
    }

    fn vec_to_ix(&self, sys: &RootSystem, v: &[i64]) -> Option<BasisIx> {
        let r = Root { coeffs: v.to_vec() };
        if r.is_positive() {
            sys.positive_index(&r).map(BasisIx::E)
        } else {
            sys.positive_index(&r.neg()).map(BasisIx::F)
        }
    }

    /// Bracket of two basis elements, as a sparse element.
    ///
    /// Internally the f side carries the sign of the Frenkel-Kac basis
    /// (f_eps = -x_{-eps}), which makes [x_u, x_{-u}] = -u_check consistent
    /// with the cocycle while keeping [e_eps, f_eps] = eps_check.
    pub fn bracket_basis(&self, sys: &RootSystem, x: BasisIx, y: BasisIx) -> AlgebraElement {
        match (x, y) {
            (BasisIx::H(_), BasisIx::H(_)) => AlgebraElement::zero(),
            (BasisIx::H(k), _) => {
                let v = self.signed_vec(sys, y).expect("root vector");
                let lambda: i64 = (0..self.rank).map(|i| v[i] * sys.cartan[i][k]).sum();
                AlgebraElement::single(y, qz(lambda))
            }
            (_, BasisIx::H(_)) => self.bracket_basis(sys, y, x).neg(),
            _ => {
                let u = self.signed_vec(sys, x).expect("root vector");
                let v = self.signed_vec(sys, y).expect("root vector");
                let sx = if matches!(x, BasisIx::F(_)) { -1 } else { 1 };
                let sy = if matches!(y, BasisIx::F(_)) { -1 } else { 1 };
                let s: Vec<i64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
                if s.iter().all(|&c| c == 0) {
                    // [x_u, x_{-u}] = -u_check in the h basis.
                    let mut out = AlgebraElement::zero();
                    for (k, &m) in u.iter().enumerate() {
                        out.insert(BasisIx::H(k), qz(-sx * sy * m));
                    }
                    out
                } else if let Some(ix) = self.vec_to_ix(sys, &s) {
                    let sout = if matches!(ix, BasisIx::F(_)) { -1 } else { 1 };
                    AlgebraElement::single(
                        ix,
                        qz(sx * sy * sout * self.eps_sign(&u, &v)),
                    )
                } else {
                    AlgebraElement::zero()
                }
            }
        }
    }

    fn verify_jacobi(&self, sys: &RootSystem) -> Result<()> {
        let basis = self.basis();
        let n = basis.len();
        let check = |x: BasisIx, y: BasisIx, z: BasisIx| -> Result<()> {
            let a = ad(self, sys, &self.bracket_basis(sys, x, y), &AlgebraElement::single(z, qz(1)));
            let b = ad(self, sys, &self.bracket_basis(sys, y, z), &AlgebraElement::single(x, qz(1)));
            let c = ad(self, sys, &self.bracket_basis(sys, z, x), &AlgebraElement::single(y, qz(1)));
            if a.add(&b).add(&c).is_zero() {
                Ok(())
            } else {
                Err(Error::Inconsistent(format!(
                    "Jacobi fails on ({x:?}, {y:?}, {z:?})"
                )))
            }
        };
        if self.rank <= 5 {
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        check(basis[i], basis[j], basis[k])?;
                    }
                }
            }
        } else {
            // Deterministic LCG sample of 1000+ triples.
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 17) as usize
            };
            for _ in 0..1000 {
                let (i, j, k) = (next() % n, next() % n, next() % n);
                check(basis[i], basis[j], basis[k])?;
            }
        }
        Ok(())
    }
}

/// The bracket [X, Y], bilinear in sparse elements.
pub fn ad(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (ix, cx) in &x.terms {
        for (iy, cy) in &y.terms {
            let b = alg.bracket_basis(sys, *ix, *iy);
            for (iz, cz) in &b.terms {
                out.insert(*iz, cx * cy * cz);
            }
        }
    }
    out
}

/// The Killing-dual nilpotent of a covector: same coefficients on the f side
/// (basis-relative duality, pairing constant 1 per root).
pub fn dual_nilpotent(sys: &RootSystem, phi: &Covector) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (r, c) in phi.support(sys)? {
        let i = sys.positive_index(&r).expect("support root");
        out.insert(BasisIx::F(i), c);
    }
    Ok(out)
}

/// Coadjoint action ad*(X) phi = -phi o ad(X), computed exactly.
///
/// For each X-term a and phi-term d, the only basis directions c with
/// phi([x_a, x_c]) involving d are enumerated and the coefficient is read
/// off `bracket_basis`, which owns all sign conventions.
pub fn ad_star(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    x: &AlgebraElement,
    phi: &Covector,
) -> Covector {
    let mut out = Covector::zero();
    for (a, xa) in &x.terms {
        for (d, fd) in &phi.terms {
            let mut candidates: Vec<BasisIx> = Vec::new();
            match (a, d) {
                (BasisIx::H(_), _) => candidates.push(*d),
                (_, BasisIx::H(_)) => {
                    let u = alg.signed_vec(sys, *a).expect("root vector");
                    let neg: Vec<i64> = u.iter().map(|&c| -c).collect();
                    if let Some(cix) = alg.vec_to_ix(sys, &neg) {
                        candidates.push(cix);
                    }
                }
                _ => {
                    let u = alg.signed_vec(sys, *a).expect("root vector");
                    let b = alg.signed_vec(sys, *d).expect("root vector");
                    let diff: Vec<i64> = b.iter().zip(&u).map(|(bb, uu)| bb - uu).collect();
                    if diff.iter().all(|&c| c == 0) {
                        for k in 0..alg.rank {
                            candidates.push(BasisIx::H(k));
                        }
                    } else if let Some(cix) = alg.vec_to_ix(sys, &diff) {
                        candidates.push(cix);
                    }
                }
            }
            for c in candidates {
                let br = alg.bracket_basis(sys, *a, c);
                if let Some(coef) = br.terms.get(d) {
                    out.insert(c, -(xa * fd * coef));
                }
            }
        }
    }
    out
}

/// Coadjoint action of Exp(X): phi -> sum_k ad*(X)^k phi / k!, a finite sum.
/// Errors with NonNilpotent when the powers fail to terminate within dim g.
pub fn exp_ad_star(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    x: &AlgebraElement,
    phi: &Covector,
) -> Result<Covector> {
    let mut out = phi.clone();
    let mut term = phi.clone();
    for k in 1..=alg.dim() + 1 {
        term = ad_star(alg, sys, x, &term).scale(&Q::new(1.into(), k.into()));
        if term.is_zero() {
            return Ok(out);
        }
        out = out.add(&term);
    }
    Err(Error::NonNilpotent)
}

/// Public form of the exponentiated coadjoint action on positive-root duals.
pub fn exp_ad_apply(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    x: &AlgebraElement,
    phi: &Covector,
) -> Result<Covector> {
    exp_ad_star(alg, sys, x, phi)
}

/// Adjoint action of Exp(X) on the algebra.
pub fn exp_ad(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement> {
    let mut out = y.clone();
    let mut term = y.clone();
    for k in 1..=alg.dim() + 1 {
        term = ad(alg, sys, x, &term).scale(&Q::new(1.into(), k.into()));
        if term.is_zero() {
            return Ok(out);
        }
        out = out.add(&term);
    }
    Err(Error::NonNilpotent)
}

fn simple_e_f(sys: &RootSystem, j: usize) -> (AlgebraElement, AlgebraElement) {
    let i = sys
        .positive_index(&sys.simple(j))
        .expect("simple root is positive");
    (
        AlgebraElement::single(BasisIx::E(i), qz(1)),
        AlgebraElement::single(BasisIx::F(i), qz(1)),
    )
}

/// Exact coadjoint action of the standard representative
/// n_j = exp(e_j) exp(-f_j) exp(e_j) of a simple reflection.
pub fn simple_rep_on_covector(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    j: usize,
    phi: &Covector,
) -> Result<Covector> {
    let (e, f) = simple_e_f(sys, j);
    let step1 = exp_ad_star(alg, sys, &e, phi)?;
    let step2 = exp_ad_star(alg, sys, &f.neg(), &step1)?;
    exp_ad_star(alg, sys, &e, &step2)
}

/// Exact coadjoint action of a Weyl word (rightmost letter first).
pub fn word_on_covector(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    w: &WeylWord,
    phi: &Covector,
) -> Result<Covector> {
    let mut out = phi.clone();
    for &j in w.letters.iter().rev() {
        out = simple_rep_on_covector(alg, sys, j, &out)?;
    }
    Ok(out)
}

/// Exact adjoint action of the representative n_j on the algebra.
pub fn simple_rep_on_element(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    j: usize,
    y: &AlgebraElement,
) -> Result<AlgebraElement> {
    let (e, f) = simple_e_f(sys, j);
    let step1 = exp_ad(alg, sys, &e, y)?;
    let step2 = exp_ad(alg, sys, &f.neg(), &step1)?;
    exp_ad(alg, sys, &e, &step2)
}

/// Centralizer dimension of an element: the exact nullspace dimension of
/// Y -> [Y, f] over the rationals.
pub fn centralizer_dim(alg: &ChevalleyAlgebra, sys: &RootSystem, f: &AlgebraElement) -> usize {
    centralizer_dim_over(alg, sys, f, &alg.basis())
}

/// Centralizer dimension within the span of a basis subset.
pub fn centralizer_dim_over(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    f: &AlgebraElement,
    basis: &[BasisIx],
) -> usize {
    let cols: Vec<Vec<(usize, Q)>> = basis
        .iter()
        .map(|&ix| {
            let b = ad(alg, sys, &AlgebraElement::single(ix, qz(1)), f);
            b.terms
                .iter()
                .map(|(iz, c)| (iz.flat(alg.n_pos), c.clone()))
                .collect()
        })
        .collect();
    kernel_dim_sparse(&cols)
}

pub fn orbit_dim(alg: &ChevalleyAlgebra, sys: &RootSystem, f: &AlgebraElement) -> usize {
    alg.dim() - centralizer_dim(alg, sys, f)
}

/// Coadjoint orbit dimension of a functional: dim g minus the kernel of
/// Y -> ad*(Y) phi. Matches orbit_dim of the dual nilpotent, but works for
/// functionals with components on either root sign (e.g. Weyl translates).
pub fn coadjoint_orbit_dim(alg: &ChevalleyAlgebra, sys: &RootSystem, phi: &Covector) -> usize {
    let cols: Vec<Vec<(usize, Q)>> = alg
        .basis()
        .into_iter()
        .map(|ix| {
            let img = ad_star(alg, sys, &AlgebraElement::single(ix, qz(1)), phi);
            img.terms
                .iter()
                .map(|(iz, c)| (iz.flat(alg.n_pos), c.clone()))
                .collect()
        })
        .collect();
    alg.dim() - kernel_dim_sparse(&cols)
}

/// Orbit dimension of f within a Levi subalgebra (levi root vectors plus the
/// levi simple coroots; the central torus acts trivially in the adjoint
/// action so it does not affect orbit dimensions).
pub fn orbit_dim_in(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    levi: &Levi,
    f: &AlgebraElement,
) -> usize {
    let mut basis = Vec::new();
    for (i, r) in sys.positive_roots.iter().enumerate() {
        if levi.contains_root(r) {
            basis.push(BasisIx::E(i));
            basis.push(BasisIx::F(i));
        }
    }
    for &k in &levi.simples {
        basis.push(BasisIx::H(k));
    }
    basis.len() - centralizer_dim_over(alg, sys, f, &basis)
}

/// Complete an orthogonal-support covector to an sl2 triple (e, h, f):
/// h = sum of support coroots, f the dual nilpotent, e scaled by inverse
/// coefficients; the relations are verified exactly.
pub fn sl2_triple(
    alg: &ChevalleyAlgebra,
    sys: &RootSystem,
    phi: &Covector,
) -> Result<(AlgebraElement, CartanElement, AlgebraElement)> {
    let support = phi.support(sys)?;
    for (a, _) in &support {
        for (b, _) in &support {
            if a != b && sys.pairing(a, b)? != 0 {
                return Err(Error::NotOrthogonalSupport);
            }
        }
    }
    let f = dual_nilpotent(sys, phi)?;
    let mut e = AlgebraElement::zero();
    let mut h_cartan = CartanElement::zero(sys.rank);
    let mut h = AlgebraElement::zero();
    for (r, c) in &support {
        let i = sys.positive_index(r).expect("support root");
        e.insert(BasisIx::E(i), Q::one() / c);
        h_cartan = h_cartan.add(&CartanElement::coroot(sys, r));
        for (k, &m) in r.coeffs.iter().enumerate() {
            h.insert(BasisIx::H(k), qz(m));
        }
    }
    let ef = ad(alg, sys, &e, &f);
    if ef != h {
        return Err(Error::Inconsistent("[e, f] != h".into()));
    }
    if ad(alg, sys, &h, &e) != e.scale(&qz(2)) {
        return Err(Error::Inconsistent("[h, e] != 2e".into()));
    }
    if ad(alg, sys, &h, &f) != f.scale(&qz(-2)) {
        return Err(Error::Inconsistent("[h, f] != -2f".into()));
    }
    Ok((e, h_cartan, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(spec: &str) -> (RootSystem, ChevalleyAlgebra) {
        let sys = RootSystem::build_from_str(spec).unwrap();
        let alg = ChevalleyAlgebra::build(&sys).unwrap();
        (sys, alg)
    }

    #[test]
    fn a1_brackets() {
        let (sys, alg) = build("A1");
        let e = AlgebraElement::single(BasisIx::E(0), qz(1));
        let f = AlgebraElement::single(BasisIx::F(0), qz(1));
        let h = ad(&alg, &sys, &e, &f);
        assert_eq!(h, AlgebraElement::single(BasisIx::H(0), qz(1)));
        assert_eq!(ad(&alg, &sys, &h, &e), e.scale(&qz(2)));
        assert_eq!(ad(&alg, &sys, &h, &f), f.scale(&qz(-2)));
    }

    #[test]
    fn a2_structure_constant_is_unit() {
        let (sys, alg) = build("A2");
        let i1 = sys.positive_index(&sys.simple(0)).unwrap();
        let i2 = sys.positive_index(&sys.simple(1)).unwrap();
        let b = alg.bracket_basis(&sys, BasisIx::E(i1), BasisIx::E(i2));
        assert_eq!(b.terms.len(), 1);
        let (_, c) = b.terms.iter().next().unwrap();
        assert!(*c == qz(1) || *c == qz(-1));
    }

    #[test]
    fn ad_is_antisymmetric_and_x_x_zero() {
        let (sys, alg) = build("A3");
        let x = AlgebraElement::single(BasisIx::E(0), qz(2))
            .add(&AlgebraElement::single(BasisIx::F(3), qz(-1)));
        let y = AlgebraElement::single(BasisIx::E(2), qz(1))
            .add(&AlgebraElement::single(BasisIx::H(1), qz(3)));
        assert!(ad(&alg, &sys, &x, &x).is_zero());
        assert_eq!(ad(&alg, &sys, &x, &y), ad(&alg, &sys, &y, &x).neg());
    }

    #[test]
    fn a2_example_bracket_lands_in_expected_space() {
        let (sys, alg) = build("A2");
        // ad(e_{a1}, f_{a1+a2}) lies in g_{-a2} and is nonzero.
        let a1 = sys.positive_index(&sys.simple(0)).unwrap();
        let a12 = sys
            .positive_index(&sys.simple(0).add(&sys.simple(1)))
            .unwrap();
        let a2 = sys.positive_index(&sys.simple(1)).unwrap();
        let b = ad(
            &alg,
            &sys,
            &AlgebraElement::single(BasisIx::E(a1), qz(1)),
            &AlgebraElement::single(BasisIx::F(a12), qz(1)),
        );
        assert_eq!(b.terms.len(), 1);
        assert!(b.terms.contains_key(&BasisIx::F(a2)));
    }

    #[test]
    fn e8_bracket_table_closes_with_unit_constants() {
        let (sys, alg) = build("E8");
        assert_eq!(alg.dim(), 248);
        for i in 0..alg.n_pos {
            for j in 0..alg.n_pos {
                for (x, y) in [
                    (BasisIx::E(i), BasisIx::E(j)),
                    (BasisIx::E(i), BasisIx::F(j)),
                    (BasisIx::F(i), BasisIx::F(j)),
                ] {
                    let b = alg.bracket_basis(&sys, x, y);
                    for (iz, c) in &b.terms {
                        match iz {
                            BasisIx::H(_) => {}
                            _ => assert!(*c == qz(1) || *c == qz(-1)),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_nilpotent_maps_support_to_f_side() {
        let (sys, _alg) = build("D5");
        let phi = Covector::parse(&sys, "a4:1,a5:1").unwrap();
        let f = dual_nilpotent(&sys, &phi).unwrap();
        assert_eq!(f.terms.len(), 2);
        assert!(f.terms.keys().all(|ix| matches!(ix, BasisIx::F(_))));
        assert!(dual_nilpotent(&sys, &Covector::zero()).unwrap().is_zero());
    }

    #[test]
    fn sl2_triples() {
        let (sys, alg) = build("D5");
        // Support {a4: 1, a5: 1}: h = a4v + a5v, relations verified inside.
        let phi = Covector::parse(&sys, "a4:1,a5:1").unwrap();
        let (e, h, _f) = sl2_triple(&alg, &sys, &phi).unwrap();
        let expect = CartanElement::coroot(&sys, &sys.simple(3))
            .add(&CartanElement::coroot(&sys, &sys.simple(4)));
        assert_eq!(h, expect);
        // Coefficient scaling: support {a1: c} gives e-coefficient 1/c.
        let phi = Covector::parse(&sys, "a1:3/2").unwrap();
        let (e2, _, _) = sl2_triple(&alg, &sys, &phi).unwrap();
        let i1 = sys.positive_index(&sys.simple(0)).unwrap();
        assert_eq!(e2.terms[&BasisIx::E(i1)], crate::linalg::qr(2, 3));
        let _ = e;
        // Non-orthogonal support is rejected.
        let bad = Covector::parse(&sys, "a1:1,a2:1").unwrap();
        assert_eq!(
            sl2_triple(&alg, &sys, &bad).unwrap_err(),
            Error::NotOrthogonalSupport
        );
    }

    #[test]
    fn exp_ad_star_round_trip_and_first_order() {
        let (sys, alg) = build("A2");
        let phi = Covector::parse(&sys, "a1:1").unwrap();
        // X = 0 leaves phi unchanged.
        assert_eq!(
            exp_ad_apply(&alg, &sys, &AlgebraElement::zero(), &phi).unwrap(),
            phi
        );
        // First order matches ad* for a single step.
        let a2 = sys.positive_index(&sys.simple(1)).unwrap();
        let x = AlgebraElement::single(BasisIx::F(a2), qz(1));
        let once = ad_star(&alg, &sys, &x, &phi);
        let expd = exp_ad_apply(&alg, &sys, &x, &phi).unwrap();
        // Second order vanishes here, so exp = 1 + ad*.
        assert_eq!(expd, phi.add(&once));
        // Round trip: Exp(-X) Exp(X) phi = phi.
        let back = exp_ad_apply(&alg, &sys, &x.neg(), &expd).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn centralizer_dims_in_d5() {
        let (sys, alg) = build("D5");
        assert_eq!(alg.dim(), 45);
        // f = 0: centralizer is everything.
        assert_eq!(centralizer_dim(&alg, &sys, &AlgebraElement::zero()), 45);
        // (a4, a5)-class: orbit dimension 16; (a1, a3)-class: 20.
        let phi = Covector::parse(&sys, "a4:1,a5:1").unwrap();
        let f = dual_nilpotent(&sys, &phi).unwrap();
        assert_eq!(orbit_dim(&alg, &sys, &f), 16);
        let phi = Covector::parse(&sys, "a1:1,a3:1").unwrap();
        let f = dual_nilpotent(&sys, &phi).unwrap();
        assert_eq!(orbit_dim(&alg, &sys, &f), 20);
    }

    #[test]
    fn weyl_representative_action_permutes_root_duals() {
        let (sys, alg) = build("D4");
        for j in 0..sys.rank {
            for (i, r) in sys.positive_roots.iter().enumerate() {
                let phi = Covector {
                    terms: [(BasisIx::E(i), qz(1))].into_iter().collect(),
                };
                let out = simple_rep_on_covector(&alg, &sys, j, &phi).unwrap();
                assert_eq!(out.terms.len(), 1);
                let (ix, c) = out.terms.iter().next().unwrap();
                let img = crate::weyl::reflect(&sys, r, &sys.simple(j)).unwrap();
                let expect = if img.is_positive() {
                    BasisIx::E(sys.positive_index(&img).unwrap())
                } else {
                    BasisIx::F(sys.positive_index(&img.neg()).unwrap())
                };
                assert_eq!(*ix, expect);
                assert!(*c == qz(1) || *c == qz(-1));
            }
        }
    }
}
