//! Whittaker pairs (S, phi), the unipotent n_{S,phi}, neutral pairs,
//! domination, exchange domains, and the V_gamma root lists.

use num_traits::{One, Zero};

use crate::chevalley::{
    ad, ad_star, dual_nilpotent, sl2_triple, AlgebraElement, BasisIx, ChevalleyAlgebra, Covector,
};
use crate::error::{Error, Result};
use crate::linalg::{qz, Mat, Q};
use crate::root_system::{CartanElement, Levi, Root, RootSystem};
use crate::weyl::{self, WeylWord};

/// A validated Whittaker pair: every support root of phi has eval(S, .) = 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhittakerPair {
    pub s: CartanElement,
    pub phi: Covector,
    /// Set when n_{S,phi} is the full positive unipotent.
    pub standard: bool,
}

/// Validate and build a pair; rejects support roots off weight 2 with the
/// offending roots listed.
pub fn make_pair(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    s: &CartanElement,
    phi: &Covector,
) -> Result<WhittakerPair> {
    let two = qz(2);
    let bad: Vec<String> = phi
        .support_roots(sys)?
        .into_iter()
        .filter(|r| s.eval(r) != two)
        .map(|r| r.text())
        .collect();
    if !bad.is_empty() {
        return Err(Error::NotWeightMinusTwo(bad.join(", ")));
    }
    let n = n_pair_roots(sys, alg, s, phi)?;
    let standard = n.len() == sys.n_positive() && n.iter().all(Root::is_positive);
    Ok(WhittakerPair { s: s.clone(), phi: phi.clone(), standard })
}

/// Root list of n_{S,phi}: roots with eval > 1, plus the eval = 1 roots
/// whose vectors centralize phi (for even S the second set is empty).
pub fn n_pair_roots(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    s: &CartanElement,
    phi: &Covector,
) -> Result<Vec<Root>> {
    let one = Q::one();
    let mut out = Vec::new();
    for r in sys.all_roots() {
        let v = s.eval(&r);
        if v > one {
            out.push(r);
        } else if v == one {
            let ix = root_basis(sys, &r);
            let img = ad_star(alg, sys, &AlgebraElement::single(ix, qz(1)), phi);
            if img.is_zero() {
                out.push(r);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn root_basis(sys: &RootSystem, r: &Root) -> BasisIx {
    if r.is_positive() {
        BasisIx::E(sys.positive_index(r).expect("root"))
    } else {
        BasisIx::F(sys.positive_index(&r.neg()).expect("root"))
    }
}

/// Express a Cartan element in the simple-coroot basis of the algebra.
pub fn cartan_to_element(sys: &RootSystem, h: &CartanElement) -> Result<AlgebraElement> {
    let mat = Mat::from_rows(
        (0..sys.rank)
            .map(|i| (0..sys.rank).map(|k| qz(sys.cartan[i][k])).collect())
            .collect(),
    );
    let t = mat.solve(&h.coords).ok_or(Error::NoSolution)?;
    let mut out = AlgebraElement::zero();
    for (k, c) in t.into_iter().enumerate() {
        out.insert(BasisIx::H(k), c);
    }
    Ok(out)
}

/// Neutrality of (h, phi): h pairs to 2 with every support root and h lies
/// in the image of ad(f_phi) restricted to the h-level-2 root vectors
/// (the Jacobson-Morozov completion criterion).
pub fn is_neutral(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    h: &CartanElement,
    phi: &Covector,
) -> Result<bool> {
    if phi.is_zero() {
        return Ok(h.coords.iter().all(Q::is_zero));
    }
    let two = qz(2);
    if phi.support_roots(sys)?.iter().any(|r| h.eval(r) != two) {
        return Ok(false);
    }
    let f = dual_nilpotent(sys, phi)?;
    let h_elem = cartan_to_element(sys, h)?;
    let level2: Vec<BasisIx> = sys
        .all_roots()
        .into_iter()
        .filter(|r| h.eval(r) == two)
        .map(|r| root_basis(sys, &r))
        .collect();
    if level2.is_empty() {
        return Ok(false);
    }
    let cols: Vec<AlgebraElement> = level2
        .iter()
        .map(|&ix| ad(alg, sys, &AlgebraElement::single(ix, qz(1)), &f))
        .collect();
    // Rows over all basis directions reached by the columns or by h.
    let mut rows: Vec<BasisIx> = Vec::new();
    for c in cols.iter().chain(std::iter::once(&h_elem)) {
        for ix in c.terms.keys() {
            if !rows.contains(ix) {
                rows.push(*ix);
            }
        }
    }
    let mat = Mat::from_rows(
        rows.iter()
            .map(|d| {
                cols.iter()
                    .map(|c| c.terms.get(d).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect(),
    );
    let rhs: Vec<Q> = rows
        .iter()
        .map(|d| h_elem.terms.get(d).cloned().unwrap_or_else(Q::zero))
        .collect();
    Ok(mat.solve(&rhs).is_some())
}

/// Neutral pair for an orthogonal-support covector: h is the sum of the
/// support coroots, certified by the sl2 relations.
pub fn neutral_pair(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    phi: &Covector,
) -> Result<WhittakerPair> {
    let (_, h, _) = sl2_triple(alg, sys, phi)?;
    debug_assert!(is_neutral(sys, alg, &h, phi)?);
    make_pair(sys, alg, &h, phi)
}

/// Domination check g_phi n g^H_{>=1} subset g^{S-H}_{>=0}, by exact linear
/// algebra on the bigraded blocks of the centralizer (phi is homogeneous of
/// weight -2 for both H and S, so its centralizer is bigraded).
pub fn dominates(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    h: &CartanElement,
    phi: &Covector,
    s: &CartanElement,
) -> Result<bool> {
    let two = qz(2);
    for r in phi.support_roots(sys)? {
        if h.eval(&r) != two || s.eval(&r) != two {
            return Err(Error::NotWeightMinusTwo(r.text()));
        }
    }
    let diff = s.sub(h);
    let mut blocks: std::collections::BTreeMap<(Q, Q), Vec<Root>> =
        std::collections::BTreeMap::new();
    for r in sys.all_roots() {
        let a = h.eval(&r);
        let b = diff.eval(&r);
        if a >= Q::one() && b < Q::zero() {
            blocks.entry((a, b)).or_default().push(r);
        }
    }
    for (_, roots) in blocks {
        let cols: Vec<Vec<(usize, Q)>> = roots
            .iter()
            .map(|r| {
                let img = ad_star(
                    alg,
                    sys,
                    &AlgebraElement::single(root_basis(sys, r), qz(1)),
                    phi,
                );
                img.terms
                    .iter()
                    .map(|(ix, c)| (ix.flat(alg.n_pos), c.clone()))
                    .collect()
            })
            .collect();
        if crate::linalg::kernel_dim_sparse(&cols) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The exchange domain of Theorem-style integral transfer: the root list of
/// v = g^H_{>1} n g^S_{<1}, with the applicability flag g^H_1 = g^S_1 = 0.
#[derive(Debug, Clone)]
pub struct IntTransDomain {
    pub v_roots: Vec<Root>,
    pub applicable: bool,
}

pub fn inttrans_domain(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    h: &CartanElement,
    s: &CartanElement,
    phi: &Covector,
) -> Result<IntTransDomain> {
    if !dominates(sys, alg, h, phi, s)? {
        return Err(Error::NotDominating);
    }
    let one = Q::one();
    let mut v_roots = Vec::new();
    let mut applicable = true;
    for r in sys.all_roots() {
        let a = h.eval(&r);
        let b = s.eval(&r);
        if a > one && b < one {
            v_roots.push(r.clone());
        }
        if a == one || b == one {
            applicable = false;
        }
    }
    v_roots.sort();
    Ok(IntTransDomain { v_roots, applicable })
}

/// V_gamma root list: negative roots eps with eval(S, w^{-1} eps) > 1.
pub fn v_gamma(sys: &RootSystem, w: &WeylWord, s: &CartanElement) -> Vec<Root> {
    v_gamma_in(sys, &sys.full_levi(), w, s)
}

/// V_gamma within a Levi view (negative view roots only).
pub fn v_gamma_in(sys: &RootSystem, within: &Levi, w: &WeylWord, s: &CartanElement) -> Vec<Root> {
    let winv = w.inverse();
    let one = Q::one();
    let mut out: Vec<Root> = within
        .positive_roots(sys)
        .into_iter()
        .map(|r| r.neg())
        .filter(|r| {
            weyl::apply(sys, &winv, r)
                .map(|img| s.eval(&img) > one)
                .unwrap_or(false)
        })
        .collect();
    out.sort();
    out
}

/// JSON form of a pair: {"S": {"coweights": {"a1": "2"}}, "phi": {...}}.
pub fn pair_to_json(sys: &RootSystem, pair: &WhittakerPair) -> serde_json::Value {
    let mut coweights = serde_json::Map::new();
    for (i, c) in pair.s.coords.iter().enumerate() {
        if !c.is_zero() {
            coweights.insert(format!("a{}", i + 1), serde_json::Value::String(c.to_string()));
        }
    }
    let mut phi = serde_json::Map::new();
    for (r, c) in pair.phi.support(sys).unwrap_or_default() {
        phi.insert(r.text(), serde_json::Value::String(c.to_string()));
    }
    serde_json::json!({
        "S": {"coweights": coweights},
        "phi": phi,
        "standard": pair.standard,
    })
}
