//! Compiles the expansion formulas into explicit term trees with resolved
//! summation domains, Weyl words, character supports, and integration
//! domains, plus the support audit behind the cuspidality obstruction.
//!
//! Trees are renderable to JSON (round-trippable) and LaTeX; see `render`.

pub mod render;

use num_traits::One;

use crate::chevalley::{ChevalleyAlgebra, Covector};
use crate::error::{Error, Result};
use crate::grading::{
    self, b_set, classify_root, delta_root, gamma_prime_descriptor, gamma_step_descriptor,
    is_nice, lambda_descriptor, m_quotient_descriptor, psi_set, quasi_abelian_enumeration,
    CosetSpaceDescriptor, RootClass,
};
use crate::linalg::{qr, Q};
use crate::nilorbit::{self, OrbitClass, TransformStep};
use crate::root_system::{CartanElement, Root, RootSystem};
use crate::weyl::{self, WeylWord};
use crate::whittaker;

/// A character root with its display name ("alpha_8", "delta_8", ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRoot {
    pub root: Root,
    pub name: String,
    /// Summation / fixed-character variable ("varphi", "psi", "varphi'").
    pub var: String,
}

/// A named Weyl word ("gamma_8", "g_8") with its LaTeX form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedWord {
    pub name: String,
    pub latex: String,
    pub word: WeylWord,
}

/// One summation prefix of a Whittaker-type term, outermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Summation {
    /// Sum over a coset space, with its bound variable.
    Coset { var: String, desc: CosetSpaceDescriptor },
    /// Sum over the abelian group Omega (negatives of the listed roots).
    Omega { var: String, name: String, latex: String, roots: Vec<Root> },
    /// Sum over the nonzero elements of a root line g^x_{-root}.
    CharLattice(CharRoot),
    /// Sum over the whole level -2 of S_alpha (Heisenberg abelian block).
    Level2 { var: String, alpha: usize },
    /// Sum over a direct sum of dual root lines, zero included.
    DualSpan { var: String, name: String, latex: String, roots: Vec<Root> },
}

/// Factor of the translated argument, in display order before the final g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslateFactor {
    /// A bound coset/Omega variable, by its var name.
    Var(String),
    /// A fixed named Weyl word.
    Word(NamedWord),
    /// Symbolic Levi-part placeholder, with the concrete Weyl component when
    /// one has been computed.
    GammaZero { name: String, word: Option<WeylWord> },
}

/// Which coefficient the leaf denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffKind {
    /// A Whittaker coefficient W_phi.
    Whittaker,
    /// A parabolic Fourier coefficient F_{S_alpha, phi}.
    Parabolic { alpha: usize },
}

/// A sum of coefficients sharing one character shape and translate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitNode {
    pub kernel: CoeffKind,
    pub summations: Vec<Summation>,
    pub fixed_chars: Vec<CharRoot>,
    /// Conjugation applied to the whole character (Ad*(g_i)(...)).
    pub char_conjugator: Option<NamedWord>,
    pub translate: Vec<TranslateFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantNode {
    pub alpha: usize,
    pub levi: Vec<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegratedNode {
    pub v_name: String,
    pub v_latex: String,
    pub v_roots: Vec<Root>,
    pub word: NamedWord,
    pub inner: WhitNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergNode {
    pub omega_name: String,
    pub omega_latex: String,
    pub omega_roots: Vec<Root>,
    pub gamma: NamedWord,
    pub children: Vec<ExpansionTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermNode {
    Constant(ConstantNode),
    Whittaker(WhitNode),
    Integrated(IntegratedNode),
    Heisenberg(HeisenbergNode),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub label: String,
    pub provenance: String,
    pub multiplicity: Q,
    pub node: TermNode,
}

/// A finite term tree; `zero` marks the literal zero expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTree {
    pub theorem: String,
    pub type_spec: String,
    pub zero: bool,
    pub terms: Vec<ExpansionTerm>,
}

impl ExpansionTree {
    pub fn zero_tree(theorem: &str, type_spec: &str) -> Self {
        ExpansionTree {
            theorem: theorem.into(),
            type_spec: type_spec.into(),
            zero: true,
            terms: Vec::new(),
        }
    }

    /// Labels of the top-level terms, for shape assertions.
    pub fn labels(&self) -> Vec<String> {
        self.terms.iter().map(|t| t.label.clone()).collect()
    }
}

fn alpha_name(i: usize) -> String {
    format!("alpha_{}", i + 1)
}

fn simple_char(sys: &RootSystem, i: usize, var: &str) -> CharRoot {
    CharRoot { root: sys.simple(i), name: alpha_name(i), var: var.into() }
}

/// W_0[eta](g): the zero-character Whittaker coefficient.
fn w0_term() -> ExpansionTerm {
    ExpansionTerm {
        label: "W_0".into(),
        provenance: "zero-character Whittaker coefficient".into(),
        multiplicity: Q::one(),
        node: TermNode::Whittaker(WhitNode {
            kernel: CoeffKind::Whittaker,
            summations: vec![],
            fixed_chars: vec![],
            char_conjugator: None,
            translate: vec![],
        }),
    }
}

fn constant_term(sys: &RootSystem, alpha: usize, note: &str) -> ExpansionTerm {
    ExpansionTerm {
        label: "F_0".into(),
        provenance: note.into(),
        multiplicity: Q::one(),
        node: TermNode::Constant(ConstantNode {
            alpha,
            levi: (0..sys.rank).filter(|&j| j != alpha).collect(),
            note: note.into(),
        }),
    }
}

/// The word for the reflection in the highest root times s_beta on both
/// sides: the involutive element switching beta_i and the component highest
/// root, fixed as the gamma_i representative.
fn gamma_word(
    sys: &RootSystem,
    levi: &crate::root_system::Levi,
    beta: usize,
    index: usize,
) -> Result<NamedWord> {
    let amax = levi.highest_root_of_simple(sys, beta)?;
    let refl = weyl::reflection_word_over(sys, &levi.simples, &amax)?;
    let mut letters = vec![beta];
    letters.extend(&refl.letters);
    letters.push(beta);
    let word = WeylWord::from_letters(letters);
    debug_assert_eq!(weyl::apply(sys, &word, &sys.simple(beta))?, amax);
    Ok(NamedWord {
        name: format!("gamma_{index}"),
        latex: format!("\\gamma_{}", render::sub(index)),
        word,
    })
}

/// A_i of the minimal expansion: sum over Gamma_{i-1} and the char line of
/// beta_i.
fn a_term(sys: &RootSystem, order: &[usize], i: usize) -> ExpansionTerm {
    let beta = order[i - 1];
    let desc = gamma_step_descriptor(sys, &order[..i - 1], beta, i - 1);
    ExpansionTerm {
        label: format!("A_{i}"),
        provenance: format!("abelian step {i}"),
        multiplicity: Q::one(),
        node: TermNode::Whittaker(WhitNode {
            kernel: CoeffKind::Whittaker,
            summations: vec![
                Summation::Coset { var: "gamma".into(), desc },
                Summation::CharLattice(simple_char(sys, beta, "varphi")),
            ],
            fixed_chars: vec![],
            char_conjugator: None,
            translate: vec![TranslateFactor::Var("gamma".into())],
        }),
    }
}

/// B_i of a Heisenberg step: sum over Omega_i, translated by omega gamma_i.
fn b_term(sys: &RootSystem, order: &[usize], i: usize) -> Result<ExpansionTerm> {
    let beta = order[i - 1];
    let levi = sys.levi(&order[..i])?;
    let omega_roots = b_set(sys, &levi, beta)?;
    let gamma = gamma_word(sys, &levi, beta, i)?;
    Ok(ExpansionTerm {
        label: format!("B_{i}"),
        provenance: format!("Heisenberg step {i}"),
        multiplicity: Q::one(),
        node: TermNode::Whittaker(WhitNode {
            kernel: CoeffKind::Whittaker,
            summations: vec![
                Summation::Omega {
                    var: "omega".into(),
                    name: format!("Omega_{i}"),
                    latex: format!("\\Omega_{}", render::sub(i)),
                    roots: omega_roots,
                },
                Summation::CharLattice(simple_char(sys, beta, "varphi")),
            ],
            fixed_chars: vec![],
            char_conjugator: None,
            translate: vec![
                TranslateFactor::Var("omega".into()),
                TranslateFactor::Word(gamma),
            ],
        }),
    })
}

/// Minimal-function expansion: W_0 plus one C_i per enumeration step
/// (A_i, plus B_i at Heisenberg steps). With `one_step` the recursion stops
/// after the last step: a constant term plus C_n.
pub fn expand_min(sys: &RootSystem, order: &[usize], one_step: bool) -> Result<ExpansionTree> {
    let rep = quasi_abelian_enumeration(sys, order)?;
    if !rep.quasi_abelian {
        return Err(Error::NotQuasiAbelian(format!(
            "step classes: {:?}",
            rep.classes.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    let n = order.len();
    let mut terms = Vec::new();
    if one_step {
        terms.push(constant_term(
            sys,
            order[n - 1],
            "restriction to the Levi is minimal or trivial; re-expandable",
        ));
        terms.push(a_term(sys, order, n));
        if rep.classes[n - 1] == RootClass::Heisenberg {
            terms.push(b_term(sys, order, n)?);
        }
    } else {
        terms.push(w0_term());
        for i in 1..=n {
            terms.push(a_term(sys, order, i));
            if rep.classes[i - 1] == RootClass::Heisenberg {
                terms.push(b_term(sys, order, i)?);
            }
        }
    }
    Ok(ExpansionTree {
        theorem: "B".into(),
        type_spec: sys.type_name(),
        zero: false,
        terms,
    })
}

/// Default quasi-abelian enumeration of the simple roots orthogonal to
/// alpha: Bourbaki-ordered filtering, validated; failure is an error.
pub fn perp_enumeration(sys: &RootSystem, alpha: usize) -> Result<Vec<usize>> {
    let order: Vec<usize> = (0..sys.rank)
        .filter(|&j| j != alpha && sys.cartan[alpha][j] == 0)
        .collect();
    validate_perp_enumeration(sys, alpha, &order)?;
    Ok(order)
}

fn validate_perp_enumeration(sys: &RootSystem, alpha: usize, order: &[usize]) -> Result<()> {
    let perp: Vec<usize> = (0..sys.rank)
        .filter(|&j| j != alpha && sys.cartan[alpha][j] == 0)
        .collect();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != perp {
        return Err(Error::EnumerationViolation(format!(
            "not an enumeration of the simple roots orthogonal to a{}",
            alpha + 1
        )));
    }
    for i in 0..order.len() {
        let levi = sys.levi(&order[..=i])?;
        if classify_root(sys, &levi, order[i])? == RootClass::Neither {
            return Err(Error::NotQuasiAbelian(format!(
                "step {} (a{}) is neither abelian nor Heisenberg",
                i + 1,
                order[i] + 1
            )));
        }
    }
    Ok(())
}

/// Theorem-style single Fourier coefficient of a minimal function at a
/// maximal parabolic, by the orbit class of the character.
pub fn fourier_coeff_min(sys: &RootSystem, alpha: usize, class: OrbitClass) -> ExpansionTree {
    let mut tree = ExpansionTree {
        theorem: "A".into(),
        type_spec: sys.type_name(),
        zero: false,
        terms: vec![],
    };
    match class {
        OrbitClass::Zero => {
            tree.terms.push(constant_term(
                sys,
                alpha,
                "restriction to L_alpha is minimal or trivial",
            ));
        }
        OrbitClass::Minimal => {
            tree.terms.push(ExpansionTerm {
                label: "W".into(),
                provenance: "minimal character: single translated Whittaker coefficient".into(),
                multiplicity: Q::one(),
                node: TermNode::Whittaker(WhitNode {
                    kernel: CoeffKind::Whittaker,
                    summations: vec![],
                    fixed_chars: vec![simple_char(sys, alpha, "varphi'")],
                    char_conjugator: None,
                    translate: vec![TranslateFactor::GammaZero {
                        name: "gamma_0".into(),
                        word: None,
                    }],
                }),
            });
        }
        OrbitClass::NextToMinimal | OrbitClass::Larger => {
            tree.zero = true;
        }
    }
    tree
}

/// Collect the Weyl components of a transform into one word (the symbolic
/// gamma_0 carries this as its concrete Weyl part).
fn transform_weyl_part(t: &nilorbit::Transform) -> Option<WeylWord> {
    let mut letters = Vec::new();
    for step in t.steps.iter().rev() {
        if let TransformStep::Weyl(w) = step {
            letters.extend(w.letters.iter());
        }
    }
    if letters.is_empty() {
        None
    } else {
        Some(WeylWord::from_letters(letters))
    }
}

/// Theorem-style single Fourier coefficient of a next-to-minimal function:
/// dispatch on the class of the concrete character covector.
pub fn fourier_coeff_ntm(
    sys: &RootSystem,
    alg: &ChevalleyAlgebra,
    alpha: usize,
    phi: &Covector,
    perp_override: Option<&[usize]>,
) -> Result<ExpansionTree> {
    for r in phi.support_roots(sys)? {
        if r.coeffs[alpha] != 1 {
            return Err(Error::LevelMismatch(format!(
                "{} is not at level -2 of S_a{}",
                r.text(),
                alpha + 1
            )));
        }
    }
    let mut tree = ExpansionTree {
        theorem: "C".into(),
        type_spec: sys.type_name(),
        zero: false,
        terms: vec![],
    };
    let label = nilorbit::classify(sys, alg, phi)?;
    match label.class {
        OrbitClass::Zero => {
            tree.terms.push(constant_term(
                sys,
                alpha,
                "restriction to L_alpha is trivial, minimal, or next-to-minimal",
            ));
        }
        OrbitClass::Minimal => {
            let (t, _) = nilorbit::normal_form_min(sys, alg, phi, alpha)?;
            let gamma0 = TranslateFactor::GammaZero {
                name: "gamma_0".into(),
                word: transform_weyl_part(&t),
            };
            let psi = simple_char(sys, alpha, "psi");
            tree.terms.push(ExpansionTerm {
                label: "W".into(),
                provenance: "minimal character: leading Whittaker coefficient".into(),
                multiplicity: Q::one(),
                node: TermNode::Whittaker(WhitNode {
                    kernel: CoeffKind::Whittaker,
                    summations: vec![],
                    fixed_chars: vec![psi.clone()],
                    char_conjugator: None,
                    translate: vec![gamma0.clone()],
                }),
            });
            let perp = match perp_override {
                Some(o) => {
                    validate_perp_enumeration(sys, alpha, o)?;
                    o.to_vec()
                }
                None => perp_enumeration(sys, alpha)?,
            };
            for i in 1..=perp.len() {
                let beta = perp[i - 1];
                let levi = sys.levi(&perp[..i])?;
                let class = classify_root(sys, &levi, beta)?;
                let desc = gamma_step_descriptor(sys, &perp[..i - 1], beta, i - 1);
                tree.terms.push(ExpansionTerm {
                    label: format!("A_{i}"),
                    provenance: format!("psi-augmented abelian step {i}"),
                    multiplicity: Q::one(),
                    node: TermNode::Whittaker(WhitNode {
                        kernel: CoeffKind::Whittaker,
                        summations: vec![
                            Summation::Coset { var: "gamma".into(), desc },
                            Summation::CharLattice(simple_char(sys, beta, "varphi")),
                        ],
                        fixed_chars: vec![psi.clone()],
                        char_conjugator: None,
                        translate: vec![TranslateFactor::Var("gamma".into()), gamma0.clone()],
                    }),
                });
                if class == RootClass::Heisenberg {
                    let omega_roots = b_set(sys, &levi, beta)?;
                    let gamma = gamma_word(sys, &levi, beta, i)?;
                    tree.terms.push(ExpansionTerm {
                        label: format!("B_{i}"),
                        provenance: format!("psi-augmented Heisenberg step {i}"),
                        multiplicity: Q::one(),
                        node: TermNode::Whittaker(WhitNode {
                            kernel: CoeffKind::Whittaker,
                            summations: vec![
                                Summation::Omega {
                                    var: "omega".into(),
                                    name: format!("Omega_{i}"),
                                    latex: format!("\\Omega_{}", render::sub(i)),
                                    roots: omega_roots,
                                },
                                Summation::CharLattice(simple_char(sys, beta, "varphi")),
                            ],
                            fixed_chars: vec![psi.clone()],
                            char_conjugator: None,
                            translate: vec![
                                TranslateFactor::Var("omega".into()),
                                TranslateFactor::Word(gamma),
                                gamma0.clone(),
                            ],
                        }),
                    });
                }
            }
        }
        OrbitClass::NextToMinimal => {
            let (t, nf) = nilorbit::normal_form_ntm(sys, alg, phi, alpha)?;
            let support = nf.support_roots(sys)?;
            let beta = support
                .iter()
                .find(|r| **r != sys.simple(alpha))
                .cloned()
                .ok_or(Error::NotNtm)?;
            let (w, i, j) = weyl::pair_to_simple(sys, &sys.full_levi(), &sys.simple(alpha), &beta)?;
            let s_alpha = CartanElement::s_alpha(sys.rank, alpha);
            let v_roots = whittaker::v_gamma(sys, &w, &s_alpha);
            let word = NamedWord { name: "w".into(), latex: "w".into(), word: w };
            tree.terms.push(ExpansionTerm {
                label: "I".into(),
                provenance: "next-to-minimal character: integrated Whittaker coefficient".into(),
                multiplicity: Q::one(),
                node: TermNode::Integrated(IntegratedNode {
                    v_name: "V_gamma_0".into(),
                    v_latex: "V_{\\gamma_0}".into(),
                    v_roots,
                    word: word.clone(),
                    inner: WhitNode {
                        kernel: CoeffKind::Whittaker,
                        summations: vec![],
                        fixed_chars: vec![
                            simple_char(sys, i, "psi"),
                            simple_char(sys, j, "psi'"),
                        ],
                        char_conjugator: None,
                        translate: vec![
                            TranslateFactor::Word(word),
                            TranslateFactor::GammaZero {
                                name: "gamma_0".into(),
                                word: transform_weyl_part(&t),
                            },
                        ],
                    },
                }),
            });
        }
        OrbitClass::Larger => {
            tree.zero = true;
        }
    }
    Ok(tree)
}

/// The three cases of the nice-root decomposition of a next-to-minimal
/// function at a maximal parabolic.
pub fn theorem_d(sys: &RootSystem, alpha: usize) -> Result<ExpansionTree> {
    let full = sys.full_levi();
    if !is_nice(sys, &full, alpha)? {
        return Err(Error::NotNice);
    }
    let class = classify_root(sys, &full, alpha)?;
    let amax = sys.highest_root_of_simple(alpha).clone();
    let pair = sys.pairing(&sys.simple(alpha), &amax)?;
    let mut terms = vec![constant_term(
        sys,
        alpha,
        "restriction to L_alpha; re-expandable by induction",
    )];
    terms.push(ExpansionTerm {
        label: "A'".into(),
        provenance: "minimal characters over Gamma_alpha".into(),
        multiplicity: Q::one(),
        node: TermNode::Whittaker(WhitNode {
            kernel: CoeffKind::Parabolic { alpha },
            summations: vec![
                Summation::Coset {
                    var: "gamma".into(),
                    desc: grading::gamma_alpha_descriptor(sys, alpha),
                },
                Summation::CharLattice(simple_char(sys, alpha, "varphi")),
            ],
            fixed_chars: vec![],
            char_conjugator: None,
            translate: vec![TranslateFactor::Var("gamma".into())],
        }),
    });
    let case = if class == RootClass::Abelian && pair > 0 {
        "i"
    } else if class == RootClass::Abelian {
        "ii"
    } else {
        "iii"
    };
    if case != "i" {
        let delta = delta_root(sys, &full, alpha)?;
        let delta_char = CharRoot {
            root: delta.clone(),
            name: format!("delta_a{}", alpha + 1),
            var: "psi".into(),
        };
        let lam = lambda_descriptor(
            sys,
            &full,
            alpha,
            &delta,
            format!("Lambda_a{}", alpha + 1),
            format!("\\Lambda_{{\\alpha_{}}}", render::sub(alpha + 1)),
        );
        terms.push(ExpansionTerm {
            label: "A_Lambda".into(),
            provenance: "next-to-minimal characters over Lambda_alpha, multiplicity 1/2".into(),
            multiplicity: qr(1, 2),
            node: TermNode::Whittaker(WhitNode {
                kernel: CoeffKind::Parabolic { alpha },
                summations: vec![
                    Summation::Coset { var: "gamma".into(), desc: lam },
                    Summation::CharLattice(simple_char(sys, alpha, "varphi")),
                    Summation::CharLattice(delta_char.clone()),
                ],
                fixed_chars: vec![],
                char_conjugator: None,
                translate: vec![TranslateFactor::Var("gamma".into())],
            }),
        });
        if case == "iii" {
            let omega_roots = b_set(sys, &full, alpha)?;
            let gamma = {
                let amax_word = weyl::reflection_word_over(
                    sys,
                    &(0..sys.rank).collect::<Vec<_>>(),
                    &amax,
                )?;
                let mut letters = vec![alpha];
                letters.extend(&amax_word.letters);
                letters.push(alpha);
                NamedWord {
                    name: format!("gamma_a{}", alpha + 1),
                    latex: format!("\\gamma_{{\\alpha_{}}}", render::sub(alpha + 1)),
                    word: WeylWord::from_letters(letters),
                }
            };
            let m_desc = m_quotient_descriptor(
                sys,
                &full,
                alpha,
                &delta,
                format!("M_a{}", alpha + 1),
                format!("\\mathcal{{M}}_{{\\alpha_{}}}", render::sub(alpha + 1)),
            );
            let children = vec![
                ExpansionTerm {
                    label: "H_min".into(),
                    provenance: "non-abelian block, minimal characters".into(),
                    multiplicity: Q::one(),
                    node: TermNode::Whittaker(WhitNode {
                        kernel: CoeffKind::Parabolic { alpha },
                        summations: vec![Summation::CharLattice(simple_char(
                            sys, alpha, "varphi",
                        ))],
                        fixed_chars: vec![],
                        char_conjugator: None,
                        translate: vec![
                            TranslateFactor::Var("omega".into()),
                            TranslateFactor::Word(gamma.clone()),
                        ],
                    }),
                },
                ExpansionTerm {
                    label: "H_ntm".into(),
                    provenance: "non-abelian block, next-to-minimal characters".into(),
                    multiplicity: Q::one(),
                    node: TermNode::Whittaker(WhitNode {
                        kernel: CoeffKind::Parabolic { alpha },
                        summations: vec![
                            Summation::Coset { var: "gamma'".into(), desc: m_desc },
                            Summation::CharLattice(simple_char(sys, alpha, "varphi")),
                            Summation::CharLattice(delta_char),
                        ],
                        fixed_chars: vec![],
                        char_conjugator: None,
                        translate: vec![
                            TranslateFactor::Var("gamma'".into()),
                            TranslateFactor::Var("omega".into()),
                            TranslateFactor::Word(gamma.clone()),
                        ],
                    }),
                },
            ];
            terms.push(ExpansionTerm {
                label: "H".into(),
                provenance: "Heisenberg non-abelian block".into(),
                multiplicity: Q::one(),
                node: TermNode::Heisenberg(HeisenbergNode {
                    omega_name: format!("Omega_a{}", alpha + 1),
                    omega_latex: format!("\\Omega_{{\\alpha_{}}}", render::sub(alpha + 1)),
                    omega_roots,
                    gamma,
                    children,
                }),
            });
        }
    }
    let mut tree = ExpansionTree {
        theorem: "D".into(),
        type_spec: sys.type_name(),
        zero: false,
        terms,
    };
    tree.theorem = format!("D({case})");
    Ok(tree)
}

/// Next-to-minimal expansion over an enumeration whose first n-1 steps are
/// abelian for L_{n-1}. Emits W_0 + sum_i (A_i + A_ii + sum_j A_ij) plus the
/// B-family at a Heisenberg last step; A_nn/B_nn require the last root to be
/// nice and are omitted (with a provenance note) for the non-nice Heisenberg
/// root of type D.
pub fn expand_ntm(sys: &RootSystem, order: &[usize], one_step: bool) -> Result<ExpansionTree> {
    let rep = quasi_abelian_enumeration(sys, order)?;
    if !rep.quasi_abelian {
        return Err(Error::NotQuasiAbelian("enumeration has a 'neither' step".into()));
    }
    let n = order.len();
    for i in 0..n - 1 {
        if rep.classes[i] != RootClass::Abelian {
            return Err(Error::EnumerationViolation(format!(
                "step {} must be abelian for the prefix Levi",
                i + 1
            )));
        }
    }
    let last_heisenberg = rep.classes[n - 1] == RootClass::Heisenberg;
    let full = sys.full_levi();
    let last_nice = is_nice(sys, &full, order[n - 1])?;

    let mut terms = Vec::new();
    let start = if one_step {
        terms.push(constant_term(
            sys,
            order[n - 1],
            "restriction to the Levi; re-expandable by induction",
        ));
        n
    } else {
        terms.push(w0_term());
        1
    };
    for i in start..=n {
        terms.push(relabel(a_term(sys, order, i), &format!("A_{i}")));
        if let Some(t) = a_ii_term(sys, order, i)? {
            terms.push(t);
        }
        for j in 1..i {
            if sys.cartan[order[i - 1]][order[j - 1]] == 0 {
                terms.push(a_ij_term(sys, order, i, j));
            }
        }
    }
    if last_heisenberg {
        terms.push(relabel(b_term(sys, order, n)?, &format!("B_{n}")));
        if last_nice {
            terms.push(b_nn_term(sys, order)?);
        } else {
            // The Heisenberg root of type D is not nice; the B_nn and A_nn
            // families are undefined for it and omitted.
        }
        for j in 1..n {
            if sys.cartan[order[n - 1]][order[j - 1]] == 0 {
                terms.push(b_nj_term(sys, order, j)?);
            }
        }
    }
    let bourbaki: Vec<usize> = (0..sys.rank).collect();
    let theorem = if one_step && order == bourbaki && sys.components.len() == 1 {
        "F"
    } else {
        "E"
    };
    Ok(ExpansionTree {
        theorem: theorem.into(),
        type_spec: sys.type_name(),
        zero: false,
        terms,
    })
}

fn relabel(mut t: ExpansionTerm, label: &str) -> ExpansionTerm {
    t.label = label.into();
    t
}

/// A_ii: zero for an abelian step whose component highest root is not
/// orthogonal to beta_i; otherwise the half-multiplicity integrated sum over
/// Lambda_{beta_i} with the pair (beta_i, delta_i) conjugated to orthogonal
/// simple roots by g_i. None when the term is zero or undefined (non-nice).
fn a_ii_term(sys: &RootSystem, order: &[usize], i: usize) -> Result<Option<ExpansionTerm>> {
    let beta = order[i - 1];
    let levi = sys.levi(&order[..i])?;
    let class = classify_root(sys, &levi, beta)?;
    let amax = levi.highest_root_of_simple(sys, beta)?;
    if class == RootClass::Abelian && sys.pairing(&sys.simple(beta), &amax)? != 0 {
        return Ok(None);
    }
    if !is_nice(sys, &levi, beta)? {
        return Ok(None);
    }
    let delta = delta_root(sys, &levi, beta)?;
    let (g_word, _, _) = weyl::pair_to_simple(sys, &levi, &sys.simple(beta), &delta)?;
    let g = NamedWord {
        name: format!("g_{i}"),
        latex: format!("g_{}", render::sub(i)),
        word: g_word,
    };
    let s_beta = CartanElement::s_alpha(sys.rank, beta);
    let v_roots = whittaker::v_gamma_in(sys, &levi, &g.word, &s_beta);
    let lam = lambda_descriptor(
        sys,
        &levi,
        beta,
        &delta,
        format!("Lambda_b{i}"),
        format!("\\Lambda_{{\\beta_{}}}", render::sub(i)),
    );
    let inner = WhitNode {
        kernel: CoeffKind::Whittaker,
        summations: vec![
            Summation::Coset { var: "tilde-gamma".into(), desc: lam },
            Summation::CharLattice(simple_char(sys, beta, "varphi")),
            Summation::CharLattice(CharRoot {
                root: delta,
                name: format!("delta_{i}"),
                var: "psi".into(),
            }),
        ],
        fixed_chars: vec![],
        char_conjugator: Some(g.clone()),
        translate: vec![
            TranslateFactor::Word(g.clone()),
            TranslateFactor::Var("tilde-gamma".into()),
        ],
    };
    Ok(Some(ExpansionTerm {
        label: format!("A_{i}{i}"),
        provenance: format!("pair (beta_{i}, delta_{i}) over Lambda, multiplicity 1/2"),
        multiplicity: qr(1, 2),
        node: TermNode::Integrated(IntegratedNode {
            v_name: format!("V_g{i}"),
            v_latex: format!("V_{{g_{}}}", render::sub(i)),
            v_roots,
            word: g,
            inner,
        }),
    }))
}

/// A_ij: double coset sum with the two-root character (beta_i, beta_j).
fn a_ij_term(sys: &RootSystem, order: &[usize], i: usize, j: usize) -> ExpansionTerm {
    let beta_i = order[i - 1];
    let beta_j = order[j - 1];
    let desc_i = gamma_step_descriptor(sys, &order[..i - 1], beta_i, i - 1);
    let desc_j = gamma_step_descriptor(sys, &order[..j - 1], beta_j, j - 1);
    ExpansionTerm {
        label: format!("A_{i}{j}"),
        provenance: format!("orthogonal pair steps ({i}, {j})"),
        multiplicity: Q::one(),
        node: TermNode::Whittaker(WhitNode {
            kernel: CoeffKind::Whittaker,
            summations: vec![
                Summation::Coset { var: "gamma'".into(), desc: desc_i },
                Summation::CharLattice(simple_char(sys, beta_i, "varphi")),
                Summation::Coset { var: "gamma".into(), desc: desc_j },
                Summation::CharLattice(simple_char(sys, beta_j, "psi")),
            ],
            fixed_chars: vec![],
            char_conjugator: None,
            translate: vec![
                TranslateFactor::Var("gamma".into()),
                TranslateFactor::Var("gamma'".into()),
            ],
        }),
    }
}

/// B_nj: Omega and Gamma'_{j-1} sums with the character (beta_n, beta_j).
fn b_nj_term(sys: &RootSystem, order: &[usize], j: usize) -> Result<ExpansionTerm> {
    let n = order.len();
    let beta_n = order[n - 1];
    let beta_j = order[j - 1];
    let levi = sys.levi(order)?;
    let omega_roots = b_set(sys, &levi, beta_n)?;
    let gamma = gamma_word(sys, &levi, beta_n, n)?;
    let prime_levi: Vec<usize> = order[..j - 1]
        .iter()
        .copied()
        .filter(|&k| sys.cartan[beta_n][k] == 0)
        .collect();
    let desc = gamma_prime_descriptor(sys, &prime_levi, beta_j, j - 1);
    Ok(ExpansionTerm {
        label: format!("B_{n}{j}"),
        provenance: format!("non-abelian orthogonal pair steps ({n}, {j})"),
        multiplicity: Q::one(),
        node: TermNode::Whittaker(WhitNode {
            kernel: CoeffKind::Whittaker,
            summations: vec![
                Summation::Omega {
                    var: "omega".into(),
                    name: format!("Omega_{n}"),
                    latex: format!("\\Omega_{}", render::sub(n)),
                    roots: omega_roots,
                },
                Summation::CharLattice(simple_char(sys, beta_n, "varphi")),
                Summation::Coset { var: "gamma".into(), desc },
                Summation::CharLattice(simple_char(sys, beta_j, "psi")),
            ],
            fixed_chars: vec![],
            char_conjugator: None,
            translate: vec![
                TranslateFactor::Var("gamma".into()),
                TranslateFactor::Var("omega".into()),
                TranslateFactor::Word(gamma),
            ],
        }),
    })
}

/// B_nn: the non-abelian integrated family over Omega_n and the script-M
/// quotient, with the pair (beta_n, delta_n) conjugated by g_n.
fn b_nn_term(sys: &RootSystem, order: &[usize]) -> Result<ExpansionTerm> {
    let n = order.len();
    let beta = order[n - 1];
    let levi = sys.levi(order)?;
    let omega_roots = b_set(sys, &levi, beta)?;
    let gamma = gamma_word(sys, &levi, beta, n)?;
    let delta = delta_root(sys, &levi, beta)?;
    let (g_word, _, _) = weyl::pair_to_simple(sys, &levi, &sys.simple(beta), &delta)?;
    let g = NamedWord {
        name: format!("g_{n}"),
        latex: format!("g_{}", render::sub(n)),
        word: g_word,
    };
    let s_beta = CartanElement::s_alpha(sys.rank, beta);
    let v_roots = whittaker::v_gamma_in(sys, &levi, &g.word, &s_beta);
    let m_desc = m_quotient_descriptor(
        sys,
        &levi,
        beta,
        &delta,
        format!("M_b{n}"),
        format!("\\mathcal{{M}}_{{\\beta_{}}}", render::sub(n)),
    );
    let inner = WhitNode {
        kernel: CoeffKind::Whittaker,
        summations: vec![
            Summation::Omega {
                var: "omega".into(),
                name: format!("Omega_{n}"),
                latex: format!("\\Omega_{}", render::sub(n)),
                roots: omega_roots,
            },
            Summation::Coset { var: "tilde-gamma".into(), desc: m_desc },
            Summation::CharLattice(simple_char(sys, beta, "varphi")),
            Summation::CharLattice(CharRoot {
                root: delta,
                name: format!("delta_{n}"),
                var: "psi".into(),
            }),
        ],
        fixed_chars: vec![],
        char_conjugator: Some(g.clone()),
        translate: vec![
            TranslateFactor::Word(g.clone()),
            TranslateFactor::Var("tilde-gamma".into()),
            TranslateFactor::Var("omega".into()),
            TranslateFactor::Word(gamma),
        ],
    };
    Ok(ExpansionTerm {
        label: format!("B_{n}{n}"),
        provenance: "non-abelian pair (beta_n, delta_n) over script-M".into(),
        multiplicity: Q::one(),
        node: TermNode::Integrated(IntegratedNode {
            v_name: format!("V_g{n}"),
            v_latex: format!("V_{{g_{}}}", render::sub(n)),
            v_roots,
            word: g,
            inner,
        }),
    })
}

/// The one-step Bourbaki form for a simple system (type-A / D-E6-E7 / E8
/// case shapes, constant term left symbolic).
pub fn expand_ntm_bourbaki(sys: &RootSystem) -> Result<ExpansionTree> {
    if sys.components.len() != 1 {
        return Err(Error::EnumerationViolation(
            "the Bourbaki one-step form needs a simple system".into(),
        ));
    }
    expand_ntm(sys, &(0..sys.rank).collect::<Vec<_>>(), true)
}

/// The two-block decomposition along a Heisenberg parabolic: the abelian
/// block (all level -2 characters, symbolic) and the non-abelian block
/// (Omega-translated characters supported on Psi_alpha).
pub fn heisenberg_decomposition(sys: &RootSystem, alpha: usize) -> Result<ExpansionTree> {
    let full = sys.full_levi();
    if classify_root(sys, &full, alpha)? != RootClass::Heisenberg {
        return Err(Error::NotHeisenberg);
    }
    let omega_roots = b_set(sys, &full, alpha)?;
    let psi = psi_set(sys, &full, alpha)?;
    let amax = sys.highest_root_of_simple(alpha).clone();
    let gamma = {
        let amax_word =
            weyl::reflection_word_over(sys, &(0..sys.rank).collect::<Vec<_>>(), &amax)?;
        let mut letters = vec![alpha];
        letters.extend(&amax_word.letters);
        letters.push(alpha);
        NamedWord {
            name: format!("gamma_a{}", alpha + 1),
            latex: format!("\\gamma_{{\\alpha_{}}}", render::sub(alpha + 1)),
            word: WeylWord::from_letters(letters),
        }
    };
    let terms = vec![
        ExpansionTerm {
            label: "Ab".into(),
            provenance: "abelian block: all level -2 characters".into(),
            multiplicity: Q::one(),
            node: TermNode::Whittaker(WhitNode {
                kernel: CoeffKind::Parabolic { alpha },
                summations: vec![Summation::Level2 { var: "varphi".into(), alpha }],
                fixed_chars: vec![],
                char_conjugator: None,
                translate: vec![],
            }),
        },
        ExpansionTerm {
            label: "NonAb".into(),
            provenance: "non-abelian block over Omega_alpha and Psi_alpha".into(),
            multiplicity: Q::one(),
            node: TermNode::Whittaker(WhitNode {
                kernel: CoeffKind::Parabolic { alpha },
                summations: vec![
                    Summation::CharLattice(simple_char(sys, alpha, "varphi")),
                    Summation::Omega {
                        var: "omega".into(),
                        name: format!("Omega_a{}", alpha + 1),
                        latex: format!("\\Omega_{{\\alpha_{}}}", render::sub(alpha + 1)),
                        roots: omega_roots,
                    },
                    Summation::DualSpan {
                        var: "psi".into(),
                        name: format!("Psi_a{}", alpha + 1),
                        latex: format!("\\Psi_{{\\alpha_{}}}", render::sub(alpha + 1)),
                        roots: psi,
                    },
                ],
                fixed_chars: vec![],
                char_conjugator: None,
                translate: vec![
                    TranslateFactor::Var("omega".into()),
                    TranslateFactor::Word(gamma),
                ],
            }),
        },
    ];
    Ok(ExpansionTree {
        theorem: "Heis".into(),
        type_spec: sys.type_name(),
        zero: false,
        terms,
    })
}

/// One audited Whittaker leaf: its label, the character supports after the
/// recorded conjugation, and the verdict.
#[derive(Debug, Clone)]
pub struct AuditEntry {
    pub label: String,
    pub supports: Vec<Root>,
    pub simple_and_orthogonal: bool,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub ok: bool,
}

/// Audit every Whittaker leaf: after applying the recorded Weyl words, each
/// character support must lie in at most two orthogonal simple-root spaces.
pub fn audit_supports(sys: &RootSystem, tree: &ExpansionTree) -> Result<AuditReport> {
    let mut entries = Vec::new();
    for term in &tree.terms {
        audit_term(sys, term, &mut entries)?;
    }
    let ok = entries.iter().all(|e| e.simple_and_orthogonal);
    Ok(AuditReport { entries, ok })
}

fn audit_term(
    sys: &RootSystem,
    term: &ExpansionTerm,
    entries: &mut Vec<AuditEntry>,
) -> Result<()> {
    match &term.node {
        TermNode::Constant(_) => {}
        TermNode::Whittaker(w) => audit_whit(sys, &term.label, w, entries)?,
        TermNode::Integrated(i) => audit_whit(sys, &term.label, &i.inner, entries)?,
        TermNode::Heisenberg(h) => {
            for child in &h.children {
                audit_term(sys, child, entries)?;
            }
        }
    }
    Ok(())
}

fn audit_whit(
    sys: &RootSystem,
    label: &str,
    w: &WhitNode,
    entries: &mut Vec<AuditEntry>,
) -> Result<()> {
    if w.kernel != CoeffKind::Whittaker {
        return Ok(());
    }
    let mut roots: Vec<Root> = w.fixed_chars.iter().map(|c| c.root.clone()).collect();
    for s in &w.summations {
        if let Summation::CharLattice(c) = s {
            roots.push(c.root.clone());
        }
    }
    if let Some(g) = &w.char_conjugator {
        roots = roots
            .iter()
            .map(|r| weyl::apply(sys, &g.word, r))
            .collect::<Result<_>>()?;
    }
    let simples: Vec<Root> = (0..sys.rank).map(|i| sys.simple(i)).collect();
    let mut ok = roots.len() <= 2 && roots.iter().all(|r| simples.contains(r));
    if ok && roots.len() == 2 {
        ok = sys.pairing(&roots[0], &roots[1])? == 0;
    }
    entries.push(AuditEntry {
        label: label.into(),
        supports: roots,
        simple_and_orthogonal: ok,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyAlgebra;

    fn sys(spec: &str) -> RootSystem {
        RootSystem::build_from_str(spec).unwrap()
    }

    #[test]
    fn expand_min_a1_is_classical_fourier_series() {
        let a1 = sys("A1");
        let t = expand_min(&a1, &[0], false).unwrap();
        assert_eq!(t.labels(), vec!["W_0", "A_1"]);
    }

    #[test]
    fn expand_min_d4_example_shape() {
        let d4 = sys("D4");
        let t = expand_min(&d4, &[0, 2, 3, 1], false).unwrap();
        assert_eq!(t.labels(), vec!["W_0", "A_1", "A_2", "A_3", "A_4", "B_4"]);
        // The B_4 block carries the four Omega roots of the fixture.
        let TermNode::Whittaker(w) = &t.terms[5].node else { panic!() };
        let Summation::Omega { roots, .. } = &w.summations[0] else { panic!() };
        assert_eq!(roots.len(), 4);
        let expect: Vec<Root> = ["a1+a2", "a2+a3", "a2+a4", "a1+2a2+a3+a4"]
            .iter()
            .map(|s| d4.parse_root(s).unwrap())
            .collect();
        for r in expect {
            assert!(roots.contains(&r));
        }
    }

    #[test]
    fn expand_min_e8_one_step_shape() {
        let e8 = sys("E8");
        let t = expand_min(&e8, &(0..8).collect::<Vec<_>>(), true).unwrap();
        assert_eq!(t.labels(), vec!["F_0", "A_8", "B_8"]);
        // Non-quasi-abelian enumerations are rejected.
        let err = expand_min(&e8, &[7, 0, 1, 2, 3, 4, 5, 6], false).unwrap_err();
        assert!(matches!(err, Error::NotQuasiAbelian(_)));
    }

    #[test]
    fn expand_ntm_e8_bourbaki_term_multiset() {
        let e8 = sys("E8");
        let t = expand_ntm_bourbaki(&e8).unwrap();
        assert_eq!(t.theorem, "F");
        let labels = t.labels();
        let expect = [
            "F_0", "A_8", "A_88", "A_81", "A_82", "A_83", "A_84", "A_85", "A_86", "B_8",
            "B_88", "B_81", "B_82", "B_83", "B_84", "B_85", "B_86",
        ];
        assert_eq!(labels.len(), 17);
        for l in expect {
            assert!(labels.contains(&l.to_string()), "{l}");
        }
        // A_87 and B_87 must not exist: alpha7 is not orthogonal to alpha8.
        assert!(!labels.contains(&"A_87".to_string()));
        assert!(!labels.contains(&"B_87".to_string()));
    }

    #[test]
    fn expand_ntm_rank1_is_w0_plus_a1() {
        let a1 = sys("A1");
        let t = expand_ntm(&a1, &[0], false).unwrap();
        assert_eq!(t.labels(), vec!["W_0", "A_1"]);
    }

    #[test]
    fn expand_ntm_d4_families() {
        let d4 = sys("D4");
        let t = expand_ntm(&d4, &[0, 2, 3, 1], false).unwrap();
        let labels = t.labels();
        // Three mutually orthogonal abelian steps give three A_ij terms.
        for l in ["A_21", "A_31", "A_32", "B_4"] {
            assert!(labels.contains(&l.to_string()), "{l}");
        }
        // alpha2 is Heisenberg but not nice: no A_44/B_44.
        assert!(!labels.contains(&"A_44".to_string()));
        assert!(!labels.contains(&"B_44".to_string()));
        // No B_4j: nothing is orthogonal to the D4 center.
        assert!(labels.iter().all(|l| !l.starts_with("B_4") || l == "B_4"));
    }

    #[test]
    fn theorem_d_cases() {
        // A_n extreme root: case (i), no delta term.
        let a3 = sys("A3");
        let t = theorem_d(&a3, 0).unwrap();
        assert_eq!(t.theorem, "D(i)");
        assert_eq!(t.labels(), vec!["F_0", "A'"]);
        // E7 alpha7: case (ii) with delta = highest root.
        let e7 = sys("E7");
        let t = theorem_d(&e7, 6).unwrap();
        assert_eq!(t.theorem, "D(ii)");
        assert!(t.labels().contains(&"A_Lambda".to_string()));
        // E8 alpha8: case (iii).
        let e8 = sys("E8");
        let t = theorem_d(&e8, 7).unwrap();
        assert_eq!(t.theorem, "D(iii)");
        assert!(t.labels().contains(&"H".to_string()));
        // Non-nice root rejected.
        let d5 = sys("D5");
        assert!(matches!(theorem_d(&d5, 1), Err(Error::NotNice)));
    }

    #[test]
    fn fourier_coeff_min_cases() {
        let d5 = sys("D5");
        let t = fourier_coeff_min(&d5, 0, OrbitClass::Minimal);
        assert_eq!(t.labels(), vec!["W"]);
        let t = fourier_coeff_min(&d5, 0, OrbitClass::Zero);
        assert_eq!(t.labels(), vec!["F_0"]);
        let t = fourier_coeff_min(&d5, 0, OrbitClass::NextToMinimal);
        assert!(t.zero);
    }

    #[test]
    fn fourier_coeff_ntm_d5_cases() {
        let d5 = sys("D5");
        let alg = ChevalleyAlgebra::build(&d5).unwrap();
        // Minimal phi with the paper's perpendicular enumeration (a5, a4, a3).
        let phi = Covector::parse(&d5, "a1:1").unwrap();
        let t = fourier_coeff_ntm(&d5, &alg, 0, &phi, Some(&[4, 3, 2])).unwrap();
        assert_eq!(t.labels(), vec!["W", "A_1", "A_2", "A_3"]);
        // Gamma_0 and Gamma_1 are trivial, Gamma_2 has four cells.
        let descs: Vec<&CosetSpaceDescriptor> = t
            .terms
            .iter()
            .filter_map(|term| match &term.node {
                TermNode::Whittaker(w) => w.summations.iter().find_map(|s| match s {
                    Summation::Coset { desc, .. } => Some(desc),
                    _ => None,
                }),
                _ => None,
            })
            .collect();
        assert!(descs[0].is_trivial(&d5));
        assert!(descs[1].is_trivial(&d5));
        assert_eq!(descs[2].bruhat_cells(&d5).len(), 4);
        // ntm phi: integrated Whittaker coefficient.
        let amax = d5.highest_roots[0].clone();
        let phi = Covector::parse(&d5, &format!("a1:1,{}:1", amax.text())).unwrap();
        let t = fourier_coeff_ntm(&d5, &alg, 0, &phi, None).unwrap();
        assert_eq!(t.terms.len(), 1);
        let TermNode::Integrated(node) = &t.terms[0].node else { panic!() };
        assert!(!node.v_roots.is_empty());
        // Larger phi: zero tree. (a1+a2 pairs +1 with a1 but the third
        // support root makes it larger.)
        let bad = Covector::parse(&d5, "a1:1,a1+2a2+2a3+a4+a5:1,a1+a2+a3+a4:1").unwrap();
        let lab = nilorbit::classify(&d5, &alg, &bad).unwrap();
        if lab.class == OrbitClass::Larger {
            let t = fourier_coeff_ntm(&d5, &alg, 0, &bad, None).unwrap();
            assert!(t.zero);
        }
        // Level mismatch rejected.
        let off = Covector::parse(&d5, "a2:1").unwrap();
        assert!(matches!(
            fourier_coeff_ntm(&d5, &alg, 0, &off, None),
            Err(Error::LevelMismatch(_))
        ));
    }

    #[test]
    fn fourier_coeff_ntm_d4_alpha2_collapses() {
        // I^{perp alpha2} is empty in D4: bare leading Whittaker coefficient.
        let d4 = sys("D4");
        let alg = ChevalleyAlgebra::build(&d4).unwrap();
        let phi = Covector::parse(&d4, "a2:1").unwrap();
        let t = fourier_coeff_ntm(&d4, &alg, 1, &phi, None).unwrap();
        assert_eq!(t.labels(), vec!["W"]);
    }

    #[test]
    fn heisenberg_decomposition_shapes() {
        let e8 = sys("E8");
        let t = heisenberg_decomposition(&e8, 7).unwrap();
        assert_eq!(t.labels(), vec!["Ab", "NonAb"]);
        let TermNode::Whittaker(w) = &t.terms[1].node else { panic!() };
        let Summation::DualSpan { roots, .. } = &w.summations[2] else { panic!() };
        assert_eq!(roots.len(), 28);
        // E6 alpha2 block is well-formed.
        let e6 = sys("E6");
        assert!(heisenberg_decomposition(&e6, 1).is_ok());
        // Non-Heisenberg root rejected.
        assert!(matches!(
            heisenberg_decomposition(&e8, 0),
            Err(Error::NotHeisenberg)
        ));
    }

    #[test]
    fn audit_passes_on_generated_trees() {
        let e8 = sys("E8");
        let t = expand_ntm_bourbaki(&e8).unwrap();
        let rep = audit_supports(&e8, &t).unwrap();
        assert!(rep.ok);
        assert!(!rep.entries.is_empty());
        let d4 = sys("D4");
        let t = expand_min(&d4, &[0, 2, 3, 1], false).unwrap();
        assert!(audit_supports(&d4, &t).unwrap().ok);
        // Zero tree: empty report.
        let z = ExpansionTree::zero_tree("A", "D4");
        let rep = audit_supports(&d4, &z).unwrap();
        assert!(rep.ok && rep.entries.is_empty());
    }
}
