//! Deterministic JSON and LaTeX rendering of expansion trees, and the JSON
//! parser that round-trips them.

use num_traits::One;
use serde_json::{json, Map, Value};

use super::{
    CharRoot, CoeffKind, ConstantNode, ExpansionTerm, ExpansionTree, HeisenbergNode,
    IntegratedNode, NamedWord, Summation, TermNode, TranslateFactor, WhitNode,
};
use crate::error::{Error, Result};
use crate::grading::{CosetKind, CosetSpaceDescriptor};
use crate::linalg::Q;
use crate::root_system::{Root, RootSystem};
use crate::weyl::WeylWord;

/// Subscript text: braced when longer than one character.
pub fn sub(n: usize) -> String {
    if n < 10 {
        n.to_string()
    } else {
        format!("{{{n}}}")
    }
}

fn sub_expr(s: &str) -> String {
    let single_char = s.chars().count() == 1;
    let control_word = s.starts_with('\\') && s[1..].chars().all(|c| c.is_ascii_alphabetic());
    if single_char || control_word {
        s.into()
    } else {
        format!("{{{s}}}")
    }
}

fn var_latex(v: &str) -> String {
    match v {
        "gamma" => "\\gamma".into(),
        "gamma'" => "\\gamma'".into(),
        "tilde-gamma" => "\\tilde\\gamma".into(),
        "omega" => "\\omega".into(),
        "varphi" => "\\varphi".into(),
        "varphi'" => "\\varphi'".into(),
        "psi" => "\\psi".into(),
        "psi'" => "\\psi'".into(),
        other => format!("\\mathrm{{{other}}}"),
    }
}

fn char_latex(c: &CharRoot) -> String {
    if let Some(idx) = c.name.strip_prefix("alpha_") {
        if let Ok(n) = idx.parse::<usize>() {
            return format!("\\alpha_{}", sub(n));
        }
    }
    if let Some(idx) = c.name.strip_prefix("delta_a") {
        if let Ok(n) = idx.parse::<usize>() {
            return format!("\\delta_{{\\alpha_{}}}", sub(n));
        }
    }
    if let Some(idx) = c.name.strip_prefix("delta_") {
        if let Ok(n) = idx.parse::<usize>() {
            return format!("\\delta_{}", sub(n));
        }
    }
    c.root.latex()
}

fn mult_latex(q: &Q) -> String {
    if q.is_one() {
        String::new()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn summation_latex(s: &Summation) -> String {
    match s {
        Summation::Coset { var, desc } => {
            format!("\\sum_{{{}\\in{}}}", var_latex(var), desc.latex)
        }
        Summation::Omega { var, latex, .. } => {
            format!("\\sum_{{{}\\in{}}}", var_latex(var), latex)
        }
        Summation::CharLattice(c) => format!(
            "\\sum_{{{}\\in\\mathfrak{{g}}^\\times_{{-{}}}}}",
            var_latex(&c.var),
            char_latex(c)
        ),
        Summation::Level2 { var, alpha } => format!(
            "\\sum_{{{}\\in(\\mathfrak{{g}}^*)^{{S_{{\\alpha_{}}}}}_{{-2}}}}",
            var_latex(var),
            sub(alpha + 1)
        ),
        Summation::DualSpan { var, latex, .. } => format!(
            "\\sum_{{{}\\in\\bigoplus_{{\\varepsilon\\in{}}}\\mathfrak{{g}}^*_{{-\\varepsilon}}}}",
            var_latex(var),
            latex
        ),
    }
}

fn kernel_char_expr(w: &WhitNode) -> String {
    let mut parts: Vec<String> = w.fixed_chars.iter().map(|c| var_latex(&c.var)).collect();
    for s in &w.summations {
        match s {
            Summation::CharLattice(c) => parts.push(var_latex(&c.var)),
            Summation::Level2 { var, .. } | Summation::DualSpan { var, .. } => {
                parts.push(var_latex(var))
            }
            _ => {}
        }
    }
    if parts.is_empty() {
        return "0".into();
    }
    let joined = parts.join("+");
    match &w.char_conjugator {
        Some(g) => format!("\\operatorname{{Ad}}^*({})({})", g.latex, joined),
        None => joined,
    }
}

fn translate_latex(factors: &[TranslateFactor], with_v: bool) -> String {
    let mut s = String::new();
    if with_v {
        s.push('v');
    }
    for f in factors {
        match f {
            TranslateFactor::Var(v) => s.push_str(&var_latex(v)),
            TranslateFactor::Word(w) => s.push_str(&w.latex),
            TranslateFactor::GammaZero { .. } => s.push_str("\\gamma_0"),
        }
    }
    format!("({s} g)")
}

fn whit_latex(w: &WhitNode, with_v: bool) -> String {
    let mut s = String::new();
    for summ in &w.summations {
        s.push_str(&summation_latex(summ));
    }
    let kernel = match &w.kernel {
        CoeffKind::Whittaker => format!("\\mathcal{{W}}_{}", sub_expr(&kernel_char_expr(w))),
        CoeffKind::Parabolic { alpha } => format!(
            "\\mathcal{{F}}_{{S_{{\\alpha_{}}},{}}}",
            sub(alpha + 1),
            kernel_char_expr(w)
        ),
    };
    s.push_str(&kernel);
    s.push_str("[\\eta]");
    s.push_str(&translate_latex(&w.translate, with_v));
    s
}

/// LaTeX form of one term node (multiplicity included, no underbrace).
pub fn term_latex(term: &ExpansionTerm) -> String {
    let mut s = mult_latex(&term.multiplicity);
    match &term.node {
        TermNode::Constant(c) => {
            s.push_str(&format!(
                "\\mathcal{{F}}_{{S_{{\\alpha_{}}},0}}[\\eta](g)",
                sub(c.alpha + 1)
            ));
        }
        TermNode::Whittaker(w) => s.push_str(&whit_latex(w, false)),
        TermNode::Integrated(i) => {
            // Sums outside the integral, the conjugating word inside the
            // argument after the integration variable.
            for summ in &i.inner.summations {
                s.push_str(&summation_latex(summ));
            }
            s.push_str(&format!("\\int_{{{}}}", i.v_latex));
            let kernel = match &i.inner.kernel {
                CoeffKind::Whittaker => {
                    format!("\\mathcal{{W}}_{}", sub_expr(&kernel_char_expr(&i.inner)))
                }
                CoeffKind::Parabolic { alpha } => format!(
                    "\\mathcal{{F}}_{{S_{{\\alpha_{}}},{}}}",
                    sub(alpha + 1),
                    kernel_char_expr(&i.inner)
                ),
            };
            s.push_str(&kernel);
            s.push_str("[\\eta]");
            s.push_str(&translate_latex(&i.inner.translate, true));
            s.push_str("\\,dv");
        }
        TermNode::Heisenberg(h) => {
            s.push_str(&format!("\\sum_{{\\omega\\in{}}}", h.omega_latex));
            s.push_str("\\left(");
            let parts: Vec<String> = h.children.iter().map(term_latex).collect();
            s.push_str(&parts.join("+"));
            s.push_str("\\right)");
        }
    }
    s
}

/// Options for the LaTeX document renderer.
#[derive(Debug, Clone, Default)]
pub struct LatexOptions {
    /// Wrap in a compilable standalone document.
    pub standalone: bool,
    /// Mark terms with \underbrace labels as in the explicit displays.
    pub underbraces: bool,
}

fn label_latex(label: &str) -> String {
    match label.split_once('_') {
        Some((head, idx)) => format!("{head}_{}", if idx.len() == 1 { idx.into() } else { format!("{{{idx}}}") }),
        None => label.into(),
    }
}

/// Render a whole tree as a LaTeX display.
pub fn latex(tree: &ExpansionTree, opts: &LatexOptions) -> String {
    let lhs = match tree.theorem.as_str() {
        "B" => "\\eta_{\\mathrm{min}}(g)",
        "A" => "\\mathcal{F}_{S_{\\alpha},\\varphi}[\\eta_{\\mathrm{min}}](g)",
        "C" => "\\mathcal{F}_{S_{\\alpha},\\varphi}[\\eta_{\\mathrm{ntm}}](g)",
        "Heis" => "\\eta(g)",
        _ => "\\eta_{\\mathrm{ntm}}(g)",
    };
    let body = if tree.zero {
        "0".to_string()
    } else {
        tree.terms
            .iter()
            .map(|t| {
                let core = term_latex(t);
                if opts.underbraces && t.label != "W_0" && t.label != "F_0" {
                    format!("\\underbrace{{{core}}}_{{{}}}", label_latex(&t.label))
                } else {
                    core
                }
            })
            .collect::<Vec<_>>()
            .join("\n  + ")
    };
    let display = format!("{lhs} = {body}");
    if opts.standalone {
        format!(
            "\\documentclass{{article}}\n\\usepackage{{amsmath,amssymb}}\n\
             \\usepackage[margin=1cm,landscape]{{geometry}}\n\\begin{{document}}\n\
             \\begin{{dmath*}}\n{display}\n\\end{{dmath*}}\n\\end{{document}}\n"
        )
        .replace("dmath*", "align*")
        .replace(" = ", " ={}& ")
    } else {
        display
    }
}

fn roots_json(roots: &[Root]) -> Value {
    Value::Array(roots.iter().map(|r| Value::String(r.text())).collect())
}

fn parse_roots(sys: &RootSystem, v: &Value) -> Result<Vec<Root>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected root array".into()))?
        .iter()
        .map(|x| sys.parse_root(str_of(x)?))
        .collect()
}

fn q_string(q: &Q) -> String {
    q.to_string()
}

fn parse_q(s: &str) -> Result<Q> {
    s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

fn word_json(w: &NamedWord) -> Value {
    json!({"name": w.name, "latex": w.latex, "word": w.word.text()})
}

fn parse_named_word(sys: &RootSystem, v: &Value) -> Result<NamedWord> {
    Ok(NamedWord {
        name: str_of(&v["name"])?.into(),
        latex: str_of(&v["latex"])?.into(),
        word: WeylWord::parse(str_of(&v["word"])?, sys.rank)?,
    })
}

/// Descriptor JSON; Bruhat cells and factors are included on demand.
pub fn descriptor_json(
    sys: &RootSystem,
    d: &CosetSpaceDescriptor,
    with_cells: bool,
) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::String(d.name.clone()));
    m.insert("latex".into(), Value::String(d.latex.clone()));
    m.insert("kind".into(), Value::String(d.kind.as_str().into()));
    m.insert(
        "levi".into(),
        Value::Array(
            d.levi
                .iter()
                .map(|i| Value::String(format!("a{}", i + 1)))
                .collect(),
        ),
    );
    m.insert("stabilized".into(), roots_json(&d.stabilized));
    m.insert("parabolic_nonpositive_coroot".into(), roots_json(&d.stabilized));
    m.insert("multiplicity".into(), Value::String(q_string(&d.multiplicity)));
    if with_cells {
        let cells: Vec<Value> = d
            .bruhat_cells(sys)
            .into_iter()
            .map(|c| {
                json!({
                    "word": c.word.text(),
                    "unipotent_roots": roots_json(&c.unipotent_roots),
                })
            })
            .collect();
        m.insert("bruhat_cells".into(), Value::Array(cells));
        let factors: Vec<Value> = d
            .factors(sys)
            .into_iter()
            .map(|(t, n)| json!([t, n]))
            .collect();
        m.insert("factors".into(), Value::Array(factors));
    }
    Value::Object(m)
}

fn parse_descriptor(sys: &RootSystem, v: &Value) -> Result<CosetSpaceDescriptor> {
    let kind = match str_of(&v["kind"])? {
        "Gamma_alpha" => CosetKind::GammaAlpha,
        "Gamma_step" => CosetKind::GammaStep,
        "Lambda" => CosetKind::Lambda,
        "M_quotient" => CosetKind::MQuotient,
        "Gamma_prime" => CosetKind::GammaPrime,
        other => return Err(Error::Parse(format!("bad coset kind {other:?}"))),
    };
    let levi = v["levi"]
        .as_array()
        .ok_or_else(|| Error::Parse("levi".into()))?
        .iter()
        .map(|x| sys.parse_simple(str_of(x)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetSpaceDescriptor {
        name: str_of(&v["name"])?.into(),
        latex: str_of(&v["latex"])?.into(),
        kind,
        levi,
        stabilized: parse_roots(sys, &v["stabilized"])?,
        multiplicity: parse_q(str_of(&v["multiplicity"])?)?,
    })
}

fn char_json(c: &CharRoot) -> Value {
    json!({"root": c.root.text(), "name": c.name, "var": c.var})
}

fn parse_char(sys: &RootSystem, v: &Value) -> Result<CharRoot> {
    Ok(CharRoot {
        root: sys.parse_root(str_of(&v["root"])?)?,
        name: str_of(&v["name"])?.into(),
        var: str_of(&v["var"])?.into(),
    })
}

fn summation_json(sys: &RootSystem, s: &Summation, with_cells: bool) -> Value {
    match s {
        Summation::Coset { var, desc } => json!({
            "kind": "coset", "var": var, "coset": descriptor_json(sys, desc, with_cells),
        }),
        Summation::Omega { var, name, latex, roots } => json!({
            "kind": "omega", "var": var, "name": name, "latex": latex,
            "roots": roots_json(roots),
        }),
        Summation::CharLattice(c) => {
            let mut m = char_json(c);
            m["kind"] = Value::String("char".into());
            m
        }
        Summation::Level2 { var, alpha } => json!({
            "kind": "level2", "var": var, "alpha": format!("a{}", alpha + 1),
        }),
        Summation::DualSpan { var, name, latex, roots } => json!({
            "kind": "dualspan", "var": var, "name": name, "latex": latex,
            "roots": roots_json(roots),
        }),
    }
}

fn parse_summation(sys: &RootSystem, v: &Value) -> Result<Summation> {
    Ok(match str_of(&v["kind"])? {
        "coset" => Summation::Coset {
            var: str_of(&v["var"])?.into(),
            desc: parse_descriptor(sys, &v["coset"])?,
        },
        "omega" => Summation::Omega {
            var: str_of(&v["var"])?.into(),
            name: str_of(&v["name"])?.into(),
            latex: str_of(&v["latex"])?.into(),
            roots: parse_roots(sys, &v["roots"])?,
        },
        "char" => Summation::CharLattice(parse_char(sys, v)?),
        "level2" => Summation::Level2 {
            var: str_of(&v["var"])?.into(),
            alpha: sys.parse_simple(str_of(&v["alpha"])?)?,
        },
        "dualspan" => Summation::DualSpan {
            var: str_of(&v["var"])?.into(),
            name: str_of(&v["name"])?.into(),
            latex: str_of(&v["latex"])?.into(),
            roots: parse_roots(sys, &v["roots"])?,
        },
        other => return Err(Error::Parse(format!("bad summation kind {other:?}"))),
    })
}

fn translate_json(f: &TranslateFactor) -> Value {
    Value::String(match f {
        TranslateFactor::Var(v) => v.clone(),
        TranslateFactor::Word(w) => format!("w:{}:{}", w.name, w.word.text()),
        TranslateFactor::GammaZero { name, word } => match word {
            Some(w) => format!("gamma0:{name}:{}", w.text()),
            None => format!("gamma0:{name}"),
        },
    })
}

fn parse_translate(sys: &RootSystem, v: &Value, words: &[NamedWord]) -> Result<TranslateFactor> {
    let s = str_of(v)?;
    if let Some(rest) = s.strip_prefix("w:") {
        let (name, letters) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad word factor {s:?}")))?;
        // Recover the latex from a sibling named word when available.
        let latex = words
            .iter()
            .find(|w| w.name == name)
            .map(|w| w.latex.clone())
            .unwrap_or_else(|| default_word_latex(name));
        return Ok(TranslateFactor::Word(NamedWord {
            name: name.into(),
            latex,
            word: WeylWord::parse(letters, sys.rank)?,
        }));
    }
    if let Some(rest) = s.strip_prefix("gamma0:") {
        return Ok(match rest.split_once(':') {
            Some((name, letters)) => TranslateFactor::GammaZero {
                name: name.into(),
                word: Some(WeylWord::parse(letters, sys.rank)?),
            },
            None => TranslateFactor::GammaZero { name: rest.into(), word: None },
        });
    }
    Ok(TranslateFactor::Var(s.into()))
}

/// LaTeX names for the standard word symbols, reconstructed from the name.
fn default_word_latex(name: &str) -> String {
    if let Some(i) = name.strip_prefix("gamma_a") {
        if let Ok(n) = i.parse::<usize>() {
            return format!("\\gamma_{{\\alpha_{}}}", sub(n));
        }
    }
    if let Some(i) = name.strip_prefix("gamma_") {
        if let Ok(n) = i.parse::<usize>() {
            return format!("\\gamma_{}", sub(n));
        }
    }
    if let Some(i) = name.strip_prefix("g_") {
        if let Ok(n) = i.parse::<usize>() {
            return format!("g_{}", sub(n));
        }
    }
    name.into()
}

fn whit_json(sys: &RootSystem, w: &WhitNode, with_cells: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert(
        "kernel".into(),
        match &w.kernel {
            CoeffKind::Whittaker => Value::String("W".into()),
            CoeffKind::Parabolic { alpha } => json!({"F": format!("a{}", alpha + 1)}),
        },
    );
    m.insert(
        "summations".into(),
        Value::Array(
            w.summations
                .iter()
                .map(|s| summation_json(sys, s, with_cells))
                .collect(),
        ),
    );
    m.insert(
        "fixed_chars".into(),
        Value::Array(w.fixed_chars.iter().map(char_json).collect()),
    );
    if let Some(g) = &w.char_conjugator {
        m.insert("char_conjugator".into(), word_json(g));
    }
    m.insert(
        "translate".into(),
        Value::Array(w.translate.iter().map(translate_json).collect()),
    );
    m
}

fn parse_whit(sys: &RootSystem, v: &Value) -> Result<WhitNode> {
    let kernel = match &v["kernel"] {
        Value::String(s) if s == "W" => CoeffKind::Whittaker,
        Value::Object(o) => CoeffKind::Parabolic {
            alpha: sys.parse_simple(str_of(&o["F"])?)?,
        },
        other => return Err(Error::Parse(format!("bad kernel {other:?}"))),
    };
    let summations = v["summations"]
        .as_array()
        .ok_or_else(|| Error::Parse("summations".into()))?
        .iter()
        .map(|s| parse_summation(sys, s))
        .collect::<Result<Vec<_>>>()?;
    let fixed_chars = v["fixed_chars"]
        .as_array()
        .ok_or_else(|| Error::Parse("fixed_chars".into()))?
        .iter()
        .map(|c| parse_char(sys, c))
        .collect::<Result<Vec<_>>>()?;
    let char_conjugator = match v.get("char_conjugator") {
        Some(w) if !w.is_null() => Some(parse_named_word(sys, w)?),
        _ => None,
    };
    let words: Vec<NamedWord> = char_conjugator.iter().cloned().collect();
    let translate = v["translate"]
        .as_array()
        .ok_or_else(|| Error::Parse("translate".into()))?
        .iter()
        .map(|t| parse_translate(sys, t, &words))
        .collect::<Result<Vec<_>>>()?;
    Ok(WhitNode { kernel, summations, fixed_chars, char_conjugator, translate })
}

fn term_json(sys: &RootSystem, t: &ExpansionTerm, with_cells: bool) -> Value {
    let mut m = Map::new();
    m.insert("label".into(), Value::String(t.label.clone()));
    m.insert("provenance".into(), Value::String(t.provenance.clone()));
    m.insert("multiplicity".into(), Value::String(q_string(&t.multiplicity)));
    match &t.node {
        TermNode::Constant(c) => {
            m.insert("variant".into(), Value::String("constant".into()));
            m.insert("s".into(), Value::String(format!("a{}", c.alpha + 1)));
            m.insert(
                "levi".into(),
                Value::Array(
                    c.levi
                        .iter()
                        .map(|i| Value::String(format!("a{}", i + 1)))
                        .collect(),
                ),
            );
            m.insert("note".into(), Value::String(c.note.clone()));
        }
        TermNode::Whittaker(w) => {
            m.insert("variant".into(), Value::String("whittaker".into()));
            m.extend(whit_json(sys, w, with_cells));
        }
        TermNode::Integrated(i) => {
            m.insert("variant".into(), Value::String("integrated".into()));
            m.insert("v_name".into(), Value::String(i.v_name.clone()));
            m.insert("v_latex".into(), Value::String(i.v_latex.clone()));
            m.insert("v_roots".into(), roots_json(&i.v_roots));
            m.insert("word".into(), word_json(&i.word));
            m.insert(
                "inner".into(),
                Value::Object(whit_json(sys, &i.inner, with_cells)),
            );
        }
        TermNode::Heisenberg(h) => {
            m.insert("variant".into(), Value::String("heisenberg".into()));
            m.insert("omega_name".into(), Value::String(h.omega_name.clone()));
            m.insert("omega_latex".into(), Value::String(h.omega_latex.clone()));
            m.insert("omega_roots".into(), roots_json(&h.omega_roots));
            m.insert("gamma".into(), word_json(&h.gamma));
            m.insert(
                "children".into(),
                Value::Array(h.children.iter().map(|c| term_json(sys, c, with_cells)).collect()),
            );
        }
    }
    Value::Object(m)
}

fn parse_term(sys: &RootSystem, v: &Value) -> Result<ExpansionTerm> {
    let label = str_of(&v["label"])?.to_string();
    let provenance = str_of(&v["provenance"])?.to_string();
    let multiplicity = parse_q(str_of(&v["multiplicity"])?)?;
    let node = match str_of(&v["variant"])? {
        "constant" => TermNode::Constant(ConstantNode {
            alpha: sys.parse_simple(str_of(&v["s"])?)?,
            levi: v["levi"]
                .as_array()
                .ok_or_else(|| Error::Parse("levi".into()))?
                .iter()
                .map(|x| sys.parse_simple(str_of(x)?))
                .collect::<Result<Vec<_>>>()?,
            note: str_of(&v["note"])?.into(),
        }),
        "whittaker" => TermNode::Whittaker(parse_whit(sys, v)?),
        "integrated" => TermNode::Integrated(IntegratedNode {
            v_name: str_of(&v["v_name"])?.into(),
            v_latex: str_of(&v["v_latex"])?.into(),
            v_roots: parse_roots(sys, &v["v_roots"])?,
            word: parse_named_word(sys, &v["word"])?,
            inner: parse_whit(sys, &v["inner"])?,
        }),
        "heisenberg" => TermNode::Heisenberg(HeisenbergNode {
            omega_name: str_of(&v["omega_name"])?.into(),
            omega_latex: str_of(&v["omega_latex"])?.into(),
            omega_roots: parse_roots(sys, &v["omega_roots"])?,
            gamma: parse_named_word(sys, &v["gamma"])?,
            children: v["children"]
                .as_array()
                .ok_or_else(|| Error::Parse("children".into()))?
                .iter()
                .map(|c| parse_term(sys, c))
                .collect::<Result<Vec<_>>>()?,
        }),
        other => return Err(Error::Parse(format!("bad variant {other:?}"))),
    };
    Ok(ExpansionTerm { label, provenance, multiplicity, node })
}

fn str_of(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("expected string, got {v}")))
}

/// JSON value of a tree.
pub fn to_json(sys: &RootSystem, tree: &ExpansionTree, with_cells: bool) -> Value {
    json!({
        "theorem": tree.theorem,
        "type": tree.type_spec,
        "zero": tree.zero,
        "terms": tree.terms.iter().map(|t| term_json(sys, t, with_cells)).collect::<Vec<Value>>(),
    })
}

/// Deterministic JSON text.
pub fn json_text(sys: &RootSystem, tree: &ExpansionTree, with_cells: bool) -> String {
    serde_json::to_string_pretty(&to_json(sys, tree, with_cells)).expect("serializable")
}

/// Parse a tree back from its JSON text.
pub fn from_json(sys: &RootSystem, text: &str) -> Result<ExpansionTree> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))?;
    Ok(ExpansionTree {
        theorem: str_of(&v["theorem"])?.into(),
        type_spec: str_of(&v["type"])?.into(),
        zero: v["zero"].as_bool().unwrap_or(false),
        terms: v["terms"]
            .as_array()
            .ok_or_else(|| Error::Parse("terms".into()))?
            .iter()
            .map(|t| parse_term(sys, t))
            .collect::<Result<Vec<_>>>()?,
    })
}

/// Render in a named format ("json" or "latex"); unknown formats error.
pub fn render(sys: &RootSystem, tree: &ExpansionTree, format: &str) -> Result<String> {
    match format {
        "json" => Ok(json_text(sys, tree, false)),
        "latex" => Ok(latex(tree, &LatexOptions { standalone: false, underbraces: true })),
        other => Err(Error::UnknownFormat(other.into())),
    }
}
