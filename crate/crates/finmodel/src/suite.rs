//! Named property suites over enumerated or sampled instance spaces.

use crate::construct::{self as k, Unit};
use crate::disp::FinDispRxGraph;
use crate::enumerate::{
    exhaustive, gen_ctrv_structure, gen_cov_structure, gen_cov_lens, gen_ctrv_lens, gen_disp, gen_graph,
    gen_unb_lens, gen_univalent_graph, sample, Chooser, Sampler,
};
use crate::error::{ModelError, Result};
use crate::fibration::{fibration_roundtrip, is_cov_fibration, is_ctrv_fibration, lens_roundtrip};
use crate::gaunt::{bijection_exists, monotone_bijections};
use crate::graph::{functions, FinRxGraph};
use crate::lens::{CovLens, CtrvLens, FinLens};
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_vertices: usize,
    /// Bound on every edge and displayed edge count.
    pub max_mult: usize,
    /// Bound on fibre and family component sizes.
    pub max_fiber: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_vertices: 3, max_mult: 2, max_fiber: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    pub seed: u64,
    /// Instances drawn when the space is too large to enumerate.
    pub sample_size: u64,
    /// Largest space that is enumerated exhaustively.
    pub exhaustive_limit: u64,
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions { seed: 0, sample_size: 20_000, exhaustive_limit: 1_000_000, workers: 1 }
    }
}

/// A single instance of some suite's space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "kebab-case")]
pub enum Instance {
    Graph(FinRxGraph),
    Pair { a: FinRxGraph, b: FinRxGraph },
    Family(Vec<FinRxGraph>),
    Scaled { k: usize, graph: FinRxGraph },
    Size(usize),
    Predicate { graph: FinRxGraph, pred: Vec<usize> },
    Disp(FinDispRxGraph),
    Restrict { disp: FinDispRxGraph, over_total: FinDispRxGraph },
    Lens(FinLens),
    CovPoly { lens: CovLens, target: FinRxGraph, unit: Unit },
    CtrvPoly { lens: CtrvLens, target: FinRxGraph, unit: Unit },
    Structures { base: FinRxGraph, fam: Vec<FinRxGraph> },
    Ordinals { m: usize, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Canonical enumeration index, or sample number.
    pub index: u64,
    pub instance: Instance,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub property: String,
    pub bounds: Bounds,
    pub seed: u64,
    pub mode: Mode,
    /// Exact size of the space when it was enumerated.
    pub space_size: Option<u64>,
    pub sample_size: Option<u64>,
    pub instances: u64,
    /// Instances on which the hypotheses of the property hold.
    pub applicable: u64,
    pub failed: u64,
    /// The first few failures in canonical order.
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub millis: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Result of checking one instance.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Verdict {
    pub applicable: bool,
    pub note: Option<String>,
}

fn holds(applicable: bool) -> std::result::Result<Verdict, String> {
    Ok(Verdict { applicable, note: None })
}

type Check = fn(&Instance) -> std::result::Result<Verdict, String>;
type Space = fn(&Bounds, &mut dyn Chooser) -> Option<Instance>;

pub struct Suite {
    pub name: &'static str,
    pub property: &'static str,
    space: Space,
    check: Check,
}

const MAX_FAILURES: usize = 5;
const MAX_NOTES: usize = 40;
const SAMPLE_ATTEMPTS: usize = 100_000;

fn graph(b: &Bounds, c: &mut dyn Chooser) -> Option<FinRxGraph> {
    gen_graph(c, 1, b.max_vertices, b.max_mult)
}

fn fam_any(b: &Bounds) -> impl Fn(&mut dyn Chooser) -> Option<FinRxGraph> {
    let b = *b;
    move |c| gen_graph(c, 0, b.max_fiber, b.max_mult)
}

fn fam_uni(b: &Bounds) -> impl Fn(&mut dyn Chooser) -> Option<FinRxGraph> {
    let b = *b;
    move |c| gen_univalent_graph(c, 0, b.max_fiber)
}

fn uni_graph(b: &Bounds, c: &mut dyn Chooser) -> Option<FinRxGraph> {
    gen_univalent_graph(c, 1, b.max_vertices)
}

/// A graph from the full space, or a univalent one: hypotheses of the form
/// "is univalent" are rare in the full space.
fn graph_or_uni(b: &Bounds, c: &mut dyn Chooser, uni: bool) -> Option<FinRxGraph> {
    if uni {
        uni_graph(b, c)
    } else {
        graph(b, c)
    }
}

fn disp_space(b: &Bounds, c: &mut dyn Chooser) -> Option<FinDispRxGraph> {
    let base = graph(b, c)?;
    gen_disp(c, &base, b.max_fiber, b.max_mult, false)
}

fn cov_space(b: &Bounds, c: &mut dyn Chooser, uni_base: bool, uni_fam: bool) -> Option<CovLens> {
    let base = graph_or_uni(b, c, uni_base)?;
    if uni_fam {
        gen_cov_lens(c, &base, &fam_uni(b))
    } else {
        gen_cov_lens(c, &base, &fam_any(b))
    }
}

fn ctrv_space(b: &Bounds, c: &mut dyn Chooser, uni_base: bool, uni_fam: bool) -> Option<CtrvLens> {
    let base = graph_or_uni(b, c, uni_base)?;
    if uni_fam {
        gen_ctrv_lens(c, &base, &fam_uni(b))
    } else {
        gen_ctrv_lens(c, &base, &fam_any(b))
    }
}

fn cov(l: CovLens) -> Instance {
    Instance::Lens(FinLens::Cov(l))
}

fn ctrv(l: CtrvLens) -> Instance {
    Instance::Lens(FinLens::Ctrv(l))
}

fn unexpected(i: &Instance) -> std::result::Result<Verdict, String> {
    Err(format!("instance of unexpected shape: {i:?}"))
}

fn implies(hyp: bool, concl: bool, what: &str) -> std::result::Result<Verdict, String> {
    if hyp && !concl {
        Err(what.to_string())
    } else {
        holds(hyp)
    }
}

fn same<T: PartialEq>(a: &T, b: &T, what: &str) -> std::result::Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what} differ"))
    }
}

fn unit_choice(c: &mut dyn Chooser, fams: &[FinRxGraph], maps: &[&[usize]], target: &FinRxGraph, cov: bool) -> Option<Unit> {
    let mut unit = Vec::with_capacity(fams.len());
    for (b, m) in fams.iter().zip(maps) {
        let mut per_x = Vec::new();
        for f in functions(b.n(), target.n()) {
            let mut labels = Vec::with_capacity(b.n());
            for u in 0..b.n() {
                let (s, t) = if cov { (f[u], f[m[u]]) } else { (f[m[u]], f[u]) };
                labels.push(c.choose(target.edges(s, t))?);
            }
            per_x.push(labels);
        }
        unit.push(per_x);
    }
    Some(unit)
}

fn registry() -> Vec<Suite> {
    vec![
        Suite {
            name: "five-conditions",
            property: "the five formulations of univalence agree",
            space: |b, c| Some(Instance::Graph(graph(b, c)?)),
            check: |i| match i {
                Instance::Graph(g) => {
                    let cs = g.univalence_conditions();
                    if cs.iter().all(|&x| x == cs[0]) {
                        holds(cs[0])
                    } else {
                        Err(format!("conditions disagree: {cs:?}"))
                    }
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "fan-cofan",
            property: "all fans are propositions iff all co-fans are",
            space: |b, c| Some(Instance::Graph(graph(b, c)?)),
            check: |i| match i {
                Instance::Graph(g) => {
                    let fans = (0..g.n()).all(|x| g.fan(x).len() <= 1);
                    let cofans = (0..g.n()).all(|x| g.cofan(x).len() <= 1);
                    if fans == cofans {
                        holds(fans)
                    } else {
                        Err(format!("fans propositional: {fans}, co-fans propositional: {cofans}"))
                    }
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "op-po",
            property: "a graph is univalent iff its opposite is; the opposite is involutive",
            space: |b, c| Some(Instance::Graph(graph(b, c)?)),
            check: |i| match i {
                Instance::Graph(g) => {
                    let op = k::opposite(g);
                    same(&k::opposite(&op), g, "op (op g) and g")?;
                    if g.is_univalent() == op.is_univalent() {
                        holds(g.is_univalent())
                    } else {
                        Err("univalence of g and op g differ".into())
                    }
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "total-op",
            property: "total opposite is involutive and the opposite of a total graph is the total of the total opposite",
            space: |b, c| Some(Instance::Disp(disp_space(b, c)?)),
            check: |i| match i {
                Instance::Disp(d) => {
                    let t = k::total_opposite(d);
                    same(&k::total_opposite(&t), d, "total opposite twice and the original")?;
                    same(&k::opposite(&k::total(d)), &k::total(&t), "op of total and total of total opposite")?;
                    holds(true)
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "restriction",
            property: "components of the restriction are components of the original over the total graph",
            space: |b, c| {
                let disp = disp_space(b, c)?;
                let over_total = gen_disp(c, &k::total(&disp), b.max_fiber, b.max_mult, false)?;
                Some(Instance::Restrict { disp, over_total })
            },
            check: |i| match i {
                Instance::Restrict { disp, over_total } => {
                    for x in 0..disp.base().n() {
                        let r = k::restriction(disp, over_total, x).map_err(|e| e.to_string())?;
                        for u in 0..disp.fib(x) {
                            same(
                                &r.component(u),
                                &over_total.component(k::total_vertex(disp, x, u)),
                                &format!("components at ({x}, {u})"),
                            )?;
                        }
                    }
                    holds(true)
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "total-po",
            property: "the total graph of a univalent displayed graph over a univalent base is univalent",
            space: |b, c| {
                let d = if c.choose(2)? == 0 {
                    disp_space(b, c)?
                } else {
                    let base = uni_graph(b, c)?;
                    gen_disp(c, &base, b.max_fiber, b.max_mult, true)?
                };
                Some(Instance::Disp(d))
            },
            check: |i| match i {
                Instance::Disp(d) => implies(
                    d.base().is_univalent() && d.is_univalent(),
                    k::total(d).is_univalent(),
                    "total graph not univalent",
                ),
                _ => unexpected(i),
            },
        },
        Suite {
            name: "const-disp-po",
            property: "the constant displayed graph on a univalent graph is univalent, with components and total as computed",
            space: |b, c| {
                let a = graph(b, c)?;
                let uni = c.choose(2)? == 1;
                Some(Instance::Pair { a, b: graph_or_uni(b, c, uni)? })
            },
            check: |i| match i {
                Instance::Pair { a, b } => {
                    let d = k::constant_displayed(a, b);
                    same(&k::total(&d), &k::binary_product(a, b), "total of constant and binary product")?;
                    for x in 0..a.n() {
                        same(&d.component(x), b, "component and fibre graph")?;
                    }
                    implies(b.is_univalent(), d.is_univalent(), "constant displayed graph not univalent")
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "bin-prod-po",
            property: "the binary product of univalent graphs is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                Some(Instance::Pair { a: graph_or_uni(b, c, uni)?, b: graph_or_uni(b, c, uni)? })
            },
            check: |i| match i {
                Instance::Pair { a, b } => implies(
                    a.is_univalent() && b.is_univalent(),
                    k::binary_product(a, b).is_univalent(),
                    "binary product not univalent",
                ),
                _ => unexpected(i),
            },
        },
        Suite {
            name: "prod-po",
            property: "the product of a family of univalent graphs is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                let n = c.choose(b.max_fiber + 1)?;
                Some(Instance::Family((0..n).map(|_| graph_or_uni(b, c, uni)).collect::<Option<_>>()?))
            },
            check: |i| match i {
                Instance::Family(f) => implies(
                    f.iter().all(FinRxGraph::is_univalent),
                    k::product(f).is_univalent(),
                    "product not univalent",
                ),
                _ => unexpected(i),
            },
        },
        Suite {
            name: "coprod-po",
            property: "the coproduct of a family of univalent graphs is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                let n = c.choose(b.max_fiber + 1)?;
                Some(Instance::Family((0..n).map(|_| graph_or_uni(b, c, uni)).collect::<Option<_>>()?))
            },
            check: |i| match i {
                Instance::Family(f) => implies(
                    f.iter().all(FinRxGraph::is_univalent),
                    k::coproduct(f).is_univalent(),
                    "coproduct not univalent",
                ),
                _ => unexpected(i),
            },
        },
        Suite {
            name: "tensor-po",
            property: "the tensor of a set with a univalent graph is univalent",
            space: |b, c| Some(Instance::Scaled { k: c.choose(b.max_fiber + 1)?, graph: graph(b, c)? }),
            check: |i| match i {
                Instance::Scaled { k: n, graph } => {
                    implies(graph.is_univalent(), k::tensor(*n, graph).is_univalent(), "tensor not univalent")
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "cotensor-po",
            property: "the cotensor of a set with a univalent graph is univalent",
            space: |b, c| Some(Instance::Scaled { k: c.choose(b.max_fiber + 1)?, graph: graph(b, c)? }),
            check: |i| match i {
                Instance::Scaled { k: n, graph } => {
                    implies(graph.is_univalent(), k::cotensor(*n, graph).is_univalent(), "cotensor not univalent")
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "disc-po",
            property: "discrete graphs are univalent",
            space: |b, c| Some(Instance::Size(c.choose(b.max_vertices + 1)?)),
            check: |i| match i {
                Instance::Size(n) => implies(true, k::discrete(*n).is_univalent(), "discrete graph not univalent"),
                _ => unexpected(i),
            },
        },
        Suite {
            name: "codisc-po",
            property: "the codiscrete graph on a set is univalent iff the set is a proposition",
            space: |b, c| Some(Instance::Size(1 + c.choose(b.max_vertices)?)),
            check: |i| match i {
                Instance::Size(n) => {
                    let uni = k::codiscrete(*n).is_univalent();
                    let prop = *n <= 1;
                    if uni != prop {
                        return Err(format!("codiscrete({n}) univalent: {uni}"));
                    }
                    Ok(Verdict { applicable: prop, note: Some(format!("codiscrete({n}) univalent: {uni}")) })
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "compr-po",
            property: "the comprehension of a family of propositions over a univalent graph is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                let graph = graph_or_uni(b, c, uni)?;
                let top = if uni { 1 } else { b.max_fiber };
                let pred = (0..graph.n()).map(|_| c.choose(top + 1)).collect::<Option<_>>()?;
                Some(Instance::Predicate { graph, pred })
            },
            check: |i| match i {
                Instance::Predicate { graph, pred } => implies(
                    graph.is_univalent() && pred.iter().all(|&s| s <= 1),
                    k::comprehension(graph, pred).map_err(|e| e.to_string())?.is_univalent(),
                    "comprehension not univalent",
                ),
                _ => unexpected(i),
            },
        },
        Suite {
            name: "cov-disp-po",
            property: "the display of an oplax covariant lens of univalent graphs is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                Some(cov(cov_space(b, c, false, uni)?))
            },
            check: |i| match i {
                Instance::Lens(FinLens::Cov(l)) => {
                    implies(l.components_univalent(), l.display().is_univalent(), "display not univalent")
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "ctrv-disp-po",
            property: "the display of a lax contravariant lens of univalent graphs is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                Some(ctrv(ctrv_space(b, c, false, uni)?))
            },
            check: |i| match i {
                Instance::Lens(FinLens::Ctrv(l)) => {
                    implies(l.components_univalent(), l.display().is_univalent(), "display not univalent")
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "unb-disp-po",
            property: "the display of an unbiased dependent lens of univalent graphs is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                let base = graph(b, c)?;
                let l = if uni { gen_unb_lens(c, &base, &fam_uni(b))? } else { gen_unb_lens(c, &base, &fam_any(b))? };
                Some(Instance::Lens(FinLens::Unb(l)))
            },
            check: |i| match i {
                Instance::Lens(FinLens::Unb(l)) => {
                    l.validate().map_err(|e| e.to_string())?;
                    implies(l.components_univalent(), l.display().is_univalent(), "display not univalent")
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "upgrade-coherence",
            property: "upgrading a biased lens to an unbiased one preserves its display",
            space: |b, c| {
                Some(if c.choose(2)? == 0 { cov(cov_space(b, c, false, false)?) } else { ctrv(ctrv_space(b, c, false, false)?) })
            },
            check: |i| match i {
                Instance::Lens(FinLens::Cov(l)) => {
                    let u = l.upgrade();
                    u.validate().map_err(|e| e.to_string())?;
                    same(&u.display(), &l.display(), "displays")?;
                    holds(true)
                }
                Instance::Lens(FinLens::Ctrv(l)) => {
                    let u = l.upgrade();
                    u.validate().map_err(|e| e.to_string())?;
                    same(&u.display(), &l.display(), "displays")?;
                    holds(true)
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "lens-duality",
            property: "total opposite of lenses is involutive and commutes with display",
            space: |b, c| {
                Some(if c.choose(2)? == 0 { cov(cov_space(b, c, false, false)?) } else { ctrv(ctrv_space(b, c, false, false)?) })
            },
            check: |i| match i {
                Instance::Lens(FinLens::Cov(l)) => {
                    let t = l.total_opposite();
                    t.validate().map_err(|e| e.to_string())?;
                    same(&t.total_opposite(), l, "lens and its double total opposite")?;
                    same(&t.display(), &k::total_opposite(&l.display()), "display of total opposite")?;
                    holds(true)
                }
                Instance::Lens(FinLens::Ctrv(l)) => {
                    let t = l.total_opposite();
                    t.validate().map_err(|e| e.to_string())?;
                    same(&t.total_opposite(), l, "lens and its double total opposite")?;
                    same(&t.display(), &k::total_opposite(&l.display()), "display of total opposite")?;
                    holds(true)
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "fib-univalent",
            property: "covariant and contravariant fibrations have univalent components",
            space: |b, c| {
                let d = match c.choose(3)? {
                    0 => disp_space(b, c)?,
                    1 => cov_space(b, c, false, true)?.display(),
                    _ => ctrv_space(b, c, false, true)?.display(),
                };
                Some(Instance::Disp(d))
            },
            check: |i| match i {
                Instance::Disp(d) => {
                    let (cf, tf) = (is_cov_fibration(d).is_some(), is_ctrv_fibration(d).is_some());
                    implies(cf || tf, d.is_univalent(), "fibration with a non-univalent component")
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "universal-iff-univalent",
            property: "a lens has universal pushforwards (pullbacks) iff its components are univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                Some(if c.choose(2)? == 0 { cov(cov_space(b, c, false, uni)?) } else { ctrv(ctrv_space(b, c, false, uni)?) })
            },
            check: |i| {
                let (universal, univalent, fib) = match i {
                    Instance::Lens(FinLens::Cov(l)) => {
                        (l.has_universal_pushforwards(), l.components_univalent(), is_cov_fibration(&l.display()).is_some())
                    }
                    Instance::Lens(FinLens::Ctrv(l)) => {
                        (l.has_universal_pullbacks(), l.components_univalent(), is_ctrv_fibration(&l.display()).is_some())
                    }
                    _ => return unexpected(i),
                };
                if universal != univalent {
                    return Err(format!("universal: {universal}, components univalent: {univalent}"));
                }
                if universal != fib {
                    return Err(format!("universal: {universal}, display is a fibration: {fib}"));
                }
                holds(univalent)
            },
        },
        Suite {
            name: "flatten-po",
            property: "flattening a lens of univalent graphs over a univalent base is univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                Some(if c.choose(2)? == 0 { cov(cov_space(b, c, uni, uni)?) } else { ctrv(ctrv_space(b, c, uni, uni)?) })
            },
            check: |i| match i {
                Instance::Lens(FinLens::Cov(l)) => implies(
                    l.base.is_univalent() && l.components_univalent(),
                    k::flatten_cov(l).is_univalent(),
                    "flattening not univalent",
                ),
                Instance::Lens(FinLens::Ctrv(l)) => implies(
                    l.base.is_univalent() && l.components_univalent(),
                    k::flatten_ctrv(l).is_univalent(),
                    "flattening not univalent",
                ),
                _ => unexpected(i),
            },
        },
        Suite {
            name: "poly-po",
            property: "partial products over a univalent base with univalent target are univalent",
            space: |b, c| {
                let uni = c.choose(2)? == 1;
                if c.choose(2)? == 0 {
                    let lens = cov_space(b, c, uni, false)?;
                    let target = graph_or_uni(b, c, uni)?;
                    let maps: Vec<&[usize]> = (0..lens.base.n()).map(|x| &lens.push[lens.base.rx_id(x)][..]).collect();
                    let unit = unit_choice(c, &lens.fam, &maps, &target, true)?;
                    Some(Instance::CovPoly { lens, target, unit })
                } else {
                    let lens = ctrv_space(b, c, uni, false)?;
                    let target = graph_or_uni(b, c, uni)?;
                    let maps: Vec<&[usize]> = (0..lens.base.n()).map(|x| &lens.pull[lens.base.rx_id(x)][..]).collect();
                    let unit = unit_choice(c, &lens.fam, &maps, &target, false)?;
                    Some(Instance::CtrvPoly { lens, target, unit })
                }
            },
            check: |i| {
                let (base, fam, target, pp) = match i {
                    Instance::CovPoly { lens, target, unit } => {
                        (&lens.base, &lens.fam, target, k::partial_product_cov(lens, target, unit))
                    }
                    Instance::CtrvPoly { lens, target, unit } => {
                        (&lens.base, &lens.fam, target, k::partial_product_ctrv(lens, target, unit))
                    }
                    _ => return unexpected(i),
                };
                let pp = pp.map_err(|e| e.to_string())?;
                let vertices: usize = fam.iter().map(|b| target.n().pow(b.n() as u32)).sum();
                if pp.n() != vertices {
                    return Err(format!("{} vertices, expected {vertices}", pp.n()));
                }
                implies(base.is_univalent() && target.is_univalent(), pp.is_univalent(), "partial product not univalent")
            },
        },
        Suite {
            name: "lens-coherence",
            property: "over a univalent base, a family of univalent graphs carries exactly one lens structure of each variance",
            space: |b, c| {
                let base = uni_graph(b, c)?;
                let fam = (0..base.n()).map(|_| gen_univalent_graph(c, 0, b.max_fiber)).collect::<Option<_>>()?;
                Some(Instance::Structures { base, fam })
            },
            check: |i| match i {
                Instance::Structures { base, fam } => {
                    let covs = exhaustive(|c| gen_cov_structure(c, base, fam.clone())).count();
                    let ctrvs = exhaustive(|c| gen_ctrv_structure(c, base, fam.clone())).count();
                    if covs != 1 || ctrvs != 1 {
                        return Err(format!("{covs} covariant and {ctrvs} contravariant structures"));
                    }
                    holds(true)
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "roundtrip",
            property: "fibrations and lenses of univalent graphs correspond through display and the underlying lens",
            space: |b, c| {
                Some(match c.choose(3)? {
                    0 => Instance::Disp(disp_space(b, c)?),
                    1 => Instance::Disp(cov_space(b, c, false, true)?.display()),
                    _ => cov(cov_space(b, c, false, true)?),
                })
            },
            check: |i| match i {
                Instance::Disp(d) => {
                    if is_cov_fibration(d).is_none() {
                        return holds(false);
                    }
                    let r = fibration_roundtrip(d)?;
                    Ok(Verdict { applicable: true, note: Some(format!("strict: {}", r.strict)) })
                }
                Instance::Lens(FinLens::Cov(l)) => {
                    if !l.components_univalent() {
                        return holds(false);
                    }
                    lens_roundtrip(l)?;
                    holds(true)
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "counterexample",
            property: "a univalent displayed graph need be neither a covariant nor a contravariant fibration",
            space: |_, _| Some(Instance::Disp(crate::counterexample())),
            check: |i| match i {
                Instance::Disp(d) => {
                    let (uni, cf, tf) = (d.is_univalent(), is_cov_fibration(d).is_some(), is_ctrv_fibration(d).is_some());
                    let note = format!("univalent: {uni}, covariant fibration: {cf}, contravariant fibration: {tf}");
                    if uni && !cf && !tf {
                        Ok(Verdict { applicable: true, note: Some(note) })
                    } else {
                        Err(note)
                    }
                }
                _ => unexpected(i),
            },
        },
        Suite {
            name: "gauntness",
            property: "for m, n <= 5 there is at most one monotone bijection Fin m -> Fin n, none unless m = n, and bijections force m = n",
            space: |_, c| Some(Instance::Ordinals { m: c.choose(6)?, n: c.choose(6)? }),
            check: |i| match i {
                Instance::Ordinals { m, n } => {
                    let mono = monotone_bijections(*m, *n).len();
                    if mono > 1 || (m != n && mono > 0) {
                        return Err(format!("{mono} monotone bijections {m} -> {n}"));
                    }
                    if bijection_exists(*m, *n) && m != n {
                        return Err(format!("bijection {m} -> {n}"));
                    }
                    holds(m == n)
                }
                _ => unexpected(i),
            },
        },
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name).collect()
}

pub fn suite_property(name: &str) -> Option<&'static str> {
    registry().into_iter().find(|s| s.name == name).map(|s| s.property)
}

type Outcome = (u64, std::result::Result<Verdict, String>, Instance);

fn run_worker(suite: &Suite, bounds: &Bounds, opts: &RunOptions, mode: Mode, w: usize) -> Vec<Outcome> {
    let workers = opts.workers.max(1);
    let mut out = Vec::new();
    let mut gen = |c: &mut dyn Chooser| (suite.space)(bounds, c);
    match mode {
        Mode::Exhaustive => {
            for (i, inst) in exhaustive(&mut gen).enumerate() {
                if i % workers == w {
                    out.push((i as u64, (suite.check)(&inst), inst));
                }
            }
        }
        Mode::Sampled => {
            for i in (w as u64..opts.sample_size).step_by(workers) {
                let mut s = Sampler::new(opts.seed, i);
                let inst = sample(&mut gen, &mut s, SAMPLE_ATTEMPTS)
                    .unwrap_or_else(|| panic!("suite `{}` found no instance in {SAMPLE_ATTEMPTS} attempts", suite.name));
                out.push((i, (suite.check)(&inst), inst));
            }
        }
    }
    out
}

/// Runs a suite exhaustively when its space has at most
/// `opts.exhaustive_limit` instances, and on `opts.sample_size` samples
/// otherwise.
pub fn run_suite(name: &str, bounds: &Bounds, opts: &RunOptions) -> Result<SuiteReport> {
    let suite = registry().into_iter().find(|s| s.name == name).ok_or_else(|| ModelError::UnknownSuite(name.into()))?;
    let start = Instant::now();
    let limit = opts.exhaustive_limit;
    let count = exhaustive(|c| (suite.space)(bounds, c)).take(limit as usize + 1).count() as u64;
    let mode = if count <= limit { Mode::Exhaustive } else { Mode::Sampled };
    let workers = opts.workers.max(1);
    let mut outcomes: Vec<Outcome> = if workers == 1 {
        run_worker(&suite, bounds, opts, mode, 0)
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> =
                (0..workers).map(|w| s.spawn({ let suite = &suite; move || run_worker(suite, bounds, opts, mode, w) })).collect();
            handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
        })
    };
    outcomes.sort_by_key(|o| o.0);
    let mut report = SuiteReport {
        suite: suite.name.into(),
        property: suite.property.into(),
        bounds: *bounds,
        seed: opts.seed,
        mode,
        space_size: (mode == Mode::Exhaustive).then_some(count),
        sample_size: (mode == Mode::Sampled).then_some(opts.sample_size),
        instances: outcomes.len() as u64,
        applicable: 0,
        failed: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        millis: 0,
    };
    for (index, verdict, instance) in outcomes {
        match verdict {
            Ok(v) => {
                report.applicable += v.applicable as u64;
                if let Some(n) = v.note {
                    if !report.notes.contains(&n) && report.notes.len() < MAX_NOTES {
                        report.notes.push(n);
                    }
                }
            }
            Err(reason) => {
                report.failed += 1;
                if report.failures.len() < MAX_FAILURES {
                    report.failures.push(Failure { index, instance, reason });
                }
            }
        }
    }
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}
