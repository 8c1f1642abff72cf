//! Fibrations of finite displayed graphs and the lens they induce.

use crate::disp::FinDispRxGraph;
use crate::error::{ModelError, Result};
use crate::lens::{CovLens, CtrvLens};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FibVariance {
    Covariant,
    Contravariant,
}

/// The centres of all lift sets, each of which is a singleton. Covariantly,
/// for an edge `p : x -> y` and `u` over `x` the centre is `(p_* u, p_† u)`;
/// contravariantly the lift is over `x` for `v` over `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FibrationWitness {
    pub variance: FibVariance,
    /// Per base edge id, per displaced vertex: `(vertex, label)`.
    pub centres: Vec<Vec<(usize, usize)>>,
}

/// Lifts of `p : x -> y` at `u` over `x`.
pub fn cov_lifts(d: &FinDispRxGraph, (x, y, p): (usize, usize, usize), u: usize) -> Vec<(usize, usize)> {
    (0..d.fib(y)).flat_map(|v| (0..d.dedges(x, y, p, u, v)).map(move |q| (v, q))).collect()
}

/// Lifts of `p : x -> y` at `v` over `y`.
pub fn ctrv_lifts(d: &FinDispRxGraph, (x, y, p): (usize, usize, usize), v: usize) -> Vec<(usize, usize)> {
    (0..d.fib(x)).flat_map(|u| (0..d.dedges(x, y, p, u, v)).map(move |q| (u, q))).collect()
}

fn singleton_centres(
    d: &FinDispRxGraph,
    variance: FibVariance,
    lifts: impl Fn((usize, usize, usize), usize) -> Vec<(usize, usize)>,
) -> Option<FibrationWitness> {
    let mut centres = Vec::new();
    for e @ (x, y, _) in d.base().edge_list() {
        let over = if variance == FibVariance::Covariant { d.fib(x) } else { d.fib(y) };
        let mut row = Vec::with_capacity(over);
        for w in 0..over {
            match lifts(e, w).as_slice() {
                [c] => row.push(*c),
                _ => return None,
            }
        }
        centres.push(row);
    }
    Some(FibrationWitness { variance, centres })
}

pub fn is_cov_fibration(d: &FinDispRxGraph) -> Option<FibrationWitness> {
    singleton_centres(d, FibVariance::Covariant, |e, u| cov_lifts(d, e, u))
}

pub fn is_ctrv_fibration(d: &FinDispRxGraph) -> Option<FibrationWitness> {
    singleton_centres(d, FibVariance::Contravariant, |e, v| ctrv_lifts(d, e, v))
}

impl FibrationWitness {
    pub fn validate(&self, d: &FinDispRxGraph) -> Result<()> {
        let fresh = match self.variance {
            FibVariance::Covariant => is_cov_fibration(d),
            FibVariance::Contravariant => is_ctrv_fibration(d),
        };
        match fresh {
            Some(w) if w == *self => Ok(()),
            Some(_) => Err(ModelError::Witness("centres are not the lifts".into())),
            None => Err(ModelError::Witness("some lift set is not a singleton".into())),
        }
    }

    pub fn centre(&self, d: &FinDispRxGraph, (x, y, p): (usize, usize, usize), w: usize) -> (usize, usize) {
        self.centres[d.base().edge_id(x, y, p)][w]
    }
}

/// Straightening: a displayed edge `q : u -> v` over `p : x -> y` becomes an
/// edge `p_* u -> v` of the component at `y`. Identification induction on
/// the contractible lift set sends the centre to `drx(y, p_* u)`; at set
/// level the lift set has no other element.
pub fn straighten(
    d: &FinDispRxGraph,
    w: &FibrationWitness,
    e @ (_, y, _): (usize, usize, usize),
    u: usize,
    v: usize,
    q: usize,
) -> Option<usize> {
    let centre = w.centre(d, e, u);
    (centre == (v, q)).then(|| d.drx(y, v))
}

/// Unstraightening: an edge `r : p_* u -> v` of the component at `y` becomes
/// a displayed edge over `p`, by induction on the fan of the component,
/// which a fibration forces to be contractible.
pub fn unstraighten(
    d: &FinDispRxGraph,
    w: &FibrationWitness,
    e @ (_, y, _): (usize, usize, usize),
    u: usize,
    v: usize,
    r: usize,
) -> Option<usize> {
    let (c, q) = w.centre(d, e, u);
    (v == c && r == d.drx(y, c)).then_some(q)
}

/// The oplax covariant lens on the components of a covariant fibration.
pub fn underlying_lens(d: &FinDispRxGraph, w: &FibrationWitness) -> Result<CovLens> {
    if w.variance != FibVariance::Covariant {
        return Err(ModelError::Witness("expected a covariant witness".into()));
    }
    w.validate(d)?;
    let a = d.base();
    let push = w.centres.iter().map(|row| row.iter().map(|&(v, _)| v).collect()).collect();
    let push_rx = (0..a.n())
        .map(|x| {
            let e = (x, x, a.rx(x));
            (0..d.fib(x))
                .map(|u| straighten(d, w, e, u, u, d.drx(x, u)).expect("drx is the centre of its lift set"))
                .collect()
        })
        .collect();
    let l = CovLens { base: a.clone(), fam: (0..a.n()).map(|x| d.component(x)).collect(), push, push_rx };
    l.validate()?;
    Ok(l)
}

/// The lax contravariant lens on the components of a contravariant
/// fibration.
pub fn ctrv_underlying_lens(d: &FinDispRxGraph, w: &FibrationWitness) -> Result<CtrvLens> {
    if w.variance != FibVariance::Contravariant {
        return Err(ModelError::Witness("expected a contravariant witness".into()));
    }
    w.validate(d)?;
    let a = d.base();
    let pull = w.centres.iter().map(|row| row.iter().map(|&(u, _)| u).collect()).collect();
    let pull_rx = (0..a.n())
        .map(|x| {
            let e = (x, x, a.rx(x));
            (0..d.fib(x))
                .map(|v| {
                    let centre = w.centre(d, e, v);
                    assert_eq!(centre, (v, d.drx(x, v)), "drx is the centre of its lift set");
                    d.drx(x, v)
                })
                .collect()
        })
        .collect();
    let l = CtrvLens { base: a.clone(), fam: (0..a.n()).map(|x| d.component(x)).collect(), pull, pull_rx };
    l.validate()?;
    Ok(l)
}

/// Outcome of comparing a fibration with the display of its underlying lens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationRoundtrip {
    /// The display coincides with the fibration on the nose.
    pub strict: bool,
}

/// Checks that straightening and unstraightening are mutually inverse
/// bijections between the displayed edges of `d` and those of the display
/// of its underlying lens, identity on vertices and preserving `drx`.
pub fn fibration_roundtrip(d: &FinDispRxGraph) -> std::result::Result<FibrationRoundtrip, String> {
    let w = is_cov_fibration(d).ok_or("not a covariant fibration")?;
    let l = underlying_lens(d, &w).map_err(|e| e.to_string())?;
    let d2 = l.display();
    if d2.fibs() != d.fibs() {
        return Err("vertex sets differ".into());
    }
    for e @ (x, y, p) in d.base().edge_list() {
        for u in 0..d.fib(x) {
            for v in 0..d.fib(y) {
                let (n1, n2) = (d.dedges(x, y, p, u, v), d2.dedges(x, y, p, u, v));
                let there: Vec<Option<usize>> = (0..n1).map(|q| straighten(d, &w, e, u, v, q)).collect();
                let back: Vec<Option<usize>> = (0..n2).map(|r| unstraighten(d, &w, e, u, v, r)).collect();
                let at = format!("over ({x}, {y}, {p}) from {u} to {v}");
                for (q, r) in there.iter().enumerate() {
                    match r {
                        Some(r) if *r < n2 && back[*r] == Some(q) => {}
                        _ => return Err(format!("straightening not invertible at edge {q} {at}")),
                    }
                }
                for (r, q) in back.iter().enumerate() {
                    match q {
                        Some(q) if *q < n1 && there[*q] == Some(r) => {}
                        _ => return Err(format!("unstraightening not invertible at edge {r} {at}")),
                    }
                }
                if e == (x, x, d.base().rx(x)) && u == v && there[d.drx(x, u)] != Some(d2.drx(x, u)) {
                    return Err(format!("drx not preserved over {x} at {u}"));
                }
            }
        }
    }
    Ok(FibrationRoundtrip { strict: d2 == *d })
}

/// Checks that a lens with univalent components displays as a covariant
/// fibration whose underlying lens is the lens itself.
pub fn lens_roundtrip(l: &CovLens) -> std::result::Result<(), String> {
    let d = l.display();
    let w = is_cov_fibration(&d).ok_or("display is not a covariant fibration")?;
    let l2 = underlying_lens(&d, &w).map_err(|e| e.to_string())?;
    if l2.push != l.push {
        return Err("pushforwards differ".into());
    }
    if l2.push_rx != l.push_rx {
        return Err("unit edges differ".into());
    }
    if l2.fam != l.fam {
        return Err("components differ".into());
    }
    Ok(())
}
