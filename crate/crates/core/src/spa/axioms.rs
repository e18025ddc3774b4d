//! Completeness, the property/state maps, and the lattice axioms that do not
//! need an orthocomplementation, plus the aggregated report.

use std::collections::HashMap;

use serde::Serialize;

use super::bits::Bits;
use super::lattice::FiniteLattice;
use super::ortho::{
    check_irreducible, check_weak_modularity, longest_orthogonal_chain, ortho_search, OrthoMap, OrthoSearch,
};
use super::space::{FiniteStatePropertySpace, PropertyLattice};
use super::SpaError;

/// Largest number of properties (or states) for which completeness is checked.
pub const COMPLETENESS_CAP: usize = 4096;
/// Largest property lattice the axiom checkers will build.
pub const LATTICE_CAP: usize = 512;

/// A concrete counterexample: the offending elements by index and label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub elements: Vec<usize>,
    pub labels: Vec<String>,
    pub detail: String,
}

impl Witness {
    pub fn new(kind: &str, l: &FiniteLattice, elements: &[usize], detail: String) -> Self {
        Self {
            kind: kind.into(),
            elements: elements.to_vec(),
            labels: elements.iter().map(|&x| l.label(x).to_string()).collect(),
            detail,
        }
    }

    pub fn with_labels(kind: &str, elements: Vec<usize>, labels: Vec<String>, detail: String) -> Self {
        Self { kind: kind.into(), elements, labels, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// `exhaustive` is false when only a bounded family of cases was examined.
    Holds { exhaustive: bool },
    Fails { witness: Witness },
    NotApplicable { reason: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn fails(witness: Witness) -> Self {
        Verdict::Fails { witness }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }
}

/// First pair `(i, j)`, `i < j`, whose intersection is not among `sets`, or
/// `Some(vec![])` when the full set is missing. Closure under pairwise
/// intersection together with the full set gives closure under every finite
/// intersection, so the check is exhaustive.
fn first_unclosed(sets: &[Bits], full: &Bits, nonempty_only: bool) -> Option<Vec<usize>> {
    let index: HashMap<&Bits, usize> = sets.iter().enumerate().rev().map(|(i, s)| (s, i)).collect();
    if !nonempty_only && !index.contains_key(full) {
        return Some(vec![]);
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if !index.contains_key(&sets[i].and(&sets[j])) {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

/// Whether every family of properties has a meet property and every non-empty
/// family of states a join state. Witnesses are the offending families by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub property_complete: bool,
    pub property_witness: Option<Vec<usize>>,
    pub state_complete: bool,
    pub state_witness: Option<Vec<usize>>,
}

pub fn completeness_report(sps: &FiniteStatePropertySpace) -> Result<CompletenessReport, SpaError> {
    let size = sps.n_properties().max(sps.n_states());
    if size > COMPLETENESS_CAP {
        return Err(SpaError::CapExceeded { size, cap: COMPLETENESS_CAP });
    }
    let extents: Vec<Bits> = (0..sps.n_properties()).map(|a| sps.kappa_bits(a)).collect();
    let intents: Vec<Bits> = (0..sps.n_states()).map(|p| sps.xi_bits(p)).collect();
    let property_witness = first_unclosed(&extents, &Bits::full(sps.n_states()), false);
    let state_witness = first_unclosed(&intents, &Bits::full(sps.n_properties()), true);
    Ok(CompletenessReport {
        property_complete: property_witness.is_none(),
        property_witness,
        state_complete: state_witness.is_none(),
        state_witness,
    })
}

/// `s(p)`: the property whose extent is `∩_{a ∈ ξ(p)} κ(a)`.
/// `t(a)`: the state whose intent is `∩_{p ∈ κ(a)} ξ(p)`, absent when `κ(a) = ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyStateMaps {
    pub s: Vec<usize>,
    pub t: Vec<Option<usize>>,
}

pub fn property_state_maps(sps: &FiniteStatePropertySpace) -> Result<PropertyStateMaps, SpaError> {
    let report = completeness_report(sps)?;
    if !report.property_complete || !report.state_complete {
        return Err(SpaError::Precondition("space is not property and state complete".into()));
    }
    let (np, ns) = (sps.n_properties(), sps.n_states());
    let extents: Vec<Bits> = (0..np).map(|a| sps.kappa_bits(a)).collect();
    let intents: Vec<Bits> = (0..ns).map(|p| sps.xi_bits(p)).collect();
    let s = (0..ns)
        .map(|p| {
            let ext = intents[p].ones().fold(Bits::full(ns), |acc, a| acc.and(&extents[a]));
            extents.iter().position(|e| *e == ext).expect("property complete")
        })
        .collect();
    let t = (0..np)
        .map(|a| {
            if extents[a].is_empty() {
                return None;
            }
            let int = extents[a].ones().fold(Bits::full(np), |acc, p| acc.and(&intents[p]));
            Some(intents.iter().position(|i| *i == int).expect("state complete"))
        })
        .collect();
    Ok(PropertyStateMaps { s, t })
}

impl PropertyStateMaps {
    /// Checks `p ≺ q ⇔ s(p) ≺ s(q)` and `ξ(p) = [s(p), +∞)` for every state.
    pub fn verify(&self, sps: &FiniteStatePropertySpace) -> Result<(), String> {
        let (prop, state) = sps.induced_orders();
        let ns = sps.n_states();
        for p in 0..ns {
            for q in 0..ns {
                if state.leq(p, q) != prop.leq(self.s[p], self.s[q]) {
                    return Err(format!("order not preserved for states {} and {}", sps.states()[p], sps.states()[q]));
                }
            }
            for a in 0..sps.n_properties() {
                if sps.is_actual(p, a) != prop.leq(self.s[p], a) {
                    return Err(format!("ξ({}) is not the up-set of s", sps.states()[p]));
                }
            }
        }
        Ok(())
    }
}

pub fn check_axiom1(sps: &FiniteStatePropertySpace) -> Verdict {
    let pl = match lattice_or_verdict(sps) {
        Ok(pl) => pl,
        Err(v) => return v,
    };
    axiom1_on(sps, &pl)
}

fn lattice_or_verdict(sps: &FiniteStatePropertySpace) -> Result<PropertyLattice, Verdict> {
    if sps.n_properties() > LATTICE_CAP {
        return Err(Verdict::Inconclusive {
            reason: format!("{} properties exceed the cap of {LATTICE_CAP}", sps.n_properties()),
        });
    }
    match sps.property_lattice() {
        Ok(pl) if pl.lattice.len() > LATTICE_CAP => Err(Verdict::Inconclusive {
            reason: format!("lattice of {} elements exceeds the cap of {LATTICE_CAP}", pl.lattice.len()),
        }),
        Ok(pl) => Ok(pl),
        Err(SpaError::NotALattice { a, b, missing }) => {
            let idx = |l: &str| sps.property_index(l).unwrap_or(usize::MAX);
            Err(Verdict::fails(Witness::with_labels(
                &format!("missing_{missing}"),
                vec![idx(&a), idx(&b)],
                vec![a, b],
                format!("the property order has no {missing} here"),
            )))
        }
        Err(e) => Err(Verdict::Inconclusive { reason: e.to_string() }),
    }
}

fn axiom1_on(sps: &FiniteStatePropertySpace, pl: &PropertyLattice) -> Verdict {
    let l = &pl.lattice;
    let top = pl.property_of(l.top());
    let bottom = pl.property_of(l.bottom());
    let state_witness = |kind: &str, p: usize, detail: &str| {
        Verdict::fails(Witness::with_labels(kind, vec![p], vec![sps.states()[p].clone()], detail.into()))
    };
    if let Some(p) = (0..sps.n_states()).find(|&p| !sps.is_actual(p, top)) {
        return state_witness("improper_state", p, "I is not actual");
    }
    if let Some(p) = (0..sps.n_states()).find(|&p| sps.is_actual(p, bottom)) {
        return state_witness("absurd_state", p, "0 is actual");
    }
    // κ(x ∧ y) = κ(x) ∩ κ(y) on pairs extends to all families by associativity,
    // and the empty family is the I check above.
    let ext: Vec<Bits> = (0..l.len()).map(|x| sps.kappa_bits(pl.property_of(x))).collect();
    for x in 0..l.len() {
        for y in x + 1..l.len() {
            if ext[l.meet(x, y)] != ext[x].and(&ext[y]) {
                return Verdict::fails(Witness::new(
                    "meet_actuality",
                    l,
                    &[x, y],
                    format!("κ({}) ≠ κ(x) ∩ κ(y)", l.label(l.meet(x, y))),
                ));
            }
        }
    }
    Verdict::Holds { exhaustive: true }
}

/// Every element is the join of the atoms below it.
pub fn check_atomistic(l: &FiniteLattice) -> Verdict {
    let atoms = l.atoms();
    for x in 0..l.len() {
        let j = l.join_all(atoms.iter().copied().filter(|&t| l.leq(t, x)));
        if j != x {
            return Verdict::fails(Witness::new(
                "not_join_of_atoms",
                l,
                &[x],
                format!("atoms below join to {}", l.label(j)),
            ));
        }
    }
    Verdict::Holds { exhaustive: true }
}

/// `t` an atom with `a ∧ t = 0` and `a < b < a ∨ t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Covering {
    pub a: usize,
    pub t: usize,
    pub b: usize,
}

/// The lexicographically first `(a, t, b)` violating the covering law.
pub fn covering_counterexample(l: &FiniteLattice) -> Option<Covering> {
    let atoms = l.atoms();
    for a in 0..l.len() {
        for &t in &atoms {
            if l.meet(a, t) != l.bottom() {
                continue;
            }
            let j = l.join(a, t);
            if let Some(b) = (0..l.len()).find(|&b| l.lt(a, b) && l.lt(b, j)) {
                return Some(Covering { a, t, b });
            }
        }
    }
    None
}

fn covering_verdict(l: &FiniteLattice) -> Verdict {
    match covering_counterexample(l) {
        Some(Covering { a, t, b }) => Verdict::fails(Witness::new(
            "covering",
            l,
            &[a, t, b],
            format!("a < b < a ∨ t = {}", l.label(l.join(a, t))),
        )),
        None => Verdict::Holds { exhaustive: true },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub properties: usize,
    pub states: usize,
    pub lattice_size: Option<usize>,
    pub atoms: Option<usize>,
    pub coatoms: Option<usize>,
    pub completeness: Option<CompletenessReport>,
    pub axiom1: Verdict,
    pub axiom2: Verdict,
    pub axiom3: Verdict,
    pub axiom4: Verdict,
    pub axiom5: Verdict,
    pub axiom6: Verdict,
    pub axiom7: Verdict,
    /// `"supplied"` or `"searched"` when an orthocomplementation was used.
    pub ortho_source: Option<String>,
    /// Complement pairs by lattice label.
    pub ortho: Option<Vec<(String, String)>>,
    /// Largest set of pairwise orthogonal nonzero elements.
    pub longest_orthogonal_chain: Option<usize>,
}

impl AxiomReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("axiom1", &self.axiom1),
            ("axiom2", &self.axiom2),
            ("axiom3", &self.axiom3),
            ("axiom4", &self.axiom4),
            ("axiom5", &self.axiom5),
            ("axiom6", &self.axiom6),
            ("axiom7", &self.axiom7),
        ]
    }

    pub fn any_inconclusive(&self) -> bool {
        self.verdicts().iter().any(|(_, v)| matches!(v, Verdict::Inconclusive { .. }))
    }
}

const AXIOM6_REASON: &str = "plane transitivity needs an automorphism search, which is not implemented";

/// Runs every applicable checker. `ortho` gives complement pairs by property
/// index; when absent an orthocomplementation is searched for.
pub fn axiom_report(
    sps: &FiniteStatePropertySpace,
    ortho: Option<&[(usize, usize)]>,
) -> Result<AxiomReport, SpaError> {
    let completeness = completeness_report(sps).ok();
    let mut report = AxiomReport {
        properties: sps.n_properties(),
        states: sps.n_states(),
        lattice_size: None,
        atoms: None,
        coatoms: None,
        completeness,
        axiom1: Verdict::Holds { exhaustive: true },
        axiom2: na("no property lattice"),
        axiom3: na("no property lattice"),
        axiom4: na("no property lattice"),
        axiom5: na("no property lattice"),
        axiom6: na(AXIOM6_REASON),
        axiom7: na("no property lattice"),
        ortho_source: None,
        ortho: None,
        longest_orthogonal_chain: None,
    };
    let pl = match lattice_or_verdict(sps) {
        Ok(pl) => pl,
        Err(v) => {
            report.axiom1 = v;
            return Ok(report);
        }
    };
    let l = &pl.lattice;
    report.lattice_size = Some(l.len());
    report.atoms = Some(l.atoms().len());
    report.coatoms = Some(l.coatoms().len());
    report.axiom1 = axiom1_on(sps, &pl);
    report.axiom2 = check_atomistic(l);
    report.axiom3 = covering_verdict(l);

    let chosen = match ortho {
        Some(pairs) => {
            let mapped: Vec<(usize, usize)> = pairs
                .iter()
                .map(|&(a, b)| {
                    if a >= sps.n_properties() || b >= sps.n_properties() {
                        Err(SpaError::InvalidOrtho(format!("property pair ({a}, {b}) out of range")))
                    } else {
                        Ok((pl.element_of(a), pl.element_of(b)))
                    }
                })
                .collect::<Result<_, _>>()?;
            let o = OrthoMap::from_pairs(l.len(), &mapped)?;
            o.validate(l)?;
            report.axiom4 = Verdict::Holds { exhaustive: true };
            report.ortho_source = Some("supplied".into());
            Some(o)
        }
        None => match ortho_search(l) {
            OrthoSearch::Found { ortho } => {
                report.axiom4 = Verdict::Holds { exhaustive: true };
                report.ortho_source = Some("searched".into());
                Some(ortho)
            }
            OrthoSearch::RefutedByCounting { atoms, coatoms } => {
                report.axiom4 = Verdict::fails(Witness::with_labels(
                    "atom_coatom_count",
                    vec![atoms, coatoms],
                    vec![],
                    format!("none found: {atoms} atoms vs {coatoms} coatoms"),
                ));
                None
            }
            OrthoSearch::NoneExhaustive => {
                report.axiom4 = Verdict::fails(Witness::with_labels(
                    "exhaustive_search",
                    vec![],
                    vec![],
                    "none found: no order-reversing involution with a ∧ a′ = 0".into(),
                ));
                None
            }
            OrthoSearch::Inconclusive { size, cap } => {
                report.axiom4 = Verdict::Inconclusive { reason: format!("lattice of {size} exceeds search cap {cap}") };
                None
            }
        },
    };
    match chosen {
        Some(o) => {
            report.axiom5 = check_weak_modularity(l, &o);
            report.axiom7 = check_irreducible(l, &o);
            report.longest_orthogonal_chain = longest_orthogonal_chain(l, &o);
            report.ortho =
                Some(o.pairs().into_iter().map(|(a, b)| (l.label(a).to_string(), l.label(b).to_string())).collect());
        }
        None => {
            report.axiom5 = na("no orthocomplementation");
            report.axiom7 = na("no orthocomplementation");
        }
    }
    Ok(report)
}

fn na(reason: &str) -> Verdict {
    Verdict::NotApplicable { reason: reason.into() }
}
