//! Dual trees of marked rational curves and their weight-driven reductions.
//!
//! A [`MarkedTree`] is the combinatorial shadow of a nodal curve of
//! arithmetic genus 0: vertices are components, edges are nodes, and legs
//! are marked points (with multiplicities, so that collided markings can be
//! recorded on one leg).  [`hassett_reduce`] contracts the components a
//! weight assignment destabilises; [`veronese_reduce`] contracts the
//! components on which the associated linear system has degree zero, as
//! measured by [`sigma`].  [`enumerate_strata`] lists the self-intersection
//! strata of the 2-marking boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::rational::{format_q, Q};
use crate::{Error, Result};

/// A marked point attached to a tree vertex; `multiplicity > 1` records
/// several markings collided at one point, labelled by their smallest name.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Leg {
    /// The vertex carrying the marking.
    pub vertex: String,
    /// How many original markings this leg represents.
    pub multiplicity: u32,
}

/// A connected acyclic dual graph with labelled, multiplicity-weighted legs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedTree {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    legs: BTreeMap<u32, Leg>,
}

fn normalize_edge(a: String, b: String) -> (String, String) {
    if a <= b { (a, b) } else { (b, a) }
}

impl MarkedTree {
    /// Builds and validates a tree.  Legs are `(label, vertex, multiplicity)`
    /// triples; edges may be given in either orientation.
    pub fn new(
        vertices: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = (String, String)>,
        legs: impl IntoIterator<Item = (u32, String, u32)>,
    ) -> Result<Self> {
        let mut vertex_set = BTreeSet::new();
        for v in vertices {
            if !vertex_set.insert(v.clone()) {
                return Err(Error::InvalidTree(format!("vertex {v:?} declared twice")));
            }
        }
        if vertex_set.is_empty() {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidTree(format!("self-loop at {a:?}")));
            }
            for end in [&a, &b] {
                if !vertex_set.contains(end) {
                    return Err(Error::InvalidTree(format!("edge endpoint {end:?} undeclared")));
                }
            }
            if !edge_set.insert(normalize_edge(a.clone(), b.clone())) {
                return Err(Error::InvalidTree(format!("edge ({a:?}, {b:?}) repeated")));
            }
        }
        if edge_set.len() + 1 != vertex_set.len() {
            return Err(Error::InvalidTree(format!(
                "{} vertices need exactly {} edges, found {}",
                vertex_set.len(),
                vertex_set.len() - 1,
                edge_set.len()
            )));
        }
        let mut leg_map = BTreeMap::new();
        for (label, vertex, multiplicity) in legs {
            if label == 0 {
                return Err(Error::InvalidTree("marking labels start at 1".into()));
            }
            if multiplicity == 0 {
                return Err(Error::InvalidTree(format!(
                    "marking {label} has multiplicity 0"
                )));
            }
            if !vertex_set.contains(&vertex) {
                return Err(Error::InvalidTree(format!(
                    "marking {label} attached to undeclared vertex {vertex:?}"
                )));
            }
            if leg_map
                .insert(label, Leg { vertex, multiplicity })
                .is_some()
            {
                return Err(Error::InvalidTree(format!("marking {label} appears twice")));
            }
        }
        let tree = MarkedTree {
            vertices: vertex_set,
            edges: edge_set,
            legs: leg_map,
        };
        // Edge count is already |V|−1, so connectivity excludes cycles too.
        let reachable = tree.side_vertices(tree.vertices.iter().next().expect("nonempty"), None);
        if reachable.len() != tree.vertices.len() {
            return Err(Error::InvalidTree("the graph is disconnected".into()));
        }
        Ok(tree)
    }

    /// Total number of markings, counted with multiplicity.
    pub fn n(&self) -> u32 {
        self.legs.values().map(|leg| leg.multiplicity).sum()
    }

    /// The vertex names in sorted order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    /// The normalised edge set.
    pub fn edges(&self) -> &BTreeSet<(String, String)> {
        &self.edges
    }

    /// The legs by marking label.
    pub fn legs(&self) -> &BTreeMap<u32, Leg> {
        &self.legs
    }

    /// Number of edges at a vertex.
    pub fn degree(&self, vertex: &str) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| a == vertex || b == vertex)
            .count()
    }

    /// The `(label, multiplicity)` pairs attached to a vertex, by label.
    pub fn legs_at(&self, vertex: &str) -> Vec<(u32, u32)> {
        self.legs
            .iter()
            .filter(|(_, leg)| leg.vertex == vertex)
            .map(|(&label, leg)| (label, leg.multiplicity))
            .collect()
    }

    /// Vertices reachable from `start` without crossing `avoid`.
    fn side_vertices(&self, start: &str, avoid: Option<&(String, String)>) -> BTreeSet<String> {
        let mut seen = BTreeSet::from([start.to_owned()]);
        let mut queue = vec![start.to_owned()];
        while let Some(v) = queue.pop() {
            for edge @ (a, b) in &self.edges {
                if avoid == Some(edge) {
                    continue;
                }
                let next = if *a == v {
                    b
                } else if *b == v {
                    a
                } else {
                    continue;
                };
                if seen.insert(next.clone()) {
                    queue.push(next.clone());
                }
            }
        }
        seen
    }

    /// JSON rendering: vertex list, edge pairs, legs by label.
    pub fn to_json(&self) -> serde_json::Value {
        let legs: serde_json::Map<String, serde_json::Value> = self
            .legs
            .iter()
            .map(|(label, leg)| {
                (
                    label.to_string(),
                    serde_json::json!({ "vertex": leg.vertex, "multiplicity": leg.multiplicity }),
                )
            })
            .collect();
        serde_json::json!({
            "vertices": self.vertices.iter().collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
            "legs": legs,
        })
    }

    /// Reads a tree from the JSON produced by [`Self::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("tree must be an object".into()))?;
        let vertices = obj
            .get("vertices")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Json("tree needs an array \"vertices\"".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Json("vertex names must be strings".into()))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let mut edges = Vec::new();
        if let Some(list) = obj.get("edges") {
            for pair in list
                .as_array()
                .ok_or_else(|| Error::Json("\"edges\" must be an array".into()))?
            {
                let ends = pair
                    .as_array()
                    .filter(|e| e.len() == 2)
                    .ok_or_else(|| Error::Json("each edge must be a 2-element array".into()))?;
                let mut it = ends.iter().map(|e| {
                    e.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Error::Json("edge endpoints must be strings".into()))
                });
                edges.push((it.next().unwrap()?, it.next().unwrap()?));
            }
        }
        let mut legs = Vec::new();
        if let Some(map) = obj.get("legs") {
            for (label, entry) in map
                .as_object()
                .ok_or_else(|| Error::Json("\"legs\" must be an object".into()))?
            {
                let label: u32 = label
                    .parse()
                    .map_err(|_| Error::Json(format!("bad marking label {label:?}")))?;
                let vertex = entry
                    .get("vertex")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::Json(format!("marking {label} needs a vertex")))?;
                let multiplicity = match entry.get("multiplicity") {
                    None => 1,
                    Some(v) => v
                        .as_u64()
                        .and_then(|m| u32::try_from(m).ok())
                        .ok_or_else(|| {
                            Error::Json(format!("marking {label} has a bad multiplicity"))
                        })?,
                };
                legs.push((label, vertex.to_owned(), multiplicity));
            }
        }
        MarkedTree::new(vertices, edges, legs)
    }
}

impl fmt::Display for MarkedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tree{{ ")?;
        for v in &self.vertices {
            write!(f, "{v}: [")?;
            for (i, (label, mult)) in self.legs_at(v).into_iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{label}")?;
                if mult > 1 {
                    write!(f, "*{mult}")?;
                }
            }
            write!(f, "]; ")?;
        }
        if !self.edges.is_empty() {
            write!(f, "edges: ")?;
            for (i, (a, b)) in self.edges.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "({a},{b})")?;
            }
            write!(f, " ")?;
        }
        write!(f, "}}")
    }
}

/// A weight assignment for the markings, with the parameters of the ambient
/// linear system (`gamma`, `degree`) when one is in play.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightData {
    weights: Vec<Q>,
    gamma: Q,
    degree: u32,
}

impl WeightData {
    /// Weights for a Hassett-style stability condition: each `0 < aᵢ ≤ 1`
    /// and `Σ aᵢ > 2`.
    pub fn hassett(weights: Vec<Q>) -> Result<Self> {
        Self::check_weights(&weights)?;
        let total: Q = weights.iter().sum();
        if total <= Q::from_integer(2.into()) {
            return Err(Error::InvalidWeights(format!(
                "weights must sum to more than 2, got {}",
                format_q(&total)
            )));
        }
        Ok(WeightData {
            weights,
            gamma: Q::zero(),
            degree: 1,
        })
    }

    /// Weights tied to a degree-`d` system with node parameter `γ`,
    /// requiring the normalisation `(d−1)·γ + Σ aᵢ = d + 1`.
    pub fn veronese(weights: Vec<Q>, gamma: Q, degree: u32) -> Result<Self> {
        Self::check_weights(&weights)?;
        if gamma < Q::zero() || gamma >= Q::one() {
            return Err(Error::InvalidWeights(format!(
                "gamma must satisfy 0 <= gamma < 1, got {}",
                format_q(&gamma)
            )));
        }
        if degree == 0 {
            return Err(Error::InvalidWeights("degree must be at least 1".into()));
        }
        let total: Q = weights.iter().sum();
        let lhs = Q::from_integer((degree - 1).into()) * &gamma + &total;
        let rhs = Q::from_integer((degree + 1).into());
        if lhs != rhs {
            return Err(Error::InvalidWeights(format!(
                "normalisation (d-1)*gamma + sum(a) = d+1 fails: {} != {}",
                format_q(&lhs),
                format_q(&rhs)
            )));
        }
        Ok(WeightData {
            weights,
            gamma,
            degree,
        })
    }

    fn check_weights(weights: &[Q]) -> Result<()> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        for (i, a) in weights.iter().enumerate() {
            if *a <= Q::zero() || *a > Q::one() {
                return Err(Error::InvalidWeights(format!(
                    "weight a_{} = {} is outside (0, 1]",
                    i + 1,
                    format_q(a)
                )));
            }
        }
        Ok(())
    }

    /// The weight list, indexed by label − 1.
    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    /// The weight of one marking label.
    pub fn weight(&self, label: u32) -> Result<&Q> {
        usize::try_from(label)
            .ok()
            .and_then(|i| i.checked_sub(1))
            .and_then(|i| self.weights.get(i))
            .ok_or_else(|| Error::InvalidWeights(format!("no weight for marking {label}")))
    }

    /// The node parameter γ.
    pub fn gamma(&self) -> &Q {
        &self.gamma
    }

    /// The degree `d` of the ambient system.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Whether `(d−1)·γ + Σ aᵢ = d + 1` holds (required by [`sigma`]).
    pub fn is_normalized(&self) -> bool {
        let total: Q = self.weights.iter().sum();
        Q::from_integer((self.degree - 1).into()) * &self.gamma + total
            == Q::from_integer((self.degree + 1).into())
    }
}

/// Total weight of the legs on a set of vertices: `Σ multiplicity · a`.
fn leg_weight_on<'a>(
    tree: &MarkedTree,
    weights: &WeightData,
    vertices: impl IntoIterator<Item = &'a String>,
) -> Result<Q> {
    let set: BTreeSet<&String> = vertices.into_iter().collect();
    let mut total = Q::zero();
    for (&label, leg) in tree.legs() {
        if set.contains(&leg.vertex) {
            total += Q::from_integer(leg.multiplicity.into()) * weights.weight(label)?;
        }
    }
    Ok(total)
}

/// Checks a tree against Hassett stability: every leg fits its weight
/// budget (`multiplicity · a ≤ 1`) and every vertex has leg weight plus
/// degree strictly above 2.
pub fn validate_hassett_stable(tree: &MarkedTree, weights: &WeightData) -> Result<bool> {
    for (&label, leg) in tree.legs() {
        let load = Q::from_integer(leg.multiplicity.into()) * weights.weight(label)?;
        if load > Q::one() {
            return Ok(false);
        }
    }
    for v in tree.vertices.iter() {
        let load = leg_weight_on(tree, weights, [v])?;
        let slots = Q::from_integer(tree.degree(v).into());
        if load + slots <= Q::from_integer(2.into()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Requires ordinary stability (each vertex carries at least three nodes
/// and markings, with multiplicity); reductions start from such trees.
fn require_ordinary_stable(tree: &MarkedTree) -> Result<()> {
    for v in tree.vertices.iter() {
        let marks: u32 = tree.legs_at(v).iter().map(|&(_, m)| m).sum();
        if tree.degree(v) + usize::try_from(marks).expect("small") < 3 {
            return Err(Error::InvalidTree(format!(
                "vertex {v:?} has fewer than 3 special points and is not stable"
            )));
        }
    }
    Ok(())
}

/// One contraction step of a reduction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContractionRecord {
    /// The contracted vertices, sorted.
    pub vertices: Vec<String>,
    /// Why the contraction happened and where the markings went.
    pub reason: String,
}

/// Outcome of a reduction: the reduced tree, the contraction log, and (for
/// Veronese reductions) the per-vertex σ values of the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionReport {
    /// The reduced tree.
    pub result: MarkedTree,
    /// Contractions in the order they were applied.
    pub contracted: Vec<ContractionRecord>,
    /// σ of each input vertex (empty for Hassett reductions).
    pub sigma_values: BTreeMap<String, i64>,
}

impl ReductionReport {
    /// JSON rendering of the report.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "result": self.result.to_json(),
            "result_text": self.result.to_string(),
            "contracted": self.contracted.iter().map(|r| serde_json::json!({
                "vertices": r.vertices,
                "reason": r.reason,
            })).collect::<Vec<_>>(),
            "sigma": self.sigma_values,
        })
    }
}

impl fmt::Display for ReductionReport {
    /// The reduced tree, the σ of each input vertex when one was computed,
    /// and one line per contraction (or a note that none happened).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.result)?;
        if !self.sigma_values.is_empty() {
            let sigma: Vec<String> = self
                .sigma_values
                .iter()
                .map(|(vertex, value)| format!("{vertex}: {value}"))
                .collect();
            write!(f, "\nsigma: {}", sigma.join(", "))?;
        }
        if self.contracted.is_empty() {
            write!(f, "\nno contractions")?;
        }
        for record in &self.contracted {
            write!(
                f,
                "\ncontracted {{{}}}: {}",
                record.vertices.join(", "),
                record.reason
            )?;
        }
        Ok(())
    }
}

/// Contracts every tail the weight assignment destabilises.
///
/// A tail (one side of an edge) with total leg weight ≤ 1 collapses to a
/// point on the vertex across the cut edge; its markings merge into one leg
/// labelled by their minimum, carrying the total multiplicity.  Tails are
/// contracted smallest first, re-examining after each step, so the log is
/// deterministic; the result is the weight-stable reduction of the input.
pub fn hassett_reduce(tree: &MarkedTree, weights: &WeightData) -> Result<ReductionReport> {
    require_ordinary_stable(tree)?;
    for (&label, leg) in tree.legs() {
        let load = Q::from_integer(leg.multiplicity.into()) * weights.weight(label)?;
        if load > Q::one() {
            return Err(Error::InvalidWeights(format!(
                "marking {label} with multiplicity {} exceeds the weight budget",
                leg.multiplicity
            )));
        }
    }
    let mut current = tree.clone();
    let mut contracted = Vec::new();
    loop {
        // Candidate tails: sides of edges whose leg weight is within budget.
        let mut candidates: Vec<(Vec<String>, String, Q)> = Vec::new();
        for (a, b) in current.edges().clone() {
            let edge = (a.clone(), b.clone());
            for (inside, outside) in [(&a, &b), (&b, &a)] {
                let side = current.side_vertices(inside, Some(&edge));
                let load = leg_weight_on(&current, weights, &side)?;
                if load <= Q::one() {
                    candidates.push((side.into_iter().collect(), outside.clone(), load));
                }
            }
        }
        let Some((side, attach, load)) = candidates
            .into_iter()
            .min_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)))
        else {
            break;
        };
        let (next, merged) = contract_component(&current, &side, &attach, &[])?;
        let (_, total) = merged.ok_or_else(|| {
            Error::InvalidTree("a stable tail always carries markings".into())
        })?;
        contracted.push(ContractionRecord {
            vertices: side,
            reason: format!(
                "tail with leg weight {} <= 1 contracted to a multiplicity-{total} point on {attach}",
                format_q(&load)
            ),
        });
        current = next;
    }
    Ok(ReductionReport {
        result: current,
        contracted,
        sigma_values: BTreeMap::new(),
    })
}

/// Removes `side` from the tree, attaching its merged markings to `attach`
/// and splicing in `extra_edges`.  Returns the new tree and, when the side
/// carried markings, their merged leg as `(minimum label, total
/// multiplicity)`.
fn contract_component(
    tree: &MarkedTree,
    side: &[String],
    attach: &str,
    extra_edges: &[(String, String)],
) -> Result<(MarkedTree, Option<(u32, u32)>)> {
    let removed: BTreeSet<&String> = side.iter().collect();
    let vertices = tree
        .vertices
        .iter()
        .filter(|v| !removed.contains(v))
        .cloned();
    let edges = tree
        .edges
        .iter()
        .filter(|(a, b)| !removed.contains(&a) && !removed.contains(&b))
        .cloned()
        .chain(extra_edges.iter().cloned());
    let mut min_label: Option<u32> = None;
    let mut total: u32 = 0;
    let mut legs: Vec<(u32, String, u32)> = Vec::new();
    for (&label, leg) in tree.legs() {
        if removed.contains(&leg.vertex) {
            min_label = Some(min_label.map_or(label, |m| m.min(label)));
            total += leg.multiplicity;
        } else {
            legs.push((label, leg.vertex.clone(), leg.multiplicity));
        }
    }
    let merged = min_label.map(|label| (label, total));
    if let Some((label, total)) = merged {
        legs.push((label, attach.to_owned(), total));
    }
    Ok((MarkedTree::new(vertices, edges, legs)?, merged))
}

/// The degree the ambient system assigns to a connected set of vertices.
///
/// For a set meeting the rest of the tree in at most one node this is the
/// clamped tail formula `max(0, min(d, ⌈(w − 1)/(1 − γ)⌉))` where `w` is the
/// set's total leg weight; for an interior set it is `d` minus the formula
/// applied to each complementary piece.  Requires normalised weights.
pub fn sigma(tree: &MarkedTree, component: &BTreeSet<String>, weights: &WeightData) -> Result<i64> {
    if !weights.is_normalized() {
        return Err(Error::InvalidWeights(
            "sigma needs weights with (d-1)*gamma + sum(a) = d+1".into(),
        ));
    }
    if component.is_empty() {
        return Err(Error::InvalidArgument("sigma of an empty set".into()));
    }
    for v in component {
        if !tree.vertices.contains(v) {
            return Err(Error::InvalidArgument(format!("unknown vertex {v:?}")));
        }
    }
    // Connectivity of the component inside the tree.
    let anchor = component.iter().next().expect("nonempty");
    let mut seen = BTreeSet::from([anchor.clone()]);
    let mut queue = vec![anchor.clone()];
    while let Some(v) = queue.pop() {
        for (a, b) in tree.edges() {
            let next = if *a == v { b } else if *b == v { a } else { continue };
            if component.contains(next) && seen.insert(next.clone()) {
                queue.push(next.clone());
            }
        }
    }
    if seen.len() != component.len() {
        return Err(Error::InvalidArgument(
            "sigma needs a connected set of vertices".into(),
        ));
    }

    let crossing: Vec<&(String, String)> = tree
        .edges()
        .iter()
        .filter(|(a, b)| component.contains(a) != component.contains(b))
        .collect();
    if crossing.len() <= 1 {
        return tail_degree(tree, weights, component.iter());
    }
    // Interior set: the complement splits into one piece per crossing edge.
    let mut total = i64::from(weights.degree());
    for edge in crossing {
        let outside = if component.contains(&edge.0) { &edge.1 } else { &edge.0 };
        let piece = tree.side_vertices(outside, Some(edge));
        total -= tail_degree(tree, weights, piece.iter())?;
    }
    Ok(total)
}

/// The clamped tail formula on a vertex set.
fn tail_degree<'a>(
    tree: &MarkedTree,
    weights: &WeightData,
    vertices: impl IntoIterator<Item = &'a String>,
) -> Result<i64> {
    let w = leg_weight_on(tree, weights, vertices)?;
    let d = i64::from(weights.degree());
    let raw = (w - Q::one()) / (Q::one() - weights.gamma());
    let ceil = raw.ceil().to_integer();
    let clamped = ceil.max(num_bigint::BigInt::zero()).min(d.into());
    Ok(clamped.to_i64().expect("sigma is between 0 and d"))
}

/// Contracts every connected component of σ-degree 0.
///
/// Vertices with `σ = 0` carry no degree under the ambient system.  A
/// σ-zero tail collapses onto its neighbour; a σ-zero spine joining `k ≥ 2`
/// surviving components collapses to a `k`-fold point on the neighbour whose
/// side carries the smallest mark label (a rename-invariant choice), and
/// that neighbour also receives the merged markings.  The σ values of the
/// input tree are returned alongside the result.
pub fn veronese_reduce(tree: &MarkedTree, weights: &WeightData) -> Result<ReductionReport> {
    require_ordinary_stable(tree)?;
    let mut sigma_values = BTreeMap::new();
    for v in tree.vertices.iter() {
        let value = sigma(tree, &BTreeSet::from([v.clone()]), weights)?;
        sigma_values.insert(v.clone(), value);
    }
    let zero_vertices: BTreeSet<String> = sigma_values
        .iter()
        .filter(|&(_, &s)| s == 0)
        .map(|(v, _)| v.clone())
        .collect();
    if zero_vertices.len() == tree.vertices.len() {
        return Err(Error::InvalidTree(
            "every component has sigma 0; the system contracts the whole curve".into(),
        ));
    }

    // Components of the σ-zero locus, found by flooding inside the set.
    let mut remaining = zero_vertices;
    let mut components: Vec<Vec<String>> = Vec::new();
    while let Some(seed) = remaining.iter().next().cloned() {
        let mut comp = BTreeSet::from([seed.clone()]);
        let mut queue = vec![seed];
        while let Some(v) = queue.pop() {
            for (a, b) in tree.edges() {
                let next = if *a == v { b } else if *b == v { a } else { continue };
                if remaining.contains(next) && comp.insert(next.clone()) {
                    queue.push(next.clone());
                }
            }
        }
        for v in &comp {
            remaining.remove(v);
        }
        components.push(comp.into_iter().collect());
    }
    components.sort();

    let mut current = tree.clone();
    let mut contracted = Vec::new();
    for comp in components {
        let comp_set: BTreeSet<&String> = comp.iter().collect();
        // Each crossing edge reaches a distinct survivor (the tree has no
        // cycles), so the survivors double as the crossing count.  They are
        // ordered by the smallest mark label on their side of the component,
        // not by vertex name, so the contraction commutes with renaming.
        let mut survivor_keys: Vec<(u32, String)> = Vec::new();
        for (a, b) in current.edges() {
            let outside = match (comp_set.contains(a), comp_set.contains(b)) {
                (true, false) => b,
                (false, true) => a,
                _ => continue,
            };
            let edge = (a.clone(), b.clone());
            let side = current.side_vertices(outside, Some(&edge));
            let smallest = current
                .legs()
                .iter()
                .filter(|(_, leg)| side.contains(&leg.vertex))
                .map(|(&label, _)| label)
                .min()
                .ok_or_else(|| {
                    Error::InvalidTree("a surviving side always carries markings".into())
                })?;
            survivor_keys.push((smallest, outside.clone()));
        }
        survivor_keys.sort();
        let survivors: Vec<String> = survivor_keys.into_iter().map(|(_, s)| s).collect();
        let k = survivors.len();
        let (attach, extra_edges) = match survivors.as_slice() {
            [] => {
                return Err(Error::InvalidTree(
                    "a sigma-0 component with no neighbours cannot be contracted".into(),
                ))
            }
            [only] => (only.clone(), Vec::new()),
            [hub, rest @ ..] => {
                let extra: Vec<(String, String)> = rest
                    .iter()
                    .map(|other| normalize_edge(hub.clone(), other.clone()))
                    .collect();
                (hub.clone(), extra)
            }
        };
        let (next, merged) = contract_component(&current, &comp, &attach, &extra_edges)?;
        let reason = match (k, merged) {
            (1, Some((_, total))) => {
                format!("sigma 0 tail contracted to a multiplicity-{total} point on {attach}")
            }
            (1, None) => format!("sigma 0 tail contracted onto {attach}"),
            (_, Some(_)) => format!(
                "sigma 0 spine with {k} attachments collapsed to a {k}-fold point at {attach}; \
                 markings moved to {attach}"
            ),
            (_, None) => {
                format!("sigma 0 spine with {k} attachments collapsed to a {k}-fold point at {attach}")
            }
        };
        current = next;
        contracted.push(ContractionRecord {
            vertices: comp,
            reason,
        });
    }
    Ok(ReductionReport {
        result: current,
        contracted,
        sigma_values,
    })
}

/// A codimension-`i` self-intersection stratum of the 2-marking boundary:
/// an unordered set of `i` pairwise disjoint 2-subsets of the markings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct StratumDescriptor {
    pairs: Vec<(u8, u8)>,
}

impl StratumDescriptor {
    /// The pairs, ascending by smaller element.
    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }
}

impl fmt::Display for StratumDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

/// Lists all sets of `depth` pairwise disjoint 2-subsets of `{1, ..., n}`,
/// in lexicographic order.  There are `n! / (2^i · i! · (n−2i)!)` of them
/// (none when `2·depth > n`).
pub fn enumerate_strata(n: u8, depth: u8) -> Result<Vec<StratumDescriptor>> {
    crate::boundary::check_n(n)?;
    if depth == 0 {
        return Err(Error::InvalidArgument(
            "stratum depth must be at least 1".into(),
        ));
    }
    let mut out = Vec::new();
    let mut current: Vec<(u8, u8)> = Vec::new();
    fn recurse(
        n: u8,
        remaining: u8,
        min_first: u8,
        used: u32,
        current: &mut Vec<(u8, u8)>,
        out: &mut Vec<StratumDescriptor>,
    ) {
        if remaining == 0 {
            out.push(StratumDescriptor {
                pairs: current.clone(),
            });
            return;
        }
        for a in min_first..=n {
            if used & (1 << a) != 0 {
                continue;
            }
            for b in (a + 1)..=n {
                if used & (1 << b) != 0 {
                    continue;
                }
                current.push((a, b));
                recurse(n, remaining - 1, a + 1, used | 1 << a | 1 << b, current, out);
                current.pop();
            }
        }
    }
    recurse(n, depth, 1, 0, &mut current, &mut out);
    Ok(out)
}
