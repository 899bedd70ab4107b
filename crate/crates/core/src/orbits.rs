//! k-set decompositions of a group and the voltage graphs whose lifts are
//! token graphs (and line graphs) of Cayley graphs.
//!
//! The group acts on k-subsets by `g . A = {g a : a in A}`. Under a free
//! action every orbit has `|G|` elements and is described by one
//! representative; a configuration `A` is then located as `g . beta` for a
//! unique representative `beta` and element `g`. A token move that sends the
//! representative `alpha` to `g . beta` becomes a base arc `alpha -> beta`
//! with voltage `g`, and `(beta, g) -> g . beta` is an isomorphism from the
//! lift onto the token graph.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Group;
use crate::exec::Execution;
use crate::graph::{cayley_graph, AnyGraph, Digraph, GraphError, Label};
use crate::subsets::{binomial, combinations, rank};
use crate::voltage::{VoltageError, VoltageGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("k = {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error(
        "the translation action is not free: the orbit of {subset:?} has {orbit_size} elements"
    )]
    NotFreeAction {
        subset: Vec<usize>,
        orbit_size: usize,
    },
    #[error("gcd({n}, {k}) != 1")]
    NotCoprime { n: usize, k: usize },
    #[error("invalid generators: {0}")]
    InvalidGenerators(String),
    #[error("invalid representatives: {0}")]
    InvalidRepresentatives(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `g . A`, sorted.
pub fn translate(group: &Group, g: usize, subset: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = subset.iter().map(|&a| group.op(g, a)).collect();
    out.sort_unstable();
    out
}

/// Partition of all k-subsets of a group into free translation orbits.
#[derive(Debug, Clone, PartialEq)]
pub struct KSetDecomposition {
    group: Group,
    k: usize,
    representatives: Vec<Vec<usize>>,
    /// `(representative, g)` for each k-subset, indexed by lexicographic rank.
    index: Vec<(usize, usize)>,
}

impl KSetDecomposition {
    /// Representatives are the lexicographic minima of their orbits.
    pub fn new(group: &Group, k: usize) -> Result<Self, OrbitError> {
        let n = group.order();
        check_k(k, n)?;
        let mut index = vec![None; binomial(n, k)];
        let mut reps = Vec::new();
        for subset in combinations(n, k) {
            if index[rank(&subset, n)].is_some() {
                continue;
            }
            fill_orbit(group, &subset, reps.len(), &mut index)?;
            reps.push(subset);
        }
        Ok(KSetDecomposition {
            group: group.clone(),
            k,
            representatives: reps,
            index: index.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Uses the given representatives, in the given order. They must be
    /// k-subsets with pairwise distinct free orbits covering every k-subset.
    pub fn with_representatives(
        group: &Group,
        k: usize,
        reps: Vec<Vec<usize>>,
    ) -> Result<Self, OrbitError> {
        let n = group.order();
        check_k(k, n)?;
        let mut index = vec![None; binomial(n, k)];
        let mut sorted = Vec::with_capacity(reps.len());
        for (i, rep) in reps.into_iter().enumerate() {
            let mut r = rep.clone();
            r.sort_unstable();
            r.dedup();
            if r.len() != k || r.iter().any(|&x| x >= n) {
                return Err(OrbitError::InvalidRepresentatives(format!(
                    "{rep:?} is not a {k}-subset of the group"
                )));
            }
            if let Some((j, _)) = index[rank(&r, n)] {
                return Err(OrbitError::InvalidRepresentatives(format!(
                    "{r:?} lies in the orbit of representative {j}"
                )));
            }
            fill_orbit(group, &r, i, &mut index)?;
            sorted.push(r);
        }
        if let Some(missing) = index.iter().position(Option::is_none) {
            let subset = combinations(n, k).nth(missing).unwrap();
            return Err(OrbitError::InvalidRepresentatives(format!(
                "no representative covers {subset:?}"
            )));
        }
        Ok(KSetDecomposition {
            group: group.clone(),
            k,
            representatives: sorted,
            index: index.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn representatives(&self) -> &[Vec<usize>] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// `(i, g)` with `subset = g . representatives[i]`; `subset` must be sorted.
    pub fn locate(&self, subset: &[usize]) -> Option<(usize, usize)> {
        let n = self.group.order();
        let valid = subset.len() == self.k
            && subset.windows(2).all(|w| w[0] < w[1])
            && subset.iter().all(|&x| x < n);
        valid.then(|| self.index[rank(subset, n)])
    }

    pub fn orbit(&self, i: usize) -> Vec<Vec<usize>> {
        (0..self.group.order())
            .map(|g| translate(&self.group, g, &self.representatives[i]))
            .collect()
    }
}

fn check_k(k: usize, n: usize) -> Result<(), OrbitError> {
    if k == 0 || k > n {
        Err(OrbitError::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

fn fill_orbit(
    group: &Group,
    rep: &[usize],
    i: usize,
    index: &mut [Option<(usize, usize)>],
) -> Result<(), OrbitError> {
    let n = group.order();
    let mut seen = Vec::with_capacity(n);
    for g in 0..n {
        let r = rank(&translate(group, g, rep), n);
        if seen.contains(&r) {
            let orbit_size = {
                let mut all: Vec<usize> =
                    (0..n).map(|h| rank(&translate(group, h, rep), n)).collect();
                all.sort_unstable();
                all.dedup();
                all.len()
            };
            return Err(OrbitError::NotFreeAction {
                subset: rep.to_vec(),
                orbit_size,
            });
        }
        if let Some((j, _)) = index[r] {
            return Err(OrbitError::InvalidRepresentatives(format!(
                "orbits of representatives {j} and {i} overlap"
            )));
        }
        seen.push(r);
        index[r] = Some((i, g));
    }
    Ok(())
}

/// `k_set_decomposition(G, k)` with lexicographically minimal representatives.
pub fn k_set_decomposition(group: &Group, k: usize) -> Result<KSetDecomposition, OrbitError> {
    KSetDecomposition::new(group, k)
}

/// One representative per rotation class of k-subsets of `Z_n`: the subsets
/// strictly smaller than each of their non-trivial rotations.
pub fn necklace_representatives(n: usize, k: usize) -> Result<Vec<Vec<usize>>, OrbitError> {
    check_k(k, n)?;
    if gcd(n, k) != 1 {
        return Err(OrbitError::NotCoprime { n, k });
    }
    let rotate = |s: &[usize], r: usize| {
        let mut out: Vec<usize> = s.iter().map(|&x| (x + r) % n).collect();
        out.sort_unstable();
        out
    };
    Ok(combinations(n, k)
        .filter(|s| (1..n).all(|r| *s < rotate(s, r)))
        .collect())
}

/// Builds the quotient voltage graph from a move generator.
///
/// `moves(config)` lists the single-token moves `(from, to)` available in
/// `config`; the moved configuration is `config - from + to`. `locate` maps a
/// configuration to `(representative, g)`. In undirected mode the arc of the
/// move `x -> y` at representative `alpha`, landing in `g . beta`, is paired
/// with the move `g^-1 y -> g^-1 x` at `beta`.
pub fn quotient_voltage_graph<M, L>(
    group: &Group,
    reps: &[Vec<usize>],
    moves: M,
    locate: L,
    undirected: bool,
    exec: Execution,
) -> Result<VoltageGraph, OrbitError>
where
    M: Fn(&[usize]) -> Vec<(usize, usize)> + Sync + Send,
    L: Fn(&[usize]) -> Option<(usize, usize)> + Sync + Send,
{
    let per_rep = exec.try_map(reps, |rep| {
        moves(rep)
            .into_iter()
            .map(|(x, y)| {
                let mut moved: Vec<usize> =
                    rep.iter().map(|&a| if a == x { y } else { a }).collect();
                moved.sort_unstable();
                locate(&moved).map(|(j, g)| (x, y, j, g)).ok_or_else(|| {
                    OrbitError::InvalidRepresentatives(format!("{moved:?} is not covered"))
                })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;

    let mut arcs = Vec::new();
    let mut voltages = Vec::new();
    let mut keys = Vec::new();
    for (i, list) in per_rep.iter().enumerate() {
        for &(x, y, j, g) in list {
            arcs.push((i, j));
            voltages.push(g);
            keys.push((i, x, y));
        }
    }
    let pairing = if undirected {
        let lookup: HashMap<(usize, usize, usize), usize> =
            keys.iter().enumerate().map(|(a, &k)| (k, a)).collect();
        let mut p = Vec::with_capacity(arcs.len());
        for (a, &(_, x, y)) in keys.iter().enumerate() {
            let (j, g) = (arcs[a].1, voltages[a]);
            let h = group.inv(g);
            let key = (j, group.op(h, y), group.op(h, x));
            let partner = lookup.get(&key).copied().ok_or_else(|| {
                OrbitError::Voltage(VoltageError::InvalidPairing(format!(
                    "arc {a} has no reverse move"
                )))
            })?;
            p.push(partner);
        }
        Some(p)
    } else {
        None
    };
    let labels = reps.iter().cloned().map(Label::Set).collect();
    let base = Digraph::new(labels, arcs)?;
    Ok(VoltageGraph::from_indices(group, base, voltages, pairing)?)
}

/// Connection set check shared by the Cayley constructions: deduplicated,
/// no identity, non-empty. Returns the set and whether it is inverse-closed.
fn connection_set(group: &Group, conn: &[usize]) -> Result<(Vec<usize>, bool), OrbitError> {
    let mut s: Vec<usize> = Vec::new();
    for &x in conn {
        if x >= group.order() {
            return Err(OrbitError::InvalidGenerators(format!(
                "element index {x} outside the group"
            )));
        }
        if !s.contains(&x) {
            s.push(x);
        }
    }
    if s.is_empty() {
        return Err(GraphError::EmptyConnectionSet.into());
    }
    if s.contains(&group.identity()) {
        return Err(GraphError::IdentityInS.into());
    }
    let closed = s.iter().all(|&x| s.contains(&group.inv(x)));
    Ok((s, closed))
}

/// Base voltage graph of `F_k(Cay(G, S))` with lexicographically minimal representatives.
pub fn token_base_graph(
    group: &Group,
    conn: &[usize],
    k: usize,
) -> Result<VoltageGraph, OrbitError> {
    let dec = KSetDecomposition::new(group, k)?;
    token_base_graph_with(&dec, conn, Execution::default())
}

/// Base voltage graph of `F_k(Cay(G, S))` over a given decomposition. Cayley
/// arcs are `x -> x s`; the result is undirected exactly when `S` is
/// inverse-closed.
pub fn token_base_graph_with(
    dec: &KSetDecomposition,
    conn: &[usize],
    exec: Execution,
) -> Result<VoltageGraph, OrbitError> {
    let group = dec.group();
    let (s, undirected) = connection_set(group, conn)?;
    let moves = |config: &[usize]| {
        config
            .iter()
            .flat_map(|&x| s.iter().map(move |&t| (x, group.op(x, t))))
            .filter(|(_, y)| !config.contains(y))
            .collect()
    };
    quotient_voltage_graph(
        group,
        dec.representatives(),
        moves,
        |c| dec.locate(c),
        undirected,
        exec,
    )
}

/// Base of `J(n, k) = F_k(K_n)` over `Z_n`, with necklace representatives.
pub fn johnson_base(n: usize, k: usize) -> Result<VoltageGraph, OrbitError> {
    check_k(k, n)?;
    if gcd(n, k) != 1 {
        return Err(OrbitError::NotCoprime { n, k });
    }
    let group = Group::cyclic(n).map_err(|e| OrbitError::InvalidGenerators(e.to_string()))?;
    let conn: Vec<usize> = (1..n).collect();
    if conn.is_empty() {
        // n = 1: the single configuration has no moves.
        let base = Digraph::new(vec![Label::Set(vec![0])], Vec::new())?;
        return Ok(VoltageGraph::from_indices(
            &group,
            base,
            Vec::new(),
            Some(Vec::new()),
        )?);
    }
    token_base_graph(&group, &conn, k)
}

/// Base over `Z_m` whose lift is the line graph of `Cay(Z_m; +-a_1, ..., +-a_s)`.
/// Vertex `i` is the edge `{0, a_i}`; the lift vertex `(i, g)` is the edge `{g, g + a_i}`.
pub fn circulant_linegraph_base(m: usize, a: &[usize]) -> Result<VoltageGraph, OrbitError> {
    circulant_linegraph_base_with(m, a, Execution::default())
}

pub fn circulant_linegraph_base_with(
    m: usize,
    a: &[usize],
    exec: Execution,
) -> Result<VoltageGraph, OrbitError> {
    if a.is_empty() {
        return Err(OrbitError::InvalidGenerators("empty generator list".into()));
    }
    if a[0] == 0 || a.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OrbitError::InvalidGenerators(format!(
            "{a:?} must be strictly increasing positive integers"
        )));
    }
    let top = *a.last().unwrap();
    if m < 2 * top + 1 {
        return Err(OrbitError::InvalidGenerators(format!(
            "m = {m} must be at least {}",
            2 * top + 1
        )));
    }
    let group = Group::cyclic(m).map_err(|e| OrbitError::InvalidGenerators(e.to_string()))?;
    let reps: Vec<Vec<usize>> = a.iter().map(|&x| vec![0, x]).collect();
    let steps: Vec<usize> = a.iter().flat_map(|&x| [x, m - x]).collect();
    // Keep one endpoint and slide the other to a different neighbour of the kept one.
    let moves = |edge: &[usize]| {
        let mut out = Vec::new();
        for (keep, from) in [(edge[0], edge[1]), (edge[1], edge[0])] {
            for &d in &steps {
                let to = (keep + d) % m;
                if to != from {
                    out.push((from, to));
                }
            }
        }
        out
    };
    let locate = |edge: &[usize]| {
        let (p, q) = (edge[0], edge[1]);
        let d = (q + m - p) % m;
        a.iter()
            .position(|&x| x == d)
            .map(|j| (j, p))
            .or_else(|| a.iter().position(|&x| x == m - d).map(|j| (j, q)))
    };
    quotient_voltage_graph(&group, &reps, moves, locate, true, exec)
}

/// `Cay(Z_m; +-a_1, ..., +-a_s)`.
pub fn circulant_graph(m: usize, a: &[usize]) -> Result<crate::graph::Graph, OrbitError> {
    let group = Group::cyclic(m).map_err(|e| OrbitError::InvalidGenerators(e.to_string()))?;
    let mut conn = Vec::new();
    for &x in a {
        for y in [x % m, (m - x % m) % m] {
            if !conn.contains(&y) {
                conn.push(y);
            }
        }
    }
    let conn: Vec<_> = conn.into_iter().map(|i| group.element(i)).collect();
    Ok(cayley_graph(&group, &conn)?)
}

/// A lift vertex and its image under the natural map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappedVertex {
    pub lift: String,
    pub target: String,
}

/// Full vertex bijection from the lift onto the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismCertificate {
    pub vertices: usize,
    pub arcs: usize,
    pub mapping: Vec<MappedVertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsomorphismFailure {
    Orientation {
        lift_undirected: bool,
        target_undirected: bool,
    },
    VertexCount {
        lift: usize,
        target: usize,
    },
    /// The image of a lift vertex is not a target vertex (or not a k-subset).
    Unmapped {
        lift: String,
        image: String,
    },
    NotInjective {
        first: String,
        second: String,
        image: String,
    },
    ArcMultiplicity {
        tail: String,
        head: String,
        lift: usize,
        target: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IsomorphismOutcome {
    Certificate(IsomorphismCertificate),
    Failure(IsomorphismFailure),
}

impl IsomorphismOutcome {
    pub fn is_certificate(&self) -> bool {
        matches!(self, IsomorphismOutcome::Certificate(_))
    }
}

/// Checks that `(beta, g) -> g . beta` maps the lift of `vg` isomorphically
/// onto `target`, arc multiplicities included. Base vertex labels must be
/// k-subsets of the group and target labels k-subsets of group element indices.
pub fn verify_natural_isomorphism(vg: &VoltageGraph, target: &AnyGraph) -> IsomorphismOutcome {
    use IsomorphismFailure::*;
    let fail = IsomorphismOutcome::Failure;
    let lift = vg.lift();
    if lift.is_undirected() != target.is_undirected() {
        return fail(Orientation {
            lift_undirected: lift.is_undirected(),
            target_undirected: target.is_undirected(),
        });
    }
    let (ld, td) = (lift.digraph(), target.digraph());
    if ld.order() != td.order() {
        return fail(VertexCount {
            lift: ld.order(),
            target: td.order(),
        });
    }
    let target_index: HashMap<&[usize], usize> = td
        .labels()
        .iter()
        .enumerate()
        .filter_map(|(i, l)| l.as_set().map(|s| (s, i)))
        .collect();
    let group = vg.group();
    let n = group.order();
    let mut map = vec![0usize; ld.order()];
    let mut preimage: Vec<Option<usize>> = vec![None; td.order()];
    for (x, slot) in map.iter_mut().enumerate() {
        let (u, g) = (x / n, x % n);
        let image = vg.base().labels()[u]
            .as_set()
            .map(|beta| translate(group, g, beta));
        let found = image.as_deref().and_then(|s| target_index.get(s).copied());
        let Some(y) = found else {
            return fail(Unmapped {
                lift: ld.labels()[x].to_string(),
                image: image.map_or_else(|| "?".into(), |s| Label::Set(s).to_string()),
            });
        };
        if let Some(prev) = preimage[y] {
            return fail(NotInjective {
                first: ld.labels()[prev].to_string(),
                second: ld.labels()[x].to_string(),
                image: td.labels()[y].to_string(),
            });
        }
        preimage[y] = Some(x);
        *slot = y;
    }
    let mut lift_counts: HashMap<(usize, usize), usize> = HashMap::new();
    for &(x, y) in ld.arcs() {
        *lift_counts.entry((map[x], map[y])).or_default() += 1;
    }
    let target_counts = td.arc_counts();
    let mut keys: Vec<(usize, usize)> = lift_counts
        .keys()
        .chain(target_counts.keys())
        .copied()
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for key in keys {
        let (l, t) = (
            lift_counts.get(&key).copied().unwrap_or(0),
            target_counts.get(&key).copied().unwrap_or(0),
        );
        if l != t {
            let (p, q) = (preimage[key.0].unwrap(), preimage[key.1].unwrap());
            return fail(ArcMultiplicity {
                tail: ld.labels()[p].to_string(),
                head: ld.labels()[q].to_string(),
                lift: l,
                target: t,
            });
        }
    }
    IsomorphismOutcome::Certificate(IsomorphismCertificate {
        vertices: ld.order(),
        arcs: ld.arc_count(),
        mapping: (0..ld.order())
            .map(|x| MappedVertex {
                lift: ld.labels()[x].to_string(),
                target: td.labels()[map[x]].to_string(),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAlgebraElement;
    use crate::graph::{complete_graph, directed_cycle, line_graph};
    use crate::token::{token_digraph, token_graph};

    /// Laurent polynomial over `Z_n` from a list of exponents (repeats add up).
    fn poly(g: &Group, exps: &[i64]) -> GroupAlgebraElement {
        let n = g.order() as i64;
        GroupAlgebraElement::from_terms(
            g,
            exps.iter()
                .map(|&e| (e.rem_euclid(n) as usize, 1))
                .collect::<Vec<_>>(),
        )
    }

    fn assert_matrix(vg: &VoltageGraph, expected: &[Vec<Vec<i64>>]) {
        let b = vg.base_matrix();
        let g = vg.group();
        for (u, row) in expected.iter().enumerate() {
            for (v, exps) in row.iter().enumerate() {
                assert_eq!(*b.entry(u, v), poly(g, exps), "entry ({u},{v})");
            }
        }
    }

    #[test]
    fn decompositions() {
        let z5 = Group::cyclic(5).unwrap();
        let d = k_set_decomposition(&z5, 2).unwrap();
        assert_eq!(d.representatives(), &[vec![0, 1], vec![0, 2]]);
        assert_eq!(d.locate(&[3, 4]), Some((0, 3)));
        assert_eq!(d.locate(&[0, 3]), Some((1, 3)));

        let z33 = Group::abelian(&[3, 3]).unwrap();
        let d = k_set_decomposition(&z33, 2).unwrap();
        let labels: Vec<Vec<String>> = d
            .representatives()
            .iter()
            .map(|r| r.iter().map(|&x| z33.label(x)).collect())
            .collect();
        assert_eq!(
            labels,
            [["00", "01"], ["00", "10"], ["00", "11"], ["00", "12"]]
        );

        let z4 = Group::cyclic(4).unwrap();
        assert_eq!(
            k_set_decomposition(&z4, 2),
            Err(OrbitError::NotFreeAction {
                subset: vec![0, 2],
                orbit_size: 2
            })
        );
        assert!(matches!(
            k_set_decomposition(&z4, 0),
            Err(OrbitError::KOutOfRange { .. })
        ));
    }

    #[test]
    fn user_representatives() {
        let z33 = Group::abelian(&[3, 3]).unwrap();
        let e = |s: &str| {
            z33.element_from_coords(&s.chars().map(|c| c as i64 - 48).collect::<Vec<_>>())
                .unwrap()
                .index()
        };
        let reps = vec![
            vec![e("00"), e("10")],
            vec![e("00"), e("01")],
            vec![e("00"), e("11")],
            vec![e("00"), e("21")],
        ];
        let d = KSetDecomposition::with_representatives(&z33, 2, reps.clone()).unwrap();
        assert_eq!(d.len(), 4);
        let mut same_orbit = reps.clone();
        same_orbit[3] = vec![e("00"), e("12")];
        assert!(KSetDecomposition::with_representatives(&z33, 2, same_orbit).is_ok());
        let mut dup = reps.clone();
        dup[3] = vec![e("00"), e("20")];
        assert!(matches!(
            KSetDecomposition::with_representatives(&z33, 2, dup),
            Err(OrbitError::InvalidRepresentatives(_))
        ));
        assert!(KSetDecomposition::with_representatives(&z33, 2, reps[..3].to_vec()).is_err());
    }

    #[test]
    fn necklaces() {
        let s = |v: &[&str]| -> Vec<Vec<usize>> {
            v.iter()
                .map(|w| w.chars().map(|c| c as usize - 48).collect())
                .collect()
        };
        assert_eq!(
            necklace_representatives(7, 3).unwrap(),
            s(&["012", "013", "014", "015", "024"])
        );
        assert_eq!(necklace_representatives(5, 2).unwrap(), s(&["01", "02"]));
        assert_eq!(
            necklace_representatives(7, 2).unwrap(),
            s(&["01", "02", "03"])
        );
        assert_eq!(
            necklace_representatives(6, 2),
            Err(OrbitError::NotCoprime { n: 6, k: 2 })
        );
        for n in 2..13 {
            for k in 1..n {
                if gcd(n, k) != 1 {
                    continue;
                }
                let neck = necklace_representatives(n, k).unwrap();
                assert_eq!(neck.len(), binomial(n, k) / n);
                let d = k_set_decomposition(&Group::cyclic(n).unwrap(), k).unwrap();
                assert_eq!(neck, d.representatives());
            }
        }
    }

    #[test]
    fn johnson_bases_match_known_matrices() {
        let b5 = johnson_base(5, 2).unwrap();
        assert_matrix(
            &b5,
            &[
                vec![vec![1, -1], vec![0, 1, -1, -2]],
                vec![vec![0, 1, -1, 2], vec![2, -2]],
            ],
        );
        assert_eq!(
            b5.base_matrix().to_text(),
            "[ z+1/z        1+z+1/z+1/z^2 ]\n[ 1+z+1/z+z^2  z^2+1/z^2     ]\n"
        );

        let b7 = johnson_base(7, 2).unwrap();
        assert_matrix(
            &b7,
            &[
                vec![vec![1, -1], vec![0, 1, -1, -2], vec![0, 1, -2, -3]],
                vec![vec![0, 1, -1, 2], vec![2, -2], vec![0, -1, 2, -3]],
                vec![vec![0, -1, 2, 3], vec![0, 1, -2, 3], vec![3, -3]],
            ],
        );

        let b73 = johnson_base(7, 3).unwrap();
        assert_matrix(
            &b73,
            &[
                vec![
                    vec![1, -1],
                    vec![0, 1, -1],
                    vec![0, 1],
                    vec![0, 1, 2],
                    vec![0, -2],
                ],
                vec![
                    vec![0, 1, -1],
                    vec![],
                    vec![0, -1, 3],
                    vec![0, 2, 3],
                    vec![1, -1, 3],
                ],
                vec![
                    vec![0, -1],
                    vec![0, 1, -3],
                    vec![3, -3],
                    vec![0, -1, 3],
                    vec![0, -3],
                ],
                vec![
                    vec![0, -1, -2],
                    vec![0, -2, -3],
                    vec![0, 1, -3],
                    vec![],
                    vec![1, -2, 3],
                ],
                vec![
                    vec![0, 2],
                    vec![1, -1, -3],
                    vec![0, 3],
                    vec![-1, 2, -3],
                    vec![2, -2],
                ],
            ],
        );
        for vg in [&b5, &b7, &b73] {
            assert!(vg.base_matrix().is_inverse_symmetric());
        }
        let n = 7;
        for (vg, k) in [(&b7, 2), (&b73, 3)] {
            assert!(vg
                .base_matrix()
                .degrees()
                .iter()
                .all(|&d| d == (k * (n - k)) as i64));
        }
        assert_eq!(
            johnson_base(6, 3).unwrap_err(),
            OrbitError::NotCoprime { n: 6, k: 3 }
        );
    }

    #[test]
    fn toroidal_mesh_base_with_fixed_representatives() {
        let g = Group::abelian(&[3, 3]).unwrap();
        let e = |a: i64, b: i64| g.element_from_coords(&[a, b]).unwrap().index();
        let reps = vec![
            vec![e(0, 0), e(1, 0)],
            vec![e(0, 0), e(0, 1)],
            vec![e(0, 0), e(1, 1)],
            vec![e(0, 0), e(2, 1)],
        ];
        let dec = KSetDecomposition::with_representatives(&g, 2, reps).unwrap();
        let conn = [e(1, 0), e(2, 0), e(0, 1), e(0, 2)];
        let vg = token_base_graph_with(&dec, &conn, Execution::Sequential).unwrap();
        // Monomial y^a z^b is the element (a, b).
        let p = |terms: &[(i64, i64)]| {
            GroupAlgebraElement::from_terms(
                &g,
                terms.iter().map(|&(a, b)| (e(a, b), 1)).collect::<Vec<_>>(),
            )
        };
        let expected = [
            [
                p(&[(1, 0), (2, 0)]),
                p(&[]),
                p(&[(0, 0), (0, 2)]),
                p(&[(1, 0), (1, 2)]),
            ],
            [
                p(&[]),
                p(&[(0, 1), (0, 2)]),
                p(&[(0, 0), (2, 0)]),
                p(&[(0, 0), (1, 0)]),
            ],
            [
                p(&[(0, 0), (0, 1)]),
                p(&[(0, 0), (1, 0)]),
                p(&[]),
                p(&[(0, 0), (2, 0), (1, 1), (1, 2)]),
            ],
            [
                p(&[(2, 0), (2, 1)]),
                p(&[(0, 0), (2, 0)]),
                p(&[(0, 0), (1, 0), (2, 1), (2, 2)]),
                p(&[]),
            ],
        ];
        let b = vg.base_matrix();
        for (u, row) in expected.iter().enumerate() {
            for (v, want) in row.iter().enumerate() {
                assert_eq!(b.entry(u, v), want, "entry ({u},{v})");
            }
        }
        let elems: Vec<_> = conn.iter().map(|&i| g.element(i)).collect();
        let target = token_graph(&cayley_graph(&g, &elems).unwrap(), 2).unwrap();
        assert!(verify_natural_isomorphism(&vg, &target.into()).is_certificate());
    }

    #[test]
    fn circulant_line_graph_bases() {
        let vg = circulant_linegraph_base(12, &[2, 3]).unwrap();
        assert_matrix(
            &vg,
            &[
                vec![vec![2, -2], vec![0, -1, 2, -3]],
                vec![vec![0, 1, -2, 3], vec![3, -3]],
            ],
        );
        let full = johnson_base(7, 2).unwrap();
        let b7 = circulant_linegraph_base(7, &[1, 2, 3]).unwrap();
        assert_eq!(b7.base_matrix(), full.base_matrix());
        for (m, a) in [
            (12, vec![2, 3]),
            (8, vec![1, 2, 3]),
            (11, vec![1, 2, 3]),
            (7, vec![1, 2, 3]),
            (9, vec![1, 4]),
        ] {
            let vg = circulant_linegraph_base(m, &a).unwrap();
            let target = line_graph(&circulant_graph(m, &a).unwrap()).unwrap();
            assert!(
                verify_natural_isomorphism(&vg, &target.into()).is_certificate(),
                "m={m}"
            );
        }
        assert!(matches!(
            circulant_linegraph_base(6, &[1, 3]),
            Err(OrbitError::InvalidGenerators(_))
        ));
        assert!(matches!(
            circulant_linegraph_base(9, &[2, 2]),
            Err(OrbitError::InvalidGenerators(_))
        ));
        assert!(matches!(
            circulant_linegraph_base(9, &[0, 2]),
            Err(OrbitError::InvalidGenerators(_))
        ));
    }

    #[test]
    fn natural_isomorphism_for_johnson_graphs() {
        let vg = johnson_base(5, 2).unwrap();
        let target: AnyGraph = token_graph(&complete_graph(5), 2).unwrap().into();
        let IsomorphismOutcome::Certificate(cert) = verify_natural_isomorphism(&vg, &target) else {
            panic!("expected a certificate");
        };
        assert_eq!(cert.vertices, 10);
        let m = cert.mapping.iter().find(|m| m.lift == "([0,1];3)").unwrap();
        assert_eq!(m.target, "[3,4]");

        let bad = vg.with_corrupted_voltage(0, 2);
        match verify_natural_isomorphism(&bad, &target) {
            IsomorphismOutcome::Failure(IsomorphismFailure::Orientation { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let directed_target: AnyGraph = target.digraph().clone().into();
        match verify_natural_isomorphism(&bad, &directed_target) {
            IsomorphismOutcome::Failure(IsomorphismFailure::ArcMultiplicity { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn directed_token_base() {
        let z5 = Group::cyclic(5).unwrap();
        let vg = token_base_graph(&z5, &[1], 2).unwrap();
        assert!(!vg.is_undirected());
        assert_matrix(&vg, &[vec![vec![], vec![0]], vec![vec![1], vec![-2]]]);
        let target: AnyGraph = token_digraph(&directed_cycle(5), 2).unwrap().into();
        assert!(verify_natural_isomorphism(&vg, &target).is_certificate());
    }

    #[test]
    fn one_token_base_is_a_bouquet() {
        let z6 = Group::cyclic(6).unwrap();
        let vg = token_base_graph(&z6, &[1, 5, 2, 4], 1).unwrap();
        assert_eq!(vg.order(), 1);
        assert_matrix(&vg, &[vec![vec![1, -1, 2, -2]]]);
    }

    #[test]
    fn sequential_and_parallel_bases_agree() {
        let g = Group::abelian(&[5, 3]).unwrap();
        let conn: Vec<usize> = (1..15).collect();
        let dec = k_set_decomposition(&g, 2).unwrap();
        let a = token_base_graph_with(&dec, &conn, Execution::Sequential).unwrap();
        let b = token_base_graph_with(&dec, &conn, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
