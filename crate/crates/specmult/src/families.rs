//! Constructors and recognizers for the graph families with a
//! normalized-Laplacian eigenvalue of multiplicity `n - 3`.
//!
//! Vertex order in every constructor is canonical: clique blocks first, in
//! declaration order, then the special vertices (`x`, `y`, `z` last). The
//! block partitions used by the quotient-matrix arguments are therefore
//! consecutive ranges; see [`g1_partition`] and friends.
//!
//! * `Gamma1(s, t, p)` — disjoint cliques `K_s, K_t, K_p` plus a vertex `z`
//!   adjacent to everything else (`d_z = n - 1`); `G1(t) = Gamma1(t, t, t)`.
//! * `Gamma2(p, s, t)` — cliques `A = K_p`, `B = K_s`, `C = K_t` with hub
//!   `x` adjacent to `A`, `B`, `y` and hub `y` adjacent to `B`, `C`, `x`;
//!   `G2(t) = Gamma2(t, t-1, t)`.
//! * `Gamma3(p, s, t)` — cliques `A, B, C` and a triangle `{x, y, z}` with
//!   `x ~ A, B`, `y ~ B, C`, `z ~ A, C`; `G3(t) = Gamma3(t, t, t)`.

use serde::Serialize;

use crate::graph::Graph;
use crate::structure::Partition;
use crate::{Error, Result};

/// A buildable family with parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete(usize),
    CompleteMultipartite(Vec<usize>),
    KnMinusE(usize),
    G1 { t: usize },
    G2 { t: usize },
    G3 { t: usize },
    Gamma1 { s: usize, t: usize, p: usize },
    Gamma2 { p: usize, s: usize, t: usize },
    Gamma3 { p: usize, s: usize, t: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Complete(n) => Graph::complete(*n),
            FamilySpec::CompleteMultipartite(parts) => build_complete_multipartite(parts),
            FamilySpec::KnMinusE(n) => build_kn_minus_e(*n),
            FamilySpec::G1 { t } => build_g1(*t),
            FamilySpec::G2 { t } => build_g2(*t),
            FamilySpec::G3 { t } => build_g3(*t),
            FamilySpec::Gamma1 { s, t, p } => build_gamma1(*s, *t, *p),
            FamilySpec::Gamma2 { p, s, t } => build_gamma2(*p, *s, *t),
            FamilySpec::Gamma3 { p, s, t } => build_gamma3(*p, *s, *t),
        }
    }
}

/// A recognized family, the outcome of [`recognize_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `K_{a,b,c}` with `a <= b <= c`.
    CompleteTripartite(usize, usize, usize),
    KnMinusE(usize),
    G1(usize),
    G2(usize),
    G3(usize),
}

impl FamilyTag {
    pub fn is_case_i(self) -> bool {
        matches!(
            self,
            FamilyTag::CompleteTripartite(..) | FamilyTag::KnMinusE(_)
        )
    }

    pub fn is_case_ii(self) -> bool {
        matches!(self, FamilyTag::G1(_) | FamilyTag::G2(_) | FamilyTag::G3(_))
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyTag::CompleteTripartite(a, b, c) => write!(f, "CompleteTripartite({a},{b},{c})"),
            FamilyTag::KnMinusE(n) => write!(f, "KnMinusE({n})"),
            FamilyTag::G1(t) => write!(f, "G1({t})"),
            FamilyTag::G2(t) => write!(f, "G2({t})"),
            FamilyTag::G3(t) => write!(f, "G3({t})"),
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Complete multipartite graph; vertices of each part are consecutive.
pub fn build_complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "complete multipartite needs at least 2 parts, got {}",
            parts.len()
        )));
    }
    if parts.iter().any(|&p| p == 0) {
        return Err(Error::InvalidParameter("empty part".into()));
    }
    let n: usize = parts.iter().sum();
    let mut part_of = vec![0usize; n];
    let mut v = 0;
    for (idx, &p) in parts.iter().enumerate() {
        for _ in 0..p {
            part_of[v] = idx;
            v += 1;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            if part_of[u] != part_of[w] {
                edges.push((u, w));
            }
        }
    }
    Graph::new(n, &edges)
}

/// `K_n` minus one edge; vertices 0 and 1 are the nonadjacent pair.
pub fn build_kn_minus_e(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "K_n - e needs n >= 3, got {n}"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (u, v) != (0, 1) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Three cliques `K_s, K_t, K_p` plus a universal vertex `z` (last).
pub fn build_gamma1(s: usize, t: usize, p: usize) -> Result<Graph> {
    if s == 0 || t == 0 || p == 0 {
        return Err(Error::InvalidParameter("clique sizes must be >= 1".into()));
    }
    let n = s + t + p + 1;
    let z = n - 1;
    let mut edges = clique_edges(&[(0, s), (s, t), (s + t, p)]);
    for u in 0..z {
        edges.push((u, z));
    }
    Graph::new(n, &edges)
}

/// `G1(t) = Gamma1(t, t, t)`, `t >= 2`; order `n = 3t + 1`.
pub fn build_g1(t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("G1 needs t >= 2, got {t}")));
    }
    build_gamma1(t, t, t)
}

/// Cliques `A = K_p`, `B = K_s`, `C = K_t`; hub `x` (index `n-2`) joined to
/// `A`, `B` and `y`; hub `y` (index `n-1`) joined to `B`, `C` and `x`.
pub fn build_gamma2(p: usize, s: usize, t: usize) -> Result<Graph> {
    if p == 0 || s == 0 || t == 0 {
        return Err(Error::InvalidParameter("clique sizes must be >= 1".into()));
    }
    let n = p + s + t + 2;
    let (x, y) = (n - 2, n - 1);
    let mut edges = clique_edges(&[(0, p), (p, s), (p + s, t)]);
    for u in 0..p + s {
        edges.push((u, x));
    }
    for u in p..p + s + t {
        edges.push((u, y));
    }
    edges.push((x, y));
    Graph::new(n, &edges)
}

/// `G2(t) = Gamma2(t, t-1, t)`, `t >= 2`; order `n = 3t + 1`.
pub fn build_g2(t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("G2 needs t >= 2, got {t}")));
    }
    build_gamma2(t, t - 1, t)
}

/// Cliques `A = K_p`, `B = K_s`, `C = K_t` and a triangle `x, y, z` (last
/// three); `x ~ A u B`, `y ~ B u C`, `z ~ A u C`.
pub fn build_gamma3(p: usize, s: usize, t: usize) -> Result<Graph> {
    if p == 0 || s == 0 || t == 0 {
        return Err(Error::InvalidParameter("clique sizes must be >= 1".into()));
    }
    let n = p + s + t + 3;
    let (x, y, z) = (n - 3, n - 2, n - 1);
    let mut edges = clique_edges(&[(0, p), (p, s), (p + s, t)]);
    for u in 0..p + s {
        edges.push((u, x));
    }
    for u in p..p + s + t {
        edges.push((u, y));
    }
    for u in (0..p).chain(p + s..p + s + t) {
        edges.push((u, z));
    }
    edges.extend([(x, y), (y, z), (x, z)]);
    Graph::new(n, &edges)
}

/// `G3(t) = Gamma3(t, t, t)`, `t >= 1`; order `n = 3t + 3`.
pub fn build_g3(t: usize) -> Result<Graph> {
    if t < 1 {
        return Err(Error::InvalidParameter("G3 needs t >= 1".into()));
    }
    build_gamma3(t, t, t)
}

fn clique_edges(blocks: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for &(start, len) in blocks {
        for u in start..start + len {
            for v in u + 1..start + len {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// The block partition behind the quotient-matrix computation for `G1(t)`:
/// three cliques and `{z}`.
pub fn g1_partition(t: usize) -> Partition {
    range_partition(&[t, t, t, 1])
}

/// Five blocks for `G2(t)`: `K_t`, `K_{t-1}`, `K_t`, `{x}`, `{y}`.
pub fn g2_partition(t: usize) -> Partition {
    range_partition(&[t, t - 1, t, 1, 1])
}

/// Six blocks for `G3(t)`: three `K_t` and the three triangle vertices.
pub fn g3_partition(t: usize) -> Partition {
    range_partition(&[t, t, t, 1, 1, 1])
}

fn range_partition(sizes: &[usize]) -> Partition {
    let n: usize = sizes.iter().sum();
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &len in sizes {
        blocks.push((start..start + len).collect());
        start += len;
    }
    Partition::new(n, blocks).expect("range blocks partition 0..n")
}

/// `Some(sorted part sizes)` iff every component of the complement is a
/// clique, i.e. the graph is complete multipartite.
pub fn recognize_complete_multipartite(g: &Graph) -> Option<Vec<usize>> {
    let comp = g.complement();
    let comps = comp.components();
    if comps.iter().all(|&c| comp.is_clique(c)) {
        let mut sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        Some(sizes)
    } else {
        None
    }
}

/// The family decision procedure for connected graphs with `n >= 5`.
///
/// `K_{a,b,c}` and `K_n - e` are read off the complement; the clique-gadget
/// families are matched by canonical-form equality against the built
/// template of the unique size-compatible parameter.
pub fn recognize_family(g: &Graph) -> Result<Option<FamilyTag>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.order();
    if n < 5 {
        return Err(Error::OutOfRange(n, "family recognition needs n >= 5"));
    }
    if let Some(parts) = recognize_complete_multipartite(g) {
        if parts.len() == 3 {
            return Ok(Some(FamilyTag::CompleteTripartite(
                parts[0], parts[1], parts[2],
            )));
        }
        // K_n - e is the complete (n-1)-partite graph 2, 1, ..., 1.
        if parts.len() == n - 1 && parts[parts.len() - 1] == 2 {
            return Ok(Some(FamilyTag::KnMinusE(n)));
        }
        return Ok(None);
    }
    // G1/G2 need n = 3t + 1 with t >= 2; G3 needs n = 3t + 3 with t >= 1.
    if n % 3 == 1 && n >= 7 {
        let t = (n - 1) / 3;
        for (tag, template) in [
            (FamilyTag::G1(t), build_g1(t)?),
            (FamilyTag::G2(t), build_g2(t)?),
        ] {
            if degree_multiset(g) == degree_multiset(&template)
                && crate::graph::are_isomorphic(g, &template)?
            {
                return Ok(Some(tag));
            }
        }
    }
    if n % 3 == 0 && n >= 6 {
        let t = n / 3 - 1;
        let template = build_g3(t)?;
        if degree_multiset(g) == degree_multiset(&template)
            && crate::graph::are_isomorphic(g, &template)?
        {
            return Ok(Some(FamilyTag::G3(t)));
        }
    }
    Ok(None)
}

fn degree_multiset(g: &Graph) -> Vec<usize> {
    g.degree_sequence()
}
