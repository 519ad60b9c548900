//! Affine Dynkin diagrams, alcove geometry and diagram automorphisms.
//!
//! Nodes are numbered globally. Component `c` occupies a contiguous block whose
//! first entry is its affine node `alpha_0 = -highest root`, followed by the
//! simple roots of that component in Bourbaki order, so in a simple type the
//! node index equals the usual label `k` of `alpha_k`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::rootsys::{CartanType, Coweight, RootSystem, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub component: usize,
    /// Position inside the component: 0 for the affine node, `k` for `alpha_k`.
    pub label: usize,
    /// Index of the simple root, `None` for the affine node.
    pub simple: Option<usize>,
    /// Index into the root list of the underlying system.
    pub root: usize,
    pub mark: i64,
    /// `m_alpha`: 0 on simple roots, -1 on the affine node.
    pub wall: i64,
}

impl Node {
    pub fn is_affine(&self) -> bool {
        self.simple.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct AffineDiagram {
    rs: RootSystem,
    nodes: Vec<Node>,
    offsets: Vec<usize>,
    // extended[u][v] = <root_v, coroot_u>
    extended: Vec<Vec<i64>>,
    group: AutomorphismGroup,
}

/// Affine coordinates `(lambda_alpha)` indexed by global node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineCoordinates {
    values: Vec<Rational>,
}

impl AffineCoordinates {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, node: usize) -> &Rational {
        &self.values[node]
    }

    /// Membership in the closed fundamental alcove.
    pub fn alcove_contains(&self) -> bool {
        self.values.iter().all(|x| *x >= Rational::zero())
    }

    /// Nodes with a nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&u| !self.values[u].is_zero()).collect()
    }
}

/// A step of [`AffineDiagram::alcove_reduce`]: reflection in the wall of a node.
pub type Transcript = Vec<usize>;

impl AffineDiagram {
    pub fn new(ct: &CartanType) -> Result<Self> {
        Ok(Self::extend(RootSystem::new(ct)?))
    }

    pub fn extend(rs: RootSystem) -> Self {
        let marks = rs.marks();
        let mut nodes = Vec::new();
        let mut offsets = vec![0];
        for c in 0..rs.component_count() {
            let highest = rs.highest_root_index(c);
            nodes.push(Node {
                component: c,
                label: 0,
                simple: None,
                root: rs.negate(highest),
                mark: 1,
                wall: -1,
            });
            for (k, i) in rs.component_range(c).enumerate() {
                nodes.push(Node {
                    component: c,
                    label: k + 1,
                    simple: Some(i),
                    root: i,
                    mark: marks[i],
                    wall: 0,
                });
            }
            offsets.push(nodes.len());
        }
        let extended = nodes
            .iter()
            .map(|u| {
                nodes
                    .iter()
                    .map(|v| rs.pair_root_coroot(rs.root_coords(v.root), rs.coroot_coords(u.root)))
                    .collect()
            })
            .collect();
        let mut d = Self {
            rs,
            nodes,
            offsets,
            extended,
            group: AutomorphismGroup::default(),
        };
        d.group = AutomorphismGroup::build(&d);
        d
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cartan_type(&self) -> &CartanType {
        self.rs.cartan_type()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, u: usize) -> &Node {
        &self.nodes[u]
    }

    pub fn component_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn component_nodes(&self, c: usize) -> Range<usize> {
        self.offsets[c]..self.offsets[c + 1]
    }

    pub fn affine_node(&self, c: usize) -> usize {
        self.offsets[c]
    }

    /// Global node of a simple root.
    pub fn simple_node(&self, i: usize) -> usize {
        i + self.rs.component_of_simple(i) + 1
    }

    pub fn marks(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.mark).collect()
    }

    /// `<alpha_v, alpha_u^vee>` over all pairs of nodes.
    pub fn extended_cartan(&self) -> &[Vec<i64>] {
        &self.extended
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.extended[u][v] != 0
    }

    /// `varpi_alpha^vee`, zero on affine nodes.
    pub fn node_coweight(&self, u: usize) -> Coweight {
        match self.nodes[u].simple {
            Some(i) => self.rs.fundamental_coweight(i),
            None => Coweight::zero(self.rs.rank()),
        }
    }

    /// The alcove vertex `varpi_alpha^vee / n_alpha`.
    pub fn vertex(&self, u: usize) -> Coweight {
        self.node_coweight(u).scale(&Rational::new(1.into(), self.nodes[u].mark.into()))
    }

    /// `a<k>` in a simple type, `a<k>@<c>` with 1-based component otherwise.
    pub fn node_label(&self, u: usize) -> String {
        let n = &self.nodes[u];
        if self.component_count() == 1 {
            format!("a{}", n.label)
        } else {
            format!("a{}@{}", n.label, n.component + 1)
        }
    }

    pub fn parse_node_label(&self, s: &str) -> Option<usize> {
        (0..self.node_count()).find(|&u| self.node_label(u) == s)
    }

    pub fn format_nodes(&self, nodes: &[usize]) -> String {
        let labels: Vec<String> = nodes.iter().map(|&u| self.node_label(u)).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// `<alpha, lambda>` for the root of node `u`.
    pub fn node_pairing(&self, u: usize, pairings: &[Rational]) -> Rational {
        self.rs
            .root_coords(self.nodes[u].root)
            .iter()
            .zip(pairings)
            .filter(|(a, _)| **a != 0)
            .map(|(&a, p)| p * int(a))
            .fold(Rational::zero(), |x, y| x + y)
    }

    pub fn affine_coords(&self, lambda: &Coweight) -> AffineCoordinates {
        let p = self.rs.pairing_vector(lambda);
        let mut values = vec![Rational::zero(); self.node_count()];
        for c in 0..self.component_count() {
            let mut rest = Rational::one();
            for u in self.component_nodes(c).skip(1) {
                let i = self.nodes[u].simple.unwrap();
                values[u] = &p[i] * int(self.nodes[u].mark);
                rest -= &values[u];
            }
            values[self.affine_node(c)] = rest;
        }
        AffineCoordinates { values }
    }

    /// Inverse of [`affine_coords`](Self::affine_coords); affine entries are ignored.
    pub fn from_coords(&self, coords: &AffineCoordinates) -> Coweight {
        let mut p = vec![Rational::zero(); self.rs.rank()];
        for (u, n) in self.nodes.iter().enumerate() {
            if let Some(i) = n.simple {
                p[i] = &coords.values[u] / int(n.mark);
            }
        }
        self.rs.from_pairings(&p)
    }

    /// Reflection of `lambda` in the affine wall `<alpha_u, x> = m_u`.
    pub fn reflect(&self, u: usize, lambda: &Coweight) -> Coweight {
        let p = self.rs.pairing_vector(lambda);
        let excess = self.node_pairing(u, &p) - int(self.nodes[u].wall);
        if excess.is_zero() {
            return lambda.clone();
        }
        let coroot = self.rs.coroot(self.nodes[u].root);
        lambda - &coroot.scale(&excess)
    }

    /// Moves `lambda` into the fundamental alcove by reflecting in the
    /// violated wall of smallest node index until none is left.
    pub fn alcove_reduce(&self, lambda: &Coweight) -> (Coweight, Transcript) {
        let mut current = lambda.clone();
        let mut transcript = Vec::new();
        loop {
            let p = self.rs.pairing_vector(&current);
            let violated = (0..self.node_count())
                .find(|&u| self.node_pairing(u, &p) < int(self.nodes[u].wall));
            match violated {
                Some(u) => {
                    current = self.reflect(u, &current);
                    transcript.push(u);
                }
                None => return (current, transcript),
            }
        }
    }

    pub fn replay(&self, transcript: &[usize], lambda: &Coweight) -> Coweight {
        transcript.iter().fold(lambda.clone(), |x, &u| self.reflect(u, &x))
    }

    pub fn automorphisms(&self) -> &AutomorphismGroup {
        &self.group
    }

    /// `Delta_{i,min}`: nodes of mark 1.
    pub fn minuscule_nodes(&self, c: usize) -> Vec<usize> {
        self.component_nodes(c).filter(|&u| self.nodes[u].mark == 1).collect()
    }
}

/// An automorphism `z` of the affine diagram induced by a Weyl element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    /// `perm[u]` is the image of node `u`.
    pub perm: Vec<usize>,
    /// `varpi^vee(z)`.
    pub varpi: Coweight,
    pub weyl: Option<WeylElement>,
}

impl DiagramAutomorphism {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn image(&self, u: usize) -> usize {
        self.perm[u]
    }

    /// Coordinates of `z(lambda) + varpi^vee(z)`: the value at `z(alpha)` is
    /// the input value at `alpha`.
    pub fn act_on_coords(&self, c: &AffineCoordinates) -> AffineCoordinates {
        let mut values = vec![Rational::zero(); c.values.len()];
        for (u, &v) in self.perm.iter().enumerate() {
            values[v] = c.values[u].clone();
        }
        AffineCoordinates { values }
    }

    /// `z(lambda) + varpi^vee(z)` computed through the Weyl realization.
    pub fn act_on_coweight(&self, rs: &RootSystem, lambda: &Coweight) -> Option<Coweight> {
        let w = self.weyl.as_ref()?;
        Some(&w.act(rs, lambda) + &self.varpi)
    }

    pub fn map_set(&self, nodes: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = nodes.iter().map(|&u| self.perm[u]).collect();
        out.sort_unstable();
        out
    }
}

/// The group `A` of automorphisms `z_alpha`, `alpha` of mark 1, and their
/// products across components.
///
/// Element 0 is the identity. Each element is a choice of one mark-1 node per
/// component, recorded in `choice`, and is named by the product of the
/// corresponding `z<k>`.
#[derive(Clone, Debug, Default)]
pub struct AutomorphismGroup {
    elements: Vec<DiagramAutomorphism>,
    choices: Vec<Vec<usize>>,
    names: Vec<String>,
    by_perm: HashMap<Vec<usize>, usize>,
    generators: Vec<usize>,
}

impl AutomorphismGroup {
    fn build(d: &AffineDiagram) -> Self {
        let rs = &d.rs;
        let multi = d.component_count() > 1;
        // per component: (node, automorphism restricted to that component)
        let mut per_component: Vec<Vec<(usize, DiagramAutomorphism)>> = Vec::new();
        for c in 0..d.component_count() {
            let simple: Vec<usize> = rs.component_range(c).collect();
            let w0 = rs.longest_element(&simple);
            let mut list = Vec::new();
            for u in d.minuscule_nodes(c) {
                let weyl = match d.nodes[u].simple {
                    None => rs.identity(),
                    Some(i) => {
                        let rest: Vec<usize> = simple.iter().copied().filter(|&j| j != i).collect();
                        rs.longest_element(&rest).compose(&w0)
                    }
                };
                let root_to_node: HashMap<usize, usize> =
                    d.nodes.iter().enumerate().map(|(v, n)| (n.root, v)).collect();
                let perm = (0..d.node_count())
                    .map(|v| root_to_node[&weyl.apply(d.nodes[v].root)])
                    .collect();
                list.push((u, DiagramAutomorphism { perm, varpi: d.node_coweight(u), weyl: Some(weyl) }));
            }
            per_component.push(list);
        }

        let mut group = AutomorphismGroup::default();
        let mut choice = vec![0usize; per_component.len()];
        loop {
            let mut perm: Vec<usize> = (0..d.node_count()).collect();
            let mut varpi = Coweight::zero(rs.rank());
            let mut weyl = rs.identity();
            let mut name = Vec::new();
            let mut nodes = Vec::new();
            for (c, &k) in choice.iter().enumerate() {
                let (u, z) = &per_component[c][k];
                nodes.push(*u);
                for v in d.component_nodes(c) {
                    perm[v] = z.perm[v];
                }
                varpi = &varpi + &z.varpi;
                weyl = z.weyl.as_ref().unwrap().compose(&weyl);
                if d.nodes[*u].label != 0 {
                    name.push(if multi {
                        format!("z{}@{}", d.nodes[*u].label, c + 1)
                    } else {
                        format!("z{}", d.nodes[*u].label)
                    });
                }
            }
            let name = if name.is_empty() { "1".to_string() } else { name.join("*") };
            group.by_perm.insert(perm.clone(), group.elements.len());
            group.elements.push(DiagramAutomorphism { perm, varpi, weyl: Some(weyl) });
            group.choices.push(nodes);
            group.names.push(name);

            // odometer over the per-component choices
            let mut c = 0;
            loop {
                if c == choice.len() {
                    group.generators = group.pick_generators(d);
                    return group;
                }
                choice[c] += 1;
                if choice[c] < per_component[c].len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
        }
    }

    /// Generators matching the usual table presentation: elements of a single
    /// component, largest order first, then increasing label, except that in
    /// type `D` the last node is preferred after `alpha_1`.
    fn pick_generators(&self, d: &AffineDiagram) -> Vec<usize> {
        let mut gens = Vec::new();
        for c in 0..d.component_count() {
            let ty = d.cartan_type().components()[c];
            let n = ty.rank;
            let mut candidates: Vec<usize> = (1..self.len())
                .filter(|&e| {
                    self.choices[e]
                        .iter()
                        .enumerate()
                        .all(|(k, &u)| (k == c) != d.nodes[u].is_affine())
                })
                .collect();
            let label = |e: usize| d.nodes[self.choices[e][c]].label;
            let preference = |l: usize| match ty.family {
                crate::rootsys::Family::D if l == n => 1,
                crate::rootsys::Family::D if l == 1 => 0,
                _ => l,
            };
            candidates.sort_by_key(|&e| (std::cmp::Reverse(self.order(e)), preference(label(e))));
            let mut span = vec![0usize];
            for e in candidates {
                if span.contains(&e) {
                    continue;
                }
                gens.push(e);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[DiagramAutomorphism] {
        &self.elements
    }

    pub fn get(&self, e: usize) -> &DiagramAutomorphism {
        &self.elements[e]
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let pa = &self.elements[a].perm;
        let perm: Vec<usize> = self.elements[b].perm.iter().map(|&v| pa[v]).collect();
        self.by_perm[&perm]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let p = &self.elements[a].perm;
        let mut inv = vec![0; p.len()];
        for (u, &v) in p.iter().enumerate() {
            inv[v] = u;
        }
        self.by_perm[&inv]
    }

    pub fn order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.compose(a, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![0usize];
        let mut k = 0;
        while k < set.len() {
            for &g in gens {
                let x = self.compose(g, set[k]);
                if !set.contains(&x) {
                    set.push(x);
                }
            }
            k += 1;
        }
        set.sort_unstable();
        set
    }

    /// Resolves a name such as `z1`, `z7`, `z1@2` or a product `z1*z3@2`.
    pub fn lookup(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        if name == "1" {
            return Ok(0);
        }
        if let Some(e) = self.names.iter().position(|n| n == name) {
            return Ok(e);
        }
        let parts: Vec<&str> = name.split('*').collect();
        if parts.len() > 1 {
            return parts
                .into_iter()
                .try_fold(0, |acc, p| Ok(self.compose(acc, self.lookup(p)?)));
        }
        Err(Error::UnknownGenerator(name.to_string()))
    }
}

impl fmt::Display for AffineCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.values.iter().map(crate::rational::format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
