//! Quasi-isolated classes from subsets of the affine diagram.
//!
//! A class is represented by a node set `Omega`; its coweight `lambda_Omega`
//! is the barycenter of the alcove vertices indexed by `Omega`, taken
//! component by component.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::affine::{AffineCoordinates, AffineDiagram};
use crate::error::{Error, Result};
use crate::lattice::{check_characteristic, lcm_all, prime_to, CocharLattice};
use crate::rational::{prime_factors, Rational};
use crate::rootsys::{CartanType, Coweight, Family, SimpleType};

pub const DEFAULT_SUBSET_CAP: usize = 24;

/// A set of nodes of the affine diagram, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaSet {
    nodes: Vec<usize>,
}

impl OmegaSet {
    pub fn new(mut nodes: Vec<usize>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        Self { nodes }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.nodes.binary_search(&u).is_ok()
    }

    /// `Omega ∩ Delta~_c`.
    pub fn in_component(&self, d: &AffineDiagram, c: usize) -> Vec<usize> {
        let range = d.component_nodes(c);
        self.nodes.iter().copied().filter(|u| range.contains(u)).collect()
    }

    /// Complement in the whole diagram.
    pub fn complement(&self, d: &AffineDiagram) -> Vec<usize> {
        (0..d.node_count()).filter(|&u| !self.contains(u)).collect()
    }

    pub fn image(&self, perm: &[usize]) -> OmegaSet {
        OmegaSet::new(self.nodes.iter().map(|&u| perm[u]).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsolatedClass {
    pub omega: OmegaSet,
    pub lambda: Coweight,
    /// `o(t_Omega)`, the order of the element.
    pub order: u64,
    /// Type of `Delta~ - Omega`, the root system of the connected centralizer.
    pub centralizer: CartanType,
    /// Stabilizer of `Omega` in `A_G`, as automorphism indices.
    pub component_group: Vec<usize>,
    pub component_group_structure: String,
    pub isolated: bool,
    /// Primes for which the class does not exist.
    pub excluded_primes: Vec<u64>,
}

impl QuasiIsolatedClass {
    pub fn component_group_order(&self) -> usize {
        self.component_group.len()
    }

    /// `"p ≠ 2"`, `"p ∉ {2,3}"`, or an empty string.
    pub fn p_condition(&self) -> String {
        format_p_condition(&self.excluded_primes)
    }
}

pub fn format_p_condition(primes: &[u64]) -> String {
    match primes {
        [] => String::new(),
        [p] => format!("p ≠ {p}"),
        ps => {
            let list: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
            format!("p ∉ {{{}}}", list.join(","))
        }
    }
}

/// `lambda_Omega`; fails when the marks on some `Omega ∩ Delta~_i` differ.
pub fn lambda_of(d: &AffineDiagram, omega: &OmegaSet) -> Result<Coweight> {
    Ok(d.from_coords(&omega_coords(d, omega)?))
}

/// Affine coordinates of `lambda_Omega`: `1/|Omega_i|` on `Omega_i`.
pub fn omega_coords(d: &AffineDiagram, omega: &OmegaSet) -> Result<AffineCoordinates> {
    let mut values = vec![Rational::zero(); d.node_count()];
    for c in 0..d.component_count() {
        let part = omega.in_component(d, c);
        if part.is_empty() {
            return Err(Error::NotQuasiIsolatedSet(d.format_nodes(omega.nodes())));
        }
        let mark = d.node(part[0]).mark;
        if part.iter().any(|&u| d.node(u).mark != mark) {
            return Err(Error::MixedMarks { omega: d.format_nodes(omega.nodes()), component: c });
        }
        let share = Rational::new(1.into(), (part.len() as i64).into());
        for u in part {
            values[u] = share.clone();
        }
    }
    Ok(AffineCoordinates::new(values))
}

/// Stabilizer of `omega` inside the given automorphisms.
pub fn stabilizer(d: &AffineDiagram, group: &[usize], omega: &OmegaSet) -> Vec<usize> {
    let a = d.automorphisms();
    group
        .iter()
        .copied()
        .filter(|&z| omega.image(&a.get(z).perm) == *omega)
        .collect()
}

/// Membership of `omega` in `Q(G)_{p'}`.
pub fn is_in_q(lattice: &CocharLattice, omega: &OmegaSet, p: u64) -> Result<bool> {
    let d = lattice.diagram();
    let allowed = CocharLattice::p_prime_nodes(d, p)?;
    if !omega.nodes().iter().all(|u| allowed.contains(u)) {
        return Ok(false);
    }
    Ok(satisfies_q(d, lattice.subgroup(), omega, p))
}

fn satisfies_q(d: &AffineDiagram, group: &[usize], omega: &OmegaSet, p: u64) -> bool {
    let a = d.automorphisms();
    let stab = stabilizer(d, group, omega);
    (0..d.component_count()).all(|c| {
        let part = omega.in_component(d, c);
        if part.is_empty() || !prime_to(part.len() as u64, p) {
            return false;
        }
        let orbit: BTreeSet<usize> = stab.iter().map(|&z| a.get(z).image(part[0])).collect();
        orbit.into_iter().eq(part)
    })
}

/// All of `Q(G)_{p'}`, by filtering every subset of `Delta~_{p'}`.
pub fn enumerate_q(lattice: &CocharLattice, p: u64, cap: usize) -> Result<Vec<OmegaSet>> {
    let d = lattice.diagram();
    let allowed = CocharLattice::p_prime_nodes(d, p)?;
    let cap = cap.min(63);
    if allowed.len() > cap {
        return Err(Error::SubsetCapExceeded { size: allowed.len(), cap });
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << allowed.len()) {
        let nodes: Vec<usize> =
            (0..allowed.len()).filter(|&k| mask >> k & 1 == 1).map(|k| allowed[k]).collect();
        let omega = OmegaSet::new(nodes);
        if satisfies_q(d, lattice.subgroup(), &omega, p) {
            out.push(omega);
        }
    }
    Ok(out)
}

/// One representative per orbit of `group`, the lexicographically smallest.
pub fn orbits(d: &AffineDiagram, q: &[OmegaSet], group: &[usize]) -> Vec<OmegaSet> {
    let a = d.automorphisms();
    let reps: BTreeSet<OmegaSet> = q
        .iter()
        .map(|omega| {
            group
                .iter()
                .map(|&z| omega.image(&a.get(z).perm))
                .min()
                .unwrap_or_else(|| omega.clone())
        })
        .collect();
    reps.into_iter().collect()
}

/// All invariants of the class attached to `omega`.
pub fn class_invariants(lattice: &CocharLattice, omega: &OmegaSet, p: u64) -> Result<QuasiIsolatedClass> {
    let d = lattice.diagram();
    if !is_in_q(lattice, omega, p)? {
        return Err(Error::NotQuasiIsolatedSet(d.format_nodes(omega.nodes())));
    }
    let lambda = lambda_of(d, omega)?;
    let order = lattice.order(&lambda);
    let centralizer = subdiagram_type(d, &omega.complement(d))?;
    let component_group = stabilizer(d, lattice.subgroup(), omega);
    let component_group_structure = abelian_structure(d, &component_group);
    let isolated = (0..d.component_count()).all(|c| omega.in_component(d, c).len() == 1);

    let mut candidates = BTreeSet::new();
    for &u in omega.nodes() {
        candidates.extend(prime_factors(CocharLattice::order_sc(&d.vertex(u))));
    }
    for c in 0..d.component_count() {
        candidates.extend(prime_factors(omega.in_component(d, c).len() as u64));
    }
    let mut excluded_primes = Vec::new();
    for q in candidates {
        if !is_in_q(lattice, omega, q)? {
            excluded_primes.push(q);
        }
    }

    Ok(QuasiIsolatedClass {
        omega: omega.clone(),
        lambda,
        order,
        centralizer,
        component_group,
        component_group_structure,
        isolated,
        excluded_primes,
    })
}

/// `lcm_i n_i(Omega) o_i^G(Omega) |Omega_i|`, the closed formula for the order.
pub fn order_formula(lattice: &CocharLattice, omega: &OmegaSet) -> u64 {
    let d = lattice.diagram();
    lcm_all((0..d.component_count()).map(|c| {
        let part = omega.in_component(d, c);
        let u = part[0];
        d.node(u).mark as u64 * lattice.order(&d.node_coweight(u)) * part.len() as u64
    }))
}

/// Complete classification of quasi-isolated classes in characteristic `p`.
///
/// Sorted with isolated classes first, then by order, size of `Omega`, and
/// node labels.
pub fn classify(lattice: &CocharLattice, p: u64) -> Result<Vec<QuasiIsolatedClass>> {
    classify_with_cap(lattice, p, DEFAULT_SUBSET_CAP)
}

pub fn classify_with_cap(lattice: &CocharLattice, p: u64, cap: usize) -> Result<Vec<QuasiIsolatedClass>> {
    check_characteristic(p)?;
    let d = lattice.diagram();
    let q = enumerate_q(lattice, p, cap)?;
    let group = lattice.p_prime_part(p)?;
    let mut classes = orbits(d, &q, &group)
        .iter()
        .map(|omega| class_invariants(lattice, omega, p))
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| {
        b.isolated
            .cmp(&a.isolated)
            .then(a.order.cmp(&b.order))
            .then(a.omega.len().cmp(&b.omega.len()))
            .then(a.omega.cmp(&b.omega))
    });
    Ok(classes)
}

/// Invariant factors of an abelian group of automorphisms, e.g. `Z2 x Z2`.
pub fn abelian_structure(d: &AffineDiagram, elements: &[usize]) -> String {
    let a = d.automorphisms();
    let n = elements.len() as u64;
    if n == 1 {
        return "1".to_string();
    }
    // exponents of each Sylow subgroup, read off from the sizes of the
    // p^j-torsion subgroups
    let mut factors: Vec<u64> = Vec::new();
    for p in prime_factors(n) {
        let mut exps = Vec::new();
        let mut prev = 0u32;
        let mut pj = 1u64;
        loop {
            pj *= p;
            let torsion = elements
                .iter()
                .filter(|&&z| pj.is_multiple_of(a.order(z) as u64))
                .count() as u64;
            let log = torsion.ilog(p);
            if log == prev {
                break;
            }
            exps.push(log - prev);
            prev = log;
        }
        // exps[j] = number of cyclic factors of order >= p^(j+1)
        let count = exps[0] as usize;
        let mut sizes = vec![1u64; count];
        for e in &exps {
            for s in sizes.iter_mut().take(*e as usize) {
                *s *= p;
            }
        }
        if factors.len() < sizes.len() {
            factors.resize(sizes.len(), 1);
        }
        for (f, s) in factors.iter_mut().zip(sizes) {
            *f *= s;
        }
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<String> = factors.iter().map(|f| format!("Z{f}")).collect();
    parts.join(" x ")
}

/// Cartan type of the subdiagram of the affine diagram induced on `nodes`.
pub fn subdiagram_type(d: &AffineDiagram, nodes: &[usize]) -> Result<CartanType> {
    let ext = d.extended_cartan();
    let mut seen = vec![false; nodes.len()];
    let mut components = Vec::new();
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let u = nodes[comp[k]];
            for (j, &v) in nodes.iter().enumerate() {
                if !seen[j] && d.is_adjacent(u, v) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        let members: Vec<usize> = comp.into_iter().map(|j| nodes[j]).collect();
        let sub: Vec<Vec<i64>> = members
            .iter()
            .map(|&u| members.iter().map(|&v| ext[u][v]).collect())
            .collect();
        components.push(recognize(&sub).ok_or_else(|| {
            Error::UnrecognizedSubdiagram(d.format_nodes(&members))
        })?);
    }
    Ok(CartanType::new(components)
        .map(|t| t.canonical())
        .unwrap_or_else(|_| CartanType::trivial()))
}

/// Names a connected Cartan matrix of finite type.
fn recognize(c: &[Vec<i64>]) -> Option<SimpleType> {
    let n = c.len();
    if n == 1 {
        return SimpleType::new(Family::A, 1).ok();
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if c[i][j] != 0 {
                edges.push((i, j, c[i][j] * c[j][i]));
            }
        }
    }
    if edges.len() != n - 1 || edges.iter().any(|e| e.2 > 3) {
        return None;
    }
    let neighbours = |i: usize| -> Vec<usize> { (0..n).filter(|&j| j != i && c[i][j] != 0).collect() };
    let degree: Vec<usize> = (0..n).map(|i| neighbours(i).len()).collect();
    let multiple: Vec<&(usize, usize, i64)> = edges.iter().filter(|e| e.2 > 1).collect();

    if multiple.iter().any(|e| e.2 == 3) {
        return if n == 2 { SimpleType::new(Family::G, 2).ok() } else { None };
    }
    if degree.iter().any(|&k| k > 3) {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&i| degree[i] == 3).collect();
    match (branches.len(), multiple.len()) {
        (0, 0) => SimpleType::new(Family::A, n).ok(),
        (1, 0) => {
            let b = branches[0];
            let mut arms: Vec<usize> = neighbours(b)
                .into_iter()
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (b, start, 1);
                    loop {
                        let next: Vec<usize> = neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [x] => {
                                prev = cur;
                                cur = *x;
                                len += 1;
                            }
                            _ => return len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => SimpleType::new(Family::D, k + 3).ok(),
                [1, 2, 2] => SimpleType::new(Family::E, 6).ok(),
                [1, 2, 3] => SimpleType::new(Family::E, 7).ok(),
                [1, 2, 4] => SimpleType::new(Family::E, 8).ok(),
                _ => None,
            }
        }
        (0, 1) => {
            if n == 2 {
                return SimpleType::new(Family::B, 2).ok();
            }
            let &(i, j, _) = multiple[0];
            let is_end = |x: usize| degree[x] == 1;
            if is_end(i) || is_end(j) {
                let (end, inner) = if is_end(i) { (i, j) } else { (j, i) };
                // c[inner][end] = <alpha_end, alpha_inner^vee> is -1 when the end is short
                if c[inner][end] == -1 {
                    SimpleType::new(Family::B, n).ok()
                } else {
                    SimpleType::new(Family::C, n).ok()
                }
            } else if n == 4 {
                SimpleType::new(Family::F, 4).ok()
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Names a class in the language of the natural representation, for the
/// classical groups where such a description is standard.
pub fn classical_labels(lattice: &CocharLattice, class: &QuasiIsolatedClass) -> Option<String> {
    let d = lattice.diagram();
    let ct = d.cartan_type();
    if ct.components().len() != 1 {
        return None;
    }
    let SimpleType { family, rank: n } = ct.components()[0];
    let labels: Vec<usize> = class.omega.nodes().iter().map(|&u| d.node(u).label).collect();
    let adjoint = lattice.is_adjoint();
    let sc = lattice.is_simply_connected();
    match family {
        Family::A if adjoint => {
            let k = labels.len();
            Some(format!("I_{} ⊗ J_{}", (n + 1) / k, k))
        }
        Family::B if adjoint => match labels.as_slice() {
            [0] => Some("t_0".into()),
            [0, 1] => Some("t_1".into()),
            [i] => Some(format!("t_{i}")),
            _ => None,
        },
        Family::C if sc => match labels.as_slice() {
            [i] => Some(format!("t_{i}")),
            _ => None,
        },
        Family::C if adjoint => match labels.as_slice() {
            [i] => Some(format!("t_{i}")),
            [0, j] if *j == n => Some("s_0".into()),
            [i, j] if i + j == n => Some(format!("s_{i}")),
            _ => None,
        },
        Family::D if adjoint => match labels.as_slice() {
            [i] => Some(format!("t_{i}")),
            [0, 1] => Some("t_1".into()),
            [0, 1, a, b] if *a == n - 1 && *b == n => Some("s_1".into()),
            [0, j] if *j == n - 1 => Some("s_0".into()),
            [0, j] if *j == n => Some("s_0'".into()),
            [i, j] if i + j == n => Some(format!("s_{i}")),
            _ => None,
        },
        Family::D if lattice.subgroup().len() == 2 && is_orthogonal(lattice) => match labels.as_slice() {
            [0, 1] => Some("t_1".into()),
            [a, b] if *a == n - 1 && *b == n => Some(format!("t_{}", n - 1)),
            [i] if *i == n - 1 => Some(format!("t_{n}")),
            [i] => Some(format!("t_{i}")),
            _ => None,
        },
        _ => None,
    }
}

/// `S = <z1>` in type `D`: the lattice of the special orthogonal group.
fn is_orthogonal(lattice: &CocharLattice) -> bool {
    let a = lattice.diagram().automorphisms();
    a.lookup("z1").map(|z1| lattice.subgroup() == a.generated(&[z1]).as_slice()).unwrap_or(false)
}

impl fmt::Display for QuasiIsolatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lambda={} order={} centralizer={} |A|={} isolated={}",
            self.lambda,
            self.order,
            self.centralizer,
            self.component_group.len(),
            self.isolated
        )
    }
}
