//! Finite root systems with exact data.
//!
//! Roots are integer vectors over the simple roots, coweights are rational
//! vectors over the simple coroots, and every pairing goes through the Cartan
//! matrix `C[i][j] = <alpha_j, alpha_i^vee>`. With this choice the coroot
//! lattice `Y(T_sc)` is exactly the integer points and `Y(T_ad)` is the set of
//! coweights whose pairings with all simple roots are integers.
//!
//! Node numbering follows Bourbaki's tables, with one exception inherited from
//! the affine-diagram tables this crate reproduces: in `G2` the long simple root
//! is `alpha_1`, so the highest root is `2 alpha_1 + 3 alpha_2`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, invert, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// An irreducible Cartan type such as `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let legal = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if legal {
            Ok(Self { family, rank })
        } else {
            Err(Error::IllegalType { family: family.letter(), rank })
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Classical number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Low-rank coincidences collapse to one name: `C2 = B2`, `D3 = A3`.
    pub fn canonical(self) -> Self {
        match (self.family, self.rank) {
            (Family::C, 2) => Self { family: Family::B, rank: 2 },
            (Family::D, 3) => Self { family: Family::A, rank: 3 },
            _ => self,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::ParseType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

/// An ordered product of irreducible types.
///
/// Built through [`CartanType::new`] the list is never empty. The only empty
/// value is [`CartanType::trivial`], which names the (empty) root system of a
/// torus and shows up as the centralizer type of regular elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    components: Vec<SimpleType>,
}

impl CartanType {
    pub fn new(components: Vec<SimpleType>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyType);
        }
        for c in &components {
            SimpleType::new(c.family, c.rank)?;
        }
        Ok(Self { components })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Ok(Self { components: vec![SimpleType::new(family, rank)?] })
    }

    pub fn trivial() -> Self {
        Self { components: Vec::new() }
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(|c| c.weyl_order()).product()
    }

    /// Canonical names, sorted by family then decreasing rank.
    pub fn canonical(&self) -> Self {
        let mut components: Vec<SimpleType> =
            self.components.iter().map(|c| c.canonical()).collect();
        components.sort_by(|a, b| a.family.cmp(&b.family).then(b.rank.cmp(&a.rank)));
        Self { components }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "T");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .split(['x', '×', '*'])
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(Error::ParseType(s.to_string()));
        }
        CartanType::new(parts.into_iter().map(str::parse).collect::<Result<_>>()?)
    }
}

/// A root, as integer coordinates over all simple roots of the ambient system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub component: usize,
    pub coords: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

/// A point of `V`, in coordinates over the simple coroots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coweight(pub Vec<Rational>);

impl Coweight {
    pub fn zero(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Membership in the coroot lattice.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add for &Coweight {
    type Output = Coweight;
    fn add(self, rhs: &Coweight) -> Coweight {
        assert_eq!(self.dim(), rhs.dim());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Coweight {
    type Output = Coweight;
    fn sub(self, rhs: &Coweight) -> Coweight {
        assert_eq!(self.dim(), rhs.dim());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Coweight> for &Rational {
    type Output = Coweight;
    fn mul(self, rhs: &Coweight) -> Coweight {
        rhs.scale(self)
    }
}

/// A Weyl group element, recorded by how it permutes the root list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<u16>,
}

impl WeylElement {
    pub fn identity(root_count: usize) -> Self {
        Self { perm: (0..root_count as u16).collect() }
    }

    pub fn from_permutation(perm: Vec<u16>) -> Self {
        Self { perm }
    }

    pub fn permutation(&self) -> &[u16] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Index of `w(root_k)`.
    pub fn apply(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { perm: other.perm.iter().map(|&k| self.perm[k as usize]).collect() }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        WeylElement { perm: inv }
    }

    /// Exact action on `V`.
    pub fn act(&self, rs: &RootSystem, v: &Coweight) -> Coweight {
        let inv = self.inverse();
        let p = rs.pairing_vector(v);
        let pairings: Vec<Rational> = (0..rs.rank())
            .map(|j| dot_int_rat(&rs.roots[inv.apply(j)], &p))
            .collect();
        rs.from_pairings(&pairings)
    }

    /// Integer matrix of the action on pairing coordinates
    /// (`p_j = <alpha_j, v>`): row `j` holds the coordinates of `w^-1(alpha_j)`.
    pub fn pairing_matrix(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        let inv = self.inverse();
        (0..rs.rank()).map(|j| rs.roots[inv.apply(j)].clone()).collect()
    }
}

fn dot_int_rat(a: &[i64], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| **x != 0)
        .map(|(&x, y)| y * int(x))
        .fold(Rational::zero(), |acc, t| acc + t)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    offsets: Vec<usize>,
    component_of: Vec<usize>,
    symmetrizer: Vec<i64>,
    // positive roots first (height order), then their negatives in the same order
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    root_component: Vec<usize>,
    positive_count: usize,
    index: HashMap<Vec<i64>, usize>,
    highest: Vec<usize>,
    inv_cartan: Vec<Vec<Rational>>,
    simple_reflections: Vec<WeylElement>,
}

impl RootSystem {
    pub fn new(cartan_type: &CartanType) -> Result<Self> {
        if cartan_type.is_trivial() {
            return Err(Error::EmptyType);
        }
        let rank = cartan_type.rank();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut offsets = vec![0];
        let mut component_of = Vec::with_capacity(rank);
        for (c, t) in cartan_type.components().iter().enumerate() {
            let off = *offsets.last().unwrap();
            for (i, row) in cartan_block(*t).into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    cartan[off + i][off + j] = x;
                }
                component_of.push(c);
            }
            offsets.push(off + t.rank);
        }
        let symmetrizer = symmetrizer(&cartan, &offsets);

        let mut positives: Vec<Vec<i64>> = (0..rank).map(|i| unit(rank, i)).collect();
        let mut known: HashMap<Vec<i64>, usize> =
            positives.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut k = 0;
        while k < positives.len() {
            let beta = positives[k].clone();
            for i in 0..rank {
                if beta == unit(rank, i) {
                    continue;
                }
                let pairing: i64 = (0..rank).map(|m| beta[m] * cartan[i][m]).sum();
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains_key(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                if q - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), positives.len());
                        positives.push(up);
                    }
                }
            }
            k += 1;
        }
        positives.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let positive_count = positives.len();
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let root_component: Vec<usize> = roots
            .iter()
            .map(|r| component_of[r.iter().position(|&x| x != 0).unwrap()])
            .collect();
        let coroots: Vec<Vec<i64>> =
            roots.iter().map(|r| coroot_of(r, &cartan, &symmetrizer)).collect();

        let highest = (0..cartan_type.components().len())
            .map(|c| {
                (0..positive_count)
                    .filter(|&k| root_component[k] == c)
                    .max_by_key(|&k| roots[k].iter().sum::<i64>())
                    .unwrap()
            })
            .collect();

        let rational_cartan: Vec<Vec<Rational>> =
            cartan.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        let inv_cartan = invert(&rational_cartan).expect("Cartan matrices are invertible");

        let mut rs = RootSystem {
            cartan_type: cartan_type.clone(),
            cartan,
            offsets,
            component_of,
            symmetrizer,
            roots,
            coroots,
            root_component,
            positive_count,
            index,
            highest,
            inv_cartan,
            simple_reflections: Vec::new(),
        };
        rs.simple_reflections = (0..rank).map(|i| rs.reflection(i)).collect();
        Ok(rs)
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn component_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Simple indices of component `c`.
    pub fn component_range(&self, c: usize) -> std::ops::Range<usize> {
        self.offsets[c]..self.offsets[c + 1]
    }

    pub fn component_of_simple(&self, i: usize) -> usize {
        self.component_of[i]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    pub fn root_coords(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn coroot_coords(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn root_component(&self, k: usize) -> usize {
        self.root_component[k]
    }

    pub fn root(&self, k: usize) -> Root {
        Root { component: self.root_component[k], coords: self.roots[k].clone() }
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.positive_count).map(|k| self.root(k))
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive_count
    }

    pub fn negate(&self, k: usize) -> usize {
        if k < self.positive_count {
            k + self.positive_count
        } else {
            k - self.positive_count
        }
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn highest_root_index(&self, c: usize) -> usize {
        self.highest[c]
    }

    pub fn highest_root(&self, c: usize) -> Root {
        self.root(self.highest[c])
    }

    /// `n_alpha` for every simple root, in simple-root order.
    pub fn marks(&self) -> Vec<i64> {
        (0..self.rank())
            .map(|i| self.roots[self.highest[self.component_of[i]]][i])
            .collect()
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight::from_ints(&unit(self.rank(), i))
    }

    /// `varpi_i^vee`, the dual basis of the simple roots.
    pub fn fundamental_coweight(&self, i: usize) -> Coweight {
        Coweight(self.inv_cartan[i].clone())
    }

    pub fn coroot(&self, k: usize) -> Coweight {
        Coweight::from_ints(&self.coroots[k])
    }

    /// `<alpha_j, v>` for every simple `alpha_j`.
    pub fn pairing_vector(&self, v: &Coweight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| self.cartan[i][j] != 0 && !v.0[i].is_zero())
                    .map(|i| &v.0[i] * int(self.cartan[i][j]))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Inverse of [`pairing_vector`](Self::pairing_vector).
    pub fn from_pairings(&self, p: &[Rational]) -> Coweight {
        let n = self.rank();
        Coweight(
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| !p[j].is_zero())
                        .map(|j| &p[j] * &self.inv_cartan[j][i])
                        .fold(Rational::zero(), |a, b| a + b)
                })
                .collect(),
        )
    }

    /// `<alpha, v>` for a root given by simple-root coordinates.
    pub fn pair(&self, alpha: &[i64], v: &Coweight) -> Result<Rational> {
        let n = self.rank();
        if alpha.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: alpha.len() });
        }
        if v.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        Ok(dot_int_rat(alpha, &self.pairing_vector(v)))
    }

    /// `<alpha, beta^vee>` for two roots given by simple-root coordinates.
    pub fn pair_root_coroot(&self, alpha: &[i64], beta_coroot: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if beta_coroot[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += beta_coroot[i] * self.cartan[i][j] * alpha[j];
            }
        }
        s
    }

    /// Reflection in root `k`, as a root permutation.
    pub fn reflection(&self, k: usize) -> WeylElement {
        let beta = &self.roots[k];
        let beta_v = &self.coroots[k];
        let perm = self
            .roots
            .iter()
            .map(|gamma| {
                let c = self.pair_root_coroot(gamma, beta_v);
                let image: Vec<i64> = gamma.iter().zip(beta).map(|(g, b)| g - c * b).collect();
                self.index[&image] as u16
            })
            .collect();
        WeylElement { perm }
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.simple_reflections[i]
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.root_count())
    }

    /// Longest element of the parabolic subgroup generated by the simple
    /// reflections in `subset`.
    ///
    /// Starts from a vector strictly dominant on `subset` and applies simple
    /// reflections until it is anti-dominant there.
    pub fn longest_element(&self, subset: &[usize]) -> WeylElement {
        let n = self.rank();
        let mut p = vec![0i64; n];
        for &i in subset {
            p[i] = 1;
        }
        let mut w = self.identity();
        while let Some(&i) = subset.iter().find(|&&i| p[i] > 0) {
            // p_j <- <s_i alpha_j, v> = p_j - C[i][j] p_i
            let pi = p[i];
            for j in 0..n {
                p[j] -= self.cartan[i][j] * pi;
            }
            w = self.simple_reflections[i].compose(&w);
        }
        w
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Cartan matrix of one irreducible type, `C[i][j] = <alpha_j, alpha_i^vee>`.
fn cartan_block(t: SimpleType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match t.family {
        Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Family::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // alpha_n short
            link(n - 2, n - 1, -1, -2);
        }
        Family::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // alpha_n long
            link(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            edges.extend((3..n - 1).map(|i| (i, i + 1)));
            for (i, j) in edges {
                link(i, j, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -1, -3),
    }
    c
}

/// Positive integers `d_i` with `d_i C[i][j] = d_j C[j][i]`; `d_i` is half the
/// squared length of `alpha_i`, normalized so the short roots of each
/// component have `d = 1`.
fn symmetrizer(cartan: &[Vec<i64>], offsets: &[usize]) -> Vec<i64> {
    let n = cartan.len();
    let mut d = vec![Rational::zero(); n];
    for w in offsets.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        d[lo] = Rational::one();
        let mut stack = vec![lo];
        let mut seen = vec![false; n];
        seen[lo] = true;
        while let Some(i) = stack.pop() {
            for j in lo..hi {
                if !seen[j] && cartan[i][j] != 0 {
                    d[j] = &d[i] * int(cartan[i][j]) / int(cartan[j][i]);
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        let min = d[lo..hi].iter().min().unwrap().clone();
        for x in &mut d[lo..hi] {
            *x /= &min;
        }
    }
    d.iter()
        .map(|x| {
            assert!(x.is_integer());
            x.to_integer().try_into().unwrap()
        })
        .collect()
}

fn coroot_of(root: &[i64], cartan: &[Vec<i64>], d: &[i64]) -> Vec<i64> {
    let n = root.len();
    let mut norm = 0;
    for i in 0..n {
        for j in 0..n {
            norm += root[i] * root[j] * d[i] * cartan[i][j];
        }
    }
    // (beta, beta)/2
    let half = norm / 2;
    root.iter()
        .zip(d)
        .map(|(b, di)| {
            let x = b * di;
            assert_eq!(x % half, 0, "coroot must be integral");
            x / half
        })
        .collect()
}
