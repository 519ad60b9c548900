//! Brute-force verification straight from the definitions.
//!
//! The whole Weyl group is enumerated, each element stored as the indices of
//! the images of the simple roots. Stabilizers, reflection subgroups and
//! fixed spaces are then computed by scanning, with no use of the affine
//! diagram beyond choosing test points in the alcove.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::affine::{AffineCoordinates, AffineDiagram};
use crate::classify::{classify_with_cap, QuasiIsolatedClass, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::lattice::{check_characteristic, lcm_all, prime_to, CocharLattice};
use crate::rational::{denominator_lcm, Rational, RowEchelon};
use crate::rootsys::{Coweight, RootSystem, WeylElement};

pub const DEFAULT_ORACLE_CAP: u128 = 5_000_000;
pub const DEFAULT_POINT_CAP: u128 = 2_000_000;

/// Every element of `W`, as images of the simple roots.
#[derive(Clone, Debug)]
pub struct WeylEnumeration {
    rank: usize,
    images: Vec<u8>,
}

impl WeylEnumeration {
    pub fn len(&self) -> usize {
        self.images.len() / self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Root indices of `w(alpha_1), ..., w(alpha_n)`.
    pub fn images(&self, k: usize) -> &[u8] {
        &self.images[k * self.rank..(k + 1) * self.rank]
    }

    pub fn key(&self, k: usize) -> u128 {
        pack(self.images(k))
    }

    /// The element as a permutation of all roots.
    pub fn element(&self, rs: &RootSystem, k: usize) -> WeylElement {
        element_from_images(rs, self.images(k))
    }
}

fn pack(images: &[u8]) -> u128 {
    images.iter().fold(0u128, |acc, &x| acc << 8 | x as u128)
}

/// Key of `w` in the same encoding as [`WeylEnumeration::key`].
pub fn element_key(w: &WeylElement, rank: usize) -> u128 {
    w.permutation()[..rank].iter().fold(0u128, |acc, &x| acc << 8 | x as u128)
}

fn element_from_images(rs: &RootSystem, images: &[u8]) -> WeylElement {
    let perm = (0..rs.root_count())
        .map(|k| {
            let image = apply(rs, images, rs.root_coords(k));
            rs.index_of(&image).expect("Weyl elements permute roots") as u16
        })
        .collect();
    WeylElement::from_permutation(perm)
}

/// Coordinates of `w(beta)` from the images of the simple roots.
fn apply(rs: &RootSystem, images: &[u8], beta: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; beta.len()];
    for (j, &b) in beta.iter().enumerate() {
        if b != 0 {
            for (o, x) in out.iter_mut().zip(rs.root_coords(images[j] as usize)) {
                *o += b * x;
            }
        }
    }
    out
}

/// Breadth-first closure of the identity under the simple reflections.
pub fn enumerate_weyl(rs: &RootSystem, cap: u128) -> Result<WeylEnumeration> {
    let estimate = rs.cartan_type().weyl_order();
    if estimate > cap {
        return Err(Error::WeylCapExceeded { estimate, cap });
    }
    if rs.root_count() > 256 || rs.rank() > 16 {
        return Err(Error::TooManyRoots(rs.root_count()));
    }
    let rank = rs.rank();
    let reflections: Vec<Vec<u8>> = (0..rank)
        .map(|i| rs.simple_reflection(i).permutation().iter().map(|&x| x as u8).collect())
        .collect();
    let mut images: Vec<u8> = (0..rank as u8).collect();
    let mut seen: HashSet<u128> = HashSet::with_capacity(estimate as usize);
    seen.insert(pack(&images));
    let mut k = 0;
    let mut next = vec![0u8; rank];
    while k * rank < images.len() {
        for s in &reflections {
            for j in 0..rank {
                next[j] = s[images[k * rank + j] as usize];
            }
            if seen.insert(pack(&next)) {
                images.extend_from_slice(&next);
            }
        }
        k += 1;
    }
    Ok(WeylEnumeration { rank, images })
}

/// Roots with an integral pairing against `lambda`.
pub fn phi_of(rs: &RootSystem, lambda: &Coweight) -> Vec<usize> {
    let p = rs.pairing_vector(lambda);
    (0..rs.root_count())
        .filter(|&k| {
            rs.root_coords(k)
                .iter()
                .zip(&p)
                .fold(Rational::zero(), |acc, (&b, x)| acc + x * Rational::from_integer(b.into()))
                .is_integer()
        })
        .collect()
}

/// Dimension of the common fixed space of `elements` on `V`.
pub fn fixed_dim(rs: &RootSystem, elements: &[WeylElement]) -> usize {
    let n = rs.rank();
    let mut echelon = RowEchelon::new(n);
    for w in elements {
        // column j is w(alpha_j) in simple-root coordinates
        let columns: Vec<&[i64]> = (0..n).map(|j| rs.root_coords(w.apply(j))).collect();
        if insert_moved(&mut echelon, &columns) {
            break;
        }
    }
    n - echelon.rank()
}

/// Adds the rows of `M - I` for the matrix with the given columns; returns
/// `true` once the echelon form is full.
fn insert_moved(echelon: &mut RowEchelon, columns: &[&[i64]]) -> bool {
    let n = columns.len();
    for i in 0..n {
        let row: Vec<i64> = (0..n).map(|j| columns[j][i] - i64::from(i == j)).collect();
        echelon.insert(&row);
        if echelon.is_full() {
            return true;
        }
    }
    false
}

/// `lambda` scaled so that all pairings become integers.
struct Scaled {
    denominator: i64,
    pairings: Vec<i64>,
}

impl Scaled {
    fn new(rs: &RootSystem, v: &Coweight) -> Self {
        let p = rs.pairing_vector(v);
        let den = denominator_lcm(&p);
        let pairings = p
            .iter()
            .map(|x| (x * Rational::from_integer(den.clone())).to_integer().to_i64().unwrap())
            .collect();
        Self { denominator: den.to_i64().unwrap(), pairings }
    }

    fn pair(&self, beta: &[i64]) -> i64 {
        beta.iter().zip(&self.pairings).map(|(a, b)| a * b).sum()
    }
}

/// What the oracle learns about one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    pub order: u64,
    pub stabilizer_order: usize,
    pub reflection_subgroup_order: usize,
    pub component_group_order: usize,
    pub quasi_isolated: bool,
    pub isolated: bool,
    /// `W_G(lambda) = A_G(lambda) ⋉ W°(lambda)` was confirmed.
    pub semidirect: bool,
}

/// `W°(lambda)` and `A_G(lambda)` inside a stabilizer.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub phi: Vec<usize>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    /// Keys of the elements of `W°(lambda)`.
    pub reflection_subgroup: HashSet<u128>,
    /// Enumeration indices of `A_G(lambda)`.
    pub component_group: Vec<usize>,
    pub semidirect: bool,
}

pub struct Oracle<'a> {
    lattice: &'a CocharLattice,
    weyl: &'a WeylEnumeration,
    // Y(T) test: delta * C^-1 and delta * varpi(z) for z in A_G
    delta: i64,
    scaled_inverse: Vec<Vec<i64>>,
    scaled_varpi: Vec<Vec<i64>>,
}

impl<'a> Oracle<'a> {
    pub fn new(lattice: &'a CocharLattice, weyl: &'a WeylEnumeration) -> Self {
        let d = lattice.diagram();
        let rs = d.root_system();
        let n = rs.rank();
        let inverse: Vec<Vec<Rational>> =
            (0..n).map(|j| rs.fundamental_coweight(j).coords().to_vec()).collect();
        let delta = denominator_lcm(inverse.iter().flatten());
        let to_int = |x: &Rational| {
            (x * Rational::from_integer(delta.clone())).to_integer().to_i64().unwrap()
        };
        let scaled_inverse = inverse.iter().map(|row| row.iter().map(to_int).collect()).collect();
        let scaled_varpi = lattice
            .subgroup()
            .iter()
            .map(|&z| d.automorphisms().get(z).varpi.coords().iter().map(to_int).collect())
            .collect();
        Self {
            lattice,
            weyl,
            delta: delta.to_i64().unwrap(),
            scaled_inverse,
            scaled_varpi,
        }
    }

    fn rs(&self) -> &RootSystem {
        self.lattice.diagram().root_system()
    }

    /// Membership in `Y(T)` of the coweight with the given integral pairings.
    fn in_lattice(&self, q: &[i64]) -> bool {
        let n = q.len();
        let v: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| q[j] * self.scaled_inverse[j][i]).sum())
            .collect();
        self.scaled_varpi
            .iter()
            .any(|z| v.iter().zip(z).all(|(a, b)| (a - b) % self.delta == 0))
    }

    /// Smallest `k > 0` with `k lambda ∈ Y(T)`.
    pub fn order(&self, lambda: &Coweight) -> u64 {
        let s = Scaled::new(self.rs(), lambda);
        (1..)
            .find(|&k| {
                s.pairings.iter().all(|x| k * x % s.denominator == 0)
                    && self.in_lattice(&s.pairings.iter().map(|x| k * x / s.denominator).collect::<Vec<_>>())
            })
            .unwrap() as u64
    }

    /// `W_G(lambda) = {w : w(lambda) - lambda ∈ Y(T)}`, as enumeration indices.
    pub fn stabilizer(&self, lambda: &Coweight) -> Vec<usize> {
        let rs = self.rs();
        let s = Scaled::new(rs, lambda);
        let n = rs.rank();
        let mut q = vec![0i64; n];
        let mut out = Vec::new();
        // w^-1(lambda) - lambda has pairings <w alpha_j, lambda> - <alpha_j, lambda>;
        // the stabilizer is closed under inversion, so testing w^-1 is enough
        'elements: for k in 0..self.weyl.len() {
            let images = self.weyl.images(k);
            for j in 0..n {
                let diff = s.pair(rs.root_coords(images[j] as usize)) - s.pairings[j];
                if diff % s.denominator != 0 {
                    continue 'elements;
                }
                q[j] = diff / s.denominator;
            }
            if self.in_lattice(&q) {
                out.push(k);
            }
        }
        out
    }

    /// Splits the stabilizer of `lambda ∈ C` into the reflection subgroup and
    /// the stabilizer of the positive system of `Phi(lambda)`.
    pub fn decompose(&self, lambda: &Coweight, stabilizer: &[usize]) -> Decomposition {
        let d = self.lattice.diagram();
        let rs = self.rs();
        let s = Scaled::new(rs, lambda);
        let phi: Vec<usize> = (0..rs.root_count())
            .filter(|&k| s.pair(rs.root_coords(k)) % s.denominator == 0)
            .collect();

        // interior point of the alcove: every affine coordinate equal
        let mut barycenter = vec![Rational::zero(); d.node_count()];
        for c in 0..d.component_count() {
            let share = Rational::new(1.into(), BigInt::from(d.component_nodes(c).len()));
            for u in d.component_nodes(c) {
                barycenter[u] = share.clone();
            }
        }
        let direction = &d.from_coords(&AffineCoordinates::new(barycenter)) - lambda;
        let y = Scaled::new(rs, &direction);
        let height = |beta: &[i64]| y.pair(beta);

        let positive: Vec<usize> =
            phi.iter().copied().filter(|&k| height(rs.root_coords(k)) > 0).collect();
        let positive_set: HashSet<Vec<i64>> =
            positive.iter().map(|&k| rs.root_coords(k).to_vec()).collect();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&k| {
                let beta = rs.root_coords(k);
                !positive.iter().any(|&m| {
                    let gamma = rs.root_coords(m);
                    let rest: Vec<i64> = beta.iter().zip(gamma).map(|(a, b)| a - b).collect();
                    positive_set.contains(&rest)
                })
            })
            .collect();

        let component_group: Vec<usize> = stabilizer
            .iter()
            .copied()
            .filter(|&k| {
                let images = self.weyl.images(k);
                simple.iter().all(|&b| height(&apply(rs, images, rs.root_coords(b))) > 0)
            })
            .collect();

        let reflections: Vec<Vec<u16>> =
            simple.iter().map(|&k| rs.reflection(k).permutation().to_vec()).collect();
        let mut reflection_subgroup = HashSet::new();
        let identity: Vec<u8> = (0..rs.rank() as u8).collect();
        reflection_subgroup.insert(pack(&identity));
        let mut queue = vec![identity];
        while let Some(w) = queue.pop() {
            for r in &reflections {
                let next: Vec<u8> = w.iter().map(|&x| r[x as usize] as u8).collect();
                if reflection_subgroup.insert(pack(&next)) {
                    queue.push(next);
                }
            }
        }

        let stabilizer_keys: HashSet<u128> = stabilizer.iter().map(|&k| self.weyl.key(k)).collect();
        let identity_key = pack(&(0..rs.rank() as u8).collect::<Vec<_>>());
        let semidirect = reflection_subgroup.iter().all(|k| stabilizer_keys.contains(k))
            && component_group.len() * reflection_subgroup.len() == stabilizer.len()
            && component_group
                .iter()
                .all(|&k| self.weyl.key(k) == identity_key || !reflection_subgroup.contains(&self.weyl.key(k)));

        Decomposition { phi, positive, simple, reflection_subgroup, component_group, semidirect }
    }

    /// `(quasi-isolated, isolated)` from fixed-space dimensions.
    pub fn is_quasi_isolated(&self, lambda: &Coweight) -> (bool, bool) {
        let stab = self.stabilizer(lambda);
        let rs = self.rs();
        let quasi = self.stabilizer_fixed_dim(&stab) == 0;
        let reflections: Vec<WeylElement> =
            phi_of(rs, lambda).into_iter().map(|k| rs.reflection(k)).collect();
        (quasi, fixed_dim(rs, &reflections) == 0)
    }

    fn stabilizer_fixed_dim(&self, stab: &[usize]) -> usize {
        let rs = self.rs();
        let n = rs.rank();
        let mut echelon = RowEchelon::new(n);
        for &k in stab {
            let images = self.weyl.images(k);
            let columns: Vec<&[i64]> = images.iter().map(|&x| rs.root_coords(x as usize)).collect();
            if insert_moved(&mut echelon, &columns) {
                break;
            }
        }
        n - echelon.rank()
    }

    /// Everything about one point of the alcove.
    pub fn analyze(&self, lambda: &Coweight) -> PointReport {
        let rs = self.rs();
        let stab = self.stabilizer(lambda);
        let quasi_isolated = self.stabilizer_fixed_dim(&stab) == 0;
        let dec = self.decompose(lambda, &stab);
        let reflections: Vec<WeylElement> = dec.phi.iter().map(|&k| rs.reflection(k)).collect();
        PointReport {
            order: self.order(lambda),
            stabilizer_order: stab.len(),
            reflection_subgroup_order: dec.reflection_subgroup.len(),
            component_group_order: dec.component_group.len(),
            quasi_isolated,
            isolated: fixed_dim(rs, &reflections) == 0,
            semidirect: dec.semidirect,
        }
    }

    /// Whether `lambda, mu ∈ C` are conjugate under `W ⋉ Y(T)`: some
    /// `z ∈ A_G` sends `lambda` to `mu` modulo `Y(T)`.
    pub fn conjugate(&self, lambda: &AffineCoordinates, mu: &Coweight) -> bool {
        let d = self.lattice.diagram();
        let group = d.automorphisms();
        self.lattice.subgroup().iter().any(|&z| {
            let image = d.from_coords(&group.get(z).act_on_coords(lambda));
            self.lattice.contains(&(&image - mu))
        })
    }

    /// All quasi-isolated points of the alcove whose affine coordinates have
    /// denominator dividing `max_den` and whose order is prime to `p`, one
    /// per `W ⋉ Y(T)`-orbit.
    pub fn exhaustive_search(&self, p: u64, max_den: u64, point_cap: u128) -> Result<Vec<SearchOrbit>> {
        check_characteristic(p)?;
        let d = self.lattice.diagram();
        let parts: Vec<usize> = (0..d.component_count()).map(|c| d.component_nodes(c).len()).collect();
        let points: u128 = parts.iter().map(|&k| binomial(max_den as u128 + k as u128 - 1, k as u128 - 1)).product();
        if points > point_cap {
            return Err(Error::PointCapExceeded { points, cap: point_cap });
        }
        let per_component: Vec<Vec<Vec<u64>>> =
            parts.iter().map(|&k| compositions(max_den, k)).collect();
        let den = Rational::from_integer(BigInt::from(max_den));
        let point = |mut index: usize| {
            let mut values = Vec::with_capacity(d.node_count());
            for tuples in &per_component {
                let tuple = &tuples[index % tuples.len()];
                index /= tuples.len();
                values.extend(tuple.iter().map(|&x| Rational::from_integer(x.into()) / &den));
            }
            AffineCoordinates::new(values)
        };
        let keep = |index: usize| {
            let lambda = d.from_coords(&point(index));
            prime_to(CocharLattice::order_sc(&lambda), p)
                && self.stabilizer_fixed_dim(&self.stabilizer(&lambda)) == 0
        };

        let total = points as usize;
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(total.max(1));
        let chunk = total.div_ceil(threads);
        let hits: Vec<usize> = std::thread::scope(|scope| {
            let workers: Vec<_> = (0..threads)
                .map(|t| {
                    let keep = &keep;
                    scope.spawn(move || {
                        (t * chunk..((t + 1) * chunk).min(total)).filter(|&i| keep(i)).collect::<Vec<_>>()
                    })
                })
                .collect();
            workers.into_iter().flat_map(|w| w.join().expect("search worker panicked")).collect()
        });

        let mut found: Vec<SearchOrbit> = Vec::new();
        for index in hits {
            let coords = point(index);
            let lambda = d.from_coords(&coords);
            match found.iter_mut().find(|o| self.conjugate(&o.coords, &lambda)) {
                Some(orbit) => orbit.points += 1,
                None => {
                    let report = self.analyze(&lambda);
                    found.push(SearchOrbit { coords, lambda, report, points: 1 });
                }
            }
        }
        Ok(found)
    }
}

/// One `W ⋉ Y(T)`-orbit found by the search.
#[derive(Clone, Debug)]
pub struct SearchOrbit {
    pub coords: AffineCoordinates,
    pub lambda: Coweight,
    pub report: PointReport,
    /// Number of searched points in this orbit.
    pub points: usize,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Ordered tuples of `parts` nonnegative integers summing to `total`.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Search denominator that captures every class: a multiple of twice the
/// largest order and of every order.
pub fn default_max_den(classes: &[QuasiIsolatedClass]) -> u64 {
    let max = classes.iter().map(|c| c.order).max().unwrap_or(1);
    lcm_all(classes.iter().map(|c| c.order)).lcm(&(2 * max))
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub max_den: Option<u64>,
    pub oracle_cap: Option<u128>,
    pub point_cap: Option<u128>,
    pub subset_cap: Option<usize>,
}

/// Side-by-side comparison of the classifier and the oracle.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub classes: Vec<QuasiIsolatedClass>,
    pub orbits: Vec<SearchOrbit>,
    pub max_den: u64,
    pub weyl_order: usize,
    pub mismatches: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify(lattice: &CocharLattice, p: u64, opts: &VerifyOptions) -> Result<VerifyReport> {
    let d: &AffineDiagram = lattice.diagram();
    let classes = classify_with_cap(lattice, p, opts.subset_cap.unwrap_or(DEFAULT_SUBSET_CAP))?;
    let weyl = enumerate_weyl(d.root_system(), opts.oracle_cap.unwrap_or(DEFAULT_ORACLE_CAP))?;
    let oracle = Oracle::new(lattice, &weyl);
    let max_den = opts.max_den.unwrap_or_else(|| default_max_den(&classes));
    let orbits = oracle.exhaustive_search(p, max_den, opts.point_cap.unwrap_or(DEFAULT_POINT_CAP))?;

    let mut mismatches = Vec::new();
    if classes.len() != orbits.len() {
        mismatches.push(format!(
            "classifier found {} classes, oracle found {} orbits",
            classes.len(),
            orbits.len()
        ));
    }
    let mut used = vec![false; orbits.len()];
    for class in &classes {
        let label = d.format_nodes(class.omega.nodes());
        let coords = d.affine_coords(&class.lambda);
        let hit = (0..orbits.len()).find(|&j| oracle.conjugate(&coords, &orbits[j].lambda));
        let Some(j) = hit else {
            mismatches.push(format!("{label}: no oracle orbit contains lambda = {}", class.lambda));
            continue;
        };
        if used[j] {
            mismatches.push(format!("{label}: oracle orbit {j} already matched"));
        }
        used[j] = true;
        let r = &orbits[j].report;
        let expected = (
            class.order,
            class.centralizer.weyl_order(),
            class.component_group.len(),
            class.isolated,
        );
        let got = (
            r.order,
            r.reflection_subgroup_order as u128,
            r.component_group_order,
            r.isolated,
        );
        if expected != got {
            mismatches.push(format!(
                "{label}: classifier (order, |W°|, |A|, isolated) = {expected:?}, oracle = {got:?}"
            ));
        }
        if !r.semidirect {
            mismatches.push(format!("{label}: stabilizer is not A ⋉ W°"));
        }
    }
    for (j, orbit) in orbits.iter().enumerate() {
        if !used[j] {
            mismatches.push(format!("oracle orbit at {} has no class", orbit.coords));
        }
    }
    Ok(VerifyReport { classes, orbits, max_den, weyl_order: weyl.len(), mismatches })
}
