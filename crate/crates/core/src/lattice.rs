//! Intermediate cocharacter lattices `Y(T_sc) ⊆ Y(T) ⊆ Y(T_ad)`.
//!
//! A lattice is recorded by the subgroup `S` of the automorphism group whose
//! coweights `varpi^vee(z)` represent `Y(T)/Y(T_sc)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::affine::AffineDiagram;
use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, divisors, is_prime, to_u64, Rational};
use crate::rootsys::Coweight;

/// Characteristic of the base field: 0 or a prime.
pub fn check_characteristic(p: u64) -> Result<()> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidCharacteristic(p))
    }
}

/// `true` when `n` is prime to `p`; everything is prime to 0.
pub fn prime_to(n: u64, p: u64) -> bool {
    p == 0 || !n.is_multiple_of(p)
}

#[derive(Clone, Debug)]
pub struct CocharLattice {
    diagram: Arc<AffineDiagram>,
    subgroup: Vec<usize>,
    name: String,
}

impl CocharLattice {
    /// `"sc"`, `"ad"`, or a comma-separated list of generator names.
    pub fn new(diagram: Arc<AffineDiagram>, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let group = diagram.automorphisms();
        let subgroup = match spec {
            "sc" => vec![0],
            "ad" => (0..group.len()).collect(),
            gens => {
                let gens = gens
                    .split(',')
                    .map(|g| group.lookup(g))
                    .collect::<Result<Vec<_>>>()?;
                group.generated(&gens)
            }
        };
        Ok(Self { diagram, subgroup, name: spec.to_string() })
    }

    pub fn from_subgroup(diagram: Arc<AffineDiagram>, gens: &[usize], name: &str) -> Self {
        let subgroup = diagram.automorphisms().generated(gens);
        Self { diagram, subgroup, name: name.to_string() }
    }

    pub fn diagram(&self) -> &Arc<AffineDiagram> {
        &self.diagram
    }

    /// The subgroup `A_G`, as sorted element indices.
    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_simply_connected(&self) -> bool {
        self.subgroup.len() == 1
    }

    pub fn is_adjoint(&self) -> bool {
        self.subgroup.len() == self.diagram.automorphisms().len()
    }

    pub fn contains_automorphism(&self, z: usize) -> bool {
        self.subgroup.binary_search(&z).is_ok()
    }

    /// Membership of `v` in `Y(T)`.
    pub fn contains(&self, v: &Coweight) -> bool {
        let rs = self.diagram.root_system();
        if !rs.pairing_vector(v).iter().all(Rational::is_integer) {
            return false;
        }
        let group = self.diagram.automorphisms();
        self.subgroup
            .iter()
            .any(|&z| (v - &group.get(z).varpi).is_integral())
    }

    /// `o_sc(lambda)`: order of `lambda` in `V / Y(T_sc)`.
    pub fn order_sc(lambda: &Coweight) -> u64 {
        to_u64(&denominator_lcm(lambda.coords()))
    }

    /// `o_ad(lambda)`: order of `lambda` in `V / Y(T_ad)`.
    pub fn order_ad(&self, lambda: &Coweight) -> u64 {
        let p = self.diagram.root_system().pairing_vector(lambda);
        to_u64(&denominator_lcm(&p))
    }

    /// `o_G(lambda)`: order of `lambda` in `V / Y(T)`.
    pub fn order(&self, lambda: &Coweight) -> u64 {
        let sc = Self::order_sc(lambda);
        divisors(sc)
            .into_iter()
            .find(|&k| self.contains(&lambda.scale(&Rational::from_integer(BigInt::from(k)))))
            .expect("o_sc(lambda) always annihilates lambda")
    }

    /// `Delta~_{p'}`: nodes whose alcove vertex has `o_sc` prime to `p`.
    pub fn p_prime_nodes(diagram: &AffineDiagram, p: u64) -> Result<Vec<usize>> {
        check_characteristic(p)?;
        Ok((0..diagram.node_count())
            .filter(|&u| prime_to(Self::order_sc(&diagram.vertex(u)), p))
            .collect())
    }

    /// `(A_G)_{p'}`: elements of `A_G` of order prime to `p`.
    pub fn p_prime_part(&self, p: u64) -> Result<Vec<usize>> {
        check_characteristic(p)?;
        let group = self.diagram.automorphisms();
        Ok(self
            .subgroup
            .iter()
            .copied()
            .filter(|&z| prime_to(group.order(z) as u64, p))
            .collect())
    }

    /// `p` divides neither a mark of the affine diagram nor `|A_G|`.
    pub fn is_almost_very_good(&self, p: u64) -> Result<bool> {
        check_characteristic(p)?;
        Ok(self.diagram.marks().iter().all(|&n| prime_to(n as u64, p))
            && prime_to(self.subgroup.len() as u64, p))
    }
}

impl fmt::Display for CocharLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.diagram.cartan_type(), self.name)
    }
}

/// Exponent of the automorphism group, i.e. of `Y(T_ad)/Y(T_sc)`.
pub fn fundamental_group_exponent(diagram: &AffineDiagram) -> u64 {
    let group = diagram.automorphisms();
    (0..group.len()).fold(1u64, |e, z| e.lcm(&(group.order(z) as u64)))
}

/// Least common multiple of a list, 1 when empty.
pub fn lcm_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(1, |a, b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn lattice(t: &str, spec: &str) -> CocharLattice {
        let d = Arc::new(AffineDiagram::new(&t.parse().unwrap()).unwrap());
        CocharLattice::new(d, spec).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(lattice("E6", "sc").subgroup().len(), 1);
        assert_eq!(lattice("A5", "ad").subgroup().len(), 6);
        let so = lattice("D6", "z1");
        assert_eq!(so.subgroup().len(), 2);
        assert!(!so.is_adjoint());
        assert!(CocharLattice::new(so.diagram().clone(), "z9").is_err());
    }

    #[test]
    fn membership_in_a1() {
        let sc = lattice("A1", "sc");
        let ad = lattice("A1", "ad");
        let w = sc.diagram().root_system().fundamental_coweight(0);
        assert!(!sc.contains(&w));
        assert!(ad.contains(&w));
        assert!(sc.contains(&Coweight::from_ints(&[-3])));
    }

    #[test]
    fn orders_in_a1() {
        let sc = lattice("A1", "sc");
        let ad = lattice("A1", "ad");
        let lambda = Coweight(vec![frac(1, 4)]);
        assert_eq!(sc.order(&lambda), 4);
        assert_eq!(ad.order(&lambda), 2);
        assert_eq!(ad.order_ad(&lambda), 2);
        assert_eq!(sc.order(&Coweight::zero(1)), 1);
    }

    #[test]
    fn p_prime_nodes() {
        let d = AffineDiagram::new(&"C4".parse().unwrap()).unwrap();
        assert_eq!(CocharLattice::p_prime_nodes(&d, 2).unwrap(), vec![0]);
        assert_eq!(CocharLattice::p_prime_nodes(&d, 0).unwrap().len(), 5);
        assert!(CocharLattice::p_prime_nodes(&d, 4).is_err());
        assert!(CocharLattice::p_prime_nodes(&d, 1).is_err());
        let e6 = AffineDiagram::new(&"E6".parse().unwrap()).unwrap();
        assert!(!CocharLattice::p_prime_nodes(&e6, 3).unwrap().contains(&4));
    }

    #[test]
    fn p_prime_parts() {
        assert_eq!(lattice("A3", "ad").p_prime_part(2).unwrap(), vec![0]);
        assert_eq!(lattice("A5", "ad").p_prime_part(3).unwrap().len(), 2);
        assert_eq!(lattice("A5", "ad").p_prime_part(0).unwrap().len(), 6);
    }

    #[test]
    fn almost_very_good() {
        assert!(lattice("A4", "ad").is_almost_very_good(0).unwrap());
        assert!(!lattice("A4", "ad").is_almost_very_good(5).unwrap());
        assert!(lattice("G2", "ad").is_almost_very_good(5).unwrap());
        assert!(!lattice("G2", "ad").is_almost_very_good(3).unwrap());
    }
}
