//! Exhaustive ground truth. Every answer here comes from evaluating the
//! equations monomial by monomial at each point; no transform code is used.

use crate::algebra::{AnfPoly, BitTable, WSet};
use crate::engine::ParityVector;
use crate::error::{Error, Result};
use crate::system::{Assignment, PolySystem};

/// Largest variable count enumerated unless the caller raises it.
pub const DEFAULT_CAP: usize = 24;

/// Exhaustive enumerator with a configurable size cap.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

fn eval_poly(monomials: &[u64], x: u64) -> bool {
    monomials.iter().filter(|&&u| x & u == u).count() % 2 == 1
}

struct Flat(Vec<Vec<u64>>);

impl Flat {
    fn new(sys: &PolySystem) -> Self {
        Flat(sys.polys().iter().map(AnfPoly::monomials).collect())
    }

    // Stops at the first equation that is not satisfied.
    fn solves(&self, x: u64) -> bool {
        self.0.iter().all(|p| !eval_poly(p, x))
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap }
    }

    fn guard(&self, sys: &PolySystem) -> Result<()> {
        if sys.n() > self.cap {
            return Err(Error::CapExceeded {
                n: sys.n(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// All solutions in increasing order of their bit encoding.
    pub fn solutions(&self, sys: &PolySystem) -> Result<Vec<Assignment>> {
        self.guard(sys)?;
        let flat = Flat::new(sys);
        let n = sys.n();
        Ok((0u64..1 << n)
            .filter(|&x| flat.solves(x))
            .map(|x| Assignment::new(n, x).expect("in range"))
            .collect())
    }

    pub fn count(&self, sys: &PolySystem) -> Result<u64> {
        self.guard(sys)?;
        let flat = Flat::new(sys);
        Ok((0u64..1 << sys.n()).filter(|&x| flat.solves(x)).count() as u64)
    }

    /// Parity vector by a double loop over outer points and inner suffixes.
    pub fn mult_parity(&self, sys: &PolySystem, n1: usize, w: usize) -> Result<ParityVector> {
        self.guard(sys)?;
        let n = sys.n();
        if n1 > n {
            return Err(Error::Domain(format!(
                "split size {n1} exceeds variable count {n}"
            )));
        }
        let outer = WSet::new(n - n1, w)?;
        let flat = Flat::new(sys);
        let bits = BitTable::from_bools(outer.points().into_iter().map(|y| {
            let mut parity = false;
            for z in 0u64..1 << n1 {
                if flat.solves(y | (z << (n - n1))) {
                    parity = !parity;
                }
            }
            parity
        }));
        ParityVector::new(n1, outer, bits)
    }
}

/// [`Oracle::solutions`] with the default cap.
pub fn oracle_solutions(sys: &PolySystem) -> Result<Vec<Assignment>> {
    Oracle::default().solutions(sys)
}

/// [`Oracle::mult_parity`] with the default cap.
pub fn oracle_mult_parity(sys: &PolySystem, n1: usize, w: usize) -> Result<ParityVector> {
    Oracle::default().mult_parity(sys, n1, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_system_has_every_point() {
        let sys = PolySystem::empty(3, 2).unwrap();
        assert_eq!(oracle_solutions(&sys).unwrap().len(), 8);
        let v = oracle_mult_parity(&sys, 1, 2).unwrap();
        assert!(v.bits().is_zero());
    }

    #[test]
    fn product_plus_one() {
        let p = AnfPoly::from_monomials(2, 2, [0b11, 0]).unwrap();
        let sys = PolySystem::new(2, 2, vec![p]).unwrap();
        let sols = oracle_solutions(&sys).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].to_string(), "11");
    }

    #[test]
    fn zero_weight_single_bit() {
        let sys = PolySystem::empty(4, 2).unwrap();
        assert_eq!(oracle_mult_parity(&sys, 2, 0).unwrap().len(), 1);
    }

    #[test]
    fn cap_refuses() {
        let sys = PolySystem::empty(10, 2).unwrap();
        assert!(matches!(
            Oracle::with_cap(8).solutions(&sys),
            Err(Error::CapExceeded { n: 10, cap: 8 })
        ));
    }
}
