//! Polynomial equation systems `P_j(x) = 0` over GF(2).

pub mod format;
pub mod generate;
pub mod matrix;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::algebra::{AnfPoly, BitTable, WSet};
use crate::error::{domain, Error, Result};
pub use matrix::{sample_invertible, F2Matrix};

/// An assignment to `n` variables; bit `i` holds `x_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    n: usize,
    bits: u64,
}

impl Assignment {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n > 64 || (n < 64 && bits >> n != 0) {
            return domain(format!("assignment {bits:#x} does not fit {n} variables"));
        }
        Ok(Assignment { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value of the variable at 0-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn with(&self, i: usize, v: bool) -> Assignment {
        let bits = if v {
            self.bits | 1 << i
        } else {
            self.bits & !(1 << i)
        };
        Assignment { n: self.n, bits }
    }
}

/// Bitstring with `x_1` first.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => {
                    return Err(Error::Syntax {
                        line: 1,
                        column: i + 1,
                        message: format!("unexpected character {c:?} in assignment"),
                    })
                }
            }
        }
        Assignment::new(s.chars().count(), bits)
    }
}

/// Outputs of every polynomial at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub values: BitTable,
    pub is_solution: bool,
}

/// Result of Gaussian-elimination preprocessing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preprocessed {
    System(PolySystem),
    Inconsistent,
}

/// Solution set of a linear system: `particular + span(basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    pub n: usize,
    pub particular: u64,
    pub basis: Vec<u64>,
}

impl AffineSpace {
    pub fn len(&self) -> u128 {
        1u128 << self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..1 << self.basis.len()).map(move |c| {
            self.basis
                .iter()
                .enumerate()
                .filter(|(i, _)| (c >> i) & 1 == 1)
                .fold(self.particular, |acc, (_, &b)| acc ^ b)
        })
    }
}

/// The system `E = {P_j}`; all members share the variable count and degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySystem {
    n: usize,
    d: usize,
    polys: Vec<AnfPoly>,
}

impl PolySystem {
    pub fn new(n: usize, d: usize, polys: Vec<AnfPoly>) -> Result<Self> {
        let d = d.min(n);
        WSet::new(n, d)?;
        for (j, p) in polys.iter().enumerate() {
            if p.n() != n || p.d() != d {
                return domain(format!(
                    "polynomial {j} has shape (n={}, d={}), expected (n={n}, d={d})",
                    p.n(),
                    p.d()
                ));
            }
        }
        Ok(PolySystem { n, d, polys })
    }

    pub fn empty(n: usize, d: usize) -> Result<Self> {
        PolySystem::new(n, d, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[AnfPoly] {
        &self.polys
    }

    pub fn push(&mut self, p: AnfPoly) -> Result<()> {
        if p.n() != self.n || p.d() != self.d {
            return domain("polynomial shape does not match the system");
        }
        self.polys.push(p);
        Ok(())
    }

    /// Largest actual degree among the members.
    pub fn max_degree(&self) -> usize {
        self.polys.iter().map(AnfPoly::degree).max().unwrap_or(0)
    }

    pub fn evaluate(&self, a: &Assignment) -> Evaluation {
        debug_assert_eq!(a.n(), self.n);
        let values = BitTable::from_bools(self.polys.iter().map(|p| p.evaluate(a.bits())));
        let is_solution = values.is_zero();
        Evaluation {
            values,
            is_solution,
        }
    }

    pub fn is_solution(&self, x: u64) -> bool {
        self.polys.iter().all(|p| !p.evaluate(x))
    }

    /// `ell` random GF(2) combinations `R_i = sum_j alpha_ij P_j` with uniform `alpha`.
    pub fn random_combinations<R: Rng + ?Sized>(&self, ell: usize, rng: &mut R) -> PolySystem {
        let zero = AnfPoly::zero(self.n, self.d).expect("shape validated");
        let polys = (0..ell)
            .map(|_| {
                let mut r = zero.clone();
                for p in &self.polys {
                    if rng.random::<bool>() {
                        r.add_assign(p);
                    }
                }
                r
            })
            .collect();
        PolySystem {
            n: self.n,
            d: self.d,
            polys,
        }
    }

    /// Substitutes `x_var = value` (0-based `var`); the variable count is unchanged.
    pub fn fix_variable(&self, var: usize, value: bool) -> Result<PolySystem> {
        if var >= self.n {
            return domain(format!("variable index {} out of range", var + 1));
        }
        let bit = 1u64 << var;
        let polys = self
            .polys
            .iter()
            .map(|p| {
                let monos = p
                    .monomials()
                    .into_iter()
                    .filter_map(|u| match (u & bit != 0, value) {
                        (false, _) => Some(u),
                        (true, false) => None,
                        (true, true) => Some(u & !bit),
                    });
                AnfPoly::from_monomials(self.n, self.d, monos)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolySystem {
            n: self.n,
            d: self.d,
            polys,
        })
    }

    /// Drops an unused variable, shifting the later variables down by one.
    pub fn remove_variable(&self, var: usize) -> Result<PolySystem> {
        if var >= self.n {
            return domain(format!("variable index {} out of range", var + 1));
        }
        let low = (1u64 << var) - 1;
        let d = self.d.min(self.n - 1);
        let polys = self
            .polys
            .iter()
            .map(|p| {
                let monos = p.monomials();
                if monos.iter().any(|u| u >> var & 1 == 1) {
                    return domain(format!("variable x{} still occurs", var + 1));
                }
                AnfPoly::from_monomials(
                    self.n - 1,
                    d,
                    monos.into_iter().map(|u| (u & low) | ((u >> 1) & !low)),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolySystem {
            n: self.n - 1,
            d,
            polys,
        })
    }

    /// Fixes `x_var = value` and removes the variable.
    pub fn restrict(&self, var: usize, value: bool) -> Result<PolySystem> {
        self.fix_variable(var, value)?.remove_variable(var)
    }

    /// Appends `k` uniformly random affine equations `a . x + b`.
    pub fn add_affine_equations<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> PolySystem {
        let mut out = if self.d == 0 && self.n > 0 {
            self.with_degree_bound(1)
                .expect("raising the bound is infallible")
        } else {
            self.clone()
        };
        for _ in 0..k {
            let mut monos: Vec<u64> = (0..self.n)
                .filter(|_| rng.random::<bool>())
                .map(|i| 1u64 << i)
                .collect();
            if rng.random::<bool>() {
                monos.push(0);
            }
            out.polys
                .push(AnfPoly::from_monomials(out.n, out.d, monos).expect("affine fits"));
        }
        out
    }

    pub fn with_degree_bound(&self, d: usize) -> Result<PolySystem> {
        let polys = self
            .polys
            .iter()
            .map(|p| p.with_degree_bound(d))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(self.n, d, polys)
    }

    /// Substitutes `x = B v`; `v` solves the result iff `B v` solves `self`.
    pub fn change_variables(&self, b: &F2Matrix) -> Result<PolySystem> {
        if b.rows() != self.n || b.cols() != self.n {
            return domain(format!("basis must be {0}x{0}", self.n));
        }
        b.inverse()?;
        let ws = WSet::new(self.n, self.d)?;
        let mut cache: HashMap<u64, Vec<u64>> = HashMap::new();
        let mut polys = Vec::with_capacity(self.polys.len());
        for p in &self.polys {
            let mut coeffs = BitTable::zeros(ws.size());
            for u in p.monomials() {
                let expansion = cache.entry(u).or_insert_with(|| expand_monomial(u, b));
                for &v in expansion.iter() {
                    coeffs.flip(ws.rank_unchecked(v));
                }
            }
            polys.push(AnfPoly::from_coeffs(self.n, self.d, coeffs)?);
        }
        Ok(PolySystem {
            n: self.n,
            d: self.d,
            polys,
        })
    }

    /// Gauss-Jordan elimination on the coefficient matrix.
    ///
    /// Dependent equations are dropped, so the result has at most `|W^n_d|`
    /// members and the same solution set. A row reducing to `0 = 1` means the
    /// system is unsolvable.
    pub fn preprocess(&self) -> Preprocessed {
        let ws = WSet::new(self.n, self.d).expect("validated");
        let cols = ws.size();
        let mut mat = F2Matrix::zeros(self.m(), cols);
        for (i, p) in self.polys.iter().enumerate() {
            for r in p.coeffs().ones_iter() {
                mat.set(i, r, true);
            }
        }
        // constant column last, so a surviving constant-only row is exactly 0 = 1
        let pivots = mat.row_reduce_with_order((1..cols).chain(std::iter::once(0)));
        if pivots.last() == Some(&0) {
            return Preprocessed::Inconsistent;
        }
        let polys = (0..pivots.len())
            .map(|i| {
                let bits = BitTable::from_bools((0..cols).map(|c| mat.get(i, c)));
                AnfPoly::from_coeffs(self.n, self.d, bits).expect("row width matches")
            })
            .collect();
        Preprocessed::System(PolySystem {
            n: self.n,
            d: self.d,
            polys,
        })
    }

    /// Solves a system whose members all have degree at most one.
    /// Returns `Ok(None)` when inconsistent.
    pub fn solve_linear(&self) -> Result<Option<AffineSpace>> {
        if self.max_degree() > 1 {
            return domain("solve_linear requires affine equations");
        }
        let n = self.n;
        let mut mat = F2Matrix::zeros(self.m(), n + 1);
        for (i, p) in self.polys.iter().enumerate() {
            for u in p.monomials() {
                let c = if u == 0 {
                    n
                } else {
                    u.trailing_zeros() as usize
                };
                mat.set(i, c, true);
            }
        }
        let pivots = mat.row_reduce_with_order(0..n);
        let rank = pivots.len();
        if (rank..self.m()).any(|r| mat.get(r, n)) {
            return Ok(None);
        }
        let mut particular = 0u64;
        for (r, &c) in pivots.iter().enumerate() {
            if mat.get(r, n) {
                particular |= 1 << c;
            }
        }
        let basis = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = 1u64 << f;
                for (r, &c) in pivots.iter().enumerate() {
                    if mat.get(r, f) {
                        v |= 1 << c;
                    }
                }
                v
            })
            .collect();
        Ok(Some(AffineSpace {
            n,
            particular,
            basis,
        }))
    }
}

/// Expands `prod_{i in u} (sum_j B[i][j] v_j)` into monomials over `v`.
fn expand_monomial(u: u64, b: &F2Matrix) -> Vec<u64> {
    let mut terms: Vec<u64> = vec![0];
    let mut rest = u;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let row = b.row_mask(i);
        let mut next: HashMap<u64, bool> = HashMap::new();
        for &t in &terms {
            let mut r = row;
            while r != 0 {
                let j = r.trailing_zeros();
                r &= r - 1;
                *next.entry(t | 1 << j).or_insert(false) ^= true;
            }
        }
        terms = next
            .into_iter()
            .filter_map(|(k, v)| v.then_some(k))
            .collect();
    }
    terms.sort_unstable();
    terms
}
