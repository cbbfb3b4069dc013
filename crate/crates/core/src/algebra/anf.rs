use std::fmt;

use super::bits::BitTable;
use super::wset::{self, WSet, MAX_VARS};
use crate::error::{domain, Result};

/// A multilinear polynomial over GF(2) in `n` variables with degree at most `d`.
///
/// Coefficients live in a dense table indexed by canonical rank in `W^n_d`;
/// the entry at `rank(u)` is the coefficient of the monomial `prod_{i in u} x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnfPoly {
    n: usize,
    d: usize,
    coeffs: BitTable,
}

impl AnfPoly {
    pub fn zero(n: usize, d: usize) -> Result<Self> {
        let ws = WSet::new(n, d.min(n))?;
        Ok(AnfPoly {
            n,
            d: d.min(n),
            coeffs: BitTable::zeros(ws.size()),
        })
    }

    pub fn one(n: usize, d: usize) -> Result<Self> {
        let mut p = AnfPoly::zero(n, d)?;
        p.coeffs.set(0, true);
        Ok(p)
    }

    /// Builds a polynomial from monomial masks; repeated monomials cancel.
    pub fn from_monomials<I: IntoIterator<Item = u64>>(
        n: usize,
        d: usize,
        monomials: I,
    ) -> Result<Self> {
        let mut p = AnfPoly::zero(n, d)?;
        let ws = p.wset();
        for m in monomials {
            let r = ws.rank(m)?;
            p.coeffs.flip(r);
        }
        Ok(p)
    }

    pub fn from_coeffs(n: usize, d: usize, coeffs: BitTable) -> Result<Self> {
        let ws = WSet::new(n, d.min(n))?;
        if coeffs.len() != ws.size() {
            return domain(format!(
                "coefficient table has {} entries, expected {}",
                coeffs.len(),
                ws.size()
            ));
        }
        Ok(AnfPoly {
            n,
            d: d.min(n),
            coeffs,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared degree bound.
    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn coeffs(&self) -> &BitTable {
        &self.coeffs
    }

    pub fn wset(&self) -> WSet {
        WSet::new(self.n, self.d).expect("validated at construction")
    }

    pub fn coeff(&self, monomial: u64) -> bool {
        let ws = self.wset();
        ws.contains(monomial) && self.coeffs.get(ws.rank_unchecked(monomial))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Monomials with nonzero coefficient, in canonical order.
    pub fn monomials(&self) -> Vec<u64> {
        let plan = wset::plan(self.n, self.d).expect("validated at construction");
        self.coeffs.ones_iter().map(|r| plan.points[r]).collect()
    }

    /// Actual algebraic degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.monomials()
            .last()
            .map_or(0, |m| m.count_ones() as usize)
    }

    /// Same polynomial under a different degree bound.
    pub fn with_degree_bound(&self, d: usize) -> Result<AnfPoly> {
        let d = d.min(self.n);
        if d >= self.d {
            let mut out = AnfPoly::zero(self.n, d)?;
            for r in self.coeffs.ones_iter() {
                out.coeffs.set(r, true);
            }
            return Ok(out);
        }
        if self.degree() > d {
            return domain(format!("polynomial has degree {} > {d}", self.degree()));
        }
        let size = WSet::new(self.n, d)?.size();
        Ok(AnfPoly {
            n: self.n,
            d,
            coeffs: BitTable::from_bools(self.coeffs.iter().take(size)),
        })
    }

    /// Evaluates at one point by summing coefficients over its low-weight submasks.
    pub fn evaluate(&self, x: u64) -> bool {
        debug_assert!(x >> self.n == 0);
        let ws = self.wset();
        let mut acc = false;
        let mut s = x;
        loop {
            if s.count_ones() as usize <= self.d {
                acc ^= self.coeffs.get(ws.rank_unchecked(s));
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & x;
        }
        acc
    }

    pub fn add_assign(&mut self, other: &AnfPoly) {
        assert_eq!((self.n, self.d), (other.n, other.d), "shape mismatch");
        self.coeffs.xor_assign(&other.coeffs);
    }

    pub fn add_constant(&mut self) {
        self.coeffs.flip(0);
    }
}

impl fmt::Debug for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfPoly(n={}, d={}: {})", self.n, self.d, self)
    }
}

/// Canonical text: monomials in W-order joined by ` + `; `0` for the zero polynomial.
impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = self.monomials();
        if monos.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in monos.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m == 0 {
                f.write_str("1")?;
                continue;
            }
            let mut first = true;
            let mut rest = m;
            while rest != 0 {
                let v = rest.trailing_zeros() + 1;
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "x{v}")?;
                first = false;
                rest &= rest - 1;
            }
        }
        Ok(())
    }
}

/// Evaluation domain `W^{outer}_{w} x {0,1}^{cube}`.
///
/// The W-set factor covers variables `x_1..x_{outer}`, the cube factor the
/// following `cube` variables. Flat index is `rank(y) * 2^cube + z`, so the cube
/// coordinate varies fastest. The full cube `{0,1}^n` is `W^0_0 x {0,1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    pub outer: WSet,
    pub cube_vars: usize,
}

impl Domain {
    pub fn full(n: usize) -> Result<Self> {
        if n > MAX_VARS {
            return domain(format!(
                "{n} variables exceeds the supported maximum {MAX_VARS}"
            ));
        }
        Ok(Domain {
            outer: WSet::new(0, 0)?,
            cube_vars: n,
        })
    }

    pub fn ball(n: usize, w: usize) -> Result<Self> {
        Ok(Domain {
            outer: WSet::new(n, w)?,
            cube_vars: 0,
        })
    }

    pub fn mixed(outer_vars: usize, w: usize, cube_vars: usize) -> Result<Self> {
        if outer_vars + cube_vars > MAX_VARS {
            return domain("too many variables");
        }
        Ok(Domain {
            outer: WSet::new(outer_vars, w)?,
            cube_vars,
        })
    }

    pub fn n(&self) -> usize {
        self.outer.n() + self.cube_vars
    }

    pub fn is_full_cube(&self) -> bool {
        self.outer.n() == 0
    }

    pub fn len(&self) -> usize {
        self.outer.size() << self.cube_vars
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Assignment to all `n` variables at flat index `i`.
    pub fn point(&self, i: usize) -> u64 {
        let y = self
            .outer
            .unrank(i >> self.cube_vars)
            .expect("index in range");
        let z = (i & ((1usize << self.cube_vars) - 1)) as u64;
        y | (z << self.outer.n())
    }

    /// Flat index of a full assignment, if it lies in the domain.
    pub fn index_of(&self, x: u64) -> Option<usize> {
        let on = self.outer.n();
        let y = x & ((1u64 << on) - 1);
        let z = x >> on;
        if z >> self.cube_vars != 0 || !self.outer.contains(y) {
            return None;
        }
        Some((self.outer.rank_unchecked(y) << self.cube_vars) | z as usize)
    }
}

/// One evaluation bit per domain point in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    domain: Domain,
    bits: BitTable,
}

impl TruthTable {
    pub fn new(domain: Domain, bits: BitTable) -> Result<Self> {
        if bits.len() != domain.len() {
            return domain_err(bits.len(), domain.len());
        }
        Ok(TruthTable { domain, bits })
    }

    pub fn from_fn(domain: Domain, f: impl Fn(u64) -> bool) -> Self {
        let bits = BitTable::from_bools((0..domain.len()).map(|i| f(domain.point(i))));
        TruthTable { domain, bits }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn bits(&self) -> &BitTable {
        &self.bits
    }

    pub fn into_bits(self) -> BitTable {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    /// Value at a full assignment, if it lies in the domain.
    pub fn value_at(&self, x: u64) -> Option<bool> {
        self.domain.index_of(x).map(|i| self.bits.get(i))
    }
}

fn domain_err<T>(got: usize, want: usize) -> Result<T> {
    domain(format!(
        "truth table has {got} bits, domain has {want} points"
    ))
}
