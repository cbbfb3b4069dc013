//! Random instance generators.

use rand::Rng;

use super::{sample_invertible, PolySystem};
use crate::algebra::{AnfPoly, BitTable, WSet};

/// Uniform polynomial of degree at most `d`.
pub fn random_poly<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> AnfPoly {
    let size = WSet::new(n, d.min(n)).expect("caller validates n").size();
    AnfPoly::from_coeffs(
        n,
        d,
        BitTable::from_bools((0..size).map(|_| rng.random::<bool>())),
    )
    .expect("length matches")
}

/// `m` polynomials with uniform coefficient tables.
pub fn random_system<R: Rng + ?Sized>(n: usize, d: usize, m: usize, rng: &mut R) -> PolySystem {
    let polys = (0..m).map(|_| random_poly(n, d, rng)).collect();
    PolySystem::new(n, d, polys).expect("shapes agree")
}

/// Adjusts constant terms so that `x` solves every equation.
pub fn plant(sys: &PolySystem, x: u64) -> PolySystem {
    let polys = sys
        .polys()
        .iter()
        .map(|p| {
            let mut p = p.clone();
            if p.evaluate(x) {
                p.add_constant();
            }
            p
        })
        .collect();
    PolySystem::new(sys.n(), sys.d(), polys).expect("shapes agree")
}

/// `p * (a . x + c)` with the degree bound raised to `bound`.
pub fn mul_affine(p: &AnfPoly, a: u64, c: bool, bound: usize) -> AnfPoly {
    let n = p.n();
    let mut terms = Vec::new();
    for u in p.monomials() {
        if c {
            terms.push(u);
        }
        let mut r = a;
        while r != 0 {
            let j = r.trailing_zeros();
            r &= r - 1;
            terms.push(u | 1 << j);
        }
    }
    AnfPoly::from_monomials(n, bound, terms).expect("degree fits the raised bound")
}

/// A degree-`d` system whose solution set is a random affine subspace of
/// dimension `dim` (exactly `2^dim` solutions).
///
/// Starts from `n - dim` independent affine forms `A_i` and hides them as
/// `Q_i = A_i + sum_{j<i} A_j * S_ij` with random `S_ij` of degree `d - 1`;
/// the triangular shape keeps the solution set unchanged.
pub fn affine_subspace_system<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    dim: usize,
    rng: &mut R,
) -> PolySystem {
    assert!(dim <= n && d >= 1 && n >= 1);
    let (basis, _) = sample_invertible(n, rng);
    let forms: Vec<AnfPoly> = (0..n - dim)
        .map(|i| {
            let mut monos: Vec<u64> = (0..n)
                .filter(|&j| basis.get(i, j))
                .map(|j| 1u64 << j)
                .collect();
            if rng.random::<bool>() {
                monos.push(0);
            }
            AnfPoly::from_monomials(n, d, monos).expect("affine fits")
        })
        .collect();
    let mut polys = Vec::with_capacity(forms.len());
    for (i, form) in forms.iter().enumerate() {
        let mut q = form.clone();
        for prev in &forms[..i] {
            let s = random_poly(n, d - 1, rng);
            let mut prod = AnfPoly::zero(n, d).expect("valid");
            // A_j * S = sum over monomials of A_j of (monomial * S)
            for u in prev.monomials() {
                let (mask, c) = if u == 0 { (0, true) } else { (u, false) };
                prod.add_assign(&mul_affine(&s, mask, c, d));
            }
            q.add_assign(&prod);
        }
        polys.push(q);
    }
    PolySystem::new(n, d, polys).expect("shapes agree")
}
