//! Möbius transforms over the cube, over W-sets, and over mixed products.
//!
//! Over GF(2) the subset-sum transform is its own inverse, so the same routine
//! maps evaluations to ANF coefficients and back. The W-set variant is the
//! variable-by-variable butterfly restricted to a downward-closed set; a
//! function of degree above the weight bound silently aliases.

use super::anf::{AnfPoly, Domain, TruthTable};
use super::bits::BitTable;
use super::wset::{self, WSet, WSetPlan};
use crate::error::{domain, Result};

const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Full transform along the low `cube_vars` bits of the flat index.
/// The table length must be a multiple of `2^cube_vars`. Returns work in word operations.
pub(crate) fn cube_transform(table: &mut BitTable, cube_vars: usize) -> u64 {
    debug_assert_eq!(table.len() % (1usize << cube_vars), 0);
    let words = table.words_mut();
    let mut work = 0u64;
    for (j, &mask) in LOW_HALF.iter().enumerate().take(cube_vars.min(6)) {
        let shift = 1u32 << j;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
        work += words.len() as u64;
    }
    for j in 6..cube_vars {
        let stride = 1usize << (j - 6);
        for block in words.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
        work += (words.len() / 2) as u64;
    }
    work
}

/// Butterfly over the W-set factor; each row holds `2^cube_vars` bits.
pub(crate) fn outer_transform(table: &mut BitTable, plan: &WSetPlan, cube_vars: usize) -> u64 {
    let row = 1usize << cube_vars;
    debug_assert_eq!(table.len(), plan.wset.size() * row);
    let words = table.words_mut();
    let mut work = 0u64;
    if row >= 64 {
        let rw = row / 64;
        for stage in &plan.stages {
            for &(a, b) in stage {
                let (a, b) = (a as usize * rw, b as usize * rw);
                for k in 0..rw {
                    words[b + k] ^= words[a + k];
                }
            }
            work += (stage.len() * rw) as u64;
        }
    } else {
        let mask = (1u64 << row) - 1;
        for stage in &plan.stages {
            for &(a, b) in stage {
                let (a, b) = (a as usize * row, b as usize * row);
                let v = (words[a >> 6] >> (a & 63)) & mask;
                words[b >> 6] ^= v << (b & 63);
            }
            work += stage.len() as u64;
        }
    }
    work
}

// A dense embedding is used when the cube around the W-set is at most this
// many times larger, and small enough to allocate.
const EMBED_RATIO: u64 = 8;
const EMBED_MAX_VARS: usize = 24;

/// Whether `W^{outer_n}_w x {0,1}^{cube_vars}` is handled through the full cube.
pub(crate) fn embeds(outer_n: usize, w: usize, cube_vars: usize) -> bool {
    outer_n + cube_vars <= EMBED_MAX_VARS
        && (1u64 << outer_n) <= EMBED_RATIO * wset::ball_size(outer_n, w)
}

/// Outer butterfly followed by the cube transform along each row.
///
/// Small downward-closed sets are padded into the full cube, transformed with
/// word-parallel passes, and read back; the subset sums on a downward-closed
/// set only involve its own points, so both routes agree.
pub(crate) fn rows_transform(table: &mut BitTable, plan: &WSetPlan, cube_vars: usize) -> u64 {
    let outer_n = plan.wset.n();
    if !embeds(outer_n, plan.wset.w(), cube_vars) {
        return outer_transform(table, plan, cube_vars) + cube_transform(table, cube_vars);
    }
    let row = 1usize << cube_vars;
    let mut dense = BitTable::zeros(1usize << (outer_n + cube_vars));
    for (r, &y) in plan.points.iter().enumerate() {
        dense.copy_block(y as usize * row, table, r * row, row);
    }
    let work = cube_transform(&mut dense, outer_n + cube_vars);
    gather_rows_into(table, &dense, plan, cube_vars);
    work + 2 * plan.points.len() as u64
}

/// Evaluations at every point of the cube, laid out as `(y << n1) | z` for
/// outer part `y` and inner part `z`. Monomials whose outer part is heavier
/// than `d1` are skipped.
pub(crate) fn mixed_dense(
    monomials: impl Iterator<Item = u64>,
    n: usize,
    n1: usize,
    d1: usize,
) -> (BitTable, u64) {
    let outer_n = n - n1;
    let ymask = (1u64 << outer_n) - 1;
    let mut dense = BitTable::zeros(1usize << n);
    for u in monomials {
        let (a, b) = (u & ymask, u >> outer_n);
        if a.count_ones() as usize <= d1 {
            dense.flip(((a << n1) | b) as usize);
        }
    }
    let work = cube_transform(&mut dense, n);
    (dense, work)
}

/// Rows of a dense `(y << n1) | z` table for the points `y` of the plan, in W-order.
pub(crate) fn gather_rows(dense: &BitTable, plan: &WSetPlan, n1: usize) -> BitTable {
    let mut out = BitTable::zeros(plan.points.len() << n1);
    gather_rows_into(&mut out, dense, plan, n1);
    out
}

fn gather_rows_into(out: &mut BitTable, dense: &BitTable, plan: &WSetPlan, n1: usize) {
    let row = 1usize << n1;
    for (r, &y) in plan.points.iter().enumerate() {
        out.copy_block(r * row, dense, y as usize * row, row);
    }
}

/// Truth table over `{0,1}^n` (integer order) to ANF coefficients.
pub fn mobius_full(tt: &TruthTable) -> Result<AnfPoly> {
    if !tt.domain().is_full_cube() {
        return domain("mobius_full expects a truth table over the full cube");
    }
    let n = tt.domain().cube_vars;
    let mut bits = tt.bits().clone();
    cube_transform(&mut bits, n);
    let plan = wset::plan(n, n)?;
    let coeffs = BitTable::from_bools(plan.points.iter().map(|&p| bits.get(p as usize)));
    AnfPoly::from_coeffs(n, n, coeffs)
}

/// ANF to truth table over the full cube (integer order).
pub fn evaluate_full(anf: &AnfPoly) -> TruthTable {
    let n = anf.n();
    let mut bits = BitTable::zeros(1usize << n);
    let plan = wset::plan(n, anf.d()).expect("validated at construction");
    for r in anf.coeffs().ones_iter() {
        bits.set(plan.points[r] as usize, true);
    }
    cube_transform(&mut bits, n);
    TruthTable::new(Domain::full(n).expect("n checked"), bits).expect("length matches")
}

/// Evaluations on `W^n_d` to the ANF of the unique degree-`<= d` interpolant.
pub fn mobius_truncated(evals: &TruthTable) -> Result<AnfPoly> {
    let dom = evals.domain();
    if dom.cube_vars != 0 {
        return domain("mobius_truncated expects evaluations on a W-set");
    }
    let (n, d) = (dom.outer.n(), dom.outer.w());
    let mut bits = evals.bits().clone();
    rows_transform(&mut bits, &*wset::plan(n, d)?, 0);
    AnfPoly::from_coeffs(n, d, bits)
}

/// ANF of degree `<= d` to its evaluations on `W^n_d`.
pub fn evaluate_on_wset(anf: &AnfPoly) -> TruthTable {
    let (n, d) = (anf.n(), anf.d());
    let mut bits = anf.coeffs().clone();
    let plan = wset::plan(n, d).expect("validated at construction");
    rows_transform(&mut bits, &plan, 0);
    TruthTable::new(Domain::ball(n, d).expect("validated"), bits).expect("length matches")
}

/// Evaluates `anf` on `W^{n-n1}_{d1} x {0,1}^{n1}`.
///
/// `d1` is clamped to `n - n1`. It must cover the degree of the outer part:
/// `d1 >= min(d, n - n1)`.
pub fn mobius_mixed(anf: &AnfPoly, n1: usize, d1: usize) -> Result<TruthTable> {
    mixed_counted(anf, n1, d1, true).map(|(tt, _)| tt)
}

/// With `check` off, monomials whose outer part is heavier than `d1` are
/// dropped; they vanish on every point of the domain anyway.
pub(crate) fn mixed_counted(
    anf: &AnfPoly,
    n1: usize,
    d1: usize,
    check: bool,
) -> Result<(TruthTable, u64)> {
    let n = anf.n();
    if n1 > n {
        return domain(format!("split size {n1} exceeds variable count {n}"));
    }
    let outer_n = n - n1;
    let d1 = d1.min(outer_n);
    if check && d1 < anf.d().min(outer_n) {
        return domain(format!(
            "weight bound {d1} is below the polynomial degree bound {}",
            anf.d()
        ));
    }
    let outer = WSet::new(outer_n, d1)?;
    let plan = wset::plan(outer_n, d1)?;
    let src = wset::plan(n, anf.d())?;
    if embeds(outer_n, d1, n1) {
        let (dense, work) = mixed_dense(anf.coeffs().ones_iter().map(|r| src.points[r]), n, n1, d1);
        let bits = gather_rows(&dense, &plan, n1);
        let dom = Domain {
            outer,
            cube_vars: n1,
        };
        return Ok((TruthTable::new(dom, bits)?, work + plan.points.len() as u64));
    }
    let mut bits = BitTable::zeros(outer.size() << n1);
    let ymask = (1u64 << outer_n) - 1;
    for r in anf.coeffs().ones_iter() {
        let u = src.points[r];
        let (a, b) = (u & ymask, u >> outer_n);
        if a.count_ones() as usize <= d1 {
            bits.set((outer.rank_unchecked(a) << n1) | b as usize, true);
        }
    }
    let work = rows_transform(&mut bits, &plan, n1);
    let dom = Domain {
        outer,
        cube_vars: n1,
    };
    Ok((TruthTable::new(dom, bits)?, work))
}
