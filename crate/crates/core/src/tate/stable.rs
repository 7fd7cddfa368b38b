use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::hom::{extend_down, Window, H0};
use super::{FreeResolution, TateError};
use crate::complexes::Side;
use crate::field::Field;

/// Number of consecutive isomorphisms after which a trace counts as stabilized.
pub const STABLE_RUN: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub q: usize,
    /// `dim Hom_D(M, Σ^n σ_{≤-q} P)`
    pub dim: usize,
    /// Rank of the map to depth `q + 1`, when computed.
    pub map_rank: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizationVerdict {
    Stabilized { q0: usize, dim: usize },
    Inconclusive { q_max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationTrace {
    pub n: i64,
    pub entries: Vec<TraceEntry>,
    pub verdict: StabilizationVerdict,
}

impl StabilizationTrace {
    pub fn dimension(&self) -> Option<usize> {
        match self.verdict {
            StabilizationVerdict::Stabilized { dim, .. } => Some(dim),
            StabilizationVerdict::Inconclusive { .. } => None,
        }
    }
}

/// Lowest source degree needed to read `Hom_D(M, Σ^n σ_{≤-q} P)` off a window.
pub(crate) fn window_lo(n: i64, q: usize) -> i64 {
    (-(n + q as i64 + 1)).min(0)
}

/// `H^0` of the window computing `Hom_D(M, Σ^n σ_{≤-q} P)`.
pub(crate) fn depth_h0<F: Field>(res: &FreeResolution<F>, n: i64, q: usize) -> Result<(Window<'_, F>, H0<F>), TateError> {
    let w = Window::new(res, n, q, window_lo(n, q), 0)?;
    let h = H0::compute(&w);
    Ok((w, h))
}

/// Follows `Hom_D(M, Σ^n σ_{≤-q} P)` along the truncation quotients `q → q + 1`
/// until [`STABLE_RUN`] consecutive maps are isomorphisms, or `q_max` is reached.
pub fn hhsg_dim<F: Field>(res: &FreeResolution<F>, n: i64, q_max: usize) -> Result<StabilizationTrace, TateError> {
    let mut entries = Vec::new();
    let (mut w, mut h) = depth_h0(res, n, 0)?;
    let mut run = 0;
    for q in 0..=q_max {
        if q == q_max {
            entries.push(TraceEntry { q, dim: h.dim(), map_rank: None });
            break;
        }
        let (w1, mut h1) = depth_h0(res, n, q + 1)?;
        let mut images = Vec::with_capacity(h.dim());
        for rep in &h.reps {
            let mut blocks = w.unflatten(rep);
            extend_down(res, n, q, &mut blocks, w.lo, w1.lo)?;
            images.push(w1.flatten(&blocks));
        }
        let rank = h1.rank_modulo_boundaries(&images);
        entries.push(TraceEntry { q, dim: h.dim(), map_rank: Some(rank) });
        if rank == h.dim() && rank == h1.dim() {
            run += 1;
            if run == STABLE_RUN {
                let q0 = q + 1 - STABLE_RUN;
                entries.push(TraceEntry { q: q + 1, dim: h1.dim(), map_rank: None });
                return Ok(StabilizationTrace {
                    n,
                    entries,
                    verdict: StabilizationVerdict::Stabilized { q0, dim: rank },
                });
            }
        } else {
            run = 0;
        }
        w = w1;
        h = h1;
    }
    Ok(StabilizationTrace { n, entries, verdict: StabilizationVerdict::Inconclusive { q_max } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyReport {
    pub q: usize,
    /// Homology of `Σ^{-q} σ_{≤-q} P` away from the bottom degree of the finite resolution.
    pub homology: BTreeMap<i64, usize>,
    /// `dim Ω^q` as the kernel of the previous differential (the augmentation when `q = 1`).
    pub syzygy_dim: usize,
    pub concentrated: bool,
    pub matches: bool,
}

/// Checks that `Σ^{-q} σ_{≤-q} P` resolves the `q`-th syzygy.
pub fn syzygy_identification_check<F: Field>(res: &FreeResolution<F>, q: usize) -> Result<SyzygyReport, TateError> {
    let l = res.length();
    if q + 1 > l {
        return Err(TateError::ResolutionTooShort { needed: q + 1, have: l });
    }
    let c = res.to_complex().truncate(-(q as i64), Side::Le).shift(-(q as i64));
    let bottom = q as i64 - l as i64;
    let homology: BTreeMap<i64, usize> =
        c.homology_dims().into_iter().filter(|(deg, _)| *deg > bottom).collect();
    let syzygy_dim = match q {
        0 => res.module().dim(),
        1 => res.dim(0) - super::resolution::column_rank(res.field(), res.module().dim(), &res.augmentation_columns()),
        _ => res.dim(q - 1) - super::resolution::column_rank(res.field(), res.dim(q - 2), res.diff_columns(q - 1)),
    };
    let concentrated = homology.iter().all(|(deg, dim)| *deg == 0 || *dim == 0);
    let top = homology.get(&0).copied().unwrap_or(0);
    Ok(SyzygyReport { q, homology, syzygy_dim, concentrated, matches: concentrated && top == syzygy_dim })
}
