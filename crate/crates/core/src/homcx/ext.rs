//! Local cohomology by brute force: `H^i_J(C) = colim_t Ext^i(S/J_t, C)` with
//! `J_t = (f_1^t, ..., f_c^t)`.
//!
//! This is a semi-decision procedure. A nonzero `Ext` proves nothing about
//! higher degrees, but the least degree where `Ext^i(S/J_t, C)` is nonzero does
//! not depend on `t` and equals the least degree of nonvanishing local
//! cohomology, which is what [`least_nonvanishing_degree`] reports.

use std::ops::RangeInclusive;

use serde::Serialize;

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::polycore::{free_resolution, Ideal, Matrix, Polynomial, PresentedModule};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OracleVerdict {
    /// `Ext^i(S/J_t, C) != 0` for this `t`.
    NonvanishingDetected { t: u32 },
    /// Zero for every `t <= t_max`; `stabilized` when the last two agree.
    VanishingUpToTmax { t_max: u32, stabilized: bool },
    Inconclusive { reason: String },
}

impl OracleVerdict {
    pub fn is_nonvanishing(&self) -> bool {
        matches!(self, OracleVerdict::NonvanishingDetected { .. })
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, OracleVerdict::Inconclusive { .. })
    }
}

/// Total complex `Hom^i(P, C) = ⊕_q Hom(P^q, C^(q+i))` with differential
/// `f ↦ d_C f - (-1)^i f d_P`. Blocks are vectorized row-major.
pub fn hom_complex<F: Field>(p: &FreeComplex<F>, c: &FreeComplex<F>) -> FreeComplex<F> {
    let nvars = c.nvars();
    if p.is_zero_complex() || c.is_zero_complex() {
        return FreeComplex::zero(nvars);
    }
    let ilo = c.lo() - p.hi();
    let ihi = c.hi() - p.lo();
    // offsets[i][q]: start of the block Hom(P^q, C^(q+i)) inside Hom^i
    let layout = |i: i64| -> (Vec<(i64, usize)>, usize) {
        let mut blocks = Vec::new();
        let mut off = 0;
        for q in p.degrees() {
            blocks.push((q, off));
            off += p.rank(q) * c.rank(q + i);
        }
        (blocks, off)
    };
    let block_offset = |blocks: &[(i64, usize)], q: i64| blocks.iter().find(|(b, _)| *b == q).map(|(_, o)| *o);

    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for i in ilo..=ihi {
        ranks.push(layout(i).1);
    }
    for i in ilo..ihi {
        let (src, src_dim) = layout(i);
        let (dst, dst_dim) = layout(i + 1);
        let mut d = Matrix::zero(nvars, dst_dim, src_dim);
        let sign = if i % 2 == 0 { -F::one() } else { F::one() };
        for &(q, so) in &src {
            let a = p.rank(q);
            let b = c.rank(q + i);
            if a == 0 || b == 0 {
                continue;
            }
            // d_C ∘ f lands in block q of Hom^(i+1)
            let dc = c.differential(q + i);
            if let Some(to) = block_offset(&dst, q) {
                for r2 in 0..dc.rows() {
                    for r in 0..b {
                        let e = dc.get(r2, r);
                        if e.is_zero() {
                            continue;
                        }
                        for col in 0..a {
                            d.set(to + r2 * a + col, so + r * a + col, e.clone());
                        }
                    }
                }
            }
            // ±f ∘ d_P^(q-1) lands in block q-1 of Hom^(i+1)
            let dp = p.differential(q - 1);
            let a2 = dp.cols();
            if a2 == 0 {
                continue;
            }
            if let Some(to) = block_offset(&dst, q - 1) {
                for r in 0..b {
                    for col in 0..a {
                        for c2 in 0..a2 {
                            let e = dp.get(col, c2);
                            if e.is_zero() {
                                continue;
                            }
                            let row = to + r * a2 + c2;
                            let cur = d.get(row, so + r * a + col).clone();
                            d.set(row, so + r * a + col, &cur + &e.scale(&sign));
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    FreeComplex::new(nvars, ilo, ranks, diffs).expect("consistent layout")
}

/// `Ext^i(S/J_t, C)` for `t = 1..=t_max`, stopping at the first nonzero one.
pub fn ext_colimit_oracle<F: Field>(j: &[Polynomial<F>], c: &FreeComplex<F>, i: i64, t_max: u32) -> Result<OracleVerdict> {
    if t_max < 1 {
        return Err(Error::InvalidArgument("t_max must be at least 1".into()));
    }
    let nvars = c.nvars();
    for t in 1..=t_max {
        let powers: Vec<Polynomial<F>> = j.iter().map(|f| f.pow(t)).collect();
        if Ideal::new(nvars, powers.clone())?.is_unit_ideal() {
            continue;
        }
        let quotient = PresentedModule::quotient_ring(nvars, &powers, format!("S/J_{t}"));
        let resolution = match free_resolution(&quotient) {
            Ok(r) => r,
            Err(e) => {
                return Ok(OracleVerdict::Inconclusive {
                    reason: e.to_string(),
                })
            }
        };
        let h = hom_complex(&resolution, c).cohomology(i);
        if h.ambient_rank() > 0 && !h.is_zero() {
            return Ok(OracleVerdict::NonvanishingDetected { t });
        }
    }
    Ok(OracleVerdict::VanishingUpToTmax {
        t_max,
        stabilized: t_max >= 2,
    })
}

/// Oracle verdicts for each degree of `window`, up to the first nonvanishing.
#[derive(Clone, Debug, Serialize)]
pub struct OracleScan {
    pub verdicts: Vec<(i64, OracleVerdict)>,
    pub least_nonvanishing: Option<i64>,
    pub conclusive: bool,
}

pub fn least_nonvanishing_degree<F: Field>(
    j: &[Polynomial<F>],
    c: &FreeComplex<F>,
    window: RangeInclusive<i64>,
    t_max: u32,
) -> Result<OracleScan> {
    let mut verdicts = Vec::new();
    let mut conclusive = true;
    for i in window {
        let v = ext_colimit_oracle(j, c, i, t_max)?;
        conclusive &= v.is_conclusive();
        let hit = v.is_nonvanishing();
        verdicts.push((i, v));
        if hit {
            return Ok(OracleScan {
                verdicts,
                least_nonvanishing: Some(i),
                conclusive,
            });
        }
    }
    Ok(OracleScan {
        verdicts,
        least_nonvanishing: None,
        conclusive,
    })
}
