//! Adaptive Simpson quadrature with a relative tolerance and a panel budget.

use crate::error::{Error, Result};

/// Initial uniform partition before adaptive refinement starts. Keeps the
/// reference magnitude meaningful for oscillating integrands whose
/// three-point estimate happens to vanish.
const SEED_PANELS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            max_panels: 1 << 16,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates a fallible integrand over `[a, b]`.
///
/// Each panel is accepted once its two-half Simpson estimate agrees with the
/// whole-panel estimate to within its share of `rel_tol · |I|`, where `|I|`
/// is taken from the seed partition. Exceeding `max_panels` live panels is a
/// convergence error.
pub fn try_integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if b <= a {
        return Ok(0.0);
    }
    let width = b - a;
    let h = width / SEED_PANELS as f64;

    let mut stack = Vec::with_capacity(SEED_PANELS);
    let mut reference = 0.0;
    let mut magnitude = 0.0;
    let mut f_left = f(a)?;
    for i in 0..SEED_PANELS {
        let pa = a + i as f64 * h;
        let pb = if i + 1 == SEED_PANELS {
            b
        } else {
            a + (i + 1) as f64 * h
        };
        let fm = f(0.5 * (pa + pb))?;
        let fb = f(pb)?;
        let whole = simpson(pa, pb, f_left, fm, fb);
        reference += whole;
        magnitude += simpson(pa, pb, f_left.abs(), fm.abs(), fb.abs());
        stack.push(Panel {
            a: pa,
            b: pb,
            fa: f_left,
            fm,
            fb,
            whole,
        });
        f_left = fb;
    }
    // process left to right for a deterministic summation order
    stack.reverse();

    let scale = if reference != 0.0 { reference.abs() } else { magnitude };
    if scale == 0.0 {
        return Ok(0.0);
    }
    let tol = spec.rel_tol * scale;

    let mut total = 0.0;
    let mut accepted = 0usize;
    while let Some(p) = stack.pop() {
        if accepted + stack.len() + 1 > spec.max_panels {
            return Err(Error::Convergence {
                panels: accepted + stack.len() + 1,
                estimate: total + p.whole + stack.iter().map(|q| q.whole).sum::<f64>(),
                rel_tol: spec.rel_tol,
            });
        }
        let m = 0.5 * (p.a + p.b);
        let flm = f(0.5 * (p.a + m))?;
        let frm = f(0.5 * (m + p.b))?;
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let diff = left + right - p.whole;
        let share = tol * (p.b - p.a) / width;
        if diff.abs() <= 15.0 * share || (p.b - p.a) <= f64::EPSILON * width {
            total += left + right + diff / 15.0;
            accepted += 1;
        } else {
            stack.push(Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
            });
            stack.push(Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
            });
        }
    }
    Ok(total)
}

/// Infallible-integrand convenience wrapper around [`try_integrate`].
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|x| Ok(f(x)), a, b, spec)
}
