//! Composite Gauss–Legendre quadrature for smooth integrands.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes per panel.
pub const GAUSS_NODES: usize = 64;

const MAX_PANELS: usize = 1 << 12;

struct Rule {
    nodes: [f64; GAUSS_NODES],
    weights: [f64; GAUSS_NODES],
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(legendre_rule)
}

// Newton iteration on P_n from the Chebyshev initial guesses; nodes on [-1, 1].
fn legendre_rule() -> Rule {
    let n = GAUSS_NODES;
    let mut nodes = [0.0; GAUSS_NODES];
    let mut weights = [0.0; GAUSS_NODES];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let r = rule();
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + width * p as f64;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        let mut s = 0.0;
        for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
            s += w * f(mid + half * x);
        }
        total += s * half;
    }
    total
}

/// Integrates `f` over `[a, b]`, doubling the panel count until two
/// successive estimates agree to `rel_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let mut panels = 1;
    let mut prev = composite(&f, a, b, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let next = composite(&f, a, b, panels);
        if (next - prev).abs() <= rel_tol * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureFailure {
        tol: rel_tol,
        panels,
    })
}
