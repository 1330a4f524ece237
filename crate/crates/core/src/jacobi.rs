//! Jacobi elliptic functions by the arithmetic-geometric mean.

/// `(sn, cn, dn)` of `u` for complementary parameter `kc2 = 1 − k²`.
///
/// Descending Landen / AGM scheme: run the AGM from `(1, k')`, scale `u` by
/// `2^N a_N`, then unwind the amplitude back to `φ` so that `cn = cos φ`.
pub fn sn_cn_dn(u: f64, kc2: f64) -> (f64, f64, f64) {
    const MAX_LEVELS: usize = 32;
    let k2 = 1.0 - kc2;
    if k2 <= 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    let mut a = [0.0; MAX_LEVELS + 1];
    let mut c = [0.0; MAX_LEVELS + 1];
    a[0] = 1.0;
    let mut b = kc2.sqrt();
    c[0] = k2.sqrt();
    let mut levels = 0;
    while levels < MAX_LEVELS && c[levels].abs() > f64::EPSILON * a[levels] {
        let an = a[levels];
        a[levels + 1] = 0.5 * (an + b);
        c[levels + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        levels += 1;
    }
    let mut phi = (1u64 << levels) as f64 * a[levels] * u;
    for j in (1..=levels).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = (1.0 - k2 * sn * sn).sqrt();
    (sn, cn, dn)
}
