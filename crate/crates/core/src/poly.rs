//! Quartic characteristic polynomials: expansion, roots and resultants.
//!
//! Coefficient vectors are stored lowest degree first, `c[0] + c[1] λ + … + c[4] λ⁴`.
//!
//! The determinant `det(B − λA)` of the modulation pencil suffers heavy
//! cancellation when two characteristic speeds nearly coincide (small
//! amplitude waves), so the expansion and the Sylvester determinant are
//! carried out in double-double arithmetic.

use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for DoubleDouble {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Self::from(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Self::from(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from(q3)
    }
}

/// Coefficients of `det(B − λA)`, lowest degree first, in double-double.
pub fn pencil_charpoly_dd(a: &Matrix4<f64>, b: &Matrix4<f64>) -> [DoubleDouble; 5] {
    let mut coeffs = [DoubleDouble::ZERO; 5];
    for (perm, parity) in permutations4() {
        // ∏ (b_{i,σ(i)} − λ a_{i,σ(i)})
        let mut prod = [DoubleDouble::ZERO; 5];
        prod[0] = DoubleDouble::ONE;
        for (row, &col) in perm.iter().enumerate() {
            let c0 = DoubleDouble::from(b[(row, col)]);
            let c1 = DoubleDouble::from(-a[(row, col)]);
            let mut next = [DoubleDouble::ZERO; 5];
            for d in 0..=row {
                next[d] = next[d] + prod[d] * c0;
                next[d + 1] = next[d + 1] + prod[d] * c1;
            }
            prod = next;
        }
        for d in 0..5 {
            coeffs[d] = if parity {
                coeffs[d] - prod[d]
            } else {
                coeffs[d] + prod[d]
            };
        }
    }
    coeffs
}

/// Coefficients of `det(B − λA)`, lowest degree first.
pub fn pencil_charpoly(a: &Matrix4<f64>, b: &Matrix4<f64>) -> [f64; 5] {
    pencil_charpoly_dd(a, b).map(DoubleDouble::to_f64)
}

// All 24 permutations of 0..4 with odd-parity flag.
fn permutations4() -> Vec<([usize; 4], bool)> {
    let mut out = Vec::with_capacity(24);
    let mut p = [0, 1, 2, 3];
    heap_permute(&mut p, 4, &mut out);
    out.into_iter()
        .map(|perm| {
            let mut inversions = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            (perm, inversions % 2 == 1)
        })
        .collect()
}

fn heap_permute(p: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 1 {
        out.push(*p);
        return;
    }
    for i in 0..k {
        heap_permute(p, k - 1, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// Horner evaluation at a complex point.
pub fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect()
}

/// Roots of a quartic with nonzero leading coefficient.
///
/// Eigenvalues of the balanced companion matrix seed a few Aberth–Ehrlich
/// sweeps on the polynomial itself, which sharpens clustered roots without
/// letting two iterates collapse onto the same root.
pub fn quartic_roots(coeffs: &[f64; 5]) -> [Complex64; 4] {
    let lead = coeffs[4];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let mut companion = Matrix4::<f64>::zeros();
    for i in 1..4 {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..4 {
        companion[(i, 3)] = -monic[i];
    }
    balance(&mut companion);
    let eig = companion.complex_eigenvalues();
    let mut roots = [Complex64::new(0.0, 0.0); 4];
    for (r, e) in roots.iter_mut().zip(eig.iter()) {
        *r = Complex64::new(e.re, e.im);
    }
    aberth_polish(&monic, &mut roots);
    roots
}

fn aberth_polish(monic: &[f64], roots: &mut [Complex64; 4]) {
    let dcoeffs = derivative(monic);
    for _ in 0..50 {
        let mut max_step = 0.0f64;
        let mut max_mag = 0.0f64;
        for i in 0..4 {
            let z = roots[i];
            let p = eval_complex(monic, z);
            let dp = eval_complex(&dcoeffs, z);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &other) in roots.iter().enumerate() {
                if j != i && other != z {
                    repulsion += 1.0 / (z - other);
                }
            }
            let step = ratio / (1.0 - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            roots[i] = z - step;
            max_step = max_step.max(step.norm());
            max_mag = max_mag.max(roots[i].norm());
        }
        if max_step <= 4.0 * f64::EPSILON * max_mag.max(f64::MIN_POSITIVE) {
            break;
        }
    }
}

// Parlett–Reinsch diagonal similarity balancing with powers of two.
fn balance(m: &mut Matrix4<f64>) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..4 {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..4 {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / RADIX;
            let mut f = 1.0;
            let s = c + r;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..4 {
                    m[(i, j)] *= inv;
                }
                for j in 0..4 {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Sylvester matrix of `p` (degree `n`) and `q` (degree `m`), highest degree first.
pub fn sylvester_matrix(p: &[f64], q: &[f64]) -> Vec<Vec<f64>> {
    let n = p.len() - 1;
    let m = q.len() - 1;
    let size = n + m;
    let mut rows = vec![vec![0.0; size]; size];
    for r in 0..m {
        for (j, &c) in p.iter().rev().enumerate() {
            rows[r][r + j] = c;
        }
    }
    for r in 0..n {
        for (j, &c) in q.iter().rev().enumerate() {
            rows[m + r][r + j] = c;
        }
    }
    rows
}

fn det_dd(mut rows: Vec<Vec<DoubleDouble>>) -> DoubleDouble {
    let n = rows.len();
    let mut det = DoubleDouble::ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                rows[i][col]
                    .abs()
                    .hi
                    .partial_cmp(&rows[j][col].abs().hi)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if rows[pivot][col].hi == 0.0 {
            return DoubleDouble::ZERO;
        }
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let p = rows[col][col];
        det = det * p;
        for r in col + 1..n {
            let factor = rows[r][col] / p;
            if factor.hi == 0.0 {
                continue;
            }
            let (top, bottom) = rows.split_at_mut(r);
            for (x, &v) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x = *x - factor * v;
            }
        }
    }
    det
}

/// `Res(p, q)` through the Sylvester determinant; `p`, `q` lowest degree first.
pub fn resultant(p: &[f64], q: &[f64]) -> f64 {
    let rows = sylvester_matrix(p, q)
        .into_iter()
        .map(|r| r.into_iter().map(DoubleDouble::from).collect())
        .collect();
    det_dd(rows).to_f64()
}

/// `Res(p, p′)` of a quartic after normalising it to be monic.
///
/// Zero exactly when `p` has a repeated root. For a monic quartic it equals
/// the discriminant, hence is positive whenever the four roots are real and
/// distinct.
pub fn resultant_quartic(coeffs: &[f64; 5]) -> f64 {
    let dd: [DoubleDouble; 5] = coeffs.map(DoubleDouble::from);
    resultant_quartic_dd(&dd)
}

pub(crate) fn resultant_quartic_dd(coeffs: &[DoubleDouble; 5]) -> f64 {
    let lead = coeffs[4];
    let monic: Vec<DoubleDouble> = coeffs.iter().map(|&c| c / lead).collect();
    let deriv: Vec<DoubleDouble> = (1..5)
        .map(|i| monic[i] * DoubleDouble::from(i as f64))
        .collect();
    let size = 7;
    let mut rows = vec![vec![DoubleDouble::ZERO; size]; size];
    for r in 0..3 {
        for (j, &c) in monic.iter().rev().enumerate() {
            rows[r][r + j] = c;
        }
    }
    for r in 0..4 {
        for (j, &c) in deriv.iter().rev().enumerate() {
            rows[3 + r][r + j] = c;
        }
    }
    det_dd(rows).to_f64()
}

/// Plain `f64` determinant of a 4×4 pencil at one `λ`, used as a cross-check.
pub fn pencil_det(a: &Matrix4<f64>, b: &Matrix4<f64>, lambda: f64) -> f64 {
    (b - a * lambda).determinant()
}

/// Determinant of a 7×7 matrix in plain `f64` (LU with partial pivoting).
pub fn det7(rows: &[Vec<f64>]) -> f64 {
    SMatrix::<f64, 7, 7>::from_fn(|i, j| rows[i][j]).determinant()
}
