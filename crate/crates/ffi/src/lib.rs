//! C ABI over `sgn_whitham`.
//!
//! Every fallible function returns an [`SgnStatus`]. On failure the message is
//! kept per thread and can be copied out with [`sgn_last_error_message`].
//! Objects are opaque handles created by `*_new` functions and released with
//! the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sgn_whitham::error::Error;
use sgn_whitham::modulation::{assemble_ab, characteristic_eigenvalues, ModulationState};
use sgn_whitham::sgn::{
    diagnostics, init_wavetrain, SgnField, Solver, SolverConfig, WaveTrainConfig,
};
use sgn_whitham::traveling_wave::{CnoidalWave, MassFluxSign, RootTriple};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    SolverFailure = 4,
    Io = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

impl From<&Error> for SgnStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Io { .. } => SgnStatus::Io,
            other => match other.exit_code() {
                2 => SgnStatus::InvalidArgument,
                3 => SgnStatus::Degenerate,
                _ => SgnStatus::SolverFailure,
            },
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn guard<F: FnOnce() -> Result<(), SgnStatus>>(f: F) -> SgnStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgnStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            SgnStatus::Panic
        }
    }
}

fn fail(e: Error) -> SgnStatus {
    set_error(e.to_string());
    SgnStatus::from(&e)
}

fn null(what: &str) -> SgnStatus {
    set_error(format!("{what} is null"));
    SgnStatus::NullPointer
}

fn sign_of(sign: c_int) -> Result<MassFluxSign, SgnStatus> {
    MassFluxSign::from_i32(sign).map_err(fail)
}

/// Copy the last error message of this thread into `buf` (NUL terminated).
///
/// Returns the buffer size needed including the terminator; nothing is written
/// when `buf` is null or `len` is too small.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn sgn_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let needed = msg.len() + 1;
        if !buf.is_null() && len >= needed {
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), msg.len());
            *buf.add(msg.len()) = 0;
        }
        needed
    })
}

/// A cnoidal wave.
pub struct SgnWave {
    inner: CnoidalWave,
}

/// Constants and averages of a cnoidal wave.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SgnWaveSummary {
    pub wavelength: f64,
    pub phase_speed: f64,
    pub mean_velocity: f64,
    pub mass_flux: f64,
    pub i: f64,
    pub epsilon: f64,
    pub h_mean: f64,
    pub h_inv_mean: f64,
    pub k: f64,
    pub n: f64,
}

/// Characteristic speeds, sorted by real part.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SgnEigen {
    pub re: [f64; 4],
    pub im: [f64; 4],
    pub n_positive: u32,
    pub n_negative: u32,
    pub all_real: bool,
    pub distinct: bool,
    pub resultant: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SgnDiagnostics {
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
}

/// Wave with roots `h0 < h1 < h2` and zero mean velocity.
///
/// # Safety
/// `out` must be a valid pointer to a `SgnWave*`.
#[no_mangle]
pub unsafe extern "C" fn sgn_wave_new(
    h0: f64,
    h1: f64,
    h2: f64,
    g: f64,
    sign: c_int,
    out: *mut *mut SgnWave,
) -> SgnStatus {
    wave_new(h0, h1, h2, g, sign, None, out)
}

/// Wave with an explicit phase speed `D`.
///
/// # Safety
/// `out` must be a valid pointer to a `SgnWave*`.
#[no_mangle]
pub unsafe extern "C" fn sgn_wave_new_with_phase_speed(
    h0: f64,
    h1: f64,
    h2: f64,
    g: f64,
    sign: c_int,
    phase_speed: f64,
    out: *mut *mut SgnWave,
) -> SgnStatus {
    wave_new(h0, h1, h2, g, sign, Some(phase_speed), out)
}

unsafe fn wave_new(
    h0: f64,
    h1: f64,
    h2: f64,
    g: f64,
    sign: c_int,
    phase_speed: Option<f64>,
    out: *mut *mut SgnWave,
) -> SgnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let roots = RootTriple::new(h0, h1, h2).map_err(fail)?;
        let sign = sign_of(sign)?;
        let inner = match phase_speed {
            Some(d) => CnoidalWave::with_phase_speed(roots, g, sign, d),
            None => CnoidalWave::at_rest(roots, g, sign),
        }
        .map_err(fail)?;
        *out = Box::into_raw(Box::new(SgnWave { inner }));
        Ok(())
    })
}

/// # Safety
/// `wave` must be null or a handle from `sgn_wave_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sgn_wave_free(wave: *mut SgnWave) {
    if !wave.is_null() {
        drop(Box::from_raw(wave));
    }
}

/// # Safety
/// `wave` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgn_wave_summary(
    wave: *const SgnWave,
    out: *mut SgnWaveSummary,
) -> SgnStatus {
    guard(|| {
        let w = &wave.as_ref().ok_or_else(|| null("wave"))?.inner;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = SgnWaveSummary {
            wavelength: w.wavelength,
            phase_speed: w.phase_speed,
            mean_velocity: w.mean_velocity(),
            mass_flux: w.constants.m,
            i: w.constants.i,
            epsilon: w.constants.epsilon,
            h_mean: w.averages.h_mean,
            h_inv_mean: w.averages.h_inv_mean,
            k: w.k(),
            n: w.n(),
        };
        Ok(())
    })
}

/// Depth and velocity at `len` moving-frame positions `xi`; crest at `xi = 0`.
///
/// # Safety
/// `wave` must be a live handle; `xi`, `h`, `u` must each hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sgn_wave_profile(
    wave: *const SgnWave,
    xi: *const f64,
    h: *mut f64,
    u: *mut f64,
    len: usize,
) -> SgnStatus {
    guard(|| {
        let w = &wave.as_ref().ok_or_else(|| null("wave"))?.inner;
        if len == 0 {
            return Ok(());
        }
        if xi.is_null() || h.is_null() || u.is_null() {
            return Err(null("array argument"));
        }
        let xi = std::slice::from_raw_parts(xi, len);
        let h = std::slice::from_raw_parts_mut(h, len);
        let u = std::slice::from_raw_parts_mut(u, len);
        for j in 0..len {
            h[j] = w.profile(xi[j]);
            u[j] = w.velocity(h[j]);
        }
        Ok(())
    })
}

/// Characteristic speeds at mean velocity `mean_velocity`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgn_eigen(
    h0: f64,
    h1: f64,
    h2: f64,
    g: f64,
    sign: c_int,
    mean_velocity: f64,
    out: *mut SgnEigen,
) -> SgnStatus {
    eigen(
        h0,
        h1,
        h2,
        g,
        sign,
        |r, g, s| ModulationState::with_mean_velocity(mean_velocity, r, g, s),
        out,
    )
}

/// Characteristic speeds at phase speed `phase_speed`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgn_eigen_with_phase_speed(
    h0: f64,
    h1: f64,
    h2: f64,
    g: f64,
    sign: c_int,
    phase_speed: f64,
    out: *mut SgnEigen,
) -> SgnStatus {
    eigen(
        h0,
        h1,
        h2,
        g,
        sign,
        |r, g, s| ModulationState::new(phase_speed, r, g, s),
        out,
    )
}

unsafe fn eigen<F>(
    h0: f64,
    h1: f64,
    h2: f64,
    g: f64,
    sign: c_int,
    state: F,
    out: *mut SgnEigen,
) -> SgnStatus
where
    F: FnOnce(RootTriple, f64, MassFluxSign) -> sgn_whitham::Result<ModulationState>,
{
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let roots = RootTriple::new(h0, h1, h2).map_err(fail)?;
        let state = state(roots, g, sign_of(sign)?).map_err(fail)?;
        let e = assemble_ab(&state)
            .and_then(|s| characteristic_eigenvalues(&s))
            .map_err(fail)?;
        *out = SgnEigen {
            re: e.roots.map(|z| z.re),
            im: e.roots.map(|z| z.im),
            n_positive: e.n_positive as u32,
            n_negative: e.n_negative as u32,
            all_real: e.all_real,
            distinct: e.distinct,
            resultant: e.resultant,
        };
        Ok(())
    })
}

/// An SGN solver owning its field.
pub struct SgnSolver {
    inner: Solver,
}

fn solver_config(cfl: f64) -> SolverConfig {
    SolverConfig {
        cfl,
        ..SolverConfig::default()
    }
}

/// Solver on a periodic grid of `len` cells with depth `h` and momentum `q`.
///
/// # Safety
/// `h` and `q` must hold `len` doubles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_new(
    h: *const f64,
    q: *const f64,
    len: usize,
    dx: f64,
    g: f64,
    cfl: f64,
    out: *mut *mut SgnSolver,
) -> SgnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if h.is_null() || q.is_null() {
            return Err(null("array argument"));
        }
        let h = std::slice::from_raw_parts(h, len).to_vec();
        let q = std::slice::from_raw_parts(q, len).to_vec();
        let field = SgnField::new(h, q, dx, g).map_err(fail)?;
        let inner = Solver::new(field, solver_config(cfl)).map_err(fail)?;
        *out = Box::into_raw(Box::new(SgnSolver { inner }));
        Ok(())
    })
}

/// Solver initialised with a perturbed wave train at zero mean velocity.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_new_wavetrain(
    h0: f64,
    h1: f64,
    h2: f64,
    g: f64,
    sign: c_int,
    n_waves: usize,
    amplitude: f64,
    cells_per_wavelength: usize,
    cfl: f64,
    out: *mut *mut SgnSolver,
) -> SgnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let config = WaveTrainConfig {
            roots: RootTriple::new(h0, h1, h2).map_err(fail)?,
            g,
            sign: sign_of(sign)?,
            n_waves,
            amplitude,
            cells_per_wavelength,
        };
        let (field, _) = init_wavetrain(&config).map_err(fail)?;
        let inner = Solver::new(field, solver_config(cfl)).map_err(fail)?;
        *out = Box::into_raw(Box::new(SgnSolver { inner }));
        Ok(())
    })
}

/// # Safety
/// `solver` must be null or a handle from `sgn_solver_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_free(solver: *mut SgnSolver) {
    if !solver.is_null() {
        drop(Box::from_raw(solver));
    }
}

/// One CFL-limited step; the step size goes to `dt` when it is not null.
///
/// # Safety
/// `solver` must be a live handle; `dt` null or valid.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_step(solver: *mut SgnSolver, dt: *mut f64) -> SgnStatus {
    guard(|| {
        let s = &mut solver.as_mut().ok_or_else(|| null("solver"))?.inner;
        let step = s.step().map_err(fail)?;
        if let Some(dt) = dt.as_mut() {
            *dt = step;
        }
        Ok(())
    })
}

/// Integrate up to time `t`, landing on it exactly.
///
/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_advance_to(solver: *mut SgnSolver, t: f64) -> SgnStatus {
    guard(|| {
        let s = &mut solver.as_mut().ok_or_else(|| null("solver"))?.inner;
        if !t.is_finite() {
            set_error("target time must be finite");
            return Err(SgnStatus::InvalidArgument);
        }
        s.advance_to(t).map_err(fail)
    })
}

/// Current time, or NaN for a null handle.
///
/// # Safety
/// `solver` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_time(solver: *const SgnSolver) -> f64 {
    solver.as_ref().map_or(f64::NAN, |s| s.inner.time())
}

/// Number of cells, or 0 for a null handle.
///
/// # Safety
/// `solver` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_len(solver: *const SgnSolver) -> usize {
    solver.as_ref().map_or(0, |s| s.inner.field().n_cells())
}

/// Copy depth and momentum into caller buffers of `len` doubles.
///
/// # Safety
/// `solver` must be a live handle; `h` and `q` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_copy_fields(
    solver: *const SgnSolver,
    h: *mut f64,
    q: *mut f64,
    len: usize,
) -> SgnStatus {
    guard(|| {
        let f = solver.as_ref().ok_or_else(|| null("solver"))?.inner.field();
        if len < f.n_cells() {
            set_error(format!("buffers hold {len} values, need {}", f.n_cells()));
            return Err(SgnStatus::BufferTooSmall);
        }
        if h.is_null() || q.is_null() {
            return Err(null("array argument"));
        }
        ptr::copy_nonoverlapping(f.h.as_ptr(), h, f.n_cells());
        ptr::copy_nonoverlapping(f.q.as_ptr(), q, f.n_cells());
        Ok(())
    })
}

/// # Safety
/// `solver` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgn_solver_diagnostics(
    solver: *const SgnSolver,
    out: *mut SgnDiagnostics,
) -> SgnStatus {
    guard(|| {
        let f = solver.as_ref().ok_or_else(|| null("solver"))?.inner.field();
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let d = diagnostics(f);
        *out = SgnDiagnostics {
            mass: d.mass,
            momentum: d.momentum,
            energy: d.energy,
        };
        Ok(())
    })
}
