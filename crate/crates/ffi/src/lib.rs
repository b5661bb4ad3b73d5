//! C ABI for the quantum-walk toolkit: plain-data reports for the spectral
//! quantities, an opaque simulator handle for time evolution, and integer
//! status codes. Every entry point is panic-safe (panics surface as
//! `EWALK_STATUS_INTERNAL`).

use ewalk::dynamics;
use ewalk::floquet;
use ewalk::sieve;
use ewalk::{RationalField, SU2Coin, WalkKind, WalkSpec, WaveFunction};
use num_complex::Complex64 as C64;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EwalkStatus {
    Ok = 0,
    /// A pointer argument was null.
    NullPointer = 1,
    /// Arguments violate a precondition (bad fraction, |a| > 1, ...).
    InvalidArgument = 2,
    /// Ring size incompatible with the field period.
    IncompatibleRing = 3,
    /// The operator has no Verblunsky representation.
    NotRepresentable = 4,
    /// Unexpected internal failure.
    Internal = 5,
}

/// Walk family selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EwalkKind {
    /// Shift-coin walk U = S C.
    ShiftCoin = 0,
    /// Split-step walk W = S+ C S- C.
    SplitStep = 1,
}

impl From<EwalkKind> for WalkKind {
    fn from(k: EwalkKind) -> Self {
        match k {
            EwalkKind::ShiftCoin => WalkKind::ShiftCoin,
            EwalkKind::SplitStep => WalkKind::SplitStep,
        }
    }
}

/// Maximal-velocity report: closed form |a|^exponent, the independent
/// numeric maximization, and the historical (4|a|)^m bound.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EwalkVelocity {
    pub closed_form: f64,
    pub numeric: f64,
    pub legacy_bound: f64,
    pub exponent: i64,
}

/// Revival report: sup-defect, its closed form 2|a|^m resp. 2|a|^{m/2},
/// the identity unit lambda, the per-period phase (-lambda), and the
/// revival period in steps.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EwalkRevival {
    pub numeric: f64,
    pub closed_form: f64,
    pub lambda: f64,
    pub phase: f64,
    pub period: i64,
}

/// Closed arc on the unit circle (angles in radians, start <= end).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EwalkBandArc {
    pub start: f64,
    pub end: f64,
    pub multiplicity: u32,
}

fn coin_from_raw(a_re: f64, a_im: f64, b_re: f64, b_im: f64) -> Result<SU2Coin, EwalkStatus> {
    SU2Coin::new(C64::new(a_re, a_im), C64::new(b_re, b_im))
        .map_err(|_| EwalkStatus::InvalidArgument)
}

fn field_from_raw(num: i64, den: i64) -> Result<RationalField, EwalkStatus> {
    RationalField::plain(num, den).map_err(|_| EwalkStatus::InvalidArgument)
}

fn guarded(f: impl FnOnce() -> EwalkStatus) -> EwalkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(EwalkStatus::Internal)
}

/// Maximal group velocity of the electric walk `kind` with coin (a, b)
/// (normalized internally) and field num/den in units of 2*pi.
///
/// # Safety
/// `out` must point to a writable `EwalkVelocity`.
#[no_mangle]
pub unsafe extern "C" fn ewalk_velocity(
    kind: EwalkKind,
    a_re: f64,
    a_im: f64,
    b_re: f64,
    b_im: f64,
    num: i64,
    den: i64,
    out: *mut EwalkVelocity,
) -> EwalkStatus {
    if out.is_null() {
        return EwalkStatus::NullPointer;
    }
    guarded(|| {
        let (coin, field) = match (coin_from_raw(a_re, a_im, b_re, b_im), field_from_raw(num, den))
        {
            (Ok(c), Ok(f)) => (c, f),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let r = floquet::max_velocity(kind.into(), coin, field);
        unsafe {
            *out = EwalkVelocity {
                closed_form: r.closed_form,
                numeric: r.numeric,
                legacy_bound: r.legacy_bound,
                exponent: r.exponent,
            };
        }
        EwalkStatus::Ok
    })
}

/// Revival defect of the electric walk.
///
/// # Safety
/// `out` must point to a writable `EwalkRevival`.
#[no_mangle]
pub unsafe extern "C" fn ewalk_revival(
    kind: EwalkKind,
    a_re: f64,
    a_im: f64,
    b_re: f64,
    b_im: f64,
    num: i64,
    den: i64,
    out: *mut EwalkRevival,
) -> EwalkStatus {
    if out.is_null() {
        return EwalkStatus::NullPointer;
    }
    guarded(|| {
        let (coin, field) = match (coin_from_raw(a_re, a_im, b_re, b_im), field_from_raw(num, den))
        {
            (Ok(c), Ok(f)) => (c, f),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        let r = floquet::revival_defect(kind.into(), coin, field);
        unsafe {
            *out = EwalkRevival {
                numeric: r.numeric,
                closed_form: r.closed_form,
                lambda: r.lambda,
                phase: r.phase,
                period: r.period,
            };
        }
        EwalkStatus::Ok
    })
}

/// Spectral bands of the electric walk. Writes up to `capacity` arcs into
/// `arcs` and always stores the true arc count in `out_len`; call with
/// `capacity` 0 (and `arcs` possibly null) to query the count first.
///
/// # Safety
/// `arcs` must point to `capacity` writable `EwalkBandArc`s (may be null
/// when `capacity` is 0); `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ewalk_spectrum_bands(
    kind: EwalkKind,
    a_re: f64,
    a_im: f64,
    b_re: f64,
    b_im: f64,
    num: i64,
    den: i64,
    theta_samples: usize,
    arcs: *mut EwalkBandArc,
    capacity: usize,
    out_len: *mut usize,
) -> EwalkStatus {
    if out_len.is_null() || (arcs.is_null() && capacity > 0) {
        return EwalkStatus::NullPointer;
    }
    guarded(|| {
        let (coin, field) = match (coin_from_raw(a_re, a_im, b_re, b_im), field_from_raw(num, den))
        {
            (Ok(c), Ok(f)) => (c, f),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        if theta_samples < 64 {
            return EwalkStatus::InvalidArgument;
        }
        let bands = floquet::spectrum_bands(kind.into(), coin, field, theta_samples);
        let all = bands.arcs();
        unsafe {
            *out_len = all.len();
            for (i, arc) in all.iter().take(capacity).enumerate() {
                *arcs.add(i) = EwalkBandArc {
                    start: arc.start,
                    end: arc.end,
                    multiplicity: arc.multiplicity,
                };
            }
        }
        EwalkStatus::Ok
    })
}

/// Entrywise defect of the electric sieving identity on a ring of `cells`
/// cells (must be a positive multiple of 2*den).
///
/// # Safety
/// `out_defect` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ewalk_electric_sieve_defect(
    a_re: f64,
    a_im: f64,
    b_re: f64,
    b_im: f64,
    num: i64,
    den: i64,
    cells: usize,
    out_defect: *mut f64,
) -> EwalkStatus {
    if out_defect.is_null() {
        return EwalkStatus::NullPointer;
    }
    guarded(|| {
        let (coin, field) = match (coin_from_raw(a_re, a_im, b_re, b_im), field_from_raw(num, den))
        {
            (Ok(c), Ok(f)) => (c, f),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        match sieve::electric_sieve_check(coin, field, cells) {
            Ok(d) => {
                unsafe { *out_defect = d };
                EwalkStatus::Ok
            }
            Err(ewalk::Error::IncompatibleRing { .. }) => EwalkStatus::IncompatibleRing,
            Err(_) => EwalkStatus::Internal,
        }
    })
}

/// Continued fraction of p/q: writes up to `capacity` partial quotients and
/// stores the true count in `out_len`.
///
/// # Safety
/// `quotients` must point to `capacity` writable i64 (may be null when
/// `capacity` is 0); `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ewalk_continued_fraction(
    p: i64,
    q: i64,
    quotients: *mut i64,
    capacity: usize,
    out_len: *mut usize,
) -> EwalkStatus {
    if out_len.is_null() || (quotients.is_null() && capacity > 0) {
        return EwalkStatus::NullPointer;
    }
    if q < 1 {
        return EwalkStatus::InvalidArgument;
    }
    guarded(|| {
        let cf = dynamics::continued_fraction(p, q);
        unsafe {
            *out_len = cf.quotients.len();
            for (i, &a) in cf.quotients.iter().take(capacity).enumerate() {
                *quotients.add(i) = a;
            }
        }
        EwalkStatus::Ok
    })
}

/// Opaque time-evolution handle. Create with `ewalk_sim_new`, advance with
/// `ewalk_sim_step`, read observables with `ewalk_sim_moments` /
/// `ewalk_sim_revival_error`, release with `ewalk_sim_free`.
pub struct EwalkSimulator {
    spec: WalkSpec,
    psi0: WaveFunction,
    psi: WaveFunction,
    scratch: WaveFunction,
    t: u64,
}

/// New simulator for the electric walk `kind`, started from the normalized
/// spinor (up, down) at the origin. Returns null on invalid arguments.
#[no_mangle]
pub extern "C" fn ewalk_sim_new(
    kind: EwalkKind,
    a_re: f64,
    a_im: f64,
    b_re: f64,
    b_im: f64,
    num: i64,
    den: i64,
    up_re: f64,
    up_im: f64,
    down_re: f64,
    down_im: f64,
) -> *mut EwalkSimulator {
    let built = catch_unwind(|| {
        let coin = coin_from_raw(a_re, a_im, b_re, b_im).ok()?;
        let field = field_from_raw(num, den).ok()?;
        let up = C64::new(up_re, up_im);
        let down = C64::new(down_re, down_im);
        if (up.norm_sqr() + down.norm_sqr()) < 1e-14 {
            return None;
        }
        let psi0 = WaveFunction::localized(0, [up, down]);
        let spec = WalkSpec::electric(kind.into(), coin, field);
        Some(EwalkSimulator {
            spec,
            psi: psi0.clone(),
            scratch: psi0.clone(),
            psi0,
            t: 0,
        })
    });
    match built {
        Ok(Some(sim)) => Box::into_raw(Box::new(sim)),
        _ => std::ptr::null_mut(),
    }
}

/// Advance the simulator by `steps` time steps.
///
/// # Safety
/// `sim` must be a live pointer from `ewalk_sim_new`.
#[no_mangle]
pub unsafe extern "C" fn ewalk_sim_step(sim: *mut EwalkSimulator, steps: u64) -> EwalkStatus {
    if sim.is_null() {
        return EwalkStatus::NullPointer;
    }
    let sim = unsafe { &mut *sim };
    guarded(|| {
        for _ in 0..steps {
            sim.spec.step_into(&sim.psi, &mut sim.scratch);
            std::mem::swap(&mut sim.psi, &mut sim.scratch);
            sim.psi.trim_flush(ewalk::state::AMPLITUDE_FLOOR);
            sim.t += 1;
        }
        EwalkStatus::Ok
    })
}

/// Current step count.
///
/// # Safety
/// `sim` must be a live pointer from `ewalk_sim_new`.
#[no_mangle]
pub unsafe extern "C" fn ewalk_sim_time(sim: *const EwalkSimulator) -> u64 {
    if sim.is_null() {
        return 0;
    }
    unsafe { (*sim).t }
}

/// Position mean and standard deviation of the current state.
///
/// # Safety
/// `sim` must be live; `out_mean` and `out_sigma` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ewalk_sim_moments(
    sim: *const EwalkSimulator,
    out_mean: *mut f64,
    out_sigma: *mut f64,
) -> EwalkStatus {
    if sim.is_null() || out_mean.is_null() || out_sigma.is_null() {
        return EwalkStatus::NullPointer;
    }
    let sim = unsafe { &*sim };
    guarded(|| {
        let m = sim.psi.position_moments();
        unsafe {
            *out_mean = m.mean;
            *out_sigma = m.sigma;
        }
        EwalkStatus::Ok
    })
}

/// || psi_t - phase * psi_0 || against the initial state.
///
/// # Safety
/// `sim` must be live; `out_error` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ewalk_sim_revival_error(
    sim: *const EwalkSimulator,
    phase_re: f64,
    phase_im: f64,
    out_error: *mut f64,
) -> EwalkStatus {
    if sim.is_null() || out_error.is_null() {
        return EwalkStatus::NullPointer;
    }
    let sim = unsafe { &*sim };
    guarded(|| {
        let e = sim
            .psi
            .distance_to_scaled(&sim.psi0, C64::new(phase_re, phase_im));
        unsafe { *out_error = e };
        EwalkStatus::Ok
    })
}

/// Release a simulator. Passing null is a no-op.
///
/// # Safety
/// `sim` must be null or a pointer from `ewalk_sim_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ewalk_sim_free(sim: *mut EwalkSimulator) {
    if !sim.is_null() {
        drop(unsafe { Box::from_raw(sim) });
    }
}
