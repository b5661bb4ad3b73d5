//! Time-evolution experiments: moment trajectories, revival traces,
//! ballistic velocity estimates, and continued-fraction field studies.

use crate::coin::SU2Coin;
use crate::field::RationalField;
use crate::floquet::revival_defect;
use crate::state::WaveFunction;
use crate::walk::{WalkKind, WalkSpec};
use num_complex::Complex64 as C64;
use serde::Serialize;

/// One record of an evolution trace.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrajectoryPoint {
    pub t: u64,
    pub mean: f64,
    pub sigma: f64,
    /// || psi_t - phase^{t/p} psi_0 || at multiples of the revival period.
    pub revival_error: Option<f64>,
    /// || psi_t - phase * psi_{t-p} ||, the error committed in the latest
    /// revival (bounded by the operator defect for every state).
    pub period_revival_error: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn sigmas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.sigma).collect()
    }
}

/// Evolve `t = 0..=steps` and record position moments; when a revival
/// period p and per-period phase are given, multiples of p additionally
/// record both revival errors.
pub fn evolve_trace(
    spec: &WalkSpec,
    psi0: &WaveFunction,
    steps: u64,
    revival_period: Option<u64>,
    revival_phase: Option<C64>,
) -> Trajectory {
    let phase = revival_phase.unwrap_or(C64::new(1.0, 0.0));
    let mut points = Vec::with_capacity(steps as usize + 1);
    let mut psi = psi0.clone();
    let mut scratch = psi0.clone();
    let mut at_last_revival = psi0.clone();
    let mut accumulated_phase = C64::new(1.0, 0.0);
    let m0 = psi.position_moments();
    points.push(TrajectoryPoint {
        t: 0,
        mean: m0.mean,
        sigma: m0.sigma,
        revival_error: None,
        period_revival_error: None,
    });
    for t in 1..=steps {
        spec.step_into(&psi, &mut scratch);
        std::mem::swap(&mut psi, &mut scratch);
        psi.trim_flush(crate::state::AMPLITUDE_FLOOR);
        let m = psi.position_moments();
        let (mut rev, mut prev) = (None, None);
        if let Some(p) = revival_period.filter(|&p| p > 0 && t % p == 0) {
            let _ = p;
            accumulated_phase *= phase;
            rev = Some(psi.distance_to_scaled(psi0, accumulated_phase));
            prev = Some(psi.distance_to_scaled(&at_last_revival, phase));
            at_last_revival = psi.clone();
        }
        points.push(TrajectoryPoint {
            t,
            mean: m.mean,
            sigma: m.sigma,
            revival_error: rev,
            period_revival_error: prev,
        });
    }
    Trajectory { points }
}

/// Ballistic-scaled position norm ||Q psi_t|| / t for t = 1..=steps. Values
/// stay <= 1 + r0/t where r0 is the initial support radius (the walks move
/// one cell per step); for a state started at the origin they are <= 1.
pub fn velocity_estimate(spec: &WalkSpec, psi0: &WaveFunction, steps: u64) -> Vec<(u64, f64)> {
    let mut out = Vec::with_capacity(steps as usize);
    let mut psi = psi0.clone();
    let mut scratch = psi0.clone();
    for t in 1..=steps {
        spec.step_into(&psi, &mut scratch);
        std::mem::swap(&mut psi, &mut scratch);
        psi.trim_flush(crate::state::AMPLITUDE_FLOOR);
        let m = psi.position_moments();
        out.push((t, m.second_moment.sqrt() / t as f64));
    }
    out
}

/// Simple continued fraction of p/q with the Euclidean convention (the last
/// partial quotient exceeds 1 whenever the expansion has more than one
/// term), plus the convergent ladder in exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub quotients: Vec<i64>,
    /// Convergents p_k/q_k, ending in the input fraction in lowest terms.
    pub convergents: Vec<(i64, i64)>,
}

pub fn continued_fraction(p: i64, q: i64) -> ContinuedFraction {
    assert!(q >= 1, "denominator must be positive");
    let mut quotients = Vec::new();
    let (mut num, mut den) = (p, q);
    while den != 0 {
        let a = num.div_euclid(den);
        quotients.push(a);
        let r = num.rem_euclid(den);
        num = den;
        den = r;
    }
    let mut convergents = Vec::with_capacity(quotients.len());
    let (mut p_prev, mut q_prev) = (1i64, 0i64);
    let (mut p_cur, mut q_cur) = (quotients[0], 1i64);
    convergents.push((p_cur, q_cur));
    for &a in &quotients[1..] {
        let p_next = a * p_cur + p_prev;
        let q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        convergents.push((p_cur, q_cur));
    }
    ContinuedFraction { quotients, convergents }
}

/// One CSV row of the field-comparison dataset.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetRow {
    pub label: String,
    pub t: u64,
    pub mean: f64,
    pub sigma: f64,
    pub revival_error: Option<f64>,
}

/// sigma(t) traces for both walk families across a list of fields, with the
/// revival error against the initial state recorded at revival multiples.
pub fn field_comparison_dataset(
    coin: SU2Coin,
    fields: &[RationalField],
    psi0: &WaveFunction,
    steps: u64,
) -> Vec<DatasetRow> {
    let mut rows = Vec::new();
    for &field in fields {
        for kind in [WalkKind::ShiftCoin, WalkKind::SplitStep] {
            let spec = WalkSpec::electric(kind, coin, field);
            let report = revival_defect(kind, coin, field);
            let traj = evolve_trace(
                &spec,
                psi0,
                steps,
                Some(report.period as u64),
                Some(C64::new(report.phase, 0.0)),
            );
            let label = format!(
                "{}_{}",
                match kind {
                    WalkKind::ShiftCoin => "U",
                    WalkKind::SplitStep => "W",
                },
                field
            );
            for p in &traj.points {
                rows.push(DatasetRow {
                    label: label.clone(),
                    t: p.t,
                    mean: p.mean,
                    sigma: p.sigma,
                    revival_error: p.revival_error,
                });
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{CoinSequence, UnitaryCoin};
    use crate::state::Spin;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spinor_state() -> WaveFunction {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        WaveFunction::localized(0, [c(s, 0.0), c(0.0, s)])
    }

    #[test]
    fn pure_shift_trace() {
        // identity-coin split-step walk from delta_0^+: mean t, sigma 0
        let id = CoinSequence::constant(UnitaryCoin::identity());
        let w = WalkSpec::split_step(id.clone(), id);
        let traj = evolve_trace(&w, &WaveFunction::basis(0, Spin::Plus), 20, None, None);
        for p in &traj.points {
            assert!((p.mean - p.t as f64).abs() < 1e-12);
            assert!(p.sigma.abs() < 1e-9);
        }
        // and the ballistic estimate is identically 1
        let est = velocity_estimate(&w, &WaveFunction::basis(0, Spin::Plus), 20);
        for (_, v) in est {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reflecting_coin_stays_put() {
        let coin = SU2Coin::reflecting();
        let u = WalkSpec::electric_shift_coin(coin, RationalField::plain(0, 1).unwrap());
        let traj = evolve_trace(&u, &spinor_state(), 50, None, None);
        for p in &traj.points {
            assert!(p.sigma <= 1.0 + 1e-12);
        }
        let est = velocity_estimate(&u, &spinor_state(), 50);
        let (t, v) = est[est.len() - 1];
        assert_eq!(t, 50);
        assert!(v <= 1.0 / 50.0 + 1e-12);
    }

    #[test]
    fn norm_conserved_long_run() {
        let coin = SU2Coin::hadamard();
        let field = RationalField::tilde(1, 5).unwrap();
        let spec = WalkSpec::electric_split_step(coin, field);
        let psi = spec.evolve(&spinor_state(), 10_000);
        assert!((psi.norm() - 1.0).abs() <= 1e-11);
    }

    #[test]
    fn statewise_revival_bound_random_states() {
        // || W_Phi^m psi - (-1)^m psi || <= 2|a|^m + eps for every state,
        // both parities of n
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for (n, m) in [(1i64, 5i64), (2, 5), (1, 4), (2, 3)] {
            let coin = SU2Coin::hadamard();
            let field = RationalField::tilde(n, m).unwrap();
            let spec = WalkSpec::electric_split_step(coin, field);
            let report = revival_defect(WalkKind::SplitStep, coin, field);
            let bound = report.closed_form;
            for _ in 0..5 {
                let len = rng.gen_range(1..6);
                let amps: Vec<[C64; 2]> = (0..len)
                    .map(|_| {
                        [
                            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                        ]
                    })
                    .collect();
                let mut psi0 = WaveFunction::new(rng.gen_range(-5..5), amps);
                let nn = psi0.norm();
                psi0.scale(c(1.0 / nn, 0.0));
                let mut psi = psi0.clone();
                for _ in 0..m {
                    psi = spec.step(&psi);
                }
                let err = psi.distance_to_scaled(&psi0, c(report.phase, 0.0));
                assert!(
                    err <= bound + 1e-10,
                    "n={n} m={m}: statewise error {err} > bound {bound}"
                );
            }
        }
    }

    #[test]
    fn hadamard_revival_error_at_first_period() {
        // split-step, n=1, m=5: the t=5 error against psi_0 is within the
        // operator bound, with per-period phase -1
        let coin = SU2Coin::hadamard();
        let field = RationalField::tilde(1, 5).unwrap();
        let spec = WalkSpec::electric_split_step(coin, field);
        let report = revival_defect(WalkKind::SplitStep, coin, field);
        assert_eq!(report.phase, -1.0);
        let traj = evolve_trace(&spec, &spinor_state(), 10, Some(5), Some(c(-1.0, 0.0)));
        let bound = 2.0 * std::f64::consts::FRAC_1_SQRT_2.powi(5);
        let e5 = traj.points[5].revival_error.unwrap();
        assert!(e5 <= bound + 1e-10, "t=5 error {e5} > {bound}");
        // measured value is ~0.25 for this state
        assert!((e5 - 0.25).abs() < 1e-12);
        // the per-period error is constant in t by unitarity
        let p5 = traj.points[5].period_revival_error.unwrap();
        let p10 = traj.points[10].period_revival_error.unwrap();
        assert!((p5 - p10).abs() < 1e-12);
        assert!(p10 <= bound + 1e-10);

        // shift-coin revives at 2m = 10 with phase -1
        let ufield = RationalField::plain(1, 5).unwrap();
        let uspec = WalkSpec::electric_shift_coin(coin, ufield);
        let ureport = revival_defect(WalkKind::ShiftCoin, coin, ufield);
        assert_eq!((ureport.period, ureport.phase), (10, -1.0));
        let traj = evolve_trace(&uspec, &spinor_state(), 10, Some(10), Some(c(-1.0, 0.0)));
        let e10 = traj.points[10].revival_error.unwrap();
        assert!(e10 <= bound + 1e-10);
    }

    #[test]
    fn light_cone_and_velocity_band() {
        // split-step Hadamard at field 1/3: the ballistic estimate stays
        // within the loose finite-time band around |a|^3
        let coin = SU2Coin::hadamard();
        let field = RationalField::tilde(1, 3).unwrap();
        let spec = WalkSpec::electric_split_step(coin, field);
        let est = velocity_estimate(&spec, &spinor_state(), 300);
        for &(_, v) in &est {
            assert!(v <= 1.0 + 1e-12);
        }
        let v_final = est.last().unwrap().1;
        let v_closed = std::f64::consts::FRAC_1_SQRT_2.powi(3);
        assert!(v_final <= v_closed + 0.2, "final estimate {v_final}");
    }

    #[test]
    fn continued_fraction_examples() {
        let cf = continued_fraction(21, 106);
        assert_eq!(cf.quotients, vec![0, 5, 21]);
        assert_eq!(cf.convergents, vec![(0, 1), (1, 5), (21, 106)]);

        let cf = continued_fraction(1, 5);
        assert_eq!(cf.quotients, vec![0, 5]);
        assert_eq!(cf.convergents, vec![(0, 1), (1, 5)]);

        let cf = continued_fraction(3, 7);
        assert_eq!(cf.quotients, vec![0, 2, 3]);
        assert_eq!(cf.convergents, vec![(0, 1), (1, 2), (3, 7)]);
    }

    #[test]
    fn continued_fraction_roundtrip_and_negative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let p = rng.gen_range(-500..500i64);
            let q = rng.gen_range(1..500i64);
            let cf = continued_fraction(p, q);
            let (cp, cq) = *cf.convergents.last().unwrap();
            // last convergent reproduces the input exactly, in lowest terms
            assert_eq!(cp * q, p * cq, "{p}/{q} -> {cp}/{cq}");
            assert!(cq >= 1);
            assert_eq!(num_integer::gcd(cp.abs(), cq), 1);
            // Euclid's convention: the trailing quotient exceeds 1 whenever
            // the expansion has more than one term
            if cf.quotients.len() > 1 {
                assert!(*cf.quotients.last().unwrap() >= 2);
            }
        }
    }

    #[test]
    fn dataset_labels_and_shape() {
        let coin = SU2Coin::hadamard();
        let fields = [RationalField::plain(1, 5).unwrap()];
        let rows = field_comparison_dataset(coin, &fields, &spinor_state(), 10);
        assert_eq!(rows.len(), 2 * 11);
        assert!(rows.iter().any(|r| r.label == "U_1/5"));
        assert!(rows.iter().any(|r| r.label == "W_1/5"));
        // W revives every 5 steps: revival_error present at t = 5 and 10
        let w5 = rows
            .iter()
            .find(|r| r.label == "W_1/5" && r.t == 5)
            .unwrap();
        assert!(w5.revival_error.is_some());
    }
}
