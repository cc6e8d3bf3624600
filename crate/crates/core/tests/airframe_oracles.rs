//! Closed-form oracles for the maneuver integrator.
//!
//! Straight flight is linear motion. A maneuver held at the bank limit turns
//! the heading by a fixed angle per inner step, so the trajectory is a
//! regular polygon inscribed in a circle: the vertex positions have an exact
//! closed form (a Dirichlet-kernel cosine sum), the circumradius is
//! `v·dt / (2·sin(α/2))` for per-step heading change α, and as dt shrinks
//! that radius converges to the continuous-turn radius `v² / (g·tan ζ)`.

use dogfight::airframe::{step_maneuver, AircraftParams, AircraftState, Maneuver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn table1_params() -> AircraftParams {
    AircraftParams::new(2.5, 45f64.to_radians(), 23f64.to_radians(), 0.05, 20, 9.81).unwrap()
}

/// Smallest signed difference between two angles (the stepper wraps heading
/// into (-pi, pi]; the closed forms accumulate it unbounded).
fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b) % std::f64::consts::TAU;
    if d > std::f64::consts::PI {
        d - std::f64::consts::TAU
    } else if d <= -std::f64::consts::PI {
        d + std::f64::consts::TAU
    } else {
        d
    }
}

/// Exact discrete steady-turn position after k inner steps at constant bank:
/// the heading advances by alpha per step and the position adds the chord
/// sum  v·dt·Σ_{j=1..k} e(θ0 + j·alpha), which collapses to the closed form
/// below.
fn chord_circle(
    x0: f64,
    y0: f64,
    theta0: f64,
    v: f64,
    dt: f64,
    alpha: f64,
    k: u32,
) -> (f64, f64, f64) {
    let kf = k as f64;
    let ratio = (kf * alpha / 2.0).sin() / (alpha / 2.0).sin();
    let phase = theta0 + (kf + 1.0) * alpha / 2.0;
    (
        x0 + v * dt * ratio * phase.cos(),
        y0 + v * dt * ratio * phase.sin(),
        theta0 + kf * alpha,
    )
}

#[test]
fn straight_flight_matches_linear_motion() {
    let p = table1_params();
    let mut rng = ChaCha12Rng::seed_from_u64(601);
    for _ in 0..500 {
        let x0 = rng.random_range(-10.0..10.0);
        let y0 = rng.random_range(-10.0..10.0);
        let theta0 = rng.random_range(-3.1..3.1);
        let maneuvers = rng.random_range(1..=5u32);
        let mut s = AircraftState::new(x0, y0, p.v, theta0, 0.0);
        for _ in 0..maneuvers {
            s = step_maneuver(&s, Maneuver::Straight, &p);
        }
        let t = maneuvers as f64 * p.n_s as f64 * p.dt;
        assert!((s.x - (x0 + p.v * t * theta0.cos())).abs() < 1e-12);
        assert!((s.y - (y0 + p.v * t * theta0.sin())).abs() < 1e-12);
        assert_eq!(s.theta, theta0);
        assert_eq!(s.zeta, 0.0);
    }
}

#[test]
fn steady_turn_matches_discrete_chord_circle() {
    let p = table1_params();
    let mut rng = ChaCha12Rng::seed_from_u64(602);
    for _ in 0..500 {
        let x0 = rng.random_range(-10.0..10.0);
        let y0 = rng.random_range(-10.0..10.0);
        let theta0 = rng.random_range(-3.2..3.2);
        let maneuvers = rng.random_range(1..=40u32);
        let turn_right = rng.random::<bool>();
        // start at the bank limit so the whole trajectory is a steady turn
        let (zeta, maneuver) = if turn_right {
            (p.zeta_max, Maneuver::Right)
        } else {
            (-p.zeta_max, Maneuver::Left)
        };
        let alpha = 9.81 / p.v * zeta.tan() * p.dt;
        let mut s = AircraftState::new(x0, y0, p.v, theta0, zeta);
        for m in 1..=maneuvers {
            s = step_maneuver(&s, maneuver, &p);
            let (ex, ey, eth) = chord_circle(x0, y0, theta0, p.v, p.dt, alpha, m * p.n_s);
            assert!((s.x - ex).abs() < 1e-6, "x diverged: {} vs {ex}", s.x);
            assert!((s.y - ey).abs() < 1e-6, "y diverged: {} vs {ey}", s.y);
            assert!(angle_gap(s.theta, eth).abs() < 1e-6, "theta diverged");
            assert_eq!(s.zeta, zeta, "bank must stay clamped");
        }
    }
}

#[test]
fn steady_turn_vertices_lie_on_the_circumcircle() {
    let p = table1_params();
    let alpha = 9.81 / p.v * p.zeta_max.tan() * p.dt;
    // signed circumradius; the center sits perpendicular-left of the first
    // chord direction for a positive-alpha (counterclockwise) turn
    let r = p.v * p.dt / (2.0 * (alpha / 2.0).sin());
    let (x0, y0, theta0) = (1.3, -0.4, 0.7);
    let beta = theta0 + alpha / 2.0 + std::f64::consts::FRAC_PI_2;
    let (cx, cy) = (x0 + r * beta.cos(), y0 + r * beta.sin());

    let mut s = AircraftState::new(x0, y0, p.v, theta0, p.zeta_max);
    for _ in 0..50 {
        s = step_maneuver(&s, Maneuver::Right, &p);
        let dist = ((s.x - cx).powi(2) + (s.y - cy).powi(2)).sqrt();
        assert!((dist - r.abs()).abs() < 1e-9, "vertex off the circumcircle: {dist} vs {r}");
    }
}

#[test]
fn discrete_turn_radius_converges_to_the_continuous_one() {
    let zeta_max = 23f64.to_radians();
    let v = 2.5;
    let continuous = v * v / (9.81 * zeta_max.tan());
    let discrete_radius = |dt: f64| {
        let alpha = 9.81 / v * zeta_max.tan() * dt;
        v * dt / (2.0 * (alpha / 2.0).sin())
    };
    // at the baseline 50 ms step the polygon bulges a few tenths of a mm
    let coarse = discrete_radius(0.05);
    assert!(coarse > continuous);
    assert!((coarse - continuous) > 1e-4 && (coarse - continuous) < 1e-3);
    // at 1 ms it is inside a micrometer of the continuous circle
    let fine = discrete_radius(0.001);
    assert!((fine - continuous).abs() < 1e-6);

    // and the integrator actually traces that fine-step circle: run one full
    // second of turning at dt = 1 ms and check the chord-circle match
    let p = AircraftParams::new(v, 45f64.to_radians(), zeta_max, 0.001, 1000, 9.81).unwrap();
    let alpha = 9.81 / v * zeta_max.tan() * 0.001;
    let s0 = AircraftState::new(0.0, 0.0, v, 0.0, zeta_max);
    let s1 = step_maneuver(&s0, Maneuver::Right, &p);
    let (ex, ey, _) = chord_circle(0.0, 0.0, 0.0, v, 0.001, alpha, 1000);
    assert!((s1.x - ex).abs() < 1e-9);
    assert!((s1.y - ey).abs() < 1e-9);
}

#[test]
fn inner_steps_compose_exactly() {
    // one maneuver with 20 inner steps is bitwise the same trajectory as 20
    // single-step maneuvers: the integrator has no per-call state
    let p20 = table1_params();
    let p1 = AircraftParams::new(2.5, 45f64.to_radians(), 23f64.to_radians(), 0.05, 1, 9.81)
        .unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(603);
    for _ in 0..100 {
        let s0 = AircraftState::new(
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            2.5,
            rng.random_range(-3.0..3.0),
            rng.random_range(-0.4..0.4),
        );
        for m in Maneuver::ALL {
            let whole = step_maneuver(&s0, m, &p20);
            let mut piecewise = s0;
            for _ in 0..20 {
                piecewise = step_maneuver(&piecewise, m, &p1);
            }
            assert_eq!(whole, piecewise);
        }
    }
}
