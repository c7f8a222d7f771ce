//! The two parameter schedules: one driven by a target accuracy alone, one
//! tuned with the problem constants for a fixed horizon.

use crate::error::{Error, Result};
use crate::problem::{ProblemConstants, SolverParams};

/// `eta = eps`, `alpha = beta = 1/eps`, `T = ceil(1/eps^2)`, `delta = 0`.
pub fn configure_parsel1(epsilon: f64) -> Result<SolverParams> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::NonPositiveEpsilon(epsilon));
    }
    let raw = 1.0 / (epsilon * epsilon);
    // 1/0.1^2 evaluates to 99.999..., which should still be T = 100.
    let nearest = raw.round();
    let horizon = if (raw - nearest).abs() <= 1e-9 * raw {
        nearest
    } else {
        raw.ceil()
    };
    SolverParams::new(
        (horizon as usize).max(1),
        epsilon,
        1.0 / epsilon,
        1.0 / epsilon,
        0.0,
    )
}

/// `alpha = L sqrt(T) / D`, `eta = L / sqrt(T (D^2 + 2 delta))`,
/// `beta = sqrt(T) / (G D)`. Without functional constraints `beta` is set
/// to 1; every term it multiplies carries a factor of `G = 0`.
pub fn configure_parsel2(horizon: usize, c: &ProblemConstants) -> Result<SolverParams> {
    c.validate()?;
    if horizon == 0 {
        return Err(Error::InvalidParams("T must be at least 1".into()));
    }
    if c.lipschitz == 0.0 || c.diameter == 0.0 {
        return Err(Error::DegenerateConstants(format!(
            "the tuned schedule needs L > 0 and D > 0 (L = {}, D = {})",
            c.lipschitz, c.diameter
        )));
    }
    let t = horizon as f64;
    let (l, d, g) = (c.lipschitz, c.diameter, c.constraint_bound);
    let beta = if c.num_constraints == 0 {
        1.0
    } else if g > 0.0 {
        t.sqrt() / (g * d)
    } else {
        return Err(Error::DegenerateConstants(
            "G = 0 with functional constraints present".into(),
        ));
    };
    SolverParams::new(
        horizon,
        l / (t * (d * d + 2.0 * c.delta)).sqrt(),
        l * t.sqrt() / d,
        beta,
        c.delta,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn parsel1_examples() {
        let p = configure_parsel1(0.1).unwrap();
        assert_eq!(p.horizon, 100);
        assert!(close(p.eta, 0.1) && close(p.alpha, 10.0) && close(p.beta, 10.0));
        let p = configure_parsel1(1.0).unwrap();
        assert_eq!((p.horizon, p.eta, p.alpha, p.beta), (1, 1.0, 1.0, 1.0));
        assert_eq!(configure_parsel1(0.05).unwrap().horizon, 400);
        assert_eq!(configure_parsel1(0.3).unwrap().horizon, 12);
        assert_eq!(configure_parsel1(0.0), Err(Error::NonPositiveEpsilon(0.0)));
        assert!(configure_parsel1(-1.0).is_err());
    }

    fn consts(l: f64, g: f64, d: f64, m: usize) -> ProblemConstants {
        ProblemConstants {
            lipschitz: l,
            constraint_bound: g,
            diameter: d,
            num_constraints: m,
            delta: 0.0,
        }
    }

    #[test]
    fn parsel2_examples() {
        let p = configure_parsel2(100, &consts(1.0, 1.0, 1.0, 1)).unwrap();
        assert!(close(p.alpha, 10.0) && close(p.eta, 0.1) && close(p.beta, 10.0));
        let p = configure_parsel2(4, &consts(2.0, 1.0, 2.0, 1)).unwrap();
        assert!(close(p.alpha, 2.0) && close(p.eta, 0.5) && close(p.beta, 1.0));
        let p = configure_parsel2(100, &consts(1.0, 0.0, 1.0, 0)).unwrap();
        assert_eq!(p.beta, 1.0);
    }

    #[test]
    fn parsel2_degenerate() {
        assert!(matches!(
            configure_parsel2(10, &consts(0.0, 1.0, 1.0, 1)),
            Err(Error::DegenerateConstants(_))
        ));
        assert!(matches!(
            configure_parsel2(10, &consts(1.0, 1.0, 0.0, 1)),
            Err(Error::DegenerateConstants(_))
        ));
        assert!(configure_parsel2(10, &consts(1.0, 0.0, 1.0, 2)).is_err());
    }

    #[test]
    fn parsel2_uses_delta_in_eta() {
        let mut c = consts(1.0, 1.0, 1.0, 1);
        c.delta = 1.5;
        let p = configure_parsel2(16, &c).unwrap();
        assert!(close(p.eta, 1.0 / (16.0f64 * 4.0).sqrt()));
        assert_eq!(p.delta, 1.5);
    }
}
