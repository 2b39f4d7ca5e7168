//! The static elite problem.
//!
//! For each allocation share the elite levies the Laffer-maximizing rate, so
//! its value is `T_hat(g) * [alpha_e g + theta (1 - g)]`. This is a ratio of
//! affine functions of `g`, hence single-peaked, and only the corners need to
//! be compared. Decisions always come from that direct comparison; the
//! closed-form morality thresholds are reported alongside as diagnostics.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fiscal::laffer_peak_revenue;
use crate::model::{theta, ValidatedModel};

const TIE_TOL: f64 = 1e-12;

/// Corner allocation: all revenue to rents (`g = 0`) or to the public good (`g = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    Rents,
    Provision,
}

impl Corner {
    pub fn share(self) -> f64 {
        match self {
            Corner::Rents => 0.0,
            Corner::Provision => 1.0,
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(g: u8) -> Option<Self> {
        match g {
            0 => Some(Corner::Rents),
            1 => Some(Corner::Provision),
            _ => None,
        }
    }
}

impl Serialize for Corner {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

/// Which part of parameter space the static problem falls in.
///
/// The first three variants partition the aligned case; the rest cover
/// elites whose valuation differs from the citizens'.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticRegion {
    StrongProvision,
    WeakProvision { kappa_bar: f64 },
    Transfer,
    CommonInterest,
    Weak,
    ContestedCommonInterest { kappa_bar_plus: f64 },
    ContestedTransfer { kappa_bar_minus: f64 },
    KnifeEdge,
}

impl StaticRegion {
    pub fn tag(&self) -> &'static str {
        match self {
            StaticRegion::StrongProvision => "strong_provision",
            StaticRegion::WeakProvision { .. } => "weak_provision",
            StaticRegion::Transfer => "transfer",
            StaticRegion::CommonInterest => "common_interest",
            StaticRegion::Weak => "weak",
            StaticRegion::ContestedCommonInterest { .. } => "contested_common_interest",
            StaticRegion::ContestedTransfer { .. } => "contested_transfer",
            StaticRegion::KnifeEdge => "knife_edge",
        }
    }

    pub fn threshold(&self) -> Option<f64> {
        match *self {
            StaticRegion::WeakProvision { kappa_bar } => Some(kappa_bar),
            StaticRegion::ContestedCommonInterest { kappa_bar_plus } => Some(kappa_bar_plus),
            StaticRegion::ContestedTransfer { kappa_bar_minus } => Some(kappa_bar_minus),
            _ => None,
        }
    }

    /// The allocation as the region's case statement words it: rents below
    /// the cutoff and provision at or above it for every cutoff region.
    ///
    /// For the contested common-interest case this wording disagrees with the
    /// corner comparison (provision is optimal *below* the cutoff), which is
    /// what [`AllocationDecision::direction_conflict`] reports.
    pub fn stated_allocation(&self, kappa: f64) -> Option<Corner> {
        match *self {
            StaticRegion::StrongProvision | StaticRegion::CommonInterest => Some(Corner::Provision),
            StaticRegion::Transfer | StaticRegion::Weak => Some(Corner::Rents),
            StaticRegion::WeakProvision { kappa_bar } => {
                if kappa < kappa_bar {
                    Some(Corner::Rents)
                } else if kappa > kappa_bar {
                    Some(Corner::Provision)
                } else {
                    None
                }
            }
            StaticRegion::ContestedCommonInterest {
                kappa_bar_plus: cut,
            }
            | StaticRegion::ContestedTransfer {
                kappa_bar_minus: cut,
            } => Some(if kappa < cut {
                Corner::Rents
            } else {
                Corner::Provision
            }),
            StaticRegion::KnifeEdge => None,
        }
    }
}

impl Serialize for StaticRegion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AllocationDecision {
    pub g_star: Corner,
    /// `V(0)` and `V(1)` are equal up to `1e-12 * max(1, |V(0)|)`; provision wins ties.
    pub tie: bool,
    pub v0: f64,
    pub v1: f64,
    pub region: StaticRegion,
    pub threshold: Option<f64>,
    pub stated_g_star: Option<Corner>,
    /// The region's stated allocation differs from the corner comparison.
    pub direction_conflict: bool,
}

/// Elite value at a corner: `V(1) = T_hat(1) * alpha_e`, `V(0) = T_hat(0) * theta`,
/// where tax bases respond to the citizens' valuation `alpha_c`.
pub fn elite_value(model: &ValidatedModel, g: Corner, alpha_e: f64, alpha_c: f64) -> Result<f64> {
    let base = laffer_peak_revenue(model, g.share(), alpha_c)?;
    Ok(match g {
        Corner::Provision => base * alpha_e,
        Corner::Rents => base * model.theta(),
    })
}

/// Chooses the better corner by direct comparison and attaches the region.
pub fn optimal_allocation(
    model: &ValidatedModel,
    alpha_e: f64,
    alpha_c: f64,
) -> Result<AllocationDecision> {
    let v0 = elite_value(model, Corner::Rents, alpha_e, alpha_c)?;
    let v1 = elite_value(model, Corner::Provision, alpha_e, alpha_c)?;
    let tie = (v1 - v0).abs() <= TIE_TOL * v0.abs().max(1.0);
    let g_star = if tie || v1 > v0 {
        Corner::Provision
    } else {
        Corner::Rents
    };
    let region = if alpha_e == alpha_c {
        classify_aligned(alpha_e, model.sigma())?
    } else {
        classify_unaligned(model, alpha_e, alpha_c)?
    };
    let stated_g_star = region.stated_allocation(model.kappa());
    let direction_conflict = !tie && stated_g_star.is_some_and(|g| g != g_star);
    Ok(AllocationDecision {
        g_star,
        tie,
        v0,
        v1,
        region,
        threshold: region.threshold(),
        stated_g_star,
        direction_conflict,
    })
}

fn theta_and_s(sigma: f64) -> Result<(f64, f64)> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::domain(format!("sigma = {sigma} outside (0, 1)")));
    }
    let th = theta(sigma)?;
    Ok((th, sigma * th))
}

/// Aligned-valuation region: strong provision, weak provision or transfer.
pub fn classify_aligned(alpha: f64, sigma: f64) -> Result<StaticRegion> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!("alpha = {alpha} must be positive")));
    }
    let (th, s) = theta_and_s(sigma)?;
    Ok(if alpha > th {
        StaticRegion::StrongProvision
    } else if alpha > s {
        StaticRegion::WeakProvision {
            kappa_bar: morality_threshold_aligned(alpha, sigma)?,
        }
    } else {
        StaticRegion::Transfer
    })
}

/// Morality above which an aligned elite in the weak-provision region provides:
/// `(theta - alpha) / (alpha theta (1 - sigma))`.
pub fn morality_threshold_aligned(alpha: f64, sigma: f64) -> Result<f64> {
    let (th, s) = theta_and_s(sigma)?;
    if !(s < alpha && alpha <= th) {
        return Err(Error::region(format!(
            "threshold needs sigma*theta = {s} < alpha = {alpha} <= theta = {th}"
        )));
    }
    Ok((th - alpha) / (alpha * th * (1.0 - sigma)))
}

/// Central finite differences `(d kappa_bar / d alpha, d kappa_bar / d sigma)`.
///
/// Every shifted point must itself lie in the weak-provision region.
pub fn threshold_comparative_statics(alpha: f64, sigma: f64, h: f64) -> Result<(f64, f64)> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("step h = {h} must be positive")));
    }
    let k = |a: f64, s: f64| {
        morality_threshold_aligned(a, s).map_err(|_| {
            Error::region(format!(
                "weak-provision region must contain alpha = {alpha} +- {h} and sigma = {sigma} +- {h}"
            ))
        })
    };
    let d_alpha = (k(alpha + h, sigma)? - k(alpha - h, sigma)?) / (2.0 * h);
    let d_sigma = (k(alpha, sigma + h)? - k(alpha, sigma - h)?) / (2.0 * h);
    Ok((d_alpha, d_sigma))
}

/// Equilibrium tax base at the elite's chosen corner:
/// `w c / (4 (1 - kappa alpha))` under provision, `w c / (4 (1 - kappa sigma theta))` under rents.
pub fn equilibrium_tax_base(model: &ValidatedModel, g: Corner, alpha: f64) -> Result<f64> {
    laffer_peak_revenue(model, g.share(), alpha)
}

/// Region for an elite valuing public spending at `alpha_e` while citizens
/// value it at `alpha_c`.
pub fn classify_unaligned(
    model: &ValidatedModel,
    alpha_e: f64,
    alpha_c: f64,
) -> Result<StaticRegion> {
    for (name, a) in [("alpha_e", alpha_e), ("alpha_c", alpha_c)] {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::domain(format!("{name} = {a} must be positive")));
        }
    }
    let bound = 1.0 / alpha_c;
    if model.kappa() >= bound {
        return Err(Error::KappaInfeasible {
            kappa: model.kappa(),
            bound,
        });
    }
    let (th, s) = (model.theta(), model.s());
    // alpha_e * s - theta * alpha_c, factored so the knife edge is exact.
    let cross = th * (alpha_e * model.sigma() - alpha_c);
    Ok(if cross == 0.0 {
        StaticRegion::KnifeEdge
    } else if alpha_e <= th && alpha_c <= s {
        StaticRegion::Weak
    } else if alpha_e >= th && alpha_c >= s {
        StaticRegion::CommonInterest
    } else if alpha_e > th {
        StaticRegion::ContestedCommonInterest {
            kappa_bar_plus: (alpha_e - th) / cross,
        }
    } else {
        StaticRegion::ContestedTransfer {
            kappa_bar_minus: (th - alpha_e) / -cross,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, ModelParams, ValueConfig};

    fn aligned(sigma: f64, kappa: f64, alpha: f64) -> ValidatedModel {
        validate(
            ModelParams::new(1.0, 1.0, sigma, kappa),
            ValueConfig::Aligned { alpha },
        )
        .unwrap()
    }

    fn unaligned(sigma: f64, kappa: f64, alpha_e: f64, alpha_c: f64) -> ValidatedModel {
        validate(
            ModelParams::new(1.0, 1.0, sigma, kappa),
            ValueConfig::Unaligned { alpha_e, alpha_c },
        )
        .unwrap()
    }

    /// `kappa_bar = (1/alpha - 1 - sigma) / (1 - sigma)`, an equivalent closed form.
    fn kappa_bar_alt(alpha: f64, sigma: f64) -> f64 {
        (1.0 / alpha - 1.0 - sigma) / (1.0 - sigma)
    }

    /// Bisection on the sign of `V(1) - V(0)`.
    fn bisect_flip(alpha: f64, sigma: f64) -> f64 {
        let gap = |k: f64| {
            let m = aligned(sigma, k, alpha);
            elite_value(&m, Corner::Provision, alpha, alpha).unwrap()
                - elite_value(&m, Corner::Rents, alpha, alpha).unwrap()
        };
        let (mut lo, mut hi) = (0.0, (1.0f64).min(1.0 / alpha) * (1.0 - 1e-12));
        assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if gap(mid) < 0.0 {
                lo = mid
            } else {
                hi = mid
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn corner_values() {
        let m = aligned(0.1, 0.0, 1.5);
        assert!((elite_value(&m, Corner::Provision, 1.5, 1.5).unwrap() - 0.375).abs() < 1e-15);
        assert!((elite_value(&m, Corner::Rents, 1.5, 1.5).unwrap() - 0.25 / 1.1).abs() < 1e-15);

        let th = 1.0 / 1.1;
        let m = aligned(0.1, 0.0, th);
        let d = optimal_allocation(&m, th, th).unwrap();
        assert!((d.v1 - d.v0).abs() < 1e-15);
        assert!(d.tie);
        assert_eq!(d.g_star, Corner::Provision);

        let m = unaligned(0.5, 0.0, 1.0, 0.2);
        assert!((elite_value(&m, Corner::Provision, 1.0, 0.2).unwrap() - 0.25).abs() < 1e-15);
        assert!((elite_value(&m, Corner::Rents, 1.0, 0.2).unwrap() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn aligned_allocations() {
        let d = optimal_allocation(&aligned(0.1, 0.1, 1.5), 1.5, 1.5).unwrap();
        assert_eq!(
            (d.g_star, d.region),
            (Corner::Provision, StaticRegion::StrongProvision)
        );
        for k in [0.0, 0.3, 0.9] {
            let d = optimal_allocation(&aligned(0.5, k, 0.2), 0.2, 0.2).unwrap();
            assert_eq!(
                (d.g_star, d.region),
                (Corner::Rents, StaticRegion::Transfer)
            );
        }
        let d = optimal_allocation(&aligned(0.5, 0.2, 0.6), 0.6, 0.6).unwrap();
        assert_eq!(d.g_star, Corner::Rents);
        assert!(!d.direction_conflict);
        let d = optimal_allocation(&aligned(0.5, 0.4, 0.6), 0.6, 0.6).unwrap();
        assert_eq!(d.g_star, Corner::Provision);
        assert!((d.threshold.unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn threshold_examples() {
        let th = 2.0 / 3.0;
        assert!(morality_threshold_aligned(th, 0.5).unwrap().abs() < 1e-15);
        assert!((morality_threshold_aligned(0.6, 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            morality_threshold_aligned(0.2, 0.5),
            Err(Error::RegionMismatch(_))
        ));
        assert!(matches!(
            morality_threshold_aligned(0.7, 0.5),
            Err(Error::RegionMismatch(_))
        ));
        let (_, ds) = threshold_comparative_statics(0.5, 0.3, 1e-5).unwrap();
        assert!(ds.abs() < 1e-8);
    }

    #[test]
    fn comparative_statics_signs() {
        let (da, ds) = threshold_comparative_statics(0.6, 0.5, 1e-5).unwrap();
        assert!(da < 0.0 && ds < 0.0);
        assert!((da + 1.0 / (0.36 * 0.5)).abs() < 1e-5);
        assert!((ds - (1.0 / 0.6 - 2.0) / 0.25).abs() < 1e-5);
        let (da, ds) = threshold_comparative_statics(0.4, 0.5, 1e-5).unwrap();
        assert!(da < 0.0 && ds > 0.0);
        // alpha = theta leaves no room above.
        assert!(threshold_comparative_statics(2.0 / 3.0, 0.5, 1e-5).is_err());
    }

    #[test]
    fn tax_base_examples() {
        for g in [Corner::Rents, Corner::Provision] {
            assert_eq!(
                equilibrium_tax_base(&aligned(0.5, 0.0, 0.6), g, 0.6).unwrap(),
                0.25
            );
        }
        let m = aligned(0.5, 0.4, 0.6);
        assert!(
            (equilibrium_tax_base(&m, Corner::Provision, 0.6).unwrap() - 0.328947).abs() < 1e-6
        );
        assert!((equilibrium_tax_base(&m, Corner::Rents, 0.6).unwrap() - 0.288462).abs() < 1e-6);
    }

    #[test]
    fn unaligned_regions() {
        let m = unaligned(0.5, 0.0, 1.0, 0.2);
        let r = classify_unaligned(&m, 1.0, 0.2).unwrap();
        assert_eq!(r.tag(), "contested_common_interest");
        assert!((r.threshold().unwrap() - 5.0 / 3.0).abs() < 1e-12);

        let m = unaligned(0.5, 0.0, 0.4, 0.6);
        let r = classify_unaligned(&m, 0.4, 0.6).unwrap();
        assert_eq!(r.tag(), "contested_transfer");
        assert!((r.threshold().unwrap() - 1.0).abs() < 1e-12);

        for k in [0.0, 0.5, 0.99] {
            let m = unaligned(0.5, k, 0.5, 0.2);
            let d = optimal_allocation(&m, 0.5, 0.2).unwrap();
            assert_eq!((d.region, d.g_star), (StaticRegion::Weak, Corner::Rents));
        }
        let m = unaligned(0.5, 0.3, 0.9, 0.5);
        assert_eq!(
            classify_unaligned(&m, 0.9, 0.5).unwrap(),
            StaticRegion::CommonInterest
        );
        // alpha_e * sigma = alpha_c
        let m = unaligned(0.5, 0.3, 0.8, 0.4);
        assert_eq!(
            classify_unaligned(&m, 0.8, 0.4).unwrap(),
            StaticRegion::KnifeEdge
        );
    }

    #[test]
    fn contested_common_interest_follows_value_comparison() {
        let m = unaligned(0.5, 0.0, 1.0, 0.2);
        let d = optimal_allocation(&m, 1.0, 0.2).unwrap();
        assert!(d.v1 > d.v0);
        assert_eq!(d.g_star, Corner::Provision);
        assert_eq!(d.stated_g_star, Some(Corner::Rents));
        assert!(d.direction_conflict);
        // Contested transfer agrees with its stated direction on both sides.
        for k in [0.5, 0.99] {
            let m = unaligned(0.5, k, 0.4, 0.6);
            let d = optimal_allocation(&m, 0.4, 0.6).unwrap();
            assert!(!d.direction_conflict);
        }
    }

    #[test]
    fn region_tags_serialize_as_snake_case() {
        let json = serde_json::to_string(&StaticRegion::ContestedTransfer {
            kappa_bar_minus: 1.0,
        })
        .unwrap();
        assert_eq!(json, "\"contested_transfer\"");
        assert_eq!(serde_json::to_string(&Corner::Provision).unwrap(), "1");
    }

    #[test]
    fn flip_matches_threshold() {
        for (alpha, sigma) in [(0.6, 0.5), (0.55, 0.2), (0.8, 0.1), (0.51, 0.9)] {
            let closed = morality_threshold_aligned(alpha, sigma).unwrap();
            assert!((closed - kappa_bar_alt(alpha, sigma)).abs() < 1e-12);
            assert!(
                (bisect_flip(alpha, sigma) - closed).abs() < 1e-9,
                "alpha={alpha} sigma={sigma}"
            );
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn allocation_scale_invariant(sigma in 0.01f64..0.99, alpha in 0.05f64..2.0,
                                          frac in 0.0f64..0.99, scale in 0.1f64..10.0) {
                let kappa = frac * 1.0f64.min(1.0 / alpha);
                let m = aligned(sigma, kappa, alpha);
                let p = ModelParams { w: scale, c: scale * 0.7, ..*m.params() };
                let scaled = validate(p, *m.values()).unwrap();
                let a = optimal_allocation(&m, alpha, alpha).unwrap();
                let b = optimal_allocation(&scaled, alpha, alpha).unwrap();
                prop_assume!(!a.tie && !b.tie);
                prop_assert_eq!(a.g_star, b.g_star);
            }

            #[test]
            fn tax_base_expands_with_kappa(sigma in 0.01f64..0.99, alpha in 0.05f64..2.0,
                                            frac in 0.001f64..0.98) {
                let cap = 1.0f64.min(1.0 / alpha);
                let m1 = aligned(sigma, frac * cap, alpha);
                let m2 = aligned(sigma, (frac + 0.01) * cap, alpha);
                for g in [Corner::Rents, Corner::Provision] {
                    prop_assert!(equilibrium_tax_base(&m2, g, alpha).unwrap()
                        > equilibrium_tax_base(&m1, g, alpha).unwrap());
                }
                if alpha > m1.s() {
                    prop_assert!(equilibrium_tax_base(&m1, Corner::Provision, alpha).unwrap()
                        > equilibrium_tax_base(&m1, Corner::Rents, alpha).unwrap());
                }
            }

            #[test]
            fn aligned_decision_matches_region(sigma in 0.01f64..0.99, alpha in 0.05f64..2.0,
                                               frac in 0.0f64..0.99) {
                let kappa = frac * 1.0f64.min(1.0 / alpha);
                let d = optimal_allocation(&aligned(sigma, kappa, alpha), alpha, alpha).unwrap();
                prop_assume!(!d.tie);
                prop_assert!(!d.direction_conflict);
            }
        }
    }
}
