//! Coefficient families of the printed closed forms, transcribed term by
//! term. Suspicious terms are kept as printed; the audit judges them.
//!
//! Shorthand: `kg1`, `kg2` are the first and second arc-length derivatives
//! of `k_g`, and likewise for `k_n` and `tau_g`.

use serde::{Deserialize, Serialize};

use super::{radicand, BaseInvariants, SmarandacheKind};

/// What a family feeds into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyRole {
    /// Direction of `dT*/ds`, giving the curvature and principal normal.
    Normal,
    /// Cross product with the tangent row, giving the binormal.
    Binormal,
    /// Components of the third derivative of `beta`, feeding the torsion.
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gamma,
    Mu,
    Eta,
    SmallGamma,
    Nu,
    Omega,
    Lambda,
    Rho,
    Chi,
    Delta,
    Sigma,
    Xi,
}

impl Family {
    pub fn of(kind: SmarandacheKind, role: FamilyRole) -> Family {
        use FamilyRole::*;
        use SmarandacheKind::*;
        match (kind, role) {
            (Tg, Normal) => Family::Gamma,
            (Tg, Binormal) => Family::Mu,
            (Tg, Third) => Family::Eta,
            (Tn, Normal) => Family::SmallGamma,
            (Tn, Binormal) => Family::Nu,
            (Tn, Third) => Family::Omega,
            (Gn, Normal) => Family::Lambda,
            (Gn, Binormal) => Family::Rho,
            (Gn, Third) => Family::Chi,
            (Tgn, Normal) => Family::Delta,
            (Tgn, Binormal) => Family::Sigma,
            (Tgn, Third) => Family::Xi,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "Gamma",
            Family::Mu => "mu",
            Family::Eta => "eta",
            Family::SmallGamma => "gamma",
            Family::Nu => "nu",
            Family::Omega => "omega",
            Family::Lambda => "lambda",
            Family::Rho => "rho",
            Family::Chi => "chi",
            Family::Delta => "delta",
            Family::Sigma => "sigma",
            Family::Xi => "xi",
        }
    }
}

/// Evaluates one coefficient triple at the given base invariants.
pub fn coefficients(kind: SmarandacheKind, role: FamilyRole, inv: &BaseInvariants) -> [f64; 3] {
    match kind {
        SmarandacheKind::Tg => match role {
            FamilyRole::Normal => gamma_tg(inv),
            FamilyRole::Binormal => mu(inv, &gamma_tg(inv)),
            FamilyRole::Third => eta(inv),
        },
        SmarandacheKind::Tn => match role {
            FamilyRole::Normal => gamma_tn(inv),
            FamilyRole::Binormal => nu(inv, &gamma_tn(inv)),
            FamilyRole::Third => omega(inv),
        },
        SmarandacheKind::Gn => match role {
            FamilyRole::Normal => lambda(inv),
            FamilyRole::Binormal => rho(inv, &lambda(inv)),
            FamilyRole::Third => chi(inv),
        },
        SmarandacheKind::Tgn => match role {
            FamilyRole::Normal => delta(inv),
            FamilyRole::Binormal => sigma(inv, &delta(inv)),
            FamilyRole::Third => xi(inv),
        },
    }
}

fn gamma_tg(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        ..
    } = *i;
    let s = kn + tg;
    let varsigma = radicand(SmarandacheKind::Tg, i);
    [
        s * (kg * (kn1 + tg1 - kn * kg - tg * kg) - kg1 * s - kn * varsigma) - 2.0 * kg.powi(4),
        s * (-kg * (kn1 + tg1 + kn * kg + tg * kg) + kg1 * s - tg * varsigma) - 2.0 * kg.powi(4),
        kg * s * (-2.0 * kg1 - kn + tg * s) + 2.0 * kg * kg * (kg * tg + kn1 + tg1),
    ]
}

fn mu(i: &BaseInvariants, g: &[f64; 3]) -> [f64; 3] {
    let s = i.kn + i.tg;
    [
        i.kg * g[2] - s * g[1],
        s * g[0] + i.kg * g[2],
        -i.kg * g[1] - i.kg * g[0],
    ]
}

fn eta(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        kg2,
        tg2,
        ..
    } = *i;
    let sq = tg * tg + kn * kn + kg * kg;
    [
        kg2 + 2.0 * kn * (kn1 + tg1) + kg * (3.0 * kg1 - tg * tg - kn * kn - kg * kg) + kn1 * (kn + tg),
        -kg2 + 2.0 * tg * (kn1 + tg1) + kg * (3.0 * kg1 + sq) + tg1 * (kn + tg),
        -kg2 - tg2 + kg * (kn1 - tg1) + (kn + tg) * sq + 2.0 * kg1 * (kn - tg),
    ]
}

fn gamma_tn(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        ..
    } = *i;
    let d = tg - kg;
    [
        d * (kn * (-kg1 + tg1 + kn * kg - tg * kn) - kn1 * d + kg * (2.0 * kn * kn + tg - kg)) - 2.0 * kn.powi(4),
        kn * d * (2.0 * kn1 + tg * (kg * kg - tg * tg)) - 2.0 * kn * kn * (kn * kg + tg1 - kg1 - kn * tg),
        d * (-kn * (-kg1 + tg1 - kn * kg + tg * kn) + kn1 * d - tg * (2.0 * kn * kn + tg - kg)) - 2.0 * kn.powi(4),
    ]
}

fn nu(i: &BaseInvariants, g: &[f64; 3]) -> [f64; 3] {
    let BaseInvariants { kg, kn, tg, .. } = *i;
    [
        (kg - tg) * g[2] - kn * g[1],
        kn * g[0] + kn * g[2],
        -kn * g[1] + (tg - kg) * g[0],
    ]
}

fn omega(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        kg2,
        kn2,
        tg2,
    } = *i;
    let sq = tg * tg + kn * kn + kg * kg;
    [
        kn2 - 2.0 * kg * (tg1 - kg1) + kn * (3.0 * kn1 - sq) + kg1 * (kg - tg),
        kg2 - tg2 + kn * (kg1 + tg1) + (kg - tg) * sq + tg * (2.0 * kn1 - kn * kn) + 2.0 * kg * kn1,
        -kn2 + 2.0 * tg * (tg1 - kg1) + kn * (3.0 * kn1 + tg * tg + tg * (kg + tg)) + (kg - tg) * (kn * kg - tg1),
    ]
}

fn lambda(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        ..
    } = *i;
    let a = kn + kg;
    [
        2.0 * tg * tg1 * a - 2.0 * tg * tg * (kn1 + kg1) + tg * (kg - kn) * (2.0 * tg * tg + a * a),
        -2.0 * tg.powi(4) + tg * a * ((kn1 + kg1) - 2.0 * tg * kg) - a * a * (a * kg + tg1 + tg * tg),
        -2.0 * tg.powi(4) + tg * a * ((kn1 + kg1) - 2.0 * tg * kn) + a * a * (-a * kn + tg1 - tg * tg),
    ]
}

fn rho(i: &BaseInvariants, l: &[f64; 3]) -> [f64; 3] {
    let a = i.kn + i.kg;
    let tg = i.tg;
    [-tg * l[2] - tg * l[1], tg * l[0] + a * l[2], -a * l[1] + tg * l[0]]
}

fn chi(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        kg2,
        kn2,
        tg2,
    } = *i;
    let a = kn + kg;
    [
        kn2 + kg2 - 2.0 * tg1 * (kn - kg) + tg * (kn1 - kg1) - a * (tg * tg + kn * kn + kg * kg),
        tg2 + 2.0 * kg * (kn1 + kg1) + 3.0 * tg * tg1 + a * (kg1 - tg * kn) + kg * tg * (kn - kg) - tg.powi(3),
        tg2 + 2.0 * kn * (kn1 + kg1) + 3.0 * tg * tg1 + a * (kg1 + tg * kg) + kn * tg * (kn - kg) + tg.powi(3),
    ]
}

fn delta(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        ..
    } = *i;
    let a = kn + kg;
    let b = tg - kg;
    let c = tg + kn;
    [
        a * a * (kg * b - kn * c)
            + a * (b * (tg1 - kg1) + (tg + kg) * (tg1 + kn1))
            + (b * b + c * c) * (kg * b - (kg1 + kn1) - kn * c),
        b * b * (-kg * a - tg * c)
            + b * (a * (kg1 + kn1) + c * (tg1 + kn1))
            + (a * a + c * c) * (-kg * a + (kg1 - tg1) - tg * c),
        c * c * (tg * (kg - tg) - kn * a)
            + c * (-a * (kg1 + kn1) - b * (tg1 - kg1))
            + (a * a + b * b) * (tg * (kg - tg) + (tg1 + kn1) - kn * a),
    ]
}

fn sigma(i: &BaseInvariants, d: &[f64; 3]) -> [f64; 3] {
    let BaseInvariants { kg, kn, tg, .. } = *i;
    let a = kn + kg;
    let c = tg + kn;
    [
        (kg - tg) * d[2] - c * d[1],
        c * d[0] + a * d[2],
        -a * d[1] - (kg - tg) * d[0],
    ]
}

fn xi(i: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        kg2,
        kn2,
        tg2,
    } = *i;
    let a = kn + kg;
    [
        kn2 + kg2 - 2.0 * kg1 * (kg1 - tg1) - a * (kn * kn + kg * kg)
            + (kg - tg) * (kg1 + kn * tg)
            + 2.0 * kn * (kn1 + tg1)
            + (kn + tg) * (kn1 - kg * tg),
        tg2 - kg2
            + 2.0 * tg * (kn1 + tg1)
            + 2.0 * kg * (kn1 + kg1)
            + a * (kg1 - kn * tg)
            + (tg + kn) * (kn * kg + tg1)
            + (kg - tg) * (kg * kg + tg * tg),
        -(tg2 + kn2)
            + 2.0 * kn * (kn1 + kg1)
            + (tg - kg) * (tg1 - kn * kg)
            + a * (kn1 + kg * tg)
            + 2.0 * tg * (tg1 - kg1)
            + (kn + tg) * (kn * kn + tg * tg),
    ]
}
