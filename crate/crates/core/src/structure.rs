//! Symbolic structure reports for generalized Jacobians `J_{X,m}` and for
//! the invariants of the abelian fundamental group of `U = X \ S`.
//!
//! Only ranks, dimensions and factor lists are computed; the groups
//! themselves appear as strings.

use serde::Serialize;

use crate::artin_hasse::slots;
use crate::curve::Modulus;

/// The unipotent part at one point: `V_(n) = prod_i W_{r_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactors {
    pub point: String,
    pub multiplicity: u64,
    /// Pairs `(i, r_i)`.
    pub slots: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub torus_rank: u64,
    pub abelian_dim: u64,
    pub unipotent_factors: Vec<LocalFactors>,
    pub dim_total: u64,
    pub notes: Vec<String>,
}

/// `[(i, r_i)]` for `1 <= i < n`, `p ∤ i`, `r_i` least with `i p^{r_i} >= n`.
pub fn decompose_local_unipotent(n: u64, p: u64) -> Vec<(usize, usize)> {
    slots(p, n as usize)
}

/// `dim J_{X,m} = g + deg m - 1` for `m != 0`, and `g` for `m = 0`.
pub fn jacobian_dim(g: u64, m: &Modulus) -> u64 {
    if m.is_zero() {
        g
    } else {
        g + m.degree() - 1
    }
}

fn w_product(slots: &[(usize, usize)]) -> String {
    if slots.is_empty() {
        return "0".into();
    }
    slots
        .iter()
        .map(|(_, r)| format!("W_{}", r))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// `0 -> L_m -> J_{X,m} -> J_X -> 0` with `L_m = G_m^{#S-1} x prod_x V_(n_x)`.
pub fn jacobian_report(p: u64, g: u64, f_x: u64, m: &Modulus) -> StructureReport {
    let s = m.support().len() as u64;
    let torus_rank = s.saturating_sub(1);
    let unipotent_factors: Vec<LocalFactors> = m
        .iter()
        .map(|(x, &n)| LocalFactors {
            point: x.to_string(),
            multiplicity: n,
            slots: decompose_local_unipotent(n, p),
        })
        .collect();
    let mut notes = vec![
        format!("J_X: abelian variety of dimension {} and p-rank {}", g, f_x),
        format!("G_m^{}", torus_rank),
    ];
    for f in &unipotent_factors {
        notes.push(format!(
            "V_({}) at {} = {}",
            f.multiplicity,
            f.point,
            w_product(&f.slots)
        ));
    }
    StructureReport {
        torus_rank,
        abelian_dim: g,
        unipotent_factors,
        dim_total: jacobian_dim(g, m),
        notes,
    }
}

/// `[Z_p^{#S-1}] ++ [W[F^{r_{x,i}}] for x in S, 1 <= i < n_x, p ∤ i]`.
pub fn uni_ab_factors(p: u64, m: &Modulus) -> Vec<String> {
    let s = m.support().len() as u64;
    let mut out = vec![format!("Z_p^{}", s.saturating_sub(1))];
    for (_, &n) in m.iter() {
        for (_, r) in decompose_local_unipotent(n, p) {
            out.push(format!("W[F^{}]", r));
        }
    }
    out
}

fn is_trivial_descriptor(desc: &str) -> bool {
    matches!(desc.trim(), "" | "0" | "1" | "trivial")
}

/// `Diag(J_X(k)_tor x ker(Σ: (Q/Z)^{#S} -> Q/Z))`; the kernel has corank
/// `#S - 1`.
pub fn mult_part_report(s_count: usize, torsion: &str) -> Vec<String> {
    let corank = s_count.saturating_sub(1);
    let mut parts = Vec::new();
    if !is_trivial_descriptor(torsion) {
        parts.push(torsion.trim().to_string());
    }
    if corank > 0 {
        parts.push(format!("ker(Σ: (Q/Z)^{} → Q/Z)", s_count));
    }
    if parts.is_empty() {
        return vec!["trivial".into()];
    }
    let mut notes = vec![format!("Diag({})", parts.join(" × "))];
    if corank > 0 {
        notes.push(format!("divisible rank {}", corank));
    }
    notes
}

/// `e` with `|J_{X,m}[F^n]| = p^e`, namely `n * dim J_{X,m}`.
pub fn frobenius_kernel_exponent(_p: u64, g: u64, m: &Modulus, n: u64) -> u64 {
    n * jacobian_dim(g, m)
}

/// One point of the pro-`p` report: level `min(p^n, n_x)` and its slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProPLevel {
    pub point: String,
    pub multiplicity: u64,
    pub level: u64,
    pub slots: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProPReport {
    pub free_rank: u64,
    pub levels: Vec<ProPLevel>,
    pub notes: Vec<String>,
}

/// Finite-level shape `J_X[p^n](k) x prod_x Hom(U^(1)/U^(min(p^n, n_x)), Q_p/Z_p)`.
pub fn pro_p_report(p: u64, m: &Modulus, n: u32, f_x: u64) -> ProPReport {
    let pn = p.checked_pow(n).unwrap_or(u64::MAX);
    let levels: Vec<ProPLevel> = m
        .iter()
        .map(|(x, &nx)| {
            let level = pn.min(nx);
            ProPLevel {
                point: x.to_string(),
                multiplicity: nx,
                level,
                slots: decompose_local_unipotent(level, p),
            }
        })
        .collect();
    let mut notes = Vec::new();
    if f_x > 0 {
        notes.push(format!("(Z/{}^{})^{}", p, n, f_x));
    }
    for l in levels.iter().filter(|l| l.level > 1) {
        notes.push(format!(
            "Hom(U^(1)/U^({}), Q_p/Z_p) at {}; U^(1)/U^({}) = {}",
            l.level,
            l.point,
            l.level,
            w_product(&l.slots)
        ));
    }
    if notes.is_empty() {
        notes.push("trivial".into());
    }
    ProPReport {
        free_rank: f_x,
        levels,
        notes,
    }
}
