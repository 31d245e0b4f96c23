//! Closed-form entropy, tube and volume bounds in binary64.

use std::f64::consts::PI;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::BoundsError;
use crate::matrix::IntegerMatrix;
use crate::presentation::IntersectionStats;

/// Relative tolerance for comparing derived real quantities.
pub const REL_TOL: f64 = 1e-9;

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn positive(x: f64, name: &'static str) -> Result<f64, BoundsError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(BoundsError::NonPositive(name))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Applicability {
    pub fiber_genus: u32,
    pub fiber_genus_at_least_3: bool,
    pub fiber_genus_2: bool,
    pub all_k_at_least_3: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyBoundReport {
    pub bound_with_b: Option<f64>,
    pub bound_fine: Option<f64>,
    pub bound_genus2: Option<f64>,
    pub bound_log3: Option<f64>,
    pub bound_cover: Option<f64>,
    pub applicability: Applicability,
    pub best: Option<f64>,
}

/// Optional data for the bound through a finite cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CoverLength {
    pub heegaard_length: u64,
    pub degree: u64,
}

pub fn entropy_bounds(
    stats: &IntersectionStats,
    b1: usize,
    fiber_genus: u32,
    cover: Option<CoverLength>,
) -> Result<EntropyBoundReport, BoundsError> {
    if fiber_genus < 2 {
        return Err(BoundsError::FiberGenus(fiber_genus));
    }
    if let Some(i) = stats.k_per_alpha.iter().position(|&k| k == 0) {
        return Err(BoundsError::ZeroIntersections(i + 1));
    }
    let g = stats.k_per_alpha.len() as f64;
    let k: f64 = stats.k_per_alpha.iter().map(|&x| x as f64).sum();
    let log_prod: f64 = stats.k_per_alpha.iter().map(|&x| (x as f64).ln()).sum();
    let kmin = stats.k_per_alpha.iter().copied().min().unwrap_or(1) as f64;
    let fine = log_prod - kmin.ln();
    let b = b1 as f64;
    let big = fiber_genus >= 3;
    let all3 = stats.k_per_alpha.iter().all(|&x| x >= 3);
    let bound_with_b = big.then(|| log_prod + b * (1.0 + b * 2f64.powf(b + 1.0) * k * k).ln() - 2f64.ln());
    let bound_fine = big.then_some(fine);
    let bound_genus2 = (fiber_genus == 2).then_some(2.0 * fine);
    let bound_log3 = (big && all3).then(|| (k - 2.0 * g - 1.0) * 3f64.ln());
    let bound_cover = match cover {
        Some(c) if big => {
            Some(c.degree as f64 * (c.heegaard_length as f64 - 1.0) * 3f64.ln())
        }
        _ => None,
    };
    let best = [bound_with_b, bound_fine, bound_genus2, bound_log3, bound_cover]
        .into_iter()
        .flatten()
        .reduce(f64::min);
    Ok(EntropyBoundReport {
        bound_with_b,
        bound_fine,
        bound_genus2,
        bound_log3,
        bound_cover,
        applicability: Applicability {
            fiber_genus,
            fiber_genus_at_least_3: big,
            fiber_genus_2: fiber_genus == 2,
            all_k_at_least_3: all3,
        },
        best,
    })
}

/// `x log(2 + 1/x)`, increasing on `(0, 1]` with value `log 3` at 1.
pub fn f_of_x(x: f64) -> f64 {
    x * (2.0 + 1.0 / x).ln()
}

pub fn entropy_transform(ent: f64, multiple: u64, cover_degree: u64) -> Result<f64, BoundsError> {
    if multiple == 0 || cover_degree == 0 {
        return Err(BoundsError::Multiple);
    }
    Ok(ent / multiple as f64)
}

/// Any two of depth, systole, volume and wrist; the angle is carried along.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct TubeInput {
    pub r: Option<f64>,
    pub l: Option<f64>,
    pub volume: Option<f64>,
    pub wrist: Option<f64>,
    pub phi: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TubeShape {
    pub r: f64,
    pub l: f64,
    pub phi: f64,
    pub volume: f64,
    pub wrist: f64,
    pub ball_volume: f64,
}

pub fn tube_volume(r: f64, l: f64) -> f64 {
    PI * l * r.sinh().powi(2)
}

pub fn tube_wrist(r: f64) -> f64 {
    2.0 * PI * r.sinh()
}

pub fn ball_volume(r: f64) -> f64 {
    PI * ((2.0 * r).sinh() - 2.0 * r)
}

/// Distance within which a tube boundary point is visible, for `0 < rho <= 1`.
pub fn visibility_radius(rho: f64) -> f64 {
    rho * (1.0 / 3f64.sqrt()).asinh()
}

pub fn tube_metrics(t: &TubeInput) -> Result<TubeShape, BoundsError> {
    let chk = |v: Option<f64>, n| v.map(|x| positive(x, n)).transpose();
    let r0 = chk(t.r, "r")?;
    let l0 = chk(t.l, "l")?;
    let v0 = chk(t.volume, "volume")?;
    let w0 = chk(t.wrist, "wrist")?;
    let phi = t.phi.unwrap_or(0.0);
    if !(0.0..=PI).contains(&phi) {
        return Err(BoundsError::Inconsistent(format!("angle {} outside [0, pi]", phi)));
    }
    let r = match (r0, w0, l0, v0) {
        (Some(r), ..) => r,
        (None, Some(w), ..) => (w / (2.0 * PI)).asinh(),
        (None, None, Some(l), Some(v)) => (v / (PI * l)).sqrt().asinh(),
        _ => return Err(BoundsError::Underdetermined),
    };
    let l = match (l0, v0) {
        (Some(l), _) => l,
        (None, Some(v)) => v / (PI * r.sinh().powi(2)),
        _ => return Err(BoundsError::Underdetermined),
    };
    let shape = TubeShape { r, l, phi, volume: tube_volume(r, l), wrist: tube_wrist(r), ball_volume: ball_volume(r) };
    for (given, got, name) in [(r0, r, "r"), (l0, l, "l"), (v0, shape.volume, "volume"), (w0, shape.wrist, "wrist")] {
        if let Some(x) = given {
            if !close(x, got, REL_TOL) {
                return Err(BoundsError::Inconsistent(format!("{} = {} but the other data give {}", name, x, got)));
            }
        }
    }
    Ok(shape)
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GeometricProfile {
    pub vol_w: f64,
    pub tube_wrists: Vec<f64>,
    /// Volumes of the same tubes, when known.
    pub tube_volumes: Vec<f64>,
    pub total_vol: f64,
    pub systole: f64,
    pub epsilon: f64,
    pub mu: f64,
    /// Genus of the diagram, for the assembled bound.
    pub genus: Option<u32>,
    pub dmu: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveCaps {
    pub delta: f64,
    /// Intersections on each tube curve.
    pub tube_curves: Vec<f64>,
    /// Intersections on each remaining curve.
    pub thick_curve: f64,
    pub genus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometricReport {
    pub heegaard_length_cap: f64,
    pub entropy_volume_systole: f64,
    pub assembled_entropy: Option<f64>,
    pub wrist_sum: f64,
    pub wrist_sum_cap: Option<f64>,
    pub tube_volume_floor: f64,
    pub short_systole: f64,
    pub bicollar_width: f64,
    pub curve_caps: CurveCaps,
    pub arithmetic_constant: Option<f64>,
}

/// Heegaard length cap from the thick volume and tube wrists.
pub fn heegaard_length_cap(vol_w: f64, wrists: &[f64], epsilon: f64) -> f64 {
    1e22 * (epsilon.powi(-3) * vol_w + wrists.iter().sum::<f64>() / epsilon)
}

/// Entropy cap from volume and systole.
pub fn entropy_volume_systole(total_vol: f64, systole: f64) -> f64 {
    1e20 * total_vol * (3.0 + 1.0 / systole).ln()
}

pub fn assembled_entropy(g: u32, s: u32, wrists: &[f64]) -> Result<f64, BoundsError> {
    if s > g {
        return Err(BoundsError::TubeCount { s, g });
    }
    Ok(2.0 * (30.0 * (g - s) as f64 + 60.0 * s as f64 + wrists.iter().map(|w| w.ln()).sum::<f64>()))
}

pub fn wrist_sum_cap(mu: f64, systole: f64, tube_volumes: &[f64]) -> f64 {
    3f64.sqrt() * (mu / 8.0).powf(-1.5) / systole.sqrt() * tube_volumes.iter().sum::<f64>()
}

pub fn arithmetic_constant(mu: f64, dmu: Option<f64>) -> Result<f64, BoundsError> {
    let d = dmu.ok_or(BoundsError::MissingDmu)?;
    let e = mu / 8.0;
    Ok(1e23 * (e.powi(-3) + d / e))
}

pub fn curve_caps(epsilon: f64, vol_w: f64, wrists: &[f64]) -> CurveCaps {
    let delta = epsilon / 10.0;
    let q = epsilon / delta;
    CurveCaps {
        delta,
        tube_curves: wrists.iter().map(|w| q.powi(14) * w * 1e7 / delta).collect(),
        thick_curve: q.powi(6) * 1e3,
        genus: wrists.len() as f64 + delta.powi(-3) * q.powi(6) * vol_w * 1e3,
    }
}

pub fn geometric_entropy_bounds(p: &GeometricProfile) -> Result<GeometricReport, BoundsError> {
    if !(p.epsilon > 0.0 && p.epsilon <= 1.0) {
        return Err(BoundsError::Epsilon(p.epsilon));
    }
    if !(p.vol_w.is_finite() && p.vol_w >= 0.0) {
        return Err(BoundsError::NonPositive("vol_w"));
    }
    positive(p.total_vol, "total_vol")?;
    positive(p.systole, "systole")?;
    positive(p.mu, "mu")?;
    for &w in &p.tube_wrists {
        positive(w, "wrist")?;
    }
    for &v in &p.tube_volumes {
        positive(v, "tube volume")?;
    }
    let s = p.tube_wrists.len() as u32;
    let e = p.mu / 8.0;
    Ok(GeometricReport {
        heegaard_length_cap: heegaard_length_cap(p.vol_w, &p.tube_wrists, p.epsilon),
        entropy_volume_systole: entropy_volume_systole(p.total_vol, p.systole),
        assembled_entropy: p.genus.map(|g| assembled_entropy(g, s, &p.tube_wrists)).transpose()?,
        wrist_sum: p.tube_wrists.iter().sum(),
        wrist_sum_cap: (!p.tube_volumes.is_empty()).then(|| wrist_sum_cap(p.mu, p.systole, &p.tube_volumes)),
        tube_volume_floor: 4.0 * PI / 3.0 * e.powi(3),
        short_systole: p.mu / 4.0,
        bicollar_width: e,
        curve_caps: curve_caps(p.epsilon, p.vol_w, &p.tube_wrists),
        arithmetic_constant: p.dmu.map(|d| arithmetic_constant(p.mu, Some(d))).transpose()?,
    })
}

/// `a + b sqrt(t)` over 2, kept exact for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSurd {
    pub a: i128,
    pub b: i128,
    pub radicand: i128,
    pub denom: i128,
}

impl QuadraticSurd {
    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.radicand as f64).sqrt()) / self.denom as f64
    }
}

impl std::fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let root = match (self.b, self.radicand) {
            (0, _) | (_, 0) => String::new(),
            (b, 1) => format!("{:+}", b),
            (1, t) => format!("+√{}", t),
            (-1, t) => format!("-√{}", t),
            (b, t) => format!("{:+}√{}", b, t),
        };
        let num = if root.is_empty() {
            format!("{}", self.a)
        } else if self.a == 0 {
            root.trim_start_matches('+').to_string()
        } else {
            format!("{}{}", self.a, root)
        };
        if self.denom == 1 {
            write!(f, "{}", num)
        } else if root.is_empty() {
            write!(f, "{}/{}", num, self.denom)
        } else {
            write!(f, "({})/{}", num, self.denom)
        }
    }
}

/// `(p + sign * sqrt(q)) / 2` in lowest terms.
fn half_surd(p: i128, sign: i128, q: i128) -> QuadraticSurd {
    let mut s = 1i128;
    let mut t = q;
    let mut f = 2i128;
    while f * f <= t {
        while t % (f * f) == 0 {
            t /= f * f;
            s *= f;
        }
        f += 1;
    }
    let (mut a, mut b, mut den) = (p, sign * s, 2i128);
    if t == 1 {
        a += b;
        b = 0;
    }
    if q == 0 {
        b = 0;
    }
    if a % 2 == 0 && b % 2 == 0 {
        a /= 2;
        b /= 2;
        den = 1;
    }
    QuadraticSurd { a, b, radicand: if b == 0 { 1 } else { t }, denom: den }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PennerAsymptotics {
    pub wrist: f64,
    pub systole: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PennerReport {
    pub n: u64,
    pub genus: u32,
    pub homology_matrix: IntegerMatrix,
    pub eigenvalues: [QuadraticSurd; 2],
    pub spectral_radius: f64,
    pub entropy_floor: f64,
    pub asymptotics: Option<PennerAsymptotics>,
}

/// Action on first homology of the `n`-th monodromy in a genus `g` surface.
pub fn penner_matrix(n: u64, g: u32) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(2 * g as usize);
    let n = BigInt::from(n);
    m[(0, 0)] = &n + 1;
    m[(0, 1)] = n;
    m[(1, 0)] = BigInt::from(1);
    m[(1, 1)] = BigInt::from(1);
    m
}

pub fn penner_family(n: u64, genus: u32, asympt: Option<(f64, f64)>) -> Result<PennerReport, BoundsError> {
    if genus < 2 {
        return Err(BoundsError::Genus(genus));
    }
    let p = n as i128 + 2;
    let q = (n as i128) * (n as i128) + 4 * n as i128;
    let hi = half_surd(p, 1, q);
    let lo = half_surd(p, -1, q);
    let rho = (p as f64 + (q as f64).sqrt()) / 2.0;
    let asymptotics = match asympt {
        Some((w, v)) => {
            positive(w, "w_inf")?;
            positive(v, "vol_inf")?;
            let nf = n as f64;
            Some(PennerAsymptotics { wrist: nf * w, systole: v * 4.0 * PI / (w * w) / (nf * nf) })
        }
        None => None,
    };
    Ok(PennerReport {
        n,
        genus,
        homology_matrix: penner_matrix(n, genus),
        eigenvalues: [hi, lo],
        spectral_radius: rho,
        entropy_floor: rho.ln(),
        asymptotics,
    })
}
