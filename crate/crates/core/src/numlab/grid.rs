//! Square-grid operator lab with order-8 central differences.
//!
//! Grids are centered on the wave packet, with small incommensurate offsets
//! `h/3` and `h/7` so no node lands on a coordinate axis or on the origin
//! (radial coefficients like `x1 / r` stay finite everywhere). Derivative
//! stencils are zero padded: a packet must decay below the rejection
//! threshold well inside the edge, which [`apply_on_grid`] enforces.

use num::complex::Complex64;

use super::NumlabError;
use crate::opalg::{OpWord, OperatorExpr, ParamVals};
use crate::par::{for_each_chunk_mut, ExecMode};

/// Offsets and weights of the order-8 first-derivative stencil (per `1/h`).
const STENCIL: [(isize, f64); 8] = [
    (-4, 1.0 / 280.0),
    (-3, -4.0 / 105.0),
    (-2, 1.0 / 5.0),
    (-1, -4.0 / 5.0),
    (1, 4.0 / 5.0),
    (2, -1.0 / 5.0),
    (3, 4.0 / 105.0),
    (4, -1.0 / 280.0),
];

/// Cells next to the edge whose mass must be negligible. Covers the stencil
/// reach of the deepest composition chains used by the suites.
const BOUNDARY_MARGIN: usize = 16;
const BOUNDARY_LIMIT: f64 = 1e-10;

/// Uniform square grid: `x_i = x0 + i h`, `y_j = y0 + j h`, `n` per side.
#[derive(Clone, Copy, Debug)]
pub struct Grid2D {
    pub n: usize,
    pub h: f64,
    pub x0: f64,
    pub y0: f64,
}

impl Grid2D {
    /// Grid of half-width `half_extent` around `center`.
    pub fn centered(center: (f64, f64), half_extent: f64, h: f64) -> Grid2D {
        let n = (2.0 * half_extent / h).round() as usize;
        Grid2D {
            n,
            h,
            x0: center.0 - half_extent + h / 3.0,
            y0: center.1 - half_extent + h / 7.0,
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.h
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Complex samples in row-major layout, `data[i * n + j]` at `(x_i, y_j)`.
#[derive(Clone, Debug)]
pub struct Field2D {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl Field2D {
    pub fn zeros(grid: &Grid2D) -> Field2D {
        Field2D {
            n: grid.n,
            data: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Discrete L2 norm, `sqrt(h^2 sum |f|^2)`.
    pub fn norm(&self, h: f64) -> f64 {
        let s: f64 = self.data.iter().map(|z| z.norm_sqr()).sum();
        (s * h * h).sqrt()
    }

    pub fn sub(&self, other: &Field2D) -> Field2D {
        assert_eq!(self.n, other.n, "field sizes must match");
        Field2D {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Fraction of the squared mass within `margin` cells of any edge.
    pub fn boundary_mass_fraction(&self, margin: usize) -> f64 {
        let n = self.n;
        let mut edge = 0.0;
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                let m = self.data[i * n + j].norm_sqr();
                total += m;
                let near = i < margin || j < margin || i >= n - margin || j >= n - margin;
                if near {
                    edge += m;
                }
            }
        }
        if total == 0.0 {
            0.0
        } else {
            edge / total
        }
    }
}

/// A Gaussian test state `exp(-|x - c|^2 / (2 sigma^2))`.
#[derive(Clone, Copy, Debug)]
pub struct Packet {
    pub center: (f64, f64),
    pub sigma: f64,
}

/// Two off-axis packets in different quadrants. Placement balances two error
/// sources: inverse-power words amplify whatever packet tail reaches the
/// origin (suppressing it below the confirmation gate needs center distance
/// above ~3.3 at this sigma), while curvature words grow like x^3 and x^4 and
/// punish centers placed farther out than necessary.
pub fn default_packets() -> Vec<Packet> {
    vec![
        Packet {
            center: (3.2, 1.9),
            sigma: 0.5,
        },
        Packet {
            center: (-2.8, 3.3),
            sigma: 0.5,
        },
    ]
}

/// Grid defaults used by the numeric suites. The step keeps the stencil
/// error of the harshest composite words (inverse powers stacked on cubic
/// curvature factors) a factor of three under the confirmation gate; the
/// extent keeps packet tails at the boundary below 1e-40 of the peak.
#[derive(Clone, Copy, Debug)]
pub struct GridCfg {
    pub h: f64,
    pub half_extent: f64,
}

impl Default for GridCfg {
    fn default() -> Self {
        GridCfg {
            h: 0.0175,
            half_extent: 7.0,
        }
    }
}

pub fn gaussian_packet(grid: &Grid2D, packet: &Packet) -> Field2D {
    let mut field = Field2D::zeros(grid);
    let (cx, cy) = packet.center;
    let inv2s2 = 1.0 / (2.0 * packet.sigma * packet.sigma);
    let n = grid.n;
    let g = *grid;
    for_each_chunk_mut(ExecMode::Sequential, &mut field.data, n, |i, row| {
        let dx = g.x(i) - cx;
        for (j, v) in row.iter_mut().enumerate() {
            let dy = g.y(j) - cy;
            *v = Complex64::new((-(dx * dx + dy * dy) * inv2s2).exp(), 0.0);
        }
    });
    field
}

/// One partial derivative by the order-8 stencil, zero padded at the edges.
fn derivative(grid: &Grid2D, f: &Field2D, axis: usize, mode: ExecMode) -> Field2D {
    let n = grid.n;
    let inv_h = 1.0 / grid.h;
    let src = &f.data;
    let mut out = Field2D::zeros(grid);
    for_each_chunk_mut(mode, &mut out.data, n, |i, row| {
        for (s, w) in STENCIL {
            match axis {
                0 => {
                    let ii = i as isize + s;
                    if ii < 0 || ii >= n as isize {
                        continue;
                    }
                    let base = ii as usize * n;
                    for (j, v) in row.iter_mut().enumerate() {
                        *v += w * src[base + j];
                    }
                }
                _ => {
                    let lo = (-s).max(0) as usize;
                    let hi = (n as isize - s.max(0)) as usize;
                    let base = i * n;
                    for j in lo..hi {
                        row[j] += w * src[base + (j as isize + s) as usize];
                    }
                }
            }
        }
        for v in row.iter_mut() {
            *v *= inv_h;
        }
    });
    out
}

fn check_boundary(field: &Field2D) -> Result<(), NumlabError> {
    let fraction = field.boundary_mass_fraction(BOUNDARY_MARGIN);
    if fraction > BOUNDARY_LIMIT {
        return Err(NumlabError::BoundaryMass {
            fraction,
            margin: BOUNDARY_MARGIN,
            limit: BOUNDARY_LIMIT,
        });
    }
    Ok(())
}

/// Apply a canonicalized operator to a field. Momentum factors act first
/// (repeated stencil applications), then each term's radial coefficient and
/// scalar multiply pointwise. Rejects fields with nonnegligible edge mass:
/// zero padding would silently corrupt them.
pub fn apply_on_grid(
    expr: &OperatorExpr,
    vals: &ParamVals,
    grid: &Grid2D,
    field: &Field2D,
    mode: ExecMode,
) -> Result<Field2D, NumlabError> {
    if field.data.len() != grid.len() {
        return Err(NumlabError::SizeMismatch {
            expected: grid.len(),
            found: field.data.len(),
        });
    }
    if grid.n < 4 * BOUNDARY_MARGIN {
        return Err(NumlabError::GridTooSmall {
            min: 4 * BOUNDARY_MARGIN,
            got: grid.n,
        });
    }
    check_boundary(field)?;
    let terms = expr.eval_coeffs(vals);
    // Derivative cache: path (0,0) -> (a,0) -> (a,b), shared across terms.
    let mut memo: std::collections::BTreeMap<(u32, u32), Field2D> =
        std::collections::BTreeMap::new();
    memo.insert((0, 0), field.clone());
    let mut acc = Field2D::zeros(grid);
    let n = grid.n;
    for (key, cval) in terms {
        for a in 1..=key.p1 {
            if !memo.contains_key(&(a, 0)) {
                let prev = memo.get(&(a - 1, 0)).expect("chain built in order");
                let d = derivative(grid, prev, 0, mode);
                memo.insert((a, 0), d);
            }
        }
        for b in 1..=key.p2 {
            if !memo.contains_key(&(key.p1, b)) {
                let prev = memo.get(&(key.p1, b - 1)).expect("chain built in order");
                let d = derivative(grid, prev, 1, mode);
                memo.insert((key.p1, b), d);
            }
        }
        let base = memo.get(&(key.p1, key.p2)).expect("just built");
        // p^a = (-i d)^a
        let phase = match (key.p1 + key.p2) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        let scalar = cval * phase;
        let rad = key.rad;
        let g = *grid;
        let src = &base.data;
        for_each_chunk_mut(mode, &mut acc.data, n, |i, row| {
            let x = g.x(i);
            for (j, v) in row.iter_mut().enumerate() {
                *v += scalar * rad.eval(x, g.y(j)) * src[i * n + j];
            }
        });
    }
    Ok(acc)
}

/// Apply a word: each term's factor chain composes right to left, exactly as
/// the symbolic expansion multiplies, but only ever through grid
/// applications of whole generators.
pub fn apply_word(
    word: &OpWord,
    vals: &ParamVals,
    grid: &Grid2D,
    field: &Field2D,
    mode: ExecMode,
) -> Result<Field2D, NumlabError> {
    let mut acc = Field2D::zeros(grid);
    for term in &word.terms {
        let mut cur = field.clone();
        for factor in term.factors.iter().rev() {
            cur = apply_on_grid(factor, vals, grid, &cur, mode)?;
        }
        let c = term.coeff.eval(vals);
        for (a, b) in acc.data.iter_mut().zip(&cur.data) {
            *a += c * b;
        }
    }
    Ok(acc)
}

/// Max over packets of `|lhs psi - rhs psi| / |psi|`, each packet on its own
/// centered grid.
pub fn word_residual_numeric(
    lhs: &OpWord,
    rhs: &OpWord,
    vals: &ParamVals,
    packets: &[Packet],
    cfg: &GridCfg,
    mode: ExecMode,
) -> Result<f64, NumlabError> {
    let mut worst: f64 = 0.0;
    for packet in packets {
        let grid = Grid2D::centered(packet.center, cfg.half_extent, cfg.h);
        let psi = gaussian_packet(&grid, packet);
        let l = apply_word(lhs, vals, &grid, &psi, mode)?;
        let r = apply_word(rhs, vals, &grid, &psi, mode)?;
        let residual = l.sub(&r).norm(grid.h) / psi.norm(grid.h);
        worst = worst.max(residual);
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// Residual of `[A, B] = rhs` (or the anticommutator variant) measured on
/// wave packets. The left side is composed as `A(B psi) -+ B(A psi)`; the
/// right side is applied as one canonical expression.
#[allow(clippy::too_many_arguments)]
pub fn bracket_residual_numeric(
    a: &OperatorExpr,
    b: &OperatorExpr,
    rhs: &OperatorExpr,
    kind: BracketKind,
    packets: &[Packet],
    vals: &ParamVals,
    cfg: &GridCfg,
    mode: ExecMode,
) -> Result<f64, NumlabError> {
    let lhs = match kind {
        BracketKind::Commutator => OpWord::commutator(a, b),
        BracketKind::Anticommutator => OpWord::anticommutator(a, b),
    };
    word_residual_numeric(&lhs, &OpWord::from_expr(rhs), vals, packets, cfg, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SystemClass;
    use crate::opalg::{generator, hamiltonian, identities, Coeff};

    fn vals_coulomb() -> ParamVals {
        ParamVals {
            m_eff: 1.0,
            coulomb: 1.0,
            omega_eff: 1.0,
            curvature: 0.0,
        }
    }

    fn test_cfg() -> GridCfg {
        GridCfg {
            h: 0.05,
            half_extent: 7.0,
        }
    }

    fn packet() -> Packet {
        Packet {
            center: (2.5, 1.5),
            sigma: 0.5,
        }
    }

    #[test]
    fn derivative_matches_analytic_gradient() {
        let p = packet();
        let grid = Grid2D::centered(p.center, 7.0, 0.05);
        let psi = gaussian_packet(&grid, &p);
        let d = derivative(&grid, &psi, 0, ExecMode::Sequential);
        let inv_s2 = 1.0 / (p.sigma * p.sigma);
        let n = grid.n;
        let mut worst: f64 = 0.0;
        for i in 20..n - 20 {
            for j in 20..n - 20 {
                let want = -(grid.x(i) - p.center.0) * inv_s2 * psi.data[i * n + j].re;
                worst = worst.max((d.data[i * n + j].re - want).abs());
            }
        }
        assert!(worst < 1e-7, "worst derivative error {worst}");
    }

    #[test]
    fn grid_shifts_commute_exactly() {
        let p = packet();
        let grid = Grid2D::centered(p.center, 7.0, 0.1);
        let psi = gaussian_packet(&grid, &p);
        let dxy = derivative(
            &grid,
            &derivative(&grid, &psi, 0, ExecMode::Sequential),
            1,
            ExecMode::Sequential,
        );
        let dyx = derivative(
            &grid,
            &derivative(&grid, &psi, 1, ExecMode::Sequential),
            0,
            ExecMode::Sequential,
        );
        let diff = dxy.sub(&dyx).norm(grid.h);
        assert!(diff < 1e-12, "got {diff}");
    }

    #[test]
    fn canonical_product_matches_composition() {
        // L H as one canonicalized expression vs grid composition of L and H.
        let vals = vals_coulomb();
        let l = generator(SystemClass::PlaneCoulomb, "L").unwrap();
        let h = hamiltonian(SystemClass::PlaneCoulomb);
        let lh = l.mul(&h);
        let p = packet();
        let grid = Grid2D::centered(p.center, 7.0, 0.05);
        let psi = gaussian_packet(&grid, &p);
        let via_product = apply_on_grid(&lh, &vals, &grid, &psi, ExecMode::Sequential).unwrap();
        let via_chain = apply_on_grid(
            &l,
            &vals,
            &grid,
            &apply_on_grid(&h, &vals, &grid, &psi, ExecMode::Sequential).unwrap(),
            ExecMode::Sequential,
        )
        .unwrap();
        let rel = via_product.sub(&via_chain).norm(grid.h) / psi.norm(grid.h);
        assert!(rel < 1e-6, "canonical vs composed disagree: {rel}");
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise_per_mode() {
        let vals = vals_coulomb();
        let h = hamiltonian(SystemClass::PlaneCoulomb);
        let p = packet();
        let grid = Grid2D::centered(p.center, 7.0, 0.1);
        let psi = gaussian_packet(&grid, &p);
        let seq = apply_on_grid(&h, &vals, &grid, &psi, ExecMode::Sequential).unwrap();
        let par = apply_on_grid(&h, &vals, &grid, &psi, ExecMode::Parallel).unwrap();
        // Same per-point operation order in both modes.
        assert_eq!(seq.data, par.data);
    }

    #[test]
    fn angular_momentum_conservation_residual_is_small() {
        let vals = vals_coulomb();
        let l = generator(SystemClass::PlaneCoulomb, "L").unwrap();
        let h = hamiltonian(SystemClass::PlaneCoulomb);
        let res = bracket_residual_numeric(
            &l,
            &h,
            &OperatorExpr::zero(),
            BracketKind::Commutator,
            &[packet()],
            &vals,
            &test_cfg(),
            ExecMode::Parallel,
        )
        .unwrap();
        assert!(res < 1e-5, "[L, H] residual {res}");
    }

    #[test]
    fn weyl_relation_and_convergence_order() {
        // [x1, p1] = i. The residual is pure truncation error, so halving h
        // must shrink it by about 2^8 until the rounding floor near 1e-10.
        let vals = vals_coulomb();
        let at = |h: f64| {
            bracket_residual_numeric(
                &OperatorExpr::x1(),
                &OperatorExpr::p1(),
                &OperatorExpr::scalar(Coeff::i()),
                BracketKind::Commutator,
                &[packet()],
                &vals,
                &GridCfg {
                    h,
                    half_extent: 7.0,
                },
                ExecMode::Sequential,
            )
            .unwrap()
        };
        let coarse = at(0.05);
        let fine = at(0.025);
        assert!(coarse < 2e-8, "[x1, p1] residual {coarse} at h=0.05");
        assert!(fine < 1e-8, "[x1, p1] residual {fine} at h=0.025");
        assert!(
            fine < 1e-10 || coarse / fine >= 128.0,
            "ratio {}",
            coarse / fine
        );
    }

    #[test]
    fn trivial_self_commutator_vanishes() {
        let vals = vals_coulomb();
        let h = hamiltonian(SystemClass::PlaneCoulomb);
        let res = bracket_residual_numeric(
            &h,
            &h,
            &OperatorExpr::zero(),
            BracketKind::Commutator,
            &[packet()],
            &vals,
            &GridCfg {
                h: 0.1,
                half_extent: 7.0,
            },
            ExecMode::Sequential,
        )
        .unwrap();
        assert_eq!(res, 0.0, "[A, A] must cancel exactly");
    }

    #[test]
    fn near_origin_packet_residual_plateaus() {
        // A packet at distance ~2.2 from the origin leaves an e^{-10} tail
        // on the r^{-3} singularity of the Runge-Lenz terms; the residual
        // floor (~5e-5) does not improve with h. Documented limitation: test
        // packets must keep >= 2.8 distance for 1e-6 residuals.
        let vals = vals_coulomb();
        let r1 = generator(SystemClass::PlaneCoulomb, "R1").unwrap();
        let r2 = generator(SystemClass::PlaneCoulomb, "R2").unwrap();
        let rhs = identities(SystemClass::PlaneCoulomb)
            .into_iter()
            .find(|i| i.name == "commutator_R1_R2")
            .unwrap()
            .checks[0]
            .rhs
            .clone();
        let near = Packet {
            center: (2.0, 1.0),
            sigma: 0.5,
        };
        let res = word_residual_numeric(
            &OpWord::commutator(&r1, &r2),
            &rhs,
            &vals,
            &[near],
            &test_cfg(),
            ExecMode::Parallel,
        )
        .unwrap();
        assert!(res > 1e-6, "plateau unexpectedly gone: {res}");
        assert!(res < 5e-4, "plateau grew: {res}");
    }

    #[test]
    fn casimir_word_residual_is_small() {
        let vals = vals_coulomb();
        let casimir = identities(SystemClass::PlaneCoulomb)
            .into_iter()
            .find(|i| i.name == "casimir_so3")
            .unwrap();
        let res = word_residual_numeric(
            &casimir.checks[0].lhs,
            &casimir.checks[0].rhs,
            &vals,
            &[packet()],
            &test_cfg(),
            ExecMode::Parallel,
        )
        .unwrap();
        assert!(res < 1e-4, "casimir residual {res}");
    }

    #[test]
    fn edge_heavy_field_is_rejected() {
        let p = Packet {
            center: (2.5, 1.5),
            sigma: 0.5,
        };
        let grid = Grid2D::centered(p.center, 7.0, 0.1);
        // Packet parked right at the edge of its own grid.
        let shifted = Packet {
            center: (2.5 + 6.9, 1.5),
            sigma: 0.5,
        };
        let psi = gaussian_packet(&grid, &shifted);
        let h = hamiltonian(SystemClass::PlaneCoulomb);
        let err = apply_on_grid(&h, &vals_coulomb(), &grid, &psi, ExecMode::Sequential);
        assert!(matches!(err, Err(NumlabError::BoundaryMass { .. })));
    }

    #[test]
    fn packet_norm_matches_gaussian_integral() {
        // integral of exp(-d^2/sigma^2) = pi sigma^2, so the L2 norm is
        // sigma sqrt(pi).
        let p = packet();
        let grid = Grid2D::centered(p.center, 7.0, 0.05);
        let psi = gaussian_packet(&grid, &p);
        let want = p.sigma * std::f64::consts::PI.sqrt();
        assert!((psi.norm(grid.h) - want).abs() < 1e-10);
    }

    #[test]
    fn scalar_word_scales_field() {
        let vals = vals_coulomb();
        let p = packet();
        let grid = Grid2D::centered(p.center, 7.0, 0.1);
        let psi = gaussian_packet(&grid, &p);
        let w = OpWord::term(Coeff::from_int(3), vec![]);
        let out = apply_word(&w, &vals, &grid, &psi, ExecMode::Sequential).unwrap();
        let manual: Vec<_> = psi.data.iter().map(|z| 3.0 * z).collect();
        assert_eq!(out.data, manual);
    }
}
