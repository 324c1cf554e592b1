//! Audits comparing computed or known Betti numbers with the bounds and
//! identities used in the proof of the quadratic-inequality bound.
//!
//! Verdict rules: only exact oracle values can produce
//! [`Verdict::Violation`]. Anything derived from a grid approximation is
//! either [`Verdict::Pass`] or [`Verdict::Inconclusive`], the latter with a
//! note suggesting how to refine the parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::bounds::{self, BoundQuery, DegreeSequence};
use crate::cubical::{BettiVector, CubicalComplex};
use crate::error::{domain, Error, Result};
use crate::grid::{grid_complex, sphere_band, sphere_zero_complex, GridSpec};
use crate::harness::scenario::Scenario;
use crate::probe::{ci_probe, ProbeReport};
use crate::quadratic::{is_nonsingular_quadric, random_pd_form, QuadraticForm, QuadraticPoly};
use crate::rational::{self, int, ratio, Rational};
use crate::Verdict;

/// The scale parameters of the lifting construction: `eps` sets the
/// truncation ball (radius `1/eps`) and the lifting sphere (radius `2/eps`),
/// `delta` bounds the perturbation time, `t` is a deformation time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParams {
    eps: Rational,
    delta: Rational,
    t: Rational,
}

impl DeformationParams {
    pub fn new(eps: Rational, delta: Rational, t: Rational) -> Result<Self> {
        if !delta.is_positive() || delta >= eps {
            return Err(domain("need 0 < delta < eps"));
        }
        if t.is_negative() || t > Rational::one() {
            return Err(domain("need 0 <= t <= 1"));
        }
        Ok(DeformationParams { eps, delta, t })
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }
    pub fn delta(&self) -> &Rational {
        &self.delta
    }
    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// Radius `2/eps` of the lifting sphere.
    pub fn sphere_radius(&self) -> Rational {
        int(2) / &self.eps
    }
}

impl Default for DeformationParams {
    /// `eps = 1/10`, `delta = 1/1000`, `t = 0`.
    fn default() -> Self {
        DeformationParams {
            eps: ratio(1, 10),
            delta: ratio(1, 1000),
            t: int(0),
        }
    }
}

/// Where the Betti numbers under audit come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BettiSource {
    Oracle,
    Grid(GridSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub i: usize,
    pub betti: usize,
    pub bound: Rational,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundAuditReport {
    pub scenario: String,
    pub s: usize,
    pub k: usize,
    pub source: BettiSource,
    pub betti: BettiVector,
    pub rows: Vec<BoundRow>,
    /// Total Betti number against the aggregate bound.
    pub total: BoundRow,
    /// Largest `b_i` against `1/2 3^s C(k+1, s)`, when `2 <= s <= k/2`.
    pub simple: Option<BoundRow>,
    pub overall: Verdict,
    pub notes: Vec<String>,
}

fn judge(value: usize, bound: &Rational, exact: bool) -> Verdict {
    if Rational::from_integer(BigInt::from(value)) <= *bound {
        Verdict::Pass
    } else if exact {
        Verdict::Violation
    } else {
        Verdict::Inconclusive
    }
}

/// Compares every `b_i`, `0 <= i <= k-1`, with the per-degree bound and the
/// total with the aggregate bound.
pub fn bound_audit(sc: &Scenario, source: &BettiSource) -> Result<BoundAuditReport> {
    let (s, k) = (sc.s(), sc.k);
    if s > k {
        return Err(domain(format!("bound needs s <= k, got s={s}, k={k}")));
    }
    if s == 0 {
        return Err(domain("bound needs at least one inequality"));
    }
    let (betti, exact) = match source {
        BettiSource::Oracle => {
            let o = sc
                .oracle
                .as_ref()
                .ok_or_else(|| Error::Missing(format!("scenario {} has no oracle", sc.name)))?;
            (o.betti.clone(), true)
        }
        BettiSource::Grid(spec) => (grid_complex(&sc.system, spec)?.betti(), false),
    };
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let bound = bounds::bound_betti(BoundQuery::new(s as u32, k as u32, i as u32)?);
        let b = betti.get(i);
        rows.push(BoundRow {
            i,
            betti: b,
            verdict: judge(b, &bound, exact),
            bound,
        });
    }
    let agg = bounds::bound_aggregate(s as u32, k as u32)?;
    let total_bound = agg.total.expect("1 <= s <= k");
    let total_betti = (0..k).map(|i| betti.get(i)).sum();
    let total = BoundRow {
        i: k,
        betti: total_betti,
        verdict: judge(total_betti, &total_bound, exact),
        bound: total_bound,
    };
    let simple = agg.simple.map(|bound| {
        let (i, b) = (0..k).map(|i| (i, betti.get(i))).max_by_key(|&(_, b)| b).unwrap();
        BoundRow {
            i,
            betti: b,
            verdict: judge(b, &bound, exact),
            bound,
        }
    });
    let overall = Verdict::all(
        rows.iter()
            .chain(core::iter::once(&total))
            .chain(simple.iter())
            .map(|r| r.verdict),
    );
    let mut notes = Vec::new();
    if betti.get(k) != 0 {
        notes.push(format!("b_{k} = {} is outside the audited range", betti.get(k)));
    }
    if overall == Verdict::Inconclusive {
        notes.push("grid Betti numbers exceed a bound; halve the resolution and rerun".into());
    }
    Ok(BoundAuditReport {
        scenario: sc.name.clone(),
        s,
        k,
        source: source.clone(),
        betti,
        rows,
        total,
        simple,
        overall,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmithReport {
    /// Number of forms.
    pub j: usize,
    /// Dimension of the projective space (variables minus one).
    pub k: usize,
    pub sphere_betti: BettiVector,
    pub sphere_total: usize,
    /// Half the sphere total: the real projective zero set seen through its
    /// antipodal double cover.
    pub projective_total: usize,
    /// Total Betti number of the complex complete intersection.
    pub complex_total: BigInt,
    pub probe: Option<ProbeReport>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Smith-inequality check: the real projective zero set of `forms`, modelled
/// on the sphere of radius `radius`, has total Betti number at most that of
/// the complex complete intersection with all degrees 2.
pub fn smith_audit(
    forms: &[QuadraticPoly],
    radius: &Rational,
    spec: &GridSpec,
    tau: &Rational,
) -> Result<SmithReport> {
    if forms.is_empty() {
        return Err(domain("need at least one form"));
    }
    let mut qs = Vec::with_capacity(forms.len());
    for p in forms {
        if p.degree() != Some(2) {
            return Err(domain("smith audit takes quadratic forms only"));
        }
        let q = QuadraticForm::try_from(p)?;
        if !is_nonsingular_quadric(&q) {
            return Err(domain(
                "singular quadric: the form's Gram matrix is not invertible",
            ));
        }
        qs.push(q);
    }
    let n = qs[0].vars();
    let (j, k) = (qs.len(), n - 1);
    let complex_total = bounds::b_ci(j, k, &DegreeSequence::quadrics(j))?;
    let probe = if j >= 2 {
        Some(ci_probe(&qs, 32, 0, 1e-6)?)
    } else {
        None
    };
    let complex = sphere_zero_complex(&qs, radius, spec, tau)?;
    let sphere_betti = complex.betti();
    let sphere_total = sphere_betti.total();
    let projective_total = sphere_total / 2;
    let mut notes = Vec::new();
    let verdict = if sphere_total % 2 == 1 {
        notes.push("odd sphere total breaks antipodal symmetry; refine the grid or adjust tau".into());
        Verdict::Inconclusive
    } else if BigInt::from(projective_total) <= complex_total {
        Verdict::Pass
    } else {
        notes.push("grid total exceeds the complex total; refine the grid or shrink tau".into());
        Verdict::Inconclusive
    };
    Ok(SmithReport {
        j,
        k,
        sphere_betti,
        sphere_total,
        projective_total,
        complex_total,
        probe,
        verdict,
        notes,
    })
}

/// Inequalities cutting the lifted set out of a shell around the sphere of
/// radius `2/eps` in `R^{k+1}`: the sphere band, the double cone over the
/// ball of radius `1/eps` placed at height 1, and the homogenized system.
fn lifted_system(system: &[QuadraticPoly], k: usize, eps: &Rational, spec: &GridSpec) -> Vec<QuadraticPoly> {
    let radius = int(2) / eps;
    let mut out = sphere_band(k + 1, &radius, spec.resolution());
    let inv = Rational::one() / eps;
    // (1/eps)^2 y_{k+1}^2 - |y'|^2 >= 0
    let mut cone = QuadraticPoly::zero(k + 1).with_monomial(k, k, &inv * &inv);
    for i in 0..k {
        cone = cone.with_monomial(i, i, int(-1));
    }
    out.push(cone);
    out.extend(system.iter().map(|p| p.homogenize().to_poly()));
    out
}

/// Grid on `[-(R + 2h), R + 2h]^{k+1}` for the lifting sphere of radius
/// `R = 2/eps`, with `h = R / cells_per_radius`.
pub fn lifted_grid(k: usize, params: &DeformationParams, cells_per_radius: u32) -> Result<GridSpec> {
    let r = params.sphere_radius();
    let h = &r / int(cells_per_radius as i64);
    let half = &r + &h * int(2);
    GridSpec::cube(k + 1, -half.clone(), half, h)
}

fn check_extent(sc: &Scenario, eps: &Rational, notes: &mut Vec<String>) -> bool {
    let inv = Rational::one() / eps;
    match &sc.extent_sq {
        Some(e) if *e < &inv * &inv => true,
        Some(_) => {
            notes.push(format!(
                "eps = {} is too large for this scenario's extent; shrink eps",
                rational::to_string(eps)
            ));
            false
        }
        None => {
            notes.push("scenario extent unknown; truncation by the 1/eps ball is assumed harmless".into());
            true
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleCoverReport {
    pub scenario: String,
    /// Grid Betti numbers of `S` truncated to the ball of radius `1/eps`.
    pub base: BettiVector,
    /// Grid Betti numbers of the lifted set on the sphere of radius `2/eps`.
    pub lifted: BettiVector,
    pub oracle: Option<BettiVector>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn doubled_matches(lifted: &BettiVector, base: &BettiVector) -> bool {
    let n = lifted.len().max(base.len());
    (0..n).all(|i| lifted.get(i) == 2 * base.get(i))
}

/// Lifts `S` (truncated to the ball of radius `1/eps`) to the sphere of
/// radius `2/eps` by central projection of `S x {1}` and its antipode, and
/// checks that every Betti number doubles.
pub fn double_cover_audit(
    sc: &Scenario,
    params: &DeformationParams,
    spec: &GridSpec,
) -> Result<DoubleCoverReport> {
    let k = sc.k;
    if spec.dim() != k + 1 {
        return Err(Error::DimensionMismatch {
            expected: k + 1,
            got: spec.dim(),
        });
    }
    let radius = params.sphere_radius();
    if !spec.contains_ball(&radius) {
        return Err(domain("grid box does not contain the lifting sphere"));
    }
    let mut notes = Vec::new();
    let extent_ok = check_extent(sc, &params.eps, &mut notes);

    let inv = Rational::one() / &params.eps;
    let mut truncated = sc.system.clone();
    truncated.push(QuadraticPoly::norm_squared(k).neg().with_constant(&inv * &inv));
    let base = grid_complex(&truncated, &sc.grid)?.betti();
    let lifted = grid_complex(&lifted_system(&sc.system, k, &params.eps, spec), spec)?.betti();
    let oracle = sc.oracle.as_ref().map(|o| o.betti.clone());

    let mut ok = doubled_matches(&lifted, &base);
    if !ok {
        notes.push("lifted Betti numbers are not twice the base ones; refine the lifting grid".into());
    }
    if let Some(o) = &oracle {
        if !doubled_matches(&lifted, o) {
            ok = false;
            notes.push("lifted Betti numbers are not twice the oracle".into());
        }
    }
    let verdict = if ok && extent_ok {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Ok(DoubleCoverReport {
        scenario: sc.name.clone(),
        base,
        lifted,
        oracle,
        verdict,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationReport {
    pub scenario: String,
    /// `(t, Betti numbers of the perturbed lifted set)`, always starting at
    /// `t = 0`.
    pub samples: Vec<(Rational, BettiVector)>,
    pub constant: bool,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Positive definite forms in `k + 2` variables, scaled so that their
/// dehomogenizations stay below `(eps/2)^2 (|y|^2 + 1)`; on the lifting
/// sphere this keeps them of order one.
pub fn perturbation_family(s: usize, k: usize, eps: &Rational, seed: u64) -> Result<Vec<QuadraticPoly>> {
    (0..s)
        .map(|i| {
            let h = random_pd_form(k + 2, seed.wrapping_add(i as u64))?;
            let trace: Rational = (0..k + 2).map(|d| h.matrix()[d][d].clone()).sum();
            let scale = (eps / int(2)) * (eps / int(2)) / trace;
            Ok(h.dehomogenize().scale(&scale))
        })
        .collect()
}

/// Replaces each `P_i^h` by `(1 - t) P_i^h + t H_i(y, 1)` with a seeded
/// positive definite family `H` and checks that the grid Betti numbers of
/// the lifted set do not move for `t` in `t_values` (each in `[0, delta]`).
pub fn deformation_audit(
    sc: &Scenario,
    params: &DeformationParams,
    t_values: &[Rational],
    spec: &GridSpec,
    seed: u64,
) -> Result<DeformationReport> {
    let k = sc.k;
    if spec.dim() != k + 1 {
        return Err(Error::DimensionMismatch {
            expected: k + 1,
            got: spec.dim(),
        });
    }
    if !spec.contains_ball(&params.sphere_radius()) {
        return Err(domain("grid box does not contain the lifting sphere"));
    }
    if let Some(t) = t_values.iter().find(|t| t.is_negative() || *t > &params.delta) {
        return Err(domain(format!(
            "t = {} outside [0, delta]",
            rational::to_string(t)
        )));
    }
    let mut notes = Vec::new();
    let extent_ok = check_extent(sc, &params.eps, &mut notes);
    let family = perturbation_family(sc.s(), k, &params.eps, seed)?;
    let base = lifted_system(&[], k, &params.eps, spec);

    let mut times: Vec<Rational> = vec![int(0)];
    times.extend(
        t_values
            .iter()
            .filter(|t| !num_traits::Zero::is_zero(*t))
            .cloned(),
    );
    let mut samples = Vec::with_capacity(times.len());
    for t in times {
        let mut system = base.clone();
        for (p, h) in sc.system.iter().zip(&family) {
            system.push(p.homogenize().to_poly().lerp(h, &t)?);
        }
        samples.push((t, grid_complex(&system, spec)?.betti()));
    }
    let constant = samples.windows(2).all(|w| w[0].1 == w[1].1);
    if !constant {
        notes.push("Betti numbers move with t; shrink delta or refine the grid".into());
    }
    notes.push("closed-set grid model stands in for both the open and closed perturbed sets".into());
    Ok(DeformationReport {
        scenario: sc.name.clone(),
        samples,
        constant,
        verdict: if constant && extent_ok {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        },
        notes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlexanderReport {
    pub sphere_dim: usize,
    /// Reduced Betti numbers of the complement, degrees `0..=n-1`.
    pub complement_reduced: Vec<usize>,
    /// Reduced Betti numbers of `A` in the dual degrees `n-1-i`.
    pub dual_reduced: Vec<usize>,
    pub verdict: Verdict,
}

/// Reduced-rank Alexander duality on a cubical `n`-sphere:
/// `rank H~_i(S \ A) = rank H~^{n-1-i}(A)` for `0 <= i <= n-1`. Over Z/2
/// cohomology and homology ranks agree. The complement is modelled by the
/// top cells of `sphere` that avoid `a`.
pub fn alexander_duality_audit(sphere: &CubicalComplex, a: &CubicalComplex) -> Result<AlexanderReport> {
    let n = sphere.top_dim().ok_or_else(|| domain("empty sphere"))?;
    let sb = sphere.betti();
    let is_sphere = (0..=sphere.ambient()).all(|d| sb.get(d) == usize::from(d == 0 || d == n));
    if !is_sphere {
        return Err(domain("ambient complex is not a homology sphere"));
    }
    if a.is_empty() || a.iter().any(|c| !sphere.contains(c)) {
        return Err(domain("A must be a nonempty subcomplex of the sphere"));
    }
    let complement = sphere.complement_of(a)?;
    if complement.is_empty() {
        return Err(domain("A covers the sphere at this resolution"));
    }
    let comp = complement.betti().reduced();
    let ar = a.betti().reduced();
    let complement_reduced: Vec<usize> = (0..n).map(|i| comp.get(i)).collect();
    let dual_reduced: Vec<usize> = (0..n).map(|i| ar.get(n - 1 - i)).collect();
    let verdict = if complement_reduced == dual_reduced {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Ok(AlexanderReport {
        sphere_dim: n,
        complement_reduced,
        dual_reduced,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::close_under_faces;
    use crate::cubical::shapes::box_boundary;
    use crate::harness::scenario::{scenario_empty, scenario_products, scenario_shell};

    #[test]
    fn products_bound_audit() {
        let r = bound_audit(&scenario_products(3).unwrap(), &BettiSource::Oracle).unwrap();
        assert_eq!(r.overall, Verdict::Pass);
        assert_eq!(r.rows[0].betti, 8);
        assert_eq!(r.rows[0].bound, ratio(129, 2));
        let r1 = bound_audit(&scenario_products(1).unwrap(), &BettiSource::Oracle).unwrap();
        assert_eq!(r1.rows[0].bound, ratio(5, 2));
        assert_eq!(r1.overall, Verdict::Pass);
    }

    #[test]
    fn shell_bound_audit() {
        let sc = scenario_shell(2, &ratio(1, 2), &int(1)).unwrap();
        let r = bound_audit(&sc, &BettiSource::Oracle).unwrap();
        assert_eq!(r.rows[1].betti, 1);
        assert_eq!(r.rows[1].bound, ratio(13, 2));
        assert_eq!(r.overall, Verdict::Pass);
    }

    #[test]
    fn fabricated_oracle_violates_but_grid_cannot() {
        let mut sc = scenario_products(1).unwrap();
        sc.oracle.as_mut().unwrap().betti = BettiVector(vec![3, 0]);
        let r = bound_audit(&sc, &BettiSource::Oracle).unwrap();
        assert_eq!(r.overall, Verdict::Violation);
        // a grid that happens to see three components is only inconclusive
        let three = QuadraticPoly::zero(1)
            .with_monomial(0, 0, int(1))
            .with_constant(int(-1));
        let mut g = sc.clone();
        g.system = vec![three];
        g.grid = GridSpec::cube(1, int(-2), int(2), ratio(1, 4)).unwrap();
        let spec = g.grid.clone();
        let r = bound_audit(&g, &BettiSource::Grid(spec)).unwrap();
        assert_eq!(r.rows[0].betti, 2);
        assert_ne!(r.overall, Verdict::Violation);
    }

    #[test]
    fn bound_audit_domain() {
        let sc = scenario_shell(2, &ratio(1, 2), &int(1)).unwrap();
        let mut bad = sc.clone();
        bad.system.push(bad.system[0].clone());
        assert!(matches!(
            bound_audit(&bad, &BettiSource::Oracle),
            Err(Error::Domain(_))
        ));
        let mut no_oracle = sc;
        no_oracle.oracle = None;
        assert!(matches!(
            bound_audit(&no_oracle, &BettiSource::Oracle),
            Err(Error::Missing(_))
        ));
    }

    fn cone() -> QuadraticPoly {
        QuadraticForm::diagonal(&[int(1), int(1), int(-1)]).to_poly()
    }

    #[test]
    fn smith_cone_equality_case() {
        let h = ratio(1, 10);
        let spec = GridSpec::cube(3, ratio(-6, 5), ratio(6, 5), h.clone()).unwrap();
        let r = smith_audit(&[cone()], &int(1), &spec, &(h * int(2))).unwrap();
        assert_eq!(r.sphere_total, 4);
        assert_eq!(r.projective_total, 2);
        assert_eq!(r.complex_total, BigInt::from(2));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn smith_rejects_linear_and_singular() {
        let spec = GridSpec::cube(3, ratio(-6, 5), ratio(6, 5), ratio(1, 5)).unwrap();
        let x3 = QuadraticPoly::zero(3).with_linear(2, int(1));
        assert!(smith_audit(&[x3], &int(1), &spec, &ratio(1, 5)).is_err());
        let double_plane = QuadraticForm::diagonal(&[int(1), int(0), int(0)]).to_poly();
        assert!(smith_audit(&[double_plane], &int(1), &spec, &ratio(1, 5)).is_err());
    }

    #[test]
    fn smith_definite_form_is_empty() {
        let spec = GridSpec::cube(3, ratio(-6, 5), ratio(6, 5), ratio(1, 5)).unwrap();
        let r = smith_audit(
            &[QuadraticForm::sum_of_squares(3).to_poly()],
            &int(1),
            &spec,
            &ratio(1, 100),
        )
        .unwrap();
        assert_eq!(r.sphere_total, 0);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn params_validation() {
        assert!(DeformationParams::new(ratio(1, 10), ratio(1, 10), int(0)).is_err());
        assert!(DeformationParams::new(ratio(1, 10), int(0), int(0)).is_err());
        assert!(DeformationParams::new(ratio(1, 10), ratio(1, 100), int(2)).is_err());
        assert!(DeformationParams::new(ratio(1, 10), ratio(1, 100), ratio(1, 2)).is_ok());
    }

    #[test]
    fn empty_system_lifts_to_two_caps() {
        let sc = scenario_empty(1).unwrap();
        let params = DeformationParams::default();
        let spec = lifted_grid(1, &params, 20).unwrap();
        let r = double_cover_audit(&sc, &params, &spec).unwrap();
        assert_eq!(r.lifted.get(0), 2);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn deformation_rejects_large_t() {
        let sc = scenario_products(1).unwrap();
        let params = DeformationParams::default();
        let spec = lifted_grid(1, &params, 20).unwrap();
        assert!(deformation_audit(&sc, &params, &[ratio(1, 100)], &spec, 0).is_err());
        let r = deformation_audit(&sc, &params, &[int(0)], &spec, 0).unwrap();
        assert_eq!(r.samples.len(), 1);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn alexander_equator() {
        let sphere = box_boundary(&[0, 0, 0], &[4, 4, 4]);
        let eq: Vec<_> = sphere
            .cells(1)
            .iter()
            .filter(|c| c.doubled()[2] == 4)
            .cloned()
            .collect();
        let a = close_under_faces(3, eq).unwrap();
        let r = alexander_duality_audit(&sphere, &a).unwrap();
        assert_eq!(r.complement_reduced, vec![1, 0]);
        assert_eq!(r.dual_reduced, vec![1, 0]);
        assert_eq!(r.verdict, Verdict::Pass);
    }
}
