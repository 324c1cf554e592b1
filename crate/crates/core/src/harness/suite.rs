//! The built-in verification suite: a fixed list of independent jobs, each
//! producing one verdict with a few key/value details.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cubical::shapes::{box_boundary, square_loop};
use crate::cubical::{close_under_faces, CubicalComplex};
use crate::error::Result;
use crate::grid::GridSpec;
use crate::harness::audits::*;
use crate::harness::scenario::{scenario_empty, scenario_products, scenario_shell, Scenario};
use crate::mayer_vietoris::audit_complexes;
use crate::quadratic::{QuadraticForm, QuadraticPoly};
use crate::rational::{self, int, ratio};
use crate::Verdict;

/// Outcome of one suite job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub name: String,
    pub verdict: Verdict,
    pub details: Vec<(String, String)>,
}

type JobFn = Box<dyn Fn() -> Result<SuiteEntry> + Send + Sync>;
type ScenarioFn = fn() -> Result<Scenario>;

pub struct SuiteJob {
    pub name: String,
    run: JobFn,
}

impl SuiteJob {
    fn new(name: impl Into<String>, run: impl Fn() -> Result<SuiteEntry> + Send + Sync + 'static) -> Self {
        SuiteJob {
            name: name.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> Result<SuiteEntry> {
        (self.run)()
    }
}

impl core::fmt::Debug for SuiteJob {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SuiteJob").field("name", &self.name).finish()
    }
}

fn entry(name: &str, verdict: Verdict, details: Vec<(&str, String)>) -> SuiteEntry {
    SuiteEntry {
        name: name.to_string(),
        verdict,
        details: details.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    }
}

fn bound_job(name: String, sc: ScenarioFn, grid: bool) -> SuiteJob {
    let label = name.clone();
    SuiteJob::new(name, move || {
        let sc = sc()?;
        let source = if grid {
            BettiSource::Grid(sc.grid.clone())
        } else {
            BettiSource::Oracle
        };
        let r = bound_audit(&sc, &source)?;
        let bounds: Vec<String> = r.rows.iter().map(|row| rational::to_string(&row.bound)).collect();
        Ok(entry(
            &label,
            r.overall,
            vec![
                ("betti", r.betti.to_string()),
                ("bounds", bounds.join(",")),
                (
                    "total",
                    format!("{} <= {}", r.total.betti, rational::to_string(&r.total.bound)),
                ),
            ],
        ))
    })
}

fn lifted_job(name: &str, sc: ScenarioFn, deform: bool, seed: u64) -> SuiteJob {
    let label = name.to_string();
    SuiteJob::new(name, move || {
        let sc = sc()?;
        let params = DeformationParams::default();
        let spec = lifted_grid(sc.k, &params, 20)?;
        if deform {
            let t = vec![int(0), params.delta().clone()];
            let r = deformation_audit(&sc, &params, &t, &spec, seed)?;
            let samples: Vec<String> = r
                .samples
                .iter()
                .map(|(t, b)| format!("t={}:{}", rational::to_string(t), b))
                .collect();
            Ok(entry(&label, r.verdict, vec![("samples", samples.join(" "))]))
        } else {
            let r = double_cover_audit(&sc, &params, &spec)?;
            Ok(entry(
                &label,
                r.verdict,
                vec![("base", r.base.to_string()), ("lifted", r.lifted.to_string())],
            ))
        }
    })
}

fn smith_job(name: &str, form: fn() -> QuadraticPoly, tau_cells: i64) -> SuiteJob {
    let label = name.to_string();
    SuiteJob::new(name, move || {
        let h = ratio(1, 10);
        let spec = GridSpec::cube(3, ratio(-6, 5), ratio(6, 5), h.clone())?;
        let tau = if tau_cells == 0 {
            ratio(1, 100)
        } else {
            h * int(tau_cells)
        };
        let r = smith_audit(&[form()], &int(1), &spec, &tau)?;
        Ok(entry(
            &label,
            r.verdict,
            vec![
                ("sphere_betti", r.sphere_betti.to_string()),
                ("projective_total", r.projective_total.to_string()),
                ("complex_total", r.complex_total.to_string()),
            ],
        ))
    })
}

fn mv_job(name: &str, pieces: fn() -> Vec<CubicalComplex>) -> SuiteJob {
    let label = name.to_string();
    SuiteJob::new(name, move || {
        let checks = audit_complexes(&pieces(), 1)?;
        let detail: Vec<String> = checks
            .iter()
            .map(|c| format!("b{}={}<={}", c.degree, c.union_betti, c.bound))
            .collect();
        Ok(entry(
            &label,
            Verdict::all(checks.iter().map(|c| c.verdict)),
            vec![("checks", detail.join(" "))],
        ))
    })
}

/// Circles `z = const` on the surface of the `[0,6]^3` box.
fn sphere_with_circles(heights: &'static [i64]) -> Result<(CubicalComplex, CubicalComplex)> {
    let sphere = box_boundary(&[0, 0, 0], &[6, 6, 6]);
    let cells: Vec<_> = sphere
        .cells(1)
        .iter()
        .filter(|c| heights.iter().any(|&z| c.doubled()[2] == 2 * z))
        .cloned()
        .collect();
    let a = close_under_faces(3, cells)?;
    Ok((sphere, a))
}

fn alexander_job(name: &str, heights: &'static [i64]) -> SuiteJob {
    let label = name.to_string();
    SuiteJob::new(name, move || {
        let (sphere, a) = sphere_with_circles(heights)?;
        let r = alexander_duality_audit(&sphere, &a)?;
        Ok(entry(
            &label,
            r.verdict,
            vec![
                ("complement_reduced", format!("{:?}", r.complement_reduced)),
                ("dual_reduced", format!("{:?}", r.dual_reduced)),
            ],
        ))
    })
}

fn cone() -> QuadraticPoly {
    QuadraticForm::diagonal(&[int(1), int(1), int(-1)]).to_poly()
}

fn definite() -> QuadraticPoly {
    QuadraticForm::sum_of_squares(3).to_poly()
}

/// All built-in jobs in a fixed order. `seed` drives the perturbation
/// families of the deformation jobs.
pub fn builtin_suite(seed: u64) -> Vec<SuiteJob> {
    let scenarios: [(&str, ScenarioFn); 6] = [
        ("products-1", || scenario_products(1)),
        ("products-2", || scenario_products(2)),
        ("products-3", || scenario_products(3)),
        ("products-4", || scenario_products(4)),
        ("shell-2", || scenario_shell(2, &ratio(1, 2), &int(1))),
        ("shell-3", || scenario_shell(3, &ratio(1, 2), &int(1))),
    ];
    let mut jobs = Vec::new();
    for (name, sc) in scenarios {
        jobs.push(bound_job(format!("bound/oracle/{name}"), sc, false));
        jobs.push(bound_job(format!("bound/grid/{name}"), sc, true));
    }
    jobs.push(smith_job("smith/cone", cone, 2));
    jobs.push(smith_job("smith/definite", definite, 0));
    jobs.push(lifted_job(
        "double-cover/products-2",
        || scenario_products(2),
        false,
        seed,
    ));
    jobs.push(lifted_job(
        "double-cover/shell-2",
        || scenario_shell(2, &ratio(1, 2), &int(1)),
        false,
        seed,
    ));
    jobs.push(lifted_job(
        "double-cover/empty-2",
        || scenario_empty(2),
        false,
        seed,
    ));
    jobs.push(lifted_job(
        "deformation/products-2",
        || scenario_products(2),
        true,
        seed,
    ));
    jobs.push(lifted_job(
        "deformation/shell-2",
        || scenario_shell(2, &ratio(1, 2), &int(1)),
        true,
        seed,
    ));
    jobs.push(mv_job("mayer-vietoris/wedge", || {
        vec![square_loop([0, 0], 1), square_loop([1, 1], 1)]
    }));
    jobs.push(mv_job("mayer-vietoris/disjoint", || {
        vec![square_loop([0, 0], 1), square_loop([3, 0], 1)]
    }));
    jobs.push(mv_job("mayer-vietoris/three-set", || {
        vec![
            square_loop([0, 0], 2),
            square_loop([1, 1], 2),
            square_loop([2, 0], 2),
        ]
    }));
    jobs.push(alexander_job("alexander/equator", &[3]));
    jobs.push(alexander_job("alexander/two-circles", &[1, 5]));
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_ordered() {
        let jobs = builtin_suite(0);
        let mut names: Vec<_> = jobs.iter().map(|j| j.name.clone()).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn cheap_jobs_pass() {
        for job in builtin_suite(0) {
            if job.name.starts_with("mayer-vietoris")
                || job.name.starts_with("alexander")
                || job.name.starts_with("bound/oracle")
            {
                let e = job.run().unwrap();
                assert_eq!(e.verdict, Verdict::Pass, "{}: {:?}", e.name, e.details);
            }
        }
    }
}
