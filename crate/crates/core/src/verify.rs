//! Seeded property suites. Each suite is pure and draws from its own RNG
//! stream, so suites can run in any order or in parallel and the report is
//! still byte-identical for a given seed.

use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{Configuration, DiskMembership, FiltrationIndex};
use crate::cubes::{block_permutation, CubeTuple};
use crate::gen;
use crate::homology::{
    config_complex, config_homology, homology, monodromy_sign, orientable, smith_normal_form,
    ChainComplex,
};
use crate::perm::Permutation;
use crate::rational::{rat, Rational};
use crate::scanning::{collapse, rho, scan_homotopy, BarSimplex};
use crate::spectral::{cell_report, config_dims_from_dl, snaith_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub operad_cases: usize,
    pub filtration_cases: usize,
    pub tubular_cases: usize,
    pub bar_cases: usize,
    pub scan_cases: usize,
    pub snf_cases: usize,
    /// Degree bound for the Snaith check.
    pub max_degree: usize,
    /// Stage bound for the cell-structure check.
    pub max_rank: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            operad_cases: 500,
            filtration_cases: 500,
            tubular_cases: 200,
            bar_cases: 200,
            scan_cases: 200,
            snf_cases: 200,
            max_degree: 6,
            max_rank: 5,
            format: Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid run configuration: {0}")]
pub struct RunConfigError(pub String);

impl RunConfig {
    pub fn validate(&self) -> Result<(), RunConfigError> {
        let counts = [
            ("operad_cases", self.operad_cases),
            ("filtration_cases", self.filtration_cases),
            ("tubular_cases", self.tubular_cases),
            ("bar_cases", self.bar_cases),
            ("scan_cases", self.scan_cases),
            ("snf_cases", self.snf_cases),
            ("max_degree", self.max_degree),
            ("max_rank", self.max_rank),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(RunConfigError(format!("{name} must be positive")));
        }
        // the configuration model stops at 8 points
        if self.max_rank > 8 {
            return Err(RunConfigError("max_rank must be at most 8".into()));
        }
        if self.max_degree > 8 {
            return Err(RunConfigError("max_degree must be at most 8".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// The first few failures, for diagnosis.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "seed\t{}", self.seed).unwrap();
        for s in &self.suites {
            writeln!(
                out,
                "{}\t{}\t{}",
                s.name,
                if s.passed { "pass" } else { "FAIL" },
                s.cases
            )
            .unwrap();
            for f in &s.failures {
                writeln!(out, "  {f}").unwrap();
            }
        }
        writeln!(
            out,
            "overall\t{}",
            if self.passed() { "pass" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}

pub type SuiteFn = fn(&RunConfig) -> SuiteReport;

/// Suites in report order.
pub const SUITES: [(&str, SuiteFn); 10] = [
    ("operad", operad_suite),
    ("filtration", filtration_suite),
    ("tubular", tubular_suite),
    ("bar", bar_suite),
    ("scanning", scanning_suite),
    ("snf", snf_suite),
    ("config_gate", config_gate_suite),
    ("cells", cells_suite),
    ("snaith", snaith_suite),
    ("orientability", orientability_suite),
];

pub fn run(cfg: &RunConfig) -> Result<Report, RunConfigError> {
    cfg.validate()?;
    Ok(Report {
        seed: cfg.seed,
        suites: SUITES.iter().map(|(_, f)| f(cfg)).collect(),
    })
}

const MAX_FAILURES: usize = 5;

struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn check_result<E: std::fmt::Display>(
        &mut self,
        r: Result<bool, E>,
        what: impl FnOnce() -> String,
    ) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            passed: self.failed == 0,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

fn rng_for(cfg: &RunConfig, suite: &str) -> ChaCha8Rng {
    // independent stream per suite
    let salt = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt)
}

/// Associativity, units and equivariance of cube composition, three levels deep.
pub fn operad_suite(cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("operad");
    let mut rng = rng_for(cfg, "operad");
    for case in 0..cfg.operad_cases {
        let k = rng.gen_range(1..=3);
        let tuple = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=4);
            gen::cube_tuple(rng, k, n)
        };
        let a = tuple(&mut rng);
        let b: Vec<CubeTuple> = (0..a.len()).map(|_| tuple(&mut rng)).collect();
        let total_b: usize = b.iter().map(CubeTuple::len).sum();
        let c: Vec<CubeTuple> = (0..total_b).map(|_| tuple(&mut rng)).collect();
        t.check_result(associative(&a, &b, &c), || {
            format!("case {case}: associativity")
        });
        let ids = vec![CubeTuple::identity(k); a.len()];
        t.check_result(
            CubeTuple::identity(k)
                .compose(std::slice::from_ref(&a))
                .and_then(|l| Ok(l == a && a.compose(&ids)? == a)),
            || format!("case {case}: unit"),
        );
        let sigma = Permutation::random(a.len(), &mut rng);
        t.check_result(equivariant(&a, &b, &sigma), || {
            format!("case {case}: equivariance")
        });
    }
    t.finish()
}

fn associative(
    a: &CubeTuple,
    b: &[CubeTuple],
    c: &[CubeTuple],
) -> Result<bool, crate::cubes::CubeError> {
    let left = a.compose(b)?.compose(c)?;
    let mut offset = 0;
    let mut inner = Vec::with_capacity(b.len());
    for bi in b {
        inner.push(bi.compose(&c[offset..offset + bi.len()])?);
        offset += bi.len();
    }
    Ok(left == a.compose(&inner)?)
}

fn equivariant(
    a: &CubeTuple,
    b: &[CubeTuple],
    sigma: &Permutation,
) -> Result<bool, crate::cubes::CubeError> {
    let left = a.permute(sigma)?.compose(b)?;
    let inv = sigma.inverse();
    let reordered: Vec<CubeTuple> = (0..b.len()).map(|j| b[inv.apply(j)].clone()).collect();
    let sizes: Vec<usize> = reordered.iter().map(CubeTuple::len).collect();
    let right = a
        .compose(&reordered)?
        .permute(&block_permutation(sigma, &sizes))?;
    Ok(left == right)
}

/// `fiber_multiplicity(act(op, parts)) = max_i fiber_multiplicity(parts[i])`.
pub fn filtration_suite(cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("filtration");
    let mut rng = rng_for(cfg, "filtration");
    for case in 0..cfg.filtration_cases {
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let arity = rng.gen_range(1..=4);
        let op = gen::cube_tuple(&mut rng, k, arity);
        let parts: Vec<Configuration> = (0..op.len())
            .map(|_| {
                let n = rng.gen_range(1..=5);
                let pool = rng.gen_range(1..=n);
                gen::configuration(&mut rng, k, m, n, pool)
            })
            .collect();
        let want = parts
            .iter()
            .map(Configuration::fiber_multiplicity)
            .max()
            .unwrap_or(0);
        let r = Configuration::act(&op, &parts).map(|c| {
            c.fiber_multiplicity() == want
                && c.in_filtration(FiltrationIndex(want))
                && c.len() == parts.iter().map(Configuration::len).sum::<usize>()
        });
        t.check_result(r, || format!("case {case}: multiplicity after act"));
    }
    t.finish()
}

/// Multiplicity `r` exactly over the zero section; sphere points lie on the
/// boundary and exponentiate into `F^[r-1]`.
pub fn tubular_suite(cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("tubular");
    let mut rng = rng_for(cfg, "tubular");
    for case in 0..cfg.tubular_cases {
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let r = rng.gen_range(1..=5);
        let p = gen::tubular_point(&mut rng, k, m, r);
        t.check_result(
            p.exp_tubular()
                .map(|c| (c.fiber_multiplicity() == r) == p.is_zero()),
            || format!("case {case}: multiplicity r iff w = 0 (k={k}, r={r})"),
        );
        let r = if k == 1 {
            rng.gen_range(4..=5)
        } else {
            rng.gen_range(2..=5)
        };
        let s = gen::sphere_point(&mut rng, k, m, r);
        let on_sphere = s.sphere_disk_membership() == DiskMembership::Boundary;
        t.check_result(
            s.exp_tubular()
                .map(|c| on_sphere && c.in_filtration(FiltrationIndex(r - 1))),
            || format!("case {case}: sphere point (k={k}, r={r})"),
        );
    }
    t.finish()
}

/// Face identities, `f ∘ g = id` and the retraction endpoints.
pub fn bar_suite(cfg: &RunConfig) -> SuiteReport {
    bar_suite_for(cfg, None)
}

/// [`bar_suite`] with the grid dimension fixed to `k` instead of drawn from `1..=2`.
pub fn bar_suite_for(cfg: &RunConfig, k: Option<usize>) -> SuiteReport {
    let mut t = Tally::new("bar");
    let mut rng = rng_for(cfg, "bar");
    for case in 0..cfg.bar_cases {
        let drawn = rng.gen_range(1..=2);
        let k = k.unwrap_or(drawn);
        let m = rng.gen_range(1..=2);
        let degrees: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        let walls = gen::grid_walls(&mut rng, &degrees);
        let n = rng.gen_range(0..=4);
        let window = gen::window_simplex(&mut rng, walls.clone(), m, n);
        let relative = gen::retractable_simplex(&mut rng, walls, m, n);
        for s in [&window, &relative] {
            t.check_result(face_identities(s), || {
                format!("case {case}: face identities ({degrees:?})")
            });
        }
        t.check_result(
            window
                .map_g()
                .and_then(|g| g.map_f())
                .map(|fg| fg == window),
            || format!("case {case}: f∘g = id"),
        );
        t.check_result(
            relative
                .retract_outward(&Rational::one())
                .and_then(|end| Ok(end == relative.map_f()?.map_g()?)),
            || format!("case {case}: retraction at t = 1"),
        );
        t.check_result(
            relative
                .retract_outward(&Rational::zero())
                .map(|s| s == relative),
            || format!("case {case}: retraction at t = 0"),
        );
    }
    t.finish()
}

/// `d_i d_j = d_{j-1} d_i` for `i < j` on one axis, and faces on different
/// axes commute.
fn face_identities(s: &BarSimplex) -> Result<bool, crate::scanning::ScanError> {
    let degrees = s.walls().degrees();
    for (a, &pa) in degrees.iter().enumerate() {
        for j in 0..=pa {
            for i in 0..j {
                if pa < 2 {
                    continue;
                }
                if s.face(a, j)?.face(a, i)? != s.face(a, i)?.face(a, j - 1)? {
                    return Ok(false);
                }
            }
        }
        for (b, &pb) in degrees.iter().enumerate().skip(a + 1) {
            if pa == 0 || pb == 0 {
                continue;
            }
            for i in 0..=pa {
                for j in 0..=pb {
                    if s.face(a, i)?.face(b, j)? != s.face(b, j)?.face(a, i)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `h ∘ ρ = id`, one point per fiber after `ρ`, and the scaling homotopy never
/// raises the filtration index.
pub fn scanning_suite(cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("scanning");
    let mut rng = rng_for(cfg, "scanning");
    for case in 0..cfg.scan_cases {
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let n = rng.gen_range(0..=5);
        let lambda = gen::labeled_config(&mut rng, k, m, n);
        let image = rho(&lambda);
        t.check(image.max_points_per_y() <= 1, || {
            format!("case {case}: ρ image crowded")
        });
        t.check_result(collapse(&image).map(|back| back == lambda), || {
            format!("case {case}: h∘ρ")
        });
        let n = rng.gen_range(1..=6);
        let xi = gen::rel_config(&mut rng, k, m, n);
        let start = xi.fiber_multiplicity();
        for step in 0..10 {
            let time = rat(step, 9);
            t.check_result(
                scan_homotopy(&time, &xi).map(|h| h.fiber_multiplicity() <= start),
                || format!("case {case}: multiplicity at t = {step}/9"),
            );
        }
    }
    t.finish()
}

/// `U · M · V = S` with unimodular `U`, `V` and a divisibility chain on `S`.
pub fn snf_suite(cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("snf");
    let mut rng = rng_for(cfg, "snf");
    for case in 0..cfg.snf_cases {
        let m = gen::sparse_matrix(&mut rng, 40).to_dense();
        let f = smith_normal_form(&m);
        let diag = f.s.diagonal();
        let nonzero: Vec<_> = diag.iter().take_while(|d| !d.is_zero()).collect();
        let ok = f.u.mul(&m).mul(&f.v) == f.s
            && f.s.is_diagonal()
            && f.u.is_unimodular()
            && f.v.is_unimodular()
            && nonzero.iter().all(|d| d.is_positive())
            && diag[nonzero.len()..].iter().all(Zero::is_zero)
            && nonzero.windows(2).all(|w| w[1].is_multiple_of(w[0]));
        t.check(ok, || {
            format!("case {case}: {}x{} matrix", m.rows(), m.cols())
        });
    }
    t.finish()
}

/// The cellular model against known answers and the Dyer–Lashof count, with
/// `∂∘∂ = 0` checked on every complex built.
pub fn config_gate_suite(_cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("config_gate");
    let built = |n, d| config_complex(n, d).map(|c: ChainComplex| homology(&c).betti);
    for n in 1..=6 {
        t.check_result(built(n, 1).map(|b| b == vec![1]), || {
            format!("C_{n}(ℝ) not contractible")
        });
    }
    for d in 1..=4 {
        t.check_result(built(2, d).map(|b| b == vec![1; d]), || {
            format!("C_2(ℝ^{d}) is not ℝP^{}", d - 1)
        });
    }
    for n in 1..=5 {
        for d in 1..=3 {
            // the complex stops at (d-1)(n-1), so vanishing above it is the length check
            t.check_result(
                built(n, d).map(|b| b.len() == (d - 1) * (n - 1) + 1),
                || format!("C_{n}(ℝ^{d}) has classes above the top degree"),
            );
        }
        for d in 2..=3 {
            t.check_result(
                config_homology(n, d).map(|b| b == config_dims_from_dl(n, d)),
                || format!("C_{n}(ℝ^{d}) disagrees with the Dyer–Lashof count"),
            );
        }
    }
    t.finish()
}

/// For `m = 1`: one cell of dimension `k(r-1)` at each stage `r`.
pub fn cells_suite(cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("cells");
    for k in 1..=3 {
        let r = cell_report(k, 1, cfg.max_rank, usize::MAX)
            .map(|c| c.single_cells() && c.stages.len() == cfg.max_rank);
        t.check_result(r, || format!("k = {k}"));
    }
    t.finish()
}

pub fn snaith_suite(cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("snaith");
    for (k, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        t.check_result(snaith_check(k, m, cfg.max_degree).map(|r| r.passed), || {
            format!("(k, m) = ({k}, {m})")
        });
    }
    t.finish()
}

/// The orientability rule against determinants of transpositions.
pub fn orientability_suite(_cfg: &RunConfig) -> SuiteReport {
    let mut t = Tally::new("orientability");
    for k in 1..=2 {
        for m in 2..=3 {
            for r in 1..=4 {
                let preserved = (0..r)
                    .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
                    .all(|(a, b)| monodromy_sign(k, &Permutation::transposition(r, a, b)) == 1);
                t.check(orientable(k, m, r) == preserved, || {
                    format!("(k, m, r) = ({k}, {m}, {r})")
                });
            }
        }
    }
    t.finish()
}
