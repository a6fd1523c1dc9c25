//! Verification suites: each case computes the two sides of an identity
//! independently and records whether they agree exactly.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rat, HSeries, LaurentPoly, MatrixSeries, Rational};
use crate::bridge::{
    hair, hair_nu, jhalf, jhalf_det, matrix_hair, nu_coefficients, nu_wheels, prefactor, qdim, Prefactor,
};
use crate::character::{
    evaluate_at_one, haar_average, is_weyl_invariant, substitute_series, CharacterCombo,
};
use crate::diagram::random::{bead_set, random_bead_diagram, random_leg_diagram, POLY_BEADS, RATIONAL_BEADS};
use crate::diagram::{
    as_flip, holonomy_push, ihx_triple, make_wheel, orientation_reverse, BeadDiagram, Diagram, DiagramCombo,
    HermitianMatrixClass,
};
use crate::error::{Error, Result};
use crate::lie::{CartanVector, LieAlgebraData};
use crate::weight::{
    weight_det_part, weight_full, weight_group, weight_group_exact, weight_lie, weight_matrix_part,
    weight_matrix_part_roots,
};

pub const SUITES: [&str; 11] = [
    "sanity",
    "adexp",
    "wheels",
    "relations",
    "lemma",
    "graph",
    "theorem1",
    "nu",
    "qdim",
    "characters",
    "hair",
];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CaseRecord {
    pub id: String,
    pub inputs: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub equal: bool,
    pub first_difference: Option<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub pass: bool,
    pub cases: Vec<CaseRecord>,
    /// Facts established along the way, such as normalization factors.
    pub notes: Vec<String>,
    /// Wall-clock time; filled only on request so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u128>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.equal)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub algebras: Vec<LieAlgebraData>,
    pub degree: usize,
    pub seed: u64,
    pub timing: bool,
}

struct Recorder {
    cases: Vec<CaseRecord>,
    notes: Vec<String>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            cases: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn series(&mut self, id: String, inputs: String, lhs: &HSeries, rhs: &HSeries) {
        let order = lhs.order().min(rhs.order());
        let (a, b) = (lhs.truncate(order), rhs.truncate(order));
        self.cases.push(CaseRecord {
            id,
            inputs,
            first_difference: a.first_difference(&b),
            equal: a == b,
            lhs: a.coeff_strings(),
            rhs: b.coeff_strings(),
        });
    }

    fn values<T: ToString + PartialEq>(&mut self, id: String, inputs: String, lhs: &[T], rhs: &[T]) {
        let first = lhs.iter().zip(rhs).position(|(a, b)| a != b).or((lhs.len() != rhs.len()).then(|| lhs.len().min(rhs.len())));
        self.cases.push(CaseRecord {
            id,
            inputs,
            lhs: lhs.iter().map(ToString::to_string).collect(),
            rhs: rhs.iter().map(ToString::to_string).collect(),
            equal: first.is_none(),
            first_difference: first,
        });
    }

    fn check(&mut self, id: String, inputs: String, ok: bool) {
        self.values(id, inputs, &[ok], &[true]);
    }

    fn result(&mut self, id: String, inputs: String, r: Result<()>) {
        match r {
            Ok(()) => self.check(id, inputs, true),
            Err(e) => self.values(id, inputs, &[e.to_string()], &["ok".to_string()]),
        }
    }

    fn finish(mut self, suite: &str, started: Option<Instant>) -> VerificationReport {
        self.cases.sort_by(|a, b| a.id.cmp(&b.id));
        VerificationReport {
            suite: suite.to_string(),
            pass: self.cases.iter().all(|c| c.equal),
            cases: self.cases,
            notes: self.notes,
            duration_ms: started.map(|t| t.elapsed().as_millis()),
        }
    }
}

/// Five fixed weights: `ρ`, `2ρ`, the first fundamental weight, a
/// non-dominant integral weight and a half-integral one.
pub fn lambda_grid(rank: usize) -> Vec<CartanVector> {
    let half = Rational::new(1.into(), 2.into());
    let mut mixed = vec![rat(-1); rank];
    mixed[0] = rat(2);
    let mut first = vec![Rational::zero(); rank];
    first[0] = Rational::one();
    vec![
        CartanVector::rho(rank),
        CartanVector::rho(rank).scale(&rat(2)),
        CartanVector(first),
        CartanVector(mixed),
        CartanVector((0..rank).map(|i| &half + rat(i as i64)).collect()),
    ]
}

fn random_lambda(rng: &mut ChaCha8Rng, rank: usize) -> CartanVector {
    CartanVector(
        (0..rank)
            .map(|_| Rational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=2).into()))
            .collect(),
    )
}

/// The matrices of the matrix-part checks: `[1]`, `[t - 1 + t^-1]` and a
/// seeded random 2x2 class.
pub fn test_matrices(seed: u64) -> Vec<HermitianMatrixClass> {
    vec![
        HermitianMatrixClass::identity(1),
        HermitianMatrixClass::one_by_one("t - 1 + t^-1".parse().expect("literal")).expect("unit at one"),
        HermitianMatrixClass::random_2x2(seed),
    ]
}

/// Polynomial-bead diagrams of degree at most 2: fixed thetas plus seeded
/// random ones.
pub fn test_bead_diagrams(seed: u64, count: usize) -> Vec<BeadDiagram> {
    let beads = bead_set(&POLY_BEADS);
    let mut out = vec![
        BeadDiagram::plain_theta(),
        BeadDiagram::theta([beads[1].clone(), beads[0].clone(), beads[0].clone()]),
        BeadDiagram::theta([beads[3].clone(), beads[1].clone(), beads[2].clone()]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let degree = rng.gen_range(1..=2);
        out.push(random_bead_diagram(&mut rng, degree, &beads));
    }
    out
}

fn single<D: Diagram>(d: D) -> DiagramCombo<D> {
    DiagramCombo::single(d, None)
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let started = cfg.timing.then(Instant::now);
    let mut rec = Recorder::new();
    for l in &cfg.algebras {
        match name {
            "sanity" => rec.result(format!("{}/identities", l.name()), l.name().into(), l.check_identities()),
            "adexp" => adexp(&mut rec, l, cfg)?,
            "wheels" => wheels(&mut rec, l, cfg)?,
            "relations" => relations(&mut rec, l, cfg)?,
            "lemma" => lemma(&mut rec, l, cfg)?,
            "graph" => graph(&mut rec, l, cfg)?,
            "theorem1" => theorem1(&mut rec, l, cfg)?,
            "nu" => nu(&mut rec, l, cfg)?,
            "qdim" => qdim_suite(&mut rec, l, cfg)?,
            "characters" => characters(&mut rec, l, cfg)?,
            "hair" => hair_suite(&mut rec, cfg),
            other => return Err(Error::Parse(format!("unknown suite `{other}`"))),
        }
        if name == "hair" {
            break;
        }
    }
    Ok(rec.finish(name, started))
}

fn adexp(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.degree;
    for i in 0..5 {
        let lambda = random_lambda(&mut rng, l.rank());
        let closed = l.torus_adjoint(&lambda, n);
        let ad = l.ad_matrix(&lambda);
        let d = l.dim();
        let mut h_ad = MatrixSeries::zero(d, n);
        for a in 0..d {
            for b in 0..d {
                h_ad.set(a, b, HSeries::monomial(ad[a][b].clone(), 1, n));
            }
        }
        let series = h_ad.exp_nilpotent()?;
        let mut diffs = Vec::new();
        for a in 0..d {
            for b in 0..d {
                if closed.get(a, b) != series.get(a, b) {
                    diffs.push(format!("({a},{b})"));
                }
            }
        }
        rec.values(
            format!("{}/adexp/{i:02}", l.name()),
            format!("lambda={lambda} order={n}"),
            &diffs,
            &[],
        );
    }
    Ok(())
}

fn wheels(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.degree;
    for (i, lambda) in lambda_grid(l.rank()).iter().enumerate() {
        for k in (2..=n.min(6)).step_by(2) {
            let lhs = weight_lie(&single(make_wheel(k)), l, lambda, n)?;
            let sum = l
                .positive_roots()
                .fold(Rational::zero(), |acc, r| acc + l.root_pairing(r, lambda).pow(k as i32));
            let rhs = HSeries::monomial(sum * rat(2), k, n);
            rec.series(format!("{}/w{k}/{i:02}", l.name()), format!("lambda={lambda}"), &lhs, &rhs);
        }
    }
    Ok(())
}

fn relations(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.degree.max(3);
    let zero = HSeries::zero(n);
    let mut beads = bead_set(&POLY_BEADS);
    beads.extend(bead_set(&RATIONAL_BEADS));
    for i in 0..10 {
        let lambda = random_lambda(&mut rng, l.rank());
        let d = random_leg_diagram(&mut rng, 3);
        let v = rng.gen_range(0..d.trivalent_count());
        let w = weight_lie(&as_flip(&d, v)?, l, &lambda, n)?;
        rec.series(format!("{}/as-leg/{i:02}", l.name()), format!("{d}vertex={v} lambda={lambda}"), &w, &zero);
        let (d, e) = loop {
            let d = random_leg_diagram(&mut rng, 3);
            let internal: Vec<usize> = (0..d.edge_count())
                .filter(|&e| {
                    let [x, y] = d.edge_darts(e);
                    !d.is_leg_dart(x) && !d.is_leg_dart(y) && x / 3 != y / 3
                })
                .collect();
            if !internal.is_empty() {
                break (d, internal[rng.gen_range(0..internal.len())]);
            }
        };
        let w = weight_lie(&ihx_triple(&d, e)?, l, &lambda, n)?;
        rec.series(format!("{}/ihx-leg/{i:02}", l.name()), format!("{d}edge={e} lambda={lambda}"), &w, &zero);
        let degree = rng.gen_range(1..=3usize.min(n));
        let b = random_bead_diagram(&mut rng, degree, &beads);
        let v = rng.gen_range(0..b.vertices());
        let order = n.min(4);
        let w = weight_group(&as_flip(&b, v)?, l, &lambda, order)?;
        rec.series(format!("{}/as-bead/{i:02}", l.name()), format!("{b}vertex={v} lambda={lambda}"), &w, &HSeries::zero(order));
        let plain: Vec<usize> = (0..b.edge_count())
            .filter(|&e| b.edges()[e].tail / 3 != b.edges()[e].head / 3)
            .collect();
        if let Some(&e) = plain.get(rng.gen_range(0..plain.len().max(1))) {
            let mut edges = b.edges().to_vec();
            edges[e].bead = crate::algebra::RationalBead::one();
            let unbeaded = BeadDiagram::new(b.vertices(), edges, b.loops())?;
            let w = weight_group(&ihx_triple(&unbeaded, e)?, l, &lambda, order)?;
            rec.series(
                format!("{}/ihx-bead/{i:02}", l.name()),
                format!("{unbeaded}edge={e} lambda={lambda}"),
                &w,
                &HSeries::zero(order),
            );
        }
        let base = weight_group(&single(b.clone()), l, &lambda, order)?;
        let v = rng.gen_range(0..b.vertices());
        let pushed = weight_group(&single(holonomy_push(&b, v)?), l, &lambda, order)?;
        rec.series(format!("{}/holonomy/{i:02}", l.name()), format!("{b}vertex={v} lambda={lambda}"), &pushed, &base);
        let e = rng.gen_range(0..b.edge_count());
        let reversed = weight_group(&single(orientation_reverse(&b, e)?), l, &lambda, order)?;
        rec.series(format!("{}/reversal/{i:02}", l.name()), format!("{b}edge={e} lambda={lambda}"), &reversed, &base);
    }
    Ok(())
}

fn lemma(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.degree;
    let grid = lambda_grid(l.rank());
    for (j, a) in test_matrices(cfg.seed).iter().enumerate() {
        for (i, lambda) in grid.iter().take(3).enumerate() {
            let outer = weight_matrix_part(a, l, lambda, n)?;
            let roots = weight_matrix_part_roots(a, l, lambda, n)?;
            let inputs = format!("A={} lambda={lambda}", a.to_json());
            rec.series(format!("{}/det-vs-roots/{j}-{i}", l.name()), inputs.clone(), &outer, &roots);
            let wheels = weight_lie(&matrix_hair(a, n)?, l, lambda, n)?;
            rec.series(format!("{}/wheels-vs-det/{j}-{i}", l.name()), inputs, &wheels, &outer);
        }
    }
    // class invariance: P (A ⊕ [1]) P* with det P = 1, and monomial factors
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let lambda = &grid[0];
    for (j, a) in test_matrices(cfg.seed).iter().enumerate() {
        let big = a.direct_sum(&HermitianMatrixClass::identity(1));
        let k = big.size();
        let mut p: Vec<LaurentPoly> = (0..k * k)
            .map(|i| if i % (k + 1) == 0 { LaurentPoly::one() } else { LaurentPoly::zero() })
            .collect();
        let (r, c) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if r != c {
            p[r * k + c] = LaurentPoly::from_terms([(rng.gen_range(-1..=1), rat(rng.gen_range(1..=2)))]);
        }
        let moved = big.congruence(&p)?;
        let lhs = weight_matrix_part(&moved, l, lambda, n)?;
        let rhs = weight_matrix_part(a, l, lambda, n)?;
        rec.series(format!("{}/class/{j}", l.name()), format!("A={} P-entry=({r},{c})", a.to_json()), &lhs, &rhs);
        for shift in [-2i64, 1, 3] {
            let p = a.det().shift(shift);
            let lhs = weight_det_part(&p, l, lambda, n)?;
            rec.series(format!("{}/monomial/{j}/{shift:+}", l.name()), format!("A={} t^{shift}", a.to_json()), &lhs, &rhs);
        }
    }
    Ok(())
}

fn graph(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.degree;
    for (j, s) in test_bead_diagrams(cfg.seed, 10).into_iter().enumerate() {
        let s = single(s);
        let haired = hair(&s, n);
        for (i, lambda) in lambda_grid(l.rank()).iter().enumerate() {
            let lhs = weight_lie(&haired, l, lambda, n)?;
            let rhs = weight_group(&s, l, lambda, n)?;
            let d = s.terms().next().map(|(d, _)| d.to_string()).unwrap_or_default();
            rec.series(format!("{}/graph/{j:02}-{i}", l.name()), format!("{d}lambda={lambda}"), &lhs, &rhs);
        }
    }
    Ok(())
}

fn theorem1(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.degree;
    let rho = CartanVector::rho(l.rank());
    let normalizer = jhalf(l, &rho, n);
    rec.notes.push(format!(
        "{}: lambda-independent normalizer j^(1/2)(h rho) = {}",
        l.name(),
        normalizer
    ));
    let lambdas = lambda_grid(l.rank());
    let diagrams = test_bead_diagrams(cfg.seed, 6);
    for (ja, a) in test_matrices(cfg.seed).iter().enumerate() {
        for (js, s) in diagrams.iter().enumerate() {
            let s = single(s.clone());
            let lifted = hair_nu(a, &s, n)?;
            for (i, lambda) in lambdas.iter().take(3).enumerate() {
                let lhs = weight_lie(&lifted, l, lambda, n)?;
                let full = weight_full(a, &s, l, lambda, n)?;
                let ratio = prefactor(l, lambda, n, Prefactor::JRatio)?;
                let rhs = normalizer.mul(&ratio).mul(&full);
                rec.series(
                    format!("{}/theorem1/{ja}-{js}-{i}", l.name()),
                    format!("A={} lambda={lambda}", a.to_json()),
                    &lhs,
                    &rhs,
                );
                if ja == 0 && js == 0 && i == 1 {
                    let q = prefactor(l, lambda, n, Prefactor::Qdim)?;
                    rec.notes.push(format!(
                        "{}: at lambda={lambda}, qdim prefactor {} vs j-ratio prefactor {} ({})",
                        l.name(),
                        q,
                        ratio,
                        if q == ratio { "equal" } else { "different" }
                    ));
                }
            }
        }
    }
    Ok(())
}

fn nu(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.degree;
    let b = nu_coefficients(n.max(4));
    rec.values(
        format!("{}/nu-coefficients", l.name()),
        "b_2, b_4".into(),
        &[b.coeff(2), b.coeff(4)],
        &[Rational::new(1.into(), 48.into()), Rational::new((-1).into(), 5760.into())],
    );
    let nu = nu_wheels(n);
    for m in 1..=3 {
        let lambda = CartanVector::rho(l.rank()).scale(&rat(m));
        let lhs = weight_lie(&nu, l, &lambda, n)?;
        let rhs = jhalf(l, &lambda, n);
        rec.series(format!("{}/nu/{m}rho", l.name()), format!("lambda={lambda}"), &lhs, &rhs);
        let det = jhalf_det(l, &lambda, n)?;
        rec.series(format!("{}/jhalf-det/{m}rho", l.name()), format!("lambda={lambda}"), &det, &rhs);
    }
    Ok(())
}

fn qdim_suite(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.degree;
    let rho = CartanVector::rho(l.rank());
    for m in 1..=5i64 {
        let lambda = rho.scale(&rat(m));
        let lhs = qdim(l, &lambda, n)?;
        let mut rhs = HSeries::one(n);
        let mut weyl = Rational::one();
        for r in l.positive_roots() {
            let x = l.root_pairing(r, &lambda);
            let y = l.root_pairing(r, &rho);
            // sinh(xh)/sinh(yh) expanded as a ratio of odd series shifted down by one
            let num = HSeries::sinh_linear(&x, n + 1).coeffs()[1..].to_vec();
            let den = HSeries::sinh_linear(&y, n + 1).coeffs()[1..].to_vec();
            rhs = rhs.mul(&HSeries::from_coeffs(num).div(&HSeries::from_coeffs(den))?);
            weyl *= x / y;
        }
        rec.series(format!("{}/qdim/{m}", l.name()), format!("lambda={lambda}"), &lhs, &rhs);
        rec.values(
            format!("{}/qdim-constant/{m}", l.name()),
            format!("lambda={lambda}"),
            &[lhs.constant_term().clone()],
            &[weyl],
        );
    }
    Ok(())
}

fn characters(rec: &mut Recorder, l: &LieAlgebraData, cfg: &VerifyConfig) -> Result<()> {
    let name = l.name().to_string();
    let adj = CharacterCombo::adjoint(l);
    rec.values(format!("{name}/adjoint-haar"), "adjoint".into(), &[haar_average(&adj, l)?], &[rat(0)]);
    rec.values(
        format!("{name}/adjoint-at-one"),
        "adjoint".into(),
        &[evaluate_at_one(&adj)],
        &[rat(l.dim() as i64)],
    );
    if l.rank() == 1 {
        for i in 1..=5 {
            for j in 1..=5 {
                let f = CharacterCombo::sl2_irreducible(i).mul(&CharacterCombo::sl2_irreducible(j).conjugate());
                rec.values(
                    format!("{name}/orthonormal/{i}-{j}"),
                    format!("chi_{i} chi_{j}"),
                    &[haar_average(&f, l)?],
                    &[rat(i64::from(i == j))],
                );
            }
        }
    }
    let n = cfg.degree;
    for (j, s) in test_bead_diagrams(cfg.seed, 10).into_iter().enumerate() {
        let s = single(s);
        let exact = weight_group_exact(&s, l)?;
        let invariant = exact.values().all(|f| is_weyl_invariant(f, l));
        let integral = exact.values().all(CharacterCombo::is_integral);
        let d = s.terms().next().map(|(d, _)| d.to_string()).unwrap_or_default();
        rec.check(format!("{name}/exact-invariant/{j:02}"), d.clone(), invariant);
        rec.check(format!("{name}/exact-integral/{j:02}"), d.clone(), integral);
        for (i, lambda) in lambda_grid(l.rank()).iter().take(3).enumerate() {
            let mut lhs = HSeries::zero(n);
            for (k, f) in &exact {
                lhs.add_assign_ref(&substitute_series(f, l, lambda, n).shift(*k));
            }
            let rhs = weight_group(&s, l, lambda, n)?;
            rec.series(format!("{name}/exact-substitute/{j:02}-{i}"), format!("{d}lambda={lambda}"), &lhs, &rhs);
        }
        let zero = CartanVector::zero(l.rank());
        for (k, f) in &exact {
            let at_zero = substitute_series(f, l, &zero, 0);
            rec.values(
                format!("{name}/kappa-consistency/{j:02}-{k}"),
                d.clone(),
                &[evaluate_at_one(f)],
                &[at_zero.constant_term().clone()],
            );
        }
    }
    Ok(())
}

fn hair_suite(rec: &mut Recorder, cfg: &VerifyConfig) {
    let t = crate::algebra::RationalBead::t();
    let coeffs = t.hair_coefficients(cfg.degree.max(6));
    for (n, c) in coeffs.iter().enumerate().take(7) {
        rec.values(
            format!("bead-t/{n}"),
            format!("[u^{n}] e^u"),
            std::slice::from_ref(c),
            &[crate::algebra::inv_factorial(n)],
        );
    }
}
