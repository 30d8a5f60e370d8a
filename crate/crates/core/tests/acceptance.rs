//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exact criteria fail the run when they do not hold. Monte-Carlo criteria
//! print FAIL below their threshold but only fail the run with
//! `ACCEPTANCE_STRICT=1`. A criterion over its time limit prints FAIL and
//! never fails the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use anonsim::experiments::{
    exp_cover_invariance, exp_eccentricity_lemma, exp_exhaustive_soundness, exp_id_collision, exp_solvers,
    exp_switch_learn5, exp_triangle, ExperimentSpec, Family, Report, Row, Thresholds,
};
use anonsim::gen::{diameter3_fixture, k4_lift, naive_counterexample_fixture, sample_gnp, verify_covering_map, Rng, Stream};
use anonsim::graph::{enumerate_triangles, is_hamiltonian};
use anonsim::labeling::{color_refinement, partition_refines};
use anonsim::protocols::{naive_triangle, sound_solver_sb4, LeaderPlugin, TriangleLabel, WitnessCheck, SB4_ROUNDS};
use anonsim::sim::Outcome;

const SEED_BASE: u64 = 0;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Exact,
    MonteCarlo,
}

struct Verdict {
    id: u32,
    name: &'static str,
    kind: Kind,
    holds: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Verdict {
    fn in_time(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed <= l)
    }

    fn pass(&self) -> bool {
        self.holds && self.in_time()
    }

    fn line(&self) -> String {
        let limit = match self.limit {
            Some(l) => format!(", limit {} s", l.as_secs()),
            None => String::new(),
        };
        let slow = if self.in_time() { "" } else { " TOO SLOW" };
        format!(
            "{} [{:>2}] {}: {} ({:.1} s{limit}){slow}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
        )
    }
}

fn timed(
    id: u32,
    name: &'static str,
    kind: Kind,
    limit_s: Option<u64>,
    f: impl FnOnce() -> (bool, String),
) -> Verdict {
    let start = Instant::now();
    let (holds, detail) = f();
    let v = Verdict {
        id,
        name,
        kind,
        holds,
        detail,
        elapsed: start.elapsed(),
        limit: limit_s.map(Duration::from_secs),
    };
    println!("{}", v.line());
    v
}

fn run(spec: ExperimentSpec, f: fn(&ExperimentSpec) -> anonsim::Result<Report>) -> Report {
    f(&spec.seed_base(SEED_BASE)).expect("experiment runs")
}

fn frac(r: &Row) -> String {
    format!("{}/{} = {:.2}", r.successes, r.trials - r.vacuous, r.fraction)
}

fn cover() -> (bool, String) {
    let random = run(ExperimentSpec::new("cover", "universal").grid(&[40], &[0.5]).trials(50).rounds(5), exp_cover_invariance);
    let fixed = run(
        ExperimentSpec::new("cover", "universal").grid(&[6], &[0.0]).family(Family::Fig1).rounds(5),
        exp_cover_invariance,
    );
    let (r, f) = (&random.rows[0], &fixed.rows[0]);
    let holds = r.successes == 50 && f.successes == 2 && random.violations() + fixed.violations() == 0;
    (holds, format!("double covers {}/50 exact, common cover pair {}/2 exact", r.successes, f.successes))
}

fn refinement() -> (bool, String) {
    let mut rng = Rng::new(SEED_BASE, Stream::Search);
    let mut bad = 0;
    for i in 0..200 {
        let n = 1 + rng.below(60) as usize;
        let p = rng.below(1001) as f64 / 1000.0;
        let c = color_refinement(&sample_gnp(n, p, i).unwrap(), 7);
        bad += (0..=6).filter(|&r| !partition_refines(&c[r + 1].colors, &c[r].colors)).count();
    }
    (bad == 0, format!("{bad} non-refining steps over 200 graphs x rounds 0-6"))
}

fn exhaustive() -> (bool, String) {
    let sweep = |alg: &str, max_n: usize, perms: usize| {
        let ns: Vec<usize> = (1..=max_n).collect();
        run(ExperimentSpec::new("exhaustive", alg).grid(&ns, &[0.0]).trials(perms), exp_exhaustive_soundness)
    };
    let reports = [("maxdegree", sweep("maxdegree", 7, 5)), ("triangle", sweep("triangle", 6, 5)), ("sb4", sweep("sb4", 6, 1))];
    let holds = reports.iter().all(|(_, r)| r.violations() == 0);
    let detail = reports
        .iter()
        .map(|(a, r)| format!("{a} {} runs {} violations", r.rows.iter().map(|x| x.trials).sum::<u64>(), r.violations()))
        .collect::<Vec<_>>()
        .join(", ");
    (holds, detail)
}

fn naive_fixture() -> (bool, String) {
    let (g, ids) = naive_counterexample_fixture();
    let t = naive_triangle(&g, &ids).unwrap();
    let labels: Vec<Option<&TriangleLabel<u32>>> = t.outputs.iter().map(|o| o.as_ref().and_then(|o| o.label())).collect();
    let check = anonsim::protocols::check_witnesses(&g, &ids, &labels);
    let oracle = enumerate_triangles(&g).contains(&[3, 4, 5]);
    (check == WitnessCheck::Empty && oracle, format!("naive reports {check:?}, oracle finds (3,4,5): {oracle}"))
}

fn lift() -> (bool, String) {
    let cm = k4_lift();
    let covering = verify_covering_map(&cm).unwrap();
    let ham = is_hamiltonian(&cm.source).unwrap();
    (covering && !ham && cm.source.n() == 16, format!("covering map {covering}, 16-node lift Hamiltonian {ham}"))
}

fn ac(t: &Thresholds) -> (Report, bool, String) {
    let rep = run(ExperimentSpec::new("id-collision", "ac").grid(&[1000], &[0.5, 0.1]).trials(100).c_mod(201), exp_id_collision);
    let bits_ok = rep.violations() == 0;
    let holds = bits_ok && rep.rows.iter().all(|r| r.fraction >= t.ac_distinct);
    let detail = format!(
        "distinct p=0.5 {}, p=0.1 {} (need {}), max bits {} within ceil(log2 n)+8: {bits_ok}",
        frac(&rep.rows[0]),
        frac(&rep.rows[1]),
        t.ac_distinct,
        rep.rows.iter().map(|r| r.max_message_bits).max().unwrap()
    );
    (rep, holds, detail)
}

fn bes(t: &Thresholds) -> (Report, bool, String) {
    let rep = run(ExperimentSpec::new("id-collision", "bes").grid(&[500], &[0.5]).trials(100), exp_id_collision);
    let r = &rep.rows[0];
    let holds = rep.violations() == 0 && r.fraction >= t.bes_distinct;
    let detail = format!("distinct {} (need {})", frac(r), t.bes_distinct);
    (rep, holds, detail)
}

fn triangles(t: &Thresholds) -> (Report, bool, String) {
    let sound = run(ExperimentSpec::new("triangle", "sound").grid(&[500], &[0.3]).trials(100), exp_triangle);
    let anon = run(ExperimentSpec::new("triangle", "anonymous").grid(&[500], &[0.3]).trials(100), exp_triangle);
    let (s, a) = (&sound.rows[0], &anon.rows[0]);
    let holds = s.fraction >= t.triangle_sound_verified
        && s.bound_misses == 0
        && s.violations == 0
        && a.fraction >= t.triangle_anonymous_verified;
    let detail = format!(
        "sound {} (need {}), rounds max {} with {} over 4 diam + 12; anonymous {} (need {}), {} id collisions",
        frac(s),
        t.triangle_sound_verified,
        s.max_rounds,
        s.bound_misses,
        frac(a),
        t.triangle_anonymous_verified,
        a.collisions
    );
    let mut rows = sound.rows;
    rows.extend(anon.rows);
    (Report::new(rows), holds, detail)
}

fn ecc(t: &Thresholds) -> (Report, bool, String) {
    let rep = run(ExperimentSpec::new("ecc-lemma", "bfs").grid(&[300], &[0.1, 0.3]).trials(100).sample(30), exp_eccentricity_lemma);
    let holds = rep.rows.iter().all(|r| r.fraction >= t.ecc_lemma_satisfied);
    let detail = format!(
        "p=0.1 {}, p=0.3 {} (need {}; {} vacuous roots)",
        frac(&rep.rows[0]),
        frac(&rep.rows[1]),
        t.ecc_lemma_satisfied,
        rep.rows.iter().map(|r| r.vacuous).sum::<u64>()
    );
    (rep, holds, detail)
}

fn solvers(t: &Thresholds) -> (Report, bool, String) {
    let collapse = run(ExperimentSpec::new("solvers", "collapse").grid(&[300], &[0.2]).trials(100), exp_solvers);
    let sb4 = run(ExperimentSpec::new("solvers", "sb4").grid(&[300], &[0.5]).trials(100), exp_solvers);
    let (c, s) = (&collapse.rows[0], &sb4.rows[0]);
    let fixture = sound_solver_sb4(&diameter3_fixture(), LeaderPlugin).unwrap();
    let fixture_fails = fixture.outcome() == Outcome::AllFailed;
    let holds = c.fraction >= t.collapse_solved
        && s.fraction >= t.sb4_solved
        && s.max_rounds == SB4_ROUNDS as u64
        && collapse.violations() + sb4.violations() == 0
        && fixture_fails;
    let detail = format!(
        "collapse within diam+3 {} (need {}); sb4 in 4 rounds {} (need {}); diameter-3 fixture all failed: {fixture_fails}",
        frac(c),
        t.collapse_solved,
        frac(s),
        t.sb4_solved
    );
    let mut rows = collapse.rows;
    rows.extend(sb4.rows);
    (Report::new(rows), holds, detail)
}

fn switch(t: &Thresholds) -> (Report, bool, String) {
    let rep = run(ExperimentSpec::new("switch", "quadruple").grid(&[500], &[0.5]).trials(50), exp_switch_learn5);
    let r = &rep.rows[0];
    let holds = r.fraction >= t.switch_found && r.violations == 0;
    let detail = format!(
        "found {} (need {}); degree and C_1 checks failed on {} of {} switches",
        frac(r),
        t.switch_found,
        r.violations,
        r.successes
    );
    (rep, holds, detail)
}

type McCriterion = (u32, &'static str, u64, fn(&Thresholds) -> (Report, bool, String));

const MONTE_CARLO: [McCriterion; 6] = [
    (6, "one-round identifiers A_C", 120, ac),
    (7, "one-round BES labels", 60, bes),
    (8, "triangle finding", 300, triangles),
    (9, "eccentricity witness", 300, ecc),
    (10, "collapse and four-round solvers", 180, solvers),
    (11, "degree-preserving switch", 120, switch),
];

fn main() -> ExitCode {
    let t = Thresholds::default();
    let mut verdicts = vec![
        timed(1, "covering invariance", Kind::Exact, Some(10), cover),
        timed(2, "refinement is monotone", Kind::Exact, Some(5), refinement),
        timed(3, "exhaustive soundness", Kind::Exact, Some(900), exhaustive),
        timed(4, "naive triangle counterexample", Kind::Exact, Some(1), naive_fixture),
        timed(5, "twisted lift of K4", Kind::Exact, Some(5), lift),
    ];
    let mut first = Vec::new();
    for (id, name, limit, f) in MONTE_CARLO {
        let mut report = None;
        verdicts.push(timed(id, name, Kind::MonteCarlo, Some(limit), || {
            let (rep, holds, detail) = f(&t);
            report = Some(rep);
            (holds, detail)
        }));
        first.push(report.unwrap().to_csv());
    }
    verdicts.push(timed(12, "reports are reproducible", Kind::Exact, None, || {
        let again: Vec<String> = MONTE_CARLO.iter().map(|(_, _, _, f)| f(&t).0.to_csv()).collect();
        let same = again.iter().zip(&first).filter(|(a, b)| a == b).count();
        (same == first.len(), format!("{same}/{} reports byte-identical on rerun", first.len()))
    }));

    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let passed = verdicts.iter().filter(|v| v.pass()).count();
    println!("{passed}/{} criteria pass", verdicts.len());
    let broken: Vec<u32> =
        verdicts.iter().filter(|v| !v.holds && (v.kind == Kind::Exact || strict)).map(|v| v.id).collect();
    if broken.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {broken:?}");
        ExitCode::FAILURE
    }
}
