//! End-to-end checks of the graph, witness and criteria layers against
//! brute-force oracles. Prints one `[PASS]`/`[FAIL]` line per criterion.

use std::collections::VecDeque;
use std::io::Write;
use std::time::{Duration, Instant};

use orthograph::criteria::{crit_holds, find_annihilator_without_zero_divisors, predict};
use orthograph::witness::{annihilating_complement, extremal_pair, path_to_scalar};
use orthograph::{
    build_ring, Distance, Element, Execution, GraphHandle, GraphReport, Limits, Matrix, Ring,
    RingSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(spec: RingSpec) -> Ring {
    build_ring(&spec).unwrap()
}

fn z(m: u64) -> Ring {
    ring(RingSpec::modular(m))
}

fn el(r: &Ring, i: usize) -> Element {
    r.element(i).unwrap()
}

fn all_matrices(r: &Ring, n: usize) -> Vec<Matrix> {
    let q = r.order();
    let count = q.pow((n * n) as u32);
    (0..count)
        .map(|mut id| {
            let mut entries = vec![r.zero(); n * n];
            for slot in entries.iter_mut().rev() {
                *slot = el(r, id % q);
                id /= q;
            }
            Matrix::from_entries(r, n, n, entries).unwrap()
        })
        .collect()
}

fn zero_divisor_elements(r: &Ring) -> Vec<Element> {
    r.elements()
        .filter(|&x| r.elements().any(|y| y != r.zero() && r.mul(x, y) == r.zero()))
        .collect()
}

fn det2(a: &Matrix) -> Element {
    let r = a.ring();
    r.sub(r.mul(a.get(0, 0), a.get(1, 1)), r.mul(a.get(0, 1), a.get(1, 0)))
}

fn orthogonal(a: &Matrix, b: &Matrix) -> bool {
    a.mul(b).unwrap().is_zero() && b.mul(a).unwrap().is_zero()
}

/// The orthogonality graph built by testing every pair of nonzero matrices.
struct Oracle {
    vertices: Vec<Matrix>,
    adj: Vec<Vec<usize>>,
}

impl Oracle {
    fn new(r: &Ring, n: usize) -> Self {
        let nonzero: Vec<Matrix> = all_matrices(r, n).into_iter().filter(|m| !m.is_zero()).collect();
        let vertices: Vec<Matrix> = nonzero
            .iter()
            .filter(|a| nonzero.iter().any(|b| orthogonal(a, b)))
            .cloned()
            .collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if orthogonal(&vertices[i], &vertices[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Oracle { vertices, adj }
    }

    fn position(&self, m: &Matrix) -> usize {
        self.vertices.iter().position(|v| v == m).unwrap()
    }

    fn bfs(&self, sources: &[usize]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Eccentricity of each vertex within its component, and whether the
    /// whole graph is connected.
    fn eccentricities(&self) -> (Vec<u32>, bool) {
        let mut connected = true;
        let ecc = (0..self.vertices.len())
            .map(|v| {
                let dist = self.bfs(&[v]);
                connected &= dist.iter().all(Option::is_some);
                dist.iter().flatten().copied().max().unwrap_or(0)
            })
            .collect();
        (ecc, connected)
    }

    fn diameter_radius(&self) -> Option<(u32, u32)> {
        let (ecc, connected) = self.eccentricities();
        connected.then(|| (*ecc.iter().max().unwrap(), *ecc.iter().min().unwrap()))
    }

    /// Largest eccentricity over components, for disconnected graphs.
    fn max_component_diameter(&self) -> u32 {
        self.eccentricities().0.into_iter().max().unwrap_or(0)
    }
}

struct Run {
    lines: Vec<(bool, String)>,
    reports: Vec<GraphReport>,
}

impl Run {
    fn record(&mut self, id: usize, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        let line = format!("[{tag}] AC-{id:02} {detail}");
        let mut out = std::io::stdout().lock();
        writeln!(out, "{line}").unwrap();
        self.lines.push((ok, line));
    }
}

fn sequential_graph(r: &Ring, n: usize) -> GraphHandle {
    GraphHandle::with_options(r, n, Limits::default(), Execution::Sequential).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn finite(d: Option<Distance>) -> Option<u32> {
    d.and_then(Distance::finite)
}

fn check_predicted_graph(
    run: &mut Run,
    id: usize,
    r: &Ring,
    expect_diameter: u32,
    expect_radius: Option<u32>,
    budget: Duration,
    rerun: Option<&GraphReport>,
) {
    let (report, elapsed) = timed(|| {
        let g = sequential_graph(r, 2);
        let report = g.analyze();
        let prediction = predict(r, 2).unwrap();
        (report, prediction)
    });
    let (report, prediction) = report;
    let oracle = Oracle::new(r, 2).diameter_radius();
    let measured = (finite(report.diameter), finite(report.radius));
    let mut ok = report.connected
        && measured.0 == Some(expect_diameter)
        && oracle.map(|(d, _)| d) == Some(expect_diameter)
        && oracle.map(|(_, rad)| rad) == measured.1
        && prediction.predicted_diameter == expect_diameter
        && measured.1.is_some_and(|rad| prediction.admits_radius(rad))
        && elapsed < budget;
    if let Some(rad) = expect_radius {
        ok &= measured.1 == Some(rad);
    }
    if let Some(again) = rerun {
        ok &= again == &report;
    }
    let c = prediction.cond.map_or("none".into(), |c| r.format_element(c));
    let bad = prediction
        .bad_annihilator
        .map_or("none".into(), |a| r.format_element(a));
    run.record(
        id,
        ok,
        format!(
            "O(M_2({r})): diameter={} radius={} (oracle {:?}); predicted diameter={} radius={:?}; crit={} cond c={c} bad annihilator={bad}; {:.2?}",
            measured.0.map_or("none".into(), |d| d.to_string()),
            measured.1.map_or("none".into(), |d| d.to_string()),
            oracle,
            prediction.predicted_diameter,
            prediction.predicted_radius,
            prediction.crit.holds,
            elapsed
        ),
    );
    run.reports.push(report);
}

fn criterion_1(run: &mut Run) {
    let r = z(4);
    let p = predict(&r, 2).unwrap();
    let pre = p.crit.holds && p.cond == Some(el(&r, 2));
    if !pre {
        run.record(1, false, format!("Z4 prediction: {}", p.summary()));
        return;
    }
    check_predicted_graph(run, 1, &r, 3, Some(2), Duration::from_secs(10), None);
}

fn criterion_2(run: &mut Run) {
    let r = z(6);
    let p = predict(&r, 2).unwrap();
    if p.crit.holds || p.crit.failing != Some(el(&r, 2)) || p.cond.is_some() {
        run.record(2, false, format!("Z6 prediction: {}", p.summary()));
        return;
    }
    let again = GraphHandle::with_options(&r, 2, Limits::default(), Execution::Parallel)
        .unwrap()
        .analyze();
    check_predicted_graph(run, 2, &r, 4, None, Duration::from_secs(60), Some(&again));
}

fn criterion_3(run: &mut Run) {
    let r = ring(RingSpec::product(vec![RingSpec::modular(2), RingSpec::modular(2)]));
    let bad = find_annihilator_without_zero_divisors(&r).unwrap();
    if bad.map(|a| r.format_element(a)).as_deref() != Some("(1,0)") {
        run.record(3, false, "bad annihilator is not (1,0)".into());
        return;
    }
    check_predicted_graph(run, 3, &r, 4, None, Duration::from_secs(10), None);
}

fn criterion_4(run: &mut Run) {
    let r = ring(RingSpec::quotient(2, vec![0, 0, 1]));
    let p = predict(&r, 2).unwrap();
    if p.cond.map(|c| r.format_element(c)).as_deref() != Some("x") {
        run.record(4, false, format!("dual numbers prediction: {}", p.summary()));
        return;
    }
    check_predicted_graph(run, 4, &r, 3, Some(2), Duration::from_secs(10), None);
}

fn criterion_5(run: &mut Run) {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, expected) in [(4, 3), (6, 4)] {
        let r = z(m);
        let (a, at) = extremal_pair(&r, 2, el(&r, 2)).unwrap();
        let expected_a = Matrix::from_indices(&r, &[&[0, 1], &[2, 0]]).unwrap();
        let g = sequential_graph(&r, 2);
        let d = g.distance(&a, &at).unwrap();
        let oracle = Oracle::new(&r, 2);
        let od = oracle.bfs(&[oracle.position(&a)])[oracle.position(&at)];
        ok &= a == expected_a
            && at == a.transpose()
            && d == Distance::Finite(expected)
            && od == Some(expected);
        parts.push(format!("Z{m}: A={} d(A,A^T)={d} oracle={od:?}", a.literal()));
    }
    run.record(5, ok, format!("extremal pairs with a=2: {}", parts.join("; ")));
}

fn criterion_6(run: &mut Run) {
    let mut parts = Vec::new();
    let mut ok = true;
    for m in [4, 6] {
        let r = z(m);
        let g = sequential_graph(&r, 2);
        let oracle = Oracle::new(&r, 2);
        let scalars: Vec<usize> = (0..oracle.vertices.len())
            .filter(|&i| oracle.vertices[i].scalar_value().is_some())
            .collect();
        let oracle_dist = oracle.bfs(&scalars);
        let mut worst = 0;
        let mut bad_paths = 0;
        for (i, a) in oracle.vertices.iter().enumerate() {
            let d = g.distance_to_scalars(a).unwrap();
            let od = oracle_dist[i];
            ok &= d.finite() == od && d <= Distance::Finite(2);
            worst = worst.max(od.unwrap_or(u32::MAX));
            let path_ok = path_to_scalar(a).is_ok_and(|p| {
                p.validate().is_ok()
                    && p.start() == a
                    && p.end().scalar_value().is_some()
                    && p.len() <= 2
            });
            bad_paths += usize::from(!path_ok);
        }
        ok &= bad_paths == 0 && oracle.vertices.len() == g.vertex_count();
        parts.push(format!(
            "Z{m}: {} vertices, max distance {worst}, {bad_paths} bad paths",
            oracle.vertices.len()
        ));
    }
    run.record(6, ok, format!("distance to scalar vertices ≤ 2: {}", parts.join("; ")));
}

fn complement_holds(a: &Matrix, c: Element) -> bool {
    let r = a.ring();
    let ideal = r.annihilator(c);
    let in_ideal = |m: &Matrix| m.entries().iter().all(|&x| r.mul(c, x) == r.zero());
    annihilating_complement(a, &ideal).is_ok_and(|b| {
        !in_ideal(&b) && in_ideal(&a.mul(&b).unwrap()) && in_ideal(&b.mul(a).unwrap())
    })
}

fn criterion_7(run: &mut Run) {
    let (result, elapsed) = timed(|| {
        let mut cases = 0usize;
        let mut failures = 0usize;
        for m in [4, 6] {
            let r = z(m);
            let zd = zero_divisor_elements(&r);
            for a in all_matrices(&r, 2) {
                let det = det2(&a);
                if !zd.contains(&det) {
                    continue;
                }
                for c in r.nonzero_elements().filter(|&c| r.mul(c, det) == r.zero()) {
                    cases += 1;
                    failures += usize::from(!complement_holds(&a, c));
                }
            }
        }
        let r = z(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut sampled = 0usize;
        while sampled < 250 {
            let entries = (0..9).map(|_| el(&r, rng.gen_range(0..4))).collect();
            let a = Matrix::from_entries(&r, 3, 3, entries).unwrap();
            let det = a.determinant().unwrap();
            let cs: Vec<Element> = r
                .nonzero_elements()
                .filter(|&c| r.mul(c, det) == r.zero())
                .collect();
            if cs.is_empty() {
                continue;
            }
            sampled += 1;
            for c in cs {
                cases += 1;
                failures += usize::from(!complement_holds(&a, c));
            }
        }
        (cases, failures, sampled)
    });
    let (cases, failures, sampled) = result;
    run.record(
        7,
        failures == 0 && sampled >= 200 && elapsed < Duration::from_secs(120),
        format!(
            "annihilating complements: {cases} cases over M_2(Z4) ∪ M_2(Z6) and {sampled} random M_3(Z4), {failures} failures; {elapsed:.2?}"
        ),
    );
}

fn criterion_8(run: &mut Run) {
    let mut parts = Vec::new();
    let mut discrepancies = 0;
    for m in [4, 6] {
        let r = z(m);
        let zd = zero_divisor_elements(&r);
        let all = all_matrices(&r, 2);
        let nonzero: Vec<&Matrix> = all.iter().filter(|b| !b.is_zero()).collect();
        let mut singular = 0;
        for a in &all {
            let by_det = zd.contains(&det2(a));
            let by_search = nonzero.iter().any(|b| orthogonal(a, b));
            singular += usize::from(by_det);
            discrepancies += usize::from(by_det != by_search || a.is_zero_divisor().unwrap() != by_det);
        }
        parts.push(format!("Z{m}: {singular}/{} zero-divisor matrices", all.len()));
    }
    run.record(
        8,
        discrepancies == 0,
        format!(
            "det A ∈ Z_R ⇔ nonzero B with AB = BA = 0: {}; {discrepancies} discrepancies",
            parts.join("; ")
        ),
    );
}

fn catalog() -> Vec<Ring> {
    vec![
        z(4),
        z(6),
        z(8),
        z(9),
        z(12),
        ring(RingSpec::quotient(2, vec![0, 0, 1])),
        ring(RingSpec::quotient(2, vec![0, 0, 0, 1])),
        ring(RingSpec::quotient(4, vec![0, 0, 1])),
        ring(RingSpec::product(vec![RingSpec::modular(2), RingSpec::modular(2)])),
        ring(RingSpec::product(vec![RingSpec::modular(2), RingSpec::modular(4)])),
        ring(RingSpec::product(vec![RingSpec::modular(3), RingSpec::modular(3)])),
    ]
}

/// Triple scan: every zero-divisor `a0` has nonzero `a1, a2` with all
/// pairwise products zero.
fn crit_by_scan(r: &Ring) -> bool {
    let zero = r.zero();
    zero_divisor_elements(r).into_iter().all(|a0| {
        r.nonzero_elements().any(|a1| {
            r.nonzero_elements().any(|a2| {
                r.mul(a0, a1) == zero && r.mul(a0, a2) == zero && r.mul(a1, a2) == zero
            })
        })
    })
}

fn criterion_9(run: &mut Run) {
    let mut discrepancies = Vec::new();
    let mut summary = Vec::new();
    for r in catalog() {
        let crit = crit_holds(&r).unwrap().holds;
        let bad = find_annihilator_without_zero_divisors(&r).unwrap();
        if crit != bad.is_none() || crit != crit_by_scan(&r) {
            discrepancies.push(r.to_string());
        }
        summary.push(format!("{r}:{}", if crit { "3" } else { "4" }));
    }
    run.record(
        9,
        discrepancies.is_empty() && summary.len() >= 10,
        format!(
            "crit ⇔ no bad annihilator over {} rings [{}]; discrepancies {:?}",
            summary.len(),
            summary.join(", "),
            discrepancies
        ),
    );
}

fn criterion_10(run: &mut Run) {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in catalog() {
        if zero_divisor_elements(&r).len() < 3 {
            continue;
        }
        let report = sequential_graph(&r, 1).analyze();
        let oracle = Oracle::new(&r, 1).diameter_radius();
        let d = finite(report.diameter);
        ok &= report.connected && d.is_some_and(|d| d <= 3) && oracle.map(|o| o.0) == d;
        parts.push(format!("{r}:{}", d.map_or("∞".into(), |d| d.to_string())));
        run.reports.push(report);
    }
    run.record(
        10,
        ok && !parts.is_empty(),
        format!("O(R) connected with diameter ≤ 3: [{}]", parts.join(", ")),
    );
}

fn criterion_11(run: &mut Run) {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [2, 3] {
        let r = z(m);
        let report = sequential_graph(&r, 2).analyze();
        let worst = report.components.iter().map(|c| c.diameter).max().unwrap_or(0);
        let oracle = Oracle::new(&r, 2);
        ok &= !report.connected
            && worst <= 2
            && oracle.diameter_radius().is_none()
            && oracle.max_component_diameter() == worst;
        parts.push(format!(
            "Z{m}: {} components, max component diameter {worst}",
            report.components.len()
        ));
        run.reports.push(report);
    }
    run.record(11, ok, format!("fields at n=2 are disconnected: {}", parts.join("; ")));
}

fn criterion_12(run: &mut Run) {
    let mut checked = 0;
    let mut violations = 0;
    for report in &run.reports {
        if let (Some(Distance::Finite(d)), Some(Distance::Finite(r))) = (report.diameter, report.radius) {
            checked += 1;
            violations += usize::from(!(r <= d && d <= 2 * r) || !report.radius_bounds_hold());
        }
    }
    run.record(
        12,
        violations == 0 && checked > 0,
        format!("radius ≤ diameter ≤ 2·radius in {checked} finite reports, {violations} violations"),
    );
}

#[test]
fn acceptance_criteria() {
    let mut run = Run {
        lines: Vec::new(),
        reports: Vec::new(),
    };
    criterion_1(&mut run);
    criterion_2(&mut run);
    criterion_3(&mut run);
    criterion_4(&mut run);
    criterion_5(&mut run);
    criterion_6(&mut run);
    criterion_7(&mut run);
    criterion_8(&mut run);
    criterion_9(&mut run);
    criterion_10(&mut run);
    criterion_11(&mut run);
    criterion_12(&mut run);
    let failed: Vec<&String> = run.lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l).collect();
    assert!(failed.is_empty(), "failed criteria:\n{failed:#?}");
}
