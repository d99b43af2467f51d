use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twinstab::chibound::chi_bounded_color;
use twinstab::colnum::{scol, verify_star_coloring, wcol, OrderedGraph};
use twinstab::contraction::*;
use twinstab::decompose::{decompose, Category, Constants, Decomposition};
use twinstab::gen;
use twinstab::graph::{apply_flips, set_from, BipartiteGraph, Graph, OrderedBipartiteGraph, Side};
use twinstab::ladder::{ladder_index, quasi_ladder_index};
use twinstab::oracle;
use twinstab::sparsify::{decode_gadget, encode_gadget, gadget_id, pipeline, pipeline_bipartite, PipelineReport};


struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let p = rng.gen_range(0.05..0.7);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Keeps the edges of a random low-width graph that cross a random bipartition.
fn random_bipartite(n: usize, d: usize, rng: &mut ChaCha8Rng) -> (BipartiteGraph, MergeTree) {
    let (g, t) = gen::random_tww(n, d, rng);
    let left = set_from(n, (0..n).filter(|_| rng.gen_bool(0.5)));
    let mut b = Graph::new(n);
    for (u, v) in g.edges() {
        if left.contains(u) != left.contains(v) {
            b.add_edge(u, v);
        }
    }
    (BipartiteGraph::new(b, left).unwrap(), t)
}

fn codec_round_trip(reports: &mut Vec<PipelineReport>) -> Outcome {
    let mut rng = gen::rng(1);
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    let mut run = |name: String, r: twinstab::Result<PipelineReport>| match r {
        Ok(rep) => {
            count += 1;
            if !rep.equal {
                bad.push(name);
            }
            reports.push(rep);
        }
        Err(e) => {
            count += 1;
            bad.push(format!("{name}: {e}"))
        }
    };
    for n in 1..=8 {
        let (g, t) = gen::half_graph(n);
        run(format!("halfgraph {n}"), pipeline_bipartite(&g, &t).map(|p| p.1));
    }
    for i in 0..72 {
        let n = rng.gen_range(1..=40);
        let (g, t) = gen::cograph(n, &mut rng);
        run(format!("cograph #{i} n={n}"), pipeline(&g, &t).map(|p| p.1));
    }
    for i in 0..120 {
        let n = rng.gen_range(1..=40);
        let d = rng.gen_range(0..=3);
        let (g, t) = gen::random_tww(n, d, &mut rng);
        run(format!("random-tww #{i} n={n} d={d}"), pipeline(&g, &t).map(|p| p.1));
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && count >= 200 && took < Duration::from_secs(300);
    outcome(pass, format!("{count} instances, {} unequal or failed {:?}, {}", bad.len(), bad.first(), secs(took)))
}

fn sparse_output(reports: &[PipelineReport]) -> Outcome {
    let structural = reports.iter().filter(|r| r.structural).count();
    let checked: Vec<bool> = reports.iter().filter_map(|r| r.biclique_free).collect();
    let free = checked.iter().filter(|&&b| b).count();
    let small = reports.iter().filter(|r| r.incidence_vertices <= 60).count();
    let pass = !reports.is_empty() && structural == reports.len() && free == checked.len() && checked.len() == small;
    outcome(
        pass,
        format!(
            "{structural}/{} structural, {free}/{} exhaustively biclique-free ({} with at most 60 vertices)",
            reports.len(),
            checked.len(),
            small
        ),
    )
}

fn chi_bound() -> Outcome {
    let mut rng = gen::rng(3);
    let mut failures = Vec::new();
    let mut count = 0;
    for i in 0..120 {
        let n = rng.gen_range(1..=20);
        let (g, t) = if i % 4 == 0 {
            gen::cograph(n, &mut rng)
        } else {
            let d = rng.gen_range(0..=3);
            gen::random_tww(n, d, &mut rng)
        };
        count += 1;
        let width = verify_width(&g, &t).unwrap().width;
        let c = match chi_bounded_color(&g, &t) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("#{i}: {e}"));
                continue;
            }
        };
        let omega = oracle::clique(&g).unwrap();
        let bound = (2 * c.d as u128 + 4).pow(c.k.saturating_sub(1) as u32);
        let col = c.coloring.as_ref().unwrap();
        let proper = g.edges().all(|(u, v)| col.colors[u] != col.colors[v]);
        let used = col.colors.iter().collect::<std::collections::BTreeSet<_>>().len();
        let classes_p4free = (0..c.classes).all(|class| {
            let members: Vec<usize> = (0..n).filter(|&v| c.class_of[v] == class).collect();
            oracle::p4free(&g.induced(&members))
        });
        let ok = proper
            && c.d >= width
            && c.classes as u128 <= bound
            && used as u128 <= bound * omega as u128
            && col.omega == omega
            && classes_p4free;
        if !ok {
            failures.push(format!("#{i} n={n}: {} classes, {used} colors, omega {omega}, bound {bound}", c.classes));
        }
    }
    outcome(failures.is_empty() && count >= 100, format!("{count} graphs, {} violations {:?}", failures.len(), failures.first()))
}

/// Recomputes every bound of the main lemma on a finished decomposition.
fn lemma_violations(og: &OrderedBipartiteGraph, dec: &Decomposition) -> Vec<String> {
    let (d, k) = (dec.d, dec.k);
    let mut v = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            v.push(what);
        }
    };
    let count = |cat: Category| dec.parts.iter().filter(|p| p.category == cat).count();
    if !dec.small_side_case {
        let mut per_step = std::collections::HashMap::<(usize, Side), usize>::new();
        for p in &dec.parts {
            *per_step.entry((p.freeze_time, p.side)).or_default() += 1;
        }
        let most = per_step.values().copied().max().unwrap_or(0);
        check(most <= d, format!("{most} parts frozen at one step"));
    }
    check(count(Category::SPrimary) <= d + 1, format!("|S^L| = {}", count(Category::SPrimary)));
    check(count(Category::SHard) <= d * (d + 1), format!("|S^R_hard| = {}", count(Category::SHard)));
    check(dec.twin_groups.len() <= 1 << (d + 1), format!("{} twin groups", dec.twin_groups.len()));
    let h = OrderedGraph::natural(dec.h_graph());
    check(h.degeneracy() <= 2 * d, format!("left-degeneracy {}", h.degeneracy()));
    check(scol(&h, 2) <= 2 * d * d + 3 * d, format!("scol_2 {}", scol(&h, 2)));
    check(dec.blocks.len() <= 2 * k * (4 * d + 1) + 1, format!("{} blocks", dec.blocks.len()));
    let q = 6 * k * (d + 1) + 3 + (1 << (d + 1));
    check(dec.flips.len() <= q, format!("{} flips", dec.flips.len()));
    if let Err(e) = dec.verify(og) {
        v.push(e.to_string());
    }
    v
}

fn main_lemma_bounds() -> Outcome {
    let mut rng = gen::rng(4);
    let mut inputs: Vec<(String, BipartiteGraph, MergeTree)> = Vec::new();
    for n in 1..=8 {
        let (g, t) = gen::half_graph(n);
        inputs.push((format!("halfgraph {n}"), g, t));
    }
    let k33 = BipartiteGraph::complete(3, 3);
    let t = heuristic_sequence(k33.graph(), DEFAULT_BUDGET);
    inputs.push(("K33".into(), k33, t));
    for i in 0..150 {
        let n = rng.gen_range(2..30);
        let d = rng.gen_range(0..=2);
        let (g, t) = random_bipartite(n, d, &mut rng);
        inputs.push((format!("random #{i} n={n}"), g, t));
    }
    let mut failures = Vec::new();
    for (name, g, t) in &inputs {
        let (og, ct) = convexify(g, t).unwrap();
        let d = verify_convex_width(&og, &ct).unwrap().width.max(2);
        let k = quasi_ladder_index(g).unwrap().max(2);
        match decompose(&og, &ct, k, d) {
            Ok(dec) => {
                let v = lemma_violations(&og, &dec);
                if !v.is_empty() {
                    failures.push(format!("{name}: {}", v.join(", ")));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(failures.is_empty(), format!("{} runs, {} with violations {:?}", inputs.len(), failures.len(), failures.first()))
}

fn worked_constants() -> Outcome {
    let (d, k) = (2usize, 2usize);
    let p = 6 * d * d + 3 * d;
    let r = 2 * d * d + 3 * d + 1;
    let ell = (p * (p - 1) / 2 * r) as u128;
    let q = 6 * k * (d + 1) + 3 + (1 << (d + 1));
    let expected = (p, r, ell, q);
    let c = Constants::new(d, k);
    let (og, ct) = convexify(&gen::half_graph(2).0, &gen::half_graph(2).1).unwrap();
    let reported = decompose(&og, &ct, k, d).map(|dec| dec.constants);
    let pass = expected == (30, 15, 6525, 47)
        && (c.p, c.r, c.ell, c.q) == expected
        && reported.as_ref().is_ok_and(|r| (r.p, r.r, r.ell, r.q) == expected);
    outcome(pass, format!("p={} r={} l={} q={}", c.p, c.r, c.ell, c.q))
}

fn k33_trace() -> Outcome {
    let g = BipartiteGraph::complete(3, 3);
    let (og, ct) = convexify(&g, &heuristic_sequence(g.graph(), DEFAULT_BUDGET)).unwrap();
    let dec = match decompose(&og, &ct, 2, 2) {
        Ok(dec) => dec,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut parts: Vec<Vec<usize>> = dec.parts.iter().map(|p| p.part.clone()).collect();
    parts.sort();
    let flipped = apply_flips(og.bip(), &dec.flips).unwrap();
    let nonempty_covers = dec.covers.iter().filter(|c| !c.stars.is_empty()).count();
    let pass = parts == vec![vec![0, 1, 2], vec![3, 4, 5]]
        && flipped.graph().edge_count() == 0
        && dec.flips.len() == 1
        && dec.h_edges.is_empty()
        && nonempty_covers == 0;
    outcome(
        pass,
        format!(
            "F={parts:?}, G' edges {}, flips {}, H edges {}, covers {nonempty_covers}",
            flipped.graph().edge_count(),
            dec.flips.len(),
            dec.h_edges.len()
        ),
    )
}

fn coloring_numbers() -> Outcome {
    let mut rng = gen::rng(7);
    let start = Instant::now();
    let mut bad = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=30);
        let g = random_graph(n, &mut rng);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let og = OrderedGraph::new(g, order).unwrap();
        let (s1, s2, w2) = (scol(&og, 1), scol(&og, 2), wcol(&og, 2));
        if w2 > s2 + (s1 - 1) * (s1 - 1) {
            bad += 1;
        }
    }
    let took = start.elapsed();
    outcome(bad == 0 && took < Duration::from_secs(60), format!("500 pairs, {bad} violations, {}", secs(took)))
}

fn ladder_sandwich() -> Outcome {
    let mut rng = gen::rng(8);
    let start = Instant::now();
    let mut bad = 0;
    for _ in 0..500 {
        let (nl, nr) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let p = rng.gen_range(0.1..0.9);
        let edges: Vec<(usize, usize)> =
            (0..nl).flat_map(|u| (0..nr).map(move |v| (u, nl + v))).filter(|_| rng.gen_bool(p)).collect();
        let g = BipartiteGraph::from_sides(nl, nr, edges).unwrap();
        let (l, q) = (ladder_index(&g).unwrap(), quasi_ladder_index(&g).unwrap());
        if !(l <= q && q <= 4 * l + 4) {
            bad += 1;
        }
    }
    let took = start.elapsed();
    outcome(bad == 0 && took < Duration::from_secs(300), format!("500 graphs, {bad} violations, {}", secs(took)))
}

fn convexify_width() -> Outcome {
    let mut rng = gen::rng(9);
    let (mut over, mut invalid, mut worst) = (0, 0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(2..=24);
        let d = rng.gen_range(0..=3);
        let (g, t) = random_bipartite(n, d, &mut rng);
        let width = verify_width(g.graph(), &t).unwrap().width;
        match convexify(&g, &t).and_then(|(og, ct)| verify_convex_width(&og, &ct)) {
            Ok(r) if r.width > width + 1 => {
                over += 1;
                worst = worst.max(r.width - width);
            }
            Ok(_) => {}
            Err(_) => invalid += 1,
        }
    }
    outcome(
        over == 0 && invalid == 0,
        format!("100 inputs, {invalid} invalid, {over} wider than d+1 (largest excess over d: {worst})"),
    )
}

fn gadget_codec() -> Outcome {
    let mut rng = gen::rng(10);
    let (mut unequal, mut degree) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(0..=50);
        let g = random_graph(n, &mut rng);
        let b = encode_gadget(&g);
        if decode_gadget(&b).ok().as_ref() != Some(&g) {
            unequal += 1;
        }
        let middle = (0..n).flat_map(|v| [gadget_id(v, 1), gadget_id(v, 2)]);
        if middle.into_iter().any(|x| b.graph().degree(x) != 2) {
            degree += 1;
        }
    }
    outcome(unequal == 0 && degree == 0, format!("200 graphs, {unequal} unequal, {degree} with a middle vertex of degree other than 2"))
}

fn power_companion() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for n in [16, 64, 256] {
        let (g, colors) = gen::power_companion(n).unwrap();
        let ok = colors.iter().all(|&c| c < 4) && verify_star_coloring(&g, &colors);
        pass &= ok;
        lines.push(format!("n={n}: {ok}"));
    }
    outcome(pass, lines.join(", "))
}

fn oracles_agree() -> Outcome {
    let p4 = exact_twinwidth(&Graph::path(4)).unwrap().0;
    let c5 = oracle::chromatic(&Graph::cycle(5)).unwrap();
    let mut rng = gen::rng(12);
    let mut bad = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let g = random_graph(n, &mut rng);
        let exact = exact_twinwidth(&g).unwrap().0;
        let h = verify_width(&g, &heuristic_sequence(&g, DEFAULT_BUDGET)).unwrap().width;
        if h < exact {
            bad += 1;
        }
    }
    outcome(p4 == 1 && c5 == 3 && bad == 0, format!("tww(P4)={p4}, chi(C5)={c5}, 200 graphs with heuristic below exact: {bad}"))
}

fn main() -> ExitCode {
    let mut reports = Vec::new();
    let criteria: Vec<(usize, &str, Box<dyn FnOnce() -> Outcome>)> = vec![
        (1, "codec-round-trip", Box::new(|| codec_round_trip(&mut reports))),
        (3, "chi-bound", Box::new(chi_bound)),
        (4, "main-lemma-bounds", Box::new(main_lemma_bounds)),
        (5, "worked-constants", Box::new(worked_constants)),
        (6, "k33-trace", Box::new(k33_trace)),
        (7, "coloring-numbers", Box::new(coloring_numbers)),
        (8, "ladder-sandwich", Box::new(ladder_sandwich)),
        (9, "convexify-width", Box::new(convexify_width)),
        (10, "gadget-codec", Box::new(gadget_codec)),
        (11, "power-companion", Box::new(power_companion)),
        (12, "oracles-agree", Box::new(oracles_agree)),
    ];
    let mut results = Vec::new();
    for (id, name, f) in criteria {
        let o = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| outcome(false, "panicked"));
        results.push((id, name, o));
    }
    let o = sparse_output(&reports);
    results.insert(1, (2, "sparse-output", o));

    let mut fatal = false;
    for (id, name, o) in &results {
        fatal |= !o.pass;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {id:>2} {name}: {}", o.detail);
    }
    if fatal {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
