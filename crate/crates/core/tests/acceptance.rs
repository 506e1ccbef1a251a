//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process fails when a criterion fails for any reason other than a
//! documented infeasibility, which is named on its line.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spanning_spheres::allocation::{allocate, fill_blowup, minimum_part_size, AllocateOptions};
use spanning_spheres::chain::{
    generate_chain_host, lower_bound_codegree, lower_bound_tight_cycle, lower_bound_vertex_degree, spanning_sphere,
    verify_chain, ChainParams,
};
use spanning_spheres::complex::CertificateLevel;
use spanning_spheres::extremal::{property_graph, PropertyPredicate, DEFAULT_BUDGET};
use spanning_spheres::hypergraph::covering_tight_walk;
use spanning_spheres::io;
use spanning_spheres::matching::{exhaustive_perfect_matching, maximum_matching};
use spanning_spheres::spheres::{partite_sphere_a, partite_sphere_b, thin_path_sphere, tight_path_blowup_sphere};
use spanning_spheres::{Blowup, Error, Hypergraph, Rational, SimplicialComplex};

struct Outcome {
    pass: bool,
    detail: String,
    /// Reason the criterion cannot be met, when the failure is expected.
    infeasible: Option<String>,
}

impl Outcome {
    fn new(failures: &[String], detail: String, limit: Duration, elapsed: Duration) -> Self {
        let mut failures = failures.to_vec();
        if elapsed > limit {
            failures.push(format!("runtime {elapsed:.2?} over {limit:?}"));
        }
        let detail = match failures.first() {
            None => detail,
            Some(f) => format!("{detail}; {} failures, first: {f}", failures.len()),
        };
        Outcome { pass: failures.is_empty(), detail, infeasible: None }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Euler characteristic from the full face set, enumerated directly.
fn euler_oracle(c: &SimplicialComplex) -> i64 {
    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    for f in c.facets() {
        for mask in 1u32..(1 << f.len()) {
            faces.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
    faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
}

/// Number of edges containing `set`, by scanning every edge.
fn degree_oracle(h: &Hypergraph, set: &[usize]) -> usize {
    h.edges().iter().filter(|e| set.iter().all(|v| e.contains(v))).count()
}

/// Minimum positive d-degree over all d-sets.
fn delta_oracle(h: &Hypergraph, d: usize) -> usize {
    (0..h.n()).combinations(d).map(|s| degree_oracle(h, &s)).filter(|&x| x > 0).min().unwrap_or(0)
}

fn random_hypergraph(k: usize, n: usize, density: f64, r: &mut ChaCha8Rng) -> Hypergraph {
    let edges: Vec<Vec<usize>> = (0..n).combinations(k).filter(|_| r.gen_bool(density)).collect();
    Hypergraph::new(k, n, edges).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 2..=6 {
        for l in 2..=6 {
            let mut cases = vec![("a", partite_sphere_a(k, l, None), 2 * l * (1 << (k - 2)))];
            if k >= 3 && l >= 3 {
                cases.push(("b", partite_sphere_b(k, l, None), (4 * l + 2) * (1 << (k - 3))));
            }
            for (case, built, facets) in cases {
                count += 1;
                let (host, s) = match built {
                    Ok(x) => x,
                    Err(e) => {
                        failures.push(format!("case {case} k={k} l={l}: {e}"));
                        continue;
                    }
                };
                let cert = s.verify_sphere();
                let level_ok = match k {
                    2 => cert.level == CertificateLevel::FullDim1,
                    3 => cert.level == CertificateLevel::FullDim2,
                    _ => matches!(cert.level, CertificateLevel::Shelled | CertificateLevel::LinkVerified),
                };
                let euler = 1 + if (k - 1) % 2 == 0 { 1 } else { -1 };
                if !s.is_spanning_copy(&host).unwrap() {
                    failures.push(format!("case {case} k={k} l={l}: not spanning"));
                }
                if s.facet_count() != facets {
                    failures.push(format!("case {case} k={k} l={l}: {} facets, expected {facets}", s.facet_count()));
                }
                if euler_oracle(&s) != euler || cert.euler != euler {
                    failures.push(format!("case {case} k={k} l={l}: euler {} / {}", euler_oracle(&s), cert.euler));
                }
                if !level_ok {
                    failures.push(format!("case {case} k={k} l={l}: certificate {}", cert.level));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("{count} partite spheres, {elapsed:.2?}"), Duration::from_secs(5), elapsed)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 2..=5 {
        let mut instances = vec![(k + 1, thin_path_sphere(k))];
        for l in k + 1..=10 {
            instances.push((l, tight_path_blowup_sphere(k, l)));
        }
        for (l, built) in instances {
            count += 1;
            let d = match built {
                Ok(d) => d,
                Err(e) => {
                    failures.push(format!("k={k} l={l}: {e}"));
                    continue;
                }
            };
            // Independent restatement of the family invariants.
            let pos: HashMap<usize, usize> =
                d.path.parts.iter().enumerate().flat_map(|(i, p)| p.iter().map(move |&v| (v, i))).collect();
            let edges = l + 1 - k;
            for (name, fam) in [("F", &d.family_f), ("F'", &d.family_fp)] {
                if fam.len() != edges {
                    failures.push(format!("k={k} l={l}: {name} has {} facets", fam.len()));
                    continue;
                }
                let mut seen = HashSet::new();
                for (j, f) in fam.iter().enumerate() {
                    let mut proj: Vec<usize> = f.iter().map(|v| pos[v]).collect();
                    proj.sort_unstable();
                    if proj != (j..j + k).collect::<Vec<_>>() {
                        failures.push(format!("k={k} l={l}: {name}[{j}] projects to {proj:?}"));
                    }
                    if !d.sphere.contains_facet(f) {
                        failures.push(format!("k={k} l={l}: {name}[{j}] is not a facet"));
                    }
                    if f.iter().any(|v| !seen.insert(*v)) {
                        failures.push(format!("k={k} l={l}: {name} facets overlap"));
                    }
                }
            }
            for (a, b) in d.family_f.iter().zip(&d.family_fp) {
                if a.iter().sorted().eq(b.iter().sorted()) {
                    failures.push(format!("k={k} l={l}: f_e = f'_e"));
                }
            }
            let spans: HashSet<usize> = d.sphere.vertices().iter().copied().collect();
            if spans != pos.keys().copied().collect::<HashSet<_>>() {
                failures.push(format!("k={k} l={l}: not spanning"));
            }
            for f in d.sphere.facets() {
                let ps: Vec<usize> = f.iter().map(|v| pos[v]).sorted().collect();
                if ps.windows(2).any(|w| w[1] != w[0] + 1) {
                    failures.push(format!("k={k} l={l}: facet {f:?} is not a path-edge transversal"));
                }
            }
            if let Err(e) = d.check(true) {
                failures.push(format!("k={k} l={l}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("{count} doubly covering spheres, {elapsed:.2?}"), Duration::from_secs(10), elapsed)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut infeasible = Vec::new();
    let mut cells = Vec::new();
    let mut parity_runs = 0;
    for s in [5, 6, 7] {
        let r = Hypergraph::complete(3, s).unwrap();
        let deg = r.vertex_degree(0);
        for part in [20, 40] {
            let mut ok = 0;
            let mut cell_fail = Vec::new();
            for seed in 0..20u64 {
                let mut g = rng(seed * 1000 + s as u64 * 10 + part as u64);
                let mut sizes = vec![part; s];
                // Odd seeds perturb the sizes; with slack an odd total forces the parity fix.
                if seed % 2 == 1 {
                    if s == 5 {
                        let two: Vec<usize> = (0..s).collect::<Vec<_>>().choose_multiple(&mut g, 2).copied().collect();
                        two.iter().for_each(|&x| sizes[x] += 1);
                    } else if part > 2 * deg {
                        sizes[g.gen_range(0..s)] += 1;
                    }
                }
                let b = Blowup::with_sizes(r.clone(), &sizes).unwrap();
                let mut pools: Vec<Vec<usize>> = b.parts().to_vec();
                pools.iter_mut().for_each(|p| p.shuffle(&mut g));
                let entries: Vec<Vec<usize>> =
                    r.edges().iter().map(|e| e.iter().map(|&x| pools[x].pop().unwrap()).sorted().collect()).collect();
                let fill = match fill_blowup(&r, &b, &entries) {
                    Ok(f) => f,
                    Err(e) => {
                        cell_fail.push(format!("seed {seed}: {e}"));
                        if matches!(e, Error::PartTooSmall { .. }) && part < 2 * deg {
                            infeasible.push(format!("s={s} part={part}: parts need {} vertices", 2 * deg));
                        }
                        continue;
                    }
                };
                let mut bad = Vec::new();
                let mut covered = HashSet::new();
                for (i, block) in fill.blocks.iter().enumerate() {
                    if block.iter().any(|v| !covered.insert(*v)) {
                        bad.push(format!("block {i} overlaps"));
                    }
                    let sphere = &fill.spheres[i];
                    if sphere.verify_sphere().level != CertificateLevel::FullDim2 || euler_oracle(sphere) != 2 {
                        bad.push(format!("S_{i} not certified"));
                    }
                    if !sphere.contains_facet(&entries[i]) {
                        bad.push(format!("entry facet of edge {i} missing"));
                    }
                    if sphere.facets().iter().any(|f| b.project_set(f) != r.edge(i)) || sphere.vertices() != block.as_slice() {
                        bad.push(format!("S_{i} leaves its block"));
                    }
                    let mut shape: Vec<usize> = r.edge(i).iter().map(|&x| block.iter().filter(|&&v| b.project(v) == x).count()).collect();
                    shape.sort_unstable();
                    let expect = if fill.e_star == Some(i) { vec![3, 3, 3] } else { vec![2, 2 + fill.routed[i], 2 + fill.routed[i]] };
                    if shape != expect {
                        bad.push(format!("edge {i} shape {shape:?}, expected {expect:?}"));
                    }
                }
                if covered.len() != b.vertex_count() {
                    bad.push(format!("blocks cover {} of {}", covered.len(), b.vertex_count()));
                }
                if fill.e_star.is_some() {
                    parity_runs += 1;
                }
                match bad.first() {
                    None => ok += 1,
                    Some(f) => cell_fail.push(format!("seed {seed}: {f}")),
                }
            }
            cells.push(format!("s={s}/{part}:{ok}/20"));
            failures.extend(cell_fail.into_iter().map(|f| format!("s={s} part={part} {f}")));
        }
    }
    if parity_runs == 0 {
        failures.push("no run needed the parity fix".into());
    }
    let elapsed = start.elapsed();
    let mut out =
        Outcome::new(&failures, format!("{}, parity runs {parity_runs}, {elapsed:.2?}", cells.join(" ")), Duration::from_secs(60), elapsed);
    infeasible.dedup();
    // Expected only if every failure is an undersized-part cell.
    let only_size = failures.iter().all(|f| f.contains("part=20") && f.contains("usable vertices"));
    if !out.pass && only_size && !infeasible.is_empty() {
        out.infeasible = Some(infeasible.join(", "));
    }
    out
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = Hypergraph::complete(3, 6).unwrap();
    let mut failures = Vec::new();
    let mut runs = 0;
    for singleton in [false, true] {
        for seed in 0..20u64 {
            runs += 1;
            let mut g = rng(seed + if singleton { 500 } else { 0 });
            let mut order: Vec<usize> = (0..6).collect();
            order.shuffle(&mut g);
            let mut sizes = vec![40; 6];
            let (p1, p2, opts) = if singleton {
                let x = order[5];
                sizes[x] = 1;
                let rest = &order[..5];
                let p1: Vec<usize> = rest[..3].to_vec();
                let p2: Vec<usize> = vec![rest[0], rest[3], rest[4]];
                (p1, p2, AllocateOptions::relaxed())
            } else {
                (order[..3].to_vec(), order[3..].to_vec(), AllocateOptions::default())
            };
            let b0 = Blowup::with_sizes(r.clone(), &sizes).unwrap();
            let b = Blowup::new(r.clone(), b0.parts().to_vec(), Rational::new(1, 10), Rational::from_integer(40)).unwrap();
            let mut pick = |ps: &[usize], avoid: &[usize]| -> Vec<usize> {
                ps.iter()
                    .map(|&x| *b.part(x).iter().copied().filter(|v| !avoid.contains(v)).collect::<Vec<usize>>().choose(&mut g).unwrap())
                    .sorted()
                    .collect()
            };
            let f1 = pick(&p1, &[]);
            let f2 = pick(&p2, &f1);
            match allocate(&b, &f1, &f2, &opts) {
                Err(e) => failures.push(format!("singleton={singleton} seed {seed}: {e}")),
                Ok(res) => {
                    let s = &res.sphere;
                    let spanning = s.facets().iter().all(|f| b.project_set(f).iter().tuple_windows().all(|(a, c)| a != c) && r.contains_edge(&b.project_set(f)))
                        && s.vertices() == b.vertices().as_slice();
                    let level = s.verify_sphere().level;
                    if !spanning || level != CertificateLevel::FullDim2 || euler_oracle(s) != 2 {
                        failures.push(format!("singleton={singleton} seed {seed}: spanning={spanning} level={level}"));
                    }
                    if !s.contains_facet(&f1) || !s.contains_facet(&f2) {
                        failures.push(format!("singleton={singleton} seed {seed}: prescribed facet missing"));
                    }
                    if singleton != res.report.singleton.is_some() {
                        failures.push(format!("singleton={singleton} seed {seed}: singleton not handled"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("{runs} allocations, {elapsed:.2?}"), Duration::from_secs(120), elapsed)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut runs = 0;
    let mut rows: Vec<(usize, usize, bool)> = vec![(2, 4, false), (3, 6, false), (4, 7, false), (3, 7, true), (4, 8, true)];
    rows.sort_unstable();
    for (k, s, singletons) in rows {
        let single = singletons.then_some(s - 1);
        let part = minimum_part_size(&Hypergraph::complete(k, s).unwrap(), single).unwrap();
        for links in 1..=4 {
            for seed in 0..2u64 {
                runs += 1;
                let tag = format!("k={k} s={s} links={links} singletons={singletons} seed={seed}");
                let params = ChainParams { singletons, ..ChainParams::new(k, s, links, part, seed) };
                let inst = match generate_chain_host(&params) {
                    Ok(i) => i,
                    Err(e) => {
                        failures.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let c = inst.certificate.as_ref().unwrap();
                let report = verify_chain(&inst.host, c);
                if !report.passed() {
                    failures.push(format!("{tag}: chain does not verify"));
                    continue;
                }
                let sphere = match spanning_sphere(&inst.host, c) {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let level = sphere.verify_sphere().level;
                let level_ok = match k {
                    2 => level == CertificateLevel::FullDim1 && sphere.facet_count() == sphere.vertex_count(),
                    3 => level == CertificateLevel::FullDim2,
                    _ => level.at_least_link_verified(),
                };
                if !sphere.is_spanning_copy(&inst.host).unwrap() || !level_ok {
                    failures.push(format!("{tag}: level {level}"));
                }
                if euler_oracle(&sphere) != 1 + if (k - 1) % 2 == 0 { 1 } else { -1 } {
                    failures.push(format!("{tag}: euler"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("{runs} chains, {elapsed:.2?}"), Duration::from_secs(300), elapsed)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut dirac, mut walks) = (0, 0);
    for seed in 0..200u64 {
        let mut g = rng(60_000 + seed);
        let k = if seed % 2 == 0 { 3 } else { 4 };
        let n = g.gen_range(k + 2..=14.min(if k == 4 { 11 } else { 14 }));
        let density = [0.3, 0.6, 0.85, 0.95][seed as usize % 4];
        let h = random_hypergraph(k, n, density, &mut g);
        let full = delta_oracle(&h, k - 1);
        for d in 1..k - 1 {
            let lhs = Rational::from_integer(delta_oracle(&h, d) as i64);
            let rhs = Rational::new(full as i64, (k - d) as i64) * Rational::from_integer(delta_oracle(&h, d + 1) as i64);
            if lhs < rhs {
                failures.push(format!("seed {seed}: supported degree inequality fails at d={d}"));
            }
        }
        if full >= (n - k + 1) / 2 && !h.has_isolated_vertices() && h.edge_count() > 0 {
            dirac += 1;
            if !h.is_tightly_connected() {
                failures.push(format!("seed {seed}: Dirac instance not tightly connected"));
            }
        }
        if h.is_tightly_connected() {
            walks += 1;
            let w = covering_tight_walk(&h).unwrap();
            let windows: HashSet<Vec<usize>> = (0..=w.order() - k).map(|i| w.vertices[i..i + k].iter().copied().sorted().collect()).collect();
            let bound = (n as u128).pow(2 * k as u32);
            if windows.iter().any(|e| !h.contains_edge(e)) || windows.len() != h.edge_count() || w.order() as u128 > bound {
                failures.push(format!("seed {seed}: covering walk invalid (order {})", w.order()));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("200 hypergraphs, {dirac} in the Dirac regime, {walks} walks, {elapsed:.2?}"), Duration::from_secs(120), elapsed)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [10, 12, 14] {
        let h = lower_bound_codegree(3, n).unwrap().hypergraph().unwrap().clone();
        if delta_oracle(&h, 2) != n / 2 - 1 || h.min_supported_codegree() != n / 2 - 1 {
            failures.push(format!("codegree n={n}: δ* = {}", delta_oracle(&h, 2)));
        }
        let split = h.without_edges_containing(&[0, 1]).tight_components().components.len();
        if split != 2 || !h.is_tightly_connected() {
            failures.push(format!("codegree n={n}: {split} components after removing T"));
        }
    }
    let t = lower_bound_tight_cycle(3, 9).unwrap().hypergraph().unwrap().clone();
    if delta_oracle(&t, 2) != 4 {
        failures.push(format!("tight cycle: δ* = {}", delta_oracle(&t, 2)));
    }
    if exhaustive_perfect_matching(&t).is_some() {
        failures.push("tight cycle: perfect matching found".into());
    }
    let v = lower_bound_vertex_degree(9).unwrap().hypergraph().unwrap().clone();
    let spanning = v.tight_components().components.iter().any(|c| c.iter().flat_map(|&i| v.edge(i).to_vec()).unique().count() == 9);
    if spanning {
        failures.push("vertex degree: spanning tight component".into());
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("5 constructions, {elapsed:.2?}"), Duration::from_secs(30), elapsed)
}

fn brute_matching(n: usize, edges: &[(usize, usize)]) -> usize {
    fn go(v: usize, n: usize, adj: &[Vec<usize>], used: &mut [bool]) -> usize {
        let Some(v) = (v..n).find(|&x| !used[x]) else { return 0 };
        used[v] = true;
        let mut best = go(v + 1, n, adj, used);
        for &w in &adj[v] {
            if !used[w] {
                used[w] = true;
                best = best.max(1 + go(v + 1, n, adj, used));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    go(0, n, &adj, &mut vec![false; n])
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for case in 0..100u64 {
        let mut g = rng(80_000 + case);
        let k = g.gen_range(2..=4);
        let n = g.gen_range(k + 2..=12);
        let h = random_hypergraph(k, n, g.gen_range(0.2..0.9), &mut g);
        for _ in 0..5 {
            let size = g.gen_range(1..=k);
            let set: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(&mut g, size).copied().collect();
            if h.degree(&set).unwrap() != degree_oracle(&h, &set) {
                failures.push(format!("case {case}: degree of {set:?}"));
            }
        }
        for d in 1..k {
            if h.min_supported_d_degree(d).unwrap().delta_star_d != delta_oracle(&h, d) {
                failures.push(format!("case {case}: δ*_{d}"));
            }
        }
        let gn = g.gen_range(2..=12);
        let graph = random_hypergraph(2, gn, g.gen_range(0.1..0.7), &mut g);
        let pairs: Vec<(usize, usize)> = graph.edges().iter().map(|e| (e[0], e[1])).collect();
        if maximum_matching(&graph).len() != brute_matching(gn, &pairs) {
            failures.push(format!("case {case}: matching size"));
        }
        if case % 4 == 0 && k == 3 && n >= 6 {
            let eps = Rational::new(1, 20);
            let pg = property_graph(&h, &PropertyPredicate::dirac(eps, 3), 6, DEFAULT_BUDGET).unwrap();
            let recount = (0..n)
                .combinations(6)
                .filter(|s| {
                    let inside: Vec<&Vec<usize>> = h.edges().iter().filter(|e| e.iter().all(|v| s.contains(v))).collect();
                    let covered = s.iter().all(|v| inside.iter().any(|e| e.contains(v)));
                    let mut codeg: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
                    for e in &inside {
                        for drop in 0..3 {
                            *codeg.entry(e.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v).collect()).or_default() += 1;
                        }
                    }
                    let min = codeg.values().copied().min().unwrap_or(0);
                    covered && Rational::from_integer(2 * min) >= Rational::new(11, 10) * Rational::from_integer(6)
                })
                .count();
            if pg.edge_count() != recount {
                failures.push(format!("case {case}: property graph {} vs {recount}", pg.edge_count()));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("100 cases, {elapsed:.2?}"), Duration::from_secs(120), elapsed)
}

fn run_cli(args: &[&str], out: &Path) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_spheres"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map(|o| o.status.code().unwrap_or(-1))
        .unwrap_or(-1)
}

fn dir_contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .map(|rd| rd.flatten().map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())).collect())
        .unwrap_or_default()
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let tmp = tempfile::tempdir().unwrap();
    let t = tmp.path();
    let inputs = t.join("inputs");
    let p = |name: &str| inputs.join(name).to_string_lossy().into_owned();
    io::write_file(&inputs.join("k6.hg"), &io::write_hg(&Hypergraph::complete(3, 6).unwrap())).unwrap();
    io::write_file(&inputs.join("parts.txt"), &io::write_parts(Blowup::regular(Hypergraph::complete(3, 6).unwrap(), 30).unwrap().parts())).unwrap();
    let k44: Vec<[usize; 2]> = (0..4).cartesian_product(4..8).map(|(a, b)| [a, b]).collect();
    io::write_file(&inputs.join("k44.hg"), &io::write_hg(&Hypergraph::new(2, 8, &k44).unwrap())).unwrap();
    io::write_file(&inputs.join("k9.parts"), "0 1 2\n3 4 5\n6 7 8\n").unwrap();
    let mut pig: Vec<[usize; 2]> = (0..3).cartesian_product(3..6).map(|(a, b)| [a, b]).collect();
    pig.extend([[3, 8], [4, 8]]);
    io::write_file(&inputs.join("pig.hg"), &io::write_hg(&Hypergraph::new(2, 9, &pig).unwrap())).unwrap();
    io::write_file(&inputs.join("one.hg"), "2 3\n0 1\n").unwrap();
    io::write_file(&inputs.join("path.hg"), "2 3\n0 1\n1 2\n").unwrap();

    let (lb, pg) = (t.join("seed-dir/lb"), t.join("seed-dir/chain"));
    run_cli(&["lower-bound", "codegree", "--k", "3", "--n", "12"], &lb);
    run_cli(&["chain", "gen", "--k", "2", "--s", "4", "--links", "2", "--part-size", "10", "--emit-host", "--seed", "3"], &pg);
    let lb_hg = lb.join("lower_bound.hg").to_string_lossy().into_owned();
    let chain = pg.join("chain.chain").to_string_lossy().into_owned();
    let host = pg.join("host.hg").to_string_lossy().into_owned();
    let commands: Vec<Vec<String>> = [
        vec!["stats", &lb_hg],
        vec!["lower-bound", "tight-cycle", "--k", "3", "--n", "9"],
        vec!["lower-bound", "vertex-degree", "--n", "9"],
        vec!["sphere", "partite", "--sizes", "2,3,4,4"],
        vec!["sphere", "path", "--k", "3", "--len", "8"],
        vec!["allocate", "--base", &p("k6.hg"), "--parts", &p("parts.txt"), "--f1", "0,30,60", "--f2", "90,120,150"],
        vec!["chain", "gen", "--k", "3", "--s", "6", "--links", "3", "--part-size", "26", "--seed", "11"],
        vec!["chain", "verify", &chain, "--host", &host],
        vec!["chain", "solve", &chain, "--jobs", "1"],
        vec!["chain", "solve", &chain, "--jobs", "4"],
        vec!["pipeline", "--k", "3", "--s", "6", "--links", "2", "--part-size", "26", "--seed", "5"],
        vec!["pipeline", "--k", "4", "--s", "7", "--links", "2", "--part-size", "49"],
        vec!["extremal", "pg", &lb_hg, "--s", "6", "--epsilon", "1/20"],
        vec!["extremal", "turan", &p("k44.hg"), "--b", "2"],
        vec!["extremal", "pigeonhole", &p("pig.hg"), "--parts", &p("k9.parts"), "--family", &format!("{},{}", p("one.hg"), p("path.hg"))],
    ]
    .into_iter()
    .map(|c| c.into_iter().map(String::from).collect())
    .collect();
    let mut failures = Vec::new();
    let mut solve_outputs = Vec::new();
    for (i, cmd) in commands.iter().enumerate() {
        let args: Vec<&str> = cmd.iter().map(String::as_str).collect();
        let (a, b) = (t.join(format!("run{i}a")), t.join(format!("run{i}b")));
        let (ca, cb) = (run_cli(&args, &a), run_cli(&args, &b));
        let (da, db) = (dir_contents(&a), dir_contents(&b));
        if ca != 0 || cb != 0 {
            failures.push(format!("{}: exit codes {ca}/{cb}", cmd.join(" ")));
        }
        if da.is_empty() || da != db {
            failures.push(format!("{}: outputs differ between runs", cmd.join(" ")));
        }
        if cmd[0] == "chain" && cmd[1] == "solve" {
            solve_outputs.push(da.get("sphere.sc").cloned());
        }
    }
    if solve_outputs.len() != 2 || solve_outputs[0] != solve_outputs[1] || solve_outputs[0].is_none() {
        failures.push("chain solve output depends on --jobs".into());
    }
    let elapsed = start.elapsed();
    Outcome::new(&failures, format!("{} commands run twice, {elapsed:.2?}", commands.len()), Duration::from_secs(300), elapsed)
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (i, f) in criteria {
        if !filter.is_empty() && !filter.contains(&i) {
            continue;
        }
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        match &o.infeasible {
            Some(why) if !o.pass => println!("criterion {i}: {status} (infeasible: {why}) {}", o.detail),
            _ => println!("criterion {i}: {status} {}", o.detail),
        }
        if !o.pass && o.infeasible.is_none() {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
