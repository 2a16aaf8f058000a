//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use qbps_core::bps::{label_block_sums, r_prime_levels, SummandOrder};
use qbps_core::lattice::block_slots;
use qbps_core::oracle::{membership_by_facets, rinv_by_cuts};
use qbps_core::rational::{qi, qr};
use qbps_core::sod::preprojective_thetas;
use qbps_core::*;
use std::result::Result;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Wall-clock budget for criterion 1.
const MEMBERSHIP_BUDGET: Duration = Duration::from_secs(60);
/// Random points per membership instance.
const MEMBERSHIP_POINTS: usize = 1000;
/// Random weights per r-invariant instance.
const RINV_POINTS: usize = 200;
/// Exact arithmetic throughout: every comparison uses tolerance zero.
const TOLERANCE: i64 = 0;

type Check = Result<String, String>;

fn zero() -> Q {
    qi(0)
}

fn half() -> Q {
    qr(1, 2)
}

fn d1(n: usize) -> DimVec {
    DimVec(vec![n])
}

fn two_vertex() -> Quiver {
    Quiver::new(&["0", "1"], &[("0", "1"), ("0", "1")]).unwrap()
}

fn companion_a2() -> Quiver {
    Quiver::a2().double().very_symmetric_companion(Some(2)).unwrap().0
}

fn membership_instances() -> Vec<(String, Quiver, DimVec)> {
    let mut v = Vec::new();
    for n in 1..=4 {
        v.push((format!("tripled Jordan d={n}"), Quiver::loops(1).triple(), d1(n)));
    }
    v.push(("tripled A2 d=(2,1)".into(), Quiver::a2().triple(), DimVec(vec![2, 1])));
    for n in 1..=3 {
        v.push((format!("doubled 2-loop d={n}"), Quiver::loops(2).double(), d1(n)));
    }
    v
}

fn random_q(rng: &mut StdRng, lo: &Q, hi: &Q) -> Q {
    let den = rng.random_range(1..=6i64);
    let a = (lo * qi(den)).floor().to_integer();
    let b = (hi * qi(den)).ceil().to_integer();
    let a: i64 = a.try_into().unwrap();
    let b: i64 = b.try_into().unwrap();
    qr(rng.random_range(a..=b.max(a)), den)
}

/// Random point near the zonotope: a combination of generators with coefficients in `[-1/3, 4/3]`.
fn near_point(rng: &mut StdRng, z: &Zonotope) -> Weight {
    let mut x = z.offset.clone();
    for s in &z.segments {
        let t = random_q(rng, &qr(-1, 3), &qr(4, 3));
        x = &x + &s.dir.scale(&(&t * &s.len));
    }
    x
}

fn criterion_1() -> Check {
    let mut rng = StdRng::seed_from_u64(1);
    let start = Instant::now();
    let (mut inside, mut outside, mut boundary) = (0usize, 0usize, 0usize);
    for (name, q, d) in membership_instances() {
        let z = w_polytope(&q, &d).map_err(|e| e.to_string())?;
        for i in 0..MEMBERSHIP_POINTS {
            let mut x = near_point(&mut rng, &z);
            match i % 10 {
                0 => {
                    let s = rng.random_range(0..d.total());
                    x.0[s] += random_q(&mut rng, &qr(-1, 1), &qr(1, 1));
                }
                1 => {
                    let r = z.r_invariant(&x).map_err(|e| e.to_string())?;
                    if r > zero() {
                        x = x.scale(&(qi(1) / (qi(2) * r)));
                        boundary += 1;
                    }
                }
                _ => {}
            }
            let lp = z.contains(&x, &qi(1)).map_err(|e| e.to_string())?;
            let facets = membership_by_facets(&z, &x).map_err(|e| e.to_string())?;
            if lp != facets {
                return Err(format!("{name}: LP {lp} vs facets {facets} at {x:?}"));
            }
            if lp {
                inside += 1;
            } else {
                outside += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > MEMBERSHIP_BUDGET {
        return Err(format!("took {elapsed:?}, budget {MEMBERSHIP_BUDGET:?}"));
    }
    Ok(format!(
        "{} instances x {MEMBERSHIP_POINTS} points, {inside} inside / {outside} outside / {boundary} scaled to the boundary, {:.1}s",
        membership_instances().len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    let mut n = 0;
    for (name, q, d) in membership_instances() {
        let a = q.very_symmetric().ok_or(format!("{name} is not very symmetric"))?;
        let z = w_polytope(&q, &d).map_err(|e| e.to_string())?;
        for _ in 0..RINV_POINTS {
            let m = d.total();
            let mut v: Vec<Q> = (0..m).map(|_| random_q(&mut rng, &qi(-4), &qi(4))).collect();
            let mean = v.iter().sum::<Q>() / qi(m as i64);
            for x in &mut v {
                *x -= &mean;
            }
            let x = Weight(v);
            let lp = z.r_invariant(&x).map_err(|e| e.to_string())?;
            let cuts = rinv_by_cuts(&q, &d, &x).map_err(|e| e.to_string())?;
            let (formula, _) = qbps_core::zonotope::cut_ratio(a, &d, &x);
            if lp != cuts || lp != formula {
                return Err(format!("{name}: LP {lp}, cuts {cuts}, formula {formula} at {x:?}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} weights, LP = cut oracle = cut formula"))
}

fn dominant_box(d: &DimVec, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &k in &d.0 {
        let mut next = Vec::new();
        for prefix in &out {
            let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
            while let Some(cur) = stack.pop() {
                if cur.len() == k {
                    let mut p = prefix.clone();
                    p.extend(&cur);
                    next.push(p);
                    continue;
                }
                let start = cur.last().copied().unwrap_or(lo);
                for v in start..=hi {
                    let mut c = cur.clone();
                    c.push(v);
                    stack.push(c);
                }
            }
        }
        out = next;
    }
    out
}

/// `N` for splitting the slots `group` into ordered pieces, from raw edge weights.
fn split_weight(q: &Quiver, d: &DimVec, pieces: &[Vec<usize>]) -> Weight {
    let n = d.total();
    let k = pieces.len() as i64;
    let mut lam: Vec<Option<i64>> = vec![None; n];
    for (j, p) in pieces.iter().enumerate() {
        for &s in p {
            lam[s] = Some(k - 1 - j as i64);
        }
    }
    let off = d.offsets();
    let mut out = Weight::zero(n);
    for &(a, b) in q.edges() {
        for i in 0..d.0[a] {
            for j in 0..d.0[b] {
                let (s, t) = (off[a] + i, off[b] + j);
                if let (Some(ls), Some(lt)) = (lam[s], lam[t]) {
                    if lt > ls {
                        out.0[t] += qi(1);
                        out.0[s] -= qi(1);
                    }
                }
            }
        }
    }
    out
}

fn check_decomposition(q: &Quiver, d: &DimVec, chi: &Weight) -> Result<(), String> {
    let delta = Weight::zero(d.total());
    let dec = decompose_weight(q, d, chi, &delta).map_err(|e| e.to_string())?;
    let parts = dec.label.partition();
    let slots = block_slots(&parts).map_err(|e| e.to_string())?;
    let n = d.total();
    // level partitions coarsen the final one by grouping consecutive parts
    let mut groupings: Vec<Vec<usize>> = Vec::new();
    for l in &dec.path.levels {
        let mut sizes = Vec::new();
        let mut i = 0;
        for p in &l.partition {
            let mut acc = DimVec(vec![0; d.len()]);
            let start = i;
            while acc != *p {
                if i == parts.len() {
                    return Err("level partition is not a coarsening".into());
                }
                for (x, y) in acc.0.iter_mut().zip(&parts[i].0) {
                    *x += y;
                }
                i += 1;
            }
            sizes.push(i - start);
        }
        groupings.push(sizes);
    }
    let mut prev: Vec<Vec<usize>> = vec![(0..parts.len()).collect()];
    let mut rn = Weight::zero(n);
    for (l, sizes) in dec.path.levels.iter().zip(&groupings) {
        let mut cur = Vec::new();
        let mut i = 0;
        for s in sizes {
            cur.push((i..i + s).collect::<Vec<_>>());
            i += s;
        }
        for g in &prev {
            let subs: Vec<&Vec<usize>> = cur.iter().filter(|c| g.contains(&c[0])).collect();
            if subs.len() > 1 {
                let pieces: Vec<Vec<usize>> =
                    subs.iter().map(|c| c.iter().flat_map(|&b| slots[b].clone()).collect()).collect();
                rn = &rn + &split_weight(q, d, &pieces).scale(&l.r);
            }
        }
        prev = cur;
    }
    let mut psi = Weight::zero(n);
    for (p, s) in dec.path.psi.iter().zip(&slots) {
        psi = &psi + &Weight::embed(p, s, n);
    }
    let (tau, _) = tau_sigma(d).map_err(|e| e.to_string())?;
    let lhs = &(chi + &rho(d)) - &delta;
    let rhs = &(&psi - &rn) + &tau.scale(&dec.w);
    if lhs != rhs {
        return Err(format!("reconstruction fails for {chi:?}"));
    }
    let rs: Vec<Q> = dec.path.levels.iter().map(|l| l.r.clone()).collect();
    if rs.iter().any(|r| *r <= half()) || rs.windows(2).any(|w| w[0] <= w[1]) {
        return Err(format!("coefficients {rs:?} for {chi:?}"));
    }
    if !dec.label.slopes_increasing() {
        return Err(format!("slopes not increasing for {chi:?}"));
    }
    for (p, psi) in parts.iter().zip(&dec.path.psi) {
        let z = w_polytope(q, p).map_err(|e| e.to_string())?;
        if !z.contains(psi, &qi(1)).map_err(|e| e.to_string())? {
            return Err(format!("residual outside W({:?}) for {chi:?}", p.0));
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let mut cases: Vec<(Quiver, DimVec)> = (1..=3).map(|n| (Quiver::loops(3), d1(n))).collect();
    cases.push((companion_a2(), DimVec(vec![1, 1])));
    cases.push((companion_a2(), DimVec(vec![2, 1])));
    let mut n = 0;
    let mut split = 0;
    for (q, d) in &cases {
        for c in dominant_box(d, -4, 4) {
            let chi = Weight::from_ints(&c);
            check_decomposition(q, d, &chi)?;
            if decompose_weight(q, d, &chi, &Weight::zero(d.total())).unwrap().label.parts.len() > 1 {
                split += 1;
            }
            n += 1;
        }
    }
    Ok(format!("{n} weights ({split} with a nontrivial partition)"))
}

fn criterion_4() -> Check {
    let q = Quiver::loops(3);
    let mu: GenericReal = "0:-1".parse().unwrap();
    let mut notes = Vec::new();
    for n in 2..=3 {
        let d = d1(n);
        let zero_w = Weight::zero(n);
        let dd = dd_generators(&q, &d, &GenericWeight::shifted(&zero_w, &mu)).map_err(|e| e.to_string())?;
        let rep = framed_summands(&q, &d, &mu, 1, &zero_w).map_err(|e| e.to_string())?;
        let mut sum = 0usize;
        for e in &rep.labels {
            let mut prod = 1;
            for ((p, _), bw) in e.label.parts.iter().zip(&e.block_weights) {
                prod *= magic_generators(&q, p, bw).map_err(|e| e.to_string())?.len();
            }
            sum += prod;
        }
        if dd.len() != sum {
            return Err(format!("d={n}: {} quasi-BPS generators vs {sum}", dd.len()));
        }
        let labels: BTreeSet<SummandLabel> = rep.label_set().into_iter().collect();
        let mut hit = BTreeSet::new();
        for chi in &dd {
            let l = to_summand(&q, &d, chi, &zero_w).map_err(|e| e.to_string())?;
            if !labels.contains(&l) {
                return Err(format!("d={n}: generator {chi:?} maps outside the window"));
            }
            hit.insert(l);
        }
        if hit != labels {
            return Err(format!("d={n}: some label has no generator"));
        }
        notes.push(format!("d={n}: {} = {sum} over {} labels", dd.len(), labels.len()));
    }
    let tau = tau_sigma(&d1(2)).unwrap().0;
    let m0 = magic_generators(&q, &d1(2), &Weight::zero(2)).unwrap().len();
    let m1 = magic_generators(&q, &d1(2), &tau).unwrap().len();
    let rep = framed_summands(&q, &d1(2), &mu, 1, &Weight::zero(2)).unwrap();
    if (m0, m1, rep.generator_count) != (2, 1, Some(3)) {
        return Err(format!("anchors: ({m0}, {m1}, {:?})", rep.generator_count));
    }
    notes.push("anchors 2, 1, 3".into());
    Ok(notes.join("; "))
}

fn criterion_5() -> Check {
    let cases: Vec<(&str, Quiver, Vec<DimVec>)> = vec![
        ("tripled Jordan", Quiver::loops(1).triple(), (1..=4).map(d1).collect()),
        ("tripled 2-loop", Quiver::loops(2).triple(), (1..=3).map(d1).collect()),
        (
            "tripled two-vertex",
            two_vertex().triple(),
            vec![DimVec(vec![1, 1]), DimVec(vec![2, 1]), DimVec(vec![1, 2]), DimVec(vec![2, 2])],
        ),
    ];
    let (mut coprime, mut witnessed) = (0, 0);
    for (name, q, ds) in cases {
        for d in ds {
            let z = w_polytope(&q, &d).map_err(|e| e.to_string())?;
            let (tau, _) = tau_sigma(&d).unwrap();
            let n = d.total() as i64;
            for v in 0..n {
                let delta = tau.scale(&qi(v));
                let gens = magic_generators(&q, &d, &delta).map_err(|e| e.to_string())?;
                let mut on = 0;
                for g in &gens {
                    if z.on_boundary(&(&(g + &rho(&d)) - &delta)).map_err(|e| e.to_string())? {
                        on += 1;
                    }
                }
                let gate = support_gate(d.total(), v).unwrap().gate;
                if gate && on > 0 {
                    return Err(format!("{name} d={:?} v={v}: {on} boundary generators", d.0));
                }
                if !gate && on == 0 {
                    return Err(format!("{name} d={:?} v={v}: no boundary witness", d.0));
                }
                if gate {
                    coprime += 1;
                } else {
                    witnessed += 1;
                }
            }
        }
    }
    let z = w_polytope(&Quiver::loops(3), &d1(2)).unwrap();
    if !z.on_boundary(&Weight(vec![qr(-3, 2), qr(3, 2)])).unwrap() {
        return Err("3-loop witness (-3/2, 3/2) is not on the boundary".into());
    }
    Ok(format!("{coprime} coprime cases without boundary generators, {witnessed} cases with witnesses"))
}

fn dims_up_to(n_vertices: usize, max_total: usize) -> Vec<DimVec> {
    let mut out = vec![Vec::new()];
    for _ in 0..n_vertices {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| (0..=max_total).map(move |k| [p.clone(), vec![k]].concat()))
            .collect();
    }
    out.into_iter()
        .filter(|p| (1..=max_total).contains(&p.iter().sum::<usize>()))
        .map(DimVec)
        .collect()
}

/// Direct multiset sum of `Σ β` over edge pairs with `⟨λ, β⟩` satisfying `keep`.
fn edge_sum(edges: &[(usize, usize)], d: &DimVec, lam: &[i64], keep: impl Fn(i64) -> bool) -> Weight {
    let off = d.offsets();
    let mut out = Weight::zero(d.total());
    for &(a, b) in edges {
        for i in 0..d.0[a] {
            for j in 0..d.0[b] {
                let (s, t) = (off[a] + i, off[b] + j);
                if keep(lam[t] - lam[s]) {
                    out.0[t] += qi(1);
                    out.0[s] -= qi(1);
                }
            }
        }
    }
    out
}

fn criterion_6() -> Check {
    let cases: Vec<(&str, Quiver, usize)> = vec![
        ("tripled two-vertex, A=3", two_vertex().triple(), 3),
        ("tripled two-vertex, A=5", two_vertex().triple(), 5),
        ("doubled A2, A=2", Quiver::a2().double(), 2),
        ("tripled A2, A=3", Quiver::a2().triple(), 3),
        ("tripled Jordan, A=1", Quiver::loops(1).triple(), 3),
        ("2-loop, A=4", Quiver::loops(2), 4),
    ];
    let mut n = 0;
    for (name, q, a) in cases {
        let (qc, u) = q.very_symmetric_companion(Some(a)).map_err(|e| format!("{name}: {e}"))?;
        for d in dims_up_to(q.gauge_count(), 4) {
            for parts in compositions(&d) {
                let rep = knorrer_shift_check(&q, &d, &parts, Some(a)).map_err(|e| format!("{name}: {e}"))?;
                let lam = block_cocharacter(&parts).unwrap().0;
                let pos = |x: i64| x > 0;
                let rc = edge_sum(qc.edges(), &d, &lam, pos);
                let r = edge_sum(q.edges(), &d, &lam, pos);
                let u_all = edge_sum(&u.edges, &d, &lam, |_| true);
                let u_fix = edge_sum(&u.edges, &d, &lam, |x| x == 0);
                let u_pos = edge_sum(&u.edges, &d, &lam, pos);
                let direct = &(&(&(&rc - &r).scale(&-half()) - &u_all.scale(&half())) + &u_fix.scale(&half())) + &u_pos;
                if !direct.is_zero() || !rep.holds() {
                    return Err(format!("{name} d={:?} parts={parts:?}: residual {direct:?}", d.0));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} (quiver, d, partition) cases, all residuals zero"))
}

fn criterion_7() -> Check {
    let expect = [((2, 2), 10), ((3, 2), 18), ((2, 1), 4)];
    for ((g, n), v) in expect {
        let got = dim_p(&Quiver::loops(g), &d1(n)).map_err(|e| e.to_string())?;
        if got != DimP::Value(v) {
            return Err(format!("dim_P(g={g}, d={n}) = {got:?}, expected {v}"));
        }
    }
    for g in 1..=6usize {
        let a = alpha_q(&Quiver::loops(g)).unwrap();
        if a != 2 * g as i64 - 2 {
            return Err(format!("alpha of the {g}-loop quiver is {a}"));
        }
    }
    let mut rows = 0;
    for g in 1..=5usize {
        for n in 1..=4usize {
            let f = gorenstein_flags(&Quiver::loops(g), &d1(n)).unwrap();
            let alpha = 2 * g as i64 - 2;
            let want = (alpha >= 1, alpha >= 2, alpha >= 3 || (alpha == 2 && n >= 3) || (g == 2 && n == 2));
            if (f.xy_gorenstein, f.p_classical_normal, f.p_gorenstein) != want {
                return Err(format!("flags for g={g}, d={n}: {f:?}"));
            }
            rows += 1;
        }
    }
    let mut labels = 0;
    for g in 1..=4usize {
        let q0 = Quiver::loops(g);
        let win = SlopeWindow::new("-3".parse().unwrap(), "3".parse().unwrap());
        let rep = preprojective_summands(&q0, &d1(2), &win).map_err(|e| e.to_string())?;
        for e in rep.labels.iter().filter(|e| e.label.parts.len() == 2) {
            let sw = e.shifted_w.as_ref().ok_or("missing shifted weights")?;
            let (v1, v2) = (&e.label.parts[0].1, &e.label.parts[1].1);
            let gm = qi(g as i64 - 1);
            let thetas = preprojective_thetas(&q0, &e.label.partition()).unwrap();
            if sw[0] != v1 - &gm || sw[1] != v2 + &gm || sw[0] != v1 + thetas[0].total() || sw[1] != v2 + thetas[1].total() {
                return Err(format!("g={g}: shifted weights {sw:?} for {:?}", e.label));
            }
            labels += 1;
        }
    }
    Ok(format!("dim_P anchors, alpha for g<=6, {rows} flag rows, {labels} length-2 labels"))
}

fn criterion_8() -> Check {
    let q = Quiver::loops(3);
    let a_const = 3;
    let mu: GenericReal = "0:-1".parse().unwrap();
    let (mut pairs, mut levels) = (0, 0);
    for n in 2..=3 {
        let d = d1(n);
        for alpha in 1..=3 {
            let rep = framed_summands(&q, &d, &mu, alpha, &Weight::zero(n)).map_err(|e| e.to_string())?;
            let labels = rep.label_set();
            for a in &labels {
                for b in &labels {
                    let ab = compare_summands(&q, &d, a, b).map_err(|e| e.to_string())?;
                    let ba = compare_summands(&q, &d, b, a).map_err(|e| e.to_string())?;
                    if (a == b) != (ab == SummandOrder::Equal) || ab != ba.reversed() {
                        return Err(format!("{a:?} vs {b:?}: {ab:?} / {ba:?}"));
                    }
                    pairs += 1;
                }
                // r'_1 from the canonical generator and raw block sums
                let chi = from_summand(&q, &d, a, &Weight::zero(n)).map_err(|e| e.to_string())?;
                let parts = a.partition();
                let slots = block_slots(&parts).unwrap();
                let lam = block_cocharacter(&parts).unwrap().0;
                let mut gneg = Weight::zero(n);
                for s in 0..n {
                    for t in 0..n {
                        if s != t && lam[t] - lam[s] < 0 {
                            gneg.0[t] += qi(1);
                            gneg.0[s] -= qi(1);
                        }
                    }
                }
                let shifted = &chi + &gneg.scale(&half());
                let w: Vec<Q> = slots.iter().map(|s| shifted.restrict(s).total()).collect();
                if w != label_block_sums(&q, a).unwrap() {
                    return Err(format!("block sums differ for {a:?}"));
                }
                let k = parts.len();
                let dbar: Vec<i64> = parts.iter().map(|p| p.total() as i64).collect();
                let expected = (1..k)
                    .map(|c| {
                        let (wl, sl): (Q, i64) = (w[..c].iter().sum(), dbar[..c].iter().sum());
                        let (wh, sh): (Q, i64) = (w[c..].iter().sum(), dbar[c..].iter().sum());
                        (wh / qi(sh) - wl / qi(sl)) / qi(a_const * n as i64)
                    })
                    .max();
                let got = r_prime_levels(&q, a).unwrap().first().map(|l| l.r.clone());
                let dec_r = decompose_weight(&q, &d, &chi, &Weight::zero(n)).unwrap().path.levels.first().map(|l| l.r.clone());
                if got != expected || got != dec_r {
                    return Err(format!("{a:?}: r'_1 {got:?}, formula {expected:?}, decomposition {dec_r:?}"));
                }
                levels += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, {levels} r'_1 values"))
}

fn criterion_9() -> Check {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let three = format!("{dir}/three_loop.json");
    let a2 = format!("{dir}/a2.json");
    let two = format!("{dir}/two_vertex.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["--quiver", &three, "describe"],
        vec!["--quiver", &a2, "build", "double"],
        vec!["--quiver", &a2, "build", "triple"],
        vec!["--quiver", &a2, "build", "frame", "--alpha", "1"],
        vec!["--quiver", &three, "build", "companion", "--A", "5"],
        vec!["--quiver", &three, "magic-gens", "--d", "3"],
        vec!["--quiver", &three, "decompose", "--d", "3", "--chi", "{\"0\":[-3,0,3]}"],
        vec!["--quiver", &three, "sod", "framed", "--d", "2", "--mu", "0:-1", "--alpha", "1"],
        vec!["--quiver", &three, "sod", "unframed", "--d", "2", "--w", "0", "--window", "-3/2,3/2"],
        vec!["--quiver", &two, "sod", "preprojective", "--d", "{\"0\":1,\"1\":1}", "--window", "-1,1"],
        vec!["--quiver", &three, "check", "good-weight", "--d", "2"],
        vec!["check", "support", "--v", "1", "--dbar", "2"],
        vec!["--quiver", &three, "check", "structure", "--d", "2"],
        vec!["verify"],
    ];
    for args in &runs {
        let run = || Command::new(env!("CARGO_BIN_EXE_qbps")).args(args).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        if !a.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&a.stderr)));
        }
        if a.stdout != b.stdout {
            return Err(format!("{args:?}: outputs differ"));
        }
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| format!("{args:?}: {e}"))?;
        if serde_json::to_string_pretty(&v).unwrap() + "\n" != String::from_utf8_lossy(&a.stdout) {
            return Err(format!("{args:?}: JSON does not re-serialize identically"));
        }
    }
    Ok(format!("{} invocations byte-identical and re-parseable", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("dual-method membership", criterion_1),
        ("r-invariant equivalence", criterion_2),
        ("decomposition soundness", criterion_3),
        ("bijection and counting identity", criterion_4),
        ("boundary and coprimality", criterion_5),
        ("companion shift identity", criterion_6),
        ("structure numerics", criterion_7),
        ("order sanity", criterion_8),
        ("CLI determinism and round-trip", criterion_9),
    ];
    println!("acceptance (exact arithmetic, tolerance {TOLERANCE})");
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
