//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use hsym::abelian::{FGAbelianGroup, FiniteGroup, GroupRingElement};
use hsym::anomaly::{build_central_extension, classify_anomalies_zero_form, group_cohomology_z, DEFAULT_ORDER_BOUND};
use hsym::complex::{library, orient, SimplicialComplex, StarOpen, Subcomplex};
use hsym::covers::{descent_check, is_k_supportive, weiss_cover, CoverSpec, SupportVerdict, SupportiveParams, WeissStyle};
use hsym::homology::{compactly_supported_cohomology, poincare_duality_check};
use hsym::symmetry::{
    check_coherence, defect_operator, fuse, permutation_invariant, random_nesting, CollarSide, Prefactorization,
    QFormAlgebra, ZeroFormOperator,
};
use hsym::Int;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn lib(name: &str) -> Arc<SimplicialComplex> {
    Arc::new(library(name).expect("built-in complex"))
}

fn int(v: i64) -> Int {
    Int::from(v)
}

fn defect_fusion() -> Outcome {
    let x = lib("T2");
    let f = QFormAlgebra::new(x.clone(), 0, FGAbelianGroup::cyclic(4)).map_err(|e| e.to_string())?;
    let m = Subcomplex::full(&x, &[0, 1, 2]);
    let o = orient(&m.to_complex()).map_err(|e| e.to_string())?.orientation().ok_or("meridian not orientable")?;
    let h = f.value(&m.star()).map_err(|e| e.to_string())?;
    check(h.to_string() == "Z/4", || format!("neighborhood group is {h}"))?;
    let ops = (0..4).map(|a| defect_operator(&f, &m, &[int(a)], &o)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for a in 0..4 {
        for b in 0..4 {
            let fused = fuse(&f, &ops[a], &ops[b]).map_err(|e| e.to_string())?;
            let want = &ops[(a + b) % 4];
            check(fused.class() == want.class(), || format!("U_{a} * U_{b} != U_{}", (a + b) % 4))?;
            check(fused.label().map(|l| &l.label) == want.label().map(|l| &l.label), || format!("label of U_{a} * U_{b}"))?;
            pairs += 1;
        }
    }
    Ok(format!("H^1_c(nbhd) = Z/4, {pairs}/16 pairs fuse to U_(a+b)"))
}

fn disk_identity() -> Outcome {
    let groups = [
        FGAbelianGroup::integers(),
        FGAbelianGroup::cyclic(2),
        FGAbelianGroup::cyclic(4),
        FGAbelianGroup::from_cyclic_orders(&[int(0), int(2)]),
    ];
    let mut cases = 0;
    for d in 1..=3 {
        let x = lib(&format!("S{d}"));
        let star = StarOpen::star_of(&x, &[vec![0]]).map_err(|e| e.to_string())?;
        for a in &groups {
            for n in 0..=d {
                let h = compactly_supported_cohomology(&star, n, a);
                let ok = if n == d { h.group().is_isomorphic(a) } else { h.group().is_trivial() };
                check(ok, || format!("S{d}, A = {a}: H^{n}_c = {}", h.group()))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (d, A, n) cases on vertex stars of S1, S2, S3"))
}

fn duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let coefficient_groups = [FGAbelianGroup::integers(), FGAbelianGroup::cyclic(4)];
    let mut opens = 0;
    for name in ["S2icos", "T2", "S1hex"] {
        let x = lib(name);
        let o = orient(&x).map_err(|e| e.to_string())?.orientation().ok_or("not orientable")?;
        for _ in 0..20 {
            let count = rng.gen_range(1..=4);
            let u = StarOpen::generated(&x, (0..count).map(|_| rng.gen_range(0..x.len())));
            for a in &coefficient_groups {
                let r = poincare_duality_check(&u, Some(&o), a).map_err(|e| e.to_string())?;
                check(r.pass(), || format!("{name} {:?} with {a}: {:?}", u.generators(), r.degrees))?;
            }
            opens += 1;
        }
    }
    let k = lib("K2");
    let whole = StarOpen::whole(&k);
    let over_z = poincare_duality_check(&whole, None, &FGAbelianGroup::integers()).map_err(|e| e.to_string())?;
    let over_z2 = poincare_duality_check(&whole, None, &FGAbelianGroup::cyclic(2)).map_err(|e| e.to_string())?;
    let failing = over_z.degrees.iter().filter(|d| !d.pass).count();
    check(failing > 0, || "Klein bottle passes over Z".into())?;
    check(over_z2.pass(), || "Klein bottle fails over Z/2".into())?;
    Ok(format!("{opens} random opens over Z and Z/4; Klein bottle fails {failing} degrees over Z, passes over Z/2"))
}

fn coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut trials = 0;
    for (name, a) in [("S1hex", FGAbelianGroup::integers()), ("T2", FGAbelianGroup::cyclic(2))] {
        let x = lib(name);
        let f = QFormAlgebra::new(x.clone(), 0, a).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let nesting = random_nesting(&x, &mut rng);
            let v = check_coherence(&f, &nesting).map_err(|e| e.to_string())?;
            check(v.commutes, || format!("{name}: {}", v.counterexample.clone().unwrap_or_default()))?;
            let inputs: Vec<StarOpen> = nesting.levels.iter().flat_map(|(_, us)| us.iter().cloned()).collect();
            let mut perm: Vec<usize> = (0..inputs.len()).collect();
            perm.shuffle(&mut rng);
            let invariant = permutation_invariant(&f, &inputs, &nesting.outer, &perm).map_err(|e| e.to_string())?;
            check(invariant, || format!("{name}: permutation {perm:?} changes the structure map"))?;
            trials += 1;
        }
    }
    Ok(format!("{trials} nestings commute and are permutation invariant"))
}

fn descent() -> Outcome {
    let x = lib("S1hex");
    let f = QFormAlgebra::new(x.clone(), 0, FGAbelianGroup::cyclic(2)).map_err(|e| e.to_string())?;
    let c = weiss_cover(&x, WeissStyle::VertexComplements).map_err(|e| e.to_string())?;
    let r = descent_check(&f, &c).map_err(|e| e.to_string())?;
    check(r.bijective() && r.target_size == 2, || format!("positive case: {r:?}"))?;
    let left = StarOpen::star_of(&x, &[vec![0, 1]]).map_err(|e| e.to_string())?;
    let right = StarOpen::star_of(&x, &[vec![3, 4]]).map_err(|e| e.to_string())?;
    let target = left.union(&right).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for m in [2u64, 3] {
        let f = QFormAlgebra::new(x.clone(), 0, FGAbelianGroup::cyclic(m)).map_err(|e| e.to_string())?;
        let split = CoverSpec::new(target.clone(), vec![left.clone(), right.clone()]).map_err(|e| e.to_string())?;
        let r = descent_check(&f, &split).map_err(|e| e.to_string())?;
        let m = m as usize;
        check(r.colimit_size == 2 * m - 1 && r.target_size == m * m && !r.bijective(), || format!("m = {m}: {r:?}"))?;
        let repaired = split.with(target.clone()).map_err(|e| e.to_string())?;
        let fixed = descent_check(&f, &repaired).map_err(|e| e.to_string())?;
        check(fixed.bijective(), || format!("m = {m}: repaired cover fails: {fixed:?}"))?;
        sizes.push(format!("{}/{}", r.colimit_size, r.target_size));
    }
    Ok(format!("hexagon bijective onto 2 classes; split target {} fails; repaired covers pass", sizes.join(", ")))
}

fn supportive() -> Outcome {
    let hex = weiss_cover(&lib("S1hex"), WeissStyle::VertexComplements).map_err(|e| e.to_string())?;
    let checked = match is_k_supportive(&hex, SupportiveParams::new(0, 5)).map_err(|e| e.to_string())? {
        SupportVerdict::Verified { checked } => checked,
        v => return Err(format!("hexagon: {v:?}")),
    };
    let tri = weiss_cover(&lib("S1tri"), WeissStyle::VertexComplements).map_err(|e| e.to_string())?;
    match is_k_supportive(&tri, SupportiveParams::new(0, 3)).map_err(|e| e.to_string())? {
        SupportVerdict::Counterexample { facets } if facets == vec![vec![0], vec![1], vec![2]] => {}
        v => return Err(format!("triangle: {v:?}")),
    }
    Ok(format!("hexagon verified to s = 5 ({checked} subcomplexes); triangle fails on all three vertices"))
}

fn group_ring() -> Outcome {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let x = GroupRingElement::from_terms(&z2, [(0, int(1)), (1, int(1))]);
    let v = x.unit_test();
    check(v.determinant == int(0) && !v.is_unit(), || format!("delta_e + delta_g: {v:?}"))?;
    for n in [2, 3, 4] {
        let g = Arc::new(FiniteGroup::cyclic(n));
        for e in 0..n {
            for s in [1, -1] {
                let d = GroupRingElement::from_terms(&g, [(e, int(s))]);
                let inv = d.is_unit().ok_or_else(|| format!("{s} delta_{e} rejected in Z[Z/{n}]"))?;
                check(d.mul(&inv).unwrap() == GroupRingElement::one(&g), || format!("bad inverse of {d}"))?;
            }
        }
    }
    // Z[Z/3] has only the trivial units ±g
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let mut seen = HashSet::new();
    let mut scanned = 0;
    let mut units = 0;
    for a in 0..3 {
        for b in a..3 {
            for ca in -3i64..=3 {
                for cb in -3i64..=3 {
                    let terms = if a == b { vec![(a, int(ca))] } else { vec![(a, int(ca)), (b, int(cb))] };
                    let y = GroupRingElement::from_terms(&z3, terms);
                    if y.is_zero() || !seen.insert(y.to_string()) {
                        continue;
                    }
                    let support: Vec<Int> = y.support().map(|(_, c)| c.clone()).collect();
                    let trivial_unit = support.len() == 1 && (support[0] == int(1) || support[0] == int(-1));
                    let v = y.unit_test();
                    let by_det = v.determinant == int(1) || v.determinant == int(-1);
                    check(by_det == v.is_unit() && by_det == trivial_unit, || format!("{y}: det {}", v.determinant))?;
                    scanned += 1;
                    units += usize::from(by_det);
                }
            }
        }
    }
    check(units == 6, || format!("{units} units in Z[Z/3]"))?;
    Ok(format!("delta_e + delta_g has det 0; all ±delta_g invert; Z[Z/3] scan of {scanned} elements finds the {units} units ±g"))
}

fn zero_form() -> Outcome {
    let x = lib("T2grid");
    let rows = Subcomplex::full(&x, &[0, 1, 2, 6, 7, 8]);
    check(rows.components().len() == 2, || "hypersurface is not two circles".into())?;
    let mut sizes = Vec::new();
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), FiniteGroup::quaternion()] {
        let g = Arc::new(g);
        let ops = ZeroFormOperator::enumerate(g.clone(), rows.clone(), CollarSide::Positive).map_err(|e| e.to_string())?;
        let distinct: HashSet<Vec<usize>> = ops.iter().map(|o| o.assignment().to_vec()).collect();
        let n = g.order();
        check(ops.len() == n * n && distinct.len() == n * n, || format!("order {n}: {} operators", ops.len()))?;
        sizes.push(format!("{}", ops.len()));
    }
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let ops = ZeroFormOperator::enumerate(s3, rows, CollarSide::Positive).map_err(|e| e.to_string())?;
    let pair = ops.iter().enumerate().find_map(|(i, a)| {
        ops[i + 1..].iter().find(|b| a.stack(b).unwrap() != b.stack(a).unwrap()).map(|b| (a.clone(), b.clone()))
    });
    let (a, b) = pair.ok_or("S3 stacking commutes")?;
    Ok(format!("operator counts {} = |G|^2; S3 pair {:?}, {:?} does not commute", sizes.join(", "), a.assignment(), b.assignment()))
}

/// `|H^2(G; U(1))|` by enumerating normalized `Z/N` cocycles, `N = |G|`:
/// the count of cohomology classes divided by `|Hom(G, Z/N)|`.
fn enumerated_multiplier(g: &FiniteGroup) -> usize {
    let n = g.order();
    let m = n.max(2) as u64;
    let e = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let slots: Vec<(usize, usize)> = others.iter().flat_map(|&a| others.iter().map(move |&b| (a, b))).collect();
    let mut table = vec![None; n * n];
    for x in 0..n {
        table[e * n + x] = Some(0);
        table[x * n + e] = Some(0);
    }
    fn consistent(g: &FiniteGroup, t: &[Option<u64>], m: u64) -> bool {
        let n = g.order();
        let get = |x: usize, y: usize| t[x * n + y];
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|k| match (get(a, b), get(g.mul(a, b), k), get(b, k), get(a, g.mul(b, k))) {
                    (Some(p), Some(q), Some(r), Some(s)) => (p + q) % m == (r + s) % m,
                    _ => true,
                })
            })
        })
    }
    fn count(g: &FiniteGroup, t: &mut Vec<Option<u64>>, slots: &[(usize, usize)], m: u64) -> usize {
        let Some(&(a, b)) = slots.first() else { return 1 };
        let n = g.order();
        let mut total = 0;
        for v in 0..m {
            t[a * n + b] = Some(v);
            if consistent(g, t, m) {
                total += count(g, t, &slots[1..], m);
            }
        }
        t[a * n + b] = None;
        total
    }
    let cocycles = count(g, &mut table, &slots, m);
    let mut coboundaries = HashSet::new();
    let mut homs = 0;
    let mut b = vec![0u64; n];
    loop {
        let db: Vec<u64> = (0..n * n).map(|i| (b[i / n] + b[i % n] + m - b[g.mul(i / n, i % n)]) % m).collect();
        homs += usize::from(db.iter().all(|&v| v == 0));
        coboundaries.insert(db);
        let mut i = 0;
        loop {
            if i == others.len() {
                return cocycles / coboundaries.len() / homs;
            }
            b[others[i]] = (b[others[i]] + 1) % m;
            if b[others[i]] != 0 {
                break;
            }
            i += 1;
        }
    }
}

fn anomalies() -> Outcome {
    let klein = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let groups = [
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z3", FiniteGroup::cyclic(3)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("Z2xZ2", klein),
        ("S3", FiniteGroup::symmetric(3)),
    ];
    let mut summary = Vec::new();
    for (name, g) in groups {
        let h3 = group_cohomology_z(&g, 3).map_err(|e| e.to_string())?;
        let order = h3.order().ok_or_else(|| format!("{name}: H^3(G; Z) = {h3} is infinite"))?;
        let enumerated = enumerated_multiplier(&g);
        check(order == Int::from(enumerated), || format!("{name}: bar gives {h3}, enumeration gives {enumerated}"))?;
        summary.push(format!("{name}: {h3}"));
        if name == "Z2xZ2" {
            let c = classify_anomalies_zero_form(&Arc::new(g), DEFAULT_ORDER_BOUND).map_err(|e| e.to_string())?;
            check(c.agrees() && c.group.to_string() == "Z/2", || format!("classification gives {}", c.group))?;
            let ext = build_central_extension(&c.reduced[1]).map_err(|e| e.to_string())?;
            check(ext.group().order() == 8 && !ext.group().is_abelian(), || "extension is abelian".into())?;
            check(ext.is_exact() && ext.is_central_kernel(), || "extension is not central".into())?;
        }
    }
    Ok(format!("bar complex matches enumeration ({}); Z2xZ2 class extends to a nonabelian group of order 8", summary.join(", ")))
}

fn cli_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn cli(args: &[&str]) -> hsym_cli::Outcome {
    hsym_cli::run(std::iter::once("hsym").chain(args.iter().copied()))
}

fn determinism() -> Outcome {
    let golden = cli_root().join("tests/golden");
    let fixtures = cli_root().join("tests/fixtures");
    let mut compared = 0;
    let mut entries: Vec<PathBuf> =
        std::fs::read_dir(&golden).map_err(|e| e.to_string())?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    entries.sort();
    check(!entries.is_empty(), || "no golden reports".into())?;
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("descent_hexagon", ["descent", "--complex", "S1hex", "--A", "Z/2", "--q", "0", "--cover", "weiss:vertex", "--expect", "pass"].map(String::from).to_vec()),
        ("homology_t2", ["homology", "--complex", "T2", "--A", "Z"].map(String::from).to_vec()),
        ("anomaly_z2xz2", ["anomaly", "--group", "Z2xZ2", "--expect", "pass"].map(String::from).to_vec()),
        ("duality_t2", ["duality", "--complex", "T2", "--A", "Z", "--expect", "pass"].map(String::from).to_vec()),
    ];
    for (name, args) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (cli(&args), cli(&args));
        check(a == b, || format!("{name}: two runs differ"))?;
        let stored = std::fs::read_to_string(golden.join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        check(stored == a.stdout, || format!("{name}: differs from the golden report"))?;
        compared += 1;
    }
    // the same cover listed in different orders
    let mut orderings = 0;
    for (first, second) in [("disconnected.cover", "disconnected_shuffled.cover"), ("repaired.cover", "repaired_shuffled.cover")] {
        let (p, q) = (fixtures.join(first), fixtures.join(second));
        for extra in [&[][..], &["--s", "2", "--subdivisions", "1"][..]] {
            let command = if extra.is_empty() { "descent" } else { "cover-check" };
            let run = |path: &Path| {
                let path = path.to_string_lossy();
                let mut args = vec![command, "--complex", "S1hex", "--A", "Z/3", "--cover", &path];
                args.extend_from_slice(extra);
                cli(&args)
            };
            let (a, b) = (run(&p), run(&q));
            check(a.code != 2, || format!("{command} {first}: {}", a.stdout))?;
            check(a == b, || format!("{command}: {first} and {second} give different reports"))?;
            orderings += 1;
        }
    }
    let x = lib("S1hex");
    let c = weiss_cover(&x, WeissStyle::VertexComplements).map_err(|e| e.to_string())?;
    let lines: Vec<String> = c
        .elements()
        .iter()
        .map(|u| u.generators().iter().map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; "))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dir = std::env::temp_dir().join(format!("hsym-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut reports = HashSet::new();
    for k in 0..4 {
        let mut shuffled = lines.clone();
        shuffled.shuffle(&mut rng);
        let path = dir.join(format!("weiss{k}.cover"));
        std::fs::write(&path, shuffled.join("\n") + "\n").map_err(|e| e.to_string())?;
        let out = cli(&["descent", "--complex", "S1hex", "--A", "Z/2", "--cover", &path.to_string_lossy()]);
        check(out.code == 0, || out.stdout.clone())?;
        reports.insert(out.stdout);
        orderings += 1;
    }
    let _ = std::fs::remove_dir_all(&dir);
    check(reports.len() == 1, || format!("{} distinct reports for one cover", reports.len()))?;
    check(
        cli(&["descent", "--complex", "S1hex", "--A", "Z/2", "--cover", "weiss:vertex"]).stdout == reports.into_iter().next().unwrap(),
        || "file cover and built-in cover differ".into(),
    )?;
    Ok(format!("{compared} reports match goldens across two runs; {orderings} reordered covers give identical bytes"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("defect-operator fusion law on T2", defect_fusion),
        ("vertex stars are disks", disk_identity),
        ("duality and the Klein bottle control", duality),
        ("prefactorization coherence", coherence),
        ("descent at path components", descent),
        ("supportive-cover recognition", supportive),
        ("group-ring units", group_ring),
        ("nonabelian 0-form operators", zero_form),
        ("anomaly classification", anomalies),
        ("report determinism", determinism),
    ];
    let started = Instant::now();
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let elapsed = t.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{}]", i + 1, seconds(elapsed)),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{}]", i + 1, seconds(elapsed));
            }
        }
    }
    println!("{} of {} criteria pass in {}", criteria.len() - failures, criteria.len(), seconds(started.elapsed()));
    if failures > 0 {
        std::process::exit(1);
    }
}

fn seconds(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}
