//! One line per acceptance criterion; the process fails if any criterion
//! fails. Run with `cargo test -p antimorph-core --test acceptance`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use antimorph_core::gen_cyclic::{
    check_gen_anti_conditions, verify_gen_map, DAutMap, DKind, GenCyclicAlgebra, GenMap, StructureConstantAlgebra,
};
use antimorph_core::laurent::{build_laurent_anti, laurent_norm, verify_laurent_anti, LaurentPoly};
use antimorph_core::morphism::{
    check_anti_conditions, classify, classify_with_degree, compose, enumerate_all_antiautomorphisms, is_involution,
    order_by_iteration, order_of, to_linear, verify_map, ClassifyOptions, Frame, MonomialMap, Order, VerifyMode,
};
use antimorph_core::petit::PetitAlgebra;
use antimorph_core::skew_poly::{closed_form_power, monomial_power, naive_power_left, SkewPoly};
use antimorph_core::{Error, FiniteField, FrobeniusTower, FunctionField, Ground, DEFAULT_CAP, DEFAULT_SEED};

const W: u32 = 2;

struct Row {
    label: &'static str,
    tower: Arc<FrobeniusTower>,
    m: usize,
}

fn grid() -> Vec<Row> {
    let t = |p, d, n| Arc::new(FrobeniusTower::new(p, d, n, DEFAULT_CAP).unwrap());
    vec![
        Row { label: "GF(4)/GF(2), m=2", tower: t(2, 1, 2), m: 2 },
        Row { label: "GF(9)/GF(3), m=2", tower: t(3, 1, 2), m: 2 },
        Row { label: "GF(16)/GF(4), m=2", tower: t(2, 2, 2), m: 2 },
        Row { label: "GF(16)/GF(2), m=4", tower: t(2, 1, 4), m: 4 },
        Row { label: "GF(16)/GF(2), m=2", tower: t(2, 1, 4), m: 2 },
        Row { label: "GF(16)/GF(2), m=3", tower: t(2, 1, 4), m: 3 },
    ]
}

fn nonzero(tower: &FrobeniusTower) -> Vec<u32> {
    (1..tower.field().order()).collect()
}

/// Degree-one verdicts over the whole grid: `(row, a, τ, α, predicate, direct)`.
struct DegreeOne {
    row: usize,
    a: u32,
    tau: u32,
    alpha: u32,
    predicate: bool,
    direct: bool,
}

fn degree_one_verdicts(rows: &[Row]) -> Vec<DegreeOne> {
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let ctx = &*row.tower;
        for a in nonzero(ctx) {
            let alg = PetitAlgebra::new(row.tower.clone(), row.m, a).unwrap();
            for (_, tau) in ctx.automorphisms() {
                for alpha in nonzero(ctx) {
                    let predicate = check_anti_conditions(ctx, &tau, &alpha, 1, row.m, &a).is_valid();
                    let map = MonomialMap::anti(&alg, tau, alpha, 1);
                    let direct = verify_map(&map, VerifyMode::Exhaustive, DEFAULT_CAP).unwrap().is_valid();
                    out.push(DegreeOne { row: r, a, tau, alpha, predicate, direct });
                }
            }
        }
    }
    out
}

fn criterion_1(rows: &[Row], verdicts: &[DegreeOne]) -> (bool, String) {
    let bad: Vec<_> = verdicts.iter().filter(|v| v.predicate != v.direct).collect();
    let valid = verdicts.iter().filter(|v| v.direct).count();
    let mut detail = format!("{} maps, {} valid, {} mismatches", verdicts.len(), valid, bad.len());
    if let Some(v) = bad.first() {
        detail += &format!("; first: {} a={} τ=frob{} α={}", rows[v.row].label, v.a, v.tau, v.alpha);
    }
    (bad.is_empty(), detail)
}

fn criterion_2() -> (bool, String) {
    let k = Arc::new(FunctionField::new(4, W, 3, DEFAULT_CAP).unwrap());
    let x3 = k.monomial(1, 3);
    let alg = PetitAlgebra::new(k.clone(), 3, x3.clone()).unwrap();
    let cf = k.automorphism("coef_frob").unwrap();
    let mode = VerifyMode::Sampled { count: 1000, seed: DEFAULT_SEED };
    let run = |alpha: &<FunctionField as Ground>::Elem| {
        let pred = check_anti_conditions(&*k, &cf, alpha, 2, 3, &x3).is_valid();
        let map = MonomialMap::anti(&alg, cf, alpha.clone(), 2);
        let direct = verify_map(&map, mode, DEFAULT_CAP).unwrap().is_valid();
        (pred, direct)
    };
    let base = run(&x3);
    let times_x = run(&k.mul(&x3, &k.x()));
    // Every constant in GF(4)^× has norm 1, so the constant perturbation is additive.
    let plus_one = run(&k.add(&x3, &k.one()));
    let ok = base == (true, true) && times_x == (false, false) && plus_one == (false, false);
    (ok, format!("α=x³ {base:?}, α=x⁴ {times_x:?}, α=x³+1 {plus_one:?} as (predicate, sampled)"))
}

fn semifield() -> PetitAlgebra<FrobeniusTower> {
    PetitAlgebra::new(Arc::new(FrobeniusTower::new(2, 1, 2, DEFAULT_CAP).unwrap()), 2, W).unwrap()
}

fn criterion_3() -> (bool, String) {
    let a = semifield();
    let mut classified = Vec::new();
    for (_, tau) in a.ctx().automorphisms() {
        for (m, _) in classify(&a, &tau, &ClassifyOptions::default()).unwrap().maps {
            classified.push(to_linear(&m).unwrap());
        }
    }
    classified.sort();
    let all = enumerate_all_antiautomorphisms(&a, Frame::Opposite).unwrap();
    let mut restricted: Vec<_> = all.iter().filter(|f| f.preserves_field(2)).cloned().collect();
    restricted.sort();
    let carrier = enumerate_all_antiautomorphisms(&a, Frame::Carrier).unwrap();
    let ok = restricted == classified && !classified.is_empty();
    (
        ok,
        format!(
            "{} classified, {} enumerated ({} preserving K); literal carrier frame: {} maps",
            classified.len(),
            all.len(),
            restricted.len(),
            carrier.len()
        ),
    )
}

fn criterion_4() -> (bool, String) {
    let towers = [(2, 1, 2), (2, 1, 3), (3, 1, 2)].map(|(p, d, n)| FrobeniusTower::new(p, d, n, DEFAULT_CAP).unwrap());
    let (mut agree, mut raised, mut silent) = (0usize, 0usize, 0usize);
    let mut first = None;
    for ctx in &towers {
        for alpha in nonzero(ctx) {
            for b in nonzero(ctx) {
                for m in 1..=4usize {
                    for k in 1..m {
                        for s in 0..=2 * m {
                            let oracle = naive_power_left(ctx, &alpha, k, s, m, &b).unwrap();
                            let (c, e) = closed_form_power(ctx, &alpha, k, s, m, &b);
                            let closed = SkewPoly::monomial(ctx, c, e);
                            let ok = match monomial_power(ctx, &alpha, k, s, m, &b) {
                                Ok((c, e)) => {
                                    agree += 1;
                                    SkewPoly::monomial(ctx, c, e) == oracle
                                }
                                Err(Error::WellDefinednessViolation(_)) => {
                                    raised += 1;
                                    oracle != closed
                                }
                                Err(_) => false,
                            };
                            if !ok {
                                silent += 1;
                                first.get_or_insert((ctx.field().order(), alpha, b, m, k, s));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut detail = format!("{agree} well-defined, {raised} violations raised, {silent} silent mismatches");
    if let Some(f) = first {
        detail += &format!("; first (q, α, b, m, k, s) = {f:?}");
    }
    (silent == 0, detail)
}

fn criterion_5(rows: &[Row], verdicts: &[DegreeOne]) -> (bool, String) {
    let (mut compositions, mut orders, mut bad) = (0usize, 0usize, Vec::new());
    for (r, row) in rows.iter().enumerate() {
        let ctx = &*row.tower;
        let bound = 2 * ctx.field().degree() as usize * (ctx.field().order() as usize - 1);
        for a in nonzero(ctx) {
            let alg = PetitAlgebra::new(row.tower.clone(), row.m, a).unwrap();
            let basis = alg.basis().unwrap();
            let maps: Vec<_> = verdicts
                .iter()
                .filter(|v| v.row == r && v.a == a && v.direct)
                .map(|v| MonomialMap::anti(&alg, v.tau, v.alpha, 1))
                .collect();
            let linear: Vec<_> = maps.iter().map(|g| to_linear(g).unwrap()).collect();
            for (g1, l1) in maps.iter().zip(&linear) {
                for g2 in &maps {
                    let g = compose(g2, g1).unwrap();
                    let lhs = to_linear(&g).unwrap();
                    let pointwise = l1.images.iter().map(|y| g2.apply(y).unwrap()).collect::<Vec<_>>();
                    compositions += 1;
                    if lhs.images != pointwise || basis.len() != pointwise.len() {
                        bad.push(format!("compose {} {} on {}", g2.describe(), g1.describe(), row.label));
                    }
                }
                orders += 1;
                let closed = order_of(g1, bound).unwrap();
                let iterated = order_by_iteration(g1, bound).unwrap();
                let inv = is_involution(g1).unwrap().is_involution;
                if closed != iterated || inv != (closed == Order::Finite(2)) || closed == Order::ExceedsBound {
                    bad.push(format!("order {} on {}: {closed:?} vs {iterated:?}, involution {inv}", g1.describe(), row.label));
                }
            }
        }
    }
    let mut detail = format!("{compositions} compositions, {orders} orders, {} mismatches", bad.len());
    if let Some(b) = bad.first() {
        detail += &format!("; first: {b}");
    }
    (bad.is_empty(), detail)
}

fn criterion_6(rows: &[Row]) -> (bool, String) {
    let opts = ClassifyOptions::default();
    let (mut cases, mut direct, mut bad) = (0usize, 0usize, Vec::new());
    for row in rows {
        let ctx = &*row.tower;
        let n = ctx.n();
        for a in nonzero(ctx) {
            let alg = PetitAlgebra::new(row.tower.clone(), row.m, a).unwrap();
            let part_a = row.m == n && alg.is_proper_nonassociative_cyclic();
            let part_b = n > row.m;
            if !part_a && !part_b {
                continue;
            }
            for (_, tau) in ctx.automorphisms() {
                for k in 2..=row.m.max(2) {
                    cases += 1;
                    let c = classify_with_degree(&alg, &tau, k, &opts).unwrap();
                    let reason_ok = !part_b || c.empty_reason == Some("no-map-n-gt-m");
                    if !c.maps.is_empty() || !reason_ok {
                        bad.push(format!("{} a={a} τ=frob{tau} k={k}: {:?}", row.label, c.empty_reason));
                    }
                    if k < row.m {
                        for alpha in nonzero(ctx) {
                            direct += 1;
                            let map = MonomialMap::anti(&alg, tau, alpha, k);
                            if verify_map(&map, VerifyMode::Exhaustive, DEFAULT_CAP).unwrap().is_valid() {
                                bad.push(format!("{} a={a} τ=frob{tau} α={alpha} k={k} verifies", row.label));
                            }
                        }
                    }
                }
            }
        }
    }
    // Every map found by the dimension-4 enumeration sends t to a degree-one monomial.
    let sf = semifield();
    let t_images_ok = enumerate_all_antiautomorphisms(&sf, Frame::Opposite)
        .unwrap()
        .iter()
        .filter(|f| f.preserves_field(2))
        .all(|f| f.images[2].degree() == Some(1) && f.images[2].coeffs()[0] == 0);
    if !t_images_ok {
        bad.push(String::from("enumeration found t ↦ non-monomial"));
    }
    let mut detail = format!("{cases} empty classifications, {direct} direct checks, {} failures", bad.len());
    if let Some(b) = bad.first() {
        detail += &format!("; first: {b}");
    }
    (bad.is_empty(), detail)
}

fn criterion_7() -> (bool, String) {
    let k = Arc::new(FrobeniusTower::new(2, 1, 2, DEFAULT_CAP).unwrap());
    let mono = |c, j| LaurentPoly::monomial(&*k, c, j);
    let norms_ok = (1..4).all(|a| laurent_norm(&*k, &mono(a, 2)).unwrap() == mono(1, 4));
    let mut anti_ok = true;
    for alpha1 in 1..4 {
        for tau in [0, 1] {
            let g = build_laurent_anti(k.clone(), tau, alpha1).unwrap();
            anti_ok &= verify_laurent_anti(&g, 500, DEFAULT_SEED).is_valid();
        }
    }
    let f = Arc::new(FunctionField::new(4, W, 3, DEFAULT_CAP).unwrap());
    let inv = f.automorphism("inv_x").unwrap();
    let g = build_laurent_anti(f.clone(), inv, f.constant(W)).unwrap();
    let witness = g.infinite_order_witness(6);
    let degrees = witness.as_ref().map(|w| w.degrees.clone()).unwrap_or_default();
    let witness_ok = degrees.len() >= 6 && degrees.windows(2).all(|w| w[0] < w[1]);
    (
        norms_ok && anti_ok && witness_ok,
        format!("norms {norms_ok}, n=2 maps {anti_ok}, n=3 degrees {degrees:?}"),
    )
}

fn criterion_8(rows: &[Row], verdicts: &[DegreeOne]) -> (bool, String) {
    let gf4 = FiniteField::new(2, 2, DEFAULT_CAP).unwrap();
    let dz = StructureConstantAlgebra::m2(gf4);
    let sigma = DAutMap::frobenius(&dz, 1);
    let tau = DAutMap::transpose(&dz).unwrap().compose(&sigma, &dz);
    let alg = GenCyclicAlgebra::new(dz.clone(), sigma, 2, dz.scalar(W)).unwrap();
    let map = GenMap { tau, alpha: 1, k: 1 };
    let pred = check_gen_anti_conditions(&alg, &map).is_valid();
    let direct = verify_gen_map(&alg, &map, VerifyMode::BasisPairs, DEFAULT_CAP).unwrap().is_valid();

    let mut mismatches = 0usize;
    for v in verdicts {
        let row = &rows[v.row];
        let gen = GenCyclicAlgebra::from_tower(&row.tower, row.m, v.a).unwrap();
        let t = DAutMap::frobenius(gen.coeff_alg(), v.tau).with_kind(DKind::AntiAutomorphism);
        let gm = GenMap { tau: t, alpha: v.alpha, k: 1 };
        let gp = check_gen_anti_conditions(&gen, &gm).is_valid();
        let gd = verify_gen_map(&gen, &gm, VerifyMode::Exhaustive, DEFAULT_CAP).unwrap().is_valid();
        if gp != v.predicate || gd != v.direct {
            mismatches += 1;
        }
    }
    (
        pred && direct && mismatches == 0,
        format!("M₂(GF(4)) predicate {pred}, basis pairs {direct}; D = C: {} cases, {mismatches} mismatches", verdicts.len()),
    )
}

fn criterion_9(rows: &[Row]) -> (bool, String) {
    let sf = semifield();
    let dims = sf.nucleus_dims(8).unwrap();
    let nuclei_ok = dims.left == 2 && dims.middle == 2 && sf.field_in_nuclei() == Some((true, true));
    let (mut total, mut missing) = (0usize, Vec::new());
    for row in rows {
        for a in nonzero(&row.tower) {
            total += 1;
            let alg = PetitAlgebra::new(row.tower.clone(), row.m, a).unwrap();
            if alg.opposite_identification().unwrap().is_none() {
                missing.push(format!("{} a={}", row.label, row.tower.fmt_elem(&a)));
            }
        }
    }
    let mut detail = format!(
        "nuclei (l, m, r, c) = ({}, {}, {}, {}); opposite identified for {}/{} algebras",
        dims.left,
        dims.middle,
        dims.right,
        dims.center,
        total - missing.len(),
        total
    );
    if !missing.is_empty() {
        detail += &format!("; none found for {}", missing.join(", "));
    }
    (nuclei_ok && missing.is_empty(), detail)
}

fn main() -> ExitCode {
    let rows = grid();
    let start = Instant::now();
    let verdicts = degree_one_verdicts(&rows);
    let mut all_ok = true;
    let mut report = |n: u32, name: &str, (ok, detail): (bool, String), t: Instant| {
        all_ok &= ok;
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {n} [{name}]: {status} ({detail}) [{:.1}s]", t.elapsed().as_secs_f64());
    };
    report(1, "degree-one iff", criterion_1(&rows, &verdicts), start);
    let t = Instant::now();
    report(2, "degree-k iff", criterion_2(), t);
    let t = Instant::now();
    report(3, "uniqueness", criterion_3(), t);
    let t = Instant::now();
    report(4, "power formula", criterion_4(), t);
    let t = Instant::now();
    report(5, "composition/order/involution", criterion_5(&rows, &verdicts), t);
    let t = Instant::now();
    report(6, "nonexistence", criterion_6(&rows), t);
    let t = Instant::now();
    report(7, "laurent", criterion_7(), t);
    let t = Instant::now();
    report(8, "generalized cyclic", criterion_8(&rows, &verdicts), t);
    let t = Instant::now();
    report(9, "structural invariants", criterion_9(&rows), t);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
