//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime
//! budget. Informational notes (stated-versus-computed disagreements) are
//! printed but never fail a criterion.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use pbalg::catalog::{self, classify_dim_le5, fingerprint, CatalogId};
use pbalg::cohomology::{self, audit_multiplier_claims, direct_sum_h2, h2_dim, multiplier_bound};
use pbalg::extraction::{audit_model, extract_model, shifted_factors};
use pbalg::fock::{
    basis_vector, build_family, build_model, commutator_defect, ladder_check, number_op_check,
    quasi_basis_residual, vacuum, FockSpace, ModelSpec,
};
use pbalg::{LieAlgebra, Subspace, C64};
use rand::Rng;

struct Outcome {
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { checks: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

fn space(n: usize) -> FockSpace {
    FockSpace::new(n).unwrap()
}

fn a_sh_table() -> Vec<C64> {
    let mut c = vec![ZERO; 125];
    for (i, j) in [(1, 2), (3, 4), (1, 4), (3, 2)] {
        c[((i - 1) * 5 + (j - 1)) * 5 + 4] = ONE;
        c[((j - 1) * 5 + (i - 1)) * 5 + 4] = -ONE;
    }
    c
}

fn catalog_algebras() -> Vec<(CatalogId, LieAlgebra)> {
    let mut ids: Vec<CatalogId> = (1..=6).map(CatalogId::Abelian).collect();
    ids.extend((1..=5).map(CatalogId::Heisenberg));
    ids.extend(CatalogId::small_list());
    ids.extend([CatalogId::ASh, CatalogId::Swanson(PI / 8.0), CatalogId::BenderJones]);
    ids.into_iter().map(|id| (id, catalog::make(id).unwrap())).collect()
}

fn criterion_1(o: &mut Outcome) {
    let worst = catalog_algebras().iter().map(|(_, l)| l.validate().max_jacobi_residual).fold(0.0, f64::max);
    o.check(format!("catalog Jacobi residual {worst:.1e} <= 1e-12"), worst <= 1e-12);
    let round_trip = CatalogId::small_list()
        .into_iter()
        .all(|id| classify_dim_le5(&catalog::make(id).unwrap()).unwrap().matched == Some(id));
    o.check("classify(make(E)) = E for all dim <= 5 entries", round_trip);
    let fps: Vec<_> = (1..=9).map(|k| fingerprint(&catalog::make(CatalogId::l(5, k)).unwrap()).unwrap()).collect();
    let distinct = (0..9).all(|i| (0..i).all(|j| fps[i] != fps[j]));
    o.check("nine dim-5 fingerprints pairwise distinct", distinct);
    let (c6, c7) = (fps[5].dim_centralizer_of_derived, fps[6].dim_centralizer_of_derived);
    o.check(format!("l5_6 / l5_7 centralizer of derived = {c6} / {c7} (expect 3 / 4)"), (c6, c7) == (3, 4));
}

fn criterion_2(o: &mut Outcome) {
    let spec = ModelSpec::shifted(re(0.3), re(0.2));
    let ext = extract_model(&space(60), &spec).unwrap();
    let diff = max_diff(ext.algebra.constants(), &a_sh_table());
    o.check(format!("extracted constants vs a_sh table: {diff:.1e} <= 1e-10"), diff <= 1e-10);
    let a = audit_model(&spec, &space(60)).unwrap();
    let d = &a.decomposition;
    o.check(
        "semidirect with abelian factors of dims 3 and 2",
        d.is_semidirect && d.a_is_abelian && d.b_is_abelian && (d.dim_a, d.dim_b) == (3, 2),
    );
    o.check(format!("nilpotency class {} = 2", a.nilpotency_class), a.nilpotency_class == 2);
    o.check("classified as l5_2", a.classification.matched == Some(CatalogId::l(5, 2)));
    let oracle = center_dim_oracle(&a.algebra);
    o.check(format!("center dim {} equals nullspace oracle {oracle}", a.center_dim), a.center_dim == oracle);
    if a.center_dim != 1 {
        o.note(format!("shifted: computed center dim {} disagrees with stated dim 1 (flagged)", a.center_dim));
    }
}

fn criterion_3(o: &mut Outcome) {
    let bj = extract_model(&space(60), &ModelSpec::BenderJones { alpha: 0.7, beta: 1.3 }).unwrap();
    let sh = extract_model(&space(60), &ModelSpec::shifted(re(0.3), re(0.2))).unwrap();
    let diff = max_diff(bj.algebra.constants(), sh.algebra.constants());
    o.check(format!("deformed vs shifted constants: {diff:.1e} <= 1e-10"), diff <= 1e-10);
}

fn criterion_4(o: &mut Outcome) {
    let a = audit_model(&ModelSpec::Swanson { theta: PI / 8.0 }, &space(80)).unwrap();
    let d = &a.decomposition;
    o.check(
        format!("semidirect = {}, intersection dim = {}", d.is_semidirect, d.intersection_dim),
        !d.is_semidirect && d.intersection_dim == 1,
    );
    o.check("central sum", d.is_central);
    o.check(
        format!("derived dim {} contained in center", a.derived_dim),
        a.derived_dim == 1 && a.derived_in_center,
    );
    o.check(format!("nilpotency class {} = 2", a.nilpotency_class), a.nilpotency_class == 2);
    let oracle = center_dim_from_pfaffian(&a.algebra);
    o.check(format!("center dim {} equals Pfaffian oracle {oracle}", a.center_dim), a.center_dim == oracle);
    for id in ["center_dim", "not_isomorphic_to_a_sh"] {
        let c = a.claims.iter().find(|c| c.id == id).unwrap();
        o.note(format!(
            "swanson claim {id}: stated {} computed {} -> {}",
            c.stated,
            c.computed,
            if c.agrees { "agree" } else { "disagree" }
        ));
    }
    let matched = a.classification.matched.map_or("none".to_string(), |m| m.to_string());
    o.note(format!("swanson classification: {matched}"));
}

fn criterion_5(o: &mut Outcome) {
    let cases = [
        (ModelSpec::shifted(re(0.3), re(0.2)), 60, 8, 1e-8),
        (ModelSpec::Swanson { theta: PI / 8.0 }, 80, 6, 1e-6),
    ];
    for (spec, n, k, tol) in cases {
        let s = space(n);
        let ops = build_model(&s, &spec).unwrap();
        let name = spec.name();
        let defect = commutator_defect(&ops.a, &ops.b, &s).unwrap();
        o.check(format!("{name}: [a,b] = 1 defect {defect:.1e} <= 1e-12"), defect <= 1e-12);
        let fam = build_family(&s, &spec, k).unwrap();
        let g = fam.gram_defect();
        o.check(format!("{name}: Gram defect {g:.1e} <= {tol:.0e}"), g <= tol);
        let l = ladder_check(&fam, &ops).max();
        o.check(format!("{name}: ladder residual {l:.1e} <= {tol:.0e}"), l <= tol);
        let nr = number_op_check(&fam, &ops);
        o.check(format!("{name}: number-operator residual {nr:.1e} <= {tol:.0e}"), nr <= tol);
        let g2 = build_family(&space(2 * n), &spec, k).unwrap().gram_defect();
        o.check(format!("{name}: Gram defect non-increasing on doubling ({g2:.1e})"), g2 <= g.max(1e-13));
    }
    let s = space(60);
    let fam = build_family(&s, &ModelSpec::shifted(re(0.3), re(0.2)), 12).unwrap();
    let e0 = basis_vector(&s, 0);
    let q = quasi_basis_residual(&fam, &e0, &e0).unwrap();
    let monotone = q.forward.windows(2).all(|w| w[1] <= w[0].max(1e-15));
    o.check("shifted: quasi-basis residual non-increasing in K", monotone);
    o.check(format!("shifted: quasi-basis residual at K = 12 is {:.1e} <= 1e-6", q.forward[12]), q.forward[12] <= 1e-6);
}

fn criterion_6(o: &mut Outcome) {
    let h1 = h2_dim(&catalog::heisenberg(1).unwrap()).h2_dim;
    o.check(format!("h(1): {h1} = 2"), h1 == 2);
    let hs: Vec<usize> = (2..=5).map(|m| h2_dim(&catalog::heisenberg(m).unwrap()).h2_dim).collect();
    o.check(format!("h(2..5): {hs:?} = [5, 14, 27, 44]"), hs == [5, 14, 27, 44]);
    let ab = (1..=6).all(|n| h2_dim(&catalog::abelian(n)).h2_dim == n * (n - 1) / 2);
    o.check("abelian(1..6) = n(n-1)/2", ab);
    let mut bound_ok = true;
    let mut worst: f64 = 0.0;
    for (_, l) in catalog_algebras() {
        let r = h2_dim(&l);
        worst = worst.max(r.complex_defect);
        if !l.is_abelian() {
            let d = l.dim() - l.derived_subalgebra().dim();
            bound_ok &= r.h2_dim as i64 <= multiplier_bound(l.dim(), d).unwrap();
        }
    }
    o.check("h2 <= bound for every nonabelian nilpotent catalog entry", bound_ok);
    o.check(format!("d2 d1 = 0: {worst:.1e} <= 1e-12"), worst <= 1e-12);
}

fn criterion_7(o: &mut Outcome) {
    let a = audit_multiplier_claims().unwrap();
    let h1 = catalog::heisenberg(1).unwrap();
    let ab2 = catalog::abelian(2);
    let rule = direct_sum_h2(&h1, &ab2);
    let ce = cohomology::h2_dim(&h1.direct_sum(&ab2)).h2_dim;
    o.check(
        format!("a_sh {} = direct-sum rule {rule} = CE of h(1)+C^2 {ce}", a.a_sh_h2),
        a.a_sh_h2 == rule && rule == ce,
    );
    o.note(format!(
        "multiplier of a_sh: stated {} computed {} -> {}",
        a.stated_value,
        a.a_sh_h2,
        if a.agrees_with_stated { "agree" } else { "disagree" }
    ));
}

fn criterion_8(o: &mut Outcome) {
    let mut r = rng(8);
    let mut inv_ok = true;
    for (id, l) in catalog_algebras().into_iter().filter(|(id, _)| id.dim() <= 5) {
        let (f, h) = (fingerprint(&l).unwrap(), h2_dim(&l).h2_dim);
        for _ in 0..10 {
            let p = random_basis_change(&mut r, l.dim());
            let m = l.change_basis(&p).unwrap();
            if fingerprint(&m).unwrap() != f || h2_dim(&m).h2_dim != h {
                inv_ok = false;
                o.note(format!("basis change altered invariants of {id}"));
            }
        }
    }
    o.check("fingerprints and h2 invariant under 10 random basis changes each", inv_ok);

    let mut identity_ok = true;
    for trial in 0..100 {
        let n = 2 + trial % 7;
        let k1 = r.gen_range(0..=n);
        let k2 = r.gen_range(0..=n);
        let shared = r.gen_range(0..=k1.min(k2));
        let common: Vec<Vec<C64>> = (0..shared).map(|_| random_vec(&mut r, n)).collect();
        let mut sv = common.clone();
        sv.extend((shared..k1).map(|_| random_vec(&mut r, n)));
        let mut tv = common;
        tv.extend((shared..k2).map(|_| random_vec(&mut r, n)));
        let s = Subspace::span(n, &sv, 1e-9).unwrap();
        let t = Subspace::span(n, &tv, 1e-9).unwrap();
        let sum = s.sum(&t, 1e-9).unwrap().dim();
        let int = s.intersect(&t, 1e-9).unwrap().dim();
        identity_ok &= sum + int == s.dim() + t.dim();
    }
    o.check("dim(S+T) + dim(S∩T) = dim S + dim T over 100 random pairs", identity_ok);

    let s = space(80);
    let ops = build_model(&s, &ModelSpec::Swanson { theta: PI / 8.0 }).unwrap();
    let v = vacuum(&ops.a, &s).unwrap();
    let odd = v.vector.iter().skip(1).step_by(2).map(|z| z.norm()).fold(0.0, f64::max);
    o.check(format!("swanson vacuum odd coefficients {odd:.1e} <= 1e-12"), odd <= 1e-12);

    let p = extract_model(&s, &ModelSpec::Swanson { theta: PI / 8.0 }).unwrap();
    let m = extract_model(&s, &ModelSpec::Swanson { theta: -PI / 8.0 }).unwrap();
    let conj: Vec<C64> = p.algebra.constants().iter().map(|z| z.conj()).collect();
    let diff = max_diff(&conj, m.algebra.constants());
    o.check(format!("swanson theta -> -theta conjugates constants: {diff:.1e} <= 1e-10"), diff <= 1e-10);

    // Sanity: the exhibited factors really are subalgebras of the extracted algebra.
    let (fa, fb) = shifted_factors(&catalog::a_sh()).unwrap();
    o.check("a_sh factors are subalgebras", catalog::a_sh().is_subalgebra(&fa).unwrap() && catalog::a_sh().is_subalgebra(&fb).unwrap());
}

fn main() -> ExitCode {
    type Criterion = fn(&mut Outcome);
    let criteria: [(u32, &str, Criterion, Option<Duration>); 8] = [
        (1, "catalog integrity", criterion_1, Some(Duration::from_secs(1))),
        (2, "shifted oscillator algebra", criterion_2, Some(Duration::from_secs(5))),
        (3, "deformed position/momentum algebra", criterion_3, Some(Duration::from_secs(5))),
        (4, "swanson central sum", criterion_4, Some(Duration::from_secs(5))),
        (5, "pseudo-boson relations", criterion_5, None),
        (6, "second cohomology", criterion_6, Some(Duration::from_secs(2))),
        (7, "multiplier audit consistency", criterion_7, None),
        (8, "property suites", criterion_8, None),
    ];
    let total = Instant::now();
    let mut all_ok = true;
    for (num, name, run, budget) in criteria {
        let mut o = Outcome::new();
        let start = Instant::now();
        run(&mut o);
        let elapsed = start.elapsed();
        let in_budget = budget.is_none_or(|b| elapsed <= b);
        let ok = in_budget && o.checks.iter().all(|(_, ok)| *ok);
        all_ok &= ok;
        let budget_text = budget.map_or(String::new(), |b| format!(" (budget {:.0}s)", b.as_secs_f64()));
        println!(
            "criterion {num} {}: {name} [{:.2}s{budget_text}]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        for (what, ok) in &o.checks {
            println!("    {} {what}", if *ok { "ok  " } else { "FAIL" });
        }
        for note in &o.notes {
            println!("    note: {note}");
        }
    }
    let elapsed = total.elapsed();
    let total_ok = elapsed <= Duration::from_secs(60);
    println!(
        "runtime {}: total {:.2}s (budget 60s)",
        if total_ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    if all_ok && total_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
