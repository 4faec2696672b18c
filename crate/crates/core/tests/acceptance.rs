//! Acceptance criteria 1 to 11, run as a single binary. Prints one line per
//! criterion and exits nonzero if any criterion fails or exceeds its time
//! budget. All comparisons are exact.

use std::time::{Duration, Instant};

use mclag::coinvariants::{coinvariant_witness, coinvariants, wedge2_s2l_module};
use mclag::homology::{chain_boundaries, elementary_chain, homology_h1, CycleClass};
use mclag::johnson::{bar_expand, bar_expand_in_order, mu_mod2, BElement, TorelliClass, TorelliModel};
use mclag::linalg::{determinant, smith_normal_form, IntMatrix, SparseVec};
use mclag::presentation::sl_generator_pairs;
use mclag::report::{
    assemble_five_term, h2_sl_name, report_prop_ursp_h2, verify, JobId, SplitReason, Value, VerifyOptions,
    H1_UR, H2_M31_BOUND, H2_SP6, PSI_SPLITTING,
};
use mclag::symplectic::{
    binomial, lagrangian_generation_check, natural_representation, pair_rank, s2l_index, s2l_representation,
    ActingSet, SpMatrix,
};
use mclag::{FgAbelianGroup, GroupPresentation, IntRepresentation, Order};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Option<u64>, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn grp(free: usize, torsion: &[i64]) -> FgAbelianGroup {
    FgAbelianGroup::from_i64(free, torsion)
}

fn order2() -> Order {
    Order::Finite(2.into())
}

fn s2l_rank(g: usize) -> usize {
    g * (g + 1) / 2
}

fn torelli(g: usize, acting: ActingSet) -> Result<FgAbelianGroup, String> {
    let m = TorelliModel::new(g).action_module(&acting.elements(g)).map_err(|e| e.to_string())?;
    coinvariants(&m).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let g = 3;
    let rep = s2l_representation(g).map_err(|e| e.to_string())?;
    let cx = chain_boundaries(rep.presentation(), &rep).map_err(|e| e.to_string())?;
    ensure!(cx.dims() == (78, 36, 6), "dimensions {:?}", cx.dims());
    let h1 = cx.h1().map_err(|e| e.to_string())?;
    ensure!(h1 == grp(0, &[2]), "H1 = {h1}");
    let e12 = sl_generator_pairs(g).iter().position(|&p| p == (1, 2)).unwrap();
    let z = elementary_chain(e12, s2l_index(g, 2, 2), 6);
    let w = cx.cycle_class_order(&z).map_err(|e| e.to_string())?;
    ensure!(w == CycleClass { order: order2(), generates_h1: true }, "witness {w:?}");
    Ok(format!("78/36/6, H1 = {h1}, <e12>⊗X3^2 of order 2 generates"))
}

fn criterion_2() -> Check {
    let mut out = vec![];
    for g in [4, 5] {
        let rep = s2l_representation(g).map_err(|e| e.to_string())?;
        let cx = chain_boundaries(rep.presentation(), &rep).map_err(|e| e.to_string())?;
        let (h0, h1) = (cx.h0(), cx.h1().map_err(|e| e.to_string())?);
        ensure!(h0.is_trivial() && h1.is_trivial(), "g={g}: H0 = {h0}, H1 = {h1}");
        out.push(format!("g={g}: H0 = H1 = 0"));
    }
    Ok(out.join(", "))
}

fn criterion_3() -> Check {
    let m = wedge2_s2l_module(3, ActingSet::Sl).map_err(|e| e.to_string())?;
    let c = coinvariants(&m).map_err(|e| e.to_string())?;
    ensure!(c == grp(0, &[2]), "g=3: {c}");
    let x3x2 = SparseVec::unit(pair_rank(6, s2l_index(3, 1, 1), s2l_index(3, 2, 2)), -BigInt::one());
    let w = coinvariant_witness(&m, &x3x2).map_err(|e| e.to_string())?;
    ensure!(w.order == order2() && w.is_generator, "X3^2∧X2^2: {w:?}");
    for g in [4, 5] {
        let m = wedge2_s2l_module(g, ActingSet::Sl).map_err(|e| e.to_string())?;
        let c = coinvariants(&m).map_err(|e| e.to_string())?;
        ensure!(c.is_trivial(), "g={g}: {c}");
    }
    Ok("Z/2 generated by X3^2∧X2^2 at g=3, 0 at g=4,5".into())
}

fn criterion_4() -> Check {
    let want = [(3, grp(4, &[2, 2, 2])), (4, grp(8, &[])), (5, grp(15, &[]))];
    for (g, w) in &want {
        let c = torelli(*g, ActingSet::S2l)?;
        ensure!(c == *w, "g={g}: {c}, expected {w}");
        if *g >= 4 {
            ensure!(c.free_rank() == binomial(*g, 3) + g, "g={g}: rank is not C(g,3)+g");
        }
    }
    Ok("Z^4 + (Z/2)^3, Z^8, Z^15".into())
}

fn criterion_5() -> Check {
    let want = [(3, grp(10, &[2, 2, 2])), (4, grp(18, &[])), (5, grp(30, &[]))];
    let mut out = vec![];
    for (g, w) in &want {
        let coinv = torelli(*g, ActingSet::S2l)?;
        let h1 = assemble_five_term(&coinv, &FgAbelianGroup::free(s2l_rank(*g)), SplitReason::FreeQuotient)
            .map_err(|e| e.to_string())?;
        ensure!(h1 == *w, "g={g}: {h1}, expected {w}");
        let r = verify(JobId::H1Ilgb, *g, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        ensure!(r.pass, "h1-ilgb report fails at g={g}");
        out.push(h1.to_string());
    }
    Ok(out.join(", "))
}

fn criterion_6() -> Check {
    let g = 3;
    let model = TorelliModel::new(g);
    let m = model.action_module(&ActingSet::Ursp.elements(g)).map_err(|e| e.to_string())?;
    let c = coinvariants(&m).map_err(|e| e.to_string())?;
    ensure!(c == grp(0, &[2]), "urSp at g=3: {c}");
    let t = model
        .class(&[(1, [3, 4, 5])], &BElement::monomial(g, 0b111_000))
        .map_err(|e| e.to_string())?;
    let w = coinvariant_witness(&m, &model.coordinates(&t)).map_err(|e| e.to_string())?;
    ensure!(w.order == order2() && w.is_generator, "witness {w:?}");
    for g in [4, 5] {
        let c = torelli(g, ActingSet::Ursp)?;
        ensure!(c.is_trivial(), "urSp at g={g}: {c}");
    }
    let sp = torelli(3, ActingSet::UrspPlusRemark)?;
    ensure!(sp.is_trivial(), "Sp at g=3: {sp}");
    let opts = VerifyOptions::default();
    for (g, w) in [(3, grp(0, &[2, 2])), (4, grp(0, &[2])), (5, grp(0, &[2]))] {
        let r = verify(JobId::H1Lgb, g, &opts).map_err(|e| e.to_string())?;
        ensure!(r.pass, "h1-lgb report fails at g={g}");
        let got = r.comparisons.iter().find(|c| c.quantity == "H1(L_{g,1})").map(|c| c.computed.clone());
        ensure!(got == Some(Value::Group(w.clone())), "H1(L) at g={g}: {got:?}");
        let names: Vec<&str> = r.externals.iter().map(|e| e.name.as_str()).collect();
        ensure!(names.contains(&H1_UR), "g={g}: H1(ur) not flagged");
        ensure!((g == 3) == names.contains(&PSI_SPLITTING), "g={g}: splitting flag {names:?}");
    }
    Ok("Z/2 with (y1∧y2∧y3, y1y2y3) at g=3, 0 at g=4,5, Sp gives 0; H1(L) = (Z/2)^2, Z/2, Z/2".into())
}

fn criterion_7() -> Check {
    let mut out = vec![];
    for g in [3, 4, 5] {
        let r = lagrangian_generation_check(g).map_err(|e| e.to_string())?;
        let want = binomial(s2l_rank(g), 2);
        ensure!(r.generates_s2l, "g={g}: twist images do not generate S2L");
        ensure!(r.wedge_rank == want && r.wedges_generate, "g={g}: {r:?}");
        out.push(want.to_string());
    }
    Ok(format!("wedge ranks {}", out.join(", ")))
}

fn criterion_8() -> Check {
    for g in [3, 4, 5] {
        let p = GroupPresentation::sl(g).map_err(|e| e.to_string())?;
        let ab = p.abelianized_h1();
        let h1 = homology_h1(&p, &IntRepresentation::trivial(p.clone(), 1)).map_err(|e| e.to_string())?;
        ensure!(ab.is_trivial() && h1 == ab, "g={g}: abelianization {ab}, H1 {h1}");
    }
    Ok("trivial at g=3,4,5 by both routes".into())
}

fn criterion_9() -> Check {
    let opts = VerifyOptions::default();
    let table = [(3, grp(0, &[2, 2, 2, 2])), (4, grp(0, &[2, 2])), (5, grp(0, &[2])), (6, grp(0, &[2]))];
    for (g, want) in &table {
        let r = report_prop_ursp_h2(*g, &opts).map_err(|e| e.to_string())?;
        ensure!(r.pass, "g={g}:\n{}", r.to_markdown());
        let get = |q: &str| r.comparisons.iter().find(|c| c.quantity == q).map(|c| c.computed.clone());
        ensure!(get("H1(urSp+(2g))") == Some(Value::Group(FgAbelianGroup::trivial())), "g={g}: H1");
        ensure!(get("H2(urSp+(2g))") == Some(Value::Group(want.clone())), "g={g}: H2");
        let names: Vec<&str> = r.externals.iter().map(|e| e.name.as_str()).collect();
        ensure!(names.contains(&h2_sl_name(*g).as_str()), "g={g}: H2(SL) not flagged");
        if *g == 3 {
            ensure!(get("H2(M_{3,1}) (corollary)") == Some(Value::Group(grp(1, &[2]))), "H2(M_{{3,1}})");
            ensure!(names.contains(&H2_SP6) && names.contains(&H2_M31_BOUND), "corollary externals {names:?}");
        }
    }
    Ok("H1(urSp+) = 0; H2 = (Z/2)^4, (Z/2)^2, Z/2, Z/2; H2(M_{3,1}) = Z + Z/2 flagged".into())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(0..8), rng.gen_range(0..8));
    let density = rng.gen_range(0.2..1.0);
    let data = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| if rng.gen_bool(density) { BigInt::from(rng.gen_range(-30i64..=30)) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    IntMatrix::from_dense_rows(r, c, data).unwrap()
}

fn snf_certificate(a: &IntMatrix) -> Result<(), String> {
    let s = smith_normal_form(a);
    let uav = s.u.try_mul(a).and_then(|x| x.try_mul(&s.v)).map_err(|e| e.to_string())?;
    ensure!(uav == s.d, "U·A·V != D for\n{a}");
    for m in [&s.u, &s.v] {
        let det = determinant(m).ok_or("non-square transform")?;
        ensure!(det.abs().is_one(), "transform has determinant {det}");
    }
    let mut prev: Option<BigInt> = None;
    let mut diag = vec![];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = s.d.get(i, j);
            ensure!(i == j || x.is_zero(), "off-diagonal entry in D");
        }
    }
    for i in 0..a.rows().min(a.cols()) {
        let x = s.d.get(i, i);
        ensure!(!x.is_negative(), "negative diagonal entry");
        if let Some(p) = &prev {
            ensure!(if p.is_zero() { x.is_zero() } else { (&x % p).is_zero() }, "divisibility fails");
        }
        if !x.is_zero() {
            diag.push(x.clone());
        }
        prev = Some(x);
    }
    ensure!(diag == s.invariant_factors, "invariant factors disagree with D");
    Ok(())
}

fn random_sp(g: usize, gens: &[(String, SpMatrix)], rng: &mut ChaCha8Rng) -> SpMatrix {
    let mut m = SpMatrix::identity(g);
    for _ in 0..rng.gen_range(1..6) {
        let s = &gens.choose(rng).unwrap().1;
        m = if rng.gen_bool(0.5) { m.mul(s) } else { m.mul(&s.inverse()) };
    }
    m
}

fn random_class(model: &TorelliModel, rng: &mut ChaCha8Rng) -> TorelliClass {
    let g = model.genus();
    let n = (0..model.free_rank())
        .map(|_| if rng.gen_bool(0.3) { BigInt::from(rng.gen_range(-3i64..=3)) } else { BigInt::zero() })
        .collect();
    let beta = BElement::from_monomials(g, model.b2_basis().iter().copied().filter(|_| rng.gen_bool(0.3)));
    TorelliClass { n, beta }
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut parts = vec![];

    for _ in 0..500 {
        snf_certificate(&random_matrix(&mut rng))?;
    }
    parts.push("500 SNF certificates".to_string());

    let mut complexes = 0;
    for g in 3..=6 {
        let p = GroupPresentation::sl(g).map_err(|e| e.to_string())?;
        let reps = [
            s2l_representation(g).map_err(|e| e.to_string())?,
            natural_representation(g).map_err(|e| e.to_string())?,
            IntRepresentation::trivial(p, 1),
        ];
        for rep in &reps {
            ensure!(rep.is_valid(), "g={g}: shipped representation fails relator validation");
            let cx = chain_boundaries(rep.presentation(), rep).map_err(|e| e.to_string())?;
            ensure!(cx.d1.try_mul(&cx.d2).map_err(|e| e.to_string())?.is_zero(), "d1·d2 != 0 at g={g}");
            complexes += 1;
        }
    }
    parts.push(format!("d1·d2 = 0 and relators valid on {complexes} complexes"));

    for _ in 0..500 {
        let g = rng.gen_range(3..=6);
        let full = (1u32 << (2 * g)) - 1;
        let (v, w) = (rng.gen::<u32>() & full, rng.gen::<u32>() & full);
        let mut rhs = bar_expand(g, v).add(&bar_expand(g, w));
        if mu_mod2(g, v, w) {
            rhs = rhs.add(&BElement::one(g));
        }
        ensure!(bar_expand(g, v ^ w) == rhs, "bar_expand fails the sum rule at g={g}, {v:b}, {w:b}");
        let mut order: Vec<usize> = (0..2 * g).collect();
        order.shuffle(&mut rng);
        ensure!(bar_expand_in_order(g, v, &order) == bar_expand(g, v), "order dependence at {v:b}");
    }
    parts.push("500 bar_expand sum-rule and order checks".into());

    let mut acts = 0;
    for k in 0..100 {
        let g = if k < 80 { 3 } else { 4 };
        let model = TorelliModel::new(g);
        let gens = ActingSet::UrspPlusRemark.elements(g);
        let (a, b) = (random_sp(g, &gens, &mut rng), random_sp(g, &gens, &mut rng));
        let t = random_class(&model, &mut rng);
        let act = |s: &SpMatrix, t: &TorelliClass| model.sp_act(s, t).map_err(|e| format!("compatibility: {e}"));
        let lhs = act(&a.mul(&b), &t)?;
        let rhs = act(&a, &act(&b, &t)?)?;
        ensure!(lhs == rhs, "(AB)·t != A·(B·t) at g={g}");
        ensure!(act(&SpMatrix::identity(g), &t)? == t, "identity moves a class");
        acts += 4;
    }
    for g in 3..=5 {
        for acting in ActingSet::ALL {
            TorelliModel::new(g)
                .action_module(&acting.elements(g))
                .map_err(|e| format!("g={g} {}: {e}", acting.name()))?;
        }
    }
    parts.push(format!("100 action-law pairs, {acts} actions and all acting sets without compatibility violations"));

    let chain: Vec<FgAbelianGroup> = [ActingSet::S2l, ActingSet::Ursp, ActingSet::UrspPlusRemark]
        .into_iter()
        .map(|a| torelli(3, a))
        .collect::<Result<_, _>>()?;
    ensure!(chain == [grp(4, &[2, 2, 2]), grp(0, &[2]), grp(0, &[])], "chain {chain:?}");
    for w in chain.windows(2) {
        ensure!(
            w[1].free_rank() <= w[0].free_rank() && w[1].torsion_order() <= w[0].torsion_order(),
            "coinvariants grew from {} to {}",
            w[0],
            w[1]
        );
    }
    parts.push("chain Z^4 + (Z/2)^3 ->> Z/2 ->> 0".into());
    Ok(parts.join("; "))
}

fn criterion_11() -> Check {
    let m = TorelliModel::new(3)
        .action_module(&[("id".into(), SpMatrix::identity(3))])
        .map_err(|e| e.to_string())?;
    let c = coinvariants(&m).map_err(|e| e.to_string())?;
    ensure!(c == grp(20, &[2; 22]), "{c}");
    Ok(format!("identity-only coinvariants {c}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("genus-3 complex, H1(SL(3,Z);S2L) and witness", Some(5), criterion_1),
        ("H0 and H1 of SL(g,Z) with S2L coefficients vanish, g=4,5", Some(60), criterion_2),
        ("(∧2 S2L) coinvariants under SL(g,Z)", Some(30), criterion_3),
        ("Torelli coinvariants under S2L", Some(120), criterion_4),
        ("H1(IL_{g,1}) assembly", None, criterion_5),
        ("Torelli coinvariants under urSp and Sp, H1(L_{g,1}) assembly", None, criterion_6),
        ("twist images generate, wedge ranks", None, criterion_7),
        ("SL(g,Z) is perfect", None, criterion_8),
        ("urSp+ spectral sequence report", None, criterion_9),
        ("property suites", None, criterion_10),
        ("identity-only Torelli coinvariants", None, criterion_11),
    ];
    let suite = Instant::now();
    let mut failures = 0;
    for (k, (title, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|b| elapsed > Duration::from_secs(b));
        let budget_text = budget.map_or(String::new(), |b| format!(", budget {b} s"));
        let (ok, detail) = match outcome {
            Ok(d) if !over => (true, d),
            Ok(d) => (false, format!("{d} (over time budget)")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!(
            "criterion {:>2} {} {title} [{:.2} s{budget_text}]: {detail}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    let total = suite.elapsed();
    let suite_ok = total < Duration::from_secs(600);
    println!("suite {} total {:.2} s, budget 600 s", if suite_ok { "PASS" } else { "FAIL" }, total.as_secs_f64());
    if failures > 0 || !suite_ok {
        std::process::exit(1);
    }
}
