//! Acceptance suite: one line per criterion, exact arithmetic throughout
//! (tolerance 0 on every comparison).

mod common;

use std::process::ExitCode;

use common::*;
use gradconf::algebra::GradedAlgebraFD;
use gradconf::cend::{check_cend_associativity, CendMutation};
use gradconf::closure::{ideal_closure, Sided};
use gradconf::cohomology::{
    check_additive_cocycle, coboundary_of, find_trivializing_cochain, AdditiveCocycle, OneCochain,
};
use gradconf::conformal::{check_axioms, cur, rebase, regrade_by_tau, ConformalElement, GradedConformalAlgebra};
use gradconf::group::coset_decomposition;
use gradconf::grading::{cyclic_sign, s3_sign};
use gradconf::hnf::PolySubmodule;
use gradconf::poly::{Bindings, Monomial, Poly, Var};
use gradconf::scalar::q;
use gradconf::semisimple::{decompose_semisimple_graded, is_graded_simple};
use gradconf::simplicity::{conformal_simplicity_suite, Verdict};
use gradconf::twisted::{phi_isomorphism, recover_fine_structure, spans_by_degree, FineStructure, TwistedMatrixAlgebra};
use gradconf::upoly::UPoly;
use gradconf::{polymat, FiniteGroup, GradingContext, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOLERANCE: &str = "exact";
const SEED: u64 = 20261017;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut fixtures = 0;
    let mut instances = 0;
    for (cname, ctx) in contexts() {
        for (aname, a) in algebra_fixtures(ctx.group()) {
            let c = cur(&a, &ctx).map_err(|e| format!("Cur({aname}) under {cname}: {e}"))?;
            let report = check_axioms(&c);
            ensure(report.passed(), || format!("Cur({aname}) under {cname}: {}", report.failure.as_ref().unwrap()))?;
            fixtures += 1;
            instances += report.associativity_instances;
        }
    }
    Ok(format!("{fixtures} Cur fixtures, {instances} associativity instances"))
}

fn criterion_2() -> Outcome {
    let mut instances = 0;
    for (cname, ctx) in contexts() {
        // Every N <= 2 degree pattern occurs as an index sub-chain of these.
        let shapes: Vec<Vec<usize>> =
            if ctx.order() == 1 { vec![vec![0, 0, 0]] } else { vec![vec![0, 0, 1], vec![0, 1, 1]] };
        for degrees in shapes {
            instances += check_cend_associativity(&ctx, &degrees, 3, CendMutation::None)
                .map_err(|f| format!("{cname} degrees {degrees:?}: {f:?}"))?;
        }
    }
    for m in CendMutation::PLANTED {
        let caught = contexts().iter().any(|(_, ctx)| {
            let degrees: Vec<usize> = ctx.group().elements().collect();
            check_cend_associativity(ctx, &degrees, 1, m).is_err()
        });
        ensure(caught, || format!("mutation {m:?} passed in every fixture context"))?;
    }
    Ok(format!("{instances} identities in Q[lambda,mu,T,x], 6/6 planted mutations fail"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases: Vec<(&str, GradingContext)> = vec![
        ("Z2 trivial", GradingContext::trivial(FiniteGroup::z2())),
        ("Z2 sign", GradingContext::with_sigma(FiniteGroup::z2(), cyclic_sign(2)).unwrap()),
        ("Z4 trivial", GradingContext::trivial(FiniteGroup::cyclic(4))),
        ("Z4 sign", GradingContext::with_sigma(FiniteGroup::cyclic(4), cyclic_sign(4)).unwrap()),
        ("S3 trivial", GradingContext::trivial(FiniteGroup::symmetric3())),
        ("S3 sign", GradingContext::with_sigma(FiniteGroup::symmetric3(), s3_sign()).unwrap()),
    ];
    let mut total = 0;
    for (name, ctx) in cases {
        for _ in 0..20 {
            let g = ctx.group();
            let vals: Vec<Rational> =
                g.elements().map(|x| if x == g.identity() { q(0) } else { small_rational(&mut rng) }).collect();
            let tau = OneCochain::new(g, vals).map_err(|e| e.to_string())?;
            let dt = coboundary_of(&tau, &ctx);
            let with_phi = ctx.clone().with_phi(dt.table().to_vec()).map_err(|e| format!("{name}: {e}"))?;
            ensure(check_additive_cocycle(&with_phi), || format!("{name}: delta tau is not a cocycle"))?;
            let found = find_trivializing_cochain(&with_phi).map_err(|e| format!("{name}: {e}"))?;
            ensure(coboundary_of(&found, &with_phi) == dt, || format!("{name}: recovered cochain has a different coboundary"))?;
            total += 1;
        }
    }
    Ok(format!("{total} random cochains over Z2, Z4, S3 with trivial and sign sigma"))
}

fn rebased_group_algebra(ctx: &GradingContext) -> GradedConformalAlgebra {
    let a = GradedAlgebraFD::group_algebra(FiniteGroup::z2());
    let c = cur(&a.direct_sum(&a).unwrap(), ctx).unwrap();
    let mut pm = polymat::identity(4);
    pm[0][2] = Poly::var(Var::T);
    rebase(&c, &pm).unwrap()
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut count = 0;
    for (cname, ctx) in contexts().into_iter().filter(|(_, c)| c.order() == 2) {
        let mut fixtures: Vec<(String, GradedConformalAlgebra)> = algebra_fixtures(ctx.group())
            .into_iter()
            .map(|(n, a)| (format!("Cur({n})"), cur(&a, &ctx).unwrap()))
            .collect();
        fixtures.push(("rebased QZ2+QZ2".into(), rebased_group_algebra(&ctx)));
        let phi = AdditiveCocycle::from_table(ctx.phi_table().to_vec());
        let mut taus = vec![OneCochain::new(ctx.group(), vec![q(0), q(-1)]).unwrap()];
        for _ in 0..3 {
            taus.push(OneCochain::new(ctx.group(), vec![q(0), small_rational(&mut rng)]).unwrap());
        }
        for (fname, c) in &fixtures {
            for tau in &taus {
                let target = phi.add(&coboundary_of(tau, &ctx));
                let r = regrade_by_tau(c, tau, &target).map_err(|e| format!("{fname} under {cname}: {e}"))?;
                let report = check_axioms(&r);
                ensure(report.passed(), || format!("{fname} under {cname} regraded: {}", report.failure.as_ref().unwrap()))?;
                let back = regrade_by_tau(&r, &tau.neg(), &phi).map_err(|e| format!("{fname}: {e}"))?;
                ensure(back == *c, || format!("{fname} under {cname}: round trip changed the structure constants"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} regradings pass the axioms and round-trip exactly"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let z2 = FiniteGroup::z2();
    let z4 = FiniteGroup::cyclic(4);
    let s3 = FiniteGroup::symmetric3();
    let t12 = s3.index_of("(12)").unwrap();
    let s3_zero = s3.left_coset(s3.index_of("(13)").unwrap(), &[s3.identity(), t12]);
    let mut theta_z4 = vec![vec![q(1); 4]; 4];
    theta_z4[2][2] = q(-1);
    let mut theta_s3 = vec![vec![q(1); 6]; 6];
    theta_s3[t12][t12] = q(-1);
    let fixtures = vec![
        ("(Z2,Z2,1,(1))", z2.clone(), full_fine(&z2), vec![1], z2_theta(-1)),
        ("(Z2,Z2,1,(2))", z2.clone(), full_fine(&z2), vec![2], z2_theta(-1)),
        ("(Z4,{0,2},2,(1,1))", z4.clone(), coset_decomposition(&z4, &[0, 2], &[]).unwrap(), vec![1, 1], theta_z4),
        (
            "(S3,<(12)>,2,(1,2)) with one zero coset",
            s3.clone(),
            coset_decomposition(&s3, &[s3.identity(), t12], &s3_zero).unwrap(),
            vec![1, 2],
            theta_s3,
        ),
    ];
    let mut pairs = 0;
    for (name, g, fine, sizes, theta) in fixtures {
        let t = TwistedMatrixAlgebra::new(&g, &fine, &sizes, theta.clone()).map_err(|e| format!("{name}: {e}"))?;
        let mut fs = FineStructure::standard(&g, &fine, &sizes, &theta).map_err(|e| format!("{name}: {e}"))?;
        for h in g.elements() {
            if let Some(k) = fine.coset_of(h) {
                if h != fine.rep(k) {
                    fs = fs.with_iota(&g, h, random_invertible(&mut rng, sizes[k])).map_err(|e| format!("{name}: {e}"))?;
                }
            }
        }
        let phi = phi_isomorphism(&g, &t, &fs).map_err(|e| format!("{name}: Phi: {e}"))?;
        pairs += phi.images.len() * phi.images.len();
        let rec = recover_fine_structure(&g, &phi.v_degrees, &phi.images).map_err(|e| format!("{name}: recovery: {e}"))?;
        let again = rec.reproduce(&g, &phi.v_degrees).map_err(|e| format!("{name}: {e}"))?;
        ensure(spans_by_degree(g.order(), &again) == spans_by_degree(g.order(), &phi.images), || {
            format!("{name}: reproduced spans differ")
        })?;
    }
    Ok(format!("4 fixtures recovered, Phi multiplicative on {pairs} basis pairs"))
}

fn criterion_6() -> Outcome {
    let z2 = FiniteGroup::z2();
    let mut simple = 0;
    for (cname, ctx) in contexts().into_iter().filter(|(_, c)| c.order() == 2) {
        let z4 = FiniteGroup::cyclic(4);
        let _ = z4;
        for (aname, a) in [("M1(Q^chi Z2)", twisted_z2(1, -1)), ("M2(Q^chi Z2)", twisted_z2(2, -1)), ("M2(QZ2)", twisted_z2(2, 1))] {
            let c = cur(&a, &ctx).map_err(|e| e.to_string())?;
            let r = conformal_simplicity_suite(&c, 1, Some(&a)).map_err(|e| format!("{aname}: {e}"))?;
            ensure(r.verdict == Verdict::Simple, || format!("Cur({aname}) under {cname}: {}", r.verdict))?;
            simple += 1;
        }
        let a = GradedAlgebraFD::matrix_algebra(z2.clone(), 2);
        let b = twisted_z2(1, -1);
        let ab = a.direct_sum(&b).unwrap();
        let c = cur(&ab, &ctx).unwrap();
        let r = conformal_simplicity_suite(&c, 1, Some(&ab)).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::NotSimple, || format!("Cur(A+B) under {cname}: {}", r.verdict))?;
        let cert = r.certificate.ok_or_else(|| format!("Cur(A+B) under {cname}: no certificate"))?;
        ensure(!cert.ideal.is_zero() && !cert.ideal.is_full(), || "certificate is not a proper nonzero ideal".into())?;
        let blocks = decompose_semisimple_graded(&ab).map_err(|e| e.to_string())?;
        ensure(blocks.len() == 2, || format!("A+B decomposed into {} blocks", blocks.len()))?;
        for blk in &blocks {
            ensure(is_graded_simple(&blk.algebra).map_err(|e| e.to_string())?, || "block is not graded simple".into())?;
        }
    }
    Ok(format!("{simple} Cur(M_n(Q^chi Gamma_1)) simple, Cur(A+B) certified not simple, 2 graded-simple blocks"))
}

fn oracle_fixtures(group: &FiniteGroup) -> Vec<(&'static str, GradedAlgebraFD)> {
    let field = GradedAlgebraFD::field(group.clone());
    let ut = GradedAlgebraFD::upper_triangular2(group.clone());
    let mut out = algebra_fixtures(group).into_iter().filter(|(_, a)| a.dim() <= 4).collect::<Vec<_>>();
    out.push(("Q+Q", field.direct_sum(&field).unwrap()));
    out.push(("Q+Q+Q", field.direct_sum(&field).unwrap().direct_sum(&field).unwrap()));
    out.push(("UT2", ut.clone()));
    out.push(("Q+UT2", field.direct_sum(&ut).unwrap()));
    out.push(("zero product dim 2", GradedAlgebraFD::zero_product(group.clone(), vec![group.identity(); 2])));
    if group.order() == 2 {
        let qz2 = GradedAlgebraFD::group_algebra(group.clone());
        out.push(("QZ2+QZ2", qz2.direct_sum(&qz2).unwrap()));
        out.push(("M1(QZ2)+Q^chi Z2", qz2.direct_sum(&twisted_z2(1, -1)).unwrap()));
    }
    out
}

fn criterion_7() -> Outcome {
    let mut checks = 0;
    for (cname, ctx) in contexts() {
        for (aname, a) in oracle_fixtures(ctx.group()) {
            let c = cur(&a, &ctx).map_err(|e| e.to_string())?;
            let n = a.dim();
            let mut seeds: Vec<Vec<Rational>> = (0..n).map(|i| gradconf::matrix::unit_vec(n, i)).collect();
            // Homogeneous sums of basis elements of equal degree.
            for i in 0..n {
                for j in i + 1..n {
                    if a.degree(i) == a.degree(j) {
                        let mut v = gradconf::matrix::unit_vec(n, i);
                        v[j] = q(1);
                        seeds.push(v);
                    }
                }
            }
            for v in seeds {
                let oracle = a.two_sided_ideal(std::slice::from_ref(&v));
                let expected = PolySubmodule::from_rows(
                    n,
                    oracle.basis().iter().map(|r| r.iter().map(|x| UPoly::constant(x.clone())).collect()).collect(),
                );
                let seed = ConformalElement::new(v.iter().map(|x| Poly::constant(x.clone())).collect());
                let got = ideal_closure(&c, &[seed], Sided::Two).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("Cur({aname}) under {cname}, seed {v:?}: {got} != {expected}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} closures equal Q[T] (x) brute-force ideal"))
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32) -> Poly<Rational> {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(0..6) {
        let mut e = [0u32; 4];
        let d = rng.gen_range(0..=max_deg);
        for _ in 0..d {
            e[rng.gen_range(0..4)] += 1;
        }
        p = Poly::add(&p, &Poly::term(small_rational(rng), Monomial(e)));
    }
    p
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    for case in 0..1000 {
        let (a, b, c) = (random_poly(&mut rng, 4), random_poly(&mut rng, 4), random_poly(&mut rng, 4));
        let fail = |what: &str| format!("case {case}: {what} with a = {a}, b = {b}, c = {c}");
        ensure(Poly::add(&a, &b) == Poly::add(&b, &a), || fail("a+b != b+a"))?;
        ensure(Poly::mul(&a, &b) == Poly::mul(&b, &a), || fail("ab != ba"))?;
        ensure(Poly::add(&Poly::add(&a, &b), &c) == Poly::add(&a, &Poly::add(&b, &c)), || fail("(a+b)+c"))?;
        ensure(Poly::mul(&Poly::mul(&a, &b), &c) == Poly::mul(&a, &Poly::mul(&b, &c)), || fail("(ab)c"))?;
        ensure(
            Poly::mul(&a, &Poly::add(&b, &c)) == Poly::add(&Poly::mul(&a, &b), &Poly::mul(&a, &c)),
            || fail("a(b+c)"),
        )?;
        ensure(Poly::mul(&a, &Poly::one()) == a && Poly::add(&a, &Poly::zero()) == a, || fail("identities"))?;
        ensure(Poly::add(&a, &a.neg()).is_zero(), || fail("a + (-a)"))?;
        let mut bind: Bindings<Rational> = Default::default();
        for v in Var::ALL {
            if rng.gen_bool(0.75) {
                bind[v.index()] = Some(random_poly(&mut rng, 2));
            }
        }
        let s = |p: &Poly<Rational>| p.substitute(&bind);
        ensure(s(&Poly::add(&a, &b)) == Poly::add(&s(&a), &s(&b)), || fail("substitution is not additive"))?;
        ensure(s(&Poly::mul(&a, &b)) == Poly::mul(&s(&a), &s(&b)), || fail("substitution is not multiplicative"))?;
        ensure(s(&Poly::one()) == Poly::one(), || fail("substitution does not fix 1"))?;
    }
    Ok("1000 random cases, ring axioms and substitution homomorphism".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom soundness of Cur fixtures", criterion_1),
        ("Cend associativity and planted mutations", criterion_2),
        ("cocycle round trip", criterion_3),
        ("re-grading equivalence", criterion_4),
        ("fine structure round trip", criterion_5),
        ("simplicity and semisimple decomposition", criterion_6),
        ("ideal closure oracle", criterion_7),
        ("polynomial kernel algebra", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        eprintln!("criterion {}: {:.1}s", i + 1, start.elapsed().as_secs_f64());
        match outcome {
            Ok(detail) => println!("criterion {}: PASS [{name}] tolerance={TOLERANCE}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL [{name}] tolerance={TOLERANCE}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
