//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the summary lines always appear in the test output.

use std::process::ExitCode;
use std::time::Instant;

use bierkr::exactgeom::{facet_enumeration, min_cost_transport, polytope_contains, Rational};
use bierkr::metricgraph::{
    geodesic_metric, kr_generators, tree_cross_polytope_check, WeightedGraph,
};
use bierkr::realization::{
    fan_check, kr_bier_family, perm_equivalence, star_volume, verify_kr_bier, verify_q_alpha,
    QAlphaOptions,
};
use bierkr::report::VerificationReport;
use bierkr::sampling::Sampler;
use bierkr::simplicial::{
    alexander_dual, all_complexes, bier_facets, deleted_join_faces, maximal_faces, ComplexJson,
    FVector, SimplicialComplex,
};
use bierkr::threshold::{dual_quota_identity_check, Permutation, Quota, WeightVector};

const SEED: u64 = 20_240_601;
const ALPHAS: [(i64, i64); 4] = [(1, 2), (1, 1), (2, 1), (5, 1)];

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

/// Quotas `β/(1+β)` and `1/(1+β)` for every tested `α`.
fn quotas() -> Vec<Quota> {
    let mut out: Vec<Quota> = ALPHAS
        .iter()
        .flat_map(|&(p, d)| {
            let nu = Quota::from_beta(&q(d, p)).unwrap();
            [nu.complement(), nu]
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

struct Instances {
    weights: Vec<WeightVector>,
    complexes: Vec<SimplicialComplex>,
}

fn instances() -> Instances {
    let mut s = Sampler::new(SEED);
    let qs = quotas();
    let weights = (3..=7)
        .flat_map(|n| (0..100).map(move |_| n))
        .map(|n| s.generic_short_weights(n, &qs))
        .collect();
    let mut complexes: Vec<SimplicialComplex> = (0..=4)
        .flat_map(all_complexes)
        .filter(SimplicialComplex::is_proper)
        .collect();
    let mut c = Sampler::new(SEED + 1);
    for n in [5, 6] {
        complexes.extend((0..200).map(|_| c.proper_complex(n)));
    }
    Instances { weights, complexes }
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn require(report: VerificationReport) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(serde_json::to_string(&report).unwrap())
    }
}

fn c1(inst: &Instances) -> Outcome {
    for l in &inst.weights {
        require(verify_kr_bier(l).map_err(|e| format!("{l}: {e}"))?)?;
    }
    Ok(format!("{} weight vectors, n = 3..7", inst.weights.len()))
}

fn c2(inst: &Instances) -> Outcome {
    let mut runs = 0;
    for l in &inst.weights {
        for &(p, d) in &ALPHAS {
            let r = verify_q_alpha(l, &q(p, d), &QAlphaOptions::default())
                .map_err(|e| format!("{l}: {e}"))?;
            require(r)?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (L, alpha) pairs"))
}

fn c3() -> Outcome {
    let l = WeightVector::new(vec![q(1, 3); 3]).unwrap();
    let k = SimplicialComplex::from_json(&ComplexJson {
        n: 3,
        facets: vec![vec![1], vec![2], vec![3]],
    })
    .unwrap();
    let kr = FVector::of_family(&kr_bier_family(&l).map_err(|e| e.to_string())?);
    let bier = FVector::of_bier(&bier_facets(&k).unwrap());
    let volume = star_volume(&k).map_err(|e| e.to_string())?;
    let golden = FVector(vec![1, 6, 6]);
    if kr != golden || bier != golden || volume != q(3, 1) {
        return Err(format!("KR {:?}, Bier {:?}, volume {volume}", kr.0, bier.0));
    }
    require(verify_kr_bier(&l).map_err(|e| e.to_string())?)?;
    Ok("f-vectors (1,6,6), star volume 3".into())
}

fn c4() -> Outcome {
    let mut s = Sampler::new(SEED + 2);
    for n in 3..=7 {
        for _ in 0..50 {
            let t = s.tree(n);
            let r = tree_cross_polytope_check(&t).map_err(|e| e.to_string())?;
            if r.matched_facets != 1 << (n - 1) {
                return Err(format!("{} facets for n = {n}", r.matched_facets));
            }
            require(r)?;
        }
    }
    Ok("250 trees, n = 3..7".into())
}

fn c5(inst: &Instances) -> Outcome {
    for k in &inst.complexes {
        let dual = alexander_dual(k).unwrap();
        let oracle = maximal_faces(&deleted_join_faces(k, &dual).unwrap());
        if bier_facets(k).unwrap() != oracle {
            return Err(format!("{:?}", k.to_json()));
        }
    }
    Ok(format!(
        "{} complexes (exhaustive n <= 4, 400 random n = 5,6)",
        inst.complexes.len()
    ))
}

fn c6(inst: &Instances) -> Outcome {
    let mut c = Sampler::new(SEED + 3);
    let random: Vec<SimplicialComplex> = [5, 6]
        .iter()
        .flat_map(|&n| (0..100).map(move |_| n))
        .map(|n| c.proper_complex(n))
        .collect();
    // a fan needs a ground set of at least two points
    let exhaustive = inst
        .complexes
        .iter()
        .filter(|k| (2..=4).contains(&k.ground_size()));
    let mut count = 0;
    for k in exhaustive.chain(&random) {
        require(fan_check(k).map_err(|e| e.to_string())?)?;
        count += 1;
    }
    Ok(format!(
        "{count} complexes (exhaustive n = 2..4, 200 random n = 5,6)"
    ))
}

fn c7(inst: &Instances) -> Outcome {
    for k in &inst.complexes {
        if alexander_dual(&alexander_dual(k).unwrap()).unwrap() != *k {
            return Err(format!("double dual of {:?}", k.to_json()));
        }
    }
    let qs = quotas();
    for l in &inst.weights {
        for nu in &qs {
            if !dual_quota_identity_check(l, nu).map_err(|e| e.to_string())? {
                return Err(format!("{l} at {nu}"));
            }
        }
    }
    Ok(format!(
        "{} double duals, {} threshold duals",
        inst.complexes.len(),
        inst.weights.len() * qs.len()
    ))
}

fn c8(inst: &Instances) -> Outcome {
    let mut s = Sampler::new(SEED + 4);
    let mut points = 0;
    let one = q(1, 1);
    for l in inst.weights.iter().filter(|l| l.len() <= 5) {
        let m = geodesic_metric(&WeightedGraph::cycle(l.weights()).unwrap()).unwrap();
        let cost = m.matrix();
        let generators = kr_generators(&m).unwrap();
        for (label, p) in generators.iter() {
            let norm = min_cost_transport(p, cost).unwrap();
            if norm != one {
                return Err(format!("{l}: generator {label} has norm {norm}"));
            }
        }
        let facets = facet_enumeration(&generators).unwrap();
        for k in 0..20 {
            let x = s.v0_point(l.len());
            let norm = min_cost_transport(&x, cost).unwrap();
            // every fifth point is put exactly on the boundary
            let target = if k % 5 == 0 {
                one.clone()
            } else {
                s.fraction_between(500, 1500)
            };
            let y = x.scale(&(target / norm));
            let inside = min_cost_transport(&y, cost).unwrap() <= one;
            if inside != polytope_contains(&facets, &y) {
                return Err(format!("{l}: point {y}, norm test {inside}"));
            }
            points += 1;
        }
    }
    Ok(format!("{points} random points, n = 3..5"))
}

fn c9() -> Outcome {
    let mut s = Sampler::new(SEED + 5);
    for n in 4..=6 {
        for k in 0..50 {
            let l = s.generic_short_weights(n, &[Quota::half()]);
            let sigma = if k % 5 == 0 {
                let i = k / 5 % (n - 1);
                let mut images: Vec<usize> = (0..n).collect();
                images.swap(i, i + 1);
                Permutation::new(images).unwrap()
            } else {
                s.permutation(n)
            };
            require(perm_equivalence(&l, &sigma).map_err(|e| format!("{l}: {e}"))?)?;
        }
    }
    Ok("150 (L, sigma) pairs, n = 4..6".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let inst = instances();
    let criteria: Vec<Criterion> = vec![
        (
            "KR polytope of the cycle vs Bier(Short(L))",
            Box::new(|| c1(&inst)),
        ),
        ("Q_alpha vs Bier(T_{mu < nu})", Box::new(|| c2(&inst))),
        ("hexagon golden values", Box::new(c3)),
        ("trees give cross-polytopes", Box::new(c4)),
        ("Bier facets vs deleted-join oracle", Box::new(|| c5(&inst))),
        ("complete simplicial fan", Box::new(|| c6(&inst))),
        ("duality identities", Box::new(|| c7(&inst))),
        ("KR norm vs facet membership", Box::new(|| c8(&inst))),
        ("permutation equivalence", Box::new(c9)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
