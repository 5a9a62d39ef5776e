use std::sync::Arc;
use std::time::Instant;

use lrdesk::building::{self, DominancePair, FrobOperator, Q};
use lrdesk::gerbe::{self, LocalConfig};
use lrdesk::groups::make_group;
use lrdesk::linalg::{int, ints};
use lrdesk::shimura::{self, GmScenario, KappaValue};
use lrdesk::tate::{self, tate_h};
use lrdesk::weil::{self, CMGaloisDatum};
use lrdesk::{FiniteGroup, GModule, Int, Matrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{int_json, ints_json, Check, ScenarioReport};
use crate::scenario::*;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub depth: Option<usize>,
    pub timing: bool,
}

type Outcome = Result<(Vec<Check>, Value), InputError>;

pub fn run_scenario(name: &str, s: &Scenario, opts: Options) -> Result<ScenarioReport, InputError> {
    let start = Instant::now();
    let (checks, data) = match &s.kind {
        Kind::Tate(p) => run_tate(p),
        Kind::Weil(p) => run_weil(p),
        Kind::Cocycle(p) => run_cocycle(p, s.seed),
        Kind::GrunwaldWang => run_gw(),
        Kind::Building(p) => run_building(p, opts.depth),
        Kind::Gm(p) => run_gm(p),
        Kind::Torus(p) => run_torus(p),
        Kind::Kappa(p) => run_kappa(p, s.seed),
    }?;
    let elapsed_ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(ScenarioReport { name: name.to_string(), scenario: s.echo(), checks, data, elapsed_ms })
}

fn group_of(spec: &GroupSpec) -> Result<Arc<FiniteGroup>, InputError> {
    match spec {
        GroupSpec::Named(n) => FiniteGroup::named(n).map_err(|e| schema("parameters.group", e.to_string())),
        GroupSpec::Table { table } => {
            make_group(table.clone()).map(Arc::new).map_err(|e| schema("parameters.group.table", e.to_string()))
        }
    }
}

fn run_tate(p: &TateParams) -> Outcome {
    let g = group_of(&p.group)?;
    let factors: Vec<Int> = p.factors.iter().map(|&f| int(f)).collect();
    if p.factors.iter().any(|&f| f < 0) {
        return Err(schema("parameters.factors", "orders must be nonnegative"));
    }
    let n = factors.len();
    let action = match &p.action {
        None => vec![Matrix::identity(n); g.order()],
        Some(ms) => ms
            .iter()
            .map(|rows| {
                let rows: Vec<Vec<Int>> = rows.iter().map(|r| ints(r)).collect();
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(schema("parameters.action", format!("matrices must be {n}×{n}")));
                }
                Ok(Matrix::from_rows(&rows))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let m = GModule::new(Arc::clone(&g), factors, action).map_err(|e| schema("parameters.action", e.to_string()))?;
    let groups = (-1..=2)
        .map(|d| tate_h(&m, d).map(|h| h.invariant_factors()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| schema("parameters", e.to_string()))?;
    let order = int(g.order() as i64);
    let table: Vec<Value> =
        groups.iter().zip(-1..=2).map(|(f, d)| json!({"degree": d, "invariant_factors": ints_json(f)})).collect();
    let mut checks = vec![Check::new(
        "tate_annihilated",
        groups.iter().flatten().all(|f| (&order % f) == int(0)),
        json!({"order": g.order()}),
    )];
    let cyclic = g.elements().any(|x| g.element_order(x) == g.order());
    if cyclic {
        checks.push(Check::new(
            "tate_periodicity",
            groups[0] == groups[2] && groups[1] == groups[3],
            json!({"odd": [ints_json(&groups[0]), ints_json(&groups[2])], "even": [ints_json(&groups[1]), ints_json(&groups[3])]}),
        ));
    }
    // the fundamental cocycle is written for Z/n with generator 1 acting trivially on Z
    let standard_cyclic = g.order() == 1 || g.element_order(1) == g.order();
    let trivial_z = p.factors == [0] && p.action.as_ref().map_or(true, |a| a.iter().all(|m| m == &vec![vec![1]]));
    if standard_cyclic && trivial_z {
        let c = gerbe::fundamental_cocycle_cyclic(g.order());
        let ord = tate::cocycle_class_order(&c).map_err(|e| schema("parameters", e.to_string()))?;
        checks.push(Check::new(
            "fundamental_class_order",
            ord == Some(order.clone()),
            json!({"n": g.order(), "class_order": ord.as_ref().map(int_json)}),
        ));
    }
    Ok((checks, json!({"group_order": g.order(), "cohomology": table})))
}

fn datum_checks(d: &CMGaloisDatum) -> Result<weil::WeilChecks, InputError> {
    weil::check_datum(d).map_err(|e| schema("parameters", e.to_string()))
}

fn run_weil(p: &WeilParams) -> Outcome {
    let mut data: Vec<(String, usize, Vec<usize>, weil::WeilChecks)> = Vec::new();
    let mut tower_result = None;
    if let Some(max) = p.max_order {
        if p.group.is_some() {
            return Err(schema("parameters", "give either max_order or a single datum"));
        }
        for g in weil::cm_test_groups(max) {
            for d in CMGaloisDatum::all_on(&g) {
                let c = datum_checks(&d)?;
                data.push((g.label().unwrap_or("table").to_string(), d.iota(), d.h().elements().to_vec(), c));
            }
        }
    } else {
        let spec = p.group.as_ref().ok_or_else(|| schema("parameters.group", "missing"))?;
        let g = group_of(spec)?;
        let iota = p.iota.ok_or_else(|| schema("parameters.iota", "missing"))?;
        if p.h.iter().any(|&x| x >= g.order()) {
            return Err(schema("parameters.h", "element out of range"));
        }
        let d = CMGaloisDatum::new(Arc::clone(&g), iota, g.generated(&p.h))
            .map_err(|e| schema("parameters", e.to_string()))?;
        let c = datum_checks(&d)?;
        data.push((g.label().unwrap_or("table").to_string(), iota, d.h().elements().to_vec(), c));
        if let Some(s) = p.tower {
            if s == 0 {
                return Err(schema("parameters.tower", "must be positive"));
            }
            let (up, pi) = weil::product_tower(&d, s).map_err(|e| schema("parameters", e.to_string()))?;
            let ok = weil::verify_transition_vanishing(&up, &d, &pi).map_err(|e| schema("parameters", e.to_string()))?;
            tower_result = Some((s, ok));
        }
    }
    let all = |f: fn(&weil::WeilChecks) -> bool| data.iter().all(|(_, _, _, c)| f(c));
    let first_fail = |f: fn(&weil::WeilChecks) -> bool| {
        data.iter().find(|(_, _, _, c)| !f(c)).map(|(g, i, h, _)| json!({"group": g, "iota": i, "h": h}))
    };
    let mk = |name: &str, f: fn(&weil::WeilChecks) -> bool| {
        Check::new(name, all(f), json!({"data": data.len(), "first_failure": first_fail(f)}))
    };
    let mut checks = vec![
        mk("weil_torsion_free", |c| c.torsion_free),
        mk("weil_rank", |c| c.expected_rank),
        mk("weil_relation", |c| c.relation),
        mk("nu_conditions", |c| c.nu_conditions),
        mk("hasse_surjectivity", |c| c.hasse_surjective),
        mk("psi_dual_surjective", |c| c.psi_dual_surjective),
    ];
    if let Some((s, ok)) = tower_result {
        checks.push(Check::new("transition_vanishing", ok, json!({"s": s})));
    }
    let rows: Vec<Value> = data
        .iter()
        .map(|(g, i, h, c)| json!({"group": g, "iota": i, "h": h, "rank": c.rank, "k": c.k, "case": c.case}))
        .collect();
    Ok((checks, json!({"data": rows})))
}

fn gerbe_checks() -> Vec<Check> {
    let a = gerbe::archimedean_fundamental_cocycle();
    let ext = gerbe::extension_from_cocycle(&a).expect("archimedean cocycle is a cocycle");
    let w = ext.section(1);
    let square = ext.eq(&ext.mul(&w, &w), &ext.kernel_element(&ints(&[2])));
    let conj = (0..4).all(|z| {
        let zz = ext.kernel_element(&ints(&[z]));
        ext.eq(&ext.mul(&ext.mul(&w, &zz), &ext.inverse(&w)), &ext.kernel_element(&ints(&[-z])))
    });
    let d = gerbe::extension_from_cocycle(&gerbe::fundamental_cocycle_cyclic(2)).expect("fundamental cocycle");
    let s = d.section(1);
    let power = d.eq(&d.mul(&s, &s), &d.kernel_element(&ints(&[-1])));
    vec![
        Check::new("weight_gerbe_square", square, json!({"order_of_w": ext.element_order(&w, 16)})),
        Check::new("weight_gerbe_conjugation", conj, Value::Null),
        Check::new("dieudonne_power", power, json!({"n": 2})),
    ]
}

fn run_cocycle(p: &CocycleParams, seed: u64) -> Outcome {
    if p.instances == 0 {
        return Err(schema("parameters.instances", "must be positive"));
    }
    let configs: Vec<LocalConfig> = match p.config {
        Some(c) => vec![c],
        None => LocalConfig::ALL.to_vec(),
    };
    let jobs: Vec<(LocalConfig, u64)> =
        (0..p.instances).map(|i| (configs[i % configs.len()], seed.wrapping_add(i as u64))).collect();
    use rayon::prelude::*;
    let outcomes: Vec<(LocalConfig, u64, gerbe::CocycleOutcome)> = jobs
        .par_iter()
        .map(|&(c, s)| {
            let inst = gerbe::generate_instance(c, s, p.averaged).map_err(|e| schema("parameters", e.to_string()))?;
            let out = gerbe::run_instance(&inst).map_err(|e| schema("parameters", e.to_string()))?;
            Ok((c, s, out))
        })
        .collect::<Result<_, InputError>>()?;
    let fail_of = |f: &dyn Fn(&gerbe::CocycleOutcome) -> bool| {
        outcomes.iter().find(|(_, _, o)| !f(o)).map(|(c, s, _)| json!({"config": c, "seed": s}))
    };
    let mk = |name: &str, f: &dyn Fn(&gerbe::CocycleOutcome) -> bool| {
        let fail = fail_of(f);
        Check::new(name, fail.is_none(), json!({"instances": outcomes.len(), "first_failure": fail}))
    };
    let mut checks = gerbe_checks();
    checks.push(mk("defect_identity", &|o| o.defect_identity.holds));
    checks.push(mk("t_is_cocycle", &|o| o.t_is_cocycle));
    checks.push(mk("lift_change", &|o| o.lift_change_ok));
    if p.averaged {
        checks.push(mk("factorization", &|o| o.factorization == Some(true) && o.local_coboundaries_ok == Some(true)));
    }
    let per_config: Vec<Value> = configs
        .iter()
        .map(|c| json!({"config": c, "instances": outcomes.iter().filter(|(d, _, _)| d == c).count()}))
        .collect();
    Ok((checks, json!({"configs": per_config, "averaged": p.averaged})))
}

fn run_gw() -> Outcome {
    let gw = tate::grunwald_wang();
    let r = tate::grunwald_wang_report(&gw).map_err(|e| schema("parameters", e.to_string()))?;
    let local: Vec<Value> = r.local_zero.iter().map(|(s, z)| json!({"sigma": s, "restriction_zero": z})).collect();
    let checks = vec![
        Check::new(
            "gw_global_nonzero",
            r.global_class_nonzero,
            json!({"class_order": r.global_class_order.as_ref().map(int_json)}),
        ),
        Check::new("gw_locally_trivial", r.local_zero.iter().all(|(_, z)| *z), Value::Array(local)),
        Check::new("gw_local_lifts", r.lifts_valid, json!({"lifts": gw.local_lifts.len()})),
        Check::new(
            "gw_not_injective",
            !r.kernel_factors.is_empty() && r.class_in_kernel,
            json!({"kernel_invariant_factors": ints_json(&r.kernel_factors)}),
        ),
    ];
    let v = gw.seq.sub();
    Ok((checks, json!({"v_order": v.size().as_ref().map(int_json), "y": ints_json(&gw.y)})))
}

fn rows_json(m: &building::M2) -> Value {
    json!(m.to_strings())
}

fn run_building(p: &BuildingParams, depth_override: Option<usize>) -> Outcome {
    let lambda = match &p.lambda {
        None => None,
        Some(s) => Some(s.parse::<Q>().map_err(|e| schema("parameters.lambda", e.to_string()))?),
    };
    let f = FrobOperator::quaternionic(p.v1, p.v2, p.p, lambda).map_err(|e| schema("parameters", e.to_string()))?;
    let n = f.n();
    if let Some(claimed) = p.n {
        if claimed != n {
            return Err(schema("parameters.n", format!("v1 + v2 = 2n forces n = {n}")));
        }
    }
    let depth = depth_override.or(p.depth).unwrap_or(3);
    let m = 2 * n;
    let (fm, rep) = building::frob_power(&f, m);
    let mu = DominancePair::new(1, 0);
    let perm = building::cyclic_perm(m);
    let base = building::base_tuple(&f, m);
    let profile = building::inv_profile(&f, &base, &perm);
    let inv_ok = profile.iter().flatten().all(|d| *d == mu);
    let found = building::enumerate_xp(&f, mu, &perm, depth).map_err(|e| schema("parameters", e.to_string()))?;
    let empty = building::enumerate_xp(&f, DominancePair::new(0, 0), &perm, depth)
        .map_err(|e| schema("parameters", e.to_string()))?;
    let checks = vec![
        Check::new(
            "frob_power_central",
            rep.diagonal_central && rep.twist_trivial,
            json!({"power": m, "component": rows_json(&fm.g[0]), "sign": rep.sign}),
        ),
        Check::new(
            "frob_power_valuations",
            rep.valuations == Some((p.v1, p.v2)),
            json!({"valuations": rep.valuations.map(|(a, b)| [a, b])}),
        ),
        Check::new(
            "base_tuple_inv",
            inv_ok,
            json!({"mu": mu.to_string(), "indices": m, "factors": n}),
        ),
        Check::new(
            "xp_contains_base",
            found.contains(&base),
            json!({"depth": depth, "solutions_in_ball": found.len()}),
        ),
        Check::new("xp_mu_zero_empty", empty.is_empty(), json!({"depth": depth})),
    ];
    let base_json: Vec<Value> = base
        .iter()
        .map(|x| {
            Value::Array(
                x.iter()
                    .map(|pt| {
                        let (rows, off) = building::point_to_strings(pt, p.p);
                        json!({"hnf": rows, "offset": off})
                    })
                    .collect(),
            )
        })
        .collect();
    Ok((checks, json!({"n": n, "lambda": f.lambda.to_string(), "base_tuple": base_json})))
}

fn run_gm(p: &GmParams) -> Outcome {
    let s = GmScenario::new(p.n, p.p).map_err(|e| schema("parameters", e.to_string()))?;
    if p.m_max == 0 {
        return Err(schema("parameters.m_max", "must be positive"));
    }
    let pts = shimura::gm_point_set(&s);
    let model = shimura::gm_double_coset_model(&s);
    let ord = shimura::multiplicative_order(p.p, p.n);
    let table: Vec<usize> = (1..=p.m_max).map(|m| shimura::count_fixed(&pts, m)).collect();
    let direct: Vec<usize> = (1..=p.m_max)
        .map(|m| s.units().iter().filter(|&&u| (0..m).fold(u, |x, _| x * p.p % p.n) == u % p.n).count())
        .collect();
    let totient = pts.len();
    let fixed_ok = table == direct && (1..=p.m_max).filter(|m| m % ord == 0).all(|m| table[m - 1] == totient);
    let periodic = (1..=p.m_max).all(|m| shimura::count_fixed(&pts, m) == shimura::count_fixed(&pts, m + ord));
    let checks = vec![
        Check::new(
            "gm_identification",
            shimura::verify_gm_identification(&pts, &model),
            json!({"points": pts.len(), "classes": model.representatives.len()}),
        ),
        Check::new("gm_fixed_points", fixed_ok, json!({"totient": totient, "order_of_p": ord})),
        Check::new("gm_periodicity", periodic, json!({"period": ord})),
    ];
    Ok((checks, json!({"fixed_point_table": table, "orbit_lengths": pts.orbit_lengths()})))
}

fn run_torus(p: &TorusParams) -> Outcome {
    let model = building::torus_xp_model(p.r, &p.mu).map_err(|e| schema("parameters", e.to_string()))?;
    let d = p.mu.len();
    let expected: Vec<i64> = (0..d).map(|_| (p.r / d.max(1)) as i64 * p.mu.iter().sum::<i64>()).collect();
    let mut checks = vec![
        Check::new("torus_translation", model.translation == expected, json!({"translation": model.translation})),
        Check::new(
            "torus_fixed_point_free",
            model.fixed_point_free == model.translation.iter().any(|&t| t != 0),
            json!({"fixed_point_free": model.fixed_point_free}),
        ),
    ];
    if d > 0 {
        let x = GModule::regular(FiniteGroup::cyclic(d));
        let eps: Vec<Q> = p.eps_valuation.clone().unwrap_or(model.translation.clone()).iter().map(|&e| Q::from_integer(int(e))).collect();
        let frob = if d == 1 { 0 } else { 1 };
        checks.push(Check::new(
            "star_epsilon",
            shimura::star_epsilon_check(&x, frob, &eps, &ints(&p.mu), p.r),
            json!({"eps_valuation": eps.iter().map(|q| q.to_string()).collect::<Vec<_>>()}),
        ));
    }
    Ok((checks, serde_json::to_value(&model).expect("model serializes")))
}

fn kappa_json(k: &KappaValue) -> Value {
    json!({"factors": ints_json(&k.factors), "coords": ints_json(&k.coords)})
}

fn run_kappa(p: &KappaParams, seed: u64) -> Outcome {
    let err = |e: shimura::ShimuraError| schema("parameters", e.to_string());
    match p.case {
        KappaCase::Nested | KappaCase::Perturbed => {
            let t = if p.case == KappaCase::Nested { 0 } else { 1 };
            let d = shimura::sign_torus_datum(1, t);
            let k = shimura::kappa_toral(&d).map_err(err)?;
            let matching = shimura::matching_criterion(&d).map_err(err)?;
            let mut checks = vec![Check::new("star_delta", shimura::star_delta_check(&d), Value::Null)];
            if p.case == KappaCase::Nested {
                checks.push(Check::new("kappa_nested_trivial", k.is_zero() && matching, kappa_json(&k)));
            } else {
                checks.push(Check::new("kappa_perturbed_nontrivial", !k.is_zero() && !matching, kappa_json(&k)));
            }
            Ok((checks, json!({"kappa": kappa_json(&k), "matching": matching})))
        }
        KappaCase::Random => {
            let count = p.count.unwrap_or(100);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut additive, mut coboundary, mut nonzero) = (true, true, 0usize);
            let mut first_failure = None;
            for i in 0..count {
                let d = shimura::random_toral_datum(&mut rng);
                let n = d.x.dim();
                let t1 = shimura::random_element(&mut rng, n);
                let t2 = shimura::random_element(&mut rng, n);
                let y = shimura::random_element(&mut rng, n);
                let g = d.gp.elements()[rng.gen_range(0..d.gp.order())];
                let k = |t: &[Int]| shimura::kappa_toral(&d.with_b_class(lrdesk::linalg::vec_add(&d.mu, t)));
                let k1 = k(&t1).map_err(err)?;
                let k12 = k(&lrdesk::linalg::vec_add(&t1, &t2)).map_err(err)?;
                let add_ok = k12 == k1.add(&k(&t2).map_err(err)?);
                let cob = lrdesk::linalg::vec_sub(&d.x.act(g, &y), &y);
                let cob_ok = k(&lrdesk::linalg::vec_add(&t1, &cob)).map_err(err)? == k1;
                if !k1.is_zero() {
                    nonzero += 1;
                }
                additive &= add_ok;
                coboundary &= cob_ok;
                if (!add_ok || !cob_ok) && first_failure.is_none() {
                    first_failure = Some(i);
                }
            }
            let checks = vec![
                Check::new("kappa_additive", additive, json!({"data": count, "first_failure": first_failure})),
                Check::new("kappa_coboundary", coboundary, json!({"data": count, "first_failure": first_failure})),
            ];
            Ok((checks, json!({"data": count, "nonzero_kappa": nonzero})))
        }
    }
}
