//! The verification suites behind the command-line front end.
//!
//! Each member suite draws from its own generator, seeded from the run seed
//! and the suite's position, so a suite produces the same checks whether it
//! runs alone or inside `all`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::awmod::{
    aw_construct, commutant_check, extract_D, fit_from_module, fit_polynomial, recovered_rho, samples,
    verify_deform, verify_jet_brackets,
};
use crate::cover::{
    coinduced_act_eval, cover_a_act, cover_act, differentiator_generator, equal_on_window, pi,
    pi_surjectivity_report, psi_eval, weight_space_rank, CoverElement,
};
use crate::error::{Error, Result};
use crate::lattice::{box_points, LatticePoint};
use crate::linalg::Matrix;
use crate::modules::{
    min_annihilation_order, theta_map, window_structure, BasisVector, BetaMode, ModuleParams, ModuleVector,
    TensorModule, TrivialModule, WeightModule,
};
use crate::random::Sampler;
use crate::report::{Check, FailureSummary, Report, RunConfig, Status, Suite};
use crate::scalar::Scalar;
use crate::solalg::{a_action, bracket, bracket_basis, derivation_action, AlgebraElement, TorusFunction};
use crate::uea::{commutator, pbw_normalize, uea_mul, verify_omega_identity, UeaElement};

/// Everything a suite contributes to a report.
#[derive(Default)]
struct Outcome {
    checks: Vec<Check>,
    identities: Vec<Value>,
    rank_table: BTreeMap<String, usize>,
}

impl Outcome {
    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

/// First case failing `pred`, with the number of cases tried.
fn first_failure<T>(cases: impl IntoIterator<Item = T>, pred: impl Fn(&T) -> bool) -> (usize, Option<T>) {
    let mut count = 0;
    for c in cases {
        count += 1;
        if !pred(&c) {
            return (count, Some(c));
        }
    }
    (count, None)
}

/// A check over many cases: pass witness is the case count, fail witness the
/// first failing case.
fn case_check<T: Debug>(name: &str, inputs: Value, cases: Vec<T>, pred: impl Fn(&T) -> bool) -> Check {
    let (count, bad) = first_failure(cases, pred);
    match bad {
        None => Check::new(name, inputs, true, json!({ "cases": count })),
        Some(c) => Check::new(name, inputs, false, json!({ "failing_case": format!("{c:?}") })),
    }
}

fn alpha_scalar(cfg: &RunConfig) -> Scalar {
    cfg.alpha.clone().map_or_else(Scalar::alpha, Scalar::from_rational)
}

fn beta_mode(cfg: &RunConfig) -> BetaMode {
    if cfg.beta.is_some() {
        BetaMode::Integral
    } else {
        BetaMode::Generic
    }
}

fn configured_params(cfg: &RunConfig) -> ModuleParams {
    ModuleParams::new(alpha_scalar(cfg), beta_mode(cfg))
}

/// `α ∈ {0, 1}` for a bound `α`.
fn alpha_is_degenerate(cfg: &RunConfig) -> bool {
    cfg.alpha.as_ref().is_some_and(|a| {
        let a = Scalar::from_rational(a.clone());
        a.is_zero() || a.is_one()
    })
}

fn lp_json(p: &LatticePoint) -> Value {
    Value::String(p.to_string())
}

fn jacobi(cfg: &RunConfig, smp: &mut Sampler) -> Outcome {
    let n = cfg.n;
    let mut out = Outcome::default();
    let inputs = json!({ "n": n, "radius": 2 });

    let triples: Vec<_> = (0..200)
        .map(|_| (smp.algebra_element(n, 2, 3), smp.algebra_element(n, 2, 3), smp.algebra_element(n, 2, 3)))
        .collect();
    out.push(case_check("jacobi/antisymmetry", inputs.clone(), triples.clone(), |(x, y, _)| {
        bracket(x, y).add(&bracket(y, x)).is_zero()
    }));
    out.push(case_check("jacobi/jacobi-identity", inputs.clone(), triples, |(x, y, z)| {
        bracket(x, &bracket(y, z))
            .add(&bracket(y, &bracket(z, x)))
            .add(&bracket(z, &bracket(x, y)))
            .is_zero()
    }));

    let leibniz: Vec<_> = (0..100)
        .map(|_| (smp.algebra_element(n, 2, 2), smp.algebra_element(n, 2, 2), smp.torus_function(n, 2, 2)))
        .collect();
    out.push(case_check("jacobi/leibniz", inputs.clone(), leibniz.clone(), |(x, y, f)| {
        bracket(x, &a_action(f, y)) == a_action(&derivation_action(x, f), y).add(&a_action(f, &bracket(x, y)))
    }));
    out.push(case_check("jacobi/derivation-representation", inputs.clone(), leibniz, |(x, y, f)| {
        let lhs = derivation_action(&bracket(x, y), f);
        let rhs = derivation_action(x, &derivation_action(y, f)).sub(&derivation_action(y, &derivation_action(x, f)));
        lhs == rhs
    }));

    let words: Vec<_> = (0..100)
        .map(|_| {
            (
                pbw_normalize(&smp.word(n, 2, 2)),
                pbw_normalize(&smp.word(n, 2, 2)),
                pbw_normalize(&smp.word(n, 2, 2)),
            )
        })
        .collect();
    out.push(case_check("jacobi/pbw-associativity", inputs.clone(), words, |(a, b, c)| {
        uea_mul(&uea_mul(a, b), c) == uea_mul(a, &uea_mul(b, c))
    }));

    let pairs: Vec<(LatticePoint, LatticePoint)> = if n <= 2 {
        let pts = box_points(n, 2);
        pts.iter().flat_map(|a| pts.iter().map(move |b| (a.clone(), b.clone()))).collect()
    } else {
        (0..200).map(|_| (smp.point(n, 2), smp.point(n, 2))).collect()
    };
    out.push(case_check("jacobi/pbw-commutator", inputs, pairs, |(a, b)| {
        let lhs = commutator(&UeaElement::generator(a.clone()), &UeaElement::generator(b.clone()));
        let (sum, c) = bracket_basis(a, b);
        lhs == UeaElement::generator(sum).scale(&c)
    }));
    out
}

fn omega(cfg: &RunConfig, smp: &mut Sampler) -> Outcome {
    let (n, r) = (cfg.n, cfg.r);
    let tuples = match (r, n) {
        (2, 1) => 20,
        (2, _) => 8,
        _ => 3,
    };
    let mut out = Outcome::default();
    let mut failure = None;
    for _ in 0..tuples {
        let (k, s, p, q) = (smp.point(n, 2), smp.point(n, 2), smp.point(n, 2), smp.point(n, 2));
        let h = smp.nonzero_point(n, 2);
        match verify_omega_identity(r, &k, &s, &p, &q, &h) {
            Ok(rep) => {
                if !rep.equal && failure.is_none() {
                    failure = Some(format!("k={k} s={s} p={p} q={q} h={h}"));
                }
                out.identities.push(json!({
                    "r": r, "k": lp_json(&k), "s": lp_json(&s), "p": lp_json(&p), "q": lp_json(&q), "h": lp_json(&h),
                    "status": if rep.equal { "pass" } else { "fail" },
                    "lhs_terms": rep.lhs_terms, "rhs_terms": rep.rhs_terms,
                }));
            }
            Err(e) => failure = Some(e.to_string()),
        }
    }
    let inputs = json!({ "n": n, "r": r, "tuples": tuples, "radius": 2 });
    let witness = match &failure {
        None => json!({ "cases": tuples }),
        Some(f) => json!({ "failing_case": f }),
    };
    out.push(Check::new(format!("omega/identity-r{r}"), inputs, failure.is_none(), witness));
    out
}

fn annihilation(cfg: &RunConfig, smp: &mut Sampler) -> Outcome {
    let n = cfg.n;
    let params = configured_params(cfg);
    let module = TensorModule::new(n, params);
    let expected = if alpha_is_degenerate(cfg) { 2 } else { 3 };
    let mut out = Outcome::default();

    let cases: Vec<_> = (0..10).map(|_| (smp.nonzero_point(n, 2), smp.point(n, 2), smp.point(n, 2))).collect();
    let mut failure = None;
    for (h, k, s) in &cases {
        match min_annihilation_order(&module, h, k, s, 5) {
            Ok(rep) => {
                let witnessed = rep.nonzero_witnesses.len() == rep.order as usize;
                if rep.order != expected || rep.order_from_degree != rep.order || !witnessed {
                    failure = Some(json!({
                        "h": lp_json(h), "k": lp_json(k), "s": lp_json(s),
                        "order": rep.order, "order_from_degree": rep.order_from_degree,
                    }));
                    break;
                }
            }
            Err(e) => {
                failure = Some(json!({ "h": lp_json(h), "k": lp_json(k), "s": lp_json(s), "error": e.to_string() }));
                break;
            }
        }
    }
    let inputs = json!({ "n": n, "module": module.name(), "cases": cases.len(), "m_max": 5 });
    out.push(match failure {
        None => Check::new("annihilation/order", inputs, true, json!({ "order": expected, "nonzero_below": true })),
        Some(w) => Check::new("annihilation/order", inputs, false, w),
    });

    let (h, k, s) = &cases[0];
    let triv = min_annihilation_order(&TrivialModule { n }, h, k, s, 5);
    let order = triv.as_ref().map(|r| r.order).ok();
    out.push(Check::new(
        "annihilation/trivial-module",
        json!({ "n": n, "h": lp_json(h), "k": lp_json(k), "s": lp_json(s) }),
        order == Some(0),
        json!({ "order": order }),
    ));
    out
}

fn structure_summary(rep: &crate::modules::WindowReport) -> Value {
    json!({
        "full_cyclic": rep.full_cyclic,
        "invariant_subspaces": rep.invariant_subspaces.iter().map(|s| json!({
            "dimension": s.dimension, "codimension": s.codimension,
        })).collect::<Vec<_>>(),
    })
}

fn tensor_structure(cfg: &RunConfig, smp: &mut Sampler) -> Outcome {
    let (n, k) = (cfg.n, cfg.window);
    let mut out = Outcome::default();
    let structure = |name: &str, params: ModuleParams, expect: &dyn Fn(&crate::modules::WindowReport) -> bool| {
        let module = TensorModule::new(n, params);
        let inputs = json!({ "n": n, "window": k, "module": module.name() });
        match window_structure(&module, k) {
            Ok(rep) => Check::new(name, inputs, expect(&rep), structure_summary(&rep)),
            Err(e) => Check::new(name, inputs, false, json!({ "error": e.to_string() })),
        }
    };
    let checks = vec![
        structure("tensor-structure/generic-full-cyclic", ModuleParams::generic(), &|r| r.full_cyclic),
        structure("tensor-structure/t00-invariant-line", ModuleParams::integral(0), &|r| {
            r.invariant_subspaces.len() == 1 && r.has_invariant_line_at_origin()
        }),
        structure("tensor-structure/t10-codim-one", ModuleParams::integral(1), &|r| {
            r.invariant_subspaces.len() == 1 && r.has_codim_one_missing_origin()
        }),
    ];
    for c in checks {
        out.push(c);
    }
    if cfg.alpha.is_some() || cfg.beta.is_some() {
        let reducible = alpha_is_degenerate(cfg) && cfg.beta.is_some();
        let c = structure("tensor-structure/configured", configured_params(cfg), &|r| r.full_cyclic != reducible);
        out.push(c);
    }

    let pairs: Vec<(LatticePoint, LatticePoint)> = (0..60).map(|_| (smp.point(n, 3), smp.point(n, 3))).collect();
    for (label, mode) in [("generic", BetaMode::Generic), ("integral", BetaMode::Integral)] {
        let src = TensorModule::new(n, ModuleParams::new(Scalar::zero(), mode));
        let dst = TensorModule::new(n, ModuleParams::new(Scalar::one(), mode));
        out.push(case_check(
            &format!("tensor-structure/theta-intertwines-{label}"),
            json!({ "n": n, "beta": label }),
            pairs.clone(),
            |(k, s)| {
                let v = ModuleVector::basis(s.clone());
                theta_map(&src.act(k, &v), mode) == dst.act(k, &theta_map(&v, mode))
            },
        ));
    }
    let v0 = ModuleVector::basis(LatticePoint::zero(n));
    out.push(Check::new(
        "tensor-structure/theta-kills-v0",
        json!({ "n": n, "beta": "integral" }),
        theta_map(&v0, BetaMode::Integral).is_zero(),
        Value::Null,
    ));

    let module = TensorModule::new(n, configured_params(cfg));
    let cases: Vec<_> = (0..100).map(|_| (smp.point(n, 3), smp.point(n, 3), smp.point(n, 3))).collect();
    out.push(case_check(
        "tensor-structure/module-axiom",
        json!({ "n": n, "module": module.name() }),
        cases,
        |(a, b, m)| {
            let v = ModuleVector::basis(m.clone());
            let lhs = module.act(a, &module.act(b, &v)).sub(&module.act(b, &module.act(a, &v)));
            let (sum, c) = bracket_basis(a, b);
            lhs == module.act(&sum, &v).scale(&c)
        },
    ));
    out
}

fn aw_calculus(cfg: &RunConfig, smp: &mut Sampler) -> Outcome {
    let n = cfg.n;
    let mode = beta_mode(cfg);
    let mut out = Outcome::default();
    let deform_radius = if n <= 2 { 2 } else { 1 };
    let mut reps: Vec<(&str, _)> = samples::all(n);
    if let Some(extra) = &cfg.jet_rep {
        reps.push(("file", extra.rep.clone()));
    }
    for (name, rep) in reps {
        let aw = aw_construct(&rep, mode);
        let d = rep.dim();
        let inputs = json!({ "n": n, "rep": name, "dim": d, "degree_bound": rep.degree_bound() });
        let cases: Vec<_> = (0..25)
            .map(|_| {
                let v = (smp.point(n, 2), smp.int(0, d as i64 - 1) as usize);
                (smp.point(n, 2), smp.point(n, 2), v)
            })
            .collect();
        out.push(case_check(&format!("aw-calculus/{name}/module-axiom"), inputs.clone(), cases.clone(), |(a, b, (m, j))| {
            let v = ModuleVector::basis_fiber(m.clone(), *j);
            let lhs = aw.act(a, &aw.act(b, &v)).sub(&aw.act(b, &aw.act(a, &v)));
            let (sum, c) = bracket_basis(a, b);
            lhs == aw.act(&sum, &v).scale(&c)
        }));
        out.push(case_check(&format!("aw-calculus/{name}/leibniz"), inputs.clone(), cases, |(a, g, (m, j))| {
            let v = ModuleVector::basis_fiber(m.clone(), *j);
            let lhs = aw.act(a, &aw.a_act(g, &v));
            let rhs = aw.a_act(&(a + g), &v).scale(&g.mu_dot()).add(&aw.a_act(g, &aw.act(a, &v)));
            lhs == rhs
        }));

        let pts = box_points(n, deform_radius);
        let pairs: Vec<_> = pts.iter().flat_map(|s| pts.iter().map(move |m| (s.clone(), m.clone()))).collect();
        let bad = pairs.par_iter().find_first(|(s, m)| !verify_deform(&aw, s, m));
        let deform_inputs = json!({ "n": n, "rep": name, "radius": deform_radius });
        out.push(match bad {
            None => Check::new(format!("aw-calculus/{name}/deform"), deform_inputs, true, json!({ "cases": pairs.len() })),
            Some(p) => Check::new(
                format!("aw-calculus/{name}/deform"),
                deform_inputs,
                false,
                json!({ "failing_case": format!("{p:?}") }),
            ),
        });

        let fit = fit_from_module(&aw, 2);
        let (fit_ok, brackets_ok, witness) = match &fit {
            Ok(f) => {
                let beta_id = Matrix::scalar(d, &mode.beta());
                let ok = &recovered_rho(f) == rep.generators() && f.coefficient(&LatticePoint::zero(n)) == beta_id;
                (ok, verify_jet_brackets(f), json!({ "coefficients": f.coefficients().len(), "degree": f.total_degree() }))
            }
            Err(e) => (false, false, json!({ "error": e.to_string() })),
        };
        out.push(Check::new(format!("aw-calculus/{name}/fit-roundtrip"), inputs.clone(), fit_ok, witness));
        out.push(Check::new(format!("aw-calculus/{name}/jet-brackets"), inputs, brackets_ok, Value::Null));
    }

    let plant = aw_construct(&samples::graded_pair(n), mode);
    let res = fit_polynomial(n, 2, 2, 1, |s| extract_D(&plant, s));
    out.push(Check::new(
        "aw-calculus/fit-negative-control",
        json!({ "n": n, "rep": "graded-pair", "degree_cap": 1 }),
        matches!(res, Err(Error::FitMismatch { .. })),
        json!({ "result": res.err().map(|e| e.to_string()) }),
    ));

    let conc_radius = if n <= 2 { 3 } else { 1 };
    let aw = aw_construct(&samples::tensor(n), mode);
    let t = TensorModule::new(n, ModuleParams::new(Scalar::alpha(), mode));
    let pts = box_points(n, conc_radius);
    let pairs: Vec<_> = pts.iter().flat_map(|s| pts.iter().map(move |m| (s.clone(), m.clone()))).collect();
    out.push(case_check(
        "aw-calculus/tensor-concordance",
        json!({ "n": n, "radius": conc_radius }),
        pairs,
        |(s, m)| {
            let v = ModuleVector::basis(m.clone());
            aw.act(s, &v) == t.act(s, &v)
        },
    ));
    out
}

fn jet_commutant(cfg: &RunConfig) -> Outcome {
    let n = cfg.n;
    let p = if n <= 2 { 3 } else { 2 };
    let mut out = Outcome::default();
    let inputs = json!({ "n": n, "p": p });
    match commutant_check(n, p) {
        Ok(rep) => {
            let w = serde_json::to_value(&rep).expect("serializable");
            out.push(Check::new("jet-commutant/codimension", inputs.clone(), rep.codimension == 1, w));
            out.push(Check::new(
                "jet-commutant/degree-zero-hyperplane",
                inputs,
                rep.degree0_in_hyperplane && rep.degree0_rank + 1 == n,
                json!({ "rank": rep.degree0_rank, "spanning": rep.degree0_spanning }),
            ));
        }
        Err(e) => out.push(Check::new("jet-commutant/codimension", inputs, false, json!({ "error": e.to_string() }))),
    }
    out
}

fn cover_rank(cfg: &RunConfig, smp: &mut Sampler) -> Outcome {
    let n = cfg.n;
    let (k, k_eval) = (cfg.window, cfg.eval_window);
    let cap = k_eval + 4;
    let mode = beta_mode(cfg);
    let mut out = Outcome::default();
    let sampled: Vec<LatticePoint> = (0..3).map(|_| smp.point(n, 2)).collect();
    let lambdas = if cfg.weights.is_empty() { sampled } else { cfg.weights.clone() };

    let mut rank_row = |label: &str, module: &dyn WeightModule, expected: usize| {
        let mut ranks = Vec::new();
        let mut err = None;
        for l in &lambdas {
            match weight_space_rank(module, l, k, k_eval, cap) {
                Ok(r) => ranks.push(r.rank),
                Err(e) => {
                    err = Some(e.to_string());
                    break;
                }
            }
        }
        let inputs = json!({
            "n": n, "module": module.name(), "window": k, "eval_window": k_eval,
            "weights": lambdas.iter().map(lp_json).collect::<Vec<_>>(),
        });
        let pass = err.is_none() && ranks.iter().all(|&r| r == expected);
        if let Some(&r) = ranks.first() {
            if ranks.iter().all(|&x| x == r) {
                out.rank_table.insert(label.to_string(), r);
            }
        }
        let witness = match err {
            Some(e) => json!({ "error": e }),
            None => json!({ "ranks": ranks }),
        };
        out.checks.push(Check::new(format!("cover-rank/rank-{label}"), inputs, pass, witness));
    };
    let generic = TensorModule::new(n, ModuleParams::new(Scalar::alpha(), mode));
    rank_row("generic", &generic, 2);
    rank_row("alpha=0", &TensorModule::new(n, ModuleParams::new(Scalar::zero(), mode)), 1);
    rank_row("trivial", &TrivialModule { n }, 0);
    if let Some(a) = &cfg.alpha {
        let expected = if alpha_is_degenerate(cfg) { 1 } else { 2 };
        rank_row(&format!("alpha={a}"), &TensorModule::new(n, configured_params(cfg)), expected);
    }

    let surj = |module: &dyn WeightModule, name: &str, expect: &dyn Fn(&crate::cover::SurjectivityReport) -> bool| {
        let rep = pi_surjectivity_report(module, k);
        let w = json!({ "missed": rep.missed.iter().map(lp_json).collect::<Vec<_>>(), "image_dim": rep.image_dim });
        Check::new(name, json!({ "n": n, "module": module.name(), "window": k }), expect(&rep), w)
    };
    out.push(surj(&generic, "cover-rank/pi-surjective-generic", &|r| r.surjective()));
    let origin = LatticePoint::zero(n);
    out.push(surj(
        &TensorModule::new(n, ModuleParams::integral(1)),
        "cover-rank/pi-t10-misses-origin",
        &|r| r.missed == [origin.clone()],
    ));
    out.push(surj(&TrivialModule { n }, "cover-rank/pi-trivial-empty", &|r| r.image_dim == 0));

    let module = TensorModule::new(n, configured_params(cfg));
    let cases: Vec<_> = (0..30)
        .map(|_| (smp.point(n, 2), smp.point(n, 2), smp.point(n, 2), smp.point(n, 2)))
        .collect();
    let gen = |x: &LatticePoint, w: &LatticePoint| CoverElement::generator(x.clone(), BasisVector::line(w.clone()));
    let inputs = json!({ "n": n, "module": module.name(), "eval_window": k_eval });
    out.push(case_check("cover-rank/action-routes", inputs.clone(), cases.clone(), |(y, x, w, _)| {
        let (y, e) = (AlgebraElement::generator(y.clone()), gen(x, w));
        let acted = cover_act(&module, &y, &e);
        box_points(n, k_eval).iter().all(|f| {
            let tf = TorusFunction::monomial(f.clone());
            psi_eval(&module, &acted, &tf) == coinduced_act_eval(&module, &y, &e, &tf)
        })
    }));
    out.push(case_check("cover-rank/pi-equivariance", inputs.clone(), cases.clone(), |(y, x, w, _)| {
        let (y, e) = (AlgebraElement::generator(y.clone()), gen(x, w));
        pi(&module, &cover_act(&module, &y, &e)) == module.act_element(&y, &pi(&module, &e))
    }));
    out.push(case_check("cover-rank/a-compatibility", inputs.clone(), cases.clone(), |(y, x, w, g)| {
        let (y, e, g) = (AlgebraElement::generator(y.clone()), gen(x, w), TorusFunction::monomial(g.clone()));
        let lhs = cover_act(&module, &y, &cover_a_act(&g, &e));
        let rhs = cover_a_act(&derivation_action(&y, &g), &e).add(&cover_a_act(&g, &cover_act(&module, &y, &e)));
        equal_on_window(&module, &lhs, &rhs, k_eval)
    }));

    let expected = if alpha_is_degenerate(cfg) { 2 } else { 3 };
    let rel_cases: Vec<_> = (0..5)
        .map(|_| (smp.nonzero_point(n, 2), smp.point(n, 2), smp.point(n, 2), smp.nonzero_point(n, 2)))
        .collect();
    out.push(case_check(
        "cover-rank/differentiator-relation",
        json!({ "n": n, "module": module.name(), "order": expected, "eval_window": k_eval }),
        rel_cases,
        |(h, kk, s, w)| {
            let u = ModuleVector::basis(w.clone());
            let zero = CoverElement::zero();
            let top = differentiator_generator(&module, expected, h, kk, s, &u);
            let below = differentiator_generator(&module, expected - 1, h, kk, s, &u);
            equal_on_window(&module, &top, &zero, k_eval) && !equal_on_window(&module, &below, &zero, k_eval + 1)
        },
    ));
    out
}

fn suite_seed(seed: u64, suite: Suite) -> u64 {
    let idx = Suite::ALL.iter().position(|&s| s == suite).expect("registered") as u64;
    seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(idx + 1)
}

fn run_member(cfg: &RunConfig, suite: Suite) -> Outcome {
    let mut smp = Sampler::new(suite_seed(cfg.seed, suite));
    match suite {
        Suite::Jacobi => jacobi(cfg, &mut smp),
        Suite::Omega => omega(cfg, &mut smp),
        Suite::Annihilation => annihilation(cfg, &mut smp),
        Suite::TensorStructure => tensor_structure(cfg, &mut smp),
        Suite::AwCalculus => aw_calculus(cfg, &mut smp),
        Suite::JetCommutant => jet_commutant(cfg),
        Suite::CoverRank => cover_rank(cfg, &mut smp),
        Suite::All => unreachable!("expanded by members()"),
    }
}

/// Runs the configured suite. `timing` fills `elapsed_ms`.
pub fn run_suite(cfg: &RunConfig, timing: bool) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let outcomes: Vec<Outcome> = cfg.suite.members().into_par_iter().map(|s| run_member(cfg, s)).collect();

    let mut checks = Vec::new();
    let mut identities = Vec::new();
    let mut rank_table = BTreeMap::new();
    for o in outcomes {
        checks.extend(o.checks);
        identities.extend(o.identities);
        rank_table.extend(o.rank_table);
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let first_failure = checks.iter().find(|c| !c.passed()).map(|c| FailureSummary {
        name: c.name.clone(),
        inputs: c.inputs.clone(),
    });
    Ok(Report {
        suite: cfg.suite,
        config: cfg.clone(),
        status: if first_failure.is_none() { Status::Pass } else { Status::Fail },
        checks,
        first_failure,
        identities,
        rank_table,
        elapsed_ms: timing.then(|| start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_in_rank_one() {
        let cfg = RunConfig::default();
        let rep = run_suite(&cfg, false).unwrap();
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed()).map(|c| (&c.name, &c.witness)).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(rep.rank_table.get("generic"), Some(&2));
        assert_eq!(rep.rank_table.get("alpha=0"), Some(&1));
        assert!(rep.elapsed_ms.is_none());
    }

    #[test]
    fn member_checks_match_inside_all() {
        let alone = run_suite(&RunConfig { suite: Suite::Omega, ..RunConfig::default() }, false).unwrap();
        let all = run_suite(&RunConfig::default(), false).unwrap();
        let inside: Vec<_> = all.checks.iter().filter(|c| c.name.starts_with("omega/")).collect();
        assert_eq!(inside, alone.checks.iter().collect::<Vec<_>>());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad = [
            RunConfig { n: 0, ..RunConfig::default() },
            RunConfig { window: 1, ..RunConfig::default() },
            RunConfig { r: 1, ..RunConfig::default() },
            RunConfig { beta: Some(num_rational::BigRational::from_integer(2.into())), ..RunConfig::default() },
        ];
        for cfg in bad {
            assert!(run_suite(&cfg, false).is_err());
        }
    }
}
