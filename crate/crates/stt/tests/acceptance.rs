//! Acceptance suite: one criterion per test, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use stt::eval::{self, Value};
use stt::oracle::{self, Universe};
use stt::syntax::ast::TypeExpr;
use stt::syntax::{parse_decls, parse_expr, parse_type};
use stt::types::{Config, Engine, TypeId};
use stt::typing::{self, TypeEnv};

fn criterion(n: usize, name: &str, body: impl FnOnce()) {
    let result = catch_unwind(AssertUnwindSafe(body));
    match &result {
        Ok(()) => println!("criterion {n} ({name}): PASS"),
        Err(_) => println!("criterion {n} ({name}): FAIL"),
    }
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

fn ty(eng: &mut Engine, src: &str) -> TypeId {
    let t = parse_type(src, &Default::default()).unwrap();
    eng.norm(&t)
}

fn sub(eng: &mut Engine, l: &str, r: &str) -> bool {
    let (a, b) = (ty(eng, l), ty(eng, r));
    eng.is_subtype(a, b)
}

fn equiv(eng: &mut Engine, l: &str, r: &str) -> bool {
    let (a, b) = (ty(eng, l), ty(eng, r));
    eng.equiv(a, b)
}

// ---------------------------------------------------------------- 1 ----

#[test]
fn c1_golden_subtyping_suite() {
    criterion(1, "golden subtyping suite", || {
        let eng = &mut Engine::default();
        // (positive cases, then negative cases)
        let yes: &[(&str, &str)] = &[
            // an intersection of arrows is below the arrow of the unions,
            // and the inclusion is strict
            ("(`a -> [1..1]) & (`b -> [2..2])", "`a | `b -> [1..2]"),
            // covariant products, contravariant domains
            ("([0..4], `a)", "(Int, `a | `b)"),
            ("Int -> [0..4]", "[5..9] -> Int"),
            // same-domain and same-codomain intersections collapse
            ("(`a -> [0..4]) & (`a -> [3..9])", "`a -> [3..4]"),
            ("`a -> [3..4]", "(`a -> [0..4]) & (`a -> [3..9])"),
            ("(`a -> Int) & (`b -> Int)", "`a | `b -> Int"),
            ("`a | `b -> Int", "(`a -> Int) & (`b -> Int)"),
            // empty-domain arrow tops the function kind
            ("Int -> Int", "Empty -> Any"),
            ("(Any, Any) -> `a", "Empty -> Any"),
            // infinite product recursion is uninhabited
            ("rec X = (Int, X)", "Empty"),
            // difference distributes over product components
            (
                "([0..9], [0..9]) \\ ([0..4], [0..4])",
                "([5..9], [0..9]) | ([0..9], [5..9])",
            ),
            (
                "([5..9], [0..9]) | ([0..9], [5..9])",
                "([0..9], [0..9]) \\ ([0..4], [0..4])",
            ),
            // record width and depth
            ("{x: [0..4], y: Int}", "{x: Int, ..}"),
            ("{x: Int}", "{x: Int, y ?: Any, ..}"),
            ("{x: Int}", "{x ?: Int}"),
            // negation flips containment
            ("not (Int | Bool)", "not Bool"),
        ];
        let no: &[(&str, &str)] = &[
            // the converse of the union-of-arrows inclusion fails
            ("`a | `b -> [1..2]", "(`a -> [1..1]) & (`b -> [2..2])"),
            ("(Int, `a | `b)", "([0..4], `a)"),
            ("[5..9] -> Int", "Int -> [0..4]"),
            ("Empty -> Any", "Int -> Int"),
            ("{x: Int, ..}", "{x: Int}"),
            ("{x ?: Int}", "{x: Int}"),
            ("rec X = `nil | (Int, X)", "Empty"),
            ("Int", "Bool"),
            ("not Bool", "not (Int | Bool)"),
        ];
        for (l, r) in yes {
            assert!(sub(eng, l, r), "expected {l} <: {r}");
        }
        for (l, r) in no {
            assert!(!sub(eng, l, r), "expected {l} not <: {r}");
        }
        assert!(yes.len() + no.len() >= 25);

        // the arrow-containment iff, including the empty-domain escape
        let pool = ["Empty", "[0..4]", "[5..9]", "[0..9]", "Int", "`a"];
        for s1 in pool {
            for s2 in pool {
                for t1 in pool {
                    for t2 in pool {
                        let claim = sub(
                            eng,
                            &format!("({s1}) -> ({s2})"),
                            &format!("({t1}) -> ({t2})"),
                        );
                        let closed = sub(eng, t1, "Empty")
                            || (sub(eng, t1, s1) && sub(eng, s2, t2));
                        assert_eq!(claim, closed, "arrow iff at {s1}->{s2} <: {t1}->{t2}");
                    }
                }
            }
        }

        // domain of a union of arrows is the intersection of domains
        let f = ty(eng, "([1..4] -> `a) | ([2..6] -> `b)");
        let d = eng.dom(f);
        let expect = ty(eng, "[2..4]");
        assert!(eng.equiv(d, expect));

        // record concatenation and deletion identities
        let (a, b) = (ty(eng, "{a: Int, b: Int}"), ty(eng, "{a ?: Bool}"));
        let cat = eng.rec_concat(a, b);
        let want = ty(eng, "{a: Int | Bool, b: Int}");
        assert!(eng.equiv(cat, want));
        let (a2, b2) = (ty(eng, "{a: Int}"), ty(eng, "{..}"));
        let cat2 = eng.rec_concat(a2, b2);
        let want2 = ty(eng, "{a: Any, ..}");
        assert!(eng.equiv(cat2, want2));
        let open_rec = ty(eng, "{a: Int, ..}");
        let del = eng.rec_delete(open_rec, "a");
        let want3 = ty(eng, "{a ?: Empty, ..}");
        assert!(eng.equiv(del, want3));
    });
}

// ---------------------------------------------------------------- 2 ----

/// All intervals with bounds in −2..2 plus unbounded ends, and Empty.
fn interval_pool() -> Vec<TypeExpr> {
    let mut pool = vec![TypeExpr::Empty];
    let bounds: Vec<Option<BigInt>> = std::iter::once(None)
        .chain((-2..=2).map(|n| Some(BigInt::from(n))))
        .collect();
    for lo in &bounds {
        for hi in &bounds {
            if let (Some(a), Some(b)) = (lo, hi) {
                if a > b {
                    continue;
                }
            }
            pool.push(TypeExpr::Interval(lo.clone(), hi.clone()));
        }
    }
    pool
}

#[test]
fn c2_single_negation_closed_forms() {
    criterion(2, "product/arrow single-negation closed forms", || {
        let eng = &mut Engine::default();
        let pool: Vec<TypeId> = interval_pool().iter().map(|t| eng.norm(t)).collect();
        let n = pool.len();
        // Precompute component relations.
        let mut le = vec![vec![false; n]; n];
        let mut empty = vec![false; n];
        for (i, &a) in pool.iter().enumerate() {
            empty[i] = eng.is_empty(a);
            for (j, &b) in pool.iter().enumerate() {
                le[i][j] = eng.is_subtype(a, b);
            }
        }
        for (i1, &s1) in pool.iter().enumerate() {
            for (i2, &s2) in pool.iter().enumerate() {
                for (j1, &t1) in pool.iter().enumerate() {
                    for (j2, &t2) in pool.iter().enumerate() {
                        let prod_claim = {
                            let l = eng.mk(stt::types::Descr::from_prod(
                                stt::types::bdd::Bdd::atom(stt::types::ProdAtom(s1, s2)),
                            ));
                            let r = eng.mk(stt::types::Descr::from_prod(
                                stt::types::bdd::Bdd::atom(stt::types::ProdAtom(t1, t2)),
                            ));
                            eng.is_subtype(l, r)
                        };
                        let prod_closed =
                            empty[i1] || empty[i2] || (le[i1][j1] && le[i2][j2]);
                        assert_eq!(prod_claim, prod_closed, "prod case {i1},{i2},{j1},{j2}");

                        let arrow_claim = {
                            let l = eng.mk(stt::types::Descr::from_arrw(
                                stt::types::bdd::Bdd::atom(stt::types::ArrowAtom(s1, s2)),
                            ));
                            let r = eng.mk(stt::types::Descr::from_arrw(
                                stt::types::bdd::Bdd::atom(stt::types::ArrowAtom(t1, t2)),
                            ));
                            eng.is_subtype(l, r)
                        };
                        let arrow_closed = empty[j1] || (le[j1][i1] && le[i2][j2]);
                        assert_eq!(
                            arrow_claim, arrow_closed,
                            "arrow case {i1},{i2},{j1},{j2}"
                        );
                    }
                }
            }
        }
    });
}

// ---------------------------------------------------------------- 3 ----

#[test]
fn c3_oracle_soundness_sweep() {
    criterion(3, "oracle soundness sweep (10^4 pairs)", || {
        let start = std::time::Instant::now();
        let u = Universe::default();
        let values = oracle::enumerate(&u);
        let d = HashMap::new();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260826);
        let mut eng = Engine::default();
        for _ in 0..10_000 {
            let s = oracle::random_type(&mut rng, &u, 3);
            let t = oracle::random_type(&mut rng, &u, 3);
            let (sid, tid) = (eng.norm(&s), eng.norm(&t));
            if eng.is_subtype(sid, tid) {
                for v in &values {
                    assert!(
                        !oracle::member(v, &s, &d) || oracle::member(v, &t, &d),
                        "claimed {s:?} <: {t:?}, refuted by {v}"
                    );
                }
            } else {
                let diff = eng.diff(sid, tid);
                let w = eng.sample(diff).expect("negative verdict without witness");
                if let Some(v) = oracle::witness_value(&w) {
                    assert!(oracle::member(&v, &s, &d), "witness {v} outside {s:?}");
                    assert!(!oracle::member(&v, &t, &d), "witness {v} inside {t:?}");
                }
            }
        }
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs() < 10, "sweep took {elapsed:?}");
    });
}

// ---------------------------------------------------------------- 4 ----

#[test]
fn c4_application_four_cases() {
    criterion(4, "application typing four-case table", || {
        let eng = &mut Engine::default();
        // Exhaustive containment configurations for two-arrow
        // intersections over a pool of small domains.
        let doms = ["[0..4]", "[5..9]", "[0..9]", "`a", "`a | `b", "[0..4] | `a"];
        let (t1s, t2s) = ("[1..2]", "[2..3]");
        for s1 in doms {
            for s2 in doms {
                let f = ty(eng, &format!("(({s1}) -> {t1s}) & (({s2}) -> {t2s})"));
                let args = [
                    format!("({s1}) & ({s2})"),
                    format!("({s1}) \\ ({s2})"),
                    format!("({s2}) \\ ({s1})"),
                    format!("({s1}) | ({s2})"),
                ];
                for arg in &args {
                    let a = ty(eng, arg);
                    if eng.is_empty(a) {
                        continue;
                    }
                    let got = eng.apply(f, a).unwrap();
                    let s1d = ty(eng, s1);
                    let s2d = ty(eng, s2);
                    let in1 = eng.is_subtype(a, s1d);
                    let in2 = eng.is_subtype(a, s2d);
                    let expect = match (in1, in2) {
                        (true, true) => "[2..2]",
                        (true, false) => "[1..2]",
                        (false, true) => "[2..3]",
                        (false, false) => "[1..3]",
                    };
                    let e = ty(eng, expect);
                    assert!(
                        eng.equiv(got, e),
                        "apply {s1}/{s2} to {arg}: got {}, want {expect}",
                        eng.render(got)
                    );
                }
            }
        }

        // The concrete even/odd-style quadruple, with intervals playing
        // the parity classes.
        let f = ty(
            eng,
            "(([0..4], [0..9]) -> ([0..0], [0..9])) & (([0..9], [5..9]) -> ([0..9], [1..1]))",
        );
        let cases = [
            ("([0..4], [5..9])", "([0..0], [0..9]) & ([0..9], [1..1])"),
            ("([0..4], [0..4])", "([0..0], [0..9])"),
            ("([5..9], [5..9])", "([0..9], [1..1])"),
            (
                "(([0..9], [0..9])) \\ (([5..9], [0..4]))",
                "([0..0], [0..9]) | ([0..9], [1..1])",
            ),
        ];
        for (arg, want) in cases {
            let a = ty(eng, arg);
            let got = eng.apply(f, a).unwrap();
            let w = ty(eng, want);
            assert!(
                eng.equiv(got, w),
                "applied to {arg}: got {}",
                eng.render(got)
            );
        }
    });
}

// ---------------------------------------------------------------- 5 ----

#[test]
fn c5_formation_diagnostics() {
    criterion(5, "formation diagnostics with witnesses", || {
        let eng = &mut Engine::default();
        let env = TypeEnv::new();
        // Two branches overlapping on ([0..4], [5..9]) with no most
        // specific handler.
        let bad = parse_expr(
            "multi { fun (x: [0..4], y: [0..9]) : [0..1] { 0 };
                     fun (x: [0..9], y: [5..9]) : [0..1] { 1 } }",
            &Default::default(),
        )
        .unwrap();
        match typing::type_of(eng, &env, &bad) {
            Err(typing::TypeError::Ambiguity { witness, .. }) => {
                // The witness must inhabit both branch domains.
                let w = witness;
                let d = HashMap::new();
                let v = parse_value(&w);
                let d1 = parse_type("([0..4], [0..9])", &Default::default()).unwrap();
                let d2 = parse_type("([0..9], [5..9])", &Default::default()).unwrap();
                assert!(oracle::member(&v, &d1, &d), "witness {w} outside branch 1");
                assert!(oracle::member(&v, &d2, &d), "witness {w} outside branch 2");
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }

        // A third branch handling exactly the overlap resolves it.
        let good = parse_expr(
            "multi { fun (x: [0..4], y: [0..9]) : [0..1] { 0 };
                     fun (x: [0..9], y: [5..9]) : [0..1] { 1 };
                     fun (x: [0..4], y: [5..9]) : [0..1] { 0 } }",
            &Default::default(),
        )
        .unwrap();
        let t = typing::type_of(eng, &env, &good).unwrap();
        let want = ty(
            eng,
            "(([0..4], [0..9]) -> [0..1]) & (([0..9], [5..9]) -> [0..1]) \
             & (([0..4], [5..9]) -> [0..1])",
        );
        assert!(eng.equiv(t, want));

        // Domain refinement without result refinement is rejected.
        let spec = parse_expr(
            "multi { fun (x: [0..9]) : `a { `a }; fun (x: Int) : `b { `b } }",
            &Default::default(),
        )
        .unwrap();
        assert!(matches!(
            typing::type_of(eng, &env, &spec),
            Err(typing::TypeError::Specialization { .. })
        ));
    });
}

/// Parse a rendered witness back into a value ("(3, 7)" etc.) — only the
/// shapes the formation witnesses can produce.
fn parse_value(s: &str) -> Value {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        // split at the top-level comma
        let mut depth = 0;
        for (i, c) in inner.char_indices() {
            match c {
                '(' | '{' => depth += 1,
                ')' | '}' => depth -= 1,
                ',' if depth == 0 => {
                    let (a, b) = (inner[..i].trim(), inner[i + 1..].trim());
                    return Value::Pair(std::rc::Rc::new((parse_value(a), parse_value(b))));
                }
                _ => {}
            }
        }
        panic!("unparsable pair witness: {s}");
    }
    if let Some(tag) = s.strip_prefix('`') {
        return Value::Tag(tag.to_string());
    }
    Value::Int(s.parse::<i64>().unwrap().into())
}

// ---------------------------------------------------------------- 6 ----

fn corpus() -> Vec<String> {
    let mut progs = Vec::new();
    // Ground data pipelines, parametrized over literals.
    for n in 0..10 {
        progs.push(format!("let v = ({n}, `a); let w = v[0]"));
        progs.push(format!(
            "let r = {{x => {n}, y => `b}}; let s = (r + {{x => `c}})<x>"
        ));
        progs.push(format!("let r = {{x => {n}}}; let s = (r \\ x + {{x => 1}})<x>"));
        progs.push(format!(
            "let f = fun (x: [0..9]) {{ (x, x) }}; let v = f({n})"
        ));
        progs.push(format!(
            "multi class {{
                 fun (x: [0..4]) : `low {{ `low }};
                 fun (x: [5..9]) : `high {{ `high }}
             }};
             let v = class({n})"
        ));
    }
    // Three-branch multis with dispatch on tags and pairs.
    progs.push(
        "multi kind {
             fun (x: Int) : `int { `int };
             fun (x: `a | `b) : `tag { `tag };
             fun (x: (Any, Any)) : `pair { `pair }
         };
         let a = kind(3);
         let b = kind(`a);
         let c = kind((1, 2))"
            .to_string(),
    );
    // Structural recursion over lists.
    progs.push(
        "type List = `nil | (Int, List);
         multi copy {
             fun (x: `nil) : `nil { `nil };
             fun (x: (Int, List)) : List { (x[0], copy(x[1])) }
         };
         let v = copy((1, (2, (3, `nil))))"
            .to_string(),
    );
    // Record pipeline: build, override, delete, select.
    progs.push(
        "let base = {name => `anna, age => 3};
         let grown = base + {age => 4};
         let anon = grown \\ name;
         let v = anon<age>"
            .to_string(),
    );
    // Curried groups.
    progs.push(
        "let pair = fun (x: Int ;; y: Bool) { (x, y) };
         let p = pair(1)(`true)"
            .to_string(),
    );
    assert!(progs.len() >= 50);
    progs
}

#[test]
fn c6_dynamic_soundness() {
    criterion(6, "dynamic soundness of evaluation", || {
        let d = HashMap::new();
        for src in corpus() {
            let decls = parse_decls(&src).unwrap_or_else(|e| panic!("parse {src}: {e}"));
            let mut eng = Engine::default();
            let types = typing::check_program(&mut eng, &decls)
                .unwrap_or_else(|e| panic!("check {src}: {e:?}"));
            let values = eval::run_program(&mut eng, &decls)
                .unwrap_or_else(|e| panic!("run {src}: {e}"));
            for ((n1, tid), (n2, v)) in types.iter().zip(values.iter()) {
                assert_eq!(n1, n2);
                if matches!(v, Value::Closure(_)) {
                    continue; // graphs of functions are not enumerable
                }
                let texpr = eng.to_expr(*tid);
                assert!(
                    oracle::member(v, &texpr, &d),
                    "in {src}: value {v} of `{n1}` escapes its type {}",
                    eng.render(*tid)
                );
            }
        }

        // Dispatch agrees with a brute-force most-specific choice on
        // random in-domain points.
        let branches = [
            "([0..9], [0..9])",
            "([0..4], [0..9])",
            "([0..9], [5..9])",
            "([0..4], [5..9])",
        ];
        let multi_src = "multi { fun (x: [0..9], y: [0..9]) : [0..3] { 0 };
                                 fun (x: [0..4], y: [0..9]) : [0..3] { 1 };
                                 fun (x: [0..9], y: [5..9]) : [0..3] { 2 };
                                 fun (x: [0..4], y: [5..9]) : [0..3] { 3 } }";
        let mexpr = parse_expr(multi_src, &Default::default()).unwrap();
        let mut eng = Engine::default();
        typing::type_of(&mut eng, &TypeEnv::new(), &mexpr).expect("multi is well formed");
        let dexprs: Vec<TypeExpr> = branches
            .iter()
            .map(|b| parse_type(b, &Default::default()).unwrap())
            .collect();
        // Precompute the domain order for the brute-force pick.
        let dids: Vec<TypeId> = dexprs.iter().map(|t| eng.norm(t)).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let fval = eval::eval(&mut eng, &eval::Env::new(), &mexpr).unwrap();
        for _ in 0..10_000 {
            let (x, y) = (rng.gen_range(0..10i64), rng.gen_range(0..10i64));
            let arg = Value::Pair(std::rc::Rc::new((
                Value::Int(x.into()),
                Value::Int(y.into()),
            )));
            // Brute force: among branches whose domain contains the
            // argument, pick the least domain.
            let accept: Vec<usize> = (0..branches.len())
                .filter(|&i| oracle::member(&arg, &dexprs[i], &HashMap::new()))
                .collect();
            let least = *accept
                .iter()
                .find(|&&i| accept.iter().all(|&j| eng.is_subtype(dids[i], dids[j])))
                .unwrap();
            let call = stt::syntax::ast::Expr::App(
                Box::new(stt::syntax::ast::Expr::Var("f".into())),
                vec![
                    stt::syntax::ast::Expr::IntLit(x.into()),
                    stt::syntax::ast::Expr::IntLit(y.into()),
                ],
            );
            let mut env = eval::Env::new();
            env.insert("f".into(), fval.clone());
            let out = eval::eval(&mut eng, &env, &call).unwrap();
            assert_eq!(
                out.to_string(),
                least.to_string(),
                "dispatch at ({x}, {y})"
            );
        }
    });
}

// ---------------------------------------------------------------- 7 ----

#[test]
fn c7_configuration_invariance() {
    criterion(7, "configuration invariance", || {
        let configs = [
            Config::default(),
            Config {
                memo: false,
                ..Config::default()
            },
            Config {
                strict_subset_opt: false,
                ..Config::default()
            },
            Config {
                early_cutoff: true,
                ..Config::default()
            },
        ];
        let mut transcripts = Vec::new();
        for cfg in configs {
            let mut eng = Engine::new(cfg);
            let mut out = String::new();
            let pairs = [
                ("(`a -> [1..1]) & (`b -> [2..2])", "`a | `b -> [1..2]"),
                ("`a | `b -> [1..2]", "(`a -> [1..1]) & (`b -> [2..2])"),
                ("rec X = (Int, X)", "Empty"),
                ("rec X = `nil | (Int, X)", "rec X = `nil | (Any, X)"),
                ("{x: Int} & {y ?: Empty, ..}", "{x: Int}"),
                ("Int -> Int", "Empty -> Any"),
                ("([0..9], [0..9]) \\ ([0..4], [0..4])", "([0..9], [0..9])"),
                ("not (Int | Bool)", "not Bool"),
                ("(Int -> Int) \\ ([0..4] -> Int)", "Empty"),
            ];
            for (l, r) in pairs {
                let (a, b) = (ty(&mut eng, l), ty(&mut eng, r));
                out.push_str(&format!("{l} <: {r} = {}\n", eng.is_subtype(a, b)));
            }
            let f = ty(&mut eng, "(([0..4]) -> [1..2]) & (([0..9]) -> [2..3])");
            let a = ty(&mut eng, "[0..9]");
            let r = eng.apply(f, a).unwrap();
            out.push_str(&format!("apply = {}\n", eng.render(r)));
            transcripts.push(out);
        }
        for t in &transcripts[1..] {
            assert_eq!(t, &transcripts[0], "verdicts differ across configurations");
        }
    });
}

// ---------------------------------------------------------------- 8 ----

#[test]
fn c8_performance_sanity() {
    criterion(8, "performance sanity on 50-node recursive types", || {
        // Two structurally distinct 50-node cyclic list/tree families.
        let mut left = String::new();
        let mut right = String::new();
        for i in 0..50 {
            let next = (i + 1) % 50;
            left.push_str(&format!("type L{i} = `nil | (Int, L{next}) | (L{next}, L{next});\n"));
            right.push_str(&format!(
                "type R{i} = `nil | ([0..*], R{next}) | (R{next}, R{next});\n"
            ));
        }
        let decls = parse_decls(&format!("{left}{right}")).unwrap();
        let tydecls: Vec<(String, TypeExpr)> = decls
            .iter()
            .filter_map(|d| match d {
                stt::syntax::ast::Decl::Type(n, t) => Some((n.clone(), t.clone())),
                _ => None,
            })
            .collect();

        let mut eng = Engine::default();
        eng.load_decls(&tydecls);
        let (l, r) = (eng.decl("L0").unwrap(), eng.decl("R0").unwrap());
        let start = std::time::Instant::now();
        let a = eng.is_subtype(r, l); // [0..*] lists are Int lists
        let b = eng.is_subtype(l, r); // but not conversely
        let elapsed = start.elapsed();
        assert!(a && !b);
        assert!(
            elapsed.as_millis() < 100,
            "memoized subtyping took {elapsed:?}"
        );

        // And it still terminates with memoization off.
        let mut eng2 = Engine::new(Config {
            memo: false,
            ..Config::default()
        });
        eng2.load_decls(&tydecls);
        let (l2, r2) = (eng2.decl("L0").unwrap(), eng2.decl("R0").unwrap());
        assert!(eng2.is_subtype(r2, l2));
        assert!(!eng2.is_subtype(l2, r2));
    });
}
