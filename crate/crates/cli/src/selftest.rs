use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use clap::ValueEnum;
use num_traits::{One, Zero};

use symtrace_core::albert::classify_odd_totally_real;
use symtrace_core::decode::{decode, simulate_family};
use symtrace_core::exactmath::{hom_trace, interpolate, trace_poly};
use symtrace_core::finitegrp::{
    all_transvections, character_degrees, closure, conj_transvection, congruence_kernel, dual_action,
    elem_transvection, group_order, order_dichotomy, special_linear, verify_local_normal_structure,
    CLASS_CAP,
};
use symtrace_core::symrep::{sym_power, RepSpec};
use symtrace_core::{rat, Rational, RationalMatrix, RationalPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Replace `T_n = t T_{n-1} - T_{n-2}` by `t T_{n-1} + T_{n-2}`.
    BrokenTracePoly,
}

type TraceFn = fn(usize) -> RationalPoly;

fn broken_trace_poly(n: usize) -> RationalPoly {
    let t = RationalPoly::var();
    let (mut prev, mut cur) = (RationalPoly::one(), t.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&t * &cur) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

type Check = (&'static str, fn(TraceFn) -> Result<String, String>);

const CHECKS: &[Check] = &[
    ("exactmath: T_n(+-2) closed form", check_trace_endpoints),
    ("exactmath: interpolation inverts evaluation", check_interpolation),
    ("symrep: tr Sym^n g = T_n(tr g), det g = 1", check_sym_trace_det_one),
    ("symrep: tr Sym^n g = S_n(tr g, det g)", check_sym_trace_general),
    ("symrep: Sym^n is multiplicative", check_sym_homomorphism),
    ("decode: trace products distinct, sum <= 8", check_uniqueness),
    ("decode: headline {2}, w = 1", check_headline),
    ("decode: seeded round trips", check_round_trips),
    ("albert: odd dims give divisor degrees", check_albert),
    ("finitegrp: conjugated transvection", check_conj_transvection),
    ("finitegrp: transvection closures", check_closures),
    ("finitegrp: normal subgroups of SL_2(F_l)", check_normal),
    ("finitegrp: congruence kernel dichotomy", check_kernels),
    ("finitegrp: order dichotomy in GL_2(F_5)", check_orders),
    ("finitegrp: character degrees", check_degrees),
    ("finitegrp: kernel acts trivially on its dual", check_dual),
];

pub fn run(fault: Option<Fault>) -> ExitCode {
    let tp: TraceFn = match fault {
        Some(Fault::BrokenTracePoly) => broken_trace_poly,
        None => trace_poly::<Rational>,
    };
    let width = CHECKS.iter().map(|(name, _)| name.len()).max().unwrap_or(0);
    let start = Instant::now();
    let mut failures = 0;
    println!("{:<width$}  {:<6}  detail", "check", "status");
    for (name, check) in CHECKS {
        let (status, detail) = match check(tp) {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{name:<width$}  {status:<6}  {detail}");
    }
    println!("{} checks, {} failed", CHECKS.len(), failures);
    eprintln!("selftest took {:.1}s", start.elapsed().as_secs_f64());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mat(a: i64, b: i64, c: i64, d: i64) -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[&[a, b], &[c, d]]).expect("2x2")
}

/// `[[1, a], [0, 1]]·[[1, 0], [b, 1]]` for small `a, b`.
fn det_one_matrices() -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            out.push(mat(1, a, 0, 1).mul(&mat(1, 0, b, 1)).expect("2x2"));
        }
    }
    out
}

fn check_trace_endpoints(tp: TraceFn) -> Result<String, String> {
    for n in 0..=30usize {
        let p = tp(n);
        let plus = rat(n as i64 + 1);
        let minus = if n % 2 == 0 { plus.clone() } else { -plus.clone() };
        ensure(p.eval(&rat(2)) == plus, || format!("T_{n}(2) = {}", p.eval(&rat(2))))?;
        ensure(p.eval(&rat(-2)) == minus, || format!("T_{n}(-2) = {}", p.eval(&rat(-2))))?;
    }
    Ok("n <= 30".into())
}

fn check_interpolation(_: TraceFn) -> Result<String, String> {
    let p = RationalPoly::from_i64s(&[3, -1, 0, 4, 2]);
    let pts: Vec<(Rational, Rational)> = (-2..=2).map(|x| (rat(x), p.eval(&rat(x)))).collect();
    let q = interpolate(&pts).map_err(|e| e.to_string())?;
    ensure(q == p, || format!("got {q}"))?;
    Ok("degree 4 from 5 points".into())
}

fn check_sym_trace_det_one(tp: TraceFn) -> Result<String, String> {
    let gs = det_one_matrices();
    for g in &gs {
        let t = g.trace().map_err(|e| e.to_string())?;
        for n in 0..=8 {
            let s = sym_power(g, n).map_err(|e| e.to_string())?;
            let lhs = s.trace().map_err(|e| e.to_string())?;
            let rhs = tp(n).eval(&t);
            ensure(lhs == rhs, || format!("n = {n}, tr g = {t}: {lhs} != {rhs}"))?;
        }
    }
    Ok(format!("{} matrices, n <= 8", gs.len()))
}

fn check_sym_trace_general(_: TraceFn) -> Result<String, String> {
    let mut count = 0;
    for (a, b, c, d) in [(2, 1, 1, 3), (0, 1, -5, 2), (3, -2, 4, 1), (1, 0, 0, -1), (5, 7, 2, 3)] {
        let g = mat(a, b, c, d);
        let t = g.trace().map_err(|e| e.to_string())?;
        let det = g.det().map_err(|e| e.to_string())?;
        for n in 0..=8 {
            let lhs = sym_power(&g, n).and_then(|s| s.trace()).map_err(|e| e.to_string())?;
            let rhs = hom_trace(n, &t, &det);
            ensure(lhs == rhs, || format!("{g:?}, n = {n}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} matrices, n <= 8"))
}

fn check_sym_homomorphism(_: TraceFn) -> Result<String, String> {
    let g = mat(2, 1, 1, 3);
    let h = mat(0, 1, -5, 2);
    for n in 1..=6 {
        let gh = g.mul(&h).and_then(|x| sym_power(&x, n)).map_err(|e| e.to_string())?;
        let prod = sym_power(&g, n)
            .and_then(|a| a.mul(&sym_power(&h, n)?))
            .map_err(|e| e.to_string())?;
        ensure(gh == prod, || format!("n = {n}"))?;
    }
    Ok("n <= 6".into())
}

fn partitions(total: u32, max: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn check_uniqueness(tp: TraceFn) -> Result<String, String> {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for total in 1..=8 {
        for parts in partitions(total, total) {
            let prod = parts
                .iter()
                .fold(RationalPoly::one(), |acc, &n| &acc * &tp(n as usize));
            ensure(seen.insert(format!("{prod}")), || format!("collision at {parts:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} multisets"))
}

fn check_headline(_: TraceFn) -> Result<String, String> {
    let spec = RepSpec::new(vec![2], 1).map_err(|e| e.to_string())?;
    let samples = simulate_family(&spec, 20, 4, 0x5EED);
    let r = decode(&samples).map_err(|e| e.to_string())?;
    ensure(r.factors == [2] && r.det_weight == 1, || format!("decoded {:?} w {}", r.factors, r.det_weight))?;
    ensure(r.diagnostics.dim_product == 3, || format!("dim {}", r.diagnostics.dim_product))?;
    Ok("dim_product 3".into())
}

fn check_round_trips(_: TraceFn) -> Result<String, String> {
    let specs = [
        (vec![1], 0),
        (vec![3], 2),
        (vec![1, 1], 1),
        (vec![2, 5], 3),
        (vec![1, 2, 3], 5),
        (vec![6, 6], 0),
        (vec![4, 1, 1], 4),
    ];
    for (i, (factors, w)) in specs.iter().enumerate() {
        let spec = RepSpec::new(factors.clone(), *w).map_err(|e| e.to_string())?;
        let samples = simulate_family(&spec, spec.degree_sum() as usize + 2, 3, i as u64);
        let r = decode(&samples).map_err(|e| format!("{spec}: {e}"))?;
        ensure(r.to_spec().as_ref() == Some(&spec), || format!("{spec} decoded as {:?}", r.factors))?;
    }
    Ok(format!("{} specs", specs.len()))
}

fn check_albert(_: TraceFn) -> Result<String, String> {
    for d in (1..=99u64).step_by(2) {
        let c = classify_odd_totally_real(d).map_err(|e| e.to_string())?;
        let divisors: Vec<u64> = (1..=d).filter(|k| d % k == 0).collect();
        ensure(c.degrees() == divisors, || format!("d = {d}: {:?}", c.degrees()))?;
    }
    Ok("odd d <= 99".into())
}

fn check_conj_transvection(_: TraceFn) -> Result<String, String> {
    let c = conj_transvection(2, 1, 2, 2, 1, 5).map_err(|e| e.to_string())?;
    let want = elem_transvection(2, 1, 2, 2, 5).map_err(|e| e.to_string())?;
    ensure(c.result == want && c.scale == 2, || format!("{c:?}"))?;
    Ok("A_1(2) B_12(1) A_1(2)^-1 = B_12(2) mod 5".into())
}

fn check_closures(_: TraceFn) -> Result<String, String> {
    let mut sizes = Vec::new();
    for (n, l) in [(2usize, 5u64), (2, 7), (3, 2)] {
        let g = closure(&all_transvections(n, l), CLASS_CAP).map_err(|e| e.to_string())?;
        let want = group_order(n as u32, l, 1);
        ensure(want == g.order().into(), || format!("SL_{n}(F_{l}): {} != {want}", g.order()))?;
        sizes.push(g.order().to_string());
    }
    Ok(sizes.join(", "))
}

fn check_normal(_: TraceFn) -> Result<String, String> {
    for l in [5, 7] {
        let r = verify_local_normal_structure(l).map_err(|e| e.to_string())?;
        ensure(r.only_center_and_trivial, || format!("l = {l}: {:?}", r.normal_orders))?;
    }
    Ok("l = 5, 7: {1}, centre, G".into())
}

fn check_kernels(_: TraceFn) -> Result<String, String> {
    for (l, m) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2)] {
        let k = congruence_kernel(2, l, m, CLASS_CAP).map_err(|e| e.to_string())?;
        let order = l.pow(3 * (m - 1)) as usize;
        ensure(k.kernel.order() == order, || format!("l = {l}, m = {m}: order {}", k.kernel.order()))?;
        ensure(k.abelian == (m <= 2), || format!("l = {l}, m = {m}: abelian = {}", k.abelian))?;
    }
    Ok("abelian iff m <= 2".into())
}

fn check_orders(_: TraceFn) -> Result<String, String> {
    let r = order_dichotomy(2, 5, CLASS_CAP).map_err(|e| e.to_string())?;
    ensure(r.l_divides_iff_non_semisimple && r.l_squared_divides_none, || format!("{r:?}"))?;
    Ok(format!("{} elements, {} non-semisimple", r.elements, r.non_semisimple))
}

fn check_degrees(_: TraceFn) -> Result<String, String> {
    let g = special_linear(2, 3, 1, CLASS_CAP).map_err(|e| e.to_string())?;
    let d = character_degrees(&g).map_err(|e| e.to_string())?;
    ensure(d.degrees == [1, 1, 1, 2, 2, 2, 3], || format!("{:?}", d.degrees))?;
    let k = congruence_kernel(2, 5, 2, CLASS_CAP).map_err(|e| e.to_string())?;
    let kd = character_degrees(&k.kernel).map_err(|e| e.to_string())?;
    ensure(kd.degrees.iter().all(|x| x.is_one()), || "level-2 kernel has a non-linear character".into())?;
    Ok("SL_2(F_3) and the level-2 kernel mod 25".into())
}

fn check_dual(_: TraceFn) -> Result<String, String> {
    let g = special_linear(2, 3, 2, CLASS_CAP).map_err(|e| e.to_string())?;
    let k = congruence_kernel(2, 3, 2, CLASS_CAP).map_err(|e| e.to_string())?;
    let r = dual_action(&g, &k.kernel).map_err(|e| e.to_string())?;
    ensure(r.s_acts_trivially, || "a character moved".into())?;
    let total: usize = r.orbit_sizes().iter().sum();
    ensure(total == 27 && !r.orbits.is_empty(), || format!("{total} characters"))?;
    let zero = r.orbits[0][0].values.iter().all(|v| v.is_zero());
    ensure(zero, || "first orbit is not the trivial character".into())?;
    Ok("SL_2(Z/9), 27 characters".into())
}
