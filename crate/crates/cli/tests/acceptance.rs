//! Acceptance suite: one PASS/FAIL line per criterion, with pinned time limits.
//!
//! Run with `cargo test -p ftri-cli --test acceptance`.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ftri_core::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};

type Check = Result<(), String>;
type Lattices = Vec<(RootSystemSpec, NCLattice)>;
type Criterion<'a> = (u32, &'static str, Duration, Box<dyn FnOnce(&mut Lattices) -> Check + 'a>);

fn spec(s: &str) -> RootSystemSpec {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn y_power(n: usize) -> UniPoly {
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    UniPoly::new(c)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `p(-1-x)`, times `(-1)^n`.
fn signed_reflection(p: &UniPoly, n: usize) -> UniPoly {
    let shift = UniPoly::linear(-BigInt::one(), -BigInt::one());
    let mut out = UniPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        out = &out + &shift.pow(k).scale(c);
    }
    if n % 2 == 1 {
        out = out.scale(&-BigInt::one());
    }
    out
}

fn criterion_1() -> Check {
    let a3 = spec("A3");
    let f = f_triangle(&a3).map_err(|e| e.to_string())?;
    let expected = vec![ints(&[1, 3, 3, 1]), ints(&[6, 8, 3]), ints(&[10, 5]), ints(&[5])];
    ensure(f.rows() == expected, || format!("A3 triangle {:?}", f.rows()))?;
    let fv = f_vector(&a3).map_err(|e| e.to_string())?;
    ensure(fv.f == ints(&[1, 9, 21, 14]), || format!("A3 f-vector {:?}", fv.f))?;
    ensure(f.diagonal() == fv, || "diagonal of A3 triangle differs from f-vector".into())
}

fn criterion_2() -> Check {
    for n in 1..=8 {
        let a = RootSystemSpec::irreducible(CartanType::a(n));
        let b = RootSystemSpec::irreducible(CartanType::b(n));
        let memo = TriangleMemo::new();
        let fa = memo.f_triangle(&a).map_err(|e| e.to_string())?;
        let fb = memo.f_triangle(&b).map_err(|e| e.to_string())?;
        ensure(fa == closed_form_a(n), || format!("A{n} triangle differs from closed form"))?;
        ensure(fb == closed_form_b(n), || format!("B{n} triangle differs from closed form"))?;
        ensure(fa.diagonal() == closed_form_f_vector_a(n), || format!("A{n} f-vector"))?;
        ensure(fb.diagonal() == closed_form_f_vector_b(n), || format!("B{n} f-vector"))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let mut types = CartanType::all_up_to_rank(8);
    for s in ["E6", "E7", "E8", "F4", "G2"] {
        let t = spec(s).as_irreducible().unwrap();
        if !types.contains(&t) {
            types.push(t);
        }
    }
    for t in types {
        let s = RootSystemSpec::irreducible(t);
        let n = s.rank();
        let f = f_triangle(&s).map_err(|e| e.to_string())?;
        let p = f.poly();
        ensure(p.reflect(n).map_err(|e| e.to_string())? == *p, || format!("{s}: not reflection-invariant"))?;
        let one_plus_y = UniPoly::linear(BigInt::one(), BigInt::one());
        ensure(p.eval_x(&BigInt::zero()) == one_plus_y.pow(n), || format!("{s}: F(0,y)"))?;
        ensure(p.eval_x(&-BigInt::one()) == y_power(n), || format!("{s}: F(-1,y)"))?;
        let at_zero = p.eval_y(&BigInt::zero());
        let at_minus_one = p.eval_y(&-BigInt::one());
        ensure(at_zero == signed_reflection(&at_minus_one, n), || format!("{s}: F(x,0) from F(x,-1)"))?;
        ensure(at_minus_one == signed_reflection(&at_zero, n), || format!("{s}: F(x,-1) from F(x,0)"))?;
    }
    Ok(())
}

fn criterion_4_types() -> Vec<RootSystemSpec> {
    let mut types = CartanType::all_up_to_rank(6);
    for s in ["F4", "G2"] {
        let t = spec(s).as_irreducible().unwrap();
        if !types.contains(&t) {
            types.push(t);
        }
    }
    types.into_iter().map(RootSystemSpec::irreducible).collect()
}

fn check_lattice(s: &RootSystemSpec, l: &NCLattice) -> Check {
    let formulas = spec_invariant_formulas(s).map_err(|e| e.to_string())?;
    ensure(BigInt::from(l.len()) == formulas.cardinality, || {
        format!("{s}: |L| = {} but formula gives {}", l.len(), formulas.cardinality)
    })?;
    ensure(BigInt::from(l.mobius_number()) == formulas.mobius_number, || {
        format!("{s}: mu = {} but formula gives {}", l.mobius_number(), formulas.mobius_number)
    })?;
    if s.rank() <= 4 {
        for m in 1..=5 {
            let z = formulas.zeta_at(m).map_err(|e| e.to_string())?;
            ensure(l.zeta_bruteforce(m) == z, || format!("{s}: zeta({m})"))?;
        }
    }
    Ok(())
}

fn build(s: &RootSystemSpec) -> Result<NCLattice, String> {
    NCLattice::for_spec(s, None, &Budget::unlimited()).map_err(|e| format!("{s}: {e}"))
}

fn criterion_4(lattices: &mut Lattices) -> Check {
    let (small, large): (Vec<_>, Vec<_>) = criterion_4_types().into_iter().partition(|s| s.rank() <= 5);
    let started = Instant::now();
    for s in small {
        let l = build(&s)?;
        check_lattice(&s, &l)?;
        lattices.push((s, l));
    }
    let small_time = started.elapsed();
    ensure(small_time < Duration::from_secs(30), || format!("rank <= 5 took {small_time:?}"))?;
    for s in large {
        let started = Instant::now();
        let l = build(&s)?;
        check_lattice(&s, &l)?;
        let t = started.elapsed();
        ensure(t < Duration::from_secs(600), || format!("{s} took {t:?}"))?;
        lattices.push((s, l));
    }
    let e6 = lattices.iter().find(|(s, _)| s.to_string() == "E6").map(|(_, l)| l.len());
    ensure(e6 == Some(833), || format!("E6 lattice size {e6:?}"))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ftri"))
        .args(args)
        .output()
        .expect("run ftri");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_5() -> Check {
    let specs = [
        "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "D4", "D5", "D6", "E6", "F4", "G2",
        "A2xA1", "B2xG2", "A1xA1xA1",
    ];
    for s in specs {
        let started = Instant::now();
        let report = verify_conjecture(&spec(s)).map_err(|e| format!("{s}: {e}"))?;
        ensure(report.verified, || format!("{s}: mismatches {:?}", report.mismatches))?;
        ensure(report.evidence.all(), || format!("{s}: evidence {:?}", report.evidence))?;
        let t = started.elapsed();
        ensure(t < Duration::from_secs(900), || format!("{s} took {t:?}"))?;
    }
    let mut args = vec!["sweep", "--jobs", "2"];
    args.extend(specs);
    let (code, stdout) = run_cli(&args);
    ensure(code == 0, || format!("sweep exited {code}:\n{}", String::from_utf8_lossy(&stdout)))?;
    let lines = String::from_utf8_lossy(&stdout).lines().count();
    ensure(lines == specs.len(), || format!("sweep printed {lines} lines"))
}

fn criterion_6(lattices: &[(RootSystemSpec, NCLattice)]) -> Check {
    ensure(lattices.len() == criterion_4_types().len(), || "lattices from criterion 4 missing".into())?;
    ensure(h_vector(&spec("A3")).unwrap() == ints(&[1, 6, 6, 1]), || "A3 h-vector".into())?;
    for (s, l) in lattices {
        let n = s.rank();
        let h = UniPoly::new(h_vector(s).map_err(|e| e.to_string())?);
        ensure(h == l.rank_generating_function(), || format!("{s}: h-vector vs rank function"))?;
        let f = f_triangle(s).map_err(|e| e.to_string())?;
        let mu = BigInt::from(l.mobius_number());
        let signed = if n % 2 == 0 { mu } else { -mu };
        ensure(f.entry(n, 0) == signed, || format!("{s}: f_(n,0) vs mobius number"))?;
        let m = l.m_triangle();
        ensure(is_self_dual_m_triangle(&m, n), || format!("{s}: M not palindromic"))?;
        ensure(m.eval_x(&BigInt::one()) == y_power(n), || format!("{s}: M(1,y)"))?;
        let lhs = conjecture_lhs(&f).map_err(|e| e.to_string())?;
        ensure(lhs.eval_x(&BigInt::zero()) == h, || format!("{s}: lhs at x=0"))?;
        ensure(lhs.eval_x(&-BigInt::one()) == y_power(n), || format!("{s}: lhs at x=-1"))?;
        let rhs = conjecture_rhs(l);
        ensure(rhs.eval_x(&BigInt::zero()) == l.rank_generating_function(), || format!("{s}: rhs at x=0"))?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    use std::collections::{HashMap, VecDeque};
    for (s, order) in [("A3", 24), ("B3", 48)] {
        let rep = ReflectionRep::new(&spec(s));
        let group = rep.enumerate_group(1000).ok_or("group too large")?;
        ensure(group.len() == order, || format!("{s}: {} elements", group.len()))?;
        let mut dist = HashMap::from([(rep.identity(), 0usize)]);
        let mut queue = VecDeque::from([rep.identity()]);
        while let Some(g) = queue.pop_front() {
            let d = dist[&g];
            for t in rep.reflections() {
                let h = g.mul(t);
                if !dist.contains_key(&h) {
                    dist.insert(h.clone(), d + 1);
                    queue.push_back(h);
                }
            }
        }
        for g in &group {
            ensure(dist.get(g) == Some(&rep.abs_length(g)), || format!("{s}: length of {:?}", g.entries()))?;
        }
    }
    Ok(())
}

fn criterion_8(scratch: &Path) -> Check {
    for s in ["A3", "B3"] {
        let sp = spec(s);
        let base = NCLattice::for_spec(&sp, Some(&[1, 2, 3]), &Budget::unlimited()).map_err(|e| e.to_string())?;
        for order in [[3, 2, 1], [2, 1, 3], [2, 3, 1]] {
            let l = NCLattice::for_spec(&sp, Some(&order), &Budget::unlimited()).map_err(|e| e.to_string())?;
            ensure(l.m_triangle() == base.m_triangle(), || format!("{s}: M differs for {order:?}"))?;
        }
    }
    let cache = scratch.join("cache");
    let cache = cache.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["ftriangle", "A3", "--format", "tex"],
        vec!["ftriangle", "D4xA2", "--format", "csv"],
        vec!["fvector", "E6"],
        vec!["invariants", "F4"],
        vec!["mtriangle", "B3", "--coxeter-order", "3,1,2"],
        vec!["verify", "A3"],
        vec!["verify", "B2xA1", "--format", "json"],
    ];
    for args in &invocations {
        let first = run_cli(args);
        let second = run_cli(args);
        ensure(first == second, || format!("{args:?}: repeated runs differ"))?;
        ensure(first.0 == 0, || format!("{args:?}: exit {}", first.0))?;
        let mut cached = args.clone();
        cached.extend(["--cache-dir", cache]);
        let cold = run_cli(&cached);
        let warm = run_cli(&cached);
        ensure(cold == first, || format!("{args:?}: cold cache output differs"))?;
        ensure(warm == first, || format!("{args:?}: warm cache output differs"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let scratch = tempfile::tempdir().expect("temp dir");
    let mut lattices = Vec::new();
    let criteria: Vec<Criterion> = vec![
        (1, "A3 triangle and f-vector", Duration::from_secs(1), Box::new(|_| criterion_1())),
        (2, "closed forms A_n, B_n, n <= 8", Duration::from_secs(5), Box::new(|_| criterion_2())),
        (3, "symmetry suite", Duration::from_secs(10), Box::new(|_| criterion_3())),
        (4, "lattice cardinality, Mobius number, zeta", Duration::from_secs(630), Box::new(criterion_4)),
        (5, "conjecture sweep", Duration::from_secs(900), Box::new(|_| criterion_5())),
        (6, "evidence suite", Duration::from_secs(600), Box::new(|l| criterion_6(l))),
        (7, "absolute length vs reflection words", Duration::from_secs(5), Box::new(|_| criterion_7())),
        (8, "ordering invariance and deterministic output", Duration::from_secs(600), Box::new(|_| criterion_8(scratch.path()))),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let started = Instant::now();
        let result = check(&mut lattices).and_then(|()| {
            let t = started.elapsed();
            ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
        });
        let t = started.elapsed();
        match result {
            Ok(()) => println!("criterion {id}: PASS  {name} ({t:.2?})"),
            Err(e) => {
                failed += 1;
                println!("criterion {id}: FAIL  {name} ({t:.2?}): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
