//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stammer_core::approximants::{
    audit_witness, build_polynomial, height, hensel_approximant, product_over_places, required_valuation, AuditEntry,
};
use stammer_core::automata::{generate, to_uniform_morphism, KAutomaton};
use stammer_core::complexity::complexity_profile;
use stammer_core::expansions::{
    beta_expansion, classify_algebraic_integer, pattern_count_digits, resum_field, AlgebraicIntegerSpec, AlgebraicKind,
    Beta, BetaInput, QuadElem,
};
use stammer_core::morphisms::{default_fixed_point, fixed_point, recurrence_status, Morphism, RecurrenceStatus};
use stammer_core::numeric::{pow2, Rational};
use stammer_core::poly::IntPoly;
use stammer_core::stammer::{extract_witness, verify_witness, witnesses_for_automatic, witnesses_for_morphic};
use stammer_core::{Error, Exponent, SequenceSource};

const SEED: u64 = 0x5eed_2024;
/// `|Σ e(n) 2^-n − 2/3| ≤ 2^MM_TOL_EXP`.
const MM_TOL_EXP: i64 = -58;
/// Every audit exponent enclosure lies strictly below this.
const AUDIT_BOUND: i64 = -3;
/// Smallest `|V|` audited.
const AUDIT_MIN_S: usize = 30;
const AUDIT_PRECISION_BITS: u32 = 1 << 16;
const SCAN: usize = 100_000;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: stammer_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {}: {e}", e.name()))
}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn pow(b: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

fn load_morphism(rel: &str) -> Result<Morphism, String> {
    let text = fs::read_to_string(data(rel)).map_err(|e| e.to_string())?;
    ok(Morphism::parse(&text), rel)
}

fn fibonacci() -> Result<SequenceSource, String> {
    ok(default_fixed_point(&load_morphism("data/fib.mor")?), "fixed point")
}

fn thue_morse_generation() -> Check {
    let text = fs::read_to_string(data("data/thue-morse.aut")).map_err(|e| e.to_string())?;
    let a = ok(KAutomaton::parse(&text), "automaton")?;
    let got = generate(&a).render_prefix(13);
    ensure(got == "0110100110010", || format!("prefix(13) = {got}"))?;
    Ok("prefix(13) = 0110100110010".into())
}

fn fibonacci_word() -> Check {
    let x = fibonacci()?;
    let got = x.render_prefix(18);
    ensure(got == "010010100100101001", || format!("prefix(18) = {got}"))?;
    let prof = ok(complexity_profile(&x, 30, 10_000), "profile")?;
    for n in 1..=30 {
        ensure(prof.count(n) == n + 1, || format!("p({n}) = {}", prof.count(n)))?;
    }
    ensure(prof.all_stable(), || "a stability flag is unset".into())?;
    Ok("prefix(18) exact; p(n) = n+1 for n ≤ 30 at L = 10^4, all stable".into())
}

fn ternary_counterexample() -> Check {
    let phi = load_morphism("data/ternary.mor")?;
    let x = ok(fixed_point(&phi, 0), "fixed point")?;
    let got = x.render_prefix(32);
    ensure(got == "01212212221222212222212222221222", || format!("prefix(32) = {got}"))?;
    let st = recurrence_status(&phi, 0, SCAN);
    ensure(st == RecurrenceStatus::NotRecurrent(0), || format!("recurrence {st:?}"))?;
    match witnesses_for_morphic(&phi, 0, 10, SCAN) {
        Err(Error::NotApplicable(_)) => {}
        other => return Err(format!("witnesses_for_morphic gave {other:?}")),
    }
    let out = Command::new(env!("CARGO_BIN_EXE_stammer"))
        .args(["witness", "--morphism"])
        .arg(data("data/ternary.mor"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(2), || format!("exit status {:?}", out.status.code()))?;
    let err = String::from_utf8_lossy(&out.stderr);
    ensure(err.contains("NotApplicable"), || format!("stderr {err:?}"))?;
    Ok("prefix(32) exact, NotRecurrent(0), NotApplicable, exit 2".into())
}

fn three_case_extraction() -> Check {
    let x = fibonacci()?;
    let kappa = 2;
    let w_min = Exponent::new(kappa as u64 + 1, kappa as u64);
    let mut cases = std::collections::BTreeMap::new();
    for n in 5..=200 {
        let (ws, trace) = ok(extract_witness(&x, n, kappa), &format!("n = {n}"))?;
        ensure(verify_witness(&x, &ws), || format!("n = {n}: witness is not a prefix"))?;
        ensure(ws.u.len() <= kappa * n, || format!("n = {n}: |U| = {}", ws.u.len()))?;
        ensure(4 * ws.v.len() >= n, || format!("n = {n}: |V| = {}", ws.v.len()))?;
        ensure(ws.w >= w_min, || format!("n = {n}: w = {}", ws.w))?;
        *cases.entry(trace.case.to_string()).or_insert(0) += 1;
    }
    Ok(format!("n = 5..200 all verified; cases fired {cases:?}"))
}

fn automatic_construction() -> Check {
    let tm = KAutomaton::thue_morse();
    let d = ok(to_uniform_morphism(&tm), "decomposition")?;
    let ensure_r = d.sigma.uniform_length();
    ensure(ensure_r == Some(2), || format!("uniform length {ensure_r:?}"))?;
    let ws = ok(witnesses_for_automatic(&d.sigma, &d.coding, 15), "witnesses")?;
    ensure(ws.len() == 15, || format!("{} witnesses", ws.len()))?;
    let a = generate(&tm);
    for (n, w) in (1..=15).zip(&ws.witnesses) {
        ensure(w.index == n, || format!("index {} at position {n}", w.index))?;
        ensure(verify_witness(&a, w), || format!("n = {n}: not a prefix"))?;
        ensure(w.w == Exponent::new(3, 2), || format!("n = {n}: w = {}", w.w))?;
        ensure(w.ratio() <= Exponent::one(), || format!("n = {n}: ratio {}", w.ratio()))?;
    }
    Ok("n = 1..15 verified, w = 3/2, |U|/|V| ≤ 1".into())
}

// Σ_{k≤len} d_k b^{-k}
fn series(d: &[i64], b: u64) -> Rational {
    let mut acc = Rational::zero();
    let mut scale = Rational::one();
    let inv = Rational::new(BigInt::one(), BigInt::from(b));
    for &x in d {
        scale *= &inv;
        acc += int(x) * &scale;
    }
    acc
}

fn approximant_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..1000 {
        let b = [2u64, 3, 10][rng.gen_range(0..3)];
        let r = rng.gen_range(0..=50);
        let s = rng.gen_range(1..=50);
        let a: Vec<i64> = (0..r + s).map(|_| rng.gen_range(0..b as i64)).collect();
        let p = ok(build_polynomial(&a, r, s), "polynomial")?;
        let value = p.eval(&int(b)) / int(pow(b, r) * (pow(b, s) - 1));
        // head + b^{-r} · Σ_{j≥0} b^{-js} · block
        let head = series(&a[..r], b);
        let block = series(&a[r..], b);
        let bs = int(pow(b, s));
        let expected = head + block * &bs / (&bs - Rational::one()) / int(pow(b, r));
        ensure(value == expected, || format!("instance {i}: b = {b}, r = {r}, s = {s}"))?;
        ensure(p.is_zero() || p.degree() < r + s, || format!("instance {i}: degree {}", p.degree()))?;
        let max_a = a.iter().map(|x| x.abs()).max().unwrap_or(0);
        ensure(p.max_abs_coeff() <= BigInt::from(2 * max_a), || format!("instance {i}: coefficient bound"))?;
    }
    Ok("1000 instances exact; degree ≤ r+s−1; coefficients ≤ 2·max|a_k|".into())
}

fn base3_string(mut n: u64) -> String {
    if n == 0 {
        return "0".into();
    }
    let mut s = Vec::new();
    while n > 0 {
        s.push(b'0' + (n % 3) as u8);
        n /= 3;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

fn morton_mourant() -> Check {
    let e = ok(pattern_count_digits(3, &[1], 2), "pattern source")?;
    let mut sum = Rational::zero();
    for n in 0..=60u64 {
        sum += int(e.get(n as usize + 1)) * pow2(-(n as i64));
    }
    let gap = (&sum - Rational::new(2.into(), 3.into())).abs();
    ensure(gap <= pow2(MM_TOL_EXP), || format!("|sum − 2/3| = {gap}"))?;
    for n in 0..3u64.pow(8) {
        let brute = base3_string(n).matches('1').count() as u64 % 2;
        ensure(brute == n % 2, || format!("brute force at n = {n}"))?;
        ensure(e.get(n as usize + 1) as u64 == brute, || format!("e({n}) = {}", e.get(n as usize + 1)))?;
    }
    Ok(format!("|partial sum − 2/3| ≤ 2^{MM_TOL_EXP}; e(n) = n mod 2 for n < 3^8"))
}

fn valuation(n: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

fn hensel_valuations() -> Check {
    let mut checked = 0;
    let mut skipped = 0;
    for p in [2u64, 3, 5] {
        let sources = [fibonacci()?, ok(pattern_count_digits(2, &[1], p), "digit-sum source")?];
        for x in &sources {
            for n in (4..=64).step_by(3) {
                let ws = match extract_witness(x, n, 2) {
                    Ok((ws, _)) => ws,
                    Err(Error::NoRepeat { .. }) => {
                        skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(format!("p = {p}, {}, n = {n}: {e}", x.id())),
                };
                let (r, s) = (ws.u.len(), ws.v.len());
                let required = required_valuation(r, s, ws.w);
                let big_n = 2 * required as usize + 8;
                let a = x.digit_values(big_n);
                let h = ok(hensel_approximant(&a, r, s, p), "hensel approximant")?;
                // α_n = head − p^r·block/(p^s − 1) with head = Σ_{k≤r} a_k p^k, block = Σ_{k≤s} a_{r+k} p^k
                let head: BigInt = (1..=r).map(|k| a[k - 1] * pow(p, k)).sum();
                let block: BigInt = (1..=s).map(|k| a[r + k - 1] * pow(p, k)).sum();
                let ps1: BigInt = pow(p, s) - 1;
                let alpha_n = int(head.clone()) - int(pow(p, r) * block) / int(ps1.clone());
                ensure(h.value == alpha_n, || format!("p = {p}, n = {n}: value {} vs {alpha_n}", h.value))?;
                let t_n: BigInt = (1..=big_n).map(|k| a[k - 1] * pow(p, k)).sum();
                let diff = (int(t_n) - &alpha_n) * int(ps1);
                let v = if diff.is_zero() { u64::MAX } else { valuation(diff.numer(), p) };
                let bound = big_n as u64 + 1;
                let expect = v.min(bound);
                ensure(h.valuation.value == expect && h.valuation.exact == (v < bound), || {
                    format!("p = {p}, n = {n}: valuation {:?} vs {expect}", h.valuation)
                })?;
                ensure(expect >= required, || format!("p = {p}, n = {n}: valuation {expect} < {required}"))?;
                checked += 1;
            }
        }
    }
    ensure(checked >= 50, || format!("only {checked} cases"))?;
    Ok(format!("{checked} witnesses over p ∈ {{2,3,5}} (NoRepeat skipped: {skipped}); v_p(α′ − α_n) ≥ r + ⌈ws⌉ + 1"))
}

fn product_formula_by_hand(m: &BigInt) -> Rational {
    let mut rest = m.abs();
    let mut prod = int(rest.clone());
    let mut q = BigInt::from(2);
    while &q * &q <= rest {
        while (&rest % &q).is_zero() {
            rest /= &q;
            prod /= int(q.clone());
        }
        q += 1;
    }
    if rest > BigInt::one() {
        prod /= int(rest);
    }
    prod
}

fn heights() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for _ in 0..1000 {
        let mut m = 0i64;
        while m == 0 {
            m = rng.gen_range(-1_000_000_000_000i64..=1_000_000_000_000);
        }
        let m = BigInt::from(m);
        let got = ok(product_over_places(&m), "product")?;
        ensure(got.is_one(), || format!("Π |{m}|_v = {got}"))?;
        ensure(product_formula_by_hand(&m).is_one(), || format!("trial division for {m}"))?;
    }
    for _ in 0..100 {
        let x: Vec<Rational> = loop {
            let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-1000..=1000)).collect();
            if v.iter().any(|&c| c != 0) {
                break v.into_iter().map(int).collect();
            }
        };
        let mut num = 0;
        while num == 0 {
            num = rng.gen_range(-500i64..=500);
        }
        let lambda = Rational::new(num.into(), rng.gen_range(1i64..=500).into());
        let y: Vec<Rational> = x.iter().map(|c| c * &lambda).collect();
        let (hx, hy) = (ok(height(&x), "height")?, ok(height(&y), "height")?);
        ensure(hx == hy, || format!("H(λx) ≠ H(x) for λ = {lambda}"))?;
    }
    let a = ok(height(&[int(2), int(4), int(6)]), "height")?;
    let b = ok(height(&[int(1), int(2), int(3)]), "height")?;
    ensure(a == b && b.squared() == int(14), || format!("H((2,4,6)) = {a}, H((1,2,3)) = {b}"))?;
    Ok("product formula on 10^3 integers; H(λx) = H(x) on 10^2 triples; H((2,4,6)) = H((1,2,3)) = sqrt(14)".into())
}

fn subspace_audit() -> Check {
    let fixture = fs::read_to_string(data("tests/fixtures/fibonacci-audit.tsv")).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_stammer"))
        .args(["audit", "--morphism"])
        .arg(data("data/fib.mor"))
        .args(["--min-s", &AUDIT_MIN_S.to_string(), "--precision-bits", &AUDIT_PRECISION_BITS.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    ensure(out.stdout == fixture.as_bytes(), || "CLI output differs from the frozen fixture".into())?;
    let rows: Vec<Vec<&str>> = fixture.lines().skip(1).map(|l| l.split('\t').collect()).collect();

    let phi = load_morphism("data/fib.mor")?;
    let x = ok(default_fixed_point(&phi), "fixed point")?;
    let ws = ok(witnesses_for_morphic(&phi, 0, 15, SCAN), "witnesses")?;
    let audited: Vec<_> = ws.witnesses.iter().filter(|w| w.v.len() >= AUDIT_MIN_S).collect();
    ensure(!audited.is_empty() && audited.len() == rows.len(), || {
        format!("{} witnesses with s ≥ {AUDIT_MIN_S}, {} fixture rows", audited.len(), rows.len())
    })?;
    let bound = int(AUDIT_BOUND);
    for (w, row) in audited.iter().zip(&rows) {
        ensure(verify_witness(&x, w), || format!("index {}: not a prefix", w.index))?;
        let rep = ok(audit_witness(&x, 2, w, AUDIT_PRECISION_BITS), "audit")?;
        ensure(rep.exponent.hi() < &bound, || format!("index {}: exponent {:?}", w.index, rep.exponent))?;
        let e = AuditEntry::new(w.u.len() + w.v.len(), &rep);
        let got = [&e.exponent_enclosure.lo, &e.exponent_enclosure.hi];
        ensure(got == [row[8], row[9]], || format!("index {}: {got:?} vs fixture {:?}", w.index, &row[8..10]))?;
    }
    let worst = rows.iter().map(|r| r[9]).max_by(|a, b| a.parse::<f64>().unwrap().total_cmp(&b.parse().unwrap()));
    Ok(format!(
        "{} witnesses with s ≥ {AUDIT_MIN_S}, exponents < {AUDIT_BOUND} (largest upper end {})",
        rows.len(),
        worst.unwrap_or("-")
    ))
}

fn beta_expansions() -> Check {
    let golden = Beta::golden();
    let Beta::Quadratic(k) = &golden else { unreachable!() };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let mut longest = 0;
    for _ in 0..20 {
        let q = rng.gen_range(2i64..=100);
        let p = rng.gen_range(1..q);
        let xi = Rational::new(p.into(), q.into());
        let exp = ok(beta_expansion(&BetaInput::Rational(xi.clone()), &golden, 4000, 64), "expansion")?;
        let period = exp.period.ok_or_else(|| format!("{xi}: no repeated orbit element in 4000 steps"))?;
        longest = longest.max(period.preperiod + period.period);
        let back = ok(resum_field(k, &exp.digits, period), "re-summation")?;
        ensure(back == QuadElem::rational(xi.clone()), || format!("{xi}: re-summed to {back}"))?;
    }
    for (poly, kind) in
        [("1,-1,-1", AlgebraicKind::Pisot), ("1,-2", AlgebraicKind::Pisot), ("1,-1,-1,-1,1", AlgebraicKind::Salem)]
    {
        let spec = ok(AlgebraicIntegerSpec::new(ok(IntPoly::parse_high_first(poly), poly)?), poly)?;
        let got = ok(classify_algebraic_integer(&spec, 1 << 12), poly)?;
        ensure(got == kind, || format!("{poly}: {got:?}"))?;
    }
    Ok(format!("20 rationals periodic (longest preperiod+period {longest}) and re-summed exactly; Pisot, Pisot, Salem"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Thue-Morse generation", thue_morse_generation, Duration::from_secs(1)),
        ("Fibonacci word and complexity", fibonacci_word, Duration::from_secs(5)),
        ("ternary counterexample", ternary_counterexample, Duration::from_secs(30)),
        ("three-case extraction", three_case_extraction, Duration::from_secs(10)),
        ("uniform-morphism witnesses", automatic_construction, Duration::from_secs(30)),
        ("periodic approximant polynomial", approximant_identity, Duration::from_secs(10)),
        ("Morton-Mourant sum", morton_mourant, Duration::from_secs(30)),
        ("Hensel valuations", hensel_valuations, Duration::from_secs(60)),
        ("heights and product formula", heights, Duration::from_secs(60)),
        ("subspace audit fixture", subspace_audit, Duration::from_secs(120)),
        ("beta-expansions and classification", beta_expansions, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut res = run();
        let dt = t.elapsed();
        if res.is_ok() && dt > *limit {
            res = Err(format!("took {dt:.2?}, limit {limit:?}"));
        }
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{dt:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{dt:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
