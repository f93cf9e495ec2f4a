//! Repetition witnesses: a finite word `U` and a word `V` with `U·V^w` a
//! prefix of the sequence, for exponents `w > 1`.
//!
//! Sequences of such witnesses with `|V|` strictly increasing and `|U|/|V|`
//! bounded are the combinatorial input of the transcendence criteria. Only
//! finitely many indices are ever checked, so every report here is finite
//! evidence, not a proof.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::complexity::detect_eventual_period;
use crate::error::{Error, Result};
use crate::morphisms::{fixed_point, growth_table, is_prolongable, morphic_image, Morphism};
use crate::words::{
    fractional_power, fractional_power_len, is_prefix, periodic_run, Exponent, SequenceSource, Symbol, Word,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StammerWitness {
    pub u: Word,
    pub v: Word,
    pub w: Exponent,
    pub source_id: String,
    /// The index `n` that produced this witness.
    pub index: usize,
}

impl StammerWitness {
    /// `|U| / |V|`.
    pub fn ratio(&self) -> Exponent {
        Exponent::new(self.u.len() as u64, self.v.len() as u64)
    }

    /// `U · V^w`.
    pub fn expanded(&self) -> Result<Word> {
        Ok(self.u.concat(&fractional_power(&self.v, self.w)?))
    }

    pub fn expanded_len(&self) -> usize {
        self.u.len() + fractional_power_len(self.v.len(), self.w)
    }
}

/// Witnesses ordered by strictly increasing `|V|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSequence {
    pub witnesses: Vec<StammerWitness>,
    /// Largest `|U|/|V|` among the members.
    pub ratio_bound: Exponent,
    /// Smallest exponent among the members.
    pub w: Option<Exponent>,
    /// The sequence looked eventually periodic on the inspected prefix.
    pub eventually_periodic: bool,
}

impl WitnessSequence {
    fn from_witnesses(witnesses: Vec<StammerWitness>, eventually_periodic: bool) -> Self {
        let ratio_bound = witnesses.iter().map(StammerWitness::ratio).max().unwrap_or_else(Exponent::zero);
        let w = witnesses.iter().map(|x| x.w).min();
        debug_assert!(witnesses.windows(2).all(|p| p[0].v.len() < p[1].v.len()));
        WitnessSequence { witnesses, ratio_bound, w, eventually_periodic }
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// True iff `U·V^w` is a prefix of `a`.
pub fn verify_witness(a: &SequenceSource, ws: &StammerWitness) -> bool {
    if ws.v.is_empty() || ws.w <= Exponent::from_integer(1) {
        return false;
    }
    match ws.expanded() {
        Ok(p) => is_prefix(&p, a),
        Err(_) => false,
    }
}

/// Two occurrences `i < j` (0-based) of the same length-`n` factor of `p`,
/// with `i` as small as possible and then `j` as small as possible.
pub fn pigeonhole_repeat(p: &[Symbol], n: usize) -> Result<(usize, usize, Word)> {
    if n == 0 || n > p.len() {
        return Err(Error::WindowTooShort { n, len: p.len() });
    }
    let mut first: HashMap<&[Symbol], usize> = HashMap::new();
    let mut best: Option<(usize, usize)> = None;
    for (j, f) in p.windows(n).enumerate() {
        match first.get(f) {
            Some(&i) => {
                if best.is_none_or(|(bi, _)| i < bi) {
                    best = Some((i, j));
                }
            }
            None => {
                first.insert(f, j);
            }
        }
    }
    match best {
        Some((i, j)) => Ok((i, j, Word::from(&p[i..i + n]))),
        None => Err(Error::NoRepeat { n, len: p.len() }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// `|B| > |M|`
    #[serde(rename = "i")]
    Separated,
    /// `⌈|M|/3⌉ ≤ |B| ≤ |M|`
    #[serde(rename = "ii")]
    Close,
    /// `|B| < ⌈|M|/3⌉`
    #[serde(rename = "iii")]
    Overlapping,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Separated => "i",
            Case::Close => "ii",
            Case::Overlapping => "iii",
        })
    }
}

/// The decomposition behind one [`extract_witness`] call.
///
/// With `P` the prefix of length `(κ+1)n` and `M` occurring at `i` and `j`:
/// `P = A·M·C·D = A·B·M·D`. `E`, `F` and `t` are set by the cases that use them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub n: usize,
    pub kappa: usize,
    pub case: Case,
    pub i: usize,
    pub j: usize,
    pub m: Word,
    pub a: Word,
    pub b: Word,
    pub c: Word,
    pub d: Word,
    pub e: Option<Word>,
    pub f: Option<Word>,
    pub t: Option<usize>,
}

fn bug(msg: impl Into<String>) -> Error {
    Error::ExtractionBug(msg.into())
}

/// One witness from a repeated factor of length `n` in the prefix of length
/// `(κ+1)n`.
///
/// The witness satisfies `|U| ≤ κn`, `|V| ≥ n/4`, `w ≥ 1 + 1/κ` and is
/// checked against the sequence before being returned.
pub fn extract_witness(a: &SequenceSource, n: usize, kappa: usize) -> Result<(StammerWitness, ExtractionTrace)> {
    if kappa < 2 {
        return Err(Error::InvalidArgument(format!("κ must be at least 2, got {kappa}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let len = (kappa + 1) * n;
    let p = a.prefix(len);
    let (i, j, m) = pigeonhole_repeat(&p, n)?;
    let word = |r: std::ops::Range<usize>| Word::from(&p[r]);
    let mut trace = ExtractionTrace {
        n,
        kappa,
        case: Case::Separated,
        i,
        j,
        m: m.clone(),
        a: word(0..i),
        b: word(i..j),
        c: word(i + n..j + n),
        d: word(j + n..len),
        e: None,
        f: None,
        t: None,
    };
    if trace.a.concat(&m).concat(&trace.c).concat(&trace.d) != p
        || trace.a.concat(&trace.b).concat(&m).concat(&trace.d) != p
    {
        return Err(bug("P ≠ A·M·C·D = A·B·M·D"));
    }
    let b_len = j - i;
    let third = n.div_ceil(3);
    let (v, w) = if b_len > n {
        // P = A·M·E·M·D
        let e = word(i + n..j);
        if trace.a.concat(&m).concat(&e).concat(&m).concat(&trace.d) != p {
            return Err(bug("case (i): P ≠ A·M·E·M·D"));
        }
        trace.e = Some(e.clone());
        (m.concat(&e), Exponent::new(kappa as u64 + 1, kappa as u64))
    } else if b_len >= third {
        // P = A·M^{1/3}·E·M^{1/3}·E·F
        let m3 = fractional_power(&m, Exponent::new(1, 3))?;
        let e = word(i + third..j);
        let f = word(i + 2 * b_len..len);
        let v = m3.concat(&e);
        if v != trace.b || trace.a.concat(&v).concat(&v).concat(&f) != p {
            return Err(bug("case (ii): P ≠ A·M^{1/3}·E·M^{1/3}·E·F"));
        }
        trace.case = Case::Close;
        trace.e = Some(e);
        trace.f = Some(f);
        (v, Exponent::from_integer(2))
    } else {
        let t = n / b_len;
        let bt = fractional_power(&trace.b, Exponent::from_integer(t as u64))?;
        if t < 3 || !m.starts_with(&trace.b) || !m.starts_with(&bt) {
            return Err(bug(format!("case (iii): B^{t} is not a prefix of M")));
        }
        trace.case = Case::Overlapping;
        trace.t = Some(t);
        let s = t / 2;
        (fractional_power(&trace.b, Exponent::from_integer(s as u64))?, Exponent::from_integer(2))
    };
    let ws = StammerWitness { u: trace.a.clone(), v, w, source_id: a.id().to_string(), index: n };
    if ws.u.len() > kappa * n || 4 * ws.v.len() < n || ws.w < Exponent::new(kappa as u64 + 1, kappa as u64) {
        return Err(bug(format!("case ({}) witness violates the size bounds", trace.case)));
    }
    if !verify_witness(a, &ws) {
        return Err(bug(format!("case ({}) witness is not a prefix", trace.case)));
    }
    Ok((ws, trace))
}

/// Prefix length inspected for the eventual-periodicity flag.
const PERIODICITY_PROBE: usize = 4096;

fn looks_periodic(a: &SequenceSource) -> bool {
    a.with_prefix(PERIODICITY_PROBE, |p| detect_eventual_period(p).is_some())
}

/// Witnesses for the coded fixed point of a uniform morphism.
///
/// In the fixed point `x` of `σ` over `r` letters, some letter `u` repeats
/// within `x_1 … x_{r+1}`, giving a prefix `W₁·u·W₂·u`. For `n = 1..=count`,
/// `U_n = coding(σⁿ(W₁))`, `V_n = coding(σⁿ(u·W₂))` and `w = 1 + 1/r`.
pub fn witnesses_for_automatic(sigma: &Morphism, coding: &Morphism, count: usize) -> Result<WitnessSequence> {
    let k = sigma.uniform_length().ok_or_else(|| Error::InvalidArgument("σ is not uniform".into()))?;
    let start = sigma
        .start()
        .or_else(|| (0..sigma.source().len() as Symbol).find(|&c| is_prolongable(sigma, c)))
        .ok_or_else(|| Error::NotProlongable("σ has no prolongable letter".into()))?;
    if k < 2 {
        return Err(Error::NotProlongable("σ has image length 1".into()));
    }
    if coding.uniform_length() != Some(1) {
        return Err(Error::InvalidArgument("coding must map letters to letters".into()));
    }
    let r = sigma.source().len();
    let x = fixed_point(sigma, start)?;
    let coded = morphic_image(coding, &x)?;
    let head = x.prefix(r + 1);
    let mut seen = vec![None; r];
    let (i, j) = head
        .iter()
        .enumerate()
        .find_map(|(j, &c)| match seen[c as usize] {
            Some(i) => Some((i, j)),
            None => {
                seen[c as usize] = Some(j);
                None
            }
        })
        .ok_or_else(|| bug("no repeated letter among r + 1 symbols"))?;
    let w1 = Word::from(&head[..i]);
    let uw2 = Word::from(&head[i..j]);
    let w = Exponent::new(r as u64 + 1, r as u64);
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        let ws = StammerWitness {
            u: coding.apply(&sigma.apply_n(&w1, n)),
            v: coding.apply(&sigma.apply_n(&uw2, n)),
            w,
            source_id: coded.id().to_string(),
            index: n,
        };
        if !verify_witness(&coded, &ws) {
            return Err(bug(format!("automatic witness for n = {n} is not a prefix")));
        }
        out.push(ws);
    }
    Ok(WitnessSequence::from_witnesses(out, looks_periodic(&coded)))
}

/// Longest witness prefix `|U·V^w|` that [`witnesses_for_morphic`] will
/// materialize.
pub const MORPHIC_LENGTH_CAP: usize = 1 << 22;

/// Depth of the growth table used to choose the letter of maximal growth.
pub const MORPHIC_GROWTH_DEPTH: usize = 64;

/// Witnesses for the fixed point of `φ` from `start`.
///
/// The letter `a*` is the one reaching `max_j |φⁿ(j)|` for the most rows
/// `n = 1..=64`, ties to the earliest letter; the indices `n_k` are the rows
/// where it does. With `W₁·a*·W₂·a*` the shortest prefix holding two
/// occurrences of `a*`, `U_k = φ^{n_k}(W₁)`, `V_k = φ^{n_k}(a*·W₂)` and
/// `w = 1 + 1/(|W₂|+1)`. Stops early once a witness would exceed
/// [`MORPHIC_LENGTH_CAP`] symbols. `NotApplicable` if `a*` is not seen twice
/// within `scan_limit` symbols.
pub fn witnesses_for_morphic(
    phi: &Morphism,
    start: Symbol,
    count: usize,
    scan_limit: usize,
) -> Result<WitnessSequence> {
    let x = fixed_point(phi, start)?;
    let table = growth_table(phi, MORPHIC_GROWTH_DEPTH);
    let letters = phi.source().len();
    let mut wins = vec![0usize; letters];
    for n in 1..=MORPHIC_GROWTH_DEPTH {
        for (c, win) in wins.iter_mut().enumerate() {
            if table.achieves_max(n, c as Symbol) {
                *win += 1;
            }
        }
    }
    let best = *wins.iter().max().expect("alphabet is non-empty");
    let a_star = wins.iter().position(|&x| x == best).expect("max is attained") as Symbol;
    let (first, second) = x.with_prefix(scan_limit, |p| {
        let mut it = p.iter().enumerate().filter(|(_, &c)| c == a_star).map(|(i, _)| i);
        (it.next(), it.next())
    });
    let (i, j) = match (first, second) {
        (Some(i), Some(j)) => (i, j),
        _ => {
            return Err(Error::NotApplicable(format!(
                "letter {} of maximal growth occurs fewer than twice in the first {scan_limit} symbols",
                phi.source().token(a_star)
            )))
        }
    };
    let head = x.prefix(j + 1);
    let w1 = Word::from(&head[..i]);
    let aw2 = Word::from(&head[i..j]);
    let w = Exponent::new(aw2.len() as u64 + 1, aw2.len() as u64);
    let mut out: Vec<StammerWitness> = Vec::new();
    for n in (1..=MORPHIC_GROWTH_DEPTH).filter(|&n| table.achieves_max(n, a_star)) {
        if out.len() == count {
            break;
        }
        let len_of = |word: &Word| word.iter().map(|&c| table.len_of(n, c).clone()).sum::<num_bigint::BigUint>();
        let (u_len, v_len) = (len_of(&w1), len_of(&aw2));
        let total = u_len.clone() + &v_len + Integer::div_ceil(&v_len, &num_bigint::BigUint::from(aw2.len()));
        if total.to_usize().is_none_or(|t| t > MORPHIC_LENGTH_CAP) {
            break;
        }
        if v_len.to_usize().unwrap_or(0) <= out.last().map_or(0, |l| l.v.len()) {
            continue;
        }
        let ws = StammerWitness {
            u: phi.apply_n(&w1, n),
            v: phi.apply_n(&aw2, n),
            w,
            source_id: x.id().to_string(),
            index: n,
        };
        if !verify_witness(&x, &ws) {
            return Err(bug(format!("morphic witness for n = {n} is not a prefix")));
        }
        out.push(ws);
    }
    Ok(WitnessSequence::from_witnesses(out, looks_periodic(&x)))
}

/// Brute-force search on the prefix of length `l`.
///
/// For each `|V| = 1, 2, …` the split `|U| ≤ ratio_cap·|V|` with the largest
/// exponent is kept if that exponent is at least `w_min` (ties to the
/// shortest `U`). The exponent is measured inside the prefix, so it is a
/// lower bound. The search stops after about `l²` symbol comparisons.
pub fn witness_hunt(a: &SequenceSource, w_min: Exponent, ratio_cap: Exponent, l: usize) -> Result<WitnessSequence> {
    if w_min <= Exponent::from_integer(1) {
        return Err(Error::InvalidExponent(format!("w_min must exceed 1, got {w_min}")));
    }
    let p = a.prefix(l);
    let budget = (l as u128) * (l as u128);
    let mut work: u128 = 0;
    let mut out = Vec::new();
    'outer: for v_len in 1..=l / 2 {
        let cap = (ratio_cap * Exponent::from_integer(v_len as u64)).to_integer() as usize;
        let mut best: Option<(usize, usize)> = None;
        for u_len in 0..=cap.min(l - v_len) {
            let m = periodic_run(&p, u_len, v_len);
            work += (m - v_len + 1) as u128;
            if best.is_none_or(|(_, bm)| m > bm) {
                best = Some((u_len, m));
            }
            if work > budget {
                break 'outer;
            }
        }
        if let Some((u_len, m)) = best {
            let w = Exponent::new(m as u64, v_len as u64);
            if w >= w_min {
                out.push(StammerWitness {
                    u: Word::from(&p[..u_len]),
                    v: Word::from(&p[u_len..u_len + v_len]),
                    w,
                    source_id: a.id().to_string(),
                    index: v_len,
                });
            }
        }
    }
    Ok(WitnessSequence::from_witnesses(out, detect_eventual_period(&p).is_some()))
}

/// One line of the witness report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessReport {
    pub source: String,
    pub n: usize,
    pub case_fired: Option<Case>,
    pub u_len: usize,
    pub v_len: usize,
    pub w: String,
    pub verified: bool,
    pub ratio: String,
}

impl WitnessReport {
    pub fn new(ws: &StammerWitness, case: Option<Case>, verified: bool) -> Self {
        WitnessReport {
            source: ws.source_id.clone(),
            n: ws.index,
            case_fired: case,
            u_len: ws.u.len(),
            v_len: ws.v.len(),
            w: format!("{}/{}", ws.w.numer(), ws.w.denom()),
            verified,
            ratio: format!("{}/{}", ws.ratio().numer(), ws.ratio().denom()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{to_uniform_morphism, KAutomaton};
    use crate::words::Alphabet;

    fn fib() -> Morphism {
        Morphism::endo(Alphabet::digits(2), &["01", "0"]).unwrap()
    }

    fn fib_word() -> SequenceSource {
        fixed_point(&fib(), 0).unwrap()
    }

    fn tm() -> SequenceSource {
        crate::automata::generate(&KAutomaton::thue_morse())
    }

    fn w(s: &str) -> Word {
        Alphabet::digits(10).parse_word(s).unwrap()
    }

    fn witness(u: &str, v: &str, num: u64, den: u64) -> StammerWitness {
        StammerWitness { u: w(u), v: w(v), w: Exponent::new(num, den), source_id: "t".into(), index: 0 }
    }

    #[test]
    fn verify_examples() {
        assert!(verify_witness(&fib_word(), &witness("", "010", 5, 3)));
        assert!(verify_witness(&tm(), &witness("0", "1", 2, 1)));
        assert!(!verify_witness(&tm(), &witness("", "0", 2, 1)));
        assert!(!verify_witness(&tm(), &witness("0", "1", 1, 1)));
    }

    #[test]
    fn pigeonhole_examples() {
        let abc = Alphabet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let p = abc.parse_word("abcabc").unwrap();
        assert_eq!(pigeonhole_repeat(&p, 3).unwrap(), (0, 3, abc.parse_word("abc").unwrap()));
        let q = abc.parse_word("abcdef").unwrap();
        assert!(matches!(pigeonhole_repeat(&q, 3), Err(Error::NoRepeat { .. })));

        let f = fib_word().prefix(18);
        let (i, j, m) = pigeonhole_repeat(&f, 6).unwrap();
        assert!(i < j);
        assert_eq!(&f[i..i + 6], m.as_slice());
        assert_eq!(&f[j..j + 6], m.as_slice());
        // no earlier i has a repeat
        for i2 in 0..i {
            assert!((i2 + 1..=f.len() - 6).all(|j2| f[i2..i2 + 6] != f[j2..j2 + 6]));
        }
    }

    #[test]
    fn pigeonhole_prefers_smallest_i() {
        // "1" repeats at (1, 4) before "0" repeats at (0, 5)
        let p = w("01231");
        assert_eq!(pigeonhole_repeat(&p, 1).unwrap().0, 1);
        let p = w("012310");
        assert_eq!(pigeonhole_repeat(&p, 1).unwrap(), (0, 5, w("0")));
    }

    #[test]
    fn extraction_on_constant_word() {
        let zeros = SequenceSource::from_fn("zeros", Alphabet::digits(2), |_| 0);
        // |B| = 1 = ⌈2/3⌉, so n = 2 lands in the middle case
        let (ws, tr) = extract_witness(&zeros, 2, 2).unwrap();
        assert_eq!(tr.case, Case::Close);
        assert_eq!(ws.u, w(""));
        assert_eq!(ws.v, w("0"));
        assert_eq!(ws.w, Exponent::from_integer(2));
        for n in 4..40 {
            let (ws, tr) = extract_witness(&zeros, n, 2).unwrap();
            assert_eq!(tr.case, Case::Overlapping);
            assert_eq!(tr.t, Some(n));
            assert!(ws.u.is_empty() && ws.v.iter().all(|&c| c == 0));
            assert_eq!(ws.v.len(), n / 2);
        }
    }

    #[test]
    fn extraction_on_alternating_word() {
        let alt = SequenceSource::from_fn("alt", Alphabet::digits(2), |i| (i % 2) as Symbol);
        let (ws, _) = extract_witness(&alt, 2, 2).unwrap();
        assert!(ws.w >= Exponent::new(3, 2));
        assert!(verify_witness(&alt, &ws));
    }

    #[test]
    fn extraction_on_fibonacci_meets_bounds() {
        let a = fib_word();
        for n in 5..=50 {
            let (ws, tr) = extract_witness(&a, n, 2).unwrap();
            assert!(verify_witness(&a, &ws));
            assert!(ws.u.len() <= 2 * n && 4 * ws.v.len() >= n && ws.w >= Exponent::new(3, 2), "n {n} {tr:?}");
        }
    }

    #[test]
    fn extraction_cases_all_fire() {
        let mut seen = std::collections::HashSet::new();
        let sources = [fib_word(), tm(), SequenceSource::from_fn("z", Alphabet::digits(2), |_| 0)];
        for a in &sources {
            for n in 1..200 {
                for kappa in 2..=4 {
                    if let Ok((_, tr)) = extract_witness(a, n, kappa) {
                        seen.insert(tr.case);
                    }
                }
            }
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn extraction_no_repeat_and_bad_kappa() {
        let ident = SequenceSource::from_fn("id", Alphabet::digits(10), |i| (i % 10) as Symbol);
        assert!(extract_witness(&ident, 5, 1).is_err());
        // 0123456789 0123...: length-4 factors in a prefix of 12 are distinct
        assert!(matches!(extract_witness(&ident, 4, 2), Err(Error::NoRepeat { .. })));
    }

    #[test]
    fn thue_morse_automatic_witnesses() {
        let dec = to_uniform_morphism(&KAutomaton::thue_morse()).unwrap();
        let seq = witnesses_for_automatic(&dec.sigma, &dec.coding, 15).unwrap();
        assert_eq!(seq.len(), 15);
        assert_eq!(seq.w, Some(Exponent::new(3, 2)));
        assert!(seq.ratio_bound <= Exponent::from_integer(1));
        let first = &seq.witnesses[0];
        assert_eq!((first.u.len(), first.v.len()), (2, 2));
        assert!(!seq.eventually_periodic);
    }

    #[test]
    fn one_letter_automatic_is_flagged() {
        let sigma = Morphism::endo(Alphabet::new(["a"]).unwrap(), &["aa"]).unwrap();
        let coding = Morphism::new(Alphabet::new(["a"]).unwrap(), Alphabet::digits(2), vec![w("0")]).unwrap();
        let seq = witnesses_for_automatic(&sigma, &coding, 5).unwrap();
        assert!(seq.eventually_periodic);
        assert!(seq.witnesses.iter().all(|x| x.u.is_empty()));
    }

    #[test]
    fn fibonacci_morphic_witnesses() {
        let seq = witnesses_for_morphic(&fib(), 0, 10, 10_000).unwrap();
        assert_eq!(seq.len(), 10);
        assert_eq!(seq.w, Some(Exponent::new(3, 2)));
        let a = fib_word();
        assert!(seq.witnesses.iter().all(|x| verify_witness(&a, x)));
        assert!(seq.witnesses[0].u.is_empty());
    }

    #[test]
    fn ternary_morphic_is_not_applicable() {
        let phi = Morphism::endo(Alphabet::digits(3), &["012", "12", "2"]).unwrap();
        assert!(matches!(witnesses_for_morphic(&phi, 0, 5, 10_000), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn hunt_on_periodic_and_random() {
        let alt = SequenceSource::from_fn("alt", Alphabet::digits(2), |i| (i % 2) as Symbol);
        let seq = witness_hunt(&alt, Exponent::new(3, 2), Exponent::from_integer(2), 200).unwrap();
        assert!(seq.eventually_periodic);
        assert!(!seq.is_empty());
        assert!(seq.witnesses.iter().all(|x| verify_witness(&alt, x)));
        assert!(witness_hunt(&alt, Exponent::from_integer(1), Exponent::from_integer(1), 10).is_err());
    }
}
