//! Alphabets, finite words, fractional powers and lazily generated infinite
//! sequences.
//!
//! Infinite sequences are indexed from 1: `a.get(1)` is the first symbol.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, Mutex, MutexGuard};

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Symbol = u32;

/// Exact exponent of a fractional power.
pub type Exponent = Ratio<u64>;

/// Ordered finite list of distinct symbol tokens.
#[derive(Clone)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad symbol token {t:?}")));
            }
            if index.insert(t.clone(), i as Symbol).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {t:?}")));
            }
        }
        Ok(Alphabet { tokens, index })
    }

    /// The digit alphabet `0, 1, …, base-1`.
    pub fn digits(base: u32) -> Self {
        assert!(base >= 1, "digit alphabet needs at least one symbol");
        Alphabet::new((0..base).map(|d| d.to_string())).expect("digit tokens are distinct")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.tokens[s as usize]
    }

    pub fn symbol(&self, token: &str) -> Option<Symbol> {
        self.index.get(token).copied()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.tokens.len()
    }

    /// Integer value of a symbol when the sequence is read as digits: the
    /// token itself if it parses as an integer, its index otherwise.
    pub fn digit_value(&self, s: Symbol) -> i64 {
        self.token(s).parse::<i64>().unwrap_or(s as i64)
    }

    /// True when every token is a single character, so words can be written
    /// without separators.
    pub fn is_single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word written either as whitespace-separated tokens or, for
    /// single-character alphabets, as a run of characters. `eps` is the empty
    /// word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let parts: Vec<&str> = text.split_whitespace().collect();
        if parts.is_empty() || parts == ["eps"] {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for part in parts {
            if let Some(s) = self.symbol(part) {
                out.push(s);
                continue;
            }
            for ch in part.chars() {
                let mut buf = [0u8; 4];
                let s = self
                    .symbol(ch.encode_utf8(&mut buf))
                    .ok_or_else(|| Error::InvalidWord(format!("{part:?} is not over the alphabet")))?;
                out.push(s);
            }
        }
        Ok(Word(out))
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        let sep = if self.is_single_char() { "" } else { " " };
        word.iter().map(|&s| self.token(s)).collect::<Vec<_>>().join(sep)
    }

    pub fn check_word(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| !self.contains(s)) {
            Some(s) => Err(Error::InvalidWord(format!("symbol index {s} outside alphabet of size {}", self.len()))),
            None => Ok(()),
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.tokens == other.tokens
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Alphabet").field(&self.tokens).finish()
    }
}

/// A finite word, stored as symbol indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Length of `W^x` for `|W| = len`: `⌊x⌋·len + ⌈frac(x)·len⌉`.
pub fn fractional_power_len(len: usize, x: Exponent) -> usize {
    let (num, den) = (*x.numer(), *x.denom());
    let whole = (num / den) as usize;
    let frac = num % den;
    whole * len + Integer::div_ceil(&(frac as u128 * len as u128), &(den as u128)) as usize
}

/// `W^x`: `W` repeated `⌊x⌋` times, then the prefix of `W` of length
/// `⌈(x − ⌊x⌋)·|W|⌉`.
pub fn fractional_power(w: &[Symbol], x: Exponent) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::InvalidWord("fractional power of the empty word".into()));
    }
    if *x.numer() == 0 {
        return Err(Error::InvalidExponent(format!("exponent must be positive, got {x}")));
    }
    let total = fractional_power_len(w.len(), x);
    Ok(w.iter().copied().cycle().take(total).collect())
}

/// Produces the symbols of an infinite sequence in order.
pub trait Generator: Send {
    /// Appends at least one symbol to `buf`, which holds every symbol
    /// generated so far.
    fn extend(&mut self, buf: &mut Vec<Symbol>);
}

/// Generator driven by a function of the 0-based position.
pub struct IndexFn<F>(pub F);

impl<F> Generator for IndexFn<F>
where
    F: FnMut(usize) -> Symbol + Send,
{
    fn extend(&mut self, buf: &mut Vec<Symbol>) {
        let next = buf.len();
        buf.push((self.0)(next));
    }
}

struct Memo {
    buf: Vec<Symbol>,
    gen: Box<dyn Generator>,
}

/// An infinite sequence `a_1 a_2 …` with a memoized prefix buffer.
///
/// Clones share the buffer. The buffer is guarded by a mutex, so reads from
/// several threads never observe a partially extended buffer.
#[derive(Clone)]
pub struct SequenceSource {
    id: Arc<str>,
    alphabet: Arc<Alphabet>,
    memo: Arc<Mutex<Memo>>,
}

impl fmt::Debug for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSource").field("id", &self.id).field("alphabet", &self.alphabet).finish_non_exhaustive()
    }
}

const MIN_CHUNK: usize = 64;

impl SequenceSource {
    pub fn new(id: impl Into<String>, alphabet: Alphabet, gen: impl Generator + 'static) -> Self {
        SequenceSource {
            id: Arc::from(id.into()),
            alphabet: Arc::new(alphabet),
            memo: Arc::new(Mutex::new(Memo { buf: Vec::new(), gen: Box::new(gen) })),
        }
    }

    pub fn from_fn<F>(id: impl Into<String>, alphabet: Alphabet, f: F) -> Self
    where
        F: FnMut(usize) -> Symbol + Send + 'static,
    {
        SequenceSource::new(id, alphabet, IndexFn(f))
    }

    /// `head` followed by `period` repeated forever.
    pub fn eventually_periodic(
        id: impl Into<String>,
        alphabet: Alphabet,
        head: Vec<Symbol>,
        period: Vec<Symbol>,
    ) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidWord("empty period".into()));
        }
        alphabet.check_word(&head)?;
        alphabet.check_word(&period)?;
        Ok(SequenceSource::from_fn(id, alphabet, move |i| {
            if i < head.len() {
                head[i]
            } else {
                period[(i - head.len()) % period.len()]
            }
        }))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Same sequence under a different id; shares the buffer.
    pub fn renamed(&self, id: impl Into<String>) -> Self {
        SequenceSource { id: Arc::from(id.into()), ..self.clone() }
    }

    fn ensure(&self, len: usize) -> MutexGuard<'_, Memo> {
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        if memo.buf.len() < len {
            let target = len.max(memo.buf.len() * 2).max(MIN_CHUNK);
            let Memo { buf, gen } = &mut *memo;
            buf.reserve(target - buf.len());
            while buf.len() < target {
                let before = buf.len();
                gen.extend(buf);
                assert!(buf.len() > before, "generator for {} made no progress", self.id);
            }
        }
        memo
    }

    /// Symbol `a_i`, `i ≥ 1`.
    pub fn get(&self, i: usize) -> Symbol {
        assert!(i >= 1, "sequences are indexed from 1");
        self.ensure(i).buf[i - 1]
    }

    /// `a_1 … a_len`.
    pub fn prefix(&self, len: usize) -> Word {
        self.with_prefix(len, |p| Word::from(p))
    }

    /// `a_start … a_{start+len-1}`.
    pub fn window(&self, start: usize, len: usize) -> Word {
        assert!(start >= 1, "sequences are indexed from 1");
        let memo = self.ensure(start - 1 + len);
        Word::from(&memo.buf[start - 1..start - 1 + len])
    }

    /// Runs `f` on `a_1 … a_len` without copying.
    pub fn with_prefix<R>(&self, len: usize, f: impl FnOnce(&[Symbol]) -> R) -> R {
        let memo = self.ensure(len);
        f(&memo.buf[..len])
    }

    /// Digit values of `a_1 … a_len` (see [`Alphabet::digit_value`]).
    pub fn digit_values(&self, len: usize) -> Vec<i64> {
        let alphabet = self.alphabet.clone();
        self.with_prefix(len, |p| p.iter().map(|&s| alphabet.digit_value(s)).collect())
    }

    pub fn render_prefix(&self, len: usize) -> String {
        self.with_prefix(len, |p| self.alphabet.render(p))
    }

    pub fn buffered_len(&self) -> usize {
        self.memo.lock().unwrap_or_else(|e| e.into_inner()).buf.len()
    }
}

/// Result of [`max_power_at`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerBound {
    pub exponent: Exponent,
    /// The run reached the scan limit, so `exponent` is only a lower bound.
    pub truncated: bool,
}

/// Longest `m` such that `p[u_len..u_len+m]` has period `v_len`, scanning only
/// inside `p`. Requires `u_len + v_len <= p.len()`.
pub(crate) fn periodic_run(p: &[Symbol], u_len: usize, v_len: usize) -> usize {
    let mut m = v_len;
    while u_len + m < p.len() && p[u_len + m] == p[u_len + m - v_len] {
        m += 1;
    }
    m
}

/// Largest `w = m/v_len` such that `a_1…a_{u_len} · V^w` is a prefix of `a`
/// within the first `scan_limit` symbols, where `V = a_{u_len+1}…a_{u_len+v_len}`.
pub fn max_power_at(a: &SequenceSource, u_len: usize, v_len: usize, scan_limit: usize) -> Result<PowerBound> {
    if v_len == 0 {
        return Err(Error::InvalidArgument("|V| must be at least 1".into()));
    }
    if u_len + v_len > scan_limit {
        return Err(Error::InvalidArgument(format!("|U| + |V| = {} exceeds scan limit {scan_limit}", u_len + v_len)));
    }
    let m = a.with_prefix(scan_limit, |p| periodic_run(p, u_len, v_len));
    Ok(PowerBound { exponent: Exponent::new(m as u64, v_len as u64), truncated: u_len + m == scan_limit })
}

/// True iff `p` equals `a_1 … a_{|p|}`.
pub fn is_prefix(p: &[Symbol], a: &SequenceSource) -> bool {
    p.is_empty() || a.with_prefix(p.len(), |q| q == p)
}
