//! Morphisms of free monoids, fixed points and the structural predicates
//! (prolongable, uniform, erasing, recurrent) used by the witness builders.
//!
//! "Recurrent" follows the literal definition used for morphic numbers: every
//! letter that occurs in the fixed point occurs at least twice. This is weaker
//! than the usual "occurs infinitely often".

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Generator, SequenceSource, Symbol, Word};

/// A morphism from `source*` to `target*`, optionally carrying a preferred
/// start letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
    start: Option<Symbol>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "{} images given for {} source letters",
                images.len(),
                source.len()
            )));
        }
        for img in &images {
            target.check_word(img)?;
        }
        Ok(Morphism { source, target, images, start: None })
    }

    /// Morphism from an alphabet into itself, images written as words over
    /// that alphabet.
    pub fn endo(alphabet: Alphabet, images: &[&str]) -> Result<Self> {
        let words = images.iter().map(|s| alphabet.parse_word(s)).collect::<Result<Vec<_>>>()?;
        Morphism::new(alphabet.clone(), alphabet, words)
    }

    pub fn with_start(mut self, start: Symbol) -> Result<Self> {
        if !self.source.contains(start) {
            return Err(Error::InvalidArgument(format!("start letter {start} not in source alphabet")));
        }
        self.start = Some(start);
        Ok(self)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn start(&self) -> Option<Symbol> {
        self.start
    }

    pub fn image(&self, a: Symbol) -> &Word {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(|w| w.is_empty())
    }

    /// Common image length, if all images have the same length.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.images[0].len();
        self.images.iter().all(|w| w.len() == first).then_some(first)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).min().unwrap_or(0)
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn apply(&self, w: &[Symbol]) -> Word {
        w.iter().flat_map(|&c| self.images[c as usize].iter().copied()).collect()
    }

    /// `φ^n(w)`. Only meaningful for endomorphisms.
    pub fn apply_n(&self, w: &[Symbol], n: usize) -> Word {
        let mut cur = Word::from(w);
        for _ in 0..n {
            cur = self.apply(&cur);
        }
        cur
    }

    /// Letters whose iterated image is eventually empty, computed as a
    /// fixpoint: a letter is mortal when its image consists of mortal letters.
    pub fn mortal_letters(&self) -> Vec<bool> {
        let mut mortal = vec![false; self.source.len()];
        loop {
            let mut changed = false;
            for (a, img) in self.images.iter().enumerate() {
                if !mortal[a] && img.iter().all(|&c| mortal[c as usize]) {
                    mortal[a] = true;
                    changed = true;
                }
            }
            if !changed {
                return mortal;
            }
        }
    }

    /// Letters occurring in some `φ^n(x)`, `n ≥ 0`, for `x` in `seeds`.
    pub fn closure(&self, seeds: impl IntoIterator<Item = Symbol>) -> Vec<bool> {
        let mut seen = vec![false; self.source.len()];
        let mut stack: Vec<Symbol> = Vec::new();
        for s in seeds {
            if !seen[s as usize] {
                seen[s as usize] = true;
                stack.push(s);
            }
        }
        while let Some(s) = stack.pop() {
            for &c in self.images[s as usize].iter() {
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    stack.push(c);
                }
            }
        }
        seen
    }

    /// Parses the line-oriented morphism format:
    ///
    /// ```text
    /// source 0 1
    /// target 0 1        # optional, defaults to the source alphabet
    /// map 0 -> 01
    /// map 1 -> 0        # the empty image is written `eps`
    /// start 0           # optional
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut source: Option<Alphabet> = None;
        let mut target: Option<Alphabet> = None;
        let mut maps: Vec<(usize, String, String)> = Vec::new();
        let mut start: Option<(usize, String)> = None;
        let perr = |line: usize, msg: String| Error::Parse { line, msg };

        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "source" | "target" => {
                    let alpha = Alphabet::new(rest.split_whitespace()).map_err(|e| perr(line_no, e.to_string()))?;
                    let slot = if key == "source" { &mut source } else { &mut target };
                    if slot.replace(alpha).is_some() {
                        return Err(perr(line_no, format!("duplicate `{key}` line")));
                    }
                }
                "map" => {
                    let (lhs, rhs) = rest
                        .split_once("->")
                        .ok_or_else(|| perr(line_no, "expected `map <letter> -> <word>`".into()))?;
                    let lhs = lhs.trim();
                    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                        return Err(perr(line_no, format!("bad letter {lhs:?}")));
                    }
                    maps.push((line_no, lhs.to_string(), rhs.trim().to_string()));
                }
                "start" => {
                    if rest.is_empty() || rest.contains(char::is_whitespace) {
                        return Err(perr(line_no, "expected `start <letter>`".into()));
                    }
                    if start.replace((line_no, rest.to_string())).is_some() {
                        return Err(perr(line_no, "duplicate `start` line".into()));
                    }
                }
                other => return Err(perr(line_no, format!("unknown directive {other:?}"))),
            }
        }

        let last_line = text.lines().count().max(1);
        let source = source.ok_or_else(|| perr(last_line, "missing `source` line".into()))?;
        let target = target.unwrap_or_else(|| source.clone());
        let mut images: Vec<Option<Word>> = vec![None; source.len()];
        for (line_no, lhs, rhs) in maps {
            let a = source.symbol(&lhs).ok_or_else(|| perr(line_no, format!("{lhs:?} is not a source letter")))?;
            let img = target.parse_word(&rhs).map_err(|e| perr(line_no, e.to_string()))?;
            if images[a as usize].replace(img).is_some() {
                return Err(perr(line_no, format!("letter {lhs:?} mapped twice")));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(a, img)| {
                img.ok_or_else(|| perr(last_line, format!("no image for letter {:?}", source.token(a as Symbol))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = Morphism::new(source, target, images)?;
        if let Some((line_no, tok)) = start {
            let s =
                m.source.symbol(&tok).ok_or_else(|| perr(line_no, format!("start letter {tok:?} not in source")))?;
            m.start = Some(s);
        }
        Ok(m)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "source {}", self.source.tokens().join(" "));
        let _ = writeln!(out, "target {}", self.target.tokens().join(" "));
        for (a, img) in self.images.iter().enumerate() {
            let rhs = if img.is_empty() { "eps".to_string() } else { self.target.render(img) };
            let _ = writeln!(out, "map {} -> {}", self.source.token(a as Symbol), rhs);
        }
        if let Some(s) = self.start {
            let _ = writeln!(out, "start {}", self.source.token(s));
        }
        out
    }
}

/// `φ(a) = aW` with `W` non-empty and never erased by iteration.
pub fn is_prolongable(phi: &Morphism, a: Symbol) -> bool {
    if !phi.is_endomorphism() || !phi.source.contains(a) {
        return false;
    }
    let img = phi.image(a);
    if img.len() < 2 || img[0] != a {
        return false;
    }
    let mortal = phi.mortal_letters();
    img[1..].iter().any(|&c| !mortal[c as usize])
}

struct FixedPointGen {
    images: Vec<Vec<Symbol>>,
    start: Symbol,
    cursor: usize,
}

impl Generator for FixedPointGen {
    fn extend(&mut self, buf: &mut Vec<Symbol>) {
        if buf.is_empty() {
            buf.extend_from_slice(&self.images[self.start as usize]);
            self.cursor = 1;
            return;
        }
        // buf = φ(u_0 … u_{cursor-1}); prolongability keeps cursor < buf.len().
        loop {
            let c = buf[self.cursor];
            self.cursor += 1;
            let img = &self.images[c as usize];
            if !img.is_empty() {
                buf.extend_from_slice(img);
                return;
            }
        }
    }
}

/// The fixed point of `φ` starting with `a`, generated lazily.
pub fn fixed_point(phi: &Morphism, a: Symbol) -> Result<SequenceSource> {
    if !is_prolongable(phi, a) {
        return Err(Error::NotProlongable(format!(
            "letter {:?} does not start a non-trivial fixed point",
            phi.source.token(a)
        )));
    }
    let gen = FixedPointGen { images: phi.images.iter().map(|w| w.to_vec()).collect(), start: a, cursor: 0 };
    let id = format!("fixed-point({})", phi.source.token(a));
    Ok(SequenceSource::new(id, phi.source.clone(), gen))
}

/// Fixed point from the morphism's declared start letter, or the first
/// prolongable letter.
pub fn default_fixed_point(phi: &Morphism) -> Result<SequenceSource> {
    let start = match phi.start {
        Some(s) => s,
        None => (0..phi.source.len() as Symbol)
            .find(|&a| is_prolongable(phi, a))
            .ok_or_else(|| Error::NotProlongable("no prolongable letter".into()))?,
    };
    fixed_point(phi, start)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceStatus {
    Recurrent,
    /// This letter occurs exactly once in the whole fixed point.
    NotRecurrent(Symbol),
    Undetermined,
}

/// Three-valued recurrence check on `prefix(scan_limit)` of the fixed point.
///
/// `NotRecurrent(x)` is certified: `x` occurs once, at position `i`; the
/// image of `u_0 … u_i` fits inside the scanned prefix, so every later symbol
/// descends from a letter of `u_{i+1} …` inside the prefix, and `x` is not
/// reachable from those letters. `Recurrent` is certified when every letter
/// reachable from the start letter is seen at least twice.
pub fn recurrence_status(phi: &Morphism, a: Symbol, scan_limit: usize) -> RecurrenceStatus {
    let Ok(u) = fixed_point(phi, a) else {
        return RecurrenceStatus::Undetermined;
    };
    let n_letters = phi.source.len();
    let prefix = u.prefix(scan_limit);
    let mut count = vec![0usize; n_letters];
    let mut first = vec![usize::MAX; n_letters];
    for (i, &c) in prefix.iter().enumerate() {
        count[c as usize] += 1;
        if first[c as usize] == usize::MAX {
            first[c as usize] = i;
        }
    }

    let mut once: Vec<Symbol> = (0..n_letters as Symbol).filter(|&c| count[c as usize] == 1).collect();
    once.sort_by_key(|&c| first[c as usize]);
    for x in once {
        let pos = first[x as usize];
        let covered: usize = prefix[..=pos].iter().map(|&c| phi.image(c).len()).sum();
        if covered > prefix.len() {
            continue;
        }
        let later = phi.closure(prefix[pos + 1..].iter().copied());
        if !later[x as usize] {
            return RecurrenceStatus::NotRecurrent(x);
        }
    }

    let reachable = phi.closure([a]);
    if (0..n_letters).all(|c| !reachable[c] || count[c] >= 2) {
        RecurrenceStatus::Recurrent
    } else {
        RecurrenceStatus::Undetermined
    }
}

/// Exact image lengths `|φ^n(j)|` for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTable {
    rows: Vec<Vec<BigUint>>,
}

impl GrowthTable {
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    pub fn len_of(&self, n: usize, letter: Symbol) -> &BigUint {
        &self.rows[n][letter as usize]
    }

    pub fn row_max(&self, n: usize) -> &BigUint {
        self.rows[n].iter().max().expect("alphabet is non-empty")
    }

    /// Letter of maximal growth at row `n`; ties go to the earliest letter.
    pub fn argmax(&self, n: usize) -> Symbol {
        let max = self.row_max(n);
        self.rows[n].iter().position(|x| x == max).expect("max is attained") as Symbol
    }

    pub fn achieves_max(&self, n: usize, letter: Symbol) -> bool {
        self.len_of(n, letter) == self.row_max(n)
    }
}

/// Lengths via the incidence recurrence `|φ^{n+1}(j)| = Σ_{c ∈ φ(j)} |φ^n(c)|`.
pub fn growth_table(phi: &Morphism, depth: usize) -> GrowthTable {
    let mut rows = vec![vec![BigUint::one(); phi.source.len()]];
    for n in 0..depth {
        let prev = &rows[n];
        let next =
            phi.images.iter().map(|img| img.iter().fold(BigUint::zero(), |acc, &c| acc + &prev[c as usize])).collect();
        rows.push(next);
    }
    GrowthTable { rows }
}

struct ImageGen {
    images: Vec<Vec<Symbol>>,
    upstream: SequenceSource,
    pos: usize,
}

/// Consecutive erased letters tolerated before generation is declared stuck.
const STALL_LIMIT: usize = 1 << 24;

impl Generator for ImageGen {
    fn extend(&mut self, buf: &mut Vec<Symbol>) {
        let mut skipped = 0usize;
        loop {
            self.pos += 1;
            let img = &self.images[self.upstream.get(self.pos) as usize];
            if !img.is_empty() {
                buf.extend_from_slice(img);
                return;
            }
            skipped += 1;
            assert!(skipped < STALL_LIMIT, "morphic image stalled: {STALL_LIMIT} consecutive letters erased");
        }
    }
}

/// Scan length used to reject erasing images that look finite.
pub const IMAGE_SCAN: usize = 100_000;

/// `ψ(u_1) ψ(u_2) …`, generated lazily.
///
/// An erasing `ψ` is accepted only if letters with a non-empty image keep
/// appearing in the second half of `u`'s first [`IMAGE_SCAN`] symbols;
/// otherwise the image is reported as finite.
pub fn morphic_image(psi: &Morphism, u: &SequenceSource) -> Result<SequenceSource> {
    if psi.source != *u.alphabet() {
        return Err(Error::InvalidArgument(format!(
            "morphism source {:?} does not match sequence alphabet {:?}",
            psi.source.tokens(),
            u.alphabet().tokens()
        )));
    }
    if psi.is_erasing() {
        let survives =
            u.with_prefix(IMAGE_SCAN, |p| p[IMAGE_SCAN / 2..].iter().any(|&c| !psi.images[c as usize].is_empty()));
        if !survives {
            return Err(Error::FiniteImage(format!(
                "no surviving letter of {} in positions {}..{}",
                u.id(),
                IMAGE_SCAN / 2,
                IMAGE_SCAN
            )));
        }
    }
    let gen = ImageGen { images: psi.images.iter().map(|w| w.to_vec()).collect(), upstream: u.clone(), pos: 0 };
    Ok(SequenceSource::new(format!("image({})", u.id()), psi.target.clone(), gen))
}
