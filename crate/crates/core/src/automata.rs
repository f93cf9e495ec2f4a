//! Deterministic k-automata with output, read least-significant digit first,
//! and their conversion to a uniform morphism plus a coding.
//!
//! The sequence generated by an automaton is `a_n = τ(δ(q₀, W_n))` for
//! `n ≥ 0`, where `W_n` lists the base-k digits of `n` from the least
//! significant one and `W_0 = "0"`. As a [`SequenceSource`] (indexed from 1)
//! the default alignment puts `a_0` at index 1; [`Alignment::FromOne`] drops
//! `a_0` so that index `i` holds `a_i`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::words::{Alphabet, SequenceSource, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KAutomaton {
    k: u32,
    states: Alphabet,
    initial: Symbol,
    outputs: Alphabet,
    tau: Vec<Symbol>,
    // delta[state][digit]
    delta: Vec<Vec<Symbol>>,
}

impl KAutomaton {
    pub fn new(
        k: u32,
        states: Alphabet,
        initial: Symbol,
        outputs: Alphabet,
        tau: Vec<Symbol>,
        delta: Vec<Vec<Symbol>>,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
        }
        if !states.contains(initial) {
            return Err(Error::InvalidArgument("initial state not in state set".into()));
        }
        if tau.len() != states.len() || delta.len() != states.len() {
            return Err(Error::InvalidArgument("output and transition tables must cover every state".into()));
        }
        outputs.check_word(&tau)?;
        for row in &delta {
            if row.len() != k as usize {
                return Err(Error::InvalidArgument(format!("transition row has {} digits, expected {k}", row.len())));
            }
            states.check_word(row)?;
        }
        Ok(KAutomaton { k, states, initial, outputs, tau, delta })
    }

    /// The two-state Thue–Morse automaton.
    pub fn thue_morse() -> Self {
        KAutomaton::new(
            2,
            Alphabet::new(["q0", "q1"]).unwrap(),
            0,
            Alphabet::digits(2),
            vec![0, 1],
            vec![vec![0, 1], vec![1, 0]],
        )
        .expect("valid automaton")
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn states(&self) -> &Alphabet {
        &self.states
    }

    pub fn initial(&self) -> Symbol {
        self.initial
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn output(&self, q: Symbol) -> Symbol {
        self.tau[q as usize]
    }

    pub fn transition(&self, q: Symbol, digit: u32) -> Symbol {
        self.delta[q as usize][digit as usize]
    }

    /// `δ(q, W)` for a digit word `W`, read left to right.
    pub fn read(&self, q: Symbol, digits: &[u32]) -> Symbol {
        digits.iter().fold(q, |s, &d| self.transition(s, d))
    }

    /// Parses the line-oriented automaton format:
    ///
    /// ```text
    /// k 2
    /// states q0 q1
    /// initial q0
    /// output q0:0 q1:1
    /// delta q0 0 q0      # one line per (state, digit) pair, all required
    /// ```
    ///
    /// An optional `alphabet <symbols>` line fixes the order of the output
    /// alphabet; without it the order is numeric when every output parses as
    /// an integer and first-appearance otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let mut k: Option<u32> = None;
        let mut states: Option<Alphabet> = None;
        let mut initial: Option<(usize, String)> = None;
        let mut alphabet: Option<Alphabet> = None;
        let mut outputs: Vec<(usize, String, String)> = Vec::new();
        let mut deltas: Vec<(usize, String, String, String)> = Vec::new();

        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap_or_default();
            let args: Vec<&str> = parts.collect();
            match key {
                "k" => {
                    let [v] = args[..] else {
                        return Err(perr(line_no, "expected `k <int>`".into()));
                    };
                    let v: u32 = v.parse().map_err(|_| perr(line_no, format!("bad base {v:?}")))?;
                    if v < 2 {
                        return Err(perr(line_no, format!("k must be at least 2, got {v}")));
                    }
                    if k.replace(v).is_some() {
                        return Err(perr(line_no, "duplicate `k` line".into()));
                    }
                }
                "states" => {
                    let a = Alphabet::new(args.iter().copied()).map_err(|e| perr(line_no, e.to_string()))?;
                    if states.replace(a).is_some() {
                        return Err(perr(line_no, "duplicate `states` line".into()));
                    }
                }
                "initial" => {
                    let [v] = args[..] else {
                        return Err(perr(line_no, "expected `initial <state>`".into()));
                    };
                    if initial.replace((line_no, v.to_string())).is_some() {
                        return Err(perr(line_no, "duplicate `initial` line".into()));
                    }
                }
                "alphabet" => {
                    let a = Alphabet::new(args.iter().copied()).map_err(|e| perr(line_no, e.to_string()))?;
                    if alphabet.replace(a).is_some() {
                        return Err(perr(line_no, "duplicate `alphabet` line".into()));
                    }
                }
                "output" => {
                    if args.is_empty() {
                        return Err(perr(line_no, "expected `output <state>:<symbol> …`".into()));
                    }
                    for pair in args {
                        let (q, s) = pair
                            .split_once(':')
                            .filter(|(q, s)| !q.is_empty() && !s.is_empty())
                            .ok_or_else(|| perr(line_no, format!("bad output pair {pair:?}")))?;
                        outputs.push((line_no, q.to_string(), s.to_string()));
                    }
                }
                "delta" => {
                    let [q, d, r] = args[..] else {
                        return Err(perr(line_no, "expected `delta <state> <digit> <state>`".into()));
                    };
                    deltas.push((line_no, q.to_string(), d.to_string(), r.to_string()));
                }
                other => return Err(perr(line_no, format!("unknown directive {other:?}"))),
            }
        }

        let end = text.lines().count().max(1);
        let k = k.ok_or_else(|| perr(end, "missing `k` line".into()))?;
        let states = states.ok_or_else(|| perr(end, "missing `states` line".into()))?;
        let (init_line, init_tok) = initial.ok_or_else(|| perr(end, "missing `initial` line".into()))?;
        let initial =
            states.symbol(&init_tok).ok_or_else(|| perr(init_line, format!("unknown initial state {init_tok:?}")))?;

        let outputs_alpha = match alphabet {
            Some(a) => a,
            None => {
                let mut seen: Vec<String> = Vec::new();
                for (_, _, s) in &outputs {
                    if !seen.contains(s) {
                        seen.push(s.clone());
                    }
                }
                if !seen.is_empty() && seen.iter().all(|s| s.parse::<i64>().is_ok()) {
                    seen.sort_by_key(|s| s.parse::<i64>().unwrap());
                }
                Alphabet::new(seen).map_err(|e| perr(end, e.to_string()))?
            }
        };

        let mut tau: Vec<Option<Symbol>> = vec![None; states.len()];
        for (line_no, q, s) in outputs {
            let qi = states.symbol(&q).ok_or_else(|| perr(line_no, format!("unknown state {q:?}")))?;
            let si = outputs_alpha.symbol(&s).ok_or_else(|| perr(line_no, format!("output {s:?} not in alphabet")))?;
            if tau[qi as usize].replace(si).is_some() {
                return Err(perr(line_no, format!("state {q:?} has two outputs")));
            }
        }
        let tau = tau
            .into_iter()
            .enumerate()
            .map(|(q, s)| s.ok_or_else(|| perr(end, format!("state {:?} has no output", states.token(q as Symbol)))))
            .collect::<Result<Vec<_>>>()?;

        let mut delta: Vec<Vec<Option<Symbol>>> = vec![vec![None; k as usize]; states.len()];
        for (line_no, q, d, r) in deltas {
            let qi = states.symbol(&q).ok_or_else(|| perr(line_no, format!("unknown state {q:?}")))?;
            let ri = states.symbol(&r).ok_or_else(|| perr(line_no, format!("unknown state {r:?}")))?;
            let di: u32 = d
                .parse()
                .ok()
                .filter(|&x| x < k)
                .ok_or_else(|| perr(line_no, format!("digit {d:?} outside 0..{k}")))?;
            if delta[qi as usize][di as usize].replace(ri).is_some() {
                return Err(perr(line_no, format!("transition ({q}, {d}) defined twice")));
            }
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(q, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(d, r)| {
                        r.ok_or_else(|| {
                            perr(end, format!("transition ({}, {d}) is missing", states.token(q as Symbol)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        KAutomaton::new(k, states, initial, outputs_alpha, tau, delta)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k {}", self.k);
        let _ = writeln!(out, "states {}", self.states.tokens().join(" "));
        let _ = writeln!(out, "initial {}", self.states.token(self.initial));
        let _ = writeln!(out, "alphabet {}", self.outputs.tokens().join(" "));
        let pairs: Vec<String> = (0..self.states.len())
            .map(|q| format!("{}:{}", self.states.token(q as Symbol), self.outputs.token(self.tau[q])))
            .collect();
        let _ = writeln!(out, "output {}", pairs.join(" "));
        for (q, row) in self.delta.iter().enumerate() {
            for (d, &r) in row.iter().enumerate() {
                let _ = writeln!(out, "delta {} {} {}", self.states.token(q as Symbol), d, self.states.token(r));
            }
        }
        out
    }
}

/// Base-k digits of `n`, least significant first; `0` is the single digit `0`.
pub fn lsb_digits(mut n: u64, k: u32) -> Vec<u32> {
    if n == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % k as u64) as u32);
        n /= k as u64;
    }
    out
}

/// `a_n = τ(δ(q₀, W_n))`.
pub fn run(a: &KAutomaton, n: u64) -> Symbol {
    let mut q = a.initial;
    let mut n_left = n;
    loop {
        q = a.transition(q, (n_left % a.k as u64) as u32);
        n_left /= a.k as u64;
        if n_left == 0 {
            break;
        }
    }
    a.output(q)
}

/// How the 0-indexed automatic sequence is laid onto 1-indexed positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alignment {
    /// Index `i` holds `a_{i-1}`.
    #[default]
    FromZero,
    /// Index `i` holds `a_i`.
    FromOne,
}

impl Alignment {
    pub fn offset(self) -> u64 {
        match self {
            Alignment::FromZero => 0,
            Alignment::FromOne => 1,
        }
    }
}

/// The automatic sequence with `a_0` at index 1.
pub fn generate(a: &KAutomaton) -> SequenceSource {
    generate_aligned(a, Alignment::FromZero)
}

pub fn generate_aligned(a: &KAutomaton, alignment: Alignment) -> SequenceSource {
    let aut = a.clone();
    let off = alignment.offset();
    SequenceSource::from_fn(format!("automaton(k={})", a.k), a.outputs.clone(), move |i| run(&aut, i as u64 + off))
}

/// A uniform morphism with a prolongable start letter and a letter-to-letter
/// coding whose image of the fixed point is the automatic sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformDecomposition {
    pub sigma: Morphism,
    pub coding: Morphism,
    /// True when the automaton had to be reversed to be read most
    /// significant digit first.
    pub reversed: bool,
}

impl UniformDecomposition {
    pub fn start(&self) -> Symbol {
        self.sigma.start().expect("decomposition always carries a start letter")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum RevState {
    // Only leading zeros read so far.
    Init,
    // q ↦ τ(δ(q, reverse of the digits read so far)).
    Fun(Vec<Symbol>),
}

/// Builds the morphism-plus-coding form of `a`.
///
/// The fixed point of `σ(q) = δ(q,0)…δ(q,k-1)` reads digits most significant
/// first. When that machine and `a` (which reads least significant first)
/// produce the same sequence, checked exactly by a product search, this
/// direct form over the automaton's own states is returned. Otherwise the
/// reversed machine is used: its states are the maps `q ↦ τ(δ(q, x^R))`,
/// with transitions `g ↦ g ∘ δ_c`.
pub fn to_uniform_morphism(a: &KAutomaton) -> Result<UniformDecomposition> {
    if a.transition(a.initial, 0) != a.initial {
        return Err(Error::NotProlongable(format!(
            "δ({}, 0) ≠ {}; normalize the automaton so the initial state is fixed by 0",
            a.states.token(a.initial),
            a.states.token(a.initial)
        )));
    }
    let k = a.k as usize;

    // Reversed machine, explored breadth first from its initial state.
    let tau = a.tau.clone();
    let compose = |g: &[Symbol], c: u32| -> Vec<Symbol> {
        (0..a.states.len()).map(|q| g[a.transition(q as Symbol, c) as usize]).collect()
    };
    let tau0 = compose(&tau, 0);
    let root = if tau0 == tau { RevState::Fun(tau.clone()) } else { RevState::Init };
    let mut ids: HashMap<RevState, usize> = HashMap::new();
    let mut nodes: Vec<RevState> = Vec::new();
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(root.clone(), 0);
    nodes.push(root);
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for c in 0..a.k {
            let next = match &nodes[i] {
                RevState::Init if c == 0 => RevState::Init,
                RevState::Init => RevState::Fun(compose(&tau, c)),
                RevState::Fun(g) => RevState::Fun(compose(g, c)),
            };
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                nodes.push(next);
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            row.push(id);
        }
        trans.push(row);
    }
    let a0 = a.output(a.transition(a.initial, 0));
    let rev_out: Vec<Symbol> = nodes
        .iter()
        .map(|n| match n {
            RevState::Init => a0,
            RevState::Fun(g) => g[a.initial as usize],
        })
        .collect();

    // Product search: direct machine (states of a) against reversed machine.
    let mut seen = vec![vec![false; nodes.len()]; a.states.len()];
    let mut stack = vec![(a.initial, 0usize)];
    seen[a.initial as usize][0] = true;
    let mut equivalent = true;
    while let Some((q, r)) = stack.pop() {
        if a.output(q) != rev_out[r] {
            equivalent = false;
            break;
        }
        for c in 0..a.k {
            let (q2, r2) = (a.transition(q, c), trans[r][c as usize]);
            if !seen[q2 as usize][r2] {
                seen[q2 as usize][r2] = true;
                stack.push((q2, r2));
            }
        }
    }

    if equivalent {
        let images: Vec<Word> = a.delta.iter().map(|row| Word::from(row.clone())).collect();
        let sigma = Morphism::new(a.states.clone(), a.states.clone(), images)?.with_start(a.initial)?;
        let coding =
            Morphism::new(a.states.clone(), a.outputs.clone(), a.tau.iter().map(|&s| Word::from(vec![s])).collect())?;
        return Ok(UniformDecomposition { sigma, coding, reversed: false });
    }

    let names = Alphabet::new((0..nodes.len()).map(|i| format!("s{i}")))?;
    let images: Vec<Word> = trans.iter().map(|row| row.iter().map(|&r| r as Symbol).collect()).collect();
    let sigma = Morphism::new(names.clone(), names.clone(), images)?.with_start(0)?;
    let coding = Morphism::new(names, a.outputs.clone(), rev_out.iter().map(|&s| Word::from(vec![s])).collect())?;
    Ok(UniformDecomposition { sigma, coding, reversed: true })
}
