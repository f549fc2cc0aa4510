//! Deciding whether `cap(D) > 0`.
//!
//! The capacity is positive iff some word over `{-, 0, +}` starts with `0^m`,
//! ends with `+0^(m-1)` and contains no pattern of `D ∪ -D`. Such words are
//! paths in the Aho-Corasick automaton of `D ∪ -D ∪ {+0^(m-1)}` once every
//! state that signals a forbidden occurrence is deleted, so the question is
//! a reachability query on a graph with at most `2M + m + 1` states.
//!
//! With `±` allowed in patterns the same question is NP-hard; this module
//! also builds the reduction from Not-All-Equal 3SAT and a brute-force
//! satisfiability oracle to test it against.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::{
    expand_extended, DiffWord, Pattern, PatternSet, Symbol, DEFAULT_EXPANSION_BUDGET,
};

fn symbol_index(s: Symbol) -> usize {
    match s {
        Symbol::Minus => 0,
        Symbol::Zero => 1,
        Symbol::Plus => 2,
        Symbol::PlusMinus => panic!("automata run over plain symbols only"),
    }
}

/// Aho-Corasick automaton over `{-, 0, +}` with a completed transition table.
#[derive(Clone, Debug)]
pub struct PatternAutomaton {
    labels: Vec<Vec<Symbol>>,
    goto: Vec<[usize; 3]>,
    /// The state's label is itself a pattern.
    accepting: Vec<bool>,
    /// Some suffix of the state's label is a pattern.
    output: Vec<bool>,
    removed: Vec<bool>,
}

impl PatternAutomaton {
    pub const ROOT: usize = 0;

    /// Builds the trie of all pattern prefixes and completes every
    /// transition to the longest suffix that is again a prefix. `±` patterns
    /// are expanded first.
    pub fn build(p: &PatternSet) -> Self {
        let plain = expand_extended(p);
        let mut labels: Vec<Vec<Symbol>> = vec![Vec::new()];
        let mut children: Vec<[Option<usize>; 3]> = vec![[None; 3]];
        let mut accepting = vec![false];
        for pattern in plain.patterns() {
            let mut s = Self::ROOT;
            for &sym in pattern.symbols() {
                let a = symbol_index(sym);
                s = match children[s][a] {
                    Some(t) => t,
                    None => {
                        let mut label = labels[s].clone();
                        label.push(sym);
                        labels.push(label);
                        children.push([None; 3]);
                        accepting.push(false);
                        let t = labels.len() - 1;
                        children[s][a] = Some(t);
                        t
                    }
                };
            }
            accepting[s] = true;
        }

        let n = labels.len();
        let mut goto = vec![[Self::ROOT; 3]; n];
        let mut fail = vec![Self::ROOT; n];
        let mut output = accepting.clone();
        let mut queue = VecDeque::new();
        for a in 0..3 {
            if let Some(t) = children[Self::ROOT][a] {
                goto[Self::ROOT][a] = t;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            output[s] |= output[fail[s]];
            for a in 0..3 {
                match children[s][a] {
                    Some(t) => {
                        fail[t] = goto[fail[s]][a];
                        goto[s][a] = t;
                        queue.push_back(t);
                    }
                    None => goto[s][a] = goto[fail[s]][a],
                }
            }
        }
        PatternAutomaton {
            labels,
            goto,
            accepting,
            output,
            removed: vec![false; n],
        }
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, state: usize) -> &[Symbol] {
        &self.labels[state]
    }

    pub fn find_state(&self, label: &[Symbol]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    /// True when entering this state means the text now ends with a pattern.
    pub fn signals_match(&self, state: usize) -> bool {
        self.output[state]
    }

    pub fn is_removed(&self, state: usize) -> bool {
        self.removed[state]
    }

    pub fn step(&self, state: usize, symbol: Symbol) -> usize {
        self.goto[state][symbol_index(symbol)]
    }

    pub fn run(&self, text: &[Symbol]) -> usize {
        text.iter().fold(Self::ROOT, |s, &a| self.step(s, a))
    }

    /// True iff `text` contains some pattern.
    pub fn accepts(&self, text: &[Symbol]) -> bool {
        let mut s = Self::ROOT;
        for &a in text {
            s = self.step(s, a);
            if self.output[s] {
                return true;
            }
        }
        false
    }

    /// Deletes every state that signals a pattern occurrence, except `keep`.
    pub fn remove_matching_except(&mut self, keep: usize) {
        for s in 0..self.state_count() {
            self.removed[s] = self.output[s] && s != keep;
        }
    }

    /// Breadth-first shortest path between two live states, trying symbols
    /// in the order `-, 0, +`.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<Symbol>> {
        if self.removed[from] || self.removed[to] {
            return None;
        }
        let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            for sym in Symbol::PLAIN {
                let t = self.step(s, sym);
                if self.removed[t] || seen[t] {
                    continue;
                }
                seen[t] = true;
                parent[t] = Some((s, sym));
                if t == to {
                    let mut path = Vec::new();
                    let mut cur = t;
                    while let Some((p, a)) = parent[cur] {
                        path.push(a);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(t);
            }
        }
        None
    }
}

pub fn build_automaton(p: &PatternSet) -> PatternAutomaton {
    PatternAutomaton::build(p)
}

/// Why a set has, or lacks, positive capacity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// A pattern consisting of zeros rules out the mandatory prefix `0^m`.
    AllZeroPattern(String),
    /// A pattern of `D ∪ -D` occurs in the mandatory suffix `+0^(m-1)`.
    SuffixBlocked(String),
    /// No path from `q_{0^m}` to `q_{+0^(m-1)}` survives pruning.
    Unreachable,
    /// A shortest admissible word.
    Admissible(String),
}

/// Outcome of the automaton-based positivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub positive: bool,
    pub verdict: Verdict,
    /// Number of automaton states (0 when a pre-check decided).
    pub states: usize,
}

impl PositivityReport {
    pub fn word(&self) -> Option<DiffWord> {
        match &self.verdict {
            Verdict::Admissible(w) => Some(w.parse().expect("admissible words are plain")),
            _ => None,
        }
    }
}

/// Runs the full positivity analysis on a plain (or expanded) set.
pub fn analyze_positivity(d: &PatternSet) -> PositivityReport {
    let d = expand_extended(d);
    let m = d.m();
    if let Some(p) = d.patterns().iter().find(|p| p.is_all_zero()) {
        return PositivityReport {
            positive: false,
            verdict: Verdict::AllZeroPattern(p.to_string()),
            states: 0,
        };
    }
    let mut suffix = vec![Symbol::Plus];
    suffix.extend(std::iter::repeat(Symbol::Zero).take(m - 1));
    let closure = d.symmetric_closure();
    if let Some(p) = closure.patterns().iter().find(|p| p.occurs_in(&suffix)) {
        return PositivityReport {
            positive: false,
            verdict: Verdict::SuffixBlocked(p.to_string()),
            states: 0,
        };
    }

    let suffix_pattern = Pattern::new(suffix.clone()).expect("non-empty");
    let all = PatternSet::new(
        closure
            .patterns()
            .iter()
            .cloned()
            .chain(std::iter::once(suffix_pattern)),
    )
    .expect("non-empty");
    let mut automaton = PatternAutomaton::build(&all);
    let target = automaton
        .find_state(&suffix)
        .expect("suffix pattern is in the trie");
    automaton.remove_matching_except(target);
    let prefix = vec![Symbol::Zero; m];
    let start = automaton.run(&prefix);
    let states = automaton.state_count();
    match automaton.shortest_path(start, target) {
        Some(path) => {
            let mut word = prefix;
            word.extend(path);
            let word = DiffWord::new(word).expect("plain symbols");
            PositivityReport {
                positive: true,
                verdict: Verdict::Admissible(word.to_string()),
                states,
            }
        }
        None => PositivityReport {
            positive: false,
            verdict: Verdict::Unreachable,
            states,
        },
    }
}

/// `cap(D) > 0`, decided in polynomial time. Sets containing `±` are expanded first.
pub fn decide_positive(d: &PatternSet) -> bool {
    analyze_positivity(d).positive
}

/// A shortest admissible word, or `None` exactly when the capacity is zero.
pub fn shortest_admissible(d: &PatternSet) -> Option<DiffWord> {
    analyze_positivity(d).word()
}

/// Positivity for sets over `{-, 0, +, ±}`; exponential in the number of `±`.
pub fn decide_positive_extended(d: &PatternSet) -> Result<bool> {
    decide_positive_extended_with_budget(d, DEFAULT_EXPANSION_BUDGET)
}

pub fn decide_positive_extended_with_budget(d: &PatternSet, budget: usize) -> Result<bool> {
    let plain = d.expand_within(budget)?;
    Ok(decide_positive(&plain))
}

/// A literal `x_var` or its negation; variables are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: usize, negated: bool) -> Self {
        Literal { var, negated }
    }

    fn from_dimacs(x: i64) -> Self {
        Literal {
            var: x.unsigned_abs() as usize,
            negated: x < 0,
        }
    }

    fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    fn value(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// A Not-All-Equal 3SAT instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nae3SatInstance {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Nae3SatInstance {
    /// Validates variable indices and rejects clauses that mention a variable twice.
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            for l in c {
                if l.var == 0 || l.var > num_vars {
                    return Err(Error::InvalidArgument(format!(
                        "clause {}: variable {} outside 1..={num_vars}",
                        i + 1,
                        l.var
                    )));
                }
            }
            if c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var {
                return Err(Error::InvalidArgument(format!(
                    "clause {} repeats a variable",
                    i + 1
                )));
            }
        }
        Ok(Nae3SatInstance { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Parses DIMACS CNF (`p cnf <vars> <clauses>`), requiring exactly three
    /// literals per clause.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let parse_err = |msg: String| Error::Parse { line: idx + 1, msg };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 4 || fields[1] != "cnf" {
                    return Err(parse_err(format!("malformed header {line:?}")));
                }
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| parse_err(format!("bad number {s:?}")))
                };
                header = Some((num(fields[2])?, num(fields[3])?));
                continue;
            }
            if header.is_none() {
                return Err(parse_err("clause before the `p cnf` header".into()));
            }
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| parse_err(format!("bad literal {tok:?}")))?;
                if x == 0 {
                    if current.len() != 3 {
                        return Err(parse_err(format!(
                            "clause {} has {} literals, expected 3",
                            clauses.len() + 1,
                            current.len()
                        )));
                    }
                    clauses.push([current[0], current[1], current[2]]);
                    current.clear();
                } else {
                    current.push(Literal::from_dimacs(x));
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing `p cnf` header".into(),
        })?;
        if !current.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: "last clause is not terminated by 0".into(),
            });
        }
        if clauses.len() != count {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header announces {count} clauses, found {}", clauses.len()),
            });
        }
        Nae3SatInstance::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!(
                "{} {} {} 0\n",
                c[0].to_dimacs(),
                c[1].to_dimacs(),
                c[2].to_dimacs()
            ));
        }
        s
    }

    /// True iff every clause has a true and a false literal under `assignment`.
    pub fn is_nae_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            let t = c.iter().filter(|l| l.value(assignment)).count();
            t == 1 || t == 2
        })
    }
}

/// Largest instance the exhaustive oracle accepts.
pub const MAX_BRUTE_VARS: usize = 24;

/// Exhaustive search for a not-all-equal assignment.
pub fn nae3sat_solve(inst: &Nae3SatInstance) -> Result<Option<Vec<bool>>> {
    let n = inst.num_vars;
    if n > MAX_BRUTE_VARS {
        return Err(Error::InvalidArgument(format!(
            "{n} variables exceed the exhaustive limit of {MAX_BRUTE_VARS}"
        )));
    }
    for mask in 0u32..1 << n {
        let assignment: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if inst.is_nae_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

pub fn nae3sat_brute(inst: &Nae3SatInstance) -> Result<bool> {
    nae3sat_solve(inst).map(|a| a.is_some())
}

/// Builds a pattern set over `{-, 0, +, ±}` with positive capacity iff the
/// instance is NAE-satisfiable.
///
/// With `m` variables the set holds the separators `0 ±^k 0` for
/// `k = 1..m-1`, which force nonzero runs between zeros to have length at
/// least `m`, followed by two length-`m` patterns per clause: `±` everywhere
/// except `+`/`-` at the clause's positive/negated variables, and its
/// negation.
pub fn reduce_nae3sat(inst: &Nae3SatInstance) -> Result<PatternSet> {
    let m = inst.num_vars;
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "the reduction needs at least 3 variables, got {m}"
        )));
    }
    let mut patterns = Vec::with_capacity(m - 1 + 2 * inst.clauses.len());
    for k in 1..m {
        let mut p = vec![Symbol::Zero];
        p.extend(std::iter::repeat(Symbol::PlusMinus).take(k));
        p.push(Symbol::Zero);
        patterns.push(Pattern::new(p)?);
    }
    for c in &inst.clauses {
        let mut p = vec![Symbol::PlusMinus; m];
        for l in c {
            p[l.var - 1] = if l.negated { Symbol::Minus } else { Symbol::Plus };
        }
        let p = Pattern::new(p)?;
        let neg = p.negate();
        patterns.push(p);
        patterns.push(neg);
    }
    PatternSet::new(patterns)
}

/// Checks the automaton's behaviour on `text` against a naive scan; used by tests and the CLI self-checks.
pub fn naive_contains(p: &PatternSet, text: &[Symbol]) -> bool {
    p.patterns().iter().any(|q| q.occurs_in(text))
}

/// Counts states per label length; handy for reporting.
pub fn depth_histogram(a: &PatternAutomaton) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for s in 0..a.state_count() {
        *h.entry(a.label(s).len()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::avoids;

    fn set(s: &str) -> PatternSet {
        PatternSet::from_list(s).unwrap()
    }

    fn syms(s: &str) -> Vec<Symbol> {
        s.parse::<DiffWord>().unwrap().symbols().to_vec()
    }

    #[test]
    fn transitions_follow_longest_suffix() {
        let a = build_automaton(&set("+-0 -0+"));
        let s = a.run(&syms("+-"));
        assert_eq!(a.label(s), syms("+-").as_slice());
        // "+-" then "+" : longest suffix of "+-+" that is a prefix is "+"
        let t = a.step(s, Symbol::Plus);
        assert_eq!(a.label(t), syms("+").as_slice());
        // "+-" then "0" completes the first pattern
        let u = a.step(s, Symbol::Zero);
        assert!(a.is_accepting(u));
        // "-0" then "+" completes the second
        assert!(a.accepts(&syms("0-0+")));
        assert!(!a.accepts(&syms("+-+-+")));
    }

    #[test]
    fn output_includes_proper_suffixes() {
        // "0+0" contains "+" before reaching any full-label state of the long pattern
        let a = build_automaton(&set("0+00 +"));
        let s = a.run(&syms("0+"));
        assert!(!a.is_accepting(s));
        assert!(a.signals_match(s));
    }

    #[test]
    fn single_chain_trie() {
        for m in 1..6 {
            let p = format!("+{}", "0".repeat(m - 1));
            assert_eq!(build_automaton(&set(&p)).state_count(), m + 1);
        }
    }

    #[test]
    fn zero_capacity_sets() {
        for m in 2..=6 {
            let zp = format!("{}+", "0".repeat(m - 1));
            assert!(!decide_positive(&set(&zp)), "{zp}");
            let z = "0".repeat(m);
            assert!(matches!(analyze_positivity(&set(&z)).verdict, Verdict::AllZeroPattern(_)));
            let pz = format!("+{}", "0".repeat(m - 1));
            assert!(matches!(analyze_positivity(&set(&pz)).verdict, Verdict::SuffixBlocked(_)));
            let mz = format!("-{}", "0".repeat(m - 1));
            assert!(!decide_positive(&set(&mz)));
        }
    }

    #[test]
    fn single_pattern_rule() {
        // a single length-m pattern has zero capacity iff it has m-1 consecutive zeros
        for m in 1..=5usize {
            for code in 0..3usize.pow(m as u32) {
                let mut x = code;
                let s: String = (0..m)
                    .map(|_| {
                        let c = ['-', '0', '+'][x % 3];
                        x /= 3;
                        c
                    })
                    .collect();
                let d = set(&s);
                let expected = m > 1 && d.patterns()[0].max_zero_run() + 1 < m;
                assert_eq!(decide_positive(&d), expected, "{s}");
            }
        }
    }

    #[test]
    fn two_nonzero_symbols_give_short_word() {
        for list in ["+-+", "0+0- ++", "+00+ -0-"] {
            let d = set(list);
            let m = d.m();
            let w = shortest_admissible(&d).unwrap();
            let expected = format!("{}+{}", "0".repeat(m), "0".repeat(m - 1));
            assert_eq!(w.to_string(), expected, "{list}");
        }
    }

    #[test]
    fn shortest_word_is_admissible_and_short() {
        for list in ["0+0", "0+-+", "+0+0+", "-+0 0--", "0++ +-0"] {
            let d = set(list);
            let w = shortest_admissible(&d).unwrap();
            assert!(avoids(&w, &d.symmetric_closure()));
            assert!(w.len() <= 2 * d.total_len() + 2 * d.m());
            assert_eq!(decide_positive(&d), decide_positive(&d.negate()));
        }
    }

    #[test]
    fn worked_reduction() {
        let inst = Nae3SatInstance::new(
            5,
            vec![
                [Literal::new(1, false), Literal::new(3, true), Literal::new(4, false)],
                [Literal::new(2, true), Literal::new(4, false), Literal::new(5, false)],
            ],
        )
        .unwrap();
        let d = reduce_nae3sat(&inst).unwrap();
        let expected = "0x0\n0xx0\n0xxx0\n0xxxx0\n+x-+x\n-x+-x\nx-x++\nx+x--\n";
        assert_eq!(d.to_file_string(), expected);
        assert_eq!(d.len(), 4 + 2 * 2);
        assert!(nae3sat_brute(&inst).unwrap());
        assert!(decide_positive_extended(&d).unwrap());
    }

    #[test]
    fn instance_validation() {
        let l = Literal::new;
        assert!(Nae3SatInstance::new(3, vec![[l(1, false), l(1, false), l(1, false)]]).is_err());
        assert!(Nae3SatInstance::new(3, vec![[l(1, false), l(2, false), l(4, false)]]).is_err());
        let single = Nae3SatInstance::new(3, vec![[l(1, false), l(2, false), l(3, false)]]).unwrap();
        assert!(single.is_nae_satisfied_by(&[true, false, false]));
        assert!(reduce_nae3sat(&Nae3SatInstance::new(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn single_clauses_are_satisfiable() {
        for signs in 0..8 {
            let c = [1, 2, 3].map(|v| Literal::new(v, signs >> (v - 1) & 1 == 1));
            let inst = Nae3SatInstance::new(3, vec![c]).unwrap();
            assert!(nae3sat_brute(&inst).unwrap());
            assert!(decide_positive_extended(&reduce_nae3sat(&inst).unwrap()).unwrap());
        }
    }

    #[test]
    fn unsatisfiable_instance_has_zero_capacity() {
        // all eight sign patterns on three variables: every assignment makes one clause all-equal
        let clauses = (0..8)
            .map(|signs| [1, 2, 3].map(|v| Literal::new(v, signs >> (v - 1) & 1 == 1)))
            .collect();
        let inst = Nae3SatInstance::new(3, clauses).unwrap();
        assert!(!nae3sat_brute(&inst).unwrap());
        assert!(!decide_positive_extended(&reduce_nae3sat(&inst).unwrap()).unwrap());
    }

    #[test]
    fn dimacs_roundtrip_and_errors() {
        let text = "c two clauses\np cnf 5 2\n1 -3 4 0\n-2 4\n5 0\n";
        let inst = Nae3SatInstance::parse_dimacs(text).unwrap();
        assert_eq!(inst.clauses().len(), 2);
        assert_eq!(Nae3SatInstance::parse_dimacs(&inst.to_dimacs()).unwrap(), inst);
        assert!(Nae3SatInstance::parse_dimacs("p cnf 3 1\n1 2 0\n").is_err());
        assert!(Nae3SatInstance::parse_dimacs("p cnf 3 1\n1 2 2 0\n").is_err());
        assert!(Nae3SatInstance::parse_dimacs("1 2 3 0\n").is_err());
        assert!(Nae3SatInstance::parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        assert!(Nae3SatInstance::parse_dimacs("p cnf 3 1\n1 2 3\n").is_err());
    }

    #[test]
    fn extended_budget() {
        let d = set("xxxxxxxxxxxxxxxxxxxxxx");
        assert!(matches!(
            decide_positive_extended(&d),
            Err(Error::BudgetExhausted(_))
        ));
        let plain = set("+-+ 0+");
        assert_eq!(decide_positive_extended(&plain).unwrap(), decide_positive(&plain));
    }
}
