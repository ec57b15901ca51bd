//! The open-edge automaton: states are open edges of pieces of `D_k`,
//! transitions come from how the two open edges of `D₀` split under the
//! four contractions. Read with an initial looping state it is a Büchi
//! automaton accepting the addresses of periodic points of `Y′`.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclo::{Cyclo, QuadReal};
use crate::regions::{orient, Named};

use super::{digit_map, digit_of_sigma, Lasso, SymbolicError};

const DIGITS: [u8; 4] = [0, 2, 3, 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    L,
    R,
}

/// The open edge on `side` of the piece entered by digit `digit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeState {
    pub digit: u8,
    pub side: Side,
}

impl EdgeState {
    pub fn label(&self) -> String {
        format!("{}{:?}", self.digit, self.side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonGraph {
    pub states: Vec<EdgeState>,
    /// `(from, label, to)`; the label is always the digit of `to`.
    pub edges: Vec<(usize, u8, usize)>,
    /// States entered from the initial looping state.
    pub initial_targets: Vec<usize>,
    pub finals: Vec<bool>,
}

/// `t` with `p = a + t(b − a)` if `p` lies on the line through `a`, `b`.
fn line_param(a: &Cyclo, b: &Cyclo, p: &Cyclo) -> Option<QuadReal> {
    if orient(a, b, p) != 0 {
        return None;
    }
    (p - a).div(&(b - a)).ok()?.as_quad()
}

/// Parameter interval of segment `[p, q]` inside `[a, b]`, if it lies there.
fn sub_interval(a: &Cyclo, b: &Cyclo, p: &Cyclo, q: &Cyclo) -> Option<(QuadReal, QuadReal)> {
    let (s, t) = (line_param(a, b, p)?, line_param(a, b, q)?);
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
    let one = QuadReal::one();
    (lo.signum() >= 0 && (&hi - &one).signum() <= 0 && (&hi - &lo).signum() > 0).then_some((lo, hi))
}

/// The open boundary edges of `D₀` as `(side, endpoints)`.
fn open_edges() -> Result<Vec<(Side, Cyclo, Cyclo)>, SymbolicError> {
    let d0 = Named::D0.region();
    let mut edges = Vec::new();
    for (i, part) in d0.parts().iter().enumerate() {
        for e in 0..part.len() {
            if part.edge_closed()[e] {
                continue;
            }
            let (a, b) = part.edge(e);
            let mid = (a + b).scale(&crate::cyclo::Rat::new(1.into(), 2.into()));
            let internal = d0.parts().iter().enumerate().any(|(j, o)| j != i && o.closure_contains(&mid));
            if !internal {
                edges.push((a.clone(), b.clone(), mid));
            }
        }
    }
    if edges.len() != 2 {
        return Err(SymbolicError::Construction(format!("expected two open edges of D0, found {}", edges.len())));
    }
    // the right edge is the one further along the real axis
    let right_first = (&edges[0].2 - &edges[1].2).sign_real() > 0;
    let (r, l) = if right_first { (&edges[0], &edges[1]) } else { (&edges[1], &edges[0]) };
    Ok(vec![(Side::L, l.0.clone(), l.1.clone()), (Side::R, r.0.clone(), r.1.clone())])
}

fn level_one_closure_contains(x: &Cyclo) -> bool {
    let d0 = Named::D0.region();
    DIGITS.iter().any(|&m| {
        let f = digit_map(m);
        d0.affine(&f.a, &f.b).closure_contains(x)
    })
}

/// Derives the automaton from exact segment containment.
pub fn build_edge_automaton() -> Result<AutomatonGraph, SymbolicError> {
    let sides = open_edges()?;
    let mut states = Vec::new();
    for &m in &DIGITS {
        for &(side, _, _) in &sides {
            states.push(EdgeState { digit: m, side });
        }
    }
    let index = |m: u8, side: Side| states.iter().position(|s| s.digit == m && s.side == side).expect("state");

    // children[side] = states (n, Y) with f_n(Y) inside the open edge on `side`
    let mut children: Vec<(Side, Vec<usize>)> = Vec::new();
    let mut contained = HashSet::new();
    for (side, a, b) in &sides {
        let mut pieces = Vec::new();
        let mut kids = Vec::new();
        for &n in &DIGITS {
            let f = digit_map(n);
            for (cs, ca, cb) in &sides {
                if let Some(iv) = sub_interval(a, b, &f.apply(ca), &f.apply(cb)) {
                    pieces.push(iv);
                    kids.push(index(n, *cs));
                }
            }
        }
        pieces.sort_by(|x, y| x.0.cmp(&y.0));
        // gaps between sub-edges must avoid every first-level piece, i.e. carry no point of Y′
        let mut at = QuadReal::from_int(0);
        let half = QuadReal::from_rational(crate::cyclo::Rat::new(1.into(), 2.into()));
        let at_param = |t: &QuadReal| a + &(&(b - a) * &Cyclo::from_quad(t));
        for (lo, hi) in pieces.iter().map(|(l, h)| (l.clone(), h.clone())).chain(std::iter::once((QuadReal::one(), QuadReal::one()))) {
            match (&lo - &at).signum() {
                -1 => return Err(SymbolicError::Construction(format!("sub-edges of open edge {side:?} overlap"))),
                1 => {
                    let mid = at_param(&(&(&at + &lo) * &half));
                    if level_one_closure_contains(&mid) {
                        return Err(SymbolicError::Construction(format!("open edge {side:?} is not covered")));
                    }
                }
                _ => {}
            }
            at = hi;
        }
        contained.extend(kids.iter().copied());
        children.push((*side, kids));
    }

    let mut edges = Vec::new();
    for (from, st) in states.iter().enumerate() {
        for (side, kids) in &children {
            if *side == st.side {
                for &to in kids {
                    edges.push((from, states[to].digit, to));
                }
            }
        }
    }
    let initial_targets = (0..states.len()).filter(|i| !contained.contains(i)).collect();
    let finals = (0..states.len()).map(|i| contained.contains(&i)).collect();
    Ok(AutomatonGraph { states, edges, initial_targets, finals })
}

impl AutomatonGraph {
    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s.label() == label)
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        match (self.state_index(from), self.state_index(to)) {
            (Some(f), Some(t)) => self.edges.iter().any(|&(a, _, b)| a == f && b == t),
            _ => false,
        }
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == i).count()
    }

    /// Largest eigenvalue of the adjacency matrix, by power iteration.
    pub fn spectral_radius(&self) -> f64 {
        let n = self.states.len();
        let mut v = vec![1.0f64; n];
        let mut lambda = 0.0;
        for _ in 0..500 {
            let mut w = vec![0.0f64; n];
            for &(a, _, b) in &self.edges {
                w[a] += v[b];
            }
            let norm = w.iter().cloned().fold(0.0, f64::max);
            if norm == 0.0 {
                return 0.0;
            }
            lambda = norm / v.iter().cloned().fold(0.0, f64::max);
            v = w.iter().map(|x| x / norm).collect();
        }
        lambda
    }

    fn step(&self, from: Option<usize>, c: u8, any_entry: bool) -> Vec<Option<usize>> {
        match from {
            None => {
                let mut out = vec![None];
                let entries = (0..self.states.len()).filter(|t| any_entry || self.initial_targets.contains(t));
                out.extend(entries.filter(|&t| self.states[t].digit == c).map(Some));
                out
            }
            Some(q) => self.edges.iter().filter(|e| e.0 == q && e.1 == c).map(|e| Some(e.2)).collect(),
        }
    }

    fn is_final(&self, q: Option<usize>) -> bool {
        q.is_some_and(|i| self.finals[i])
    }

    /// True iff some suffix of `prefix · cycle^∞` is an infinite path of the edge graph:
    /// the address of a periodic point or of a point on an open edge of `D₀`.
    pub fn accepts_lasso(&self, lasso: &Lasso) -> bool {
        self.buchi(lasso, true)
    }

    /// Büchi acceptance with entry only through the initial targets (interior open edges).
    pub fn accepts_lasso_from_interior(&self, lasso: &Lasso) -> bool {
        self.buchi(lasso, false)
    }

    fn buchi(&self, lasso: &Lasso, any_entry: bool) -> bool {
        let mut cur: HashSet<Option<usize>> = HashSet::from([None]);
        for &c in &lasso.prefix {
            cur = cur.iter().flat_map(|&q| self.step(q, c, any_entry)).collect();
        }
        let v = &lasso.cycle;
        let succ = |(q, i): (Option<usize>, usize)| -> Vec<(Option<usize>, usize)> {
            self.step(q, v[i], any_entry).into_iter().map(|r| (r, (i + 1) % v.len())).collect()
        };
        let mut seen: HashSet<(Option<usize>, usize)> = cur.iter().map(|&q| (q, 0)).collect();
        let mut queue: VecDeque<_> = seen.iter().copied().collect();
        while let Some(node) = queue.pop_front() {
            for nx in succ(node) {
                if seen.insert(nx) {
                    queue.push_back(nx);
                }
            }
        }
        seen.iter().filter(|n| self.is_final(n.0)).any(|&f| {
            let mut vis = HashSet::new();
            let mut queue: VecDeque<_> = succ(f).into();
            while let Some(node) = queue.pop_front() {
                if node == f {
                    return true;
                }
                if vis.insert(node) {
                    queue.extend(succ(node));
                }
            }
            false
        })
    }

    pub fn to_json(&self) -> Value {
        let label = |i: usize| self.states[i].label();
        json!({
            "states": (0..self.states.len()).map(label).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, c, b)| json!([label(a), c, label(b)])).collect::<Vec<_>>(),
            "initial_targets": self.initial_targets.iter().map(|&i| label(i)).collect::<Vec<_>>(),
            "finals": (0..self.states.len()).filter(|&i| self.finals[i]).map(label).collect::<Vec<_>>(),
        })
    }

    /// Graphviz rendering; with `sigma` the labels are the substitution indices.
    pub fn to_dot(&self, sigma: bool) -> String {
        let name = |i: usize| {
            let s = self.states[i];
            if sigma {
                format!("sigma{}{:?}", super::sigma_index(s.digit).unwrap_or(9), s.side)
            } else {
                s.label()
            }
        };
        let mut out = String::from("digraph openedge {\n  init [shape=point];\n");
        for i in 0..self.states.len() {
            let shape = if self.finals[i] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {} [shape={shape}];", name(i));
        }
        let _ = writeln!(out, "  init -> init [label=\"0,2,3,5\"];");
        for &t in &self.initial_targets {
            let _ = writeln!(out, "  init -> {} [label=\"{}\"];", name(t), self.states[t].digit);
        }
        for &(a, c, b) in &self.edges {
            let _ = writeln!(out, "  {} -> {} [label=\"{c}\"];", name(a), name(b));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplicativeClass {
    /// A suffix is read along the forbidden graph.
    PeriodicSuffix,
    Aperiodic,
}

/// Decides whether a multiplicative coding (σ-indices as a lasso) ends in the forbidden graph.
pub fn classify_multiplicative(g: &AutomatonGraph, sigma: &Lasso) -> Result<MultiplicativeClass, SymbolicError> {
    let map = |w: &[u8]| -> Result<Vec<u8>, SymbolicError> {
        w.iter()
            .enumerate()
            .map(|(pos, &k)| digit_of_sigma(k as usize).ok_or(SymbolicError::BadSymbol { pos, symbol: char::from(b'0' + k) }))
            .collect()
    };
    let digits = Lasso::new(map(&sigma.prefix)?, map(&sigma.cycle)?)?;
    Ok(if g.accepts_lasso(&digits) { MultiplicativeClass::PeriodicSuffix } else { MultiplicativeClass::Aperiodic })
}
