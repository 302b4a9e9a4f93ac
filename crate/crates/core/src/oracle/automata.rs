//! Automaton acceptance on lasso words and the structural unambiguity
//! check, written against the public automaton data only.

use super::graph::sccs;
use super::lasso::LassoWord;
use crate::alphabet::Letter;
use crate::bits::BitSet;
use crate::degeneralize::Nba;
use crate::gba::Tgba;
use crate::vwaa::{StateId, Vwaa};

fn targets_on(edges: &[(Letter, usize)], a: Letter) -> impl Iterator<Item = usize> + '_ {
    let start = edges.partition_point(|&(l, _)| l < a);
    edges[start..].iter().take_while(move |&&(l, _)| l == a).map(|&(_, t)| t)
}

/// Nodes `(q, i)` of the product of an automaton with the positions of a
/// lasso, encoded as `q * len + i`.
struct LassoProduct<'a> {
    word: &'a LassoWord,
    len: usize,
}

impl LassoProduct<'_> {
    fn node(&self, q: usize, i: usize) -> usize {
        q * self.len + i
    }

    fn split(&self, node: usize) -> (usize, usize) {
        (node / self.len, node % self.len)
    }
}

/// Some run of `nba` on `w` visits accepting states infinitely often.
pub fn nba_accepts(nba: &Nba, w: &LassoWord) -> bool {
    let p = LassoProduct { word: w, len: w.len() };
    let succ = |v: usize, out: &mut Vec<usize>| {
        let (q, i) = p.split(v);
        let j = p.word.succ(i);
        out.extend(targets_on(&nba.edges[q], p.word.letter(i)).map(|t| p.node(t, j)));
    };
    let roots: Vec<usize> = nba.initial.iter().map(|&q| p.node(q, 0)).collect();
    let n = nba.len * p.len;
    let (comp, ncomp) = sccs(n, &roots, &succ);
    let mut good = vec![false; ncomp];
    let mut buf = Vec::new();
    for v in 0..n {
        let c = comp[v];
        if c == usize::MAX || !nba.accepting[p.split(v).0] {
            continue;
        }
        buf.clear();
        succ(v, &mut buf);
        if buf.iter().any(|&t| comp[t] == c) {
            good[c] = true;
        }
    }
    good.iter().any(|&g| g)
}

/// Reference implementation: some reachable accepting product node lies
/// on a cycle, found by plain search from each candidate.
pub fn nba_accepts_naive(nba: &Nba, w: &LassoWord) -> bool {
    let n = w.len();
    let step = |(q, i): (usize, usize)| -> Vec<(usize, usize)> {
        targets_on(&nba.edges[q], w.letter(i)).map(|t| (t, w.succ(i))).collect()
    };
    let reach = |from: Vec<(usize, usize)>| -> Vec<Vec<bool>> {
        let mut seen = vec![vec![false; n]; nba.len];
        let mut stack = from;
        while let Some((q, i)) = stack.pop() {
            if seen[q][i] {
                continue;
            }
            seen[q][i] = true;
            stack.extend(step((q, i)));
        }
        seen
    };
    let reachable = reach(nba.initial.iter().map(|&q| (q, 0)).collect());
    (0..nba.len).any(|q| {
        nba.accepting[q] && (0..n).any(|i| reachable[q][i] && reach(step((q, i)))[q][i])
    })
}

/// Some run of the t-GBA on `w` meets every acceptance set infinitely often.
pub fn tgba_accepts<S>(g: &Tgba<S>, w: &LassoWord) -> bool {
    let p = LassoProduct { word: w, len: w.len() };
    let on = |q: usize, a: Letter| g.edges[q].iter().filter(move |e| e.letter == a);
    let succ = |v: usize, out: &mut Vec<usize>| {
        let (q, i) = p.split(v);
        let j = p.word.succ(i);
        out.extend(on(q, p.word.letter(i)).map(|e| p.node(e.target, j)));
    };
    let roots: Vec<usize> = g.initial.iter().map(|&q| p.node(q, 0)).collect();
    let n = g.states.len() * p.len;
    let (comp, ncomp) = sccs(n, &roots, &succ);
    let mut marks = vec![BitSet::new(); ncomp];
    let mut cyclic = vec![false; ncomp];
    for v in 0..n {
        let c = comp[v];
        if c == usize::MAX {
            continue;
        }
        let (q, i) = p.split(v);
        let j = w.succ(i);
        for e in on(q, w.letter(i)) {
            if comp[p.node(e.target, j)] == c {
                cyclic[c] = true;
                marks[c].union_with(&e.acc);
            }
        }
    }
    let full = BitSet::full(g.num_sets);
    (0..ncomp).any(|c| cyclic[c] && full.is_subset(&marks[c]))
}

/// Co-Büchi acceptance of a very weak alternating automaton on `w`.
///
/// States are solved successors-first. A state's truth vector over the
/// lasso positions is the least (final states) or greatest (non-final
/// states) solution of its transition equation, since in a very weak
/// automaton every run path eventually stays in one state.
pub fn vwaa_accepts(a: &Vwaa, w: &LassoWord) -> bool {
    let order = topological_order(a);
    let n = w.len();
    let mut truth: Vec<Vec<bool>> = vec![Vec::new(); a.len()];
    for q in order {
        let st = a.state(q);
        let mut x = vec![!st.is_final; n];
        loop {
            let y: Vec<bool> = (0..n)
                .map(|i| {
                    let j = w.succ(i);
                    a.successor_sets(q, w.letter(i)).iter().any(|s| {
                        s.iter().all(|r| if r == q { x[j] } else { truth[r as usize][j] })
                    })
                })
                .collect();
            if y == x {
                break;
            }
            x = y;
        }
        truth[q as usize] = x;
    }
    truth[a.initial() as usize][0]
}

fn topological_order(a: &Vwaa) -> Vec<StateId> {
    let mut order = Vec::with_capacity(a.len());
    let mut state = vec![0u8; a.len()];
    fn visit(a: &Vwaa, q: StateId, state: &mut [u8], order: &mut Vec<StateId>) {
        if state[q as usize] != 0 {
            assert!(state[q as usize] == 2, "automaton is not very weak");
            return;
        }
        state[q as usize] = 1;
        for t in &a.state(q).transitions {
            for s in t.successors.iter() {
                if s != q {
                    visit(a, s, state, order);
                }
            }
        }
        state[q as usize] = 2;
        order.push(q);
    }
    for q in 0..a.len() as StateId {
        visit(a, q, &mut state, &mut order);
    }
    order
}

/// States with nonempty language: those reaching an accepting state that
/// lies on a cycle.
fn nba_nonempty(nba: &Nba) -> Vec<bool> {
    let roots: Vec<usize> = (0..nba.len).collect();
    let succ = |q: usize, out: &mut Vec<usize>| out.extend(nba.edges[q].iter().map(|&(_, t)| t));
    let (comp, _) = sccs(nba.len, &roots, &succ);
    let mut good: Vec<bool> = (0..nba.len)
        .map(|q| nba.accepting[q] && nba.edges[q].iter().any(|&(_, t)| comp[t] == comp[q]))
        .collect();
    let mut preds = vec![Vec::new(); nba.len];
    for q in 0..nba.len {
        for &(_, t) in &nba.edges[q] {
            preds[t].push(q);
        }
    }
    let mut stack: Vec<usize> = (0..nba.len).filter(|&q| good[q]).collect();
    while let Some(q) = stack.pop() {
        for &p in &preds[q] {
            if !good[p] {
                good[p] = true;
                stack.push(p);
            }
        }
    }
    good
}

/// No word has two accepting runs: after removing empty states, no pair
/// of distinct states is reachable in the self-product and still able to
/// accept a common word.
pub fn nba_unambiguous(nba: &Nba) -> bool {
    let live = nba_nonempty(nba);
    let k = nba.len;
    let init: Vec<usize> = nba.initial.iter().copied().filter(|&q| live[q]).collect();
    let mut roots = Vec::new();
    for &i in &init {
        for &j in &init {
            roots.push(i * k + j);
        }
    }
    let succ = |v: usize, out: &mut Vec<usize>| {
        let (p, q) = (v / k, v % k);
        for &(a, s) in &nba.edges[p] {
            if !live[s] {
                continue;
            }
            out.extend(targets_on(&nba.edges[q], a).filter(|&t| live[t]).map(|t| s * k + t));
        }
    };
    let (comp, ncomp) = sccs(k * k, &roots, &succ);
    // Per component: internal edge, left accepting member, right accepting member.
    let mut flags = vec![(false, false, false); ncomp];
    let mut buf = Vec::new();
    for v in 0..k * k {
        let c = comp[v];
        if c == usize::MAX {
            continue;
        }
        buf.clear();
        succ(v, &mut buf);
        if buf.iter().any(|&t| comp[t] == c) {
            flags[c].0 = true;
        }
        flags[c].1 |= nba.accepting[v / k];
        flags[c].2 |= nba.accepting[v % k];
    }
    let mut good: Vec<bool> = (0..k * k)
        .map(|v| comp[v] != usize::MAX && flags[comp[v]] == (true, true, true))
        .collect();
    let mut preds = vec![Vec::new(); k * k];
    for (v, &c) in comp.iter().enumerate() {
        if c == usize::MAX {
            continue;
        }
        buf.clear();
        succ(v, &mut buf);
        for &t in &buf {
            preds[t].push(v);
        }
    }
    let mut stack: Vec<usize> = (0..k * k).filter(|&v| good[v]).collect();
    while let Some(v) = stack.pop() {
        for &p in &preds[v] {
            if !good[p] {
                good[p] = true;
                stack.push(p);
            }
        }
    }
    !(0..k * k).any(|v| good[v] && v / k != v % k)
}

/// At most one accepting run on `w`: in the lasso product restricted to
/// nodes with an accepting continuation, there is at most one initial
/// node and no reachable node branches.
pub fn at_most_one_accepting_run(nba: &Nba, w: &LassoWord) -> bool {
    let p = LassoProduct { word: w, len: w.len() };
    let n = nba.len * p.len;
    let succ = |v: usize, out: &mut Vec<usize>| {
        let (q, i) = p.split(v);
        let j = p.word.succ(i);
        out.extend(targets_on(&nba.edges[q], p.word.letter(i)).map(|t| p.node(t, j)));
    };
    let all: Vec<usize> = (0..n).collect();
    let (comp, _) = sccs(n, &all, &succ);
    let mut buf = Vec::new();
    let mut live: Vec<bool> = (0..n)
        .map(|v| {
            buf.clear();
            succ(v, &mut buf);
            nba.accepting[p.split(v).0] && buf.iter().any(|&t| comp[t] == comp[v])
        })
        .collect();
    let mut preds = vec![Vec::new(); n];
    for v in 0..n {
        buf.clear();
        succ(v, &mut buf);
        for &t in &buf {
            preds[t].push(v);
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| live[v]).collect();
    while let Some(v) = stack.pop() {
        for &u in &preds[v] {
            if !live[u] {
                live[u] = true;
                stack.push(u);
            }
        }
    }
    let mut starts: Vec<usize> = nba.initial.iter().map(|&q| p.node(q, 0)).filter(|&v| live[v]).collect();
    starts.sort();
    starts.dedup();
    if starts.len() > 1 {
        return false;
    }
    let mut seen = vec![false; n];
    while let Some(v) = starts.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        buf.clear();
        succ(v, &mut buf);
        buf.sort();
        buf.dedup();
        let next: Vec<usize> = buf.iter().copied().filter(|&t| live[t]).collect();
        if next.len() > 1 {
            return false;
        }
        starts.extend(next);
    }
    true
}
