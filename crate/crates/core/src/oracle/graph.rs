//! A self-contained SCC decomposition, kept separate from the graph code
//! used by the translation so the oracle shares nothing with it.

/// Strongly connected components of the part of a graph reachable from
/// `roots`. Returns the component index of every node (`usize::MAX` when
/// unreachable) and the number of components.
pub fn sccs(n: usize, roots: &[usize], succ: &dyn Fn(usize, &mut Vec<usize>)) -> (Vec<usize>, usize) {
    let mut t = Tarjan {
        index: vec![UNSEEN; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        comp: vec![UNSEEN; n],
        stack: Vec::new(),
        frames: Vec::new(),
        counter: 0,
        ncomp: 0,
    };
    for &root in roots {
        if t.index[root] == UNSEEN {
            t.run(root, succ);
        }
    }
    (t.comp, t.ncomp)
}

const UNSEEN: usize = usize::MAX;

struct Tarjan {
    index: Vec<usize>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    comp: Vec<usize>,
    stack: Vec<usize>,
    /// Depth-first frames: node, its successors, next successor to visit.
    frames: Vec<(usize, Vec<usize>, usize)>,
    counter: usize,
    ncomp: usize,
}

impl Tarjan {
    fn enter(&mut self, v: usize, succ: &dyn Fn(usize, &mut Vec<usize>)) {
        self.index[v] = self.counter;
        self.low[v] = self.counter;
        self.counter += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        let mut children = Vec::new();
        succ(v, &mut children);
        self.frames.push((v, children, 0));
    }

    fn run(&mut self, root: usize, succ: &dyn Fn(usize, &mut Vec<usize>)) {
        self.enter(root, succ);
        while let Some((v, children, next)) = self.frames.last_mut() {
            let v = *v;
            if *next < children.len() {
                let w = children[*next];
                *next += 1;
                if self.index[w] == UNSEEN {
                    self.enter(w, succ);
                } else if self.on_stack[w] {
                    self.low[v] = self.low[v].min(self.index[w]);
                }
                continue;
            }
            self.frames.pop();
            if let Some(&(parent, _, _)) = self.frames.last() {
                self.low[parent] = self.low[parent].min(self.low[v]);
            }
            if self.low[v] == self.index[v] {
                loop {
                    let w = self.stack.pop().unwrap();
                    self.on_stack[w] = false;
                    self.comp[w] = self.ncomp;
                    if w == v {
                        break;
                    }
                }
                self.ncomp += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycles_and_a_tail() {
        let adj: Vec<Vec<usize>> = vec![vec![1], vec![0, 2], vec![3], vec![2], vec![]];
        let (comp, n) = sccs(5, &[0], &|v, out| out.extend(&adj[v]));
        assert_eq!(n, 2);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[2], comp[3]);
        assert_ne!(comp[0], comp[2]);
        assert_eq!(comp[4], usize::MAX);
    }
}
