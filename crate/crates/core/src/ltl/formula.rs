//! Hash-consed LTL syntax trees.
//!
//! Every structurally distinct node is allocated exactly once in a global,
//! append-only store, so a [`Formula`] is a thin `Copy` handle and equality is
//! pointer equality. Nodes are never freed.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

/// An atomic proposition. Names are interned, so comparisons are cheap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(&'static str);

impl Atom {
    pub fn new(name: &str) -> Atom {
        static NAMES: OnceLock<Mutex<HashMap<String, &'static str>>> = OnceLock::new();
        let mut names = NAMES.get_or_init(Default::default).lock().unwrap();
        if let Some(interned) = names.get(name) {
            return Atom(interned);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        names.insert(name.to_owned(), leaked);
        Atom(leaked)
    }

    pub fn name(self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// The shape of one node. `Not` only occurs before conversion to positive
/// normal form; `F φ` and `G φ` are stored as `true U φ` and `false R φ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    True,
    False,
    Atom(Atom),
    NegAtom(Atom),
    Not(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Next(Formula),
    Until(Formula, Formula),
    Release(Formula, Formula),
}

impl Kind {
    fn rank(&self) -> u8 {
        match self {
            Kind::True => 0,
            Kind::False => 1,
            Kind::Atom(_) => 2,
            Kind::NegAtom(_) => 3,
            Kind::Not(_) => 4,
            Kind::Next(_) => 5,
            Kind::And(..) => 6,
            Kind::Or(..) => 7,
            Kind::Until(..) => 8,
            Kind::Release(..) => 9,
        }
    }
}

pub struct Node {
    kind: Kind,
    hash: u64,
    size: u32,
}

/// Handle to an interned formula node.
#[derive(Clone, Copy)]
pub struct Formula(&'static Node);

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Structural order: smaller formulas first, then by node kind, then by
/// children. Independent of allocation order, so it is stable across runs.
impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (a, b) = (self.0, other.0);
        a.size
            .cmp(&b.size)
            .then_with(|| a.kind.rank().cmp(&b.kind.rank()))
            .then_with(|| match (a.kind, b.kind) {
                (Kind::Atom(x), Kind::Atom(y)) | (Kind::NegAtom(x), Kind::NegAtom(y)) => x.cmp(&y),
                (Kind::Not(x), Kind::Not(y)) | (Kind::Next(x), Kind::Next(y)) => x.cmp(&y),
                (Kind::And(l1, r1), Kind::And(l2, r2))
                | (Kind::Or(l1, r1), Kind::Or(l2, r2))
                | (Kind::Until(l1, r1), Kind::Until(l2, r2))
                | (Kind::Release(l1, r1), Kind::Release(l2, r2)) => {
                    l1.cmp(&l2).then_with(|| r1.cmp(&r2))
                }
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn store() -> &'static Mutex<HashMap<Kind, Formula>> {
    static STORE: OnceLock<Mutex<HashMap<Kind, Formula>>> = OnceLock::new();
    STORE.get_or_init(Default::default)
}

impl Formula {
    /// Returns the unique node for `kind`, allocating it on first use.
    pub fn intern(kind: Kind) -> Formula {
        let mut table = store().lock().unwrap();
        if let Some(f) = table.get(&kind) {
            return *f;
        }
        let mut hasher = DefaultHasher::new();
        kind.rank().hash(&mut hasher);
        let size = match kind {
            Kind::True | Kind::False | Kind::Atom(_) | Kind::NegAtom(_) => 1,
            Kind::Not(x) | Kind::Next(x) => 1 + x.0.size,
            Kind::And(l, r) | Kind::Or(l, r) | Kind::Until(l, r) | Kind::Release(l, r) => {
                1 + l.0.size + r.0.size
            }
        };
        match kind {
            Kind::Atom(a) | Kind::NegAtom(a) => a.0.hash(&mut hasher),
            Kind::Not(x) | Kind::Next(x) => x.0.hash.hash(&mut hasher),
            Kind::And(l, r) | Kind::Or(l, r) | Kind::Until(l, r) | Kind::Release(l, r) => {
                l.0.hash.hash(&mut hasher);
                r.0.hash.hash(&mut hasher);
            }
            Kind::True | Kind::False => {}
        }
        let node: &'static Node = Box::leak(Box::new(Node {
            kind,
            hash: hasher.finish(),
            size,
        }));
        let f = Formula(node);
        table.insert(kind, f);
        f
    }

    pub fn kind(self) -> Kind {
        self.0.kind
    }

    /// Raw node count, with `F`/`G` counted as their desugared binary form.
    pub fn raw_size(self) -> usize {
        self.0.size as usize
    }

    pub fn tt() -> Formula {
        Formula::intern(Kind::True)
    }

    pub fn ff() -> Formula {
        Formula::intern(Kind::False)
    }

    pub fn atom(name: &str) -> Formula {
        Formula::intern(Kind::Atom(Atom::new(name)))
    }

    pub fn neg_atom(name: &str) -> Formula {
        Formula::intern(Kind::NegAtom(Atom::new(name)))
    }

    pub fn lit(atom: Atom, positive: bool) -> Formula {
        if positive {
            Formula::intern(Kind::Atom(atom))
        } else {
            Formula::intern(Kind::NegAtom(atom))
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::intern(Kind::Not(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::intern(Kind::And(l, r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::intern(Kind::Or(l, r))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::intern(Kind::Next(f))
    }

    pub fn until(l: Formula, r: Formula) -> Formula {
        Formula::intern(Kind::Until(l, r))
    }

    pub fn release(l: Formula, r: Formula) -> Formula {
        Formula::intern(Kind::Release(l, r))
    }

    pub fn finally(f: Formula) -> Formula {
        Formula::until(Formula::tt(), f)
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::release(Formula::ff(), f)
    }

    /// `l -> r`, desugared to `!l | r`.
    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::or(Formula::not(l), r)
    }

    /// Conjunction that folds `true`/`false` operands and duplicates.
    pub fn and_folded(l: Formula, r: Formula) -> Formula {
        match (l.kind(), r.kind()) {
            (Kind::False, _) | (_, Kind::False) => Formula::ff(),
            (Kind::True, _) => r,
            (_, Kind::True) => l,
            _ if l == r => l,
            _ => Formula::and(l, r),
        }
    }

    /// Disjunction that folds `true`/`false` operands and duplicates.
    pub fn or_folded(l: Formula, r: Formula) -> Formula {
        match (l.kind(), r.kind()) {
            (Kind::True, _) | (_, Kind::True) => Formula::tt(),
            (Kind::False, _) => r,
            (_, Kind::False) => l,
            _ if l == r => l,
            _ => Formula::or(l, r),
        }
    }

    pub fn next_folded(f: Formula) -> Formula {
        match f.kind() {
            Kind::True | Kind::False => f,
            _ => Formula::next(f),
        }
    }

    pub fn until_folded(l: Formula, r: Formula) -> Formula {
        match (l.kind(), r.kind()) {
            (_, Kind::True) | (_, Kind::False) => r,
            (Kind::False, _) => r,
            _ => Formula::until(l, r),
        }
    }

    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().fold(Formula::tt(), Formula::and_folded)
    }

    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().fold(Formula::ff(), Formula::or_folded)
    }

    pub fn is_true(self) -> bool {
        matches!(self.kind(), Kind::True)
    }

    pub fn is_false(self) -> bool {
        matches!(self.kind(), Kind::False)
    }

    /// `Some(φ)` if this is `F φ`.
    pub fn as_finally(self) -> Option<Formula> {
        match self.kind() {
            Kind::Until(l, r) if l.is_true() => Some(r),
            _ => None,
        }
    }

    /// `Some(φ)` if this is `G φ`.
    pub fn as_globally(self) -> Option<Formula> {
        match self.kind() {
            Kind::Release(l, r) if l.is_false() => Some(r),
            _ => None,
        }
    }

    pub fn children(self) -> impl Iterator<Item = Formula> {
        let (a, b) = match self.kind() {
            Kind::Not(x) | Kind::Next(x) => (Some(x), None),
            Kind::And(l, r) | Kind::Or(l, r) | Kind::Until(l, r) | Kind::Release(l, r) => {
                (Some(l), Some(r))
            }
            _ => (None, None),
        };
        a.into_iter().chain(b)
    }

    /// Node count with `F`, `G`, `!a` each counted as one node.
    pub fn size(self) -> usize {
        if let Some(x) = self.as_finally().or_else(|| self.as_globally()) {
            return 1 + x.size();
        }
        1 + self.children().map(Formula::size).sum::<usize>()
    }

    /// All distinct subformulas, in structural order.
    pub fn subformulas(self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(f.children());
            }
        }
        out
    }

    /// Atomic propositions occurring in the formula, sorted by name.
    pub fn atoms(self) -> BTreeSet<Atom> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f.kind() {
                Kind::Atom(a) | Kind::NegAtom(a) => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Negation occurs only on atoms.
    pub fn is_pnf(self) -> bool {
        self.subformulas()
            .into_iter()
            .all(|f| !matches!(f.kind(), Kind::Not(_)))
    }

    /// Flattens nested conjunctions into their operands.
    pub fn conjuncts(self) -> Vec<Formula> {
        let mut out = Vec::new();
        flatten(self, &mut out, |f| match f.kind() {
            Kind::And(l, r) => Some((l, r)),
            _ => None,
        });
        out
    }

    /// Flattens nested disjunctions into their operands.
    pub fn disjuncts(self) -> Vec<Formula> {
        let mut out = Vec::new();
        flatten(self, &mut out, |f| match f.kind() {
            Kind::Or(l, r) => Some((l, r)),
            _ => None,
        });
        out
    }
}

fn flatten(f: Formula, out: &mut Vec<Formula>, split: impl Fn(Formula) -> Option<(Formula, Formula)> + Copy) {
    match split(f) {
        Some((l, r)) => {
            flatten(l, out, split);
            flatten(r, out, split);
        }
        None => out.push(f),
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Binding strength used by the printer; mirrors the parser's precedence.
fn level(f: Formula) -> u8 {
    if f.as_finally().is_some() || f.as_globally().is_some() {
        return 4;
    }
    match f.kind() {
        Kind::Or(..) => 1,
        Kind::And(..) => 2,
        Kind::Until(..) | Kind::Release(..) => 3,
        _ => 4,
    }
}

fn write_operand(out: &mut fmt::Formatter<'_>, f: Formula, min_level: u8) -> fmt::Result {
    if level(f) < min_level {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

/// Infix rendering that the parser reads back to the same node.
impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_finally() {
            out.write_str("F ")?;
            return write_operand(out, x, 4);
        }
        if let Some(x) = self.as_globally() {
            out.write_str("G ")?;
            return write_operand(out, x, 4);
        }
        match self.kind() {
            Kind::True => out.write_str("true"),
            Kind::False => out.write_str("false"),
            Kind::Atom(a) => write!(out, "{a}"),
            Kind::NegAtom(a) => write!(out, "!{a}"),
            Kind::Not(x) => {
                out.write_str("!")?;
                write_operand(out, x, 4)
            }
            Kind::Next(x) => {
                out.write_str("X ")?;
                write_operand(out, x, 4)
            }
            Kind::And(l, r) => {
                write_operand(out, l, 3)?;
                out.write_str(" & ")?;
                write_operand(out, r, 3)
            }
            Kind::Or(l, r) => {
                write_operand(out, l, 2)?;
                out.write_str(" | ")?;
                write_operand(out, r, 2)
            }
            Kind::Until(l, r) | Kind::Release(l, r) => {
                let op = if matches!(self.kind(), Kind::Until(..)) { "U" } else { "R" };
                write_operand(out, l, 4)?;
                write!(out, " {op} ")?;
                write_operand(out, r, 3)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structurally_equal_nodes_are_shared() {
        let a = Formula::and(Formula::atom("p"), Formula::next(Formula::atom("q")));
        let b = Formula::and(Formula::atom("p"), Formula::next(Formula::atom("q")));
        assert!(std::ptr::eq(a.0, b.0));
    }

    #[test]
    fn sugar_is_desugared_but_printed() {
        let fga = Formula::finally(Formula::globally(Formula::atom("a")));
        assert_eq!(
            fga,
            Formula::until(Formula::tt(), Formula::release(Formula::ff(), Formula::atom("a")))
        );
        assert_eq!(fga.to_string(), "F G a");
        assert_eq!(fga.size(), 3);
    }

    #[test]
    fn printer_parenthesizes_by_level() {
        let a = Formula::atom("a");
        let b = Formula::atom("b");
        let f = Formula::until(Formula::and(a, b), Formula::or(a, Formula::next(b)));
        assert_eq!(f.to_string(), "(a & b) U (a | X b)");
        let g = Formula::until(a, Formula::until(b, a));
        assert_eq!(g.to_string(), "a U b U a");
        let h = Formula::until(Formula::until(a, b), a);
        assert_eq!(h.to_string(), "(a U b) U a");
    }

    #[test]
    fn order_is_structural() {
        let a = Formula::atom("a");
        let b = Formula::atom("b");
        assert!(a < b);
        assert!(a < Formula::next(a));
        assert!(Formula::and(a, b) < Formula::and(b, a));
    }
}
