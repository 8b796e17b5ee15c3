//! Bounded formula families evaluated as a shared DAG.
//!
//! Campaigns quantify over "every formula" by enumerating a finite family of
//! relational formulas up to a modal depth. Sub-formulas are shared, so one
//! pass over the node list computes every extension on a model.

use crate::eval::{EvalError, RelationalSemantics};
use crate::formula::{Agent, Dir, Formula};
use crate::set::StateSet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Top,
    Bot,
    Ua,
    Ub,
    Atom(String),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Box(Dir, usize),
    Heart(Dir, usize),
}

#[derive(Debug, Clone)]
pub struct FormulaFamily {
    nodes: Vec<Node>,
    depth: Vec<usize>,
}

impl FormulaFamily {
    /// Every formula built as follows, over `atoms` plus `Ua`, `Ub`, `true`, `false`:
    ///
    /// * depth 0: the constants and atoms, negations of non-constant atoms, and
    ///   all conjunctions and disjunctions of two distinct such literals;
    /// * depth `d + 1`: `[ab] f`, `[ba] f`, `Hab f`, `Hba f` and their negations,
    ///   for every `f` of depth `d`.
    pub fn bounded(atoms: &[&str], max_depth: usize) -> Self {
        let mut fam = FormulaFamily {
            nodes: Vec::new(),
            depth: Vec::new(),
        };
        let mut base = vec![
            fam.push(Node::Top, 0),
            fam.push(Node::Bot, 0),
            fam.push(Node::Ua, 0),
            fam.push(Node::Ub, 0),
        ];
        for a in atoms {
            base.push(fam.push(Node::Atom(a.to_string()), 0));
        }
        let mut literals = base.clone();
        for &b in &base[2..] {
            literals.push(fam.push(Node::Not(b), 0));
        }
        for (i, &l) in literals.iter().enumerate() {
            for &r in &literals[i + 1..] {
                fam.push(Node::And(l, r), 0);
                fam.push(Node::Or(l, r), 0);
            }
        }
        let mut frontier: Vec<usize> = (0..fam.nodes.len()).collect();
        for d in 1..=max_depth {
            let mut next = Vec::new();
            for &f in &frontier {
                for dir in Dir::ALL {
                    for node in [Node::Box(dir, f), Node::Heart(dir, f)] {
                        let m = fam.push(node, d);
                        next.push(m);
                        next.push(fam.push(Node::Not(m), d));
                    }
                }
            }
            frontier = next;
        }
        fam
    }

    fn push(&mut self, node: Node, depth: usize) -> usize {
        self.nodes.push(node);
        self.depth.push(depth);
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    /// The `i`-th formula as an AST.
    pub fn formula(&self, i: usize) -> Formula {
        match &self.nodes[i] {
            Node::Top => Formula::Top,
            Node::Bot => Formula::Bot,
            Node::Ua => Formula::Ua,
            Node::Ub => Formula::Ub,
            Node::Atom(a) => Formula::atom(a.clone()),
            Node::Not(f) => Formula::not(self.formula(*f)),
            Node::And(l, r) => Formula::and(self.formula(*l), self.formula(*r)),
            Node::Or(l, r) => Formula::or(self.formula(*l), self.formula(*r)),
            Node::Box(d, f) => Formula::boxed(*d, self.formula(*f)),
            Node::Heart(d, f) => Formula::heart(*d, self.formula(*f)),
        }
    }

    /// Extensions of every member, indexed like the family.
    pub fn evaluate<S: RelationalSemantics + ?Sized>(
        &self,
        sem: &S,
    ) -> Result<Vec<StateSet>, EvalError> {
        let n = sem.size();
        let mut ext: Vec<StateSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let s = match node {
                Node::Top => StateSet::full(n),
                Node::Bot => StateSet::EMPTY,
                Node::Ua => sem.type_set(Agent::A),
                Node::Ub => sem.type_set(Agent::B),
                Node::Atom(a) => sem.atom(a)?,
                Node::Not(f) => ext[*f].complement(n),
                Node::And(l, r) => ext[*l] & ext[*r],
                Node::Or(l, r) => ext[*l] | ext[*r],
                Node::Box(d, f) => sem.box_op(*d, ext[*f]),
                Node::Heart(d, f) => sem.heart_op(*d, ext[*f]),
            };
            ext.push(s);
        }
        Ok(ext)
    }
}
