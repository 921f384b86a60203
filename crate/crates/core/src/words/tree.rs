use super::{BasicSet, Word};

/// A labelled prefix tree over the path space.
///
/// `Leaf(l)` labels the whole cylinder `Z(w)` (the point `w` included);
/// `Split` labels the point `w` separately and delegates the `n` child
/// cylinders.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Node<L> {
    Leaf(L),
    Split { point: L, children: Vec<Node<L>> },
}

impl<L: Clone + PartialEq> Node<L> {
    fn split(&mut self, n: u8) {
        if let Node::Leaf(l) = self {
            let l = l.clone();
            *self = Node::Split {
                point: l.clone(),
                children: vec![Node::Leaf(l); n as usize],
            };
        }
    }

    fn apply_all(&mut self, f: &mut dyn FnMut(&mut L)) {
        match self {
            Node::Leaf(l) => f(l),
            Node::Split { point, children } => {
                f(point);
                for c in children {
                    c.apply_all(f);
                }
            }
        }
    }

    /// Apply `f` to every label inside `set`.
    pub(crate) fn assign(&mut self, set: &BasicSet, n: u8, f: &mut dyn FnMut(&mut L)) {
        let is_point = matches!(set, BasicSet::Point(_));
        let mut node = self;
        for &a in set.word().letters() {
            node.split(n);
            node = match node {
                Node::Split { children, .. } => &mut children[(a - 1) as usize],
                Node::Leaf(_) => unreachable!(),
            };
        }
        if is_point {
            node.split(n);
            if let Node::Split { point, .. } = node {
                f(point);
            }
        } else {
            node.apply_all(f);
        }
    }

    /// Pointwise combination of two trees.
    pub(crate) fn zip<M, R>(&self, other: &Node<M>, n: u8, op: &mut dyn FnMut(&L, &M) -> R) -> Node<R>
    where
        M: Clone + PartialEq,
        R: Clone + PartialEq,
    {
        match (self, other) {
            (Node::Leaf(a), Node::Leaf(b)) => Node::Leaf(op(a, b)),
            _ => {
                let mut x = self.clone();
                let mut y = other.clone();
                x.split(n);
                y.split(n);
                match (x, y) {
                    (
                        Node::Split {
                            point: pa,
                            children: ca,
                        },
                        Node::Split {
                            point: pb,
                            children: cb,
                        },
                    ) => Node::Split {
                        point: op(&pa, &pb),
                        children: ca
                            .iter()
                            .zip(cb.iter())
                            .map(|(a, b)| a.zip(b, n, op))
                            .collect(),
                    },
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Merge splits whose children (and point, unless `ignore_points`) all
    /// carry one label; bottom-up, so the result is the coarsest tree.
    pub(crate) fn merge(self, ignore_points: bool) -> Node<L> {
        match self {
            Node::Leaf(l) => Node::Leaf(l),
            Node::Split { point, children } => {
                let children: Vec<Node<L>> =
                    children.into_iter().map(|c| c.merge(ignore_points)).collect();
                if let Node::Leaf(first) = &children[0] {
                    let uniform = children
                        .iter()
                        .all(|c| matches!(c, Node::Leaf(l) if l == first));
                    if uniform && (ignore_points || &point == first) {
                        return Node::Leaf(first.clone());
                    }
                }
                Node::Split { point, children }
            }
        }
    }

    /// Enumerate the pieces of the tree as basic sets with their labels.
    pub(crate) fn pieces(&self, at: &Word, infinite: bool, out: &mut dyn FnMut(BasicSet, &L)) {
        match self {
            Node::Leaf(l) => {
                let set = if infinite {
                    BasicSet::CylInf(at.clone())
                } else {
                    BasicSet::Cyl(at.clone())
                };
                out(set, l);
            }
            Node::Split { point, children } => {
                if !infinite {
                    out(BasicSet::Point(at.clone()), point);
                }
                for (i, c) in children.iter().enumerate() {
                    c.pieces(&at.child(i as u8 + 1), infinite, out);
                }
            }
        }
    }

    /// The subtree describing `Z(w)`.
    pub(crate) fn subtree(&self, w: &Word) -> Node<L> {
        self.subtree_ref(w).clone()
    }

    /// Replace the subtree at `w` by `sub`.
    pub(crate) fn graft(&mut self, w: &Word, sub: Node<L>, n: u8) {
        let mut node = self;
        for &a in w.letters() {
            node.split(n);
            node = match node {
                Node::Split { children, .. } => &mut children[(a - 1) as usize],
                Node::Leaf(_) => unreachable!(),
            };
        }
        *node = sub;
    }

    /// The label of the single finite word `w`.
    pub(crate) fn point_label(&self, w: &Word) -> &L {
        match self.subtree_ref(w) {
            Node::Leaf(l) => l,
            Node::Split { point, .. } => point,
        }
    }

    fn subtree_ref(&self, w: &Word) -> &Node<L> {
        let mut node = self;
        for &a in w.letters() {
            match node {
                Node::Leaf(_) => return node,
                Node::Split { children, .. } => node = &children[(a - 1) as usize],
            }
        }
        node
    }

    pub(crate) fn set_point(&mut self, w: &Word, value: L, n: u8) {
        self.assign(&BasicSet::Point(w.clone()), n, &mut |l: &mut L| *l = value.clone());
    }
}
