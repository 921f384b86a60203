//! Row calculus shared by the `V_n` and `Γ_n` tables.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::words::{check_partition, is_prefix_free, kraft_sum, BoundaryPoint, Node, Word};
use num_traits::One;

pub(crate) type Row = (Word, Word);

/// Cylinder rows `src·x ↦ dst·x` plus singleton rows `src ↦ dst`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Rows {
    pub cyl: Vec<Row>,
    pub pts: Vec<Row>,
}

impl Rows {
    pub fn identity() -> Self {
        Rows {
            cyl: vec![(Word::empty(), Word::empty())],
            pts: Vec::new(),
        }
    }

    /// Check the partition conditions on both sides.
    pub fn validate(&self, n: u8, with_points: bool) -> Result<()> {
        if !with_points && !self.pts.is_empty() {
            return Err(Error::input("singleton rows are not allowed in a V_n table"));
        }
        for side in [0, 1] {
            let pick = |r: &Row| if side == 0 { r.0.clone() } else { r.1.clone() };
            let cyls: Vec<Word> = self.cyl.iter().map(pick).collect();
            if with_points {
                let pts: Vec<Word> = self.pts.iter().map(pick).collect();
                check_partition(&cyls, &pts, n)?;
            } else {
                for w in &cyls {
                    w.validate(n)?;
                }
                let kraft = kraft_sum(&cyls, n);
                if !is_prefix_free(&cyls) || !kraft.is_one() {
                    return Err(Error::Partition {
                        reason: format!(
                            "{} words are not a complete prefix code",
                            if side == 0 { "source" } else { "destination" }
                        ),
                        kraft,
                    });
                }
            }
        }
        Ok(())
    }

    /// Merge `n` sibling rows (plus the parent singleton row when points are
    /// tracked) into their parent row until no merge applies, then sort.
    pub fn normalize(mut self, n: u8, with_points: bool) -> Self {
        let mut cyl: BTreeMap<Word, Word> = self.cyl.drain(..).collect();
        let mut pts: BTreeMap<Word, Word> = self.pts.drain(..).collect();
        // Deepest parents first, so a single sweep per length suffices; a
        // merge can only enable merges at strictly shorter sources.
        let max_len = cyl.keys().map(Word::len).max().unwrap_or(0);
        for len in (1..=max_len).rev() {
            let parents: Vec<Word> = cyl
                .keys()
                .filter(|w| w.len() == len && w.last() == Some(1))
                .filter_map(Word::parent)
                .collect();
            for p in parents {
                let Some(q) = cyl.get(&p.child(1)).and_then(Word::parent) else {
                    continue;
                };
                let siblings_match = (1..=n).all(|a| cyl.get(&p.child(a)) == Some(&q.child(a)));
                let point_matches = !with_points || pts.get(&p) == Some(&q);
                if siblings_match && point_matches {
                    for a in 1..=n {
                        cyl.remove(&p.child(a));
                    }
                    pts.remove(&p);
                    cyl.insert(p, q);
                }
            }
        }
        Rows {
            cyl: cyl.into_iter().collect(),
            pts: pts.into_iter().collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let swap = |v: &[Row]| v.iter().map(|(a, b)| (b.clone(), a.clone())).collect::<Vec<_>>();
        let mut out = Rows {
            cyl: swap(&self.cyl),
            pts: swap(&self.pts),
        };
        out.cyl.sort();
        out.pts.sort();
        out
    }

    fn cyl_map(&self) -> HashMap<&Word, &Word> {
        self.cyl.iter().map(|(s, d)| (s, d)).collect()
    }

    /// The cylinder row whose source is a prefix of `w`, if any.
    pub fn covering<'a>(&'a self, w: &[u8], map: &HashMap<&'a Word, &'a Word>) -> Option<(usize, &'a Word)> {
        (0..=w.len()).find_map(|k| {
            let key = Word::new(w[..k].to_vec());
            map.get(&key).map(|d| (k, *d))
        })
    }

    /// Image of a finite word (cylinder rows first, then singleton rows).
    pub fn map_word(&self, w: &Word) -> Option<Word> {
        let map = self.cyl_map();
        if let Some((k, d)) = self.covering(w.letters(), &map) {
            return Some(d.concat(&Word::new(w.letters()[k..].to_vec())));
        }
        self.pts.iter().find(|(s, _)| s == w).map(|(_, d)| d.clone())
    }

    /// The row applying at a point: `(|src|, dst, is_point_row)`.
    pub fn row_at(&self, x: &BoundaryPoint) -> Option<(usize, Word, bool)> {
        if let Some((s, d)) = self.cyl.iter().find(|(s, _)| x.starts_with(s)) {
            return Some((s.len(), d.clone(), false));
        }
        match x {
            BoundaryPoint::Finite(w) => self
                .pts
                .iter()
                .find(|(s, _)| s == w)
                .map(|(s, d)| (s.len(), d.clone(), true)),
            BoundaryPoint::Periodic { .. } => None,
        }
    }

    /// `g ∘ h`: apply `h` first.
    pub fn compose(g: &Rows, h: &Rows, n: u8, with_points: bool) -> Rows {
        let gmap = g.cyl_map();
        let mut cyl = Vec::new();
        let mut pts = Vec::new();
        let mut work: Vec<Row> = h.cyl.clone();
        while let Some((s, d)) = work.pop() {
            if let Some((k, gd)) = g.covering(d.letters(), &gmap) {
                cyl.push((s, gd.concat(&Word::new(d.letters()[k..].to_vec()))));
            } else {
                // `Z(d)` is cut finer by `g`: subdivide the row.
                if with_points {
                    pts.push((s.clone(), d.clone()));
                }
                for a in 1..=n {
                    work.push((s.child(a), d.child(a)));
                }
            }
        }
        let mut out_pts = Vec::new();
        for (s, d) in pts.into_iter().chain(h.pts.iter().cloned()) {
            let image = g.map_word(&d).expect("tables are total on finite words");
            out_pts.push((s, image));
        }
        Rows { cyl, pts: out_pts }.normalize(n, with_points)
    }

    /// Replace the cylinder row at `idx` by its `n` children (and the
    /// singleton row of its own word when points are tracked).
    pub fn expand(&mut self, idx: usize, n: u8, with_points: bool) {
        let (s, d) = self.cyl.remove(idx);
        for a in 1..=n {
            self.cyl.push((s.child(a), d.child(a)));
        }
        if with_points {
            self.pts.push((s, d));
        }
    }

    /// Push a labelled tree forward along the rows: the label at `x` moves
    /// to the image of `x`.
    pub fn push_tree<L: Clone + PartialEq>(&self, tree: &Node<L>, n: u8, empty: L) -> Node<L> {
        let mut out = Node::Leaf(empty);
        for (s, d) in &self.cyl {
            out.graft(d, tree.subtree(s), n);
        }
        for (s, d) in &self.pts {
            let value = tree.point_label(s).clone();
            out.set_point(d, value, n);
        }
        out
    }
}
