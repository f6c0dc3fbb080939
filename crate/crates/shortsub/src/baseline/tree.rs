//! Compacted trie over a lexicographically sorted list of strings.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    /// string depth
    pub sd: usize,
    /// the root is its own parent
    pub parent: usize,
    pub children: Vec<usize>,
    pub leaf: Option<usize>,
    /// range of sorted ranks below this node, inclusive
    pub lb: usize,
    pub rb: usize,
}

#[derive(Debug, Clone)]
pub struct CompactTree {
    nodes: Vec<Node>,
    leaf_of_rank: Vec<usize>,
}

impl CompactTree {
    /// Builds the tree of strings given in sorted order.
    ///
    /// `depths[r]` is the length of the r-th string, `lcps[r]` its LCP with the
    /// (r-1)-th (ignored for r = 0) and `ids[r]` its leaf label. Each depth must
    /// exceed the LCPs on both sides, so every string ends in its own leaf.
    pub fn from_sorted(depths: &[usize], lcps: &[usize], ids: &[usize]) -> CompactTree {
        let n = depths.len();
        assert_eq!(lcps.len(), n);
        assert_eq!(ids.len(), n);
        let mut nodes = vec![Node { sd: 0, parent: 0, children: Vec::new(), leaf: None, lb: 0, rb: 0 }];
        let mut leaf_of_rank = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        for r in 0..n {
            if r > 0 {
                let l = lcps[r];
                let mut last = None;
                while nodes[*stack.last().unwrap()].sd > l {
                    last = stack.pop();
                }
                let top = *stack.last().unwrap();
                if nodes[top].sd < l {
                    let child = last.expect("depth above lcp implies a popped node");
                    let id = nodes.len();
                    nodes.push(Node { sd: l, parent: top, children: vec![child], leaf: None, lb: 0, rb: 0 });
                    let slot = nodes[top].children.iter().position(|&c| c == child).unwrap();
                    nodes[top].children[slot] = id;
                    nodes[child].parent = id;
                    stack.push(id);
                }
            }
            let top = *stack.last().unwrap();
            assert!(depths[r] > nodes[top].sd, "leaf depth must exceed its lcps");
            let id = nodes.len();
            nodes.push(Node { sd: depths[r], parent: top, children: Vec::new(), leaf: Some(ids[r]), lb: r, rb: r });
            nodes[top].children.push(id);
            leaf_of_rank.push(id);
            stack.push(id);
        }
        let mut t = CompactTree { nodes, leaf_of_rank };
        for v in t.postorder() {
            if !t.nodes[v].children.is_empty() {
                let lb = t.nodes[t.nodes[v].children[0]].lb;
                let rb = t.nodes[*t.nodes[v].children.last().unwrap()].rb;
                t.nodes[v].lb = lb;
                t.nodes[v].rb = rb;
            }
        }
        t
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, v: usize) -> &Node {
        &self.nodes[v]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Leaf node holding the r-th string.
    pub fn leaf_at_rank(&self, r: usize) -> usize {
        self.leaf_of_rank[r]
    }

    /// Children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(0usize, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                out.push(v);
                continue;
            }
            stack.push((v, true));
            for &c in self.nodes[v].children.iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }

    /// Parents before children, children in lexicographic order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v].children.iter().rev());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_distinct_first_letters() {
        let t = CompactTree::from_sorted(&[3, 2, 4], &[0, 0, 0], &[7, 8, 9]);
        assert_eq!(t.node(0).children.len(), 3);
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn banana() {
        // sorted suffixes of banana$ with $ smallest
        let sa = [6, 5, 3, 1, 0, 4, 2];
        let lcp = [0, 0, 1, 3, 0, 0, 2];
        let depths: Vec<usize> = sa.iter().map(|&i| 7 - i).collect();
        let t = CompactTree::from_sorted(&depths, &lcp, &sa);
        // root, 7 leaves, internal nodes a, ana, na
        assert_eq!(t.len(), 11);
        let a = t.node(0).children[1];
        assert_eq!(t.node(a).sd, 1);
        assert_eq!((t.node(a).lb, t.node(a).rb), (1, 3));
        let ana = t.node(a).children[1];
        assert_eq!(t.node(ana).sd, 3);
        assert_eq!(t.node(t.leaf_at_rank(4)).parent, 0);
        assert_eq!(t.postorder().last(), Some(&0));
    }
}
