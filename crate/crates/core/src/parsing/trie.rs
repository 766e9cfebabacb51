/// Id of the empty phrase.
pub const ROOT: u32 = 0;

#[derive(Debug, Clone)]
pub struct TrieNode {
    pub parent: u32,
    /// Last symbol of the phrase this node spells; meaningless on the root.
    pub symbol: u32,
    pub depth: u32,
    /// Times the parse entered this node (the root counts phrase starts).
    pub visits: u64,
    // sorted by symbol
    children: Vec<(u32, u32)>,
}

impl TrieNode {
    fn new(parent: u32, symbol: u32, depth: u32) -> Self {
        Self {
            parent,
            symbol,
            depth,
            visits: 0,
            children: Vec::new(),
        }
    }

    pub fn child(&self, symbol: u32) -> Option<u32> {
        self.children
            .binary_search_by_key(&symbol, |&(s, _)| s)
            .ok()
            .map(|i| self.children[i].1)
    }

    pub fn children(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.children.iter().copied()
    }
}

/// Dictionary of parsed phrases. Node ids are phrase ids in creation order.
#[derive(Debug, Clone)]
pub struct ParseTrie {
    nodes: Vec<TrieNode>,
}

impl Default for ParseTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl ParseTrie {
    pub fn new() -> Self {
        Self {
            nodes: vec![TrieNode::new(ROOT, 0, 0)],
        }
    }

    /// Rebuild from `(prefix id, new symbol)` records of the complete phrases.
    pub fn from_links(records: impl IntoIterator<Item = (u32, u32)>) -> Option<Self> {
        let mut trie = Self::new();
        for (parent, symbol) in records {
            if parent as usize >= trie.nodes.len() || trie.child(parent, symbol).is_some() {
                return None;
            }
            trie.insert(parent, symbol);
        }
        Some(trie)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Only the root is present.
    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn node(&self, id: u32) -> &TrieNode {
        &self.nodes[id as usize]
    }

    pub fn child(&self, node: u32, symbol: u32) -> Option<u32> {
        self.nodes[node as usize].child(symbol)
    }

    /// Add a leaf under `parent`; the caller guarantees it is new.
    pub fn insert(&mut self, parent: u32, symbol: u32) -> u32 {
        let id = self.nodes.len() as u32;
        let depth = self.nodes[parent as usize].depth + 1;
        self.nodes.push(TrieNode::new(parent, symbol, depth));
        let children = &mut self.nodes[parent as usize].children;
        let at = children.partition_point(|&(s, _)| s < symbol);
        children.insert(at, (symbol, id));
        id
    }

    pub(crate) fn visit(&mut self, node: u32) {
        self.nodes[node as usize].visits += 1;
    }

    /// The phrase spelled by `node`, root to leaf.
    pub fn spell(&self, mut node: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.nodes[node as usize].depth as usize);
        while node != ROOT {
            let n = &self.nodes[node as usize];
            out.push(n.symbol);
            node = n.parent;
        }
        out.reverse();
        out
    }
}
