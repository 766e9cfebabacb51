use crate::sequence::Sequence;

use super::trie::{ParseTrie, ROOT};

/// LZ78 phrase decomposition of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseResult {
    /// Half-open `(start, end)` intervals partitioning `0..n`.
    pub boundaries: Vec<(usize, usize)>,
    /// Phrase id of each phrase's longest proper prefix phrase (0 = empty).
    pub prefix_links: Vec<u32>,
    /// Trie node each phrase ends at. Complete phrase `i` is node `i + 1`;
    /// an incomplete final phrase points at the earlier phrase it repeats.
    pub phrase_ids: Vec<u32>,
    /// The final phrase repeats an earlier one because the input ran out.
    pub last_incomplete: bool,
}

impl ParseResult {
    /// Phrase count, including an incomplete final phrase.
    pub fn c(&self) -> usize {
        self.boundaries.len()
    }

    pub fn complete_phrases(&self) -> usize {
        self.c() - usize::from(self.last_incomplete)
    }

    pub fn phrases<'a>(&'a self, x: &'a [u32]) -> impl Iterator<Item = &'a [u32]> + 'a {
        self.boundaries.iter().map(move |&(s, e)| &x[s..e])
    }
}

/// Incremental (LZ78) parse: each phrase is the shortest string not yet
/// seen as a phrase; the last phrase may repeat an earlier one.
pub fn incremental_parse(x: &Sequence) -> ParseResult {
    parse_symbols(x.symbols()).0
}

/// Same as [`incremental_parse`], also returning the phrase dictionary.
pub fn incremental_parse_with_trie(x: &Sequence) -> (ParseResult, ParseTrie) {
    parse_symbols(x.symbols())
}

pub(crate) fn parse_symbols(x: &[u32]) -> (ParseResult, ParseTrie) {
    let mut trie = ParseTrie::new();
    let mut boundaries = Vec::new();
    let mut prefix_links = Vec::new();
    let mut phrase_ids = Vec::new();
    let mut start = 0usize;
    let mut node = ROOT;
    if !x.is_empty() {
        trie.visit(ROOT);
    }
    for (i, &sym) in x.iter().enumerate() {
        match trie.child(node, sym) {
            Some(next) => {
                trie.visit(next);
                node = next;
            }
            None => {
                let id = trie.insert(node, sym);
                trie.visit(id);
                boundaries.push((start, i + 1));
                prefix_links.push(node);
                phrase_ids.push(id);
                start = i + 1;
                node = ROOT;
                if start < x.len() {
                    trie.visit(ROOT);
                }
            }
        }
    }
    let last_incomplete = start < x.len();
    if last_incomplete {
        boundaries.push((start, x.len()));
        prefix_links.push(trie.node(node).parent);
        phrase_ids.push(node);
    }
    (
        ParseResult {
            boundaries,
            prefix_links,
            phrase_ids,
            last_incomplete,
        },
        trie,
    )
}

/// Phrase count only.
pub(crate) fn phrase_count(x: &[u32]) -> usize {
    parse_symbols(x).0.c()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Alphabet;
    use std::collections::HashSet;

    // Quadratic reference: keep a set of seen phrases and grow greedily.
    fn naive_parse(x: &[u32]) -> Vec<Vec<u32>> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        for &s in x {
            cur.push(s);
            if seen.insert(cur.clone()) {
                out.push(std::mem::take(&mut cur));
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        out
    }

    fn letters(s: &str) -> Sequence {
        let abc: Vec<u8> = (b'a'..=b'z').collect();
        Sequence::from_bytes(Alphabet::with_bytes(&abc).unwrap(), s.as_bytes()).unwrap()
    }

    fn phrase_strings(x: &Sequence) -> Vec<String> {
        let r = incremental_parse(x);
        let bytes = x.to_bytes().unwrap();
        r.boundaries
            .iter()
            .map(|&(s, e)| String::from_utf8(bytes[s..e].to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn aaaa() {
        let x = letters("aaaa");
        let r = incremental_parse(&x);
        assert_eq!(phrase_strings(&x), ["a", "aa", "a"]);
        assert_eq!(r.c(), 3);
        assert!(r.last_incomplete);
        assert_eq!(r.phrase_ids, vec![1, 2, 1]);
        assert_eq!(r.prefix_links, vec![0, 1, 0]);
        let naive = naive_parse(x.symbols());
        assert_eq!(naive.len(), 3);
    }

    #[test]
    fn empty() {
        let r = incremental_parse(&Sequence::empty(Alphabet::binary()));
        assert_eq!(r.c(), 0);
        assert!(!r.last_incomplete);
    }

    #[test]
    fn trie_visit_counts() {
        let x = letters("aaaa");
        let (_, trie) = incremental_parse_with_trie(&x);
        assert_eq!(trie.len(), 3);
        // root entered for 3 phrases, "a" entered 3 times, "aa" once
        assert_eq!(trie.node(0).visits, 3);
        assert_eq!(trie.node(1).visits, 3);
        assert_eq!(trie.node(2).visits, 1);
        assert_eq!(trie.spell(2), vec![0, 0]);
    }

    #[test]
    fn agrees_with_naive_on_small_inputs() {
        for len in 0..12 {
            for bits in 0u32..(1 << len) {
                let x: Vec<u32> = (0..len).map(|i| (bits >> i) & 1).collect();
                let (r, _) = parse_symbols(&x);
                let got: Vec<Vec<u32>> = r.phrases(&x).map(|p| p.to_vec()).collect();
                assert_eq!(got, naive_parse(&x));
            }
        }
    }
}
