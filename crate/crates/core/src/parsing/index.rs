//! Suffix automaton over a reference string, used to answer "longest prefix
//! of this suffix that occurs somewhere in the reference" queries.
//! Construction follows the usual online algorithm (cp-algorithms.com).

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct State {
    len: u32,
    link: u32,
    // sorted by symbol
    next: Vec<(u32, u32)>,
}

impl State {
    fn get(&self, symbol: u32) -> Option<u32> {
        self.next
            .binary_search_by_key(&symbol, |&(s, _)| s)
            .ok()
            .map(|i| self.next[i].1)
    }

    fn set(&mut self, symbol: u32, to: u32) {
        match self.next.binary_search_by_key(&symbol, |&(s, _)| s) {
            Ok(i) => self.next[i].1 = to,
            Err(i) => self.next.insert(i, (symbol, to)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SubstringIndex {
    states: Vec<State>,
}

impl SubstringIndex {
    pub fn build(text: &[u32]) -> Self {
        let mut states = Vec::with_capacity(2 * text.len().max(1));
        states.push(State {
            len: 0,
            link: NONE,
            next: Vec::new(),
        });
        let mut last = 0u32;
        for &c in text {
            let cur = states.len() as u32;
            states.push(State {
                len: states[last as usize].len + 1,
                link: 0,
                next: Vec::new(),
            });
            let mut p = last;
            while p != NONE && states[p as usize].get(c).is_none() {
                states[p as usize].set(c, cur);
                p = states[p as usize].link;
            }
            if p != NONE {
                let q = states[p as usize].get(c).unwrap();
                if states[p as usize].len + 1 == states[q as usize].len {
                    states[cur as usize].link = q;
                } else {
                    let clone = states.len() as u32;
                    let mut cloned = states[q as usize].clone();
                    cloned.len = states[p as usize].len + 1;
                    states.push(cloned);
                    while p != NONE && states[p as usize].get(c) == Some(q) {
                        states[p as usize].set(c, clone);
                        p = states[p as usize].link;
                    }
                    states[q as usize].link = clone;
                    states[cur as usize].link = clone;
                }
            }
            last = cur;
        }
        Self { states }
    }

    /// Length of the longest prefix of `pattern` that is a substring of the text.
    pub fn longest_prefix_match(&self, pattern: &[u32]) -> usize {
        let mut state = 0u32;
        for (i, &c) in pattern.iter().enumerate() {
            match self.states[state as usize].get(c) {
                Some(next) => state = next,
                None => return i,
            }
        }
        pattern.len()
    }

    pub fn contains(&self, pattern: &[u32]) -> bool {
        self.longest_prefix_match(pattern) == pattern.len()
    }
}
