//! Order maintenance for coordinates that get "epsilon" neighbors.
//!
//! Each coordinate is a node in a linked list carrying a `u64` tag whose
//! numeric order matches list order. Inserting directly before or after a
//! node bisects the gap to its neighbor; when a gap is exhausted the whole
//! list is re-spread evenly, which preserves order and therefore every
//! comparison made through [`OrderList::tag`].

const HEAD: usize = 0;
const TAIL: usize = 1;

#[derive(Debug, Clone)]
struct Node {
    prev: usize,
    next: usize,
    tag: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct OrderList {
    nodes: Vec<Node>,
}

impl OrderList {
    /// A list holding `len` nodes in order; node handles are `0..len`.
    pub(crate) fn with_len(len: usize) -> Self {
        let mut nodes = vec![Node { prev: HEAD, next: TAIL, tag: 0 }, Node { prev: HEAD, next: TAIL, tag: u64::MAX }];
        let mut prev = HEAD;
        for k in 0..len {
            let id = k + 2;
            nodes.push(Node { prev, next: TAIL, tag: 0 });
            nodes[prev].next = id;
            prev = id;
        }
        nodes[TAIL].prev = prev;
        let mut list = Self { nodes };
        list.respread();
        list
    }

    pub(crate) fn tag(&self, handle: usize) -> u64 {
        self.nodes[handle + 2].tag
    }

    pub(crate) fn insert_after(&mut self, handle: usize) -> usize {
        let at = handle + 2;
        let next = self.nodes[at].next;
        self.link_between(at, next)
    }

    pub(crate) fn insert_before(&mut self, handle: usize) -> usize {
        let at = handle + 2;
        let prev = self.nodes[at].prev;
        self.link_between(prev, at)
    }

    fn link_between(&mut self, prev: usize, next: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node { prev, next, tag: 0 });
        self.nodes[prev].next = id;
        self.nodes[next].prev = id;
        let (lo, hi) = (self.nodes[prev].tag, self.nodes[next].tag);
        if hi - lo >= 2 {
            self.nodes[id].tag = lo + (hi - lo) / 2;
        } else {
            self.respread();
        }
        id - 2
    }

    fn respread(&mut self) {
        let count = self.nodes.len() as u64 - 2;
        let step = u64::MAX / (count + 1);
        let mut cur = self.nodes[HEAD].next;
        let mut tag = 0u64;
        while cur != TAIL {
            tag += step;
            self.nodes[cur].tag = tag;
            cur = self.nodes[cur].next;
        }
    }

    /// 1-based rank of every handle in list order.
    pub(crate) fn ranks(&self) -> Vec<u32> {
        let mut ranks = vec![0; self.nodes.len() - 2];
        let mut cur = self.nodes[HEAD].next;
        let mut r = 0;
        while cur != TAIL {
            r += 1;
            ranks[cur - 2] = r;
            cur = self.nodes[cur].next;
        }
        ranks
    }
}
