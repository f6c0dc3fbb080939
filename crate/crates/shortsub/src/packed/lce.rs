//! Suffix array, LCP array, range-minimum and longest-common-extension queries.

/// Suffix array of `text` by prefix doubling with counting sort.
/// A proper prefix sorts before any longer string it is a prefix of.
pub fn suffix_array(text: &[u32]) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    // initial ranks: dense remap of the letters
    let mut sorted: Vec<u32> = text.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut rank: Vec<usize> = text
        .iter()
        .map(|c| sorted.binary_search(c).unwrap() + 1)
        .collect();
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| rank[i]);
    let mut tmp = vec![0usize; n];
    let mut buf = vec![0usize; n];
    let mut k = 1;
    let mut classes = sorted.len();
    while classes < n {
        // sort by second key (rank[i+k], 0 when past the end), then stable by first
        let second = |i: usize| if i + k < n { rank[i + k] } else { 0 };
        let max_rank = classes + 1;
        let mut cnt = vec![0usize; max_rank + 1];
        for i in 0..n {
            cnt[second(i)] += 1;
        }
        for r in 1..=max_rank {
            cnt[r] += cnt[r - 1];
        }
        for i in (0..n).rev() {
            let r = second(i);
            cnt[r] -= 1;
            buf[cnt[r]] = i;
        }
        let mut cnt = vec![0usize; max_rank + 1];
        for i in 0..n {
            cnt[rank[i]] += 1;
        }
        for r in 1..=max_rank {
            cnt[r] += cnt[r - 1];
        }
        for &i in buf.iter().rev() {
            let r = rank[i];
            cnt[r] -= 1;
            sa[cnt[r]] = i;
        }
        tmp[sa[0]] = 1;
        let mut c = 1;
        for w in 1..n {
            let (a, b) = (sa[w - 1], sa[w]);
            if rank[a] != rank[b] || second(a) != second(b) {
                c += 1;
            }
            tmp[b] = c;
        }
        std::mem::swap(&mut rank, &mut tmp);
        classes = c;
        k *= 2;
    }
    sa
}

/// Kasai's algorithm: `lcp[0] = 0`, `lcp[r] = LCP(SA[r-1], SA[r])`.
pub fn lcp_array(text: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut isa = vec![0usize; n];
    for (r, &i) in sa.iter().enumerate() {
        isa[i] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if isa[i] == 0 {
            h = 0;
            continue;
        }
        let j = sa[isa[i] - 1];
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[isa[i]] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

const BLOCK: usize = 32;

/// Range minimum over a fixed array: sparse table on block minima plus
/// in-block scans.
#[derive(Debug, Clone)]
pub struct Rmq {
    values: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl Rmq {
    pub fn new(values: Vec<usize>) -> Rmq {
        let nb = values.len().div_ceil(BLOCK);
        let mut level0 = Vec::with_capacity(nb);
        for b in 0..nb {
            let end = ((b + 1) * BLOCK).min(values.len());
            level0.push(*values[b * BLOCK..end].iter().min().unwrap());
        }
        let mut table = vec![level0];
        let mut width = 1;
        while 2 * width <= nb {
            let prev = table.last().unwrap();
            let next: Vec<usize> = (0..=nb - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            table.push(next);
            width *= 2;
        }
        Rmq { values, table }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Minimum of `values[lo..=hi]`.
    pub fn min(&self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi && hi < self.values.len());
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bh - bl <= 1 {
            return *self.values[lo..=hi].iter().min().unwrap();
        }
        let mut m = *self.values[lo..(bl + 1) * BLOCK].iter().min().unwrap();
        m = m.min(*self.values[bh * BLOCK..=hi].iter().min().unwrap());
        let (a, b) = (bl + 1, bh - 1);
        let lvl = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        let t = &self.table[lvl];
        m.min(t[a]).min(t[b + 1 - (1 << lvl)])
    }
}

/// Longest-common-extension queries over one text.
#[derive(Debug, Clone)]
pub struct Lce {
    text: Vec<u32>,
    sa: Vec<usize>,
    isa: Vec<usize>,
    rmq: Rmq,
}

impl Lce {
    pub fn new(text: &[u32]) -> Lce {
        let sa = suffix_array(text);
        let lcp = lcp_array(text, &sa);
        let mut isa = vec![0usize; text.len()];
        for (r, &i) in sa.iter().enumerate() {
            isa[i] = r;
        }
        Lce { text: text.to_vec(), sa, isa, rmq: Rmq::new(lcp) }
    }

    pub fn from_packed(s: &super::PackedString) -> Lce {
        Lce::new(&s.to_vec())
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &[u32] {
        &self.text
    }

    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    pub fn isa(&self) -> &[usize] {
        &self.isa
    }

    /// LCP of suffixes `i` and `j`; positions equal to `len()` denote the empty suffix.
    pub fn lce(&self, i: usize, j: usize) -> usize {
        let n = self.text.len();
        if i >= n || j >= n {
            return 0;
        }
        if i == j {
            return n - i;
        }
        let (a, b) = (self.isa[i].min(self.isa[j]), self.isa[i].max(self.isa[j]));
        self.rmq.min(a + 1, b)
    }

    /// Compares suffix `i` with suffix `j` in lexicographic order.
    pub fn cmp_suffix(&self, i: usize, j: usize) -> std::cmp::Ordering {
        let n = self.text.len();
        match (i >= n, j >= n) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Less,
            (false, true) => std::cmp::Ordering::Greater,
            _ => self.isa[i].cmp(&self.isa[j]),
        }
    }

    /// Compares `text[i..i+li)` with `text[j..j+lj)`.
    pub fn cmp_fragments(&self, i: usize, li: usize, j: usize, lj: usize) -> std::cmp::Ordering {
        let l = self.lce(i, j).min(li).min(lj);
        if l == li || l == lj {
            return li.cmp(&lj);
        }
        self.text[i + l].cmp(&self.text[j + l])
    }
}
