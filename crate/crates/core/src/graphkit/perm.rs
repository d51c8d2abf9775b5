//! Permutations as image vectors: `p[k]` is where `k` goes.

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `p ∘ q`: apply `q` first.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&k| p[k]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

pub fn sign(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut s = 1i8;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

pub fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

/// All permutations of `items`, in lexicographic order of positions.
pub fn permutations_of<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..items.len()).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // next permutation
        let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else { break };
        let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).unwrap();
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
    out
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    permutations_of(&identity(n))
}

/// Permutations of `0..n` that permute each block of consecutive positions within itself.
pub fn block_perms(blocks: &[std::ops::Range<usize>], n: usize) -> Vec<Perm> {
    let mut out = vec![identity(n)];
    for b in blocks {
        let items: Vec<usize> = b.clone().collect();
        let mut next = Vec::new();
        for p in &out {
            for q in permutations_of(&items) {
                let mut r = p.clone();
                for (k, &v) in items.iter().zip(&q) {
                    r[*k] = v;
                }
                next.push(r);
            }
        }
        out = next;
    }
    out
}

pub fn rotation(n: usize, r: usize) -> Perm {
    (0..n).map(|k| (k + r) % n).collect()
}
