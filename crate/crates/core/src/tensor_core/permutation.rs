use alloc::vec::Vec;

/// A permutation of `0..p` together with its sign.
///
/// `mapping[k]` is the image of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn identity(p: usize) -> Self {
        Self { mapping: (0..p).collect(), sign: 1 }
    }

    /// Returns `None` unless `mapping` is a bijection of `0..mapping.len()`.
    pub fn from_mapping(mapping: Vec<usize>) -> Option<Self> {
        let p = mapping.len();
        let mut seen = alloc::vec![false; p];
        for &m in &mapping {
            if m >= p || seen[m] {
                return None;
            }
            seen[m] = true;
        }
        let sign = cycle_sign(&mapping);
        Some(Self { mapping, sign })
    }

    /// The transposition exchanging `i` and `j` in `0..p`.
    pub fn transposition(p: usize, i: usize, j: usize) -> Self {
        assert!(i < p && j < p, "transposition index out of range");
        let mut mapping: Vec<usize> = (0..p).collect();
        mapping.swap(i, j);
        let sign = if i == j { 1 } else { -1 };
        Self { mapping, sign }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn apply(&self, k: usize) -> usize {
        self.mapping[k]
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different size");
        let mapping = other.mapping.iter().map(|&k| self.mapping[k]).collect();
        Self { mapping, sign: self.sign * other.sign }
    }

    pub fn inverse(&self) -> Self {
        let mut mapping = alloc::vec![0; self.len()];
        for (k, &m) in self.mapping.iter().enumerate() {
            mapping[m] = k;
        }
        Self { mapping, sign: self.sign }
    }

    /// Number of swaps a selection sort needs to restore the identity.
    pub fn transposition_count(&self) -> usize {
        let mut work = self.mapping.clone();
        let mut swaps = 0;
        for k in 0..work.len() {
            while work[k] != k {
                let target = work[k];
                work.swap(k, target);
                swaps += 1;
            }
        }
        swaps
    }
}

fn cycle_sign(mapping: &[usize]) -> i8 {
    let mut visited = alloc::vec![false; mapping.len()];
    let mut even_cycles = 0usize;
    for start in 0..mapping.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !visited[k] {
            visited[k] = true;
            k = mapping[k];
            len += 1;
        }
        if len % 2 == 0 {
            even_cycles += 1;
        }
    }
    if even_cycles.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Every permutation of `0..p` in lexicographic order.
pub fn all_permutations(p: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..p).collect();
    loop {
        out.push(Permutation::from_mapping(current.clone()).expect("valid by construction"));
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
