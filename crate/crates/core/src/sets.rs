//! Small utilities over sorted item sets.
//!
//! Item sets are sorted, duplicate-free `Vec<Item>` throughout the crate;
//! families of sets order canonically by (cardinality, lexicographic).

pub type Item = u32;

/// Sorts and deduplicates.
pub fn normalize(mut v: Vec<Item>) -> Vec<Item> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `a ⊆ b` for sorted slices.
pub fn is_subset(a: &[Item], b: &[Item]) -> bool {
    let mut bi = 0;
    'outer: for &x in a {
        while bi < b.len() {
            if b[bi] == x {
                bi += 1;
                continue 'outer;
            }
            if b[bi] > x {
                return false;
            }
            bi += 1;
        }
        return false;
    }
    true
}

pub fn intersection(a: &[Item], b: &[Item]) -> Vec<Item> {
    let (mut ai, mut bi) = (0, 0);
    let mut out = Vec::new();
    while ai < a.len() && bi < b.len() {
        match a[ai].cmp(&b[bi]) {
            std::cmp::Ordering::Less => ai += 1,
            std::cmp::Ordering::Greater => bi += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[ai]);
                ai += 1;
                bi += 1;
            }
        }
    }
    out
}

pub fn intersection_size(a: &[Item], b: &[Item]) -> usize {
    let (mut ai, mut bi, mut count) = (0, 0, 0);
    while ai < a.len() && bi < b.len() {
        match a[ai].cmp(&b[bi]) {
            std::cmp::Ordering::Less => ai += 1,
            std::cmp::Ordering::Greater => bi += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                ai += 1;
                bi += 1;
            }
        }
    }
    count
}

/// `a \ b` for sorted slices.
pub fn difference(a: &[Item], b: &[Item]) -> Vec<Item> {
    a.iter().filter(|x| !b.contains(x)).copied().collect()
}

pub fn union(a: &[Item], b: &[Item]) -> Vec<Item> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    normalize(out)
}

/// Advances `idx` to the next k-combination of `0..m` in lexicographic order.
/// Returns false once exhausted.
pub fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + m - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All k-subsets of a sorted slice, in lexicographic order.
pub fn k_subsets(items: &[Item], k: usize) -> Vec<Vec<Item>> {
    if k > items.len() {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        if !next_combination(&mut idx, items.len()) {
            break;
        }
    }
    out
}

/// Sorts a family by (cardinality, lexicographic) and drops duplicates.
pub fn canonical_family(mut family: Vec<Vec<Item>>) -> Vec<Vec<Item>> {
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    family.dedup();
    family
}

/// The swap probe deciding whether two equal-cardinality sets with a common
/// element can belong to the same complex.
///
/// With `f` the smallest element of `a ∩ b`, tries every `w ∈ a \ b`: if some
/// swapped set `(b \ {f}) ∪ {w}` is missing from the pool, the pair is
/// separated (they witness different complexes). Same-complex pairs always
/// survive because every swapped set is again a threshold-sized subset of the
/// shared complex.
pub fn swap_separated(a: &[Item], b: &[Item], pool_contains: impl Fn(&[Item]) -> bool) -> bool {
    let common = intersection(a, b);
    debug_assert!(!common.is_empty(), "swap probe needs a common element");
    let f = common[0];
    for &w in a.iter().filter(|x| !b.contains(x)) {
        let mut swapped: Vec<Item> = b.iter().copied().filter(|&x| x != f).collect();
        swapped.push(w);
        swapped.sort_unstable();
        if !pool_contains(&swapped) {
            return true;
        }
    }
    false
}
