//! k-subsets of `0..n` in lexicographic order, with ranking.

/// `C(n, k)`; panics on overflow of `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial coefficient overflows usize")
}

/// Lexicographic rank of a strictly increasing subset of `0..n`.
pub fn rank(subset: &[usize], n: usize) -> usize {
    let k = subset.len();
    let mut r = 0;
    let mut next = 0;
    for (i, &c) in subset.iter().enumerate() {
        for j in next..c {
            r += binomial(n - 1 - j, k - 1 - i);
        }
        next = c + 1;
    }
    r
}

/// Iterator over all k-subsets of `0..n`, sorted ascending, in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        current: (k <= n).then(|| (0..k).collect()),
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut c = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < self.n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                self.current = Some(c);
                break;
            }
        }
        Some(out)
    }
}

/// Parses `"[0,2,4]"`, `"0,2,4"` or the compact digit form `"024"`.
pub fn parse_subset(text: &str) -> Option<Vec<usize>> {
    let t = text
        .trim()
        .trim_start_matches(['[', '{'])
        .trim_end_matches([']', '}']);
    let mut v: Vec<usize> = if t.contains(',') || t.contains(' ') {
        t.split([',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse().ok())
            .collect::<Option<_>>()?
    } else if t.is_empty() {
        Vec::new()
    } else {
        t.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?
    };
    let before = v.len();
    v.sort_unstable();
    v.dedup();
    (v.len() == before).then_some(v)
}
