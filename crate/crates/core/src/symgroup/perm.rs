use std::fmt;

use super::SymGroupError;

/// Permutation of `{1..n}` in one-line notation.
///
/// Stored zero-based; construction and display are one-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    /// From one-based one-line notation, e.g. `[3, 1, 2]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self, SymGroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(SymGroupError::NotAPermutation(images.to_vec()));
            }
            seen[v - 1] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// One-based image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm { images: inv }
    }

    /// `(self · other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different size"
        );
        Perm {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize])
                .collect(),
        }
    }

    /// Number of positions `i` with `p(i) > p(i+1)`.
    pub fn descents(&self) -> usize {
        self.images.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Strictly decreasing down to the position of 1, strictly increasing after.
    pub fn is_vshaped(&self) -> bool {
        let Some(pos) = self.images.iter().position(|&v| v == 0) else {
            return true;
        };
        self.images[..=pos].windows(2).all(|w| w[0] > w[1])
            && self.images[pos..].windows(2).all(|w| w[0] < w[1])
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        let mut next = Some(Perm::identity(n));
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut a = current.images.clone();
            if let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
                let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
                a.swap(i - 1, j);
                a[i..].reverse();
                next = Some(Perm { images: a });
            }
            Some(current)
        })
    }

    /// The block substitution `σ ∘_i id_m` used by operadic equivariance:
    /// position `i` of `self` is blown up into `m` consecutive positions
    /// that keep their relative order.
    pub fn expand_slot(&self, slot: usize, m: usize) -> Self {
        let n = self.len();
        assert!((1..=n).contains(&slot) && m >= 1);
        // one-based positions/values; the value `slot` becomes a block
        let expand_value = |v: usize| -> Vec<usize> {
            if v < slot {
                vec![v]
            } else if v == slot {
                (slot..slot + m).collect()
            } else {
                vec![v + m - 1]
            }
        };
        let mut out = Vec::with_capacity(n + m - 1);
        for k in 1..=n {
            out.extend(expand_value(self.apply(k)));
        }
        Perm::from_one_line(&out).expect("block expansion is a permutation")
    }

    /// `id_n ∘_i τ`: `τ` acting on the block of `m = τ.len()` positions
    /// starting at `slot`, identity elsewhere.
    pub fn insert_block(n: usize, slot: usize, tau: &Perm) -> Self {
        let m = tau.len();
        let total = n + m - 1;
        let out: Vec<usize> = (1..=total)
            .map(|k| {
                if k >= slot && k < slot + m {
                    slot - 1 + tau.apply(k - slot + 1)
                } else {
                    k
                }
            })
            .collect();
        Perm::from_one_line(&out).expect("block insertion is a permutation")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}
