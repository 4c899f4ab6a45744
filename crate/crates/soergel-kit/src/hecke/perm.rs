use std::fmt;

/// Permutation of {1..n}, stored as 0-indexed images. Products compose right
/// to left: (u * v)(i) = u(v(i)), so the word s_{i_1}⋯s_{i_k} multiplies out
/// with s_{i_k} applied first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.images.iter().map(|&x| x + 1).collect();
        write!(f, "Perm{one_based:?}")
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// Simple transposition s_i (1-based, swaps strands i and i+1).
    pub fn simple(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "generator index out of range");
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Perm { images }
    }

    pub fn from_images_one_based(images: &[usize]) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in images {
            assert!(x >= 1 && x <= images.len() && !seen[x - 1], "not a permutation");
            seen[x - 1] = true;
        }
        Perm { images: images.iter().map(|&x| x - 1).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// w(i) with 1-based values.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// s_i is a left descent iff w⁻¹(i) > w⁻¹(i+1).
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.images[i - 1] > inv.images[i]
    }

    /// Lexicographically least reduced word (1-based generator indices),
    /// obtained by greedily peeling the smallest left descent.
    pub fn lex_least_reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while !w.is_identity() {
            let i = (1..w.n())
                .find(|&i| w.has_left_descent(i))
                .expect("non-identity permutation has a descent");
            word.push(i);
            w = Perm::simple(i, w.n()).compose(&w);
        }
        word
    }

    pub fn longest_element(n: usize) -> Perm {
        Perm { images: (0..n).rev().collect() }
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        permute_rec(&mut images, 0, &mut out);
        out.sort();
        out
    }

    /// Bruhat order: u ≤ w iff some subword of a reduced word of w multiplies
    /// to u (any subword product of a reduced word is ≤ w, and reduced
    /// subwords realize every u ≤ w).
    pub fn bruhat_le(&self, w: &Perm) -> bool {
        assert_eq!(self.n(), w.n());
        if self.length() > w.length() {
            return false;
        }
        let word = w.lex_least_reduced_word();
        let k = word.len();
        for mask in 0..(1u32 << k) {
            if (mask.count_ones() as usize) != self.length() {
                continue;
            }
            let mut acc = Perm::identity(self.n());
            for (pos, &i) in word.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    acc = acc.compose(&Perm::simple(i, self.n()));
                }
            }
            if &acc == self {
                return true;
            }
        }
        false
    }

    /// Parabolic factorization w = u·d with u ∈ S_{n−1} and d the minimal
    /// representative of the coset S_{n−1}w: d = s_{n−1}⋯s_m where
    /// m = w⁻¹(n), so d = e exactly when w fixes n. Lengths add.
    pub fn coset_factor_last(&self) -> (Perm, usize) {
        let n = self.n();
        let m = self.inverse().apply(n);
        let mut d = Perm::identity(n);
        for i in (m..n).rev() {
            d = d.compose(&Perm::simple(i, n));
        }
        // d maps m ↦ n; u = w ∘ d⁻¹ fixes n.
        let u = self.compose(&d.inverse());
        debug_assert_eq!(u.apply(n), n);
        debug_assert_eq!(u.length() + d.length(), self.length());
        (u, m)
    }

    /// Drop the last (fixed) strand.
    pub fn restrict(&self) -> Perm {
        assert_eq!(self.apply(self.n()), self.n(), "last strand not fixed");
        Perm { images: self.images[..self.n() - 1].to_vec() }
    }
}

fn permute_rec(images: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == images.len() {
        out.push(Perm { images: images.clone() });
        return;
    }
    for i in k..images.len() {
        images.swap(k, i);
        permute_rec(images, k + 1, out);
        images.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_order() {
        // s1 s2 applied to 3: s2 first: 3→2, then s1: 2→1.
        let s1 = Perm::simple(1, 3);
        let s2 = Perm::simple(2, 3);
        let w = s1.compose(&s2);
        assert_eq!(w.apply(3), 1);
        assert_eq!(w.length(), 2);
    }

    #[test]
    fn lengths_and_words() {
        for w in Perm::all(4) {
            let word = w.lex_least_reduced_word();
            assert_eq!(word.len(), w.length());
            let mut acc = Perm::identity(4);
            for &i in &word {
                acc = acc.compose(&Perm::simple(i, 4));
            }
            assert_eq!(acc, w);
        }
    }

    #[test]
    fn lex_least_word_of_longest_element() {
        let w0 = Perm::longest_element(3);
        assert_eq!(w0.lex_least_reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn bruhat_basics() {
        let n = 3;
        let e = Perm::identity(n);
        let w0 = Perm::longest_element(n);
        for w in Perm::all(n) {
            assert!(e.bruhat_le(&w));
            assert!(w.bruhat_le(&w0));
            assert!(w.bruhat_le(&w));
        }
        let s1 = Perm::simple(1, n);
        let s2 = Perm::simple(2, n);
        assert!(!s1.bruhat_le(&s2));
        assert!(!s2.bruhat_le(&s1));
    }

    #[test]
    fn coset_factorization() {
        for w in Perm::all(4) {
            let (u, m) = w.coset_factor_last();
            assert_eq!(u.apply(4), 4);
            // Rebuild d and check w = u·d.
            let mut d = Perm::identity(4);
            for i in (m..4).rev() {
                d = d.compose(&Perm::simple(i, 4));
            }
            assert_eq!(u.compose(&d), w);
        }
    }
}
