use std::fmt;

/// Finitely supported function `Z -> F2`, equivalently a Laurent polynomial
/// over F2 with position `k` standing for the monomial `u^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LampConfig {
    // sorted, duplicate-free
    lit: Vec<i64>,
}

impl LampConfig {
    pub fn empty() -> Self {
        LampConfig { lit: Vec::new() }
    }

    /// Toggles each listed position in turn, so repeated positions cancel.
    pub fn from_toggles(positions: impl IntoIterator<Item = i64>) -> Self {
        let mut v: Vec<i64> = positions.into_iter().collect();
        v.sort_unstable();
        let mut lit = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                lit.push(v[i]);
            }
            i = j;
        }
        LampConfig { lit }
    }

    pub fn single(k: i64) -> Self {
        LampConfig { lit: vec![k] }
    }

    pub fn positions(&self) -> &[i64] {
        &self.lit
    }

    pub fn is_empty(&self) -> bool {
        self.lit.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lit.len()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lit.binary_search(&k).is_ok()
    }

    /// Moves every lamp from `k` to `k + m`.
    pub fn shifted(&self, m: i64) -> Self {
        LampConfig { lit: self.lit.iter().map(|k| k + m).collect() }
    }

    /// Symmetric difference (addition of polynomials over F2).
    pub fn xor(&self, other: &LampConfig) -> Self {
        let (a, b) = (&self.lit, &other.lit);
        let mut lit = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    lit.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    lit.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        lit.extend_from_slice(&a[i..]);
        lit.extend_from_slice(&b[j..]);
        LampConfig { lit }
    }

    /// Multiplication by `1 + u^-1`: each lamp `k` becomes the pair `{k - 1, k}`.
    pub fn times_one_plus_inv_u(&self) -> Self {
        self.xor(&self.shifted(-1))
    }

    /// Exact division by `1 + u^-1`; `None` unless the support has even size.
    ///
    /// The quotient `g` satisfies `g_k = sum_{j >= k} f_j`, so it is lit exactly on
    /// the half-open runs `(f_0, f_1], (f_2, f_3], ...` of the sorted support.
    pub fn divide_one_plus_inv_u(&self) -> Option<Self> {
        if !self.lit.len().is_multiple_of(2) {
            return None;
        }
        let lit = self.lit.chunks_exact(2).flat_map(|pair| pair[0] + 1..=pair[1]).collect();
        Some(LampConfig { lit })
    }

    /// Support reduced modulo `n` (lamps landing on the same residue cancel).
    pub fn reduced_mod(&self, n: i64) -> Self {
        Self::from_toggles(self.lit.iter().map(|k| k.rem_euclid(n)))
    }
}

impl fmt::Display for LampConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lit.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toggles_cancel_in_pairs() {
        let c = LampConfig::from_toggles([3, 1, 3, 2, 1, 1]);
        assert_eq!(c.positions(), &[1, 2]);
        assert!(LampConfig::from_toggles([5, 5]).is_empty());
    }

    #[test]
    fn xor_and_shift() {
        let a = LampConfig::from_toggles([0, 2, 4]);
        let b = LampConfig::from_toggles([2, 3]);
        assert_eq!(a.xor(&b).positions(), &[0, 3, 4]);
        assert_eq!(a.shifted(-3).positions(), &[-3, -1, 1]);
    }

    #[test]
    fn division_inverts_multiplication() {
        let f = LampConfig::from_toggles([0, 5]);
        let g = f.times_one_plus_inv_u();
        assert_eq!(g.positions(), &[-1, 0, 4, 5]);
        assert_eq!(g.divide_one_plus_inv_u().unwrap(), f);
        assert_eq!(LampConfig::single(0).divide_one_plus_inv_u(), None);
        assert_eq!(LampConfig::empty().divide_one_plus_inv_u(), Some(LampConfig::empty()));
    }

    #[test]
    fn exhaustive_image_characterization() {
        // every config with support in [-6, 6] is in the image iff its support is even
        let window: Vec<i64> = (-6..=6).collect();
        for mask in 0u32..(1 << window.len()) {
            let f = LampConfig::from_toggles(
                window.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &k)| k),
            );
            let q = f.divide_one_plus_inv_u();
            assert_eq!(q.is_some(), f.len().is_multiple_of(2));
            if let Some(g) = q {
                assert_eq!(g.times_one_plus_inv_u(), f);
            }
        }
    }
}
