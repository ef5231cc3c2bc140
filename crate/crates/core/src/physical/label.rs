use crate::error::{Error, Result};

/// Basis label `(n, m)` modulo the equivalences of the physical space:
/// shifts of `n` by `N` and arbitrary changes of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EquivalenceLabel {
    pub n: i64,
    pub m: i64,
    pub modulus: i64,
}

impl EquivalenceLabel {
    pub fn is_canonical(&self) -> bool {
        (0..self.modulus).contains(&self.n) && self.m == 0
    }
}

/// Canonical representative `(n mod N, 0)`, with the least nonnegative residue.
/// Every `m` is equivalent to `m = 0`, so it never affects the result.
pub fn reduce_label(n: i64, _m: i64, modulus: i64) -> Result<EquivalenceLabel> {
    if modulus < 1 {
        return Err(Error::BadDimension(modulus));
    }
    Ok(EquivalenceLabel {
        n: n.rem_euclid(modulus),
        m: 0,
        modulus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let l = reduce_label(7, 3, 4).unwrap();
        assert_eq!((l.n, l.m), (3, 0));
        assert_eq!(reduce_label(-1, 0, 4).unwrap().n, 3);
        assert!(reduce_label(0, 0, 1).unwrap().is_canonical());
        assert_eq!(reduce_label(0, 0, 0), Err(Error::BadDimension(0)));
        assert_eq!(reduce_label(i64::MIN, i64::MAX, 5).unwrap().n, 2);
    }

    proptest! {
        #[test]
        fn reduction_is_canonical_and_invariant(n in any::<i32>(), m in any::<i32>(), k in -50i64..50, big in 1i64..200) {
            let (n, m) = (n as i64, m as i64);
            let l = reduce_label(n, m, big).unwrap();
            prop_assert!(l.is_canonical());
            prop_assert_eq!(l, reduce_label(n + k * big, m + k, big).unwrap());
            prop_assert_eq!((n - l.n).rem_euclid(big), 0);
        }
    }
}
