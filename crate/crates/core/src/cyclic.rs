//! Index arithmetic in a finite product of cyclic groups `Z/m_0 × … × Z/m_{r-1}`.
//!
//! Elements are packed into a single mixed-radix index so that subgroups can be
//! stored as bitsets. Both the groups themselves and the additive groups of
//! their endomorphism rings are handled through this type.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicProduct {
    moduli: Vec<u64>,
    strides: Vec<u64>,
    size: u64,
}

impl CyclicProduct {
    /// Returns `None` when the order does not fit in a `u64`.
    pub fn new(moduli: Vec<u64>) -> Option<Self> {
        let mut strides = Vec::with_capacity(moduli.len());
        let mut size: u64 = 1;
        for &m in &moduli {
            strides.push(size);
            size = size.checked_mul(m)?;
        }
        Some(Self {
            moduli,
            strides,
            size,
        })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    #[inline]
    pub fn digit(&self, x: usize, t: usize) -> u64 {
        (x as u64 / self.strides[t]) % self.moduli[t]
    }

    pub fn decode(&self, x: usize) -> Vec<u64> {
        (0..self.rank()).map(|t| self.digit(x, t)).collect()
    }

    /// Digits are reduced modulo their moduli before packing.
    pub fn encode(&self, digits: &[u64]) -> usize {
        debug_assert_eq!(digits.len(), self.rank());
        digits
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&d, &m), &s)| (d % m) * s)
            .sum::<u64>() as usize
    }

    /// Index of the `t`-th unit vector.
    pub fn unit(&self, t: usize) -> usize {
        if self.moduli[t] == 1 {
            0
        } else {
            self.strides[t] as usize
        }
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let mut out = 0u64;
        for t in 0..self.rank() {
            let m = self.moduli[t];
            out += ((self.digit(x, t) + self.digit(y, t)) % m) * self.strides[t];
        }
        out as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        let mut out = 0u64;
        for t in 0..self.rank() {
            let m = self.moduli[t];
            out += ((m - self.digit(x, t)) % m) * self.strides[t];
        }
        out as usize
    }

    pub fn smul(&self, c: u64, x: usize) -> usize {
        let mut out = 0u64;
        for t in 0..self.rank() {
            let m = self.moduli[t];
            out += mulmod(c % m, self.digit(x, t), m) * self.strides[t];
        }
        out as usize
    }

    /// The subgroup generated by `gens`, as a bitset plus its element list.
    pub fn span<I: IntoIterator<Item = usize>>(&self, gens: I) -> (FixedBitSet, Vec<usize>) {
        let mut bits = FixedBitSet::with_capacity(self.size as usize);
        bits.insert(0);
        let mut elems = vec![0];
        self.extend_span(&mut bits, &mut elems, gens);
        (bits, elems)
    }

    /// Grows the subgroup `(bits, elems)` until it contains every generator.
    ///
    /// Adding `g` to `S` replaces `S` by the union of the cosets `S + j·g`
    /// for `j` below the order of `g` modulo `S`.
    pub fn extend_span<I: IntoIterator<Item = usize>>(
        &self,
        bits: &mut FixedBitSet,
        elems: &mut Vec<usize>,
        gens: I,
    ) {
        for g in gens {
            if bits.contains(g) {
                continue;
            }
            let base_len = elems.len();
            let mut shift = g;
            while !bits.contains(shift) {
                for i in 0..base_len {
                    let y = self.add(elems[i], shift);
                    bits.insert(y);
                    elems.push(y);
                }
                shift = self.add(shift, g);
            }
        }
    }
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_checked(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// p-adic valuation of a non-zero residue; callers guard the zero case.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_of_generator_is_cyclic() {
        let z = CyclicProduct::new(vec![4, 2]).unwrap();
        let g = z.encode(&[1, 0]);
        let (bits, elems) = z.span([g]);
        assert_eq!(elems.len(), 4);
        assert!(bits.contains(z.encode(&[3, 0])));
        assert!(!bits.contains(z.encode(&[0, 1])));
    }

    #[test]
    fn span_of_units_is_everything() {
        let z = CyclicProduct::new(vec![4, 2, 3]).unwrap();
        let (_, elems) = z.span((0..3).map(|t| z.unit(t)));
        assert_eq!(elems.len() as u64, z.size());
    }

    #[test]
    fn arithmetic_round_trips() {
        let z = CyclicProduct::new(vec![9, 3]).unwrap();
        for x in 0..z.size() as usize {
            assert_eq!(z.add(x, z.neg(x)), 0);
            assert_eq!(z.encode(&z.decode(x)), x);
            assert_eq!(z.smul(2, x), z.add(x, x));
        }
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert_eq!(valuation(12, 2), 2);
    }
}
