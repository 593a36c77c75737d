//! Additive energy of a point set by three independent routes: the literal
//! quadruple count, representation-function counting, and the Fourier route.
//! The three must agree exactly; any disagreement is a transform bug.

use crate::cube::PointSet;
use crate::error::{Error, Result};
use crate::spectral::{fourth_moment_sum, Spectrum};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

/// Default iteration budget for the cubic brute-force count.
pub const DEFAULT_BRUTEFORCE_BUDGET: u64 = 1 << 30;

/// Dimension cutoff below which the representation route is the default.
pub const REPRESENTATION_MAX_N: u32 = 20;

/// r(s) = #{(a1, a2) in A^2 : a1 + a2 = s}, addition being XOR of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationCounts {
    n: u32,
    r: Vec<u64>,
}

impl RepresentationCounts {
    pub fn build(set: &PointSet) -> Self {
        let mut r = vec![0u64; 1usize << set.n()];
        for &a1 in set.members() {
            for &a2 in set.members() {
                r[(a1 ^ a2) as usize] += 1;
            }
        }
        RepresentationCounts { n: set.n(), r }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.r
    }

    pub fn count(&self, s: u64) -> u64 {
        self.r[s as usize]
    }
}

/// E(A) by enumerating (a1, a2, a3) and testing a4 = a1+a2+a3 for
/// membership. O(|A|^3); refuses work beyond `budget` iterations.
pub fn energy_bruteforce(set: &PointSet, budget: u64) -> Result<BigUint> {
    let k = set.len() as u64;
    if k.saturating_mul(k).saturating_mul(k) > budget {
        return Err(Error::BudgetExceeded {
            op: "energy_bruteforce",
            detail: format!(
                "|A|^3 = {} exceeds the {budget}-iteration budget; use energy_fourier",
                k * k * k
            ),
        });
    }
    let mut member = vec![false; 1usize << set.n()];
    for &a in set.members() {
        member[a as usize] = true;
    }
    let members: Vec<u32> = set.members().iter().map(|&a| a as u32).collect();
    let mut count = 0u64;
    for &a1 in &members {
        for &a2 in &members {
            let s = a1 ^ a2;
            // Hot kernel: the table has 2^n entries and every s ^ a3 is in
            // range, so skip the bounds checks.
            count += members
                .iter()
                .map(|&a3| unsafe { *member.get_unchecked((s ^ a3) as usize) } as u64)
                .sum::<u64>();
        }
    }
    Ok(BigUint::from(count))
}

/// E(A) = sum_s r(s)^2 via the representation counts.
pub fn energy_representation(set: &PointSet) -> BigUint {
    let counts = RepresentationCounts::build(set);
    let total: u128 = counts.r.iter().map(|&c| c as u128 * c as u128).sum();
    BigUint::from(total)
}

/// E(A) = (sum_S W(S)^4) / 2^n via the Fourier route. The division is
/// exact for every genuine spectrum; a remainder means the transform is
/// broken, so it panics rather than returning garbage.
pub fn energy_fourier(s: &Spectrum) -> BigUint {
    let total = fourth_moment_sum(s);
    let denom = BigInt::from(1u64) << s.n() as usize;
    let (quot, rem) = num_integer::Integer::div_rem(&total, &denom);
    assert!(
        rem.is_zero(),
        "fourth-moment sum {total} not divisible by 2^{}; spectrum is inconsistent",
        s.n()
    );
    quot.to_biguint()
        .expect("fourth-moment sum is non-negative")
}

/// Default route selection: representation counting at desk scale, the
/// Fourier route beyond it.
pub fn energy(set: &PointSet, spectrum: &Spectrum) -> BigUint {
    if set.n() <= REPRESENTATION_MAX_N {
        energy_representation(set)
    } else {
        energy_fourier(spectrum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{BooleanFunction, Family, FamilySpec};
    use crate::spectral::wht;

    fn gen(family: Family, n: u32) -> BooleanFunction {
        FamilySpec::new(family, n).generate().unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let xor = gen(Family::Parity, 2);
        assert_eq!(
            energy_bruteforce(&xor.support(), DEFAULT_BRUTEFORCE_BUDGET).unwrap(),
            BigUint::from(8u32)
        );

        let and = gen(Family::And, 2);
        assert_eq!(
            energy_bruteforce(&and.support(), DEFAULT_BRUTEFORCE_BUDGET).unwrap(),
            BigUint::from(1u32)
        );

        let full = gen(Family::Constant1, 3);
        assert_eq!(
            energy_bruteforce(&full.support(), DEFAULT_BRUTEFORCE_BUDGET).unwrap(),
            BigUint::from(512u32)
        );
    }

    #[test]
    fn bruteforce_budget() {
        let f = gen(Family::Constant1, 4);
        let err = energy_bruteforce(&f.support(), 100).unwrap_err();
        assert!(err.to_string().contains("energy_fourier"));
    }

    #[test]
    fn representation_examples() {
        let xor = gen(Family::Parity, 2);
        let counts = RepresentationCounts::build(&xor.support());
        assert_eq!(counts.counts(), &[2, 0, 0, 2]);
        assert_eq!(energy_representation(&xor.support()), BigUint::from(8u32));

        let empty = gen(Family::Constant0, 2);
        assert_eq!(energy_representation(&empty.support()), BigUint::zero());

        let and = gen(Family::And, 2);
        assert_eq!(energy_representation(&and.support()), BigUint::from(1u32));
    }

    #[test]
    fn representation_count_invariants() {
        let f = gen(Family::Maj4, 4);
        let a = f.support();
        let counts = RepresentationCounts::build(&a);
        let total: u64 = counts.counts().iter().sum();
        assert_eq!(total, (a.len() * a.len()) as u64);
        assert_eq!(counts.count(0), a.len() as u64);
        for s in 1..16 {
            assert_eq!(counts.count(s) % 2, 0, "r({s}) must be even");
        }
    }

    #[test]
    fn fourier_examples() {
        let xor = gen(Family::Parity, 2);
        assert_eq!(energy_fourier(&wht(&xor).unwrap()), BigUint::from(8u32));

        let c1 = gen(Family::Constant1, 3);
        assert_eq!(energy_fourier(&wht(&c1).unwrap()), BigUint::from(512u32));

        let c0 = gen(Family::Constant0, 3);
        assert_eq!(energy_fourier(&wht(&c0).unwrap()), BigUint::zero());
    }

    #[test]
    fn singleton_energy_is_one() {
        let a = PointSet::new(3, vec![5]).unwrap();
        assert_eq!(
            energy_bruteforce(&a, DEFAULT_BRUTEFORCE_BUDGET).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(energy_representation(&a), BigUint::from(1u32));
    }
}
