//! Truth-table representation of Boolean functions on the cube, the shared
//! bit/index convention, and generators for standard function families.
//!
//! Index convention, used everywhere in this crate: a point
//! x = (x_1, ..., x_n) maps to idx(x) = sum_i x_i * 2^(i-1), so coordinate 1
//! is the least significant bit of the index.

use crate::bits::DenseBits;
use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Largest dimension for which truth tables are constructed (2^24 bits).
pub const MAX_N: u32 = 24;

/// A Boolean function f: F_2^n -> {0,1} stored as a dense truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    table: DenseBits,
}

impl BooleanFunction {
    pub fn from_table(table: DenseBits, n: u32) -> Result<Self> {
        check_dimension(n, "truth table construction")?;
        let expected = 1u64 << n;
        if table.len() != expected {
            return Err(Error::TableLength {
                n,
                expected,
                actual: table.len(),
            });
        }
        Ok(BooleanFunction { n, table })
    }

    /// Parse a truth table from a string of '0'/'1' characters, index order
    /// as defined by `idx`.
    pub fn from_truth_table(bits: &str, n: u32) -> Result<Self> {
        check_dimension(n, "truth table construction")?;
        let expected = 1u64 << n;
        if bits.len() as u64 != expected {
            return Err(Error::TableLength {
                n,
                expected,
                actual: bits.len() as u64,
            });
        }
        let mut table = DenseBits::zeros(expected);
        for (pos, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => table.set(pos as u64, true),
                _ => return Err(Error::TableChar { ch, pos }),
            }
        }
        Ok(BooleanFunction { n, table })
    }

    /// Parse the on-disk truth-table format: either a line of '0'/'1'
    /// characters, or "hex:<digits>" with the lowest-index bit in the least
    /// significant bit of the first hex digit.
    pub fn parse(input: &str, n: u32) -> Result<Self> {
        let input = input.trim();
        if let Some(hex) = input.strip_prefix("hex:") {
            Self::from_hex(hex, n)
        } else {
            Self::from_truth_table(input, n)
        }
    }

    fn from_hex(hex: &str, n: u32) -> Result<Self> {
        check_dimension(n, "truth table construction")?;
        if n < 2 {
            return Err(Error::InvalidFamily(format!(
                "hex truth tables need 2^n divisible by 4, got n={n}"
            )));
        }
        let expected = 1u64 << n;
        let expected_digits = expected / 4;
        if hex.len() as u64 != expected_digits {
            return Err(Error::TableLength {
                n,
                expected: expected_digits,
                actual: hex.len() as u64,
            });
        }
        let mut table = DenseBits::zeros(expected);
        for (k, ch) in hex.chars().enumerate() {
            let digit = ch.to_digit(16).ok_or(Error::TableChar { ch, pos: k })? as u64;
            for j in 0..4 {
                if (digit >> j) & 1 == 1 {
                    table.set(4 * k as u64 + j, true);
                }
            }
        }
        Ok(BooleanFunction { n, table })
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.size()).map(|i| if self.table.get(i) { '1' } else { '0' }).collect()
    }

    pub fn to_hex_string(&self) -> String {
        assert!(self.n >= 2, "hex form needs n >= 2");
        let mut out = String::from("hex:");
        for k in 0..(self.size() / 4) {
            let mut digit = 0u32;
            for j in 0..4 {
                if self.table.get(4 * k + j) {
                    digit |= 1 << j;
                }
            }
            out.push(char::from_digit(digit, 16).unwrap());
        }
        out
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of points in the cube, 2^n.
    #[inline]
    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    /// f at the point with index `idx`.
    #[inline]
    pub fn eval(&self, idx: u64) -> bool {
        self.table.get(idx)
    }

    pub fn table(&self) -> &DenseBits {
        &self.table
    }

    /// A = f^{-1}(1).
    pub fn support(&self) -> PointSet {
        PointSet {
            n: self.n,
            members: self.table.iter_ones().collect(),
        }
    }

    pub fn support_size(&self) -> u64 {
        self.table.count_ones()
    }

    pub fn complement(&self) -> BooleanFunction {
        let mut table = DenseBits::zeros(self.size());
        for i in 0..self.size() {
            table.set(i, !self.table.get(i));
        }
        BooleanFunction { n: self.n, table }
    }

    /// Coordinates i (1-based) with f(x) != f(x+e_i) for some x.
    pub fn relevant_coordinates(&self) -> Vec<u32> {
        (1..=self.n)
            .filter(|&i| {
                let bit = 1u64 << (i - 1);
                (0..self.size())
                    .filter(|x| x & bit == 0)
                    .any(|x| self.table.get(x) != self.table.get(x | bit))
            })
            .collect()
    }
}

fn check_dimension(n: u32, op: &'static str) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::DimensionTooLarge {
            op,
            n,
            limit: MAX_N,
        });
    }
    Ok(())
}

/// A subset of the cube, held as sorted point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    n: u32,
    members: Vec<u64>,
}

impl PointSet {
    pub fn new(n: u32, mut members: Vec<u64>) -> Result<Self> {
        check_dimension(n, "point set construction")?;
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.last() {
            if m >= 1u64 << n {
                return Err(Error::InvalidFamily(format!(
                    "point index {m} out of range for n={n}"
                )));
            }
        }
        Ok(PointSet { n, members })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.members.binary_search(&idx).is_ok()
    }
}

/// The standard function families used in sweeps and verification.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Constant0,
    Constant1,
    /// f(x) = x_i.
    Dictator { i: u32 },
    Parity,
    And,
    Or,
    /// Strict majority; requires odd n.
    Majority,
    /// Majority of four bits with ties to 1 (f = 1 iff at least two ones).
    Maj4,
    /// OR of ANDs over consecutive blocks of `width` variables; requires
    /// width | n.
    Tribes { width: u32 },
    /// x1 x2 + x3 x4 + ... mod 2; requires even n.
    InnerProduct,
    /// Coordinates 1..k address one of the 2^k data coordinates; requires
    /// n = k + 2^k.
    Address,
    /// Each point independently 1 with probability `density`, drawn from
    /// ChaCha12 seeded with `seed`, one f64 per point in index order.
    Random { seed: u64, density: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Constant0 => "constant0",
            Family::Constant1 => "constant1",
            Family::Dictator { .. } => "dictator",
            Family::Parity => "parity",
            Family::And => "and",
            Family::Or => "or",
            Family::Majority => "majority",
            Family::Maj4 => "maj4",
            Family::Tribes { .. } => "tribes",
            Family::InnerProduct => "inner-product",
            Family::Address => "address",
            Family::Random { .. } => "random",
        }
    }
}

/// A named family instantiated at dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32) -> Self {
        FamilySpec { family, n }
    }

    pub fn generate(&self) -> Result<BooleanFunction> {
        let n = self.n;
        check_dimension(n, "family generation")?;
        let size = 1u64 << n;
        match &self.family {
            Family::Constant0 => tabulate(n, |_| false),
            Family::Constant1 => tabulate(n, |_| true),
            Family::Dictator { i } => {
                let i = *i;
                if i < 1 || i > n {
                    return Err(Error::CoordinateOutOfRange { i, n });
                }
                tabulate(n, |x| (x >> (i - 1)) & 1 == 1)
            }
            Family::Parity => tabulate(n, |x| x.count_ones() % 2 == 1),
            Family::And => tabulate(n, |x| x == size - 1),
            Family::Or => tabulate(n, |x| x != 0),
            Family::Majority => {
                if n % 2 == 0 {
                    return Err(Error::InvalidFamily(format!(
                        "majority requires odd n, got {n}"
                    )));
                }
                tabulate(n, |x| x.count_ones() > n / 2)
            }
            Family::Maj4 => {
                if n != 4 {
                    return Err(Error::InvalidFamily(format!(
                        "maj4 is the 4-variable majority, got n={n}"
                    )));
                }
                tabulate(n, |x| x.count_ones() >= 2)
            }
            Family::Tribes { width } => {
                let w = *width;
                if w == 0 || n % w != 0 {
                    return Err(Error::InvalidFamily(format!(
                        "tribes width {w} must divide n={n}"
                    )));
                }
                let block = (1u64 << w) - 1;
                tabulate(n, |x| {
                    (0..n / w).any(|b| (x >> (b * w)) & block == block)
                })
            }
            Family::InnerProduct => {
                if n % 2 != 0 {
                    return Err(Error::InvalidFamily(format!(
                        "inner-product requires even n, got {n}"
                    )));
                }
                tabulate(n, |x| {
                    (0..n / 2)
                        .map(|j| ((x >> (2 * j)) & (x >> (2 * j + 1)) & 1) as u32)
                        .sum::<u32>()
                        % 2
                        == 1
                })
            }
            Family::Address => {
                let k = (1..n).find(|k| k + (1 << k) == n).ok_or_else(|| {
                    Error::InvalidFamily(format!("address requires n = k + 2^k, got n={n}"))
                })?;
                tabulate(n, |x| {
                    let addr = x & ((1 << k) - 1);
                    (x >> (k as u64 + addr)) & 1 == 1
                })
            }
            Family::Random { seed, density } => {
                if !(0.0..=1.0).contains(density) {
                    return Err(Error::InvalidFamily(format!(
                        "density {density} outside [0,1]"
                    )));
                }
                let mut rng = ChaCha12Rng::seed_from_u64(*seed);
                let mut table = DenseBits::zeros(size);
                for x in 0..size {
                    if rng.random::<f64>() < *density {
                        table.set(x, true);
                    }
                }
                BooleanFunction::from_table(table, n)
            }
        }
    }
}

fn tabulate(n: u32, f: impl Fn(u64) -> bool) -> Result<BooleanFunction> {
    let size = 1u64 << n;
    let mut table = DenseBits::zeros(size);
    for x in 0..size {
        if f(x) {
            table.set(x, true);
        }
    }
    BooleanFunction::from_table(table, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(family: Family, n: u32) -> BooleanFunction {
        FamilySpec::new(family, n).generate().unwrap()
    }

    #[test]
    fn from_truth_table_examples() {
        // "0110" is XOR under the idx convention.
        let xor = BooleanFunction::from_truth_table("0110", 2).unwrap();
        assert!(!xor.eval(0b00));
        assert!(xor.eval(0b01));
        assert!(xor.eval(0b10));
        assert!(!xor.eval(0b11));

        let one = BooleanFunction::from_truth_table("1111", 2).unwrap();
        assert_eq!(one, gen(Family::Constant1, 2));

        // 3-variable parity, tabulated by hand under the idx convention.
        let parity3 = BooleanFunction::from_truth_table("01101001", 3).unwrap();
        assert_eq!(parity3, gen(Family::Parity, 3));
    }

    #[test]
    fn from_truth_table_rejects_bad_input() {
        assert!(matches!(
            BooleanFunction::from_truth_table("011", 2),
            Err(Error::TableLength {
                expected: 4,
                actual: 3,
                ..
            })
        ));
        assert!(matches!(
            BooleanFunction::from_truth_table("01x0", 2),
            Err(Error::TableChar { ch: 'x', pos: 2 })
        ));
    }

    #[test]
    fn hex_round_trip() {
        let f = gen(Family::Majority, 3);
        let hex = f.to_hex_string();
        assert_eq!(BooleanFunction::parse(&hex, 3).unwrap(), f);
        assert_eq!(BooleanFunction::parse(&f.to_bit_string(), 3).unwrap(), f);
    }

    #[test]
    fn hex_bit_order() {
        // "hex:2" sets only bit 1 of the first digit, i.e. table index 1.
        let f = BooleanFunction::parse("hex:2", 2).unwrap();
        assert_eq!(f.to_bit_string(), "0100");
    }

    #[test]
    fn support_examples() {
        let xor = gen(Family::Parity, 2);
        assert_eq!(xor.support().members(), &[1, 2]);
        assert!(gen(Family::Constant0, 3).support().is_empty());
        let and = gen(Family::And, 2);
        assert_eq!(and.support().members(), &[3]);
    }

    #[test]
    fn family_examples() {
        assert_eq!(gen(Family::Dictator { i: 1 }, 2).to_bit_string(), "0101");
        let maj = gen(Family::Majority, 3);
        for x in 0..8u64 {
            assert_eq!(maj.eval(x), x.count_ones() >= 2);
        }
        assert_eq!(gen(Family::Parity, 4).support_size(), 8);
    }

    #[test]
    fn family_parameter_validation() {
        assert!(FamilySpec::new(Family::Majority, 4).generate().is_err());
        assert!(FamilySpec::new(Family::InnerProduct, 3).generate().is_err());
        assert!(FamilySpec::new(Family::Dictator { i: 5 }, 4).generate().is_err());
        assert!(FamilySpec::new(Family::Tribes { width: 3 }, 4).generate().is_err());
        assert!(FamilySpec::new(Family::Address, 4).generate().is_err());
        assert!(FamilySpec::new(Family::Address, 3).generate().is_ok());
    }

    #[test]
    fn random_family_is_deterministic() {
        let spec = FamilySpec::new(
            Family::Random {
                seed: 42,
                density: 0.5,
            },
            6,
        );
        assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
        let other = FamilySpec::new(
            Family::Random {
                seed: 43,
                density: 0.5,
            },
            6,
        );
        assert_ne!(spec.generate().unwrap(), other.generate().unwrap());
    }

    #[test]
    fn relevant_coordinates_examples() {
        assert_eq!(gen(Family::Dictator { i: 1 }, 4).relevant_coordinates(), vec![1]);
        assert_eq!(gen(Family::Parity, 3).relevant_coordinates(), vec![1, 2, 3]);
        assert!(gen(Family::Constant1, 5).relevant_coordinates().is_empty());
    }

    #[test]
    fn support_complement_sums() {
        for fam in [Family::Parity, Family::And, Family::Or, Family::Maj4] {
            let f = gen(fam, 4);
            assert_eq!(f.support_size() + f.complement().support_size(), 16);
        }
    }
}
