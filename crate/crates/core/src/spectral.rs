//! Exact Fourier-Walsh analysis: spectrum, degrees, influences, spectral
//! norms, convolution, and the fourth-moment expectation.
//!
//! All quantities are exact: coefficients are stored as integers
//! W(S) = 2^n * f_hat(S) and everything derived is an exact rational.
//! Floating point appears only when rendering reports.

use crate::bits::DenseBits;
use crate::cube::BooleanFunction;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Write as _;

/// Exact Walsh spectrum: W(S) = sum_x f(x) * chi_S(x), with
/// f_hat(S) = W(S) / 2^n. Subset masks use the same index convention as
/// truth tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: u32,
    w: Vec<i64>,
}

impl Spectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.w
    }

    /// W(S) for the subset with mask `s`.
    #[inline]
    pub fn w(&self, s: u64) -> i64 {
        self.w[s as usize]
    }

    /// f_hat(S) as an exact rational.
    pub fn f_hat(&self, s: u64) -> BigRational {
        BigRational::new(BigInt::from(self.w[s as usize]), BigInt::from(1u64 << self.n))
    }

    /// CSV export: mask, subset, W, f_hat; rows ordered by mask.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mask,subset,W,f_hat\n");
        for s in 0..self.w.len() as u64 {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                s,
                subset_notation(s),
                self.w[s as usize],
                dyadic_decimal(self.w[s as usize] as i128, self.n)
            );
        }
        out
    }
}

/// Human form of a subset mask, e.g. "{1,3}"; "{}" for the empty set.
pub fn subset_notation(mask: u64) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for i in 0..64 {
        if (mask >> i) & 1 == 1 {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{}", i + 1);
            first = false;
        }
    }
    out.push('}');
    out
}

/// Exact decimal rendering of value / 2^exp.
pub fn dyadic_decimal(value: i128, exp: u32) -> String {
    if exp == 0 {
        return value.to_string();
    }
    // value / 2^exp = value * 5^exp / 10^exp, which is a finite decimal.
    let scaled: i128 = value * 5i128.pow(exp);
    let neg = scaled < 0;
    let digits = scaled.unsigned_abs().to_string();
    let digits = if digits.len() <= exp as usize {
        format!("{}{}", "0".repeat(exp as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - exp as usize;
    let (int_part, frac_part) = digits.split_at(split);
    let frac_part = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if neg && (int_part.trim_start_matches('0') != "" || !frac_part.is_empty()) {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

/// Fast Walsh-Hadamard transform, in-place butterfly, O(n 2^n).
pub fn wht(f: &BooleanFunction) -> Result<Spectrum> {
    let n = f.n();
    let size = f.size() as usize;
    let mut w: Vec<i64> = (0..size as u64).map(|x| f.eval(x) as i64).collect();
    let mut h = 1usize;
    while h < size {
        let step = h * 2;
        let mut i = 0;
        while i < size {
            for j in i..i + h {
                let a = w[j];
                let b = w[j + h];
                w[j] = a + b;
                w[j + h] = a - b;
            }
            i += step;
        }
        h = step;
    }
    Ok(Spectrum { n, w })
}

/// Naive O(4^n) transform, the independent check for the butterfly.
pub fn wht_naive(f: &BooleanFunction) -> Result<Spectrum> {
    let n = f.n();
    if n > 13 {
        return Err(Error::DimensionTooLarge {
            op: "naive Walsh transform",
            n,
            limit: 13,
        });
    }
    let size = f.size();
    let mut w = vec![0i64; size as usize];
    for (s, ws) in w.iter_mut().enumerate() {
        let mut acc = 0i64;
        for x in 0..size {
            if f.eval(x) {
                if (s as u64 & x).count_ones() % 2 == 0 {
                    acc += 1;
                } else {
                    acc -= 1;
                }
            }
        }
        *ws = acc;
    }
    Ok(Spectrum { n, w })
}

/// Largest |S| with W(S) != 0; 0 for constant functions.
pub fn fourier_degree(s: &Spectrum) -> u32 {
    s.w
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0)
        .map(|(mask, _)| (mask as u64).count_ones())
        .max()
        .unwrap_or(0)
}

/// Algebraic normal form: the F_2 polynomial of f. `coeffs` bit S is set
/// iff the monomial prod_{i in S} x_i appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfForm {
    n: u32,
    coeffs: DenseBits,
}

impl AnfForm {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self, s: u64) -> bool {
        self.coeffs.get(s)
    }

    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.iter_ones()
    }

    /// Evaluate the polynomial over F_2 at the point with index `x`.
    pub fn eval(&self, x: u64) -> bool {
        // Monomial S contributes iff S is a subset of the support of x.
        self.coeffs.iter_ones().filter(|&s| s & x == s).count() % 2 == 1
    }

    /// Render as a polynomial, e.g. "x1*x2 + x3"; "0"/"1" for constants.
    pub fn to_polynomial_string(&self) -> String {
        let mut terms: Vec<String> = Vec::new();
        for s in self.coeffs.iter_ones() {
            if s == 0 {
                terms.push("1".to_string());
            } else {
                let vars: Vec<String> = (0..self.n)
                    .filter(|i| (s >> i) & 1 == 1)
                    .map(|i| format!("x{}", i + 1))
                    .collect();
                terms.push(vars.join("*"));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Subset Moebius transform over F_2: coeffs[S] = XOR over T subset of S of
/// f(point with support T).
pub fn anf(f: &BooleanFunction) -> AnfForm {
    let n = f.n();
    let size = f.size();
    let mut coeffs = DenseBits::zeros(size);
    for x in 0..size {
        if f.eval(x) {
            coeffs.set(x, true);
        }
    }
    for i in 0..n {
        let bit = 1u64 << i;
        for s in 0..size {
            if s & bit != 0 && coeffs.get(s ^ bit) {
                coeffs.flip(s);
            }
        }
    }
    AnfForm { n, coeffs }
}

/// Max |S| with an ANF coefficient; 0 for constant functions.
pub fn anf_degree(a: &AnfForm) -> u32 {
    a.coeffs
        .iter_ones()
        .map(|s| s.count_ones())
        .max()
        .unwrap_or(0)
}

/// Inf_i(f) = Pr_x[f(x) != f(x+e_i)] as an exact dyadic rational.
pub fn influence(f: &BooleanFunction, i: u32) -> Result<BigRational> {
    let n = f.n();
    if i < 1 || i > n {
        return Err(Error::CoordinateOutOfRange { i, n });
    }
    let bit = 1u64 << (i - 1);
    let mut boundary = 0u64;
    for x in 0..f.size() {
        if x & bit == 0 && f.eval(x) != f.eval(x | bit) {
            boundary += 1;
        }
    }
    // Both x and x+e_i witness each boundary edge.
    Ok(BigRational::new(
        BigInt::from(2 * boundary),
        BigInt::from(f.size()),
    ))
}

/// Total influence under the probabilistic definition, sum_i Inf_i(f).
pub fn total_influence_prob(f: &BooleanFunction) -> BigRational {
    (1..=f.n())
        .map(|i| influence(f, i).expect("coordinate in range"))
        .sum()
}

/// Total influence under the spectral formula sum_S |S| f_hat^2(S).
/// For {0,1}-valued f this equals total_influence_prob / 4.
pub fn total_influence_spectral(s: &Spectrum) -> BigRational {
    let mut num = BigInt::zero();
    for (mask, &w) in s.coefficients().iter().enumerate() {
        let w = BigInt::from(w);
        num += BigInt::from((mask as u64).count_ones()) * &w * &w;
    }
    BigRational::new(num, pow2(2 * s.n() as u64))
}

/// Spectral 1-norm: sum_S |f_hat(S)|.
pub fn spectral_one_norm(s: &Spectrum) -> BigRational {
    let num: i128 = s.coefficients().iter().map(|&w| (w as i128).abs()).sum();
    BigRational::new(BigInt::from(num), pow2(s.n() as u64))
}

/// (f*g)(x) = 2^{-n} sum_y f(y) g(x+y), exact dyadic values.
pub fn convolve(f: &BooleanFunction, g: &BooleanFunction) -> Result<Vec<BigRational>> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch(f.n(), g.n()));
    }
    let n = f.n();
    let size = f.size() as usize;
    // 2^n * (f*g) has spectrum W_f(S) * W_g(S); one more butterfly
    // evaluates it with an exact division by 2^n at the end.
    let wf = wht(f)?;
    let wg = wht(g)?;
    let mut prod: Vec<i128> = wf
        .coefficients()
        .iter()
        .zip(wg.coefficients())
        .map(|(&a, &b)| a as i128 * b as i128)
        .collect();
    let mut h = 1usize;
    while h < size {
        let step = h * 2;
        let mut i = 0;
        while i < size {
            for j in i..i + h {
                let a = prod[j];
                let b = prod[j + h];
                prod[j] = a + b;
                prod[j + h] = a - b;
            }
            i += step;
        }
        h = step;
    }
    let denom = pow2(2 * n as u64);
    Ok(prod
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
        .collect())
}

/// E_{x,y,z} f(x)f(y)f(z)f(x+y+z), computed spectrally as
/// sum_S W(S)^4 / 2^{4n} in arbitrary precision.
pub fn fourfold_expectation(s: &Spectrum) -> BigRational {
    BigRational::new(fourth_moment_sum(s), pow2(4 * s.n() as u64))
}

/// sum_S W(S)^4 as a big integer.
pub fn fourth_moment_sum(s: &Spectrum) -> BigInt {
    let mut acc = BigInt::zero();
    for &w in s.coefficients() {
        let w2 = (w as i128) * (w as i128);
        acc += BigInt::from(w2) * BigInt::from(w2);
    }
    acc
}

pub(crate) fn pow2(e: u64) -> BigInt {
    BigInt::one() << e as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{Family, FamilySpec};

    fn gen(family: Family, n: u32) -> BooleanFunction {
        FamilySpec::new(family, n).generate().unwrap()
    }

    fn rational(num: i64, den: u64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn wht_small_examples() {
        let s = wht(&gen(Family::Constant1, 2)).unwrap();
        assert_eq!(s.coefficients(), &[4, 0, 0, 0]);

        // Frozen from the naive-transform oracle.
        let s = wht(&gen(Family::Parity, 2)).unwrap();
        assert_eq!(s.coefficients(), &[2, 0, 0, -2]);
        assert_eq!(s.coefficients(), wht_naive(&gen(Family::Parity, 2)).unwrap().coefficients());

        let s = wht(&gen(Family::Dictator { i: 1 }, 2)).unwrap();
        assert_eq!(s.coefficients(), &[2, -2, 0, 0]);
        assert_eq!(
            s.coefficients(),
            wht_naive(&gen(Family::Dictator { i: 1 }, 2)).unwrap().coefficients()
        );
    }

    #[test]
    fn wht_empty_coefficient_is_support_size() {
        for fam in [Family::Maj4, Family::Or, Family::InnerProduct] {
            let f = gen(fam, 4);
            assert_eq!(wht(&f).unwrap().w(0) as u64, f.support_size());
        }
    }

    #[test]
    fn inverse_transform_reconstructs() {
        let f = gen(Family::Maj4, 4);
        let s = wht(&f).unwrap();
        for x in 0..f.size() {
            let mut acc = 0i64;
            for mask in 0..f.size() {
                let sign = if (mask & x).count_ones() % 2 == 0 { 1 } else { -1 };
                acc += sign * s.w(mask);
            }
            assert_eq!(acc, 16 * f.eval(x) as i64);
        }
    }

    #[test]
    fn fourier_degree_examples() {
        assert_eq!(fourier_degree(&wht(&gen(Family::Constant1, 3)).unwrap()), 0);
        assert_eq!(fourier_degree(&wht(&gen(Family::Constant0, 3)).unwrap()), 0);
        assert_eq!(fourier_degree(&wht(&gen(Family::Parity, 4)).unwrap()), 4);
        let and = wht(&gen(Family::And, 2)).unwrap();
        assert_eq!(and.coefficients(), &[1, -1, -1, 1]);
        assert_eq!(fourier_degree(&and), 2);
    }

    #[test]
    fn anf_examples() {
        // Moebius transform checked by hand: XOR is x1 + x2.
        let a = anf(&gen(Family::Parity, 2));
        assert_eq!(a.to_polynomial_string(), "x1 + x2");
        assert_eq!(anf_degree(&a), 1);

        let a = anf(&gen(Family::And, 2));
        assert_eq!(a.to_polynomial_string(), "x1*x2");
        assert_eq!(anf_degree(&a), 2);

        let a = anf(&gen(Family::Constant0, 3));
        assert_eq!(a.to_polynomial_string(), "0");
        assert_eq!(anf_degree(&a), 0);
    }

    #[test]
    fn anf_evaluates_back_to_f() {
        for fam in [Family::Maj4, Family::InnerProduct, Family::Tribes { width: 2 }] {
            let f = gen(fam, 4);
            let a = anf(&f);
            for x in 0..f.size() {
                assert_eq!(a.eval(x), f.eval(x));
            }
        }
    }

    #[test]
    fn influence_examples() {
        for i in 1..=3 {
            assert_eq!(influence(&gen(Family::Parity, 3), i).unwrap(), rational(1, 1));
        }
        assert_eq!(
            influence(&gen(Family::Dictator { i: 1 }, 3), 2).unwrap(),
            rational(0, 1)
        );
        assert_eq!(influence(&gen(Family::And, 2), 1).unwrap(), rational(1, 2));
        assert!(influence(&gen(Family::And, 2), 3).is_err());
    }

    #[test]
    fn total_influence_examples() {
        let parity = gen(Family::Parity, 2);
        assert_eq!(total_influence_prob(&parity), rational(2, 1));
        assert_eq!(total_influence_spectral(&wht(&parity).unwrap()), rational(1, 2));

        let c1 = gen(Family::Constant1, 4);
        assert_eq!(total_influence_prob(&c1), rational(0, 1));
        assert_eq!(total_influence_spectral(&wht(&c1).unwrap()), rational(0, 1));

        let dict = gen(Family::Dictator { i: 1 }, 4);
        assert_eq!(total_influence_prob(&dict), rational(1, 1));
        assert_eq!(total_influence_spectral(&wht(&dict).unwrap()), rational(1, 4));
    }

    #[test]
    fn one_norm_examples() {
        assert_eq!(
            spectral_one_norm(&wht(&gen(Family::Constant1, 3)).unwrap()),
            rational(1, 1)
        );
        assert_eq!(
            spectral_one_norm(&wht(&gen(Family::Parity, 2)).unwrap()),
            rational(1, 1)
        );
        assert_eq!(
            spectral_one_norm(&wht(&gen(Family::Dictator { i: 1 }, 2)).unwrap()),
            rational(1, 1)
        );
    }

    #[test]
    fn convolve_examples() {
        let xor = gen(Family::Parity, 2);
        let conv = convolve(&xor, &xor).unwrap();
        assert_eq!(conv[0], rational(1, 2));
        assert_eq!(conv[1], rational(0, 1));
        assert_eq!(conv[2], rational(0, 1));
        assert_eq!(conv[3], rational(1, 2));

        let c0 = gen(Family::Constant0, 2);
        assert!(convolve(&xor, &c0).unwrap().iter().all(|v| v.is_zero()));

        let c1 = gen(Family::Constant1, 2);
        assert!(convolve(&c1, &c1).unwrap().iter().all(|v| v == &rational(1, 1)));

        assert!(convolve(&xor, &gen(Family::Parity, 3)).is_err());
    }

    #[test]
    fn convolution_is_fourier_multiplicative() {
        // Direct double-loop convolution as the independent route.
        let f = gen(Family::Maj4, 4);
        let g = gen(Family::Tribes { width: 2 }, 4);
        let conv = convolve(&f, &g).unwrap();
        for x in 0..16u64 {
            let count = (0..16u64).filter(|&y| f.eval(y) && g.eval(x ^ y)).count();
            assert_eq!(conv[x as usize], rational(count as i64, 16));
        }
    }

    #[test]
    fn fourfold_examples() {
        assert_eq!(
            fourfold_expectation(&wht(&gen(Family::Parity, 2)).unwrap()),
            rational(1, 8)
        );
        assert_eq!(
            fourfold_expectation(&wht(&gen(Family::Constant1, 3)).unwrap()),
            rational(1, 1)
        );
        assert_eq!(
            fourfold_expectation(&wht(&gen(Family::Constant0, 3)).unwrap()),
            rational(0, 1)
        );
    }

    #[test]
    fn csv_export_shape() {
        let csv = wht(&gen(Family::Dictator { i: 1 }, 2)).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "mask,subset,W,f_hat");
        assert_eq!(lines[1], "0,{},2,0.5");
        assert_eq!(lines[2], "1,{1},-2,-0.5");
        assert_eq!(lines[3], "2,{2},0,0");
        assert_eq!(lines[4], "3,{1,2},0,0");
    }

    #[test]
    fn dyadic_decimal_rendering() {
        assert_eq!(dyadic_decimal(3, 2), "0.75");
        assert_eq!(dyadic_decimal(-1, 3), "-0.125");
        assert_eq!(dyadic_decimal(8, 2), "2");
        assert_eq!(dyadic_decimal(0, 5), "0");
        assert_eq!(dyadic_decimal(5, 0), "5");
    }
}
