//! Assembles spectra, energies, and partition sizes into verdicts for the
//! uncertainty inequality, the Hoelder chain, the influence lower bound,
//! and the entropy bound, with slack ratios and hypothesis diagnostics.
//!
//! Every comparison with a fractional exponent is cubed into an exact
//! rational comparison; floating point appears only in rendered slack and
//! in the entropy quantities (which are genuinely irrational). Entropy
//! comparisons use `ENTROPY_TOLERANCE`.

use crate::cube::BooleanFunction;
use crate::energy::energy;
use crate::error::Result;
use crate::partition::{
    decision_tree_partition, min_partition_exact_limit, PartitionSearch, DEFAULT_SOLVER_BUDGET,
    DEFAULT_SOLVER_MAX_N,
};
use crate::spectral::{
    anf, anf_degree, dyadic_decimal, fourier_degree, pow2, spectral_one_norm,
    total_influence_prob, total_influence_spectral, wht, Spectrum,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Relative tolerance for the entropy comparisons, the only real-valued
/// verdicts in the tool.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

pub const FLAG_CONSTANT: &str = "constant function";
pub const FLAG_IRRELEVANT: &str = "irrelevant coordinates present";
pub const FLAG_H_UPPER_BOUND: &str = "H is an upper bound (solver budget exhausted)";
pub const FLAG_INFLUENCE_READING: &str = "influence-reading mismatch (prob vs spectral)";

/// One inequality, framed as lhs <= rhs (or lhs == rhs for the bridge).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityLink {
    pub name: String,
    /// Exact rendering of the left side.
    pub lhs: String,
    pub rhs: String,
    pub lhs_approx: f64,
    pub rhs_approx: f64,
    pub holds: bool,
    /// rhs / lhs; None when the left side is zero (degenerate slack).
    pub slack: Option<f64>,
    /// True when a hypothesis flag means a failure is expected, not a bug.
    pub conditional: bool,
    pub flags: Vec<String>,
}

/// All scalar quantities of a function plus the per-inequality records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub n: u32,
    pub support_size: u64,
    pub degree: u32,
    pub anf_degree: u32,
    /// H: total part count of the best known monochromatic partition.
    pub partition_size: usize,
    /// Parts labeled 1 in the same partition (the alternative H reading).
    pub label1_parts: usize,
    pub h_optimal: bool,
    pub energy: String,
    pub i_prob: String,
    pub i_spec: String,
    pub one_norm: String,
    pub relevant_coordinates: Vec<u32>,
    pub m: usize,
    pub hypothesis_flags: Vec<String>,
    pub links: Vec<InequalityLink>,
}

/// The entropy-side verdicts: the Harper-type bound and the proposition
/// 2^{3n+3} E^3 <= deg^2 H^2 E(A).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// Support density |A| / 2^n, exact decimal.
    pub alpha: String,
    pub alpha_approx: f64,
    /// alpha * log2(1/alpha); 0 at alpha in {0, 1}.
    pub entropy: f64,
    pub harper_lhs: f64,
    pub harper_rhs: f64,
    pub harper_holds: bool,
    pub proposition_lhs: f64,
    pub proposition_rhs: f64,
    pub proposition_holds: bool,
    /// alpha in {0, 1}: both bounds hold trivially.
    pub degenerate: bool,
    pub flags: Vec<String>,
}

/// Full per-function output of the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub inequality: InequalityReport,
    pub entropy: EntropyReport,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub solver_budget: u64,
    /// Dimensions above this use the decision-tree upper bound for H.
    pub solver_max_n: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            solver_budget: DEFAULT_SOLVER_BUDGET,
            solver_max_n: DEFAULT_SOLVER_MAX_N,
        }
    }
}

fn ratio_str(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn slack_of(lhs: &BigRational, rhs: &BigRational) -> Option<f64> {
    if lhs.is_zero() {
        None
    } else {
        Some(ratio_f64(&(rhs / lhs)))
    }
}

fn rational_link(
    name: &str,
    lhs: BigRational,
    rhs: BigRational,
    conditional: bool,
    flags: Vec<String>,
) -> InequalityLink {
    InequalityLink {
        name: name.to_string(),
        holds: lhs <= rhs,
        slack: slack_of(&lhs, &rhs),
        lhs: ratio_str(&lhs),
        rhs: ratio_str(&rhs),
        lhs_approx: ratio_f64(&lhs),
        rhs_approx: ratio_f64(&rhs),
        conditional,
        flags,
    }
}

fn big(u: &BigUint) -> BigInt {
    BigInt::from(u.clone())
}

fn int_ratio(i: BigInt) -> BigRational {
    BigRational::from_integer(i)
}

/// Primitive quantities the reports are assembled from.
pub struct Primitives {
    pub spectrum: Spectrum,
    pub degree: u32,
    pub anf_degree: u32,
    pub energy: BigUint,
    pub i_prob: BigRational,
    pub i_spec: BigRational,
    pub one_norm: BigRational,
    pub relevant: Vec<u32>,
    pub partition: PartitionSearch,
    pub label1_parts: usize,
}

pub fn compute_primitives(f: &BooleanFunction, opts: &AnalysisOptions) -> Result<Primitives> {
    let spectrum = wht(f)?;
    let degree = fourier_degree(&spectrum);
    let anf_deg = anf_degree(&anf(f));
    let support = f.support();
    let e = energy(&support, &spectrum);
    let partition = if f.n() <= opts.solver_max_n {
        min_partition_exact_limit(f, opts.solver_budget, opts.solver_max_n)?
    } else {
        let (_, p) = decision_tree_partition(f)?;
        PartitionSearch {
            size: p.len(),
            witness: p,
            optimal: false,
            nodes_expanded: 0,
        }
    };
    let label1_parts = partition.witness.label1_count();
    Ok(Primitives {
        degree,
        anf_degree: anf_deg,
        energy: e,
        i_prob: total_influence_prob(f),
        i_spec: total_influence_spectral(&spectrum),
        one_norm: spectral_one_norm(&spectrum),
        relevant: f.relevant_coordinates(),
        spectrum,
        partition,
        label1_parts,
    })
}

/// Evaluate every inequality link from the primitive quantities.
pub fn build_report(f: &BooleanFunction, prim: &Primitives) -> InequalityReport {
    let n = f.n();
    let m = prim.relevant.len();
    let h = prim.partition.size;
    let deg = prim.degree;

    let mut hypothesis_flags = Vec::new();
    if deg == 0 {
        hypothesis_flags.push(FLAG_CONSTANT.to_string());
    }
    if m < n as usize {
        hypothesis_flags.push(format!("{FLAG_IRRELEVANT} (m={m}<{n})"));
    }
    if !prim.partition.optimal {
        hypothesis_flags.push(FLAG_H_UPPER_BOUND.to_string());
    }

    let e = big(&prim.energy);
    let h_big = BigInt::from(h);
    let deg_big = BigInt::from(deg);
    let p2_3n = pow2(3 * n as u64);

    let mut links = Vec::new();

    // Literal uncertainty bound: 2^{3n} n^3 <= 8^deg deg^2 H^2 E(A).
    // Its hidden hypotheses are deg >= 1 and all coordinates relevant.
    {
        let lhs = &p2_3n * BigInt::from(n).pow(3);
        let rhs = pow2(3 * deg as u64) * &deg_big * &deg_big * &h_big * &h_big * &e;
        let conditional = !hypothesis_flags.is_empty();
        links.push(rational_link(
            "theorem1_literal",
            int_ratio(lhs),
            int_ratio(rhs),
            conditional,
            hypothesis_flags.clone(),
        ));
    }

    // Chain consequence with the spectral influence in place of n/2^deg:
    // 2^{3n} I_spec^3 <= deg^2 H^2 E(A). Holds unconditionally.
    {
        let lhs = int_ratio(p2_3n.clone()) * prim.i_spec.pow(3);
        let rhs = int_ratio(&deg_big * &deg_big * &h_big * &h_big * &e);
        let flags = if prim.partition.optimal {
            vec![]
        } else {
            vec![FLAG_H_UPPER_BOUND.to_string()]
        };
        links.push(rational_link("theorem1_corrected", lhs, rhs, false, flags));
    }

    // Influence lower bound, relevant-coordinate reading: m/2^deg <= I_prob.
    {
        let lhs = BigRational::new(BigInt::from(m), pow2(deg as u64));
        links.push(rational_link(
            "schwartz_zippel_m",
            lhs,
            prim.i_prob.clone(),
            false,
            vec![],
        ));
    }

    // Literal n-reading of the same bound; fails when m < n.
    {
        let lhs = BigRational::new(BigInt::from(n), pow2(deg as u64));
        let mut flags = Vec::new();
        if m < n as usize {
            flags.push(format!("{FLAG_IRRELEVANT} (m={m}<{n})"));
        }
        let conditional = !flags.is_empty();
        links.push(rational_link(
            "schwartz_zippel_n",
            lhs,
            prim.i_prob.clone(),
            conditional,
            flags,
        ));
    }

    // Hoelder bound, cubed to clear the fractional powers:
    // I_spec^3 <= 2^{-3n} deg^2 |f_hat|_1^2 E(A).
    {
        let lhs = prim.i_spec.pow(3);
        let rhs = BigRational::new(&deg_big * &deg_big * &e, p2_3n.clone())
            * &prim.one_norm
            * &prim.one_norm;
        links.push(rational_link("holder_spectral_cubed", lhs, rhs, false, vec![]));
    }

    // Same chain with I_prob = 4 I_spec substituted.
    {
        let lhs = prim.i_prob.pow(3) / int_ratio(BigInt::from(64));
        let rhs = BigRational::new(&deg_big * &deg_big * &e, p2_3n)
            * &prim.one_norm
            * &prim.one_norm;
        links.push(rational_link("holder_prob_cubed", lhs, rhs, false, vec![]));
    }

    // Spectral 1-norm against both partition-size readings.
    {
        let flags = if prim.partition.optimal {
            vec![]
        } else {
            vec![FLAG_H_UPPER_BOUND.to_string()]
        };
        links.push(rational_link(
            "one_norm_vs_label1_parts",
            prim.one_norm.clone(),
            int_ratio(BigInt::from(prim.label1_parts)),
            false,
            flags.clone(),
        ));
        links.push(rational_link(
            "one_norm_vs_h",
            prim.one_norm.clone(),
            int_ratio(h_big.clone()),
            false,
            flags,
        ));
    }

    // The factor-4 bridge between the two influence definitions, reported
    // as an equality link.
    {
        let four_spec = &prim.i_spec * int_ratio(BigInt::from(4));
        links.push(InequalityLink {
            name: "influence_bridge".to_string(),
            holds: prim.i_prob == four_spec,
            slack: Some(1.0),
            lhs: ratio_str(&prim.i_prob),
            rhs: format!("4*{}", ratio_str(&prim.i_spec)),
            lhs_approx: ratio_f64(&prim.i_prob),
            rhs_approx: ratio_f64(&four_spec),
            conditional: false,
            flags: vec![],
        });
    }

    InequalityReport {
        n,
        support_size: f.support_size(),
        degree: deg,
        anf_degree: prim.anf_degree,
        partition_size: h,
        label1_parts: prim.label1_parts,
        h_optimal: prim.partition.optimal,
        energy: prim.energy.to_string(),
        i_prob: ratio_str(&prim.i_prob),
        i_spec: ratio_str(&prim.i_spec),
        one_norm: ratio_str(&prim.one_norm),
        relevant_coordinates: prim.relevant.clone(),
        m,
        hypothesis_flags,
        links,
    }
}

/// Entropy-side verdicts from the same primitives.
pub fn build_entropy_report(f: &BooleanFunction, prim: &Primitives) -> EntropyReport {
    let n = f.n();
    let ones = f.support_size();
    let size = f.size();
    let alpha = ones as f64 / size as f64;
    let degenerate = ones == 0 || ones == size;
    let entropy = if degenerate {
        0.0
    } else {
        alpha * (1.0 / alpha).log2()
    };
    let i_prob = ratio_f64(&prim.i_prob);
    let harper_rhs = 2.0 * entropy;
    let harper_holds = i_prob + ENTROPY_TOLERANCE * harper_rhs.max(1.0) >= harper_rhs;

    let deg = prim.degree as f64;
    let h = prim.partition.size as f64;
    let e = big(&prim.energy).to_f64().unwrap_or(f64::NAN);
    let proposition_lhs = ((3 * n + 3) as f64).exp2() * entropy.powi(3);
    let proposition_rhs = deg * deg * h * h * e;
    let proposition_holds =
        proposition_lhs <= proposition_rhs + ENTROPY_TOLERANCE * proposition_rhs.max(1.0);

    let mut flags = Vec::new();
    if prim.degree == 0 {
        flags.push(FLAG_CONSTANT.to_string());
    }
    if prim.relevant.len() < n as usize {
        flags.push(format!(
            "{FLAG_IRRELEVANT} (m={}<{n})",
            prim.relevant.len()
        ));
    }
    if !prim.partition.optimal {
        flags.push(FLAG_H_UPPER_BOUND.to_string());
    }
    // The proposition mixes the probabilistic influence (Harper side) with
    // the spectral one (Hoelder side); when it fails although both of its
    // ingredients hold, surface that reading mismatch.
    if !proposition_holds && harper_holds {
        flags.push(FLAG_INFLUENCE_READING.to_string());
    }

    EntropyReport {
        alpha: dyadic_decimal(ones as i128, n),
        alpha_approx: alpha,
        entropy,
        harper_lhs: i_prob,
        harper_rhs,
        harper_holds,
        proposition_lhs,
        proposition_rhs,
        proposition_holds,
        degenerate,
        flags,
    }
}

/// Full pipeline: spectrum, degrees, influences, norms, energy, partition,
/// and all verdicts.
pub fn analyze(f: &BooleanFunction, opts: &AnalysisOptions) -> Result<Analysis> {
    let prim = compute_primitives(f, opts)?;
    Ok(Analysis {
        inequality: build_report(f, &prim),
        entropy: build_entropy_report(f, &prim),
    })
}

impl Analysis {
    /// Names of failed links that must hold for any correct implementation
    /// (a non-empty result signals a bug, not a property of the paper).
    pub fn unconditional_failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .inequality
            .links
            .iter()
            .filter(|l| !l.holds && !l.conditional)
            .map(|l| l.name.clone())
            .collect();
        if !self.entropy.harper_holds {
            out.push("harper".to_string());
        }
        out
    }

    /// Failed links whose hypothesis flags explain the failure.
    pub fn flagged_failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .inequality
            .links
            .iter()
            .filter(|l| !l.holds && l.conditional)
            .map(|l| l.name.clone())
            .collect();
        if !self.entropy.proposition_holds {
            out.push("proposition".to_string());
        }
        out
    }

    /// Human-readable table, one row per inequality link.
    pub fn render_table(&self) -> String {
        let r = &self.inequality;
        let mut out = String::new();
        let _ = writeln!(out, "n = {}  |A| = {}  deg = {}  anf_deg = {}", r.n, r.support_size, r.degree, r.anf_degree);
        let _ = writeln!(
            out,
            "H = {}{}  (label-1 parts: {})  E(A) = {}",
            r.partition_size,
            if r.h_optimal { "" } else { " (upper bound)" },
            r.label1_parts,
            r.energy
        );
        let _ = writeln!(
            out,
            "I_prob = {}  I_spec = {}  |f_hat|_1 = {}  m = {}",
            r.i_prob, r.i_spec, r.one_norm, r.m
        );
        if !r.hypothesis_flags.is_empty() {
            let _ = writeln!(out, "flags: {}", r.hypothesis_flags.join("; "));
        }
        let _ = writeln!(
            out,
            "{:<26} {:>14} {:>14} {:>6} {:>10}  flags",
            "inequality", "lhs", "rhs", "holds", "slack"
        );
        for l in &r.links {
            let slack = l
                .slack
                .map(|s| format!("{s:.4}"))
                .unwrap_or_else(|| "inf".to_string());
            let _ = writeln!(
                out,
                "{:<26} {:>14.6} {:>14.6} {:>6} {:>10}  {}",
                l.name,
                l.lhs_approx,
                l.rhs_approx,
                l.holds,
                slack,
                l.flags.join("; ")
            );
        }
        let e = &self.entropy;
        let _ = writeln!(
            out,
            "entropy: alpha = {}  E = {:.6}  harper {} ({:.6} >= {:.6})  proposition {} ({:.6} <= {:.6})",
            e.alpha,
            e.entropy,
            if e.harper_holds { "holds" } else { "FAILS" },
            e.harper_lhs,
            e.harper_rhs,
            if e.proposition_holds { "holds" } else { "FAILS" },
            e.proposition_lhs,
            e.proposition_rhs
        );
        if !e.flags.is_empty() {
            let _ = writeln!(out, "entropy flags: {}", e.flags.join("; "));
        }
        out
    }
}
