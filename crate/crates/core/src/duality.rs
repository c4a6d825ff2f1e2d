//! Kramers–Wannier duality for the Ising and 3-state Potts models, and the
//! word algebra behind the mixed / New boundary correspondence.
//!
//! Under `X = Σ M_σ`, `U = Σ ω^{σ-1} M_σ`, `U† = Σ ω^{1-σ} M_σ` the sum of
//! allowed words of length `n` becomes `Σ_σ C_n(σ) M_{σ_1}…M_{σ_n}` with
//! `C_n(σ) = Π_{k<n} (1 + ω^{σ_k - σ_{k+1}})`, whose real part is the
//! cyclic weight `2^{n-1} (-1/2)^{#mismatches}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::CycloNumber;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualityError {
    #[error("beta must be a positive finite number, got {0}")]
    BadBeta(f64),
    #[error("coupling g must be nonzero and finite, got {0}")]
    BadCoupling(f64),
    #[error("length cap is {cap}, got {n}")]
    LengthCap { n: usize, cap: usize },
    #[error("spin strings must be nonempty")]
    EmptyString,
    #[error("spins must be 1, 2 or 3, got {0}")]
    BadSpin(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Ising,
    Potts3,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Ising => "ising",
            Model::Potts3 => "potts3",
        })
    }
}

fn check_beta(beta: f64) -> Result<(), DualityError> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(DualityError::BadBeta(beta))
    }
}

/// Ising: `tanh β̂ = e^{-2β}`. Potts3: `e^{β̂} = 1 + 3/(e^β - 1)`.
pub fn dual_beta(model: Model, beta: f64) -> Result<f64, DualityError> {
    check_beta(beta)?;
    Ok(match model {
        // atanh(e^{-2β}) = -ln(tanh β) / 2
        Model::Ising => -0.5 * beta.tanh().ln(),
        Model::Potts3 => (3.0 / beta.exp_m1()).ln_1p(),
    })
}

/// Scalar data of the change of matrix variables between a model and its dual.
///
/// For Potts3 the action weight is `μ(c) = (1-c)/((1+c)(1-2c))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityMap {
    pub model: Model,
    pub beta: f64,
    pub beta_dual: f64,
    /// `c = 1/(e^β + 1)`, Potts3 only.
    pub c: Option<f64>,
    pub lambda: f64,
    /// `ĝ/g`.
    pub coupling_scale: f64,
    pub g: f64,
    pub g_dual: f64,
}

/// Ising: `λ = 1 + e^{-2β}`, `ĝ = λ^{-3} g/√2`. Potts3: `λ = √((1-c)/(1+c))`,
/// `ĝ = λ^{-3} g/√3`.
pub fn coupling_map(model: Model, beta: f64, g: f64) -> Result<DualityMap, DualityError> {
    let beta_dual = dual_beta(model, beta)?;
    if g == 0.0 || !g.is_finite() {
        return Err(DualityError::BadCoupling(g));
    }
    let (c, lambda, root) = match model {
        Model::Ising => (None, 1.0 + (-2.0 * beta).exp(), 2f64.sqrt()),
        Model::Potts3 => {
            let c = 1.0 / (beta.exp() + 1.0);
            (Some(c), ((1.0 - c) / (1.0 + c)).sqrt(), 3f64.sqrt())
        }
    };
    let coupling_scale = lambda.powi(-3) / root;
    Ok(DualityMap {
        model,
        beta,
        beta_dual,
        c,
        lambda,
        coupling_scale,
        g,
        g_dual: coupling_scale * g,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    X,
    U,
    Udag,
}

impl Letter {
    /// Exponent `e` with the letter mapping to `Σ ω^{e·(σ-1)} M_σ`.
    fn phase(self) -> u8 {
        match self {
            Letter::X => 0,
            Letter::U => 1,
            Letter::Udag => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinWord(pub Vec<Letter>);

impl fmt::Display for SpinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "X",
                Letter::U => "U",
                Letter::Udag => "U†",
            })?;
        }
        Ok(())
    }
}

pub const DEFAULT_WORD_CAP: usize = 14;
pub const EXPANSION_CAP: usize = 12;

/// Allowed words of length `n`, from `W_n = X W_{n-1} + Σ_{k=2}^{n} U X^{k-2} U† W_{n-k}`.
pub fn allowed_words(n: usize) -> Result<Vec<SpinWord>, DualityError> {
    allowed_words_capped(n, DEFAULT_WORD_CAP)
}

pub fn allowed_words_capped(n: usize, cap: usize) -> Result<Vec<SpinWord>, DualityError> {
    if n > cap {
        return Err(DualityError::LengthCap { n, cap });
    }
    // table[len] holds W_len
    let mut table: Vec<Vec<Vec<Letter>>> = vec![vec![Vec::new()]];
    for len in 1..=n {
        let mut words = Vec::new();
        for tail in &table[len - 1] {
            let mut w = vec![Letter::X];
            w.extend_from_slice(tail);
            words.push(w);
        }
        for k in 2..=len {
            let mut head = vec![Letter::U];
            head.extend(std::iter::repeat_n(Letter::X, k - 2));
            head.push(Letter::Udag);
            for tail in &table[len - k] {
                let mut w = head.clone();
                w.extend_from_slice(tail);
                words.push(w);
            }
        }
        table.push(words);
    }
    Ok(table.swap_remove(n).into_iter().map(SpinWord).collect())
}

/// Coefficients of all `3^n` spin strings after substituting the matrix map
/// into every allowed word. Entry `[c0, c1, c2]` means `c0 + c1·ω + c2·ω²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordExpansion {
    length: usize,
    counts: Vec<[u64; 3]>,
}

impl WordExpansion {
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of spin strings, `3^n`.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Coefficient of `σ` (entries in `1..=3`), in `ℚ(ζ_3)`.
    pub fn coefficient(&self, sigma: &[u8]) -> Result<CycloNumber, DualityError> {
        if sigma.len() != self.length {
            return Err(DualityError::LengthCap {
                n: sigma.len(),
                cap: self.length,
            });
        }
        let mut idx = 0usize;
        for &s in sigma {
            check_spin(s)?;
            idx = idx * 3 + (s - 1) as usize;
        }
        Ok(counts_to_cyclo(&self.counts[idx]))
    }

    /// `(σ, coefficient)` in lexicographic order of `σ`.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<u8>, CycloNumber)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(move |(idx, c)| (index_to_sigma(idx, self.length), counts_to_cyclo(c)))
    }
}

fn counts_to_cyclo(c: &[u64; 3]) -> CycloNumber {
    let terms: Vec<(i64, i64)> = c
        .iter()
        .enumerate()
        .map(|(e, &k)| (e as i64, i64::try_from(k).expect("count fits i64")))
        .collect();
    CycloNumber::from_terms(3, &terms, 1)
}

fn index_to_sigma(mut idx: usize, n: usize) -> Vec<u8> {
    let mut sigma = vec![1u8; n];
    for slot in sigma.iter_mut().rev() {
        *slot = (idx % 3) as u8 + 1;
        idx /= 3;
    }
    sigma
}

fn check_spin(s: u8) -> Result<(), DualityError> {
    if (1..=3).contains(&s) {
        Ok(())
    } else {
        Err(DualityError::BadSpin(s))
    }
}

/// Adds one word's contributions: the exponent of `ω` for string `σ` is
/// `Σ_i phase_i·(σ_i - 1) mod 3`.
fn accumulate_word(phases: &[u8], counts: &mut [[u64; 3]]) {
    fn rec(phases: &[u8], idx: usize, exp: u8, counts: &mut [[u64; 3]]) {
        match phases.split_first() {
            None => counts[idx][exp as usize] += 1,
            Some((&ph, rest)) => {
                for s in 0..3u8 {
                    rec(rest, idx * 3 + s as usize, (exp + ph * s) % 3, counts);
                }
            }
        }
    }
    rec(phases, 0, 0, counts);
}

/// Brute-force expansion over every allowed word and every spin string.
pub fn expand_word_sum(n: usize) -> Result<WordExpansion, DualityError> {
    if n > EXPANSION_CAP {
        return Err(DualityError::LengthCap {
            n,
            cap: EXPANSION_CAP,
        });
    }
    let words: Vec<Vec<u8>> = allowed_words(n)?
        .into_iter()
        .map(|w| w.0.iter().map(|l| l.phase()).collect())
        .collect();
    let size = 3usize.pow(n as u32);
    let counts = sum_words(&words, size);
    Ok(WordExpansion { length: n, counts })
}

#[cfg(feature = "parallel")]
fn sum_words(words: &[Vec<u8>], size: usize) -> Vec<[u64; 3]> {
    use rayon::prelude::*;
    // integer sums, so the merge order cannot change the result
    words
        .par_chunks(64)
        .fold(
            || vec![[0u64; 3]; size],
            |mut acc, chunk| {
                for w in chunk {
                    accumulate_word(w, &mut acc);
                }
                acc
            },
        )
        .reduce(
            || vec![[0u64; 3]; size],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    for e in 0..3 {
                        x[e] += y[e];
                    }
                }
                a
            },
        )
}

#[cfg(not(feature = "parallel"))]
fn sum_words(words: &[Vec<u8>], size: usize) -> Vec<[u64; 3]> {
    let mut acc = vec![[0u64; 3]; size];
    for w in words {
        accumulate_word(w, &mut acc);
    }
    acc
}

/// `Π_{k<n} (1 + ω^{σ_k - σ_{k+1}})` in `ℚ(ζ_3)`.
pub fn coefficient_closed_form(sigma: &[u8]) -> Result<CycloNumber, DualityError> {
    if sigma.is_empty() {
        return Err(DualityError::EmptyString);
    }
    for &s in sigma {
        check_spin(s)?;
    }
    let one = CycloNumber::one(3);
    Ok(sigma.windows(2).fold(one.clone(), |acc, pair| {
        let d = pair[0] as i64 - pair[1] as i64;
        acc * (&one + &CycloNumber::root_of_unity(3, d))
    }))
}

/// `2^{n-1} (-1/2)^{#k: σ_k ≠ σ_{k+1}}` with `σ_{n+1} = σ_1`.
pub fn new_weight(sigma: &[u8]) -> Result<BigRational, DualityError> {
    if sigma.is_empty() {
        return Err(DualityError::EmptyString);
    }
    for &s in sigma {
        check_spin(s)?;
    }
    let n = sigma.len();
    let mismatches = (0..n).filter(|&k| sigma[k] != sigma[(k + 1) % n]).count();
    let base = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let mut w = BigRational::from_integer(BigInt::from(2).pow(n as u32 - 1));
    for _ in 0..mismatches {
        w *= &base;
    }
    Ok(w)
}

/// Real part of an element of `ℚ(ζ_3)`.
pub fn real_part(x: &CycloNumber) -> BigRational {
    let twice = x + &x.conjugate();
    twice.as_rational().expect("x + x̄ is rational") / BigInt::from(2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordMismatch {
    pub sigma: Vec<u8>,
    pub expansion: CycloNumber,
    pub closed_form: CycloNumber,
    #[serde(with = "crate::exactnum::rational_string")]
    pub new_weight: BigRational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordCheck {
    pub length: usize,
    pub words: usize,
    pub strings_checked: usize,
    pub first_mismatch: Option<WordMismatch>,
}

impl WordCheck {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the brute-force expansion, the product formula and the cyclic
/// weight on every spin string of length `n`.
pub fn verify_words(n: usize) -> Result<WordCheck, DualityError> {
    let expansion = expand_word_sum(n)?;
    let words = if n == 0 { 1 } else { 1usize << (n - 1) };
    if n == 0 {
        return Ok(WordCheck {
            length: 0,
            words,
            strings_checked: 0,
            first_mismatch: None,
        });
    }
    let mut checked = 0;
    for (sigma, coeff) in expansion.iter() {
        let closed = coefficient_closed_form(&sigma)?;
        let weight = new_weight(&sigma)?;
        checked += 1;
        if coeff != closed || real_part(&closed) != weight {
            return Ok(WordCheck {
                length: n,
                words,
                strings_checked: checked,
                first_mismatch: Some(WordMismatch {
                    sigma,
                    expansion: coeff,
                    closed_form: closed,
                    new_weight: weight,
                }),
            });
        }
    }
    Ok(WordCheck {
        length: n,
        words,
        strings_checked: checked,
        first_mismatch: None,
    })
}
