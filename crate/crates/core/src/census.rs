//! Counting subsets of F_p (and of the ring Z/NZ) by cardinality and sum.
//!
//! For an odd prime p, `counts[l][u]` is the number of l-element subsets of
//! the ground set with element sum congruent to u mod p. The ground set is
//! all of F_p, or F_p* in the `star` variant. Three independent routes are
//! provided: bitmask enumeration, dynamic programming over (cardinality,
//! sum), and closed forms; they must agree exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Exact binomial coefficient for n <= 128, built from the prime
/// factorization of the factorials so no intermediate exceeds the result.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if n > 128 {
        return Err(Error::RangeError(format!(
            "binomial arguments capped at n <= 128, got n = {n}"
        )));
    }
    if k > n {
        return Err(Error::RangeError(format!("binomial with k = {k} > n = {n}")));
    }
    let legendre = |m: u64, q: u64| {
        let mut e = 0u32;
        let mut pw = q;
        while pw <= m {
            e += (m / pw) as u32;
            match pw.checked_mul(q) {
                Some(next) => pw = next,
                None => break,
            }
        }
        e
    };
    let mut out: u128 = 1;
    for q in 2..=n {
        if !is_prime(q) {
            continue;
        }
        let e = legendre(n, q) - legendre(k, q) - legendre(n - k, q);
        for _ in 0..e {
            out *= q as u128;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMethod {
    Enumerate,
    Dp,
    ClosedForm,
}

/// Census of subsets of F_p (or F_p*) by cardinality and sum mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub p: u64,
    pub star: bool,
    pub method: CensusMethod,
    /// `counts[l][u]`, l in 0..=ground size, u in 0..p.
    pub counts: Vec<Vec<u64>>,
}

impl CensusTable {
    pub fn ground_size(&self) -> usize {
        (if self.star { self.p - 1 } else { self.p }) as usize
    }

    pub fn row_sum(&self, l: usize) -> u64 {
        self.counts[l].iter().sum()
    }

    /// Tables computed by different methods describe the same census when
    /// their counts agree.
    pub fn agrees_with(&self, other: &CensusTable) -> bool {
        self.p == other.p && self.star == other.star && self.counts == other.counts
    }
}

fn check_census_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > 61 {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(())
}

fn ground_set(p: u64, star: bool) -> Vec<u64> {
    if star {
        (1..p).collect()
    } else {
        (0..p).collect()
    }
}

/// Census by walking all 2^|ground| subsets. Exact but exponential;
/// restricted to p <= 19.
pub fn census_enumerate(p: u64, star: bool) -> Result<CensusTable> {
    check_census_prime(p)?;
    if p > 19 {
        return Err(Error::TooLarge(format!(
            "enumeration walks 2^p subsets and is capped at p <= 19, got {p}"
        )));
    }
    let ground = ground_set(p, star);
    let g = ground.len();
    let mut counts = vec![vec![0u64; p as usize]; g + 1];
    for mask in 0u32..(1u32 << g) {
        let mut sum = 0u64;
        for (i, &e) in ground.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum += e;
            }
        }
        counts[mask.count_ones() as usize][(sum % p) as usize] += 1;
    }
    Ok(CensusTable {
        p,
        star,
        method: CensusMethod::Enumerate,
        counts,
    })
}

/// Census by dynamic programming over (cardinality, sum mod p); polynomial
/// in p and exact for every p <= 61.
pub fn census_dp(p: u64, star: bool) -> Result<CensusTable> {
    check_census_prime(p)?;
    let ground = ground_set(p, star);
    let g = ground.len();
    let mut counts = vec![vec![0u64; p as usize]; g + 1];
    counts[0][0] = 1;
    for (used, &e) in ground.iter().enumerate() {
        for l in (0..=used).rev() {
            for u in 0..p as usize {
                let c = counts[l][u];
                if c != 0 {
                    let v = (u as u64 + e) % p;
                    counts[l + 1][v as usize] += c;
                }
            }
        }
    }
    Ok(CensusTable {
        p,
        star,
        method: CensusMethod::Dp,
        counts,
    })
}

/// Number of l-subsets of F_p with any prescribed sum, 1 <= l <= p - 1:
/// the count is C(p, l) / p independently of the sum.
pub fn closed_form_full(p: u64, l: usize) -> Result<u64> {
    check_census_prime(p)?;
    if l == 0 || l as u64 >= p {
        return Err(Error::RangeError(format!(
            "uniform closed form only covers 1 <= l <= p - 1, got l = {l}"
        )));
    }
    let b = binomial(p, l as u64)?;
    debug_assert_eq!(b % p as u128, 0);
    Ok((b / p as u128) as u64)
}

/// Counts of l-subsets of F_p* with sum zero and with any fixed nonzero sum,
/// for 0 <= l <= p - 1. Returns `(s_star_zero, s_star)`.
pub fn closed_form_star(p: u64, l: usize) -> Result<(u64, u64)> {
    check_census_prime(p)?;
    if l as u64 >= p {
        return Err(Error::RangeError(format!(
            "star closed form only covers 0 <= l <= p - 1, got l = {l}"
        )));
    }
    let mut alternating: i128 = 0;
    let mut sign = 1i128;
    for i in 0..l {
        alternating += sign * binomial(p, (l - i) as u64)? as i128;
        sign = -sign;
    }
    debug_assert_eq!(alternating.rem_euclid(p as i128), 0);
    let s_star = alternating / p as i128;
    let s_star_zero = s_star + if l % 2 == 0 { 1 } else { -1 };
    debug_assert!(s_star >= 0 && s_star_zero >= 0);
    Ok((s_star_zero as u64, s_star as u64))
}

/// Full census grid reconstructed from the closed forms (plus the trivial
/// rows l = 0 and l = p in the non-star case).
pub fn closed_form_table(p: u64, star: bool) -> Result<CensusTable> {
    check_census_prime(p)?;
    let pu = p as usize;
    let counts = if star {
        (0..pu)
            .map(|l| {
                let (zero, nonzero) = closed_form_star(p, l)?;
                let mut row = vec![nonzero; pu];
                row[0] = zero;
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut counts = vec![vec![0u64; pu]; pu + 1];
        counts[0][0] = 1;
        counts[pu][(p * (p - 1) / 2 % p) as usize] = 1;
        for l in 1..pu {
            counts[l] = vec![closed_form_full(p, l)?; pu];
        }
        counts
    };
    Ok(CensusTable {
        p,
        star,
        method: CensusMethod::ClosedForm,
        counts,
    })
}

/// Results of the structural identity checks tying the census tables to the
/// closed forms. All flags must hold for any odd prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusIdentityReport {
    /// Row l sums to C(p, l) (full) resp. C(p-1, l) (star).
    pub row_sums: bool,
    /// Full census rows 1..p-1 are constant across all sums.
    pub full_uniform: bool,
    /// Star census rows are constant across nonzero sums.
    pub star_uniform: bool,
    /// C(p,l)/p = S*_l + S*_{l-1} = S*0_l + S*0_{l-1} for 1 <= l <= p - 1.
    pub recurrence: bool,
    /// S*0_l - S*_l = (-1)^l for 0 <= l <= p - 1.
    pub difference: bool,
    /// sum_{i=1}^{(p-1)/2} (S*_{2i} - S*_{2i-1}) = -1 mod p.
    pub congruence: bool,
    /// DP tables equal the closed-form grids.
    pub closed_form_matches: bool,
    /// Enumeration equals DP (only attempted for p <= 19).
    pub enumerate_matches_dp: Option<bool>,
}

impl CensusIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.row_sums
            && self.full_uniform
            && self.star_uniform
            && self.recurrence
            && self.difference
            && self.congruence
            && self.closed_form_matches
            && self.enumerate_matches_dp.unwrap_or(true)
    }
}

/// Checks every census identity for an odd prime p <= 61.
pub fn verify_census_identities(p: u64) -> Result<CensusIdentityReport> {
    check_census_prime(p)?;
    if p == 2 {
        return Err(Error::RangeError(
            "census identities are stated for odd primes".into(),
        ));
    }
    let pu = p as usize;
    let full = census_dp(p, false)?;
    let star = census_dp(p, true)?;

    let mut row_sums = true;
    for l in 0..=pu {
        row_sums &= full.row_sum(l) as u128 == binomial(p, l as u64)?;
    }
    for l in 0..pu {
        row_sums &= star.row_sum(l) as u128 == binomial(p - 1, l as u64)?;
    }

    let full_uniform = (1..pu).all(|l| full.counts[l].iter().all(|&c| c == full.counts[l][0]));
    let star_uniform = (0..pu).all(|l| full_is_constant(&star.counts[l][1..]));

    let s_star = |l: usize| star.counts[l][1];
    let s_star_zero = |l: usize| star.counts[l][0];
    let recurrence = (1..pu).try_fold(true, |acc, l| {
        Ok::<bool, Error>(
            acc && closed_form_full(p, l)? == s_star(l) + s_star(l - 1)
                && closed_form_full(p, l)? == s_star_zero(l) + s_star_zero(l - 1),
        )
    })?;

    let difference = (0..pu).all(|l| {
        let want = if l % 2 == 0 { 1 } else { -1 };
        s_star_zero(l) as i128 - s_star(l) as i128 == want
    });

    let mut acc: i128 = 0;
    for i in 1..=(pu - 1) / 2 {
        acc += s_star(2 * i) as i128 - s_star(2 * i - 1) as i128;
    }
    let congruence = acc.rem_euclid(p as i128) == (p - 1) as i128;

    let closed_form_matches = full.agrees_with(&closed_form_table(p, false)?)
        && star.agrees_with(&closed_form_table(p, true)?);

    let enumerate_matches_dp = if p <= 19 {
        Some(
            census_enumerate(p, false)?.agrees_with(&full)
                && census_enumerate(p, true)?.agrees_with(&star),
        )
    } else {
        None
    };

    Ok(CensusIdentityReport {
        row_sums,
        full_uniform,
        star_uniform,
        recurrence,
        difference,
        congruence,
        closed_form_matches,
        enumerate_matches_dp,
    })
}

fn full_is_constant(row: &[u64]) -> bool {
    row.iter().all(|&c| c == row[0])
}

/// Counts of l-subsets of Z/NZ by sum mod N, by enumeration (N <= 22).
/// No uniformity closed form exists for composite N.
pub fn census_ring_enumerate(n: u64, l: usize) -> Result<Vec<u64>> {
    if n == 0 || n > 22 {
        return Err(Error::TooLarge(format!(
            "ring enumeration is capped at 1 <= N <= 22, got {n}"
        )));
    }
    if l as u64 > n {
        return Err(Error::RangeError(format!("l = {l} exceeds N = {n}")));
    }
    let mut counts = vec![0u64; n as usize];
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != l {
            continue;
        }
        let mut sum = 0u64;
        for e in 0..n {
            if mask >> e & 1 == 1 {
                sum += e;
            }
        }
        counts[(sum % n) as usize] += 1;
    }
    Ok(counts)
}

/// Full (cardinality, sum) grid over Z/NZ by dynamic programming, N <= 64.
pub fn census_ring_dp(n: u64) -> Result<Vec<Vec<u64>>> {
    if n == 0 || n > 64 {
        return Err(Error::TooLarge(format!(
            "ring census is capped at 1 <= N <= 64, got {n}"
        )));
    }
    let nu = n as usize;
    let mut counts = vec![vec![0u64; nu]; nu + 1];
    counts[0][0] = 1;
    for e in 0..n {
        for l in (0..=e as usize).rev() {
            for u in 0..nu {
                let c = counts[l][u];
                if c != 0 {
                    counts[l + 1][((u as u64 + e) % n) as usize] += c;
                }
            }
        }
    }
    Ok(counts)
}
