//! Multivariate polynomials over an exact field.
//!
//! Every variable carries cohomological degree 2, so a monomial of total
//! degree `k` sits in cohomological degree `2k`. Exponent vectors are dense
//! (one entry per variable); tori of interest here have small rank.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::error::LinalgError;
use super::field::Field;

/// Dense exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

fn total_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Graded-lex key: total degree first, then lex with `x1 > x2 > ...`.
fn grlex_key(m: &Monomial) -> (u32, &Monomial) {
    (total_degree(m), m)
}

/// All monomials of total degree `degree` in `rank` variables, in
/// decreasing lex order (`x1^k` first).
pub fn monomials(rank: usize, degree: u32) -> Vec<Monomial> {
    fn rec(rank: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == rank {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(rank, left - e, prefix, out);
            prefix.pop();
        }
    }
    if rank == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(rank, degree, &mut Vec::with_capacity(rank), &mut out);
    out
}

/// Number of monomials of total degree `degree` in `rank` variables.
pub fn monomial_count(rank: usize, degree: u32) -> usize {
    if rank == 0 {
        return usize::from(degree == 0);
    }
    // binomial(degree + rank - 1, rank - 1)
    let (n, k) = (degree as u128 + rank as u128 - 1, rank as u128 - 1);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F> {
    rank: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: F) -> Self {
        let mut p = Self::zero(rank);
        p.add_term(vec![0; rank], c);
        p
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, F::one())
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(rank: usize, i: usize) -> Self {
        assert!(i < rank, "variable index {i} out of range for rank {rank}");
        let mut m = vec![0; rank];
        m[i] = 1;
        Self::monomial(m, F::one())
    }

    pub fn monomial(exponents: Monomial, c: F) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let rank = coeffs.len();
        let mut p = Self::zero(rank);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; rank];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(rank);
        for (m, c) in terms {
            assert_eq!(m.len(), rank, "exponent vector length must equal rank");
            p.add_term(m, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Polynomial (not cohomological) degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| total_degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| total_degree(m));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Part of total polynomial degree `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| total_degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(LinalgError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| grlex_key(a.0).cmp(&grlex_key(b.0)))
    }

    /// Divide by a nonzero linear form using multivariate division under
    /// graded-lex order. Returns `(quotient, remainder)`; the remainder has
    /// no monomial divisible by the leading variable of `divisor`.
    pub fn div_rem_linear(&self, divisor: &Self) -> Result<(Self, Self), LinalgError> {
        self.check_rank(divisor)?;
        if divisor.is_zero() || divisor.degree() != Some(1) || !divisor.is_homogeneous() {
            return Err(LinalgError::InvalidDivisor);
        }
        let (lead_m, lead_c) = divisor.leading().expect("nonzero divisor");
        let lead_var = lead_m.iter().position(|&e| e == 1).expect("linear monomial");
        let lead_c = lead_c.clone();

        let mut rest = self.clone();
        let mut quotient = Self::zero(self.rank);
        let mut remainder = Self::zero(self.rank);
        while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if m[lead_var] > 0 {
                let mut qm = m.clone();
                qm[lead_var] -= 1;
                let t = Self::monomial(qm, c / lead_c.clone());
                rest = &rest - &(&t * divisor);
                quotient = &quotient + &t;
            } else {
                rest.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    /// `Some(q)` with `self = divisor * q` when the linear form divides.
    pub fn divide_by_linear(&self, divisor: &Self) -> Result<Option<Self>, LinalgError> {
        let (q, r) = self.div_rem_linear(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Pull back along the linear map `x_i = sum_j map[i][j] * s_j`; the
    /// result has rank `target_rank`.
    pub fn substitute_linear(&self, map: &[Vec<F>], target_rank: usize) -> Self {
        assert_eq!(map.len(), self.rank, "substitution needs one row per variable");
        let images: Vec<Self> = map.iter().map(|row| Self::linear(row)).collect();
        let mut out = Self::zero(target_rank);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target_rank, c.clone());
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.rank);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomial rank mismatch")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| grlex_key(b.0).cmp(&grlex_key(a.0)));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let mut coeff = c.to_string();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;
    type P = Polynomial<Q>;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn monomial_product_has_degree_four() {
        let p = &P::var(2, 0) * &P::var(2, 1);
        assert_eq!(p, P::monomial(vec![1, 1], q(1)));
        assert_eq!(p.degree(), Some(2)); // cohomological degree 4
    }

    #[test]
    fn product_with_zero_vanishes() {
        let p = &P::var(3, 0) + &P::constant(3, q(7));
        assert!((&p * &P::zero(3)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (P::var(2, 0), P::var(2, 1));
        let lhs = &(&a - &b) * &(&a + &b);
        let rhs = &(&a * &a) - &(&b * &b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let err = P::var(2, 0).checked_mul(&P::var(3, 0)).unwrap_err();
        assert_eq!(err, LinalgError::RankMismatch { left: 2, right: 3 });
    }

    #[test]
    fn divides_by_x1() {
        let (x1, x2) = (P::var(2, 0), P::var(2, 1));
        let dividend = &(&x1 * &x1) - &(&x1 * &x2);
        let q = dividend.divide_by_linear(&x1).unwrap();
        assert_eq!(q, Some(&x1 - &x2));
        assert_eq!(x2.divide_by_linear(&x1).unwrap(), None);
    }

    #[test]
    fn divides_by_difference() {
        let (x1, x2) = (P::var(2, 0), P::var(2, 1));
        let dividend = &(&x1 * &x1) - &(&x2 * &x2);
        let q = dividend.divide_by_linear(&(&x1 - &x2)).unwrap();
        assert_eq!(q, Some(&x1 + &x2));
    }

    #[test]
    fn zero_divisor_rejected() {
        let err = P::var(2, 0).div_rem_linear(&P::zero(2)).unwrap_err();
        assert_eq!(err, LinalgError::InvalidDivisor);
        let err = P::var(2, 0).div_rem_linear(&P::one(2)).unwrap_err();
        assert_eq!(err, LinalgError::InvalidDivisor);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
        for rank in 1..5 {
            for d in 0..6 {
                assert_eq!(monomials(rank, d).len(), monomial_count(rank, d));
            }
        }
        assert_eq!(monomial_count(0, 0), 1);
        assert_eq!(monomial_count(0, 3), 0);
    }

    #[test]
    fn substitution_along_inclusion() {
        // x1 -> s, x2 -> 2s
        let map = vec![vec![q(1)], vec![q(2)]];
        let p = &P::var(2, 0) * &P::var(2, 1);
        assert_eq!(p.substitute_linear(&map, 1), P::monomial(vec![2], q(2)));
    }

    #[test]
    fn display_is_readable() {
        let (x1, x2) = (P::var(2, 0), P::var(2, 1));
        let p = &(&x1 * &x1) - &x2.scale(&q(3));
        assert_eq!(p.to_string(), "x1^2 - 3*x2");
        assert_eq!(P::zero(2).to_string(), "0");
    }
}
