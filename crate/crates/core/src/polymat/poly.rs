use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use rug::integer::Order;
use rug::Integer;

use crate::path_algebra::{parse_rational, rat, Rational};

/// Univariate polynomial over the rationals, stored as integer numerators
/// over one positive denominator sharing no factor with all of them, so
/// equal polynomials have equal representations. The zero polynomial has
/// no coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    /// Ascending degree, no trailing zeros.
    num: Vec<Integer>,
    den: Integer,
}

fn to_fast(x: &BigInt) -> Integer {
    let (sign, bytes) = x.to_bytes_le();
    let m = Integer::from_digits(&bytes, Order::Lsf);
    if sign == Sign::Minus {
        -m
    } else {
        m
    }
}

fn from_fast(x: &Integer) -> BigInt {
    let sign = if *x < 0 { Sign::Minus } else { Sign::Plus };
    BigInt::from_bytes_le(sign, &x.to_digits::<u8>(Order::Lsf))
}

impl Default for Poly {
    fn default() -> Self {
        Poly { num: Vec::new(), den: Integer::from(1) }
    }
}

impl Poly {
    fn normalized(mut num: Vec<Integer>, mut den: Integer) -> Self {
        while num.last().is_some_and(|c| *c == 0) {
            num.pop();
        }
        if num.is_empty() {
            return Poly::default();
        }
        // the smallest coefficients first keep the gcds cheap
        let mut order: Vec<&Integer> = num.iter().filter(|c| **c != 0).collect();
        order.sort_by_key(|c| c.significant_bits());
        let mut g = den.clone();
        for c in order {
            if g == 1 {
                break;
            }
            g.gcd_mut(c);
        }
        if g != 1 {
            for c in &mut num {
                c.div_exact_mut(&g);
            }
            den.div_exact_mut(&g);
        }
        Poly { num, den }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn x() -> Self {
        Poly::monomial(rat(1), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut den = Integer::from(1);
        for c in &coeffs {
            den.lcm_mut(&to_fast(c.denom()));
        }
        let num = coeffs.iter().map(|c| Integer::from(&den / to_fast(c.denom())) * to_fast(c.numer())).collect();
        Poly::normalized(num, den)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Poly::normalized(v.iter().map(|&c| Integer::from(c)).collect(), Integer::from(1))
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|k| self.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        match self.num.get(k) {
            Some(c) => Rational::new(from_fast(c), from_fast(&self.den)),
            None => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// The polynomial with its constant term removed.
    pub fn without_constant_term(&self) -> Poly {
        let mut num = self.num.clone();
        if let Some(c) = num.first_mut() {
            *c = Integer::new();
        }
        Poly::normalized(num, self.den.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn leading(&self) -> Option<Rational> {
        self.degree().map(|k| self.coeff(k))
    }

    /// Size of the largest numerator or of the denominator, in bits.
    pub fn bit_size(&self) -> usize {
        self.num.iter().chain([&self.den]).map(|c| c.significant_bits() as usize).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() || self.is_zero() {
            return Poly::zero();
        }
        let n = to_fast(c.numer());
        let d = to_fast(c.denom()).abs();
        Poly::normalized(self.num.iter().map(|v| Integer::from(v * &n)).collect(), d * &self.den)
    }

    /// Integer pseudo-division: `self = q/den * d + r/den`, or `None` when
    /// the quotient is zero.
    fn pseudo_div(&self, d: &Poly) -> Option<(Vec<Integer>, Vec<Integer>, Integer)> {
        let dd = d.degree().expect("division by the zero polynomial");
        let sd = self.degree().filter(|&sd| sd >= dd)?;
        let lead = &d.num[dd];
        let mut r = self.num.clone();
        let mut q = vec![Integer::new(); sd - dd + 1];
        let mut scale = Integer::from(1);
        for k in (0..=sd - dd).rev() {
            let t = r[k + dd].clone();
            if t == 0 {
                continue;
            }
            if *lead != 1 {
                for c in q.iter_mut().chain(r.iter_mut()) {
                    *c *= lead;
                }
                scale *= lead;
            }
            q[k] += &t;
            for (i, bc) in d.num.iter().enumerate() {
                r[k + i] -= &t * bc;
            }
        }
        r.truncate(dd);
        // self = a / den_a, d = b / den_b, so self = (q den_b / (scale den_a)) d + r / (scale den_a)
        if scale < 0 {
            scale = -scale;
            q.iter_mut().chain(r.iter_mut()).for_each(|c| *c = -std::mem::take(c));
        }
        q.iter_mut().for_each(|c| *c *= &d.den);
        Some((q, r, scale * &self.den))
    }

    /// Quotient and remainder with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        match self.pseudo_div(d) {
            Some((q, r, den)) => (Poly::normalized(q, den.clone()), Poly::normalized(r, den)),
            None => (Poly::zero(), self.clone()),
        }
    }

    /// The quotient of `div_rem`, with its constant term dropped if asked.
    pub fn quotient(&self, d: &Poly, drop_constant: bool) -> Poly {
        match self.pseudo_div(d) {
            Some((mut q, _, den)) => {
                if drop_constant {
                    q[0] = Integer::new();
                }
                Poly::normalized(q, den)
            }
            None => Poly::zero(),
        }
    }

    /// `self - a * b` with a single normalization.
    pub fn sub_mul(&self, a: &Poly, b: &Poly) -> Poly {
        let Some((num, den)) = raw_mul(a, b) else {
            return self.clone();
        };
        combine_raw(&self.num, &self.den, &num, &den, true)
    }

    /// `self + a * b` with a single normalization.
    pub fn add_mul(&self, a: &Poly, b: &Poly) -> Poly {
        let Some((num, den)) = raw_mul(a, b) else {
            return self.clone();
        };
        combine_raw(&self.num, &self.den, &num, &den, false)
    }

    /// `sum a_i * b_i` with a single normalization.
    pub fn sum_of_products<'a>(pairs: impl IntoIterator<Item = (&'a Poly, &'a Poly)>) -> Poly {
        let mut num: Vec<Integer> = Vec::new();
        let mut den = Integer::from(1);
        for (a, b) in pairs {
            let Some((mut pn, pd)) = raw_mul(a, b) else {
                continue;
            };
            if pd != den {
                let g = Integer::from(den.gcd_ref(&pd));
                let to_acc = Integer::from(pd.div_exact_ref(&g));
                let to_term = Integer::from(den.div_exact_ref(&g));
                num.iter_mut().for_each(|c| *c *= &to_acc);
                pn.iter_mut().for_each(|c| *c *= &to_term);
                den *= to_acc;
            }
            if pn.len() > num.len() {
                num.resize(pn.len(), Integer::new());
            }
            for (c, t) in num.iter_mut().zip(pn) {
                *c += t;
            }
        }
        Poly::normalized(num, den)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; zero only when both inputs are.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => a.scale(&(rat(1) / l)),
            None => a,
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        combine_raw(&self.num, &self.den, &o.num, &o.den, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        combine_raw(&self.num, &self.den, &o.num, &o.den, true)
    }
}

fn combine_raw(a: &[Integer], a_den: &Integer, b: &[Integer], b_den: &Integer, subtract: bool) -> Poly {
    let n = a.len().max(b.len());
    let scaled = |v: &[Integer], m: Option<&Integer>, k: usize| match (v.get(k), m) {
        (Some(c), Some(m)) => Integer::from(c * m),
        (Some(c), None) => c.clone(),
        (None, _) => Integer::new(),
    };
    let (ma, mb, den) = if a_den == b_den {
        (None, None, a_den.clone())
    } else {
        let g = Integer::from(a_den.gcd_ref(b_den));
        let ma = Integer::from(b_den.div_exact_ref(&g));
        let mb = Integer::from(a_den.div_exact_ref(&g));
        let den = Integer::from(a_den * &ma);
        (Some(ma), Some(mb), den)
    };
    let num = (0..n)
        .map(|k| {
            let (x, y) = (scaled(a, ma.as_ref(), k), scaled(b, mb.as_ref(), k));
            if subtract {
                x - y
            } else {
                x + y
            }
        })
        .collect();
    Poly::normalized(num, den)
}

/// Unnormalized product, `None` when it is zero.
fn raw_mul(a: &Poly, b: &Poly) -> Option<(Vec<Integer>, Integer)> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let den = Integer::from(&a.den * &b.den);
    let bits = |v: &[Integer]| v.iter().map(|c| c.significant_bits()).max().unwrap_or(0);
    let (ba, bb) = (bits(&a.num), bits(&b.num));
    let short = a.num.len().min(b.num.len());
    if short < 4 || ba + bb < 512 {
        let mut v = vec![Integer::new(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        return Some((v, den));
    }
    // Kronecker substitution: evaluate at 2^k, multiply once, read the
    // coefficients back off as signed k-bit digits
    let k = ba + bb + usize::BITS - (short as u32).leading_zeros() + 2;
    let pack = |v: &[Integer]| {
        let mut acc = Integer::new();
        for c in v.iter().rev() {
            acc <<= k;
            acc += c;
        }
        acc
    };
    let mut x = pack(&a.num) * pack(&b.num);
    let len = a.num.len() + b.num.len() - 1;
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        let mut digit = Integer::from(x.keep_bits_ref(k));
        if digit.get_bit(k - 1) {
            digit -= Integer::from(1) << k;
        }
        x -= &digit;
        x >>= k;
        v.push(digit);
    }
    debug_assert!(x == 0, "Kronecker digits out of range");
    Some((v, den))
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        match raw_mul(self, o) {
            Some((num, den)) => Poly::normalized(num, den),
            None => Poly::zero(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { num: self.num.iter().map(|c| Integer::from(-c)).collect(), den: self.den.clone() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Sparse `c*x^k` notation, highest degree first: `6*x^3 - 4*x^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str(if first { "-" } else { " - " })?;
            } else if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{}", c.abs())?;
            match k {
                0 => {}
                1 => f.write_str("*x")?,
                _ => write!(f, "*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Reads sums of `c*x^k`, `c*x`, `x^k`, `x` and constant terms.
pub fn parse_poly(text: &str) -> Result<Poly, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut out = Poly::zero();
    let mut negative = false;
    let mut current = String::new();
    let mut terms = Vec::new();
    for ch in text.chars() {
        if ch == '+' || ch == '-' || ch == '−' {
            if !current.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = false;
            }
            current.clear();
            if ch != '+' {
                negative = !negative;
            }
        } else {
            current.push(ch);
        }
    }
    if current.trim().is_empty() {
        return Err(format!("dangling sign in `{text}`"));
    }
    terms.push((negative, current));
    for (negative, term) in terms {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let (c, power) = match term.split_once('*') {
            Some((c, p)) => (parse_rational(c).ok_or_else(|| format!("bad coefficient `{c}`"))?, Some(p.to_string())),
            None if term.starts_with('x') => (rat(1), Some(term.clone())),
            None => (parse_rational(&term).ok_or_else(|| format!("bad term `{term}`"))?, None),
        };
        let k = match power.as_deref() {
            None => 0,
            Some("x") => 1,
            Some(p) => p
                .strip_prefix("x^")
                .and_then(|e| e.parse::<usize>().ok())
                .ok_or_else(|| format!("bad power `{p}`"))?,
        };
        let c = if negative { -c } else { c };
        out = &out + &Poly::monomial(c, k);
    }
    Ok(out)
}
