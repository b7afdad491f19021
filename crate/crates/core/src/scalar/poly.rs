//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept sorted in descending graded-lex order (total degree first,
//! then lexicographic on the exponent vector in declared variable order), so
//! the first term is always the leading term and structural equality is
//! polynomial equality.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for every coefficient in the engine.
pub type Rational = BigRational;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize, power: u16) -> Self {
        let mut e = vec![0; nvars];
        e[v] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    fn with_exponent(&self, v: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.0[v] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Poly { nvars, terms: vec![(Monomial::var(nvars, v, 1), Rational::one())] }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.0.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v] > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            out.push((m.clone(), if negate_other { -c } else { c.clone() }));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { nvars: self.nvars, terms }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.0[v] > 0).map(|(m, c)| {
                let e = m.0[v];
                (m.with_exponent(v, e - 1), c * Rational::from_integer(BigInt::from(e)))
            }),
        )
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.lead().cloned()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.lead().cloned() {
            let m = rm.checked_div(&lm)?;
            let c = rc / &lc;
            rem = rem.sub(&d.mul_term(&m, &c));
            quot.push((m, c));
        }
        Some(Poly::from_terms(self.nvars, quot))
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`;
    /// entry `k` multiplies `v^k` and no longer mentions `v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.0[v] as usize].push((m.with_exponent(v, 0), c.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_terms(self.nvars, t)).collect()
    }

    fn lead_coeff_in(&self, v: usize) -> Poly {
        let d = self.degree_in(v);
        Poly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.0[v] == d)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone())),
        )
    }

    /// Pseudo-remainder of `self` by `b` with respect to variable `v`.
    pub fn pseudo_rem(&self, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v);
        let lb = b.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lead_coeff_in(v);
            let shift = Poly::monomial(Monomial::var(self.nvars, v, dr - db), Rational::one());
            r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
        }
        r
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Greatest common divisor, normalized to be monic; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        gcd_nonzero(self, other).monic()
    }

    pub fn to_expr(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(rational_literal(&mag));
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => {
                        let mut s = names[v].clone();
                        let _ = write!(s, "^{e}");
                        factors.push(s);
                    }
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

pub(crate) fn rational_literal(q: &Rational) -> String {
    if q.is_integer() {
        alloc::format!("{}", q.numer())
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

fn gcd_nonzero(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars;
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        return monomial_gcd(a, b);
    }
    let (sa, sb) = (
        a.scale(&Rational::from_integer(a.denominator_lcm())),
        b.scale(&Rational::from_integer(b.denominator_lcm())),
    );
    match heuristic_gcd(&sa, &sb) {
        Some(g) => g.monic(),
        None => prs_gcd(a, b),
    }
}

/// Recursive primitive polynomial remainder sequence gcd.
fn prs_gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars;
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let v = match (0..n).find(|&v| a.depends_on(v) || b.depends_on(v)) {
        Some(v) => v,
        None => return Poly::one(n),
    };
    if !a.depends_on(v) {
        return gcd_nonzero(a, &content_in(b, v));
    }
    if !b.depends_on(v) {
        return gcd_nonzero(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_nonzero(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        core::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = p.pseudo_rem(&q, v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(v) == 0 {
            break Poly::one(n);
        }
        p = q;
        q = primitive_in(&r, v);
    };
    c.mul(&primitive_in(&g, v)).monic()
}

/// Gcd when one argument is a single term: the common power of each variable.
fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars;
    let mut exps = vec![u16::MAX; n];
    for (m, _) in a.terms.iter().chain(&b.terms) {
        for (e, &k) in exps.iter_mut().zip(&m.0) {
            *e = (*e).min(k);
        }
    }
    Poly::monomial(Monomial(exps), Rational::one())
}

/// Heuristic gcd over ℤ: evaluate the main variable at a large integer,
/// recurse, then read the candidate back from its balanced base-`ξ` digits.
/// Candidates are confirmed by trial division, so a `None` only means the
/// heuristic gave up.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let n = a.nvars;
    let (ca, cb) = (integer_content(a), integer_content(b));
    let c = ca.gcd(&cb);
    let Some(v) = (0..n).rev().find(|&v| a.depends_on(v) || b.depends_on(v)) else {
        return Some(Poly::constant(n, Rational::from_integer(c)));
    };
    let x = a.scale(&Rational::from_integer(ca).recip());
    let y = b.scale(&Rational::from_integer(cb).recip());
    let bound = max_abs_coeff(&x).min(max_abs_coeff(&y));
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..6 {
        if xi.bits() > 4096 {
            return None;
        }
        let (xe, ye) = (substitute(&x, v, &xi), substitute(&y, v, &xi));
        if !xe.is_zero() && !ye.is_zero() {
            let h = heuristic_gcd(&xe, &ye)?;
            let g = from_digits(h, v, &xi);
            if !g.is_zero() {
                let g = g.scale(&Rational::from_integer(integer_content(&g)).recip());
                if x.div_exact(&g).is_some() && y.div_exact(&g).is_some() {
                    return Some(g.scale(&Rational::from_integer(c)));
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

/// Positive gcd of the coefficients of an integer polynomial.
fn integer_content(a: &Poly) -> BigInt {
    let g = a.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
    if g.is_zero() { BigInt::one() } else { g }
}

fn max_abs_coeff(a: &Poly) -> BigInt {
    a.terms.iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn substitute(a: &Poly, v: usize, value: &BigInt) -> Poly {
    let value = Rational::from_integer(value.clone());
    Poly::from_terms(
        a.nvars,
        a.terms.iter().map(|(m, c)| (m.with_exponent(v, 0), c * num_traits::pow(value.clone(), m.0[v] as usize))),
    )
}

fn from_digits(mut h: Poly, v: usize, xi: &BigInt) -> Poly {
    let half = xi / 2u32;
    let mut out = Vec::new();
    let mut k: u16 = 0;
    while !h.is_zero() {
        let digit = Poly::from_terms(
            h.nvars,
            h.terms.iter().map(|(m, c)| {
                let mut r = c.numer().mod_floor(xi);
                if r > half {
                    r -= xi;
                }
                (m.clone(), Rational::from_integer(r))
            }),
        );
        for (m, c) in &digit.terms {
            out.push((m.with_exponent(v, k), c.clone()));
        }
        h = h.sub(&digit).scale(&Rational::from_integer(xi.clone()).recip());
        k += 1;
    }
    Poly::from_terms(h.nvars, out)
}

fn content_in(a: &Poly, v: usize) -> Poly {
    let mut acc: Option<Poly> = None;
    for coeff in a.coefficients_in(v).into_iter().filter(|c| !c.is_zero()) {
        if coeff.is_constant() {
            return Poly::one(a.nvars);
        }
        acc = Some(match acc {
            None => coeff.monic(),
            Some(g) => gcd_nonzero(&g, &coeff),
        });
        if acc.as_ref().is_some_and(|g| g.is_constant()) {
            return Poly::one(a.nvars);
        }
    }
    acc.unwrap_or_else(|| Poly::one(a.nvars)).monic()
}

fn primitive_in(a: &Poly, v: usize) -> Poly {
    let c = content_in(a, v);
    a.div_exact(&c).expect("content divides").monic()
}

/// Single polynomial relation `r = 0` used to reduce representatives in the
/// quotient ring. Reduction eliminates powers of a designated variable whose
/// leading coefficient in `r` is a nonzero constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    poly: Poly,
    var: usize,
    degree: u16,
    /// `-(r - c·var^degree)/c`, i.e. the value substituted for `var^degree`.
    replacement: Poly,
}

impl Relation {
    /// Picks the last variable of maximal degree whose leading coefficient is
    /// a constant; `None` if the polynomial is constant or no such variable exists.
    pub fn new(poly: Poly) -> Option<Relation> {
        if poly.is_constant() {
            return None;
        }
        let n = poly.nvars();
        let mut best: Option<(usize, u16)> = None;
        for v in 0..n {
            let d = poly.degree_in(v);
            if d == 0 || !poly.lead_coeff_in(v).is_constant() {
                continue;
            }
            if best.is_none_or(|(_, bd)| d >= bd) {
                best = Some((v, d));
            }
        }
        let (var, degree) = best?;
        let lc = poly.lead_coeff_in(var).constant_value()?;
        let lead = Poly::monomial(Monomial::var(n, var, degree), lc.clone());
        let replacement = poly.sub(&lead).scale(&(-lc.recip()));
        Some(Relation { poly, var, degree, replacement })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn variable(&self) -> usize {
        self.var
    }

    /// Normal form modulo the relation: degree in the designated variable
    /// strictly below the relation's degree.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut p = p.clone();
        loop {
            let dp = p.degree_in(self.var);
            if dp < self.degree {
                return p;
            }
            let mut keep = Vec::new();
            let mut top = Vec::new();
            for (m, c) in p.terms {
                if m.0[self.var] == dp {
                    top.push((m.with_exponent(self.var, dp - self.degree), c));
                } else {
                    keep.push((m, c));
                }
            }
            let keep = Poly { nvars: p.nvars, terms: keep };
            let top = Poly::from_terms(p.nvars, top);
            p = keep.add(&top.mul(&self.replacement));
        }
    }
}
