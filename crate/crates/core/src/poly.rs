//! Exact Laurent polynomials over the integers and subtraction-free rational
//! functions. Tropical evaluation uses the min convention.
//!
//! Variables live in a split space: `nx` cluster variables `x1..` followed by
//! `ny` coefficient variables `y1..`. Exponent vectors have length `nx + ny`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};

/// Exponent vector ordered by total degree, then reverse-lexicographically, so
/// that `1 + y2 + y1*y2` and `1 + y1 + y2 + y1*y2` print in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer Laurent polynomial in `x1..x_nx, y1..y_ny`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nx: usize,
    ny: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nx: usize, ny: usize) -> Self {
        LaurentPoly {
            nx,
            ny,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nx: usize, ny: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nx, ny, vec![0; nx + ny], c)
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::constant(nx, ny, 1)
    }

    /// `c * prod v_i^{exps_i}`. Panics if `exps` has the wrong length.
    pub fn monomial(nx: usize, ny: usize, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nx + ny, "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        LaurentPoly { nx, ny, terms }
    }

    /// The cluster variable `x_{i+1}` (0-based index).
    pub fn x(nx: usize, ny: usize, i: usize) -> Self {
        let mut e = vec![0; nx + ny];
        e[i] = 1;
        Self::monomial(nx, ny, e, 1)
    }

    /// The coefficient variable `y_{j+1}` (0-based index).
    pub fn y(nx: usize, ny: usize, j: usize) -> Self {
        let mut e = vec![0; nx + ny];
        e[nx + j] = 1;
        Self::monomial(nx, ny, e, 1)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn arity(&self) -> usize {
        self.nx + self.ny
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_constant() && c.is_one())
    }

    /// Terms in canonical (graded) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.arity()])
    }

    /// The single exponent vector if this is a monomial with coefficient 1.
    pub fn as_unit_monomial(&self) -> Option<&[i32]> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        c.is_one().then_some(m.0.as_slice())
    }

    pub fn is_subtraction_free(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nx != other.nx || self.ny != other.ny {
            return Err(Error::ArityMismatch(self.nx, self.ny, other.nx, other.ny));
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nx, self.ny);
        }
        LaurentPoly {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: HashMap<Vec<i32>, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<i32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial(e), c))
            .collect();
        Ok(LaurentPoly {
            nx: self.nx,
            ny: self.ny,
            terms,
        })
    }

    /// Multiply by the monomial `prod v_i^{shift_i}`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.arity());
        LaurentPoly {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.0.iter().zip(shift).map(|(a, b)| a + b).collect();
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nx, self.ny);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same space");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same space");
            }
        }
        result
    }

    /// Reinterpret in a larger variable space: x-variables keep their index,
    /// y-variables keep their index.
    pub fn embed(&self, nx: usize, ny: usize) -> Result<Self> {
        if nx < self.nx || ny < self.ny {
            return Err(Error::ArityMismatch(self.nx, self.ny, nx, ny));
        }
        let mut out = Self::zero(nx, ny);
        for (m, c) in &self.terms {
            let mut e = vec![0; nx + ny];
            e[..self.nx].copy_from_slice(&m.0[..self.nx]);
            e[nx..nx + self.ny].copy_from_slice(&m.0[self.nx..]);
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Set every y-variable to 1, landing in the space `(nx, 0)`.
    pub fn specialize_y_to_one(&self) -> Self {
        let mut out = Self::zero(self.nx, 0);
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.0[..self.nx].to_vec()), c.clone());
        }
        out
    }

    /// Tropical (min, +) evaluation at `u^{c_1}, ..., u^{c_n}`: returns the
    /// exponent `min_e c . e` over the support.
    pub fn trop_eval(&self, c: &[i64]) -> Result<i64> {
        if c.len() != self.arity() {
            return Err(Error::ArityMismatch(self.arity(), 0, c.len(), 0));
        }
        if !self.is_subtraction_free() {
            return Err(Error::NotSubtractionFree);
        }
        Ok(self
            .terms
            .keys()
            .map(|m| m.0.iter().zip(c).map(|(&e, &ci)| e as i64 * ci).sum::<i64>())
            .min()
            .expect("nonzero"))
    }

    /// Substitute `args[i]` for variable `i`. All args must share one variable
    /// space. The result is left unreduced over a common denominator.
    pub fn substitute(&self, args: &[PosRational]) -> Result<PosRational> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch(self.arity(), 0, args.len(), 0));
        }
        let (nx, ny) = match args.first() {
            Some(a) => (a.num.nx, a.num.ny),
            None => (0, 0),
        };
        for a in args {
            a.num.check_same(&LaurentPoly::zero(nx, ny))?;
        }
        if self.is_zero() {
            return Ok(PosRational {
                num: LaurentPoly::zero(nx, ny),
                den: LaurentPoly::one(nx, ny),
            });
        }
        let n = self.arity();
        let mut max_pos = vec![0u32; n];
        let mut max_neg = vec![0u32; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    max_pos[i] = max_pos[i].max(e as u32);
                } else {
                    max_neg[i] = max_neg[i].max((-e) as u32);
                }
            }
        }
        let mut cache = PowerCache::default();
        let mut den = LaurentPoly::one(nx, ny);
        for i in 0..n {
            if max_pos[i] > 0 {
                den = den.mul(cache.get(&args[i].den, (i, false), max_pos[i]))?;
            }
            if max_neg[i] > 0 {
                den = den.mul(cache.get(&args[i].num, (i, true), max_neg[i]))?;
            }
        }
        let mut num = LaurentPoly::zero(nx, ny);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(nx, ny, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let (pe, qe) = if e >= 0 {
                    (e as u32 + max_neg[i], max_pos[i] - e as u32)
                } else {
                    (max_neg[i] - (-e) as u32, (-e) as u32 + max_pos[i])
                };
                if pe > 0 {
                    t = t.mul(cache.get(&args[i].num, (i, true), pe))?;
                }
                if qe > 0 {
                    t = t.mul(cache.get(&args[i].den, (i, false), qe))?;
                }
            }
            num = num.add(&t)?;
        }
        PosRational::new(num, den)
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` when `d` does
    /// not divide `self` in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        self.check_same(d)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let a_shift = min_shift(self);
        let d_shift = min_shift(d);
        let mut rem = self.shift(&a_shift);
        let dp = d.shift(&d_shift);
        let (d_lead, d_lc) = lex_leading(&dp);
        let mut quot = Self::zero(self.nx, self.ny);
        while !rem.is_zero() {
            let (r_lead, r_lc) = lex_leading(&rem);
            if r_lead.iter().zip(&d_lead).any(|(r, d)| r < d) {
                return Ok(None);
            }
            let (q, r) = num_integer::Integer::div_rem(&r_lc, &d_lc);
            if !r.is_zero() {
                return Ok(None);
            }
            let e: Vec<i32> = r_lead.iter().zip(&d_lead).map(|(a, b)| a - b).collect();
            let t = Self::monomial(self.nx, self.ny, e, q);
            rem = rem.sub(&t.mul(&dp)?)?;
            quot = quot.add(&t)?;
        }
        // self * x^a = quot * d * x^dshift  =>  self = quot * d * x^(dshift - a)
        let back: Vec<i32> = d_shift.iter().zip(&a_shift).map(|(b, a)| b - a).collect();
        Ok(Some(quot.shift(&back)))
    }

    /// Parse the canonical text form, e.g. `1 + y2 + y1*y2` or `x1^-1*x2 - 3`.
    pub fn parse(s: &str, nx: usize, ny: usize) -> Result<Self> {
        let mut out = Self::zero(nx, ny);
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(parse_err(0, "empty polynomial"));
        }
        if s == "0" {
            return Ok(out);
        }
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'+') => (1, &piece[1..]),
                Some(b'-') => (-1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(parse_err(0, format!("dangling sign in `{s}`")));
            }
            let mut coeff = BigInt::from(sign);
            let mut e = vec![0i32; nx + ny];
            for factor in body.split('*') {
                if let Ok(k) = factor.parse::<BigInt>() {
                    coeff *= k;
                    continue;
                }
                let (var, exp) = match factor.split_once('^') {
                    Some((v, x)) => (
                        v,
                        x.parse::<i32>()
                            .map_err(|_| parse_err(0, format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let kind = var.chars().next().unwrap_or(' ');
                let idx: usize = var[1..]
                    .parse()
                    .map_err(|_| parse_err(0, format!("bad variable `{var}`")))?;
                let slot = match kind {
                    'x' if (1..=nx).contains(&idx) => idx - 1,
                    'y' if (1..=ny).contains(&idx) => nx + idx - 1,
                    _ => return Err(parse_err(0, format!("unknown variable `{var}`"))),
                };
                e[slot] += exp;
            }
            out.add_term(Monomial(e), coeff);
        }
        Ok(out)
    }
}

/// Shift that makes every variable's minimum exponent zero, so the shifted
/// polynomial is an ordinary polynomial with no monomial factor.
fn min_shift(p: &LaurentPoly) -> Vec<i32> {
    let mut s = vec![i32::MIN; p.arity()];
    for m in p.terms.keys() {
        for (i, &e) in m.0.iter().enumerate() {
            s[i] = s[i].max(-e);
        }
    }
    s
}

fn lex_leading(p: &LaurentPoly) -> (Vec<i32>, BigInt) {
    let (m, c) = p
        .terms
        .iter()
        .max_by(|a, b| a.0 .0.cmp(&b.0 .0))
        .expect("nonzero");
    (m.0.clone(), c.clone())
}

#[derive(Default)]
struct PowerCache {
    map: HashMap<((usize, bool), u32), LaurentPoly>,
}

impl PowerCache {
    fn get(&mut self, base: &LaurentPoly, key: (usize, bool), k: u32) -> &LaurentPoly {
        self.map
            .entry((key, k))
            .or_insert_with(|| base.pow(k))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, nx: usize, e: &[i32]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if i < nx {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "y{}", i - nx + 1)?;
        }
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_constant() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, self.nx, &m.0)?;
            }
        }
        Ok(())
    }
}

/// Quotient of two Laurent polynomials, compared by cross-multiplication and
/// never reduced automatically.
#[derive(Clone, Debug)]
pub struct PosRational {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl PosRational {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        num.check_same(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(PosRational { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.nx, p.ny);
        PosRational { num: p, den }
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nx, ny))
    }

    pub fn nx(&self) -> usize {
        self.num.nx
    }

    pub fn ny(&self) -> usize {
        self.num.ny
    }

    pub fn is_subtraction_free(&self) -> bool {
        self.num.is_subtraction_free() && self.den.is_subtraction_free()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.num)?, self.den.mul(&o.den)?)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num)?, self.den.clone());
        }
        let num = self.num.mul(&o.den)?.add(&o.num.mul(&self.den)?)?;
        Self::new(num, self.den.mul(&o.den)?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        Self::new(base.num.pow(k), base.den.pow(k))
    }

    /// Cross-multiplication equality.
    pub fn rf_eq(&self, o: &Self) -> Result<bool> {
        Ok(self.num.mul(&o.den)? == o.num.mul(&self.den)?)
    }

    /// The Laurent polynomial `num / den` when `den` divides exactly.
    pub fn to_laurent(&self) -> Result<Option<LaurentPoly>> {
        self.num.div_exact(&self.den)
    }

    /// Replace by the exact quotient if it exists, leaving the value unchanged.
    pub fn reduced(&self) -> Result<Self> {
        Ok(match self.to_laurent()? {
            Some(p) => Self::from_poly(p),
            None => self.clone(),
        })
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Coefficient-wise sum.
pub fn lp_add(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.add(q)
}

pub fn lp_mul(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.mul(q)
}

pub fn lp_substitute(p: &LaurentPoly, args: &[PosRational]) -> Result<PosRational> {
    p.substitute(args)
}

pub fn trop_eval(p: &LaurentPoly, c: &[i64]) -> Result<i64> {
    p.trop_eval(c)
}

pub fn rf_eq(a: &PosRational, b: &PosRational) -> Result<bool> {
    a.rf_eq(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 0, 2).unwrap()
    }

    #[test]
    fn add_examples() {
        let p = y("1 + y2");
        assert_eq!(p.add(&LaurentPoly::zero(0, 2)).unwrap(), p);
        assert_eq!(p.add(&y("y1*y2")).unwrap().to_string(), "1 + y2 + y1*y2");
        assert!(p.add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn mul_examples() {
        let p = y("3 + y1^-2*y2");
        assert_eq!(p.mul(&LaurentPoly::one(0, 2)).unwrap(), p);
        assert!(y("y1^-1").mul(&y("y1")).unwrap().is_one());
        assert_eq!(
            y("1 + y1").mul(&y("1 + y2")).unwrap().to_string(),
            "1 + y1 + y2 + y1*y2"
        );
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = LaurentPoly::one(0, 2);
        let b = LaurentPoly::one(2, 0);
        assert!(matches!(a.add(&b), Err(Error::ArityMismatch(..))));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn substitute_examples() {
        let f = y("1 + y1 + y1*y2");
        let ids: Vec<_> = (0..2)
            .map(|j| PosRational::from_poly(LaurentPoly::y(0, 2, j)))
            .collect();
        let r = f.substitute(&ids).unwrap();
        assert!(r.rf_eq(&PosRational::from_poly(f.clone())).unwrap());

        let y1 = y("y1");
        let args = vec![
            PosRational::from_poly(y1.clone()).inv().unwrap(),
            PosRational::from_poly(y("y2").mul(&y("1 + y1").pow(2)).unwrap()),
        ];
        let got = f.substitute(&args).unwrap();
        let num = y("y1 + 1").add(&y("y2").mul(&y("1+y1").pow(2)).unwrap()).unwrap();
        let want = PosRational::new(num, y1).unwrap();
        assert!(got.rf_eq(&want).unwrap());

        let one = LaurentPoly::one(0, 2).substitute(&args).unwrap();
        assert!(one.rf_eq(&PosRational::one(0, 2)).unwrap());
    }

    #[test]
    fn trop_examples() {
        assert_eq!(y("1 + y2 + y1*y2").trop_eval(&[-1, 2]).unwrap(), 0);
        assert_eq!(y("1 + y1 + y1*y2").trop_eval(&[-1, 0]).unwrap(), -1);
        assert_eq!(LaurentPoly::one(0, 2).trop_eval(&[5, -7]).unwrap(), 0);
        assert_eq!(
            LaurentPoly::zero(0, 2).trop_eval(&[0, 0]),
            Err(Error::NotSubtractionFree)
        );
        assert_eq!(y("1 - y1").trop_eval(&[0, 0]), Err(Error::NotSubtractionFree));
    }

    #[test]
    fn rf_eq_examples() {
        let p = PosRational::new(y("1 + y1"), y("y2")).unwrap();
        assert!(p.rf_eq(&p).unwrap());
        let a = PosRational::from_poly(y("1 + y1"));
        let b = PosRational::new(y("1 + y1").pow(2), y("1 + y1")).unwrap();
        assert!(a.rf_eq(&b).unwrap());
        let c = PosRational::from_poly(y("1 + 2*y1"));
        assert!(!a.rf_eq(&c).unwrap());
    }

    #[test]
    fn display_and_parse_agree() {
        for s in ["0", "1", "1 + y2 + y1*y2", "-3*y1^-2 + y2", "y1^2*y2^-1 - 7"] {
            let p = y(s);
            assert_eq!(y(&p.to_string()), p, "{s}");
        }
        let q = LaurentPoly::parse("x1^-1*x2 + x1*y1", 2, 1).unwrap();
        assert_eq!(q.to_string(), "x1^-1*x2 + x1*y1");
        assert!(LaurentPoly::parse("z1", 1, 1).is_err());
        assert!(LaurentPoly::parse("y3", 0, 2).is_err());
    }

    #[test]
    fn exact_division() {
        let a = y("1 + y1").pow(3).mul(&y("y2^-1 + y1")).unwrap();
        let q = a.div_exact(&y("1 + y1")).unwrap().unwrap();
        assert_eq!(q, y("1 + y1").pow(2).mul(&y("y2^-1 + y1")).unwrap());
        assert!(y("1 + y1").div_exact(&y("1 + y2")).unwrap().is_none());
        let m = y("y1^2 + y2").div_exact(&y("y1^-1*y2")).unwrap().unwrap();
        assert_eq!(m, y("y1^3*y2^-1 + y1"));
    }
}
