//! Matrix, seed and Y-seed mutation together with the piecewise-linear
//! transformations of integer vectors that accompany them.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, PosRational};

fn check_index(k: usize, n: usize) -> Result<()> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, size: n });
    }
    Ok(())
}

#[inline]
fn pos(a: i64) -> i64 {
    a.max(0)
}

/// Skew-symmetric integer matrix indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn zero(n: usize) -> Self {
        ExchangeMatrix { n, b: vec![0; n * n] }
    }

    /// Build from rows, rejecting non-square or non-skew-symmetric input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (j, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Setup(format!("row {j} has length {}", row.len())));
            }
            for (k, &v) in row.iter().enumerate() {
                m.b[j * n + k] = v;
            }
        }
        if !m.is_skew_symmetric() {
            return Err(Error::Setup("matrix is not skew-symmetric".into()));
        }
        Ok(m)
    }

    /// Quiver convention: `b_ij = #{j -> i} - #{i -> j}`.
    pub fn from_quiver(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::zero(n);
        for &(s, t) in arrows {
            check_index(s, n)?;
            check_index(t, n)?;
            if s == t {
                return Err(Error::Setup(format!("loop at vertex {s}")));
            }
            m.b[t * n + s] += 1;
            m.b[s * n + t] -= 1;
        }
        Ok(m)
    }

    /// Arrows of the quiver with this matrix, after cancelling 2-cycles.
    pub fn to_quiver(&self) -> Vec<(usize, usize)> {
        let mut arrows = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for _ in 0..pos(self.get(i, j)) {
                    arrows.push((j, i));
                }
            }
        }
        arrows
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> i64 {
        self.b[j * self.n + k]
    }

    pub(crate) fn add_to(&mut self, j: usize, k: usize, v: i64) {
        self.b[j * self.n + k] += v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|j| (0..self.n).all(|k| self.get(j, k) == -self.get(k, j)))
    }

    pub fn neg(&self) -> Self {
        ExchangeMatrix {
            n: self.n,
            b: self.b.iter().map(|v| -v).collect(),
        }
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        matrix_mutate(self, k)
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, row) in self.rows().iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Fomin-Zelevinsky mutation of a rectangular matrix at column `k`, where
/// rows `0..n` form the principal part. `m` is row-major with `n` columns.
fn fz_mutate_rect(m: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| {
                    if i == k || j == k {
                        -v
                    } else {
                        let bik = row[k];
                        let bkj = m[k][j];
                        v + bik.signum() * pos(bik * bkj)
                    }
                })
                .collect()
        })
        .collect()
}

/// `b'_jk = -b_jk` on row/column `i`, otherwise
/// `b_jk + max(0, -b_ji) b_ik + max(0, b_ik) b_ji`.
pub fn matrix_mutate(b: &ExchangeMatrix, i: usize) -> Result<ExchangeMatrix> {
    check_index(i, b.n)?;
    let n = b.n;
    let mut out = ExchangeMatrix::zero(n);
    for j in 0..n {
        for k in 0..n {
            let v = if j == i || k == i {
                -b.get(j, k)
            } else {
                b.get(j, k) + pos(-b.get(j, i)) * b.get(i, k) + pos(b.get(i, k)) * b.get(j, i)
            };
            out.b[j * n + k] = v;
        }
    }
    Ok(out)
}

/// Y-seed mutation: `y'_k = 1/y_k`, and for `j != k`
/// `y'_j = y_j * y_k^[b_kj]+ * (1 + y_k)^(-b_kj)`.
pub fn yseed_mutate(y: &[PosRational], b: &ExchangeMatrix, k: usize) -> Result<Vec<PosRational>> {
    check_index(k, b.n)?;
    if y.len() != b.n {
        return Err(Error::Setup(format!(
            "{} coefficients for a {}x{} matrix",
            y.len(),
            b.n,
            b.n
        )));
    }
    let yk = &y[k];
    let one = PosRational::one(yk.nx(), yk.ny());
    let one_plus = one.add(yk)?;
    y.iter()
        .enumerate()
        .map(|(j, yj)| {
            if j == k {
                return yk.inv();
            }
            let bkj = b.get(k, j);
            if bkj == 0 {
                return Ok(yj.clone());
            }
            yj.mul(&yk.pow(pos(bkj))?)?
                .mul(&one_plus.pow(-bkj)?)?
                .reduced()
        })
        .collect()
}

/// Coefficient regime for seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Every coefficient specialized to 1.
    None,
    /// Principal coefficients tracked through the bottom `n x n` block.
    Principal,
}

/// Labelled seed whose cluster variables are stored as rational functions of
/// the initial cluster (and, for principal coefficients, the initial `y`).
#[derive(Clone, Debug)]
pub struct Seed {
    pub b: ExchangeMatrix,
    /// Bottom block of the extended matrix, `c[j][k]`; empty when coefficient-free.
    pub c: Vec<Vec<i64>>,
    pub x: Vec<PosRational>,
    pub coefficients: Coefficients,
}

impl Seed {
    pub fn initial(b: ExchangeMatrix, coefficients: Coefficients) -> Self {
        let n = b.n;
        let ny = match coefficients {
            Coefficients::None => 0,
            Coefficients::Principal => n,
        };
        let x = (0..n)
            .map(|i| PosRational::from_poly(LaurentPoly::x(n, ny, i)))
            .collect();
        let c = match coefficients {
            Coefficients::None => Vec::new(),
            Coefficients::Principal => (0..n)
                .map(|j| (0..n).map(|k| i64::from(j == k)).collect())
                .collect(),
        };
        Seed {
            b,
            c,
            x,
            coefficients,
        }
    }

    pub fn n(&self) -> usize {
        self.b.n
    }

    /// Tropical coefficient `y_k` of this seed as a monomial in the initial `y`.
    pub fn coefficient(&self, k: usize) -> Result<PosRational> {
        check_index(k, self.n())?;
        let n = self.n();
        Ok(match self.coefficients {
            Coefficients::None => PosRational::one(n, 0),
            Coefficients::Principal => {
                let mut e = vec![0i32; 2 * n];
                for j in 0..n {
                    e[n + j] = self.c[j][k] as i32;
                }
                PosRational::from_poly(LaurentPoly::monomial(n, n, e, 1))
            }
        })
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        seed_mutate(self, k)
    }

    /// Mutate along a 0-based word.
    pub fn mutate_word(&self, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }
}

/// Seed mutation. For principal coefficients the exchange binomial is
/// `y^[c_k]+ x^[b_k]+ + y^[-c_k]+ x^[-b_k]+`, which is the tropical
/// normalization of the coefficient-carrying exchange relation.
pub fn seed_mutate(s: &Seed, k: usize) -> Result<Seed> {
    let n = s.n();
    check_index(k, n)?;
    let (nx, ny) = (s.x[k].nx(), s.x[k].ny());
    let mut plus = PosRational::one(nx, ny);
    let mut minus = PosRational::one(nx, ny);
    for i in 0..n {
        let b = s.b.get(i, k);
        if b > 0 {
            plus = plus.mul(&s.x[i].pow(b)?)?;
        } else if b < 0 {
            minus = minus.mul(&s.x[i].pow(-b)?)?;
        }
    }
    if s.coefficients == Coefficients::Principal {
        let mut ep = vec![0i32; nx + ny];
        let mut em = vec![0i32; nx + ny];
        for j in 0..n {
            let c = s.c[j][k] as i32;
            ep[nx + j] = c.max(0);
            em[nx + j] = (-c).max(0);
        }
        plus = plus.mul(&PosRational::from_poly(LaurentPoly::monomial(nx, ny, ep, 1)))?;
        minus = minus.mul(&PosRational::from_poly(LaurentPoly::monomial(nx, ny, em, 1)))?;
    }
    let xk = plus.add(&minus)?.div(&s.x[k])?.reduced()?;
    let mut x = s.x.clone();
    x[k] = xk;
    let c = if s.c.is_empty() {
        Vec::new()
    } else {
        let mut full: Vec<Vec<i64>> = s.b.rows();
        full.extend(s.c.iter().cloned());
        fz_mutate_rect(&full, k).split_off(n)
    };
    Ok(Seed {
        b: matrix_mutate(&s.b, k)?,
        c,
        x,
        coefficients: s.coefficients,
    })
}

/// `g'_k = -g_k`; `g'_i = g_i + sgn(g_k) [b_ik g_k]+` for `i != k`.
pub fn gamma_transform(g: &[i64], b: &ExchangeMatrix, k: usize) -> Result<Vec<i64>> {
    check_index(k, b.n)?;
    check_len(g, b.n)?;
    let gk = g[k];
    Ok(g.iter()
        .enumerate()
        .map(|(i, &gi)| {
            if i == k {
                -gk
            } else {
                gi + gk.signum() * pos(b.get(i, k) * gk)
            }
        })
        .collect())
}

/// `g'_k = -g_k`; `g'_j = g_j + [b_jk]+ g_k - b_jk h_k` for `j != k`.
pub fn gvec_mutate_with_h(g: &[i64], h_k: i64, b: &ExchangeMatrix, k: usize) -> Result<Vec<i64>> {
    check_index(k, b.n)?;
    check_len(g, b.n)?;
    let gk = g[k];
    Ok(g.iter()
        .enumerate()
        .map(|(j, &gj)| {
            if j == k {
                -gk
            } else {
                let bjk = b.get(j, k);
                gj + pos(bjk) * gk - bjk * h_k
            }
        })
        .collect())
}

fn check_len(g: &[i64], n: usize) -> Result<()> {
    if g.len() != n {
        return Err(Error::Setup(format!("vector of length {} for n = {n}", g.len())));
    }
    Ok(())
}

/// `(n+1) x n` matrix whose top block is `-B` and whose last row is a shear
/// (or g-) vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedMatrix {
    pub top: ExchangeMatrix,
    pub bottom: Vec<i64>,
}

impl ExtendedMatrix {
    /// Stack `-b` over `bottom`.
    pub fn from_exchange(b: &ExchangeMatrix, bottom: Vec<i64>) -> Result<Self> {
        check_len(&bottom, b.n)?;
        Ok(ExtendedMatrix { top: b.neg(), bottom })
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        ext_matrix_mutate(self, k)
    }
}

impl fmt::Display for ExtendedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bottom: Vec<String> = self.bottom.iter().map(|v| v.to_string()).collect();
        write!(f, "{} / [{}]", self.top, bottom.join(","))
    }
}

pub fn ext_matrix_mutate(m: &ExtendedMatrix, k: usize) -> Result<ExtendedMatrix> {
    let n = m.top.n;
    check_index(k, n)?;
    check_len(&m.bottom, n)?;
    let mut full = m.top.rows();
    full.push(m.bottom.clone());
    let mut out = fz_mutate_rect(&full, k);
    let bottom = out.pop().expect("bottom row");
    let mut top = ExchangeMatrix::zero(n);
    for (j, row) in out.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            top.b[j * n + i] = v;
        }
    }
    Ok(ExtendedMatrix { top, bottom })
}
/// Parse a 1-based flip word separated by whitespace or commas into 0-based indices.
/// Parse a whitespace-separated 1-based flip word into 0-based indices.
pub fn parse_flip_word(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(crate::error::parse_err(0, format!("bad flip index `{t}`"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annulus_b() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, -2], vec![2, 0]]).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let b = annulus_b();
        let m = matrix_mutate(&b, 0).unwrap();
        assert_eq!(m.rows(), vec![vec![0, 2], vec![-2, 0]]);
        assert_eq!(matrix_mutate(&m, 0).unwrap(), b);
        let a3 = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        assert_eq!(
            matrix_mutate(&a3, 1).unwrap().rows(),
            vec![vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]
        );
        assert!(matrix_mutate(&a3, 3).is_err());
    }

    #[test]
    fn yseed_examples() {
        let ys: Vec<_> = (0..2)
            .map(|j| PosRational::from_poly(LaurentPoly::y(0, 2, j)))
            .collect();
        let out = yseed_mutate(&ys, &annulus_b(), 0).unwrap();
        let y1 = LaurentPoly::parse("y1", 0, 2).unwrap();
        assert!(out[0].rf_eq(&PosRational::from_poly(y1).inv().unwrap()).unwrap());
        let want = LaurentPoly::parse("y2 + 2*y1*y2 + y1^2*y2", 0, 2).unwrap();
        assert!(out[1].rf_eq(&PosRational::from_poly(want)).unwrap());

        let back = yseed_mutate(&out, &matrix_mutate(&annulus_b(), 0).unwrap(), 0).unwrap();
        for (a, b) in back.iter().zip(&ys) {
            assert!(a.rf_eq(b).unwrap());
        }

        let z = yseed_mutate(&ys, &ExchangeMatrix::zero(2), 0).unwrap();
        assert!(z[1].rf_eq(&ys[1]).unwrap());
    }

    #[test]
    fn seed_examples() {
        let a2 = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let s = Seed::initial(a2, Coefficients::None);
        let m = s.mutate(0).unwrap();
        let want = PosRational::new(
            LaurentPoly::parse("1 + x2", 2, 0).unwrap(),
            LaurentPoly::parse("x1", 2, 0).unwrap(),
        )
        .unwrap();
        assert!(m.x[0].rf_eq(&want).unwrap());
        let back = m.mutate(0).unwrap();
        assert!(back.x[0].rf_eq(&s.x[0]).unwrap());

        let z = Seed::initial(ExchangeMatrix::zero(2), Coefficients::None).mutate(0).unwrap();
        assert_eq!(z.x[0].to_string(), "2*x1^-1");
    }

    #[test]
    fn principal_exchange_carries_coefficients() {
        let a2 = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let s = Seed::initial(a2, Coefficients::Principal).mutate(0).unwrap();
        assert_eq!(s.x[0].to_string(), "x1^-1*x2 + x1^-1*y1");
        assert_eq!(s.c, vec![vec![-1, 1], vec![0, 1]]);
    }

    #[test]
    fn gamma_examples() {
        let b = annulus_b();
        assert_eq!(gamma_transform(&[0, 0], &b, 0).unwrap(), vec![0, 0]);
        assert_eq!(gamma_transform(&[1, -1], &b, 0).unwrap(), vec![-1, 1]);
        let g = vec![3, -2];
        let m = matrix_mutate(&b, 1).unwrap();
        let there = gamma_transform(&g, &b, 1).unwrap();
        assert_eq!(gamma_transform(&there, &m, 1).unwrap(), g);
    }

    #[test]
    fn gvec_with_h_examples() {
        let b = annulus_b();
        assert_eq!(gvec_mutate_with_h(&[1, -1], 0, &b, 0).unwrap()[0], -1);
        assert_eq!(
            gvec_mutate_with_h(&[1, -1], 0, &b, 0).unwrap(),
            gamma_transform(&[1, -1], &b, 0).unwrap()
        );
        assert_eq!(gvec_mutate_with_h(&[0, 0], 0, &b, 1).unwrap(), vec![0, 0]);
    }

    #[test]
    fn extended_examples() {
        let b = annulus_b();
        let m = ExtendedMatrix::from_exchange(&b, vec![1, -1]).unwrap();
        let out = m.mutate(0).unwrap();
        assert_eq!(out.bottom, vec![-1, 1]);
        assert_eq!(out.top, matrix_mutate(&b, 0).unwrap().neg());
        let z = ExtendedMatrix::from_exchange(&b, vec![0, 0]).unwrap();
        assert_eq!(z.mutate(1).unwrap().bottom, vec![0, 0]);
    }

    #[test]
    fn quiver_round_trip() {
        let b = ExchangeMatrix::from_quiver(3, &[(0, 1), (1, 2), (1, 2)]).unwrap();
        assert_eq!(b.get(1, 0), 1);
        assert_eq!(b.get(2, 1), 2);
        let back = ExchangeMatrix::from_quiver(3, &b.to_quiver()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn flip_words() {
        assert_eq!(parse_flip_word("1 3 2 1").unwrap(), vec![0, 2, 1, 0]);
        assert!(parse_flip_word("0").is_err());
        assert!(parse_flip_word("").unwrap().is_empty());
    }
}
