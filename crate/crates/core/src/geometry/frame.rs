//! Exact cyclic frames on the Veronese curve.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::colors::{enumerate_packets, ColorSet};
use crate::error::{Error, Result};
use crate::inversion::check_params;

pub type Rational = BigRational;

pub fn rational(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Guiding vectors `xi_i = (1, t_i, ..., t_i^(d-1))` with `t` strictly
/// increasing, plus precomputed facet normals.
#[derive(Debug, Clone)]
pub struct Frame {
    n: usize,
    d: usize,
    t: Vec<Rational>,
    xi: Vec<Vec<Rational>>,
    cube_volumes: BTreeMap<ColorSet, Rational>,
    facet_tables: BTreeMap<ColorSet, FacetTable>,
}

/// Integer-scaled inner products of one facet normal with every guiding
/// vector. Scaling by a positive constant keeps all signs and equalities.
#[derive(Debug, Clone)]
pub(crate) struct FacetTable {
    pub dots: Vec<i128>,
    pub max_value: i128,
    pub min_value: i128,
}

impl FacetTable {
    /// Value of the normal on the point `sum_{j in base} xi_j`.
    pub fn value(&self, base: ColorSet) -> Option<i128> {
        base.iter().try_fold(0i128, |acc, j| acc.checked_add(self.dots[j - 1]))
    }
}

impl Frame {
    pub fn new(n: usize, d: usize, t: Vec<Rational>) -> Result<Frame> {
        check_params(n, d)?;
        if t.len() != n {
            return Err(Error::invalid(format!("expected {n} parameters, got {}", t.len())));
        }
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("frame parameters must be strictly increasing"));
        }
        let xi: Vec<Vec<Rational>> = t
            .iter()
            .map(|ti| {
                let mut v = Vec::with_capacity(d);
                let mut p = Rational::one();
                for _ in 0..d {
                    v.push(p.clone());
                    p = &p * ti;
                }
                v
            })
            .collect();
        let mut frame = Frame { n, d, t, xi, cube_volumes: BTreeMap::new(), facet_tables: BTreeMap::new() };
        for cube in enumerate_packets(n, d)? {
            let vol = frame.minor(cube);
            frame.cube_volumes.insert(cube, vol);
        }
        for facet in enumerate_packets(n, d - 1)? {
            let table = frame.facet_table(facet)?;
            frame.facet_tables.insert(facet, table);
        }
        Ok(frame)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn parameters(&self) -> &[Rational] {
        &self.t
    }

    pub fn guiding(&self, color: usize) -> &[Rational] {
        &self.xi[color - 1]
    }

    /// `t_i = -t_{n+1-i}` for all `i`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| self.t[i] == -self.t[self.n - 1 - i].clone())
    }

    /// Determinant of the guiding vectors of `colors` (ascending), which must
    /// have exactly `d` members.
    pub fn minor(&self, colors: ColorSet) -> Rational {
        let cols: Vec<&Vec<Rational>> = colors.iter().map(|c| &self.xi[c - 1]).collect();
        let m: Vec<Vec<Rational>> = (0..self.d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        determinant(m)
    }

    pub(crate) fn cube_volume(&self, cube: ColorSet) -> Option<&Rational> {
        self.cube_volumes.get(&cube)
    }

    /// Total volume of the zonotope: the sum of all maximal minors.
    pub fn zonotope_volume(&self) -> Rational {
        self.cube_volumes.values().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Every flag minor on increasing index sets is positive.
    pub fn is_cyclic(&self) -> bool {
        (1..=self.d).all(|k| {
            enumerate_packets(self.n, k).unwrap().into_iter().all(|cols| {
                let c: Vec<usize> = cols.to_vec();
                let m: Vec<Vec<Rational>> =
                    (0..k).map(|r| c.iter().map(|&j| self.xi[j - 1][r].clone()).collect()).collect();
                determinant(m).is_positive()
            })
        })
    }

    pub(crate) fn facet(&self, directions: ColorSet) -> Option<&FacetTable> {
        self.facet_tables.get(&directions)
    }

    /// Normal of the hyperplane spanned by `directions` (`d - 1` colors), so
    /// that `<normal, v> = det[xi_directions | v]`.
    pub fn normal(&self, directions: ColorSet) -> Vec<Rational> {
        let cols: Vec<&Vec<Rational>> = directions.iter().map(|c| &self.xi[c - 1]).collect();
        (0..self.d)
            .map(|row| {
                let minor: Vec<Vec<Rational>> =
                    (0..self.d).filter(|&r| r != row).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
                let m = determinant(minor);
                if (row + self.d - 1).is_multiple_of(2) {
                    m
                } else {
                    -m
                }
            })
            .collect()
    }

    fn facet_table(&self, directions: ColorSet) -> Result<FacetTable> {
        let normal = self.normal(directions);
        let raw: Vec<Rational> = self.xi.iter().map(|x| dot(&normal, x)).collect();
        let lcm = raw.iter().fold(BigInt::one(), |acc, v| num_integer_lcm(&acc, v.denom()));
        let scale = BigRational::from_integer(lcm);
        let dots: Vec<i128> = raw
            .iter()
            .map(|v| (v * &scale).to_integer().to_i128())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Internal("frame values exceed the exact integer range".into()))?;
        let max_value = dots.iter().filter(|&&v| v > 0).sum();
        let min_value = dots.iter().filter(|&&v| v < 0).sum();
        Ok(FacetTable { dots, max_value, min_value })
    }

    /// `sum_{i in vertex} xi_i`.
    pub fn point(&self, vertex: ColorSet) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); self.d];
        for c in vertex.iter() {
            for (acc, x) in p.iter_mut().zip(&self.xi[c - 1]) {
                *acc += x;
            }
        }
        p
    }

    /// Position of a vertex when the zonotope is centered at the origin
    /// (segments `[-xi/2, xi/2]`).
    pub fn centered_point(&self, vertex: ColorSet) -> Vec<Rational> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut p = vec![Rational::zero(); self.d];
        for c in 1..=self.n {
            let sign = if vertex.contains(c) { half.clone() } else { -half.clone() };
            for (acc, x) in p.iter_mut().zip(&self.xi[c - 1]) {
                *acc += x * &sign;
            }
        }
        p
    }

    /// The diagonal reflection `e_j -> (-1)^(d+j-1) e_j` (1-based `j`) that
    /// realizes the color involution on a symmetric frame.
    pub fn reflect(&self, point: &[Rational]) -> Vec<Rational> {
        point
            .iter()
            .enumerate()
            .map(|(j0, x)| if (self.d + j0).is_multiple_of(2) { x.clone() } else { -x.clone() })
            .collect()
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `t = (-m, ..., -1, 1, ..., m)` for `n = 2m`, with a middle `0` for odd `n`.
pub fn frame_default(n: usize, d: usize) -> Result<Frame> {
    let m = (n / 2) as i64;
    let t: Vec<Rational> = if n.is_multiple_of(2) {
        (-m..=-1).chain(1..=m).map(rational).collect()
    } else {
        (-m..=m).map(rational).collect()
    };
    Frame::new(n, d, t)
}

/// Exact Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let k = m.len();
    if k == 0 {
        return Rational::one();
    }
    let mut det = Rational::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let (upper, lower) = m.split_at_mut(r);
            for (x, y) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colors::cs;

    #[test]
    fn default_parameters() {
        let f = frame_default(4, 2).unwrap();
        assert_eq!(f.parameters(), &[rational(-2), rational(-1), rational(1), rational(2)]);
        let f = frame_default(5, 2).unwrap();
        assert_eq!(f.parameters(), &(-2..=2).map(rational).collect::<Vec<_>>()[..]);
        assert!(f.is_symmetric());
    }

    #[test]
    fn minors_positive_for_4_2() {
        let f = frame_default(4, 2).unwrap();
        // det [[1,1],[t_i,t_j]] = t_j - t_i.
        let want = [((1, 2), 1), ((1, 3), 3), ((1, 4), 4), ((2, 3), 2), ((2, 4), 3), ((3, 4), 1)];
        for ((i, j), v) in want {
            assert_eq!(f.minor(cs(&[i, j])), rational(v));
        }
        assert!(f.is_cyclic());
        assert_eq!(f.zonotope_volume(), rational(14));
    }

    #[test]
    fn vandermonde_3x3() {
        let f = frame_default(5, 3).unwrap();
        // det V(t1,t2,t3) = (t2-t1)(t3-t1)(t3-t2) for t = -2,-1,0.
        assert_eq!(f.minor(cs(&[1, 2, 3])), rational(2));
        assert!(f.is_cyclic());
    }

    #[test]
    fn normal_is_cofactor_vector() {
        let f = frame_default(5, 3).unwrap();
        let n = f.normal(cs(&[2, 4]));
        for c in 1..=5 {
            let got = dot(&n, f.guiding(c));
            if c == 2 || c == 4 {
                assert!(got.is_zero());
            } else {
                let expect = f.minor(cs(&[2, 4]).with(c));
                // det with the extra column placed last; reorder sign.
                let cols = cs(&[2, 4]).with(c).to_vec();
                let pos = cols.iter().position(|&x| x == c).unwrap();
                let sign = if (cols.len() - 1 - pos).is_multiple_of(2) { 1 } else { -1 };
                assert_eq!(got, expect * rational(sign));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Frame::new(3, 2, vec![rational(0), rational(0), rational(1)]).is_err());
        assert!(Frame::new(3, 2, vec![rational(0), rational(1)]).is_err());
        assert!(!Frame::new(3, 1, vec![rational(0), rational(1), rational(5)]).unwrap().is_symmetric());
    }

    #[test]
    fn reflection_matches_involution_on_guiding_vectors() {
        // A xi_i = (-1)^d xi_{i°}.
        for (n, d) in [(4, 2), (5, 3), (6, 3), (6, 4)] {
            let f = frame_default(n, d).unwrap();
            for i in 1..=n {
                let img = f.reflect(f.guiding(i));
                let target: Vec<Rational> =
                    f.guiding(n + 1 - i).iter().map(|x| if d % 2 == 0 { x.clone() } else { -x.clone() }).collect();
                assert_eq!(img, target);
            }
        }
    }
}
