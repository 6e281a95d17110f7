use num_complex::Complex64;
use std::fmt;

/// A point of C^k.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexPoint {
    /// Panics if any coordinate is non-finite (NaN/Inf are never valid
    /// states for points handled by this crate).
    pub fn new(coords: Vec<Complex64>) -> Self {
        assert!(
            coords.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "ComplexPoint: non-finite coordinate"
        );
        ComplexPoint { coords }
    }

    pub fn from_re(re: &[f64]) -> Self {
        Self::new(re.iter().map(|r| Complex64::new(*r, 0.0)).collect())
    }

    /// Interleaved (re, im) pairs, one pair per complex coordinate.
    pub fn from_re_im(parts: &[f64]) -> Self {
        assert!(parts.len() % 2 == 0, "ComplexPoint: odd re/im list");
        Self::new(
            parts
                .chunks(2)
                .map(|p| Complex64::new(p[0], p[1]))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Euclidean norm on C^k ≅ R^{2k}.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max of coordinate moduli (polydisk norm).
    pub fn max_modulus(&self) -> f64 {
        self.coords.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &ComplexPoint) -> f64 {
        assert_eq!(self.dim(), other.dim(), "ComplexPoint: dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Real coordinates interleaved as (re_0, im_0, re_1, im_1, ...).
    pub fn real_coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for c in &self.coords {
            out.push(c.re);
            out.push(c.im);
        }
        out
    }

    /// Concatenate two points (used by product and doubled maps).
    pub fn concat(&self, other: &ComplexPoint) -> ComplexPoint {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        ComplexPoint { coords }
    }

    pub fn block(&self, range: std::ops::Range<usize>) -> ComplexPoint {
        ComplexPoint {
            coords: self.coords[range].to_vec(),
        }
    }
}

impl std::ops::Index<usize> for ComplexPoint {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.coords[i]
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:+.6}{:+.6}i", c.re, c.im)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[should_panic(expected = "non-finite")]
    fn rejects_nan() {
        ComplexPoint::new(vec![Complex64::new(f64::NAN, 0.0)]);
    }

    #[test]
    fn norms() {
        let p = ComplexPoint::from_re_im(&[3.0, 0.0, 0.0, 4.0]);
        assert_eq!(p.norm(), 5.0);
        assert_eq!(p.max_modulus(), 4.0);
    }
}
