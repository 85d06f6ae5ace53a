use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension n = p + q.
pub const MAX_DIMENSION: usize = 12;

/// Signature (p, q) of the diagonal form B(e_i, e_j) = ε_i δ_ij, with
/// ε_i = -1 for the first p generators and +1 for the remaining q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge { p, q, n, max: MAX_DIMENSION });
        }
        Ok(Signature { p: p as u8, q: q as u8 })
    }

    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    pub fn dim(self) -> usize {
        self.p() + self.q()
    }

    /// ε for the zero-based generator index `i` (generator e_{i+1}).
    pub fn epsilon(self, i: usize) -> i8 {
        debug_assert!(i < self.dim());
        if i < self.p() {
            -1
        } else {
            1
        }
    }

    /// e_i² = -ε_i, from e_i e_i + e_i e_i = -2 B(e_i, e_i).
    pub fn generator_square(self, i: usize) -> i8 {
        -self.epsilon(i)
    }

    pub fn blade_count(self) -> usize {
        1 << self.dim()
    }

    pub(crate) fn check_same(self, other: Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(self.p(), self.q(), other.p(), other.q()))
        }
    }
}

impl TryFrom<[usize; 2]> for Signature {
    type Error = Error;

    fn try_from(v: [usize; 2]) -> Result<Self> {
        Signature::new(v[0], v[1])
    }
}

impl From<Signature> for [usize; 2] {
    fn from(s: Signature) -> Self {
        [s.p(), s.q()]
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilons_follow_the_split() {
        let s = Signature::new(1, 2).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.epsilon(0), -1);
        assert_eq!(s.epsilon(1), 1);
        assert_eq!(s.generator_square(0), 1);
        assert_eq!(s.generator_square(2), -1);
    }

    #[test]
    fn dimension_cap() {
        assert!(Signature::new(6, 6).is_ok());
        assert!(matches!(Signature::new(7, 6), Err(Error::DimensionTooLarge { n: 13, .. })));
    }
}
