//! Exact non-negative rationals for weight thresholds such as `w_j / 3` or
//! `max{r, 3} * w_j`. All comparisons cross-multiply in `u128`.

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy)]
pub struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    pub const ONE_THIRD: Frac = Frac { num: 1, den: 3 };
    pub const ONE: Frac = Frac { num: 1, den: 1 };
    pub const THREE: Frac = Frac { num: 3, den: 1 };

    /// Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Frac { num, den }
    }

    pub fn int(n: u64) -> Self {
        Frac { num: n, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `self * w` without loss of precision, reduced.
    pub fn times(self, w: u64) -> Frac {
        let num = self.num as u128 * w as u128;
        reduce(num, self.den as u128)
    }

    pub fn max(self, other: Frac) -> Frac {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }

    /// `w >= self`.
    pub fn reached_by(&self, w: u64) -> bool {
        w as u128 * self.den as u128 >= self.num as u128
    }

    /// `w <= self`.
    pub fn admits(&self, w: u64) -> bool {
        w as u128 * self.den as u128 <= self.num as u128
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn reduce(num: u128, den: u128) -> Frac {
    let g = gcd(num, den).max(1);
    let (num, den) = (num / g, den / g);
    Frac {
        num: u64::try_from(num).expect("threshold numerator overflows u64"),
        den: u64::try_from(den).expect("threshold denominator overflows u64"),
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        let t = Frac::ONE_THIRD.times(4);
        assert_eq!(t, Frac::new(4, 3));
        assert_eq!(t.ceil(), 2);
        assert_eq!(t.floor(), 1);
        assert!(t.reached_by(2));
        assert!(!t.reached_by(1));
        assert!(t.admits(1));
        assert!(!t.admits(2));
        assert_eq!(Frac::ONE_THIRD.times(6), Frac::int(2));
    }

    #[test]
    fn ordering_and_max() {
        let r = Frac::new(7, 2);
        assert!(r > Frac::THREE);
        assert_eq!(r.max(Frac::THREE), r);
        assert_eq!(Frac::new(5, 2).max(Frac::THREE), Frac::THREE);
        assert_eq!(Frac::new(6, 4), Frac::new(3, 2));
    }
}
