//! Semiopen circular intervals `(a, b]` on the index set Z_n.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    a: usize,
    b: usize,
    n: usize,
}

impl Span {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if n <= 1 {
            return Err(Error::InvalidSpan(format!("index set of size {n} is degenerate")));
        }
        if a >= n || b >= n {
            return Err(Error::InvalidSpan(format!("({a}, {b}] has an endpoint outside Z_{n}")));
        }
        Ok(Self { a, b, n })
    }

    pub fn start(&self) -> usize {
        self.a
    }

    pub fn end(&self) -> usize {
        self.b
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn is_conventional(&self) -> bool {
        self.a <= self.b
    }

    pub fn is_circular(&self) -> bool {
        !self.is_conventional()
    }

    /// Number of positions in the closed interval `[a, b]`.
    pub fn length(&self) -> usize {
        (self.b + self.n - self.a) % self.n + 1
    }

    pub fn is_full_axis(&self) -> bool {
        self.length() == self.n
    }

    /// Membership in the semiopen set: `j ∈ [a, b]` and `j ≠ a`.
    pub fn contains(&self, j: usize) -> bool {
        let j = j % self.n;
        j != self.a && self.closed_contains(j)
    }

    /// Membership in the closed interval `[a, b]`.
    pub fn closed_contains(&self, j: usize) -> bool {
        let j = j % self.n;
        (j + self.n - self.a) % self.n < self.length()
    }

    /// The positions of the semiopen set, in circular order from `a + 1`.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.length()).map(move |d| (self.a + d) % self.n)
    }

    /// Strict inclusion of `inner` in `self` as subsets of Z_n.
    pub fn includes(&self, inner: &Span) -> bool {
        self.n == inner.n && inner.members().all(|j| self.contains(j)) && self.length() != inner.length()
    }

    pub fn shift(&self, j: usize, dir: Direction) -> Self {
        let j = j % self.n;
        let mv = |x: usize| match dir {
            Direction::Right => (x + j) % self.n,
            Direction::Left => (x + self.n - j) % self.n,
        };
        Self {
            a: mv(self.a),
            b: mv(self.b),
            n: self.n,
        }
    }

    /// The reversed span `(b, a]`.
    pub fn reversed(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            n: self.n,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.a, self.b)
    }
}

pub fn render_spans(spans: &[Span]) -> String {
    spans.iter().map(Span::to_string).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: usize, b: usize) -> Span {
        Span::new(a, b, 9).unwrap()
    }

    #[test]
    fn conventional_and_circular() {
        let x = s(0, 5);
        assert!(x.is_conventional());
        assert_eq!(x.length(), 6);
        assert!(!x.contains(0));
        assert!(x.contains(5));

        let y = s(7, 2);
        assert!(y.is_circular());
        assert_eq!(y.length(), 5);
        assert!(y.contains(8) && y.contains(0) && y.contains(2));
        assert!(!y.contains(7) && !y.contains(3));
        assert_eq!(y.members().collect::<Vec<_>>(), vec![8, 0, 1, 2]);
    }

    #[test]
    fn inclusion_is_strict() {
        assert!(s(1, 7).includes(&s(2, 5)));
        assert!(!s(1, 7).includes(&s(1, 7)));
        assert!(s(6, 3).includes(&s(8, 1)));
        assert!(!s(6, 3).includes(&s(2, 4)));
    }

    #[test]
    fn shift_wraps() {
        assert_eq!(s(0, 5).shift(3, Direction::Right), s(3, 8));
        assert_eq!(s(3, 8).shift(3, Direction::Right), s(6, 2));
        assert_eq!(s(6, 2).shift(6, Direction::Left), s(0, 5));
    }

    #[test]
    fn rejects_degenerate_index_sets() {
        assert!(Span::new(0, 0, 1).is_err());
        assert!(Span::new(0, 9, 9).is_err());
        assert_eq!(s(0, 5).to_string(), "(0, 5]");
    }

    #[test]
    fn full_axis_flag() {
        assert!(s(3, 2).is_full_axis());
        assert!(!s(3, 1).is_full_axis());
    }
}
