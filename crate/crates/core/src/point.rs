use smallvec::SmallVec;

/// A point of a metric space, stored as a flat coordinate vector.
///
/// Every concrete space in this crate (Euclidean clouds, snowflakes, circles,
/// simplex domains, products) interprets a flat `f64` slice; products
/// concatenate the coordinates of their factors. The inline capacity covers
/// every dimension that occurs in practice, so evaluation loops do not
/// allocate.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(pub SmallVec<[f64; 6]>);

impl Point {
    pub fn new(coords: impl IntoIterator<Item = f64>) -> Self {
        Point(coords.into_iter().collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Zero-dimensional point (the only point of `ℝ⁰`).
    pub fn empty() -> Self {
        Point(SmallVec::new())
    }

    pub fn scalar(x: f64) -> Self {
        Point::new([x])
    }

    /// Concatenate coordinates, the point of a sum-metric product space.
    pub fn pair(a: &Point, b: &Point) -> Self {
        Point(a.0.iter().chain(b.0.iter()).copied().collect())
    }

    /// Total-order key used to canonicalize atom lists.
    ///
    /// `-0.0` is folded onto `0.0` so that points that compare equal as reals
    /// merge. Non-finite coordinates are rejected at construction sites, not
    /// here.
    pub fn key(&self) -> PointKey {
        PointKey(
            self.0
                .iter()
                .map(|&c| (if c == 0.0 { 0.0f64 } else { c }).to_bits())
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointKey(SmallVec<[u64; 6]>);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_concatenates() {
        let p = Point::pair(&Point::new([1.0, 2.0]), &Point::scalar(3.0));
        assert_eq!(p.coords(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn key_merges_signed_zero() {
        assert_eq!(Point::scalar(0.0).key(), Point::scalar(-0.0).key());
        assert_ne!(Point::scalar(0.0).key(), Point::scalar(1.0).key());
    }
}
