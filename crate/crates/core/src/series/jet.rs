use crate::scalar::Scalar;
use crate::series::biseries::BiSeries;

/// Pointwise jet: the Taylor polynomial of a field at a center point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    pub center: (T, T),
    pub series: BiSeries<T>,
}

impl<T: Scalar> Jet<T> {
    pub fn new(center: (T, T), series: BiSeries<T>) -> Self {
        Self { center, series }
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn value(&self) -> T {
        self.series.value()
    }

    /// `∂_u^i ∂_v^j` at the center.
    pub fn partial(&self, i: usize, j: usize) -> T {
        self.series.partial(i, j)
    }
}
