//! Compensated (Neumaier) accumulation for real and complex sums.

use crate::ComplexScalar;

/// Neumaier's variant of Kahan summation over `f64`.
///
/// Unlike plain Kahan it stays correct when an addend is larger in magnitude
/// than the running sum, which happens constantly in alternating series.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Component-wise compensated sum of complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: ComplexScalar) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn total(&self) -> ComplexScalar {
        ComplexScalar::new(self.re.total(), self.im.total())
    }
}

impl Extend<ComplexScalar> for ComplexSum {
    fn extend<I: IntoIterator<Item = ComplexScalar>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<ComplexScalar> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = ComplexScalar>>(iter: I) -> Self {
        let mut s = ComplexSum::new();
        s.extend(iter);
        s
    }
}
