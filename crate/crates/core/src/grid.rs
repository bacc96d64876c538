//! Uniform time grids and sampled trajectories.

use alloc::vec::Vec;

use crate::coherence::{frobenius_coherence, l1_coherence};
use crate::error::{Error, Result};
use crate::state::DensityMatrix;

/// `steps` equal intervals covering `[t_start, t_end]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) || t_end <= t_start || steps == 0 {
            return Err(Error::BadGrid { t_start, t_end, steps });
        }
        Ok(TimeGrid { t_start, t_end, steps })
    }

    #[inline]
    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    #[inline]
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    #[inline]
    pub fn steps(&self) -> usize {
        self.steps
    }

    #[inline]
    pub fn step_size(&self) -> f64 {
        (self.t_end - self.t_start) / self.steps as f64
    }

    /// Time of node `i` in `0..=steps`. The last node is `t_end` exactly.
    pub fn node(&self, i: usize) -> f64 {
        if i == self.steps {
            self.t_end
        } else {
            self.t_start + i as f64 * self.step_size()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(move |i| self.node(i))
    }
}

/// One point of a trajectory with its derived scalars.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub rho: DensityMatrix,
    pub purity: f64,
    pub c_l1: f64,
    pub c_frob: f64,
}

impl Sample {
    pub fn new(t: f64, rho: DensityMatrix) -> Self {
        Sample {
            t,
            rho,
            purity: rho.purity(),
            c_l1: l1_coherence(&rho),
            c_frob: frobenius_coherence(&rho),
        }
    }
}

/// Samples ordered by strictly increasing time.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeSeries {
    samples: Vec<Sample>,
}

impl TimeSeries {
    pub fn new() -> Self {
        TimeSeries { samples: Vec::new() }
    }

    pub fn with_capacity(n: usize) -> Self {
        TimeSeries { samples: Vec::with_capacity(n) }
    }

    /// Appends a sample; its time must exceed the last one.
    pub fn push(&mut self, sample: Sample) -> Result<()> {
        if !sample.t.is_finite() {
            return Err(Error::NotFinite { what: "sample time" });
        }
        if let Some(last) = self.samples.last() {
            if sample.t <= last.t {
                return Err(Error::NonMonotonicTime { previous: last.t, t: sample.t });
            }
        }
        self.samples.push(sample);
        Ok(())
    }

    /// Collects samples, checking the time ordering.
    pub fn from_samples(samples: impl IntoIterator<Item = Sample>) -> Result<Self> {
        let mut series = TimeSeries::new();
        for s in samples {
            series.push(s)?;
        }
        Ok(series)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Sample> {
        self.samples.iter()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }
}

impl<'a> IntoIterator for &'a TimeSeries {
    type Item = &'a Sample;
    type IntoIter = core::slice::Iter<'a, Sample>;

    fn into_iter(self) -> Self::IntoIter {
        self.samples.iter()
    }
}
