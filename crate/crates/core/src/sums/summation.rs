//! Compensated summation with a deterministic parallel reduction.

use num_complex::Complex64;
use rayon::prelude::*;

/// Which accumulation scheme produced a sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compensation {
    Plain,
    Kahan,
}

/// Neumaier compensated addition, per component.
#[inline]
fn neumaier_add(sum: &mut f64, c: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *c += (*sum - t) + v;
    } else {
        *c += (v - t) + *sum;
    }
    *sum = t;
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanComplex {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl KahanComplex {
    #[inline]
    pub fn add(&mut self, v: Complex64) {
        neumaier_add(&mut self.re, &mut self.re_c, v.re);
        neumaier_add(&mut self.im, &mut self.im_c, v.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

/// Sequential sum, compensated or plain.
pub fn compensated_sum<I: IntoIterator<Item = Complex64>>(
    terms: I,
    comp: Compensation,
) -> Complex64 {
    match comp {
        Compensation::Kahan => {
            let mut acc = KahanComplex::default();
            for v in terms {
                acc.add(v);
            }
            acc.value()
        }
        Compensation::Plain => {
            let mut acc = Complex64::new(0.0, 0.0);
            for v in terms {
                acc += v;
            }
            acc
        }
    }
}

const CHUNK: usize = 4096;

/// Parallel map-reduce with a result independent of the thread count:
/// fixed-size chunks are summed compensated in index order, then the chunk
/// partials are merged smallest-magnitude-first.
pub fn parallel_compensated_sum<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Complex64 + Sync,
) -> Complex64 {
    if items.len() <= CHUNK {
        return compensated_sum(items.iter().map(&f), Compensation::Kahan);
    }
    let mut partials: Vec<(usize, Complex64)> = items
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(i, chunk)| (i, compensated_sum(chunk.iter().map(&f), Compensation::Kahan)))
        .collect();
    partials.sort_by(|a, b| {
        (a.1.norm(), a.0)
            .partial_cmp(&(b.1.norm(), b.0))
            .unwrap()
    });
    compensated_sum(partials.into_iter().map(|p| p.1), Compensation::Kahan)
}
