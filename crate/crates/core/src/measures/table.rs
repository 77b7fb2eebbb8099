use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Whether a table holds real moments `m_a` or mixed moments `m(a, b)` of a
/// measure on the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentKind {
    Real,
    ComplexMixed,
}

/// Moment grid of a (possibly empirical) law.
///
/// Real tables store `m_0, .., m_A`. Mixed tables store `m(a, b)` for
/// `a + b <= A`, standing for the integral of `z^a conj(z)^b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentTable<T> {
    kind: MomentKind,
    max_order: usize,
    entries: Vec<T>,
}

/// Exact table with rational entries.
pub type ExactTable = MomentTable<BigRational>;

fn tri(s: usize) -> usize {
    s * (s + 1) / 2
}

impl<T> MomentTable<T> {
    /// Real table with `entries[a] = m_a`.
    pub fn real_unchecked(entries: Vec<T>) -> Self {
        assert!(!entries.is_empty(), "a moment table needs at least m_0");
        MomentTable {
            kind: MomentKind::Real,
            max_order: entries.len() - 1,
            entries,
        }
    }

    /// Mixed table filled from `f(a, b)` for all `a + b <= max_order`.
    pub fn mixed_from_fn(max_order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(tri(max_order + 1));
        for s in 0..=max_order {
            for b in 0..=s {
                entries.push(f(s - b, b));
            }
        }
        MomentTable {
            kind: MomentKind::ComplexMixed,
            max_order,
            entries,
        }
    }

    /// Real table filled from `f(a)` for `a <= max_order`.
    pub fn real_from_fn(max_order: usize, f: impl FnMut(usize) -> T) -> Self {
        Self::real_unchecked((0..=max_order).map(f).collect())
    }

    pub fn kind(&self) -> MomentKind {
        self.kind
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    fn index(&self, a: usize, b: usize) -> Option<usize> {
        match self.kind {
            MomentKind::Real if b == 0 && a <= self.max_order => Some(a),
            MomentKind::ComplexMixed if a + b <= self.max_order => Some(tri(a + b) + b),
            _ => None,
        }
    }

    /// `m(a, b)`; real tables only answer `b = 0`.
    pub fn get(&self, a: usize, b: usize) -> Option<&T> {
        self.index(a, b).map(|i| &self.entries[i])
    }

    /// Like [`get`](Self::get) but reports missing orders as errors.
    pub fn entry(&self, a: usize, b: usize) -> Result<&T> {
        self.get(a, b).ok_or_else(|| Error::MissingOrder {
            order: format_order(self.kind, a, b),
            max_order: self.max_order,
        })
    }

    /// All stored orders, by total degree then by `b`.
    pub fn orders(&self) -> Vec<(usize, usize)> {
        match self.kind {
            MomentKind::Real => (0..=self.max_order).map(|a| (a, 0)).collect(),
            MomentKind::ComplexMixed => (0..=self.max_order)
                .flat_map(|s| (0..=s).map(move |b| (s - b, b)))
                .collect(),
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> MomentTable<U> {
        MomentTable {
            kind: self.kind,
            max_order: self.max_order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }
}

pub(crate) fn format_order(kind: MomentKind, a: usize, b: usize) -> String {
    match kind {
        MomentKind::Real => a.to_string(),
        MomentKind::ComplexMixed => format!("{a}:{b}"),
    }
}

impl ExactTable {
    /// Real exact table; `m_0` must be 1.
    pub fn real(entries: Vec<BigRational>) -> Result<Self> {
        if entries.first().is_none_or(|m0| !m0.is_one()) {
            return invalid("a probability moment table needs m_0 = 1");
        }
        Ok(Self::real_unchecked(entries))
    }

    /// Real exact table from integer moments.
    pub fn real_from_integers(entries: impl IntoIterator<Item = BigUint>) -> Result<Self> {
        Self::real(
            entries
                .into_iter()
                .map(|v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// Mixed exact table; checks `m(0, 0) = 1` and `m(a, b) = m(b, a)`
    /// (conjugate symmetry with real entries).
    pub fn mixed(max_order: usize, f: impl FnMut(usize, usize) -> BigRational) -> Result<Self> {
        let t = Self::mixed_from_fn(max_order, f);
        if !t.get(0, 0).is_some_and(One::is_one) {
            return invalid("a probability moment table needs m(0,0) = 1");
        }
        for (a, b) in t.orders() {
            if t.get(a, b) != t.get(b, a) {
                return invalid(format!("entry ({a},{b}) breaks conjugate symmetry"));
            }
        }
        Ok(t)
    }

    pub fn to_f64(&self) -> MomentTable<f64> {
        self.map(ratio_to_f64)
    }
}

/// Rational to the nearest-ish `f64`, robust to numerators and denominators
/// far beyond the `f64` range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (n, d) = (r.numer().abs(), r.denom().clone());
    let shift = n.bits() as i64 - d.bits() as i64 - 64;
    let q = if shift > 0 {
        n / (d << shift as usize)
    } else {
        (n << (-shift) as usize) / d
    };
    let v = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(shift as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Natural log of a positive rational.
pub fn ratio_ln(r: &BigRational) -> f64 {
    fn ln_int(v: &BigInt) -> f64 {
        let bits = v.bits();
        let shift = bits.saturating_sub(62);
        let top = (v >> shift as usize).to_f64().expect("62-bit value fits f64");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_int(r.numer()) - ln_int(r.denom())
}

/// Monte Carlo estimate of one moment: the sample mean and its standard
/// error `sqrt((mean(|Z|^2) - |mean(Z)|^2) / N)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: Complex64,
    pub stderr: f64,
}

/// Neumaier-compensated `f64` accumulator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Streaming accumulator of `z^a conj(z)^b` and `|z|^(2(a+b))` for all
/// `a + b <= max_order`.
#[derive(Clone, Debug)]
pub struct MixedAccumulator {
    max_order: usize,
    re: Vec<CompensatedSum>,
    im: Vec<CompensatedSum>,
    abs_sq: Vec<CompensatedSum>,
    count: u64,
}

impl MixedAccumulator {
    pub fn new(max_order: usize) -> Self {
        let len = tri(max_order + 1);
        MixedAccumulator {
            max_order,
            re: vec![CompensatedSum::default(); len],
            im: vec![CompensatedSum::default(); len],
            abs_sq: vec![CompensatedSum::default(); len],
            count: 0,
        }
    }

    pub fn push(&mut self, z: Complex64) {
        let pz: Vec<Complex64> = std::iter::successors(Some(Complex64::one()), |p| Some(p * z))
            .take(self.max_order + 1)
            .collect();
        let pc: Vec<Complex64> = pz.iter().map(|p| p.conj()).collect();
        let r2 = z.norm_sqr();
        let mut idx = 0;
        for s in 0..=self.max_order {
            let mag = r2.powi(s as i32);
            for b in 0..=s {
                let v = pz[s - b] * pc[b];
                self.re[idx].add(v.re);
                self.im[idx].add(v.im);
                self.abs_sq[idx].add(mag);
                idx += 1;
            }
        }
        self.count += 1;
    }

    pub fn merge(&mut self, other: &MixedAccumulator) {
        assert_eq!(self.max_order, other.max_order);
        for (a, b) in self.re.iter_mut().zip(&other.re) {
            a.merge(b);
        }
        for (a, b) in self.im.iter_mut().zip(&other.im) {
            a.merge(b);
        }
        for (a, b) in self.abs_sq.iter_mut().zip(&other.abs_sq) {
            a.merge(b);
        }
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn finish(&self) -> EmpiricalMoments {
        let n = self.count.max(1) as f64;
        let mut idx = 0;
        let table = MomentTable::mixed_from_fn(self.max_order, |_, _| {
            let mean = Complex64::new(self.re[idx].value() / n, self.im[idx].value() / n);
            let var = (self.abs_sq[idx].value() / n - mean.norm_sqr()).max(0.0);
            idx += 1;
            Estimate {
                value: mean,
                stderr: (var / n).sqrt(),
            }
        });
        EmpiricalMoments {
            table,
            trials: self.count,
            support: None,
        }
    }
}

/// Empirical moment table with its trial count and, when built from a
/// histogram, the distinct observed values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMoments {
    pub table: MomentTable<Estimate>,
    pub trials: u64,
    pub support: Option<Vec<i64>>,
}

impl EmpiricalMoments {
    /// Real moments `0..=max_order` of an integer-valued histogram, with
    /// exact integer accumulation before the final division.
    pub fn from_histogram<'a>(
        histogram: impl IntoIterator<Item = (&'a i64, &'a u64)>,
        max_order: usize,
    ) -> Result<Self> {
        let hist: Vec<(i64, u64)> = histogram.into_iter().map(|(v, c)| (*v, *c)).collect();
        let trials: u64 = hist.iter().map(|(_, c)| c).sum();
        if trials == 0 {
            return invalid("empty histogram");
        }
        let nb = BigInt::from(trials);
        let power_sum = |k: u32| -> BigInt {
            hist.iter()
                .map(|&(v, c)| num_traits::Pow::pow(BigInt::from(v), k) * c)
                .sum()
        };
        let table = MomentTable::real_from_fn(max_order, |a| {
            let s1 = power_sum(a as u32);
            let s2 = power_sum(2 * a as u32);
            let mean = BigRational::new(s1.clone(), nb.clone());
            // N^2 Var = N S2 - S1^2, exactly.
            let var = BigRational::new(&nb * s2 - &s1 * &s1, &nb * &nb);
            let se = (ratio_to_f64(&var).max(0.0) / trials as f64).sqrt();
            Estimate {
                value: Complex64::new(ratio_to_f64(&mean), 0.0),
                stderr: se,
            }
        });
        Ok(EmpiricalMoments {
            table,
            trials,
            support: Some(hist.iter().filter(|(_, c)| *c > 0).map(|(v, _)| *v).collect()),
        })
    }

    /// Wraps a real table of point values with no sampling error (used for
    /// exact enumerations and for injected-fault checks).
    pub fn exact_real(values: &[f64]) -> Self {
        EmpiricalMoments {
            table: MomentTable::real_unchecked(
                values
                    .iter()
                    .map(|&v| Estimate {
                        value: Complex64::new(v, 0.0),
                        stderr: 0.0,
                    })
                    .collect(),
            ),
            trials: 0,
            support: None,
        }
    }
}
