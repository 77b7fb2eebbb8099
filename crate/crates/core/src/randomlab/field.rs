use rand::Rng;

use crate::error::{invalid, Result};

/// Largest prime order handled by direct modular arithmetic.
pub const MAX_PRIME_FIELD: u64 = 1 << 31;

/// A finite field `F_q` with elements encoded as `0..q`; `0` and `1` are the
/// additive and multiplicative identities.
///
/// Prime `q` uses modular arithmetic. `q = 4, 8, 9` use precomputed tables
/// built from `F_2[x]/(x^2+x+1)`, `F_2[x]/(x^3+x+1)` and `F_3[x]/(x^2+1)`,
/// with an element's base-`p` digits as polynomial coefficients.
#[derive(Clone, Debug)]
pub struct Field {
    q: u32,
    tables: Option<Tables>,
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            if q > MAX_PRIME_FIELD {
                return invalid(format!("prime fields are supported up to 2^31, got q = {q}"));
            }
            return Ok(Field {
                q: q as u32,
                tables: None,
            });
        }
        let (p, modulus): (u32, &[u32]) = match q {
            4 => (2, &[1, 1, 1]),
            8 => (2, &[1, 1, 0, 1]),
            9 => (3, &[1, 0, 1]),
            _ => return invalid(format!("q = {q} is not a prime or one of the tabulated prime powers 4, 8, 9")),
        };
        Ok(Field {
            q: q as u32,
            tables: Some(Tables::build(p, modulus)),
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            None => ((a as u64 + b as u64) % self.q as u64) as u32,
            Some(t) => t.add[(a * self.q + b) as usize] as u32,
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            None => (self.q - a) % self.q,
            Some(t) => t.neg[a as usize] as u32,
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            None => ((a as u64 * b as u64) % self.q as u64) as u32,
            Some(t) => t.mul[(a * self.q + b) as usize] as u32,
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        match &self.tables {
            None => {
                // a^(q-2)
                let (mut base, mut e, mut r) = (a as u64, self.q as u64 - 2, 1u64);
                let m = self.q as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                r as u32
            }
            Some(t) => t.inv[a as usize] as u32,
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(0..self.q)
    }
}

impl Tables {
    fn build(p: u32, modulus: &[u32]) -> Self {
        let d = modulus.len() - 1;
        let q = p.pow(d as u32);
        let digits = |mut v: u32| -> Vec<u32> {
            (0..d)
                .map(|_| {
                    let r = v % p;
                    v /= p;
                    r
                })
                .collect()
        };
        let encode = |c: &[u32]| c.iter().rev().fold(0, |acc, &x| acc * p + x);
        let mut add = vec![0u8; (q * q) as usize];
        let mut mul = vec![0u8; (q * q) as usize];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s) as u8;
                let mut prod = vec![0u32; 2 * d - 1];
                for i in 0..d {
                    for j in 0..d {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                // reduce by the monic modulus from the top
                for k in (d..prod.len()).rev() {
                    let c = prod[k];
                    if c != 0 {
                        for (i, &m) in modulus.iter().enumerate() {
                            let idx = k - d + i;
                            prod[idx] = (prod[idx] + (p - c) * m) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..d]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field") as u8
                }
            })
            .collect();
        Tables { add, mul, neg, inv }
    }
}

/// Square or rectangular matrix over a [`Field`], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FqMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        FqMatrix { rows: n, cols: n, data }
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        FqMatrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    /// `self - I` for a square matrix.
    pub fn minus_identity(&self, field: &Field) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            let k = i * self.cols + i;
            m.data[k] = field.sub(m.data[k], 1);
        }
        m
    }

    /// Appends `v` as an extra column.
    pub fn augment(&self, v: &[u32]) -> Self {
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, &x) in v.iter().enumerate().take(self.rows) {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.push(x);
        }
        FqMatrix {
            rows: self.rows,
            cols: self.cols + 1,
            data,
        }
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self, field: &Field) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                m.swap(rank * cols + j, p * cols + j);
            }
            let inv = field.inv(m[rank * cols + c]);
            for r in rank + 1..rows {
                let f = field.mul(m[r * cols + c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let d = field.mul(f, m[rank * cols + j]);
                    m[r * cols + j] = field.sub(m[r * cols + j], d);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}
