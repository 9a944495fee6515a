//! Sobol low-discrepancy points (Joe-Kuo direction numbers), Gray-code order.

use crate::error::{param, Result};

pub const MAX_DIM: usize = 8;
const BITS: usize = 32;

// (degree s, coefficient a, initial m_1..m_s) for dimensions 2..=8.
const JOE_KUO: [(u32, u32, &[u32]); MAX_DIM - 1] = [
    (1, 0, &[1]),
    (2, 1, &[1, 3]),
    (3, 1, &[1, 3, 1]),
    (3, 2, &[1, 1, 1]),
    (4, 1, &[1, 1, 3, 3]),
    (4, 4, &[1, 3, 5, 13]),
    (5, 2, &[1, 1, 5, 5, 17]),
];

fn direction_numbers(dim: usize) -> [u32; BITS] {
    let mut v = [0u32; BITS];
    if dim == 0 {
        for (j, vj) in v.iter_mut().enumerate() {
            *vj = 1 << (BITS - 1 - j);
        }
        return v;
    }
    let (s, a, m) = JOE_KUO[dim - 1];
    let s = s as usize;
    for j in 0..BITS {
        if j < s {
            v[j] = m[j] << (BITS - 1 - j);
        } else {
            let mut x = v[j - s] ^ (v[j - s] >> s);
            for l in 1..s {
                if (a >> (s - 1 - l)) & 1 == 1 {
                    x ^= v[j - l];
                }
            }
            v[j] = x;
        }
    }
    v
}

/// Unscrambled Sobol generator producing 32-bit integer coordinates.
#[derive(Debug, Clone)]
pub struct Sobol {
    v: Vec<[u32; BITS]>,
    x: Vec<u32>,
    index: u64,
}

impl Sobol {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return param(format!(
                "Sobol dimension must be in 1..={MAX_DIM}, got {dim}"
            ));
        }
        Ok(Self {
            v: (0..dim).map(direction_numbers).collect(),
            x: vec![0; dim],
            index: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// Writes the next point's integer coordinates; the first point is the origin.
    pub fn next_raw(&mut self) -> &[u32] {
        if self.index > 0 {
            let c = (self.index - 1).trailing_ones() as usize;
            assert!(c < BITS, "Sobol sequence exhausted");
            for (x, v) in self.x.iter_mut().zip(&self.v) {
                *x ^= v[c];
            }
        }
        self.index += 1;
        &self.x
    }

    /// Next point with a 64-bit digital shift per axis, mapped to the open unit interval.
    pub fn next_shifted(&mut self, shifts: &[u64], out: &mut [f64]) {
        let raw = self.next_raw();
        for ((o, &x), &s) in out.iter_mut().zip(raw).zip(shifts) {
            let bits = (((x as u64) << 32) ^ s) >> 11;
            *o = (bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
        }
    }
}
