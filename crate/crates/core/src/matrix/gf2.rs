//! Bit-packed GF(2) kernels. Rows are stored as `u64` words; row operations
//! are XORs.

use crate::gf::Elem;

pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn from_entries(n: usize, entries: &[Elem]) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if entries[i * n + j] != 0 {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        BitMatrix { n, words, bits }
    }

    pub(crate) fn to_entries(&self) -> Vec<Elem> {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = ((self.row(i)[j / 64] >> (j % 64)) & 1) as Elem;
            }
        }
        out
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn mul(&self, other: &BitMatrix) -> BitMatrix {
        let (n, w) = (self.n, self.words);
        let mut bits = vec![0u64; n * w];
        for i in 0..n {
            let out = &mut bits[i * w..(i + 1) * w];
            for (k, &word) in self.row(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let j = k * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    for (o, &b) in out.iter_mut().zip(other.row(j)) {
                        *o ^= b;
                    }
                }
            }
        }
        BitMatrix { n, words: w, bits }
    }

    pub(crate) fn rank(mut self) -> usize {
        let (n, w) = (self.n, self.words);
        let mut rank = 0;
        for col in 0..n {
            let (cw, cb) = (col / 64, 1u64 << (col % 64));
            let Some(piv) = (rank..n).find(|&r| self.bits[r * w + cw] & cb != 0) else {
                continue;
            };
            if piv != rank {
                for k in 0..w {
                    self.bits.swap(piv * w + k, rank * w + k);
                }
            }
            for r in rank + 1..n {
                if self.bits[r * w + cw] & cb != 0 {
                    for k in cw..w {
                        let v = self.bits[rank * w + k];
                        self.bits[r * w + k] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
