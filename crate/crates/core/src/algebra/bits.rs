use crate::error::{Error, Result};

const MAX_COLS: usize = 4096;

/// Matrix over `F_2` with rows packed 64 columns per word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if cols > MAX_COLS {
            return Err(Error::resource(format!("{cols} columns exceeds the {MAX_COLS}-column cap")));
        }
        let stride = cols.div_ceil(64);
        Ok(Self { rows, cols, stride, data: vec![0; rows * stride] })
    }

    /// Builds a matrix whose rows are the low `cols` bits of each mask.
    pub fn from_masks(cols: usize, masks: &[u64]) -> Result<Self> {
        if cols > 64 {
            return Err(Error::data("row masks hold at most 64 columns"));
        }
        let mut m = Self::new(masks.len(), cols)?;
        let keep = if cols == 64 { u64::MAX } else { (1u64 << cols) - 1 };
        for (r, &mask) in masks.iter().enumerate() {
            if mask & !keep != 0 {
                return Err(Error::data(format!("row {r} has bits beyond column {cols}")));
            }
            m.data[r * m.stride] = mask;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let w = &mut self.data[r * self.stride + c / 64];
        if bit {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Reduced row-echelon form over `F_2` together with the rank.
    pub fn rref(&self) -> (usize, BitMatrix) {
        let mut m = self.clone();
        let mut top = 0;
        for c in 0..self.cols {
            if top == m.rows {
                break;
            }
            let Some(p) = (top..m.rows).find(|&r| m.get(r, c)) else { continue };
            m.swap_rows(top, p);
            for r in 0..m.rows {
                if r != top && m.get(r, c) {
                    m.xor_rows(r, top);
                }
            }
            top += 1;
        }
        (top, m)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// row[dst] ^= row[src]
    fn xor_rows(&mut self, dst: usize, src: usize) {
        for w in 0..self.stride {
            let v = self.data[src * self.stride + w];
            self.data[dst * self.stride + w] ^= v;
        }
    }
}
