//! Dense exact linear algebra over F_p.
//!
//! Binary matrices keep each row as packed `u64` words and do row operations
//! with XOR. Odd characteristic rows are byte residues.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Packed { words: usize, data: Vec<u64> },
    Bytes(Vec<u8>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFp {
    p: u32,
    rows: usize,
    cols: usize,
    storage: Storage,
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r, mut b, mut e) = (1u32, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl MatrixFp {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        let storage = if p == 2 {
            let words = cols.div_ceil(64);
            Storage::Packed { words, data: vec![0; rows * words] }
        } else {
            assert!(p < 256, "entries are stored as bytes");
            Storage::Bytes(vec![0; rows * cols])
        };
        MatrixFp { p, rows, cols, storage }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v % p);
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        match &self.storage {
            Storage::Packed { words, data } => ((data[r * words + c / 64] >> (c % 64)) & 1) as u32,
            Storage::Bytes(data) => data[r * self.cols + c] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        let v = v % self.p;
        match &mut self.storage {
            Storage::Packed { words, data } => {
                let w = &mut data[r * *words + c / 64];
                let bit = 1u64 << (c % 64);
                if v == 1 {
                    *w |= bit;
                } else {
                    *w &= !bit;
                }
            }
            Storage::Bytes(data) => data[r * self.cols + c] = v as u8,
        }
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Packed words of a binary row.
    pub fn row_words(&self, r: usize) -> Option<&[u64]> {
        match &self.storage {
            Storage::Packed { words, data } => Some(&data[r * words..(r + 1) * words]),
            Storage::Bytes(_) => None,
        }
    }

    pub fn push_row(&mut self, row: &[u32]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: row.len() });
        }
        match &mut self.storage {
            Storage::Packed { words, data } => data.extend(std::iter::repeat_n(0, *words)),
            Storage::Bytes(data) => data.extend(std::iter::repeat_n(0, self.cols)),
        }
        self.rows += 1;
        for (c, &v) in row.iter().enumerate() {
            self.set(self.rows - 1, c, v);
        }
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &MatrixFp) -> Result<MatrixFp> {
        if other.cols != self.cols || other.p != self.p {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.cols });
        }
        let mut out = self.clone();
        match (&mut out.storage, &other.storage) {
            (Storage::Packed { data, .. }, Storage::Packed { data: o, .. }) => data.extend_from_slice(o),
            (Storage::Bytes(data), Storage::Bytes(o)) => data.extend_from_slice(o),
            _ => unreachable!("same characteristic implies same storage"),
        }
        out.rows += other.rows;
        Ok(out)
    }

    pub fn row_weight(&self, r: usize) -> usize {
        match &self.storage {
            Storage::Packed { words, data } => {
                data[r * words..(r + 1) * words].iter().map(|w| w.count_ones() as usize).sum()
            }
            Storage::Bytes(data) => data[r * self.cols..(r + 1) * self.cols].iter().filter(|&&v| v != 0).count(),
        }
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row_weight(r) == 0
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let width = self.row_width();
        match &mut self.storage {
            Storage::Packed { data, .. } => swap_chunks(data, a, b, width),
            Storage::Bytes(data) => swap_chunks(data, a, b, width),
        }
    }

    fn row_width(&self) -> usize {
        match &self.storage {
            Storage::Packed { words, .. } => *words,
            Storage::Bytes(_) => self.cols,
        }
    }

    /// `row[dst] += factor · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: u32) {
        let factor = factor % self.p;
        if factor == 0 || dst == src {
            return;
        }
        let width = self.row_width();
        let p = self.p;
        match &mut self.storage {
            Storage::Packed { data, .. } => {
                let (d, s) = split_rows(data, dst, src, width);
                for (x, y) in d.iter_mut().zip(s) {
                    *x ^= *y;
                }
            }
            Storage::Bytes(data) => {
                let (d, s) = split_rows(data, dst, src, width);
                for (x, &y) in d.iter_mut().zip(s.iter()) {
                    *x = ((*x as u32 + factor * y as u32) % p) as u8;
                }
            }
        }
    }

    pub fn scale_row(&mut self, r: usize, factor: u32) {
        let factor = factor % self.p;
        if let Storage::Bytes(data) = &mut self.storage {
            let p = self.p;
            for x in &mut data[r * self.cols..(r + 1) * self.cols] {
                *x = ((*x as u32 * factor) % p) as u8;
            }
        } else if factor == 0 {
            let Storage::Packed { words, data } = &mut self.storage else { unreachable!() };
            data[r * *words..(r + 1) * *words].fill(0);
        }
    }

    /// Reduced row echelon form. Pivots are taken column by column, using the
    /// first row (top to bottom) with a nonzero entry.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(r) = (next..m.rows).find(|&r| m.get(r, c) != 0) else { continue };
            m.swap_rows(next, r);
            let lead = m.get(next, c);
            if lead != 1 {
                m.scale_row(next, inv_mod_p(lead, m.p));
            }
            for other in 0..m.rows {
                if other != next {
                    let v = m.get(other, c);
                    if v != 0 {
                        m.add_row_multiple(other, next, m.p - v);
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        Echelon { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{v : M·vᵀ = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> MatrixFp {
        self.rref().kernel_basis()
    }

    pub fn rowspace_contains(&self, v: &[u32]) -> Result<bool> {
        self.rref().contains(v)
    }

    /// Whether `M·vᵀ = 0`.
    pub fn annihilates(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).all(|r| self.dot_row(r, v) == 0))
    }

    fn dot_row(&self, r: usize, v: &[u32]) -> u32 {
        (0..self.cols).fold(0u64, |acc, c| (acc + self.get(r, c) as u64 * v[c] as u64) % self.p as u64) as u32
    }

    /// Whether `self` and `other` have the same right kernel: every kernel
    /// vector of either is annihilated by the other.
    pub fn same_kernel(&self, other: &MatrixFp) -> Result<bool> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.cols });
        }
        let (k1, k2) = (self.kernel_basis(), other.kernel_basis());
        for r in 0..k1.rows {
            if !other.annihilates(&k1.row(r))? {
                return Ok(false);
            }
        }
        for r in 0..k2.rows {
            if !self.annihilates(&k2.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Copy with columns reordered: column `c` of the result is column
    /// `perm[c]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> MatrixFp {
        let mut out = Self::zeros(self.p, self.rows, self.cols);
        for r in 0..self.rows {
            for (c, &src) in perm.iter().enumerate() {
                let v = self.get(r, src);
                if v != 0 {
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Text export: a header line `cols rows p`, then one line per row with
    /// the highest-index column first. Entries are single digits for
    /// `p <= 10` and space separated otherwise.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.cols, self.rows, self.p);
        for r in 0..self.rows {
            let digits: Vec<String> = (0..self.cols).rev().map(|c| self.get(r, c).to_string()).collect();
            let sep = if self.p <= 10 { "" } else { " " };
            let _ = writeln!(out, "{}", digits.join(sep));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<MatrixFp> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header field {t:?}"))))
            .collect::<Result<_>>()?;
        let [cols, rows, p] = nums[..] else {
            return Err(Error::Parse("header must be `cols rows p`".into()));
        };
        let p = p as u32;
        if !crate::field::is_prime(p) || p >= 256 {
            return Err(Error::Parse(format!("unsupported modulus {p}")));
        }
        let mut m = Self::zeros(p, rows, cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let entries: Vec<u32> = if p <= 10 {
                line.trim()
                    .chars()
                    .map(|ch| ch.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit {ch:?}"))))
                    .collect::<Result<_>>()?
            } else {
                line.split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
                    .collect::<Result<_>>()?
            };
            if entries.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: entries.len() });
            }
            for (i, &v) in entries.iter().enumerate() {
                if v >= p {
                    return Err(Error::Parse(format!("entry {v} not reduced mod {p}")));
                }
                m.set(r, cols - 1 - i, v);
            }
        }
        Ok(m)
    }
}

fn swap_chunks<T>(data: &mut [T], a: usize, b: usize, width: usize) {
    let (lo, hi) = (a.min(b), a.max(b));
    let (head, tail) = data.split_at_mut(hi * width);
    head[lo * width..(lo + 1) * width].swap_with_slice(&mut tail[..width]);
}

fn split_rows<T>(data: &mut [T], dst: usize, src: usize, width: usize) -> (&mut [T], &[T]) {
    if dst < src {
        let (head, tail) = data.split_at_mut(src * width);
        (&mut head[dst * width..(dst + 1) * width], &tail[..width])
    } else {
        let (head, tail) = data.split_at_mut(dst * width);
        (&mut tail[..width], &head[src * width..(src + 1) * width])
    }
}

/// Result of [`MatrixFp::rref`].
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Same shape as the input; zero rows at the bottom.
    pub matrix: MatrixFp,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn kernel_basis(&self) -> MatrixFp {
        let m = &self.matrix;
        let p = m.p;
        let mut is_pivot = vec![false; m.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = MatrixFp::zeros(p, free.len(), m.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (r, &pc) in self.pivots.iter().enumerate() {
                let v = m.get(r, f);
                if v != 0 {
                    out.set(k, pc, p - v);
                }
            }
        }
        out
    }

    /// Row-space membership by one reduction pass against the pivots.
    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        let m = &self.matrix;
        if v.len() != m.cols {
            return Err(Error::LengthMismatch { expected: m.cols, got: v.len() });
        }
        let p = m.p;
        let mut work: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let x = work[pc];
            if x != 0 {
                let factor = p - x;
                for (c, w) in work.iter_mut().enumerate() {
                    let e = m.get(r, c);
                    if e != 0 {
                        *w = (*w + factor * e) % p;
                    }
                }
            }
        }
        Ok(work.iter().all(|&x| x == 0))
    }
}

/// A vector over F_{q^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorQm {
    pub field: FieldSpec,
    pub entries: Vec<FieldElement>,
}

impl VectorQm {
    pub fn new(field: &FieldSpec, entries: Vec<FieldElement>) -> Self {
        VectorQm { field: field.clone(), entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ c_i · v_i` for an F_p vector `c`.
    pub fn dot_fp(&self, c: &[u32]) -> Result<FieldElement> {
        if c.len() != self.entries.len() {
            return Err(Error::LengthMismatch { expected: self.entries.len(), got: c.len() });
        }
        let f = &self.field;
        Ok(self.entries.iter().zip(c).fold(FieldElement::ZERO, |acc, (&v, &ci)| f.add(acc, f.scale(ci, v))))
    }

    /// Componentwise `p^k` power.
    pub fn pth_power(&self, k: u32) -> VectorQm {
        let f = &self.field;
        VectorQm::new(f, self.entries.iter().map(|&v| f.frobenius_p(v, k)).collect())
    }

    /// The `s·m` coordinate rows of this vector over F_p.
    pub fn coordinate_rows(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let coords: Vec<Vec<u32>> = self.entries.iter().map(|&v| f.coeffs(v)).collect();
        (0..f.degree()).map(|k| coords.iter().map(|c| c[k]).collect()).collect()
    }
}

/// Expands F_{q^m}-valued rows into F_p rows via polynomial-basis
/// coordinates (`s·m` rows per input row).
pub fn expand_to_fp(rows: &[VectorQm]) -> Result<MatrixFp> {
    let Some(first) = rows.first() else {
        return Err(Error::Precondition("no rows to expand".into()));
    };
    let field = &first.field;
    let n = first.len();
    let mut out = MatrixFp::zeros(field.p(), rows.len() * field.degree(), n);
    for (i, row) in rows.iter().enumerate() {
        if row.field != *field {
            return Err(Error::MixedFields);
        }
        if row.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: row.len() });
        }
        for (c, &v) in row.entries.iter().enumerate() {
            for (k, d) in field.coeffs(v).into_iter().enumerate() {
                if d != 0 {
                    out.set(i * field.degree() + k, c, d);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(rows: &[&[u32]]) -> MatrixFp {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        MatrixFp::from_rows(2, rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn rref_basics() {
        let id = MatrixFp::identity(3, 4);
        let e = id.rref();
        assert_eq!(e.matrix, id);
        assert_eq!(e.rank, 4);
        let z = MatrixFp::zeros(2, 3, 5);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(z.rref().matrix, z);
        assert_eq!(m2(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(MatrixFp::identity(2, 5).kernel_basis().rows(), 0);
        assert_eq!(MatrixFp::zeros(3, 1, 6).kernel_basis().rows(), 6);
        let k = m2(&[&[1, 1, 1, 1]]).kernel_basis();
        assert_eq!(k.rows(), 3);
        for r in 0..3 {
            assert_eq!(k.row_weight(r) % 2, 0);
        }
    }

    #[test]
    fn rowspace_membership() {
        let m = m2(&[&[1, 0], &[0, 1]]);
        assert!(m.rowspace_contains(&[1, 1]).unwrap());
        assert!(m.rowspace_contains(&[0, 0]).unwrap());
        let m = m2(&[&[1, 1, 0]]);
        assert!(m.rowspace_contains(&[1, 1, 0]).unwrap());
        assert!(!m.rowspace_contains(&[1, 0, 0]).unwrap());
        assert!(m.rowspace_contains(&[1, 0]).is_err());
    }

    #[test]
    fn same_kernel_examples() {
        let a = m2(&[&[1, 1, 0, 1], &[0, 1, 1, 1]]);
        let b = m2(&[&[0, 1, 1, 1], &[1, 1, 0, 1]]);
        assert!(a.same_kernel(&b).unwrap());
        // row mixing keeps the kernel
        let c = m2(&[&[1, 0, 1, 0], &[0, 1, 1, 1]]);
        assert!(a.same_kernel(&c).unwrap());
        let d = a.stack(&m2(&[&[1, 0, 0, 0]])).unwrap();
        assert!(!a.same_kernel(&d).unwrap());
        assert!(a.same_kernel(&MatrixFp::zeros(2, 1, 3)).is_err());
    }

    #[test]
    fn expansion_examples() {
        let f = FieldSpec::with_modulus(2, 1, 3, &[1, 1, 0, 1]).unwrap();
        let zero = VectorQm::new(&f, vec![FieldElement::ZERO; 4]);
        let e = expand_to_fp(&[zero]).unwrap();
        assert_eq!((e.rows(), e.rank()), (3, 0));
        let ones = VectorQm::new(&f, vec![FieldElement::ONE; 4]);
        let e = expand_to_fp(&[ones]).unwrap();
        assert_eq!(e.row(0), vec![1, 1, 1, 1]);
        assert!(e.is_zero_row(1) && e.is_zero_row(2));
        let gamma = f.from_coeffs(&[0, 1, 0]).unwrap();
        let v = VectorQm::new(&f, vec![gamma, f.mul(gamma, gamma)]);
        let e = expand_to_fp(&[v]).unwrap();
        assert_eq!(e.to_rows(), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn text_round_trip_and_order() {
        let m = m2(&[&[1, 0, 0], &[0, 1, 1]]);
        let t = m.to_text();
        assert_eq!(t, "3 2 2\n001\n110\n");
        assert_eq!(MatrixFp::from_text(&t).unwrap(), m);
        let big = MatrixFp::from_rows(11, 2, &[vec![10, 3]]).unwrap();
        assert_eq!(MatrixFp::from_text(&big.to_text()).unwrap(), big);
        assert!(MatrixFp::from_text("2 1 2\n1x\n").is_err());
    }
}
