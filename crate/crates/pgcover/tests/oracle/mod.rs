//! Reference implementation for the acceptance checks.
//!
//! Shares nothing with the library beyond the modulus: field elements are
//! coefficient vectors multiplied by schoolbook polynomial products,
//! points are enumerated by brute force, and incidence is a dot product.

#![allow(dead_code)]

use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct Field {
    pub p: u32,
    pub h: u32,
    pub q: u32,
    /// Monic, c_0 first.
    pub modulus: Vec<u32>,
}

impl Field {
    pub fn new(p: u32, h: u32, modulus: &[u32]) -> Self {
        assert_eq!(modulus.len(), h as usize + 1);
        assert_eq!(modulus[h as usize], 1);
        Field { p, h, q: p.pow(h), modulus: modulus.to_vec() }
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.h as usize];
        for x in d.iter_mut() {
            *x = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let s: Vec<u32> = self.digits(a).iter().map(|u| (self.p - u) % self.p).collect();
        self.undigits(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let h = self.h as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * h];
        for i in 0..h {
            for j in 0..h {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        // reduce from the top: t^k = t^(k-h) * (t^h) = -t^(k-h) * sum c_i t^i
        for k in (h..2 * h).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..h {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - h + i] = (prod[k - h + i] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod[..h].iter().map(|&v| v as u32).collect();
        self.undigits(&d)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn dot(&self, x: &[u32], y: &[u32]) -> u32 {
        x.iter().zip(y).fold(0, |acc, (&u, &v)| self.add(acc, self.mul(u, v)))
    }

    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            let inv = self.inv(m[r][c]).unwrap();
            m[r] = m[r].iter().map(|&v| self.mul(v, inv)).collect();
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    let row_r = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&row_r) {
                        *x = self.add(*x, self.neg(self.mul(f, *y)));
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// PG(n,q) with points (= hyperplane coordinate vectors) enumerated in
/// an order of the oracle's own choosing.
pub struct Space {
    pub n: usize,
    pub field: Field,
    pub vectors: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// incidence[h] = bitset of points on hyperplane h
    pub incidence: Vec<Vec<u64>>,
    pub words: usize,
}

impl Space {
    pub fn new(n: usize, field: Field) -> Self {
        let q = field.q;
        let len = n + 1;
        let mut vectors = Vec::new();
        let total = (q as u64).pow(len as u32);
        for code in 1..total {
            let mut v = vec![0u32; len];
            let mut c = code;
            for x in v.iter_mut().rev() {
                *x = (c % q as u64) as u32;
                c /= q as u64;
            }
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                vectors.push(v);
            }
        }
        let index = vectors.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let words = vectors.len().div_ceil(64);
        let incidence = vectors
            .iter()
            .map(|h| {
                let mut m = vec![0u64; words];
                for (i, pt) in vectors.iter().enumerate() {
                    if field.dot(h, pt) == 0 {
                        m[i / 64] |= 1 << (i % 64);
                    }
                }
                m
            })
            .collect();
        Space { n, field, vectors, index, incidence, words }
    }

    pub fn size(&self) -> usize {
        self.vectors.len()
    }

    pub fn normalize(&self, v: &[u32]) -> Vec<u32> {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero");
        let inv = self.field.inv(lead).unwrap();
        v.iter().map(|&x| self.field.mul(x, inv)).collect()
    }

    pub fn index(&self, v: &[u32]) -> usize {
        self.index[&self.normalize(v)]
    }

    pub fn on(&self, point: usize, hyperplane: usize) -> bool {
        self.incidence[hyperplane][point / 64] >> (point % 64) & 1 == 1
    }

    pub fn covered(&self, hyperplanes: &[usize]) -> Vec<u64> {
        let mut m = vec![0u64; self.words];
        for &h in hyperplanes {
            for (x, y) in m.iter_mut().zip(&self.incidence[h]) {
                *x |= y;
            }
        }
        m
    }

    /// Point indices covered by none of `hyperplanes`.
    pub fn holes(&self, hyperplanes: &[usize]) -> Vec<usize> {
        let m = self.covered(hyperplanes);
        (0..self.size()).filter(|&i| m[i / 64] >> (i % 64) & 1 == 0).collect()
    }

    /// Hyperplanes through `point` meeting `set` only there.
    pub fn tangents(&self, set: &[usize], point: usize) -> usize {
        (0..self.size())
            .filter(|&h| self.on(point, h) && set.iter().all(|&x| x == point || !self.on(x, h)))
            .count()
    }

    pub fn rank_of(&self, idx: &[usize]) -> usize {
        let rows: Vec<Vec<u32>> = idx.iter().map(|&i| self.vectors[i].clone()).collect();
        self.field.rank(&rows)
    }

    pub fn theta(&self, k: u32) -> u64 {
        (0..=k).map(|i| (self.field.q as u64).pow(i)).sum()
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
