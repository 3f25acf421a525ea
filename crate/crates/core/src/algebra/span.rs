//! Incremental sparse Gaussian elimination.
//!
//! `Span` maintains a row-reduced spanning set keyed by lead coordinate;
//! `KernelTracker` additionally records how each inserted row was reduced, so
//! a row that dies yields an exact linear dependency over the inserted tags.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::rat::Rat;

/// Sorted sparse vector over an ordered coordinate set. No zero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<K: Ord + Clone> {
    pub terms: Vec<(K, Rat)>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn zero() -> Self {
        SparseVec { terms: Vec::new() }
    }

    pub fn unit(key: K) -> Self {
        SparseVec {
            terms: vec![(key, Rat::one())],
        }
    }

    /// From unsorted (key, coeff) pairs; merges duplicates, drops zeros.
    pub fn collect(mut pairs: Vec<(K, Rat)>) -> Self {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(K, Rat)> = Vec::with_capacity(pairs.len());
        for (k, c) in pairs {
            match terms.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => terms.push((k, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        SparseVec { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(K, Rat)> {
        self.terms.first()
    }

    /// self += c * other
    pub fn axpy(&mut self, c: &Rat, other: &SparseVec<K>) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut it_a = self.terms.iter();
        let mut it_b = other.terms.iter();
        let mut a = it_a.next();
        let mut b = it_b.next();
        while let (Some((ka, va)), Some((kb, vb))) = (a, b) {
            match ka.cmp(kb) {
                std::cmp::Ordering::Less => {
                    out.push((ka.clone(), va.clone()));
                    a = it_a.next();
                }
                std::cmp::Ordering::Greater => {
                    out.push((kb.clone(), c * vb));
                    b = it_b.next();
                }
                std::cmp::Ordering::Equal => {
                    let v = va + c * vb;
                    if !v.is_zero() {
                        out.push((ka.clone(), v));
                    }
                    a = it_a.next();
                    b = it_b.next();
                }
            }
        }
        while let Some((ka, va)) = a {
            out.push((ka.clone(), va.clone()));
            a = it_a.next();
        }
        while let Some((kb, vb)) = b {
            out.push((kb.clone(), c * vb));
            b = it_b.next();
        }
        self.terms = out;
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
        } else {
            for (_, v) in &mut self.terms {
                *v *= c;
            }
        }
    }

    /// Divide so the lead coefficient becomes 1.
    pub fn normalize(&mut self) {
        if let Some((_, lead)) = self.terms.first() {
            let inv = Rat::one() / lead;
            self.scale(&inv);
        }
    }
}

/// Row-reduced span with normalized rows keyed by lead coordinate.
#[derive(Clone, Debug, Default)]
pub struct Span<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Span {
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Fully front-reduce `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        loop {
            let Some((k, c)) = v.lead().cloned() else {
                return v;
            };
            let Some(row) = self.rows.get(&k) else {
                return v;
            };
            v.axpy(&-c, row);
        }
    }

    /// Reduce and, if independent, store. Returns true when the span grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        r.normalize();
        let key = r.lead().unwrap().0.clone();
        self.rows.insert(key, r);
        true
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Span that also tracks reduction history: `push` returns the dependency
/// vector (over insertion tags) whenever the pushed row is dependent.
#[derive(Clone, Debug, Default)]
pub struct KernelTracker<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
}

impl<K: Ord + Clone> KernelTracker<K> {
    pub fn new() -> Self {
        KernelTracker {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, v: SparseVec<K>, tag: usize) -> Option<SparseVec<usize>> {
        let mut r = v;
        let mut hist = SparseVec::unit(tag);
        loop {
            let Some((k, c)) = r.lead().cloned() else {
                return Some(hist);
            };
            let Some((row, rh)) = self.rows.get(&k) else {
                // independent: normalize and store
                let inv = Rat::one() / &c;
                r.scale(&inv);
                hist.scale(&inv);
                let key = r.lead().unwrap().0.clone();
                self.rows.insert(key, (r, hist));
                return None;
            };
            let f = -c;
            r.axpy(&f, row);
            hist.axpy(&f, rh);
        }
    }
}
