//! Addressable pairing heap over dense integer ids.
//!
//! Stands in for the Fibonacci heap of the textbook bounds: O(1) insert,
//! O(log n) amortized extract-min, and decrease-key that is O(1) in practice
//! (o(log n) amortized). Entries are ordered by `(key, id)`, so equal keys
//! leave in increasing id order and every extraction sequence is
//! deterministic. Key comparisons go through the caller's [`Meter`].
//!
//! Storage is indexed by id and sized once; [`PairingHeap::clear`] only
//! resets the ids touched since the last clear, so one heap can serve many
//! short searches over a large graph.

use thiserror::Error;

use crate::meter::Meter;

const NIL: u32 = u32::MAX;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PqError {
    #[error("id {0} is already in the queue")]
    DuplicateKey(usize),
    #[error("id {0} is not in the queue")]
    NotFound(usize),
    #[error("new key for id {0} is larger than its current key")]
    KeyIncrease(usize),
}

#[derive(Debug, Clone)]
pub struct PairingHeap {
    key: Vec<f64>,
    child: Vec<u32>,
    next: Vec<u32>,
    // Parent for a first child, left sibling otherwise.
    prev: Vec<u32>,
    present: Vec<bool>,
    touched: Vec<u32>,
    scratch: Vec<u32>,
    root: u32,
    len: usize,
}

impl PairingHeap {
    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity < NIL as usize);
        PairingHeap {
            key: vec![f64::INFINITY; capacity],
            child: vec![NIL; capacity],
            next: vec![NIL; capacity],
            prev: vec![NIL; capacity],
            present: vec![false; capacity],
            touched: Vec::new(),
            scratch: Vec::new(),
            root: NIL,
            len: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.key.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, id: usize) -> bool {
        self.present.get(id).copied().unwrap_or(false)
    }

    pub fn key(&self, id: usize) -> Option<f64> {
        self.contains(id).then(|| self.key[id])
    }

    pub fn peek(&self) -> Option<(usize, f64)> {
        (self.root != NIL).then(|| (self.root as usize, self.key[self.root as usize]))
    }

    /// Empties the queue in time proportional to the ids used since the last
    /// clear.
    pub fn clear(&mut self) {
        for &id in &self.touched {
            let i = id as usize;
            self.present[i] = false;
            self.child[i] = NIL;
            self.next[i] = NIL;
            self.prev[i] = NIL;
        }
        self.touched.clear();
        self.root = NIL;
        self.len = 0;
    }

    pub fn insert<M: Meter>(&mut self, id: usize, key: f64, meter: &M) -> Result<(), PqError> {
        if self.contains(id) {
            return Err(PqError::DuplicateKey(id));
        }
        assert!(id < self.capacity(), "id {id} beyond heap capacity");
        let x = id as u32;
        self.key[id] = key;
        self.child[id] = NIL;
        self.next[id] = NIL;
        self.prev[id] = NIL;
        self.present[id] = true;
        self.touched.push(x);
        self.len += 1;
        self.root = if self.root == NIL {
            x
        } else {
            self.link(self.root, x, meter)
        };
        Ok(())
    }

    /// Lowers the key of `id`. An equal key is accepted as a no-op. The
    /// precondition check is not metered; callers only decrease after a
    /// metered comparison has already decided the new key is smaller.
    pub fn decrease_key<M: Meter>(
        &mut self,
        id: usize,
        key: f64,
        meter: &M,
    ) -> Result<(), PqError> {
        if !self.contains(id) {
            return Err(PqError::NotFound(id));
        }
        if key > self.key[id] {
            return Err(PqError::KeyIncrease(id));
        }
        if key == self.key[id] {
            return Ok(());
        }
        self.key[id] = key;
        let x = id as u32;
        if x == self.root {
            return Ok(());
        }
        self.detach(x);
        self.root = self.link(self.root, x, meter);
        Ok(())
    }

    /// Removes an entry of minimal `(key, id)`.
    pub fn extract_min<M: Meter>(&mut self, meter: &M) -> Option<(usize, f64)> {
        if self.root == NIL {
            return None;
        }
        let r = self.root;
        let ri = r as usize;
        self.present[ri] = false;
        self.len -= 1;

        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        let mut c = self.child[ri];
        while c != NIL {
            let nx = self.next[c as usize];
            self.next[c as usize] = NIL;
            self.prev[c as usize] = NIL;
            scratch.push(c);
            c = nx;
        }
        self.child[ri] = NIL;

        // Two-pass pairing: link neighbours left to right, then fold the
        // results right to left.
        let mut paired = 0;
        let mut i = 0;
        while i + 1 < scratch.len() {
            scratch[paired] = self.link(scratch[i], scratch[i + 1], meter);
            paired += 1;
            i += 2;
        }
        if i < scratch.len() {
            scratch[paired] = scratch[i];
            paired += 1;
        }
        let mut root = NIL;
        for j in (0..paired).rev() {
            root = if root == NIL {
                scratch[j]
            } else {
                self.link(scratch[j], root, meter)
            };
        }
        self.root = root;
        self.scratch = scratch;
        Some((ri, self.key[ri]))
    }

    #[inline]
    fn less<M: Meter>(&self, a: u32, b: u32, meter: &M) -> bool {
        match meter.cmp(self.key[a as usize], self.key[b as usize]) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => a < b,
        }
    }

    /// Links two detached roots; returns the new root.
    fn link<M: Meter>(&mut self, a: u32, b: u32, meter: &M) -> u32 {
        let (top, sub) = if self.less(b, a, meter) {
            (b, a)
        } else {
            (a, b)
        };
        let (t, s) = (top as usize, sub as usize);
        let first = self.child[t];
        self.next[s] = first;
        if first != NIL {
            self.prev[first as usize] = sub;
        }
        self.prev[s] = top;
        self.child[t] = sub;
        self.next[t] = NIL;
        self.prev[t] = NIL;
        top
    }

    fn detach(&mut self, x: u32) {
        let i = x as usize;
        let p = self.prev[i];
        let nx = self.next[i];
        if self.child[p as usize] == x {
            self.child[p as usize] = nx;
        } else {
            self.next[p as usize] = nx;
        }
        if nx != NIL {
            self.prev[nx as usize] = p;
        }
        self.next[i] = NIL;
        self.prev[i] = NIL;
    }
}
