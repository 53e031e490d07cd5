//! Extensible pool of 32-slot coefficient buffers.
//!
//! Buffers are handed out by value and must be given back with
//! [`MultivectorPool::release`]. Growth is the only time the pool reserves
//! memory; [`MultivectorPool::allocation_count`] counts those growth events so
//! callers can verify steady-state frames reserve nothing.
//!
//! Releasing a buffer consumes it, so a double release does not compile:
//!
//! ```compile_fail
//! use cga_motion::algebra::MultivectorPool;
//! let mut pool = MultivectorPool::new();
//! let buf = pool.acquire();
//! pool.release(buf).unwrap();
//! pool.release(buf).unwrap();
//! ```

use std::ops::{Deref, DerefMut};
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use super::blade::BLADE_COUNT;
use super::multivector::Coeffs;

pub const DEFAULT_CAPACITY: usize = 128;
pub const DEFAULT_GROW_INCREMENT: usize = 32;

static NEXT_POOL_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PoolError {
    #[error("buffer was acquired from a different pool")]
    ForeignBuffer,
    #[error("buffer slot {0} is not currently acquired")]
    NotAcquired(u32),
    #[error("grow increment must be at least 1")]
    ZeroGrowIncrement,
}

/// A zero-filled coefficient buffer on loan from a [`MultivectorPool`].
pub struct PoolBuffer {
    pool_id: u64,
    slot: u32,
    data: Box<Coeffs>,
}

impl PoolBuffer {
    pub fn slot(&self) -> u32 {
        self.slot
    }
}

impl Deref for PoolBuffer {
    type Target = Coeffs;
    fn deref(&self) -> &Coeffs {
        &self.data
    }
}

impl DerefMut for PoolBuffer {
    fn deref_mut(&mut self) -> &mut Coeffs {
        &mut self.data
    }
}

impl std::fmt::Debug for PoolBuffer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PoolBuffer")
            .field("pool_id", &self.pool_id)
            .field("slot", &self.slot)
            .finish()
    }
}

/// Single-owner pool; not shared across threads.
#[derive(Debug)]
pub struct MultivectorPool {
    id: u64,
    free: Vec<PoolBuffer>,
    on_loan: Vec<bool>,
    capacity: usize,
    acquired: usize,
    grow_increment: usize,
    growth_events: u64,
}

impl Default for MultivectorPool {
    fn default() -> Self {
        Self::new()
    }
}

impl MultivectorPool {
    pub fn new() -> Self {
        Self::with_capacity(DEFAULT_CAPACITY, DEFAULT_GROW_INCREMENT).expect("default grow increment is nonzero")
    }

    pub fn with_capacity(capacity: usize, grow_increment: usize) -> Result<Self, PoolError> {
        if grow_increment == 0 {
            return Err(PoolError::ZeroGrowIncrement);
        }
        let mut pool = Self {
            id: NEXT_POOL_ID.fetch_add(1, Ordering::Relaxed),
            free: Vec::new(),
            on_loan: Vec::new(),
            capacity: 0,
            acquired: 0,
            grow_increment,
            growth_events: 0,
        };
        pool.reserve(capacity);
        Ok(pool)
    }

    fn reserve(&mut self, additional: usize) {
        let new_capacity = self.capacity + additional;
        self.free.reserve_exact(new_capacity - self.free.len());
        self.on_loan.resize(new_capacity, false);
        for slot in self.capacity..new_capacity {
            self.free.push(PoolBuffer {
                pool_id: self.id,
                slot: slot as u32,
                data: Box::new([0.0; BLADE_COUNT]),
            });
        }
        self.capacity = new_capacity;
    }

    /// Hands out a zero-filled buffer, growing the pool by the grow
    /// increment when every buffer is on loan.
    pub fn acquire(&mut self) -> PoolBuffer {
        if self.free.is_empty() {
            self.reserve(self.grow_increment);
            self.growth_events += 1;
        }
        let mut buf = self.free.pop().expect("pool has a free buffer after growth");
        buf.data.fill(0.0);
        self.on_loan[buf.slot as usize] = true;
        self.acquired += 1;
        buf
    }

    pub fn release(&mut self, buf: PoolBuffer) -> Result<(), PoolError> {
        if buf.pool_id != self.id {
            return Err(PoolError::ForeignBuffer);
        }
        let slot = buf.slot as usize;
        if !self.on_loan[slot] {
            return Err(PoolError::NotAcquired(buf.slot));
        }
        self.on_loan[slot] = false;
        self.acquired -= 1;
        self.free.push(buf);
        Ok(())
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn acquired_count(&self) -> usize {
        self.acquired
    }

    pub fn grow_increment(&self) -> usize {
        self.grow_increment
    }

    /// Number of times the pool had to reserve more buffers after construction.
    pub fn allocation_count(&self) -> u64 {
        self.growth_events
    }
}
