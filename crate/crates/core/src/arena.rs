//! Double-buffered slot storage for interval state.
//!
//! Each step writes into the current buffer with a bump cursor while reading
//! its own history from the previous buffer. [`DoubleBufferedArena::swap`]
//! flips the roles and rewinds the cursor without touching the data.

use thiserror::Error;

use crate::intervals::{CapacityOverflow, Interval, SetWriter};

/// A region of one buffer, stamped with the epoch it was written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SetHandle {
    pub offset: u32,
    pub len: u32,
    pub epoch: u64,
}

impl SetHandle {
    /// The empty set; readable at any time.
    pub const EMPTY: SetHandle = SetHandle {
        offset: 0,
        len: 0,
        epoch: 0,
    };

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArenaError {
    #[error("arena overflow: {requested} slots requested, {available} available of {capacity}")]
    Overflow {
        requested: usize,
        available: usize,
        capacity: usize,
    },
    #[error("stale handle from epoch {handle_epoch} read at epoch {epoch}")]
    Stale { handle_epoch: u64, epoch: u64 },
    #[error("handle [{offset}, {offset}+{len}) lies beyond the write cursor {cursor}")]
    Unwritten { offset: u32, len: u32, cursor: usize },
    #[error("slot {slot} written twice in epoch {epoch}")]
    DoubleWrite { slot: usize, epoch: u64 },
}

impl From<CapacityOverflow> for ArenaError {
    fn from(e: CapacityOverflow) -> Self {
        ArenaError::Overflow {
            requested: e.capacity + 1,
            available: e.capacity,
            capacity: e.capacity,
        }
    }
}

pub struct DoubleBufferedArena {
    buffers: [Box<[Interval]>; 2],
    /// Epoch at which each slot was last written, plus one; debug builds only.
    shadow: [Box<[u64]>; 2],
    capacity: usize,
    cursor: usize,
    high_water: usize,
    epoch: u64,
    alloc_counter: u64,
}

/// Read access during a write: the whole previous buffer and the finished
/// prefix of the current one.
pub struct ArenaReader<'a> {
    prev: &'a [Interval],
    done: &'a [Interval],
    epoch: u64,
}

impl<'a> ArenaReader<'a> {
    pub fn read(&self, h: SetHandle) -> Result<&'a [Interval], ArenaError> {
        resolve(self.prev, self.done, self.epoch, h)
    }
}

fn resolve<'a>(
    prev: &'a [Interval],
    done: &'a [Interval],
    epoch: u64,
    h: SetHandle,
) -> Result<&'a [Interval], ArenaError> {
    if h.len == 0 {
        return Ok(&[]);
    }
    let (start, end) = (h.offset as usize, h.offset as usize + h.len as usize);
    let buf = if h.epoch == epoch {
        done
    } else if h.epoch + 1 == epoch {
        prev
    } else {
        return Err(ArenaError::Stale {
            handle_epoch: h.epoch,
            epoch,
        });
    };
    buf.get(start..end).ok_or(ArenaError::Unwritten {
        offset: h.offset,
        len: h.len,
        cursor: done.len(),
    })
}

impl DoubleBufferedArena {
    /// Provisions both buffers; nothing is allocated afterwards.
    pub fn new(capacity: usize) -> Self {
        let buf = || vec![Interval::EMPTY; capacity].into_boxed_slice();
        let shadow = || {
            if cfg!(debug_assertions) {
                vec![0u64; capacity].into_boxed_slice()
            } else {
                Box::default()
            }
        };
        DoubleBufferedArena {
            buffers: [buf(), buf()],
            shadow: [shadow(), shadow()],
            capacity,
            cursor: 0,
            high_water: 0,
            epoch: 0,
            alloc_counter: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn high_water(&self) -> usize {
        self.high_water
    }

    /// Number of swaps so far; stamps every handle written since the last one.
    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    /// Index of the buffer currently being written.
    pub fn current_role(&self) -> usize {
        (self.epoch & 1) as usize
    }

    pub fn alloc_counter(&self) -> u64 {
        self.alloc_counter
    }

    /// Adds heap allocations observed by an external probe during evaluation.
    pub fn record_allocations(&mut self, n: u64) {
        self.alloc_counter += n;
    }

    /// Reserves `n` slots at the cursor.
    pub fn alloc(&mut self, n: usize) -> Result<SetHandle, ArenaError> {
        let available = self.capacity - self.cursor;
        if n > available {
            return Err(ArenaError::Overflow {
                requested: n,
                available,
                capacity: self.capacity,
            });
        }
        let h = SetHandle {
            offset: self.cursor as u32,
            len: n as u32,
            epoch: self.epoch,
        };
        self.mark_written(self.cursor, n)?;
        self.cursor += n;
        self.high_water = self.high_water.max(self.cursor);
        Ok(h)
    }

    /// Mutable access to a region reserved this epoch.
    pub fn slots_mut(&mut self, h: SetHandle) -> Result<&mut [Interval], ArenaError> {
        if h.len == 0 {
            return Ok(&mut []);
        }
        if h.epoch != self.epoch {
            return Err(ArenaError::Stale {
                handle_epoch: h.epoch,
                epoch: self.epoch,
            });
        }
        let role = self.current_role();
        let (start, end) = (h.offset as usize, (h.offset + h.len) as usize);
        if end > self.cursor {
            return Err(ArenaError::Unwritten {
                offset: h.offset,
                len: h.len,
                cursor: self.cursor,
            });
        }
        Ok(&mut self.buffers[role][start..end])
    }

    /// Writes one set at the cursor through a [`SetWriter`] of at most
    /// `limit` slots, then advances the cursor by the slots actually used.
    pub fn write_with<F>(&mut self, limit: usize, f: F) -> Result<SetHandle, ArenaError>
    where
        F: FnOnce(&ArenaReader<'_>, &mut SetWriter<'_>) -> Result<(), ArenaError>,
    {
        let role = self.current_role();
        let available = self.capacity - self.cursor;
        let [b0, b1] = &mut self.buffers;
        let (cur, prev) = if role == 0 { (b0, &*b1) } else { (b1, &*b0) };
        let (done, free) = cur.split_at_mut(self.cursor);
        let reader = ArenaReader {
            prev,
            done,
            epoch: self.epoch,
        };
        let room = limit.min(available);
        let mut writer = SetWriter::new(&mut free[..room]);
        match f(&reader, &mut writer) {
            Ok(()) => {}
            Err(ArenaError::Overflow { .. }) => {
                return Err(ArenaError::Overflow {
                    requested: room + 1,
                    available,
                    capacity: self.capacity,
                })
            }
            Err(e) => return Err(e),
        }
        let used = writer.len();
        let h = SetHandle {
            offset: self.cursor as u32,
            len: used as u32,
            epoch: self.epoch,
        };
        self.mark_written(self.cursor, used)?;
        self.cursor += used;
        self.high_water = self.high_water.max(self.cursor);
        Ok(h)
    }

    /// Copies `set` to the cursor.
    pub fn write(&mut self, set: &[Interval]) -> Result<SetHandle, ArenaError> {
        self.write_with(set.len(), |_, w| Ok(w.extend(set.iter().copied())?))
    }

    pub fn read(&self, h: SetHandle) -> Result<&[Interval], ArenaError> {
        let role = self.current_role();
        resolve(
            &self.buffers[role ^ 1],
            &self.buffers[role][..self.cursor],
            self.epoch,
            h,
        )
    }

    /// Flips buffer roles and rewinds the cursor; contents stay in place.
    pub fn swap(&mut self) {
        self.epoch += 1;
        self.cursor = 0;
    }

    fn mark_written(&mut self, start: usize, n: usize) -> Result<(), ArenaError> {
        if !cfg!(debug_assertions) {
            return Ok(());
        }
        let role = self.current_role();
        let stamp = self.epoch + 1;
        for (i, s) in self.shadow[role][start..start + n].iter_mut().enumerate() {
            if *s == stamp {
                return Err(ArenaError::DoubleWrite {
                    slot: start + i,
                    epoch: self.epoch,
                });
            }
            *s = stamp;
        }
        Ok(())
    }
}
