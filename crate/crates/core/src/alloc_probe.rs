//! A counting wrapper around the system allocator.
//!
//! Install it in a binary or test target with
//!
//! ```no_run
//! #[global_allocator]
//! static ALLOC: weft_core::alloc_probe::CountingAllocator = weft_core::alloc_probe::CountingAllocator;
//!
//! fn main() {}
//! ```
//!
//! Counts are kept per thread so concurrent tests do not disturb each other.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;
use std::sync::atomic::{AtomicBool, Ordering};

thread_local! {
    static ALLOCATIONS: Cell<u64> = const { Cell::new(0) };
}

static ACTIVE: AtomicBool = AtomicBool::new(false);

pub struct CountingAllocator;

impl CountingAllocator {
    #[inline]
    fn bump() {
        let _ = ALLOCATIONS.try_with(|c| c.set(c.get() + 1));
        if !ACTIVE.load(Ordering::Relaxed) {
            ACTIVE.store(true, Ordering::Relaxed);
        }
    }
}

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        Self::bump();
        System.alloc(layout)
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        Self::bump();
        System.alloc_zeroed(layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        Self::bump();
        System.realloc(ptr, layout, new_size)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout)
    }
}

/// Allocations (including reallocations) made by the calling thread so far.
pub fn thread_allocations() -> u64 {
    ALLOCATIONS.try_with(Cell::get).unwrap_or(0)
}

/// Whether the counting allocator is installed in this process.
pub fn is_active() -> bool {
    if !ACTIVE.load(Ordering::Relaxed) {
        drop(std::hint::black_box(Box::new(0u8)));
    }
    ACTIVE.load(Ordering::Relaxed)
}

/// Runs `f` and returns its result with the allocations it made.
pub fn count<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let before = thread_allocations();
    let out = f();
    (out, thread_allocations() - before)
}
