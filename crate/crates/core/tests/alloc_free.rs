//! Proves with a counting global allocator that pooled interpolation
//! reserves no heap memory after the context is built.

mod common;

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;

use cga_motion::algebra::HeapWorkspace;
use cga_motion::geom::Vec3;
use cga_motion::interp::{preprocess_pose, InterpolationContext, Interpolator};

struct Counting;

thread_local! {
    static ALLOCATIONS: Cell<u64> = const { Cell::new(0) };
}

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let _ = ALLOCATIONS.try_with(|c| c.set(c.get() + 1));
        System.alloc(layout)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let _ = ALLOCATIONS.try_with(|c| c.set(c.get() + 1));
        System.realloc(ptr, layout, new_size)
    }
}

#[global_allocator]
static GLOBAL: Counting = Counting;

fn allocations() -> u64 {
    ALLOCATIONS.with(Cell::get)
}

#[test]
fn pooled_interpolation_makes_no_heap_allocations() {
    let mut rng = common::rng(5);
    let a = common::pose(&mut rng);
    let b = common::nearby(&mut rng, &a, 40.0, 2.0, 1.5);
    let mut ctx = InterpolationContext::new(preprocess_pose(&a).unwrap(), preprocess_pose(&b).unwrap());
    let p = Vec3::new(0.1, 0.2, 0.3);
    let before = allocations();
    let mut acc = 0.0;
    for k in 0..10_000 {
        let alpha = k as f64 / 9_999.0;
        acc += ctx.interpolate(alpha).unwrap().scale;
        acc += ctx.apply_interpolated(alpha, p).unwrap().x;
    }
    assert_eq!(
        allocations() - before,
        0,
        "heap allocations during pooled interpolation"
    );
    assert_eq!(ctx.allocation_count(), 0);
    assert!(acc.is_finite());
}

#[test]
fn naive_interpolation_allocates_per_temporary() {
    let mut rng = common::rng(6);
    let a = preprocess_pose(&common::pose(&mut rng)).unwrap();
    let b = preprocess_pose(&common::pose(&mut rng)).unwrap();
    let mut naive = Interpolator::new(HeapWorkspace::new());
    let before = allocations();
    for k in 0..100 {
        naive.evaluate(&a, &b, k as f64 / 99.0).unwrap();
    }
    let made = allocations() - before;
    assert!(made >= 100, "{made}");
    assert_eq!(made, naive.workspace().allocation_count());
}
