//! Box enumeration kernel shared by every lattice scan in the crate.
//!
//! `scan_box` walks the integer points of an axis-aligned box, keeps the
//! images of a filtering map, and returns them sorted.  With the `parallel`
//! feature (default) the walk is split over the first coordinate onto the
//! rayon pool; the sequential kernel is always compiled and both paths
//! return identical vectors because the result is sorted after collection.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Scan the box `lo[i] ..= hi[i]`, keep `f`'s hits, return them sorted.
pub fn scan_box<T, F>(lo: &[i64], hi: &[i64], f: F) -> Vec<T>
where
    T: Send + Ord,
    F: Fn(&[i64]) -> Option<T> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        scan_box_par(lo, hi, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan_box_seq(lo, hi, f)
    }
}

/// Sequential kernel; also the fallback when `parallel` is disabled.
pub fn scan_box_seq<T, F>(lo: &[i64], hi: &[i64], f: F) -> Vec<T>
where
    T: Ord,
    F: Fn(&[i64]) -> Option<T>,
{
    assert_eq!(lo.len(), hi.len());
    let n = lo.len();
    let mut out = Vec::new();
    if n == 0 {
        if let Some(t) = f(&[]) {
            out.push(t);
        }
        return out;
    }
    if (0..n).any(|i| hi[i] < lo[i]) {
        return out;
    }
    let mut cur = lo.to_vec();
    'walk: loop {
        if let Some(t) = f(&cur) {
            out.push(t);
        }
        let mut i = n;
        loop {
            if i == 0 {
                break 'walk;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in i + 1..n {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
    out.sort();
    out
}

/// Rayon kernel: one task per leading-coordinate slab.
#[cfg(feature = "parallel")]
pub fn scan_box_par<T, F>(lo: &[i64], hi: &[i64], f: F) -> Vec<T>
where
    T: Send + Ord,
    F: Fn(&[i64]) -> Option<T> + Sync,
{
    assert_eq!(lo.len(), hi.len());
    let n = lo.len();
    if n == 0 {
        return scan_box_seq(lo, hi, f);
    }
    if (0..n).any(|i| hi[i] < lo[i]) {
        return Vec::new();
    }
    let mut out: Vec<T> = (lo[0]..=hi[0])
        .into_par_iter()
        .flat_map_iter(|x0| scan_slab(x0, lo, hi, &f))
        .collect();
    out.sort();
    out
}

#[cfg(feature = "parallel")]
fn scan_slab<T, F>(x0: i64, lo: &[i64], hi: &[i64], f: &F) -> Vec<T>
where
    F: Fn(&[i64]) -> Option<T>,
{
    let n = lo.len();
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    cur[0] = x0;
    'walk: loop {
        if let Some(t) = f(&cur) {
            out.push(t);
        }
        let mut i = n;
        loop {
            if i == 1 {
                break 'walk;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in i + 1..n {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
    out
}

/// Count the hits of `f` over the box without retaining coordinates.
pub fn count_box<F>(lo: &[i64], hi: &[i64], f: F) -> usize
where
    F: Fn(&[i64]) -> bool + Sync,
{
    scan_box(lo, hi, |p| f(p).then_some(())).len()
}
